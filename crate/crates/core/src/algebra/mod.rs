//! Exact and certified arithmetic: rationals, polynomials, rational
//! intervals with elementary functions, and the splitting field of a cubic.

pub mod elementary;
pub mod field;
pub mod height;
pub mod interval;
pub mod linalg;
pub mod poly;
pub mod rational;

pub use field::{KElem, SplitCubicField};
pub use height::{h_prime, height_rel};
pub use interval::{CInterval, RatInterval};
pub use poly::{cubic_discriminant, cubic_irreducible, largest_real_root, PolyQ};
pub use rational::{parse_rational, Rational};
