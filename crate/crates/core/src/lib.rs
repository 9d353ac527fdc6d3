pub mod algebra;
pub mod certify;
pub mod error;
pub mod maps;
pub mod psi;
pub mod recur;
pub mod serde_rat;

pub use error::{Error, Result};
