//! Which of the two supported eigenvalue configurations a matrix falls in.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::algebra::rational::int;
use crate::algebra::{cubic_discriminant, cubic_irreducible, SplitCubicField};
use crate::maps::IntMat3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpectralClass {
    /// A simple real eigenvalue strictly dominates the other two moduli.
    PerronReal,
    /// `|ξ₁| = |ξ₂| > |ξ₃|` with `|ξ₁| > 1`.
    ComplexPairDominant,
    Unsupported,
}

impl SpectralClass {
    pub fn name(self) -> &'static str {
        match self {
            Self::PerronReal => "PerronReal",
            Self::ComplexPairDominant => "ComplexPairDominant",
            Self::Unsupported => "Unsupported",
        }
    }
}

/// Classification with the facts it rests on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub class: SpectralClass,
    pub charpoly: String,
    pub irreducible: bool,
    #[serde(with = "crate::serde_rat::bigint")]
    pub discriminant: BigInt,
    /// Enclosure of the real root, when there is exactly one.
    #[serde(with = "crate::serde_rat::opt_interval", default)]
    pub real_root: Option<crate::algebra::RatInterval>,
    pub reason: Option<String>,
}

const BITS: u32 = 64;

pub fn classify_spectrum(a: &IntMat3) -> SpectralReport {
    let p = a.charpoly();
    let irreducible = cubic_irreducible(&p).expect("characteristic polynomial is a monic cubic");
    let discriminant = cubic_discriminant(&p).expect("characteristic polynomial is a monic cubic");
    let mut rep = SpectralReport {
        class: SpectralClass::Unsupported,
        charpoly: p.to_string(),
        irreducible,
        discriminant: discriminant.clone(),
        real_root: None,
        reason: None,
    };
    if !irreducible {
        rep.reason = Some(format!("{p} is reducible over ℚ"));
        return rep;
    }
    if discriminant.is_positive() {
        rep.reason = Some("three real eigenvalues".into());
        return rep;
    }
    let field = SplitCubicField::new(&p).expect("irreducible with negative discriminant");
    // det = ±1, so |ξ±|² = 1/|θ|; dominance is decided by comparing |θ| with 1.
    let t = field.theta_enclosure(BITS);
    let abs = t.abs();
    rep.real_root = Some(t);
    let one = int(1);
    if abs.lo() > &one {
        rep.class = SpectralClass::PerronReal;
    } else if abs.hi() < &one {
        rep.class = SpectralClass::ComplexPairDominant;
    } else {
        rep.reason = Some("|θ| = 1 cannot be separated".into());
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let a1 = IntMat3::new([[56, -19, -17], [-16, 6, 5], [207, -71, -63]]).unwrap();
        assert_eq!(classify_spectrum(&a1).class, SpectralClass::ComplexPairDominant);
        let r = classify_spectrum(&a1.inverse().unwrap());
        assert_eq!(r.class, SpectralClass::PerronReal);
        assert!((r.real_root.unwrap().to_f64_bounds().0 - 1.324718).abs() < 1e-5);
        let a_inv = IntMat3::new([[13, 34, 48], [-8, -21, -30], [6, 16, 23]]).unwrap();
        let r = classify_spectrum(&a_inv);
        assert_eq!(r.class, SpectralClass::PerronReal);
        assert!((r.real_root.unwrap().to_f64_bounds().0 - 14.5227).abs() < 1e-4);
        let id = classify_spectrum(&IntMat3::identity());
        assert_eq!(id.class, SpectralClass::Unsupported);
        assert!(!id.irreducible && id.reason.is_some());
    }
}
