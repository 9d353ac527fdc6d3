//! Serde adapters: rationals as `"num/den"` strings, big integers as decimal
//! strings, intervals as `{lo, hi}`.

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::rational::{parse_rational, to_ratio_string, Rational};
use crate::algebra::RatInterval;

fn de_rat<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
    let s = String::deserialize(d)?;
    parse_rational(&s).map_err(serde::de::Error::custom)
}

pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        to_ratio_string(q).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        de_rat(d)
    }
}

pub mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        n.to_string().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub mod bigint_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|n| n.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct IntervalRepr {
    lo: String,
    hi: String,
}

pub mod interval {
    use super::*;

    pub fn serialize<S: Serializer>(iv: &RatInterval, s: S) -> Result<S::Ok, S::Error> {
        IntervalRepr {
            lo: to_ratio_string(iv.lo()),
            hi: to_ratio_string(iv.hi()),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<RatInterval, D::Error> {
        let r = IntervalRepr::deserialize(d)?;
        let lo = parse_rational(&r.lo).map_err(serde::de::Error::custom)?;
        let hi = parse_rational(&r.hi).map_err(serde::de::Error::custom)?;
        RatInterval::new(lo, hi).map_err(serde::de::Error::custom)
    }
}

pub mod opt_interval {
    use super::*;

    pub fn serialize<S: Serializer>(iv: &Option<RatInterval>, s: S) -> Result<S::Ok, S::Error> {
        iv.as_ref()
            .map(|iv| IntervalRepr {
                lo: to_ratio_string(iv.lo()),
                hi: to_ratio_string(iv.hi()),
            })
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<RatInterval>, D::Error> {
        let r = Option::<IntervalRepr>::deserialize(d)?;
        r.map(|r| {
            let lo = parse_rational(&r.lo).map_err(serde::de::Error::custom)?;
            let hi = parse_rational(&r.hi).map_err(serde::de::Error::custom)?;
            RatInterval::new(lo, hi).map_err(serde::de::Error::custom)
        })
        .transpose()
    }
}

pub mod interval_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[RatInterval], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|iv| IntervalRepr {
                lo: to_ratio_string(iv.lo()),
                hi: to_ratio_string(iv.hi()),
            })
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<RatInterval>, D::Error> {
        let v = Vec::<IntervalRepr>::deserialize(d)?;
        v.into_iter()
            .map(|r| {
                let lo = parse_rational(&r.lo).map_err(serde::de::Error::custom)?;
                let hi = parse_rational(&r.hi).map_err(serde::de::Error::custom)?;
                RatInterval::new(lo, hi).map_err(serde::de::Error::custom)
            })
            .collect()
    }
}

pub mod bigint_arr3 {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt; 3], s: S) -> Result<S::Ok, S::Error> {
        super::bigint_vec::serialize(v, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[BigInt; 3], D::Error> {
        let v = super::bigint_vec::deserialize(d)?;
        <[BigInt; 3]>::try_from(v).map_err(|_| serde::de::Error::custom("expected 3 integers"))
    }
}
