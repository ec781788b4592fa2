//! Exact planar geometry: the concyclicity lemma on the parabola, slope
//! estimates and crossing orders for growth sequences, and tracers that read
//! `G_n^3` / `G_n^4` words off piecewise-linear motions of points.

pub mod appendix;
pub mod growth;
pub mod poly;
pub mod simulate;
pub mod trace;
pub mod trajectory;

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// A point of the plane with rational coordinates.
pub type Point = (Rat, Rat);

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn point(x: i64, y: i64) -> Point {
    (rat(x), rat(y))
}

/// Parses `p/q` or an integer.
pub fn parse_rat(text: &str) -> Result<Rat> {
    let text = text.trim();
    let bad = || Error::Parse(format!("bad rational `{text}`"));
    match text.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q == BigInt::from(0) {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
        None => Ok(Rat::from_integer(BigInt::from_str(text).map_err(|_| bad())?)),
    }
}

/// The point `(t, t^2)` of the parabola.
pub fn on_parabola(t: &Rat) -> Point {
    (t.clone(), t * t)
}

pub(crate) fn sub(a: &Point, b: &Point) -> Point {
    (&a.0 - &b.0, &a.1 - &b.1)
}

pub(crate) fn cross(a: &Point, b: &Point) -> Rat {
    &a.0 * &b.1 - &a.1 * &b.0
}

pub(crate) fn dot(a: &Point, b: &Point) -> Rat {
    &a.0 * &b.0 + &a.1 * &b.1
}

/// Serde adapter writing rationals as `p/q` strings.
pub mod rat_string {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{parse_rat, Rat};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let text = String::deserialize(d)?;
        parse_rat(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_strings() {
        assert_eq!(parse_rat("6/4").unwrap(), ratio(3, 2));
        assert_eq!(parse_rat("-7").unwrap(), rat(-7));
        assert_eq!(ratio(3, 2).to_string(), "3/2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }
}
