//! Exact `p`-local rationals and modular helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational coefficient. Reduced with a positive denominator; `p`-locality is
/// a property of the enclosing context and checked with [`check_p_local`].
pub type PLocalRational = BigRational;

pub fn int(n: i64) -> PLocalRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> PLocalRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_p_local(q: &PLocalRational, p: u64) -> bool {
    !(q.denom() % BigInt::from(p)).is_zero() || q.denom().is_one()
}

/// Units of `Z_(p)`: nonzero with neither numerator nor denominator divisible by `p`.
pub fn is_p_unit(q: &PLocalRational, p: u64) -> bool {
    let pb = BigInt::from(p);
    !q.is_zero() && !(q.numer() % &pb).is_zero() && !(q.denom() % &pb).is_zero()
}

pub fn check_p_local(q: &PLocalRational, p: u64) -> Result<()> {
    if is_p_local(q, p) {
        Ok(())
    } else {
        Err(Error::NotPLocal { den: q.denom().to_string(), p })
    }
}

/// Residue of a `p`-local rational modulo `m` (a power of `p`).
pub fn reduce_mod(q: &PLocalRational, m: i128) -> i128 {
    let mb = BigInt::from(m);
    let num = q.numer().mod_floor(&mb).to_i128().unwrap();
    let den = q.denom().mod_floor(&mb).to_i128().unwrap();
    mul_mod(num, inv_mod(den, m).expect("denominator invertible mod p^k"), m)
}

pub fn mul_mod(a: i128, b: i128, m: i128) -> i128 {
    (a * b).rem_euclid(m)
}

pub fn inv_mod(a: i128, m: i128) -> Option<i128> {
    let (g, x, _) = ext_gcd(a.rem_euclid(m), m);
    (g == 1).then(|| x.rem_euclid(m))
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Balanced rational reconstruction: finds `n/d ≡ a (mod m)` with `|n|, d ≤ sqrt(m/2)`.
pub fn rational_reconstruct(a: i128, m: i128) -> Option<(i128, i128)> {
    let bound = ((m / 2) as f64).sqrt().floor() as i128;
    let (mut r0, mut r1) = (m, a.rem_euclid(m));
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound {
        return None;
    }
    let (n, d) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
    if n.gcd(&d) != 1 {
        return None;
    }
    Some((n, d))
}

/// Serde adapter for `{num, den}` objects; integers are written as JSON numbers
/// when they fit in `i64`, otherwise as decimal strings.
pub mod as_num_den {
    use super::*;

    #[derive(Serialize, Deserialize)]
    struct NumDen {
        num: BigIntRepr,
        den: BigIntRepr,
    }

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum BigIntRepr {
        Small(i64),
        Big(String),
    }

    impl BigIntRepr {
        fn from_big(b: &BigInt) -> Self {
            match b.to_i64() {
                Some(v) => BigIntRepr::Small(v),
                None => BigIntRepr::Big(b.to_string()),
            }
        }

        fn to_big(&self) -> std::result::Result<BigInt, String> {
            match self {
                BigIntRepr::Small(v) => Ok(BigInt::from(*v)),
                BigIntRepr::Big(s) => s.parse().map_err(|_| format!("bad integer {s:?}")),
            }
        }
    }

    pub fn serialize<S: Serializer>(q: &PLocalRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        NumDen { num: BigIntRepr::from_big(q.numer()), den: BigIntRepr::from_big(q.denom()) }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<PLocalRational, D::Error> {
        let nd = NumDen::deserialize(d)?;
        let num = nd.num.to_big().map_err(serde::de::Error::custom)?;
        let den = nd.den.to_big().map_err(serde::de::Error::custom)?;
        if den.is_zero() || den.is_negative() {
            return Err(serde::de::Error::custom("denominator must be positive"));
        }
        Ok(BigRational::new(num, den))
    }
}

/// A bare `{num, den}` value for ad-hoc serialization.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NumDen(#[serde(with = "as_num_den")] pub PLocalRational);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reconstruct_small_fractions() {
        let m: i128 = 1 << 40;
        for (n, d) in [(1i128, 3i128), (-5, 9), (7, 1), (0, 1), (-1, 27)] {
            let a = (n.rem_euclid(m) * inv_mod(d, m).unwrap()).rem_euclid(m);
            assert_eq!(rational_reconstruct(a, m), Some((n, d)));
        }
    }

    #[test]
    fn reduce_mod_matches_inverse() {
        let q = frac(-2, 3);
        let m = 256;
        let r = reduce_mod(&q, m);
        assert_eq!((r * 3).rem_euclid(m), (-2i128).rem_euclid(m));
    }

    #[test]
    fn p_locality() {
        assert!(is_p_local(&frac(1, 3), 2));
        assert!(!is_p_local(&frac(1, 6), 2));
        assert!(check_p_local(&frac(5, 4), 2).is_err());
        assert!(is_p_local(&int(8), 2));
    }

    #[test]
    fn num_den_json() {
        let v = NumDen(frac(-3, 7));
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"num":-3,"den":7}"#);
        let back: NumDen = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        let big: NumDen = serde_json::from_str(r#"{"num":"123456789012345678901234567890","den":1}"#).unwrap();
        assert_eq!(big.0.numer().to_string(), "123456789012345678901234567890");
        assert!(serde_json::from_str::<NumDen>(r#"{"num":1,"den":0}"#).is_err());
    }
}
