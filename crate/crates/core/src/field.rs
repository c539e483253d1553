//! Exact scalar fields: the rationals and prime fields `F_p`.
//!
//! A [`Field`] is a runtime descriptor. Every [`Scalar`] carries enough
//! information to do arithmetic on its own, but mixing scalars from
//! different fields is a logic error and panics.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which coefficient field computations run over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// The prime field of order `p`. Fails unless `p` is prime and fits the
    /// 63-bit residue representation.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= 1 << 62 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::zero()),
            Field::Prime(p) => Scalar::Fp { v: 0, p: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, x: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(x))),
            Field::Prime(p) => Scalar::Fp {
                v: (x as i128).rem_euclid(*p as i128) as u64,
                p: *p,
            },
        }
    }

    pub fn from_bigint(&self, x: &BigInt) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::from_integer(x.clone())),
            Field::Prime(p) => {
                let r = x.mod_floor(&BigInt::from(*p));
                Scalar::Fp {
                    v: r.to_u64().expect("residue fits in u64"),
                    p: *p,
                }
            }
        }
    }

    /// `num / den` in this field. Fails when `den` vanishes in the field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        let n = self.from_bigint(num);
        let d = self.from_bigint(den);
        let inv = d.inv().ok_or(Error::DivisionByZero)?;
        Ok(&n * &inv)
    }

    pub fn name(&self) -> String {
        match self {
            Field::Rational => "q".to_string(),
            Field::Prime(p) => format!("fp:{p}"),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl std::str::FromStr for Field {
    type Err = Error;

    /// Accepts `q` or `fp:<prime>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(Field::Rational);
        }
        if let Some(rest) = s.strip_prefix("fp:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::BadField(s.to_string()))?;
            return Field::prime(p);
        }
        Err(Error::BadField(s.to_string()))
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element.
///
/// Rationals are kept in lowest terms with positive denominator (guaranteed
/// by `BigRational`); residues always lie in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp { v: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::Fp { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Q(q) => Scalar::Q(q.recip()),
            Scalar::Fp { v, p } => Scalar::Fp {
                v: pow_mod(*v, p - 2, *p),
                p: *p,
            },
        })
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Whether the printed form needs a leading minus sign.
    pub(crate) fn is_negative_repr(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_negative(),
            Scalar::Fp { .. } => false,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Q(q) => Some(q),
            Scalar::Fp { .. } => None,
        }
    }

    fn same_field(&self, other: &Scalar) -> u64 {
        match (self, other) {
            (Scalar::Q(_), Scalar::Q(_)) => 0,
            (Scalar::Fp { p, .. }, Scalar::Fp { p: q, .. }) if p == q => *p,
            _ => panic!("scalar field mismatch: {} vs {}", self.field(), other.field()),
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let p = self.same_field(rhs);
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { v: a, .. }, Scalar::Fp { v: b, .. }) => {
                let s = a + b;
                Scalar::Fp {
                    v: if s >= p { s - p } else { s },
                    p,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let p = self.same_field(rhs);
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a - b),
            (Scalar::Fp { v: a, .. }, Scalar::Fp { v: b, .. }) => Scalar::Fp {
                v: if a >= b { a - b } else { a + p - b },
                p,
            },
            _ => unreachable!(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let p = self.same_field(rhs);
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { v: a, .. }, Scalar::Fp { v: b, .. }) => Scalar::Fp {
                v: mul_mod(*a, *b, p),
                p,
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { v, p } => Scalar::Fp {
                v: if *v == 0 { 0 } else { p - v },
                p: *p,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_stay_reduced() {
        let q = Field::Rational;
        let a = q.from_ratio(&BigInt::from(6), &BigInt::from(-4)).unwrap();
        assert_eq!(a.to_string(), "-3/2");
        let b = &a * &q.from_i64(2);
        assert_eq!(b, q.from_i64(-3));
    }

    #[test]
    fn prime_field_residues() {
        let f = Field::prime(7).unwrap();
        assert_eq!(f.from_i64(-1).to_string(), "6");
        let three = f.from_i64(3);
        let inv = three.inv().unwrap();
        assert!((&three * &inv).is_one());
        assert_eq!(f.from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap(), f.from_i64(4));
        assert!(f.from_ratio(&BigInt::from(1), &BigInt::from(14)).is_err());
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(Field::prime(91).is_err());
        assert!(Field::prime(1).is_err());
        assert!("fp:101".parse::<Field>().is_ok());
        assert!("fp:100".parse::<Field>().is_err());
        assert_eq!("q".parse::<Field>().unwrap(), Field::Rational);
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn mixing_fields_panics() {
        let _ = &Field::Rational.one() + &Field::Prime(5).one();
    }

    #[test]
    fn pow_matches_repeated_product() {
        let f = Field::prime(101).unwrap();
        let x = f.from_i64(17);
        let mut acc = f.one();
        for _ in 0..13 {
            acc = &acc * &x;
        }
        assert_eq!(x.pow(13), acc);
    }
}
