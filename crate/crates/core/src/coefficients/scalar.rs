use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::CoefficientError;

/// A prime modulus. Construction checks primality, so a `Prime` in hand is
/// always a valid field characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self, CoefficientError> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(CoefficientError::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The principal ideal domain used for coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoefficientRing {
    Integers,
    Rationals,
    PrimeField(Prime),
}

impl CoefficientRing {
    pub fn prime_field(p: u64) -> Result<Self, CoefficientError> {
        Prime::new(p).map(CoefficientRing::PrimeField)
    }

    /// Parses the short names used on the command line and in reports:
    /// `Z`, `Q`, `Z/p` (or `Zp` together with an explicit modulus).
    pub fn parse(name: &str, p: Option<u64>) -> Result<Self, CoefficientError> {
        match name {
            "Z" | "ZZ" | "integers" => Ok(CoefficientRing::Integers),
            "Q" | "QQ" | "rationals" => Ok(CoefficientRing::Rationals),
            "Zp" | "Fp" => match p {
                Some(p) => Self::prime_field(p),
                None => Err(CoefficientError::UnknownRing(format!(
                    "{name} requires a prime modulus"
                ))),
            },
            other => {
                if let Some(rest) = other.strip_prefix("Z/").or_else(|| other.strip_prefix("F")) {
                    let p: u64 = rest
                        .parse()
                        .map_err(|_| CoefficientError::UnknownRing(other.to_string()))?;
                    Self::prime_field(p)
                } else {
                    Err(CoefficientError::UnknownRing(other.to_string()))
                }
            }
        }
    }

    pub fn is_field(self) -> bool {
        !matches!(self, CoefficientRing::Integers)
    }

    pub fn characteristic(self) -> u64 {
        match self {
            CoefficientRing::PrimeField(p) => p.get(),
            _ => 0,
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    /// Image of an integer under the canonical map `Z -> R`.
    pub fn from_bigint(self, n: &BigInt) -> Scalar {
        match self {
            CoefficientRing::Integers => Scalar::Int(n.clone()),
            CoefficientRing::Rationals => Scalar::Rat(BigRational::from_integer(n.clone())),
            CoefficientRing::PrimeField(p) => {
                let m = BigInt::from(p.get());
                let r = n.mod_floor(&m);
                Scalar::Mod {
                    value: r.to_u64().expect("residue fits in u64"),
                    modulus: p.get(),
                }
            }
        }
    }

    /// Re-expresses an integer scalar in this ring.
    pub fn embed(self, s: &Scalar) -> Scalar {
        match s {
            Scalar::Int(n) => self.from_bigint(n),
            other => {
                assert_eq!(other.ring(), self, "cannot embed {other} into {self}");
                other.clone()
            }
        }
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Integers => write!(f, "Z"),
            CoefficientRing::Rationals => write!(f, "Q"),
            CoefficientRing::PrimeField(p) => write!(f, "Z/{}", p.get()),
        }
    }
}

impl Serialize for CoefficientRing {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CoefficientRing {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        CoefficientRing::parse(&s, None).map_err(serde::de::Error::custom)
    }
}

/// An exact element of one of the supported coefficient rings.
///
/// Arithmetic between scalars of different rings is a logic error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Int(BigInt),
    Rat(BigRational),
    Mod { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn ring(&self) -> CoefficientRing {
        match self {
            Scalar::Int(_) => CoefficientRing::Integers,
            Scalar::Rat(_) => CoefficientRing::Rationals,
            Scalar::Mod { modulus, .. } => CoefficientRing::PrimeField(Prime(*modulus)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Int(n) => n.is_zero(),
            Scalar::Rat(q) => q.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Int(n) => n.is_one(),
            Scalar::Rat(q) => q.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    pub fn is_unit(&self) -> bool {
        match self {
            Scalar::Int(n) => n.abs().is_one(),
            _ => !self.is_zero(),
        }
    }

    /// Multiplicative inverse, when it exists.
    pub fn inverse(&self) -> Option<Scalar> {
        match self {
            Scalar::Int(n) => {
                if n.is_one() || (-n).is_one() {
                    Some(Scalar::Int(n.clone()))
                } else {
                    None
                }
            }
            Scalar::Rat(q) => (!q.is_zero()).then(|| Scalar::Rat(q.recip())),
            Scalar::Mod { value, modulus } => {
                if *value == 0 {
                    return None;
                }
                Some(Scalar::Mod {
                    value: pow_mod(*value, modulus - 2, *modulus),
                    modulus: *modulus,
                })
            }
        }
    }

    /// Euclidean division: `self = q * d + r` with `r` strictly smaller than `d`
    /// in the ring's Euclidean norm (`r = 0` over a field).
    pub fn div_rem(&self, d: &Scalar) -> (Scalar, Scalar) {
        match (self, d) {
            (Scalar::Int(a), Scalar::Int(b)) => {
                let (q, r) = a.div_rem(b);
                (Scalar::Int(q), Scalar::Int(r))
            }
            _ => {
                let inv = d.inverse().expect("division by zero");
                (self * &inv, self.ring().zero())
            }
        }
    }

    /// `true` when `self` has strictly smaller Euclidean norm than `other`.
    pub(crate) fn norm_lt(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => a.magnitude() < b.magnitude(),
            _ => !self.is_zero() && other.is_zero(),
        }
    }

    /// The unit `u` with `u * self` in canonical form (positive over `Z`, one over a field).
    pub(crate) fn normalizing_unit(&self) -> Scalar {
        match self {
            Scalar::Int(n) => Scalar::Int(if n.is_negative() {
                -BigInt::one()
            } else {
                BigInt::one()
            }),
            _ => self.inverse().unwrap_or_else(|| self.ring().one()),
        }
    }

    pub fn as_bigint(&self) -> Option<&BigInt> {
        match self {
            Scalar::Int(n) => Some(n),
            _ => None,
        }
    }

    fn check_same(&self, other: &Scalar) {
        if std::mem::discriminant(self) != std::mem::discriminant(other)
            || self.ring() != other.ring()
        {
            panic!("mixed-ring arithmetic: {self:?} vs {other:?}");
        }
    }
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let m = m as u128;
    let mut acc = 1u128 % m;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(n) => write!(f, "{n}"),
            Scalar::Rat(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a + b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { value: a, modulus }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a * b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { value: a, modulus }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: ((*a as u128 * *b as u128) % *modulus as u128) as u64,
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Int(a) => Scalar::Int(-a),
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: (modulus - value) % modulus,
                modulus: *modulus,
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_check() {
        assert!(Prime::new(2).is_ok());
        assert!(Prime::new(3).is_ok());
        assert!(Prime::new(4).is_err());
        assert!(Prime::new(1).is_err());
        assert!(Prime::new(0).is_err());
        assert!(Prime::new(7919).is_ok());
    }

    #[test]
    fn parse_ring_names() {
        assert_eq!(
            CoefficientRing::parse("Z", None).unwrap(),
            CoefficientRing::Integers
        );
        assert_eq!(
            CoefficientRing::parse("Q", None).unwrap(),
            CoefficientRing::Rationals
        );
        assert_eq!(
            CoefficientRing::parse("Zp", Some(3)).unwrap(),
            CoefficientRing::prime_field(3).unwrap()
        );
        assert_eq!(
            CoefficientRing::parse("Z/5", None).unwrap(),
            CoefficientRing::prime_field(5).unwrap()
        );
        assert!(CoefficientRing::parse("Zp", None).is_err());
        assert!(CoefficientRing::parse("Zp", Some(6)).is_err());
        assert!(CoefficientRing::parse("R", None).is_err());
    }

    #[test]
    fn modular_arithmetic() {
        let f = CoefficientRing::prime_field(7).unwrap();
        let a = f.from_i64(-3);
        assert_eq!(a, f.from_i64(4));
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_one());
        assert!(f.from_i64(14).is_zero());
    }

    #[test]
    fn integer_division_shrinks_norm() {
        let z = CoefficientRing::Integers;
        let (q, r) = z.from_i64(-7).div_rem(&z.from_i64(3));
        assert_eq!(&(&q * &z.from_i64(3)) + &r, z.from_i64(-7));
        assert!(r.norm_lt(&z.from_i64(3)));
    }

    #[test]
    fn units() {
        let z = CoefficientRing::Integers;
        assert!(z.from_i64(-1).is_unit());
        assert!(!z.from_i64(2).is_unit());
        assert!(CoefficientRing::Rationals.from_i64(2).is_unit());
        assert!(!CoefficientRing::Rationals.zero().is_unit());
    }
}
