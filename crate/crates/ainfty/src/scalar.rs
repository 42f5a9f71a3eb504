//! Exact scalars: arbitrary-precision rationals and prime fields.
//!
//! Every scalar knows which field it lives in, so mixed-field arithmetic can
//! be rejected at construction boundaries instead of producing garbage.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

use crate::error::LinAlgError;

/// Field descriptor: the rationals, or Z/p for a prime p.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    pub fn zero(self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Q(BigRational::zero()),
            Field::Prime(p) => Scalar::Fp { p, v: 0 },
        }
    }

    pub fn one(self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Q(BigRational::one()),
            Field::Prime(p) => Scalar::Fp { p, v: 1 % p },
        }
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Fp { p, v: n.rem_euclid(p as i64) as u64 },
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }

    /// Parse an exact literal: an integer or a fraction `a/b`.
    ///
    /// Over Z/p the fraction is read as `a * b^-1`; a literal whose
    /// denominator vanishes mod p is rejected.
    pub fn parse_scalar(self, s: &str) -> Result<Scalar, LinAlgError> {
        let bad = || LinAlgError::BadScalarLiteral { literal: s.to_string(), field: self };
        if let Some((num, den)) = s.split_once('/') {
            let a: i64 = num.trim().parse().map_err(|_| bad())?;
            let b: i64 = den.trim().parse().map_err(|_| bad())?;
            if b == 0 {
                return Err(bad());
            }
            let bs = self.from_i64(b);
            if bs.is_zero() {
                return Err(bad());
            }
            Ok(self.from_i64(a).mul(&bs.inv().expect("nonzero")))
        } else {
            let a: i64 = s.trim().parse().map_err(|_| bad())?;
            Ok(self.from_i64(a))
        }
    }

    /// Checks that `p` is a sensible modulus: prime and small enough that
    /// products fit in the word arithmetic used here.
    pub fn validate(self) -> Result<(), LinAlgError> {
        match self {
            Field::Rationals => Ok(()),
            Field::Prime(p) => {
                if !(2..1 << 31).contains(&p) || !is_prime(p) {
                    Err(LinAlgError::BadModulus { p })
                } else {
                    Ok(())
                }
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element. Z/p values are kept reduced to `0..p-1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Scalar {
    Q(BigRational),
    Fp { p: u64, v: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rationals,
            Scalar::Fp { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Fp { p, v } => *v == 1 % p,
        }
    }

    fn check_same(&self, other: &Scalar) {
        assert_eq!(
            self.field(),
            other.field(),
            "scalar arithmetic across distinct fields; inputs must be validated upstream"
        );
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.check_same(other);
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { p, v: a }, Scalar::Fp { v: b, .. }) => {
                Scalar::Fp { p: *p, v: (a + b) % p }
            }
            _ => unreachable!("checked above"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.check_same(other);
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { p, v: a }, Scalar::Fp { v: b, .. }) => {
                Scalar::Fp { p: *p, v: ((*a as u128 * *b as u128) % *p as u128) as u64 }
            }
            _ => unreachable!("checked above"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { p, v } => Scalar::Fp { p: *p, v: (p - v) % p },
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Q(a) => Scalar::Q(a.recip()),
            Scalar::Fp { p, v } => Scalar::Fp { p: *p, v: mod_inverse(*v, *p) },
        })
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv().expect("division by zero"))
    }

    /// Multiply by (-1)^parity, the common case in Koszul bookkeeping.
    pub fn koszul(&self, parity: i64) -> Scalar {
        if parity.rem_euclid(2) == 0 {
            self.clone()
        } else {
            self.neg()
        }
    }
}

/// Extended Euclid, `v` nonzero mod prime `p`.
fn mod_inverse(v: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, v as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "inverse of non-unit");
    t0.rem_euclid(p as i128) as u64
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic_is_exact() {
        let f = Field::Rationals;
        let third = f.parse_scalar("1/3").unwrap();
        let sum = third.add(&third).add(&third);
        assert!(sum.is_one());
        let a = f.from_i64(-7);
        assert!(a.add(&a.neg()).is_zero());
        assert!(a.mul(&a.inv().unwrap()).is_one());
    }

    #[test]
    fn fp_canonical_representatives() {
        let f = Field::Prime(5);
        let a = f.from_i64(-3);
        assert_eq!(a, f.from_i64(2));
        assert!(a.mul(&a.inv().unwrap()).is_one());
        for n in -20..20 {
            let s = f.from_i64(n);
            match s {
                Scalar::Fp { v, .. } => assert!(v < 5),
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn fraction_literals_in_prime_fields() {
        let f = Field::Prime(7);
        // 1/2 = 4 mod 7
        assert_eq!(f.parse_scalar("1/2").unwrap(), f.from_i64(4));
        assert!(f.parse_scalar("1/7").is_err());
        assert!(Field::Rationals.parse_scalar("2/0").is_err());
    }

    #[test]
    fn modulus_validation() {
        assert!(Field::Prime(2).validate().is_ok());
        assert!(Field::Prime(4).validate().is_err());
        assert!(Field::Prime(1).validate().is_err());
        assert!(Field::Rationals.validate().is_ok());
    }
}
