//! The [`Field`] abstraction shared by every exact computation in the crate.
//!
//! Fields are "ring objects": elements are plain values and all arithmetic
//! goes through the field, which carries whatever context (modulus, degree,
//! automorphism tables) the elements need.

use std::fmt::Debug;

use num::{BigInt, One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Arbitrary-precision exact rational; always kept in lowest terms with a
/// positive denominator.
pub type Rational = num::BigRational;

/// Exact arithmetic in a commutative field.
pub trait Field: Send + Sync {
    type Elem: Clone + PartialEq + Eq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Multiplicative inverse; [`Error::DivisionByZero`] for zero.
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    /// Embeds a rational number (every field here has characteristic zero).
    fn from_rational(&self, q: &Rational) -> Self::Elem;

    /// Text form of an element, free of whitespace.
    fn format_elem(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;

    /// Element whose rational coordinates are integers in `[-height, height]`.
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R, height: u32) -> Self::Elem;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn from_int(&self, v: i64) -> Self::Elem {
        self.from_rational(&Rational::from_integer(BigInt::from(v)))
    }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }

    fn one(&self) -> Rational {
        Rational::one()
    }

    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }

    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }

    fn neg(&self, a: &Rational) -> Rational {
        -a
    }

    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }

    fn inv(&self, a: &Rational) -> Result<Rational> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(a.recip())
    }

    fn from_rational(&self, q: &Rational) -> Rational {
        q.clone()
    }

    fn format_elem(&self, a: &Rational) -> String {
        format_rational(a)
    }

    fn parse_elem(&self, s: &str) -> Result<Rational> {
        parse_rational(s)
    }

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R, height: u32) -> Rational {
        random_int(rng, height)
    }
}

pub(crate) fn random_int<R: Rng + ?Sized>(rng: &mut R, height: u32) -> Rational {
    let h = i64::from(height);
    Rational::from_integer(BigInt::from(rng.random_range(-h..=h)))
}

/// `p/q`, or just `p` for integers.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p/q` or `p`; the result is normalized.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(num, den))
}

/// Largest absolute value among numerator and denominator; a cheap height measure.
pub fn height(q: &Rational) -> BigInt {
    let n = q.numer().abs();
    let d = q.denom().clone();
    if n > d {
        n
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_round_trip() {
        for s in ["0", "3", "-7/2", "1/3"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(format_rational(&parse_rational("4/-6").unwrap()), "-2/3");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn rational_inverse() {
        let two = Rationals.from_int(2);
        assert_eq!(Rationals.inv(&two).unwrap(), parse_rational("1/2").unwrap());
        assert!(matches!(Rationals.inv(&Rationals.zero()), Err(Error::DivisionByZero)));
    }
}
