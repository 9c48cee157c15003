use num::{One, Zero};
use rand::Rng;

use super::{euler_phi, poly_mul, reduce_monic};
use crate::error::{Error, Result};
use crate::field::{format_rational, parse_rational, random_int, Field, Rational, Rationals};
use crate::linalg::{self, ExactMatrix};
use crate::text;

/// Coefficients of the `n`-th cyclotomic polynomial `Φ_n`, lowest degree
/// first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<Rational> {
    assert!(n >= 1, "cyclotomic polynomials are indexed from 1");
    // x^n - 1
    let mut p = vec![Rational::zero(); n as usize + 1];
    p[0] = -Rational::one();
    p[n as usize] = Rational::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        p = exact_div(&p, &cyclotomic_polynomial(d));
    }
    p
}

/// Quotient of an exact division by a monic polynomial.
fn exact_div(num: &[Rational], den: &[Rational]) -> Vec<Rational> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![Rational::zero(); num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= &c * d;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// Element of `ℚ(ζ_n)` in the power basis `1, ζ, …, ζ^{φ(n)-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicElement(Vec<Rational>);

impl CyclotomicElement {
    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.0
    }
}

/// The cyclotomic field `ℚ(ζ_n)`. Conductor 1 gives `ℚ` itself, which is
/// how the base field of the cyclotomic tower is represented.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    conductor: u64,
    modulus: Vec<Rational>,
}

impl CyclotomicField {
    pub fn new(conductor: u64) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::InvalidTower("cyclotomic conductor must be positive".into()));
        }
        let modulus = cyclotomic_polynomial(conductor);
        debug_assert_eq!(modulus.len() as u64 - 1, euler_phi(conductor));
        Ok(CyclotomicField { conductor, modulus })
    }

    pub fn rationals() -> Self {
        Self::new(1).expect("conductor 1 is valid")
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// `φ(n)`, the degree over `ℚ`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[Rational] {
        &self.modulus
    }

    pub fn from_coeffs(&self, coeffs: Vec<Rational>) -> Result<CyclotomicElement> {
        if coeffs.len() != self.degree() {
            return Err(Error::WrongLength { expected: self.degree(), got: coeffs.len() });
        }
        Ok(CyclotomicElement(coeffs))
    }

    /// Reduces an arbitrary-length coefficient vector modulo `Φ_n`.
    pub fn reduce(&self, coeffs: Vec<Rational>) -> CyclotomicElement {
        CyclotomicElement(reduce_monic(&Rationals, coeffs, &self.modulus))
    }

    /// `ζ_n^e`.
    pub fn zeta_pow(&self, e: u64) -> CyclotomicElement {
        let e = (e % self.conductor) as usize;
        let mut c = vec![Rational::zero(); e + 1];
        c[e] = Rational::one();
        self.reduce(c)
    }

    /// `i = ζ_n^{n/4}` when `4 | n`.
    pub fn imaginary_unit(&self) -> Option<CyclotomicElement> {
        self.conductor.is_multiple_of(4).then(|| self.zeta_pow(self.conductor / 4))
    }

    /// The rational value, if the element lies in `ℚ`.
    pub fn as_rational(&self, a: &CyclotomicElement) -> Option<Rational> {
        a.0[1..].iter().all(Zero::is_zero).then(|| a.0[0].clone())
    }

    pub fn scale(&self, q: &Rational, a: &CyclotomicElement) -> CyclotomicElement {
        CyclotomicElement(a.0.iter().map(|c| c * q).collect())
    }
}

impl Field for CyclotomicField {
    type Elem = CyclotomicElement;

    fn zero(&self) -> CyclotomicElement {
        CyclotomicElement(vec![Rational::zero(); self.degree()])
    }

    fn one(&self) -> CyclotomicElement {
        self.from_rational(&Rational::one())
    }

    fn is_zero(&self, a: &CyclotomicElement) -> bool {
        a.0.iter().all(Zero::is_zero)
    }

    fn add(&self, a: &CyclotomicElement, b: &CyclotomicElement) -> CyclotomicElement {
        CyclotomicElement(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    fn sub(&self, a: &CyclotomicElement, b: &CyclotomicElement) -> CyclotomicElement {
        CyclotomicElement(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    fn neg(&self, a: &CyclotomicElement) -> CyclotomicElement {
        CyclotomicElement(a.0.iter().map(|x| -x).collect())
    }

    fn mul(&self, a: &CyclotomicElement, b: &CyclotomicElement) -> CyclotomicElement {
        if self.degree() == 1 {
            return CyclotomicElement(vec![&a.0[0] * &b.0[0]]);
        }
        self.reduce(poly_mul(&Rationals, &a.0, &b.0))
    }

    /// Solves the `φ(n)×φ(n)` multiplication-by-`a` system over `ℚ`.
    fn inv(&self, a: &CyclotomicElement) -> Result<CyclotomicElement> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        let d = self.degree();
        if d == 1 {
            return Ok(CyclotomicElement(vec![a.0[0].recip()]));
        }
        let columns: Vec<CyclotomicElement> =
            (0..d).map(|j| self.mul(a, &self.zeta_pow(j as u64))).collect();
        let m = ExactMatrix::from_fn(d, d, |i, j| columns[j].0[i].clone());
        let x = linalg::solve(&Rationals, &m, &self.one().0)?
            .expect("multiplication by a nonzero element is invertible");
        Ok(CyclotomicElement(x))
    }

    fn from_rational(&self, q: &Rational) -> CyclotomicElement {
        let mut c = vec![Rational::zero(); self.degree()];
        c[0] = q.clone();
        CyclotomicElement(c)
    }

    /// A bare rational when the field is `ℚ`, otherwise `(c0,c1,…)`.
    fn format_elem(&self, a: &CyclotomicElement) -> String {
        if self.degree() == 1 {
            return format_rational(&a.0[0]);
        }
        let parts: Vec<String> = a.0.iter().map(format_rational).collect();
        format!("({})", parts.join(","))
    }

    /// Accepts a coordinate tuple or a bare rational (embedded).
    fn parse_elem(&self, s: &str) -> Result<CyclotomicElement> {
        match text::tuple_items(s) {
            Some(items) => {
                let items = items?;
                let coeffs = items.iter().map(|t| parse_rational(t)).collect::<Result<Vec<_>>>()?;
                self.from_coeffs(coeffs)
            }
            None => Ok(self.from_rational(&parse_rational(s)?)),
        }
    }

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R, height: u32) -> CyclotomicElement {
        CyclotomicElement((0..self.degree()).map(|_| random_int(rng, height)).collect())
    }
}
