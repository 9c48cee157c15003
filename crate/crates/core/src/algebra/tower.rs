use std::fmt;
use std::str::FromStr;

use rand::Rng;

use super::{is_prime, multiplicative_order, poly_mul, pow_mod, prime_factors, reduce_monic};
use super::{smallest_primitive_root, CyclotomicElement, CyclotomicField};
use crate::error::{Error, Result};
use crate::field::{parse_rational, Field, Rational};
use crate::linalg::{self, ExactMatrix};
use crate::text;

/// Which extension `L/K` to build.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TowerSpec {
    /// `ℚ(ζ_p)/ℚ` for a prime `p ≥ 3`; degree `p − 1`.
    Cyclotomic { p: u64 },
    /// `K(a^{1/n})/K` with `K = ℚ(ζ_n)`, `4 | n`; degree `n`.
    Kummer { n: u64, radicand: i64 },
}

impl TowerSpec {
    pub const DEFAULT_RADICAND: i64 = 2;

    pub fn kummer(n: u64) -> Self {
        TowerSpec::Kummer { n, radicand: Self::DEFAULT_RADICAND }
    }

    /// Inverse of `(kind_name, param, radicand)`; a missing Kummer radicand
    /// means the default.
    pub fn from_parts(kind: &str, param: u64, radicand: Option<i64>) -> Result<Self> {
        match kind {
            "cyclotomic" if radicand.is_some() => Err(Error::Parse("cyclotomic towers take no radicand".into())),
            "cyclotomic" => Ok(TowerSpec::Cyclotomic { p: param }),
            "kummer" => Ok(TowerSpec::Kummer { n: param, radicand: radicand.unwrap_or(Self::DEFAULT_RADICAND) }),
            other => Err(Error::Parse(format!("unknown tower kind `{other}`"))),
        }
    }

    /// Radicand of a Kummer tower, `None` for cyclotomic ones.
    pub fn radicand(&self) -> Option<i64> {
        match *self {
            TowerSpec::Cyclotomic { .. } => None,
            TowerSpec::Kummer { radicand, .. } => Some(radicand),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            TowerSpec::Cyclotomic { .. } => "cyclotomic",
            TowerSpec::Kummer { .. } => "kummer",
        }
    }

    /// `p` for cyclotomic towers, `n` for Kummer towers.
    pub fn param(&self) -> u64 {
        match *self {
            TowerSpec::Cyclotomic { p } => p,
            TowerSpec::Kummer { n, .. } => n,
        }
    }
}

impl fmt::Display for TowerSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TowerSpec::Cyclotomic { p } => write!(f, "cyclotomic:{p}"),
            TowerSpec::Kummer { n, radicand } if radicand == Self::DEFAULT_RADICAND => {
                write!(f, "kummer:{n}")
            }
            TowerSpec::Kummer { n, radicand } => write!(f, "kummer:{n}:{radicand}"),
        }
    }
}

impl FromStr for TowerSpec {
    type Err = Error;

    /// `cyclotomic:p`, `kummer:n` or `kummer:n:radicand`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid tower `{s}`; expected cyclotomic:p or kummer:n[:radicand]"));
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |t: &str| t.parse::<u64>().map_err(|_| bad());
        match parts[..] {
            ["cyclotomic", p] => Ok(TowerSpec::Cyclotomic { p: num(p)? }),
            ["kummer", n] => Ok(TowerSpec::kummer(num(n)?)),
            ["kummer", n, a] => Ok(TowerSpec::Kummer {
                n: num(n)?,
                radicand: a.parse().map_err(|_| bad())?,
            }),
            _ => Err(bad()),
        }
    }
}

/// Element of `L`, stored as its `m` coordinates over `K` with respect to the
/// power basis `β = (1, γ, …, γ^{m−1})` where `γ` is `ζ_p` or `α`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement(Vec<CyclotomicElement>);

impl FieldElement {
    pub fn coords(&self) -> &[CyclotomicElement] {
        &self.0
    }
}

/// A cyclic extension `L/K` of degree `m` together with its generating
/// automorphism `θ`. Immutable once built.
#[derive(Clone, Debug)]
pub struct Tower {
    spec: TowerSpec,
    base: CyclotomicField,
    degree: usize,
    /// Monic minimal polynomial of the generator over `K`, lowest degree first.
    modulus: Vec<CyclotomicElement>,
    /// `theta[e][j] = θ^e(β_j)` for `0 ≤ e < m`.
    theta: Vec<Vec<FieldElement>>,
    primitive_root: Option<u64>,
}

impl Tower {
    pub fn new(spec: TowerSpec) -> Result<Self> {
        let tower = match spec {
            TowerSpec::Cyclotomic { p } => Self::build_cyclotomic(p)?,
            TowerSpec::Kummer { n, radicand } => Self::build_kummer(n, radicand)?,
        };
        tower.verify_theta()?;
        Ok(tower)
    }

    pub fn cyclotomic(p: u64) -> Result<Self> {
        Self::new(TowerSpec::Cyclotomic { p })
    }

    pub fn kummer(n: u64) -> Result<Self> {
        Self::new(TowerSpec::kummer(n))
    }

    fn build_cyclotomic(p: u64) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::InvalidTower(format!("cyclotomic conductor {p} is not a prime ≥ 3")));
        }
        let g = smallest_primitive_root(p).expect("primes have primitive roots");
        if multiplicative_order(g, p) != Some(p - 1) {
            return Err(Error::InvalidTower(format!("{g} is not a primitive root modulo {p}")));
        }
        let base = CyclotomicField::rationals();
        let m = (p - 1) as usize;
        let modulus = vec![base.one(); m + 1];
        let mut tower =
            Tower { spec: TowerSpec::Cyclotomic { p }, base, degree: m, modulus, theta: Vec::new(), primitive_root: Some(g) };
        // θ^e(ζ^j) = ζ^{g^e·j mod p}
        tower.theta = (0..m as u64)
            .map(|e| {
                let ge = pow_mod(g, e, p);
                (0..m as u64).map(|j| tower.generator_pow(ge * j % p)).collect()
            })
            .collect();
        Ok(tower)
    }

    fn build_kummer(n: u64, radicand: i64) -> Result<Self> {
        if n <= 2 || !n.is_multiple_of(4) {
            return Err(Error::InvalidTower(format!("Kummer degree {n} must exceed 2 and be divisible by 4")));
        }
        check_kummer_radicand(n, radicand)?;
        let base = CyclotomicField::new(n)?;
        let m = n as usize;
        let mut modulus = vec![base.zero(); m + 1];
        modulus[0] = base.from_int(-radicand);
        modulus[m] = base.one();
        // θ^e(α^j) = ζ_n^{e·j}·α^j
        let theta = (0..n)
            .map(|e| {
                (0..n)
                    .map(|j| {
                        let mut c = vec![base.zero(); m];
                        c[j as usize] = base.zeta_pow(e * j % n);
                        FieldElement(c)
                    })
                    .collect()
            })
            .collect();
        Ok(Tower { spec: TowerSpec::Kummer { n, radicand }, base, degree: m, modulus, theta, primitive_root: None })
    }

    /// Checks that `θ` has exact order `m` on the generator and that its
    /// fixed field is `K`.
    fn verify_theta(&self) -> Result<()> {
        let gen = self.generator();
        let mut x = gen.clone();
        for j in 1..=self.degree {
            x = self.theta_step(&x);
            if (x == gen) != (j == self.degree) {
                return Err(Error::InvalidTower(format!("θ has order {j}, expected {}", self.degree)));
            }
        }
        let k = &self.base;
        let fixed = ExactMatrix::from_fn(self.degree, self.degree, |i, j| {
            let t = self.theta[1][j].0[i].clone();
            if i == j {
                k.sub(&t, &k.one())
            } else {
                t
            }
        });
        if linalg::rank(k, &fixed) != self.degree - 1 {
            return Err(Error::InvalidTower("fixed field of θ is larger than K".into()));
        }
        Ok(())
    }

    fn theta_step(&self, a: &FieldElement) -> FieldElement {
        self.apply_images(a, &self.theta[1])
    }

    fn apply_images(&self, a: &FieldElement, images: &[FieldElement]) -> FieldElement {
        let k = &self.base;
        let mut out = vec![k.zero(); self.degree];
        for (c, img) in a.0.iter().zip(images) {
            if k.is_zero(c) {
                continue;
            }
            for (o, d) in out.iter_mut().zip(&img.0) {
                if !k.is_zero(d) {
                    *o = k.add(o, &k.mul(c, d));
                }
            }
        }
        FieldElement(out)
    }

    /// `γ^r` reduced into the power basis.
    fn generator_pow(&self, r: u64) -> FieldElement {
        let mut c = vec![self.base.zero(); r as usize + 1];
        c[r as usize] = self.base.one();
        FieldElement(reduce_monic(&self.base, c, &self.modulus))
    }

    pub fn spec(&self) -> &TowerSpec {
        &self.spec
    }

    /// The base field `K`.
    pub fn base(&self) -> &CyclotomicField {
        &self.base
    }

    /// `m = [L : K]`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `g` with `θ(ζ) = ζ^g`; only for cyclotomic towers.
    pub fn primitive_root(&self) -> Option<u64> {
        self.primitive_root
    }

    /// `ζ_p` or `α`.
    pub fn generator(&self) -> FieldElement {
        self.basis_element(1)
    }

    pub fn basis_element(&self, j: usize) -> FieldElement {
        let mut c = vec![self.base.zero(); self.degree];
        c[j] = self.base.one();
        FieldElement(c)
    }

    /// The ordered power basis `β`.
    pub fn basis(&self) -> Vec<FieldElement> {
        (0..self.degree).map(|j| self.basis_element(j)).collect()
    }

    pub fn coords<'a>(&self, a: &'a FieldElement) -> &'a [CyclotomicElement] {
        &a.0
    }

    pub fn from_coords(&self, coords: Vec<CyclotomicElement>) -> Result<FieldElement> {
        if coords.len() != self.degree {
            return Err(Error::WrongLength { expected: self.degree, got: coords.len() });
        }
        if let Some(bad) = coords.iter().find(|c| c.coeffs().len() != self.base.degree()) {
            return Err(Error::WrongLength { expected: self.base.degree(), got: bad.coeffs().len() });
        }
        Ok(FieldElement(coords))
    }

    pub fn embed(&self, k: &CyclotomicElement) -> FieldElement {
        let mut c = vec![self.base.zero(); self.degree];
        c[0] = k.clone();
        FieldElement(c)
    }

    /// `k·a` for `k ∈ K`.
    pub fn scale(&self, k: &CyclotomicElement, a: &FieldElement) -> FieldElement {
        FieldElement(a.0.iter().map(|c| self.base.mul(k, c)).collect())
    }

    /// The element as a `K`-scalar, if it lies in `K`.
    pub fn as_base(&self, a: &FieldElement) -> Option<CyclotomicElement> {
        a.0[1..].iter().all(|c| self.base.is_zero(c)).then(|| a.0[0].clone())
    }

    /// `θ^j(a)`; `j` is taken modulo `m`.
    pub fn apply_theta(&self, a: &FieldElement, j: usize) -> FieldElement {
        let e = j % self.degree;
        if e == 0 {
            return a.clone();
        }
        self.apply_images(a, &self.theta[e])
    }
}

impl Field for Tower {
    type Elem = FieldElement;

    fn zero(&self) -> FieldElement {
        FieldElement(vec![self.base.zero(); self.degree])
    }

    fn one(&self) -> FieldElement {
        self.embed(&self.base.one())
    }

    fn is_zero(&self, a: &FieldElement) -> bool {
        a.0.iter().all(|c| self.base.is_zero(c))
    }

    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement(a.0.iter().zip(&b.0).map(|(x, y)| self.base.add(x, y)).collect())
    }

    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement(a.0.iter().zip(&b.0).map(|(x, y)| self.base.sub(x, y)).collect())
    }

    fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement(a.0.iter().map(|x| self.base.neg(x)).collect())
    }

    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement(reduce_monic(&self.base, poly_mul(&self.base, &a.0, &b.0), &self.modulus))
    }

    /// Solves the `m×m` multiplication-by-`a` system over `K`.
    fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        if let Some(k) = self.as_base(a) {
            return Ok(self.embed(&self.base.inv(&k)?));
        }
        let m = self.degree;
        let columns: Vec<FieldElement> = (0..m).map(|j| self.mul(a, &self.basis_element(j))).collect();
        let sys = ExactMatrix::from_fn(m, m, |i, j| columns[j].0[i].clone());
        let x = linalg::solve(&self.base, &sys, &self.one().0)?
            .expect("multiplication by a nonzero element is invertible");
        Ok(FieldElement(x))
    }

    fn from_rational(&self, q: &Rational) -> FieldElement {
        self.embed(&self.base.from_rational(q))
    }

    fn format_elem(&self, a: &FieldElement) -> String {
        let parts: Vec<String> = a.0.iter().map(|c| self.base.format_elem(c)).collect();
        format!("({})", parts.join(","))
    }

    /// Accepts `(c0,…,c_{m−1})` with base-field coordinates, or a bare
    /// rational.
    fn parse_elem(&self, s: &str) -> Result<FieldElement> {
        match text::tuple_items(s) {
            Some(items) => {
                let coords = items?.iter().map(|t| self.base.parse_elem(t)).collect::<Result<Vec<_>>>()?;
                self.from_coords(coords)
            }
            None => Ok(self.from_rational(&parse_rational(s)?)),
        }
    }

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R, height: u32) -> FieldElement {
        FieldElement((0..self.degree).map(|_| self.base.random_elem(rng, height)).collect())
    }
}

/// Rejects radicands for which `x^n − a` is reducible over `ℚ(ζ_n)`.
///
/// Since `i ∈ ℚ(ζ_n)`, Capelli's criterion reduces to: `a` is not a square
/// in `ℚ(ζ_n)` and not a `q`-th power in `ℚ` for any odd prime `q | n`. A
/// rational `a = s²·D` (`D` squarefree, `D ≠ 1`) is a square in `ℚ(ζ_n)` iff
/// the conductor of `ℚ(√D)` divides `n`.
fn check_kummer_radicand(n: u64, a: i64) -> Result<()> {
    if a == 0 {
        return Err(Error::InvalidTower("Kummer radicand must be nonzero".into()));
    }
    let d = squarefree_part(a);
    let conductor = if d.rem_euclid(4) == 1 { d.unsigned_abs() } else { 4 * d.unsigned_abs() };
    if d == 1 || n.is_multiple_of(conductor) {
        return Err(Error::InvalidTower(format!("radicand {a} is a square in ℚ(ζ_{n}); x^{n} − {a} is reducible")));
    }
    for q in prime_factors(n).into_iter().filter(|&q| q != 2) {
        if is_perfect_power(a, q as u32) {
            return Err(Error::InvalidTower(format!("radicand {a} is a {q}-th power; x^{n} − {a} is reducible")));
        }
    }
    Ok(())
}

/// Signed squarefree part: `a = s²·d`.
fn squarefree_part(a: i64) -> i64 {
    let mut rest = a.unsigned_abs();
    let mut d: u64 = 1;
    let mut p = 2;
    while p * p <= rest {
        let mut e = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        if e % 2 == 1 {
            d *= p;
        }
        p += 1;
    }
    d *= rest;
    a.signum() * d as i64
}

fn is_perfect_power(a: i64, q: u32) -> bool {
    let target = i128::from(a).abs();
    let approx = (target as f64).powf(1.0 / f64::from(q)).round() as i128;
    let hit = (approx.saturating_sub(1)..=approx + 1).any(|r| r >= 0 && r.checked_pow(q) == Some(target));
    // odd q: negative numbers are q-th powers of negatives
    hit && (a > 0 || q % 2 == 1)
}
