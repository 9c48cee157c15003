//! Exact arithmetic in the base field `K` and the extension `L`, including
//! the generating automorphism `θ` of `L/K`.
//!
//! Two tower families are supported:
//!
//! * [`TowerSpec::Cyclotomic`]: `K = ℚ`, `L = ℚ(ζ_p)` for a prime `p`, with
//!   `θ(ζ) = ζ^g` for the smallest primitive root `g` modulo `p`.
//! * [`TowerSpec::Kummer`]: `K = ℚ(ζ_n)` with `4 | n`, `L = K(α)` where
//!   `α^n = a`, with `θ(α) = ζ_n·α`.
//!
//! Both `K` and `L` use power bases and reduce eagerly, so equality of
//! elements is equality of coordinate vectors.

mod cyclotomic;
mod tower;

pub use cyclotomic::{cyclotomic_polynomial, CyclotomicElement, CyclotomicField};
pub use tower::{FieldElement, Tower, TowerSpec};

use crate::field::Field;

/// Schoolbook product of dense coefficient vectors (lowest degree first).
pub(crate) fn poly_mul<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if field.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if field.is_zero(y) {
                continue;
            }
            out[i + j] = field.add(&out[i + j], &field.mul(x, y));
        }
    }
    out
}

/// Remainder of `p` modulo a monic `modulus`, padded to exactly
/// `deg(modulus)` coefficients.
pub(crate) fn reduce_monic<F: Field>(field: &F, mut p: Vec<F::Elem>, modulus: &[F::Elem]) -> Vec<F::Elem> {
    let d = modulus.len() - 1;
    while p.len() > d {
        let top = p.pop().expect("length checked");
        if field.is_zero(&top) {
            continue;
        }
        let shift = p.len() - d;
        for (i, c) in modulus[..d].iter().enumerate() {
            if !field.is_zero(c) {
                p[shift + i] = field.sub(&p[shift + i], &field.mul(&top, c));
            }
        }
    }
    p.resize(d, field.zero());
    p
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

/// Multiplicative order of `g` modulo `p`, or `None` if `g` is not a unit.
pub(crate) fn multiplicative_order(g: u64, p: u64) -> Option<u64> {
    if g.is_multiple_of(p) {
        return None;
    }
    let mut x = g % p;
    let mut k = 1;
    while x != 1 {
        x = x * g % p;
        k += 1;
        if k > p {
            return None;
        }
    }
    Some(k)
}

/// Smallest primitive root modulo a prime `p`.
pub(crate) fn smallest_primitive_root(p: u64) -> Option<u64> {
    (1..p).find(|&g| multiplicative_order(g, p) == Some(p - 1))
}

pub(crate) fn euler_phi(n: u64) -> u64 {
    prime_factors(n).iter().fold(n, |acc, q| acc / q * (q - 1))
}
