//! Exact low-rank matrix recovery through rank-metric decoding.
//!
//! An unknown matrix `X₀ ∈ K^{m×n}` of low rank is compressed by a linear
//! map into `n·(n−k)` scalars: the syndrome of `X₀`, read as a vector over
//! an extension `L/K`, under the parity-check matrix of a Gabidulin code.
//! Decoding the syndrome gives back `X₀` exactly whenever
//! `rank X₀ ≤ ⌊(n−k)/2⌋`.
//!
//! Everything runs in exact arithmetic over number fields:
//!
//! * [`algebra`]: `ℚ(ζ_p)/ℚ` and Kummer extensions of `ℚ(ζ_n)`, with the
//!   generating automorphism `θ`.
//! * [`linalg`]: Gaussian elimination over any [`Field`].
//! * [`skew`]: the θ-polynomial ring `L[x;θ]`.
//! * [`rank_metric`]: the `ext` map and rank weights.
//! * [`gabidulin`]: code construction, encoding and decoding.
//! * [`lrmr`]: the measurement operator, recovery and rational approximation
//!   of real or complex data.

pub mod algebra;
pub mod error;
pub mod field;
pub mod gabidulin;
pub mod linalg;
pub mod lrmr;
pub mod rank_metric;
pub mod skew;
pub mod text;

pub use algebra::{CyclotomicElement, CyclotomicField, FieldElement, Tower, TowerSpec};
pub use error::{Error, Result};
pub use field::{Field, Rational, Rationals};
pub use gabidulin::{CodeDescriptor, DecodeFailure, Decoded, GabidulinCode};
pub use linalg::ExactMatrix;
pub use lrmr::{measure, recover, LowRankInstance, MeasurementRecord};
pub use rank_metric::{rank_weight, WeightKind, Weights};
pub use skew::{SkewPoly, SkewRing};
