//! Exact rational arithmetic and the two linear-feasibility primitives
//! (cone membership and strict supporting functionals) the geometry is built on.

pub mod matrix;
pub mod polygon;
pub mod rational;
pub mod simplex;
pub mod vector;

use num_traits::{Signed, Zero};
use thiserror::Error;

pub use matrix::{rank, rank_of, RationalMatrix};
pub use rational::{int, parse_rational, ratio, Rational};
pub use vector::RationalVector;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square: {0:?}")]
    NotSquare((usize, usize)),
    #[error("matrix is singular")]
    Singular,
    #[error("parse error: {0}")]
    Parse(String),
}

fn check_dims(dim: usize, vs: &[RationalVector]) -> Result<(), KernelError> {
    vs.iter().try_for_each(|v| v.check_dim(dim))
}

/// Nonnegative coefficients `λ` with `Σ λ_i gens[i] = v`, if any exist.
pub fn nonneg_combination(
    v: &RationalVector,
    gens: &[RationalVector],
) -> Result<Option<Vec<Rational>>, KernelError> {
    check_dims(v.dim(), gens)?;
    if v.is_zero() {
        return Ok(Some(vec![Rational::zero(); gens.len()]));
    }
    if gens.is_empty() {
        return Ok(None);
    }
    let rows: Vec<Vec<Rational>> = (0..v.dim())
        .map(|i| gens.iter().map(|g| g[i].clone()).collect())
        .collect();
    Ok(simplex::find_nonnegative_solution(&rows, v.coords(), gens.len()))
}

/// True iff `v` lies in the cone spanned by `gens` (`Σ λ_i g_i` with `λ >= 0`).
pub fn in_nonneg_hull(v: &RationalVector, gens: &[RationalVector]) -> Result<bool, KernelError> {
    Ok(nonneg_combination(v, gens)?.is_some())
}

/// A vector `β` with `<g, β> = 0` on `zero_set` and `<g, β> > 0` on `pos_set`.
///
/// Strictness is encoded as `<g, β> >= 1`; the conditions are homogeneous so
/// any strict solution rescales to one of these.
pub fn strict_supporting_functional(
    zero_set: &[RationalVector],
    pos_set: &[RationalVector],
) -> Result<Option<RationalVector>, KernelError> {
    let Some(dim) = zero_set.first().or(pos_set.first()).map(RationalVector::dim) else {
        return Ok(None);
    };
    check_dims(dim, zero_set)?;
    check_dims(dim, pos_set)?;
    if pos_set.iter().any(RationalVector::is_zero) {
        return Ok(None);
    }
    // variables: β⁺ (dim), β⁻ (dim), one surplus per positive constraint
    let nvars = 2 * dim + pos_set.len();
    let mut rows = Vec::with_capacity(zero_set.len() + pos_set.len());
    let mut rhs = Vec::with_capacity(rows.capacity());
    for z in zero_set {
        let mut row = vec![Rational::zero(); nvars];
        for i in 0..dim {
            row[i] = z[i].clone();
            row[dim + i] = -z[i].clone();
        }
        rows.push(row);
        rhs.push(Rational::zero());
    }
    for (k, p) in pos_set.iter().enumerate() {
        let mut row = vec![Rational::zero(); nvars];
        for i in 0..dim {
            row[i] = p[i].clone();
            row[dim + i] = -p[i].clone();
        }
        row[2 * dim + k] = int(-1);
        rows.push(row);
        rhs.push(int(1));
    }
    let Some(x) = simplex::find_nonnegative_solution(&rows, &rhs, nvars) else {
        return Ok(None);
    };
    let beta = RationalVector::new((0..dim).map(|i| &x[i] - &x[dim + i]).collect());
    debug_assert!(zero_set.iter().all(|z| z.dot(&beta).is_zero()));
    debug_assert!(pos_set.iter().all(|p| p.dot(&beta).is_positive()));
    Ok(Some(beta.canonical_ray()))
}
