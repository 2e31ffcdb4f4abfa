//! Self-affine systems `A·T = T + D` with `A` an expanding integer matrix:
//! validation, digit expansions `D_k = D + AD + … + A^{k-1}D`, the level-k
//! approximations `A^{-k} D_k`, cube-union verdicts and corner probes.

pub mod corner;
pub mod cubes;

use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::kernel::{int, Rational, RationalMatrix, RationalVector};
use crate::tiling::Point;

pub use corner::{corner_probe, CornerReport, CornerVerdict};
pub use cubes::{is_cube_union, CubeUnionVerdict, VerdictTag};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SelfAffineError {
    #[error("matrix entries must be integers")]
    NotInteger,
    #[error("matrix is not square: {0}x{1}")]
    NotSquare(usize, usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("|det A| = {det} but there are {digits} digits")]
    DeterminantDigitMismatch { det: String, digits: usize },
    #[error("matrix is not expanding")]
    NotExpanding,
    #[error("level must be at least 1")]
    InvalidLevel,
    #[error("expansion too large: {0} points")]
    TooLarge(String),
    #[error("integer overflow in digit expansion")]
    Overflow,
    #[error("vertex lies outside the level-{0} bounding box")]
    VertexOutsideBox(u32),
}

impl SelfAffineError {
    pub fn code(&self) -> &'static str {
        match self {
            SelfAffineError::NotInteger => "NotInteger",
            SelfAffineError::NotSquare(..) => "NotSquare",
            SelfAffineError::DimensionMismatch { .. } => "DimensionMismatch",
            SelfAffineError::DeterminantDigitMismatch { .. } => "DeterminantDigitMismatch",
            SelfAffineError::NotExpanding => "NotExpanding",
            SelfAffineError::InvalidLevel => "InvalidLevel",
            SelfAffineError::TooLarge(_) => "TooLarge",
            SelfAffineError::Overflow => "Overflow",
            SelfAffineError::VertexOutsideBox(_) => "VertexOutsideBox",
        }
    }
}

/// Coefficients `c_0, …, c_n` of `det(xI − A)`, lowest degree first
/// (Faddeev–LeVerrier).
pub fn characteristic_polynomial(a: &RationalMatrix) -> Vec<Rational> {
    let n = a.shape().0;
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = int(1);
    let mut m = RationalMatrix::from_rows(vec![RationalVector::zeros(n); n]).expect("square");
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let am = a.mul(&m);
        let rows = (0..n)
            .map(|i| {
                let mut r = am.row(i).clone().into_coords();
                r[i] += &coeffs[n - k + 1];
                RationalVector::new(r)
            })
            .collect();
        m = RationalMatrix::from_rows(rows).expect("square");
        let am = a.mul(&m);
        let trace: Rational = (0..n).map(|i| am.get(i, i).clone()).sum();
        coeffs[n - k] = -trace / int(k as i64);
    }
    coeffs
}

/// Schur–Cohn: every root of `Σ c_i x^i` lies in the open unit disk.
pub fn roots_inside_unit_disk(coeffs: &[Rational]) -> bool {
    let mut f: Vec<Rational> = coeffs.to_vec();
    while f.len() > 1 && f.last().is_some_and(Zero::is_zero) {
        f.pop();
    }
    loop {
        let k = f.len() - 1;
        if k == 0 {
            return !f[0].is_zero();
        }
        let (lead, constant) = (f[k].clone(), f[0].clone());
        if lead.abs() <= constant.abs() {
            return false;
        }
        // (a_k f(z) − a_0 f*(z)) / z
        f = (1..=k).map(|i| &lead * &f[i] - &constant * &f[k - i]).collect();
    }
}

/// All eigenvalues have modulus > 1: the reversed characteristic polynomial
/// has every root inside the unit disk. A zero eigenvalue would drop out of
/// the reversal, so singular matrices are rejected first.
pub fn is_expanding(a: &RationalMatrix) -> bool {
    let mut reversed = characteristic_polynomial(a);
    if reversed[0].is_zero() {
        return false;
    }
    reversed.reverse();
    roots_inside_unit_disk(&reversed)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfAffineSystem {
    a: Vec<Vec<i64>>,
    matrix: RationalMatrix,
    digits: Vec<Point>,
    m: u64,
}

impl SelfAffineSystem {
    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    pub fn int_matrix(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn digits(&self) -> &[Point] {
        &self.digits
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    fn apply(&self, p: &[i64]) -> Result<Point, SelfAffineError> {
        self.a
            .iter()
            .map(|row| {
                row.iter().zip(p).try_fold(0i64, |acc, (x, y)| {
                    x.checked_mul(*y).and_then(|v| acc.checked_add(v)).ok_or(SelfAffineError::Overflow)
                })
            })
            .collect()
    }
}

pub fn check_system(a: &RationalMatrix, digits: &[RationalVector]) -> Result<SelfAffineSystem, SelfAffineError> {
    let (rows, cols) = a.shape();
    if rows != cols {
        return Err(SelfAffineError::NotSquare(rows, cols));
    }
    let to_ints = |v: &RationalVector| -> Result<Point, SelfAffineError> {
        v.iter()
            .map(|q| if q.is_integer() { q.to_integer().to_i64().ok_or(SelfAffineError::Overflow) } else { Err(SelfAffineError::NotInteger) })
            .collect()
    };
    let a_int: Vec<Point> = a.rows().iter().map(to_ints).collect::<Result<_, _>>()?;
    let mut digit_pts = Vec::with_capacity(digits.len());
    for d in digits {
        if d.dim() != rows {
            return Err(SelfAffineError::DimensionMismatch { expected: rows, found: d.dim() });
        }
        digit_pts.push(to_ints(d)?);
    }
    let det = a.determinant().expect("square").abs();
    if det != int(digits.len() as i64) {
        return Err(SelfAffineError::DeterminantDigitMismatch { det: det.to_string(), digits: digits.len() });
    }
    if digits.len() < 2 || !is_expanding(a) {
        return Err(SelfAffineError::NotExpanding);
    }
    Ok(SelfAffineSystem {
        a: a_int,
        matrix: a.clone(),
        digits: digit_pts,
        m: digits.len() as u64,
    })
}

pub fn check_int_system(a: &[Vec<i64>], digits: &[Vec<i64>]) -> Result<SelfAffineSystem, SelfAffineError> {
    let matrix = RationalMatrix::from_int_rows(a).map_err(|_| SelfAffineError::NotSquare(a.len(), a.first().map_or(0, Vec::len)))?;
    let digits: Vec<RationalVector> = digits.iter().map(|d| RationalVector::from_ints(d)).collect();
    check_system(&matrix, &digits)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitExpansion {
    pub level: u32,
    /// The multiset `D_k`, sorted.
    pub points: Vec<Point>,
    pub multiset_size: usize,
    pub distinct_count: usize,
}

const MAX_EXPANSION: u128 = 1 << 24;

fn check_level(sys: &SelfAffineSystem, k: u32) -> Result<(), SelfAffineError> {
    if k == 0 {
        return Err(SelfAffineError::InvalidLevel);
    }
    let size = u128::from(sys.m).checked_pow(k).unwrap_or(u128::MAX);
    if size > MAX_EXPANSION {
        return Err(SelfAffineError::TooLarge(format!("{}^{k}", sys.m)));
    }
    Ok(())
}

/// `D_k` as a multiset; `D_{j+1} = D + A·D_j`.
pub fn digit_expand(sys: &SelfAffineSystem, k: u32) -> Result<DigitExpansion, SelfAffineError> {
    check_level(sys, k)?;
    let mut current: Vec<Point> = sys.digits.clone();
    for _ in 1..k {
        let images: Vec<Point> = current.par_iter().map(|p| sys.apply(p)).collect::<Result<_, _>>()?;
        current = sys
            .digits
            .par_iter()
            .flat_map_iter(|d| images.iter().map(move |p| p.iter().zip(d).map(|(x, y)| x.checked_add(*y)).collect::<Option<Point>>()))
            .collect::<Option<Vec<Point>>>()
            .ok_or(SelfAffineError::Overflow)?;
    }
    current.par_sort();
    let mut distinct = current.clone();
    distinct.dedup();
    Ok(DigitExpansion {
        level: k,
        multiset_size: current.len(),
        distinct_count: distinct.len(),
        points: current,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellApproximation {
    pub level: u32,
    /// Distinct points of `A^{-k} D_k`, sorted.
    pub points: Vec<RationalVector>,
    pub bounding_box: (RationalVector, RationalVector),
}

fn bounding_box(points: &[RationalVector], dim: usize) -> (RationalVector, RationalVector) {
    let lo = (0..dim).map(|i| points.iter().map(|p| p[i].clone()).min().unwrap_or_else(Rational::zero)).collect();
    let hi = (0..dim).map(|i| points.iter().map(|p| p[i].clone()).max().unwrap_or_else(Rational::zero)).collect();
    (RationalVector::new(lo), RationalVector::new(hi))
}

pub fn approximate_tile(sys: &SelfAffineSystem, k: u32) -> Result<CellApproximation, SelfAffineError> {
    let expansion = digit_expand(sys, k)?;
    let inv = sys.matrix.pow(k).inverse().expect("expanding matrices are invertible");
    let mut distinct = expansion.points;
    distinct.dedup();
    let mut points: Vec<RationalVector> = distinct
        .par_iter()
        .map(|p| inv.mul_vec(&RationalVector::from_ints(p)))
        .collect();
    points.par_sort();
    let bounding_box = bounding_box(&points, sys.dim());
    Ok(CellApproximation { level: k, points, bounding_box })
}

/// `f_d(x) = A^{-1}(x + d)`.
pub fn ifs_map(sys: &SelfAffineSystem, d: &[i64], x: &RationalVector) -> RationalVector {
    let inv = sys.matrix.inverse().expect("expanding matrices are invertible");
    inv.mul_vec(&(x + &RationalVector::from_ints(d)))
}

/// Max-norm of a matrix (largest absolute row sum).
pub fn max_norm(m: &RationalMatrix) -> Rational {
    m.rows().iter().map(|r| r.iter().map(|q| q.abs()).sum::<Rational>()).max().unwrap_or_else(Rational::zero)
}
