//! Does the tile look like a polyhedral cone near a given point?
//!
//! The level-k approximation is inspected in a max-norm window of radius
//! `r = W / ⌊m^{k/(2n)}⌋` around the vertex (`W` the largest side of the
//! bounding box), so the window shrinks while still holding about `m^{k/2}`
//! points. Inside the window the cloud must be
//!
//! * pointed: some functional is strictly positive on every nonzero offset;
//! * filled: every extreme ray, and every sum of two extreme rays, carries a
//!   cloud point within the approximation error `h = ‖A^{-k}‖∞·W` of its
//!   point at max-norm `r/2`;
//! * stable: the extreme rays at level `k+1` are the same.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{approximate_tile, max_norm, SelfAffineError, SelfAffineSystem};
use crate::cone::compute_frame;
use crate::kernel::rational::integer_root;
use crate::kernel::{strict_supporting_functional, Rational, RationalVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CornerVerdict {
    ConsistentWithCone,
    Inconsistent,
}

impl CornerVerdict {
    pub fn name(self) -> &'static str {
        match self {
            CornerVerdict::ConsistentWithCone => "ConsistentWithCone",
            CornerVerdict::Inconsistent => "Inconsistent",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerReport {
    pub verdict: CornerVerdict,
    /// Canonical extreme rays of the windowed cloud at level `k`.
    pub estimated_generators: Vec<RationalVector>,
    pub level: u32,
    pub window: Rational,
    pub radius: Rational,
    pub tolerance: Rational,
    pub points_in_window: usize,
    pub pointed: bool,
    pub filled: bool,
    pub stable: bool,
}

fn max_abs(v: &RationalVector) -> Rational {
    v.iter().map(Signed::abs).max().unwrap_or_else(Rational::zero)
}

/// Offsets `p − v` of approximation points with `|p − v|∞ <= r`.
fn window_cloud(sys: &SelfAffineSystem, k: u32, vertex: &RationalVector, r: &Rational) -> Result<Vec<RationalVector>, SelfAffineError> {
    let approx = approximate_tile(sys, k)?;
    Ok(approx
        .points
        .iter()
        .map(|p| p - vertex)
        .filter(|q| max_abs(q) <= *r)
        .collect())
}

/// Distinct canonical directions of the nonzero offsets.
fn directions(cloud: &[RationalVector]) -> Vec<RationalVector> {
    let set: BTreeSet<RationalVector> = cloud.iter().filter(|q| !q.is_zero()).map(RationalVector::canonical_ray).collect();
    set.into_iter().collect()
}

fn cross(a: &RationalVector, b: &RationalVector) -> Rational {
    &a[0] * &b[1] - &a[1] * &b[0]
}

/// Boundary rays of the cone over planar directions, or `None` if that cone
/// is not pointed. The cone is grown one direction at a time and stays
/// inside an angle below π.
fn planar_extremes(dirs: &[RationalVector]) -> Option<Vec<RationalVector>> {
    let (mut right, mut left) = (dirs.first()?.clone(), dirs.first()?.clone());
    for d in &dirs[1..] {
        let (from_right, to_left) = (cross(&right, d), cross(d, &left));
        if !from_right.is_negative() && !to_left.is_negative() && (!from_right.is_zero() || d.dot(&right).is_positive()) {
            continue;
        }
        if from_right.is_negative() && cross(d, &left).is_positive() {
            right = d.clone();
        } else if to_left.is_negative() && cross(&right, d).is_positive() {
            left = d.clone();
        } else {
            return None;
        }
    }
    let mut out = vec![right, left];
    out.sort();
    out.dedup();
    Some(out)
}

/// Extreme rays of the cone over the nonzero directions, or `None` if that
/// cone is not pointed.
fn extreme_rays(dirs: &[RationalVector]) -> Option<Vec<RationalVector>> {
    match dirs.first().map(RationalVector::dim) {
        None => None,
        Some(1) => {
            let mut out = dirs.to_vec();
            out.dedup();
            (out.len() == 1).then_some(out)
        }
        Some(2) => planar_extremes(dirs),
        Some(_) => {
            strict_supporting_functional(&[], dirs).expect("dimensions agree")?;
            let frame = compute_frame(dirs).expect("canonical nonzero directions");
            let mut rays: Vec<RationalVector> = frame.into_iter().map(|i| dirs[i].clone()).collect();
            rays.sort();
            Some(rays)
        }
    }
}

fn is_filled(cloud: &[RationalVector], rays: &[RationalVector], r: &Rational, h: &Rational) -> bool {
    let mut targets: Vec<RationalVector> = rays.to_vec();
    for (i, a) in rays.iter().enumerate() {
        for b in &rays[i + 1..] {
            targets.push(a + b);
        }
    }
    let half = r / Rational::from_integer(2.into());
    targets.iter().all(|t| {
        let norm = max_abs(t);
        if norm.is_zero() {
            return true;
        }
        let target = t.scale(&(&half / norm));
        cloud.iter().any(|q| max_abs(&(q - &target)) <= *h)
    })
}

/// Probe the tile near `vertex` with the level-`k` approximation.
pub fn corner_probe(sys: &SelfAffineSystem, k: u32, vertex: &RationalVector) -> Result<CornerReport, SelfAffineError> {
    let n = sys.dim();
    if vertex.dim() != n {
        return Err(SelfAffineError::DimensionMismatch { expected: n, found: vertex.dim() });
    }
    let approx = approximate_tile(sys, k)?;
    let (lo, hi) = &approx.bounding_box;
    if (0..n).any(|i| vertex[i] < lo[i] || vertex[i] > hi[i]) {
        return Err(SelfAffineError::VertexOutsideBox(k));
    }
    let window = (0..n).map(|i| &hi[i] - &lo[i]).max().unwrap_or_else(Rational::zero);
    let shrink = integer_root(&BigInt::from(sys.m()).pow(k), 2 * n as u32).max(BigInt::from(1));
    let radius = &window / Rational::from_integer(shrink);
    let inv = sys.matrix().pow(k).inverse().expect("expanding matrices are invertible");
    let tolerance = max_norm(&inv) * &window;

    let cloud: Vec<RationalVector> = approx
        .points
        .iter()
        .map(|p| p - vertex)
        .filter(|q| max_abs(q) <= radius)
        .collect();
    let dirs = directions(&cloud);
    let extremes = extreme_rays(&dirs);
    let pointed = extremes.is_some();
    let rays = extremes.unwrap_or_default();
    let filled = pointed && is_filled(&cloud, &rays, &radius, &tolerance);
    let stable = filled && {
        let next = window_cloud(sys, k + 1, vertex, &radius)?;
        extreme_rays(&directions(&next)).as_ref() == Some(&rays)
    };
    let verdict = if pointed && filled && stable { CornerVerdict::ConsistentWithCone } else { CornerVerdict::Inconsistent };
    Ok(CornerReport {
        verdict,
        estimated_generators: rays,
        level: k,
        window,
        radius,
        tolerance,
        points_in_window: cloud.len(),
        pointed,
        filled,
        stable,
    })
}
