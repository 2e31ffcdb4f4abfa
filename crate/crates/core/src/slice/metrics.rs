//! Distances attached to a slice, all reported as exact squares.
//!
//! `d_H(X_y, F + y)` is attained at a vertex: `F + y ⊂ X_y`, the distance to
//! `F + y` is convex, and it does not grow along the two boundary rays. So the
//! exact value is a maximum over finitely many point-to-cone distances.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{boundary_projection, slice, SliceError};
use crate::cone::Cone;
use crate::kernel::{int, Rational, RationalVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceMetrics {
    pub y_norm_sq: Rational,
    /// Exact `d_H(X_y, F + y)²`.
    pub hausdorff_to_face_sq: Rational,
    /// `2(|y|² + d_H(X_y, F + y)²)`, an upper bound for `d_H(X_y, F)²`.
    pub hausdorff_sq_upper: Rational,
    /// `|y' − π_a(y')|² + |y' − π_b'(y')|²` after orthogonalizing the face.
    pub projection_bound_sq: Rational,
    /// `d_H(X_y, F + y)²` measured in the orthogonalized coordinates.
    pub orthogonal_hausdorff_sq: Rational,
    /// `π_a(y)` lies on the ray of `∂X_y` with direction `b` and `π_b(y)` on
    /// the one with direction `a`. Then every vertex sits in the rectangle the
    /// two projections span, so `projection_bound_sq` bounds
    /// `orthogonal_hausdorff_sq`; without it the bound can fail.
    pub projections_on_rays: bool,
    pub a1: RationalVector,
    pub b1: RationalVector,
    pub a1_norm_sq: Rational,
    pub b1_norm_sq: Rational,
}

/// Squared distance from `q` to `cone{a, b}`.
pub fn dist_sq_to_planar_cone(q: &RationalVector, a: &RationalVector, b: &RationalVector) -> Rational {
    let (qa, qb) = (q.dot(a), q.dot(b));
    let (aa, ab, bb) = (a.norm_sq(), a.dot(b), b.norm_sq());
    let qq = q.norm_sq();
    let mut best = qq.clone();
    if qa.is_positive() {
        best = best.min(&qq - &qa * &qa / &aa);
    }
    if qb.is_positive() {
        best = best.min(&qq - &qb * &qb / &bb);
    }
    let det = &aa * &bb - &ab * &ab;
    if !det.is_zero() {
        let lambda = (&qa * &bb - &qb * &ab) / &det;
        let mu = (&qb * &aa - &qa * &ab) / &det;
        if !lambda.is_negative() && !mu.is_negative() {
            let r = q.add_scaled(&-lambda, a).add_scaled(&-mu, b);
            best = best.min(r.norm_sq());
        }
    }
    best
}

fn hausdorff_to_face_sq(cone: &Cone, pair: (usize, usize), y: &RationalVector) -> Result<Rational, SliceError> {
    let s = slice(cone, pair, y)?;
    let (a, b) = &s.plane_basis;
    Ok(s.vertices
        .iter()
        .map(|v| dist_sq_to_planar_cone(&(&s.lift(v) - y), a, b))
        .max()
        .unwrap_or_else(Rational::zero))
}

/// Linear map fixing `a` and sending `b` to `b' = b − κa ⊥ a` (κ = <a,b>/<a,a>).
///
/// `φ(x) = x − κ<w,x>a` with `w = b'/<b',b>`; `det φ = 1`, and every entry stays rational.
struct Orthogonalizer {
    a: RationalVector,
    w: RationalVector,
    kappa: Rational,
}

impl Orthogonalizer {
    fn new(a: &RationalVector, b: &RationalVector) -> Self {
        let kappa = a.dot(b) / a.norm_sq();
        let b_perp = b.add_scaled(&-kappa.clone(), a);
        let w = b_perp.scale(&(int(1) / b_perp.dot(b)));
        Orthogonalizer { a: a.clone(), w, kappa }
    }

    fn apply(&self, x: &RationalVector) -> RationalVector {
        x.add_scaled(&-(&self.kappa * self.w.dot(x)), &self.a)
    }
}

pub fn slice_metrics(cone: &Cone, pair: (usize, usize), y: &RationalVector) -> Result<SliceMetrics, SliceError> {
    let s = slice(cone, pair, y)?;
    let a1 = s.lift(s.a1());
    let b1 = s.lift(s.b1());
    let hausdorff = hausdorff_to_face_sq(cone, pair, y)?;
    let y_norm_sq = y.norm_sq();

    let phi = Orthogonalizer::new(&s.plane_basis.0, &s.plane_basis.1);
    let image = Cone::new(cone.generators().iter().map(|g| phi.apply(g)).collect())?;
    let y_img = phi.apply(y);
    let pa = boundary_projection(&image, &y_img, image.generator(pair.0))?;
    let pb = boundary_projection(&image, &y_img, image.generator(pair.1))?;
    let projection_bound_sq = (&y_img - &pa.point).norm_sq() + (&y_img - &pb.point).norm_sq();
    let orthogonal_hausdorff_sq = hausdorff_to_face_sq(&image, pair, &y_img)?;
    // in plane coordinates around y: π_a(y) = (-λ_a, 0), π_b(y) = (0, -λ_b)
    let (first, last) = (s.b1(), s.a1());
    let projections_on_rays =
        -&pa.lambda == first.s && !first.t.is_positive() && -&pb.lambda == last.t && !last.s.is_positive();

    Ok(SliceMetrics {
        hausdorff_sq_upper: int(2) * (&y_norm_sq + &hausdorff),
        y_norm_sq,
        hausdorff_to_face_sq: hausdorff,
        projection_bound_sq,
        orthogonal_hausdorff_sq,
        projections_on_rays,
        a1_norm_sq: a1.norm_sq(),
        b1_norm_sq: b1.norm_sq(),
        a1,
        b1,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampledMetrics {
    pub samples_requested: usize,
    /// Samples that landed in the interior of the cone.
    pub samples_used: usize,
    pub max_hausdorff_sq_upper: Rational,
    pub max_hausdorff_to_face_sq: Rational,
    pub max_a1_norm_sq: Rational,
    pub max_b1_norm_sq: Rational,
}

const SAMPLE_DENOMINATOR: i64 = 1000;

/// Rational points of the Euclidean ball `|x − center| <= radius`, seeded.
pub fn sample_ball(center: &RationalVector, radius: &Rational, count: usize, seed: u64) -> Vec<RationalVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = center.dim();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let u: Vec<Rational> = (0..n)
            .map(|_| Rational::new(BigInt::from(rng.gen_range(-SAMPLE_DENOMINATOR..=SAMPLE_DENOMINATOR)), BigInt::from(SAMPLE_DENOMINATOR)))
            .collect();
        let u = RationalVector::new(u);
        if u.norm_sq() <= int(1) {
            out.push(center.add_scaled(radius, &u));
        }
    }
    out
}

/// Maxima of the per-point metrics over seeded samples from a ball; samples
/// outside the interior are skipped.
pub fn sampled_metrics(
    cone: &Cone,
    pair: (usize, usize),
    center: &RationalVector,
    radius: &Rational,
    count: usize,
    seed: u64,
) -> Result<SampledMetrics, SliceError> {
    let points = sample_ball(center, radius, count, seed);
    let per_point: Vec<SliceMetrics> = points
        .par_iter()
        .filter_map(|y| match slice_metrics(cone, pair, y) {
            Err(SliceError::PointNotInterior) => None,
            other => Some(other),
        })
        .collect::<Result<_, _>>()?;
    let max_of = |f: fn(&SliceMetrics) -> &Rational| per_point.iter().map(f).max().cloned().unwrap_or_else(Rational::zero);
    Ok(SampledMetrics {
        samples_requested: count,
        samples_used: per_point.len(),
        max_hausdorff_sq_upper: max_of(|m| &m.hausdorff_sq_upper),
        max_hausdorff_to_face_sq: max_of(|m| &m.hausdorff_to_face_sq),
        max_a1_norm_sq: max_of(|m| &m.a1_norm_sq),
        max_b1_norm_sq: max_of(|m| &m.b1_norm_sq),
    })
}
