//! Planar slices `X_y = C ∩ (span(F) + y)` of a full-dimensional cone through
//! a 2-face `F = cone{a, b}`, written in plane coordinates `x = y + s·a + t·b`.
//!
//! Every facet inequality `<β, x> >= 0` becomes `<β,a> s + <β,b> t + <β,y> >= 0`.
//! Because `a, b ∈ C` both slopes are nonnegative and the recession cone of the
//! slice is the quadrant, so the boundary is a chain of vertices running from a
//! vertical ray (direction `b`) to a horizontal one (direction `a`).

pub mod metrics;

use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::cone::{Cone, ConeError, Face};
use crate::kernel::{int, Rational, RationalVector};

pub use metrics::{sampled_metrics, slice_metrics, SampledMetrics, SliceMetrics};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SliceError {
    #[error("generators {0} and {1} do not span a 2-face")]
    NotATwoFace(usize, usize),
    #[error("point is not in the interior of the cone")]
    PointNotInterior,
    #[error("face is not a facet of the cone")]
    NotAFacet,
    #[error("cone precondition failed: {0}")]
    ConePreconditionFailed(&'static str),
    #[error("ray stays inside the cone")]
    RayStaysInside,
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error(transparent)]
    Cone(#[from] ConeError),
}

impl SliceError {
    pub fn code(&self) -> &'static str {
        match self {
            SliceError::NotATwoFace(..) => "NotATwoFace",
            SliceError::PointNotInterior => "PointNotInterior",
            SliceError::NotAFacet => "NotAFacet",
            SliceError::ConePreconditionFailed(_) => "ConePreconditionFailed",
            SliceError::RayStaysInside => "RayStaysInside",
            SliceError::ConstructionFailed(_) => "ConstructionFailed",
            SliceError::Cone(e) => e.code(),
        }
    }
}

/// A point in plane coordinates `(s, t)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point2 {
    pub s: Rational,
    pub t: Rational,
}

impl Point2 {
    pub fn new(s: Rational, t: Rational) -> Self {
        Point2 { s, t }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Point2::new(&self.s * k, &self.t * k)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.s, self.t)
    }
}

/// The slice region: vertices ordered by increasing `s`, the `b`-ray leaving
/// the first vertex and the `a`-ray leaving the last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slice2D {
    pub plane_basis: (RationalVector, RationalVector),
    pub offset: RationalVector,
    pub vertices: Vec<Point2>,
    pub ray_dirs: (Point2, Point2),
}

impl Slice2D {
    /// `y + s·a + t·b`.
    pub fn lift(&self, p: &Point2) -> RationalVector {
        self.offset
            .add_scaled(&p.s, &self.plane_basis.0)
            .add_scaled(&p.t, &self.plane_basis.1)
    }

    /// Vertex where the ray along `a` starts.
    pub fn a1(&self) -> &Point2 {
        self.vertices.last().expect("a slice has at least one vertex")
    }

    /// Vertex where the ray along `b` starts.
    pub fn b1(&self) -> &Point2 {
        self.vertices.first().expect("a slice has at least one vertex")
    }
}

pub fn is_corner_cut(slice: &Slice2D) -> bool {
    slice.vertices.len() >= 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SegmentTag {
    Empty,
    Point,
    Segment,
    Ray,
}

impl SegmentTag {
    pub fn name(self) -> &'static str {
        match self {
            SegmentTag::Empty => "Empty",
            SegmentTag::Point => "Point",
            SegmentTag::Segment => "Segment",
            SegmentTag::Ray => "Ray",
        }
    }
}

/// Shape of `Q ∩ (span(F) + y)` for a facet `Q`, in plane coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegmentClass {
    Empty,
    Point(Point2),
    Segment(Point2, Point2),
    Ray { origin: Point2, direction: Point2 },
}

impl SegmentClass {
    pub fn tag(&self) -> SegmentTag {
        match self {
            SegmentClass::Empty => SegmentTag::Empty,
            SegmentClass::Point(_) => SegmentTag::Point,
            SegmentClass::Segment(..) => SegmentTag::Segment,
            SegmentClass::Ray { .. } => SegmentTag::Ray,
        }
    }
}

/// `alpha·s + gamma·t + c >= 0`.
#[derive(Clone, Debug)]
struct HalfPlane {
    alpha: Rational,
    gamma: Rational,
    c: Rational,
}

impl HalfPlane {
    fn eval(&self, p: &Point2) -> Rational {
        &self.alpha * &p.s + &self.gamma * &p.t + &self.c
    }

    fn is_degenerate(&self) -> bool {
        self.alpha.is_zero() && self.gamma.is_zero()
    }
}

fn halfplane(beta: &RationalVector, a: &RationalVector, b: &RationalVector, y: &RationalVector) -> HalfPlane {
    HalfPlane {
        alpha: beta.dot(a),
        gamma: beta.dot(b),
        c: beta.dot(y),
    }
}

fn intersect(p: &HalfPlane, q: &HalfPlane) -> Option<Point2> {
    let det = &p.alpha * &q.gamma - &p.gamma * &q.alpha;
    if det.is_zero() {
        return None;
    }
    // alpha s + gamma t = -c
    let s = (-&p.c * &q.gamma + &q.c * &p.gamma) / &det;
    let t = (-&p.alpha * &q.c + &q.alpha * &p.c) / &det;
    Some(Point2::new(s, t))
}

/// Vertices of `{p : h(p) >= 0 for all h}`, sorted by `s`.
fn enumerate_vertices(planes: &[HalfPlane]) -> Vec<Point2> {
    let lines: Vec<&HalfPlane> = planes.iter().filter(|h| !h.is_degenerate()).collect();
    let mut vertices = Vec::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            if let Some(p) = intersect(lines[i], lines[j]) {
                if planes.iter().all(|h| !h.eval(&p).is_negative()) {
                    vertices.push(p);
                }
            }
        }
    }
    vertices.sort();
    vertices.dedup();
    vertices
}

/// Checks that `(i, j)` index generators spanning a 2-face.
pub fn two_face(cone: &Cone, pair: (usize, usize)) -> Result<Face, SliceError> {
    let (i, j) = pair;
    let face = cone
        .face(&[i, j])?
        .ok_or(SliceError::NotATwoFace(i, j))?;
    if face.dim != 2 || face.generator_indices.len() != 2 {
        return Err(SliceError::NotATwoFace(i, j));
    }
    Ok(face)
}

fn check_interior(cone: &Cone, y: &RationalVector) -> Result<(), SliceError> {
    if !cone.is_interior(y)? {
        return Err(SliceError::PointNotInterior);
    }
    Ok(())
}

fn facet_planes(cone: &Cone, a: &RationalVector, b: &RationalVector, y: &RationalVector) -> Vec<HalfPlane> {
    cone.facets()
        .iter()
        .map(|f| halfplane(&f.supporting_functional, a, b, y))
        .collect()
}

/// The slice through `y` along the 2-face spanned by generators `pair`.
pub fn slice(cone: &Cone, pair: (usize, usize), y: &RationalVector) -> Result<Slice2D, SliceError> {
    two_face(cone, pair)?;
    check_interior(cone, y)?;
    let a = cone.generator(pair.0).clone();
    let b = cone.generator(pair.1).clone();
    let vertices = enumerate_vertices(&facet_planes(cone, &a, &b, y));
    debug_assert!(!vertices.is_empty(), "pointed recession cone forces a vertex");
    debug_assert!(vertices.windows(2).all(|w| w[0].t > w[1].t));
    Ok(Slice2D {
        plane_basis: (a, b),
        offset: y.clone(),
        vertices,
        ray_dirs: (Point2::new(int(0), int(1)), Point2::new(int(1), int(0))),
    })
}

/// Exact shape of the facet `Q` intersected with the slice plane.
pub fn classify_facet_plane(
    cone: &Cone,
    facet: &Face,
    pair: (usize, usize),
    y: &RationalVector,
) -> Result<SegmentClass, SliceError> {
    let q = cone.facet_index(facet).ok_or(SliceError::NotAFacet)?;
    two_face(cone, pair)?;
    check_interior(cone, y)?;
    let a = cone.generator(pair.0);
    let b = cone.generator(pair.1);
    let planes = facet_planes(cone, a, b, y);
    let line = &planes[q];
    if line.is_degenerate() {
        // <β,y> > 0 keeps the whole plane off the facet hyperplane
        return Ok(SegmentClass::Empty);
    }
    // parametrize the line as base + u·dir
    let dir = Point2::new(line.gamma.clone(), -line.alpha.clone());
    let base = if !line.alpha.is_zero() {
        Point2::new(-&line.c / &line.alpha, int(0))
    } else {
        Point2::new(int(0), -&line.c / &line.gamma)
    };
    let (mut lo, mut hi): (Option<Rational>, Option<Rational>) = (None, None);
    for (k, h) in planes.iter().enumerate() {
        if k == q {
            continue;
        }
        // h(base + u dir) = h(base) + u·slope >= 0
        let slope = &h.alpha * &dir.s + &h.gamma * &dir.t;
        let at_base = h.eval(&base);
        if slope.is_zero() {
            if at_base.is_negative() {
                return Ok(SegmentClass::Empty);
            }
            continue;
        }
        let bound = -at_base / &slope;
        if slope.is_positive() {
            if lo.as_ref().is_none_or(|l| bound > *l) {
                lo = Some(bound);
            }
        } else if hi.as_ref().is_none_or(|u| bound < *u) {
            hi = Some(bound);
        }
    }
    let at = |u: &Rational| Point2::new(&base.s + u * &dir.s, &base.t + u * &dir.t);
    Ok(match (lo, hi) {
        (Some(l), Some(h)) if l > h => SegmentClass::Empty,
        (Some(l), Some(h)) if l == h => SegmentClass::Point(at(&l)),
        (Some(l), Some(h)) => {
            let (p, q) = (at(&l), at(&h));
            if p <= q {
                SegmentClass::Segment(p, q)
            } else {
                SegmentClass::Segment(q, p)
            }
        }
        (Some(l), None) => SegmentClass::Ray { origin: at(&l), direction: dir },
        (None, Some(h)) => SegmentClass::Ray {
            origin: at(&h),
            direction: Point2::new(-dir.s.clone(), -dir.t.clone()),
        },
        (None, None) => unreachable!("the slice has a pointed recession cone"),
    })
}

/// Which constructive branch produced a feasible 2-face.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case {
    /// Some pair of frame members does not span a 2-face.
    NonFacePair,
    /// Every pair does; the witness sits just off a facet.
    AllPairsFaces,
}

impl Case {
    pub fn name(self) -> &'static str {
        match self {
            Case::NonFacePair => "Case1",
            Case::AllPairsFaces => "Case2",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Case 1 when a non-face pair exists, otherwise Case 2.
    #[default]
    Auto,
    Case1,
    Case2,
}

#[derive(Clone, Debug)]
pub struct FeasibleTwoFace {
    pub pair: (usize, usize),
    pub y: RationalVector,
    pub case: Case,
    pub slice: Slice2D,
}

const MAX_HALVINGS: u32 = 40;

fn check_preconditions(cone: &Cone) -> Result<(), SliceError> {
    if !cone.is_full_dimensional() {
        return Err(SliceError::ConePreconditionFailed("NotFullDimensional"));
    }
    if cone.is_regular() {
        return Err(SliceError::ConePreconditionFailed("Regular"));
    }
    if !cone.has_regular_boundary() {
        return Err(SliceError::ConePreconditionFailed("IrregularBoundary"));
    }
    Ok(())
}

/// Open interval of `μ > 0` with `b1 + μ·b2` interior, as `(lo, hi)`; `None` if empty.
fn interior_mu_interval(cone: &Cone, b1: &RationalVector, b2: &RationalVector) -> Option<(Rational, Option<Rational>)> {
    let mut lo = Rational::zero();
    let mut hi: Option<Rational> = None;
    for f in cone.facets() {
        let (p, q) = (f.supporting_functional.dot(b1), f.supporting_functional.dot(b2));
        // p + μ q > 0
        if q.is_zero() {
            if !p.is_positive() {
                return None;
            }
        } else if q.is_positive() {
            let bound = -&p / &q;
            if bound > lo {
                lo = bound;
            }
        } else {
            let bound = -&p / &q;
            if hi.as_ref().is_none_or(|h| bound < *h) {
                hi = Some(bound);
            }
        }
    }
    match &hi {
        Some(h) if *h <= lo => None,
        _ => Some((lo, hi)),
    }
}

fn pick_inside(lo: &Rational, hi: &Option<Rational>) -> Rational {
    match hi {
        Some(h) => (lo + h) / int(2),
        None => lo + Rational::one(),
    }
}

fn is_two_face(cone: &Cone, i: usize, j: usize) -> Result<bool, SliceError> {
    match two_face(cone, (i, j)) {
        Ok(_) => Ok(true),
        Err(SliceError::NotATwoFace(..)) => Ok(false),
        Err(e) => Err(e),
    }
}

fn verified(cone: &Cone, pair: (usize, usize), y: RationalVector, case: Case) -> Result<Option<FeasibleTwoFace>, SliceError> {
    if !cone.is_interior(&y)? {
        return Ok(None);
    }
    let s = slice(cone, pair, &y)?;
    Ok(is_corner_cut(&s).then_some(FeasibleTwoFace { pair, y, case, slice: s }))
}

fn case_one(cone: &Cone) -> Result<Option<FeasibleTwoFace>, SliceError> {
    let frame = cone.frame().to_vec();
    for &b1 in &frame {
        for &b2 in &frame {
            if b1 == b2 || is_two_face(cone, b1, b2)? {
                continue;
            }
            let (g1, g2) = (cone.generator(b1), cone.generator(b2));
            let Some((lo, hi)) = interior_mu_interval(cone, g1, g2) else {
                continue;
            };
            let x0 = g1.add_scaled(&pick_inside(&lo, &hi), g2);
            for &a1 in &frame {
                if a1 == b1 || !is_two_face(cone, b1, a1)? {
                    continue;
                }
                if let Some(w) = verified(cone, (b1, a1), x0.clone(), Case::NonFacePair)? {
                    return Ok(Some(w));
                }
            }
        }
    }
    Ok(None)
}

fn case_two(cone: &Cone) -> Result<Option<FeasibleTwoFace>, SliceError> {
    let frame = cone.frame().to_vec();
    for facet in cone.facets() {
        let x0 = facet
            .generator_indices
            .iter()
            .fold(RationalVector::zeros(cone.ambient_dim()), |acc, &i| &acc + cone.generator(i));
        let outside: Vec<usize> = frame.iter().copied().filter(|&i| !facet.contains_generator(i)).collect();
        for &b1 in &outside {
            for &b2 in &outside {
                if b1 == b2 || !is_two_face(cone, b1, b2)? {
                    continue;
                }
                let mut c = Rational::one();
                for _ in 0..=MAX_HALVINGS {
                    let y = x0.add_scaled(&c, cone.generator(b1));
                    if let Some(w) = verified(cone, (b1, b2), y, Case::AllPairsFaces)? {
                        return Ok(Some(w));
                    }
                    c /= int(2);
                }
            }
        }
    }
    Ok(None)
}

/// A 2-face and an interior point whose slice is corner-cut.
pub fn find_feasible_two_face(cone: &Cone, strategy: Strategy) -> Result<FeasibleTwoFace, SliceError> {
    check_preconditions(cone)?;
    let found = match strategy {
        Strategy::Case1 => case_one(cone)?,
        Strategy::Case2 => case_two(cone)?,
        Strategy::Auto => {
            let frame = cone.frame();
            let mut has_non_face = false;
            'outer: for (k, &i) in frame.iter().enumerate() {
                for &j in &frame[k + 1..] {
                    if !is_two_face(cone, i, j)? {
                        has_non_face = true;
                        break 'outer;
                    }
                }
            }
            if has_non_face {
                case_one(cone)?
            } else {
                case_two(cone)?
            }
        }
    };
    found.ok_or_else(|| SliceError::ConstructionFailed(format!("{strategy:?} found no corner-cut slice")))
}

/// Where the ray `x - λ·d` (λ >= 0) leaves the cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryProjection {
    pub point: RationalVector,
    pub lambda: Rational,
    /// Index into `cone.facets()` of a facet containing `point`.
    pub exit_facet: usize,
}

pub fn boundary_projection(cone: &Cone, x: &RationalVector, d: &RationalVector) -> Result<BoundaryProjection, SliceError> {
    check_interior(cone, x)?;
    d.check_dim(cone.ambient_dim()).map_err(ConeError::from)?;
    let mut best: Option<(Rational, usize)> = None;
    for (k, f) in cone.facets().iter().enumerate() {
        let slope = f.supporting_functional.dot(d);
        if slope.is_positive() {
            let lambda = f.supporting_functional.dot(x) / slope;
            if best.as_ref().is_none_or(|(l, _)| lambda < *l) {
                best = Some((lambda, k));
            }
        }
    }
    let (lambda, exit_facet) = best.ok_or(SliceError::RayStaysInside)?;
    Ok(BoundaryProjection {
        point: x.add_scaled(&-lambda.clone(), d),
        lambda,
        exit_facet,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::ratio;

    fn p(s: i64, t: i64) -> Point2 {
        Point2::new(int(s), int(t))
    }

    fn orthant3() -> Cone {
        Cone::from_int_generators(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap()
    }

    fn square_cone() -> Cone {
        Cone::from_int_generators(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, -1]]).unwrap()
    }

    fn xi_cone() -> Cone {
        let mut gens: Vec<Vec<i64>> = (0..6).map(|i| (0..6).map(|j| i64::from(i == j)).collect()).collect();
        gens.push(vec![1, 1, 1, -1, -1, -1]);
        Cone::from_int_generators(&gens).unwrap()
    }

    fn facet_with(cone: &Cone, gens: &[usize]) -> Face {
        cone.facets().iter().find(|f| f.generator_indices == gens).unwrap().clone()
    }

    #[test]
    fn orthant_slice_is_translated_quadrant() {
        let c = orthant3();
        let s = slice(&c, (0, 1), &RationalVector::from_ints(&[1, 1, 1])).unwrap();
        assert_eq!(s.vertices, vec![p(-1, -1)]);
        assert!(!is_corner_cut(&s));
        let e3 = RationalVector::from_ints(&[0, 0, 1]);
        assert!(matches!(slice(&c, (0, 1), &e3), Err(SliceError::PointNotInterior)));
    }

    #[test]
    fn slice_rejects_non_faces() {
        let c = square_cone();
        let y = RationalVector::from_ints(&[1, 1, 1]);
        assert_eq!(slice(&c, (0, 1), &y).unwrap_err(), SliceError::NotATwoFace(0, 1));
        assert!(slice(&c, (0, 2), &y).is_ok());
    }

    #[test]
    fn classification_on_orthant() {
        let c = orthant3();
        let y = RationalVector::from_ints(&[1, 1, 1]);
        let q12 = facet_with(&c, &[0, 1]);
        assert_eq!(classify_facet_plane(&c, &q12, (0, 1), &y).unwrap(), SegmentClass::Empty);
        let q13 = facet_with(&c, &[0, 2]);
        let got = classify_facet_plane(&c, &q13, (0, 1), &y).unwrap();
        assert_eq!(got, SegmentClass::Ray { origin: p(-1, -1), direction: p(1, 0) });
    }

    #[test]
    fn corner_cut_region_with_two_vertices() {
        let s = Slice2D {
            plane_basis: (RationalVector::unit(2, 0), RationalVector::unit(2, 1)),
            offset: RationalVector::zeros(2),
            vertices: vec![p(0, 1), p(1, 0)],
            ray_dirs: (p(0, 1), p(1, 0)),
        };
        assert!(is_corner_cut(&s));
    }

    #[test]
    fn square_cone_takes_case_one() {
        let c = square_cone();
        let w = find_feasible_two_face(&c, Strategy::Auto).unwrap();
        assert_eq!(w.case, Case::NonFacePair);
        assert!(w.slice.vertices.len() >= 2);
        for v in &w.slice.vertices {
            assert!(c.contains_point(&w.slice.lift(v)).unwrap());
        }
        let segments = c
            .facets()
            .iter()
            .filter(|q| classify_facet_plane(&c, q, w.pair, &w.y).unwrap().tag() == SegmentTag::Segment)
            .count();
        assert!(segments >= 1);
    }

    #[test]
    fn xi_cone_takes_case_two() {
        let c = xi_cone();
        let w = find_feasible_two_face(&c, Strategy::Auto).unwrap();
        assert_eq!(w.case, Case::AllPairsFaces);
        assert!(is_corner_cut(&w.slice));
        for v in &w.slice.vertices {
            assert!(c.contains_point(&w.slice.lift(v)).unwrap());
        }
    }

    #[test]
    fn preconditions_are_checked() {
        assert_eq!(
            find_feasible_two_face(&orthant3(), Strategy::Auto).unwrap_err(),
            SliceError::ConePreconditionFailed("Regular")
        );
        let cube = Cone::from_int_generators(&[
            vec![1, 0, 0, 1],
            vec![0, 1, 0, 1],
            vec![1, 1, 0, 1],
            vec![0, 0, 1, 1],
            vec![1, 0, 1, 1],
            vec![0, 1, 1, 1],
            vec![1, 1, 1, 1],
            vec![0, 0, 0, 1],
        ])
        .unwrap();
        assert_eq!(
            find_feasible_two_face(&cube, Strategy::Auto).unwrap_err(),
            SliceError::ConePreconditionFailed("IrregularBoundary")
        );
    }

    #[test]
    fn forced_case_two_on_square_cone() {
        let c = square_cone();
        let w = find_feasible_two_face(&c, Strategy::Case2).unwrap();
        assert_eq!(w.case, Case::AllPairsFaces);
        assert!(is_corner_cut(&w.slice));
    }

    #[test]
    fn boundary_projection_examples() {
        let q2 = Cone::from_int_generators(&[vec![1, 0], vec![0, 1]]).unwrap();
        let bp = boundary_projection(&q2, &RationalVector::from_ints(&[1, 1]), &RationalVector::from_ints(&[1, 0])).unwrap();
        assert_eq!(bp.point, RationalVector::from_ints(&[0, 1]));
        let bp = boundary_projection(&orthant3(), &RationalVector::from_ints(&[2, 3, 1]), &RationalVector::from_ints(&[0, 0, 1]))
            .unwrap();
        assert_eq!(bp.point, RationalVector::from_ints(&[2, 3, 0]));
        assert_eq!(bp.lambda, int(1));
        let err = boundary_projection(&q2, &RationalVector::from_ints(&[1, 1]), &RationalVector::from_ints(&[-1, -1]));
        assert_eq!(err.unwrap_err(), SliceError::RayStaysInside);
    }

    #[test]
    fn dilation_scales_vertices() {
        let c = square_cone();
        let w = find_feasible_two_face(&c, Strategy::Auto).unwrap();
        for delta in [ratio(1, 2), int(2), int(3)] {
            let s = slice(&c, w.pair, &w.y.scale(&delta)).unwrap();
            let scaled: Vec<Point2> = w.slice.vertices.iter().map(|v| v.scale(&delta)).collect();
            assert_eq!(s.vertices, scaled);
        }
    }
}
