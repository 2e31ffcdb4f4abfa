//! Convex polyhedral cones given by generators: frame extraction, dimension,
//! regularity, faces and facets.
//!
//! Cones are pointed by construction. Every operation works in the ambient
//! space except facet enumeration, which changes basis into `span(C)` when the
//! cone is not full-dimensional and lifts the functionals back.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::kernel::{
    in_nonneg_hull, rank_of, strict_supporting_functional, KernelError, RationalMatrix,
    RationalVector,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConeError {
    #[error("a cone needs at least one generator")]
    NoGenerators,
    #[error("generator {0} is the zero vector")]
    ZeroGenerator(usize),
    #[error("generators do not lie in an open half-space (cone is not pointed)")]
    HalfSpaceViolation,
    #[error("generator index {index} out of range for {count} generators")]
    InvalidIndex { index: usize, count: usize },
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

impl ConeError {
    pub fn code(&self) -> &'static str {
        match self {
            ConeError::NoGenerators => "NoGenerators",
            ConeError::ZeroGenerator(_) => "ZeroGenerator",
            ConeError::HalfSpaceViolation => "HalfSpaceViolation",
            ConeError::InvalidIndex { .. } => "InvalidIndex",
            ConeError::Kernel(KernelError::DimensionMismatch { .. }) => "DimensionMismatch",
            ConeError::Kernel(_) => "KernelError",
        }
    }
}

/// A face of a cone, identified by the frame members it contains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// Indices into the cone's generator list; always frame members, sorted.
    pub generator_indices: Vec<usize>,
    /// `<g, β> = 0` on the face, `> 0` on frame members outside it.
    pub supporting_functional: RationalVector,
    pub dim: usize,
}

impl Face {
    pub fn contains_generator(&self, index: usize) -> bool {
        self.generator_indices.binary_search(&index).is_ok()
    }
}

#[derive(Clone, Debug)]
pub struct Cone {
    generators: Vec<RationalVector>,
    frame: Vec<usize>,
    dim: usize,
    facets: Vec<Face>,
}

fn validate(gens: &[RationalVector]) -> Result<usize, ConeError> {
    let first = gens.first().ok_or(ConeError::NoGenerators)?;
    let n = first.dim();
    for (i, g) in gens.iter().enumerate() {
        g.check_dim(n)?;
        if g.is_zero() {
            return Err(ConeError::ZeroGenerator(i));
        }
    }
    if strict_supporting_functional(&[], gens)?.is_none() {
        return Err(ConeError::HalfSpaceViolation);
    }
    Ok(n)
}

/// Indices of the frame: duplicate rays collapse onto their first occurrence,
/// then a generator is dropped iff it lies in the cone of the remaining kept
/// ones.
pub fn compute_frame(gens: &[RationalVector]) -> Result<Vec<usize>, ConeError> {
    validate(gens)?;
    Ok(frame_of_validated(gens))
}

fn frame_of_validated(gens: &[RationalVector]) -> Vec<usize> {
    let mut seen = BTreeSet::new();
    let mut kept: Vec<usize> = gens
        .iter()
        .enumerate()
        .filter(|(_, g)| seen.insert(g.canonical_ray()))
        .map(|(i, _)| i)
        .collect();
    let mut pos = 0;
    while pos < kept.len() {
        let i = kept[pos];
        let others: Vec<RationalVector> = kept
            .iter()
            .filter(|&&j| j != i)
            .map(|&j| gens[j].clone())
            .collect();
        let redundant = !others.is_empty()
            && in_nonneg_hull(&gens[i], &others).expect("dimensions validated");
        if redundant {
            kept.remove(pos);
        } else {
            pos += 1;
        }
    }
    kept
}

/// Coordinates on `span(C)`: `coords(x) = L x` for `x` in the span, and a
/// functional `β'` on coordinates lifts to `Lᵀ β'` on the ambient space.
struct SpanChart {
    left_inverse: RationalMatrix,
}

impl SpanChart {
    fn new(basis: &[RationalVector]) -> Self {
        // B has the basis vectors as columns; L = (BᵀB)⁻¹ Bᵀ
        let bt = RationalMatrix::from_rows(basis.to_vec()).expect("basis rows share a dimension");
        let gram = bt.mul(&bt.transpose());
        let left_inverse = gram.inverse().expect("basis is independent").mul(&bt);
        SpanChart { left_inverse }
    }

    fn coords(&self, x: &RationalVector) -> RationalVector {
        self.left_inverse.mul_vec(x)
    }

    fn lift(&self, beta: &RationalVector) -> RationalVector {
        self.left_inverse.transpose().mul_vec(beta)
    }
}

/// Facets of a full-dimensional cone in `R^d`, given by its frame vectors.
/// Returns (positions into `frame`, inward functional).
fn full_dim_facets(frame: &[RationalVector], d: usize) -> Vec<(Vec<usize>, RationalVector)> {
    let mut found: BTreeMap<Vec<usize>, RationalVector> = BTreeMap::new();
    for subset in combinations(frame.len(), d - 1) {
        let rows: Vec<RationalVector> = subset.iter().map(|&i| frame[i].clone()).collect();
        let m = if rows.is_empty() {
            RationalMatrix::empty(d)
        } else {
            RationalMatrix::from_rows(rows).expect("frame vectors share a dimension")
        };
        if m.rank() != d - 1 {
            continue;
        }
        let mut normal = m.nullspace().pop().expect("corank one");
        let values: Vec<_> = frame.iter().map(|f| f.dot(&normal)).collect();
        let has_pos = values.iter().any(Signed::is_positive);
        let has_neg = values.iter().any(Signed::is_negative);
        if has_pos && has_neg {
            continue;
        }
        if has_neg {
            normal = -normal;
        }
        let on: Vec<usize> = values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_zero())
            .map(|(i, _)| i)
            .collect();
        found.entry(on).or_insert_with(|| normal.canonical_ray());
    }
    found.into_iter().collect()
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

impl Cone {
    pub fn new(gens: Vec<RationalVector>) -> Result<Self, ConeError> {
        validate(&gens)?;
        let frame = frame_of_validated(&gens);
        let dim = rank_of(&gens);
        let mut cone = Cone {
            generators: gens,
            frame,
            dim,
            facets: Vec::new(),
        };
        cone.facets = cone.compute_facets();
        Ok(cone)
    }

    pub fn from_int_generators(gens: &[Vec<i64>]) -> Result<Self, ConeError> {
        Self::new(gens.iter().map(|g| RationalVector::from_ints(g)).collect())
    }

    pub fn ambient_dim(&self) -> usize {
        self.generators[0].dim()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient_dim()
    }

    pub fn generators(&self) -> &[RationalVector] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> &RationalVector {
        &self.generators[i]
    }

    pub fn frame(&self) -> &[usize] {
        &self.frame
    }

    pub fn frame_vectors(&self) -> Vec<RationalVector> {
        self.frame.iter().map(|&i| self.generators[i].clone()).collect()
    }

    pub fn is_regular(&self) -> bool {
        self.frame.len() == self.dim
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    fn compute_facets(&self) -> Vec<Face> {
        let frame_vecs = self.frame_vectors();
        let d = self.dim;
        let (coords, chart) = if self.is_full_dimensional() {
            (frame_vecs.clone(), None)
        } else {
            let basis_idx = RationalMatrix::from_rows(frame_vecs.clone())
                .expect("same dimension")
                .independent_rows();
            let basis: Vec<RationalVector> = basis_idx.iter().map(|&i| frame_vecs[i].clone()).collect();
            let chart = SpanChart::new(&basis);
            (frame_vecs.iter().map(|v| chart.coords(v)).collect(), Some(chart))
        };
        full_dim_facets(&coords, d)
            .into_iter()
            .map(|(positions, beta)| {
                let supporting_functional = match &chart {
                    Some(c) => c.lift(&beta).canonical_ray(),
                    None => beta,
                };
                let mut generator_indices: Vec<usize> =
                    positions.iter().map(|&p| self.frame[p]).collect();
                generator_indices.sort_unstable();
                let dim = rank_of(
                    &generator_indices
                        .iter()
                        .map(|&i| self.generators[i].clone())
                        .collect::<Vec<_>>(),
                );
                Face {
                    generator_indices,
                    supporting_functional,
                    dim,
                }
            })
            .collect()
    }

    fn check_indices(&self, subset: &[usize]) -> Result<(), ConeError> {
        let count = self.generators.len();
        match subset.iter().find(|&&i| i >= count) {
            Some(&index) => Err(ConeError::InvalidIndex { index, count }),
            None => Ok(()),
        }
    }

    /// Supporting functional exposing `cone(subset)` as a face, if it is one.
    pub fn face_functional(&self, subset: &[usize]) -> Result<Option<RationalVector>, ConeError> {
        self.check_indices(subset)?;
        let zero: Vec<RationalVector> = subset.iter().map(|&i| self.generators[i].clone()).collect();
        let zero_rays: BTreeSet<RationalVector> = zero.iter().map(|v| v.canonical_ray()).collect();
        let pos: Vec<RationalVector> = self
            .frame
            .iter()
            .map(|&i| &self.generators[i])
            .filter(|g| !zero_rays.contains(&g.canonical_ray()))
            .cloned()
            .collect();
        if pos.is_empty() {
            // the whole cone is a face of itself
            return Ok(Some(RationalVector::zeros(self.ambient_dim())));
        }
        Ok(strict_supporting_functional(&zero, &pos)?)
    }

    /// True iff the cone spanned by the given generators is a face.
    pub fn is_face(&self, subset: &[usize]) -> Result<bool, ConeError> {
        Ok(self.face_functional(subset)?.is_some())
    }

    /// The face spanned by `subset`, normalized to its frame members.
    pub fn face(&self, subset: &[usize]) -> Result<Option<Face>, ConeError> {
        let Some(beta) = self.face_functional(subset)? else {
            return Ok(None);
        };
        let mut generator_indices: Vec<usize> = self
            .frame
            .iter()
            .copied()
            .filter(|&i| self.generators[i].dot(&beta).is_zero())
            .collect();
        generator_indices.sort_unstable();
        let dim = rank_of(
            &generator_indices
                .iter()
                .map(|&i| self.generators[i].clone())
                .collect::<Vec<_>>(),
        );
        Ok(Some(Face {
            generator_indices,
            supporting_functional: beta,
            dim,
        }))
    }

    /// Every facet, viewed as a cone in its own span, is regular.
    pub fn has_regular_boundary(&self) -> bool {
        self.facets
            .iter()
            .all(|f| f.generator_indices.len() == f.dim)
    }

    pub fn contains_point(&self, x: &RationalVector) -> Result<bool, ConeError> {
        Ok(in_nonneg_hull(x, &self.generators)?)
    }

    /// Strict interior membership; only meaningful for full-dimensional cones.
    pub fn is_interior(&self, x: &RationalVector) -> Result<bool, ConeError> {
        x.check_dim(self.ambient_dim())?;
        Ok(self.is_full_dimensional()
            && self
                .facets
                .iter()
                .all(|f| f.supporting_functional.dot(x).is_positive()))
    }

    /// Sum of the frame vectors, which lies in the relative interior.
    pub fn relative_interior_point(&self) -> RationalVector {
        self.frame
            .iter()
            .fold(RationalVector::zeros(self.ambient_dim()), |acc, &i| {
                &acc + &self.generators[i]
            })
    }

    /// The cone spanned by the generators of a face, as a standalone cone.
    pub fn face_cone(&self, face: &Face) -> Result<Cone, ConeError> {
        Cone::new(
            face.generator_indices
                .iter()
                .map(|&i| self.generators[i].clone())
                .collect(),
        )
    }

    pub fn facet_index(&self, face: &Face) -> Option<usize> {
        self.facets
            .iter()
            .position(|f| f.generator_indices == face.generator_indices)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::int;

    fn e(n: usize, i: usize) -> Vec<i64> {
        (0..n).map(|j| i64::from(i == j)).collect()
    }

    pub(crate) fn xi_cone() -> Cone {
        let mut gens: Vec<Vec<i64>> = (0..6).map(|i| e(6, i)).collect();
        gens.push(vec![1, 1, 1, -1, -1, -1]);
        Cone::from_int_generators(&gens).unwrap()
    }

    fn quad_cone() -> Cone {
        Cone::from_int_generators(&[e(3, 0), e(3, 1), e(3, 2), vec![1, 1, -1]]).unwrap()
    }

    #[test]
    fn new_cone_examples() {
        let c = Cone::from_int_generators(&[e(3, 0), e(3, 1), e(3, 2)]).unwrap();
        assert_eq!(c.frame().len(), 3);
        assert_eq!(c.dim(), 3);
        let x = xi_cone();
        assert_eq!(x.frame().len(), 7);
        assert_eq!(x.dim(), 6);
        assert_eq!(
            Cone::from_int_generators(&[vec![1, 0], vec![-1, 0]]).unwrap_err(),
            ConeError::HalfSpaceViolation
        );
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Cone::new(vec![]).unwrap_err(), ConeError::NoGenerators);
        assert_eq!(
            Cone::from_int_generators(&[vec![1, 0], vec![0, 0]]).unwrap_err(),
            ConeError::ZeroGenerator(1)
        );
        assert_eq!(
            Cone::from_int_generators(&[vec![1, 0], vec![0, 1, 0]]).unwrap_err().code(),
            "DimensionMismatch"
        );
    }

    #[test]
    fn frame_examples() {
        let gens: Vec<RationalVector> = [vec![1, 0], vec![0, 1], vec![1, 1]]
            .iter()
            .map(|v| RationalVector::from_ints(v))
            .collect();
        assert_eq!(compute_frame(&gens).unwrap(), vec![0, 1]);
        assert_eq!(xi_cone().frame(), &[0, 1, 2, 3, 4, 5, 6]);
        assert_eq!(quad_cone().frame(), &[0, 1, 2, 3]);
    }

    #[test]
    fn duplicate_and_scaled_rays_collapse() {
        let gens: Vec<RationalVector> = [vec![2, 0], vec![0, 1], vec![1, 0], vec![0, 3]]
            .iter()
            .map(|v| RationalVector::from_ints(v))
            .collect();
        assert_eq!(compute_frame(&gens).unwrap(), vec![0, 1]);
    }

    #[test]
    fn regularity() {
        assert!(Cone::from_int_generators(&[e(4, 0), e(4, 1), e(4, 2), e(4, 3)]).unwrap().is_regular());
        assert!(!xi_cone().is_regular());
        assert!(!quad_cone().is_regular());
    }

    #[test]
    fn face_examples() {
        let c = Cone::from_int_generators(&[e(3, 0), e(3, 1), e(3, 2)]).unwrap();
        assert!(c.is_face(&[0, 1]).unwrap());
        let x = xi_cone();
        for pair in combinations(7, 2) {
            assert!(x.is_face(&pair).unwrap(), "pair {pair:?}");
        }
        assert!(!quad_cone().is_face(&[0, 1]).unwrap());
        assert!(matches!(
            quad_cone().is_face(&[9]),
            Err(ConeError::InvalidIndex { index: 9, count: 4 })
        ));
    }

    #[test]
    fn facet_examples() {
        let c = Cone::from_int_generators(&[e(3, 0), e(3, 1), e(3, 2)]).unwrap();
        let mut functionals: Vec<_> = c.facets().iter().map(|f| f.supporting_functional.clone()).collect();
        functionals.sort();
        let mut expected: Vec<_> = (0..3).map(|i| RationalVector::unit(3, i)).collect();
        expected.sort();
        assert_eq!(functionals, expected);

        let q = quad_cone();
        assert_eq!(q.facets().len(), 4);
        for f in q.facets() {
            assert_eq!(f.generator_indices.len(), 2);
        }
        // the worked 6-dimensional example: a (3,4) circuit gives 3 * 4 simplicial facets
        let x = xi_cone();
        assert_eq!(x.facets().len(), 12);
        assert!(x.facets().iter().all(|f| f.generator_indices.len() == 5 && f.dim == 5));
    }

    #[test]
    fn facet_functionals_support_the_cone() {
        for c in [quad_cone(), xi_cone()] {
            for f in c.facets() {
                for (i, g) in c.generators().iter().enumerate() {
                    let v = g.dot(&f.supporting_functional);
                    assert!(!v.is_negative());
                    assert_eq!(v.is_zero(), f.contains_generator(i));
                }
            }
        }
    }

    #[test]
    fn regular_boundary_examples() {
        assert!(Cone::from_int_generators(&[e(3, 0), e(3, 1), e(3, 2)]).unwrap().has_regular_boundary());
        assert!(quad_cone().has_regular_boundary());
        assert!(xi_cone().has_regular_boundary());
        let mut cube = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    cube.push(vec![x, y, z, 1]);
                }
            }
        }
        let c = Cone::from_int_generators(&cube).unwrap();
        assert_eq!(c.facets().len(), 6);
        assert!(!c.has_regular_boundary());
    }

    #[test]
    fn membership_examples() {
        let q = quad_cone();
        assert!(q.contains_point(&RationalVector::zeros(3)).unwrap());
        assert!(q.contains_point(&RationalVector::from_ints(&[1, 1, 0])).unwrap());
        let e6 = Cone::from_int_generators(&(0..6).map(|i| e(6, i)).collect::<Vec<_>>()).unwrap();
        assert!(!e6.contains_point(&RationalVector::from_ints(&[1, 1, 1, -1, -1, -1])).unwrap());
    }

    #[test]
    fn lower_dimensional_cone_facets_live_in_span() {
        // a planar sector inside R^3
        let c = Cone::from_int_generators(&[vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 2]]).unwrap();
        assert_eq!(c.dim(), 2);
        assert_eq!(c.frame(), &[0, 1]);
        assert_eq!(c.facets().len(), 2);
        for f in c.facets() {
            assert_eq!(f.dim, 1);
            let other = if f.generator_indices == vec![0] { 1 } else { 0 };
            assert!(c.generator(other).dot(&f.supporting_functional).is_positive());
            assert_eq!(c.generator(f.generator_indices[0]).dot(&f.supporting_functional), int(0));
        }
    }

    #[test]
    fn single_ray_has_apex_as_facet() {
        let c = Cone::from_int_generators(&[vec![1, 2]]).unwrap();
        assert_eq!(c.facets().len(), 1);
        assert!(c.facets()[0].generator_indices.is_empty());
        assert!(c.is_regular());
    }

    #[test]
    fn interior_point_of_full_cone() {
        let q = quad_cone();
        assert!(q.is_interior(&q.relative_interior_point()).unwrap());
        assert!(!q.is_interior(&RationalVector::from_ints(&[1, 0, 0])).unwrap());
    }
}
