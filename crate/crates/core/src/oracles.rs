//! Naive, separately coded decision procedures used only to cross-check the
//! exact paths. Nothing here shares decision logic with the simplex, the
//! greedy completion or the slice classifier.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::cone::{Cone, Face};
use crate::kernel::{int, rank_of, Rational, RationalVector};
use crate::slice::SegmentTag;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle cost guard exceeded: {0}")]
    CostGuardExceeded(String),
    #[error("dimension mismatch")]
    DimensionMismatch,
}

const MAX_DIM: usize = 5;
const MAX_GENS: usize = 9;
const MAX_ROWS: usize = 200_000;
const MAX_BOX_CELLS: u64 = 1_000_000;

/// `Σ coeffs[j] x_j + constant` compared against zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Row {
    coeffs: Vec<Rational>,
    constant: Rational,
}

impl Row {
    fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Positive rescaling to primitive integers so duplicates collapse.
    fn normalized(mut self) -> Row {
        let all: Vec<Rational> = self.coeffs.iter().chain(std::iter::once(&self.constant)).cloned().collect();
        let lcm = all.iter().fold(BigInt::one(), |acc, q| num_integer::Integer::lcm(&acc, q.denom()));
        let ints: Vec<BigInt> = all.iter().map(|q| (q * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| num_integer::Integer::gcd(&acc, x));
        if g.is_zero() {
            return self;
        }
        let scale = Rational::new(lcm, g);
        for c in self.coeffs.iter_mut() {
            *c = &*c * &scale;
        }
        self.constant = &self.constant * &scale;
        self
    }

    fn substitute(&self, var: usize, expr: &Row) -> Row {
        // expr gives x_var = Σ expr.coeffs x + expr.constant (with expr.coeffs[var] = 0)
        let c = &self.coeffs[var];
        if c.is_zero() {
            return self.clone();
        }
        let mut coeffs: Vec<Rational> = self.coeffs.iter().zip(&expr.coeffs).map(|(a, b)| a + c * b).collect();
        coeffs[var] = Rational::zero();
        Row {
            coeffs,
            constant: &self.constant + c * &expr.constant,
        }
    }
}

/// Equalities `row = 0` and inequalities `row >= 0`, eliminated one variable at a time.
struct FourierMotzkin {
    eqs: Vec<Row>,
    ineqs: BTreeSet<Row>,
}

impl FourierMotzkin {
    fn eliminate(&mut self, var: usize) -> Result<(), OracleError> {
        if let Some(pos) = self.eqs.iter().position(|r| !r.coeffs[var].is_zero()) {
            let eq = self.eqs.remove(pos);
            let c = eq.coeffs[var].clone();
            let mut coeffs: Vec<Rational> = eq.coeffs.iter().map(|a| -a / &c).collect();
            coeffs[var] = Rational::zero();
            let expr = Row {
                coeffs,
                constant: -&eq.constant / &c,
            };
            self.eqs = self.eqs.iter().map(|r| r.substitute(var, &expr)).collect();
            self.ineqs = self
                .ineqs
                .iter()
                .map(|r| r.substitute(var, &expr).normalized())
                .collect();
            return Ok(());
        }
        let (mut pos, mut neg, mut keep) = (Vec::new(), Vec::new(), BTreeSet::new());
        for r in std::mem::take(&mut self.ineqs) {
            if r.coeffs[var].is_positive() {
                pos.push(r);
            } else if r.coeffs[var].is_negative() {
                neg.push(r);
            } else {
                keep.insert(r);
            }
        }
        if keep.len() + pos.len() * neg.len() > MAX_ROWS {
            return Err(OracleError::CostGuardExceeded(format!(
                "{} inequalities after eliminating x{var}",
                keep.len() + pos.len() * neg.len()
            )));
        }
        for p in &pos {
            for q in &neg {
                let a = -&q.coeffs[var];
                let b = p.coeffs[var].clone();
                let coeffs: Vec<Rational> = p.coeffs.iter().zip(&q.coeffs).map(|(x, y)| &a * x + &b * y).collect();
                keep.insert(
                    Row {
                        coeffs,
                        constant: &a * &p.constant + &b * &q.constant,
                    }
                    .normalized(),
                );
            }
        }
        self.ineqs = keep;
        Ok(())
    }

    fn constants_consistent(&self) -> bool {
        self.eqs.iter().all(|r| !r.is_trivial() || r.constant.is_zero())
            && self.ineqs.iter().all(|r| !r.is_trivial() || !r.constant.is_negative())
    }
}

/// Cone membership decided by eliminating the multipliers with Fourier–Motzkin.
pub fn oracle_membership(v: &RationalVector, gens: &[RationalVector]) -> Result<bool, OracleError> {
    let n = v.dim();
    if n > MAX_DIM || gens.len() > MAX_GENS {
        return Err(OracleError::CostGuardExceeded(format!(
            "dim {n} (max {MAX_DIM}), {} generators (max {MAX_GENS})",
            gens.len()
        )));
    }
    if gens.iter().any(|g| g.dim() != n) {
        return Err(OracleError::DimensionMismatch);
    }
    let m = gens.len();
    // Σ_j g_ij λ_j - v_i = 0 for each coordinate, λ_j >= 0
    let eqs = (0..n)
        .map(|i| Row {
            coeffs: gens.iter().map(|g| g[i].clone()).collect(),
            constant: -v[i].clone(),
        })
        .collect();
    let ineqs = (0..m)
        .map(|j| Row {
            coeffs: (0..m).map(|k| if k == j { int(1) } else { Rational::zero() }).collect(),
            constant: Rational::zero(),
        })
        .collect();
    let mut fm = FourierMotzkin { eqs, ineqs };
    for j in 0..m {
        fm.eliminate(j)?;
        if !fm.constants_consistent() {
            return Ok(false);
        }
    }
    Ok(fm.constants_consistent())
}

/// Minimal ray set: distinct canonical rays not in the cone of the other distinct rays.
pub fn oracle_frame_rays(gens: &[RationalVector]) -> Result<BTreeSet<RationalVector>, OracleError> {
    let rays: Vec<RationalVector> = gens
        .iter()
        .map(|g| g.canonical_ray())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut frame = BTreeSet::new();
    for (i, r) in rays.iter().enumerate() {
        let others: Vec<RationalVector> = rays.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, o)| o.clone()).collect();
        if others.is_empty() || !oracle_membership(r, &others)? {
            frame.insert(r.clone());
        }
    }
    Ok(frame)
}

/// Facets of `cone(gens)` from an H-representation obtained by projecting out
/// the multipliers. Each facet is reported as the set of canonical generator
/// rays it contains.
pub fn oracle_facets(gens: &[RationalVector]) -> Result<BTreeSet<BTreeSet<RationalVector>>, OracleError> {
    let n = gens.first().map_or(0, RationalVector::dim);
    let m = gens.len();
    if n > 6 || m > MAX_GENS {
        return Err(OracleError::CostGuardExceeded(format!("dim {n}, {m} generators")));
    }
    // variables: x_0..x_{n-1}, λ_0..λ_{m-1}
    let width = n + m;
    let eqs = (0..n)
        .map(|i| {
            let mut coeffs = vec![Rational::zero(); width];
            coeffs[i] = int(1);
            for (j, g) in gens.iter().enumerate() {
                coeffs[n + j] = -g[i].clone();
            }
            Row { coeffs, constant: Rational::zero() }
        })
        .collect();
    let ineqs = (0..m)
        .map(|j| {
            let mut coeffs = vec![Rational::zero(); width];
            coeffs[n + j] = int(1);
            Row { coeffs, constant: Rational::zero() }
        })
        .collect();
    let mut fm = FourierMotzkin { eqs, ineqs };
    for j in 0..m {
        fm.eliminate(n + j)?;
    }
    let dim = rank_of(gens);
    let mut facets = BTreeSet::new();
    for r in &fm.ineqs {
        if r.is_trivial() {
            continue;
        }
        let a = RationalVector::new(r.coeffs[..n].to_vec());
        let tight: Vec<RationalVector> = gens.iter().filter(|g| g.dot(&a).is_zero()).cloned().collect();
        if tight.len() == m {
            continue;
        }
        if rank_of(&tight) + 1 == dim {
            facets.insert(tight.iter().map(|g| g.canonical_ray()).collect());
        }
    }
    Ok(facets)
}

fn box_volume(bounds: &[i64]) -> u64 {
    bounds.iter().map(|&b| b.max(0) as u64).product()
}

fn box_points(bounds: &[i64]) -> Vec<Vec<i64>> {
    let mut pts = vec![Vec::new()];
    for &b in bounds {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                (0..b).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    pts
}

/// Every point of the box `[0, bounds)` has exactly one decomposition `e + j`.
pub fn oracle_direct_sum(cells: &[Vec<i64>], translations: &[Vec<i64>], bounds: &[i64]) -> Result<bool, OracleError> {
    if box_volume(bounds) > MAX_BOX_CELLS {
        return Err(OracleError::CostGuardExceeded(format!("box volume {}", box_volume(bounds))));
    }
    for p in box_points(bounds) {
        let mut count = 0;
        for e in cells {
            for t in translations {
                if e.iter().zip(t).zip(&p).all(|((a, b), c)| a + b == *c) {
                    count += 1;
                }
            }
        }
        if count != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exhaustive backtracking over translation sets in `(Z+)^n`: finds a packing
/// of translates of `cells` that covers the box `[0, bounds)`, trying every
/// translate that can cover the first uncovered point.
pub fn oracle_box_tiling(cells: &[Vec<i64>], bounds: &[i64], node_budget: u64) -> Result<Option<Vec<Vec<i64>>>, OracleError> {
    if box_volume(bounds) > MAX_BOX_CELLS {
        return Err(OracleError::CostGuardExceeded(format!("box volume {}", box_volume(bounds))));
    }
    let order = box_points(bounds);
    let mut covered: HashSet<Vec<i64>> = HashSet::new();
    let mut placed = Vec::new();
    let mut nodes = 0u64;
    fn rec(
        cells: &[Vec<i64>],
        order: &[Vec<i64>],
        start: usize,
        covered: &mut HashSet<Vec<i64>>,
        placed: &mut Vec<Vec<i64>>,
        nodes: &mut u64,
        budget: u64,
    ) -> Result<bool, OracleError> {
        *nodes += 1;
        if *nodes > budget {
            return Err(OracleError::CostGuardExceeded(format!("{budget} search nodes")));
        }
        let Some(next) = (start..order.len()).find(|&i| !covered.contains(&order[i])) else {
            return Ok(true);
        };
        let p = &order[next];
        for e in cells {
            let t: Vec<i64> = p.iter().zip(e).map(|(a, b)| a - b).collect();
            if t.iter().any(|&c| c < 0) {
                continue;
            }
            let image: Vec<Vec<i64>> = cells.iter().map(|c| c.iter().zip(&t).map(|(a, b)| a + b).collect()).collect();
            if image.iter().any(|c| covered.contains(c)) {
                continue;
            }
            for c in &image {
                covered.insert(c.clone());
            }
            placed.push(t);
            if rec(cells, order, next + 1, covered, placed, nodes, budget)? {
                return Ok(true);
            }
            placed.pop();
            for c in &image {
                covered.remove(c);
            }
        }
        Ok(false)
    }
    let found = rec(cells, &order, 0, &mut covered, &mut placed, &mut nodes, node_budget)?;
    Ok(found.then_some(placed))
}

/// Multiplicity of each point of `A + B` (sum multiset), computed naively.
pub fn oracle_sum_multiset(a: &[Vec<i64>], b: &[Vec<i64>]) -> HashMap<Vec<i64>, usize> {
    let mut out = HashMap::new();
    for x in a {
        for y in b {
            let s: Vec<i64> = x.iter().zip(y).map(|(p, q)| p + q).collect();
            *out.entry(s).or_insert(0) += 1;
        }
    }
    out
}

/// Sampled estimate of the shape of `Q ∩ (span(F) + y)`.
///
/// Samples rational points along the line where the facet hyperplane meets the
/// translated plane, tests each for membership in the facet cone with
/// [`oracle_membership`], and reads off the shape from the hit pattern. A
/// second, zoomed pass resolves short segments.
pub fn oracle_slice_class(
    cone: &Cone,
    facet: &Face,
    face_pair: (usize, usize),
    y: &RationalVector,
    samples: usize,
) -> Result<SegmentTag, OracleError> {
    let samples = samples.max(1000);
    let a = cone.generator(face_pair.0);
    let b = cone.generator(face_pair.1);
    let beta = &facet.supporting_functional;
    let (alpha, gamma, c) = (beta.dot(a), beta.dot(b), beta.dot(y));
    if alpha.is_zero() && gamma.is_zero() {
        // plane parallel to the facet hyperplane; y interior so it misses
        return Ok(if c.is_zero() { SegmentTag::Ray } else { SegmentTag::Empty });
    }
    let facet_gens: Vec<RationalVector> = facet.generator_indices.iter().map(|&i| cone.generator(i).clone()).collect();
    // closest point of the line α s + γ t + c = 0 to the plane origin, and its direction
    let norm = &alpha * &alpha + &gamma * &gamma;
    let base = (-&c * &alpha / &norm, -&c * &gamma / &norm);
    // unit max-norm direction, so parameter steps are steps in the plane
    let len = alpha.abs().max(gamma.abs());
    let dir = (&gamma / &len, -&alpha / &len);
    let scale = Rational::one() + base.0.abs().max(base.1.abs());
    let point_at = |u: &Rational| -> RationalVector {
        let s = &base.0 + u * &dir.0;
        let t = &base.1 + u * &dir.1;
        y.add_scaled(&s, a).add_scaled(&t, b)
    };
    let inside = |u: &Rational| oracle_membership(&point_at(u), &facet_gens);

    // pass 1: w in (-1, 1) mapped to u = scale * w / (1 - |w|)
    let n = samples as i64;
    let params: Vec<Rational> = (0..n)
        .map(|k| {
            let w = Rational::new(BigInt::from(2 * k + 1 - n), BigInt::from(n));
            &scale * &w / (Rational::one() - w.abs())
        })
        .collect();
    let mut hits = Vec::new();
    for (k, u) in params.iter().enumerate() {
        if inside(u)? {
            hits.push(k);
        }
    }
    let (Some(&lo), Some(&hi)) = (hits.first(), hits.last()) else {
        return Ok(SegmentTag::Empty);
    };
    if lo == 0 || hi + 1 == params.len() {
        return Ok(SegmentTag::Ray);
    }
    if hits.len() >= 2 {
        return Ok(SegmentTag::Segment);
    }
    // pass 2: zoom between the neighbours of the single hit
    let (left, right) = (&params[lo - 1], &params[hi + 1]);
    let width = right - left;
    let mut zoom_hits = 0;
    for k in 1..n {
        let u = left + &width * Rational::new(BigInt::from(k), BigInt::from(n));
        if inside(&u)? {
            zoom_hits += 1;
        }
    }
    Ok(if zoom_hits >= 2 { SegmentTag::Segment } else { SegmentTag::Point })
}
