//! Bounded search for local translation tilings of planar convex regions by
//! polyominoes.
//!
//! The region is an exact rational polygonal region `X`; tiles are unions of
//! unit cells `[i,i+1]×[j,j+1]` translated by integer vectors and must stay
//! inside `X`. Every cell meeting `X` in positive area within distance `R` of
//! the region's anchor vertex has to be covered exactly once. A result of
//! "none" is evidence about this discrete model only.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::TilingError;
use crate::kernel::polygon::{area, clip_all, unit_square, HalfPlane2, P2};
use crate::kernel::{int, Rational};

pub type Cell = (i64, i64);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiscreteRegion {
    /// `x >= 0, y >= 0`.
    Quadrant,
    /// Staircase: a vertical ray up from the first vertex, the segments
    /// between consecutive vertices, a horizontal ray right from the last.
    CornerCut { vertices: Vec<P2> },
    /// Vertices `(0,0), (b,0), (b+(B-b)/2, h), (-(B-b)/2, h)` with `b` the short base.
    Trapezoid {
        short_base: Rational,
        long_base: Rational,
        height: Rational,
        /// Translations restricted to the short base `[0,b] × {0}`.
        translations_on_base: bool,
    },
}

impl DiscreteRegion {
    pub fn validate(&self) -> Result<(), TilingError> {
        match self {
            DiscreteRegion::Quadrant => Ok(()),
            DiscreteRegion::CornerCut { vertices } => {
                if vertices.is_empty() {
                    return Err(TilingError::InvalidRegion("corner-cut region needs a vertex".into()));
                }
                for w in vertices.windows(2) {
                    if !(w[0].0 < w[1].0 && w[0].1 > w[1].1) {
                        return Err(TilingError::InvalidRegion("vertices must move right and down".into()));
                    }
                }
                for w in vertices.windows(3) {
                    let turn = (&w[1].0 - &w[0].0) * (&w[2].1 - &w[1].1) - (&w[1].1 - &w[0].1) * (&w[2].0 - &w[1].0);
                    // collinear chain points are allowed; they are just not extreme
                    if turn.is_negative() {
                        return Err(TilingError::InvalidRegion("vertex chain is not convex".into()));
                    }
                }
                Ok(())
            }
            DiscreteRegion::Trapezoid { short_base, long_base, height, .. } => {
                if short_base.is_positive() && long_base > short_base && height.is_positive() {
                    Ok(())
                } else {
                    Err(TilingError::InvalidRegion("need 0 < short_base < long_base and height > 0".into()))
                }
            }
        }
    }

    pub fn halfplanes(&self) -> Vec<HalfPlane2> {
        let (zero, one) = (Rational::zero(), int(1));
        match self {
            DiscreteRegion::Quadrant => vec![
                HalfPlane2::new(one.clone(), zero.clone(), zero.clone()),
                HalfPlane2::new(zero.clone(), one, zero),
            ],
            DiscreteRegion::CornerCut { vertices } => {
                let first = &vertices[0];
                let last = &vertices[vertices.len() - 1];
                let mut hs = vec![
                    HalfPlane2::new(one.clone(), zero.clone(), -first.0.clone()),
                    HalfPlane2::new(zero, one, -last.1.clone()),
                ];
                hs.extend(vertices.windows(2).map(|w| HalfPlane2::left_of(&w[0], &w[1])));
                hs
            }
            DiscreteRegion::Trapezoid { .. } => {
                let vs = self.polygon().expect("trapezoids are bounded");
                (0..vs.len()).map(|i| HalfPlane2::left_of(&vs[i], &vs[(i + 1) % vs.len()])).collect()
            }
        }
    }

    /// Vertices of a bounded region, counter-clockwise.
    pub fn polygon(&self) -> Option<Vec<P2>> {
        match self {
            DiscreteRegion::Trapezoid { short_base, long_base, height, .. } => {
                let overhang = (long_base - short_base) / int(2);
                Some(vec![
                    (int(0), int(0)),
                    (short_base.clone(), int(0)),
                    (short_base + &overhang, height.clone()),
                    (-overhang, height.clone()),
                ])
            }
            _ => None,
        }
    }

    /// The extreme vertex the search radius is measured from.
    pub fn anchor(&self) -> P2 {
        match self {
            DiscreteRegion::CornerCut { vertices } => vertices[0].clone(),
            _ => (int(0), int(0)),
        }
    }

    fn translation_allowed(&self, t: Cell) -> bool {
        match self {
            DiscreteRegion::Trapezoid { short_base, translations_on_base: true, .. } => {
                t.1 == 0 && t.0 >= 0 && int(t.0) <= *short_base
            }
            _ => true,
        }
    }

    fn restricts_translations(&self) -> bool {
        matches!(self, DiscreteRegion::Trapezoid { translations_on_base: true, .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum CellStatus {
    Inside,
    Partial,
    Outside,
}

struct Classifier<'a> {
    halfplanes: &'a [HalfPlane2],
    memo: HashMap<Cell, CellStatus>,
}

impl Classifier<'_> {
    fn status(&mut self, c: Cell) -> CellStatus {
        if let Some(&s) = self.memo.get(&c) {
            return s;
        }
        let square = unit_square(c.0, c.1);
        let s = if square.iter().all(|p| self.halfplanes.iter().all(|h| !h.eval(p).is_negative())) {
            CellStatus::Inside
        } else if area(&clip_all(&square, self.halfplanes)).is_positive() {
            CellStatus::Partial
        } else {
            CellStatus::Outside
        };
        self.memo.insert(c, s);
        s
    }
}

fn normalize(cells: &BTreeSet<Cell>) -> BTreeSet<Cell> {
    let mx = cells.iter().map(|c| c.0).min().unwrap_or(0);
    let my = cells.iter().map(|c| c.1).min().unwrap_or(0);
    cells.iter().map(|c| (c.0 - mx, c.1 - my)).collect()
}

/// All fixed polyominoes with at most `max_cells` cells, normalized to
/// minimal coordinates zero; ordered by size, then cell list.
pub fn polyominoes(max_cells: usize) -> Vec<Vec<Cell>> {
    let mut out = Vec::new();
    if max_cells == 0 {
        return out;
    }
    let mut level: BTreeSet<BTreeSet<Cell>> = BTreeSet::from([BTreeSet::from([(0, 0)])]);
    for size in 1..=max_cells {
        out.extend(level.iter().map(|s| s.iter().copied().collect::<Vec<_>>()));
        if size == max_cells {
            break;
        }
        let mut next = BTreeSet::new();
        for shape in &level {
            for &(x, y) in shape {
                for n in [(x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)] {
                    if !shape.contains(&n) {
                        let mut grown = shape.clone();
                        grown.insert(n);
                        next.insert(normalize(&grown));
                    }
                }
            }
        }
        level = next;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found { tile: Vec<Cell>, translations: Vec<Cell> },
    NotFound,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub outcome: SearchOutcome,
    pub tiles_tried: usize,
    pub nodes: u64,
    /// Cells that must be covered.
    pub required_cells: usize,
    /// Required cells only partly inside the region; no tile can cover them.
    pub partial_cells: usize,
}

struct Placement {
    t: Cell,
    cells: Vec<Cell>,
}

struct TileSearch<'a> {
    region: &'a DiscreteRegion,
    tile: &'a [Cell],
    classifier: Classifier<'a>,
    occupied: HashSet<Cell>,
    placed: Vec<Cell>,
    nodes: u64,
    budget: u64,
}

impl TileSearch<'_> {
    fn candidates(&mut self, c: Cell) -> Vec<Placement> {
        let mut out = Vec::new();
        for e in self.tile {
            let t = (c.0 - e.0, c.1 - e.1);
            if !self.region.translation_allowed(t) {
                continue;
            }
            let cells: Vec<Cell> = self.tile.iter().map(|f| (f.0 + t.0, f.1 + t.1)).collect();
            let fits = cells
                .iter()
                .all(|&d| !self.occupied.contains(&d) && self.classifier.status(d) == CellStatus::Inside);
            if fits {
                out.push(Placement { t, cells });
            }
        }
        out
    }

    fn solve(&mut self, required: &[Cell]) -> Result<bool, TilingError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(TilingError::SearchBudgetExceeded(self.budget));
        }
        // most constrained uncovered cell first
        let mut best: Option<Vec<Placement>> = None;
        for &c in required {
            if self.occupied.contains(&c) {
                continue;
            }
            let cands = self.candidates(c);
            let n = cands.len();
            if best.as_ref().is_none_or(|b| n < b.len()) {
                best = Some(cands);
                if n <= 1 {
                    break;
                }
            }
        }
        let Some(choices) = best else {
            return Ok(true);
        };
        for p in choices {
            self.occupied.extend(p.cells.iter().copied());
            self.placed.push(p.t);
            if self.solve(required)? {
                return Ok(true);
            }
            self.placed.pop();
            for d in &p.cells {
                self.occupied.remove(d);
            }
        }
        Ok(false)
    }
}

fn required_cells(region: &DiscreteRegion, radius: i64, classifier: &mut Classifier) -> (Vec<Cell>, usize) {
    let anchor = region.anchor();
    let r = int(radius);
    let (ax, ay) = (anchor.0.floor().to_integer(), anchor.1.floor().to_integer());
    let (ax, ay) = (i64::try_from(ax).unwrap_or(0), i64::try_from(ay).unwrap_or(0));
    let gap = |lo: i64, a: &Rational| -> Rational {
        let (lo, hi) = (int(lo), int(lo + 1));
        if *a < lo {
            lo - a
        } else if *a > hi {
            a - hi
        } else {
            Rational::zero()
        }
    };
    let mut cells = Vec::new();
    let mut partial = 0;
    for i in ax - radius - 1..=ax + radius + 1 {
        for j in ay - radius - 1..=ay + radius + 1 {
            let (dx, dy) = (gap(i, &anchor.0), gap(j, &anchor.1));
            if &dx * &dx + &dy * &dy >= &r * &r {
                continue;
            }
            match classifier.status((i, j)) {
                CellStatus::Outside => {}
                CellStatus::Partial => {
                    partial += 1;
                    cells.push((i, j));
                }
                CellStatus::Inside => cells.push((i, j)),
            }
        }
    }
    (cells, partial)
}

/// Every polyomino (up to `max_tile_cells` cells, or exactly the ones in
/// `tiles` if given) is tried in order; the first local tiling found wins.
pub fn local_tiling_search(
    region: &DiscreteRegion,
    max_tile_cells: usize,
    radius: i64,
    node_budget: u64,
    tiles: Option<Vec<Vec<Cell>>>,
) -> Result<SearchReport, TilingError> {
    region.validate()?;
    let halfplanes = region.halfplanes();
    let shapes = tiles.unwrap_or_else(|| polyominoes(max_tile_cells));
    for s in &shapes {
        let xs = s.iter().map(|c| c.0).max().unwrap_or(0) - s.iter().map(|c| c.0).min().unwrap_or(0) + 1;
        let ys = s.iter().map(|c| c.1).max().unwrap_or(0) - s.iter().map(|c| c.1).min().unwrap_or(0) + 1;
        let diam_sq = xs * xs + ys * ys;
        if radius * radius <= diam_sq {
            return Err(TilingError::RadiusTooSmall { radius, diam_sq });
        }
    }
    // with restricted translations the tile's reference cell matters: root each shape at each of its cells
    let variants: Vec<Vec<Cell>> = if region.restricts_translations() {
        shapes
            .iter()
            .flat_map(|s| s.iter().map(move |r| s.iter().map(|c| (c.0 - r.0, c.1 - r.1)).collect::<Vec<_>>()))
            .collect()
    } else {
        shapes.clone()
    };
    let (required, partial) = required_cells(region, radius, &mut Classifier { halfplanes: &halfplanes, memo: HashMap::new() });

    let results: Vec<Result<(Option<Vec<Cell>>, u64), TilingError>> = variants
        .par_iter()
        .map(|tile| {
            let mut search = TileSearch {
                region,
                tile,
                classifier: Classifier { halfplanes: &halfplanes, memo: HashMap::new() },
                occupied: HashSet::new(),
                placed: Vec::new(),
                nodes: 0,
                budget: node_budget,
            };
            let found = search.solve(&required)?;
            Ok((found.then(|| search.placed.clone()), search.nodes))
        })
        .collect();
    let mut nodes = 0;
    for (tile, result) in variants.iter().zip(results) {
        let (found, n) = result?;
        nodes += n;
        if let Some(mut translations) = found {
            translations.sort();
            return Ok(SearchReport {
                outcome: SearchOutcome::Found { tile: tile.clone(), translations },
                tiles_tried: variants.len(),
                nodes,
                required_cells: required.len(),
                partial_cells: partial,
            });
        }
    }
    Ok(SearchReport {
        outcome: SearchOutcome::NotFound,
        tiles_tried: variants.len(),
        nodes,
        required_cells: required.len(),
        partial_cells: partial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn staircase() -> DiscreteRegion {
        DiscreteRegion::CornerCut {
            vertices: vec![(int(0), int(2)), (int(1), int(1)), (int(2), int(0))],
        }
    }

    #[test]
    fn polyomino_counts() {
        let all = polyominoes(5);
        let count = |k: usize| all.iter().filter(|s| s.len() == k).count();
        assert_eq!([count(1), count(2), count(3), count(4), count(5)], [1, 2, 6, 19, 63]);
    }

    #[test]
    fn quadrant_has_trivial_tilings() {
        let r = local_tiling_search(&DiscreteRegion::Quadrant, 1, 3, 100_000, None).unwrap();
        assert!(matches!(r.outcome, SearchOutcome::Found { .. }));
        for domino in [vec![(0, 0), (1, 0)], vec![(0, 0), (0, 1)]] {
            let r = local_tiling_search(&DiscreteRegion::Quadrant, 2, 6, 100_000, Some(vec![domino])).unwrap();
            assert!(matches!(r.outcome, SearchOutcome::Found { .. }));
        }
    }

    #[test]
    fn staircase_has_no_local_tiling() {
        let r = local_tiling_search(&staircase(), 4, 12, 1_000_000, None).unwrap();
        assert_eq!(r.outcome, SearchOutcome::NotFound);
        assert_eq!(r.tiles_tried, 1 + 2 + 6 + 19);
        assert_eq!(r.partial_cells, 2);
    }

    #[test]
    fn trapezoid_with_base_translations() {
        let region = DiscreteRegion::Trapezoid {
            short_base: int(3),
            long_base: int(5),
            height: int(1),
            translations_on_base: true,
        };
        let r = local_tiling_search(&region, 4, 6, 1_000_000, None).unwrap();
        assert_eq!(r.outcome, SearchOutcome::NotFound);
    }

    #[test]
    fn radius_must_exceed_diameter() {
        let err = local_tiling_search(&DiscreteRegion::Quadrant, 3, 2, 1000, None).unwrap_err();
        assert_eq!(err.code(), "RadiusTooSmall");
    }

    #[test]
    fn invalid_staircase_rejected() {
        let bad = DiscreteRegion::CornerCut {
            vertices: vec![(int(0), int(2)), (int(1), int(0)), (int(2), int(-3))],
        };
        assert_eq!(bad.validate().unwrap_err().code(), "InvalidRegion");
    }
}
