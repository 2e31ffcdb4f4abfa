//! Tiles made of unit cells on `(Z+)^n`, translation sets truncated to a box,
//! and the operations relating them: direct-sum checks, greedy completion,
//! rescaling of rational box unions, and restriction to coordinate faces.
//!
//! A cell `e` stands for the unit cube `e + [0,1]^n`, so measure-disjointness
//! of translates is exactly multiplicity <= 1 on cells.

pub mod rescale;
pub mod search;

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use thiserror::Error;

pub use rescale::{normalize_and_rescale, RationalBox, Rescaled};
pub use search::{local_tiling_search, polyominoes, DiscreteRegion, SearchOutcome, SearchReport};

pub type Point = Vec<i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TilingError {
    #[error("tile has no cells")]
    EmptyTile,
    #[error("point {0:?} has a negative coordinate")]
    NegativeCoordinate(Point),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the tile does not contain the origin")]
    OriginMissingFromTile,
    #[error("the translation set does not contain the origin")]
    OriginMissingFromTranslations,
    #[error("box {requested:?} exceeds the truncation box {truncation:?}")]
    BoxExceedsTruncation { requested: Vec<i64>, truncation: Vec<i64> },
    #[error("not grid aligned after rescaling: {0}")]
    NotGridAlignedAfterRescale(String),
    #[error("no positive translation on axis {0}")]
    MissingAxisTranslation(usize),
    #[error("search budget of {0} nodes exceeded")]
    SearchBudgetExceeded(u64),
    #[error("radius {radius} does not exceed the tile diameter (squared {diam_sq})")]
    RadiusTooSmall { radius: i64, diam_sq: i64 },
    #[error("invalid region: {0}")]
    InvalidRegion(String),
}

impl TilingError {
    pub fn code(&self) -> &'static str {
        match self {
            TilingError::EmptyTile => "EmptyTile",
            TilingError::NegativeCoordinate(_) => "NegativeCoordinate",
            TilingError::DimensionMismatch { .. } => "DimensionMismatch",
            TilingError::OriginMissingFromTile => "OriginMissingFromTile",
            TilingError::OriginMissingFromTranslations => "OriginMissingFromTranslations",
            TilingError::BoxExceedsTruncation { .. } => "BoxExceedsTruncation",
            TilingError::NotGridAlignedAfterRescale(_) => "NotGridAlignedAfterRescale",
            TilingError::MissingAxisTranslation(_) => "MissingAxisTranslation",
            TilingError::SearchBudgetExceeded(_) => "SearchBudgetExceeded",
            TilingError::RadiusTooSmall { .. } => "RadiusTooSmall",
            TilingError::InvalidRegion(_) => "InvalidRegion",
        }
    }
}

fn check_points(dim: usize, points: &[Point]) -> Result<(), TilingError> {
    for p in points {
        if p.len() != dim {
            return Err(TilingError::DimensionMismatch { expected: dim, found: p.len() });
        }
        if p.iter().any(|&c| c < 0) {
            return Err(TilingError::NegativeCoordinate(p.clone()));
        }
    }
    Ok(())
}

fn add(a: &[i64], b: &[i64]) -> Point {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// A finite set of unit cells with nonnegative integer corners.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeTile {
    dim: usize,
    cells: Vec<Point>,
}

impl CubeTile {
    pub fn new(dim: usize, mut cells: Vec<Point>) -> Result<Self, TilingError> {
        if cells.is_empty() {
            return Err(TilingError::EmptyTile);
        }
        check_points(dim, &cells)?;
        cells.sort();
        cells.dedup();
        Ok(CubeTile { dim, cells })
    }

    pub fn from_1d(cells: &[i64]) -> Result<Self, TilingError> {
        CubeTile::new(1, cells.iter().map(|&c| vec![c]).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cells(&self) -> &[Point] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains_origin(&self) -> bool {
        self.cells.binary_search(&vec![0; self.dim]).is_ok()
    }

    /// Squared Euclidean diameter of `E + [0,1]^n`.
    pub fn diameter_sq(&self) -> i64 {
        (0..self.dim)
            .map(|i| {
                let lo = self.cells.iter().map(|c| c[i]).min().unwrap_or(0);
                let hi = self.cells.iter().map(|c| c[i]).max().unwrap_or(0);
                (hi + 1 - lo).pow(2)
            })
            .sum()
    }
}

/// Translations known to be complete inside `[0, truncation_box)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationSet {
    points: Vec<Point>,
    truncation_box: Vec<i64>,
}

impl TranslationSet {
    pub fn new(mut points: Vec<Point>, truncation_box: Vec<i64>) -> Result<Self, TilingError> {
        check_points(truncation_box.len(), &points)?;
        points.sort();
        points.dedup();
        Ok(TranslationSet { points, truncation_box })
    }

    pub fn from_1d(points: &[i64], bound: i64) -> Result<Self, TilingError> {
        TranslationSet::new(points.iter().map(|&c| vec![c]).collect(), vec![bound])
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn truncation_box(&self) -> &[i64] {
        &self.truncation_box
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.points.binary_search_by(|q| q.as_slice().cmp(p)).is_ok()
    }
}

/// Multiplicities of `E + J` against a box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageReport {
    pub bounds: Vec<i64>,
    /// No point of `E + J` is hit twice.
    pub is_packing: bool,
    /// Every point of the box is hit exactly once.
    pub covered_box: bool,
    pub multiplicity_violations: Vec<(Point, usize)>,
    pub uncovered: Vec<Point>,
}

impl CoverageReport {
    pub fn is_tiling(&self) -> bool {
        self.is_packing && self.covered_box
    }
}

/// All lattice points of `[0, bounds)` in lexicographic order.
pub fn box_points(bounds: &[i64]) -> Vec<Point> {
    let mut out = vec![Vec::new()];
    for &b in bounds {
        let mut next = Vec::with_capacity(out.len() * b.max(0) as usize);
        for p in &out {
            for c in 0..b {
                let mut q = p.clone();
                q.push(c);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

fn multiplicities(cells: &[Point], translations: &[Point]) -> HashMap<Point, usize> {
    let mut counts = HashMap::with_capacity(cells.len() * translations.len());
    for t in translations {
        for e in cells {
            *counts.entry(add(e, t)).or_insert(0) += 1;
        }
    }
    counts
}

pub fn verify_direct_sum(tile: &CubeTile, translations: &TranslationSet, bounds: &[i64]) -> Result<CoverageReport, TilingError> {
    let dim = tile.dim();
    if bounds.len() != dim || translations.truncation_box.len() != dim {
        let found = if bounds.len() != dim { bounds.len() } else { translations.truncation_box.len() };
        return Err(TilingError::DimensionMismatch { expected: dim, found });
    }
    if bounds.iter().zip(&translations.truncation_box).any(|(b, t)| b > t) {
        return Err(TilingError::BoxExceedsTruncation {
            requested: bounds.to_vec(),
            truncation: translations.truncation_box.clone(),
        });
    }
    let counts = multiplicities(&tile.cells, &translations.points);
    let mut multiplicity_violations: Vec<(Point, usize)> =
        counts.iter().filter(|(_, &c)| c > 1).map(|(p, &c)| (p.clone(), c)).collect();
    multiplicity_violations.sort();
    let uncovered: Vec<Point> = box_points(bounds)
        .into_par_iter()
        .filter(|p| !counts.contains_key(p))
        .collect();
    let in_box = |p: &Point| p.iter().zip(bounds).all(|(c, b)| (0..*b).contains(c));
    Ok(CoverageReport {
        bounds: bounds.to_vec(),
        is_packing: multiplicity_violations.is_empty(),
        covered_box: uncovered.is_empty() && multiplicity_violations.iter().all(|(p, _)| !in_box(p)),
        multiplicity_violations,
        uncovered,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompletionStatus {
    Complete,
    /// Placing a translate at `witness` (the minimal uncovered point) would
    /// cover `overlap` twice.
    Fail { witness: Point, overlap: Point },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Completion {
    pub translations: TranslationSet,
    pub status: CompletionStatus,
}

/// Scan order: max-norm first, then colexicographic (last coordinate most
/// significant). Any point strictly below another coordinatewise comes first.
pub fn scan_key(p: &[i64]) -> (i64, Vec<i64>) {
    let max = p.iter().copied().max().unwrap_or(0);
    (max, p.iter().rev().copied().collect())
}

/// Greedy completion: the minimal uncovered point must itself be a
/// translation (anything else would double-cover a smaller point via `0 ∈ E`),
/// so each step is forced and the first overlap refutes every tiling.
pub fn complete_translations(tile: &CubeTile, bounds: &[i64]) -> Result<Completion, TilingError> {
    if bounds.len() != tile.dim() {
        return Err(TilingError::DimensionMismatch { expected: tile.dim(), found: bounds.len() });
    }
    if !tile.contains_origin() {
        return Err(TilingError::OriginMissingFromTile);
    }
    let mut order = box_points(bounds);
    order.sort_by_cached_key(|p| scan_key(p));
    let mut covered: HashSet<Point> = HashSet::new();
    let mut placed = Vec::new();
    for p in order {
        if covered.contains(&p) {
            continue;
        }
        let image: Vec<Point> = tile.cells.iter().map(|e| add(e, &p)).collect();
        if let Some(overlap) = image.iter().find(|c| covered.contains(*c)) {
            return Ok(Completion {
                status: CompletionStatus::Fail { witness: p.clone(), overlap: overlap.clone() },
                translations: TranslationSet::new(placed, bounds.to_vec())?,
            });
        }
        covered.extend(image);
        placed.push(p);
    }
    let translations = TranslationSet::new(placed, bounds.to_vec())?;
    debug_assert!(verify_direct_sum(tile, &translations, bounds).is_ok_and(|r| r.is_tiling()));
    Ok(Completion { translations, status: CompletionStatus::Complete })
}

/// Keeps the cells and translations lying in the coordinate face spanned by
/// `axes` (0-based), written in those coordinates.
pub fn restrict_to_face(tile: &CubeTile, translations: &TranslationSet, axes: &[usize]) -> Result<(CubeTile, TranslationSet), TilingError> {
    let dim = tile.dim();
    if let Some(&bad) = axes.iter().find(|&&a| a >= dim) {
        return Err(TilingError::DimensionMismatch { expected: dim, found: bad + 1 });
    }
    let project = |pts: &[Point]| -> Vec<Point> {
        pts.iter()
            .filter(|p| (0..dim).all(|i| axes.contains(&i) || p[i] == 0))
            .map(|p| axes.iter().map(|&i| p[i]).collect())
            .collect()
    };
    let bounds: Vec<i64> = axes.iter().map(|&i| translations.truncation_box[i]).collect();
    Ok((
        CubeTile::new(axes.len(), project(&tile.cells))?,
        TranslationSet::new(project(&translations.points), bounds)?,
    ))
}
