//! From a rational box-union tile with rational translations to the integer
//! instance: scale axis `j` by the reciprocal of the smallest positive
//! translation on that axis, then insist that everything lands on the grid.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};

use super::{CubeTile, Point, TilingError, TranslationSet};
use crate::kernel::{int, Rational, RationalVector};

/// `[lo_1, hi_1] × … × [lo_n, hi_n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalBox {
    pub lo: Vec<Rational>,
    pub hi: Vec<Rational>,
}

impl RationalBox {
    pub fn new(lo: Vec<Rational>, hi: Vec<Rational>) -> Self {
        RationalBox { lo, hi }
    }

    fn is_degenerate(&self) -> bool {
        self.lo.iter().zip(&self.hi).any(|(l, h)| h <= l)
    }

    fn contains_strictly(&self, p: &[Rational]) -> bool {
        p.iter().zip(self.lo.iter().zip(&self.hi)).all(|(x, (l, h))| l < x && x < h)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rescaled {
    /// Diagonal of `U`.
    pub u: Vec<Rational>,
    pub tile: CubeTile,
    pub translations: TranslationSet,
}

fn to_integer(q: &Rational) -> Option<i64> {
    if q.is_integer() {
        i64::try_from(q.to_integer()).ok()
    } else {
        None
    }
}

fn fmt_point(p: &[Rational]) -> String {
    let parts: Vec<String> = p.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Unit cubes making up the union of `boxes`, or a point of a unit cube that
/// the union only partly fills.
fn unit_cells(boxes: &[RationalBox], dim: usize) -> Result<Vec<Point>, String> {
    let boxes: Vec<&RationalBox> = boxes.iter().filter(|b| !b.is_degenerate()).collect();
    let mut axes: Vec<Vec<Rational>> = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut cuts: BTreeSet<Rational> = BTreeSet::new();
        for b in &boxes {
            cuts.insert(b.lo[j].clone());
            cuts.insert(b.hi[j].clone());
        }
        let (Some(min), Some(max)) = (cuts.first().cloned(), cuts.last().cloned()) else {
            return Ok(Vec::new());
        };
        let mut k = min.floor().to_integer();
        let top = max.ceil().to_integer();
        while k <= top {
            cuts.insert(Rational::from_integer(k.clone()));
            k += 1;
        }
        axes.push(cuts.into_iter().collect());
    }
    // midpoints of the elementary intervals on every axis
    let mids: Vec<Vec<Rational>> = axes
        .iter()
        .map(|cuts| cuts.windows(2).map(|w| (&w[0] + &w[1]) / int(2)).collect())
        .collect();
    let mut status: BTreeMap<Point, (bool, Vec<Rational>)> = BTreeMap::new();
    let mut index = vec![0usize; dim];
    if mids.iter().any(Vec::is_empty) {
        return Ok(Vec::new());
    }
    loop {
        let p: Vec<Rational> = index.iter().enumerate().map(|(j, &i)| mids[j][i].clone()).collect();
        let inside = boxes.iter().any(|b| b.contains_strictly(&p));
        let cube: Point = p
            .iter()
            .map(|x| i64::try_from(x.floor().to_integer()).unwrap_or(i64::MAX))
            .collect();
        match status.get(&cube) {
            Some((seen, witness)) if *seen != inside => {
                let (filled, empty) = if inside { (&p, witness) } else { (witness, &p) };
                return Err(format!(
                    "unit cube at {cube:?} is only partly covered: {} inside, {} outside",
                    fmt_point(filled),
                    fmt_point(empty)
                ));
            }
            Some(_) => {}
            None => {
                status.insert(cube, (inside, p));
            }
        }
        // odometer over elementary cells
        let mut j = 0;
        loop {
            if j == dim {
                return Ok(status.into_iter().filter(|(_, (inside, _))| *inside).map(|(c, _)| c).collect());
            }
            index[j] += 1;
            if index[j] < mids[j].len() {
                break;
            }
            index[j] = 0;
            j += 1;
        }
    }
}

/// `truncation` bounds the region in which `raw` is complete, in input units.
pub fn normalize_and_rescale(
    boxes: &[RationalBox],
    raw: &[RationalVector],
    truncation: &[Rational],
) -> Result<Rescaled, TilingError> {
    let dim = truncation.len();
    for b in boxes {
        for v in [&b.lo, &b.hi] {
            if v.len() != dim {
                return Err(TilingError::DimensionMismatch { expected: dim, found: v.len() });
            }
        }
    }
    for t in raw {
        if t.dim() != dim {
            return Err(TilingError::DimensionMismatch { expected: dim, found: t.dim() });
        }
    }
    if !raw.iter().any(RationalVector::is_zero) {
        return Err(TilingError::OriginMissingFromTranslations);
    }
    let mut u = Vec::with_capacity(dim);
    for j in 0..dim {
        let on_axis = raw
            .iter()
            .filter(|t| t[j].is_positive() && (0..dim).all(|i| i == j || t[i].is_zero()))
            .map(|t| t[j].clone())
            .min()
            .ok_or(TilingError::MissingAxisTranslation(j))?;
        u.push(Rational::one() / on_axis);
    }
    let scale = |v: &[Rational]| -> Vec<Rational> { v.iter().zip(&u).map(|(x, s)| x * s).collect() };

    let mut translations = Vec::with_capacity(raw.len());
    for t in raw {
        let scaled = scale(t.coords());
        match scaled.iter().map(to_integer).collect::<Option<Point>>() {
            Some(p) if p.iter().all(|&c| c >= 0) => translations.push(p),
            _ => {
                return Err(TilingError::NotGridAlignedAfterRescale(format!(
                    "translation {} maps to {}",
                    fmt_point(t.coords()),
                    fmt_point(&scaled)
                )))
            }
        }
    }
    let scaled_boxes: Vec<RationalBox> = boxes.iter().map(|b| RationalBox::new(scale(&b.lo), scale(&b.hi))).collect();
    let cells = unit_cells(&scaled_boxes, dim).map_err(TilingError::NotGridAlignedAfterRescale)?;
    let tile = CubeTile::new(dim, cells)?;
    if !tile.contains_origin() {
        return Err(TilingError::OriginMissingFromTile);
    }
    let bounds: Vec<i64> = scale(truncation)
        .iter()
        .map(|x| i64::try_from(x.ceil().to_integer()).unwrap_or(i64::MAX))
        .collect();
    Ok(Rescaled {
        u,
        tile,
        translations: TranslationSet::new(translations, bounds)?,
    })
}
