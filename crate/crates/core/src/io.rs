//! JSON schemas for inputs and reports.
//!
//! Rationals are written as JSON integers when integral and as `"p/q"`
//! strings otherwise; both forms are accepted on input. Objects are emitted
//! with sorted keys, so identical values serialize to identical bytes.
//!
//! Inputs:
//!
//! * cone: `{ "dim": n, "generators": [[q, …], …] }`
//! * tile: `{ "dim": n, "cells": [[i, …]], "translations": [[i, …]], "box": [i, …] }`
//!   (`translations` and `box` optional)
//! * system: `{ "A": [[i, …]], "D": [[i, …]] }`
//! * cells: `[[i, …], …]` or `{ "cells": [[i, …], …] }`
//! * region: `{ "kind": "quadrant" }`, `{ "kind": "corner_cut", "vertices": [[q, q], …] }`
//!   or `{ "kind": "trapezoid", "short_base": q, "long_base": q, "height": q,
//!   "translations_on_base": bool }`
//! * rescale: `{ "dim": n, "boxes": [{ "lo": [q, …], "hi": [q, …] }], "translations": [[q, …]],
//!   "truncation": [q, …] }`

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::cone::{Cone, Face};
use crate::kernel::polygon::P2;
use crate::kernel::rational::{rational_from_json, rational_to_json};
use crate::kernel::{Rational, RationalVector};
use crate::selfaffine::cubes::Certificate;
use crate::selfaffine::{CellApproximation, CornerReport, CubeUnionVerdict, DigitExpansion};
use crate::slice::metrics::{SampledMetrics, SliceMetrics};
use crate::slice::{is_corner_cut, FeasibleTwoFace, Point2, SegmentClass, Slice2D};
use crate::tiling::rescale::{RationalBox, Rescaled};
use crate::tiling::search::{DiscreteRegion, SearchOutcome, SearchReport};
use crate::tiling::{Completion, CompletionStatus, CoverageReport, CubeTile, Point, TranslationSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{location}: {message}")]
pub struct IoError {
    /// `line:column` for syntax errors, a JSON pointer for schema errors.
    pub location: String,
    pub message: String,
}

impl IoError {
    pub fn code(&self) -> &'static str {
        "ParseError"
    }

    fn at(location: &str, message: impl Into<String>) -> Self {
        IoError { location: if location.is_empty() { "/".into() } else { location.into() }, message: message.into() }
    }
}

pub fn parse_json(text: &str) -> Result<Value, IoError> {
    serde_json::from_str(text).map_err(|e| IoError {
        location: format!("{}:{}", e.line(), e.column()),
        message: e.to_string(),
    })
}

// ---------------------------------------------------------------- readers

fn field<'a>(v: &'a Value, key: &str, loc: &str) -> Result<&'a Value, IoError> {
    let obj = v.as_object().ok_or_else(|| IoError::at(loc, "expected an object"))?;
    obj.get(key).ok_or_else(|| IoError::at(loc, format!("missing field {key:?}")))
}

fn array<'a>(v: &'a Value, loc: &str) -> Result<&'a [Value], IoError> {
    v.as_array().map(Vec::as_slice).ok_or_else(|| IoError::at(loc, "expected an array"))
}

fn integer(v: &Value, loc: &str) -> Result<i64, IoError> {
    v.as_i64().ok_or_else(|| IoError::at(loc, format!("expected an integer, found {v}")))
}

fn rational(v: &Value, loc: &str) -> Result<Rational, IoError> {
    rational_from_json(v).map_err(|e| IoError::at(loc, e.to_string()))
}

fn int_vec(v: &Value, loc: &str) -> Result<Vec<i64>, IoError> {
    array(v, loc)?.iter().enumerate().map(|(i, x)| integer(x, &format!("{loc}/{i}"))).collect()
}

fn rational_vec(v: &Value, loc: &str) -> Result<Vec<Rational>, IoError> {
    array(v, loc)?.iter().enumerate().map(|(i, x)| rational(x, &format!("{loc}/{i}"))).collect()
}

fn int_rows(v: &Value, loc: &str, dim: Option<usize>) -> Result<Vec<Vec<i64>>, IoError> {
    array(v, loc)?
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let l = format!("{loc}/{i}");
            let r = int_vec(row, &l)?;
            check_len(r.len(), dim, &l)?;
            Ok(r)
        })
        .collect()
}

fn rational_rows(v: &Value, loc: &str, dim: Option<usize>) -> Result<Vec<RationalVector>, IoError> {
    array(v, loc)?
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let l = format!("{loc}/{i}");
            let r = rational_vec(row, &l)?;
            check_len(r.len(), dim, &l)?;
            Ok(RationalVector::new(r))
        })
        .collect()
}

fn check_len(found: usize, dim: Option<usize>, loc: &str) -> Result<(), IoError> {
    match dim {
        Some(d) if d != found => Err(IoError::at(loc, format!("expected {d} coordinates, found {found}"))),
        _ => Ok(()),
    }
}

fn dim_field(v: &Value) -> Result<usize, IoError> {
    let d = integer(field(v, "dim", "")?, "/dim")?;
    usize::try_from(d).ok().filter(|&d| d > 0).ok_or_else(|| IoError::at("/dim", "dimension must be positive"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeInput {
    pub dim: usize,
    pub generators: Vec<RationalVector>,
}

pub fn parse_cone(v: &Value) -> Result<ConeInput, IoError> {
    let dim = dim_field(v)?;
    let generators = rational_rows(field(v, "generators", "")?, "/generators", Some(dim))?;
    Ok(ConeInput { dim, generators })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TileInput {
    pub dim: usize,
    pub cells: Vec<Point>,
    pub translations: Option<Vec<Point>>,
    pub bounds: Option<Vec<i64>>,
}

pub fn parse_tile(v: &Value) -> Result<TileInput, IoError> {
    let dim = dim_field(v)?;
    let cells = int_rows(field(v, "cells", "")?, "/cells", Some(dim))?;
    let obj = v.as_object().expect("checked by dim_field");
    let translations = obj.get("translations").map(|t| int_rows(t, "/translations", Some(dim))).transpose()?;
    let bounds = obj
        .get("box")
        .map(|b| {
            let b = int_vec(b, "/box")?;
            check_len(b.len(), Some(dim), "/box")?;
            Ok(b)
        })
        .transpose()?;
    Ok(TileInput { dim, cells, translations, bounds })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemInput {
    pub a: Vec<Vec<i64>>,
    pub digits: Vec<Vec<i64>>,
}

pub fn parse_system(v: &Value) -> Result<SystemInput, IoError> {
    let a = int_rows(field(v, "A", "")?, "/A", None)?;
    let n = a.len();
    if n == 0 {
        return Err(IoError::at("/A", "matrix has no rows"));
    }
    for (i, row) in a.iter().enumerate() {
        check_len(row.len(), Some(n), &format!("/A/{i}"))?;
    }
    let digits = int_rows(field(v, "D", "")?, "/D", Some(n))?;
    Ok(SystemInput { a, digits })
}

pub fn parse_cells(v: &Value, dim: usize) -> Result<Vec<Point>, IoError> {
    match v {
        Value::Object(_) => int_rows(field(v, "cells", "")?, "/cells", Some(dim)),
        _ => int_rows(v, "", Some(dim)),
    }
}

pub fn parse_region(v: &Value) -> Result<DiscreteRegion, IoError> {
    let kind = field(v, "kind", "")?.as_str().ok_or_else(|| IoError::at("/kind", "expected a string"))?;
    match kind {
        "quadrant" => Ok(DiscreteRegion::Quadrant),
        "corner_cut" => {
            let vertices = rational_rows(field(v, "vertices", "")?, "/vertices", Some(2))?
                .into_iter()
                .map(|p| (p[0].clone(), p[1].clone()))
                .collect();
            Ok(DiscreteRegion::CornerCut { vertices })
        }
        "trapezoid" => Ok(DiscreteRegion::Trapezoid {
            short_base: rational(field(v, "short_base", "")?, "/short_base")?,
            long_base: rational(field(v, "long_base", "")?, "/long_base")?,
            height: rational(field(v, "height", "")?, "/height")?,
            translations_on_base: match v.get("translations_on_base") {
                None => false,
                Some(b) => b.as_bool().ok_or_else(|| IoError::at("/translations_on_base", "expected a boolean"))?,
            },
        }),
        other => Err(IoError::at("/kind", format!("unknown region kind {other:?}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RescaleInput {
    pub boxes: Vec<RationalBox>,
    pub translations: Vec<RationalVector>,
    pub truncation: Vec<Rational>,
}

pub fn parse_rescale(v: &Value) -> Result<RescaleInput, IoError> {
    let dim = dim_field(v)?;
    let boxes = array(field(v, "boxes", "")?, "/boxes")?
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let loc = format!("/boxes/{i}");
            let lo = rational_vec(field(b, "lo", &loc)?, &format!("{loc}/lo"))?;
            let hi = rational_vec(field(b, "hi", &loc)?, &format!("{loc}/hi"))?;
            check_len(lo.len(), Some(dim), &format!("{loc}/lo"))?;
            check_len(hi.len(), Some(dim), &format!("{loc}/hi"))?;
            Ok(RationalBox::new(lo, hi))
        })
        .collect::<Result<_, IoError>>()?;
    let translations = rational_rows(field(v, "translations", "")?, "/translations", Some(dim))?;
    let truncation = rational_vec(field(v, "truncation", "")?, "/truncation")?;
    check_len(truncation.len(), Some(dim), "/truncation")?;
    Ok(RescaleInput { boxes, translations, truncation })
}

// ---------------------------------------------------------------- writers

pub fn q(x: &Rational) -> Value {
    rational_to_json(x)
}

pub fn vector(v: &RationalVector) -> Value {
    Value::Array(v.iter().map(q).collect())
}

pub fn vectors(vs: &[RationalVector]) -> Value {
    Value::Array(vs.iter().map(vector).collect())
}

pub fn points(ps: &[Point]) -> Value {
    json!(ps)
}

fn point2(p: &Point2) -> Value {
    json!([q(&p.s), q(&p.t)])
}

fn p2(p: &P2) -> Value {
    json!([q(&p.0), q(&p.1)])
}

pub fn cone_json(cone: &Cone) -> Value {
    json!({ "dim": cone.ambient_dim(), "generators": vectors(cone.generators()) })
}

pub fn face_json(face: &Face) -> Value {
    json!({
        "generators": face.generator_indices,
        "dim": face.dim,
        "functional": vector(&face.supporting_functional),
    })
}

pub fn tile_json(tile: &CubeTile, translations: Option<&TranslationSet>, bounds: Option<&[i64]>) -> Value {
    let mut m = Map::new();
    m.insert("dim".into(), json!(tile.dim()));
    m.insert("cells".into(), points(tile.cells()));
    if let Some(t) = translations {
        m.insert("translations".into(), points(t.points()));
    }
    if let Some(b) = bounds {
        m.insert("box".into(), json!(b));
    }
    Value::Object(m)
}

pub fn system_json(a: &[Vec<i64>], digits: &[Point]) -> Value {
    json!({ "A": a, "D": digits })
}

pub fn region_json(region: &DiscreteRegion) -> Value {
    match region {
        DiscreteRegion::Quadrant => json!({ "kind": "quadrant" }),
        DiscreteRegion::CornerCut { vertices } => {
            json!({ "kind": "corner_cut", "vertices": vertices.iter().map(p2).collect::<Vec<_>>() })
        }
        DiscreteRegion::Trapezoid { short_base, long_base, height, translations_on_base } => json!({
            "kind": "trapezoid",
            "short_base": q(short_base),
            "long_base": q(long_base),
            "height": q(height),
            "translations_on_base": translations_on_base,
        }),
    }
}

/// `{ "vertices", "rays", "corner_cut", "plane_basis", "offset" }`; callers add `metrics`.
pub fn slice_json(slice: &Slice2D) -> Value {
    json!({
        "vertices": slice.vertices.iter().map(point2).collect::<Vec<_>>(),
        "rays": [
            { "from": point2(slice.b1()), "direction": point2(&slice.ray_dirs.0) },
            { "from": point2(slice.a1()), "direction": point2(&slice.ray_dirs.1) },
        ],
        "corner_cut": is_corner_cut(slice),
        "plane_basis": [vector(&slice.plane_basis.0), vector(&slice.plane_basis.1)],
        "offset": vector(&slice.offset),
    })
}

pub fn metrics_json(m: &SliceMetrics) -> Value {
    json!({
        "y_norm_sq": q(&m.y_norm_sq),
        "hausdorff_to_face_sq": q(&m.hausdorff_to_face_sq),
        "hausdorff_sq_upper": q(&m.hausdorff_sq_upper),
        "projection_bound_sq": q(&m.projection_bound_sq),
        "orthogonal_hausdorff_sq": q(&m.orthogonal_hausdorff_sq),
        "projections_on_rays": m.projections_on_rays,
        "a1": vector(&m.a1),
        "b1": vector(&m.b1),
        "a1_norm_sq": q(&m.a1_norm_sq),
        "b1_norm_sq": q(&m.b1_norm_sq),
    })
}

pub fn sampled_metrics_json(m: &SampledMetrics) -> Value {
    json!({
        "samples_requested": m.samples_requested,
        "samples_used": m.samples_used,
        "max_hausdorff_sq_upper": q(&m.max_hausdorff_sq_upper),
        "max_hausdorff_to_face_sq": q(&m.max_hausdorff_to_face_sq),
        "max_a1_norm_sq": q(&m.max_a1_norm_sq),
        "max_b1_norm_sq": q(&m.max_b1_norm_sq),
    })
}

pub fn segment_json(c: &SegmentClass) -> Value {
    match c {
        SegmentClass::Empty => json!({ "tag": "Empty" }),
        SegmentClass::Point(p) => json!({ "tag": "Point", "point": point2(p) }),
        SegmentClass::Segment(a, b) => json!({ "tag": "Segment", "endpoints": [point2(a), point2(b)] }),
        SegmentClass::Ray { origin, direction } => {
            json!({ "tag": "Ray", "origin": point2(origin), "direction": point2(direction) })
        }
    }
}

pub fn feasible_json(f: &FeasibleTwoFace) -> Value {
    json!({
        "pair": [f.pair.0, f.pair.1],
        "y": vector(&f.y),
        "case": f.case.name(),
        "slice": slice_json(&f.slice),
    })
}

pub fn coverage_json(r: &CoverageReport) -> Value {
    json!({
        "box": r.bounds,
        "is_tiling": r.is_tiling(),
        "is_packing": r.is_packing,
        "covered_box": r.covered_box,
        "multiplicity_violations": r.multiplicity_violations.iter().map(|(p, c)| json!({ "point": p, "count": c })).collect::<Vec<_>>(),
        "uncovered": points(&r.uncovered),
    })
}

/// 1-D translation sets are flattened to plain integers under `J`.
pub fn completion_json(tile: &CubeTile, c: &Completion) -> Value {
    let j: Value = if tile.dim() == 1 {
        json!(c.translations.points().iter().map(|p| p[0]).collect::<Vec<_>>())
    } else {
        points(c.translations.points())
    };
    let mut m = Map::new();
    m.insert("J".into(), j);
    m.insert("tile".into(), tile_json(tile, Some(&c.translations), Some(c.translations.truncation_box())));
    match &c.status {
        CompletionStatus::Complete => {
            m.insert("status".into(), json!("Complete"));
        }
        CompletionStatus::Fail { witness, overlap } => {
            m.insert("status".into(), json!("Fail"));
            m.insert("witness".into(), json!(witness));
            m.insert("overlap".into(), json!(overlap));
        }
    }
    Value::Object(m)
}

pub fn rescaled_json(r: &Rescaled) -> Value {
    json!({
        "U": r.u.iter().map(q).collect::<Vec<_>>(),
        "tile": tile_json(&r.tile, Some(&r.translations), Some(r.translations.truncation_box())),
    })
}

pub fn search_json(region: &DiscreteRegion, r: &SearchReport) -> Value {
    let mut m = Map::new();
    m.insert("region".into(), region_json(region));
    m.insert("tiles_tried".into(), json!(r.tiles_tried));
    m.insert("nodes".into(), json!(r.nodes));
    m.insert("required_cells".into(), json!(r.required_cells));
    m.insert("partial_cells".into(), json!(r.partial_cells));
    match &r.outcome {
        SearchOutcome::Found { tile, translations } => {
            m.insert("result".into(), json!("found"));
            m.insert("tile".into(), json!(tile.iter().map(|c| [c.0, c.1]).collect::<Vec<_>>()));
            m.insert("translations".into(), json!(translations.iter().map(|c| [c.0, c.1]).collect::<Vec<_>>()));
        }
        SearchOutcome::NotFound => {
            m.insert("result".into(), json!("none"));
            m.insert("interpretation".into(), json!("no local tiling within the searched family: consistent with the region admitting none (finite discrete search, not a proof)"));
        }
    }
    Value::Object(m)
}

pub fn expansion_json(e: &DigitExpansion, include_points: bool) -> Value {
    let mut m = Map::new();
    m.insert("level".into(), json!(e.level));
    m.insert("multiset_size".into(), json!(e.multiset_size));
    m.insert("distinct_count".into(), json!(e.distinct_count));
    if include_points {
        m.insert("points".into(), points(&e.points));
    }
    Value::Object(m)
}

pub fn approximation_json(a: &CellApproximation, include_points: bool) -> Value {
    let mut m = Map::new();
    m.insert("level".into(), json!(a.level));
    m.insert("count".into(), json!(a.points.len()));
    m.insert("bounding_box".into(), json!({ "lo": vector(&a.bounding_box.0), "hi": vector(&a.bounding_box.1) }));
    if include_points {
        m.insert("points".into(), vectors(&a.points));
    }
    Value::Object(m)
}

fn certificate_json(c: &Certificate) -> Value {
    match c {
        Certificate::CellsMatch { cells } => json!({ "kind": "CellsMatch", "cells": cells }),
        Certificate::CellMismatch { cell, lhs, rhs } => {
            json!({ "kind": "CellMismatch", "cell": cell, "lhs_count": lhs, "rhs_count": rhs })
        }
        Certificate::Overlap { cell } => json!({ "kind": "Overlap", "cell": cell }),
        Certificate::AreaMatch { area } => json!({ "kind": "AreaMatch", "area": q(area) }),
        Certificate::AreaDeficit { cell, covered, expected } => {
            json!({ "kind": "AreaDeficit", "cell": cell, "covered": q(covered), "expected": q(expected) })
        }
        Certificate::Separating { point, side } => json!({ "kind": "Separating", "point": vector(point), "side": side }),
        Certificate::Resolution { samples_per_edge } => json!({ "kind": "Resolution", "samples_per_edge": samples_per_edge }),
    }
}

pub fn cube_verdict_json(v: &CubeUnionVerdict) -> Value {
    let mut m = Map::new();
    m.insert("verdict".into(), json!(v.tag.name()));
    m.insert("method".into(), json!(v.method));
    m.insert("certificate".into(), certificate_json(&v.certificate));
    if let Certificate::Resolution { samples_per_edge } = v.certificate {
        m.insert("resolution".into(), json!({ "samples_per_edge": samples_per_edge }));
    }
    Value::Object(m)
}

pub fn corner_json(r: &CornerReport) -> Value {
    json!({
        "verdict": r.verdict.name(),
        "estimated_generators": vectors(&r.estimated_generators),
        "level": r.level,
        "window": q(&r.window),
        "radius": q(&r.radius),
        "tolerance": q(&r.tolerance),
        "points_in_window": r.points_in_window,
        "checks": { "pointed": r.pointed, "filled": r.filled, "stable": r.stable },
    })
}

pub fn error_json(code: &str, message: &str) -> Value {
    json!({ "error": { "code": code, "message": message } })
}

/// Pretty JSON with a trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{int, ratio};

    #[test]
    fn cone_round_trip() {
        let v = parse_json(r#"{ "dim": 2, "generators": [[1, "1/2"], [0, 3]] }"#).unwrap();
        let c = parse_cone(&v).unwrap();
        assert_eq!(c.generators[0], RationalVector::new(vec![int(1), ratio(1, 2)]));
        let cone = Cone::new(c.generators.clone()).unwrap();
        let back = parse_cone(&cone_json(&cone)).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn errors_carry_locations() {
        let err = parse_json("{ \"dim\": 2,\n  oops }").unwrap_err();
        assert!(err.location.starts_with("2:"), "{err}");
        let v = parse_json(r#"{ "dim": 2, "generators": [[1, 2], [1, "x"]] }"#).unwrap();
        assert_eq!(parse_cone(&v).unwrap_err().location, "/generators/1/1");
        let v = parse_json(r#"{ "dim": 2, "generators": [[1, 2, 3]] }"#).unwrap();
        assert_eq!(parse_cone(&v).unwrap_err().location, "/generators/0");
        let v = parse_json(r#"{ "dim": 1, "cells": [[0]], "box": [1, 2] }"#).unwrap();
        assert_eq!(parse_tile(&v).unwrap_err().location, "/box");
    }

    #[test]
    fn tile_round_trip() {
        let v = parse_json(r#"{ "dim": 1, "cells": [[0], [2]], "translations": [[0], [1]], "box": [4] }"#).unwrap();
        let t = parse_tile(&v).unwrap();
        let tile = CubeTile::new(1, t.cells.clone()).unwrap();
        let j = TranslationSet::new(t.translations.clone().unwrap(), vec![4]).unwrap();
        assert_eq!(parse_tile(&tile_json(&tile, Some(&j), Some(&[4]))).unwrap(), t);
    }

    #[test]
    fn region_round_trip() {
        for text in [
            r#"{ "kind": "quadrant" }"#,
            r#"{ "kind": "corner_cut", "vertices": [[0, 2], [1, 1], [2, 0]] }"#,
            r#"{ "kind": "trapezoid", "short_base": 3, "long_base": 5, "height": "1/2", "translations_on_base": true }"#,
        ] {
            let r = parse_region(&parse_json(text).unwrap()).unwrap();
            assert_eq!(parse_region(&region_json(&r)).unwrap(), r);
        }
    }

    #[test]
    fn system_and_cells() {
        let v = parse_json(r#"{ "A": [[1, -1], [1, 1]], "D": [[0, 0], [1, 0]] }"#).unwrap();
        let s = parse_system(&v).unwrap();
        assert_eq!(parse_system(&system_json(&s.a, &s.digits)).unwrap(), s);
        assert_eq!(parse_cells(&json!([[0, 0], [0, 1]]), 2).unwrap().len(), 2);
        assert_eq!(parse_cells(&json!({ "cells": [[0]] }), 1).unwrap(), vec![vec![0]]);
        let bad = parse_json(r#"{ "A": [[1, 2]], "D": [] }"#).unwrap();
        assert_eq!(parse_system(&bad).unwrap_err().location, "/A/0");
    }

    #[test]
    fn rescale_input() {
        let v = parse_json(r#"{ "dim": 1, "boxes": [{ "lo": [0], "hi": ["1/2"] }], "translations": [[0], ["1/2"]], "truncation": [1] }"#).unwrap();
        let r = parse_rescale(&v).unwrap();
        assert_eq!(r.boxes[0].hi, vec![ratio(1, 2)]);
        assert_eq!(r.translations.len(), 2);
    }
}
