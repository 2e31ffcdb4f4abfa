//! `conetile`: JSON in, JSON report out. Exit status 0 for any verdict
//! (including `False` and `none`), 2 for errors; errors are reported as
//! `{ "error": { "code", "message" } }` on stderr.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cone_tiling::io::{self, IoError};
use cone_tiling::kernel::{parse_rational, Rational, RationalVector};
use cone_tiling::selfaffine::{self, SelfAffineSystem};
use cone_tiling::slice::{self, Strategy};
use cone_tiling::tiling::{self, CubeTile, TranslationSet};
use cone_tiling::{svg, Cone};

#[derive(Parser)]
#[command(name = "conetile", version, about = "Exact tools for translation tilings of polyhedral cones")]
struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Write an SVG figure (2-D outputs only).
    #[arg(long, global = true)]
    svg: Option<PathBuf>,
    /// Let the library use all cores; the default is a single thread.
    #[arg(long, global = true)]
    parallel: bool,
    #[command(subcommand)]
    group: Group,
}

#[derive(Subcommand)]
enum Group {
    /// Cones: frames, faces, slices.
    #[command(subcommand)]
    Cone(ConeCmd),
    /// Cube tiles on the nonnegative lattice.
    #[command(subcommand)]
    Tile(TileCmd),
    /// Self-affine tiles.
    #[command(subcommand)]
    Sat(SatCmd),
}

#[derive(Subcommand)]
enum ConeCmd {
    /// Frame, dimension, regularity and facets.
    Analyze { input: PathBuf },
    /// The slice through the 2-face `--face i,j` at the interior point `--y`.
    Slice {
        input: PathBuf,
        /// Two generator indices (0-based).
        #[arg(long)]
        face: String,
        /// Interior point, comma-separated rationals; defaults to the sum of the frame.
        #[arg(long)]
        y: Option<String>,
        /// Also report metric maxima over this many samples of a ball around y.
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value = "1/2")]
        radius: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Find a 2-face and interior point whose slice is corner-cut.
    #[command(name = "feasible2face")]
    Feasible2Face {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
        strategy: StrategyArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Auto,
    Case1,
    Case2,
}

#[derive(Args)]
struct BoxArg {
    /// Box bounds `a,b,…`; a single value applies to every axis.
    #[arg(long = "box")]
    bounds: Option<String>,
}

#[derive(Subcommand)]
enum TileCmd {
    /// Check that E ⊕ J covers the box exactly once.
    Verify {
        input: PathBuf,
        #[command(flatten)]
        bounds: BoxArg,
    },
    /// Greedy completion of J inside the box.
    Complete {
        input: PathBuf,
        #[command(flatten)]
        bounds: BoxArg,
    },
    /// Restrict a tiling to the coordinate face spanned by `--axes`.
    Restrict {
        input: PathBuf,
        /// 0-based axes, comma-separated.
        #[arg(long)]
        axes: String,
    },
    /// Bring a rational box-union tiling onto the integer grid.
    Rescale { input: PathBuf },
    /// Bounded search for a local tiling of a planar region.
    Search {
        input: PathBuf,
        #[arg(long = "max-cells", default_value_t = 4)]
        max_cells: usize,
        #[arg(long = "R")]
        radius: i64,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
}

#[derive(Subcommand)]
enum SatCmd {
    /// The digit multiset D_k.
    Expand {
        input: PathBuf,
        #[arg(long)]
        k: u32,
        /// Include the points themselves.
        #[arg(long)]
        points: bool,
    },
    /// The level-k approximation A^{-k} D_k.
    Approx {
        input: PathBuf,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        points: bool,
    },
    /// Is the tile E + [0,1]^n?
    Cubecheck {
        input: PathBuf,
        /// Candidate cells E, as `[[…]]` or `{ "cells": [[…]] }`.
        #[arg(long = "E")]
        cells: PathBuf,
    },
    /// Does the tile look like a cone near `--vertex`?
    Corner {
        input: PathBuf,
        #[arg(long)]
        k: u32,
        /// Comma-separated rationals.
        #[arg(long)]
        vertex: String,
    },
}

struct Failure {
    code: &'static str,
    message: String,
}

macro_rules! failure_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure { code: e.code(), message: e.to_string() }
            }
        }
    )*};
}

failure_from!(
    IoError,
    cone_tiling::ConeError,
    slice::SliceError,
    tiling::TilingError,
    selfaffine::SelfAffineError
);

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: "ParseError", message: message.into() }
}

type Outcome = Result<(Value, Option<String>), Failure>;

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure { code: "IoError", message: format!("{}: {e}", path.display()) })?;
    io::parse_json(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn rationals(s: &str) -> Result<Vec<Rational>, Failure> {
    s.split(',').map(|x| parse_rational(x).map_err(|e| usage(e.to_string()))).collect()
}

fn indices(s: &str) -> Result<Vec<usize>, Failure> {
    s.split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| usage(format!("not an index: {x:?}"))))
        .collect()
}

fn bounds(arg: &BoxArg, from_input: Option<Vec<i64>>, dim: usize) -> Result<Vec<i64>, Failure> {
    let Some(s) = &arg.bounds else {
        return from_input.ok_or_else(|| usage("no box: pass --box or give \"box\" in the input"));
    };
    let vals: Vec<i64> = s
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| usage(format!("not an integer: {x:?}"))))
        .collect::<Result<_, _>>()?;
    match vals.len() {
        1 => Ok(vec![vals[0]; dim]),
        n if n == dim => Ok(vals),
        n => Err(usage(format!("--box has {n} entries for dimension {dim}"))),
    }
}

fn load_cone(path: &Path) -> Result<Cone, Failure> {
    let input = io::parse_cone(&read_json(path)?)?;
    Ok(Cone::new(input.generators)?)
}

fn load_system(path: &Path) -> Result<SelfAffineSystem, Failure> {
    let s = io::parse_system(&read_json(path)?)?;
    Ok(selfaffine::check_int_system(&s.a, &s.digits)?)
}

fn cone_cmd(cmd: &ConeCmd) -> Outcome {
    match cmd {
        ConeCmd::Analyze { input } => {
            let cone = load_cone(input)?;
            let facets: Vec<Value> = cone.facets().iter().map(io::face_json).collect();
            Ok((
                json!({
                    "cone": io::cone_json(&cone),
                    "dim": cone.dim(),
                    "ambient_dim": cone.ambient_dim(),
                    "frame": cone.frame(),
                    "frame_size": cone.frame().len(),
                    "frame_vectors": io::vectors(&cone.frame_vectors()),
                    "regular": cone.is_regular(),
                    "regular_boundary": cone.has_regular_boundary(),
                    "facets": facets,
                }),
                None,
            ))
        }
        ConeCmd::Slice { input, face, y, samples, radius, seed } => {
            let cone = load_cone(input)?;
            let pair = match indices(face)?.as_slice() {
                [i, j] => (*i, *j),
                _ => return Err(usage("--face takes exactly two indices")),
            };
            let y = match y {
                Some(s) => RationalVector::new(rationals(s)?),
                None => cone.relative_interior_point(),
            };
            if y.dim() != cone.ambient_dim() {
                return Err(usage(format!("--y has {} coordinates, the cone lives in dimension {}", y.dim(), cone.ambient_dim())));
            }
            let sl = slice::slice(&cone, pair, &y)?;
            let mut report = io::slice_json(&sl);
            report["y"] = io::vector(&y);
            report["metrics"] = io::metrics_json(&slice::slice_metrics(&cone, pair, &y)?);
            let mut classes = Vec::new();
            for (i, facet) in cone.facets().iter().enumerate() {
                let c = slice::classify_facet_plane(&cone, facet, pair, &y)?;
                classes.push(json!({ "facet": i, "generators": facet.generator_indices, "class": io::segment_json(&c) }));
            }
            report["facet_classes"] = Value::Array(classes);
            if *samples > 0 {
                let r = parse_rational(radius).map_err(|e| usage(e.to_string()))?;
                report["sampled_metrics"] = io::sampled_metrics_json(&slice::sampled_metrics(&cone, pair, &y, &r, *samples, *seed)?);
            }
            Ok((report, Some(svg::slice_svg(&sl))))
        }
        ConeCmd::Feasible2Face { input, strategy } => {
            let cone = load_cone(input)?;
            let strategy = match strategy {
                StrategyArg::Auto => Strategy::Auto,
                StrategyArg::Case1 => Strategy::Case1,
                StrategyArg::Case2 => Strategy::Case2,
            };
            let found = slice::find_feasible_two_face(&cone, strategy)?;
            let mut report = io::feasible_json(&found);
            report["metrics"] = io::metrics_json(&slice::slice_metrics(&cone, found.pair, &found.y)?);
            Ok((report, Some(svg::slice_svg(&found.slice))))
        }
    }
}

fn load_tile(path: &Path) -> Result<(CubeTile, io::TileInput), Failure> {
    let input = io::parse_tile(&read_json(path)?)?;
    Ok((CubeTile::new(input.dim, input.cells.clone())?, input))
}

fn planar_figure(tile: &CubeTile, j: &TranslationSet) -> Option<String> {
    (tile.dim() == 2).then(|| svg::tiling_svg(tile.cells(), j.points()))
}

fn tile_cmd(cmd: &TileCmd) -> Outcome {
    match cmd {
        TileCmd::Verify { input, bounds: b } => {
            let (tile, parsed) = load_tile(input)?;
            let bounds = bounds(b, parsed.bounds.clone(), tile.dim())?;
            let points = parsed.translations.ok_or_else(|| usage("tile verify needs \"translations\""))?;
            let truncation = parsed.bounds.unwrap_or_else(|| bounds.clone());
            let j = TranslationSet::new(points, truncation)?;
            let report = tiling::verify_direct_sum(&tile, &j, &bounds)?;
            Ok((json!({ "tile": io::tile_json(&tile, Some(&j), Some(&bounds)), "coverage": io::coverage_json(&report) }), planar_figure(&tile, &j)))
        }
        TileCmd::Complete { input, bounds: b } => {
            let (tile, parsed) = load_tile(input)?;
            let bounds = bounds(b, parsed.bounds, tile.dim())?;
            let c = tiling::complete_translations(&tile, &bounds)?;
            Ok((io::completion_json(&tile, &c), planar_figure(&tile, &c.translations)))
        }
        TileCmd::Restrict { input, axes } => {
            let (tile, parsed) = load_tile(input)?;
            let points = parsed.translations.ok_or_else(|| usage("tile restrict needs \"translations\""))?;
            let bounds = parsed.bounds.ok_or_else(|| usage("tile restrict needs \"box\""))?;
            let j = TranslationSet::new(points, bounds)?;
            let axes = indices(axes)?;
            let (t, jr) = tiling::restrict_to_face(&tile, &j, &axes)?;
            let coverage = tiling::verify_direct_sum(&t, &jr, jr.truncation_box())?;
            Ok((
                json!({
                    "axes": axes,
                    "tile": io::tile_json(&t, Some(&jr), Some(jr.truncation_box())),
                    "coverage": io::coverage_json(&coverage),
                }),
                planar_figure(&t, &jr),
            ))
        }
        TileCmd::Rescale { input } => {
            let r = io::parse_rescale(&read_json(input)?)?;
            let out = tiling::normalize_and_rescale(&r.boxes, &r.translations, &r.truncation)?;
            Ok((io::rescaled_json(&out), planar_figure(&out.tile, &out.translations)))
        }
        TileCmd::Search { input, max_cells, radius, budget } => {
            let region = io::parse_region(&read_json(input)?)?;
            let report = tiling::local_tiling_search(&region, *max_cells, *radius, *budget, None)?;
            let figure = match &report.outcome {
                tiling::SearchOutcome::Found { tile, translations } => {
                    let cells: Vec<Vec<i64>> = tile.iter().map(|c| vec![c.0, c.1]).collect();
                    let j: Vec<Vec<i64>> = translations.iter().map(|c| vec![c.0, c.1]).collect();
                    Some(svg::tiling_svg(&cells, &j))
                }
                tiling::SearchOutcome::NotFound => None,
            };
            Ok((io::search_json(&region, &report), figure))
        }
    }
}

fn sat_cmd(cmd: &SatCmd) -> Outcome {
    match cmd {
        SatCmd::Expand { input, k, points } => {
            let sys = load_system(input)?;
            let e = selfaffine::digit_expand(&sys, *k)?;
            let mut report = io::expansion_json(&e, *points);
            report["m"] = json!(sys.m());
            report["expected_size"] = json!(u128::from(sys.m()).pow(*k).to_string());
            Ok((report, None))
        }
        SatCmd::Approx { input, k, points } => {
            let sys = load_system(input)?;
            let a = selfaffine::approximate_tile(&sys, *k)?;
            let figure = (sys.dim() == 2).then(|| svg::scatter_svg(&a.points));
            Ok((io::approximation_json(&a, *points), figure))
        }
        SatCmd::Cubecheck { input, cells } => {
            let sys = load_system(input)?;
            let e = io::parse_cells(&read_json(cells)?, sys.dim())?;
            let v = selfaffine::is_cube_union(&sys, &e);
            let mut report = io::cube_verdict_json(&v);
            report["E"] = json!(e);
            Ok((report, None))
        }
        SatCmd::Corner { input, k, vertex } => {
            let sys = load_system(input)?;
            let v = RationalVector::new(rationals(vertex)?);
            let r = selfaffine::corner_probe(&sys, *k, &v)?;
            let mut report = io::corner_json(&r);
            report["vertex"] = io::vector(&v);
            Ok((report, None))
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let (report, figure) = match &cli.group {
        Group::Cone(c) => cone_cmd(c),
        Group::Tile(c) => tile_cmd(c),
        Group::Sat(c) => sat_cmd(c),
    }?;
    let text = io::to_text(&report);
    let write = |path: &Path, body: &str| {
        fs::write(path, body).map_err(|e| Failure { code: "IoError", message: format!("{}: {e}", path.display()) })
    };
    match &cli.output {
        Some(path) => write(path, &text)?,
        None => print!("{text}"),
    }
    if let (Some(path), Some(fig)) = (&cli.svg, figure) {
        write(path, &fig)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if !cli.parallel {
        // best effort: the pool can only be configured once per process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(1).build_global();
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprint!("{}", io::to_text(&io::error_json(f.code, &f.message)));
            ExitCode::from(2)
        }
    }
}
