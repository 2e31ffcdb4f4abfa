//! Small deterministic SVG figures: slices, planar tilings and point clouds.
//! Coordinates are converted to `f64` only here, for drawing.

use std::fmt::Write;

use num_traits::ToPrimitive;

use crate::kernel::{Rational, RationalVector};
use crate::slice::{Point2, Slice2D};
use crate::tiling::Point;

const SIZE: f64 = 400.0;
const MARGIN: f64 = 20.0;
const PALETTE: [&str; 8] = ["#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7"];

fn f(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(0.0)
}

/// Maps data coordinates into the canvas, `y` pointing up.
struct Frame {
    min: (f64, f64),
    scale: f64,
}

impl Frame {
    fn fit(pts: &[(f64, f64)]) -> Self {
        let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        for &(x, y) in pts {
            x0 = x0.min(x);
            y0 = y0.min(y);
            x1 = x1.max(x);
            y1 = y1.max(y);
        }
        if !x0.is_finite() {
            (x0, y0, x1, y1) = (0.0, 0.0, 1.0, 1.0);
        }
        let extent = (x1 - x0).max(y1 - y0).max(1e-9);
        Frame { min: (x0, y0), scale: (SIZE - 2.0 * MARGIN) / extent }
    }

    fn map(&self, (x, y): (f64, f64)) -> (f64, f64) {
        (MARGIN + (x - self.min.0) * self.scale, SIZE - MARGIN - (y - self.min.1) * self.scale)
    }

    fn len(&self, l: f64) -> f64 {
        l * self.scale
    }
}

fn header() -> String {
    format!("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n")
}

fn path(frame: &Frame, pts: &[(f64, f64)]) -> String {
    pts.iter()
        .map(|&p| {
            let (x, y) = frame.map(p);
            format!("{x:.3},{y:.3}")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn p(pt: &Point2) -> (f64, f64) {
    (f(&pt.s), f(&pt.t))
}

/// The slice in `(s, t)` coordinates: shaded region, boundary chain, and the
/// two unbounded rays cut at three times the vertex bounding box, dashed.
pub fn slice_svg(slice: &Slice2D) -> String {
    let verts: Vec<(f64, f64)> = slice.vertices.iter().map(p).collect();
    let (xs, ys): (Vec<f64>, Vec<f64>) = verts.iter().copied().unzip();
    let span = |v: &[f64]| v.iter().copied().fold(f64::NEG_INFINITY, f64::max) - v.iter().copied().fold(f64::INFINITY, f64::min);
    let reach = 3.0 * span(&xs).max(span(&ys)).max(1.0);
    let unit = |d: (f64, f64)| {
        let n = (d.0 * d.0 + d.1 * d.1).sqrt().max(1e-12);
        (d.0 / n * reach, d.1 / n * reach)
    };
    let (d_b, d_a) = (unit(p(&slice.ray_dirs.0)), unit(p(&slice.ray_dirs.1)));
    let (b1, a1) = (p(slice.b1()), p(slice.a1()));
    let b_end = (b1.0 + d_b.0, b1.1 + d_b.1);
    let a_end = (a1.0 + d_a.0, a1.1 + d_a.1);
    let corner = (a_end.0 + d_b.0, a_end.1 + d_b.1);

    let mut region = vec![b_end];
    region.extend(verts.iter().copied());
    region.push(a_end);
    region.push(corner);
    let frame = Frame::fit(&region);

    let mut out = header();
    let _ = writeln!(out, "<polygon points=\"{}\" fill=\"#c6dbef\" stroke=\"none\"/>", path(&frame, &region));
    let _ = writeln!(out, "<polyline points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>", path(&frame, &verts));
    for (from, to) in [(b1, b_end), (a1, a_end)] {
        let _ = writeln!(
            out,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"2\" stroke-dasharray=\"6,4\"/>",
            path(&frame, &[from, to])
        );
    }
    for v in &verts {
        let (x, y) = frame.map(*v);
        let _ = writeln!(out, "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"4\" fill=\"#d62728\"/>");
    }
    out.push_str("</svg>\n");
    out
}

/// Unit cells `t + e` for each translation `t`, one colour per translate.
pub fn tiling_svg(cells: &[Point], translations: &[Point]) -> String {
    let squares: Vec<(usize, (f64, f64))> = translations
        .iter()
        .enumerate()
        .flat_map(|(i, t)| cells.iter().map(move |e| (i, ((t[0] + e[0]) as f64, (t[1] + e[1]) as f64))))
        .collect();
    let mut corners: Vec<(f64, f64)> = squares.iter().map(|&(_, c)| c).collect();
    corners.extend(squares.iter().map(|&(_, (x, y))| (x + 1.0, y + 1.0)));
    let frame = Frame::fit(&corners);
    let side = frame.len(1.0);
    let mut out = header();
    for (i, (x, y)) in squares {
        let (sx, sy) = frame.map((x, y + 1.0));
        let _ = writeln!(
            out,
            "<rect x=\"{sx:.3}\" y=\"{sy:.3}\" width=\"{side:.3}\" height=\"{side:.3}\" fill=\"{}\" stroke=\"black\" stroke-width=\"0.5\"/>",
            PALETTE[i % PALETTE.len()]
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Scatter plot of planar points.
pub fn scatter_svg(points: &[RationalVector]) -> String {
    let pts: Vec<(f64, f64)> = points.iter().map(|v| (f(&v[0]), f(&v[1]))).collect();
    let frame = Frame::fit(&pts);
    let mut out = header();
    for pt in &pts {
        let (x, y) = frame.map(*pt);
        let _ = writeln!(out, "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"1.5\" fill=\"#1f77b4\"/>");
    }
    out.push_str("</svg>\n");
    out
}
