//! Exact planar polygons: half-plane clipping and areas.

use num_traits::{Signed, Zero};

use super::rational::{int, Rational};

pub type P2 = (Rational, Rational);

/// `a·x + b·y + c >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfPlane2 {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl HalfPlane2 {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        HalfPlane2 { a, b, c }
    }

    pub fn eval(&self, p: &P2) -> Rational {
        &self.a * &p.0 + &self.b * &p.1 + &self.c
    }

    /// The half-plane to the left of the directed line `p → q`.
    pub fn left_of(p: &P2, q: &P2) -> Self {
        let a = -(&q.1 - &p.1);
        let b = &q.0 - &p.0;
        let c = -(&a * &p.0 + &b * &p.1);
        HalfPlane2 { a, b, c }
    }
}

/// Sutherland–Hodgman step: the part of a convex polygon where `h >= 0`.
pub fn clip(poly: &[P2], h: &HalfPlane2) -> Vec<P2> {
    let mut out = Vec::with_capacity(poly.len() + 1);
    for i in 0..poly.len() {
        let p = &poly[i];
        let q = &poly[(i + 1) % poly.len()];
        let (fp, fq) = (h.eval(p), h.eval(q));
        if !fp.is_negative() {
            out.push(p.clone());
        }
        if (fp.is_negative() && fq.is_positive()) || (fp.is_positive() && fq.is_negative()) {
            let s = &fp / (&fp - &fq);
            out.push((&p.0 + &s * (&q.0 - &p.0), &p.1 + &s * (&q.1 - &p.1)));
        }
    }
    out
}

pub fn clip_all(poly: &[P2], hs: &[HalfPlane2]) -> Vec<P2> {
    hs.iter().fold(poly.to_vec(), |acc, h| if acc.is_empty() { acc } else { clip(&acc, h) })
}

/// Unsigned area (shoelace).
pub fn area(poly: &[P2]) -> Rational {
    if poly.len() < 3 {
        return Rational::zero();
    }
    let mut twice = Rational::zero();
    for i in 0..poly.len() {
        let p = &poly[i];
        let q = &poly[(i + 1) % poly.len()];
        twice += &p.0 * &q.1 - &q.0 * &p.1;
    }
    twice.abs() / int(2)
}

/// The axis-aligned square `[x, x+1] × [y, y+1]`, counter-clockwise.
pub fn unit_square(x: i64, y: i64) -> Vec<P2> {
    vec![
        (int(x), int(y)),
        (int(x + 1), int(y)),
        (int(x + 1), int(y + 1)),
        (int(x), int(y + 1)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::ratio;

    #[test]
    fn clipping_a_square_by_a_diagonal() {
        let sq = unit_square(0, 0);
        // x + y >= 1
        let h = HalfPlane2::new(int(1), int(1), int(-1));
        assert_eq!(area(&clip(&sq, &h)), ratio(1, 2));
        let all = clip_all(&sq, &[h, HalfPlane2::new(int(-1), int(-1), int(1))]);
        assert_eq!(area(&all), int(0));
    }

    #[test]
    fn left_of_orientation() {
        let h = HalfPlane2::left_of(&(int(0), int(0)), &(int(1), int(0)));
        assert!(h.eval(&(int(0), int(1))).is_positive());
        assert!(h.eval(&(int(0), int(-1))).is_negative());
    }
}
