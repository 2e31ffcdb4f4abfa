mod common;

use cone_tiling::kernel::{ratio, Rational, RationalVector};
use cone_tiling::slice::metrics::{dist_sq_to_planar_cone, slice_metrics};
use cone_tiling::slice::{boundary_projection, slice, two_face};
use cone_tiling::Cone;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use common::{random_interior_point, random_irregular_3d, rng};

fn two_faces(cone: &Cone) -> Vec<(usize, usize)> {
    let f = cone.frame();
    let mut out = Vec::new();
    for (x, &i) in f.iter().enumerate() {
        for &j in &f[x + 1..] {
            if two_face(cone, (i, j)).is_ok() {
                out.push((i, j));
            }
        }
    }
    out
}

fn on_boundary(cone: &Cone, p: &RationalVector) -> bool {
    cone.contains_point(p).unwrap() && !cone.is_interior(p).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn slice_vertices_lie_on_the_boundary(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = random_irregular_3d(&mut r);
        let y = random_interior_point(&mut r, &c);
        for pair in two_faces(&c) {
            let s = slice(&c, pair, &y).unwrap();
            prop_assert!(!s.vertices.is_empty());
            for w in s.vertices.windows(2) {
                prop_assert!(w[0].s < w[1].s && w[0].t > w[1].t);
            }
            for v in &s.vertices {
                prop_assert!(on_boundary(&c, &s.lift(v)));
            }
            // the two unbounded edges stay in the cone
            let far_b = s.lift(s.b1()).add_scaled(&Rational::from_integer(7.into()), &s.plane_basis.1);
            let far_a = s.lift(s.a1()).add_scaled(&Rational::from_integer(7.into()), &s.plane_basis.0);
            prop_assert!(c.contains_point(&far_a).unwrap() && c.contains_point(&far_b).unwrap());
        }
    }

    #[test]
    fn hausdorff_bounds_every_edge_point(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = random_irregular_3d(&mut r);
        let y = random_interior_point(&mut r, &c);
        for pair in two_faces(&c) {
            let s = slice(&c, pair, &y).unwrap();
            let m = slice_metrics(&c, pair, &y).unwrap();
            let (a, b) = &s.plane_basis;
            let dist = |p: &RationalVector| dist_sq_to_planar_cone(&(p - &y), a, b);
            let mut attained = false;
            for v in &s.vertices {
                let d = dist(&s.lift(v));
                prop_assert!(d <= m.hausdorff_to_face_sq);
                attained |= d == m.hausdorff_to_face_sq;
            }
            prop_assert!(attained);
            for w in s.vertices.windows(2) {
                let (p, q) = (s.lift(&w[0]), s.lift(&w[1]));
                for k in 1..8 {
                    let u = ratio(k, 8);
                    let e = p.add_scaled(&u, &(&q - &p));
                    prop_assert!(dist(&e) <= m.hausdorff_to_face_sq);
                }
            }
            for k in 1..6 {
                let far = s.lift(s.a1()).add_scaled(&ratio(k * k, 1), a);
                prop_assert!(dist(&far) <= m.hausdorff_to_face_sq);
            }
            prop_assert_eq!(&m.hausdorff_sq_upper, &(Rational::from_integer(2.into()) * (&m.y_norm_sq + &m.hausdorff_to_face_sq)));
        }
    }

    #[test]
    fn boundary_projection_exits_through_its_facet(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = random_irregular_3d(&mut r);
        let y = random_interior_point(&mut r, &c);
        for &i in c.frame() {
            let p = boundary_projection(&c, &y, c.generator(i)).unwrap();
            prop_assert!(p.lambda.is_positive());
            prop_assert!(on_boundary(&c, &p.point));
            prop_assert!(c.facets()[p.exit_facet].supporting_functional.dot(&p.point).is_zero());
            // slightly further along the ray leaves the cone
            let beyond = p.point.add_scaled(&-ratio(1, 1000), c.generator(i));
            prop_assert!(!c.contains_point(&beyond).unwrap());
        }
    }
}

/// The sum of the two squared projection distances bounds the orthogonalized
/// Hausdorff distance whenever both projections land on the boundary rays.
/// For other interior points the bound can fail, and does.
#[test]
fn projection_bound_under_the_ray_condition() {
    let mut r = rng(4242);
    let (mut flagged, mut unflagged, mut unflagged_failures) = (0, 0, 0);
    for _ in 0..120 {
        let c = random_irregular_3d(&mut r);
        let y = random_interior_point(&mut r, &c);
        for pair in two_faces(&c) {
            let m = slice_metrics(&c, pair, &y).unwrap();
            if m.projections_on_rays {
                flagged += 1;
                assert!(m.projection_bound_sq >= m.orthogonal_hausdorff_sq, "{:?} {pair:?} {y:?}", c.generators());
            } else {
                unflagged += 1;
                unflagged_failures += usize::from(m.projection_bound_sq < m.orthogonal_hausdorff_sq);
            }
        }
    }
    println!("ray condition held {flagged} times; otherwise the bound failed {unflagged_failures}/{unflagged}");
    assert!(flagged > 0);
    assert!(unflagged_failures > 0, "expected counterexamples off the ray condition");
}

#[test]
fn non_interior_points_are_rejected() {
    let c = Cone::from_int_generators(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
    let on_face = RationalVector::from_ints(&[1, 1, 0]);
    assert!(slice(&c, (0, 1), &on_face).is_err());
    assert!(boundary_projection(&c, &on_face, c.generator(0)).is_err());
    assert!(slice(&c, (0, 1), &RationalVector::from_ints(&[1, 1, 1])).is_ok());
}
