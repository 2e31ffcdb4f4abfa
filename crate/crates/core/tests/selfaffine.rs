use std::collections::BTreeMap;

use cone_tiling::kernel::RationalMatrix;
use cone_tiling::selfaffine::{
    approximate_tile, check_int_system, digit_expand, ifs_map, is_cube_union, is_expanding, SelfAffineError, VerdictTag,
};
use proptest::prelude::*;

fn mat_vec(a: &[Vec<i64>], p: &[i64]) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(p).map(|(x, y)| x * y).sum()).collect()
}

/// `Σ_j A^j d_{w_j}` over every digit word `w` of length `k`.
fn words(a: &[Vec<i64>], digits: &[Vec<i64>], k: u32) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut out = Vec::new();
    let m = digits.len();
    for mut code in 0..m.pow(k) {
        let mut sum = vec![0; n];
        let mut power: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        for _ in 0..k {
            let d = &digits[code % m];
            code /= m;
            for (s, v) in sum.iter_mut().zip(mat_vec(&power, d)) {
                *s += v;
            }
            power = (0..n).map(|i| (0..n).map(|j| (0..n).map(|l| power[i][l] * a[l][j]).sum()).collect()).collect();
        }
        out.push(sum);
    }
    out.sort();
    out
}

/// Float check: both eigenvalues of a 2×2 matrix exceed 1 in modulus, or
/// `None` if one sits too close to the unit circle to call.
fn float_expanding(a: &[Vec<i64>]) -> Option<bool> {
    let (tr, det) = ((a[0][0] + a[1][1]) as f64, (a[0][0] * a[1][1] - a[0][1] * a[1][0]) as f64);
    let disc = tr * tr - 4.0 * det;
    let moduli = if disc >= 0.0 {
        let r = disc.sqrt();
        [((tr + r) / 2.0).abs(), ((tr - r) / 2.0).abs()]
    } else {
        [det.sqrt(), det.sqrt()]
    };
    if moduli.iter().any(|m| (m - 1.0).abs() < 1e-9) {
        return None;
    }
    Some(moduli.iter().all(|m| *m > 1.0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn expansiveness_matches_eigenvalues(a in -4i64..5, b in -4i64..5, c in -4i64..5, d in -4i64..5) {
        let rows = vec![vec![a, b], vec![c, d]];
        if let Some(expect) = float_expanding(&rows) {
            prop_assert_eq!(is_expanding(&RationalMatrix::from_int_rows(&rows).unwrap()), expect, "{:?}", rows);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn expansions_are_digit_words(k in 1u32..5, pick in 0usize..4) {
        let systems: [(Vec<Vec<i64>>, Vec<Vec<i64>>); 4] = [
            (vec![vec![3]], vec![vec![0], vec![1], vec![5]]),
            (vec![vec![1, -1], vec![1, 1]], vec![vec![0, 0], vec![1, 0]]),
            (vec![vec![0, 2], vec![1, 0]], vec![vec![0, 0], vec![1, 1]]),
            (vec![vec![2, 1], vec![0, 2]], vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![3, 1]]),
        ];
        let (a, digits) = &systems[pick];
        let sys = check_int_system(a, digits).unwrap();
        let e = digit_expand(&sys, k).unwrap();
        prop_assert_eq!(&e.points, &words(a, digits, k));
        prop_assert_eq!(e.multiset_size, digits.len().pow(k));
    }

    #[test]
    fn approximations_are_ifs_invariant(k in 1u32..5, pick in 0usize..2) {
        let systems: [(Vec<Vec<i64>>, Vec<Vec<i64>>); 2] = [
            (vec![vec![1, -1], vec![1, 1]], vec![vec![0, 0], vec![1, 0]]),
            (vec![vec![-2]], vec![vec![0], vec![1]]),
        ];
        let (a, digits) = &systems[pick];
        let sys = check_int_system(a, digits).unwrap();
        let now = approximate_tile(&sys, k).unwrap();
        let next = approximate_tile(&sys, k + 1).unwrap();
        for d in digits {
            for x in &now.points {
                prop_assert!(next.points.binary_search(&ifs_map(&sys, d, x)).is_ok());
            }
        }
    }

    /// One-dimensional diagonal systems against a direct coverage count at
    /// the midpoints of unit cells.
    #[test]
    fn diagonal_cube_unions_match_coverage(a in 2i64..4, dmask in any::<u16>(), emask in 1u16..64) {
        let digits: Vec<i64> = (0..12).filter(|i| dmask & (1 << i) != 0).take(a as usize).collect();
        prop_assume!(digits.len() == a as usize);
        let cells: Vec<i64> = (0..6).filter(|i| emask & (1 << i) != 0).collect();
        let sys = check_int_system(&[vec![a]], &digits.iter().map(|&d| vec![d]).collect::<Vec<_>>()).unwrap();
        let mut lhs = BTreeMap::<i64, usize>::new();
        let mut rhs = BTreeMap::<i64, usize>::new();
        for &e in &cells {
            for r in 0..a {
                *lhs.entry(a * e + r).or_default() += 1;
            }
            for &d in &digits {
                *rhs.entry(e + d).or_default() += 1;
            }
        }
        let expect = lhs == rhs;
        let v = is_cube_union(&sys, &cells.iter().map(|&e| vec![e]).collect::<Vec<_>>());
        prop_assert_eq!(v.tag, if expect { VerdictTag::True } else { VerdictTag::False });
    }
}

#[test]
fn planar_non_diagonal_verdicts() {
    let swap = check_int_system(&[vec![0, 2], vec![2, 0]], &[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
    assert_eq!(is_cube_union(&swap, &[vec![0, 0]]).tag, VerdictTag::True);
    let tall = check_int_system(&[vec![0, 1], vec![2, 0]], &[vec![0, 0], vec![1, 0]]).unwrap();
    assert_eq!(is_cube_union(&tall, &[vec![0, 0], vec![0, 1]]).tag, VerdictTag::True);
    assert_eq!(is_cube_union(&tall, &[vec![0, 0]]).tag, VerdictTag::False);
    let dragon = check_int_system(&[vec![1, -1], vec![1, 1]], &[vec![0, 0], vec![1, 0]]).unwrap();
    assert_eq!(is_cube_union(&dragon, &[vec![0, 0]]).tag, VerdictTag::False);
}

#[test]
fn invalid_systems_are_rejected() {
    assert!(matches!(check_int_system(&[vec![1, 1], vec![0, 1]], &[vec![0, 0]]), Err(SelfAffineError::NotExpanding)));
    assert!(matches!(check_int_system(&[vec![2]], &[vec![0]]), Err(SelfAffineError::DeterminantDigitMismatch { .. })));
    let sys = check_int_system(&[vec![2]], &[vec![0], vec![1]]).unwrap();
    assert!(matches!(digit_expand(&sys, 0), Err(SelfAffineError::InvalidLevel)));
    assert!(matches!(digit_expand(&sys, 40), Err(SelfAffineError::TooLarge(_))));
}
