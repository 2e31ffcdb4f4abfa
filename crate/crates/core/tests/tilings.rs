mod common;

use cone_tiling::kernel::{int, ratio, Rational, RationalVector};
use cone_tiling::oracles::{oracle_box_tiling, oracle_direct_sum};
use cone_tiling::tiling::rescale::{normalize_and_rescale, RationalBox};
use cone_tiling::tiling::{complete_translations, restrict_to_face, scan_key, verify_direct_sum, CompletionStatus, CubeTile, TranslationSet};
use proptest::prelude::*;

/// Cells of `[0, side)^dim` selected by `mask`, always including the origin.
fn masked_cells(dim: usize, side: i64, mask: u32) -> Vec<Vec<i64>> {
    let mut cells = Vec::new();
    let total = side.pow(dim as u32);
    for k in 0..total {
        let p: Vec<i64> = (0..dim).map(|j| (k / side.pow(j as u32)) % side).collect();
        if k == 0 || mask & (1 << k) != 0 {
            cells.push(p);
        }
    }
    cells
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn direct_sum_matches_the_oracle(dim in 1usize..3, mask in any::<u32>(), jmask in any::<u64>(), bound in 3i64..7) {
        let cells = masked_cells(dim, 3, mask);
        let tile = CubeTile::new(dim, cells.clone()).unwrap();
        let bounds = vec![bound; dim];
        let j: Vec<Vec<i64>> = cone_tiling::tiling::box_points(&bounds)
            .into_iter()
            .enumerate()
            .filter(|(i, _)| *i == 0 || jmask & (1 << (i % 64)) != 0)
            .map(|(_, p)| p)
            .collect();
        let ts = TranslationSet::new(j.clone(), bounds.clone()).unwrap();
        let report = verify_direct_sum(&tile, &ts, &bounds).unwrap();
        prop_assert_eq!(report.is_tiling(), oracle_direct_sum(&cells, &j, &bounds).unwrap());
    }

    #[test]
    fn greedy_tilings_pass_the_oracle(dim in 1usize..3, mask in any::<u32>(), bound in 4i64..9) {
        let cells = masked_cells(dim, 3, mask);
        let tile = CubeTile::new(dim, cells.clone()).unwrap();
        let bounds = vec![bound; dim];
        let c = complete_translations(&tile, &bounds).unwrap();
        match &c.status {
            CompletionStatus::Complete => {
                prop_assert!(oracle_direct_sum(&cells, c.translations.points(), &bounds).unwrap());
            }
            CompletionStatus::Fail { witness, overlap } => {
                // the witness is uncovered by the partial set, and placing the
                // tile there would hit `overlap` twice
                prop_assert!(!c.translations.points().iter().any(|t| cells.iter().any(|e| e.iter().zip(t).map(|(a, b)| a + b).eq(witness.iter().copied()))));
                prop_assert!(cells.iter().any(|e| e.iter().zip(witness).map(|(a, b)| a + b).eq(overlap.iter().copied())));
            }
        }
        for w in c.translations.points().windows(2) {
            prop_assert_ne!(scan_key(&w[0]), scan_key(&w[1]));
        }
    }

    #[test]
    fn rescaling_recovers_the_integer_instance(mask in any::<u32>(), bound in 6i64..16, p in 1i64..6, q in 1i64..6) {
        let cells: Vec<i64> = (0..5).filter(|i| *i == 0 || mask & (1 << i) != 0).collect();
        let tile = CubeTile::from_1d(&cells).unwrap();
        let c = complete_translations(&tile, &[bound]).unwrap();
        prop_assume!(c.status == CompletionStatus::Complete && c.translations.contains(&[1]));
        let s = ratio(p, q);
        let boxes: Vec<RationalBox> = cells.iter().map(|&e| RationalBox::new(vec![int(e) * &s], vec![int(e + 1) * &s])).collect();
        let raw: Vec<RationalVector> = c.translations.points().iter().map(|t| RationalVector::new(vec![int(t[0]) * &s])).collect();
        let r = normalize_and_rescale(&boxes, &raw, &[int(bound) * &s]).unwrap();
        prop_assert_eq!(&r.u[0] * &s, Rational::from_integer(1.into()));
        prop_assert_eq!(&r.tile, &tile);
        prop_assert_eq!(&r.translations, &c.translations);
    }
}

#[test]
fn restriction_of_a_product_tiling() {
    // two-by-one dominoes stacked in columns restrict to the dominoes themselves on axis 0
    let tile = CubeTile::new(2, vec![vec![0, 0], vec![1, 0]]).unwrap();
    let points: Vec<Vec<i64>> = (0..3).flat_map(|x| (0..6).map(move |y| vec![2 * x, y])).collect();
    let j = TranslationSet::new(points, vec![6, 6]).unwrap();
    assert!(verify_direct_sum(&tile, &j, &[6, 6]).unwrap().is_tiling());
    let (t1, j1) = restrict_to_face(&tile, &j, &[0]).unwrap();
    assert_eq!(t1.cells(), &[vec![0], vec![1]]);
    assert_eq!(j1.points(), &[vec![0], vec![2], vec![4]]);
    assert!(verify_direct_sum(&t1, &j1, &[6]).unwrap().is_tiling());
}

#[test]
fn tromino_failure_is_genuine() {
    let cells = vec![vec![0, 0], vec![1, 0], vec![0, 1]];
    let tile = CubeTile::new(2, cells.clone()).unwrap();
    let c = complete_translations(&tile, &[6, 6]).unwrap();
    assert!(matches!(c.status, CompletionStatus::Fail { .. }));
    assert_eq!(oracle_box_tiling(&cells, &[6, 6], 1_000_000).unwrap(), None);
}
