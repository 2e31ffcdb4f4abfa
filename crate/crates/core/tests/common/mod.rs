//! Seeded instance generators shared by the integration tests.
#![allow(dead_code)]

use cone_tiling::kernel::{ratio, Rational, RationalVector};
use cone_tiling::Cone;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational in `[-5, 5]` with denominator 1, 2 or 3.
pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    let den = rng.gen_range(1..=3i64);
    ratio(rng.gen_range(-5 * den..=5 * den), den)
}

pub fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> RationalVector {
    RationalVector::new((0..n).map(|_| small_rational(rng)).collect())
}

/// A pointed cone with `m` nonzero generators in `R^n`; non-pointed draws are retried.
pub fn random_pointed_cone(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Cone {
    loop {
        let gens: Vec<RationalVector> = (0..m).map(|_| random_vector(rng, n)).collect();
        if let Ok(c) = Cone::new(gens) {
            return c;
        }
    }
}

/// Full-dimensional cone in `R^3` with at least four extreme rays.
pub fn random_irregular_3d(rng: &mut ChaCha8Rng) -> Cone {
    loop {
        let m = rng.gen_range(4..=6);
        let gens: Vec<RationalVector> = (0..m)
            .map(|_| {
                let den = rng.gen_range(1..=3i64);
                RationalVector::new(vec![
                    ratio(rng.gen_range(-5 * den..=5 * den), den),
                    ratio(rng.gen_range(-5 * den..=5 * den), den),
                    ratio(rng.gen_range(1..=5 * den), den),
                ])
            })
            .collect();
        if let Ok(c) = Cone::new(gens) {
            if c.is_full_dimensional() && !c.is_regular() {
                return c;
            }
        }
    }
}

/// A point of the interior: the frame sum with random positive weights.
pub fn random_interior_point(rng: &mut ChaCha8Rng, cone: &Cone) -> RationalVector {
    cone.frame()
        .iter()
        .fold(RationalVector::zeros(cone.ambient_dim()), |acc, &i| {
            acc.add_scaled(&ratio(rng.gen_range(1..=6), rng.gen_range(1..=3)), cone.generator(i))
        })
}

pub fn unit(n: usize, i: usize) -> Vec<i64> {
    (0..n).map(|j| i64::from(i == j)).collect()
}

/// `e_1, …, e_6` and `(1,1,1,-1,-1,-1)`.
pub fn xi_cone() -> Cone {
    let mut gens: Vec<Vec<i64>> = (0..6).map(|i| unit(6, i)).collect();
    gens.push(vec![1, 1, 1, -1, -1, -1]);
    Cone::from_int_generators(&gens).unwrap()
}

/// Cone over the cyclic polytope with vertices `(1, t, t², t³, t⁴)`.
pub fn cyclic_cone(ts: &[i64]) -> Cone {
    let gens: Vec<Vec<i64>> = ts.iter().map(|&t| (0..5).map(|k| t.pow(k)).collect()).collect();
    Cone::from_int_generators(&gens).unwrap()
}

/// All subsets of `items` with at most `max` elements, in increasing size.
pub fn subsets<T: Clone>(items: &[T], max: usize) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = vec![Vec::new()];
    for size in 1..=max.min(items.len()) {
        for idx in cone_tiling::cone::combinations(items.len(), size) {
            out.push(idx.into_iter().map(|i| items[i].clone()).collect());
        }
    }
    out
}

