#![allow(dead_code)]

use hookbranch::hook_walks::WeightSystem;
use hookbranch::{Cell, Partition};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

/// Positive rational weights `a/b` with `1 ≤ a, b ≤ 9` on rows
/// `1−margin ..= ℓ+margin` and columns `1−margin ..= λ_1+margin`.
pub fn random_weights<R: Rng>(lambda: &Partition, margin: i64, rng: &mut R) -> WeightSystem {
    let mut w = WeightSystem::new();
    let draw = |rng: &mut R| {
        BigRational::new(
            BigInt::from(rng.gen_range(1..=9)),
            BigInt::from(rng.gen_range(1..=9)),
        )
    };
    for i in 1 - margin..=lambda.len() as i64 + margin {
        w.set_x(i, draw(rng)).unwrap();
    }
    for j in 1 - margin..=lambda.first_part() as i64 + margin {
        w.set_y(j, draw(rng)).unwrap();
    }
    w
}

/// Counts standard Young tableaux by placing `1, 2, …, n` one at a time
/// in every cell whose upper and left neighbours are already filled.
pub fn syt_by_linear_extensions(lambda: &Partition) -> u64 {
    fn go(lambda: &Partition, filled: &mut Vec<usize>) -> u64 {
        let parts = lambda.parts();
        if filled.iter().zip(parts).all(|(a, b)| a == b) {
            return 1;
        }
        let mut total = 0;
        for i in 0..parts.len() {
            let can = filled[i] < parts[i] && (i == 0 || filled[i - 1] > filled[i]);
            if can {
                filled[i] += 1;
                total += go(lambda, filled);
                filled[i] -= 1;
            }
        }
        total
    }
    go(lambda, &mut vec![0; lambda.len()])
}

pub fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

pub fn cells(v: &[(i64, i64)]) -> Vec<Cell> {
    v.iter().map(|&c| c.into()).collect()
}
