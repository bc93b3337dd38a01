//! Shared helpers for the integration suites: the n = 2 fixtures and
//! seeded random inputs with bounded denominators.
#![allow(dead_code)]

use choquet_core::{rat, Capacity, IntFunction, PointFunction, Rational};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn capacity_from(values: &[(i64, i64)]) -> Capacity {
    let n = values.len().trailing_zeros() as usize;
    Capacity::new(n, values.iter().map(|&(p, q)| rat(p, q)).collect()).unwrap()
}

/// Additive uniform measure on two points.
pub fn cap_add() -> Capacity {
    capacity_from(&[(0, 1), (1, 2), (1, 2), (1, 1)])
}

/// Strictly submodular fixture.
pub fn cap_sub() -> Capacity {
    capacity_from(&[(0, 1), (7, 10), (7, 10), (1, 1)])
}

/// Monotone, normalized, not submodular.
pub fn cap_bad() -> Capacity {
    capacity_from(&[(0, 1), (1, 10), (1, 10), (1, 1)])
}

/// Random rational in `[lo, hi]` with denominator at most `denom_bound`.
pub fn random_rational(rng: &mut ChaCha8Rng, denom_bound: u64, lo: i64, hi: i64) -> Rational {
    let q = rng.gen_range(1..=denom_bound) as i64;
    let p = rng.gen_range(lo * q..=hi * q);
    rat(p, q)
}

pub fn random_point_function(
    rng: &mut ChaCha8Rng,
    n: usize,
    denom_bound: u64,
    lo: i64,
    hi: i64,
) -> PointFunction {
    PointFunction::new(
        (0..n)
            .map(|_| random_rational(rng, denom_bound, lo, hi))
            .collect(),
    )
}

pub fn random_int_function(rng: &mut ChaCha8Rng, n: usize, max_value: u64) -> IntFunction {
    IntFunction::new((0..n).map(|_| rng.gen_range(0..=max_value)).collect())
}
