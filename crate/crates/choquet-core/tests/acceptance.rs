//! Acceptance suite: one test per release criterion, each exact
//! (tolerance zero) and deterministic. Criterion 9 (the command-line
//! golden files) lives in the CLI crate's own acceptance suite.

mod common;

use std::collections::BTreeSet;

use choquet_core::{
    check_convexity, check_lemma_identities, choquet_integer, choquet_layer_cake, choquet_sorted,
    dyadic_approximation, exhaustive_subadditivity, halving_bound, halving_identity,
    indicator_counterexample, induction_certificate, lemma_sets, random_monotone_capacity,
    random_submodular_capacity, rat, rat_u64, Capacity, IntFunction, LatticePoint, PointFunction,
};
use common::{cap_bad, random_int_function, random_point_function, random_rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Mixes the two generators deterministically.
fn random_capacity(n: usize, seed: u64) -> Capacity {
    if seed.is_multiple_of(2) {
        random_monotone_capacity(n, seed).unwrap()
    } else {
        random_submodular_capacity(n, seed).unwrap()
    }
}

#[test]
fn criterion_1_evaluator_agreement() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC1);
    for i in 0..10_000u64 {
        let n = 1 + (i % 5) as usize;
        let capacity = random_capacity(n, 0x1000 + i);
        if i % 4 == 0 {
            // integer-valued input: all three evaluators must agree
            let function = random_int_function(&mut rng, n, 6);
            let layer = choquet_layer_cake(&capacity, &function.to_point()).unwrap();
            let sorted = choquet_sorted(&capacity, &function.to_point()).unwrap();
            let integer = choquet_integer(&capacity, &function).unwrap();
            assert_eq!(layer, sorted, "pair {i}");
            assert_eq!(layer, integer, "pair {i}");
        } else {
            let function = random_point_function(&mut rng, n, 1000, -4, 4);
            let layer = choquet_layer_cake(&capacity, &function).unwrap();
            let sorted = choquet_sorted(&capacity, &function).unwrap();
            assert_eq!(layer, sorted, "pair {i}");
        }
    }
    println!("criterion 1 (evaluator agreement, 10^4 pairs): PASS");
}

#[test]
fn criterion_2_axiom_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC2);

    // translation invariance
    for i in 0..10_000u64 {
        let n = 1 + (i % 5) as usize;
        let capacity = random_capacity(n, 0x2000 + i);
        let function = random_point_function(&mut rng, n, 1000, -4, 4);
        let shift = random_rational(&mut rng, 1000, -3, 3);
        let lhs = choquet_layer_cake(&capacity, &function.add_constant(&shift)).unwrap();
        let rhs = choquet_layer_cake(&capacity, &function).unwrap() + &shift;
        assert_eq!(lhs, rhs, "translation instance {i}");
    }

    // monotonicity
    for i in 0..10_000u64 {
        let n = 1 + (i % 5) as usize;
        let capacity = random_capacity(n, 0x3000 + i);
        let function = random_point_function(&mut rng, n, 1000, -4, 4);
        let larger = function
            .try_add(&random_point_function(&mut rng, n, 1000, 0, 4))
            .unwrap();
        assert!(function.le(&larger));
        assert!(
            choquet_layer_cake(&capacity, &function).unwrap()
                <= choquet_layer_cake(&capacity, &larger).unwrap(),
            "monotonicity instance {i}"
        );
    }

    // positive homogeneity
    for i in 0..10_000u64 {
        let n = 1 + (i % 5) as usize;
        let capacity = random_capacity(n, 0x4000 + i);
        let function = random_point_function(&mut rng, n, 1000, -4, 4);
        let factor = random_rational(&mut rng, 1000, 0, 3) + rat(1, 1000);
        let lhs = choquet_layer_cake(&capacity, &function.scale(&factor)).unwrap();
        let rhs = factor * choquet_layer_cake(&capacity, &function).unwrap();
        assert_eq!(lhs, rhs, "homogeneity instance {i}");
    }

    // indicators reproduce the capacity on all 2^n events
    for n in 1..=5usize {
        for seed in 0..20u64 {
            let capacity = random_capacity(n, 0x5000 + seed);
            for event in capacity.events() {
                let indicator = PointFunction::indicator(n, event);
                assert_eq!(
                    &choquet_layer_cake(&capacity, &indicator).unwrap(),
                    capacity.value(event),
                    "indicator of {event} on n={n} seed={seed}"
                );
            }
        }
    }
    println!("criterion 2 (axiom suite, 3 x 10^4 + indicators): PASS");
}

#[test]
fn criterion_3_easy_direction() {
    for i in 0..500u64 {
        let n = 1 + (i % 4) as usize;
        let capacity = random_monotone_capacity(n, 0x6000 + i).unwrap();
        let exhaustive = capacity.check_submodular_exhaustive();
        match indicator_counterexample(&capacity) {
            None => assert!(exhaustive.is_none(), "capacity {i}: checker found {exhaustive:?}"),
            Some((a, b, report)) => {
                assert!(exhaustive.is_some(), "capacity {i}");
                // the witness gap equals c(AuB) + c(AnB) - c(A) - c(B)
                let direct = capacity.value(a.union(b)) + capacity.value(a.intersection(b))
                    - capacity.value(a)
                    - capacity.value(b);
                assert_eq!(report.gap(), direct, "capacity {i}");
            }
        }
    }
    println!("criterion 3 (easy direction, 500 capacities): PASS");
}

#[test]
fn criterion_4_hard_direction_desk_scale() {
    for n in [2usize, 3] {
        for seed in 0..100u64 {
            let capacity = random_submodular_capacity(n, 0x7000 + seed).unwrap();
            let violation = exhaustive_subadditivity(&capacity, 3).unwrap();
            assert!(
                violation.is_none(),
                "n={n} seed={seed}: {violation:?}"
            );
        }
    }
    println!("criterion 4 (hard direction, 200 submodular capacities, all pairs <= 3): PASS");
}

#[test]
fn criterion_5_convexity_form() {
    let grid: Vec<_> = (0..=8i64).map(|k| rat(k, 8)).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(0xC5);
    for i in 0..50u64 {
        let n = 2 + (i % 2) as usize;
        let capacity = random_submodular_capacity(n, 0x8000 + i).unwrap();
        for _ in 0..5 {
            let x = random_point_function(&mut rng, n, 100, -3, 3);
            let y = random_point_function(&mut rng, n, 100, -3, 3);
            for lambda in &grid {
                assert!(
                    check_convexity(&capacity, &x, &y, lambda).unwrap().is_none(),
                    "submodular capacity {i} failed at lambda {lambda}"
                );
            }
        }
    }

    // the non-submodular fixture fails at lambda = 1/2 with lhs 1, rhs 1/5
    let x = PointFunction::new(vec![rat(2, 1), rat(0, 1)]);
    let y = PointFunction::new(vec![rat(0, 1), rat(2, 1)]);
    let report = check_convexity(&cap_bad(), &x, &y, &rat(1, 2))
        .unwrap()
        .expect("violation at 1/2");
    assert_eq!(report.lhs, rat(1, 1));
    assert_eq!(report.rhs, rat(1, 5));
    let violating_lambdas: Vec<_> = grid
        .iter()
        .filter(|lambda| {
            check_convexity(&cap_bad(), &x, &y, lambda)
                .unwrap()
                .is_some()
        })
        .collect();
    assert!(!violating_lambdas.is_empty());
    println!("criterion 5 (convexity on the lambda grid): PASS");
}

/// The k = 2 lattice picture, frozen cell-for-cell: `(x, y)` points
/// carrying a circle (the A~ set) and a triangle (the B~ set).
const FIGURE_CIRCLES: &[(u64, u64)] = &[
    (0, 7), (1, 7), (2, 7), (3, 7), (4, 7), (5, 7), (6, 7), (7, 7),
    (0, 6), (1, 6), (2, 6), (3, 6), (4, 6), (5, 6), (6, 6), (7, 6),
    (0, 5), (1, 5), (2, 5), (3, 5), (4, 5), (5, 5), (6, 5), (7, 5),
    (2, 4), (3, 4), (4, 4), (5, 4), (6, 4), (7, 4),
    (2, 3), (3, 3), (4, 3), (5, 3), (6, 3), (7, 3),
    (4, 2), (5, 2), (6, 2), (7, 2),
    (4, 1), (5, 1), (6, 1), (7, 1),
    (6, 0), (7, 0),
];

const FIGURE_TRIANGLES: &[(u64, u64)] = &[
    (0, 7), (1, 7), (2, 7), (3, 7), (4, 7), (5, 7), (6, 7), (7, 7),
    (0, 6), (1, 6), (2, 6), (3, 6), (4, 6), (5, 6), (6, 6), (7, 6),
    (1, 5), (2, 5), (3, 5), (4, 5), (5, 5), (6, 5), (7, 5),
    (1, 4), (2, 4), (3, 4), (4, 4), (5, 4), (6, 4), (7, 4),
    (3, 3), (4, 3), (5, 3), (6, 3), (7, 3),
    (3, 2), (4, 2), (5, 2), (6, 2), (7, 2),
    (5, 1), (6, 1), (7, 1),
    (5, 0), (6, 0), (7, 0),
];

#[test]
fn criterion_6_lemma_identities_and_figure() {
    for k in 0..=10u64 {
        assert!(check_lemma_identities(k, 2 * k + 2).unwrap(), "k={k} tight window");
        assert!(check_lemma_identities(k, 4 * k + 8).unwrap(), "k={k} wide window");
    }

    let (a_set, b_set) = lemma_sets(2, 7).unwrap();
    let circles: BTreeSet<LatticePoint> = FIGURE_CIRCLES
        .iter()
        .map(|&(x, y)| LatticePoint::new(x, y))
        .collect();
    let triangles: BTreeSet<LatticePoint> = FIGURE_TRIANGLES
        .iter()
        .map(|&(x, y)| LatticePoint::new(x, y))
        .collect();
    assert_eq!(a_set, circles, "A~_2 must match the circles cell-for-cell");
    assert_eq!(b_set, triangles, "B~_2 must match the triangles cell-for-cell");
    println!("criterion 6 (lattice-set identities and the k=2 grid): PASS");
}

#[test]
fn criterion_7_proof_machinery() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC7);

    // halving identity: arbitrary monotone capacity, values up to 64
    for i in 0..1000u64 {
        let n = 1 + (i % 4) as usize;
        let capacity = random_monotone_capacity(n, 0x9000 + i).unwrap();
        let function = random_int_function(&mut rng, n, 64);
        let (down, up, whole) = halving_identity(&capacity, &function).unwrap();
        assert_eq!(down + up, whole, "identity instance {i}");
    }

    // halving bound: submodular capacity, values up to 16
    for i in 0..1000u64 {
        let n = 1 + (i % 4) as usize;
        let capacity = random_submodular_capacity(n, 0xA000 + i).unwrap();
        let x = random_int_function(&mut rng, n, 16);
        let y = random_int_function(&mut rng, n, 16);
        let (lhs, rhs) = halving_bound(&capacity, &x, &y).unwrap();
        assert!(lhs <= rhs, "bound instance {i}: {lhs} > {rhs}");
    }

    // full certificates: never fail, all steps exact, final matches
    // independent evaluation
    for i in 0..500u64 {
        let n = 1 + (i % 4) as usize;
        let capacity = random_submodular_capacity(n, 0xB000 + i).unwrap();
        let x = random_int_function(&mut rng, n, 16);
        let y = random_int_function(&mut rng, n, 16);
        let certificate = induction_certificate(&capacity, &x, &y).unwrap();
        assert!(certificate.verify(), "certificate {i}");
        for step in &certificate.steps {
            assert!(step.holds(), "certificate {i}, step {step}");
        }
        let lhs = choquet_integer(&capacity, &x.try_add(&y).unwrap()).unwrap();
        let rhs =
            choquet_integer(&capacity, &x).unwrap() + choquet_integer(&capacity, &y).unwrap();
        assert_eq!(certificate.final_lhs, lhs, "certificate {i}");
        assert_eq!(certificate.final_rhs, rhs, "certificate {i}");
    }
    println!("criterion 7 (halving identity/bound, 500 certificates): PASS");
}

#[test]
fn criterion_8_dyadic_bracket() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC8);
    for i in 0..500u64 {
        let n = 1 + (i % 5) as usize;
        let capacity = random_capacity(n, 0xD000 + i);
        // every third function integer-valued so the zero-gap case occurs
        let function = if i % 3 == 0 {
            random_int_function(&mut rng, n, 4).to_point()
        } else {
            random_point_function(&mut rng, n, 1000, 0, 4)
        };
        assert!(function.is_nonnegative());
        let exact = choquet_layer_cake(&capacity, &function).unwrap();
        for subdivisions in [1u64, 2, 4, 8, 16, 32, 64] {
            let (approx, error) =
                dyadic_approximation(&capacity, &function, subdivisions).unwrap();
            assert!(error >= rat(0, 1), "instance {i}, n={subdivisions}");
            assert!(
                error <= rat(1, subdivisions as i64),
                "instance {i}, n={subdivisions}"
            );
            assert_eq!(&approx + &error, exact, "instance {i}, n={subdivisions}");
            let scaled_is_integer = function
                .values()
                .iter()
                .all(|v| (v * rat_u64(subdivisions)).is_integer());
            if scaled_is_integer {
                assert_eq!(error, rat(0, 1), "integer multiple must be exact");
            }
        }
    }
    println!("criterion 8 (dyadic bracket over n in {{1,..,64}}): PASS");
}

/// The fixtures pass through the exact hand-computed spot values used
/// throughout the suite (guards the fixtures themselves).
#[test]
fn fixture_spot_checks() {
    let capacity = common::cap_sub();
    assert_eq!(
        choquet_layer_cake(
            &capacity,
            &PointFunction::new(vec![rat(2, 1), rat(1, 1)])
        )
        .unwrap(),
        rat(17, 10)
    );
    assert_eq!(
        choquet_integer(&capacity, &IntFunction::new(vec![3, 1])).unwrap(),
        rat(12, 5)
    );
    assert!(common::cap_add().check_submodular_exhaustive().is_none());
    assert!(cap_bad().check_submodular_exhaustive().is_some());
}
