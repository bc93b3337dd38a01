//! Desk-scale verification of both directions of the equivalence between
//! submodularity and subadditivity/convexity of the Choquet integral:
//! exact subadditivity and convexity checks, indicator counterexample
//! extraction for the easy direction, exhaustive enumeration over small
//! integer-valued functions for the hard direction, and randomized
//! equivalence scans over generated capacities.

use std::fmt;

use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::capacity::{
    random_monotone_capacity, random_submodular_capacity, Capacity, CapacityError, Event,
    ViolationKind, ViolationReport, Witness,
};
use crate::choquet::{choquet_layer_cake, ChoquetError, IntFunction, PointFunction};
use crate::rational::Rational;

/// Default cap on `(max_value + 1)^(2n)`, the number of function pairs an
/// exhaustive subadditivity enumeration visits.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifierError {
    #[error(transparent)]
    Choquet(#[from] ChoquetError),
    #[error("lambda must lie in [0, 1], got {lambda}")]
    BadLambda { lambda: Rational },
    #[error("enumeration budget exceeded: {required} pairs > budget {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error(transparent)]
    Generation(#[from] CapacityError),
}

/// Exact check of `int (X+Y) dc <= int X dc + int Y dc`.
pub fn check_subadditivity(
    capacity: &Capacity,
    x: &PointFunction,
    y: &PointFunction,
) -> Result<Option<ViolationReport>, VerifierError> {
    let lhs = choquet_layer_cake(capacity, &x.try_add(y)?)?;
    let rhs = choquet_layer_cake(capacity, x)? + choquet_layer_cake(capacity, y)?;
    if lhs > rhs {
        return Ok(Some(ViolationReport::new(
            ViolationKind::Subadditivity,
            Witness::Functions {
                x: x.clone(),
                y: y.clone(),
            },
            lhs,
            rhs,
        )));
    }
    Ok(None)
}

/// Exact check of
/// `int (lambda X + (1-lambda) Y) dc <= lambda int X dc + (1-lambda) int Y dc`.
pub fn check_convexity(
    capacity: &Capacity,
    x: &PointFunction,
    y: &PointFunction,
    lambda: &Rational,
) -> Result<Option<ViolationReport>, VerifierError> {
    if lambda.is_negative() || *lambda > Rational::one() {
        return Err(VerifierError::BadLambda {
            lambda: lambda.clone(),
        });
    }
    let complement = Rational::one() - lambda;
    let mixture = x.scale(lambda).try_add(&y.scale(&complement))?;
    let lhs = choquet_layer_cake(capacity, &mixture)?;
    let rhs = lambda * choquet_layer_cake(capacity, x)?
        + &complement * choquet_layer_cake(capacity, y)?;
    if lhs > rhs {
        return Ok(Some(ViolationReport::new(
            ViolationKind::Convexity,
            Witness::Mixture {
                x: x.clone(),
                y: y.clone(),
                lambda: lambda.clone(),
            },
            lhs,
            rhs,
        )));
    }
    Ok(None)
}

/// The easy direction made concrete: if the capacity is not submodular,
/// returns the first violating subset pair `(A, B)` together with the
/// subadditivity violation for `X = 1_A`, `Y = 1_B`, using
/// `int (1_A + 1_B) dc = c(A u B) + c(A n B)`. Returns `None` iff the
/// capacity is submodular.
pub fn indicator_counterexample(
    capacity: &Capacity,
) -> Option<(Event, Event, ViolationReport)> {
    let submodularity = capacity.check_submodular_exhaustive()?;
    let Witness::Events { a, b } = submodularity.witness else {
        unreachable!("submodularity checker reports event witnesses");
    };
    let n = capacity.n();
    let x = PointFunction::indicator(n, a);
    let y = PointFunction::indicator(n, b);
    let lhs = choquet_layer_cake(capacity, &x.try_add(&y).expect("same length"))
        .expect("dimensions match");
    debug_assert_eq!(lhs, submodularity.lhs);
    let report = ViolationReport::new(
        ViolationKind::Subadditivity,
        Witness::Functions { x, y },
        lhs,
        submodularity.rhs.clone(),
    );
    Some((a, b, report))
}

fn pair_budget(n: usize, max_value: u64, budget: u64) -> Result<(), VerifierError> {
    let required = (max_value as u128 + 1)
        .checked_pow(2 * n as u32)
        .unwrap_or(u128::MAX);
    if required > budget as u128 {
        return Err(VerifierError::BudgetExceeded {
            required,
            budget,
        });
    }
    Ok(())
}

/// Decodes enumeration index `index` into function values, point 0 least
/// significant.
fn decode_function(index: u64, base: u64, n: usize) -> Vec<u64> {
    let mut digits = Vec::with_capacity(n);
    let mut rest = index;
    for _ in 0..n {
        digits.push(rest % base);
        rest /= base;
    }
    digits
}

/// Checks subadditivity for every ordered pair of integer-valued
/// functions with entries in `{0, .., max_value}`, exactly.
///
/// Returns the first violating pair in enumeration order, or `None` when
/// all `(max_value+1)^(2n)` pairs pass. Errors when that count exceeds
/// [`DEFAULT_ENUMERATION_BUDGET`].
pub fn exhaustive_subadditivity(
    capacity: &Capacity,
    max_value: u64,
) -> Result<Option<ViolationReport>, VerifierError> {
    pair_budget(capacity.n(), max_value, DEFAULT_ENUMERATION_BUDGET)?;
    let n = capacity.n();
    let base = max_value + 1;
    let count = base.pow(n as u32);
    let sum_base = 2 * max_value + 1;

    // integrals of every candidate function, then of every pairwise sum
    let functions: Vec<IntFunction> = (0..count)
        .map(|index| IntFunction::new(decode_function(index, base, n)))
        .collect();
    let integrals: Vec<Rational> = functions
        .iter()
        .map(|f| crate::choquet::choquet_integer(capacity, f).expect("dimensions match"))
        .collect();
    let sum_integrals: Vec<Rational> = (0..sum_base.pow(n as u32))
        .map(|index| {
            let f = IntFunction::new(decode_function(index, sum_base, n));
            crate::choquet::choquet_integer(capacity, &f).expect("dimensions match")
        })
        .collect();
    let mut sum_powers = Vec::with_capacity(n);
    let mut power = 1u64;
    for _ in 0..n {
        sum_powers.push(power);
        power *= sum_base;
    }

    for (fi, f) in functions.iter().enumerate() {
        for (gi, g) in functions.iter().enumerate() {
            let sum_index: u64 = f
                .values()
                .iter()
                .zip(g.values())
                .zip(&sum_powers)
                .map(|((a, b), p)| (a + b) * p)
                .sum();
            let lhs = &sum_integrals[sum_index as usize];
            let rhs = &integrals[fi] + &integrals[gi];
            if *lhs > rhs {
                return Ok(Some(ViolationReport::new(
                    ViolationKind::Subadditivity,
                    Witness::Functions {
                        x: f.to_point(),
                        y: g.to_point(),
                    },
                    lhs.clone(),
                    rhs,
                )));
            }
        }
    }
    Ok(None)
}

/// Result of a randomized subadditivity sample, with the fraction of the
/// pair space it covered.
#[derive(Debug, Clone)]
pub struct SampledSubadditivity {
    pub violation: Option<ViolationReport>,
    pub pairs_checked: u64,
    pub total_pairs: u128,
}

impl SampledSubadditivity {
    pub fn coverage(&self) -> f64 {
        if self.total_pairs == 0 {
            return 1.0;
        }
        (self.pairs_checked as f64 / self.total_pairs as f64).min(1.0)
    }
}

/// Randomized fallback for pair spaces beyond the exhaustive budget:
/// samples `samples` uniform pairs of functions with entries in
/// `{0, .., max_value}` and reports the first violation found together
/// with the covered fraction. Deterministic for a fixed seed.
pub fn sampled_subadditivity(
    capacity: &Capacity,
    max_value: u64,
    samples: u64,
    seed: u64,
) -> SampledSubadditivity {
    let n = capacity.n();
    let total_pairs = (max_value as u128 + 1)
        .checked_pow(2 * n as u32)
        .unwrap_or(u128::MAX);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| {
        IntFunction::new((0..n).map(|_| rng.gen_range(0..=max_value)).collect())
    };
    for checked in 0..samples {
        let x = draw(&mut rng);
        let y = draw(&mut rng);
        let lhs = crate::choquet::choquet_integer(capacity, &x.try_add(&y).expect("same length"))
            .expect("dimensions match");
        let rhs = crate::choquet::choquet_integer(capacity, &x).expect("dimensions match")
            + crate::choquet::choquet_integer(capacity, &y).expect("dimensions match");
        if lhs > rhs {
            return SampledSubadditivity {
                violation: Some(ViolationReport::new(
                    ViolationKind::Subadditivity,
                    Witness::Functions {
                        x: x.to_point(),
                        y: y.to_point(),
                    },
                    lhs,
                    rhs,
                )),
                pairs_checked: checked + 1,
                total_pairs,
            };
        }
    }
    SampledSubadditivity {
        violation: None,
        pairs_checked: samples,
        total_pairs,
    }
}

/// One capacity on which the two theorem directions did not line up — a
/// bug witness against the implementation, never against the theorem.
#[derive(Debug, Clone)]
pub struct Disagreement {
    pub index: usize,
    pub capacity: Capacity,
    pub report: ViolationReport,
}

/// Outcome of an equivalence scan over randomly generated capacities.
#[derive(Debug, Clone)]
pub struct ScanReport {
    pub n: usize,
    pub max_value: u64,
    pub capacities_tested: usize,
    pub submodular_count: usize,
    pub agreements: usize,
    pub disagreements: Vec<Disagreement>,
    pub seed: u64,
}

impl ScanReport {
    pub fn is_clean(&self) -> bool {
        self.disagreements.is_empty()
    }
}

impl fmt::Display for ScanReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "scan n={} count={} max-value={} seed={}",
            self.n, self.capacities_tested, self.max_value, self.seed
        )?;
        writeln!(
            f,
            "submodular {}/{}",
            self.submodular_count, self.capacities_tested
        )?;
        write!(
            f,
            "agreements {}/{}",
            self.agreements, self.capacities_tested
        )?;
        for disagreement in &self.disagreements {
            write!(
                f,
                "\ndisagreement at capacity {}: {}",
                disagreement.index, disagreement.report
            )?;
        }
        Ok(())
    }
}

/// Generates `num_capacities` random capacities (alternating the monotone
/// and submodular generators; capacity `i` uses seed `seed + i`) and
/// asserts both theorem directions on each one: a submodular capacity
/// must pass the exhaustive subadditivity enumeration, and a
/// non-submodular one must yield an indicator counterexample.
///
/// Any failed assertion is recorded as a disagreement; the submodularity
/// decision itself comes from the local checker, so a divergence between
/// the two submodularity checkers surfaces here as well.
pub fn equivalence_scan(
    n: usize,
    num_capacities: usize,
    max_value: u64,
    seed: u64,
) -> Result<ScanReport, VerifierError> {
    pair_budget(n, max_value, DEFAULT_ENUMERATION_BUDGET)?;
    let mut submodular_count = 0;
    let mut disagreements = Vec::new();
    for index in 0..num_capacities {
        let capacity_seed = seed.wrapping_add(index as u64);
        let capacity = if index % 2 == 0 {
            random_monotone_capacity(n, capacity_seed)?
        } else {
            random_submodular_capacity(n, capacity_seed)?
        };
        match capacity.check_submodular_local() {
            None => {
                submodular_count += 1;
                if let Some(report) = exhaustive_subadditivity(&capacity, max_value)? {
                    disagreements.push(Disagreement {
                        index,
                        capacity,
                        report,
                    });
                }
            }
            Some(local_report) => {
                if indicator_counterexample(&capacity).is_none() {
                    disagreements.push(Disagreement {
                        index,
                        capacity,
                        report: local_report,
                    });
                }
            }
        }
    }
    let agreements = num_capacities - disagreements.len();
    Ok(ScanReport {
        n,
        max_value,
        capacities_tested: num_capacities,
        submodular_count,
        agreements,
        disagreements,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{cap_add, cap_bad, cap_sub};
    use crate::rational::{rat, rat_int};

    fn pf(values: &[(i64, i64)]) -> PointFunction {
        PointFunction::new(values.iter().map(|&(p, q)| rat(p, q)).collect())
    }

    #[test]
    fn subadditivity_examples() {
        let x = pf(&[(1, 1), (0, 1)]);
        let y = pf(&[(0, 1), (1, 1)]);
        assert!(check_subadditivity(&cap_sub(), &x, &y).unwrap().is_none());

        let report = check_subadditivity(&cap_bad(), &x, &y).unwrap().unwrap();
        assert_eq!(report.lhs, rat_int(1));
        assert_eq!(report.rhs, rat(1, 5));

        let zero = pf(&[(0, 1), (0, 1)]);
        for c in [cap_add(), cap_sub(), cap_bad()] {
            assert!(check_subadditivity(&c, &x, &zero).unwrap().is_none());
        }
    }

    #[test]
    fn convexity_examples() {
        let x = pf(&[(2, 1), (0, 1)]);
        let y = pf(&[(0, 1), (2, 1)]);
        for c in [cap_add(), cap_sub(), cap_bad()] {
            assert!(check_convexity(&c, &x, &y, &rat_int(0)).unwrap().is_none());
            assert!(check_convexity(&c, &x, &y, &rat_int(1)).unwrap().is_none());
        }

        let report = check_convexity(&cap_bad(), &x, &y, &rat(1, 2))
            .unwrap()
            .unwrap();
        assert_eq!(report.lhs, rat_int(1));
        assert_eq!(report.rhs, rat(1, 5));

        assert!(check_convexity(&cap_sub(), &x, &y, &rat(1, 2))
            .unwrap()
            .is_none());
    }

    #[test]
    fn convexity_rejects_bad_lambda() {
        let x = pf(&[(1, 1), (0, 1)]);
        assert!(matches!(
            check_convexity(&cap_sub(), &x, &x, &rat(3, 2)),
            Err(VerifierError::BadLambda { .. })
        ));
        assert!(matches!(
            check_convexity(&cap_sub(), &x, &x, &rat(-1, 2)),
            Err(VerifierError::BadLambda { .. })
        ));
    }

    #[test]
    fn indicator_counterexample_examples() {
        let (a, b, report) = indicator_counterexample(&cap_bad()).unwrap();
        assert_eq!(a, Event::from_mask(1));
        assert_eq!(b, Event::from_mask(2));
        assert_eq!(report.lhs, rat_int(1));
        assert_eq!(report.rhs, rat(1, 5));

        assert!(indicator_counterexample(&cap_sub()).is_none());
        assert!(indicator_counterexample(&cap_add()).is_none());
    }

    #[test]
    fn exhaustive_subadditivity_examples() {
        assert!(exhaustive_subadditivity(&cap_sub(), 3).unwrap().is_none());
        assert!(exhaustive_subadditivity(&cap_bad(), 1).unwrap().is_some());
        for c in [cap_add(), cap_sub(), cap_bad()] {
            assert!(exhaustive_subadditivity(&c, 0).unwrap().is_none());
        }
    }

    #[test]
    fn exhaustive_subadditivity_budget() {
        let c = random_monotone_capacity(6, 1).unwrap();
        assert!(matches!(
            exhaustive_subadditivity(&c, 5),
            Err(VerifierError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn sampled_subadditivity_finds_bad_capacity() {
        let sampled = sampled_subadditivity(&cap_bad(), 1, 200, 7);
        assert!(sampled.violation.is_some());
        let sampled = sampled_subadditivity(&cap_sub(), 3, 200, 7);
        assert!(sampled.violation.is_none());
        assert_eq!(sampled.pairs_checked, 200);
        assert!(sampled.coverage() > 0.0);
    }

    #[test]
    fn equivalence_scan_small() {
        let report = equivalence_scan(2, 40, 2, 11).unwrap();
        assert!(report.is_clean());
        assert_eq!(report.agreements, 40);

        let report = equivalence_scan(1, 10, 3, 1).unwrap();
        assert!(report.is_clean());
        assert_eq!(report.submodular_count, 10);
    }

    #[test]
    fn equivalence_scan_budget() {
        assert!(matches!(
            equivalence_scan(6, 10, 5, 0),
            Err(VerifierError::BudgetExceeded { .. })
        ));
    }
}
