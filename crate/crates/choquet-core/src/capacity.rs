//! Capacities (monotone normalized set functions) on a finite ground set,
//! submodularity checking, and seeded random generation.
//!
//! A capacity on `Omega = {0, .., n-1}` is stored as `2^n` exact rationals
//! indexed by subset bitmask. Submodularity is the inequality
//! `c(A u B) + c(A n B) <= c(A) + c(B)` for all pairs of subsets.

use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::choquet::PointFunction;
use crate::rational::{rat_u64, Rational};

/// Largest supported ground-set size; `2^n` values must stay desk-scale.
pub const MAX_GROUND_SET: usize = 20;

/// Denominator used for all random rational draws.
pub const RANDOM_DENOMINATOR: u64 = 1000;

const MAX_GENERATION_RETRIES: usize = 64;

/// A subset of the ground set, stored as a bitmask over element indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Event {
    mask: u32,
}

impl Event {
    pub fn from_mask(mask: u32) -> Self {
        Event { mask }
    }

    pub fn empty() -> Self {
        Event { mask: 0 }
    }

    /// The full ground set on `n` elements.
    pub fn full(n: usize) -> Self {
        Event {
            mask: ((1u64 << n) - 1) as u32,
        }
    }

    pub fn singleton(element: usize) -> Self {
        Event {
            mask: 1u32 << element,
        }
    }

    pub fn mask(self) -> u32 {
        self.mask
    }

    pub fn contains(self, element: usize) -> bool {
        self.mask >> element & 1 == 1
    }

    pub fn union(self, other: Event) -> Event {
        Event {
            mask: self.mask | other.mask,
        }
    }

    pub fn intersection(self, other: Event) -> Event {
        Event {
            mask: self.mask & other.mask,
        }
    }

    pub fn insert(self, element: usize) -> Event {
        Event {
            mask: self.mask | 1 << element,
        }
    }

    pub fn is_empty(self) -> bool {
        self.mask == 0
    }

    pub fn len(self) -> usize {
        self.mask.count_ones() as usize
    }

    /// Iterator over the element indices in the set, ascending.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let mask = self.mask;
        (0..32).filter(move |i| mask >> i & 1 == 1)
    }
}

impl fmt::Display for Event {
    /// Renders as `{0,2}`; the empty set as `{}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (pos, element) in self.elements().enumerate() {
            if pos > 0 {
                write!(f, ",")?;
            }
            write!(f, "{element}")?;
        }
        write!(f, "}}")
    }
}

/// Which inequality a [`ViolationReport`] witnesses the failure of.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    Submodularity,
    Subadditivity,
    Convexity,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ViolationKind::Submodularity => write!(f, "submodularity"),
            ViolationKind::Subadditivity => write!(f, "subadditivity"),
            ViolationKind::Convexity => write!(f, "convexity"),
        }
    }
}

/// The concrete witness attached to a violation.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    /// A pair of sets violating `c(A u B) + c(A n B) <= c(A) + c(B)`.
    Events { a: Event, b: Event },
    /// A pair of functions violating subadditivity of the integral.
    Functions { x: PointFunction, y: PointFunction },
    /// A convex combination violating convexity of the integral.
    Mixture {
        x: PointFunction,
        y: PointFunction,
        lambda: Rational,
    },
}

/// Exact evidence that an inequality fails: `lhs > rhs` strictly.
#[derive(Debug, Clone, PartialEq)]
pub struct ViolationReport {
    pub kind: ViolationKind,
    pub witness: Witness,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl ViolationReport {
    /// A report exists only for a genuine strict failure.
    pub fn new(kind: ViolationKind, witness: Witness, lhs: Rational, rhs: Rational) -> Self {
        assert!(
            lhs > rhs,
            "violation report requires lhs > rhs, got {lhs} <= {rhs}"
        );
        ViolationReport {
            kind,
            witness,
            lhs,
            rhs,
        }
    }

    /// The exact amount by which the inequality fails.
    pub fn gap(&self) -> Rational {
        &self.lhs - &self.rhs
    }
}

impl fmt::Display for ViolationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violation: ", self.kind)?;
        match &self.witness {
            Witness::Events { a, b } => write!(f, "A = {a}, B = {b}: ")?,
            Witness::Functions { x, y } => write!(f, "X = {x}, Y = {y}: ")?,
            Witness::Mixture { x, y, lambda } => {
                write!(f, "X = {x}, Y = {y}, lambda = {lambda}: ")?
            }
        }
        write!(f, "{} > {}", self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CapacityError {
    #[error("ground-set size {n} out of range (1..={MAX_GROUND_SET})")]
    BadGroundSetSize { n: usize },
    #[error("expected {expected} values for n = {n}, got {actual}")]
    WrongLength {
        n: usize,
        expected: usize,
        actual: usize,
    },
    #[error("not normalized: c({event}) = {value}, expected {expected}")]
    NotNormalized {
        event: Event,
        value: String,
        expected: String,
    },
    #[error("not monotone: c({below}) = {below_value} > {above_value} = c({above})")]
    NotMonotone {
        below: Event,
        above: Event,
        below_value: String,
        above_value: String,
    },
    #[error("degenerate draw: the pre-normalization value of the full set was 0 after {MAX_GENERATION_RETRIES} retries")]
    DegenerateDraw,
    #[error("failed to generate a submodular capacity within {MAX_GENERATION_RETRIES} retries")]
    GenerationFailed,
}

/// A monotone, normalized set function `c: 2^Omega -> [0, 1]`.
///
/// Immutable after construction; all operations are pure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Capacity {
    n: usize,
    values: Vec<Rational>,
}

impl Capacity {
    /// Validates and builds a capacity from its `2^n` subset values.
    ///
    /// Checks length, normalization (`c(empty) = 0`, `c(Omega) = 1`), and
    /// monotonicity on every cover pair `A` vs `A u {i}`; full
    /// subset-monotonicity follows by chaining cover pairs.
    pub fn new(n: usize, values: Vec<Rational>) -> Result<Self, CapacityError> {
        if n == 0 || n > MAX_GROUND_SET {
            return Err(CapacityError::BadGroundSetSize { n });
        }
        let size = 1usize << n;
        if values.len() != size {
            return Err(CapacityError::WrongLength {
                n,
                expected: size,
                actual: values.len(),
            });
        }
        if !values[0].is_zero() {
            return Err(CapacityError::NotNormalized {
                event: Event::empty(),
                value: values[0].to_string(),
                expected: "0".to_string(),
            });
        }
        for above in 0..size {
            for i in 0..n {
                if above >> i & 1 == 1 {
                    let below = above & !(1 << i);
                    if values[below] > values[above] {
                        return Err(CapacityError::NotMonotone {
                            below: Event::from_mask(below as u32),
                            above: Event::from_mask(above as u32),
                            below_value: values[below].to_string(),
                            above_value: values[above].to_string(),
                        });
                    }
                }
            }
        }
        if !values[size - 1].is_one() {
            return Err(CapacityError::NotNormalized {
                event: Event::full(n),
                value: values[size - 1].to_string(),
                expected: "1".to_string(),
            });
        }
        // Range [0, 1] is implied by normalization plus monotonicity.
        assert!(values
            .iter()
            .all(|v| !v.is_negative() && *v <= Rational::one()));
        Ok(Capacity { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of subsets, `2^n`.
    pub fn num_subsets(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// `c(A)` for the event `A`.
    pub fn value(&self, event: Event) -> &Rational {
        &self.values[event.mask() as usize]
    }

    pub fn full_event(&self) -> Event {
        Event::full(self.n)
    }

    /// All subsets of the ground set in mask order.
    pub fn events(&self) -> impl Iterator<Item = Event> {
        (0..self.num_subsets() as u32).map(Event::from_mask)
    }

    /// Checks `c(A u B) + c(A n B) <= c(A) + c(B)` over every subset pair.
    ///
    /// Returns the lexicographically first violating pair `(A, B)` in mask
    /// order, or `None` when the capacity is submodular. Cost `O(4^n)`.
    pub fn check_submodular_exhaustive(&self) -> Option<ViolationReport> {
        let size = self.num_subsets();
        for a in 0..size {
            for b in 0..size {
                let lhs = &self.values[a | b] + &self.values[a & b];
                let rhs = &self.values[a] + &self.values[b];
                if lhs > rhs {
                    return Some(ViolationReport::new(
                        ViolationKind::Submodularity,
                        Witness::Events {
                            a: Event::from_mask(a as u32),
                            b: Event::from_mask(b as u32),
                        },
                        lhs,
                        rhs,
                    ));
                }
            }
        }
        None
    }

    /// Pairwise-exchange submodularity check: for every `A` and distinct
    /// `i, j` outside `A`, `c(A u {i}) + c(A u {j}) >= c(A u {i,j}) + c(A)`.
    ///
    /// Accepts exactly the same capacities as
    /// [`check_submodular_exhaustive`], in `O(2^n * n^2)` instead of
    /// `O(4^n)`; the reported witness pair may differ. The witness is the
    /// pair `(A u {i}, A u {j})`, which is a genuine violating pair of the
    /// subset-pair inequality.
    pub fn check_submodular_local(&self) -> Option<ViolationReport> {
        let size = self.num_subsets();
        for base in 0..size {
            for i in 0..self.n {
                if base >> i & 1 == 1 {
                    continue;
                }
                for j in (i + 1)..self.n {
                    if base >> j & 1 == 1 {
                        continue;
                    }
                    let with_i = base | 1 << i;
                    let with_j = base | 1 << j;
                    let both = base | 1 << i | 1 << j;
                    let lhs = &self.values[both] + &self.values[base];
                    let rhs = &self.values[with_i] + &self.values[with_j];
                    if lhs > rhs {
                        return Some(ViolationReport::new(
                            ViolationKind::Submodularity,
                            Witness::Events {
                                a: Event::from_mask(with_i as u32),
                                b: Event::from_mask(with_j as u32),
                            },
                            lhs,
                            rhs,
                        ));
                    }
                }
            }
        }
        None
    }

    pub fn is_submodular(&self) -> bool {
        self.check_submodular_local().is_none()
    }
}

/// Masks of `{0, .., 2^n - 1}` ordered by popcount, ties by mask value.
fn masks_by_popcount(n: usize) -> Vec<u32> {
    let mut order: Vec<u32> = (1..1u32 << n).collect();
    order.sort_by_key(|m| (m.count_ones(), *m));
    order
}

/// Deterministic random monotone capacity.
///
/// Draws i.i.d. rationals `k / 1000` per nonempty subset, sweeps masks in
/// increasing popcount order taking the max with all covers below, then
/// rescales so the full set maps to 1. Retries internally on a zero draw
/// for the full set.
pub fn random_monotone_capacity(n: usize, seed: u64) -> Result<Capacity, CapacityError> {
    if n == 0 || n > MAX_GROUND_SET {
        return Err(CapacityError::BadGroundSetSize { n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let size = 1usize << n;
    let order = masks_by_popcount(n);
    for _ in 0..MAX_GENERATION_RETRIES {
        let mut values = vec![Rational::zero(); size];
        for &mask in &order {
            let draw = rng.gen_range(0..=RANDOM_DENOMINATOR);
            let mut value = Rational::new(draw.into(), RANDOM_DENOMINATOR.into());
            for i in 0..n {
                if mask >> i & 1 == 1 {
                    let below = &values[(mask & !(1 << i)) as usize];
                    if *below > value {
                        value = below.clone();
                    }
                }
            }
            values[mask as usize] = value;
        }
        let total = values[size - 1].clone();
        if total.is_zero() {
            continue;
        }
        for value in values.iter_mut().skip(1) {
            *value = &*value / &total;
        }
        return Capacity::new(n, values);
    }
    Err(CapacityError::DegenerateDraw)
}

/// Number of chords of the random piecewise-linear concave distortion.
const DISTORTION_SEGMENTS: u64 = 8;

/// Evaluates the piecewise-linear function through `(j/m, points[j])`
/// at `t` in `[0, 1]`, exactly.
fn eval_piecewise_linear(points: &[Rational], t: &Rational) -> Rational {
    let segments = points.len() - 1;
    let scaled = t * rat_u64(segments as u64);
    let mut index = scaled.floor().to_integer();
    if index >= (segments as i64).into() {
        index = (segments as i64 - 1).into();
    }
    let j: usize = index.try_into().expect("segment index in range");
    let offset = &scaled - rat_u64(j as u64);
    &points[j] + offset * (&points[j + 1] - &points[j])
}

/// Deterministic random submodular capacity.
///
/// Applies a random piecewise-linear concave distortion `g` (descending
/// random chord slopes, `g(0) = 0`, `g(1) = 1`) to a random rational
/// probability vector, then verifies the result with the exhaustive
/// checker and retries on failure rather than trusting the construction.
pub fn random_submodular_capacity(n: usize, seed: u64) -> Result<Capacity, CapacityError> {
    if n == 0 || n > MAX_GROUND_SET {
        return Err(CapacityError::BadGroundSetSize { n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let size = 1usize << n;
    for _ in 0..MAX_GENERATION_RETRIES {
        let weights: Vec<u64> = (0..n)
            .map(|_| rng.gen_range(1..=RANDOM_DENOMINATOR))
            .collect();
        let total: u64 = weights.iter().sum();

        let mut slopes: Vec<u64> = (0..DISTORTION_SEGMENTS)
            .map(|_| rng.gen_range(0..=RANDOM_DENOMINATOR))
            .collect();
        slopes.sort_unstable_by(|a, b| b.cmp(a));
        let slope_total: u64 = slopes.iter().sum();
        if slope_total == 0 {
            continue;
        }
        let mut points = Vec::with_capacity(slopes.len() + 1);
        points.push(Rational::zero());
        let mut acc = 0u64;
        for slope in &slopes {
            acc += slope;
            points.push(Rational::new(acc.into(), slope_total.into()));
        }

        let mut values = Vec::with_capacity(size);
        for mask in 0..size {
            let weight: u64 = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| weights[i])
                .sum();
            let mu = Rational::new(weight.into(), total.into());
            values.push(eval_piecewise_linear(&points, &mu));
        }
        let capacity = Capacity::new(n, values)?;
        if capacity.check_submodular_exhaustive().is_none() {
            return Ok(capacity);
        }
    }
    Err(CapacityError::GenerationFailed)
}
