//! Machinery for the subadditivity proof: the lattice-set identities, the
//! event decomposition of `{X + Y >= k}`, the submodular halving bound,
//! the unconditional halving identity, and the full induction certificate
//! reducing subadditivity on `{0, .., 2^p}`-valued functions to the
//! submodularity inequality on indicator level sets.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::capacity::{Capacity, Event};
use crate::choquet::{choquet_integer, ChoquetError, IntFunction};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofError {
    #[error("window bound {bound} too small for k = {k}; need bound >= {}", 2 * k + 2)]
    WindowTooSmall { k: u64, bound: u64 },
    #[error(transparent)]
    Choquet(#[from] ChoquetError),
    #[error("capacity is not submodular")]
    NotSubmodular,
    #[error("certificate step `{description}` fails: {lhs} > {rhs}")]
    InvalidStep {
        description: String,
        lhs: Box<Rational>,
        rhs: Box<Rational>,
    },
}

/// A point of the nonnegative integer lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint {
    pub x: u64,
    pub y: u64,
}

impl LatticePoint {
    pub fn new(x: u64, y: u64) -> Self {
        LatticePoint { x, y }
    }
}

/// Membership of `(x, y)` in `A~_k`, the union over `i = 0..=k+1` of
/// `{x >= 2i, y >= 2(k-i)+1}`. Constraints that drop below zero are
/// vacuous on the nonnegative lattice.
pub fn point_in_a_tilde(k: u64, x: u64, y: u64) -> bool {
    (0..=k + 1).any(|i| {
        let y_min = 2 * (k as i64 - i as i64) + 1;
        x >= 2 * i && (y_min <= 0 || y as i64 >= y_min)
    })
}

/// Membership of `(x, y)` in `B~_k`, the union over `i = -1..=k` of
/// `{x >= 2i+1, y >= 2(k-i)}`; the `i = -1` constituent is `{y >= 2k+2}`.
pub fn point_in_b_tilde(k: u64, x: u64, y: u64) -> bool {
    (-1..=k as i64).any(|i| {
        let x_min = 2 * i + 1;
        let y_min = 2 * (k as i64 - i);
        (x_min <= 0 || x as i64 >= x_min) && y as i64 >= y_min
    })
}

fn check_window(k: u64, bound: u64) -> Result<(), ProofError> {
    if bound < 2 * k + 2 {
        return Err(ProofError::WindowTooSmall { k, bound });
    }
    Ok(())
}

/// Enumerates `A~_k` and `B~_k` intersected with the window
/// `[0, bound]^2`, by inserting every window point of each constituent
/// rectangle of the unions (a separate route from the membership
/// predicates, so the two can be cross-checked).
///
/// The window must satisfy `bound >= 2k+2`; since both sets are
/// upward-closed and all their minimal points lie within such a window,
/// the finite enumeration determines the sets completely.
pub fn lemma_sets(
    k: u64,
    bound: u64,
) -> Result<(BTreeSet<LatticePoint>, BTreeSet<LatticePoint>), ProofError> {
    check_window(k, bound)?;
    let mut a_set = BTreeSet::new();
    for i in 0..=k + 1 {
        let x_min = 2 * i;
        let y_min = (2 * (k as i64 - i as i64) + 1).max(0) as u64;
        for x in x_min..=bound {
            for y in y_min..=bound {
                a_set.insert(LatticePoint::new(x, y));
            }
        }
    }
    let mut b_set = BTreeSet::new();
    for i in -1..=k as i64 {
        let x_min = (2 * i + 1).max(0) as u64;
        let y_min = (2 * (k as i64 - i)) as u64;
        for x in x_min..=bound {
            for y in y_min..=bound {
                b_set.insert(LatticePoint::new(x, y));
            }
        }
    }
    Ok((a_set, b_set))
}

/// Checks, within the window `[0, bound]^2`, that
/// `A~_k u B~_k = {x + y >= 2k+1}` and `A~_k n B~_k = {x + y >= 2k+2}`.
///
/// With `bound >= 2k+2` the finite check is conclusive: all four sets are
/// upward-closed with minimal points inside the window.
#[allow(clippy::int_plus_one)] // the comparisons mirror the set definitions
pub fn check_lemma_identities(k: u64, bound: u64) -> Result<bool, ProofError> {
    let (a_set, b_set) = lemma_sets(k, bound)?;
    for x in 0..=bound {
        for y in 0..=bound {
            let point = LatticePoint::new(x, y);
            let in_a = a_set.contains(&point);
            let in_b = b_set.contains(&point);
            if (in_a || in_b) != (x + y >= 2 * k + 1) {
                return Ok(false);
            }
            if (in_a && in_b) != (x + y >= 2 * k + 2) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The events `A_k = {omega : (X(omega), Y(omega)) in A~_k}` and
/// `B_k` likewise: the pointwise reduction of the lattice sets.
pub fn events_ak_bk(
    x: &IntFunction,
    y: &IntFunction,
    k: u64,
) -> Result<(Event, Event), ProofError> {
    if x.len() != y.len() {
        return Err(ProofError::Choquet(ChoquetError::LengthMismatch {
            left: x.len(),
            right: y.len(),
        }));
    }
    let mut a_event = Event::empty();
    let mut b_event = Event::empty();
    for point in 0..x.len() {
        let (vx, vy) = (x.values()[point], y.values()[point]);
        if point_in_a_tilde(k, vx, vy) {
            a_event = a_event.insert(point);
        }
        if point_in_b_tilde(k, vx, vy) {
            b_event = b_event.insert(point);
        }
    }
    Ok((a_event, b_event))
}

/// Checks `A_k u B_k = {X+Y >= 2k+1}` and `A_k n B_k = {X+Y >= 2k+2}`
/// as events.
pub fn check_event_decomposition(
    x: &IntFunction,
    y: &IntFunction,
    k: u64,
) -> Result<bool, ProofError> {
    let (a_event, b_event) = events_ak_bk(x, y, k)?;
    let sum = x.try_add(y)?;
    Ok(a_event.union(b_event) == sum.level_set(2 * k + 1)
        && a_event.intersection(b_event) == sum.level_set(2 * k + 2))
}

fn check_capacity_dims(capacity: &Capacity, function: &IntFunction) -> Result<(), ProofError> {
    if capacity.n() != function.len() {
        return Err(ProofError::Choquet(ChoquetError::DimensionMismatch {
            expected: capacity.n(),
            actual: function.len(),
        }));
    }
    Ok(())
}

/// The submodular halving bound: returns `(lhs, rhs)` with
/// `lhs = int (X+Y) dc` and
/// `rhs = int (floor(X/2) + floor((Y+1)/2)) dc + int (floor((X+1)/2) + floor(Y/2)) dc`,
/// guaranteeing `lhs <= rhs` when the capacity is submodular.
///
/// Refuses non-submodular capacities: the bound is only claimed under
/// submodularity, and an accidentally-true instance would weaken tests.
pub fn halving_bound(
    capacity: &Capacity,
    x: &IntFunction,
    y: &IntFunction,
) -> Result<(Rational, Rational), ProofError> {
    check_capacity_dims(capacity, x)?;
    check_capacity_dims(capacity, y)?;
    if !capacity.is_submodular() {
        return Err(ProofError::NotSubmodular);
    }
    let (lhs, rhs) = halving_bound_unchecked(capacity, x, y)?;
    debug_assert!(lhs <= rhs, "halving bound failed under submodularity");
    Ok((lhs, rhs))
}

fn halving_bound_unchecked(
    capacity: &Capacity,
    x: &IntFunction,
    y: &IntFunction,
) -> Result<(Rational, Rational), ProofError> {
    let lhs = choquet_integer(capacity, &x.try_add(y)?)?;
    let first = choquet_integer(capacity, &x.half_down().try_add(&y.half_up())?)?;
    let second = choquet_integer(capacity, &x.half_up().try_add(&y.half_down())?)?;
    Ok((lhs, first + second))
}

/// The unconditional halving identity: returns
/// `(int floor(X/2) dc, int floor((X+1)/2) dc, int X dc)`;
/// the first two always sum exactly to the third.
pub fn halving_identity(
    capacity: &Capacity,
    x: &IntFunction,
) -> Result<(Rational, Rational, Rational), ProofError> {
    check_capacity_dims(capacity, x)?;
    let down = choquet_integer(capacity, &x.half_down())?;
    let up = choquet_integer(capacity, &x.half_up())?;
    let whole = choquet_integer(capacity, x)?;
    debug_assert_eq!(&down + &up, whole, "halving identity must be exact");
    Ok((down, up, whole))
}

/// One validated inequality in a certificate: `lhs <= rhs` exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalityStep {
    pub description: String,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl InequalityStep {
    fn checked(description: String, lhs: Rational, rhs: Rational) -> Result<Self, ProofError> {
        if lhs > rhs {
            return Err(ProofError::InvalidStep {
                description,
                lhs: Box::new(lhs),
                rhs: Box::new(rhs),
            });
        }
        Ok(InequalityStep {
            description,
            lhs,
            rhs,
        })
    }

    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs
    }
}

impl fmt::Display for InequalityStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} <= {}", self.description, self.lhs, self.rhs)
    }
}

/// A fully validated chain of inequalities proving
/// `int (X+Y) dc <= int X dc + int Y dc` for one concrete input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InductionCertificate {
    /// Smallest `p` with all values of `X` and `Y` at most `2^p`.
    pub depth: u32,
    pub steps: Vec<InequalityStep>,
    pub final_lhs: Rational,
    pub final_rhs: Rational,
}

impl InductionCertificate {
    /// Re-validates every step and the final inequality.
    pub fn verify(&self) -> bool {
        self.steps.iter().all(InequalityStep::holds)
            && self.final_lhs <= self.final_rhs
            && self
                .steps
                .last()
                .is_some_and(|last| last.lhs == self.final_lhs && last.rhs == self.final_rhs)
    }
}

impl fmt::Display for InductionCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "certificate depth={} steps={}",
            self.depth,
            self.steps.len()
        )?;
        for step in &self.steps {
            writeln!(f, "{step}")?;
        }
        write!(f, "final: {} <= {}", self.final_lhs, self.final_rhs)
    }
}

/// Smallest `p >= 0` with `value <= 2^p`.
fn smallest_power_exponent(value: u64) -> u32 {
    let mut p = 0;
    while (1u64 << p) < value {
        p += 1;
    }
    p
}

/// Builds the full induction certificate for
/// `int (X+Y) dc <= int X dc + int Y dc`.
///
/// The recursion re-derives the depth per call: at each level with values
/// above 1 it emits the halving-bound step, recurses on the two halved
/// pairs, recombines through the halving identities, and concludes; at
/// depth 0 the single step is the submodularity inequality on the level
/// sets `A = {X = 1}` and `B = {Y = 1}` (if one function is identically 0
/// the step degenerates to `c(A) <= c(A)` and is emitted anyway).
pub fn induction_certificate(
    capacity: &Capacity,
    x: &IntFunction,
    y: &IntFunction,
) -> Result<InductionCertificate, ProofError> {
    check_capacity_dims(capacity, x)?;
    check_capacity_dims(capacity, y)?;
    if !capacity.is_submodular() {
        return Err(ProofError::NotSubmodular);
    }
    let depth = smallest_power_exponent(x.max_value().max(y.max_value()));
    let mut steps = Vec::new();
    let (final_lhs, final_rhs) = certify(capacity, x, y, &mut steps)?;
    Ok(InductionCertificate {
        depth,
        steps,
        final_lhs,
        final_rhs,
    })
}

/// Emits the steps for one `(X, Y)` node and returns the proved
/// inequality `(int (X+Y) dc, int X dc + int Y dc)`.
fn certify(
    capacity: &Capacity,
    x: &IntFunction,
    y: &IntFunction,
    steps: &mut Vec<InequalityStep>,
) -> Result<(Rational, Rational), ProofError> {
    let p = smallest_power_exponent(x.max_value().max(y.max_value()));
    if p == 0 {
        // X, Y are {0,1}-valued: the inequality is submodularity itself
        let a = x.level_set(1);
        let b = y.level_set(1);
        let lhs = capacity.value(a.union(b)) + capacity.value(a.intersection(b));
        let rhs = capacity.value(a) + capacity.value(b);
        let step = InequalityStep::checked(
            format!("base X={x} Y={y} A={a} B={b}"),
            lhs.clone(),
            rhs.clone(),
        )?;
        steps.push(step);
        debug_assert_eq!(lhs, choquet_integer(capacity, &x.try_add(y)?)?);
        return Ok((lhs, rhs));
    }

    let x_down = x.half_down();
    let x_up = x.half_up();
    let y_down = y.half_down();
    let y_up = y.half_up();

    let (lhs, bound_rhs) = halving_bound_unchecked(capacity, x, y)?;
    steps.push(InequalityStep::checked(
        format!("halving bound X={x} Y={y}"),
        lhs.clone(),
        bound_rhs.clone(),
    )?);

    let (first_lhs, first_rhs) = certify(capacity, &x_down, &y_up, steps)?;
    let (second_lhs, second_rhs) = certify(capacity, &x_up, &y_down, steps)?;
    debug_assert_eq!(&first_lhs + &second_lhs, bound_rhs);

    let combined_rhs = &first_rhs + &second_rhs;
    steps.push(InequalityStep::checked(
        format!("combine X={x} Y={y}"),
        lhs.clone(),
        combined_rhs.clone(),
    )?);

    let (x_down_int, x_up_int, x_int) = halving_identity(capacity, x)?;
    steps.push(InequalityStep::checked(
        format!("halving identity X={x}"),
        &x_down_int + &x_up_int,
        x_int.clone(),
    )?);
    let (y_down_int, y_up_int, y_int) = halving_identity(capacity, y)?;
    steps.push(InequalityStep::checked(
        format!("halving identity Y={y}"),
        &y_down_int + &y_up_int,
        y_int.clone(),
    )?);

    let final_rhs = &x_int + &y_int;
    debug_assert_eq!(combined_rhs, final_rhs);
    steps.push(InequalityStep::checked(
        format!("conclude X={x} Y={y}"),
        lhs.clone(),
        final_rhs.clone(),
    )?);
    Ok((lhs, final_rhs))
}
