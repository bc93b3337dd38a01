//! Exact Choquet integral evaluation.
//!
//! Two independent evaluators ship and are cross-tested: the layer-cake
//! form (the definition, integrating `c(X > x)` over exact breakpoint
//! intervals) and the sorted-levels form (the Lovasz-extension sum). A
//! third evaluator specializes to nonnegative integer-valued functions,
//! and the dyadic approximation `(1/n) * integral(floor(nX))` comes with
//! its exact error bracket.

use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::capacity::{Capacity, Event};
use crate::rational::{rat_u64, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChoquetError {
    #[error("function has {actual} entries, capacity ground set has {expected}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("function lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("dyadic approximation requires a nonnegative function")]
    NegativeInput,
    #[error("dyadic approximation requires n >= 1")]
    ZeroSubdivision,
    #[error("scaled value does not fit an unsigned 64-bit integer")]
    ValueTooLarge,
}

/// A real-valued function on the ground set: one exact rational per point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointFunction {
    values: Vec<Rational>,
}

impl PointFunction {
    pub fn new(values: Vec<Rational>) -> Self {
        PointFunction { values }
    }

    pub fn constant(n: usize, value: Rational) -> Self {
        PointFunction {
            values: vec![value; n],
        }
    }

    /// The indicator function of `event` on `n` points.
    pub fn indicator(n: usize, event: Event) -> Self {
        PointFunction {
            values: (0..n)
                .map(|i| {
                    if event.contains(i) {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, point: usize) -> &Rational {
        &self.values[point]
    }

    /// `max_omega |X(omega)|`.
    pub fn sup_norm(&self) -> Rational {
        self.values
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Returns `(X + ||X||, ||X||)`; the first component is entrywise >= 0.
    pub fn shift_nonnegative(&self) -> (PointFunction, Rational) {
        let norm = self.sup_norm();
        (self.add_constant(&norm), norm)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|v| !v.is_negative())
    }

    pub fn add_constant(&self, constant: &Rational) -> PointFunction {
        PointFunction {
            values: self.values.iter().map(|v| v + constant).collect(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> PointFunction {
        PointFunction {
            values: self.values.iter().map(|v| v * factor).collect(),
        }
    }

    pub fn try_add(&self, other: &PointFunction) -> Result<PointFunction, ChoquetError> {
        if self.len() != other.len() {
            return Err(ChoquetError::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(PointFunction {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Entrywise `X <= Y`.
    pub fn le(&self, other: &PointFunction) -> bool {
        self.len() == other.len() && self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    /// The event `{X >= threshold}`.
    pub fn level_set_ge(&self, threshold: &Rational) -> Event {
        let mut event = Event::empty();
        for (i, v) in self.values.iter().enumerate() {
            if v >= threshold {
                event = event.insert(i);
            }
        }
        event
    }
}

impl fmt::Display for PointFunction {
    /// Renders as `(2,1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// A function taking nonnegative integer values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntFunction {
    values: Vec<u64>,
}

impl IntFunction {
    pub fn new(values: Vec<u64>) -> Self {
        IntFunction { values }
    }

    pub fn zero(n: usize) -> Self {
        IntFunction { values: vec![0; n] }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn max_value(&self) -> u64 {
        self.values.iter().copied().max().unwrap_or(0)
    }

    pub fn to_point(&self) -> PointFunction {
        PointFunction {
            values: self.values.iter().map(|&v| rat_u64(v)).collect(),
        }
    }

    pub fn try_add(&self, other: &IntFunction) -> Result<IntFunction, ChoquetError> {
        if self.len() != other.len() {
            return Err(ChoquetError::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(IntFunction {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Entrywise `floor(X / 2)`.
    pub fn half_down(&self) -> IntFunction {
        IntFunction {
            values: self.values.iter().map(|v| v / 2).collect(),
        }
    }

    /// Entrywise `floor((X + 1) / 2)`, i.e. the rounded-up half.
    pub fn half_up(&self) -> IntFunction {
        IntFunction {
            values: self.values.iter().map(|v| v.div_ceil(2)).collect(),
        }
    }

    /// The event `{X >= level}`.
    pub fn level_set(&self, level: u64) -> Event {
        let mut event = Event::empty();
        for (i, &v) in self.values.iter().enumerate() {
            if v >= level {
                event = event.insert(i);
            }
        }
        event
    }
}

impl fmt::Display for IntFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

fn check_dims(capacity: &Capacity, len: usize) -> Result<(), ChoquetError> {
    if capacity.n() != len {
        return Err(ChoquetError::DimensionMismatch {
            expected: capacity.n(),
            actual: len,
        });
    }
    Ok(())
}

/// The Choquet integral by its layer-cake definition,
/// `int_{-inf}^0 [c(X > x) - 1] dx + int_0^inf c(X > x) dx`, exactly.
///
/// Between consecutive breakpoints (the distinct values of `X` together
/// with 0) the integrand is constant, so the integral is a finite sum of
/// width-times-capacity terms. Negative values go through the first
/// integral directly; no pre-shifting.
pub fn choquet_layer_cake(
    capacity: &Capacity,
    function: &PointFunction,
) -> Result<Rational, ChoquetError> {
    check_dims(capacity, function.len())?;
    let mut breakpoints: Vec<Rational> = function.values().to_vec();
    breakpoints.push(Rational::zero());
    breakpoints.sort();
    breakpoints.dedup();

    let mut total = Rational::zero();
    for window in breakpoints.windows(2) {
        let (lo, hi) = (&window[0], &window[1]);
        // on (lo, hi) the level set {X > x} is exactly {X >= hi}
        let level = function.level_set_ge(hi);
        let width = hi - lo;
        let c_value = capacity.value(level);
        if hi.is_positive() {
            total += width * c_value;
        } else {
            total += width * (c_value - rat_u64(1));
        }
    }
    Ok(total)
}

/// The Choquet integral by the sorted-levels (Lovasz extension) form:
/// with points sorted by decreasing value and `S_i` the top-`i` set,
/// `sum_i X_(i) * (c(S_i) - c(S_{i-1}))`.
///
/// Ties are broken by point index; the result does not depend on the
/// tie-break since only level sets matter.
pub fn choquet_sorted(
    capacity: &Capacity,
    function: &PointFunction,
) -> Result<Rational, ChoquetError> {
    check_dims(capacity, function.len())?;
    let mut order: Vec<usize> = (0..function.len()).collect();
    order.sort_by(|&a, &b| function.value(b).cmp(function.value(a)).then(a.cmp(&b)));

    let mut total = Rational::zero();
    let mut prefix = Event::empty();
    let mut previous = Rational::zero(); // c(S_0) = c(empty) = 0
    for &point in &order {
        prefix = prefix.insert(point);
        let current = capacity.value(prefix).clone();
        total += function.value(point) * (&current - &previous);
        previous = current;
    }
    Ok(total)
}

/// The Choquet integral of a nonnegative integer-valued function as the
/// finite sum `sum_{k=1}^{max X} c(X >= k)`.
pub fn choquet_integer(
    capacity: &Capacity,
    function: &IntFunction,
) -> Result<Rational, ChoquetError> {
    check_dims(capacity, function.len())?;
    let mut total = Rational::zero();
    for k in 1..=function.max_value() {
        total += capacity.value(function.level_set(k));
    }
    Ok(total)
}

/// Dyadic approximation of the integral of a nonnegative function:
/// returns `(approx, error_low)` where
/// `approx = (1/n) * integral(floor(nX)) dc` and
/// `error_low = integral(X) dc - approx` lies in `[0, 1/n]` exactly.
pub fn dyadic_approximation(
    capacity: &Capacity,
    function: &PointFunction,
    subdivisions: u64,
) -> Result<(Rational, Rational), ChoquetError> {
    check_dims(capacity, function.len())?;
    if subdivisions == 0 {
        return Err(ChoquetError::ZeroSubdivision);
    }
    if !function.is_nonnegative() {
        return Err(ChoquetError::NegativeInput);
    }
    let factor = rat_u64(subdivisions);
    let floored = IntFunction::new(
        function
            .values()
            .iter()
            .map(|v| {
                (v * &factor)
                    .floor()
                    .to_integer()
                    .try_into()
                    .map_err(|_| ChoquetError::ValueTooLarge)
            })
            .collect::<Result<Vec<u64>, _>>()?,
    );
    let approx = choquet_integer(capacity, &floored)? / &factor;
    let exact = choquet_layer_cake(capacity, function)?;
    let error_low = exact - &approx;
    Ok((approx, error_low))
}
