//! Shared capacity fixtures for unit tests (n = 2, masks 0..4).

use crate::capacity::Capacity;
use crate::rational::rat;

pub(crate) fn cap_from(values: &[(i64, i64)]) -> Capacity {
    let n = values.len().trailing_zeros() as usize;
    Capacity::new(n, values.iter().map(|&(p, q)| rat(p, q)).collect()).unwrap()
}

/// The uniform probability measure: additive, submodular with equality.
pub(crate) fn cap_add() -> Capacity {
    cap_from(&[(0, 1), (1, 2), (1, 2), (1, 1)])
}

/// Strictly submodular: 1 + 0 <= 7/10 + 7/10.
pub(crate) fn cap_sub() -> Capacity {
    cap_from(&[(0, 1), (7, 10), (7, 10), (1, 1)])
}

/// Monotone and normalized but not submodular: 1 + 0 > 1/10 + 1/10.
pub(crate) fn cap_bad() -> Capacity {
    cap_from(&[(0, 1), (1, 10), (1, 10), (1, 1)])
}
