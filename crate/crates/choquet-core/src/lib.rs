//! Exact toolkit for capacities on finite ground sets: Choquet integral
//! evaluation, submodularity decisions, and machine-checked certificates
//! that submodularity yields subadditivity (equivalently convexity) of
//! the integral.
//!
//! All arithmetic is over arbitrary-precision rationals; every decision
//! and every reported witness is exact.

pub mod capacity;
pub mod choquet;
pub mod format;
pub mod proof_kit;
pub mod rational;
pub mod verifier;

#[cfg(test)]
pub(crate) mod fixtures;

pub use capacity::{
    random_monotone_capacity, random_submodular_capacity, Capacity, CapacityError, Event,
    ViolationKind, ViolationReport, Witness,
};
pub use choquet::{
    choquet_integer, choquet_layer_cake, choquet_sorted, dyadic_approximation, ChoquetError,
    IntFunction, PointFunction,
};
pub use format::{
    parse_capacity, parse_int_function, parse_point_function, serialize_capacity,
    serialize_int_function, serialize_point_function, ParseError,
};
pub use proof_kit::{
    check_event_decomposition, check_lemma_identities, events_ak_bk, halving_bound,
    halving_identity, induction_certificate, lemma_sets, point_in_a_tilde, point_in_b_tilde,
    InductionCertificate, InequalityStep, LatticePoint, ProofError,
};
pub use rational::{format_rational, parse_rational, rat, rat_int, rat_u64, Rational};
pub use verifier::{
    check_convexity, check_subadditivity, equivalence_scan, exhaustive_subadditivity,
    indicator_counterexample, sampled_subadditivity, Disagreement, SampledSubadditivity,
    ScanReport, VerifierError, DEFAULT_ENUMERATION_BUDGET,
};
