//! Pretzel tuples, mutation orbits and certification of the mutant family.

mod certify;
mod orbit;
mod tuple;

pub use certify::{
    certify, q_threshold, q_threshold_with, volume_bounds, CertificationMode, CertificationReport, V_OCT,
};
pub use orbit::{
    closure_orbit, enumerate_mutants, mutant_count_formula, orbit_state_count, MutationGenerators, MutationKind,
    MAX_ORBIT_LEN, ORBIT_STATE_LIMIT,
};
pub use tuple::{canonical_form, mutate, validate, PretzelTuple, Violation};
