//! Witness preparation by reverse phase estimation against a filter state,
//! and exact-phase verification for claims with a finite binary expansion.

mod amplify;
mod filter;
mod prepare;
mod qma1;

pub use amplify::{
    amplify_marked, amplify_zero_register, grover_iterate, AmplificationSchedule, AmplifiedState,
    ZeroRegisterAmplification,
};
pub use filter::{dyadic_numerator, make_filter_state, reverse_pe_extract, FilterState};
pub use prepare::{prepare_witness, WitnessCandidate, WitnessSearch};
pub use qma1::{qma1_verify, Qma1Outcome};
