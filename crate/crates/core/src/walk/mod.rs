//! Two-reflection walk `W = F₁F₀`, phase estimation of its eigenphases, and
//! median-boosted amplification.

mod amplify;
mod operator;
mod phase;
mod plan;

pub use amplify::{fast_amplify, lower_median, median_fail_bound, Decision, Verdict};
pub use operator::{apply_reflection, apply_walk, QueryCounter, Reflection, WalkOperator};
pub use phase::{
    fold_phase, phase_distribution, phase_estimate, phase_wires, PhaseSample,
};
pub(crate) use phase::check_phase_width;
pub use plan::{mw_length, plan_precision, PrecisionPlan, DEFAULT_EPS_PE, MW_CONSTANT};
