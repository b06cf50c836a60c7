use std::f64::consts::PI;

use serde::Serialize;

use crate::circuit::PromiseParameters;
use crate::error::{Error, Result};

/// Default per-round phase-estimation failure probability.
pub const DEFAULT_EPS_PE: f64 = 1.0 / 16.0;

/// Constant `c` in the alternating-measurement length `N = c·r/(a − b)²`.
pub const MW_CONSTANT: f64 = 2.0;

/// Absorbs rounding when a logarithm lands on an integer.
const CEIL_SLACK: f64 = 1e-9;

fn ceil_int(x: f64) -> u64 {
    (x - CEIL_SLACK).ceil().max(0.0) as u64
}

/// Bit counts and query budget for median-boosted phase estimation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PrecisionPlan {
    pub a: f64,
    pub b: f64,
    pub r: usize,
    pub phi_a: f64,
    pub phi_b: f64,
    /// Half the angular gap `(phi_b − phi_a)/2`.
    pub delta_phi: f64,
    /// `(a − b)/(π(√a + √b))`, never above `phi_b − phi_a`.
    pub gap_lower_bound: f64,
    pub n_bits: usize,
    pub eps_pe: f64,
    pub t_bits: usize,
    /// Walk steps per round, `2^t − 1`.
    pub n1: u64,
    /// `r · n1`.
    pub n_total: u64,
    /// Alternating-measurement length `ceil(c·r/(a − b)²)`.
    pub mw_n: u64,
    /// Real-valued budget `10π(√a + √b)/(a − b)`.
    pub walk_bound: f64,
}

impl PrecisionPlan {
    /// Accept iff the median folded phase is strictly below this.
    pub fn threshold(&self) -> f64 {
        (self.phi_a + self.phi_b) / 2.0
    }

    /// `n1 ≤ 4 · walk_bound`; the factor covers the two ceilings.
    pub fn within_relaxed_bound(&self) -> bool {
        self.n1 as f64 <= 4.0 * self.walk_bound
    }
}

/// `arccos(√p)/π` for `p ∈ [0, 1]`.
fn angle(p: f64) -> f64 {
    p.clamp(0.0, 1.0).sqrt().acos() / PI
}

/// Alternating-measurement length for a promise, with constant `c`.
pub fn mw_length(params: &PromiseParameters, c: f64) -> u64 {
    ceil_int(c * params.r as f64 / (params.gap() * params.gap())).max(1)
}

pub fn plan_precision(params: &PromiseParameters, eps_pe: f64) -> Result<PrecisionPlan> {
    if !(eps_pe > 0.0 && eps_pe < 0.5) {
        return Err(Error::InvalidParameter(format!(
            "eps_pe = {eps_pe} outside (0, 1/2)"
        )));
    }
    let PromiseParameters { a, b, r } = *params;
    let phi_a = angle(a);
    let phi_b = angle(b);
    let gap = phi_b - phi_a;
    let gap_lower_bound = (a - b) / (PI * (a.sqrt() + b.sqrt()));
    if !(gap >= gap_lower_bound) {
        return Err(Error::InvalidParameter(format!(
            "angular gap {gap} below its lower bound {gap_lower_bound}"
        )));
    }
    let n_bits = ceil_int((1.0 / gap).log2()) as usize;
    let t_bits = n_bits + ceil_int((2.0 + 1.0 / (2.0 * eps_pe)).log2()) as usize;
    if t_bits >= 63 {
        return Err(Error::InvalidParameter(format!(
            "{t_bits} phase bits requested"
        )));
    }
    let n1 = (1u64 << t_bits) - 1;
    Ok(PrecisionPlan {
        a,
        b,
        r,
        phi_a,
        phi_b,
        delta_phi: gap / 2.0,
        gap_lower_bound,
        n_bits,
        eps_pe,
        t_bits,
        n1,
        n_total: n1 * r as u64,
        mw_n: mw_length(params, MW_CONSTANT),
        walk_bound: 10.0 * PI * (a.sqrt() + b.sqrt()) / (a - b),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_plan() {
        let p = PromiseParameters::new(0.9, 0.5, 6).unwrap();
        let plan = plan_precision(&p, DEFAULT_EPS_PE).unwrap();
        assert!((plan.phi_a - 0.102_416).abs() < 1e-5);
        assert!((plan.phi_b - 0.25).abs() < 1e-15);
        assert_eq!((plan.n_bits, plan.t_bits, plan.n1), (3, 7, 127));
        assert!((plan.walk_bound - 130.05).abs() < 0.01);
        assert!(plan.n1 as f64 <= plan.walk_bound);
        assert_eq!(plan.n_total, 762);
        assert_eq!(plan.mw_n, 75);
        assert!((plan.gap_lower_bound - 0.0769).abs() < 1e-4);
    }

    #[test]
    fn perfect_completeness_has_zero_angle() {
        let p = PromiseParameters::new(1.0, 0.3, 1).unwrap();
        assert_eq!(plan_precision(&p, DEFAULT_EPS_PE).unwrap().phi_a, 0.0);
    }

    #[test]
    fn eps_outside_range_rejected() {
        let p = PromiseParameters::new(0.9, 0.5, 1).unwrap();
        assert!(plan_precision(&p, 0.5).is_err());
        assert!(plan_precision(&p, 0.0).is_err());
    }
}
