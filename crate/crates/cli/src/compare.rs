use serde::Serialize;

use qma_amp::circuit::PromiseParameters;
use qma_amp::walk::{mw_length, plan_precision};
use qma_amp::Result;

/// Planned query counts of both methods for one promise.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompareRow {
    pub a: f64,
    pub b: f64,
    pub gap: f64,
    pub t_bits: usize,
    /// `r(2^t − 1)` uses of `V` by median-boosted phase estimation.
    pub fast_queries: u64,
    /// Alternating-measurement length `N`.
    pub mw_length: u64,
    /// `ceil(N/2)` uses of `V` by the alternating measurements.
    pub mw_queries: u64,
    pub fast_accept_rate: Option<f64>,
    pub mw_accept_rate: Option<f64>,
}

pub fn compare_row(params: &PromiseParameters, eps_pe: f64, mw_c: f64) -> Result<CompareRow> {
    let plan = plan_precision(params, eps_pe)?;
    let n = mw_length(params, mw_c);
    Ok(CompareRow {
        a: params.a,
        b: params.b,
        gap: params.gap(),
        t_bits: plan.t_bits,
        fast_queries: plan.n_total,
        mw_length: n,
        mw_queries: n.div_ceil(2),
        fast_accept_rate: None,
        mw_accept_rate: None,
    })
}

/// Rows for `b = a − gap` over `gaps`, at fixed `a` and `r`.
pub fn sweep(a: f64, r: usize, gaps: &[f64], eps_pe: f64, mw_c: f64) -> Result<Vec<CompareRow>> {
    gaps.iter()
        .map(|g| compare_row(&PromiseParameters::new(a, a - g, r)?, eps_pe, mw_c))
        .collect()
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Slopes of fast and baseline query counts against `1/gap`.
pub fn sweep_slopes(rows: &[CompareRow]) -> (f64, f64) {
    let inv: Vec<f64> = rows.iter().map(|r| 1.0 / r.gap).collect();
    let fast: Vec<f64> = rows.iter().map(|r| r.fast_queries as f64).collect();
    let mw: Vec<f64> = rows.iter().map(|r| r.mw_length as f64).collect();
    (loglog_slope(&inv, &fast), loglog_slope(&inv, &mw))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_row() {
        let p = PromiseParameters::new(0.9, 0.5, 6).unwrap();
        let row = compare_row(&p, 1.0 / 16.0, 2.0).unwrap();
        assert_eq!((row.fast_queries, row.mw_length, row.mw_queries), (762, 75, 38));
    }

    #[test]
    fn slope_of_power_law() {
        let xs = [1.0, 2.0, 4.0];
        let ys = [3.0, 12.0, 48.0];
        assert!((loglog_slope(&xs, &ys) - 2.0).abs() < 1e-12);
    }
}
