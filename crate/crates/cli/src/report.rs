use std::io::Write;

use serde::Serialize;

/// One CSV line per trial. Column order is fixed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportRow {
    pub trial: usize,
    pub verdict: &'static str,
    /// Median folded phase for phase estimation, transition count for the
    /// alternating-measurement baseline.
    pub statistic: f64,
    pub queries_v: u64,
    pub queries_vdag: u64,
    /// Empty unless timing was requested, so that reports stay reproducible.
    pub wall_ms: Option<f64>,
    pub seed: u64,
}

pub fn write_rows<W: Write, S: Serialize>(out: W, rows: &[S]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Accept rate and mean `V` queries.
pub fn summarize(rows: &[ReportRow]) -> (f64, f64) {
    if rows.is_empty() {
        return (0.0, 0.0);
    }
    let n = rows.len() as f64;
    let accepts = rows.iter().filter(|r| r.verdict == "accept").count() as f64;
    let queries: f64 = rows.iter().map(|r| r.queries_v as f64).sum();
    (accepts / n, queries / n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_empty_timing() {
        let rows = vec![ReportRow {
            trial: 0,
            verdict: "accept",
            statistic: 0.125,
            queries_v: 762,
            queries_vdag: 762,
            wall_ms: None,
            seed: 9,
        }];
        let mut buf = Vec::new();
        write_rows(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "trial,verdict,statistic,queries_v,queries_vdag,wall_ms,seed\n0,accept,0.125,762,762,,9\n"
        );
        assert_eq!(summarize(&rows), (1.0, 762.0));
    }
}
