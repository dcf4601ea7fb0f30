use std::io::Write;

use super::run::{SweepRow, TrialResult};
use crate::error::Result;

const COLUMNS: [&str; 15] = [
    "trial",
    "mechanism",
    "stat",
    "estimate",
    "raw_estimate",
    "ground_truth",
    "relative_error",
    "mean_upload_bits",
    "mean_download_bits",
    "total_upload_bits",
    "total_download_bits",
    "users_clipped",
    "terms_zeroed",
    "clamped",
    "seed",
];

/// Per-trial rows as CSV. A `wall_ms` column is added only when `timing` is set.
pub fn write_trials_csv<W: Write>(out: W, rows: &[TrialResult], timing: bool) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<&str> = COLUMNS.to_vec();
    if timing {
        header.push("wall_ms");
    }
    w.write_record(&header)?;
    for r in rows {
        let mut rec = vec![
            r.trial.to_string(),
            r.mechanism.to_string(),
            r.stat.to_string(),
            format!("{:?}", r.estimate),
            format!("{:?}", r.raw_estimate),
            r.ground_truth.to_string(),
            format!("{:?}", r.relative_error),
            format!("{:?}", r.mean_upload_bits),
            format!("{:?}", r.mean_download_bits),
            r.total_upload_bits.to_string(),
            r.total_download_bits.to_string(),
            r.users_clipped.to_string(),
            r.terms_zeroed.to_string(),
            r.clamped.to_string(),
            r.seed.to_string(),
        ];
        if timing {
            rec.push(r.wall_ms.map(|t| format!("{t:.3}")).unwrap_or_default());
        }
        w.write_record(&rec)?;
    }
    w.flush().map_err(|e| csv::Error::from(e))?;
    Ok(())
}

/// Long-format sweep table keyed by `(mechanism, axis value)`.
pub fn write_sweep_csv<W: Write>(out: W, rows: &[SweepRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "mechanism",
        "axis",
        "value",
        "trials",
        "ground_truth",
        "mean_estimate",
        "mean_relative_error",
        "median_relative_error",
        "l2_error",
        "mean_upload_bits",
        "mean_download_bits",
        "error",
    ])?;
    for r in rows {
        let mut rec = vec![r.mechanism.to_string(), format!("{:?}", r.axis), format!("{:?}", r.value)];
        match &r.summary {
            Some(s) => rec.extend([
                s.trials.to_string(),
                s.ground_truth.to_string(),
                format!("{:?}", s.mean_estimate),
                format!("{:?}", s.mean_relative_error),
                format!("{:?}", s.median_relative_error),
                format!("{:?}", s.l2_error),
                format!("{:?}", s.mean_upload_bits),
                format!("{:?}", s.mean_download_bits),
                String::new(),
            ]),
            None => {
                rec.extend(std::iter::repeat(String::new()).take(8));
                rec.push(r.error.clone().unwrap_or_default());
            }
        }
        w.write_record(&rec)?;
    }
    w.flush().map_err(|e| csv::Error::from(e))?;
    Ok(())
}
