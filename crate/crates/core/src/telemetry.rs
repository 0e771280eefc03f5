//! Flight-log ingestion and lagged sign correlation between the control
//! signal and the roll rate.
//!
//! The rate channel, not the roll angle, is what carries the control
//! sign: a held command integrates into an ever-growing angle, which
//! destroys stationarity. Logs use a minimal CSV schema, header
//! `t,ctrl,roll_deg`, comma separators, decimal points, LF output
//! (CR-LF tolerated on input).

use std::io::BufRead;

use thiserror::Error;

use crate::sim::RollResponseRow;

pub const LOG_HEADER: &str = "t,ctrl,roll_deg";

#[derive(Debug, Error, PartialEq)]
pub enum TelemetryError {
    #[error("empty log: no data rows")]
    EmptyLog,
    #[error("missing or bad header: expected '{LOG_HEADER}', got '{0}'")]
    BadHeader(String),
    #[error("malformed data row {row}: {message}")]
    MalformedRow { row: usize, message: String },
    #[error("non-monotone time at data row {row}: t = {t} after t = {prev}")]
    NonMonotoneTime { row: usize, t: f64, prev: f64 },
    #[error("log read error: {0}")]
    Io(String),
    #[error("insufficient duration: {duration} s of data, need more than {required} s (4 x max_lag)")]
    InsufficientDuration { duration: f64, required: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// One log sample. `ctrl` is the normalized control signal in [-1, 1],
/// positive meaning left outer wing up / right outer wing down;
/// `roll_deg` is positive right-wing-down.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogRecord {
    pub t: f64,
    pub ctrl: f64,
    pub roll_deg: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorrelationSign {
    Positive,
    Negative,
    Indeterminate,
}

impl std::fmt::Display for CorrelationSign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CorrelationSign::Positive => "+",
            CorrelationSign::Negative => "-",
            CorrelationSign::Indeterminate => "indeterminate",
        })
    }
}

/// Result of the lag scan: the lag maximizing |r| and the Pearson r
/// there. The sign is reported as indeterminate below |r| = 0.2 or with
/// fewer than 32 overlapping samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationReport {
    pub best_lag: f64,
    pub pearson_r_at_best_lag: f64,
    pub sign: CorrelationSign,
    pub n_samples: usize,
}

/// Strict parse of the CSV log schema. Time must be non-decreasing; any
/// malformed row aborts with its data-row number (1-based, header not
/// counted).
pub fn parse_log(reader: impl BufRead) -> Result<Vec<LogRecord>, TelemetryError> {
    let mut lines = reader.lines();
    let header = match lines.next() {
        None => return Err(TelemetryError::EmptyLog),
        Some(Err(e)) => return Err(TelemetryError::Io(e.to_string())),
        Some(Ok(line)) => line,
    };
    let trimmed = header.trim_end_matches('\r');
    if trimmed != LOG_HEADER {
        return Err(TelemetryError::BadHeader(trimmed.to_string()));
    }

    let mut records: Vec<LogRecord> = Vec::new();
    for (idx, line) in lines.enumerate() {
        let row = idx + 1;
        let line = line.map_err(|e| TelemetryError::Io(e.to_string()))?;
        let line = line.trim_end_matches('\r');
        if line.is_empty() {
            return Err(TelemetryError::MalformedRow { row, message: "blank line".into() });
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(TelemetryError::MalformedRow {
                row,
                message: format!("expected 3 comma-separated fields, got {}", fields.len()),
            });
        }
        let mut values = [0.0f64; 3];
        for (i, (field, name)) in fields.iter().zip(["t", "ctrl", "roll_deg"]).enumerate() {
            let v: f64 = field.trim().parse().map_err(|_| TelemetryError::MalformedRow {
                row,
                message: format!("field '{name}' is not a number: '{field}'"),
            })?;
            if !v.is_finite() {
                return Err(TelemetryError::MalformedRow {
                    row,
                    message: format!("field '{name}' is not finite"),
                });
            }
            values[i] = v;
        }
        if let Some(prev) = records.last() {
            if values[0] < prev.t {
                return Err(TelemetryError::NonMonotoneTime { row, t: values[0], prev: prev.t });
            }
        }
        records.push(LogRecord { t: values[0], ctrl: values[1], roll_deg: values[2] });
    }
    if records.is_empty() {
        return Err(TelemetryError::EmptyLog);
    }
    Ok(records)
}

fn interp_channel(records: &[LogRecord], pick: impl Fn(&LogRecord) -> f64, grid: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(grid.len());
    let mut j = 0usize;
    for &t in grid {
        while j + 1 < records.len() - 1 && records[j + 1].t <= t {
            j += 1;
        }
        let (a, b) = (&records[j], &records[j + 1]);
        let dt = b.t - a.t;
        let v = if dt <= 0.0 {
            pick(a)
        } else {
            let w = ((t - a.t) / dt).clamp(0.0, 1.0);
            pick(a) * (1.0 - w) + pick(b) * w
        };
        out.push(v);
    }
    out
}

fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (&a, &b) in x.iter().zip(y) {
        let dx = a - mx;
        let dy = b - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx <= 0.0 || syy <= 0.0 {
        0.0
    } else {
        sxy / (sxx.sqrt() * syy.sqrt())
    }
}

/// Resample both channels to a uniform grid, differentiate the roll angle
/// into a rate by central differences, and scan the Pearson correlation
/// of `ctrl(t)` against `rate(t + lag)` over `lag` in `[0, max_lag]`.
pub fn correlate(
    records: &[LogRecord],
    max_lag: f64,
    resample_dt: f64,
) -> Result<CorrelationReport, TelemetryError> {
    if !(resample_dt > 0.0) {
        return Err(TelemetryError::InvalidParameter("resample_dt must be > 0".into()));
    }
    if max_lag < 0.0 {
        return Err(TelemetryError::InvalidParameter("max_lag must be >= 0".into()));
    }
    if records.len() < 2 {
        return Err(TelemetryError::InsufficientDuration {
            duration: 0.0,
            required: 4.0 * max_lag,
        });
    }
    let duration = records.last().unwrap().t - records[0].t;
    if duration <= 4.0 * max_lag || duration < 2.0 * resample_dt {
        return Err(TelemetryError::InsufficientDuration {
            duration,
            required: (4.0 * max_lag).max(2.0 * resample_dt),
        });
    }

    let n = (duration / resample_dt).floor() as usize + 1;
    let grid: Vec<f64> = (0..n).map(|k| records[0].t + k as f64 * resample_dt).collect();
    let ctrl = interp_channel(records, |r| r.ctrl, &grid);
    let roll = interp_channel(records, |r| r.roll_deg, &grid);

    // rate by central differences, defined on the interior points
    let rate: Vec<f64> =
        (1..n - 1).map(|i| (roll[i + 1] - roll[i - 1]) / (2.0 * resample_dt)).collect();
    let ctrl_interior = &ctrl[1..n - 1];
    let m = rate.len();

    let max_k = ((max_lag / resample_dt).floor() as usize).min(m.saturating_sub(2));
    let mut best = (0.0f64, 0usize, m);
    for k in 0..=max_k {
        let x = &ctrl_interior[..m - k];
        let y = &rate[k..];
        if x.len() < 2 {
            break;
        }
        let r = pearson(x, y);
        if r.abs() > best.0.abs() {
            best = (r, k, x.len());
        }
    }
    let (r, k, n_samples) = best;
    let sign = if r.abs() < 0.2 || n_samples < 32 {
        CorrelationSign::Indeterminate
    } else if r > 0.0 {
        CorrelationSign::Positive
    } else {
        CorrelationSign::Negative
    };
    Ok(CorrelationReport {
        best_lag: k as f64 * resample_dt,
        pearson_r_at_best_lag: r,
        sign,
        n_samples,
    })
}

/// Render a roll-response series in the log schema. The control channel
/// is the commanded twist normalized by its largest magnitude.
pub fn synth_log(rows: &[RollResponseRow]) -> String {
    let max_delta = rows.iter().map(|r| r.delta_a.abs()).fold(0.0f64, f64::max);
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(LOG_HEADER);
    out.push('\n');
    for r in rows {
        let ctrl = if max_delta > 0.0 { r.delta_a / max_delta } else { 0.0 };
        out.push_str(&format!(
            "{:.12e},{:.12e},{:.12e}\n",
            r.t,
            ctrl,
            r.roll_angle.to_degrees()
        ));
    }
    out
}
