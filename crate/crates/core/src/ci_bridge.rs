//! Quantum-chemistry comparison side: the CISD reduced entropy from
//! excitation coefficients, the closed form S(E_corr) and its small-E
//! expansion, ingestion of external (R, E_corr, S) series, rescaling over
//! the R axis, branch splitting, and A*E + B*E*ln(E) least-squares fits.

use std::path::Path;

use crate::deviation::correlation_energy;
use crate::error::{Error, Result};
use crate::measures::entropy_closed_raw;

/// Configuration-interaction excitation coefficients of a normalized
/// two-electron wave function.
#[derive(Debug, Clone, PartialEq)]
pub struct CisdCoefficients {
    pub c0: f64,
    pub singles: Vec<f64>,
    pub doubles_mixed: Vec<f64>,
    pub doubles_paired: Vec<f64>,
}

impl CisdCoefficients {
    fn norm_sq(&self) -> f64 {
        self.c0 * self.c0
            + self.singles.iter().map(|c| c * c).sum::<f64>()
            + self.doubles_mixed.iter().map(|c| c * c).sum::<f64>()
            + self.doubles_paired.iter().map(|c| c * c).sum::<f64>()
    }
}

/// One ingested sample: internuclear distance in Angstrom, correlation
/// energy, entropy in bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleRow {
    pub r: f64,
    pub e_corr: f64,
    pub entropy: f64,
}

/// Ordered (R, E_corr, S) series from an external CI calculation.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSeries {
    rows: Vec<SampleRow>,
}

impl SampleSeries {
    /// Validate and wrap rows: strictly increasing R, entropy in [0, 1],
    /// finite correlation energy.
    pub fn new(rows: Vec<SampleRow>) -> Result<Self> {
        for (i, row) in rows.iter().enumerate() {
            if !row.r.is_finite() || !row.e_corr.is_finite() {
                return Err(Error::InvariantViolation {
                    row: i,
                    message: "non-finite value".into(),
                });
            }
            if !(0.0..=1.0).contains(&row.entropy) {
                return Err(Error::InvariantViolation {
                    row: i,
                    message: format!("entropy {} outside [0, 1]", row.entropy),
                });
            }
            if i > 0 && row.r <= rows[i - 1].r {
                return Err(Error::InvariantViolation {
                    row: i,
                    message: format!(
                        "abscissa {} not strictly greater than previous {}",
                        row.r,
                        rows[i - 1].r
                    ),
                });
            }
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[SampleRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Two-parameter fit S = a*E + b*E*ln(E).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogLinearFit {
    pub a_coef: f64,
    pub b_coef: f64,
    pub rss: f64,
}

/// Which integral normalizes the rescaling parameter over the R axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Denominator {
    /// integral(S^2 dR), consistent with the lambda-domain functional.
    SquaredMeasure,
    /// integral(S dR), as the R-domain formula is usually printed.
    PlainMeasure,
}

/// CISD reduced-state entropy: with p the total single plus mixed-double
/// weight and q the reference plus paired-double weight, the binary entropy
/// -p log2 p - q log2 q.
pub fn cisd_entropy(c: &CisdCoefficients) -> Result<f64> {
    let dev = (c.norm_sq() - 1.0).abs();
    if dev > 1e-8 {
        return Err(Error::NotNormalized { dev });
    }
    let p = c.singles.iter().map(|x| x * x).sum::<f64>()
        + c.doubles_mixed.iter().map(|x| x * x).sum::<f64>();
    Ok(crate::measures::binary_entropy(p.clamp(0.0, 1.0)))
}

/// Entropy as a function of the correlation energy for g = 1:
/// -[e ln(e/(2(e+2))) + (e+4) ln((e+4)/(2(e+2)))] / ((e+2) ln 4).
/// Agrees with the Region I entropy under e = sqrt(4 + lambda^2) - 2.
pub fn s_of_ecorr(e: f64) -> Result<f64> {
    if e <= 0.0 {
        return Err(Error::NonPositive(e));
    }
    let ln4 = 4.0f64.ln();
    let num = e * (e / (2.0 * (e + 2.0))).ln() + (e + 4.0) * ((e + 4.0) / (2.0 * (e + 2.0))).ln();
    Ok(-num / ((e + 2.0) * ln4))
}

/// Small-E expansion coefficients (a, b) of s_of_ecorr in the basis
/// {e, e ln e}, fitted on a 200-point geometric grid over [1e-6, 1e-2].
/// The fit is weighted by 1/e (equivalently, it fits s/e against {1, ln e}),
/// which pins the logarithmic term at the origin instead of letting the
/// large-e end of the grid dominate.
pub fn expansion_coefficients() -> (f64, f64) {
    let n = 200;
    let (lo, hi) = (1e-6f64, 1e-2f64);
    let ratio = (hi / lo).powf(1.0 / (n - 1) as f64);
    // normal equations for s/e = a + b ln e
    let (mut s11, mut s1x, mut sxx, mut s1y, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    let mut e = lo;
    for _ in 0..n {
        let x = e.ln();
        let y = s_of_ecorr(e).expect("e > 0") / e;
        s11 += 1.0;
        s1x += x;
        sxx += x * x;
        s1y += y;
        sxy += x * y;
        e *= ratio;
    }
    let det = s11 * sxx - s1x * s1x;
    let a = (s1y * sxx - sxy * s1x) / det;
    let b = (s11 * sxy - s1x * s1y) / det;
    (a, b)
}

/// Parse a CSV series with header `R_angstrom,E_corr,S_vN`; lines starting
/// with `#` are comments.
pub fn ingest_series<P: AsRef<Path>>(path: P) -> Result<SampleSeries> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path.as_ref())
        .map_err(|e| Error::Parse {
            line: 0,
            message: e.to_string(),
        })?;
    {
        let headers = reader.headers().map_err(|e| Error::Parse {
            line: 1,
            message: e.to_string(),
        })?;
        let expected = ["R_angstrom", "E_corr", "S_vN"];
        let got: Vec<&str> = headers.iter().collect();
        if got != expected {
            return Err(Error::Parse {
                line: 1,
                message: format!("expected header {expected:?}, got {got:?}"),
            });
        }
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse {
            line: 0,
            message: e.to_string(),
        })?;
        let line = record
            .position()
            .map(|p| p.line() as usize)
            .unwrap_or(0);
        let parse_field = |idx: usize| -> Result<f64> {
            record
                .get(idx)
                .ok_or_else(|| Error::Parse {
                    line,
                    message: format!("missing field {idx}"),
                })?
                .parse::<f64>()
                .map_err(|e| Error::Parse {
                    line,
                    message: e.to_string(),
                })
        };
        rows.push(SampleRow {
            r: parse_field(0)?,
            e_corr: parse_field(1)?,
            entropy: parse_field(2)?,
        });
    }
    SampleSeries::new(rows)
}

fn trapezoid(xs: &[f64], ys: &[f64]) -> f64 {
    xs.windows(2)
        .zip(ys.windows(2))
        .map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1]))
        .sum()
}

/// Rescaling parameter over the R axis by trapezoid quadrature:
/// integral(E_corr * S dR) over integral(S^2 dR) or integral(S dR).
pub fn alpha_over_r(s: &SampleSeries, denominator: Denominator) -> Result<f64> {
    if s.len() < 3 {
        return Err(Error::TooFewSamples {
            need: 3,
            got: s.len(),
        });
    }
    let xs: Vec<f64> = s.rows().iter().map(|r| r.r).collect();
    let num_y: Vec<f64> = s.rows().iter().map(|r| r.e_corr * r.entropy).collect();
    let den_y: Vec<f64> = s
        .rows()
        .iter()
        .map(|r| match denominator {
            Denominator::SquaredMeasure => r.entropy * r.entropy,
            Denominator::PlainMeasure => r.entropy,
        })
        .collect();
    Ok(trapezoid(&xs, &num_y) / trapezoid(&xs, &den_y))
}

/// Longest prefix (in R order) over which E_corr is strictly increasing.
pub fn split_ascending_branch(s: &SampleSeries) -> SampleSeries {
    let rows = s.rows();
    let mut end = 1;
    while end < rows.len() && rows[end].e_corr > rows[end - 1].e_corr {
        end += 1;
    }
    SampleSeries {
        rows: rows[..end].to_vec(),
    }
}

/// Exact linear least squares of entropy against {e, e ln e} on the
/// (e_corr, entropy) pairs of the series.
pub fn fit_log_linear(s: &SampleSeries) -> Result<LogLinearFit> {
    if s.len() < 2 {
        return Err(Error::TooFewSamples {
            need: 2,
            got: s.len(),
        });
    }
    for (i, row) in s.rows().iter().enumerate() {
        if row.e_corr <= 0.0 {
            return Err(Error::InvariantViolation {
                row: i,
                message: format!("e_corr {} must be > 0 for the log fit", row.e_corr),
            });
        }
    }
    let (mut s11, mut s12, mut s22, mut b1, mut b2) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for row in s.rows() {
        let u = row.e_corr;
        let v = row.e_corr * row.e_corr.ln();
        s11 += u * u;
        s12 += u * v;
        s22 += v * v;
        b1 += u * row.entropy;
        b2 += v * row.entropy;
    }
    let det = s11 * s22 - s12 * s12;
    let scale = (s11 * s22).max(f64::MIN_POSITIVE);
    if det.abs() <= 1e-14 * scale {
        return Err(Error::SingularBasis);
    }
    let a = (b1 * s22 - b2 * s12) / det;
    let b = (s11 * b2 - s12 * b1) / det;
    let rss = s
        .rows()
        .iter()
        .map(|row| {
            let pred = a * row.e_corr + b * row.e_corr * row.e_corr.ln();
            (row.entropy - pred).powi(2)
        })
        .sum();
    Ok(LogLinearFit {
        a_coef: a,
        b_coef: b,
        rss,
    })
}

/// Synthetic series generated from the g = 1 closed forms: lambda sampled
/// uniformly over the window is mapped to a fake linear R axis. Labeled
/// synthetic; stands in for external CI data in tests and examples.
pub fn synthetic_series(n: usize, lambda_window: (f64, f64)) -> SampleSeries {
    let (lo, hi) = lambda_window;
    let rows = (0..n)
        .map(|i| {
            let lambda = lo + (hi - lo) * i as f64 / (n - 1) as f64;
            SampleRow {
                r: 0.5 + i as f64 * 0.1,
                e_corr: correlation_energy(lambda),
                entropy: entropy_closed_raw(1.0, lambda),
            }
        })
        .collect();
    SampleSeries { rows }
}
