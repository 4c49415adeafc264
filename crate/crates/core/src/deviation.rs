//! Correlation energy and the mean-squared-deviation machinery relating it
//! to an entanglement measure: optimal scaling alpha, residual profiles and
//! their minima in lambda, plus the Simpson quadrature and golden-section
//! search they are built on.

use crate::error::{Error, Result};
use crate::measures::{concurrence_closed_raw, entropy_closed_raw};

const MAX_PANEL_EXP: u32 = 20;
const GOLDEN_TOL: f64 = 1e-6;
const BRACKET_POINTS: usize = 64;

/// Which entanglement measure enters the deviation functional.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureKind {
    Entropy,
    Concurrence,
}

impl MeasureKind {
    /// Closed-form Region I value of the measure at (g, lambda).
    pub fn eval(&self, g: f64, lambda: f64) -> f64 {
        match self {
            MeasureKind::Entropy => entropy_closed_raw(g, lambda),
            MeasureKind::Concurrence => concurrence_closed_raw(g, lambda),
        }
    }
}

/// Location of a residual-profile minimum over the search window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MinLocation {
    /// Interior minimum at the given lambda.
    Interior(f64),
    /// No interior bracket: the profile is monotone over the window (or its
    /// minimum sits on a window edge).
    Monotone,
}

/// Result of minimizing a deviation residual profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviationResult {
    /// Scaling parameter the profile was evaluated at.
    pub alpha: f64,
    pub location: MinLocation,
    pub residual_at_min: f64,
    /// Panels used by the quadrature that produced alpha (0 when alpha was
    /// supplied externally).
    pub integration_panels: u32,
}

impl DeviationResult {
    pub fn lambda_min(&self) -> Option<f64> {
        match self.location {
            MinLocation::Interior(l) => Some(l),
            MinLocation::Monotone => None,
        }
    }
}

/// Quadrature outcome: value and the panel count that reached tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub panels: u32,
}

/// Correlation energy in units of B for g = 1: sqrt(4 + lambda^2) - 2.
pub fn correlation_energy(lambda: f64) -> f64 {
    (4.0 + lambda * lambda).sqrt() - 2.0
}

fn simpson_fixed<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, panels: u32) -> f64 {
    let n = panels as usize;
    let h = (b - a) / n as f64;
    let mut sum = f(a) + f(b);
    for i in 1..n {
        let x = a + h * i as f64;
        sum += f(x) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    sum * h / 3.0
}

/// Composite Simpson with panel doubling until successive estimates agree
/// within tol; errors after 2^20 panels.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<Quadrature> {
    assert!(a < b, "integration bounds must satisfy a < b");
    let mut panels = 2u32;
    let mut prev = simpson_fixed(&f, a, b, panels);
    while panels < (1 << MAX_PANEL_EXP) {
        panels *= 2;
        let cur = simpson_fixed(&f, a, b, panels);
        if (cur - prev).abs() < tol {
            return Ok(Quadrature { value: cur, panels });
        }
        prev = cur;
    }
    Err(Error::QuadratureNotConverged { tol, panels })
}

/// Optimal scaling of the measure against the correlation energy over the
/// window: integral(E_corr * M) / integral(M^2). Positive by construction
/// since both integrands are positive on (0, hi].
pub fn alpha_min(kind: MeasureKind, g: f64, window: (f64, f64)) -> Result<Quadrature> {
    let (lo, hi) = window;
    if !(0.0..).contains(&lo) || lo >= hi {
        return Err(Error::InvalidParams(format!(
            "window [{lo}, {hi}] must satisfy 0 <= lo < hi"
        )));
    }
    let num = integrate(|l| correlation_energy(l) * kind.eval(g, l), lo, hi, 1e-12)?;
    let den = integrate(
        |l| {
            let m = kind.eval(g, l);
            m * m
        },
        lo,
        hi,
        1e-12,
    )?;
    Ok(Quadrature {
        value: num.value / den.value,
        panels: num.panels.max(den.panels),
    })
}

/// Deviation residual E_corr(lambda) - alpha * M(lambda).
pub fn residual(kind: MeasureKind, g: f64, alpha: f64, lambda: f64) -> f64 {
    correlation_energy(lambda) - alpha * kind.eval(g, lambda)
}

fn golden_section<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let inv_phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Locate the interior minimum of lambda -> residual(kind, alpha, lambda)
/// over the window: a uniform 64-point bracket scan followed by
/// golden-section refinement to 1e-6. Tags Monotone when no interior
/// bracket exists.
pub fn minimize_residual(
    kind: MeasureKind,
    g: f64,
    alpha: f64,
    window: (f64, f64),
) -> DeviationResult {
    let (lo, hi) = window;
    let f = |l: f64| residual(kind, g, alpha, l);
    let n = BRACKET_POINTS;
    let vals: Vec<f64> = (0..=n)
        .map(|i| f(lo + (hi - lo) * i as f64 / n as f64))
        .collect();
    let mut bracket = None;
    for i in 1..n {
        if vals[i] < vals[i - 1] && vals[i] <= vals[i + 1] {
            bracket = Some(i);
            break;
        }
    }
    match bracket {
        Some(i) => {
            let step = (hi - lo) / n as f64;
            let a = lo + step * (i - 1) as f64;
            let b = lo + step * (i + 1) as f64;
            let x = golden_section(&f, a, b, GOLDEN_TOL);
            DeviationResult {
                alpha,
                location: MinLocation::Interior(x),
                residual_at_min: f(x),
                integration_panels: 0,
            }
        }
        None => DeviationResult {
            alpha,
            location: MinLocation::Monotone,
            residual_at_min: vals
                .iter()
                .cloned()
                .fold(f64::INFINITY, f64::min),
            integration_panels: 0,
        },
    }
}

/// Full analysis for one measure: optimal alpha over the window, then the
/// residual-profile minimum at that alpha.
pub fn analyze(kind: MeasureKind, g: f64, window: (f64, f64)) -> Result<DeviationResult> {
    let alpha = alpha_min(kind, g, window)?;
    let mut res = minimize_residual(kind, g, alpha.value, window);
    res.integration_panels = alpha.panels;
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn correlation_energy_values() {
        assert_abs_diff_eq!(correlation_energy(0.0), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(correlation_energy(1.0), 5.0f64.sqrt() - 2.0, epsilon = 1e-15);
        // perfect-square radicand: 4 + 8 = 12
        assert_abs_diff_eq!(
            correlation_energy(2.0 * 2.0f64.sqrt()),
            2.0 * 3.0f64.sqrt() - 2.0,
            epsilon = 1e-14
        );
    }

    #[test]
    fn simpson_basics() {
        let q = integrate(|x| x * x, 0.0, 1.0, 1e-13).unwrap();
        assert_abs_diff_eq!(q.value, 1.0 / 3.0, epsilon = 1e-12);

        let q = integrate(|_| 0.0, 0.0, 1.0, 1e-13).unwrap();
        assert_abs_diff_eq!(q.value, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn simpson_correlation_energy_closed_form() {
        // antiderivative of sqrt(4 + x^2) - 2 over [0, 1]:
        // (sqrt5 + 4 asinh(1/2) - 4) / 2
        let expected = (5.0f64.sqrt() + 4.0 * 0.5f64.asinh() - 4.0) / 2.0;
        let q = integrate(correlation_energy, 0.0, 1.0, 1e-12).unwrap();
        assert_abs_diff_eq!(q.value, expected, epsilon = 1e-10);
    }

    #[test]
    fn simpson_reports_divergence() {
        // integrable singularity the endpoint sampling cannot settle on
        let r = integrate(|x| 1.0 / (x + 1e-300), 0.0, 1.0, 1e-12);
        assert!(matches!(r, Err(Error::QuadratureNotConverged { .. })));
    }

    #[test]
    fn alpha_min_matches_reference_magnitudes() {
        let a_s = alpha_min(MeasureKind::Entropy, 1.0, (0.0, 1.0)).unwrap();
        assert_abs_diff_eq!(a_s.value, 0.691217, epsilon = 1e-3);
        assert!(a_s.value > 0.0);

        let a_c = alpha_min(MeasureKind::Concurrence, 1.0, (0.0, 1.0)).unwrap();
        assert_abs_diff_eq!(a_c.value, 0.383249, epsilon = 1e-3);
    }

    #[test]
    fn alpha_of_proportional_measure_is_inverse_scale() {
        // with M = c * E_corr, alpha = int(E*M)/int(M^2) = 1/c
        let c = 2.5;
        let num = integrate(|l| correlation_energy(l) * c * correlation_energy(l), 0.0, 1.0, 1e-12)
            .unwrap();
        let den = integrate(
            |l| (c * correlation_energy(l)).powi(2),
            0.0,
            1.0,
            1e-12,
        )
        .unwrap();
        assert_abs_diff_eq!(num.value / den.value, 1.0 / c, epsilon = 1e-10);
    }

    #[test]
    fn residual_values() {
        assert_abs_diff_eq!(residual(MeasureKind::Entropy, 1.0, 0.7, 0.0), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            residual(MeasureKind::Concurrence, 1.0, 0.383249, 1.0),
            5.0f64.sqrt() - 2.0 - 0.383249 / 5.0f64.sqrt(),
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            residual(MeasureKind::Concurrence, 1.0, 0.383249, 1.0),
            0.06467,
            epsilon = 1e-4
        );
    }

    #[test]
    fn minimize_residual_finds_reference_minima() {
        let a_s = alpha_min(MeasureKind::Entropy, 1.0, (0.0, 1.0)).unwrap();
        let r_s = minimize_residual(MeasureKind::Entropy, 1.0, a_s.value, (0.0, 1.0));
        assert_abs_diff_eq!(r_s.lambda_min().unwrap(), 0.485, epsilon = 5e-3);

        let a_c = alpha_min(MeasureKind::Concurrence, 1.0, (0.0, 1.0)).unwrap();
        let r_c = minimize_residual(MeasureKind::Concurrence, 1.0, a_c.value, (0.0, 1.0));
        assert_abs_diff_eq!(r_c.lambda_min().unwrap(), 0.371, epsilon = 5e-3);
    }

    #[test]
    fn zero_alpha_profile_is_monotone() {
        let r = minimize_residual(MeasureKind::Entropy, 1.0, 0.0, (0.0, 1.0));
        assert_eq!(r.location, MinLocation::Monotone);
    }

    #[test]
    fn functional_is_quadratic_optimal_at_alpha_min() {
        for kind in [MeasureKind::Entropy, MeasureKind::Concurrence] {
            let a = alpha_min(kind, 1.0, (0.0, 1.0)).unwrap().value;
            let functional = |alpha: f64| {
                integrate(
                    |l| residual(kind, 1.0, alpha, l).powi(2),
                    0.0,
                    1.0,
                    1e-12,
                )
                .unwrap()
                .value
            };
            let base = functional(a);
            for delta in [1e-3, 1e-2, 1e-1] {
                assert!(functional(a + delta) > base);
                assert!(functional(a - delta) > base);
            }
        }
    }

    #[test]
    fn relative_deviation_drops_below_ten_percent() {
        let a = alpha_min(MeasureKind::Entropy, 1.0, (0.0, 1.0)).unwrap().value;
        let mut best_over_s = f64::INFINITY;
        let mut best_over_e = f64::INFINITY;
        for i in 0..=40 {
            let l = 0.6 + 0.4 * i as f64 / 40.0;
            let d = residual(MeasureKind::Entropy, 1.0, a, l);
            best_over_s = best_over_s.min((d / MeasureKind::Entropy.eval(1.0, l)).abs());
            best_over_e = best_over_e.min((d / correlation_energy(l)).abs());
        }
        assert!(best_over_s < 0.10);
        assert!(best_over_e < 0.10);
    }

    #[test]
    fn alpha_min_stable_under_refinement() {
        // doubling the panel count past convergence must not move alpha by 1e-8
        let converged = alpha_min(MeasureKind::Entropy, 1.0, (0.0, 1.0)).unwrap();
        let fixed = |panels: u32| {
            let num = simpson_fixed(
                &|l: f64| correlation_energy(l) * MeasureKind::Entropy.eval(1.0, l),
                0.0,
                1.0,
                panels,
            );
            let den = simpson_fixed(
                &|l: f64| MeasureKind::Entropy.eval(1.0, l).powi(2),
                0.0,
                1.0,
                panels,
            );
            num / den
        };
        assert_abs_diff_eq!(fixed(1 << 14), fixed(1 << 16), epsilon = 1e-8);
        assert_abs_diff_eq!(converged.value, fixed(1 << 16), epsilon = 1e-8);
    }

    #[test]
    fn residual_is_affine_in_alpha() {
        for i in 1..10 {
            let l = i as f64 * 0.1;
            let r1 = residual(MeasureKind::Entropy, 1.0, 0.3, l);
            let r2 = residual(MeasureKind::Entropy, 1.0, 0.9, l);
            let mid = residual(MeasureKind::Entropy, 1.0, 0.6, l);
            assert_abs_diff_eq!(r1 + r2, 2.0 * mid, epsilon = 1e-12);
        }
    }
}
