//! Physical realization of the model: the Herring-Flicker distance-dependent
//! exchange coupling J(r), the pullback of the lambda-domain deviation
//! minimum to equilibrium internuclear distances, and (B, r) contour grids
//! of the minimized concurrence deviation.
//!
//! Distances are in Bohr radii, energies in Rydberg.

use crate::deviation::{alpha_min, minimize_residual, residual, MeasureKind, MinLocation};
use crate::error::{Error, Result};

/// J(r) = amplitude * r^power * exp(-decay * r), in Ry with r in Bohr radii.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingModel {
    pub amplitude: f64,
    pub power: f64,
    pub decay: f64,
}

pub const HERRING_FLICKER: CouplingModel = CouplingModel {
    amplitude: 1.641,
    power: 2.5,
    decay: 2.0,
};

impl CouplingModel {
    pub fn eval(&self, r: f64) -> Result<f64> {
        if r < 0.0 {
            return Err(Error::NegativeDistance(r));
        }
        Ok(self.amplitude * r.powf(self.power) * (-self.decay * r).exp())
    }

    /// Stationary point of J, analytically at r = power/decay, and J there.
    pub fn max_location(&self) -> (f64, f64) {
        let r_max = self.power / self.decay;
        (r_max, self.eval(r_max).expect("r_max >= 0"))
    }
}

/// Herring-Flicker coupling J(r) = 1.641 r^{5/2} e^{-2r} Ry.
pub fn j_of_r(r: f64) -> Result<f64> {
    HERRING_FLICKER.eval(r)
}

/// (r_max, J(r_max)) for the Herring-Flicker coupling; r_max = 1.25.
pub fn j_max_location() -> (f64, f64) {
    HERRING_FLICKER.max_location()
}

/// Shape of an equilibrium-length scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanKind {
    /// Two minima straddling r_max: the target lambda is reachable on both
    /// flanks of J.
    TwoMinima,
    /// The residual minimum lies beyond the reachable coupling; the single
    /// equilibrium sits at r_max.
    SingleAtJMax,
    /// The residual profile had no interior minimum in the lambda window.
    None,
}

/// Equilibrium distances where J(r)/B hits the deviation-residual minimum.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumScan {
    pub b_field: f64,
    pub target_lambda: f64,
    pub roots: Vec<f64>,
    pub kind: ScanKind,
}

const BISECT_TOL: f64 = 1e-10;
const R_CEILING: f64 = 10.0;

fn bisect<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> f64 {
    let mut fa = f(a);
    debug_assert!(fa * f(b) <= 0.0);
    while b - a > BISECT_TOL {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fa * fm <= 0.0 {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    0.5 * (a + b)
}

/// Find the equilibrium internuclear distances for the given measure and
/// field: the lambda-domain residual minimum pulled back through J(r) = B*lambda.
pub fn equilibrium_lengths(kind: MeasureKind, b_field: f64) -> Result<EquilibriumScan> {
    if b_field <= 0.0 {
        return Err(Error::InvalidParams(format!(
            "b_field = {b_field} must be > 0"
        )));
    }
    let window = (0.0, 1.0);
    let alpha = alpha_min(kind, 1.0, window)?;
    let profile = minimize_residual(kind, 1.0, alpha.value, window);
    let lambda_min = match profile.location {
        MinLocation::Interior(l) => l,
        MinLocation::Monotone => {
            return Ok(EquilibriumScan {
                b_field,
                target_lambda: f64::NAN,
                roots: vec![],
                kind: ScanKind::None,
            })
        }
    };
    let (r_max, j_max) = j_max_location();
    let target_j = lambda_min * b_field;
    if target_j > j_max {
        return Ok(EquilibriumScan {
            b_field,
            target_lambda: lambda_min,
            roots: vec![r_max],
            kind: ScanKind::SingleAtJMax,
        });
    }
    let f = |r: f64| j_of_r(r).expect("r >= 0") - target_j;
    let r_lo = bisect(f, 0.01, r_max);
    let r_hi = bisect(f, r_max, R_CEILING);
    Ok(EquilibriumScan {
        b_field,
        target_lambda: lambda_min,
        roots: vec![r_lo, r_hi],
        kind: ScanKind::TwoMinima,
    })
}

/// (B, r) grid of the minimized concurrence deviation.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourGrid {
    pub b_values: Vec<f64>,
    pub r_values: Vec<f64>,
    /// Row-major, rows indexed by r, columns by B.
    pub values: Vec<f64>,
}

impl ContourGrid {
    pub fn at(&self, ir: usize, ib: usize) -> f64 {
        self.values[ir * self.b_values.len() + ib]
    }
}

/// Evaluate residual(Concurrence, alpha'(B), J(r)/B) over the grid; the
/// optimal alpha' is recomputed per B column over the lambda window [0, 1].
pub fn contour_grid(
    b_range: (f64, f64),
    r_range: (f64, f64),
    nb: usize,
    nr: usize,
) -> Result<ContourGrid> {
    if nb < 2 || nr < 2 {
        return Err(Error::InvalidParams(format!(
            "grid sizes nb = {nb}, nr = {nr} must both be >= 2"
        )));
    }
    if b_range.0 <= 0.0 || b_range.0 >= b_range.1 || r_range.0 < 0.0 || r_range.0 >= r_range.1 {
        return Err(Error::InvalidParams(
            "ranges must be positive and increasing".into(),
        ));
    }
    let b_values: Vec<f64> = (0..nb)
        .map(|i| b_range.0 + (b_range.1 - b_range.0) * i as f64 / (nb - 1) as f64)
        .collect();
    let r_values: Vec<f64> = (0..nr)
        .map(|j| r_range.0 + (r_range.1 - r_range.0) * j as f64 / (nr - 1) as f64)
        .collect();
    let alphas: Vec<f64> = b_values
        .iter()
        .map(|_| alpha_min(MeasureKind::Concurrence, 1.0, (0.0, 1.0)).map(|q| q.value))
        .collect::<Result<_>>()?;
    let mut values = Vec::with_capacity(nb * nr);
    for &r in &r_values {
        let j = j_of_r(r)?;
        for (ib, &b) in b_values.iter().enumerate() {
            values.push(residual(MeasureKind::Concurrence, 1.0, alphas[ib], j / b));
        }
    }
    Ok(ContourGrid {
        b_values,
        r_values,
        values,
    })
}
