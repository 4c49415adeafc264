//! Two-qubit anisotropic XY/Ising model in a transverse field: Hamiltonian
//! construction in units of the field, region classification of the coupling,
//! and the exact ground state in closed form.
//!
//! Basis ordering is |00>, |01>, |10>, |11> with the first qubit as the
//! slowest index, which makes the Hamiltonian's anti-diagonal coupling
//! blocks explicit.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qlinalg::{kron, pauli, ComplexMatrix};

const BOUNDARY_TOL: f64 = 1e-12;

/// Model parameters: anisotropy g in [0,1], coupling lambda = J/B >= 0,
/// and the field strength in Rydberg (only used for unit conversion).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub g: f64,
    pub lambda: f64,
    pub b_field: f64,
}

impl ModelParams {
    pub fn new(g: f64, lambda: f64, b_field: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&g) || !g.is_finite() {
            return Err(Error::InvalidParams(format!("g = {g} must be in [0, 1]")));
        }
        if lambda < 0.0 || !lambda.is_finite() {
            return Err(Error::InvalidParams(format!(
                "lambda = {lambda} must be >= 0"
            )));
        }
        if b_field <= 0.0 || !b_field.is_finite() {
            return Err(Error::InvalidParams(format!(
                "b_field = {b_field} must be > 0"
            )));
        }
        Ok(Self { g, lambda, b_field })
    }

    /// Shorthand with the default field of 0.5 Ry.
    pub fn dimensionless(g: f64, lambda: f64) -> Result<Self> {
        Self::new(g, lambda, 0.5)
    }
}

/// Coupling regime of the ground state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionTag {
    RegionI,
    RegionII,
    Boundary,
}

/// Normalized 4-component state vector of the two-qubit system.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState4 {
    amplitudes: [Complex64; 4],
}

impl PureState4 {
    /// Normalize the given amplitudes; panics on the zero vector.
    pub fn normalized(raw: [Complex64; 4]) -> Self {
        let norm = raw.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        assert!(norm > 0.0, "cannot normalize the zero vector");
        let inv = Complex64::new(1.0 / norm, 0.0);
        Self {
            amplitudes: [raw[0] * inv, raw[1] * inv, raw[2] * inv, raw[3] * inv],
        }
    }

    pub fn amplitudes(&self) -> &[Complex64; 4] {
        &self.amplitudes
    }

    /// |<self|other>|, the fidelity-like overlap magnitude.
    pub fn overlap(&self, other: &[Complex64]) -> f64 {
        self.amplitudes
            .iter()
            .zip(other)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            .norm()
    }

    pub fn projector(&self) -> ComplexMatrix {
        crate::qlinalg::projector(&self.amplitudes)
    }
}

/// Upper boundary of Region I in lambda; infinite for the Ising limit g = 1.
pub fn region_boundary(g: f64) -> f64 {
    let d = 1.0 - g * g;
    if d <= 0.0 {
        f64::INFINITY
    } else {
        2.0 / d.sqrt()
    }
}

/// The Hamiltonian in units of B:
/// -(lambda/2)(1+g) s1(x)s1 - (lambda/2)(1-g) s2(x)s2 - (s3(x)s0 + s0(x)s3).
/// Diagonal (-2, 0, 0, 2), anti-diagonal couplings -g*lambda and -lambda.
pub fn build_hamiltonian(p: &ModelParams) -> ComplexMatrix {
    let s0 = pauli(0);
    let s1 = pauli(1);
    let s2 = pauli(2);
    let s3 = pauli(3);
    let xx = kron(&s1, &s1).scale(Complex64::new(-0.5 * p.lambda * (1.0 + p.g), 0.0));
    let yy = kron(&s2, &s2).scale(Complex64::new(-0.5 * p.lambda * (1.0 - p.g), 0.0));
    let field = kron(&s3, &s0)
        .add(&kron(&s0, &s3))
        .scale(Complex64::new(-1.0, 0.0));
    xx.add(&yy).add(&field)
}

/// Classify the coupling into Region I (below the boundary), Region II
/// (above), or Boundary (degenerate crossing, within 1e-12).
pub fn classify_region(p: &ModelParams) -> Result<RegionTag> {
    if p.lambda == 0.0 {
        return Err(Error::LambdaZero);
    }
    let bound = region_boundary(p.g);
    if bound.is_infinite() {
        return Ok(RegionTag::RegionI);
    }
    if (p.lambda - bound).abs() <= BOUNDARY_TOL {
        Ok(RegionTag::Boundary)
    } else if p.lambda < bound {
        Ok(RegionTag::RegionI)
    } else {
        Ok(RegionTag::RegionII)
    }
}

/// Exact ground state. Region I: energy -sqrt(4 + g^2 lambda^2) with state
/// proportional to {(sqrt(g^2 lambda^2 + 4) + 2)/(g lambda), 0, 0, 1};
/// Region II: energy -lambda with the Bell-like state {0, 1, 1, 0}/sqrt(2).
/// At the boundary both energies coincide and the Region I state is returned.
/// The g*lambda = 0 limit of the Region I formula is |00> with energy -2.
pub fn ground_state_closed(p: &ModelParams) -> Result<(f64, PureState4, RegionTag)> {
    let region = classify_region(p)?;
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    match region {
        RegionTag::RegionI | RegionTag::Boundary => {
            let gl = p.g * p.lambda;
            let energy = -(4.0 + gl * gl).sqrt();
            let state = if gl == 0.0 {
                // removable singularity of the closed form
                PureState4::normalized([one, zero, zero, zero])
            } else {
                let head = ((gl * gl + 4.0).sqrt() + 2.0) / gl;
                PureState4::normalized([Complex64::new(head, 0.0), zero, zero, one])
            };
            Ok((energy, state, region))
        }
        RegionTag::RegionII => {
            let state = PureState4::normalized([zero, one, one, zero]);
            Ok((-p.lambda, state, RegionTag::RegionII))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::qlinalg::eigh;
    use approx::assert_abs_diff_eq;

    #[test]
    fn hamiltonian_decoupled_is_field_only() {
        let p = ModelParams::dimensionless(1.0, 0.0).unwrap();
        let h = build_hamiltonian(&p);
        let expected = ComplexMatrix::from_diag(&[-2.0, 0.0, 0.0, 2.0]);
        assert!(h.sub(&expected).frobenius_norm() < 1e-14);
    }

    #[test]
    fn hamiltonian_entries_match_block_structure() {
        let p = ModelParams::dimensionless(0.6, 1.7).unwrap();
        let h = build_hamiltonian(&p);
        assert_abs_diff_eq!(h[(0, 0)].re, -2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(h[(3, 3)].re, 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(h[(0, 3)].re, -0.6 * 1.7, epsilon = 1e-14);
        assert_abs_diff_eq!(h[(1, 2)].re, -1.7, epsilon = 1e-14);
        assert_abs_diff_eq!(h[(1, 1)].re, 0.0, epsilon = 1e-14);
        assert!(h.is_hermitian(1e-14));
    }

    #[test]
    fn ising_point_ground_energy_is_minus_sqrt5() {
        let p = ModelParams::dimensionless(1.0, 1.0).unwrap();
        let ed = eigh(&build_hamiltonian(&p)).unwrap();
        assert_abs_diff_eq!(ed.eigenvalues[0], -5.0f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn isotropic_strong_coupling_energy_is_minus_lambda() {
        let p = ModelParams::dimensionless(0.0, 3.0).unwrap();
        let ed = eigh(&build_hamiltonian(&p)).unwrap();
        assert_abs_diff_eq!(ed.eigenvalues[0], -3.0, epsilon = 1e-12);
    }

    #[test]
    fn region_classification() {
        let p = |g, l| ModelParams::dimensionless(g, l).unwrap();
        assert_eq!(classify_region(&p(1.0, 100.0)).unwrap(), RegionTag::RegionI);
        assert_eq!(classify_region(&p(0.0, 1.0)).unwrap(), RegionTag::RegionI);
        assert_eq!(classify_region(&p(0.0, 2.5)).unwrap(), RegionTag::RegionII);
        // 2/sqrt(1 - 0.36) = 2.5 exactly
        assert_eq!(classify_region(&p(0.6, 2.5)).unwrap(), RegionTag::Boundary);
        assert!(matches!(
            classify_region(&p(0.5, 0.0)),
            Err(Error::LambdaZero)
        ));
    }

    #[test]
    fn ground_state_closed_region_i() {
        let p = ModelParams::dimensionless(1.0, 1.0).unwrap();
        let (energy, state, region) = ground_state_closed(&p).unwrap();
        assert_eq!(region, RegionTag::RegionI);
        assert_abs_diff_eq!(energy, -5.0f64.sqrt(), epsilon = 1e-14);
        let head = 5.0f64.sqrt() + 2.0;
        let norm = (head * head + 1.0).sqrt();
        assert_abs_diff_eq!(state.amplitudes()[0].re, head / norm, epsilon = 1e-14);
        assert_abs_diff_eq!(state.amplitudes()[3].re, 1.0 / norm, epsilon = 1e-14);
        assert_abs_diff_eq!(state.amplitudes()[1].norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn ground_state_closed_region_ii_is_bell_like() {
        let p = ModelParams::dimensionless(0.0, 3.0).unwrap();
        let (energy, state, region) = ground_state_closed(&p).unwrap();
        assert_eq!(region, RegionTag::RegionII);
        assert_abs_diff_eq!(energy, -3.0, epsilon = 1e-14);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert_abs_diff_eq!(state.amplitudes()[1].re, s, epsilon = 1e-14);
        assert_abs_diff_eq!(state.amplitudes()[2].re, s, epsilon = 1e-14);
    }

    #[test]
    fn ground_state_isotropic_weak_is_product() {
        let p = ModelParams::dimensionless(0.0, 1.0).unwrap();
        let (energy, state, region) = ground_state_closed(&p).unwrap();
        assert_eq!(region, RegionTag::RegionI);
        assert_abs_diff_eq!(energy, -2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(state.amplitudes()[0].re, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn closed_form_matches_diagonalization_on_grid() {
        for ig in 1..=10 {
            let g = ig as f64 / 10.0;
            for il in 1..=20 {
                let lambda = il as f64 * 0.5;
                let p = ModelParams::dimensionless(g, lambda).unwrap();
                if classify_region(&p).unwrap() == RegionTag::Boundary {
                    continue; // degenerate crossing
                }
                let (e_closed, state, _) = ground_state_closed(&p).unwrap();
                let ed = eigh(&build_hamiltonian(&p)).unwrap();
                assert!(
                    (e_closed - ed.eigenvalues[0]).abs() < 1e-10,
                    "energy mismatch at g={g}, lambda={lambda}"
                );
                let overlap = state.overlap(&ed.eigenvectors.column(0));
                assert!(
                    overlap > 1.0 - 1e-10,
                    "state mismatch at g={g}, lambda={lambda}: overlap {overlap}"
                );
            }
        }
    }

    #[test]
    fn energy_continuous_across_boundary() {
        for ig in 1..=9 {
            let g = ig as f64 / 10.0;
            let lb = region_boundary(g);
            let e1 = -(4.0 + g * g * lb * lb).sqrt();
            let e2 = -lb;
            assert!((e1 - e2).abs() < 1e-10, "discontinuity at g={g}");
        }
    }

    #[test]
    fn params_validation() {
        assert!(ModelParams::new(-0.1, 1.0, 0.5).is_err());
        assert!(ModelParams::new(1.1, 1.0, 0.5).is_err());
        assert!(ModelParams::new(0.5, -1.0, 0.5).is_err());
        assert!(ModelParams::new(0.5, 1.0, 0.0).is_err());
    }
}
