//! Entanglement and purity measures: von Neumann entropy (general and in
//! closed form for Region I), Wootters concurrence via the spin-flipped
//! R matrix and in closed form, and trace-purity diagnostics.
//!
//! All entropies are in bits (log base 2).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qlinalg::{eigh, kron, mat_sqrt, pauli, ComplexMatrix};
use crate::spin_model::{classify_region, ModelParams, RegionTag};

const DENSITY_TOL: f64 = 1e-10;
const EIG_CLAMP: f64 = -1e-10;

/// Validated density matrix: Hermitian, unit trace, PSD within tolerance.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        let dev = mat.hermitian_deviation();
        if dev > DENSITY_TOL {
            return Err(Error::InvalidDensity(format!(
                "Hermitian deviation {dev:e}"
            )));
        }
        let tr = mat.trace();
        let tr_dev = (tr.re - 1.0).abs().max(tr.im.abs());
        if tr_dev > DENSITY_TOL {
            return Err(Error::InvalidDensity(format!("trace deviation {tr_dev:e}")));
        }
        let ed = eigh(&mat)?;
        if let Some(&min) = ed
            .eigenvalues
            .first()
            .filter(|&&ev| ev < EIG_CLAMP)
        {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {min:e}")));
        }
        Ok(Self { mat })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }
}

/// Trace diagnostics distinguishing pure from mixed states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PurityReport {
    pub trace_rho: f64,
    pub trace_rho_sq: f64,
}

fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// Binary entropy h(p) = -p log2 p - (1-p) log2 (1-p), in bits.
pub fn binary_entropy(p: f64) -> f64 {
    -xlog2x(p) - xlog2x(1.0 - p)
}

/// S = -sum_i p_i log2 p_i over the spectrum of rho, with 0 log 0 = 0.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let ed = eigh(rho.matrix())?;
    Ok(-ed.eigenvalues.iter().map(|&p| xlog2x(p.max(0.0))).sum::<f64>())
}

/// Region I reduced-state eigenvalues 1/2 +- 1/sqrt(g^2 lambda^2 + 4);
/// the raw binary-entropy form, defined for any g, lambda >= 0.
pub(crate) fn entropy_closed_raw(g: f64, lambda: f64) -> f64 {
    let gl = g * lambda;
    binary_entropy(0.5 + 1.0 / (gl * gl + 4.0).sqrt())
}

/// Closed-form Region I entropy: the binary entropy of the reduced-state
/// populations 1/2 +- 1/sqrt(g^2 lambda^2 + 4). Errors outside Region I.
pub fn entropy_region_i_closed(g: f64, lambda: f64) -> Result<f64> {
    let p = ModelParams::dimensionless(g, lambda)
        .map_err(|_| Error::WrongRegion { g, lambda })?;
    if classify_region(&p)? != RegionTag::RegionI {
        return Err(Error::WrongRegion { g, lambda });
    }
    Ok(entropy_closed_raw(g, lambda))
}

pub(crate) fn concurrence_closed_raw(g: f64, lambda: f64) -> f64 {
    let gl = g * lambda;
    gl / (gl * gl + 4.0).sqrt()
}

/// Closed-form Region I concurrence g lambda / sqrt(g^2 lambda^2 + 4).
pub fn concurrence_region_i_closed(g: f64, lambda: f64) -> Result<f64> {
    if lambda == 0.0 {
        // factorized limit, concurrence vanishes
        return Ok(0.0);
    }
    let p = ModelParams::dimensionless(g, lambda)
        .map_err(|_| Error::WrongRegion { g, lambda })?;
    if classify_region(&p)? != RegionTag::RegionI {
        return Err(Error::WrongRegion { g, lambda });
    }
    Ok(concurrence_closed_raw(g, lambda))
}

/// Wootters concurrence of a two-qubit density matrix:
/// rho_tilde = (sy(x)sy) rho* (sy(x)sy), R = (sqrt(rho) rho_tilde sqrt(rho))^{1/2},
/// C = max(0, nu1 - nu2 - nu3 - nu4) over the descending eigenvalues of R.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::BadDimension {
            expected: 4,
            got: rho.dim(),
        });
    }
    let yy = kron(&pauli(2), &pauli(2));
    let rho_tilde = yy.mul(&rho.matrix().conj()).mul(&yy);
    let sqrt_rho = mat_sqrt(rho.matrix())?;
    let inner = sqrt_rho.mul(&rho_tilde).mul(&sqrt_rho);
    // R's eigenvalues are the square roots of inner's; inner drifts slightly
    // off Hermitian from the float products, so resymmetrize before eigh
    let mut sym = inner.clone();
    for i in 0..4 {
        for j in 0..4 {
            let s = (inner[(i, j)] + inner[(j, i)].conj()) * Complex64::new(0.5, 0.0);
            sym[(i, j)] = s;
        }
    }
    let ed = eigh(&sym)?;
    // float noise in the chain is ~1e-16 and sqrt amplifies it to ~1e-8,
    // so eigenvalues at noise level are zeroed instead of square-rooted
    let scale = ed.eigenvalues.iter().fold(1.0f64, |m, &ev| m.max(ev.abs()));
    let mut nu: Vec<f64> = ed
        .eigenvalues
        .iter()
        .map(|&ev| if ev < 1e-13 * scale { 0.0 } else { ev.sqrt() })
        .collect();
    nu.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok((nu[0] - nu[1] - nu[2] - nu[3]).max(0.0))
}

/// Tr rho and Tr rho^2, taken directly as matrix traces.
pub fn purity(rho: &ComplexMatrix) -> PurityReport {
    PurityReport {
        trace_rho: rho.trace().re,
        trace_rho_sq: rho.mul(rho).trace().re,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::{partial_trace_second, projector};
    use crate::spin_model::ground_state_closed;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn density(mat: ComplexMatrix) -> DensityMatrix {
        DensityMatrix::new(mat).unwrap()
    }

    fn random_pure_state(rng: &mut ChaCha8Rng) -> Vec<Complex64> {
        let mut psi: Vec<Complex64> = (0..4)
            .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        let norm = psi.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in &mut psi {
            *a /= norm;
        }
        psi
    }

    fn random_unitary_2x2(rng: &mut ChaCha8Rng) -> ComplexMatrix {
        // Gram-Schmidt on a random complex 2x2
        let mut c1 = [
            Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
            Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
        ];
        let n1 = (c1[0].norm_sqr() + c1[1].norm_sqr()).sqrt();
        c1[0] /= n1;
        c1[1] /= n1;
        let mut c2 = [
            Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
            Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
        ];
        let proj = c1[0].conj() * c2[0] + c1[1].conj() * c2[1];
        c2[0] -= proj * c1[0];
        c2[1] -= proj * c1[1];
        let n2 = (c2[0].norm_sqr() + c2[1].norm_sqr()).sqrt();
        c2[0] /= n2;
        c2[1] /= n2;
        ComplexMatrix::from_rows(2, &[c1[0], c2[0], c1[1], c2[1]])
    }

    #[test]
    fn entropy_of_pure_and_mixed_diagonals() {
        let pure = density(ComplexMatrix::from_diag(&[1.0, 0.0]));
        assert_abs_diff_eq!(von_neumann_entropy(&pure).unwrap(), 0.0, epsilon = 1e-12);

        let mixed = density(ComplexMatrix::from_diag(&[0.5, 0.5]));
        assert_abs_diff_eq!(von_neumann_entropy(&mixed).unwrap(), 1.0, epsilon = 1e-12);

        let p = 0.5 + 1.0 / 5.0f64.sqrt();
        let skew = density(ComplexMatrix::from_diag(&[p, 1.0 - p]));
        assert_abs_diff_eq!(von_neumann_entropy(&skew).unwrap(), 0.2983, epsilon = 1e-3);
    }

    #[test]
    fn density_matrix_rejects_bad_inputs() {
        assert!(DensityMatrix::new(ComplexMatrix::from_diag(&[0.7, 0.7])).is_err());
        assert!(DensityMatrix::new(ComplexMatrix::from_diag(&[1.5, -0.5])).is_err());
        let mut skewed = ComplexMatrix::from_diag(&[0.5, 0.5]);
        skewed[(0, 1)] = Complex64::new(0.0, 1e-3);
        assert!(DensityMatrix::new(skewed).is_err());
    }

    #[test]
    fn closed_form_entropy_examples() {
        assert!(entropy_region_i_closed(1.0, 1e-9).unwrap() < 1e-6);
        assert_abs_diff_eq!(
            entropy_region_i_closed(1.0, 1.0).unwrap(),
            0.2983,
            epsilon = 1e-3
        );
        assert!((entropy_region_i_closed(1.0, 100.0).unwrap() - 1.0).abs() < 1e-3);
        assert!(matches!(
            entropy_region_i_closed(0.0, 3.0),
            Err(Error::WrongRegion { .. })
        ));
    }

    #[test]
    fn concurrence_examples() {
        let product = density(projector(&[
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        ]));
        assert_abs_diff_eq!(concurrence(&product).unwrap(), 0.0, epsilon = 1e-10);

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let bell = density(projector(&[
            Complex64::new(0.0, 0.0),
            Complex64::new(s, 0.0),
            Complex64::new(s, 0.0),
            Complex64::new(0.0, 0.0),
        ]));
        assert_abs_diff_eq!(concurrence(&bell).unwrap(), 1.0, epsilon = 1e-10);

        let p = crate::spin_model::ModelParams::dimensionless(1.0, 1.0).unwrap();
        let (_, state, _) = ground_state_closed(&p).unwrap();
        let rho = density(state.projector());
        assert_abs_diff_eq!(
            concurrence(&rho).unwrap(),
            1.0 / 5.0f64.sqrt(),
            epsilon = 1e-6
        );
    }

    #[test]
    fn closed_form_concurrence_examples() {
        assert_abs_diff_eq!(concurrence_region_i_closed(1.0, 0.0).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            concurrence_region_i_closed(1.0, 1.0).unwrap(),
            1.0 / 5.0f64.sqrt(),
            epsilon = 1e-14
        );
        assert!(concurrence_region_i_closed(1.0, 1e6).unwrap() > 1.0 - 1e-6);
        assert!(matches!(
            concurrence_region_i_closed(0.0, 3.0),
            Err(Error::WrongRegion { .. })
        ));
    }

    #[test]
    fn purity_reports() {
        let pure = projector(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
        let rep = purity(&pure);
        assert_abs_diff_eq!(rep.trace_rho, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(rep.trace_rho_sq, 1.0, epsilon = 1e-14);

        let mixed = ComplexMatrix::from_diag(&[0.5, 0.5]);
        assert_abs_diff_eq!(purity(&mixed).trace_rho_sq, 0.5, epsilon = 1e-14);

        let skew = ComplexMatrix::from_diag(&[0.9, 0.1]);
        assert_abs_diff_eq!(purity(&skew).trace_rho_sq, 0.82, epsilon = 1e-14);
    }

    #[test]
    fn closed_forms_match_numeric_pipeline_on_grid() {
        // 30 Region I points across g and lambda
        for ig in 1..=5 {
            let g = ig as f64 * 0.2;
            for il in 1..=6 {
                let lambda = il as f64 * 0.15;
                let p = crate::spin_model::ModelParams::dimensionless(g, lambda).unwrap();
                let (_, state, _) = ground_state_closed(&p).unwrap();
                let rho4 = density(state.projector());
                let reduced = density(partial_trace_second(rho4.matrix()).unwrap());
                let s_numeric = von_neumann_entropy(&reduced).unwrap();
                let s_closed = entropy_region_i_closed(g, lambda).unwrap();
                assert!(
                    (s_numeric - s_closed).abs() < 1e-9,
                    "entropy mismatch at g={g}, lambda={lambda}"
                );
                let c_numeric = concurrence(&rho4).unwrap();
                let c_closed = concurrence_region_i_closed(g, lambda).unwrap();
                assert!(
                    (c_numeric - c_closed).abs() < 1e-8,
                    "concurrence mismatch at g={g}, lambda={lambda}"
                );
            }
        }
    }

    #[test]
    fn pure_state_entropy_concurrence_law() {
        // S(rho_1) = h((1 + sqrt(1 - C^2))/2) for pure two-qubit states
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let psi = random_pure_state(&mut rng);
            let rho = density(projector(&psi));
            let c = concurrence(&rho).unwrap();
            let reduced = density(partial_trace_second(rho.matrix()).unwrap());
            let s = von_neumann_entropy(&reduced).unwrap();
            let predicted = binary_entropy(0.5 * (1.0 + (1.0 - c * c).max(0.0).sqrt()));
            assert!(
                (s - predicted).abs() < 1e-8,
                "law violated: S={s}, h={predicted}, C={c}"
            );
        }
    }

    #[test]
    fn concurrence_invariant_under_local_unitaries() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let psi = random_pure_state(&mut rng);
            let rho = projector(&psi);
            let c0 = concurrence(&density(rho.clone())).unwrap();
            let u = kron(&random_unitary_2x2(&mut rng), &random_unitary_2x2(&mut rng));
            let rotated = u.mul(&rho).mul(&u.adjoint());
            let c1 = concurrence(&density(rotated)).unwrap();
            assert!((c0 - c1).abs() < 1e-8, "local unitary changed C: {c0} vs {c1}");
        }
    }

    #[test]
    fn closed_entropy_monotone_in_lambda() {
        for ig in [0.3, 0.7, 1.0] {
            let mut prev = -1.0;
            for il in 1..=50 {
                let lambda = il as f64 * 0.02;
                let s = entropy_closed_raw(ig, lambda);
                assert!(s > prev, "not increasing at g={ig}, lambda={lambda}");
                prev = s;
            }
        }
    }
}
