//! Dense complex linear algebra for small matrices (2x2 and 4x4 in practice):
//! Hermitian eigendecomposition by cyclic Jacobi rotations, Kronecker product,
//! principal matrix square root, and the partial trace over the second qubit.

use num_complex::Complex64;

use crate::error::{Error, Result};

const HERMITIAN_TOL: f64 = 1e-10;
const JACOBI_OFF_TOL: f64 = 1e-14;
const MAX_SWEEPS: usize = 100;

/// Dense square complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Build from a row-major slice of entries; panics if the length is not dim^2.
    pub fn from_rows(dim: usize, entries: &[Complex64]) -> Self {
        assert_eq!(entries.len(), dim * dim, "entry count must be dim^2");
        Self {
            dim,
            entries: entries.to_vec(),
        }
    }

    /// Build a matrix with the given real diagonal.
    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    pub fn from_real_rows(dim: usize, entries: &[f64]) -> Self {
        assert_eq!(entries.len(), dim * dim);
        Self {
            dim,
            entries: entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Largest deviation from Hermitian symmetry, max |M[i][j] - conj(M[j][i])|.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Apply M to a column vector.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.dim + j]
    }
}

/// Pauli matrices in the computational basis; index 0 is the identity.
pub fn pauli(k: usize) -> ComplexMatrix {
    let i = Complex64::new(0.0, 1.0);
    let o = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let entries = match k {
        0 => [one, o, o, one],
        1 => [o, one, one, o],
        2 => [o, -i, i, o],
        3 => [one, o, o, -one],
        _ => panic!("pauli index must be 0..=3"),
    };
    ComplexMatrix::from_rows(2, &entries)
}

/// Eigendecomposition of a Hermitian matrix: real eigenvalues in ascending
/// order and orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

/// Kronecker product a (x) b.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (na, nb) = (a.dim(), b.dim());
    let mut out = ComplexMatrix::zeros(na * nb);
    for i in 0..na {
        for j in 0..na {
            let aij = a[(i, j)];
            for k in 0..nb {
                for l in 0..nb {
                    out[(i * nb + k, j * nb + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Hermitian eigendecomposition by cyclic Jacobi rotations with complex
/// phase factors. Sweeps until the off-diagonal Frobenius norm drops below
/// 1e-14 relative to the matrix scale.
pub fn eigh(m: &ComplexMatrix) -> Result<EigenDecomposition> {
    let dev = m.hermitian_deviation();
    if dev > HERMITIAN_TOL {
        return Err(Error::NotHermitian { max_dev: dev });
    }
    let n = m.dim();
    let mut a = m.clone();
    // symmetrize to kill the sub-tolerance asymmetry up front
    for i in 0..n {
        for j in 0..n {
            let s = (a[(i, j)] + a[(j, i)].conj()) * Complex64::new(0.5, 0.0);
            a[(i, j)] = s;
            a[(j, i)] = s.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm().max(1.0);

    for _sweep in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += 2.0 * a[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= JACOBI_OFF_TOL * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag <= JACOBI_OFF_TOL * scale / (n as f64) {
                    continue;
                }
                // phase e^{i phi} of the off-diagonal entry, then a real
                // Jacobi rotation on the phase-aligned 2x2 block
                let phase = apq / mag;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (2.0 * mag);
                // small root of t^2 - 2 theta t - 1 = 0 for this U convention
                let t = -theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                // U restricted to (p,q): [[c, -s*phase], [s*conj(phase), c]]
                let upp = Complex64::new(c, 0.0);
                let upq = phase * Complex64::new(-s, 0.0);
                let uqp = phase.conj() * Complex64::new(s, 0.0);
                let uqq = Complex64::new(c, 0.0);

                // A <- U^dagger A U
                for i in 0..n {
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    a[(i, p)] = aip * upp + aiq * uqp;
                    a[(i, q)] = aip * upq + aiq * uqq;
                }
                for j in 0..n {
                    let apj = a[(p, j)];
                    let aqj = a[(q, j)];
                    a[(p, j)] = upp.conj() * apj + uqp.conj() * aqj;
                    a[(q, j)] = upq.conj() * apj + uqq.conj() * aqj;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);

                // V <- V U
                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * upp + viq * uqp;
                    v[(i, q)] = vip * upq + viq * uqq;
                }
            }
        }
    }

    // sort ascending, permuting eigenvector columns along
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vecs = ComplexMatrix::zeros(n);
    for (new_j, &old_j) in order.iter().enumerate() {
        for i in 0..n {
            vecs[(i, new_j)] = v[(i, old_j)];
        }
    }
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors: vecs,
    })
}

/// Principal square root of a Hermitian PSD matrix via eigendecomposition.
/// Eigenvalues in [-1e-8, 0) are clamped to zero; anything more negative is
/// rejected as NotPsd.
pub fn mat_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let ed = eigh(m)?;
    let n = m.dim();
    let mut roots = Vec::with_capacity(n);
    for &ev in &ed.eigenvalues {
        if ev < -1e-8 {
            return Err(Error::NotPsd { eigenvalue: ev });
        }
        roots.push(ev.max(0.0).sqrt());
    }
    // V sqrt(D) V^dagger
    let v = &ed.eigenvectors;
    let mut out = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let mut s = Complex64::new(0.0, 0.0);
            for k in 0..n {
                s += v[(i, k)] * Complex64::new(roots[k], 0.0) * v[(j, k)].conj();
            }
            out[(i, j)] = s;
        }
    }
    Ok(out)
}

/// Trace out the second qubit of a 4x4 density matrix in the
/// |00>,|01>,|10>,|11> basis (first qubit slowest).
pub fn partial_trace_second(rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    if rho.dim() != 4 {
        return Err(Error::BadDimension {
            expected: 4,
            got: rho.dim(),
        });
    }
    let dev = rho.hermitian_deviation();
    if dev > HERMITIAN_TOL {
        return Err(Error::NotHermitian { max_dev: dev });
    }
    let tr_dev = (rho.trace().re - 1.0).abs().max(rho.trace().im.abs());
    if tr_dev > 1e-8 {
        return Err(Error::BadTrace { dev: tr_dev });
    }
    let mut out = ComplexMatrix::zeros(2);
    for i in 0..2 {
        for j in 0..2 {
            out[(i, j)] = rho[(2 * i, 2 * j)] + rho[(2 * i + 1, 2 * j + 1)];
        }
    }
    Ok(out)
}

/// Projector |psi><psi| of a state vector.
pub fn projector(psi: &[Complex64]) -> ComplexMatrix {
    let n = psi.len();
    let mut out = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = psi[i] * psi[j].conj();
        }
    }
    out
}
