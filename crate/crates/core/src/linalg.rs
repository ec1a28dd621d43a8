//! Fixed-size linear algebra over the three scalar algebras.
//!
//! Everything in this crate lives in dimension 4 (a pair of two-level
//! systems) or dimension 2 (one reduced subsystem), so the matrix types are
//! fixed-size and allocation-free. The self-adjoint eigensolver is a cyclic
//! Jacobi iteration on real symmetric matrices; complex Hermitian problems
//! are routed through the real 8x8 embedding `A + iB -> [[A, -B], [B, A]]`,
//! which is a *-algebra homomorphism and therefore also carries positive
//! semidefinite square roots across.
//!
//! Tolerances used throughout the crate:
//! * validity checks on inputs: [`VALIDITY_TOL`]
//! * numerical identities between two computed quantities: [`IDENTITY_TOL`]
//! * Jacobi convergence, off-diagonal Frobenius norm: [`JACOBI_OFFDIAG_TOL`]

use crate::scalar::{Complex64, Scalar, ScalarKind};
use thiserror::Error;

/// Validity checks on user-supplied matrices (self-adjointness, trace,
/// positivity) accept deviations up to this bound.
pub const VALIDITY_TOL: f64 = 1e-9;

/// Numerical identities between independently computed quantities are
/// expected to agree within this bound.
pub const IDENTITY_TOL: f64 = 1e-10;

/// The Jacobi iteration stops once the off-diagonal Frobenius norm falls
/// below this bound.
pub const JACOBI_OFFDIAG_TOL: f64 = 1e-13;

/// Eigenvalues in `[-VALIDITY_TOL, 0)` are treated as exact zeros produced
/// by round-off; anything below is a genuine negativity.
pub const EIG_CLAMP_TOL: f64 = VALIDITY_TOL;

const MAX_JACOBI_SWEEPS: usize = 64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("matrix is not self-adjoint: deviation {deviation:.3e} exceeds {tol:.1e}")]
    NotSelfAdjoint { deviation: f64, tol: f64 },
    #[error("matrix has negative eigenvalue {value:.3e} below -{tol:.1e}")]
    NegativeEigenvalue { value: f64, tol: f64 },
    #[error("Jacobi iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
}

/// A 4x4 matrix over one of the three scalar algebras.
///
/// Quaternionic entries multiply non-commutatively, so every product in the
/// implementation is written in operand order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matrix4<T: Scalar> {
    e: [[T; 4]; 4],
}

impl<T: Scalar> Matrix4<T> {
    pub fn from_rows(rows: [[T; 4]; 4]) -> Self {
        Matrix4 { e: rows }
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut e = [[T::zero(); 4]; 4];
        for (i, row) in e.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = f(i, j);
            }
        }
        Matrix4 { e }
    }

    pub fn zero() -> Self {
        Matrix4::from_fn(|_, _| T::zero())
    }

    pub fn identity() -> Self {
        Matrix4::from_fn(|i, j| if i == j { T::one() } else { T::zero() })
    }

    /// Diagonal matrix with real diagonal values.
    pub fn diagonal_real(d: [f64; 4]) -> Self {
        Matrix4::from_fn(|i, j| if i == j { T::from_real(d[i]) } else { T::zero() })
    }

    pub fn entry(&self, i: usize, j: usize) -> T {
        self.e[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.e[i][j] = v;
    }

    pub fn rows(&self) -> &[[T; 4]; 4] {
        &self.e
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        Matrix4::from_fn(|i, j| {
            let mut acc = T::zero();
            for k in 0..4 {
                acc = acc + self.e[i][k] * rhs.e[k][j];
            }
            acc
        })
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Matrix4::from_fn(|i, j| self.e[i][j] + rhs.e[i][j])
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Matrix4::from_fn(|i, j| self.e[i][j] - rhs.e[i][j])
    }

    pub fn scale(&self, k: f64) -> Self {
        Matrix4::from_fn(|i, j| self.e[i][j].scale(k))
    }

    pub fn transpose(&self) -> Self {
        Matrix4::from_fn(|i, j| self.e[j][i])
    }

    pub fn conj(&self) -> Self {
        Matrix4::from_fn(|i, j| self.e[i][j].conj())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Matrix4::from_fn(|i, j| self.e[j][i].conj())
    }

    pub fn trace(&self) -> T {
        self.e[0][0] + self.e[1][1] + self.e[2][2] + self.e[3][3]
    }

    /// Real part of the trace.
    pub fn trace_re(&self) -> f64 {
        self.trace().re()
    }

    /// Sum of squared entry norms; equals `tr(M M^dagger)`.
    pub fn frobenius_sq(&self) -> f64 {
        let mut acc = 0.0;
        for row in &self.e {
            for v in row {
                acc += v.norm_sq();
            }
        }
        acc
    }

    /// Largest entrywise deviation from `M = M^dagger`.
    pub fn self_adjoint_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                dev = dev.max((self.e[i][j] - self.e[j][i].conj()).abs());
            }
        }
        dev
    }

    /// Largest entry component outside the subalgebra `kind`.
    pub fn kind_deviation(&self, kind: ScalarKind) -> f64 {
        let mut dev: f64 = 0.0;
        for row in &self.e {
            for v in row {
                dev = dev.max(v.kind_deviation(kind));
            }
        }
        dev
    }

    /// Outer product `|v><w|` with entries `v_i * conj(w_j)`.
    pub fn outer(v: &[T; 4], w: &[T; 4]) -> Self {
        Matrix4::from_fn(|i, j| v[i] * w[j].conj())
    }

    /// Matrix-vector product `(M v)_i = sum_j M_ij v_j`.
    pub fn apply(&self, v: &[T; 4]) -> [T; 4] {
        let mut out = [T::zero(); 4];
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc = T::zero();
            for j in 0..4 {
                acc = acc + self.e[i][j] * v[j];
            }
            *o = acc;
        }
        out
    }
}

impl Matrix4<f64> {
    /// Embed a real matrix into the complex algebra.
    pub fn embed_complex(&self) -> Matrix4<Complex64> {
        Matrix4::from_fn(|i, j| Complex64::new(self.e[i][j], 0.0))
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn determinant(&self) -> f64 {
        fn det3(m: [[f64; 3]; 3]) -> f64 {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        }
        let mut det = 0.0;
        for col in 0..4 {
            let mut minor = [[0.0; 3]; 3];
            for i in 1..4 {
                let mut mj = 0;
                for j in 0..4 {
                    if j == col {
                        continue;
                    }
                    minor[i - 1][mj] = self.e[i][j];
                    mj += 1;
                }
            }
            let sign = if col % 2 == 0 { 1.0 } else { -1.0 };
            det += sign * self.e[0][col] * det3(minor);
        }
        det
    }
}

/// A 2x2 matrix over one of the scalar algebras (reduced subsystems).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matrix2<T: Scalar> {
    e: [[T; 2]; 2],
}

impl<T: Scalar> Matrix2<T> {
    pub fn from_rows(rows: [[T; 2]; 2]) -> Self {
        Matrix2 { e: rows }
    }

    pub fn entry(&self, i: usize, j: usize) -> T {
        self.e[i][j]
    }

    pub fn trace(&self) -> T {
        self.e[0][0] + self.e[1][1]
    }

    pub fn self_adjoint_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                dev = dev.max((self.e[i][j] - self.e[j][i].conj()).abs());
            }
        }
        dev
    }
}

/// Eigenvalues of a self-adjoint 2x2 matrix in descending order
/// (closed form from trace and discriminant).
pub fn hermitian_eigvals2(m: &Matrix2<Complex64>) -> Result<[f64; 2], LinalgError> {
    let dev = m.self_adjoint_deviation();
    if dev > VALIDITY_TOL {
        return Err(LinalgError::NotSelfAdjoint {
            deviation: dev,
            tol: VALIDITY_TOL,
        });
    }
    let a = m.entry(0, 0).re;
    let d = m.entry(1, 1).re;
    let b = (m.entry(0, 1) + m.entry(1, 0).conj()).scale(0.5);
    let disc = ((a - d) * (a - d) + 4.0 * b.norm_sq()).sqrt();
    Ok([(a + d + disc) / 2.0, (a + d - disc) / 2.0])
}

/// Eigenvalues (descending) and orthonormal eigenvector columns of a real
/// symmetric matrix.
#[derive(Clone, Copy, Debug)]
pub struct SymEigen<const N: usize> {
    pub values: [f64; N],
    /// `vectors[r][c]` is component `r` of the eigenvector for `values[c]`.
    pub vectors: [[f64; N]; N],
}

fn off_diag_frobenius<const N: usize>(a: &[[f64; N]; N]) -> f64 {
    let mut acc = 0.0;
    for p in 0..N {
        for q in 0..N {
            if p != q {
                acc += a[p][q] * a[p][q];
            }
        }
    }
    acc.sqrt()
}

/// One cyclic Jacobi diagonalization. `VECS` controls whether the rotation
/// product is accumulated into `v` (callers that only need eigenvalues skip
/// the extra work).
fn jacobi_cyclic<const N: usize, const VECS: bool>(
    a: &mut [[f64; N]; N],
    v: &mut [[f64; N]; N],
) -> Result<(), LinalgError> {
    if VECS {
        for (r, row) in v.iter_mut().enumerate() {
            for (c, x) in row.iter_mut().enumerate() {
                *x = if r == c { 1.0 } else { 0.0 };
            }
        }
    }
    for _sweep in 0..MAX_JACOBI_SWEEPS {
        if off_diag_frobenius(a) < JACOBI_OFFDIAG_TOL {
            return Ok(());
        }
        for p in 0..N - 1 {
            for q in p + 1..N {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                // abs(theta) near 1e154 would overflow theta^2; the rotation
                // angle is tiny there and the series limit is exact enough.
                let t = if theta.abs() < 1e150 {
                    let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                    sign / (theta.abs() + (theta * theta + 1.0).sqrt())
                } else {
                    1.0 / (2.0 * theta)
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);

                a[p][p] -= t * apq;
                a[q][q] += t * apq;
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for r in 0..N {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r][p];
                    let arq = a[r][q];
                    a[r][p] = arp - s * (arq + tau * arp);
                    a[p][r] = a[r][p];
                    a[r][q] = arq + s * (arp - tau * arq);
                    a[q][r] = a[r][q];
                }
                if VECS {
                    for r in 0..N {
                        let vrp = v[r][p];
                        let vrq = v[r][q];
                        v[r][p] = vrp - s * (vrq + tau * vrp);
                        v[r][q] = vrq + s * (vrp - tau * vrq);
                    }
                }
            }
        }
    }
    if off_diag_frobenius(a) < JACOBI_OFFDIAG_TOL {
        Ok(())
    } else {
        Err(LinalgError::NoConvergence {
            sweeps: MAX_JACOBI_SWEEPS,
        })
    }
}

fn sort_eigen_desc<const N: usize>(values: &mut [f64; N], vectors: &mut [[f64; N]; N]) {
    // Selection sort keeps the value and its column in lock step.
    for i in 0..N {
        let mut best = i;
        for j in i + 1..N {
            if values[j] > values[best] {
                best = j;
            }
        }
        if best != i {
            values.swap(i, best);
            for row in vectors.iter_mut() {
                row.swap(i, best);
            }
        }
    }
}

fn check_symmetric<const N: usize>(a: &[[f64; N]; N]) -> Result<(), LinalgError> {
    let mut dev: f64 = 0.0;
    for p in 0..N {
        for q in 0..N {
            dev = dev.max((a[p][q] - a[q][p]).abs());
        }
    }
    if dev > VALIDITY_TOL {
        Err(LinalgError::NotSelfAdjoint {
            deviation: dev,
            tol: VALIDITY_TOL,
        })
    } else {
        Ok(())
    }
}

fn symmetrize<const N: usize>(a: &mut [[f64; N]; N]) {
    for p in 0..N {
        for q in p + 1..N {
            let m = 0.5 * (a[p][q] + a[q][p]);
            a[p][q] = m;
            a[q][p] = m;
        }
    }
}

fn sym_eigen_array<const N: usize>(mut a: [[f64; N]; N]) -> Result<SymEigen<N>, LinalgError> {
    check_symmetric(&a)?;
    symmetrize(&mut a);
    let mut v = [[0.0; N]; N];
    jacobi_cyclic::<N, true>(&mut a, &mut v)?;
    let mut values = [0.0; N];
    for i in 0..N {
        values[i] = a[i][i];
    }
    sort_eigen_desc(&mut values, &mut v);
    Ok(SymEigen { values, vectors: v })
}

fn sym_eigvals_array<const N: usize>(mut a: [[f64; N]; N]) -> Result<[f64; N], LinalgError> {
    check_symmetric(&a)?;
    symmetrize(&mut a);
    let mut v = [[0.0; N]; N];
    jacobi_cyclic::<N, false>(&mut a, &mut v)?;
    let mut values = [0.0; N];
    for i in 0..N {
        values[i] = a[i][i];
    }
    values.sort_by(|x, y| y.partial_cmp(x).unwrap());
    Ok(values)
}

/// Eigen decomposition of a real symmetric 4x4 matrix, eigenvalues
/// descending.
pub fn sym_eigen4(m: &Matrix4<f64>) -> Result<SymEigen<4>, LinalgError> {
    sym_eigen_array(*m.rows())
}

/// Eigenvalues of a real symmetric 4x4 matrix, descending.
pub fn sym_eigvals4(m: &Matrix4<f64>) -> Result<[f64; 4], LinalgError> {
    sym_eigvals_array(*m.rows())
}

/// Real symmetric 8x8 embedding of a complex matrix `A + iB`.
///
/// The map `A + iB -> [[A, -B], [B, A]]` preserves products, adjoints, and
/// positivity; each eigenvalue of the complex matrix appears twice in the
/// embedding.
fn embed_8x8(m: &Matrix4<Complex64>) -> [[f64; 8]; 8] {
    let mut out = [[0.0; 8]; 8];
    for i in 0..4 {
        for j in 0..4 {
            let v = m.entry(i, j);
            out[i][j] = v.re;
            out[i][j + 4] = -v.im;
            out[i + 4][j] = v.im;
            out[i + 4][j + 4] = v.re;
        }
    }
    out
}

fn unembed_8x8(e: &[[f64; 8]; 8]) -> Matrix4<Complex64> {
    // The two copies of each block are averaged; for exact embeddings they
    // agree to round-off.
    Matrix4::from_fn(|i, j| {
        let re = 0.5 * (e[i][j] + e[i + 4][j + 4]);
        let im = 0.5 * (e[i + 4][j] - e[i][j + 4]);
        Complex64::new(re, im)
    })
}

/// Eigenvalues of a self-adjoint complex 4x4 matrix, descending.
///
/// Solved on the real 8x8 embedding, where each eigenvalue appears twice;
/// adjacent sorted pairs are averaged back into four values.
pub fn hermitian_eigvals(m: &Matrix4<Complex64>) -> Result<[f64; 4], LinalgError> {
    let dev = m.self_adjoint_deviation();
    if dev > VALIDITY_TOL {
        return Err(LinalgError::NotSelfAdjoint {
            deviation: dev,
            tol: VALIDITY_TOL,
        });
    }
    let sym = m.add(&m.adjoint()).scale(0.5);
    let doubled = sym_eigvals_array(embed_8x8(&sym))?;
    let mut out = [0.0; 4];
    for (k, o) in out.iter_mut().enumerate() {
        *o = 0.5 * (doubled[2 * k] + doubled[2 * k + 1]);
    }
    Ok(out)
}

fn psd_sqrt_array<const N: usize>(a: [[f64; N]; N]) -> Result<[[f64; N]; N], LinalgError> {
    let eig = sym_eigen_array(a)?;
    let mut roots = [0.0; N];
    for (r, &l) in roots.iter_mut().zip(eig.values.iter()) {
        if l < -EIG_CLAMP_TOL {
            return Err(LinalgError::NegativeEigenvalue {
                value: l,
                tol: EIG_CLAMP_TOL,
            });
        }
        *r = l.max(0.0).sqrt();
    }
    // S = V sqrt(L) V^T
    let mut out = [[0.0; N]; N];
    for i in 0..N {
        for j in 0..N {
            let mut acc = 0.0;
            for k in 0..N {
                acc += eig.vectors[i][k] * roots[k] * eig.vectors[j][k];
            }
            out[i][j] = acc;
        }
    }
    Ok(out)
}

/// Positive semidefinite square root of a real symmetric PSD matrix.
///
/// Eigenvalues in `[-EIG_CLAMP_TOL, 0)` are clamped to zero; anything more
/// negative is rejected.
pub fn psd_sqrt4(m: &Matrix4<f64>) -> Result<Matrix4<f64>, LinalgError> {
    Ok(Matrix4::from_rows(psd_sqrt_array(*m.rows())?))
}

/// Positive semidefinite square root of a self-adjoint complex PSD matrix.
///
/// Computed on the real 8x8 embedding; uniqueness of the PSD root
/// guarantees the result un-embeds to the complex root.
pub fn psd_sqrt_hermitian(m: &Matrix4<Complex64>) -> Result<Matrix4<Complex64>, LinalgError> {
    let dev = m.self_adjoint_deviation();
    if dev > VALIDITY_TOL {
        return Err(LinalgError::NotSelfAdjoint {
            deviation: dev,
            tol: VALIDITY_TOL,
        });
    }
    let sym = m.add(&m.adjoint()).scale(0.5);
    let root = psd_sqrt_array(embed_8x8(&sym))?;
    Ok(unembed_8x8(&root))
}

/// QR factorization by Householder reflections, normalized so the diagonal
/// of `R` is real and non-negative.
///
/// The normalization makes the factorization unique, which is what turns
/// "orthonormalize a Gaussian matrix" into an exactly Haar-distributed `Q`:
/// without the diagonal sign (real) or phase (complex) correction the
/// distribution of `Q` depends on the factorization's sign conventions.
pub fn qr_positive_diagonal<T: Scalar>(m: &Matrix4<T>) -> (Matrix4<T>, Matrix4<T>) {
    let mut r = *m;
    let mut q: Matrix4<T> = Matrix4::identity();

    for k in 0..4 {
        let mut xnorm_sq = 0.0;
        for i in k..4 {
            xnorm_sq += r.entry(i, k).norm_sq();
        }
        if xnorm_sq == 0.0 {
            continue;
        }
        let xk = r.entry(k, k);
        let phase = if xk.abs() > 0.0 {
            xk.scale(1.0 / xk.abs())
        } else {
            T::one()
        };
        // v = x + phase * |x| e_k avoids cancellation in the leading entry.
        let mut v = [T::zero(); 4];
        v[k] = xk + phase.scale(xnorm_sq.sqrt());
        for i in k + 1..4 {
            v[i] = r.entry(i, k);
        }
        let vns: f64 = v.iter().map(|x| x.norm_sq()).sum();
        if vns == 0.0 {
            continue;
        }
        let beta = 2.0 / vns;

        // r <- H r with H = I - beta v v^dagger
        for j in k..4 {
            let mut s = T::zero();
            for i in k..4 {
                s = s + v[i].conj() * r.entry(i, j);
            }
            for i in k..4 {
                let upd = r.entry(i, j) - (v[i] * s).scale(beta);
                r.set(i, j, upd);
            }
        }
        // q <- q H
        for i in 0..4 {
            let mut s = T::zero();
            for j in k..4 {
                s = s + q.entry(i, j) * v[j];
            }
            for j in k..4 {
                let upd = q.entry(i, j) - (s * v[j].conj()).scale(beta);
                q.set(i, j, upd);
            }
        }
    }

    // Diagonal correction: push each diagonal phase of R into Q so that
    // R_jj ends up real and non-negative.
    for j in 0..4 {
        let d = r.entry(j, j);
        if d.abs() == 0.0 {
            continue;
        }
        let lambda = d.scale(1.0 / d.abs());
        for i in 0..4 {
            let qi = q.entry(i, j) * lambda;
            q.set(i, j, qi);
        }
        for l in j..4 {
            let rl = lambda.conj() * r.entry(j, l);
            r.set(j, l, rl);
        }
    }
    (q, r)
}
