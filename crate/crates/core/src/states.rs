//! States of a two-level pair and their geometry.
//!
//! The product basis is ordered `|00>, |01>, |10>, |11>`, so entry index
//! `2a + b` refers to subsystem A in level `a` and subsystem B in level
//! `b`. Mixed states carry a [`ScalarKind`] of `Real` or `Complex` (mixed
//! quaternionic states are out of scope); storage is canonically complex
//! with the real kind constrained to vanishing imaginary parts.
//!
//! The eigenvalue simplex of a mixed state maps affinely onto a regular
//! tetrahedron of side 1 centered at the origin; the radial coordinate of
//! that tetrahedron encodes the participation ratio `R = 1/tr(rho^2)`,
//! a basis-independent mixedness measure ranging from 1 (pure) to 4
//! (maximally mixed).

use crate::linalg::{
    hermitian_eigvals, hermitian_eigvals2, LinalgError, Matrix2, Matrix4, VALIDITY_TOL,
};
use crate::scalar::{Complex64, ScalarKind};
use thiserror::Error;

/// Unit-norm tolerance for pure states and simplex points.
pub const NORM_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StateError {
    #[error("kind {kind} is not supported for {context}")]
    UnsupportedKind {
        kind: ScalarKind,
        context: &'static str,
    },
    #[error("matrix entries leave the {kind} algebra by {deviation:.3e}")]
    KindMismatch { kind: ScalarKind, deviation: f64 },
    #[error("matrix is not self-adjoint: deviation {deviation:.3e}")]
    NotSelfAdjoint { deviation: f64 },
    #[error("trace is {trace:.12} instead of 1")]
    TraceNotOne { trace: f64 },
    #[error("negative eigenvalue {value:.3e}")]
    NegativeEigenvalue { value: f64 },
    #[error("squared norm is {norm_sq:.12} instead of 1")]
    NotNormalized { norm_sq: f64 },
    #[error("negative simplex weight {value:.3e}")]
    NegativeWeight { value: f64 },
    #[error("simplex weights sum to {sum:.12} instead of 1")]
    WeightSumNotOne { sum: f64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A validated density matrix of a two-level pair.
///
/// Construction enforces self-adjointness, unit trace, positive
/// semidefiniteness, and membership in the claimed scalar algebra, all
/// within [`VALIDITY_TOL`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix {
    kind: ScalarKind,
    m: Matrix4<Complex64>,
}

impl DensityMatrix {
    /// Validate a candidate matrix against all density-matrix invariants.
    ///
    /// Each violated invariant reports its own error: kind mismatch,
    /// self-adjointness, trace, and positivity are distinguished.
    pub fn validate(m: &Matrix4<Complex64>, kind: ScalarKind) -> Result<Self, StateError> {
        if kind == ScalarKind::Quaternion {
            return Err(StateError::UnsupportedKind {
                kind,
                context: "mixed states",
            });
        }
        let kind_dev = m.kind_deviation(kind);
        if kind_dev > VALIDITY_TOL {
            return Err(StateError::KindMismatch {
                kind,
                deviation: kind_dev,
            });
        }
        let sa_dev = m.self_adjoint_deviation();
        if sa_dev > VALIDITY_TOL {
            return Err(StateError::NotSelfAdjoint { deviation: sa_dev });
        }
        let tr = m.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > VALIDITY_TOL {
            return Err(StateError::TraceNotOne { trace: tr.re });
        }
        let eigs = hermitian_eigvals(m)?;
        let min = eigs[3];
        if min < -VALIDITY_TOL {
            return Err(StateError::NegativeEigenvalue { value: min });
        }
        Ok(DensityMatrix { kind, m: *m })
    }

    /// Validate a real matrix as a Real-kind density matrix.
    pub fn validate_real(m: &Matrix4<f64>) -> Result<Self, StateError> {
        DensityMatrix::validate(&m.embed_complex(), ScalarKind::Real)
    }

    /// Construct without validation. Callers guarantee the invariants hold
    /// by construction (samplers, closed-form state families).
    pub(crate) fn new_unchecked(m: Matrix4<Complex64>, kind: ScalarKind) -> Self {
        DensityMatrix { kind, m }
    }

    /// Diagonal density matrix with the simplex point as its spectrum.
    pub fn diagonal(p: &SimplexPoint, kind: ScalarKind) -> Result<Self, StateError> {
        if kind == ScalarKind::Quaternion {
            return Err(StateError::UnsupportedKind {
                kind,
                context: "mixed states",
            });
        }
        Ok(DensityMatrix::new_unchecked(
            Matrix4::diagonal_real(*p.weights()),
            kind,
        ))
    }

    /// Projector onto a pure state.
    pub fn from_pure(psi: &PureState) -> Self {
        DensityMatrix::new_unchecked(Matrix4::outer(psi.coefficients(), psi.coefficients()), psi.kind())
    }

    pub fn kind(&self) -> ScalarKind {
        self.kind
    }

    /// The canonical complex-entry matrix (imaginary parts vanish for the
    /// Real kind).
    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.m
    }

    /// Real parts of the entries; the full matrix when the kind is Real.
    pub fn real_matrix(&self) -> Matrix4<f64> {
        Matrix4::from_fn(|i, j| self.m.entry(i, j).re)
    }

    /// `tr(rho^2)`, computed as the squared Frobenius norm (exact for
    /// self-adjoint matrices).
    pub fn purity(&self) -> f64 {
        self.m.frobenius_sq()
    }

    /// Participation ratio `R = 1/tr(rho^2)`, between 1 (pure) and 4
    /// (maximally mixed), invariant under orthogonal or unitary
    /// conjugation.
    pub fn participation_ratio(&self) -> f64 {
        1.0 / self.purity()
    }

    /// Spectrum in descending order.
    pub fn eigenvalues(&self) -> Result<[f64; 4], LinalgError> {
        hermitian_eigvals(&self.m)
    }
}

/// A validated pure state of a two-level pair (Real or Complex kind).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PureState {
    kind: ScalarKind,
    c: [Complex64; 4],
}

impl PureState {
    /// Validate coefficients: unit norm within [`NORM_TOL`] and membership
    /// in the claimed algebra.
    pub fn new(c: [Complex64; 4], kind: ScalarKind) -> Result<Self, StateError> {
        if kind == ScalarKind::Quaternion {
            return Err(StateError::UnsupportedKind {
                kind,
                context: "pure product-basis states",
            });
        }
        if kind == ScalarKind::Real {
            let dev = c.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
            if dev > VALIDITY_TOL {
                return Err(StateError::KindMismatch {
                    kind,
                    deviation: dev,
                });
            }
        }
        let norm_sq: f64 = c.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(StateError::NotNormalized { norm_sq });
        }
        Ok(PureState { kind, c })
    }

    /// Real coefficients as a Real-kind state.
    pub fn from_real(c: [f64; 4]) -> Result<Self, StateError> {
        PureState::new(c.map(|x| Complex64::new(x, 0.0)), ScalarKind::Real)
    }

    pub(crate) fn new_unchecked(c: [Complex64; 4], kind: ScalarKind) -> Self {
        PureState { kind, c }
    }

    pub fn kind(&self) -> ScalarKind {
        self.kind
    }

    pub fn coefficients(&self) -> &[Complex64; 4] {
        &self.c
    }

    pub fn norm_sq(&self) -> f64 {
        self.c.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn projector(&self) -> DensityMatrix {
        DensityMatrix::from_pure(self)
    }
}

/// Reduced state of subsystem A (subsystem B traced out).
pub fn reduced_a(rho: &DensityMatrix) -> Matrix2<Complex64> {
    let m = rho.matrix();
    Matrix2::from_rows([
        [
            m.entry(0, 0) + m.entry(1, 1),
            m.entry(0, 2) + m.entry(1, 3),
        ],
        [
            m.entry(2, 0) + m.entry(3, 1),
            m.entry(2, 2) + m.entry(3, 3),
        ],
    ])
}

/// Reduced state of subsystem B (subsystem A traced out).
pub fn reduced_b(rho: &DensityMatrix) -> Matrix2<Complex64> {
    let m = rho.matrix();
    Matrix2::from_rows([
        [
            m.entry(0, 0) + m.entry(2, 2),
            m.entry(0, 1) + m.entry(2, 3),
        ],
        [
            m.entry(1, 0) + m.entry(3, 2),
            m.entry(1, 1) + m.entry(3, 3),
        ],
    ])
}

/// Von Neumann entropy `-tr(sigma log2 sigma)` of a reduced 2x2 state.
///
/// Eigenvalues in `[-VALIDITY_TOL, 0)` are round-off and count as zero
/// (with `0 log 0 = 0`); anything lower is rejected.
pub fn von_neumann_entropy(sigma: &Matrix2<Complex64>) -> Result<f64, StateError> {
    let tr = sigma.trace();
    if (tr - Complex64::new(1.0, 0.0)).norm() > VALIDITY_TOL {
        return Err(StateError::TraceNotOne { trace: tr.re });
    }
    let eigs = hermitian_eigvals2(sigma)?;
    let mut s = 0.0;
    for &mu in &eigs {
        if mu < -VALIDITY_TOL {
            return Err(StateError::NegativeEigenvalue { value: mu });
        }
        if mu > 0.0 {
            s -= mu * mu.log2();
        }
    }
    Ok(s)
}

/// A point of the eigenvalue simplex: four weights, each non-negative,
/// summing to 1 within [`NORM_TOL`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SimplexPoint {
    p: [f64; 4],
}

impl SimplexPoint {
    pub fn new(p: [f64; 4]) -> Result<Self, StateError> {
        for &w in &p {
            if w < -NORM_TOL {
                return Err(StateError::NegativeWeight { value: w });
            }
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > NORM_TOL {
            return Err(StateError::WeightSumNotOne { sum });
        }
        Ok(SimplexPoint {
            p: p.map(|w| w.max(0.0)),
        })
    }

    pub fn weights(&self) -> &[f64; 4] {
        &self.p
    }

    /// Sum of squared weights `= tr(rho^2)` of the diagonal state.
    pub fn purity(&self) -> f64 {
        self.p.iter().map(|w| w * w).sum()
    }
}

/// A point of the eigenvalue tetrahedron (side 1, centered at the origin).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TetrahedronPoint {
    pub r: [f64; 3],
}

impl TetrahedronPoint {
    pub fn norm_sq(&self) -> f64 {
        self.r.iter().map(|x| x * x).sum()
    }
}

/// Vertices of the side-1 regular tetrahedron image of the simplex:
/// `(+-1, +-1, +-1)/sqrt(8)` with an even number of minus signs.
pub const TETRAHEDRON_VERTICES: [[f64; 3]; 4] = {
    const S: f64 = 0.35355339059327373; // 1/sqrt(8)
    [
        [S, S, S],
        [S, -S, -S],
        [-S, S, -S],
        [-S, -S, S],
    ]
};

/// Affine map from the eigenvalue simplex onto the regular tetrahedron.
///
/// Vertex `e_i` maps to `TETRAHEDRON_VERTICES[i]`; the radial coordinate
/// obeys `|r|^2 = -1/8 + (1/2) sum p_i^2`, so spheres around the origin
/// are surfaces of constant participation ratio `R = 4/(8 |r|^2 + 1)`.
pub fn simplex_to_tetrahedron(p: &SimplexPoint) -> TetrahedronPoint {
    let mut r = [0.0; 3];
    for (w, v) in p.weights().iter().zip(TETRAHEDRON_VERTICES.iter()) {
        for (rc, vc) in r.iter_mut().zip(v.iter()) {
            *rc += w * vc;
        }
    }
    TetrahedronPoint { r }
}

/// Participation ratio of the tetrahedron point's shell,
/// `R = 4/(8 |r|^2 + 1)`.
pub fn participation_ratio_of_radius(t: &TetrahedronPoint) -> f64 {
    4.0 / (8.0 * t.norm_sq() + 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::IDENTITY_TOL;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    // Frozen: binary entropy at 0.3, from a 50-digit evaluation.
    const H_03: f64 = 0.881_290_899_230_692_6;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn spin_flip_matrix() -> Matrix4<f64> {
        Matrix4::from_rows([
            [0.0, 0.0, 0.0, -1.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0, 0.0],
        ])
    }

    fn random_simplex(rng: &mut ChaCha8Rng) -> SimplexPoint {
        let mut e = [0.0; 4];
        for v in e.iter_mut() {
            let u: f64 = rng.gen_range(1e-12..1.0);
            *v = -u.ln();
        }
        let sum: f64 = e.iter().sum();
        SimplexPoint::new(e.map(|x| x / sum)).unwrap()
    }

    fn random_complex_pure(rng: &mut ChaCha8Rng) -> PureState {
        let mut v = [Complex64::new(0.0, 0.0); 4];
        for z in v.iter_mut() {
            *z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
        let n: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        PureState::new(v.map(|z| z / n), ScalarKind::Complex).unwrap()
    }

    #[test]
    fn maximally_mixed_is_valid_in_both_kinds() {
        let m = Matrix4::<Complex64>::identity().scale(0.25);
        for kind in [ScalarKind::Real, ScalarKind::Complex] {
            let rho = DensityMatrix::validate(&m, kind).unwrap();
            assert_eq!(rho.kind(), kind);
            assert!((rho.participation_ratio() - 4.0).abs() < 1e-12);
        }
    }

    #[test]
    fn validation_errors_are_distinct() {
        // Negative eigenvalue.
        let neg = Matrix4::<Complex64>::diagonal_real([0.5, 0.6, -0.1, 0.0]);
        assert!(matches!(
            DensityMatrix::validate(&neg, ScalarKind::Complex),
            Err(StateError::NegativeEigenvalue { .. })
        ));

        // Wrong trace.
        let tr = Matrix4::<Complex64>::diagonal_real([0.5, 0.5, 0.2, 0.0]);
        assert!(matches!(
            DensityMatrix::validate(&tr, ScalarKind::Complex),
            Err(StateError::TraceNotOne { .. })
        ));

        // Not self-adjoint.
        let mut nsa = Matrix4::<Complex64>::diagonal_real([0.25; 4]);
        nsa.set(0, 1, c(0.1, 0.0));
        assert!(matches!(
            DensityMatrix::validate(&nsa, ScalarKind::Complex),
            Err(StateError::NotSelfAdjoint { .. })
        ));

        // Complex entries claimed Real.
        let mut km = Matrix4::<Complex64>::diagonal_real([0.25; 4]);
        km.set(0, 1, c(0.0, 0.1));
        km.set(1, 0, c(0.0, -0.1));
        assert!(matches!(
            DensityMatrix::validate(&km, ScalarKind::Real),
            Err(StateError::KindMismatch { .. })
        ));
        // The same matrix is a fine Complex-kind state.
        assert!(DensityMatrix::validate(&km, ScalarKind::Complex).is_ok());

        // Quaternionic mixed states are out of scope.
        let id = Matrix4::<Complex64>::identity().scale(0.25);
        assert!(matches!(
            DensityMatrix::validate(&id, ScalarKind::Quaternion),
            Err(StateError::UnsupportedKind { .. })
        ));
    }

    #[test]
    fn participation_ratio_endpoints() {
        let pure = PureState::from_real([1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!((pure.projector().participation_ratio() - 1.0).abs() < 1e-12);

        // (I + t * spin-flip)/4 at t = 1/sqrt(3) sits exactly at R = 3.
        let t = 1.0 / 3.0_f64.sqrt();
        let m = Matrix4::<f64>::identity()
            .add(&spin_flip_matrix().scale(t))
            .scale(0.25);
        let rho = DensityMatrix::validate_real(&m).unwrap();
        assert!((rho.participation_ratio() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn participation_ratio_stays_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..1000 {
            let p = random_simplex(&mut rng);
            let rho = DensityMatrix::diagonal(&p, ScalarKind::Real).unwrap();
            let r = rho.participation_ratio();
            assert!((1.0..=4.0 + 1e-12).contains(&r), "R = {r}");
        }
    }

    #[test]
    fn reduced_states_of_bell_state() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let bell = PureState::from_real([s, 0.0, 0.0, s]).unwrap();
        let rho = bell.projector();
        for red in [reduced_a(&rho), reduced_b(&rho)] {
            assert!((red.entry(0, 0).re - 0.5).abs() < 1e-12);
            assert!((red.entry(1, 1).re - 0.5).abs() < 1e-12);
            assert!(red.entry(0, 1).norm() < 1e-12);
        }
        assert!((von_neumann_entropy(&reduced_a(&rho)).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reduced_states_of_product_state() {
        let ket00 = PureState::from_real([1.0, 0.0, 0.0, 0.0]).unwrap();
        let rho = ket00.projector();
        let ra = reduced_a(&rho);
        assert!((ra.entry(0, 0).re - 1.0).abs() < 1e-12);
        assert!(ra.entry(1, 1).norm() < 1e-12);
        assert!(von_neumann_entropy(&ra).unwrap().abs() < 1e-12);
    }

    #[test]
    fn reduced_state_of_schmidt_form() {
        // C1|00> + C2|11> with complex coefficients reduces to
        // diag(|C1|^2, |C2|^2) on both sides.
        let c1 = c(0.6, 0.3);
        let c2v = 1.0 - c1.norm_sqr();
        let c2 = c(0.0, c2v.sqrt());
        let psi = PureState::new([c1, c(0.0, 0.0), c(0.0, 0.0), c2], ScalarKind::Complex).unwrap();
        let rho = psi.projector();
        for red in [reduced_a(&rho), reduced_b(&rho)] {
            assert!((red.entry(0, 0).re - c1.norm_sqr()).abs() < 1e-12);
            assert!((red.entry(1, 1).re - c2.norm_sqr()).abs() < 1e-12);
            assert!(red.entry(0, 1).norm() < 1e-12);
        }
    }

    #[test]
    fn schmidt_symmetry_of_reduced_entropies() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..200 {
            let psi = random_complex_pure(&mut rng);
            let rho = psi.projector();
            let sa = von_neumann_entropy(&reduced_a(&rho)).unwrap();
            let sb = von_neumann_entropy(&reduced_b(&rho)).unwrap();
            assert!((sa - sb).abs() < IDENTITY_TOL, "{sa} vs {sb}");
        }
    }

    #[test]
    fn entropy_frozen_value_and_clamping() {
        let sigma = Matrix2::from_rows([
            [c(0.3, 0.0), c(0.0, 0.0)],
            [c(0.0, 0.0), c(0.7, 0.0)],
        ]);
        assert!((von_neumann_entropy(&sigma).unwrap() - H_03).abs() < 1e-12);

        // A tiny negative eigenvalue counts as zero.
        let clamped = Matrix2::from_rows([
            [c(1.0 + 1e-10, 0.0), c(0.0, 0.0)],
            [c(0.0, 0.0), c(-1e-10, 0.0)],
        ]);
        assert!(von_neumann_entropy(&clamped).unwrap().abs() < 1e-8);

        // A genuinely negative one is rejected.
        let bad = Matrix2::from_rows([
            [c(1.001, 0.0), c(0.0, 0.0)],
            [c(0.0, 0.0), c(-0.001, 0.0)],
        ]);
        assert!(matches!(
            von_neumann_entropy(&bad),
            Err(StateError::NegativeEigenvalue { .. })
        ));
    }

    #[test]
    fn pure_state_validation() {
        assert!(matches!(
            PureState::from_real([1.0, 1.0, 0.0, 0.0]),
            Err(StateError::NotNormalized { .. })
        ));
        let s = 0.5;
        assert!(PureState::from_real([s, s, s, s]).is_ok());
        assert!(matches!(
            PureState::new(
                [c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
                ScalarKind::Real
            ),
            Err(StateError::KindMismatch { .. })
        ));
    }

    #[test]
    fn simplex_point_validation() {
        assert!(SimplexPoint::new([0.25; 4]).is_ok());
        assert!(matches!(
            SimplexPoint::new([0.5, 0.6, -0.1, 0.0]),
            Err(StateError::NegativeWeight { .. })
        ));
        assert!(matches!(
            SimplexPoint::new([0.5, 0.25, 0.25, 0.25]),
            Err(StateError::WeightSumNotOne { .. })
        ));
    }

    #[test]
    fn tetrahedron_map_center_and_vertices() {
        let center = SimplexPoint::new([0.25; 4]).unwrap();
        let r0 = simplex_to_tetrahedron(&center);
        assert!(r0.norm_sq() < 1e-28);
        assert!((participation_ratio_of_radius(&r0) - 4.0).abs() < 1e-12);

        let vertex = SimplexPoint::new([1.0, 0.0, 0.0, 0.0]).unwrap();
        let rv = simplex_to_tetrahedron(&vertex);
        assert!((rv.norm_sq() - 0.375).abs() < 1e-15);
        assert!((participation_ratio_of_radius(&rv) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tetrahedron_has_unit_side() {
        let verts: Vec<TetrahedronPoint> = (0..4)
            .map(|i| {
                let mut p = [0.0; 4];
                p[i] = 1.0;
                simplex_to_tetrahedron(&SimplexPoint::new(p).unwrap())
            })
            .collect();
        for i in 0..4 {
            for j in i + 1..4 {
                let d2: f64 = verts[i]
                    .r
                    .iter()
                    .zip(verts[j].r.iter())
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum();
                assert!((d2 - 1.0).abs() < 1e-15, "side {i}{j} length^2 = {d2}");
            }
        }
    }

    #[test]
    fn radius_encodes_participation_ratio() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..1000 {
            let p = random_simplex(&mut rng);
            let t = simplex_to_tetrahedron(&p);
            // Radial identity of the affine map.
            assert!((t.norm_sq() - (-0.125 + 0.5 * p.purity())).abs() < 1e-14);
            // R computed two ways: from the matrix and from the radius.
            let rho = DensityMatrix::diagonal(&p, ScalarKind::Complex).unwrap();
            let diff = rho.participation_ratio() - participation_ratio_of_radius(&t);
            assert!(diff.abs() < 1e-10);
        }
    }

    #[test]
    fn eigenvalues_of_diagonal_state_match_weights() {
        let p = SimplexPoint::new([0.4, 0.3, 0.2, 0.1]).unwrap();
        let rho = DensityMatrix::diagonal(&p, ScalarKind::Real).unwrap();
        let eigs = rho.eigenvalues().unwrap();
        for (e, w) in eigs.iter().zip([0.4, 0.3, 0.2, 0.1].iter()) {
            assert!((e - w).abs() < 1e-12);
        }
    }
}
