//! Entanglement measures for two-level pairs in all three algebras.
//!
//! The central object is the spin-flip operator `S = sigma_y (x) sigma_y`,
//! a real symmetric involution. For complex-kind states the concurrence is
//! the spectral spin-flip form: with `lambda_i` the descending square
//! roots of the eigenvalues of `sqrt(rho) S rho* S sqrt(rho)`,
//! `C = max(0, l1 - l2 - l3 - l4)`, and the entanglement of formation is
//! `E = h((1 + sqrt(1 - C^2))/2)` with `h` the binary entropy. For
//! real-kind states the concurrence reduces to the trace form
//! `C = |tr(rho S)|`. Pure quaternionic pairs in Schmidt form carry
//! `E = h(|C1|^2)`, a function of the first coefficient's norm alone.
//!
//! All measures refer to the product basis `|00>, |01>, |10>, |11>`.

use crate::linalg::{
    hermitian_eigvals, psd_sqrt_hermitian, LinalgError, Matrix4,
};
use crate::scalar::{Complex64, Quaternion, ScalarKind};
use crate::states::{DensityMatrix, PureState, StateError, NORM_TOL};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EntanglementError {
    #[error("kind {kind} is not supported for {context}")]
    KindNotSupported {
        kind: ScalarKind,
        context: &'static str,
    },
    #[error("{name} = {value} lies outside its domain")]
    DomainViolation { name: &'static str, value: f64 },
    #[error("coefficient norms sum to {norm_sq:.12} instead of 1")]
    NotNormalized { norm_sq: f64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    State(#[from] StateError),
}

/// The spin-flip operator `sigma_y (x) sigma_y` in the product basis: a
/// real symmetric involution with eigenvalues +1 (twice) and -1 (twice).
pub const SIGMA_YY: [[f64; 4]; 4] = [
    [0.0, 0.0, 0.0, -1.0],
    [0.0, 0.0, 1.0, 0.0],
    [0.0, 1.0, 0.0, 0.0],
    [-1.0, 0.0, 0.0, 0.0],
];

pub fn sigma_yy_real() -> Matrix4<f64> {
    Matrix4::from_rows(SIGMA_YY)
}

pub fn sigma_yy_complex() -> Matrix4<Complex64> {
    sigma_yy_real().embed_complex()
}

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Bell state `(|00> + |11>)/sqrt(2)`; spin-flip eigenvalue -1.
pub fn bell_phi_plus() -> PureState {
    PureState::from_real([FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2]).unwrap()
}

/// Bell state `(|00> - |11>)/sqrt(2)`; spin-flip eigenvalue +1.
pub fn bell_phi_minus() -> PureState {
    PureState::from_real([FRAC_1_SQRT_2, 0.0, 0.0, -FRAC_1_SQRT_2]).unwrap()
}

/// Bell state `(|01> + |10>)/sqrt(2)`; spin-flip eigenvalue +1.
pub fn bell_psi_plus() -> PureState {
    PureState::from_real([0.0, FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0]).unwrap()
}

/// Bell state `(|01> - |10>)/sqrt(2)`; spin-flip eigenvalue -1.
pub fn bell_psi_minus() -> PureState {
    PureState::from_real([0.0, FRAC_1_SQRT_2, -FRAC_1_SQRT_2, 0.0]).unwrap()
}

/// The spin-flipped state `S rho* S`, a valid density matrix of the same
/// kind (conjugation is the identity for the Real kind).
pub fn spin_flip(rho: &DensityMatrix) -> DensityMatrix {
    let s = sigma_yy_complex();
    let flipped = s.matmul(&rho.matrix().conj()).matmul(&s);
    let flipped = flipped.add(&flipped.adjoint()).scale(0.5);
    DensityMatrix::new_unchecked(flipped, rho.kind())
}

/// Eigenvalues of the spin-flip product below this magnitude are
/// round-off images of exact zeros and are zeroed before the square
/// root. Without the threshold a rank-deficient state (any pure state)
/// turns +-1e-16 noise into 1e-8 errors through the square root; the
/// noise sits in the orthogonal complement of the state's range, so for
/// full-rank states the threshold is inert.
const SPECTRUM_ZERO_TOL: f64 = 1e-13;

/// Spectral spin-flip concurrence.
///
/// Accepts Real and Complex kinds (a real state is a special complex
/// one). The eigenvalues come from the self-adjoint product
/// `sqrt(rho) rho~ sqrt(rho)`, which shares its spectrum with
/// `rho rho~`; eigenvalues within [`SPECTRUM_ZERO_TOL`] of zero (round-off
/// of either sign) are clamped to zero before the square roots.
pub fn qubit_concurrence(rho: &DensityMatrix) -> Result<f64, EntanglementError> {
    let s = psd_sqrt_hermitian(rho.matrix())?;
    let flipped = spin_flip(rho);
    let prod = s.matmul(flipped.matrix()).matmul(&s);
    let lam_sq = hermitian_eigvals(&prod)?;
    let lam = lam_sq.map(|l| {
        if l < SPECTRUM_ZERO_TOL {
            0.0
        } else {
            l.sqrt()
        }
    });
    Ok((lam[0] - lam[1] - lam[2] - lam[3]).clamp(0.0, 1.0))
}

/// Trace-form concurrence for real-kind states: `C = |tr(rho S)|`.
///
/// Only defined for the Real kind; for complex states the trace form is
/// not an entanglement measure.
pub fn rebit_concurrence(rho: &DensityMatrix) -> Result<f64, EntanglementError> {
    if rho.kind() != ScalarKind::Real {
        return Err(EntanglementError::KindNotSupported {
            kind: rho.kind(),
            context: "trace-form concurrence",
        });
    }
    let m = rho.matrix();
    let mut tr = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            tr += m.entry(i, j).re * SIGMA_YY[j][i];
        }
    }
    Ok(tr.abs().min(1.0))
}

/// Concurrence of a pure product-basis state, `2 |c1 c2 - c0 c3|`.
pub fn pure_concurrence(psi: &PureState) -> f64 {
    let c = psi.coefficients();
    (2.0 * (c[1] * c[2] - c[0] * c[3]).norm()).min(1.0)
}

/// Binary entropy `h(x) = -x log2 x - (1-x) log2 (1-x)`, with
/// `h(0) = h(1) = 0`.
pub fn binary_entropy(x: f64) -> Result<f64, EntanglementError> {
    if !(-NORM_TOL..=1.0 + NORM_TOL).contains(&x) {
        return Err(EntanglementError::DomainViolation {
            name: "binary entropy argument",
            value: x,
        });
    }
    let x = x.clamp(0.0, 1.0);
    if x == 0.0 || x == 1.0 {
        return Ok(0.0);
    }
    Ok(-x * x.log2() - (1.0 - x) * (1.0 - x).log2())
}

/// Entanglement of formation from the concurrence,
/// `E = h((1 + sqrt(1 - C^2))/2)`; monotone from E(0) = 0 to E(1) = 1.
pub fn eof_from_concurrence(c: f64) -> Result<f64, EntanglementError> {
    if !(-NORM_TOL..=1.0 + NORM_TOL).contains(&c) {
        return Err(EntanglementError::DomainViolation {
            name: "concurrence",
            value: c,
        });
    }
    let c = c.clamp(0.0, 1.0);
    let x = (1.0 + (1.0 - c * c).sqrt()) / 2.0;
    binary_entropy(x)
}

/// Entanglement of formation of a state via its kind's concurrence
/// (trace form for Real, spectral form for Complex).
pub fn entanglement_of_formation(rho: &DensityMatrix) -> Result<f64, EntanglementError> {
    let c = match rho.kind() {
        ScalarKind::Real => rebit_concurrence(rho)?,
        ScalarKind::Complex => qubit_concurrence(rho)?,
        ScalarKind::Quaternion => {
            return Err(EntanglementError::KindNotSupported {
                kind: rho.kind(),
                context: "mixed-state entanglement of formation",
            })
        }
    };
    eof_from_concurrence(c)
}

/// Angular coordinates of a pure real-kind state expressed in the
/// spin-flip eigenbasis.
///
/// The coefficients `(cos t cos f1, cos t sin f1, sin t cos f2,
/// sin t sin f2)` weight an orthonormal eigenbasis of the spin-flip
/// operator whose first two vectors span the +1 eigenspace and last two
/// the -1 eigenspace, so the concurrence depends on `t` alone.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PureRebitAngles {
    theta: f64,
    phi1: f64,
    phi2: f64,
}

/// Spin-flip eigenbasis used by [`PureRebitAngles`], as product-basis
/// rows: +1 eigenvectors first.
fn spin_flip_eigenbasis() -> [[f64; 4]; 4] {
    let s = FRAC_1_SQRT_2;
    [
        [0.0, s, s, 0.0],  // (|01> + |10>)/sqrt(2), eigenvalue +1
        [s, 0.0, 0.0, -s], // (|00> - |11>)/sqrt(2), eigenvalue +1
        [0.0, s, -s, 0.0], // (|01> - |10>)/sqrt(2), eigenvalue -1
        [s, 0.0, 0.0, s],  // (|00> + |11>)/sqrt(2), eigenvalue -1
    ]
}

impl PureRebitAngles {
    /// `theta` in `[0, pi/2]`, `phi1` and `phi2` in `[0, 2 pi]`.
    pub fn new(theta: f64, phi1: f64, phi2: f64) -> Result<Self, EntanglementError> {
        let half_pi = std::f64::consts::FRAC_PI_2;
        let two_pi = std::f64::consts::TAU;
        if !(0.0..=half_pi).contains(&theta) {
            return Err(EntanglementError::DomainViolation {
                name: "theta",
                value: theta,
            });
        }
        for (name, phi) in [("phi1", phi1), ("phi2", phi2)] {
            if !(0.0..=two_pi).contains(&phi) {
                return Err(EntanglementError::DomainViolation { name, value: phi });
            }
        }
        Ok(PureRebitAngles { theta, phi1, phi2 })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Coefficients in the spin-flip eigenbasis; their squares sum to 1.
    pub fn coefficients(&self) -> [f64; 4] {
        let (st, ct) = self.theta.sin_cos();
        let (s1, c1) = self.phi1.sin_cos();
        let (s2, c2) = self.phi2.sin_cos();
        [ct * c1, ct * s1, st * c2, st * s2]
    }

    /// The state in the product basis.
    pub fn state(&self) -> PureState {
        let coeff = self.coefficients();
        let basis = spin_flip_eigenbasis();
        let mut v = [0.0; 4];
        for (c, row) in coeff.iter().zip(basis.iter()) {
            for (out, b) in v.iter_mut().zip(row.iter()) {
                *out += c * b;
            }
        }
        PureState::new_unchecked(v.map(|x| Complex64::new(x, 0.0)), ScalarKind::Real)
    }

    /// Concurrence of the parametrized state: `|cos 2 theta|`.
    pub fn concurrence(&self) -> f64 {
        (2.0 * self.theta).cos().abs()
    }

    /// Recover angles from a real-kind pure state by projecting onto the
    /// spin-flip eigenbasis.
    pub fn from_state(psi: &PureState) -> Result<Self, EntanglementError> {
        if psi.kind() != ScalarKind::Real {
            return Err(EntanglementError::KindNotSupported {
                kind: psi.kind(),
                context: "spin-flip angular coordinates",
            });
        }
        let basis = spin_flip_eigenbasis();
        let mut c = [0.0; 4];
        for (out, row) in c.iter_mut().zip(basis.iter()) {
            *out = row
                .iter()
                .zip(psi.coefficients().iter())
                .map(|(b, z)| b * z.re)
                .sum();
        }
        let plus = (c[0] * c[0] + c[1] * c[1]).sqrt();
        let minus = (c[2] * c[2] + c[3] * c[3]).sqrt();
        let theta = minus.atan2(plus).clamp(0.0, std::f64::consts::FRAC_PI_2);
        let wrap = |a: f64| if a < 0.0 { a + std::f64::consts::TAU } else { a };
        let phi1 = if plus > 0.0 { wrap(c[1].atan2(c[0])) } else { 0.0 };
        let phi2 = if minus > 0.0 { wrap(c[3].atan2(c[2])) } else { 0.0 };
        PureRebitAngles::new(theta, phi1, phi2)
    }
}

/// Concurrence ceiling at participation ratio `r`: 1 on `[1, 2]`,
/// `4/r - 1` on `[2, 4]`.
///
/// Real-kind mixed states fill the region under this curve; complex-kind
/// states with `r >= 3` are separable, so their ceiling is not attained
/// beyond the plateau.
pub fn max_c2(r: f64) -> Result<f64, EntanglementError> {
    if !(1.0 - NORM_TOL..=4.0 + NORM_TOL).contains(&r) {
        return Err(EntanglementError::DomainViolation {
            name: "participation ratio",
            value: r,
        });
    }
    let r = r.clamp(1.0, 4.0);
    Ok(if r <= 2.0 { 1.0 } else { 4.0 / r - 1.0 })
}

/// The extremal family `(I + t S)/4` for `t` in `[0, 1]`: a real-kind
/// state with spectrum `(1 +- t)/4` twice each, `C^2 = t^2`, and
/// `R = 4/(1 + t^2)`, saturating [`max_c2`] on `2 <= R <= 4`.
pub fn boundary_state(t: f64) -> Result<DensityMatrix, EntanglementError> {
    if !(0.0..=1.0 + NORM_TOL).contains(&t) {
        return Err(EntanglementError::DomainViolation {
            name: "boundary parameter",
            value: t,
        });
    }
    let m = Matrix4::<f64>::identity()
        .add(&sigma_yy_real().scale(t.min(1.0)))
        .scale(0.25);
    Ok(DensityMatrix::new_unchecked(
        m.embed_complex(),
        ScalarKind::Real,
    ))
}

/// Rank-two mixtures of two spin-flip eigenstates with eigenvalue -1:
/// `p |phi+><phi+| + (1-p) |psi-><psi-|`.
///
/// Every member has concurrence exactly 1 while `R = 1/(p^2 + (1-p)^2)`
/// sweeps `[1, 2]`: maximal entanglement does not require purity for
/// real-kind states.
pub fn max_entangled_mixture(p: f64) -> Result<DensityMatrix, EntanglementError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(EntanglementError::DomainViolation {
            name: "mixture weight",
            value: p,
        });
    }
    let a = bell_phi_plus();
    let b = bell_psi_minus();
    let m = Matrix4::outer(a.coefficients(), a.coefficients())
        .scale(p)
        .add(&Matrix4::outer(b.coefficients(), b.coefficients()).scale(1.0 - p));
    Ok(DensityMatrix::new_unchecked(m, ScalarKind::Real))
}

/// Werner family `p |phi+><phi+| + (1-p) I/4` as a complex-kind state;
/// closed-form concurrence `max(0, (3p - 1)/2)`.
pub fn werner_state(p: f64) -> Result<DensityMatrix, EntanglementError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(EntanglementError::DomainViolation {
            name: "Werner weight",
            value: p,
        });
    }
    let phi = bell_phi_plus();
    let m = Matrix4::outer(phi.coefficients(), phi.coefficients())
        .scale(p)
        .add(&Matrix4::identity().scale((1.0 - p) / 4.0));
    Ok(DensityMatrix::new_unchecked(m, ScalarKind::Complex))
}

/// Closed-form concurrence of [`werner_state`].
pub fn werner_concurrence(p: f64) -> f64 {
    ((3.0 * p - 1.0) / 2.0).max(0.0)
}

/// A pure quaternionic pair in Schmidt form `C1 |00> + C2 |11>`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuaterbitPair {
    c1: Quaternion,
    c2: Quaternion,
}

impl QuaterbitPair {
    /// Coefficient norms must satisfy `|C1|^2 + |C2|^2 = 1` within 1e-12.
    pub fn new(c1: Quaternion, c2: Quaternion) -> Result<Self, EntanglementError> {
        let norm_sq = c1.norm_sq() + c2.norm_sq();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(EntanglementError::NotNormalized { norm_sq });
        }
        Ok(QuaterbitPair { c1, c2 })
    }

    /// Pair with `|C1|^2 = x + y` split as `x` in the complex part
    /// (1 and i components) and `y` in the j and k components.
    pub fn from_surface_coords(x: f64, y: f64) -> Result<Self, EntanglementError> {
        for (name, v) in [("x", x), ("y", y), ("1 - x - y", 1.0 - x - y)] {
            if v < -NORM_TOL {
                return Err(EntanglementError::DomainViolation { name, value: v });
            }
        }
        let c1 = Quaternion::new(x.max(0.0).sqrt(), 0.0, y.max(0.0).sqrt(), 0.0);
        let c2 = Quaternion::from_real((1.0 - x - y).max(0.0).sqrt());
        QuaterbitPair::new(c1, c2)
    }

    pub fn c1(&self) -> Quaternion {
        self.c1
    }

    pub fn c2(&self) -> Quaternion {
        self.c2
    }

    /// The quaternionic projector onto the pair, `v v^dagger` for
    /// `v = (C1, 0, 0, C2)`; self-adjoint with real trace 1.
    pub fn density(&self) -> Matrix4<Quaternion> {
        let v = [self.c1, Quaternion::ZERO, Quaternion::ZERO, self.c2];
        Matrix4::outer(&v, &v)
    }

    /// Entanglement of the pair: `h(|C1|^2)`, invariant under right
    /// multiplication of both coefficients by a unit quaternion.
    pub fn entanglement(&self) -> f64 {
        binary_entropy(self.c1.norm_sq())
            .expect("coefficient norms are normalized by construction")
    }

    /// The gauge action `(C1 q, C2 q)`; preserves normalization and
    /// entanglement for unit `q`.
    pub fn right_multiplied(&self, q: Quaternion) -> QuaterbitPair {
        QuaterbitPair {
            c1: self.c1 * q,
            c2: self.c2 * q,
        }
    }
}

/// Entanglement of formation of a pure quaternionic Schmidt pair.
pub fn quaterbit_pure_eof(pair: &QuaterbitPair) -> f64 {
    pair.entanglement()
}

/// Partial transpose over subsystem B: each 2x2 block (fixed A indices)
/// is transposed.
pub fn partial_transpose_b(m: &Matrix4<Complex64>) -> Matrix4<Complex64> {
    Matrix4::from_fn(|r, c| {
        let (a, b) = (r / 2, r % 2);
        let (ap, bp) = (c / 2, c % 2);
        m.entry(2 * a + bp, 2 * ap + b)
    })
}

/// Smallest eigenvalue of the partial transpose. For two-level pairs the
/// state is separable exactly when this is non-negative.
pub fn ppt_min_eigenvalue(rho: &DensityMatrix) -> Result<f64, EntanglementError> {
    let pt = partial_transpose_b(rho.matrix());
    let eigs = hermitian_eigvals(&pt)?;
    Ok(eigs[3])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::IDENTITY_TOL;
    use crate::sampling::{derive_substream, sample_mixed, sample_pure};

    // Frozen 50-digit evaluations.
    const H_01: f64 = 0.468_995_593_589_281_2;
    const H_03: f64 = 0.881_290_899_230_692_6;
    const EOF_025: f64 = 0.117_618_873_770_917_91;

    #[test]
    fn spin_flip_operator_is_an_involution() {
        let s = sigma_yy_real();
        let sq = s.matmul(&s);
        let mut dev: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j { 1.0 } else { 0.0 };
                dev = dev.max((sq.entry(i, j) - expect).abs());
            }
        }
        assert_eq!(dev, 0.0);
    }

    #[test]
    fn bell_states_are_spin_flip_eigenstates() {
        let s = sigma_yy_real();
        for (state, eig) in [
            (bell_psi_plus(), 1.0),
            (bell_phi_minus(), 1.0),
            (bell_psi_minus(), -1.0),
            (bell_phi_plus(), -1.0),
        ] {
            let v: [f64; 4] = state.coefficients().map(|z| z.re);
            let sv = s.apply(&v);
            for (a, b) in sv.iter().zip(v.iter()) {
                assert!((a - eig * b).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn spin_flip_is_involutive_on_states() {
        let mut rng = derive_substream(31, 0);
        for kind in [ScalarKind::Real, ScalarKind::Complex] {
            for _ in 0..50 {
                let rho = sample_mixed(kind, &mut rng).unwrap();
                let back = spin_flip(&spin_flip(&rho));
                let mut dev: f64 = 0.0;
                for i in 0..4 {
                    for j in 0..4 {
                        dev = dev
                            .max((back.matrix().entry(i, j) - rho.matrix().entry(i, j)).norm());
                    }
                }
                assert!(dev < 1e-13);
                assert_eq!(back.kind(), kind);
            }
        }
    }

    #[test]
    fn bell_states_have_unit_concurrence() {
        for psi in [
            bell_phi_plus(),
            bell_phi_minus(),
            bell_psi_plus(),
            bell_psi_minus(),
        ] {
            let rho = psi.projector();
            assert!((qubit_concurrence(&rho).unwrap() - 1.0).abs() < 1e-12);
            assert!((rebit_concurrence(&rho).unwrap() - 1.0).abs() < 1e-12);
            assert!((pure_concurrence(&psi) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn separable_states_have_zero_concurrence() {
        let product = PureState::from_real([1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(qubit_concurrence(&product.projector()).unwrap() < 1e-12);
        assert!(pure_concurrence(&product) < 1e-15);

        let mm = DensityMatrix::validate(
            &Matrix4::<Complex64>::identity().scale(0.25),
            ScalarKind::Complex,
        )
        .unwrap();
        assert!(qubit_concurrence(&mm).unwrap() < 1e-12);
    }

    #[test]
    fn werner_family_matches_closed_form() {
        for i in 0..=10 {
            let p = i as f64 / 10.0;
            let rho = werner_state(p).unwrap();
            let c = qubit_concurrence(&rho).unwrap();
            assert!(
                (c - werner_concurrence(p)).abs() < 1e-10,
                "p = {p}: {c} vs {}",
                werner_concurrence(p)
            );
        }
        // Frozen point: p = 1/2 gives C = 1/4.
        let c = qubit_concurrence(&werner_state(0.5).unwrap()).unwrap();
        assert!((c - 0.25).abs() < 1e-10);
    }

    #[test]
    fn pure_real_states_agree_across_concurrence_routes() {
        let mut rng = derive_substream(33, 0);
        for _ in 0..300 {
            let psi = sample_pure(ScalarKind::Real, &mut rng).unwrap();
            let rho = psi.projector();
            let trace_form = rebit_concurrence(&rho).unwrap();
            let spectral = qubit_concurrence(&rho).unwrap();
            let direct = pure_concurrence(&psi);
            assert!(
                (trace_form - spectral).abs() < IDENTITY_TOL,
                "trace {trace_form} vs spectral {spectral}"
            );
            assert!((trace_form - direct).abs() < IDENTITY_TOL);
        }
    }

    #[test]
    fn pure_complex_states_agree_across_concurrence_routes() {
        let mut rng = derive_substream(34, 0);
        for _ in 0..300 {
            let psi = sample_pure(ScalarKind::Complex, &mut rng).unwrap();
            let rho = psi.projector();
            let spectral = qubit_concurrence(&rho).unwrap();
            let direct = pure_concurrence(&psi);
            assert!((spectral - direct).abs() < IDENTITY_TOL);
        }
    }

    #[test]
    fn mixed_real_discrepancy_between_routes_is_recorded() {
        // The trace form and the spectral form disagree on mixed real
        // states; both remain valid measures in [0, 1]. The gap is
        // reported, not asserted.
        let mut rng = derive_substream(35, 0);
        let mut max_gap: f64 = 0.0;
        let mut mean_gap = 0.0;
        let n = 300;
        for _ in 0..n {
            let rho = sample_mixed(ScalarKind::Real, &mut rng).unwrap();
            let a = rebit_concurrence(&rho).unwrap();
            let b = qubit_concurrence(&rho).unwrap();
            assert!((0.0..=1.0).contains(&a));
            assert!((0.0..=1.0).contains(&b));
            max_gap = max_gap.max((a - b).abs());
            mean_gap += (a - b).abs();
        }
        mean_gap /= n as f64;
        println!("mixed real-kind route gap: mean {mean_gap:.4}, max {max_gap:.4}");
    }

    #[test]
    fn rebit_concurrence_rejects_complex_kind() {
        let rho = werner_state(0.5).unwrap();
        assert!(matches!(
            rebit_concurrence(&rho),
            Err(EntanglementError::KindNotSupported { .. })
        ));
    }

    #[test]
    fn binary_entropy_values() {
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert!((binary_entropy(0.5).unwrap() - 1.0).abs() < 1e-15);
        assert!((binary_entropy(0.1).unwrap() - H_01).abs() < 1e-12);
        assert!((binary_entropy(0.3).unwrap() - H_03).abs() < 1e-12);
        for i in 1..20 {
            let x = i as f64 / 20.0;
            let h = binary_entropy(x).unwrap();
            assert!((h - binary_entropy(1.0 - x).unwrap()).abs() < 1e-14);
            assert!(h > 0.0 && h <= 1.0);
        }
        assert!(binary_entropy(-0.1).is_err());
        assert!(binary_entropy(1.1).is_err());
    }

    #[test]
    fn eof_endpoints_and_frozen_value() {
        assert_eq!(eof_from_concurrence(0.0).unwrap(), 0.0);
        assert!((eof_from_concurrence(1.0).unwrap() - 1.0).abs() < 1e-15);
        let e = eof_from_concurrence(0.25).unwrap();
        assert!((e - EOF_025).abs() < 1e-12);
        assert!((e - 0.11760).abs() < 1e-4);
        assert!(eof_from_concurrence(1.5).is_err());
    }

    #[test]
    fn eof_is_monotone_in_concurrence() {
        let mut last = -1.0;
        for i in 0..=1000 {
            let c = i as f64 / 1000.0;
            let e = eof_from_concurrence(c).unwrap();
            assert!(e > last, "not monotone at c = {c}");
            last = e;
        }
    }

    #[test]
    fn angles_produce_normalized_states_with_cos_concurrence() {
        let mut rng = derive_substream(36, 0);
        use rand::Rng;
        for _ in 0..500 {
            let theta = rng.gen_range(0.0..std::f64::consts::FRAC_PI_2);
            let phi1 = rng.gen_range(0.0..std::f64::consts::TAU);
            let phi2 = rng.gen_range(0.0..std::f64::consts::TAU);
            let angles = PureRebitAngles::new(theta, phi1, phi2).unwrap();
            let coeff = angles.coefficients();
            let nsq: f64 = coeff.iter().map(|c| c * c).sum();
            assert!((nsq - 1.0).abs() < 1e-12);

            let psi = angles.state();
            assert!((psi.norm_sq() - 1.0).abs() < 1e-12);
            // The projector's trace-form concurrence equals |cos 2 theta|.
            let c = rebit_concurrence(&psi.projector()).unwrap();
            assert!((c - angles.concurrence()).abs() < 1e-12);
            assert!((c - (2.0 * theta).cos().abs()).abs() < 1e-12);
        }
    }

    #[test]
    fn angles_round_trip_through_states() {
        let mut rng = derive_substream(37, 0);
        for _ in 0..500 {
            let psi = sample_pure(ScalarKind::Real, &mut rng).unwrap();
            let angles = PureRebitAngles::from_state(&psi).unwrap();
            let back = angles.state();
            // The angular chart covers the sphere up to a global sign.
            let dot: f64 = psi
                .coefficients()
                .iter()
                .zip(back.coefficients().iter())
                .map(|(a, b)| a.re * b.re)
                .sum();
            assert!(
                (dot.abs() - 1.0).abs() < 1e-10,
                "round trip overlap {dot}"
            );
            assert!(
                (angles.concurrence() - pure_concurrence(&psi)).abs() < 1e-12,
                "concurrence through angles diverges"
            );
        }
    }

    #[test]
    fn angle_domain_is_enforced() {
        assert!(PureRebitAngles::new(-0.1, 0.0, 0.0).is_err());
        assert!(PureRebitAngles::new(2.0, 0.0, 0.0).is_err());
        assert!(PureRebitAngles::new(0.3, 7.0, 0.0).is_err());
        assert!(PureRebitAngles::new(0.3, 0.0, -1.0).is_err());
    }

    #[test]
    fn concurrence_ceiling_values() {
        assert_eq!(max_c2(1.0).unwrap(), 1.0);
        assert_eq!(max_c2(1.5).unwrap(), 1.0);
        assert_eq!(max_c2(2.0).unwrap(), 1.0);
        assert!((max_c2(3.0).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!(max_c2(4.0).unwrap().abs() < 1e-15);
        assert!(max_c2(0.5).is_err());
        assert!(max_c2(4.5).is_err());
    }

    #[test]
    fn boundary_family_saturates_the_ceiling() {
        for i in 0..=20 {
            let t = i as f64 / 20.0;
            let rho = boundary_state(t).unwrap();
            assert!(DensityMatrix::validate(rho.matrix(), ScalarKind::Real).is_ok());
            let r = rho.participation_ratio();
            assert!((r - 4.0 / (1.0 + t * t)).abs() < 1e-12);
            let c = rebit_concurrence(&rho).unwrap();
            assert!((c - t).abs() < 1e-12);
            assert!((c * c - max_c2(r).unwrap()).abs() < 1e-12);
        }
        let rho = boundary_state(1.0 / 3.0_f64.sqrt()).unwrap();
        assert!((rho.participation_ratio() - 3.0).abs() < 1e-12);
        assert!(boundary_state(-0.1).is_err());
        assert!(boundary_state(1.5).is_err());
    }

    #[test]
    fn mixture_family_keeps_unit_concurrence() {
        for i in 0..=20 {
            let p = i as f64 / 20.0;
            let rho = max_entangled_mixture(p).unwrap();
            assert!(DensityMatrix::validate(rho.matrix(), ScalarKind::Real).is_ok());
            let c = rebit_concurrence(&rho).unwrap();
            assert!((c - 1.0).abs() < 1e-12, "p = {p}: C = {c}");
            let r = rho.participation_ratio();
            let expect = 1.0 / (p * p + (1.0 - p) * (1.0 - p));
            assert!((r - expect).abs() < 1e-12);
            assert!((1.0 - 1e-12..=2.0 + 1e-12).contains(&r));
        }
    }

    #[test]
    fn quaterbit_surface_values() {
        let pair = QuaterbitPair::from_surface_coords(0.25, 0.25).unwrap();
        assert!((pair.entanglement() - 1.0).abs() < 1e-12);

        let edge = QuaterbitPair::from_surface_coords(0.5, 0.5).unwrap();
        assert_eq!(edge.entanglement(), 0.0);

        let origin = QuaterbitPair::from_surface_coords(0.0, 0.0).unwrap();
        assert_eq!(origin.entanglement(), 0.0);

        for (x, y) in [(0.1, 0.3), (0.7, 0.1), (0.0, 0.45)] {
            let pair = QuaterbitPair::from_surface_coords(x, y).unwrap();
            let expect = binary_entropy(x + y).unwrap();
            assert!((pair.entanglement() - expect).abs() < 1e-12);
        }
        assert!(QuaterbitPair::from_surface_coords(0.8, 0.3).is_err());
        assert!(QuaterbitPair::from_surface_coords(-0.1, 0.3).is_err());
    }

    #[test]
    fn quaterbit_gauge_invariance() {
        let mut rng = derive_substream(38, 0);
        let pair = QuaterbitPair::from_surface_coords(0.3, 0.2).unwrap();
        for _ in 0..200 {
            let q = crate::sampling::sample_unit_quaternion(&mut rng);
            let rotated = pair.right_multiplied(q);
            let nsq = rotated.c1().norm_sq() + rotated.c2().norm_sq();
            assert!((nsq - 1.0).abs() < 1e-12);
            assert!((rotated.entanglement() - pair.entanglement()).abs() < 1e-12);
        }
    }

    #[test]
    fn quaterbit_density_is_self_adjoint() {
        let mut rng = derive_substream(39, 0);
        let base = QuaterbitPair::from_surface_coords(0.4, 0.15).unwrap();
        for _ in 0..100 {
            let q = crate::sampling::sample_unit_quaternion(&mut rng);
            let pair = base.right_multiplied(q);
            let rho = pair.density();
            assert!(rho.self_adjoint_deviation() < 1e-14);
            assert!((rho.trace().w - 1.0).abs() < 1e-12);
            assert!(rho.trace().deviation_from(ScalarKind::Real) < 1e-14);
        }
    }

    #[test]
    fn quaterbit_normalization_is_enforced() {
        assert!(matches!(
            QuaterbitPair::new(Quaternion::ONE, Quaternion::ONE),
            Err(EntanglementError::NotNormalized { .. })
        ));
    }

    #[test]
    fn partial_transpose_known_values() {
        // Entangled Bell projector: min eigenvalue -1/2.
        let rho = bell_phi_plus().projector();
        let min = ppt_min_eigenvalue(&rho).unwrap();
        assert!((min + 0.5).abs() < 1e-12);

        // Werner state at the separability edge p = 1/3: min eigenvalue 0.
        let min = ppt_min_eigenvalue(&werner_state(1.0 / 3.0).unwrap()).unwrap();
        assert!(min.abs() < 1e-12);

        // Product state: non-negative.
        let prod = PureState::from_real([1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(ppt_min_eigenvalue(&prod.projector()).unwrap() >= -1e-12);

        // Maximally mixed: partial transpose is itself, min eigenvalue 1/4.
        let mm = DensityMatrix::validate(
            &Matrix4::<Complex64>::identity().scale(0.25),
            ScalarKind::Complex,
        )
        .unwrap();
        assert!((ppt_min_eigenvalue(&mm).unwrap() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn partial_transpose_matches_block_transposition() {
        let mut rng = derive_substream(40, 0);
        let rho = sample_mixed(ScalarKind::Complex, &mut rng).unwrap();
        let pt = partial_transpose_b(rho.matrix());
        for a in 0..2 {
            for ap in 0..2 {
                for b in 0..2 {
                    for bp in 0..2 {
                        let orig = rho.matrix().entry(2 * a + b, 2 * ap + bp);
                        let swapped = pt.entry(2 * a + bp, 2 * ap + b);
                        assert_eq!(orig, swapped);
                    }
                }
            }
        }
        assert!(pt.self_adjoint_deviation() < 1e-14);
    }

    #[test]
    fn zero_concurrence_matches_positive_partial_transpose() {
        let mut rng = derive_substream(41, 0);
        for _ in 0..10_000 {
            let rho = sample_mixed(ScalarKind::Complex, &mut rng).unwrap();
            let c = qubit_concurrence(&rho).unwrap();
            let min = ppt_min_eigenvalue(&rho).unwrap();
            let separable_by_c = c < 1e-9;
            let separable_by_ppt = min >= -1e-10;
            assert_eq!(
                separable_by_c, separable_by_ppt,
                "C = {c:.3e}, min PT eigenvalue = {min:.3e}"
            );
        }
    }
}
