//! Two-qubit states, rank-1 projective measurements, Born-rule
//! probabilities and the Wootters concurrence.
//!
//! Basis ordering is `|ab⟩ ↦ 2a + b`, so `A ⊗ B` is the ordinary Kronecker
//! product with Alice as the left factor.

use std::f64::consts::FRAC_PI_4;

use nalgebra::{Complex, Matrix2, Matrix4, SymmetricEigen, Vector4};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;

pub const HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
pub const PSD_TOL: f64 = 1e-10;
pub const UNIT_TOL: f64 = 1e-12;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// `σ_0 = 1`, `σ_1 = X`, `σ_2 = Y`, `σ_3 = Z`.
pub fn pauli(index: usize) -> Matrix2<C64> {
    match index {
        0 => Matrix2::new(ONE, ZERO, ZERO, ONE),
        1 => Matrix2::new(ZERO, ONE, ONE, ZERO),
        2 => Matrix2::new(ZERO, -I, I, ZERO),
        3 => Matrix2::new(ONE, ZERO, ZERO, -ONE),
        _ => panic!("pauli index {index} out of range"),
    }
}

pub fn kron(a: &Matrix2<C64>, b: &Matrix2<C64>) -> Matrix4<C64> {
    Matrix4::from_fn(|r, c| a[(r / 2, c / 2)] * b[(r % 2, c % 2)])
}

fn max_abs(m: impl IntoIterator<Item = C64>) -> f64 {
    m.into_iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn hermitian_eigen(m: Matrix4<C64>) -> Result<SymmetricEigen<C64, nalgebra::U4>> {
    SymmetricEigen::try_new(m, f64::EPSILON, 10_000)
        .ok_or_else(|| Error::Computation("hermitian eigen-solver did not converge".into()))
}

/// A two-qubit density matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoQubitState {
    matrix: Matrix4<C64>,
}

impl TwoQubitState {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(matrix: Matrix4<C64>) -> Result<Self> {
        let herm = max_abs((matrix - matrix.adjoint()).iter().copied());
        if !(herm <= HERMITIAN_TOL) {
            return Err(Error::domain(format!("density matrix not Hermitian (residual {herm:.3e})")));
        }
        let trace = matrix.trace();
        if !((trace - ONE).norm() <= TRACE_TOL) {
            return Err(Error::domain(format!("density matrix trace {} != 1", trace.re)));
        }
        let hermitized = (matrix + matrix.adjoint()).scale(0.5);
        let min_eig = hermitian_eigen(hermitized)?.eigenvalues.min();
        if min_eig < -PSD_TOL {
            return Err(Error::domain(format!("density matrix not positive semidefinite (eigenvalue {min_eig:.3e})")));
        }
        Ok(Self { matrix })
    }

    /// `|ψ⟩⟨ψ|` for a normalized amplitude vector.
    pub fn from_pure(psi: Vector4<C64>) -> Result<Self> {
        let norm = psi.norm();
        if !((norm - 1.0).abs() <= UNIT_TOL) {
            return Err(Error::domain(format!("state vector norm {norm} != 1")));
        }
        Self::new(psi * psi.adjoint())
    }

    /// `|00⟩⟨00|`.
    pub fn product_zero() -> Self {
        let mut m = Matrix4::zeros();
        m[(0, 0)] = ONE;
        Self { matrix: m }
    }

    /// `p |Φ+⟩⟨Φ+| + (1 − p) 1/4`.
    pub fn werner(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::domain(format!("Werner weight {p} outside [0, 1]")));
        }
        let phi = schmidt_state(FRAC_PI_4)?;
        let noise = Matrix4::<C64>::identity().scale(0.25);
        Self::new(phi.matrix.scale(p) + noise.scale(1.0 - p))
    }

    pub fn matrix(&self) -> &Matrix4<C64> {
        &self.matrix
    }

    /// `(U ⊗ V) ρ (U ⊗ V)†`.
    pub fn locally_rotated(&self, u: &Matrix2<C64>, v: &Matrix2<C64>) -> Result<Self> {
        let w = kron(u, v);
        Self::new(w * self.matrix * w.adjoint())
    }

    /// `tr(ρ O)` for an observable on the joint space, real part.
    pub fn expectation(&self, observable: &Matrix4<C64>) -> f64 {
        (self.matrix * observable).trace().re
    }

    /// Local Bloch vectors and correlation matrix:
    /// `ρ = ¼ Σ_{ij} t_ij σ_i ⊗ σ_j` with `t_00 = 1`.
    pub fn pauli_form(&self) -> PauliForm {
        let mut alice = [0.0; 3];
        let mut bob = [0.0; 3];
        let mut corr = [[0.0; 3]; 3];
        for i in 0..3 {
            alice[i] = self.expectation(&kron(&pauli(i + 1), &pauli(0)));
            bob[i] = self.expectation(&kron(&pauli(0), &pauli(i + 1)));
            for j in 0..3 {
                corr[i][j] = self.expectation(&kron(&pauli(i + 1), &pauli(j + 1)));
            }
        }
        PauliForm { alice, bob, corr }
    }

    pub fn purity(&self) -> f64 {
        (self.matrix * self.matrix).trace().re
    }
}

/// Real Pauli-basis coordinates of a two-qubit state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PauliForm {
    /// `tr(ρ σ_i ⊗ 1)`
    pub alice: [f64; 3],
    /// `tr(ρ 1 ⊗ σ_j)`
    pub bob: [f64; 3],
    /// `tr(ρ σ_i ⊗ σ_j)`
    pub corr: [[f64; 3]; 3],
}

/// Pure state `cos γ |00⟩ + sin γ |11⟩` with `0 ≤ γ ≤ π/4`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchmidtState {
    gamma: f64,
}

impl SchmidtState {
    pub fn new(gamma: f64) -> Result<Self> {
        if !(0.0..=FRAC_PI_4).contains(&gamma) {
            return Err(Error::domain(format!("Schmidt angle {gamma} outside [0, π/4]")));
        }
        Ok(Self { gamma })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// `sin 2γ`.
    pub fn concurrence(&self) -> f64 {
        (2.0 * self.gamma).sin()
    }

    pub fn state(&self) -> TwoQubitState {
        let (s, c) = self.gamma.sin_cos();
        let psi = Vector4::new(C64::from(c), ZERO, ZERO, C64::from(s));
        TwoQubitState { matrix: psi * psi.adjoint() }
    }
}

pub fn schmidt_state(gamma: f64) -> Result<TwoQubitState> {
    Ok(SchmidtState::new(gamma)?.state())
}

/// Unit vector on the Bloch sphere.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlochVector {
    x: f64,
    y: f64,
    z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !((norm - 1.0).abs() <= UNIT_TOL) {
            return Err(Error::domain(format!("Bloch vector ({x}, {y}, {z}) has norm {norm}")));
        }
        Ok(Self { x, y, z })
    }

    /// Normalizes a nonzero direction.
    pub fn from_direction(v: [f64; 3]) -> Result<Self> {
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::domain("cannot normalize a zero or non-finite direction"));
        }
        Ok(Self { x: v[0] / norm, y: v[1] / norm, z: v[2] / norm })
    }

    /// `(sin θ, 0, cos θ)`: a direction in the x–z plane at polar angle θ.
    pub fn in_plane(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self { x: s, y: 0.0, z: c }
    }

    pub fn spherical(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Self { x: st * cp, y: st * sp, z: ct }
    }

    /// Uniform on the sphere.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let z: f64 = rng.random_range(-1.0..=1.0);
        let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let r = (1.0 - z * z).max(0.0).sqrt();
        Self { x: r * phi.cos(), y: r * phi.sin(), z }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    /// Polar angle from the z axis, `arccos z`.
    pub fn theta(&self) -> f64 {
        self.z.clamp(-1.0, 1.0).acos()
    }

    /// `n · σ⃗`
    pub fn sigma(&self) -> Matrix2<C64> {
        pauli(1).scale(self.x) + pauli(2).scale(self.y) + pauli(3).scale(self.z)
    }
}

/// Rank-1 projector on a qubit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Projector2x2 {
    matrix: Matrix2<C64>,
}

impl Projector2x2 {
    pub fn new(matrix: Matrix2<C64>) -> Result<Self> {
        let herm = max_abs((matrix - matrix.adjoint()).iter().copied());
        let idem = max_abs((matrix * matrix - matrix).iter().copied());
        let trace = matrix.trace();
        if !(herm <= HERMITIAN_TOL && idem <= HERMITIAN_TOL && (trace - ONE).norm() <= TRACE_TOL) {
            return Err(Error::domain(format!(
                "not a rank-1 projector (hermiticity {herm:.3e}, idempotency {idem:.3e}, trace {})",
                trace.re
            )));
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &Matrix2<C64> {
        &self.matrix
    }
}

/// `½ [1 + (−1)^outcome n·σ⃗]`.
pub fn projector_from_bloch(n: &BlochVector, outcome: u8) -> Result<Projector2x2> {
    let sign = match outcome {
        0 => 1.0,
        1 => -1.0,
        _ => return Err(Error::domain(format!("outcome {outcome} is not a bit"))),
    };
    // Re-check: a BlochVector built by deserialization bypasses `new`.
    let norm = n.to_array().iter().map(|c| c * c).sum::<f64>().sqrt();
    if !((norm - 1.0).abs() <= UNIT_TOL) {
        return Err(Error::domain(format!("Bloch vector has norm {norm}")));
    }
    Ok(Projector2x2 {
        matrix: (pauli(0) + n.sigma().scale(sign)).scale(0.5),
    })
}

/// Born rule `tr(ρ A ⊗ B)`, clamped to [0, 1].
pub fn joint_probability(rho: &TwoQubitState, a: &Projector2x2, b: &Projector2x2) -> f64 {
    rho.expectation(&kron(&a.matrix, &b.matrix)).clamp(0.0, 1.0)
}

/// Eigenvalues of `ρ` at or below this are treated as exact zeros.
const EIGEN_FLOOR: f64 = 16.0 * f64::EPSILON;

/// Wootters concurrence.
///
/// With `ρ = W W†` (columns of `W` are the eigenvectors scaled by the root of
/// their eigenvalue), the square roots of the eigenvalues of
/// `ρ (σ_y⊗σ_y) ρ* (σ_y⊗σ_y)` are the singular values of `Wᵀ (σ_y⊗σ_y) W`.
/// Taking singular values avoids a second square root, so pure states come
/// out accurate to machine precision.
pub fn concurrence(rho: &TwoQubitState) -> Result<f64> {
    let eig = hermitian_eigen(rho.matrix)?;
    let roots = eig
        .eigenvalues
        .map(|l| C64::from(if l > EIGEN_FLOOR { l.sqrt() } else { 0.0 }));
    let w = eig.eigenvectors * Matrix4::from_diagonal(&roots);
    let yy = kron(&pauli(2), &pauli(2));
    let tau = w.transpose() * yy * w;

    let mut lambdas: Vec<f64> = tau.singular_values().iter().copied().collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    let c = 2.0 * lambdas[0] - lambdas.iter().sum::<f64>();
    Ok(c.clamp(0.0, 1.0))
}

/// Random mixed state `G G† / tr(G G†)` with a complex Ginibre `G`.
pub fn random_mixed_state<R: Rng + ?Sized>(rng: &mut R) -> TwoQubitState {
    let g = Matrix4::<C64>::from_fn(|_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let m = g * g.adjoint();
    let m = m.unscale(m.trace().re);
    TwoQubitState { matrix: (m + m.adjoint()).scale(0.5) }
}

/// Haar-random pure state.
pub fn random_pure_state<R: Rng + ?Sized>(rng: &mut R) -> TwoQubitState {
    let psi = Vector4::<C64>::from_fn(|_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let psi = psi.unscale(psi.norm());
    TwoQubitState { matrix: psi * psi.adjoint() }
}

/// Haar-random element of U(2).
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R) -> Matrix2<C64> {
    let mut q = [0.0f64; 4];
    for c in q.iter_mut() {
        *c = rng.sample(StandardNormal);
    }
    let n = q.iter().map(|c| c * c).sum::<f64>().sqrt();
    let [a, b, c, d] = q.map(|c| c / n);
    let phase = C64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
    let alpha = C64::new(a, b);
    let beta = C64::new(c, d);
    Matrix2::new(alpha, -beta.conj(), beta, alpha.conj()) * phase
}
