//! Spinors, Dirac and generalized duals, and bilinear covariants.

use nalgebra::RowVector4;

use crate::clifford::{basis, matrix_of, Multivector};
use crate::duals::DualCoefficients;
use crate::error::{Error, Result};
use crate::fpk::check_fpk;
use crate::tensor::{
    dot, levi_civita_upper, max_abs_vector, raise, Bivector, Matrix4, Vector4, C64, I, METRIC, ZERO,
};

/// Tolerance used when a closed form requires its input to be FPK-consistent.
pub const SEED_FPK_TOL: f64 = 1e-8;

/// Four complex components in the Weyl representation: rows 0–1 are the
/// upper (π = +1) chirality, rows 2–3 the lower.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor {
    components: Vector4,
}

impl Spinor {
    pub fn new(components: [C64; 4]) -> Self {
        Self { components: Vector4::from_column_slice(&components) }
    }

    pub fn from_vector(components: Vector4) -> Self {
        Self { components }
    }

    /// Builds a spinor from `[re0, re1, re2, re3, im0, im1, im2, im3]`.
    pub fn from_real_parts(parts: &[f64; 8]) -> Self {
        Self::from_vector(Vector4::from_fn(|k, _| C64::new(parts[k], parts[k + 4])))
    }

    pub fn zero() -> Self {
        Self::from_vector(Vector4::zeros())
    }

    pub fn components(&self) -> &Vector4 {
        &self.components
    }

    pub fn to_array(&self) -> [C64; 4] {
        std::array::from_fn(|k| self.components[k])
    }

    pub fn scaled(&self, lambda: C64) -> Self {
        Self::from_vector(self.components * lambda)
    }

    pub fn norm(&self) -> f64 {
        self.components.norm()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|z| *z == ZERO)
    }

    /// Global phase fixed so that the largest-magnitude component is real and
    /// positive. Ties go to the lowest index.
    pub fn canonical_phase(&self) -> Self {
        let mut best = 0;
        for k in 1..4 {
            if self.components[k].norm() > self.components[best].norm() {
                best = k;
            }
        }
        let z = self.components[best];
        if z.norm() == 0.0 {
            return *self;
        }
        let phase = z.conj() / z.norm();
        let mut out = self.components * phase;
        out[best] = C64::new(out[best].norm(), 0.0);
        Self::from_vector(out)
    }
}

/// A row spinor, the result of a dual operation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualSpinor(pub RowVector4<C64>);

impl DualSpinor {
    pub fn apply(&self, m: &Matrix4, psi: &Spinor) -> C64 {
        (self.0 * m * psi.components())[(0, 0)]
    }
}

/// `ψ̄ = ψ†γ⁰`.
pub fn dirac_dual(psi: &Spinor) -> DualSpinor {
    DualSpinor(psi.components().adjoint() * basis().gamma[0])
}

/// `ψ̃ = ψ̄ Δ` with Δ the matrix of the multivector.
pub fn general_dual(psi: &Spinor, dual: &Multivector) -> DualSpinor {
    DualSpinor(dirac_dual(psi).0 * matrix_of(dual))
}

/// Φ, Θ, U, S, M with every tensor stored with lower indices. Σ is derived
/// from M and never stored.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BilinearSet {
    pub phi: C64,
    pub theta: C64,
    pub u: Vector4,
    pub s: Vector4,
    pub m: Bivector,
}

impl BilinearSet {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `Σ_ab`, the dual of `M_ab` (`Σ^{ab} = −½ ε^{abij} M_ij`).
    pub fn sigma(&self) -> Bivector {
        self.m.dual()
    }

    /// Sup norm over all stored components.
    pub fn max_abs(&self) -> f64 {
        self.phi
            .norm()
            .max(self.theta.norm())
            .max(max_abs_vector(&self.u))
            .max(max_abs_vector(&self.s))
            .max(self.m.max_abs())
    }

    /// Flattened components: Φ, Θ, U₀..U₃, S₀..S₃, then the six M pairs.
    pub fn components(&self) -> [C64; 16] {
        let mut out = [ZERO; 16];
        out[0] = self.phi;
        out[1] = self.theta;
        for a in 0..4 {
            out[2 + a] = self.u[a];
            out[6 + a] = self.s[a];
        }
        out[10..].copy_from_slice(self.m.components());
        out
    }

    pub fn from_components(c: [C64; 16]) -> Self {
        Self {
            phi: c[0],
            theta: c[1],
            u: Vector4::from_fn(|a, _| c[2 + a]),
            s: Vector4::from_fn(|a, _| c[6 + a]),
            m: Bivector::new(std::array::from_fn(|i| c[10 + i])),
        }
    }

    pub fn max_deviation(&self, other: &BilinearSet) -> f64 {
        self.components()
            .iter()
            .zip(other.components())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_imag(&self) -> f64 {
        self.components().iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.max_imag() <= tol
    }

    pub fn scaled(&self, factor: C64) -> Self {
        Self::from_components(self.components().map(|z| z * factor))
    }
}

/// First-principles bilinears `χΓψ` for an arbitrary row spinor χ.
pub fn bilinears_from_pair(chi: &DualSpinor, psi: &Spinor) -> BilinearSet {
    let b = basis();
    let two_i = C64::new(0.0, 2.0);
    BilinearSet {
        phi: chi.apply(&Matrix4::identity(), psi),
        theta: chi.apply(&b.pi, psi) * I,
        u: Vector4::from_fn(|a, _| chi.apply(&b.gamma_lower[a], psi)),
        s: Vector4::from_fn(|a, _| chi.apply(&(b.gamma_lower[a] * b.pi), psi)),
        m: Bivector::from_fn(|p, q| chi.apply(&b.sigma_lower[p][q], psi) * two_i),
    }
}

/// Bilinears of ψ under the generalized dual `ψ̃ = ψ̄·matrix_of(dual)`.
pub fn bilinears(psi: &Spinor, dual: &Multivector) -> BilinearSet {
    bilinears_from_pair(&general_dual(psi, dual), psi)
}

pub fn dirac_bilinears(psi: &Spinor) -> BilinearSet {
    bilinears_from_pair(&dirac_dual(psi), psi)
}

fn lower_vector(v_upper: &Vector4) -> Vector4 {
    raise(v_upper)
}

/// Closed-form generalized bilinears in terms of the Dirac bilinears of the
/// same spinor.
///
/// The coefficients are read in the ansatz convention of [`DualCoefficients`]:
/// `A = a + ibπ + c v_a γ^a + d n_a γ^a π + i e h_ab σ^{ab}` (double sum).
/// Antisymmetrizations `X^{[j}Y^{k]}` carry no factor ½.
pub fn transformed_bilinears(dirac: &BilinearSet, coeffs: &DualCoefficients) -> Result<BilinearSet> {
    let report = check_fpk(dirac, SEED_FPK_TOL);
    if !report.passes {
        let (identity, residual) = report.worst();
        return Err(Error::FierzViolation { identity: identity.name(), residual, tol: SEED_FPK_TOL });
    }

    let (a, b) = (coeffs.a, coeffs.b);
    let v = coeffs.v * coeffs.c;
    let n = coeffs.n * coeffs.d;
    let h = coeffs.h * coeffs.e;

    let (phi, theta) = (dirac.phi, dirac.theta);
    let (u, s) = (dirac.u, dirac.s);
    let (uu, su, vu, nu) = (raise(&u), raise(&s), raise(&v), raise(&n));
    let sigma = dirac.sigma();
    let m_up = dirac.m.raised_matrix();
    let sig_up = sigma.raised_matrix();
    let h_up = h.raised_matrix();
    let h_low = h.to_matrix();

    let phi_t = a * phi + b * theta + dot(&v, &u) + dot(&n, &s) + h.contract(&dirac.m) * 0.5;
    let theta_t = a * theta - b * phi + I * dot(&v, &s) + I * dot(&n, &u) - h.contract(&sigma) * 0.5;

    // ½ h_ab ε^{abjk} X_k
    let h_eps = |x: &Vector4, j: usize| -> C64 {
        let mut acc = ZERO;
        for p in 0..4 {
            for q in 0..4 {
                for k in 0..4 {
                    let eps = levi_civita_upper(p, q, j, k);
                    if eps != 0.0 {
                        acc += h_low[(p, q)] * x[k] * eps;
                    }
                }
            }
        }
        acc * 0.5
    };

    let mut u_t = Vector4::zeros();
    let mut s_t = Vector4::zeros();
    for j in 0..4 {
        let mut uj = a * uu[j] - I * b * su[j] + vu[j] * phi + I * nu[j] * theta;
        let mut sj = a * su[j] - I * b * uu[j] - I * vu[j] * theta - nu[j] * phi;
        for p in 0..4 {
            uj += I * v[p] * m_up[(j, p)] + n[p] * sig_up[(j, p)] + I * h_up[(p, j)] * u[p];
            sj += v[p] * sig_up[(p, j)] + I * n[p] * m_up[(p, j)] + I * h_up[(p, j)] * s[p];
        }
        u_t[j] = uj + h_eps(&s, j);
        s_t[j] = sj + h_eps(&u, j);
    }

    // h^k_a = h^{kb} η_ba
    let h_mixed = |k: usize, p: usize| h_up[(k, p)] * METRIC[p];
    let mut m_t = Matrix4::zeros();
    for j in 0..4 {
        for k in 0..4 {
            if j == k {
                continue;
            }
            let mut x = a * m_up[(j, k)] - b * sig_up[(j, k)]
                + I * (vu[j] * uu[k] - vu[k] * uu[j])
                + I * (nu[j] * su[k] - nu[k] * su[j])
                + h_up[(j, k)] * phi;
            for p in 0..4 {
                x += I * (m_up[(p, j)] * h_mixed(k, p) - m_up[(p, k)] * h_mixed(j, p));
                for q in 0..4 {
                    let eps = levi_civita_upper(p, j, k, q);
                    if eps != 0.0 {
                        x += (v[p] * s[q] + n[p] * u[q]) * eps;
                    }
                    let eps2 = levi_civita_upper(p, q, j, k);
                    if eps2 != 0.0 {
                        x -= h_low[(p, q)] * theta * (0.5 * eps2);
                    }
                }
            }
            m_t[(j, k)] = x * (METRIC[j] * METRIC[k]);
        }
    }

    Ok(BilinearSet {
        phi: phi_t,
        theta: theta_t,
        u: lower_vector(&u_t),
        s: lower_vector(&s_t),
        m: Bivector::from_matrix(&m_t),
    })
}
