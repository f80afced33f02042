//! Fixed matrix representation of the complexified spacetime Clifford algebra
//! and the bijection between multivectors and 4×4 complex matrices.
//!
//! Representation (Weyl/chiral blocks):
//!
//! ```text
//! γ⁰ = [[0, 1], [1, 0]]      γᵏ = [[0, −σᵏ], [σᵏ, 0]]      π = iγ⁰γ¹γ²γ³ = diag(1, 1, −1, −1)
//! ```
//!
//! with `ε₀₁₂₃ = +1`. These are the unique block signs for which the
//! multivector matrix reproduces the vector entries of the closed-form Δ and
//! for which `2iσ_ab = ε_abcd π σ^cd` holds.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::{self, max_abs_matrix, Bivector, Matrix4, Vector4, C64, I, METRIC, ONE, PAIRS, ZERO};

/// Sign choices that pin down the representation. Single source of truth for
/// the whole crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Conventions {
    /// Metric signature, always `(+1, −1, −1, −1)`.
    pub metric: [f64; 4],
    /// Orientation `ε₀₁₂₃`.
    pub epsilon_0123: f64,
    /// `π = pi_sign · iγ⁰γ¹γ²γ³`.
    pub pi_sign: f64,
    /// Sign of the upper-right block of `γᵏ` relative to the Pauli matrix `σᵏ`.
    pub spatial_block_sign: f64,
    pub representation: &'static str,
}

pub const CONVENTIONS: Conventions = Conventions {
    metric: METRIC,
    epsilon_0123: 1.0,
    pi_sign: 1.0,
    spatial_block_sign: -1.0,
    representation: "weyl-chiral/v1",
};

impl Conventions {
    /// Short string identifying the conventions, carried in every CLI output.
    pub fn fingerprint(&self) -> String {
        format!(
            "{};eps0123={:+};pi={:+};gk={:+}",
            self.representation, self.epsilon_0123 as i32, self.pi_sign as i32, self.spatial_block_sign as i32
        )
    }

    /// Checks the defining relations of the representation against the stored
    /// sign choices.
    pub fn verify(&self) -> Result<()> {
        const TOL: f64 = 1e-14;
        let b = basis();
        let id = Matrix4::identity();
        for a in 0..4 {
            for c in 0..4 {
                let anti = b.gamma[a] * b.gamma[c] + b.gamma[c] * b.gamma[a];
                let expected = if a == c { id * C64::from(2.0 * METRIC[a]) } else { Matrix4::zeros() };
                if max_abs_matrix(&(anti - expected)) > TOL {
                    return Err(Error::Conventions(format!("{{γ^{a}, γ^{c}}} ≠ 2η^{a}{c}")));
                }
            }
            if max_abs_matrix(&(b.pi * b.gamma[a] + b.gamma[a] * b.pi)) > TOL {
                return Err(Error::Conventions(format!("π does not anticommute with γ^{a}")));
            }
        }
        if max_abs_matrix(&(b.pi * b.pi - id)) > TOL {
            return Err(Error::Conventions("π² ≠ 1".into()));
        }
        for &(p, q) in &PAIRS {
            let lhs = b.sigma_lower[p][q] * C64::new(0.0, 2.0);
            let mut rhs = Matrix4::zeros();
            for r in 0..4 {
                for s in 0..4 {
                    let eps = tensor::levi_civita(p, q, r, s);
                    if eps != 0.0 {
                        rhs += b.pi * b.sigma_upper[r][s] * C64::from(eps);
                    }
                }
            }
            if max_abs_matrix(&(lhs - rhs)) > TOL {
                return Err(Error::Conventions(format!("2iσ_{p}{q} ≠ ε_{p}{q}cd π σ^cd")));
            }
        }
        Ok(())
    }
}

pub(crate) struct Basis {
    pub gamma: [Matrix4; 4],
    pub gamma_lower: [Matrix4; 4],
    pub pi: Matrix4,
    pub sigma_upper: [[Matrix4; 4]; 4],
    pub sigma_lower: [[Matrix4; 4]; 4],
}

fn pauli(k: usize) -> [[C64; 2]; 2] {
    match k {
        1 => [[ZERO, ONE], [ONE, ZERO]],
        2 => [[ZERO, -I], [I, ZERO]],
        3 => [[ONE, ZERO], [ZERO, -ONE]],
        _ => [[ONE, ZERO], [ZERO, ONE]],
    }
}

fn off_diagonal(upper_right: [[C64; 2]; 2], lower_left: [[C64; 2]; 2]) -> Matrix4 {
    let mut m = Matrix4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            m[(i, j + 2)] = upper_right[i][j];
            m[(i + 2, j)] = lower_left[i][j];
        }
    }
    m
}

fn scale2(s: f64, m: [[C64; 2]; 2]) -> [[C64; 2]; 2] {
    m.map(|row| row.map(|z| z * s))
}

fn build_basis(conv: &Conventions) -> Basis {
    let mut gamma = [Matrix4::zeros(); 4];
    gamma[0] = off_diagonal(pauli(0), pauli(0));
    for k in 1..4 {
        let s = conv.spatial_block_sign;
        gamma[k] = off_diagonal(scale2(s, pauli(k)), scale2(-s, pauli(k)));
    }
    let gamma_lower = std::array::from_fn(|a| gamma[a] * C64::from(METRIC[a]));
    let pi = gamma[0] * gamma[1] * gamma[2] * gamma[3] * (I * conv.pi_sign);
    let commutator = |g: &[Matrix4; 4], a: usize, b: usize| (g[a] * g[b] - g[b] * g[a]) * C64::from(0.25);
    let sigma_upper = std::array::from_fn(|a| std::array::from_fn(|b| commutator(&gamma, a, b)));
    let sigma_lower = std::array::from_fn(|a| std::array::from_fn(|b| commutator(&gamma_lower, a, b)));
    Basis { gamma, gamma_lower, pi, sigma_upper, sigma_lower }
}

pub(crate) fn basis() -> &'static Basis {
    static BASIS: OnceLock<Basis> = OnceLock::new();
    BASIS.get_or_init(|| build_basis(&CONVENTIONS))
}

fn check_index(what: &'static str, index: usize) -> Result<()> {
    if index < 4 {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { what, index })
    }
}

/// `γ^a` (upper index).
pub fn gamma(index: usize) -> Result<Matrix4> {
    check_index("gamma", index)?;
    Ok(basis().gamma[index])
}

/// `γ_a = η_ab γ^b`.
pub fn gamma_lower(index: usize) -> Result<Matrix4> {
    check_index("gamma", index)?;
    Ok(basis().gamma_lower[index])
}

/// The parity-odd matrix π (usually written γ⁵).
pub fn pi() -> Matrix4 {
    basis().pi
}

/// `σ_ab = [γ_a, γ_b] / 4` with lower indices.
pub fn sigma(a: usize, b: usize) -> Result<Matrix4> {
    check_index("sigma", a)?;
    check_index("sigma", b)?;
    Ok(basis().sigma_lower[a][b])
}

/// `σ^{ab} = [γ^a, γ^b] / 4`.
pub fn sigma_upper(a: usize, b: usize) -> Result<Matrix4> {
    check_index("sigma", a)?;
    check_index("sigma", b)?;
    Ok(basis().sigma_upper[a][b])
}

/// `γ⁰ M† γ⁰`.
pub fn gamma0_adjoint(m: &Matrix4) -> Matrix4 {
    let g0 = basis().gamma[0];
    g0 * m.adjoint() * g0
}

pub fn is_gamma0_hermitian(m: &Matrix4, tol: f64) -> bool {
    max_abs_matrix(&(gamma0_adjoint(m) - m)) <= tol
}

/// Element of ℂ⊗Cℓ(1,3) in the graded basis.
///
/// The matrix is
/// `scalar·𝕀 + i·pseudoscalar·π + vector_a γ^a + pseudovector_a πγ^a + i Σ_{a<b} bivector_ab σ^{ab}`,
/// one bivector term per independent pair. With this normalization every
/// coefficient is real exactly when the matrix is γ⁰-Hermitian, and the
/// coefficients coincide with the trace projections of [`multivector_of`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Multivector {
    pub scalar: C64,
    pub pseudoscalar: C64,
    pub vector: Vector4,
    pub pseudovector: Vector4,
    pub bivector: Bivector,
}

impl Multivector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self { scalar: ONE, ..Self::default() }
    }

    /// All sixteen coefficients in the order scalar, pseudoscalar, vector,
    /// pseudovector, bivector.
    pub fn coefficients(&self) -> [C64; 16] {
        let mut out = [ZERO; 16];
        out[0] = self.scalar;
        out[1] = self.pseudoscalar;
        for a in 0..4 {
            out[2 + a] = self.vector[a];
            out[6 + a] = self.pseudovector[a];
        }
        out[10..].copy_from_slice(self.bivector.components());
        out
    }

    pub fn from_coefficients(c: [C64; 16]) -> Self {
        Self {
            scalar: c[0],
            pseudoscalar: c[1],
            vector: Vector4::from_fn(|a, _| c[2 + a]),
            pseudovector: Vector4::from_fn(|a, _| c[6 + a]),
            bivector: Bivector::new(std::array::from_fn(|i| c[10 + i])),
        }
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.coefficients().iter().all(|z| z.im.abs() <= tol)
    }

    pub fn max_abs(&self) -> f64 {
        self.coefficients().iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

pub fn matrix_of(mv: &Multivector) -> Matrix4 {
    let b = basis();
    let mut m = Matrix4::identity() * mv.scalar + b.pi * (I * mv.pseudoscalar);
    for a in 0..4 {
        m += b.gamma[a] * mv.vector[a];
        m += b.pi * b.gamma[a] * mv.pseudovector[a];
    }
    for (slot, &(p, q)) in PAIRS.iter().enumerate() {
        m += b.sigma_upper[p][q] * (I * mv.bivector.components()[slot]);
    }
    m
}

/// Trace projections onto the graded basis; inverse of [`matrix_of`].
pub fn multivector_of(d: &Matrix4) -> Multivector {
    let b = basis();
    let quarter = C64::from(0.25);
    let tr = |m: Matrix4| m.trace();
    Multivector {
        scalar: tr(*d) * quarter,
        pseudoscalar: tr(d * b.pi) * C64::new(0.0, -0.25),
        vector: Vector4::from_fn(|a, _| tr(d * b.gamma_lower[a]) * quarter),
        pseudovector: Vector4::from_fn(|a, _| tr(d * b.gamma_lower[a] * b.pi) * quarter),
        bivector: Bivector::from_fn(|p, q| tr(d * b.sigma_upper[p][q].adjoint()) * -I),
    }
}
