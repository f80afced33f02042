//! Fierz–Pauli–Kofink identities.

use std::fmt;

use crate::bilinears::BilinearSet;
use crate::tensor::{dot, levi_civita, raise, Bivector, Vector4, C64, ZERO};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FpkIdentity {
    /// `M_ab Φ − Σ_ab Θ = ε_abjk U^j S^k`
    MPhiSigmaTheta,
    /// `M_ab Θ + Σ_ab Φ = U_[a S_b]`
    MThetaSigmaPhi,
    /// `M_ik U^i = Θ S_k`
    MU,
    /// `Σ_ik U^i = Φ S_k`
    SigmaU,
    /// `M_ik S^i = Θ U_k`
    MS,
    /// `Σ_ik S^i = Φ U_k`
    SigmaS,
    /// `½ M_ab M^ab = Φ² − Θ²`
    MM,
    /// `−½ Σ_ab Σ^ab = Φ² − Θ²`
    SigmaSigma,
    /// `½ M_ab Σ^ab = −2ΦΘ`
    MSigma,
    /// `U_a U^a = Φ² + Θ²`
    UU,
    /// `S_a S^a = −(Φ² + Θ²)`
    SS,
    /// `U_a S^a = 0`
    US,
}

impl FpkIdentity {
    pub const ALL: [FpkIdentity; 12] = [
        FpkIdentity::MPhiSigmaTheta,
        FpkIdentity::MThetaSigmaPhi,
        FpkIdentity::MU,
        FpkIdentity::SigmaU,
        FpkIdentity::MS,
        FpkIdentity::SigmaS,
        FpkIdentity::MM,
        FpkIdentity::SigmaSigma,
        FpkIdentity::MSigma,
        FpkIdentity::UU,
        FpkIdentity::SS,
        FpkIdentity::US,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FpkIdentity::MPhiSigmaTheta => "M_phi_minus_sigma_theta",
            FpkIdentity::MThetaSigmaPhi => "M_theta_plus_sigma_phi",
            FpkIdentity::MU => "M_dot_U",
            FpkIdentity::SigmaU => "sigma_dot_U",
            FpkIdentity::MS => "M_dot_S",
            FpkIdentity::SigmaS => "sigma_dot_S",
            FpkIdentity::MM => "M_M",
            FpkIdentity::SigmaSigma => "sigma_sigma",
            FpkIdentity::MSigma => "M_sigma",
            FpkIdentity::UU => "U_U",
            FpkIdentity::SS => "S_S",
            FpkIdentity::US => "U_S",
        }
    }

    /// Unnormalized absolute residual.
    fn raw_residual(&self, b: &BilinearSet) -> f64 {
        let sigma = b.sigma();
        let m = b.m.to_matrix();
        let sm = sigma.to_matrix();
        let (uu, su) = (raise(&b.u), raise(&b.s));
        let square = b.phi * b.phi - b.theta * b.theta;
        let norm_sq = b.phi * b.phi + b.theta * b.theta;
        let contract_vec = |t: &nalgebra::Matrix4<C64>, x_up: &Vector4, rhs: &Vector4, k: usize| {
            (0..4).map(|i| t[(i, k)] * x_up[i]).sum::<C64>() - rhs[k]
        };
        match self {
            FpkIdentity::MPhiSigmaTheta => {
                let rhs = Bivector::from_fn(|a, bb| {
                    let mut acc = ZERO;
                    for j in 0..4 {
                        for k in 0..4 {
                            let eps = levi_civita(a, bb, j, k);
                            if eps != 0.0 {
                                acc += uu[j] * su[k] * eps;
                            }
                        }
                    }
                    acc
                });
                (b.m * b.phi - sigma * b.theta - rhs).max_abs()
            }
            FpkIdentity::MThetaSigmaPhi => {
                (b.m * b.theta + sigma * b.phi - Bivector::wedge(&b.u, &b.s)).max_abs()
            }
            FpkIdentity::MU => max4(|k| contract_vec(&m, &uu, &(b.s * b.theta), k)),
            FpkIdentity::SigmaU => max4(|k| contract_vec(&sm, &uu, &(b.s * b.phi), k)),
            FpkIdentity::MS => max4(|k| contract_vec(&m, &su, &(b.u * b.theta), k)),
            FpkIdentity::SigmaS => max4(|k| contract_vec(&sm, &su, &(b.u * b.phi), k)),
            FpkIdentity::MM => (b.m.contract(&b.m) * 0.5 - square).norm(),
            FpkIdentity::SigmaSigma => (sigma.contract(&sigma) * -0.5 - square).norm(),
            FpkIdentity::MSigma => (b.m.contract(&sigma) * 0.5 + b.phi * b.theta * 2.0).norm(),
            FpkIdentity::UU => (dot(&b.u, &b.u) - norm_sq).norm(),
            FpkIdentity::SS => (dot(&b.s, &b.s) + norm_sq).norm(),
            FpkIdentity::US => dot(&b.u, &b.s).norm(),
        }
    }
}

fn max4(f: impl Fn(usize) -> C64) -> f64 {
    (0..4).map(|k| f(k).norm()).fold(0.0, f64::max)
}

impl fmt::Display for FpkIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Per-identity residuals, each normalized by `max(1, ‖B‖∞²)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FpkReport {
    pub residuals: Vec<(FpkIdentity, f64)>,
    pub max_residual: f64,
    pub tol: f64,
    pub passes: bool,
}

impl FpkReport {
    pub fn residual(&self, identity: FpkIdentity) -> f64 {
        self.residuals
            .iter()
            .find(|(id, _)| *id == identity)
            .map(|(_, r)| *r)
            .unwrap_or(f64::NAN)
    }

    /// The identity with the largest residual.
    pub fn worst(&self) -> (FpkIdentity, f64) {
        self.residuals
            .iter()
            .copied()
            .fold((FpkIdentity::ALL[0], f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc })
    }
}

pub fn check_fpk(b: &BilinearSet, tol: f64) -> FpkReport {
    let scale = b.max_abs().powi(2).max(1.0);
    let residuals: Vec<_> =
        FpkIdentity::ALL.iter().map(|id| (*id, id.raw_residual(b) / scale)).collect();
    let max_residual = residuals.iter().map(|(_, r)| *r).fold(0.0, f64::max);
    FpkReport { residuals, max_residual, tol, passes: max_residual <= tol }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bilinears::{dirac_bilinears, Spinor};
    use crate::tensor::c;

    #[test]
    fn zero_set_passes() {
        let r = check_fpk(&BilinearSet::zero(), 1e-12);
        assert!(r.passes);
        assert_eq!(r.max_residual, 0.0);
        assert_eq!(r.residuals.len(), FpkIdentity::ALL.len());
    }

    #[test]
    fn dirac_bilinears_pass() {
        let psi = Spinor::new([c(0.3, -0.1), c(0.2, 0.5), c(-0.4, 0.1), c(0.6, 0.2)]);
        let r = check_fpk(&dirac_bilinears(&psi), 1e-12);
        assert!(r.passes, "{:?}", r);
    }

    #[test]
    fn perturbed_scalar_breaks_the_squared_identities() {
        let psi = Spinor::new([c(0.3, -0.1), c(0.2, 0.5), c(-0.4, 0.1), c(0.6, 0.2)]);
        let mut b = dirac_bilinears(&psi);
        b.phi += 1e-3;
        let r = check_fpk(&b, 1e-10);
        assert!(!r.passes);
        assert!(r.residual(FpkIdentity::UU) > 1e-6);
        assert!(r.residual(FpkIdentity::US) < 1e-12);
    }
}
