//! Parameterized dual families.

use std::fmt;

use crate::bilinears::{BilinearSet, SEED_FPK_TOL};
use crate::clifford::{matrix_of, multivector_of, Multivector};
use crate::error::{Error, Result};
use crate::fpk::check_fpk;
use crate::tensor::{dot, real_vector, Bivector, Vector4, C64, I, ONE, ZERO};

/// Tolerance for the a = 0 branch feasibility condition.
pub const A_ZERO_TOL: f64 = 1e-12;
/// Tolerance applied to the six scalar-sector residuals.
pub const CONSTRAINT_TOL: f64 = 1e-10;
/// Below this |Θ| the ω law is not evaluated.
pub const OMEGA_THETA_FLOOR: f64 = 1e-12;

/// `A = a + ibπ + c v_a γ^a + d n_a γ^a π + i e h_ab σ^{ab}`, summed over all
/// ordered pairs in the last term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualCoefficients {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
    pub e: C64,
    pub v: Vector4,
    pub n: Vector4,
    pub h: Bivector,
}

impl Default for DualCoefficients {
    fn default() -> Self {
        Self::identity()
    }
}

impl DualCoefficients {
    /// The Dirac dual, `A = 𝕀`.
    pub fn identity() -> Self {
        Self::scalar_pseudoscalar(ONE, ZERO)
    }

    /// `A = a + ibπ`.
    pub fn scalar_pseudoscalar(a: C64, b: C64) -> Self {
        Self { a, b, c: ZERO, d: ZERO, e: ZERO, v: Vector4::zeros(), n: Vector4::zeros(), h: Bivector::zero() }
    }

    /// The multivector of `A`. The pseudovector flips sign (`γ^aπ = −πγ^a`)
    /// and the bivector doubles (double sum against one term per pair).
    pub fn to_multivector(&self) -> Multivector {
        Multivector {
            scalar: self.a,
            pseudoscalar: self.b,
            vector: self.v * self.c,
            pseudovector: -self.n * self.d,
            bivector: self.h * (self.e * 2.0),
        }
    }

    /// Inverse of [`to_multivector`](Self::to_multivector) with `c = d = e = 1`.
    pub fn from_multivector(mv: &Multivector) -> Self {
        Self {
            a: mv.scalar,
            b: mv.pseudoscalar,
            c: ONE,
            d: ONE,
            e: ONE,
            v: mv.vector,
            n: -mv.pseudovector,
            h: mv.bivector * 0.5,
        }
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.to_multivector().is_real(tol)
            && [self.a, self.b, self.c, self.d, self.e].iter().all(|z| z.im.abs() <= tol)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Dirac,
    AZero,
    Neither,
}

impl Branch {
    pub fn as_str(&self) -> &'static str {
        match self {
            Branch::Dirac => "dirac",
            Branch::AZero => "a_zero",
            Branch::Neither => "none",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstraintReport {
    /// `a²−b²+c²+d²−e²−1`, `ab`, `ac`, `ad`, `ae`, `cd−be`, by magnitude.
    pub residuals: [f64; 6],
    /// Largest non-scalar coefficient of `A²` for the actual v, n, h.
    pub non_scalar_residual: f64,
    pub branch: Branch,
}

impl ConstraintReport {
    pub const NAMES: [&'static str; 6] = ["a2-b2+c2+d2-e2-1", "ab", "ac", "ad", "ae", "cd-be"];

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

/// Scalar-sector residuals of `A² = 𝕀` over a…e.
pub fn unit_constraint(coeffs: &DualCoefficients) -> ConstraintReport {
    let DualCoefficients { a, b, c, d, e, .. } = *coeffs;
    let residuals = [
        (a * a - b * b + c * c + d * d - e * e - 1.0).norm(),
        (a * b).norm(),
        (a * c).norm(),
        (a * d).norm(),
        (a * e).norm(),
        (c * d - b * e).norm(),
    ];
    let m = matrix_of(&coeffs.to_multivector());
    let square = multivector_of(&(m * m)).coefficients();
    let non_scalar_residual = square[1..].iter().map(|z| z.norm()).fold(0.0, f64::max);

    let scale = [a, b, c, d, e].iter().map(|z| z.norm_sqr()).fold(1.0, f64::max);
    let tol = CONSTRAINT_TOL * scale;
    let feasible = residuals.iter().all(|r| *r <= tol);
    let branch = if !feasible {
        Branch::Neither
    } else if a.norm() > 0.5 {
        Branch::Dirac
    } else {
        let cosh = c + d;
        let sinh = b + e;
        let fits = cosh.im.abs() <= tol.sqrt()
            && sinh.im.abs() <= tol.sqrt()
            && (cosh.re - sinh.re.asinh().cosh()).abs() <= tol.sqrt();
        if fits {
            Branch::AZero
        } else {
            Branch::Neither
        }
    };
    ConstraintReport { residuals, non_scalar_residual, branch }
}

/// Returned when the a = 0 branch condition fails.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfeasibleBranch {
    pub residual: f64,
}

impl fmt::Display for InfeasibleBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a = 0 branch infeasible: |(cosh α − d)d − (sinh α − e)e| = {:e}", self.residual)
    }
}

/// Canonical orthonormal frame used by [`a_zero_branch`].
pub fn canonical_frame() -> (Vector4, Vector4, Bivector) {
    let v = real_vector([1.0, 0.0, 0.0, 0.0]);
    let n = real_vector([0.0, 0.0, 0.0, 1.0]);
    (v, n, Bivector::wedge(&v, &n))
}

/// `a = 0`, `c = cosh α − d`, `b = sinh α − e`, on the canonical frame.
pub fn a_zero_branch(alpha: f64, d: f64, e: f64) -> std::result::Result<DualCoefficients, InfeasibleBranch> {
    let cc = alpha.cosh() - d;
    let bb = alpha.sinh() - e;
    let residual = (cc * d - bb * e).abs();
    if residual > A_ZERO_TOL {
        return Err(InfeasibleBranch { residual });
    }
    let (v, n, h) = canonical_frame();
    Ok(DualCoefficients { a: ZERO, b: bb.into(), c: cc.into(), d: d.into(), e: e.into(), v, n, h })
}

/// `A = cosh α v_a γ^a + i sinh α v_[a n_b] σ^{ab}` with v, n normalized.
pub fn majorana_dual(alpha: f64, v: [f64; 4], n: [f64; 4]) -> Result<DualCoefficients> {
    let (v, n) = (real_vector(v), real_vector(n));
    let vv = dot(&v, &v).re;
    let nn = dot(&n, &n).re;
    if !(vv > 0.0) {
        return Err(Error::InvalidArgument(format!("v must be timelike, v·v = {vv}")));
    }
    if !(nn < 0.0) {
        return Err(Error::InvalidArgument(format!("n must be spacelike, n·n = {nn}")));
    }
    let vn = dot(&v, &n).re;
    if vn.abs() > 1e-12 * (vv.abs() * nn.abs()).sqrt() {
        return Err(Error::InvalidArgument(format!("v and n must be orthogonal, v·n = {vn}")));
    }
    let v = v / C64::from(vv.sqrt());
    let n = n / C64::from((-nn).sqrt());
    Ok(DualCoefficients {
        a: ZERO,
        b: ZERO,
        c: alpha.cosh().into(),
        d: ZERO,
        e: alpha.sinh().into(),
        v,
        n,
        h: Bivector::wedge(&v, &n),
    })
}

/// Free parameters of the U/S family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UsParams {
    pub a: C64,
    pub b: C64,
    pub c1: C64,
    pub c2: C64,
    pub d1: C64,
    pub d2: C64,
    pub e: C64,
}

impl UsParams {
    pub fn new(a: C64, b: C64) -> Self {
        Self { a, b, c1: ZERO, c2: ZERO, d1: ZERO, d2: ZERO, e: ZERO }
    }

    /// Fixes `iq = 1` through d₁ and `b − iqΦ + pΘ = 0` through c₁, so that
    /// the seed's Φ, Θ, U, S all scale by ω.
    pub fn real_regular(a: C64, b: C64, c2: C64, d2: C64, e: C64, seed: &BilinearSet) -> Result<Self> {
        let (phi, theta) = (seed.phi, seed.theta);
        if theta.norm() < OMEGA_THETA_FLOOR {
            return Err(theta_error());
        }
        let d1 = c2 + I * e * phi - I;
        let c1 = (phi - b) / theta + e * theta + d2;
        Ok(Self { a, b, c1, c2, d1, d2, e })
    }
}

/// A U/S-family dual together with its seed and derived p, q.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UsFamily {
    pub params: UsParams,
    pub coeffs: DualCoefficients,
    pub seed: BilinearSet,
    pub p: C64,
    pub q: C64,
}

fn theta_error() -> Error {
    Error::DivisionByZero(
        "Θ = 0: the ω law needs a seed with nonzero Θ; use the singular-class constructors (4.1, 6.1, 7) instead"
            .into(),
    )
}

/// `v = c₁U + c₂S`, `n = d₁U + d₂S`, `h = U_[a S_b]`.
pub fn us_family(params: &UsParams, seed: &BilinearSet) -> Result<UsFamily> {
    let report = check_fpk(seed, SEED_FPK_TOL);
    if !report.passes {
        let (identity, residual) = report.worst();
        return Err(Error::FierzViolation { identity: identity.name(), residual, tol: SEED_FPK_TOL });
    }
    let UsParams { a, b, c1, c2, d1, d2, e } = *params;
    let coeffs = DualCoefficients {
        a,
        b,
        c: ONE,
        d: ONE,
        e,
        v: seed.u * c1 + seed.s * c2,
        n: seed.u * d1 + seed.s * d2,
        h: Bivector::wedge(&seed.u, &seed.s),
    };
    let p = c1 - e * seed.theta - d2;
    let q = d1 - I * e * seed.phi - c2;
    Ok(UsFamily { params: *params, coeffs, seed: *seed, p, q })
}

impl UsFamily {
    /// Closed-form bilinears of the family. The tensor part is
    /// `aM − bΣ + p(ΦM − ΘΣ) + iq U_[j S_k]`.
    pub fn predicted(&self) -> BilinearSet {
        let UsParams { a, b, .. } = self.params;
        let (p, q) = (self.p, self.q);
        let s0 = &self.seed;
        let (phi, theta) = (s0.phi, s0.theta);
        let norm = phi * phi + theta * theta;
        let diag = a + p * phi + I * q * theta;
        let cross = b - I * q * phi + p * theta;
        let sigma = s0.sigma();
        BilinearSet {
            phi: a * phi + b * theta + p * norm,
            theta: a * theta - b * phi + I * q * norm,
            u: s0.u * diag - s0.s * (I * cross),
            s: s0.s * diag - s0.u * (I * cross),
            m: s0.m * a - sigma * b + (s0.m * phi - sigma * theta) * p
                + Bivector::wedge(&s0.u, &s0.s) * (I * q),
        }
    }
}

/// `ω = a + (Φ/Θ)(Φ − b) + Θ`.
pub fn omega(a: C64, b: C64, phi: C64, theta: C64) -> Result<C64> {
    if theta.norm() < OMEGA_THETA_FLOOR {
        return Err(theta_error());
    }
    Ok(a + phi / theta * (phi - b) + theta)
}

/// The `a` that makes ω vanish.
pub fn a_for_vanishing_omega(b: C64, phi: C64, theta: C64) -> Result<C64> {
    if theta.norm() < OMEGA_THETA_FLOOR {
        return Err(theta_error());
    }
    Ok(-(phi / theta) * (phi - b) - theta)
}
