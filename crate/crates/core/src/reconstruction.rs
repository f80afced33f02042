//! Fierz aggregate and recovery of a spinor from its Dirac bilinears.

use crate::bilinears::{dirac_bilinears, BilinearSet, Spinor, SEED_FPK_TOL};
use crate::clifford::{basis, matrix_of, multivector_of, Multivector};
use crate::error::{Error, Result};
use crate::fpk::check_fpk;
use crate::tensor::{max_abs_matrix, Matrix4, C64};

/// Componentwise agreement required between the input and the bilinears of
/// the recovered spinor, relative to `max(1, ‖B‖∞)`.
pub const INVERSION_TOL: f64 = 1e-8;

/// `Z = ψψ̄ = ¼[Φ − iΘπ + U_a γ^a − S_a γ^a π + i M_ab σ^{ab}]` (double sum).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FierzAggregate {
    pub z: Matrix4,
}

impl FierzAggregate {
    pub fn multivector(&self) -> Multivector {
        multivector_of(&self.z)
    }

    /// Numerical rank from the singular values, relative to the largest.
    pub fn rank(&self, rel_tol: f64) -> usize {
        let sv = self.z.singular_values();
        let top = sv.max();
        if top == 0.0 {
            return 0;
        }
        sv.iter().filter(|s| **s > rel_tol * top).count()
    }

    /// Bilinears read back from the trace projections of Z.
    pub fn bilinears(&self) -> BilinearSet {
        let mv = self.multivector();
        BilinearSet {
            phi: mv.scalar * 4.0,
            theta: mv.pseudoscalar * -4.0,
            u: mv.vector * C64::from(4.0),
            s: mv.pseudovector * C64::from(4.0),
            m: mv.bivector * 2.0,
        }
    }
}

fn require_fpk(b: &BilinearSet) -> Result<()> {
    let report = check_fpk(b, SEED_FPK_TOL);
    if report.passes {
        Ok(())
    } else {
        let (identity, residual) = report.worst();
        Err(Error::FierzViolation { identity: identity.name(), residual, tol: SEED_FPK_TOL })
    }
}

pub fn aggregate(b: &BilinearSet) -> Result<FierzAggregate> {
    require_fpk(b)?;
    let mv = Multivector {
        scalar: b.phi * 0.25,
        pseudoscalar: b.theta * -0.25,
        vector: b.u * C64::from(0.25),
        pseudovector: b.s * C64::from(0.25),
        bivector: b.m * 0.5,
    };
    Ok(FierzAggregate { z: matrix_of(&mv) })
}

/// Recovers ψ up to a global phase, fixed by [`Spinor::canonical_phase`].
pub fn invert(b: &BilinearSet) -> Result<Spinor> {
    let agg = aggregate(b)?;
    if max_abs_matrix(&agg.z) == 0.0 {
        return Err(Error::Degenerate("zero aggregate: the bilinear set is identically zero".into()));
    }
    // Zγ⁰ = ψψ†
    let p = agg.z * basis().gamma[0];
    let k = (0..4).max_by(|&i, &j| p[(i, i)].re.total_cmp(&p[(j, j)].re)).unwrap_or(0);
    let pkk = p[(k, k)].re;
    if !(pkk > 0.0) {
        return Err(Error::Degenerate(format!("aggregate has no positive diagonal entry (max {pkk:e})")));
    }
    let psi = Spinor::from_vector(p.column(k) / C64::from(pkk.sqrt())).canonical_phase();

    let scale = b.max_abs().max(1.0);
    let deviation = dirac_bilinears(&psi).max_deviation(b);
    if deviation > INVERSION_TOL * scale {
        return Err(Error::Degenerate(format!(
            "bilinears are not those of a single spinor under the Dirac dual (deviation {deviation:e})"
        )));
    }
    Ok(psi)
}
