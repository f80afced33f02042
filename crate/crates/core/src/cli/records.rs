//! Input documents and their conversion to library types.

use serde::Deserialize;

use crate::bilinears::{BilinearSet, Spinor};
use crate::classify::ZeroPolicy;
use crate::clifford::Multivector;
use crate::duals::DualCoefficients;
use crate::tensor::{Bivector, Matrix4, Vector4, C64};

/// A complex number written as `[re, im]`.
pub type Pair = [f64; 2];

fn z(p: &Pair) -> C64 {
    C64::new(p[0], p[1])
}

fn vec4(p: &[Pair; 4]) -> Vector4 {
    Vector4::from_fn(|k, _| z(&p[k]))
}

fn biv(p: &[Pair; 6]) -> Bivector {
    Bivector::new(std::array::from_fn(|k| z(&p[k])))
}

fn all_finite<'a>(pairs: impl IntoIterator<Item = &'a Pair>) -> bool {
    pairs.into_iter().all(|p| p[0].is_finite() && p[1].is_finite())
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolicyRecord {
    pub abs_floor: f64,
    pub rel_factor: f64,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DualRecord {
    pub a: Pair,
    pub b: Pair,
    pub c: Pair,
    pub d: Pair,
    pub e: Pair,
    pub v: [Pair; 4],
    pub n: [Pair; 4],
    pub h: [Pair; 6],
}

impl DualRecord {
    pub fn to_coefficients(&self) -> Result<DualCoefficients, String> {
        let scalars = [self.a, self.b, self.c, self.d, self.e];
        if !all_finite(scalars.iter().chain(&self.v).chain(&self.n).chain(&self.h)) {
            return Err("dual: non-finite component".into());
        }
        Ok(DualCoefficients {
            a: z(&self.a),
            b: z(&self.b),
            c: z(&self.c),
            d: z(&self.d),
            e: z(&self.e),
            v: vec4(&self.v),
            n: vec4(&self.n),
            h: biv(&self.h),
        })
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifyRecord {
    pub components: [Pair; 4],
    #[serde(default)]
    pub dual: Option<DualRecord>,
    #[serde(default)]
    pub policy: Option<PolicyRecord>,
}

impl ClassifyRecord {
    pub fn spinor(&self) -> Result<Spinor, String> {
        if !all_finite(&self.components) {
            return Err("components: non-finite value".into());
        }
        Ok(Spinor::new(self.components.map(|p| z(&p))))
    }

    pub fn policy(&self) -> Result<Option<ZeroPolicy>, String> {
        self.policy
            .as_ref()
            .map(|p| ZeroPolicy::new(p.abs_floor, p.rel_factor).map_err(|e| format!("policy: {e}")))
            .transpose()
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixRecord {
    pub matrix: [[Pair; 4]; 4],
}

impl MatrixRecord {
    pub fn to_matrix(&self) -> Result<Matrix4, String> {
        if !all_finite(self.matrix.iter().flatten()) {
            return Err("matrix: non-finite entry".into());
        }
        Ok(Matrix4::from_fn(|i, j| z(&self.matrix[i][j])))
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MultivectorRecord {
    pub scalar: Pair,
    pub pseudoscalar: Pair,
    pub vector: [Pair; 4],
    pub pseudovector: [Pair; 4],
    pub bivector: [Pair; 6],
}

impl MultivectorRecord {
    pub fn to_multivector(&self) -> Result<Multivector, String> {
        let scalars = [self.scalar, self.pseudoscalar];
        if !all_finite(scalars.iter().chain(&self.vector).chain(&self.pseudovector).chain(&self.bivector)) {
            return Err("multivector: non-finite component".into());
        }
        Ok(Multivector {
            scalar: z(&self.scalar),
            pseudoscalar: z(&self.pseudoscalar),
            vector: vec4(&self.vector),
            pseudovector: vec4(&self.pseudovector),
            bivector: biv(&self.bivector),
        })
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BilinearRecord {
    #[serde(rename = "Phi")]
    pub phi: Pair,
    #[serde(rename = "Theta")]
    pub theta: Pair,
    #[serde(rename = "U")]
    pub u: [Pair; 4],
    #[serde(rename = "S")]
    pub s: [Pair; 4],
    #[serde(rename = "M")]
    pub m: [Pair; 6],
}

impl BilinearRecord {
    pub fn to_bilinears(&self) -> Result<BilinearSet, String> {
        let scalars = [self.phi, self.theta];
        if !all_finite(scalars.iter().chain(&self.u).chain(&self.s).chain(&self.m)) {
            return Err("bilinears: non-finite component".into());
        }
        Ok(BilinearSet { phi: z(&self.phi), theta: z(&self.theta), u: vec4(&self.u), s: vec4(&self.s), m: biv(&self.m) })
    }
}
