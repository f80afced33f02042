//! Minkowski-space tensor helpers.
//!
//! Every stored tensor component carries lower indices. Raising goes through
//! [`METRIC`] explicitly.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::clifford::CONVENTIONS;

pub type C64 = Complex64;
pub type Vector4 = nalgebra::Vector4<C64>;
pub type Matrix4 = nalgebra::Matrix4<C64>;

pub const METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Independent bivector index pairs, in storage order.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)];

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn vector(components: [C64; 4]) -> Vector4 {
    Vector4::from_column_slice(&components)
}

pub fn real_vector(components: [f64; 4]) -> Vector4 {
    Vector4::from_fn(|a, _| C64::from(components[a]))
}

pub fn raise(v: &Vector4) -> Vector4 {
    Vector4::from_fn(|a, _| v[a] * METRIC[a])
}

/// `u_a v^a` for two lower-index vectors.
pub fn dot(u: &Vector4, v: &Vector4) -> C64 {
    (0..4).map(|a| u[a] * v[a] * METRIC[a]).sum()
}

pub fn max_abs_vector(v: &Vector4) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_matrix(m: &Matrix4) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn permutation_sign(idx: [usize; 4]) -> f64 {
    let mut sign = 1.0;
    for i in 0..4 {
        for j in (i + 1)..4 {
            if idx[i] == idx[j] {
                return 0.0;
            }
            if idx[i] > idx[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Totally antisymmetric symbol with lower indices, oriented by the
/// conventions' `epsilon_0123`.
pub fn levi_civita(a: usize, b: usize, c: usize, d: usize) -> f64 {
    CONVENTIONS.epsilon_0123 * permutation_sign([a, b, c, d])
}

/// Upper-index symbol. Raising all four indices picks up det(η) = −1.
pub fn levi_civita_upper(a: usize, b: usize, c: usize, d: usize) -> f64 {
    -levi_civita(a, b, c, d)
}

/// An antisymmetric rank-2 tensor stored by its six independent lower-index
/// components in the order of [`PAIRS`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Bivector {
    components: [C64; 6],
}

impl Bivector {
    pub fn new(components: [C64; 6]) -> Self {
        Self { components }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn components(&self) -> &[C64; 6] {
        &self.components
    }

    /// Builds the bivector from `f(a, b)` evaluated on [`PAIRS`]. The caller
    /// is responsible for `f` being antisymmetric.
    pub fn from_fn(f: impl Fn(usize, usize) -> C64) -> Self {
        let mut components = [ZERO; 6];
        for (slot, &(a, b)) in PAIRS.iter().enumerate() {
            components[slot] = f(a, b);
        }
        Self { components }
    }

    /// `X_a Y_b − X_b Y_a`.
    pub fn wedge(x: &Vector4, y: &Vector4) -> Self {
        Self::from_fn(|a, b| x[a] * y[b] - x[b] * y[a])
    }

    /// Component with arbitrary index order; `get(b, a) == -get(a, b)`.
    pub fn get(&self, a: usize, b: usize) -> C64 {
        PAIRS
            .iter()
            .position(|&p| p == (a, b))
            .map(|slot| self.components[slot])
            .or_else(|| {
                PAIRS
                    .iter()
                    .position(|&p| p == (b, a))
                    .map(|slot| -self.components[slot])
            })
            .unwrap_or(ZERO)
    }

    pub fn to_matrix(&self) -> Matrix4 {
        let mut m = Matrix4::zeros();
        for (slot, &(a, b)) in PAIRS.iter().enumerate() {
            m[(a, b)] = self.components[slot];
            m[(b, a)] = -self.components[slot];
        }
        m
    }

    pub fn from_matrix(m: &Matrix4) -> Self {
        Self::from_fn(|a, b| m[(a, b)])
    }

    /// Components of the contravariant tensor `X^{ab}`.
    pub fn raised_matrix(&self) -> Matrix4 {
        let mut m = self.to_matrix();
        for a in 0..4 {
            for b in 0..4 {
                m[(a, b)] *= METRIC[a] * METRIC[b];
            }
        }
        m
    }

    /// The dual `Σ_ab` of `M_ab` in the normalization `Σ^{ab} = −½ ε^{abij} M_ij`.
    pub fn dual(&self) -> Self {
        let m = self.to_matrix();
        Self::from_fn(|a, b| {
            let mut upper = ZERO;
            for i in 0..4 {
                for j in 0..4 {
                    let eps = levi_civita_upper(a, b, i, j);
                    if eps != 0.0 {
                        upper += m[(i, j)] * eps;
                    }
                }
            }
            upper * (-0.5 * METRIC[a] * METRIC[b])
        })
    }

    /// Full contraction `X_ab Y^{ab}` (both orders summed).
    pub fn contract(&self, other: &Bivector) -> C64 {
        let x = self.to_matrix();
        let y = other.raised_matrix();
        x.component_mul(&y).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.components.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.components.map(|z| z.conj()))
    }
}

impl Add for Bivector {
    type Output = Bivector;
    fn add(self, rhs: Bivector) -> Bivector {
        Bivector::new(std::array::from_fn(|i| self.components[i] + rhs.components[i]))
    }
}

impl Sub for Bivector {
    type Output = Bivector;
    fn sub(self, rhs: Bivector) -> Bivector {
        Bivector::new(std::array::from_fn(|i| self.components[i] - rhs.components[i]))
    }
}

impl Neg for Bivector {
    type Output = Bivector;
    fn neg(self) -> Bivector {
        Bivector::new(self.components.map(|z| -z))
    }
}

impl Mul<C64> for Bivector {
    type Output = Bivector;
    fn mul(self, rhs: C64) -> Bivector {
        Bivector::new(self.components.map(|z| z * rhs))
    }
}

impl Mul<f64> for Bivector {
    type Output = Bivector;
    fn mul(self, rhs: f64) -> Bivector {
        Bivector::new(self.components.map(|z| z * rhs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn levi_civita_orientation() {
        assert_eq!(levi_civita(0, 1, 2, 3), 1.0);
        assert_eq!(levi_civita(1, 0, 2, 3), -1.0);
        assert_eq!(levi_civita(0, 0, 2, 3), 0.0);
        assert_eq!(levi_civita_upper(0, 1, 2, 3), -1.0);
        assert_eq!(levi_civita(3, 1, 0, 2), levi_civita(0, 2, 3, 1));
    }

    #[test]
    fn bivector_storage_is_antisymmetric() {
        let h = Bivector::new([c(1.0, 0.0), c(2.0, 0.5), c(3.0, 0.0), c(4.0, 0.0), c(5.0, -1.0), c(6.0, 0.0)]);
        for a in 0..4 {
            assert_eq!(h.get(a, a), ZERO);
            for b in 0..4 {
                assert_eq!(h.get(b, a), -h.get(a, b));
            }
        }
        // 31 is stored, 13 is its negative
        assert_eq!(h.get(1, 3), c(-6.0, 0.0));
        assert_eq!(Bivector::from_matrix(&h.to_matrix()), h);
    }

    #[test]
    fn double_dual_is_minus_identity() {
        let h = Bivector::new([c(0.3, 0.1), c(-1.2, 0.0), c(0.7, 0.0), c(2.0, 0.4), c(-0.5, 0.0), c(1.1, -0.3)]);
        let back = h.dual().dual();
        for (x, y) in back.components().iter().zip(h.components()) {
            assert!((x + y).norm() < 1e-15);
        }
    }

    #[test]
    fn dot_uses_mostly_minus_metric() {
        let v = real_vector([2.0, 1.0, 0.0, 1.0]);
        assert_eq!(dot(&v, &v), c(2.0, 0.0));
        assert_eq!(raise(&v)[1], c(-1.0, 0.0));
    }
}
