//! Explicit (seed, dual) pairs landing in each class.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bilinears::{bilinears, dirac_bilinears, BilinearSet, Spinor};
use crate::classify::{extended_class, lounesto_class, zero_pattern, Block, ClassLabel, ZeroPolicy};
use crate::duals::{a_for_vanishing_omega, us_family, DualCoefficients, UsParams};
use crate::error::{Error, Result};
use crate::fpk::{check_fpk, FpkReport};
use crate::search::{nelder_mead, NelderMead};
use crate::tensor::{c, max_abs_vector, real_vector, Bivector, Vector4, C64, I, ONE, ZERO};

/// Largest constraint residual at which a searched seed is accepted.
pub const ACCEPT_TOL: f64 = 1e-9;
pub const DEFAULT_SEARCH_SEED: u64 = 7;

const XI: [f64; 4] = [0.8, -0.4, 0.3, 0.6];
const ETA: [f64; 4] = [0.5, 0.3, -0.2, 0.7];
const KAPPA: [f64; 2] = [0.5, 0.2];
const THETA: f64 = 0.4;

/// Redefinitions a recipe applies on top of the plain construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relaxation {
    /// `S → iS` to keep the block real.
    SToIS,
    /// Complex a, b.
    ComplexCoefficients,
}

impl Relaxation {
    pub fn as_str(&self) -> &'static str {
        match self {
            Relaxation::SToIS => "S_to_iS",
            Relaxation::ComplexCoefficients => "complex_coefficients",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Representative {
    pub seed: Spinor,
    pub dual: DualCoefficients,
    pub target: ClassLabel,
    pub achieved: ClassLabel,
    pub notes: String,
    pub relaxations: Vec<Relaxation>,
}

impl Representative {
    pub fn bilinears(&self) -> BilinearSet {
        bilinears(&self.seed, &self.dual.to_multivector())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrailStep {
    pub stage: String,
    pub residual: f64,
}

/// Why a recipe could not produce its target, with the search history.
#[derive(Debug, Clone, PartialEq)]
pub struct Infeasibility {
    pub target: ClassLabel,
    pub seed_class: ClassLabel,
    pub recipe: String,
    pub best_seed: Spinor,
    pub dual: Option<DualCoefficients>,
    pub achieved: Option<ClassLabel>,
    pub best_residual: f64,
    pub trail: Vec<TrailStep>,
    pub obstruction: String,
}

impl fmt::Display for Infeasibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "class {} not reached by '{}': best constraint residual {:e}, achieved {}; {}",
            self.target,
            self.recipe,
            self.best_residual,
            self.achieved.map_or("forbidden/degenerate".to_string(), |l| l.to_string()),
            self.obstruction
        )
    }
}

impl std::error::Error for Infeasibility {}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    pub seed: u64,
    /// Random starting points in addition to the default parameters.
    pub random_starts: usize,
    pub policy: ZeroPolicy,
    pub optimizer: NelderMead,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEARCH_SEED,
            random_starts: 16,
            policy: ZeroPolicy::default(),
            optimizer: NelderMead { max_iterations: 3000, ..NelderMead::default() },
        }
    }
}

fn complex_pair(p: &[f64]) -> [C64; 2] {
    [c(p[0], p[2]), c(p[1], p[3])]
}

fn weyl(xi: [C64; 2], eta: [C64; 2]) -> Spinor {
    Spinor::new([xi[0], xi[1], eta[0], eta[1]])
}

/// `εξ*` with `ε = [[0, 1], [−1, 0]]`.
fn eps_conj(xi: [C64; 2]) -> [C64; 2] {
    [xi[1].conj(), -xi[0].conj()]
}

/// Rotates η so that `ξ†η` has the given phase.
fn align(xi: [C64; 2], eta: [C64; 2], phase: C64) -> [C64; 2] {
    let overlap = xi[0].conj() * eta[0] + xi[1].conj() * eta[1];
    if overlap.norm() == 0.0 {
        return eta;
    }
    let rot = phase * overlap.conj() / overlap.norm();
    [eta[0] * rot, eta[1] * rot]
}

/// Spinor family whose Dirac bilinears generically fall in `class`.
fn family_spinor(class: ClassLabel, p: &[f64]) -> Spinor {
    let xi = complex_pair(&p[..4]);
    match class {
        ClassLabel::C1 => weyl(xi, complex_pair(&p[4..8])),
        ClassLabel::C2 => weyl(xi, align(xi, complex_pair(&p[4..8]), ONE)),
        ClassLabel::C3 => weyl(xi, align(xi, complex_pair(&p[4..8]), I)),
        ClassLabel::C4 => {
            let kappa = c(p[4], p[5]);
            let e = eps_conj(xi);
            weyl(xi, [e[0] * kappa, e[1] * kappa])
        }
        ClassLabel::C5 => {
            let phase = C64::from_polar(1.0, p[4]);
            let e = eps_conj(xi);
            weyl(xi, [e[0] * phase, e[1] * phase])
        }
        _ => weyl(xi, [ZERO, ZERO]),
    }
}

fn default_params(class: ClassLabel) -> Vec<f64> {
    let mut p = XI.to_vec();
    match class {
        ClassLabel::C1 | ClassLabel::C2 | ClassLabel::C3 => p.extend_from_slice(&ETA),
        ClassLabel::C4 => p.extend_from_slice(&KAPPA),
        ClassLabel::C5 => p.push(THETA),
        _ => {}
    }
    p
}

/// A deterministic spinor whose Dirac bilinears lie in the given standard class.
pub fn seed_spinor(class: ClassLabel) -> Result<Spinor> {
    if !class.is_standard() {
        return Err(Error::InvalidArgument(format!("seed spinors exist for classes 1-6 only, got {class}")));
    }
    Ok(family_spinor(class, &default_params(class)))
}

type Condition = fn(&BilinearSet, C64, C64) -> f64;
type DualBuilder = fn(&BilinearSet, C64, C64) -> Result<DualCoefficients>;

struct Recipe {
    target: ClassLabel,
    seed_class: ClassLabel,
    description: &'static str,
    a: C64,
    b: C64,
    relaxations: &'static [Relaxation],
    condition: Option<Condition>,
    dual: DualBuilder,
}

fn tiny_guard(x: f64) -> f64 {
    x.max(1e-300)
}

/// `‖M − kΣ‖ / ‖M‖`.
fn self_dual_residual(b: &BilinearSet, k: C64) -> f64 {
    let sigma = b.sigma();
    (b.m - sigma * k).max_abs() / tiny_guard(b.m.max_abs().max(sigma.max_abs()))
}

/// `‖X − κY‖ / max(‖X‖, ‖Y‖)`.
fn proportional_residual(x: &Vector4, y: &Vector4, kappa: C64) -> f64 {
    max_abs_vector(&(x - y * kappa)) / tiny_guard(max_abs_vector(x).max(max_abs_vector(y)))
}

fn cond_m_half(b: &BilinearSet, a: C64, bb: C64) -> f64 {
    // M^{jk} = −(b/2a) ε^{jkcd} M_cd  ⇔  M = (b/a) Σ
    self_dual_residual(b, bb / a)
}

fn cond_m_full(b: &BilinearSet, a: C64, bb: C64) -> f64 {
    // M^{jk} = −(b/a) ε^{jkcd} M_cd  ⇔  M = 2(b/a) Σ
    self_dual_residual(b, bb / a * 2.0)
}

fn cond_s_iu(b: &BilinearSet, a: C64, bb: C64) -> f64 {
    proportional_residual(&b.s, &b.u, I * bb / a)
}

fn cond_u_is(b: &BilinearSet, a: C64, bb: C64) -> f64 {
    proportional_residual(&b.u, &b.s, I * bb / a)
}

fn cond_s_minus_iu(b: &BilinearSet, a: C64, bb: C64) -> f64 {
    proportional_residual(&b.s, &b.u, -I * a / bb)
}

fn cond_1_3(b: &BilinearSet, a: C64, bb: C64) -> f64 {
    cond_m_half(b, a, bb).max(cond_s_iu(b, a, bb))
}

fn cond_1_7(b: &BilinearSet, a: C64, bb: C64) -> f64 {
    cond_m_half(b, a, bb).max(cond_u_is(b, a, bb))
}

fn dual_ab(_: &BilinearSet, a: C64, b: C64) -> Result<DualCoefficients> {
    Ok(DualCoefficients::scalar_pseudoscalar(a, b))
}

fn dual_omega_zero(seed: &BilinearSet, _: C64, b: C64) -> Result<DualCoefficients> {
    let a = a_for_vanishing_omega(b, seed.phi, seed.theta)?;
    let params = UsParams::real_regular(a, b, ZERO, ZERO, ZERO, seed)?;
    Ok(us_family(&params, seed)?.coeffs)
}

fn dual_vector_pair(_: &BilinearSet, _: C64, _: C64) -> Result<DualCoefficients> {
    Ok(DualCoefficients {
        a: ZERO,
        b: ZERO,
        c: ONE,
        d: ONE,
        e: ZERO,
        v: real_vector([1.0, 0.0, 0.0, 0.0]),
        n: real_vector([0.0, 0.0, 0.0, 1.0]),
        h: Bivector::zero(),
    })
}

/// Vector dual with v spatial and orthogonal to the seed's U.
fn dual_orthogonal_vector(seed: &BilinearSet, _: C64, _: C64) -> Result<DualCoefficients> {
    let u = [seed.u[1].re, seed.u[2].re, seed.u[3].re];
    let axis = if u[0].abs() <= u[1].abs() && u[0].abs() <= u[2].abs() { [1.0, 0.0, 0.0] } else { [0.0, 0.0, 1.0] };
    let w = [u[1] * axis[2] - u[2] * axis[1], u[2] * axis[0] - u[0] * axis[2], u[0] * axis[1] - u[1] * axis[0]];
    let norm = (w[0] * w[0] + w[1] * w[1] + w[2] * w[2]).sqrt();
    if norm < 1e-12 {
        return Err(Error::Degenerate("seed U has no spatial part".into()));
    }
    Ok(DualCoefficients {
        c: ONE,
        v: real_vector([0.0, w[0] / norm, w[1] / norm, w[2] / norm]),
        ..DualCoefficients::scalar_pseudoscalar(ZERO, ZERO)
    })
}

fn dual_e_over(seed: &BilinearSet, a: C64, b: C64, scalar: C64) -> Result<DualCoefficients> {
    if scalar.norm() < 1e-12 {
        return Err(Error::DivisionByZero("e = b/X² needs X ≠ 0 on the seed".into()));
    }
    let params = UsParams { e: b / (scalar * scalar), ..UsParams::new(a, b) };
    Ok(us_family(&params, seed)?.coeffs)
}

fn dual_2_1(seed: &BilinearSet, a: C64, b: C64) -> Result<DualCoefficients> {
    dual_e_over(seed, a, b, seed.phi)
}

fn dual_3_1(seed: &BilinearSet, a: C64, b: C64) -> Result<DualCoefficients> {
    dual_e_over(seed, a, b, seed.theta)
}

fn recipe(target: ClassLabel) -> Option<Recipe> {
    use ClassLabel::*;
    const S: &[Relaxation] = &[Relaxation::SToIS];
    let one = ONE;
    let r = |seed_class, description, a, b, relaxations, condition, dual| Recipe {
        target,
        seed_class,
        description,
        a,
        b,
        relaxations,
        condition,
        dual,
    };
    Some(match target {
        C4_1 => r(C5, "class-5 seed with a = 0, b ≠ 0", ZERO, one, &[], None, dual_ab as DualBuilder),
        C5_1 => r(C1, "U/S family with iq = 1, real-regular condition and ω = 0", ZERO, one, &[], None, dual_omega_zero),
        C6_1 => r(C6, "class-6 seed with S = −i(a/b)U, dual a + ibπ", one, one, S, Some(cond_s_minus_iu as Condition), dual_ab),
        C7 => r(C6, "class-6 seed with S = i(b/a)U, dual a + ibπ", one, one, &[], Some(cond_s_iu), dual_ab),
        C1_1 => r(C1, "class-1 seed with M = −(b/2a)εM, dual a + ibπ", one, one, &[], Some(cond_m_half), dual_ab),
        C1_2 => r(C1, "class-1 seed with S = i(b/a)U, dual a + ibπ", one, one, S, Some(cond_s_iu), dual_ab),
        C1_3 => r(C1, "class-1 seed with the 1.1 and 1.2 conditions", one, one, S, Some(cond_1_3), dual_ab),
        C1_4 => r(C1, "class-1 seed with U = i(b/a)S, dual a + ibπ", one, one, &[], Some(cond_u_is), dual_ab),
        C1_5 => r(
            C1,
            "class-1 seed with the 1.1 and 1.2 conditions at a = ib",
            I,
            one,
            &[Relaxation::SToIS, Relaxation::ComplexCoefficients],
            Some(cond_1_3),
            dual_ab,
        ),
        C1_6 => r(C6, "class-6 seed with a = b = 0, h = 0 and v, n ≠ 0", ZERO, ZERO, &[], None, dual_vector_pair),
        C1_7 => r(C1, "class-1 seed with the 1.1 and 1.4 conditions", one, one, &[], Some(cond_1_7), dual_ab),
        C2_1 => r(C2, "class-2 seed with e = b/Φ² and M = −(b/a)εM", one, one, &[], Some(cond_m_full), dual_2_1),
        C3_1 => r(C3, "class-3 seed with e = b/Θ² and M = −(b/2a)εM", one, one, &[], Some(cond_m_half), dual_3_1),
        _ => return None,
    })
}

/// Additional constructive routes tried when the primary recipe fails.
fn fallback(target: ClassLabel) -> Option<Recipe> {
    match target {
        ClassLabel::C5_1 => Some(Recipe {
            target,
            seed_class: ClassLabel::C6,
            description: "class-6 seed with a vector dual orthogonal to U",
            a: ZERO,
            b: ZERO,
            relaxations: &[],
            condition: None,
            dual: dual_orthogonal_vector,
        }),
        _ => None,
    }
}

const SELF_DUAL_OBSTRUCTION: &str = "Dirac bilinears are real and the Lorentzian double dual is −1, so M = kΣ forces k² = −1 or M = 0; with real M and k = ±i both sides must vanish";
const PROPORTIONAL_OBSTRUCTION: &str = "Dirac bilinears are real, so an imaginary proportionality between S and U forces both to vanish; a real one contradicts U·U = Φ² + Θ² = −S·S unless Φ = Θ = 0";
const RANK_ONE_OBSTRUCTION: &str = "the tilded aggregate ψψ̃ = ψψ̄A stays rank one, which ties M̃ to Φ̃, Θ̃ and U to S through the FPK identities";

fn obstruction(target: ClassLabel) -> String {
    use ClassLabel::*;
    let head = match target {
        C1_1 | C2_1 | C3_1 => SELF_DUAL_OBSTRUCTION.to_string(),
        C1_2 | C1_4 | C6_1 | C7 => PROPORTIONAL_OBSTRUCTION.to_string(),
        C5_1 => "with iq = 1 and the real-regular condition every bilinear, M̃ included, scales by ω, so ω = 0 gives the zero set".to_string(),
        _ => format!("{SELF_DUAL_OBSTRUCTION}; {PROPORTIONAL_OBSTRUCTION}"),
    };
    format!("{head}; more generally {RANK_ONE_OBSTRUCTION}")
}

fn random_start(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

/// Builds a representative of `target` with the default search options.
pub fn representative(target: ClassLabel) -> std::result::Result<Representative, Box<Infeasibility>> {
    representative_with(target, &SearchOptions::default())
}

pub fn representative_with(
    target: ClassLabel,
    opts: &SearchOptions,
) -> std::result::Result<Representative, Box<Infeasibility>> {
    if target.is_standard() {
        let seed = family_spinor(target, &default_params(target));
        let achieved = extended_class(&dirac_bilinears(&seed), &opts.policy);
        debug_assert_eq!(achieved, Some(target));
        return Ok(Representative {
            seed,
            dual: DualCoefficients::identity(),
            target,
            achieved: achieved.unwrap_or(target),
            notes: format!("Dirac dual on the class-{target} seed"),
            relaxations: Vec::new(),
        });
    }
    let primary = recipe(target).expect("every extended label has a recipe");
    let mut failure = match attempt(&primary, opts) {
        Ok(r) => return Ok(r),
        Err(e) => e,
    };
    if let Some(alt) = fallback(target) {
        match attempt(&alt, opts) {
            Ok(mut r) => {
                r.notes = format!("{}; primary route '{}' degenerates: {}", r.notes, primary.description, failure.obstruction);
                return Ok(r);
            }
            Err(e) => {
                failure.trail.extend(e.trail.into_iter().map(|mut t| {
                    t.stage = format!("fallback: {}", t.stage);
                    t
                }));
            }
        }
    }
    Err(failure)
}

fn attempt(recipe: &Recipe, opts: &SearchOptions) -> std::result::Result<Representative, Box<Infeasibility>> {
    let target = recipe.target;
    let x0 = default_params(recipe.seed_class);
    let mut trail = Vec::new();

    let (params, residual) = match recipe.condition {
        None => (x0, 0.0),
        Some(cond) => {
            let objective = |p: &[f64]| {
                let seed = family_spinor(recipe.seed_class, p);
                cond(&dirac_bilinears(&seed), recipe.a, recipe.b)
            };
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            let mut starts = vec![x0.clone()];
            starts.extend((0..opts.random_starts).map(|_| random_start(&mut rng, x0.len())));
            let mut best = (x0.clone(), f64::INFINITY);
            for (k, start) in starts.iter().enumerate() {
                let initial = objective(start);
                let m = nelder_mead(objective, start, &opts.optimizer);
                trail.push(TrailStep { stage: format!("start {k}: initial"), residual: initial });
                trail.push(TrailStep { stage: format!("start {k}: refined"), residual: m.value });
                if m.value < best.1 {
                    best = (m.x, m.value);
                }
            }
            best
        }
    };

    let seed = family_spinor(recipe.seed_class, &params);
    let seed_bilinears = dirac_bilinears(&seed);
    let seed_class = lounesto_class(&seed_bilinears, &opts.policy);
    let dual = (recipe.dual)(&seed_bilinears, recipe.a, recipe.b);
    let achieved = dual.as_ref().ok().and_then(|d| extended_class(&bilinears(&seed, &d.to_multivector()), &opts.policy));
    trail.push(TrailStep { stage: "best".into(), residual });

    if residual <= ACCEPT_TOL && seed_class == Some(recipe.seed_class) && achieved == Some(target) {
        if let Ok(dual) = dual {
            return Ok(Representative {
                seed,
                dual,
                target,
                achieved: target,
                notes: recipe.description.to_string(),
                relaxations: recipe.relaxations.to_vec(),
            });
        }
    }
    let mut obstruction = obstruction(target);
    if let Err(e) = &dual {
        obstruction = format!("dual construction failed: {e}; {obstruction}");
    }
    Err(Box::new(Infeasibility {
        target,
        seed_class: recipe.seed_class,
        recipe: recipe.description.to_string(),
        best_seed: seed,
        dual: dual.ok(),
        achieved,
        best_residual: residual,
        trail,
        obstruction,
    }))
}

/// Class 4.1 through `A = ib + v_a γ^a` with `v = U` of the class-5 seed.
pub fn alternative_4_1() -> Result<Representative> {
    let seed = seed_spinor(ClassLabel::C5)?;
    let u = dirac_bilinears(&seed).u;
    let dual = DualCoefficients { b: ONE, c: ONE, v: u, ..DualCoefficients::scalar_pseudoscalar(ZERO, ONE) };
    let achieved = extended_class(&bilinears(&seed, &dual.to_multivector()), &ZeroPolicy::default());
    if achieved != Some(ClassLabel::C4_1) {
        return Err(Error::Degenerate(format!("alternative 4.1 route landed in {achieved:?}")));
    }
    Ok(Representative {
        seed,
        dual,
        target: ClassLabel::C4_1,
        achieved: ClassLabel::C4_1,
        notes: "class-5 seed with b ≠ 0 and v = U".into(),
        relaxations: Vec::new(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verification {
    pub verified: bool,
    pub achieved: Option<ClassLabel>,
    /// Blocks whose zero flag differs from the target pattern.
    pub mismatched_blocks: Vec<Block>,
    pub seed_fpk: FpkReport,
}

pub fn verify_representative(r: &Representative, policy: &ZeroPolicy) -> Verification {
    let b = r.bilinears();
    let achieved = extended_class(&b, policy);
    let mismatched_blocks = zero_pattern(&b, policy).differences(&r.target.pattern());
    Verification {
        verified: achieved == Some(r.target) && mismatched_blocks.is_empty(),
        achieved,
        mismatched_blocks,
        seed_fpk: check_fpk(&dirac_bilinears(&r.seed), crate::bilinears::SEED_FPK_TOL),
    }
}
