//! The critical family of annuli: for every density ratio `q > 0` there is
//! a unique modulus `T_q` at which the radial eigenvalue σ⁽⁰⁾ crosses the
//! first mode eigenvalue σ⁽¹⁾₋, giving the first positive eigenvalue
//! multiplicity three. At the crossing the three first eigenfunctions
//! combine into a free-boundary harmonic map
//!
//! ```text
//!   Ψ̂(t, θ) = (c₁ u₁(t), c₂ φ(t) cos θ, c₂ φ(t) sin θ),
//!   u₁(t) = -1 + k t,   φ(t) = cosh t - k sinh t,   k = σ₁ρ₁,
//! ```
//!
//! from `[0, T_q] × S¹` into the closed unit 3-ball, with both boundary
//! circles mapped to the unit sphere. The image is a section of a stretched
//! catenoid; at `q = 1` it is the free-boundary minimal catenoid.
//!
//! Throughout this module maps are normalized with `ρ₂ = 1`, `ρ₁ = q`. All
//! reported normalized quantities are invariant under joint scaling of the
//! densities, so the normalization costs no generality.

use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{require_positive, Error, Result};
use crate::quadrature;
use crate::roots::{find_root, RootOptions};
use crate::spectrum::{coth, sigma_mode, sigma_radial, Branch, ConformalAnnulus};

/// A solved crossing class: the ratio `q`, its modulus `T_q` and the first
/// positive eigenvalue `σ₁ = (1+q)/(q T_q)` in the `(ρ₁, ρ₂) = (q, 1)`
/// normalization.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CriticalClass {
    pub q: f64,
    pub t_q: f64,
    pub sigma1: f64,
}

impl CriticalClass {
    /// σ⁽⁰⁾ - σ⁽¹⁾₋ evaluated at `(T_q, q, 1)`; roundoff-small for a
    /// converged class.
    pub fn crossing_residual(&self) -> f64 {
        let s0 = sigma_radial(self.t_q, self.q, 1.0).expect("valid class");
        let s1 = sigma_mode(1, self.t_q, self.q, 1.0, Branch::Minus).expect("valid class");
        s0 - s1
    }
}

/// Right-hand side of the fixed-point form of the crossing equation,
/// `T = (1+q)²/(2q) · (coth T + √(coth²T - 4q/(1+q)²))`.
fn crossing_rhs(t: f64, q: f64) -> f64 {
    let m = 4.0 * q / ((1.0 + q) * (1.0 + q));
    let c = coth(t);
    // coth² - m = csch² + (1-q)²/(1+q)²: cancellation-free split.
    let csch = 1.0 / t.sinh();
    let one_minus_m = ((1.0 - q) / (1.0 + q)).powi(2);
    (2.0 / m) * (c + (csch * csch + one_minus_m).sqrt())
}

/// Solves the crossing equation for `T_q`.
///
/// The root is bracketed in `[max((1+q)²/(2q), q + 1/q), (1+q)²/q]`; inside
/// the bracket `T - rhs(T)` is strictly increasing (rhs is decreasing in T),
/// so the bracket contains exactly one root. Convergence is checked on both
/// the bracket width and the fixed-point residual `|T - rhs(T)| ≤ tol`.
pub fn solve_tq(q: f64, tol: f64) -> Result<CriticalClass> {
    require_positive("q", q)?;
    require_positive("tol", tol)?;
    if !(1e-8..=1e8).contains(&q) {
        return Err(Error::Range(format!(
            "density ratio q = {q} outside the supported range [1e-8, 1e8]"
        )));
    }

    let lo = ((1.0 + q) * (1.0 + q) / (2.0 * q)).max(q + 1.0 / q);
    let hi = (1.0 + q) * (1.0 + q) / q;
    let f = |t: f64| t - crossing_rhs(t, q);

    // The strict inequalities can collapse to the bracket edge in floating
    // point at extreme q; nudge outward until the signs differ.
    let mut a = lo;
    let mut b = hi;
    for _ in 0..8 {
        if f(a) < 0.0 {
            break;
        }
        a *= 1.0 - 1e-9;
    }
    for _ in 0..8 {
        if f(b) > 0.0 {
            break;
        }
        b *= 1.0 + 1e-9;
    }

    let t_q = find_root(f, a, b, RootOptions::default())?;
    let residual = (t_q - crossing_rhs(t_q, q)).abs();
    if residual > tol {
        return Err(Error::RootFinding(format!(
            "T_q fixed-point residual {residual} exceeds tol {tol} at q = {q}"
        )));
    }
    Ok(CriticalClass {
        q,
        t_q,
        sigma1: (1.0 + q) / (q * t_q),
    })
}

static T1: OnceLock<f64> = OnceLock::new();
static T2: OnceLock<f64> = OnceLock::new();

/// The minimal modulus `T₁ = T_{q=1}` of the family (the modulus of the
/// critical catenoid, `2 t₁` with `t₁ = coth t₁`).
pub fn t1() -> f64 {
    *T1.get_or_init(|| solve_tq(1.0, 1e-12).expect("q = 1 is solvable").t_q)
}

/// One inequality of the modulus bounds, with the evaluated sides.
#[derive(Debug, Clone, Serialize)]
pub struct BoundCheck {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`; positive iff the strict inequality `lhs < rhs` holds.
    pub margin: f64,
    pub holds: bool,
}

impl BoundCheck {
    fn strict(name: &'static str, lhs: f64, rhs: f64) -> Self {
        BoundCheck {
            name,
            lhs,
            rhs,
            margin: rhs - lhs,
            holds: lhs < rhs,
        }
    }
}

/// The five proved bounds on `T_q`, each with its margin.
#[derive(Debug, Clone, Serialize)]
pub struct TqBoundsReport {
    pub q: f64,
    pub t_q: f64,
    pub checks: Vec<BoundCheck>,
}

impl TqBoundsReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// Evaluates the bound chain
/// `(1+q)²/(2q) < (1+q)²/(2q)·coth(T_q) < T_q < (1+q)²/q` together with
/// `T_q > q + 1/q` and the implied `(1+q)²/(2q) < T_q`.
///
/// The first margin is `(1+q)²/(2q)·(coth T_q - 1)`, which underflows to
/// zero if formed by subtraction once `coth T_q` rounds to 1; it is
/// computed as `(1+q)²/(2q)·2/expm1(2T_q)`, which stays positive for
/// every modulus this crate can solve.
pub fn verify_tq_bounds(q: f64) -> Result<TqBoundsReport> {
    let class = solve_tq(q, 1e-12)?;
    let t = class.t_q;
    let half = (1.0 + q) * (1.0 + q) / (2.0 * q);
    let upper = (1.0 + q) * (1.0 + q) / q;
    let half_coth = half * coth(t);
    let coth_excess_margin = half * 2.0 / (2.0 * t).exp_m1();
    let checks = vec![
        BoundCheck {
            name: "half_bound_lt_coth_bound",
            lhs: half,
            rhs: half_coth,
            margin: coth_excess_margin,
            holds: coth_excess_margin > 0.0,
        },
        BoundCheck::strict("coth_bound_lt_tq", half_coth, t),
        BoundCheck::strict("half_bound_lt_tq", half, t),
        BoundCheck::strict("tq_lt_upper_bound", t, upper),
        BoundCheck::strict("q_plus_inverse_lt_tq", q + 1.0 / q, t),
    ];
    Ok(TqBoundsReport { q, t_q: t, checks })
}

/// `b(q) = cosh(T_q) - σ₁ρ₁ sinh(T_q)`, the value of the mode-1 profile at
/// the outer circle.
///
/// For `q ≤ 1` this is evaluated in the exponential-split form
/// `½(1-k)e^T + ½(1+k)e^{-T}` (no cancellation: `k = (1+q)/T_q < 0.84`
/// there). For `q > 1` the direct difference loses all digits as `q` grows
/// (`b ~ e^{-T}` while both terms are of size `e^T`), so the algebraically
/// identical reciprocal form `1/(T_q sinh(T_q)/(1+q) - cosh(T_q)/q)` is
/// used; its bracket `T/(1+q) - coth(T)/q > (q-1)/(q(1+q))` stays away
/// from cancellation.
pub fn b_of_q(q: f64) -> Result<f64> {
    let class = solve_tq(q, 1e-12)?;
    Ok(b_from_class(&class))
}

pub(crate) fn b_from_class(class: &CriticalClass) -> f64 {
    let q = class.q;
    let t = class.t_q;
    if q <= 1.0 {
        let k = (1.0 + q) / t;
        0.5 * (1.0 - k) * t.exp() + 0.5 * (1.0 + k) * (-t).exp()
    } else {
        let d = 0.5 * t.exp() * (t / (1.0 + q) - 1.0 / q)
            - 0.5 * (-t).exp() * (t / (1.0 + q) + 1.0 / q);
        1.0 / d
    }
}

/// Coefficients of the map: `Ψ̂ = (c₁u₁, c₂u₂, c₂u₃)` with the slope
/// `k = σ₁ρ₁` of the linear component.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MapCoefficients {
    pub c1: f64,
    pub c2: f64,
    pub k: f64,
}

/// Solves the boundary system `c₁² + c₂² = 1`, `c₁²a(q)² + c₂²b(q)² = 1`
/// with `a(q) = q`.
///
/// At `q = 1` the system degenerates (`a = b = 1`) and admits a circle of
/// solutions; the conformality condition `c₁²k² = c₂²(1-k²)` pins
/// `c₂ = k`, which makes the map the conformal minimal-catenoid immersion.
pub fn solve_coefficients(q: f64) -> Result<MapCoefficients> {
    let class = solve_tq(q, 1e-12)?;
    coefficients_from_class(&class)
}

pub(crate) fn coefficients_from_class(class: &CriticalClass) -> Result<MapCoefficients> {
    let q = class.q;
    let k = (1.0 + q) / class.t_q;
    if (q - 1.0).abs() <= 1e-12 {
        return Ok(MapCoefficients {
            c1: (1.0 - k * k).sqrt(),
            c2: k,
            k,
        });
    }
    let a = q;
    let b = b_from_class(class);
    if (a * a - 1.0) * (b * b - 1.0) >= 0.0 {
        return Err(Error::Infeasible(format!(
            "boundary system unsolvable at q = {q}: a² = {}, b² = {}",
            a * a,
            b * b
        )));
    }
    let c2sq = (1.0 - a * a) / (b * b - a * a);
    if !(0.0..=1.0).contains(&c2sq) {
        return Err(Error::Infeasible(format!(
            "coefficient c₂² = {c2sq} outside [0, 1] at q = {q}"
        )));
    }
    Ok(MapCoefficients {
        c1: (1.0 - c2sq).sqrt(),
        c2: c2sq.sqrt(),
        k,
    })
}

/// Which boundary circle of the annulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryCircle {
    /// `t = 0`.
    Inner,
    /// `t = T`.
    Outer,
}

/// Which monotone branch of `q ↦ T_q` to invert.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatioBranch {
    /// `q ≥ 1` (T_q increasing).
    GeqOne,
    /// `q ≤ 1` (T_q decreasing).
    LeqOne,
}

/// A rotationally symmetric free-boundary harmonic map of the critical
/// family, immutable after construction.
#[derive(Debug, Clone, Serialize)]
pub struct FreeBoundaryMap {
    annulus: ConformalAnnulus,
    pub q: f64,
    pub coefficients: MapCoefficients,
    pub sigma1: f64,
    /// Steklov densities of the construction, `(ρ₁, ρ₂) = (q, 1)`.
    pub rho1: f64,
    pub rho2: f64,
    /// `b(q)`, the mode-1 profile at the outer circle.
    pub b: f64,
    /// Map-induced boundary densities `ρ_Ψ̂ = √2 σ₁ / |dΨ̂|` at the two
    /// circles (metric normalized so the weighted problem is classical).
    pub density_inner: f64,
    pub density_outer: f64,
    /// Twice the Dirichlet energy, `∫ |dΨ̂|² dt dθ`, by quadrature.
    pub energy: f64,
}

const ENERGY_POINTS_DEFAULT: usize = 512;

impl FreeBoundaryMap {
    /// The modulus of the underlying annulus.
    pub fn modulus(&self) -> f64 {
        self.annulus.modulus()
    }

    // φ = cosh t - k sinh t in the split form ½(1-k)eᵗ + ½(1+k)e⁻ᵗ; the
    // direct difference loses digits once eᵗ dominates (k is close to 1
    // for large ratios).
    fn phi(&self, t: f64) -> f64 {
        let k = self.coefficients.k;
        0.5 * (1.0 - k) * t.exp() + 0.5 * (1.0 + k) * (-t).exp()
    }

    fn phi_deriv(&self, t: f64) -> f64 {
        let k = self.coefficients.k;
        0.5 * (1.0 - k) * t.exp() - 0.5 * (1.0 + k) * (-t).exp()
    }

    fn eval_unchecked(&self, t: f64, theta: f64) -> [f64; 3] {
        let MapCoefficients { c1, c2, k } = self.coefficients;
        let u1 = -1.0 + k * t;
        let phi = self.phi(t);
        [c1 * u1, c2 * phi * theta.cos(), c2 * phi * theta.sin()]
    }

    /// The image point `Ψ̂(t, θ)` in the closed unit ball.
    pub fn evaluate(&self, t: f64, theta: f64) -> Result<[f64; 3]> {
        let t_mod = self.modulus();
        if !(0.0..=t_mod).contains(&t) {
            return Err(Error::domain(format!("t = {t} outside [0, {t_mod}]")));
        }
        Ok(self.eval_unchecked(t, theta))
    }

    /// `∂_t Ψ̂(t, θ)`.
    pub fn d_dt(&self, t: f64, theta: f64) -> [f64; 3] {
        let MapCoefficients { c1, c2, k } = self.coefficients;
        let dphi = self.phi_deriv(t);
        [c1 * k, c2 * dphi * theta.cos(), c2 * dphi * theta.sin()]
    }

    /// `∂_θ Ψ̂(t, θ)`.
    pub fn d_dtheta(&self, t: f64, theta: f64) -> [f64; 3] {
        let MapCoefficients { c2, .. } = self.coefficients;
        let phi = self.phi(t);
        [0.0, -c2 * phi * theta.sin(), c2 * phi * theta.cos()]
    }

    /// Axial coordinate and radius of the revolution profile at `t`.
    pub fn profile(&self, t: f64) -> (f64, f64) {
        let MapCoefficients { c1, c2, k } = self.coefficients;
        (c1 * (-1.0 + k * t), c2 * self.phi(t))
    }

    #[cfg(test)]
    pub(crate) fn tampered(&self, c2_scale: f64) -> FreeBoundaryMap {
        let mut out = self.clone();
        out.coefficients.c2 *= c2_scale;
        out
    }
}

fn squared_gradient_reduced(coeff: &MapCoefficients, t: f64) -> f64 {
    let grow = 0.5 * (1.0 - coeff.k) * t.exp();
    let decay = 0.5 * (1.0 + coeff.k) * (-t).exp();
    let phi = grow + decay;
    let dphi = grow - decay;
    coeff.c1 * coeff.c1 * coeff.k * coeff.k + coeff.c2 * coeff.c2 * (dphi * dphi + phi * phi)
}

fn energy_quadrature(coeff: &MapCoefficients, t_mod: f64, points: usize) -> f64 {
    // Rotational symmetry: the θ integral is exact and contributes 2π.
    2.0 * PI * quadrature::integrate(|t| squared_gradient_reduced(coeff, t), 0.0, t_mod, points)
}

/// Builds the family map with density ratio `q`.
pub fn map_for_ratio(q: f64) -> Result<FreeBoundaryMap> {
    let class = solve_tq(q, 1e-12)?;
    map_from_class(&class)
}

fn map_from_class(class: &CriticalClass) -> Result<FreeBoundaryMap> {
    let coefficients = coefficients_from_class(class)?;
    let b = b_from_class(class);
    let q = class.q;
    let sigma1 = class.sigma1;
    let c2 = coefficients.c2;
    // |dΨ̂|² at the circles, in the metric that turns the weighted problem
    // into the classical one: σ₁² + c₂²φ(tᵢ)²/ρᵢ².
    let grad0 = sigma1 * sigma1 + c2 * c2 / (q * q);
    let grad_t = sigma1 * sigma1 + c2 * c2 * b * b;
    let sqrt2 = std::f64::consts::SQRT_2;
    Ok(FreeBoundaryMap {
        annulus: ConformalAnnulus::new(class.t_q)?,
        q,
        coefficients,
        sigma1,
        rho1: q,
        rho2: 1.0,
        b,
        density_inner: sqrt2 * sigma1 / grad0.sqrt(),
        density_outer: sqrt2 * sigma1 / grad_t.sqrt(),
        energy: energy_quadrature(&coefficients, class.t_q, ENERGY_POINTS_DEFAULT),
    })
}

/// Builds the family map of modulus `T ≥ T₁` by inverting `q ↦ T_q` on the
/// requested monotone branch.
pub fn build_map(t: f64, branch: RatioBranch) -> Result<FreeBoundaryMap> {
    require_positive("T", t)?;
    let t_min = t1();
    if t < t_min - 1e-9 {
        return Err(Error::Infeasible(format!(
            "no rotationally symmetric critical class below T1 = {t_min} (got T = {t})"
        )));
    }
    if t > 1e6 {
        return Err(Error::Range(format!(
            "modulus T = {t} beyond the inversion range [T1, 1e6]"
        )));
    }
    if t <= t_min {
        return map_for_ratio(1.0);
    }
    // T_q > q, so q_hi = T is already past the target on the upper branch.
    let q_hi = t.max(2.0);
    let g = |q: f64| solve_tq(q, 1e-9).map(|c| c.t_q - t).unwrap_or(f64::NAN);
    let q_upper = find_root(
        g,
        1.0,
        q_hi,
        RootOptions {
            x_tol: 1e-13,
            ..RootOptions::default()
        },
    )?;
    let q = match branch {
        RatioBranch::GeqOne => q_upper,
        RatioBranch::LeqOne => 1.0 / q_upper,
    };
    map_for_ratio(q)
}

/// The boundary value of `|dΨ̂|²` at the requested circle:
/// `σ₁² + c₂²/ρ₁²` at `t = 0` and `σ₁² + c₂²b(q)²/ρ₂²` at `t = T`.
pub fn boundary_gradient_sq(map: &FreeBoundaryMap, which: BoundaryCircle) -> f64 {
    let c2 = map.coefficients.c2;
    match which {
        BoundaryCircle::Inner => map.sigma1 * map.sigma1 + c2 * c2 / (map.rho1 * map.rho1),
        BoundaryCircle::Outer => {
            map.sigma1 * map.sigma1 + c2 * c2 * map.b * map.b / (map.rho2 * map.rho2)
        }
    }
}

/// The modulus `T₂ = T_{q=2}` past which the two boundary densities of the
/// family map provably differ.
///
/// Distinctness at `(q, T_q)` is equivalent to `q·b(q) ≠ 1`; see
/// [`density_equal_locus`] for the scanned locus. Whether the distinctness
/// set is exactly `[T₂, ∞)` is not asserted: the proof covers `q ≥ 2` (and
/// its mirror) only.
pub fn density_distinct_threshold() -> f64 {
    *T2.get_or_init(|| solve_tq(2.0, 1e-12).expect("q = 2 is solvable").t_q)
}

/// Tabulates `q·b(q) - 1` on a grid; zeros of this function are exactly
/// the ratios whose family map has equal boundary densities.
pub fn density_equal_locus(grid: &[f64]) -> Result<Vec<(f64, f64)>> {
    grid.iter()
        .map(|&q| b_of_q(q).map(|b| (q, q * b - 1.0)))
        .collect()
}

/// The normalized first eigenvalue of the family member,
/// `σ̄₁ = 2π(1+q)²/(q T_q)`.
pub fn normalized_sigma1(q: f64) -> Result<f64> {
    let class = solve_tq(q, 1e-12)?;
    Ok(2.0 * PI * (1.0 + q) * (1.0 + q) / (q * class.t_q))
}

/// Twice the Dirichlet energy of the map by Gauss-Legendre quadrature of
/// the reduced 1D integrand `c₁²k² + c₂²(φ'² + φ²)` (the θ integral is
/// exact by rotational symmetry).
pub fn energy(map: &FreeBoundaryMap, quadrature_points: usize) -> Result<f64> {
    if quadrature_points < 16 {
        return Err(Error::Resolution(format!(
            "energy quadrature needs at least 16 points, got {quadrature_points}"
        )));
    }
    Ok(energy_quadrature(
        &map.coefficients,
        map.modulus(),
        quadrature_points,
    ))
}

/// Normalized first eigenvalue `4π tanh(T/2)` of the rotationally
/// symmetric disk-valued candidate (equal densities forced).
pub fn disk_branch_sigma(t: f64) -> Result<f64> {
    require_positive("T", t)?;
    Ok(4.0 * PI * (t / 2.0).tanh())
}

/// The modulus `T̃` below which the disk-valued candidate is provably not
/// maximal: the root of `2 tanh(T/2) = 1`, which is `ln 3`.
pub fn tilde_t() -> f64 {
    let v = find_root(
        |t| 2.0 * (t / 2.0).tanh() - 1.0,
        1.0,
        1.2,
        RootOptions::default(),
    )
    .expect("bracket [1, 1.2] contains ln 3");
    debug_assert!((v - 1.10).abs() < 0.01);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::find_root_default;

    fn t1_oracle() -> f64 {
        // Independent route: bisect t - coth t, then double.
        2.0 * find_root_default(|t| t - 1.0 / t.tanh(), 1.0, 2.0).unwrap()
    }

    #[test]
    fn tq_at_unit_ratio_is_catenoid_modulus() {
        let class = solve_tq(1.0, 1e-12).unwrap();
        assert!((class.t_q - t1_oracle()).abs() < 1e-9);
        assert!((class.t_q - 2.39936).abs() < 1e-4);
        assert!(class.crossing_residual().abs() < 1e-12 * class.sigma1);
    }

    #[test]
    fn tq_at_two() {
        let class = solve_tq(2.0, 1e-12).unwrap();
        assert!((class.t_q - 3.04).abs() < 0.05);
    }

    #[test]
    fn tq_ratio_symmetry() {
        for &q in &[2.0, 3.0, 5.0, 10.0] {
            let a = solve_tq(q, 1e-12).unwrap().t_q;
            let b = solve_tq(1.0 / q, 1e-12).unwrap().t_q;
            assert!((a - b).abs() <= 1e-10 * a, "q = {q}: {a} vs {b}");
        }
    }

    #[test]
    fn tq_rejects_bad_inputs() {
        assert!(solve_tq(0.0, 1e-12).is_err());
        assert!(solve_tq(1.0, 0.0).is_err());
        assert!(solve_tq(1e12, 1e-12).is_err());
    }

    #[test]
    fn bounds_at_unit_ratio() {
        let report = verify_tq_bounds(1.0).unwrap();
        assert!(report.all_hold());
        let t = report.t_q;
        // Chain 2 < 2 coth(T₁) ≈ 2.03 < T₁ < 4.
        assert!((report.checks[0].lhs - 2.0).abs() < 1e-12);
        assert!((report.checks[0].rhs - 2.0 * coth(t)).abs() < 1e-12);
        assert!(2.0 * coth(t) < t && t < 4.0);
    }

    #[test]
    fn bounds_at_ten() {
        let report = verify_tq_bounds(10.0).unwrap();
        assert!(report.all_hold());
        assert!(report.t_q > 10.1);
    }

    #[test]
    fn tq_minimum_at_unit_ratio() {
        // Scan grid q ∈ [0.1, 10]: the minimum sits at q = 1.
        let n = 81;
        let mut best = (f64::INFINITY, 0.0);
        for i in 0..n {
            let q = 10f64.powf(-1.0 + 2.0 * i as f64 / (n - 1) as f64);
            let t = solve_tq(q, 1e-12).unwrap().t_q;
            if t < best.0 {
                best = (t, q);
            }
        }
        assert!((best.1 - 1.0).abs() < 1e-12, "minimum at q = {}", best.1);
        assert!((best.0 - t1()).abs() < 1e-12);
    }

    #[test]
    fn b_at_one_is_one() {
        assert!((b_of_q(1.0).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn b_decreasing_below_one() {
        let n = 60;
        let mut prev = f64::INFINITY;
        for i in 0..n {
            let q = 0.01 + (1.0 - 0.02) * i as f64 / (n - 1) as f64;
            let b = b_of_q(q).unwrap();
            assert!(b < prev, "b not decreasing at q = {q}");
            prev = b;
        }
    }

    #[test]
    fn b_half_squared_exceeds_one() {
        let b = b_of_q(0.5).unwrap();
        assert!(b * b > 1.0);
    }

    #[test]
    fn b_reciprocal_symmetry() {
        for &q in &[0.3, 0.5, 2.0, 3.0] {
            let b = b_of_q(q).unwrap();
            let binv = b_of_q(1.0 / q).unwrap();
            assert!(
                (b * binv - 1.0).abs() < 1e-9,
                "q = {q}: b·b(1/q) = {}",
                b * binv
            );
        }
    }

    #[test]
    fn b_forms_cross_validate() {
        // The direct and reciprocal forms agree where both are
        // well-conditioned in f64.
        for i in 0..40 {
            let q = (1.0f64 / 6.0) * (36.0f64).powf(i as f64 / 39.0);
            let class = solve_tq(q, 1e-12).unwrap();
            let t = class.t_q;
            let k = (1.0 + q) / t;
            let direct = t.cosh() - k * t.sinh();
            let reciprocal = 1.0 / (t * t.sinh() / (1.0 + q) - t.cosh() / q);
            let b = b_from_class(&class);
            assert!(
                (b - direct).abs() <= 1e-9 * direct.abs(),
                "q = {q}: {b} vs direct {direct}"
            );
            assert!(
                (b - reciprocal).abs() <= 1e-9 * reciprocal.abs(),
                "q = {q}: {b} vs reciprocal {reciprocal}"
            );
        }
    }

    #[test]
    fn coefficients_at_unit_ratio_are_conformal() {
        let c = solve_coefficients(1.0).unwrap();
        let t1_ref = t1_oracle();
        let k = 2.0 / t1_ref;
        assert!((c.c2 - k).abs() < 1e-10);
        assert!((c.c1 - (1.0 - k * k).sqrt()).abs() < 1e-10);
        // Conformality: c₁²k² = c₂²(1 - k²).
        let defect = c.c1 * c.c1 * c.k * c.k - c.c2 * c.c2 * (1.0 - c.k * c.k);
        assert!(defect.abs() < 1e-12);
    }

    #[test]
    fn coefficients_solve_boundary_system() {
        for &q in &[0.5, 0.25, 2.0, 4.0] {
            let c = solve_coefficients(q).unwrap();
            let b = b_of_q(q).unwrap();
            let at0 = c.c1 * c.c1 + c.c2 * c.c2;
            let at_t = c.c1 * c.c1 * q * q + c.c2 * c.c2 * b * b;
            assert!((at0 - 1.0).abs() <= 1e-12, "q = {q}: |Ψ̂(0)|² = {at0}");
            assert!((at_t - 1.0).abs() <= 1e-12, "q = {q}: |Ψ̂(T)|² = {at_t}");
            assert!(c.c1 >= 0.0 && c.c2 >= 0.0);
        }
    }

    #[test]
    fn coefficients_at_four() {
        let c = solve_coefficients(4.0).unwrap();
        let b = b_of_q(4.0).unwrap();
        let c2sq = (1.0 - 16.0) / (b * b - 16.0);
        assert!(c2sq > 0.0 && c2sq < 1.0);
        assert!((c.c2 * c.c2 - c2sq).abs() < 1e-12);
    }

    #[test]
    fn build_map_at_t1_is_catenoid() {
        let map = build_map(t1(), RatioBranch::GeqOne).unwrap();
        assert_eq!(map.q, 1.0);
        assert!((map.coefficients.c2 - map.coefficients.k).abs() < 1e-14);
    }

    #[test]
    fn build_map_round_trip() {
        let t = solve_tq(2.0, 1e-12).unwrap().t_q;
        let map = build_map(t, RatioBranch::GeqOne).unwrap();
        assert!((map.q - 2.0).abs() <= 1e-9, "q = {}", map.q);
        let mirror = build_map(t, RatioBranch::LeqOne).unwrap();
        assert!((mirror.q - 0.5).abs() <= 1e-9);
    }

    #[test]
    fn build_map_rejects_below_t1() {
        match build_map(2.0, RatioBranch::GeqOne) {
            Err(Error::Infeasible(_)) => {}
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn map_stays_in_unit_ball() {
        for &q in &[1.0, 0.5, 2.0, 6.0] {
            let map = map_for_ratio(q).unwrap();
            let t_mod = map.modulus();
            let mut interior_max: f64 = 0.0;
            for i in 0..=40 {
                let t = t_mod * i as f64 / 40.0;
                for j in 0..32 {
                    let theta = 2.0 * PI * j as f64 / 32.0;
                    let p = map.evaluate(t, theta).unwrap();
                    let norm = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
                    assert!(norm <= 1.0 + 1e-12, "q = {q}, |Ψ̂({t},{theta})| = {norm}");
                    if i > 0 && i < 40 {
                        interior_max = interior_max.max(norm);
                    }
                }
            }
            // Boundary circles land on the unit sphere.
            for &t in &[0.0, t_mod] {
                let p = map.evaluate(t, 0.7).unwrap();
                let norm = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
                assert!((norm - 1.0).abs() <= 1e-12);
            }
            assert!(interior_max <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn map_densities_positive() {
        for &q in &[0.25, 1.0, 3.0, 20.0] {
            let map = map_for_ratio(q).unwrap();
            assert!(map.density_inner > 0.0);
            assert!(map.density_outer > 0.0);
        }
    }

    #[test]
    fn boundary_gradient_symmetric_at_unit_ratio() {
        let map = map_for_ratio(1.0).unwrap();
        let g0 = boundary_gradient_sq(&map, BoundaryCircle::Inner);
        let gt = boundary_gradient_sq(&map, BoundaryCircle::Outer);
        assert!((g0 - gt).abs() < 1e-13);
    }

    #[test]
    fn boundary_gradient_distinct_at_two() {
        let map = map_for_ratio(2.0).unwrap();
        let g0 = boundary_gradient_sq(&map, BoundaryCircle::Inner);
        let gt = boundary_gradient_sq(&map, BoundaryCircle::Outer);
        assert!((g0 - gt).abs() > 1e-3);
        // The proved lower bound (q-1)/(q+1)·cosh(q + 1/q) exceeds q at
        // q = 2, which is what forces b(2) ≠ 1/2.
        let q: f64 = 2.0;
        let bound = (q - 1.0) / (q + 1.0) * (q + 1.0 / q).cosh();
        assert!(bound > q);
        // And the bound really is a lower bound for 1/b(q).
        assert!(1.0 / map.b >= bound);
    }

    #[test]
    fn density_threshold_near_three_oh_four() {
        let t2 = density_distinct_threshold();
        assert!((t2 - 3.04).abs() < 0.05);
        // q·b(q) - 1 vanishes at q = 1 and is bounded away from 0 at q = 2.
        let locus = density_equal_locus(&[1.0, 2.0]).unwrap();
        assert!(locus[0].1.abs() < 1e-12);
        assert!(locus[1].1.abs() > 0.01);
    }

    #[test]
    fn normalized_sigma1_values_and_bounds() {
        let v1 = normalized_sigma1(1.0).unwrap();
        assert!((v1 - 8.0 * PI / t1()).abs() < 1e-12);
        assert!((v1 - 10.4748).abs() < 1e-3);
        for &q in &[0.05, 0.3, 1.0, 4.0, 60.0] {
            let v = normalized_sigma1(q).unwrap();
            assert!(v > 2.0 * PI);
            assert!(v < 2.0 * PI + 4.0 * PI * q / (q * q + 1.0));
        }
        let v100 = normalized_sigma1(100.0).unwrap();
        assert!((v100 - 2.0 * PI).abs() < 0.15);
    }

    #[test]
    fn energy_matches_closed_form_antiderivative() {
        // Oracle: ∫₀ᵀ (φ'² + φ²) dt = (1+k²) sinh(2T)/2 - k (cosh(2T) - 1),
        // from φ'² + φ² = (1+k²)cosh(2t) - 2k sinh(2t).
        for &q in &[1.0, 2.0, 5.0] {
            let map = map_for_ratio(q).unwrap();
            let MapCoefficients { c1, c2, k } = map.coefficients;
            let t = map.modulus();
            let closed = 2.0
                * PI
                * (c1 * c1 * k * k * t
                    + c2 * c2
                        * ((1.0 + k * k) * (2.0 * t).sinh() / 2.0 - k * ((2.0 * t).cosh() - 1.0)));
            let quad = energy(&map, 512).unwrap();
            assert!(
                (quad - closed).abs() <= 1e-10 * closed,
                "q = {q}: {quad} vs {closed}"
            );
        }
    }

    #[test]
    fn energy_quadrature_converged() {
        let map = map_for_ratio(2.0).unwrap();
        let a = energy(&map, 512).unwrap();
        let b = energy(&map, 1024).unwrap();
        assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn energy_equals_normalized_eigenvalue() {
        for &q in &[1.0, 2.0, 5.0] {
            let map = map_for_ratio(q).unwrap();
            let e = energy(&map, 512).unwrap();
            let ns = normalized_sigma1(q).unwrap();
            assert!((e - ns).abs() <= 1e-8 * ns, "q = {q}: {e} vs {ns}");
        }
    }

    #[test]
    fn energy_rejects_too_few_points() {
        let map = map_for_ratio(1.0).unwrap();
        assert!(matches!(energy(&map, 8), Err(Error::Resolution(_))));
    }

    #[test]
    fn disk_branch_values() {
        let tt = tilde_t();
        assert!((tt - 3f64.ln()).abs() < 1e-12);
        assert!((2.0 * (tt / 2.0).tanh() - 1.0).abs() < 1e-12);
        assert!(tt < t1());
        assert!((disk_branch_sigma(tt).unwrap() - 2.0 * PI).abs() < 1e-11);
        let v = disk_branch_sigma(1.0).unwrap();
        assert!((v - 5.808).abs() < 1e-3);
        assert!(v < 2.0 * PI);
        // T → ∞ limit is 4π.
        assert!((disk_branch_sigma(500.0).unwrap() - 4.0 * PI).abs() < 1e-12);
    }
}
