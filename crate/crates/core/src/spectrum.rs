//! Closed-form Steklov spectrum of the flat annulus `[0, T] × S¹` with a
//! constant density on each boundary circle.
//!
//! The eigenvalue problem is
//!
//! ```text
//!   Δu = 0            in [0, T] × S¹,
//!   ∂_t u = -σ ρ₁ u   on {t = 0},
//!   ∂_t u = +σ ρ₂ u   on {t = T},
//! ```
//!
//! and separates into Fourier modes in θ. Mode 0 contributes the constant
//! (σ = 0) and one positive radial eigenvalue
//!
//! ```text
//!   σ⁽⁰⁾ = (1/T)(1/ρ₁ + 1/ρ₂),       u₁ = -1 + σ⁽⁰⁾ ρ₁ t.
//! ```
//!
//! Each mode n ≥ 1 contributes two eigenvalues of multiplicity two, the
//! roots of  σ² - σ n (1/ρ₁ + 1/ρ₂) coth(nT) + n²/(ρ₁ρ₂) = 0:
//!
//! ```text
//!   σ⁽ⁿ⁾± = (n/2) [ S coth(nT) ± √(S² coth²(nT) - 4/(ρ₁ρ₂)) ],
//!   S = 1/ρ₁ + 1/ρ₂.
//! ```
//!
//! The discriminant is nonnegative (coth ≥ 1 plus AM-GM), σ⁽ⁿ⁾₋ is strictly
//! increasing in n, and σ⁽ⁿ⁾₊ σ⁽ⁿ⁾₋ = n²/(ρ₁ρ₂).

use serde::Serialize;

use crate::error::{require_positive, Error, Result};

/// Conformal class of the flat annulus `[0, T] × S¹`: the modulus `T > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConformalAnnulus {
    t: f64,
}

impl ConformalAnnulus {
    pub fn new(t: f64) -> Result<Self> {
        require_positive("modulus T", t)?;
        Ok(ConformalAnnulus { t })
    }

    /// The modulus `T`.
    pub fn modulus(&self) -> f64 {
        self.t
    }
}

/// Constant boundary densities `(ρ₁, ρ₂)` on the circles `t = 0` and `t = T`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryDensityPair {
    rho1: f64,
    rho2: f64,
}

impl BoundaryDensityPair {
    pub fn new(rho1: f64, rho2: f64) -> Result<Self> {
        require_positive("rho1", rho1)?;
        require_positive("rho2", rho2)?;
        Ok(BoundaryDensityPair { rho1, rho2 })
    }

    pub fn rho1(&self) -> f64 {
        self.rho1
    }

    pub fn rho2(&self) -> f64 {
        self.rho2
    }

    /// Density ratio `q = ρ₁/ρ₂`.
    pub fn ratio(&self) -> f64 {
        self.rho1 / self.rho2
    }
}

/// Which root of the per-mode characteristic quadratic an eigenvalue is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// σ = 0, the constant eigenfunction (mode 0 only).
    RadialZero,
    /// The positive mode-0 eigenvalue σ⁽⁰⁾.
    Radial,
    /// σ⁽ⁿ⁾₋ for n ≥ 1.
    Minus,
    /// σ⁽ⁿ⁾₊ for n ≥ 1.
    Plus,
}

impl Branch {
    pub fn as_str(&self) -> &'static str {
        match self {
            Branch::RadialZero => "radial-zero",
            Branch::Radial => "radial",
            Branch::Minus => "minus",
            Branch::Plus => "plus",
        }
    }
}

/// One eigenvalue of the weighted Steklov problem, tagged by Fourier mode
/// and branch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModeEigenvalue {
    pub n: u32,
    pub branch: Branch,
    pub sigma: f64,
    pub multiplicity: u8,
}

/// `coth x` for `x > 0`.
pub(crate) fn coth(x: f64) -> f64 {
    1.0 / x.tanh()
}

/// The lowest positive radial eigenvalue `σ⁽⁰⁾ = (1/T)(1/ρ₁ + 1/ρ₂)`.
pub fn sigma_radial(t: f64, rho1: f64, rho2: f64) -> Result<f64> {
    require_positive("T", t)?;
    require_positive("rho1", rho1)?;
    require_positive("rho2", rho2)?;
    Ok((1.0 / rho1 + 1.0 / rho2) / t)
}

/// Mode-`n` eigenvalue `σ⁽ⁿ⁾₋` or `σ⁽ⁿ⁾₊` for `n ≥ 1`.
///
/// The minus branch is evaluated in the rationalized form
/// `σ₋ = (2n/(ρ₁ρ₂)) / (S coth(nT) + √disc)`; the naive difference of the
/// quadratic roots loses all significant digits once `coth(nT) → 1`.
pub fn sigma_mode(n: u32, t: f64, rho1: f64, rho2: f64, branch: Branch) -> Result<f64> {
    if n < 1 {
        return Err(Error::domain(format!("mode index must be >= 1, got {n}")));
    }
    require_positive("T", t)?;
    require_positive("rho1", rho1)?;
    require_positive("rho2", rho2)?;
    let s = 1.0 / rho1 + 1.0 / rho2;
    let p = 1.0 / (rho1 * rho2);
    let nf = f64::from(n);
    let c = coth(nf * t);
    // S²coth² - 4P = S²csch² + (1/ρ₁ - 1/ρ₂)²: a sum of nonnegative terms,
    // unlike the textbook discriminant which cancels as coth → 1.
    let csch = 1.0 / (nf * t).sinh();
    let diff = 1.0 / rho1 - 1.0 / rho2;
    let disc = (s * csch) * (s * csch) + diff * diff;
    let root = disc.sqrt();
    match branch {
        Branch::Minus => Ok(2.0 * nf * p / (s * c + root)),
        Branch::Plus => Ok(0.5 * nf * (s * c + root)),
        _ => Err(Error::domain(format!(
            "sigma_mode expects the minus or plus branch, got {}",
            branch.as_str()
        ))),
    }
}

/// Value of an eigenfunction at a point: a scalar for radial branches, the
/// `(u₂, u₃)` pair for modes `n ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EigenfunctionValue {
    Scalar(f64),
    Pair([f64; 2]),
}

/// Radial profile `φ_n(t) = cosh(nt) - (σρ₁/n) sinh(nt)` for `n ≥ 1`.
///
/// The slope `σρ₁/n` (rather than `σρ₁`) is forced by the boundary
/// condition `∂_t u = -σρ₁ u` at `t = 0`; at `n = 1` it reduces to the
/// usual `cosh t - σρ₁ sinh t`. The extension to `n ≥ 2` (arguments `nt`,
/// `nθ` and the `1/n` slope) is an interpretation of the mode-1 closed
/// form; it is the unique one consistent with the boundary conditions and
/// the eigenvalue quadratic.
pub fn mode_profile(n: u32, sigma: f64, rho1: f64, t: f64) -> f64 {
    let nf = f64::from(n);
    let gamma = sigma * rho1 / nf;
    (nf * t).cosh() - gamma * (nf * t).sinh()
}

/// Evaluates the eigenfunction of `mode` at `(t, θ)`, `0 ≤ t ≤ T`.
pub fn eigenfunction_eval(
    mode: &ModeEigenvalue,
    t_modulus: f64,
    rho1: f64,
    rho2: f64,
    point: (f64, f64),
) -> Result<EigenfunctionValue> {
    require_positive("T", t_modulus)?;
    require_positive("rho1", rho1)?;
    require_positive("rho2", rho2)?;
    let (t, theta) = point;
    if !(0.0..=t_modulus).contains(&t) {
        return Err(Error::domain(format!("t = {t} outside [0, {t_modulus}]")));
    }
    match mode.branch {
        Branch::RadialZero => Ok(EigenfunctionValue::Scalar(1.0)),
        Branch::Radial => Ok(EigenfunctionValue::Scalar(-1.0 + mode.sigma * rho1 * t)),
        Branch::Minus | Branch::Plus => {
            let phi = mode_profile(mode.n, mode.sigma, rho1, t);
            let nf = f64::from(mode.n);
            Ok(EigenfunctionValue::Pair([
                phi * (nf * theta).cos(),
                phi * (nf * theta).sin(),
            ]))
        }
    }
}

/// Residuals of the boundary conditions for one eigenpair: `∂_t u + σρ₁u`
/// at `t = 0` and `∂_t u - σρ₂u` at `t = T`, from analytic derivatives.
///
/// The `t = T` residual of a mode eigenfunction is evaluated in the
/// factored form `½(1-γ)(n-σρ₂)eⁿᵀ - ½(1+γ)(n+σρ₂)e⁻ⁿᵀ`; evaluating
/// `φ'(T) - σρ₂ φ(T)` directly subtracts two numbers of size `eⁿᵀ` and
/// drowns the residual in roundoff for large `nT`.
///
/// Conditioning note: the residual equals `sinh(nT) · Q(σ)` with `Q` the
/// characteristic quadratic, so the last-ulp rounding of σ itself shows up
/// amplified by `sinh(nT)`. The residual is roundoff-small in absolute
/// terms (≤ 1e-12) for `nT ≲ 8`; beyond that only the `sinh(nT)`-scaled
/// bound can hold in double precision.
pub fn boundary_residuals(
    mode: &ModeEigenvalue,
    t_modulus: f64,
    rho1: f64,
    rho2: f64,
) -> (f64, f64) {
    let sigma = mode.sigma;
    match mode.branch {
        Branch::RadialZero => (0.0, 0.0),
        Branch::Radial => {
            let u_0 = -1.0;
            let at0 = sigma * rho1 + sigma * rho1 * u_0;
            let u_t = -1.0 + sigma * rho1 * t_modulus;
            let at_t = sigma * rho1 - sigma * rho2 * u_t;
            (at0, at_t)
        }
        Branch::Minus | Branch::Plus => {
            let nf = f64::from(mode.n);
            let gamma = sigma * rho1 / nf;
            let at0 = -sigma * rho1 + sigma * rho1;
            let x = nf * t_modulus;
            let at_t = 0.5 * (1.0 - gamma) * (nf - sigma * rho2) * x.exp()
                - 0.5 * (1.0 + gamma) * (nf + sigma * rho2) * (-x).exp();
            (at0, at_t)
        }
    }
}

/// The ordered weighted Steklov spectrum: σ₀ = 0 followed by the `k_max`
/// smallest positive eigenvalues, repeated by multiplicity.
#[derive(Debug, Clone, Serialize)]
pub struct SteklovSpectrum {
    #[serde(rename = "T")]
    t: f64,
    rho1: f64,
    rho2: f64,
    k_max: usize,
    entries: Vec<ModeEigenvalue>,
}

impl SteklovSpectrum {
    pub fn entries(&self) -> &[ModeEigenvalue] {
        &self.entries
    }

    pub fn modulus(&self) -> f64 {
        self.t
    }

    pub fn densities(&self) -> (f64, f64) {
        (self.rho1, self.rho2)
    }

    /// Eigenvalues only, in order.
    pub fn values(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.sigma).collect()
    }

    /// Groups consecutive entries whose eigenvalues agree within
    /// `tol · max(1, σ)` into multiplicity clusters; returns the index
    /// ranges of the groups.
    pub fn multiplicity_clusters(&self, tol: f64) -> Vec<std::ops::Range<usize>> {
        let mut clusters = Vec::new();
        let mut start = 0;
        for i in 1..=self.entries.len() {
            let split = i == self.entries.len() || {
                let prev = self.entries[i - 1].sigma;
                let cur = self.entries[i].sigma;
                (cur - prev).abs() > tol * cur.abs().max(1.0)
            };
            if split {
                clusters.push(start..i);
                start = i;
            }
        }
        clusters
    }

    /// CSV rendering, one row per entry.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,branch,sigma,multiplicity\n");
        for e in &self.entries {
            out.push_str(&format!(
                "{},{},{},{}\n",
                e.n,
                e.branch.as_str(),
                e.sigma,
                e.multiplicity
            ));
        }
        out
    }
}

/// Typed entry point of [`assemble_spectrum`].
pub fn assemble_spectrum_weighted(
    annulus: &ConformalAnnulus,
    densities: &BoundaryDensityPair,
    k_max: usize,
) -> Result<SteklovSpectrum> {
    assemble_spectrum(annulus.modulus(), densities.rho1(), densities.rho2(), k_max)
}

/// Assembles σ₀ = 0 and the `k_max` smallest positive eigenvalues.
///
/// Completeness of the truncation follows from the monotonicity of
/// σ⁽ⁿ⁾₋ in n: growth of the candidate set stops once the next minus
/// branch already exceeds the largest value that can be reported.
pub fn assemble_spectrum(t: f64, rho1: f64, rho2: f64, k_max: usize) -> Result<SteklovSpectrum> {
    require_positive("T", t)?;
    require_positive("rho1", rho1)?;
    require_positive("rho2", rho2)?;
    if k_max < 1 {
        return Err(Error::domain("k_max must be >= 1".to_string()));
    }

    let mut candidates: Vec<ModeEigenvalue> = vec![ModeEigenvalue {
        n: 0,
        branch: Branch::Radial,
        sigma: sigma_radial(t, rho1, rho2)?,
        multiplicity: 1,
    }];

    let mut n = 1u32;
    loop {
        for branch in [Branch::Minus, Branch::Plus] {
            let sigma = sigma_mode(n, t, rho1, rho2, branch)?;
            let entry = ModeEigenvalue {
                n,
                branch,
                sigma,
                multiplicity: 2,
            };
            candidates.push(entry);
            candidates.push(entry);
        }
        if candidates.len() >= k_max {
            candidates.sort_by(|a, b| {
                a.sigma
                    .total_cmp(&b.sigma)
                    .then(a.n.cmp(&b.n))
                    .then(a.branch.cmp(&b.branch))
            });
            let cutoff = candidates[k_max - 1].sigma;
            let next_minus = sigma_mode(n + 1, t, rho1, rho2, Branch::Minus)?;
            if next_minus > cutoff {
                break;
            }
        }
        n += 1;
        if n > 100_000 {
            return Err(Error::Resolution(
                "mode enumeration failed to close; k_max too large".to_string(),
            ));
        }
    }

    candidates.truncate(k_max);
    let mut entries = vec![ModeEigenvalue {
        n: 0,
        branch: Branch::RadialZero,
        sigma: 0.0,
        multiplicity: 1,
    }];
    entries.extend(candidates);

    Ok(SteklovSpectrum {
        t,
        rho1,
        rho2,
        k_max,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::find_root_default;

    #[test]
    fn radial_direct_substitution() {
        assert_eq!(sigma_radial(1.0, 1.0, 1.0).unwrap(), 2.0);
    }

    #[test]
    fn radial_equal_densities_closed_form() {
        for &(t, rho) in &[(0.7, 0.3), (2.0, 1.5), (5.0, 4.0)] {
            let v = sigma_radial(t, rho, rho).unwrap();
            assert!((v - 2.0 / (rho * t)).abs() <= 1e-15 * v);
        }
    }

    #[test]
    fn radial_at_catenoid_modulus() {
        // T = 2 t₁ with t₁ the root of t = coth t gives σ⁽⁰⁾ = 1/t₁.
        let t1 = find_root_default(|t| t - 1.0 / t.tanh(), 1.0, 2.0).unwrap();
        let v = sigma_radial(2.0 * t1, 1.0, 1.0).unwrap();
        assert!((v - 1.0 / t1).abs() < 1e-14);
        assert!((v - 0.83356).abs() < 1e-4);
    }

    #[test]
    fn radial_rejects_nonpositive() {
        assert!(sigma_radial(-1.0, 1.0, 1.0).is_err());
        assert!(sigma_radial(1.0, 0.0, 1.0).is_err());
        assert!(sigma_radial(1.0, 1.0, f64::NAN).is_err());
    }

    #[test]
    fn mode_one_equal_densities_is_tanh_coth() {
        for &t in &[0.5, 1.0, 2.3993572805, 7.0] {
            let lo = sigma_mode(1, t, 1.0, 1.0, Branch::Minus).unwrap();
            let hi = sigma_mode(1, t, 1.0, 1.0, Branch::Plus).unwrap();
            assert!((lo - (t / 2.0).tanh()).abs() < 1e-14);
            assert!((hi - 1.0 / (t / 2.0).tanh()).abs() < 1e-13);
        }
    }

    #[test]
    fn mode_two_equal_densities() {
        // n tanh(nT/2)/ρ against the general formula.
        let v = sigma_mode(2, 1.0, 1.0, 1.0, Branch::Minus).unwrap();
        assert!((v - 2.0 * 1f64.tanh()).abs() < 1e-14);
        assert!((v - 1.52323).abs() < 1e-4);
    }

    #[test]
    fn mode_rejects_bad_inputs() {
        assert!(sigma_mode(0, 1.0, 1.0, 1.0, Branch::Minus).is_err());
        assert!(sigma_mode(1, 0.0, 1.0, 1.0, Branch::Minus).is_err());
        assert!(sigma_mode(1, 1.0, 1.0, 1.0, Branch::Radial).is_err());
    }

    #[test]
    fn minus_branch_no_cancellation_at_large_nt() {
        // σ₋ → n/√(ρ₁ρ₂) · (smaller root of the limit quadratic) as nT → ∞;
        // the rationalized form keeps full precision there.
        let v = sigma_mode(3, 200.0, 2.0, 1.0, Branch::Minus).unwrap();
        // coth(600) = 1 exactly in f64: limit value solves σ² - 3σ·(3/2) + 9/2 = 0.
        let s: f64 = 1.5;
        let p: f64 = 0.5;
        let expected = 2.0 * 3.0 * p / (s + (s * s - 4.0 * p).sqrt());
        assert_eq!(v, expected);
        assert!(v > 0.0);
    }

    #[test]
    fn assemble_matches_brute_force_enumeration() {
        // Brute force: modes n ≤ 10, both branches, plus σ⁽⁰⁾, sorted.
        let t = 1.0;
        let mut brute = vec![sigma_radial(t, 1.0, 1.0).unwrap()];
        for n in 1..=10 {
            for branch in [Branch::Minus, Branch::Plus] {
                let s = sigma_mode(n, t, 1.0, 1.0, branch).unwrap();
                brute.push(s);
                brute.push(s);
            }
        }
        brute.sort_by(f64::total_cmp);

        let spec = assemble_spectrum(t, 1.0, 1.0, 9).unwrap();
        let vals = spec.values();
        assert_eq!(vals[0], 0.0);
        for (i, v) in vals[1..].iter().enumerate() {
            assert!(
                (v - brute[i]).abs() < 1e-15,
                "entry {i}: {v} vs {}",
                brute[i]
            );
        }
        // Confirmed ordering at T = 1, ρ = (1, 1): (1⁻,1⁻,2⁻,2⁻,σ⁽⁰⁾,...).
        let half_tanh = 0.5f64.tanh();
        let two_tanh1 = 2.0 * 1f64.tanh();
        assert!((vals[1] - half_tanh).abs() < 1e-15);
        assert!((vals[2] - half_tanh).abs() < 1e-15);
        assert!((vals[3] - two_tanh1).abs() < 1e-15);
        assert!((vals[4] - two_tanh1).abs() < 1e-15);
        assert_eq!(vals[5], 2.0);
        assert_eq!(spec.entries()[5].branch, Branch::Radial);
    }

    #[test]
    fn assemble_starts_with_zero() {
        let spec = assemble_spectrum(3.7, 0.4, 2.2, 6).unwrap();
        let e0 = spec.entries()[0];
        assert_eq!(e0.sigma, 0.0);
        assert_eq!(e0.branch, Branch::RadialZero);
        assert_eq!(e0.multiplicity, 1);
    }

    #[test]
    fn truncation_guard_included_enough_modes() {
        let spec = assemble_spectrum(0.1, 1.0, 1.0, 25).unwrap();
        let vals = spec.values();
        assert_eq!(vals.len(), 26);
        for w in vals.windows(2) {
            assert!(w[0] <= w[1]);
        }
        // No omitted mode can sit below the last reported value.
        let max_n = spec.entries().iter().map(|e| e.n).max().unwrap();
        let next = sigma_mode(max_n + 1, 0.1, 1.0, 1.0, Branch::Minus).unwrap();
        assert!(next > *vals.last().unwrap());
    }

    #[test]
    fn multiplicity_cluster_at_crossing() {
        // At T₁ = 2t₁ with equal densities the first positive eigenvalue
        // appears with multiplicity 3 (radial crosses mode-1 minus).
        let t1 = find_root_default(|t| t - 1.0 / t.tanh(), 1.0, 2.0).unwrap();
        let spec = assemble_spectrum(2.0 * t1, 1.0, 1.0, 3).unwrap();
        let vals = spec.values();
        assert!((vals[1] - vals[3]).abs() < 1e-12 * vals[1]);
        let clusters = spec.multiplicity_clusters(1e-12);
        assert_eq!(clusters[0], 0..1);
        assert_eq!(clusters[1], 1..4);
    }

    #[test]
    fn eigenfunction_values() {
        let t = 2.0;
        let radial = ModeEigenvalue {
            n: 0,
            branch: Branch::Radial,
            sigma: sigma_radial(t, 2.0, 1.0).unwrap(),
            multiplicity: 1,
        };
        // u₁(0, θ) = -1 for all θ.
        for theta in [0.0, 1.0, 3.0] {
            match eigenfunction_eval(&radial, t, 2.0, 1.0, (0.0, theta)).unwrap() {
                EigenfunctionValue::Scalar(v) => assert_eq!(v, -1.0),
                _ => panic!("radial eigenfunction must be scalar"),
            }
        }
        // u₁(T, θ) = ρ₁/ρ₂ = q.
        match eigenfunction_eval(&radial, t, 2.0, 1.0, (t, 0.3)).unwrap() {
            EigenfunctionValue::Scalar(v) => assert!((v - 2.0).abs() < 1e-14),
            _ => unreachable!(),
        }
        // u₂⁽¹⁾(0, 0) = 1.
        let mode = ModeEigenvalue {
            n: 1,
            branch: Branch::Minus,
            sigma: sigma_mode(1, t, 2.0, 1.0, Branch::Minus).unwrap(),
            multiplicity: 2,
        };
        match eigenfunction_eval(&mode, t, 2.0, 1.0, (0.0, 0.0)).unwrap() {
            EigenfunctionValue::Pair([u2, u3]) => {
                assert_eq!(u2, 1.0);
                assert_eq!(u3, 0.0);
            }
            _ => panic!("mode eigenfunction must be a pair"),
        }
    }

    #[test]
    fn eigenfunction_rejects_t_outside_annulus() {
        let mode = ModeEigenvalue {
            n: 0,
            branch: Branch::RadialZero,
            sigma: 0.0,
            multiplicity: 1,
        };
        assert!(eigenfunction_eval(&mode, 1.0, 1.0, 1.0, (1.5, 0.0)).is_err());
        assert!(eigenfunction_eval(&mode, 1.0, 1.0, 1.0, (-0.1, 0.0)).is_err());
    }

    #[test]
    fn boundary_residuals_are_roundoff_small() {
        for &(t, rho1, rho2) in &[
            (0.5, 1.0, 1.0),
            (2.0, 3.0, 0.5),
            (8.0, 0.25, 4.0),
            (20.0, 1.0, 1.0),
        ] {
            let spec = assemble_spectrum(t, rho1, rho2, 8).unwrap();
            for e in spec.entries() {
                let (r0, rt) = boundary_residuals(e, t, rho1, rho2);
                assert!(r0.abs() <= 1e-12, "t=0 residual {r0} at {e:?}");
                let nt = f64::from(e.n) * t;
                if nt <= 8.0 {
                    assert!(rt.abs() <= 1e-12, "t=T residual {rt} at {e:?} (T={t})");
                } else {
                    // The residual is sinh(nT)·Q(σ); past nT ≈ 8 the last-ulp
                    // rounding of σ dominates, so bound it by the scaled form.
                    let s = e.sigma;
                    let nf = f64::from(e.n);
                    let coeff_scale = s * s * rho1 * rho2 / nf + s * (rho1 + rho2) * coth(nt) + nf;
                    assert!(
                        rt.abs() <= 1e-13 * nt.sinh() * coeff_scale,
                        "t=T residual {rt} beyond conditioning bound at {e:?} (T={t})"
                    );
                }
            }
        }
    }

    #[test]
    fn csv_has_fixed_header() {
        let spec = assemble_spectrum(1.0, 1.0, 1.0, 4).unwrap();
        let csv = spec.to_csv();
        assert!(csv.starts_with("n,branch,sigma,multiplicity\n"));
        assert_eq!(csv.lines().count(), 1 + spec.entries().len());
    }

    #[test]
    fn type_invariants() {
        assert!(ConformalAnnulus::new(0.0).is_err());
        assert!(BoundaryDensityPair::new(1.0, -2.0).is_err());
        let pair = BoundaryDensityPair::new(3.0, 1.5).unwrap();
        assert_eq!(pair.ratio(), 2.0);
        let annulus = ConformalAnnulus::new(1.0).unwrap();
        let typed = assemble_spectrum_weighted(&annulus, &pair, 4).unwrap();
        let raw = assemble_spectrum(1.0, 3.0, 1.5, 4).unwrap();
        assert_eq!(typed.values(), raw.values());
    }
}
