//! Numerical certification that a candidate map is a free-boundary
//! harmonic map with the expected extremality structure: harmonic
//! components, boundary circles on the unit sphere, normal derivative
//! parallel to the position vector, positive induced densities, spectral
//! index 1 with a multiplicity-3 first eigenvalue, and (at unit ratio
//! only) vanishing conformality defect.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::FreeBoundaryMap;
use crate::spectrum::{assemble_spectrum, sigma_mode, sigma_radial, Branch};

/// Per-check tolerances of the audit.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Tolerances {
    /// For residuals of closed-form identities (pure roundoff).
    pub closed_form: f64,
    /// For the finite-difference harmonicity probe (discretization error).
    pub finite_difference: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            closed_form: 1e-10,
            finite_difference: 1e-6,
        }
    }
}

/// Position of the first eigenvalue in the spectrum of the induced pair.
#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
pub struct SpectralIndex {
    pub index: usize,
    pub multiplicity: usize,
}

/// Outcome of [`audit_free_boundary`].
#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub tolerances: Tolerances,
    /// Max over the grid of the symbolic Laplacian of the components
    /// (exact harmonics: roundoff only).
    pub harmonicity_residual: f64,
    /// Max over interior grid points of the 5-point finite-difference
    /// Laplacian, step 1e-4: an independent cross-check that catches
    /// implementation typos rather than discretization error.
    pub harmonicity_fd_residual: f64,
    /// Max over both boundary circles of | |Ψ̂| - 1 |.
    pub boundary_norm_residual: f64,
    /// Max over both boundary circles of |∂_t Ψ̂ - (Ψ̂·∂_t Ψ̂) Ψ̂|.
    pub parallelism_residual: f64,
    /// Max over the whole grid of |Ψ̂| - 1 (maximum principle: ≤ 0 up to
    /// roundoff).
    pub interior_excess: f64,
    /// Largest |Ψ̂| over interior grid points and over boundary points;
    /// subharmonicity of |Ψ̂|² puts the maximum on the boundary.
    pub interior_max: f64,
    pub boundary_max: f64,
    pub density_inner: f64,
    pub density_outer: f64,
    pub densities_positive: bool,
    /// False if |dΨ̂| vanished somewhere on the grid (flag, not an error).
    pub nondegenerate: bool,
    pub spectral_index: SpectralIndex,
    pub conformality_defect: f64,
    pub passed: bool,
}

fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

/// Audits `map` on an `n_t × n_θ` grid (at least 8×8).
pub fn audit_free_boundary(map: &FreeBoundaryMap, grid: (usize, usize)) -> Result<AuditReport> {
    audit_with_tolerances(map, grid, Tolerances::default())
}

pub fn audit_with_tolerances(
    map: &FreeBoundaryMap,
    grid: (usize, usize),
    tolerances: Tolerances,
) -> Result<AuditReport> {
    let (n_t, n_theta) = grid;
    if n_t < 8 || n_theta < 8 {
        return Err(Error::domain(format!(
            "audit grid must be at least 8×8, got {n_t}×{n_theta}"
        )));
    }
    let t_mod = map.modulus();
    let ts: Vec<f64> = (0..n_t)
        .map(|i| t_mod * i as f64 / (n_t - 1) as f64)
        .collect();
    let thetas: Vec<f64> = (0..n_theta)
        .map(|j| 2.0 * std::f64::consts::PI * j as f64 / n_theta as f64)
        .collect();

    // Harmonicity, symbolically: the first component is linear in t; the
    // others are φ(t)·trig(θ) with φ'' = φ, so Δ(φ trig) = (φ'' - φ) trig.
    let k = map.coefficients.k;
    let c2 = map.coefficients.c2;
    let mut harmonicity_residual: f64 = 0.0;
    for &t in &ts {
        let phi = 0.5 * (1.0 - k) * t.exp() + 0.5 * (1.0 + k) * (-t).exp();
        let phi_second = 0.5 * (1.0 - k) * t.exp() + 0.5 * (1.0 + k) * (-t).exp();
        harmonicity_residual = harmonicity_residual.max((c2 * (phi_second - phi)).abs());
    }

    // Finite-difference probe at interior points.
    let h = 1e-4;
    let mut harmonicity_fd_residual: f64 = 0.0;
    for &t in ts.iter().filter(|&&t| t >= h && t <= t_mod - h) {
        for &theta in &thetas {
            let c = map.evaluate(t, theta)?;
            let tp = map.evaluate(t + h, theta)?;
            let tm = map.evaluate(t - h, theta)?;
            let hp = map.evaluate(t, theta + h)?;
            let hm = map.evaluate(t, theta - h)?;
            for i in 0..3 {
                let lap = (tp[i] + tm[i] + hp[i] + hm[i] - 4.0 * c[i]) / (h * h);
                harmonicity_fd_residual = harmonicity_fd_residual.max(lap.abs());
            }
        }
    }

    // Boundary checks and the interior bound.
    let mut boundary_norm_residual: f64 = 0.0;
    let mut parallelism_residual: f64 = 0.0;
    let mut boundary_max: f64 = 0.0;
    let mut interior_max: f64 = 0.0;
    let mut overall_max: f64 = 0.0;
    let mut min_gradient = f64::INFINITY;
    for &t in &ts {
        let on_boundary = t == 0.0 || t == t_mod;
        for &theta in &thetas {
            let p = map.evaluate(t, theta)?;
            let norm = norm3(p);
            overall_max = overall_max.max(norm);
            if on_boundary {
                boundary_max = boundary_max.max(norm);
                boundary_norm_residual = boundary_norm_residual.max((norm - 1.0).abs());
                let dt = map.d_dt(t, theta);
                let dot = p[0] * dt[0] + p[1] * dt[1] + p[2] * dt[2];
                let r = [dt[0] - dot * p[0], dt[1] - dot * p[1], dt[2] - dot * p[2]];
                parallelism_residual = parallelism_residual.max(norm3(r));
            } else {
                interior_max = interior_max.max(norm);
            }
            let dt = map.d_dt(t, theta);
            let dth = map.d_dtheta(t, theta);
            let grad_sq = dt[0] * dt[0]
                + dt[1] * dt[1]
                + dt[2] * dt[2]
                + dth[0] * dth[0]
                + dth[1] * dth[1]
                + dth[2] * dth[2];
            min_gradient = min_gradient.min(grad_sq.sqrt());
        }
    }

    let spectral_index = spectral_index(map)?;
    let conformality = conformality_defect(map, grid)?;
    let densities_positive = map.density_inner > 0.0 && map.density_outer > 0.0;
    let nondegenerate = min_gradient > 0.0;
    let interior_excess = overall_max - 1.0;

    let passed = harmonicity_residual <= tolerances.closed_form
        && harmonicity_fd_residual <= tolerances.finite_difference
        && boundary_norm_residual <= tolerances.closed_form
        && parallelism_residual <= tolerances.closed_form
        && interior_excess <= tolerances.closed_form
        && interior_max <= boundary_max + 1e-12
        && densities_positive
        && nondegenerate;

    Ok(AuditReport {
        tolerances,
        harmonicity_residual,
        harmonicity_fd_residual,
        boundary_norm_residual,
        parallelism_residual,
        interior_excess,
        interior_max,
        boundary_max,
        density_inner: map.density_inner,
        density_outer: map.density_outer,
        densities_positive,
        nondegenerate,
        spectral_index,
        conformality_defect: conformality,
        passed,
    })
}

/// Verifies that the first eigenvalue of the class is a multiplicity-3
/// cluster and nothing else reaches it: index 1, multiplicity 3 for every
/// family member.
///
/// Fails with an inconsistency error if the map's `(T, q)` do not satisfy
/// the crossing equation (the map would not be extremal).
pub fn spectral_index(map: &FreeBoundaryMap) -> Result<SpectralIndex> {
    let t = map.modulus();
    let q = map.q;
    let s0 = sigma_radial(t, q, 1.0)?;
    let s1 = sigma_mode(1, t, q, 1.0, Branch::Minus)?;
    if (s0 - s1).abs() > 1e-9 * s0 {
        return Err(Error::Inconsistent(format!(
            "map is not at a crossing: σ⁽⁰⁾ = {s0}, σ⁽¹⁾₋ = {s1}"
        )));
    }
    let spectrum = assemble_spectrum(t, q, 1.0, 4)?;
    let clusters = spectrum.multiplicity_clusters(1e-9);
    // Entry 0 is σ₀ = 0; the next cluster must be exactly the triple.
    if clusters.len() < 3 || clusters[1] != (1..4) {
        return Err(Error::Inconsistent(format!(
            "first positive eigenvalue is not a multiplicity-3 cluster: {clusters:?}"
        )));
    }
    let sigma2 = sigma_mode(2, t, q, 1.0, Branch::Minus)?;
    if sigma2 <= s1 {
        return Err(Error::Inconsistent(
            "second mode reaches the first eigenvalue".to_string(),
        ));
    }
    Ok(SpectralIndex {
        index: 1,
        multiplicity: 3,
    })
}

/// Max over the grid of `| |∂_t Ψ̂|² - |∂_θ Ψ̂|² | + |∂_t Ψ̂ · ∂_θ Ψ̂|`.
///
/// Zero exactly for the conformal member (unit ratio); strictly positive
/// for every other family member.
pub fn conformality_defect(map: &FreeBoundaryMap, grid: (usize, usize)) -> Result<f64> {
    let (n_t, n_theta) = grid;
    if n_t < 8 || n_theta < 8 {
        return Err(Error::domain(format!(
            "defect grid must be at least 8×8, got {n_t}×{n_theta}"
        )));
    }
    let t_mod = map.modulus();
    let mut defect: f64 = 0.0;
    for i in 0..n_t {
        let t = t_mod * i as f64 / (n_t - 1) as f64;
        for j in 0..n_theta {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / n_theta as f64;
            let dt = map.d_dt(t, theta);
            let dth = map.d_dtheta(t, theta);
            let dt_sq = dt[0] * dt[0] + dt[1] * dt[1] + dt[2] * dt[2];
            let dth_sq = dth[0] * dth[0] + dth[1] * dth[1] + dth[2] * dth[2];
            let cross = dt[0] * dth[0] + dt[1] * dth[1] + dt[2] * dth[2];
            defect = defect.max((dt_sq - dth_sq).abs() + cross.abs());
        }
    }
    Ok(defect)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{build_map, map_for_ratio, t1, RatioBranch};

    #[test]
    fn catenoid_audit_is_clean() {
        let map = build_map(t1(), RatioBranch::GeqOne).unwrap();
        let report = audit_free_boundary(&map, (16, 16)).unwrap();
        assert!(report.passed, "{report:?}");
        assert!(report.harmonicity_residual <= 1e-10);
        assert!(report.harmonicity_fd_residual <= 1e-6);
        assert!(report.boundary_norm_residual <= 1e-10);
        assert!(report.parallelism_residual <= 1e-10);
        assert!(report.interior_excess <= 1e-12);
        assert_eq!(
            report.spectral_index,
            SpectralIndex {
                index: 1,
                multiplicity: 3
            }
        );
        assert!(report.conformality_defect <= 1e-10);
        // Densities coincide at unit ratio.
        assert!((report.density_inner - report.density_outer).abs() < 1e-12);
    }

    #[test]
    fn stretched_member_audit_is_clean_with_distinct_densities() {
        let map = map_for_ratio(2.0).unwrap();
        let report = audit_free_boundary(&map, (16, 16)).unwrap();
        assert!(report.passed, "{report:?}");
        assert!(report.boundary_norm_residual <= 1e-10);
        assert!((report.density_inner - report.density_outer).abs() > 1e-3);
        assert!(report.conformality_defect > 1e-3);
    }

    #[test]
    fn tampered_map_fails_boundary_norm() {
        let map = map_for_ratio(2.0).unwrap().tampered(1.1);
        let report = audit_free_boundary(&map, (16, 16)).unwrap();
        assert!(report.boundary_norm_residual > 1e-3);
        assert!(!report.passed);
    }

    #[test]
    fn subharmonic_maximum_on_boundary() {
        for &q in &[1.0, 0.5, 3.0] {
            let map = map_for_ratio(q).unwrap();
            let report = audit_free_boundary(&map, (24, 16)).unwrap();
            assert!(report.interior_max <= report.boundary_max + 1e-12);
        }
    }

    #[test]
    fn defect_matches_constant_closed_form() {
        // φ² - φ'² = 1 - k² makes the defect the constant
        // |c₁²k² - c₂²(1-k²)|; the grid evaluation must reproduce it.
        for &q in &[1.0, 2.0, 0.5] {
            let map = map_for_ratio(q).unwrap();
            let c = map.coefficients;
            let oracle = (c.c1 * c.c1 * c.k * c.k - c.c2 * c.c2 * (1.0 - c.k * c.k)).abs();
            let defect = conformality_defect(&map, (16, 16)).unwrap();
            assert!((defect - oracle).abs() <= 1e-12 + 1e-10 * oracle, "q = {q}");
        }
    }

    #[test]
    fn cross_term_vanishes_for_rotational_symmetry() {
        let map = map_for_ratio(3.0).unwrap();
        for &(t_frac, theta) in &[(0.0, 0.3), (0.5, 1.1), (1.0, 4.0)] {
            let t = map.modulus() * t_frac;
            let dt = map.d_dt(t, theta);
            let dth = map.d_dtheta(t, theta);
            let cross = dt[0] * dth[0] + dt[1] * dth[1] + dt[2] * dth[2];
            let scale = norm3(dt) * norm3(dth);
            assert!(cross.abs() <= 1e-15 * scale.max(1.0), "cross = {cross}");
        }
    }

    #[test]
    fn spectral_index_of_family_members() {
        for &q in &[1.0, 2.0, 4.0] {
            let map = map_for_ratio(q).unwrap();
            let si = spectral_index(&map).unwrap();
            assert_eq!(
                si,
                SpectralIndex {
                    index: 1,
                    multiplicity: 3
                }
            );
        }
    }

    #[test]
    fn spectral_index_rejects_off_family_modulus() {
        let mut map = map_for_ratio(1.0).unwrap();
        // Same coefficients, but pretend a wrong ratio: crossing fails.
        map.q = 1.5;
        assert!(matches!(spectral_index(&map), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn multiplicity_never_exceeds_three_on_family_grid() {
        for i in 0..12 {
            let q = 10f64.powf(-1.0 + 2.0 * i as f64 / 11.0);
            let map = map_for_ratio(q).unwrap();
            let spectrum = assemble_spectrum(map.modulus(), q, 1.0, 6).unwrap();
            for cluster in spectrum.multiplicity_clusters(1e-9) {
                assert!(cluster.len() <= 3, "q = {q}: cluster {cluster:?}");
            }
        }
    }

    #[test]
    fn index_invariant_under_density_scaling() {
        // Scaling (ρ₁, ρ₂) → (sρ₁, sρ₂) divides all eigenvalues by s and
        // preserves ordering, so index and multiplicity are unchanged.
        let map = map_for_ratio(2.0).unwrap();
        let t = map.modulus();
        for &s in &[0.25, 4.0] {
            let spec = assemble_spectrum(t, 2.0 * s, s, 4).unwrap();
            let clusters = spec.multiplicity_clusters(1e-9);
            assert_eq!(clusters[1], 1..4);
        }
    }

    #[test]
    fn rejects_small_grids() {
        let map = map_for_ratio(1.0).unwrap();
        assert!(audit_free_boundary(&map, (4, 16)).is_err());
        assert!(conformality_defect(&map, (16, 7)).is_err());
    }

    #[test]
    fn nondegenerate_on_family() {
        let map = map_for_ratio(5.0).unwrap();
        let report = audit_free_boundary(&map, (16, 16)).unwrap();
        assert!(report.nondegenerate);
    }
}
