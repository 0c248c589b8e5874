//! Scans the normalized first eigenvalue σ̄₁ over the rotationally
//! symmetric pairs of a fixed conformal class.
//!
//! With densities `(ρ₁, ρ₂) = (q, 1)` on the circles of `[0, T] × S¹`, the
//! first positive eigenvalue is `min(σ⁽⁰⁾, σ⁽¹⁾₋)` and the normalization
//! weight is the total boundary mass `2π(1+q)`, so
//!
//! ```text
//!   σ̄₁(T, q) = min(σ⁽⁰⁾, σ⁽¹⁾₋)(T, q, 1) · 2π(1+q),
//! ```
//!
//! which is invariant under joint density scaling and symmetric under
//! `q ↔ 1/q`. On a fixed class the radial branch increases and the
//! mode-one branch decreases with `q > 1`, so the scan's maximum sits at a
//! branch crossing whenever one exists (`T ≥ T₁`). Detected crossings are
//! refined to root precision and included in the profile.
//!
//! Everything reported here is a statement about the rotationally
//! symmetric family only; no claim about arbitrary densities is made.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{require_positive, Error, Result};
use crate::family::{t1, tilde_t};
use crate::galerkin::{build_system, solve_generalized, FourierDensity};
use crate::roots::{find_root, RootOptions};
use crate::spectrum::{sigma_mode, sigma_radial, Branch};

/// Which eigenvalue branch realizes the first eigenvalue at a grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ActiveBranch {
    /// σ⁽⁰⁾ is the smaller.
    Radial,
    /// σ⁽¹⁾₋ is the smaller.
    ModeOne,
    /// The two branches coincide (refined crossing point).
    Crossing,
}

impl ActiveBranch {
    pub fn as_str(&self) -> &'static str {
        match self {
            ActiveBranch::Radial => "radial",
            ActiveBranch::ModeOne => "mode1",
            ActiveBranch::Crossing => "crossing",
        }
    }
}

/// `σ̄₁(T, q)` for the rotationally symmetric pair.
pub fn sigma1_bar(t: f64, q: f64) -> Result<f64> {
    require_positive("T", t)?;
    require_positive("q", q)?;
    let s0 = sigma_radial(t, q, 1.0)?;
    let s1 = sigma_mode(1, t, q, 1.0, Branch::Minus)?;
    Ok(s0.min(s1) * 2.0 * PI * (1.0 + q))
}

/// One evaluated point of a scan.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ScanRow {
    pub q: f64,
    pub branch: ActiveBranch,
    pub sigma1: f64,
    pub sigma1_bar: f64,
}

/// Profile of `σ̄₁(T, ·)` over a grid, with refined crossings.
#[derive(Debug, Clone, Serialize)]
pub struct ScanProfile {
    pub t: f64,
    pub rows: Vec<ScanRow>,
    /// Index of the row with the largest σ̄₁ (crossing rows included).
    pub argmax: usize,
    /// The refined crossing ratios, ascending (empty below T₁).
    pub crossings: Vec<f64>,
}

impl ScanProfile {
    pub fn argmax_row(&self) -> &ScanRow {
        &self.rows[self.argmax]
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("q,branch,sigma1,sigma1_bar\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                r.q,
                r.branch.as_str(),
                r.sigma1,
                r.sigma1_bar
            ));
        }
        out
    }
}

/// The default scan grid: 400 log-spaced ratios in `[1e-2, 1e2]`.
pub fn default_q_grid() -> Vec<f64> {
    let n = 400;
    (0..n)
        .map(|i| 10f64.powf(-2.0 + 4.0 * i as f64 / (n - 1) as f64))
        .collect()
}

fn row_at(t: f64, q: f64) -> Result<ScanRow> {
    let s0 = sigma_radial(t, q, 1.0)?;
    let s1 = sigma_mode(1, t, q, 1.0, Branch::Minus)?;
    let sigma = s0.min(s1);
    let branch = if (s0 - s1).abs() <= 1e-12 * sigma {
        ActiveBranch::Crossing
    } else if s0 < s1 {
        ActiveBranch::Radial
    } else {
        ActiveBranch::ModeOne
    };
    Ok(ScanRow {
        q,
        branch,
        sigma1: sigma,
        sigma1_bar: sigma * 2.0 * PI * (1.0 + q),
    })
}

/// Tabulates `σ̄₁(T, ·)` over `q_grid` (sorted, positive), refining every
/// branch crossing detected between adjacent grid points and inserting it
/// into the profile.
pub fn scan_q(t: f64, q_grid: &[f64]) -> Result<ScanProfile> {
    require_positive("T", t)?;
    if q_grid.is_empty() {
        return Err(Error::domain("empty scan grid".to_string()));
    }
    if q_grid.windows(2).any(|w| w[0] >= w[1]) || q_grid[0] <= 0.0 {
        return Err(Error::domain(
            "scan grid must be positive and strictly increasing".to_string(),
        ));
    }

    let gap = |q: f64| {
        let s0 = sigma_radial(t, q, 1.0).expect("positive inputs");
        let s1 = sigma_mode(1, t, q, 1.0, Branch::Minus).expect("positive inputs");
        s0 - s1
    };

    let mut rows: Vec<ScanRow> = Vec::with_capacity(q_grid.len() + 2);
    let mut crossings = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for &q in q_grid {
        let g = gap(q);
        if let Some((q_prev, g_prev)) = prev {
            if g_prev.signum() != g.signum() && g_prev != 0.0 && g != 0.0 {
                let q_star = find_root(gap, q_prev, q, RootOptions::default())?;
                let s_star = sigma_radial(t, q_star, 1.0)?;
                rows.push(ScanRow {
                    q: q_star,
                    branch: ActiveBranch::Crossing,
                    sigma1: s_star,
                    sigma1_bar: s_star * 2.0 * PI * (1.0 + q_star),
                });
                crossings.push(q_star);
            }
        }
        rows.push(row_at(t, q)?);
        prev = Some((q, g));
    }

    let argmax = rows
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.sigma1_bar.total_cmp(&b.1.sigma1_bar))
        .map(|(i, _)| i)
        .expect("nonempty rows");
    Ok(ScanProfile {
        t,
        rows,
        argmax,
        crossings,
    })
}

/// Verdict of the symmetric-family analysis below the critical modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// `T ≤ T̃`: the symmetric candidate tops out at `4π tanh(T/2) ≤ 2π`,
    /// below the known strict lower bound 2π for the conformal supremum,
    /// so no rotationally symmetric pair is maximal.
    NotMaximal,
    /// `T̃ < T < T₁`: no ball-valued symmetric candidate exists and the
    /// disk-valued value exceeds 2π; nothing is concluded.
    Inconclusive,
}

/// Report for a class below `T₁`: no crossing ratio exists there, so the
/// only rotationally symmetric candidate is the disk-valued one with
/// normalized eigenvalue `4π tanh(T/2)`.
#[derive(Debug, Clone, Serialize)]
pub struct BelowT1Report {
    pub t: f64,
    pub t1: f64,
    pub tilde_t: f64,
    pub crossing_exists: bool,
    pub disk_branch_value: f64,
    pub two_pi: f64,
    /// `2π - 4π tanh(T/2)`; positive iff the disk value sits below 2π.
    pub margin_below_two_pi: f64,
    pub verdict: Verdict,
}

/// Analyzes a conformal class with `0 < T < T₁`.
pub fn below_t1_report(t: f64) -> Result<BelowT1Report> {
    require_positive("T", t)?;
    let t_min = t1();
    if t >= t_min {
        return Err(Error::domain(format!(
            "below-T1 analysis needs T < T1 = {t_min}, got {t}"
        )));
    }
    let tilde = tilde_t();
    let disk = 4.0 * PI * (t / 2.0).tanh();
    let verdict = if t <= tilde {
        Verdict::NotMaximal
    } else {
        Verdict::Inconclusive
    };
    Ok(BelowT1Report {
        t,
        t1: t_min,
        tilde_t: tilde,
        crossing_exists: false,
        disk_branch_value: disk,
        two_pi: 2.0 * PI,
        margin_below_two_pi: 2.0 * PI - disk,
        verdict,
    })
}

/// Change of σ̄₁ when both boundary densities are perturbed by the same
/// relative factor `1 + ε cos(mθ)`, computed with the Fourier-Galerkin
/// solver: returns `σ̄₁(ε) - σ̄₁(0)`.
///
/// The total boundary mass is unchanged by the perturbation (the cosine
/// integrates to zero), so the normalization weight is common to both
/// terms. At ε = 0 the difference is exactly zero by construction.
pub fn galerkin_perturbation_probe(t: f64, q: f64, eps: f64, m: usize) -> Result<f64> {
    require_positive("T", t)?;
    require_positive("q", q)?;
    if eps.abs() > 0.1 {
        return Err(Error::domain(format!(
            "perturbation amplitude |ε| = {} exceeds 0.1",
            eps.abs()
        )));
    }
    if m < 1 {
        return Err(Error::domain(
            "perturbation mode m must be >= 1".to_string(),
        ));
    }
    let truncation = m + 12;
    let run = |eps: f64| -> Result<f64> {
        let inner = FourierDensity::cosine_perturbation(q, eps, m)?;
        let outer = FourierDensity::cosine_perturbation(1.0, eps, m)?;
        let system = build_system(&inner, &outer, t, truncation)?;
        let spec = solve_generalized(&system, 2)?;
        Ok(spec.eigenvalues[1] * system.rho_total())
    };
    Ok(run(eps)? - run(0.0)?)
}
