//! Fourier-Galerkin discretization of the Dirichlet-to-Neumann operator on
//! the flat annulus, for smooth θ-dependent boundary densities.
//!
//! Boundary data on the two circles is expanded in the truncated basis
//! `{1, cos mθ, sin mθ : m ≤ N}` per circle. The harmonic extension
//! decouples over θ-frequencies, so the stiffness matrix is block-diagonal
//! over modes with the closed-form 2×2 per-mode blocks of [`dtn_block`].
//! A θ-dependent density couples modes within a circle through the
//! convolution structure of the weighted boundary inner product; the mass
//! matrix stays block-diagonal over circles. Eigenvalues of
//! `D v = σ M_ρ v` are the Galerkin approximations of the weighted Steklov
//! spectrum; for constant densities they reproduce the closed forms of
//! [`crate::spectrum`] exactly up to solver roundoff.
//!
//! Basis ordering is fixed so matrices are reproducible byte-for-byte:
//! index 0 is the inner-circle constant, index 1 the outer-circle constant,
//! then for each mode m = 1..N the four functions
//! (inner cos mθ, inner sin mθ, outer cos mθ, outer sin mθ).

use std::f64::consts::PI;

use nalgebra::{DMatrix, Matrix2};
use serde::Serialize;

use crate::error::{require_positive, Error, Result};
use crate::spectrum::coth;

/// A truncated Fourier expansion of a strictly positive density on one
/// boundary circle: `ρ(θ) = mean + Σ_m (a_m cos mθ + b_m sin mθ)`.
#[derive(Debug, Clone, Serialize)]
pub struct FourierDensity {
    mean: f64,
    cos_coeffs: Vec<f64>,
    sin_coeffs: Vec<f64>,
}

impl FourierDensity {
    /// Builds a density from its Fourier coefficients, rejecting any that
    /// is not strictly positive on a `4M`-point sample grid (positivity of
    /// the density is what makes the mass matrix definite).
    pub fn new(mean: f64, cos_coeffs: Vec<f64>, sin_coeffs: Vec<f64>) -> Result<Self> {
        let density = FourierDensity {
            mean,
            cos_coeffs,
            sin_coeffs,
        };
        let samples = (4 * density.max_mode()).max(8);
        for i in 0..samples {
            let theta = 2.0 * PI * i as f64 / samples as f64;
            let v = density.eval(theta);
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Definiteness(format!(
                    "density nonpositive at θ = {theta}: {v}"
                )));
            }
        }
        Ok(density)
    }

    /// The constant density `ρ(θ) = value`.
    pub fn constant(value: f64) -> Result<Self> {
        require_positive("density", value)?;
        FourierDensity::new(value, Vec::new(), Vec::new())
    }

    /// `ρ(θ) = base (1 + ε cos mθ)` for `m ≥ 1`.
    pub fn cosine_perturbation(base: f64, eps: f64, m: usize) -> Result<Self> {
        require_positive("density", base)?;
        if m < 1 {
            return Err(Error::domain(
                "perturbation mode m must be >= 1".to_string(),
            ));
        }
        let mut cos_coeffs = vec![0.0; m];
        cos_coeffs[m - 1] = base * eps;
        FourierDensity::new(base, cos_coeffs, Vec::new())
    }

    /// Highest Fourier mode carried by the expansion.
    pub fn max_mode(&self) -> usize {
        self.cos_coeffs.len().max(self.sin_coeffs.len())
    }

    pub fn eval(&self, theta: f64) -> f64 {
        let mut v = self.mean;
        for (i, a) in self.cos_coeffs.iter().enumerate() {
            v += a * ((i + 1) as f64 * theta).cos();
        }
        for (i, b) in self.sin_coeffs.iter().enumerate() {
            v += b * ((i + 1) as f64 * theta).sin();
        }
        v
    }

    /// Returns a copy with every coefficient multiplied by `s`.
    pub fn scaled(&self, s: f64) -> Result<Self> {
        FourierDensity::new(
            self.mean * s,
            self.cos_coeffs.iter().map(|a| a * s).collect(),
            self.sin_coeffs.iter().map(|b| b * s).collect(),
        )
    }

    /// `∫ ρ cos(jθ) dθ` over the circle (2π·mean for j = 0, π·a_j else).
    fn cos_integral(&self, j: usize) -> f64 {
        if j == 0 {
            2.0 * PI * self.mean
        } else {
            PI * self.cos_coeffs.get(j - 1).copied().unwrap_or(0.0)
        }
    }

    /// `∫ ρ sin(jθ) dθ` (0 for j = 0, π·b_j else); odd in j.
    fn sin_integral_signed(&self, j: i64) -> f64 {
        match j.cmp(&0) {
            std::cmp::Ordering::Equal => 0.0,
            std::cmp::Ordering::Greater => {
                PI * self.sin_coeffs.get(j as usize - 1).copied().unwrap_or(0.0)
            }
            std::cmp::Ordering::Less => -self.sin_integral_signed(-j),
        }
    }

    /// `∫ ρ dθ` over the circle.
    pub fn total(&self) -> f64 {
        2.0 * PI * self.mean
    }
}

/// Closed-form 2×2 Dirichlet-to-Neumann block of the flat annulus for one
/// θ-frequency: rows index boundary values at `t = 0` and `t = T`, entries
/// give the outward normal derivative of the harmonic extension.
pub fn dtn_block(n: usize, t: f64) -> Result<Matrix2<f64>> {
    require_positive("T", t)?;
    if n == 0 {
        let inv_t = 1.0 / t;
        Ok(Matrix2::new(inv_t, -inv_t, -inv_t, inv_t))
    } else {
        let x = n as f64 * t;
        let c = n as f64 * coth(x);
        let s = n as f64 / x.sinh();
        Ok(Matrix2::new(c, -s, -s, c))
    }
}

/// One basis function of the truncated boundary space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisFunction {
    /// 0 = inner circle (t = 0), 1 = outer circle (t = T).
    pub circle: usize,
    /// θ-frequency.
    pub mode: usize,
    /// false = cosine (or constant), true = sine.
    pub is_sine: bool,
}

/// Assembled Galerkin matrices of the weighted Steklov problem.
#[derive(Debug, Clone)]
pub struct GalerkinSystem {
    t: f64,
    truncation: usize,
    stiffness: DMatrix<f64>,
    mass: DMatrix<f64>,
    rho_total: f64,
}

impl GalerkinSystem {
    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn dim(&self) -> usize {
        2 + 4 * self.truncation
    }

    pub fn modulus(&self) -> f64 {
        self.t
    }

    pub fn stiffness(&self) -> &DMatrix<f64> {
        &self.stiffness
    }

    pub fn mass(&self) -> &DMatrix<f64> {
        &self.mass
    }

    /// `∫_{∂A} ρ`, the total boundary mass (both circles).
    pub fn rho_total(&self) -> f64 {
        self.rho_total
    }

    /// The basis function at a given index, per the fixed ordering.
    pub fn basis_function(&self, index: usize) -> BasisFunction {
        assert!(index < self.dim());
        if index < 2 {
            BasisFunction {
                circle: index,
                mode: 0,
                is_sine: false,
            }
        } else {
            let r = index - 2;
            let mode = r / 4 + 1;
            BasisFunction {
                circle: (r % 4) / 2,
                mode,
                is_sine: r % 2 == 1,
            }
        }
    }

    fn index_of(circle: usize, mode: usize, is_sine: bool) -> usize {
        if mode == 0 {
            circle
        } else {
            2 + 4 * (mode - 1) + 2 * circle + usize::from(is_sine)
        }
    }
}

/// Renders a matrix as CSV (one row per line) for external inspection.
pub fn matrix_to_csv(m: &DMatrix<f64>) -> String {
    let mut out = String::new();
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|j| m[(i, j)].to_string()).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Assembles the stiffness and mass matrices for densities
/// `(ρ_inner, ρ_outer)` at truncation `N ≥ max mode of the densities`.
pub fn build_system(
    rho_inner: &FourierDensity,
    rho_outer: &FourierDensity,
    t: f64,
    truncation: usize,
) -> Result<GalerkinSystem> {
    require_positive("T", t)?;
    let m_max = rho_inner.max_mode().max(rho_outer.max_mode());
    if truncation < m_max {
        return Err(Error::domain(format!(
            "truncation N = {truncation} below the densities' highest mode {m_max}"
        )));
    }
    let dim = 2 + 4 * truncation;
    let mut stiffness = DMatrix::<f64>::zeros(dim, dim);
    let mut mass = DMatrix::<f64>::zeros(dim, dim);

    // Stiffness: block-diagonal over θ-frequencies. The angular integrals
    // contribute 2π for the constants and π for each cos/sin pair.
    let b0 = dtn_block(0, t)?;
    for i in 0..2 {
        for j in 0..2 {
            stiffness[(i, j)] = 2.0 * PI * b0[(i, j)];
        }
    }
    for mode in 1..=truncation {
        let b = dtn_block(mode, t)?;
        for is_sine in [false, true] {
            let idx = [
                GalerkinSystem::index_of(0, mode, is_sine),
                GalerkinSystem::index_of(1, mode, is_sine),
            ];
            for i in 0..2 {
                for j in 0..2 {
                    stiffness[(idx[i], idx[j])] = PI * b[(i, j)];
                }
            }
        }
    }

    // Mass: block-diagonal over circles, dense over modes within a circle.
    for (circle, rho) in [(0usize, rho_inner), (1usize, rho_outer)] {
        let c = |j: usize| rho.cos_integral(j);
        let s = |j: i64| rho.sin_integral_signed(j);
        let const_idx = GalerkinSystem::index_of(circle, 0, false);
        mass[(const_idx, const_idx)] = c(0);
        for m in 1..=truncation {
            let cos_m = GalerkinSystem::index_of(circle, m, false);
            let sin_m = GalerkinSystem::index_of(circle, m, true);
            mass[(const_idx, cos_m)] = c(m);
            mass[(cos_m, const_idx)] = c(m);
            mass[(const_idx, sin_m)] = s(m as i64);
            mass[(sin_m, const_idx)] = s(m as i64);
            for l in m..=truncation {
                let cos_l = GalerkinSystem::index_of(circle, l, false);
                let sin_l = GalerkinSystem::index_of(circle, l, true);
                // Product-to-sum identities against the density expansion.
                let cc = 0.5 * (c(l - m) + c(l + m));
                let ss = 0.5 * (c(l - m) - c(l + m));
                let cs = 0.5 * (s((l + m) as i64) + s(l as i64 - m as i64));
                let sc = 0.5 * (s((l + m) as i64) + s(m as i64 - l as i64));
                mass[(cos_m, cos_l)] = cc;
                mass[(cos_l, cos_m)] = cc;
                mass[(sin_m, sin_l)] = ss;
                mass[(sin_l, sin_m)] = ss;
                mass[(cos_m, sin_l)] = cs;
                mass[(sin_l, cos_m)] = cs;
                if l != m {
                    mass[(sin_m, cos_l)] = sc;
                    mass[(cos_l, sin_m)] = sc;
                }
            }
        }
    }

    Ok(GalerkinSystem {
        t,
        truncation,
        stiffness,
        mass,
        rho_total: rho_inner.total() + rho_outer.total(),
    })
}

/// Eigenvalues and M-orthonormal eigenvectors of `D v = σ M_ρ v`,
/// ascending.
#[derive(Debug, Clone)]
pub struct GeneralizedSpectrum {
    pub eigenvalues: Vec<f64>,
    /// Columns are eigenvectors in the Fourier basis, M-orthonormal.
    pub eigenvectors: DMatrix<f64>,
    pub truncation: usize,
}

/// Solves the generalized symmetric-definite eigenproblem by Cholesky
/// reduction (`M = LLᵀ`, then a dense symmetric solve on `L⁻¹DL⁻ᵀ`),
/// returning the `k` smallest eigenpairs.
pub fn solve_generalized(system: &GalerkinSystem, k: usize) -> Result<GeneralizedSpectrum> {
    let dim = system.dim();
    if k < 1 || k > dim {
        return Err(Error::domain(format!(
            "requested {k} eigenvalues from a dimension-{dim} system"
        )));
    }
    let chol = nalgebra::Cholesky::new(system.mass.clone())
        .ok_or_else(|| Error::Definiteness("mass matrix is not positive definite".to_string()))?;
    let l = chol.l();
    let half = l
        .solve_lower_triangular(&system.stiffness)
        .ok_or_else(|| Error::Definiteness("singular Cholesky factor".to_string()))?;
    let reduced = l
        .solve_lower_triangular(&half.transpose())
        .ok_or_else(|| Error::Definiteness("singular Cholesky factor".to_string()))?;
    // Symmetrize to kill the roundoff skew of the two triangular solves.
    let reduced = 0.5 * (&reduced + reduced.transpose());

    let eig = nalgebra::SymmetricEigen::new(reduced);
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));

    let mut eigenvalues = Vec::with_capacity(k);
    let mut eigenvectors = DMatrix::<f64>::zeros(dim, k);
    for (col, &idx) in order.iter().take(k).enumerate() {
        eigenvalues.push(eig.eigenvalues[idx]);
        let y = eig.eigenvectors.column(idx).into_owned();
        let v = l
            .tr_solve_lower_triangular(&y)
            .ok_or_else(|| Error::Definiteness("singular Cholesky factor".to_string()))?;
        eigenvectors.set_column(col, &v);
    }
    Ok(GeneralizedSpectrum {
        eigenvalues,
        eigenvectors,
        truncation: system.truncation,
    })
}

/// One row of a truncation-convergence table: the first four positive
/// eigenvalues at a truncation, and their change from the previous row.
#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceRow {
    pub truncation: usize,
    pub sigma: [f64; 4],
    pub diff_from_previous: Option<[f64; 4]>,
}

/// Runs [`solve_generalized`] at each truncation and tabulates σ₁..σ₄.
///
/// For nested truncations the Galerkin eigenvalues are variational upper
/// bounds, so each column is nonincreasing (up to solver roundoff).
pub fn convergence_study(
    rho_inner: &FourierDensity,
    rho_outer: &FourierDensity,
    t: f64,
    truncations: &[usize],
) -> Result<Vec<ConvergenceRow>> {
    if truncations.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain(
            "truncations must be strictly increasing".to_string(),
        ));
    }
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(truncations.len());
    for &n in truncations {
        let system = build_system(rho_inner, rho_outer, t, n)?;
        let spec = solve_generalized(&system, 5)?;
        let sigma = [
            spec.eigenvalues[1],
            spec.eigenvalues[2],
            spec.eigenvalues[3],
            spec.eigenvalues[4],
        ];
        let diff_from_previous = rows.last().map(|prev: &ConvergenceRow| {
            [
                sigma[0] - prev.sigma[0],
                sigma[1] - prev.sigma[1],
                sigma[2] - prev.sigma[2],
                sigma[3] - prev.sigma[3],
            ]
        });
        rows.push(ConvergenceRow {
            truncation: n,
            sigma,
            diff_from_previous,
        });
    }
    Ok(rows)
}
