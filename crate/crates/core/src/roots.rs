//! Bracketed scalar root finding: bisection refined by secant steps.
//!
//! All transcendental equations in this crate are smooth and strictly
//! monotone inside a proven bracket, so a derivative-free hybrid is enough.

use crate::error::{Error, Result};

/// Stopping parameters for [`find_root`].
#[derive(Debug, Clone, Copy)]
pub struct RootOptions {
    /// Stop when the bracket width is below `x_tol * max(1, |x|)`.
    pub x_tol: f64,
    /// Stop when `|f(x)|` is below this value.
    pub f_tol: f64,
    /// Iteration cap.
    pub max_iter: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions {
            x_tol: 1e-15,
            f_tol: 0.0,
            max_iter: 200,
        }
    }
}

/// Finds the root of `f` in `[lo, hi]`, where `f(lo)` and `f(hi)` have
/// opposite signs. Each iteration tries a secant step and falls back to
/// bisection whenever the secant point leaves the bracket or fails to
/// shrink it.
pub fn find_root<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    opts: RootOptions,
) -> Result<f64> {
    let (mut a, mut b) = (lo, hi);
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::RootFinding(format!(
            "no sign change on [{a}, {b}]: f = ({fa}, {fb})"
        )));
    }

    let mut x = 0.5 * (a + b);
    for _ in 0..opts.max_iter {
        // Secant proposal from the current bracket endpoints.
        let secant = b - fb * (b - a) / (fb - fa);
        let width = b - a;
        x = if secant.is_finite() && secant > a + 0.01 * width && secant < b - 0.01 * width {
            secant
        } else {
            0.5 * (a + b)
        };
        let fx = f(x);
        if fx == 0.0 || fx.abs() <= opts.f_tol {
            return Ok(x);
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
        if (b - a).abs() <= opts.x_tol * x.abs().max(1.0) {
            return Ok(0.5 * (a + b));
        }
    }
    Ok(x)
}

/// Convenience wrapper with the default options.
pub fn find_root_default<F: FnMut(f64) -> f64>(f: F, lo: f64, hi: f64) -> Result<f64> {
    find_root(f, lo, hi, RootOptions::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_root() {
        let r = find_root_default(|x| x * x * x - 2.0, 1.0, 2.0).unwrap();
        assert!((r - 2f64.powf(1.0 / 3.0)).abs() < 1e-14);
    }

    #[test]
    fn coth_fixed_point() {
        // t = coth t, the catenoid constant.
        let r = find_root_default(|t| t - 1.0 / t.tanh(), 1.0, 2.0).unwrap();
        assert!((r - 1.0 / r.tanh()).abs() < 1e-13);
        assert!((r - 1.19968).abs() < 1e-4);
    }

    #[test]
    fn rejects_unbracketed() {
        assert!(find_root_default(|x| x * x + 1.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn root_at_endpoint() {
        let r = find_root_default(|x| x, 0.0, 1.0).unwrap();
        assert_eq!(r, 0.0);
    }
}
