//! Gauss-Legendre quadrature on an interval.

/// Nodes and weights of the `n`-point Gauss-Legendre rule on [-1, 1].
///
/// Computed by Newton iteration on the Legendre recurrence; accurate to
/// machine precision for the sizes used here (n up to a few thousand).
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1);
    let mut rule = Vec::with_capacity(n);
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-like initial guess for the i-th positive root.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre P_n(x) and its derivative by the three-term recurrence.
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.push((-x, w));
    }
    // Mirror to the negative half (middle node of odd rules is x = 0).
    for i in (0..n - m).rev() {
        let (x, w) = rule[i];
        rule.push((-x, w));
    }
    rule
}

/// Integrates `f` over `[a, b]` with the `n`-point Gauss-Legendre rule.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    gauss_legendre(n)
        .iter()
        .map(|&(x, w)| w * f(mid + half * x))
        .sum::<f64>()
        * half
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two() {
        for n in [1, 2, 3, 7, 16, 65] {
            let s: f64 = gauss_legendre(n).iter().map(|&(_, w)| w).sum();
            assert!((s - 2.0).abs() < 1e-13, "n = {n}: {s}");
        }
    }

    #[test]
    fn exact_on_low_degree_polynomials() {
        // n-point rule is exact through degree 2n-1.
        let v = integrate(|x| x.powi(7) - 3.0 * x.powi(4) + x, 0.0, 2.0, 4);
        let exact = 2f64.powi(8) / 8.0 - 3.0 * 2f64.powi(5) / 5.0 + 2.0;
        assert!((v - exact).abs() < 1e-12 * exact.abs());
    }

    #[test]
    fn cosh_integral() {
        let v = integrate(f64::cosh, 0.0, 5.0, 48);
        assert!((v - 5f64.sinh()).abs() < 1e-12 * 5f64.sinh());
    }
}
