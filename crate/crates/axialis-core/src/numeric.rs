//! Floating-point workhorses used by the numeric oracles: deterministic
//! pairwise summation, Richardson-extrapolated central differences, adaptive
//! Simpson quadrature (real and complex), and a fixed-step RK4 integrator
//! with cubic Hermite dense output.

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::real;

/// Sum with a fixed pairwise tree so results do not depend on chunking or
/// thread count. O(log n) error growth instead of O(n).
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        2 => xs[0] + xs[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
        }
    }
}

/// First derivative by central differences with one Richardson step:
/// combines stencils at h and h/2 to cancel the leading O(h^2) error.
pub fn central_diff<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    let d = |s: f64| (f(x + s) - f(x - s)) / (2.0 * s);
    let coarse = d(h);
    let fine = d(h / 2.0);
    (4.0 * fine - coarse) / 3.0
}

/// Complex-valued version of [`central_diff`]: the same two-stencil
/// Richardson combination applied componentwise.
pub fn central_diff_complex<F: Fn(f64) -> Complex64>(f: F, x: f64, h: f64) -> Complex64 {
    let d = |s: f64| (f(x + s) - f(x - s)) / (2.0 * s);
    let coarse = d(h);
    let fine = d(h / 2.0);
    (fine * 4.0 - coarse) / 3.0
}

/// Default step for the finite-difference oracles.
pub const FD_STEP: f64 = 1e-4;

fn simpson_rule(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)] // the classic adaptive-Simpson frame
fn adaptive_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson_rule(fa, flm, fm, a, m);
    let right = simpson_rule(fm, frm, fb, m, b);
    let delta = left + right - whole;
    if depth == 0 || real::abs(delta) <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    adaptive_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
        + adaptive_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance tol.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = simpson_rule(fa, fm, fb, a, b);
    adaptive_step(&f, a, b, fa, fm, fb, whole, tol, 48)
}

/// Adaptive Simpson for complex-valued integrands; real and imaginary parts
/// share one subdivision driven by the complex magnitude of the error.
pub fn adaptive_simpson_complex<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
) -> Complex64 {
    fn rule(fa: Complex64, fm: Complex64, fb: Complex64, a: f64, b: f64) -> Complex64 {
        (fa + 4.0 * fm + fb) * ((b - a) / 6.0)
    }
    #[allow(clippy::too_many_arguments)] // the classic adaptive-Simpson frame
    fn step<F: Fn(f64) -> Complex64>(
        f: &F,
        a: f64,
        b: f64,
        fa: Complex64,
        fm: Complex64,
        fb: Complex64,
        whole: Complex64,
        tol: f64,
        depth: u32,
    ) -> Complex64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = rule(fa, flm, fm, a, m);
        let right = rule(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if depth == 0 || delta.norm() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    if a == b {
        return Complex64::new(0.0, 0.0);
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = rule(fa, fm, fb, a, b);
    step(&f, a, b, fa, fm, fb, whole, tol, 48)
}

/// Dense ODE solution on a uniform grid; values between nodes come from
/// cubic Hermite interpolation using the stored derivatives.
pub struct OdeSolution {
    t0: f64,
    dt: f64,
    /// y at each node, flattened [node][component].
    ys: Vec<Vec<f64>>,
    /// f(t, y) at each node.
    dys: Vec<Vec<f64>>,
}

impl OdeSolution {
    pub fn t_start(&self) -> f64 {
        self.t0
    }

    pub fn t_end(&self) -> f64 {
        self.t0 + self.dt * (self.ys.len() - 1) as f64
    }

    /// Interpolated state at t (clamped to the solved interval).
    pub fn eval(&self, t: f64) -> Vec<f64> {
        let n = self.ys.len() - 1;
        let s = ((t - self.t0) / self.dt).clamp(0.0, n as f64);
        let mut i = s as usize;
        if i >= n {
            i = n - 1;
        }
        let u = s - i as f64;
        let dim = self.ys[0].len();
        let mut out = Vec::with_capacity(dim);
        // Hermite basis on [0,1] scaled by dt for the slopes.
        let h00 = (1.0 + 2.0 * u) * (1.0 - u) * (1.0 - u);
        let h10 = u * (1.0 - u) * (1.0 - u);
        let h01 = u * u * (3.0 - 2.0 * u);
        let h11 = u * u * (u - 1.0);
        for c in 0..dim {
            out.push(
                h00 * self.ys[i][c]
                    + h10 * self.dt * self.dys[i][c]
                    + h01 * self.ys[i + 1][c]
                    + h11 * self.dt * self.dys[i + 1][c],
            );
        }
        out
    }
}

/// Classical fixed-step RK4 from t0 to t1 with the given number of steps,
/// keeping every node for dense output.
pub fn rk4_solve<F: Fn(f64, &[f64]) -> Vec<f64>>(
    f: F,
    t0: f64,
    y0: Vec<f64>,
    t1: f64,
    steps: usize,
) -> OdeSolution {
    assert!(steps > 0);
    let dt = (t1 - t0) / steps as f64;
    let mut ys = Vec::with_capacity(steps + 1);
    let mut dys = Vec::with_capacity(steps + 1);
    let mut y = y0;
    let mut t = t0;
    dys.push(f(t, &y));
    ys.push(y.clone());
    let axpy = |a: f64, x: &[f64], y: &[f64]| -> Vec<f64> {
        x.iter().zip(y).map(|(xi, yi)| yi + a * xi).collect()
    };
    for _ in 0..steps {
        let k1 = f(t, &y);
        let k2 = f(t + 0.5 * dt, &axpy(0.5 * dt, &k1, &y));
        let k3 = f(t + 0.5 * dt, &axpy(0.5 * dt, &k2, &y));
        let k4 = f(t + dt, &axpy(dt, &k3, &y));
        for c in 0..y.len() {
            y[c] += dt / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
        }
        t += dt;
        dys.push(f(t, &y));
        ys.push(y.clone());
    }
    OdeSolution { t0, dt, ys, dys }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn pairwise_sum_matches_exact_on_small_sets() {
        assert_eq!(pairwise_sum(&[]), 0.0);
        assert_eq!(pairwise_sum(&[3.5]), 3.5);
        assert_eq!(pairwise_sum(&[1.0, 2.0, 3.0, 4.0]), 10.0);
    }

    #[test]
    fn pairwise_sum_beats_naive_on_ill_conditioned_series() {
        // 1 + 1e-16 repeated: naive left-to-right drops every increment
        let mut xs = alloc::vec![1e-16; 1 << 16];
        xs.insert(0, 1.0);
        let exact = 1.0 + 1e-16 * ((1 << 16) as f64);
        let pw = pairwise_sum(&xs);
        assert!((pw - exact).abs() < 1e-18 * exact.abs() * 10.0);
    }

    #[test]
    fn central_diff_on_exp_and_polynomials() {
        let d = central_diff(real::exp, 1.0, FD_STEP);
        assert_relative_eq!(d, real::exp(1.0), max_relative = 1e-10);
        // exact for quartics after Richardson
        let d = central_diff(|x| x * x * x, 2.0, 1e-3);
        assert_relative_eq!(d, 12.0, max_relative = 1e-12);
    }

    #[test]
    fn simpson_known_integrals() {
        let v = adaptive_simpson(real::sin, 0.0, real::PI, 1e-12);
        assert_relative_eq!(v, 2.0, max_relative = 1e-10);
        let v = adaptive_simpson(|x| x * x, 0.0, 3.0, 1e-12);
        assert_relative_eq!(v, 9.0, max_relative = 1e-12);
        assert_eq!(adaptive_simpson(|x| x, 2.0, 2.0, 1e-12), 0.0);
        // integrable endpoint behavior: sqrt on [0,1]
        let v = adaptive_simpson(real::sqrt, 0.0, 1.0, 1e-11);
        assert_relative_eq!(v, 2.0 / 3.0, max_relative = 1e-8);
    }

    #[test]
    fn simpson_complex_oscillatory() {
        // int_0^pi e^{it} dt = 2i
        let v = adaptive_simpson_complex(
            |t| Complex64::new(real::cos(t), real::sin(t)),
            0.0,
            real::PI,
            1e-12,
        );
        assert_relative_eq!(v.re, 0.0, epsilon = 1e-10);
        assert_relative_eq!(v.im, 2.0, max_relative = 1e-10);
    }

    #[test]
    fn rk4_exponential_growth() {
        let sol = rk4_solve(|_, y| alloc::vec![y[0]], 0.0, alloc::vec![1.0], 1.0, 256);
        let y1 = sol.eval(1.0)[0];
        assert_relative_eq!(y1, real::exp(1.0), max_relative = 1e-9);
        // dense output mid-interval
        let yh = sol.eval(0.5);
        assert_relative_eq!(yh[0], real::exp(0.5), max_relative = 1e-8);
    }

    #[test]
    fn rk4_harmonic_oscillator_system() {
        // y'' = -y as a system; y(0) = 0, y'(0) = 1 -> y = sin t
        let sol = rk4_solve(
            |_, y| alloc::vec![y[1], -y[0]],
            0.0,
            alloc::vec![0.0, 1.0],
            real::PI,
            512,
        );
        let end = sol.eval(real::PI);
        assert_relative_eq!(end[0], 0.0, epsilon = 1e-9);
        assert_relative_eq!(end[1], -1.0, max_relative = 1e-9);
        let mid = sol.eval(real::PI / 3.0);
        assert_relative_eq!(mid[0], real::sin(real::PI / 3.0), max_relative = 1e-7);
    }
}
