//! Special functions for the spherical integral machinery: Gegenbauer
//! polynomials (plain, exact rational, and normalized to 1 at t = 1), the
//! half-integer Gamma shortcut, double factorials, Bessel J by ascending
//! series, and adaptive Gauss-Jacobi quadrature for the Gegenbauer-weighted
//! integrals on [-1, 1] and [0, 1].

use alloc::vec::Vec;
use num_complex::Complex64;
use num_traits::One;

use crate::real;
use crate::scalar::{rat_int, Rat};

/// Double factorial with the convention (-1)!! = 0!! = 1.
pub fn double_factorial(n: i64) -> i64 {
    assert!((-1..=33).contains(&n), "double factorial out of i64 range");
    let mut acc = 1i64;
    let mut i = n;
    while i > 1 {
        acc *= i;
        i -= 2;
    }
    acc
}

/// Gamma(n/2) for integer n >= 1: odd n uses sqrt(pi) (n-2)!!/2^((n-1)/2),
/// even n is an ordinary factorial.
pub fn gamma_half(n: u32) -> f64 {
    assert!(n >= 1);
    if n % 2 == 1 {
        let df = double_factorial(n as i64 - 2) as f64;
        real::sqrt(real::PI) * df / real::powi(2.0, ((n - 1) / 2) as i32)
    } else {
        // Gamma(n/2) = (n/2 - 1)!
        let mut acc = 1.0;
        for j in 2..(n / 2) {
            acc *= j as f64;
        }
        acc
    }
}

/// Gegenbauer polynomial C_k^nu(t) by the three-term recurrence.
pub fn gegenbauer(k: u32, nu: f64, t: f64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 2.0 * nu * t;
    for n in 2..=k {
        let nf = n as f64;
        let next = (2.0 * t * (nf + nu - 1.0) * cur - (nf + 2.0 * nu - 2.0) * prev) / nf;
        prev = cur;
        cur = next;
    }
    cur
}

/// Exact rational Gegenbauer value, same recurrence.
pub fn gegenbauer_rat(k: u32, nu: &Rat, t: &Rat) -> Rat {
    if k == 0 {
        return Rat::one();
    }
    let two = rat_int(2);
    let mut prev = Rat::one();
    let mut cur = &two * nu * t;
    for n in 2..=k {
        let nf = rat_int(n as i64);
        let next = ((&two * t) * (&nf + nu - Rat::one()) * &cur
            - (&nf + &two * nu - &two) * &prev)
            / &nf;
        prev = cur;
        cur = next;
    }
    cur
}

/// C_k^nu(1) = Gamma(2 nu + k) / (k! Gamma(2 nu)), computed as a product so
/// the nu -> 0 degeneration (zero for k >= 1) is handled without poles.
pub fn gegenbauer_at_one(k: u32, nu: f64) -> f64 {
    let mut acc = 1.0;
    for j in 0..k {
        acc *= (2.0 * nu + j as f64) / (j as f64 + 1.0);
    }
    acc
}

/// Gegenbauer normalized to 1 at t = 1. For nu > 0 this equals
/// C_k^nu(t)/C_k^nu(1); at nu = 0 it degenerates to the Chebyshev polynomial
/// T_k(t), which is the correct m = 2 limit of every ratio formula here.
pub fn gegenbauer_normalized(k: u32, nu: f64, t: f64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = t;
    for n in 2..=k {
        let nf = n as f64;
        let next =
            (2.0 * t * (nf + nu - 1.0) * cur - (nf - 1.0) * prev) / (2.0 * nu + nf - 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Bessel function of the first kind by the ascending power series with a
/// term-ratio tail bound. Accurate for the moderate arguments used here.
pub fn bessel_j(nu: f64, r: f64) -> f64 {
    assert!(nu >= 0.0 && r >= 0.0);
    if r == 0.0 {
        return if nu == 0.0 { 1.0 } else { 0.0 };
    }
    let half = r / 2.0;
    let mut term = real::exp(nu * real::ln(half) - real::lgamma(nu + 1.0));
    let mut sum = term;
    let q = half * half;
    for s in 0..400u32 {
        let sf = s as f64;
        term *= -q / ((sf + 1.0) * (sf + nu + 1.0));
        sum += term;
        // once (s+1)(s+nu+1) > q the terms decay faster than geometrically
        // with ratio < q / ((s+2)(s+nu+2)), so the remainder is bounded by
        // the next term over (1 - ratio)
        if real::abs(term) < 1e-18 * (1.0 + real::abs(sum)) && (sf + 2.0) * (sf + nu + 2.0) > q
        {
            return sum;
        }
    }
    sum
}

/// Outcome carried on quadrature non-convergence.
#[derive(Clone, Debug)]
pub struct QuadError {
    pub requested_tol: f64,
    pub last_delta: f64,
    pub nodes: usize,
}

const QUAD_TOL: f64 = 1e-10;
const QUAD_MIN_NODES: usize = 16;
const QUAD_MAX_NODES: usize = 4096;

/// Nodes and weights of the n-point Gauss-Jacobi rule for the weight
/// (1-t)^alpha (1+t)^beta on [-1, 1], by Newton iteration on the Jacobi
/// three-term recurrence.
// the 6.28 in two of the Newton seeds below is an empirical coefficient
// from the standard initial-guess formulas, not an approximation of 2 pi
#[allow(clippy::approx_constant)]
pub fn gauss_jacobi(n: usize, alpha: f64, beta: f64) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1 && alpha > -1.0 && beta > -1.0);
    let nf = n as f64;
    let alfbet = alpha + beta;
    let mut xs = alloc::vec![0.0f64; n];
    let mut ws = alloc::vec![0.0f64; n];
    for i in 0..n {
        // starting guesses per root index, largest root first
        let mut z: f64;
        if i == 0 {
            let an = alpha / nf;
            let bn = beta / nf;
            let r1 = (1.0 + alpha) * (2.78 / (4.0 + nf * nf) + 0.768 * an / nf);
            let r2 = 1.0 + 1.48 * an + 0.96 * bn + 0.452 * an * an + 0.83 * an * bn;
            z = 1.0 - r1 / r2;
        } else if i == 1 {
            let r1 = (4.1 + alpha) / ((1.0 + alpha) * (1.0 + 0.156 * alpha));
            let r2 = 1.0 + 0.06 * (nf - 8.0) * (1.0 + 0.12 * alpha) / nf;
            let r3 = 1.0 + 0.012 * beta * (1.0 + 0.25 * real::abs(alpha)) / nf;
            z = xs[0] - (1.0 - xs[0]) * r1 * r2 * r3;
        } else if i == 2 {
            let r1 = (1.67 + 0.28 * alpha) / (1.0 + 0.37 * alpha);
            let r2 = 1.0 + 0.22 * (nf - 8.0) / nf;
            let r3 = 1.0 + 8.0 * beta / ((6.28 + beta) * nf * nf);
            z = xs[1] - (xs[0] - xs[1]) * r1 * r2 * r3;
        } else if i == n - 2 && n > 3 {
            let r1 = (1.0 + 0.235 * beta) / (0.766 + 0.119 * beta);
            let r2 = 1.0 / (1.0 + 0.639 * (nf - 4.0) / (1.0 + 0.71 * (nf - 4.0)));
            let r3 = 1.0 / (1.0 + 20.0 * alpha / ((7.5 + alpha) * nf * nf));
            z = xs[i - 1] + (xs[i - 1] - xs[i - 2]) * r1 * r2 * r3;
        } else if i == n - 1 && n > 3 {
            let r1 = (1.0 + 0.37 * beta) / (1.67 + 0.28 * beta);
            let r2 = 1.0 / (1.0 + 0.22 * (nf - 8.0) / nf);
            let r3 = 1.0 / (1.0 + 8.0 * alpha / ((6.28 + alpha) * nf * nf));
            z = xs[i - 1] + (xs[i - 1] - xs[i - 2]) * r1 * r2 * r3;
        } else {
            z = 3.0 * xs[i - 1] - 3.0 * xs[i - 2] + xs[i - 3];
        }
        // degree-n Jacobi polynomial, the degree-(n-1) one, and the
        // derivative of the former, all at z, by the three-term recurrence
        let eval = |z: f64| -> (f64, f64, f64) {
            let mut temp = 2.0 + alfbet;
            let mut p1 = (alpha - beta + temp * z) / 2.0;
            let mut p2 = 1.0;
            for j in 2..=n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                temp = 2.0 * jf + alfbet;
                let a = 2.0 * jf * (jf + alfbet) * (temp - 2.0);
                let b = (temp - 1.0)
                    * (alpha * alpha - beta * beta + temp * (temp - 2.0) * z);
                let c = 2.0 * (jf - 1.0 + alpha) * (jf - 1.0 + beta) * temp;
                p1 = (b * p2 - c * p3) / a;
            }
            let pp = (nf * (alpha - beta - temp * z) * p1
                + 2.0 * (nf + alpha) * (nf + beta) * p2)
                / (temp * (1.0 - z * z));
            (p1, p2, pp)
        };
        let mut converged = false;
        for _ in 0..64 {
            let (p1, _, pp) = eval(z);
            let z1 = z;
            z = z1 - p1 / pp;
            if real::abs(z - z1) <= 1e-14 {
                converged = true;
                break;
            }
        }
        assert!(converged, "Gauss-Jacobi Newton iteration failed to converge");
        xs[i] = z;
        // one more evaluation at the settled node so the weight does not
        // carry the last Newton step's stale values
        let (_, p2, pp) = eval(z);
        let temp = 2.0 * nf + alfbet;
        let lg = real::lgamma(alpha + nf) + real::lgamma(beta + nf)
            - real::lgamma(nf + 1.0)
            - real::lgamma(nf + alfbet + 1.0);
        ws[i] = real::exp(lg) * temp * real::pow(2.0, alfbet) / (pp * p2);
    }
    (xs, ws)
}

/// Integrate g against the Jacobi weight (1-t)^alpha (1+t)^beta on [-1, 1],
/// doubling the node count until two successive rules agree.
fn adaptive_jacobi<F: Fn(f64) -> f64>(g: &F, alpha: f64, beta: f64) -> Result<f64, QuadError> {
    let mut n = QUAD_MIN_NODES;
    let (xs, ws) = gauss_jacobi(n, alpha, beta);
    let mut prev: f64 = xs.iter().zip(&ws).map(|(&x, &w)| w * g(x)).sum();
    loop {
        n *= 2;
        let (xs, ws) = gauss_jacobi(n, alpha, beta);
        let cur: f64 = xs.iter().zip(&ws).map(|(&x, &w)| w * g(x)).sum();
        let delta = real::abs(cur - prev);
        if delta <= QUAD_TOL * (1.0 + real::abs(cur)) {
            return Ok(cur);
        }
        if n >= QUAD_MAX_NODES {
            return Err(QuadError {
                requested_tol: QUAD_TOL,
                last_delta: delta,
                nodes: n,
            });
        }
        prev = cur;
    }
}

/// Weighted Gegenbauer integral over [-1, 1]:
/// int F(t) C_k^nu(t) (1 - t^2)^(nu - 1/2) dt.
pub fn gegenbauer_weighted_integral<F: Fn(f64) -> f64>(
    f: F,
    k: u32,
    nu: f64,
) -> Result<f64, QuadError> {
    let a = nu - 0.5;
    adaptive_jacobi(&|t| f(t) * gegenbauer(k, nu, t), a, a)
}

/// Same integral with the Gegenbauer factor normalized to 1 at t = 1, i.e.
/// C_k^nu(1)^{-1} int F C_k w dt. Finite and correct for all nu >= 0,
/// including the Chebyshev degeneration at nu = 0.
pub fn normalized_weighted_integral<F: Fn(f64) -> f64>(
    f: F,
    k: u32,
    nu: f64,
) -> Result<f64, QuadError> {
    let a = nu - 0.5;
    adaptive_jacobi(&|t| f(t) * gegenbauer_normalized(k, nu, t), a, a)
}

/// Complex version of [`normalized_weighted_integral`]; real and imaginary
/// parts are integrated separately.
pub fn normalized_weighted_integral_complex<F: Fn(f64) -> Complex64>(
    f: F,
    k: u32,
    nu: f64,
) -> Result<Complex64, QuadError> {
    let re = normalized_weighted_integral(|t| f(t).re, k, nu)?;
    let im = normalized_weighted_integral(|t| f(t).im, k, nu)?;
    Ok(Complex64::new(re, im))
}

/// Half-interval Gegenbauer integral int_0^1 F(t) C_k^nu(t) (1-t^2)^(nu-1/2) dt.
/// The substitution t = (u+1)/2 moves the t = 1 endpoint singularity into a
/// Gauss-Jacobi weight (1-u)^(nu-1/2); the (1+t)^(nu-1/2) factor stays smooth.
pub fn half_interval_weighted_integral<F: Fn(f64) -> f64>(
    f: F,
    k: u32,
    nu: f64,
) -> Result<f64, QuadError> {
    let a = nu - 0.5;
    let scale = real::pow(2.0, -a - 1.0);
    adaptive_jacobi(
        &|u: f64| {
            let t = (u + 1.0) / 2.0;
            scale * f(t) * gegenbauer(k, nu, t) * real::pow(1.0 + t, a)
        },
        a,
        0.0,
    )
}

/// i^k as a complex unit.
pub fn i_pow(k: u32) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn double_factorial_small_values() {
        assert_eq!(double_factorial(-1), 1);
        assert_eq!(double_factorial(0), 1);
        assert_eq!(double_factorial(1), 1);
        assert_eq!(double_factorial(5), 15);
        assert_eq!(double_factorial(6), 48);
        assert_eq!(double_factorial(9), 945);
    }

    #[test]
    fn gamma_half_matches_gamma() {
        assert_relative_eq!(gamma_half(1), real::sqrt(real::PI), max_relative = 1e-14);
        assert_relative_eq!(
            gamma_half(3),
            real::sqrt(real::PI) / 2.0,
            max_relative = 1e-14
        );
        for n in 1..=14u32 {
            assert_relative_eq!(
                gamma_half(n),
                real::tgamma(n as f64 / 2.0),
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn gegenbauer_basic_values() {
        assert_eq!(gegenbauer(0, 0.5, 0.77), 1.0);
        assert_relative_eq!(gegenbauer(1, 0.5, 0.3), 0.3, max_relative = 1e-15);
        // Legendre at nu = 1/2
        let t = 0.4;
        assert_relative_eq!(
            gegenbauer(2, 0.5, t),
            (3.0 * t * t - 1.0) / 2.0,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            gegenbauer(3, 0.5, t),
            (5.0 * t * t * t - 3.0 * t) / 2.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn gegenbauer_value_at_one_formula() {
        for &nu in &[0.5f64, 1.0, 1.5] {
            for k in 0..=6u32 {
                let expected = real::tgamma(2.0 * nu + k as f64)
                    / (real::tgamma(k as f64 + 1.0) * real::tgamma(2.0 * nu));
                assert_relative_eq!(gegenbauer(k, nu, 1.0), expected, max_relative = 1e-10);
                assert_relative_eq!(gegenbauer_at_one(k, nu), expected, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn gegenbauer_rational_matches_float() {
        let nu = rat(1, 2);
        let t = rat(3, 10);
        for k in 0..=6u32 {
            let exact = gegenbauer_rat(k, &nu, &t);
            let float = gegenbauer(k, 0.5, 0.3);
            assert_relative_eq!(
                crate::scalar::rat_to_f64(&exact),
                float,
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn normalized_is_ratio_for_positive_nu() {
        for &nu in &[0.5f64, 1.0, 1.5] {
            for k in 1..=6u32 {
                for &t in &[-0.7, 0.1, 0.9] {
                    assert_relative_eq!(
                        gegenbauer_normalized(k, nu, t),
                        gegenbauer(k, nu, t) / gegenbauer_at_one(k, nu),
                        max_relative = 1e-11
                    );
                }
            }
        }
    }

    #[test]
    fn normalized_degenerates_to_chebyshev_at_nu_zero() {
        for k in 0..=6u32 {
            for &t in &[-0.9, -0.3, 0.2, 0.85] {
                let cheb = real::cos(k as f64 * real::acos(t));
                assert_relative_eq!(gegenbauer_normalized(k, 0.0, t), cheb, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn bessel_half_order_closed_form() {
        for &r in &[0.5f64, 1.0, 2.0] {
            let expected = real::sqrt(2.0 / (real::PI * r)) * real::sin(r);
            assert_relative_eq!(bessel_j(0.5, r), expected, max_relative = 1e-12);
        }
        assert_eq!(bessel_j(1.5, 0.0), 0.0);
        assert_eq!(bessel_j(0.0, 0.0), 1.0);
        // first zero of J_0
        assert_abs_diff_eq!(bessel_j(0.0, 2.404825557695773), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn bessel_three_term_recurrence() {
        for &nu in &[1.0f64, 1.5, 2.5, 4.0] {
            for &r in &[0.3f64, 1.1, 2.7, 5.0] {
                let lhs = 2.0 * nu / r * bessel_j(nu, r);
                let rhs = bessel_j(nu - 1.0, r) + bessel_j(nu + 1.0, r);
                assert_relative_eq!(lhs, rhs, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn gauss_jacobi_chebyshev_closed_form() {
        // alpha = beta = -1/2: nodes cos((2i+1) pi / (2n)), weights pi/n
        let n = 8;
        let (xs, ws) = gauss_jacobi(n, -0.5, -0.5);
        for (i, (&x, &w)) in xs.iter().zip(&ws).enumerate() {
            let expected = real::cos((2.0 * i as f64 + 1.0) * real::PI / (2.0 * n as f64));
            assert_abs_diff_eq!(x, expected, epsilon = 1e-12);
            assert_relative_eq!(w, real::PI / n as f64, max_relative = 1e-12);
        }
    }

    #[test]
    fn gauss_jacobi_weight_sums() {
        // sum of weights = 2^(a+b+1) B(a+1, b+1)
        for &(a, b) in &[(-0.5f64, -0.5f64), (0.0, 0.0), (0.5, 0.0), (0.5, 0.5)] {
            let (_, ws) = gauss_jacobi(24, a, b);
            let total: f64 = ws.iter().sum();
            let expected = real::pow(2.0, a + b + 1.0)
                * real::exp(
                    real::lgamma(a + 1.0) + real::lgamma(b + 1.0) - real::lgamma(a + b + 2.0),
                );
            assert_relative_eq!(total, expected, max_relative = 1e-12);
        }
    }

    #[test]
    fn gauss_legendre_polynomial_exactness() {
        // n-point rule integrates degree 2n-1 exactly
        let (xs, ws) = gauss_jacobi(4, 0.0, 0.0);
        let int_t6: f64 = xs.iter().zip(&ws).map(|(&x, &w)| w * real::powi(x, 6)).sum();
        assert_relative_eq!(int_t6, 2.0 / 7.0, max_relative = 1e-13);
        let int_t7: f64 = xs.iter().zip(&ws).map(|(&x, &w)| w * real::powi(x, 7)).sum();
        assert_abs_diff_eq!(int_t7, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn trivial_weighted_integral() {
        // F = 1, k = 0, nu = 1/2: plain integral of 1 over [-1, 1]
        let v = gegenbauer_weighted_integral(|_| 1.0, 0, 0.5).unwrap();
        assert_relative_eq!(v, 2.0, max_relative = 1e-12);
    }

    #[test]
    fn gegenbauer_orthogonality() {
        for &nu in &[0.5f64, 1.0] {
            for j in 0..=5u32 {
                for k in 0..=5u32 {
                    if j == k {
                        continue;
                    }
                    let v = gegenbauer_weighted_integral(|t| gegenbauer(j, nu, t), k, nu)
                        .unwrap();
                    assert_abs_diff_eq!(v, 0.0, epsilon = 1e-10);
                }
            }
        }
    }

    #[test]
    fn exponential_gegenbauer_identity() {
        // int e^{iat} C_k w dt = pi 2^{1-nu} i^k Gamma(2nu+k) / (k! Gamma(nu))
        //                        * a^{-nu} J_{k+nu}(a)
        let nu = 0.5;
        for &a in &[1.0f64, 2.5] {
            for k in 0..=3u32 {
                let re = gegenbauer_weighted_integral(|t| real::cos(a * t), k, nu).unwrap();
                let im = gegenbauer_weighted_integral(|t| real::sin(a * t), k, nu).unwrap();
                let lhs = Complex64::new(re, im);
                let mag = real::PI * real::pow(2.0, 1.0 - nu) * gegenbauer_at_one(k, nu)
                    * real::tgamma(2.0 * nu)
                    / real::tgamma(nu)
                    * real::pow(a, -nu)
                    * bessel_j(k as f64 + nu, a);
                let rhs = i_pow(k) * mag;
                assert_relative_eq!(lhs.re, rhs.re, epsilon = 1e-10, max_relative = 1e-8);
                assert_relative_eq!(lhs.im, rhs.im, epsilon = 1e-10, max_relative = 1e-8);
            }
        }
    }

    #[test]
    fn power_gegenbauer_identity() {
        // int_0^1 t^{k+2p} C_k w dt in closed Gamma form
        for &nu in &[0.5f64, 1.0] {
            for k in 0..=3u32 {
                for p in 0..=2u32 {
                    let kf = k as f64;
                    let pf = p as f64;
                    let lhs = half_interval_weighted_integral(
                        |t| real::pow(t, kf + 2.0 * pf),
                        k,
                        nu,
                    )
                    .unwrap();
                    let rhs = real::tgamma(2.0 * nu + kf) * real::tgamma(2.0 * pf + kf + 1.0)
                        * real::tgamma(nu + 0.5)
                        * real::tgamma(pf + 0.5)
                        / (real::pow(2.0, kf + 1.0)
                            * real::tgamma(2.0 * nu)
                            * real::tgamma(2.0 * pf + 1.0)
                            * real::tgamma(kf + 1.0)
                            * real::tgamma(kf + nu + pf + 1.0));
                    assert_relative_eq!(lhs, rhs, max_relative = 1e-8);
                }
            }
        }
    }
}
