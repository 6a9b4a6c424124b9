//! f64 math routed through libm so the crate stays no_std-clean.
//!
//! Core (as opposed to std) provides no transcendental methods on f64; every
//! float call in this crate goes through here, std build or not, which also
//! keeps results bit-identical across feature sets.

pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}

pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

pub fn sin(x: f64) -> f64 {
    libm::sin(x)
}

pub fn cos(x: f64) -> f64 {
    libm::cos(x)
}

pub fn pow(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

pub fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

pub fn acos(x: f64) -> f64 {
    libm::acos(x)
}

/// Gamma function (real argument, poles at 0, -1, -2, ...).
pub fn tgamma(x: f64) -> f64 {
    libm::tgamma(x)
}

/// ln |Gamma(x)|.
pub fn lgamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// Integer power by repeated squaring; exact for exponents within f64 range.
pub fn powi(x: f64, n: i32) -> f64 {
    if n < 0 {
        return 1.0 / powi(x, -n);
    }
    let mut acc = 1.0;
    let mut base = x;
    let mut e = n as u32;
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base *= base;
        e >>= 1;
    }
    acc
}

pub const PI: f64 = core::f64::consts::PI;
