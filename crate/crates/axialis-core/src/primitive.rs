//! Primitivation: inverting the right derivative on axial functions.
//!
//! A pair of radial profiles `(M, N)` solving the left Vekua system
//! represents the axial left monogenic function `(M + (x/r) N) P`. Applying
//! the Dirac operator from the right turns it into an axial two-sided
//! monogenic function described by a profile quadruple. This module computes
//! that right derivative and, going the other way, reconstructs a primitive
//! pair from a given quadruple on a rectangle `[a1, b1] x [a2, b2]` of the
//! `(x0, r)` half-plane with `a2 > 0`. The reconstruction reproduces the
//! vector profiles exactly; the scalar profile comes back up to one additive
//! constant, which is returned alongside the pair.
//!
//! Polynomial inputs go through exact rational antiderivatives. Numeric
//! inputs use adaptive Simpson quadrature for the radial integrals and a
//! fixed-step RK4 solve with dense output for the two auxiliary functions of
//! `x0` that pin down the integration constants.

use alloc::boxed::Box;
use alloc::rc::Rc;
use alloc::vec;

use core::fmt;

use num_complex::Complex64;

use crate::axial::{
    vekua_left_residual, vekua_two_sided_residual, AxialQuadruple, Profile, ProfileQuadruple,
    RadialPoly,
};
use crate::clifford::mu_i64;
use crate::numeric::{adaptive_simpson_complex, central_diff_complex, rk4_solve, FD_STEP};
use crate::scalar::{rat_int, Rat};
use crate::spherical::{mu_rat, InnerMonogenic};

/// Rejected `(M, N)` input: the pair does not solve the left Vekua system,
/// so it does not represent a left monogenic function. Carries the two
/// residual polynomials for diagnostics.
pub struct LeftSystemViolation {
    pub residuals: [RadialPoly; 2],
}

impl fmt::Debug for LeftSystemViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "left Vekua system violated: L1 = {}, L2 = {}",
            self.residuals[0], self.residuals[1]
        )
    }
}

/// Rejected quadruple input: the profiles do not solve the two-sided
/// system, so there is nothing to primitivize. Carries the five residual
/// polynomials for diagnostics.
pub struct TwoSidedViolation {
    pub residuals: [RadialPoly; 5],
}

impl fmt::Debug for TwoSidedViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "two-sided system violated:")?;
        for (i, r) in self.residuals.iter().enumerate() {
            write!(f, " R{} = {};", i + 1, r)?;
        }
        Ok(())
    }
}

/// Right derivative of the axial left monogenic function `(M + (x/r) N) P`:
/// the profile quadruple of `(M + (x/r) N) P (d/dx0 - d/dx)`.
///
/// `M` must be even and `N` odd in `r`, and the pair must solve the left
/// Vekua system for the degree and dimension of `p`; otherwise the nonzero
/// residuals come back as the error. The output always solves the two-sided
/// system and is symmetric in its two middle profiles.
pub fn right_derivative(
    mm: &RadialPoly,
    nn: &RadialPoly,
    p: &InnerMonogenic,
) -> Result<AxialQuadruple, LeftSystemViolation> {
    let residuals = vekua_left_residual(mm, nn, p.k, p.m);
    if residuals.iter().any(|r| !r.is_zero()) {
        return Err(LeftSystemViolation { residuals });
    }
    let mu = mu_rat(p.ell, p.m);
    let n_over_r = nn.div_r();
    let a = mm.partial_x0().sub_ref(&n_over_r.scale(&mu));
    let b = nn.partial_x0().div_r();
    let c = mm.partial_r().div_r().neg_ref();
    let d = n_over_r.partial_r().div_r().neg_ref();
    Ok(AxialQuadruple::new(p.clone(), a, b, c, d))
}

/// Pointwise right derivative of a numeric profile pair, by central
/// differences. Same formulas as [`right_derivative`]; the left-system
/// precondition is not checked here, callers probe it separately with
/// [`crate::axial::vekua_left_residual_numeric`].
pub fn right_derivative_numeric(
    mm: &Profile<'_>,
    nn: &Profile<'_>,
    ell: u32,
    m: u32,
    x0: f64,
    r: f64,
) -> [Complex64; 4] {
    assert!(r > 0.0, "radial variable must be positive");
    let mu = mu_i64(ell, m) as f64;
    let dm_dx0 = central_diff_complex(|t| mm(t, r), x0, FD_STEP);
    let dn_dx0 = central_diff_complex(|t| nn(t, r), x0, FD_STEP);
    let dm_dr = central_diff_complex(|t| mm(x0, t), r, FD_STEP);
    let dn_over_r_dr = central_diff_complex(|t| nn(x0, t) / t, r, FD_STEP);
    let a = dm_dx0 - nn(x0, r) / r * mu;
    let b = dn_dx0 / r;
    let c = -dm_dr / r;
    let d = -dn_over_r_dr / r;
    [a, b, c, d]
}

/// Exact primitive of a polynomial quadruple.
#[derive(Clone, Debug)]
pub struct PolynomialPrimitive {
    /// Scalar profile `M` of the primitive pair, even in `r`.
    pub m_profile: RadialPoly,
    /// Vector profile `N` of the primitive pair, odd in `r`.
    pub n_profile: RadialPoly,
    /// Leftover constant: the input minus the right derivative of the pair
    /// is this constant times the inner monogenic, in the scalar slot.
    pub constant: Rat,
}

/// The primitive pair determined by a choice of the two integration
/// functions `alpha(x0)` and `beta(x0)`:
/// `M = -int_{a2}^r t B dt + alpha` and `N = r (-int_{a2}^r t D dt + beta)`.
fn primitive_pair(
    q: &AxialQuadruple,
    a2: &Rat,
    alpha: &RadialPoly,
    beta: &RadialPoly,
) -> (RadialPoly, RadialPoly) {
    let ib = q.b().mul_r_pow(1).antiderivative_r();
    let id = q.d().mul_r_pow(1).antiderivative_r();
    let mm = ib.substitute_r(a2).sub_ref(&ib).add_ref(alpha);
    let nn = id.substitute_r(a2).sub_ref(&id).add_ref(beta).mul_r_pow(1);
    (mm, nn)
}

/// Antiderivative in `x0` vanishing at `x0 = a1`.
fn integrate_x0_from(f: &RadialPoly, a1: &Rat) -> RadialPoly {
    let raw = f.antiderivative_x0();
    let at_a1 = raw.substitute_x0(a1);
    raw.sub_ref(&at_a1)
}

/// Reconstruct an exact primitive pair for a polynomial quadruple on the
/// rectangle `[a1, b1] x [a2, b2]`, `a2 > 0`.
///
/// The input must solve the two-sided system (including symmetry of the two
/// middle profiles); otherwise the nonzero residuals come back as the error.
/// The returned pair solves the left Vekua system, its right derivative
/// matches the three vector-profile slots of the input exactly, and the
/// scalar slots differ by the returned rational constant. The two
/// integration functions are normalized to vanish at `x0 = a1`; only the
/// left edges of the rectangle enter the exact construction.
pub fn primitivize(
    q: &AxialQuadruple,
    rect: &[Rat; 4],
) -> Result<PolynomialPrimitive, TwoSidedViolation> {
    let residuals = vekua_two_sided_residual(q);
    if residuals.iter().any(|r| !r.is_zero()) {
        return Err(TwoSidedViolation { residuals });
    }
    let [a1, b1, a2, b2] = rect;
    assert!(*a2 > rat_int(0), "inner radius must be positive");
    assert!(b1 > a1 && b2 > a2, "rectangle must be nondegenerate");
    let p = q.p();
    let coef = rat_int(2 * p.k as i64 + p.m as i64);
    let beta = integrate_x0_from(&q.b().substitute_r(a2), a1);
    let alpha_rate = beta
        .scale(&coef)
        .sub_ref(&q.d().substitute_r(a2).scale(&(a2 * a2)));
    let alpha = integrate_x0_from(&alpha_rate, a1);
    let (mm, nn) = primitive_pair(q, a2, &alpha, &beta);
    let rd = right_derivative(&mm, &nn, p)
        .expect("reconstructed pair must solve the left Vekua system");
    assert!(
        q.b().sub_ref(rd.b()).is_zero()
            && q.c().sub_ref(rd.c()).is_zero()
            && q.d().sub_ref(rd.d()).is_zero(),
        "vector profiles must be reproduced exactly"
    );
    let da = q.a().sub_ref(rd.a());
    let constant = da.coefficient(0, 0);
    assert!(
        da.sub_ref(&RadialPoly::constant(constant.clone())).is_zero(),
        "scalar-profile mismatch must be a constant"
    );
    Ok(PolynomialPrimitive {
        m_profile: mm,
        n_profile: nn,
        constant,
    })
}

/// Steps for the RK4 solve of the integration functions.
const RK4_STEPS: usize = 2048;

/// Absolute tolerance for the radial quadratures inside the numeric
/// primitive. Tighter than the residual gates so that finite differences of
/// the primitive do not amplify quadrature noise past them.
const R_QUAD_TOL: f64 = 1e-12;

/// Oriented integral that tolerates `b < a` (finite-difference probes step
/// slightly below the inner rectangle edge).
fn signed_integral(f: impl Fn(f64) -> Complex64, a: f64, b: f64) -> Complex64 {
    if b >= a {
        adaptive_simpson_complex(f, a, b, R_QUAD_TOL)
    } else {
        -adaptive_simpson_complex(f, b, a, R_QUAD_TOL)
    }
}

/// Numeric primitive pair for a quadruple given as functions, on the
/// rectangle `[a1, b1] x [a2, b2]`, `a2 > 0`.
///
/// The radial integrals are adaptive Simpson from `r = a2`; the two
/// integration functions solve their coupled linear ODE system by RK4
/// across `[a1, b1]`, starting from zero at `a1`, with cubic Hermite dense
/// output in between the steps. The caller is responsible for the input
/// solving the two-sided system; [`crate::axial::vekua_left_residual_numeric`]
/// on the output and the spread of [`primitive_constant`] over sample points
/// measure how well the reconstruction worked.
pub fn primitivize_numeric<'a>(
    q: &'a ProfileQuadruple<'a>,
    k: u32,
    m: u32,
    rect: [f64; 4],
) -> (Profile<'a>, Profile<'a>) {
    let [a1, b1, a2, b2] = rect;
    assert!(a2 > 0.0, "inner radius must be positive");
    assert!(b1 > a1 && b2 > a2, "rectangle must be nondegenerate");
    let coef = (2 * k + m) as f64;
    let ode = rk4_solve(
        |x0, y| {
            let beta = Complex64::new(y[0], y[1]);
            let beta_rate = (q.b)(x0, a2);
            let alpha_rate = beta * coef - (q.d)(x0, a2) * (a2 * a2);
            vec![beta_rate.re, beta_rate.im, alpha_rate.re, alpha_rate.im]
        },
        a1,
        vec![0.0; 4],
        b1,
        RK4_STEPS,
    );
    let ode = Rc::new(ode);
    let ode_m = Rc::clone(&ode);
    let mm: Profile<'a> = Box::new(move |x0, r| {
        let y = ode_m.eval(x0);
        let alpha = Complex64::new(y[2], y[3]);
        alpha - signed_integral(|t| (q.b)(x0, t) * t, a2, r)
    });
    let nn: Profile<'a> = Box::new(move |x0, r| {
        let y = ode.eval(x0);
        let beta = Complex64::new(y[0], y[1]);
        (beta - signed_integral(|t| (q.d)(x0, t) * t, a2, r)) * r
    });
    (mm, nn)
}

/// Scalar-slot gap between a quadruple and the right derivative of a
/// candidate primitive pair at one point. When the pair is a genuine
/// primitive of the quadruple this value is the same complex constant
/// everywhere on the rectangle; its spread over sample points is the
/// numeric analogue of the exact constancy assertion in [`primitivize`].
pub fn primitive_constant(
    q: &ProfileQuadruple<'_>,
    mm: &Profile<'_>,
    nn: &Profile<'_>,
    ell: u32,
    m: u32,
    x0: f64,
    r: f64,
) -> Complex64 {
    let rd = right_derivative_numeric(mm, nn, ell, m, x0, r);
    (q.a)(x0, r) - rd[0]
}
