//! Axial representations of monogenic functions.
//!
//! An axial two-sided monogenic function has the shape
//! `A(x0,r) P + B(x0,r) xP + C(x0,r) Px + D(x0,r) xPx` where `P` is an inner
//! spherical monogenic and `r = |x|`. This module provides the radial profile
//! polynomials, assembly and extraction between that shape and `MvPoly`, the
//! residuals of the two Vekua-type systems that characterize axial (left and
//! two-sided) monogenicity, the two families of CK building blocks together
//! with their closed profile forms, and the decomposition of an arbitrary
//! homogeneous two-sided monogenic polynomial into such blocks.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};

use core::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::ckext::ck_two_sided;
use crate::clifford::{mu, mu_i64};
use crate::linalg::{solve, QMat};
use crate::mpoly::MvPoly;
use crate::numeric::FD_STEP;
use crate::scalar::{rat_int, rat_to_f64, Rat};
use crate::spherical::{two_sided_monogenic_basis, InnerMonogenic};

type P = MvPoly<Rat>;

/// Exact polynomial in the two radial variables: a finite sum of
/// `c * x0^i * r^j` with rational coefficients. Keys are `(i, j)`.
///
/// Profiles that multiply the slots of an axial form must be even in `r`
/// for the assembled object to be a polynomial in `x`; that constraint is
/// enforced where quadruples are built, not here, so that intermediate
/// results of differentiation (which can be odd) remain representable.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct RadialPoly {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl RadialPoly {
    pub fn zero() -> Self {
        RadialPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(i: u32, j: u32, c: Rat) -> Self {
        let mut p = RadialPoly::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn constant(c: Rat) -> Self {
        RadialPoly::monomial(0, 0, c)
    }

    pub fn one() -> Self {
        RadialPoly::constant(Rat::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterate `((x0 exponent, r exponent), coefficient)` in key order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Rat)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn coefficient(&self, i: u32, j: u32) -> Rat {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn add_ref(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (i, j, c) in rhs.terms() {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn neg_ref(&self) -> Self {
        let mut out = RadialPoly::zero();
        for (i, j, c) in self.terms() {
            out.add_term(i, j, -c.clone());
        }
        out
    }

    pub fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }

    pub fn mul_ref(&self, rhs: &Self) -> Self {
        let mut out = RadialPoly::zero();
        for (i1, j1, c1) in self.terms() {
            for (i2, j2, c2) in rhs.terms() {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = RadialPoly::zero();
        for (i, j, t) in self.terms() {
            out.add_term(i, j, t * c);
        }
        out
    }

    pub fn partial_x0(&self) -> Self {
        let mut out = RadialPoly::zero();
        for (i, j, c) in self.terms() {
            if i > 0 {
                out.add_term(i - 1, j, c * rat_int(i as i64));
            }
        }
        out
    }

    pub fn partial_r(&self) -> Self {
        let mut out = RadialPoly::zero();
        for (i, j, c) in self.terms() {
            if j > 0 {
                out.add_term(i, j - 1, c * rat_int(j as i64));
            }
        }
        out
    }

    /// Exact division by `r`; every term must carry a positive power of `r`.
    pub fn div_r(&self) -> Self {
        let mut out = RadialPoly::zero();
        for (i, j, c) in self.terms() {
            assert!(j > 0, "polynomial not divisible by r");
            out.add_term(i, j - 1, c.clone());
        }
        out
    }

    pub fn mul_x0_pow(&self, n: u32) -> Self {
        let mut out = RadialPoly::zero();
        for (i, j, c) in self.terms() {
            out.add_term(i + n, j, c.clone());
        }
        out
    }

    pub fn mul_r_pow(&self, n: u32) -> Self {
        let mut out = RadialPoly::zero();
        for (i, j, c) in self.terms() {
            out.add_term(i, j + n, c.clone());
        }
        out
    }

    /// Exact antiderivative in `x0` with zero constant of integration.
    pub fn antiderivative_x0(&self) -> Self {
        let mut out = RadialPoly::zero();
        for (i, j, c) in self.terms() {
            out.add_term(i + 1, j, c / rat_int((i + 1) as i64));
        }
        out
    }

    /// Exact antiderivative in `r` with zero constant of integration.
    pub fn antiderivative_r(&self) -> Self {
        let mut out = RadialPoly::zero();
        for (i, j, c) in self.terms() {
            out.add_term(i, j + 1, c / rat_int((j + 1) as i64));
        }
        out
    }

    /// Substitute an exact rational value for `r`, leaving a polynomial in
    /// `x0` alone.
    pub fn substitute_r(&self, value: &Rat) -> Self {
        let mut out = RadialPoly::zero();
        for (i, j, c) in self.terms() {
            out.add_term(i, 0, c * rat_pow(value, j));
        }
        out
    }

    /// Substitute an exact rational value for `x0`, leaving a polynomial in
    /// `r` alone.
    pub fn substitute_x0(&self, value: &Rat) -> Self {
        let mut out = RadialPoly::zero();
        for (i, j, c) in self.terms() {
            out.add_term(0, j, c * rat_pow(value, i));
        }
        out
    }

    /// Exact evaluation at a rational point.
    pub fn eval_rat(&self, x0: &Rat, r: &Rat) -> Rat {
        let mut acc = rat_int(0);
        for (i, j, c) in self.terms() {
            acc += c * rat_pow(x0, i) * rat_pow(r, j);
        }
        acc
    }

    /// True when every term has an even power of `r` (vacuously for zero).
    pub fn is_even_in_r(&self) -> bool {
        self.terms.keys().all(|&(_, j)| j % 2 == 0)
    }

    /// True when every term has an odd power of `r` (vacuously for zero).
    pub fn is_odd_in_r(&self) -> bool {
        self.terms.keys().all(|&(_, j)| j % 2 == 1)
    }

    pub fn eval_f64(&self, x0: f64, r: f64) -> f64 {
        let mut acc = 0.0;
        for (i, j, c) in self.terms() {
            acc += rat_to_f64(c) * crate::real::powi(x0, i as i32) * crate::real::powi(r, j as i32);
        }
        acc
    }
}

/// base^n by repeated multiplication; exponents stay small here.
fn rat_pow(base: &Rat, n: u32) -> Rat {
    let mut acc = rat_int(1);
    for _ in 0..n {
        acc *= base;
    }
    acc
}

impl fmt::Display for RadialPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, j, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::new();
            if !c.is_one() || (i == 0 && j == 0) {
                factors.push(format!("{}", c));
            }
            if i > 0 {
                factors.push(if i == 1 {
                    String::from("x0")
                } else {
                    format!("x0^{}", i)
                });
            }
            if j > 0 {
                factors.push(if j == 1 {
                    String::from("r")
                } else {
                    format!("r^{}", j)
                });
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for RadialPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RadialPoly({})", self)
    }
}

impl core::ops::Add for &RadialPoly {
    type Output = RadialPoly;
    fn add(self, rhs: Self) -> RadialPoly {
        self.add_ref(rhs)
    }
}

impl core::ops::Sub for &RadialPoly {
    type Output = RadialPoly;
    fn sub(self, rhs: Self) -> RadialPoly {
        self.sub_ref(rhs)
    }
}

impl core::ops::Mul for &RadialPoly {
    type Output = RadialPoly;
    fn mul(self, rhs: Self) -> RadialPoly {
        self.mul_ref(rhs)
    }
}

impl core::ops::Neg for &RadialPoly {
    type Output = RadialPoly;
    fn neg(self) -> RadialPoly {
        self.neg_ref()
    }
}

/// Polynomial axial form: profiles `(A, B, C, D)` attached to an inner
/// spherical monogenic `P`, representing `A P + B xP + C Px + D xPx`.
/// All four profiles are even in `r`, which is exactly the condition for
/// the assembled expression to be a polynomial in `x`.
#[derive(Clone, Debug)]
pub struct AxialQuadruple {
    p: InnerMonogenic,
    a: RadialPoly,
    b: RadialPoly,
    c: RadialPoly,
    d: RadialPoly,
}

impl AxialQuadruple {
    pub fn new(
        p: InnerMonogenic,
        a: RadialPoly,
        b: RadialPoly,
        c: RadialPoly,
        d: RadialPoly,
    ) -> Self {
        for (name, profile) in [("A", &a), ("B", &b), ("C", &c), ("D", &d)] {
            assert!(
                profile.is_even_in_r(),
                "profile {} must be even in r to assemble to a polynomial",
                name
            );
        }
        AxialQuadruple { p, a, b, c, d }
    }

    pub fn p(&self) -> &InnerMonogenic {
        &self.p
    }

    pub fn a(&self) -> &RadialPoly {
        &self.a
    }

    pub fn b(&self) -> &RadialPoly {
        &self.b
    }

    pub fn c(&self) -> &RadialPoly {
        &self.c
    }

    pub fn d(&self) -> &RadialPoly {
        &self.d
    }

    /// Boundary grades 0 and m, where the four slots become linearly
    /// dependent (`xP = Px` and `xPx = -r^2 P` up to sign) and profile
    /// extraction is no longer unique.
    pub fn is_degenerate(&self) -> bool {
        self.p.is_degenerate_grade()
    }

    /// Two-sided monogenicity forces `C == B`; report whether this quadruple
    /// has that symmetry.
    pub fn is_symmetric(&self) -> bool {
        self.b == self.c
    }

    /// Evaluate the four profiles as complex-valued functions, for feeding
    /// the numeric residual checks shared with non-polynomial examples.
    pub fn to_profiles(&self) -> ProfileQuadruple<'_> {
        fn lift(p: &RadialPoly) -> Profile<'_> {
            Box::new(move |x0, r| Complex64::new(p.eval_f64(x0, r), 0.0))
        }
        ProfileQuadruple {
            a: lift(&self.a),
            b: lift(&self.b),
            c: lift(&self.c),
            d: lift(&self.d),
        }
    }
}

/// Raise a polynomial to a small power by repeated multiplication.
fn poly_pow(base: &P, n: u32) -> P {
    let m = base.dim();
    let mut acc = P::constant(m, Rat::one());
    for _ in 0..n {
        acc = acc.mul_ref(base);
    }
    acc
}

/// Interpret a radial polynomial (necessarily even in `r`) as a scalar-valued
/// `MvPoly` by substituting `r^2 -> |x|^2`.
fn radial_to_scalar_poly(rp: &RadialPoly, m: u32) -> P {
    let norm = P::norm_sq(m);
    let mut out = P::zero(m);
    for (i, j, c) in rp.terms() {
        assert!(j % 2 == 0, "odd power of r cannot embed into a polynomial");
        let term = poly_pow(&norm, j / 2)
            .mul_var_pow(0, i)
            .scale(&c.clone());
        out = out.add_ref(&term);
    }
    out
}

/// Assemble the polynomial `A P + B xP + C Px + D xPx`.
pub fn assemble(q: &AxialQuadruple) -> P {
    let m = q.p.m;
    let x = P::vector_variable(m);
    let p = q.p.poly();
    let xp = x.mul_ref(p);
    let px = p.mul_ref(&x);
    let xpx = xp.mul_ref(&x);
    let mut out = radial_to_scalar_poly(&q.a, m).mul_ref(p);
    out = out.add_ref(&radial_to_scalar_poly(&q.b, m).mul_ref(&xp));
    out = out.add_ref(&radial_to_scalar_poly(&q.c, m).mul_ref(&px));
    out = out.add_ref(&radial_to_scalar_poly(&q.d, m).mul_ref(&xpx));
    out
}

/// Failure report from `extract`: the input is not in the axial span of the
/// given inner monogenic. Carries the least-squares best approximant and the
/// nonzero residual `F - assemble(best)`.
pub struct ExtractError {
    pub best: AxialQuadruple,
    pub residual: P,
}

impl fmt::Debug for ExtractError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "input is not an axial form over the given spherical monogenic; residual {:?}",
            self.residual
        )
    }
}

/// One unknown of the extraction system: which slot it feeds and the
/// exponents of its `x0^i r^(2s)` monomial.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Slot {
    A,
    SymBC,
    B,
    C,
    D,
}

fn slot_unknowns(slot: Slot, cap: i64) -> Vec<(Slot, u32, u32)> {
    let mut out = Vec::new();
    if cap < 0 {
        return out;
    }
    for i in 0..=(cap as u32) {
        let mut s = 0;
        while i + 2 * s <= cap as u32 {
            out.push((slot, i, s));
            s += 1;
        }
    }
    out
}

/// Recover radial profiles from a polynomial known (or suspected) to be an
/// axial form over `p`. The linear system is solved exactly; a symmetric
/// ansatz with `C == B` is tried first so that two-sided inputs get the
/// canonical symmetric profiles even when the slots are degenerate. If no
/// exact representation exists, the error carries the least-squares best
/// quadruple and its residual.
#[allow(clippy::result_large_err)] // the error deliberately carries the best approximant
pub fn extract(f: &P, p: &InnerMonogenic) -> Result<AxialQuadruple, ExtractError> {
    let m = p.m;
    assert_eq!(f.dim(), m, "dimension mismatch");
    if f.is_zero() {
        let z = RadialPoly::zero();
        return Ok(AxialQuadruple::new(
            p.clone(),
            z.clone(),
            z.clone(),
            z.clone(),
            z,
        ));
    }
    let deg = f.total_degree().expect("nonzero polynomial has a degree") as i64;
    let k = p.k as i64;

    let norm = P::norm_sq(m);
    let x = P::vector_variable(m);
    let xp = x.mul_ref(p.poly());
    let px = p.poly().mul_ref(&x);
    let xpx = xp.mul_ref(&x);
    let slot_poly = |slot: Slot| -> P {
        match slot {
            Slot::A => p.poly().clone(),
            Slot::SymBC => xp.add_ref(&px),
            Slot::B => xp.clone(),
            Slot::C => px.clone(),
            Slot::D => xpx.clone(),
        }
    };
    let column_poly = |(slot, i, s): (Slot, u32, u32)| -> P {
        poly_pow(&norm, s).mul_var_pow(0, i).mul_ref(&slot_poly(slot))
    };

    let solve_for = |unknowns: &[(Slot, u32, u32)]| -> Option<Vec<Rat>> {
        let columns: Vec<P> = unknowns.iter().map(|&u| column_poly(u)).collect();
        let (mat, rhs) = coordinate_system(&columns, f);
        solve(&mat, &rhs)
    };

    let sym_unknowns: Vec<(Slot, u32, u32)> = slot_unknowns(Slot::A, deg - k)
        .into_iter()
        .chain(slot_unknowns(Slot::SymBC, deg - k - 1))
        .chain(slot_unknowns(Slot::D, deg - k - 2))
        .collect();
    if let Some(y) = solve_for(&sym_unknowns) {
        return Ok(quadruple_from_solution(p, &sym_unknowns, &y));
    }

    let full_unknowns: Vec<(Slot, u32, u32)> = slot_unknowns(Slot::A, deg - k)
        .into_iter()
        .chain(slot_unknowns(Slot::B, deg - k - 1))
        .chain(slot_unknowns(Slot::C, deg - k - 1))
        .chain(slot_unknowns(Slot::D, deg - k - 2))
        .collect();
    if let Some(y) = solve_for(&full_unknowns) {
        return Ok(quadruple_from_solution(p, &full_unknowns, &y));
    }

    // No exact representation: minimize the coordinate residual exactly via
    // the normal equations, which are always consistent over the rationals.
    let columns: Vec<P> = full_unknowns.iter().map(|&u| column_poly(u)).collect();
    let (mat, rhs) = coordinate_system(&columns, f);
    let n = columns.len();
    let ata = QMat::from_fn(n, n, |i, j| {
        let mut acc = Rat::zero();
        for row in 0..mat.nrows() {
            acc += mat.get(row, i) * mat.get(row, j);
        }
        acc
    });
    let atb: Vec<Rat> = (0..n)
        .map(|i| {
            let mut acc = Rat::zero();
            for row in 0..mat.nrows() {
                acc += mat.get(row, i) * &rhs[row];
            }
            acc
        })
        .collect();
    let y = solve(&ata, &atb).expect("normal equations are always consistent");
    let best = quadruple_from_solution(p, &full_unknowns, &y);
    let residual = f.sub_ref(&assemble(&best));
    Err(ExtractError { best, residual })
}

/// Coordinatize `columns` and `rhs` over the union of their
/// (monomial, blade) supports.
fn coordinate_system(columns: &[P], rhs_poly: &P) -> (QMat, Vec<Rat>) {
    let mut row_index: BTreeMap<(Vec<u32>, u32), usize> = BTreeMap::new();
    let mut index_of = |exp: &Vec<u32>, blade: u32, rows: &mut usize| {
        let key = (exp.clone(), blade);
        *row_index.entry(key).or_insert_with(|| {
            let idx = *rows;
            *rows += 1;
            idx
        })
    };
    let mut rows = 0usize;
    let mut entries: Vec<Vec<(usize, Rat)>> = Vec::with_capacity(columns.len());
    for col in columns {
        let mut colmap = Vec::new();
        for (exp, mv) in col.terms() {
            for (blade, coef) in mv.terms() {
                let idx = index_of(exp, blade, &mut rows);
                colmap.push((idx, coef.clone()));
            }
        }
        entries.push(colmap);
    }
    let mut rhs_entries = Vec::new();
    for (exp, mv) in rhs_poly.terms() {
        for (blade, coef) in mv.terms() {
            let idx = index_of(exp, blade, &mut rows);
            rhs_entries.push((idx, coef.clone()));
        }
    }
    let mut mat = QMat::zeros(rows, columns.len());
    for (j, colmap) in entries.iter().enumerate() {
        for (i, coef) in colmap {
            mat.set(*i, j, coef.clone());
        }
    }
    let mut rhs = vec![Rat::zero(); rows];
    for (i, coef) in rhs_entries {
        rhs[i] = coef;
    }
    (mat, rhs)
}

fn quadruple_from_solution(
    p: &InnerMonogenic,
    unknowns: &[(Slot, u32, u32)],
    y: &[Rat],
) -> AxialQuadruple {
    let mut a = RadialPoly::zero();
    let mut b = RadialPoly::zero();
    let mut c = RadialPoly::zero();
    let mut d = RadialPoly::zero();
    for (&(slot, i, s), coef) in unknowns.iter().zip(y) {
        if coef.is_zero() {
            continue;
        }
        match slot {
            Slot::A => a.add_term(i, 2 * s, coef.clone()),
            Slot::SymBC => {
                b.add_term(i, 2 * s, coef.clone());
                c.add_term(i, 2 * s, coef.clone());
            }
            Slot::B => b.add_term(i, 2 * s, coef.clone()),
            Slot::C => c.add_term(i, 2 * s, coef.clone()),
            Slot::D => d.add_term(i, 2 * s, coef.clone()),
        }
    }
    AxialQuadruple::new(p.clone(), a, b, c, d)
}

/// Residuals of the first-order system characterizing two-sided monogenicity
/// of an axial form, as exact polynomials. The five entries are
///
/// 1. `d/dx0 A - r d/dr B - (2k+m-mu) B`
/// 2. `d/dx0 B + (1/r) d/dr A - mu D`
/// 3. `d/dx0 B - r d/dr D - (2k+m+2) D`
/// 4. `d/dx0 D + (1/r) d/dr B`
/// 5. `C - B`
///
/// For grades 0 < ell < m the assembled polynomial is two-sided monogenic
/// exactly when all five vanish identically; for the boundary grades the
/// vanishing is still sufficient.
pub fn vekua_two_sided_residual(q: &AxialQuadruple) -> [RadialPoly; 5] {
    let k = q.p.k;
    let m = q.p.m;
    let mu_l = mu(q.p.ell, m);
    let c1 = rat_int(2 * k as i64 + m as i64) - &mu_l;
    let c3 = rat_int(2 * k as i64 + m as i64 + 2);
    let r1 = q
        .a
        .partial_x0()
        .sub_ref(&q.b.partial_r().mul_r_pow(1))
        .sub_ref(&q.b.scale(&c1));
    let r2 = q
        .b
        .partial_x0()
        .add_ref(&q.a.partial_r().div_r())
        .sub_ref(&q.d.scale(&mu_l));
    let r3 = q
        .b
        .partial_x0()
        .sub_ref(&q.d.partial_r().mul_r_pow(1))
        .sub_ref(&q.d.scale(&c3));
    let r4 = q.d.partial_x0().add_ref(&q.b.partial_r().div_r());
    let r5 = q.c.sub_ref(&q.b);
    [r1, r2, r3, r4, r5]
}

/// Residuals of the Vekua system for axial left monogenicity of
/// `(M + (x/r) N) P`: `d/dx0 M - d/dr N - ((2k+m-1)/r) N` and
/// `d/dr M + d/dx0 N`. `M` must be even and `N` odd in `r` (so that `N/r`
/// stays polynomial).
pub fn vekua_left_residual(mm: &RadialPoly, nn: &RadialPoly, k: u32, m: u32) -> [RadialPoly; 2] {
    assert!(mm.is_even_in_r(), "M profile must be even in r");
    assert!(nn.is_odd_in_r(), "N profile must be odd in r");
    let c = rat_int(2 * k as i64 + m as i64 - 1);
    let l1 = mm
        .partial_x0()
        .sub_ref(&nn.partial_r())
        .sub_ref(&nn.div_r().scale(&c));
    let l2 = mm.partial_r().add_ref(&nn.partial_x0());
    [l1, l2]
}

/// A radial profile as a numeric function of `(x0, r)`. Complex values
/// because the plane-wave integrals produce complex profiles.
pub type Profile<'a> = Box<dyn Fn(f64, f64) -> Complex64 + 'a>;

/// Numeric counterpart of `AxialQuadruple` for profiles that are not
/// polynomial (Bessel-type examples).
pub struct ProfileQuadruple<'a> {
    pub a: Profile<'a>,
    pub b: Profile<'a>,
    pub c: Profile<'a>,
    pub d: Profile<'a>,
}

/// Central difference with one Richardson extrapolation step, complex values.
fn diff_complex(f: impl Fn(f64) -> Complex64, t: f64) -> Complex64 {
    crate::numeric::central_diff_complex(f, t, FD_STEP)
}

/// Numeric residuals of the two-sided system at one point, using central
/// differences on the profiles. `r` must be positive.
pub fn vekua_two_sided_residual_numeric(
    q: &ProfileQuadruple<'_>,
    k: u32,
    ell: u32,
    m: u32,
    x0: f64,
    r: f64,
) -> [Complex64; 5] {
    assert!(r > 0.0, "radial variable must be positive");
    let mu_l = mu_i64(ell, m) as f64;
    let c1 = (2 * k + m) as f64 - mu_l;
    let c3 = (2 * k + m + 2) as f64;
    let da_dx0 = diff_complex(|t| (q.a)(t, r), x0);
    let da_dr = diff_complex(|t| (q.a)(x0, t), r);
    let db_dx0 = diff_complex(|t| (q.b)(t, r), x0);
    let db_dr = diff_complex(|t| (q.b)(x0, t), r);
    let dd_dx0 = diff_complex(|t| (q.d)(t, r), x0);
    let dd_dr = diff_complex(|t| (q.d)(x0, t), r);
    [
        da_dx0 - db_dr * r - (q.b)(x0, r) * c1,
        db_dx0 + da_dr / r - (q.d)(x0, r) * mu_l,
        db_dx0 - dd_dr * r - (q.d)(x0, r) * c3,
        dd_dx0 + db_dr / r,
        (q.c)(x0, r) - (q.b)(x0, r),
    ]
}

/// Evaluate the axial form with given numeric profile values
/// `(A, B, C, D)` at the point `x`, i.e. `A P(x) + B xP(x) + C P(x)x +
/// D xP(x)x` in the complexified algebra.
pub fn axial_eval(
    p: &InnerMonogenic,
    vals: &[Complex64; 4],
    x: &[f64],
) -> crate::clifford::Multivector<Complex64> {
    let m = p.m;
    assert_eq!(x.len(), m as usize, "point has wrong dimension");
    let mut point = Vec::with_capacity(m as usize + 1);
    point.push(Complex64::zero());
    point.extend(x.iter().map(|&v| Complex64::new(v, 0.0)));
    let pv = p.poly().to_complex_poly().eval(&point);
    let xv = crate::clifford::Multivector::from_terms(
        m,
        (1..=m).map(|j| (1u32 << (j - 1), Complex64::new(x[(j - 1) as usize], 0.0))),
    );
    let xp = xv.geo_mul(&pv);
    let px = pv.geo_mul(&xv);
    let xpx = xp.geo_mul(&xv);
    pv.scale(&vals[0])
        .add_ref(&xp.scale(&vals[1]))
        .add_ref(&px.scale(&vals[2]))
        .add_ref(&xpx.scale(&vals[3]))
}

/// Numeric residuals of the left Vekua system at one point.
pub fn vekua_left_residual_numeric(
    mm: &Profile<'_>,
    nn: &Profile<'_>,
    k: u32,
    m: u32,
    x0: f64,
    r: f64,
) -> [Complex64; 2] {
    assert!(r > 0.0, "radial variable must be positive");
    let c = (2 * k + m - 1) as f64;
    let dm_dx0 = diff_complex(|t| mm(t, r), x0);
    let dm_dr = diff_complex(|t| mm(x0, t), r);
    let dn_dx0 = diff_complex(|t| nn(t, r), x0);
    let dn_dr = diff_complex(|t| nn(x0, t), r);
    [dm_dx0 - dn_dr - nn(x0, r) * (c / r), dm_dr + dn_dx0]
}

/// Coefficient of the first block family:
/// `-(2k + 2n + m - mu_ell) / (2n)` for `n >= 1`.
pub fn block_first_coefficient(m: u32, k: u32, ell: u32, n: u32) -> Rat {
    assert!(n >= 1, "first family starts at n = 1");
    let num = rat_int(2 * k as i64 + 2 * n as i64 + m as i64) - mu(ell, m);
    -num / rat_int(2 * n as i64)
}

/// First family of axial two-sided building blocks: the CK extension of
/// `alpha |x|^(2n) P + |x|^(2n-2) xPx`, homogeneous of degree `k + 2n`.
pub fn block_first(p: &InnerMonogenic, n: u32) -> P {
    assert!(n >= 1, "first family starts at n = 1; use P itself for n = 0");
    let m = p.m;
    let alpha = block_first_coefficient(m, p.k, p.ell, n);
    let norm = P::norm_sq(m);
    let x = P::vector_variable(m);
    let xpx = x.mul_ref(p.poly()).mul_ref(&x);
    let seed = poly_pow(&norm, n)
        .scale(&alpha)
        .mul_ref(p.poly())
        .add_ref(&poly_pow(&norm, n - 1).mul_ref(&xpx));
    ck_two_sided(&seed).expect("first-family seed commutes with the Dirac operator")
}

/// Second family of axial two-sided building blocks: the CK extension of
/// `|x|^(2n) (xP + Px)`, homogeneous of degree `k + 2n + 1`.
pub fn block_second(p: &InnerMonogenic, n: u32) -> P {
    let m = p.m;
    let norm = P::norm_sq(m);
    let x = P::vector_variable(m);
    let xp = x.mul_ref(p.poly());
    let px = p.poly().mul_ref(&x);
    let seed = poly_pow(&norm, n).mul_ref(&xp.add_ref(&px));
    ck_two_sided(&seed).expect("second-family seed commutes with the Dirac operator")
}

/// The Dirac operator pushed through the axial form: if
/// `F = A P + B xP + C Px + D xPx` then `dirac F` is the axial form with
/// profiles returned here. Derived from the product rules for
/// `dirac(|x|^(2s) P)`, `dirac(|x|^(2s) xP)`, and their right-handed twins.
fn profile_dirac(
    a: &RadialPoly,
    b: &RadialPoly,
    c: &RadialPoly,
    d: &RadialPoly,
    k: u32,
    ell: u32,
    m: u32,
) -> (RadialPoly, RadialPoly, RadialPoly, RadialPoly) {
    let mu_l = mu(ell, m);
    let c_a = rat_int(2 * k as i64 + m as i64);
    let c_c = rat_int(2 * k as i64 + m as i64 + 2);
    let a_out = b
        .scale(&-&c_a)
        .sub_ref(&b.partial_r().mul_r_pow(1))
        .add_ref(&c.scale(&mu_l));
    let b_out = a.partial_r().div_r().sub_ref(&d.scale(&mu_l));
    let c_out = d.scale(&-&c_c).sub_ref(&d.partial_r().mul_r_pow(1));
    let d_out = c.partial_r().div_r();
    (a_out, b_out, c_out, d_out)
}

/// CK extension computed entirely in profile space: starting from x0-free
/// profiles, alternate the pushed-through Dirac operator with multiplication
/// by `-x0/s`, mirroring the series `sum_s (-x0)^s dirac^s / s!`.
fn profile_ck(
    p: &InnerMonogenic,
    seed: (RadialPoly, RadialPoly, RadialPoly, RadialPoly),
) -> AxialQuadruple {
    let (mut ta, mut tb, mut tc, mut td) = seed;
    let mut sum = (ta.clone(), tb.clone(), tc.clone(), td.clone());
    let mut s = 1u32;
    while !(ta.is_zero() && tb.is_zero() && tc.is_zero() && td.is_zero()) {
        assert!(s < 10_000, "profile CK series failed to terminate");
        let (na, nb, nc, nd) = profile_dirac(&ta, &tb, &tc, &td, p.k, p.ell, p.m);
        let factor = -Rat::one() / rat_int(s as i64);
        ta = na.mul_x0_pow(1).scale(&factor);
        tb = nb.mul_x0_pow(1).scale(&factor);
        tc = nc.mul_x0_pow(1).scale(&factor);
        td = nd.mul_x0_pow(1).scale(&factor);
        sum = (
            sum.0.add_ref(&ta),
            sum.1.add_ref(&tb),
            sum.2.add_ref(&tc),
            sum.3.add_ref(&td),
        );
        s += 1;
    }
    AxialQuadruple::new(p.clone(), sum.0, sum.1, sum.2, sum.3)
}

/// Closed profile form of `block_first`: the same polynomial as
/// `assemble(block_first_quadruple(..)) == block_first(..)`, but computed by
/// the profile-space CK series from the seed
/// `(alpha r^(2n), 0, 0, r^(2n-2))`.
pub fn block_first_quadruple(p: &InnerMonogenic, n: u32) -> AxialQuadruple {
    assert!(n >= 1, "first family starts at n = 1");
    let alpha = block_first_coefficient(p.m, p.k, p.ell, n);
    profile_ck(
        p,
        (
            RadialPoly::monomial(0, 2 * n, alpha),
            RadialPoly::zero(),
            RadialPoly::zero(),
            RadialPoly::monomial(0, 2 * n - 2, Rat::one()),
        ),
    )
}

/// Closed profile form of `block_second`, from the seed
/// `(0, r^(2n), r^(2n), 0)`.
pub fn block_second_quadruple(p: &InnerMonogenic, n: u32) -> AxialQuadruple {
    profile_ck(
        p,
        (
            RadialPoly::zero(),
            RadialPoly::monomial(0, 2 * n, Rat::one()),
            RadialPoly::monomial(0, 2 * n, Rat::one()),
            RadialPoly::zero(),
        ),
    )
}

/// Coefficient attached to the grade-ell term of an even step `n` in the
/// decomposition of a degree-k two-sided monogenic:
/// `-(2k + m - n - mu_ell) / n`. Coincides with `block_first_coefficient`
/// of the degree-(k-n) constituent at depth n/2.
pub fn decomposition_coefficient(m: u32, k: u32, ell: u32, n: u32) -> Rat {
    assert!(n >= 2 && n.is_multiple_of(2), "even steps start at n = 2");
    assert!(n <= k, "step exceeds the degree");
    let num = rat_int(2 * k as i64 + m as i64 - n as i64) - mu(ell, m);
    -num / rat_int(n as i64)
}

/// The restriction to x0 = 0 of the block generated by constituent `s` at
/// step `n` of a degree-k decomposition. Linear in `s`.
fn decomposition_seed(s: &P, n: u32, k: u32) -> P {
    let m = s.dim();
    if n == 0 {
        return s.clone();
    }
    let norm = P::norm_sq(m);
    let x = P::vector_variable(m);
    if n % 2 == 1 {
        let sym = x.mul_ref(s).add_ref(&s.mul_ref(&x));
        poly_pow(&norm, (n - 1) / 2).mul_ref(&sym)
    } else {
        let xsx = x.mul_ref(s).mul_ref(&x);
        let mut out = poly_pow(&norm, (n - 2) / 2).mul_ref(&xsx);
        for ell in s.grades() {
            let lam = decomposition_coefficient(m, k, ell, n);
            let part = s.grade_project_coeffs(ell);
            out = out.add_ref(&poly_pow(&norm, n / 2).mul_ref(&part).scale(&lam));
        }
        out
    }
}

/// Decompose a homogeneous two-sided monogenic polynomial of degree `k` into
/// constituents `S_(k-n)`, one inner two-sided monogenic per step
/// `n = 0..=k`, such that the input equals the sum of the CK blocks those
/// constituents generate (`assemble_decomposition` rebuilds it). Solved
/// exactly on the restriction to x0 = 0; free coordinates are set to zero,
/// so the answer is deterministic even though constituents are not unique.
pub fn decompose_two_sided(f: &P) -> Vec<P> {
    assert!(!f.is_zero(), "cannot decompose the zero polynomial");
    assert!(f.is_homogeneous(), "input must be homogeneous");
    assert!(
        f.cr_left().is_zero() && f.cr_right().is_zero(),
        "input must be two-sided monogenic"
    );
    let m = f.dim();
    let k = f.total_degree().expect("nonzero polynomial has a degree");
    let g = f.restrict_x0_zero();

    let mut owners: Vec<(u32, usize)> = Vec::new();
    let mut columns: Vec<P> = Vec::new();
    let mut bases: Vec<Vec<InnerMonogenic>> = Vec::new();
    for n in 0..=k {
        let basis = two_sided_monogenic_basis(m, k - n);
        for (idx, elem) in basis.iter().enumerate() {
            owners.push((n, idx));
            columns.push(decomposition_seed(elem.poly(), n, k));
        }
        bases.push(basis);
    }
    let (mat, rhs) = coordinate_system(&columns, &g);
    let y = solve(&mat, &rhs)
        .expect("every two-sided monogenic polynomial decomposes into axial blocks");

    let mut components = vec![P::zero(m); k as usize + 1];
    for ((n, idx), coef) in owners.into_iter().zip(&y) {
        if coef.is_zero() {
            continue;
        }
        let piece = bases[n as usize][idx].poly().scale(coef);
        components[n as usize] = components[n as usize].add_ref(&piece);
    }
    components
}

/// Rebuild the two-sided monogenic polynomial from decomposition
/// constituents: entry `n` holds `S_(k-n)` where `k = len - 1`.
pub fn assemble_decomposition(components: &[P]) -> P {
    assert!(!components.is_empty());
    let m = components[0].dim();
    let k = (components.len() - 1) as u32;
    let mut out = P::zero(m);
    for (n, s) in components.iter().enumerate() {
        if s.is_zero() {
            continue;
        }
        let seed = decomposition_seed(s, n as u32, k);
        let block =
            ck_two_sided(&seed).expect("decomposition seeds commute with the Dirac operator");
        out = out.add_ref(&block);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::spherical::inner_monogenic_basis;

    // The constant polynomial e_1 as an inner monogenic of degree 0, grade 1.
    fn e1_constant(m: u32) -> InnerMonogenic {
        let mv = crate::clifford::Multivector::basis_vector(m, 1);
        InnerMonogenic::new(m, 0, 1, P::from_multivector(mv))
    }

    // x2 e1 + x1 e2: degree 1, grade 1, monogenic from both sides.
    fn degree_one_p(m: u32) -> InnerMonogenic {
        let e1 = P::from_multivector(crate::clifford::Multivector::basis_vector(m, 1));
        let e2 = P::from_multivector(crate::clifford::Multivector::basis_vector(m, 2));
        let poly = P::variable(m, 2)
            .mul_ref(&e1)
            .add_ref(&P::variable(m, 1).mul_ref(&e2));
        InnerMonogenic::new(m, 1, 1, poly)
    }

    fn rp(terms: &[(u32, u32, i64, i64)]) -> RadialPoly {
        let mut p = RadialPoly::zero();
        for &(i, j, n, d) in terms {
            p.add_term(i, j, rat(n, d));
        }
        p
    }

    #[test]
    fn radial_arithmetic_and_derivatives() {
        let s = rp(&[(1, 0, 1, 1), (0, 2, 1, 1)]); // x0 + r^2
        let t = rp(&[(1, 0, 1, 1), (0, 2, -1, 1)]); // x0 - r^2
        let prod = s.mul_ref(&t);
        assert_eq!(prod, rp(&[(2, 0, 1, 1), (0, 4, -1, 1)]));
        assert_eq!(prod.partial_x0(), rp(&[(1, 0, 2, 1)]));
        assert_eq!(prod.partial_r(), rp(&[(0, 3, -4, 1)]));
        assert_eq!(prod.partial_r().div_r(), rp(&[(0, 2, -4, 1)]));
        assert!(prod.is_even_in_r());
        assert!(!prod.partial_r().is_even_in_r());
        assert!(prod.partial_r().is_odd_in_r());
        assert_eq!(prod.eval_f64(2.0, 1.0), 3.0);
        assert_eq!(s.sub_ref(&s), RadialPoly::zero());
        assert_eq!(&s + &t, rp(&[(1, 0, 2, 1)]));
    }

    #[test]
    #[should_panic(expected = "not divisible by r")]
    fn radial_div_r_requires_divisibility() {
        let _ = RadialPoly::one().div_r();
    }

    #[test]
    #[should_panic(expected = "even in r")]
    fn quadruple_rejects_odd_profiles() {
        let p = e1_constant(3);
        let odd = rp(&[(0, 1, 1, 1)]);
        let z = RadialPoly::zero();
        let _ = AxialQuadruple::new(p, odd, z.clone(), z.clone(), z);
    }

    #[test]
    fn assemble_identity_profile_gives_p() {
        let p = e1_constant(3);
        let z = RadialPoly::zero();
        let q = AxialQuadruple::new(p.clone(), RadialPoly::one(), z.clone(), z.clone(), z);
        assert_eq!(assemble(&q), p.poly().clone());
    }

    #[test]
    fn first_family_coefficient_pin() {
        // m=3, k=0, ell=1, n=1: -(0 + 2 + 3 - 1)/2 = -2
        assert_eq!(block_first_coefficient(3, 0, 1, 1), rat_int(-2));
        // m=2, k=1, ell=1, n=2: mu_1 = 0, -(2 + 4 + 2)/4 = -2
        assert_eq!(block_first_coefficient(2, 1, 1, 2), rat_int(-2));
    }

    #[test]
    fn assemble_first_block_restriction() {
        // A = alpha r^2, D = 1 at x0 = 0 assembles to alpha |x|^2 P + xPx.
        let p = e1_constant(3);
        let alpha = block_first_coefficient(3, 0, 1, 1);
        let q = AxialQuadruple::new(
            p.clone(),
            RadialPoly::monomial(0, 2, alpha.clone()),
            RadialPoly::zero(),
            RadialPoly::zero(),
            RadialPoly::one(),
        );
        let norm = P::norm_sq(3);
        let x = P::vector_variable(3);
        let expected = norm
            .scale(&alpha)
            .mul_ref(p.poly())
            .add_ref(&x.mul_ref(p.poly()).mul_ref(&x));
        assert_eq!(assemble(&q), expected);
        assert_eq!(block_first(&p, 1).restrict_x0_zero(), expected);
    }

    #[test]
    fn block_second_n0_matches_hand_computation() {
        // m=3, k=0, P=e1: seed xe1 + e1x = -2 x1, CK adds 2 x0 e1.
        let p = e1_constant(3);
        let block = block_second(&p, 0);
        let expected = P::variable(3, 1)
            .scale(&rat_int(-2))
            .add_ref(&p.poly().mul_var_pow(0, 1).scale(&rat_int(2)));
        assert_eq!(block, expected);
    }

    #[test]
    fn blocks_are_two_sided_and_restrict_to_seeds() {
        // At a pseudoscalar grade in even dimension the seeds collapse:
        // xP + Px == 0 and xPx == |x|^2 P with alpha == -1, so the blocks
        // are legitimately zero there. Everywhere else they are homogeneous
        // of the expected degree. Both cases must restrict to the seed.
        for m in [2u32, 3] {
            for k in 0..=1 {
                for ell in 0..=m {
                    for p in inner_monogenic_basis(m, k, ell) {
                        let norm = P::norm_sq(m);
                        let x = P::vector_variable(m);
                        let xpx = x.mul_ref(p.poly()).mul_ref(&x);
                        for n in 1..=2 {
                            let f = block_first(&p, n);
                            assert!(f.cr_left().is_zero() && f.cr_right().is_zero());
                            let alpha = block_first_coefficient(m, k, ell, n);
                            let seed = poly_pow(&norm, n)
                                .scale(&alpha)
                                .mul_ref(p.poly())
                                .add_ref(&poly_pow(&norm, n - 1).mul_ref(&xpx));
                            assert_eq!(f.restrict_x0_zero(), seed);
                            if seed.is_zero() {
                                assert!(f.is_zero());
                            } else {
                                assert!(f.is_homogeneous());
                                assert_eq!(f.total_degree(), Some(k + 2 * n));
                            }
                        }
                        let anti = x
                            .mul_ref(p.poly())
                            .add_ref(&p.poly().mul_ref(&x));
                        for n in 0..=1 {
                            let f = block_second(&p, n);
                            assert!(f.cr_left().is_zero() && f.cr_right().is_zero());
                            let seed = poly_pow(&norm, n).mul_ref(&anti);
                            assert_eq!(f.restrict_x0_zero(), seed);
                            if seed.is_zero() {
                                assert!(f.is_zero());
                            } else {
                                assert_eq!(f.total_degree(), Some(k + 2 * n + 1));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn profile_ck_matches_polynomial_ck() {
        // The profile-space series and the full polynomial CK extension are
        // independent routes to the same blocks.
        for m in [2u32, 3] {
            for k in 0..=1 {
                for ell in 0..=m {
                    for p in inner_monogenic_basis(m, k, ell) {
                        for n in 1..=2 {
                            let q = block_first_quadruple(&p, n);
                            assert_eq!(assemble(&q), block_first(&p, n));
                        }
                        for n in 0..=1 {
                            let q = block_second_quadruple(&p, n);
                            assert_eq!(assemble(&q), block_second(&p, n));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn block_quadruples_satisfy_two_sided_system() {
        for m in [2u32, 3] {
            for k in 0..=1 {
                for ell in 0..=m {
                    for p in inner_monogenic_basis(m, k, ell) {
                        for q in [
                            block_first_quadruple(&p, 1),
                            block_first_quadruple(&p, 2),
                            block_second_quadruple(&p, 0),
                            block_second_quadruple(&p, 1),
                        ] {
                            for res in vekua_two_sided_residual(&q) {
                                assert!(res.is_zero(), "nonzero residual {}", res);
                            }
                            assert!(q.is_symmetric());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn constant_profile_quadruple_is_two_sided() {
        // A = 1, B = C = D = 0: all residuals vanish for any k.
        let p = e1_constant(3);
        let z = RadialPoly::zero();
        let q = AxialQuadruple::new(p, RadialPoly::one(), z.clone(), z.clone(), z);
        for res in vekua_two_sided_residual(&q) {
            assert!(res.is_zero());
        }
    }

    #[test]
    fn extract_identity_profile() {
        let p = e1_constant(3);
        let q = extract(p.poly(), &p).unwrap();
        assert_eq!(q.a(), &RadialPoly::one());
        assert!(q.b().is_zero() && q.c().is_zero() && q.d().is_zero());
    }

    #[test]
    fn extract_round_trips_blocks() {
        for m in [2u32, 3] {
            for k in 0..=1 {
                for ell in 0..=m {
                    for p in inner_monogenic_basis(m, k, ell) {
                        let qs = [
                            block_first_quadruple(&p, 1),
                            block_second_quadruple(&p, 0),
                            block_second_quadruple(&p, 1),
                        ];
                        for q in qs {
                            let f = assemble(&q);
                            let recovered = extract(&f, &p).unwrap();
                            assert_eq!(assemble(&recovered), f);
                            assert!(recovered.is_symmetric());
                            if !p.is_degenerate_grade() {
                                // Slots are independent; profiles are unique.
                                assert_eq!(recovered.a(), q.a());
                                assert_eq!(recovered.b(), q.b());
                                assert_eq!(recovered.c(), q.c());
                                assert_eq!(recovered.d(), q.d());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn extract_rejects_non_axial_input() {
        // x1 e2 is not axial over P = e1 in m = 2.
        let p = e1_constant(2);
        let f = P::variable(2, 1)
            .mul_ref(&P::from_multivector(crate::clifford::Multivector::basis_vector(2, 2)));
        let err = extract(&f, &p).unwrap_err();
        assert!(!err.residual.is_zero());
        // The least-squares split is exact: best + residual == f.
        assert_eq!(assemble(&err.best).add_ref(&err.residual), f);
    }

    #[test]
    fn left_vekua_residual_pins() {
        // (M, N) = (1, 0): axial left monogenic (constants).
        let res = vekua_left_residual(&RadialPoly::one(), &RadialPoly::zero(), 0, 3);
        assert!(res[0].is_zero() && res[1].is_zero());
        // (M, N) = (x0, r): first residual is the constant -(2k+m-1).
        for (k, m) in [(0u32, 2u32), (1, 3), (2, 5)] {
            let res = vekua_left_residual(
                &rp(&[(1, 0, 1, 1)]),
                &rp(&[(0, 1, 1, 1)]),
                k,
                m,
            );
            assert_eq!(
                res[0],
                RadialPoly::constant(rat_int(-(2 * k as i64 + m as i64 - 1)))
            );
            assert!(res[1].is_zero());
        }
    }

    #[test]
    fn numeric_residuals_agree_with_exact_zero() {
        let p = degree_one_p(3);
        let q = block_first_quadruple(&p, 2);
        let profiles = q.to_profiles();
        for (x0, r) in [(0.3, 0.7), (-1.1, 1.9), (2.0, 0.25)] {
            let res = vekua_two_sided_residual_numeric(&profiles, p.k, p.ell, p.m, x0, r);
            for v in res {
                assert!(v.norm() < 1e-8, "residual {} at ({}, {})", v, x0, r);
            }
        }
    }

    #[test]
    fn numeric_residuals_detect_violations() {
        // (M, N) = (x0, r) fails the left system by the pinned constant.
        let mm: Profile<'_> = Box::new(|x0, _| Complex64::new(x0, 0.0));
        let nn: Profile<'_> = Box::new(|_, r| Complex64::new(r, 0.0));
        let res = vekua_left_residual_numeric(&mm, &nn, 1, 3, 0.4, 1.5);
        assert!((res[0].re - (-4.0)).abs() < 1e-9);
        assert!(res[0].im.abs() < 1e-12 && res[1].norm() < 1e-9);
    }

    #[test]
    fn single_coefficient_mutations_break_the_system() {
        let p = degree_one_p(3);
        let q = block_first_quadruple(&p, 1);
        let slots: [&RadialPoly; 4] = [q.a(), q.b(), q.c(), q.d()];
        for (slot_idx, profile) in slots.iter().enumerate() {
            for (i, j, _) in profile.terms() {
                let bump = RadialPoly::monomial(i, j, rat_int(1));
                let mutated = AxialQuadruple::new(
                    p.clone(),
                    if slot_idx == 0 { q.a().add_ref(&bump) } else { q.a().clone() },
                    if slot_idx == 1 { q.b().add_ref(&bump) } else { q.b().clone() },
                    if slot_idx == 2 { q.c().add_ref(&bump) } else { q.c().clone() },
                    if slot_idx == 3 { q.d().add_ref(&bump) } else { q.d().clone() },
                );
                let broken = vekua_two_sided_residual(&mutated)
                    .iter()
                    .any(|r| !r.is_zero());
                assert!(
                    broken,
                    "perturbing slot {} at ({}, {}) left all residuals zero",
                    slot_idx, i, j
                );
                // And the mutated polynomial really is no longer two-sided.
                let f = assemble(&mutated);
                assert!(!f.cr_left().is_zero() || !f.cr_right().is_zero());
            }
        }
    }

    #[test]
    fn constant_shift_of_a_is_the_residual_kernel() {
        // Adding a constant to A adds c P, which is itself two-sided
        // monogenic: the only single-coefficient mutation that keeps all
        // residuals zero.
        let p = degree_one_p(3);
        let q = block_first_quadruple(&p, 1);
        let shifted = AxialQuadruple::new(
            p.clone(),
            q.a().add_ref(&RadialPoly::constant(rat(7, 3))),
            q.b().clone(),
            q.c().clone(),
            q.d().clone(),
        );
        for res in vekua_two_sided_residual(&shifted) {
            assert!(res.is_zero());
        }
        let f = assemble(&shifted);
        assert!(f.cr_left().is_zero() && f.cr_right().is_zero());
    }

    #[test]
    fn decomposition_coefficient_matches_block_coefficient() {
        // lambda at step n of a degree-k decomposition equals alpha of the
        // degree-(k-n) constituent at depth n/2.
        for m in 2..=4u32 {
            for k in 2..=4u32 {
                for n in (2..=k).step_by(2) {
                    for ell in 0..=m {
                        assert_eq!(
                            decomposition_coefficient(m, k, ell, n),
                            block_first_coefficient(m, k - n, ell, n / 2)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn decompose_inner_monogenic_is_step_zero() {
        let p = degree_one_p(3);
        let comps = decompose_two_sided(p.poly());
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0], p.poly().clone());
        assert!(comps[1].is_zero());
        assert_eq!(assemble_decomposition(&comps), p.poly().clone());
    }

    #[test]
    fn decompose_round_trips_blocks_and_combinations() {
        let p0 = e1_constant(3);
        // Degree 2: first-family block over a degree-0 constituent.
        let f = block_first(&p0, 1);
        let comps = decompose_two_sided(&f);
        assert_eq!(assemble_decomposition(&comps), f);

        // Degree 1: second-family block over a degree-0 constituent.
        let g = block_second(&p0, 0);
        let comps = decompose_two_sided(&g);
        assert_eq!(assemble_decomposition(&comps), g);

        // A rational mixture of blocks of equal total degree 3.
        let p1 = degree_one_p(3);
        let mix = block_second(&p0, 1)
            .scale(&rat(3, 2))
            .add_ref(&block_first(&p1, 1).scale(&rat(-5, 7)));
        assert!(mix.cr_left().is_zero() && mix.cr_right().is_zero());
        let comps = decompose_two_sided(&mix);
        assert_eq!(assemble_decomposition(&comps), mix);
        // Constituents are themselves inner two-sided monogenics.
        for (n, s) in comps.iter().enumerate() {
            if !s.is_zero() {
                assert!(s.is_x0_free());
                assert_eq!(s.total_degree(), Some(3 - n as u32));
                assert!(s.dirac_left().is_zero() && s.dirac_right().is_zero());
            }
        }
    }

    #[test]
    #[should_panic(expected = "two-sided monogenic")]
    fn decompose_rejects_non_monogenic_input() {
        let f = P::variable(3, 1); // x1 alone is not monogenic
        let _ = decompose_two_sided(&f);
    }
}
