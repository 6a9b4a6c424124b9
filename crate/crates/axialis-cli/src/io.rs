//! JSON and LaTeX serialization for the exact objects.
//!
//! Schemas:
//! - Multivector: `{"m":3,"terms":[{"blade":[1,2],"coef":{"num":"1","den":"2"}}]}`
//!   with strictly increasing 1-indexed blade lists (the empty list is the
//!   scalar blade). Complex coefficients use `{"re":"…","im":"…"}` with decimal
//!   strings carrying 17 significant digits so doubles round-trip exactly.
//! - Polynomial: `{"m":3,"terms":[{"exp":[0,1,0,0],"coef":<Multivector>}]}`,
//!   where `exp` has length m+1 and `exp[0]` is the x0 exponent.
//! - Radial profile: `{"terms":[{"exp":[i,j],"coef":{"num":"…","den":"…"}}]}`
//!   for polynomials in (x0, r).
//! - Axial quadruple: `{"m":…,"k":…,"ell":…,"p":<Polynomial>,"a":<Radial>,…}`.
//!
//! All printers emit terms in a fixed sorted order so equal objects always
//! serialize to identical bytes.

use std::str::FromStr;

use anyhow::{bail, ensure, Context, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use axialis_core::axial::{AxialQuadruple, RadialPoly};
use axialis_core::spherical::InnerMonogenic;
use axialis_core::{Multivector, MvPoly, Rat};

/// One coefficient: exact rational or complex double. The two shapes share a
/// JSON slot; field names keep them unambiguous.
#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
#[serde(untagged)]
pub enum CoefJson {
    Rational { num: String, den: String },
    Complex { re: String, im: String },
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
pub struct MvTermJson {
    pub blade: Vec<u32>,
    pub coef: CoefJson,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
pub struct MvJson {
    pub m: u32,
    pub terms: Vec<MvTermJson>,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
pub struct PolyTermJson {
    pub exp: Vec<u32>,
    pub coef: MvJson,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
pub struct PolyJson {
    pub m: u32,
    pub terms: Vec<PolyTermJson>,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
pub struct RadialTermJson {
    pub exp: [u32; 2],
    pub coef: CoefJson,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
pub struct RadialJson {
    pub terms: Vec<RadialTermJson>,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
pub struct QuadrupleJson {
    pub m: u32,
    pub k: u32,
    pub ell: u32,
    pub p: PolyJson,
    pub a: RadialJson,
    pub b: RadialJson,
    pub c: RadialJson,
    pub d: RadialJson,
}

/// Doubles print with 17 significant digits (1 leading + 16 fractional), the
/// smallest count that makes text round-trips exact for every f64.
pub fn format_f64(x: f64) -> String {
    format!("{:.16e}", x)
}

pub fn parse_f64(s: &str) -> Result<f64> {
    let v: f64 = s
        .parse()
        .with_context(|| format!("not a decimal number: {:?}", s))?;
    ensure!(v.is_finite(), "non-finite number: {:?}", s);
    Ok(v)
}

pub fn rat_to_json(q: &Rat) -> CoefJson {
    CoefJson::Rational {
        num: q.numer().to_string(),
        den: q.denom().to_string(),
    }
}

pub fn complex_to_json(z: Complex64) -> CoefJson {
    CoefJson::Complex {
        re: format_f64(z.re),
        im: format_f64(z.im),
    }
}

pub fn rat_from_json(c: &CoefJson) -> Result<Rat> {
    match c {
        CoefJson::Rational { num, den } => {
            let n = BigInt::from_str(num).with_context(|| format!("bad numerator {:?}", num))?;
            let d = BigInt::from_str(den).with_context(|| format!("bad denominator {:?}", den))?;
            ensure!(d != BigInt::from(0), "zero denominator");
            Ok(Rat::new(n, d))
        }
        CoefJson::Complex { .. } => bail!("expected an exact rational coefficient"),
    }
}

pub fn complex_from_json(c: &CoefJson) -> Result<Complex64> {
    match c {
        CoefJson::Complex { re, im } => Ok(Complex64::new(parse_f64(re)?, parse_f64(im)?)),
        CoefJson::Rational { .. } => {
            let q = rat_from_json(c)?;
            Ok(Complex64::new(axialis_core::scalar::rat_to_f64(&q), 0.0))
        }
    }
}

fn blade_list(mask: u32) -> Vec<u32> {
    (0..32).filter(|j| mask & (1 << j) != 0).map(|j| j + 1).collect()
}

fn blade_mask(list: &[u32], m: u32) -> Result<u32> {
    let mut mask = 0u32;
    let mut prev = 0u32;
    for &j in list {
        ensure!(j >= 1 && j <= m, "generator index {} out of range 1..={}", j, m);
        ensure!(j > prev, "blade list must be strictly increasing");
        prev = j;
        mask |= 1 << (j - 1);
    }
    Ok(mask)
}

pub fn mv_to_json(mv: &Multivector<Rat>) -> MvJson {
    let mut terms: Vec<(u32, &Rat)> = mv.terms().collect();
    terms.sort_by_key(|&(mask, _)| mask);
    MvJson {
        m: mv.dim(),
        terms: terms
            .into_iter()
            .map(|(mask, c)| MvTermJson {
                blade: blade_list(mask),
                coef: rat_to_json(c),
            })
            .collect(),
    }
}

pub fn mv_complex_to_json(mv: &Multivector<Complex64>) -> MvJson {
    let mut terms: Vec<(u32, &Complex64)> = mv.terms().collect();
    terms.sort_by_key(|&(mask, _)| mask);
    MvJson {
        m: mv.dim(),
        terms: terms
            .into_iter()
            .map(|(mask, c)| MvTermJson {
                blade: blade_list(mask),
                coef: complex_to_json(*c),
            })
            .collect(),
    }
}

pub fn mv_from_json(j: &MvJson) -> Result<Multivector<Rat>> {
    ensure!(j.m >= 1 && j.m <= axialis_core::MAX_DIM, "dimension out of range");
    let mut terms = Vec::with_capacity(j.terms.len());
    for t in &j.terms {
        terms.push((blade_mask(&t.blade, j.m)?, rat_from_json(&t.coef)?));
    }
    Ok(Multivector::from_terms(j.m, terms))
}

pub fn poly_to_json(p: &MvPoly<Rat>) -> PolyJson {
    let mut terms: Vec<(&Vec<u32>, &Multivector<Rat>)> = p.terms().collect();
    terms.sort_by(|a, b| a.0.cmp(b.0));
    PolyJson {
        m: p.dim(),
        terms: terms
            .into_iter()
            .map(|(exp, mv)| PolyTermJson {
                exp: exp.clone(),
                coef: mv_to_json(mv),
            })
            .collect(),
    }
}

pub fn poly_from_json(j: &PolyJson) -> Result<MvPoly<Rat>> {
    ensure!(j.m >= 1 && j.m <= axialis_core::MAX_DIM, "dimension out of range");
    let mut out = MvPoly::zero(j.m);
    for t in &j.terms {
        ensure!(
            t.exp.len() == j.m as usize + 1,
            "exponent vector must have length m+1 = {} (exp[0] is the x0 exponent)",
            j.m + 1
        );
        ensure!(t.coef.m == j.m, "coefficient dimension mismatch");
        out.add_term(t.exp.clone(), mv_from_json(&t.coef)?);
    }
    Ok(out)
}

pub fn radial_to_json(p: &RadialPoly) -> RadialJson {
    let mut terms: Vec<(u32, u32, &Rat)> = p.terms().collect();
    terms.sort_by_key(|&(i, j, _)| (i, j));
    RadialJson {
        terms: terms
            .into_iter()
            .map(|(i, j, c)| RadialTermJson {
                exp: [i, j],
                coef: rat_to_json(c),
            })
            .collect(),
    }
}

pub fn radial_from_json(j: &RadialJson) -> Result<RadialPoly> {
    let mut out = RadialPoly::zero();
    for t in &j.terms {
        out.add_term(t.exp[0], t.exp[1], rat_from_json(&t.coef)?);
    }
    Ok(out)
}

pub fn quadruple_to_json(q: &AxialQuadruple) -> QuadrupleJson {
    let p = q.p();
    QuadrupleJson {
        m: p.m,
        k: p.k,
        ell: p.ell,
        p: poly_to_json(p.poly()),
        a: radial_to_json(q.a()),
        b: radial_to_json(q.b()),
        c: radial_to_json(q.c()),
        d: radial_to_json(q.d()),
    }
}

pub fn quadruple_from_json(j: &QuadrupleJson) -> Result<AxialQuadruple> {
    let poly = poly_from_json(&j.p)?;
    ensure!(!poly.is_zero(), "spherical monogenic must be nonzero");
    ensure!(
        poly.is_x0_free(),
        "spherical monogenic must not depend on x0"
    );
    ensure!(
        poly.total_degree() == Some(j.k),
        "spherical monogenic must be homogeneous of degree k = {}",
        j.k
    );
    ensure!(poly.is_homogeneous(), "spherical monogenic must be homogeneous");
    ensure!(
        poly.is_grade_pure(j.ell),
        "spherical monogenic must be grade-{} pure",
        j.ell
    );
    ensure!(
        poly.dirac_left().is_zero(),
        "spherical monogenic must be left monogenic"
    );
    let p = InnerMonogenic::new(j.m, j.k, j.ell, poly);
    let profiles = [
        ("a", radial_from_json(&j.a)?),
        ("b", radial_from_json(&j.b)?),
        ("c", radial_from_json(&j.c)?),
        ("d", radial_from_json(&j.d)?),
    ];
    for (name, profile) in &profiles {
        ensure!(
            profile.is_even_in_r(),
            "profile {} must contain only even powers of r",
            name
        );
    }
    let [(_, a), (_, b), (_, c), (_, d)] = profiles;
    Ok(AxialQuadruple::new(p, a, b, c, d))
}

fn latex_rat(q: &Rat) -> String {
    if q.denom() == &BigInt::from(1) {
        q.numer().to_string()
    } else if q.numer() < &BigInt::from(0) {
        format!("-\\frac{{{}}}{{{}}}", -q.numer(), q.denom())
    } else {
        format!("\\frac{{{}}}{{{}}}", q.numer(), q.denom())
    }
}

fn latex_blade(mask: u32) -> String {
    if mask == 0 {
        return String::new();
    }
    let idx: Vec<String> = blade_list(mask).iter().map(u32::to_string).collect();
    // Single-digit generator labels concatenate (e_{12}); double digits would
    // be ambiguous, so commas separate them.
    if idx.iter().all(|s| s.len() == 1) {
        format!("e_{{{}}}", idx.join(""))
    } else {
        format!("e_{{{}}}", idx.join(","))
    }
}

fn latex_monomial(exp: &[u32]) -> String {
    let mut out = String::new();
    for (j, &e) in exp.iter().enumerate() {
        if e == 0 {
            continue;
        }
        out.push_str(&format!("x_{{{}}}", j));
        if e > 1 {
            out.push_str(&format!("^{{{}}}", e));
        }
    }
    out
}

/// Render an exact polynomial as a LaTeX expression, one term per
/// (monomial, blade) pair, terms in the printer's sorted order.
pub fn poly_latex(p: &MvPoly<Rat>) -> String {
    let j = poly_to_json(p);
    let mut pieces: Vec<String> = Vec::new();
    for term in &j.terms {
        let mono = latex_monomial(&term.exp);
        for mv_term in &term.coef.terms {
            let coef = match &mv_term.coef {
                CoefJson::Rational { .. } => {
                    latex_rat(&rat_from_json(&mv_term.coef).expect("printed rational"))
                }
                CoefJson::Complex { .. } => unreachable!("exact printer"),
            };
            let blade = latex_blade(blade_mask(&mv_term.blade, j.m).expect("printed blade"));
            let body = match (mono.is_empty(), blade.is_empty()) {
                (true, true) => coef.clone(),
                _ => {
                    let tail = format!("{}{}", mono, blade);
                    match coef.as_str() {
                        "1" => tail,
                        "-1" => format!("-{}", tail),
                        _ => format!("{}{}", coef, tail),
                    }
                }
            };
            pieces.push(body);
        }
    }
    if pieces.is_empty() {
        return "0".to_string();
    }
    let mut out = pieces[0].clone();
    for piece in &pieces[1..] {
        if let Some(tail) = piece.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(tail);
        } else {
            out.push_str(" + ");
            out.push_str(piece);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use axialis_core::scalar::{rat, rat_int};

    #[test]
    fn multivector_round_trip_exhaustive_small() {
        // Every blade subset of R_{0,2} with a small spread of rationals.
        for m in 1..=2u32 {
            for subset in 0u32..(1 << (1 << m)) {
                let mut terms = Vec::new();
                for (pos, mask) in (0..(1u32 << m)).enumerate() {
                    if subset & (1 << pos) != 0 {
                        terms.push((mask, rat(pos as i64 + 1, 3)));
                    }
                }
                let mv = Multivector::from_terms(m, terms);
                let parsed = mv_from_json(&mv_to_json(&mv)).unwrap();
                assert_eq!(parsed, mv);
            }
        }
    }

    #[test]
    fn poly_round_trip_and_byte_stability() {
        let mut p = MvPoly::zero(3);
        p.add_term(
            vec![1, 0, 2, 0],
            Multivector::from_terms(3, [(0b011, rat(-5, 7)), (0b000, rat_int(2))]),
        );
        p.add_term(vec![0, 1, 0, 0], Multivector::basis_vector(3, 2).scale(&rat(1, 2)));
        let json = poly_to_json(&p);
        let parsed = poly_from_json(&json).unwrap();
        assert_eq!(parsed, p);
        let first = serde_json::to_string(&json).unwrap();
        let second = serde_json::to_string(&poly_to_json(&parsed)).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn blade_lists_must_increase() {
        let bad = MvJson {
            m: 3,
            terms: vec![MvTermJson {
                blade: vec![2, 1],
                coef: rat_to_json(&rat_int(1)),
            }],
        };
        assert!(mv_from_json(&bad).is_err());
    }

    #[test]
    fn complex_coefficients_round_trip_exactly() {
        let values = [
            Complex64::new(1.0 / 3.0, -2.0e-17),
            Complex64::new(-0.1, 123456.789),
            Complex64::new(0.0, 0.0),
        ];
        for v in values {
            let j = complex_to_json(v);
            let back = complex_from_json(&j).unwrap();
            assert_eq!(back, v);
        }
    }

    #[test]
    fn radial_round_trip() {
        let mut p = RadialPoly::zero();
        p.add_term(2, 0, rat(5, 3));
        p.add_term(0, 4, rat(-1, 2));
        let parsed = radial_from_json(&radial_to_json(&p)).unwrap();
        assert_eq!(parsed, p);
    }

    #[test]
    fn latex_renders_signs_and_blades() {
        let mut p = MvPoly::zero(2);
        p.add_term(
            vec![2, 1, 0],
            Multivector::from_terms(2, [(0b11, rat(-1, 2))]),
        );
        p.add_term(vec![0, 0, 0], Multivector::from_terms(2, [(0, rat_int(3))]));
        let tex = poly_latex(&p);
        assert_eq!(tex, "3 - \\frac{1}{2}x_{0}^{2}x_{1}e_{12}");
    }
}
