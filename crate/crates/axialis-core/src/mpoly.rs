//! Polynomials in x_0, x_1, ..., x_m with multivector coefficients, and the
//! first-order operators of Clifford analysis on them.
//!
//! Exponent vectors have length m+1 with slot 0 for x_0. The Dirac operator
//! dirac = sum_j e_j d/dx_j acts on x_1..x_m only; the generalized
//! Cauchy-Riemann operator adds d/dx_0. Left and right versions differ by the
//! side the basis vector multiplies on, which matters because coefficients do
//! not commute with e_j.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::clifford::Multivector;
use crate::scalar::{rat_to_f64, Coeff, Rat};

/// Sparse multivariate polynomial with Multivector coefficients.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MvPoly<T: Coeff> {
    m: u32,
    terms: BTreeMap<Vec<u32>, Multivector<T>>,
}

impl<T: Coeff> MvPoly<T> {
    pub fn zero(m: u32) -> Self {
        MvPoly {
            m,
            terms: BTreeMap::new(),
        }
    }

    /// Constant polynomial.
    pub fn from_multivector(mv: Multivector<T>) -> Self {
        let m = mv.dim();
        let mut p = Self::zero(m);
        p.add_term(alloc::vec![0; (m + 1) as usize], mv);
        p
    }

    pub fn constant(m: u32, c: T) -> Self {
        Self::from_multivector(Multivector::scalar(m, c))
    }

    /// The variable x_j (0 <= j <= m) with scalar coefficient 1.
    pub fn variable(m: u32, j: u32) -> Self {
        assert!(j <= m, "variable index out of range");
        let mut exp = alloc::vec![0u32; (m + 1) as usize];
        exp[j as usize] = 1;
        let mut p = Self::zero(m);
        p.add_term(exp, Multivector::one(m));
        p
    }

    /// The vector variable x = sum_j x_j e_j.
    pub fn vector_variable(m: u32) -> Self {
        let mut p = Self::zero(m);
        for j in 1..=m {
            let mut exp = alloc::vec![0u32; (m + 1) as usize];
            exp[j as usize] = 1;
            p.add_term(exp, Multivector::basis_vector(m, j));
        }
        p
    }

    /// |x|^2 = sum_{j>=1} x_j^2 as a scalar-coefficient polynomial.
    /// Distinct from the geometric square x*x = -|x|^2.
    pub fn norm_sq(m: u32) -> Self {
        let mut p = Self::zero(m);
        for j in 1..=m {
            let mut exp = alloc::vec![0u32; (m + 1) as usize];
            exp[j as usize] = 2;
            p.add_term(exp, Multivector::one(m));
        }
        p
    }

    pub fn dim(&self) -> u32 {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Multivector<T>)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: &[u32]) -> Multivector<T> {
        self.terms
            .get(exp)
            .cloned()
            .unwrap_or_else(|| Multivector::zero(self.m))
    }

    pub fn add_term(&mut self, exp: Vec<u32>, mv: Multivector<T>) {
        assert_eq!(exp.len() as u32, self.m + 1, "exponent vector length");
        if mv.is_zero() {
            return;
        }
        match self.terms.remove(&exp) {
            None => {
                self.terms.insert(exp, mv);
            }
            Some(old) => {
                let s = old.add_ref(&mv);
                if !s.is_zero() {
                    self.terms.insert(exp, s);
                }
            }
        }
    }

    pub fn add_ref(&self, rhs: &Self) -> Self {
        assert_eq!(self.m, rhs.m, "dimension mismatch");
        let mut out = self.clone();
        for (exp, mv) in rhs.terms.iter() {
            out.add_term(exp.clone(), mv.clone());
        }
        out
    }

    pub fn neg_ref(&self) -> Self {
        MvPoly {
            m: self.m,
            terms: self
                .terms
                .iter()
                .map(|(e, mv)| (e.clone(), mv.neg_ref()))
                .collect(),
        }
    }

    pub fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }

    /// Product; coefficient products keep their left/right order.
    pub fn mul_ref(&self, rhs: &Self) -> Self {
        assert_eq!(self.m, rhs.m, "dimension mismatch");
        let mut out = Self::zero(self.m);
        for (ea, ma) in self.terms.iter() {
            for (eb, mb) in rhs.terms.iter() {
                let exp: Vec<u32> = ea.iter().zip(eb.iter()).map(|(a, b)| a + b).collect();
                out.add_term(exp, ma.geo_mul(mb));
            }
        }
        out
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = Self::zero(self.m);
        for (exp, mv) in self.terms.iter() {
            out.add_term(exp.clone(), mv.scale(c));
        }
        out
    }

    /// Left multiplication by a constant multivector: a * p.
    pub fn mul_mv_left(&self, a: &Multivector<T>) -> Self {
        let mut out = Self::zero(self.m);
        for (exp, mv) in self.terms.iter() {
            out.add_term(exp.clone(), a.geo_mul(mv));
        }
        out
    }

    /// Right multiplication by a constant multivector: p * a.
    pub fn mul_mv_right(&self, a: &Multivector<T>) -> Self {
        let mut out = Self::zero(self.m);
        for (exp, mv) in self.terms.iter() {
            out.add_term(exp.clone(), mv.geo_mul(a));
        }
        out
    }

    /// Multiply by the monomial x_j^n.
    pub fn mul_var_pow(&self, j: u32, n: u32) -> Self {
        let mut out = Self::zero(self.m);
        for (exp, mv) in self.terms.iter() {
            let mut e = exp.clone();
            e[j as usize] += n;
            out.add_term(e, mv.clone());
        }
        out
    }

    /// d/dx_j, coefficients untouched.
    pub fn partial(&self, j: u32) -> Self {
        assert!(j <= self.m, "variable index out of range");
        let mut out = Self::zero(self.m);
        for (exp, mv) in self.terms.iter() {
            let e = exp[j as usize];
            if e == 0 {
                continue;
            }
            let mut de = exp.clone();
            de[j as usize] -= 1;
            out.add_term(de, mv.scale(&T::from_int(e as i64)));
        }
        out
    }

    /// Dirac operator from the left: sum_j e_j (d/dx_j p).
    pub fn dirac_left(&self) -> Self {
        let mut out = Self::zero(self.m);
        for j in 1..=self.m {
            let ej = Multivector::basis_vector(self.m, j);
            out = out.add_ref(&self.partial(j).mul_mv_left(&ej));
        }
        out
    }

    /// Dirac operator from the right: sum_j (d/dx_j p) e_j.
    pub fn dirac_right(&self) -> Self {
        let mut out = Self::zero(self.m);
        for j in 1..=self.m {
            let ej = Multivector::basis_vector(self.m, j);
            out = out.add_ref(&self.partial(j).mul_mv_right(&ej));
        }
        out
    }

    /// (d/dx_0 + dirac) p.
    pub fn cr_left(&self) -> Self {
        self.partial(0).add_ref(&self.dirac_left())
    }

    /// p (d/dx_0 + dirac), acting from the right.
    pub fn cr_right(&self) -> Self {
        self.partial(0).add_ref(&self.dirac_right())
    }

    /// Laplacian; include_x0 selects sum_{j=0}^m vs sum_{j=1}^m of second partials.
    pub fn laplacian(&self, include_x0: bool) -> Self {
        let start = if include_x0 { 0 } else { 1 };
        let mut out = Self::zero(self.m);
        for j in start..=self.m {
            out = out.add_ref(&self.partial(j).partial(j));
        }
        out
    }

    /// Largest exponent sum among stored terms; None for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degree = None;
        for exp in self.terms.keys() {
            let d: u32 = exp.iter().sum();
            match degree {
                None => degree = Some(d),
                Some(k) if k != d => return false,
                _ => {}
            }
        }
        true
    }

    /// Degree-k homogeneous component.
    pub fn homogeneous_part(&self, k: u32) -> Self {
        let mut out = Self::zero(self.m);
        for (exp, mv) in self.terms.iter() {
            if exp.iter().sum::<u32>() == k {
                out.add_term(exp.clone(), mv.clone());
            }
        }
        out
    }

    /// True when no term involves x_0.
    pub fn is_x0_free(&self) -> bool {
        self.terms.keys().all(|e| e[0] == 0)
    }

    /// Substitute x_0 = 0.
    pub fn restrict_x0_zero(&self) -> Self {
        let mut out = Self::zero(self.m);
        for (exp, mv) in self.terms.iter() {
            if exp[0] == 0 {
                out.add_term(exp.clone(), mv.clone());
            }
        }
        out
    }

    /// Apply grade projection to every coefficient.
    pub fn grade_project_coeffs(&self, ell: u32) -> Self {
        let mut out = Self::zero(self.m);
        for (exp, mv) in self.terms.iter() {
            out.add_term(exp.clone(), mv.grade_project(ell));
        }
        out
    }

    /// Grades appearing in any coefficient, ascending.
    pub fn grades(&self) -> Vec<u32> {
        let mut gs: Vec<u32> = self
            .terms
            .values()
            .flat_map(|mv| mv.grades())
            .collect();
        gs.sort_unstable();
        gs.dedup();
        gs
    }

    /// True when every coefficient is grade-l pure.
    pub fn is_grade_pure(&self, ell: u32) -> bool {
        self.terms.values().all(|mv| mv.is_grade_pure(ell))
    }

    /// Direct evaluation at a point (x_0, ..., x_m).
    pub fn eval(&self, point: &[T]) -> Multivector<T> {
        assert_eq!(point.len() as u32, self.m + 1, "point length");
        let mut out = Multivector::zero(self.m);
        for (exp, mv) in self.terms.iter() {
            let mut factor = T::one();
            for (j, &e) in exp.iter().enumerate() {
                for _ in 0..e {
                    factor = factor * point[j].clone();
                }
            }
            out = out.add_ref(&mv.scale(&factor));
        }
        out
    }

    pub fn map_coeffs<U: Coeff, F: Fn(&T) -> U + Copy>(&self, f: F) -> MvPoly<U> {
        let mut out = MvPoly::zero(self.m);
        for (exp, mv) in self.terms.iter() {
            out.add_term(exp.clone(), mv.map_coeffs(f));
        }
        out
    }
}

impl MvPoly<Rat> {
    pub fn to_f64_poly(&self) -> MvPoly<f64> {
        self.map_coeffs(rat_to_f64)
    }

    pub fn to_complex_poly(&self) -> MvPoly<Complex64> {
        self.map_coeffs(|c| Complex64::new(rat_to_f64(c), 0.0))
    }
}

impl<T: Coeff> Add for &MvPoly<T> {
    type Output = MvPoly<T>;
    fn add(self, rhs: Self) -> MvPoly<T> {
        self.add_ref(rhs)
    }
}

impl<T: Coeff> Sub for &MvPoly<T> {
    type Output = MvPoly<T>;
    fn sub(self, rhs: Self) -> MvPoly<T> {
        self.sub_ref(rhs)
    }
}

impl<T: Coeff> Mul for &MvPoly<T> {
    type Output = MvPoly<T>;
    fn mul(self, rhs: Self) -> MvPoly<T> {
        self.mul_ref(rhs)
    }
}

impl<T: Coeff> Neg for &MvPoly<T> {
    type Output = MvPoly<T>;
    fn neg(self) -> MvPoly<T> {
        self.neg_ref()
    }
}

impl<T: Coeff + fmt::Display> fmt::Display for MvPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exp, mv) in self.terms.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "[{}]", mv)?;
            for (j, &e) in exp.iter().enumerate() {
                if e == 1 {
                    write!(f, " x{}", j)?;
                } else if e > 1 {
                    write!(f, " x{}^{}", j, e)?;
                }
            }
        }
        Ok(())
    }
}

impl<T: Coeff + fmt::Display> fmt::Debug for MvPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MvPoly[m={}]({})", self.m, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};
    use proptest::prelude::*;

    type P = MvPoly<Rat>;

    #[test]
    fn eval_worked_examples() {
        let m = 3;
        // x1 e1 at (0, 2, 0, 0) -> 2 e1
        let p = P::variable(m, 1).mul_mv_left(&Multivector::basis_vector(m, 1));
        let v = p.eval(&[rat_int(0), rat_int(2), rat_int(0), rat_int(0)]);
        assert_eq!(v, Multivector::basis_vector(m, 1).scale(&rat_int(2)));
        // |x|^2 at x = (1, 2, 2) -> 9
        let n2 = P::norm_sq(m);
        let v = n2.eval(&[rat_int(0), rat_int(1), rat_int(2), rat_int(2)]);
        assert_eq!(v, Multivector::scalar(m, rat_int(9)));
        // eval(x, point) = sum x_j e_j
        let x = P::vector_variable(m);
        let v = x.eval(&[rat_int(5), rat_int(1), rat(-2, 3), rat(1, 2)]);
        let expected = Multivector::from_terms(
            m,
            [(0b001, rat_int(1)), (0b010, rat(-2, 3)), (0b100, rat(1, 2))],
        );
        assert_eq!(v, expected);
    }

    #[test]
    fn dirac_worked_examples() {
        let m = 2;
        let e1 = Multivector::basis_vector(m, 1);
        let e2 = Multivector::basis_vector(m, 2);
        // dirac_left(x1 e1) = e1 e1 = -1
        let p = P::variable(m, 1).mul_mv_left(&e1);
        assert_eq!(p.dirac_left(), P::constant(m, rat_int(-1)));
        // dirac_left(x1 e2 + x2 e1) = e1 e2 + e2 e1 = 0
        let p = P::variable(m, 1)
            .mul_mv_left(&e2)
            .add_ref(&P::variable(m, 2).mul_mv_left(&e1));
        assert!(p.dirac_left().is_zero());
        // dirac_left vs dirac_right differ on x1 e2
        let p = P::variable(m, 1).mul_mv_left(&e2);
        let defect = p.dirac_left().sub_ref(&p.dirac_right());
        let e12 = Multivector::basis_blade(m, 0b11);
        assert_eq!(defect, P::from_multivector(e12.scale(&rat_int(2))));
    }

    #[test]
    fn cr_worked_examples() {
        let m = 3;
        // cr_left(x0) = 1
        assert_eq!(P::variable(m, 0).cr_left(), P::constant(m, rat_int(1)));
        // cr_left(x0 + x1 e1) = 1 + e1 e1 = 0
        let p = P::variable(m, 0)
            .add_ref(&P::variable(m, 1).mul_mv_left(&Multivector::basis_vector(m, 1)));
        assert!(p.cr_left().is_zero());
        // cr_left(x + m x0) = 0: dirac x = -m
        let p = P::vector_variable(m).add_ref(&P::variable(m, 0).scale(&rat_int(m as i64)));
        assert!(p.cr_left().is_zero());
        // cr_left(x1 - x0 e1) = e1 - e1 = 0
        let p = P::variable(m, 1)
            .sub_ref(&P::variable(m, 0).mul_mv_left(&Multivector::basis_vector(m, 1)));
        assert!(p.cr_left().is_zero());
    }

    #[test]
    fn vector_square_is_minus_norm_squared() {
        for m in 1..=4 {
            let x = P::vector_variable(m);
            assert_eq!(x.mul_ref(&x), P::norm_sq(m).neg_ref());
        }
    }

    #[test]
    fn laplacian_examples() {
        let m = 3;
        assert_eq!(
            P::norm_sq(m).laplacian(false),
            P::constant(m, rat_int(2 * m as i64))
        );
        // with x0: Delta(x0^2 + |x|^2) = 2 + 2m
        let p = P::variable(m, 0).mul_ref(&P::variable(m, 0)).add_ref(&P::norm_sq(m));
        assert_eq!(
            p.laplacian(true),
            P::constant(m, rat_int(2 + 2 * m as i64))
        );
    }

    #[test]
    fn homogeneous_part_and_euler() {
        let m = 2;
        let p = P::constant(m, rat_int(1))
            .add_ref(&P::variable(m, 1).mul_mv_left(&Multivector::basis_vector(m, 1)));
        let h1 = p.homogeneous_part(1);
        assert_eq!(
            h1,
            P::variable(m, 1).mul_mv_left(&Multivector::basis_vector(m, 1))
        );
        // Euler: sum_j x_j d_j q = k q for homogeneous q of degree k
        let q = P::variable(m, 1).mul_ref(&P::variable(m, 2)); // x1 x2, k = 2
        let mut euler = P::zero(m);
        for j in 0..=m {
            euler = euler.add_ref(&q.partial(j).mul_var_pow(j, 1));
        }
        assert_eq!(euler, q.scale(&rat_int(2)));
    }

    fn arb_rat() -> impl Strategy<Value = Rat> {
        (-5i64..=5, 1i64..=3).prop_map(|(n, d)| rat(n, d))
    }

    /// Random polynomial in x_0..x_m, degree <= 3, random blade coefficients.
    fn arb_poly(m: u32) -> impl Strategy<Value = P> {
        let nvars = (m + 1) as usize;
        proptest::collection::vec(
            (
                proptest::collection::vec(0u32..3, nvars),
                0u32..(1 << m),
                arb_rat(),
            ),
            0..7,
        )
        .prop_map(move |terms| {
            let mut p = P::zero(m);
            for (exp, mask, c) in terms {
                p.add_term(exp, Multivector::basis_blade(m, mask).scale(&c));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn dirac_squared_is_minus_laplacian(p in arb_poly(3)) {
            let lhs = p.dirac_left().dirac_left();
            prop_assert_eq!(lhs, p.laplacian(false).neg_ref());
            let rhs = p.dirac_right().dirac_right();
            prop_assert_eq!(rhs, p.laplacian(false).neg_ref());
        }

        #[test]
        fn cr_factorization_gives_full_laplacian(p in arb_poly(3)) {
            // (d0 + dirac)(d0 - dirac) = Delta_{m+1}
            let inner = p.partial(0).sub_ref(&p.dirac_left());
            prop_assert_eq!(inner.cr_left(), p.laplacian(true));
        }

        #[test]
        fn partial_satisfies_leibniz(p in arb_poly(2), q in arb_poly(2)) {
            let j = 1u32;
            let lhs = p.mul_ref(&q).partial(j);
            let rhs = p.partial(j).mul_ref(&q).add_ref(&p.mul_ref(&q.partial(j)));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn homogeneous_parts_sum_back(p in arb_poly(2)) {
            let mut sum = P::zero(2);
            if let Some(d) = p.total_degree() {
                for k in 0..=d {
                    sum = sum.add_ref(&p.homogeneous_part(k));
                }
            }
            prop_assert_eq!(sum, p);
        }

        #[test]
        fn eval_is_ring_homomorphism(p in arb_poly(2), q in arb_poly(2)) {
            let pt = [rat(1, 2), rat(-2, 3), rat(3, 1)];
            let lhs = p.mul_ref(&q).eval(&pt);
            let rhs = p.eval(&pt).geo_mul(&q.eval(&pt));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
