//! The Clifford algebra R_{0,m} with exact or floating coefficients.
//!
//! Blades are u32 bitmasks: bit j-1 set means the generator e_j is a factor,
//! and a blade's grade is the popcount of its mask. Generators obey
//! e_j e_k + e_k e_j = -2 delta_{jk}, so e_j^2 = -1 and vectors square to
//! -|x|^2. Coefficients are any `Coeff` ring; the exact-rational instantiation
//! is what every "equals zero literally" test runs on.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{rat_int, Coeff, Rat};
use crate::MAX_DIM;

/// Sign and mask of the product of two basis blades in R_{0,m}.
///
/// Transpositions needed to interleave the two index sequences contribute
/// (-1) each; every shared generator then contracts via e_j^2 = -1.
pub fn blade_product(a: u32, b: u32) -> (i32, u32) {
    let mut sign = reorder_sign(a, b);
    if (a & b).count_ones() % 2 == 1 {
        sign = -sign;
    }
    (sign, a ^ b)
}

/// (-1)^(number of pairs i in a, j in b with j < i), the interleaving sign.
fn reorder_sign(a: u32, b: u32) -> i32 {
    let mut shifted = a >> 1;
    let mut swaps = 0u32;
    while shifted != 0 {
        swaps += (shifted & b).count_ones();
        shifted >>= 1;
    }
    if swaps.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Conjugation sign on a grade-l blade: bar(e_A) = (-1)^(l(l+1)/2) e_A.
///
/// Conjugation negates each generator and reverses products, so on a blade the
/// reversal sign (-1)^(l(l-1)/2) combines with (-1)^l from the negations.
pub fn conjugate_sign(grade: u32) -> i32 {
    if (grade * (grade + 1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Sandwich eigenvalue: sum_j e_j a e_j = mu_l a on grade l, with
/// mu_l = (-1)^l (2l - m).
pub fn mu(ell: u32, m: u32) -> Rat {
    rat_int(mu_i64(ell, m))
}

/// Integer-valued mu_l.
pub fn mu_i64(ell: u32, m: u32) -> i64 {
    let v = 2 * ell as i64 - m as i64;
    if ell.is_multiple_of(2) {
        v
    } else {
        -v
    }
}

/// Element of R_{0,m}: a sparse sum of blades. Zero coefficients are never
/// stored, so structural equality is semantic equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Multivector<T: Coeff> {
    m: u32,
    terms: BTreeMap<u32, T>,
}

impl<T: Coeff> Multivector<T> {
    pub fn zero(m: u32) -> Self {
        assert!((1..=MAX_DIM).contains(&m), "dimension out of range");
        Multivector {
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(m: u32, value: T) -> Self {
        let mut mv = Self::zero(m);
        mv.add_term(0, value);
        mv
    }

    pub fn one(m: u32) -> Self {
        Self::scalar(m, T::one())
    }

    /// The generator e_j, 1-indexed.
    pub fn basis_vector(m: u32, j: u32) -> Self {
        assert!(j >= 1 && j <= m, "generator index out of range");
        Self::basis_blade(m, 1 << (j - 1))
    }

    /// The unit blade with the given bitmask.
    pub fn basis_blade(m: u32, mask: u32) -> Self {
        let mut mv = Self::zero(m);
        assert!(mask < (1u32 << m), "blade outside the algebra");
        mv.add_term(mask, T::one());
        mv
    }

    /// e_1 e_2 ... e_m.
    pub fn pseudoscalar(m: u32) -> Self {
        Self::basis_blade(m, (1u32 << m) - 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, T)>>(m: u32, it: I) -> Self {
        let mut mv = Self::zero(m);
        for (mask, c) in it {
            assert!(mask < (1u32 << m), "blade outside the algebra");
            mv.add_term(mask, c);
        }
        mv
    }

    pub fn dim(&self) -> u32 {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mask: u32) -> T {
        self.terms.get(&mask).cloned().unwrap_or_else(T::zero)
    }

    /// Scalar (grade-0) coefficient.
    pub fn scalar_part(&self) -> T {
        self.coefficient(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &T)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, mask: u32, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&mask) {
            None => {
                self.terms.insert(mask, c);
            }
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(mask, s);
                }
            }
        }
    }

    pub fn add_ref(&self, rhs: &Self) -> Self {
        assert_eq!(self.m, rhs.m, "dimension mismatch");
        let mut out = self.clone();
        for (mask, c) in rhs.terms.iter() {
            out.add_term(*mask, c.clone());
        }
        out
    }

    pub fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }

    pub fn neg_ref(&self) -> Self {
        Multivector {
            m: self.m,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (*k, -v.clone()))
                .collect(),
        }
    }

    /// Geometric product. Order matters: the algebra is noncommutative.
    pub fn geo_mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.m, rhs.m, "dimension mismatch");
        let mut out = Self::zero(self.m);
        for (a, ca) in self.terms.iter() {
            for (b, cb) in rhs.terms.iter() {
                let (sign, mask) = blade_product(*a, *b);
                let c = ca.clone() * cb.clone();
                out.add_term(mask, if sign < 0 { -c } else { c });
            }
        }
        out
    }

    pub fn scale(&self, factor: &T) -> Self {
        let mut out = Self::zero(self.m);
        for (mask, c) in self.terms.iter() {
            out.add_term(*mask, c.clone() * factor.clone());
        }
        out
    }

    /// Clifford conjugation: the anti-automorphism with bar(e_j) = -e_j.
    pub fn conjugate(&self) -> Self {
        let mut out = Self::zero(self.m);
        for (mask, c) in self.terms.iter() {
            let c = c.clone();
            out.add_term(
                *mask,
                if conjugate_sign(mask.count_ones()) < 0 {
                    -c
                } else {
                    c
                },
            );
        }
        out
    }

    /// Projection onto the grade-l subspace.
    pub fn grade_project(&self, ell: u32) -> Self {
        let mut out = Self::zero(self.m);
        for (mask, c) in self.terms.iter() {
            if mask.count_ones() == ell {
                out.add_term(*mask, c.clone());
            }
        }
        out
    }

    /// Grades with a nonzero component, ascending.
    pub fn grades(&self) -> Vec<u32> {
        let mut gs: Vec<u32> = self.terms.keys().map(|k| k.count_ones()).collect();
        gs.sort_unstable();
        gs.dedup();
        gs
    }

    /// Whether every stored term has grade l (true for zero).
    pub fn is_grade_pure(&self, ell: u32) -> bool {
        self.terms.keys().all(|k| k.count_ones() == ell)
    }

    /// sum_{j=1}^m e_j a e_j; equals mu_l * a on grade-pure a.
    pub fn sandwich_sum(&self) -> Self {
        let mut out = Self::zero(self.m);
        for j in 1..=self.m {
            let ej = Self::basis_vector(self.m, j);
            out = out.add_ref(&ej.geo_mul(self).geo_mul(&ej));
        }
        out
    }

    pub fn map_coeffs<U: Coeff, F: Fn(&T) -> U>(&self, f: F) -> Multivector<U> {
        Multivector {
            m: self.m,
            terms: self
                .terms
                .iter()
                .filter_map(|(k, v)| {
                    let c = f(v);
                    if c.is_zero() {
                        None
                    } else {
                        Some((*k, c))
                    }
                })
                .collect(),
        }
    }
}

impl<T: Coeff> Add for &Multivector<T> {
    type Output = Multivector<T>;
    fn add(self, rhs: Self) -> Multivector<T> {
        self.add_ref(rhs)
    }
}

impl<T: Coeff> Sub for &Multivector<T> {
    type Output = Multivector<T>;
    fn sub(self, rhs: Self) -> Multivector<T> {
        self.sub_ref(rhs)
    }
}

impl<T: Coeff> Mul for &Multivector<T> {
    type Output = Multivector<T>;
    fn mul(self, rhs: Self) -> Multivector<T> {
        self.geo_mul(rhs)
    }
}

impl<T: Coeff> Neg for &Multivector<T> {
    type Output = Multivector<T>;
    fn neg(self) -> Multivector<T> {
        self.neg_ref()
    }
}

/// Renders blades as e1, e12, e134; scalars bare.
pub fn blade_name(mask: u32) -> String {
    use core::fmt::Write;
    if mask == 0 {
        return String::from("1");
    }
    let mut s = String::from("e");
    for j in 1..=32 {
        if mask & (1 << (j - 1)) != 0 {
            let _ = write!(s, "{}", j);
        }
    }
    s
}

impl<T: Coeff + fmt::Display> fmt::Display for Multivector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mask, c) in self.terms.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *mask == 0 {
                write!(f, "{}", c)?;
            } else {
                write!(f, "({})*{}", c, blade_name(*mask))?;
            }
        }
        Ok(())
    }
}

impl<T: Coeff + fmt::Display> fmt::Debug for Multivector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multivector[m={}]({})", self.m, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use proptest::prelude::*;

    type Mv = Multivector<Rat>;

    /// Naive product oracle: blades as sorted index lists, product by
    /// concatenation, bubble-sort counting transpositions, then cancellation
    /// of adjacent equal generators with e_j^2 = -1.
    fn naive_blade_product(a: u32, b: u32) -> (i32, u32) {
        let mut seq: Vec<u32> = Vec::new();
        for j in 0..32 {
            if a & (1 << j) != 0 {
                seq.push(j);
            }
        }
        for j in 0..32 {
            if b & (1 << j) != 0 {
                seq.push(j);
            }
        }
        let mut sign = 1i32;
        loop {
            let mut changed = false;
            for i in 0..seq.len().saturating_sub(1) {
                if seq[i] > seq[i + 1] {
                    seq.swap(i, i + 1);
                    sign = -sign;
                    changed = true;
                } else if seq[i] == seq[i + 1] {
                    seq.drain(i..=i + 1);
                    sign = -sign;
                    changed = true;
                    break;
                }
            }
            if !changed {
                break;
            }
        }
        let mut mask = 0u32;
        for j in seq {
            mask |= 1 << j;
        }
        (sign, mask)
    }

    #[test]
    fn blade_product_matches_naive_oracle_exhaustively() {
        for m in 1..=5u32 {
            for a in 0..(1u32 << m) {
                for b in 0..(1u32 << m) {
                    assert_eq!(
                        blade_product(a, b),
                        naive_blade_product(a, b),
                        "a={:b} b={:b}",
                        a,
                        b
                    );
                }
            }
        }
    }

    #[test]
    fn generator_relations() {
        let m = 4;
        for j in 1..=m {
            for k in 1..=m {
                let ej = Mv::basis_vector(m, j);
                let ek = Mv::basis_vector(m, k);
                let anti = &(&ej * &ek) + &(&ek * &ej);
                let expected = if j == k {
                    Mv::scalar(m, rat_int(-2))
                } else {
                    Mv::zero(m)
                };
                assert_eq!(anti, expected);
            }
        }
    }

    #[test]
    fn worked_products() {
        // (e1 e2)(e2 e3) = -e1 e3
        let m = 3;
        let e12 = Mv::basis_blade(m, 0b011);
        let e23 = Mv::basis_blade(m, 0b110);
        assert_eq!(&e12 * &e23, Mv::basis_blade(m, 0b101).neg_ref());
        // e1 * e1 = -1
        let e1 = Mv::basis_vector(m, 1);
        assert_eq!(&e1 * &e1, Mv::scalar(m, rat_int(-1)));
    }

    #[test]
    fn conjugate_fixed_points_and_signs() {
        let m = 4;
        assert_eq!(Mv::one(m).conjugate(), Mv::one(m));
        let e1 = Mv::basis_vector(m, 1);
        assert_eq!(e1.conjugate(), e1.neg_ref());
        let e12 = Mv::basis_blade(m, 0b11);
        assert_eq!(e12.conjugate(), e12.neg_ref());
        // grade signs cycle with period 4: +, -, -, +
        for ell in 0..=4u32 {
            let expected = [1, -1, -1, 1, 1][(ell % 4) as usize];
            assert_eq!(conjugate_sign(ell), expected, "grade {}", ell);
        }
    }

    #[test]
    fn mu_table_m3() {
        assert_eq!(mu_i64(0, 3), -3);
        assert_eq!(mu_i64(1, 3), 1);
        assert_eq!(mu_i64(2, 3), 1);
        assert_eq!(mu_i64(3, 3), -3);
    }

    #[test]
    fn sandwich_on_every_blade_up_to_m6() {
        for m in 1..=6u32 {
            for mask in 0..(1u32 << m) {
                let a = Mv::basis_blade(m, mask);
                let expected = a.scale(&mu(mask.count_ones(), m));
                assert_eq!(a.sandwich_sum(), expected, "m={} mask={:b}", m, mask);
            }
        }
    }

    #[test]
    fn grade_projections_sum_to_identity() {
        let m = 3;
        let a = Mv::from_terms(
            m,
            [
                (0b000, rat(1, 2)),
                (0b001, rat(-3, 1)),
                (0b011, rat(5, 7)),
                (0b111, rat(2, 3)),
            ],
        );
        let mut sum = Mv::zero(m);
        for ell in 0..=m {
            sum = sum.add_ref(&a.grade_project(ell));
        }
        assert_eq!(sum, a);
        assert_eq!(a.grades(), alloc::vec![0, 1, 2, 3]);
    }

    #[test]
    #[should_panic(expected = "dimension mismatch")]
    fn mixed_dimension_product_panics() {
        let a = Mv::one(2);
        let b = Mv::one(3);
        let _ = &a * &b;
    }

    fn arb_rat() -> impl Strategy<Value = Rat> {
        (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
    }

    fn arb_mv(m: u32) -> impl Strategy<Value = Mv> {
        proptest::collection::vec((0u32..(1 << m), arb_rat()), 0..6)
            .prop_map(move |terms| Mv::from_terms(m, terms))
    }

    proptest! {
        #[test]
        fn product_is_associative(a in arb_mv(4), b in arb_mv(4), c in arb_mv(4)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn product_distributes(a in arb_mv(3), b in arb_mv(3), c in arb_mv(3)) {
            prop_assert_eq!(&a * &b.add_ref(&c), (&a * &b).add_ref(&(&a * &c)));
        }

        #[test]
        fn conjugation_is_anti_automorphism(a in arb_mv(4), b in arb_mv(4)) {
            prop_assert_eq!((&a * &b).conjugate(), &b.conjugate() * &a.conjugate());
        }

        #[test]
        fn vectors_square_to_minus_norm(coords in proptest::collection::vec(arb_rat(), 4)) {
            let m = 4u32;
            let x = Mv::from_terms(m, (1..=m).map(|j| (1 << (j - 1), coords[(j - 1) as usize].clone())));
            let sq = &x * &x;
            let norm: Rat = coords.iter().map(|c| c.clone() * c.clone()).sum();
            prop_assert_eq!(sq, Mv::scalar(m, -norm));
        }

        #[test]
        fn sandwich_is_linear_in_grades(a in arb_mv(5)) {
            // sum over grade projections reproduces the sandwich of the whole
            let m = 5u32;
            let mut expected = Mv::zero(m);
            for ell in 0..=m {
                expected = expected.add_ref(&a.grade_project(ell).scale(&mu(ell, m)));
            }
            prop_assert_eq!(a.sandwich_sum(), expected);
        }
    }
}
