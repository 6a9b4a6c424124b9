//! Cauchy-Kovalevskaya extension of polynomials from the hyperplane x_0 = 0.
//!
//! For an x_0-free polynomial seed g the extension is the terminating series
//! CK[g] = sum_n (-x_0)^n / n! (dirac^n g), the unique monogenic polynomial
//! restricting to g at x_0 = 0. The extension is two-sided monogenic exactly
//! when the seed commutes with the Dirac operator, dirac g = g dirac; that
//! identity propagates to all powers, so checking the seed suffices.

use core::fmt;

use crate::mpoly::MvPoly;
use crate::scalar::Coeff;

/// Why a seed was rejected.
pub enum CkError<T: Coeff> {
    /// The seed depends on x_0, so it is not boundary data.
    SeedDependsOnX0,
    /// dirac g != g dirac; the extension would be left monogenic only.
    /// Carries the nonzero difference dirac g - g dirac.
    NotTwoSidedSeed { difference: MvPoly<T> },
}

impl<T: Coeff + fmt::Display> fmt::Debug for CkError<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CkError::SeedDependsOnX0 => write!(f, "seed depends on x_0"),
            CkError::NotTwoSidedSeed { difference } => {
                write!(f, "seed fails dirac g = g dirac; difference = {}", difference)
            }
        }
    }
}

/// Monogenic extension of an x_0-free seed. Panics if the seed involves x_0;
/// use [`ck_two_sided`] when the two-sided property must be certified.
pub fn ck_extend<T: Coeff>(g: &MvPoly<T>) -> MvPoly<T> {
    assert!(g.is_x0_free(), "CK extension requires an x_0-free seed");
    let mut result = g.clone();
    let mut term = g.clone();
    let mut n = 1i64;
    loop {
        // term_n = (-x_0 / n) * dirac(term_{n-1}) accumulates (-x_0)^n/n! dirac^n g;
        // dirac ignores x_0 so the prefactor passes through untouched.
        let d = term.dirac_left();
        if d.is_zero() {
            break;
        }
        term = d
            .mul_var_pow(0, 1)
            .scale(&T::from_int(-1).div_int(n));
        result = result.add_ref(&term);
        n += 1;
    }
    result
}

/// CK extension certified two-sided: errors unless dirac g = g dirac.
pub fn ck_two_sided<T: Coeff>(g: &MvPoly<T>) -> Result<MvPoly<T>, CkError<T>> {
    if !g.is_x0_free() {
        return Err(CkError::SeedDependsOnX0);
    }
    let difference = g.dirac_left().sub_ref(&g.dirac_right());
    if !difference.is_zero() {
        return Err(CkError::NotTwoSidedSeed { difference });
    }
    Ok(ck_extend(g))
}
