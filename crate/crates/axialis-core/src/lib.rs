//! Clifford analysis over R_{0,m}.
//!
//! The algebra is generated by e_1..e_m with e_j e_k + e_k e_j = -2 delta_{jk},
//! so vectors square to minus their length: x^2 = -|x|^2. On top of the algebra
//! the crate builds an exact polynomial calculus (Dirac operators, CK extension,
//! spherical monogenics, Fischer decompositions), the axial machinery that turns
//! two-sided monogenicity into first-order systems on profile functions, the
//! special functions (Gegenbauer, Bessel, Gauss-Jacobi quadrature) driving the
//! plane-wave integral representations, and primitivation of axial monogenics.
//!
//! Exact objects use arbitrary-precision rationals; numeric paths are f64/Complex64
//! with all transcendental calls routed through libm, so the crate builds without
//! std (alloc required).

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]
// matrix and quadrature kernels index several arrays in lockstep; iterator
// rewrites of those loops obscure the formulas they transcribe
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod axial;
pub mod ckext;
pub mod clifford;
pub mod linalg;
pub mod mpoly;
pub mod numeric;
pub mod planewave;
pub mod primitive;
pub mod real;
pub mod scalar;
pub mod specfun;
pub mod spherical;

pub use clifford::Multivector;
pub use mpoly::MvPoly;
pub use scalar::{Coeff, Rat};

/// Largest supported number of generators. Blades are u32 bitmasks and the
/// exact solvers are sized for small m; 12 is far beyond every sweep used here.
pub const MAX_DIM: u32 = 12;
