//! Exact integer and rational arithmetic.
//!
//! Everything above this module works over [`Rat`] (reduced big rationals)
//! and [`IntMat`] / [`RatMat`]. Integer normal forms follow fixed conventions
//! so that lattice canonical forms and golden outputs are reproducible:
//!
//! * [`hnf`] is row-style: `H = U·M`, `H` in row echelon form with positive
//!   pivots and every entry above a pivot reduced into `[0, pivot)`.
//! * [`snf`] returns `S = U·M·V` with nonnegative diagonal `s_1 | s_2 | ...`.

mod matrix;
mod normal_form;
mod rat;

pub use matrix::{gcd_all, IntMat, RatMat};
pub(crate) use matrix::is_zero_vec;
pub use normal_form::{hnf, snf, Hnf, Snf};
pub use rat::{ceil_rat, floor_rat, frac_rat, int_root_floor, parse_rat, rat, rat_int, Rat};

pub use num_bigint::BigInt;
