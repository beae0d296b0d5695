//! Exact arithmetic in the fraction field of integer Laurent polynomials in
//! the symbol `L` (the class of the affine line), with the two specializations
//! the theory uses: evaluation at a prime power `q` (point counting over
//! `F_q`) and the Euler-characteristic specialization at `L = 1`.
//!
//! [`LPoly`] is the raw Laurent polynomial; [`LClass`] is a canonically
//! reduced fraction of them, the computable representative of a class in the
//! localized Grothendieck ring; [`Factored`] keeps products of `L^a` and
//! `(L^b - 1)` unexpanded for cheap exponent bookkeeping.

pub mod factored;
pub mod lclass;
pub mod lpoly;

pub use factored::{cyclotomic, Factored};
pub use lclass::LClass;
pub use lpoly::LPoly;

/// `lclass_eval`: exact rational value of a class at `L = q`.
pub fn lclass_eval(c: &LClass, q: u64) -> crate::error::Result<num_rational::BigRational> {
    c.eval(q)
}

/// `lclass_order_at_one`: the `(L-1)`-adic valuation of a nonzero class.
pub fn lclass_order_at_one(c: &LClass) -> crate::error::Result<i64> {
    c.order_at_one()
}

/// `lclass_euler`: the Euler-characteristic specialization at `L = 1`.
pub fn lclass_euler(c: &LClass) -> crate::error::Result<num_bigint::BigInt> {
    c.euler()
}
