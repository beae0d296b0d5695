//! Classes kept in the factored shape `c * L^a * prod (L^b - 1)^{e_b}`.
//!
//! Every class the closed formulas produce — general linear groups,
//! Grassmannians, orbit and blow-up-image classes — is a ratio of products of
//! `L^a` and `(L^b - 1)`, so keeping the exponent bookkeeping explicit makes
//! products, quotients, `(L-1)`-adic valuations and Euler specializations
//! O(number of factors) instead of polynomial-arithmetic work. Expansion to
//! an [`LClass`] happens once at the end via stepwise exact division.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lring::lclass::LClass;
use crate::lring::lpoly::{rational_pow, LPoly};

/// `coeff * L^lpow * prod_b (L^b - 1)^{factors[b]}`.
///
/// Zero is represented by `coeff == 0` with everything else cleared; stored
/// factor exponents are never zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factored {
    coeff: BigInt,
    lpow: i64,
    factors: BTreeMap<u32, i64>,
}

impl Factored {
    pub fn one() -> Self {
        Factored { coeff: BigInt::one(), lpow: 0, factors: BTreeMap::new() }
    }

    pub fn zero() -> Self {
        Factored { coeff: BigInt::zero(), lpow: 0, factors: BTreeMap::new() }
    }

    pub fn from_int<C: Into<BigInt>>(c: C) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Factored::zero();
        }
        Factored { coeff: c, lpow: 0, factors: BTreeMap::new() }
    }

    /// `L^k`.
    pub fn l_pow(k: i64) -> Self {
        Factored { coeff: BigInt::one(), lpow: k, factors: BTreeMap::new() }
    }

    /// `(L^b - 1)^e` for `b >= 1`.
    pub fn cyclic(b: u32, e: i64) -> Self {
        assert!(b >= 1, "cyclic factor needs b >= 1");
        let mut factors = BTreeMap::new();
        if e != 0 {
            factors.insert(b, e);
        }
        Factored { coeff: BigInt::one(), lpow: 0, factors }
    }

    /// `[GL_d] = L^{d(d-1)/2} * prod_{j=1..d} (L^j - 1)`; `[GL_0] = 1`.
    pub fn gl(d: u32) -> Self {
        let d64 = i64::from(d);
        let mut f = Factored::l_pow(d64 * (d64 - 1) / 2);
        for j in 1..=d {
            f.factors.insert(j, 1);
        }
        f
    }

    /// `[G(d,k)] = prod_{j=1..d} (L^{j+k-d} - 1)/(L^j - 1)` for `0 <= d <= k`.
    pub fn grassmannian(d: u32, k: u32) -> Result<Self> {
        if d > k {
            return Err(Error::InvalidArgument(format!(
                "Grassmannian G({d},{k}) needs d <= k"
            )));
        }
        let mut f = Factored::one();
        for j in 1..=d {
            f = f.mul(&Factored::cyclic(j + k - d, 1));
            f = f.mul(&Factored::cyclic(j, -1));
        }
        Ok(f)
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Factored::zero();
        }
        let mut factors = self.factors.clone();
        for (b, e) in &other.factors {
            let entry = factors.entry(*b).or_insert(0);
            *entry += e;
            if *entry == 0 {
                factors.remove(b);
            }
        }
        Factored { coeff: &self.coeff * &other.coeff, lpow: self.lpow + other.lpow, factors }
    }

    /// Division; the divisor's integer coefficient must be a unit (+-1) for
    /// the result to stay integral, otherwise the quotient moves to an
    /// explicit fraction at expansion time, so we simply keep the coefficient
    /// ratio exact by requiring it to divide.
    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::InvalidArgument("division by zero factored class".into()));
        }
        if self.is_zero() {
            return Ok(Factored::zero());
        }
        use num_integer::Integer;
        let (q, r) = self.coeff.div_rem(&other.coeff);
        if !r.is_zero() {
            return Err(Error::InvalidArgument(format!(
                "non-integral coefficient quotient {}/{}",
                self.coeff, other.coeff
            )));
        }
        let mut factors = self.factors.clone();
        for (b, e) in &other.factors {
            let entry = factors.entry(*b).or_insert(0);
            *entry -= e;
            if *entry == 0 {
                factors.remove(b);
            }
        }
        Ok(Factored { coeff: q, lpow: self.lpow - other.lpow, factors })
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if self.is_zero() {
            if e == 0 {
                return Ok(Factored::one());
            }
            if e < 0 {
                return Err(Error::InvalidArgument("0^negative".into()));
            }
            return Ok(Factored::zero());
        }
        let coeff = if e >= 0 {
            let exp = u32::try_from(e)
                .map_err(|_| Error::InvalidArgument(format!("exponent {e} too large")))?;
            self.coeff.pow(exp)
        } else if self.coeff.magnitude().is_one() {
            // (+-1)^e depends only on the parity of e
            if e.rem_euclid(2) == 0 { BigInt::one() } else { self.coeff.clone() }
        } else {
            return Err(Error::InvalidArgument(
                "negative power of a non-unit integer coefficient".into(),
            ));
        };
        Ok(Factored {
            coeff,
            lpow: self.lpow * e,
            factors: self.factors.iter().map(|(b, x)| (*b, x * e)).collect(),
        })
    }

    /// The `(L-1)`-adic valuation: each `(L^b - 1)` carries exactly one
    /// factor of `L - 1`.
    pub fn order_at_one(&self) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ZeroClass);
        }
        Ok(self.factors.values().sum())
    }

    /// Euler specialization as an exact rational: `0` when the valuation is
    /// positive, a pole error when negative, otherwise
    /// `coeff * prod b^{e_b}` (each `(L^b-1)/(L-1)` contributes `b` at 1).
    pub fn euler(&self) -> Result<BigRational> {
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        let ord = self.order_at_one()?;
        if ord > 0 {
            return Ok(BigRational::zero());
        }
        if ord < 0 {
            return Err(Error::PoleAtOne { order: ord });
        }
        let mut v = BigRational::from(self.coeff.clone());
        for (b, e) in &self.factors {
            v *= rational_pow(&BigRational::from(BigInt::from(*b)), *e)?;
        }
        Ok(v)
    }

    /// Exact value at `L = q`.
    pub fn eval(&self, q: u64) -> Result<BigRational> {
        if q == 0 {
            return Err(Error::InvalidArgument("q must be positive".into()));
        }
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        let qq = BigRational::from(BigInt::from(q));
        let mut v = BigRational::from(self.coeff.clone()) * rational_pow(&qq, self.lpow)?;
        for (b, e) in &self.factors {
            let base = BigRational::from(BigInt::from(q).pow(*b) - BigInt::one());
            if base.is_zero() {
                if *e < 0 {
                    return Err(Error::DenominatorVanishes { q });
                }
                return Ok(BigRational::zero());
            }
            v *= rational_pow(&base, *e)?;
        }
        Ok(v)
    }

    /// Expands to an [`LClass`] by multiplying the positive-exponent factors
    /// and exactly dividing out the negative ones; any residual division that
    /// fails to be exact falls back to the general fraction path.
    pub fn to_lclass(&self) -> LClass {
        if self.is_zero() {
            return LClass::zero();
        }
        let mut num = LPoly::constant(self.coeff.clone()).mul_lpow(self.lpow);
        let mut pending_den: Vec<u32> = Vec::new();
        for (b, e) in &self.factors {
            for _ in 0..e.unsigned_abs() {
                if *e > 0 {
                    num = num.mul(&LPoly::l_pow_minus_one(*b));
                } else {
                    pending_den.push(*b);
                }
            }
        }
        // Divide by small b first: (L-1) | (L^b - 1) style cancellations
        // succeed most often in that order.
        pending_den.sort_unstable();
        let mut den = LPoly::one();
        for b in pending_den {
            let d = LPoly::l_pow_minus_one(b);
            match num.div_exact(&d) {
                Some(q) => num = q,
                None => den = den.mul(&d),
            }
        }
        LClass::new(num, den).expect("denominator is a product of (L^b - 1), never zero")
    }
}

impl fmt::Display for Factored {
    /// Compact factored display used by the CLI: cyclotomic-irreducible
    /// factors in ascending order, e.g. `L^3*(L-1)^2*(L+1)^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Split each (L^b - 1) into cyclotomic factors Phi_d, d | b.
        let mut cyclo_exp: BTreeMap<u32, i64> = BTreeMap::new();
        for (b, e) in &self.factors {
            for d in 1..=*b {
                if b % d == 0 {
                    *cyclo_exp.entry(d).or_insert(0) += e;
                }
            }
        }
        cyclo_exp.retain(|_, e| *e != 0);
        let mut parts: Vec<String> = Vec::new();
        let show_coeff = !self.coeff.is_one();
        let neg_one = self.coeff == BigInt::from(-1);
        if show_coeff && !neg_one {
            parts.push(self.coeff.to_string());
        }
        match self.lpow {
            0 => {}
            1 => parts.push("L".to_string()),
            k => parts.push(format!("L^{k}")),
        }
        for (d, e) in &cyclo_exp {
            let phi = compact_poly(&cyclotomic(*d));
            if *e == 1 {
                parts.push(format!("({phi})"));
            } else {
                parts.push(format!("({phi})^{e}"));
            }
        }
        if parts.is_empty() {
            parts.push("1".to_string());
        }
        let body = parts.join("*");
        if neg_one {
            write!(f, "-{body}")
        } else {
            write!(f, "{body}")
        }
    }
}

/// The `d`-th cyclotomic polynomial, by exact division of `L^d - 1` by the
/// lower cyclotomics.
pub fn cyclotomic(d: u32) -> LPoly {
    let mut p = LPoly::l_pow_minus_one(d);
    for e in 1..d {
        if d % e == 0 {
            p = p
                .div_exact(&cyclotomic(e))
                .expect("cyclotomic polynomials divide L^d - 1 exactly");
        }
    }
    p
}

/// Space-free rendering (`L^2+L+1`) for factored displays.
fn compact_poly(p: &LPoly) -> String {
    p.to_string().replace(' ', "")
}
