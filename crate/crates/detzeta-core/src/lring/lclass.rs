//! Reduced fractions of integer Laurent polynomials in `L`: the computable
//! representative of a class in the localized Grothendieck ring.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lring::lpoly::LPoly;

/// A class in the localization of the Grothendieck ring at `L`, held as a
/// reduced fraction of integer Laurent polynomials.
///
/// Canonical form: the denominator is an ordinary polynomial (lowest exponent
/// `0`, so all `L`-power units sit in the numerator), shares no non-unit
/// factor — polynomial or integer — with the numerator, and has a positive
/// leading coefficient. Equality is therefore plain structural equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LClass {
    num: LPoly,
    den: LPoly,
}

impl LClass {
    /// Builds and canonicalizes `num / den`. Fails on a zero denominator.
    pub fn new(num: LPoly, den: LPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        let mut c = LClass { num, den };
        c.canonicalize();
        Ok(c)
    }

    pub fn zero() -> Self {
        LClass { num: LPoly::zero(), den: LPoly::one() }
    }

    pub fn one() -> Self {
        LClass { num: LPoly::one(), den: LPoly::one() }
    }

    /// The class of the affine line.
    pub fn l() -> Self {
        LClass { num: LPoly::l(), den: LPoly::one() }
    }

    /// `L^k` for any integer `k`.
    pub fn l_pow(k: i64) -> Self {
        LClass { num: LPoly::monomial(k, 1), den: LPoly::one() }
    }

    pub fn from_int<C: Into<BigInt>>(c: C) -> Self {
        LClass { num: LPoly::constant(c), den: LPoly::one() }
    }

    pub fn from_poly(p: LPoly) -> Self {
        LClass { num: p, den: LPoly::one() }
    }

    pub fn numerator(&self) -> &LPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the class is an honest Laurent polynomial.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    fn canonicalize(&mut self) {
        debug_assert!(!self.den.is_zero());
        if self.num.is_zero() {
            self.den = LPoly::one();
            return;
        }
        // Denominator becomes ordinary with nonzero constant term; its
        // L-power unit moves into the numerator.
        let dmin = self.den.min_exp().unwrap();
        if dmin != 0 {
            self.den = self.den.mul_lpow(-dmin);
            self.num = self.num.mul_lpow(-dmin);
        }
        if !self.den.is_one() {
            // Polynomial part: cancel the primitive gcd (computed on the
            // ordinary representatives; L-powers are units and never shared).
            let g = self.num.gcd(&self.den);
            if g.degree().unwrap_or(0) > 0 {
                self.num = self.num.div_exact(&g).expect("gcd divides numerator");
                self.den = self.den.div_exact(&g).expect("gcd divides denominator");
            }
        }
        // Integer content.
        let c = self.num.content().gcd(&self.den.content());
        if !c.is_one() {
            self.num = self.num.div_exact(&LPoly::constant(c.clone())).unwrap();
            self.den = self.den.div_exact(&LPoly::constant(c)).unwrap();
        }
        // Positive leading coefficient downstairs.
        if self.den.leading_coeff().is_negative() {
            self.num = self.num.neg();
            self.den = self.den.neg();
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den.is_one() && other.den.is_one() {
            return LClass { num: self.num.add(&other.num), den: LPoly::one() };
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        let mut c = LClass { num, den };
        c.canonicalize();
        c
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LClass { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut c = LClass {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        };
        c.canonicalize();
        c
    }

    /// Division; fails on a zero divisor.
    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::InvalidArgument("division by the zero class".into()));
        }
        let mut c = LClass {
            num: self.num.mul(&other.den),
            den: self.den.mul(&other.num),
        };
        c.canonicalize();
        Ok(c)
    }

    /// Integer power, negative allowed for nonzero classes.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let p = e.unsigned_abs().try_into().map_err(|_| {
            Error::InvalidArgument(format!("exponent {e} too large"))
        })?;
        let mut c = LClass { num: self.num.pow(p), den: self.den.pow(p) };
        c.canonicalize();
        if e < 0 {
            return LClass::one().div(&c);
        }
        Ok(c)
    }

    /// `lclass_eval`: exact value at `L = q` for a positive integer `q`.
    pub fn eval(&self, q: u64) -> Result<BigRational> {
        if q == 0 {
            return Err(Error::InvalidArgument("q must be a positive integer".into()));
        }
        let x = BigRational::from(BigInt::from(q));
        let dv = self.den.eval_rational(&x)?;
        if dv.is_zero() {
            return Err(Error::DenominatorVanishes { q });
        }
        Ok(self.num.eval_rational(&x)? / dv)
    }

    /// Exact value at an arbitrary rational point.
    pub fn eval_rational(&self, x: &BigRational) -> Result<BigRational> {
        let dv = self.den.eval_rational(x)?;
        if dv.is_zero() {
            return Err(Error::InvalidArgument(format!(
                "denominator vanishes at L = {x}"
            )));
        }
        Ok(self.num.eval_rational(x)? / dv)
    }

    /// `lclass_order_at_one`: the (L-1)-adic valuation (numerator multiplicity
    /// minus denominator multiplicity). Undefined for the zero class.
    pub fn order_at_one(&self) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ZeroClass);
        }
        Ok(self.num.order_at_one()? - self.den.order_at_one()?)
    }

    /// `lclass_euler`: cancels all `L - 1` factors and evaluates at `L = 1`.
    /// Fails with a pole error when the order at `L - 1` is negative.
    pub fn euler(&self) -> Result<BigInt> {
        if self.is_zero() {
            return Ok(BigInt::zero());
        }
        let ord = self.order_at_one()?;
        if ord < 0 {
            return Err(Error::PoleAtOne { order: ord });
        }
        if ord > 0 {
            // the numerator vanishes to strictly higher order, so the
            // limit at L = 1 is zero
            return Ok(BigInt::zero());
        }
        let lm1 = LPoly::l_pow_minus_one(1);
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        while num.eval_at_one().is_zero() {
            num = num.div_exact(&lm1).expect("(L-1) divides");
        }
        while den.eval_at_one().is_zero() {
            den = den.div_exact(&lm1).expect("(L-1) divides");
        }
        let n1 = num.eval_at_one();
        let d1 = den.eval_at_one();
        let (q, r) = n1.div_rem(&d1);
        if !r.is_zero() {
            return Err(Error::NotInDomain(format!(
                "Euler specialization is not an integer: {n1}/{d1}"
            )));
        }
        Ok(q)
    }

    /// The exponent-sorted JSON form `{num: [[exp, coeff], …], den: …}`, with
    /// coefficients as decimal strings so arbitrary precision survives.
    pub fn to_json(&self) -> serde_json::Value {
        let side = |p: &LPoly| {
            serde_json::Value::Array(
                p.pairs()
                    .map(|(e, c)| {
                        serde_json::Value::Array(vec![
                            serde_json::Value::from(e),
                            serde_json::Value::from(c.to_string()),
                        ])
                    })
                    .collect(),
            )
        };
        serde_json::json!({ "num": side(&self.num), "den": side(&self.den) })
    }

    /// Parses the JSON form produced by [`LClass::to_json`]; coefficients may
    /// be JSON integers or decimal strings.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let side = |key: &str| -> Result<LPoly> {
            let arr = v
                .get(key)
                .and_then(|x| x.as_array())
                .ok_or_else(|| Error::Parse(format!("missing array field {key:?}")))?;
            let mut pairs = Vec::with_capacity(arr.len());
            for item in arr {
                let pair = item
                    .as_array()
                    .filter(|p| p.len() == 2)
                    .ok_or_else(|| Error::Parse("each term must be [exp, coeff]".into()))?;
                let e = pair[0]
                    .as_i64()
                    .ok_or_else(|| Error::Parse("exponent must be an integer".into()))?;
                let c: BigInt = match &pair[1] {
                    serde_json::Value::Number(n) => n
                        .to_string()
                        .parse()
                        .map_err(|_| Error::Parse("bad coefficient".into()))?,
                    serde_json::Value::String(s) => s
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad coefficient {s:?}")))?,
                    _ => return Err(Error::Parse("coefficient must be a number or string".into())),
                };
                pairs.push((e, c));
            }
            Ok(LPoly::from_pairs(pairs))
        };
        LClass::new(side("num")?, side("den")?)
    }
}

impl fmt::Display for LClass {
    /// Fixed grammar `num / den`; the ` / den` part is omitted when the
    /// denominator is 1. A slash never occurs inside a term list, so the
    /// format is unambiguous.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{} / {}", self.num, self.den)
        }
    }
}

impl FromStr for LClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.find('/') {
            None => LClass::new(s.parse()?, LPoly::one()),
            Some(i) => {
                let num: LPoly = s[..i].parse()?;
                let den: LPoly = s[i + 1..].parse()?;
                LClass::new(num, den)
            }
        }
    }
}

impl Serialize for LClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LClass {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(deserializer)?;
        LClass::from_json(&v).map_err(D::Error::custom)
    }
}
