//! Integer Laurent polynomials in the symbol `L`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A Laurent polynomial in `L` with arbitrary-precision integer coefficients.
///
/// Stored as a sorted map from exponent to nonzero coefficient; two values are
/// equal exactly when their coefficient maps are identical.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        LPoly::default()
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        LPoly::constant(BigInt::one())
    }

    /// A constant polynomial.
    pub fn constant<C: Into<BigInt>>(c: C) -> Self {
        LPoly::monomial(0, c)
    }

    /// The monomial `c * L^exp`.
    pub fn monomial<C: Into<BigInt>>(exp: i64, c: C) -> Self {
        let c = c.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        LPoly { coeffs }
    }

    /// The variable `L`.
    pub fn l() -> Self {
        LPoly::monomial(1, 1)
    }

    /// `L^b - 1` for `b >= 1`.
    pub fn l_pow_minus_one(b: u32) -> Self {
        let mut p = LPoly::monomial(i64::from(b), 1);
        p.coeffs.insert(0, BigInt::from(-1));
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, merging
    /// duplicates and dropping zeros.
    pub fn from_pairs<I, C>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut coeffs: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e, c) in pairs {
            let c = c.into();
            if c.is_zero() {
                continue;
            }
            let entry = coeffs.entry(e).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                coeffs.remove(&e);
            }
        }
        LPoly { coeffs }
    }

    /// Exponent-sorted `(exponent, coefficient)` view.
    pub fn pairs(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    /// Number of stored terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    /// Highest exponent, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Lowest exponent, `None` for the zero polynomial.
    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Coefficient of `L^exp` (zero when absent).
    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Leading (highest-exponent) coefficient; zero for the zero polynomial.
    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs
            .values()
            .next_back()
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// Multiplies by `L^k` (exponent shift).
    pub fn mul_lpow(&self, k: i64) -> Self {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        LPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        LPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (big, small) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = big.coeffs.clone();
        for (e, c) in &small.coeffs {
            let entry = coeffs.entry(*e).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                coeffs.remove(e);
            }
        }
        LPoly { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (e, c) in &other.coeffs {
            let entry = coeffs.entry(*e).or_insert_with(BigInt::zero);
            *entry -= c;
            if entry.is_zero() {
                coeffs.remove(e);
            }
        }
        LPoly { coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return LPoly::zero();
        }
        let mut coeffs: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                let e = e1 + e2;
                let entry = coeffs.entry(e).or_insert_with(BigInt::zero);
                *entry += c1 * c2;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        LPoly { coeffs }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = LPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Positive gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.coeffs.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides every coefficient by `d` (must divide exactly).
    fn div_content(&self, d: &BigInt) -> Self {
        LPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c / d)).collect(),
        }
    }

    /// Primitive part with positive leading coefficient (ordinary shift kept).
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return LPoly::zero();
        }
        let mut c = self.content();
        if self.leading_coeff().is_negative() {
            c = -c;
        }
        self.div_content(&c)
    }

    /// Exact division: `Some(q)` with `q * d == self`, or `None`.
    ///
    /// Works over the integers: each elimination step must divide exactly.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LPoly::zero());
        }
        // Shift both to ordinary polynomials; track the net Laurent shift.
        let self_min = self.min_exp().unwrap();
        let d_min = d.min_exp().unwrap();
        let shift = self_min - d_min;
        let mut rem = self.mul_lpow(-self_min);
        let dd = d.mul_lpow(-d_min);
        let d_deg = dd.degree().unwrap();
        let d_lead = dd.leading_coeff();
        let mut quot: BTreeMap<i64, BigInt> = BTreeMap::new();
        while !rem.is_zero() {
            let r_deg = rem.degree().unwrap();
            if r_deg < d_deg {
                return None;
            }
            let r_lead = rem.leading_coeff();
            let (q, r) = r_lead.div_rem(&d_lead);
            if !r.is_zero() {
                return None;
            }
            let e = r_deg - d_deg;
            rem = rem.sub(&dd.mul_lpow(e).scale(&q));
            quot.insert(e, q);
        }
        Some(LPoly { coeffs: quot }.mul_lpow(shift))
    }

    /// Multiplies every coefficient by `k`.
    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return LPoly::zero();
        }
        LPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    /// Primitive polynomial gcd over the integers (primitive-PRS), ignoring
    /// Laurent units: the result is an ordinary primitive polynomial with
    /// positive leading coefficient. `gcd(0, b) = primitive(b)`.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive();
        }
        if other.is_zero() {
            return self.primitive();
        }
        let mut a = self.mul_lpow(-self.min_exp().unwrap()).primitive();
        let mut b = other.mul_lpow(-other.min_exp().unwrap()).primitive();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a
    }

    /// Pseudo-remainder `prem(self, d)`: the remainder of
    /// `lc(d)^(deg self - deg d + 1) * self` by `d`. Requires ordinary
    /// polynomials with `deg self >= deg d`, `d != 0`.
    fn pseudo_rem(&self, d: &Self) -> Self {
        let d_deg = d.degree().expect("pseudo_rem by zero");
        let d_lead = d.leading_coeff();
        let mut rem = self.clone();
        while let Some(r_deg) = rem.degree() {
            if r_deg < d_deg {
                break;
            }
            let r_lead = rem.leading_coeff();
            rem = rem.scale(&d_lead).sub(&d.mul_lpow(r_deg - d_deg).scale(&r_lead));
        }
        rem
    }

    /// Exact value at a rational point (negative exponents require `x != 0`).
    pub fn eval_rational(&self, x: &BigRational) -> Result<BigRational> {
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        let min = self.min_exp().unwrap();
        if min < 0 && x.is_zero() {
            return Err(Error::InvalidArgument(
                "cannot evaluate a Laurent polynomial with negative exponents at 0".into(),
            ));
        }
        // Horner over the ordinary shift, then multiply by x^min.
        let shifted: Vec<(i64, &BigInt)> = self.coeffs.iter().map(|(e, c)| (e - min, c)).collect();
        let deg = shifted.last().map(|(e, _)| *e).unwrap_or(0);
        let mut acc = BigRational::zero();
        let mut next = deg;
        for (e, c) in shifted.iter().rev() {
            while next > *e {
                acc *= x;
                next -= 1;
            }
            acc += BigRational::from((*c).clone());
        }
        while next > 0 {
            acc *= x;
            next -= 1;
        }
        let unit = rational_pow(x, min)?;
        Ok(acc * unit)
    }

    /// Value at `L = 1` (the sum of the coefficients).
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Multiplicity of the factor `L - 1`.
    pub fn order_at_one(&self) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ZeroClass);
        }
        let lm1 = LPoly::l_pow_minus_one(1);
        let mut p = self.mul_lpow(-self.min_exp().unwrap());
        let mut ord = 0i64;
        while p.eval_at_one().is_zero() {
            p = p.div_exact(&lm1).expect("(L-1) divides a poly vanishing at 1");
            ord += 1;
        }
        Ok(ord)
    }
}

/// `x^e` for a possibly negative exponent.
pub(crate) fn rational_pow(x: &BigRational, e: i64) -> Result<BigRational> {
    if e == 0 {
        return Ok(BigRational::one());
    }
    if x.is_zero() {
        if e > 0 {
            return Ok(BigRational::zero());
        }
        return Err(Error::InvalidArgument("0 cannot be raised to a negative power".into()));
    }
    let p = x.pow(e.unsigned_abs().try_into().map_err(|_| {
        Error::InvalidArgument(format!("exponent {e} too large"))
    })?);
    Ok(if e > 0 { p } else { p.recip() })
}

impl fmt::Display for LPoly {
    /// Fixed grammar: descending exponents, terms like `3*L^2 - L + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            let neg = c.is_negative();
            let mag = c.magnitude();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = mag.is_one();
            match (*e, unit_coeff) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "L")?,
                (1, false) => write!(f, "{mag}*L")?,
                (_, true) => write!(f, "L^{e}")?,
                (_, false) => write!(f, "{mag}*L^{e}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for LPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut pairs: Vec<(i64, BigInt)> = Vec::new();
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let bytes = compact.as_bytes();
        let mut i = 0usize;
        while i < bytes.len() {
            // sign
            let mut sign = 1i64;
            while i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
                if bytes[i] == b'-' {
                    sign = -sign;
                }
                i += 1;
            }
            if i >= bytes.len() {
                return Err(Error::Parse(format!("dangling sign in {s:?}")));
            }
            // optional integer coefficient
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let coeff_digits = &compact[start..i];
            // optional '*' then L part
            let mut has_l = false;
            let mut exp = 0i64;
            if i < bytes.len() && bytes[i] == b'*' {
                i += 1;
                if i >= bytes.len() || bytes[i] != b'L' {
                    return Err(Error::Parse(format!("expected L after '*' in {s:?}")));
                }
            }
            if i < bytes.len() && bytes[i] == b'L' {
                has_l = true;
                exp = 1;
                i += 1;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    let estart = i;
                    if i < bytes.len() && bytes[i] == b'-' {
                        i += 1;
                    }
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    exp = compact[estart..i]
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
                }
            }
            let coeff: BigInt = if coeff_digits.is_empty() {
                if !has_l {
                    return Err(Error::Parse(format!("term with neither coefficient nor L in {s:?}")));
                }
                BigInt::one()
            } else {
                coeff_digits
                    .parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad coefficient in {s:?}")))?
            };
            pairs.push((exp, coeff * sign));
        }
        Ok(LPoly::from_pairs(pairs))
    }
}
