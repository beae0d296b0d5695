//! Exact univariate rational-function arithmetic over the rationals, and the
//! factored zeta form `c * prod (N*s + nu)^e` used by the topological zeta
//! functions.
//!
//! The factored form is primary: poles keep their `(N, nu)` bookkeeping and
//! expansion to a reduced numerator/denominator pair happens only for
//! equality tests and for sums that do not stay factored.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

/// Dense polynomial in one variable `s` with exact rational coefficients.
/// `coeffs[i]` is the coefficient of `s^i`; trailing zeros are trimmed and
/// the zero polynomial is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = QPoly { coeffs: vec![c] };
        p.trim();
        p
    }

    pub fn from_int(c: i64) -> Self {
        QPoly::constant(BigRational::from(BigInt::from(c)))
    }

    /// `nu + N*s`.
    pub fn linear(n: i64, nu: i64) -> Self {
        let mut p = QPoly {
            coeffs: vec![
                BigRational::from(BigInt::from(nu)),
                BigRational::from(BigInt::from(n)),
            ],
        };
        p.trim();
        p
    }

    pub fn monomial(deg: usize, c: BigRational) -> Self {
        if c.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); deg + 1];
        coeffs[deg] = c;
        QPoly { coeffs }
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len().max(other.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        let mut p = QPoly { coeffs };
        p.trim();
        p
    }

    pub fn neg(&self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs =
            vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        let mut p = QPoly { coeffs };
        p.trim();
        p
    }

    pub fn scale(&self, c: &BigRational) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> QPoly {
        let mut acc = QPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division; panics on zero divisor (internal use only).
    pub fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut rem = self.clone();
        let mut quo = QPoly::zero();
        let dd = d.degree().unwrap();
        let dl = d.leading();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.leading() / &dl;
            let m = QPoly::monomial(rd - dd, c);
            quo = quo.add(&m);
            rem = rem.sub(&m.mul(d));
        }
        (quo, rem)
    }

    /// Exact division, or `None` when the remainder is nonzero.
    pub fn div_exact(&self, d: &QPoly) -> Option<QPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd (gcd of anything with 0 is the other argument made monic).
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// Scales to leading coefficient 1 (zero stays zero).
    pub fn make_monic(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let inv = BigRational::one() / self.leading();
        self.scale(&inv)
    }

    pub fn eval(&self, s: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * s + c;
        }
        acc
    }

    /// Multiplicity of the root `rho` (0 when not a root).
    pub fn root_multiplicity(&self, rho: &BigRational) -> u32 {
        let lin = QPoly {
            coeffs: vec![-rho.clone(), BigRational::one()],
        };
        let mut k = 0;
        let mut p = self.clone();
        while !p.is_zero() {
            match p.div_exact(&lin) {
                Some(q) => {
                    k += 1;
                    p = q;
                }
                None => break,
            }
        }
        k
    }
}

fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for QPoly {
    /// Descending powers in the variable `s`, e.g. `s^2 - 3/2*s + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            match (i, unit) {
                (0, _) => write!(f, "{}", fmt_rational(&mag))?,
                (1, true) => write!(f, "s")?,
                (1, false) => write!(f, "{}*s", fmt_rational(&mag))?,
                (_, true) => write!(f, "s^{i}")?,
                (_, false) => write!(f, "{}*s^{i}", fmt_rational(&mag))?,
            }
        }
        Ok(())
    }
}

/// Reduced rational function in `s`: `num/den` with gcd 1 and monic
/// denominator. This normal form is unique, so structural equality is
/// function equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFn {
    num: QPoly,
    den: QPoly,
}

impl RatFn {
    pub fn new(num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFn {
                num: QPoly::zero(),
                den: QPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g).unwrap();
        let mut den = den.div_exact(&g).unwrap();
        let lead = den.leading();
        if !lead.is_one() {
            let inv = BigRational::one() / lead;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFn { num, den }
    }

    pub fn zero() -> Self {
        RatFn {
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }

    pub fn one() -> Self {
        RatFn {
            num: QPoly::one(),
            den: QPoly::one(),
        }
    }

    pub fn from_poly(p: QPoly) -> Self {
        RatFn {
            num: p,
            den: QPoly::one(),
        }
    }

    pub fn numerator(&self) -> &QPoly {
        &self.num
    }

    pub fn denominator(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, other: &RatFn) -> RatFn {
        RatFn::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn mul(&self, other: &RatFn) -> RatFn {
        RatFn::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn scale(&self, c: &BigRational) -> RatFn {
        RatFn::new(self.num.scale(c), self.den.clone())
    }

    /// Evaluation; `None` at a pole.
    pub fn eval(&self, s: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(s);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(s) / d)
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// A zeta-type rational function kept in factored form:
/// `constant * prod (N*s + nu)^e * residual`, with each `(N, nu)` a coprime
/// pair of positive integers and `residual` a reduced rational function
/// (almost always 1).
#[derive(Debug, Clone)]
pub struct ZetaRat {
    constant: BigRational,
    factors: BTreeMap<(u32, u32), i64>,
    residual: RatFn,
}

fn reduce_pair(n: u32, nu: u32) -> ((u32, u32), u32) {
    let g = n.gcd(&nu);
    ((n / g, nu / g), g)
}

impl ZetaRat {
    pub fn zero() -> Self {
        ZetaRat {
            constant: BigRational::zero(),
            factors: BTreeMap::new(),
            residual: RatFn::one(),
        }
    }

    pub fn one() -> Self {
        ZetaRat::from_rational(BigRational::one())
    }

    pub fn from_rational(c: BigRational) -> Self {
        if c.is_zero() {
            return ZetaRat::zero();
        }
        ZetaRat {
            constant: c,
            factors: BTreeMap::new(),
            residual: RatFn::one(),
        }
    }

    /// `prod_j nu_j/(N_j*s + nu_j)` over the given pairs: the closed product
    /// form of the topological zeta functions.
    pub fn closed_product(pairs: &[(u32, u32)]) -> Self {
        let mut z = ZetaRat::one();
        for &(n, nu) in pairs {
            let ((n1, nu1), _) = reduce_pair(n, nu);
            z.constant *= BigRational::from(BigInt::from(nu1));
            z.push_factor(n1, nu1, -1);
        }
        z
    }

    /// `chi * prod_{j in J} 1/(N_j*s + nu_j)`: one stratum's contribution to
    /// the strata-form zeta.
    pub fn pole_term(chi: &BigInt, pairs: &[(u32, u32)]) -> Self {
        if chi.is_zero() {
            return ZetaRat::zero();
        }
        let mut z = ZetaRat::from_rational(BigRational::from(chi.clone()));
        for &(n, nu) in pairs {
            let ((n1, nu1), g) = reduce_pair(n, nu);
            // 1/(N s + nu) = (1/g) * (N' s + nu')^-1
            z.constant /= BigRational::from(BigInt::from(g));
            z.push_factor(n1, nu1, -1);
        }
        z
    }

    fn push_factor(&mut self, n: u32, nu: u32, e: i64) {
        if e == 0 || self.constant.is_zero() {
            return;
        }
        let slot = self.factors.entry((n, nu)).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.factors.remove(&(n, nu));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero()
    }

    pub fn constant(&self) -> &BigRational {
        &self.constant
    }

    pub fn factors(&self) -> &BTreeMap<(u32, u32), i64> {
        &self.factors
    }

    pub fn residual(&self) -> &RatFn {
        &self.residual
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() || self.is_zero() {
            return ZetaRat::zero();
        }
        let mut z = self.clone();
        z.constant *= c;
        z
    }

    pub fn mul(&self, other: &ZetaRat) -> Self {
        if self.is_zero() || other.is_zero() {
            return ZetaRat::zero();
        }
        let mut z = self.clone();
        z.constant *= &other.constant;
        for (&(n, nu), &e) in &other.factors {
            z.push_factor(n, nu, e);
        }
        z.residual = z.residual.mul(&other.residual);
        z
    }

    /// Sum; the result is re-factored against the union of both operands'
    /// linear factors, so sums of pole terms come back in factored form.
    pub fn add(&self, other: &ZetaRat) -> Self {
        let candidates: BTreeSet<(u32, u32)> = self
            .factors
            .keys()
            .chain(other.factors.keys())
            .copied()
            .collect();
        let sum = self.to_ratfn().add(&other.to_ratfn());
        ZetaRat::refactor(sum, &candidates)
    }

    /// Rebuilds a factored form from a reduced rational function, extracting
    /// every candidate linear factor `(N*s + nu)` from numerator and
    /// denominator.
    pub fn refactor(f: RatFn, candidates: &BTreeSet<(u32, u32)>) -> Self {
        if f.is_zero() {
            return ZetaRat::zero();
        }
        let mut num = f.numerator().clone();
        let mut den = f.denominator().clone();
        let mut z = ZetaRat::one();
        for &(n, nu) in candidates {
            let rho = -BigRational::new(BigInt::from(nu), BigInt::from(n));
            let lin = QPoly {
                coeffs: vec![-rho.clone(), BigRational::one()],
            };
            // den factor (s - rho) equals (N s + nu)/N
            let kd = den.root_multiplicity(&rho);
            for _ in 0..kd {
                den = den.div_exact(&lin).unwrap();
            }
            let kn = num.root_multiplicity(&rho);
            for _ in 0..kn {
                num = num.div_exact(&lin).unwrap();
            }
            let e = i64::from(kn) - i64::from(kd);
            if e != 0 {
                z.push_factor(n, nu, e);
            }
            let scale = Pow::pow(
                BigRational::from(BigInt::from(n)),
                i64::from(kd) as i32 - kn as i32,
            );
            z.constant *= scale;
        }
        // fold remaining constants; anything nonconstant stays residual
        if num.is_constant() {
            z.constant *= num.coeff(0);
            num = QPoly::one();
        } else {
            let lead = num.leading();
            z.constant *= &lead;
            num = num.make_monic();
        }
        if den.is_constant() {
            z.constant /= den.coeff(0);
            den = QPoly::one();
        }
        if z.constant.is_zero() {
            return ZetaRat::zero();
        }
        z.residual = RatFn::new(num, den);
        z
    }

    pub fn to_ratfn(&self) -> RatFn {
        if self.is_zero() {
            return RatFn::zero();
        }
        let mut num = QPoly::constant(self.constant.clone());
        let mut den = QPoly::one();
        for (&(n, nu), &e) in &self.factors {
            let lin = QPoly::linear(i64::from(n), i64::from(nu));
            if e > 0 {
                num = num.mul(&lin.pow(e as u32));
            } else {
                den = den.mul(&lin.pow((-e) as u32));
            }
        }
        let f = RatFn::new(num, den);
        f.mul(&self.residual)
    }

    /// Net exponent of the reduced linear form `(N*s + nu)` in this function
    /// (negative for a pole), including any occurrences hiding in the
    /// residual.
    pub fn exponent_of(&self, n: u32, nu: u32) -> i64 {
        let ((n1, nu1), _) = reduce_pair(n, nu);
        let mut e = self.factors.get(&(n1, nu1)).copied().unwrap_or(0);
        let rho = -BigRational::new(BigInt::from(nu1), BigInt::from(n1));
        e += i64::from(self.residual.numerator().root_multiplicity(&rho));
        e -= i64::from(self.residual.denominator().root_multiplicity(&rho));
        e
    }

    /// The factored poles: reduced `(N, nu)` pairs with negative exponent.
    pub fn poles(&self) -> Vec<((u32, u32), i64)> {
        self.factors
            .iter()
            .filter(|(_, &e)| e < 0)
            .map(|(&k, &e)| (k, e))
            .collect()
    }

    pub fn is_polynomial(&self) -> bool {
        self.is_zero() || (self.poles().is_empty() && self.residual.is_polynomial())
    }

    /// Evaluation; `None` at a pole.
    pub fn eval(&self, s: &BigRational) -> Option<BigRational> {
        self.to_ratfn().eval(s)
    }

    fn nice_product_form(&self) -> bool {
        !self.is_zero()
            && self.residual.is_one()
            && !self.factors.is_empty()
            && self.factors.values().all(|&e| e == -1)
            && self.constant
                == self
                    .factors
                    .keys()
                    .map(|&(_, nu)| BigRational::from(BigInt::from(nu)))
                    .product::<BigRational>()
    }
}

impl PartialEq for ZetaRat {
    fn eq(&self, other: &Self) -> bool {
        self.to_ratfn() == other.to_ratfn()
    }
}

impl Eq for ZetaRat {}

/// `1 + N*s/nu` fragment for the normalized product display.
fn nice_factor(n: u32, nu: u32) -> String {
    match (n, nu) {
        (1, 1) => "1+s".to_string(),
        (1, _) => format!("1+s/{nu}"),
        (_, 1) => format!("1+{n}s"),
        _ => format!("1+{n}s/{nu}"),
    }
}

impl fmt::Display for ZetaRat {
    /// `1/((1+2s/9)(1+s/4))` when the function is exactly a product of
    /// simple-pole factors; otherwise the explicit
    /// `c * (N*s+nu)^e * ...` form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.nice_product_form() {
            // keys descending so higher-N factors print first
            let frags: Vec<String> = self
                .factors
                .keys()
                .rev()
                .map(|&(n, nu)| nice_factor(n, nu))
                .collect();
            return if frags.len() == 1 {
                write!(f, "1/({})", frags[0])
            } else {
                let inner: Vec<String> = frags.iter().map(|s| format!("({s})")).collect();
                write!(f, "1/({})", inner.join(""))
            };
        }
        let mut parts: Vec<String> = Vec::new();
        if !self.constant.is_one() || (self.factors.is_empty() && self.residual.is_one()) {
            parts.push(fmt_rational(&self.constant));
        }
        for (&(n, nu), &e) in self.factors.iter().rev() {
            let base = if n == 1 {
                format!("(s+{nu})")
            } else {
                format!("({n}*s+{nu})")
            };
            parts.push(if e == 1 { base } else { format!("{base}^{e}") });
        }
        if !self.residual.is_one() {
            parts.push(format!("{}", self.residual));
        }
        write!(f, "{}", parts.join(" * "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn qpoly_basic() {
        let p = QPoly::linear(2, 9); // 2s + 9
        let q = QPoly::linear(1, 4);
        let prod = p.mul(&q); // 2s^2 + 17s + 36
        assert_eq!(prod.coeff(2), rat(2, 1));
        assert_eq!(prod.coeff(1), rat(17, 1));
        assert_eq!(prod.coeff(0), rat(36, 1));
        assert_eq!(prod.div_exact(&q).unwrap(), p);
        assert_eq!(prod.root_multiplicity(&rat(-9, 2)), 1);
        assert_eq!(prod.to_string(), "2*s^2 + 17*s + 36");
        assert_eq!(p.gcd(&prod), p.make_monic());
    }

    #[test]
    fn ratfn_reduces() {
        let a = RatFn::new(QPoly::linear(1, 1).mul(&QPoly::linear(1, 2)), QPoly::linear(1, 1));
        assert_eq!(a, RatFn::from_poly(QPoly::linear(1, 2)));
        let b = RatFn::new(QPoly::one(), QPoly::linear(2, 9));
        assert_eq!(b.eval(&rat(0, 1)).unwrap(), rat(1, 9));
        assert!(b.eval(&rat(-9, 2)).is_none());
    }

    #[test]
    fn zeta_closed_display() {
        let z = ZetaRat::closed_product(&[(2, 9), (1, 4)]);
        assert_eq!(z.to_string(), "1/((1+2s/9)(1+s/4))");
        let z = ZetaRat::closed_product(&[(1, 1)]);
        assert_eq!(z.to_string(), "1/(1+s)");
        let z = ZetaRat::closed_product(&[(1, 6)]);
        assert_eq!(z.to_string(), "1/(1+s/6)");
        let z = ZetaRat::closed_product(&[(2, 4), (1, 1)]);
        assert_eq!(z.to_string(), "1/((1+s/2)(1+s))");
        assert_eq!(ZetaRat::zero().to_string(), "0");
    }

    #[test]
    fn zeta_sum_refactors() {
        // 4/(s+4) as a strata-style sum: chi=4 on the full stratum
        let t1 = ZetaRat::pole_term(&BigInt::from(4), &[(1, 4)]);
        let t0 = ZetaRat::pole_term(&BigInt::from(0), &[]);
        let z = t0.add(&t1);
        assert_eq!(z, ZetaRat::closed_product(&[(1, 4)]));
        assert_eq!(z.to_string(), "1/(1+s/4)");
        assert_eq!(z.exponent_of(1, 4), -1);
        assert_eq!(z.exponent_of(2, 8), -1);
        assert_eq!(z.exponent_of(1, 3), 0);
    }

    #[test]
    fn zeta_pole_accounting() {
        let z = ZetaRat::closed_product(&[(2, 9), (1, 4)]);
        assert_eq!(z.poles(), vec![((1, 4), -1), ((2, 9), -1)]);
        assert!(!z.is_polynomial());
        assert!(ZetaRat::zero().is_polynomial());
        assert_eq!(z.eval(&rat(0, 1)).unwrap(), rat(1, 1));
        // cancellation: (s+4)/(s+4) folds away entirely
        let f = RatFn::new(QPoly::linear(1, 4), QPoly::linear(1, 4));
        let zz = ZetaRat::refactor(f, &[(1, 4)].into_iter().collect());
        assert_eq!(zz, ZetaRat::one());
        assert_eq!(zz.exponent_of(1, 4), 0);
    }
}
