//! The four zeta functions of a determinantal variety, their poles and
//! monodromy eigenvalue sets, and executable forms of the monodromy,
//! holomorphy, and Bernstein-Sato consistency checks.
//!
//! Closed forms and strata pipelines are kept as separate entry points
//! (`topological_zeta` vs `topological_zeta_via_strata`, and likewise for
//! the twisted variant); `motivic_zeta_rational` computes the full strata
//! form and asserts the two routes agree under Euler specialization, so the
//! expensive cross-check lives where the strata are already being built.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lring::LClass;
use crate::orbits::{enumerate_orbits, class_orbit_factored, PointClass};
use crate::ratfunc::{QPoly, ZetaRat};
use crate::strata::{
    determinantal_resolution, fiber_euler_closed, stratum_class, ResolutionData, StratumClass,
};

/// A matrix shape with rank parameter, as reported by the checkers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Shape {
    pub m: u32,
    pub n: u32,
    pub r: u32,
}

/// PASS/FAIL outcome of a checker.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => write!(f, "PASS"),
            Verdict::Fail => write!(f, "FAIL"),
        }
    }
}

fn canon(m: u32, n: u32) -> (u32, u32) {
    if m <= n {
        (m, n)
    } else {
        (n, m)
    }
}

fn check_shape(m: u32, n: u32, r: u32) -> Result<(u32, u32)> {
    let (m, n) = canon(m, n);
    if !(1 <= r && r <= m) {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= r <= min(m,n), got r={r}, m={m}, n={n}"
        )));
    }
    Ok((m, n))
}

/// `Z_top(s) = prod_{j=1..r} 1/(1 + s(r+1-j)/((m+1-j)(n+1-j)))`, the closed
/// product form.
pub fn topological_zeta(m: u32, n: u32, r: u32) -> Result<ZetaRat> {
    let (m, n) = check_shape(m, n, r)?;
    let res = determinantal_resolution(m, n, r)?;
    Ok(ZetaRat::closed_product(&res.pairs))
}

fn subsets(r: u32) -> Vec<Vec<u32>> {
    (0u32..(1 << r))
        .map(|mask| (1..=r).filter(|j| mask >> (j - 1) & 1 == 1).collect())
        .collect()
}

fn strata_sum(res: &ResolutionData, strata: &[StratumClass], d: u32) -> Result<ZetaRat> {
    let mut z = ZetaRat::zero();
    for s in strata {
        // m_J = gcd of the N_i over J; the empty gcd is 0, and d | 0, so the
        // empty set always participates (its Euler characteristic is 0)
        let m_j = s
            .subset
            .iter()
            .fold(0u32, |g, &j| g.gcd(&res.n_of(j)));
        if m_j % d != 0 {
            continue;
        }
        let chi = s.value.euler()?;
        let pairs: Vec<(u32, u32)> = s
            .subset
            .iter()
            .map(|&j| (res.n_of(j), res.nu_of(j)))
            .collect();
        z = z.add(&ZetaRat::pole_term(&chi, &pairs));
    }
    Ok(z)
}

/// `Z_top` computed through the strata pipeline:
/// `Σ_J χ(E̊_J) prod_{i∈J} 1/(N_i s + nu_i)`.
pub fn topological_zeta_via_strata(m: u32, n: u32, r: u32) -> Result<ZetaRat> {
    twisted_topological_zeta_via_strata(m, n, r, 1)
}

/// `Z_top^(d)`: the closed form is `Z_top` for `d = 1` and the zero function
/// for `d >= 2`.
pub fn twisted_topological_zeta(m: u32, n: u32, r: u32, d: u32) -> Result<ZetaRat> {
    if d == 0 {
        return Err(Error::InvalidArgument("twist d must be >= 1".into()));
    }
    if d == 1 {
        topological_zeta(m, n, r)
    } else {
        check_shape(m, n, r)?;
        Ok(ZetaRat::zero())
    }
}

/// `Z_top^(d)` computed through the strata pipeline: the sum restricted to
/// subsets `J` with `d | gcd_{i∈J} N_i`.
pub fn twisted_topological_zeta_via_strata(m: u32, n: u32, r: u32, d: u32) -> Result<ZetaRat> {
    if d == 0 {
        return Err(Error::InvalidArgument("twist d must be >= 1".into()));
    }
    let (m, n) = check_shape(m, n, r)?;
    let res = determinantal_resolution(m, n, r)?;
    let strata: Vec<StratumClass> = subsets(r)
        .iter()
        .map(|j| stratum_class(m, n, r, j))
        .collect::<Result<_>>()?;
    strata_sum(&res, &strata, d)
}

/// The motivic zeta function in Denef-Loeser strata form, with the
/// resolution data and an optional cached `T`-expansion.
#[derive(Debug, Clone)]
pub struct MotivicZeta {
    pub strata: Vec<StratumClass>,
    pub pairs: ResolutionData,
    pub series: Option<Vec<LClass>>,
}

impl MotivicZeta {
    /// Euler specialization `[E̊_J] ↦ χ(E̊_J)`,
    /// `(L-1)/(L^{N s + nu} - 1) ↦ 1/(N s + nu)`.
    pub fn euler_specialize(&self) -> Result<ZetaRat> {
        strata_sum(&self.pairs, &self.strata, 1)
    }

    /// Coefficients of `T^0..T^order` of
    /// `Σ_J [E̊_J] prod_{i∈J} (L-1) L^{-nu_i} T^{N_i} / (1 - L^{-nu_i} T^{N_i})`,
    /// i.e. coefficient `K` is
    /// `Σ_J [E̊_J] (L-1)^{|J|} Σ_{k_i >= 1, Σ k_i N_i = K} L^{-Σ k_i nu_i}`.
    pub fn series_coefficients(&self, order: u32) -> Result<Vec<LClass>> {
        let mut out = Vec::with_capacity(order as usize + 1);
        for k in 0..=order {
            let mut coeff = LClass::zero();
            for s in &self.strata {
                let pairs: Vec<(u32, u32)> = s
                    .subset
                    .iter()
                    .map(|&j| (self.pairs.n_of(j), self.pairs.nu_of(j)))
                    .collect();
                let inner = multiplicity_sum(&pairs, k);
                if inner.is_zero() {
                    continue;
                }
                let torus = LClass::l().sub(&LClass::one()).pow(pairs.len() as i64)?;
                coeff = coeff.add(&s.value.mul(&torus).mul(&inner));
            }
            out.push(coeff);
        }
        Ok(out)
    }

    /// Returns self with the series cache filled to the given order.
    pub fn with_series(mut self, order: u32) -> Result<Self> {
        self.series = Some(self.series_coefficients(order)?);
        Ok(self)
    }
}

/// `Σ over (k_1..k_p), k_i >= 1, Σ k_i N_i = K of L^{-Σ k_i nu_i}`; the
/// empty product contributes 1 at `K = 0`.
fn multiplicity_sum(pairs: &[(u32, u32)], k: u32) -> LClass {
    if pairs.is_empty() {
        return if k == 0 { LClass::one() } else { LClass::zero() };
    }
    let (n0, nu0) = pairs[0];
    let rest = &pairs[1..];
    let mut total = LClass::zero();
    let mut k0 = 1u32;
    while k0 * n0 <= k {
        let sub = multiplicity_sum(rest, k - k0 * n0);
        if !sub.is_zero() {
            total = total.add(&sub.mul(&LClass::l_pow(-i64::from(k0 * nu0))));
        }
        k0 += 1;
    }
    total
}

/// The full strata form of the motivic zeta function (desk scale,
/// `n <= 3`), cross-checked: its Euler specialization must equal the closed
/// topological zeta.
pub fn motivic_zeta_rational(m: u32, n: u32, r: u32) -> Result<MotivicZeta> {
    let (m, n) = check_shape(m, n, r)?;
    if n > 3 {
        return Err(Error::InvalidArgument(format!(
            "motivic_zeta_rational is desk-scale only (n <= 3), got n = {n}"
        )));
    }
    let res = determinantal_resolution(m, n, r)?;
    let strata: Vec<StratumClass> = subsets(r)
        .iter()
        .map(|j| stratum_class(m, n, r, j))
        .collect::<Result<_>>()?;
    let z = MotivicZeta {
        strata,
        pairs: res,
        series: None,
    };
    let specialized = z.euler_specialize()?;
    let closed = topological_zeta(m, n, r)?;
    if specialized != closed {
        return Err(Error::Consistency(format!(
            "Euler specialization {specialized} disagrees with the closed form {closed} at ({m},{n},{r})"
        )));
    }
    Ok(z)
}

/// Direct T-expansion of the motivic zeta function: coefficient of `T^k` is
/// `L^{-k m n} Σ class_orbit(λ̄ at level k)` over indices with
/// `λ̄_1..λ̄_r` finite and `Σ_{j<=r} λ̄_j = k`.
pub fn motivic_zeta_series(m: u32, n: u32, r: u32, order: u32) -> Result<Vec<LClass>> {
    let (m, n) = check_shape(m, n, r)?;
    if order > 8 {
        return Err(Error::InvalidArgument(format!(
            "series order is desk-scale only (<= 8), got {order}"
        )));
    }
    let mut out = Vec::with_capacity(order as usize + 1);
    for k in 0..=order {
        let mut coeff = LClass::zero();
        for lambda in enumerate_orbits(m, n, k)? {
            let head = &lambda.entries()[..r as usize];
            if !head.iter().all(|e| e.is_finite()) {
                continue;
            }
            let sum: u32 = head.iter().filter_map(|e| e.finite()).sum();
            if sum != k {
                continue;
            }
            coeff = coeff.add(&class_orbit_factored(m, n, &lambda)?.to_lclass());
        }
        out.push(coeff.mul(&LClass::l_pow(-i64::from(k) * i64::from(m) * i64::from(n))));
    }
    Ok(out)
}

/// Which sign the A'Campo exponent carries: the source's general statement
/// and its worked example disagree, so both readings are available;
/// `PlusChi` reproduces the worked example.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SignConvention {
    #[default]
    PlusChi,
    MinusChi,
}

/// A product `prod (1 - t^a)^{e_a}`; the empty product is 1.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CycloFactored {
    factors: BTreeMap<u32, i64>,
}

impl CycloFactored {
    pub fn one() -> Self {
        CycloFactored::default()
    }

    pub fn single(a: u32, e: i64) -> Self {
        let mut factors = BTreeMap::new();
        if e != 0 {
            factors.insert(a, e);
        }
        CycloFactored { factors }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &BTreeMap<u32, i64> {
        &self.factors
    }

    pub fn mul(&self, other: &CycloFactored) -> Self {
        let mut factors = self.factors.clone();
        for (&a, &e) in &other.factors {
            let slot = factors.entry(a).or_insert(0);
            *slot += e;
            if *slot == 0 {
                factors.remove(&a);
            }
        }
        CycloFactored { factors }
    }
}

impl fmt::Display for CycloFactored {
    /// `1`, `1 - t`, `1 - t^2`, or parenthesized powers like
    /// `(1 - t^2)^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let base = |a: u32| {
            if a == 1 {
                "1 - t".to_string()
            } else {
                format!("1 - t^{a}")
            }
        };
        if self.factors.len() == 1 {
            let (&a, &e) = self.factors.iter().next().unwrap();
            if e == 1 {
                return write!(f, "{}", base(a));
            }
            return write!(f, "({})^{e}", base(a));
        }
        for (&a, &e) in &self.factors {
            if e == 1 {
                write!(f, "({})", base(a))?;
            } else {
                write!(f, "({})^{e}", base(a))?;
            }
        }
        Ok(())
    }
}

/// Monodromy zeta function at a point of the given class, default sign
/// convention (`PlusChi`, matching the worked example).
pub fn monodromy_zeta_at_point(p: &PointClass) -> Result<CycloFactored> {
    monodromy_zeta_at_point_with(p, SignConvention::PlusChi)
}

/// Monodromy zeta function at a point of the given class:
/// `(1 - t^{r+1-i})^{±χ}` with `χ = fiber_euler_closed`; identically 1 off
/// the alpha images (`q = NONE`).
pub fn monodromy_zeta_at_point_with(
    p: &PointClass,
    convention: SignConvention,
) -> Result<CycloFactored> {
    let (m, n) = check_shape(p.m, p.n, p.r)?;
    if !(1 <= p.i && p.i <= p.r) {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= i <= r, got i={}, r={}",
            p.i, p.r
        )));
    }
    let q = match p.q {
        None => return Ok(CycloFactored::one()),
        Some(q) => q,
    };
    let chi = fiber_euler_closed(m, n, p.r, p.i, q)?;
    if chi == 0 {
        return Ok(CycloFactored::one());
    }
    let sign = match convention {
        SignConvention::PlusChi => 1,
        SignConvention::MinusChi => -1,
    };
    Ok(CycloFactored::single(p.r + 1 - p.i, sign * i64::from(chi)))
}

/// All monodromy eigenvalues arising at points of `Z_r`, as reduced
/// fractions `k/a` modulo 1.
///
/// Zetas `1 - t^a` occur for `a = r+1-i` exactly at point classes with
/// nonzero fiber Euler characteristic: `i = r` gives `a = 1`, and
/// `i < r < q` gives `2 <= a <= r` but needs `q > r`, which is realizable
/// only when `r < min(m,n)`. For maximal minors (`r = m`) the set is
/// therefore just `{0/1}`.
pub fn eigenvalue_set(m: u32, n: u32, r: u32) -> Result<BTreeSet<(u32, u32)>> {
    let (m, _) = check_shape(m, n, r)?;
    let mut set = BTreeSet::new();
    set.insert((0u32, 1u32));
    if r < m {
        for a in 2..=r {
            for k in 1..a {
                if k.gcd(&a) == 1 {
                    set.insert((k, a));
                }
            }
        }
    }
    Ok(set)
}

fn eigenvalue_string((k, a): (u32, u32)) -> String {
    format!("{k}/{a}")
}

/// One candidate pole of the zeta function.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PoleReport {
    #[serde(rename = "N")]
    pub n: u32,
    pub nu: u32,
    /// `-nu/N` in lowest terms, e.g. `-9/2`.
    pub s0: String,
    /// Whether the candidate survives in the reduced rational function.
    pub actual: bool,
}

/// Per-pole evidence: the eigenvalue matching `e^{2πi s0}`, and for the
/// maximal-minor check the Bernstein-Sato root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub s0: String,
    pub eigenvalue: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_root: Option<String>,
}

/// Structured verdict of the monodromy / maximal-minor checkers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub shape: Shape,
    pub poles: Vec<PoleReport>,
    pub eigenvalues: Vec<String>,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
}

fn pole_fraction(n: u32, nu: u32) -> BigRational {
    -BigRational::new(BigInt::from(nu), BigInt::from(n))
}

/// `e^{2πi s0}` as a reduced fraction `k/a` in `[0, 1)`.
fn exponential_fraction(s0: &BigRational) -> (u32, u32) {
    let one = BigRational::from(BigInt::from(1));
    let mut f = s0.fract();
    if f.is_negative() {
        f += one;
    }
    let k: u32 = f.numer().try_into().expect("reduced numerator fits u32");
    let a: u32 = f.denom().try_into().expect("reduced denominator fits u32");
    (k, a)
}

/// Executable monodromy conjecture: every pole `s0 = -nu_j/N_j` of `Z_top`
/// must exponentiate into the monodromy eigenvalue set.
pub fn check_monodromy_conjecture(m: u32, n: u32, r: u32) -> Result<CheckReport> {
    let (m, n) = check_shape(m, n, r)?;
    let res = determinantal_resolution(m, n, r)?;
    let z = topological_zeta(m, n, r)?;
    let eig = eigenvalue_set(m, n, r)?;
    let mut poles = Vec::new();
    let mut witnesses = Vec::new();
    let mut pass = true;
    for &(nj, nuj) in &res.pairs {
        let s0 = pole_fraction(nj, nuj);
        let s0_str = s0.to_string();
        let actual = z.exponent_of(nj, nuj) < 0;
        let ev = exponential_fraction(&s0);
        let member = eig.contains(&ev);
        pass &= actual && member;
        poles.push(PoleReport {
            n: nj,
            nu: nuj,
            s0: s0_str.clone(),
            actual,
        });
        witnesses.push(Witness {
            s0: s0_str,
            eigenvalue: eigenvalue_string(ev),
            b_root: None,
        });
    }
    Ok(CheckReport {
        shape: Shape { m, n, r },
        poles,
        eigenvalues: eig.into_iter().map(eigenvalue_string).collect(),
        verdict: if pass { Verdict::Pass } else { Verdict::Fail },
        witnesses,
    })
}

/// One twist's worth of holomorphy evidence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HolonomyEntry {
    pub d: u32,
    pub zeta_is_zero: bool,
    pub zeta_is_polynomial: bool,
    /// An eigenvalue order divisible by `d`, when one exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigenvalue_order: Option<u32>,
    pub holds: bool,
}

/// Structured verdict of the holomorphy checker.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HolReport {
    pub shape: Shape,
    pub d_max: u32,
    pub entries: Vec<HolonomyEntry>,
    pub verdict: Verdict,
}

/// Executable holomorphy conjecture: for each `d <= d_max`, `Z_top^(d)`
/// must be a polynomial unless some monodromy eigenvalue has order
/// divisible by `d`.
pub fn check_holomorphy(m: u32, n: u32, r: u32, d_max: u32) -> Result<HolReport> {
    if d_max == 0 {
        return Err(Error::InvalidArgument("d_max must be >= 1".into()));
    }
    let (m, n) = check_shape(m, n, r)?;
    let orders: BTreeSet<u32> = eigenvalue_set(m, n, r)?.into_iter().map(|(_, a)| a).collect();
    let mut entries = Vec::new();
    let mut pass = true;
    for d in 1..=d_max {
        let tz = twisted_topological_zeta(m, n, r, d)?;
        let zeta_is_zero = tz.is_zero();
        let zeta_is_polynomial = tz.is_polynomial();
        let eigenvalue_order = orders.iter().copied().find(|a| a % d == 0);
        let holds = zeta_is_polynomial || eigenvalue_order.is_some();
        pass &= holds;
        entries.push(HolonomyEntry {
            d,
            zeta_is_zero,
            zeta_is_polynomial,
            eigenvalue_order,
            holds,
        });
    }
    Ok(HolReport {
        shape: Shape { m, n, r },
        d_max,
        entries,
        verdict: if pass { Verdict::Pass } else { Verdict::Fail },
    })
}

/// The Bernstein-Sato polynomial of the maximal-minor ideal:
/// `b(s) = prod_{j=n-m+1..n} (s + j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernsteinSato {
    pub m: u32,
    pub n: u32,
    /// Roots `-j`, largest first.
    pub roots: Vec<i64>,
    pub poly: QPoly,
}

impl fmt::Display for BernsteinSato {
    /// `(s+2)(s+3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for root in &self.roots {
            write!(f, "(s+{})", -root)?;
        }
        Ok(())
    }
}

/// `b(s)` for maximal minors (`r = m <= n`).
pub fn bernstein_sato_maximal(m: u32, n: u32) -> Result<BernsteinSato> {
    let (m, n) = canon(m, n);
    if m == 0 {
        return Err(Error::InvalidArgument("matrix shape must be nonzero".into()));
    }
    let mut poly = QPoly::one();
    let mut roots = Vec::with_capacity(m as usize);
    for j in (n - m + 1)..=n {
        poly = poly.mul(&QPoly::linear(1, i64::from(j)));
        roots.push(-i64::from(j));
    }
    Ok(BernsteinSato { m, n, roots, poly })
}

/// Maximal-minor consistency: every pole `-(n+1-j)` of the zeta function is
/// a Bernstein-Sato root, and the eigenvalue set is contained in the
/// exponential set of the roots (all of which are integers, so that set is
/// `{0/1}`).
pub fn check_maximal_minors(m: u32, n: u32) -> Result<CheckReport> {
    let (m, n) = canon(m, n);
    let r = m;
    check_shape(m, n, r)?;
    let res = determinantal_resolution(m, n, r)?;
    let z = topological_zeta(m, n, r)?;
    let b = bernstein_sato_maximal(m, n)?;
    let b_roots: BTreeSet<i64> = b.roots.iter().copied().collect();
    let eig = eigenvalue_set(m, n, r)?;
    // integer roots exponentiate to 1, so the containment check reduces to
    // the eigenvalue set being {0/1}
    let mut pass = eig.iter().all(|&ev| ev == (0, 1));
    let mut poles = Vec::new();
    let mut witnesses = Vec::new();
    for &(nj, nuj) in &res.pairs {
        let s0 = pole_fraction(nj, nuj);
        let s0_str = s0.to_string();
        let actual = z.exponent_of(nj, nuj) < 0;
        let ev = exponential_fraction(&s0);
        let is_root = s0.is_integer()
            && b_roots.contains(&i64::try_from(s0.numer().clone()).expect("small root"));
        pass &= actual && is_root && eig.contains(&ev);
        poles.push(PoleReport {
            n: nj,
            nu: nuj,
            s0: s0_str.clone(),
            actual,
        });
        witnesses.push(Witness {
            s0: s0_str.clone(),
            eigenvalue: eigenvalue_string(ev),
            b_root: Some(s0_str),
        });
    }
    Ok(CheckReport {
        shape: Shape { m, n, r },
        poles,
        eigenvalues: eig.into_iter().map(eigenvalue_string).collect(),
        verdict: if pass { Verdict::Pass } else { Verdict::Fail },
        witnesses,
    })
}
