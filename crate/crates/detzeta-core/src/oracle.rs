//! Exhaustive finite-field ground truth: enumerate matrix jets over
//! `F_q[t]/(t^{l+1})`, classify each by its Smith invariants, and certify
//! the symbolic orbit classes by exact point counts at `L = q`.
//!
//! Enumeration is sharded by the first matrix entry into `q^{l+1}`
//! independent exact counts merged by addition, so parallel runs are
//! byte-for-byte deterministic. A budget guard (default `2^30` jets,
//! overridable through the `DETZETA_BUDGET` environment variable) protects
//! against accidentally astronomical runs.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::orbits::{class_orbit, Ent, OrbitIndex};

/// Elements are codes `0..q^{l+1}`; code `Σ c_i q^i` is the jet
/// `Σ c_i t^i`. Multiplication and subtraction use precomputed tables when
/// the ring is small enough, digit convolution otherwise.
#[derive(Debug)]
pub struct TruncRing {
    q: u64,
    l: u32,
    size: u64,
    pow: Vec<u64>,
    mul_table: Option<Vec<u32>>,
    sub_table: Option<Vec<u32>>,
    val_table: Option<Vec<u8>>,
}

const TABLE_CAP: u64 = 2048;

fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl TruncRing {
    /// The ring `F_q[t]/(t^{l+1})` for a prime `q`.
    pub fn new(q: u64, l: u32) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::InvalidArgument(format!(
                "oracle counting needs a prime field, got q = {q}"
            )));
        }
        let mut pow = Vec::with_capacity(l as usize + 2);
        let mut acc: u64 = 1;
        pow.push(1);
        for _ in 0..=l {
            acc = acc.checked_mul(q).ok_or_else(|| {
                Error::InvalidArgument(format!("ring size q^(l+1) overflows u64 (q={q}, l={l})"))
            })?;
            pow.push(acc);
        }
        let size = pow[l as usize + 1];
        let mut ring = TruncRing {
            q,
            l,
            size,
            pow,
            mul_table: None,
            sub_table: None,
            val_table: None,
        };
        if size <= TABLE_CAP {
            let s = size as usize;
            let mut mul = vec![0u32; s * s];
            let mut sub = vec![0u32; s * s];
            let mut val = vec![0u8; s];
            for a in 0..size {
                val[a as usize] = ring.val_digits(a) as u8;
                for b in 0..size {
                    mul[(a * size + b) as usize] = ring.mul_digits(a, b) as u32;
                    sub[(a * size + b) as usize] = ring.sub_digits(a, b) as u32;
                }
            }
            ring.mul_table = Some(mul);
            ring.sub_table = Some(sub);
            ring.val_table = Some(val);
        }
        Ok(ring)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn level(&self) -> u32 {
        self.l
    }

    /// `q^(l+1)`, the number of ring elements.
    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn digits(&self, x: u64) -> Vec<u64> {
        (0..=self.l as usize)
            .map(|i| x / self.pow[i] % self.q)
            .collect()
    }

    pub fn from_digits(&self, digits: &[u64]) -> u64 {
        digits
            .iter()
            .take(self.l as usize + 1)
            .enumerate()
            .map(|(i, &c)| (c % self.q) * self.pow[i])
            .sum()
    }

    fn mul_digits(&self, a: u64, b: u64) -> u64 {
        let da = self.digits(a);
        let db = self.digits(b);
        let mut dc = vec![0u64; self.l as usize + 1];
        for (i, &ca) in da.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (j, &cb) in db.iter().enumerate() {
                if i + j > self.l as usize {
                    break;
                }
                dc[i + j] = (dc[i + j] + ca * cb) % self.q;
            }
        }
        self.from_digits(&dc)
    }

    fn add_digits(&self, a: u64, b: u64) -> u64 {
        let da = self.digits(a);
        let db = self.digits(b);
        let mut out = 0u64;
        for i in 0..da.len() {
            out += (da[i] + db[i]) % self.q * self.pow[i];
        }
        out
    }

    fn sub_digits(&self, a: u64, b: u64) -> u64 {
        let da = self.digits(a);
        let db = self.digits(b);
        let mut out = 0u64;
        for i in 0..da.len() {
            out += (da[i] + self.q - db[i]) % self.q * self.pow[i];
        }
        out
    }

    fn val_digits(&self, x: u64) -> u32 {
        if x == 0 {
            return self.l + 1;
        }
        let mut v = 0;
        let mut y = x;
        while y % self.q == 0 {
            y /= self.q;
            v += 1;
        }
        v
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        match &self.mul_table {
            Some(t) => u64::from(t[(a * self.size + b) as usize]),
            None => self.mul_digits(a, b),
        }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        self.add_digits(a, b)
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        match &self.sub_table {
            Some(t) => u64::from(t[(a * self.size + b) as usize]),
            None => self.sub_digits(a, b),
        }
    }

    /// `t`-adic valuation; `l + 1` for zero.
    #[inline]
    pub fn val(&self, x: u64) -> u32 {
        match &self.val_table {
            Some(t) => u32::from(t[x as usize]),
            None => self.val_digits(x),
        }
    }

    /// Divides by `t^v`; requires `val(x) >= v`.
    pub fn shift_down(&self, x: u64, v: u32) -> u64 {
        debug_assert!(self.val(x) >= v);
        x / self.pow[v as usize]
    }

    /// Inverse of a unit (valuation-0 element), by Newton iteration from the
    /// inverse of the constant coefficient.
    pub fn inv_unit(&self, x: u64) -> u64 {
        assert_eq!(self.val(x), 0, "inverse of a non-unit");
        let c0 = x % self.q;
        // Fermat: c0^(q-2) mod q
        let mut inv0 = 1u64;
        let mut base = c0 % self.q;
        let mut e = self.q - 2;
        while e > 0 {
            if e & 1 == 1 {
                inv0 = inv0 * base % self.q;
            }
            base = base * base % self.q;
            e >>= 1;
        }
        let two = self.from_digits(&[2 % self.q]);
        let mut y = inv0;
        let mut steps = 0;
        while steps <= self.l + 1 {
            let err = self.sub(two, self.mul(x, y));
            let next = self.mul(y, err);
            if next == y {
                break;
            }
            y = next;
            steps += 1;
        }
        debug_assert_eq!(self.mul(x, y), 1);
        y
    }
}

/// An `m x n` matrix of ring-element codes, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetMatrix {
    pub m: u32,
    pub n: u32,
    pub entries: Vec<u64>,
}

impl JetMatrix {
    pub fn new(m: u32, n: u32, entries: Vec<u64>) -> Result<Self> {
        if entries.len() != (m * n) as usize {
            return Err(Error::InvalidArgument(format!(
                "expected {} entries for a {m}x{n} jet, got {}",
                m * n,
                entries.len()
            )));
        }
        Ok(JetMatrix { m, n, entries })
    }

    /// Builds from per-entry coefficient vectors `(c_0, c_1, ...)` in `t`.
    pub fn from_coeffs(ring: &TruncRing, m: u32, n: u32, rows: &[&[&[u64]]]) -> Result<Self> {
        let mut entries = Vec::with_capacity((m * n) as usize);
        for row in rows {
            for coeffs in *row {
                entries.push(ring.from_digits(coeffs));
            }
        }
        JetMatrix::new(m, n, entries)
    }
}

fn pack_code(vals: &[u32], base: u64) -> u64 {
    vals.iter().fold(0u64, |acc, &v| acc * base + u64::from(v))
}

/// Core elimination: Smith invariants `λ̄_i ∈ {0..l+1}` (nondecreasing,
/// `l+1` encoding TOP) of the matrix scratch buffer, which is destroyed.
fn smith_core(ring: &TruncRing, m: usize, n: usize, a: &mut [u64]) -> Vec<u32> {
    let top = ring.l + 1;
    let steps = m.min(n);
    let mut vals = Vec::with_capacity(steps);
    for step in 0..steps {
        // valuation-minimal pivot, first occurrence in row-major order
        let mut best = (top + 1, step, step);
        for i in step..m {
            for j in step..n {
                let v = ring.val(a[i * n + j]);
                if v < best.0 {
                    best = (v, i, j);
                    if v == 0 {
                        break;
                    }
                }
            }
            if best.0 == 0 {
                break;
            }
        }
        let (v, pi, pj) = best;
        if v > ring.l {
            // remaining submatrix is zero
            break;
        }
        if pi != step {
            for j in 0..n {
                a.swap(pi * n + j, step * n + j);
            }
        }
        if pj != step {
            for i in 0..m {
                a.swap(i * n + pj, i * n + step);
            }
        }
        vals.push(v);
        let pivot = a[step * n + step];
        let unit_inv = ring.inv_unit(ring.shift_down(pivot, v));
        for i in (step + 1)..m {
            let x = a[i * n + step];
            if x == 0 {
                continue;
            }
            // x = f * pivot with f = (x / t^v) * unit_inv
            let f = ring.mul(ring.shift_down(x, v), unit_inv);
            for j in step..n {
                let prod = ring.mul(f, a[step * n + j]);
                a[i * n + j] = ring.sub(a[i * n + j], prod);
            }
        }
        // the column below the pivot is now zero, so clearing the pivot row
        // with column operations touches no other row: the entries vanish
        // exactly (each a[step][j] is a ring multiple of the pivot)
        for j in (step + 1)..n {
            a[step * n + j] = 0;
        }
    }
    while vals.len() < steps {
        vals.push(top);
    }
    vals
}

/// Smith invariants of a jet matrix: the nondecreasing `λ̄` with `A`
/// equivalent to `diag(t^{λ̄_i})` under invertible row/column operations;
/// TOP encodes zero diagonal entries.
pub fn smith_invariants(ring: &TruncRing, a: &JetMatrix) -> Result<OrbitIndex> {
    let (m, n) = (a.m as usize, a.n as usize);
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument("matrix shape must be nonzero".into()));
    }
    let mut scratch = a.entries.clone();
    let vals = if m <= n {
        smith_core(ring, m, n, &mut scratch)
    } else {
        // transpose: Smith invariants are symmetric in the two group actions
        let mut t = vec![0u64; m * n];
        for i in 0..m {
            for j in 0..n {
                t[j * m + i] = scratch[i * n + j];
            }
        }
        smith_core(ring, n, m, &mut t)
    };
    let entries = vals
        .iter()
        .map(|&v| if v <= ring.l { Ent::Fin(v) } else { Ent::Top })
        .collect();
    OrbitIndex::new(entries, ring.l)
}

/// A full orbit census of the `m x n` jets at level `l` over `F_q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCensus {
    pub m: u32,
    pub n: u32,
    pub l: u32,
    pub q: u64,
    counts: BTreeMap<OrbitIndex, u64>,
}

impl OrbitCensus {
    pub fn get(&self, lambda: &OrbitIndex) -> u64 {
        self.counts.get(lambda).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&OrbitIndex, u64)> {
        self.counts.iter().map(|(k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// `lambda,count` rows with the λ field quoted (it contains commas).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("lambda,count\n");
        for (lambda, count) in self.iter() {
            out.push_str(&format!("\"{lambda}\",{count}\n"));
        }
        out
    }
}

impl Serialize for OrbitCensus {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Row<'a> {
            lambda: &'a OrbitIndex,
            count: u64,
        }
        let rows: Vec<Row> = self
            .counts
            .iter()
            .map(|(lambda, &count)| Row { lambda, count })
            .collect();
        let mut s = serializer.serialize_struct("OrbitCensus", 6)?;
        s.serialize_field("m", &self.m)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("l", &self.l)?;
        s.serialize_field("q", &self.q)?;
        s.serialize_field("total", &self.total())?;
        s.serialize_field("census", &rows)?;
        s.end()
    }
}

/// The active jet budget: `DETZETA_BUDGET` when set and parseable, else
/// `2^30`.
pub fn oracle_budget() -> u128 {
    std::env::var("DETZETA_BUDGET")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(1u128 << 30)
}

fn check_budget(m: u32, n: u32, l: u32, q: u64, budget: u128) -> Result<u128> {
    let exp = m
        .checked_mul(n)
        .and_then(|mn| mn.checked_mul(l + 1))
        .ok_or_else(|| Error::InvalidArgument("shape overflows".into()))?;
    let needed = (0..exp).try_fold(1u128, |acc, _| acc.checked_mul(u128::from(q)));
    match needed {
        Some(needed) if needed <= budget => Ok(needed),
        Some(needed) => Err(Error::BudgetExceeded { needed, budget }),
        None => Err(Error::BudgetExceeded {
            needed: u128::MAX,
            budget,
        }),
    }
}

/// Runs `visit` on the Smith `λ̄` values of every `m x n` level-`l` jet,
/// sharded by the first entry and reduced with `+`.
fn sweep<T, F>(ring: &TruncRing, m: u32, n: u32, init: T, visit: F) -> T
where
    T: Clone + Send + Sync,
    F: Fn(&mut T, &[u32]) + Sync,
    T: std::ops::AddAssign<T>,
{
    let cells = (m * n) as usize;
    let shards: Vec<u64> = (0..ring.size()).collect();
    shards
        .into_par_iter()
        .map(|first| {
            let mut acc = init.clone();
            let mut mat = vec![0u64; cells];
            let mut scratch = vec![0u64; cells];
            mat[0] = first;
            loop {
                scratch.copy_from_slice(&mat);
                let vals = if m <= n {
                    smith_core(ring, m as usize, n as usize, &mut scratch)
                } else {
                    let mut t = vec![0u64; cells];
                    for i in 0..m as usize {
                        for j in 0..n as usize {
                            t[j * m as usize + i] = scratch[i * n as usize + j];
                        }
                    }
                    smith_core(ring, n as usize, m as usize, &mut t)
                };
                visit(&mut acc, &vals);
                let mut p = 1;
                while p < cells {
                    mat[p] += 1;
                    if mat[p] < ring.size() {
                        break;
                    }
                    mat[p] = 0;
                    p += 1;
                }
                if p == cells {
                    break;
                }
            }
            acc
        })
        .reduce(
            || init.clone(),
            |mut a, b| {
                a += b;
                a
            },
        )
}

#[derive(Clone)]
struct DenseCounts(Vec<u64>);

impl std::ops::AddAssign for DenseCounts {
    fn add_assign(&mut self, rhs: DenseCounts) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a += b;
        }
    }
}

/// Full orbit census under an explicit budget.
pub fn count_orbits_with_budget(m: u32, n: u32, l: u32, q: u64, budget: u128) -> Result<OrbitCensus> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument("matrix shape must be nonzero".into()));
    }
    check_budget(m, n, l, q, budget)?;
    let ring = TruncRing::new(q, l)?;
    let k = m.min(n) as usize;
    let base = u64::from(l + 2);
    let slots = base.pow(k as u32) as usize;
    let init = DenseCounts(vec![0u64; slots]);
    let counted = sweep(&ring, m, n, init, |acc, vals| {
        acc.0[pack_code(vals, base) as usize] += 1;
    });
    let mut counts = BTreeMap::new();
    for (code, &count) in counted.0.iter().enumerate() {
        if count == 0 {
            continue;
        }
        let mut digits = Vec::with_capacity(k);
        let mut c = code as u64;
        for _ in 0..k {
            digits.push((c % base) as u32);
            c /= base;
        }
        digits.reverse();
        let entries = digits
            .into_iter()
            .map(|v| if v <= l { Ent::Fin(v) } else { Ent::Top })
            .collect();
        counts.insert(OrbitIndex::new(entries, l)?, count);
    }
    Ok(OrbitCensus { m, n, l, q, counts })
}

/// Full orbit census under the ambient budget (see [`oracle_budget`]).
pub fn count_orbits(m: u32, n: u32, l: u32, q: u64) -> Result<OrbitCensus> {
    count_orbits_with_budget(m, n, l, q, oracle_budget())
}

/// A contact-order target: an exact finite order, or "exceeds the level".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContactTarget {
    Order(u32),
    ExceedsLevel,
}

impl FromStr for ContactTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('>') {
            let rest = rest.trim();
            if rest == "l" || rest == "L" || rest.chars().all(|c| c.is_ascii_digit()) {
                return Ok(ContactTarget::ExceedsLevel);
            }
            return Err(Error::Parse(format!("bad contact target {s:?}")));
        }
        s.parse::<u32>()
            .map(ContactTarget::Order)
            .map_err(|_| Error::Parse(format!("bad contact target {s:?}")))
    }
}

impl fmt::Display for ContactTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContactTarget::Order(k) => write!(f, "{k}"),
            ContactTarget::ExceedsLevel => write!(f, ">l"),
        }
    }
}

/// Counts level-`l` jets whose order along the `r`-minor ideal equals the
/// target: the order is `Σ_{j<=r} λ̄_j` when that is certifiable at this
/// level (`<= l` with all `λ̄_{j<=r}` finite), and "exceeds" otherwise.
pub fn count_contact(m: u32, n: u32, l: u32, q: u64, r: u32, target: ContactTarget) -> Result<u64> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument("matrix shape must be nonzero".into()));
    }
    if r < 1 || r > m.min(n) {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= r <= min(m,n), got r={r}, m={m}, n={n}"
        )));
    }
    if let ContactTarget::Order(k) = target {
        if k > l {
            return Err(Error::InvalidArgument(format!(
                "order {k} is not certifiable at level {l}; use \">l\""
            )));
        }
    }
    check_budget(m, n, l, q, oracle_budget())?;
    let ring = TruncRing::new(q, l)?;
    let counted = sweep(&ring, m, n, Tally(0), |acc, vals| {
        let head = &vals[..r as usize];
        let finite = head.iter().all(|&v| v <= l);
        let sum: u32 = head.iter().sum();
        let hit = match target {
            ContactTarget::Order(k) => finite && sum == k,
            ContactTarget::ExceedsLevel => !finite || sum > l,
        };
        if hit {
            acc.0 += 1;
        }
    });
    Ok(counted.0)
}

#[derive(Clone)]
struct Tally(u64);

impl std::ops::AddAssign for Tally {
    fn add_assign(&mut self, rhs: Tally) {
        self.0 += rhs.0;
    }
}

/// Outcome of one symbolic-vs-census comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyVerdict {
    pub lambda: OrbitIndex,
    pub m: u32,
    pub n: u32,
    pub l: u32,
    pub q: u64,
    pub expected: BigInt,
    pub actual: BigInt,
    pub pass: bool,
}

impl fmt::Display for VerifyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pass {
            write!(f, "PASS ({} = {})", self.expected, self.actual)
        } else {
            write!(
                f,
                "FAIL (class at q={} gives {}, census gives {})",
                self.q, self.expected, self.actual
            )
        }
    }
}

impl Serialize for VerifyVerdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("VerifyVerdict", 8)?;
        s.serialize_field("lambda", &self.lambda)?;
        s.serialize_field("m", &self.m)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("l", &self.l)?;
        s.serialize_field("q", &self.q)?;
        s.serialize_field("expected", &self.expected.to_string())?;
        s.serialize_field("actual", &self.actual.to_string())?;
        s.serialize_field("pass", &self.pass)?;
        s.end()
    }
}

fn verify_against(census: &OrbitCensus, lambda: &OrbitIndex) -> Result<VerifyVerdict> {
    let class = class_orbit(census.m, census.n, lambda)?;
    let value = class.eval(census.q)?;
    if !value.is_integer() {
        return Err(Error::Consistency(format!(
            "class of {lambda} does not evaluate to an integer at q={}",
            census.q
        )));
    }
    let expected = value.to_integer();
    let actual = BigInt::from(census.get(lambda));
    let pass = expected == actual;
    Ok(VerifyVerdict {
        lambda: lambda.clone(),
        m: census.m,
        n: census.n,
        l: census.l,
        q: census.q,
        expected,
        actual,
        pass,
    })
}

/// Certifies one orbit class against the exhaustive census at `L = q`.
pub fn verify_class(lambda: &OrbitIndex, m: u32, n: u32, q: u64) -> Result<VerifyVerdict> {
    let census = count_orbits(m, n, lambda.level(), q)?;
    verify_against(&census, lambda)
}

/// Certifies every orbit class of a shape at once (one census, all orbits).
pub fn verify_shape(m: u32, n: u32, l: u32, q: u64) -> Result<Vec<VerifyVerdict>> {
    let census = count_orbits(m, n, l, q)?;
    crate::orbits::enumerate_orbits(m, n, l)?
        .map(|lambda| verify_against(&census, &lambda))
        .collect()
}

/// `|J_l(GL_m)(F_q)| = q^{m^2 l} |GL_m(F_q)|`, the jet-group order used by
/// the orbit-stabilizer divisibility check.
pub fn jet_gl_order(m: u32, l: u32, q: u64) -> BigInt {
    let qi = BigInt::from(q);
    let mut order = qi.pow(m * m * l);
    let qm = qi.pow(m);
    for j in 0..m {
        order *= &qm - qi.pow(j);
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ix(s: &str, l: u32) -> OrbitIndex {
        let entries = crate::orbits::parse_lambda(s).unwrap();
        OrbitIndex::new(entries, l).unwrap()
    }

    #[test]
    fn ring_arithmetic() {
        let ring = TruncRing::new(2, 1).unwrap();
        assert_eq!(ring.size(), 4);
        let t = ring.from_digits(&[0, 1]);
        let one_plus_t = ring.from_digits(&[1, 1]);
        assert_eq!(ring.mul(t, t), 0);
        assert_eq!(ring.mul(one_plus_t, one_plus_t), 1);
        assert_eq!(ring.val(t), 1);
        assert_eq!(ring.val(0), 2);
        assert_eq!(ring.inv_unit(one_plus_t), one_plus_t);
        let ring = TruncRing::new(5, 2).unwrap();
        let x = ring.from_digits(&[2, 3, 1]);
        let y = ring.inv_unit(x);
        assert_eq!(ring.mul(x, y), 1);
        assert!(TruncRing::new(4, 1).is_err());
    }

    #[test]
    fn smith_examples() {
        let ring = TruncRing::new(2, 1).unwrap();
        let a = JetMatrix::from_coeffs(&ring, 2, 2, &[&[&[1], &[0]], &[&[0], &[0, 1]]]).unwrap();
        assert_eq!(smith_invariants(&ring, &a).unwrap(), ix("0,1", 1));
        let z = JetMatrix::new(2, 2, vec![0, 0, 0, 0]).unwrap();
        assert_eq!(smith_invariants(&ring, &z).unwrap(), ix("inf,inf", 1));
        let t = ring.from_digits(&[0, 1]);
        let a = JetMatrix::new(2, 2, vec![t, t, t, t]).unwrap();
        assert_eq!(smith_invariants(&ring, &a).unwrap(), ix("1,inf", 1));
    }

    #[test]
    fn census_small() {
        let c = count_orbits(2, 2, 0, 2).unwrap();
        assert_eq!(c.get(&ix("0,0", 0)), 6);
        assert_eq!(c.get(&ix("0,inf", 0)), 9);
        assert_eq!(c.get(&ix("inf,inf", 0)), 1);
        assert_eq!(c.total(), 16);
        let c = count_orbits(1, 1, 1, 3).unwrap();
        assert_eq!(c.get(&ix("0", 1)), 6);
        assert_eq!(c.get(&ix("1", 1)), 2);
        assert_eq!(c.get(&ix("inf", 1)), 1);
        let c = count_orbits(2, 2, 1, 2).unwrap();
        assert_eq!(c.get(&ix("0,1", 1)), 72);
        assert_eq!(c.total(), 256);
    }

    #[test]
    fn census_csv_and_json() {
        let c = count_orbits(2, 2, 0, 2).unwrap();
        assert_eq!(
            c.to_csv(),
            "lambda,count\n\"0,0\",6\n\"0,inf\",9\n\"inf,inf\",1\n"
        );
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["total"], 16);
        assert_eq!(v["census"][0]["lambda"], serde_json::json!([0, 0]));
        assert_eq!(v["census"][1]["count"], 9);
    }

    #[test]
    fn contact_counts() {
        assert_eq!(
            count_contact(2, 2, 1, 2, 2, ContactTarget::Order(1)).unwrap(),
            72
        );
        assert_eq!(
            count_contact(2, 2, 0, 2, 1, ContactTarget::Order(0)).unwrap(),
            15
        );
        assert_eq!(
            count_contact(1, 1, 1, 3, 1, ContactTarget::ExceedsLevel).unwrap(),
            1
        );
        assert_eq!("5".parse::<ContactTarget>().unwrap(), ContactTarget::Order(5));
        assert_eq!(
            ">l".parse::<ContactTarget>().unwrap(),
            ContactTarget::ExceedsLevel
        );
        assert_eq!(
            ">3".parse::<ContactTarget>().unwrap(),
            ContactTarget::ExceedsLevel
        );
        assert!(count_contact(2, 2, 1, 2, 2, ContactTarget::Order(5)).is_err());
    }

    #[test]
    fn verify_bridge() {
        let v = verify_class(&ix("0,inf", 0), 2, 2, 2).unwrap();
        assert!(v.pass);
        assert_eq!(v.to_string(), "PASS (9 = 9)");
        let v = verify_class(&ix("0,1", 1), 2, 2, 2).unwrap();
        assert!(v.pass);
        let v = verify_class(&ix("0,0", 0), 2, 2, 3).unwrap();
        assert!(v.pass);
        assert_eq!(v.expected, BigInt::from(48));
        let all = verify_shape(2, 2, 1, 2).unwrap();
        assert_eq!(all.len(), 6);
        assert!(all.iter().all(|v| v.pass));
    }

    #[test]
    fn budget_guard() {
        let err = count_orbits_with_budget(3, 3, 2, 3, 1 << 20).unwrap_err();
        match err {
            Error::BudgetExceeded { needed, budget } => {
                assert_eq!(needed, 3u128.pow(27));
                assert_eq!(budget, 1 << 20);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn transpose_symmetry_small() {
        let a = count_orbits(2, 3, 0, 2).unwrap();
        let b = count_orbits(3, 2, 0, 2).unwrap();
        let av: Vec<_> = a.iter().map(|(k, v)| (k.clone(), v)).collect();
        let bv: Vec<_> = b.iter().map(|(k, v)| (k.clone(), v)).collect();
        assert_eq!(av, bv);
    }
}
