//! Orbit combinatorics for m x n matrix jets under the jet group action, and
//! the closed-form Grothendieck classes of the orbits and of their images in
//! the blow-up.
//!
//! An orbit of `J_l(GL_m) x J_l(GL_n)` acting on level-`l` matrix jets is
//! indexed by a nondecreasing sequence `lambda` of `t`-valuations, with the
//! sentinel [`Ent::Top`] standing for entries truncated past the level (the
//! arc-level infinity). The closed formula for `[C_lambda^l]` is implemented
//! for arbitrary nondecreasing `lambda`; validity of that generality is
//! certified by the partition-of-jet-space identity and by the exhaustive
//! finite-field oracle.

use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lring::{Factored, LClass};

/// One entry of an orbit index: a finite jet order or the truncation sentinel.
///
/// Ordering: finite entries by value, and `Top` greater than everything.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ent {
    Fin(u32),
    Top,
}

impl Ent {
    pub fn is_finite(self) -> bool {
        matches!(self, Ent::Fin(_))
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Ent::Fin(v) => Some(v),
            Ent::Top => None,
        }
    }
}

impl fmt::Display for Ent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ent::Fin(v) => write!(f, "{v}"),
            Ent::Top => write!(f, "inf"),
        }
    }
}

/// The partition `lambda` indexing a jet orbit at a fixed level `l`:
/// nondecreasing entries, each a natural number `<= l` or [`Ent::Top`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrbitIndex {
    entries: Vec<Ent>,
    level: u32,
}

impl OrbitIndex {
    /// Validates and builds an orbit index.
    pub fn new(entries: Vec<Ent>, level: u32) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidArgument("orbit index must be nonempty".into()));
        }
        for w in entries.windows(2) {
            if w[0] > w[1] {
                return Err(Error::InvalidArgument(format!(
                    "orbit index entries must be nondecreasing, got {w:?}"
                )));
            }
        }
        for e in &entries {
            if let Ent::Fin(v) = e {
                if *v > level {
                    return Err(Error::InvalidArgument(format!(
                        "finite entry {v} exceeds level {level}"
                    )));
                }
            }
        }
        Ok(OrbitIndex { entries, level })
    }

    /// Convenience constructor from `Option<u32>` entries (`None` = Top).
    pub fn from_options(entries: &[Option<u32>], level: u32) -> Result<Self> {
        OrbitIndex::new(
            entries
                .iter()
                .map(|e| e.map_or(Ent::Top, Ent::Fin))
                .collect(),
            level,
        )
    }

    pub fn entries(&self) -> &[Ent] {
        &self.entries
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Count of finite entries, written `s` throughout.
    pub fn s(&self) -> u32 {
        self.entries.iter().filter(|e| e.is_finite()).count() as u32
    }

    /// The finite prefix `lambda_1..lambda_s`.
    pub fn finite_entries(&self) -> Vec<u32> {
        self.entries.iter().filter_map(|e| e.finite()).collect()
    }

    /// `lambda_bar`: entries truncated at `l + 1` (Top maps to `l + 1`).
    pub fn lambda_bar(&self) -> Vec<u32> {
        self.entries
            .iter()
            .map(|e| e.finite().unwrap_or(self.level + 1))
            .collect()
    }

    /// Reinterprets the same entries at a new level (entries must still fit).
    pub fn at_level(&self, level: u32) -> Result<Self> {
        OrbitIndex::new(self.entries.clone(), level)
    }
}

impl fmt::Display for OrbitIndex {
    /// Comma list with `inf` for Top, e.g. `0,1,inf`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for e in &self.entries {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        Ok(())
    }
}

/// Parses the comma-list form; the level is taken as the largest finite entry
/// (use [`OrbitIndex::at_level`] or the validating constructors to pin it).
pub fn parse_lambda(s: &str) -> Result<Vec<Ent>> {
    let mut entries = Vec::new();
    for tok in s.split(',') {
        let tok = tok.trim();
        if tok.eq_ignore_ascii_case("inf") {
            entries.push(Ent::Top);
        } else {
            let v: u32 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad lambda entry {tok:?}")))?;
            entries.push(Ent::Fin(v));
        }
    }
    Ok(entries)
}

impl FromStr for OrbitIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = parse_lambda(s)?;
        let level = entries.iter().filter_map(|e| e.finite()).max().unwrap_or(0);
        OrbitIndex::new(entries, level)
    }
}

impl Serialize for OrbitIndex {
    /// JSON array with `null` for Top, e.g. `[0, 1, null]`.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<Option<u32>> = self.entries.iter().map(|e| e.finite()).collect();
        v.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for OrbitIndex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<Option<u32>> = Vec::deserialize(deserializer)?;
        let level = v.iter().flatten().copied().max().unwrap_or(0);
        OrbitIndex::from_options(&v, level).map_err(D::Error::custom)
    }
}

/// Derived combinatorics of an orbit index: the jump structure of its finite
/// prefix.
///
/// With `lambda_j = a_1 + ... + a_j`, the jump set is
/// `I = { 2 <= i <= s | a_i != 0 }` and the ladder is `I ∪ {1}` sorted
/// descending as `i_1 > ... > i_p` (empty when `s = 0`), with the sentinel
/// `i_0 = s + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JumpData {
    /// Count of finite entries.
    pub s: u32,
    /// `a_1..a_s` with `lambda_j = a_1 + ... + a_j`.
    pub jumps: Vec<u32>,
    /// `I = { 2 <= i <= s | a_i != 0 }`.
    pub jump_positions: std::collections::BTreeSet<u32>,
    /// `I ∪ {1}` sorted descending.
    pub ladder: Vec<u32>,
    /// `i_0 = s + 1`.
    pub i0: u32,
}

impl JumpData {
    /// Number of ladder rungs `p`.
    pub fn p(&self) -> usize {
        self.ladder.len()
    }
}

/// Computes the jump structure of `lambda`'s finite prefix.
pub fn jump_data(lambda: &OrbitIndex) -> JumpData {
    let fin = lambda.finite_entries();
    let s = fin.len() as u32;
    let mut jumps = Vec::with_capacity(fin.len());
    let mut prev = 0u32;
    for v in &fin {
        jumps.push(v - prev);
        prev = *v;
    }
    let jump_positions: std::collections::BTreeSet<u32> = (2..=s)
        .filter(|i| jumps[(*i - 1) as usize] != 0)
        .collect();
    let mut ladder: Vec<u32> = if s == 0 {
        Vec::new()
    } else {
        let mut l: Vec<u32> = jump_positions.iter().copied().collect();
        l.push(1);
        l.sort_unstable_by(|a, b| b.cmp(a));
        l
    };
    ladder.dedup();
    JumpData { s, jumps, jump_positions, ladder, i0: s + 1 }
}

/// `[GL_d] = L^{d(d-1)/2} prod_{j=1..d} (L^j - 1)`, the class of the general
/// linear group; `1` for `d = 0`.
pub fn class_gl(d: u32) -> LClass {
    Factored::gl(d).to_lclass()
}

/// `[G(d,k)] = prod_{j=1..d} (L^{j+k-d} - 1)/(L^j - 1)`, reduced to
/// polynomial form.
pub fn class_grassmannian(d: u32, k: u32) -> Result<LClass> {
    Ok(Factored::grassmannian(d, k)?.to_lclass())
}

/// Classes of the parabolic subgroup `P_{lambda'}` and its Levi factor
/// `L_{lambda'}` inside `GL_s`, where `s = lambda'.len()` and the blocks are
/// the equal-value runs of the nondecreasing sequence `lambda'`.
pub fn class_parabolic_and_levi(lambda_prime: &[u32]) -> Result<(LClass, LClass)> {
    for w in lambda_prime.windows(2) {
        if w[0] > w[1] {
            return Err(Error::InvalidArgument(
                "lambda' must be nondecreasing".into(),
            ));
        }
    }
    let s = lambda_prime.len() as i64;
    let mut blocks: Vec<i64> = Vec::new();
    let mut run = 0i64;
    for (i, v) in lambda_prime.iter().enumerate() {
        if i > 0 && *v != lambda_prime[i - 1] {
            blocks.push(run);
            run = 0;
        }
        run += 1;
    }
    if run > 0 {
        blocks.push(run);
    }
    let mut levi = Factored::one();
    for c in &blocks {
        levi = levi.mul(&Factored::gl(*c as u32));
    }
    // strictly-upper block cells: (s^2 - sum c_j^2) / 2
    let cells = (s * s - blocks.iter().map(|c| c * c).sum::<i64>()) / 2;
    let parabolic = levi.mul(&Factored::l_pow(cells));
    Ok((parabolic.to_lclass(), levi.to_lclass()))
}

/// Factored form of `[C_lambda^l]`; see [`class_orbit`].
pub fn class_orbit_factored(m: u32, n: u32, lambda: &OrbitIndex) -> Result<Factored> {
    let (m, n) = if m <= n { (m, n) } else { (n, m) };
    if m == 0 {
        return Err(Error::InvalidArgument("matrix shape must be nonzero".into()));
    }
    if lambda.len() != m as usize {
        return Err(Error::InvalidArgument(format!(
            "orbit index length {} does not match min(m,n) = {m}",
            lambda.len()
        )));
    }
    let l = i64::from(lambda.level());
    let jd = jump_data(lambda);
    let s = jd.s;
    let fin = lambda.finite_entries();

    let mut num = Factored::gl(m).mul(&Factored::gl(n));
    let mut prev = jd.i0; // i_0 = s + 1
    for ij in &jd.ladder {
        let d = prev - ij; // i_{j-1} - i_j
        let k = s + 1 - ij;
        num = num.mul(&Factored::grassmannian(d, k)?.pow(2)?);
        num = num.mul(&Factored::gl(d));
        prev = *ij;
    }

    let mut den = Factored::gl(s).pow(2)?;
    den = den.mul(&Factored::gl(m - s)).mul(&Factored::gl(n - s));
    let (m64, n64, s64) = (i64::from(m), i64::from(n), i64::from(s));
    let mut exp = s64 * s64 * l - (m64 + n64) * s64 * l + s64 * (m64 + n64 - 2 * s64);
    for (j, lam) in fin.iter().enumerate() {
        let j1 = j as i64 + 1;
        exp += (m64 + n64 + 1 - 2 * j1) * i64::from(*lam);
    }
    den = den.mul(&Factored::l_pow(exp));
    num.div(&den)
}

/// `[C_lambda^l]`: the Grothendieck class of the jet orbit indexed by
/// `lambda` at its level, for an `m x n` matrix space (`m > n` inputs are
/// transposed).
pub fn class_orbit(m: u32, n: u32, lambda: &OrbitIndex) -> Result<LClass> {
    Ok(class_orbit_factored(m, n, lambda)?.to_lclass())
}

/// Factored form of `[alpha(C_lambda^l)]`; see [`class_alpha_orbit`].
pub fn class_alpha_orbit_factored(m: u32, n: u32, r: u32, i: u32, q: u32) -> Result<Factored> {
    if !(1 <= i && i <= r && r <= q && q <= m && m <= n) {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= i <= r <= q <= m <= n, got i={i}, r={r}, q={q}, m={m}, n={n}"
        )));
    }
    let (m64, n64, i64_) = (i64::from(m), i64::from(n), i64::from(i));
    let num = Factored::gl(m).mul(&Factored::gl(n));
    let den = if q == r {
        let r64 = i64::from(r);
        let exp = (m64 + n64 - 2 * i64_ + 2) * (i64_ - 1) + (r64 - i64_ + 1) * (m64 + n64 - 2 * r64);
        Factored::gl(i - 1)
            .mul(&Factored::gl(r - i + 1).pow(2)?)
            .mul(&Factored::gl(m - r))
            .mul(&Factored::gl(n - r))
            .mul(&Factored::l_pow(exp))
    } else {
        let q64 = i64::from(q);
        let exp = (m64 + n64 - 2 * i64_ + 2) * (i64_ - 1) + (q64 - i64_ + 1) * (m64 + n64 - 2 * q64);
        Factored::gl(i - 1)
            .mul(&Factored::gl(q - i + 1))
            .mul(&Factored::gl(m - q))
            .mul(&Factored::gl(n - q))
            .mul(&Factored::l_pow(exp))
            .mul(&Factored::cyclic(1, 1))
    };
    num.div(&den)
}

/// `[alpha(C_lambda^l)]`: the class of the image in the blow-up of the orbit
/// with signature `(i, q)`. Case split: `q = r` and `q > r`.
pub fn class_alpha_orbit(m: u32, n: u32, r: u32, i: u32, q: u32) -> Result<LClass> {
    Ok(class_alpha_orbit_factored(m, n, r, i, q)?.to_lclass())
}

/// Classifies the image `alpha(C_lambda^l)` by its signature `(i, q)`:
/// `lambda` must look like `0^(i-1) 1^(q-i+1) (>= 2)*` with `q >= r`; two
/// indices have equal images exactly when their signatures coincide.
pub fn image_signature(lambda: &OrbitIndex, r: u32) -> Result<(u32, u32)> {
    if r == 0 || r as usize > lambda.len() {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= r <= {}, got r = {r}",
            lambda.len()
        )));
    }
    let zeros = lambda
        .entries()
        .iter()
        .take_while(|e| **e == Ent::Fin(0))
        .count() as u32;
    let i = zeros + 1;
    if i > r {
        return Err(Error::NotInDomain(format!(
            "lambda = {lambda} has {zeros} leading zeros; needs at most r-1 = {}",
            r - 1
        )));
    }
    let ones = lambda
        .entries()
        .iter()
        .skip(zeros as usize)
        .take_while(|e| **e == Ent::Fin(1))
        .count() as u32;
    let q = zeros + ones;
    if q < r {
        return Err(Error::NotInDomain(format!(
            "lambda = {lambda} does not match any prefix 0^(i-1) 1^(r-i+1): the ones run ends at {q} < r = {r}"
        )));
    }
    Ok((i, q))
}

/// Streams every nondecreasing orbit index of length `min(m,n)` with entries
/// in `{0..l} ∪ {Top}`, in lexicographic order (`Top` greatest).
pub fn enumerate_orbits(m: u32, n: u32, l: u32) -> Result<impl Iterator<Item = OrbitIndex>> {
    let len = m.min(n);
    if len == 0 {
        return Err(Error::InvalidArgument("matrix shape must be nonzero".into()));
    }
    Ok(OrbitIter {
        current: Some(vec![Ent::Fin(0); len as usize]),
        level: l,
    })
}

/// [`enumerate_orbits`] restricted by a predicate, matching the
/// optional-constraint signature.
pub fn enumerate_orbits_where<'a>(
    m: u32,
    n: u32,
    l: u32,
    constraint: Option<Box<dyn Fn(&OrbitIndex) -> bool + 'a>>,
) -> Result<Box<dyn Iterator<Item = OrbitIndex> + 'a>> {
    let it = enumerate_orbits(m, n, l)?;
    Ok(match constraint {
        None => Box::new(it),
        Some(pred) => Box::new(it.filter(move |x| pred(x))),
    })
}

struct OrbitIter {
    current: Option<Vec<Ent>>,
    level: u32,
}

impl OrbitIter {
    fn succ(&self, e: Ent) -> Option<Ent> {
        match e {
            Ent::Fin(v) if v < self.level => Some(Ent::Fin(v + 1)),
            Ent::Fin(_) => Some(Ent::Top),
            Ent::Top => None,
        }
    }
}

impl Iterator for OrbitIter {
    type Item = OrbitIndex;

    fn next(&mut self) -> Option<OrbitIndex> {
        let cur = self.current.take()?;
        let out = OrbitIndex { entries: cur.clone(), level: self.level };
        // odometer: bump the rightmost position that can still grow, then
        // reset everything after it to the bumped value (keeps sequences
        // nondecreasing and enumerates them lexicographically)
        let mut next = cur;
        let mut pos = next.len();
        loop {
            if pos == 0 {
                return Some(out); // exhausted after this item
            }
            pos -= 1;
            if let Some(bumped) = self.succ(next[pos]) {
                for slot in next.iter_mut().skip(pos) {
                    *slot = bumped;
                }
                self.current = Some(next);
                return Some(out);
            }
        }
    }
}

/// The classification data of a point of the blow-up's exceptional locus:
/// shape `(m, n, r)`, the rank parameter `i` (rank of `h(e)` is `i - 1`),
/// and the `A_q` membership `q` (`None` for points off every alpha-image).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PointClass {
    pub m: u32,
    pub n: u32,
    pub r: u32,
    pub i: u32,
    pub q: Option<u32>,
}

impl PointClass {
    pub fn new(m: u32, n: u32, r: u32, i: u32, q: Option<u32>) -> Result<Self> {
        if !(1 <= r && r <= m && m <= n) {
            return Err(Error::InvalidArgument(format!(
                "need 1 <= r <= m <= n, got r={r}, m={m}, n={n}"
            )));
        }
        if !(1 <= i && i <= r) {
            return Err(Error::InvalidArgument(format!(
                "need 1 <= i <= r, got i={i}, r={r}"
            )));
        }
        if let Some(q) = q {
            if !(r <= q && q <= m) {
                return Err(Error::InvalidArgument(format!(
                    "need r <= q <= m, got q={q}, r={r}, m={m}"
                )));
            }
        }
        Ok(PointClass { m, n, r, i, q })
    }
}
