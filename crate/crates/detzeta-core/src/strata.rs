//! Contact-locus classes, exceptional-stratum classes `[E̊_J]`, and the
//! fiber classes of the resolution of a determinantal variety.
//!
//! The resolution of `Z_r` in the space of `m x n` matrices carries `r`
//! exceptional divisors with numerical data `(N_j, nu_j) = (r+1-j,
//! (m+1-j)(n+1-j))`. Contact loci of jets along the divisors are finite
//! unions of jet orbits, so their classes are orbit-class sums; stratum
//! classes are recovered by dividing out two locally trivial fibrations.
//! Because the underlying statements hold only for "large enough" jet
//! level, every level-dependent computation here is performed at two
//! consecutive levels and cross-checked, turning the unquantified
//! hypothesis into a runtime certificate.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lring::{Factored, LClass};
use crate::orbits::{class_orbit_factored, class_alpha_orbit_factored, Ent, OrbitIndex};

/// Numerical data of a log resolution: ordered pairs `(N_j, nu_j)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolutionData {
    pub pairs: Vec<(u32, u32)>,
    pub source: Source,
}

/// Where resolution data came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Determinantal { m: u32, n: u32, r: u32 },
    UserSupplied,
}

impl ResolutionData {
    pub fn r(&self) -> u32 {
        self.pairs.len() as u32
    }

    /// `N_j` for `j = 1..r`.
    pub fn n_of(&self, j: u32) -> u32 {
        self.pairs[(j - 1) as usize].0
    }

    /// `nu_j` for `j = 1..r`.
    pub fn nu_of(&self, j: u32) -> u32 {
        self.pairs[(j - 1) as usize].1
    }
}

/// The data `(N_j, nu_j) = (r+1-j, (m+1-j)(n+1-j))`, `j = 1..r`, of the
/// standard resolution of `Z_r` inside the `m x n` matrices.
pub fn determinantal_resolution(m: u32, n: u32, r: u32) -> Result<ResolutionData> {
    let (m, n) = if m <= n { (m, n) } else { (n, m) };
    if !(1 <= r && r <= m) {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= r <= min(m,n), got r={r}, m={m}, n={n}"
        )));
    }
    let pairs = (1..=r)
        .map(|j| (r + 1 - j, (m + 1 - j) * (n + 1 - j)))
        .collect();
    Ok(ResolutionData {
        pairs,
        source: Source::Determinantal { m, n, r },
    })
}

/// Prescribed contact orders `u = (u_1, ..., u_r)` along the exceptional
/// divisors; the support `I_u = { j : u_j != 0 }` is always derived, never
/// stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContactProfile {
    u: Vec<u32>,
}

impl ContactProfile {
    pub fn new(u: Vec<u32>) -> Self {
        ContactProfile { u }
    }

    /// Indicator profile of a subset `J ⊆ {1..r}`.
    pub fn indicator(j_set: &BTreeSet<u32>, r: u32) -> Self {
        ContactProfile {
            u: (1..=r).map(|j| u32::from(j_set.contains(&j))).collect(),
        }
    }

    pub fn u(&self) -> &[u32] {
        &self.u
    }

    pub fn support(&self) -> BTreeSet<u32> {
        self.u
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, _)| i as u32 + 1)
            .collect()
    }
}

/// A stratum class `[E̊_J]` with the jet level that witnessed it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StratumClass {
    pub subset: Vec<u32>,
    pub value: LClass,
    pub witnessed_level: u32,
}

fn validate_subset(j_set: &[u32], r: u32) -> Result<BTreeSet<u32>> {
    let set: BTreeSet<u32> = j_set.iter().copied().collect();
    if set.len() != j_set.len() {
        return Err(Error::InvalidArgument(format!(
            "subset has repeated elements: {j_set:?}"
        )));
    }
    for &j in &set {
        if j < 1 || j > r {
            return Err(Error::InvalidArgument(format!(
                "subset element {j} outside 1..={r}"
            )));
        }
    }
    Ok(set)
}

/// All nondecreasing tails of the given length with entries in
/// `{lo, ..., l} ∪ {TOP}`; the empty tail when `len = 0`.
fn tails(len: usize, lo: u32, l: u32) -> Vec<Vec<Ent>> {
    let mut alphabet: Vec<Ent> = (lo..=l).map(Ent::Fin).collect();
    alphabet.push(Ent::Top);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(alphabet: &[Ent], len: usize, from: usize, cur: &mut Vec<Ent>, out: &mut Vec<Vec<Ent>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for (idx, e) in alphabet.iter().enumerate().skip(from) {
            cur.push(*e);
            rec(alphabet, len, idx, cur, out);
            cur.pop();
        }
    }
    rec(&alphabet, len, 0, &mut cur, &mut out);
    out
}

/// Minimum admissible jet level for a contact profile: `2 Σ N_j u_j + 2`.
pub fn contact_level_policy(res: &ResolutionData, u: &ContactProfile) -> u32 {
    let s: u32 = res
        .pairs
        .iter()
        .zip(u.u())
        .map(|(&(n_j, _), &u_j)| n_j * u_j)
        .sum();
    2 * s + 2
}

/// `[𝔛^l_u]`: the class of level-`l` jets with contact order exactly `u_j`
/// along each divisor `E_j`, as a sum of orbit classes over the indices
/// with prefix partial sums `λ_j = u_1 + ... + u_j` and free nondecreasing
/// tail in `{λ_r..l} ∪ {TOP}`.
pub fn contact_locus_class(m: u32, n: u32, r: u32, l: u32, u: &ContactProfile) -> Result<LClass> {
    let (m, n) = if m <= n { (m, n) } else { (n, m) };
    if !(1 <= r && r <= m) {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= r <= min(m,n), got r={r}, m={m}, n={n}"
        )));
    }
    if u.u().len() != r as usize {
        return Err(Error::InvalidArgument(format!(
            "contact profile length {} != r = {r}",
            u.u().len()
        )));
    }
    // the index (u_1, u_1+u_2, ..., tail) must fit below the level; the
    // stronger 2ΣN_ju_j+2 policy is enforced where stability matters, in
    // stratum_class_at_level
    let needed: u32 = u.u().iter().sum();
    if l < needed {
        return Err(Error::LevelTooSmall { given: l, needed });
    }
    let mut prefix = Vec::with_capacity(r as usize);
    let mut acc = 0u32;
    for &u_j in u.u() {
        acc += u_j;
        prefix.push(Ent::Fin(acc));
    }
    let mut total = LClass::zero();
    for tail in tails((m - r) as usize, acc, l) {
        let mut entries = prefix.clone();
        entries.extend(tail);
        let lambda = OrbitIndex::new(entries, l)?;
        total = total.add(&class_orbit_factored(m, n, &lambda)?.to_lclass());
    }
    Ok(total)
}

/// `[E̊_J]` computed at one specific level: the contact-locus class of the
/// indicator profile divided by the two fibration factors
/// `L^{mnl - Σ_{i∈J} nu_i}` and `(L-1)^{|J|}`.
///
/// For `J = ∅` no jets are needed: `[E̊_∅] = L^{mn} - [Z_r]`, with `[Z_r]`
/// the sum of the level-0 orbit classes of rank `< r`; the witnessed level
/// is 0.
pub fn stratum_class_at_level(m: u32, n: u32, r: u32, j_set: &[u32], l: u32) -> Result<StratumClass> {
    let (m, n) = if m <= n { (m, n) } else { (n, m) };
    if !(1 <= r && r <= m) {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= r <= min(m,n), got r={r}, m={m}, n={n}"
        )));
    }
    let set = validate_subset(j_set, r)?;
    if set.is_empty() {
        let mut z_r = LClass::zero();
        for s in 0..r {
            let mut entries = vec![Ent::Fin(0); s as usize];
            entries.extend(vec![Ent::Top; (m - s) as usize]);
            let lambda = OrbitIndex::new(entries, 0)?;
            z_r = z_r.add(&class_orbit_factored(m, n, &lambda)?.to_lclass());
        }
        let value = LClass::l_pow(i64::from(m) * i64::from(n)).sub(&z_r);
        return Ok(StratumClass {
            subset: Vec::new(),
            value,
            witnessed_level: 0,
        });
    }
    let res = determinantal_resolution(m, n, r)?;
    let u = ContactProfile::indicator(&set, r);
    let needed = contact_level_policy(&res, &u);
    if l < needed {
        return Err(Error::LevelTooSmall { given: l, needed });
    }
    let x = contact_locus_class(m, n, r, l, &u)?;
    let nu_sum: i64 = set.iter().map(|&j| i64::from(res.nu_of(j))).sum();
    let exp = -(i64::from(m) * i64::from(n) * i64::from(l)) + nu_sum;
    let torus = LClass::l().sub(&LClass::one()).pow(set.len() as i64)?;
    let value = x.mul(&LClass::l_pow(exp)).div(&torus)?;
    Ok(StratumClass {
        subset: set.into_iter().collect(),
        value,
        witnessed_level: l,
    })
}

/// `[E̊_J]` with the level-stability certificate: computed at the policy
/// level `l0 = 2 Σ_{j∈J} N_j + 2` and again at `l0 + 1`; disagreement is a
/// hard error rather than a silent wrong answer.
pub fn stratum_class(m: u32, n: u32, r: u32, j_set: &[u32]) -> Result<StratumClass> {
    let (m, n) = if m <= n { (m, n) } else { (n, m) };
    if !(1 <= r && r <= m) {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= r <= min(m,n), got r={r}, m={m}, n={n}"
        )));
    }
    let set = validate_subset(j_set, r)?;
    if set.is_empty() {
        return stratum_class_at_level(m, n, r, j_set, 0);
    }
    let res = determinantal_resolution(m, n, r)?;
    let u = ContactProfile::indicator(&set, r);
    let l0 = contact_level_policy(&res, &u);
    let first = stratum_class_at_level(m, n, r, j_set, l0)?;
    let second = stratum_class_at_level(m, n, r, j_set, l0 + 1)?;
    if first.value != second.value {
        return Err(Error::LevelInstability { l0, l1: l0 + 1 });
    }
    Ok(first)
}

/// `[E̊_i ∩ φ^{-1}(e)]` for a point `e` of class `(i, q)`: the equation-(5)
/// sum over `λ ∈ A_q` with prefix `0^{i-1} 1^{q-i+1}` and tail in
/// `{2..l} ∪ {TOP}` of `[C_λ^l] / ((L-1) · L^{mnl - nu_i} · [α(C_λ^l)])`.
pub fn fiber_class(m: u32, n: u32, r: u32, i: u32, q: u32, l: u32) -> Result<LClass> {
    let (m, n) = if m <= n { (m, n) } else { (n, m) };
    if !(1 <= i && i <= r && r <= q && q <= m) {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= i <= r <= q <= min(m,n), got i={i}, r={r}, q={q}, m={m}, n={n}"
        )));
    }
    if l < r + 2 {
        return Err(Error::LevelTooSmall { given: l, needed: r + 2 });
    }
    let nu_i = i64::from((m + 1 - i) * (n + 1 - i));
    let alpha = class_alpha_orbit_factored(m, n, r, i, q)?;
    let scale = Factored::cyclic(1, 1).mul(&Factored::l_pow(
        i64::from(m) * i64::from(n) * i64::from(l) - nu_i,
    ));
    let mut prefix = vec![Ent::Fin(0); (i - 1) as usize];
    prefix.extend(vec![Ent::Fin(1); (q - i + 1) as usize]);
    let mut total = LClass::zero();
    for tail in tails((m - q) as usize, 2, l) {
        let mut entries = prefix.clone();
        entries.extend(tail);
        let lambda = OrbitIndex::new(entries, l)?;
        let summand = class_orbit_factored(m, n, &lambda)?
            .div(&alpha)?
            .div(&scale)?;
        total = total.add(&summand.to_lclass());
    }
    Ok(total)
}

/// Closed form of the fiber's Euler characteristic: 1 iff `i = r` or
/// `i < r < q`, and 0 iff `i < r = q`.
pub fn fiber_euler_closed(m: u32, n: u32, r: u32, i: u32, q: u32) -> Result<u32> {
    let (m, n) = if m <= n { (m, n) } else { (n, m) };
    if !(1 <= i && i <= r && r <= q && q <= m) {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= i <= r <= q <= min(m,n), got i={i}, r={r}, q={q}, m={m}, n={n}"
        )));
    }
    Ok(u32::from(i == r || r < q))
}
