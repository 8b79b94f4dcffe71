//! Finite abelian groups in invariant-factor form, the additive functions
//! `λ_p(G) = ε_p(|G|)` and reconstruction of a group from its λ-profile.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::lattice::{lattice_from_generators, quotient_invariants, InvariantFactors, Lattice};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbGroupError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("cyclic factor of order 0 is not finite")]
    InfiniteFactor,
    #[error("invariant factor {0} does not fit in 64 bits")]
    FactorTooLarge(String),
    #[error("group has a free part of rank {0}")]
    NotFinite(usize),
    #[error("inconsistent λ-profile at p = {p}: {reason}")]
    InconsistentProfile { p: u64, reason: String },
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Exponent of `p` in `n` (`n > 0`).
pub fn p_adic_valuation(mut n: u64, p: u64) -> u32 {
    let mut e = 0;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

fn check_prime(p: u64) -> Result<(), AbGroupError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(AbGroupError::NotPrime(p))
    }
}

/// A finite abelian group `Z/f_1 ⊕ … ⊕ Z/f_k` with `f_1 | f_2 | … | f_k`, all `f_i ≥ 2`.
///
/// The representation is canonical, so `==` is isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FinAbGroup {
    factors: Vec<u64>,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        FinAbGroup { factors: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Result<Self, AbGroupError> {
        Self::from_cyclic_orders(&[n])
    }

    /// Normalizes an arbitrary direct sum of cyclic groups. Orders equal to 1
    /// are dropped.
    pub fn from_cyclic_orders(orders: &[u64]) -> Result<Self, AbGroupError> {
        let mut primary: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &n in orders {
            if n == 0 {
                return Err(AbGroupError::InfiniteFactor);
            }
            for (p, e) in factorize(n) {
                primary.entry(p).or_default().push(e);
            }
        }
        Ok(Self::from_primary(&primary))
    }

    /// Builds the group from its primary decomposition: for each prime, the
    /// exponents of the cyclic `p`-power summands.
    pub fn from_primary(primary: &BTreeMap<u64, Vec<u32>>) -> Self {
        let len = primary.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; len];
        for (&p, exps) in primary {
            let mut exps = exps.clone();
            exps.sort_unstable();
            // largest exponents go with the largest invariant factors
            for (slot, &e) in factors.iter_mut().rev().zip(exps.iter().rev()) {
                *slot *= p.pow(e);
            }
        }
        factors.retain(|&f| f > 1);
        FinAbGroup { factors }
    }

    pub fn from_invariant_factors(inv: &InvariantFactors) -> Result<Self, AbGroupError> {
        if inv.free_rank != 0 {
            return Err(AbGroupError::NotFinite(inv.free_rank));
        }
        let orders = inv
            .factors
            .iter()
            .map(|f| f.to_u64().ok_or_else(|| AbGroupError::FactorTooLarge(f.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_cyclic_orders(&orders)
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Largest invariant factor; 1 for the trivial group.
    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn order(&self) -> BigUint {
        self.factors.iter().map(|&f| BigUint::from(f)).product()
    }

    pub fn primary_decomposition(&self) -> BTreeMap<u64, Vec<u32>> {
        let mut primary: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &f in &self.factors {
            for (p, e) in factorize(f) {
                primary.entry(p).or_default().push(e);
            }
        }
        primary
    }

    pub fn primes(&self) -> Vec<u64> {
        self.factors.last().map(|&f| factorize(f).into_iter().map(|(p, _)| p).collect()).unwrap_or_default()
    }

    pub fn lambda_p(&self, p: u64) -> Result<u64, AbGroupError> {
        check_prime(p)?;
        Ok(self.factors.iter().map(|&f| u64::from(p_adic_valuation(f, p))).sum())
    }

    pub fn sylow(&self, p: u64) -> Result<FinAbGroup, AbGroupError> {
        check_prime(p)?;
        let factors: Vec<u64> =
            self.factors.iter().map(|&f| p.pow(p_adic_valuation(f, p))).filter(|&f| f > 1).collect();
        Ok(FinAbGroup { factors })
    }

    /// The subgroup `p^s G`.
    pub fn p_power_multiply(&self, p: u64, s: u32) -> Result<FinAbGroup, AbGroupError> {
        check_prime(p)?;
        let orders: Vec<u64> = self
            .factors
            .iter()
            .map(|&f| {
                let v = p_adic_valuation(f, p);
                f / p.pow(v.min(s))
            })
            .collect();
        Self::from_cyclic_orders(&orders)
    }

    pub fn lambda_profile(&self) -> LambdaProfile {
        let mut profile = LambdaProfile::default();
        for (p, exps) in self.primary_decomposition() {
            for s in 0.. {
                let value: u64 = exps.iter().filter(|&&k| k > s).map(|&k| u64::from(k - s)).sum();
                if value == 0 {
                    break;
                }
                profile.entries.insert((p, s), value);
            }
        }
        profile
    }

    /// Inverse of [`FinAbGroup::lambda_profile`].
    ///
    /// With `λ_s = λ_p(p^s G)`, the difference `λ_s − λ_{s+1}` counts the cyclic
    /// `p`-summands of order at least `p^{s+1}`; consecutive differences of those
    /// counts give the multiplicity of each `p^k`.
    pub fn from_lambda_profile(profile: &LambdaProfile) -> Result<FinAbGroup, AbGroupError> {
        let mut primary: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for p in profile.primes() {
            check_prime(p)?;
            let top = profile.entries.keys().filter(|(q, _)| *q == p).map(|&(_, s)| s).max().unwrap_or(0);
            let values: Vec<i128> = (0..=top + 1).map(|s| i128::from(profile.get(p, s))).collect();
            // at_least[s] = number of summands of order ≥ p^{s+1}
            let at_least: Vec<i128> = values.windows(2).map(|w| w[0] - w[1]).chain(std::iter::once(0)).collect();
            let exps = primary.entry(p).or_default();
            for k in 1..at_least.len() {
                let count = at_least[k - 1] - at_least[k];
                if count < 0 {
                    return Err(AbGroupError::InconsistentProfile {
                        p,
                        reason: format!("negative multiplicity {count} for order {p}^{k}"),
                    });
                }
                exps.extend(std::iter::repeat_n(k as u32, count as usize));
            }
        }
        let g = Self::from_primary(&primary);
        if g.lambda_profile() != *profile {
            return Err(AbGroupError::InconsistentProfile {
                p: profile.primes().first().copied().unwrap_or(0),
                reason: "profile is not realized by any group".into(),
            });
        }
        Ok(g)
    }

    pub fn is_isomorphic(&self, other: &FinAbGroup) -> bool {
        self == other
    }

    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        let orders: Vec<u64> = self.factors.iter().chain(other.factors.iter()).copied().collect();
        Self::from_cyclic_orders(&orders).expect("factors of a finite group are nonzero")
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.factors.iter().map(|n| format!("C{n}")).collect();
        f.write_str(&parts.join("x"))
    }
}

impl serde::Serialize for FinAbGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.factors.serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for FinAbGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let orders = Vec::<u64>::deserialize(d)?;
        FinAbGroup::from_cyclic_orders(&orders).map_err(serde::de::Error::custom)
    }
}

/// Parses the abelian group grammar `1 | C<n> | C<n>xC<m>x…` (`n ≥ 2`).
impl FromStr for FinAbGroup {
    type Err = AbGroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |pos: usize, msg: &str| AbGroupError::Parse { pos, msg: msg.to_string() };
        if s == "1" {
            return Ok(FinAbGroup::trivial());
        }
        if s.is_empty() {
            return Err(err(0, "empty group spec"));
        }
        let mut orders = Vec::new();
        let mut pos = 0;
        for token in s.split('x') {
            let Some(digits) = token.strip_prefix('C') else {
                return Err(err(pos, "expected 'C<n>'"));
            };
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err(pos + 1, "expected a decimal order after 'C'"));
            }
            let n: u64 = digits.parse().map_err(|_| err(pos + 1, "order out of range"))?;
            if n < 2 {
                return Err(err(pos + 1, "cyclic order must be at least 2"));
            }
            orders.push(n);
            pos += token.len() + 1;
        }
        Self::from_cyclic_orders(&orders)
    }
}

/// Nonzero values `λ_p(p^s G)` keyed by `(p, s)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LambdaProfile {
    entries: BTreeMap<(u64, u32), u64>,
}

impl LambdaProfile {
    /// Builds a profile, discarding zero entries.
    pub fn from_entries(entries: impl IntoIterator<Item = ((u64, u32), u64)>) -> Self {
        LambdaProfile { entries: entries.into_iter().filter(|&(_, v)| v != 0).collect() }
    }

    pub fn get(&self, p: u64, s: u32) -> u64 {
        self.entries.get(&(p, s)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<(u64, u32), u64> {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.entries.keys().map(|&(p, _)| p).collect();
        ps.dedup();
        ps
    }

    /// Parses the `{"p,s": value}` JSON object form.
    pub fn from_json(text: &str) -> Result<Self, AbGroupError> {
        let parse_err = |msg: String| AbGroupError::Parse { pos: 0, msg };
        let map: BTreeMap<String, u64> = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
        let mut entries = Vec::with_capacity(map.len());
        for (key, value) in map {
            let (p, s) = key.split_once(',').ok_or_else(|| parse_err(format!("key {key:?} is not \"p,s\"")))?;
            let p: u64 = p.trim().parse().map_err(|_| parse_err(format!("bad prime in key {key:?}")))?;
            let s: u32 = s.trim().parse().map_err(|_| parse_err(format!("bad shift in key {key:?}")))?;
            entries.push(((p, s), value));
        }
        Ok(Self::from_entries(entries))
    }

    pub fn to_json(&self) -> String {
        let map: BTreeMap<String, u64> = self.entries.iter().map(|(&(p, s), &v)| (format!("{p},{s}"), v)).collect();
        serde_json::to_string(&map).expect("string-keyed map serializes")
    }
}

const SMALL_PRIMES: [u64; 11] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31];

/// Seeded random group with at most `max_rank` primary summands, each a
/// prime power `p^e ≤ max_prime_power` with `p ≤ 31`.
pub fn random_group(seed: u64, max_rank: usize, max_prime_power: u64) -> FinAbGroup {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rank = rng.gen_range(0..=max_rank);
    let mut orders = Vec::with_capacity(rank);
    let candidates: Vec<u64> = SMALL_PRIMES.iter().copied().filter(|&p| p <= max_prime_power).collect();
    if candidates.is_empty() {
        return FinAbGroup::trivial();
    }
    for _ in 0..rank {
        let p = candidates[rng.gen_range(0..candidates.len())];
        let mut max_e = 0u32;
        while p.checked_pow(max_e + 1).is_some_and(|q| q <= max_prime_power) {
            max_e += 1;
        }
        let e = rng.gen_range(1..=max_e);
        orders.push(p.pow(e));
    }
    FinAbGroup::from_cyclic_orders(&orders).expect("prime powers are nonzero")
}

/// Seeded subgroup `H ≤ G` together with `G/H`.
///
/// `G` is presented as `Z^k / R` with `R` the diagonal relation lattice; a few
/// random vectors `v_i` generate `H = (⟨v_i⟩ + R) / R`, and `G/H = Z^k / (⟨v_i⟩ + R)`.
pub fn random_subgroup_quotient(seed: u64, g: &FinAbGroup) -> (FinAbGroup, FinAbGroup) {
    let k = g.rank();
    if k == 0 {
        return (FinAbGroup::trivial(), FinAbGroup::trivial());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let relations: Vec<Vec<BigInt>> = (0..k)
        .map(|i| (0..k).map(|j| if i == j { BigInt::from(g.factors[i]) } else { BigInt::zero() }).collect())
        .collect();
    let gens = rng.gen_range(0..=k + 1);
    let mut all = relations.clone();
    for _ in 0..gens {
        let v: Vec<BigInt> = g.factors.iter().map(|&f| BigInt::from(rng.gen_range(0..f))).collect();
        all.push(v);
    }
    let rel = lattice_from_generators(k, &relations);
    let span = lattice_from_generators(k, &all);
    let full = Lattice::full(k);
    let h = quotient_invariants(&span, &rel).expect("relations lie in their own span");
    let q = quotient_invariants(&full, &span).expect("every lattice lies in Z^k");
    (
        FinAbGroup::from_invariant_factors(&h).expect("subgroup of a finite group is finite"),
        FinAbGroup::from_invariant_factors(&q).expect("quotient of a finite group is finite"),
    )
}

fn partitions(n: u32, max_part: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max_part)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every abelian group of order `n` up to isomorphism, one per choice of a
/// partition of each prime exponent.
pub fn abelian_groups_of_order(n: u64) -> Vec<FinAbGroup> {
    let mut groups = vec![BTreeMap::new()];
    for (p, e) in factorize(n) {
        let mut next = Vec::new();
        for g in &groups {
            for part in partitions(e, e) {
                let mut g: BTreeMap<u64, Vec<u32>> = g.clone();
                g.insert(p, part);
                next.push(g);
            }
        }
        groups = next;
    }
    let mut out: Vec<FinAbGroup> = groups.iter().map(FinAbGroup::from_primary).collect();
    out.sort_by(|a, b| a.invariant_factors().cmp(b.invariant_factors()));
    out
}

/// `p^e` as a big integer.
pub fn big_pow(p: u64, e: u32) -> BigUint {
    let mut acc = BigUint::one();
    for _ in 0..e {
        acc *= p;
    }
    acc
}
