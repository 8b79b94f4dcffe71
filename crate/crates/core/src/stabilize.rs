//! Sequences `Q_1 … Q_N`, detection of an empirical stabilization index,
//! the `|Q_n| ≤ d^r` bound and the `λ_p(p^s Q_n)` constancy diagnostics.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::abgroup::{big_pow, FinAbGroup};
use crate::augring::{quotient_from_powers, AugmentedRing, QuotientResult, RingError};

pub const DEFAULT_MAX_N: usize = 20;
pub const DEFAULT_WINDOW: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StabilizeError {
    #[error("max_n must be at least 1")]
    InvalidMaxN,
    #[error("window must be at least 2, got {0}")]
    InvalidWindow(usize),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("{ring}: |Q_{n}| = {order} exceeds d^r = {bound}")]
    BoundViolation { ring: String, n: usize, order: String, bound: String },
    #[error("{ring}: Q_{n} = {group} is not killed by d = {d}")]
    TorsionViolation { ring: String, n: usize, group: String, d: u64 },
    #[error("{ring}: λ_{p}(p^{s} Q_n) is not constant on the stable tail starting at n = {n0}")]
    LambdaTailNotConstant { ring: String, p: u64, s: u32, n0: usize },
}

/// Outcome of looking for a constant tail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stabilization {
    Detected {
        n0: usize,
        window: usize,
    },
    /// The constant tail (length `tail`) is shorter than the requested window.
    Inconclusive {
        tail: usize,
    },
}

impl Stabilization {
    pub fn n0(self) -> Option<usize> {
        match self {
            Stabilization::Detected { n0, .. } => Some(n0),
            Stabilization::Inconclusive { .. } => None,
        }
    }

    pub fn tail(self) -> usize {
        match self {
            Stabilization::Detected { window, .. } => window,
            Stabilization::Inconclusive { tail } => tail,
        }
    }
}

pub fn quotient_sequence(ring: &AugmentedRing, max_n: usize) -> Result<Vec<QuotientResult>, RingError> {
    if max_n == 0 {
        return Ok(Vec::new());
    }
    let powers = ring.ideal_powers(max_n)?;
    powers.windows(2).enumerate().map(|(i, w)| quotient_from_powers(i + 1, &w[0], &w[1])).collect()
}

/// Smallest 1-based `n0` from which every group is isomorphic to the last one.
///
/// # Panics
/// If `min_window < 2`.
pub fn detect_stabilization(seq: &[FinAbGroup], min_window: usize) -> Stabilization {
    assert!(min_window >= 2, "window must be at least 2");
    let Some(last) = seq.last() else {
        return Stabilization::Inconclusive { tail: 0 };
    };
    let tail = seq.iter().rev().take_while(|g| g.is_isomorphic(last)).count();
    if tail >= min_window {
        Stabilization::Detected { n0: seq.len() - tail + 1, window: tail }
    } else {
        Stabilization::Inconclusive { tail }
    }
}

pub fn verify_bound(quotients: &[QuotientResult], d: u64, r: usize) -> Vec<bool> {
    let bound = big_pow(d, r as u32);
    quotients.iter().map(|q| q.order <= bound).collect()
}

/// Rows `λ_p(p^s Q_n)` for `n = 1 … N` and whether each row is constant from
/// the tail start on.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LambdaDiagnostics {
    pub table: BTreeMap<(u64, u32), Vec<u64>>,
    pub constant: BTreeMap<(u64, u32), bool>,
}

/// Builds the λ table for primes `p | d` and shifts with `p^s ≤ d^r`; every
/// other `(p, s)` is zero for all `n`. `tail_start` is 1-based.
pub fn lambda_diagnostics(quotients: &[FinAbGroup], d: u64, r: usize, tail_start: usize) -> LambdaDiagnostics {
    let bound = big_pow(d, r as u32);
    let mut diag = LambdaDiagnostics::default();
    for (p, _) in crate::abgroup::factorize(d) {
        let mut s = 0u32;
        while big_pow(p, s) <= bound {
            let row: Vec<u64> = quotients
                .iter()
                .map(|q| q.p_power_multiply(p, s).and_then(|g| g.lambda_p(p)).expect("p is a prime factor of d"))
                .collect();
            let tail = &row[tail_start.saturating_sub(1).min(row.len())..];
            let constant = tail.windows(2).all(|w| w[0] == w[1]);
            diag.constant.insert((p, s), constant);
            diag.table.insert((p, s), row);
            s += 1;
        }
    }
    diag
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizationReport {
    pub ring_id: String,
    pub max_n: usize,
    pub d: u64,
    pub r: usize,
    pub quotients: Vec<QuotientResult>,
    pub n0_candidate: Option<usize>,
    /// Length of the constant tail of the observed sequence.
    pub window: usize,
    /// Always false: only a finite window is observed.
    pub certified: bool,
    pub bound_ok: Vec<bool>,
    #[serde(with = "ps_map")]
    pub lambda_table: BTreeMap<(u64, u32), Vec<u64>>,
    #[serde(with = "ps_map")]
    pub lambda_constant: BTreeMap<(u64, u32), bool>,
}

impl StabilizationReport {
    pub fn groups(&self) -> Vec<FinAbGroup> {
        self.quotients.iter().map(|q| q.group.clone()).collect()
    }

    pub fn bound(&self) -> BigUint {
        big_pow(self.d, self.r as u32)
    }

    pub fn all_bounds_hold(&self) -> bool {
        self.bound_ok.iter().all(|&b| b)
    }

    pub fn stabilized(&self) -> bool {
        self.n0_candidate.is_some()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Flat CSV view: one line per `n`; no header.
    pub fn csv_rows(&self) -> Vec<String> {
        self.quotients
            .iter()
            .zip(&self.bound_ok)
            .map(|(q, ok)| {
                let inv: Vec<String> = q.group.invariant_factors().iter().map(u64::to_string).collect();
                format!("{},{},{},{},{}", csv_field(&self.ring_id), q.n, inv.join("|"), q.order, ok)
            })
            .collect()
    }
}

pub const CSV_HEADER: &str = "ring_id,n,invariants,order,bound_ok";

pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Computes `Q_1 … Q_max_n` and the full report. Violations of the torsion,
/// bound or λ-constancy properties are returned as errors.
pub fn analyze(ring: &AugmentedRing, max_n: usize, min_window: usize) -> Result<StabilizationReport, StabilizeError> {
    if max_n == 0 {
        return Err(StabilizeError::InvalidMaxN);
    }
    if min_window < 2 {
        return Err(StabilizeError::InvalidWindow(min_window));
    }
    let quotients = quotient_sequence(ring, max_n)?;
    let d = quotients[0].group.exponent();
    let r = ring.free_rank_r();
    let groups: Vec<FinAbGroup> = quotients.iter().map(|q| q.group.clone()).collect();

    for q in &quotients {
        if q.group.invariant_factors().iter().any(|f| d % f != 0) {
            return Err(StabilizeError::TorsionViolation {
                ring: ring.name().to_string(),
                n: q.n,
                group: q.group.to_string(),
                d,
            });
        }
    }
    let bound_ok = verify_bound(&quotients, d, r);
    if let Some(i) = bound_ok.iter().position(|ok| !ok) {
        return Err(StabilizeError::BoundViolation {
            ring: ring.name().to_string(),
            n: i + 1,
            order: quotients[i].order.to_string(),
            bound: big_pow(d, r as u32).to_string(),
        });
    }

    let stab = detect_stabilization(&groups, min_window);
    let tail_start = groups.len() - stab.tail() + 1;
    let diag = lambda_diagnostics(&groups, d, r, tail_start);
    if let Some(n0) = stab.n0() {
        if let Some((&(p, s), _)) = diag.constant.iter().find(|(_, &c)| !c) {
            return Err(StabilizeError::LambdaTailNotConstant { ring: ring.name().to_string(), p, s, n0 });
        }
    }

    Ok(StabilizationReport {
        ring_id: ring.name().to_string(),
        max_n,
        d,
        r,
        quotients,
        n0_candidate: stab.n0(),
        window: stab.tail(),
        certified: false,
        bound_ok,
        lambda_table: diag.table,
        lambda_constant: diag.constant,
    })
}

/// `(p, s)`-keyed maps as JSON objects with `"p,s"` keys.
mod ps_map {
    use super::*;

    pub fn serialize<S: Serializer, V: Serialize>(map: &BTreeMap<(u64, u32), V>, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut out = s.serialize_map(Some(map.len()))?;
        for (&(p, k), v) in map {
            out.serialize_entry(&format!("{p},{k}"), v)?;
        }
        out.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>, V: Deserialize<'de>>(
        d: D,
    ) -> Result<BTreeMap<(u64, u32), V>, D::Error> {
        let raw = BTreeMap::<String, V>::deserialize(d)?;
        raw.into_iter()
            .map(|(key, v)| {
                let (p, s) = key
                    .split_once(',')
                    .ok_or_else(|| serde::de::Error::custom(format!("key {key:?} is not \"p,s\"")))?;
                let p = p.parse().map_err(serde::de::Error::custom)?;
                let s = s.parse().map_err(serde::de::Error::custom)?;
                Ok(((p, s), v))
            })
            .collect()
    }
}
