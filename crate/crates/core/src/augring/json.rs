use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use super::{AugmentedRing, RingError};
use crate::bigjson::{int_from_value, int_to_value};

#[derive(Debug, Error)]
pub enum RingSpecError {
    #[error("malformed ring JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("structure entry {index}: {msg}")]
    BadEntry { index: usize, msg: String },
    #[error("augmentation entry {index}: {msg}")]
    BadAugmentation { index: usize, msg: String },
    #[error("explicit entries for b{i}·b{j} and b{j}·b{i} disagree")]
    ConflictingSymmetricEntries { i: usize, j: usize },
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Serialize, Deserialize)]
struct RingSpec {
    basis: Vec<String>,
    identity: usize,
    structure: Vec<Vec<Value>>,
    augmentation: Vec<Value>,
}

fn index_from(v: &Value, index: usize, m: usize) -> Result<usize, RingSpecError> {
    let x = int_from_value(v).map_err(|msg| RingSpecError::BadEntry { index, msg })?;
    x.to_usize()
        .filter(|&i| i < m)
        .ok_or_else(|| RingSpecError::BadEntry { index, msg: format!("basis index {x} out of range") })
}

impl AugmentedRing {
    /// Parses the sparse ring-spec JSON. Entries given for only one of
    /// `b_i·b_j`, `b_j·b_i` are mirrored; entries given for both must agree.
    pub fn from_json_str(name: impl Into<String>, text: &str) -> Result<Self, RingSpecError> {
        let spec: RingSpec = serde_json::from_str(text)?;
        let m = spec.basis.len();
        let mut explicit: BTreeMap<(usize, usize), BTreeMap<usize, BigInt>> = BTreeMap::new();
        for (index, quad) in spec.structure.iter().enumerate() {
            if quad.len() != 4 {
                return Err(RingSpecError::BadEntry {
                    index,
                    msg: format!("expected [i, j, k, c], got {} values", quad.len()),
                });
            }
            let i = index_from(&quad[0], index, m)?;
            let j = index_from(&quad[1], index, m)?;
            let k = index_from(&quad[2], index, m)?;
            let c = int_from_value(&quad[3]).map_err(|msg| RingSpecError::BadEntry { index, msg })?;
            *explicit.entry((i, j)).or_default().entry(k).or_insert_with(BigInt::zero) += c;
        }
        for v in explicit.values_mut() {
            v.retain(|_, c| !c.is_zero());
        }
        let mut entries = Vec::new();
        for (&(i, j), coeffs) in &explicit {
            if let Some(mirror) = explicit.get(&(j, i)) {
                if i < j && mirror != coeffs {
                    return Err(RingSpecError::ConflictingSymmetricEntries { i, j });
                }
            } else {
                entries.extend(coeffs.iter().map(|(&k, c)| (j, i, k, c.clone())));
            }
            entries.extend(coeffs.iter().map(|(&k, c)| (i, j, k, c.clone())));
        }
        let augmentation = spec
            .augmentation
            .iter()
            .enumerate()
            .map(|(index, v)| int_from_value(v).map_err(|msg| RingSpecError::BadAugmentation { index, msg }))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(AugmentedRing::from_entries(name, spec.basis, spec.identity, &entries, augmentation)?)
    }

    /// Emits the ring-spec JSON, listing each unordered product once (`i ≤ j`).
    /// Rings that are not commutative emit every ordered product instead.
    pub fn to_json_value(&self) -> Value {
        let m = self.dim();
        let commutative = (0..m).all(|i| (0..m).all(|j| self.basis_product(i, j) == self.basis_product(j, i)));
        let mut structure = Vec::new();
        for (i, j, k, c) in self.structure_entries() {
            if commutative && i > j {
                continue;
            }
            structure.push(vec![Value::from(i), Value::from(j), Value::from(k), int_to_value(&c)]);
        }
        let spec = RingSpec {
            basis: self.labels.clone(),
            identity: self.identity,
            structure,
            augmentation: self.augmentation.iter().map(int_to_value).collect(),
        };
        serde_json::to_value(spec).expect("ring spec serializes")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("ring spec serializes")
    }
}
