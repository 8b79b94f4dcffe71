//! Commutative augmented rings given by structure constants, their
//! augmentation ideals, ideal powers and consecutive quotients `I^n / I^{n+1}`.

mod json;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abgroup::{AbGroupError, FinAbGroup};
use crate::lattice::{kernel_basis, quotient_invariants, IntMatrix, Lattice, LatticeBuilder, LatticeError};

pub use json::RingSpecError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("basis must be nonempty")]
    EmptyBasis,
    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("basis index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("rank of I^{n} is {rank}, below the rank {expected} of I")]
    RankDrop { n: usize, rank: usize, expected: usize },
    #[error("I^{n}/I^{next} has free rank {free_rank}; the torsion axiom fails", next = n + 1)]
    InfiniteQuotient { n: usize, free_rank: usize },
    #[error("quotient index must be at least 1")]
    ZeroIndex,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Group(#[from] AbGroupError),
}

/// A ring with a distinguished basis `b_0 … b_{m-1}`, structure constants
/// `b_i · b_j = Σ_k c_ijk b_k`, an identity element and an augmentation `ε`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentedRing {
    name: String,
    labels: Vec<String>,
    identity: usize,
    // products[i * m + j]: nonzero (k, c_ijk), ascending in k
    products: Vec<Vec<(usize, BigInt)>>,
    augmentation: Vec<BigInt>,
}

impl AugmentedRing {
    /// Builds a ring from dense product vectors: `products[i][j]` is `b_i · b_j`.
    pub fn from_products(
        name: impl Into<String>,
        labels: Vec<String>,
        identity: usize,
        products: Vec<Vec<Vec<BigInt>>>,
        augmentation: Vec<BigInt>,
    ) -> Result<Self, RingError> {
        let m = labels.len();
        check_shape(m, identity, &augmentation)?;
        if products.len() != m {
            return Err(RingError::DimensionMismatch { expected: m, got: products.len() });
        }
        let mut sparse = Vec::with_capacity(m * m);
        for row in products {
            if row.len() != m {
                return Err(RingError::DimensionMismatch { expected: m, got: row.len() });
            }
            for v in row {
                if v.len() != m {
                    return Err(RingError::DimensionMismatch { expected: m, got: v.len() });
                }
                sparse.push(v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect());
            }
        }
        Ok(AugmentedRing { name: name.into(), labels, identity, products: sparse, augmentation })
    }

    /// Builds a ring from sparse quadruples `(i, j, k, c)` meaning `b_i · b_j += c · b_k`.
    /// No symmetric completion happens here.
    pub fn from_entries(
        name: impl Into<String>,
        labels: Vec<String>,
        identity: usize,
        entries: &[(usize, usize, usize, BigInt)],
        augmentation: Vec<BigInt>,
    ) -> Result<Self, RingError> {
        let m = labels.len();
        check_shape(m, identity, &augmentation)?;
        let mut dense = vec![vec![vec![BigInt::zero(); m]; m]; m];
        for (i, j, k, c) in entries {
            for &idx in [i, j, k] {
                if idx >= m {
                    return Err(RingError::IndexOutOfRange(idx));
                }
            }
            dense[*i][*j][*k] += c;
        }
        Self::from_products(name, labels, identity, dense, augmentation)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    pub fn augmentation(&self) -> &[BigInt] {
        &self.augmentation
    }

    pub fn identity_vector(&self) -> Vec<BigInt> {
        unit_vector(self.dim(), self.identity)
    }

    /// Nonzero structure constants of `b_i · b_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, BigInt)] {
        &self.products[i * self.dim() + j]
    }

    pub fn basis_product_vector(&self, i: usize, j: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.dim()];
        for (k, c) in self.basis_product(i, j) {
            v[*k] = c.clone();
        }
        v
    }

    /// All nonzero quadruples `(i, j, k, c)` in lexicographic order.
    pub fn structure_entries(&self) -> Vec<(usize, usize, usize, BigInt)> {
        let m = self.dim();
        let mut out = Vec::new();
        for i in 0..m {
            for j in 0..m {
                for (k, c) in self.basis_product(i, j) {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    /// True when both rings have the same dimension, identity, augmentation
    /// and structure constants (labels and names are ignored).
    pub fn same_structure(&self, other: &AugmentedRing) -> bool {
        self.identity == other.identity && self.augmentation == other.augmentation && self.products == other.products
    }

    pub fn multiply(&self, x: &[BigInt], y: &[BigInt]) -> Result<Vec<BigInt>, RingError> {
        let m = self.dim();
        for v in [x, y] {
            if v.len() != m {
                return Err(RingError::DimensionMismatch { expected: m, got: v.len() });
            }
        }
        let mut out = vec![BigInt::zero(); m];
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let coef = xi * yj;
                for (k, c) in self.basis_product(i, j) {
                    out[*k] += &coef * c;
                }
            }
        }
        Ok(out)
    }

    pub fn augment(&self, x: &[BigInt]) -> Result<BigInt, RingError> {
        if x.len() != self.dim() {
            return Err(RingError::DimensionMismatch { expected: self.dim(), got: x.len() });
        }
        Ok(x.iter().zip(&self.augmentation).map(|(a, e)| a * e).sum())
    }

    fn product_sparse(&self, x: &[(usize, BigInt)], j: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.dim()];
        for (i, xi) in x {
            for (k, c) in self.basis_product(*i, j) {
                out[*k] += xi * c;
            }
        }
        out
    }

    /// Checks every ring and augmentation axiom. `seed` drives an extra
    /// randomized check of `ε(xy) = ε(x)ε(y)` on non-basis elements.
    pub fn validate_with_seed(&self, seed: u64) -> ValidationReport {
        let m = self.dim();
        let mut checks = Vec::new();

        let comm = (0..m)
            .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
            .find(|&(i, j)| self.basis_product(i, j) != self.basis_product(j, i));
        checks.push(Check::from_failure(
            CheckKind::Commutativity,
            comm.map(|(i, j)| format!("{0}·{1} ≠ {1}·{0}", self.labels[i], self.labels[j])),
        ));

        let mut assoc = None;
        'outer: for i in 0..m {
            for j in 0..m {
                let ij = self.basis_product(i, j);
                for k in 0..m {
                    let left = self.product_sparse(ij, k);
                    let jk = self.basis_product(j, k);
                    let mut right = vec![BigInt::zero(); m];
                    for (l, c) in jk {
                        for (t, d) in self.basis_product(i, *l) {
                            right[*t] += c * d;
                        }
                    }
                    if left != right {
                        assoc = Some(format!(
                            "({}·{})·{} ≠ {}·({}·{})",
                            self.labels[i],
                            self.labels[j],
                            self.labels[k],
                            self.labels[i],
                            self.labels[j],
                            self.labels[k]
                        ));
                        break 'outer;
                    }
                }
            }
        }
        checks.push(Check::from_failure(CheckKind::Associativity, assoc));

        let e = self.identity;
        let unit = (0..m).find(|&i| {
            let want = [(i, BigInt::one())];
            self.basis_product(e, i) != want || self.basis_product(i, e) != want
        });
        checks.push(Check::from_failure(
            CheckKind::Identity,
            unit.map(|i| format!("{}·{} ≠ {}", self.labels[e], self.labels[i], self.labels[i])),
        ));

        checks.push(Check::from_failure(
            CheckKind::AugmentationIdentity,
            (!self.augmentation[e].is_one()).then(|| format!("ε({}) = {}", self.labels[e], self.augmentation[e])),
        ));

        let mut mult = (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).find_map(|(i, j)| {
            let lhs: BigInt = self.basis_product(i, j).iter().map(|(k, c)| c * &self.augmentation[*k]).sum();
            let rhs = &self.augmentation[i] * &self.augmentation[j];
            (lhs != rhs).then(|| format!("ε({}·{}) = {lhs} but ε·ε = {rhs}", self.labels[i], self.labels[j]))
        });
        if mult.is_none() {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..32 {
                let x: Vec<BigInt> = (0..m).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect();
                let y: Vec<BigInt> = (0..m).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect();
                let xy = self.multiply(&x, &y).expect("dimensions match");
                let lhs = self.augment(&xy).expect("dimensions match");
                let rhs = self.augment(&x).expect("dimensions match") * self.augment(&y).expect("dimensions match");
                if lhs != rhs {
                    mult = Some(format!("random pair with seed {seed}: ε(xy) = {lhs}, ε(x)ε(y) = {rhs}"));
                    break;
                }
            }
        }
        checks.push(Check::from_failure(CheckKind::AugmentationMultiplicative, mult));

        let ideal = self.augmentation_ideal();
        let square = self.next_power(&ideal, &ideal);
        let torsion = match quotient_invariants(&ideal, &square) {
            Ok(q) if q.free_rank == 0 => None,
            Ok(q) => Some(format!("I/I² has free rank {}", q.free_rank)),
            Err(err) => Some(format!("I² is not contained in I: {err}")),
        };
        checks.push(Check::from_failure(CheckKind::Torsion, torsion));

        ValidationReport { checks }
    }

    pub fn validate(&self) -> ValidationReport {
        self.validate_with_seed(0)
    }

    /// `I = ker ε`.
    pub fn augmentation_ideal(&self) -> Lattice {
        let eps = IntMatrix::from_rows(self.dim(), vec![self.augmentation.clone()]);
        kernel_basis(&eps)
    }

    fn next_power(&self, ideal: &Lattice, power: &Lattice) -> Lattice {
        let mut builder = LatticeBuilder::new(self.dim());
        let sparse: Vec<Vec<(usize, BigInt)>> = ideal
            .basis_vectors()
            .map(|x| x.iter().cloned().enumerate().filter(|(_, c)| !c.is_zero()).collect())
            .collect();
        for y in power.basis_vectors() {
            for x in &sparse {
                let mut prod = vec![BigInt::zero(); self.dim()];
                for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    for (i, xi) in x {
                        let coef = xi * yj;
                        for (k, c) in self.basis_product(*i, j) {
                            prod[*k] += &coef * c;
                        }
                    }
                }
                builder.insert(&prod);
            }
        }
        builder.finish()
    }

    /// `I^1, …, I^{max_n + 1}`, each computed as the span of `I · I^n`.
    pub fn ideal_powers(&self, max_n: usize) -> Result<Vec<Lattice>, RingError> {
        let ideal = self.augmentation_ideal();
        let r = ideal.rank();
        let mut powers = Vec::with_capacity(max_n + 1);
        powers.push(ideal.clone());
        for n in 2..=max_n + 1 {
            let next = self.next_power(&ideal, powers.last().expect("nonempty"));
            if next.rank() < r {
                return Err(RingError::RankDrop { n, rank: next.rank(), expected: r });
            }
            powers.push(next);
        }
        Ok(powers)
    }

    pub fn quotient_group(&self, n: usize) -> Result<QuotientResult, RingError> {
        if n == 0 {
            return Err(RingError::ZeroIndex);
        }
        let powers = self.ideal_powers(n)?;
        quotient_from_powers(n, &powers[n - 1], &powers[n])
    }

    /// Minimal exponent of `I/I²`: the largest invariant factor of `Q_1`.
    pub fn torsion_exponent_d(&self) -> Result<u64, RingError> {
        Ok(self.quotient_group(1)?.group.exponent())
    }

    /// Free rank of `I`, which is `m − 1` because `ε(1) = 1` makes `ε` onto.
    pub fn free_rank_r(&self) -> usize {
        self.dim() - 1
    }
}

fn check_shape(m: usize, identity: usize, augmentation: &[BigInt]) -> Result<(), RingError> {
    if m == 0 {
        return Err(RingError::EmptyBasis);
    }
    if identity >= m {
        return Err(RingError::IndexOutOfRange(identity));
    }
    if augmentation.len() != m {
        return Err(RingError::DimensionMismatch { expected: m, got: augmentation.len() });
    }
    Ok(())
}

pub(crate) fn unit_vector(m: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); m];
    v[i] = BigInt::one();
    v
}

/// `Q_n = I^n / I^{n+1}` from two consecutive powers.
pub fn quotient_from_powers(n: usize, power: &Lattice, next: &Lattice) -> Result<QuotientResult, RingError> {
    let inv = quotient_invariants(power, next)?;
    if inv.free_rank != 0 {
        return Err(RingError::InfiniteQuotient { n, free_rank: inv.free_rank });
    }
    let group = FinAbGroup::from_invariant_factors(&inv)?;
    Ok(QuotientResult { n, order: group.order(), group, ideal_rank: power.rank() })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientResult {
    pub n: usize,
    pub group: FinAbGroup,
    #[serde(with = "crate::bigjson::biguint")]
    pub order: BigUint,
    pub ideal_rank: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckKind {
    Commutativity,
    Associativity,
    Identity,
    AugmentationIdentity,
    AugmentationMultiplicative,
    Torsion,
}

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Commutativity => "commutativity",
            CheckKind::Associativity => "associativity",
            CheckKind::Identity => "identity",
            CheckKind::AugmentationIdentity => "augmentation_identity",
            CheckKind::AugmentationMultiplicative => "augmentation_multiplicative",
            CheckKind::Torsion => "torsion",
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub kind: CheckKind,
    pub passed: bool,
    pub detail: Option<String>,
}

impl Check {
    fn from_failure(kind: CheckKind, failure: Option<String>) -> Self {
        Check { kind, passed: failure.is_none(), detail: failure }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, kind: CheckKind) -> Option<&Check> {
        self.checks.iter().find(|c| c.kind == kind)
    }
}
