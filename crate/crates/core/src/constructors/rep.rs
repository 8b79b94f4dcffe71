use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::cayley::abelian_elements;
use super::{CayleyGroup, ConstructError};
use crate::abgroup::FinAbGroup;
use crate::augring::AugmentedRing;

fn element_label(prefix: &str, identity: &str, e: &[u64]) -> String {
    if e.iter().all(|&a| a == 0) {
        identity.to_string()
    } else if e.len() == 1 {
        format!("{prefix}^{}", e[0])
    } else {
        let parts: Vec<String> = e.iter().map(u64::to_string).collect();
        format!("{prefix}({})", parts.join(","))
    }
}

fn abelian_ring(g: &FinAbGroup, name: String, prefix: &str, identity: &str) -> AugmentedRing {
    let elements = abelian_elements(g);
    let m = elements.len();
    let index: HashMap<&Vec<u64>, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let moduli = g.invariant_factors();
    let mut entries = Vec::with_capacity(m * m);
    for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate() {
            let sum: Vec<u64> = a.iter().zip(b).zip(moduli).map(|((x, y), n)| (x + y) % n).collect();
            entries.push((i, j, index[&sum], BigInt::one()));
        }
    }
    let labels = elements.iter().map(|e| element_label(prefix, identity, e)).collect();
    AugmentedRing::from_entries(name, labels, 0, &entries, vec![BigInt::one(); m]).expect("well-formed group ring")
}

/// Integral group ring `ZG` with the group elements as basis and `ε(g) = 1`.
pub fn group_ring(g: &FinAbGroup) -> AugmentedRing {
    abelian_ring(g, format!("group-ring:{g}"), "g", "e")
}

/// Group ring of an abelian group given by its Cayley table; basis order
/// follows the table.
pub fn group_ring_of_table(g: &CayleyGroup) -> AugmentedRing {
    debug_assert!(g.is_abelian());
    let n = g.order();
    let entries: Vec<_> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j, g.mul(i, j), BigInt::one()))).collect();
    let labels = (0..n).map(|i| if i == 0 { "e".to_string() } else { format!("g{i}") }).collect();
    AugmentedRing::from_entries(format!("group-ring:table{n}"), labels, 0, &entries, vec![BigInt::one(); n])
        .expect("well-formed group ring")
}

/// Complex representation ring of an abelian group: the group ring of the
/// character group, identified with `G` through its invariant-factor
/// presentation. Every irreducible character has degree 1.
pub fn rep_ring_abelian(g: &FinAbGroup) -> AugmentedRing {
    abelian_ring(g, format!("rep:{g}"), "chi", "1")
}

/// Complex representation ring of the dihedral group of order `2m`.
///
/// Basis: the linear characters (`1, χ` for odd `m`; `1, χ, δ, δχ` for even
/// `m`) followed by the 2-dimensional `V_1 … V_{⌈m/2⌉−1}`.
pub fn rep_ring_dihedral(m: usize) -> Result<AugmentedRing, ConstructError> {
    if m < 3 {
        return Err(ConstructError::BadParameter(format!("dihedral rep ring needs m ≥ 3, got {m}")));
    }
    let even = m.is_multiple_of(2);
    let linear = if even { 4 } else { 2 };
    let two_dim = if even { m / 2 - 1 } else { (m - 1) / 2 };
    let dim = linear + two_dim;
    let v = |j: usize| linear + j - 1;
    // linear characters are indexed by bit masks: bit 0 = χ, bit 1 = δ
    let mut labels: Vec<String> = ["1", "chi", "delta", "delta_chi"][..linear].iter().map(|s| s.to_string()).collect();
    labels.extend((1..=two_dim).map(|j| format!("V{j}")));

    // V_t after folding t into 0..=m/2, expressed in the basis
    let fold = |t: usize| -> Vec<usize> {
        let t = t % m;
        let t = if 2 * t > m { m - t } else { t };
        if t == 0 {
            vec![0, 1]
        } else if even && 2 * t == m {
            vec![2, 3]
        } else {
            vec![v(t)]
        }
    };

    let mut products = vec![vec![vec![BigInt::zero(); dim]; dim]; dim];
    for a in 0..dim {
        for b in 0..dim {
            let out = &mut products[a][b];
            match (a < linear, b < linear) {
                (true, true) => out[a ^ b] += 1,
                (true, false) | (false, true) => {
                    let (lin, j) = if a < linear { (a, b - linear + 1) } else { (b, a - linear + 1) };
                    let target = if lin & 2 != 0 { m / 2 - j } else { j };
                    out[v(target)] += 1;
                }
                (false, false) => {
                    let (j, k) = (a - linear + 1, b - linear + 1);
                    for idx in fold(j + k).into_iter().chain(fold(j.abs_diff(k))) {
                        out[idx] += 1;
                    }
                }
            }
        }
    }
    let augmentation = (0..dim).map(|i| BigInt::from(if i < linear { 1 } else { 2 })).collect();
    Ok(AugmentedRing::from_products(format!("rep:D{m}"), labels, 0, products, augmentation)?)
}
