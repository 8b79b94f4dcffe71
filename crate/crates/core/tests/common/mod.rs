#![allow(dead_code)]

use std::f64::consts::PI;

use augq::abgroup::abelian_groups_of_order;
use augq::constructors::{build_ring, parse_group_spec, Family};
use augq::lattice::IntMatrix;
use augq::{AugmentedRing, FinAbGroup};
use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn abelian_up_to(n: u64) -> Vec<FinAbGroup> {
    (1..=n).flat_map(abelian_groups_of_order).collect()
}

/// Group rings of abelian `|G| ≤ 16`, Burnside rings of the named groups of
/// order ≤ 12 and the dihedral representation rings for `3 ≤ m ≤ 8`.
pub fn corpus() -> Vec<AugmentedRing> {
    let mut rings = Vec::new();
    for g in abelian_up_to(16) {
        rings.push(augq::constructors::group_ring(&g));
    }
    let mut named: Vec<String> = abelian_up_to(12).iter().map(|g| g.to_string()).collect();
    named.extend(["D3", "D4", "D5", "D6", "S3"].map(String::from));
    for spec in &named {
        let g = parse_group_spec(spec).unwrap();
        rings.push(build_ring(Family::Burnside, &g, 64).unwrap());
    }
    for m in 3..=8 {
        rings.push(augq::constructors::rep_ring_dihedral(m).unwrap());
    }
    rings
}

/// Characters of the dihedral group of order `2m` on `r^k` then `s r^k`,
/// ordered like the basis of `rep_ring_dihedral(m)`.
pub fn dihedral_characters(m: usize) -> Vec<Vec<f64>> {
    let even = m.is_multiple_of(2);
    let sign = |k: usize| if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut chars: Vec<Vec<f64>> = vec![vec![1.0; 2 * m], (0..2 * m).map(|x| if x < m { 1.0 } else { -1.0 }).collect()];
    if even {
        chars.push((0..2 * m).map(|x| sign(x % m)).collect());
        chars.push((0..2 * m).map(|x| if x < m { sign(x) } else { -sign(x - m) }).collect());
    }
    let two_dim = if even { m / 2 - 1 } else { (m - 1) / 2 };
    for j in 1..=two_dim {
        chars.push(
            (0..2 * m).map(|x| if x < m { 2.0 * (2.0 * PI * (j * x) as f64 / m as f64).cos() } else { 0.0 }).collect(),
        );
    }
    chars
}

/// Largest distance from an integer over all `⟨χ_a χ_b, χ_c⟩`, and whether
/// the rounded values equal the ring's structure constants.
pub fn dihedral_fusion_check(m: usize) -> (f64, bool) {
    let ring = augq::constructors::rep_ring_dihedral(m).unwrap();
    let chars = dihedral_characters(m);
    let mut worst = 0.0f64;
    let mut agree = chars.len() == ring.dim();
    for a in 0..chars.len() {
        for b in 0..chars.len() {
            let got = ring.basis_product_vector(a, b);
            for (c, coeff) in got.iter().enumerate() {
                let value = chars[a].iter().zip(&chars[b]).zip(&chars[c]).map(|((x, y), z)| x * y * z).sum::<f64>()
                    / (2 * m) as f64;
                worst = worst.max((value - value.round()).abs());
                agree &= BigInt::from(value.round() as i64) == *coeff;
            }
        }
    }
    (worst, agree)
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data = (0..rows).map(|_| (0..cols).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect()).collect();
    IntMatrix::from_rows(cols, data)
}

/// Product of random elementary matrices: swaps, sign flips and `row_i += k row_j`.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    let mut rows: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect()).collect();
    for _ in 0..3 * n + 2 {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        match rng.gen_range(0..3) {
            0 => rows.swap(i, j),
            1 => rows[i].iter_mut().for_each(|x| *x = -&*x),
            _ if i != j => {
                let k = BigInt::from(rng.gen_range(-3i64..=3));
                let src = rows[j].clone();
                for (x, y) in rows[i].iter_mut().zip(&src) {
                    *x += &k * y;
                }
            }
            _ => {}
        }
    }
    IntMatrix::from_rows(n, rows)
}
