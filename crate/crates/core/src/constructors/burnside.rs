use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::subgroups::{enumerate_subgroups, table_of_marks, MarksMatrix, SubgroupClasses};
use super::{CayleyGroup, ConstructError};
use crate::augring::AugmentedRing;

/// Coordinates `c` with `Σ_J c_J · marks[J] = target`, solved from the last
/// class down since `marks[J][K] = 0` whenever class `K` comes after `J`.
pub fn solve_marks(marks: &MarksMatrix, target: &[BigInt]) -> Result<Vec<BigInt>, ConstructError> {
    let n = marks.size();
    let mut coords = vec![BigInt::zero(); n];
    for k in (0..n).rev() {
        let mut rest = target[k].clone();
        for j in k + 1..n {
            rest -= &coords[j] * BigInt::from(marks.get(j, k));
        }
        let (q, r) = rest.div_rem(&BigInt::from(marks.get(k, k)));
        if !r.is_zero() {
            return Err(ConstructError::NonIntegralStructure { class: k });
        }
        coords[k] = q;
    }
    Ok(coords)
}

/// Burnside ring Ω_G with basis the transitive G-sets `[G/H]`, one per
/// conjugacy class of subgroups, multiplied through the marks embedding.
pub fn burnside_ring(g: &CayleyGroup, max_order: usize) -> Result<AugmentedRing, ConstructError> {
    let classes = enumerate_subgroups(g, max_order)?;
    let marks = table_of_marks(g, &classes);
    burnside_from_marks(&classes, &marks)
}

pub fn burnside_from_marks(classes: &SubgroupClasses, marks: &MarksMatrix) -> Result<AugmentedRing, ConstructError> {
    let n = marks.size();
    let mut products = vec![vec![Vec::new(); n]; n];
    for h in 0..n {
        for k in h..n {
            let pointwise: Vec<BigInt> = (0..n).map(|t| BigInt::from(marks.get(h, t) * marks.get(k, t))).collect();
            let coords = solve_marks(marks, &pointwise)?;
            products[h][k] = coords.clone();
            products[k][h] = coords;
        }
    }
    let labels = classes.labels().into_iter().map(|l| format!("[G/{l}]")).collect();
    let augmentation = (0..n).map(|h| BigInt::from(marks.get(h, 0))).collect();
    Ok(AugmentedRing::from_products("burnside", labels, n - 1, products, augmentation)?)
}
