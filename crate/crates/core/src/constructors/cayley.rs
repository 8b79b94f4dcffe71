use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::ConstructError;
use crate::abgroup::FinAbGroup;

/// A finite group given by its multiplication table; element 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyGroup {
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct CayleyJson {
    order: usize,
    table: Vec<Vec<usize>>,
}

impl CayleyGroup {
    /// Checks the table is a Latin square with identity 0 and associative.
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self, ConstructError> {
        let n = table.len();
        if n == 0 {
            return Err(ConstructError::InvalidTable("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(ConstructError::InvalidTable(format!("row {i} has length {}", row.len())));
            }
            if row[0] != i || table[0][i] != i {
                return Err(ConstructError::InvalidTable(format!("element 0 is not an identity at {i}")));
            }
        }
        for i in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for j in 0..n {
                for (seen, v) in [(&mut row_seen, table[i][j]), (&mut col_seen, table[j][i])] {
                    if v >= n || seen[v] {
                        return Err(ConstructError::InvalidTable(format!("row/column {i} is not a permutation")));
                    }
                    seen[v] = true;
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(ConstructError::InvalidTable(format!("not associative on ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let inverses = (0..n).map(|a| table[a].iter().position(|&x| x == 0).expect("latin square")).collect();
        Ok(CayleyGroup { table, inverses })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a + 1..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    pub fn trivial() -> Self {
        CayleyGroup { table: vec![vec![0]], inverses: vec![0] }
    }

    /// Direct product of cyclic groups with elements in mixed-radix order
    /// (first invariant factor most significant), matching the group-ring basis.
    pub fn from_abelian(g: &FinAbGroup) -> Self {
        let elements = abelian_elements(g);
        let index: HashMap<&Vec<u64>, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let moduli = g.invariant_factors();
        let table = elements
            .iter()
            .map(|a| {
                elements
                    .iter()
                    .map(|b| {
                        let sum: Vec<u64> = a.iter().zip(b).zip(moduli).map(|((x, y), m)| (x + y) % m).collect();
                        index[&sum]
                    })
                    .collect()
            })
            .collect();
        Self::new(table).expect("direct product of cyclic groups is a group")
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new(table).expect("cyclic group table")
    }

    /// Closure of a set of permutations of `0..degree`, elements in BFS order
    /// from the identity. Products compose right to left: `(ab)(x) = a(b(x))`.
    pub fn from_permutations(degree: usize, generators: &[Vec<usize>]) -> Self {
        let id: Vec<usize> = (0..degree).collect();
        let compose = |a: &[usize], b: &[usize]| -> Vec<usize> { b.iter().map(|&x| a[x]).collect() };
        let mut elements = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head].clone();
            head += 1;
            for g in generators {
                let y = compose(&x, g);
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                }
            }
        }
        let table = elements.iter().map(|a| elements.iter().map(|b| index[&compose(a, b)]).collect()).collect();
        Self::new(table).expect("permutation group table")
    }

    /// Dihedral group of order `2m` acting on the vertices of an `m`-gon.
    pub fn dihedral(m: usize) -> Self {
        let rotation: Vec<usize> = (0..m).map(|i| (i + 1) % m).collect();
        let reflection: Vec<usize> = (0..m).map(|i| (m - i) % m).collect();
        Self::from_permutations(m, &[rotation, reflection])
    }

    /// Symmetric group on `n` letters, generated by `(0 1)` and `(0 1 … n−1)`.
    pub fn symmetric(n: usize) -> Self {
        if n <= 1 {
            return Self::trivial();
        }
        let mut transposition: Vec<usize> = (0..n).collect();
        transposition.swap(0, 1);
        let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        Self::from_permutations(n, &[transposition, cycle])
    }

    pub fn from_json_str(text: &str) -> Result<Self, ConstructError> {
        let parsed: CayleyJson = serde_json::from_str(text).map_err(|e| ConstructError::Json(e.to_string()))?;
        if parsed.table.len() != parsed.order {
            return Err(ConstructError::InvalidTable(format!(
                "order {} but table has {} rows",
                parsed.order,
                parsed.table.len()
            )));
        }
        Self::new(parsed.table)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&CayleyJson { order: self.order(), table: self.table.clone() }).expect("table serializes")
    }
}

/// Elements of `Z/f_1 × … × Z/f_k` as residue tuples in mixed-radix order.
pub fn abelian_elements(g: &FinAbGroup) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for &f in g.invariant_factors() {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..f).map(move |a| {
                    let mut v = prefix.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    out
}
