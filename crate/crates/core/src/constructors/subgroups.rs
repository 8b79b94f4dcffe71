use std::collections::{BTreeMap, HashMap};

use super::{CayleyGroup, ConstructError};

/// Default bound on the group order accepted by subgroup enumeration.
pub const DEFAULT_MAX_ORDER: usize = 64;

/// One conjugacy class of subgroups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupClass {
    /// Lexicographically smallest sorted element list among the conjugates.
    pub representative: Vec<usize>,
    pub conjugates: usize,
}

impl SubgroupClass {
    pub fn order(&self) -> usize {
        self.representative.len()
    }
}

/// Conjugacy classes of subgroups ordered by (order, representative).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupClasses {
    pub classes: Vec<SubgroupClass>,
}

impl SubgroupClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn orders(&self) -> Vec<usize> {
        self.classes.iter().map(SubgroupClass::order).collect()
    }

    pub fn total_subgroups(&self) -> usize {
        self.classes.iter().map(|c| c.conjugates).sum()
    }

    /// Short labels `1`, `H1`, …, `G` in class order.
    pub fn labels(&self) -> Vec<String> {
        let last = self.classes.len() - 1;
        (0..self.classes.len())
            .map(|i| match i {
                0 => "1".to_string(),
                i if i == last => "G".to_string(),
                i => format!("H{i}"),
            })
            .collect()
    }
}

/// Smallest subgroup containing `gens`, as a sorted element list.
pub fn closure(g: &CayleyGroup, gens: &[usize]) -> Vec<usize> {
    let n = g.order();
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = vec![0];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for &s in gens {
            let y = g.mul(x, s);
            if !seen[y] {
                seen[y] = true;
                queue.push(y);
            }
        }
    }
    queue.sort_unstable();
    queue
}

fn conjugate(g: &CayleyGroup, h: &[usize], x: usize) -> Vec<usize> {
    let xi = g.inverse(x);
    let mut out: Vec<usize> = h.iter().map(|&a| g.mul(g.mul(x, a), xi)).collect();
    out.sort_unstable();
    out
}

/// Every subgroup, found by joining cyclic subgroups until nothing new appears.
pub fn all_subgroups(g: &CayleyGroup) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut cyclic: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut found: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for a in 0..n {
        let c = closure(g, &[a]);
        if !found.contains_key(&c) {
            found.insert(c.clone(), vec![a]);
            cyclic.push((a, c));
        }
    }
    let mut frontier: Vec<Vec<usize>> = found.keys().cloned().collect();
    frontier.sort();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for h in &frontier {
            let gens = found[h].clone();
            for (a, c) in &cyclic {
                if h.binary_search(a).is_ok() || c.len() == 1 {
                    continue;
                }
                let mut joined_gens = gens.clone();
                joined_gens.push(*a);
                let joined = closure(g, &joined_gens);
                if !found.contains_key(&joined) {
                    found.insert(joined.clone(), joined_gens);
                    next.push(joined);
                }
            }
        }
        next.sort();
        frontier = next;
    }
    let mut all: Vec<Vec<usize>> = found.into_keys().collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    all
}

pub fn enumerate_subgroups(g: &CayleyGroup, max_order: usize) -> Result<SubgroupClasses, ConstructError> {
    if g.order() > max_order {
        return Err(ConstructError::TooLarge { order: g.order(), limit: max_order });
    }
    let mut classes: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
    let mut assigned: HashMap<Vec<usize>, ()> = HashMap::new();
    for h in all_subgroups(g) {
        if assigned.contains_key(&h) {
            continue;
        }
        let mut conjugates: Vec<Vec<usize>> = (0..g.order()).map(|x| conjugate(g, &h, x)).collect();
        conjugates.sort();
        conjugates.dedup();
        let rep = conjugates[0].clone();
        let count = conjugates.len();
        for c in conjugates {
            assigned.insert(c, ());
        }
        classes.insert((rep.len(), rep), count);
    }
    Ok(SubgroupClasses {
        classes: classes
            .into_iter()
            .map(|((_, representative), conjugates)| SubgroupClass { representative, conjugates })
            .collect(),
    })
}

/// `marks[H][K]` = number of cosets `xH` fixed by every element of `K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarksMatrix {
    pub labels: Vec<String>,
    pub marks: Vec<Vec<u64>>,
}

impl MarksMatrix {
    pub fn size(&self) -> usize {
        self.marks.len()
    }

    pub fn get(&self, h: usize, k: usize) -> u64 {
        self.marks[h][k]
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.size()).all(|h| (h + 1..self.size()).all(|k| self.marks[h][k] == 0))
    }
}

pub fn table_of_marks(g: &CayleyGroup, classes: &SubgroupClasses) -> MarksMatrix {
    let n = g.order();
    let mut marks = Vec::with_capacity(classes.len());
    for hc in &classes.classes {
        let h = &hc.representative;
        let mut in_h = vec![false; n];
        for &a in h {
            in_h[a] = true;
        }
        // one representative per left coset xH
        let mut covered = vec![false; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if covered[x] {
                continue;
            }
            reps.push(x);
            for &a in h {
                covered[g.mul(x, a)] = true;
            }
        }
        let row = classes
            .classes
            .iter()
            .map(|kc| {
                reps.iter()
                    .filter(|&&x| {
                        let xi = g.inverse(x);
                        kc.representative.iter().all(|&k| in_h[g.mul(g.mul(xi, k), x)])
                    })
                    .count() as u64
            })
            .collect();
        marks.push(row);
    }
    MarksMatrix { labels: classes.labels(), marks }
}
