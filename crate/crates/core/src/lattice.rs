//! Exact integer matrix algebra over arbitrary-precision integers.
//!
//! Everything here works with row lattices: a matrix stands for the additive
//! span of its rows inside `Z^cols`. Hermite normal forms are row-style with
//! positive pivots and the entries above each pivot reduced into `[0, pivot)`,
//! which makes the basis of a [`Lattice`] canonical.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("vector {index} does not lie in the containing lattice")]
    NotASublattice { index: usize },
    #[error("ambient dimensions differ: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
}

/// Dense row-major matrix of big integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from explicit rows. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "row length does not match column count");
            data.extend(row);
        }
        IntMatrix { rows: n, cols, data }
    }

    pub fn from_i64_rows(cols: usize, rows: &[Vec<i64>]) -> Self {
        Self::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = BigInt::from(e);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "incompatible matrix product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
                a[(i, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.determinant().abs().is_one()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self[(r, j)]);
            self[(r, j)] = v;
        }
    }

    /// row[dst] -= q * row[src]
    fn sub_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let t = &self[(src, j)] * q;
            self[(dst, j)] -= t;
        }
    }

    /// col[dst] -= q * col[src]
    fn sub_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let t = &self[(i, src)] * q;
            self[(i, dst)] -= t;
        }
    }

    /// Replaces rows (a, b) by (x·a + y·b, z·a + w·b).
    fn combine_rows(&mut self, a: usize, b: usize, [x, y, z, w]: [&BigInt; 4]) {
        for j in 0..self.cols {
            let ra = &self[(a, j)];
            let rb = &self[(b, j)];
            let na = x * ra + y * rb;
            let nb = z * ra + w * rb;
            self[(a, j)] = na;
            self[(b, j)] = nb;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "IntMatrix{:?}",
            self.row_vecs().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>()
        )
    }
}

/// A sublattice of `Z^ambient_dim` stored by its canonical HNF basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    ambient_dim: usize,
    basis: IntMatrix,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn zero(ambient_dim: usize) -> Self {
        Lattice { ambient_dim, basis: IntMatrix::zeros(0, ambient_dim), pivots: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Lattice { ambient_dim, basis: IntMatrix::identity(ambient_dim), pivots: (0..ambient_dim).collect() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = &[BigInt]> + '_ {
        (0..self.rank()).map(move |i| self.basis.row(i))
    }

    /// Coordinates of `v` with respect to the basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.ambient_dim);
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for (i, &c) in self.pivots.iter().enumerate() {
            if rest[..c].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let (q, r) = rest[c].div_rem(&self.basis[(i, c)]);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (j, b) in self.basis.row(i).iter().enumerate().skip(c) {
                    rest[j] -= &q * b;
                }
            }
            coords.push(q);
        }
        rest.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        self.ambient_dim == other.ambient_dim && other.basis_vectors().all(|v| self.contains(v))
    }

    /// Product of the pivot entries. For two lattices with the same pivot
    /// columns the ratio of these values is the index of one in the other.
    pub fn pivot_product(&self) -> BigInt {
        self.pivots.iter().enumerate().map(|(i, &c)| self.basis[(i, c)].clone()).product()
    }

    /// Index `[self : sub]` read off the pivot entries of both canonical bases.
    /// Returns `None` unless the lattices have equal rank and the same pivot
    /// columns (i.e. span the same rational subspace) and `sub ⊆ self`.
    pub fn index_by_pivots(&self, sub: &Lattice) -> Option<BigInt> {
        if self.pivots != sub.pivots || !self.contains_lattice(sub) {
            return None;
        }
        Some(sub.pivot_product() / self.pivot_product())
    }
}

/// Invariant factors of a finitely generated abelian group `Z^free_rank ⊕ ⊕ Z/f_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct InvariantFactors {
    pub factors: Vec<BigInt>,
    pub free_rank: usize,
}

impl InvariantFactors {
    /// Reads invariant factors off an SNF diagonal. Unit entries are dropped
    /// and the zero entries (plus any missing diagonal positions up to `gens`)
    /// count towards the free rank.
    pub fn from_diagonal(diag: &[BigInt], gens: usize) -> Self {
        let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
        let factors = diag.iter().filter(|d| !d.is_zero() && !d.is_one()).cloned().collect();
        InvariantFactors { factors, free_rank: gens - nonzero }
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn torsion_order(&self) -> BigInt {
        self.factors.iter().product()
    }
}

fn extended_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    (e.gcd, e.x, e.y)
}

/// Row-style Hermite normal form with the unimodular transform.
///
/// Returns the canonical lattice spanned by the rows of `m` and a unimodular
/// `u` such that `u · m` is the HNF basis followed by zero rows.
pub fn hnf(m: &IntMatrix) -> (Lattice, IntMatrix) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        for i in r + 1..rows {
            if a[(i, c)].is_zero() {
                continue;
            }
            let (g, x, y) = extended_gcd(&a[(r, c)], &a[(i, c)]);
            let z = -(&a[(i, c)] / &g);
            let w = &a[(r, c)] / &g;
            a.combine_rows(r, i, [&x, &y, &z, &w]);
            u.combine_rows(r, i, [&x, &y, &z, &w]);
        }
        if a[(r, c)].is_zero() {
            continue;
        }
        if a[(r, c)].is_negative() {
            a.negate_row(r);
            u.negate_row(r);
        }
        for k in 0..r {
            let q = a[(k, c)].div_floor(&a[(r, c)]);
            a.sub_row_multiple(k, r, &q);
            u.sub_row_multiple(k, r, &q);
        }
        pivots.push(c);
        r += 1;
    }
    let basis = IntMatrix::from_rows(cols, (0..r).map(|i| a.row(i).to_vec()).collect());
    (Lattice { ambient_dim: cols, basis, pivots }, u)
}

/// Smith normal form `s = u · m · v` with `u`, `v` unimodular.
///
/// The diagonal of `s` is nonnegative, each entry divides the next, and zero
/// entries come last.
pub fn snf(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block goes to (t, t)
        let Some((pi, pj)) = min_abs_entry(&a, t, (t..rows).flat_map(|i| (t..cols).map(move |j| (i, j)))) else {
            break;
        };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[(i, t)].div_floor(&a[(t, t)]);
                a.sub_row_multiple(i, t, &q);
                u.sub_row_multiple(i, t, &q);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                let q = a[(t, j)].div_floor(&a[(t, t)]);
                a.sub_col_multiple(j, t, &q);
                v.sub_col_multiple(j, t, &q);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                let cross = (t + 1..rows).map(|i| (i, t)).chain((t + 1..cols).map(|j| (t, j)));
                if let Some((i, j)) = min_abs_entry(&a, t, cross) {
                    if a[(i, j)].abs() < a[(t, t)].abs() {
                        if i != t {
                            a.swap_rows(t, i);
                            u.swap_rows(t, i);
                        } else {
                            a.swap_cols(t, j);
                            v.swap_cols(t, j);
                        }
                    }
                }
                continue;
            }
            // pivot must divide the rest of the block
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&a[(t, t)])));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    a.sub_row_multiple(t, i, &-&one);
                    u.sub_row_multiple(t, i, &-&one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    (a, u, v)
}

fn min_abs_entry(a: &IntMatrix, _t: usize, positions: impl Iterator<Item = (usize, usize)>) -> Option<(usize, usize)> {
    positions.filter(|&p| !a[p].is_zero()).min_by(|&p, &q| a[p].magnitude().cmp(a[q].magnitude()))
}

/// Diagonal of an SNF matrix.
pub fn snf_diagonal(s: &IntMatrix) -> Vec<BigInt> {
    (0..s.rows().min(s.cols())).map(|i| s[(i, i)].clone()).collect()
}

/// Integer kernel `{x : m·x = 0}` as a canonical lattice in `Z^cols`.
pub fn kernel_basis(m: &IntMatrix) -> Lattice {
    let (h, u) = hnf(&m.transpose());
    let gens: Vec<Vec<BigInt>> = (h.rank()..u.rows()).map(|i| u.row(i).to_vec()).collect();
    lattice_from_generators(m.cols(), &gens)
}

/// Canonical basis of the additive span of `gens`.
///
/// Vectors are inserted one at a time into a kept-reduced echelon basis, so
/// entry sizes stay bounded by the final pivots instead of growing with the
/// generator count.
pub fn lattice_from_generators<V: AsRef<[BigInt]>>(ambient_dim: usize, gens: &[V]) -> Lattice {
    let mut builder = LatticeBuilder::new(ambient_dim);
    for g in gens {
        builder.insert(g.as_ref());
    }
    builder.finish()
}

/// Incremental HNF accumulator used by [`lattice_from_generators`].
#[derive(Debug, Clone)]
pub struct LatticeBuilder {
    ambient_dim: usize,
    // (pivot column, row) sorted by pivot column
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl LatticeBuilder {
    pub fn new(ambient_dim: usize) -> Self {
        LatticeBuilder { ambient_dim, rows: Vec::new() }
    }

    pub fn insert(&mut self, v: &[BigInt]) {
        assert_eq!(v.len(), self.ambient_dim, "generator length does not match ambient dimension");
        let mut v = v.to_vec();
        let mut changed = false;
        let mut idx = 0;
        loop {
            let Some(lead) = v.iter().position(|x| !x.is_zero()) else {
                break;
            };
            while idx < self.rows.len() && self.rows[idx].0 < lead {
                idx += 1;
            }
            if idx == self.rows.len() || self.rows[idx].0 > lead {
                if v[lead].is_negative() {
                    v.iter_mut().for_each(|x| *x = -std::mem::take(x));
                }
                self.rows.insert(idx, (lead, v));
                changed = true;
                break;
            }
            let b = &mut self.rows[idx].1;
            let (q, rem) = v[lead].div_rem(&b[lead]);
            if rem.is_zero() {
                for (x, y) in v.iter_mut().zip(b.iter()).skip(lead) {
                    *x -= &q * y;
                }
            } else {
                let (g, x, y) = extended_gcd(&b[lead], &v[lead]);
                let z = -(&v[lead] / &g);
                let w = &b[lead] / &g;
                for j in lead..self.ambient_dim {
                    let nb = &x * &b[j] + &y * &v[j];
                    let nv = &z * &b[j] + &w * &v[j];
                    b[j] = nb;
                    v[j] = nv;
                }
                if b[lead].is_negative() {
                    b.iter_mut().for_each(|x| *x = -std::mem::take(x));
                }
                changed = true;
            }
            idx += 1;
        }
        if changed {
            self.reduce();
        }
    }

    fn reduce(&mut self) {
        for i in 1..self.rows.len() {
            let (c, pivot_row) = {
                let (c, r) = &self.rows[i];
                (*c, r.clone())
            };
            for k in 0..i {
                let q = self.rows[k].1[c].div_floor(&pivot_row[c]);
                if !q.is_zero() {
                    for (x, y) in self.rows[k].1.iter_mut().zip(pivot_row.iter()).skip(c) {
                        *x -= &q * y;
                    }
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn finish(self) -> Lattice {
        let pivots = self.rows.iter().map(|(c, _)| *c).collect();
        let basis = IntMatrix::from_rows(self.ambient_dim, self.rows.into_iter().map(|(_, r)| r).collect());
        Lattice { ambient_dim: self.ambient_dim, basis, pivots }
    }
}

/// Invariant factors of `sup / sub`.
pub fn quotient_invariants(sup: &Lattice, sub: &Lattice) -> Result<InvariantFactors, LatticeError> {
    if sup.ambient_dim != sub.ambient_dim {
        return Err(LatticeError::DimensionMismatch { left: sup.ambient_dim, right: sub.ambient_dim });
    }
    let mut coeffs = Vec::with_capacity(sub.rank());
    for (index, v) in sub.basis_vectors().enumerate() {
        coeffs.push(sup.coordinates(v).ok_or(LatticeError::NotASublattice { index })?);
    }
    let c = IntMatrix::from_rows(sup.rank(), coeffs);
    let (s, _, _) = snf(&c);
    Ok(InvariantFactors::from_diagonal(&snf_diagonal(&s), sup.rank()))
}
