//! Integer matrices and Smith normal form.
//!
//! Two routes are provided. [`smith_normal_form`] works on a sparse row
//! representation and returns the divisor chain only; it is what the
//! cohomology code uses on coboundary matrices. The dense
//! [`smith_normal_form_with_transforms`] also returns unimodular `L`, `R`
//! with `L * m * R = diag(divisors)`.
//!
//! Both select pivots by smallest absolute value, ties broken by the lowest
//! `(row, col)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.iter().flatten().map(|&v| BigInt::from(v)).collect(),
        }
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[BigInt]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate().take(rows.min(cols)) {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += q * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(dst, j) + q * self.get(src, j);
            self.set(dst, j, v);
        }
    }

    /// col[dst] += q * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, dst) + q * self.get(i, src);
            self.set(i, dst, v);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.get(r, j);
            self.set(r, j, v);
        }
    }
}

/// Column-major sparse integer matrix with small entries. Coboundary
/// matrices are stored this way.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseIntMatrix {
    pub rows: usize,
    pub columns: Vec<Vec<(usize, i64)>>,
}

impl SparseIntMatrix {
    pub fn new(rows: usize, columns: Vec<Vec<(usize, i64)>>) -> Self {
        debug_assert!(columns.iter().flatten().all(|(i, _)| *i < rows));
        SparseIntMatrix { rows, columns }
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols());
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                m.set(*i, j, BigInt::from(*v));
            }
        }
        m
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// `d_1 | d_2 | ...`, padded with zeros to `min(rows, cols)`.
    pub divisors: Vec<BigInt>,
    pub rank: usize,
    pub left: Option<IntMatrix>,
    pub right: Option<IntMatrix>,
}

impl SmithForm {
    /// Nonzero divisors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.divisors
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .cloned()
            .collect()
    }
}

/// Divisor chain of an integer matrix.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); m.rows()];
    for (i, row) in rows.iter_mut().enumerate() {
        for j in 0..m.cols() {
            if !m.get(i, j).is_zero() {
                row.insert(j, m.get(i, j).clone());
            }
        }
    }
    sparse_smith(rows, m.rows(), m.cols())
}

/// Divisor chain of a sparse integer matrix.
pub fn smith_normal_form_sparse(m: &SparseIntMatrix) -> SmithForm {
    let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); m.rows];
    for (j, col) in m.columns.iter().enumerate() {
        for (i, v) in col {
            if *v != 0 {
                rows[*i].insert(j, BigInt::from(*v));
            }
        }
    }
    sparse_smith(rows, m.rows, m.cols())
}

fn sparse_smith(mut rows: Vec<BTreeMap<usize, BigInt>>, nrows: usize, ncols: usize) -> SmithForm {
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    let mut active: BTreeSet<usize> = BTreeSet::new();
    for (i, row) in rows.iter().enumerate() {
        for j in row.keys() {
            col_rows[*j].insert(i);
        }
        if !row.is_empty() {
            active.insert(i);
        }
    }

    let mut diagonal: Vec<BigInt> = Vec::new();
    while let Some((r, c)) = select_pivot(&rows, &active) {
        let a = rows[r][&c].clone();
        // clear column c using row operations
        let others: Vec<usize> = col_rows[c].iter().copied().filter(|&i| i != r).collect();
        let mut dirty = false;
        for i in others {
            let b = rows[i][&c].clone();
            let q = b.div_floor(&a);
            if !q.is_zero() {
                let pivot_row: Vec<(usize, BigInt)> = rows[r].iter().map(|(k, v)| (*k, v.clone())).collect();
                for (j, v) in pivot_row {
                    let entry = rows[i].entry(j).or_insert_with(BigInt::zero);
                    *entry -= &q * v;
                    if entry.is_zero() {
                        rows[i].remove(&j);
                        col_rows[j].remove(&i);
                    } else {
                        col_rows[j].insert(i);
                    }
                }
            }
            if rows[i].contains_key(&c) {
                dirty = true;
            }
            if rows[i].is_empty() {
                active.remove(&i);
            }
        }
        if dirty {
            continue;
        }
        // column c now holds only the pivot, so column operations touch row r alone
        let row_entries: Vec<(usize, BigInt)> = rows[r]
            .iter()
            .filter(|(j, _)| **j != c)
            .map(|(j, v)| (*j, v.clone()))
            .collect();
        for (j, b) in row_entries {
            let rem = b.mod_floor(&a);
            if rem.is_zero() {
                rows[r].remove(&j);
                col_rows[j].remove(&r);
            } else {
                rows[r].insert(j, rem);
                dirty = true;
            }
        }
        if dirty {
            continue;
        }
        diagonal.push(a.abs());
        rows[r].clear();
        col_rows[c].clear();
        active.remove(&r);
    }

    let divisors = normalize_diagonal(diagonal, nrows.min(ncols));
    let rank = divisors.iter().filter(|d| !d.is_zero()).count();
    SmithForm {
        divisors,
        rank,
        left: None,
        right: None,
    }
}

fn select_pivot(rows: &[BTreeMap<usize, BigInt>], active: &BTreeSet<usize>) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for &i in active {
        for (j, v) in &rows[i] {
            let abs = v.abs();
            if abs.is_one() {
                return Some((i, *j));
            }
            if best.as_ref().is_none_or(|(b, _, _)| abs < *b) {
                best = Some((abs, i, *j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Turn the diagonal of an equivalent diagonal matrix into the divisor chain.
fn normalize_diagonal(diagonal: Vec<BigInt>, len: usize) -> Vec<BigInt> {
    let ones = diagonal.iter().filter(|d| d.is_one()).count();
    let mut rest: Vec<BigInt> = diagonal.into_iter().filter(|d| !d.is_one()).collect();
    rest.sort();
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            let g = rest[i].gcd(&rest[j]);
            let l = rest[i].lcm(&rest[j]);
            rest[i] = g;
            rest[j] = l;
        }
    }
    let mut out = vec![BigInt::one(); ones];
    out.extend(rest);
    // gcd/lcm may have produced new ones from coprime entries
    out.sort();
    out.resize(len, BigInt::zero());
    out
}

/// Dense Smith normal form with unimodular transforms.
pub fn smith_normal_form_with_transforms(m: &IntMatrix) -> SmithForm {
    let (nr, nc) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut left = IntMatrix::identity(nr);
    let mut right = IntMatrix::identity(nc);
    let n = nr.min(nc);
    let mut t = 0;
    while t < n {
        // global pivot in the trailing submatrix
        let mut best: Option<(BigInt, usize, usize)> = None;
        for i in t..nr {
            for j in t..nc {
                let v = a.get(i, j);
                if !v.is_zero() && best.as_ref().is_none_or(|(b, _, _)| v.abs() < *b) {
                    best = Some((v.abs(), i, j));
                }
            }
        }
        let Some((_, pr, pc)) = best else { break };
        a.swap_rows(t, pr);
        left.swap_rows(t, pr);
        a.swap_cols(t, pc);
        right.swap_cols(t, pc);

        loop {
            let piv = a.get(t, t).clone();
            for i in t + 1..nr {
                let q = a.get(i, t).div_floor(&piv);
                if !q.is_zero() {
                    a.add_row_multiple(i, t, &-&q);
                    left.add_row_multiple(i, t, &-&q);
                }
            }
            for j in t + 1..nc {
                let q = a.get(t, j).div_floor(&piv);
                if !q.is_zero() {
                    a.add_col_multiple(j, t, &-&q);
                    right.add_col_multiple(j, t, &-&q);
                }
            }
            // smallest leftover in the pivot row/column moves into the pivot slot
            let mut smaller: Option<(BigInt, usize, usize)> = None;
            for i in t + 1..nr {
                let v = a.get(i, t);
                if !v.is_zero() && smaller.as_ref().is_none_or(|(b, _, _)| v.abs() < *b) {
                    smaller = Some((v.abs(), i, t));
                }
            }
            for j in t + 1..nc {
                let v = a.get(t, j);
                if !v.is_zero() && smaller.as_ref().is_none_or(|(b, _, _)| v.abs() < *b) {
                    smaller = Some((v.abs(), t, j));
                }
            }
            if let Some((_, i, j)) = smaller {
                a.swap_rows(t, i);
                left.swap_rows(t, i);
                a.swap_cols(t, j);
                right.swap_cols(t, j);
                continue;
            }
            // divisibility of the trailing block
            let piv = a.get(t, t).clone();
            let offender = (t + 1..nr).find(|&i| (t + 1..nc).any(|j| !a.get(i, j).mod_floor(&piv).is_zero()));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    left.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
        t += 1;
    }
    let divisors: Vec<BigInt> = (0..n).map(|i| a.get(i, i).clone()).collect();
    let rank = divisors.iter().filter(|d| !d.is_zero()).count();
    SmithForm {
        divisors,
        rank,
        left: Some(left),
        right: Some(right),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn identity_divisors() {
        assert_eq!(smith_normal_form(&IntMatrix::identity(2)).divisors, ints(&[1, 1]));
    }

    #[test]
    fn zero_one_by_one() {
        let snf = smith_normal_form(&IntMatrix::zeros(1, 1));
        assert_eq!(snf.divisors, ints(&[0]));
        assert_eq!(snf.rank, 0);
    }

    #[test]
    fn empty_matrix() {
        assert!(smith_normal_form(&IntMatrix::zeros(0, 3)).divisors.is_empty());
        assert!(smith_normal_form_with_transforms(&IntMatrix::zeros(3, 0))
            .divisors
            .is_empty());
    }

    #[test]
    fn diag_two_three() {
        // elementary operations: diag(2,3) -> [[2,3],[0,3]] -> [[2,1],[0,3]]
        // -> [[1,2],[3,0]] -> [[1,0],[3,-6]] -> [[1,0],[0,-6]] ~ diag(1,6)
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(smith_normal_form(&m).divisors, ints(&[1, 6]));
        let full = smith_normal_form_with_transforms(&m);
        assert_eq!(full.divisors, ints(&[1, 6]));
    }

    #[test]
    fn transforms_reproduce_diagonal() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let snf = smith_normal_form_with_transforms(&m);
        assert_eq!(snf.divisors, ints(&[2, 6, 12]));
        let l = snf.left.as_ref().unwrap();
        let r = snf.right.as_ref().unwrap();
        assert_eq!(l.mul(&m).mul(r), IntMatrix::diagonal(3, 3, &snf.divisors));
        assert_eq!(smith_normal_form(&m).divisors, snf.divisors);
    }

    #[test]
    fn sparse_input_agrees() {
        let s = SparseIntMatrix::new(3, vec![vec![(0, 2), (2, 2)], vec![(1, 3)], vec![]]);
        assert_eq!(
            smith_normal_form_sparse(&s).divisors,
            smith_normal_form(&s.to_dense()).divisors
        );
    }
}
