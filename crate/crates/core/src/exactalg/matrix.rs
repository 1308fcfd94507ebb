//! Dense matrices over a field.

use std::fmt;

use super::{ExactError, Field};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field.name())?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &F, rows: Vec<Vec<F::Elem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            field: field.clone(),
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(field: &F, rows: &[Vec<i64>]) -> Self {
        let rows = rows
            .iter()
            .map(|row| row.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, rows)
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: &F, rows: usize, columns: &[Vec<F::Elem>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut m = Self::zeros(&self.field, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let v = f.add(out.get(i, j), &f.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f.sub(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| f.mul(a, c)).collect(),
        }
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(&self.field, self.rows);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| self.field.is_zero(a))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(&self.field, self.rows)
    }

    pub fn trace(&self) -> F::Elem {
        assert!(self.is_square());
        (0..self.rows).fold(self.field.zero(), |acc, i| self.field.add(&acc, self.get(i, i)))
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Rank and a kernel basis. The basis is read off the reduced row
    /// echelon form, one vector per free column, so it is deterministic.
    pub fn rank_and_kernel(&self) -> (usize, Vec<Vec<F::Elem>>) {
        let f = &self.field;
        let (rref, pivots) = self.rref();
        let mut kernel = Vec::new();
        let mut pivot_iter = pivots.iter().peekable();
        for free in 0..self.cols {
            if pivot_iter.peek() == Some(&&free) {
                pivot_iter.next();
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(rref.get(row, free));
            }
            kernel.push(v);
        }
        (pivots.len(), kernel)
    }

    pub fn kernel(&self) -> Vec<Vec<F::Elem>> {
        self.rank_and_kernel().1
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let f = &self.field;
        let mut aug = Self::zeros(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, f.one());
        }
        let (rref, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, rref.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Solve `self * x = b`; `None` if inconsistent.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert_eq!(b.len(), self.rows);
        let f = &self.field;
        let mut aug = Self::zeros(f, self.rows, self.cols + 1);
        for (i, bi) in b.iter().enumerate() {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, bi.clone());
        }
        let (rref, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = rref.get(row, self.cols).clone();
        }
        Some(x)
    }
}

/// Jordan block sizes of a nilpotent operator, largest first.
///
/// Computed from the kernel profile: the number of blocks of size at least
/// `k` is `dim ker n^k - dim ker n^(k-1)`.
pub fn nilpotent_block_sizes<F: Field>(n: &Matrix<F>, bound: usize) -> Result<Vec<usize>, ExactError> {
    if !n.is_square() {
        return Err(ExactError::NotSquare {
            rows: n.rows(),
            cols: n.cols(),
        });
    }
    let dim = n.rows();
    if !n.pow(bound as u64).is_zero() {
        return Err(ExactError::NotNilpotent { bound });
    }
    // kernel_dims[k] = dim ker n^k
    let mut kernel_dims = vec![0usize];
    let mut power = Matrix::identity(n.field(), dim);
    while *kernel_dims.last().unwrap() < dim {
        power = power.mul(n);
        kernel_dims.push(dim - power.rank());
    }
    let at_least: Vec<usize> = kernel_dims.windows(2).map(|w| w[1] - w[0]).collect();
    let mut sizes = Vec::new();
    for k in (1..=at_least.len()).rev() {
        let exactly = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
        sizes.extend(std::iter::repeat_n(k, exactly));
    }
    Ok(sizes)
}

/// A single nilpotent Jordan block `J` with ones on the superdiagonal.
pub fn jordan_block<F: Field>(field: &F, size: usize) -> Matrix<F> {
    let mut m = Matrix::zeros(field, size, size);
    for i in 0..size.saturating_sub(1) {
        m.set(i, i + 1, field.one());
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{PrimeField, Rationals};

    #[test]
    fn identity_over_f3_has_full_rank() {
        let f = PrimeField::new(3).unwrap();
        let (rank, ker) = Matrix::identity(&f, 4).rank_and_kernel();
        assert_eq!(rank, 4);
        assert!(ker.is_empty());
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let (rank, ker) = Matrix::zeros(&Rationals, 2, 3).rank_and_kernel();
        assert_eq!(rank, 0);
        assert_eq!(ker.len(), 3);
    }

    #[test]
    fn proportional_rows() {
        let q = Rationals;
        let m = Matrix::from_i64_rows(&q, &[vec![1, 1], vec![2, 2]]);
        let (rank, ker) = m.rank_and_kernel();
        assert_eq!(rank, 1);
        assert_eq!(ker, vec![vec![q.from_i64(-1), q.from_i64(1)]]);
        assert!(m.apply(&ker[0]).iter().all(|x| q.is_zero(x)));
    }

    #[test]
    fn inverse_and_solve() {
        let f = PrimeField::new(5).unwrap();
        let m = Matrix::from_i64_rows(&f, &[vec![1, 2], vec![3, 4]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let x = m.solve(&[1, 0]).unwrap();
        assert_eq!(m.apply(&x), vec![1, 0]);
        let singular = Matrix::from_i64_rows(&f, &[vec![1, 2], vec![2, 4]]);
        assert!(singular.inverse().is_none());
        assert!(singular.solve(&[1, 0]).is_none());
    }

    #[test]
    fn block_sizes_of_zero_operator() {
        let q = Rationals;
        assert_eq!(
            nilpotent_block_sizes(&Matrix::zeros(&q, 4, 4), 1).unwrap(),
            vec![1, 1, 1, 1]
        );
    }

    #[test]
    fn block_sizes_of_single_block() {
        let q = Rationals;
        assert_eq!(nilpotent_block_sizes(&jordan_block(&q, 3), 3).unwrap(), vec![3]);
    }

    #[test]
    fn block_sizes_of_direct_sum_over_f5() {
        let f = PrimeField::new(5).unwrap();
        let n = jordan_block(&f, 2).direct_sum(&jordan_block(&f, 1));
        // kernel profile oracle: dim ker n^k = sum min(k, size) = 2, 3, 3
        assert_eq!(3 - n.rank(), 2);
        assert_eq!(3 - n.pow(2).rank(), 3);
        assert_eq!(nilpotent_block_sizes(&n, 5).unwrap(), vec![2, 1]);
    }

    #[test]
    fn rejects_non_nilpotent() {
        let q = Rationals;
        let err = nilpotent_block_sizes(&Matrix::identity(&q, 2), 4).unwrap_err();
        assert!(matches!(err, ExactError::NotNilpotent { bound: 4 }));
        let wide = Matrix::zeros(&q, 2, 3);
        assert!(matches!(
            nilpotent_block_sizes(&wide, 1),
            Err(ExactError::NotSquare { .. })
        ));
    }
}
