use crate::exactalg::{Field, Matrix, PrimeField};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupCohomologyError {
    #[error("operator is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("operator does not satisfy g^{0} = 1")]
    WrongOrder(u64),
}

/// Cohomology of `Z/p` with coefficients in a module `V`, in positive
/// degrees where it is 2-periodic.
///
/// `raw_*` are the plain dimensions `ker(g-1)/im N` and `ker N/im(g-1)`.
/// `even`/`odd` are the dimensions after setting `s = 0`, i.e. the cokernel
/// of multiplication by the degree-one class `s` landing in that parity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupCohomologyDims {
    pub raw_even: usize,
    pub raw_odd: usize,
    pub even: usize,
    pub odd: usize,
}

fn stack<F: Field>(field: &F, rows: usize, a: &[Vec<F::Elem>], b: &[Vec<F::Elem>]) -> usize {
    let cols: Vec<Vec<F::Elem>> = a.iter().chain(b).cloned().collect();
    if cols.is_empty() {
        0
    } else {
        Matrix::from_columns(field, rows, &cols).rank()
    }
}

fn columns<F: Field>(m: &Matrix<F>) -> Vec<Vec<F::Elem>> {
    (0..m.cols()).map(|j| m.column(j)).collect()
}

/// With `A = g - 1` and `N = A^{p-1}`, multiplication by `s` sends an even
/// class `[v]` to `[v]` and an odd class `[v]` to `[A^{p-2} v]`.
pub fn group_cohomology_dims(g: &Matrix<PrimeField>) -> Result<GroupCohomologyDims, GroupCohomologyError> {
    if !g.is_square() {
        return Err(GroupCohomologyError::NotSquare(g.rows(), g.cols()));
    }
    let field = *g.field();
    let p = field.modulus();
    if !g.pow(p).is_identity() {
        return Err(GroupCohomologyError::WrongOrder(p));
    }
    let n = g.rows();
    if n == 0 {
        return Ok(GroupCohomologyDims {
            raw_even: 0,
            raw_odd: 0,
            even: 0,
            odd: 0,
        });
    }
    let a = g.sub(&Matrix::identity(&field, n));
    let norm = (1..p).fold(Matrix::identity(&field, n), |acc, k| acc.add(&g.pow(k)));
    let (rank_a, ker_a) = a.rank_and_kernel();
    let (rank_n, ker_n) = norm.rank_and_kernel();
    let raw_even = ker_a.len() - rank_n;
    let raw_odd = ker_n.len() - rank_a;
    // s: even -> odd is induced by the inclusion ker A -> ker N
    let s_even_odd = stack(&field, n, &ker_a, &columns(&a)) - rank_a;
    // s: odd -> even is v -> A^{p-2} v on ker N
    let lift = a.pow(p - 2);
    let pushed: Vec<Vec<u64>> = ker_n.iter().map(|v| lift.apply(v)).collect();
    let s_odd_even = stack(&field, n, &pushed, &columns(&norm)) - rank_n;
    Ok(GroupCohomologyDims {
        raw_even,
        raw_odd,
        even: raw_even - s_odd_even,
        odd: raw_odd - s_even_odd,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::jordan_block;

    fn regular(f: &PrimeField) -> Matrix<PrimeField> {
        // cyclic shift on F_p[G]
        let p = f.modulus() as usize;
        let rows = (0..p)
            .map(|i| (0..p).map(|j| i64::from((j + 1) % p == i)).collect())
            .collect::<Vec<_>>();
        Matrix::from_i64_rows(f, &rows)
    }

    /// `g` on `ker ε` in the basis `g^i - 1`, i = 1..p-1.
    fn augmentation_kernel(f: &PrimeField) -> Matrix<PrimeField> {
        let p = f.modulus() as usize;
        // g (g^i - 1) = (g^{i+1} - 1) - (g - 1), and g^p - 1 = 0
        let mut m = Matrix::zeros(f, p - 1, p - 1);
        for i in 0..p - 1 {
            m.set(0, i, f.from_i64(-1));
        }
        for i in 0..p - 2 {
            let v = f.add(m.get(i + 1, i), &f.one());
            m.set(i + 1, i, v);
        }
        m
    }

    #[test]
    fn trivial_module() {
        let f = PrimeField::new(5).unwrap();
        let d = group_cohomology_dims(&Matrix::identity(&f, 1)).unwrap();
        assert_eq!((d.raw_even, d.raw_odd), (1, 1));
        assert_eq!((d.even, d.odd), (1, 0));
    }

    #[test]
    fn free_module() {
        let f = PrimeField::new(3).unwrap();
        let d = group_cohomology_dims(&regular(&f)).unwrap();
        assert_eq!((d.raw_even, d.raw_odd, d.even, d.odd), (0, 0, 0, 0));
    }

    #[test]
    fn augmentation_kernel_module() {
        for p in [3, 5, 7] {
            let f = PrimeField::new(p).unwrap();
            let g = augmentation_kernel(&f);
            assert!(g.pow(p).is_identity());
            // oracle: invariants are spanned by the norm element, which the
            // norm map kills; coinvariants are one-dimensional
            let a = g.sub(&Matrix::identity(&f, g.rows()));
            assert_eq!(g.rows() - a.rank(), 1);
            let d = group_cohomology_dims(&g).unwrap();
            assert_eq!((d.raw_even, d.raw_odd), (1, 1));
            assert_eq!((d.even, d.odd), (0, 1));
        }
    }

    #[test]
    fn intermediate_blocks_survive_in_both_parities() {
        let f = PrimeField::new(7).unwrap();
        let g = Matrix::identity(&f, 3).add(&jordan_block(&f, 3));
        let d = group_cohomology_dims(&g).unwrap();
        assert_eq!((d.even, d.odd), (1, 1));
    }

    #[test]
    fn rejects_wrong_order() {
        let f = PrimeField::new(3).unwrap();
        let g = Matrix::from_i64_rows(&f, &[vec![2]]);
        assert_eq!(group_cohomology_dims(&g), Err(GroupCohomologyError::WrongOrder(3)));
    }
}
