use crate::exactalg::{nilpotent_block_sizes, Matrix, PrimeField};
use crate::simplicial::SimplicialComplex;

use super::{bockstein_condition, induced_cohomology_action, GroupAction};

/// Jordan blocks of `g^* - 1` on `H^i(X; F_p)` in one degree, sorted into
/// trivial (size 1), free (size `p`) and augmentation-kernel (size `p-1`)
/// summands.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TfrDegree {
    pub betti: usize,
    pub t: usize,
    pub f: usize,
    pub r: usize,
    /// Block sizes outside `{1, p-1, p}`, largest first.
    pub other: Vec<usize>,
}

impl TfrDegree {
    /// Dimension of the invariants: one line per block.
    pub fn invariants(&self) -> usize {
        self.t + self.f + self.r + self.other.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TfrDecomposition {
    pub p: u64,
    pub degrees: Vec<TfrDegree>,
    /// Whether `H^*(X; Z)` has no `Z/p` summand.
    pub bockstein: bool,
}

impl TfrDecomposition {
    pub fn dim_t(&self) -> usize {
        self.degrees.iter().map(|d| d.t).sum()
    }

    pub fn dim_f(&self) -> usize {
        self.degrees.iter().map(|d| d.f).sum::<usize>() * self.p as usize
    }

    pub fn dim_r(&self) -> usize {
        self.degrees.iter().map(|d| d.r).sum::<usize>() * (self.p as usize - 1)
    }

    /// Total number of size `p-1` blocks.
    pub fn r_blocks(&self) -> usize {
        self.degrees.iter().map(|d| d.r).sum()
    }

    pub fn has_other(&self) -> bool {
        self.degrees.iter().any(|d| !d.other.is_empty())
    }
}

/// Classify the blocks of `g^* - 1` on `H^*(X; F_p)`.
pub fn tfr_decomposition(x: &SimplicialComplex, action: &GroupAction) -> TfrDecomposition {
    let p = action.p();
    let field = PrimeField::new(p).expect("validated prime");
    let degrees = induced_cohomology_action(x, action, &field)
        .iter()
        .map(|g| classify(g, p))
        .collect();
    TfrDecomposition {
        p,
        degrees,
        bockstein: bockstein_condition(x, p),
    }
}

pub(crate) fn classify(g: &Matrix<PrimeField>, p: u64) -> TfrDegree {
    let n = g.sub(&Matrix::identity(g.field(), g.rows()));
    let sizes = nilpotent_block_sizes(&n, p as usize).expect("(g-1)^p = g^p - 1 = 0 in characteristic p");
    let mut out = TfrDegree {
        betti: g.rows(),
        ..Default::default()
    };
    for s in sizes {
        match s {
            1 => out.t += 1,
            s if s as u64 == p => out.f += 1,
            s if s as u64 == p - 1 => out.r += 1,
            s => out.other.push(s),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_action::validate_action;

    #[test]
    fn trivial_torus() {
        let c3 = SimplicialComplex::polygon(3);
        let torus = c3.product(&c3);
        let id: Vec<usize> = (0..9).collect();
        let a = validate_action(&torus, &id, 3).unwrap();
        let d = tfr_decomposition(&torus, &a);
        let t: Vec<usize> = d.degrees.iter().map(|x| x.t).collect();
        assert_eq!(t, vec![1, 2, 1]);
        assert_eq!((d.dim_t(), d.dim_f(), d.dim_r()), (4, 0, 0));
    }

    #[test]
    fn free_s3() {
        let c3 = SimplicialComplex::polygon(3);
        let s3 = c3.join(&c3);
        let a = validate_action(&s3, &[1, 2, 0, 4, 5, 3], 3).unwrap();
        let d = tfr_decomposition(&s3, &a);
        assert_eq!(d.dim_t(), 2);
        assert_eq!(d.degrees[0].t, 1);
        assert_eq!(d.degrees[3].t, 1);
        assert_eq!((d.dim_f(), d.dim_r()), (0, 0));
    }

    #[test]
    fn block_dimensions_add_up() {
        let f3 = PrimeField::new(3).unwrap();
        let g = Matrix::from_i64_rows(&f3, &[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]);
        let d = classify(&g, 3);
        assert_eq!((d.t, d.f, d.r), (0, 1, 0));
        let g = Matrix::from_i64_rows(&f3, &[vec![1, 1], vec![0, 1]]);
        assert_eq!(classify(&g, 3).r, 1);
    }
}
