//! Borel equivariant cohomology of a `Z/p` action with `F_p` coefficients,
//! computed from the periodic resolution tensored with simplicial cochains.
//!
//! `K^{i,j} = C^j(X; F_p)` for `i ≥ 0`; the horizontal map out of column
//! `i` is `σ^* - 1` for even `i` and the norm `Σ_k (σ^*)^k` for odd `i`;
//! the total differential on `K^{i,j}` is `h + (-1)^i δ`.

mod group;

use crate::exactalg::sparse::{self, axpy, SparseVec};
use crate::exactalg::{Field, PrimeField};
use crate::group_action::{fixed_subcomplex, make_regular, GroupAction};
use crate::simplicial::{cohomology, CellComplex, SimplicialComplex};

pub use group::{group_cohomology_dims, GroupCohomologyDims, GroupCohomologyError};

type Column = SparseVec<u64>;

#[derive(Clone, Debug)]
pub struct EquivariantComplex {
    field: PrimeField,
    dims: Vec<usize>,
    /// Columns of `δ^j : C^j → C^{j+1}`.
    coboundary: Vec<Vec<Column>>,
    /// Columns of `σ^* - 1` on `C^j`.
    twist: Vec<Vec<Column>>,
    /// Columns of the norm on `C^j`.
    norm: Vec<Vec<Column>>,
}

/// Columns of `(σ^k)^*` on each `C^j`: column `t` has its entry at the
/// simplex mapped onto `t`.
fn pullback_columns(x: &SimplicialComplex, action: &GroupAction, field: &PrimeField) -> Vec<Vec<Column>> {
    action
        .simplex_images(x)
        .into_iter()
        .map(|images| {
            let mut cols: Vec<Column> = vec![Vec::new(); images.len()];
            for (s, (t, sign)) in images.into_iter().enumerate() {
                cols[t] = vec![(s, field.from_i64(sign))];
            }
            cols
        })
        .collect()
}

impl EquivariantComplex {
    pub fn new(x: &SimplicialComplex, action: &GroupAction) -> Self {
        let p = action.p();
        let field = PrimeField::new(p).expect("validated prime");
        let cx = x.cochain_complex();
        let dims = cx.dims().to_vec();
        let coboundary = (0..dims.len()).map(|j| cx.columns_over(&field, j)).collect();
        let powers: Vec<Vec<Vec<Column>>> = (0..p).map(|k| pullback_columns(x, &action.power(k), &field)).collect();
        let minus_one = field.from_i64(-1);
        let mut twist = Vec::new();
        let mut norm = Vec::new();
        for j in 0..dims.len() {
            let id: Vec<Column> = (0..dims[j]).map(|c| vec![(c, field.one())]).collect();
            twist.push(
                (0..dims[j])
                    .map(|c| axpy(&field, &powers[1 % p as usize][j][c], &minus_one, &id[c]))
                    .collect(),
            );
            norm.push(
                (0..dims[j])
                    .map(|c| {
                        let terms = powers.iter().flat_map(|pw| pw[j][c].iter().cloned()).collect();
                        sparse::collect(&field, terms)
                    })
                    .collect(),
            );
        }
        EquivariantComplex {
            field,
            dims,
            coboundary,
            twist,
            norm,
        }
    }

    pub fn p(&self) -> u64 {
        self.field.modulus()
    }

    /// Dimension of the base complex, `None` when it is empty.
    pub fn base_dim(&self) -> Option<usize> {
        self.dims.len().checked_sub(1)
    }

    /// `(j, offset)` for the blocks `K^{n-j, j}` of total degree `n`.
    fn layout(&self, n: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut offset = 0;
        for j in 0..self.dims.len().min(n + 1) {
            out.push((j, offset));
            offset += self.dims[j];
        }
        out
    }

    pub fn total_dim(&self, n: usize) -> usize {
        self.dims.iter().take(n + 1).sum()
    }

    fn horizontal(&self, i: usize) -> &[Vec<Column>] {
        if i.is_multiple_of(2) {
            &self.twist
        } else {
            &self.norm
        }
    }

    /// Columns of the total differential `Tot^n → Tot^{n+1}`.
    pub fn differential(&self, n: usize) -> Vec<Column> {
        let f = &self.field;
        let target: Vec<(usize, usize)> = self.layout(n + 1);
        let offset_of = |j: usize| target.iter().find(|(k, _)| *k == j).map(|(_, o)| *o);
        let mut cols = Vec::with_capacity(self.total_dim(n));
        for (j, _) in self.layout(n) {
            let i = n - j;
            let h_off = offset_of(j).expect("row block present in the next degree");
            let v_off = offset_of(j + 1);
            let sign = f.sign(i);
            for c in 0..self.dims[j] {
                let mut col: Column = self.horizontal(i)[j][c].iter().map(|(r, v)| (r + h_off, *v)).collect();
                if let Some(o) = v_off {
                    col.extend(self.coboundary[j][c].iter().map(|(r, v)| (r + o, f.mul(&sign, v))));
                }
                cols.push(sparse::collect(f, col));
            }
        }
        cols
    }

    pub fn rank(&self, n: usize) -> usize {
        sparse::rank(&self.field, self.differential(n))
    }

    /// `dim H^n(X_G; F_p)`.
    pub fn betti(&self, n: usize) -> usize {
        let incoming = if n == 0 { 0 } else { self.rank(n - 1) };
        self.total_dim(n) - self.rank(n) - incoming
    }

    /// Dimensions for `n` in `lo..=hi`, sharing rank computations.
    pub fn betti_range(&self, lo: usize, hi: usize) -> Vec<usize> {
        let start = lo.saturating_sub(1);
        let ranks: Vec<usize> = (start..=hi).map(|n| self.rank(n)).collect();
        (lo..=hi)
            .map(|n| {
                let incoming = if n == 0 { 0 } else { ranks[n - 1 - start] };
                self.total_dim(n) - ranks[n - start] - incoming
            })
            .collect()
    }

    /// `N ∘ (σ^* - 1) = 0` and `(σ^* - 1) ∘ N = 0` on every `C^j`.
    pub fn horizontal_maps_compose_to_zero(&self) -> bool {
        let f = &self.field;
        let compose = |a: &[Column], b: &[Column]| {
            b.iter().all(|col| {
                let mut acc: Column = Vec::new();
                for (r, v) in col {
                    acc = axpy(f, &acc, v, &a[*r]);
                }
                acc.is_empty()
            })
        };
        (0..self.dims.len()).all(|j| compose(&self.norm[j], &self.twist[j]) && compose(&self.twist[j], &self.norm[j]))
    }

    /// `D_{n+1} ∘ D_n = 0`.
    pub fn squares_to_zero(&self, n: usize) -> bool {
        let f = &self.field;
        let first = self.differential(n);
        let second = self.differential(n + 1);
        first.iter().all(|col| {
            let mut acc: Column = Vec::new();
            for (r, v) in col {
                acc = axpy(f, &acc, v, &second[*r]);
            }
            acc.is_empty()
        })
    }
}

/// `dim H^n_G(X; F_p)` for `n` in `lo..=hi`.
pub fn equivariant_betti(x: &SimplicialComplex, action: &GroupAction, lo: usize, hi: usize) -> Vec<usize> {
    assert!(lo <= hi, "empty degree range");
    EquivariantComplex::new(x, action).betti_range(lo, hi)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizationReport {
    pub p: u64,
    /// Degrees `dim X + 1` and `dim X + 2`.
    pub degrees: [usize; 2],
    pub equivariant: [usize; 2],
    /// `dim H^*(X^G; F_p)`.
    pub fixed_total: usize,
    /// Subdivisions needed to make the action regular.
    pub subdivisions: usize,
}

impl LocalizationReport {
    pub fn holds(&self) -> bool {
        self.equivariant.iter().all(|&b| b == self.fixed_total)
    }
}

/// Compare equivariant Betti numbers just above the base dimension with
/// the total Betti number of the fixed set. Irregular actions are
/// subdivided first; neither side changes.
pub fn localization_check(x: &SimplicialComplex, action: &GroupAction) -> LocalizationReport {
    let (y, a, rounds) = make_regular(x, action);
    let field = PrimeField::new(a.p()).expect("validated prime");
    let fixed = fixed_subcomplex(&y, &a).expect("regular action");
    let fixed_total = cohomology(&fixed.cochain_complex(), &field).total();
    let d = y.dim().unwrap_or(0);
    let b = equivariant_betti(&y, &a, d + 1, d + 2);
    LocalizationReport {
        p: a.p(),
        degrees: [d + 1, d + 2],
        equivariant: [b[0], b[1]],
        fixed_total,
        subdivisions: rounds,
    }
}
