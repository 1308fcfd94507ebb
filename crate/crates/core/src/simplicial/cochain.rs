//! Cochain complexes with integer coboundaries and their cohomology.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::exactalg::sparse::{self, axpy, reduce_columns, ColumnReduction};
use crate::exactalg::{smith_normal_form_sparse, Field, FieldKind, PrimeField, Rationals, SparseIntMatrix, SparseVec};

use super::SimplicialComplex;

/// Finitely many free cochain groups `C^0..C^n` with integer coboundaries.
/// `coboundaries[k]` maps `C^k` to `C^{k+1}` (zero rows at the top).
#[derive(Clone, Debug)]
pub struct CochainComplex {
    dims: Vec<usize>,
    coboundaries: Vec<SparseIntMatrix>,
}

impl CochainComplex {
    pub fn new(dims: Vec<usize>, coboundaries: Vec<SparseIntMatrix>) -> Self {
        assert_eq!(dims.len(), coboundaries.len(), "one coboundary per degree");
        for (k, d) in coboundaries.iter().enumerate() {
            assert_eq!(d.cols(), dims[k], "coboundary {k} has wrong source");
            assert_eq!(
                d.rows,
                dims.get(k + 1).copied().unwrap_or(0),
                "coboundary {k} has wrong target"
            );
        }
        CochainComplex { dims, coboundaries }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, k: usize) -> usize {
        self.dims.get(k).copied().unwrap_or(0)
    }

    /// Number of degrees carried, one more than the top degree.
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn coboundary(&self, k: usize) -> Option<&SparseIntMatrix> {
        self.coboundaries.get(k)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// Columns of `δ^k` reduced into `field`; empty when `k` is out of range.
    pub fn columns_over<F: Field>(&self, field: &F, k: usize) -> Vec<SparseVec<F::Elem>> {
        let Some(d) = self.coboundaries.get(k) else {
            return Vec::new();
        };
        d.columns
            .iter()
            .map(|col| {
                col.iter()
                    .map(|&(i, v)| (i, field.from_i64(v)))
                    .filter(|(_, v)| !field.is_zero(v))
                    .collect()
            })
            .collect()
    }

    pub fn rank_over<F: Field>(&self, field: &F, k: usize) -> usize {
        sparse::rank(field, self.columns_over(field, k))
    }

    /// True when every composite `δ^{k+1} δ^k` vanishes.
    pub fn is_complex(&self) -> bool {
        for k in 0..self.len().saturating_sub(1) {
            let (a, b) = (&self.coboundaries[k], &self.coboundaries[k + 1]);
            for col in &a.columns {
                let mut acc: HashMap<usize, i64> = HashMap::new();
                for &(mid, x) in col {
                    for &(row, y) in &b.columns[mid] {
                        *acc.entry(row).or_default() += x * y;
                    }
                }
                if acc.values().any(|&v| v != 0) {
                    return false;
                }
            }
        }
        true
    }
}

/// Anything with a cellular cochain complex.
pub trait CellComplex {
    fn cochain_complex(&self) -> CochainComplex;
}

impl CellComplex for SimplicialComplex {
    /// `(δc)(τ) = Σ_i (-1)^i c(τ without its i-th vertex)` in the fixed
    /// vertex order.
    fn cochain_complex(&self) -> CochainComplex {
        let top = match self.dim() {
            Some(d) => d,
            None => return CochainComplex::new(Vec::new(), Vec::new()),
        };
        let dims: Vec<usize> = (0..=top).map(|k| self.simplices(k).len()).collect();
        let mut cobs = Vec::with_capacity(top + 1);
        for k in 0..=top {
            let mut columns: Vec<Vec<(usize, i64)>> = vec![Vec::new(); dims[k]];
            for (row, tau) in self.simplices(k + 1).iter().enumerate() {
                for skip in 0..tau.len() {
                    let face: Vec<usize> = tau
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &v)| v)
                        .collect();
                    let col = self.simplex_index(&face).expect("faces are simplices");
                    columns[col].push((row, if skip % 2 == 0 { 1 } else { -1 }));
                }
            }
            cobs.push(SparseIntMatrix::new(dims.get(k + 1).copied().unwrap_or(0), columns));
        }
        CochainComplex::new(dims, cobs)
    }
}

/// Betti numbers over a named field, with integral torsion when the
/// coefficients are the integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBetti {
    /// `Z`, `Q` or `F<p>`.
    pub coefficients: String,
    pub betti: Vec<usize>,
    /// Torsion divisors per degree (all > 1); empty lists over a field.
    pub torsion: Vec<Vec<BigInt>>,
}

impl GradedBetti {
    pub fn get(&self, k: usize) -> usize {
        self.betti.get(k).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.betti.iter().sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    /// Highest degree with nonzero Betti number.
    pub fn top_degree(&self) -> Option<usize> {
        self.betti.iter().rposition(|&b| b > 0)
    }

    pub fn has_torsion(&self) -> bool {
        self.torsion.iter().any(|t| !t.is_empty())
    }
}

pub fn cohomology<F: Field>(cx: &CochainComplex, field: &F) -> GradedBetti {
    let ranks: Vec<usize> = (0..cx.len()).map(|k| cx.rank_over(field, k)).collect();
    let betti = (0..cx.len())
        .map(|k| cx.dim(k) - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 })
        .collect();
    GradedBetti {
        coefficients: field.name(),
        betti,
        torsion: vec![Vec::new(); cx.len()],
    }
}

pub fn cohomology_with(cx: &CochainComplex, kind: FieldKind) -> GradedBetti {
    match kind {
        FieldKind::Rational => cohomology(cx, &Rationals),
        FieldKind::Prime(p) => cohomology(cx, &PrimeField::new(p).expect("validated prime")),
    }
}

/// Free ranks and torsion of `H^*(C; Z)`. Torsion in degree `k` is read off
/// the Smith form of `δ^{k-1}`.
pub fn integral_cohomology(cx: &CochainComplex) -> GradedBetti {
    let forms: Vec<_> = (0..cx.len())
        .map(|k| smith_normal_form_sparse(&cx.coboundaries[k]))
        .collect();
    let mut betti = Vec::with_capacity(cx.len());
    let mut torsion = Vec::with_capacity(cx.len());
    for k in 0..cx.len() {
        let below = if k > 0 { forms[k - 1].rank } else { 0 };
        betti.push(cx.dim(k) - forms[k].rank - below);
        torsion.push(if k > 0 {
            forms[k - 1]
                .divisors
                .iter()
                .filter(|d| d.abs() > BigInt::one())
                .cloned()
                .collect()
        } else {
            Vec::new()
        });
    }
    GradedBetti {
        coefficients: "Z".into(),
        betti,
        torsion,
    }
}

/// Cocycle representatives of a basis of `H^k` for every `k`, with a
/// reducer expressing any cocycle in that basis.
///
/// Coboundaries are reduced by the `R = D V` algorithm. In degree `k` the
/// reduced columns of `δ^{k-1}` span the coboundaries, and the columns of
/// `V` at zero columns of the reduced `δ^k` span the cocycles; the latter
/// whose low is not already a low of the former complete a basis of
/// cocycles with pairwise distinct lows.
#[derive(Clone, Debug)]
pub struct CohomologyBasis<F: Field> {
    field: F,
    degrees: Vec<DegreeBasis<F::Elem>>,
}

#[derive(Clone, Debug)]
struct DegreeBasis<E> {
    dim: usize,
    boundaries: ColumnReduction<E>,
    reps: Vec<SparseVec<E>>,
    rep_by_low: HashMap<usize, usize>,
}

impl<F: Field> CohomologyBasis<F> {
    pub fn new(cx: &CochainComplex, field: &F) -> Self {
        let mut reductions: Vec<ColumnReduction<F::Elem>> = (0..cx.len())
            .map(|k| reduce_columns(field, cx.columns_over(field, k), true))
            .collect();
        let mut degrees = Vec::with_capacity(cx.len());
        for k in 0..cx.len() {
            let boundaries = if k > 0 {
                let prev = &reductions[k - 1];
                ColumnReduction {
                    reduced: prev.reduced.clone(),
                    pivots: prev.pivots.clone(),
                    transform: None,
                }
            } else {
                ColumnReduction {
                    reduced: Vec::new(),
                    pivots: HashMap::new(),
                    transform: None,
                }
            };
            let cur = &mut reductions[k];
            let v = cur.transform.take().expect("tracked");
            let mut reps = Vec::new();
            let mut rep_by_low = HashMap::new();
            for j in cur.zero_columns() {
                if !boundaries.pivots.contains_key(&j) {
                    rep_by_low.insert(j, reps.len());
                    reps.push(v[j].clone());
                }
            }
            degrees.push(DegreeBasis {
                dim: cx.dim(k),
                boundaries,
                reps,
                rep_by_low,
            });
        }
        CohomologyBasis {
            field: field.clone(),
            degrees,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.reps.len()).collect()
    }

    pub fn rank(&self, k: usize) -> usize {
        self.degrees.get(k).map_or(0, |d| d.reps.len())
    }

    pub fn top_degree(&self) -> Option<usize> {
        self.degrees.iter().rposition(|d| !d.reps.is_empty())
    }

    pub fn degree_count(&self) -> usize {
        self.degrees.len()
    }

    /// Representative cocycle of the `i`-th basis class in degree `k`.
    pub fn representative(&self, k: usize, i: usize) -> &SparseVec<F::Elem> {
        &self.degrees[k].reps[i]
    }

    pub fn cochain_dim(&self, k: usize) -> usize {
        self.degrees.get(k).map_or(0, |d| d.dim)
    }

    /// Coordinates of the class of a cocycle, or `None` if `z` is not a
    /// cocycle.
    pub fn coordinates(&self, k: usize, z: &SparseVec<F::Elem>) -> Option<Vec<F::Elem>> {
        let f = &self.field;
        let Some(deg) = self.degrees.get(k) else {
            return if z.is_empty() { Some(Vec::new()) } else { None };
        };
        let mut coords = vec![f.zero(); deg.reps.len()];
        let mut z = z.clone();
        while let Some(&(low, ref a)) = z.last() {
            let a = a.clone();
            if let Some(&c) = deg.boundaries.pivots.get(&low) {
                let col = &deg.boundaries.reduced[c];
                let factor = f.neg(&f.div(&a, &col.last().unwrap().1));
                z = axpy(f, &z, &factor, col);
            } else if let Some(&r) = deg.rep_by_low.get(&low) {
                let rep = &deg.reps[r];
                let c = f.div(&a, &rep.last().unwrap().1);
                z = axpy(f, &z, &f.neg(&c), rep);
                coords[r] = c;
            } else {
                return None;
            }
        }
        Some(coords)
    }

    /// Cocycle representing the class with the given coordinates.
    pub fn cocycle(&self, k: usize, coords: &[F::Elem]) -> SparseVec<F::Elem> {
        let mut out = Vec::new();
        for (rep, c) in self.degrees[k].reps.iter().zip(coords) {
            if !self.field.is_zero(c) {
                out = axpy(&self.field, &out, c, rep);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn betti_q(cx: &SimplicialComplex) -> Vec<usize> {
        cohomology(&cx.cochain_complex(), &Rationals).betti
    }

    fn betti_p(cx: &SimplicialComplex, p: u64) -> Vec<usize> {
        cohomology(&cx.cochain_complex(), &PrimeField::new(p).unwrap()).betti
    }

    #[test]
    fn circle_and_sphere() {
        assert_eq!(betti_q(&SimplicialComplex::polygon(5)), vec![1, 1]);
        assert_eq!(betti_p(&SimplicialComplex::polygon(5).suspension(), 3), vec![1, 0, 1]);
    }

    #[test]
    fn coboundary_squares_to_zero() {
        let rp2 = SimplicialComplex::projective_plane();
        assert!(rp2.cochain_complex().is_complex());
        let t = SimplicialComplex::polygon(3).product(&SimplicialComplex::polygon(4));
        assert!(t.cochain_complex().is_complex());
    }

    #[test]
    fn projective_plane_betti() {
        let rp2 = SimplicialComplex::projective_plane();
        assert_eq!(betti_p(&rp2, 3), vec![1, 0, 0]);
        assert_eq!(betti_p(&rp2, 2), vec![1, 1, 1]);
        assert_eq!(betti_q(&rp2), vec![1, 0, 0]);
    }

    #[test]
    fn projective_plane_torsion() {
        let h = integral_cohomology(&SimplicialComplex::projective_plane().cochain_complex());
        assert_eq!(h.betti, vec![1, 0, 0]);
        assert_eq!(h.torsion, vec![vec![], vec![], vec![BigInt::from(2)]]);
        let s = integral_cohomology(&SimplicialComplex::projective_plane().suspension().cochain_complex());
        assert_eq!(s.betti, vec![1, 0, 0, 0]);
        assert_eq!(s.torsion[3], vec![BigInt::from(2)]);
        assert!(s.torsion[..3].iter().all(Vec::is_empty));
    }

    #[test]
    fn circle_has_no_torsion() {
        let h = integral_cohomology(&SimplicialComplex::polygon(5).cochain_complex());
        assert_eq!(h.betti, vec![1, 1]);
        assert!(!h.has_torsion());
    }

    #[test]
    fn joins_products_subdivisions() {
        let c3 = SimplicialComplex::polygon(3);
        assert_eq!(betti_q(&c3.join(&c3)), vec![1, 0, 0, 1]);
        let torus = c3.product(&c3);
        assert_eq!(betti_q(&torus), vec![1, 2, 1]);
        assert_eq!(betti_q(&torus.barycentric_subdivision()), vec![1, 2, 1]);
    }

    #[test]
    fn basis_reducer_recovers_coordinates() {
        let f = PrimeField::new(5).unwrap();
        let torus = SimplicialComplex::polygon(3).product(&SimplicialComplex::polygon(3));
        let cx = torus.cochain_complex();
        let basis = CohomologyBasis::new(&cx, &f);
        assert_eq!(basis.betti(), vec![1, 2, 1]);
        let z = basis.cocycle(1, &[2, 3]);
        // adding a coboundary does not change the class
        let dz: SparseVec<u64> = sparse::collect(
            &f,
            cx.coboundary(0).unwrap().columns[4]
                .iter()
                .map(|&(i, v)| (i, f.from_i64(v)))
                .collect(),
        );
        let shifted = axpy(&f, &z, &1, &dz);
        assert_eq!(basis.coordinates(1, &shifted), Some(vec![2, 3]));
        // an edge indicator is not a cocycle
        assert_eq!(basis.coordinates(1, &vec![(0, 1)]), None);
    }
}
