//! Sparse column vectors and column reduction over a field.
//!
//! Columns are reduced left to right so that every nonzero column ends up
//! with a distinct *low* (largest row index carrying a nonzero entry). This
//! is the standard `R = D V` reduction used for (co)homology.

use std::collections::HashMap;

use super::Field;

/// Sorted `(index, value)` pairs with no zero values.
pub type SparseVec<E> = Vec<(usize, E)>;

/// `y + a * x`, both sorted.
pub fn axpy<F: Field>(field: &F, y: &SparseVec<F::Elem>, a: &F::Elem, x: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        let take_y = j == x.len() || (i < y.len() && y[i].0 < x[j].0);
        let take_x = i == y.len() || (j < x.len() && x[j].0 < y[i].0);
        if take_y {
            out.push(y[i].clone());
            i += 1;
        } else if take_x {
            out.push((x[j].0, field.mul(a, &x[j].1)));
            j += 1;
        } else {
            let v = field.add(&y[i].1, &field.mul(a, &x[j].1));
            if !field.is_zero(&v) {
                out.push((y[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale<F: Field>(field: &F, a: &F::Elem, x: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    if field.is_zero(a) {
        return Vec::new();
    }
    x.iter().map(|(i, v)| (*i, field.mul(a, v))).collect()
}

pub fn to_dense<F: Field>(field: &F, len: usize, x: &SparseVec<F::Elem>) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); len];
    for (i, v) in x {
        out[*i] = v.clone();
    }
    out
}

pub fn from_dense<F: Field>(field: &F, x: &[F::Elem]) -> SparseVec<F::Elem> {
    x.iter()
        .enumerate()
        .filter(|(_, v)| !field.is_zero(v))
        .map(|(i, v)| (i, v.clone()))
        .collect()
}

/// Build a sorted sparse vector from unsorted entries, summing duplicates.
pub fn collect<F: Field>(field: &F, mut entries: Vec<(usize, F::Elem)>) -> SparseVec<F::Elem> {
    entries.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec<F::Elem> = Vec::with_capacity(entries.len());
    for (i, v) in entries {
        match out.last_mut() {
            Some((j, w)) if *j == i => *w = field.add(w, &v),
            _ => out.push((i, v)),
        }
    }
    out.retain(|(_, v)| !field.is_zero(v));
    out
}

fn low<E>(col: &SparseVec<E>) -> Option<usize> {
    col.last().map(|(i, _)| *i)
}

/// Result of reducing the columns of a matrix.
#[derive(Clone, Debug)]
pub struct ColumnReduction<E> {
    /// Reduced columns `R`; nonzero ones have pairwise distinct lows.
    pub reduced: Vec<SparseVec<E>>,
    /// low row index -> column of `R` owning it.
    pub pivots: HashMap<usize, usize>,
    /// `V` with `R = D V`, when tracking was requested. Column `j` of `V`
    /// has low `j`.
    pub transform: Option<Vec<SparseVec<E>>>,
}

impl<E> ColumnReduction<E> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Indices of the columns reduced to zero; with tracking, the matching
    /// columns of `V` form a kernel basis.
    pub fn zero_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.reduced
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_empty())
            .map(|(j, _)| j)
    }
}

pub fn reduce_columns<F: Field>(field: &F, columns: Vec<SparseVec<F::Elem>>, track: bool) -> ColumnReduction<F::Elem> {
    let n = columns.len();
    let mut reduced = columns;
    let mut transform: Option<Vec<SparseVec<F::Elem>>> =
        track.then(|| (0..n).map(|j| vec![(j, field.one())]).collect());
    let mut pivots: HashMap<usize, usize> = HashMap::new();
    for j in 0..n {
        while let Some(l) = low(&reduced[j]) {
            let Some(&k) = pivots.get(&l) else {
                pivots.insert(l, j);
                break;
            };
            let a = &reduced[j].last().unwrap().1;
            let b = &reduced[k].last().unwrap().1;
            let factor = field.neg(&field.div(a, b));
            reduced[j] = axpy(field, &reduced[j], &factor, &reduced[k]);
            if let Some(v) = transform.as_mut() {
                v[j] = axpy(field, &v[j], &factor, &v[k]);
            }
        }
    }
    ColumnReduction {
        reduced,
        pivots,
        transform,
    }
}

pub fn rank<F: Field>(field: &F, columns: Vec<SparseVec<F::Elem>>) -> usize {
    reduce_columns(field, columns, false).rank()
}
