use std::collections::BTreeMap;

use crate::exactalg::sparse::{self, from_dense};
use crate::exactalg::{Field, Matrix, SparseVec};

use super::{check_derivation, AlgebraError, Bidegree, BigradedAlgebra, Differential, Orientation};

/// Rank of `δ` as a linear map on the whole algebra.
pub(crate) fn rank_of<F: Field>(alg: &BigradedAlgebra<F>, delta: &Differential<F>) -> usize {
    sparse::rank(alg.field(), delta.images.clone())
}

/// `H(A, δ)` with its induced product and orientation.
#[derive(Clone, Debug)]
pub struct Homology<F: Field> {
    pub dim: usize,
    /// `None` when the homology vanishes.
    pub algebra: Option<BigradedAlgebra<F>>,
    /// `φ` evaluated on the chosen representatives.
    pub orientation: Option<Orientation<F>>,
    /// Cycle representing each basis class.
    pub representatives: Vec<SparseVec<F::Elem>>,
}

struct Block<E> {
    indices: Vec<usize>,
    boundaries: usize,
    // columns: independent boundaries then representatives, block coordinates
    solver: Vec<Vec<E>>,
}

/// Homology of a derivation differential. Representatives are chosen per
/// bidegree by extending a basis of boundaries with kernel vectors in
/// reduced-echelon order, so the unit class is represented by `1`.
pub fn homology<F: Field>(
    alg: &BigradedAlgebra<F>,
    delta: &Differential<F>,
    phi: &Orientation<F>,
) -> Result<Homology<F>, AlgebraError> {
    check_derivation(alg, delta)?;
    let f = alg.field();
    let blocks = alg.blocks();
    let mut hblocks: BTreeMap<Bidegree, Block<F::Elem>> = BTreeMap::new();
    for (&deg, indices) in &blocks {
        let pos: BTreeMap<usize, usize> = indices.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let restrict = |v: &SparseVec<F::Elem>| -> Vec<F::Elem> {
            let mut out = vec![f.zero(); indices.len()];
            for (c, x) in v {
                out[pos[c]] = x.clone();
            }
            out
        };
        // δ out of this block
        let target: Vec<usize> = deg
            .shift(delta.shift)
            .and_then(|t| blocks.get(&t).cloned())
            .unwrap_or_default();
        let tpos: BTreeMap<usize, usize> = target.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let out_cols: Vec<Vec<F::Elem>> = indices
            .iter()
            .map(|&a| {
                let mut col = vec![f.zero(); target.len()];
                for (c, x) in &delta.images[a] {
                    col[tpos[c]] = x.clone();
                }
                col
            })
            .collect();
        let kernel = if target.is_empty() {
            (0..indices.len())
                .map(|i| {
                    let mut v = vec![f.zero(); indices.len()];
                    v[i] = f.one();
                    v
                })
                .collect()
        } else {
            Matrix::from_columns(f, target.len(), &out_cols).kernel()
        };
        // δ into this block
        let incoming: Vec<Vec<F::Elem>> = alg
            .degrees()
            .iter()
            .enumerate()
            .filter(|(_, d)| d.shift(delta.shift) == Some(deg))
            .map(|(a, _)| restrict(&delta.images[a]))
            .collect();
        let mut solver: Vec<Vec<F::Elem>> = Vec::new();
        let mut rank = 0;
        for v in incoming {
            solver.push(v);
            let r = Matrix::from_columns(f, indices.len(), &solver).rank();
            if r == rank {
                solver.pop();
            } else {
                rank = r;
            }
        }
        let boundaries = solver.len();
        for v in kernel {
            solver.push(v);
            let r = Matrix::from_columns(f, indices.len(), &solver).rank();
            if r == rank {
                solver.pop();
            } else {
                rank = r;
            }
        }
        if solver.len() > boundaries {
            hblocks.insert(
                deg,
                Block {
                    indices: indices.clone(),
                    boundaries,
                    solver,
                },
            );
        }
    }
    // global numbering of classes in bidegree order
    let mut reps: Vec<SparseVec<F::Elem>> = Vec::new();
    let mut degrees = Vec::new();
    let mut offset: BTreeMap<Bidegree, usize> = BTreeMap::new();
    for (&deg, b) in &hblocks {
        offset.insert(deg, reps.len());
        for col in &b.solver[b.boundaries..] {
            let mut v: SparseVec<F::Elem> = Vec::new();
            for (i, x) in col.iter().enumerate() {
                if !f.is_zero(x) {
                    v.push((b.indices[i], x.clone()));
                }
            }
            v.sort_by_key(|(i, _)| *i);
            reps.push(v);
            degrees.push(deg);
        }
    }
    let dim = reps.len();
    if dim == 0 {
        return Ok(Homology {
            dim,
            algebra: None,
            orientation: None,
            representatives: reps,
        });
    }
    let coords = |z: &SparseVec<F::Elem>, deg: Bidegree| -> SparseVec<F::Elem> {
        let Some(b) = hblocks.get(&deg) else {
            return Vec::new();
        };
        let pos: BTreeMap<usize, usize> = b.indices.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let mut rhs = vec![f.zero(); b.indices.len()];
        for (c, x) in z {
            rhs[pos[c]] = x.clone();
        }
        let m = Matrix::from_columns(f, b.indices.len(), &b.solver);
        let x = m.solve(&rhs).expect("product of cycles is a cycle");
        let o = offset[&deg];
        from_dense(f, &x[b.boundaries..])
            .into_iter()
            .map(|(i, v)| (o + i, v))
            .collect()
    };
    let mut table = vec![vec![Vec::new(); dim]; dim];
    for a in 0..dim {
        for b in 0..dim {
            let z = alg.mul(&reps[a], &reps[b]);
            if !z.is_empty() {
                table[a][b] = coords(&z, degrees[a].add(&degrees[b]));
            }
        }
    }
    let names = reps
        .iter()
        .enumerate()
        .map(|(i, r)| match r.as_slice() {
            [(a, x)] if f.is_one(x) => format!("[{}]", alg.name(*a)),
            _ => format!("h{i}"),
        })
        .collect();
    let orientation = Orientation::new(reps.iter().map(|r| phi.eval(f, r)).collect());
    Ok(Homology {
        dim,
        algebra: Some(BigradedAlgebra::from_table(f.clone(), names, degrees, table)),
        orientation: Some(orientation),
        representatives: reps,
    })
}
