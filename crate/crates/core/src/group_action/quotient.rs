use std::collections::HashMap;

use crate::exactalg::SparseIntMatrix;
use crate::simplicial::{CellComplex, CochainComplex, SimplicialComplex};

use super::{simplex_label, ActionError, GroupAction};

/// Orbit space of a free action, as a cell complex whose cells are the
/// simplex orbits. Each cell is oriented by its lexicographically least
/// simplex. The orbit space need not be a simplicial complex (two vertices
/// of one simplex may share an orbit), so only its cochain complex is kept.
#[derive(Clone, Debug)]
pub struct QuotientComplex {
    cells: Vec<Vec<Vec<usize>>>,
    labels: Vec<String>,
    cochains: CochainComplex,
}

impl QuotientComplex {
    /// Representative simplices in each dimension.
    pub fn cells(&self, d: usize) -> &[Vec<usize>] {
        self.cells.get(d).map_or(&[], |v| v.as_slice())
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cochains.euler_characteristic()
    }

    /// Labels of the vertices of the original complex, for display.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

impl CellComplex for QuotientComplex {
    fn cochain_complex(&self) -> CochainComplex {
        self.cochains.clone()
    }
}

/// Quotient of `x` by a free action.
pub fn quotient_complex(x: &SimplicialComplex, action: &GroupAction) -> Result<QuotientComplex, ActionError> {
    let top = x.dim().map_or(0, |d| d + 1);
    let images = action.simplex_images(x);
    // orbit[d][i] = (cell index, sign of simplex i relative to its cell)
    let mut orbit: Vec<Vec<(usize, i64)>> = Vec::with_capacity(top);
    let mut cells = Vec::with_capacity(top);
    for (d, image) in images.iter().enumerate().take(top) {
        let n = x.simplices(d).len();
        let mut assigned: Vec<Option<(usize, i64)>> = vec![None; n];
        let mut reps = Vec::new();
        for start in 0..n {
            if assigned[start].is_some() {
                continue;
            }
            // simplices are sorted, so the first unassigned one is least
            let cell = reps.len();
            reps.push(x.simplices(d)[start].clone());
            assigned[start] = Some((cell, 1));
            let (mut cur, mut sign) = (start, 1i64);
            loop {
                let (next, s) = image[cur];
                sign *= s;
                if next == start {
                    if sign != 1 {
                        return Err(ActionError::NotFree(simplex_label(x, &x.simplices(d)[start])));
                    }
                    break;
                }
                if next == cur {
                    return Err(ActionError::NotFree(simplex_label(x, &x.simplices(d)[cur])));
                }
                // σ^k(rep) = sign · next, hence [next] = sign · [rep]
                assigned[next] = Some((cell, sign));
                cur = next;
            }
        }
        if let Some(i) = (0..n).find(|&i| image[i].0 == i) {
            return Err(ActionError::NotFree(simplex_label(x, &x.simplices(d)[i])));
        }
        orbit.push(assigned.into_iter().map(|a| a.unwrap()).collect());
        cells.push(reps);
    }
    let dims: Vec<usize> = cells.iter().map(Vec::len).collect();
    let mut cobs = Vec::with_capacity(top);
    for d in 0..top {
        let mut columns: Vec<HashMap<usize, i64>> = vec![HashMap::new(); dims[d]];
        if d + 1 < top {
            for (row, rep) in cells[d + 1].iter().enumerate() {
                for skip in 0..rep.len() {
                    let face: Vec<usize> = rep
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &v)| v)
                        .collect();
                    let (cell, sign) = orbit[d][x.simplex_index(&face).unwrap()];
                    let e = if skip % 2 == 0 { sign } else { -sign };
                    *columns[cell].entry(row).or_default() += e;
                }
            }
        }
        let columns = columns
            .into_iter()
            .map(|m| {
                let mut c: Vec<(usize, i64)> = m.into_iter().filter(|&(_, v)| v != 0).collect();
                c.sort_unstable();
                c
            })
            .collect();
        cobs.push(SparseIntMatrix::new(dims.get(d + 1).copied().unwrap_or(0), columns));
    }
    Ok(QuotientComplex {
        cells,
        labels: x.labels().to_vec(),
        cochains: CochainComplex::new(dims, cobs),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{PrimeField, Rationals};
    use crate::group_action::{bockstein_condition, validate_action};
    use crate::simplicial::{cohomology, integral_cohomology};

    fn lens() -> QuotientComplex {
        let c3 = SimplicialComplex::polygon(3);
        let s3 = c3.join(&c3);
        let a = validate_action(&s3, &[1, 2, 0, 4, 5, 3], 3).unwrap();
        quotient_complex(&s3, &a).unwrap()
    }

    #[test]
    fn pentagon_quotient_is_circle() {
        let c5 = SimplicialComplex::polygon(5);
        let a = validate_action(&c5, &[1, 2, 3, 4, 0], 5).unwrap();
        let q = quotient_complex(&c5, &a).unwrap();
        assert_eq!(q.cell_counts(), vec![1, 1]);
        assert!(q.cochain_complex().is_complex());
        assert_eq!(cohomology(&q.cochain_complex(), &Rationals).betti, vec![1, 1]);
    }

    #[test]
    fn lens_space() {
        let l = lens();
        assert!(l.cochain_complex().is_complex());
        assert_eq!(l.euler_characteristic(), 0);
        assert_eq!(
            cohomology(&l.cochain_complex(), &PrimeField::new(3).unwrap()).betti,
            vec![1, 1, 1, 1]
        );
        assert_eq!(cohomology(&l.cochain_complex(), &Rationals).betti, vec![1, 0, 0, 1]);
        let z = integral_cohomology(&l.cochain_complex());
        assert_eq!(z.torsion[2], vec![num_bigint::BigInt::from(3)]);
        assert!(!bockstein_condition(&l, 3));
        assert!(bockstein_condition(&l, 5));
    }

    #[test]
    fn rejects_fixed_points() {
        let s2 = SimplicialComplex::polygon(3).suspension();
        let a = validate_action(&s2, &[1, 2, 0, 3, 4], 3).unwrap();
        assert!(matches!(quotient_complex(&s2, &a), Err(ActionError::NotFree(_))));
    }
}
