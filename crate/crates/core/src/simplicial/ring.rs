use std::collections::HashMap;

use crate::exactalg::sparse::collect;
use crate::exactalg::{Field, Matrix, SparseVec};

use super::{CellComplex, CohomologyBasis, ComplexError, SimplicialComplex};

/// Cup product of cochains by the front-face/back-face formula:
/// `(a ∪ b)(v_0..v_{k+l}) = a(v_0..v_k) b(v_k..v_{k+l})`.
pub fn cup_cochains<F: Field>(
    x: &SimplicialComplex,
    field: &F,
    k: usize,
    a: &SparseVec<F::Elem>,
    l: usize,
    b: &SparseVec<F::Elem>,
) -> SparseVec<F::Elem> {
    let av: HashMap<usize, &F::Elem> = a.iter().map(|(i, v)| (*i, v)).collect();
    let bv: HashMap<usize, &F::Elem> = b.iter().map(|(i, v)| (*i, v)).collect();
    let mut out = Vec::new();
    for (t, s) in x.simplices(k + l).iter().enumerate() {
        let front = x.simplex_index(&s[..=k]).unwrap();
        let Some(fa) = av.get(&front) else { continue };
        let back = x.simplex_index(&s[k..]).unwrap();
        let Some(fb) = bv.get(&back) else { continue };
        out.push((t, field.mul(fa, fb)));
    }
    collect(field, out)
}

/// `[a][b]`: coordinates of `a·b` for basis classes `a`, `b`.
type ProductTable<E> = Vec<Vec<Vec<E>>>;

/// `H^*(X; k)` with its cup product in a fixed cocycle basis.
#[derive(Clone, Debug)]
pub struct CohomologyRing<F: Field> {
    basis: CohomologyBasis<F>,
    // (i, j) -> products H^i × H^j -> H^{i+j}
    products: HashMap<(usize, usize), ProductTable<F::Elem>>,
}

impl<F: Field> CohomologyRing<F> {
    pub fn field(&self) -> &F {
        self.basis.field()
    }

    pub fn basis(&self) -> &CohomologyBasis<F> {
        &self.basis
    }

    pub fn betti(&self) -> Vec<usize> {
        self.basis.betti()
    }

    pub fn rank(&self, k: usize) -> usize {
        self.basis.rank(k)
    }

    /// Coordinates of `e^i_a · e^j_b`.
    pub fn product(&self, i: usize, a: usize, j: usize, b: usize) -> Vec<F::Elem> {
        match self.products.get(&(i, j)) {
            Some(t) => t[a][b].clone(),
            None => Vec::new(),
        }
    }

    /// Product of arbitrary classes given by coordinates.
    pub fn multiply(&self, i: usize, x: &[F::Elem], j: usize, y: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        let mut out = vec![f.zero(); self.rank(i + j)];
        for (a, xa) in x.iter().enumerate() {
            if f.is_zero(xa) {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if f.is_zero(yb) {
                    continue;
                }
                let c = f.mul(xa, yb);
                for (o, t) in out.iter_mut().zip(self.product(i, a, j, b)) {
                    *o = f.add(o, &f.mul(&c, &t));
                }
            }
        }
        out
    }

    /// Matrix of `(a, b) ↦ φ(a·b)` on `H^i × H^{n-i}`, where `φ` reads the
    /// coordinate of the single basis class of `H^n`. `None` unless
    /// `b_n = 1`.
    pub fn pairing_matrix(&self, i: usize, n: usize) -> Option<Matrix<F>> {
        if i > n || self.rank(n) != 1 {
            return None;
        }
        let f = self.field();
        let (r, c) = (self.rank(i), self.rank(n - i));
        let mut m = Matrix::zeros(f, r, c);
        for a in 0..r {
            for b in 0..c {
                let v = self.product(i, a, n - i, b);
                m.set(a, b, v.first().cloned().unwrap_or_else(|| f.zero()));
            }
        }
        Some(m)
    }

    /// `a·b = (-1)^{|a||b|} b·a` on basis classes.
    pub fn is_graded_commutative(&self) -> bool {
        let f = self.field();
        for (&(i, j), table) in &self.products {
            for (a, row) in table.iter().enumerate() {
                for (b, ab) in row.iter().enumerate() {
                    let ba = self.product(j, b, i, a);
                    let sign = f.sign(i * j);
                    if ab.iter().zip(&ba).any(|(x, y)| *x != f.mul(&sign, y)) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Compute all cup products between basis classes.
pub fn cup_pairing<F: Field>(x: &SimplicialComplex, field: &F) -> CohomologyRing<F> {
    let basis = CohomologyBasis::new(&x.cochain_complex(), field);
    let top = basis.degree_count();
    let mut products = HashMap::new();
    for i in 0..top {
        for j in 0..top - i {
            let (ri, rj) = (basis.rank(i), basis.rank(j));
            if ri == 0 || rj == 0 {
                continue;
            }
            let mut table = Vec::with_capacity(ri);
            for a in 0..ri {
                let mut row = Vec::with_capacity(rj);
                for b in 0..rj {
                    let z = cup_cochains(x, field, i, basis.representative(i, a), j, basis.representative(j, b));
                    row.push(basis.coordinates(i + j, &z).expect("cup of cocycles is a cocycle"));
                }
                table.push(row);
            }
            products.insert((i, j), table);
        }
    }
    CohomologyRing { basis, products }
}

/// Outcome of a Poincaré duality check over a field.
#[derive(Clone, Debug)]
pub struct PdReport<F: Field> {
    pub is_pd: bool,
    /// Top nonvanishing degree when duality holds.
    pub formal_dim: Option<usize>,
    /// Values of the orientation functional on the basis of `H^n`.
    pub orientation: Option<Vec<F::Elem>>,
    pub betti: Vec<usize>,
    /// Human-readable reasons for failure.
    pub failures: Vec<String>,
}

/// Check that `H^*(X; k)` satisfies Poincaré duality: the top nonvanishing
/// degree `n` is one-dimensional and every pairing `H^i × H^{n-i} → k` is
/// nonsingular.
pub fn pd_check<F: Field>(x: &SimplicialComplex, field: &F) -> Result<PdReport<F>, ComplexError> {
    let components = x.connected_components().len();
    if components != 1 {
        return Err(ComplexError::Disconnected { components });
    }
    let ring = cup_pairing(x, field);
    Ok(pd_from_ring(&ring))
}

pub(crate) fn pd_from_ring<F: Field>(ring: &CohomologyRing<F>) -> PdReport<F> {
    let betti = ring.betti();
    let n = ring.basis().top_degree().unwrap_or(0);
    let mut failures = Vec::new();
    if ring.rank(n) != 1 {
        failures.push(format!("top degree {n} has dimension {}", ring.rank(n)));
    } else {
        for i in 0..=n {
            let m = ring.pairing_matrix(i, n).expect("b_n = 1");
            if m.rows() != m.cols() {
                failures.push(format!("b_{i} = {} but b_{} = {}", m.rows(), n - i, m.cols()));
            } else if !m.is_invertible() {
                failures.push(format!("pairing H^{i} x H^{} is singular", n - i));
            }
        }
    }
    let is_pd = failures.is_empty();
    PdReport {
        is_pd,
        formal_dim: is_pd.then_some(n),
        orientation: is_pd.then(|| vec![ring.field().one()]),
        betti,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{PrimeField, Rationals};

    // Oracle: evaluate cup products of the representatives on a fundamental
    // cycle (kernel of the dense top boundary matrix). The resulting matrix
    // must be a nonzero multiple of the one the ring reports.
    fn evaluated_pairing(x: &SimplicialComplex, i: usize, n: usize) -> Matrix<Rationals> {
        let q = Rationals;
        let cx = x.cochain_complex();
        let d = cx.coboundary(n - 1).unwrap();
        let mut rows = vec![vec![0i64; d.rows]; d.cols()];
        for (c, col) in d.columns.iter().enumerate() {
            for &(r, v) in col {
                rows[c][r] = v;
            }
        }
        let boundary = Matrix::from_i64_rows(&q, &rows);
        let cycles = boundary.kernel();
        assert_eq!(cycles.len(), 1);
        let ring = cup_pairing(x, &q);
        let (r, c) = (ring.rank(i), ring.rank(n - i));
        let mut m = Matrix::zeros(&q, r, c);
        for a in 0..r {
            for b in 0..c {
                let z = cup_cochains(
                    x,
                    &q,
                    i,
                    ring.basis().representative(i, a),
                    n - i,
                    ring.basis().representative(n - i, b),
                );
                let mut acc = q.zero();
                for (t, v) in z {
                    acc = q.add(&acc, &q.mul(&v, &cycles[0][t]));
                }
                m.set(a, b, acc);
            }
        }
        m
    }

    fn proportional(a: &Matrix<Rationals>, b: &Matrix<Rationals>) -> bool {
        let q = Rationals;
        let (i, j) = (0..a.rows())
            .flat_map(|i| (0..a.cols()).map(move |j| (i, j)))
            .find(|&(i, j)| !q.is_zero(a.get(i, j)))
            .expect("nonzero pairing");
        let c = q.div(b.get(i, j), a.get(i, j));
        !q.is_zero(&c) && a.scale(&c) == *b
    }

    #[test]
    fn sphere_pairing_is_unit() {
        let s2 = SimplicialComplex::polygon(3).suspension();
        let ring = cup_pairing(&s2, &Rationals);
        let m = ring.pairing_matrix(0, 2).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 1));
        assert!(m.is_invertible());
        assert!(proportional(&m, &evaluated_pairing(&s2, 0, 2)));
    }

    #[test]
    fn torus_pairing_is_skew_and_invertible() {
        let c3 = SimplicialComplex::polygon(3);
        let torus = c3.product(&c3);
        let ring = cup_pairing(&torus, &Rationals);
        let m = ring.pairing_matrix(1, 2).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 2));
        assert!(m.is_invertible());
        assert_eq!(m.transpose(), m.scale(&Rationals.from_i64(-1)));
        assert!(ring.is_graded_commutative());
        assert!(proportional(&m, &evaluated_pairing(&torus, 1, 2)));
    }

    #[test]
    fn contractible_products_vanish() {
        let disk = SimplicialComplex::simplex(2);
        let ring = cup_pairing(&disk, &PrimeField::new(3).unwrap());
        assert_eq!(ring.betti(), vec![1, 0, 0]);
        let report = pd_from_ring(&ring);
        assert!(report.is_pd);
        assert_eq!(report.formal_dim, Some(0));
    }

    #[test]
    fn sphere_is_pd() {
        let s2 = SimplicialComplex::polygon(5).suspension();
        let r = pd_check(&s2, &Rationals).unwrap();
        assert!(r.is_pd);
        assert_eq!(r.formal_dim, Some(2));
    }

    #[test]
    fn projective_plane_over_f3_is_a_point() {
        let r = pd_check(&SimplicialComplex::projective_plane(), &PrimeField::new(3).unwrap()).unwrap();
        assert!(r.is_pd);
        assert_eq!(r.formal_dim, Some(0));
        let r2 = pd_check(&SimplicialComplex::projective_plane(), &PrimeField::new(2).unwrap()).unwrap();
        assert_eq!(r2.formal_dim, Some(2));
    }

    #[test]
    fn wedge_of_circles_fails() {
        let x = SimplicialComplex::from_facets(
            &[
                vec!["a", "b"],
                vec!["b", "c"],
                vec!["a", "c"],
                vec!["a", "d"],
                vec!["d", "e"],
                vec!["a", "e"],
            ],
            &["a", "b", "c", "d", "e"],
        )
        .unwrap();
        let r = pd_check(&x, &Rationals).unwrap();
        assert!(!r.is_pd);
        assert_eq!(r.formal_dim, None);
    }

    #[test]
    fn disconnected_rejected() {
        let x = SimplicialComplex::from_facets(&[vec!["a"], vec!["b"], vec!["c"]], &["a", "b", "c"]).unwrap();
        assert_eq!(
            pd_check(&x, &Rationals).unwrap_err(),
            ComplexError::Disconnected { components: 3 }
        );
    }
}
