//! Finite-dimensional bigraded graded-commutative algebras with
//! orientations and derivation differentials.
//!
//! Bidegrees are pairs `(ε, j)` with `ε ∈ Z/2` and `j ≥ 0`; signs always use
//! the total degree `ε + j mod 2`.

mod checks;
mod homology;
pub mod models;

use std::collections::BTreeMap;
use std::fmt;

use crate::exactalg::sparse::{axpy, collect};
use crate::exactalg::{Field, SparseVec};

pub use checks::{
    check_derivation, check_pd, euler_and_dim, gamma_form, lemma_even_congruence, odd_congruence, GammaForm,
    OddCongruence, PdAlgebraReport,
};
pub use homology::{homology, Homology};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bidegree {
    pub eps: u8,
    pub j: usize,
}

impl Bidegree {
    pub const fn new(eps: u8, j: usize) -> Self {
        Bidegree { eps: eps % 2, j }
    }

    /// Total degree mod 2.
    pub fn parity(&self) -> usize {
        (self.eps as usize + self.j) % 2
    }

    pub fn add(&self, other: &Bidegree) -> Bidegree {
        Bidegree::new((self.eps + other.eps) % 2, self.j + other.j)
    }

    /// Shift by `(Δε, Δj)`; `None` when the second degree would be negative.
    pub fn shift(&self, s: Shift) -> Option<Bidegree> {
        let j = self.j as i64 + s.dj;
        (j >= 0).then(|| Bidegree::new((self.eps + s.deps) % 2, j as usize))
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.eps, self.j)
    }
}

/// Bidegree of a differential.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Shift {
    pub deps: u8,
    pub dj: i64,
}

impl Shift {
    pub const fn new(deps: u8, dj: i64) -> Self {
        Shift { deps: deps % 2, dj }
    }

    pub fn parity(&self) -> usize {
        ((self.deps as i64 + self.dj).rem_euclid(2)) as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("algebra has no basis elements")]
    EmptyBasis,
    #[error("first basis element `{0}` must sit in bidegree (0,0) as the unit")]
    UnitNotFirst(String),
    #[error("basis element `{0}` declared twice")]
    DuplicateName(String),
    #[error("unknown basis element `{0}`")]
    UnknownElement(String),
    #[error("product {a}·{b} has a term {c} outside bidegree {expected}")]
    DegreeMismatch {
        a: String,
        b: String,
        c: String,
        expected: Bidegree,
    },
    #[error("unit law fails on `{0}`")]
    UnitLaw(String),
    #[error("graded commutativity fails on {0}·{1}")]
    NotCommutative(String, String),
    #[error("associativity fails on ({0}·{1})·{2}")]
    NotAssociative(String, String, String),
    #[error("no valid orientation: {0}")]
    Orientation(String),
    #[error("formal dimension {0} is odd")]
    OddFormalDimension(usize),
    #[error("field has characteristic 2")]
    CharacteristicTwo,
    #[error("not a Poincaré duality algebra: {0}")]
    NotPd(String),
    #[error("differential must lower the second degree (shift {0})")]
    NotLowering(i64),
    #[error("δ({a}) has a term {c} outside bidegree {expected}")]
    DifferentialDegree { a: String, c: String, expected: String },
    #[error("δ² ≠ 0 on `{0}`")]
    SquareNonzero(String),
    #[error("Leibniz rule fails on the pair ({0}, {1})")]
    Leibniz(String, String),
}

/// A bigraded algebra given by structure constants on a basis whose first
/// element is the unit.
#[derive(Clone, Debug)]
pub struct BigradedAlgebra<F: Field> {
    field: F,
    names: Vec<String>,
    degrees: Vec<Bidegree>,
    table: Vec<Vec<SparseVec<F::Elem>>>,
}

impl<F: Field> BigradedAlgebra<F> {
    /// Build from products `a·b = Σ coeff·c`. Unit products are implied;
    /// a missing product `b·a` is filled in by graded commutativity; all
    /// other pairs multiply to zero. The result is fully validated.
    pub fn new(
        field: F,
        basis: Vec<(String, Bidegree)>,
        products: Vec<(usize, usize, SparseVec<F::Elem>)>,
    ) -> Result<Self, AlgebraError> {
        if basis.is_empty() {
            return Err(AlgebraError::EmptyBasis);
        }
        if basis[0].1 != Bidegree::new(0, 0) {
            return Err(AlgebraError::UnitNotFirst(basis[0].0.clone()));
        }
        let mut seen = std::collections::HashSet::new();
        for (n, _) in &basis {
            if !seen.insert(n.as_str()) {
                return Err(AlgebraError::DuplicateName(n.clone()));
            }
        }
        let d = basis.len();
        let mut given = vec![vec![false; d]; d];
        let mut table = vec![vec![Vec::new(); d]; d];
        for (a, b, v) in products {
            table[a][b] = collect(&field, v);
            given[a][b] = true;
        }
        let (names, degrees): (Vec<String>, Vec<Bidegree>) = basis.into_iter().unzip();
        for a in 0..d {
            for b in 0..d {
                if !given[a][b] && given[b][a] {
                    let sign = field.sign(degrees[a].parity() * degrees[b].parity());
                    table[a][b] = table[b][a].iter().map(|(c, v)| (*c, field.mul(&sign, v))).collect();
                }
            }
        }
        let one = field.one();
        for a in 0..d {
            if !given[0][a] {
                table[0][a] = vec![(a, one.clone())];
            }
            if !given[a][0] {
                table[a][0] = vec![(a, one.clone())];
            }
        }
        let alg = BigradedAlgebra {
            field,
            names,
            degrees,
            table,
        };
        alg.validate()?;
        Ok(alg)
    }

    /// Trusted constructor for algebras built by construction (tensor
    /// products, base changes, homology).
    pub(crate) fn from_table(
        field: F,
        names: Vec<String>,
        degrees: Vec<Bidegree>,
        table: Vec<Vec<SparseVec<F::Elem>>>,
    ) -> Self {
        BigradedAlgebra {
            field,
            names,
            degrees,
            table,
        }
    }

    /// Bidegree compatibility, unit law, graded commutativity and
    /// associativity on all basis pairs and triples.
    pub fn validate(&self) -> Result<(), AlgebraError> {
        let f = &self.field;
        let d = self.dim();
        if self.degrees[0] != Bidegree::new(0, 0) {
            return Err(AlgebraError::UnitNotFirst(self.names[0].clone()));
        }
        for a in 0..d {
            for b in 0..d {
                let expected = self.degrees[a].add(&self.degrees[b]);
                if let Some((c, _)) = self.table[a][b].iter().find(|(c, _)| self.degrees[*c] != expected) {
                    return Err(AlgebraError::DegreeMismatch {
                        a: self.names[a].clone(),
                        b: self.names[b].clone(),
                        c: self.names[*c].clone(),
                        expected,
                    });
                }
            }
        }
        for a in 0..d {
            let e = vec![(a, f.one())];
            if self.table[0][a] != e || self.table[a][0] != e {
                return Err(AlgebraError::UnitLaw(self.names[a].clone()));
            }
        }
        for a in 0..d {
            for b in a..d {
                let sign = f.sign(self.degrees[a].parity() * self.degrees[b].parity());
                let ba: SparseVec<F::Elem> = self.table[b][a].iter().map(|(c, v)| (*c, f.mul(&sign, v))).collect();
                if self.table[a][b] != ba {
                    return Err(AlgebraError::NotCommutative(
                        self.names[a].clone(),
                        self.names[b].clone(),
                    ));
                }
            }
        }
        for a in 1..d {
            for b in 1..d {
                for c in 1..d {
                    let left = self.mul(&self.table[a][b], &[(c, f.one())]);
                    let right = self.mul(&[(a, f.one())], &self.table[b][c]);
                    if left != right {
                        return Err(AlgebraError::NotAssociative(
                            self.names[a].clone(),
                            self.names[b].clone(),
                            self.names[c].clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn degrees(&self) -> &[Bidegree] {
        &self.degrees
    }

    pub fn degree(&self, a: usize) -> Bidegree {
        self.degrees[a]
    }

    /// Structure constants of `e_a · e_b`.
    pub fn product(&self, a: usize, b: usize) -> &SparseVec<F::Elem> {
        &self.table[a][b]
    }

    pub fn mul(&self, x: &[(usize, F::Elem)], y: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut out = Vec::new();
        for (a, xa) in x {
            for (b, yb) in y {
                let t = &self.table[*a][*b];
                if !t.is_empty() {
                    out = axpy(f, &out, &f.mul(xa, yb), t);
                }
            }
        }
        out
    }

    /// Basis indices grouped by bidegree, in bidegree order.
    pub fn blocks(&self) -> BTreeMap<Bidegree, Vec<usize>> {
        let mut out: BTreeMap<Bidegree, Vec<usize>> = BTreeMap::new();
        for (a, d) in self.degrees.iter().enumerate() {
            out.entry(*d).or_default().push(a);
        }
        out
    }

    pub fn block_dim(&self, d: Bidegree) -> usize {
        self.degrees.iter().filter(|&&x| x == d).count()
    }

    /// Largest second degree present.
    pub fn top_j(&self) -> usize {
        self.degrees.iter().map(|d| d.j).max().unwrap_or(0)
    }

    /// Nonzero products `(a, b, terms)` with `a ≤ b`, in index order.
    pub fn nonzero_products(&self) -> Vec<(usize, usize, &SparseVec<F::Elem>)> {
        let mut out = Vec::new();
        for a in 1..self.dim() {
            for b in a..self.dim() {
                if !self.table[a][b].is_empty() {
                    out.push((a, b, &self.table[a][b]));
                }
            }
        }
        out
    }
}

/// A linear functional on the algebra, given by its values on the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation<F: Field> {
    pub values: Vec<F::Elem>,
}

impl<F: Field> Orientation<F> {
    pub fn new(values: Vec<F::Elem>) -> Self {
        Orientation { values }
    }

    pub fn eval(&self, field: &F, x: &[(usize, F::Elem)]) -> F::Elem {
        x.iter().fold(field.zero(), |acc, (a, v)| {
            field.add(&acc, &field.mul(v, &self.values[*a]))
        })
    }

    /// The `n` with `φ` supported on bidegree `(0, n)`.
    pub fn formal_dim(&self, alg: &BigradedAlgebra<F>) -> Result<usize, AlgebraError> {
        let f = alg.field();
        if self.values.len() != alg.dim() {
            return Err(AlgebraError::Orientation(format!(
                "{} values for {} basis elements",
                self.values.len(),
                alg.dim()
            )));
        }
        let support: Vec<usize> = (0..alg.dim()).filter(|&a| !f.is_zero(&self.values[a])).collect();
        let Some(&first) = support.first() else {
            return Err(AlgebraError::Orientation("φ vanishes identically".into()));
        };
        let d = alg.degree(first);
        if d.eps != 0 {
            return Err(AlgebraError::Orientation(format!(
                "φ is nonzero on `{}` in bidegree {d}",
                alg.name(first)
            )));
        }
        if let Some(&bad) = support.iter().find(|&&a| alg.degree(a) != d) {
            return Err(AlgebraError::Orientation(format!(
                "φ is nonzero on `{}` in bidegree {} and on `{}` in bidegree {}",
                alg.name(first),
                d,
                alg.name(bad),
                alg.degree(bad)
            )));
        }
        Ok(d.j)
    }
}

/// A linear map of fixed bidegree, given by the images of basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Differential<F: Field> {
    pub shift: Shift,
    pub images: Vec<SparseVec<F::Elem>>,
}

impl<F: Field> Differential<F> {
    /// Checks that the shift lowers `j` and that every image is homogeneous
    /// of the right bidegree.
    pub fn new(alg: &BigradedAlgebra<F>, shift: Shift, images: Vec<SparseVec<F::Elem>>) -> Result<Self, AlgebraError> {
        if shift.dj >= 0 {
            return Err(AlgebraError::NotLowering(shift.dj));
        }
        assert_eq!(images.len(), alg.dim(), "one image per basis element");
        let images: Vec<SparseVec<F::Elem>> = images.into_iter().map(|v| collect(alg.field(), v)).collect();
        for (a, img) in images.iter().enumerate() {
            let target = alg.degree(a).shift(shift);
            for (c, _) in img {
                if Some(alg.degree(*c)) != target {
                    return Err(AlgebraError::DifferentialDegree {
                        a: alg.name(a).to_string(),
                        c: alg.name(*c).to_string(),
                        expected: target.map_or("none".to_string(), |t| t.to_string()),
                    });
                }
            }
        }
        Ok(Differential { shift, images })
    }

    /// The zero map, with the default shift `(0, -1)`.
    pub fn zero(alg: &BigradedAlgebra<F>) -> Self {
        Differential {
            shift: Shift::new(0, -1),
            images: vec![Vec::new(); alg.dim()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Vec::is_empty)
    }

    pub fn apply(&self, field: &F, x: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let mut out = Vec::new();
        for (a, v) in x {
            if !self.images[*a].is_empty() {
                out = axpy(field, &out, v, &self.images[*a]);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Rationals;

    fn basis(items: &[(&str, u8, usize)]) -> Vec<(String, Bidegree)> {
        items
            .iter()
            .map(|(n, e, j)| (n.to_string(), Bidegree::new(*e, *j)))
            .collect()
    }

    #[test]
    fn commutativity_filled_in() {
        let q = Rationals;
        let b = basis(&[("1", 0, 0), ("a", 0, 1), ("b", 0, 1), ("ab", 0, 2)]);
        let alg = BigradedAlgebra::new(q, b, vec![(1, 2, vec![(3, q.one())])]).unwrap();
        assert_eq!(alg.product(2, 1), &vec![(3, q.from_i64(-1))]);
    }

    #[test]
    fn rejects_bad_tables() {
        let q = Rationals;
        let b = basis(&[("a", 0, 1), ("1", 0, 0)]);
        assert!(matches!(
            BigradedAlgebra::new(q, b, vec![]),
            Err(AlgebraError::UnitNotFirst(_))
        ));
        let b = basis(&[("1", 0, 0), ("a", 0, 1), ("b", 0, 2)]);
        assert!(matches!(
            BigradedAlgebra::new(q, b.clone(), vec![(1, 1, vec![(2, q.one())])]),
            Err(AlgebraError::NotCommutative(..))
        ));
        assert!(matches!(
            BigradedAlgebra::new(q, b, vec![(1, 2, vec![(2, q.one())])]),
            Err(AlgebraError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn rejects_nonassociative() {
        let q = Rationals;
        // (x·x)·y = z·y = w while x·(x·y) = 0
        let b = basis(&[("1", 0, 0), ("x", 0, 2), ("y", 0, 2), ("z", 0, 4), ("w", 0, 6)]);
        let r = BigradedAlgebra::new(q, b, vec![(1, 1, vec![(3, q.one())]), (2, 3, vec![(4, q.one())])]);
        assert!(matches!(r, Err(AlgebraError::NotAssociative(..))));
    }

    #[test]
    fn orientation_support() {
        let q = Rationals;
        let b = basis(&[("1", 0, 0), ("v", 0, 2)]);
        let alg = BigradedAlgebra::new(q, b, vec![]).unwrap();
        assert_eq!(
            Orientation::<Rationals>::new(vec![q.zero(), q.one()]).formal_dim(&alg),
            Ok(2)
        );
        assert!(Orientation::<Rationals>::new(vec![q.one(), q.one()])
            .formal_dim(&alg)
            .is_err());
        assert!(Orientation::<Rationals>::new(vec![q.zero(), q.zero()])
            .formal_dim(&alg)
            .is_err());
    }

    #[test]
    fn differential_must_lower() {
        let q = Rationals;
        let b = basis(&[("1", 0, 0), ("v", 0, 2)]);
        let alg = BigradedAlgebra::new(q, b, vec![]).unwrap();
        assert_eq!(
            Differential::new(&alg, Shift::new(0, 2), vec![vec![], vec![]]),
            Err(AlgebraError::NotLowering(2))
        );
        let d = Differential::new(&alg, Shift::new(0, -2), vec![vec![], vec![(0, q.one())]]).unwrap();
        assert_eq!(d.apply(&q, &[(1, q.from_i64(3))]), vec![(0, q.from_i64(3))]);
    }
}
