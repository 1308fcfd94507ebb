//! Simplicial actions of a cyclic group of odd prime order.

mod quotient;
mod tfr;

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::exactalg::{is_prime, p_valuation, Field, Matrix, Rationals};
use crate::simplicial::{integral_cohomology, CellComplex, CohomologyBasis, SimplicialComplex};

pub use quotient::{quotient_complex, QuotientComplex};
pub use tfr::{tfr_decomposition, TfrDecomposition, TfrDegree};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ActionError {
    #[error("group order {0} is not an odd prime")]
    BadPrime(u64),
    #[error("map has {got} entries for {expected} vertices")]
    WrongSize { expected: usize, got: usize },
    #[error("vertex map is not a permutation (vertex `{0}` hit twice)")]
    NotPermutation(String),
    #[error("generator has the cycle {cycle} of length {length}, so its order does not divide {p}")]
    OrderMismatch { p: u64, length: usize, cycle: String },
    #[error("image of simplex {0} is not a simplex")]
    NotSimplicial(String),
    #[error("action is not regular: simplex {0} is invariant but not fixed pointwise (use make_regular)")]
    NotRegular(String),
    #[error("action is not free: simplex {0} is invariant")]
    NotFree(String),
    #[error("unknown vertex `{0}` in action")]
    UnknownVertex(String),
}

/// A generator `σ` of a `Z/p` action, as a vertex permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    p: u64,
    perm: Vec<usize>,
}

impl GroupAction {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn apply(&self, v: usize) -> usize {
        self.perm[v]
    }

    /// Sorted image of a sorted simplex and the sign of the sorting
    /// permutation, so that `σ[v_0..v_k] = sign · [image]`.
    pub fn apply_simplex(&self, s: &[usize]) -> (Vec<usize>, i64) {
        let mut img: Vec<usize> = s.iter().map(|&v| self.perm[v]).collect();
        let mut sign = 1;
        // insertion sort counting transpositions
        for i in 1..img.len() {
            let mut j = i;
            while j > 0 && img[j - 1] > img[j] {
                img.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        (img, sign)
    }

    /// `σ^k`.
    pub fn power(&self, k: u64) -> GroupAction {
        let mut perm: Vec<usize> = (0..self.perm.len()).collect();
        for _ in 0..k % self.p {
            perm = perm.iter().map(|&v| self.perm[v]).collect();
        }
        GroupAction { p: self.p, perm }
    }

    pub fn is_trivial(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn fixed_vertices(&self) -> Vec<usize> {
        (0..self.perm.len()).filter(|&v| self.perm[v] == v).collect()
    }

    /// Vertex orbits, each listed from its least vertex.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.perm.len()];
        let mut out = Vec::new();
        for start in 0..self.perm.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut v = self.perm[start];
            while v != start {
                seen[v] = true;
                cycle.push(v);
                v = self.perm[v];
            }
            out.push(cycle);
        }
        out
    }

    /// For each degree `k` and each `k`-simplex `s`, the index of `σ(s)`
    /// and the orientation sign.
    pub fn simplex_images(&self, x: &SimplicialComplex) -> Vec<Vec<(usize, i64)>> {
        let top = x.dim().map_or(0, |d| d + 1);
        (0..top)
            .map(|k| {
                x.simplices(k)
                    .iter()
                    .map(|s| {
                        let (img, sign) = self.apply_simplex(s);
                        (x.simplex_index(&img).expect("validated action"), sign)
                    })
                    .collect()
            })
            .collect()
    }

    /// First simplex mapped to itself without being fixed pointwise.
    pub fn irregular_simplex(&self, x: &SimplicialComplex) -> Option<Vec<usize>> {
        let top = x.dim().map_or(0, |d| d + 1);
        for k in 1..top {
            for s in x.simplices(k) {
                let (img, _) = self.apply_simplex(s);
                if img == *s && s.iter().any(|&v| self.perm[v] != v) {
                    return Some(s.clone());
                }
            }
        }
        None
    }

    pub fn is_regular(&self, x: &SimplicialComplex) -> bool {
        self.irregular_simplex(x).is_none()
    }
}

pub(crate) fn simplex_label(x: &SimplicialComplex, s: &[usize]) -> String {
    let names: Vec<&str> = s.iter().map(|&v| x.label(v)).collect();
    format!("{{{}}}", names.join(","))
}

/// Check that `perm` generates a simplicial `Z/p` action on `x`.
pub fn validate_action(x: &SimplicialComplex, perm: &[usize], p: u64) -> Result<GroupAction, ActionError> {
    if p < 3 || !is_prime(p) || p > u32::MAX as u64 {
        return Err(ActionError::BadPrime(p));
    }
    let n = x.vertex_count();
    if perm.len() != n {
        return Err(ActionError::WrongSize {
            expected: n,
            got: perm.len(),
        });
    }
    let mut hit = vec![false; n];
    for &v in perm {
        if v >= n {
            return Err(ActionError::UnknownVertex(format!("#{v}")));
        }
        if hit[v] {
            return Err(ActionError::NotPermutation(x.label(v).to_string()));
        }
        hit[v] = true;
    }
    let action = GroupAction { p, perm: perm.to_vec() };
    for cycle in action.orbits() {
        if cycle.len() != 1 && cycle.len() as u64 != p {
            let names: Vec<&str> = cycle.iter().map(|&v| x.label(v)).collect();
            return Err(ActionError::OrderMismatch {
                p,
                length: cycle.len(),
                cycle: format!("({})", names.join(" ")),
            });
        }
    }
    for f in x.facets() {
        let (img, _) = action.apply_simplex(f);
        if !x.contains(&img) {
            return Err(ActionError::NotSimplicial(simplex_label(x, f)));
        }
    }
    Ok(action)
}

/// Action given by label pairs `v -> σ(v)`; unmentioned vertices are fixed.
pub fn action_from_labels<S: AsRef<str>>(
    x: &SimplicialComplex,
    pairs: &[(S, S)],
    p: u64,
) -> Result<GroupAction, ActionError> {
    let mut perm: Vec<usize> = (0..x.vertex_count()).collect();
    for (a, b) in pairs {
        let ia = x
            .vertex_index(a.as_ref())
            .ok_or_else(|| ActionError::UnknownVertex(a.as_ref().to_string()))?;
        let ib = x
            .vertex_index(b.as_ref())
            .ok_or_else(|| ActionError::UnknownVertex(b.as_ref().to_string()))?;
        perm[ia] = ib;
    }
    validate_action(x, &perm, p)
}

/// The induced action on the barycentric subdivision.
pub fn subdivide_action(x: &SimplicialComplex, action: &GroupAction) -> (SimplicialComplex, GroupAction) {
    let (sd, map) = x.barycentric_subdivision_with_map();
    let images = action.simplex_images(x);
    let mut perm = vec![0; sd.vertex_count()];
    for (d, level) in map.iter().enumerate() {
        for (i, &v) in level.iter().enumerate() {
            perm[v] = map[d][images[d][i].0];
        }
    }
    (sd, GroupAction { p: action.p, perm })
}

/// Subdivide until every invariant simplex is fixed pointwise. Returns the
/// new complex, the induced action, and the number of subdivisions used.
/// One subdivision always suffices since the induced action preserves
/// the dimension of barycenters.
pub fn make_regular(x: &SimplicialComplex, action: &GroupAction) -> (SimplicialComplex, GroupAction, usize) {
    let mut cur = (x.clone(), action.clone());
    let mut rounds = 0;
    while !cur.1.is_regular(&cur.0) {
        cur = subdivide_action(&cur.0, &cur.1);
        rounds += 1;
    }
    (cur.0, cur.1, rounds)
}

/// Simplices fixed pointwise; for a regular action this is the fixed set.
pub fn fixed_subcomplex(x: &SimplicialComplex, action: &GroupAction) -> Result<SimplicialComplex, ActionError> {
    if let Some(s) = action.irregular_simplex(x) {
        return Err(ActionError::NotRegular(simplex_label(x, &s)));
    }
    let fixed: BTreeSet<usize> = action.fixed_vertices().into_iter().collect();
    Ok(x.subcomplex_where(|s| s.iter().all(|v| fixed.contains(v))))
}

/// Matrices of `g^*` on the basis of `H^k(X; field)` chosen by
/// [`CohomologyBasis`]; column `a` holds the coordinates of `g^* e_a`.
pub fn induced_cohomology_action<F: Field>(x: &SimplicialComplex, action: &GroupAction, field: &F) -> Vec<Matrix<F>> {
    let basis = CohomologyBasis::new(&x.cochain_complex(), field);
    induced_on_basis(x, action, &basis)
}

pub(crate) fn induced_on_basis<F: Field>(
    x: &SimplicialComplex,
    action: &GroupAction,
    basis: &CohomologyBasis<F>,
) -> Vec<Matrix<F>> {
    let f = basis.field();
    let images = action.simplex_images(x);
    (0..basis.degree_count())
        .map(|k| {
            let r = basis.rank(k);
            let columns: Vec<Vec<F::Elem>> = (0..r)
                .map(|a| {
                    let z = pullback(f, &images[k], basis.representative(k, a));
                    basis.coordinates(k, &z).expect("pullback of a cocycle is a cocycle")
                })
                .collect();
            Matrix::from_columns(f, r, &columns)
        })
        .collect()
}

/// `(σ^* c)(s) = sign(s) · c(σ s)` for a cochain given sparsely.
pub fn pullback<F: Field>(
    field: &F,
    images: &[(usize, i64)],
    c: &crate::exactalg::SparseVec<F::Elem>,
) -> crate::exactalg::SparseVec<F::Elem> {
    let n = images.len();
    let dense = crate::exactalg::sparse::to_dense(field, n, c);
    let out: Vec<F::Elem> = images
        .iter()
        .map(|&(t, sign)| {
            let v = &dense[t];
            if sign < 0 {
                field.neg(v)
            } else {
                v.clone()
            }
        })
        .collect();
    crate::exactalg::sparse::from_dense(field, &out)
}

/// `Σ (-1)^i tr(g^* | H^i(X; Q))`.
pub fn lefschetz_number(x: &SimplicialComplex, action: &GroupAction) -> i64 {
    let q = Rationals;
    let mut total = q.zero();
    for (k, m) in induced_cohomology_action(x, action, &q).iter().enumerate() {
        let t = m.trace();
        total = if k % 2 == 0 {
            q.add(&total, &t)
        } else {
            q.sub(&total, &t)
        };
    }
    assert!(total.is_integer(), "Lefschetz number is an integer");
    i64::try_from(total.to_integer()).expect("Lefschetz number fits in i64")
}

/// Whether `g^*` is the identity on `H^*(X; Q)`.
pub fn trivial_rational_action_check(x: &SimplicialComplex, action: &GroupAction) -> bool {
    induced_cohomology_action(x, action, &Rationals)
        .iter()
        .all(|m| m.is_identity())
}

/// True iff no elementary divisor of the integral coboundaries has
/// `p`-adic valuation exactly one, i.e. `H^*(X; Z)` has no `Z/p` summand.
pub fn bockstein_condition(x: &impl CellComplex, p: u64) -> bool {
    bockstein_witness(x, p).is_none()
}

/// A degree and divisor witnessing failure of the Bockstein condition.
pub fn bockstein_witness(x: &impl CellComplex, p: u64) -> Option<(usize, BigInt)> {
    let h = integral_cohomology(&x.cochain_complex());
    for (k, divisors) in h.torsion.iter().enumerate() {
        for d in divisors {
            if p_valuation(d, p) == 1 {
                return Some((k, d.clone()));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::PrimeField;
    use crate::simplicial::cohomology;

    fn rotation(n: usize) -> Vec<usize> {
        (0..n).map(|i| (i + 1) % n).collect()
    }

    /// Rotation of the suspended `n`-gon fixing both poles.
    fn suspension_rotation(n: usize) -> (SimplicialComplex, Vec<usize>) {
        let s = SimplicialComplex::polygon(n).suspension();
        let mut perm = rotation(n);
        perm.extend([n, n + 1]);
        (s, perm)
    }

    // Hopf trace: alternating sum over fixed simplices of the orientation
    // sign, computed on cochains without passing to cohomology.
    fn hopf_trace(x: &SimplicialComplex, a: &GroupAction) -> i64 {
        let mut total = 0;
        for (k, level) in a.simplex_images(x).iter().enumerate() {
            let tr: i64 = level
                .iter()
                .enumerate()
                .filter(|(s, (t, _))| s == t)
                .map(|(_, (_, sign))| sign)
                .sum();
            total += if k % 2 == 0 { tr } else { -tr };
        }
        total
    }

    #[test]
    fn validation() {
        let c5 = SimplicialComplex::polygon(5);
        assert!(validate_action(&c5, &rotation(5), 5).is_ok());
        assert!(matches!(
            validate_action(&c5, &rotation(5), 3),
            Err(ActionError::OrderMismatch { length: 5, .. })
        ));
        let c3 = SimplicialComplex::polygon(3);
        assert!(matches!(
            validate_action(&c3, &[1, 0, 2], 3),
            Err(ActionError::OrderMismatch { length: 2, .. })
        ));
        assert_eq!(validate_action(&c5, &rotation(5), 2), Err(ActionError::BadPrime(2)));
    }

    #[test]
    fn non_simplicial_map_rejected() {
        // path a-b-c; swapping the ends cyclically breaks edges
        let x = SimplicialComplex::from_facets(&[vec!["a", "b"], vec!["b", "c"], vec!["d"]], &["a", "b", "c", "d"])
            .unwrap();
        assert!(matches!(
            validate_action(&x, &[1, 3, 2, 0], 3),
            Err(ActionError::NotSimplicial(_))
        ));
    }

    #[test]
    fn regularity() {
        let (s, perm) = suspension_rotation(3);
        let a = validate_action(&s, &perm, 3).unwrap();
        assert_eq!(make_regular(&s, &a).2, 0);
        let c3 = SimplicialComplex::polygon(3);
        let free = validate_action(&c3, &rotation(3), 3).unwrap();
        assert_eq!(make_regular(&c3, &free).2, 0);
        // a rotated filled triangle is invariant without fixed vertices
        let tri = SimplicialComplex::simplex(2);
        let rot = validate_action(&tri, &rotation(3), 3).unwrap();
        assert!(fixed_subcomplex(&tri, &rot).is_err());
        let (sd, rot2, rounds) = make_regular(&tri, &rot);
        assert_eq!(rounds, 1);
        let fixed = fixed_subcomplex(&sd, &rot2).unwrap();
        assert_eq!(fixed.f_vector(), vec![1]);
    }

    #[test]
    fn fixed_sets() {
        let c5 = SimplicialComplex::polygon(5);
        let a = validate_action(&c5, &rotation(5), 5).unwrap();
        assert!(fixed_subcomplex(&c5, &a).unwrap().is_empty());
        let (s, perm) = suspension_rotation(3);
        let a = validate_action(&s, &perm, 3).unwrap();
        let f = fixed_subcomplex(&s, &a).unwrap();
        assert_eq!(f.f_vector(), vec![2]);
        assert_eq!(f.labels(), &["N", "S"]);
    }

    #[test]
    fn rotation_acts_trivially_on_circle() {
        let c5 = SimplicialComplex::polygon(5);
        let a = validate_action(&c5, &rotation(5), 5).unwrap();
        let q = Rationals;
        for m in induced_cohomology_action(&c5, &a, &q) {
            assert!(m.is_identity());
        }
        // cochain-level check: z and g^* z agree on the fundamental cycle,
        // which runs along [i, i+1] and against the closing edge [0, 4]
        let basis = CohomologyBasis::new(&c5.cochain_complex(), &q);
        let z = basis.representative(1, 0).clone();
        let gz = pullback(&q, &a.simplex_images(&c5)[1], &z);
        let along = |c: &crate::exactalg::SparseVec<_>| -> BigInt {
            c.iter()
                .map(|(e, v): &(usize, num_rational::BigRational)| {
                    let edge = &c5.simplices(1)[*e];
                    let w = v.to_integer();
                    if edge[1] == edge[0] + 1 {
                        w
                    } else {
                        -w
                    }
                })
                .sum()
        };
        assert_eq!(along(&z), along(&gz));
        assert_ne!(along(&z), BigInt::from(0));
    }

    #[test]
    fn induced_action_has_order_p() {
        let (s, perm) = suspension_rotation(5);
        let a = validate_action(&s, &perm, 5).unwrap();
        let f = PrimeField::new(5).unwrap();
        for m in induced_cohomology_action(&s, &a, &f) {
            assert!(m.pow(5).is_identity());
        }
    }

    #[test]
    fn lefschetz_numbers() {
        let c5 = SimplicialComplex::polygon(5);
        let a = validate_action(&c5, &rotation(5), 5).unwrap();
        assert_eq!(lefschetz_number(&c5, &a), 0);
        let (s, perm) = suspension_rotation(3);
        let a = validate_action(&s, &perm, 3).unwrap();
        assert_eq!(lefschetz_number(&s, &a), 2);
        assert_eq!(hopf_trace(&s, &a), 2);
        let c3 = SimplicialComplex::polygon(3);
        let torus = c3.product(&c3);
        let id: Vec<usize> = (0..torus.vertex_count()).collect();
        let a = validate_action(&torus, &id, 3).unwrap();
        assert_eq!(lefschetz_number(&torus, &a), 0);
        assert!(trivial_rational_action_check(&torus, &a));
    }

    #[test]
    fn sphere_rotation_is_rationally_trivial() {
        let (s, perm) = suspension_rotation(3);
        let a = validate_action(&s, &perm, 3).unwrap();
        assert!(trivial_rational_action_check(&s, &a));
    }

    #[test]
    fn bockstein() {
        let c3 = SimplicialComplex::polygon(3);
        assert!(bockstein_condition(&c3.product(&c3), 3));
        assert!(bockstein_condition(&SimplicialComplex::projective_plane(), 3));
        assert!(!bockstein_condition(&SimplicialComplex::projective_plane(), 2));
    }

    #[test]
    fn fixed_set_of_power_matches() {
        let (s, perm) = suspension_rotation(5);
        let a = validate_action(&s, &perm, 5).unwrap();
        let f1 = fixed_subcomplex(&s, &a).unwrap();
        for k in 2..5 {
            assert_eq!(fixed_subcomplex(&s, &a.power(k)).unwrap(), f1);
        }
        let b = cohomology(&f1.cochain_complex(), &Rationals);
        assert_eq!(b.betti, vec![2]);
    }
}
