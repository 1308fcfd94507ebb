//! Standard algebras and random generators.
//!
//! Free models are graded-commutative algebras on generators truncated at a
//! given height; their orientation reads the coefficient of the product of
//! all top powers. Random instances are free models, optionally with a
//! derivation defined on generators, conjugated by a random change of basis
//! inside each bidegree.

use std::collections::HashMap;

use rand::Rng;

use crate::exactalg::sparse::{axpy, collect, from_dense, to_dense};
use crate::exactalg::{Field, Matrix, SparseVec};

use super::{check_derivation, AlgebraError, Bidegree, BigradedAlgebra, Differential, Orientation, Shift};

/// An algebra together with an orientation and a differential.
#[derive(Clone, Debug)]
pub struct DgModel<F: Field> {
    pub algebra: BigradedAlgebra<F>,
    pub orientation: Orientation<F>,
    pub differential: Differential<F>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: Bidegree,
    /// Largest nonzero power; generators of odd total degree have height 1.
    pub height: usize,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: Bidegree, height: usize) -> Self {
        Generator {
            name: name.into(),
            degree,
            height,
        }
    }
}

/// A truncated free graded-commutative algebra with its monomial basis.
#[derive(Clone, Debug)]
pub struct FreeModel<F: Field> {
    pub algebra: BigradedAlgebra<F>,
    pub orientation: Orientation<F>,
    pub generators: Vec<Generator>,
    /// Exponent vector of each basis monomial.
    pub exponents: Vec<Vec<usize>>,
}

impl<F: Field> FreeModel<F> {
    pub fn new(field: F, generators: Vec<Generator>) -> Result<Self, AlgebraError> {
        for g in &generators {
            if g.degree == Bidegree::new(0, 0) {
                return Err(AlgebraError::Orientation(format!(
                    "generator `{}` has bidegree (0,0)",
                    g.name
                )));
            }
            if g.height == 0 || (g.degree.parity() == 1 && g.height > 1) {
                return Err(AlgebraError::NotCommutative(g.name.clone(), g.name.clone()));
            }
        }
        let mut exps: Vec<Vec<usize>> = vec![Vec::new()];
        for g in &generators {
            exps = exps
                .into_iter()
                .flat_map(|e| {
                    (0..=g.height).map(move |k| {
                        let mut e = e.clone();
                        e.push(k);
                        e
                    })
                })
                .collect();
        }
        let degree_of = |e: &[usize]| {
            e.iter().zip(&generators).fold(Bidegree::new(0, 0), |acc, (&k, g)| {
                Bidegree::new(
                    (acc.eps as usize + k * g.degree.eps as usize) as u8 % 2,
                    acc.j + k * g.degree.j,
                )
            })
        };
        exps.sort_by_key(|e| {
            let d = degree_of(e);
            (d.j, d.eps, e.clone())
        });
        let index: HashMap<Vec<usize>, usize> = exps.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let degrees: Vec<Bidegree> = exps.iter().map(|e| degree_of(e)).collect();
        let names: Vec<String> = exps
            .iter()
            .map(|e| {
                let parts: Vec<String> = e
                    .iter()
                    .zip(&generators)
                    .filter(|(&k, _)| k > 0)
                    .map(|(&k, g)| {
                        if k == 1 {
                            g.name.clone()
                        } else {
                            format!("{}^{k}", g.name)
                        }
                    })
                    .collect();
                if parts.is_empty() {
                    "1".to_string()
                } else {
                    parts.join("*")
                }
            })
            .collect();
        let d = exps.len();
        let mut table = vec![vec![Vec::new(); d]; d];
        for a in 0..d {
            for b in 0..d {
                let sum: Vec<usize> = exps[a].iter().zip(&exps[b]).map(|(x, y)| x + y).collect();
                if sum.iter().zip(&generators).any(|(&k, g)| k > g.height) {
                    continue;
                }
                // move each generator power of b left past the later ones of a
                let mut parity = 0;
                for i in 0..generators.len() {
                    for j in i + 1..generators.len() {
                        parity +=
                            exps[b][i] * generators[i].degree.parity() * exps[a][j] * generators[j].degree.parity();
                    }
                }
                table[a][b] = vec![(index[&sum], field.sign(parity))];
            }
        }
        let top: Vec<usize> = generators.iter().map(|g| g.height).collect();
        let top_deg = degree_of(&top);
        if top_deg.eps != 0 {
            return Err(AlgebraError::Orientation(format!(
                "top monomial sits in bidegree {top_deg}"
            )));
        }
        let mut phi = vec![field.zero(); d];
        phi[index[&top]] = field.one();
        let algebra = BigradedAlgebra::from_table(field, names, degrees, table);
        Ok(FreeModel {
            algebra,
            orientation: Orientation::new(phi),
            generators,
            exponents: exps,
        })
    }

    pub fn generator_index(&self, g: usize) -> usize {
        let mut e = vec![0; self.generators.len()];
        e[g] = 1;
        self.exponents.iter().position(|x| *x == e).expect("generator monomial")
    }

    /// Extend values on generators to all monomials by the Leibniz rule and
    /// verify the result is a square-zero derivation.
    pub fn derivation(
        &self,
        shift: Shift,
        on_generators: Vec<SparseVec<F::Elem>>,
    ) -> Result<Differential<F>, AlgebraError> {
        let alg = &self.algebra;
        let f = alg.field();
        let d = alg.dim();
        let mut images: Vec<Option<SparseVec<F::Elem>>> = vec![None; d];
        images[0] = Some(Vec::new());
        for (g, img) in on_generators.into_iter().enumerate() {
            images[self.generator_index(g)] = Some(collect(f, img));
        }
        let mut order: Vec<usize> = (1..d).collect();
        order.sort_by_key(|&t| self.exponents[t].iter().sum::<usize>());
        for t in order {
            if images[t].is_some() {
                continue;
            }
            let e = &self.exponents[t];
            let i = e.iter().position(|&k| k > 0).unwrap();
            let mut rest = e.clone();
            rest[i] -= 1;
            let r = self.exponents.iter().position(|x| *x == rest).unwrap();
            let g = self.generator_index(i);
            let prod = alg.product(g, r);
            let c = match prod.as_slice() {
                [(idx, c)] if *idx == t => c.clone(),
                _ => unreachable!("leading generator times the rest is the monomial"),
            };
            let dg = images[g].clone().unwrap();
            let dr = images[r].clone().unwrap();
            let first = alg.mul(&dg, &[(r, f.one())]);
            let second = alg.mul(&[(g, f.one())], &dr);
            let sum = axpy(f, &first, &f.sign(alg.degree(g).parity()), &second);
            let inv = f.inv(&c).unwrap();
            images[t] = Some(sum.into_iter().map(|(k, v)| (k, f.mul(&inv, &v))).collect());
        }
        let delta = Differential::new(alg, shift, images.into_iter().map(Option::unwrap).collect())?;
        check_derivation(alg, &delta)?;
        Ok(delta)
    }

    pub fn with_zero_differential(&self) -> DgModel<F> {
        DgModel {
            algebra: self.algebra.clone(),
            orientation: self.orientation.clone(),
            differential: Differential::zero(&self.algebra),
        }
    }
}

fn named(field: &impl Field, items: &[(&str, u8, usize)]) -> Vec<(String, Bidegree)> {
    let _ = field;
    items
        .iter()
        .map(|(n, e, j)| (n.to_string(), Bidegree::new(*e, *j)))
        .collect()
}

/// `k·1 ⊕ k·v` with `v` in `(0, n)` and `v² = 0`.
pub fn sphere_model<F: Field>(field: F, n: usize) -> (BigradedAlgebra<F>, Orientation<F>) {
    let basis = named(&field, &[("1", 0, 0), ("v", 0, n)]);
    let phi = Orientation::new(vec![field.zero(), field.one()]);
    (BigradedAlgebra::new(field, basis, vec![]).expect("sphere model"), phi)
}

/// Exterior algebra on `a, b` in `(0, 1)`.
pub fn torus_model<F: Field>(field: F) -> (BigradedAlgebra<F>, Orientation<F>) {
    let one = field.one();
    let basis = named(&field, &[("1", 0, 0), ("a", 0, 1), ("b", 0, 1), ("ab", 0, 2)]);
    let phi = Orientation::new(vec![field.zero(), field.zero(), field.zero(), field.one()]);
    (
        BigradedAlgebra::new(field, basis, vec![(1, 2, vec![(3, one)])]).expect("torus model"),
        phi,
    )
}

/// Truncated polynomial algebra `k[x]/x^{h+1}` with `x` in `(0, 2)`.
pub fn projective_model<F: Field>(field: F, h: usize) -> (BigradedAlgebra<F>, Orientation<F>) {
    let m = FreeModel::new(field, vec![Generator::new("x", Bidegree::new(0, 2), h)]).expect("projective model");
    (m.algebra, m.orientation)
}

/// Dimension profile `(1, r, r, 1)` in degrees `0, 1, 2m, 2m+1`: classes
/// `a_i` in `(0,1)`, `b_i` in `(0,2m)`, `c` in `(0,2m+1)` with
/// `a_i b_j = δ_ij c`, and `δ b_j = Σ_k s[k][j] a_k` for a skew matrix `s`.
pub fn betti_profile_model<F: Field>(field: F, m: usize, s: &Matrix<F>) -> Result<DgModel<F>, AlgebraError> {
    assert!(m >= 1);
    let r = s.rows();
    let mut basis = vec![("1".to_string(), Bidegree::new(0, 0))];
    basis.extend((1..=r).map(|i| (format!("a{i}"), Bidegree::new(0, 1))));
    basis.extend((1..=r).map(|i| (format!("b{i}"), Bidegree::new(0, 2 * m))));
    basis.push(("c".to_string(), Bidegree::new(0, 2 * m + 1)));
    let c = 2 * r + 1;
    let products = (0..r).map(|i| (1 + i, 1 + r + i, vec![(c, field.one())])).collect();
    let alg = BigradedAlgebra::new(field.clone(), basis, products)?;
    let mut images = vec![Vec::new(); alg.dim()];
    for j in 0..r {
        images[1 + r + j] = (0..r)
            .filter(|&k| !field.is_zero(s.get(k, j)))
            .map(|k| (1 + k, s.get(k, j).clone()))
            .collect();
    }
    let delta = Differential::new(&alg, Shift::new(0, 1 - 2 * m as i64), images)?;
    check_derivation(&alg, &delta)?;
    let mut phi = vec![field.zero(); alg.dim()];
    phi[c] = field.one();
    Ok(DgModel {
        algebra: alg,
        orientation: Orientation::new(phi),
        differential: delta,
    })
}

/// The `(1,2,2,1)` instance with `m = 1`, `δ b1 = a2`, `δ b2 = -a1`.
pub fn odd_example<F: Field>(field: F) -> DgModel<F> {
    let s = Matrix::from_i64_rows(&field, &[vec![0, -1], vec![1, 0]]);
    betti_profile_model(field, 1, &s).expect("valid odd example")
}

/// Exterior algebra on `x3, x5, x9` with `δ x9 = x3 x5`.
pub fn triple_sphere_model<F: Field>(field: F) -> DgModel<F> {
    let gens = vec![
        Generator::new("x3", Bidegree::new(0, 3), 1),
        Generator::new("x5", Bidegree::new(0, 5), 1),
        Generator::new("x9", Bidegree::new(0, 9), 1),
    ];
    let m = FreeModel::new(field.clone(), gens).expect("exterior algebra");
    let x35 = m.algebra.index_of("x3*x5").unwrap();
    let delta = m
        .derivation(Shift::new(0, -1), vec![vec![], vec![], vec![(x35, field.one())]])
        .expect("derivation");
    DgModel {
        algebra: m.algebra,
        orientation: m.orientation,
        differential: delta,
    }
}

fn random_elem<F: Field, R: Rng>(field: &F, rng: &mut R) -> F::Elem {
    field.from_i64(rng.gen_range(-3..=3))
}

fn random_invertible<F: Field, R: Rng>(field: &F, n: usize, rng: &mut R) -> Matrix<F> {
    loop {
        let rows = (0..n)
            .map(|_| (0..n).map(|_| random_elem(field, rng)).collect())
            .collect();
        let m = Matrix::from_rows(field, rows);
        if m.is_invertible() {
            return m;
        }
    }
}

/// Conjugate by a random invertible change of basis in every bidegree
/// except `(0,0)`, then rescale `φ` to be 1 on the first basis element of
/// top bidegree.
pub fn random_twist<F: Field, R: Rng>(model: &DgModel<F>, rng: &mut R) -> DgModel<F> {
    let alg = &model.algebra;
    let f = alg.field();
    let d = alg.dim();
    let mut change = Matrix::identity(f, d);
    for (deg, idx) in alg.blocks() {
        if deg == Bidegree::new(0, 0) {
            continue;
        }
        let p = random_invertible(f, idx.len(), rng);
        for (r, &a) in idx.iter().enumerate() {
            for (c, &b) in idx.iter().enumerate() {
                change.set(a, b, p.get(r, c).clone());
            }
        }
    }
    let inverse = change.inverse().expect("invertible");
    let to_new = |v: &SparseVec<F::Elem>| from_dense(f, &inverse.apply(&to_dense(f, d, v)));
    let col = |a: usize| from_dense(f, &change.column(a));
    let cols: Vec<SparseVec<F::Elem>> = (0..d).map(col).collect();
    let mut table = vec![vec![Vec::new(); d]; d];
    for a in 0..d {
        for b in 0..d {
            table[a][b] = to_new(&alg.mul(&cols[a], &cols[b]));
        }
    }
    let images = (0..d).map(|a| to_new(&model.differential.apply(f, &cols[a]))).collect();
    let mut phi: Vec<F::Elem> = (0..d).map(|a| model.orientation.eval(f, &cols[a])).collect();
    if let Some(first) = phi.iter().find(|v| !f.is_zero(v)).cloned() {
        let s = f.inv(&first).unwrap();
        phi = phi.iter().map(|v| f.mul(v, &s)).collect();
    }
    let names = (0..d)
        .map(|a| if a == 0 { "1".to_string() } else { format!("e{a}") })
        .collect();
    DgModel {
        algebra: BigradedAlgebra::from_table(f.clone(), names, alg.degrees().to_vec(), table),
        orientation: Orientation::new(phi),
        differential: Differential {
            shift: model.differential.shift,
            images,
        },
    }
}

/// Random generators whose top monomial lies in `ε = 0`, with formal
/// dimension of the requested parity and at most `max_dim` basis elements.
pub fn random_free_model<F: Field, R: Rng>(field: &F, rng: &mut R, even: bool, max_dim: usize) -> FreeModel<F> {
    loop {
        let count = rng.gen_range(1..=3);
        let mut gens = Vec::new();
        for i in 0..count {
            let name = format!("g{i}");
            let g = match rng.gen_range(0..6) {
                0 => Generator::new(name, Bidegree::new(0, [1, 3, 5][rng.gen_range(0..3)]), 1),
                1 => Generator::new(name, Bidegree::new(0, [2, 4][rng.gen_range(0..2)]), 1),
                2 => Generator::new(name, Bidegree::new(0, 2), rng.gen_range(2..=3)),
                3 => Generator::new(name, Bidegree::new(1, 1), 2),
                4 => Generator::new(name, Bidegree::new(1, [2, 4][rng.gen_range(0..2)]), 1),
                _ => Generator::new(name, Bidegree::new(1, 3), 2),
            };
            gens.push(g);
        }
        let size: usize = gens.iter().map(|g| g.height + 1).product();
        if size > max_dim {
            continue;
        }
        let top_eps: usize = gens.iter().map(|g| g.height * g.degree.eps as usize).sum();
        let n: usize = gens.iter().map(|g| g.height * g.degree.j).sum();
        if !top_eps.is_multiple_of(2) || n.is_multiple_of(2) != even {
            continue;
        }
        if let Ok(m) = FreeModel::new(field.clone(), gens) {
            return m;
        }
    }
}

/// A random square-zero derivation on a free model, or zero if none is
/// found quickly. `odd` restricts to shifts of odd total degree.
pub fn random_derivation<F: Field, R: Rng>(model: &FreeModel<F>, rng: &mut R, odd: bool) -> Differential<F> {
    let alg = &model.algebra;
    let f = alg.field();
    let top = alg.top_j() as i64;
    if top == 0 {
        return Differential::zero(alg);
    }
    let blocks = alg.blocks();
    for _ in 0..40 {
        let shift = Shift::new(rng.gen_range(0..=1), -rng.gen_range(1..=top));
        if odd && shift.parity() != 1 {
            continue;
        }
        let mut values = Vec::new();
        let mut nonzero = false;
        for g in &model.generators {
            let target = g.degree.shift(shift).and_then(|t| blocks.get(&t));
            let v: SparseVec<F::Elem> = match target {
                Some(idx) if rng.gen_bool(0.6) => collect(f, idx.iter().map(|&c| (c, random_elem(f, rng))).collect()),
                _ => Vec::new(),
            };
            nonzero |= !v.is_empty();
            values.push(v);
        }
        if !nonzero {
            continue;
        }
        if let Ok(d) = model.derivation(shift, values) {
            return d;
        }
    }
    Differential::zero(alg)
}

/// A random `(1, r, r, 1)` profile model with `m ∈ {1, 2}` and a random
/// skew matrix, twisted by a random base change.
pub fn random_profile_model<F: Field, R: Rng>(field: &F, rng: &mut R) -> DgModel<F> {
    let r = rng.gen_range(1..=4);
    let m = rng.gen_range(1..=2);
    let mut s = Matrix::zeros(field, r, r);
    for i in 0..r {
        for j in i + 1..r {
            let v = random_elem(field, rng);
            s.set(i, j, v.clone());
            s.set(j, i, field.neg(&v));
        }
    }
    let model = betti_profile_model(field.clone(), m, &s).expect("skew differential is a derivation");
    random_twist(&model, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{PrimeField, Rationals};
    use crate::pd_algebra::{check_pd, euler_and_dim, homology, odd_congruence};
    use crate::report::Verdict;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn free_models_are_valid() {
        let q = Rationals;
        let m = FreeModel::new(
            q,
            vec![
                Generator::new("x", Bidegree::new(0, 1), 1),
                Generator::new("y", Bidegree::new(1, 1), 2),
            ],
        )
        .unwrap();
        m.algebra.validate().unwrap();
        assert_eq!(m.algebra.dim(), 6);
        let pd = check_pd(&m.algebra, &m.orientation).unwrap();
        assert!(pd.is_pd());
        assert_eq!(pd.formal_dim, 3);
    }

    #[test]
    fn odd_generators_cannot_square() {
        assert!(FreeModel::new(Rationals, vec![Generator::new("x", Bidegree::new(0, 3), 2)]).is_err());
    }

    #[test]
    fn sphere_torus_projective() {
        let q = Rationals;
        let (s, phi) = sphere_model(q, 2);
        assert_eq!(check_pd(&s, &phi).unwrap().formal_dim, 2);
        assert_eq!(euler_and_dim(&s), (2, 2));
        let (t, phi) = torus_model(q);
        assert!(check_pd(&t, &phi).unwrap().is_pd());
        assert_eq!(euler_and_dim(&t), (4, 0));
        let (p, phi) = projective_model(q, 2);
        assert!(check_pd(&p, &phi).unwrap().is_pd());
        assert_eq!(euler_and_dim(&p), (3, 3));
    }

    #[test]
    fn odd_example_numbers() {
        let model = odd_example(Rationals);
        model.algebra.validate().unwrap();
        let h = homology(&model.algebra, &model.differential, &model.orientation).unwrap();
        assert_eq!(h.dim, 2);
        let r = odd_congruence(&model.algebra, &model.differential, &model.orientation);
        assert_eq!((r.report.lhs, r.report.rhs), (6, 2));
        assert_eq!(r.report.verdict, Verdict::Pass);
        let g = r.gamma.unwrap();
        assert!(g.skew && g.nondegenerate);
        assert_eq!(g.quotient_dim, 2);
    }

    #[test]
    fn triple_sphere_numbers() {
        let model = triple_sphere_model(Rationals);
        let h = homology(&model.algebra, &model.differential, &model.orientation).unwrap();
        assert_eq!((model.algebra.dim(), h.dim), (8, 6));
        let r = odd_congruence(&model.algebra, &model.differential, &model.orientation);
        assert_eq!(r.report.verdict, Verdict::NotApplicable);
        assert!(!r.report.congruence_holds);
        let failed: Vec<&str> = r.report.failed_hypotheses().map(|h| h.name.as_str()).collect();
        assert_eq!(failed, vec!["A^{0,i} = 0 for even 0 < i ≤ m"]);
    }

    #[test]
    fn twist_preserves_structure() {
        let f = PrimeField::new(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let model = odd_example(f);
        let t = random_twist(&model, &mut rng);
        t.algebra.validate().unwrap();
        assert!(check_pd(&t.algebra, &t.orientation).unwrap().is_pd());
        check_derivation(&t.algebra, &t.differential).unwrap();
    }

    #[test]
    fn random_models_validate() {
        let f = PrimeField::new(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let m = random_free_model(&f, &mut rng, true, 24);
            m.algebra.validate().unwrap();
            let d = random_derivation(&m, &mut rng, false);
            check_derivation(&m.algebra, &d).unwrap();
        }
    }
}
