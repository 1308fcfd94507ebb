//! Property tests for the algebraic and topological invariants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use modfour::cli::{parse, serialize, InputDocument};
use modfour::corpus;
use modfour::equivariant::{group_cohomology_dims, EquivariantComplex};
use modfour::exactalg::{
    jordan_block, p_valuation, smith_normal_form, smith_normal_form_with_transforms, Field, IntMatrix, Matrix,
    PrimeField, Rationals,
};
use modfour::pd_algebra::models::{random_derivation, random_free_model, random_twist, DgModel};
use modfour::pd_algebra::{check_pd, euler_and_dim, homology, lemma_even_congruence, Bidegree};
use modfour::simplicial::{cohomology, integral_cohomology, CellComplex, SimplicialComplex};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

/// Complexes on up to seven vertices given by random facets.
fn complex_strategy() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::btree_set(0usize..7, 1..=4), 1..6).prop_map(|facets| {
        let mut used: Vec<usize> = facets.iter().flatten().copied().collect();
        used.sort_unstable();
        used.dedup();
        let labels = used.iter().map(|v| format!("v{v}")).collect();
        let facets = facets
            .iter()
            .map(|f| f.iter().map(|v| used.binary_search(v).unwrap()).collect())
            .collect();
        SimplicialComplex::from_index_facets(labels, facets).unwrap()
    })
}

fn small_complex(i: usize) -> SimplicialComplex {
    match i {
        0 => SimplicialComplex::point(),
        1 => SimplicialComplex::polygon(3),
        2 => SimplicialComplex::polygon(5),
        3 => SimplicialComplex::simplex_boundary(3),
        4 => SimplicialComplex::simplex(2),
        _ => SimplicialComplex::from_index_facets(vec!["a".into(), "b".into()], vec![vec![0], vec![1]]).unwrap(),
    }
}

fn det(m: &[Vec<BigInt>]) -> BigInt {
    if m.is_empty() {
        return BigInt::from(1);
    }
    let mut total = BigInt::zero();
    for (c, x) in m[0].iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != c)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = x * det(&minor);
        total = if c % 2 == 0 { total + term } else { total - term };
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect())
        .collect()
}

/// gcd of all `k × k` minors: the `k`-th determinantal divisor.
fn determinantal_divisor(rows: &[Vec<i64>], k: usize) -> BigInt {
    let (r, c) = (rows.len(), rows[0].len());
    let mut g = BigInt::zero();
    for rs in subsets(r, k) {
        for cs in subsets(c, k) {
            let m: Vec<Vec<BigInt>> = rs
                .iter()
                .map(|&i| cs.iter().map(|&j| BigInt::from(rows[i][j])).collect())
                .collect();
            g = g.gcd(&det(&m));
        }
    }
    g
}

fn dims<F: Field>(m: &DgModel<F>) -> (usize, i64) {
    euler_and_dim(&m.algebra)
}

fn even_lemma_holds<F: Field>(field: F, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = random_free_model(&field, &mut rng, true, 24).with_zero_differential();
    let m = random_twist(&m, &mut rng);
    let r = lemma_even_congruence(&m.algebra, &m.orientation).unwrap();
    let (dim, chi) = dims(&m);
    assert_eq!((r.lhs, r.rhs), (dim as i64, chi));
    assert!(r.congruence_holds, "dim {dim}, χ {chi} over {}", field.name());
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn smith_divisors_match_determinantal_divisors(
        rows in prop::collection::vec(prop::collection::vec(-6i64..=6, 3), 1..=3)
    ) {
        let m = IntMatrix::from_rows(&rows);
        let s = smith_normal_form(&m);
        let t = smith_normal_form_with_transforms(&m);
        prop_assert_eq!(&s.divisors, &t.divisors);
        let d = IntMatrix::diagonal(m.rows(), m.cols(), &t.divisors);
        prop_assert_eq!(t.left.as_ref().unwrap().mul(&m).mul(t.right.as_ref().unwrap()), d);
        let mut prefix = BigInt::from(1);
        for (k, dk) in s.divisors.iter().enumerate() {
            prop_assert!(!dk.is_negative());
            prefix *= dk;
            prop_assert_eq!(&prefix, &determinantal_divisor(&rows, k + 1));
        }
    }

    #[test]
    fn euler_characteristic_and_universal_coefficients(x in complex_strategy(), pi in 0usize..3) {
        let p = [2u64, 3, 5][pi];
        let cx = x.cochain_complex();
        let q = cohomology(&cx, &Rationals);
        let fp = cohomology(&cx, &PrimeField::new(p).unwrap());
        prop_assert_eq!(q.euler_characteristic(), x.euler_characteristic());
        prop_assert_eq!(fp.euler_characteristic(), x.euler_characteristic());
        let z = integral_cohomology(&cx);
        let divisible = |k: usize| z.torsion.get(k).map_or(0, |t| t.iter().filter(|d| p_valuation(d, p) > 0).count());
        for k in 0..cx.len() {
            prop_assert_eq!(z.get(k), q.get(k));
            prop_assert_eq!(fp.get(k), q.get(k) + divisible(k) + divisible(k + 1));
        }
    }

    #[test]
    fn kunneth(i in 0usize..6, j in 0usize..6) {
        let (a, b) = (small_complex(i), small_complex(j));
        let q = Rationals;
        let ba = cohomology(&a.cochain_complex(), &q);
        let bb = cohomology(&b.cochain_complex(), &q);
        let prod = cohomology(&a.product(&b).cochain_complex(), &q);
        let top = ba.betti.len() + bb.betti.len();
        for n in 0..top {
            let expected: usize = (0..=n).map(|k| ba.get(k) * bb.get(n - k)).sum();
            prop_assert_eq!(prod.get(n), expected, "degree {}", n);
        }
    }

    #[test]
    fn block_profile(sizes in prop::collection::vec(1usize..=5, 1..4), seed in any::<u64>()) {
        let p = 5u64;
        let f = PrimeField::new(p).unwrap();
        let mut n = Matrix::zeros(&f, 0, 0);
        for &s in &sizes {
            n = n.direct_sum(&jordan_block(&f, s));
        }
        let g = n.add(&Matrix::identity(&f, n.rows()));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let change = loop {
            use rand::Rng;
            let d = g.rows();
            let rows = (0..d).map(|_| (0..d).map(|_| f.from_i64(rng.gen_range(0..5))).collect()).collect();
            let c = Matrix::from_rows(&f, rows);
            if c.is_invertible() {
                break c;
            }
        };
        let g = change.mul(&g).mul(&change.inverse().unwrap());
        let dims = group_cohomology_dims(&g).unwrap();
        let expected = sizes.iter().fold((0, 0), |(e, o), &k| match k {
            1 => (e + 1, o),
            k if k == p as usize - 1 => (e, o + 1),
            k if k == p as usize => (e, o),
            _ => (e + 1, o + 1),
        });
        prop_assert_eq!((dims.even, dims.odd), expected);
        // positive degrees: every non-free block contributes one class of each parity
        let non_free = sizes.iter().filter(|&&k| k < p as usize).count();
        prop_assert_eq!((dims.raw_even, dims.raw_odd), (non_free, non_free));
    }
}

proptest! {
    #![proptest_config(config(100))]

    #[test]
    fn even_lemma_over_q(seed in any::<u64>()) { even_lemma_holds(Rationals, seed); }

    #[test]
    fn even_lemma_over_f3(seed in any::<u64>()) { even_lemma_holds(PrimeField::new(3).unwrap(), seed); }

    #[test]
    fn even_lemma_over_f5(seed in any::<u64>()) { even_lemma_holds(PrimeField::new(5).unwrap(), seed); }

    #[test]
    fn even_lemma_over_f7(seed in any::<u64>()) { even_lemma_holds(PrimeField::new(7).unwrap(), seed); }

    #[test]
    fn poincare_symmetry_of_blocks(seed in any::<u64>(), even in any::<bool>()) {
        let f = PrimeField::new(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_free_model(&f, &mut rng, even, 24);
        let n = check_pd(&m.algebra, &m.orientation).unwrap().formal_dim;
        for (d, idx) in m.algebra.blocks() {
            prop_assert_eq!(idx.len(), m.algebra.block_dim(Bidegree::new(d.eps, n - d.j)));
        }
    }

    #[test]
    fn homology_is_zero_or_pd_of_the_same_dimension(seed in any::<u64>()) {
        let q = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_free_model(&q, &mut rng, seed % 2 == 0, 24);
        let delta = random_derivation(&m, &mut rng, false);
        let n = check_pd(&m.algebra, &m.orientation).unwrap().formal_dim;
        let h = homology(&m.algebra, &delta, &m.orientation).unwrap();
        match (h.algebra, h.orientation) {
            (Some(ha), Some(hphi)) => {
                let r = check_pd(&ha, &hphi).unwrap();
                prop_assert!(r.is_pd());
                prop_assert_eq!(r.formal_dim, n);
            }
            _ => prop_assert_eq!(h.dim, 0),
        }
    }

    #[test]
    fn odd_differentials_preserve_euler_characteristic(seed in any::<u64>()) {
        let f = PrimeField::new(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_free_model(&f, &mut rng, seed % 2 == 0, 24);
        let delta = random_derivation(&m, &mut rng, true);
        let h = homology(&m.algebra, &delta, &m.orientation).unwrap();
        let (_, chi) = euler_and_dim(&m.algebra);
        let h_chi = h.algebra.as_ref().map_or(0, |a| euler_and_dim(a).1);
        prop_assert_eq!(chi, h_chi);
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn equivariant_betti_is_two_periodic(i in 0usize..6, shift in 0usize..3) {
        let f = match i {
            0 => corpus::free_pentagon(),
            1 => corpus::sphere_rotation(3),
            2 => corpus::theta_rotation(3),
            3 => corpus::bouquet_rotation(3),
            4 => corpus::free_s3(),
            _ => corpus::trivial("circle", SimplicialComplex::polygon(3), 5),
        };
        let e = EquivariantComplex::new(&f.complex, &f.action);
        let n = f.complex.dim().unwrap() + 1 + shift;
        prop_assert_eq!(e.betti(n), e.betti(n + 2));
        prop_assert!(e.squares_to_zero(n));
    }

    #[test]
    fn documents_round_trip(x in complex_strategy(), p in prop::sample::select(vec![3u64, 5, 7])) {
        let doc = InputDocument::from_fixture(&corpus::trivial("random", x, p));
        let text = serialize(&doc);
        prop_assert_eq!(serialize(&parse(&text).unwrap()), text);
    }
}
