use super::*;
use crate::corpus;
use crate::exactalg::Matrix;
use crate::pd_algebra::models::{odd_example, sphere_model, triple_sphere_model};

/// Oracle for `dim T^*` when every block is trivial: the dimension of the
/// invariants, counted from `rank(g - 1)`.
fn invariant_dims(f: &corpus::Fixture) -> usize {
    let field = PrimeField::new(f.p()).unwrap();
    induced_cohomology_action(&f.complex, &f.action, &field)
        .iter()
        .map(|g| g.rows() - g.sub(&Matrix::identity(&field, g.rows())).rank())
        .sum()
}

fn points(n: usize) -> SimplicialComplex {
    let labels: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    SimplicialComplex::from_index_facets(labels, (0..n).map(|i| vec![i]).collect()).unwrap()
}

#[test]
fn theorem2_on_sphere_rotation() {
    let f = corpus::sphere_rotation(3);
    let r = check_theorem2(&f.complex, &f.action);
    let field = PrimeField::new(3).unwrap();
    assert_eq!(r.lhs as usize, betti_over(&points(2), &field).total());
    assert_eq!(r.rhs as usize, invariant_dims(&f));
    assert_eq!((r.lhs, r.rhs, r.verdict), (2, 2, Verdict::Pass));
}

#[test]
fn theorem2_on_torus_rotation() {
    let f = corpus::torus_rotation(3);
    let r = check_theorem2(&f.complex, &f.action);
    assert_eq!(r.rhs as usize, invariant_dims(&f));
    assert_eq!((r.lhs, r.rhs, r.verdict), (0, 4, Verdict::Pass));
}

#[test]
fn free_actions_are_not_applicable_and_violate() {
    for f in [corpus::free_pentagon(), corpus::free_s3()] {
        let r = check_theorem2(&f.complex, &f.action);
        assert_eq!(r.verdict, Verdict::NotApplicable, "{}", f.name);
        assert_eq!((r.lhs, r.rhs), (0, 2));
        assert!(!r.congruence_holds);
        let failed: Vec<&str> = r.failed_hypotheses().map(|h| h.name.as_str()).collect();
        assert_eq!(failed, vec!["X^G nonempty"]);
    }
}

#[test]
fn theorem1_even_and_odd_models() {
    let q = Rationals;
    let (s, phi) = sphere_model(q, 2);
    let r = check_theorem1_algebraic(&s, &Differential::zero(&s), &phi, None);
    assert_eq!((r.lhs, r.rhs, r.verdict), (2, 2, Verdict::Pass));

    let m = odd_example(q);
    let r = check_theorem1_algebraic(&m.algebra, &m.differential, &m.orientation, Some(2));
    assert_eq!((r.lhs, r.rhs, r.verdict), (6, 2, Verdict::Pass));
    let wrong = check_theorem1_algebraic(&m.algebra, &m.differential, &m.orientation, Some(4));
    assert_eq!(wrong.verdict, Verdict::Fail);

    let m = triple_sphere_model(q);
    let r = check_theorem1_algebraic(&m.algebra, &m.differential, &m.orientation, None);
    assert_eq!((r.lhs, r.rhs), (8, 6));
    assert!(!r.congruence_holds);
    assert_eq!(r.verdict, Verdict::NotApplicable);
}

#[test]
fn theorem1_needs_rational_coefficients() {
    let m = odd_example(PrimeField::new(5).unwrap());
    let r = check_theorem1_algebraic(&m.algebra, &m.differential, &m.orientation, None);
    assert_eq!(r.verdict, Verdict::NotApplicable);
}

#[test]
fn homology_manifolds() {
    let s = corpus::polygon_sphere(5);
    assert!(homology_manifold_check(&s, Coefficients::Local(3)).is_hm);
    let t = corpus::torus_rotation(3).complex;
    let r = homology_manifold_check(&t, Coefficients::Rational);
    assert!(r.is_hm && r.orientable);
    let w = homology_manifold_check(&corpus::wedge_of_spheres(), Coefficients::Rational);
    assert!(!w.is_hm);
    assert_eq!(w.failures, vec!["{w}"]);
}

#[test]
fn triangles_sharing_a_vertex_fail_there() {
    let x = SimplicialComplex::from_facets(&[vec!["a", "b", "v"], vec!["c", "d", "v"]], &["v", "a", "b", "c", "d"])
        .unwrap();
    let r = homology_manifold_check(&x, Coefficients::Rational);
    assert!(r.failures.contains(&"{v}".to_string()));
}

#[test]
fn projective_plane_is_not_orientable() {
    let r = homology_manifold_check(&SimplicialComplex::projective_plane(), Coefficients::Local(3));
    assert!(r.is_hm);
    assert!(!r.orientable);
}

#[test]
fn theorem4_pipeline() {
    let cases = [
        (corpus::sphere_rotation(5), 2, 2),
        (corpus::torus_rotation(5), 0, 4),
        (corpus::sphere_product_rotation(7), 4, 4),
    ];
    for (f, lhs, rhs) in cases {
        let r = check_theorem4(&f.complex, &f.action);
        assert_eq!((r.lhs, r.rhs, r.verdict), (lhs, rhs, Verdict::Pass), "{}", f.name);
    }
    // p = 3 does not exceed the four classes of the torus
    let f = corpus::torus_rotation(3);
    assert_eq!(check_theorem4(&f.complex, &f.action).verdict, Verdict::NotApplicable);
}

#[test]
fn even_codimension() {
    let f = corpus::sphere_rotation(3);
    let r = check_even_codim(&f.complex, &f.action);
    assert_eq!(r.components.len(), 2);
    assert!(r.components.iter().all(|c| c.dim == 0 && c.codim == 2));
    assert!(r.holds());

    let f = corpus::sphere_product_rotation(3);
    let r = check_even_codim(&f.complex, &f.action);
    let dims: Vec<usize> = r.components.iter().map(|c| c.dim).collect();
    assert_eq!(dims, vec![2, 2]);
    assert!(r.holds());

    let f = corpus::trivial("torus", corpus::torus_rotation(3).complex, 3);
    let r = check_even_codim(&f.complex, &f.action);
    assert_eq!(r.components.len(), 1);
    assert_eq!(r.components[0].codim, 0);
}

#[test]
fn smith_inequality() {
    let f = corpus::sphere_rotation(3);
    assert_eq!(
        smith_inequality_check(&f.complex, &f.action),
        SmithInequality {
            fixed_total: 2,
            total: 2
        }
    );
    let f = corpus::free_s3();
    assert!(smith_inequality_check(&f.complex, &f.action).holds());
    let f = corpus::sphere_product_rotation(3);
    let s = smith_inequality_check(&f.complex, &f.action);
    assert_eq!((s.fixed_total, s.total), (4, 4));
}

#[test]
fn routes_agree_on_trivial_actions() {
    for f in corpus::actions().into_iter().filter(|f| f.action.is_trivial()) {
        let a = check_theorem2(&f.complex, &f.action);
        let b = euler_route_check(&f.complex, &f.action);
        if b.applicable() {
            assert_eq!(a.verdict, b.verdict, "{}", f.name);
        }
    }
}

#[test]
fn theorem3_cyclic_case() {
    let f = corpus::sphere_rotation(5);
    let r = check_theorem3_cyclic(&f.complex, &f.action);
    assert_eq!((r.lhs, r.rhs, r.verdict), (2, 2, Verdict::Pass));
    let f = corpus::torus_rotation(3);
    assert_eq!(
        check_theorem3_cyclic(&f.complex, &f.action).verdict,
        Verdict::NotApplicable
    );
}
