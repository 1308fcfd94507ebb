//! Named complexes and actions used by the suite, the tests and the
//! examples.
//!
//! Rotations act on polygons `0 → 1 → … → n-1 → 0`. Products that carry a
//! rotation on the left factor are triangulated with
//! [`cyclic_local_order`] so the rotation stays simplicial.

use crate::group_action::{validate_action, GroupAction, QuotientComplex};
use crate::simplicial::{cyclic_local_order, SimplicialComplex};

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub complex: SimplicialComplex,
    pub action: GroupAction,
}

impl Fixture {
    fn new(name: impl Into<String>, complex: SimplicialComplex, perm: Vec<usize>, p: u64) -> Self {
        let action = validate_action(&complex, &perm, p).expect("corpus action is valid");
        Fixture {
            name: name.into(),
            complex,
            action,
        }
    }

    pub fn p(&self) -> u64 {
        self.action.p()
    }
}

/// Rotate the first `n` vertices cyclically and fix the remaining `extra`.
fn rotate(n: usize, extra: usize) -> Vec<usize> {
    (0..n).map(|v| (v + 1) % n).chain(n..n + extra).collect()
}

/// `(x, y) ↦ (σx, y)` on a product with `ny` right-hand vertices.
fn rotate_left_factor(left: &[usize], ny: usize) -> Vec<usize> {
    (0..left.len() * ny).map(|v| left[v / ny] * ny + v % ny).collect()
}

/// Suspension of the `n`-gon: polygon vertices `0..n`, then `N`, `S`.
pub fn polygon_sphere(n: usize) -> SimplicialComplex {
    SimplicialComplex::polygon(n).suspension()
}

/// Free rotation of the pentagon, `p = 5`.
pub fn free_pentagon() -> Fixture {
    Fixture::new("free-pentagon", SimplicialComplex::polygon(5), rotate(5, 0), 5)
}

/// Rotation of the suspended `p`-gon fixing both poles.
pub fn sphere_rotation(p: u64) -> Fixture {
    let n = p as usize;
    Fixture::new(format!("sphere-rotation-{p}"), polygon_sphere(n), rotate(n, 2), p)
}

/// The `p`-gon times a triangle, rotating the polygon.
pub fn torus_rotation(p: u64) -> Fixture {
    let n = p as usize;
    let c = SimplicialComplex::polygon(n);
    let t = c.product_with_local_order(&SimplicialComplex::polygon(3), cyclic_local_order(n));
    Fixture::new(
        format!("torus-rotation-{p}"),
        t,
        rotate_left_factor(&rotate(n, 0), 3),
        p,
    )
}

/// Suspended `p`-gon times suspended triangle, rotating the left sphere.
/// The fixed set is two copies of the right sphere.
pub fn sphere_product_rotation(p: u64) -> Fixture {
    let n = p as usize;
    let x = polygon_sphere(n).product_with_local_order(&polygon_sphere(3), cyclic_local_order(n));
    Fixture::new(
        format!("s2xs2-rotation-{p}"),
        x,
        rotate_left_factor(&rotate(n, 2), 5),
        p,
    )
}

/// Join of two triangles (a 3-sphere) rotated in both factors, `p = 3`.
pub fn free_s3() -> Fixture {
    let x = SimplicialComplex::polygon(3).join(&SimplicialComplex::polygon(3));
    Fixture::new("free-s3", x, vec![1, 2, 0, 4, 5, 3], 3)
}

/// Two poles joined through `p` middle vertices, rotating the middle:
/// `H^1` is the augmentation kernel of the group ring.
pub fn theta_rotation(p: u64) -> Fixture {
    let n = p as usize;
    let mut labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    labels.extend(["N".to_string(), "S".to_string()]);
    let facets = (0..n).flat_map(|i| [vec![i, n], vec![i, n + 1]]).collect();
    let x = SimplicialComplex::from_index_facets(labels, facets).expect("valid graph");
    Fixture::new(format!("theta-rotation-{p}"), x, rotate(n, 2), p)
}

/// `p` triangles sharing the vertex `c`, permuted cyclically: `H^1` is
/// free over the group ring.
pub fn bouquet_rotation(p: u64) -> Fixture {
    let n = p as usize;
    let mut labels = vec!["c".to_string()];
    for i in 0..n {
        labels.push(format!("x{i}"));
        labels.push(format!("y{i}"));
    }
    let facets = (0..n)
        .flat_map(|i| {
            let (x, y) = (1 + 2 * i, 2 + 2 * i);
            [vec![0, x], vec![0, y], vec![x, y]]
        })
        .collect();
    let x = SimplicialComplex::from_index_facets(labels, facets).expect("valid graph");
    let perm = (0..1 + 2 * n)
        .map(|v| if v == 0 { 0 } else { 1 + (v - 1 + 2) % (2 * n) })
        .collect();
    Fixture::new(format!("bouquet-rotation-{p}"), x, perm, p)
}

pub fn trivial(name: &str, complex: SimplicialComplex, p: u64) -> Fixture {
    let id = (0..complex.vertex_count()).collect();
    Fixture::new(format!("trivial-{name}-{p}"), complex, id, p)
}

/// Every action in the corpus.
pub fn actions() -> Vec<Fixture> {
    let c3 = SimplicialComplex::polygon(3);
    vec![
        free_pentagon(),
        sphere_rotation(3),
        sphere_rotation(5),
        torus_rotation(3),
        torus_rotation(5),
        sphere_product_rotation(3),
        sphere_product_rotation(7),
        free_s3(),
        theta_rotation(3),
        theta_rotation(5),
        bouquet_rotation(3),
        trivial("sphere", polygon_sphere(3), 3),
        trivial("torus", c3.product(&c3), 3),
        trivial("s2xs2", polygon_sphere(3).product(&polygon_sphere(3)), 5),
        trivial("circle", c3.clone(), 7),
    ]
}

/// Two tetrahedron boundaries glued at a vertex: a homology manifold
/// everywhere except the wedge point.
pub fn wedge_of_spheres() -> SimplicialComplex {
    let facets: Vec<Vec<&str>> = vec![
        vec!["a", "b", "c"],
        vec!["a", "b", "w"],
        vec!["a", "c", "w"],
        vec!["b", "c", "w"],
        vec!["d", "e", "f"],
        vec!["d", "e", "w"],
        vec!["d", "f", "w"],
        vec!["e", "f", "w"],
    ];
    let order = ["w", "a", "b", "c", "d", "e", "f"];
    SimplicialComplex::from_facets(&facets, &order).expect("valid wedge")
}

/// Quotient of the free 3-sphere action: a lens space with `Z/3` torsion.
pub fn lens_space() -> QuotientComplex {
    let f = free_s3();
    crate::group_action::quotient_complex(&f.complex, &f.action).expect("free action")
}
