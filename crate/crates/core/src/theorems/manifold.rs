use crate::exactalg::{p_valuation, PrimeField, Rationals};
use crate::group_action::simplex_label;
use crate::simplicial::{cohomology, integral_cohomology, CellComplex, GradedBetti, SimplicialComplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Rational,
    /// Integers localised at `p`: rational Betti numbers plus no `p`-torsion.
    Local(u64),
    /// The field `F_p`.
    Prime(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyManifoldReport {
    /// Every link is a homology sphere of the complementary dimension.
    pub is_hm: bool,
    /// Connected with one-dimensional top rational cohomology and no
    /// `p`-torsion in the top integral degree (for `Local(p)`).
    pub orientable: bool,
    /// Simplices with a bad link.
    pub failures: Vec<String>,
}

fn sphere_betti(m: usize, b: &GradedBetti) -> bool {
    let top = b.betti.len().max(m + 1);
    (0..top).all(|k| {
        let expected = match (k, m) {
            (0, 0) => 2,
            (0, _) => 1,
            (k, m) if k == m => 1,
            _ => 0,
        };
        b.get(k) == expected
    })
}

/// Whether `x` has the cohomology of `S^m` over the coefficients; the empty
/// complex is the sphere of dimension `-1`.
pub fn is_homology_sphere(x: &SimplicialComplex, m: isize, coefficients: Coefficients) -> bool {
    if m < 0 {
        return m == -1 && x.is_empty();
    }
    if x.is_empty() {
        return false;
    }
    let m = m as usize;
    let cx = x.cochain_complex();
    match coefficients {
        Coefficients::Rational => sphere_betti(m, &cohomology(&cx, &Rationals)),
        Coefficients::Prime(p) => sphere_betti(m, &cohomology(&cx, &PrimeField::new(p).expect("prime"))),
        Coefficients::Local(p) => {
            let z = integral_cohomology(&cx);
            sphere_betti(m, &z) && z.torsion.iter().flatten().all(|d| p_valuation(d, p) == 0)
        }
    }
}

/// Check that the link of every `k`-simplex is a homology
/// `(d - k - 1)`-sphere, `d = dim X`.
pub fn homology_manifold_check(x: &SimplicialComplex, coefficients: Coefficients) -> HomologyManifoldReport {
    let Some(d) = x.dim() else {
        return HomologyManifoldReport {
            is_hm: false,
            orientable: false,
            failures: vec!["empty complex".to_string()],
        };
    };
    let mut failures = Vec::new();
    for k in 0..=d {
        for s in x.simplices(k) {
            let m = d as isize - k as isize - 1;
            if !is_homology_sphere(&x.link(s), m, coefficients) {
                failures.push(simplex_label(x, s));
            }
        }
    }
    let cx = x.cochain_complex();
    let orientable = x.is_connected()
        && cohomology(&cx, &Rationals).get(d) == 1
        && match coefficients {
            Coefficients::Local(p) => integral_cohomology(&cx).torsion[d]
                .iter()
                .all(|t| p_valuation(t, p) == 0),
            Coefficients::Prime(p) => cohomology(&cx, &PrimeField::new(p).expect("prime")).get(d) == 1,
            Coefficients::Rational => true,
        };
    HomologyManifoldReport {
        is_hm: failures.is_empty(),
        orientable,
        failures,
    }
}
