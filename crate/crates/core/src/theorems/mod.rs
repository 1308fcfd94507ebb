//! End-to-end checks of the mod-4 congruences for `Z/p` actions, each
//! returning a hypothesis checklist instead of failing early.

mod manifold;

use crate::equivariant::group_cohomology_dims;
use crate::exactalg::{Field, PrimeField, Rationals};
use crate::group_action::{
    bockstein_witness, fixed_subcomplex, induced_cohomology_action, lefschetz_number, make_regular, tfr_decomposition,
    trivial_rational_action_check, GroupAction,
};
use crate::pd_algebra::{
    check_derivation, check_pd, euler_and_dim, homology, odd_congruence, BigradedAlgebra, Differential, Orientation,
};
use crate::report::{Hypothesis, TheoremReport, Verdict};
use crate::simplicial::{cohomology, pd_check, CellComplex, GradedBetti, SimplicialComplex};

pub use manifold::{homology_manifold_check, is_homology_sphere, Coefficients, HomologyManifoldReport};

/// The fixed set of the regularised action, with the number of
/// subdivisions that took.
fn fixed_set(x: &SimplicialComplex, action: &GroupAction) -> (SimplicialComplex, usize) {
    let (y, a, rounds) = make_regular(x, action);
    (fixed_subcomplex(&y, &a).expect("regular action"), rounds)
}

fn betti_over<F: Field>(x: &SimplicialComplex, field: &F) -> GradedBetti {
    cohomology(&x.cochain_complex(), field)
}

fn connected_hypothesis(x: &SimplicialComplex) -> Hypothesis {
    let c = x.connected_components().len();
    Hypothesis::new("X connected", c == 1, format!("{c} component(s)"))
}

/// PD hypothesis over `F_p` and the formal dimension when it holds.
fn pd_hypothesis(x: &SimplicialComplex, field: &PrimeField) -> (Hypothesis, Option<usize>) {
    let name = format!("{}-PD space", field.name());
    match pd_check(x, field) {
        Ok(r) if r.is_pd => {
            let n = r.formal_dim.expect("PD has a formal dimension");
            (
                Hypothesis::new(name, true, format!("formal dimension {n}, Betti {:?}", r.betti)),
                Some(n),
            )
        }
        Ok(r) => (Hypothesis::new(name, false, r.failures.join("; ")), None),
        Err(e) => (Hypothesis::new(name, false, e.to_string()), None),
    }
}

/// `dim H^*(X^G; F_p) ≡ dim T^* + dim R^*/(p-1) (mod 4)` when `X` is a
/// connected `F_p`-PD space without `Z/p` summands in its integral
/// cohomology, and either `n` is even or `n = 2m+1` with a nonempty fixed
/// set and `T^i`, `R^i` vanishing in the excluded low degrees.
pub fn check_theorem2(x: &SimplicialComplex, action: &GroupAction) -> TheoremReport {
    let p = action.p();
    let field = PrimeField::new(p).expect("validated prime");
    let mut hyps = vec![connected_hypothesis(x)];
    let (pd, n) = pd_hypothesis(x, &field);
    hyps.push(pd);
    let tfr = tfr_decomposition(x, action);
    hyps.push(Hypothesis::new(
        format!("no Z/{p} summand in H^*(X; Z_({p}))"),
        tfr.bockstein,
        match bockstein_witness(x, p) {
            Some((k, d)) => format!("divisor {d} in degree {k}"),
            None => "no elementary divisor of valuation 1".to_string(),
        },
    ));
    let (fixed, rounds) = fixed_set(x, action);
    let lhs = betti_over(&fixed, &field).total();
    match n {
        Some(n) if n % 2 == 0 => hyps.push(Hypothesis::new("n even", true, format!("n = {n}"))),
        Some(n) => {
            let m = n / 2;
            hyps.push(Hypothesis::new(
                "X^G nonempty",
                !fixed.is_empty(),
                format!("{} fixed vertices", fixed.vertex_count()),
            ));
            let t_bad: Vec<usize> = (1..=m)
                .filter(|&i| i % 2 == 0 && tfr.degrees.get(i).is_some_and(|d| d.t > 0))
                .collect();
            hyps.push(Hypothesis::new(
                "T^i = 0 for even 0 < i ≤ m",
                t_bad.is_empty(),
                format!("m = {m}, nonzero in {t_bad:?}"),
            ));
            let r_bad: Vec<usize> = (1..=m)
                .filter(|&i| i % 2 == 1 && tfr.degrees.get(i).is_some_and(|d| d.r > 0))
                .collect();
            hyps.push(Hypothesis::new(
                "R^i = 0 for odd 0 < i ≤ m",
                r_bad.is_empty(),
                format!("m = {m}, nonzero in {r_bad:?}"),
            ));
        }
        None => hyps.push(Hypothesis::new(
            "formal dimension condition",
            false,
            "no formal dimension",
        )),
    }
    let rhs = tfr.dim_t() + tfr.r_blocks();
    let mut report = TheoremReport::new("theorem2", hyps, lhs as i64, rhs as i64);
    let t: Vec<usize> = tfr.degrees.iter().map(|d| d.t).collect();
    let f: Vec<usize> = tfr.degrees.iter().map(|d| d.f).collect();
    let r: Vec<usize> = tfr.degrees.iter().map(|d| d.r).collect();
    report
        .notes
        .push(format!("blocks per degree: T {t:?}, F {f:?}, R {r:?}"));
    if tfr.has_other() {
        report
            .notes
            .push("blocks of sizes outside {1, p-1, p} present".to_string());
    }
    if rounds > 0 {
        report
            .notes
            .push(format!("fixed set computed after {rounds} subdivision(s)"));
    }
    report
}

/// The `G = Z/p` case of the even-dimensional `F_p` congruence:
/// `dim H^*(X^G; F_p) ≡ dim H^*(X; F_p)` when `p > dim H^*(X; F_p)`.
pub fn check_theorem3_cyclic(x: &SimplicialComplex, action: &GroupAction) -> TheoremReport {
    let p = action.p();
    let field = PrimeField::new(p).expect("validated prime");
    let mut hyps = vec![connected_hypothesis(x)];
    let (pd, n) = pd_hypothesis(x, &field);
    hyps.push(pd);
    hyps.push(match n {
        Some(n) => Hypothesis::new("n even", n % 2 == 0, format!("n = {n}")),
        None => Hypothesis::new("n even", false, "no formal dimension"),
    });
    let total = betti_over(x, &field).total();
    hyps.push(Hypothesis::new(
        format!("p > dim H^*(X; {})", field.name()),
        p as usize > total,
        format!("{p} vs {total}"),
    ));
    let (fixed, _) = fixed_set(x, action);
    let lhs = betti_over(&fixed, &field).total();
    let mut report = TheoremReport::new("theorem3-cyclic", hyps, lhs as i64, total as i64);
    report.notes.push(format!(
        "action on H^*(X; Q) trivial: {}",
        trivial_rational_action_check(x, action)
    ));
    report
}

/// `dim H^*(X^G; Q) ≡ dim H^*(X; Q)` for an even-dimensional orientable
/// `Z_(p)`-homology manifold with `p > dim H^*(X; F_p)`.
pub fn check_theorem4(x: &SimplicialComplex, action: &GroupAction) -> TheoremReport {
    let p = action.p();
    let field = PrimeField::new(p).expect("validated prime");
    let mut hyps = vec![connected_hypothesis(x)];
    let d = x.dim();
    hyps.push(Hypothesis::new(
        "even dimension",
        d.is_some_and(|d| d % 2 == 0) && x.is_pure(),
        match d {
            Some(d) => format!("dim {d}, pure {}", x.is_pure()),
            None => "empty".to_string(),
        },
    ));
    let hm = homology_manifold_check(x, Coefficients::Local(p));
    hyps.push(Hypothesis::new(
        format!("orientable Z_({p})-homology manifold"),
        hm.is_hm && hm.orientable,
        format!(
            "links ok {}, orientable {}{}",
            hm.is_hm,
            hm.orientable,
            hm.failures
                .first()
                .map(|f| format!(", first bad link at {f}"))
                .unwrap_or_default()
        ),
    ));
    let total_p = betti_over(x, &field).total();
    hyps.push(Hypothesis::new(
        format!("p > dim H^*(X; {})", field.name()),
        p as usize > total_p,
        format!("{p} vs {total_p}"),
    ));
    let (fixed, _) = fixed_set(x, action);
    let lhs = betti_over(&fixed, &Rationals).total();
    let rhs = betti_over(x, &Rationals).total();
    TheoremReport::new("theorem4", hyps, lhs as i64, rhs as i64)
}

/// The congruence through Euler characteristics:
/// `dim H(X^G) ≡ χ(X^G) = Λ(σ) = χ(X) ≡ dim H(X)` over `F_p`, for an
/// even-dimensional PD space whose rational cohomology the action fixes.
/// Every link of the chain is recorded and must hold for a PASS.
pub fn euler_route_check(x: &SimplicialComplex, action: &GroupAction) -> TheoremReport {
    let p = action.p();
    let field = PrimeField::new(p).expect("validated prime");
    let mut hyps = vec![connected_hypothesis(x)];
    let (pd, n) = pd_hypothesis(x, &field);
    hyps.push(pd);
    hyps.push(match n {
        Some(n) => Hypothesis::new("n even", n % 2 == 0, format!("n = {n}")),
        None => Hypothesis::new("n even", false, "no formal dimension"),
    });
    let trivial = trivial_rational_action_check(x, action);
    hyps.push(Hypothesis::new("trivial action on H^*(X; Q)", trivial, ""));
    let (fixed, _) = fixed_set(x, action);
    let hf = betti_over(&fixed, &field);
    let hx = betti_over(x, &field);
    let lambda = lefschetz_number(x, action);
    let chi_x = x.euler_characteristic();
    let chi_f = fixed.euler_characteristic();
    let steps = [
        ("dim H(X^G) ≡ χ(X^G)", (hf.total() as i64 - chi_f).rem_euclid(4) == 0),
        ("χ(X^G) = Λ(σ)", chi_f == lambda),
        ("Λ(σ) = χ(X)", lambda == chi_x),
        ("χ(X) ≡ dim H(X)", (chi_x - hx.total() as i64).rem_euclid(4) == 0),
    ];
    let mut report = TheoremReport::new("euler-route", hyps, hf.total() as i64, hx.total() as i64);
    report
        .notes
        .push(format!("χ(X^G) = {chi_f}, Λ(σ) = {lambda}, χ(X) = {chi_x}"));
    for (name, ok) in steps {
        report.notes.push(format!("{name}: {ok}"));
        if report.applicable() && !ok {
            report.verdict = Verdict::Fail;
        }
    }
    report
}

/// Algebraic form of the circle-action congruence. `(A, φ)` models the
/// rational cohomology of `X` in `A^{0,*}` and `δ` the evaluated
/// differential. Even `n` asserts `dim A ≡ χ(A)`; odd `n` asserts
/// `dim A ≡ dim H(A, δ)` and, when `fixed_set_dim` is given, that it equals
/// `dim H(A, δ)`.
pub fn check_theorem1_algebraic<F: Field>(
    alg: &BigradedAlgebra<F>,
    delta: &Differential<F>,
    phi: &Orientation<F>,
    fixed_set_dim: Option<usize>,
) -> TheoremReport {
    let f = alg.field();
    let mut hyps = vec![Hypothesis::new(
        "rational coefficients",
        f.characteristic() == 0,
        f.name(),
    )];
    let stray = alg.degrees().iter().filter(|d| d.eps != 0).count();
    hyps.push(Hypothesis::new(
        "A concentrated in A^{0,*}",
        stray == 0,
        format!("{stray} basis elements with ε = 1"),
    ));
    let pd = check_pd(alg, phi);
    let n = pd.as_ref().ok().map(|r| r.formal_dim);
    let homology_dim = check_derivation(alg, delta)
        .ok()
        .and_then(|_| homology(alg, delta, phi).ok())
        .map(|h| h.dim);
    let mut report = match n {
        Some(n) if n % 2 == 0 => {
            let r = pd.expect("checked");
            hyps.push(Hypothesis::new(
                "connected PD algebra",
                r.is_pd(),
                format!("connected {}, nondegenerate {}", r.connected, r.nondegenerate),
            ));
            hyps.push(Hypothesis::new("n even", true, format!("n = {n}")));
            let (dim, chi) = euler_and_dim(alg);
            TheoremReport::new("theorem1-alg", hyps, dim as i64, chi)
        }
        Some(_) => {
            let odd = odd_congruence(alg, delta, phi);
            hyps.extend(odd.report.hypotheses.iter().cloned());
            let mut r = TheoremReport::new("theorem1-alg", hyps, odd.report.lhs, odd.report.rhs);
            r.notes = odd.report.notes.clone();
            if r.applicable() && odd.report.verdict == Verdict::Fail {
                r.verdict = Verdict::Fail;
            }
            r
        }
        None => {
            let reason = pd.err().map(|e| e.to_string()).unwrap_or_default();
            hyps.push(Hypothesis::new("connected PD algebra", false, reason));
            let (dim, _) = euler_and_dim(alg);
            TheoremReport::new("theorem1-alg", hyps, dim as i64, homology_dim.unwrap_or(0) as i64)
        }
    };
    if let (Some(expected), Some(h)) = (fixed_set_dim, homology_dim) {
        report
            .notes
            .push(format!("dim H(A, δ) = {h}, fixed set total Betti {expected}"));
        if report.applicable() && n.is_some_and(|n| n % 2 == 1) && expected != h {
            report.verdict = Verdict::Fail;
        }
    }
    report
}

/// One connected component of the fixed set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedComponent {
    pub vertices: Vec<String>,
    pub dim: usize,
    pub codim: usize,
    pub homology_manifold: bool,
}

impl FixedComponent {
    pub fn even_codim(&self) -> bool {
        self.codim.is_multiple_of(2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenCodimReport {
    pub ambient_dim: usize,
    pub components: Vec<FixedComponent>,
}

impl EvenCodimReport {
    /// Every component is an `F_p`-homology manifold of even codimension.
    pub fn holds(&self) -> bool {
        self.components.iter().all(|c| c.homology_manifold && c.even_codim())
    }
}

pub fn check_even_codim(x: &SimplicialComplex, action: &GroupAction) -> EvenCodimReport {
    let (y, a, _) = make_regular(x, action);
    let fixed = fixed_subcomplex(&y, &a).expect("regular action");
    let ambient_dim = x.dim().unwrap_or(0);
    let components = fixed
        .connected_components()
        .into_iter()
        .map(|vs| {
            let c = fixed.induced_subcomplex(&vs);
            let dim = c.dim().unwrap_or(0);
            FixedComponent {
                vertices: vs.iter().map(|&v| fixed.label(v).to_string()).collect(),
                dim,
                codim: ambient_dim.saturating_sub(dim),
                homology_manifold: homology_manifold_check(&c, Coefficients::Prime(a.p())).is_hm,
            }
        })
        .collect();
    EvenCodimReport {
        ambient_dim,
        components,
    }
}

/// `dim H^*(X^G; F_p) ≤ dim H^*(X; F_p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SmithInequality {
    pub fixed_total: usize,
    pub total: usize,
}

impl SmithInequality {
    pub fn holds(&self) -> bool {
        self.fixed_total <= self.total
    }

    pub fn check_line(&self) -> String {
        format!(
            "CHECK smith-inequality: {} — {} vs {} (≤)",
            if self.holds() { "PASS" } else { "FAIL" },
            self.fixed_total,
            self.total
        )
    }
}

pub fn smith_inequality_check(x: &SimplicialComplex, action: &GroupAction) -> SmithInequality {
    let field = PrimeField::new(action.p()).expect("validated prime");
    let (fixed, _) = fixed_set(x, action);
    SmithInequality {
        fixed_total: betti_over(&fixed, &field).total(),
        total: betti_over(x, &field).total(),
    }
}

/// Per degree: the group cohomology of `H^μ(X; F_p)` after setting `s = 0`
/// next to the block counts, as `((even, odd), (t, r))`.
pub fn e2_consistency(x: &SimplicialComplex, action: &GroupAction) -> Vec<((usize, usize), (usize, usize))> {
    let field = PrimeField::new(action.p()).expect("validated prime");
    let tfr = tfr_decomposition(x, action);
    induced_cohomology_action(x, action, &field)
        .iter()
        .zip(&tfr.degrees)
        .map(|(g, d)| {
            let c = group_cohomology_dims(g).expect("order p");
            ((c.even, c.odd), (d.t, d.r))
        })
        .collect()
}

#[cfg(test)]
mod tests;
