//! Command execution. Every command renders a deterministic text report
//! and an exit code.

use std::fmt::Write as _;

use crate::corpus;
use crate::equivariant::{equivariant_betti, localization_check};
use crate::exactalg::{Field, FieldKind, PrimeField, Rationals};
use crate::group_action::{
    bockstein_witness, fixed_subcomplex, lefschetz_number, make_regular, tfr_decomposition, GroupAction,
};
use crate::pd_algebra::models::{odd_example, triple_sphere_model, DgModel};
use crate::pd_algebra::{check_derivation, check_pd, homology, lemma_even_congruence, odd_congruence};
use crate::report::{TheoremReport, Verdict};
use crate::simplicial::{cohomology, integral_cohomology, pd_check, CellComplex, SimplicialComplex};
use crate::theorems::{
    check_even_codim, check_theorem1_algebraic, check_theorem2, check_theorem4, euler_route_check,
    homology_manifold_check, smith_inequality_check, Coefficients,
};

use super::format::{AlgebraDecl, InputDocument};

macro_rules! with_field {
    ($kind:expr, |$f:ident| $body:expr) => {
        match $kind {
            FieldKind::Rational => {
                let $f = Rationals;
                $body
            }
            FieldKind::Prime(p) => {
                let $f = PrimeField::new(p).expect("validated prime");
                $body
            }
        }
    };
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Cohomology,
    PdCheck,
    FixedSet,
    Lefschetz,
    Tfr,
    Bockstein,
    EquivariantBetti,
    Localization,
    #[value(name = "theorem1-alg")]
    Theorem1Alg,
    Theorem2,
    Theorem4,
    AlgebraCheck,
    Suite,
}

#[derive(Clone, Debug, Default)]
pub struct Flags {
    pub p: Option<u64>,
    pub field: Option<FieldKind>,
    pub strict: bool,
    pub degrees: Option<(usize, usize)>,
    pub complex: Option<String>,
    pub action: Option<String>,
    pub algebra: Option<String>,
    pub fixed_set_dim: Option<usize>,
}

/// Problems with the request itself; these exit with code 3.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RunError {
    #[error("no {kind} named `{name}`")]
    Missing { kind: &'static str, name: String },
    #[error("document has {count} {kind}s; choose one with --{kind}")]
    Ambiguous { kind: &'static str, count: usize },
    #[error("--p {flag} does not match the order {actual} of action `{action}`")]
    PrimeMismatch { flag: u64, actual: u64, action: String },
    #[error("action `{action}` acts on `{actual}`, not on `{requested}`")]
    ComplexMismatch {
        action: String,
        actual: String,
        requested: String,
    },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

/// Accumulates report text and tracks verdicts for the exit code.
#[derive(Default)]
struct Out {
    text: String,
    failed: bool,
    not_applicable: bool,
}

impl Out {
    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn verdict(&mut self, v: Verdict) {
        match v {
            Verdict::Fail => self.failed = true,
            Verdict::NotApplicable => self.not_applicable = true,
            Verdict::Pass => {}
        }
    }

    fn report(&mut self, r: &TheoremReport, full: bool) {
        self.verdict(r.verdict);
        if full {
            self.text.push_str(&r.render());
        } else {
            self.line(r.check_line());
        }
    }

    /// A check line for an exact comparison.
    fn compare(
        &mut self,
        name: &str,
        lhs: impl std::fmt::Display,
        rhs: impl std::fmt::Display,
        holds: bool,
        rel: &str,
    ) {
        let v = if holds { Verdict::Pass } else { Verdict::Fail };
        self.verdict(v);
        self.line(format!("CHECK {name}: {v} — {lhs} vs {rhs} ({rel})"));
    }

    fn finish(self, strict: bool) -> Outcome {
        let code = if self.failed {
            1
        } else if strict && self.not_applicable {
            2
        } else {
            0
        };
        Outcome { text: self.text, code }
    }
}

fn pick<'a, T>(
    items: &'a [T],
    name: Option<&str>,
    kind: &'static str,
    key: impl Fn(&T) -> &str,
) -> Result<&'a T, RunError> {
    match name {
        Some(n) => items.iter().find(|i| key(i) == n).ok_or_else(|| RunError::Missing {
            kind,
            name: n.to_string(),
        }),
        None if items.len() == 1 => Ok(&items[0]),
        None => Err(RunError::Ambiguous {
            kind,
            count: items.len(),
        }),
    }
}

struct Target<'a> {
    name: &'a str,
    complex: &'a SimplicialComplex,
}

fn complex<'a>(doc: &'a InputDocument, flags: &Flags) -> Result<Target<'a>, RunError> {
    let name = match (&flags.complex, &flags.action) {
        (Some(c), _) => Some(c.as_str()),
        (None, Some(_)) => Some(action(doc, flags)?.1),
        (None, None) => None,
    };
    let c = pick(&doc.complexes, name, "complex", |c| &c.name)?;
    Ok(Target {
        name: &c.name,
        complex: &c.complex,
    })
}

/// The action, the name of its complex and the complex itself.
fn action<'a>(doc: &'a InputDocument, flags: &Flags) -> Result<(&'a GroupAction, &'a str, &'a str), RunError> {
    let a = pick(&doc.actions, flags.action.as_deref(), "action", |a| &a.name)?;
    if let Some(p) = flags.p {
        if p != a.p {
            return Err(RunError::PrimeMismatch {
                flag: p,
                actual: a.p,
                action: a.name.clone(),
            });
        }
    }
    if let Some(c) = &flags.complex {
        if *c != a.complex {
            return Err(RunError::ComplexMismatch {
                action: a.name.clone(),
                actual: a.complex.clone(),
                requested: c.clone(),
            });
        }
    }
    Ok((&a.action, &a.complex, &a.name))
}

fn acted<'a>(doc: &'a InputDocument, flags: &Flags) -> Result<(&'a SimplicialComplex, &'a GroupAction), RunError> {
    let (a, cx, _) = action(doc, flags)?;
    Ok((&doc.complex(cx).expect("validated reference").complex, a))
}

fn field_kind(flags: &Flags) -> FieldKind {
    flags
        .field
        .unwrap_or_else(|| flags.p.map_or(FieldKind::Rational, FieldKind::Prime))
}

fn prime(doc: &InputDocument, flags: &Flags) -> Result<u64, RunError> {
    if let Some(p) = flags.p {
        return Ok(p);
    }
    if let Some(FieldKind::Prime(p)) = flags.field {
        return Ok(p);
    }
    match action(doc, flags) {
        Ok((a, _, _)) => Ok(a.p()),
        Err(_) => Err(RunError::Invalid("a prime is required: pass --p".into())),
    }
}

fn list(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

/// Run one command against a parsed document.
pub fn run(command: Command, doc: &InputDocument, flags: &Flags) -> Result<Outcome, RunError> {
    let mut out = Out::default();
    match command {
        Command::Cohomology => cmd_cohomology(&mut out, doc, flags)?,
        Command::PdCheck => cmd_pd_check(&mut out, doc, flags)?,
        Command::FixedSet => cmd_fixed_set(&mut out, doc, flags)?,
        Command::Lefschetz => {
            let (x, a) = acted(doc, flags)?;
            lefschetz_lines(&mut out, x, a);
        }
        Command::Tfr => cmd_tfr(&mut out, doc, flags)?,
        Command::Bockstein => {
            let t = complex(doc, flags)?;
            let p = prime(doc, flags)?;
            bockstein_line(&mut out, t.name, t.complex, p);
        }
        Command::EquivariantBetti => {
            let (x, a) = acted(doc, flags)?;
            let (lo, hi) = flags.degrees.unwrap_or((0, x.dim().unwrap_or(0) + 2));
            out.line(format!("equivariant cohomology over F{}", a.p()));
            for (n, b) in (lo..=hi).zip(equivariant_betti(x, a, lo, hi)) {
                out.line(format!("H^{n}_G = {b}"));
            }
        }
        Command::Localization => {
            let (x, a) = acted(doc, flags)?;
            localization_lines(&mut out, x, a);
        }
        Command::Theorem1Alg => {
            let decl = pick(&doc.algebras, flags.algebra.as_deref(), "algebra", |a| &a.name)?;
            let fixed = flags.fixed_set_dim;
            with_field!(decl.field, |f| {
                let m = build(decl, f)?;
                let r = check_theorem1_algebraic(&m.algebra, &m.differential, &m.orientation, fixed);
                out.report(&r, true);
            })
        }
        Command::Theorem2 => {
            let (x, a) = acted(doc, flags)?;
            out.report(&check_theorem2(x, a), true);
        }
        Command::Theorem4 => {
            let (x, a) = acted(doc, flags)?;
            out.report(&check_theorem4(x, a), true);
        }
        Command::AlgebraCheck => {
            let decl = pick(&doc.algebras, flags.algebra.as_deref(), "algebra", |a| &a.name)?;
            with_field!(decl.field, |f| {
                let m = build(decl, f)?;
                algebra_lines(&mut out, &decl.name, &m);
            })
        }
        Command::Suite => suite(&mut out),
    }
    Ok(out.finish(flags.strict))
}

fn build<F: Field>(decl: &AlgebraDecl, field: F) -> Result<DgModel<F>, RunError> {
    decl.build(field).map_err(RunError::Invalid)
}

fn cmd_cohomology(out: &mut Out, doc: &InputDocument, flags: &Flags) -> Result<(), RunError> {
    let t = complex(doc, flags)?;
    let x = t.complex;
    let cx = x.cochain_complex();
    out.line(format!(
        "complex {}: f-vector ({}), Euler characteristic {}",
        t.name,
        list(&x.f_vector()),
        x.euler_characteristic()
    ));
    let kind = field_kind(flags);
    let b = with_field!(kind, |f| cohomology(&cx, &f));
    out.line(format!("Betti over {kind}: {} (total {})", list(&b.betti), b.total()));
    let z = integral_cohomology(&cx);
    for (k, (r, tors)) in z.betti.iter().zip(&z.torsion).enumerate() {
        let mut parts = Vec::new();
        if *r > 0 {
            parts.push(if *r == 1 { "Z".to_string() } else { format!("Z^{r}") });
        }
        parts.extend(tors.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            parts.push("0".into());
        }
        out.line(format!("H^{k}({}; Z) = {}", t.name, parts.join(" + ")));
    }
    Ok(())
}

fn cmd_pd_check(out: &mut Out, doc: &InputDocument, flags: &Flags) -> Result<(), RunError> {
    let t = complex(doc, flags)?;
    let kind = field_kind(flags);
    let (holds, detail) = with_field!(kind, |f| match pd_check(t.complex, &f) {
        Ok(r) => {
            let mut d = format!("Betti {}", list(&r.betti));
            if let Some(n) = r.formal_dim {
                let _ = write!(d, ", formal dimension {n}");
            }
            for fail in &r.failures {
                let _ = write!(d, "; {fail}");
            }
            (r.is_pd, d)
        }
        Err(e) => (false, e.to_string()),
    });
    let v = if holds { Verdict::Pass } else { Verdict::Fail };
    out.verdict(v);
    out.line(format!("CHECK pd[{kind}]: {v} — {} over {kind}: {detail}", t.name));
    Ok(())
}

fn cmd_fixed_set(out: &mut Out, doc: &InputDocument, flags: &Flags) -> Result<(), RunError> {
    let (x, a) = acted(doc, flags)?;
    let (y, b, rounds) = make_regular(x, a);
    let fixed = fixed_subcomplex(&y, &b).expect("regular action");
    let field = PrimeField::new(a.p()).expect("validated prime");
    out.line(format!("subdivisions: {rounds}"));
    out.line(format!("fixed vertices: {}", fixed.labels().join(" ")));
    out.line(format!("f-vector ({})", list(&fixed.f_vector())));
    let betti = cohomology(&fixed.cochain_complex(), &field);
    out.line(format!(
        "Betti over F{}: {} (total {})",
        a.p(),
        list(&betti.betti),
        betti.total()
    ));
    let s = smith_inequality_check(x, a);
    out.verdict(if s.holds() { Verdict::Pass } else { Verdict::Fail });
    out.line(s.check_line());
    let codim = check_even_codim(x, a);
    for c in &codim.components {
        out.line(format!(
            "component of dimension {} (codimension {}, homology manifold {})",
            c.dim, c.codim, c.homology_manifold
        ));
    }
    Ok(())
}

fn lefschetz_lines(out: &mut Out, x: &SimplicialComplex, a: &GroupAction) {
    for k in 1..a.p() {
        let g = a.power(k);
        let lambda = lefschetz_number(x, &g);
        let (y, b, _) = make_regular(x, &g);
        let chi = fixed_subcomplex(&y, &b).expect("regular action").euler_characteristic();
        out.compare(&format!("lefschetz[k={k}]"), lambda, chi, lambda == chi, "=");
    }
}

fn localization_lines(out: &mut Out, x: &SimplicialComplex, a: &GroupAction) {
    let r = localization_check(x, a);
    for (n, b) in r.degrees.iter().zip(r.equivariant) {
        out.compare(
            &format!("localization[H^{n}_G]"),
            b,
            r.fixed_total,
            b == r.fixed_total,
            "=",
        );
    }
}

fn bockstein_line(out: &mut Out, name: &str, x: &impl CellComplex, p: u64) {
    match bockstein_witness(x, p) {
        None => out.line(format!("bockstein condition for {name} at p = {p}: holds")),
        Some((k, d)) => out.line(format!(
            "bockstein condition for {name} at p = {p}: fails (Z/{d} summand in degree {k})"
        )),
    }
}

fn cmd_tfr(out: &mut Out, doc: &InputDocument, flags: &Flags) -> Result<(), RunError> {
    let (x, a) = acted(doc, flags)?;
    let d = tfr_decomposition(x, a);
    out.line(format!("blocks of g - 1 over F{}", d.p));
    for (k, deg) in d.degrees.iter().enumerate() {
        let mut s = format!("H^{k}: dim {}, T {}, F {}, R {}", deg.betti, deg.t, deg.f, deg.r);
        if !deg.other.is_empty() {
            let _ = write!(s, ", other sizes {}", list(&deg.other));
        }
        out.line(s);
    }
    out.line(format!(
        "dim T = {}, dim F = {}, dim R = {}",
        d.dim_t(),
        d.dim_f(),
        d.dim_r()
    ));
    out.line(format!(
        "bockstein condition: {}",
        if d.bockstein { "holds" } else { "fails" }
    ));
    Ok(())
}

fn algebra_lines<F: Field>(out: &mut Out, name: &str, m: &DgModel<F>) {
    let (alg, delta, phi) = (&m.algebra, &m.differential, &m.orientation);
    let f = alg.field();
    let pd = match check_pd(alg, phi) {
        Ok(r) => r,
        Err(e) => {
            out.verdict(Verdict::Fail);
            out.line(format!("algebra {name} over {}: no orientation ({e})", f.name()));
            return;
        }
    };
    out.line(format!(
        "algebra {name} over {}: dim {}, formal dimension {}, connected {}, nondegenerate {}",
        f.name(),
        alg.dim(),
        pd.formal_dim,
        pd.connected,
        pd.nondegenerate
    ));
    if !pd.is_pd() {
        out.verdict(Verdict::Fail);
        out.line("not a PD algebra");
        return;
    }
    if pd.formal_dim % 2 == 0 {
        match lemma_even_congruence(alg, phi) {
            Ok(r) => out.report(&r, true),
            Err(e) => out.line(format!("even congruence not checked: {e}")),
        }
    } else if !delta.is_zero() {
        out.report(&odd_congruence(alg, delta, phi).report, true);
    }
    if delta.is_zero() {
        return;
    }
    if let Err(e) = check_derivation(alg, delta) {
        out.verdict(Verdict::Fail);
        out.line(format!("δ is not a differential derivation: {e}"));
        return;
    }
    match homology(alg, delta, phi) {
        Ok(h) => match (&h.algebra, &h.orientation) {
            (Some(ha), Some(hphi)) => match check_pd(ha, hphi) {
                Ok(r) => out.compare(
                    "homology-pd",
                    pd.formal_dim,
                    r.formal_dim,
                    r.is_pd() && r.formal_dim == pd.formal_dim,
                    "formal dimension",
                ),
                Err(e) => {
                    out.verdict(Verdict::Fail);
                    out.line(format!("CHECK homology-pd: FAIL — {e}"));
                }
            },
            _ => out.line("homology vanishes"),
        },
        Err(e) => {
            out.verdict(Verdict::Fail);
            out.line(format!("homology not computed: {e}"));
        }
    }
}

/// All checks on one corpus fixture, in a fixed order.
fn fixture_section(f: &corpus::Fixture) -> Out {
    let (x, a) = (&f.complex, &f.action);
    let mut out = Out::default();
    out.line(format!("== {} (p = {})", f.name, f.p()));
    out.report(&check_theorem2(x, a), false);
    out.report(&check_theorem4(x, a), false);
    let e = euler_route_check(x, a);
    if e.applicable() {
        out.report(&e, false);
    }
    lefschetz_lines(&mut out, x, a);
    localization_lines(&mut out, x, a);
    let s = smith_inequality_check(x, a);
    out.verdict(if s.holds() { Verdict::Pass } else { Verdict::Fail });
    out.line(s.check_line());
    out
}

fn suite(out: &mut Out) {
    let fixtures = corpus::actions();
    let sections: Vec<Out> = std::thread::scope(|s| {
        let handles: Vec<_> = fixtures.iter().map(|f| s.spawn(move || fixture_section(f))).collect();
        handles.into_iter().map(|h| h.join().expect("suite worker")).collect()
    });
    for s in sections {
        out.text.push_str(&s.text);
        out.failed |= s.failed;
        out.not_applicable |= s.not_applicable;
    }
    out.line("== algebraic models");
    let m = odd_example(Rationals);
    out.report(
        &check_theorem1_algebraic(&m.algebra, &m.differential, &m.orientation, Some(2)),
        false,
    );
    let m = triple_sphere_model(Rationals);
    out.report(
        &check_theorem1_algebraic(&m.algebra, &m.differential, &m.orientation, None),
        false,
    );
    out.line("== hypothesis guards");
    bockstein_line(out, "lens space", &corpus::lens_space(), 3);
    let w = homology_manifold_check(&corpus::wedge_of_spheres(), Coefficients::Rational);
    out.line(format!(
        "homology manifold check for wedge of spheres: {} (bad links at {})",
        if w.is_hm { "holds" } else { "fails" },
        w.failures.join(" ")
    ));
}
