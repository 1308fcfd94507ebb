//! Line-oriented input documents.
//!
//! ```text
//! complex <name>
//! vertices <v1> <v2> ...
//! facet <v_i> <v_j> ...
//! end
//! action <name> on <complex> p <p>
//! map <v> -> <w>
//! end
//! algebra <name> field <Q | F<p>>
//! basis <b> bidegree <eps> <j>
//! mult <a> <b> = <coeff> <c> [+ <coeff> <c> ...]
//! phi <b> = <coeff>
//! delta <b> = <coeff> <c> [+ ...]
//! shift <deps> <dj>
//! end
//! ```
//!
//! `#` starts a comment. Coefficients are integers or fractions `a/b`.
//! `shift` is optional; without it the shift of `δ` is read off the first
//! `delta` term, or defaults to `(0,-1)` when `δ = 0`.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::corpus::Fixture;
use crate::exactalg::{Field, FieldKind};
use crate::group_action::{validate_action, GroupAction};
use crate::pd_algebra::models::DgModel;
use crate::pd_algebra::{Bidegree, BigradedAlgebra, Differential, Orientation, Shift};
use crate::simplicial::SimplicialComplex;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        column,
        message: message.into(),
    })
}

#[derive(Clone, Debug)]
pub struct ComplexDecl {
    pub name: String,
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<String>>,
    pub complex: SimplicialComplex,
}

#[derive(Clone, Debug)]
pub struct ActionDecl {
    pub name: String,
    pub complex: String,
    pub p: u64,
    pub maps: Vec<(String, String)>,
    pub action: GroupAction,
}

pub type Terms = Vec<(BigRational, String)>;

#[derive(Clone, Debug)]
pub struct AlgebraDecl {
    pub name: String,
    pub field: FieldKind,
    pub basis: Vec<(String, Bidegree)>,
    pub mult: Vec<(String, String, Terms)>,
    pub phi: Vec<(String, BigRational)>,
    pub delta: Vec<(String, Terms)>,
    pub shift: Option<Shift>,
}

impl AlgebraDecl {
    /// Algebra, orientation and differential over `field`, which must
    /// match the declared field.
    pub fn build<F: Field>(&self, field: F) -> Result<DgModel<F>, String> {
        let index: HashMap<&str, usize> = self
            .basis
            .iter()
            .enumerate()
            .map(|(i, (n, _))| (n.as_str(), i))
            .collect();
        let coeff = |c: &BigRational| {
            field
                .from_rational(c)
                .ok_or_else(|| format!("coefficient {c} is not defined in {}", field.name()))
        };
        let terms = |t: &Terms| -> Result<Vec<(usize, F::Elem)>, String> {
            t.iter().map(|(c, b)| Ok((index[b.as_str()], coeff(c)?))).collect()
        };
        let products = self
            .mult
            .iter()
            .map(|(a, b, t)| Ok((index[a.as_str()], index[b.as_str()], terms(t)?)))
            .collect::<Result<Vec<_>, String>>()?;
        let alg = BigradedAlgebra::new(field.clone(), self.basis.clone(), products).map_err(|e| e.to_string())?;
        let mut phi = vec![field.zero(); alg.dim()];
        for (b, c) in &self.phi {
            phi[index[b.as_str()]] = coeff(c)?;
        }
        let mut images = vec![Vec::new(); alg.dim()];
        for (b, t) in &self.delta {
            images[index[b.as_str()]] = crate::exactalg::sparse::collect(&field, terms(t)?);
        }
        let differential = if images.iter().all(|v| v.is_empty()) && self.shift.is_none() {
            Differential::zero(&alg)
        } else {
            let shift = match self.shift {
                Some(s) => s,
                None => {
                    let (b, v) = images
                        .iter()
                        .enumerate()
                        .find(|(_, v)| !v.is_empty())
                        .expect("nonzero δ");
                    let (from, to) = (alg.degree(b), alg.degree(v[0].0));
                    Shift::new((from.eps + to.eps) % 2, to.j as i64 - from.j as i64)
                }
            };
            Differential::new(&alg, shift, images).map_err(|e| e.to_string())?
        };
        Ok(DgModel {
            algebra: alg,
            orientation: Orientation::new(phi),
            differential,
        })
    }
}

#[derive(Clone, Debug, Default)]
pub struct InputDocument {
    pub complexes: Vec<ComplexDecl>,
    pub actions: Vec<ActionDecl>,
    pub algebras: Vec<AlgebraDecl>,
}

impl InputDocument {
    pub fn complex(&self, name: &str) -> Option<&ComplexDecl> {
        self.complexes.iter().find(|c| c.name == name)
    }

    pub fn action(&self, name: &str) -> Option<&ActionDecl> {
        self.actions.iter().find(|a| a.name == name)
    }

    pub fn algebra(&self, name: &str) -> Option<&AlgebraDecl> {
        self.algebras.iter().find(|a| a.name == name)
    }

    /// A document holding one corpus fixture: complex `X`, action `sigma`.
    pub fn from_fixture(f: &Fixture) -> Self {
        let x = &f.complex;
        let vertices = x.labels().to_vec();
        let facets = x
            .facets()
            .iter()
            .map(|s| s.iter().map(|&v| x.label(v).to_string()).collect())
            .collect();
        let maps = (0..x.vertex_count())
            .filter(|&v| f.action.apply(v) != v)
            .map(|v| (x.label(v).to_string(), x.label(f.action.apply(v)).to_string()))
            .collect();
        InputDocument {
            complexes: vec![ComplexDecl {
                name: "X".into(),
                vertices,
                facets,
                complex: x.clone(),
            }],
            actions: vec![ActionDecl {
                name: "sigma".into(),
                complex: "X".into(),
                p: f.p(),
                maps,
                action: f.action.clone(),
            }],
            algebras: Vec::new(),
        }
    }
}

const BUILTIN_FILES: [(&str, &str); 5] = [
    ("s2_rotation", include_str!("../../data/s2_rotation.mf")),
    ("free_pentagon", include_str!("../../data/free_pentagon.mf")),
    ("odd_example", include_str!("../../data/odd_example.mf")),
    ("triple_sphere", include_str!("../../data/triple_sphere.mf")),
    ("torus", include_str!("../../data/torus.mf")),
];

/// Names accepted by [`builtin`].
pub fn builtin_names() -> Vec<String> {
    let mut names: Vec<String> = BUILTIN_FILES.iter().map(|(n, _)| n.to_string()).collect();
    names.extend(crate::corpus::actions().into_iter().map(|f| f.name));
    names
}

/// A bundled document: one of the data files, or any corpus fixture by
/// name.
pub fn builtin(name: &str) -> Option<InputDocument> {
    if let Some((_, text)) = BUILTIN_FILES.iter().find(|(n, _)| *n == name) {
        return Some(parse(text).expect("bundled document parses"));
    }
    crate::corpus::actions()
        .into_iter()
        .find(|f| f.name == name)
        .map(|f| InputDocument::from_fixture(&f))
}

/// A token and its 1-based column.
type Token<'a> = (&'a str, usize);

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let code = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in code.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((&code[s..i], code[..s].chars().count() + 1));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((&code[s..], code[..s].chars().count() + 1));
    }
    out
}

fn parse_coeff(tok: Token, line: usize) -> Result<BigRational, ParseError> {
    let (s, col) = tok;
    let parsed = match s.split_once('/') {
        Some((n, d)) => n.parse::<BigInt>().ok().zip(d.parse::<BigInt>().ok()),
        None => s.parse::<BigInt>().ok().map(|n| (n, BigInt::one())),
    };
    match parsed {
        Some((_, d)) if d.is_zero() => err(line, col, format!("zero denominator in `{s}`")),
        Some((n, d)) => Ok(BigRational::new(n, d)),
        None => err(line, col, format!("expected a coefficient, found `{s}`")),
    }
}

fn parse_usize(tok: Token, line: usize, what: &str) -> Result<usize, ParseError> {
    tok.0
        .parse()
        .or_else(|_| err(line, tok.1, format!("expected {what}, found `{}`", tok.0)))
}

struct Cursor<'a> {
    toks: Vec<Token<'a>>,
    line: usize,
    pos: usize,
    end_col: usize,
}

impl<'a> Cursor<'a> {
    fn next(&mut self, what: &str) -> Result<Token<'a>, ParseError> {
        match self.toks.get(self.pos) {
            Some(&t) => {
                self.pos += 1;
                Ok(t)
            }
            None => err(self.line, self.end_col, format!("expected {what}")),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        let t = self.next(&format!("`{kw}`"))?;
        if t.0 == kw {
            Ok(())
        } else {
            err(self.line, t.1, format!("expected `{kw}`, found `{}`", t.0))
        }
    }

    fn done(&self) -> Result<(), ParseError> {
        match self.toks.get(self.pos) {
            Some(t) => err(self.line, t.1, format!("unexpected `{}`", t.0)),
            None => Ok(()),
        }
    }

    /// `<coeff> <name> [+ <coeff> <name> ...]`, checking names against
    /// `known`.
    fn terms(&mut self, known: &HashSet<String>) -> Result<Terms, ParseError> {
        let mut out = Vec::new();
        loop {
            let c = parse_coeff(self.next("a coefficient")?, self.line)?;
            let b = self.next("a basis element")?;
            if !known.contains(b.0) {
                return err(self.line, b.1, format!("unknown basis element `{}`", b.0));
            }
            out.push((c, b.0.to_string()));
            if self.pos == self.toks.len() {
                return Ok(out);
            }
            self.keyword("+")?;
        }
    }
}

enum Block {
    Complex {
        line: usize,
        name: String,
        vertices: Vec<String>,
        facets: Vec<Vec<String>>,
    },
    Action {
        line: usize,
        name: String,
        complex: String,
        p: u64,
        maps: Vec<(String, String)>,
    },
    Algebra {
        line: usize,
        decl: AlgebraDecl,
        known: HashSet<String>,
    },
}

pub fn parse(text: &str) -> Result<InputDocument, ParseError> {
    let mut doc = InputDocument::default();
    let mut names: HashSet<String> = HashSet::new();
    let mut block: Option<Block> = None;
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let toks = tokenize(raw);
        if toks.is_empty() {
            continue;
        }
        let mut cur = Cursor {
            toks,
            line,
            pos: 0,
            end_col: raw.chars().count() + 1,
        };
        let (kw, kw_col) = cur.next("a keyword")?;
        match (&mut block, kw) {
            (None, "complex" | "action" | "algebra") => {
                let (name, col) = cur.next("a name")?;
                if !names.insert(name.to_string()) {
                    return err(line, col, format!("duplicate name `{name}`"));
                }
                block = Some(match kw {
                    "complex" => {
                        cur.done()?;
                        Block::Complex {
                            line,
                            name: name.into(),
                            vertices: Vec::new(),
                            facets: Vec::new(),
                        }
                    }
                    "action" => {
                        cur.keyword("on")?;
                        let (cx, cx_col) = cur.next("a complex name")?;
                        if doc.complex(cx).is_none() {
                            return err(line, cx_col, format!("unknown complex `{cx}`"));
                        }
                        cur.keyword("p")?;
                        let pt = cur.next("a prime")?;
                        let p = parse_usize(pt, line, "a prime")? as u64;
                        cur.done()?;
                        Block::Action {
                            line,
                            name: name.into(),
                            complex: cx.into(),
                            p,
                            maps: Vec::new(),
                        }
                    }
                    _ => {
                        cur.keyword("field")?;
                        let (f, fcol) = cur.next("a field")?;
                        let field: FieldKind = f.parse().or_else(|e| err(line, fcol, format!("{e}")))?;
                        if field.characteristic() == 2 {
                            return err(line, fcol, "characteristic 2 is not supported");
                        }
                        cur.done()?;
                        Block::Algebra {
                            line,
                            decl: AlgebraDecl {
                                name: name.into(),
                                field,
                                basis: Vec::new(),
                                mult: Vec::new(),
                                phi: Vec::new(),
                                delta: Vec::new(),
                                shift: None,
                            },
                            known: HashSet::new(),
                        }
                    }
                });
            }
            (None, other) => {
                return err(
                    line,
                    kw_col,
                    format!("expected `complex`, `action` or `algebra`, found `{other}`"),
                )
            }
            (Some(_), "end") => {
                cur.done()?;
                finish(block.take().unwrap(), &mut doc)?;
            }
            (Some(Block::Complex { vertices, .. }), "vertices") => {
                while cur.pos < cur.toks.len() {
                    let (v, col) = cur.next("a vertex")?;
                    if vertices.iter().any(|w| w == v) {
                        return err(line, col, format!("duplicate vertex `{v}`"));
                    }
                    vertices.push(v.to_string());
                }
            }
            (Some(Block::Complex { vertices, facets, .. }), "facet") => {
                let mut f = Vec::new();
                while cur.pos < cur.toks.len() {
                    let (v, col) = cur.next("a vertex")?;
                    if !vertices.iter().any(|w| w == v) {
                        return err(line, col, format!("undeclared vertex `{v}`"));
                    }
                    f.push(v.to_string());
                }
                if f.is_empty() {
                    return err(line, cur.end_col, "empty facet");
                }
                facets.push(f);
            }
            (Some(Block::Action { complex, maps, .. }), "map") => {
                let (v, vcol) = cur.next("a vertex")?;
                cur.keyword("->")?;
                let (w, wcol) = cur.next("a vertex")?;
                cur.done()?;
                let cx = doc.complex(complex).expect("checked at header");
                for (x, col) in [(v, vcol), (w, wcol)] {
                    if cx.complex.vertex_index(x).is_none() {
                        return err(line, col, format!("unknown vertex `{x}` in complex `{complex}`"));
                    }
                }
                if maps.iter().any(|(a, _)| a == v) {
                    return err(line, vcol, format!("vertex `{v}` mapped twice"));
                }
                maps.push((v.to_string(), w.to_string()));
            }
            (Some(Block::Algebra { decl, known, .. }), "basis") => {
                let (b, col) = cur.next("a basis name")?;
                if !known.insert(b.to_string()) {
                    return err(line, col, format!("duplicate basis element `{b}`"));
                }
                cur.keyword("bidegree")?;
                let et = cur.next("ε")?;
                let eps = parse_usize(et, line, "ε ∈ {0, 1}")?;
                if eps > 1 {
                    return err(line, et.1, "ε must be 0 or 1");
                }
                let j = parse_usize(cur.next("j")?, line, "a degree")?;
                cur.done()?;
                decl.basis.push((b.to_string(), Bidegree::new(eps as u8, j)));
            }
            (Some(Block::Algebra { decl, known, .. }), "mult") => {
                let mut ab = Vec::new();
                for _ in 0..2 {
                    let (x, col) = cur.next("a basis element")?;
                    if !known.contains(x) {
                        return err(line, col, format!("unknown basis element `{x}`"));
                    }
                    ab.push(x.to_string());
                }
                cur.keyword("=")?;
                let t = cur.terms(known)?;
                decl.mult.push((ab[0].clone(), ab[1].clone(), t));
            }
            (Some(Block::Algebra { decl, known, .. }), "phi") => {
                let (b, col) = cur.next("a basis element")?;
                if !known.contains(b) {
                    return err(line, col, format!("unknown basis element `{b}`"));
                }
                cur.keyword("=")?;
                let c = parse_coeff(cur.next("a coefficient")?, line)?;
                cur.done()?;
                decl.phi.push((b.to_string(), c));
            }
            (Some(Block::Algebra { decl, known, .. }), "delta") => {
                let (b, col) = cur.next("a basis element")?;
                if !known.contains(b) {
                    return err(line, col, format!("unknown basis element `{b}`"));
                }
                cur.keyword("=")?;
                let t = cur.terms(known)?;
                decl.delta.push((b.to_string(), t));
            }
            (Some(Block::Algebra { decl, .. }), "shift") => {
                let et = cur.next("Δε")?;
                let deps = parse_usize(et, line, "Δε ∈ {0, 1}")?;
                if deps > 1 {
                    return err(line, et.1, "Δε must be 0 or 1");
                }
                let jt = cur.next("Δj")?;
                let dj: i64 =
                    jt.0.parse()
                        .or_else(|_| err(line, jt.1, format!("expected Δj, found `{}`", jt.0)))?;
                cur.done()?;
                decl.shift = Some(Shift::new(deps as u8, dj));
            }
            (Some(_), other) => return err(line, kw_col, format!("unexpected `{other}` in this block")),
        }
    }
    if block.is_some() {
        return err(last_line + 1, 1, "missing `end`");
    }
    Ok(doc)
}

fn finish(block: Block, doc: &mut InputDocument) -> Result<(), ParseError> {
    match block {
        Block::Complex {
            line,
            name,
            vertices,
            facets,
        } => {
            let complex =
                SimplicialComplex::from_facets(&facets, &vertices).or_else(|e| err(line, 1, e.to_string()))?;
            doc.complexes.push(ComplexDecl {
                name,
                vertices,
                facets,
                complex,
            });
        }
        Block::Action {
            line,
            name,
            complex,
            p,
            maps,
        } => {
            let x = &doc.complex(&complex).expect("checked at header").complex;
            let mut perm: Vec<usize> = (0..x.vertex_count()).collect();
            for (v, w) in &maps {
                perm[x.vertex_index(v).unwrap()] = x.vertex_index(w).unwrap();
            }
            let action = validate_action(x, &perm, p).or_else(|e| err(line, 1, format!("action `{name}`: {e}")))?;
            doc.actions.push(ActionDecl {
                name,
                complex,
                p,
                maps,
                action,
            });
        }
        Block::Algebra { line, decl, .. } => {
            let checked = match decl.field {
                FieldKind::Rational => decl.build(crate::exactalg::Rationals).map(|_| ()),
                FieldKind::Prime(p) => decl
                    .build(crate::exactalg::PrimeField::new(p).expect("parsed prime"))
                    .map(|_| ()),
            };
            checked.or_else(|e| err(line, 1, format!("algebra `{}`: {e}", decl.name)))?;
            doc.algebras.push(decl);
        }
    }
    Ok(())
}

fn write_terms(out: &mut String, t: &Terms) {
    let parts: Vec<String> = t.iter().map(|(c, b)| format!("{c} {b}")).collect();
    out.push_str(&parts.join(" + "));
}

/// Canonical text: blocks in the order complexes, actions, algebras,
/// single spaces, no comments.
pub fn serialize(doc: &InputDocument) -> String {
    let mut out = String::new();
    for c in &doc.complexes {
        out.push_str(&format!("complex {}\nvertices {}\n", c.name, c.vertices.join(" ")));
        for f in &c.facets {
            out.push_str(&format!("facet {}\n", f.join(" ")));
        }
        out.push_str("end\n");
    }
    for a in &doc.actions {
        out.push_str(&format!("action {} on {} p {}\n", a.name, a.complex, a.p));
        for (v, w) in &a.maps {
            out.push_str(&format!("map {v} -> {w}\n"));
        }
        out.push_str("end\n");
    }
    for g in &doc.algebras {
        out.push_str(&format!("algebra {} field {}\n", g.name, g.field));
        for (b, d) in &g.basis {
            out.push_str(&format!("basis {b} bidegree {} {}\n", d.eps, d.j));
        }
        for (a, b, t) in &g.mult {
            out.push_str(&format!("mult {a} {b} = "));
            write_terms(&mut out, t);
            out.push('\n');
        }
        for (b, c) in &g.phi {
            out.push_str(&format!("phi {b} = {c}\n"));
        }
        for (b, t) in &g.delta {
            out.push_str(&format!("delta {b} = "));
            write_terms(&mut out, t);
            out.push('\n');
        }
        if let Some(s) = g.shift {
            out.push_str(&format!("shift {} {}\n", s.deps, s.dj));
        }
        out.push_str("end\n");
    }
    out
}

impl fmt::Display for InputDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const S2: &str = "complex S2
vertices 0 1 2 N S
facet 0 1 N
facet 1 2 N
facet 0 2 N
facet 0 1 S
facet 1 2 S
facet 0 2 S
end
action rot on S2 p 3
map 0 -> 1
map 1 -> 2
map 2 -> 0
end
";

    #[test]
    fn parses_sphere_with_rotation() {
        let doc = parse(S2).unwrap();
        assert_eq!(doc.complexes.len(), 1);
        assert_eq!(doc.actions.len(), 1);
        assert_eq!(doc.complexes[0].complex.f_vector(), vec![5, 9, 6]);
        assert_eq!(serialize(&doc), S2);
    }

    #[test]
    fn undeclared_vertex_has_a_location() {
        let e = parse("complex X\nvertices a b\nfacet a  c\nend\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 10));
    }

    #[test]
    fn wrong_order_names_the_cycle() {
        let text = "complex C\nvertices a b c d\nfacet a b\nfacet b c\nfacet c d\nfacet d a\nend\n\
                    action r on C p 3\nmap a -> b\nmap b -> c\nmap c -> d\nmap d -> a\nend\n";
        let e = parse(text).unwrap_err();
        assert_eq!(e.line, 8);
        assert!(
            e.message.contains("a b c d") || e.message.contains("(a"),
            "{}",
            e.message
        );
    }

    #[test]
    fn comments_and_blank_lines() {
        let doc = parse("# header\n\ncomplex P # a point\nvertices x\nfacet x\nend\n").unwrap();
        assert_eq!(doc.complexes[0].complex.vertex_count(), 1);
    }

    #[test]
    fn algebra_round_trip() {
        let text = "algebra T field Q
basis 1 bidegree 0 0
basis a bidegree 0 1
basis b bidegree 0 1
basis ab bidegree 0 2
mult a b = 1 ab
phi ab = 1
end
";
        let doc = parse(text).unwrap();
        assert_eq!(serialize(&doc), text);
        let m = doc.algebras[0].build(crate::exactalg::Rationals).unwrap();
        assert!(m.differential.is_zero());
    }

    #[test]
    fn bad_algebra_is_rejected() {
        let text = "algebra B field F5\nbasis 1 bidegree 0 0\nbasis x bidegree 0 1\nmult x x = 1 x\nend\n";
        let e = parse(text).unwrap_err();
        assert_eq!(e.line, 1);
    }

    #[test]
    fn builtins_parse_and_round_trip() {
        for name in ["s2_rotation", "free_pentagon", "odd_example", "triple_sphere", "torus"] {
            let doc = builtin(name).unwrap();
            assert_eq!(serialize(&parse(&serialize(&doc)).unwrap()), serialize(&doc), "{name}");
        }
        let doc = builtin("torus-rotation-3").unwrap();
        let again = parse(&serialize(&doc)).unwrap();
        assert_eq!(
            again.actions[0].action.permutation(),
            doc.actions[0].action.permutation()
        );
    }

    #[test]
    fn missing_end() {
        let e = parse("complex X\nvertices a\n").unwrap_err();
        assert_eq!(e.message, "missing `end`");
    }
}
