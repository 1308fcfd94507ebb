use crate::exactalg::sparse::{axpy, to_dense};
use crate::exactalg::{Field, Matrix};
use crate::report::{Hypothesis, TheoremReport, Verdict};

use super::{homology::rank_of, AlgebraError, Bidegree, BigradedAlgebra, Differential, Orientation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PdAlgebraReport {
    /// `A^{0,0}` is one-dimensional.
    pub connected: bool,
    /// The form `ζ(a, b) = φ(ab)` is nondegenerate.
    pub nondegenerate: bool,
    pub formal_dim: usize,
}

impl PdAlgebraReport {
    pub fn is_pd(&self) -> bool {
        self.connected && self.nondegenerate
    }
}

/// Gram matrix of `ζ(a, b) = φ(ab)` on the basis.
pub fn gram_matrix<F: Field>(alg: &BigradedAlgebra<F>, phi: &Orientation<F>) -> Matrix<F> {
    let f = alg.field();
    let d = alg.dim();
    let mut m = Matrix::zeros(f, d, d);
    for a in 0..d {
        for b in 0..d {
            m.set(a, b, phi.eval(f, alg.product(a, b)));
        }
    }
    m
}

pub fn check_pd<F: Field>(alg: &BigradedAlgebra<F>, phi: &Orientation<F>) -> Result<PdAlgebraReport, AlgebraError> {
    let formal_dim = phi.formal_dim(alg)?;
    Ok(PdAlgebraReport {
        connected: alg.block_dim(Bidegree::new(0, 0)) == 1,
        nondegenerate: gram_matrix(alg, phi).is_invertible(),
        formal_dim,
    })
}

/// Total dimension and Euler characteristic by total degree.
pub fn euler_and_dim<F: Field>(alg: &BigradedAlgebra<F>) -> (usize, i64) {
    let even = alg.degrees().iter().filter(|d| d.parity() == 0).count() as i64;
    (alg.dim(), 2 * even - alg.dim() as i64)
}

/// `dim A ≡ χ(A) (mod 4)` for a PD algebra of even formal dimension.
pub fn lemma_even_congruence<F: Field>(
    alg: &BigradedAlgebra<F>,
    phi: &Orientation<F>,
) -> Result<TheoremReport, AlgebraError> {
    if alg.field().characteristic() == 2 {
        return Err(AlgebraError::CharacteristicTwo);
    }
    let pd = check_pd(alg, phi)?;
    if !pd.nondegenerate {
        return Err(AlgebraError::NotPd("pairing is degenerate".into()));
    }
    if pd.formal_dim % 2 == 1 {
        return Err(AlgebraError::OddFormalDimension(pd.formal_dim));
    }
    let (dim, chi) = euler_and_dim(alg);
    let hyps = vec![
        Hypothesis::new("PD algebra", true, format!("formal dimension {}", pd.formal_dim)),
        Hypothesis::new("even formal dimension", true, format!("n = {}", pd.formal_dim)),
        Hypothesis::new("char k ≠ 2", true, alg.field().name()),
    ];
    Ok(TheoremReport::new("even-congruence", hyps, dim as i64, chi))
}

/// Verify `δ² = 0` and `δ(ab) = δ(a)b + (-1)^{|a|} a δ(b)` on all basis
/// pairs; the first violation is returned.
pub fn check_derivation<F: Field>(alg: &BigradedAlgebra<F>, delta: &Differential<F>) -> Result<(), AlgebraError> {
    let f = alg.field();
    let d = alg.dim();
    for a in 0..d {
        if !delta.apply(f, &delta.images[a]).is_empty() {
            return Err(AlgebraError::SquareNonzero(alg.name(a).to_string()));
        }
    }
    for a in 0..d {
        let ea = [(a, f.one())];
        let sign = f.sign(alg.degree(a).parity());
        for b in 0..d {
            let eb = [(b, f.one())];
            let lhs = delta.apply(f, alg.product(a, b));
            let first = alg.mul(&delta.images[a], &eb);
            let second = alg.mul(&ea, &delta.images[b]);
            let rhs = axpy(f, &first, &sign, &second);
            if lhs != rhs {
                return Err(AlgebraError::Leibniz(alg.name(a).to_string(), alg.name(b).to_string()));
            }
        }
    }
    Ok(())
}

/// The form `γ(x, y) = φ(x δy)` on the even part, compared against the
/// even cycles `Z^ev`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GammaForm {
    /// `dim A^ev / Z^ev`.
    pub quotient_dim: usize,
    pub skew: bool,
    /// Nonsingular on `A^ev / Z^ev`.
    pub nondegenerate: bool,
}

pub fn gamma_form<F: Field>(alg: &BigradedAlgebra<F>, delta: &Differential<F>, phi: &Orientation<F>) -> GammaForm {
    let f = alg.field();
    let even: Vec<usize> = (0..alg.dim()).filter(|&a| alg.degree(a).parity() == 0).collect();
    let e = even.len();
    let mut g = Matrix::zeros(f, e, e);
    for (r, &x) in even.iter().enumerate() {
        for (c, &y) in even.iter().enumerate() {
            let prod = alg.mul(&[(x, f.one())], &delta.images[y]);
            g.set(r, c, phi.eval(f, &prod));
        }
    }
    let cols: Vec<Vec<F::Elem>> = even.iter().map(|&y| to_dense(f, alg.dim(), &delta.images[y])).collect();
    let rank_delta = if e == 0 {
        0
    } else {
        Matrix::from_columns(f, alg.dim(), &cols).rank()
    };
    let quotient_dim = rank_delta;
    let minus_one = f.from_i64(-1);
    GammaForm {
        quotient_dim,
        skew: g.transpose() == g.scale(&minus_one),
        nondegenerate: g.rank() == quotient_dim,
    }
}

/// Result of the odd-dimensional congruence check.
#[derive(Clone, Debug)]
pub struct OddCongruence {
    pub report: TheoremReport,
    /// The auxiliary form, computed when every hypothesis holds.
    pub gamma: Option<GammaForm>,
    pub homology_dim: usize,
}

/// `dim A ≡ dim H(A, δ) (mod 4)` for odd formal dimension `2m+1`, with
/// each hypothesis reported separately.
pub fn odd_congruence<F: Field>(
    alg: &BigradedAlgebra<F>,
    delta: &Differential<F>,
    phi: &Orientation<F>,
) -> OddCongruence {
    let f = alg.field();
    let mut hyps = Vec::new();
    hyps.push(Hypothesis::new("char k ≠ 2", f.characteristic() != 2, f.name()));
    let pd = check_pd(alg, phi);
    let n = pd.as_ref().ok().map(|r| r.formal_dim);
    hyps.push(match &pd {
        Ok(r) => Hypothesis::new(
            "connected PD algebra",
            r.is_pd(),
            format!("connected {}, nondegenerate {}", r.connected, r.nondegenerate),
        ),
        Err(e) => Hypothesis::new("connected PD algebra", false, e.to_string()),
    });
    hyps.push(match n {
        Some(n) => Hypothesis::new("odd formal dimension", n % 2 == 1, format!("n = {n}")),
        None => Hypothesis::new("odd formal dimension", false, "no formal dimension"),
    });
    let derivation = check_derivation(alg, delta);
    hyps.push(Hypothesis::new(
        "δ is a derivation with δ² = 0",
        derivation.is_ok(),
        derivation
            .err()
            .map_or("verified on all basis pairs".to_string(), |e| e.to_string()),
    ));
    hyps.push(Hypothesis::new(
        "δ has odd total degree",
        delta.shift.parity() == 1,
        format!("shift ({},{})", delta.shift.deps, delta.shift.dj),
    ));
    hyps.push(Hypothesis::new(
        "δ lowers the second degree",
        delta.shift.dj < 0,
        format!("Δj = {}", delta.shift.dj),
    ));
    let m = n.map(|n| n / 2).unwrap_or(0);
    let bad_even: Vec<usize> = (1..=m)
        .filter(|&i| i % 2 == 0 && alg.block_dim(Bidegree::new(0, i)) > 0)
        .collect();
    hyps.push(Hypothesis::new(
        "A^{0,i} = 0 for even 0 < i ≤ m",
        bad_even.is_empty(),
        if bad_even.is_empty() {
            format!("m = {m}")
        } else {
            format!("nonzero in i = {bad_even:?}")
        },
    ));
    let bad_odd: Vec<usize> = (1..=m)
        .filter(|&i| i % 2 == 1 && alg.block_dim(Bidegree::new(1, i)) > 0)
        .collect();
    hyps.push(Hypothesis::new(
        "A^{1,i} = 0 for odd 0 < i ≤ m",
        bad_odd.is_empty(),
        if bad_odd.is_empty() {
            format!("m = {m}")
        } else {
            format!("nonzero in i = {bad_odd:?}")
        },
    ));
    let rank = rank_of(alg, delta);
    let homology_dim = alg.dim() - 2 * rank;
    hyps.push(Hypothesis::new(
        "H(A, δ) ≠ 0",
        homology_dim > 0,
        format!("dim H = {homology_dim}"),
    ));
    let mut report = TheoremReport::new("odd-congruence", hyps, alg.dim() as i64, homology_dim as i64);
    let gamma = report.applicable().then(|| gamma_form(alg, delta, phi));
    if let Some(g) = gamma {
        report.notes.push(format!(
            "γ on A^ev/Z^ev: dim {}, skew {}, nonsingular {}",
            g.quotient_dim, g.skew, g.nondegenerate
        ));
        if !(g.skew && g.nondegenerate && g.quotient_dim % 2 == 0) {
            report.verdict = Verdict::Fail;
        }
    }
    OddCongruence {
        report,
        gamma,
        homology_dim,
    }
}
