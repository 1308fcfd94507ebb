//! Hypothesis checklists and mod-4 verdicts.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::NotApplicable => "N/A",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypothesis {
    pub name: String,
    pub satisfied: bool,
    pub evidence: String,
}

impl Hypothesis {
    pub fn new(name: impl Into<String>, satisfied: bool, evidence: impl Into<String>) -> Self {
        Hypothesis {
            name: name.into(),
            satisfied,
            evidence: evidence.into(),
        }
    }
}

/// Outcome of checking one congruence `lhs ≡ rhs (mod modulus)`.
///
/// The verdict is `Pass` or `Fail` only when every hypothesis holds;
/// otherwise it is `NotApplicable` and `congruence_holds` is recorded as
/// plain arithmetic, without any claim attached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub name: String,
    pub hypotheses: Vec<Hypothesis>,
    pub lhs: i64,
    pub rhs: i64,
    pub modulus: i64,
    pub congruence_holds: bool,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

impl TheoremReport {
    pub fn new(name: impl Into<String>, hypotheses: Vec<Hypothesis>, lhs: i64, rhs: i64) -> Self {
        Self::with_modulus(name, hypotheses, lhs, rhs, 4)
    }

    pub fn with_modulus(
        name: impl Into<String>,
        hypotheses: Vec<Hypothesis>,
        lhs: i64,
        rhs: i64,
        modulus: i64,
    ) -> Self {
        let congruence_holds = (lhs - rhs).rem_euclid(modulus) == 0;
        let applicable = hypotheses.iter().all(|h| h.satisfied);
        let verdict = match (applicable, congruence_holds) {
            (false, _) => Verdict::NotApplicable,
            (true, true) => Verdict::Pass,
            (true, false) => Verdict::Fail,
        };
        TheoremReport {
            name: name.into(),
            hypotheses,
            lhs,
            rhs,
            modulus,
            congruence_holds,
            verdict,
            notes: Vec::new(),
        }
    }

    pub fn applicable(&self) -> bool {
        self.verdict != Verdict::NotApplicable
    }

    pub fn failed_hypotheses(&self) -> impl Iterator<Item = &Hypothesis> {
        self.hypotheses.iter().filter(|h| !h.satisfied)
    }

    /// `CHECK <name>: <verdict> — <lhs> vs <rhs> (mod 4)`.
    pub fn check_line(&self) -> String {
        format!(
            "CHECK {}: {} — {} vs {} (mod {})",
            self.name, self.verdict, self.lhs, self.rhs, self.modulus
        )
    }

    /// Check line followed by the hypothesis checklist and notes.
    pub fn render(&self) -> String {
        let mut out = self.check_line();
        out.push('\n');
        for h in &self.hypotheses {
            let mark = if h.satisfied { "ok" } else { "FAILED" };
            out.push_str(&format!("  hypothesis {}: {} ({})\n", h.name, mark, h.evidence));
        }
        out.push_str(&format!(
            "  congruence: {} {} {} (mod {})\n",
            self.lhs,
            if self.congruence_holds { "≡" } else { "≢" },
            self.rhs,
            self.modulus
        ));
        for n in &self.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts() {
        let ok = vec![Hypothesis::new("h", true, "")];
        assert_eq!(TheoremReport::new("a", ok.clone(), 2, 6).verdict, Verdict::Pass);
        assert_eq!(TheoremReport::new("a", ok, 0, 2).verdict, Verdict::Fail);
        let bad = TheoremReport::new("a", vec![Hypothesis::new("h", false, "")], 0, 2);
        assert_eq!(bad.verdict, Verdict::NotApplicable);
        assert!(!bad.congruence_holds);
        assert_eq!(bad.check_line(), "CHECK a: N/A — 0 vs 2 (mod 4)");
    }

    #[test]
    fn negative_values_reduce() {
        let r = TheoremReport::new("a", vec![], -2, 2);
        assert!(r.congruence_holds);
    }
}
