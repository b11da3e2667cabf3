//! Normal ordering by two-letter rewrite rules, and the critical-pair test
//! for confluence.
//!
//! Each relation `L R ± c R L = rhs` is solved for whichever of `LR`, `RL`
//! is larger in the chosen generator order. Words are compared
//! degree-lexicographically by generator rank, so every rule strictly
//! decreases its left side; this is checked when the system is built.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraSpec, Parity};
use crate::element::{Element, GenId, Word};
use crate::scalar::{rational, LaurentPoly, ScalarError};

pub const DEFAULT_STEP_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("algebra `{0}` is partial; its relations do not determine a normal order")]
    Partial(String),
    #[error("generator order must be a permutation of all {0} generators")]
    InvalidOrder(usize),
    #[error("relation {relation}: cannot solve for {word}, scalar {scalar} is not invertible")]
    NotInvertible {
        relation: String,
        word: String,
        scalar: String,
    },
    #[error("rule {rule} does not decrease: {offending} is not smaller than {rule_lhs} in the generator order")]
    Termination {
        rule: String,
        rule_lhs: String,
        offending: String,
    },
    #[error("normal form exceeded the step budget of {0} rule applications")]
    StepBudget(usize),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// Fermions first (in declared order), then bosons. Under this order every
/// rule of the built-in `osp(2,2)` tables decreases.
pub fn default_order(spec: &AlgebraSpec) -> Vec<GenId> {
    let by = |p: Parity| {
        spec.generators()
            .iter()
            .filter(move |g| g.parity == p)
            .map(|g| g.order_index)
    };
    by(Parity::Fermion).chain(by(Parity::Boson)).collect()
}

/// The order in which the generators are declared.
pub fn declared_order(spec: &AlgebraSpec) -> Vec<GenId> {
    (0..spec.generators().len()).collect()
}

#[derive(Debug, Clone)]
pub struct RewriteSystem {
    spec: AlgebraSpec,
    /// `rank[g]` is the position of generator `g` in the order.
    rank: Vec<usize>,
    /// Inverse of `rank`.
    order: Vec<GenId>,
    /// Rules on rank-space words `xy`.
    rules: BTreeMap<(usize, usize), Element>,
    budget: usize,
}

/// Orients every relation of a total spec into a decreasing rule.
pub fn orient(spec: &AlgebraSpec, order: &[GenId]) -> Result<RewriteSystem, RewriteError> {
    if !spec.is_total() {
        return Err(RewriteError::Partial(spec.name().to_string()));
    }
    let count = spec.generators().len();
    let mut rank = vec![usize::MAX; count];
    for (r, &g) in order.iter().enumerate() {
        if g >= count || rank[g] != usize::MAX {
            return Err(RewriteError::InvalidOrder(count));
        }
        rank[g] = r;
    }
    if order.len() != count {
        return Err(RewriteError::InvalidOrder(count));
    }
    let mut sys = RewriteSystem {
        spec: spec.clone(),
        rank: rank.clone(),
        order: order.to_vec(),
        rules: BTreeMap::new(),
        budget: DEFAULT_STEP_BUDGET,
    };
    let vars = spec.vars();
    let names = spec.names();
    for rel in spec.relations() {
        let rhs = rel.rhs.relabel(|g| rank[g]);
        let (a, b) = (rank[rel.left], rank[rel.right]);
        let signed = rel.coeff.scale(&rational(rel.kind.sign(), 1));
        let word = |x: usize, y: usize| Element::word(vars, Word(vec![x, y]));
        let invert = |s: &LaurentPoly, w: String| {
            s.inverse().map_err(|_| RewriteError::NotInvertible {
                relation: spec.relation_id(rel),
                word: w,
                scalar: s.to_string(),
            })
        };
        let (lhs, replacement) = if a == b {
            // (1 + c) LL = rhs
            let factor = &LaurentPoly::one(vars) + &signed;
            let inv = invert(&factor, format!("{}*{}", names[rel.left], names[rel.left]))?;
            ((a, a), rhs.scale(&inv))
        } else if a > b {
            // LR = rhs - σc RL
            ((a, b), rhs.sub(&word(b, a).scale(&signed)))
        } else {
            // RL = (σc)^-1 (rhs - LR)
            let inv = invert(&signed, format!("{}*{}", names[rel.right], names[rel.left]))?;
            ((b, a), rhs.sub(&word(a, b)).scale(&inv))
        };
        sys.rules.insert(lhs, replacement);
    }
    sys.check_termination()?;
    Ok(sys)
}

impl RewriteSystem {
    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn order(&self) -> &[GenId] {
        &self.order
    }

    fn to_rank(&self, e: &Element) -> Element {
        e.relabel(|g| self.rank[g])
    }

    fn from_rank(&self, e: &Element) -> Element {
        e.relabel(|r| self.order[r])
    }

    fn rank_word_name(&self, w: &Word) -> String {
        Word(w.0.iter().map(|&r| self.order[r]).collect()).render(&self.spec.names())
    }

    fn check_termination(&self) -> Result<(), RewriteError> {
        let names = self.spec.names();
        for (&(x, y), rep) in &self.rules {
            let lhs = Word(vec![x, y]);
            if let Some((w, _)) = rep.terms().find(|(w, _)| **w >= lhs) {
                let lhs_name = self.rank_word_name(&lhs);
                return Err(RewriteError::Termination {
                    rule: format!("{lhs_name} -> {}", self.from_rank(rep).display(&names)),
                    rule_lhs: lhs_name,
                    offending: self.rank_word_name(w),
                });
            }
        }
        Ok(())
    }

    /// Rules as `(lhs, rhs)` strings in generator-order of their left sides.
    pub fn rules(&self) -> Vec<(String, String)> {
        let names = self.spec.names();
        self.rules
            .iter()
            .map(|(&(x, y), rep)| {
                (
                    self.rank_word_name(&Word(vec![x, y])),
                    self.from_rank(rep).display(&names).to_string(),
                )
            })
            .collect()
    }

    /// Replacement for the word `a*b` (spec generator ids), if a rule applies.
    pub fn rule(&self, a: GenId, b: GenId) -> Option<Element> {
        self.rules
            .get(&(self.rank[a], self.rank[b]))
            .map(|e| self.from_rank(e))
    }

    fn redex(&self, w: &Word, strategy: Strategy) -> Option<usize> {
        let mut positions = 0..w.len().saturating_sub(1);
        let hit = |&i: &usize| self.rules.contains_key(&(w.0[i], w.0[i + 1]));
        match strategy {
            Strategy::Leftmost => positions.find(hit),
            Strategy::Rightmost => positions.rev().find(hit),
        }
    }

    fn apply_at(
        &self,
        w: &Word,
        i: usize,
        coeff: &LaurentPoly,
        into: &mut BTreeMap<Word, LaurentPoly>,
    ) {
        let rep = &self.rules[&(w.0[i], w.0[i + 1])];
        for (rw, rc) in rep.terms() {
            let mut v = w.0[..i].to_vec();
            v.extend_from_slice(&rw.0);
            v.extend_from_slice(&w.0[i + 2..]);
            accumulate(into, Word(v), coeff * rc);
        }
    }

    fn reduce_rank(&self, e: &Element, strategy: Strategy) -> Result<Element, RewriteError> {
        let mut pending: BTreeMap<Word, LaurentPoly> =
            e.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        let mut out = Element::zero(e.vars());
        let mut steps = 0usize;
        // Rules only produce smaller words, so the largest pending word has
        // received all its contributions by the time it is popped.
        while let Some((w, c)) = pending.pop_last() {
            match self.redex(&w, strategy) {
                None => out.add_term(w, c),
                Some(i) => {
                    steps += 1;
                    if steps > self.budget {
                        return Err(RewriteError::StepBudget(self.budget));
                    }
                    self.apply_at(&w, i, &c, &mut pending);
                }
            }
        }
        Ok(out)
    }

    pub fn normal_form(&self, e: &Element) -> Result<Element, RewriteError> {
        self.normal_form_with(e, Strategy::Leftmost)
    }

    pub fn normal_form_with(
        &self,
        e: &Element,
        strategy: Strategy,
    ) -> Result<Element, RewriteError> {
        let reduced = self.reduce_rank(&self.to_rank(e), strategy)?;
        Ok(self.from_rank(&reduced))
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        let r = Word(w.0.iter().map(|&g| self.rank[g]).collect());
        self.redex(&r, Strategy::Leftmost).is_none()
    }

    fn rank_overlaps(&self) -> Vec<Word> {
        let mut out = Vec::new();
        for &(c, b) in self.rules.keys() {
            for &(b2, a) in self.rules.range((b, 0)..=(b, usize::MAX)).map(|(k, _)| k) {
                debug_assert_eq!(b, b2);
                out.push(Word(vec![c, b, a]));
            }
        }
        out.sort();
        out
    }

    /// Three-letter words `CBA` where both `CB` and `BA` are rule left sides,
    /// in generator order.
    pub fn critical_pairs(&self) -> Vec<Word> {
        self.rank_overlaps()
            .iter()
            .map(|w| Word(w.0.iter().map(|&r| self.order[r]).collect()))
            .collect()
    }

    /// Resolves every overlap both ways and reports the ones that differ.
    pub fn check_confluence(&self) -> Result<ConfluenceReport, RewriteError> {
        let names = self.spec.names();
        let overlaps = self.rank_overlaps();
        let mut failures = Vec::new();
        for w in &overlaps {
            let vars = self.spec.vars();
            let one = LaurentPoly::one(vars);
            let mut first = BTreeMap::new();
            self.apply_at(w, 0, &one, &mut first);
            let mut second = BTreeMap::new();
            self.apply_at(w, 1, &one, &mut second);
            let first = self.reduce_rank(&from_map(vars, first), Strategy::Leftmost)?;
            let second = self.reduce_rank(&from_map(vars, second), Strategy::Leftmost)?;
            let residual = first.sub(&second);
            if !residual.is_zero() {
                failures.push(OverlapFailure {
                    word: self.rank_word_name(w),
                    residual: self.from_rank(&residual).display(&names).to_string(),
                });
            }
        }
        let symbolic = self.spec.relations().iter().any(|r| {
            r.coeff.as_constant().is_none() || r.rhs.terms().any(|(_, c)| c.as_constant().is_none())
        });
        Ok(ConfluenceReport {
            schema: crate::report::SCHEMA,
            algebra: self.spec.name().to_string(),
            parameter_mode: if symbolic {
                ParameterMode::Symbolic
            } else {
                ParameterMode::Evaluated
            },
            order: self.order.iter().map(|&g| names[g].clone()).collect(),
            rules_total: self.rules.len(),
            overlaps_total: overlaps.len(),
            overlaps_failed: failures.len(),
            failures,
        })
    }
}

fn accumulate(map: &mut BTreeMap<Word, LaurentPoly>, w: Word, c: LaurentPoly) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&w) {
        Some(x) => {
            let sum = &*x + &c;
            if sum.is_zero() {
                map.remove(&w);
            } else {
                *x = sum;
            }
        }
        None => {
            map.insert(w, c);
        }
    }
}

fn from_map(vars: &crate::scalar::Vars, map: BTreeMap<Word, LaurentPoly>) -> Element {
    let mut e = Element::zero(vars);
    for (w, c) in map {
        e.add_term(w, c);
    }
    e
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ParameterMode {
    Symbolic,
    Evaluated,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OverlapFailure {
    pub word: String,
    pub residual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfluenceReport {
    pub schema: u32,
    pub algebra: String,
    pub parameter_mode: ParameterMode,
    pub order: Vec<String>,
    pub rules_total: usize,
    pub overlaps_total: usize,
    pub overlaps_failed: usize,
    pub failures: Vec<OverlapFailure>,
}

impl ConfluenceReport {
    pub fn is_confluent(&self) -> bool {
        self.failures.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{builtin, builtin_osp22_prs, load_algebra};
    use crate::expr::{parse_element, ExprContext};

    fn parse(sys: &RewriteSystem, text: &str) -> Element {
        let names = sys.spec().names();
        parse_element(text, &ExprContext::new(sys.spec().vars(), &names)).unwrap()
    }

    fn show(sys: &RewriteSystem, e: &Element) -> String {
        e.display(&sys.spec().names()).to_string()
    }

    fn prs() -> RewriteSystem {
        let spec = builtin_osp22_prs();
        orient(&spec, &default_order(&spec)).unwrap()
    }

    #[test]
    fn orientation_examples() {
        let sys = prs();
        let rules: BTreeMap<String, String> = sys.rules().into_iter().collect();
        assert_eq!(rules["Vb1*V1"], "E11 - V1*Vb1");
        assert_eq!(rules["E22*E11"], "E11*E22");
        assert_eq!(rules["V2*V1"], "-(p^-1 r s)*V1*V2");
        assert_eq!(rules["V1*V1"], "0");
        assert_eq!(rules.len(), 32);
    }

    #[test]
    fn normal_form_examples() {
        let sys = prs();
        assert_eq!(
            show(&sys, &sys.normal_form(&parse(&sys, "E11*E22")).unwrap()),
            "E11*E22"
        );
        assert_eq!(
            show(&sys, &sys.normal_form(&parse(&sys, "Vb1*V1")).unwrap()),
            "E11 - V1*Vb1"
        );
        assert!(sys.normal_form(&parse(&sys, "V1*V1")).unwrap().is_zero());
        let one = parse(&sys, "1");
        assert_eq!(sys.normal_form(&one).unwrap(), one);
    }

    #[test]
    fn declared_order_violates_termination() {
        let spec = builtin_osp22_prs();
        match orient(&spec, &declared_order(&spec)).unwrap_err() {
            RewriteError::Termination {
                rule_lhs,
                offending,
                ..
            } => {
                assert_eq!(rule_lhs, "E21*E12");
                assert_eq!(offending, "V1*Vb1");
            }
            e => panic!("{e}"),
        }
    }

    #[test]
    fn overlap_count_matches_brute_force() {
        let sys = prs();
        let pairs = sys.critical_pairs();
        let mut brute = 0;
        for c in 0..8 {
            for b in 0..8 {
                for a in 0..8 {
                    if sys.rule(c, b).is_some() && sys.rule(b, a).is_some() {
                        brute += 1;
                    }
                }
            }
        }
        assert_eq!(pairs.len(), brute);
        // 56 strictly descending triples, 4 cubes of fermions,
        // 22 of the form C*F*F and 6 of the form F*F*A
        assert_eq!(pairs.len(), 56 + 4 + 22 + 6);
        let cube = Word(vec![4, 4, 4]);
        assert!(pairs.contains(&cube));
    }

    #[test]
    fn two_generator_system_has_no_overlaps() {
        let spec = load_algebra("params: t\ngenerators: A:boson B:boson\n[A,B]_q = 0\n").unwrap();
        let sys = orient(&spec, &[0, 1]).unwrap();
        assert!(sys.critical_pairs().is_empty());
        assert!(sys.check_confluence().unwrap().is_confluent());
    }

    #[test]
    fn partial_specs_are_refused() {
        let spec = builtin("osp12q").unwrap();
        assert!(matches!(
            orient(&spec, &default_order(&spec)),
            Err(RewriteError::Partial(_))
        ));
    }

    #[test]
    fn step_budget_is_enforced() {
        let sys = prs().with_budget(3);
        let e = parse(&sys, "Vb2*Vb1*V2*V1*E21*E12");
        assert_eq!(
            sys.normal_form(&e).unwrap_err(),
            RewriteError::StepBudget(3)
        );
    }

    #[test]
    fn three_parameter_table_is_confluent() {
        let report = prs().check_confluence().unwrap();
        assert_eq!(report.overlaps_total, 88);
        assert!(report.is_confluent(), "{:#?}", report.failures);
        assert_eq!(report.parameter_mode, ParameterMode::Symbolic);
    }
}
