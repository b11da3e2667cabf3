//! Decides between competing readings of doubtful relations by testing each
//! reading on the explicit representation.

use serde::Serialize;

use super::{
    build_osp22, build_osp22_fermions, check_relation, derive_bosonic, verify_all, RepError,
    Vb2Convention,
};
use crate::algebra::{builtin_osp22_prs, builtin_osp22_q, printed_variants, AlgebraSpec};
use crate::scalar::Specialization;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateOutcome {
    pub label: String,
    pub relation: String,
    /// Grades at which the candidate's own residual vanishes.
    pub residual_zero_at: Vec<usize>,
    pub residual_nonzero_at: Vec<usize>,
    /// What happens when this candidate is frozen into the table instead.
    pub table: String,
    pub table_consistent: bool,
}

impl CandidateOutcome {
    pub fn all_zero(&self) -> bool {
        self.residual_nonzero_at.is_empty()
    }

    pub fn accepted(&self) -> bool {
        self.all_zero() && self.table_consistent
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuestionOutcome {
    pub id: String,
    pub question: String,
    pub frozen: String,
    /// The frozen reading differs from the printed one.
    pub deviation: bool,
    /// The frozen reading is the unique accepted candidate.
    pub frozen_matches_oracle: bool,
    pub candidates: Vec<CandidateOutcome>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Vb2Outcome {
    pub convention: String,
    pub prefactor: String,
    pub failing_relations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub schema: u32,
    pub ns: Vec<usize>,
    pub questions: Vec<QuestionOutcome>,
    pub vb2_conventions: Vec<Vb2Outcome>,
    pub repaired_relations: Vec<String>,
}

impl OracleReport {
    pub fn consistent(&self) -> bool {
        self.questions.iter().all(|q| q.frozen_matches_oracle)
            && self.vb2_conventions.iter().any(|v| {
                v.convention == Vb2Convention::default().label() && v.failing_relations.is_empty()
            })
    }
}

fn table_outcome(table: &AlgebraSpec, ns: &[usize]) -> Result<(String, bool), RepError> {
    let specialized = table.specialize(Specialization::OneParameter, "candidate")?;
    let mut failing: Vec<String> = Vec::new();
    for &n in ns {
        let fermions = build_osp22_fermions(n, Vb2Convention::default())?;
        let reps = match derive_bosonic(&specialized, &fermions) {
            Ok(r) => r,
            Err(RepError::Underived(g)) => {
                return Ok((format!("{g} has no defining relation"), false))
            }
            Err(e) => return Err(e),
        };
        for id in verify_all(&specialized, &reps, None)?.failed_ids() {
            if !failing.contains(&id) {
                failing.push(id);
            }
        }
    }
    let total = specialized.relations().len();
    Ok(if failing.is_empty() {
        (format!("all {total} relations hold"), true)
    } else {
        (
            format!(
                "{} of {total} relations fail: {}",
                failing.len(),
                failing.join(" ")
            ),
            false,
        )
    })
}

/// Runs every printed-variant question and both `Vb2` prefactors at grades `ns`.
pub fn typo_oracle(ns: &[usize]) -> Result<OracleReport, RepError> {
    let prs = builtin_osp22_prs();
    let q_spec = builtin_osp22_q();
    let names = prs.names();
    let reps: Vec<_> = ns
        .iter()
        .map(|&n| build_osp22(n, Vb2Convention::default()))
        .collect::<Result<_, _>>()?;
    let mut questions = Vec::new();
    for variant in printed_variants() {
        let frozen_pair = variant
            .candidates
            .iter()
            .find(|(l, _)| *l == variant.frozen)
            .map(|(_, r)| r.pair())
            .expect("frozen label names a candidate");
        let mut candidates = Vec::new();
        for (label, rel) in &variant.candidates {
            let rel_t = rel.specialize(Specialization::OneParameter)?;
            let (mut zero, mut nonzero) = (Vec::new(), Vec::new());
            for (&n, r) in ns.iter().zip(&reps) {
                if check_relation(&rel_t, &q_spec, r)?.is_zero() {
                    zero.push(n);
                } else {
                    nonzero.push(n);
                }
            }
            let (table, table_consistent) = match prs.replace_relation(frozen_pair, rel.clone()) {
                Ok(t) => table_outcome(&t, ns)?,
                Err(e) => (format!("invalid table: {e}"), false),
            };
            candidates.push(CandidateOutcome {
                label: label.to_string(),
                relation: rel.render(&names),
                residual_zero_at: zero,
                residual_nonzero_at: nonzero,
                table,
                table_consistent,
            });
        }
        let accepted: Vec<&str> = candidates
            .iter()
            .filter(|c| c.accepted())
            .map(|c| c.label.as_str())
            .collect();
        questions.push(QuestionOutcome {
            id: variant.id.to_string(),
            question: variant.question.to_string(),
            frozen: variant.frozen.to_string(),
            deviation: variant.frozen != "literal",
            frozen_matches_oracle: accepted == [variant.frozen],
            candidates,
        });
    }

    let mut vb2_conventions = Vec::new();
    for convention in [Vb2Convention::Printed, Vb2Convention::Corrected] {
        let mut failing: Vec<String> = Vec::new();
        for &n in ns {
            let r = derive_bosonic(&q_spec, &build_osp22_fermions(n, convention)?)?;
            for id in verify_all(&q_spec, &r, None)?.failed_ids() {
                if !failing.contains(&id) {
                    failing.push(id);
                }
            }
        }
        vb2_conventions.push(Vb2Outcome {
            convention: convention.label().to_string(),
            prefactor: convention.prefactor().to_string(),
            failing_relations: failing,
        });
    }

    let repaired_relations = prs
        .relations()
        .iter()
        .filter(|r| r.provenance.is_repaired())
        .map(|r| r.render(&names))
        .collect();
    Ok(OracleReport {
        schema: crate::report::SCHEMA,
        ns: ns.to_vec(),
        questions,
        vb2_conventions,
        repaired_relations,
    })
}
