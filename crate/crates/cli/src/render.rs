//! Plain-text forms of the reports.

use std::fmt::Write;

use serde_json::{json, Value};

use qosp::algebra::{AlgebraSpec, Provenance};
use qosp::rep::{CasimirReport, OracleReport, SpanReport, VerificationReport, VerifyMode};
use qosp::rewrite::ConfluenceReport;

pub fn verification(r: &VerificationReport) -> String {
    let mode = match &r.mode {
        VerifyMode::Symbolic => "symbolic".to_string(),
        VerifyMode::AtT(t) => format!("t = {t}"),
    };
    let mut s = format!(
        "{} on P({})+P({}), {mode}: {}/{} relations pass\n",
        r.algebra,
        r.n - 1,
        r.n,
        r.relations_passed,
        r.relations_checked
    );
    for f in &r.failures {
        let _ = writeln!(
            s,
            "FAIL {}  ({} nonzero entries)",
            f.relation,
            f.residual_entries.len()
        );
        for e in f.residual_entries.iter().take(4) {
            let _ = writeln!(s, "    ({},{}) = {}", e.row, e.col, e.value);
        }
    }
    s
}

pub fn confluence(r: &ConfluenceReport) -> String {
    let mut s = format!(
        "{}: order {}, {} rules, {} overlaps, {} failed\n",
        r.algebra,
        r.order.join(" < "),
        r.rules_total,
        r.overlaps_total,
        r.overlaps_failed
    );
    for f in &r.failures {
        let _ = writeln!(s, "FAIL {}: {}", f.word, f.residual);
    }
    s
}

pub fn span(r: &SpanReport) -> String {
    let ranks: Vec<String> = r
        .ranks_by_word_length
        .iter()
        .map(ToString::to_string)
        .collect();
    let tail = match r.saturating_length {
        Some(k) => format!("saturated at word length {k}"),
        None => "not saturated".to_string(),
    };
    format!(
        "n = {}, q = {}: ranks {} of {}, {tail}\n",
        r.n,
        r.q,
        ranks.join(" "),
        r.full_rank
    )
}

pub fn casimir(r: &CasimirReport) -> String {
    let mut s = format!(
        "{} central search, q = {}, {} words\n",
        r.kind.label(),
        r.q,
        r.words
    );
    for g in &r.per_n {
        let _ = writeln!(
            s,
            "  n = {}: commutant {}, central {}, {}",
            g.n,
            g.commutant_dim,
            g.central_space_dim,
            g.nonidentity_element
                .as_deref()
                .unwrap_or("no element without constant term")
        );
    }
    for (e, l) in r.representatives.iter().zip(&r.scalars) {
        let _ = writeln!(s, "  family {e}: scalars {}", l.join(", "));
    }
    let _ = writeln!(s, "  expected values: {}", r.expected_values.join(", "));
    let verdict = match &r.matches_paper_formula {
        Value::Bool(true) => "exact".to_string(),
        Value::Bool(false) => "mismatch".to_string(),
        other => other.as_str().unwrap_or_default().to_string(),
    };
    let _ = writeln!(
        s,
        "  match: {verdict}{}",
        if r.determined {
            ""
        } else {
            " (underdetermined)"
        }
    );
    if let Some(e) = &r.realizing_element {
        let _ = writeln!(
            s,
            "  realized by {e}{}",
            r.realizing_offset
                .as_deref()
                .map(|b| format!(" with offset {b}"))
                .unwrap_or_default()
        );
    }
    s
}

pub fn oracle(r: &OracleReport) -> String {
    let mut s = String::new();
    for q in &r.questions {
        let _ = writeln!(
            s,
            "{}: frozen `{}`{}, {}",
            q.id,
            q.frozen,
            if q.deviation {
                " (deviates from print)"
            } else {
                ""
            },
            if q.frozen_matches_oracle {
                "confirmed"
            } else {
                "NOT confirmed"
            }
        );
        for c in &q.candidates {
            let _ = writeln!(
                s,
                "  {:<9} {}  residual zero at {:?}; {}",
                c.label, c.relation, c.residual_zero_at, c.table
            );
        }
    }
    for v in &r.vb2_conventions {
        let _ = writeln!(
            s,
            "Vb2 {} ({}): {}",
            v.convention,
            v.prefactor,
            if v.failing_relations.is_empty() {
                "all relations hold".to_string()
            } else {
                format!("fails {}", v.failing_relations.join(" "))
            }
        );
    }
    s
}

pub fn algebra_json(spec: &AlgebraSpec) -> Value {
    let generators: Vec<Value> = spec
        .generators()
        .iter()
        .map(|g| json!({"name": g.name, "parity": g.parity.as_str()}))
        .collect();
    let relations: Vec<Value> = spec
        .relations()
        .iter()
        .map(|r| {
            let (repaired, note) = match &r.provenance {
                Provenance::Verbatim => (false, None),
                Provenance::Repaired(n) => (true, Some(n.clone())),
            };
            json!({
                "id": spec.relation_id(r),
                "relation": spec.render_relation(r),
                "repaired": repaired,
                "note": note,
            })
        })
        .collect();
    json!({
        "schema": qosp::report::SCHEMA,
        "name": spec.name(),
        "params": spec.vars().names(),
        "completeness": spec.completeness(),
        "generators": generators,
        "relations": relations,
    })
}
