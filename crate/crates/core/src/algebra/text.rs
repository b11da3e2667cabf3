//! Relation-file format.
//!
//! ```text
//! # comment
//! algebra: osp22prs
//! params: p r s
//! generators: E11:boson V1:fermion ...
//! completeness: total
//! [E22,V1]_(s^2) = V1
//! {Vb1,V1} = E11
//! {Vb2,V1}_(p r^-1 s) = E21 @repaired: free-form note
//! ```
//!
//! A missing `_coeff` means coefficient 1. Columns in errors are 1-based.

use std::fmt::Write as _;

use super::{AlgebraError, AlgebraSpec, BracketKind, Completeness, Parity, Provenance, Relation};
use crate::expr::{parse_element, parse_scalar, ExprContext};
use crate::scalar::{LaurentPoly, Vars};

const REPAIRED: &str = "@repaired:";

#[derive(Default)]
struct Header {
    name: Option<String>,
    vars: Option<Vars>,
    generators: Option<Vec<(String, Parity)>>,
    completeness: Option<Completeness>,
}

pub fn load_algebra(source: &str) -> Result<AlgebraSpec, AlgebraError> {
    let mut header = Header::default();
    let mut relations = Vec::new();
    let mut names: Vec<String> = Vec::new();
    for (idx, raw) in source.lines().enumerate() {
        let line_no = idx + 1;
        let (body, note) = match raw.find(REPAIRED) {
            Some(at) => (
                &raw[..at],
                Some(raw[at + REPAIRED.len()..].trim().to_string()),
            ),
            None => (raw, None),
        };
        let body = match body.find('#') {
            Some(at) => &body[..at],
            None => body,
        };
        if body.trim().is_empty() {
            if note.is_some() {
                return Err(AlgebraError::parse(line_no, 1, "note without a relation"));
            }
            continue;
        }
        let indent = body.len() - body.trim_start().len();
        let trimmed = body.trim();
        if trimmed.starts_with('[') || trimmed.starts_with('{') {
            let vars = header.vars.as_ref().ok_or_else(|| {
                AlgebraError::parse(line_no, 1, "`params:` must precede relations")
            })?;
            if header.generators.is_none() {
                return Err(AlgebraError::parse(
                    line_no,
                    1,
                    "`generators:` must precede relations",
                ));
            }
            let provenance = match note {
                Some(n) => Provenance::Repaired(n),
                None => Provenance::Verbatim,
            };
            relations.push(parse_relation(
                trimmed, indent, line_no, vars, &names, provenance,
            )?);
            continue;
        }
        let Some((key, value)) = trimmed.split_once(':') else {
            return Err(AlgebraError::parse(
                line_no,
                indent + 1,
                "expected `key: value` or a relation",
            ));
        };
        let value_col = indent + key.len() + 2;
        match key.trim() {
            "algebra" => header.name = Some(value.trim().to_string()),
            "params" => {
                header.vars = Some(Vars::new(&value.split_whitespace().collect::<Vec<_>>()))
            }
            "generators" => {
                let mut gens = Vec::new();
                for item in value.split_whitespace() {
                    let col = value_col + value.find(item).unwrap_or(0);
                    let (name, parity) = item.split_once(':').ok_or_else(|| {
                        AlgebraError::parse(line_no, col, format!("`{item}`: expected name:parity"))
                    })?;
                    let parity = match parity {
                        "boson" | "even" => Parity::Boson,
                        "fermion" | "odd" => Parity::Fermion,
                        other => {
                            return Err(AlgebraError::parse(
                                line_no,
                                col,
                                format!("unknown parity `{other}`"),
                            ))
                        }
                    };
                    gens.push((name.to_string(), parity));
                }
                names = gens.iter().map(|(n, _)| n.clone()).collect();
                header.generators = Some(gens);
            }
            "completeness" => {
                header.completeness = Some(match value.trim() {
                    "total" => Completeness::Total,
                    "partial" => Completeness::Partial,
                    other => {
                        return Err(AlgebraError::parse(
                            line_no,
                            value_col,
                            format!("unknown completeness `{other}`"),
                        ))
                    }
                })
            }
            other => {
                return Err(AlgebraError::parse(
                    line_no,
                    indent + 1,
                    format!("unknown header `{other}`"),
                ))
            }
        }
    }
    let vars = header
        .vars
        .ok_or_else(|| AlgebraError::parse(1, 1, "missing `params:` header"))?;
    let generators = header
        .generators
        .ok_or_else(|| AlgebraError::parse(1, 1, "missing `generators:` header"))?;
    AlgebraSpec::new(
        header.name.unwrap_or_else(|| "custom".to_string()),
        vars,
        generators,
        relations,
        header.completeness.unwrap_or(Completeness::Total),
    )
}

fn parse_relation(
    text: &str,
    offset: usize,
    line: usize,
    vars: &Vars,
    names: &[String],
    provenance: Provenance,
) -> Result<Relation, AlgebraError> {
    let err = |pos: usize, msg: &str| AlgebraError::parse(line, offset + pos + 1, msg.to_string());
    let (kind, close) = if text.starts_with('[') {
        (BracketKind::Quommutator, ']')
    } else {
        (BracketKind::Antiquommutator, '}')
    };
    let end = text
        .find(close)
        .ok_or_else(|| err(0, "unterminated bracket"))?;
    let inner = &text[1..end];
    let (a, b) = inner
        .split_once(',')
        .ok_or_else(|| err(1, "expected two generators separated by `,`"))?;
    let lookup = |name: &str, pos: usize| {
        names
            .iter()
            .position(|g| g == name.trim())
            .ok_or_else(|| err(pos, &format!("unknown generator `{}`", name.trim())))
    };
    let left = lookup(a, 1)?;
    let right = lookup(b, 1 + a.len() + 1)?;

    let mut pos = end + 1;
    let rest = &text[pos..];
    let coeff: LaurentPoly;
    if let Some(after) = rest.strip_prefix('_') {
        pos += 1;
        let (ctext, used) = if after.starts_with('(') {
            let mut depth = 0usize;
            let mut close_at = None;
            for (i, ch) in after.char_indices() {
                match ch {
                    '(' => depth += 1,
                    ')' => {
                        depth -= 1;
                        if depth == 0 {
                            close_at = Some(i);
                            break;
                        }
                    }
                    _ => {}
                }
            }
            let c = close_at.ok_or_else(|| err(pos, "unbalanced `(` in coefficient"))?;
            (&after[..=c], c + 1)
        } else {
            let stop = after
                .find(|ch: char| ch.is_whitespace() || ch == '=')
                .unwrap_or(after.len());
            (&after[..stop], stop)
        };
        coeff = parse_scalar(ctext, vars)
            .map_err(|e| AlgebraError::from_expr(line, offset + pos, e))?;
        pos += used;
    } else {
        coeff = LaurentPoly::one(vars);
    }
    let rest = &text[pos..];
    let eq = rest.find('=').ok_or_else(|| err(pos, "expected `=`"))?;
    if !rest[..eq].trim().is_empty() {
        return Err(err(pos, "unexpected text before `=`"));
    }
    let rhs_start = pos + eq + 1;
    let ctx = ExprContext::new(vars, names);
    let rhs = parse_element(&text[rhs_start..], &ctx)
        .map_err(|e| AlgebraError::from_expr(line, offset + rhs_start, e))?;
    Ok(Relation {
        left,
        right,
        kind,
        coeff,
        rhs,
        provenance,
    })
}

/// Deterministic text form; relations ordered by generator pair.
pub(super) fn serialize(spec: &AlgebraSpec) -> String {
    let names = spec.names();
    let mut out = String::new();
    let _ = writeln!(out, "algebra: {}", spec.name());
    let _ = writeln!(out, "params: {}", spec.vars().names().join(" "));
    let gens: Vec<String> = spec
        .generators()
        .iter()
        .map(|g| format!("{}:{}", g.name, g.parity.as_str()))
        .collect();
    let _ = writeln!(out, "generators: {}", gens.join(" "));
    let completeness = match spec.completeness() {
        Completeness::Total => "total",
        Completeness::Partial => "partial",
    };
    let _ = writeln!(out, "completeness: {completeness}");
    out.push('\n');
    for rel in spec.relations() {
        out.push_str(&rel.render(&names));
        if let Provenance::Repaired(note) = &rel.provenance {
            let _ = write!(out, " {REPAIRED} {note}");
        }
        out.push('\n');
    }
    out
}
