use std::sync::OnceLock;

use super::{load_algebra, AlgebraSpec, Relation};
use crate::scalar::Specialization;

const OSP22_PRS: &str = "\
# Three-parameter quommutator deformation of osp(2,2).
algebra: osp22prs
params: p r s
generators: E11:boson E22:boson E12:boson E21:boson V1:fermion V2:fermion Vb1:fermion Vb2:fermion
completeness: total

{V1,V1}_(0) = 0
{V2,V2}_(0) = 0
{Vb1,Vb1}_(0) = 0
{Vb2,Vb2}_(0) = 0
{V1,V2}_(p r^-1 s^-1) = 0
{Vb1,Vb2}_(p^-1 r^-1 s) = 0

{Vb1,V1}_(1) = E11
{Vb2,V2}_(1) = E22
{Vb1,V2}_(p r s) = E12
{Vb2,V1}_(p r^-1 s) = E21 @repaired: the source table reads {Vb2,V2}_(p r^-1 s) = E22, repeating the (Vb2,V2) pair and leaving (Vb2,V1) and E21 undefined

[E11,V1]_(1) = 0
[E22,V1]_(s^2) = V1
[E21,V1]_(p r^-1 s) = 0
[E12,V1]_(p^-1 r s) = -(p^-1 r s)*V2
[E11,V2]_(p^2) = V2
[E22,V2]_(1) = 0
[E21,V2]_(p r^-1 s^-1) = -(p r^-1 s^-1)*V1
[E12,V2]_(p r s) = 0

[E11,Vb1]_(1) = 0
[E22,Vb1]_(s^-2) = -(s^-2)*Vb1
[E21,Vb1]_(p r s^-1) = Vb2
[E12,Vb1]_(p^-1 r^-1 s^-1) = 0
[E11,Vb2]_(p^-2) = -(p^-2)*Vb2
[E22,Vb2]_(1) = 0
[E21,Vb2]_(p^-1 r s^-1) = 0
[E12,Vb2]_(p^-1 r^-1 s) = Vb1

[E11,E22]_(1) = 0
[E11,E21]_(p^-2) = -(p^-2)*E21
[E22,E21]_(s^2) = E21
[E11,E12]_(p^2) = E12
[E22,E12]_(s^-2) = -(s^-2)*E12
[E12,E21]_(p^-2 s^2) = E11 - (p^-2 s^2)*E22 + (s^2 - 1)*V1*Vb1 - (p^-2 s^2)*(p^2 - 1)*V2*Vb2 @repaired: the source table attaches this relation to the pair (E22,E12), which already has its own relation; the quadratic relation belongs to (E12,E21)
";

const OSP12_Q: &str = "\
# Defining anti-quommutators of the deformed osp(1,2); bosonic relations are not asserted.
algebra: osp12q
params: t
generators: H:boson Jm:boson Jp:boson Vm:fermion Vp:fermion
completeness: partial

{Vm,Vp}_(q) = H
{Vm,Vm}_(q) = Jm
{Vp,Vp}_(q) = Jp
";

fn cached(cell: &'static OnceLock<AlgebraSpec>, make: fn() -> AlgebraSpec) -> AlgebraSpec {
    cell.get_or_init(make).clone()
}

/// The repaired three-parameter `osp(2,2)` table over `{p, r, s}`.
pub fn builtin_osp22_prs() -> AlgebraSpec {
    static CELL: OnceLock<AlgebraSpec> = OnceLock::new();
    cached(&CELL, || {
        load_algebra(OSP22_PRS).expect("built-in table is valid")
    })
}

/// One-parameter specialization `p = t, s = 1/t, r = 1` (`q = t^2`).
pub fn builtin_osp22_q() -> AlgebraSpec {
    static CELL: OnceLock<AlgebraSpec> = OnceLock::new();
    cached(&CELL, || {
        builtin_osp22_prs()
            .specialize(Specialization::OneParameter, "osp22q")
            .expect("specialization of p, r, s")
    })
}

fn builtin_osp22_classical() -> AlgebraSpec {
    builtin_osp22_prs()
        .specialize(Specialization::Classical, "osp22classical")
        .expect("specialization of p, r, s")
}

/// The three defining anti-quommutators of the deformed `osp(1,2)`. Partial.
pub fn builtin_osp12_q() -> AlgebraSpec {
    static CELL: OnceLock<AlgebraSpec> = OnceLock::new();
    cached(&CELL, || {
        load_algebra(OSP12_Q).expect("built-in table is valid")
    })
}

pub fn builtin_names() -> &'static [&'static str] {
    &["osp22prs", "osp22q", "osp22classical", "osp12q"]
}

pub fn builtin(name: &str) -> Option<AlgebraSpec> {
    match name {
        "osp22prs" => Some(builtin_osp22_prs()),
        "osp22q" => Some(builtin_osp22_q()),
        "osp22classical" => Some(builtin_osp22_classical()),
        "osp12q" => Some(builtin_osp12_q()),
        _ => None,
    }
}

/// A relation whose printed form is questionable, with the readings to test.
#[derive(Debug, Clone)]
pub struct PrintedVariant {
    pub id: &'static str,
    pub question: &'static str,
    /// `(label, relation)`; the label `literal` is the relation as printed.
    pub candidates: Vec<(&'static str, Relation)>,
    /// Label of the candidate stored in the built-in table.
    pub frozen: &'static str,
}

fn relation_from_line(line: &str) -> Relation {
    let header = "params: p r s\ngenerators: E11:boson E22:boson E12:boson E21:boson V1:fermion V2:fermion Vb1:fermion Vb2:fermion\ncompleteness: partial\n";
    let parsed = load_algebra(&format!("{header}{line}\n")).expect("candidate relation parses");
    parsed.relations()[0].clone()
}

/// Competing readings of the doubtful relations, over `{p, r, s}`.
pub fn printed_variants() -> Vec<PrintedVariant> {
    let quadratic_rhs = "E11 - (p^-2 s^2)*E22 + (s^2 - 1)*V1*Vb1 - (p^-2 s^2)*(p^2 - 1)*V2*Vb2";
    vec![
        PrintedVariant {
            id: "fourth-fermion-pair",
            question: "which fermion pair defines E21",
            candidates: vec![
                ("literal", relation_from_line("{Vb2,V2}_(p r^-1 s) = E22")),
                ("repaired", relation_from_line("{Vb2,V1}_(p r^-1 s) = E21")),
            ],
            frozen: "repaired",
        },
        PrintedVariant {
            id: "quadratic-pair",
            question: "which boson pair carries the quadratic relation",
            candidates: vec![
                (
                    "literal",
                    relation_from_line(&format!("[E22,E12]_(p^-2 s^2) = {quadratic_rhs}")),
                ),
                (
                    "reversed",
                    relation_from_line(&format!("[E21,E12]_(p^-2 s^2) = {quadratic_rhs}")),
                ),
                (
                    "repaired",
                    relation_from_line(&format!("[E12,E21]_(p^-2 s^2) = {quadratic_rhs}")),
                ),
            ],
            frozen: "repaired",
        },
        PrintedVariant {
            id: "e12-v1-scalar",
            question: "sign of the scalar in [E12,V1]",
            candidates: vec![
                (
                    "literal",
                    relation_from_line("[E12,V1]_(p^-1 r s) = -(p^-1 r s)*V2"),
                ),
                (
                    "flipped",
                    relation_from_line("[E12,V1]_(p^-1 r s) = (p^-1 r s)*V2"),
                ),
            ],
            frozen: "literal",
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{BracketKind, Parity};
    use crate::element::Word;
    use crate::scalar::{rational, LaurentPoly, Vars};

    fn prs(e: [i32; 3]) -> LaurentPoly {
        LaurentPoly::monomial(&Vars::prs(), rational(1, 1), e.to_vec())
    }

    #[test]
    fn osp22_table_examples() {
        let spec = builtin_osp22_prs();
        let v1v2 = spec.relation("V1", "V2").unwrap();
        assert_eq!(v1v2.kind, BracketKind::Antiquommutator);
        assert_eq!(v1v2.coeff, prs([1, -1, -1]));
        assert!(v1v2.rhs.is_zero());

        let e = spec.relation("E11", "E22").unwrap();
        assert_eq!(e.kind, BracketKind::Quommutator);
        assert!(e.coeff.is_one() && e.rhs.is_zero());

        let vb1v1 = spec.relation("Vb1", "V1").unwrap();
        assert_eq!(vb1v1.kind, BracketKind::Antiquommutator);
        assert_eq!(vb1v1.left, spec.id("Vb1").unwrap());
        assert!(vb1v1.coeff.is_one());
        let lin = vb1v1.rhs_linear();
        assert_eq!(lin.len(), 1);
        assert!(lin[&spec.id("E11").unwrap()].is_one());
    }

    #[test]
    fn coverage_and_parity_rule() {
        let spec = builtin_osp22_prs();
        let squares = spec.relations().iter().filter(|r| r.is_square()).count();
        assert_eq!(spec.relations().len() - squares, 28);
        assert_eq!(squares, 4);
        for r in spec.relations() {
            let odd =
                spec.parity(r.left) == Parity::Fermion && spec.parity(r.right) == Parity::Fermion;
            assert_eq!(odd, r.kind == BracketKind::Antiquommutator);
        }
        let quadratic: Vec<_> = spec
            .relations()
            .iter()
            .filter(|r| !r.rhs_quadratic().is_empty())
            .collect();
        assert_eq!(quadratic.len(), 1);
        assert_eq!(spec.relation_id(quadratic[0]), "[E12,E21]");
    }

    #[test]
    fn repaired_relations_are_flagged() {
        let spec = builtin_osp22_prs();
        let flagged: Vec<String> = spec
            .relations()
            .iter()
            .filter(|r| r.provenance.is_repaired())
            .map(|r| spec.relation_id(r))
            .collect();
        assert_eq!(flagged, ["[E12,E21]", "{Vb2,V1}"]);
    }

    #[test]
    fn specialized_coefficients() {
        let q = builtin_osp22_q();
        let t = |k| LaurentPoly::var_pow(&Vars::t(), "t", k).unwrap();
        assert_eq!(q.relation("E22", "E21").unwrap().coeff, t(-2));
        assert_eq!(q.relation("V1", "V2").unwrap().coeff, t(2));
    }

    #[test]
    fn classical_limit_is_undeformed() {
        let c = builtin("osp22classical").unwrap();
        for r in c.relations() {
            if r.is_square() {
                assert!(r.coeff.is_zero());
            } else {
                assert!(r.coeff.is_one(), "{}", c.relation_id(r));
            }
            assert!(r.rhs_quadratic().is_empty(), "{}", c.relation_id(r));
        }
    }

    #[test]
    fn osp12_defining_relations() {
        let spec = builtin_osp12_q();
        assert!(!spec.is_total());
        let q = LaurentPoly::var_pow(&Vars::t(), "t", 2).unwrap();
        for (a, b, target) in [("Vm", "Vp", "H"), ("Vm", "Vm", "Jm"), ("Vp", "Vp", "Jp")] {
            let r = spec.relation(a, b).unwrap();
            assert_eq!(r.kind, BracketKind::Antiquommutator);
            assert_eq!(r.coeff, q);
            let word = Word::letter(spec.id(target).unwrap());
            assert!(r.rhs.coeff(&word).unwrap().is_one());
        }
    }

    #[test]
    fn variants_reference_the_frozen_table() {
        let spec = builtin_osp22_prs();
        for v in printed_variants() {
            let frozen = &v.candidates.iter().find(|(l, _)| *l == v.frozen).unwrap().1;
            let stored = spec
                .relations()
                .iter()
                .find(|r| r.pair() == frozen.pair())
                .unwrap();
            assert_eq!(
                (stored.left, stored.right, &stored.coeff, &stored.rhs),
                (frozen.left, frozen.right, &frozen.coeff, &frozen.rhs),
                "{}",
                v.id
            );
        }
    }
}
