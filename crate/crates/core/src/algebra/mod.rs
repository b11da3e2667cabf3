//! Quommutator superalgebras as data: generators with parity and one
//! structure relation per generator pair.

mod builtin;
mod text;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::element::{Element, GenId, Word};
use crate::expr::ExprError;
use crate::scalar::{LaurentPoly, ScalarError, Specialization, Vars};

pub use builtin::{
    builtin, builtin_names, builtin_osp12_q, builtin_osp22_prs, builtin_osp22_q, printed_variants,
    PrintedVariant,
};
pub use text::load_algebra;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Boson,
    Fermion,
}

impl Parity {
    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Boson => "boson",
            Parity::Fermion => "fermion",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub parity: Parity,
    pub order_index: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BracketKind {
    /// `[A,B]_c = AB - c BA`
    Quommutator,
    /// `{A,B}_c = AB + c BA`
    Antiquommutator,
}

impl BracketKind {
    /// Sign in front of `c BA`.
    pub fn sign(self) -> i64 {
        match self {
            BracketKind::Quommutator => -1,
            BracketKind::Antiquommutator => 1,
        }
    }
}

/// Whether a relation is copied as printed or was corrected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "note", rename_all = "lowercase")]
pub enum Provenance {
    Verbatim,
    Repaired(String),
}

impl Provenance {
    pub fn is_repaired(&self) -> bool {
        matches!(self, Provenance::Repaired(_))
    }
}

/// `bracket(left, right)_coeff = rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub left: GenId,
    pub right: GenId,
    pub kind: BracketKind,
    pub coeff: LaurentPoly,
    pub rhs: Element,
    pub provenance: Provenance,
}

impl Relation {
    pub fn is_square(&self) -> bool {
        self.left == self.right
    }

    /// Unordered pair key `(min, max)`.
    pub fn pair(&self) -> (GenId, GenId) {
        (self.left.min(self.right), self.left.max(self.right))
    }

    /// Degree-one part of the right-hand side.
    pub fn rhs_linear(&self) -> BTreeMap<GenId, LaurentPoly> {
        self.rhs
            .terms()
            .filter(|(w, _)| w.len() == 1)
            .map(|(w, c)| (w.0[0], c.clone()))
            .collect()
    }

    /// Degree-two part of the right-hand side, keyed by ordered pair.
    pub fn rhs_quadratic(&self) -> BTreeMap<(GenId, GenId), LaurentPoly> {
        self.rhs
            .terms()
            .filter(|(w, _)| w.len() == 2)
            .map(|(w, c)| ((w.0[0], w.0[1]), c.clone()))
            .collect()
    }

    /// `left*right ± coeff*right*left - rhs` in the free algebra.
    pub fn as_element(&self) -> Element {
        let vars = self.coeff.vars();
        let lr = Element::word(vars, Word(vec![self.left, self.right]));
        let rl = Element::word(vars, Word(vec![self.right, self.left]));
        let signed = self
            .coeff
            .scale(&crate::scalar::rational(self.kind.sign(), 1));
        lr.add(&rl.scale(&signed)).sub(&self.rhs)
    }

    /// Display form, e.g. `[E22,V1]_(s^2) = V1`.
    pub fn render(&self, names: &[String]) -> String {
        let (open, close) = match self.kind {
            BracketKind::Quommutator => ('[', ']'),
            BracketKind::Antiquommutator => ('{', '}'),
        };
        format!(
            "{open}{},{}{close}_({}) = {}",
            names[self.left],
            names[self.right],
            self.coeff,
            self.rhs.display(names)
        )
    }

    pub fn specialize(&self, rule: Specialization) -> Result<Relation, ScalarError> {
        self.map_scalars(&rule.target(), &|c| rule.apply(c))
    }

    fn map_scalars(
        &self,
        target: &Vars,
        f: &impl Fn(&LaurentPoly) -> Result<LaurentPoly, ScalarError>,
    ) -> Result<Relation, ScalarError> {
        Ok(Relation {
            left: self.left,
            right: self.right,
            kind: self.kind,
            coeff: f(&self.coeff)?,
            rhs: self.rhs.map_coeffs(target, f)?,
            provenance: self.provenance.clone(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Completeness {
    /// Every pair of distinct generators and every fermionic square has a relation.
    Total,
    /// Only some relations are asserted; rewriting is refused.
    Partial,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("relation ({0},{1}): antiquommutator is required exactly when both generators are fermionic")]
    ParityRule(String, String),
    #[error("relation ({0},{0}): only fermionic generators have square relations")]
    BosonicSquare(String),
    #[error("missing relation for pair ({0},{1})")]
    MissingRelation(String, String),
    #[error("duplicate relation for pair ({0},{1})")]
    DuplicateRelation(String, String),
    #[error("relation ({0},{1}) uses a different scalar context")]
    Context(String, String),
    #[error("line {line}, column {column}: {msg}")]
    Parse {
        line: usize,
        column: usize,
        msg: String,
    },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

impl AlgebraError {
    fn parse(line: usize, column: usize, msg: impl Into<String>) -> Self {
        AlgebraError::Parse {
            line,
            column,
            msg: msg.into(),
        }
    }

    fn from_expr(line: usize, offset: usize, e: ExprError) -> Self {
        AlgebraError::parse(line, offset + e.position() + 1, e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraSpec {
    name: String,
    vars: Vars,
    generators: Vec<Generator>,
    relations: Vec<Relation>,
    completeness: Completeness,
}

impl AlgebraSpec {
    /// Validates names, the parity rule and (for total specs) coverage.
    pub fn new(
        name: impl Into<String>,
        vars: Vars,
        generators: Vec<(String, Parity)>,
        relations: Vec<Relation>,
        completeness: Completeness,
    ) -> Result<Self, AlgebraError> {
        let mut seen = BTreeSet::new();
        for (g, _) in &generators {
            if !seen.insert(g.clone()) {
                return Err(AlgebraError::DuplicateGenerator(g.clone()));
            }
        }
        let generators: Vec<Generator> = generators
            .into_iter()
            .enumerate()
            .map(|(order_index, (name, parity))| Generator {
                name,
                parity,
                order_index,
            })
            .collect();
        let names: Vec<String> = generators.iter().map(|g| g.name.clone()).collect();
        let mut pairs = BTreeSet::new();
        for rel in &relations {
            let ids = rel.rhs.terms().flat_map(|(w, _)| w.0.clone());
            if let Some(bad) = ids.chain([rel.left, rel.right]).find(|&g| g >= names.len()) {
                return Err(AlgebraError::UnknownGenerator(format!("#{bad}")));
            }
            let (a, b) = (&names[rel.left], &names[rel.right]);
            if rel.coeff.vars() != &vars || rel.rhs.vars() != &vars {
                return Err(AlgebraError::Context(a.clone(), b.clone()));
            }
            let both_odd = generators[rel.left].parity == Parity::Fermion
                && generators[rel.right].parity == Parity::Fermion;
            if both_odd != (rel.kind == BracketKind::Antiquommutator) {
                return Err(AlgebraError::ParityRule(a.clone(), b.clone()));
            }
            if rel.is_square() && !both_odd {
                return Err(AlgebraError::BosonicSquare(a.clone()));
            }
            if !pairs.insert(rel.pair()) {
                return Err(AlgebraError::DuplicateRelation(a.clone(), b.clone()));
            }
        }
        if completeness == Completeness::Total {
            for i in 0..generators.len() {
                if generators[i].parity == Parity::Fermion && !pairs.contains(&(i, i)) {
                    return Err(AlgebraError::MissingRelation(
                        names[i].clone(),
                        names[i].clone(),
                    ));
                }
                for j in i + 1..generators.len() {
                    if !pairs.contains(&(i, j)) {
                        return Err(AlgebraError::MissingRelation(
                            names[i].clone(),
                            names[j].clone(),
                        ));
                    }
                }
            }
        }
        let mut relations = relations;
        relations.sort_by_key(|r| (r.pair(), r.left));
        Ok(AlgebraSpec {
            name: name.into(),
            vars,
            generators,
            relations,
            completeness,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    /// Relations, sorted by the order indices of their generator pair.
    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn completeness(&self) -> Completeness {
        self.completeness
    }

    pub fn is_total(&self) -> bool {
        self.completeness == Completeness::Total
    }

    pub fn index_of(&self, name: &str) -> Option<GenId> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn id(&self, name: &str) -> Result<GenId, AlgebraError> {
        self.index_of(name)
            .ok_or_else(|| AlgebraError::UnknownGenerator(name.to_string()))
    }

    pub fn parity(&self, g: GenId) -> Parity {
        self.generators[g].parity
    }

    /// The relation on the unordered pair `{a, b}`.
    pub fn relation(&self, a: &str, b: &str) -> Option<&Relation> {
        let key = {
            let (x, y) = (self.index_of(a)?, self.index_of(b)?);
            (x.min(y), x.max(y))
        };
        self.relations.iter().find(|r| r.pair() == key)
    }

    pub fn render_relation(&self, rel: &Relation) -> String {
        rel.render(&self.names())
    }

    /// Stable identifier such as `[E22,V1]` or `{V1,V1}`.
    pub fn relation_id(&self, rel: &Relation) -> String {
        let names = self.names();
        match rel.kind {
            BracketKind::Quommutator => format!("[{},{}]", names[rel.left], names[rel.right]),
            BracketKind::Antiquommutator => format!("{{{},{}}}", names[rel.left], names[rel.right]),
        }
    }

    /// Applies a parameter substitution to every coefficient.
    pub fn specialize(
        &self,
        rule: Specialization,
        name: &str,
    ) -> Result<AlgebraSpec, AlgebraError> {
        let target = rule.target();
        let relations = self
            .relations
            .iter()
            .map(|r| r.map_scalars(&target, &|c| rule.apply(c)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(AlgebraSpec {
            name: name.to_string(),
            vars: target,
            generators: self.generators.clone(),
            relations,
            completeness: self.completeness,
        })
    }

    /// Replaces the bracket coefficient of the relation on `{a, b}`.
    pub fn perturb(
        &self,
        a: &str,
        b: &str,
        coeff: LaurentPoly,
    ) -> Result<AlgebraSpec, AlgebraError> {
        let (x, y) = (self.id(a)?, self.id(b)?);
        let key = (x.min(y), x.max(y));
        if coeff.vars() != &self.vars {
            return Err(AlgebraError::Context(a.to_string(), b.to_string()));
        }
        let mut out = self.clone();
        let rel = out
            .relations
            .iter_mut()
            .find(|r| r.pair() == key)
            .ok_or_else(|| AlgebraError::MissingRelation(a.to_string(), b.to_string()))?;
        rel.coeff = coeff;
        rel.provenance = Provenance::Repaired("coefficient perturbed".into());
        out.name = format!("{}+perturbed({a},{b})", self.name);
        Ok(out)
    }

    /// Drops the relation on `pair` and adds `rel`, revalidating the table.
    pub fn replace_relation(
        &self,
        pair: (GenId, GenId),
        rel: Relation,
    ) -> Result<AlgebraSpec, AlgebraError> {
        let mut relations: Vec<Relation> = self
            .relations
            .iter()
            .filter(|r| r.pair() != pair)
            .cloned()
            .collect();
        relations.push(rel);
        AlgebraSpec::new(
            self.name.clone(),
            self.vars.clone(),
            self.generators
                .iter()
                .map(|g| (g.name.clone(), g.parity))
                .collect(),
            relations,
            self.completeness,
        )
    }

    pub fn to_text(&self) -> String {
        text::serialize(self)
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
