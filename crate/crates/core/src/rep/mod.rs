//! Finite-difference matrix representations on `P(n-1) ⊕ P(n)`.
//!
//! Basis layout is component-major: coordinates `0..n` hold `x^0..x^(n-1)`
//! of the first component, coordinates `n..2n+1` hold `x^0..x^n` of the
//! second. `σ₋` is the block mapping the first component into the second,
//! `σ₊` the block mapping the second into the first.

mod oracle;
mod osp12;
mod osp22;
mod span;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraSpec, Parity, Relation};
use crate::element::Element;
use crate::matrix::{Matrix, RepMatrix};
use crate::scalar::{LaurentPoly, Rational, Ring, ScalarError, Vars};

pub use oracle::{typo_oracle, CandidateOutcome, OracleReport, QuestionOutcome, Vb2Outcome};
pub use osp12::{
    build_osp12, casimir_value, central_quadratic_search, quadratic_words, CasimirReport,
    CentralityKind, Classification, PerGrade,
};
pub use osp22::{build_osp22, build_osp22_fermions, derive_bosonic, Vb2Convention};
pub use span::{commutant_dimension, span_rank, SpanReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("grade n must be at least 1, got {0}")]
    InvalidGrade(usize),
    #[error("representation has no matrix for generator `{0}`")]
    MissingGenerator(String),
    #[error("no fermion-pair relation defines the bosonic generator `{0}`")]
    Underived(String),
    #[error("algebra `{0}` must be over the single variable t")]
    NotSpecialized(String),
    #[error("q = {0} is not a generic value; use a rational other than 0, 1, -1")]
    InvalidAssignment(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Algebra(#[from] crate::algebra::AlgebraError),
}

/// `P(n-1) ⊕ P(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GradedModule {
    pub n: usize,
}

impl GradedModule {
    pub fn new(n: usize) -> Result<Self, RepError> {
        if n < 1 {
            return Err(RepError::InvalidGrade(n));
        }
        Ok(GradedModule { n })
    }

    pub fn dim(&self) -> usize {
        2 * self.n + 1
    }

    /// Offset and size of component 0 (`P(n-1)`) or 1 (`P(n)`).
    pub fn component(&self, which: usize) -> (usize, usize) {
        match which {
            0 => (0, self.n),
            _ => (self.n, self.n + 1),
        }
    }

    /// `+1` on the first component, `-1` on the second.
    pub fn parity_signs(&self) -> Vec<i64> {
        (0..self.dim())
            .map(|i| if i < self.n { 1 } else { -1 })
            .collect()
    }
}

/// Named generator matrices over `t`, acting on one graded module.
#[derive(Debug, Clone)]
pub struct RepSet {
    module: GradedModule,
    dim: usize,
    generators: Vec<(String, Parity, RepMatrix)>,
}

impl RepSet {
    pub fn new(module: GradedModule) -> Self {
        RepSet {
            module,
            dim: module.dim(),
            generators: Vec::new(),
        }
    }

    pub fn module(&self) -> GradedModule {
        self.module
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn insert(&mut self, name: &str, parity: Parity, m: RepMatrix) {
        assert_eq!(
            (m.rows(), m.cols()),
            (self.dim(), self.dim()),
            "generator size"
        );
        match self.generators.iter_mut().find(|(g, _, _)| g == name) {
            Some(slot) => *slot = (name.to_string(), parity, m),
            None => self.generators.push((name.to_string(), parity, m)),
        }
    }

    pub fn get(&self, name: &str) -> Option<&RepMatrix> {
        self.generators
            .iter()
            .find(|(g, _, _)| g == name)
            .map(|(_, _, m)| m)
    }

    pub fn names(&self) -> Vec<String> {
        self.generators.iter().map(|(g, _, _)| g.clone()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, Parity, &RepMatrix)> {
        self.generators.iter().map(|(g, p, m)| (g.as_str(), *p, m))
    }

    /// Restriction to the generators of one parity.
    pub fn only(&self, parity: Parity) -> RepSet {
        RepSet {
            module: self.module,
            dim: self.dim,
            generators: self
                .generators
                .iter()
                .filter(|(_, p, _)| *p == parity)
                .cloned()
                .collect(),
        }
    }

    /// Block-diagonal sum of two representations with the same generators.
    /// The module bookkeeping keeps the grade of `self`.
    pub fn direct_sum(&self, other: &RepSet) -> Result<RepSet, RepError> {
        let mut out = RepSet {
            module: self.module,
            dim: self.dim + other.dim,
            generators: Vec::new(),
        };
        for (g, p, m) in &self.generators {
            let o = other
                .get(g)
                .ok_or_else(|| RepError::MissingGenerator(g.clone()))?;
            out.generators.push((g.clone(), *p, m.direct_sum(o)));
        }
        Ok(out)
    }

    /// Exact evaluation at `q = t^2`.
    pub fn evaluate_at_q(
        &self,
        q: &Rational,
    ) -> Result<Vec<(String, Parity, Matrix<Rational>)>, RepError> {
        self.generators
            .iter()
            .map(|(g, p, m)| Ok((g.clone(), *p, m.evaluate_at_q(q)?)))
            .collect()
    }

    /// Checks the block invariant: bosons preserve each component,
    /// fermions swap them.
    pub fn respects_grading(&self) -> bool {
        let n = self.module.n;
        self.generators.iter().all(|(_, p, m)| {
            m.nonzero_entries().all(|(i, j, _)| {
                let same = (i < n) == (j < n);
                same == (*p == Parity::Boson)
            })
        })
    }

    pub(crate) fn lookup<'a>(&'a self, spec: &AlgebraSpec) -> Vec<Option<&'a RepMatrix>> {
        spec.generators()
            .iter()
            .map(|g| self.get(&g.name))
            .collect()
    }
}

/// Matrix of a free-algebra element, given generator matrices by spec id.
pub(crate) fn element_matrix<T: Ring>(
    e: &Element,
    spec: &AlgebraSpec,
    mats: &[Option<&Matrix<T>>],
    identity: &Matrix<T>,
    scalar: &impl Fn(&LaurentPoly) -> Result<T, ScalarError>,
) -> Result<Matrix<T>, RepError> {
    let mut out = identity.scale(&identity.get(0, 0).zero_like());
    for (w, c) in e.terms() {
        let mut m = identity.clone();
        for &g in &w.0 {
            let gm = mats[g]
                .ok_or_else(|| RepError::MissingGenerator(spec.generators()[g].name.clone()))?;
            m = m.mul(gm);
        }
        out = out.add(&m.scale(&scalar(c)?));
    }
    Ok(out)
}

fn residual_generic<T: Ring>(
    rel: &Relation,
    spec: &AlgebraSpec,
    mats: &[Option<&Matrix<T>>],
    identity: &Matrix<T>,
    scalar: &impl Fn(&LaurentPoly) -> Result<T, ScalarError>,
) -> Result<Matrix<T>, RepError> {
    element_matrix(&rel.as_element(), spec, mats, identity, scalar)
}

fn require_t(spec: &AlgebraSpec) -> Result<(), RepError> {
    if spec.vars() != &Vars::t() {
        return Err(RepError::NotSpecialized(spec.name().to_string()));
    }
    Ok(())
}

/// `left*right ± c*right*left - rhs` as a matrix; zero iff the relation holds.
pub fn check_relation(
    rel: &Relation,
    spec: &AlgebraSpec,
    reps: &RepSet,
) -> Result<RepMatrix, RepError> {
    require_t(spec)?;
    let one = LaurentPoly::one(&Vars::t());
    let id = RepMatrix::identity(reps.dim(), &one);
    residual_generic(rel, spec, &reps.lookup(spec), &id, &|c: &LaurentPoly| {
        Ok(c.clone())
    })
}

/// The same residual evaluated at a rational value of `t`.
pub fn check_relation_at_t(
    rel: &Relation,
    spec: &AlgebraSpec,
    reps: &RepSet,
    t: &Rational,
) -> Result<Matrix<Rational>, RepError> {
    require_t(spec)?;
    let evaluated: Vec<Option<Matrix<Rational>>> = reps
        .lookup(spec)
        .into_iter()
        .map(|m| m.map(|m| m.evaluate_at_t(t)).transpose())
        .collect::<Result<_, _>>()?;
    let refs: Vec<Option<&Matrix<Rational>>> = evaluated.iter().map(Option::as_ref).collect();
    let id = Matrix::identity(reps.dim(), t);
    let a = crate::scalar::Assignment::new().with("t", t.clone());
    residual_generic(rel, spec, &refs, &id, &|c: &LaurentPoly| c.evaluate(&a))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyMode {
    Symbolic,
    AtT(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidualEntry {
    pub row: usize,
    pub col: usize,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationFailure {
    pub relation_id: String,
    pub relation: String,
    pub residual_entries: Vec<ResidualEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub algebra: String,
    pub n: usize,
    pub mode: VerifyMode,
    pub relations_checked: usize,
    pub relations_passed: usize,
    pub failures: Vec<RelationFailure>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failed_ids(&self) -> Vec<String> {
        self.failures
            .iter()
            .map(|f| f.relation_id.clone())
            .collect()
    }
}

fn entries<T: Ring>(m: &Matrix<T>) -> Vec<ResidualEntry> {
    m.nonzero_entries()
        .map(|(row, col, v)| ResidualEntry {
            row,
            col,
            value: v.to_string(),
        })
        .collect()
}

/// Checks every relation of `spec` on `reps`, symbolically or at a value of `t`.
pub fn verify_all(
    spec: &AlgebraSpec,
    reps: &RepSet,
    at_t: Option<&Rational>,
) -> Result<VerificationReport, RepError> {
    let names = spec.names();
    let mut failures = Vec::new();
    for rel in spec.relations() {
        let nonzero = match at_t {
            None => entries(&check_relation(rel, spec, reps)?),
            Some(t) => entries(&check_relation_at_t(rel, spec, reps, t)?),
        };
        if !nonzero.is_empty() {
            failures.push(RelationFailure {
                relation_id: spec.relation_id(rel),
                relation: rel.render(&names),
                residual_entries: nonzero,
            });
        }
    }
    let checked = spec.relations().len();
    Ok(VerificationReport {
        schema: crate::report::SCHEMA,
        algebra: spec.name().to_string(),
        n: reps.module().n,
        mode: match at_t {
            None => VerifyMode::Symbolic,
            Some(t) => VerifyMode::AtT(t.to_string()),
        },
        relations_checked: checked,
        relations_passed: checked - failures.len(),
        failures,
    })
}

pub(crate) fn generic_q(q: &Rational) -> Result<(), RepError> {
    use num_traits::{One, Zero};
    if Zero::is_zero(q) || One::is_one(q) || One::is_one(&-q) {
        return Err(RepError::InvalidAssignment(q.to_string()));
    }
    Ok(())
}

pub(crate) fn to_vec(m: &Matrix<Rational>) -> Vec<Rational> {
    m.entries().to_vec()
}

pub(crate) fn from_vec(dim: usize, v: &[Rational]) -> Matrix<Rational> {
    Matrix::from_fn(dim, |i, j| v[i * dim + j].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtin_osp22_q;

    #[test]
    fn module_dimensions() {
        assert_eq!(GradedModule::new(3).unwrap().dim(), 7);
        assert_eq!(GradedModule::new(0).unwrap_err(), RepError::InvalidGrade(0));
        assert_eq!(GradedModule::new(2).unwrap().component(1), (2, 3));
    }

    #[test]
    fn three_parameter_spec_is_rejected() {
        let reps = build_osp22(1, Vb2Convention::default()).unwrap();
        let spec = crate::algebra::builtin_osp22_prs();
        let rel = &spec.relations()[0];
        assert!(matches!(
            check_relation(rel, &spec, &reps),
            Err(RepError::NotSpecialized(_))
        ));
        let q = builtin_osp22_q();
        assert!(check_relation(&q.relations()[0], &q, &reps)
            .unwrap()
            .is_zero());
    }
}
