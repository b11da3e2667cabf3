//! The deformed `osp(1,2)` on `P(n-1) ⊕ P(n)` and the search for central
//! elements of degree at most two.

use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::Value;

use super::osp22::derive_bosonic;
use super::span::commutant_of;
use super::{GradedModule, RepError, RepSet};
use crate::algebra::{builtin_osp12_q, AlgebraSpec, Parity};
use crate::element::{Element, Word};
use crate::linalg::{Dense, EchelonBasis};
use crate::matrix::{Matrix, RepMatrix};
use crate::qcalc::{
    embedding_matrix, jackson_matrix, mult_by_x_matrix, qint, t_pow, PolyBasis, QBase,
};
use crate::scalar::{rational, LaurentPoly, RatFunc, Rational, Vars};

/// `Vm = (0, D_{q²}; 1, 0)`, `Vp = (0, q^-2n (x D_{q²} - [n]_{q²}); x, 0)`,
/// with `H`, `Jm`, `Jp` derived from their defining anti-quommutators.
pub fn build_osp12(n: usize) -> Result<RepSet, RepError> {
    let module = GradedModule::new(n)?;
    let (small, big) = (PolyBasis::new(n - 1), PolyBasis::new(n));
    let dim = module.dim();
    let zero = LaurentPoly::zero(&Vars::t());
    let one = LaurentPoly::one(&Vars::t());
    let fermion = |up: &RepMatrix, down: &RepMatrix| {
        let mut m = RepMatrix::zeros(dim, &zero);
        m.put_block(0, n, up);
        m.put_block(n, 0, down);
        m
    };
    let project = embedding_matrix(big, small);
    let d = jackson_matrix(big, QBase::Q2);
    let x = mult_by_x_matrix(big, big, true).expect("truncation requested");
    let shifted = x
        .mul(&d)
        .sub(&RepMatrix::identity(big.dim(), &one).scale(&qint(n as i32, QBase::Q2)))
        .scale(&t_pow(-4 * n as i32));

    let mut reps = RepSet::new(module);
    reps.insert(
        "Vm",
        Parity::Fermion,
        fermion(&project.mul(&d), &embedding_matrix(small, big)),
    );
    reps.insert(
        "Vp",
        Parity::Fermion,
        fermion(
            &project.mul(&shifted),
            &mult_by_x_matrix(small, big, false).expect("P(n-1) fits in P(n) after x"),
        ),
    );
    derive_bosonic(&builtin_osp12_q(), &reps)
}

/// The empty word, the five letters, and all 25 ordered pairs.
pub fn quadratic_words(spec: &AlgebraSpec) -> Vec<Word> {
    let k = spec.generators().len();
    let mut words = vec![Word::empty()];
    words.extend((0..k).map(Word::letter));
    for a in 0..k {
        for b in 0..k {
            words.push(Word(vec![a, b]));
        }
    }
    words
}

/// `-1/2 [-n-1/2]_{q²}` written without a pole at `t = 1`:
/// `1/2 t^(-2m) [m]_{t²} / (1 + t²)` with `m = 2n+1`.
pub fn casimir_value(n: usize) -> RatFunc {
    let m = 2 * n as i32 + 1;
    let num = (&t_pow(-2 * m) * &qint(m, QBase::Q)).scale(&rational(1, 2));
    let den = &LaurentPoly::one(&Vars::t()) + &t_pow(2);
    RatFunc::new(num, den).expect("1 + t^2 is nonzero")
}

/// What "central" means for the search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CentralityKind {
    /// `[X, G] = 0` for every generator; scalar means `X = λ·1`.
    Commuting,
    /// `[X, B] = 0` for bosons and `{X, F} = 0` for fermions;
    /// scalar means `X = λ·P` with `P = +1` on `P(n-1)` and `-1` on `P(n)`.
    Graded,
}

impl CentralityKind {
    pub fn label(self) -> &'static str {
        match self {
            CentralityKind::Commuting => "commuting",
            CentralityKind::Graded => "graded",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Exact,
    Affine,
    Mismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PerGrade {
    pub n: usize,
    pub dim: usize,
    pub commutant_dim: usize,
    /// Dimension of the space of central matrices reached by the words.
    pub central_space_dim: usize,
    /// Every central matrix found is a multiple of the target.
    pub scalar_acting: bool,
    /// An element without constant term acting as the target, if any.
    pub nonidentity_element: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CasimirReport {
    pub schema: u32,
    pub algebra: String,
    pub kind: CentralityKind,
    pub q: String,
    pub ns: Vec<usize>,
    pub words: usize,
    pub per_n: Vec<PerGrade>,
    /// Elements with fixed coefficients that are central at every grade,
    /// one per independent scalar sequence.
    pub representatives: Vec<String>,
    /// `scalars[k][i]` is the value of representative `k` at grade `ns[i]`.
    pub scalars: Vec<Vec<String>>,
    pub expected_values: Vec<String>,
    pub classification: Classification,
    /// `true`, `false` or `"up_to_normalization"`.
    pub matches_paper_formula: Value,
    /// A combination of the representatives realizing the expected values,
    /// plus the constant offset needed in the affine case.
    pub realizing_element: Option<String>,
    pub realizing_offset: Option<String>,
    /// The sequence comparison has more grades than free parameters.
    pub determined: bool,
}

/// Solves `Σ a_k columns[k] = target`.
fn solve(columns: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let rows: Vec<Vec<Rational>> = (0..target.len())
        .map(|i| {
            let mut r: Vec<Rational> = columns.iter().map(|c| c[i].clone()).collect();
            r.push(-target[i].clone());
            r
        })
        .collect();
    let k = columns.len();
    let null = Dense::from_rows(rows).nullspace();
    let v = null.into_iter().find(|v| !v[k].is_zero())?;
    let s = v[k].clone();
    Some(v[..k].iter().map(|a| a / &s).collect())
}

fn element_of(words: &[Word], coeffs: &[Rational]) -> Element {
    let vars = Vars::t();
    let mut e = Element::zero(&vars);
    for (w, c) in words.iter().zip(coeffs) {
        if !c.is_zero() {
            e.add_term(w.clone(), LaurentPoly::constant(&vars, c.clone()));
        }
    }
    e
}

struct Grade {
    n: usize,
    dim: usize,
    gens: Vec<Matrix<Rational>>,
    words: Vec<Matrix<Rational>>,
    target: Matrix<Rational>,
    system: Dense,
}

impl Grade {
    fn new(
        n: usize,
        spec: &AlgebraSpec,
        words: &[Word],
        q: &Rational,
        kind: CentralityKind,
    ) -> Result<Self, RepError> {
        let reps = build_osp12(n)?;
        let dim = reps.dim();
        let evaluated = reps.evaluate_at_q(q)?;
        let lookup: Vec<&Matrix<Rational>> = spec
            .generators()
            .iter()
            .map(|g| {
                evaluated
                    .iter()
                    .find(|(name, _, _)| *name == g.name)
                    .map(|(_, _, m)| m)
                    .ok_or_else(|| RepError::MissingGenerator(g.name.clone()))
            })
            .collect::<Result<_, _>>()?;
        let identity = Matrix::identity(dim, q);
        let word_mats: Vec<Matrix<Rational>> = words
            .iter()
            .map(|w| w.0.iter().fold(identity.clone(), |m, &g| m.mul(lookup[g])))
            .collect();
        let target = match kind {
            CentralityKind::Commuting => identity,
            CentralityKind::Graded => {
                let signs = reps.module().parity_signs();
                Matrix::from_fn(dim, |i, j| {
                    if i == j {
                        rational(signs[i], 1)
                    } else {
                        Rational::zero()
                    }
                })
            }
        };
        let cells = dim * dim;
        let mut system = Dense::zeros(lookup.len() * cells, words.len());
        for (gi, (g, gen)) in spec.generators().iter().zip(&lookup).enumerate() {
            let anti = kind == CentralityKind::Graded && g.parity == Parity::Fermion;
            for (wi, w) in word_mats.iter().enumerate() {
                let (a, b) = (w.mul(gen), gen.mul(w));
                let bracket = if anti { a.add(&b) } else { a.sub(&b) };
                for (k, v) in bracket.entries().iter().enumerate() {
                    system.set(gi * cells + k, wi, v.clone());
                }
            }
        }
        Ok(Grade {
            n,
            dim,
            gens: lookup.into_iter().cloned().collect(),
            words: word_mats,
            target,
            system,
        })
    }

    fn matrix_of(&self, coeffs: &[Rational]) -> Matrix<Rational> {
        let zero = Matrix::zeros(self.dim, &Rational::zero());
        self.words
            .iter()
            .zip(coeffs)
            .filter(|(_, c)| !c.is_zero())
            .fold(zero, |acc, (w, c)| acc.add(&w.scale(c)))
    }

    /// `λ` with `X = λ·target`, if `X` has that form.
    fn scalar_of(&self, x: &Matrix<Rational>) -> Option<Rational> {
        let lambda = x.get(0, 0) / self.target.get(0, 0);
        (x == &self.target.scale(&lambda)).then_some(lambda)
    }
}

/// Finds every combination of `quadratic_words` that is central in the
/// `osp(1,2)` representation at each grade of `ns`, evaluated at `q`, and
/// compares the resulting scalar sequences with the closed-form Casimir value.
pub fn central_quadratic_search(
    ns: &[usize],
    q: &Rational,
    kind: CentralityKind,
) -> Result<CasimirReport, RepError> {
    if q.is_zero() || (-q).is_one() {
        return Err(RepError::InvalidAssignment(q.to_string()));
    }
    let spec = builtin_osp12_q();
    let names = spec.names();
    let words = quadratic_words(&spec);
    let grades: Vec<Grade> = ns
        .iter()
        .map(|&n| Grade::new(n, &spec, &words, q, kind))
        .collect::<Result<_, _>>()?;

    let mut per_n = Vec::new();
    for g in &grades {
        let mut central = EchelonBasis::new(g.dim * g.dim);
        let mut scalar_acting = true;
        for c in g.system.nullspace() {
            let x = g.matrix_of(&c);
            scalar_acting &= g.scalar_of(&x).is_some();
            central.insert(x.entries().to_vec());
        }
        // Σ_{w ≠ 1} c_w W_w = target
        let nonidentity = solve(
            &g.words[1..]
                .iter()
                .map(|w| w.entries().to_vec())
                .collect::<Vec<_>>(),
            g.target.entries(),
        )
        .map(|c| {
            let mut full = vec![Rational::zero()];
            full.extend(c);
            element_of(&words, &full).display(&names).to_string()
        });
        per_n.push(PerGrade {
            n: g.n,
            dim: g.dim,
            commutant_dim: commutant_of(&g.gens, g.dim),
            central_space_dim: central.rank(),
            scalar_acting,
            nonidentity_element: nonidentity,
        });
    }

    // coefficient vectors central at every grade at once
    let mut joint = Dense::zeros(grades.iter().map(|g| g.system.rows).sum(), words.len());
    let mut offset = 0;
    for g in &grades {
        for r in 0..g.system.rows {
            for c in 0..words.len() {
                joint.set(offset + r, c, g.system.get(r, c).clone());
            }
        }
        offset += g.system.rows;
    }
    let k = ns.len();
    let mut rows = Vec::new();
    for c in joint.nullspace() {
        let mut row = Vec::with_capacity(k + words.len());
        for g in &grades {
            match g.scalar_of(&g.matrix_of(&c)) {
                Some(l) => row.push(l),
                None => {
                    return Err(RepError::InvalidAssignment(format!(
                        "{q}: central element is not scalar at n={}",
                        g.n
                    )))
                }
            }
        }
        row.extend(c);
        rows.push(row);
    }
    let mut reps_lambda: Vec<Vec<Rational>> = Vec::new();
    let mut reps_coeffs: Vec<Vec<Rational>> = Vec::new();
    if !rows.is_empty() {
        let mut m = Dense::from_rows(rows);
        let pivots = m.rref();
        for (r, &p) in pivots.iter().enumerate() {
            if p < k {
                let row = m.row(r);
                reps_lambda.push(row[..k].to_vec());
                reps_coeffs.push(row[k..].to_vec());
            }
        }
    }

    let expected: Vec<Rational> = ns
        .iter()
        .map(|&n| casimir_value(n).evaluate_at_q(q))
        .collect::<Result<_, _>>()?;
    let ones = vec![Rational::one(); k];
    let (classification, coeffs, beta) = if let Some(a) = solve(&reps_lambda, &expected) {
        (Classification::Exact, Some(a), None)
    } else {
        let mut cols = reps_lambda.clone();
        cols.push(ones.clone());
        match solve(&cols, &expected) {
            Some(mut a) => {
                let b = a.pop().expect("offset column");
                (Classification::Affine, Some(a), Some(b))
            }
            None => (Classification::Mismatch, None, None),
        }
    };
    let realizing_element = coeffs.map(|a| {
        let mut total = vec![Rational::zero(); words.len()];
        for (ak, ck) in a.iter().zip(&reps_coeffs) {
            for (t, c) in total.iter_mut().zip(ck) {
                *t += ak * c;
            }
        }
        element_of(&words, &total).display(&names).to_string()
    });
    let matches = match classification {
        Classification::Exact => Value::Bool(true),
        Classification::Affine => Value::String("up_to_normalization".into()),
        Classification::Mismatch => Value::Bool(false),
    };
    let free = reps_lambda.len() + usize::from(classification == Classification::Affine);
    Ok(CasimirReport {
        schema: crate::report::SCHEMA,
        algebra: spec.name().to_string(),
        kind,
        q: q.to_string(),
        ns: ns.to_vec(),
        words: words.len(),
        per_n,
        representatives: reps_coeffs
            .iter()
            .map(|c| element_of(&words, c).display(&names).to_string())
            .collect(),
        scalars: reps_lambda
            .iter()
            .map(|l| l.iter().map(ToString::to_string).collect())
            .collect(),
        expected_values: expected.iter().map(ToString::to_string).collect(),
        classification,
        matches_paper_formula: matches,
        realizing_element,
        realizing_offset: beta.map(|b| b.to_string()),
        determined: free < k,
    })
}
