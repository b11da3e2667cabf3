use serde::Serialize;

use super::{from_vec, generic_q, to_vec, RepError, RepSet};
use crate::linalg::{Dense, EchelonBasis};
use crate::matrix::Matrix;
use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpanReport {
    pub schema: u32,
    pub n: usize,
    pub q: String,
    pub generators: Vec<String>,
    /// Rank of the span of all words of length at most `k`, for `k = 0, 1, ...`.
    pub ranks_by_word_length: Vec<usize>,
    pub full_rank: usize,
    pub saturated: bool,
    pub saturating_length: Option<usize>,
}

/// Rank of the span of all products of at most `max_word_length` generator
/// matrices (the empty product included), evaluated at `q`.
///
/// Stops early once the span reaches the full matrix algebra or stops growing.
pub fn span_rank(
    reps: &RepSet,
    max_word_length: usize,
    q: &Rational,
) -> Result<SpanReport, RepError> {
    generic_q(q)?;
    let dim = reps.dim();
    let full = dim * dim;
    let gens: Vec<Matrix<Rational>> = reps
        .evaluate_at_q(q)?
        .into_iter()
        .map(|(_, _, m)| m)
        .collect();
    let identity = Matrix::identity(dim, q);

    let mut span = EchelonBasis::new(full);
    span.insert(to_vec(&identity));
    let mut ranks = vec![span.rank()];
    for _ in 0..max_word_length {
        if span.rank() == full {
            break;
        }
        // words of length <= k are 1 together with g * (words of length <= k-1)
        let mut next = EchelonBasis::new(full);
        next.insert(to_vec(&identity));
        for v in span.vectors() {
            let m = from_vec(dim, v);
            for g in &gens {
                next.insert(to_vec(&g.mul(&m)));
            }
        }
        let grew = next.rank() > span.rank();
        span = next;
        ranks.push(span.rank());
        if !grew {
            break;
        }
    }
    let saturating_length = ranks.iter().position(|&r| r == full);
    Ok(SpanReport {
        schema: crate::report::SCHEMA,
        n: reps.module().n,
        q: q.to_string(),
        generators: reps.names(),
        ranks_by_word_length: ranks,
        full_rank: full,
        saturated: saturating_length.is_some(),
        saturating_length,
    })
}

/// Dimension of `{X : X G = G X for every generator G}` at `q`.
pub fn commutant_dimension(reps: &RepSet, q: &Rational) -> Result<usize, RepError> {
    generic_q(q)?;
    let gens: Vec<Matrix<Rational>> = reps
        .evaluate_at_q(q)?
        .into_iter()
        .map(|(_, _, m)| m)
        .collect();
    Ok(commutant_of(&gens, reps.dim()))
}

pub(crate) fn commutant_of(gens: &[Matrix<Rational>], dim: usize) -> usize {
    let unknowns = dim * dim;
    let mut system = Dense::zeros(gens.len() * unknowns, unknowns);
    for (k, g) in gens.iter().enumerate() {
        for i in 0..dim {
            for j in 0..dim {
                let row = k * unknowns + i * dim + j;
                // (XG - GX)_ij = Σ_m X_im G_mj - G_im X_mj
                for m in 0..dim {
                    let a = i * dim + m;
                    let v = system.get(row, a) + g.get(m, j);
                    system.set(row, a, v);
                    let b = m * dim + j;
                    let v = system.get(row, b) - g.get(i, m);
                    system.set(row, b, v);
                }
            }
        }
    }
    unknowns - system.rank()
}
