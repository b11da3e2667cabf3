use super::{require_t, GradedModule, RepError, RepSet};
use crate::algebra::{builtin_osp22_q, AlgebraSpec, Parity};
use crate::matrix::RepMatrix;
use crate::qcalc::{
    embedding_matrix, jackson_matrix, mult_by_x_matrix, qint, t_pow, PolyBasis, QBase,
};
use crate::scalar::{rational, LaurentPoly, Vars};

/// Scalar prefactor of `Vb2 = c * D_q σ₊`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Vb2Convention {
    /// `c = q^-1`, as printed. Seven relations of the table fail with it.
    Printed,
    /// `c = -q`, under which every relation of the table holds.
    #[default]
    Corrected,
}

impl Vb2Convention {
    pub fn prefactor(self) -> LaurentPoly {
        match self {
            Vb2Convention::Printed => t_pow(-2),
            Vb2Convention::Corrected => -t_pow(2),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Vb2Convention::Printed => "printed",
            Vb2Convention::Corrected => "corrected",
        }
    }
}

fn zero_t() -> LaurentPoly {
    LaurentPoly::zero(&Vars::t())
}

fn one_t() -> LaurentPoly {
    LaurentPoly::one(&Vars::t())
}

/// `V1 = σ₋`, `V2 = x σ₋`, `Vb1 = q^-n (x D_q - [n]_q) σ₊`, `Vb2 = c D_q σ₊`.
pub fn build_osp22_fermions(n: usize, convention: Vb2Convention) -> Result<RepSet, RepError> {
    let module = GradedModule::new(n)?;
    let (small, big) = (PolyBasis::new(n - 1), PolyBasis::new(n));
    let dim = module.dim();
    let lower = |block: &RepMatrix| {
        let mut m = RepMatrix::zeros(dim, &zero_t());
        m.put_block(n, 0, block);
        m
    };
    let upper = |block: &RepMatrix| {
        let mut m = RepMatrix::zeros(dim, &zero_t());
        m.put_block(0, n, block);
        m
    };
    let project = embedding_matrix(big, small);
    let d = jackson_matrix(big, QBase::Q);
    let x = mult_by_x_matrix(big, big, true).expect("truncation requested");
    let shifted = x
        .mul(&d)
        .sub(&RepMatrix::identity(big.dim(), &one_t()).scale(&qint(n as i32, QBase::Q)))
        .scale(&t_pow(-2 * n as i32));

    let mut reps = RepSet::new(module);
    reps.insert("V1", Parity::Fermion, lower(&embedding_matrix(small, big)));
    reps.insert(
        "V2",
        Parity::Fermion,
        lower(&mult_by_x_matrix(small, big, false).expect("P(n-1) fits in P(n) after x")),
    );
    reps.insert("Vb1", Parity::Fermion, upper(&project.mul(&shifted)));
    reps.insert(
        "Vb2",
        Parity::Fermion,
        upper(&project.mul(&d).scale(&convention.prefactor())),
    );
    Ok(reps)
}

/// Adds a matrix for every bosonic generator of `spec` that is defined by a
/// fermion-pair relation `{L,R}_c = B`, as `LR + c RL`.
pub fn derive_bosonic(spec: &AlgebraSpec, fermions: &RepSet) -> Result<RepSet, RepError> {
    require_t(spec)?;
    let mut out = fermions.clone();
    for g in spec
        .generators()
        .iter()
        .filter(|g| g.parity == Parity::Boson)
    {
        let defining = spec.relations().iter().find(|r| {
            spec.parity(r.left) == Parity::Fermion
                && spec.parity(r.right) == Parity::Fermion
                && r.rhs.len() == 1
                && r.rhs
                    .coeff(&crate::element::Word::letter(g.order_index))
                    .is_some_and(LaurentPoly::is_one)
        });
        let rel = defining.ok_or_else(|| RepError::Underived(g.name.clone()))?;
        let (l, r) = (
            &spec.generators()[rel.left].name,
            &spec.generators()[rel.right].name,
        );
        let lm = fermions
            .get(l)
            .ok_or_else(|| RepError::MissingGenerator(l.clone()))?;
        let rm = fermions
            .get(r)
            .ok_or_else(|| RepError::MissingGenerator(r.clone()))?;
        let signed = rel.coeff.scale(&rational(rel.kind.sign(), 1));
        out.insert(
            &g.name,
            Parity::Boson,
            lm.mul(rm).add(&rm.mul(lm).scale(&signed)),
        );
    }
    Ok(out)
}

/// All eight generators of `osp(2,2)_q` on `P(n-1) ⊕ P(n)`.
pub fn build_osp22(n: usize, convention: Vb2Convention) -> Result<RepSet, RepError> {
    derive_bosonic(&builtin_osp22_q(), &build_osp22_fermions(n, convention)?)
}
