//! q-integers and the Jackson derivative as exact matrices on monomial bases.
//!
//! Everything is expressed over the base variable `t` with `q = t^2`, so that
//! half-integer powers of `q` stay integral.

use thiserror::Error;

use crate::matrix::RepMatrix;
use crate::scalar::{LaurentPoly, Vars};

/// The base of a q-integer, written as a power of `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QBase {
    t_exponent: i32,
}

impl QBase {
    /// `q = t^2`.
    pub const Q: QBase = QBase { t_exponent: 2 };
    /// `q^2 = t^4`.
    pub const Q2: QBase = QBase { t_exponent: 4 };

    pub fn t_power(t_exponent: i32) -> Self {
        assert_ne!(t_exponent, 0, "q-integer base must not be 1");
        QBase { t_exponent }
    }

    pub fn t_exponent(self) -> i32 {
        self.t_exponent
    }

    /// `base^k` as a polynomial in `t`.
    pub fn pow(self, k: i32) -> LaurentPoly {
        t_pow(self.t_exponent * k)
    }
}

pub(crate) fn t_pow(k: i32) -> LaurentPoly {
    LaurentPoly::var_pow(&Vars::t(), "t", k).expect("t is declared")
}

/// `[n]_base = (1 - base^n) / (1 - base)`, expanded as a Laurent polynomial.
pub fn qint(n: i32, base: QBase) -> LaurentPoly {
    let mut out = LaurentPoly::zero(&Vars::t());
    if n >= 0 {
        for k in 0..n {
            out = &out + &base.pow(k);
        }
    } else {
        for k in n..0 {
            out = &out - &base.pow(k);
        }
    }
    out
}

/// Polynomials of degree at most `degree_bound` in the monomial basis `x^0..x^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolyBasis {
    pub degree_bound: usize,
}

impl PolyBasis {
    pub fn new(degree_bound: usize) -> Self {
        PolyBasis { degree_bound }
    }

    pub fn dim(self) -> usize {
        self.degree_bound + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QcalcError {
    #[error("x * x^{degree} does not fit in P({bound}); pass truncate = true to drop it")]
    DegreeOverflow { degree: usize, bound: usize },
}

/// Jackson derivative `D x^k = [k] x^(k-1)` on `P(n)`, as an `(n+1) x (n+1)` matrix.
pub fn jackson_matrix(basis: PolyBasis, base: QBase) -> RepMatrix {
    let zero = LaurentPoly::zero(&Vars::t());
    let mut m = RepMatrix::zeros(basis.dim(), &zero);
    for k in 1..=basis.degree_bound {
        m.set(k - 1, k, qint(k as i32, base));
    }
    m
}

/// Multiplication by `x` from `basis_in` into `basis_out` (rows index the output).
///
/// With `truncate`, the top monomial may be shifted out of range and is dropped.
pub fn mult_by_x_matrix(
    basis_in: PolyBasis,
    basis_out: PolyBasis,
    truncate: bool,
) -> Result<RepMatrix, QcalcError> {
    if basis_out.degree_bound < basis_in.degree_bound + 1 && !truncate {
        return Err(QcalcError::DegreeOverflow {
            degree: basis_in.degree_bound,
            bound: basis_out.degree_bound,
        });
    }
    let zero = LaurentPoly::zero(&Vars::t());
    let mut m = RepMatrix::zeros_rect(basis_out.dim(), basis_in.dim(), &zero);
    for k in 0..basis_in.dim() {
        if k < basis_out.degree_bound {
            m.set(k + 1, k, LaurentPoly::one(&Vars::t()));
        }
    }
    Ok(m)
}

/// Identity embedding of `P(small)` into `P(large)`, or the coordinate
/// projection when `large < small`.
pub fn embedding_matrix(from: PolyBasis, to: PolyBasis) -> RepMatrix {
    let zero = LaurentPoly::zero(&Vars::t());
    let mut m = RepMatrix::zeros_rect(to.dim(), from.dim(), &zero);
    for k in 0..from.dim().min(to.dim()) {
        m.set(k, k, LaurentPoly::one(&Vars::t()));
    }
    m
}

/// Diagonal operator `x^k ↦ f(k) x^k` on `P(n)`.
pub fn diagonal_matrix(basis: PolyBasis, mut f: impl FnMut(usize) -> LaurentPoly) -> RepMatrix {
    let zero = LaurentPoly::zero(&Vars::t());
    let mut m = RepMatrix::zeros(basis.dim(), &zero);
    for k in 0..basis.dim() {
        m.set(k, k, f(k));
    }
    m
}
