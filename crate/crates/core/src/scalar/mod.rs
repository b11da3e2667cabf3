//! Exact coefficient arithmetic.
//!
//! The tower is `Rational` (arbitrary precision) → [`LaurentPoly`] over a
//! named variable list → [`RatFunc`]. Nothing here ever touches floating
//! point.

mod laurent;
mod ratfunc;
mod rational;
mod specialize;

pub use laurent::{Exponents, LaurentPoly, Vars};
pub use ratfunc::{ratfunc_eq, RatFunc};
pub use rational::{parse_rational, rational, Rational};
pub use specialize::{Assignment, Specialization};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("incompatible scalar contexts: [{left}] vs [{right}]")]
    VarMismatch { left: String, right: String },
    #[error(
        "division by zero: variable `{var}` is assigned 0 but appears with a negative exponent"
    )]
    DivisionByZero { var: String },
    #[error("variable `{0}` has no assigned value")]
    Unassigned(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("`{0}` is not an invertible scalar (a nonzero Laurent monomial is required)")]
    NotInvertible(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("odd power t^{0} cannot be evaluated from a value of q = t^2")]
    OddPower(i32),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Minimal ring interface shared by the dense matrix code.
///
/// Values carry their own context (a Laurent polynomial knows its variable
/// list), so constants are produced from an existing value.
pub trait Ring: Clone + PartialEq + std::fmt::Debug + std::fmt::Display {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rational_like(&self, r: &Rational) -> Self;
}

impl Ring for Rational {
    fn zero_like(&self) -> Self {
        Rational::from_integer(0.into())
    }
    fn one_like(&self) -> Self {
        Rational::from_integer(1.into())
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rational_like(&self, r: &Rational) -> Self {
        r.clone()
    }
}

impl Ring for LaurentPoly {
    fn zero_like(&self) -> Self {
        LaurentPoly::zero(self.vars())
    }
    fn one_like(&self) -> Self {
        LaurentPoly::one(self.vars())
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rational_like(&self, r: &Rational) -> Self {
        LaurentPoly::constant(self.vars(), r.clone())
    }
}
