use std::fmt;

use num_traits::Zero;

use super::{Assignment, LaurentPoly, Rational, ScalarError, Vars};

/// Fraction of Laurent polynomials.
///
/// The denominator is scaled so its lexicographically leading term is exactly
/// `1`; no gcd reduction is attempted, and equality is decided by
/// cross-multiplication.
#[derive(Clone)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::ZeroDenominator);
        }
        if num.vars() != den.vars() {
            return Err(ScalarError::VarMismatch {
                left: num.vars().to_string(),
                right: den.vars().to_string(),
            });
        }
        let (e, c) = den.leading_term().expect("nonzero");
        let unit = LaurentPoly::monomial(den.vars(), c.clone(), e.clone()).inverse()?;
        Ok(RatFunc {
            num: &num * &unit,
            den: &den * &unit,
        })
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        let den = LaurentPoly::one(p.vars());
        RatFunc { num: p, den }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `a.num * b.den == b.num * a.den`.
    pub fn try_eq(&self, other: &Self) -> Result<bool, ScalarError> {
        Ok(self.num.try_mul(&other.den)? == other.num.try_mul(&self.den)?)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ScalarError> {
        let num = self
            .num
            .try_mul(&other.den)?
            .try_add(&other.num.try_mul(&self.den)?)?;
        RatFunc::new(num, self.den.try_mul(&other.den)?)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        RatFunc::new(self.num.try_mul(&other.num)?, self.den.try_mul(&other.den)?)
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn evaluate(&self, assignment: &Assignment) -> Result<Rational, ScalarError> {
        let d = self.den.evaluate(assignment)?;
        if d.is_zero() {
            return Err(ScalarError::ZeroDenominator);
        }
        Ok(self.num.evaluate(assignment)? / d)
    }

    /// Value at `t^2 = q` for univariate functions of `t` with even exponents.
    pub fn evaluate_at_q(&self, q: &Rational) -> Result<Rational, ScalarError> {
        let d = self.den.evaluate_at_q(q)?;
        if d.is_zero() {
            return Err(ScalarError::ZeroDenominator);
        }
        Ok(self.num.evaluate_at_q(q)? / d)
    }
}

/// Cross-multiplication equality; contexts must agree.
pub fn ratfunc_eq(a: &RatFunc, b: &RatFunc) -> Result<bool, ScalarError> {
    a.try_eq(b)
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        self.try_eq(other).unwrap_or(false)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}
