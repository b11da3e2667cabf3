use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::{Assignment, Rational, ScalarError};

/// Ordered list of variable names shared by every polynomial of one context.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        Vars(names.iter().map(|s| s.as_ref().to_string()).collect())
    }

    /// The three deformation parameters `p, r, s`.
    pub fn prs() -> Self {
        Vars::new(&["p", "r", "s"])
    }

    /// The single base variable `t` with `q = t^2`.
    pub fn t() -> Self {
        Vars::new(&["t"])
    }

    pub fn empty() -> Self {
        Vars::new::<&str>(&[])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }
}

impl fmt::Debug for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.join(" "))
    }
}

impl fmt::Display for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.join(" "))
    }
}

pub type Exponents = Vec<i32>;

/// Sparse multivariate Laurent polynomial with rational coefficients.
///
/// Terms are kept in a `BTreeMap` keyed by exponent vector, zero
/// coefficients are never stored, so structural equality is mathematical
/// equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    vars: Vars,
    terms: BTreeMap<Exponents, Rational>,
}

impl LaurentPoly {
    pub fn zero(vars: &Vars) -> Self {
        LaurentPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn constant(vars: &Vars, c: Rational) -> Self {
        Self::monomial(vars, c, vec![0; vars.len()])
    }

    pub fn from_int(vars: &Vars, c: i64) -> Self {
        Self::constant(vars, Rational::from_integer(c.into()))
    }

    pub fn monomial(vars: &Vars, c: Rational, exps: Exponents) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentPoly {
            vars: vars.clone(),
            terms,
        }
    }

    /// `name^exp` with coefficient 1.
    pub fn var_pow(vars: &Vars, name: &str, exp: i32) -> Result<Self, ScalarError> {
        let idx = vars
            .index_of(name)
            .ok_or_else(|| ScalarError::UnknownVariable(name.to_string()))?;
        let mut exps = vec![0; vars.len()];
        exps[idx] = exp;
        Ok(Self::monomial(vars, Rational::one(), exps))
    }

    pub fn var(vars: &Vars, name: &str) -> Result<Self, ScalarError> {
        Self::var_pow(vars, name, 1)
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs, merging duplicates.
    pub fn from_terms<I>(vars: &Vars, terms: I) -> Self
    where
        I: IntoIterator<Item = (Rational, Exponents)>,
    {
        let mut out = Self::zero(vars);
        for (c, e) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length");
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, exps: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The constant value, if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn as_monomial(&self) -> Option<(&Exponents, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Leading term under lexicographic order on exponent vectors.
    pub fn leading_term(&self) -> Option<(&Exponents, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Inverse of a nonzero monomial; every other value is not a unit.
    pub fn inverse(&self) -> Result<Self, ScalarError> {
        match self.as_monomial() {
            Some((e, c)) => Ok(Self::monomial(
                &self.vars,
                c.recip(),
                e.iter().map(|x| -x).collect(),
            )),
            None => Err(ScalarError::NotInvertible(self.to_string())),
        }
    }

    fn check_ctx(&self, other: &Self) -> Result<(), ScalarError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(ScalarError::VarMismatch {
                left: self.vars.to_string(),
                right: other.vars.to_string(),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check_ctx(other)?;
        let mut out = Self::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Integer power; negative exponents are allowed only for monomials.
    pub fn pow(&self, exp: i32) -> Result<Self, ScalarError> {
        let base = if exp < 0 {
            self.inverse()?
        } else {
            self.clone()
        };
        let mut out = Self::one(&self.vars);
        for _ in 0..exp.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }

    /// Multiplies every exponent vector by the monomial `exps` (a unit shift).
    pub fn shift(&self, exps: &[i32]) -> Self {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(exps).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Exact value at a rational point.
    pub fn evaluate(&self, assignment: &Assignment) -> Result<Rational, ScalarError> {
        let values = self
            .vars
            .names()
            .iter()
            .map(|v| {
                assignment
                    .get(v)
                    .cloned()
                    .ok_or_else(|| ScalarError::Unassigned(v.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for ((name, value), &k) in self.vars.names().iter().zip(&values).zip(e) {
                if k < 0 && value.is_zero() {
                    return Err(ScalarError::DivisionByZero { var: name.clone() });
                }
                term *= rational_pow(value, k);
            }
            total += term;
        }
        Ok(total)
    }

    /// Substitutes `t^2 = q` in a polynomial over the single variable `t`.
    ///
    /// Fails on odd powers of `t`, which have no rational value from `q` alone.
    pub fn evaluate_at_q(&self, q: &Rational) -> Result<Rational, ScalarError> {
        assert_eq!(
            self.vars.len(),
            1,
            "evaluate_at_q needs a univariate polynomial"
        );
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let k = e[0];
            if k % 2 != 0 {
                return Err(ScalarError::OddPower(k));
            }
            if k < 0 && q.is_zero() {
                return Err(ScalarError::DivisionByZero {
                    var: self.vars.names()[0].clone(),
                });
            }
            total += c * rational_pow(q, k / 2);
        }
        Ok(total)
    }

    /// Re-expresses the polynomial over a different variable list that contains
    /// every variable actually used.
    pub fn embed(&self, target: &Vars) -> Result<Self, ScalarError> {
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut ne = vec![0; target.len()];
            for (name, &k) in self.vars.names().iter().zip(e) {
                if k == 0 {
                    continue;
                }
                let idx = target
                    .index_of(name)
                    .ok_or_else(|| ScalarError::UnknownVariable(name.clone()))?;
                ne[idx] = k;
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Applies the exponent map `e ↦ e · images` into the `target` context.
    pub(crate) fn map_exponents(&self, target: &Vars, images: &[Vec<i32>]) -> Self {
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut ne = vec![0; target.len()];
            for (k, img) in e.iter().zip(images) {
                for (slot, x) in ne.iter_mut().zip(img) {
                    *slot += k * x;
                }
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Minimum and maximum total exponent of each variable (empty for zero).
    pub fn degree_bounds(&self) -> Vec<(i32, i32)> {
        let mut bounds: Vec<(i32, i32)> = Vec::new();
        for e in self.terms.keys() {
            if bounds.is_empty() {
                bounds = e.iter().map(|&x| (x, x)).collect();
            } else {
                for (b, &x) in bounds.iter_mut().zip(e) {
                    b.0 = b.0.min(x);
                    b.1 = b.1.max(x);
                }
            }
        }
        bounds
    }
}

pub(crate) fn rational_pow(value: &Rational, k: i32) -> Rational {
    let base = if k < 0 { value.recip() } else { value.clone() };
    num_traits::pow(base, k.unsigned_abs() as usize)
}

fn fmt_monomial(vars: &Vars, e: &[i32]) -> String {
    vars.names()
        .iter()
        .zip(e)
        .filter(|(_, &k)| k != 0)
        .map(|(v, &k)| {
            if k == 1 {
                v.clone()
            } else {
                format!("{v}^{k}")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn fmt_term(vars: &Vars, e: &[i32], c: &Rational) -> String {
    let mono = fmt_monomial(vars, e);
    if mono.is_empty() {
        c.to_string()
    } else if c.is_one() {
        mono
    } else {
        format!("{c} * {mono}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let body = fmt_term(&self.vars, e, &c.abs());
            match (i, neg) {
                (0, false) => f.write_str(&body)?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly[{:?}]({self})", self.vars)
    }
}

// Operator forms panic on mismatched contexts; the `try_*` methods report them.

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    fn t() -> Vars {
        Vars::t()
    }

    fn tp(k: i32) -> LaurentPoly {
        LaurentPoly::var_pow(&t(), "t", k).unwrap()
    }

    fn c(x: i64) -> LaurentPoly {
        LaurentPoly::from_int(&t(), x)
    }

    #[test]
    fn addition_cancels() {
        // (1 - q) + q with q = t^2
        let a = &c(1) - &tp(2);
        assert_eq!(&a + &tp(2), c(1));
        let zero = LaurentPoly::zero(&t());
        assert_eq!(&zero + &a, a);
        let b = &tp(-2) + &c(1);
        assert_eq!(&b + &(-tp(-2)), c(1));
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(&tp(2) * &tp(-2), c(1));
        let lhs = &(&c(1) - &tp(2)) * &(&c(1) + &tp(2));
        assert_eq!(lhs, &c(1) - &tp(4));
        let geo = &(&(&c(1) + &tp(2)) + &tp(4)) * &(&c(1) - &tp(2));
        assert_eq!(geo, &c(1) - &tp(6));
    }

    #[test]
    fn mismatched_contexts_are_errors() {
        let a = LaurentPoly::one(&Vars::prs());
        let b = LaurentPoly::one(&Vars::t());
        assert!(matches!(
            a.try_add(&b),
            Err(ScalarError::VarMismatch { .. })
        ));
        assert!(matches!(
            a.try_mul(&b),
            Err(ScalarError::VarMismatch { .. })
        ));
    }

    #[test]
    fn evaluation() {
        let q = Vars::new(&["q"]);
        let qq = |k| LaurentPoly::var_pow(&q, "q", k).unwrap();
        let poly = &(&LaurentPoly::one(&q) + &qq(1)) + &qq(2);
        let at = |v: Rational| Assignment::from([("q", v)]);
        assert_eq!(poly.evaluate(&at(rational(2, 1))).unwrap(), rational(7, 1));
        assert_eq!(
            qq(-1).evaluate(&at(rational(2, 1))).unwrap(),
            rational(1, 2)
        );
        assert!(matches!(
            qq(-1).evaluate(&at(rational(0, 1))),
            Err(ScalarError::DivisionByZero { .. })
        ));
        assert!(matches!(
            poly.evaluate(&Assignment::default()),
            Err(ScalarError::Unassigned(_))
        ));
    }

    #[test]
    fn evaluation_through_q() {
        let poly = &tp(4) + &tp(-2);
        assert_eq!(poly.evaluate_at_q(&rational(2, 1)).unwrap(), rational(9, 2));
        assert_eq!(
            tp(1).evaluate_at_q(&rational(2, 1)),
            Err(ScalarError::OddPower(1))
        );
    }

    #[test]
    fn display_is_stable() {
        let v = Vars::prs();
        let p = LaurentPoly::monomial(&v, rational(-3, 2), vec![2, -1, 0]);
        assert_eq!(p.to_string(), "-3/2 * p^2 r^-1");
        let s2m1 = &LaurentPoly::var_pow(&v, "s", 2).unwrap() - &LaurentPoly::one(&v);
        assert_eq!(s2m1.to_string(), "-1 + s^2");
        assert_eq!(LaurentPoly::zero(&v).to_string(), "0");
    }

    #[test]
    fn inverse_only_for_monomials() {
        let m = LaurentPoly::monomial(&t(), rational(2, 3), vec![5]);
        assert_eq!(&m * &m.inverse().unwrap(), c(1));
        assert!(matches!(
            (&c(1) + &tp(1)).inverse(),
            Err(ScalarError::NotInvertible(_))
        ));
        assert!(LaurentPoly::zero(&t()).inverse().is_err());
    }
}
