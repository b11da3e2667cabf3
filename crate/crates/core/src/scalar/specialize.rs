use std::collections::BTreeMap;

use super::{LaurentPoly, Rational, ScalarError, Vars};

/// Values for named variables.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Assignment(BTreeMap<String, Rational>);

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, value: Rational) -> Self {
        self.0.insert(name.to_string(), value);
        self
    }

    pub fn get(&self, name: &str) -> Option<&Rational> {
        self.0.get(name)
    }
}

impl<const N: usize> From<[(&str, Rational); N]> for Assignment {
    fn from(pairs: [(&str, Rational); N]) -> Self {
        Assignment(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
    }
}

/// Monomial substitutions from the three-parameter ring `{p, r, s}` into `{t}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Specialization {
    /// `p = t`, `s = t^-1`, `r = 1`, with `q = t^2` (so `p = q^(1/2)`).
    OneParameter,
    /// `p = r = s = 1`; the result is a constant in the `t` context.
    Classical,
}

impl Specialization {
    /// Exponent of `t` that each of `p, r, s` maps to.
    fn images(self) -> [(&'static str, i32); 3] {
        match self {
            Specialization::OneParameter => [("p", 1), ("r", 0), ("s", -1)],
            Specialization::Classical => [("p", 0), ("r", 0), ("s", 0)],
        }
    }

    pub fn target(self) -> Vars {
        Vars::t()
    }

    /// Applies the substitution. Variables of `a` must be a subset of `{p, r, s}`.
    pub fn apply(self, a: &LaurentPoly) -> Result<LaurentPoly, ScalarError> {
        let images = self.images();
        let rows = a
            .vars()
            .names()
            .iter()
            .map(|name| {
                images
                    .iter()
                    .find(|(v, _)| v == name)
                    .map(|&(_, k)| vec![k])
                    .ok_or_else(|| ScalarError::UnknownVariable(name.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(a.map_exponents(&self.target(), &rows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    fn prs(e: [i32; 3], c: i64) -> LaurentPoly {
        LaurentPoly::monomial(&Vars::prs(), rational(c, 1), e.to_vec())
    }

    fn t(k: i32, c: i64) -> LaurentPoly {
        LaurentPoly::monomial(&Vars::t(), rational(c, 1), vec![k])
    }

    #[test]
    fn one_parameter_map() {
        let sp = Specialization::OneParameter;
        assert_eq!(sp.apply(&prs([2, 0, 0], 1)).unwrap(), t(2, 1));
        // p / (s r) -> t / t^-1 = t^2 = q
        assert_eq!(sp.apply(&prs([1, -1, -1], 1)).unwrap(), t(2, 1));
        assert_eq!(sp.apply(&prs([0, 0, 2], 1)).unwrap(), t(-2, 1));
    }

    #[test]
    fn classical_limit_keeps_only_coefficients() {
        let sp = Specialization::Classical;
        let a = &prs([3, -2, 1], 5) + &prs([0, 1, 0], -2);
        let out = sp.apply(&a).unwrap();
        assert_eq!(out, t(0, 3));
        assert_eq!(out.as_constant(), Some(rational(3, 1)));
    }

    #[test]
    fn rejects_foreign_variables() {
        let a = LaurentPoly::var(&Vars::new(&["x"]), "x").unwrap();
        assert!(Specialization::OneParameter.apply(&a).is_err());
    }
}
