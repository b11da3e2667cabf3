//! Words in the generators and finite linear combinations of them.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::{LaurentPoly, ScalarError, Vars};

/// Index of a generator in its algebra's generator list.
pub type GenId = usize;

/// A product of generators, left to right.
///
/// Ordered degree-lexicographically by generator index, which is also the
/// order terms are listed in when an element is printed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<GenId>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(g: GenId) -> Self {
        Word(vec![g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|&g| names[g].as_str())
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.0)
    }
}

/// Element of the free algebra on the generators: a finite map from words to
/// nonzero Laurent-polynomial coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Element {
    vars: Vars,
    terms: BTreeMap<Word, LaurentPoly>,
}

impl Element {
    pub fn zero(vars: &Vars) -> Self {
        Element {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(c: LaurentPoly) -> Self {
        Self::term(c, Word::empty())
    }

    pub fn one(vars: &Vars) -> Self {
        Self::scalar(LaurentPoly::one(vars))
    }

    pub fn word(vars: &Vars, w: Word) -> Self {
        Self::term(LaurentPoly::one(vars), w)
    }

    pub fn generator(vars: &Vars, g: GenId) -> Self {
        Self::word(vars, Word::letter(g))
    }

    pub fn term(c: LaurentPoly, w: Word) -> Self {
        let mut e = Element::zero(c.vars());
        e.add_term(w, c);
        e
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Option<&LaurentPoly> {
        self.terms.get(w)
    }

    /// The coefficient if the element is a pure scalar (or zero).
    pub fn as_scalar(&self) -> Option<LaurentPoly> {
        match self.terms.len() {
            0 => Some(LaurentPoly::zero(&self.vars)),
            1 => self.terms.get(&Word::empty()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, w: Word, c: LaurentPoly) {
        assert_eq!(c.vars(), &self.vars, "element coefficient context");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
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
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Element {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Element::zero(&self.vars);
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    /// Noncommutative product: words concatenate, coefficients multiply.
    pub fn try_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check_ctx(other)?;
        let mut out = Element::zero(&self.vars);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                out.add_term(wa.concat(wb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).unwrap_or_else(|e| panic!("{e}"))
    }

    /// Applies `f` to every coefficient, moving the element into `target`.
    pub fn map_coeffs<E>(
        &self,
        target: &Vars,
        mut f: impl FnMut(&LaurentPoly) -> Result<LaurentPoly, E>,
    ) -> Result<Self, E> {
        let mut out = Element::zero(target);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Renames generator indices through `map`.
    pub fn relabel(&self, map: impl Fn(GenId) -> GenId) -> Self {
        let mut out = Element::zero(&self.vars);
        for (w, c) in &self.terms {
            out.add_term(Word(w.0.iter().map(|&g| map(g)).collect()), c.clone());
        }
        out
    }

    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    /// Printable form using the given generator names.
    pub fn display<'a>(&'a self, names: &'a [String]) -> ElementDisplay<'a> {
        ElementDisplay {
            element: self,
            names,
        }
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(w, c)| (w, c.to_string())))
            .finish()
    }
}

pub struct ElementDisplay<'a> {
    element: &'a Element,
    names: &'a [String],
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.element.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.element.terms.iter().enumerate() {
            let (negative, magnitude) = match c.as_monomial() {
                Some((_, r)) if r < &num_traits::Zero::zero() => (true, -c),
                _ => (false, c.clone()),
            };
            let body = render_term(&magnitude, w, self.names);
            match (i, negative) {
                (0, false) => f.write_str(&body)?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

fn render_term(c: &LaurentPoly, w: &Word, names: &[String]) -> String {
    let constant = c.as_constant();
    if w.is_empty() {
        return match constant {
            Some(k) => k.to_string(),
            None => format!("({c})"),
        };
    }
    let word = w.render(names);
    match constant {
        Some(k) if num_traits::One::is_one(&k) => word,
        Some(k) => format!("{k}*{word}"),
        None => format!("({c})*{word}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    fn names() -> Vec<String> {
        ["A", "B", "C"].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn words_order_by_degree_then_letters() {
        assert!(Word(vec![2]) < Word(vec![0, 0]));
        assert!(Word(vec![0, 1]) < Word(vec![1, 0]));
        assert!(Word::empty() < Word(vec![0]));
    }

    #[test]
    fn product_concatenates() {
        let v = Vars::t();
        let a = Element::generator(&v, 0);
        let b = Element::generator(&v, 1);
        let ab = a.mul(&b);
        assert_eq!(ab.display(&names()).to_string(), "A*B");
        let sum = ab.add(&b.mul(&a).scale(&LaurentPoly::from_int(&v, -2)));
        assert_eq!(sum.display(&names()).to_string(), "A*B - 2*B*A");
        assert!(sum.sub(&sum).is_zero());
    }

    #[test]
    fn display_of_symbolic_coefficients() {
        let v = Vars::t();
        let t2 = LaurentPoly::var_pow(&v, "t", 2).unwrap();
        let e = Element::term(t2.clone(), Word(vec![0]))
            .add(&Element::term(-&t2, Word(vec![1, 2])))
            .add(&Element::scalar(LaurentPoly::constant(&v, rational(3, 2))));
        assert_eq!(e.display(&names()).to_string(), "3/2 + (t^2)*A - (t^2)*B*C");
    }
}
