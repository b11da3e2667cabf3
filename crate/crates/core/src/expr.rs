//! Parser for enveloping-algebra expressions such as `2*E11 - q*E22` or
//! `(p^-2 s^2)*V2*Vb2`.
//!
//! Grammar:
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := unary (['*'] unary)*          juxtaposition multiplies
//! unary  := '-' unary | power
//! power  := atom ['^' ['-'] int]
//! atom   := int ['/' int] | ident | '(' expr ')'
//! ```
//!
//! Identifiers resolve to generators first, then to parameters. In the `t`
//! context `q` is accepted as an alias for `t^2`.

use thiserror::Error;

use crate::element::{Element, GenId, Word};
use crate::scalar::{parse_rational, LaurentPoly, Vars};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown name `{name}` at position {pos}")]
    UnknownName { pos: usize, name: String },
}

impl ExprError {
    pub fn position(&self) -> usize {
        match self {
            ExprError::Syntax { pos, .. } | ExprError::UnknownName { pos, .. } => *pos,
        }
    }
}

/// Names an expression may refer to.
#[derive(Debug, Clone)]
pub struct ExprContext<'a> {
    pub vars: &'a Vars,
    pub generators: &'a [String],
}

impl<'a> ExprContext<'a> {
    pub fn new(vars: &'a Vars, generators: &'a [String]) -> Self {
        ExprContext { vars, generators }
    }

    fn lookup_generator(&self, name: &str) -> Option<GenId> {
        self.generators.iter().position(|g| g == name)
    }

    fn lookup_param(&self, name: &str) -> Option<LaurentPoly> {
        if let Ok(p) = LaurentPoly::var(self.vars, name) {
            return Some(p);
        }
        if name == "q" && self.vars.names() == ["t"] {
            return LaurentPoly::var_pow(self.vars, "t", 2).ok();
        }
        None
    }
}

pub fn parse_element(text: &str, ctx: &ExprContext<'_>) -> Result<Element, ExprError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        ctx,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.syntax(format!("unexpected `{}`", p.chars[p.pos])));
    }
    Ok(e)
}

/// Parses a pure scalar (no generators).
pub fn parse_scalar(text: &str, vars: &Vars) -> Result<LaurentPoly, ExprError> {
    let ctx = ExprContext::new(vars, &[]);
    let e = parse_element(text, &ctx)?;
    e.as_scalar().ok_or_else(|| ExprError::Syntax {
        pos: 0,
        msg: format!("`{text}` is not a scalar"),
    })
}

struct Parser<'a, 'c> {
    chars: Vec<char>,
    pos: usize,
    ctx: &'a ExprContext<'c>,
}

impl Parser<'_, '_> {
    fn syntax(&self, msg: impl Into<String>) -> ExprError {
        ExprError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Element, ExprError> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some('-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_factor(c: char) -> bool {
        c.is_ascii_alphanumeric() || c == '_' || c == '('
    }

    fn term(&mut self) -> Result<Element, ExprError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(c) if Self::starts_factor(c) => acc = acc.mul(&self.unary()?),
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Element, ExprError> {
        if self.peek() == Some('-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<Element, ExprError> {
        let start = self.pos;
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let exp_pos = self.pos;
        let negative = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.syntax("expected an integer exponent"));
        }
        let k: i32 = digits.parse().map_err(|_| ExprError::Syntax {
            pos: exp_pos,
            msg: "exponent out of range".into(),
        })?;
        let k = if negative { -k } else { k };
        if k >= 0 {
            let mut out = Element::one(self.ctx.vars);
            for _ in 0..k {
                out = out.mul(&base);
            }
            return Ok(out);
        }
        let inv = base
            .as_scalar()
            .and_then(|s| s.pow(k).ok())
            .ok_or_else(|| ExprError::Syntax {
                pos: start,
                msg: "negative powers need an invertible scalar monomial".into(),
            })?;
        Ok(Element::scalar(inv))
    }

    fn digits(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn atom(&mut self) -> Result<Element, ExprError> {
        match self.peek() {
            None => Err(self.syntax("unexpected end of input")),
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.syntax("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits();
                let mut text = num;
                let save = self.pos;
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let den = self.digits();
                    if den.is_empty() {
                        return Err(self.syntax("expected a denominator"));
                    }
                    text = format!("{text}/{den}");
                } else {
                    self.pos = save;
                }
                let r = parse_rational(&text).map_err(|_| self.syntax("invalid number"))?;
                Ok(Element::scalar(LaurentPoly::constant(self.ctx.vars, r)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                if let Some(g) = self.ctx.lookup_generator(&name) {
                    return Ok(Element::word(self.ctx.vars, Word::letter(g)));
                }
                if let Some(p) = self.ctx.lookup_param(&name) {
                    return Ok(Element::scalar(p));
                }
                Err(ExprError::UnknownName { pos: start, name })
            }
            Some(c) => Err(self.syntax(format!("unexpected `{c}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    fn gens() -> Vec<String> {
        ["E11", "E22", "V1", "Vb1"]
            .iter()
            .map(|s| s.to_string())
            .collect()
    }

    #[test]
    fn square_word() {
        let v = Vars::t();
        let g = gens();
        let e = parse_element("V1*V1", &ExprContext::new(&v, &g)).unwrap();
        assert_eq!(e, Element::word(&v, Word(vec![2, 2])));
    }

    #[test]
    fn q_alias_in_t_context() {
        let v = Vars::t();
        let g = gens();
        let e = parse_element("2*E11 - q*E22", &ExprContext::new(&v, &g)).unwrap();
        assert_eq!(e.len(), 2);
        let q = LaurentPoly::var_pow(&v, "t", 2).unwrap();
        assert_eq!(e.coeff(&Word(vec![1])), Some(&-q));
        assert_eq!(e.coeff(&Word(vec![0])), Some(&LaurentPoly::from_int(&v, 2)));
        // no alias in the three-parameter context
        let prs = Vars::prs();
        assert!(matches!(
            parse_element("q*E11", &ExprContext::new(&prs, &g)),
            Err(ExprError::UnknownName { pos: 0, .. })
        ));
    }

    #[test]
    fn unterminated_group_reports_position() {
        let v = Vars::t();
        let g = gens();
        let err = parse_element("V1*(", &ExprContext::new(&v, &g)).unwrap_err();
        assert_eq!(err.position(), 4);
        let err = parse_element("V1 + Foo", &ExprContext::new(&v, &g)).unwrap_err();
        assert_eq!(
            err,
            ExprError::UnknownName {
                pos: 5,
                name: "Foo".into()
            }
        );
    }

    #[test]
    fn scalar_display_round_trips() {
        let v = Vars::prs();
        for text in ["-3/2 * p^2 r^-1", "-1 + s^2", "p r s", "0", "7/3"] {
            let a = parse_scalar(text, &v).unwrap();
            assert_eq!(parse_scalar(&a.to_string(), &v).unwrap(), a);
        }
        let a = parse_scalar("-3/2 * p^2 r^-1", &v).unwrap();
        assert_eq!(
            a,
            LaurentPoly::monomial(&v, rational(-3, 2), vec![2, -1, 0])
        );
    }

    #[test]
    fn element_display_round_trips() {
        let v = Vars::prs();
        let g = gens();
        let ctx = ExprContext::new(&v, &g);
        let e = parse_element("E11 - (s^2 p^-2)*E22 + (s^2 - 1)*V1*Vb1 - 3", &ctx).unwrap();
        let shown = e.display(&g).to_string();
        assert_eq!(parse_element(&shown, &ctx).unwrap(), e);
    }
}
