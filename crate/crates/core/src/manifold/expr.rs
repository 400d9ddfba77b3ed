//! Class expressions such as `h^2`, `2*h + 1/3*p1`, `(1 - h)^2` or `0`,
//! evaluated in a [`CohomologyModel`]. Identifiers are basis names, or
//! `p1`, `p2`, … for Pontryagin classes when no basis element has that name.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::manifold::model::{Class, CohomologyModel};
use crate::scalar::parse_rational;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Number(BigRational),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let err = |pos: usize, msg: &str| Error::parse(format!("class[{pos}]"), msg);
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let mut lit: String = chars[start..i].iter().collect();
            // a/b as one literal when both sides are integers
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                i += 1;
                let s2 = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                lit = format!("{lit}/{}", chars[s2..i].iter().collect::<String>());
            }
            out.push(Token::Number(parse_rational(&lit).ok_or_else(|| err(start, "bad number"))?));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '⊗') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(err(i, &format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    model: &'a CohomologyModel,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::parse(format!("class.token[{}]", self.pos), msg)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Class> {
        let mut acc = Class::new();
        let mut sign = if self.eat('-') { -BigRational::one() } else { BigRational::one() };
        if sign.is_one() {
            self.eat('+');
        }
        loop {
            let t = self.term()?;
            for (i, v) in t {
                let e = acc.entry(i).or_insert_with(BigRational::zero);
                *e += v * &sign;
            }
            if self.eat('+') {
                sign = BigRational::one();
            } else if self.eat('-') {
                sign = -BigRational::one();
            } else {
                break;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(acc)
    }

    fn term(&mut self) -> Result<Class> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            let f = self.factor()?;
            acc = self.model.mul(&acc, &f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Class> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Token::Number(n)) if n.is_integer() && n >= BigRational::zero() => {
                    self.pos += 1;
                    let e: u32 = n.to_integer().try_into().map_err(|_| self.error("exponent too large"))?;
                    return Ok(self.model.pow(&base, e));
                }
                _ => return Err(self.error("expected a non-negative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Class> {
        match self.peek().cloned() {
            Some(Token::Number(n)) => {
                self.pos += 1;
                let mut c = self.model.unit();
                for v in c.values_mut() {
                    *v = n.clone();
                }
                c.retain(|_, v| !v.is_zero());
                Ok(c)
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                if let Some(i) = self.model.index_of(&name) {
                    return Ok(self.model.basis_class(i));
                }
                if let Some(k) = name.strip_prefix('p').and_then(|d| d.parse::<u32>().ok()) {
                    if k >= 1 {
                        return Ok(self.model.pontryagin_class(k));
                    }
                }
                Err(self.error(format!("unknown class {name:?} in {}", self.model.name)))
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(t) => Err(self.error(format!("unexpected token {t:?}"))),
            None => Err(self.error("unexpected end of expression")),
        }
    }
}

pub fn parse_class(text: &str, model: &CohomologyModel) -> Result<Class> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(Error::parse("class", "empty expression"));
    }
    let mut p = Parser { tokens, pos: 0, model };
    let out = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(p.error("trailing input"));
    }
    Ok(out)
}
