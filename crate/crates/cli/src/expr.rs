//! Polynomial arguments: either a coefficient list `"1,1,1"` (constant term
//! first) or an expression in `x` or `x1..x9` with `+ - * / ^`, parentheses
//! and rational constants.

use stern_core::exactnum::scalar::{self, int};
use stern_core::exactnum::{ExactPoly, MPoly, Poly, Scalar};
use stern_core::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(Scalar),
    Var(usize),
    Op(char),
}

fn bad(text: &str, why: &str) -> Error {
    Error::InvalidInput(format!("cannot parse polynomial {text:?}: {why}"))
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
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
            let digits: String = chars[start..i].iter().collect();
            out.push(Token::Num(scalar::parse_decimal(&digits)?));
        } else if c == 'x' {
            i += 1;
            let index = match chars.get(i) {
                Some(d) if d.is_ascii_digit() && *d != '0' => {
                    i += 1;
                    d.to_digit(10).expect("digit") as usize - 1
                }
                _ => 0,
            };
            if chars.get(i).is_some_and(|d| d.is_ascii_digit()) {
                return Err(bad(text, "variables are x or x1..x9"));
            }
            out.push(Token::Var(index));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(bad(text, &format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    text: &'a str,
    tokens: Vec<Token>,
    pos: usize,
    nvars: usize,
}

impl Parser<'_> {
    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Token::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' {
                acc.add(&rhs)?
            } else {
                acc.sub(&rhs)?
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek_op() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?)?;
                }
                Some('/') => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    let c = constant_value(&rhs)
                        .ok_or_else(|| bad(self.text, "division by a nonconstant"))?;
                    if c == int(0) {
                        return Err(bad(self.text, "division by zero"));
                    }
                    acc = acc.mul(&MPoly::constant(self.nvars, int(1) / c))?;
                }
                // implicit product such as 2x or (1+x)(1+x^2)
                _ if matches!(
                    self.tokens.get(self.pos),
                    Some(Token::Var(_) | Token::Op('('))
                ) =>
                {
                    acc = acc.mul(&self.unary()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<MPoly> {
        if self.peek_op() == Some('-') {
            self.pos += 1;
            let inner = self.unary()?;
            return MPoly::zero(self.nvars).sub(&inner);
        }
        if self.peek_op() == Some('+') {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        if self.peek_op() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        match self.tokens.get(self.pos) {
            Some(Token::Num(k)) if k.is_integer() => {
                let k = k
                    .to_integer()
                    .try_into()
                    .map_err(|_| bad(self.text, "exponent too large"))?;
                self.pos += 1;
                Ok(base.pow(k))
            }
            _ => Err(bad(self.text, "exponent must be a nonnegative integer")),
        }
    }

    fn atom(&mut self) -> Result<MPoly> {
        let token = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        match token {
            Some(Token::Num(c)) => Ok(MPoly::constant(self.nvars, c)),
            Some(Token::Var(i)) => Ok(MPoly::var(self.nvars, i)),
            Some(Token::Op('(')) => {
                let inner = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(bad(self.text, "unbalanced parentheses"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(bad(self.text, "unexpected end or operator")),
        }
    }
}

fn constant_value(p: &MPoly) -> Option<Scalar> {
    match p.terms().len() {
        0 => Some(int(0)),
        1 => p
            .terms()
            .iter()
            .next()
            .filter(|(e, _)| e.iter().all(|&k| k == 0))
            .map(|(_, c)| c.clone()),
        _ => None,
    }
}

/// Number of variables an argument mentions (at least 1).
pub fn variable_count(text: &str) -> Result<usize> {
    if is_coefficient_list(text) {
        return Ok(1);
    }
    Ok(tokenize(text)?
        .iter()
        .filter_map(|t| match t {
            Token::Var(i) => Some(i + 1),
            _ => None,
        })
        .max()
        .unwrap_or(1))
}

fn is_coefficient_list(text: &str) -> bool {
    text.contains(',')
        || !text.contains(|c: char| "x()+*^".contains(c))
            && !text.trim_start_matches('-').contains('-')
}

/// Parses a polynomial in `nvars` variables; univariate results are dense.
pub fn parse_poly(text: &str, nvars: usize) -> Result<ExactPoly> {
    let sparse = if is_coefficient_list(text) {
        let coeffs = text
            .split(',')
            .map(scalar::parse_decimal)
            .collect::<Result<Vec<_>>>()?;
        if nvars > 1 && coeffs.len() > 1 {
            return Err(bad(text, "coefficient lists are univariate"));
        }
        MPoly::from_terms(
            nvars,
            coeffs.into_iter().enumerate().map(|(k, c)| {
                let mut e = vec![0; nvars];
                e[0] = k as u32;
                (e, c)
            }),
        )
    } else {
        let mut parser = Parser {
            text,
            tokens: tokenize(text)?,
            pos: 0,
            nvars,
        };
        let p = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(bad(text, "trailing input"));
        }
        p
    };
    if nvars == 1 {
        let degree = sparse
            .terms()
            .keys()
            .map(|e| e[0] as usize)
            .max()
            .unwrap_or(0);
        let mut coeffs = vec![int(0); degree + 1];
        for (e, c) in sparse.terms() {
            coeffs[e[0] as usize] = c.clone();
        }
        Ok(ExactPoly::Uni(Poly::new(coeffs)))
    } else {
        Ok(ExactPoly::Multi(sparse))
    }
}
