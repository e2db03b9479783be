//! Parser for integer polynomials such as `x^2*y - 3(x + 1)^2 + 7`.
//!
//! Grammar: sums and differences of products; `^` takes a nonnegative
//! integer literal; juxtaposition multiplies (`3x`, `2(x+y)`).

use std::collections::BTreeMap;

use vmv_core::congruence::MultiPoly;
use vmv_core::ExactInt;

const MAX_POWER: u32 = 64;

type Terms = BTreeMap<Vec<u32>, ExactInt>;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(ExactInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn lex(src: &str, vars: &[String]) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::Open),
            ')' => Some(Tok::Close),
            _ => None,
        };
        if let Some(t) = single {
            out.push(t);
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Num(s.parse().map_err(|_| format!("bad number {s:?}"))?));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            let idx = vars
                .iter()
                .position(|v| *v == name)
                .ok_or_else(|| format!("unknown variable {name:?} (variables: {})", vars.join(", ")))?;
            out.push(Tok::Var(idx));
        } else {
            return Err(format!("unexpected character {c:?}"));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Tok],
    at: usize,
    nvars: usize,
}

fn add(a: &mut Terms, b: Terms) {
    for (e, c) in b {
        *a.entry(e).or_insert(ExactInt::ZERO) += &c;
    }
    a.retain(|_, c| !c.is_zero());
}

fn mul(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert(ExactInt::ZERO) += &(ca * cb);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at)
    }

    fn constant(&self, c: ExactInt) -> Terms {
        let mut t = Terms::new();
        if !c.is_zero() {
            t.insert(vec![0; self.nvars], c);
        }
        t
    }

    fn expr(&mut self) -> Result<Terms, String> {
        let mut acc = self.term()?;
        while let Some(op) = self.peek().cloned() {
            match op {
                Tok::Plus => {
                    self.at += 1;
                    let t = self.term()?;
                    add(&mut acc, t);
                }
                Tok::Minus => {
                    self.at += 1;
                    let t = self.term()?;
                    add(&mut acc, t.into_iter().map(|(e, c)| (e, -c)).collect());
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Terms, String> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    acc = mul(&acc, &self.unary()?);
                }
                Some(Tok::Num(_) | Tok::Var(_) | Tok::Open) => acc = mul(&acc, &self.power()?),
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Terms, String> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.at += 1;
                Ok(self.unary()?.into_iter().map(|(e, c)| (e, -c)).collect())
            }
            Some(Tok::Plus) => {
                self.at += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Terms, String> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.at += 1;
        let e = match self.peek() {
            Some(Tok::Num(n)) => n.to_u64().filter(|e| *e <= MAX_POWER as u64).ok_or_else(|| format!("exponent must be at most {MAX_POWER}"))?,
            _ => return Err("expected an integer exponent after '^'".into()),
        };
        self.at += 1;
        let mut acc = self.constant(ExactInt::ONE);
        for _ in 0..e {
            acc = mul(&acc, &base);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Terms, String> {
        let tok = self.peek().cloned().ok_or("unexpected end of polynomial")?;
        self.at += 1;
        match tok {
            Tok::Num(n) => Ok(self.constant(n)),
            Tok::Var(i) => {
                let mut e = vec![0; self.nvars];
                e[i] = 1;
                Ok(Terms::from([(e, ExactInt::ONE)]))
            }
            Tok::Open => {
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::Close) {
                    return Err("missing ')'".into());
                }
                self.at += 1;
                Ok(inner)
            }
            other => Err(format!("unexpected {other:?}")),
        }
    }
}

/// Parses `src` as a polynomial in `vars` (in that order).
pub fn parse_poly(src: &str, vars: &[String]) -> Result<MultiPoly, String> {
    let toks = lex(src, vars)?;
    if toks.is_empty() {
        return Err("empty polynomial".into());
    }
    let mut p = Parser { toks: &toks, at: 0, nvars: vars.len() };
    let terms = p.expr()?;
    if p.at != toks.len() {
        return Err(format!("unexpected {:?}", toks[p.at]));
    }
    MultiPoly::new(vars.len(), terms.into_iter().collect()).map_err(|e| e.to_string())
}

/// `x`, `x,y` or `x,y,z`.
pub fn default_vars(n: usize) -> Vec<String> {
    ["x", "y", "z"].iter().take(n).map(|s| s.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn terms(src: &str, n: usize) -> Vec<(Vec<u32>, i64)> {
        parse_poly(src, &default_vars(n)).unwrap().terms().iter().map(|(e, c)| (e.clone(), c.to_i64().unwrap())).collect()
    }

    #[test]
    fn basics() {
        assert_eq!(terms("x^2 - 2", 1), vec![(vec![0], -2), (vec![2], 1)]);
        assert_eq!(terms("-x + 3x", 1), vec![(vec![1], 2)]);
        assert_eq!(terms("(x+1)^2", 1), vec![(vec![0], 1), (vec![1], 2), (vec![2], 1)]);
        assert_eq!(terms("2(x - y)*y", 2), vec![(vec![0, 2], -2), (vec![1, 1], 2)]);
        assert_eq!(terms("x*y*z - 1", 3), vec![(vec![0, 0, 0], -1), (vec![1, 1, 1], 1)]);
        assert!(terms("x - x", 1).is_empty());
    }

    #[test]
    fn errors() {
        let v = default_vars(1);
        for bad in ["", "x^", "x^y", "(x + 1", "y", "x $ 2", "x^100", "x +"] {
            assert!(parse_poly(bad, &v).is_err(), "{bad:?}");
        }
    }
}
