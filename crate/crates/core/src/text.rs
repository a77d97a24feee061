//! Text formats for elements, polynomials, sequences and factorizations.
//!
//! Elements are written as polynomials in the level's generator symbol (`a`
//! for the extension level, `t` for a non-prime base level) or as integers
//! for a prime field. Polynomials use `x`. Input is an arithmetic expression
//! over `+ - * ^` and parentheses, so both `a^2` and `a+1` are accepted.

use crate::error::{Error, Result};
use crate::factorization::Factorization;
use crate::fields::{Elem, Field};
use crate::polynomials::Poly;

/// Join `(power, coefficient text)` pairs, highest power first.
pub(crate) fn render_terms(terms: impl Iterator<Item = (usize, String)>, var: &str) -> String {
    let mut out = String::new();
    for (i, c) in terms {
        if !out.is_empty() {
            out.push('+');
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if i == 0 {
            out.push_str(&c);
        } else if c == "1" {
            out.push_str(&mono);
        } else if c.contains('+') {
            out.push_str(&format!("({c})*{mono}"));
        } else {
            out.push_str(&format!("{c}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(u64),
    Ident(char),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = s.chars().filter(|c| !c.is_whitespace()).peekable();
    while let Some(c) = chars.next() {
        let tok = match c {
            '0'..='9' => {
                let mut n = c.to_digit(10).unwrap() as u64;
                while let Some(d) = chars.peek().and_then(|c| c.to_digit(10)) {
                    n = n
                        .checked_mul(10)
                        .and_then(|n| n.checked_add(d as u64))
                        .ok_or_else(|| Error::Parse(format!("integer too large in {s:?}")))?;
                    chars.next();
                }
                Token::Num(n)
            }
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '^' => Token::Caret,
            '(' => Token::LParen,
            ')' => Token::RParen,
            c if c.is_ascii_alphabetic() => Token::Ident(c),
            c => return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}"))),
        };
        out.push(tok);
    }
    Ok(out)
}

/// Recursive-descent evaluator producing a polynomial over `field` whose
/// indeterminate is spelled `var`.
struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    field: &'a Field,
    var: char,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} in {:?}", self.src))
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            -&self.term()?
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            match self.peek() {
                Some(&Token::Num(n)) => {
                    self.pos += 1;
                    Ok(self.power(&base, n))
                }
                _ => Err(self.err("expected an exponent after '^'")),
            }
        } else {
            Ok(base)
        }
    }

    fn power(&self, base: &Poly, n: u64) -> Poly {
        // constants are raised in the field so large exponents stay cheap
        if base.degree().unwrap_or(0) == 0 {
            Poly::constant(self.field, self.field.pow(base.coeff(0), n))
        } else {
            base.pow(n)
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        let tok = self.peek().cloned().ok_or_else(|| self.err("unexpected end of input"))?;
        self.pos += 1;
        match tok {
            Token::Num(n) => {
                let p = self.field.characteristic() as u64;
                Ok(Poly::constant(self.field, self.field.from_int((n % p) as i64)))
            }
            Token::Ident(c) if c == self.var => Ok(Poly::x(self.field)),
            Token::Ident(c) => match generator_in(self.field, c) {
                Some(g) => Ok(Poly::constant(self.field, g)),
                None => Err(self.err(&format!("unknown symbol {c:?}"))),
            },
            Token::LParen => {
                let inner = self.expr()?;
                if self.peek() != Some(&Token::RParen) {
                    return Err(self.err("missing ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.err("expected a number, symbol or '('")),
        }
    }
}

/// Generator named `sym` of `field` or one of its subfields, as an element of `field`.
fn generator_in(field: &Field, sym: char) -> Option<Elem> {
    let mut level = Some(field);
    while let Some(f) = level {
        if f.symbol() == Some(sym) {
            return f.generator();
        }
        level = f.subfield();
    }
    None
}

/// Parse a polynomial over `field` in the indeterminate `var`.
pub fn parse_poly_in(field: &Field, s: &str, var: char) -> Result<Poly> {
    let tokens = tokenize(s)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut parser = Parser { tokens, pos: 0, field, var, src: s };
    let value = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.err("trailing input"));
    }
    Ok(value)
}

/// Parse a polynomial in `x` over `field`.
pub fn parse_poly(field: &Field, s: &str) -> Result<Poly> {
    parse_poly_in(field, s, 'x')
}

/// Parse a field element.
pub fn parse_elem(field: &Field, s: &str) -> Result<Elem> {
    let p = parse_poly_in(field, s, '\0')?;
    Ok(p.coeff(0))
}

/// Parse a comma-separated list of element literals.
pub fn parse_elems(field: &Field, s: &str) -> Result<Vec<Elem>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|item| parse_elem(field, item)).collect()
}

pub fn format_elems(field: &Field, xs: &[Elem]) -> String {
    xs.iter().map(|&x| field.format(x)).collect::<Vec<_>>().join(",")
}

fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// `unit * (p1)^e1 * (p2)^e2 ...`; the unit is parenthesized when it is not
/// a single term.
pub fn format_factorization(fz: &Factorization) -> String {
    let field = fz.field();
    let unit = field.format(fz.unit());
    let mut out = if unit.contains('+') || unit.contains('*') { format!("({unit})") } else { unit };
    for (p, e) in fz.factors() {
        out.push_str(&format!(" * ({p})^{e}"));
    }
    out
}

/// Inverse of [`format_factorization`]. Factors are taken as written; the
/// result is not re-validated for irreducibility.
pub fn parse_factorization(field: &Field, s: &str) -> Result<Factorization> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let parts = split_top_level(&s, '*');
    let unit = parse_elem(field, parts[0])?;
    let mut factors = Vec::new();
    for part in &parts[1..] {
        let (body, exp) = match part.rfind(")^") {
            Some(i) if part.starts_with('(') => (&part[1..i], &part[i + 2..]),
            _ => return Err(Error::Parse(format!("expected (poly)^e, got {part:?}"))),
        };
        let e: usize = exp.parse().map_err(|_| Error::Parse(format!("bad multiplicity {exp:?}")))?;
        factors.push((parse_poly(field, body)?, e));
    }
    Ok(Factorization::from_parts(field.clone(), unit, factors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::Tower;

    #[test]
    fn element_forms() {
        let t = Tower::new(2, None, Some(&[1, 1, 1])).unwrap();
        let e = t.ext();
        assert_eq!(parse_elem(e, "a^2").unwrap(), Elem(3));
        assert_eq!(parse_elem(e, "a + 1").unwrap(), Elem(3));
        assert_eq!(parse_elem(e, "a^3").unwrap(), Elem(1));
        assert_eq!(e.format(Elem(3)), "a+1");
        assert_eq!(e.format(Elem(0)), "0");
        assert!(parse_elem(e, "b").is_err());
        assert!(parse_elem(e, "a+").is_err());
        assert!(parse_elem(e, "(a").is_err());
    }

    #[test]
    fn polynomial_text() {
        let t = Tower::new(2, None, Some(&[1, 1, 1])).unwrap();
        let f = parse_poly(t.ext(), "x^3+a^2*x^2+a^2").unwrap();
        assert_eq!(f.to_string(), "x^3+(a+1)*x^2+a+1");
        assert_eq!(parse_poly(t.ext(), &f.to_string()).unwrap(), f);
        assert_eq!(parse_poly(t.ext(), " a * x ").unwrap().to_string(), "a*x");
    }

    #[test]
    fn nested_tower_text() {
        let t = Tower::with_degrees(2, 2, 2).unwrap();
        let e = t.ext();
        let x = parse_elem(e, "t*a+t+1").unwrap();
        assert_eq!(e.format(x), "t*a+t+1");
        let y = parse_elem(e, "(t+1)*a^2").unwrap();
        assert_eq!(parse_elem(e, &e.format(y)).unwrap(), y);
        let f = parse_poly(e, "(t+1)*a*x^2+t*x+a").unwrap();
        assert_eq!(parse_poly(e, &f.to_string()).unwrap(), f);
    }

    #[test]
    fn odd_characteristic_and_negation() {
        let t = Tower::with_degrees(3, 1, 2).unwrap();
        let f = parse_poly(t.ext(), "x^2 - 1").unwrap();
        assert_eq!(f.to_string(), "x^2+2");
        assert_eq!(parse_poly(t.ext(), "-x").unwrap().to_string(), "2*x");
    }

    mod props {
        use super::*;
        use crate::factorization::factor_canonical;
        use crate::polynomials::Poly;
        use crate::sequences::Sequence;
        use proptest::prelude::*;
        use rand::SeedableRng;
        use rand_chacha::ChaCha8Rng;

        fn tower(i: usize) -> Tower {
            let shapes = [(2, 1, 2), (3, 1, 2), (2, 2, 2), (5, 1, 1), (2, 1, 4), (3, 2, 1)];
            let (p, d, m) = shapes[i % shapes.len()];
            Tower::with_degrees(p, d, m).unwrap()
        }

        proptest! {
            #[test]
            fn render_parse_round_trip(i in 0usize..6, seed in any::<u64>(), deg in 0usize..7) {
                let t = tower(i);
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for field in [t.base(), t.ext()] {
                    let xs: Vec<Elem> = (0..5).map(|_| field.random(&mut rng)).collect();
                    for &x in &xs {
                        prop_assert_eq!(parse_elem(field, &field.format(x)).unwrap(), x);
                    }
                    let seq = Sequence::new(field.clone(), xs.clone()).unwrap();
                    prop_assert_eq!(Sequence::parse(field, &seq.to_string()).unwrap(), seq);

                    let f = Poly::random_below(field, deg + 1, &mut rng);
                    prop_assert_eq!(parse_poly(field, &f.to_string()).unwrap(), f.clone());
                    if !f.is_zero() {
                        let fz = factor_canonical(&f.make_monic().unwrap()).unwrap();
                        prop_assert_eq!(parse_factorization(field, &format_factorization(&fz)).unwrap(), fz);
                    }
                }
            }
        }
    }
}
