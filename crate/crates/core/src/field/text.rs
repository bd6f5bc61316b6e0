//! Field and element grammar.
//!
//! Fields: `GF(2)`, `GF(2^k)` (also `GF(4)`, `GF(8)`, ...), `F(t)` for a
//! rational extension, `F((X):32)` for Laurent series (precision optional,
//! default 32), `F[a: a^2+a+1]` for a simple algebraic extension.
//!
//! Elements: sums, products, quotients and integer powers of integers
//! (read mod 2), tower variables and the generator `w` of the ground field.
//! In a Laurent field `O(X^n)` adds an error term.

use std::fmt;

use super::{poly, Elem, Field, FieldKind, Series, DEFAULT_PRECISION};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Int(u64),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

/// Hand-written lexer plus recursive-descent helpers shared by the field,
/// element and form grammars.
pub struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    pub fn new(src: &str) -> Result<Parser> {
        let mut toks = Vec::new();
        let cs: Vec<(usize, char)> = src.char_indices().collect();
        let mut i = 0;
        while i < cs.len() {
            let (at, c) = cs[i];
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let mut n: u64 = 0;
                while i < cs.len() && cs[i].1.is_ascii_digit() {
                    n = n.checked_mul(10).and_then(|n| n.checked_add(cs[i].1 as u64 - '0' as u64)).ok_or(
                        Error::Syntax { position: at, expected: "a smaller integer".into(), found: "overflow".into() },
                    )?;
                    i += 1;
                }
                toks.push((at, Tok::Int(n)));
            } else if c.is_ascii_alphabetic() {
                let mut s = String::new();
                while i < cs.len() && (cs[i].1.is_ascii_alphanumeric() || cs[i].1 == '_') {
                    s.push(cs[i].1);
                    i += 1;
                }
                toks.push((at, Tok::Ident(s)));
            } else if "()[]<>,+-*/^:".contains(c) {
                toks.push((at, Tok::Sym(c)));
                i += 1;
            } else {
                return Err(Error::Syntax { position: at, expected: "a token".into(), found: format!("`{c}`") });
            }
        }
        toks.push((src.len(), Tok::End));
        Ok(Parser { toks, pos: 0 })
    }

    pub(crate) fn mark(&self) -> usize {
        self.pos
    }

    pub(crate) fn reset(&mut self, mark: usize) {
        self.pos = mark;
    }

    pub(crate) fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    pub(crate) fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].1
    }

    pub(crate) fn position(&self) -> usize {
        self.toks[self.pos].0
    }

    pub(crate) fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn error(&self, expected: &str) -> Error {
        Error::Syntax { position: self.position(), expected: expected.into(), found: self.peek().to_string() }
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("`{c}`")))
        }
    }

    pub(crate) fn expect_end(&mut self) -> Result<()> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }

    fn int(&mut self) -> Result<u64> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => Err(self.error("an integer")),
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.error("a variable name")),
        }
    }

    pub fn field(&mut self) -> Result<Field> {
        let at = self.position();
        if self.ident()? != "GF" {
            return Err(Error::Syntax { position: at, expected: "`GF`".into(), found: "another name".into() });
        }
        self.expect('(')?;
        let at = self.position();
        let n = self.int()?;
        let k = if self.eat('^') {
            if n != 2 {
                return Err(Error::Syntax { position: at, expected: "`2`".into(), found: format!("`{n}`") });
            }
            self.int()? as u32
        } else if n >= 2 && n.is_power_of_two() {
            n.trailing_zeros()
        } else {
            return Err(Error::Syntax { position: at, expected: "a power of 2".into(), found: format!("`{n}`") });
        };
        self.expect(')')?;
        let mut f = Field::gf2k(k)?;
        loop {
            if *self.peek() == Tok::Sym('(') && *self.peek_at(1) == Tok::Sym('(') {
                self.bump();
                self.bump();
                let v = self.ident()?;
                self.expect(')')?;
                let prec = if self.eat(':') { self.int()? as usize } else { DEFAULT_PRECISION };
                self.expect(')')?;
                f = f.laurent(&v, prec)?;
            } else if *self.peek() == Tok::Sym('(') {
                self.bump();
                let v = self.ident()?;
                self.expect(')')?;
                f = f.rational(&v)?;
            } else if *self.peek() == Tok::Sym('[') {
                self.bump();
                let v = self.ident()?;
                self.expect(':')?;
                let poly_field = f.rational(&v)?;
                let m = self.expr(&poly_field)?;
                self.expect(']')?;
                let p = poly_field
                    .as_poly(&m)
                    .ok_or_else(|| Error::InvalidField("algebraic modulus must be a polynomial".into()))?;
                f = f.algebraic(&v, &p)?;
            } else {
                return Ok(f);
            }
        }
    }

    pub fn expr(&mut self, f: &Field) -> Result<Elem> {
        self.eat('+');
        let mut acc = self.term(f)?;
        while matches!(self.peek(), Tok::Sym('+') | Tok::Sym('-')) {
            self.bump();
            let t = self.term(f)?;
            acc = f.add(&acc, &t);
        }
        Ok(acc)
    }

    fn term(&mut self, f: &Field) -> Result<Elem> {
        let mut acc = self.power(f)?;
        loop {
            if self.eat('*') {
                let t = self.power(f)?;
                acc = f.mul(&acc, &t);
            } else if *self.peek() == Tok::Sym('/') {
                let at = self.position();
                self.bump();
                let t = self.power(f)?;
                acc = f.div(&acc, &t).map_err(|e| match e {
                    Error::DivisionByZero => Error::Syntax {
                        position: at,
                        expected: "a nonzero divisor".into(),
                        found: "zero".into(),
                    },
                    e => e,
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    pub(crate) fn power(&mut self, f: &Field) -> Result<Elem> {
        let b = self.atom(f)?;
        if self.eat('^') {
            let neg = self.eat('-');
            let e = self.int()? as i64;
            let e = if neg { -e } else { e };
            f.pow(&b, e)
        } else {
            Ok(b)
        }
    }

    fn atom(&mut self, f: &Field) -> Result<Elem> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(if n % 2 == 1 { f.one() } else { f.zero() })
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr(f)?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Sym('-') => {
                self.bump();
                self.atom(f)
            }
            Tok::Ident(name) if name == "O" && *self.peek_at(1) == Tok::Sym('(') => {
                let at = self.position();
                self.bump();
                self.bump();
                let inner = self.expr(f)?;
                self.expect(')')?;
                match (f.kind(), &inner) {
                    (FieldKind::Laurent { base, .. }, Elem::Ser(Series::Known { val, coeffs }))
                        if base.is_one(&coeffs[0]) && coeffs[1..].iter().all(|c| base.is_zero(c)) =>
                    {
                        Ok(Elem::Ser(Series::Unknown { order: *val }))
                    }
                    _ => Err(Error::Syntax {
                        position: at,
                        expected: "O(X^n) with X the Laurent variable".into(),
                        found: "another expression".into(),
                    }),
                }
            }
            Tok::Ident(name) => {
                let at = self.position();
                self.bump();
                if name == "w" {
                    if f.ground().finite_degree() == Some(1) {
                        return Err(Error::UnknownVariable("w (GF(2) has no generator name)".into()));
                    }
                    return Ok(f.generator());
                }
                f.variable(&name).map_err(|e| match e {
                    Error::UnknownVariable(_) => Error::UnknownVariable(format!("{name} at {at}")),
                    e => e,
                })
            }
            _ => Err(self.error("a number, variable or `(`")),
        }
    }
}

impl Field {
    pub fn parse(src: &str) -> Result<Field> {
        let mut p = Parser::new(src)?;
        let f = p.field()?;
        p.expect_end()?;
        Ok(f)
    }

    pub fn parse_elem(&self, src: &str) -> Result<Elem> {
        let mut p = Parser::new(src)?;
        let e = p.expr(self)?;
        p.expect_end()?;
        Ok(e)
    }

    /// Canonical text; `parse_elem` reads it back to the same value.
    pub fn fmt_elem(&self, x: &Elem) -> String {
        self.render(x).0
    }

    fn render(&self, x: &Elem) -> (String, Prec) {
        match (self.kind(), x) {
            (FieldKind::Finite { degree, .. }, Elem::Gf(v)) => {
                let terms = (0..*degree as usize)
                    .rev()
                    .filter(|i| v >> i & 1 == 1)
                    .map(|i| (monomial("w", i as i64), Prec::Atom))
                    .collect();
                join_terms(terms)
            }
            (FieldKind::Algebraic { base, var, .. }, Elem::Alg(p)) => self.render_poly(base, var, p),
            (FieldKind::Rational { base, var }, Elem::Rat(n, d)) => {
                let (ns, np) = self.render_poly(base, var, n);
                if poly::is_one(base, d) {
                    return (ns, np);
                }
                let (ds, dp) = self.render_poly(base, var, d);
                let ns = if np == Prec::Sum { format!("({ns})") } else { ns };
                let ds = if dp == Prec::Atom { ds } else { format!("({ds})") };
                (format!("{ns}/{ds}"), Prec::Product)
            }
            (FieldKind::Laurent { base, var, .. }, Elem::Ser(s)) => match s {
                Series::Zero => ("0".into(), Prec::Atom),
                Series::Unknown { order } => (format!("O({})", monomial(var, *order)), Prec::Atom),
                Series::Known { val, coeffs } => {
                    let mut terms: Vec<(String, Prec)> = coeffs
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !base.is_zero(c))
                        .map(|(i, c)| coeff_times(base, c, &monomial(var, val + i as i64)))
                        .collect();
                    terms.push((format!("O({})", monomial(var, val + coeffs.len() as i64)), Prec::Atom));
                    join_terms(terms)
                }
            },
            _ => (format!("{x:?}"), Prec::Atom),
        }
    }

    fn render_poly(&self, base: &Field, var: &str, p: &[Elem]) -> (String, Prec) {
        let terms = p
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !base.is_zero(c))
            .map(|(i, c)| coeff_times(base, c, &monomial(var, i as i64)))
            .collect();
        join_terms(terms)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Prec {
    Atom,
    Product,
    Sum,
}

fn monomial(var: &str, e: i64) -> String {
    match e {
        0 => "1".into(),
        1 => var.into(),
        e => format!("{var}^{e}"),
    }
}

fn coeff_times(base: &Field, c: &Elem, mono: &str) -> (String, Prec) {
    if mono == "1" {
        return base.render(c);
    }
    if base.is_one(c) {
        return (mono.into(), Prec::Atom);
    }
    let (cs, cp) = base.render(c);
    if cp == Prec::Sum {
        (format!("({cs})*{mono}"), Prec::Product)
    } else {
        (format!("{cs}*{mono}"), Prec::Product)
    }
}

fn join_terms(terms: Vec<(String, Prec)>) -> (String, Prec) {
    match terms.len() {
        0 => ("0".into(), Prec::Atom),
        1 => terms.into_iter().next().unwrap(),
        _ => (terms.into_iter().map(|t| t.0).collect::<Vec<_>>().join("+"), Prec::Sum),
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            FieldKind::Finite { degree: 1, .. } => write!(f, "GF(2)"),
            FieldKind::Finite { degree, .. } => write!(f, "GF(2^{degree})"),
            FieldKind::Rational { base, var } => write!(f, "{base}({var})"),
            FieldKind::Laurent { base, var, precision } => write!(f, "{base}(({var}):{precision})"),
            FieldKind::Algebraic { base, var, modulus } => {
                let (m, _) = base.render_poly(base, var, modulus);
                write!(f, "{base}[{var}: {m}]")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::enumerate::random_elem;
    use rand::SeedableRng;

    #[test]
    fn field_grammar_roundtrip() {
        for src in ["GF(2)", "GF(2^3)", "GF(2)(t)", "GF(2^2)(s)(t)", "GF(2)((X):32)", "GF(2)[a: a^2+a+1]"] {
            let f = Field::parse(src).unwrap();
            assert_eq!(f.to_string(), src);
        }
        assert_eq!(Field::parse("GF(4)").unwrap(), Field::gf2k(2).unwrap());
        assert_eq!(Field::parse("GF(2)((X))").unwrap().precision(), Some(32));
        assert!(matches!(Field::parse("GF(6)"), Err(Error::Syntax { .. })));
        assert!(Field::parse("GF(2)(t)(t)").is_err());
    }

    #[test]
    fn element_examples() {
        let f = Field::parse("GF(2)(t)").unwrap();
        let x = f.parse_elem("1/(t^2+t)").unwrap();
        assert_eq!(f.fmt_elem(&x), "1/(t^2+t)");
        assert_eq!(f.parse_elem("1/t + 1/t").unwrap(), f.zero());
        let g = Field::parse("GF(4)").unwrap();
        assert_eq!(g.parse_elem("w*w^2").unwrap(), g.one());
        assert!(matches!(f.parse_elem("u"), Err(Error::UnknownVariable(_))));
        assert!(matches!(f.parse_elem("t+"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn laurent_text() {
        let f = Field::parse("GF(2)((X):4)").unwrap();
        let x = f.parse_elem("X^-1 + 1 + O(X^2)").unwrap();
        assert_eq!(f.fmt_elem(&x), "X^-1+1+O(X^2)");
        assert_eq!(f.parse_elem(&f.fmt_elem(&x)).unwrap(), x);
    }

    #[test]
    fn print_parse_fixed_point_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for src in ["GF(2^3)(s)(t)", "GF(2)[a: a^3+a+1](t)", "GF(4)((X):6)", "GF(2^2)(s)((X):5)"] {
            let f = Field::parse(src).unwrap();
            for _ in 0..200 {
                let x = random_elem(&f, &mut rng, 3);
                let s = f.fmt_elem(&x);
                let y = f.parse_elem(&s).unwrap_or_else(|e| panic!("{src}: {s}: {e}"));
                assert_eq!(x, y, "{src}: {s}");
            }
        }
    }
}
