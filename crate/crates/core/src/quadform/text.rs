//! Form grammar: `[a,b]`, `<c1,...>`, `H`, `+` for ⊥, `c*(...)` for
//! scaling, `pf(a1,...,an)*(...)` for Pfister multiples. `<>` is the zero
//! form.

use std::fmt;

use super::{BilinearPfister, QuadraticForm};
use crate::error::Result;
use crate::field::text::{Parser, Tok};
use crate::field::Field;

impl QuadraticForm {
    pub fn parse(field: &Field, src: &str) -> Result<QuadraticForm> {
        let mut p = Parser::new(src)?;
        let phi = form(&mut p, field)?;
        p.expect_end()?;
        Ok(phi)
    }

    pub fn to_text(&self) -> String {
        let f = &self.field;
        let mut parts: Vec<String> = self
            .planes
            .iter()
            .map(|(a, b)| format!("[{},{}]", f.fmt_elem(a), f.fmt_elem(b)))
            .collect();
        if !self.diagonal.is_empty() || parts.is_empty() {
            let cs: Vec<String> = self.diagonal.iter().map(|c| f.fmt_elem(c)).collect();
            parts.push(format!("<{}>", cs.join(",")));
        }
        parts.join("+")
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

fn form(p: &mut Parser, f: &Field) -> Result<QuadraticForm> {
    let mut acc = summand(p, f)?;
    while p.eat('+') {
        acc = acc.direct_sum(&summand(p, f)?)?;
    }
    Ok(acc)
}

fn summand(p: &mut Parser, f: &Field) -> Result<QuadraticForm> {
    match p.peek().clone() {
        Tok::Ident(name) if name == "H" => {
            p.bump();
            Ok(QuadraticForm::hyperbolic(f))
        }
        Tok::Ident(name) if name == "pf" && *p.peek_at(1) == Tok::Sym('(') => {
            p.bump();
            p.bump();
            let mut entries = Vec::new();
            if !p.eat(')') {
                loop {
                    entries.push(p.expr(f)?);
                    if p.eat(')') {
                        break;
                    }
                    p.expect(',')?;
                }
            }
            let pi = BilinearPfister::new(f, entries)?;
            p.expect('*')?;
            summand(p, f)?.pfister_multiply(&pi)
        }
        Tok::Sym('[') => {
            p.bump();
            let a = p.expr(f)?;
            p.expect(',')?;
            let b = p.expr(f)?;
            p.expect(']')?;
            Ok(QuadraticForm::plane(f, a, b))
        }
        Tok::Sym('<') => {
            p.bump();
            let mut cs = Vec::new();
            if !p.eat('>') {
                loop {
                    cs.push(p.expr(f)?);
                    if p.eat('>') {
                        break;
                    }
                    p.expect(',')?;
                }
            }
            Ok(QuadraticForm::diag(f, cs))
        }
        Tok::Sym('(') => {
            let m = p.mark();
            p.bump();
            if let Ok(phi) = form(p, f) {
                if p.eat(')') {
                    return Ok(phi);
                }
            }
            p.reset(m);
            scaled(p, f)
        }
        _ => scaled(p, f),
    }
}

fn scaled(p: &mut Parser, f: &Field) -> Result<QuadraticForm> {
    if matches!(p.peek(), Tok::End | Tok::Sym(_)) && *p.peek() != Tok::Sym('(') {
        return Err(p.error("a form"));
    }
    let c = p.power(f)?;
    if *p.peek() != Tok::Sym('*') {
        return Err(p.error("`*` followed by a form"));
    }
    p.bump();
    summand(p, f)?.scale(&c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_examples() {
        let f = Field::parse("GF(2)(t)").unwrap();
        let phi = QuadraticForm::parse(&f, "[1,1]+<1,t>").unwrap();
        assert_eq!(phi.type_of(), (1, 2));
        let g = Field::parse("GF(2)(s)").unwrap();
        let psi = QuadraticForm::parse(&g, "pf(s)*(<1,s>)").unwrap();
        assert_eq!(psi.to_text(), "<1,s,s,s^2>");
        let h = QuadraticForm::parse(&f, "H").unwrap();
        assert_eq!(h.to_text(), "[0,0]");
        let sc = QuadraticForm::parse(&f, "t*[1,1] + (t+1)*<1>").unwrap();
        assert_eq!(sc.to_text(), "[t,1/t]+<t+1>");
        assert_eq!(QuadraticForm::parse(&f, "<>").unwrap().dim(), 0);
        assert!(QuadraticForm::parse(&f, "[1,1]+").is_err());
        assert!(QuadraticForm::parse(&f, "[1,u]").is_err());
    }

    #[test]
    fn print_parse_fixed_point() {
        use crate::field::enumerate::random_elem;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for src in ["GF(4)", "GF(2)(s)(t)", "GF(8)(t)"] {
            let f = Field::parse(src).unwrap();
            for _ in 0..200 {
                let r = rng.gen_range(0..3);
                let s = rng.gen_range(0..3);
                let planes = (0..r).map(|_| (random_elem(&f, &mut rng, 2), random_elem(&f, &mut rng, 2))).collect();
                let diag = (0..s).map(|_| random_elem(&f, &mut rng, 2)).collect();
                let phi = QuadraticForm::new(&f, planes, diag).unwrap();
                let back = QuadraticForm::parse(&f, &phi.to_text()).unwrap();
                assert_eq!(back, phi, "{}", phi.to_text());
            }
        }
    }
}
