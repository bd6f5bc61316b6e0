//! Represented-value sets `D*(φ)^k`, the groups they generate, bounded
//! membership over `F(X)`, and the leading-coefficient reduction.
//!
//! `Ng(φ) = <D*(φ)²>` and `Tg(φ) = <D*(φ)>`.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::budget::Budget;
use crate::certify::RepresentationCertificate;
use crate::error::{Error, Result};
use crate::field::{enumerate, poly, twobasis, Elem, Field, FieldKind};
use crate::isotropy::bounded::bounded_monomials;
use crate::quadform::QuadraticForm;

/// A subset of `F*` for a finite field, stored by element index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueSet {
    pub field: Field,
    pub members: BTreeSet<u64>,
}

impl ValueSet {
    pub fn from_elems<'a>(f: &Field, xs: impl IntoIterator<Item = &'a Elem>) -> Self {
        ValueSet { field: f.clone(), members: xs.into_iter().map(|x| enumerate::index_of(f, x)).collect() }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: &Elem) -> bool {
        self.members.contains(&enumerate::index_of(&self.field, x))
    }

    pub fn elems(&self) -> Vec<Elem> {
        self.members.iter().map(|&i| enumerate::element_at(&self.field, i)).collect()
    }

    pub fn is_subset(&self, other: &ValueSet) -> bool {
        self.members.is_subset(&other.members)
    }

    /// `{xy : x ∈ self, y ∈ other}`
    pub fn product(&self, other: &ValueSet, budget: &Budget) -> Result<ValueSet> {
        let f = &self.field;
        budget.admit((self.len() as u64).checked_mul(other.len() as u64), "set product")?;
        let (a, b) = (self.elems(), other.elems());
        let members = a
            .par_iter()
            .flat_map_iter(|x| b.iter().map(|y| enumerate::index_of(f, &f.mul(x, y))))
            .collect();
        Ok(ValueSet { field: f.clone(), members })
    }

    pub fn to_json(&self) -> Value {
        self.elems().iter().map(|x| self.field.fmt_elem(x)).collect::<Vec<_>>().into()
    }
}

/// `F*²`
pub fn squares(f: &Field) -> Result<ValueSet> {
    let els = enumerate::nonzero_elements(f)?;
    Ok(ValueSet::from_elems(f, &els.iter().map(|x| f.square(x)).collect::<Vec<_>>()))
}

pub fn units(f: &Field) -> Result<ValueSet> {
    Ok(ValueSet::from_elems(f, &enumerate::nonzero_elements(f)?))
}

/// `D*(φ)^k` by exhaustion; `k = 0` gives `{1}`.
pub fn represented_set(phi: &QuadraticForm, k: usize, budget: &Budget) -> Result<ValueSet> {
    let f = &phi.field;
    if !f.is_finite() {
        return Err(Error::UnsupportedField(format!("value sets over {f}")));
    }
    let n = phi.dim();
    let size = budget.admit(enumerate::count_vectors(f, n), "represented set")?;
    let d: BTreeSet<u64> = (1..size)
        .into_par_iter()
        .filter_map(|idx| {
            let v = phi.eval_unchecked(&enumerate::vector_at(f, n, idx));
            (!f.is_zero(&v)).then(|| enumerate::index_of(f, &v))
        })
        .collect();
    let d = ValueSet { field: f.clone(), members: d };
    let mut acc = ValueSet::from_elems(f, &[f.one()]);
    for _ in 0..k {
        acc = acc.product(&d, budget)?;
    }
    Ok(acc)
}

/// Smallest subgroup of `F*` containing `s`.
pub fn group_closure(s: &ValueSet, budget: &Budget) -> Result<ValueSet> {
    let f = &s.field;
    let mut g = ValueSet::from_elems(f, &[f.one()]);
    loop {
        let mut next = g.product(s, budget)?;
        next.members.extend(g.members.iter().copied());
        if next == g {
            return Ok(g);
        }
        g = next;
    }
}

/// `Ng(φ) = <D*(φ)²>`
pub fn ng(phi: &QuadraticForm, budget: &Budget) -> Result<ValueSet> {
    group_closure(&represented_set(phi, 2, budget)?, budget)
}

/// `Tg(φ) = <D*(φ)>`
pub fn tg(phi: &QuadraticForm, budget: &Budget) -> Result<ValueSet> {
    group_closure(&represented_set(phi, 1, budget)?, budget)
}

/// Shortest word `x = s_1···s_k` over `s` (with `k = 0` for `x = 1`), or
/// `None` when `x ∉ <s>`.
pub fn express_in_group(s: &ValueSet, x: &Elem) -> Option<Vec<Elem>> {
    use std::collections::{HashMap, VecDeque};
    let f = &s.field;
    let one = enumerate::index_of(f, &f.one());
    let goal = enumerate::index_of(f, x);
    let gens = s.elems();
    let mut parent: HashMap<u64, (u64, usize)> = HashMap::new();
    let mut queue = VecDeque::from([one]);
    parent.insert(one, (one, usize::MAX));
    while let Some(cur) = queue.pop_front() {
        if cur == goal {
            let mut word = Vec::new();
            let mut c = cur;
            while c != one {
                let (p, g) = parent[&c];
                word.push(gens[g].clone());
                c = p;
            }
            word.reverse();
            return Some(word);
        }
        let ce = enumerate::element_at(f, cur);
        for (i, g) in gens.iter().enumerate() {
            let nx = enumerate::index_of(f, &f.mul(&ce, g));
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(nx) {
                e.insert((cur, i));
                queue.push_back(nx);
            }
        }
    }
    None
}

/// First vector (index order) with `φ(v) = x`.
pub fn representing_vector(phi: &QuadraticForm, x: &Elem, budget: &Budget) -> Result<Option<Vec<Elem>>> {
    let f = &phi.field;
    let n = phi.dim();
    let size = budget.admit(enumerate::count_vectors(f, n), "representing vector")?;
    Ok((1..size).map(|i| enumerate::vector_at(f, n, i)).find(|v| phi.eval_unchecked(v) == *x))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma21Audit {
    pub c: Option<Elem>,
    pub squares: ValueSet,
    pub d_star_squared: ValueSet,
    pub ng: ValueSet,
    pub tg: ValueSet,
    /// `Ng(φ) = Ng(cφ)`
    pub scaling_invariance: bool,
    /// `F*² ⊆ D*² ⊆ Ng ⊆ Tg ⊆ F*`
    pub chain: bool,
    /// `Ng(φ) = Tg(cφ)`; `None` when `D*(φ)` is empty.
    pub ng_equals_scaled_tg: Option<bool>,
}

impl Lemma21Audit {
    pub fn holds(&self) -> bool {
        self.scaling_invariance && self.chain && self.ng_equals_scaled_tg != Some(false)
    }

    pub fn to_json(&self) -> Value {
        let f = &self.squares.field;
        json!({
            "c": self.c.as_ref().map(|c| f.fmt_elem(c)),
            "squares": self.squares.to_json(),
            "d_star_squared": self.d_star_squared.to_json(),
            "ng": self.ng.to_json(),
            "tg": self.tg.to_json(),
            "scaling_invariance": self.scaling_invariance,
            "chain": self.chain,
            "ng_equals_scaled_tg": self.ng_equals_scaled_tg,
            "holds": self.holds(),
        })
    }
}

/// Check the three parts for `c ∈ D*(φ)`; with `c = None` the first
/// represented value is used.
pub fn lemma21_audit(phi: &QuadraticForm, c: Option<&Elem>, budget: &Budget) -> Result<Lemma21Audit> {
    let f = &phi.field;
    let d1 = represented_set(phi, 1, budget)?;
    let c = match c {
        Some(c) if !d1.contains(c) => {
            return Err(Error::PreconditionViolated(format!("{} is not represented", f.fmt_elem(c))))
        }
        Some(c) => Some(c.clone()),
        None => d1.elems().into_iter().next(),
    };
    let sq = squares(f)?;
    let d2 = d1.product(&d1, budget)?;
    let ng_phi = group_closure(&d2, budget)?;
    let tg_phi = group_closure(&d1, budget)?;
    let all = units(f)?;
    let chain = sq.is_subset(&d2) && d2.is_subset(&ng_phi) && ng_phi.is_subset(&tg_phi) && tg_phi.is_subset(&all);
    let chain = chain || d1.is_empty() && tg_phi.is_subset(&all);
    let (scaling_invariance, third) = match &c {
        Some(c) => {
            let scaled = phi.scale(c)?;
            (ng(&scaled, budget)? == ng_phi, Some(tg(&scaled, budget)? == ng_phi))
        }
        None => (true, None),
    };
    Ok(Lemma21Audit {
        c,
        squares: sq,
        d_star_squared: d2,
        ng: ng_phi,
        tg: tg_phi,
        scaling_invariance,
        chain,
        ng_equals_scaled_tg: third,
    })
}

/// `φ` with coefficients pulled down from `F(X)` to `F`.
pub(crate) fn descend(phi: &QuadraticForm, base: &Field) -> Result<QuadraticForm> {
    let f = &phi.field;
    if f == base {
        return Ok(phi.clone());
    }
    let down = |x: &Elem| -> Result<Elem> {
        match f.as_poly(x) {
            Some(p) if p.len() <= 1 => Ok(p.first().cloned().unwrap_or_else(|| base.zero())),
            _ => Err(Error::WrongField(format!("{} is not a constant", f.fmt_elem(x)))),
        }
    };
    QuadraticForm::new(
        base,
        phi.planes.iter().map(|(a, b)| Ok((down(a)?, down(b)?))).collect::<Result<_>>()?,
        phi.diagonal.iter().map(down).collect::<Result<_>>()?,
    )
}

/// Search `ξ_1..ξ_k` with polynomial entries (degree `≤ bound` in every
/// variable, ground-field coefficients) and `Π φ(ξ_i) ∈ f·F(X)*²`; the
/// square factor is then moved into `ξ_1`.
pub fn membership_bounded(
    target: &Elem,
    ambient: &Field,
    phi: &QuadraticForm,
    k: usize,
    bound: usize,
    budget: &Budget,
) -> Result<Option<RepresentationCertificate>> {
    let f = ambient;
    if k == 0 {
        return Err(Error::PreconditionViolated("k must be at least 1".into()));
    }
    if !f.is_rational_tower() || !matches!(f.kind(), FieldKind::Rational { .. }) {
        return Err(Error::UnsupportedField(format!("bounded membership over {f}")));
    }
    let phi = phi.coefficients_in(f)?;
    f.check(target)?;
    if f.is_zero(target) {
        return Ok(None);
    }
    let (p, q) = f.rat_parts(target)?;
    let base = f.base().expect("rational");
    let pq = f.from_poly(poly::mul(base, p, q))?;
    let ground = f.ground().clone();
    let monos = bounded_monomials(f, bound)?;
    let (kk, n) = (monos.len(), phi.dim());
    let digits = kk * n * k;
    let size = budget.admit(enumerate::count_vectors(&ground, digits), "bounded membership")?;
    let entry = |ds: &[Elem]| -> Elem {
        ds.iter().zip(&monos).fold(f.zero(), |acc, (c, m)| {
            if ground.is_zero(c) {
                acc
            } else {
                f.add(&acc, &f.mul(&f.embed(&ground, c).expect("ground embeds"), m))
            }
        })
    };
    let test = |idx: u64| -> Option<(Vec<Vec<Elem>>, Elem)> {
        let ds = enumerate::vector_at(&ground, digits, idx);
        let vecs: Vec<Vec<Elem>> = ds.chunks(kk * n).map(|v| v.chunks(kk).map(entry).collect()).collect();
        let mut g = f.one();
        for v in &vecs {
            let val = phi.eval_unchecked(v);
            if f.is_zero(&val) {
                return None;
            }
            g = f.mul(&g, &val);
        }
        let ratio = f.div(&g, &pq).ok()?;
        twobasis::is_square(f, &ratio).map(|h| (vecs, h))
    };
    let found = if size <= 1 << 12 {
        (1..size).find_map(test)
    } else {
        (1..size).into_par_iter().find_map_first(test)
    };
    let Some((mut vecs, h)) = found else { return Ok(None) };
    let s = f.inv(&f.mul(&h, &f.from_poly(q.clone())?))?;
    for x in vecs[0].iter_mut() {
        *x = f.mul(x, &s);
    }
    let cert = RepresentationCertificate::new(f, &phi, target.clone(), f.one(), vecs)?;
    if !cert.verify()?.pass {
        return Err(Error::CertificateInvalid("bounded membership produced a failing certificate".into()));
    }
    Ok(Some(cert))
}

/// From `a·Π φ(ξ_i) = f` over `F(X)` with `f` a polynomial, produce
/// `a·Π φ(α_i) = lc(f)` over `F`, with `α_i` the top-degree coefficient
/// vectors of the denominator-cleared `ξ_i`.
pub fn leading_coeff_reduce(cert: &RepresentationCertificate, budget: &Budget) -> Result<RepresentationCertificate> {
    let f = &cert.field;
    let malformed = |s: &str| Error::MalformedCertificate(s.to_string());
    let FieldKind::Rational { base, .. } = f.kind() else {
        return Err(malformed("vectors must live in F(X)"));
    };
    if !cert.verify()?.pass {
        return Err(Error::CertificateInvalid("certificate does not verify".into()));
    }
    let phi = descend(&cert.form, base).map_err(|_| malformed("form coefficients must be constants"))?;
    let a = f.as_poly(&cert.scalar).filter(|p| p.len() == 1).ok_or_else(|| malformed("scalar must be a nonzero constant"))?[0].clone();
    let target = f.as_poly(&cert.target).ok_or_else(|| malformed("target must be a polynomial"))?;
    let lc = poly::lc(&target).ok_or_else(|| malformed("zero target"))?.clone();

    let mut alphas = Vec::new();
    for v in &cert.vectors {
        let mut d = vec![base.one()];
        for x in v {
            let (_, den) = f.rat_parts(x)?;
            let g = poly::gcd(base, &d, den)?;
            d = poly::div_exact(base, &poly::mul(base, &d, den), &g)?;
        }
        let df = f.from_poly(d)?;
        let polys: Vec<_> = v.iter().map(|x| f.as_poly(&f.mul(x, &df)).expect("cleared")).collect();
        let top = polys.iter().filter_map(|p| poly::degree(p)).max().ok_or_else(|| malformed("zero vector"))?;
        alphas.push(polys.iter().map(|p| p.get(top).cloned().unwrap_or_else(|| base.zero())).collect::<Vec<_>>());
    }
    let degenerate = alphas.iter().any(|al| base.is_zero(&phi.eval_unchecked(al)));
    if degenerate {
        alphas = universal_fallback(&phi, &base.div(&lc, &a)?, alphas.len(), budget)?;
    }
    let out = RepresentationCertificate::new(base, &phi, lc, a, alphas)?;
    if !out.verify()?.pass {
        return Err(Error::CertificateInvalid("leading coefficients do not multiply to lc(f)".into()));
    }
    Ok(out)
}

/// Isotropic `φ` over a finite field: represent `value` by one vector and
/// pad with vectors of value 1.
fn universal_fallback(phi: &QuadraticForm, value: &Elem, m: usize, budget: &Budget) -> Result<Vec<Vec<Elem>>> {
    let f = &phi.field;
    if !f.is_finite() {
        return Err(Error::Unsupported("leading coefficients vanish over an infinite base".into()));
    }
    let n = phi.dim();
    let size = budget.admit(enumerate::count_vectors(f, n), "leading coefficient fallback")?;
    let find = |target: &Elem| {
        (1..size).map(|i| enumerate::vector_at(f, n, i)).find(|v| phi.eval_unchecked(v) == *target)
    };
    let first = find(value).ok_or_else(|| Error::CertificateInvalid("lc(f)/a is not represented".into()))?;
    let mut out = vec![first];
    if m > 1 {
        let one = find(&f.one()).ok_or_else(|| Error::CertificateInvalid("1 is not represented".into()))?;
        out.extend(std::iter::repeat_n(one, m - 1));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(f: &Field, s: &str) -> QuadraticForm {
        QuadraticForm::parse(f, s).unwrap()
    }

    #[test]
    fn represented_sets() {
        let b = Budget::default();
        let g2 = Field::gf2();
        assert_eq!(represented_set(&form(&g2, "[1,1]"), 1, &b).unwrap().elems(), vec![Elem::Gf(1)]);
        let g8 = Field::gf2k(3).unwrap();
        assert_eq!(represented_set(&form(&g8, "[1,1]"), 1, &b).unwrap().len(), 7);
        let g4 = Field::gf2k(2).unwrap();
        assert_eq!(represented_set(&form(&g4, "<1>"), 1, &b).unwrap().len(), 3);
    }

    #[test]
    fn closures() {
        let b = Budget::default();
        let g4 = Field::gf2k(2).unwrap();
        let one = ValueSet::from_elems(&g4, &[Elem::Gf(1)]);
        assert_eq!(group_closure(&one, &b).unwrap(), one);
        let w = ValueSet::from_elems(&g4, &[Elem::Gf(2)]);
        assert_eq!(group_closure(&w, &b).unwrap().len(), 3);
        let g2 = Field::gf2();
        let d2 = represented_set(&form(&g2, "[1,1]"), 2, &b).unwrap();
        assert_eq!(group_closure(&d2, &b).unwrap().elems(), vec![Elem::Gf(1)]);
    }

    #[test]
    fn words() {
        let g4 = Field::gf2k(2).unwrap();
        let w = ValueSet::from_elems(&g4, &[Elem::Gf(2)]);
        assert_eq!(express_in_group(&w, &Elem::Gf(3)), Some(vec![Elem::Gf(2), Elem::Gf(2)]));
        assert_eq!(express_in_group(&w, &Elem::Gf(1)), Some(vec![]));
        let one = ValueSet::from_elems(&g4, &[Elem::Gf(1)]);
        assert_eq!(express_in_group(&one, &Elem::Gf(2)), None);
    }

    #[test]
    fn audits() {
        let b = Budget::default();
        let a = lemma21_audit(&form(&Field::gf2(), "[1,1]"), None, &b).unwrap();
        assert!(a.holds());
        assert_eq!(a.tg.len(), 1);
        let g4 = Field::gf2k(2).unwrap();
        let a = lemma21_audit(&form(&g4, "<1>"), Some(&Elem::Gf(2)), &b).unwrap();
        assert!(a.holds());
        assert_eq!(a.ng.len(), 3);
        let a = lemma21_audit(&form(&g4, "[1,w]"), None, &b).unwrap();
        assert!(a.chain && a.squares.len() == 3);
        assert!(lemma21_audit(&form(&g4, "<0>"), None, &b).unwrap().holds());
    }

    #[test]
    fn bounded_membership() {
        let b = Budget::default();
        let f = Field::parse("GF(2)(X)").unwrap();
        let e = |s: &str| f.parse_elem(s).unwrap();
        let phi = form(&Field::gf2(), "[1,1]");
        let c = membership_bounded(&e("X^2+X+1"), &f, &phi, 1, 1, &b).unwrap().unwrap();
        assert!(c.verify().unwrap().pass);
        let one = form(&Field::gf2(), "<1>");
        for k in 1..=2 {
            assert!(membership_bounded(&e("X"), &f, &one, k, 4 / k, &b).unwrap().is_none());
        }
        let c = membership_bounded(&e("X^2"), &f, &one, 1, 1, &b).unwrap().unwrap();
        assert_eq!(c.vectors, vec![vec![e("X")]]);
        let c = membership_bounded(&e("1/(X^2+X+1)"), &f, &phi, 1, 1, &b).unwrap().unwrap();
        assert!(c.verify().unwrap().pass);
    }

    #[test]
    fn leading_coefficients() {
        let b = Budget::default();
        let f = Field::parse("GF(2)(X)").unwrap();
        let e = |s: &str| f.parse_elem(s).unwrap();
        let c = RepresentationCertificate::new(&f, &form(&f, "[1,1]"), e("X^2+X+1"), f.one(), vec![vec![e("X"), e("1")]]).unwrap();
        let r = leading_coeff_reduce(&c, &b).unwrap();
        assert_eq!(r.vectors, vec![vec![Elem::Gf(1), Elem::Gf(0)]]);
        let c = RepresentationCertificate::new(&f, &form(&f, "<1>"), e("X^2"), f.one(), vec![vec![e("X")]]).unwrap();
        assert_eq!(leading_coeff_reduce(&c, &b).unwrap().vectors, vec![vec![Elem::Gf(1)]]);
        let g = Field::parse("GF(2)(t)(X)").unwrap();
        let e = |s: &str| g.parse_elem(s).unwrap();
        let c = RepresentationCertificate::new(&g, &form(&g, "[1,1]"), e("t^2*X^2+t*X+1"), g.one(), vec![vec![e("t*X"), e("1")]]).unwrap();
        let r = leading_coeff_reduce(&c, &b).unwrap();
        let t = r.field.var_elem().unwrap();
        assert_eq!(r.vectors, vec![vec![t, r.field.zero()]]);
        assert_eq!(r.power(), 1);
    }
}
