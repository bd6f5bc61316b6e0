//! Worked examples across modules, through the public API only.

use qf2::budget::Budget;
use qf2::certify::{certificate_to_isotropy_witness, ebf_analyze, represent_irreducible_1var, Representation, RepresentationCertificate};
use qf2::field::artin_schreier::{self, AsSolution};
use qf2::field::{factor, twobasis, Elem, Field, Place};
use qf2::isotropy::{
    bounded_isotropy_search, isotropy_ff, isotropy_over_form_function_field, quad_ext_isotropy,
    quasilinear_isotropy_tower, residue_anisotropy, witt_decompose, QuadExt,
};
use qf2::quadform::{dominance_search, isometry_test, BilinearPfister, EmbeddingMode, QuadraticForm};
use qf2::valuegroups::{group_closure, lemma21_audit, leading_coeff_reduce, membership_bounded, represented_set, ValueSet};

fn fld(s: &str) -> Field {
    Field::parse(s).unwrap()
}

fn el(f: &Field, s: &str) -> Elem {
    f.parse_elem(s).unwrap()
}

fn form(f: &str, s: &str) -> QuadraticForm {
    QuadraticForm::parse(&fld(f), s).unwrap()
}

fn elems(f: &Field, xs: &[&str]) -> Vec<Elem> {
    xs.iter().map(|s| el(f, s)).collect()
}

fn show(f: &Field, xs: &[Elem]) -> Vec<String> {
    xs.iter().map(|x| f.fmt_elem(x)).collect()
}

#[test]
fn arithmetic() {
    let f = fld("GF(4)");
    let w = el(&f, "w");
    assert!(f.is_one(&f.mul(&w, &f.square(&w))));
    let g = fld("GF(2)(t)");
    assert!(g.is_zero(&g.add(&el(&g, "1/t"), &el(&g, "1/t"))));
    assert_eq!(g.fmt_elem(&g.inv(&el(&g, "t^2+t")).unwrap()), "1/(t^2+t)");
    assert_eq!(twobasis::is_square(&f, &w), Some(f.square(&w)));
    assert_eq!(twobasis::is_square(&g, &el(&g, "t")), None);
    assert_eq!(twobasis::is_square(&g, &el(&g, "(t^2+1)/t^4")), Some(el(&g, "(t+1)/t^2")));
    assert!(matches!(artin_schreier::solve(&fld("GF(2)"), &Elem::Gf(1), 4).unwrap(), AsSolution::Absent { proof: true }));
    assert_eq!(artin_schreier::solve(&f, &f.one(), 4).unwrap(), AsSolution::Root(w));
}

#[test]
fn places_and_factoring() {
    let g = fld("GF(2)(t)");
    let at_t = Place::Poly(elems(&fld("GF(2)"), &["0", "1"]));
    assert_eq!(at_t.valuation(&g, &el(&g, "t^3/(t+1)")).unwrap(), 3);
    assert!(at_t.residue(&g, &el(&g, "(t+1)/t")).is_err());
    let at_1 = Place::Poly(elems(&fld("GF(2)"), &["1", "1"]));
    assert_eq!(at_1.residue(&g, &el(&g, "t^2+t+1")).unwrap(), Elem::Gf(1));

    let f2 = fld("GF(2)");
    let fac = factor::factor(&f2, &elems(&f2, &["1", "0", "1", "0", "1"])).unwrap();
    assert_eq!(fac.factors, vec![(elems(&f2, &["1", "1", "1"]), 2)]);
    assert_eq!(factor::irreducibles(&f2, 3).unwrap().len(), 2);
    assert_eq!(factor::irreducibles(&fld("GF(4)"), 1).unwrap().len(), 4);
}

#[test]
fn forms() {
    let g = fld("GF(2)(t)");
    let phi = form("GF(2)(t)", "<1,t>");
    assert_eq!(g.fmt_elem(&phi.evaluate(&elems(&g, &["t", "1"])).unwrap()), "t^2+t");
    let p = form("GF(2)", "[1,1]+<1>");
    let f2 = &p.field;
    assert!(f2.is_zero(&p.polar(&elems(f2, &["0", "0", "1"]), &elems(f2, &["1", "1", "0"])).unwrap()));
    let s = fld("GF(2)(s)");
    let pi = BilinearPfister::new(&s, vec![el(&s, "s")]).unwrap();
    assert_eq!(QuadraticForm::parse(&s, "<1,s>").unwrap().pfister_multiply(&pi).unwrap().to_text(), "<1,s,s,s^2>");
    assert_eq!(p.type_of(), (1, 1));

    let e = dominance_search(&form("GF(2)", "<1>"), &form("GF(2)", "[1,1]"), EmbeddingMode::Dominance, &Budget::default())
        .unwrap()
        .unwrap();
    assert_eq!(e.columns, vec![elems(f2, &["0", "1"])]);
    let st = fld("GF(2)(s)(t)");
    let a = QuadraticForm::parse(&st, "<1,s*t,t,s*t^2>").unwrap();
    let b = QuadraticForm::parse(&st, "<1,s,t,s*t>").unwrap();
    assert!(isometry_test(&a, &b, &Budget::default()).unwrap().isometric);
    assert!(!isometry_test(&form("GF(2)", "[1,1]"), &form("GF(2)", "H"), &Budget::default()).unwrap().isometric);
}

#[test]
fn isotropy() {
    let b = Budget::default();
    assert_eq!(isotropy_ff(&form("GF(2)", "[1,1]"), &b).unwrap(), None);
    let d = witt_decompose(&form("GF(2)(t)", "<1,t,t^2>"), &b).unwrap();
    assert_eq!((d.i_w, d.i_d, d.anisotropic.to_text()), (0, 1, "<1,t>".to_string()));
    let st = fld("GF(2)(s)(t)");
    assert_eq!(quasilinear_isotropy_tower(&st, &elems(&st, &["1", "s", "t", "s*t"])).unwrap(), None);
    let phi = form("GF(2)(X)", "<1,X>");
    let c = residue_anisotropy(&phi, None, &b).unwrap().unwrap();
    assert!(c.verify(&b).unwrap());
    assert_eq!(bounded_isotropy_search(&phi, 4, &b).unwrap(), None);
    assert!(residue_anisotropy(&form("GF(2)(X)", "H"), None, &b).unwrap().is_none());
    let q = quad_ext_isotropy(&form("GF(2)", "[1,1]"), &QuadExt::Separable(Elem::Gf(1)), &b).unwrap();
    assert!(q.isotropic);
    let s = form("GF(2)(s)(t)", "<1,s>");
    assert!(!quad_ext_isotropy(&s, &QuadExt::Inseparable(el(&st, "t")), &b).unwrap().isotropic);
    assert!(isotropy_over_form_function_field(&form("GF(2)", "[1,1]+<1>"), &form("GF(2)", "[1,1]"), &b).unwrap().isotropic);
}

#[test]
fn value_groups() {
    let b = Budget::default();
    assert_eq!(represented_set(&form("GF(2)", "[1,1]"), 1, &b).unwrap().len(), 1);
    assert_eq!(represented_set(&form("GF(2^3)", "[1,1]"), 1, &b).unwrap().len(), 7);
    let f4 = fld("GF(4)");
    assert_eq!(group_closure(&ValueSet::from_elems(&f4, &[el(&f4, "w")]), &b).unwrap().len(), 3);
    let a = lemma21_audit(&form("GF(4)", "<1>"), Some(&el(&f4, "w")), &b).unwrap();
    assert!(a.holds());
    let x = fld("GF(2)(X)");
    let phi = form("GF(2)", "<1>");
    assert!(membership_bounded(&el(&x, "X"), &x, &phi, 2, 4, &b).unwrap().is_none());
    let c = membership_bounded(&el(&x, "X^2"), &x, &phi, 1, 1, &b).unwrap().unwrap();
    assert!(c.verify().unwrap().pass);
}

#[test]
fn certificates() {
    let b = Budget::default();
    let x = fld("GF(2)(X)");
    let phi = form("GF(2)", "[1,1]");
    let f = el(&x, "X^2+X+1");
    let cert = |vs: &[&[&str]]| {
        let vectors = vs.iter().map(|v| elems(&x, v)).collect();
        RepresentationCertificate::new(&x, &phi, f.clone(), x.one(), vectors).unwrap()
    };
    assert!(cert(&[&["X", "1"]]).verify().unwrap().pass);
    assert!(cert(&[&["X", "1"], &["1", "0"]]).verify().unwrap().pass);
    let bad = cert(&[&["X", "0"]]).verify().unwrap();
    assert!(!bad.pass);
    assert_eq!(x.fmt_elem(&bad.residual.unwrap()), "(X^2+X+1)/X^2");

    let good = cert(&[&["X", "1"]]);
    let lc = leading_coeff_reduce(&good, &b).unwrap();
    assert_eq!(show(&lc.field, &lc.vectors[0]), ["1", "0"]);
    let w = certificate_to_isotropy_witness(&good, &f).unwrap();
    assert!(w.form.field.is_zero(&w.form.evaluate(&w.vector).unwrap()));

    let cubic = el(&x, "X^3+X+1");
    assert!(matches!(
        represent_irreducible_1var(&phi, &x, &cubic, &b).unwrap(),
        Representation::NotRepresentable { .. }
    ));
    let r = ebf_analyze(&phi, &x, &el(&x, "X*(X+1)*(X^2+X+1)^2"), Some(1), &b).unwrap();
    assert!(r.consistent() && r.certificate.is_none());
    let r = ebf_analyze(&phi, &x, &el(&x, "(X^2+X+1)^2"), None, &b).unwrap();
    assert!(r.consistent() && r.certificate.unwrap().verify().unwrap().pass);
}
