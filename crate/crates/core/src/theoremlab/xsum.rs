//! `φ0 ⊥ Xφ1` over `F(X)(ψ0 ⊥ Xψ1)` against the product-set condition.
//!
//! `F(X)(ψ0 ⊥ Xψ1)` is modelled by `F(u, v)` with `X = ψ0(u)/ψ1(v)`; up to
//! the square `ψ1(v)²` the form becomes `φ0 ⊥ ψ0(u)ψ1(v)·φ1`. The model is
//! a purely transcendental extension of the true function field, so
//! isotropy agrees.

use serde_json::{json, Value};

use super::characterize::linear_substitution;
use super::{
    finite_samples, first_missing, require_finite, require_nondefective, CheckOptions, Condition, Relation, Status,
    TheoremReport,
};
use crate::error::{Error, Result};
use crate::field::{enumerate, Elem, Field};
use crate::isotropy::{bounded_isotropy_search, isotropy_ff, residue_anisotropy, vec_json};
use crate::quadform::QuadraticForm;
use crate::valuegroups::represented_set;

struct Model {
    field: Field,
    u: Vec<Elem>,
    v: Vec<Elem>,
    tau: QuadraticForm,
}

fn model(forms: [&QuadraticForm; 4]) -> Result<Model> {
    let [phi0, phi1, psi0, psi1] = forms;
    let mut field = phi0.field.clone();
    for (p, q) in [("u", psi0), ("v", psi1)] {
        for i in 1..=q.dim() {
            field = field.rational(&format!("{p}{i}"))?;
        }
    }
    let vars = |p: &str, n: usize| -> Result<Vec<Elem>> { (1..=n).map(|i| field.variable(&format!("{p}{i}"))).collect() };
    let (u, v) = (vars("u", psi0.dim())?, vars("v", psi1.dim())?);
    let g = field.mul(
        &psi0.coefficients_in(&field)?.evaluate(&u)?,
        &psi1.coefficients_in(&field)?.evaluate(&v)?,
    );
    let tau = phi0.coefficients_in(&field)?.direct_sum(&phi1.coefficients_in(&field)?.scale(&g)?)?;
    Ok(Model { field, u, v, tau })
}

/// `x = ψ_b(w_b)·L_a(w_a)`, `y = L_b(w_b)` where `φ0∘L_a = s·ψ_a` and
/// `φ1∘L_b = s·ψ_b`, `{a, b} = {0, 1}`.
fn matched_substitution(forms: [&QuadraticForm; 4], m: &Model) -> Result<Option<(Vec<Elem>, Value)>> {
    let [phi0, phi1, psi0, psi1] = forms;
    let f = &phi0.field;
    let amb = &m.field;
    let apply = |cols: &[Vec<Elem>], w: &[Elem], n: usize| -> Vec<Elem> {
        (0..n)
            .map(|i| {
                cols.iter().zip(w).fold(amb.zero(), |acc, (c, x)| {
                    amb.add(&acc, &amb.mul(&amb.embed(f, &c[i]).expect("base embeds"), x))
                })
            })
            .collect()
    };
    for s in enumerate::nonzero_elements(f)? {
        for (pa, wa, pb, wb, label) in [(psi0, &m.u, psi1, &m.v, "straight"), (psi1, &m.v, psi0, &m.u, "crossed")] {
            let (Some(la), Some(lb)) = (linear_substitution(phi0, pa, &s)?, linear_substitution(phi1, pb, &s)?) else {
                continue;
            };
            let scale = pb.coefficients_in(amb)?.evaluate(wb)?;
            let x: Vec<Elem> = apply(&la, wa, phi0.dim()).iter().map(|e| amb.mul(&scale, e)).collect();
            let y = apply(&lb, wb, phi1.dim());
            let w: Vec<Elem> = x.into_iter().chain(y).collect();
            if w.iter().all(|e| amb.is_zero(e)) || !amb.is_zero(&m.tau.evaluate(&w)?) {
                continue;
            }
            return Ok(Some((w, json!({ "scalar": f.fmt_elem(&s), "pattern": label }))));
        }
    }
    Ok(None)
}

pub fn check_xsum(
    phi0: &QuadraticForm,
    phi1: &QuadraticForm,
    psi0: &QuadraticForm,
    psi1: &QuadraticForm,
    opts: &CheckOptions,
) -> Result<TheoremReport> {
    let f = &phi0.field;
    require_finite(f)?;
    let forms = [phi0, phi1, psi0, psi1];
    for (name, q) in ["φ0", "φ1", "ψ0", "ψ1"].iter().zip(forms) {
        if q.field != *f {
            return Err(Error::MixedFields(f.to_string(), q.field.to_string()));
        }
        if q.dim() == 0 {
            return Err(Error::PreconditionViolated(format!("{name} must be nonzero")));
        }
        require_nondefective(name, q, &opts.budget)?;
    }
    let budget = &opts.budget;

    // (iii) on finite samples; finite fields keep every form nondefective
    let mut passed = Vec::new();
    let mut failure = None;
    let mut dropped = Vec::new();
    for emb in finite_samples(f, opts.max_extension)? {
        let mapped: Vec<QuadraticForm> = forms.iter().map(|q| emb.map_form(q)).collect();
        if !mapped.iter().all(|q| super::is_nondefective(q, budget).unwrap_or(false)) {
            dropped.push(emb.to.to_string());
            continue;
        }
        let d = |q: &QuadraticForm| represented_set(q, 1, budget);
        let lhs = d(&mapped[2])?.product(&d(&mapped[3])?, budget)?;
        let rhs = d(&mapped[0])?.product(&d(&mapped[1])?, budget)?;
        if let Some(x) = first_missing(&lhs, &rhs) {
            failure = Some(json!({ "field": emb.to.to_string(), "element": emb.to.fmt_elem(&x) }));
            break;
        }
        passed.push(emb.to.to_string());
    }

    let x_sum = |a: &QuadraticForm, b: &QuadraticForm| -> Result<(Field, QuadraticForm)> {
        let fx = f.rational("X")?;
        let x = fx.var_elem()?;
        Ok((fx.clone(), a.coefficients_in(&fx)?.direct_sum(&b.coefficients_in(&fx)?.scale(&x)?)?))
    };
    let (fx, phi) = x_sum(phi0, phi1)?;
    let (i, ii, wi): (Status, Status, Value) = if let Some((k, w)) =
        [phi0, phi1].iter().enumerate().find_map(|(k, q)| isotropy_ff(q, budget).ok().flatten().map(|w| (k, w)))
    {
        let reason = format!("φ{k} is isotropic over F, so φ is isotropic over F(X)");
        (Status::Holds, Status::Holds, json!({ "reason": reason, "vector": vec_json(f, &w) }))
    } else if let Some(k) = [psi0, psi1].iter().position(|q| isotropy_ff(q, budget).ok().flatten().is_some()) {
        let cert = residue_anisotropy(&phi, None, budget)?;
        let ok = match &cert {
            Some(c) => c.verify(budget)?,
            None => false,
        };
        let reason = format!(
            "ψ{k} is isotropic, so F(X)(ψ) and F((X))(ψ) are purely transcendental; φ0, φ1 anisotropic make φ anisotropic there"
        );
        let status = if ok { Status::Fails } else { Status::Undecided };
        (status, status, json!({ "reason": reason, "anisotropy_certificate": cert.map(|c| c.to_json()) }))
    } else {
        let m = model(forms)?;
        let mut found = matched_substitution(forms, &m)?;
        let mut reached = None;
        if found.is_none() {
            let sb = opts.search_budget();
            for b in 0..=opts.bound {
                match bounded_isotropy_search(&m.tau, b, &sb) {
                    Ok(Some(w)) => {
                        found = Some((w, json!({ "bounded_search": b })));
                        break;
                    }
                    Ok(None) => reached = Some(b),
                    Err(Error::BudgetExceeded(_)) => break,
                    Err(e) => return Err(e),
                }
            }
        }
        match found {
            Some((w, how)) => {
                debug_assert!(m.field.is_zero(&m.tau.evaluate(&w)?));
                let wit = json!({
                    "model": m.field.to_string(),
                    "form": m.tau.to_text(),
                    "vector": vec_json(&m.field, &w),
                    "construction": how,
                });
                (Status::Holds, Status::Holds, wit)
            }
            None => match residue_anisotropy(&m.tau, None, budget)? {
                Some(c) if c.verify(budget)? => (
                    Status::Fails,
                    Status::Undecided,
                    json!({ "model": m.field.to_string(), "form": m.tau.to_text(), "anisotropy_certificate": c.to_json() }),
                ),
                _ => (
                    Status::Undecided,
                    Status::Undecided,
                    json!({ "model": m.field.to_string(), "form": m.tau.to_text(), "absent_up_to_bound": reached }),
                ),
            },
        }
    };
    let iii = match (&failure, i) {
        (Some(_), _) => Status::Refuted,
        (None, Status::Holds) => Status::Supported,
        _ => Status::Undecided,
    };
    let conditions = vec![
        Condition::new("i", "φ0 ⊥ Xφ1 is isotropic over F(X)(ψ0 ⊥ Xψ1)", i, wi),
        Condition::new("ii", "φ0 ⊥ Xφ1 is isotropic over F((X))(ψ0 ⊥ Xψ1)", ii, json!({ "via": "i" })),
        Condition::new(
            "iii",
            "D*_E(ψ0)D*_E(ψ1) ⊆ D*_E(φ0)D*_E(φ1) for every E",
            iii,
            json!({ "passed": passed, "failure": failure }),
        ),
    ];
    Ok(TheoremReport {
        theorem: "x-sum".into(),
        instance: json!({
            "field": f.to_string(),
            "phi0": phi0.to_text(), "phi1": phi1.to_text(),
            "psi0": psi0.to_text(), "psi1": psi1.to_text(),
            "phi": phi.to_text(),
            "over": fx.to_string(),
            "dropped_samples": dropped,
            "bound": opts.bound,
        }),
        conditions,
        relations: vec![Relation::Equivalent(vec!["i".into(), "ii".into(), "iii".into()])],
        headline: "i".into(),
    })
}
