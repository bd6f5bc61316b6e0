//! Isotropy over `F(ψ)` and stable birational equivalence, checked against
//! the value-group conditions.

use serde_json::{json, Value};

use super::{
    finite_samples, first_missing, is_nondefective, require_finite, require_nondefective, CheckOptions, Condition,
    FiniteEmbedding, Relation, Status, TheoremReport,
};
use crate::certify::RepresentationCertificate;
use crate::error::{Error, Result};
use crate::field::{enumerate, twobasis, Elem, Field};
use crate::isotropy::{isotropy_ff, isotropy_over_form_function_field, vec_json};
use crate::quadform::QuadraticForm;
use crate::valuegroups::{membership_bounded, ng, represented_set, representing_vector, tg, ValueSet};

/// `F(X_1,...,X_m)` and the vector `(X_1,...,X_m)`.
pub(crate) fn generic_point(base: &Field, m: usize, prefix: &str) -> Result<(Field, Vec<Elem>)> {
    let mut f = base.clone();
    for i in 1..=m {
        f = f.rational(&format!("{prefix}{i}"))?;
    }
    let xs = (1..=m).map(|i| f.variable(&format!("{prefix}{i}"))).collect::<Result<_>>()?;
    Ok((f, xs))
}

/// Columns `L_j` with `φ(L_j) = s·q_j` and `b_φ(L_j, L_k) = s·b_jk`, i.e.
/// `φ(L x) = s·ψ(x)` as polynomials.
pub(crate) fn linear_substitution(phi: &QuadraticForm, psi: &QuadraticForm, s: &Elem) -> Result<Option<Vec<Vec<Elem>>>> {
    let f = &phi.field;
    let g = psi.to_general();
    let n = phi.dim();
    let all: Vec<Vec<Elem>> =
        (0..enumerate::order_checked(f)?.pow(n as u32)).map(|i| enumerate::vector_at(f, n, i)).collect();
    let cands: Vec<Vec<&Vec<Elem>>> = g
        .q
        .iter()
        .map(|q| {
            let want = f.mul(s, q);
            all.iter().filter(|v| phi.eval_unchecked(v) == want).collect()
        })
        .collect();
    let mut cols: Vec<Vec<Elem>> = Vec::new();
    fn dfs(
        phi: &QuadraticForm,
        g: &crate::quadform::GeneralForm,
        s: &Elem,
        cands: &[Vec<&Vec<Elem>>],
        cols: &mut Vec<Vec<Elem>>,
    ) -> bool {
        let j = cols.len();
        if j == cands.len() {
            return true;
        }
        let f = &phi.field;
        for v in &cands[j] {
            if (0..j).all(|k| phi.polar_unchecked(&cols[k], v) == f.mul(s, &g.b[k][j])) {
                cols.push((*v).clone());
                if dfs(phi, g, s, cands, cols) {
                    return true;
                }
                cols.pop();
            }
        }
        false
    }
    Ok(dfs(phi, &g, s, &cands, &mut cols).then_some(cols))
}

/// Verdict on `a·ψ(X) ∈ D*_{F(X)}(φ)²` for every `a ∈ D*_F(ψ)`.
pub(crate) struct PolyMembership {
    pub status: Status,
    pub witness: Value,
}

pub(crate) fn poly_membership(phi: &QuadraticForm, psi: &QuadraticForm, opts: &CheckOptions) -> Result<PolyMembership> {
    let f = &phi.field;
    let budget = &opts.budget;
    let (amb, xs) = generic_point(f, psi.dim(), "X")?;
    let psi_x = psi.coefficients_in(&amb)?.evaluate(&xs)?;
    let scalars = represented_set(psi, 1, budget)?.elems();
    let up = |x: &Elem| amb.embed(f, x).expect("base embeds");
    let lift = |v: &[Elem]| -> Vec<Elem> { v.iter().map(up).collect() };

    if let Some(w) = isotropy_ff(phi, budget)? {
        return Ok(PolyMembership {
            status: Status::Holds,
            witness: json!({
                "reason": "φ is isotropic and nondefective, so it contains H and is universal over F(X)",
                "isotropic_vector": vec_json(f, &w),
            }),
        });
    }
    if phi.is_quasilinear() {
        let square = twobasis::is_square(&amb, &psi_x).is_some();
        return Ok(PolyMembership {
            status: Status::exact(square),
            witness: json!({
                "reason": "for quasilinear φ over a finite base, D*(φ)², Ng(φ) and Tg(φ) over F(X) are F(X)*²",
                "target": amb.fmt_elem(&psi_x),
                "target_is_square": square,
            }),
        });
    }

    let values = represented_set(phi, 1, budget)?.elems();
    let mut certs = Vec::new();
    let mut missing = Vec::new();
    'scalars: for a in &scalars {
        let target = amb.mul(&up(a), &psi_x);
        for c in &values {
            let s = f.div(a, c)?;
            if let Some(cols) = linear_substitution(phi, psi, &s)? {
                let n = phi.dim();
                let xi: Vec<Elem> = (0..n)
                    .map(|i| {
                        cols.iter().zip(&xs).fold(amb.zero(), |acc, (col, x)| {
                            amb.add(&acc, &amb.mul(&up(&col[i]), x))
                        })
                    })
                    .collect();
                let eta = representing_vector(phi, c, budget)?.expect("c is a value");
                let cert = RepresentationCertificate::new(&amb, phi, target, amb.one(), vec![xi, lift(&eta)])?;
                if !cert.verify()?.pass {
                    return Err(Error::CertificateInvalid("linear substitution certificate".into()));
                }
                certs.push(cert.to_json());
                continue 'scalars;
            }
        }
        let sb = opts.search_budget();
        let mut reached = None;
        for b in 0..=opts.bound {
            match membership_bounded(&target, &amb, phi, 2, b, &sb) {
                Ok(Some(cert)) => {
                    certs.push(cert.to_json());
                    continue 'scalars;
                }
                Ok(None) => reached = Some(b),
                Err(Error::BudgetExceeded(_)) => break,
                Err(e) => return Err(e),
            }
        }
        missing.push(json!({"a": f.fmt_elem(a), "absent_up_to_bound": reached}));
    }
    Ok(if missing.is_empty() {
        PolyMembership { status: Status::Holds, witness: json!({ "certificates": certs }) }
    } else {
        PolyMembership { status: Status::Undecided, witness: json!({ "certificates": certs, "not_found": missing }) }
    })
}

struct Sample {
    emb: FiniteEmbedding,
    phi: QuadraticForm,
    psi: QuadraticForm,
}

fn samples(
    phi: &QuadraticForm,
    psi: &QuadraticForm,
    opts: &CheckOptions,
    both: bool,
) -> Result<(Vec<Sample>, Vec<String>)> {
    let mut kept = Vec::new();
    let mut dropped = Vec::new();
    let restricted = if both { phi.is_quasilinear() || psi.is_quasilinear() } else { psi.is_quasilinear() };
    for emb in finite_samples(&phi.field, opts.max_extension)? {
        let (p, q) = (emb.map_form(phi), emb.map_form(psi));
        let ok = !restricted
            || (is_nondefective(&p, &opts.budget)? && (!both || is_nondefective(&q, &opts.budget)?));
        if ok {
            kept.push(Sample { emb, phi: p, psi: q });
        } else {
            dropped.push(emb.to.to_string());
        }
    }
    Ok((kept, dropped))
}

/// Outcome of a per-sample check: `Some(witness)` on failure.
fn sampled<F>(samples: &[Sample], headline: Status, mut check: F) -> Result<(Status, Value)>
where
    F: FnMut(&Sample) -> Result<Option<Value>>,
{
    let mut passed = Vec::new();
    for s in samples {
        if let Some(w) = check(s)? {
            return Ok((Status::Refuted, json!({ "field": s.emb.to.to_string(), "failure": w, "passed": passed })));
        }
        passed.push(s.emb.to.to_string());
    }
    let status = if headline == Status::Holds { Status::Supported } else { Status::Undecided };
    Ok((status, json!({ "passed": passed })))
}

fn inclusion(a: &ValueSet, b: &ValueSet) -> Option<Value> {
    first_missing(a, b).map(|x| json!({ "element": a.field.fmt_elem(&x) }))
}

fn equality(a: &ValueSet, b: &ValueSet) -> Option<Value> {
    inclusion(a, b).or_else(|| inclusion(b, a))
}

fn instance(phi: &QuadraticForm, psi: &QuadraticForm, opts: &CheckOptions, kept: &[Sample], dropped: &[String]) -> Value {
    json!({
        "field": phi.field.to_string(),
        "phi": phi.to_text(),
        "psi": psi.to_text(),
        "samples": kept.iter().map(|s| s.emb.to.to_string()).collect::<Vec<_>>(),
        "dropped_samples": dropped,
        "bound": opts.bound,
    })
}

fn check_pre(phi: &QuadraticForm, psi: &QuadraticForm, opts: &CheckOptions) -> Result<()> {
    require_finite(&phi.field)?;
    if phi.field != psi.field {
        return Err(Error::MixedFields(phi.field.to_string(), psi.field.to_string()));
    }
    require_nondefective("φ", phi, &opts.budget)?;
    require_nondefective("ψ", psi, &opts.budget)?;
    if psi.dim() < 2 {
        return Err(Error::PreconditionViolated("dim ψ must be at least 2".into()));
    }
    Ok(())
}

pub fn check_th44(phi: &QuadraticForm, psi: &QuadraticForm, opts: &CheckOptions) -> Result<TheoremReport> {
    check_pre(phi, psi, opts)?;
    let budget = &opts.budget;
    let f = &phi.field;
    let v = isotropy_over_form_function_field(phi, psi, budget)?;
    let i = Status::exact(v.isotropic);
    let (kept, dropped) = samples(phi, psi, opts, false)?;
    let scalars = represented_set(psi, 1, budget)?.elems();

    let (s2, w2) = sampled(&kept, i, |s| {
        Ok(inclusion(&represented_set(&s.psi, 2, budget)?, &represented_set(&s.phi, 2, budget)?))
    })?;
    let (s4, w4) = sampled(&kept, i, |s| Ok(inclusion(&ng(&s.psi, budget)?, &ng(&s.phi, budget)?)))?;
    let (s6, w6) = sampled(&kept, i, |s| {
        let tphi = tg(&s.phi, budget)?;
        for a in &scalars {
            let apsi = s.psi.scale(&s.emb.map(a))?;
            if let Some(w) = inclusion(&tg(&apsi, budget)?, &tphi) {
                return Ok(Some(json!({ "a": f.fmt_elem(a), "missing": w })));
            }
        }
        Ok(None)
    })?;
    let pm = poly_membership(phi, psi, opts)?;
    let derived = |why: &str| json!({ "via": "iii", "reason": why });
    let cor = match pm.status {
        Status::Fails => Status::Fails,
        _ if i == Status::Holds => Status::Supported,
        _ => Status::Undecided,
    };

    let conditions = vec![
        Condition::new("i", "φ is isotropic over F(ψ)", i, v.to_json(phi)),
        Condition::new("ii", "D*_E(ψ)² ⊆ D*_E(φ)² for every E", s2, w2),
        Condition::new("iii", "aψ(X) ∈ D*_{F(X)}(φ)² for every a ∈ D*_F(ψ)", pm.status, pm.witness),
        Condition::new("iv", "Ng_E(ψ) ⊆ Ng_E(φ) for every E", s4, w4),
        Condition::new(
            "v",
            "aψ(X) ∈ Ng_{F(X)}(φ) for every a ∈ D*_F(ψ)",
            pm.status,
            derived("D*(φ)² ⊆ Ng(φ), and both equal F(X)*² when φ is quasilinear"),
        ),
        Condition::new("vi", "Tg_E(aψ) ⊆ Tg_E(φ) for every E and a ∈ D*_F(ψ)", s6, w6),
        Condition::new(
            "vii",
            "aψ(X) ∈ Tg_{F(X)}(φ) for every a ∈ D*_F(ψ)",
            pm.status,
            derived("Ng(φ) ⊆ Tg(φ), and both equal F(X)*² when φ is quasilinear"),
        ),
        Condition::new(
            "generic",
            "D*_{F(Y)}(ψ)² ⊆ D*_{F(Y)}(φ)² with dim ψ variables",
            cor,
            derived("aψ(Y) = ψ(Y)ψ(v) lies in D*(ψ)² for a = ψ(v)"),
        ),
    ];
    let ids = ["i", "ii", "iii", "iv", "v", "vi", "vii", "generic"].iter().map(|s| s.to_string()).collect();
    Ok(TheoremReport {
        theorem: "isotropy-over-form-function-field".into(),
        instance: instance(phi, psi, opts, &kept, &dropped),
        conditions,
        relations: vec![Relation::Equivalent(ids)],
        headline: "i".into(),
    })
}

pub fn check_stb(phi: &QuadraticForm, psi: &QuadraticForm, opts: &CheckOptions) -> Result<TheoremReport> {
    check_pre(phi, psi, opts)?;
    check_pre(psi, phi, opts)?;
    let budget = &opts.budget;
    let f = &phi.field;
    let v1 = isotropy_over_form_function_field(phi, psi, budget)?;
    let v2 = isotropy_over_form_function_field(psi, phi, budget)?;
    let a = Status::exact(v1.isotropic && v2.isotropic);
    let (kept, dropped) = samples(phi, psi, opts, true)?;

    let (sb, wb) = sampled(&kept, a, |s| {
        Ok(equality(&represented_set(&s.psi, 2, budget)?, &represented_set(&s.phi, 2, budget)?))
    })?;
    let (sc, wc) = sampled(&kept, a, |s| Ok(equality(&ng(&s.psi, budget)?, &ng(&s.phi, budget)?)))?;
    let m1 = poly_membership(phi, psi, opts)?;
    let m2 = poly_membership(psi, phi, opts)?;
    let sd = match (m1.status, m2.status) {
        (Status::Fails, _) | (_, Status::Fails) => Status::Fails,
        (Status::Holds, Status::Holds) if a == Status::Holds => Status::Supported,
        _ => Status::Undecided,
    };
    let mut conditions = vec![
        Condition::new(
            "a",
            "φ and ψ are stably birationally equivalent",
            a,
            json!({ "phi_over_F(psi)": v1.to_json(phi), "psi_over_F(phi)": v2.to_json(psi) }),
        ),
        Condition::new("b", "D*_E(ψ)² = D*_E(φ)² for every E", sb, wb),
        Condition::new("c", "Ng_E(ψ) = Ng_E(φ) for every E", sc, wc),
        Condition::new(
            "d",
            "D*_{F(Y)}(ψ)² = D*_{F(Y)}(φ)²",
            sd,
            json!({ "psi_into_phi": m1.witness, "phi_into_psi": m2.witness }),
        ),
    ];
    let one = f.one();
    let has_one =
        represented_set(phi, 1, budget)?.contains(&one) && represented_set(psi, 1, budget)?.contains(&one);
    if has_one {
        let (se, we) = sampled(&kept, a, |s| Ok(equality(&tg(&s.psi, budget)?, &tg(&s.phi, budget)?)))?;
        conditions.push(Condition::new("e", "Tg_E(ψ) = Tg_E(φ) for every E", se, we));
    }
    let ids = conditions.iter().map(|c| c.id.clone()).collect();
    Ok(TheoremReport {
        theorem: "stable-birational-equivalence".into(),
        instance: instance(phi, psi, opts, &kept, &dropped),
        conditions,
        relations: vec![Relation::Equivalent(ids)],
        headline: "a".into(),
    })
}
