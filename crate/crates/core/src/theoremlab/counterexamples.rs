//! The two instances showing the Pfister transfer has no converse, over
//! `F = GF(2)(s)(t)` with `a = s`, `b = t`.

use serde_json::json;

use super::{Condition, Status, TheoremReport};
use crate::budget::Budget;
use crate::error::Result;
use crate::field::{Elem, Field};
use crate::isotropy::quasilinear::{independent_entries, span_equal, span_rank};
use crate::isotropy::{bounded_isotropy_search, quasilinear_isotropy_tower, vec_json};
use crate::quadform::{isometry_test, QuadraticForm};

fn el(f: &Field, s: &str) -> Elem {
    f.parse_elem(s).expect("fixed instance")
}

fn example_one(f: &Field, budget: &Budget) -> Result<TheoremReport> {
    let basis: Vec<Elem> = ["1", "s", "t", "s*t"].iter().map(|s| el(f, s)).collect();
    let rank = span_rank(f, &basis)?;
    let pphi = QuadraticForm::parse(f, "pf(s)*(<1,s>)")?;
    let w = quasilinear_isotropy_tower(f, &pphi.diagonal)?;
    let w_ok = match &w {
        Some(v) => f.is_zero(&pphi.evaluate(v)?) && v.iter().any(|x| !f.is_zero(x)),
        None => false,
    };

    // F(ψ) for ψ = <1,s,t>: t = x1² + s·x2² turns it into GF(2)(s)(x1)(x2)
    let model = Field::parse("GF(2)(s)(x1)(x2)")?;
    let phi_m = QuadraticForm::parse(&model, "<1,s>")?;
    let model_rank = span_rank(&model, &phi_m.diagonal)?;
    let mut absent = None;
    let small = Budget::new(budget.max_vectors.min(1 << 12));
    for b in 0..=2 {
        match bounded_isotropy_search(&phi_m, b, &small) {
            Ok(None) => absent = Some(b),
            _ => break,
        }
    }
    let t_image = model.parse_elem("x1^2+s*x2^2")?;
    let psi_m = QuadraticForm::diag(&model, vec![model.one(), model.parse_elem("s")?, t_image]);
    let generic = [model.parse_elem("x1")?, model.parse_elem("x2")?, model.one()];
    let model_ok = model.is_zero(&psi_m.evaluate(&generic)?);

    Ok(TheoremReport {
        theorem: "transfer-converse-counterexample-1".into(),
        instance: json!({
            "field": f.to_string(),
            "phi": "<1,s>", "psi": "<1,s,t>", "pfister": ["s"],
            "pi_phi": pphi.to_text(),
        }),
        conditions: vec![
            Condition::new(
                "two-independent",
                "{1, s, t, st} is linearly independent over F²",
                Status::exact(rank == 4),
                json!({ "rank": rank }),
            )
            .expect(true),
            Condition::new(
                "pi-phi-isotropic",
                "π⊗φ = <1,s,s,s²> is isotropic over F",
                Status::exact(w_ok),
                json!({ "vector": w.as_ref().map(|v| vec_json(f, v)) }),
            )
            .expect(true),
            Condition::new(
                "phi-anisotropic-over-F(psi)",
                "φ stays anisotropic over F(ψ) (separation theorem for quasilinear forms)",
                if model_ok && model_rank == 2 { Status::Holds } else { Status::Cited },
                json!({
                    "model": model.to_string(),
                    "t_maps_to": "x1^2+s*x2^2",
                    "generic_zero_of_psi": model_ok,
                    "phi_span_rank_in_model": model_rank,
                    "bounded_search_absent_up_to": absent,
                }),
            )
            .expect(true),
        ],
        relations: vec![],
        headline: "two-independent".into(),
    })
}

fn example_two(f: &Field, budget: &Budget) -> Result<TheoremReport> {
    let pphi = QuadraticForm::parse(f, "pf(t)*(<1,s>)")?;
    let ppsi = QuadraticForm::parse(f, "pf(t)*(<1,s*t>)")?;
    let iso = isometry_test(&pphi, &ppsi, budget)?;
    let phi = QuadraticForm::parse(f, "<1,s>")?;
    let psi = QuadraticForm::parse(f, "<1,s*t>")?;
    let cands: Vec<Elem> = independent_entries(f, &psi.diagonal)?.into_iter().map(|i| psi.diagonal[i].clone()).collect();
    let mut tried = Vec::new();
    let mut similar = false;
    for c in &cands {
        let scaled: Vec<Elem> = phi.diagonal.iter().map(|x| f.mul(c, x)).collect();
        let eq = span_equal(f, &scaled, &psi.diagonal)?;
        similar |= eq;
        tried.push(json!({ "c": f.fmt_elem(c), "c_phi": QuadraticForm::diag(f, scaled).to_text(), "span_equal": eq }));
    }
    Ok(TheoremReport {
        theorem: "transfer-converse-counterexample-2".into(),
        instance: json!({
            "field": f.to_string(),
            "phi": phi.to_text(), "psi": psi.to_text(), "pfister": ["t"],
            "pi_phi": pphi.to_text(), "pi_psi": ppsi.to_text(),
        }),
        conditions: vec![
            Condition::new(
                "isometric",
                "π′⊗φ′ ≅ π′⊗ψ′",
                Status::exact(iso.isometric),
                serde_json::to_value(&iso).unwrap_or_default(),
            )
            .expect(true),
            Condition::new(
                "pi-phi-isotropic-over-F(pi-psi)",
                "π′⊗φ′ is isotropic over F(π′⊗ψ′)",
                Status::exact(iso.isometric),
                json!({ "reason": "isometric to π′⊗ψ′, which is isotropic over its own function field" }),
            )
            .expect(true),
            Condition::new(
                "not-similar",
                "φ′ and ψ′ are not similar",
                Status::exact(!similar),
                json!({
                    "reason": "a factor c with cφ′ ≅ ψ′ lies in the F²-span of ψ′; span(ψ′) is closed under products, so its basis covers every class",
                    "candidates": tried,
                }),
            )
            .expect(true),
            Condition::new(
                "phi-anisotropic-over-F(psi)",
                "φ′ stays anisotropic over F(ψ′)",
                Status::exact(!similar),
                json!({ "reason": "over the quadratic extension F(ψ′), isotropy of φ′ would force φ′ similar to ψ′" }),
            )
            .expect(true),
        ],
        relations: vec![],
        headline: "isometric".into(),
    })
}

pub fn run_counterexamples(budget: &Budget) -> Result<(TheoremReport, TheoremReport)> {
    let f = Field::parse("GF(2)(s)(t)")?;
    Ok((example_one(&f, budget)?, example_two(&f, budget)?))
}
