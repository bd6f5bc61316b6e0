//! Isotropy over `F(ψ)` transfers to bilinear Pfister multiples.

use serde_json::json;

use super::{require_finite, CheckOptions, Condition, Relation, Status, TheoremReport};
use crate::error::{Error, Result};
use crate::isotropy::isotropy_over_form_function_field;
use crate::quadform::{BilinearPfister, QuadraticForm};

/// Asserts only "hypothesis ⇒ conclusion"; the converse is false in
/// general (see [`super::run_counterexamples`]).
pub fn check_pfister_transfer(
    phi: &QuadraticForm,
    psi: &QuadraticForm,
    pi: &BilinearPfister,
    opts: &CheckOptions,
) -> Result<TheoremReport> {
    let f = &phi.field;
    require_finite(f)?;
    if psi.field != *f || pi.field != *f {
        return Err(Error::MixedFields(f.to_string(), psi.field.to_string()));
    }
    let budget = &opts.budget;
    let hyp = isotropy_over_form_function_field(phi, psi, budget)?;
    let (pphi, ppsi) = (phi.pfister_multiply(pi)?, psi.pfister_multiply(pi)?);
    let (concl, cw) = match isotropy_over_form_function_field(&pphi, &ppsi, budget) {
        Ok(v) => (Status::exact(v.isotropic), v.to_json(&pphi)),
        Err(e @ (Error::BudgetExceeded(_) | Error::PreconditionViolated(_))) => {
            (Status::Undecided, json!({ "error": e.to_string() }))
        }
        Err(e) => return Err(e),
    };
    let ids = ["hypothesis".to_string(), "conclusion".to_string()];
    let relation = if pi.entries.is_empty() {
        Relation::Equivalent(ids.to_vec())
    } else {
        Relation::Implies(ids[0].clone(), ids[1].clone())
    };
    Ok(TheoremReport {
        theorem: "pfister-transfer".into(),
        instance: json!({
            "field": f.to_string(),
            "phi": phi.to_text(),
            "psi": psi.to_text(),
            "pfister": pi.entries.iter().map(|e| f.fmt_elem(e)).collect::<Vec<_>>(),
            "pi_phi": pphi.to_text(),
            "pi_psi": ppsi.to_text(),
        }),
        conditions: vec![
            Condition::new("hypothesis", "φ is isotropic over F(ψ)", Status::exact(hyp.isotropic), hyp.to_json(phi)),
            Condition::new("conclusion", "π⊗φ is isotropic over F(π⊗ψ)", concl, cw),
        ],
        relations: vec![relation],
        headline: "hypothesis".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn run(a: &str, b: &str, pi: Vec<crate::field::Elem>) -> TheoremReport {
        let f = Field::gf2();
        let phi = QuadraticForm::parse(&f, a).unwrap();
        let psi = QuadraticForm::parse(&f, b).unwrap();
        let pi = BilinearPfister::new(&f, pi).unwrap();
        check_pfister_transfer(&phi, &psi, &pi, &CheckOptions::default()).unwrap()
    }

    #[test]
    fn examples() {
        let one = Field::gf2().one();
        let r = run("[1,1]", "[1,1]", vec![one.clone()]);
        assert!(r.consistent());
        assert_eq!(r.condition("conclusion").unwrap().status, Status::Holds);
        let r = run("[1,1]", "[1,1]", vec![]);
        assert_eq!(r.relations, vec![Relation::Equivalent(vec!["hypothesis".into(), "conclusion".into()])]);
        assert_eq!(r.condition("conclusion").unwrap().status, Status::Holds);
        let r = run("<1>", "<1>", vec![one]);
        assert_eq!(r.condition("hypothesis").unwrap().status, Status::Fails);
        assert!(r.consistent());
    }
}
