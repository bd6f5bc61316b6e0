//! Acceptance criteria 1–8. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails. Tolerances are exact (zero violations); the
//! time limits are pinned per criterion.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use qf2::budget::Budget;
use qf2::certify::{
    certificate_to_isotropy_witness, ebf_analyze, represent_irreducible_1var, Representation,
    RepresentationCertificate, CERTIFICATE_SCHEMA,
};
use qf2::field::{enumerate, factor, Elem, Field};
use qf2::isotropy::{isotropy_ff, residue_anisotropy, AnisotropyCertificate};
use qf2::quadform::{BilinearPfister, QuadraticForm};
use qf2::theoremlab::{
    check_pfister_transfer, check_stb, check_th44, nondefective_forms, pfister_entries, run_counterexamples,
    CheckOptions, SweepSummary, TheoremReport,
};
use qf2::valuegroups::{lemma21_audit, leading_coeff_reduce, represented_set};
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde_json::Value;

/// Re-verifies everything the other criteria emit.
#[derive(Default)]
struct Gate {
    checked: AtomicUsize,
    failures: Mutex<Vec<String>>,
}

impl Gate {
    fn record(&self, ok: bool, what: impl FnOnce() -> String) {
        self.checked.fetch_add(1, Ordering::Relaxed);
        if !ok {
            self.failures.lock().unwrap().push(what());
        }
    }

    fn cert(&self, c: &RepresentationCertificate) {
        self.record(c.verify().map(|v| v.pass).unwrap_or(false), || format!("certificate for {:?}", c.target));
    }

    fn zero(&self, phi: &QuadraticForm, v: &[Elem]) {
        let f = &phi.field;
        let ok = v.iter().any(|x| !f.is_zero(x)) && phi.evaluate(v).map(|y| f.is_zero(&y)).unwrap_or(false);
        self.record(ok, || format!("isotropy witness for {phi}"));
    }

    fn anisotropy(&self, c: &AnisotropyCertificate, budget: &Budget) {
        self.record(c.verify(budget).unwrap_or(false), || format!("anisotropy certificate for {}", c.form()));
    }

    /// Every embedded representation certificate, plus the base witness
    /// of an exact F(ψ) decision.
    fn report(&self, r: &TheoremReport) {
        fn walk(g: &Gate, v: &Value) {
            match v {
                Value::Object(m) => {
                    if m.get("schema").and_then(Value::as_str) == Some(CERTIFICATE_SCHEMA) {
                        match RepresentationCertificate::from_json(v) {
                            Ok(c) => g.cert(&c),
                            Err(e) => g.record(false, || format!("unparsable certificate: {e}")),
                        }
                    }
                    m.values().for_each(|x| walk(g, x));
                }
                Value::Array(a) => a.iter().for_each(|x| walk(g, x)),
                _ => {}
            }
        }
        for c in &r.conditions {
            walk(self, &c.witness);
        }
        if let (Some(i), Some(field), Some(phi)) = (
            r.condition("i"),
            r.instance["field"].as_str(),
            r.instance["phi"].as_str(),
        ) {
            if let Some(w) = i.witness["base_witness"].as_array() {
                let f = Field::parse(field).unwrap();
                let phi = QuadraticForm::parse(&f, phi).unwrap();
                let v: Vec<Elem> = w.iter().map(|s| f.parse_elem(s.as_str().unwrap()).unwrap()).collect();
                self.zero(&phi, &v);
            }
        }
    }
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn forms_with_one(f: &Field, up_to_isometry: bool, budget: &Budget) -> Vec<QuadraticForm> {
    nondefective_forms(f, 4, up_to_isometry, budget)
        .unwrap()
        .into_iter()
        .filter(|p| represented_set(p, 1, budget).unwrap().contains(&f.one()))
        .collect()
}

fn criterion_1(gate: &Gate) -> Outcome {
    let budget = Budget::default();
    let mut cases = 0;
    let mut bad = Vec::new();
    for (base, max_deg) in [("GF(2)", 4), ("GF(4)", 2)] {
        let f = Field::parse(base).unwrap();
        let amb = f.rational("X").unwrap();
        let polys: Vec<_> = (1..=max_deg).flat_map(|d| factor::irreducibles(&f, d).unwrap()).collect();
        let forms = forms_with_one(&f, false, &budget);
        let results: Vec<(usize, Vec<String>)> = polys
            .par_iter()
            .map(|p| {
                let target = amb.from_poly(p.clone()).unwrap();
                let residue = qf2::field::Place::Poly(p.clone()).residue_field(&amb).unwrap();
                let mut bad = Vec::new();
                for phi in &forms {
                    let iso = isotropy_ff(&phi.coefficients_in(&residue).unwrap(), &budget).unwrap().is_some();
                    let rep = represent_irreducible_1var(phi, &amb, &target, &budget).unwrap();
                    let label = || format!("{phi} / {}", amb.fmt_elem(&target));
                    match rep {
                        Representation::Certificate(c) => {
                            gate.cert(&c);
                            if !iso {
                                bad.push(format!("{}: certificate but residue form anisotropic", label()));
                            }
                            if c.power() > p.len() - 1 {
                                bad.push(format!("{}: m = {} > deg f", label(), c.power()));
                            }
                            match certificate_to_isotropy_witness(&c, &target) {
                                Ok(w) => gate.zero(&w.form, &w.vector),
                                Err(e) => gate.record(false, || format!("{}: round trip: {e}", label())),
                            }
                            match leading_coeff_reduce(&c, &budget) {
                                Ok(r) => {
                                    gate.cert(&r);
                                    gate.record(r.power() == c.power(), || format!("{}: reduced length", label()));
                                }
                                Err(e) => gate.record(false, || format!("{}: leading coefficients: {e}", label())),
                            }
                        }
                        Representation::NotRepresentable { .. } => {
                            if iso {
                                bad.push(format!("{}: residue form isotropic but no certificate", label()));
                            }
                        }
                    }
                }
                (forms.len(), bad)
            })
            .collect();
        for (n, b) in results {
            cases += n;
            bad.extend(b);
        }
    }
    Outcome { pass: bad.is_empty(), detail: format!("{cases} cases, {} mismatches{}", bad.len(), first(&bad)) }
}

fn criterion_2(gate: &Gate) -> Outcome {
    let budget = Budget::default();
    let f = Field::gf2();
    let amb = f.rational("X").unwrap();
    let forms = forms_with_one(&f, false, &budget);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(36);
    let mut targets = Vec::new();
    while targets.len() < 200 {
        let d = rng.gen_range(1..=6);
        let p = enumerate::random_poly(&f, &mut rng, d);
        if p.len() >= 2 {
            targets.push(amb.from_poly(p).unwrap());
        }
    }
    let bad: Vec<String> = targets
        .par_iter()
        .flat_map_iter(|t| {
            let mut out = Vec::new();
            for phi in &forms {
                let r = ebf_analyze(phi, &amb, t, None, &budget).unwrap();
                if let Some(c) = &r.certificate {
                    gate.cert(c);
                }
                for fr in &r.odd_factors {
                    if let Some(c) = &fr.certificate {
                        gate.cert(c);
                    }
                }
                if !r.consistent() {
                    out.push(format!("{phi} / {}", amb.fmt_elem(t)));
                }
            }
            out
        })
        .collect();
    Outcome {
        pass: bad.is_empty(),
        detail: format!("{} analyses, {} contradictions{}", 200 * forms.len(), bad.len(), first(&bad)),
    }
}

fn all_forms(f: &Field, max_dim: usize) -> Vec<QuadraticForm> {
    let els = enumerate::elements(f).unwrap();
    let mut out = Vec::new();
    for dim in 1..=max_dim {
        for r in 0..=dim / 2 {
            let s = dim - 2 * r;
            let n = 2 * r + s;
            for idx in 0..(els.len() as u64).pow(n as u32) {
                let v = enumerate::vector_at(f, n, idx);
                let planes = v[..2 * r].chunks(2).map(|p| (p[0].clone(), p[1].clone())).collect();
                out.push(QuadraticForm::new(f, planes, v[2 * r..].to_vec()).unwrap());
            }
        }
    }
    out
}

fn criterion_3() -> Outcome {
    let budget = Budget::default();
    let mut audits = 0;
    let mut bad = Vec::new();
    for k in 1..=3 {
        let f = Field::gf2k(k).unwrap();
        let forms = all_forms(&f, 3);
        let res: Vec<(usize, Vec<String>)> = forms
            .par_iter()
            .map(|phi| {
                let d = represented_set(phi, 1, &budget).unwrap();
                let cs: Vec<Option<Elem>> =
                    if d.is_empty() { vec![None] } else { d.elems().into_iter().map(Some).collect() };
                let mut bad = Vec::new();
                for c in &cs {
                    let a = lemma21_audit(phi, c.as_ref(), &budget).unwrap();
                    if !a.holds() {
                        bad.push(format!("{phi} c={c:?}"));
                    }
                }
                (cs.len(), bad)
            })
            .collect();
        for (n, b) in res {
            audits += n;
            bad.extend(b);
        }
    }
    Outcome { pass: bad.is_empty(), detail: format!("{audits} audits, {} failures{}", bad.len(), first(&bad)) }
}

fn anisotropic_forms(f: &Field, max_dim: usize, budget: &Budget) -> Vec<QuadraticForm> {
    all_forms(f, max_dim).into_iter().filter(|p| isotropy_ff(p, budget).unwrap().is_none()).collect()
}

fn criterion_4(gate: &Gate) -> Outcome {
    let budget = Budget::default();
    let mut samples = 0;
    let mut violations = Vec::new();
    let mut pairs = 0;
    let mut missing = Vec::new();
    for k in 1..=2 {
        let res = Field::gf2k(k).unwrap();
        let lf = res.laurent("X", 32).unwrap();
        let x = lf.var_elem().unwrap();
        let lift = |p: &QuadraticForm| p.coefficients_in(&lf).unwrap();
        let forms = anisotropic_forms(&res, 3, &budget);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(26 + k as u64);
        for phi in &forms {
            let phi = lift(phi);
            for _ in 0..1000 {
                let v: Vec<Elem> = loop {
                    let v: Vec<Elem> = (0..phi.dim()).map(|_| enumerate::random_elem(&lf, &mut rng, 0)).collect();
                    if v.iter().any(|e| !lf.is_zero(e)) {
                        break v;
                    }
                };
                samples += 1;
                let val = |e: &Elem| match e {
                    Elem::Ser(s) => s.valuation().ok(),
                    _ => None,
                };
                let min = v.iter().filter(|e| !lf.is_zero(e)).filter_map(val).min();
                let got = val(&phi.evaluate(&v).unwrap());
                if got.is_none() || got != min.map(|m| 2 * m) {
                    violations.push(format!("{phi} at {v:?}"));
                }
            }
        }
        for p0 in forms.iter().filter(|p| p.dim() <= 2) {
            for p1 in forms.iter().filter(|p| p.dim() <= 2) {
                pairs += 1;
                let sum = lift(p0).direct_sum(&lift(p1).scale(&x).unwrap()).unwrap();
                match residue_anisotropy(&sum, None, &budget).unwrap() {
                    Some(c) => gate.anisotropy(&c, &budget),
                    None => missing.push(sum.to_text()),
                }
            }
        }
    }
    Outcome {
        pass: violations.is_empty() && missing.is_empty(),
        detail: format!(
            "{samples} valuation samples, {} violations; {pairs} X-sums, {} without certificate{}",
            violations.len(),
            missing.len(),
            [first(&violations), first(&missing)].concat()
        ),
    }
}

fn pair_family(budget: &Budget) -> Vec<(Field, Vec<QuadraticForm>)> {
    vec![
        (Field::gf2(), nondefective_forms(&Field::gf2(), 4, false, budget).unwrap()),
        (Field::gf2k(2).unwrap(), nondefective_forms(&Field::gf2k(2).unwrap(), 4, true, budget).unwrap()),
    ]
}

fn criterion_5(gate: &Gate) -> Outcome {
    let opts = CheckOptions::default();
    let mut summary = SweepSummary::default();
    for (_, forms) in pair_family(&opts.budget) {
        let pairs: Vec<(&QuadraticForm, &QuadraticForm)> = forms
            .iter()
            .flat_map(|p| forms.iter().filter(|q| q.dim() >= 2).map(move |q| (p, q)))
            .collect();
        let reports: Vec<TheoremReport> = pairs
            .par_iter()
            .flat_map_iter(|(p, q)| {
                let mut out = vec![check_th44(p, q, &opts).unwrap()];
                if p.dim() >= 2 {
                    out.push(check_stb(p, q, &opts).unwrap());
                }
                out
            })
            .collect();
        for r in &reports {
            gate.report(r);
            summary.add(r);
        }
    }
    Outcome {
        pass: summary.inconsistent.is_empty(),
        detail: format!(
            "{} reports, {} decided contradictions; conditions decided {} supported {} refuted {} undecided {}",
            summary.reports,
            summary.inconsistent.len(),
            summary.decided,
            summary.supported,
            summary.refuted,
            summary.undecided
        ),
    }
}

fn criterion_6(gate: &Gate) -> Outcome {
    let opts = CheckOptions::default();
    let mut decided = 0;
    let mut held = 0;
    let mut bad = Vec::new();
    for (f, forms) in pair_family(&opts.budget) {
        let pis: Vec<BilinearPfister> =
            pfister_entries(&f, 2).unwrap().into_iter().map(|e| BilinearPfister::new(&f, e).unwrap()).collect();
        let cases: Vec<(&QuadraticForm, &QuadraticForm, &BilinearPfister)> = forms
            .iter()
            .flat_map(|p| forms.iter().filter(|q| q.dim() >= 2).map(move |q| (p, q)))
            .flat_map(|(p, q)| pis.iter().map(move |pi| (p, q, pi)))
            .collect();
        let reports: Vec<TheoremReport> =
            cases.par_iter().map(|(p, q, pi)| check_pfister_transfer(p, q, pi, &opts).unwrap()).collect();
        for r in &reports {
            gate.report(r);
            let h = r.condition("hypothesis").unwrap().status.decided();
            let c = r.condition("conclusion").unwrap().status.decided();
            if h == Some(true) && c.is_some() {
                decided += 1;
                if c == Some(true) {
                    held += 1;
                } else {
                    bad.push(r.instance.to_string());
                }
            }
        }
    }
    Outcome {
        pass: bad.is_empty() && decided > 0,
        detail: format!("implication held in {held}/{decided} decided instances{}", first(&bad)),
    }
}

fn criterion_7(gate: &Gate) -> Outcome {
    let (a, b) = run_counterexamples(&Budget::default()).unwrap();
    gate.report(&a);
    gate.report(&b);
    let f = Field::parse("GF(2)(s)(t)").unwrap();
    let pphi = QuadraticForm::parse(&f, "pf(s)*(<1,s>)").unwrap();
    let w: Vec<Elem> = a.condition("pi-phi-isotropic").unwrap().witness["vector"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| f.parse_elem(s.as_str().unwrap()).unwrap())
        .collect();
    gate.zero(&pphi, &w);
    let checks = [
        ("rank-4 2-independence", a.condition("two-independent")),
        ("isotropy of <1,s,s,s^2>", a.condition("pi-phi-isotropic")),
        ("quasilinear isometry", b.condition("isometric")),
        ("non-similarity", b.condition("not-similar")),
    ];
    let failed: Vec<&str> =
        checks.iter().filter(|(_, c)| c.map(|c| c.status.decided()) != Some(Some(true))).map(|(n, _)| *n).collect();
    Outcome {
        pass: failed.is_empty() && a.consistent() && b.consistent(),
        detail: format!("{} of 4 reproduced{}", 4 - failed.len(), first(&failed)),
    }
}

type Check = Box<dyn Fn(&Gate) -> Outcome>;

fn first<S: std::fmt::Display>(v: &[S]) -> String {
    v.first().map(|e| format!("; first: {e}")).unwrap_or_default()
}

fn main() {
    let gate = Gate::default();
    let runs: Vec<(u32, &str, Duration, Check)> = vec![
        (1, "one-variable representation sweep", Duration::from_secs(300), Box::new(criterion_1)),
        (2, "factored polynomial analysis", Duration::from_secs(300), Box::new(criterion_2)),
        (3, "value group chain", Duration::from_secs(60), Box::new(|_| criterion_3())),
        (4, "valuation and X-sum anisotropy", Duration::from_secs(120), Box::new(criterion_4)),
        (5, "isotropy and stable equivalence sweep", Duration::from_secs(900), Box::new(criterion_5)),
        (6, "Pfister transfer direction", Duration::from_secs(600), Box::new(criterion_6)),
        (7, "transfer converse counterexamples", Duration::from_secs(10), Box::new(criterion_7)),
    ];
    let mut all = true;
    for (n, name, limit, run) in runs {
        let t = Instant::now();
        let o = run(&gate);
        let el = t.elapsed();
        let pass = o.pass && el <= limit;
        all &= pass;
        println!(
            "criterion {n} [{name}]: {} ({:.1}s of {}s) {}",
            if pass { "PASS" } else { "FAIL" },
            el.as_secs_f64(),
            limit.as_secs(),
            o.detail
        );
    }
    let failures = gate.failures.lock().unwrap();
    let pass = failures.is_empty();
    all &= pass;
    println!(
        "criterion 8 [soundness gate]: {} ({} re-verified, {} failed){}",
        if pass { "PASS" } else { "FAIL" },
        gate.checked.load(Ordering::Relaxed),
        failures.len(),
        first(&failures)
    );
    if !all {
        std::process::exit(1);
    }
}
