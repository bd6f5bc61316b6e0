use std::io::Read;

use qf2::budget::Budget;
use qf2::certify::{ebf_analyze, RepresentationCertificate, CERTIFICATE_SCHEMA};
use qf2::field::{Field, FieldKind};
use qf2::isotropy::{
    bounded_isotropy_search, isotropy_ff, isotropy_over_form_function_field, quasilinear_isotropy_tower,
    residue_anisotropy, witt_decompose,
};
use qf2::quadform::{BilinearPfister, QuadraticForm};
use qf2::theoremlab::{
    check_pfister_transfer, check_stb, check_th44, check_xsum, nondefective_forms, pfister_entries,
    run_counterexamples, CheckOptions, Outcome, SweepSummary, TheoremReport,
};
use qf2::valuegroups::{lemma21_audit, ng, represented_set, tg};
use qf2::{Error, Result};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cli::{CheckCommand, Cli, Command, Pair, SweepTheorem};
use crate::output::{emit, emit_line, report_text, tuple, vector};

pub const OK: i32 = 0;
pub const REFUTED: i32 = 2;
pub const UNDECIDED: i32 = 3;

fn budget(args: &Cli) -> Budget {
    args.budget.map(Budget::new).unwrap_or_default()
}

fn options(args: &Cli) -> CheckOptions {
    let mut o = CheckOptions { budget: budget(args), ..CheckOptions::default() };
    if let Some(b) = args.bound {
        o.bound = b;
    }
    if let Some(k) = args.samples {
        o.max_extension = k;
    }
    o
}

fn form(field: &str, src: &str) -> Result<QuadraticForm> {
    QuadraticForm::parse(&Field::parse(field)?, src)
}

pub fn run_command(args: &Cli) -> Result<i32> {
    match &args.command {
        Command::Field { field } => describe_field(args, field),
        Command::Form { form: src, field } => describe_form(args, &form(field, src)?),
        Command::Witt { form: src, field } => witt(args, &form(field, src)?),
        Command::Isotropy { form: src, field, over } => match over {
            Some(psi) => isotropy_over(args, &form(field, src)?, &form(field, psi)?),
            None => isotropy(args, &form(field, src)?),
        },
        Command::Dstar { form: src, field, power } => dstar(args, &form(field, src)?, *power),
        Command::Represent { form: src, field, target, var } => represent(args, &form(field, src)?, target, var),
        Command::Verify { file } => verify(args, file.as_deref()),
        Command::Check { which } => check(args, which),
        Command::Counterexamples => {
            let (a, b) = run_counterexamples(&budget(args))?;
            Ok(reports(args, &[a, b]))
        }
    }
}

fn describe_field(args: &Cli, src: &str) -> Result<i32> {
    let f = Field::parse(src)?;
    let kind = match f.kind() {
        FieldKind::Finite { .. } => "finite",
        FieldKind::Rational { .. } => "rational",
        FieldKind::Laurent { .. } => "laurent",
        FieldKind::Algebraic { .. } => "algebraic",
    };
    let v = json!({
        "schema": "qf2.field/1",
        "field": f.to_string(),
        "kind": kind,
        "characteristic": 2,
        "order": f.order(),
        "ground": f.ground().to_string(),
        "variables": f.variables(),
        "precision": f.precision(),
        "exact": f.is_exact(),
    });
    emit(args, &v, || {
        let mut s = format!("{f}\n  kind: {kind}\n  ground: {}", f.ground());
        if let Some(q) = f.order() {
            s += &format!("\n  order: {q}");
        }
        if !f.variables().is_empty() {
            s += &format!("\n  variables: {}", f.variables().join(", "));
        }
        if let Some(p) = f.precision() {
            s += &format!("\n  precision: {p}");
        }
        s
    });
    Ok(OK)
}

fn describe_form(args: &Cli, phi: &QuadraticForm) -> Result<i32> {
    let (r, s) = phi.type_of();
    let v = json!({
        "schema": "qf2.form/1",
        "field": phi.field.to_string(),
        "form": phi.to_text(),
        "dim": phi.dim(),
        "type": [r, s],
        "classification": format!("{:?}", phi.classification()).to_lowercase(),
    });
    emit(args, &v, || {
        format!(
            "{}\n  field: {}\n  dim: {}\n  type: ({r},{s})\n  classification: {:?}",
            phi.to_text(),
            phi.field,
            phi.dim(),
            phi.classification()
        )
    });
    Ok(OK)
}

fn witt(args: &Cli, phi: &QuadraticForm) -> Result<i32> {
    let d = witt_decompose(phi, &budget(args))?;
    let mut v = d.to_json();
    v["schema"] = "qf2.witt/1".into();
    v["field"] = phi.field.to_string().into();
    v["form"] = phi.to_text().into();
    emit(args, &v, || {
        let an = if d.anisotropic.dim() == 0 { "0".into() } else { d.anisotropic.to_text() };
        let mut s = format!("i_W = {}, i_d = {}, i_t = {}\nanisotropic part: {an}", d.i_w, d.i_d, d.i_t());
        for w in &d.witnesses {
            s += &format!("\nisotropic vector: {}", tuple(&phi.field, w));
        }
        s
    });
    Ok(OK)
}

fn checked_zero(phi: &QuadraticForm, w: &[qf2::Elem]) -> Result<()> {
    let f = &phi.field;
    if w.iter().all(|x| f.is_zero(x)) || !f.is_zero(&phi.evaluate(w)?) {
        return Err(Error::CertificateInvalid(format!("isotropy witness {} for {phi}", tuple(f, w))));
    }
    Ok(())
}

fn isotropy(args: &Cli, phi: &QuadraticForm) -> Result<i32> {
    let f = &phi.field;
    let b = budget(args);
    let mut v = json!({ "schema": "qf2.isotropy/1", "field": f.to_string(), "form": phi.to_text() });
    let mut witness = None;
    let mut certificate = None;
    let method;
    if f.is_finite() {
        witness = isotropy_ff(phi, &b)?;
        method = "exhaustive";
    } else if phi.is_quasilinear() && f.is_rational_tower() {
        witness = quasilinear_isotropy_tower(f, &phi.diagonal)?;
        method = "square-basis dependence";
    } else if let Some(c) = residue_anisotropy(phi, None, &b)? {
        certificate = Some(c);
        method = "residue forms";
    } else if f.is_rational_tower() {
        witness = bounded_isotropy_search(phi, args.bound.unwrap_or(2), &b)?;
        method = "bounded search";
    } else {
        method = "residue forms";
    }
    if let Some(w) = &witness {
        checked_zero(phi, w)?;
    }
    let exact = f.is_finite() || (phi.is_quasilinear() && f.is_rational_tower());
    let verdict = match (&witness, &certificate) {
        (Some(_), _) => "isotropic",
        (None, Some(_)) => "anisotropic",
        (None, None) if exact => "anisotropic",
        _ => "inconclusive",
    };
    v["verdict"] = verdict.into();
    v["method"] = method.into();
    if let Some(w) = &witness {
        v["witness"] = json!(vector(f, w));
    }
    if let Some(c) = &certificate {
        if !c.verify(&b)? {
            return Err(Error::CertificateInvalid("anisotropy certificate".into()));
        }
        v["certificate"] = c.to_json();
    }
    emit(args, &v, || {
        let mut s = format!("{verdict} ({method})");
        if let Some(w) = &witness {
            s += &format!("\nwitness: {}", tuple(f, w));
        }
        if let Some(c) = &certificate {
            for l in c.leaves() {
                s += &format!("\nanisotropic residue form {} over {}", l.form(), l.form().field);
            }
        }
        s
    });
    Ok(if verdict == "inconclusive" { UNDECIDED } else { OK })
}

fn isotropy_over(args: &Cli, phi: &QuadraticForm, psi: &QuadraticForm) -> Result<i32> {
    let r = isotropy_over_form_function_field(phi, psi, &budget(args))?;
    if let Some(w) = &r.base_witness {
        checked_zero(phi, w)?;
    }
    let mut v = r.to_json(phi);
    v["schema"] = "qf2.function-field-isotropy/1".into();
    v["field"] = phi.field.to_string().into();
    v["phi"] = phi.to_text().into();
    v["psi"] = psi.to_text().into();
    emit(args, &v, || {
        let head = if r.isotropic { "isotropic" } else { "anisotropic" };
        format!("{head} over F({psi})\n  {}", r.trace.join("\n  "))
    });
    Ok(OK)
}

fn dstar(args: &Cli, phi: &QuadraticForm, k: usize) -> Result<i32> {
    let b = budget(args);
    let f = &phi.field;
    let d = represented_set(phi, k, &b)?;
    let (n, t) = (ng(phi, &b)?, tg(phi, &b)?);
    let audit = lemma21_audit(phi, None, &b)?;
    let v = json!({
        "schema": "qf2.dstar/1",
        "field": f.to_string(),
        "form": phi.to_text(),
        "power": k,
        "values": d.to_json(),
        "ng": n.to_json(),
        "tg": t.to_json(),
        "audit": audit.to_json(),
    });
    let list = |s: &qf2::valuegroups::ValueSet| vector(f, &s.elems()).join(", ");
    emit(args, &v, || {
        format!(
            "D*(φ)^{k}: {{{}}}\nNg: {{{}}}\nTg: {{{}}}\nchain audit: {}",
            list(&d),
            list(&n),
            list(&t),
            if audit.holds() { "holds" } else { "FAILS" }
        )
    });
    Ok(if audit.holds() { OK } else { REFUTED })
}

fn certificate_text(c: &RepresentationCertificate) -> String {
    let f = &c.field;
    let mut s = format!(
        "{} = {} · Π φ(ξ_i) over {f}, φ = {}",
        f.fmt_elem(&c.target),
        f.fmt_elem(&c.scalar),
        c.form.to_text()
    );
    for (i, v) in c.vectors.iter().enumerate() {
        s += &format!("\n  ξ{} = {}", i + 1, tuple(f, v));
    }
    s
}

fn represent(args: &Cli, phi: &QuadraticForm, target: &str, var: &str) -> Result<i32> {
    let amb = phi.field.rational(var)?;
    let t = amb.parse_elem(target)?;
    let r = ebf_analyze(phi, &amb, &t, args.bound, &budget(args))?;
    let code = if r.consistent() { OK } else { REFUTED };
    match &r.certificate {
        Some(c) => {
            if !c.verify()?.pass {
                return Err(Error::CertificateInvalid("produced certificate does not verify".into()));
            }
            emit(args, &c.to_json(), || certificate_text(c));
        }
        None => {
            let mut v = r.to_json(&amb);
            v["schema"] = "qf2.representation/1".into();
            v["field"] = amb.to_string().into();
            v["form"] = phi.to_text().into();
            emit(args, &v, || {
                let mut s = format!("{} is not a product of values of {phi} over {amb}", amb.fmt_elem(&t));
                for fr in r.odd_factors.iter().filter(|x| !x.isotropic) {
                    s += &format!("\n  φ is anisotropic over the residue field {} of {}", fr.residue_field, amb.fmt_elem(&fr.factor));
                }
                if !r.a_in_tg {
                    s += &format!("\n  leading coefficient {} is not in the group generated by D*(φ)", phi.field.fmt_elem(&r.a));
                }
                s
            });
        }
    }
    Ok(code)
}

fn collect_certificates(v: &Value, out: &mut Vec<Value>) {
    match v {
        Value::Object(m) => {
            if m.get("schema").and_then(Value::as_str) == Some(CERTIFICATE_SCHEMA) {
                out.push(v.clone());
            }
            m.values().for_each(|x| collect_certificates(x, out));
        }
        Value::Array(a) => a.iter().for_each(|x| collect_certificates(x, out)),
        _ => {}
    }
}

/// Every certificate embedded in the input; JSON Lines are accepted.
fn verify(args: &Cli, file: Option<&str>) -> Result<i32> {
    let mut text = String::new();
    let read = match file {
        None | Some("-") => std::io::stdin().read_to_string(&mut text).map(|_| ()),
        Some(p) => std::fs::read_to_string(p).map(|s| text = s),
    };
    read.map_err(|e| Error::MalformedCertificate(format!("cannot read input: {e}")))?;
    let mut found = Vec::new();
    for doc in serde_json::Deserializer::from_str(&text).into_iter::<Value>() {
        let doc = doc.map_err(|e| Error::MalformedCertificate(e.to_string()))?;
        collect_certificates(&doc, &mut found);
    }
    if found.is_empty() {
        return Err(Error::MalformedCertificate("no certificate found in input".into()));
    }
    let mut results = Vec::new();
    for c in &found {
        let cert = RepresentationCertificate::from_json(c)?;
        let ver = cert.verify()?;
        let f = &cert.field;
        results.push(json!({
            "target": f.fmt_elem(&cert.target),
            "field": f.to_string(),
            "power": cert.power(),
            "pass": ver.pass,
            "residual": ver.residual.as_ref().map(|r| f.fmt_elem(r)),
        }));
    }
    let pass = results.iter().all(|r| r["pass"] == true);
    let v = json!({ "schema": "qf2.verification/1", "pass": pass, "certificates": results });
    emit(args, &v, || {
        results
            .iter()
            .map(|r| {
                let verdict = if r["pass"] == true { "PASS" } else { "FAIL" };
                format!("{verdict} {} over {} (m = {})", r["target"].as_str().unwrap(), r["field"].as_str().unwrap(), r["power"])
            })
            .collect::<Vec<_>>()
            .join("\n")
    });
    Ok(if pass { OK } else { REFUTED })
}

fn code_of(r: &TheoremReport) -> i32 {
    match r.outcome() {
        Outcome::Decided => OK,
        Outcome::Undecided => UNDECIDED,
        Outcome::Inconsistent => REFUTED,
    }
}

fn single(args: &Cli, r: &TheoremReport) -> i32 {
    emit(args, &r.to_json(), || report_text(r));
    code_of(r)
}

/// Reports one per line, then the summary. Exit 3 only if nothing was decided.
fn reports(args: &Cli, rs: &[TheoremReport]) -> i32 {
    let mut summary = SweepSummary::default();
    for r in rs {
        summary.add(r);
        emit_line(args, &r.to_json(), || report_text(r));
    }
    emit_line(args, &summary.to_json(), || {
        format!(
            "{} reports: {} decided, {} supported, {} refuted, {} undecided conditions; {} inconsistent",
            summary.reports,
            summary.decided,
            summary.supported,
            summary.refuted,
            summary.undecided,
            summary.inconsistent.len()
        )
    });
    if rs.iter().any(|r| matches!(r.outcome(), Outcome::Inconsistent)) {
        REFUTED
    } else if !rs.is_empty() && rs.iter().all(|r| matches!(r.outcome(), Outcome::Undecided)) {
        UNDECIDED
    } else {
        OK
    }
}

fn pair(p: &Pair) -> Result<(QuadraticForm, QuadraticForm)> {
    Ok((form(&p.field, &p.phi)?, form(&p.field, &p.psi)?))
}

fn pfister(f: &Field, src: &str) -> Result<BilinearPfister> {
    let entries = src
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| f.parse_elem(s))
        .collect::<Result<Vec<_>>>()?;
    BilinearPfister::new(f, entries)
}

fn check(args: &Cli, which: &CheckCommand) -> Result<i32> {
    let opts = options(args);
    match which {
        CheckCommand::Isotropy(p) => {
            let (phi, psi) = pair(p)?;
            Ok(single(args, &check_th44(&phi, &psi, &opts)?))
        }
        CheckCommand::Stable(p) => {
            let (phi, psi) = pair(p)?;
            Ok(single(args, &check_stb(&phi, &psi, &opts)?))
        }
        CheckCommand::Xsum { field, phi0, phi1, psi0, psi1 } => {
            let [a, b, c, d] = [phi0, phi1, psi0, psi1].map(|s| form(field, s));
            Ok(single(args, &check_xsum(&a?, &b?, &c?, &d?, &opts)?))
        }
        CheckCommand::Transfer { pair: p, pi } => {
            let (phi, psi) = pair(p)?;
            let pi = pfister(&phi.field, pi)?;
            Ok(single(args, &check_pfister_transfer(&phi, &psi, &pi, &opts)?))
        }
        CheckCommand::Sweep { field, theorem, max_dim, representatives, pfister: depth } => {
            let f = Field::parse(field)?;
            let forms = nondefective_forms(&f, *max_dim, *representatives, &opts.budget)?;
            let pairs: Vec<(&QuadraticForm, &QuadraticForm)> = forms
                .iter()
                .flat_map(|p| forms.iter().filter(|q| q.dim() >= 2).map(move |q| (p, q)))
                .collect();
            let rs: Vec<TheoremReport> = match theorem {
                SweepTheorem::Isotropy => {
                    pairs.par_iter().map(|(p, q)| check_th44(p, q, &opts)).collect::<Result<_>>()?
                }
                SweepTheorem::Stable => pairs
                    .par_iter()
                    .filter(|(p, _)| p.dim() >= 2)
                    .map(|(p, q)| check_stb(p, q, &opts))
                    .collect::<Result<_>>()?,
                SweepTheorem::Transfer => {
                    let pis = pfister_entries(&f, *depth)?
                        .into_iter()
                        .map(|e| BilinearPfister::new(&f, e))
                        .collect::<Result<Vec<_>>>()?;
                    let cases: Vec<_> =
                        pairs.iter().flat_map(|(p, q)| pis.iter().map(move |pi| (*p, *q, pi))).collect();
                    cases.par_iter().map(|(p, q, pi)| check_pfister_transfer(p, q, pi, &opts)).collect::<Result<_>>()?
                }
            };
            Ok(reports(args, &rs))
        }
    }
}
