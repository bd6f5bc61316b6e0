//! Desk-scale machine checks of the isotropy characterizations.
//!
//! Every check returns a [`TheoremReport`]: per-condition verdicts plus the
//! relations the theorem asserts between them. A report is consistent when
//! no asserted relation is violated by *decided* verdicts.

use serde_json::{json, Value};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::{enumerate, Elem, Field, FieldKind};
use crate::isotropy::witt_decompose;
use crate::quadform::QuadraticForm;

mod characterize;
mod counterexamples;
mod sweep;
mod transfer;
mod xsum;

pub use characterize::{check_stb, check_th44};
pub use counterexamples::run_counterexamples;
pub use sweep::{nondefective_forms, pfister_entries, SweepSummary};
pub use transfer::check_pfister_transfer;
pub use xsum::check_xsum;

pub const REPORT_SCHEMA: &str = "qf2.theorem-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// Decided true by an exact procedure.
    Holds,
    /// Decided false by an exact procedure.
    Fails,
    /// A universally quantified condition failing on a sample.
    Refuted,
    /// Every sample passes and the headline condition is decided true.
    Supported,
    /// Recorded from the literature; corroborated, not decided.
    Cited,
    Undecided,
}

impl Status {
    pub fn decided(self) -> Option<bool> {
        match self {
            Status::Holds => Some(true),
            Status::Fails | Status::Refuted => Some(false),
            _ => None,
        }
    }

    pub fn exact(b: bool) -> Status {
        if b {
            Status::Holds
        } else {
            Status::Fails
        }
    }
}

#[derive(Clone, Debug)]
pub struct Condition {
    pub id: String,
    pub statement: String,
    pub status: Status,
    /// Verdict the instance is known to require (counterexample checks).
    pub expected: Option<bool>,
    pub witness: Value,
}

impl Condition {
    pub fn new(id: &str, statement: &str, status: Status, witness: Value) -> Condition {
        Condition { id: id.into(), statement: statement.into(), status, expected: None, witness }
    }

    pub fn expect(mut self, b: bool) -> Condition {
        self.expected = Some(b);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relation {
    Equivalent(Vec<String>),
    Implies(String, String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Decided,
    Undecided,
    Inconsistent,
}

#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub theorem: String,
    pub instance: Value,
    pub conditions: Vec<Condition>,
    pub relations: Vec<Relation>,
    /// Condition whose decision makes the report count as decided.
    pub headline: String,
}

impl TheoremReport {
    pub fn condition(&self, id: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.id == id)
    }

    fn decided(&self, id: &str) -> Option<bool> {
        self.condition(id).and_then(|c| c.status.decided())
    }

    /// Violated relations and expectations, as readable strings.
    pub fn contradictions(&self) -> Vec<String> {
        let mut out = Vec::new();
        for r in &self.relations {
            match r {
                Relation::Equivalent(ids) => {
                    let t = ids.iter().find(|i| self.decided(i) == Some(true));
                    let f = ids.iter().find(|i| self.decided(i) == Some(false));
                    if let (Some(t), Some(f)) = (t, f) {
                        out.push(format!("({t}) holds but ({f}) fails"));
                    }
                }
                Relation::Implies(a, b) => {
                    if self.decided(a) == Some(true) && self.decided(b) == Some(false) {
                        out.push(format!("({a}) holds but ({b}) fails"));
                    }
                }
            }
        }
        for c in &self.conditions {
            if let (Some(e), Some(d)) = (c.expected, c.status.decided()) {
                if e != d {
                    out.push(format!("({}) expected {e}, decided {d}", c.id));
                }
            }
            if c.expected.is_some() && c.status.decided().is_none() && c.status != Status::Cited {
                out.push(format!("({}) left undecided", c.id));
            }
        }
        out
    }

    pub fn consistent(&self) -> bool {
        self.contradictions().is_empty()
    }

    pub fn outcome(&self) -> Outcome {
        if !self.consistent() {
            Outcome::Inconsistent
        } else if self.decided(&self.headline).is_some() {
            Outcome::Decided
        } else {
            Outcome::Undecided
        }
    }

    pub fn counts(&self) -> [usize; 4] {
        let mut c = [0; 4];
        for x in &self.conditions {
            let i = match x.status {
                Status::Holds | Status::Fails => 0,
                Status::Supported | Status::Cited => 1,
                Status::Refuted => 2,
                Status::Undecided => 3,
            };
            c[i] += 1;
        }
        c
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": REPORT_SCHEMA,
            "theorem": self.theorem,
            "instance": self.instance,
            "conditions": self.conditions.iter().map(|c| json!({
                "id": c.id,
                "statement": c.statement,
                "status": c.status,
                "expected": c.expected,
                "witness": c.witness,
            })).collect::<Vec<_>>(),
            "relations": self.relations.iter().map(|r| match r {
                Relation::Equivalent(ids) => json!({"equivalent": ids}),
                Relation::Implies(a, b) => json!({"implies": [a, b]}),
            }).collect::<Vec<_>>(),
            "headline": self.headline,
            "outcome": self.outcome(),
            "contradictions": self.contradictions(),
            "consistent": self.consistent(),
        })
    }
}

/// Knobs shared by the checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    /// Finite samples are `GF(2^k)` for `k ≤ max_extension` divisible by
    /// the base degree.
    pub max_extension: u32,
    /// Degree bound for polynomial membership and isotropy searches.
    pub bound: usize,
    pub budget: Budget,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { max_extension: 4, bound: 4, budget: Budget::default() }
    }
}

impl CheckOptions {
    /// Cap for the bounded searches run inside sweeps.
    pub(crate) fn search_budget(&self) -> Budget {
        Budget::new(self.budget.max_vectors.min(1 << 12))
    }
}

/// `GF(2^d) → GF(2^k)` for `d | k`, sending the generator to the first root
/// of its modulus.
#[derive(Clone, Debug)]
pub struct FiniteEmbedding {
    pub to: Field,
    powers: Vec<Elem>,
}

impl FiniteEmbedding {
    pub fn new(from: &Field, to: &Field) -> Result<FiniteEmbedding> {
        let (FieldKind::Finite { degree: d, modulus }, Some(k)) = (from.kind(), to.finite_degree()) else {
            return Err(Error::UnsupportedField(format!("{from} → {to} is not finite")));
        };
        if !to.is_finite() || k % d != 0 {
            return Err(Error::WrongField(format!("{from} does not embed in {to}")));
        }
        let eval = |r: &Elem| {
            (0..=*d).filter(|i| modulus >> i & 1 == 1).fold(to.zero(), |acc, i| {
                to.add(&acc, &to.pow(r, i as i64).expect("nonnegative power"))
            })
        };
        let root = if *d == 1 {
            to.one()
        } else {
            enumerate::nonzero_elements(to)?
                .into_iter()
                .find(|r| to.is_zero(&eval(r)))
                .expect("finite fields of degree divisible by d contain GF(2^d)")
        };
        let powers = (0..*d).map(|i| to.pow(&root, i as i64).expect("nonnegative power")).collect();
        Ok(FiniteEmbedding { to: to.clone(), powers })
    }

    pub fn map(&self, x: &Elem) -> Elem {
        let Elem::Gf(bits) = x else { panic!("finite element expected") };
        self.powers
            .iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .fold(self.to.zero(), |acc, (_, p)| self.to.add(&acc, p))
    }

    pub fn map_form(&self, phi: &QuadraticForm) -> QuadraticForm {
        QuadraticForm {
            field: self.to.clone(),
            planes: phi.planes.iter().map(|(a, b)| (self.map(a), self.map(b))).collect(),
            diagonal: phi.diagonal.iter().map(|c| self.map(c)).collect(),
        }
    }
}

/// The finite sample fields for a base `GF(2^d)`.
pub fn finite_samples(base: &Field, max_extension: u32) -> Result<Vec<FiniteEmbedding>> {
    let d = base
        .finite_degree()
        .filter(|_| base.is_finite())
        .ok_or_else(|| Error::UnsupportedField(format!("finite base required, got {base}")))?;
    (1..=max_extension)
        .filter(|k| k % d == 0)
        .map(|k| FiniteEmbedding::new(base, &Field::gf2k(k)?))
        .collect()
}

pub(crate) fn require_finite(f: &Field) -> Result<()> {
    if f.is_finite() {
        Ok(())
    } else {
        Err(Error::UnsupportedField(format!("finite base required, got {f}")))
    }
}

pub(crate) fn is_nondefective(phi: &QuadraticForm, budget: &Budget) -> Result<bool> {
    Ok(witt_decompose(phi, budget)?.i_d == 0)
}

pub(crate) fn require_nondefective(name: &str, phi: &QuadraticForm, budget: &Budget) -> Result<()> {
    if is_nondefective(phi, budget)? {
        Ok(())
    } else {
        Err(Error::PreconditionViolated(format!("{name} = {phi} is defective")))
    }
}

pub(crate) fn first_missing(a: &crate::valuegroups::ValueSet, b: &crate::valuegroups::ValueSet) -> Option<Elem> {
    a.elems().into_iter().find(|x| !b.contains(x))
}
