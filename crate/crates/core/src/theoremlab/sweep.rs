//! Form families and aggregate counts for sweeps.

use serde_json::{json, Value};

use super::{Outcome, TheoremReport};
use crate::budget::Budget;
use crate::error::Result;
use crate::field::{enumerate, Elem, Field};
use crate::quadform::{isometry_test, QuadraticForm};

/// Nondefective forms over a finite field with `1 ≤ dim ≤ max_dim`: every
/// `[a1,b1]+...+[ar,br]+<c>` (at most one diagonal entry), or one form per
/// isometry class.
pub fn nondefective_forms(
    f: &Field,
    max_dim: usize,
    up_to_isometry: bool,
    budget: &Budget,
) -> Result<Vec<QuadraticForm>> {
    let els = enumerate::elements(f)?;
    let nonzero = enumerate::nonzero_elements(f)?;
    let mut out: Vec<QuadraticForm> = Vec::new();
    for dim in 1..=max_dim {
        let (r, s) = (dim / 2, dim % 2);
        let q = els.len();
        let count = q.pow(2 * r as u32);
        for idx in 0..count {
            let mut i = idx;
            let mut coords = Vec::with_capacity(2 * r);
            for _ in 0..2 * r {
                coords.push(els[i % q].clone());
                i /= q;
            }
            coords.reverse();
            let planes: Vec<(Elem, Elem)> = coords.chunks(2).map(|p| (p[0].clone(), p[1].clone())).collect();
            let diags: Vec<Vec<Elem>> =
                if s == 1 { nonzero.iter().map(|c| vec![c.clone()]).collect() } else { vec![vec![]] };
            for d in diags {
                let phi = QuadraticForm::new(f, planes.clone(), d)?;
                if up_to_isometry {
                    let mut fresh = true;
                    for other in out.iter().filter(|o| o.dim() == dim) {
                        if isometry_test(&phi, other, budget)?.isometric {
                            fresh = false;
                            break;
                        }
                    }
                    if !fresh {
                        continue;
                    }
                }
                out.push(phi);
            }
        }
    }
    Ok(out)
}

/// Entry lists for bilinear Pfister forms `<<a1,...,an>>`, `n ≤ max_n`,
/// `a_i ∈ F*`.
pub fn pfister_entries(f: &Field, max_n: usize) -> Result<Vec<Vec<Elem>>> {
    let nonzero = enumerate::nonzero_elements(f)?;
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_n {
        layer = layer
            .iter()
            .flat_map(|p: &Vec<Elem>| {
                nonzero.iter().map(move |a| {
                    let mut q = p.clone();
                    q.push(a.clone());
                    q
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepSummary {
    pub reports: usize,
    pub decided: usize,
    pub supported: usize,
    pub refuted: usize,
    pub undecided: usize,
    pub undecided_reports: usize,
    pub inconsistent: Vec<Value>,
}

impl SweepSummary {
    pub fn add(&mut self, r: &TheoremReport) {
        self.reports += 1;
        let [d, s, x, u] = r.counts();
        self.decided += d;
        self.supported += s;
        self.refuted += x;
        self.undecided += u;
        match r.outcome() {
            Outcome::Inconsistent => {
                self.inconsistent.push(json!({ "instance": r.instance, "contradictions": r.contradictions() }))
            }
            Outcome::Undecided => self.undecided_reports += 1,
            Outcome::Decided => {}
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": "qf2.sweep-summary/1",
            "reports": self.reports,
            "conditions": {
                "decided": self.decided,
                "supported": self.supported,
                "refuted": self.refuted,
                "undecided": self.undecided,
            },
            "undecided_reports": self.undecided_reports,
            "inconsistent": self.inconsistent,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_sizes() {
        let b = Budget::default();
        let g2 = Field::gf2();
        assert_eq!(nondefective_forms(&g2, 4, false, &b).unwrap().len(), 1 + 4 + 4 + 16);
        let reps = nondefective_forms(&g2, 4, true, &b).unwrap();
        let texts: Vec<String> = reps.iter().map(|p| p.to_text()).collect();
        assert_eq!(texts, ["<1>", "[0,0]", "[1,1]", "[0,0]+<1>", "[0,0]+[0,0]", "[0,0]+[1,1]"]);
        assert_eq!(pfister_entries(&Field::gf2k(2).unwrap(), 2).unwrap().len(), 1 + 3 + 9);
    }
}
