//! Cross-validation of history-preserving bisimilarity on denotations
//! against forward-reverse bisimilarity with ready multisets on processes.

use serde::Serialize;

use crate::equivalences::{frb_brm_proc, hhpb};
use crate::error::HarnessError;
use crate::structures::{denote_initial, is_conflict_local};
use crate::syntax::Process;

use super::batch;
use super::generator::{generate_pairs, GeneratorConfig};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PairOutcome {
    pub p1: String,
    pub p2: String,
    pub hhpb: bool,
    pub frb: bool,
    pub local1: bool,
    pub local2: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CrossValidationReport {
    pub pairs_checked: usize,
    pub agreements: usize,
    pub disagreements: usize,
    pub equivalent_pairs: usize,
    pub dumps: Vec<PairOutcome>,
}

impl CrossValidationReport {
    /// Every disagreement involves a structure that is not conflict-local.
    pub fn disagreements_explained(&self) -> bool {
        self.dumps.iter().all(|d| !(d.local1 && d.local2))
    }
}

pub fn check_pair(p1: &Process, p2: &Process) -> Result<PairOutcome, HarnessError> {
    let c1 = denote_initial(p1)?;
    let c2 = denote_initial(p2)?;
    Ok(PairOutcome {
        p1: p1.to_string(),
        p2: p2.to_string(),
        hhpb: hhpb(&c1, &c2)?.verdict,
        frb: frb_brm_proc(p1, p2)?.verdict,
        local1: is_conflict_local(&c1, false).local,
        local2: is_conflict_local(&c2, false).local,
    })
}

pub fn cross_validate_pairs(pairs: &[(Process, Process)]) -> Result<CrossValidationReport, HarnessError> {
    let outcomes = batch::map(pairs, |(p, q)| check_pair(p, q));
    let mut report = CrossValidationReport::default();
    for o in outcomes {
        let o = o?;
        report.pairs_checked += 1;
        report.equivalent_pairs += usize::from(o.frb);
        if o.hhpb == o.frb {
            report.agreements += 1;
        } else {
            report.disagreements += 1;
            report.dumps.push(o);
        }
    }
    Ok(report)
}

pub fn cross_validate(cfg: &GeneratorConfig) -> Result<CrossValidationReport, HarnessError> {
    cross_validate_pairs(&generate_pairs(cfg)?)
}
