//! Parallel randomized campaigns.

use rayon::prelude::*;
use serde::Serialize;

use super::generate::{generate_instance, SweepParams};
use crate::dmbound::{verify, Variant, Verdict, VerifyOptions, IDENTITY_TOL};
use crate::graph::Preset;
use crate::invariants::routes_agree;
use crate::poly::Polynomial;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRecord {
    pub index: u64,
    pub polynomial: String,
    pub degree: usize,
    pub distinct: usize,
    pub preset: Preset,
    pub edges: usize,
    pub verdict: Option<Verdict>,
    pub attempts: Vec<u32>,
    pub margin: Option<f64>,
    pub relative_discrepancy: Option<f64>,
    pub identity_certified: Option<bool>,
    pub hadamard_certified: Option<bool>,
    pub sdisc_routes_agree: Option<bool>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SweepSummary {
    pub count: usize,
    pub holds: usize,
    /// Not settled at the starting precision.
    pub inconclusive_first: usize,
    /// Still inconclusive at the ceiling.
    pub unresolved: usize,
    pub violations: usize,
    pub errors: usize,
    pub max_relative_discrepancy: f64,
    pub discrepancy_over_tol: usize,
    pub identity_failures: usize,
    pub hadamard_failures: usize,
    pub sdisc_disagreements: usize,
}

impl SweepSummary {
    pub fn clean(&self) -> bool {
        self.violations == 0
            && self.unresolved == 0
            && self.errors == 0
            && self.discrepancy_over_tol == 0
            && self.identity_failures == 0
            && self.hadamard_failures == 0
            && self.sdisc_disagreements == 0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepOutcome {
    pub summary: SweepSummary,
    pub records: Vec<SweepRecord>,
}

pub fn run_instance(params: &SweepParams, index: u64, variant: Variant, opts: &VerifyOptions) -> SweepRecord {
    let inst = generate_instance(params.seed, index, params);
    let poly = Polynomial::Exact(inst.poly.clone());
    let mut rec = SweepRecord {
        index,
        polynomial: inst.poly.to_string(),
        degree: inst.poly.degree().unwrap_or(0),
        distinct: inst.roots.len(),
        preset: inst.preset,
        edges: 0,
        verdict: None,
        attempts: Vec::new(),
        margin: None,
        relative_discrepancy: None,
        identity_certified: None,
        hadamard_certified: None,
        sdisc_routes_agree: None,
        error: None,
    };
    match verify(&poly, &inst.graph, variant, opts) {
        Ok(v) => {
            let rep = &v.report;
            rec.edges = v.graph.edge_count();
            rec.verdict = Some(rep.verdict);
            rec.attempts = v.attempts.clone();
            rec.margin = Some(rep.margin.to_f64());
            if let Some(c) = &rep.certificate {
                rec.relative_discrepancy = Some(c.relative_discrepancy);
                rec.identity_certified = Some(c.identity_certified);
                rec.hadamard_certified = Some(c.hadamard_certified);
            }
            let inv = &v.instance.invariants;
            rec.sdisc_routes_agree = Some(routes_agree(&inv.sdisc_abs, &inv.sdisc_abs_roots));
        }
        Err(e) => rec.error = Some(e.to_string()),
    }
    rec
}

/// Runs `params.count` instances in parallel; records come back in index order.
pub fn run_sweep(params: &SweepParams, variant: Variant, opts: &VerifyOptions) -> SweepOutcome {
    let records: Vec<SweepRecord> = (0..params.count as u64)
        .into_par_iter()
        .map(|i| run_instance(params, i, variant, opts))
        .collect();
    let mut s = SweepSummary { count: records.len(), ..Default::default() };
    for r in &records {
        match r.verdict {
            Some(Verdict::Holds) => s.holds += 1,
            Some(Verdict::Inconclusive) => s.unresolved += 1,
            Some(Verdict::Violated) => s.violations += 1,
            None => s.errors += 1,
        }
        if r.attempts.len() > 1 || r.verdict == Some(Verdict::Inconclusive) {
            s.inconclusive_first += 1;
        }
        if let Some(d) = r.relative_discrepancy {
            s.max_relative_discrepancy = s.max_relative_discrepancy.max(d);
            if !(d <= IDENTITY_TOL) {
                s.discrepancy_over_tol += 1;
            }
        }
        s.identity_failures += (r.identity_certified == Some(false)) as usize;
        s.hadamard_failures += (r.hadamard_certified == Some(false)) as usize;
        s.sdisc_disagreements += (r.sdisc_routes_agree == Some(false)) as usize;
    }
    SweepOutcome { summary: s, records }
}
