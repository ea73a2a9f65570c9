//! JSON views of reports and certificates.

use rug::float::Round;
use serde_json::{json, Value};

use super::bounds::Verdict;
use super::certificate::VandermondeCertificate;
use super::verify::Verified;
use crate::arith::{ComplexInterval, Interval};
use crate::roots::RootSet;

pub fn interval_json(x: &Interval) -> Value {
    json!({ "mid": x.to_f64(), "rad": x.rad_f64() })
}

fn complex_json(z: &ComplexInterval) -> Value {
    let (re, im) = z.mid().to_f64_pair();
    json!({ "re": re, "im": im, "rad": z.rad().to_f64_round(Round::Up) })
}

/// Canonical root list, so graph indices can be audited.
pub fn roots_json(roots: &RootSet) -> Value {
    Value::Array(
        roots
            .entries()
            .iter()
            .enumerate()
            .map(|(k, e)| {
                let (re, im) = e.center.to_f64_pair();
                json!({
                    "index": k,
                    "re": re,
                    "im": im,
                    "radius": e.radius.to_f64_round(Round::Up),
                    "multiplicity": e.multiplicity,
                })
            })
            .collect(),
    )
}

pub fn certificate_json(c: &VandermondeCertificate, with_matrices: bool) -> Value {
    let mut v = json!({
        "det_w": complex_json(&c.det_w),
        "det_w1": complex_json(&c.det_w1),
        "edge_product": complex_json(&c.edge_product),
        "step_factors": c.step_factors.iter().map(complex_json).collect::<Vec<_>>(),
        "row_norms": c.row_norms.iter().map(interval_json).collect::<Vec<_>>(),
        "row_bounds": c.row_bounds.iter().map(interval_json).collect::<Vec<_>>(),
        "hadamard": interval_json(&c.hadamard),
        "relative_discrepancy": c.relative_discrepancy,
        "identity_certified": c.identity_certified,
        "hadamard_certified": c.hadamard_certified,
        "route_gap": c.route_gap,
    });
    if with_matrices {
        let r = c.matrices.len();
        let ms: Vec<Value> = c
            .matrices
            .iter()
            .enumerate()
            .map(|(k, m)| {
                json!({
                    "name": format!("W_{}", r - k),
                    "rows": m.iter().map(|row| row.iter().map(complex_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
                })
            })
            .collect();
        v["matrices"] = Value::Array(ms);
    }
    v
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Holds => "holds",
        Verdict::Inconclusive => "inconclusive",
        Verdict::Violated => "violated",
    }
}

pub fn report_json(v: &Verified) -> Value {
    let rep = &v.report;
    let inv = &v.instance.invariants;
    let components: serde_json::Map<String, Value> =
        rep.components.named().iter().map(|(k, x)| (k.to_string(), interval_json(x))).collect();
    json!({
        "variant": rep.variant.name(),
        "polynomial": v.instance.poly.render(),
        "degree": inv.degree,
        "distinct_roots": inv.distinct,
        "graph": {
            "edges": v.graph.edges().iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
            "in_degrees": v.graph.in_degrees(),
            "total_degrees": v.graph.total_degrees(),
        },
        "roots": roots_json(&v.instance.roots),
        "lhs": interval_json(&rep.lhs),
        "rhs": interval_json(&rep.rhs),
        "components": components,
        "certificate": rep.certificate.as_ref().map(|c| certificate_json(c, false)),
        "hints": rep.hints.as_ref().map(|h| serde_json::to_value(h.pairs()).expect("hints serialize")),
        "sep": rep.sep.as_ref().map(|s| serde_json::to_value(s).expect("split serializes")),
        "verdict": verdict_str(rep.verdict),
        "degenerate": rep.degenerate,
        "margin": rep.margin.to_f64_round(Round::Down),
        "precision_bits": rep.precision,
        "attempts": v.attempts,
    })
}
