//! Dispatch over variants with precision escalation.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::bounds::{
    bound_classical, bound_main, bound_remark_degree, bound_remark_pairs, bound_sep_product, BoundReport, ClusterHint,
    HintPair, Instance, Variant, Verdict,
};
use crate::error::{Error, Result};
use crate::graph::{preset_edges, Preset, RootGraph};
use crate::poly::Polynomial;

/// Edges are given on canonical root indices, so presets are resolved only
/// after the roots are known.
#[derive(Clone, Debug, PartialEq)]
pub enum GraphInput {
    Edges(Vec<(usize, usize)>),
    Preset { preset: Preset, seed: u64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyOptions {
    pub precision: u32,
    pub ceiling: u32,
    pub hints: Vec<HintPair>,
    /// Roots entering the `sep` product; all roots when `None`.
    pub subset: Option<Vec<usize>>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { precision: 128, ceiling: 1024, hints: Vec::new(), subset: None }
    }
}

#[derive(Clone, Debug)]
pub struct Verified {
    pub instance: Instance,
    pub graph: RootGraph,
    pub report: BoundReport,
    /// Working precisions tried, in order.
    pub attempts: Vec<u32>,
}

fn run_once(poly: &Polynomial, graph: &GraphInput, variant: Variant, opts: &VerifyOptions, prec: u32) -> Result<Verified> {
    let instance = Instance::new(poly.clone(), prec)?;
    let edges = match graph {
        GraphInput::Edges(e) => e.clone(),
        GraphInput::Preset { preset, seed } => preset_edges(*preset, &instance.roots, &mut ChaCha8Rng::seed_from_u64(*seed))?,
    };
    let mut graph = instance.graph(&edges)?;
    let report = match variant {
        Variant::Main => bound_main(&instance, &graph)?,
        Variant::Classical => bound_classical(&instance, &graph)?,
        Variant::RemarkDegree => bound_remark_degree(&instance, &graph)?,
        Variant::RemarkPairs => {
            let hints = ClusterHint::new(opts.hints.clone(), &instance.roots)?;
            bound_remark_pairs(&instance, &graph, &hints)?
        }
        Variant::SepProduct => {
            let subset = opts.subset.clone().unwrap_or_else(|| (0..instance.r()).collect());
            let rep = bound_sep_product(&instance, &subset)?;
            graph = instance.graph(&rep.edges)?;
            rep
        }
    };
    Ok(Verified { instance, graph, report, attempts: Vec::new() })
}

/// Runs `variant`, doubling the working precision while the verdict is
/// inconclusive, up to `opts.ceiling`.
pub fn verify(poly: &Polynomial, graph: &GraphInput, variant: Variant, opts: &VerifyOptions) -> Result<Verified> {
    let mut prec = opts.precision;
    let mut attempts = Vec::new();
    loop {
        attempts.push(prec);
        let last = prec >= opts.ceiling;
        match run_once(poly, graph, variant, opts, prec) {
            Ok(mut v) if v.report.verdict != Verdict::Inconclusive || last => {
                v.attempts = attempts;
                return Ok(v);
            }
            Ok(_) => {}
            Err(Error::IndistinguishableRoots { .. } | Error::CertificateInconclusive { .. }) if !last => {}
            Err(e) => return Err(e),
        }
        prec *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn poly(s: &str) -> Polynomial {
        parse_polynomial(s, 128).unwrap()
    }

    #[test]
    fn verify_examples() {
        let opts = VerifyOptions::default();
        let g = GraphInput::Edges(vec![(0, 1)]);
        let v = verify(&poly("x^2-1"), &g, Variant::Main, &opts).unwrap();
        assert_eq!(v.report.verdict, Verdict::Holds);
        assert!((v.report.margin.to_f64() - (2.0 - 3f64.sqrt() / 2.0)).abs() < 1e-14);
        assert_eq!(v.attempts, vec![128]);
        let c = verify(&poly("x^2-1"), &g, Variant::Classical, &opts).unwrap();
        assert_eq!(c.report.verdict, Verdict::Holds);
        assert!((c.report.margin.to_f64() - v.report.margin.to_f64()).abs() < 1e-15);
        let d = verify(&poly("(x-1)^3"), &GraphInput::Edges(vec![]), Variant::Main, &opts).unwrap();
        assert!(d.report.degenerate);
        assert_eq!(d.report.verdict, Verdict::Holds);
    }

    #[test]
    fn exact_equality_stays_inconclusive() {
        // no edges, roots of unity: both sides equal 1
        let opts = VerifyOptions { ceiling: 256, ..Default::default() };
        let v = verify(&poly("x^3-1"), &GraphInput::Edges(vec![]), Variant::Main, &opts).unwrap();
        assert_eq!(v.report.verdict, Verdict::Inconclusive);
        assert_eq!(v.attempts, vec![128, 256]);
        // rational roots give exact point enclosures, so equality certifies
        let v = verify(&poly("x^2-1"), &GraphInput::Edges(vec![]), Variant::Main, &opts).unwrap();
        assert_eq!(v.report.verdict, Verdict::Holds);
    }

    #[test]
    fn presets_and_errors() {
        let opts = VerifyOptions::default();
        let p = poly("x^4 - 3*x^2 + x - 7");
        for preset in Preset::ALL {
            let v = verify(&p, &GraphInput::Preset { preset, seed: 3 }, Variant::Main, &opts).unwrap();
            assert_eq!(v.report.verdict, Verdict::Holds, "{preset}");
        }
        let err = verify(&p, &GraphInput::Edges(vec![(0, 9)]), Variant::Main, &opts);
        assert!(matches!(err, Err(Error::IndexOutOfRange { .. })));
        let v = verify(&p, &GraphInput::Edges(vec![]), Variant::SepProduct, &opts).unwrap();
        assert_eq!(v.report.sep.as_ref().unwrap().subset, vec![0, 1, 2, 3]);
        assert_eq!(v.report.verdict, Verdict::Holds);
    }
}
