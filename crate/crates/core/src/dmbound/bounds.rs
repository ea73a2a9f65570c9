//! Every bound variant as an interval computation.

use std::collections::BTreeMap;

use rug::float::Round;
use rug::{Float, Rational};
use serde::{Deserialize, Serialize};

use super::certificate::{reduce_vandermonde, VandermondeCertificate};
use super::lemmas::multiplicity_exponent;
use crate::arith::Interval;
use crate::error::{Error, Result};
use crate::graph::{check_classical_admissible, min_total_degree, RootGraph};
use crate::invariants::{compute_invariants, InvariantBundle};
use crate::poly::Polynomial;
use crate::roots::{find_roots, RootSet};

/// A polynomial with its certified roots and invariants at one precision.
#[derive(Clone, Debug)]
pub struct Instance {
    pub poly: Polynomial,
    pub roots: RootSet,
    pub invariants: InvariantBundle,
}

impl Instance {
    pub fn new(poly: Polynomial, prec: u32) -> Result<Self> {
        let roots = find_roots(&poly, prec)?;
        let invariants = compute_invariants(&poly, &roots)?;
        Ok(Self { poly, roots, invariants })
    }

    pub fn r(&self) -> usize {
        self.roots.distinct_count()
    }

    pub fn d(&self) -> usize {
        self.roots.total_degree()
    }

    pub fn precision(&self) -> u32 {
        self.roots.precision()
    }

    pub fn graph(&self, edges: &[(usize, usize)]) -> Result<RootGraph> {
        crate::graph::orient(edges, &self.roots)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Classical,
    Main,
    RemarkDegree,
    RemarkPairs,
    SepProduct,
}

impl Variant {
    pub const ALL: [Variant; 5] =
        [Variant::Classical, Variant::Main, Variant::RemarkDegree, Variant::RemarkPairs, Variant::SepProduct];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Classical => "classical",
            Variant::Main => "main",
            Variant::RemarkDegree => "remark_degree",
            Variant::RemarkPairs => "remark_pairs",
            Variant::SepProduct => "sep_product",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown variant '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Inconclusive,
    /// `lhs < rhs` certified; never expected.
    Violated,
}

/// The five factors of the right-hand side.
#[derive(Clone, Debug)]
pub struct Components {
    pub sdisc_sqrt: Interval,
    pub mahler_power: Interval,
    pub edge_factor: Interval,
    pub r_power: Interval,
    pub multiplicity_factor: Interval,
}

impl Components {
    pub fn product(&self) -> Interval {
        self.sdisc_sqrt
            .mul(&self.mahler_power)
            .mul(&self.edge_factor)
            .mul(&self.r_power)
            .mul(&self.multiplicity_factor)
    }

    pub fn mul(&self, o: &Components) -> Components {
        Components {
            sdisc_sqrt: self.sdisc_sqrt.mul(&o.sdisc_sqrt),
            mahler_power: self.mahler_power.mul(&o.mahler_power),
            edge_factor: self.edge_factor.mul(&o.edge_factor),
            r_power: self.r_power.mul(&o.r_power),
            multiplicity_factor: self.multiplicity_factor.mul(&o.multiplicity_factor),
        }
    }

    pub fn named(&self) -> [(&'static str, &Interval); 5] {
        [
            ("sdisc_sqrt", &self.sdisc_sqrt),
            ("mahler_power", &self.mahler_power),
            ("edge_factor", &self.edge_factor),
            ("r_power", &self.r_power),
            ("multiplicity_factor", &self.multiplicity_factor),
        ]
    }
}

/// One validated pair `(gamma, delta)` with its exponent excess `Delta`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HintPair {
    pub i: usize,
    pub j: usize,
    pub delta: f64,
}

/// Pairs certified to satisfy `|v_i - v_j| <= (sqrt 3 / r)^{1 + delta}`,
/// sorted by `delta` descending.
#[derive(Clone, Debug, PartialEq)]
pub struct ClusterHint {
    pairs: Vec<HintPair>,
}

impl ClusterHint {
    pub fn new(mut pairs: Vec<HintPair>, roots: &RootSet) -> Result<Self> {
        let r = roots.distinct_count();
        let prec = roots.precision();
        let base = Interval::from_i64(prec, 3).sqrt().div(&Interval::from_i64(prec, r as i64));
        let mut seen = std::collections::BTreeSet::new();
        for p in &pairs {
            for k in [p.i, p.j] {
                if k >= r {
                    return Err(Error::IndexOutOfRange { index: k, len: r });
                }
            }
            if p.i == p.j {
                return Err(Error::InvalidHint(format!("pair ({}, {}) is not a pair of distinct roots", p.i, p.j)));
            }
            if !(p.delta > 0.0 && p.delta.is_finite()) {
                return Err(Error::InvalidHint(format!("delta {} for pair ({}, {}) must be positive", p.delta, p.i, p.j)));
            }
            if !seen.insert((p.i.min(p.j), p.i.max(p.j))) {
                return Err(Error::InvalidHint(format!("pair ({}, {}) repeated", p.i, p.j)));
            }
            let exp = Float::with_val(prec, 1 + Float::with_val(prec, p.delta));
            let limit = base.pow_real(&exp);
            let dist = roots.distance(p.i, p.j);
            if !(dist.hi() <= limit.lo()) {
                return Err(Error::InvalidHint(format!(
                    "|v_{} - v_{}| = {:e} exceeds (sqrt 3 / r)^(1 + {}) = {:e}",
                    p.i,
                    p.j,
                    dist.to_f64(),
                    p.delta,
                    limit.to_f64()
                )));
            }
        }
        pairs.sort_by(|a, b| b.delta.total_cmp(&a.delta));
        Ok(Self { pairs })
    }

    pub fn pairs(&self) -> &[HintPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// The multigraph split used for products of `sep`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SepSplit {
    pub subset: Vec<usize>,
    /// Closest different root chosen for each member of `subset`.
    pub partners: Vec<usize>,
    pub e0: Vec<(usize, usize)>,
    pub e1: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct BoundReport {
    pub variant: Variant,
    pub lhs: Interval,
    pub rhs: Interval,
    pub components: Components,
    /// `lhs_low - rhs_high`, rounded down.
    pub margin: Float,
    pub verdict: Verdict,
    /// `r = 1`: the inequality holds by convention.
    pub degenerate: bool,
    pub precision: u32,
    pub edges: Vec<(usize, usize)>,
    pub certificate: Option<VandermondeCertificate>,
    pub hints: Option<ClusterHint>,
    pub sep: Option<SepSplit>,
}

fn decide(lhs: &Interval, rhs: &Interval, r: usize, certified: bool) -> Verdict {
    if r == 1 {
        Verdict::Holds
    } else if lhs.hi() < rhs.lo() {
        Verdict::Violated
    } else if certified && lhs.lo() >= rhs.hi() {
        Verdict::Holds
    } else {
        Verdict::Inconclusive
    }
}

fn assemble(
    variant: Variant,
    inst: &Instance,
    lhs: Interval,
    components: Components,
    edges: Vec<(usize, usize)>,
    certificate: Option<VandermondeCertificate>,
    certified: bool,
) -> BoundReport {
    let rhs = components.product();
    let r = inst.r();
    let margin = Float::with_val_round(inst.precision(), lhs.lo() - rhs.hi(), Round::Down).0;
    BoundReport {
        variant,
        verdict: decide(&lhs, &rhs, r, certified),
        lhs,
        rhs,
        components,
        margin,
        degenerate: r == 1,
        precision: inst.precision(),
        edges,
        certificate,
        hints: None,
        sep: None,
    }
}

fn check_graph(inst: &Instance, g: &RootGraph) -> Result<()> {
    if g.vertex_count() != inst.r() {
        return Err(Error::InvalidGraph(format!(
            "graph has {} vertices, polynomial has {} distinct roots",
            g.vertex_count(),
            inst.r()
        )));
    }
    Ok(())
}

/// `prod_E |v_i - v_j|`.
pub fn edge_product(roots: &RootSet, edges: &[(usize, usize)]) -> Interval {
    edges
        .iter()
        .fold(Interval::one(roots.precision()), |acc, &(a, b)| acc.mul(&roots.distance(a, b)))
}

fn r_over_sqrt3(n: usize, prec: u32) -> Interval {
    Interval::from_i64(prec, n as i64).div(&Interval::from_i64(prec, 3).sqrt())
}

/// Components of the main bound with Mahler exponent `-num/2` and edge
/// count `edges`.
fn main_components(inst: &Instance, mahler_num: i32, edges: usize) -> Components {
    let prec = inst.precision();
    let (r, d) = (inst.r(), inst.d());
    Components {
        sdisc_sqrt: inst.invariants.sdisc_sqrt.clone(),
        mahler_power: inst.invariants.mahler.pow_ratio(-mahler_num, 2),
        edge_factor: r_over_sqrt3(r, prec).powi(-(edges as i32)),
        r_power: Interval::from_i64(prec, r as i64).pow_ratio(-(r as i32), 2),
        multiplicity_factor: Interval::from_i64(prec, 3).pow_ratio(-(multiplicity_exponent(d, r) as i32), 6),
    }
}

fn certificate_for(inst: &Instance, g: &RootGraph) -> Result<(Option<VandermondeCertificate>, bool)> {
    match reduce_vandermonde(&inst.roots, g) {
        Ok(c) => {
            let ok = c.identity_certified && c.hadamard_certified;
            Ok((Some(c), ok))
        }
        Err(Error::CertificateInconclusive { .. }) => Ok((None, false)),
        Err(e) => Err(e),
    }
}

fn with_certificate(variant: Variant, inst: &Instance, g: &RootGraph, components: Components) -> Result<BoundReport> {
    let (cert, ok) = certificate_for(inst, g)?;
    let lhs = edge_product(&inst.roots, g.edges());
    Ok(assemble(variant, inst, lhs, components, g.edges().to_vec(), cert, ok))
}

/// `|sDisc_{d-r}|^{1/2} M^{-(r-1)} (r/sqrt 3)^{-#E} r^{-r/2} 3^{-min(d, 2d-2r)/6}`.
pub fn bound_main(inst: &Instance, g: &RootGraph) -> Result<BoundReport> {
    check_graph(inst, g)?;
    let comps = main_components(inst, 2 * (inst.r() as i32 - 1), g.edge_count());
    with_certificate(Variant::Main, inst, g, comps)
}

/// The classical bound; needs a square-free polynomial and in-degrees at most 1.
pub fn bound_classical(inst: &Instance, g: &RootGraph) -> Result<BoundReport> {
    check_graph(inst, g)?;
    if inst.r() != inst.d() {
        return Err(Error::Precondition("Disc(P) vanishes: P is not square-free".into()));
    }
    let adm = check_classical_admissible(g);
    for (ok, n, what) in [
        (adm.cond1, 1, "an edge goes from a larger to a smaller modulus"),
        (adm.cond2, 2, "the graph has a directed cycle"),
        (adm.cond3, 3, "some vertex has in-degree greater than 1"),
    ] {
        if !ok {
            return Err(Error::Precondition(format!("condition {n} fails: {what}")));
        }
    }
    let prec = inst.precision();
    let d = inst.d();
    let comps = Components {
        sdisc_sqrt: inst.invariants.disc_abs.sqrt(),
        mahler_power: inst.invariants.mahler.powi(-(d as i32 - 1)),
        edge_factor: r_over_sqrt3(d, prec).powi(-(g.edge_count() as i32)),
        r_power: Interval::from_i64(prec, d as i64).pow_ratio(-(d as i32), 2),
        multiplicity_factor: Interval::one(prec),
    };
    with_certificate(Variant::Classical, inst, g, comps)
}

/// Monic polynomials: Mahler exponent `-(r - 1 - d~/2)`.
pub fn bound_remark_degree(inst: &Instance, g: &RootGraph) -> Result<BoundReport> {
    check_graph(inst, g)?;
    if !inst.poly.is_monic() {
        return Err(Error::Precondition("polynomial is not monic (leading coefficient must be exactly 1)".into()));
    }
    let dt = min_total_degree(g) as i32;
    let comps = main_components(inst, 2 * (inst.r() as i32 - 1) - dt, g.edge_count());
    with_certificate(Variant::RemarkDegree, inst, g, comps)
}

/// Edge factor `(r/sqrt 3)^{-#E + Delta_{#E+1} + ... + Delta_k}`.
pub fn bound_remark_pairs(inst: &Instance, g: &RootGraph, hints: &ClusterHint) -> Result<BoundReport> {
    check_graph(inst, g)?;
    let (r, e, k) = (inst.r(), g.edge_count(), hints.len());
    if r <= 2 {
        return Err(Error::Precondition(format!("needs r > 2, got r = {r}")));
    }
    if e >= k {
        return Err(Error::Precondition(format!("needs #E < k, got #E = {e}, k = {k}")));
    }
    let prec = inst.precision();
    let mut exact = Rational::from(-(e as i64));
    for p in &hints.pairs()[e..] {
        exact += Rational::from_f64(p.delta).expect("finite delta");
    }
    let lo = Float::with_val_round(prec, &exact, Round::Down).0;
    let hi = Float::with_val_round(prec, &exact, Round::Up).0;
    let base = r_over_sqrt3(r, prec);
    let mut comps = main_components(inst, 2 * (r as i32 - 1), e);
    comps.edge_factor = base.pow_real(&lo).hull(&base.pow_real(&hi));
    let mut rep = with_certificate(Variant::RemarkPairs, inst, g, comps)?;
    rep.hints = Some(hints.clone());
    Ok(rep)
}

/// Builds the nearest-neighbour multigraph on `subset` and splits it into
/// its support `E0` and the doubled edges `E1`.
pub fn sep_split(roots: &RootSet, subset: &[usize]) -> Result<SepSplit> {
    let r = roots.distinct_count();
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(Error::InvalidGraph(format!("root {} repeated in subset", w[0])));
        }
    }
    let mut counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut partners = Vec::with_capacity(sorted.len());
    for &v in &sorted {
        if v >= r {
            return Err(Error::IndexOutOfRange { index: v, len: r });
        }
        let (_, p) = roots.sep(v)?;
        partners.push(p);
        *counts.entry((v.min(p), v.max(p))).or_default() += 1;
    }
    let e0: Vec<_> = counts.keys().copied().collect();
    let e1: Vec<_> = counts.iter().filter(|(_, &c)| c == 2).map(|(e, _)| *e).collect();
    assert_eq!(e0.len() + e1.len(), sorted.len(), "each edge occurs at most twice");
    Ok(SepSplit { subset: sorted, partners, e0, e1 })
}

/// `prod_{v in V'} sep(P, v)` against the product of the two main bounds
/// for `E0` and `E1`.
pub fn bound_sep_product(inst: &Instance, subset: &[usize]) -> Result<BoundReport> {
    let r = inst.r();
    if r < 2 {
        return Err(Error::Precondition(format!("needs r >= 2 distinct roots, got r = {r}")));
    }
    let split = sep_split(&inst.roots, subset)?;
    let g0 = inst.graph(&split.e0)?;
    let g1 = inst.graph(&split.e1)?;
    let rep0 = bound_main(inst, &g0)?;
    let rep1 = bound_main(inst, &g1)?;
    let comps = rep0.components.mul(&rep1.components);
    let lhs = split
        .subset
        .iter()
        .map(|&v| inst.roots.sep(v).map(|s| s.0))
        .try_fold(Interval::one(inst.precision()), |acc, s| s.map(|s| acc.mul(&s)))?;
    let certified = rep0.certificate.is_some() && rep1.certificate.is_some();
    let mut rep = assemble(Variant::SepProduct, inst, lhs, comps, split.e0.clone(), rep0.certificate, certified);
    rep.sep = Some(split);
    Ok(rep)
}
