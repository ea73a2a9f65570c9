//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero on any failure.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Rational;

use rootsep::arith::ComplexInterval;
use rootsep::cli::{generate_instance, run_sweep, SweepParams};
use rootsep::divdiff::{divdiff_explicit, divdiff_monomial, divdiff_recursive, NodeList};
use rootsep::dmbound::{
    bound_classical, bound_main, bound_remark_degree, bound_remark_pairs, bound_sep_product, compositions,
    lemma_aux_check, multiplicity_product_bound, reduce_vandermonde, ClusterHint, GraphInput, HintPair, Instance,
    Variant, Verdict, VerifyOptions, IDENTITY_TOL,
};
use rootsep::graph::{preset_edges, Preset};
use rootsep::invariants::relative_gap;
use rootsep::poly::{parse_polynomial, ExactPoly, GaussRat, Polynomial};

type Outcome = Result<String, String>;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn instance(text: &str) -> Instance {
    Instance::new(parse_polynomial(text, 128).unwrap(), 128).unwrap()
}

fn resolve(inst: &Instance, g: &GraphInput) -> Vec<(usize, usize)> {
    match g {
        GraphInput::Edges(e) => e.clone(),
        GraphInput::Preset { preset, seed } => {
            preset_edges(*preset, &inst.roots, &mut ChaCha8Rng::seed_from_u64(*seed)).unwrap()
        }
    }
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let p = instance("x^2 - 1");
    let rep = bound_main(&p, &p.graph(&[(0, 1)]).unwrap()).map_err(|e| e.to_string())?;
    let (lhs, rhs) = (rep.lhs.to_f64(), rep.rhs.to_f64());
    ensure(rel(lhs, 2.0) <= 1e-12, || format!("X^2-1 LHS {lhs}"))?;
    ensure(rel(rhs, 3f64.sqrt() / 2.0) <= 1e-12, || format!("X^2-1 RHS {rhs}"))?;
    ensure(rep.verdict == Verdict::Holds, || "X^2-1 verdict".into())?;

    let q = instance("(x-1)^2*x");
    let rep = bound_main(&q, &q.graph(&[(0, 1)]).unwrap()).map_err(|e| e.to_string())?;
    let expect = 2f64.sqrt() * (3f64.sqrt() / 2.0) * 0.5 * 3f64.powf(-1.0 / 3.0);
    let got = rep.rhs.to_f64();
    ensure(rel(got, expect) <= 1e-9, || format!("(X-1)^2 X RHS {got} vs {expect}"))?;
    ensure(rep.verdict == Verdict::Holds, || "(X-1)^2 X verdict".into())?;
    let el = t.elapsed();
    ensure(el < Duration::from_secs(1), || format!("took {el:?}"))?;
    Ok(format!("LHS 2, RHS {rhs:.12}; RHS {got:.9} (expected {expect:.9}); {el:.2?}"))
}

fn sweep_params() -> SweepParams {
    SweepParams {
        count: 1000,
        seed: 42,
        max_degree: 12,
        max_multiplicity: 4,
        presets: Preset::ALL.to_vec(),
        force_cluster: None,
    }
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let opts = VerifyOptions { precision: 128, ceiling: 512, ..Default::default() };
    let out = run_sweep(&sweep_params(), Variant::Main, &opts);
    let s = &out.summary;
    let el = t.elapsed();
    let complete = out.records.iter().filter(|r| r.edges == r.distinct * (r.distinct - 1) / 2 && r.distinct > 2).count();
    let multiple = out.records.iter().filter(|r| r.distinct < r.degree).count();
    ensure(s.violations == 0, || format!("{} violations", s.violations))?;
    ensure(s.errors == 0, || format!("{} errors", s.errors))?;
    ensure(s.inconclusive_first * 100 <= s.count, || format!("{} inconclusive at 128 bits", s.inconclusive_first))?;
    ensure(s.unresolved == 0, || format!("{} unresolved at 512 bits", s.unresolved))?;
    ensure(s.holds == 1000, || format!("{} hold", s.holds))?;
    ensure(el < Duration::from_secs(300), || format!("took {el:?}"))?;
    Ok(format!(
        "{} instances: {} hold, {} inconclusive at 128 bits, 0 violations; {multiple} with repeated roots, {complete} complete graphs on r > 2; {el:.2?}",
        s.count, s.holds, s.inconclusive_first
    ))
}

fn criterion_3() -> Outcome {
    let params = sweep_params();
    let mut worst = 0f64;
    let mut checked = 0;
    for i in 0..params.count as u64 {
        let g = generate_instance(params.seed, i, &params);
        let inst = Instance::new(Polynomial::Exact(g.poly.clone()), 128).map_err(|e| format!("instance {i}: {e}"))?;
        let graph = inst.graph(&resolve(&inst, &g.graph)).unwrap();
        if inst.r() < 2 {
            continue;
        }
        let c = reduce_vandermonde(&inst.roots, &graph).map_err(|e| format!("instance {i}: {e}"))?;
        ensure(c.identity_certified, || format!("instance {i}: identity not certified"))?;
        ensure(c.relative_discrepancy <= IDENTITY_TOL, || {
            format!("instance {i}: discrepancy {:e}", c.relative_discrepancy)
        })?;
        ensure(c.hadamard_certified, || format!("instance {i}: Hadamard chain broken"))?;
        for (n, b) in c.row_norms.iter().zip(&c.row_bounds) {
            ensure(n.lo() <= b.hi(), || format!("instance {i}: row norm above bound"))?;
        }
        ensure(c.det_w1.abs().lo() <= c.hadamard.hi(), || format!("instance {i}: |det W1| above Hadamard"))?;
        worst = worst.max(c.relative_discrepancy);
        checked += 1;
    }
    Ok(format!("{checked} certificates at 128 bits, max relative discrepancy {worst:e}"))
}

fn criterion_4() -> Outcome {
    let params = SweepParams { max_degree: 12, max_multiplicity: 4, ..Default::default() };
    let mut worst = 0f64;
    for i in 0..200u64 {
        let mut g = generate_instance(4, i, &params);
        // force a repeated root
        if g.roots.iter().all(|r| r.1 == 1) {
            g.roots[0].1 = 2;
        }
        let poly = ExactPoly::from_roots(&g.lead, &g.roots);
        let inst = Instance::new(Polynomial::Exact(poly), 128).map_err(|e| format!("instance {i}: {e}"))?;
        let inv = &inst.invariants;
        ensure(inv.distinct < inv.degree, || format!("instance {i}: square-free"))?;
        ensure(inv.sdisc_abs.overlaps(&inv.sdisc_abs_roots), || {
            format!("instance {i}: {:e} vs {:e}", inv.sdisc_abs.to_f64(), inv.sdisc_abs_roots.to_f64())
        })?;
        worst = worst.max(relative_gap(&inv.sdisc_abs, &inv.sdisc_abs_roots));
    }
    Ok(format!("200 instances with repeated roots, enclosures overlap, max relative gap {worst:e}"))
}

fn criterion_5() -> Outcome {
    let prec = 128;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0f64;
    let mut sets = 0;
    let mut zero_cases = 0;
    while sets < 500 {
        let n = rng.gen_range(1..=8);
        let pts: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0))).collect();
        let Ok(nodes) = NodeList::new(pts.iter().map(|&(a, b)| ComplexInterval::from_f64(prec, a, b)).collect()) else {
            continue;
        };
        sets += 1;
        for p in 0..=10u32 {
            let vals: Vec<_> = nodes.nodes().iter().map(|v| v.powu(p)).collect();
            let a = divdiff_recursive(&vals, &nodes).unwrap();
            let b = divdiff_explicit(&vals, &nodes).unwrap();
            let c = divdiff_monomial(p as usize, &nodes);
            if n >= p as usize + 2 {
                zero_cases += 1;
                ensure(c.mid().abs().is_zero() && c.rad().is_zero(), || "monomial route not exactly zero".into())?;
                ensure(a.contains_zero() && b.contains_zero(), || format!("n = {n}, p = {p}: zero not enclosed"))?;
                continue;
            }
            let scale = c.abs().to_f64();
            for (name, x) in [("recursive", &a), ("explicit", &b)] {
                let gap = x.sub(&c).abs().to_f64() / scale;
                worst = worst.max(gap);
                ensure(gap <= 1e-12, || format!("{name} vs monomial: {gap:e} (n = {n}, p = {p})"))?;
            }
        }
    }
    Ok(format!("500 node sets x p = 0..10, max relative gap {worst:e}, {zero_cases} annihilated cases enclose 0"))
}

fn criterion_6() -> Outcome {
    let t = Instant::now();
    let mut pairs = 0;
    for r in 1..=100u32 {
        for d in 0..r {
            let c = lemma_aux_check(d, r).unwrap();
            ensure(c.holds(), || format!("aux chain fails at d = {d}, r = {r}"))?;
            pairs += 1;
        }
    }
    let mut comps = 0;
    for d in 1..=15 {
        for m in compositions(d) {
            ensure(multiplicity_product_bound(&m).holds(), || format!("multiplicity bound fails at {m:?}"))?;
            comps += 1;
        }
    }
    let el = t.elapsed();
    ensure(el < Duration::from_secs(30), || format!("took {el:?}"))?;
    Ok(format!("{pairs} (d, r) pairs and {comps} compositions, exact arithmetic; {el:.2?}"))
}

fn criterion_7() -> Outcome {
    let params = SweepParams { max_degree: 10, max_multiplicity: 1, ..Default::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0f64;
    for i in 0..100u64 {
        let g = generate_instance(7, i, &params);
        let inst = Instance::new(Polynomial::Exact(g.poly), 128).map_err(|e| format!("instance {i}: {e}"))?;
        let r = inst.r();
        // admissible: each vertex receives at most one edge
        let mut edges = Vec::new();
        for j in 1..r {
            if rng.gen_bool(0.7) {
                edges.push((rng.gen_range(0..j), j));
            }
        }
        let graph = inst.graph(&edges).unwrap();
        let a = bound_main(&inst, &graph).map_err(|e| e.to_string())?;
        let b = bound_classical(&inst, &graph).map_err(|e| format!("instance {i}: {e}"))?;
        let gap = rel(a.rhs.to_f64(), b.rhs.to_f64());
        worst = worst.max(gap);
        ensure(gap <= 1e-12, || format!("instance {i}: relative gap {gap:e}"))?;
    }
    Ok(format!("100 square-free instances, max relative RHS gap {worst:e}"))
}

fn pairs_fixture(eps: &Rational) -> ExactPoly {
    let e = GaussRat::real(eps.clone());
    let one = GaussRat::from_i64(1);
    let roots = vec![
        (-&e, 1),
        (e.clone(), 1),
        (one.clone(), 1),
        (&one + &e, 1),
        (GaussRat::from_i64(-2), 1),
    ];
    ExactPoly::from_roots(&one, &roots)
}

fn criterion_8() -> Outcome {
    let params = SweepParams { max_degree: 10, max_multiplicity: 3, ..Default::default() };
    let mut strict = 0;
    for i in 0..100u64 {
        let g = generate_instance(8, i, &params);
        let poly = ExactPoly::from_roots(&GaussRat::one(), &g.roots);
        let inst = Instance::new(Polynomial::Exact(poly), 128).map_err(|e| format!("instance {i}: {e}"))?;
        let graph = inst.graph(&resolve(&inst, &g.graph)).unwrap();
        let a = bound_main(&inst, &graph).map_err(|e| e.to_string())?;
        let b = bound_remark_degree(&inst, &graph).map_err(|e| format!("instance {i}: {e}"))?;
        ensure(b.rhs.hi() >= a.rhs.lo(), || format!("instance {i}: remark RHS below main RHS"))?;
        ensure(b.verdict == Verdict::Holds, || format!("instance {i}: remark verdict {:?}", b.verdict))?;
        if b.rhs.lo() > a.rhs.hi() {
            strict += 1;
        }
    }
    let mut lines = Vec::new();
    for k in [2u32, 4, 6] {
        let eps = Rational::from((1, 10u64.pow(k)));
        let inst = Instance::new(Polynomial::Exact(pairs_fixture(&eps)), 128).map_err(|e| e.to_string())?;
        let r = inst.r() as f64;
        let base = (3f64.sqrt() / r).ln();
        // canonical order: -eps, eps, 1, 1 + eps, -2
        let hint = |i: usize, j: usize| {
            let d = inst.roots.distance(i, j).hi().to_f64();
            HintPair { i, j, delta: 0.9 * (d.ln() / base - 1.0) }
        };
        let hints = ClusterHint::new(vec![hint(0, 1), hint(2, 3)], &inst.roots).map_err(|e| e.to_string())?;
        let graph = inst.graph(&[(0, 1)]).unwrap();
        let a = bound_main(&inst, &graph).map_err(|e| e.to_string())?;
        let b = bound_remark_pairs(&inst, &graph, &hints).map_err(|e| e.to_string())?;
        ensure(b.rhs.lo() >= a.rhs.hi(), || format!("eps = 1e-{k}: pairs RHS below main RHS"))?;
        ensure(b.verdict == Verdict::Holds, || format!("eps = 1e-{k}: verdict {:?}", b.verdict))?;
        lines.push(format!("1e-{k}: x{:.3e}", b.rhs.to_f64() / a.rhs.to_f64()));
    }
    Ok(format!(
        "100 monic instances ({strict} strictly improved); clustered RHS gain {}",
        lines.join(", ")
    ))
}

fn criterion_9() -> Outcome {
    let params = SweepParams { max_degree: 12, max_multiplicity: 4, ..Default::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut done = 0;
    let mut i = 0u64;
    while done < 200 {
        let g = generate_instance(9, i, &params);
        i += 1;
        let inst = Instance::new(Polynomial::Exact(g.poly), 128).map_err(|e| format!("instance {i}: {e}"))?;
        if inst.r() < 2 {
            continue;
        }
        let subset: Vec<usize> = (0..inst.r()).filter(|_| rng.gen_bool(0.6)).collect();
        let rep = bound_sep_product(&inst, &subset).map_err(|e| format!("instance {i}: {e}"))?;
        let split = rep.sep.as_ref().unwrap();
        ensure(split.e0.len() + split.e1.len() == subset.len(), || format!("instance {i}: split sizes"))?;
        ensure(rep.verdict == Verdict::Holds, || format!("instance {i}: verdict {:?}", rep.verdict))?;
        done += 1;
    }
    let p = instance("x^2 - 1");
    let rep = bound_sep_product(&p, &[0, 1]).map_err(|e| e.to_string())?;
    let (lhs, rhs) = (rep.lhs.to_f64(), rep.rhs.to_f64());
    ensure(rel(lhs, 4.0) <= 1e-12 && rel(rhs, 0.75) <= 1e-12, || format!("fixture LHS {lhs}, RHS {rhs}"))?;
    Ok(format!("200 instances hold with #E0 + #E1 = #V'; X^2-1 gives LHS {lhs} vs RHS {rhs}"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("worked examples", criterion_1),
        ("soundness sweep", criterion_2),
        ("certificate identity and Hadamard chain", criterion_3),
        ("two-route subdiscriminant", criterion_4),
        ("divided-difference routes", criterion_5),
        ("exhaustive lemma checks", criterion_6),
        ("specialization to the classical bound", criterion_7),
        ("improvement monotonicity", criterion_8),
        ("products of sep", criterion_9),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let res = std::panic::catch_unwind(f).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match res {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
