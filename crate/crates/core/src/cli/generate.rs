//! Seeded random instances for sweeps.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Rational;

use crate::dmbound::GraphInput;
use crate::graph::Preset;
use crate::poly::{ExactPoly, GaussRat};

#[derive(Clone, Debug, PartialEq)]
pub struct SweepParams {
    pub count: usize,
    pub seed: u64,
    pub max_degree: usize,
    pub max_multiplicity: u32,
    pub presets: Vec<Preset>,
    /// Place two simple roots at exactly this distance.
    pub force_cluster: Option<Rational>,
}

impl Default for SweepParams {
    fn default() -> Self {
        Self {
            count: 1000,
            seed: 0,
            max_degree: 12,
            max_multiplicity: 4,
            presets: Preset::ALL.to_vec(),
            force_cluster: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratedInstance {
    pub index: u64,
    pub lead: GaussRat,
    /// Distinct roots with multiplicities, in generation order.
    pub roots: Vec<(GaussRat, u32)>,
    pub poly: ExactPoly,
    pub preset: Preset,
    pub graph: GraphInput,
}

fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::from((rng.gen_range(-8..=8), rng.gen_range(1..=4)))
}

fn random_root<R: Rng>(rng: &mut R) -> GaussRat {
    let re = small_rational(rng);
    let im = if rng.gen_bool(0.5) { small_rational(rng) } else { Rational::new() };
    GaussRat::new(re, im)
}

fn random_lead<R: Rng>(rng: &mut R) -> GaussRat {
    let mag = Rational::from((rng.gen_range(1..=5), rng.gen_range(1..=3)));
    let mag = if rng.gen_bool(0.5) { -mag } else { mag };
    if rng.gen_bool(0.25) {
        GaussRat::new(Rational::new(), mag)
    } else {
        GaussRat::real(mag)
    }
}

/// Instance `index` of the stream fixed by `seed`:
/// `a_d prod (X - q_i)^{m_i}` with random Gaussian-rational `q_i`.
pub fn generate_instance(seed: u64, index: u64, params: &SweepParams) -> GeneratedInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let max_degree = params.max_degree.max(2);
    let max_mult = params.max_multiplicity.max(1);
    let degree = rng.gen_range(2..=max_degree);
    let mut roots: Vec<(GaussRat, u32)> = Vec::new();
    let mut remaining = degree;
    let fresh = |rng: &mut ChaCha8Rng, roots: &[(GaussRat, u32)]| loop {
        let q = random_root(rng);
        if roots.iter().all(|(p, _)| *p != q) {
            return q;
        }
    };
    if let Some(eps) = &params.force_cluster {
        let q = fresh(&mut rng, &roots);
        let shifted = GaussRat::new(Rational::from(&q.re + eps), q.im.clone());
        roots.push((q, 1));
        roots.push((shifted, 1));
        remaining -= 2;
    }
    while remaining > 0 {
        let m = rng.gen_range(1..=max_mult.min(remaining as u32));
        let q = loop {
            let q = fresh(&mut rng, &roots);
            let clash = params.force_cluster.is_some() && roots.iter().take(2).any(|(p, _)| {
                let d = (&q - p).norm_sqr();
                d < Rational::from((1, 4))
            });
            if !clash {
                break q;
            }
        };
        roots.push((q, m));
        remaining -= m as usize;
    }
    let lead = random_lead(&mut rng);
    let poly = ExactPoly::from_roots(&lead, &roots);
    let presets = if params.presets.is_empty() { Preset::ALL.to_vec() } else { params.presets.clone() };
    let preset = *presets.choose(&mut rng).expect("nonempty presets");
    let graph = GraphInput::Preset { preset, seed: rng.gen() };
    GeneratedInstance { index, lead, roots, poly, preset, graph }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;
    use crate::poly::Polynomial;

    #[test]
    fn deterministic() {
        let p = SweepParams::default();
        for i in 0..20 {
            let a = generate_instance(42, i, &p);
            let b = generate_instance(42, i, &p);
            assert_eq!(a, b);
            assert_eq!(a.poly.to_string(), b.poly.to_string());
        }
        assert_ne!(generate_instance(42, 0, &p).poly, generate_instance(43, 0, &p).poly);
    }

    #[test]
    fn respects_limits() {
        let p = SweepParams { max_degree: 7, max_multiplicity: 3, ..Default::default() };
        for i in 0..50 {
            let g = generate_instance(1, i, &p);
            let d = g.poly.degree().unwrap();
            assert!((2..=7).contains(&d));
            assert!(g.roots.iter().all(|&(_, m)| (1..=3).contains(&m)));
            assert_eq!(g.roots.iter().map(|r| r.1 as usize).sum::<usize>(), d);
        }
    }

    #[test]
    fn square_free_when_multiplicity_one() {
        let p = SweepParams { max_multiplicity: 1, ..Default::default() };
        for i in 0..30 {
            let g = generate_instance(9, i, &p);
            let sf = g.poly.square_free_decomposition().unwrap();
            assert!(sf.iter().all(|(_, m)| *m == 1));
        }
    }

    #[test]
    fn forced_cluster_distance() {
        let eps = Rational::from((1, 10000));
        let p = SweepParams { force_cluster: Some(eps.clone()), ..Default::default() };
        for i in 0..10 {
            let g = generate_instance(5, i, &p);
            let d = (&g.roots[1].0 - &g.roots[0].0).norm_sqr();
            assert_eq!(d, Rational::from(&eps * &eps));
        }
    }

    #[test]
    fn render_round_trip() {
        let p = SweepParams::default();
        for i in 0..100 {
            let g = generate_instance(7, i, &p);
            let back = parse_polynomial(&g.poly.to_string(), 128).unwrap();
            assert_eq!(back, Polynomial::Exact(g.poly.clone()));
        }
    }
}
