//! Simultaneous root finding with certified inclusion disks.
//!
//! Roots are approximated by Aberth iteration and then certified with the
//! Gerschgorin-type inclusion: for a monic `f` of degree `n` and distinct
//! approximations `z_i`, put `W_i = f(z_i) / prod_{j != i} (z_i - z_j)`.
//! Every zero of `f` lies in the union of the disks `|z - z_i| <= n |W_i|`,
//! and a union of `m` of these disks that is disjoint from the others holds
//! exactly `m` zeros. Pairwise disjoint disks therefore isolate one simple
//! root each.

use std::cmp::Ordering;

use rug::float::Round;
use rug::Float;

use crate::arith::{ComplexFloat, ComplexInterval, Interval};
use crate::error::{Error, Result};
use crate::poly::{ExactPoly, NumericPoly, Polynomial};

/// Number of automatic precision doublings after the first attempt.
pub const MAX_ESCALATIONS: u32 = 4;

/// One distinct root with its certified enclosure and multiplicity.
#[derive(Clone, Debug)]
pub struct RootEntry {
    /// Center of the inclusion disk.
    pub center: ComplexFloat,
    /// Radius of the inclusion disk (rounded up).
    pub radius: Float,
    /// Box enclosing the disk; used for all derived arithmetic.
    pub value: ComplexInterval,
    pub multiplicity: u32,
}

impl RootEntry {
    fn new(center: ComplexFloat, radius: Float, multiplicity: u32) -> Self {
        let value = ComplexInterval::ball(&center, &radius);
        Self { center, radius, value, multiplicity }
    }

    fn exact(value: ComplexInterval, multiplicity: u32) -> Self {
        Self {
            center: value.mid(),
            radius: value.rad(),
            value,
            multiplicity,
        }
    }

    pub fn modulus(&self) -> Interval {
        self.value.abs()
    }
}

/// Distinct roots of a polynomial in canonical order.
///
/// Canonical order is nondecreasing by modulus, then real part, then
/// imaginary part. Values whose enclosures overlap in a key are treated as
/// tied on that key, so the order does not depend on rounding noise.
#[derive(Clone, Debug)]
pub struct RootSet {
    entries: Vec<RootEntry>,
    leading: ComplexInterval,
    leading_abs: Interval,
    total_degree: usize,
    precision: u32,
}

impl RootSet {
    /// Assembles a root set, checking multiplicities and certified
    /// distinctness, and puts the entries in canonical order.
    pub fn from_entries(
        entries: Vec<RootEntry>,
        leading: ComplexInterval,
        leading_abs: Interval,
        precision: u32,
    ) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::DegreeTooSmall { min: 1, got: "0".into() });
        }
        let entries = canonical_order(entries);
        for i in 0..entries.len() {
            for j in i + 1..entries.len() {
                if !disjoint(&entries[i], &entries[j]) {
                    return Err(Error::IndistinguishableRoots { precision, cluster: vec![i, j] });
                }
            }
        }
        let total_degree = entries.iter().map(|e| e.multiplicity as usize).sum();
        Ok(Self { entries, leading, leading_abs, total_degree, precision })
    }

    pub fn entries(&self) -> &[RootEntry] {
        &self.entries
    }

    pub fn value(&self, j: usize) -> &ComplexInterval {
        &self.entries[j].value
    }

    pub fn multiplicity(&self, j: usize) -> u32 {
        self.entries[j].multiplicity
    }

    pub fn multiplicities(&self) -> Vec<u32> {
        self.entries.iter().map(|e| e.multiplicity).collect()
    }

    /// `r`, the number of distinct roots.
    pub fn distinct_count(&self) -> usize {
        self.entries.len()
    }

    /// `d`, the degree.
    pub fn total_degree(&self) -> usize {
        self.total_degree
    }

    pub fn leading(&self) -> &ComplexInterval {
        &self.leading
    }

    pub fn leading_abs(&self) -> &Interval {
        &self.leading_abs
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// `|v_i - v_j|`.
    pub fn distance(&self, i: usize, j: usize) -> Interval {
        self.entries[i].value.sub(&self.entries[j].value).abs()
    }

    /// Distance from root `j` to its closest different root, together with
    /// the partner realizing it. Partners whose distance cannot be separated
    /// from the minimum are tied; the smallest canonical index wins.
    pub fn sep(&self, j: usize) -> Result<(Interval, usize)> {
        let r = self.entries.len();
        if j >= r {
            return Err(Error::IndexOutOfRange { index: j, len: r });
        }
        if r == 1 {
            return Err(Error::NoDifferentRoot { index: j });
        }
        let dists: Vec<(usize, Interval)> = (0..r).filter(|&i| i != j).map(|i| (i, self.distance(i, j))).collect();
        let min_hi = dists.iter().map(|(_, d)| d.hi().clone()).reduce(|a, b| if b < a { b } else { a }).unwrap();
        let min_lo = dists.iter().map(|(_, d)| d.lo().clone()).reduce(|a, b| if b < a { b } else { a }).unwrap();
        let partner = dists.iter().find(|(_, d)| *d.lo() <= min_hi).map(|(i, _)| *i).unwrap();
        Ok((Interval::new(min_lo, min_hi), partner))
    }

    /// The smallest pairwise distance `omega_1`; `None` when `r = 1`.
    pub fn min_distance(&self) -> Option<Interval> {
        let r = self.entries.len();
        let mut best: Option<Interval> = None;
        for i in 0..r {
            for j in i + 1..r {
                let d = self.distance(i, j);
                best = Some(match best {
                    None => d,
                    Some(b) => {
                        let lo = if d.lo() < b.lo() { d.lo().clone() } else { b.lo().clone() };
                        let hi = if d.hi() < b.hi() { d.hi().clone() } else { b.hi().clone() };
                        Interval::new(lo, hi)
                    }
                });
            }
        }
        best
    }
}

fn disjoint(a: &RootEntry, b: &RootEntry) -> bool {
    let d = a.value.sub(&b.value).abs();
    let prec = d.prec();
    let rsum = Float::with_val_round(prec, &a.radius + &b.radius, Round::Up).0;
    // the boxes may be slightly larger than the disks; compare against both
    *d.lo() > rsum || !a.value.re.overlaps(&b.value.re) || !a.value.im.overlaps(&b.value.im)
}

fn cmp_float(a: &Float, b: &Float) -> Ordering {
    a.partial_cmp(b).unwrap_or(Ordering::Equal)
}

/// Splits a sequence (already sorted by `key`'s midpoint) into runs whose
/// key intervals overlap transitively.
fn tie_groups<F: Fn(&RootEntry) -> Interval>(items: Vec<RootEntry>, key: F) -> Vec<Vec<RootEntry>> {
    let mut groups: Vec<Vec<RootEntry>> = Vec::new();
    let mut reach: Option<Float> = None;
    for e in items {
        let k = key(&e);
        let joins = reach.as_ref().is_some_and(|h| k.lo() <= h);
        if joins {
            let h = reach.take().unwrap();
            reach = Some(if k.hi() > &h { k.hi().clone() } else { h });
            groups.last_mut().unwrap().push(e);
        } else {
            reach = Some(k.hi().clone());
            groups.push(vec![e]);
        }
    }
    groups
}

fn sort_by_mid<F: Fn(&RootEntry) -> Interval>(items: &mut [RootEntry], key: F) {
    items.sort_by(|a, b| {
        cmp_float(&key(a).mid(), &key(b).mid())
            .then_with(|| cmp_float(&a.center.re, &b.center.re))
            .then_with(|| cmp_float(&a.center.im, &b.center.im))
    });
}

/// Canonical order: (modulus, real part, imaginary part), ties by overlap.
pub fn canonical_order(mut entries: Vec<RootEntry>) -> Vec<RootEntry> {
    sort_by_mid(&mut entries, RootEntry::modulus);
    let mut out = Vec::with_capacity(entries.len());
    for group in tie_groups(entries, RootEntry::modulus) {
        let mut group = group;
        sort_by_mid(&mut group, |e| e.value.re.clone());
        for sub in tie_groups(group, |e| e.value.re.clone()) {
            let mut sub = sub;
            sort_by_mid(&mut sub, |e| e.value.im.clone());
            out.extend(sub);
        }
    }
    out
}

/// Aberth iteration on a polynomial given by its coefficients (lowest
/// degree first, nonzero leading coefficient). Returns `n` approximations.
pub fn aberth(coeffs: &[ComplexFloat], prec: u32, max_iter: usize) -> Vec<ComplexFloat> {
    let n = coeffs.len() - 1;
    let coeffs: Vec<ComplexFloat> = coeffs.iter().map(|c| c.with_prec(prec)).collect();
    let dcoeffs: Vec<ComplexFloat> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.scale_f(&Float::with_val(prec, k)))
        .collect();
    let horner = |cs: &[ComplexFloat], z: &ComplexFloat| {
        cs.iter().rev().fold(ComplexFloat::zero(prec), |acc, c| acc.mul(z).add(c))
    };

    // Fujiwara-style radius for the starting circle.
    let lead_ln = coeffs[n].abs().ln().to_f64();
    let mut radius: f64 = 0.0;
    for (k, c) in coeffs.iter().enumerate().take(n) {
        let a = c.abs();
        if a.is_zero() {
            continue;
        }
        let r = ((a.ln().to_f64() - lead_ln) / (n - k) as f64).exp();
        radius = radius.max(r);
    }
    if !(radius.is_finite() && radius > 0.0) {
        radius = 1.0;
    }
    let mut z: Vec<ComplexFloat> = (0..n)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / n as f64 + 0.7;
            ComplexFloat::from_f64(prec, radius * t.cos(), radius * t.sin())
        })
        .collect();

    let tol = Float::with_val(prec, Float::u_exp(1, 8 - prec as i32));
    let mut settled = 0;
    for _ in 0..max_iter {
        let mut worst = Float::new(prec);
        for i in 0..n {
            let p = horner(&coeffs, &z[i]);
            if p.re.is_zero() && p.im.is_zero() {
                continue;
            }
            let dp = horner(&dcoeffs, &z[i]);
            let ratio = p.div(&dp);
            let mut s = ComplexFloat::zero(prec);
            for j in 0..n {
                if j != i {
                    s = s.add(&z[i].sub(&z[j]).recip());
                }
            }
            let one = ComplexFloat::from_f64(prec, 1.0, 0.0);
            let w = ratio.div(&one.sub(&ratio.mul(&s)));
            if !w.is_finite() {
                // collision or vanishing derivative: nudge and retry
                let nudge = Float::with_val(prec, Float::u_exp(1, -20)) * (i as u32 + 1);
                z[i] = z[i].add(&ComplexFloat::new(nudge.clone(), nudge));
                worst = Float::with_val(prec, 1);
                continue;
            }
            z[i] = z[i].sub(&w);
            let scale = {
                let a = z[i].abs();
                if a > 1 {
                    a
                } else {
                    Float::with_val(prec, 1)
                }
            };
            let rel = w.abs() / scale;
            if rel > worst {
                worst = rel;
            }
        }
        if worst <= tol {
            settled += 1;
            if settled >= 2 {
                break;
            }
        }
    }
    z
}

/// Inclusion radii `n |W_i|` for approximations `z` of the zeros of a
/// polynomial evaluated through `eval` with leading coefficient `lead`.
fn inclusion_radii(
    z: &[ComplexFloat],
    lead: &ComplexInterval,
    eval: impl Fn(&ComplexInterval) -> ComplexInterval,
) -> Vec<Float> {
    let n = z.len();
    let prec = lead.prec();
    let pts: Vec<ComplexInterval> = z.iter().map(ComplexInterval::point).collect();
    (0..n)
        .map(|i| {
            let mut denom = lead.clone();
            for j in 0..n {
                if j != i {
                    denom = denom.mul(&pts[i].sub(&pts[j]));
                }
            }
            let w = eval(&pts[i]).div(&denom).abs();
            Float::with_val_round(prec, w.hi() * n as u32, Round::Up).0
        })
        .collect()
}

fn disks_disjoint(za: &ComplexFloat, ra: &Float, zb: &ComplexFloat, rb: &Float) -> bool {
    let prec = za.prec();
    let d = ComplexInterval::point(za).sub(&ComplexInterval::point(zb)).abs();
    let s = Float::with_val_round(prec, ra + rb, Round::Up).0;
    *d.lo() > s
}

/// Roots of a monic square-free factor, each certified to radius
/// `<= 2^{-prec/2} max(1, |root|)`.
fn solve_square_free(f: &ExactPoly, multiplicity: u32, prec: u32, offset: usize) -> Result<Vec<RootEntry>> {
    let n = f.degree().expect("nonzero factor");
    if n == 1 {
        let root = -&f.coeffs()[0];
        return Ok(vec![RootEntry::exact(root.to_interval(prec), multiplicity)]);
    }
    let coeffs: Vec<ComplexFloat> = f.coeffs().iter().map(|c| c.to_complex_float(prec)).collect();
    let z = aberth(&coeffs, prec, 200 + 40 * n);
    let lead = f.leading().unwrap().to_interval(prec);
    let radii = inclusion_radii(&z, &lead, |x| f.eval_interval(x));
    let target_exp = -((prec / 2) as i32);
    for i in 0..n {
        let scale = {
            let a = z[i].abs();
            if a > 1 {
                a
            } else {
                Float::with_val(prec, 1)
            }
        };
        let target = Float::with_val(prec, Float::u_exp(1, target_exp)) * scale;
        if !(radii[i].is_finite() && radii[i] <= target) {
            return Err(Error::IndistinguishableRoots { precision: prec, cluster: vec![offset + i] });
        }
        for j in 0..i {
            if !disks_disjoint(&z[i], &radii[i], &z[j], &radii[j]) {
                return Err(Error::IndistinguishableRoots { precision: prec, cluster: vec![offset + j, offset + i] });
            }
        }
    }
    Ok(z.into_iter().zip(radii).map(|(c, r)| RootEntry::new(c, r, multiplicity)).collect())
}

fn find_roots_exact_at(p: &ExactPoly, prec: u32) -> Result<RootSet> {
    let factors = p.square_free_decomposition()?;
    let mut entries = Vec::new();
    for (f, m) in &factors {
        let found = solve_square_free(f, *m, prec, entries.len())?;
        entries.extend(found);
    }
    let lc = p.leading().unwrap();
    RootSet::from_entries(entries, lc.to_interval(prec), lc.abs_interval(prec), prec)
}

/// Default numeric clustering tolerance `2^{-p/4} (1 + max |coefficient|)`.
pub fn cluster_tolerance(p: &NumericPoly, prec: u32) -> Float {
    let base = Float::with_val(prec, Float::u_exp(1, -((prec / 4) as i32)));
    base * (p.max_coeff_abs() + 1u32)
}

fn find_roots_numeric_at(p: &NumericPoly, prec: u32) -> Result<RootSet> {
    let n = p.degree();
    if n == 0 {
        return Err(Error::DegreeTooSmall { min: 1, got: "0".into() });
    }
    let p = p.with_prec(prec);
    let z = aberth(p.coeffs(), prec, 400 + 200 * n);
    let lead = ComplexInterval::point(p.leading());
    let radii = inclusion_radii(&z, &lead, |x| p.eval_interval(x));
    let tau = cluster_tolerance(&p, prec);

    // single linkage: close centers or overlapping inclusion disks
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in 0..i {
            let close = z[i].sub(&z[j]).abs() <= tau;
            if close || !radii[i].is_finite() || !disks_disjoint(&z[i], &radii[i], &z[j], &radii[j]) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let root = find(&mut parent, i);
        if slot[root] == usize::MAX {
            slot[root] = clusters.len();
            clusters.push(Vec::new());
        }
        clusters[slot[root]].push(i);
    }

    let mut entries = Vec::new();
    for members in &clusters {
        let m = members.len() as u32;
        let mut center = ComplexFloat::zero(prec);
        for &i in members {
            center = center.add(&z[i]);
        }
        let inv = Float::with_val(prec, 1) / m;
        center = center.scale_f(&inv);
        let mut rad = Float::new(prec);
        for &i in members {
            let d = ComplexInterval::point(&z[i]).sub(&ComplexInterval::point(&center)).abs();
            let reach = Float::with_val_round(prec, d.hi() + &radii[i], Round::Up).0;
            if reach > rad {
                rad = reach;
            }
        }
        if !rad.is_finite() {
            return Err(Error::IndistinguishableRoots { precision: prec, cluster: members.clone() });
        }
        entries.push((RootEntry::new(center, rad, m), members.clone()));
    }
    for a in 0..entries.len() {
        for b in 0..a {
            let (ea, ma) = &entries[a];
            let (eb, mb) = &entries[b];
            if !disks_disjoint(&ea.center, &ea.radius, &eb.center, &eb.radius) {
                let mut cluster = ma.clone();
                cluster.extend(mb);
                return Err(Error::IndistinguishableRoots { precision: prec, cluster });
            }
        }
    }
    let leading = lead;
    let leading_abs = leading.abs();
    RootSet::from_entries(entries.into_iter().map(|(e, _)| e).collect(), leading, leading_abs, prec)
}

/// Finds and certifies all distinct roots with multiplicities, retrying at
/// doubled precision up to [`MAX_ESCALATIONS`] times.
pub fn find_roots(poly: &Polynomial, prec: u32) -> Result<RootSet> {
    match poly.degree() {
        None | Some(0) => {
            return Err(Error::DegreeTooSmall {
                min: 1,
                got: poly.degree().map_or("zero".into(), |d| d.to_string()),
            })
        }
        _ => {}
    }
    let mut p = prec;
    let mut last = None;
    for _ in 0..=MAX_ESCALATIONS {
        let attempt = match poly {
            Polynomial::Exact(e) => find_roots_exact_at(e, p),
            Polynomial::Numeric(n) => find_roots_numeric_at(n, p),
        };
        match attempt {
            Ok(set) => return Ok(set),
            Err(e @ Error::IndistinguishableRoots { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
        p *= 2;
    }
    Err(last.unwrap())
}
