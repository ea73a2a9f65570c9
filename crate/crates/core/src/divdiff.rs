//! Divided differences on certified complex nodes.
//!
//! Three routes compute the same number: the recursive definition, the
//! explicit linear combination `sum_h f(v_h) / prod_{k != h} (v_h - v_k)`,
//! and, for monomials `z^p`, the complete homogeneous polynomial
//! `h_{p-n+1}(v_1, ..., v_n)` (zero when `n >= p + 2`).

use crate::arith::ComplexInterval;
use crate::error::{Error, Result};

/// Pairwise certifiably distinct nodes.
#[derive(Clone, Debug)]
pub struct NodeList {
    nodes: Vec<ComplexInterval>,
}

impl NodeList {
    pub fn new(nodes: Vec<ComplexInterval>) -> Result<Self> {
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                if nodes[i].sub(&nodes[j]).contains_zero() {
                    return Err(Error::DuplicateNodes { i, j });
                }
            }
        }
        Ok(Self { nodes })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[ComplexInterval] {
        &self.nodes
    }

    fn prec(&self) -> u32 {
        self.nodes.first().map_or(64, ComplexInterval::prec)
    }
}

fn check_len(values: usize, nodes: &NodeList) -> Result<()> {
    if values != nodes.len() || values == 0 {
        return Err(Error::LengthMismatch { values, nodes: nodes.len() });
    }
    Ok(())
}

/// `f[v_1] = f(v_1)`, `f[v_1..v_n] = (f[v_1..v_{n-1}] - f[v_2..v_n]) / (v_1 - v_n)`.
pub fn divdiff_recursive(values: &[ComplexInterval], nodes: &NodeList) -> Result<ComplexInterval> {
    check_len(values.len(), nodes)?;
    let v = nodes.nodes();
    let mut table = values.to_vec();
    for width in 1..v.len() {
        table = (0..table.len() - 1)
            .map(|i| table[i].sub(&table[i + 1]).div(&v[i].sub(&v[i + width])))
            .collect();
    }
    Ok(table.pop().unwrap())
}

/// `sum_h (prod_{k != h} 1 / (v_h - v_k)) f(v_h)`.
pub fn divdiff_explicit(values: &[ComplexInterval], nodes: &NodeList) -> Result<ComplexInterval> {
    check_len(values.len(), nodes)?;
    let v = nodes.nodes();
    let prec = nodes.prec();
    let mut acc = ComplexInterval::zero(prec);
    for (h, fh) in values.iter().enumerate() {
        let mut denom = ComplexInterval::one(prec);
        for (k, vk) in v.iter().enumerate() {
            if k != h {
                denom = denom.mul(&v[h].sub(vk));
            }
        }
        acc = acc.add(&fh.div(&denom));
    }
    Ok(acc)
}

/// Divided difference of `z^p`: the sum over compositions
/// `t_1 + ... + t_n = p - n + 1` of `prod v_j^{t_j}`, via the complete
/// homogeneous recurrence; exactly zero when `n >= p + 2`.
pub fn divdiff_monomial(p: usize, nodes: &NodeList) -> ComplexInterval {
    let prec = nodes.prec();
    let n = nodes.len();
    if n == 0 || n >= p + 2 {
        return ComplexInterval::zero(prec);
    }
    let top = p + 1 - n;
    let mut h = vec![ComplexInterval::zero(prec); top + 1];
    h[0] = ComplexInterval::one(prec);
    for v in nodes.nodes() {
        for k in 1..=top {
            h[k] = h[k].add(&v.mul(&h[k - 1]));
        }
    }
    h.pop().unwrap()
}

/// Componentwise divided difference of `F = (f_1, ..., f_m)`; `rows[i]` is `F(v_i)`.
pub fn divdiff_vector(rows: &[Vec<ComplexInterval>], nodes: &NodeList) -> Result<Vec<ComplexInterval>> {
    check_len(rows.len(), nodes)?;
    let m = rows[0].len();
    for (row, r) in rows.iter().enumerate() {
        if r.len() != m {
            return Err(Error::Ragged { row, got: r.len(), expected: m });
        }
    }
    (0..m)
        .map(|c| {
            let col: Vec<ComplexInterval> = rows.iter().map(|r| r[c].clone()).collect();
            divdiff_explicit(&col, nodes)
        })
        .collect()
}

/// `F[v_1..v_n]` for `F(z) = (1, z, ..., z^{width-1})` by the monomial route.
pub fn monomial_row(nodes: &NodeList, width: usize) -> Vec<ComplexInterval> {
    (0..width).map(|p| divdiff_monomial(p, nodes)).collect()
}

/// `(1, z, ..., z^{width-1})`.
pub fn power_row(z: &ComplexInterval, width: usize) -> Vec<ComplexInterval> {
    let mut out = Vec::with_capacity(width);
    let mut acc = ComplexInterval::one(z.prec());
    for _ in 0..width {
        out.push(acc.clone());
        acc = acc.mul(z);
    }
    out
}
