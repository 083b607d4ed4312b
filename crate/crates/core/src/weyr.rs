//! Weyr normal form over a splitting field.
//!
//! A basic Weyr matrix for the eigenvalue `a` and the partition `n_1 >= ... >= n_r` is the
//! blocked matrix with diagonal blocks `a I_{n_i}`, superdiagonal blocks `W_{i,i+1}` equal
//! to `I_{n_{i+1}}` stacked over a zero block, and zeros elsewhere. A Weyr matrix is a direct
//! sum of basic Weyr matrices with pairwise distinct eigenvalues.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{independent_subset, kernel};
use crate::matrix::Mat;
use crate::poly::{char_poly, splitting_field};
use crate::ring::{Embedding, Field, Fq, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeyrBlock {
    pub eigenvalue: Fq,
    pub partition: Vec<usize>,
}

impl WeyrBlock {
    pub fn size(&self) -> usize {
        self.partition.iter().sum()
    }
}

/// Eigenvalues in `field` with their Weyr partitions, in canonical block order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeyrStructure {
    pub field: Field,
    pub blocks: Vec<WeyrBlock>,
}

impl WeyrStructure {
    pub fn n(&self) -> usize {
        self.blocks.iter().map(WeyrBlock::size).sum()
    }

    /// `sum_i n_i^2` over all blocks: the dimension of the centraliser algebra.
    pub fn centralizer_dimension(&self) -> usize {
        self.blocks.iter().flat_map(|b| b.partition.iter()).map(|&k| k * k).sum()
    }

    /// The Weyr matrix with these blocks.
    pub fn matrix(&self) -> Mat<Fq> {
        let parts: Vec<Mat<Fq>> = self
            .blocks
            .iter()
            .map(|b| build_basic_weyr(&self.field, b.eigenvalue, &b.partition).expect("stored partitions are valid"))
            .collect();
        Mat::direct_sum(&self.field, &parts)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field.spec(),
            "blocks": self.blocks.iter().map(|b| json!({
                "eigenvalue": self.field.to_json(b.eigenvalue),
                "partition": b.partition,
            })).collect::<Vec<_>>(),
        })
    }
}

/// `g x g^-1 = w` over the splitting field `structure.field`.
#[derive(Clone, Debug)]
pub struct WeyrDecomposition {
    pub structure: WeyrStructure,
    pub embedding: Embedding,
    pub x: Mat<Fq>,
    pub w: Mat<Fq>,
    pub g: Mat<Fq>,
    pub g_inv: Mat<Fq>,
}

impl WeyrDecomposition {
    pub fn to_json(&self) -> Value {
        let k = &self.structure.field;
        let mut v = self.structure.to_json();
        v["g"] = self.g.to_json(k);
        v["W"] = self.w.to_json(k);
        v
    }
}

pub fn conjugate_partition(p: &[usize]) -> Vec<usize> {
    let max = p.first().copied().unwrap_or(0);
    (1..=max).map(|i| p.iter().filter(|&&x| x >= i).count()).collect()
}

pub fn is_partition(p: &[usize]) -> bool {
    p.iter().all(|&x| x > 0) && p.windows(2).all(|w| w[0] >= w[1])
}

/// All partitions of `m`, largest parts first, in reverse lexicographic order.
pub fn partitions(m: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, m, &mut Vec::new(), &mut out);
    out
}

pub fn build_basic_weyr<R: Ring>(ring: &R, eigenvalue: R::Elem, partition: &[usize]) -> Result<Mat<R::Elem>> {
    if !is_partition(partition) {
        return Err(Error::InvalidArgument(format!("{partition:?} is not a weakly decreasing partition")));
    }
    let n: usize = partition.iter().sum();
    let mut m = Mat::scalar(ring, n, eigenvalue);
    let mut off = 0;
    for w in partition.windows(2) {
        let (a, b) = (w[0], w[1]);
        for j in 0..b {
            m.set(off + j, off + a + j, ring.one());
        }
        off += a;
    }
    Ok(m)
}

/// The Weyr block data of `x` if `x` is a Weyr matrix.
pub fn read_weyr_form<R: Ring>(ring: &R, x: &Mat<R::Elem>) -> Option<Vec<(R::Elem, Vec<usize>)>> {
    let n = x.n();
    let mut runs = Vec::new();
    let mut start = 0;
    while start < n {
        let a = x.get(start, start);
        let mut end = start + 1;
        while end < n && x.get(end, end) == a {
            end += 1;
        }
        runs.push((start, end));
        start = end;
    }
    let mut blocks: Vec<(R::Elem, Vec<usize>)> = Vec::new();
    for &(s, e) in &runs {
        let a = x.get(s, s);
        if blocks.iter().any(|b| b.0 == a) {
            return None;
        }
        let sub = x.block(s, s, e - s);
        let p = partitions(e - s)
            .into_iter()
            .find(|p| build_basic_weyr(ring, a, p).is_ok_and(|w| w == sub))?;
        blocks.push((a, p));
    }
    let block_of = |i: usize| runs.iter().position(|&(s, e)| s <= i && i < e).expect("covered");
    for i in 0..n {
        for j in 0..n {
            if block_of(i) != block_of(j) && !ring.is_zero(x.get(i, j)) {
                return None;
            }
        }
    }
    Some(blocks)
}

pub fn is_weyr_form<R: Ring>(ring: &R, x: &Mat<R::Elem>) -> bool {
    read_weyr_form(ring, x).is_some()
}

/// Splitting field of the characteristic polynomial and the eigenvalues with algebraic
/// multiplicities, sorted in canonical order.
pub fn splitting_eigenvalues(field: &Field, x: &Mat<Fq>, max_field_size: u64) -> Result<(Field, Embedding, Vec<(Fq, usize)>)> {
    let (k, emb, mut roots) = splitting_field(field, &char_poly(field, x), max_field_size)?;
    roots.sort_by(|a, b| k.cmp_lex(a.0, b.0));
    Ok((k, emb, roots))
}

fn shifted_rows(k: &Field, x: &Mat<Fq>, lambda: Fq, power: usize) -> Mat<Fq> {
    let n = x.n();
    let nm = x.sub(k, &Mat::scalar(k, n, lambda));
    nm.pow(k, power as u64)
}

fn nullity(k: &Field, a: &Mat<Fq>) -> usize {
    kernel(k, &a.rows(), a.n()).len()
}

/// `n_i = nullity((x - a)^i) - nullity((x - a)^(i-1))`.
pub fn weyr_partition(k: &Field, x: &Mat<Fq>, lambda: Fq) -> Result<Vec<usize>> {
    let mut parts = Vec::new();
    let mut prev = 0;
    for i in 1..=x.n() {
        let null = nullity(k, &shifted_rows(k, x, lambda, i));
        if null == prev {
            break;
        }
        parts.push(null - prev);
        prev = null;
    }
    if parts.is_empty() {
        return Err(Error::InvalidArgument("not an eigenvalue".into()));
    }
    Ok(parts)
}

/// Jordan block sizes for `a`, from second differences of the ranks of `(x - a)^i`.
pub fn jordan_partition(k: &Field, x: &Mat<Fq>, lambda: Fq) -> Vec<usize> {
    let n = x.n();
    let ranks: Vec<usize> = (0..=n + 1).map(|i| n - nullity(k, &shifted_rows(k, x, lambda, i))).collect();
    let mut sizes = Vec::new();
    for s in (1..=n).rev() {
        let count = ranks[s - 1] + ranks[s + 1] - 2 * ranks[s];
        sizes.extend(std::iter::repeat_n(s, count));
    }
    sizes
}

fn mat_vec(k: &Field, a: &Mat<Fq>, v: &[Fq]) -> Vec<Fq> {
    (0..a.n())
        .map(|i| (0..a.n()).fold(Fq::ZERO, |acc, j| k.add(acc, k.mul(a.get(i, j), v[j]))))
        .collect()
}

/// Basis of the generalised eigenspace, grouped so that `x` acts by the basic Weyr matrix.
fn weyr_basis(k: &Field, x: &Mat<Fq>, lambda: Fq, mult: usize) -> Result<(Vec<Vec<Fq>>, Vec<usize>)> {
    let n = x.n();
    let nm = x.sub(k, &Mat::scalar(k, n, lambda));
    let mut kers: Vec<Vec<Vec<Fq>>> = vec![Vec::new()];
    let mut power = Mat::identity(k, n);
    while kers.last().unwrap().len() < mult {
        power = power.mul(k, &nm);
        let basis: Vec<Vec<Fq>> = kernel(k, &power.rows(), n).into_iter().map(|g| g.vector).collect();
        if basis.len() == kers.last().unwrap().len() {
            return Err(Error::Failed("generalised eigenspace did not stabilise".into()));
        }
        kers.push(basis);
    }
    let depth = kers.len() - 1;
    // chain tops (level, vector), found from the deepest level down
    let mut tops: Vec<(usize, Vec<Fq>)> = Vec::new();
    for s in (1..=depth).rev() {
        let mut span: Vec<Vec<Fq>> = kers[s - 1].clone();
        for (t, v) in &tops {
            let mut u = v.clone();
            for _ in 0..t - s {
                u = mat_vec(k, &nm, &u);
            }
            span.push(u);
        }
        for cand in &kers[s] {
            let mut trial = span.clone();
            trial.push(cand.clone());
            if independent_subset(k, &trial, n).len() == trial.len() {
                span.push(cand.clone());
                tops.push((s, cand.clone()));
            }
        }
    }
    let partition: Vec<usize> = (1..=depth).map(|i| tops.iter().filter(|(t, _)| *t >= i).count()).collect();
    let mut basis = Vec::with_capacity(mult);
    for i in 1..=depth {
        for (t, v) in tops.iter().filter(|(t, _)| *t >= i) {
            let mut u = v.clone();
            for _ in 0..t - i {
                u = mat_vec(k, &nm, &u);
            }
            basis.push(u);
        }
    }
    Ok((basis, partition))
}

/// Weyr form of `x` over the smallest extension containing its eigenvalues.
pub fn weyr_decompose(field: &Field, x: &Mat<Fq>, max_field_size: u64) -> Result<WeyrDecomposition> {
    let n = x.n();
    let (k, emb, eig) = splitting_eigenvalues(field, x, max_field_size)?;
    let xk = x.map(|a| emb.apply(a));
    let mut columns = Vec::with_capacity(n);
    let mut blocks = Vec::new();
    for &(lambda, mult) in &eig {
        let (basis, partition) = weyr_basis(&k, &xk, lambda, mult)?;
        columns.extend(basis);
        blocks.push(WeyrBlock { eigenvalue: lambda, partition });
    }
    let p = Mat::from_fn(n, |i, j| columns[j][i]);
    let g = p.inverse(&k)?;
    let w = xk.conjugate(&k, &g, &p);
    let structure = WeyrStructure { field: k.clone(), blocks };
    if w != structure.matrix() {
        return Err(Error::Discrepancy("conjugated matrix is not the expected Weyr matrix".into()));
    }
    Ok(WeyrDecomposition { structure, embedding: emb, x: xk, w, g, g_inv: p })
}

/// The 7x7 nilpotent basic Weyr matrix for the partition (3,2,2).
pub fn example_7x7(field: &Field) -> Mat<Fq> {
    build_basic_weyr(field, Fq::ZERO, &[3, 2, 2]).expect("valid partition")
}
