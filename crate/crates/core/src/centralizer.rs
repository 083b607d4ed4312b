//! Centraliser algebras and groups, the structure of Weyr centralisers, and the lifting
//! checks for `C_{S_2}(s(x)) -> C_S(x)` and for the groups `X_lambda`.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{check_budget, Error, Result};
use crate::linalg::{kernel, KernelGen};
use crate::matrix::{lift_teichmuller, reduce_mat, Mat};
use crate::ring::{Field, Fq, LocalRing, Ring, RingKind};
use crate::weyr::{build_basic_weyr, conjugate_partition, is_partition, partitions, WeyrBlock};

/// `{y : xy = yx}` as a direct sum of cyclic modules.
#[derive(Clone, Debug)]
pub struct CentralizerAlgebra<E> {
    pub n: usize,
    pub gens: Vec<KernelGen<E>>,
}

impl<E: Copy + Eq> CentralizerAlgebra<E> {
    /// Generator matrices.
    pub fn basis(&self) -> Vec<Mat<E>> {
        self.gens.iter().map(|g| Mat::from_vec(self.n, g.vector.clone()).expect("n*n entries")).collect()
    }

    /// Number of generators; over a field this is the dimension.
    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    /// `log_q` of the number of elements.
    pub fn log_size(&self) -> u32 {
        self.gens.iter().map(|g| g.order).sum()
    }
}

/// Matrix of `g |-> y g - g x` in the row-major coordinates of `g`.
pub fn intertwiner_system<R: Ring>(ring: &R, x: &Mat<R::Elem>, y: &Mat<R::Elem>) -> Vec<Vec<R::Elem>> {
    let n = x.n();
    let mut rows = vec![vec![ring.zero(); n * n]; n * n];
    for a in 0..n {
        for b in 0..n {
            let row = &mut rows[a * n + b];
            // (yg)_ab = sum_c y_ac g_cb, (gx)_ab = sum_c g_ac x_cb
            for c in 0..n {
                row[c * n + b] = ring.add(row[c * n + b], y.get(a, c));
                row[a * n + c] = ring.sub(row[a * n + c], x.get(c, b));
            }
        }
    }
    rows
}

/// Matrix of `g |-> xg - gx`.
pub fn commutator_system<R: Ring>(ring: &R, x: &Mat<R::Elem>) -> Vec<Vec<R::Elem>> {
    intertwiner_system(ring, x, x)
}

pub fn centralizer_basis<R: Ring>(ring: &R, x: &Mat<R::Elem>) -> CentralizerAlgebra<R::Elem> {
    intertwiner_basis(ring, x, x)
}

/// `{g : y g = g x}`.
pub fn intertwiner_basis<R: Ring>(ring: &R, x: &Mat<R::Elem>, y: &Mat<R::Elem>) -> CentralizerAlgebra<R::Elem> {
    let n = x.n();
    CentralizerAlgebra { n, gens: kernel(ring, &intertwiner_system(ring, x, y), n * n) }
}

/// Block-diagonal and nilpotent summands of the centraliser of a basic Weyr matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeyrCentralizerPattern {
    /// Pairs `(d, e)`: a factor `M_d` embedded with multiplicity `e`, largest `e` first.
    pub lambda: Vec<(usize, usize)>,
    /// Representative position (least in row-major order) of each summand of `N`.
    pub offdiag_positions: Vec<(usize, usize)>,
    /// All positions of each summand of `N`.
    #[serde(skip)]
    pub offdiag_classes: Vec<Vec<(usize, usize)>>,
    /// Position classes of the block-diagonal part, grouped by factor.
    #[serde(skip)]
    pub semisimple_classes: Vec<Vec<Vec<(usize, usize)>>>,
}

impl WeyrCentralizerPattern {
    pub fn dimension(&self) -> usize {
        self.lambda.iter().map(|&(d, _)| d * d).sum::<usize>() + self.offdiag_classes.len()
    }
}

struct Dsu {
    parent: Vec<usize>,
    zero: Vec<bool>,
}

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu { parent: (0..n).collect(), zero: vec![false; n] }
    }
    fn find(&mut self, a: usize) -> usize {
        let mut r = a;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = a;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[rb] = ra;
            self.zero[ra] |= self.zero[rb];
        }
    }
    fn kill(&mut self, a: usize) {
        let r = self.find(a);
        self.zero[r] = true;
    }
}

/// Classes of positions `(i, j)` on which every matrix commuting with the nilpotent basic
/// Weyr matrix of `partition` is constant; positions forced to zero are dropped.
///
/// The nilpotent part has at most one 1 in each row and column, so each commutation
/// equation reads `y_u = y_v` or `y_u = 0`.
pub fn position_classes(partition: &[usize]) -> Result<Vec<Vec<(usize, usize)>>> {
    let f2 = Field::prime(2)?;
    let w = build_basic_weyr(&f2, Fq::ZERO, partition)?;
    let n = w.n();
    let right: Vec<Option<usize>> = (0..n).map(|a| (0..n).find(|&c| w.get(a, c) == Fq::ONE)).collect();
    let up: Vec<Option<usize>> = (0..n).map(|b| (0..n).find(|&c| w.get(c, b) == Fq::ONE)).collect();
    let mut dsu = Dsu::new(n * n);
    for a in 0..n {
        for b in 0..n {
            // (Ny)_ab = y_{right(a), b}; (yN)_ab = y_{a, up(b)}
            let l = right[a].map(|c| c * n + b);
            let r = up[b].map(|c| a * n + c);
            match (l, r) {
                (Some(u), Some(v)) => dsu.union(u, v),
                (Some(u), None) | (None, Some(u)) => dsu.kill(u),
                (None, None) => {}
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for pos in 0..n * n {
        let r = dsu.find(pos);
        if !dsu.zero[r] {
            classes.entry(r).or_default().push((pos / n, pos % n));
        }
    }
    let mut out: Vec<Vec<(usize, usize)>> = classes.into_values().collect();
    out.sort();
    Ok(out)
}

/// The centraliser pattern of a single basic Weyr block, derived from the solved
/// commutation system and checked against the rule read off the conjugate partition.
pub fn weyr_pattern(blocks: &[WeyrBlock]) -> Result<WeyrCentralizerPattern> {
    let [block] = blocks else {
        return Err(Error::InvalidArgument(format!(
            "pattern needs a single basic Weyr block, got {}",
            blocks.len()
        )));
    };
    let pattern = solve_pattern(&block.partition)?;
    let rule = pattern_rule(&block.partition);
    if pattern.lambda != rule {
        return Err(Error::Discrepancy(format!(
            "centraliser pattern {:?} differs from the conjugate-partition rule {:?}",
            pattern.lambda, rule
        )));
    }
    Ok(pattern)
}

/// `(d, e)` pairs from the conjugate partition: `e` runs over its distinct part values and
/// `d` is the multiplicity of `e`.
pub fn pattern_rule(partition: &[usize]) -> Vec<(usize, usize)> {
    let conj = conjugate_partition(partition);
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for e in conj {
        *counts.entry(e).or_default() += 1;
    }
    counts.into_iter().rev().map(|(e, d)| (d, e)).collect()
}

fn solve_pattern(partition: &[usize]) -> Result<WeyrCentralizerPattern> {
    let classes = position_classes(partition)?;
    let as_sets: Vec<BTreeSet<(usize, usize)>> = classes.iter().map(|c| c.iter().copied().collect()).collect();
    let index: HashSet<&BTreeSet<(usize, usize)>> = as_sets.iter().collect();
    let semisimple: Vec<bool> = as_sets
        .iter()
        .map(|c| {
            let t: BTreeSet<(usize, usize)> = c.iter().map(|&(i, j)| (j, i)).collect();
            index.contains(&t)
        })
        .collect();
    let class_of_diag = |i: usize| as_sets.iter().position(|c| c.contains(&(i, i)));
    let diag: Vec<usize> = (0..as_sets.len()).filter(|&c| as_sets[c].iter().any(|&(i, j)| i == j)).collect();
    // connect diagonal classes through semisimple off-diagonal classes
    let mut dsu = Dsu::new(as_sets.len());
    for (c, set) in as_sets.iter().enumerate() {
        if !semisimple[c] {
            continue;
        }
        for &(i, j) in set {
            let (Some(a), Some(b)) = (class_of_diag(i), class_of_diag(j)) else {
                return Err(Error::Discrepancy(format!("semisimple position ({i},{j}) off the diagonal classes")));
            };
            dsu.union(a, b);
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &c in &diag {
        groups.entry(dsu.find(c)).or_default().push(c);
    }
    let mut factors: Vec<(usize, usize, Vec<Vec<(usize, usize)>>)> = Vec::new();
    for members in groups.values() {
        let e = as_sets[members[0]].len();
        if members.iter().any(|&c| as_sets[c].len() != e) {
            return Err(Error::Discrepancy("diagonal classes of one factor differ in size".into()));
        }
        let root = dsu.find(members[0]);
        let mut cls: Vec<Vec<(usize, usize)>> = Vec::new();
        for (c, set) in as_sets.iter().enumerate() {
            let &(i, _) = set.iter().next().expect("nonempty");
            if semisimple[c] && dsu.find(class_of_diag(i).expect("checked above")) == root {
                cls.push(classes[c].clone());
            }
        }
        let d = members.len();
        if cls.len() != d * d {
            return Err(Error::Discrepancy(format!("factor with {d} diagonal classes has {} classes", cls.len())));
        }
        factors.push((d, e, cls));
    }
    factors.sort_by(|a, b| b.1.cmp(&a.1).then(b.0.cmp(&a.0)));
    let offdiag_classes: Vec<Vec<(usize, usize)>> =
        classes.iter().zip(&semisimple).filter(|(_, &s)| !s).map(|(c, _)| c.clone()).collect();
    Ok(WeyrCentralizerPattern {
        lambda: factors.iter().map(|f| (f.0, f.1)).collect(),
        offdiag_positions: offdiag_classes.iter().map(|c| c[0]).collect(),
        offdiag_classes,
        semisimple_classes: factors.into_iter().map(|f| f.2).collect(),
    })
}

/// 0/1 indicator matrix of a set of positions in any ring.
pub fn indicator<R: Ring>(ring: &R, n: usize, positions: &[(usize, usize)]) -> Mat<R::Elem> {
    let mut m = Mat::zero(ring, n);
    for &(i, j) in positions {
        m.set(i, j, ring.one());
    }
    m
}

/// Elements of the centraliser algebra split as residue representatives and the kernel of
/// reduction: every element is `r + k` for exactly one pair.
struct Decomposition<E> {
    residue: Vec<Mat<E>>,
    kernel: Vec<Mat<E>>,
}

fn combos<R: Ring>(ring: &R, n: usize, terms: &[(Mat<R::Elem>, Vec<R::Elem>)]) -> Vec<Mat<R::Elem>> {
    let mut out = vec![Mat::zero(ring, n)];
    for (g, coeffs) in terms {
        let mut next = Vec::with_capacity(out.len() * coeffs.len());
        for m in &out {
            for &c in coeffs {
                next.push(if ring.is_zero(c) { m.clone() } else { m.add(ring, &g.scale(ring, c)) });
            }
        }
        out = next;
    }
    out
}

fn decompose<R: Ring>(ring: &R, alg: &CentralizerAlgebra<R::Elem>, cap: u64) -> Result<Decomposition<R::Elem>> {
    let len = ring.length();
    let field = ring.residue_field();
    let q = field.q() as u128;
    check_budget("centraliser elements", q.saturating_pow(alg.log_size()), cap)?;
    let lifts: Vec<R::Elem> = field.elements().map(|a| ring.teichmuller(a)).collect();
    let pi = ring.uniformizer();
    let pi_lifts: Vec<R::Elem> = lifts.iter().map(|&a| ring.mul(pi, a)).collect();
    let mut res_terms = Vec::new();
    let mut ker_terms = Vec::new();
    for (g, m) in alg.gens.iter().zip(alg.basis()) {
        if g.order == len {
            res_terms.push((m.clone(), lifts.clone()));
            if len == 2 {
                ker_terms.push((m, pi_lifts.clone()));
            }
        } else if g.order == 1 {
            ker_terms.push((m, lifts.clone()));
        } else {
            return Err(Error::Failed("unsupported ring length".into()));
        }
    }
    Ok(Decomposition { residue: combos(ring, alg.n, &res_terms), kernel: combos(ring, alg.n, &ker_terms) })
}

/// Units of the centraliser of `x`; with `sl`, only those of determinant 1.
pub fn centralizer_group<R: Ring>(ring: &R, x: &Mat<R::Elem>, sl: bool, cap: u64) -> Result<Vec<Mat<R::Elem>>> {
    intertwiners(ring, x, x, sl, cap)
}

/// Units `g` with `g x g^-1 = y`; with `sl`, only those of determinant 1.
pub fn intertwiners<R: Ring>(ring: &R, x: &Mat<R::Elem>, y: &Mat<R::Elem>, sl: bool, cap: u64) -> Result<Vec<Mat<R::Elem>>> {
    let alg = intertwiner_basis(ring, x, y);
    let dec = decompose(ring, &alg, cap)?;
    let field = ring.residue_field();
    let one = ring.one();
    let out: Vec<Vec<Mat<R::Elem>>> = dec
        .residue
        .par_iter()
        .map(|r| {
            if reduce_mat(ring, r).det(field) == Fq::ZERO {
                return Vec::new();
            }
            dec.kernel
                .iter()
                .map(|k| r.add(ring, k))
                .filter(|m| !sl || m.det(ring) == one)
                .collect()
        })
        .collect();
    Ok(out.into_iter().flatten().collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct SurjectivityReport {
    pub holds: bool,
    /// `|C_S(x)|`
    pub residue_order: u64,
    /// `|C_{S_2}(s(x))|`
    pub lifted_order: u64,
    /// Size of the image of reduction.
    pub image_order: u64,
    /// `dim C_{M_n(F_q)}(x)`
    pub dimension: usize,
    /// Whether the trace vanishes on the whole residue centraliser.
    pub trace_vanishes: bool,
    /// An element of `C_S(x)` with no lift, if any.
    #[serde(skip)]
    pub witness: Option<Mat<Fq>>,
}

impl SurjectivityReport {
    /// `q^(dim C - 1)` if the trace is nonzero on the centraliser, `q^dim C` otherwise.
    pub fn expected_kernel_order(&self, q: u64) -> u64 {
        let e = if self.trace_vanishes { self.dimension } else { self.dimension - 1 };
        q.pow(e as u32)
    }
}

/// Enumerates `C_S(x)` and `C_{S_2}(s(x))` and compares `C_S(x)` with the image of reduction.
pub fn check_reduction_surjectivity(field: &Field, x: &Mat<Fq>, kind: RingKind, cap: u64) -> Result<SurjectivityReport> {
    let residue: Vec<Mat<Fq>> = centralizer_group(field, x, true, cap)?;
    let ring = LocalRing::new(field.clone(), kind);
    let sx = lift_teichmuller(&ring, x);
    let alg = centralizer_basis(&ring, &sx);
    let dec = decompose(&ring, &alg, cap)?;
    let one = ring.one();
    let per: Vec<(Mat<Fq>, u64)> = dec
        .residue
        .par_iter()
        .filter_map(|r| {
            let red = reduce_mat(&ring, r);
            if red.det(field) != Fq::ONE {
                return None;
            }
            let count = dec.kernel.iter().filter(|k| r.add(&ring, k).det(&ring) == one).count() as u64;
            Some((red, count))
        })
        .collect();
    let lifted_order: u64 = per.iter().map(|p| p.1).sum();
    let image: HashSet<Mat<Fq>> = per.into_iter().filter(|p| p.1 > 0).map(|p| p.0).collect();
    let witness = residue.iter().find(|g| !image.contains(*g)).cloned();
    let falg = centralizer_basis(field, x);
    let trace_vanishes = falg.basis().iter().all(|b| b.trace(field) == Fq::ZERO);
    Ok(SurjectivityReport {
        holds: witness.is_none() && image.len() == residue.len(),
        residue_order: residue.len() as u64,
        lifted_order,
        image_order: image.len() as u64,
        dimension: falg.rank(),
        trace_vanishes,
        witness,
    })
}

/// Every matrix in `M_n(F_q)` that is in Weyr form, in every block order.
pub fn all_weyr_matrices(field: &Field, n: usize) -> Vec<Mat<Fq>> {
    fn go(field: &Field, rest: usize, used: &mut Vec<Fq>, cur: &mut Vec<Mat<Fq>>, out: &mut Vec<Mat<Fq>>) {
        if rest == 0 {
            out.push(Mat::direct_sum(field, cur));
            return;
        }
        for a in field.elements() {
            if used.contains(&a) {
                continue;
            }
            for size in 1..=rest {
                for p in partitions(size) {
                    used.push(a);
                    cur.push(build_basic_weyr(field, a, &p).expect("valid"));
                    go(field, rest - size, used, cur, out);
                    cur.pop();
                    used.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(field, n, &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

/// `X_lambda(A) = {(x_l) in prod M_{d_l}(A) : prod det(x_l)^(e_l) = 1}` for `lambda = [(d_l, e_l)]`.
pub fn x_lambda_elements<R: Ring>(ring: &R, lambda: &[(usize, usize)], cap: u64) -> Result<Vec<Vec<Mat<R::Elem>>>> {
    let ambient: usize = lambda.iter().map(|&(d, _)| d * d).sum();
    check_budget("X_lambda ambient points", (ring.size() as u128).saturating_pow(ambient as u32), cap)?;
    let elems = ring.elements();
    let per_factor: Vec<Vec<(Mat<R::Elem>, R::Elem)>> = lambda
        .iter()
        .map(|&(d, e)| {
            all_matrices(&elems, d)
                .into_iter()
                .filter_map(|m| {
                    let det = m.det(ring);
                    ring.is_unit(det).then(|| {
                        let p = ring.pow(det, e as u64);
                        (m, p)
                    })
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; lambda.len()];
    if per_factor.iter().any(|f| f.is_empty()) {
        return Ok(out);
    }
    loop {
        let prod = idx.iter().enumerate().fold(ring.one(), |acc, (l, &i)| ring.mul(acc, per_factor[l][i].1));
        if prod == ring.one() {
            out.push(idx.iter().enumerate().map(|(l, &i)| per_factor[l][i].0.clone()).collect());
        }
        let mut l = 0;
        loop {
            if l == idx.len() {
                return Ok(out);
            }
            idx[l] += 1;
            if idx[l] < per_factor[l].len() {
                break;
            }
            idx[l] = 0;
            l += 1;
        }
    }
}

fn all_matrices<E: Copy>(elems: &[E], d: usize) -> Vec<Mat<E>> {
    let total = elems.len().pow((d * d) as u32);
    (0..total)
        .map(|mut code| {
            let data: Vec<E> = (0..d * d)
                .map(|_| {
                    let e = elems[code % elems.len()];
                    code /= elems.len();
                    e
                })
                .collect();
            Mat::from_vec(d, data).expect("d*d entries")
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct XLambdaReport {
    pub lambda: Vec<(usize, usize)>,
    pub residue_points: usize,
    pub lifted_points: usize,
    pub surjective: bool,
}

/// Whether every `F_q`-point of `X_lambda` lifts to an `O_2`-point, by exhaustive search
/// over the lifts `s(x_l) + pi s(y_l)`.
pub fn check_x_lambda_surjectivity(field: &Field, lambda: &[(usize, usize)], kind: RingKind, cap: u64) -> Result<XLambdaReport> {
    if lambda.is_empty() || lambda.iter().any(|&(d, e)| d == 0 || e == 0) {
        return Err(Error::InvalidArgument("lambda needs positive pairs (d, e)".into()));
    }
    let ring = LocalRing::new(field.clone(), kind);
    let points = x_lambda_elements(field, lambda, cap)?;
    let lifted_points = x_lambda_elements(&ring, lambda, cap)?.len();
    let fz: Vec<Fq> = field.elements().collect();
    let offsets: Vec<Vec<Mat<Fq>>> = lambda.iter().map(|&(d, _)| all_matrices(&fz, d)).collect();
    let lifts = |pt: &Vec<Mat<Fq>>| -> bool {
        let base: Vec<Mat<_>> = pt.iter().map(|m| lift_teichmuller(&ring, m)).collect();
        let mut idx = vec![0usize; lambda.len()];
        loop {
            let mut prod = ring.one();
            for (l, &(_, e)) in lambda.iter().enumerate() {
                let y = offsets[l][idx[l]].map(|a| ring.varpi_times(a));
                prod = ring.mul(prod, ring.pow(base[l].add(&ring, &y).det(&ring), e as u64));
            }
            if prod == ring.one() {
                return true;
            }
            let mut l = 0;
            loop {
                if l == idx.len() {
                    return false;
                }
                idx[l] += 1;
                if idx[l] < offsets[l].len() {
                    break;
                }
                idx[l] = 0;
                l += 1;
            }
        }
    };
    let surjective = points.par_iter().all(lifts);
    Ok(XLambdaReport { lambda: lambda.to_vec(), residue_points: points.len(), lifted_points, surjective })
}

/// Multisets of pairs `(d, e)` with `sum d*e <= max_n` and ambient dimension
/// `sum d^2 <= max_dim`, as sorted lists.
pub fn small_lambdas(max_n: usize, max_dim: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(rest_n: usize, rest_dim: usize, min: (usize, usize), cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for d in 1..=rest_dim {
            if d * d > rest_dim {
                break;
            }
            for e in 1..=rest_n / d {
                if (d, e) < min {
                    continue;
                }
                cur.push((d, e));
                go(rest_n - d * e, rest_dim - d * d, (d, e), cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(max_n, max_dim, (0, 0), &mut Vec::new(), &mut out);
    out
}

/// `lambda` for a Weyr partition, as the pairs `(d, e)` of [`pattern_rule`].
pub fn lambda_of_partition(partition: &[usize]) -> Result<Vec<(usize, usize)>> {
    if !is_partition(partition) {
        return Err(Error::InvalidArgument(format!("{partition:?} is not a partition")));
    }
    Ok(pattern_rule(partition))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyr::example_7x7;

    fn f(p: u32) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn centraliser_dimensions() {
        let k = f(2);
        assert_eq!(centralizer_basis(&k, &Mat::scalar(&k, 3, Fq::ONE)).rank(), 9);
        assert_eq!(centralizer_basis(&k, &example_7x7(&k)).rank(), 17);
        assert_eq!(centralizer_basis(&k, &Mat::diag(&k, &[Fq(0), Fq(1)])).rank(), 2);
        for b in centralizer_basis(&k, &example_7x7(&k)).basis() {
            assert!(b.commutator(&k, &example_7x7(&k)).is_zero(&k));
        }
    }

    #[test]
    fn pattern_of_seven_by_seven() {
        let blocks = [WeyrBlock { eigenvalue: Fq::ZERO, partition: vec![3, 2, 2] }];
        let p = weyr_pattern(&blocks).unwrap();
        assert_eq!(p.lambda, vec![(2, 3), (1, 1)]);
        assert_eq!(p.dimension(), 17);
        assert!(p.offdiag_positions.iter().all(|&(i, j)| i < j));
    }

    #[test]
    fn trivial_patterns() {
        let one = weyr_pattern(&[WeyrBlock { eigenvalue: Fq::ONE, partition: vec![1] }]).unwrap();
        assert_eq!(one.lambda, vec![(1, 1)]);
        assert!(one.offdiag_positions.is_empty());
        let scalar = weyr_pattern(&[WeyrBlock { eigenvalue: Fq::ZERO, partition: vec![4] }]).unwrap();
        assert_eq!(scalar.lambda, vec![(4, 1)]);
        assert!(scalar.offdiag_positions.is_empty());
        let two = [
            WeyrBlock { eigenvalue: Fq::ZERO, partition: vec![1] },
            WeyrBlock { eigenvalue: Fq::ONE, partition: vec![1] },
        ];
        assert!(weyr_pattern(&two).is_err());
    }

    #[test]
    fn centraliser_group_examples() {
        let k = f(2);
        assert_eq!(centralizer_group(&k, &Mat::zero(&k, 2), true, 1 << 20).unwrap().len(), 6);
        let d = centralizer_group(&k, &Mat::diag(&k, &[Fq(0), Fq(1)]), true, 1 << 20).unwrap();
        assert_eq!(d, vec![Mat::identity(&k, 2)]);
        let k3 = f(3);
        let g = centralizer_group(&k3, &Mat::unit(&k3, 2, 0, 1), true, 1 << 20).unwrap();
        assert_eq!(g.len(), 6);
        for m in &g {
            assert_eq!(m.get(1, 0), Fq::ZERO);
            assert_eq!(m.get(0, 0), m.get(1, 1));
        }
        assert!(matches!(
            centralizer_group(&k3, &Mat::zero(&k3, 3), true, 1000),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn surjectivity_small() {
        let k = f(2);
        for kind in RingKind::ALL {
            let r = check_reduction_surjectivity(&k, &Mat::zero(&k, 2), kind, 1 << 20).unwrap();
            assert!(r.holds);
            assert_eq!(r.lifted_order, 48);
        }
    }

    #[test]
    fn x_lambda_examples() {
        let k = f(2);
        for kind in RingKind::ALL {
            let r = check_x_lambda_surjectivity(&k, &[(1, 2)], kind, 1 << 20).unwrap();
            assert_eq!(r.residue_points, 1);
            assert!(r.surjective);
            assert!(check_x_lambda_surjectivity(&k, &[(1, 1)], kind, 1 << 20).unwrap().surjective);
            assert!(check_x_lambda_surjectivity(&k, &[(2, 1), (1, 1)], kind, 1 << 20).unwrap().surjective);
        }
    }

    #[test]
    fn lambda_families() {
        let ls = small_lambdas(5, 5);
        assert!(ls.contains(&vec![(1, 2)]));
        assert!(ls.contains(&vec![(1, 1), (2, 1)]));
        assert!(ls.iter().all(|l| l.iter().map(|p| p.0 * p.0).sum::<usize>() <= 5));
        assert_eq!(lambda_of_partition(&[3, 2, 2]).unwrap(), vec![(2, 3), (1, 1)]);
    }
}
