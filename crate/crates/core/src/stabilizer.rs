//! Stabilisers of cosets `x + Z` under conjugation, with `Z` the scalar matrices.
//!
//! For `x` in Weyr form, a nonzero shift `lambda` with `v x v^-1 = x + lambda I` is realised
//! by the block permutation `v` moving block `sigma(j)` to position `j`, where
//! `a_{sigma(i)} = a_i + lambda`. The lift `w` to `SL_n(O_2)` is `v` itself or, when `p = 2`
//! and `det(v) = -1` over `O_2`, `diag(-1, 1, ..., 1) v`.

use std::collections::HashSet;

use serde_json::{json, Value};

use crate::centralizer::{centralizer_group, intertwiners};
use crate::error::{Error, Result};
use crate::matrix::{lift_teichmuller, Mat};
use crate::ring::{Field, Fq, LocalRing, Ring, R2};
use crate::weyr::{read_weyr_form, weyr_decompose};

/// Canonical representative of `x + Z`: the entry `(0, 0)` is made zero.
pub fn coset_key(field: &Field, x: &Mat<Fq>) -> Mat<Fq> {
    let c = x.get(0, 0);
    if c == Fq::ZERO {
        return x.clone();
    }
    x.sub(field, &Mat::scalar(field, x.n(), c))
}

/// A nonzero shift of the eigenvalues together with the induced block permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shift {
    pub lambda: Fq,
    /// `sigma[i] = j` when `a_j = a_i + lambda`, indices in block order.
    pub sigma: Vec<usize>,
}

fn shift_for(field: &Field, blocks: &[(Fq, Vec<usize>)], lambda: Fq) -> Option<Vec<usize>> {
    blocks
        .iter()
        .map(|(a, p)| {
            let target = field.add(*a, lambda);
            blocks.iter().position(|(b, q)| *b == target && q == p)
        })
        .collect()
}

/// All nonzero shifts preserving the Weyr data of `x`, in element order.
pub fn all_shifts(field: &Field, x: &Mat<Fq>) -> Result<Vec<Shift>> {
    let blocks = read_weyr_form(field, x).ok_or_else(|| Error::InvalidArgument("matrix is not in Weyr form".into()))?;
    Ok(field
        .nonzero_elements()
        .filter_map(|lambda| shift_for(field, &blocks, lambda).map(|sigma| Shift { lambda, sigma }))
        .collect())
}

/// The first nonzero shift, if any.
pub fn find_shift(field: &Field, x: &Mat<Fq>) -> Result<Option<Shift>> {
    Ok(all_shifts(field, x)?.into_iter().next())
}

fn block_offsets(blocks: &[(Fq, Vec<usize>)]) -> Vec<(usize, usize)> {
    let mut off = 0;
    blocks
        .iter()
        .map(|(_, p)| {
            let size: usize = p.iter().sum();
            let r = (off, size);
            off += size;
            r
        })
        .collect()
}

/// The block permutation matrix with `v x v^-1 = x + lambda I`; checked, together with
/// `det(v) = 1` and `v^p = I`.
pub fn build_v(field: &Field, x: &Mat<Fq>, shift: &Shift) -> Result<Mat<Fq>> {
    let blocks = read_weyr_form(field, x).ok_or_else(|| Error::InvalidArgument("matrix is not in Weyr form".into()))?;
    let offs = block_offsets(&blocks);
    let n = x.n();
    let mut v = Mat::zero(field, n);
    for (j, &(oj, size)) in offs.iter().enumerate() {
        let (os, _) = offs[shift.sigma[j]];
        for t in 0..size {
            v.set(oj + t, os + t, Fq::ONE);
        }
    }
    let vinv = v.transpose();
    let expect = x.add(field, &Mat::scalar(field, n, shift.lambda));
    if x.conjugate(field, &v, &vinv) != expect {
        return Err(Error::Discrepancy("block permutation does not shift x".into()));
    }
    if v.det(field) != Fq::ONE {
        return Err(Error::Discrepancy("block permutation has determinant -1".into()));
    }
    if !v.pow(field, field.p() as u64).is_identity(field) {
        return Err(Error::Discrepancy("block permutation does not have order dividing p".into()));
    }
    Ok(v)
}

/// Lift of a permutation matrix `v` in `SL_n(F_q)` to `SL_n(O_2)`; returns `w` and whether
/// the sign correction was applied.
pub fn lift_w(ring: &LocalRing, v: &Mat<Fq>) -> Result<(Mat<R2>, bool)> {
    let hat = lift_teichmuller(ring, v);
    if hat.det(ring) == ring.one() {
        return Ok((hat, false));
    }
    if ring.field().p() != 2 {
        return Err(Error::Discrepancy("lifted permutation matrix has determinant -1 for odd p".into()));
    }
    let n = v.n();
    let mut u = vec![ring.one(); n];
    u[0] = ring.neg(ring.one());
    let w = Mat::diag(ring, &u).mul(ring, &hat);
    if w.det(ring) != ring.one() {
        return Err(Error::Discrepancy("corrected lift is not in SL_n".into()));
    }
    Ok((w, true))
}

/// `w c w^-1` against the permuted blocks of `c`, the first up to conjugation by
/// `u = diag(-1, 1, ..., 1)` when the sign correction was used.
pub fn verify_w_block_action(
    ring: &LocalRing,
    x: &Mat<Fq>,
    shift: &Shift,
    w: &Mat<R2>,
    corrected: bool,
    c: &Mat<R2>,
) -> Result<bool> {
    let field = ring.field();
    let blocks = read_weyr_form(field, x).ok_or_else(|| Error::InvalidArgument("matrix is not in Weyr form".into()))?;
    let offs = block_offsets(&blocks);
    let winv = w.inverse(ring)?;
    let conj = c.conjugate(ring, w, &winv);
    let pieces: Vec<Mat<R2>> = offs
        .iter()
        .enumerate()
        .map(|(j, _)| {
            let (os, size) = offs[shift.sigma[j]];
            let mut b = c.block(os, os, size);
            if j == 0 && corrected {
                let mut u = vec![ring.one(); size];
                u[0] = ring.neg(ring.one());
                let u = Mat::diag(ring, &u);
                let uinv = u.inverse(ring).expect("signed diagonal");
                b = b.conjugate(ring, &u, &uinv);
            }
            b
        })
        .collect();
    Ok(conj == Mat::direct_sum(ring, &pieces))
}

/// `C_S(x)` and `C_S(x + Z)`, with the Weyr-form construction when the eigenvalues lie in `F_q`.
#[derive(Clone, Debug)]
pub struct StabilizerData {
    pub x: Mat<Fq>,
    pub centralizer: Vec<Mat<Fq>>,
    pub stabilizer: Vec<Mat<Fq>>,
    /// Shift, `v` and `w` computed on the Weyr form over the splitting field `k`.
    pub weyr: Option<WeyrShiftData>,
}

#[derive(Clone, Debug)]
pub struct WeyrShiftData {
    pub field: Field,
    pub weyr_form: Mat<Fq>,
    pub shift: Option<Shift>,
    pub v: Mat<Fq>,
    pub w: Vec<(crate::ring::RingKind, Mat<R2>)>,
    pub order_v: u32,
}

impl StabilizerData {
    pub fn index(&self) -> usize {
        self.stabilizer.len() / self.centralizer.len()
    }

    pub fn to_json(&self, field: &Field) -> Value {
        let mut v = json!({
            "x": self.x.to_json(field),
            "centralizer_order": self.centralizer.len(),
            "stabilizer_order": self.stabilizer.len(),
            "index": self.index(),
        });
        if let Some(wd) = &self.weyr {
            let k = &wd.field;
            v["weyr_field"] = json!(k.spec());
            v["weyr_form"] = wd.weyr_form.to_json(k);
            v["lambda"] = wd.shift.as_ref().map_or(Value::Null, |s| k.to_json(s.lambda));
            v["sigma"] = wd.shift.as_ref().map_or(Value::Null, |s| json!(s.sigma));
            v["v"] = wd.v.to_json(k);
            v["order_v"] = json!(wd.order_v);
            let mut ws = serde_json::Map::new();
            for (kind, w) in &wd.w {
                let ring = LocalRing::new(k.clone(), *kind);
                ws.insert(kind.to_string(), w.to_json(&ring));
            }
            v["w"] = Value::Object(ws);
        }
        v
    }
}

/// `{g in S : g x g^-1 - x in Z}` as the union over `lambda` of the solutions of
/// `g x = (x + lambda I) g`.
pub fn stabilizer_by_intertwiners(field: &Field, x: &Mat<Fq>, cap: u64) -> Result<Vec<Mat<Fq>>> {
    let n = x.n();
    let mut out = Vec::new();
    for lambda in field.elements() {
        let y = x.add(field, &Mat::scalar(field, n, lambda));
        out.extend(intertwiners(field, x, &y, true, cap)?);
    }
    Ok(out)
}

fn weyr_shift_data(field: &Field, x: &Mat<Fq>, max_field: u64) -> Result<WeyrShiftData> {
    let dec = weyr_decompose(field, x, max_field)?;
    let k = dec.structure.field.clone();
    let w_form = dec.w.clone();
    let shift = find_shift(&k, &w_form)?;
    let n = x.n();
    let v = match &shift {
        Some(s) => build_v(&k, &w_form, s)?,
        None => Mat::identity(&k, n),
    };
    let order_v = if shift.is_some() { k.p() } else { 1 };
    let mut ws = Vec::new();
    for kind in crate::ring::RingKind::ALL {
        let ring = LocalRing::new(k.clone(), kind);
        ws.push((kind, lift_w(&ring, &v)?.0));
    }
    Ok(WeyrShiftData { field: k, weyr_form: w_form, shift, v, w: ws, order_v })
}

/// The stabiliser of `x + Z` in `SL_n(F_q)`.
///
/// `C_S(x + Z)` is found by solving the linear systems `g x = (x + lambda I) g`. When the
/// eigenvalues of `x` lie in `F_q` the result is also rebuilt as `<v> C_S(x)` from the Weyr
/// form and the two are required to agree.
pub fn coset_stabilizer(field: &Field, x: &Mat<Fq>, cap: u64, max_field: u64) -> Result<StabilizerData> {
    let centralizer = centralizer_group(field, x, true, cap)?;
    let stabilizer = stabilizer_by_intertwiners(field, x, cap)?;
    let idx = stabilizer.len() / centralizer.len();
    if stabilizer.len() % centralizer.len() != 0 || !(idx == 1 || idx == field.p() as usize) {
        return Err(Error::Discrepancy(format!("stabiliser index {idx} is not 1 or p")));
    }
    let weyr = match weyr_shift_data(field, x, max_field) {
        Ok(w) => w,
        Err(Error::Budget { .. }) => return Ok(StabilizerData { x: x.clone(), centralizer, stabilizer, weyr: None }),
        Err(e) => return Err(e),
    };
    if weyr.field.q() == field.q() {
        let dec = weyr_decompose(field, x, max_field)?;
        // v lives on the Weyr form; bring it back to x
        let v_x = weyr.v.conjugate(field, &dec.g_inv, &dec.g);
        let generated = generated_by(field, &v_x, &centralizer);
        let a: HashSet<&Mat<Fq>> = generated.iter().collect();
        let b: HashSet<&Mat<Fq>> = stabilizer.iter().collect();
        if a != b {
            return Err(Error::Discrepancy("<v> C_S(x) differs from C_S(x + Z)".into()));
        }
    }
    Ok(StabilizerData { x: x.clone(), centralizer, stabilizer, weyr: Some(weyr) })
}

/// `<v> C` as a list, for `v` normalising `C` with `v^p` in `C`.
pub fn generated_by<R: Ring>(ring: &R, v: &Mat<R::Elem>, c: &[Mat<R::Elem>]) -> Vec<Mat<R::Elem>> {
    let mut seen: HashSet<Mat<R::Elem>> = HashSet::new();
    let mut out = Vec::new();
    let mut power = Mat::identity(ring, v.n());
    loop {
        let mut fresh = false;
        for g in c {
            let h = power.mul(ring, g);
            if seen.insert(h.clone()) {
                out.push(h);
                fresh = true;
            }
        }
        if !fresh {
            break;
        }
        power = power.mul(ring, v);
    }
    out
}

/// `{g in group : g x g^-1 - x in Z}` by direct search.
pub fn stabilizer_brute_force(field: &Field, group: &[Mat<Fq>], x: &Mat<Fq>) -> Vec<Mat<Fq>> {
    group
        .iter()
        .filter(|g| {
            let ginv = g.inverse(field).expect("group element");
            x.conjugate(field, g, &ginv).sub(field, x).is_scalar(field)
        })
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::sl_elements;
    use crate::ring::RingKind;

    fn f(p: u32) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn shifts_of_diagonal_matrices() {
        let k = f(2);
        let x = Mat::diag(&k, &[Fq(0), Fq(1)]);
        let s = find_shift(&k, &x).unwrap().unwrap();
        assert_eq!(s.lambda, Fq::ONE);
        assert_eq!(s.sigma, vec![1, 0]);
        let v = build_v(&k, &x, &s).unwrap();
        assert_eq!(v, Mat::from_rows(vec![vec![Fq(0), Fq(1)], vec![Fq(1), Fq(0)]]).unwrap());
        let k3 = f(3);
        let x3 = Mat::diag(&k3, &[Fq(0), Fq(1), Fq(2)]);
        let s3 = find_shift(&k3, &x3).unwrap().unwrap();
        assert_eq!(s3.lambda, Fq::ONE);
        assert_eq!(s3.sigma, vec![1, 2, 0]);
        let v3 = build_v(&k3, &x3, &s3).unwrap();
        assert_eq!(v3.det(&k3), Fq::ONE);
        assert_eq!(all_shifts(&k3, &x3).unwrap().len(), 2);
        assert_eq!(find_shift(&k3, &Mat::unit(&k3, 2, 0, 1)).unwrap(), None);
        assert!(find_shift(&k3, &Mat::direct_sum(&k3, &[Mat::unit(&k3, 2, 0, 1), Mat::unit(&k3, 2, 0, 1)])).is_err());
    }

    #[test]
    fn lifts_of_permutations() {
        let k = f(2);
        let w2 = LocalRing::witt(k.clone());
        let swap = Mat::from_rows(vec![vec![Fq(0), Fq(1)], vec![Fq(1), Fq(0)]]).unwrap();
        let (w, corrected) = lift_w(&w2, &swap).unwrap();
        assert!(corrected);
        let m1 = w2.neg(w2.one());
        assert_eq!(w, Mat::from_rows(vec![vec![w2.zero(), m1], vec![w2.one(), w2.zero()]]).unwrap());
        let (wi, c) = lift_w(&w2, &Mat::identity(&k, 2)).unwrap();
        assert!(!c && wi.is_identity(&w2));
        let k3 = f(3);
        let x3 = Mat::diag(&k3, &[Fq(0), Fq(1), Fq(2)]);
        let v3 = build_v(&k3, &x3, &find_shift(&k3, &x3).unwrap().unwrap()).unwrap();
        for kind in RingKind::ALL {
            let r = LocalRing::new(k3.clone(), kind);
            let (w, c) = lift_w(&r, &v3).unwrap();
            assert!(!c);
            assert_eq!(w, lift_teichmuller(&r, &v3));
        }
    }

    #[test]
    fn stabiliser_examples() {
        let k = f(2);
        let s = sl_elements(&k, 2, 1000).unwrap();
        let x = Mat::diag(&k, &[Fq(0), Fq(1)]);
        let d = coset_stabilizer(&k, &x, 1 << 20, 1 << 16).unwrap();
        assert_eq!(d.centralizer.len(), 1);
        assert_eq!(d.stabilizer.len(), 2);
        assert_eq!(stabilizer_brute_force(&k, &s, &x).len(), 2);
        let z = coset_stabilizer(&k, &Mat::scalar(&k, 2, Fq::ONE), 1 << 20, 1 << 16).unwrap();
        assert_eq!(z.stabilizer.len(), 6);
        let e = coset_stabilizer(&k, &Mat::unit(&k, 2, 0, 1), 1 << 20, 1 << 16).unwrap();
        assert_eq!(e.index(), 1);
        assert_eq!(e.stabilizer.len(), stabilizer_brute_force(&k, &s, &Mat::unit(&k, 2, 0, 1)).len());
    }

    #[test]
    fn block_action_of_w() {
        let k = f(2);
        let x = Mat::diag(&k, &[Fq(0), Fq(1)]);
        let s = find_shift(&k, &x).unwrap().unwrap();
        let v = build_v(&k, &x, &s).unwrap();
        for kind in RingKind::ALL {
            let r = LocalRing::new(k.clone(), kind);
            let (w, corrected) = lift_w(&r, &v).unwrap();
            let sx = lift_teichmuller(&r, &x);
            for c in centralizer_group(&r, &sx, true, 1 << 20).unwrap() {
                assert!(verify_w_block_action(&r, &x, &s, &w, corrected, &c).unwrap());
            }
        }
        let k3 = f(3);
        let x3 = Mat::diag(&k3, &[Fq(0), Fq(1), Fq(2)]);
        let s3 = find_shift(&k3, &x3).unwrap().unwrap();
        let v3 = build_v(&k3, &x3, &s3).unwrap();
        let r = LocalRing::witt(k3.clone());
        let (w, corrected) = lift_w(&r, &v3).unwrap();
        for c in centralizer_group(&r, &lift_teichmuller(&r, &x3), true, 1 << 20).unwrap() {
            assert!(verify_w_block_action(&r, &x3, &s3, &w, corrected, &c).unwrap());
        }
    }
}
