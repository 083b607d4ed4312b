//! Orbits of `SL_n(F_q)` acting by conjugation on `M_n(F_q)/Z`.
//!
//! A coset is stored by the canonical representative with zero `(0, 0)` entry and encoded
//! as the base-`q` integer of its other `n^2 - 1` entries.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{check_budget, Result};
use crate::group::{closure, sl_generators};
use crate::matrix::{group_order, Linear, Mat};
use crate::ring::{Field, Fq};
use crate::stabilizer::coset_key;

#[derive(Clone, Debug)]
pub struct Orbit {
    pub rep: Mat<Fq>,
    pub size: u64,
    /// Sifted Schreier generators of `C_S(rep + Z)`.
    pub stab_gens: Vec<Mat<Fq>>,
}

#[derive(Clone, Debug)]
pub struct OrbitTable {
    pub n: usize,
    pub field: Field,
    pub group_order: u64,
    pub orbits: Vec<Orbit>,
    /// Orbit index of each coset code.
    pub orbit_of: Vec<u32>,
}

pub struct CosetCoder {
    n: usize,
    q: u64,
}

impl CosetCoder {
    pub fn new(field: &Field, n: usize) -> CosetCoder {
        CosetCoder { n, q: field.q() as u64 }
    }

    pub fn count(&self) -> u64 {
        self.q.pow((self.n * self.n - 1) as u32)
    }

    /// Code of `x + Z`.
    pub fn encode(&self, field: &Field, x: &Mat<Fq>) -> u64 {
        let k = coset_key(field, x);
        k.entries()[1..].iter().rev().fold(0u64, |acc, e| acc * self.q + e.code() as u64)
    }

    pub fn decode(&self, mut code: u64) -> Mat<Fq> {
        let mut data = vec![Fq::ZERO; self.n * self.n];
        for e in data.iter_mut().skip(1) {
            *e = Fq::from_code((code % self.q) as u32);
            code /= self.q;
        }
        Mat::from_vec(self.n, data).expect("n*n entries")
    }
}

/// Breadth-first orbit enumeration over the elementary generators, with stabiliser
/// generators from Schreier's lemma sifted until their closure has `|S| / |orbit|` elements.
pub fn enumerate_orbits(field: &Field, n: usize, coset_cap: u64, group_cap: u64) -> Result<OrbitTable> {
    let coder = CosetCoder::new(field, n);
    let total = coder.count();
    check_budget("cosets", total as u128, coset_cap)?;
    let s_order = group_order(n as u32, field.q() as u64, Linear::SL, 1) as u64;
    let gens = sl_generators(field, n);
    let gens_inv: Vec<Mat<Fq>> = gens.iter().map(|g| g.inverse(field).expect("elementary")).collect();
    let mut orbit_of = vec![u32::MAX; total as usize];
    // tree: for each visited coset, (parent coset, generator index)
    let mut parent: Vec<(u64, u32)> = vec![(u64::MAX, u32::MAX); total as usize];
    let mut raw: Vec<(Mat<Fq>, Vec<u64>)> = Vec::new();
    for seed in 0..total {
        if orbit_of[seed as usize] != u32::MAX {
            continue;
        }
        let id = raw.len() as u32;
        orbit_of[seed as usize] = id;
        let mut members = vec![seed];
        let mut head = 0;
        while head < members.len() {
            let c = members[head];
            head += 1;
            let x = coder.decode(c);
            for (gi, (g, ginv)) in gens.iter().zip(&gens_inv).enumerate() {
                let y = coder.encode(field, &x.conjugate(field, g, ginv));
                if orbit_of[y as usize] == u32::MAX {
                    orbit_of[y as usize] = id;
                    parent[y as usize] = (c, gi as u32);
                    members.push(y);
                }
            }
        }
        raw.push((coder.decode(seed), members));
    }
    let orbits: Vec<Orbit> = raw
        .par_iter()
        .map(|(rep, members)| {
            let stab = schreier_generators(field, n, &coder, &gens, &gens_inv, &parent, members, s_order, group_cap)?;
            Ok(Orbit { rep: rep.clone(), size: members.len() as u64, stab_gens: stab })
        })
        .collect::<Result<_>>()?;
    Ok(OrbitTable { n, field: field.clone(), group_order: s_order, orbits, orbit_of })
}

#[allow(clippy::too_many_arguments)]
fn schreier_generators(
    field: &Field,
    n: usize,
    coder: &CosetCoder,
    gens: &[Mat<Fq>],
    gens_inv: &[Mat<Fq>],
    parent: &[(u64, u32)],
    members: &[u64],
    s_order: u64,
    cap: u64,
) -> Result<Vec<Mat<Fq>>> {
    let target = s_order / members.len() as u64;
    let index: std::collections::HashMap<u64, usize> = members.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    // transversal t_c with t_c (rep) t_c^-1 = c, built along the tree
    let mut trans: Vec<Mat<Fq>> = Vec::with_capacity(members.len());
    for (i, &c) in members.iter().enumerate() {
        if i == 0 {
            trans.push(Mat::identity(field, n));
            continue;
        }
        let (p, gi) = parent[c as usize];
        trans.push(gens[gi as usize].mul(field, &trans[index[&p]]));
    }
    let trans_inv: Vec<Mat<Fq>> = trans.iter().map(|t| t.inverse(field).expect("invertible")).collect();
    let mut chosen: Vec<Mat<Fq>> = Vec::new();
    let mut group: std::collections::HashSet<Mat<Fq>> = [Mat::identity(field, n)].into_iter().collect();
    if target == 1 {
        return Ok(chosen);
    }
    for (i, &c) in members.iter().enumerate() {
        let x = coder.decode(c);
        for (g, ginv) in gens.iter().zip(gens_inv) {
            let y = coder.encode(field, &x.conjugate(field, g, ginv));
            let sg = trans_inv[index[&y]].mul(field, g).mul(field, &trans[i]);
            if group.contains(&sg) {
                continue;
            }
            chosen.push(sg);
            group = closure(field, n, &chosen, cap)?.into_iter().collect();
            if group.len() as u64 == target {
                return Ok(chosen);
            }
        }
    }
    Err(crate::Error::Discrepancy(format!(
        "Schreier generators close to {} elements, expected {target}",
        group.len()
    )))
}

impl OrbitTable {
    pub fn coset_count(&self) -> u64 {
        self.orbit_of.len() as u64
    }

    /// Orbit index of `x + Z`.
    pub fn orbit_index(&self, x: &Mat<Fq>) -> usize {
        let coder = CosetCoder::new(&self.field, self.n);
        self.orbit_of[coder.encode(&self.field, x) as usize] as usize
    }

    /// `C_S(rep + Z)` as an element list.
    pub fn stabilizer_subgroup(&self, orbit: usize, cap: u64) -> Result<Vec<Mat<Fq>>> {
        closure(&self.field, self.n, &self.orbits[orbit].stab_gens, cap)
    }

    pub fn to_json(&self, with_generators: bool) -> Value {
        let f = &self.field;
        Value::Array(
            self.orbits
                .iter()
                .map(|o| {
                    let mut v = json!({
                        "rep": o.rep.to_json(f),
                        "size": o.size,
                        "stabilizer_order": self.group_order / o.size,
                    });
                    if with_generators {
                        v["stabilizer_generators"] = Value::Array(o.stab_gens.iter().map(|g| g.to_json(f)).collect());
                    }
                    v
                })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::sl_elements;
    use crate::stabilizer::stabilizer_brute_force;

    #[test]
    fn coder_round_trip() {
        let f = Field::gf(2, 2).unwrap();
        let c = CosetCoder::new(&f, 2);
        for code in 0..c.count() {
            assert_eq!(c.encode(&f, &c.decode(code)), code);
        }
        let x = Mat::from_fn(2, |i, j| Fq::from_code((i + 2 * j) as u32 % 4));
        let shifted = x.add(&f, &Mat::scalar(&f, 2, Fq(3)));
        assert_eq!(c.encode(&f, &x), c.encode(&f, &shifted));
    }

    #[test]
    fn orbits_over_f2_and_f3() {
        let f = Field::prime(2).unwrap();
        let t = enumerate_orbits(&f, 2, 1 << 20, 1 << 20).unwrap();
        assert_eq!(t.orbits.iter().map(|o| o.size).sum::<u64>(), 8);
        assert_eq!(t.orbits[0].size, 1);
        assert_eq!(t.stabilizer_subgroup(0, 1000).unwrap().len(), 6);
        let i = t.orbit_index(&Mat::diag(&f, &[Fq(0), Fq(1)]));
        assert_eq!(t.stabilizer_subgroup(i, 1000).unwrap().len(), 2);
        let f3 = Field::prime(3).unwrap();
        let t3 = enumerate_orbits(&f3, 2, 1 << 20, 1 << 20).unwrap();
        assert_eq!(t3.orbits.iter().map(|o| o.size).sum::<u64>(), 27);
        let s = sl_elements(&f3, 2, 1000).unwrap();
        for (k, o) in t3.orbits.iter().enumerate() {
            let st = t3.stabilizer_subgroup(k, 1000).unwrap();
            assert_eq!(st.len() as u64 * o.size, 24);
            assert_eq!(stabilizer_brute_force(&f3, &s, &o.rep).len(), st.len());
        }
    }
}
