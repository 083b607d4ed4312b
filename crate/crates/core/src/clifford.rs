//! `#Irr_d(SL_n(O_2))` assembled from the orbits of `SL_n(F_q)` on `M_n(F_q)/Z`, and
//! directly from the whole group at small scale.
//!
//! An orbit with representative `x + Z` contributes the degrees of `C_S(x + Z)` scaled by
//! the index `[S : C_S(x + Z)]`, provided `psi_{x+Z}` extends to `C_{S_2}(x + Z)`. Only the
//! extension check depends on the ring; the assembled counts use data over `F_q`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cache::Cache;
use crate::characters::{verify_extension, ExtensionMode, ExtensionVerdict};
use crate::chartable::{DegreeDistribution, FiniteGroup};
use crate::error::{Error, Result};
use crate::group::{closure, sl_elements};
use crate::matrix::{group_order, Linear, Mat};
use crate::orbits::{enumerate_orbits, OrbitTable};
use crate::ring::{Field, Fq, LocalRing, Ring, RingKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Clifford,
    Direct,
}

#[derive(Clone, Debug)]
pub struct CountOptions {
    /// Element cap for closures and group enumerations.
    pub cap: u64,
    /// How `verify_extension` runs per orbit.
    pub extension: ExtensionMode,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions { cap: 1 << 22, extension: ExtensionMode::Auto { samples: 200, seed: 0 } }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitRecord {
    #[serde(skip)]
    pub rep: Mat<Fq>,
    pub orbit_size: u64,
    pub stabilizer_order: u64,
    pub index: u64,
    pub stabilizer_degrees: DegreeDistribution,
    pub extension: ExtensionVerdict,
}

#[derive(Clone, Debug)]
pub struct CountReport {
    pub n: usize,
    pub field: Field,
    pub kind: RingKind,
    pub method: Method,
    pub orbits: Vec<OrbitRecord>,
    pub total: DegreeDistribution,
    /// Number of conjugacy classes; filled in by the direct method.
    pub classes: Option<usize>,
}

impl CountReport {
    /// `sum d^2 count = |SL_n(F_q)| q^(n^2 - 1)`; for the Clifford method also
    /// `sum over orbits of index^2 sum d^2 stab_count` equals the same number.
    pub fn check_invariants(&self) -> bool {
        let expected = group_order(self.n as u32, self.field.q() as u64, Linear::SL, 2);
        if self.total.sum_of_squares() != expected || self.total.group_order as u128 != expected {
            return false;
        }
        if let Some(c) = self.classes {
            if self.total.total() != c as u64 {
                return false;
            }
        }
        if self.method == Method::Clifford {
            let scaled: u128 = self.orbits.iter().map(|o| (o.index as u128).pow(2) * o.stabilizer_degrees.sum_of_squares()).sum();
            return scaled == expected;
        }
        true
    }

    /// Every dimension with a nonzero count is an index times a stabiliser degree.
    pub fn check_structure(&self, orbits: &[OrbitRecord]) -> bool {
        self.total.counts.keys().all(|&d| {
            orbits.iter().any(|o| d % o.index == 0 && o.stabilizer_degrees.counts.contains_key(&(d / o.index)))
        })
    }

    pub fn to_json(&self) -> Value {
        let f = &self.field;
        json!({
            "n": self.n,
            "p": f.p(),
            "f": f.f(),
            "kind": self.kind,
            "method": self.method,
            "counts": counts_json(&self.total),
            "orbits": self.orbits.iter().map(|o| {
                let mut v = serde_json::to_value(o).expect("serialisable");
                v["rep"] = o.rep.to_json(f);
                v
            }).collect::<Vec<_>>(),
        })
    }

    /// Flat `dim,count` table.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("dim,count\n");
        for (d, c) in &self.total.counts {
            s.push_str(&format!("{d},{c}\n"));
        }
        s
    }
}

pub fn counts_json(d: &DegreeDistribution) -> Value {
    Value::Array(d.counts.iter().map(|(dim, count)| json!({"dim": dim, "count": count})).collect())
}

fn degree_key(field: &Field, rep: &Mat<Fq>) -> String {
    format!("stabilizer-degrees|{}|{}", serde_json::to_string(field.spec()).expect("spec"), rep.format(field))
}

/// Degree distribution of a matrix group given by generators.
pub fn degrees_of_generated(field: &Field, n: usize, gens: &[Mat<Fq>], cap: u64) -> Result<DegreeDistribution> {
    let elems = closure(field, n, gens, cap)?;
    let g = FiniteGroup::from_elements(field, elems, 1 << 16)?;
    Ok(g.character_degrees(cap, None)?.distribution)
}

pub fn clifford_distribution(field: &Field, n: usize, kind: RingKind, opts: &CountOptions, cache: &Cache) -> Result<CountReport> {
    let table = enumerate_orbits(field, n, opts.cap, opts.cap)?;
    clifford_from_table(&table, kind, opts, cache)
}

pub fn clifford_from_table(table: &OrbitTable, kind: RingKind, opts: &CountOptions, cache: &Cache) -> Result<CountReport> {
    let field = &table.field;
    let n = table.n;
    let records: Vec<OrbitRecord> = table
        .orbits
        .par_iter()
        .map(|o| {
            let degrees =
                cache.get_or_compute(&degree_key(field, &o.rep), || degrees_of_generated(field, n, &o.stab_gens, opts.cap))?;
            let extension = verify_extension(field, kind, &o.rep, &o.stab_gens, opts.extension, opts.cap)?;
            if !extension.extends {
                let ring = LocalRing::new(field.clone(), kind);
                let w = extension.witness.as_ref().map(|w| w.format(&ring)).unwrap_or_default();
                return Err(Error::Discrepancy(format!(
                    "psi_(x+Z) does not extend for x = {} over {kind}; commutator witness {w}",
                    o.rep.format(field)
                )));
            }
            Ok(OrbitRecord {
                rep: o.rep.clone(),
                orbit_size: o.size,
                stabilizer_order: table.group_order / o.size,
                index: o.size,
                stabilizer_degrees: degrees,
                extension,
            })
        })
        .collect::<Result<_>>()?;
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for r in &records {
        for (&d, &c) in &r.stabilizer_degrees.counts {
            *counts.entry(r.index * d).or_insert(0) += c;
        }
    }
    let order = group_order(n as u32, field.q() as u64, Linear::SL, 2);
    let report = CountReport {
        n,
        field: field.clone(),
        kind,
        method: Method::Clifford,
        total: DegreeDistribution { counts, group_order: order as u64 },
        orbits: records,
        classes: None,
    };
    if !report.check_invariants() {
        return Err(Error::Discrepancy("Clifford distribution violates the sum rules".into()));
    }
    Ok(report)
}

/// Degrees of `SL_n(O_2)` by enumerating the group.
pub fn direct_distribution(field: &Field, n: usize, kind: RingKind, cap: u64, cache: &Cache) -> Result<CountReport> {
    let key = format!("direct-degrees|{}|{n}|{kind}", serde_json::to_string(field.spec()).expect("spec"));
    let (dist, classes): (DegreeDistribution, usize) = cache.get_or_compute(&key, || {
        let ring = LocalRing::new(field.clone(), kind);
        let elems = sl_elements(&ring, n, cap)?;
        let g = FiniteGroup::from_elements(&ring, elems, 1 << 16)?;
        let rep = g.character_degrees(cap, None)?;
        Ok((rep.distribution, rep.classes))
    })?;
    let report = CountReport {
        n,
        field: field.clone(),
        kind,
        method: Method::Direct,
        orbits: Vec::new(),
        total: dist,
        classes: Some(classes),
    };
    if !report.check_invariants() {
        return Err(Error::Discrepancy("direct distribution violates the sum rules".into()));
    }
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct Comparison {
    pub clifford: Vec<CountReport>,
    pub direct: Vec<CountReport>,
    /// All produced distributions coincide.
    pub equal: bool,
}

impl Comparison {
    pub fn to_json(&self) -> Value {
        json!({
            "equal": self.equal,
            "clifford": self.clifford.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
            "direct": self.direct.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        })
    }
}

/// Clifford counts for both kinds, and direct counts when `|SL_n(O_2)| <= direct_cap`.
pub fn compare_rings(field: &Field, n: usize, opts: &CountOptions, direct_cap: u64, cache: &Cache) -> Result<Comparison> {
    let table = enumerate_orbits(field, n, opts.cap, opts.cap)?;
    let clifford = RingKind::ALL.iter().map(|&k| clifford_from_table(&table, k, opts, cache)).collect::<Result<Vec<_>>>()?;
    let order = group_order(n as u32, field.q() as u64, Linear::SL, 2);
    let direct = if order <= direct_cap as u128 {
        RingKind::ALL.iter().map(|&k| direct_distribution(field, n, k, direct_cap, cache)).collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    let first = &clifford[0].total;
    let equal = clifford.iter().chain(&direct).all(|r| r.total == *first);
    Ok(Comparison { clifford, direct, equal })
}

/// The direct distribution for a local ring given explicitly.
pub fn direct_for_ring(ring: &LocalRing, n: usize, cap: u64) -> Result<DegreeDistribution> {
    let elems = sl_elements(ring, n, cap)?;
    let g = FiniteGroup::from_elements(ring, elems, 1 << 16)?;
    if g.order() as u128 != group_order(n as u32, ring.residue_field().q() as u64, Linear::SL, 2) {
        return Err(Error::Discrepancy("SL_n(O_2) enumeration has the wrong order".into()));
    }
    Ok(g.character_degrees(cap, None)?.distribution)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_at_2_2() {
        let f = Field::prime(2).unwrap();
        let cache = Cache::disabled();
        let opts = CountOptions::default();
        let cmp = compare_rings(&f, 2, &opts, 1000, &cache).unwrap();
        assert!(cmp.equal);
        assert_eq!(cmp.direct.len(), 2);
        let c = &cmp.clifford[0];
        assert_eq!(c.total.sum_of_squares(), 48);
        assert!(c.check_structure(&c.orbits));
        assert_eq!(c.total.total() as usize, cmp.direct[0].classes.unwrap());
        let zero = c.orbits.iter().find(|o| o.index == 1 && o.rep.is_zero(&f)).unwrap();
        assert_eq!(zero.stabilizer_degrees.counts, [(1, 2), (2, 1)].into_iter().collect());
        let js = c.to_json();
        assert_eq!(js["method"], "clifford");
        assert!(c.to_csv().starts_with("dim,count\n"));
    }
}
