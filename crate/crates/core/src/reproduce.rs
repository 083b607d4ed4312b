//! The full reproduction suite as a table of checks.

use serde::Serialize;

use crate::cache::Cache;
use crate::centralizer::{
    all_weyr_matrices, centralizer_basis, centralizer_group, check_reduction_surjectivity, check_x_lambda_surjectivity,
    small_lambdas, weyr_pattern,
};
use crate::characters::{verify_extension, ExtensionMode};
use crate::chartable::{DegreeDistribution, FiniteGroup};
use crate::clifford::{compare_rings, CountOptions};
use crate::error::Result;
use crate::group::sl_elements;
use crate::matrix::{group_order, Linear};
use crate::orbits::enumerate_orbits;
use crate::ring::checks::{ring_axioms, zp2_isomorphism};
use crate::ring::{Field, LocalRing, RingKind};
use crate::splitting::{dual_splitting_section, e12, lift_order_search, remark_witnesses, verify_power_formula};
use crate::stabilizer::{build_v, find_shift, generated_by, stabilizer_brute_force};
use crate::weyr::{conjugate_partition, example_7x7, weyr_decompose, WeyrBlock};

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn row(id: u32, name: &str, check: impl FnOnce() -> Result<(bool, String)>) -> Row {
    let (passed, detail) = match check() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    Row { id, name: name.to_string(), passed, detail }
}

const CAP: u64 = 1 << 24;

pub const SCALES: [(usize, u32, u32); 4] = [(2, 2, 1), (2, 3, 1), (2, 2, 2), (3, 2, 1)];

/// With `quick`, the `(3, 3)` rows are skipped.
pub fn reproduce_all(quick: bool) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    rows.push(row(1, "ring foundation", || {
        let iso = [2, 3, 5].iter().map(|&p| zp2_isomorphism(p)).collect::<Result<Vec<_>>>()?;
        let rings = [
            ring_axioms(&LocalRing::witt(Field::gf(2, 2)?), CAP)?,
            ring_axioms(&LocalRing::witt(Field::gf(3, 2)?), CAP)?,
            ring_axioms(&LocalRing::dual(Field::gf(2, 2)?), CAP)?,
        ];
        Ok((iso.iter().chain(&rings).all(|&b| b), format!("Z/p^2 {iso:?}, axioms {rings:?}")))
    }));
    rows.push(row(2, "Weyr golden case", || {
        let f = Field::prime(3)?;
        let dec = weyr_decompose(&f, &example_7x7(&f), 1 << 12)?;
        let b = &dec.structure.blocks;
        let dim = centralizer_basis(&f, &example_7x7(&f)).rank();
        let pat = weyr_pattern(&[WeyrBlock { eigenvalue: b[0].eigenvalue, partition: b[0].partition.clone() }])?;
        let ok = b.len() == 1
            && b[0].partition == [3, 2, 2]
            && conjugate_partition(&b[0].partition) == [3, 3, 1]
            && dim == 17
            && pat.lambda == [(2, 3), (1, 1)]
            && pat.dimension() == 17;
        Ok((ok, format!("partition {:?}, dim {dim}, pattern {:?}", b[0].partition, pat.lambda)))
    }));
    rows.push(row(3, "centraliser reduction surjective", || {
        let mut count = 0;
        for (n, p, e) in SCALES {
            let f = Field::gf(p, e)?;
            for x in all_weyr_matrices(&f, n) {
                for kind in RingKind::ALL {
                    if !check_reduction_surjectivity(&f, &x, kind, CAP)?.holds {
                        return Ok((false, format!("fails at {}", x.format(&f))));
                    }
                    count += 1;
                }
            }
        }
        Ok((true, format!("{count} cases")))
    }));
    rows.push(row(4, "coset stabiliser is <v> C_S(x)", || {
        let mut count = 0;
        for (n, p, e) in SCALES {
            let f = Field::gf(p, e)?;
            let s = sl_elements(&f, n, CAP)?;
            for x in all_weyr_matrices(&f, n) {
                let brute = stabilizer_brute_force(&f, &s, &x);
                let cent = centralizer_group(&f, &x, true, CAP)?;
                let idx = brute.len() / cent.len();
                let generated = match find_shift(&f, &x)? {
                    Some(shift) => generated_by(&f, &build_v(&f, &x, &shift)?, &cent),
                    None => cent.clone(),
                };
                let a: std::collections::HashSet<_> = generated.iter().collect();
                let b: std::collections::HashSet<_> = brute.iter().collect();
                if a != b || !(idx == 1 || idx == p as usize) {
                    return Ok((false, format!("fails at {}", x.format(&f))));
                }
                count += 1;
            }
        }
        Ok((true, format!("{count} cases")))
    }));
    rows.push(row(5, "X_lambda lifts", || {
        let lambdas = small_lambdas(5, 5);
        for q in [2, 3] {
            let f = Field::prime(q)?;
            for l in &lambdas {
                for kind in RingKind::ALL {
                    if !check_x_lambda_surjectivity(&f, l, kind, CAP)?.surjective {
                        return Ok((false, format!("fails for {l:?} over F_{q}")));
                    }
                }
            }
        }
        Ok((true, format!("{} lambdas, q in {{2, 3}}", lambdas.len())))
    }));
    rows.push(row(6, "extension criterion", || {
        let mut detail = Vec::new();
        let mut scales: Vec<(usize, u32, u32, bool)> = vec![(2, 2, 1, false), (2, 3, 1, false), (2, 2, 2, true)];
        if !quick {
            scales.push((3, 3, 1, true));
        }
        for (n, p, e, sampled) in scales {
            let f = Field::gf(p, e)?;
            let t = enumerate_orbits(&f, n, CAP, CAP)?;
            let mode = if sampled { ExtensionMode::Sampled { samples: 200, seed: 0 } } else { ExtensionMode::Exhaustive };
            for kind in RingKind::ALL {
                for o in &t.orbits {
                    if !verify_extension(&f, kind, &o.rep, &o.stab_gens, mode, CAP)?.extends {
                        return Ok((false, format!("fails at {} over {kind}", o.rep.format(&f))));
                    }
                }
            }
            detail.push(format!("({n},{}) {} orbits", f.q(), t.orbits.len()));
        }
        Ok((true, detail.join(", ")))
    }));
    rows.push(row(7, "direct = Clifford", || {
        let mut detail = Vec::new();
        for (p, e, sum) in [(2, 1, 48u128), (3, 1, 648), (2, 2, 3840)] {
            let f = Field::gf(p, e)?;
            let cmp = compare_rings(&f, 2, &CountOptions::default(), 1 << 16, &Cache::disabled())?;
            let ok = cmp.equal && cmp.direct.len() == 2 && cmp.clifford[0].total.sum_of_squares() == sum;
            if !ok {
                return Ok((false, format!("mismatch at q = {}", f.q())));
            }
            detail.push(format!("q={} sum {sum}", f.q()));
        }
        Ok((true, detail.join(", ")))
    }));
    if !quick {
        rows.push(row(8, "Clifford count at (3,3)", || {
            let f = Field::prime(3)?;
            let opts = CountOptions { cap: CAP, extension: ExtensionMode::Sampled { samples: 200, seed: 0 } };
            let cmp = compare_rings(&f, 3, &opts, 0, &Cache::disabled())?;
            let sum = cmp.clifford[0].total.sum_of_squares();
            let ok = cmp.equal
                && cmp.clifford.iter().all(|r| r.check_invariants())
                && sum == 36_846_576
                && sum == group_order(3, 3, Linear::SL, 2);
            Ok((ok, format!("sum {sum}, {} orbits", cmp.clifford[0].orbits.len())))
        }));
    }
    rows.push(row(9, "splitting", || {
        let f5 = Field::prime(5)?;
        let f2 = Field::prime(2)?;
        let none25 = lift_order_search(&f5, RingKind::Witt2, &e12(&f5, 2), CAP, 0, 0)?.found.is_none();
        let none22 = lift_order_search(&f2, RingKind::Witt2, &e12(&f2, 2), CAP, 0, 0)?.found.is_none();
        let rem = remark_witnesses()?;
        let wit = rem.witnesses.iter().all(|w| w.det == 1 && w.order_p && w.witt_agrees) && rem.square_one_dets_2_2 == [3];
        let sec = [2, 3].iter().all(|&p| {
            dual_splitting_section(&Field::prime(p).expect("prime"), 2, CAP)
                .map(|s| s.section && s.homomorphism && s.orders_preserved)
                .unwrap_or(false)
        });
        let pf = verify_power_formula(&f5, 2, CAP, 0, 0)?;
        let ok = none25 && none22 && wit && sec && pf.power_holds && pf.commutator_holds && pf.checked == 625;
        Ok((ok, format!("(2,5) none {none25}, (2,2) none {none22}, witnesses {wit}, section {sec}, power formula {}", pf.power_holds)))
    }));
    rows.push(row(10, "character degree oracle", || {
        let f3 = Field::prime(3)?;
        let g = FiniteGroup::from_elements(&f3, sl_elements(&f3, 2, CAP)?, CAP)?;
        let rep = g.character_degrees(CAP, None)?;
        let expected = DegreeDistribution { counts: [(1, 3), (2, 3), (3, 1)].into_iter().collect(), group_order: 24 };
        let ok = rep.distribution == expected && rep.primes.len() == 2 && rep.distribution.check(rep.classes);
        Ok((ok, format!("SL_2(F_3) {:?} with primes {:?}", rep.distribution.counts, rep.primes)))
    }));
    Ok(rows)
}

/// `id,status,name,detail` lines.
pub fn render_table(rows: &[Row]) -> String {
    let mut s = String::from("id,status,name,detail\n");
    for r in rows {
        s.push_str(&format!("{},{},{},\"{}\"\n", r.id, if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail.replace('"', "'")));
    }
    s
}
