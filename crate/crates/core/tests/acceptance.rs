//! One PASS/FAIL line per acceptance criterion, with the wall-clock limit of each.

use std::collections::{BTreeMap, HashSet};
use std::time::{Duration, Instant};

use l2rep::cache::Cache;
use l2rep::centralizer::{
    all_weyr_matrices, centralizer_basis, centralizer_group, check_reduction_surjectivity, check_x_lambda_surjectivity,
    small_lambdas, weyr_pattern,
};
use l2rep::characters::{verify_extension, ExtensionMode};
use l2rep::chartable::FiniteGroup;
use l2rep::clifford::{clifford_distribution, compare_rings, CountOptions, Method};
use l2rep::group::sl_elements;
use l2rep::matrix::{group_order, Linear};
use l2rep::orbits::enumerate_orbits;
use l2rep::ring::checks::{ring_axioms, zp2_isomorphism};
use l2rep::ring::{Field, LocalRing, RingKind};
use l2rep::splitting::{dual_splitting_section, e12, lift_order_search, remark_witnesses, verify_power_formula};
use l2rep::stabilizer::{build_v, find_shift, generated_by, stabilizer_brute_force};
use l2rep::weyr::{conjugate_partition, example_7x7, weyr_decompose};

const CAP: u64 = 1 << 24;
const SCALES: [(usize, u32, u32); 4] = [(2, 2, 1), (2, 3, 1), (2, 2, 2), (3, 2, 1)];

fn gf(p: u32, e: u32) -> Field {
    Field::gf(p, e).unwrap()
}

fn dist(pairs: &[(u64, u64)]) -> BTreeMap<u64, u64> {
    pairs.iter().copied().collect()
}

fn criterion(id: u32, limit: Duration, check: impl FnOnce() -> Result<String, String>) -> bool {
    let start = Instant::now();
    let result = check();
    let elapsed = start.elapsed();
    let (ok, detail) = match result {
        Ok(d) if elapsed <= limit => (true, d),
        Ok(d) => (false, format!("{d}; took {elapsed:?}, limit {limit:?}")),
        Err(e) => (false, e),
    };
    println!("{} criterion {id}: {detail} [{:.2?}]", if ok { "PASS" } else { "FAIL" }, elapsed);
    ok
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn c1() -> Result<String, String> {
    for p in [2, 3, 5] {
        ensure(zp2_isomorphism(p).unwrap(), format!("W_2(F_{p}) is not Z/{}", p * p))?;
    }
    for ring in [LocalRing::witt(gf(2, 2)), LocalRing::witt(gf(3, 2)), LocalRing::dual(gf(2, 2))] {
        ensure(ring_axioms(&ring, CAP).unwrap(), format!("axioms fail for {ring:?}"))?;
    }
    Ok("Z/p^2 for p = 2, 3, 5; axioms for W_2(F_4), W_2(F_9), F_4[t]/t^2".into())
}

fn c2() -> Result<String, String> {
    let f = gf(3, 1);
    let x = example_7x7(&f);
    let dec = weyr_decompose(&f, &x, 1 << 12).unwrap();
    let blocks = &dec.structure.blocks;
    ensure(blocks.len() == 1 && blocks[0].partition == [3, 2, 2], format!("blocks {blocks:?}"))?;
    ensure(conjugate_partition(&blocks[0].partition) == [3, 3, 1], "conjugate partition")?;
    let solved = centralizer_basis(&f, &x).rank();
    ensure(solved == 17, format!("centraliser dimension {solved}"))?;
    let pat = weyr_pattern(blocks).unwrap();
    ensure(pat.lambda == [(2, 3), (1, 1)], format!("pattern {:?}", pat.lambda))?;
    ensure(pat.dimension() == solved, "pattern dimension differs from the linear solve")?;
    Ok("partition (3,2,2), conjugate (3,3,1), dimension 17, pattern {(2,3),(1,1)}".into())
}

fn c3() -> Result<String, String> {
    let mut cases = 0;
    for (n, p, e) in SCALES {
        let f = gf(p, e);
        for x in all_weyr_matrices(&f, n) {
            for kind in RingKind::ALL {
                let r = check_reduction_surjectivity(&f, &x, kind, CAP).unwrap();
                ensure(r.holds, format!("not onto at {} over {kind}", x.format(&f)))?;
                cases += 1;
            }
        }
    }
    Ok(format!("reduction onto for {cases} (x, kind) pairs"))
}

fn c4() -> Result<String, String> {
    let mut cases = 0;
    for (n, p, e) in SCALES {
        let f = gf(p, e);
        let s = sl_elements(&f, n, CAP).unwrap();
        for x in all_weyr_matrices(&f, n) {
            let brute: HashSet<_> = stabilizer_brute_force(&f, &s, &x).into_iter().collect();
            let cent = centralizer_group(&f, &x, true, CAP).unwrap();
            let built: HashSet<_> = match find_shift(&f, &x).unwrap() {
                Some(shift) => generated_by(&f, &build_v(&f, &x, &shift).unwrap(), &cent).into_iter().collect(),
                None => cent.iter().cloned().collect(),
            };
            ensure(brute == built, format!("<v>C_S(x) differs at {}", x.format(&f)))?;
            let index = brute.len() / cent.len();
            ensure(brute.len() % cent.len() == 0 && (index == 1 || index == p as usize), format!("index {index}"))?;
            cases += 1;
        }
    }
    Ok(format!("C_S(x+Z) = <v>C_S(x) for {cases} matrices"))
}

fn c5() -> Result<String, String> {
    let lambdas = small_lambdas(5, 5);
    ensure(lambdas.contains(&vec![(1, 2)]), "family is missing (1^2)")?;
    for q in [2, 3] {
        let f = gf(q, 1);
        for l in &lambdas {
            for kind in RingKind::ALL {
                let r = check_x_lambda_surjectivity(&f, l, kind, CAP).unwrap();
                ensure(r.surjective, format!("{l:?} over F_{q}, {kind}"))?;
            }
        }
    }
    Ok(format!("{} families over F_2 and F_3, both kinds", lambdas.len()))
}

fn c6() -> Result<String, String> {
    let plan = [
        (2, 2, 1, ExtensionMode::Exhaustive),
        (2, 3, 1, ExtensionMode::Exhaustive),
        (2, 2, 2, ExtensionMode::Sampled { samples: 200, seed: 0 }),
        (3, 3, 1, ExtensionMode::Sampled { samples: 200, seed: 0 }),
    ];
    let mut orbits = Vec::new();
    for (n, p, e, mode) in plan {
        let f = gf(p, e);
        let table = enumerate_orbits(&f, n, CAP, CAP).unwrap();
        for kind in RingKind::ALL {
            for o in &table.orbits {
                let v = verify_extension(&f, kind, &o.rep, &o.stab_gens, mode, CAP).unwrap();
                ensure(v.extends, format!("no extension at {} over {kind}", o.rep.format(&f)))?;
            }
        }
        orbits.push(table.orbits.len());
    }
    ensure(orbits == [4, 5, 8, 15], format!("orbit counts {orbits:?}"))?;
    Ok(format!("extensions exist on {orbits:?} orbits"))
}

fn c7() -> Result<String, String> {
    let expected = [
        (2, 1, 48u128, dist(&[(1, 4), (2, 2), (3, 4)])),
        (3, 1, 648, dist(&[(1, 3), (2, 3), (3, 1), (4, 12), (6, 4), (12, 2)])),
        (2, 2, 3840, dist(&[(1, 1), (3, 2), (4, 1), (5, 1), (6, 6), (10, 6), (12, 6), (15, 4), (20, 3)])),
    ];
    for (p, e, sum, counts) in expected {
        let f = gf(p, e);
        let cmp = compare_rings(&f, 2, &CountOptions::default(), 1 << 16, &Cache::disabled()).unwrap();
        ensure(cmp.direct.len() == 2 && cmp.clifford.len() == 2, "missing a distribution")?;
        for r in cmp.clifford.iter().chain(&cmp.direct) {
            ensure(r.total.counts == counts, format!("{:?} {:?} at q = {}: {:?}", r.kind, r.method, f.q(), r.total.counts))?;
            ensure(r.total.sum_of_squares() == sum, "sum rule")?;
        }
    }
    Ok("direct = Clifford for both kinds at q = 2, 3, 4 with sums 48, 648, 3840".into())
}

fn c8() -> Result<String, String> {
    let f = gf(3, 1);
    let opts = CountOptions { cap: CAP, extension: ExtensionMode::Sampled { samples: 200, seed: 0 } };
    let order = group_order(3, 3, Linear::SL, 2);
    ensure(order == 5616 * 3u128.pow(8) && order == 36_846_576, format!("group order {order}"))?;
    let mut totals = Vec::new();
    for kind in RingKind::ALL {
        let r = clifford_distribution(&f, 3, kind, &opts, &Cache::disabled()).unwrap();
        ensure(r.method == Method::Clifford && r.check_invariants(), "invariants")?;
        ensure(r.check_structure(&r.orbits), "degrees are not index multiples")?;
        ensure(r.orbits.iter().all(|o| o.extension.extends), "extension")?;
        ensure(r.total.sum_of_squares() == order, format!("sum {}", r.total.sum_of_squares()))?;
        totals.push(r.total.counts);
    }
    ensure(totals[0] == totals[1], "Witt and dual distributions differ")?;
    Ok(format!("sum 36846576 over {} irreducible degrees, both kinds", totals[0].values().sum::<u64>()))
}

fn c9() -> Result<String, String> {
    for (p, count) in [(5, 125), (2, 8)] {
        let f = gf(p, 1);
        let r = lift_order_search(&f, RingKind::Witt2, &e12(&f, 2), CAP, 0, 0).unwrap();
        ensure(r.found.is_none() && r.det_one_lifts == count, format!("(2,{p}) search {:?}", r.det_one_lifts))?;
    }
    let rem = remark_witnesses().unwrap();
    ensure(rem.witnesses.len() == 2, "two witnesses")?;
    for w in &rem.witnesses {
        ensure(w.det == 1 && w.order_p && w.witt_agrees, format!("witness n = {}, p = {}", w.n, w.p))?;
    }
    for p in [2, 3] {
        let s = dual_splitting_section(&gf(p, 1), 2, CAP).unwrap();
        ensure(s.section && s.homomorphism && s.orders_preserved, format!("dual section at p = {p}"))?;
        let m = group_order(2, p as u64, Linear::SL, 1) as u64;
        ensure(s.pairs_checked == m * m, "section not exhaustive")?;
    }
    let pf = verify_power_formula(&gf(5, 1), 2, CAP, 0, 0).unwrap();
    ensure(pf.power_holds && pf.commutator_holds && pf.checked == 625, "power formula")?;
    Ok("no order-p lift at (2,5) and (2,2); witnesses at (3,2), (3,3); dual section; power formula on 625 lifts".into())
}

fn c10() -> Result<String, String> {
    let f3 = gf(3, 1);
    let g = FiniteGroup::from_elements(&f3, sl_elements(&f3, 2, CAP).unwrap(), CAP).unwrap();
    let r = g.character_degrees(CAP, None).unwrap();
    ensure(r.distribution.counts == dist(&[(1, 3), (2, 3), (3, 1)]), format!("{:?}", r.distribution.counts))?;
    ensure(r.primes.len() == 2 && r.primes[0] != r.primes[1], "two primes")?;
    ensure(r.classes == 7 && r.distribution.check(r.classes), "class count")?;
    for kind in RingKind::ALL {
        let ring = LocalRing::new(gf(2, 1), kind);
        let g = FiniteGroup::from_elements(&ring, sl_elements(&ring, 2, CAP).unwrap(), CAP).unwrap();
        let r = g.character_degrees(CAP, None).unwrap();
        ensure(r.primes.len() == 2 && r.distribution.total() == r.classes as u64, "classes differ from irreducibles")?;
    }
    Ok("SL_2(F_3) = {1:3, 2:3, 3:1}, two primes agree, classes = irreducibles".into())
}

fn main() {
    let secs = Duration::from_secs;
    let results = [
        criterion(1, secs(10), c1),
        criterion(2, secs(5), c2),
        criterion(3, secs(300), c3),
        criterion(4, secs(300), c4),
        criterion(5, secs(60), c5),
        criterion(6, secs(1800), c6),
        criterion(7, secs(7200), c7),
        criterion(8, secs(7200), c8),
        criterion(9, secs(300), c9),
        criterion(10, secs(60), c10),
    ];
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, &ok)| !ok).map(|(i, _)| i + 1).collect();
    if failed.is_empty() {
        println!("acceptance: all 10 criteria pass");
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
