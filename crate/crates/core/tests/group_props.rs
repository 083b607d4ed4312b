use std::collections::HashSet;

use l2rep::characters::psi_value;
use l2rep::chartable::FiniteGroup;
use l2rep::group::{kernel_element, sl_elements, trace_zero_matrices};
use l2rep::matrix::{group_order, Linear, Mat};
use l2rep::orbits::enumerate_orbits;
use l2rep::ring::{Field, LocalRing, Ring, RingKind};
use l2rep::stabilizer::{coset_key, stabilizer_brute_force};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn orbit_sizes_and_stabilisers() {
    for (n, p, e) in [(2, 2, 1), (2, 3, 1), (2, 2, 2), (3, 2, 1), (2, 5, 1)] {
        let f = Field::gf(p, e).unwrap();
        let t = enumerate_orbits(&f, n, 1 << 24, 1 << 24).unwrap();
        let q = f.q() as u64;
        assert_eq!(t.coset_count(), q.pow((n * n - 1) as u32));
        assert_eq!(t.orbits.iter().map(|o| o.size).sum::<u64>(), t.coset_count());
        assert_eq!(t.group_order as u128, group_order(n as u32, q, Linear::SL, 1));
        for (i, o) in t.orbits.iter().enumerate() {
            assert_eq!(t.orbit_index(&o.rep), i);
            assert_eq!(t.group_order % o.size, 0);
            let stab = t.stabilizer_subgroup(i, 1 << 24).unwrap();
            assert_eq!(stab.len() as u64 * o.size, t.group_order);
            let key = coset_key(&f, &o.rep);
            for g in &stab {
                let gi = g.inverse(&f).unwrap();
                assert_eq!(coset_key(&f, &o.rep.conjugate(&f, g, &gi)), key);
            }
        }
    }
}

#[test]
fn stabiliser_matches_brute_force_at_2_3() {
    let f = Field::prime(3).unwrap();
    let s = sl_elements(&f, 2, 1 << 20).unwrap();
    let t = enumerate_orbits(&f, 2, 1 << 20, 1 << 20).unwrap();
    for (i, o) in t.orbits.iter().enumerate() {
        let a: HashSet<_> = t.stabilizer_subgroup(i, 1 << 20).unwrap().into_iter().collect();
        let b: HashSet<_> = stabilizer_brute_force(&f, &s, &o.rep).into_iter().collect();
        assert_eq!(a, b);
    }
}

#[test]
fn psi_is_a_character_and_separates_cosets() {
    let f = Field::prime(2).unwrap();
    let xs: Vec<Mat<_>> = (0..16u32).map(|c| Mat::from_fn(2, |i, j| l2rep::ring::Fq::from_code((c >> (2 * i + j)) & 1))).collect();
    let ys = trace_zero_matrices(&f, 2, 1 << 10).unwrap();
    for kind in RingKind::ALL {
        let ring = LocalRing::new(f.clone(), kind);
        let ks: Vec<_> = ys.iter().map(|y| kernel_element(&ring, y)).collect();
        let mut seen = HashSet::new();
        for x in &xs {
            for a in &ks {
                for b in &ks {
                    let ab = a.mul(&ring, b);
                    let lhs = psi_value(&f, kind, x, &ab).unwrap();
                    let rhs = (psi_value(&f, kind, x, a).unwrap() + psi_value(&f, kind, x, b).unwrap()) % 2;
                    assert_eq!(lhs, rhs);
                }
            }
            let profile: Vec<u32> = ks.iter().map(|k| psi_value(&f, kind, x, k).unwrap()).collect();
            seen.insert((coset_key(&f, x), profile));
        }
        assert_eq!(seen.len(), 8);
        let profiles: HashSet<_> = seen.iter().map(|(_, p)| p.clone()).collect();
        assert_eq!(profiles.len(), 8);
    }
}

fn degrees_after_shuffle(seed: u64) -> (Vec<(u64, u64)>, usize) {
    let f = Field::prime(3).unwrap();
    let mut els = sl_elements(&f, 2, 1 << 20).unwrap();
    els.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let g = FiniteGroup::from_elements(&f, els, 1 << 20).unwrap();
    let r = g.character_degrees(1 << 24, None).unwrap();
    (r.distribution.counts.into_iter().collect(), r.classes)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]
    #[test]
    fn character_degrees_ignore_labelling(seed in any::<u64>()) {
        prop_assert_eq!(degrees_after_shuffle(seed), (vec![(1, 3), (2, 3), (3, 1)], 7));
    }
}

#[test]
fn dual_ring_group_order() {
    let f = Field::prime(2).unwrap();
    let ring = LocalRing::dual(f);
    let s = sl_elements(&ring, 2, 1 << 20).unwrap();
    assert_eq!(s.len(), 48);
    assert!(s.iter().all(|g| g.det(&ring) == ring.one()));
}
