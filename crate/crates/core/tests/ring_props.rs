use l2rep::matrix::Mat;
use l2rep::ring::{Field, LocalRing, Ring, RingKind, R2};
use proptest::prelude::*;

fn rings() -> Vec<LocalRing> {
    let mut v = Vec::new();
    for (p, e) in [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1), (7, 1)] {
        for kind in RingKind::ALL {
            v.push(LocalRing::new(Field::gf(p, e).unwrap(), kind));
        }
    }
    v
}

fn pick(ring: &LocalRing, i: usize) -> R2 {
    let els = ring.elements();
    els[i % els.len()]
}

proptest! {
    #[test]
    fn ring_laws(r in 0usize..12, i in 0usize..10_000, j in 0usize..10_000, k in 0usize..10_000) {
        let ring = &rings()[r];
        let (a, b, c) = (pick(ring, i), pick(ring, j), pick(ring, k));
        prop_assert_eq!(ring.add(ring.add(a, b), c), ring.add(a, ring.add(b, c)));
        prop_assert_eq!(ring.mul(ring.mul(a, b), c), ring.mul(a, ring.mul(b, c)));
        prop_assert_eq!(ring.mul(a, ring.add(b, c)), ring.add(ring.mul(a, b), ring.mul(a, c)));
        prop_assert_eq!(ring.add(a, b), ring.add(b, a));
        prop_assert_eq!(ring.mul(a, b), ring.mul(b, a));
        prop_assert_eq!(ring.add(a, ring.neg(a)), ring.zero());
        prop_assert_eq!(ring.reduce(ring.mul(a, b)), ring.residue_field().mul(ring.reduce(a), ring.reduce(b)));
        if ring.is_unit(a) {
            prop_assert_eq!(ring.mul(a, ring.inv(a).unwrap()), ring.one());
        } else {
            prop_assert!(ring.inv(a).is_none());
            prop_assert_eq!(ring.mul(a, ring.uniformizer()), ring.zero());
        }
    }

    #[test]
    fn teichmuller_is_multiplicative(r in 0usize..12, i in 0usize..1000, j in 0usize..1000) {
        let ring = &rings()[r];
        let f = ring.residue_field();
        let els: Vec<_> = f.elements().collect();
        let (a, b) = (els[i % els.len()], els[j % els.len()]);
        prop_assert_eq!(ring.teichmuller(f.mul(a, b)), ring.mul(ring.teichmuller(a), ring.teichmuller(b)));
        prop_assert_eq!(ring.reduce(ring.teichmuller(a)), a);
    }

    #[test]
    fn witt_matches_integers_mod_p2(pi in 0usize..4, i in 0usize..1000, j in 0usize..1000) {
        let p = [2u32, 3, 5, 7][pi];
        let ring = LocalRing::witt(Field::prime(p).unwrap());
        let m = (p * p) as u64;
        let (a, b) = (pick(&ring, i), pick(&ring, j));
        let (x, y) = (ring.witt_to_zp2(a).unwrap(), ring.witt_to_zp2(b).unwrap());
        prop_assert_eq!(ring.witt_to_zp2(ring.add(a, b)).unwrap(), (x + y) % m);
        prop_assert_eq!(ring.witt_to_zp2(ring.mul(a, b)).unwrap(), (x * y) % m);
    }

    #[test]
    fn matrix_det_and_inverse(r in 0usize..12, n in 1usize..5, seed in proptest::collection::vec(0usize..10_000, 32)) {
        let ring = &rings()[r];
        let a = Mat::from_fn(n, |i, j| pick(ring, seed[i * n + j]));
        let b = Mat::from_fn(n, |i, j| pick(ring, seed[16 + i * n + j]));
        prop_assert_eq!(a.mul(ring, &b).det(ring), ring.mul(a.det(ring), b.det(ring)));
        prop_assert_eq!(a.det(ring), a.det_cofactor(ring));
        match a.inverse(ring) {
            Ok(inv) => {
                prop_assert!(a.mul(ring, &inv).is_identity(ring));
                prop_assert!(ring.is_unit(a.det(ring)));
            }
            Err(_) => prop_assert!(!ring.is_unit(a.det(ring))),
        }
    }
}
