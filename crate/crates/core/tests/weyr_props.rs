use l2rep::centralizer::{centralizer_basis, pattern_rule, weyr_pattern};
use l2rep::matrix::Mat;
use l2rep::ring::{Field, Fq};
use l2rep::weyr::{build_basic_weyr, conjugate_partition, partitions, read_weyr_form, weyr_decompose, WeyrBlock};
use proptest::prelude::*;

#[test]
fn pattern_matches_rule_and_linear_algebra() {
    let f = Field::prime(2).unwrap();
    for m in 1..=7 {
        for part in partitions(m) {
            let blocks = [WeyrBlock { eigenvalue: Fq::ZERO, partition: part.clone() }];
            let pat = weyr_pattern(&blocks).unwrap();
            assert_eq!(pat.lambda, pattern_rule(&part), "{part:?}");
            let w = build_basic_weyr(&f, Fq::ZERO, &part).unwrap();
            assert_eq!(centralizer_basis(&f, &w).rank(), pat.dimension(), "{part:?}");
            let jordan = conjugate_partition(&part);
            let dim: usize = jordan.iter().enumerate().map(|(i, &a)| (2 * i + 1) * a).sum();
            assert_eq!(pat.dimension(), dim, "{part:?}");
        }
    }
}

#[test]
fn basic_weyr_reads_back() {
    let f = Field::prime(3).unwrap();
    for m in 1..=6 {
        for part in partitions(m) {
            let w = build_basic_weyr(&f, Fq::ONE, &part).unwrap();
            assert_eq!(read_weyr_form(&f, &w), Some(vec![(Fq::ONE, part.clone())]));
        }
    }
}

proptest! {
    #[test]
    fn weyr_form_is_conjugate(p in prop::sample::select(vec![2u32, 3]), n in 1usize..5, codes in proptest::collection::vec(0u32..3, 16)) {
        let f = Field::prime(p).unwrap();
        let x = Mat::from_fn(n, |i, j| Fq::from_code(codes[i * n + j] % p));
        let dec = weyr_decompose(&f, &x, 1 << 12).unwrap();
        let k = dec.structure.field.clone();
        let xk = x.map(|a| dec.embedding.apply(a));
        let w = dec.structure.matrix();
        prop_assert!(dec.g.mul(&k, &dec.g_inv).is_identity(&k));
        prop_assert_eq!(dec.g.mul(&k, &xk).mul(&k, &dec.g_inv), w.clone());
        prop_assert_eq!(centralizer_basis(&k, &w).rank(), dec.structure.centralizer_dimension());
    }
}
