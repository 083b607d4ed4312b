//! Exhaustive checks of the ring structures.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::{check_budget, Result};
use crate::ring::{Field, LocalRing, Ring};

/// Whether `W_2(F_p) -> Z/p^2` is a bijective ring homomorphism, over all pairs.
pub fn zp2_isomorphism(p: u32) -> Result<bool> {
    let ring = LocalRing::witt(Field::prime(p)?);
    let m = (p * p) as u64;
    let elems = ring.elements();
    let phi = |e| ring.witt_to_zp2(e).expect("W_2(F_p)");
    let image: HashSet<u64> = elems.iter().map(|&e| phi(e)).collect();
    if image.len() as u64 != m || phi(ring.one()) != 1 {
        return Ok(false);
    }
    Ok(elems.par_iter().all(|&a| {
        elems.iter().all(|&b| phi(ring.add(a, b)) == (phi(a) + phi(b)) % m && phi(ring.mul(a, b)) == phi(a) * phi(b) % m)
    }))
}

/// Commutative ring axioms and the unit/valuation structure, over all triples.
pub fn ring_axioms<R: Ring>(ring: &R, cap: u64) -> Result<bool> {
    let elems = ring.elements();
    check_budget("ring triples", (elems.len() as u128).pow(3), cap)?;
    let (zero, one) = (ring.zero(), ring.one());
    let singles = elems.iter().all(|&a| {
        ring.add(a, zero) == a
            && ring.mul(a, one) == a
            && ring.add(a, ring.neg(a)) == zero
            && ring.is_unit(a) == (ring.valuation(a) == 0)
            && ring.inv(a).map_or(!ring.is_unit(a), |b| ring.mul(a, b) == one)
            && ring.reduce(ring.teichmuller(ring.reduce(a))) == ring.reduce(a)
    });
    let triples = elems.par_iter().all(|&a| {
        elems.iter().all(|&b| {
            ring.add(a, b) == ring.add(b, a)
                && ring.mul(a, b) == ring.mul(b, a)
                && elems.iter().all(|&c| {
                    ring.add(ring.add(a, b), c) == ring.add(a, ring.add(b, c))
                        && ring.mul(ring.mul(a, b), c) == ring.mul(a, ring.mul(b, c))
                        && ring.mul(a, ring.add(b, c)) == ring.add(ring.mul(a, b), ring.mul(a, c))
                })
        })
    });
    Ok(singles && triples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingKind;

    #[test]
    fn small_cases() {
        for p in [2, 3, 5] {
            assert!(zp2_isomorphism(p).unwrap());
        }
        for kind in RingKind::ALL {
            assert!(ring_axioms(&LocalRing::new(Field::gf(2, 2).unwrap(), kind), 1 << 20).unwrap());
        }
        assert!(ring_axioms(&Field::gf(3, 2).unwrap(), 1 << 20).unwrap());
    }
}
