//! Orbits of SL_n(F_q) on M_n(F_q)/Z with stabiliser orders.

use l2rep::orbits::enumerate_orbits;
use l2rep::ring::Field;

fn main() -> l2rep::Result<()> {
    for (n, p) in [(2, 2), (2, 3), (3, 2)] {
        let f = Field::prime(p)?;
        let t = enumerate_orbits(&f, n, 1 << 24, 1 << 24)?;
        println!("n = {n}, q = {p}: {} cosets, {} orbits", t.coset_count(), t.orbits.len());
        for o in &t.orbits {
            println!("  {:<24} size {:<4} stabiliser {}", o.rep.format(&f), o.size, t.group_order / o.size);
        }
    }
    Ok(())
}
