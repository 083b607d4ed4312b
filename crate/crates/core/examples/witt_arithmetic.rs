//! Arithmetic in W_2(F_q) and F_q[t]/t^2, and the isomorphism W_2(F_p) = Z/p^2.

use l2rep::ring::checks::{ring_axioms, zp2_isomorphism};
use l2rep::ring::{Field, LocalRing, Ring};

fn main() -> l2rep::Result<()> {
    let f3 = Field::prime(3)?;
    for ring in [LocalRing::witt(f3.clone()), LocalRing::dual(f3)] {
        let a = ring.parse("1;0")?;
        let b = ring.parse("1;1")?;
        println!("{}: (1;0) + (1;0) = {}", ring.kind(), ring.format(ring.add(a, a)));
        println!("{}: (1;0) + (1;1) = {}", ring.kind(), ring.format(ring.add(a, b)));
        println!("{}: uniformizer^2 = {}", ring.kind(), ring.format(ring.pow(ring.uniformizer(), 2)));
        println!("{}: ring axioms hold: {}", ring.kind(), ring_axioms(&ring, 1 << 24)?);
    }
    let w5 = LocalRing::witt(Field::prime(5)?);
    for a in ["2", "2;1", "0;1"] {
        let e = w5.parse(a)?;
        println!("W_2(F_5) {a} -> {:?} in Z/25", w5.witt_to_zp2(e));
    }
    for p in [2, 3, 5, 7] {
        println!("W_2(F_{p}) = Z/{}: {}", p * p, zp2_isomorphism(p)?);
    }
    Ok(())
}
