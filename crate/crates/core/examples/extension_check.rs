//! psi_(x+Z) extends to the inverse image of C_S(x+Z), for every orbit.

use l2rep::characters::{glue_check, verify_extension, ExtensionMode};
use l2rep::matrix::Mat;
use l2rep::orbits::enumerate_orbits;
use l2rep::ring::{Field, RingKind};

fn main() -> l2rep::Result<()> {
    let f = Field::prime(3)?;
    let t = enumerate_orbits(&f, 2, 1 << 24, 1 << 24)?;
    for kind in RingKind::ALL {
        for o in &t.orbits {
            let v = verify_extension(&f, kind, &o.rep, &o.stab_gens, ExtensionMode::Exhaustive, 1 << 24)?;
            println!("{kind:<5} {:<12} extends {} ({} commutators checked)", o.rep.format(&f), v.extends, v.checked);
        }
    }
    let y = Mat::parse(&f, "0,0;0,1")?;
    for kind in RingKind::ALL {
        let g = glue_check(&f, kind, &y, 1 << 24)?;
        println!("{kind:<5} glue character on C(s(y)): {g:?}");
    }
    Ok(())
}
