//! Character degrees of a finite matrix group via class multiplication coefficients.

use l2rep::chartable::FiniteGroup;
use l2rep::group::sl_elements;
use l2rep::matrix::Mat;
use l2rep::ring::Field;

fn main() -> l2rep::Result<()> {
    let f3 = Field::prime(3)?;
    let g = FiniteGroup::from_elements(&f3, sl_elements(&f3, 2, 1 << 20)?, 1 << 20)?;
    let r = g.character_degrees(1 << 24, None)?;
    println!("SL_2(F_3): {:?}, {} classes, exponent {}, primes {:?}", r.distribution.counts, r.classes, r.exponent, r.primes);

    let f2 = Field::prime(2)?;
    let gens = [Mat::parse(&f2, "1,1,0;0,1,0;0,0,1")?, Mat::parse(&f2, "0,0,1;1,0,0;0,1,0")?];
    let g = FiniteGroup::from_generators(&f2, 3, &gens, 1 << 20)?;
    let r = g.character_degrees(1 << 24, None)?;
    println!("GL_3(F_2), order {}: {:?}", g.order(), r.distribution.counts);
    Ok(())
}
