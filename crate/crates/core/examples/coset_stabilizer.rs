//! C_S(x + Z) = <v> C_S(x), with the shift, v and its lift w.

use l2rep::matrix::Mat;
use l2rep::ring::Field;
use l2rep::stabilizer::coset_stabilizer;

fn main() -> l2rep::Result<()> {
    let f = Field::prime(2)?;
    for s in ["0,0;0,1", "0,1;0,0", "0,1;1,1"] {
        let x = Mat::parse(&f, s)?;
        let d = coset_stabilizer(&f, &x, 1 << 20, 1 << 12)?;
        println!("x = {s}: |C_S(x)| = {}, |C_S(x+Z)| = {}, index {}", d.centralizer.len(), d.stabilizer.len(), d.index());
    }
    let f3 = Field::prime(3)?;
    let d = coset_stabilizer(&f3, &Mat::parse(&f3, "0,0,0;0,1,0;0,0,2")?, 1 << 20, 1 << 12)?;
    println!("{}", serde_json::to_string_pretty(&d.to_json(&f3)).expect("json"));
    Ok(())
}
