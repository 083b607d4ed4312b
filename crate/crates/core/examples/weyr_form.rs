//! Weyr normal form of a matrix and the block pattern of its centraliser.

use l2rep::centralizer::{centralizer_basis, weyr_pattern};
use l2rep::matrix::Mat;
use l2rep::ring::Field;
use l2rep::weyr::{conjugate_partition, example_7x7, weyr_decompose};

fn main() -> l2rep::Result<()> {
    let f = Field::prime(3)?;
    let x = example_7x7(&f);
    let dec = weyr_decompose(&f, &x, 1 << 12)?;
    for b in &dec.structure.blocks {
        println!(
            "eigenvalue {}: Weyr partition {:?}, Jordan partition {:?}",
            f.format(b.eigenvalue),
            b.partition,
            conjugate_partition(&b.partition)
        );
    }
    let pat = weyr_pattern(&dec.structure.blocks)?;
    println!("centraliser pattern {:?}, dimension {}", pat.lambda, pat.dimension());
    println!("dim C(x) by linear algebra: {}", centralizer_basis(&f, &x).rank());

    // Irreducible characteristic polynomial: eigenvalues live in F_9.
    let y = Mat::parse(&f, "0,1;-1,0")?;
    let dec = weyr_decompose(&f, &y, 1 << 12)?;
    println!("{}", serde_json::to_string_pretty(&dec.to_json()).expect("json"));
    Ok(())
}
