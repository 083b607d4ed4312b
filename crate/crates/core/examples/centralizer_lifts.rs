//! Reduction C_{SL_n(O_2)}(s(x)) -> C_{SL_n(F_q)}(x) is onto, checked on every Weyr matrix.

use l2rep::centralizer::{all_weyr_matrices, check_reduction_surjectivity, check_x_lambda_surjectivity, small_lambdas};
use l2rep::ring::{Field, RingKind};

fn main() -> l2rep::Result<()> {
    let f = Field::prime(3)?;
    for x in all_weyr_matrices(&f, 2) {
        for kind in RingKind::ALL {
            let r = check_reduction_surjectivity(&f, &x, kind, 1 << 22)?;
            println!(
                "{:<12} {kind:<5} |C_S(x)| = {:<3} |C_S2(s(x))| = {:<5} onto: {}",
                x.format(&f),
                r.residue_order,
                r.lifted_order,
                r.holds
            );
        }
    }
    let f2 = Field::prime(2)?;
    for l in small_lambdas(4, 4) {
        let r = check_x_lambda_surjectivity(&f2, &l, RingKind::Witt2, 1 << 22)?;
        println!("lambda {l:?}: onto {}", r.surjective);
    }
    Ok(())
}
