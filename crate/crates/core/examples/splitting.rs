//! Order-p lifts of e_12: none over W_2(F_p) when p >= 5 or (n, p) = (2, 2), always over F_q[t]/t^2.

use l2rep::ring::{Field, LocalRing, RingKind};
use l2rep::splitting::{dual_splitting_section, e12, lift_order_search, remark_witnesses, verify_power_formula};

fn main() -> l2rep::Result<()> {
    for p in [2, 3, 5] {
        let f = Field::prime(p)?;
        for kind in RingKind::ALL {
            let r = lift_order_search(&f, kind, &e12(&f, 2), 1 << 24, 0, 0)?;
            let ring = LocalRing::new(f.clone(), kind);
            let found = r.found.as_ref().map_or("none".to_string(), |m| m.format(&ring));
            println!("p = {p} {kind:<5}: {} det-1 lifts, order-p lift {found}", r.det_one_lifts);
        }
    }
    let pf = verify_power_formula(&Field::prime(5)?, 2, 1 << 24, 0, 0)?;
    println!("power formula over W_2(F_5): {} on {} lifts", pf.power_holds, pf.checked);
    for w in remark_witnesses()?.witnesses {
        println!("witness n = {} p = {}: det {}, order p {}", w.n, w.p, w.det, w.order_p);
    }
    let s = dual_splitting_section(&Field::prime(3)?, 2, 1 << 24)?;
    println!("F_3[t]/t^2 section a -> (a, 0): homomorphism {}", s.homomorphism);
    Ok(())
}
