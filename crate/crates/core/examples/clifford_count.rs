//! #Irr_d(SL_n(O_2)) by orbit data, compared with the direct count where feasible.

use l2rep::cache::Cache;
use l2rep::clifford::{compare_rings, CountOptions};
use l2rep::ring::Field;

fn main() -> l2rep::Result<()> {
    let opts = CountOptions::default();
    for (n, p, e) in [(2, 2, 1), (2, 3, 1), (2, 2, 2)] {
        let f = Field::gf(p, e)?;
        let cmp = compare_rings(&f, n, &opts, 1 << 16, &Cache::disabled())?;
        println!("n = {n}, q = {}: all methods agree: {}", f.q(), cmp.equal);
        for r in cmp.clifford.iter().chain(&cmp.direct) {
            println!("  {:<5} {:?} {:?}", r.kind.to_string(), r.method, r.total.counts);
        }
    }
    Ok(())
}
