//! Every reproduction check as a PASS/FAIL table. Pass `--quick` to skip n = 3, q = 3.

use l2rep::reproduce::{render_table, reproduce_all};

fn main() -> l2rep::Result<()> {
    let quick = std::env::args().any(|a| a == "--quick");
    let rows = reproduce_all(quick)?;
    print!("{}", render_table(&rows));
    if rows.iter().any(|r| !r.passed) {
        std::process::exit(1);
    }
    Ok(())
}
