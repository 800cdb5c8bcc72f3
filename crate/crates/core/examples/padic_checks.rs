//! Full battery of seeded cell-calculus property checks.

use shintani::padic::verify_cells;

fn main() -> shintani::Result<()> {
    for (n, m) in [(2, 1), (3, 2)] {
        let report = verify_cells(n, m, 3, 100, 11)?;
        for c in &report.checks {
            println!(
                "(n,m)=({n},{m}) {:<28} {}/{} ok",
                c.name,
                c.cases - c.failures,
                c.cases
            );
        }
    }
    Ok(())
}
