//! Invariance of the unnormalized value under the generators of `W_G x W_M`.

use shintani::wsformula::{invariance_report, Mode, NumericConfig};
use shintani::zetafactors::Context;

fn main() -> shintani::Result<()> {
    let cfg = NumericConfig::default();
    let exact = invariance_report(Context::new(2, 1)?, &[1], &[1, 1], Mode::Exact, &cfg)?;
    let numeric = invariance_report(Context::new(3, 2)?, &[1, 0], &[2, 1, 0], Mode::Numeric, &cfg)?;
    for (label, rep) in [("(2,1) exact", exact), ("(3,2) numeric", numeric)] {
        println!("{label}: all passed = {}", rep.all_passed);
        for g in rep.generators {
            match g.max_deviation {
                Some(dev) => println!("  {:<10} {}  max deviation {dev:.2e}", g.generator, g.passed),
                None => println!("  {:<10} {}", g.generator, g.passed),
            }
        }
    }
    Ok(())
}
