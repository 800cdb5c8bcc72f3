//! `Gamma(s_r chi, xi) / Gamma(chi, xi) = c_r^{-1} gamma_r` for every simple root.

use shintani::zetafactors::{gamma_consistency, Context};

fn main() -> shintani::Result<()> {
    for (n, m) in [(2, 1), (3, 1), (3, 2)] {
        let ctx = Context::new(n, m)?;
        for r in gamma_consistency(ctx)? {
            println!(
                "(n,m)=({n},{m}) {:<10} {}",
                r.root,
                if r.passed { "ok" } else { "MISMATCH" }
            );
        }
    }
    Ok(())
}
