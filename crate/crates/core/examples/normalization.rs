use shintani::wsformula::{normalization_closed_form, normalization_constant};
use shintani::zetafactors::Context;
use std::time::Instant;

fn main() -> shintani::Result<()> {
    for (n, m) in [(1, 0), (2, 1), (3, 1), (3, 2)] {
        let ctx = Context::new(n, m)?;
        let t = Instant::now();
        let c = normalization_constant(ctx)?;
        let ok = c == normalization_closed_form(ctx);
        println!(
            "(n,m)=({n},{m})  C = {c}  closed form match: {ok}  [{:.2?}]",
            t.elapsed()
        );
    }
    Ok(())
}
