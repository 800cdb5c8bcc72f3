//! Exact values of the normalized function on a few dominant pairs, plus a
//! numeric evaluation at a sample point.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use shintani::wsformula::{l_value, l_value_numeric, NumericConfig};
use shintani::zetafactors::Context;

fn main() -> shintani::Result<()> {
    let ctx = Context::new(2, 1)?;
    let cfg = NumericConfig::default();
    let point = cfg.sample(ctx.vars(), &mut ChaCha8Rng::seed_from_u64(cfg.seed));
    for (d, f) in [
        (vec![0], vec![0, 0]),
        (vec![0], vec![1, 0]),
        (vec![1], vec![1, 1]),
    ] {
        let exact = l_value(ctx, &d, &f)?;
        println!("L({d:?}, {f:?}) = {exact}");
        println!("  exact at sample point:   {:.12}", exact.eval(&point)?);
        println!(
            "  numeric at sample point: {:.12}",
            l_value_numeric(ctx, &d, &f, &point)?
        );
    }
    Ok(())
}
