//! Characters of `SO_{2N+1}` and the vanishing strip used by the series identity.

use shintani::charform::{elementary_sym, satake_set, so_char};
use shintani::zetafactors::Context;

fn main() -> shintani::Result<()> {
    for lambda in [vec![1, 0], vec![2, 0], vec![1, 1]] {
        println!("T({lambda:?}) = {}", so_char(2, &lambda)?);
    }
    for k in 1..=5 {
        let value = so_char(3, &[-k, 0, 0])?;
        println!("T((-{k},0,0)) = {value}");
    }
    let ctx = Context::new(2, 1)?;
    let set = satake_set(ctx);
    for r in 0..=2 {
        println!("e_{r}(Satake) = {}", elementary_sym(ctx.vars(), &set, r));
    }
    Ok(())
}
