use shintani::charform::shintani_verify;
use shintani::zetafactors::Context;
use std::time::Instant;

fn main() -> shintani::Result<()> {
    for (n, m, k) in [(2, 1, 8), (3, 2, 6)] {
        let t = Instant::now();
        let rep = shintani_verify(Context::new(n, m)?, k)?;
        println!(
            "(n,m)=({n},{m}) K={k}: all equal = {} [{:.2?}]",
            rep.all_equal,
            t.elapsed()
        );
    }
    Ok(())
}
