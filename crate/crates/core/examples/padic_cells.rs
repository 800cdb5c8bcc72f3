//! Samples open-cell elements and recovers their torus valuations from the
//! minors `alpha_k`, `beta_l`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use shintani::padic::{abs_cell_kernel, factor_valuations, random_open_cell, CellKernel, SympMatrix};
use shintani::ratfun::Q;

fn main() -> shintani::Result<()> {
    let p = 3;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (n, m) in [(2, 1), (3, 2), (4, 2)] {
        let mut recovered = 0;
        let trials = 50;
        for _ in 0..trials {
            let sample = random_open_cell(n, m, p, &mut rng)?;
            let f = factor_valuations(&sample.g, m, p)?;
            if f.membership && f.t == sample.t_val && f.s == sample.s_val {
                recovered += 1;
            }
        }
        println!("(n,m)=({n},{m}) p={p}: valuations recovered on {recovered}/{trials} samples");
    }

    let base = &SympMatrix::w0(3) * &SympMatrix::lambda(3, 2)?;
    let k = abs_cell_kernel(
        &base,
        2,
        &vec![Q::from_integer(0.into()); 3],
        &vec![Q::from_integer(0.into()); 2],
        p,
    )?;
    println!("|K(w0 lambda)| at trivial characters: {k:?}");
    let off = factor_valuations(&SympMatrix::w0(3), 2, p)?;
    println!("w0 alone lies in the open cell: {}", off.membership);
    assert_eq!(k, CellKernel::QPower(Q::from_integer(0.into())));
    Ok(())
}
