//! Closed-form Gauss shell integrals against a direct character sum.

use num_traits::ToPrimitive;
use shintani::padic::{gauss_shell, gauss_shell_character_sum};
use shintani::ratfun::Q;

fn main() -> shintani::Result<()> {
    for q in [3u64, 5] {
        let mut worst: f64 = 0.0;
        for i in -4i64..=4 {
            for j in -4i64..=4 {
                let x = Q::from_integer(q.into()).pow(i as i32);
                let brute = gauss_shell_character_sum(&x, j, q)?;
                let exact = gauss_shell(i, j, q).to_f64().unwrap();
                worst = worst.max((brute.re - exact).abs()).max(brute.im.abs());
            }
        }
        println!("q={q}: max |closed form - character sum| over i,j in [-4,4] = {worst:.3e}");
    }
    println!(
        "i=0, j=0..3 at q=3: {:?}",
        (0..4)
            .map(|j| gauss_shell(0, j, 3).to_string())
            .collect::<Vec<_>>()
    );
    Ok(())
}
