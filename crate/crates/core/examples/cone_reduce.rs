//! Normal forms of cone triples with their operation traces, and the order
//! axioms on small pairs.

use shintani::cone::{check_minimality, check_partial_order, normal_form_traced, ConeTriple};
use shintani::zetafactors::Context;

fn main() -> shintani::Result<()> {
    let c32 = Context::new(3, 2)?;
    let triples = [
        (
            Context::new(2, 1)?,
            ConeTriple::new(Context::new(2, 1)?, vec![0], vec![0], vec![1])?,
        ),
        (c32, ConeTriple::new(c32, vec![0, 0], vec![2], vec![3, 1])?),
        (c32, ConeTriple::new(c32, vec![0, 1], vec![1], vec![3, 2])?),
    ];
    for (ctx, t) in triples {
        let (nf, trace) = normal_form_traced(ctx, &t)?;
        println!("{t:?}\n  -> {nf:?}");
        for step in trace.iter().filter(|s| s.before != s.after) {
            println!("     {}: d {:?} -> {:?}", step.op, step.before.d, step.after.d);
        }
        let chk = check_minimality(ctx, &t)?;
        println!("  minimal among {} feasible: {}", chk.feasible_count, chk.minimal);
    }
    let rep = check_partial_order(c32, 2)?;
    println!("order on {} pairs: {rep:?}", rep.elements);
    Ok(())
}
