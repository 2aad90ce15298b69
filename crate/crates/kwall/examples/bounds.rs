//! Local bounds: the quotient-order bound, the index inequality and the
//! VGIT slope.

use kwall::rat;
use kwall::stability::{index_feasibility, quintic_pair_degree, quotient_order_bound, vgit_slope};

pub fn run_example() -> kwall::Result<()> {
    for c in [rat(1, 100), rat(1, 17), rat(1, 5)] {
        let b = quotient_order_bound(&quintic_pair_degree(&c))?;
        println!("c = {c}: |G| < {b}");
    }
    for (d, n) in [(1, 1), (2, 1), (1, 2)] {
        println!(
            "dn^2 = {}: feasible with ord 4 at c = 1/5: {}",
            d * n * n,
            index_feasibility(d, n, &rat(1, 5), &rat(4, 1))?
        );
    }
    for c in [rat(1, 4), rat(1, 3), rat(9, 20)] {
        println!("t({c}) = {}", vgit_slope(&c)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> kwall::Result<()> {
    run_example()
}
