//! A, S and beta for a pair built by hand, then the wall it cuts out.

use kwall::catalog::Catalog;
use kwall::stability::{evaluate, BoundaryComponent};
use kwall::{int, solve_wall, LogPair, ValuationSpec};

pub fn run_example() -> kwall::Result<()> {
    let cat = Catalog::embedded()?;
    let s = cat.surface("Sigma5")?;
    // D = 4L1 + 2L2 + 2E1 + 2E2 lies in |-2K|.
    let comp = |name: &str, mult: i64| BoundaryComponent {
        name: name.into(),
        class: s.generator(name).unwrap().clone(),
        mult: int(mult),
    };
    let pair = LogPair::new(s.clone(), vec![comp("L1", 4), comp("L2", 2), comp("E1", 2), comp("E2", 2)])?;
    for curve in ["L1", "L2", "E1"] {
        let e = evaluate(&pair, &ValuationSpec::curve(curve, curve))?;
        println!("{curve}: A = {}, S = {}, beta = {}, {}", e.a, e.s, e.beta, solve_wall(&e.beta, pair.c_range()));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> kwall::Result<()> {
    run_example()
}
