//! The equivariant beta test on a pair with a torus action, at and around
//! its wall.

use kwall::catalog::Catalog;
use kwall::rat;
use kwall::stability::polystability_check;

pub fn run_example() -> kwall::Result<()> {
    let cat = Catalog::embedded()?;
    let f = cat.load_fixture("Xn/D_n/E")?;
    let wall = f.evaluate()?.wall.wall().cloned().expect("fixture has a wall");
    for c in [&wall - rat(1, 1000), wall.clone(), &wall + rat(1, 1000)] {
        let r = polystability_check(&f.pair, &f.equivariant, &c)?;
        println!("c = {c}: {} {:?}", r.verdict, r.witnesses);
        for v in &r.values {
            println!("    {:?} {:<4} beta = {} -> {}", v.tag, v.name, v.beta, v.value);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> kwall::Result<()> {
    run_example()
}
