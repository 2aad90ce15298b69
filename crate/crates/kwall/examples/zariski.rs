//! Zariski decomposition of `-K - 3/2 L1` on the smooth quintic del Pezzo
//! surface, and a class that is not pseudo-effective.

use kwall::catalog::Catalog;
use kwall::expr::parse_div_expr;
use kwall::{zariski_decompose, Error};

pub fn run_example() -> kwall::Result<()> {
    let cat = Catalog::embedded()?;
    let s = cat.surface("Sigma5")?;
    let d = parse_div_expr("-K - 3/2 L1")?.to_class(&s)?;
    let z = zariski_decompose(&s, &d)?;
    println!("D = {d}");
    println!("P = {}  (P^2 = {})", z.positive, z.positive.square());
    println!("N = {}", z.negative_display());

    let far = parse_div_expr("-K - 3 L1")?.to_class(&s)?;
    match zariski_decompose(&s, &far) {
        Err(Error::NotPseudoEffective { reason, .. }) => println!("-K - 3 L1: not pseudo-effective ({reason})"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> kwall::Result<()> {
    run_example()
}
