//! Intersection lattices and divisor classes on the blow-up of the plane
//! at four points.

use std::sync::Arc;

use kwall::lattice::{signature, validate_lattice};
use kwall::{rat, DivClass, IntersectionLattice};

pub fn run_example() -> kwall::Result<()> {
    let lattice = Arc::new(IntersectionLattice::from_ints(
        &["H", "E1", "E2", "E3", "E4"],
        &[&[1, 0, 0, 0, 0], &[0, -1, 0, 0, 0], &[0, 0, -1, 0, 0], &[0, 0, 0, -1, 0], &[0, 0, 0, 0, -1]],
    )?);
    let report = validate_lattice(&lattice);
    println!("signature {:?}, valid: {}", signature(lattice.gram()), report.passed());

    let k = DivClass::from_ints(&lattice, &[-3, 1, 1, 1, 1])?;
    let line = DivClass::from_ints(&lattice, &[1, -1, -1, 0, 0])?;
    println!("K = {k}");
    println!("K^2 = {}", k.square());
    println!("L12 = {line}, L12^2 = {}, K.L12 = {}", line.square(), k.pair(&line)?);

    let d = (-&k).add_scaled(&line, &rat(-3, 2))?;
    println!("-K - 3/2 L12 = {d}, square {}", d.square());
    Ok(())
}

#[allow(dead_code)]
fn main() -> kwall::Result<()> {
    run_example()
}
