//! Discrepancies and Mumford pullbacks on a surface with a 1/9(1,2)-type
//! point: two contracted curves of self-intersection -2 and -5.

use kwall::catalog::Catalog;
use kwall::DivClass;

pub fn run_example() -> kwall::Result<()> {
    let cat = Catalog::embedded()?;
    let x = cat.surface("Index3")?;
    println!("{}: degree {}", x.id(), x.anticanonical_degree());
    for (curve, k) in x.k_discrepancies() {
        println!("  k({curve}) = {k}, log discrepancy {}", x.log_discrepancy_of_curve(&curve));
    }
    let l = x.lattice();
    let fibre = DivClass::basis(l, l.index_of("f").unwrap());
    let e1 = x.generator("E1").unwrap().clone();
    for (name, d) in [("f", &fibre), ("E1", &e1)] {
        let pb = x.pullback_weil(d)?;
        println!("pi^* {name} = {pb}   (square {})", pb.square());
    }
    println!("pi^*(-K_X) = {}", x.neg_k());
    Ok(())
}

#[allow(dead_code)]
fn main() -> kwall::Result<()> {
    run_example()
}
