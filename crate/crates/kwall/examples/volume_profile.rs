//! The piecewise quadratic `vol(-K - tL1)` and its integral.

use kwall::catalog::Catalog;
use kwall::{integrate_profile, volume_profile};

pub fn run_example() -> kwall::Result<()> {
    let cat = Catalog::embedded()?;
    let s = cat.surface("Sigma5")?;
    let l1 = s.pullback_weil(s.generator("L1").unwrap())?;
    let p = volume_profile(&s, s.neg_k(), &l1)?;
    for piece in &p.pieces {
        println!("[{}, {}]  {}   N supported on {:?}", piece.t_lo, piece.t_hi, piece.formula(), piece.support);
    }
    let total = integrate_profile(&p);
    println!("tau = {}, integral = {}, S/(1-2c) = {}", p.tau, total, &total / s.anticanonical_degree());
    Ok(())
}

#[allow(dead_code)]
fn main() -> kwall::Result<()> {
    run_example()
}
