//! The (1,2) weighted blow-up of a quintic del Pezzo surface at the point
//! where a line meets two conics tangentially.
//!
//! Curves through the centre that turn negative on the blow-up must be
//! listed in `extra_mori`; the catalog centre already carries them.

use kwall::catalog::Catalog;
use kwall::stability::ValuationKind;
use kwall::surface::build_blowup_extension;
use kwall::{integrate_profile, volume_profile};

pub fn run_example() -> kwall::Result<()> {
    let cat = Catalog::embedded()?;
    let f = cat.load_fixture("Xprime/D_13_41/E")?;
    let ValuationKind::Exceptional { center, .. } = &f.valuation.kind else {
        unreachable!("fixture uses a blow-up valuation")
    };
    let base = f.pair.surface();
    let ext = build_blowup_extension(base, center)?;
    let e = ext.e_class();
    println!("{}: E^2 = {}, A(E) = {}", ext.model().id(), e.square(), ext.a_over_target());
    for (name, class, ord) in &center.extra_mori {
        let t = ext.proper_transform(class, ord)?;
        println!("  {name}: ord {ord}, transform square {}", t.square());
    }
    let p = volume_profile(ext.model(), ext.model().neg_k(), e)?;
    for piece in &p.pieces {
        println!("  vol on [{}, {}] = {}", piece.t_lo, piece.t_hi, piece.formula());
    }
    println!("S/(1-2c) = {}", integrate_profile(&p) / base.anticanonical_degree());
    Ok(())
}

#[allow(dead_code)]
fn main() -> kwall::Result<()> {
    run_example()
}
