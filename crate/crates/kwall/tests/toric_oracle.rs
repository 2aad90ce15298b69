//! β of every toric fixture against the barycentre of the anticanonical
//! polygon.

mod common;

use common::{toric_beta, TORIC};
use kwall::catalog::Catalog;
use kwall::int;

#[test]
fn toric_fixtures_match_barycentre_oracle() {
    let cat = Catalog::embedded().unwrap();
    assert_eq!(TORIC.len(), 27);
    for case in TORIC {
        let f = cat.load_fixture(case.id).unwrap();
        let (b0, b1, area2) = toric_beta(case);
        assert_eq!(area2, int(5), "{}: -K^2", case.id);
        let out = f.evaluate().unwrap();
        assert_eq!(out.evaluation.beta.constant, b0, "{}: beta constant", case.id);
        assert_eq!(out.evaluation.beta.slope, b1, "{}: beta slope", case.id);
    }
}

#[test]
fn every_toric_family_fixture_is_covered() {
    let cat = Catalog::embedded().unwrap();
    for id in cat.fixture_ids(None).unwrap() {
        let toric = ["X11/torus/", "X12/torus/", "Xt/torus/", "Xq/torus/", "Xprime/D_16", "Xprime/D_19"];
        if toric.iter().any(|p| id.starts_with(p)) {
            assert!(TORIC.iter().any(|c| c.id == id), "{id} has no toric oracle case");
        }
    }
}
