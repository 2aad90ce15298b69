//! Surface models: pullbacks, discrepancies and the validation errors.

use kwall::catalog::{surface_from_json, Catalog};
use kwall::{int, rat, DivClass, Error, Rational};
use num_traits::Zero;

fn coeffs(v: &[(String, Rational)]) -> Vec<(&str, Rational)> {
    v.iter().map(|(n, k)| (n.as_str(), k.clone())).collect()
}

#[test]
fn index_three_pullbacks() {
    let cat = Catalog::embedded().unwrap();
    let x = cat.surface("Index3").unwrap();
    assert_eq!(x.k_discrepancy("Sigma"), Some(&rat(-1, 3)));
    assert_eq!(x.k_discrepancy("Lt"), Some(&rat(-2, 3)));
    for i in 1..=5 {
        let e = x.generator(&format!("E{i}")).unwrap();
        let got = x.pullback_coefficients(e).unwrap();
        assert_eq!(coeffs(&got), vec![("Sigma", rat(1, 9)), ("Lt", rat(2, 9))]);
    }
    let l = x.lattice();
    let fibre = DivClass::basis(l, l.index_of("f").unwrap());
    let got = x.pullback_coefficients(&fibre).unwrap();
    assert_eq!(coeffs(&got), vec![("Sigma", rat(5, 9)), ("Lt", rat(1, 9))]);
    let pb = x.pullback_weil(&fibre).unwrap();
    assert_eq!(pb.square(), rat(5, 9));
}

#[test]
fn catalog_surfaces_have_expected_degree_and_orthogonal_pullbacks() {
    let cat = Catalog::embedded().unwrap();
    let ids = cat.surface_ids();
    assert!(ids.len() >= 15);
    for id in &ids {
        let m = cat.surface(id).unwrap();
        let want = if id == "P2" { int(9) } else { int(5) };
        assert_eq!(m.anticanonical_degree(), &want, "{id}");
        assert_eq!(&m.neg_k().square(), m.anticanonical_degree(), "{id}");
        for c in m.contracted() {
            let cc = m.generator(c).unwrap();
            assert!(m.neg_k().pair(cc).unwrap().is_zero(), "{id}: -K . {c}");
            for i in 0..m.lattice().rank() {
                let pb = m.pullback_weil(&DivClass::basis(m.lattice(), i)).unwrap();
                assert!(pb.pair(cc).unwrap().is_zero(), "{id}: pullback of basis {i} meets {c}");
            }
        }
    }
}

#[test]
fn quotient_point_surface() {
    let cat = Catalog::embedded().unwrap();
    let x = cat.surface("Xq").unwrap();
    assert_eq!(x.anticanonical_degree(), &int(5));
    assert_eq!(x.k_discrepancy("Lt"), Some(&rat(-1, 2)));
    assert_eq!(x.log_discrepancy_of_curve("Lt"), rat(1, 2));
}

const GOOD: &str = r#"{
  "basis": ["H", "E1"],
  "gram": [["1", "0"], ["0", "-1"]],
  "canonical": ["-3", "1"],
  "mori": [{"name": "E1", "class": ["0", "1"]}, {"name": "L", "class": ["1", "-1"]}],
  "contracted": []
}"#;

#[test]
fn hand_written_surface_loads() {
    let m = surface_from_json("F1", GOOD).unwrap();
    assert_eq!(m.anticanonical_degree(), &int(8));
}

#[test]
fn invalid_surfaces_are_rejected() {
    let asym = GOOD.replace(r#"[["1", "0"], ["0", "-1"]]"#, r#"[["1", "1"], ["0", "-1"]]"#);
    assert!(surface_from_json("x", &asym).is_err());
    let positive_contracted = GOOD.replace(r#""contracted": []"#, r#""contracted": ["L"]"#);
    assert!(surface_from_json("x", &positive_contracted).is_err());
    let bad_adjunction = GOOD.replace(r#""canonical": ["-3", "1"]"#, r#""canonical": ["-3", "2"]"#);
    assert!(surface_from_json("x", &bad_adjunction).is_err());
    let unknown_field = GOOD.replace(r#""contracted""#, r#""contractd""#);
    assert!(matches!(surface_from_json("x", &unknown_field), Err(Error::Schema { .. })));
    let bad_k = GOOD.replace(r#""contracted": []"#, r#""contracted": ["E1"], "k_discrepancies": {"E1": "1/2"}"#);
    assert!(surface_from_json("x", &bad_k).is_err());
}
