//! A surface and pair given as JSON: the plane blown up at two points, with
//! boundary twice the line through them plus a quartic.

use kwall::catalog::{pair_doc_from_json, Catalog};
use kwall::solve_wall;
use kwall::stability::evaluate;

const PAIR: &str = r#"{
  "id": "dP7-line",
  "surface": {
    "basis": ["H", "E1", "E2"],
    "gram": [["1", "0", "0"], ["0", "-1", "0"], ["0", "0", "-1"]],
    "canonical": ["-3", "1", "1"],
    "mori": [
      {"name": "E1", "class": ["0", "1", "0"]},
      {"name": "E2", "class": ["0", "0", "1"]},
      {"name": "L12", "class": ["1", "-1", "-1"]}
    ]
  },
  "boundary": [
    {"name": "L12", "class": ["1", "-1", "-1"], "mult": "2"},
    {"name": "Q", "class": ["4", "0", "0"], "mult": "1"}
  ],
  "valuation": {"name": "L12", "curve": "L12"}
}"#;

pub fn run_example() -> kwall::Result<()> {
    let cat = Catalog::embedded()?;
    let doc = pair_doc_from_json("dP7-line", PAIR)?;
    let (pair, v, _) = cat.pair_from_doc(&doc)?;
    let v = v.expect("document has a valuation");
    let e = evaluate(&pair, &v)?;
    println!("degree {}", pair.surface().anticanonical_degree());
    println!("A = {}, S = {}, beta = {}", e.a, e.s, e.beta);
    println!("{}", solve_wall(&e.beta, pair.c_range()));
    Ok(())
}

#[allow(dead_code)]
fn main() -> kwall::Result<()> {
    run_example()
}
