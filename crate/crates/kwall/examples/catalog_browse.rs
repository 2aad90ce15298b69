//! Families, fixtures and the expected wall table of the embedded catalog.

use kwall::catalog::Catalog;

pub fn run_example() -> kwall::Result<()> {
    let cat = Catalog::embedded()?;
    println!("catalog digest {}", &cat.digest()[..16]);
    for fam in cat.families() {
        println!("{fam}: {} fixtures", cat.fixture_ids(Some(fam))?.len());
    }
    let f = cat.load_fixture("Xt/D_11_52/Cprime")?;
    println!("{}: {}", f.id, f.description);
    println!("  expected beta {} wall {:?}", f.expected.beta, f.expected.wall.map(|w| w.to_string()));
    let table = cat.expected_wall_list();
    let divisorial: Vec<String> = table.divisorial().iter().map(ToString::to_string).collect();
    println!("{} walls, divisorial: {}", table.walls.len(), divisorial.join(", "));
    Ok(())
}

#[allow(dead_code)]
fn main() -> kwall::Result<()> {
    run_example()
}
