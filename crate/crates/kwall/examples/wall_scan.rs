//! Solves every catalog fixture and compares against the wall table.

use kwall::catalog::Catalog;
use kwall::report::{diff_walls, scan_walls};

pub fn run_example() -> kwall::Result<()> {
    let cat = Catalog::embedded()?;
    let scan = scan_walls(&cat, None)?;
    for w in &scan.walls {
        let kind = match w.divisorial {
            Some(true) => "divisorial",
            Some(false) => "flip",
            None => "unexpected",
        };
        println!("{:>6} {kind:<10} {}", w.wall.to_string(), w.fixtures.len());
    }
    let diff = diff_walls(&scan, &cat.expected_wall_list(), None);
    println!("matched {}/{}, clean: {}", diff.matched, diff.expected, diff.is_clean());
    Ok(())
}

#[allow(dead_code)]
fn main() -> kwall::Result<()> {
    run_example()
}
