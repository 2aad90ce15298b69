use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use kwall::catalog::{pair_doc_from_json, surface_from_json, valuation_doc_from_json, Catalog};
use kwall::report::{self, BoundsQuery, RunReport};
use kwall::stability::EquivTag;
use kwall::{parse_rational, Error, Rational, Result, SurfaceModel};

/// Exact A, S and beta invariants and K-moduli walls for quintic del Pezzo pairs.
///
/// The catalog is embedded; set KWALL_CATALOG to a directory of catalog
/// JSON files to use another one.
#[derive(Parser)]
#[command(name = "kwall", version)]
struct Cli {
    /// Emit the machine-readable JSON report instead of markdown.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Surface models.
    Surface {
        #[command(subcommand)]
        action: SurfaceCmd,
    },
    /// Zariski decomposition of a class, or its volume profile with --ray.
    Zariski(ZariskiArgs),
    /// Volume profile of a fixture's valuation, or of a ray on a surface.
    Profile(ProfileArgs),
    /// A, S, beta and the wall for a fixture or a pair file.
    Beta(BetaArgs),
    /// Solve every catalog fixture and tabulate the walls.
    Walls(WallsArgs),
    /// Local quotient-order, index and VGIT bounds.
    Bounds(BoundsArgs),
    /// Catalog fixtures.
    Fixtures {
        #[command(subcommand)]
        action: FixturesCmd,
    },
}

#[derive(Subcommand)]
enum SurfaceCmd {
    /// Print a surface model: lattice, canonical class, Mori generators.
    Show {
        /// Catalog surface id or path to a surface JSON file.
        surface: String,
    },
}

#[derive(Subcommand)]
enum FixturesCmd {
    /// List fixture ids.
    List {
        #[arg(long)]
        family: Option<String>,
    },
}

#[derive(Args)]
struct ZariskiArgs {
    /// Catalog surface id or path to a surface JSON file.
    #[arg(long)]
    surface: String,
    /// Divisor expression, e.g. "-K - 3/2 L1".
    #[arg(long, allow_hyphen_values = true)]
    class: String,
    /// Ray direction; prints vol(class - t·ray) instead.
    #[arg(long, allow_hyphen_values = true)]
    ray: Option<String>,
}

#[derive(Args)]
struct ProfileArgs {
    /// Fixture id.
    fixture: Option<String>,
    #[arg(long, conflicts_with = "fixture")]
    surface: Option<String>,
    #[arg(long, requires = "surface", allow_hyphen_values = true)]
    ray: Option<String>,
    /// Origin class (default -K).
    #[arg(long, requires = "ray", allow_hyphen_values = true)]
    origin: Option<String>,
}

#[derive(Args)]
struct BetaArgs {
    /// Fixture id or path to a pair JSON file.
    target: String,
    /// Equivariant valuation name, or path to a valuation JSON file.
    #[arg(long)]
    valuation: Option<String>,
    /// Evaluate beta (and the equivariant check) at this c.
    #[arg(long)]
    c: Option<String>,
}

#[derive(Args)]
struct WallsArgs {
    /// Compare against the expected wall table; exit 4 on mismatch.
    #[arg(long)]
    diff: bool,
    #[arg(long)]
    family: Option<String>,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    degree: Option<String>,
    #[arg(long)]
    c: Option<String>,
    #[arg(long)]
    ord: Option<String>,
    #[arg(long)]
    d: Option<u64>,
    #[arg(long)]
    n: Option<u64>,
}

fn q(s: &Option<String>) -> Result<Option<Rational>> {
    s.as_deref().map(parse_rational).transpose()
}

fn looks_like_file(s: &str) -> bool {
    s.ends_with(".json") || Path::new(s).is_file()
}

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_string(), source })
}

fn load_surface(cat: &Catalog, spec: &str) -> Result<(Arc<SurfaceModel>, String)> {
    if looks_like_file(spec) {
        let text = read(spec)?;
        let id = Path::new(spec).file_stem().map_or("surface".into(), |s| s.to_string_lossy().into_owned());
        let desc = serde_json::from_str::<serde_json::Value>(&text)
            .ok()
            .and_then(|v| v.get("description").and_then(|d| d.as_str()).map(String::from))
            .unwrap_or_default();
        return Ok((Arc::new(surface_from_json(&id, &text)?), desc));
    }
    let desc = cat.surface_doc(spec)?.description.clone();
    Ok((cat.surface(spec)?, desc))
}

fn beta_cmd(cat: &Catalog, a: &BetaArgs, cmdline: &str) -> Result<RunReport> {
    let c = q(&a.c)?;
    if looks_like_file(&a.target) {
        let text = read(&a.target)?;
        let doc = pair_doc_from_json(&a.target, &text)?;
        let (pair, v, eq) = cat.pair_from_doc(&doc)?;
        let v = match &a.valuation {
            Some(p) if looks_like_file(p) => {
                let vt = read(p)?;
                valuation_doc_from_json(p, &vt)?.build(pair.surface(), EquivTag::Plain)?
            }
            Some(name) => eq
                .iter()
                .find(|v| &v.name == name)
                .cloned()
                .ok_or_else(|| Error::UnknownName(format!("valuation `{name}`")))?,
            None => v.ok_or_else(|| Error::Parse("pair file has no valuation; pass --valuation".into()))?,
        };
        let label = doc.id.clone().unwrap_or_else(|| a.target.clone());
        return report::beta_report(&label, &pair, &v, c.as_ref(), &eq, &[&text], cmdline);
    }
    let f = cat.load_fixture(&a.target)?;
    let v = match &a.valuation {
        Some(p) if looks_like_file(p) => {
            let vt = read(p)?;
            valuation_doc_from_json(p, &vt)?.build(f.pair.surface(), EquivTag::Plain)?
        }
        Some(name) => f.equivariant.iter().find(|v| &v.name == name).cloned().ok_or_else(|| {
            let names: Vec<&str> = f.equivariant.iter().map(|v| v.name.as_str()).collect();
            Error::UnknownName(format!("valuation `{name}` on {}; available: {}", f.id, names.join(", ")))
        })?,
        None => f.valuation.clone(),
    };
    report::beta_report(&f.id, &f.pair, &v, c.as_ref(), &f.equivariant, &[cat.digest()], cmdline)
}

fn run(cli: &Cli, cmdline: &str) -> Result<RunReport> {
    let cat = Catalog::load()?;
    match &cli.command {
        Command::Surface { action: SurfaceCmd::Show { surface } } => {
            let (m, desc) = load_surface(&cat, surface)?;
            report::surface_report(&m, &desc, cmdline)
        }
        Command::Zariski(a) => {
            let (m, _) = load_surface(&cat, &a.surface)?;
            report::zariski_report(&m, &a.class, a.ray.as_deref(), cmdline)
        }
        Command::Profile(a) => match (&a.fixture, &a.surface, &a.ray) {
            (Some(id), _, _) => report::fixture_profile_report(&cat, id, cmdline),
            (None, Some(s), Some(r)) => {
                let (m, _) = load_surface(&cat, s)?;
                let origin = a.origin.clone().unwrap_or_else(|| "-K".into());
                report::zariski_report(&m, &origin, Some(r), cmdline)
            }
            _ => Err(Error::Parse("profile needs a fixture id or --surface with --ray".into())),
        },
        Command::Beta(a) => beta_cmd(&cat, a, cmdline),
        Command::Walls(a) => report::walls_report(&cat, a.diff, a.family.as_deref(), cmdline),
        Command::Bounds(a) => {
            let query = BoundsQuery { degree: q(&a.degree)?, c: q(&a.c)?, ord: q(&a.ord)?, d: a.d, n: a.n };
            report::bounds_report(&query, cmdline)
        }
        Command::Fixtures { action: FixturesCmd::List { family } } => {
            report::fixtures_report(&cat, family.as_deref(), cmdline)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cmdline = std::env::args().skip(1).filter(|a| a != "--json").collect::<Vec<_>>().join(" ");
    match run(&cli, &cmdline) {
        Ok(rep) => {
            if cli.json {
                print!("{}", rep.to_json());
            } else {
                print!("{}", rep.to_markdown());
            }
            ExitCode::from(rep.exit_status as u8)
        }
        Err(e) => {
            let code = report::exit_code_for(&e);
            if cli.json {
                let v = serde_json::json!({"command": cmdline, "error": e.to_string(), "exit_status": code});
                println!("{}", serde_json::to_string_pretty(&v).unwrap());
            }
            eprintln!("error: {e}");
            if let Error::NotPseudoEffective { witness: Some(w), .. } = &e {
                eprintln!("witness: {w}");
            }
            ExitCode::from(code as u8)
        }
    }
}
