//! Run reports: one value rendered as markdown or JSON, plus the catalog
//! wall scan and its diff against the expected wall table.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::catalog::{Catalog, Provenance, SurfaceDoc, WallTable};
use crate::error::{Error, Result};
use crate::expr::parse_div_expr;
use crate::lattice::{fmt_q, signature, to_f64, validate_lattice, Rational};
use crate::positivity::{integrate_profile, is_nef, volume_profile, zariski_decompose, NefVerdict, VolumeProfile};
use crate::stability::{
    evaluate, index_feasibility, polystability_check, quintic_pair_degree, quotient_order_bound, solve_wall,
    vgit_slope, AffineRatFn, LogPair, ValuationSpec, WallOutcome,
};
use crate::surface::SurfaceModel;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_ENGINE: i32 = 3;
pub const EXIT_DIFF: i32 = 4;

/// Exit status for an error: input problems map to 2, engine failures to 3.
pub fn exit_code_for(e: &Error) -> i32 {
    if e.is_input_error() {
        EXIT_INPUT
    } else {
        EXIT_ENGINE
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs_digest: String,
    pub results: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_diff: Option<WallDiff>,
    pub exit_status: i32,
    #[serde(skip)]
    pub markdown: String,
}

impl RunReport {
    fn new(command: &str, inputs: &[&str], results: Value, markdown: String) -> Self {
        let mut h = Sha256::new();
        h.update(command.as_bytes());
        for i in inputs {
            h.update([0]);
            h.update(i.as_bytes());
        }
        let inputs_digest = h.finalize().iter().map(|b| format!("{b:02x}")).collect();
        RunReport {
            command: command.to_string(),
            inputs_digest,
            results,
            wall_diff: None,
            exit_status: EXIT_OK,
            markdown,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_markdown(&self) -> String {
        format!("# kwall {}\n\n{}\n_inputs digest: {}_\n", self.command, self.markdown.trim_end(), self.inputs_digest)
    }
}

fn approx(q: &Rational) -> String {
    if q.is_integer() {
        fmt_q(q)
    } else {
        format!("{} (~{:.6})", fmt_q(q), to_f64(q))
    }
}

fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = format!("| {} |\n|{}\n", headers.join(" | "), "---|".repeat(headers.len()));
    for r in rows {
        out.push_str(&format!("| {} |\n", r.join(" | ").replace('\n', " ")));
    }
    out
}

fn s_display(pair: &LogPair, s: &Rational) -> String {
    if pair.has_boundary() {
        format!("{} (1-2c)", fmt_q(s))
    } else {
        fmt_q(s)
    }
}

pub fn profile_json(p: &VolumeProfile) -> Value {
    json!({
        "pieces": p.pieces.iter().map(|x| json!({
            "t_lo": fmt_q(&x.t_lo), "t_hi": fmt_q(&x.t_hi),
            "q0": fmt_q(&x.q0), "q1": fmt_q(&x.q1), "q2": fmt_q(&x.q2),
            "support": x.support,
        })).collect::<Vec<_>>(),
        "tau": fmt_q(&p.tau),
        "integral": fmt_q(&integrate_profile(p)),
    })
}

pub fn profile_markdown(p: &VolumeProfile) -> String {
    let rows: Vec<Vec<String>> = p
        .pieces
        .iter()
        .map(|x| vec![format!("[{}, {}]", x.t_lo, x.t_hi), format!("`{}`", x.formula()), x.support.join(", ")])
        .collect();
    format!(
        "{}\ntau = {}, integral = {}\n",
        table(&["t", "vol", "negative support"], &rows),
        fmt_q(&p.tau),
        fmt_q(&integrate_profile(p))
    )
}

pub fn surface_report(model: &SurfaceModel, description: &str, command: &str) -> Result<RunReport> {
    let doc = SurfaceDoc::from_model(model, description);
    let lat = model.lattice();
    let rep = validate_lattice(lat);
    let sig = signature(lat.gram());
    let k = model.canonical();
    let mut rows = Vec::new();
    let mut gens = Vec::new();
    for g in model.mori() {
        let sq = g.class.square();
        let kc = k.pair(&g.class)?;
        let kd = model.k_discrepancy(&g.name).map(fmt_q).unwrap_or_default();
        rows.push(vec![
            g.name.clone(),
            format!("`{}`", g.class),
            fmt_q(&sq),
            fmt_q(&kc),
            if model.is_contracted(&g.name) { "yes".into() } else { String::new() },
            kd.clone(),
        ]);
        gens.push(json!({"name": g.name, "class": g.class.to_string(), "self_intersection": fmt_q(&sq),
            "k_dot": fmt_q(&kc), "contracted": model.is_contracted(&g.name)}));
    }
    let mut md = format!(
        "surface `{}`{}\n\nbasis: {}\n\nsignature: ({}, {}) {}\n\nK_Y = `{}`\n\npi*(-K_X) = `{}`\n\ndegree (-K_X)^2 = {}\n\n",
        model.id(),
        if description.is_empty() { String::new() } else { format!(": {description}") },
        lat.names().join(", "),
        sig.0,
        sig.1,
        if rep.passed() { "ok" } else { "FAILED" },
        model.canonical(),
        model.neg_k(),
        fmt_q(model.anticanonical_degree()),
    );
    md.push_str(&table(&["curve", "class", "C^2", "K.C", "contracted", "k"], &rows));
    let results = json!({
        "surface": model.id(),
        "document": serde_json::to_value(&doc).expect("surface doc serializes"),
        "signature": [sig.0, sig.1],
        "lattice_ok": rep.passed(),
        "degree": fmt_q(model.anticanonical_degree()),
        "neg_k": model.neg_k().to_string(),
        "generators": gens,
    });
    let doc_text = serde_json::to_string(&doc).expect("surface doc serializes");
    Ok(RunReport::new(command, &[&doc_text], results, md))
}

pub fn zariski_report(
    model: &SurfaceModel,
    class_src: &str,
    ray_src: Option<&str>,
    command: &str,
) -> Result<RunReport> {
    let d = parse_div_expr(class_src)?.to_class(model)?;
    let doc_text = serde_json::to_string(&SurfaceDoc::from_model(model, "")).expect("surface doc serializes");
    if let Some(r) = ray_src {
        let dir = parse_div_expr(r)?.to_ray(model)?;
        let p = volume_profile(model, &d, &dir)?;
        let md = format!("vol(`{d}` - t (`{dir}`)) on `{}`\n\n{}", model.id(), profile_markdown(&p));
        let results = json!({"surface": model.id(), "origin": d.to_string(), "direction": dir.to_string(), "profile": profile_json(&p)});
        return Ok(RunReport::new(command, &[&doc_text], results, md));
    }
    let z = zariski_decompose(model, &d)?;
    let nef = matches!(is_nef(model, &z.positive)?, NefVerdict::Nef);
    let n = z.negative_display();
    let md = format!(
        "Zariski decomposition of `{d}` on `{}`\n\n{}\n",
        model.id(),
        table(
            &["part", "class", "square"],
            &[
                vec!["P".into(), format!("`{}`", z.positive), fmt_q(&z.positive.square())],
                vec!["N".into(), format!("`{n}`"), fmt_q(&z.negative_class(model).square())],
            ]
        )
    );
    let results = json!({
        "surface": model.id(),
        "class": d.to_string(),
        "positive": z.positive.to_string(),
        "positive_coords": z.positive.coords().iter().map(fmt_q).collect::<Vec<_>>(),
        "positive_square": fmt_q(&z.positive.square()),
        "positive_is_nef": nef,
        "negative": z.negative_support.iter().map(|(k, a)| json!({"curve": k, "coefficient": fmt_q(a)})).collect::<Vec<_>>(),
    });
    Ok(RunReport::new(command, &[&doc_text], results, md))
}

/// Evaluation of a single valuation on a pair, with an optional `c`.
pub fn beta_report(
    label: &str,
    pair: &LogPair,
    v: &ValuationSpec,
    c: Option<&Rational>,
    equivariant: &[ValuationSpec],
    inputs: &[&str],
    command: &str,
) -> Result<RunReport> {
    let ev = evaluate(pair, v)?;
    let wall = solve_wall(&ev.beta, pair.c_range());
    let mut results = json!({
        "fixture": label,
        "valuation": v.name,
        "A": ev.a.to_string(),
        "S": s_display(pair, &ev.s_prefactor),
        "S_prefactor": fmt_q(&ev.s_prefactor),
        "beta": serde_json::to_value(&ev.beta).expect("affine serializes"),
        "wall": wall.wall().map(fmt_q),
        "wall_outcome": wall.to_string(),
        "profile": profile_json(&ev.profile),
    });
    let mut md = format!(
        "{}\n",
        table(
            &["fixture", "valuation", "A", "S", "beta", "wall"],
            &[vec![
                label.to_string(),
                v.name.clone(),
                format!("`{}`", ev.a),
                format!("`{}`", s_display(pair, &ev.s_prefactor)),
                format!("`{}`", ev.beta),
                match &wall {
                    WallOutcome::Wall(w) => approx(w),
                    other => other.to_string(),
                },
            ]]
        )
    );
    if let Some(c) = c {
        if !pair.contains(c) {
            return Err(Error::OutOfRange(format!("c = {c} is outside (0, 1/2)")));
        }
        let b = ev.beta.eval(c);
        let sign = match b.cmp(&Rational::from_integer(0.into())) {
            std::cmp::Ordering::Less => "negative",
            std::cmp::Ordering::Equal => "zero",
            std::cmp::Ordering::Greater => "positive",
        };
        results["c"] = json!(fmt_q(c));
        results["beta_at_c"] = json!(fmt_q(&b));
        results["sign"] = json!(sign);
        md.push_str(&format!("\nbeta({c}) = {} ({sign})\n", fmt_q(&b)));
        if !equivariant.is_empty() {
            let r = polystability_check(pair, equivariant, c)?;
            md.push_str(&format!("\nequivariant check at c = {c}: **{}**", r.verdict));
            if !r.witnesses.is_empty() {
                md.push_str(&format!(" (witnesses: {})", r.witnesses.join(", ")));
            }
            md.push('\n');
            results["polystability"] = serde_json::to_value(&r).expect("report serializes");
        }
    }
    md.push_str(&format!("\n{}", profile_markdown(&ev.profile)));
    Ok(RunReport::new(command, inputs, results, md))
}

#[derive(Debug, Clone, Serialize)]
pub struct FixtureWall {
    pub id: String,
    pub family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<AffineRatFn>,
    pub computed: Option<String>,
    pub expected: Option<String>,
    pub ok: bool,
    pub problems: Vec<String>,
    #[serde(skip)]
    computed_q: Option<Rational>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScannedWall {
    #[serde(serialize_with = "crate::catalog::ser_q")]
    pub wall: Rational,
    /// `None` when the wall is not in the expected table.
    pub divisorial: Option<bool>,
    pub families: Vec<String>,
    pub fixtures: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WallScan {
    pub walls: Vec<ScannedWall>,
    pub fixtures: Vec<FixtureWall>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WallDiff {
    pub expected: usize,
    pub matched: usize,
    pub missing: Vec<String>,
    pub unexpected: Vec<String>,
    pub divisorial: Vec<String>,
    pub fixture_mismatches: Vec<String>,
}

impl WallDiff {
    pub fn is_clean(&self) -> bool {
        self.missing.is_empty() && self.unexpected.is_empty() && self.fixture_mismatches.is_empty()
    }
}

fn scan_one(catalog: &Catalog, id: &str) -> FixtureWall {
    let (family, expected) = match catalog.fixture_doc(id) {
        Ok((fam, doc)) => (fam.family.clone(), doc.expected.wall.as_ref().map(|w| fmt_q(&w.0))),
        Err(_) => (String::new(), None),
    };
    let blank = |problems: Vec<String>| FixtureWall {
        id: id.to_string(),
        family: family.clone(),
        beta: None,
        computed: None,
        expected: expected.clone(),
        ok: false,
        problems,
        computed_q: None,
    };
    let fixture = match catalog.load_fixture(id) {
        Ok(f) => f,
        Err(e) => return blank(vec![format!("load: {e}")]),
    };
    match fixture.evaluate() {
        Ok(out) => FixtureWall {
            id: id.to_string(),
            family,
            beta: Some(out.evaluation.beta.clone()),
            computed: out.wall.wall().map(fmt_q),
            expected,
            ok: out.mismatches.is_empty(),
            problems: out.mismatches,
            computed_q: out.wall.wall().cloned(),
        },
        Err(e) => blank(vec![format!("engine: {e}")]),
    }
}

/// Solves every fixture (in parallel) and groups the distinct walls.
pub fn scan_walls(catalog: &Catalog, family: Option<&str>) -> Result<WallScan> {
    let ids = catalog.fixture_ids(family)?;
    let table = catalog.expected_wall_list();
    let mut fixtures: Vec<FixtureWall> = ids.par_iter().map(|id| scan_one(catalog, id)).collect();
    fixtures.sort_by(|a, b| match (&a.computed_q, &b.computed_q) {
        (Some(x), Some(y)) => x.cmp(y).then_with(|| a.id.cmp(&b.id)),
        (Some(_), None) => std::cmp::Ordering::Less,
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (None, None) => a.id.cmp(&b.id),
    });
    let mut grouped: BTreeMap<Rational, (BTreeSet<String>, Vec<String>)> = BTreeMap::new();
    for f in &fixtures {
        if let Some(w) = &f.computed_q {
            let e = grouped.entry(w.clone()).or_default();
            e.0.insert(f.family.clone());
            e.1.push(f.id.clone());
        }
    }
    let walls = grouped
        .into_iter()
        .map(|(w, (fams, fx))| ScannedWall {
            divisorial: table.get(&w).map(|e| e.divisorial),
            wall: w,
            families: fams.into_iter().collect(),
            fixtures: fx,
        })
        .collect();
    Ok(WallScan { walls, fixtures })
}

pub fn diff_walls(scan: &WallScan, table: &WallTable, family: Option<&str>) -> WallDiff {
    let expected: Vec<&Rational> = table
        .walls
        .iter()
        .filter(|w| family.map_or(true, |f| w.families.iter().any(|x| x == f)))
        .map(|w| &w.wall)
        .collect();
    let computed: BTreeSet<&Rational> = scan.walls.iter().map(|w| &w.wall).collect();
    let missing: Vec<String> = expected.iter().filter(|w| !computed.contains(*w)).map(|w| fmt_q(w)).collect();
    let unexpected: Vec<String> = computed.iter().filter(|w| table.get(w).is_none()).map(|w| fmt_q(w)).collect();
    let matched = expected.len() - missing.len();
    let fixture_mismatches =
        scan.fixtures.iter().filter(|f| !f.ok).map(|f| format!("{}: {}", f.id, f.problems.join("; "))).collect();
    WallDiff {
        expected: expected.len(),
        matched,
        missing,
        unexpected,
        divisorial: table.divisorial().iter().map(fmt_q).collect(),
        fixture_mismatches,
    }
}

pub fn walls_report(catalog: &Catalog, diff: bool, family: Option<&str>, command: &str) -> Result<RunReport> {
    let scan = scan_walls(catalog, family)?;
    let table = catalog.expected_wall_list();
    let rows: Vec<Vec<String>> = scan
        .walls
        .iter()
        .map(|w| {
            let kind = match w.divisorial {
                Some(true) => "divisorial",
                Some(false) => "flip",
                None => "not in table",
            };
            vec![approx(&w.wall), kind.to_string(), w.families.join(", "), w.fixtures.join(", ")]
        })
        .collect();
    let mut md = format!(
        "catalog: {} ({} fixtures, {} distinct walls)\n\n{}",
        catalog.origin(),
        scan.fixtures.len(),
        scan.walls.len(),
        table_walls(&rows)
    );
    let mut results = json!({
        "catalog": catalog.origin(),
        "family": family,
        "walls": serde_json::to_value(&scan.walls).expect("scan serializes"),
        "fixtures": serde_json::to_value(&scan.fixtures).expect("scan serializes"),
    });
    let failures: Vec<&FixtureWall> = scan.fixtures.iter().filter(|f| !f.ok).collect();
    let mut status = EXIT_OK;
    let mut wall_diff = None;
    if diff {
        let d = diff_walls(&scan, &table, family);
        md.push_str(&format!("\n## diff\n\nmatched {}/{} expected walls\n", d.matched, d.expected));
        md.push_str(&format!("\ndivisorial: {}\n", d.divisorial.join(", ")));
        if !d.missing.is_empty() {
            md.push_str(&format!("\nmissing: {}\n", d.missing.join(", ")));
        }
        if !d.unexpected.is_empty() {
            md.push_str(&format!("\nunexpected: {}\n", d.unexpected.join(", ")));
        }
        if !d.fixture_mismatches.is_empty() {
            md.push_str(&format!("\n{} fixture mismatch(es):\n\n", d.fixture_mismatches.len()));
            for m in &d.fixture_mismatches {
                md.push_str(&format!("- {m}\n"));
            }
        }
        if !d.is_clean() {
            status = EXIT_DIFF;
        }
        wall_diff = Some(d);
    } else if !failures.is_empty() {
        md.push_str("\nfailures:\n\n");
        for f in &failures {
            md.push_str(&format!("- {}: {}\n", f.id, f.problems.join("; ")));
        }
        if failures.iter().any(|f| f.beta.is_none()) {
            status = EXIT_ENGINE;
        }
    }
    results["ok"] = json!(status == EXIT_OK);
    let mut rep = RunReport::new(command, &[catalog.digest()], results, md);
    rep.wall_diff = wall_diff;
    rep.exit_status = status;
    Ok(rep)
}

fn table_walls(rows: &[Vec<String>]) -> String {
    table(&["wall", "type", "families", "fixtures"], rows)
}

#[derive(Debug, Clone, Default)]
pub struct BoundsQuery {
    pub degree: Option<Rational>,
    pub c: Option<Rational>,
    pub ord: Option<Rational>,
    pub d: Option<u64>,
    pub n: Option<u64>,
}

fn quotient_verdict(bound: &Rational) -> String {
    let two = Rational::from_integer(2.into());
    let three = Rational::from_integer(3.into());
    if bound < &two {
        "forces smooth".into()
    } else if bound < &three {
        "at most A1".into()
    } else {
        format!("|G| <= {}", bound.floor())
    }
}

pub fn bounds_report(q: &BoundsQuery, command: &str) -> Result<RunReport> {
    let mut results = serde_json::Map::new();
    let mut md = String::new();
    let degree = match (&q.degree, &q.c) {
        (Some(d), _) => Some(d.clone()),
        (None, Some(c)) => {
            if !(c > &Rational::from_integer(0.into()) && c < &crate::lattice::rat(1, 2)) {
                return Err(Error::OutOfRange(format!("c = {c} is outside (0, 1/2)")));
            }
            Some(quintic_pair_degree(c))
        }
        (None, None) => None,
    };
    if let Some(deg) = &degree {
        let b = quotient_order_bound(deg)?;
        let v = quotient_verdict(&b);
        md.push_str(&format!("degree = {}\n\nquotient order bound 9/degree = {}: {v}\n", approx(deg), approx(&b)));
        results.insert("degree".into(), json!(fmt_q(deg)));
        results.insert("quotient_order_bound".into(), json!(fmt_q(&b)));
        results.insert("verdict".into(), json!(v));
    }
    if q.d.is_some() || q.n.is_some() {
        let (Some(d), Some(n)) = (q.d, q.n) else {
            return Err(Error::Parse("--d and --n must be given together".into()));
        };
        let c = q.c.clone().ok_or_else(|| Error::Parse("index feasibility needs --c".into()))?;
        let ord = q.ord.clone().unwrap_or_else(|| Rational::from_integer(0.into()));
        let ok = index_feasibility(d, n, &c, &ord)?;
        md.push_str(&format!(
            "\nindex feasibility for 1/({d}*{n}^2) point at c = {c}, ord >= {ord}: {}\n",
            if ok { "feasible" } else { "excluded" }
        ));
        results.insert(
            "index_feasibility".into(),
            json!({"d": d, "n": n, "c": fmt_q(&c), "ord": fmt_q(&ord), "feasible": ok}),
        );
    }
    if let Some(c) = &q.c {
        if let Ok(t) = vgit_slope(c) {
            md.push_str(&format!("\nVGIT slope t(c) = {}\n", approx(&t)));
            results.insert("vgit_slope".into(), json!(fmt_q(&t)));
        }
    }
    if results.is_empty() {
        return Err(Error::Parse("bounds needs --degree, --c or --d/--n".into()));
    }
    Ok(RunReport::new(command, &[], Value::Object(results), md))
}

pub fn fixtures_report(catalog: &Catalog, family: Option<&str>, command: &str) -> Result<RunReport> {
    let ids = catalog.fixture_ids(family)?;
    let mut rows = Vec::new();
    let mut list = Vec::new();
    for id in &ids {
        let (fam, doc) = catalog.fixture_doc(id)?;
        let wall = doc.expected.wall.as_ref().map(|w| fmt_q(&w.0));
        let refs: Vec<&str> =
            doc.sources.iter().filter(|(_, p)| **p == Provenance::Reference).map(|(k, _)| k.as_str()).collect();
        rows.push(vec![
            id.clone(),
            fam.family.clone(),
            doc.surface.clone(),
            wall.clone().unwrap_or_else(|| "-".into()),
            doc.description.clone(),
        ]);
        list.push(json!({"id": id, "family": fam.family, "surface": doc.surface, "wall": wall,
            "reference_values": refs, "description": doc.description}));
    }
    let md = format!(
        "catalog: {} ({} fixtures)\n\n{}",
        catalog.origin(),
        ids.len(),
        table(&["id", "family", "surface", "wall", "description"], &rows)
    );
    Ok(RunReport::new(command, &[catalog.digest()], json!({"catalog": catalog.origin(), "fixtures": list}), md))
}

/// Volume profile of a fixture's valuation.
pub fn fixture_profile_report(catalog: &Catalog, id: &str, command: &str) -> Result<RunReport> {
    let f = catalog.load_fixture(id)?;
    let ev = evaluate(&f.pair, &f.valuation)?;
    let md = format!(
        "profile of `{}` along `{}`\n\n{}\nS = {}\n",
        f.id,
        f.valuation.name,
        profile_markdown(&ev.profile),
        s_display(&f.pair, &ev.s_prefactor)
    );
    let mut results = profile_json(&ev.profile);
    results["fixture"] = json!(f.id);
    results["valuation"] = json!(f.valuation.name);
    results["S_prefactor"] = json!(fmt_q(&ev.s_prefactor));
    Ok(RunReport::new(command, &[catalog.digest()], results, md))
}

/// Volume profile of `origin - t·ray` on a surface.
pub fn ray_profile(model: &SurfaceModel, origin_src: Option<&str>, ray_src: &str) -> Result<VolumeProfile> {
    let origin = match origin_src {
        Some(s) => parse_div_expr(s)?.to_class(model)?,
        None => model.neg_k().clone(),
    };
    let dir = parse_div_expr(ray_src)?.to_ray(model)?;
    volume_profile(model, &origin, &dir)
}
