//! Versioned JSON fixtures: surfaces, log pairs, valuations and the values
//! they are expected to produce. See `catalog/SCHEMA.md` for the format.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::lattice::{parse_rational, rat, DivClass, IntersectionLattice, Rational};
use crate::stability::{
    evaluate, solve_wall, AffineRatFn, BoundaryComponent, EquivTag, Evaluation, LogPair, ValuationSpec, WallOutcome,
};
use crate::surface::{CenterSpec, MoriGen, SurfaceModel};

pub const CATALOG_SCHEMA: &str = "kwall-catalog/1";
pub const WALLS_SCHEMA: &str = "kwall-walls/1";
pub const CATALOG_ENV: &str = "KWALL_CATALOG";

pub(crate) fn ser_q<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

/// A rational in a JSON document: `"p/q"`, `"n"` or a bare integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ser_q(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct QVisitor;
        impl<'de> Visitor<'de> for QVisitor {
            type Value = Q;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational as \"p/q\" or an integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Q, E> {
                parse_rational(v).map(Q).map_err(|_| E::custom(format!("`{v}` is not a rational")))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Q, E> {
                Ok(Q(crate::lattice::int(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Q, E> {
                Ok(Q(Rational::from_integer(v.into())))
            }
        }
        d.deserialize_any(QVisitor)
    }
}

fn qs(v: &[Q]) -> Vec<Rational> {
    v.iter().map(|q| q.0.clone()).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedClassDoc {
    pub name: String,
    pub class: Vec<Q>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceDoc {
    #[serde(default)]
    pub description: String,
    pub basis: Vec<String>,
    pub gram: Vec<Vec<Q>>,
    pub canonical: Vec<Q>,
    pub mori: Vec<NamedClassDoc>,
    #[serde(default)]
    pub contracted: Vec<String>,
    #[serde(default)]
    pub k_discrepancies: BTreeMap<String, Q>,
}

impl SurfaceDoc {
    pub fn build(&self, id: &str) -> Result<SurfaceModel> {
        let gram = self.gram.iter().map(|r| qs(r)).collect();
        let lattice = Arc::new(IntersectionLattice::new(self.basis.clone(), gram)?);
        let report = crate::lattice::validate_lattice(&lattice);
        if !report.passed() {
            return Err(Error::Validation(format!("{id}: {}", report.violations.join("; "))));
        }
        let canonical = DivClass::new(&lattice, qs(&self.canonical))?;
        let mori = self
            .mori
            .iter()
            .map(|g| Ok(MoriGen::new(g.name.clone(), DivClass::new(&lattice, qs(&g.class))?)))
            .collect::<Result<Vec<_>>>()?;
        let declared: BTreeMap<String, Rational> =
            self.k_discrepancies.iter().map(|(k, v)| (k.clone(), v.0.clone())).collect();
        SurfaceModel::new(id, lattice, canonical, mori, self.contracted.clone(), Some(&declared))
    }

    pub fn from_model(model: &SurfaceModel, description: &str) -> Self {
        let q = |v: &[Rational]| v.iter().cloned().map(Q).collect::<Vec<_>>();
        SurfaceDoc {
            description: description.to_string(),
            basis: model.lattice().names().to_vec(),
            gram: model.lattice().gram().iter().map(|r| q(r)).collect(),
            canonical: q(model.canonical().coords()),
            mori: model
                .mori()
                .iter()
                .map(|g| NamedClassDoc { name: g.name.clone(), class: q(g.class.coords()) })
                .collect(),
            contracted: model.contracted().to_vec(),
            k_discrepancies: model.k_discrepancies().into_iter().map(|(k, v)| (k, Q(v))).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryDoc {
    pub name: String,
    pub class: Vec<Q>,
    pub mult: Q,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtraCurveDoc {
    pub name: String,
    pub class: Vec<Q>,
    pub ord: Q,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlowupDoc {
    pub weights: [u32; 2],
    #[serde(default)]
    pub through: BTreeMap<String, Q>,
    #[serde(default)]
    pub boundary_ord: BTreeMap<String, Q>,
    #[serde(default)]
    pub extra_mori: Vec<ExtraCurveDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValuationDoc {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blowup: Option<BlowupDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<Q>,
}

impl ValuationDoc {
    pub fn build(&self, surface: &SurfaceModel, tag: EquivTag) -> Result<ValuationSpec> {
        let spec = match (&self.curve, &self.blowup) {
            (Some(c), None) => ValuationSpec::curve(self.name.clone(), c.clone()),
            (None, Some(b)) => {
                let extra_mori = b
                    .extra_mori
                    .iter()
                    .map(|e| Ok((e.name.clone(), DivClass::new(surface.lattice(), qs(&e.class))?, e.ord.0.clone())))
                    .collect::<Result<Vec<_>>>()?;
                let center = CenterSpec {
                    weights: (b.weights[0], b.weights[1]),
                    through: b.through.iter().map(|(k, v)| (k.clone(), v.0.clone())).collect(),
                    extra_mori,
                };
                let ords = b.boundary_ord.iter().map(|(k, v)| (k.clone(), v.0.clone())).collect();
                ValuationSpec::exceptional(self.name.clone(), center, ords)
            }
            _ => {
                return Err(Error::Validation(format!(
                    "valuation `{}` needs exactly one of `curve` and `blowup`",
                    self.name
                )))
            }
        };
        let spec = match &self.scale {
            Some(s) => spec.with_scale(s.0.clone()),
            None => spec,
        };
        Ok(spec.with_tag(tag))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AffineDoc {
    #[serde(rename = "const")]
    pub constant: Q,
    pub slope: Q,
}

impl AffineDoc {
    fn to_fn(&self) -> AffineRatFn {
        AffineRatFn::new(self.constant.0.clone(), self.slope.0.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedDoc {
    #[serde(rename = "A")]
    pub a: AffineDoc,
    #[serde(rename = "S")]
    pub s: Q,
    pub beta: AffineDoc,
    pub wall: Option<Q>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub identically_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquivariantDoc {
    pub tag: EquivTag,
    pub valuation: ValuationDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureDoc {
    pub id: String,
    pub surface: String,
    #[serde(default)]
    pub description: String,
    pub boundary: Vec<BoundaryDoc>,
    pub valuation: ValuationDoc,
    pub expected: ExpectedDoc,
    #[serde(default)]
    pub sources: BTreeMap<String, Provenance>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub equivariant: Vec<EquivariantDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDoc {
    pub schema: String,
    pub family: String,
    pub surfaces: BTreeMap<String, SurfaceDoc>,
    pub fixtures: Vec<FixtureDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WallDoc {
    pub wall: Q,
    pub divisorial: bool,
    pub families: Vec<String>,
    pub description: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WallsDoc {
    pub schema: String,
    pub walls: Vec<WallDoc>,
}

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    /// A published value.
    #[serde(rename = "reference")]
    Reference,
    /// Computed by an independent oracle when the fixture was written.
    #[serde(rename = "derived-by-oracle")]
    DerivedByOracle,
}

/// A standalone pair document accepted by the CLI: the surface is either a
/// catalog id or an inline surface document.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDoc {
    #[serde(default)]
    pub id: Option<String>,
    pub surface: SurfaceRef,
    pub boundary: Vec<BoundaryDoc>,
    #[serde(default)]
    pub valuation: Option<ValuationDoc>,
    #[serde(default)]
    pub equivariant: Vec<EquivariantDoc>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum SurfaceRef {
    Id(String),
    Inline(SurfaceDoc),
}

pub(crate) fn parse_json<T: serde::de::DeserializeOwned>(origin: &str, text: &str) -> Result<T> {
    let mut de = serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(&mut de)
        .map_err(|e| Error::Schema { path: format!("{origin}:{}", e.path()), message: e.inner().to_string() })
}

fn build_boundary(surface: &SurfaceModel, docs: &[BoundaryDoc]) -> Result<Vec<BoundaryComponent>> {
    let mut names = BTreeSet::new();
    docs.iter()
        .map(|b| {
            if !names.insert(b.name.as_str()) {
                return Err(Error::Validation(format!("boundary component `{}` listed twice", b.name)));
            }
            Ok(BoundaryComponent {
                name: b.name.clone(),
                class: DivClass::new(surface.lattice(), qs(&b.class))?,
                mult: b.mult.0.clone(),
            })
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct Expected {
    pub a: AffineRatFn,
    pub s: Rational,
    pub beta: AffineRatFn,
    pub wall: Option<Rational>,
    pub identically_zero: bool,
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub id: String,
    pub family: String,
    pub description: String,
    pub pair: LogPair,
    pub valuation: ValuationSpec,
    pub expected: Expected,
    pub sources: BTreeMap<String, Provenance>,
    pub equivariant: Vec<ValuationSpec>,
}

#[derive(Debug, Clone)]
pub struct FixtureOutcome {
    pub evaluation: Evaluation,
    pub wall: WallOutcome,
    /// Human-readable differences from the expected block; empty on success.
    pub mismatches: Vec<String>,
}

impl Fixture {
    pub fn evaluate(&self) -> Result<FixtureOutcome> {
        let evaluation = evaluate(&self.pair, &self.valuation)?;
        let wall = solve_wall(&evaluation.beta, self.pair.c_range());
        let e = &self.expected;
        let mut mismatches = Vec::new();
        if evaluation.a != e.a {
            mismatches.push(format!("A: expected {}, computed {}", e.a, evaluation.a));
        }
        if evaluation.s_prefactor != e.s {
            mismatches.push(format!("S: expected {}, computed {}", e.s, evaluation.s_prefactor));
        }
        if evaluation.beta != e.beta {
            mismatches.push(format!("beta: expected {}, computed {}", e.beta, evaluation.beta));
        }
        if wall.wall() != e.wall.as_ref() {
            let shown = e.wall.as_ref().map_or("none".to_string(), |w| w.to_string());
            mismatches.push(format!("wall: expected {shown}, computed {wall}"));
        }
        if e.identically_zero != (wall == WallOutcome::IdenticallyZero) {
            mismatches.push(format!("identically zero: expected {}, computed {wall}", e.identically_zero));
        }
        Ok(FixtureOutcome { evaluation, wall, mismatches })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WallEntry {
    #[serde(serialize_with = "ser_q")]
    pub wall: Rational,
    pub divisorial: bool,
    pub families: Vec<String>,
    pub description: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct WallTable {
    pub walls: Vec<WallEntry>,
}

impl WallTable {
    pub fn values(&self) -> Vec<Rational> {
        self.walls.iter().map(|w| w.wall.clone()).collect()
    }

    pub fn divisorial(&self) -> Vec<Rational> {
        self.walls.iter().filter(|w| w.divisorial).map(|w| w.wall.clone()).collect()
    }

    pub fn get(&self, w: &Rational) -> Option<&WallEntry> {
        self.walls.iter().find(|e| &e.wall == w)
    }
}

const EMBEDDED: &[(&str, &str)] = &[
    ("walls.json", include_str!("../catalog/walls.json")),
    ("ade.json", include_str!("../catalog/ade.json")),
    ("index3.json", include_str!("../catalog/index3.json")),
    ("p2.json", include_str!("../catalog/p2.json")),
    ("sigma5.json", include_str!("../catalog/sigma5.json")),
    ("x11.json", include_str!("../catalog/x11.json")),
    ("x12.json", include_str!("../catalog/x12.json")),
    ("xn.json", include_str!("../catalog/xn.json")),
    ("xprime.json", include_str!("../catalog/xprime.json")),
    ("xq.json", include_str!("../catalog/xq.json")),
    ("xt.json", include_str!("../catalog/xt.json")),
];

/// The fixture collection: family documents plus the wall table.
#[derive(Debug, Clone)]
pub struct Catalog {
    origin: String,
    digest: String,
    families: Vec<FamilyDoc>,
    walls: WallsDoc,
}

impl Catalog {
    /// The catalog compiled into the crate.
    pub fn embedded() -> Result<Self> {
        Self::from_sources("embedded".into(), EMBEDDED.iter().map(|(n, t)| (n.to_string(), t.to_string())).collect())
    }

    /// Reads `walls.json` and every other `*.json` file in `dir`.
    pub fn from_dir(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        let io = |path: &Path, source| Error::Io { path: path.display().to_string(), source };
        let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
            .map_err(|e| io(dir, e))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        files.sort();
        let mut sources = Vec::new();
        for f in files {
            let text = std::fs::read_to_string(&f).map_err(|e| io(&f, e))?;
            sources.push((f.file_name().unwrap().to_string_lossy().into_owned(), text));
        }
        Self::from_sources(dir.display().to_string(), sources)
    }

    /// The directory named by `KWALL_CATALOG`, or the embedded catalog.
    pub fn load() -> Result<Self> {
        match std::env::var_os(CATALOG_ENV) {
            Some(dir) if !dir.is_empty() => Self::from_dir(dir),
            _ => Self::embedded(),
        }
    }

    fn from_sources(origin: String, mut sources: Vec<(String, String)>) -> Result<Self> {
        sources.sort();
        let mut hasher = Sha256::new();
        let mut walls = None;
        let mut families: Vec<FamilyDoc> = Vec::new();
        for (name, text) in &sources {
            hasher.update(name.as_bytes());
            hasher.update([0]);
            hasher.update(text.as_bytes());
            hasher.update([0]);
            if name == "walls.json" {
                let doc: WallsDoc = parse_json(name, text)?;
                if doc.schema != WALLS_SCHEMA {
                    return Err(Error::Schema {
                        path: format!("{name}:schema"),
                        message: format!("expected `{WALLS_SCHEMA}`"),
                    });
                }
                walls = Some(doc);
            } else {
                let doc: FamilyDoc = parse_json(name, text)?;
                if doc.schema != CATALOG_SCHEMA {
                    return Err(Error::Schema {
                        path: format!("{name}:schema"),
                        message: format!("expected `{CATALOG_SCHEMA}`"),
                    });
                }
                families.push(doc);
            }
        }
        let walls =
            walls.ok_or_else(|| Error::Schema { path: origin.clone(), message: "missing walls.json".into() })?;
        families.sort_by(|a, b| a.family.cmp(&b.family));
        let digest = hasher.finalize().iter().map(|b| format!("{b:02x}")).collect();
        let cat = Catalog { origin, digest, families, walls };
        cat.check_structure()?;
        Ok(cat)
    }

    fn check_structure(&self) -> Result<()> {
        let half = rat(1, 2);
        let mut ids = BTreeSet::new();
        let mut surfaces: BTreeMap<&str, &SurfaceDoc> = BTreeMap::new();
        for fam in &self.families {
            for (sid, doc) in &fam.surfaces {
                if let Some(prev) = surfaces.insert(sid, doc) {
                    if prev != doc {
                        return Err(Error::Validation(format!("surface `{sid}` is defined twice with different data")));
                    }
                }
            }
            for f in &fam.fixtures {
                if !ids.insert(f.id.as_str()) {
                    return Err(Error::Validation(format!("duplicate fixture id `{}`", f.id)));
                }
                if !fam.surfaces.contains_key(&f.surface) {
                    return Err(Error::Validation(format!("{}: unknown surface `{}`", f.id, f.surface)));
                }
                if let Some(w) = &f.expected.wall {
                    if !(w.0 > Rational::from_integer(0.into()) && w.0 < half) {
                        return Err(Error::Validation(format!("{}: expected wall {} outside (0, 1/2)", f.id, w.0)));
                    }
                }
                for key in ["A", "S", "beta", "wall"] {
                    if !f.sources.contains_key(key) {
                        return Err(Error::Validation(format!("{}: no provenance for `{key}`", f.id)));
                    }
                }
            }
        }
        let mut prev: Option<&Rational> = None;
        for w in &self.walls.walls {
            if prev.is_some_and(|p| p >= &w.wall.0) {
                return Err(Error::Validation("wall table must be strictly increasing".into()));
            }
            if !(w.wall.0 > Rational::from_integer(0.into()) && w.wall.0 < half) {
                return Err(Error::Validation(format!("wall {} outside (0, 1/2)", w.wall.0)));
            }
            prev = Some(&w.wall.0);
        }
        Ok(())
    }

    pub fn origin(&self) -> &str {
        &self.origin
    }

    /// SHA-256 over the catalog files, as lowercase hex.
    pub fn digest(&self) -> &str {
        &self.digest
    }

    pub fn families(&self) -> Vec<&str> {
        self.families.iter().map(|f| f.family.as_str()).collect()
    }

    pub fn family_docs(&self) -> &[FamilyDoc] {
        &self.families
    }

    /// Fixture ids in lexicographic order, optionally restricted to a family.
    pub fn fixture_ids(&self, family: Option<&str>) -> Result<Vec<String>> {
        if let Some(f) = family {
            if !self.families.iter().any(|d| d.family == f) {
                return Err(Error::UnknownName(format!("family `{f}`; available: {}", self.families().join(", "))));
            }
        }
        let mut ids: Vec<String> = self
            .families
            .iter()
            .filter(|d| family.map_or(true, |f| d.family == f))
            .flat_map(|d| d.fixtures.iter().map(|f| f.id.clone()))
            .collect();
        ids.sort();
        Ok(ids)
    }

    pub fn surface_ids(&self) -> Vec<String> {
        let ids: BTreeSet<String> = self.families.iter().flat_map(|f| f.surfaces.keys().cloned()).collect();
        ids.into_iter().collect()
    }

    pub fn surface_doc(&self, id: &str) -> Result<&SurfaceDoc> {
        self.families
            .iter()
            .find_map(|f| f.surfaces.get(id))
            .ok_or_else(|| Error::UnknownName(format!("surface `{id}`; available: {}", self.surface_ids().join(", "))))
    }

    pub fn surface(&self, id: &str) -> Result<Arc<SurfaceModel>> {
        self.surface_doc(id)?.build(id).map(Arc::new)
    }

    pub fn fixture_doc(&self, id: &str) -> Result<(&FamilyDoc, &FixtureDoc)> {
        for fam in &self.families {
            if let Some(f) = fam.fixtures.iter().find(|f| f.id == id) {
                return Ok((fam, f));
            }
        }
        Err(Error::UnknownFixture { id: id.to_string(), available: self.fixture_ids(None)? })
    }

    /// Builds and validates a fixture.
    pub fn load_fixture(&self, id: &str) -> Result<Fixture> {
        let (fam, doc) = self.fixture_doc(id)?;
        let surface = Arc::new(fam.surfaces[&doc.surface].build(&doc.surface)?);
        let pair = LogPair::new(Arc::clone(&surface), build_boundary(&surface, &doc.boundary)?)?;
        let valuation = doc.valuation.build(&surface, EquivTag::Plain)?;
        let equivariant =
            doc.equivariant.iter().map(|e| e.valuation.build(&surface, e.tag)).collect::<Result<Vec<_>>>()?;
        let e = &doc.expected;
        let expected = Expected {
            a: e.a.to_fn(),
            s: e.s.0.clone(),
            beta: e.beta.to_fn(),
            wall: e.wall.as_ref().map(|w| w.0.clone()),
            identically_zero: e.identically_zero,
        };
        Ok(Fixture {
            id: doc.id.clone(),
            family: fam.family.clone(),
            description: doc.description.clone(),
            pair,
            valuation,
            expected,
            sources: doc.sources.clone(),
            equivariant,
        })
    }

    pub fn expected_wall_list(&self) -> WallTable {
        WallTable {
            walls: self
                .walls
                .walls
                .iter()
                .map(|w| WallEntry {
                    wall: w.wall.0.clone(),
                    divisorial: w.divisorial,
                    families: w.families.clone(),
                    description: w.description.clone(),
                })
                .collect(),
        }
    }

    /// Builds a pair from a standalone document, resolving surface ids
    /// against this catalog.
    pub fn pair_from_doc(&self, doc: &PairDoc) -> Result<(LogPair, Option<ValuationSpec>, Vec<ValuationSpec>)> {
        let surface = Arc::new(match &doc.surface {
            SurfaceRef::Id(id) => self.surface_doc(id)?.build(id)?,
            SurfaceRef::Inline(s) => s.build(doc.id.as_deref().unwrap_or("inline"))?,
        });
        let pair = LogPair::new(Arc::clone(&surface), build_boundary(&surface, &doc.boundary)?)?;
        let v = doc.valuation.as_ref().map(|v| v.build(&surface, EquivTag::Plain)).transpose()?;
        let eq = doc.equivariant.iter().map(|e| e.valuation.build(&surface, e.tag)).collect::<Result<Vec<_>>>()?;
        Ok((pair, v, eq))
    }
}

/// Parses a standalone surface document.
pub fn surface_from_json(id: &str, text: &str) -> Result<SurfaceModel> {
    let doc: SurfaceDoc = parse_json(id, text)?;
    doc.build(id)
}

pub fn pair_doc_from_json(origin: &str, text: &str) -> Result<PairDoc> {
    parse_json(origin, text)
}

pub fn valuation_doc_from_json(origin: &str, text: &str) -> Result<ValuationDoc> {
    parse_json(origin, text)
}

/// [`Catalog::load_fixture`] on [`Catalog::load`].
pub fn load_fixture(id: &str) -> Result<Fixture> {
    Catalog::load()?.load_fixture(id)
}

/// [`Catalog::fixture_ids`] on [`Catalog::load`].
pub fn enumerate_fixtures(family: Option<&str>) -> Result<Vec<String>> {
    Catalog::load()?.fixture_ids(family)
}

/// [`Catalog::expected_wall_list`] on [`Catalog::load`].
pub fn expected_wall_list() -> Result<WallTable> {
    Ok(Catalog::load()?.expected_wall_list())
}
