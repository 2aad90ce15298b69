//! Surface models: a resolution lattice with a canonical class, declared
//! Mori-cone generators and the curves contracted to reach the singular
//! target.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{int, is_negative_definite, rat, solve_linear, DivClass, IntersectionLattice, Rational};

/// A declared extremal curve of the resolution.
#[derive(Debug, Clone, PartialEq)]
pub struct MoriGen {
    pub name: String,
    pub class: DivClass,
}

impl MoriGen {
    pub fn new(name: impl Into<String>, class: DivClass) -> Self {
        MoriGen { name: name.into(), class }
    }
}

/// A (possibly singular) surface `X`, stored as a resolution `Y` together
/// with the contracted curves of `Y -> X`.
///
/// The Mori list is treated as complete by every nef test. Supplying all
/// extremal curves is the author's responsibility; a missing curve makes
/// Zariski decompositions and volumes silently wrong.
#[derive(Debug, Clone)]
pub struct SurfaceModel {
    id: String,
    lattice: Arc<IntersectionLattice>,
    canonical: DivClass,
    mori: Vec<MoriGen>,
    contracted: Vec<String>,
    contracted_gram: Vec<Vec<Rational>>,
    k_discrepancies: Vec<Rational>,
    neg_k: DivClass,
    degree: Rational,
}

impl SurfaceModel {
    /// Validates the data and solves the k-discrepancies `a_j` from
    /// `(K_Y - Σ a_j C_j)·C_i = 0`. When `declared_k` is given it must agree
    /// with the solved values.
    pub fn new(
        id: impl Into<String>,
        lattice: Arc<IntersectionLattice>,
        canonical: DivClass,
        mori: Vec<MoriGen>,
        contracted: Vec<String>,
        declared_k: Option<&BTreeMap<String, Rational>>,
    ) -> Result<Self> {
        let id = id.into();
        if !Arc::ptr_eq(canonical.lattice(), &lattice) && **canonical.lattice() != *lattice {
            return Err(Error::LatticeMismatch);
        }
        let mut seen = BTreeSet::new();
        for g in &mori {
            if !seen.insert(g.name.as_str()) {
                return Err(Error::Validation(format!("{id}: duplicate Mori generator `{}`", g.name)));
            }
            if !g.class.same_lattice(&canonical) {
                return Err(Error::LatticeMismatch);
            }
            if g.class.is_zero() {
                return Err(Error::Validation(format!("{id}: Mori generator `{}` is the zero class", g.name)));
            }
        }
        let rank = lattice.rank();
        for g in &mori {
            let sq = g.class.square();
            let kc = canonical.pair(&g.class)?;
            let extremal = sq.is_negative() || (sq.is_zero() && kc.is_negative()) || (rank == 1 && sq.is_positive());
            if !extremal {
                return Err(Error::Validation(format!(
                    "{id}: generator `{}` has C^2 = {sq} and K.C = {kc}; need C^2 < 0 or C^2 = 0 with K.C < 0",
                    g.name
                )));
            }
            if lattice.is_integral() && canonical.is_integral() && g.class.is_integral() && sq.is_negative() {
                let arith = &sq + &kc;
                let ok = arith.is_integer() && arith.to_integer().is_even() && arith >= int(-2);
                if !ok {
                    return Err(Error::Validation(format!(
                        "{id}: generator `{}` fails adjunction: C^2 + K.C = {arith}",
                        g.name
                    )));
                }
            }
        }
        let mut cset = BTreeSet::new();
        for c in &contracted {
            if !mori.iter().any(|g| &g.name == c) {
                return Err(Error::UnknownName(format!("{id}: contracted curve `{c}` is not a Mori generator")));
            }
            if !cset.insert(c.as_str()) {
                return Err(Error::Validation(format!("{id}: curve `{c}` contracted twice")));
            }
        }
        let classes: Vec<&DivClass> =
            contracted.iter().map(|c| &mori.iter().find(|g| &g.name == c).unwrap().class).collect();
        let gram: Vec<Vec<Rational>> =
            classes.iter().map(|a| classes.iter().map(|b| a.pair(b).unwrap()).collect()).collect();
        if !is_negative_definite(&gram) {
            return Err(Error::Configuration(format!("{id}: contracted curves are not negative definite")));
        }
        let rhs: Vec<Rational> = classes.iter().map(|c| canonical.pair(c).unwrap()).collect();
        let k_discrepancies = if contracted.is_empty() { Vec::new() } else { solve_linear(&gram, &rhs)? };
        if let Some(decl) = declared_k {
            for name in decl.keys() {
                if !cset.contains(name.as_str()) {
                    return Err(Error::Validation(format!("{id}: k-discrepancy given for non-contracted `{name}`")));
                }
            }
            for (name, a) in contracted.iter().zip(&k_discrepancies) {
                match decl.get(name) {
                    Some(d) if d == a => {}
                    Some(d) => {
                        return Err(Error::Validation(format!(
                            "{id}: declared k-discrepancy of `{name}` is {d}, computed {a}"
                        )))
                    }
                    None => {
                        return Err(Error::Validation(format!("{id}: missing k-discrepancy for `{name}`")));
                    }
                }
            }
        }
        let mut pi_k = canonical.clone();
        for (c, a) in classes.iter().zip(&k_discrepancies) {
            pi_k = pi_k.add_scaled(c, &-a)?;
        }
        let neg_k = -&pi_k;
        let degree = neg_k.square();
        if !degree.is_positive() {
            return Err(Error::Validation(format!("{id}: anticanonical degree {degree} is not positive")));
        }
        Ok(SurfaceModel {
            id,
            lattice,
            canonical,
            mori,
            contracted,
            contracted_gram: gram,
            k_discrepancies,
            neg_k,
            degree,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn lattice(&self) -> &Arc<IntersectionLattice> {
        &self.lattice
    }

    /// `K_Y` on the resolution.
    pub fn canonical(&self) -> &DivClass {
        &self.canonical
    }

    pub fn mori(&self) -> &[MoriGen] {
        &self.mori
    }

    pub fn contracted(&self) -> &[String] {
        &self.contracted
    }

    pub fn is_contracted(&self, name: &str) -> bool {
        self.contracted.iter().any(|c| c == name)
    }

    pub fn generator(&self, name: &str) -> Option<&DivClass> {
        self.mori.iter().find(|g| g.name == name).map(|g| &g.class)
    }

    /// `a_j` with `K_Y = π*K_X + Σ a_j C_j`, in the order of [`Self::contracted`].
    pub fn k_discrepancies(&self) -> BTreeMap<String, Rational> {
        self.contracted.iter().cloned().zip(self.k_discrepancies.iter().cloned()).collect()
    }

    pub fn k_discrepancy(&self, name: &str) -> Option<&Rational> {
        self.contracted.iter().position(|c| c == name).map(|i| &self.k_discrepancies[i])
    }

    /// Log discrepancy of a curve of `Y` over `X` with empty boundary.
    pub fn log_discrepancy_of_curve(&self, name: &str) -> Rational {
        Rational::one() + self.k_discrepancy(name).cloned().unwrap_or_else(Rational::zero)
    }

    /// `π*(-K_X)` on the resolution.
    pub fn neg_k(&self) -> &DivClass {
        &self.neg_k
    }

    pub fn anticanonical_degree(&self) -> &Rational {
        &self.degree
    }

    fn contracted_classes(&self) -> impl Iterator<Item = &DivClass> {
        self.contracted.iter().map(|c| self.generator(c).unwrap())
    }

    /// Coefficients `c_j` with `d + Σ c_j C_j` orthogonal to every contracted curve.
    pub fn pullback_coefficients(&self, d: &DivClass) -> Result<Vec<(String, Rational)>> {
        if self.contracted.is_empty() {
            return Ok(Vec::new());
        }
        let rhs = self.contracted_classes().map(|c| d.pair(c).map(|x| -x)).collect::<Result<Vec<_>>>()?;
        let x = solve_linear(&self.contracted_gram, &rhs)
            .map_err(|_| Error::Configuration(format!("{}: contracted Gram matrix is singular", self.id)))?;
        Ok(self.contracted.iter().cloned().zip(x).collect())
    }

    /// Mumford pullback of the pushforward of `d`: the unique `d + Σ c_j C_j`
    /// orthogonal to the contracted curves.
    pub fn pullback_weil(&self, d: &DivClass) -> Result<DivClass> {
        let mut out = d.clone();
        for ((_, k), c) in self.pullback_coefficients(d)?.iter().zip(self.contracted_classes()) {
            out = out.add_scaled(c, k)?;
        }
        Ok(out)
    }
}

/// Centre data for a weighted blow-up at a smooth point of the resolution.
#[derive(Debug, Clone)]
pub struct CenterSpec {
    /// Coprime positive weights `(a, b)`.
    pub weights: (u32, u32),
    /// `ord_E` of the Mori generators through the centre.
    pub through: BTreeMap<String, Rational>,
    /// Curves that become extremal on the extension, as base classes with
    /// their `ord_E`.
    pub extra_mori: Vec<(String, DivClass, Rational)>,
}

impl CenterSpec {
    pub fn ordinary() -> Self {
        CenterSpec { weights: (1, 1), through: BTreeMap::new(), extra_mori: Vec::new() }
    }
}

pub const EXCEPTIONAL_NAME: &str = "E";

/// The result of a weighted blow-up: a new model whose lattice has one extra
/// basis element `E`.
#[derive(Debug, Clone)]
pub struct BlowupExtension {
    base: Arc<SurfaceModel>,
    model: Arc<SurfaceModel>,
    e_class: DivClass,
    weights: (u32, u32),
    a_over_base: Rational,
}

pub fn build_blowup_extension(base: &Arc<SurfaceModel>, center: &CenterSpec) -> Result<BlowupExtension> {
    let (a, b) = center.weights;
    if a == 0 || b == 0 || a.gcd(&b) != 1 {
        return Err(Error::Validation(format!("weights ({a}, {b}) must be coprime positive integers")));
    }
    let bl = base.lattice();
    if bl.index_of(EXCEPTIONAL_NAME).is_some() {
        return Err(Error::Validation(format!("base lattice already has a basis element `{EXCEPTIONAL_NAME}`")));
    }
    let r = bl.rank();
    let ab = i64::from(a) * i64::from(b);
    let mut names = bl.names().to_vec();
    names.push(EXCEPTIONAL_NAME.to_string());
    let mut gram: Vec<Vec<Rational>> = bl
        .gram()
        .iter()
        .map(|row| {
            let mut row = row.clone();
            row.push(Rational::zero());
            row
        })
        .collect();
    let mut last = vec![Rational::zero(); r];
    last.push(rat(-1, ab));
    gram.push(last);
    let lattice = Arc::new(IntersectionLattice::new(names, gram)?);
    let e_class = DivClass::basis(&lattice, r);
    let lift = |d: &DivClass| d.extend_to(&lattice);

    for (name, o) in &center.through {
        if base.generator(name).is_none() {
            return Err(Error::UnknownName(format!("centre passes through unknown curve `{name}`")));
        }
        if o.is_negative() {
            return Err(Error::Validation(format!("negative order {o} along `{name}`")));
        }
    }
    let mut mori = Vec::new();
    let mut transforms = Vec::new();
    for g in base.mori() {
        let o = center.through.get(&g.name).cloned().unwrap_or_else(Rational::zero);
        let c = lift(&g.class)?.add_scaled(&e_class, &-&o)?;
        if !o.is_zero() {
            transforms.push((g.name.clone(), c.clone()));
        }
        mori.push(MoriGen::new(g.name.clone(), c));
    }
    mori.push(MoriGen::new(EXCEPTIONAL_NAME, e_class.clone()));
    for (name, class, o) in &center.extra_mori {
        if mori.iter().any(|g| &g.name == name) {
            return Err(Error::Validation(format!("extra curve `{name}` clashes with an existing generator")));
        }
        if o.is_negative() {
            return Err(Error::Validation(format!("negative order {o} along `{name}`")));
        }
        if !class.same_lattice(base.canonical()) {
            return Err(Error::LatticeMismatch);
        }
        let c = lift(class)?.add_scaled(&e_class, &-o)?;
        transforms.push((name.clone(), c.clone()));
        mori.push(MoriGen::new(name.clone(), c));
    }
    // distinct curves through the centre must still meet non-negatively
    for (i, (n1, c1)) in transforms.iter().enumerate() {
        for (n2, c2) in &transforms[i + 1..] {
            let p = c1.pair(c2)?;
            if p.is_negative() {
                return Err(Error::Validation(format!(
                    "inconsistent multiplicities: transforms of `{n1}` and `{n2}` meet in {p}"
                )));
            }
        }
    }
    let weight_sum = int(i64::from(a) + i64::from(b));
    let canonical = lift(base.canonical())?.add_scaled(&e_class, &(&weight_sum - Rational::one()))?;
    let mut contracted = base.contracted().to_vec();
    contracted.push(EXCEPTIONAL_NAME.to_string());
    let id = format!("{}+E({a},{b})", base.id());
    let model = SurfaceModel::new(id, Arc::clone(&lattice), canonical, mori, contracted, None)?;

    if model.neg_k() != &lift(base.neg_k())? {
        return Err(Error::Configuration("pullback of -K_X does not lift to the extension".into()));
    }
    for i in 0..r {
        let di = DivClass::basis(bl, i);
        let li = lift(&di)?;
        if !li.pair(&e_class)?.is_zero() {
            return Err(Error::Configuration("lifted class is not orthogonal to E".into()));
        }
        for j in 0..r {
            let dj = DivClass::basis(bl, j);
            if li.pair(&lift(&dj)?)? != di.pair(&dj)? {
                return Err(Error::Configuration("pullback is not an isometry".into()));
            }
        }
    }
    Ok(BlowupExtension {
        base: Arc::clone(base),
        model: Arc::new(model),
        e_class,
        weights: (a, b),
        a_over_base: weight_sum,
    })
}

impl BlowupExtension {
    pub fn base(&self) -> &Arc<SurfaceModel> {
        &self.base
    }

    /// The extended model; `E` is among its contracted curves so that
    /// `π*(-K_X)` is computed relative to the original target.
    pub fn model(&self) -> &Arc<SurfaceModel> {
        &self.model
    }

    pub fn e_class(&self) -> &DivClass {
        &self.e_class
    }

    pub fn weights(&self) -> (u32, u32) {
        self.weights
    }

    /// `a + b`: the log discrepancy over a smooth base with empty boundary.
    pub fn a_over_base(&self) -> &Rational {
        &self.a_over_base
    }

    /// Log discrepancy of `E` over the singular target; differs from
    /// [`Self::a_over_base`] when the centre lies on contracted curves.
    pub fn a_over_target(&self) -> Rational {
        self.model.log_discrepancy_of_curve(EXCEPTIONAL_NAME)
    }

    pub fn pullback(&self, d: &DivClass) -> Result<DivClass> {
        if !d.same_lattice(self.base.canonical()) {
            return Err(Error::LatticeMismatch);
        }
        d.extend_to(self.model.lattice())
    }

    /// `pullback(d) - ord·E`.
    pub fn proper_transform(&self, d: &DivClass, ord: &Rational) -> Result<DivClass> {
        self.pullback(d)?.add_scaled(&self.e_class, &-ord)
    }
}
