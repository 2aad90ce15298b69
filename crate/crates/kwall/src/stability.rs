//! A, S and β as exact affine functions of the boundary coefficient `c`,
//! wall solving, equivariant polystability and the local bounds.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{int, rat, DivClass, Rational};
use crate::positivity::{integrate_profile, volume_profile, VolumeProfile};
use crate::surface::{build_blowup_extension, CenterSpec, SurfaceModel, EXCEPTIONAL_NAME};

/// Renders `Σ coeffs[i] var^i` with the leading constant first.
pub fn fmt_poly(coeffs: &[Rational], var: &str) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let mag = c.abs();
        let body = if mono.is_empty() {
            mag.to_string()
        } else if mag.is_one() {
            mono
        } else if mag.is_integer() {
            format!("{mag}{mono}")
        } else {
            format!("({mag}){mono}")
        };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `constant + slope·c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AffineRatFn {
    #[serde(rename = "const", serialize_with = "crate::catalog::ser_q")]
    pub constant: Rational,
    #[serde(serialize_with = "crate::catalog::ser_q")]
    pub slope: Rational,
}

impl AffineRatFn {
    pub fn new(constant: Rational, slope: Rational) -> Self {
        AffineRatFn { constant, slope }
    }

    pub fn constant(v: Rational) -> Self {
        AffineRatFn { constant: v, slope: Rational::zero() }
    }

    pub fn eval(&self, c: &Rational) -> Rational {
        &self.constant + &self.slope * c
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.slope.is_zero()
    }

    pub fn scaled(&self, k: &Rational) -> Self {
        AffineRatFn { constant: &self.constant * k, slope: &self.slope * k }
    }
}

impl std::ops::Sub for &AffineRatFn {
    type Output = AffineRatFn;
    fn sub(self, rhs: &AffineRatFn) -> AffineRatFn {
        AffineRatFn { constant: &self.constant - &rhs.constant, slope: &self.slope - &rhs.slope }
    }
}

impl fmt::Display for AffineRatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_poly(&[self.constant.clone(), self.slope.clone()], "c"))
    }
}

#[derive(Debug, Clone)]
pub struct BoundaryComponent {
    pub name: String,
    /// Class of the proper transform on the resolution.
    pub class: DivClass,
    pub mult: Rational,
}

/// A surface with boundary `D = Σ mult·component ∼ -2K_X`; the pair is
/// `(X, cD)` for `c` in the open interval `c_range`.
#[derive(Debug, Clone)]
pub struct LogPair {
    surface: Arc<SurfaceModel>,
    boundary: Vec<BoundaryComponent>,
    c_range: (Rational, Rational),
}

impl LogPair {
    /// An empty boundary gives a pair whose invariants do not depend on `c`.
    pub fn new(surface: Arc<SurfaceModel>, boundary: Vec<BoundaryComponent>) -> Result<Self> {
        let mut total = DivClass::zero(surface.lattice());
        for b in &boundary {
            if !b.mult.is_positive() {
                return Err(Error::Validation(format!("boundary component `{}` has multiplicity {}", b.name, b.mult)));
            }
            if !b.class.same_lattice(surface.canonical()) {
                return Err(Error::LatticeMismatch);
            }
            total = total.add_scaled(&surface.pullback_weil(&b.class)?, &b.mult)?;
        }
        if !boundary.is_empty() && total != surface.neg_k().scaled(&int(2)) {
            return Err(Error::Validation(format!(
                "{}: boundary pulls back to {total}, expected -2K = {}",
                surface.id(),
                surface.neg_k().scaled(&int(2))
            )));
        }
        Ok(LogPair { surface, boundary, c_range: (Rational::zero(), rat(1, 2)) })
    }

    pub fn surface(&self) -> &Arc<SurfaceModel> {
        &self.surface
    }

    pub fn boundary(&self) -> &[BoundaryComponent] {
        &self.boundary
    }

    pub fn c_range(&self) -> &(Rational, Rational) {
        &self.c_range
    }

    pub fn has_boundary(&self) -> bool {
        !self.boundary.is_empty()
    }

    pub fn component(&self, name: &str) -> Option<&BoundaryComponent> {
        self.boundary.iter().find(|b| b.name == name)
    }

    pub fn contains(&self, c: &Rational) -> bool {
        &self.c_range.0 < c && c < &self.c_range.1
    }

    /// `(-K_X - cD)^2 = deg·(1-2c)^2`.
    pub fn degree_at(&self, c: &Rational) -> Rational {
        let d = self.surface.anticanonical_degree();
        if self.has_boundary() {
            let f = Rational::one() - int(2) * c;
            d * &f * &f
        } else {
            d.clone()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EquivTag {
    Plain,
    Vertical,
    Horizontal,
}

impl fmt::Display for EquivTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EquivTag::Plain => "plain",
            EquivTag::Vertical => "vertical",
            EquivTag::Horizontal => "horizontal",
        })
    }
}

#[derive(Debug, Clone)]
pub enum ValuationKind {
    /// A prime divisor of the resolution, named either by a Mori generator
    /// or by a boundary component.
    Curve(String),
    /// The exceptional divisor of a weighted blow-up at a smooth point of
    /// the resolution. `boundary_ord` lists `ord_E` of each boundary
    /// component's proper transform.
    Exceptional { center: CenterSpec, boundary_ord: BTreeMap<String, Rational> },
}

#[derive(Debug, Clone)]
pub struct ValuationSpec {
    pub name: String,
    pub kind: ValuationKind,
    /// Multiplies the valuation; A, ord and S all scale linearly.
    pub scale: Rational,
    pub tag: EquivTag,
}

impl ValuationSpec {
    pub fn curve(name: impl Into<String>, curve: impl Into<String>) -> Self {
        ValuationSpec {
            name: name.into(),
            kind: ValuationKind::Curve(curve.into()),
            scale: Rational::one(),
            tag: EquivTag::Plain,
        }
    }

    pub fn exceptional(name: impl Into<String>, center: CenterSpec, boundary_ord: BTreeMap<String, Rational>) -> Self {
        ValuationSpec {
            name: name.into(),
            kind: ValuationKind::Exceptional { center, boundary_ord },
            scale: Rational::one(),
            tag: EquivTag::Plain,
        }
    }

    pub fn with_scale(mut self, scale: Rational) -> Self {
        self.scale = scale;
        self
    }

    pub fn with_tag(mut self, tag: EquivTag) -> Self {
        self.tag = tag;
        self
    }
}

/// A valuation made concrete on an ambient model: the ray direction and the
/// unscaled A and ord data.
#[derive(Debug, Clone)]
pub struct ResolvedValuation {
    pub ambient: Arc<SurfaceModel>,
    pub direction: DivClass,
    pub a_x: Rational,
    pub ord_b: Rational,
    pub scale: Rational,
}

pub fn resolve_valuation(pair: &LogPair, v: &ValuationSpec) -> Result<ResolvedValuation> {
    if !v.scale.is_positive() {
        return Err(Error::Validation(format!("valuation `{}` has non-positive scale {}", v.name, v.scale)));
    }
    let s = pair.surface();
    match &v.kind {
        ValuationKind::Curve(c) => {
            let class = s
                .generator(c)
                .or_else(|| pair.component(c).map(|b| &b.class))
                .ok_or_else(|| Error::UnknownName(format!("curve `{c}` on {}", s.id())))?;
            let (direction, a_x, ord_b) = if s.is_contracted(c) {
                let mut ord = Rational::zero();
                for b in pair.boundary() {
                    let coeffs = s.pullback_coefficients(&b.class)?;
                    let k = coeffs.iter().find(|(n, _)| n == c).map(|(_, k)| k.clone()).unwrap_or_else(Rational::zero);
                    ord += &b.mult * k;
                }
                (class.clone(), s.log_discrepancy_of_curve(c), ord)
            } else {
                let ord: Rational = pair.boundary().iter().filter(|b| &b.name == c).map(|b| b.mult.clone()).sum();
                (s.pullback_weil(class)?, Rational::one(), ord)
            };
            Ok(ResolvedValuation { ambient: Arc::clone(s), direction, a_x, ord_b, scale: v.scale.clone() })
        }
        ValuationKind::Exceptional { center, boundary_ord } => {
            for (name, o) in &center.through {
                if let (Some(_), Some(bo)) = (pair.component(name), boundary_ord.get(name)) {
                    if bo != o {
                        return Err(Error::Validation(format!(
                            "`{name}` has order {o} through the centre but boundary order {bo}"
                        )));
                    }
                }
            }
            for name in boundary_ord.keys() {
                if pair.component(name).is_none() {
                    return Err(Error::UnknownName(format!("boundary order given for unknown component `{name}`")));
                }
            }
            let ext = build_blowup_extension(s, center)?;
            let m = ext.model();
            let mut ord = Rational::zero();
            let mut total = DivClass::zero(m.lattice());
            for b in pair.boundary() {
                let o = boundary_ord.get(&b.name).cloned().unwrap_or_else(Rational::zero);
                let t = ext.proper_transform(&b.class, &o)?;
                let pb = m.pullback_weil(&t)?;
                total = total.add_scaled(&pb, &b.mult)?;
                let coeffs = m.pullback_coefficients(&t)?;
                let k = coeffs
                    .iter()
                    .find(|(n, _)| n == EXCEPTIONAL_NAME)
                    .map(|(_, k)| k.clone())
                    .unwrap_or_else(Rational::zero);
                ord += &b.mult * k;
            }
            if pair.has_boundary() && total != m.neg_k().scaled(&int(2)) {
                return Err(Error::Validation(format!("boundary orders along `{}` are inconsistent", v.name)));
            }
            let a_x = ext.a_over_target();
            if !a_x.is_positive() {
                return Err(Error::Validation(format!("`{}` has log discrepancy {a_x}", v.name)));
            }
            Ok(ResolvedValuation {
                ambient: Arc::clone(m),
                direction: ext.e_class().clone(),
                a_x,
                ord_b: ord,
                scale: v.scale.clone(),
            })
        }
    }
}

/// Everything computed for one valuation.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub a: AffineRatFn,
    /// Prefactor `s` of `S = s(1 - 2c)`, already scaled.
    pub s_prefactor: Rational,
    pub s: AffineRatFn,
    pub beta: AffineRatFn,
    pub profile: VolumeProfile,
}

pub fn evaluate(pair: &LogPair, v: &ValuationSpec) -> Result<Evaluation> {
    let r = resolve_valuation(pair, v)?;
    let profile = volume_profile(&r.ambient, r.ambient.neg_k(), &r.direction)?;
    let s_prefactor = &r.scale * integrate_profile(&profile) / r.ambient.anticanonical_degree();
    let boundary = if pair.has_boundary() { Rational::one() } else { Rational::zero() };
    let a = AffineRatFn::new(&r.scale * &r.a_x, -(&r.scale * &r.ord_b) * &boundary);
    let s = AffineRatFn::new(s_prefactor.clone(), int(-2) * &s_prefactor * &boundary);
    let beta = &a - &s;
    Ok(Evaluation { a, s_prefactor, s, beta, profile })
}

pub fn log_discrepancy(pair: &LogPair, v: &ValuationSpec) -> Result<AffineRatFn> {
    let r = resolve_valuation(pair, v)?;
    let slope = if pair.has_boundary() { -(&r.scale * &r.ord_b) } else { Rational::zero() };
    Ok(AffineRatFn::new(&r.scale * &r.a_x, slope))
}

pub fn s_invariant(pair: &LogPair, v: &ValuationSpec) -> Result<AffineRatFn> {
    evaluate(pair, v).map(|e| e.s)
}

pub fn beta(pair: &LogPair, v: &ValuationSpec) -> Result<AffineRatFn> {
    evaluate(pair, v).map(|e| e.beta)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WallOutcome {
    Wall(Rational),
    OutsideRange(Rational),
    NoRoot,
    IdenticallyZero,
}

impl WallOutcome {
    pub fn wall(&self) -> Option<&Rational> {
        match self {
            WallOutcome::Wall(w) => Some(w),
            _ => None,
        }
    }
}

impl fmt::Display for WallOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WallOutcome::Wall(w) => write!(f, "{w}"),
            WallOutcome::OutsideRange(w) => write!(f, "none (root {w} outside range)"),
            WallOutcome::NoRoot => f.write_str("none (no root)"),
            WallOutcome::IdenticallyZero => f.write_str("identically zero"),
        }
    }
}

/// Root of `b` in the open interval `range`.
pub fn solve_wall(b: &AffineRatFn, range: &(Rational, Rational)) -> WallOutcome {
    if b.slope.is_zero() {
        return if b.constant.is_zero() { WallOutcome::IdenticallyZero } else { WallOutcome::NoRoot };
    }
    let root = -&b.constant / &b.slope;
    if range.0 < root && root < range.1 {
        WallOutcome::Wall(root)
    } else {
        WallOutcome::OutsideRange(root)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum Verdict {
    Polystable,
    SemistableBoundary,
    Unstable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Polystable => "POLYSTABLE",
            Verdict::SemistableBoundary => "SEMISTABLE-BOUNDARY",
            Verdict::Unstable => "UNSTABLE",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TaggedBeta {
    pub name: String,
    pub tag: EquivTag,
    pub beta: AffineRatFn,
    #[serde(serialize_with = "crate::catalog::ser_q")]
    pub value: Rational,
}

/// Outcome of the equivariant β test. The Futaki condition is replaced by
/// "β = 0 on every horizontal divisor"; no Futaki character is computed.
#[derive(Debug, Clone, Serialize)]
pub struct PolystabilityReport {
    #[serde(serialize_with = "crate::catalog::ser_q")]
    pub c: Rational,
    pub verdict: Verdict,
    pub witnesses: Vec<String>,
    pub values: Vec<TaggedBeta>,
}

pub fn polystability_check(pair: &LogPair, vs: &[ValuationSpec], c: &Rational) -> Result<PolystabilityReport> {
    if vs.is_empty() {
        return Err(Error::Validation("polystability needs a non-empty equivariant valuation list".into()));
    }
    let mut betas = Vec::with_capacity(vs.len());
    for v in vs {
        betas.push((v.name.clone(), v.tag, beta(pair, v)?));
    }
    polystability_from_betas(pair, &betas, c)
}

/// Same as [`polystability_check`] with the β functions already computed.
pub fn polystability_from_betas(
    pair: &LogPair,
    betas: &[(String, EquivTag, AffineRatFn)],
    c: &Rational,
) -> Result<PolystabilityReport> {
    if betas.is_empty() {
        return Err(Error::Validation("polystability needs a non-empty equivariant valuation list".into()));
    }
    if !pair.contains(c) {
        return Err(Error::OutOfRange(format!("c = {c} is outside ({}, {})", pair.c_range().0, pair.c_range().1)));
    }
    let mut values = Vec::new();
    for (name, tag, b) in betas {
        if *tag == EquivTag::Plain {
            return Err(Error::Validation(format!("valuation `{name}` has no vertical/horizontal tag")));
        }
        values.push(TaggedBeta { name: name.clone(), tag: *tag, beta: b.clone(), value: b.eval(c) });
    }
    let negative: Vec<String> = values.iter().filter(|v| v.value.is_negative()).map(|v| v.name.clone()).collect();
    let horizontal: Vec<String> =
        values.iter().filter(|v| v.tag == EquivTag::Horizontal && !v.value.is_zero()).map(|v| v.name.clone()).collect();
    let vertical_zero: Vec<String> =
        values.iter().filter(|v| v.tag == EquivTag::Vertical && v.value.is_zero()).map(|v| v.name.clone()).collect();
    let (verdict, witnesses) = if !negative.is_empty() {
        (Verdict::Unstable, negative)
    } else if !horizontal.is_empty() {
        (Verdict::Unstable, horizontal)
    } else if !vertical_zero.is_empty() {
        (Verdict::SemistableBoundary, vertical_zero)
    } else {
        (Verdict::Polystable, Vec::new())
    };
    Ok(PolystabilityReport { c: c.clone(), verdict, witnesses, values })
}

/// Largest admissible order of a local quotient group `G` at a point of a
/// K-semistable pair of the given degree, from `vol(C^2/G) = 4/|G|`.
pub fn quotient_order_bound(pair_degree: &Rational) -> Result<Rational> {
    if !pair_degree.is_positive() {
        return Err(Error::OutOfRange(format!("degree {pair_degree} must be positive")));
    }
    Ok(int(9) / pair_degree)
}

/// Degree `5(1-2c)^2` of a quintic pair with boundary in `|-2K|`.
pub fn quintic_pair_degree(c: &Rational) -> Rational {
    let f = Rational::one() - int(2) * c;
    int(5) * &f * &f
}

/// Necessary condition for a `1/(dn^2)(1, dna-1)` point to persist:
/// `dn^2 · (4/9) · 5(1-2c)^2 <= (2 - c·ord)^2`.
pub fn index_feasibility(d: u64, n: u64, c: &Rational, ord_lower: &Rational) -> Result<bool> {
    if d == 0 || n == 0 {
        return Err(Error::OutOfRange("d and n must be positive".into()));
    }
    if !(c.is_positive() && c < &rat(1, 2)) {
        return Err(Error::OutOfRange(format!("c = {c} is outside (0, 1/2)")));
    }
    if ord_lower.is_negative() {
        return Err(Error::OutOfRange(format!("ord = {ord_lower} is negative")));
    }
    let dn2 = Rational::from_integer((u128::from(d) * u128::from(n) * u128::from(n)).into());
    let lhs = dn2 * rat(4, 9) * quintic_pair_degree(c);
    let r = int(2) - c * ord_lower;
    Ok(lhs <= &r * &r)
}

/// `t(c) = (25 - 20c) / (28c + 1)` on `[1/4, 1/2)`.
pub fn vgit_slope(c: &Rational) -> Result<Rational> {
    if c < &rat(1, 4) || c >= &rat(1, 2) {
        return Err(Error::OutOfRange(format!("c = {c} is outside [1/4, 1/2)")));
    }
    Ok((int(25) - int(20) * c) / (int(28) * c + int(1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_display() {
        assert_eq!(AffineRatFn::new(int(1), int(-4)).to_string(), "1 - 4c");
        assert_eq!(AffineRatFn::new(int(0), rat(34, 15)).to_string(), "(34/15)c");
        assert_eq!(AffineRatFn::new(rat(2, 15), rat(-34, 15)).to_string(), "2/15 - (34/15)c");
        assert_eq!(AffineRatFn::constant(int(0)).to_string(), "0");
    }

    #[test]
    fn wall_examples() {
        let range = (int(0), rat(1, 2));
        let a = AffineRatFn::new(int(1), int(-4));
        let s = AffineRatFn::new(rat(13, 15), rat(-26, 15));
        assert_eq!(solve_wall(&(&a - &s), &range), WallOutcome::Wall(rat(1, 17)));
        let a = AffineRatFn::new(int(3), int(-7));
        let s = AffineRatFn::new(rat(32, 15), rat(-64, 15));
        assert_eq!(solve_wall(&(&a - &s), &range), WallOutcome::Wall(rat(13, 41)));
        assert_eq!(solve_wall(&AffineRatFn::constant(int(0)), &range), WallOutcome::IdenticallyZero);
        assert_eq!(solve_wall(&AffineRatFn::constant(int(1)), &range), WallOutcome::NoRoot);
        assert_eq!(solve_wall(&AffineRatFn::new(int(1), int(-1)), &range), WallOutcome::OutsideRange(int(1)));
    }

    #[test]
    fn bounds() {
        assert!(quotient_order_bound(&quintic_pair_degree(&rat(1, 100))).unwrap() < int(2));
        assert!(quotient_order_bound(&quintic_pair_degree(&(rat(1, 17) + rat(1, 1000)))).unwrap() < int(3));
        assert_eq!(quotient_order_bound(&int(9)).unwrap(), int(1));
        assert!(quotient_order_bound(&int(0)).is_err());
        assert!(index_feasibility(1, 1, &rat(1, 5), &int(0)).unwrap());
        assert_eq!(vgit_slope(&rat(1, 4)).unwrap(), rat(5, 2));
        assert_eq!(vgit_slope(&rat(11, 28)).unwrap(), rat(10, 7));
        assert!(vgit_slope(&rat(1, 2)).is_err());
        assert!(vgit_slope(&rat(1, 5)).is_err());
    }
}
