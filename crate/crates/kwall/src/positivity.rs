//! Nef tests, Zariski decomposition and exact volume profiles along a ray.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{fmt_combination, int, is_negative_definite, rational_sqrt, solve_linear, DivClass, Rational};
use crate::surface::SurfaceModel;

#[derive(Debug, Clone, PartialEq)]
pub enum NefVerdict {
    Nef,
    /// The first declared generator with negative pairing.
    NotNef {
        witness: String,
        pairing: Rational,
    },
}

impl NefVerdict {
    pub fn is_nef(&self) -> bool {
        matches!(self, NefVerdict::Nef)
    }
}

pub fn is_nef(model: &SurfaceModel, d: &DivClass) -> Result<NefVerdict> {
    for g in model.mori() {
        let p = d.pair(&g.class)?;
        if p.is_negative() {
            return Ok(NefVerdict::NotNef { witness: g.name.clone(), pairing: p });
        }
    }
    Ok(NefVerdict::Nef)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZariskiResult {
    pub positive: DivClass,
    /// `N = Σ a_i C_i`, in the order curves entered the support.
    pub negative_support: Vec<(String, Rational)>,
}

impl ZariskiResult {
    pub fn negative_class(&self, model: &SurfaceModel) -> DivClass {
        let mut n = DivClass::zero(self.positive.lattice());
        for (name, a) in &self.negative_support {
            n = n.add_scaled(model.generator(name).unwrap(), a).unwrap();
        }
        n
    }

    pub fn negative_display(&self) -> String {
        fmt_combination(self.negative_support.iter().map(|(n, a)| (n.as_str(), a)))
    }
}

fn gram_of(model: &SurfaceModel, support: &[usize]) -> Vec<Vec<Rational>> {
    let g = model.mori();
    support.iter().map(|&i| support.iter().map(|&j| g[i].class.pair(&g[j].class).unwrap()).collect()).collect()
}

fn support_names(model: &SurfaceModel, support: &[usize]) -> Vec<String> {
    support.iter().map(|&i| model.mori()[i].name.clone()).collect()
}

/// Solves for `N` supported on `support` with `(d - N)·C = 0` on the support.
fn negative_part(model: &SurfaceModel, d: &DivClass, support: &[usize]) -> Result<Vec<Rational>> {
    if support.is_empty() {
        return Ok(Vec::new());
    }
    let g = gram_of(model, support);
    if !is_negative_definite(&g) {
        return Err(Error::Configuration(format!(
            "{}: support {{{}}} is not negative definite",
            model.id(),
            support_names(model, support).join(", ")
        )));
    }
    let rhs: Vec<Rational> = support.iter().map(|&i| d.pair(&model.mori()[i].class).unwrap()).collect();
    solve_linear(&g, &rhs)
}

/// Zariski decomposition by growing the support with every generator that
/// meets the current positive part negatively.
pub fn zariski_decompose(model: &SurfaceModel, d: &DivClass) -> Result<ZariskiResult> {
    if !d.same_lattice(model.canonical()) {
        return Err(Error::LatticeMismatch);
    }
    let not_pseff = |reason: String, witness: Option<String>| Error::NotPseudoEffective { reason, witness };
    if d.pair(model.neg_k())?.is_negative() {
        return Err(not_pseff("negative degree against the nef class -K".into(), None));
    }
    let gens = model.mori();
    let mut support: Vec<usize> = Vec::new();
    loop {
        let coeffs = match negative_part(model, d, &support) {
            Ok(c) => c,
            Err(Error::Configuration(msg)) if support.len() == gens.len() => {
                return Err(not_pseff(
                    format!("every generator entered the support without reaching a nef class ({msg})"),
                    None,
                ));
            }
            Err(e) => return Err(e),
        };
        let mut p = d.clone();
        for (&i, a) in support.iter().zip(&coeffs) {
            p = p.add_scaled(&gens[i].class, &-a)?;
        }
        let offenders: Vec<usize> = (0..gens.len())
            .filter(|i| !support.contains(i) && p.pair(&gens[*i].class).unwrap().is_negative())
            .collect();
        if offenders.is_empty() {
            if let Some((&i, a)) = support.iter().zip(&coeffs).find(|(_, a)| a.is_negative()) {
                return Err(not_pseff(
                    format!("negative coefficient {a} on `{}`", gens[i].name),
                    Some(gens[i].name.clone()),
                ));
            }
            if p.square().is_negative() {
                return Err(not_pseff(format!("positive part has negative square {}", p.square()), None));
            }
            let negative_support = support
                .iter()
                .zip(coeffs)
                .filter(|(_, a)| !a.is_zero())
                .map(|(&i, a)| (gens[i].name.clone(), a))
                .collect();
            return Ok(ZariskiResult { positive: p, negative_support });
        }
        support.extend(offenders);
    }
}

/// `q0 + q1 t + q2 t^2` on `[t_lo, t_hi]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadraticPiece {
    #[serde(serialize_with = "crate::catalog::ser_q")]
    pub t_lo: Rational,
    #[serde(serialize_with = "crate::catalog::ser_q")]
    pub t_hi: Rational,
    #[serde(serialize_with = "crate::catalog::ser_q")]
    pub q0: Rational,
    #[serde(serialize_with = "crate::catalog::ser_q")]
    pub q1: Rational,
    #[serde(serialize_with = "crate::catalog::ser_q")]
    pub q2: Rational,
    pub support: Vec<String>,
}

impl QuadraticPiece {
    pub fn eval(&self, t: &Rational) -> Rational {
        &self.q0 + &self.q1 * t + &self.q2 * t * t
    }

    /// Value of the derivative at `t`.
    pub fn slope(&self, t: &Rational) -> Rational {
        &self.q1 + int(2) * &self.q2 * t
    }

    pub fn integrate(&self) -> Rational {
        let (a, b) = (&self.t_lo, &self.t_hi);
        let cube = |x: &Rational| x * x * x;
        &self.q0 * (b - a) + &self.q1 * (b * b - a * a) / int(2) + &self.q2 * (cube(b) - cube(a)) / int(3)
    }

    /// Renders the quadratic in `t`, e.g. `5 - 2t - t^2`.
    pub fn formula(&self) -> String {
        crate::stability::fmt_poly(&[self.q0.clone(), self.q1.clone(), self.q2.clone()], "t")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VolumeProfile {
    pub pieces: Vec<QuadraticPiece>,
    #[serde(serialize_with = "crate::catalog::ser_q")]
    pub tau: Rational,
}

impl VolumeProfile {
    /// Volume at `t`; zero beyond `tau`.
    pub fn eval(&self, t: &Rational) -> Rational {
        if t.is_negative() {
            return self.pieces.first().map(|p| p.eval(t)).unwrap_or_else(Rational::zero);
        }
        self.pieces.iter().find(|p| t <= &p.t_hi).map(|p| p.eval(t)).unwrap_or_else(Rational::zero)
    }

    pub fn breakpoints(&self) -> Vec<Rational> {
        let mut out: Vec<Rational> = self.pieces.iter().map(|p| p.t_lo.clone()).collect();
        out.push(self.tau.clone());
        out
    }
}

pub fn integrate_profile(p: &VolumeProfile) -> Rational {
    p.pieces.iter().map(QuadraticPiece::integrate).sum()
}

const MAX_CHAMBERS: usize = 256;

/// Walks `vol(origin - t·direction)` through its Zariski chambers until the
/// volume reaches zero.
pub fn volume_profile(model: &SurfaceModel, origin: &DivClass, direction: &DivClass) -> Result<VolumeProfile> {
    if !origin.same_lattice(model.canonical()) || !direction.same_lattice(model.canonical()) {
        return Err(Error::LatticeMismatch);
    }
    if let NefVerdict::NotNef { witness, pairing } = is_nef(model, origin)? {
        return Err(Error::NotBig(format!("origin meets `{witness}` in {pairing}")));
    }
    if !origin.square().is_positive() {
        return Err(Error::NotBig(format!("origin has volume {}", origin.square())));
    }
    if direction.is_zero() {
        return Err(Error::Validation("ray direction is the zero class".into()));
    }
    let gens = model.mori();
    let mut t = Rational::zero();
    let mut support: Vec<usize> = Vec::new();
    let mut pieces = Vec::new();

    // P(t) = p0 + t·p1 for the current support
    let affine = |support: &[usize]| -> Result<(DivClass, DivClass)> {
        let a0 = negative_part(model, origin, support)?;
        let neg_dir = -direction;
        let a1 = negative_part(model, &neg_dir, support)?;
        let mut p0 = origin.clone();
        let mut p1 = neg_dir;
        for ((&i, x0), x1) in support.iter().zip(&a0).zip(&a1) {
            p0 = p0.add_scaled(&gens[i].class, &-x0)?;
            p1 = p1.add_scaled(&gens[i].class, &-x1)?;
        }
        Ok((p0, p1))
    };

    for _ in 0..MAX_CHAMBERS {
        let (p0, p1) = loop {
            let (p0, p1) = affine(&support)?;
            let mut added = false;
            for (i, g) in gens.iter().enumerate() {
                if support.contains(&i) {
                    continue;
                }
                let v0 = p0.pair(&g.class)?;
                let v1 = p1.pair(&g.class)?;
                let val = &v0 + &v1 * &t;
                if val.is_negative() || (val.is_zero() && v1.is_negative()) {
                    support.push(i);
                    added = true;
                }
            }
            if !added {
                break (p0, p1);
            }
        };
        let q0 = p0.square();
        let q1 = int(2) * p0.pair(&p1)?;
        let q2 = p1.square();
        let q = |x: &Rational| &q0 + &q1 * x + &q2 * x * x;

        let mut next: Option<Rational> = None;
        for (i, g) in gens.iter().enumerate() {
            if support.contains(&i) {
                continue;
            }
            let v1 = p1.pair(&g.class)?;
            if v1.is_negative() {
                let r = -p0.pair(&g.class)? / &v1;
                if r > t && next.as_ref().map_or(true, |n| &r < n) {
                    next = Some(r);
                }
            }
        }
        let names = support_names(model, &support);
        match next {
            Some(nb) if q(&nb).is_positive() => {
                pieces.push(QuadraticPiece { t_lo: t.clone(), t_hi: nb.clone(), q0, q1, q2, support: names });
                t = nb;
            }
            _ => {
                let tau = vanishing_point(&t, &q0, &q1, &q2)?;
                pieces.push(QuadraticPiece { t_lo: t, t_hi: tau.clone(), q0, q1, q2, support: names });
                return Ok(VolumeProfile { pieces, tau });
            }
        }
    }
    Err(Error::Configuration(format!("{}: volume did not vanish after {MAX_CHAMBERS} chambers", model.id())))
}

/// Smallest root of `q0 + q1 t + q2 t^2` strictly beyond `t`.
fn vanishing_point(t: &Rational, q0: &Rational, q1: &Rational, q2: &Rational) -> Result<Rational> {
    let roots: Vec<Rational> = if !q2.is_zero() {
        let disc = q1 * q1 - int(4) * q2 * q0;
        let sq = rational_sqrt(&disc).ok_or_else(|| Error::IrrationalThreshold {
            t_lo: Box::new(t.clone()),
            discriminant: Box::new(disc.clone()),
        })?;
        let two_a = int(2) * q2;
        vec![(-q1 - &sq) / &two_a, (-q1 + &sq) / &two_a]
    } else if !q1.is_zero() {
        vec![-q0 / q1]
    } else {
        Vec::new()
    };
    roots
        .into_iter()
        .filter(|r| r > t)
        .min()
        .ok_or_else(|| Error::Configuration(format!("volume does not vanish beyond t = {t}")))
}
