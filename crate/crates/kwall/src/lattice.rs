//! Exact rational intersection forms.
//!
//! Every scalar in the crate is a [`Rational`] backed by arbitrary precision
//! integers; `num-rational` keeps values reduced with a positive denominator.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"n"` or a finite decimal such as `"0.25"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a rational number: `{s}`"));
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = t.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| bad())?;
        let d: BigInt = den.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{s}`")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let w: BigInt = if whole.is_empty() || whole == "-" || whole == "+" {
            BigInt::zero()
        } else {
            whole.parse().map_err(|_| bad())?
        };
        let f: BigInt = frac.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let mut q = Rational::from_integer(w.abs()) + Rational::new(f, scale);
        if negative {
            q = -q;
        }
        return Ok(q);
    }
    t.parse::<BigInt>().map(Rational::from_integer).map_err(|_| bad())
}

/// Renders a rational as `p/q` (or `n`), the authoritative output form.
pub fn fmt_q(q: &Rational) -> String {
    q.to_string()
}

pub fn to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionLattice {
    names: Vec<String>,
    gram: Vec<Vec<Rational>>,
}

impl IntersectionLattice {
    /// Builds a lattice. Symmetry and signature are not checked here; see
    /// [`validate_lattice`].
    pub fn new(names: Vec<String>, gram: Vec<Vec<Rational>>) -> Result<Self> {
        let r = names.len();
        if r == 0 {
            return Err(Error::Validation("lattice must have positive rank".into()));
        }
        if gram.len() != r {
            return Err(Error::Dimension { expected: r, got: gram.len() });
        }
        for row in &gram {
            if row.len() != r {
                return Err(Error::Dimension { expected: r, got: row.len() });
            }
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::Validation(format!("duplicate basis name `{a}`")));
            }
        }
        Ok(IntersectionLattice { names, gram })
    }

    pub fn from_ints(names: &[&str], gram: &[&[i64]]) -> Result<Self> {
        let g = gram.iter().map(|row| row.iter().map(|&x| int(x)).collect()).collect();
        Self::new(names.iter().map(|s| s.to_string()).collect(), g)
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_integral(&self) -> bool {
        self.gram.iter().flatten().all(|x| x.is_integer())
    }

    fn form(&self, a: &[Rational], b: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            let mut row = Rational::zero();
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() && !self.gram[i][j].is_zero() {
                    row += &self.gram[i][j] * bj;
                }
            }
            acc += ai * row;
        }
        acc
    }
}

#[derive(Debug, Clone)]
pub struct LatticeReport {
    pub symmetric: bool,
    /// (positive, negative, zero) counts of the form.
    pub signature: (usize, usize, usize),
    pub violations: Vec<String>,
}

impl LatticeReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks symmetry and hyperbolic signature `(1, rank - 1)`.
pub fn validate_lattice(l: &IntersectionLattice) -> LatticeReport {
    let r = l.rank();
    let mut violations = Vec::new();
    let mut symmetric = true;
    'outer: for i in 0..r {
        for j in 0..i {
            if l.gram[i][j] != l.gram[j][i] {
                symmetric = false;
                violations
                    .push(format!("symmetry: gram[{i}][{j}] = {} but gram[{j}][{i}] = {}", l.gram[i][j], l.gram[j][i]));
                break 'outer;
            }
        }
    }
    let signature = if symmetric { signature(&l.gram) } else { (0, 0, r) };
    if symmetric && signature != (1, r - 1, 0) {
        violations.push(format!(
            "signature: expected (1, {}), found ({}, {}) with {} null directions",
            r - 1,
            signature.0,
            signature.1,
            signature.2
        ));
    }
    LatticeReport { symmetric, signature, violations }
}

/// Sylvester signature of a symmetric matrix by exact congruence diagonalisation.
#[allow(clippy::needless_range_loop)]
pub fn signature(m: &[Vec<Rational>]) -> (usize, usize, usize) {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let (mut pos, mut neg) = (0, 0);
    let mut k = 0;
    while k < n {
        let pivot = (k..n).find(|&p| !a[p][p].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                // zero diagonal: use an off-diagonal entry to create a pivot
                let off = (k..n).flat_map(|i| (k..n).map(move |j| (i, j))).find(|&(i, j)| i != j && !a[i][j].is_zero());
                let Some((i, j)) = off else { break };
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[i][c] += v;
                }
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][i] += v;
                }
                i
            }
        };
        a.swap(k, p);
        for row in a.iter_mut() {
            row.swap(k, p);
        }
        let d = a[k][k].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in (k + 1)..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &d;
            for c in k..n {
                let v = &f * &a[k][c];
                a[i][c] -= v;
            }
            for r in k..n {
                let v = &f * &a[r][k];
                a[r][i] -= v;
            }
        }
        k += 1;
    }
    (pos, neg, n - pos - neg)
}

pub fn is_negative_definite(m: &[Vec<Rational>]) -> bool {
    m.is_empty() || signature(m).1 == m.len()
}

/// Solves `m · x = rhs` exactly; fails when `m` is singular.
#[allow(clippy::needless_range_loop)]
pub fn solve_linear(m: &[Vec<Rational>], rhs: &[Rational]) -> Result<Vec<Rational>> {
    let n = m.len();
    if rhs.len() != n {
        return Err(Error::Dimension { expected: n, got: rhs.len() });
    }
    for row in m {
        if row.len() != n {
            return Err(Error::Dimension { expected: n, got: row.len() });
        }
    }
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::SingularSystem)?;
        a.swap(col, p);
        let inv = a[col][col].recip();
        for c in col..=n {
            a[col][c] = &a[col][c] * &inv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in col..=n {
                let v = &f * &a[col][c];
                a[r][c] -= v;
            }
        }
    }
    Ok(a.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

/// A divisor class with rational coordinates in the basis of its lattice.
#[derive(Debug, Clone)]
pub struct DivClass {
    coords: Vec<Rational>,
    lattice: Arc<IntersectionLattice>,
}

impl DivClass {
    pub fn new(lattice: &Arc<IntersectionLattice>, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != lattice.rank() {
            return Err(Error::Dimension { expected: lattice.rank(), got: coords.len() });
        }
        Ok(DivClass { coords, lattice: Arc::clone(lattice) })
    }

    pub fn from_ints(lattice: &Arc<IntersectionLattice>, coords: &[i64]) -> Result<Self> {
        Self::new(lattice, coords.iter().map(|&x| int(x)).collect())
    }

    pub fn zero(lattice: &Arc<IntersectionLattice>) -> Self {
        DivClass { coords: vec![Rational::zero(); lattice.rank()], lattice: Arc::clone(lattice) }
    }

    pub fn basis(lattice: &Arc<IntersectionLattice>, i: usize) -> Self {
        let mut c = Self::zero(lattice);
        c.coords[i] = Rational::one();
        c
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn lattice(&self) -> &Arc<IntersectionLattice> {
        &self.lattice
    }

    pub fn same_lattice(&self, other: &DivClass) -> bool {
        Arc::ptr_eq(&self.lattice, &other.lattice) || *self.lattice == *other.lattice
    }

    pub fn pair(&self, other: &DivClass) -> Result<Rational> {
        if !self.same_lattice(other) {
            return Err(Error::LatticeMismatch);
        }
        Ok(self.lattice.form(&self.coords, &other.coords))
    }

    pub fn square(&self) -> Rational {
        self.lattice.form(&self.coords, &self.coords)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|x| x.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|x| x.is_integer())
    }

    pub fn scaled(&self, k: &Rational) -> DivClass {
        DivClass { coords: self.coords.iter().map(|x| x * k).collect(), lattice: Arc::clone(&self.lattice) }
    }

    /// `self + k·other`.
    pub fn add_scaled(&self, other: &DivClass, k: &Rational) -> Result<DivClass> {
        if !self.same_lattice(other) {
            return Err(Error::LatticeMismatch);
        }
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b * k).collect();
        Ok(DivClass { coords, lattice: Arc::clone(&self.lattice) })
    }

    /// Re-expresses the coordinates on a lattice with a longer basis, padding with zeros.
    pub fn extend_to(&self, lattice: &Arc<IntersectionLattice>) -> Result<DivClass> {
        if lattice.rank() < self.coords.len() {
            return Err(Error::Dimension { expected: self.coords.len(), got: lattice.rank() });
        }
        let mut coords = self.coords.clone();
        coords.resize(lattice.rank(), Rational::zero());
        DivClass::new(lattice, coords)
    }
}

impl PartialEq for DivClass {
    fn eq(&self, other: &Self) -> bool {
        self.same_lattice(other) && self.coords == other.coords
    }
}

fn zip_op(a: &DivClass, b: &DivClass, f: impl Fn(&Rational, &Rational) -> Rational) -> DivClass {
    assert!(a.same_lattice(b), "arithmetic on classes from different lattices");
    DivClass { coords: a.coords.iter().zip(&b.coords).map(|(x, y)| f(x, y)).collect(), lattice: Arc::clone(&a.lattice) }
}

/// Panics if the lattices differ; use [`DivClass::add_scaled`] for a checked variant.
impl Add for &DivClass {
    type Output = DivClass;
    fn add(self, rhs: &DivClass) -> DivClass {
        zip_op(self, rhs, |x, y| x + y)
    }
}

/// Panics if the lattices differ.
impl Sub for &DivClass {
    type Output = DivClass;
    fn sub(self, rhs: &DivClass) -> DivClass {
        zip_op(self, rhs, |x, y| x - y)
    }
}

impl Neg for &DivClass {
    type Output = DivClass;
    fn neg(self) -> DivClass {
        self.scaled(&-Rational::one())
    }
}

impl Mul<&DivClass> for &Rational {
    type Output = DivClass;
    fn mul(self, rhs: &DivClass) -> DivClass {
        rhs.scaled(self)
    }
}

/// Formats `Σ c_i name_i` compactly: `H - E1 - E2`, `3/2 H - 1/2 E1`.
pub fn fmt_combination<'a>(terms: impl IntoIterator<Item = (&'a str, &'a Rational)>) -> String {
    let mut out = String::new();
    for (name, c) in terms {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        if !mag.is_one() {
            out.push_str(&mag.to_string());
            out.push(' ');
        }
        out.push_str(name);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for DivClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.lattice.names.iter().map(|s| s.as_str()).zip(self.coords.iter());
        f.write_str(&fmt_combination(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma5() -> Arc<IntersectionLattice> {
        Arc::new(
            IntersectionLattice::from_ints(
                &["H", "E1", "E2", "E3", "E4"],
                &[&[1, 0, 0, 0, 0], &[0, -1, 0, 0, 0], &[0, 0, -1, 0, 0], &[0, 0, 0, -1, 0], &[0, 0, 0, 0, -1]],
            )
            .unwrap(),
        )
    }

    #[test]
    fn pairings_on_sigma5() {
        let l = sigma5();
        let h = DivClass::from_ints(&l, &[1, 0, 0, 0, 0]).unwrap();
        let k = DivClass::from_ints(&l, &[-3, 1, 1, 1, 1]).unwrap();
        let l1 = DivClass::from_ints(&l, &[1, -1, -1, 0, 0]).unwrap();
        assert_eq!(h.pair(&h).unwrap(), int(1));
        assert_eq!(k.pair(&k).unwrap(), int(5));
        assert_eq!(l1.pair(&l1).unwrap(), int(-1));
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = DivClass::from_ints(&sigma5(), &[1, 0, 0, 0, 0]).unwrap();
        let p2 = Arc::new(IntersectionLattice::from_ints(&["H"], &[&[1]]).unwrap());
        let b = DivClass::from_ints(&p2, &[1]).unwrap();
        assert!(matches!(a.pair(&b), Err(Error::LatticeMismatch)));
    }

    #[test]
    fn validation_examples() {
        assert!(validate_lattice(&sigma5()).passed());
        let bad = IntersectionLattice::from_ints(&["a", "b"], &[&[1, 0], &[0, 1]]).unwrap();
        let r = validate_lattice(&bad);
        assert!(!r.passed());
        assert!(r.violations[0].starts_with("signature"));
        let f2 = IntersectionLattice::from_ints(&["e", "f"], &[&[-2, 1], &[1, 0]]).unwrap();
        assert!(validate_lattice(&f2).passed());
        let asym = IntersectionLattice::from_ints(&["a", "b"], &[&[1, 2], &[0, -1]]).unwrap();
        assert!(validate_lattice(&asym).violations[0].starts_with("symmetry"));
    }

    #[test]
    fn solve_examples() {
        assert_eq!(solve_linear(&[vec![int(-1)]], &[rat(-1, 2)]).unwrap(), vec![rat(1, 2)]);
        let m = vec![vec![int(-2), int(1)], vec![int(1), int(-2)]];
        assert_eq!(solve_linear(&m, &[int(-1), int(0)]).unwrap(), vec![rat(2, 3), rat(1, 3)]);
        assert!(matches!(solve_linear(&[vec![int(0)]], &[int(1)]), Err(Error::SingularSystem)));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/2").unwrap(), rat(3, 2));
        assert_eq!(parse_rational(" -4 ").unwrap(), int(-4));
        assert_eq!(parse_rational("0.06").unwrap(), rat(3, 50));
        assert_eq!(parse_rational("-0.5").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(fmt_q(&rat(-2, 4)), "-1/2");
        assert_eq!(fmt_q(&int(7)), "7");
    }

    #[test]
    fn display_combination() {
        let l = sigma5();
        let c = DivClass::new(&l, vec![rat(3, 2), rat(-1, 2), int(-1), int(0), int(0)]).unwrap();
        assert_eq!(c.to_string(), "3/2 H - 1/2 E1 - E2");
        assert_eq!(DivClass::zero(&l).to_string(), "0");
    }

    #[test]
    fn square_roots() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
        assert_eq!(rational_sqrt(&rat(-1, 1)), None);
    }
}
