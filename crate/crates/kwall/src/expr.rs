//! Divisor expressions such as `-K - 3/2 L1` or `2H - E1 - E2`.
//!
//! Names resolve in order: Mori generators, basis elements, then `K` for
//! `π*K_X`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{parse_rational, DivClass, Rational};
use crate::surface::SurfaceModel;

#[derive(Debug, Clone, PartialEq)]
pub struct DivExpr {
    pub terms: Vec<(Rational, String)>,
}

fn is_name_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

pub fn parse_div_expr(src: &str) -> Result<DivExpr> {
    let chars: Vec<char> = src.chars().collect();
    let err = |msg: &str, at: usize| Error::Parse(format!("{msg} at column {} in `{src}`", at + 1));
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < chars.len() && chars[*i].is_whitespace() {
            *i += 1;
        }
    };
    let mut terms = Vec::new();
    loop {
        skip_ws(&mut i);
        let mut sign = Rational::one();
        if i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
            if chars[i] == '-' {
                sign = -sign;
            }
            i += 1;
            skip_ws(&mut i);
        } else if !terms.is_empty() {
            return Err(err("expected `+` or `-`", i));
        }
        let start = i;
        while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/' || chars[i] == '.') {
            i += 1;
        }
        let coef = if i > start {
            let text: String = chars[start..i].iter().collect();
            let q = parse_rational(&text).map_err(|_| err("bad coefficient", start))?;
            skip_ws(&mut i);
            if i < chars.len() && chars[i] == '*' {
                i += 1;
                skip_ws(&mut i);
            }
            q
        } else {
            Rational::one()
        };
        if i >= chars.len() || !is_name_start(chars[i]) {
            return Err(err("expected a curve name", i));
        }
        let ns = i;
        while i < chars.len() && is_name_char(chars[i]) {
            i += 1;
        }
        let name: String = chars[ns..i].iter().collect();
        terms.push((sign * coef, name));
        skip_ws(&mut i);
        if i >= chars.len() {
            break;
        }
    }
    Ok(DivExpr { terms })
}

enum Resolved<'a> {
    Generator(&'a str, &'a DivClass),
    Basis(usize),
    PullbackK,
}

fn resolve<'a>(model: &'a SurfaceModel, name: &str) -> Result<Resolved<'a>> {
    if let Some(g) = model.mori().iter().find(|g| g.name == name) {
        return Ok(Resolved::Generator(&g.name, &g.class));
    }
    if let Some(i) = model.lattice().index_of(name) {
        return Ok(Resolved::Basis(i));
    }
    if name == "K" {
        return Ok(Resolved::PullbackK);
    }
    Err(Error::UnknownName(format!("`{name}` is neither a curve nor a basis element of {}", model.id())))
}

impl DivExpr {
    /// The class on the resolution, taking every name literally.
    pub fn to_class(&self, model: &SurfaceModel) -> Result<DivClass> {
        let mut out = DivClass::zero(model.lattice());
        for (k, name) in &self.terms {
            let c = match resolve(model, name)? {
                Resolved::Generator(_, c) => c.clone(),
                Resolved::Basis(i) => DivClass::basis(model.lattice(), i),
                Resolved::PullbackK => -model.neg_k(),
            };
            out = out.add_scaled(&c, k)?;
        }
        Ok(out)
    }

    /// A ray direction: contracted curves stay as they are, everything else
    /// is pulled back from the singular surface.
    pub fn to_ray(&self, model: &SurfaceModel) -> Result<DivClass> {
        let mut literal = DivClass::zero(model.lattice());
        let mut pulled = DivClass::zero(model.lattice());
        for (k, name) in &self.terms {
            match resolve(model, name)? {
                Resolved::Generator(n, c) if model.is_contracted(n) => literal = literal.add_scaled(c, k)?,
                Resolved::Generator(_, c) => pulled = pulled.add_scaled(c, k)?,
                Resolved::Basis(i) => pulled = pulled.add_scaled(&DivClass::basis(model.lattice(), i), k)?,
                Resolved::PullbackK => literal = literal.add_scaled(model.neg_k(), &-k)?,
            }
        }
        if pulled.is_zero() {
            return Ok(literal);
        }
        literal.add_scaled(&model.pullback_weil(&pulled)?, &Rational::one())
    }

    pub fn is_empty(&self) -> bool {
        self.terms.iter().all(|(k, _)| k.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{int, rat};

    #[test]
    fn parses_terms() {
        let e = parse_div_expr("-K - 3/2 L1").unwrap();
        assert_eq!(e.terms, vec![(int(-1), "K".into()), (rat(-3, 2), "L1".into())]);
        let e = parse_div_expr("2*H-E1 +0.5E2").unwrap();
        assert_eq!(e.terms, vec![(int(2), "H".into()), (int(-1), "E1".into()), (rat(1, 2), "E2".into())]);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_div_expr("").is_err());
        assert!(parse_div_expr("3").is_err());
        assert!(parse_div_expr("H E1").is_err());
        assert!(parse_div_expr("1/0 H").is_err());
    }
}
