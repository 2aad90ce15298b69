//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use kwall::catalog::Catalog;
use kwall::stability::resolve_valuation;
use kwall::{int, parse_rational, rat, DivClass, Rational, SurfaceModel};
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;

// ---------------------------------------------------------------- toric

/// A toric fixture spelled out as raw fan data: rays `(name, x, y,
/// contracted)`, the exponents (in the torus lattice) of the monomials of
/// the boundary equation, the primitive direction `u` of the valuation and
/// the normalising scale.
pub struct ToricCase {
    pub id: &'static str,
    pub rays: &'static [(&'static str, i64, i64, bool)],
    pub monomials: &'static [(i64, i64)],
    pub u: (i64, i64),
    pub scale: &'static str,
}

pub const TORIC: &[ToricCase] = &[
    ToricCase {
        id: "X11/torus/x2y2(x-ay)(y-bx)",
        rays: &[
            ("Lx", 1, 0, false),
            ("Ly", 0, 1, false),
            ("E4", -1, 1, false),
            ("E3", -1, 0, true),
            ("Lz", -1, -1, false),
            ("E1", 0, -1, true),
            ("E2", 1, -1, false),
        ],
        monomials: &[(0, 2), (1, 1), (2, 0)],
        u: (-1, -1),
        scale: "1",
    },
    ToricCase {
        id: "X11/torus/x2y2(x2-yz)",
        rays: &[
            ("Lx", 1, 0, false),
            ("Ly", 0, 1, false),
            ("E4", -1, 1, false),
            ("E3", -1, 0, true),
            ("Lz", -1, -1, false),
            ("E1", 0, -1, true),
            ("E2", 1, -1, false),
        ],
        monomials: &[(0, 1), (2, 0)],
        u: (-1, -2),
        scale: "1/2",
    },
    ToricCase {
        id: "X11/torus/xy2(z2y-x3)",
        rays: &[
            ("Lx", 1, 0, false),
            ("Ly", 0, 1, false),
            ("E4", -1, 1, false),
            ("E3", -1, 0, true),
            ("Lz", -1, -1, false),
            ("E1", 0, -1, true),
            ("E2", 1, -1, false),
        ],
        monomials: &[(-1, 1), (2, 0)],
        u: (-1, -3),
        scale: "1",
    },
    ToricCase {
        id: "X11/torus/xy2z(x2-yz)",
        rays: &[
            ("Lx", 1, 0, false),
            ("Ly", 0, 1, false),
            ("E4", -1, 1, false),
            ("E3", -1, 0, true),
            ("Lz", -1, -1, false),
            ("E1", 0, -1, true),
            ("E2", 1, -1, false),
        ],
        monomials: &[(-1, 1), (1, 0)],
        u: (-1, -2),
        scale: "1",
    },
    ToricCase {
        id: "X12/torus/y2(xy-z2)(axy-z2)",
        rays: &[
            ("Lx", 1, 0, true),
            ("E3", 1, 1, true),
            ("E4", 1, 2, false),
            ("Ly", 0, 1, false),
            ("Lz", -1, -1, false),
            ("E1", 0, -1, true),
            ("E2", 1, -1, false),
        ],
        monomials: &[(-2, 0), (-1, 1), (0, 2)],
        u: (1, -1),
        scale: "1",
    },
    ToricCase {
        id: "X12/torus/y2z(z3-x2y)",
        rays: &[
            ("Lx", 1, 0, true),
            ("E3", 1, 1, true),
            ("E4", 1, 2, false),
            ("Ly", 0, 1, false),
            ("Lz", -1, -1, false),
            ("E1", 0, -1, true),
            ("E2", 1, -1, false),
        ],
        monomials: &[(-2, 0), (0, 1)],
        u: (1, -2),
        scale: "1",
    },
    ToricCase {
        id: "X12/torus/y2(yx3-z4)",
        rays: &[
            ("Lx", 1, 0, true),
            ("E3", 1, 1, true),
            ("E4", 1, 2, false),
            ("Ly", 0, 1, false),
            ("Lz", -1, -1, false),
            ("E1", 0, -1, true),
            ("E2", 1, -1, false),
        ],
        monomials: &[(-2, 0), (1, 1)],
        u: (1, -3),
        scale: "1",
    },
    ToricCase {
        id: "X12/torus/xy2z2(y-z)",
        rays: &[
            ("Lx", 1, 0, true),
            ("E3", 1, 1, true),
            ("E4", 1, 2, false),
            ("Ly", 0, 1, false),
            ("Lz", -1, -1, false),
            ("E1", 0, -1, true),
            ("E2", 1, -1, false),
        ],
        monomials: &[(-1, 0), (-1, 1)],
        u: (1, 0),
        scale: "1",
    },
    ToricCase {
        id: "X12/torus/y2xz(xy-z2)",
        rays: &[
            ("Lx", 1, 0, true),
            ("E3", 1, 1, true),
            ("E4", 1, 2, false),
            ("Ly", 0, 1, false),
            ("Lz", -1, -1, false),
            ("E1", 0, -1, true),
            ("E2", 1, -1, false),
        ],
        monomials: &[(-1, 0), (0, 1)],
        u: (1, -1),
        scale: "1",
    },
    ToricCase {
        id: "X12/torus/y2x(xy2-z3)",
        rays: &[
            ("Lx", 1, 0, true),
            ("E3", 1, 1, true),
            ("E4", 1, 2, false),
            ("Ly", 0, 1, false),
            ("Lz", -1, -1, false),
            ("E1", 0, -1, true),
            ("E2", 1, -1, false),
        ],
        monomials: &[(-1, 0), (0, 2)],
        u: (2, -1),
        scale: "1",
    },
    ToricCase {
        id: "X12/torus/yxz2(y2-xz)",
        rays: &[
            ("Lx", 1, 0, true),
            ("E3", 1, 1, true),
            ("E4", 1, 2, false),
            ("Ly", 0, 1, false),
            ("Lz", -1, -1, false),
            ("E1", 0, -1, true),
            ("E2", 1, -1, false),
        ],
        monomials: &[(-1, 1), (0, -1)],
        u: (2, 1),
        scale: "1",
    },
    ToricCase {
        id: "X12/torus/xy2(z3-yx2)",
        rays: &[
            ("Lx", 1, 0, true),
            ("E3", 1, 1, true),
            ("E4", 1, 2, false),
            ("Ly", 0, 1, false),
            ("Lz", -1, -1, false),
            ("E1", 0, -1, true),
            ("E2", 1, -1, false),
        ],
        monomials: &[(-1, 0), (1, 1)],
        u: (1, -2),
        scale: "1",
    },
    ToricCase {
        id: "X12/D_4_23/F3",
        rays: &[
            ("Lx", 1, 0, true),
            ("E3", 1, 1, true),
            ("E4", 1, 2, false),
            ("Ly", 0, 1, false),
            ("Lz", -1, -1, false),
            ("E1", 0, -1, true),
            ("E2", 1, -1, false),
        ],
        monomials: &[(-2, 0), (-1, 1), (0, 2)],
        u: (1, -1),
        scale: "1",
    },
    ToricCase {
        id: "Xt/torus/y2v(yu3-xv3)",
        rays: &[
            ("Lx", 1, 0, true),
            ("G3", 3, 1, false),
            ("G2", 2, 1, true),
            ("G1", 1, 1, true),
            ("Lu", 0, 1, false),
            ("Ly", -1, 0, false),
            ("Lv", 0, -1, false),
            ("K1", 1, -1, false),
        ],
        monomials: &[(-1, 1), (0, -2)],
        u: (3, 1),
        scale: "1",
    },
    ToricCase {
        id: "Xt/torus/y2uv(yu2-xv2)",
        rays: &[
            ("Lx", 1, 0, true),
            ("G3", 3, 1, false),
            ("G2", 2, 1, true),
            ("G1", 1, 1, true),
            ("Lu", 0, 1, false),
            ("Ly", -1, 0, false),
            ("Lv", 0, -1, false),
            ("K1", 1, -1, false),
        ],
        monomials: &[(-1, 1), (0, -1)],
        u: (2, 1),
        scale: "2",
    },
    ToricCase {
        id: "Xt/torus/y2(yu4-xv4)",
        rays: &[
            ("Lx", 1, 0, true),
            ("G4", 4, 1, false),
            ("G3", 3, 1, true),
            ("G2", 2, 1, true),
            ("G1", 1, 1, true),
            ("Lu", 0, 1, false),
            ("Ly", -1, 0, false),
            ("Lv", 0, -1, false),
        ],
        monomials: &[(-1, 2), (0, -2)],
        u: (4, 1),
        scale: "1",
    },
    ToricCase {
        id: "Xt/torus/yv(y2u3-x2v3)",
        rays: &[
            ("Lx", 1, 0, true),
            ("G3", 3, 1, false),
            ("G2", 2, 1, true),
            ("G1", 1, 1, true),
            ("Lu", 0, 1, false),
            ("Ly", -1, 0, false),
            ("Lv", 0, -1, false),
            ("K1", 1, -1, false),
        ],
        monomials: &[(-1, 1), (1, -2)],
        u: (3, 2),
        scale: "2",
    },
    ToricCase {
        id: "Xt/torus/y2u(yu3-xv3)",
        rays: &[
            ("Lx", 1, 0, true),
            ("G4", 4, 1, false),
            ("G3", 3, 1, true),
            ("G2", 2, 1, true),
            ("G1", 1, 1, true),
            ("Lu", 0, 1, false),
            ("Ly", -1, 0, false),
            ("Lv", 0, -1, false),
        ],
        monomials: &[(-1, 2), (0, -1)],
        u: (3, 1),
        scale: "2",
    },
    ToricCase {
        id: "Xq/torus/xz4+y3z2",
        rays: &[
            ("Lx", 1, 0, true),
            ("A3", 3, 1, false),
            ("A2", 2, 1, true),
            ("A1", 1, 1, true),
            ("Ly", 0, 1, false),
            ("Lz", -1, -1, false),
            ("B1", 0, -1, true),
            ("B2", 1, -1, false),
        ],
        monomials: &[(-1, 1), (0, -2)],
        u: (3, 1),
        scale: "1",
    },
    ToricCase {
        id: "Xq/torus/xyz3+y3z2",
        rays: &[
            ("Lx", 1, 0, true),
            ("A3", 3, 1, false),
            ("A2", 2, 1, true),
            ("A1", 1, 1, true),
            ("Ly", 0, 1, false),
            ("Lz", -1, -1, false),
            ("B1", 0, -1, true),
            ("B2", 1, -1, false),
        ],
        monomials: &[(-1, 1), (0, -1)],
        u: (2, 1),
        scale: "1",
    },
    ToricCase {
        id: "Xq/torus/xz4+y4z",
        rays: &[
            ("Lx", 1, 0, true),
            ("A4", 4, 1, false),
            ("A3", 3, 1, true),
            ("A2", 2, 1, true),
            ("A1", 1, 1, true),
            ("Ly", 0, 1, false),
            ("Lz", -1, -1, false),
            ("B1", 0, -1, false),
        ],
        monomials: &[(-1, 2), (0, -2)],
        u: (4, 1),
        scale: "1",
    },
    ToricCase {
        id: "Xq/torus/x2z3+y3z2",
        rays: &[
            ("Lx", 1, 0, true),
            ("A3", 3, 1, false),
            ("A2", 2, 1, true),
            ("A1", 1, 1, true),
            ("Ly", 0, 1, false),
            ("Lz", -1, -1, false),
            ("B1", 0, -1, true),
            ("B2", 1, -1, false),
        ],
        monomials: &[(-1, 1), (1, -2)],
        u: (3, 2),
        scale: "1",
    },
    ToricCase {
        id: "Xq/torus/xz4+y5",
        rays: &[
            ("Lx", 1, 0, true),
            ("A5", 5, 1, false),
            ("A4", 4, 1, true),
            ("A3", 3, 1, true),
            ("A2", 2, 1, true),
            ("A1", 1, 1, true),
            ("Ly", 0, 1, false),
            ("Lz", -1, -1, false),
        ],
        monomials: &[(-1, 3), (0, -2)],
        u: (5, 1),
        scale: "1",
    },
    ToricCase {
        id: "Xq/torus/xyz3+y4z",
        rays: &[
            ("Lx", 1, 0, true),
            ("A4", 4, 1, false),
            ("A3", 3, 1, true),
            ("A2", 2, 1, true),
            ("A1", 1, 1, true),
            ("Ly", 0, 1, false),
            ("Lz", -1, -1, false),
            ("B1", 0, -1, false),
        ],
        monomials: &[(-1, 2), (0, -1)],
        u: (3, 1),
        scale: "1",
    },
    ToricCase {
        id: "Xq/torus/xyz3+y5",
        rays: &[
            ("Lx", 1, 0, true),
            ("A5", 5, 1, false),
            ("A4", 4, 1, true),
            ("A3", 3, 1, true),
            ("A2", 2, 1, true),
            ("A1", 1, 1, true),
            ("Ly", 0, 1, false),
            ("Lz", -1, -1, false),
        ],
        monomials: &[(-1, 3), (0, -1)],
        u: (4, 1),
        scale: "1",
    },
    ToricCase {
        id: "Xprime/D_16_47/x(z3-yx5)",
        rays: &[
            ("Lx", 1, 0, false),
            ("G", 1, 1, false),
            ("Sigma", 0, 1, true),
            ("Ly", -1, 2, true),
            ("H3", -3, 5, false),
            ("H2", -2, 3, true),
            ("H1", -1, 1, true),
            ("Lz", 0, -1, false),
        ],
        monomials: &[(-1, -1), (4, 2)],
        u: (-3, 5),
        scale: "1",
    },
    ToricCase {
        id: "Xprime/D_19_53/xz(z2-yx3)",
        rays: &[
            ("Lx", 1, 0, false),
            ("G", 1, 1, false),
            ("Sigma", 0, 1, true),
            ("Ly", -1, 2, true),
            ("H3", -3, 5, false),
            ("H2", -2, 3, true),
            ("H1", -1, 1, true),
            ("Lz", 0, -1, false),
        ],
        monomials: &[(-1, -1), (2, 1)],
        u: (-2, 3),
        scale: "1",
    },
];

type Pt = (Rational, Rational);

fn dot(p: &Pt, u: (i64, i64)) -> Rational {
    &p.0 * int(u.0) + &p.1 * int(u.1)
}

/// Vertices of `{m : <m, r> >= -1}` over the non-contracted rays, in
/// counter-clockwise order.
pub fn anticanonical_polygon(case: &ToricCase) -> Vec<Pt> {
    let mut rays: Vec<(i64, i64)> = case.rays.iter().filter(|r| !r.3).map(|r| (r.1, r.2)).collect();
    rays.sort_by(|a, b| (a.1 as f64).atan2(a.0 as f64).partial_cmp(&(b.1 as f64).atan2(b.0 as f64)).unwrap());
    let n = rays.len();
    let mut verts: Vec<Pt> = Vec::new();
    for i in 0..n {
        let (a, b) = (rays[i], rays[(i + 1) % n]);
        // a.0 x + a.1 y = -1, b.0 x + b.1 y = -1
        let det = a.0 * b.1 - a.1 * b.0;
        assert_ne!(det, 0, "{}: parallel consecutive rays", case.id);
        let x = rat(a.1 - b.1, det);
        let y = rat(b.0 - a.0, det);
        let p = (x, y);
        for r in &rays {
            assert!(dot(&p, *r) >= int(-1), "{}: vertex violates a facet", case.id);
        }
        if verts.last() != Some(&p) && verts.first() != Some(&p) {
            verts.push(p);
        }
    }
    // The vertices follow the rays cyclically, which is counter-clockwise
    // in the dual.
    verts
}

/// Twice the area and the barycentre of a convex polygon.
pub fn area2_and_barycentre(verts: &[Pt]) -> (Rational, Pt) {
    let n = verts.len();
    let mut a2 = Rational::zero();
    let (mut cx, mut cy) = (Rational::zero(), Rational::zero());
    for i in 0..n {
        let (p, q) = (&verts[i], &verts[(i + 1) % n]);
        let cross = &p.0 * &q.1 - &q.0 * &p.1;
        cx += (&p.0 + &q.0) * &cross;
        cy += (&p.1 + &q.1) * &cross;
        a2 += cross;
    }
    let six_a = &a2 * int(3);
    (a2.abs(), (cx / &six_a, cy / six_a))
}

/// `(β constant, β slope, 2·area)` from the polygon barycentre.
pub fn toric_beta(case: &ToricCase) -> (Rational, Rational, Rational) {
    let verts = anticanonical_polygon(case);
    let (a2, bary) = area2_and_barycentre(&verts);
    let a = -verts.iter().map(|p| dot(p, case.u)).min().unwrap();
    let s = dot(&bary, case.u) + &a;
    let ord = case.monomials.iter().map(|&(x, y)| int(x * case.u.0 + y * case.u.1)).min().unwrap() + int(2) * &a;
    let k = parse_rational(case.scale).unwrap();
    (&k * (&a - &s), &k * (int(2) * &s - ord), a2)
}

// ---------------------------------------------------------------- zariski

#[allow(clippy::needless_range_loop)]
fn det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut d = Rational::from_integer(1.into());
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else { return Rational::zero() };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        for r in c + 1..n {
            let f = &m[r][c] / &m[c][c];
            for k in c..n {
                let v = &f * &m[c][k];
                m[r][k] -= v;
            }
        }
    }
    d
}

/// Sylvester's criterion.
fn negative_definite(g: &[Vec<Rational>]) -> bool {
    (1..=g.len()).all(|k| {
        let minor: Vec<Vec<Rational>> = g[..k].iter().map(|r| r[..k].to_vec()).collect();
        let d = det(minor);
        if k % 2 == 1 {
            d.is_negative()
        } else {
            d.is_positive()
        }
    })
}

/// Cramer's rule; fine for the tiny systems here.
fn solve(g: &[Vec<Rational>], rhs: &[Rational]) -> Vec<Rational> {
    let d = det(g.to_vec());
    (0..g.len())
        .map(|j| {
            let m: Vec<Vec<Rational>> = g
                .iter()
                .zip(rhs)
                .map(|(row, b)| {
                    row.iter().enumerate().map(|(k, x)| if k == j { b.clone() } else { x.clone() }).collect()
                })
                .collect();
            det(m) / &d
        })
        .collect()
}

/// Zariski decomposition by trying every negative definite set of Mori
/// generators. Returns `(P, N coefficients)` for the unique set giving
/// strictly positive coefficients and a nef remainder, or `None` if no set
/// works. Panics if two sets work.
pub fn zariski_brute(model: &SurfaceModel, d: &DivClass) -> Option<(DivClass, BTreeMap<String, Rational>)> {
    let gens = model.mori();
    let n = gens.len();
    let gram: Vec<Vec<Rational>> =
        gens.iter().map(|a| gens.iter().map(|b| a.class.pair(&b.class).unwrap()).collect()).collect();
    let mut found: Vec<(DivClass, BTreeMap<String, Rational>)> = Vec::new();
    let mut stack: Vec<Vec<usize>> = vec![vec![]];
    while let Some(set) = stack.pop() {
        let sub: Vec<Vec<Rational>> = set.iter().map(|&i| set.iter().map(|&j| gram[i][j].clone()).collect()).collect();
        let rhs: Vec<Rational> = set.iter().map(|&i| d.pair(&gens[i].class).unwrap()).collect();
        let x = if set.is_empty() { vec![] } else { solve(&sub, &rhs) };
        if x.iter().all(|v| v.is_positive()) {
            let mut p = d.clone();
            for (&i, v) in set.iter().zip(&x) {
                p = p.add_scaled(&gens[i].class, &-v).unwrap();
            }
            if gens.iter().all(|g| !p.pair(&g.class).unwrap().is_negative()) {
                let coeffs = set.iter().zip(&x).map(|(&i, v)| (gens[i].name.clone(), v.clone())).collect();
                found.push((p, coeffs));
            }
        }
        let start = set.last().map_or(0, |&l| l + 1);
        for k in start..n {
            let mut next = set.clone();
            next.push(k);
            let g: Vec<Vec<Rational>> =
                next.iter().map(|&i| next.iter().map(|&j| gram[i][j].clone()).collect()).collect();
            if negative_definite(&g) {
                stack.push(next);
            }
        }
    }
    assert!(found.len() <= 1, "{}: {} admissible supports for {d}", model.id(), found.len());
    found.pop()
}

/// A random non-zero effective class: a non-negative combination of the
/// Mori generators, sometimes plus a multiple of `-K`.
pub fn random_effective<R: Rng>(model: &SurfaceModel, rng: &mut R) -> DivClass {
    loop {
        let mut d = DivClass::zero(model.lattice());
        for g in model.mori() {
            if rng.gen_bool(0.5) {
                let k = Rational::new(rng.gen_range(0..7).into(), rng.gen_range(1..4).into());
                d = d.add_scaled(&g.class, &k).unwrap();
            }
        }
        if rng.gen_bool(0.4) {
            let k = Rational::new(rng.gen_range(1..4).into(), rng.gen_range(1..3).into());
            d = d.add_scaled(model.neg_k(), &k).unwrap();
        }
        if !d.is_zero() {
            return d;
        }
    }
}

// ---------------------------------------------------------------- quadrature

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1)
}

/// Adaptive Simpson quadrature of `f` on `[a, b]`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, eps: f64) -> f64 {
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(&f, a, b, fa, fm, fb, whole, eps, 40)
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap()
}

// ---------------------------------------------------------------- catalog rays

pub struct CatalogRay {
    pub label: String,
    pub model: Arc<SurfaceModel>,
    pub direction: DivClass,
}

/// Every valuation in the catalog (main and equivariant), as a ray on its
/// ambient model.
pub fn catalog_rays(cat: &Catalog) -> Vec<CatalogRay> {
    let mut out = Vec::new();
    for id in cat.fixture_ids(None).unwrap() {
        let f = cat.load_fixture(&id).unwrap();
        let mut seen = Vec::new();
        for v in std::iter::once(&f.valuation).chain(&f.equivariant) {
            let r = resolve_valuation(&f.pair, v).unwrap();
            if seen.contains(&r.direction) {
                continue;
            }
            seen.push(r.direction.clone());
            out.push(CatalogRay { label: format!("{id}#{}", v.name), model: r.ambient, direction: r.direction });
        }
    }
    out
}
