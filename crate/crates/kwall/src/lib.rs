//! Exact K-stability invariants for quintic del Pezzo log pairs.
//!
//! A pair `(X, cD)` has a boundary `D ∼ -2K_X`, so every invariant is an
//! affine function of `c`: the log discrepancy `A = a - m c`, the expected
//! vanishing order `S = s(1 - 2c)` and `β = A - S`. A K-moduli wall is a root
//! of `β` in `(0, 1/2)`.
//!
//! Singular surfaces are always handled through a resolution plus the list
//! of contracted curves; volumes are computed by walking Zariski chambers
//! along a ray in exact rational arithmetic.
//!
//! ```
//! use kwall::catalog::Catalog;
//!
//! let cat = Catalog::embedded()?;
//! let f = cat.load_fixture("Sigma5/D_1_17/L1")?;
//! let out = f.evaluate()?;
//! assert_eq!(out.wall.wall().unwrap().to_string(), "1/17");
//! # Ok::<(), kwall::Error>(())
//! ```

pub mod catalog;
pub mod error;
pub mod expr;
pub mod lattice;
pub mod positivity;
pub mod report;
pub mod stability;
pub mod surface;

pub use error::{Error, Result};
pub use lattice::{int, parse_rational, rat, DivClass, IntersectionLattice, Rational};
pub use positivity::{integrate_profile, is_nef, volume_profile, zariski_decompose, VolumeProfile, ZariskiResult};
pub use stability::{beta, log_discrepancy, s_invariant, solve_wall, AffineRatFn, LogPair, ValuationSpec, WallOutcome};
pub use surface::{build_blowup_extension, CenterSpec, MoriGen, SurfaceModel};
