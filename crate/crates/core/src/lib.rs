//! Analytic geometry of homogeneous spaces with signature `{k1, ..., kn}`,
//! `ki` in `{-1, 0, 1}`.
//!
//! A space is modelled as the unit sphere `x ⊙ x = 1` of the metaspace
//! `R^(n+1)`. Motions are generalized orthogonal matrices, subspaces are
//! lineals spanned by orthonormal vector families, and every distance, angle
//! or area is a measure carrying a type.
//!
//! ```
//! use homspace::{Signature, motions::Motion, metaspace::MVector, lineals};
//!
//! let sig: Signature = "{-1,1}".parse().unwrap();
//! let e = MVector::origin(2);
//! let x = Motion::main_rotation(1, 0.5, &sig).unwrap().apply(&e).unwrap();
//! let m = lineals::point_distance(&e, &x, &sig).unwrap();
//! assert!((m.value.finite().unwrap() - 0.5).abs() < 1e-12);
//! ```

pub mod catalog;
pub mod error;
pub mod lineals;
pub mod metaspace;
pub mod motions;
pub mod sigcore;
pub mod tol;
pub mod trigrel;

pub use error::{GeomError, Result};
pub use sigcore::{PairType, Signature, Trig, TrigFn};
