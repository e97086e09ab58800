//! Exact line-bundle calculus on abelian covers `X -> Y` of (weak) del Pezzo
//! surfaces.
//!
//! The crate is `no_std` (it needs `alloc`) and purely combinatorial: finite
//! abelian groups and their characters, the Picard lattice `Z^{1,n}`,
//! pushforward decompositions of line bundles along the cover, cohomology of
//! divisor classes on `Y` and of line bundles on `X`, the semigroup of
//! effective divisors, and the exhaustive enumeration of exceptional
//! collections of line bundles.
//!
//! File formats, the surface registry and the command line live in the
//! companion `fakedp` crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod cohom;
pub mod collections;
pub mod cone;
pub mod cover;
pub mod delpezzo;
pub mod effective;
pub mod error;
pub mod groups;
pub mod lattice;
mod linalg;
pub mod surface;

pub use cohom::{AcyclicMethod, CohomDims, ExtTable};
pub use collections::{DihedralOp, Formality, Pseudoheight, TwistSearch};
pub use cover::{BranchComponent, CoverData, DenseExpr, DivisorExprX, LineBundleX, UnramifiedCurve};
pub use delpezzo::SurfaceY;
pub use effective::{EffSemigroup, EffectivityMode, TorsionImages};
pub use error::{Error, Result};
pub use groups::{Character, FinAbGroup, GroupElement};
pub use lattice::{DivClass, PicLattice};
pub use surface::{Surface, XData};
