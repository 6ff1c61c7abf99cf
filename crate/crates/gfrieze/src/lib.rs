//! Generalised friezes from a modified Caldero-Chapoton map on polygon models
//! of type-A cluster categories, with exact Laurent polynomial arithmetic.
//!
//! The pieces, bottom up:
//!
//! - [`laurent`]: the value ring `Z[x_1^{±1}, ..., x_k^{±1}]`, with a
//!   canonical text grammar.
//! - [`polygon`]: diagonals of an `m`-gon as the indecomposable objects;
//!   crossing, suspension, AR meshes, exchange pairs, and validation of rigid
//!   and cluster tilting sets.
//! - [`mesh`]: the knitted mesh category of the AR quiver, the oracle for
//!   Hom dimensions and nonzero composites.
//! - [`flmod`]: the thin functor modules `Gc = C(-, Σc)|_R`, their submodule
//!   Grassmannians (finite discrete sets counted exactly) and the
//!   classification of the image of each mesh.
//! - [`ktheory`]: the split Grothendieck group of `T`, the subgroup `N`, its
//!   quotient in integer normal form, the index solver, and exponential maps
//!   `ε` into the Laurent units.
//! - [`ccmap`]: the map `ρ(c) = α(c) Σ_e χ(Gr_e(Gc)) β(e)` with
//!   `α = ε Q ind` and `β = ε θ`, its original and integer-valued special
//!   cases, and the per-mesh frieze verifier.
//! - [`config`] / [`emit`]: the CLI configuration format and the
//!   deterministic text, JSON, TikZ, DOT and report emitters.

pub mod ccmap;
pub mod config;
pub mod emit;
pub mod flmod;
pub mod ktheory;
pub mod laurent;
pub mod mesh;
pub mod polygon;

pub use ccmap::{CCContext, EpsilonChoice, FriezeReport, MapMode, MeshVerdict};
pub use flmod::{FlClass, MeshImageClass, ThinModule};
pub use ktheory::{Epsilon, QuotientPresentation, SplitK0Class};
pub use laurent::{LaurentPoly, SignedMonomial, VarTable};
pub use mesh::MeshEngine;
pub use polygon::{ARMesh, Diagonal, ExchangePair, PolygonCategory};
