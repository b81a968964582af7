//! Torsors over finite group actions, at desk scale.
//!
//! The crate works in the category of finite Γ-sets: finite sets with an
//! action of a fixed finite group Γ, the combinatorial shadow of finite
//! étale algebras over a field whose absolute Galois group surjects onto Γ.
//! On top of that it builds Γ-groups, cocycles and nonabelian H¹, right
//! torsors and bitorsors with contracted products, the twisting functor on
//! G-objects, and a model of Galois covers as fundamental-group surjections
//! with the fixed-point test for specialization.
//!
//! Everything is exhaustive and deterministic: group orders are capped,
//! enumerations are returned in documented orders, and every claimed
//! isomorphism is returned as an explicit point bijection.

pub mod error;
pub mod group;
pub mod gamma;
pub mod gset;
pub mod torsor;
pub mod twist;
pub mod cover;
pub mod parse;
pub mod report;
pub mod corpus;
pub mod verify;

pub use error::{ActionError, CoverError, DocError, GroupError, TorsorError, TwistError};
pub use gamma::{enumerate_cocycles, h1, twisted_conjugate_equiv, Cocycle, GammaGroup};
pub use group::{enumerate_homs, FiniteGroup, GroupHom, HomConstraints, Subgroup};
pub use gset::{equivariant_isoms, GammaSet, GObject};
pub use report::TwistReport;
pub use torsor::{contracted_product, Bitorsor, Torsor};
