//! Noncommutative geometry of trees of semisimple algebras.
//!
//! The pipeline runs tree → Zariski quiver Γ → monoid of full dimension
//! vectors → étale quiver Ψ → local quivers and smoothness. Alongside sit the
//! necklace Lie algebra of a double quiver with its one-way flows, exact
//! evaluation on representations, and the S_Δ variant of the dimension-vector
//! monoid.

pub mod compactification;
pub mod dot;
pub mod error;
pub mod etale;
pub mod hilbert;
pub mod matrix;
pub mod poisson;
pub mod presets;
pub mod quiver;
pub mod rational;
pub mod repvar;
pub mod semigroup;
pub mod tree;
pub mod zariski;

pub use error::{Error, Result};
pub use quiver::{double_quiver, euler_form, is_symmetric, Arrow, DimVector, DoubleQuiver, Quiver};
pub use rational::Q;
pub use semigroup::{dimvec_check, semigroup_generators, DimVecStatus};
pub use tree::{parse_tree, validate_tree, TreeOfAlgebras};
pub use zariski::{sigma_matrix, zariski_quiver, ArrowMatrix, ZariskiQuiver};
