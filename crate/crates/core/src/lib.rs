//! Finite group actions on hyperbolic surfaces and their equivariant totally
//! geodesic embeddings into hyperbolic 3-manifolds.
//!
//! The crate is `no_std` and needs only `alloc`. File formats and the command
//! line live in the `geoembed` crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod abelian;
pub mod diagram;
pub mod error;
pub mod fuchsian;
pub mod geometry;
pub mod group;
pub mod homs;
pub mod library;
pub mod perm;
pub mod pipeline;
pub mod word;

pub use error::{Error, Result};
pub use group::PermGroup;
pub use perm::Permutation;
pub use word::{evaluate, Presentation, Word};
