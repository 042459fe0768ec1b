//! Hyperplanes, cubulation, folds and swellings of finite median graphs,
//! and the factorization of parallel-preserving maps into elementary moves.
//!
//! Everything here is `no_std` with `alloc`; text formats and the command
//! line live in a companion crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bitset;
pub mod cubulation;
pub mod equivariance;
pub mod error;
pub mod factorize;
pub mod families;
pub mod fold;
pub mod graph;
pub mod hyperplane;
pub mod iso;
pub mod median;
pub mod morphism;
pub mod swell;
mod union_find;

pub use bitset::BitSet;
pub use cubulation::{cubulate, walls_from_hyperplanes, Cubulation, Orientation, Wall, Wallspace};
pub use equivariance::{InducedAction, SymmetryGroup};
pub use error::{Error, Result};
pub use factorize::{factorize, FactorizationTrace, Mode, Move, MoveKind};
pub use fold::{fold_collection, fold_pair, FoldResult, PairCollection};
pub use graph::{Graph, VertexSet};
pub use hyperplane::{HyperplaneRelation, Hyperplanes, RelationKind};
pub use median::{MedianGraph, MedianReport};
pub use morphism::{classify, compose, MapClass, MapKind, PPMap};
pub use swell::{swell_collection, swell_pair, SwellResult};
