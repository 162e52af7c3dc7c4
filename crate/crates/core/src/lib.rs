//! Exact computations with persistence modules over totally ordered sets.

pub mod barcode;
pub mod coord;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod fp;
pub mod interleaving;
pub mod json;
pub mod linalg;
pub mod order;
pub mod spectrum;

pub use barcode::{decompose, rank_invariant, realize, Barcode, ChainModule, RankTable};
pub use coord::{Coord, ExtCoord, Rational};
pub use error::{Error, Result};
pub use field::ScalarField;
pub use fp::{
    cokernel, compose, hom_dim, hom_to_injective, is_flat, kernel, reduce_generators, FpInterval,
    FpModule, FpMorphism, Generator, SampleGrid,
};
pub use interleaving::{
    ball, brute_force_distance, distance, is_interleaved, shift_interval, shift_point, Bracket,
    Eps, ExtDistance,
};
pub use json::Json;
pub use linalg::Matrix;
pub use order::{classify_ideal, cmp_d, contains, DPoint, Flavor, IdealType, IndexModel};
pub use spectrum::{
    ClosureStrategy, DEndpoint, DInterval, RegionGap, SerreRegion, Spectrum, SymbolicSet, Window,
};
