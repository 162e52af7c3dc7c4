//! Benchmark workloads, built from fixed seeds so runs are comparable.

use spectral_core::fixtures::Fixtures;
use spectral_core::{ChainModule, FpMorphism, IndexModel, ScalarField, Spectrum, SymbolicSet};

pub const SEED: u64 = 0xbe_4c4;

/// Random morphisms between modules with up to `summands` summands and
/// endpoints in `0..=span`.
pub fn morphisms(count: usize, summands: usize, span: i64) -> Vec<FpMorphism> {
    let mut fx = Fixtures::new(SEED);
    (0..count)
        .map(|_| {
            let s = fx.fp_module(summands, 0, span, 0.25);
            let t = fx.fp_module(summands, 0, span, 0.25);
            fx.fp_morphism(ScalarField::ExactRationals, s, t, 0.7)
        })
        .collect()
}

pub fn chain_modules(count: usize, max_dim: usize, length: usize) -> Vec<ChainModule> {
    let mut fx = Fixtures::new(SEED);
    (0..count).map(|_| fx.chain_module(max_dim, length)).collect()
}

pub fn spectrum() -> Spectrum {
    Spectrum::new(IndexModel::dense()).expect("dense model")
}

pub fn sets(spectrum: &Spectrum, count: usize, components: usize) -> Vec<SymbolicSet> {
    let mut fx = Fixtures::new(SEED);
    (0..count)
        .map(|_| fx.symbolic_set(spectrum, components, -10, 10, 4))
        .collect()
}
