//! Seeded random inputs for tests, benchmarks and the CLI corpus.
//!
//! The seed comes from `SPECTRAL_SEED` when set, so a failing run can be
//! replayed exactly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::barcode::{Barcode, ChainModule};
use crate::coord::{Coord, ExtCoord, Rational};
use crate::field::ScalarField;
use crate::fp::{hom_dim, FpInterval, FpModule, FpMorphism, Generator};
use crate::linalg::Matrix;
use crate::order::DPoint;
use crate::spectrum::{DEndpoint, DInterval, Spectrum, SymbolicSet};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// `SPECTRAL_SEED` parsed as an integer, or `default`.
pub fn seed_from_env(default: u64) -> u64 {
    std::env::var("SPECTRAL_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(default)
}

pub struct Fixtures {
    rng: ChaCha8Rng,
}

impl Fixtures {
    pub fn new(seed: u64) -> Self {
        Fixtures {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn from_env() -> Self {
        Fixtures::new(seed_from_env(DEFAULT_SEED))
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    /// A rational in `[lo, hi]` with denominator dividing `den`.
    pub fn rational(&mut self, lo: i64, hi: i64, den: i64) -> Rational {
        let n = self.rng.gen_range(lo * den..=hi * den);
        Rational::new(n.into(), den.into())
    }

    pub fn coord(&mut self, lo: i64, hi: i64, den: i64) -> Coord {
        Coord::rational(self.rational(lo, hi, den))
    }

    /// A finite point with rational coordinate and random flavor.
    pub fn finite_point(&mut self, lo: i64, hi: i64, den: i64) -> DPoint {
        let c = self.coord(lo, hi, den);
        if self.coin(0.5) {
            DPoint::strict(c)
        } else {
            DPoint::principal(c)
        }
    }

    /// Like [`finite_point`](Self::finite_point), but the top with probability `p_top`.
    pub fn point(&mut self, lo: i64, hi: i64, den: i64, p_top: f64) -> DPoint {
        if self.coin(p_top) {
            DPoint::top()
        } else {
            self.finite_point(lo, hi, den)
        }
    }

    fn endpoint(&mut self, p: DPoint) -> DEndpoint {
        if self.coin(0.5) {
            DEndpoint::Included(p)
        } else {
            DEndpoint::Excluded(p)
        }
    }

    /// At most `max_components` random intervals with endpoints in
    /// `[lo, hi] ∩ (1/den)Z`, occasionally unbounded on either side.
    pub fn symbolic_set(
        &mut self,
        spectrum: &Spectrum,
        max_components: usize,
        lo: i64,
        hi: i64,
        den: i64,
    ) -> SymbolicSet {
        let n = self.rng.gen_range(0..=max_components);
        let mut points: Vec<DPoint> = (0..2 * n).map(|_| self.finite_point(lo, hi, den)).collect();
        points.sort();
        let mut intervals = Vec::with_capacity(n);
        for k in 0..n {
            let a = points[2 * k].clone();
            let b = points[2 * k + 1].clone();
            let lo_end = if k == 0 && self.coin(0.15) {
                DEndpoint::BelowAll
            } else {
                self.endpoint(a)
            };
            let hi_end = if k + 1 == n && self.coin(0.15) {
                self.endpoint(DPoint::top())
            } else {
                self.endpoint(b)
            };
            intervals.push(DInterval::new(lo_end, hi_end));
        }
        spectrum.set(intervals).expect("rational points are valid in dense models")
    }

    /// `[a, b)` with `a, b` integers in `[lo, hi]`, `b = inf` with probability `p_inf`.
    pub fn fp_interval(&mut self, lo: i64, hi: i64, p_inf: f64) -> FpInterval {
        let a = self.int(lo, hi - 1);
        if self.coin(p_inf) {
            return FpInterval::projective(a);
        }
        let b = self.int(a + 1, hi);
        FpInterval::new(a, b).expect("a < b")
    }

    pub fn fp_module(&mut self, max_summands: usize, lo: i64, hi: i64, p_inf: f64) -> FpModule {
        let n = self.rng.gen_range(0..=max_summands);
        FpModule::new((0..n).map(|_| self.fp_interval(lo, hi, p_inf)).collect())
    }

    /// A nonzero scalar in `[-3, 3]` reduced into `field`, or zero if the
    /// field kills it.
    pub fn scalar(&mut self, field: &ScalarField) -> Rational {
        let mut n = 0;
        while n == 0 {
            n = self.int(-3, 3);
        }
        field
            .reduce(&Rational::from_integer(n.into()))
            .expect("integers reduce")
    }

    /// A random morphism; each admissible entry is filled with probability `density`.
    pub fn fp_morphism(
        &mut self,
        field: ScalarField,
        source: FpModule,
        target: FpModule,
        density: f64,
    ) -> FpMorphism {
        let mut entries = Vec::new();
        for (i, x) in source.summands().iter().enumerate() {
            for (j, y) in target.summands().iter().enumerate() {
                if hom_dim(x, y) == 1 && self.coin(density) {
                    entries.push((i, j, self.scalar(&field)));
                }
            }
        }
        FpMorphism::new(field, source, target, entries).expect("entries are admissible")
    }

    pub fn barcode(&mut self, max_bars: usize, length: usize) -> Barcode {
        let n = self.rng.gen_range(0..=max_bars);
        let mut b = Barcode::new();
        for _ in 0..n {
            let s = self.rng.gen_range(0..length);
            let e = self.rng.gen_range(s + 1..=length);
            b.add(s, e, 1).expect("nonempty bar");
        }
        b
    }

    pub fn matrix(&mut self, rows: usize, cols: usize, p_zero: f64) -> Matrix {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if !self.coin(p_zero) {
                    let v = self.int(-2, 2);
                    m.set(i, j, Rational::from_integer(v.into()));
                }
            }
        }
        m
    }

    /// Random module with dimensions in `0..=max_dim`; maps are sometimes
    /// forced injective so that flat modules appear often.
    pub fn chain_module(&mut self, max_dim: usize, length: usize) -> ChainModule {
        let dims: Vec<usize> = (0..length).map(|_| self.rng.gen_range(0..=max_dim)).collect();
        let maps = (0..length.saturating_sub(1))
            .map(|t| {
                let (r, c) = (dims[t + 1], dims[t]);
                if c <= r && self.coin(0.4) {
                    let mut m = self.matrix(r, c, 0.5);
                    for k in 0..c {
                        m.set(k, k, Rational::from_integer(1.into()));
                        for i in 0..k {
                            m.set(i, k, Rational::from_integer(0.into()));
                        }
                    }
                    m
                } else {
                    self.matrix(r, c, 0.4)
                }
            })
            .collect();
        ChainModule::new(dims, maps).expect("consistent shapes")
    }

    /// A random invertible `n x n` matrix over `field`.
    pub fn invertible(&mut self, field: &ScalarField, n: usize) -> Matrix {
        loop {
            let m = self.matrix(n, n, 0.3).reduced(field).expect("integers reduce");
            if m.rank(field) == n {
                return m;
            }
        }
    }

    /// Generators of a submodule of a projective ambient module, positions
    /// drawn from summand starts and integers in `[lo, hi]`.
    pub fn generators(
        &mut self,
        field: &ScalarField,
        ambient: &FpModule,
        count: usize,
        lo: i64,
        hi: i64,
    ) -> Vec<Generator> {
        (0..count)
            .map(|_| {
                let pos = if !ambient.is_empty() && self.coin(0.5) {
                    let k = self.rng.gen_range(0..ambient.len());
                    ambient.summands()[k].start().clone()
                } else {
                    self.coord(lo, hi, 1)
                };
                let coeffs = ambient
                    .summands()
                    .iter()
                    .map(|s| {
                        if s.alive_at(&pos) && self.coin(0.7) {
                            self.scalar(field)
                        } else {
                            Rational::from_integer(0.into())
                        }
                    })
                    .collect();
                Generator::new(pos, coeffs)
            })
            .collect()
    }

    /// Projective module `[a_k, inf)` with integer starts in `[lo, hi]`.
    pub fn projective_module(&mut self, max_summands: usize, lo: i64, hi: i64) -> FpModule {
        let n = self.rng.gen_range(1..=max_summands.max(1));
        FpModule::new((0..n).map(|_| FpInterval::projective(self.int(lo, hi))).collect())
    }

    pub fn ext_coord(&mut self, lo: i64, hi: i64, p_inf: f64) -> ExtCoord {
        if self.coin(p_inf) {
            ExtCoord::PlusInfinity
        } else {
            ExtCoord::Finite(Coord::int(self.int(lo, hi)))
        }
    }
}
