//! Persistence modules on finite chains and their interval decompositions.
//!
//! A [`ChainModule`] of length `L` assigns a vector space of dimension
//! `dims[t]` to each `t < L` and a matrix `maps[t]: V_t -> V_{t+1}` to each
//! step. Its barcode is read off the rank invariant
//! `r(i, j) = rank(V_i -> V_j)` by inclusion-exclusion.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::linalg::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainModule {
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl ChainModule {
    pub fn new(dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::domain("chain module needs positive length"));
        }
        if maps.len() + 1 != dims.len() {
            return Err(Error::domain(format!(
                "{} structure maps for length {}",
                maps.len(),
                dims.len()
            )));
        }
        for (t, m) in maps.iter().enumerate() {
            if m.rows() != dims[t + 1] || m.cols() != dims[t] {
                return Err(Error::domain(format!(
                    "map {t} has shape {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    dims[t + 1],
                    dims[t]
                )));
            }
        }
        Ok(ChainModule { dims, maps })
    }

    pub fn zero(length: usize) -> Result<Self> {
        let dims = vec![0; length];
        let maps = (1..length).map(|_| Matrix::zeros(0, 0)).collect();
        ChainModule::new(dims, maps)
    }

    pub fn length(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// Reduces every structure map into `field`.
    pub fn reduced(&self, field: &ScalarField) -> Result<ChainModule> {
        let maps = self
            .maps
            .iter()
            .map(|m| m.reduced(field))
            .collect::<Result<_>>()?;
        Ok(ChainModule {
            dims: self.dims.clone(),
            maps,
        })
    }

    /// The structure map `V_i -> V_j` for `i <= j`.
    pub fn composite(&self, field: &ScalarField, i: usize, j: usize) -> Result<Matrix> {
        self.check_pair(i, j)?;
        let mut acc = Matrix::identity(self.dims[i]);
        for t in i..j {
            acc = self.maps[t].mul(field, &acc)?;
        }
        Ok(acc)
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        if i > j || j >= self.length() {
            return Err(Error::domain(format!(
                "index pair ({i}, {j}) out of range for length {}",
                self.length()
            )));
        }
        Ok(())
    }
}

/// Rank of `V_i -> V_j`; `rank_invariant(m, i, i) = dims[i]`.
pub fn rank_invariant(field: &ScalarField, m: &ChainModule, i: usize, j: usize) -> Result<usize> {
    Ok(m.composite(field, i, j)?.rank(field))
}

/// All ranks `r(i, j)` for `i <= j`, indexed `[i][j - i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankTable {
    rows: Vec<Vec<usize>>,
}

impl RankTable {
    pub fn compute(field: &ScalarField, m: &ChainModule) -> Result<Self> {
        let l = m.length();
        let mut rows = Vec::with_capacity(l);
        for i in 0..l {
            let mut row = Vec::with_capacity(l - i);
            let mut acc = Matrix::identity(m.dims[i]);
            row.push(m.dims[i]);
            for t in i..l - 1 {
                acc = m.maps[t].mul(field, &acc)?;
                row.push(acc.rank(field));
            }
            rows.push(row);
        }
        Ok(RankTable { rows })
    }

    /// `r(i, j)` with the conventions `r(-1, .) = 0` and `r(., L) = 0`.
    pub fn get(&self, i: isize, j: usize) -> usize {
        if i < 0 || j >= self.rows.len() {
            return 0;
        }
        let i = i as usize;
        self.rows[i][j - i]
    }
}

/// A multiset of grid bars `[start, end)` with `0 <= start < end <= L`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Barcode {
    bars: BTreeMap<(usize, usize), usize>,
}

impl Barcode {
    pub fn new() -> Self {
        Barcode::default()
    }

    pub fn add(&mut self, start: usize, end: usize, mult: usize) -> Result<()> {
        if start >= end {
            return Err(Error::domain(format!("bar [{start}, {end}) is empty")));
        }
        if mult > 0 {
            *self.bars.entry((start, end)).or_default() += mult;
        }
        Ok(())
    }

    pub fn from_bars(bars: impl IntoIterator<Item = (usize, usize, usize)>) -> Result<Self> {
        let mut b = Barcode::new();
        for (s, e, m) in bars {
            b.add(s, e, m)?;
        }
        Ok(b)
    }

    pub fn bars(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.bars.iter().map(|(&(s, e), &m)| (s, e, m))
    }

    pub fn multiplicity(&self, start: usize, end: usize) -> usize {
        self.bars.get(&(start, end)).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    pub fn total(&self) -> usize {
        self.bars.values().sum()
    }

    /// Pointwise dimensions `Σ_{bars ∋ t} mult` for `t < length`.
    pub fn dims(&self, length: usize) -> Vec<usize> {
        let mut dims = vec![0; length];
        for (s, e, m) in self.bars() {
            for d in dims.iter_mut().take(e.min(length)).skip(s) {
                *d += m;
            }
        }
        dims
    }
}

/// Interval decomposition by inclusion-exclusion on the rank invariant.
pub fn decompose(field: &ScalarField, m: &ChainModule) -> Result<Barcode> {
    let m = m.reduced(field)?;
    let table = RankTable::compute(field, &m)?;
    let l = m.length();
    let mut out = Barcode::new();
    for i in 0..l {
        for j in i + 1..=l {
            let r = |a: isize, b: usize| table.get(a, b) as i64;
            let ii = i as isize;
            let mult = r(ii, j - 1) - r(ii, j) - r(ii - 1, j - 1) + r(ii - 1, j);
            if mult < 0 {
                return Err(Error::internal(format!(
                    "negative multiplicity {mult} for bar [{i}, {j})"
                )));
            }
            out.add(i, j, mult as usize)?;
        }
    }
    Ok(out)
}

/// Direct sum of the bars, with identity structure maps inside each bar.
pub fn realize(b: &Barcode, length: usize) -> Result<ChainModule> {
    if length == 0 {
        return Err(Error::domain("chain module needs positive length"));
    }
    for (s, e, _) in b.bars() {
        if e > length {
            return Err(Error::domain(format!(
                "bar [{s}, {e}) exceeds length {length}"
            )));
        }
    }
    // basis of V_t: copies of the bars alive at t, in bar order
    let alive = |t: usize| -> Vec<(usize, usize, usize)> {
        b.bars()
            .filter(|&(s, e, _)| s <= t && t < e)
            .flat_map(|(s, e, m)| (0..m).map(move |k| (s, e, k)))
            .collect()
    };
    let bases: Vec<_> = (0..length).map(alive).collect();
    let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
    let mut maps = Vec::with_capacity(length.saturating_sub(1));
    for t in 0..length.saturating_sub(1) {
        let mut m = Matrix::zeros(dims[t + 1], dims[t]);
        for (col, key) in bases[t].iter().enumerate() {
            if let Some(row) = bases[t + 1].iter().position(|k| k == key) {
                m.set(row, col, num_traits::One::one());
            }
        }
        maps.push(m);
    }
    ChainModule::new(dims, maps)
}
