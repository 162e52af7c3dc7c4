//! Finitely presented persistence modules over a totally ordered set.
//!
//! Objects are finite direct sums of interval modules `k_[a,b)` with
//! `b` possibly `+inf`. Between two intervals the Hom space has dimension at
//! most one, so a morphism is a matrix of scalars, one per pair of summands.
//!
//! Kernels and cokernels are computed on a sample grid: every finite endpoint
//! of source and target, one interior point per cell and one point beyond the
//! last endpoint. Interval modules are constant between consecutive
//! endpoints, so this grid carries all the information.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::barcode::{decompose, Barcode, ChainModule};
use crate::coord::{Coord, ExtCoord, Rational};
use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::linalg::{Matrix, SpanBasis, Vector};
use crate::order::{DPoint, IndexModel};

/// The interval module `k_[start, end)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpInterval {
    start: Coord,
    end: ExtCoord,
}

impl FpInterval {
    pub fn new(start: impl Into<Coord>, end: impl Into<ExtCoord>) -> Result<Self> {
        let start = start.into();
        let end = end.into();
        if ExtCoord::Finite(start.clone()) >= end {
            return Err(Error::domain(format!("empty interval [{start}, {end})")));
        }
        Ok(FpInterval { start, end })
    }

    /// The representable projective `k_[start, inf)`.
    pub fn projective(start: impl Into<Coord>) -> Self {
        FpInterval {
            start: start.into(),
            end: ExtCoord::PlusInfinity,
        }
    }

    pub fn start(&self) -> &Coord {
        &self.start
    }

    pub fn end(&self) -> &ExtCoord {
        &self.end
    }

    pub fn is_projective(&self) -> bool {
        self.end.is_infinite()
    }

    pub fn validate(&self, model: &IndexModel) -> Result<()> {
        model.check_member(&self.start)?;
        model.check_ext_member(&self.end)
    }

    pub fn alive_at(&self, t: &Coord) -> bool {
        self.start <= *t && ExtCoord::Finite(t.clone()) < self.end
    }
}

impl fmt::Display for FpInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{})", self.start, self.end)
    }
}

/// `dim Hom(k_[a,b), k_[c,d))`: one iff `c <= a < d <= b`.
pub fn hom_dim(x: &FpInterval, y: &FpInterval) -> usize {
    let a = ExtCoord::Finite(x.start.clone());
    let ok = y.start <= x.start && a < y.end && y.end <= x.end;
    usize::from(ok)
}

/// `dim Hom(k_[a,b), k_I)` for the ideal `I` encoded by `p`.
///
/// Nonzero exactly when `(a, Principal) <= p <= (b, Strict)`.
pub fn hom_to_injective(x: &FpInterval, p: &DPoint) -> usize {
    let lower = DPoint::principal(x.start.clone());
    let upper = match &x.end {
        ExtCoord::Finite(b) => DPoint::strict(b.clone()),
        ExtCoord::PlusInfinity => DPoint::top(),
    };
    usize::from(lower <= *p && *p <= upper)
}

/// A finite direct sum of interval modules, in the order given.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FpModule {
    summands: Vec<FpInterval>,
}

impl FpModule {
    pub fn new(summands: Vec<FpInterval>) -> Self {
        FpModule { summands }
    }

    pub fn zero() -> Self {
        FpModule::default()
    }

    pub fn summands(&self) -> &[FpInterval] {
        &self.summands
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn validate(&self, model: &IndexModel) -> Result<()> {
        self.summands.iter().try_for_each(|s| s.validate(model))
    }

    pub fn is_canonical(&self) -> bool {
        self.summands.windows(2).all(|w| w[0] <= w[1])
    }

    /// Sorted copy plus `perm`, where `perm[old] = new`.
    pub fn canonicalize(&self) -> (FpModule, Vec<usize>) {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| self.summands[a].cmp(&self.summands[b]).then(a.cmp(&b)));
        let mut perm = vec![0; self.len()];
        for (new, &old) in order.iter().enumerate() {
            perm[old] = new;
        }
        let summands = order.iter().map(|&i| self.summands[i].clone()).collect();
        (FpModule { summands }, perm)
    }

    /// Canonical representative of the isomorphism class.
    pub fn canonical(&self) -> FpModule {
        self.canonicalize().0
    }

    pub fn alive_at(&self, t: &Coord) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.summands[i].alive_at(t))
            .collect()
    }

    pub fn dim_at(&self, t: &Coord) -> usize {
        self.summands.iter().filter(|s| s.alive_at(t)).count()
    }

    pub fn is_projective(&self) -> bool {
        self.summands.iter().all(FpInterval::is_projective)
    }

    fn finite_endpoints(&self) -> impl Iterator<Item = Coord> + '_ {
        self.summands.iter().flat_map(|s| {
            std::iter::once(s.start.clone()).chain(s.end.finite().cloned())
        })
    }
}

impl fmt::Display for FpModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.summands.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A morphism of fp modules: entry `(i, j)` is the scalar from source summand
/// `i` to target summand `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMorphism {
    field: ScalarField,
    source: FpModule,
    target: FpModule,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl FpMorphism {
    pub fn new(
        field: ScalarField,
        source: FpModule,
        target: FpModule,
        entries: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (i, j, v) in entries {
            if i >= source.len() || j >= target.len() {
                return Err(Error::domain(format!("entry ({i}, {j}) out of range")));
            }
            let v = field.reduce(&v)?;
            if map.contains_key(&(i, j)) {
                return Err(Error::domain(format!("duplicate entry ({i}, {j})")));
            }
            if v.is_zero() {
                continue;
            }
            if hom_dim(&source.summands[i], &target.summands[j]) == 0 {
                return Err(Error::domain(format!(
                    "no nonzero map {} -> {}",
                    source.summands[i], target.summands[j]
                )));
            }
            map.insert((i, j), v);
        }
        Ok(FpMorphism {
            field,
            source,
            target,
            entries: map,
        })
    }

    pub fn zero(field: ScalarField, source: FpModule, target: FpModule) -> Self {
        FpMorphism {
            field,
            source,
            target,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(field: ScalarField, m: FpModule) -> Self {
        let entries = (0..m.len()).map(|i| ((i, i), field.one())).collect();
        FpMorphism {
            field,
            source: m.clone(),
            target: m,
            entries,
        }
    }

    pub fn field(&self) -> ScalarField {
        self.field
    }

    pub fn source(&self) -> &FpModule {
        &self.source
    }

    pub fn target(&self) -> &FpModule {
        &self.target
    }

    pub fn entry(&self, i: usize, j: usize) -> Rational {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero entries in `(from, to)` order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Re-indexes both sides into canonical summand order.
    pub fn canonicalize(&self) -> FpMorphism {
        let (source, sp) = self.source.canonicalize();
        let (target, tp) = self.target.canonicalize();
        let entries = self
            .entries
            .iter()
            .map(|(&(i, j), v)| ((sp[i], tp[j]), v.clone()))
            .collect();
        FpMorphism {
            field: self.field,
            source,
            target,
            entries,
        }
    }

    /// The matrix of `f_t`, rows over target summands alive at `t`, columns
    /// over source summands alive at `t`.
    pub fn pointwise(&self, t: &Coord) -> Pointwise {
        let src = self.source.alive_at(t);
        let tgt = self.target.alive_at(t);
        let mut m = Matrix::zeros(tgt.len(), src.len());
        for (c, &i) in src.iter().enumerate() {
            for (r, &j) in tgt.iter().enumerate() {
                if let Some(v) = self.entries.get(&(i, j)) {
                    m.set(r, c, v.clone());
                }
            }
        }
        Pointwise {
            source: src,
            target: tgt,
            matrix: m,
        }
    }
}

/// The linear map of a morphism at one index, with the alive summands.
#[derive(Clone, Debug)]
pub struct Pointwise {
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub matrix: Matrix,
}

/// `f ∘ g`. Entries whose pair admits no nonzero map are dropped; such a
/// composite factors through a pair with disjoint overlap and is zero.
pub fn compose(f: &FpMorphism, g: &FpMorphism) -> Result<FpMorphism> {
    if g.target != f.source {
        return Err(Error::domain("target of g differs from source of f"));
    }
    if f.field != g.field {
        return Err(Error::domain("morphisms over different fields"));
    }
    let field = f.field;
    let mut acc: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
    for (&(i, j), gv) in &g.entries {
        for (&(j2, k), fv) in f.entries.range((j, 0)..=(j, usize::MAX)) {
            debug_assert_eq!(j, j2);
            if hom_dim(&g.source.summands[i], &f.target.summands[k]) == 0 {
                continue;
            }
            let e = acc.entry((i, k)).or_insert_with(Rational::zero);
            *e = field.add(e, &field.mul(gv, fv));
        }
    }
    acc.retain(|_, v| !v.is_zero());
    Ok(FpMorphism {
        field,
        source: g.source.clone(),
        target: f.target.clone(),
        entries: acc,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleKind {
    /// A finite endpoint of some summand.
    Endpoint,
    /// A point strictly inside a cell between endpoints, or beyond the last one.
    Interior,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample {
    pub coord: Coord,
    pub kind: SampleKind,
}

/// Sorted sample points for a collection of fp modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleGrid {
    samples: Vec<Sample>,
}

impl SampleGrid {
    pub fn for_modules(modules: &[&FpModule]) -> Self {
        let mut ends: Vec<Coord> = modules.iter().flat_map(|m| m.finite_endpoints()).collect();
        ends.sort();
        ends.dedup();
        let mut samples = Vec::with_capacity(2 * ends.len());
        for (k, e) in ends.iter().enumerate() {
            samples.push(Sample {
                coord: e.clone(),
                kind: SampleKind::Endpoint,
            });
            let next = match ends.get(k + 1) {
                Some(n) => Coord::rational(Coord::rational_between(e, n)),
                None => Coord::rational(e.rational_above()),
            };
            samples.push(Sample {
                coord: next,
                kind: SampleKind::Interior,
            });
        }
        SampleGrid { samples }
    }

    pub fn for_morphism(f: &FpMorphism) -> Self {
        SampleGrid::for_modules(&[&f.source, &f.target])
    }

    /// Adds interior sample points; points equal to existing samples are ignored.
    pub fn refined(&self, extra: &[Coord]) -> Self {
        let mut samples = self.samples.clone();
        for c in extra {
            if samples.iter().all(|s| s.coord != *c) {
                samples.push(Sample {
                    coord: c.clone(),
                    kind: SampleKind::Interior,
                });
            }
        }
        samples.sort_by(|a, b| a.coord.cmp(&b.coord));
        SampleGrid { samples }
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn coords(&self) -> impl Iterator<Item = &Coord> {
        self.samples.iter().map(|s| &s.coord)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    fn endpoint(&self, idx: usize) -> Result<Coord> {
        let s = &self.samples[idx];
        if s.kind != SampleKind::Endpoint {
            return Err(Error::internal(format!(
                "bar boundary at interior sample {}",
                s.coord
            )));
        }
        Ok(s.coord.clone())
    }

    /// Lifts grid bars back to intervals of `T`: a bar `[i, j)` becomes
    /// `[coord(i), coord(j))`, or `[coord(i), inf)` when it is alive at the
    /// last sample. Both boundaries must fall on endpoint samples.
    pub fn lift(&self, bars: &Barcode) -> Result<FpModule> {
        let mut out = Vec::new();
        for (s, e, m) in bars.bars() {
            let start = self.endpoint(s)?;
            let end = if e == self.len() {
                ExtCoord::PlusInfinity
            } else {
                ExtCoord::Finite(self.endpoint(e)?)
            };
            for _ in 0..m {
                out.push(FpInterval::new(start.clone(), end.clone())?);
            }
        }
        Ok(FpModule::new(out).canonical())
    }
}

fn sparse_restrict(v: &BTreeMap<usize, Rational>, m: &FpModule, t: &Coord) -> BTreeMap<usize, Rational> {
    v.iter()
        .filter(|(&i, _)| m.summands[i].alive_at(t))
        .map(|(&i, x)| (i, x.clone()))
        .collect()
}

fn dense(v: &BTreeMap<usize, Rational>, basis: &[usize]) -> Vector {
    basis
        .iter()
        .map(|i| v.get(i).cloned().unwrap_or_else(Rational::zero))
        .collect()
}

/// Kernel of `f` with its embedding into the source, in canonical form.
pub fn kernel(f: &FpMorphism) -> Result<(FpModule, FpMorphism)> {
    kernel_on_grid(f, &SampleGrid::for_morphism(f))
}

/// Kernel computed on a caller-supplied grid (which must contain every
/// endpoint sample of `f`).
///
/// Kernel vectors are reduced so that their latest-dying source coordinates
/// are distinct. Source transitions only drop coordinates, so a generator
/// survives exactly until that coordinate dies, which makes the generators an
/// interval basis of the kernel.
pub fn kernel_on_grid(f: &FpMorphism, grid: &SampleGrid) -> Result<(FpModule, FpMorphism)> {
    let field = f.field;
    let src = &f.source;
    let key = |i: usize| (src.summands[i].end.clone(), i);
    let pivot_of = |v: &BTreeMap<usize, Rational>| v.keys().copied().max_by_key(|&i| key(i));

    struct Gen {
        birth: usize,
        vec: BTreeMap<usize, Rational>,
        pivot: usize,
    }
    let mut gens: Vec<Gen> = Vec::new();

    for (ti, sample) in grid.samples.iter().enumerate() {
        let t = &sample.coord;
        let pw = f.pointwise(t);
        let mut current: BTreeMap<usize, BTreeMap<usize, Rational>> = gens
            .iter()
            .filter(|g| src.summands[g.pivot].alive_at(t))
            .map(|g| (g.pivot, sparse_restrict(&g.vec, src, t)))
            .collect();
        for nv in pw.matrix.nullspace(&field) {
            let mut v: BTreeMap<usize, Rational> = pw
                .source
                .iter()
                .zip(nv)
                .filter(|(_, x)| !x.is_zero())
                .map(|(&i, x)| (i, x))
                .collect();
            while let Some(p) = pivot_of(&v) {
                match current.get(&p) {
                    Some(g) => {
                        let factor = field.div(&v[&p], &g[&p]);
                        for (&i, gx) in g {
                            let cur = v.get(&i).cloned().unwrap_or_else(Rational::zero);
                            let nx = field.sub(&cur, &field.mul(&factor, gx));
                            if nx.is_zero() {
                                v.remove(&i);
                            } else {
                                v.insert(i, nx);
                            }
                        }
                    }
                    None => {
                        if sample.kind != SampleKind::Endpoint {
                            return Err(Error::internal(format!(
                                "kernel generator born at interior sample {t}"
                            )));
                        }
                        current.insert(p, v.clone());
                        gens.push(Gen {
                            birth: ti,
                            vec: v,
                            pivot: p,
                        });
                        break;
                    }
                }
            }
        }
    }

    let summands = gens
        .iter()
        .map(|g| FpInterval::new(grid.samples[g.birth].coord.clone(), src.summands[g.pivot].end.clone()))
        .collect::<Result<Vec<_>>>()?;
    let k = FpModule::new(summands);
    let entries = gens
        .iter()
        .enumerate()
        .flat_map(|(j, g)| g.vec.iter().map(move |(&i, x)| (j, i, x.clone())))
        .collect::<Vec<_>>();
    let iota = FpMorphism::new(field, k, src.clone(), entries)
        .map_err(|e| Error::internal(format!("kernel embedding invalid: {e}")))?;
    let (k, iota) = into_canonical_source(iota);
    let lifted = grid.lift(&decompose(&field, &sample_kernel(f, grid)?)?)?;
    agree("kernel", &k, &lifted)?;
    Ok((k, iota))
}

fn agree(what: &str, built: &FpModule, lifted: &FpModule) -> Result<()> {
    if built != lifted {
        return Err(Error::internal(format!(
            "{what}: explicit basis gives {built}, barcode gives {lifted}"
        )));
    }
    Ok(())
}

fn into_canonical_source(m: FpMorphism) -> (FpModule, FpMorphism) {
    let (source, perm) = m.source.canonicalize();
    let entries = m
        .entries
        .iter()
        .map(|(&(i, j), v)| ((perm[i], j), v.clone()))
        .collect();
    let m = FpMorphism {
        field: m.field,
        source: source.clone(),
        target: m.target,
        entries,
    };
    (source, m)
}

fn into_canonical_target(m: FpMorphism) -> (FpModule, FpMorphism) {
    let (target, perm) = m.target.canonicalize();
    let entries = m
        .entries
        .iter()
        .map(|(&(i, j), v)| ((i, perm[j]), v.clone()))
        .collect();
    let m = FpMorphism {
        field: m.field,
        source: m.source,
        target: target.clone(),
        entries,
    };
    (target, m)
}

/// Cokernel of `f` with the projection from the target, in canonical form.
pub fn cokernel(f: &FpMorphism) -> Result<(FpModule, FpMorphism)> {
    cokernel_on_grid(f, &SampleGrid::for_morphism(f))
}

/// Cokernel computed on a caller-supplied grid.
///
/// Classes are tracked by representatives in the target. When classes
/// become dependent modulo the image, the youngest one dies and its
/// representative is corrected by the older survivors so that it maps to
/// zero exactly from then on.
pub fn cokernel_on_grid(f: &FpMorphism, grid: &SampleGrid) -> Result<(FpModule, FpMorphism)> {
    let field = f.field;
    let tgt = &f.target;

    struct Class {
        birth: usize,
        rep: BTreeMap<usize, Rational>,
        death: Option<usize>,
    }
    let mut classes: Vec<Class> = Vec::new();

    for (ti, sample) in grid.samples.iter().enumerate() {
        let t = &sample.coord;
        let pw = f.pointwise(t);
        let n = pw.target.len();
        let mut span = SpanBasis::new(field, n);
        for c in 0..pw.matrix.cols() {
            span.insert(&pw.matrix.column(c));
        }
        let mut label_owner: BTreeMap<usize, usize> = BTreeMap::new();
        let alive: Vec<usize> = (0..classes.len())
            .filter(|&l| classes[l].death.is_none())
            .collect();
        for l in alive {
            let w = dense(&sparse_restrict(&classes[l].rep, tgt, t), &pw.target);
            match span.express(&w) {
                Some(combo) => {
                    if sample.kind != SampleKind::Endpoint {
                        return Err(Error::internal(format!(
                            "cokernel class dies at interior sample {t}"
                        )));
                    }
                    let birth_t = grid.samples[classes[l].birth].coord.clone();
                    let mut rep = classes[l].rep.clone();
                    for (&label, &k) in &label_owner {
                        let c = &combo[label];
                        if c.is_zero() {
                            continue;
                        }
                        let older = sparse_restrict(&classes[k].rep, tgt, &birth_t);
                        for (i, x) in older {
                            let cur = rep.get(&i).cloned().unwrap_or_else(Rational::zero);
                            let nx = field.sub(&cur, &field.mul(c, &x));
                            if nx.is_zero() {
                                rep.remove(&i);
                            } else {
                                rep.insert(i, nx);
                            }
                        }
                    }
                    classes[l].rep = rep;
                    classes[l].death = Some(ti);
                }
                None => {
                    let label = span.insert(&w).expect("independent class");
                    label_owner.insert(label, l);
                }
            }
        }
        for (pos, &j) in pw.target.iter().enumerate() {
            let mut e = vec![Rational::zero(); n];
            e[pos] = field.one();
            if let Some(label) = span.insert(&e) {
                if sample.kind != SampleKind::Endpoint {
                    return Err(Error::internal(format!(
                        "cokernel class born at interior sample {t}"
                    )));
                }
                label_owner.insert(label, classes.len());
                classes.push(Class {
                    birth: ti,
                    rep: BTreeMap::from([(j, field.one())]),
                    death: None,
                });
            }
        }
    }

    let summands = classes
        .iter()
        .map(|c| {
            let start = grid.samples[c.birth].coord.clone();
            let end = match c.death {
                Some(d) => ExtCoord::Finite(grid.samples[d].coord.clone()),
                None => ExtCoord::PlusInfinity,
            };
            FpInterval::new(start, end)
        })
        .collect::<Result<Vec<_>>>()?;
    let c_mod = FpModule::new(summands);

    // coefficients of each target generator, read at its birth
    let mut entries = Vec::new();
    for (j, s) in tgt.summands.iter().enumerate() {
        let t = &s.start;
        let ti = grid
            .samples
            .iter()
            .position(|x| x.coord == *t)
            .ok_or_else(|| Error::internal("target start missing from grid"))?;
        let pw_target = tgt.alive_at(t);
        let mut span = SpanBasis::new(field, pw_target.len());
        let mut owners = Vec::new();
        for (l, c) in classes.iter().enumerate() {
            let alive = c.birth <= ti && c.death.is_none_or(|d| d > ti);
            if alive {
                let w = dense(&sparse_restrict(&c.rep, tgt, t), &pw_target);
                span.insert(&w)
                    .ok_or_else(|| Error::internal("cokernel representatives dependent"))?;
                owners.push(l);
            }
        }
        let pw = f.pointwise(t);
        for c in 0..pw.matrix.cols() {
            span.insert(&pw.matrix.column(c));
        }
        let pos = pw_target.iter().position(|&x| x == j).expect("alive at start");
        let mut e = vec![Rational::zero(); pw_target.len()];
        e[pos] = field.one();
        let combo = span
            .express(&e)
            .ok_or_else(|| Error::internal("target generator outside span"))?;
        for (label, &l) in owners.iter().enumerate() {
            if !combo[label].is_zero() {
                entries.push((j, l, combo[label].clone()));
            }
        }
    }
    let pi = FpMorphism::new(field, tgt.clone(), c_mod, entries)
        .map_err(|e| Error::internal(format!("cokernel projection invalid: {e}")))?;
    let (c, pi) = into_canonical_target(pi);
    let lifted = grid.lift(&decompose(&field, &sample_cokernel(f, grid)?)?)?;
    agree("cokernel", &c, &lifted)?;
    Ok((c, pi))
}

fn alive_restriction(m: &FpModule, from: &Coord, to: &Coord) -> Matrix {
    let a = m.alive_at(from);
    let b = m.alive_at(to);
    let mut out = Matrix::zeros(b.len(), a.len());
    for (c, i) in a.iter().enumerate() {
        if let Some(r) = b.iter().position(|j| j == i) {
            out.set(r, c, num_traits::One::one());
        }
    }
    out
}

/// The module sampled on a grid, as a chain module.
pub fn sample_module(m: &FpModule, grid: &SampleGrid) -> Result<ChainModule> {
    let coords: Vec<&Coord> = grid.coords().collect();
    if coords.is_empty() {
        return ChainModule::zero(1);
    }
    let dims = coords.iter().map(|t| m.dim_at(t)).collect();
    let maps = coords
        .windows(2)
        .map(|w| alive_restriction(m, w[0], w[1]))
        .collect();
    ChainModule::new(dims, maps)
}

/// Pointwise kernels of `f` on the grid, with the induced structure maps.
pub fn sample_kernel(f: &FpMorphism, grid: &SampleGrid) -> Result<ChainModule> {
    let field = f.field;
    let coords: Vec<&Coord> = grid.coords().collect();
    if coords.is_empty() {
        return ChainModule::zero(1);
    }
    let bases: Vec<Vec<Vector>> = coords
        .iter()
        .map(|t| f.pointwise(t).matrix.nullspace(&field))
        .collect();
    let mut maps = Vec::new();
    for k in 0..coords.len() - 1 {
        let step = alive_restriction(&f.source, coords[k], coords[k + 1]);
        let n = f.source.dim_at(coords[k + 1]);
        let mut span = SpanBasis::new(field, n);
        for b in &bases[k + 1] {
            span.insert(b);
        }
        let mut m = Matrix::zeros(bases[k + 1].len(), bases[k].len());
        for (c, v) in bases[k].iter().enumerate() {
            let image = step.apply(&field, v);
            let coeffs = span
                .express(&image)
                .ok_or_else(|| Error::internal("kernel not preserved by structure map"))?;
            for (r, x) in coeffs.into_iter().enumerate() {
                m.set(r, c, x);
            }
        }
        maps.push(m);
    }
    ChainModule::new(bases.iter().map(Vec::len).collect(), maps)
}

/// Pointwise cokernels of `f` on the grid, with the induced structure maps.
pub fn sample_cokernel(f: &FpMorphism, grid: &SampleGrid) -> Result<ChainModule> {
    let field = f.field;
    let coords: Vec<&Coord> = grid.coords().collect();
    if coords.is_empty() {
        return ChainModule::zero(1);
    }
    // per sample: span of the image followed by complement representatives
    struct Quot {
        span: SpanBasis,
        image_labels: usize,
        reps: Vec<Vector>,
    }
    let quots: Vec<Quot> = coords
        .iter()
        .map(|t| {
            let pw = f.pointwise(t);
            let n = pw.target.len();
            let mut span = SpanBasis::new(field, n);
            for c in 0..pw.matrix.cols() {
                span.insert(&pw.matrix.column(c));
            }
            let image_labels = span.rank();
            let mut reps = Vec::new();
            for pos in 0..n {
                let mut e = vec![Rational::zero(); n];
                e[pos] = field.one();
                if span.insert(&e).is_some() {
                    reps.push(e);
                }
            }
            Quot {
                span,
                image_labels,
                reps,
            }
        })
        .collect();
    let mut maps = Vec::new();
    for k in 0..coords.len() - 1 {
        let step = alive_restriction(&f.target, coords[k], coords[k + 1]);
        let next = &quots[k + 1];
        let mut m = Matrix::zeros(next.reps.len(), quots[k].reps.len());
        for (c, v) in quots[k].reps.iter().enumerate() {
            let image = step.apply(&field, v);
            let coeffs = next
                .span
                .express(&image)
                .ok_or_else(|| Error::internal("quotient span incomplete"))?;
            for r in 0..next.reps.len() {
                m.set(r, c, coeffs[next.image_labels + r].clone());
            }
        }
        maps.push(m);
    }
    ChainModule::new(quots.iter().map(|q| q.reps.len()).collect(), maps)
}

/// An element of a projective module: one scalar per ambient summand,
/// living at `position`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub position: Coord,
    pub coeffs: Vec<Rational>,
}

impl Generator {
    pub fn new(position: impl Into<Coord>, coeffs: Vec<Rational>) -> Self {
        Generator {
            position: position.into(),
            coeffs,
        }
    }
}

fn check_generators(ambient: &FpModule, gens: &[Generator]) -> Result<()> {
    if !ambient.is_projective() {
        return Err(Error::domain("ambient module is not projective"));
    }
    for (m, g) in gens.iter().enumerate() {
        if g.coeffs.len() != ambient.len() {
            return Err(Error::domain(format!(
                "generator {m} has {} coefficients for {} summands",
                g.coeffs.len(),
                ambient.len()
            )));
        }
        for (i, c) in g.coeffs.iter().enumerate() {
            if !c.is_zero() && !ambient.summands[i].alive_at(&g.position) {
                return Err(Error::domain(format!(
                    "generator {m} uses summand {i}, which is not alive at {}",
                    g.position
                )));
            }
        }
    }
    Ok(())
}

/// Dimension at `t` of the submodule generated by `gens`.
pub fn generated_dim_at(field: &ScalarField, ambient: &FpModule, gens: &[&Generator], t: &Coord) -> Result<usize> {
    let cols: Vec<&Generator> = gens.iter().copied().filter(|g| g.position <= *t).collect();
    let mut m = Matrix::zeros(ambient.len(), cols.len());
    for (c, g) in cols.iter().enumerate() {
        for (r, x) in g.coeffs.iter().enumerate() {
            m.set(r, c, field.reduce(x)?);
        }
    }
    Ok(m.rank(field))
}

/// Drops redundant generators of a submodule of a projective module.
///
/// While the generators satisfy a linear relation, the generator of largest
/// position among those with nonzero coefficient is deleted (largest index on
/// ties). Returns the retained indices in increasing order.
pub fn reduce_generators(
    field: &ScalarField,
    ambient: &FpModule,
    gens: &[Generator],
) -> Result<Vec<usize>> {
    check_generators(ambient, gens)?;
    let mut keep: Vec<usize> = (0..gens.len()).collect();
    loop {
        let mut m = Matrix::zeros(ambient.len(), keep.len());
        for (c, &g) in keep.iter().enumerate() {
            for (r, x) in gens[g].coeffs.iter().enumerate() {
                m.set(r, c, field.reduce(x)?);
            }
        }
        let Some(relation) = m.nullspace(field).into_iter().next() else {
            return Ok(keep);
        };
        let victim = relation
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.is_zero())
            .map(|(c, _)| c)
            .max_by(|&a, &b| {
                gens[keep[a]]
                    .position
                    .cmp(&gens[keep[b]].position)
                    .then(keep[a].cmp(&keep[b]))
            })
            .expect("relation is nontrivial");
        keep.remove(victim);
    }
}

/// Flat over a field means every structure map is injective.
pub fn is_flat(field: &ScalarField, m: &ChainModule) -> Result<bool> {
    for map in m.maps() {
        if !map.reduced(field)?.has_full_column_rank(field) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn iv(a: i64, b: i64) -> FpInterval {
        FpInterval::new(a, b).unwrap()
    }

    fn rat() -> ScalarField {
        ScalarField::ExactRationals
    }

    #[test]
    fn hom_dim_examples() {
        assert_eq!(hom_dim(&iv(1, 3), &iv(0, 2)), 1);
        assert_eq!(hom_dim(&iv(0, 2), &iv(1, 3)), 0);
        assert_eq!(hom_dim(&FpInterval::projective(0), &FpInterval::projective(0)), 1);
        assert!(FpInterval::new(2, 2).is_err());
    }

    #[test]
    fn hom_to_injective_examples() {
        assert_eq!(hom_to_injective(&iv(0, 1), &DPoint::principal(0)), 1);
        assert_eq!(hom_to_injective(&iv(0, 1), &DPoint::principal(1)), 0);
        assert_eq!(hom_to_injective(&FpInterval::projective(0), &DPoint::top()), 1);
        assert_eq!(hom_to_injective(&iv(0, 1), &DPoint::strict(1)), 1);
        assert_eq!(hom_to_injective(&iv(0, 1), &DPoint::strict(0)), 0);
    }

    #[test]
    fn compose_examples() {
        let f = FpMorphism::new(
            rat(),
            FpModule::new(vec![iv(1, 3)]),
            FpModule::new(vec![iv(0, 2)]),
            [(0, 0, q(2))],
        )
        .unwrap();
        let g = FpMorphism::new(
            rat(),
            FpModule::new(vec![iv(2, 4)]),
            FpModule::new(vec![iv(1, 3)]),
            [(0, 0, q(3))],
        )
        .unwrap();
        assert!(compose(&f, &g).unwrap().is_zero());

        let f = FpMorphism::new(
            rat(),
            FpModule::new(vec![FpInterval::projective(1)]),
            FpModule::new(vec![FpInterval::projective(0)]),
            [(0, 0, q(2))],
        )
        .unwrap();
        let g = FpMorphism::new(
            rat(),
            FpModule::new(vec![FpInterval::projective(2)]),
            FpModule::new(vec![FpInterval::projective(1)]),
            [(0, 0, q(3))],
        )
        .unwrap();
        let h = compose(&f, &g).unwrap();
        assert_eq!(h.entry(0, 0), q(6));
        let id = FpMorphism::identity(rat(), f.target().clone());
        assert_eq!(compose(&id, &f).unwrap(), f);
        assert!(compose(&g, &f).is_err());
    }

    #[test]
    fn illegal_entries_rejected() {
        let r = FpMorphism::new(
            rat(),
            FpModule::new(vec![iv(0, 2)]),
            FpModule::new(vec![iv(1, 3)]),
            [(0, 0, q(1))],
        );
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    fn two_to_one() -> FpMorphism {
        FpMorphism::new(
            rat(),
            FpModule::new(vec![iv(1, 3), iv(2, 4)]),
            FpModule::new(vec![iv(0, 3)]),
            [(0, 0, q(1)), (1, 0, q(1))],
        )
        .unwrap()
    }

    #[test]
    fn kernel_examples() {
        let (k, iota) = kernel(&two_to_one()).unwrap();
        assert_eq!(k, FpModule::new(vec![iv(2, 4)]));
        let (a, b) = (iota.entry(0, 0), iota.entry(0, 1));
        assert!(!a.is_zero() && a == -b);

        let f = FpMorphism::new(
            rat(),
            FpModule::new(vec![iv(0, 2)]),
            FpModule::new(vec![iv(0, 1)]),
            [(0, 0, q(1))],
        )
        .unwrap();
        assert_eq!(kernel(&f).unwrap().0, FpModule::new(vec![iv(1, 2)]));

        let m = FpModule::new(vec![iv(0, 2), FpInterval::projective(1)]);
        let z = FpMorphism::zero(rat(), m.clone(), FpModule::new(vec![iv(0, 5)]));
        let (k, iota) = kernel(&z).unwrap();
        assert_eq!(k, m);
        assert_eq!(iota, FpMorphism::identity(rat(), m));
    }

    #[test]
    fn cokernel_examples() {
        let (c, _) = cokernel(&two_to_one()).unwrap();
        assert_eq!(c, FpModule::new(vec![iv(0, 1)]));

        let m = FpModule::new(vec![iv(0, 2), FpInterval::projective(1)]);
        let (c, _) = cokernel(&FpMorphism::identity(rat(), m.clone())).unwrap();
        assert!(c.is_empty());

        let z = FpMorphism::zero(rat(), FpModule::new(vec![iv(0, 5)]), m.clone());
        let (c, pi) = cokernel(&z).unwrap();
        assert_eq!(c, m);
        assert_eq!(pi, FpMorphism::identity(rat(), m));
    }

    #[test]
    fn generator_examples() {
        let amb = FpModule::new(vec![FpInterval::projective(0), FpInterval::projective(1)]);
        let gens = vec![
            Generator::new(0, vec![q(1), q(0)]),
            Generator::new(1, vec![q(1), q(1)]),
            Generator::new(1, vec![q(2), q(2)]),
        ];
        assert_eq!(reduce_generators(&rat(), &amb, &gens).unwrap(), vec![0, 1]);
        assert_eq!(reduce_generators(&rat(), &amb, &gens[1..2]).unwrap(), vec![0]);

        let amb1 = FpModule::new(vec![FpInterval::projective(0)]);
        let gens = vec![Generator::new(0, vec![q(1)]), Generator::new(1, vec![q(1)])];
        assert_eq!(reduce_generators(&rat(), &amb1, &gens).unwrap(), vec![0]);

        let bad = vec![Generator::new(0, vec![q(0), q(1)])];
        assert!(reduce_generators(&rat(), &amb, &bad).is_err());
        let not_proj = FpModule::new(vec![iv(0, 1)]);
        assert!(reduce_generators(&rat(), &not_proj, &[]).is_err());
    }

    #[test]
    fn flatness_examples() {
        let f = rat();
        let m = ChainModule::new(vec![1, 1], vec![Matrix::from_i64(&[&[1]], 1)]).unwrap();
        assert!(is_flat(&f, &m).unwrap());
        let m = ChainModule::new(vec![1, 1], vec![Matrix::from_i64(&[&[0]], 1)]).unwrap();
        assert!(!is_flat(&f, &m).unwrap());
        let m = ChainModule::new(vec![0, 1], vec![Matrix::zeros(1, 0)]).unwrap();
        assert!(is_flat(&f, &m).unwrap());
    }

    #[test]
    fn canonical_order_reindexes_entries() {
        let f = FpMorphism::new(
            rat(),
            FpModule::new(vec![iv(2, 4), iv(1, 3)]),
            FpModule::new(vec![iv(0, 3)]),
            [(0, 0, q(5)), (1, 0, q(7))],
        )
        .unwrap();
        let c = f.canonicalize();
        assert!(c.source().is_canonical());
        assert_eq!(c.entry(0, 0), q(7));
        assert_eq!(c.entry(1, 0), q(5));
    }
}
