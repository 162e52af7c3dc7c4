//! Subsets of the spectrum, identified with the double line `D` of ideals.
//!
//! A [`SymbolicSet`] is a finite union of `D`-intervals. Internally each
//! interval is a pair of cuts of `D`; a cut sits either just before or just
//! after a point. The cut after `p` equals the cut before the successor of
//! `p` when one exists, and cuts are always stored in the "before" form in
//! that case, so equal cuts compare equal.

use std::cmp::Ordering;
use std::fmt;

use crate::coord::{Coord, ExtCoord, Rational};
use crate::error::{Error, Result};
use crate::order::{DPoint, Flavor, IndexModel};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DEndpoint {
    /// Below every ideal; only valid as a lower endpoint.
    BelowAll,
    Included(DPoint),
    Excluded(DPoint),
}

impl DEndpoint {
    pub fn point(&self) -> Option<&DPoint> {
        match self {
            DEndpoint::BelowAll => None,
            DEndpoint::Included(p) | DEndpoint::Excluded(p) => Some(p),
        }
    }

    pub fn included(&self) -> bool {
        matches!(self, DEndpoint::Included(_))
    }
}

impl fmt::Display for DEndpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DEndpoint::BelowAll => write!(f, "-inf"),
            DEndpoint::Included(p) | DEndpoint::Excluded(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DInterval {
    pub lo: DEndpoint,
    pub hi: DEndpoint,
}

impl DInterval {
    pub fn new(lo: DEndpoint, hi: DEndpoint) -> Self {
        DInterval { lo, hi }
    }

    pub fn closed(p: DPoint, q: DPoint) -> Self {
        DInterval::new(DEndpoint::Included(p), DEndpoint::Included(q))
    }

    pub fn point(p: DPoint) -> Self {
        DInterval::closed(p.clone(), p)
    }

    /// `(BelowAll, p]`.
    pub fn up_to(p: DPoint) -> Self {
        DInterval::new(DEndpoint::BelowAll, DEndpoint::Included(p))
    }

    /// `[p, top]`.
    pub fn from(p: DPoint) -> Self {
        DInterval::closed(p, DPoint::top())
    }
}

impl fmt::Display for DInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.lo.included() { "[" } else { "(" };
        let r = if self.hi.included() { "]" } else { ")" };
        write!(f, "{l}{}, {}{r}", self.lo, self.hi)
    }
}

/// A finite union of pairwise separated `D`-intervals in increasing order.
///
/// Values built through [`Spectrum`] are canonical: two sets are equal as
/// subsets of `D` exactly when their component lists are equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SymbolicSet {
    components: Vec<DInterval>,
}

impl SymbolicSet {
    pub fn components(&self) -> &[DInterval] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

impl fmt::Display for SymbolicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "{{}}");
        }
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" u "))
    }
}

/// The ideals `I` with `Hom(k_[a,b), k_I) != 0`, i.e. `[(a,P), (b,S)]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    a: Coord,
    b: ExtCoord,
}

impl Window {
    pub fn new(a: impl Into<Coord>, b: impl Into<ExtCoord>) -> Result<Self> {
        let a = a.into();
        let b = b.into();
        if ExtCoord::Finite(a.clone()) >= b {
            return Err(Error::domain(format!("window needs {a} < {b}")));
        }
        Ok(Window { a, b })
    }

    pub fn a(&self) -> &Coord {
        &self.a
    }

    pub fn b(&self) -> &ExtCoord {
        &self.b
    }

    pub fn interval(&self) -> DInterval {
        let hi = match &self.b {
            ExtCoord::Finite(b) => DPoint::strict(b.clone()),
            ExtCoord::PlusInfinity => DPoint::top(),
        };
        DInterval::closed(DPoint::principal(self.a.clone()), hi)
    }
}

/// One complementary gap of a set, with the union of the windows inside it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RegionGap {
    pub gap: DInterval,
    pub covered: Option<DInterval>,
}

/// A Serre subcategory of fp modules generated by intervals, described by the
/// regions of `D` that its windows may occupy.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SerreRegion {
    gaps: Vec<RegionGap>,
}

impl SerreRegion {
    pub fn new(gaps: Vec<RegionGap>) -> Self {
        SerreRegion { gaps }
    }

    pub fn gaps(&self) -> &[RegionGap] {
        &self.gaps
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClosureStrategy {
    DoubleOrthogonal,
    SupInfSaturation,
    OrderTopology,
}

impl ClosureStrategy {
    pub const ALL: [ClosureStrategy; 3] = [
        ClosureStrategy::DoubleOrthogonal,
        ClosureStrategy::SupInfSaturation,
        ClosureStrategy::OrderTopology,
    ];
}

/// A position between points of `D`. `point = None` is the bottom cut.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Cut {
    point: Option<DPoint>,
    after: bool,
}

impl Cut {
    fn bottom() -> Cut {
        Cut {
            point: None,
            after: false,
        }
    }

    fn end() -> Cut {
        Cut::after(DPoint::top())
    }

    fn before(p: DPoint) -> Cut {
        Cut {
            point: Some(p),
            after: false,
        }
    }

    fn after(p: DPoint) -> Cut {
        Cut {
            point: Some(p),
            after: true,
        }
    }
}

type Piece = (Cut, Cut);

/// Set operations and topology on the spectrum of a dense index set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Spectrum {
    model: IndexModel,
}

impl Spectrum {
    pub fn new(model: IndexModel) -> Result<Self> {
        if !model.is_dense() {
            return Err(Error::domain(
                "spectrum sets are supported on dense index models only",
            ));
        }
        Ok(Spectrum { model })
    }

    pub fn model(&self) -> &IndexModel {
        &self.model
    }

    fn canon(&self, c: Cut) -> Cut {
        if c.after {
            if let Some(s) = c.point.as_ref().and_then(|p| self.model.successor(p)) {
                return Cut::before(s);
            }
        }
        c
    }

    fn lower_cut(&self, e: &DEndpoint) -> Cut {
        match e {
            DEndpoint::BelowAll => Cut::bottom(),
            DEndpoint::Included(p) => Cut::before(p.clone()),
            DEndpoint::Excluded(p) => self.canon(Cut::after(p.clone())),
        }
    }

    fn upper_cut(&self, e: &DEndpoint) -> Cut {
        match e {
            DEndpoint::BelowAll => Cut::bottom(),
            DEndpoint::Included(p) => self.canon(Cut::after(p.clone())),
            DEndpoint::Excluded(p) => Cut::before(p.clone()),
        }
    }

    fn lower_endpoint(&self, c: &Cut) -> DEndpoint {
        match &c.point {
            None => DEndpoint::BelowAll,
            Some(p) if c.after => DEndpoint::Excluded(p.clone()),
            Some(p) => DEndpoint::Included(p.clone()),
        }
    }

    fn upper_endpoint(&self, c: &Cut) -> DEndpoint {
        match &c.point {
            None => unreachable!("nonempty piece ends above the bottom cut"),
            Some(p) if c.after => DEndpoint::Included(p.clone()),
            Some(p) => match self.model.predecessor(p) {
                Some(r) => DEndpoint::Included(r),
                None => DEndpoint::Excluded(p.clone()),
            },
        }
    }

    fn validate(&self, iv: &DInterval) -> Result<()> {
        if iv.hi == DEndpoint::BelowAll {
            return Err(Error::domain("BelowAll is only a lower endpoint"));
        }
        for p in [iv.lo.point(), iv.hi.point()].into_iter().flatten() {
            self.model.validate_point(p)?;
        }
        Ok(())
    }

    fn pieces(&self, s: &SymbolicSet) -> Vec<Piece> {
        s.components
            .iter()
            .map(|c| (self.lower_cut(&c.lo), self.upper_cut(&c.hi)))
            .collect()
    }

    fn assemble(&self, mut pieces: Vec<Piece>) -> SymbolicSet {
        pieces.retain(|(lo, hi)| lo < hi);
        pieces.sort();
        let mut merged: Vec<Piece> = Vec::new();
        for (lo, hi) in pieces {
            match merged.last_mut() {
                Some(last) if lo <= last.1 => {
                    if hi > last.1 {
                        last.1 = hi;
                    }
                }
                _ => merged.push((lo, hi)),
            }
        }
        let components = merged
            .iter()
            .map(|(lo, hi)| DInterval::new(self.lower_endpoint(lo), self.upper_endpoint(hi)))
            .collect();
        SymbolicSet { components }
    }

    /// Canonical union of arbitrary (possibly empty or overlapping) intervals.
    pub fn set(&self, intervals: impl IntoIterator<Item = DInterval>) -> Result<SymbolicSet> {
        let mut pieces = Vec::new();
        for iv in intervals {
            self.validate(&iv)?;
            pieces.push((self.lower_cut(&iv.lo), self.upper_cut(&iv.hi)));
        }
        Ok(self.assemble(pieces))
    }

    pub fn empty(&self) -> SymbolicSet {
        SymbolicSet::default()
    }

    pub fn full(&self) -> SymbolicSet {
        self.assemble(vec![(Cut::bottom(), Cut::end())])
    }

    pub fn singleton(&self, p: &DPoint) -> Result<SymbolicSet> {
        self.set([DInterval::point(p.clone())])
    }

    pub fn window(&self, w: &Window) -> Result<SymbolicSet> {
        self.model.check_member(&w.a)?;
        self.model.check_ext_member(&w.b)?;
        self.set([w.interval()])
    }

    pub fn union(&self, a: &SymbolicSet, b: &SymbolicSet) -> SymbolicSet {
        let mut pieces = self.pieces(a);
        pieces.extend(self.pieces(b));
        self.assemble(pieces)
    }

    pub fn complement(&self, a: &SymbolicSet) -> SymbolicSet {
        let mut out = Vec::new();
        let mut prev = Cut::bottom();
        for (lo, hi) in self.pieces(a) {
            out.push((prev, lo));
            prev = hi;
        }
        out.push((prev, Cut::end()));
        self.assemble(out)
    }

    pub fn intersect(&self, a: &SymbolicSet, b: &SymbolicSet) -> SymbolicSet {
        let pb = self.pieces(b);
        let mut out = Vec::new();
        for (alo, ahi) in self.pieces(a) {
            for (blo, bhi) in &pb {
                let lo = alo.clone().max(blo.clone());
                let hi = ahi.clone().min(bhi.clone());
                out.push((lo, hi));
            }
        }
        self.assemble(out)
    }

    pub fn difference(&self, a: &SymbolicSet, b: &SymbolicSet) -> SymbolicSet {
        self.intersect(a, &self.complement(b))
    }

    pub fn is_subset(&self, a: &SymbolicSet, b: &SymbolicSet) -> bool {
        self.difference(a, b).is_empty()
    }

    pub fn member(&self, s: &SymbolicSet, p: &DPoint) -> Result<bool> {
        self.model.validate_point(p)?;
        let before = Cut::before(p.clone());
        let after = self.canon(Cut::after(p.clone()));
        Ok(self
            .pieces(s)
            .iter()
            .any(|(lo, hi)| *lo <= before && after <= *hi))
    }

    /// Windows contained in the gap `[lo, hi)` of cuts, as a single piece.
    fn covered_piece(&self, lo: &Cut, hi: &Cut) -> Option<Piece> {
        let c_lo = match &lo.point {
            None => Cut::bottom(),
            Some(p) if lo.after => Cut::after(p.clone()),
            Some(p) => match (p.coord(), p.flavor()) {
                (ExtCoord::PlusInfinity, _) => return None,
                (_, Flavor::Principal) => Cut::before(p.clone()),
                (_, Flavor::Strict) => self.canon(Cut::after(p.clone())),
            },
        };
        let c_hi = match &hi.point {
            None => return None,
            Some(q) if hi.after => match (q.coord(), q.flavor()) {
                (ExtCoord::PlusInfinity, _) => Cut::end(),
                (ExtCoord::Finite(x), Flavor::Principal) => {
                    self.canon(Cut::after(DPoint::strict(x.clone())))
                }
                (ExtCoord::Finite(x), Flavor::Strict) => {
                    if self.model.is_member(x) {
                        self.canon(Cut::after(q.clone()))
                    } else {
                        Cut::before(q.clone())
                    }
                }
            },
            Some(q) => Cut::before(q.clone()),
        };
        (c_lo < c_hi).then_some((c_lo, c_hi))
    }

    /// `{[a,b) : Hom(k_[a,b), k_I) = 0 for all I in u}`.
    pub fn left_orthogonal(&self, u: &SymbolicSet) -> SerreRegion {
        let gaps = self
            .pieces(&self.complement(u))
            .into_iter()
            .map(|(lo, hi)| {
                let covered = self.covered_piece(&lo, &hi).map(|(clo, chi)| {
                    DInterval::new(self.lower_endpoint(&clo), self.upper_endpoint(&chi))
                });
                RegionGap {
                    gap: DInterval::new(self.lower_endpoint(&lo), self.upper_endpoint(&hi)),
                    covered,
                }
            })
            .collect();
        SerreRegion { gaps }
    }

    /// Union of all windows admitted by the region.
    pub fn covered(&self, r: &SerreRegion) -> Result<SymbolicSet> {
        self.set(r.gaps.iter().filter_map(|g| g.covered.clone()))
    }

    /// `{I : Hom(k_[a,b), k_I) = 0 for all [a,b) in r}`.
    pub fn right_orthogonal(&self, r: &SerreRegion) -> Result<SymbolicSet> {
        Ok(self.complement(&self.covered(r)?))
    }

    pub fn region_contains(&self, r: &SerreRegion, w: &Window) -> Result<bool> {
        let wset = self.window(w)?;
        for g in &r.gaps {
            if let Some(c) = &g.covered {
                if self.is_subset(&wset, &self.set([c.clone()])?) {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    pub fn closure(&self, u: &SymbolicSet, strategy: ClosureStrategy) -> SymbolicSet {
        match strategy {
            ClosureStrategy::DoubleOrthogonal => self
                .right_orthogonal(&self.left_orthogonal(u))
                .expect("regions built from valid sets"),
            ClosureStrategy::SupInfSaturation => self.saturate(u),
            ClosureStrategy::OrderTopology => self.order_closure(u),
        }
    }

    /// Runs every strategy and fails if they disagree.
    pub fn closure_checked(&self, u: &SymbolicSet) -> Result<SymbolicSet> {
        let first = self.closure(u, ClosureStrategy::ALL[0]);
        for s in &ClosureStrategy::ALL[1..] {
            let other = self.closure(u, *s);
            if other != first {
                return Err(Error::internal(format!(
                    "closure strategies disagree on {u}: {first} vs {other} ({s:?})"
                )));
            }
        }
        Ok(first)
    }

    pub fn is_closed(&self, u: &SymbolicSet) -> bool {
        self.closure(u, ClosureStrategy::DoubleOrthogonal) == *u
    }

    pub fn is_open(&self, u: &SymbolicSet) -> bool {
        self.is_closed(&self.complement(u))
    }

    /// Adds suprema and infima of the components until nothing changes.
    ///
    /// The union of the ideals strictly below an excluded upper endpoint `h`
    /// is `h` with its maximum removed; the intersection of the ideals
    /// strictly above an excluded lower endpoint `l` is `l` together with the
    /// least element outside it.
    fn saturate(&self, u: &SymbolicSet) -> SymbolicSet {
        let mut cur = u.clone();
        loop {
            let mut extra = Vec::new();
            for c in &cur.components {
                if let DEndpoint::Excluded(h) = &c.hi {
                    extra.push(self.model.without_max(h));
                }
                if let DEndpoint::Excluded(l) = &c.lo {
                    extra.push(self.model.with_least_outside(l));
                }
            }
            let mut next = cur.clone();
            for p in extra {
                if !self.member(&next, &p).expect("endpoints are valid") {
                    next = self.union(&next, &self.singleton(&p).expect("valid point"));
                }
            }
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// Closure in the order topology: a boundary point is added when every
    /// open ray around it meets the set.
    fn order_closure(&self, u: &SymbolicSet) -> SymbolicSet {
        let mut candidates = Vec::new();
        for c in &u.components {
            for e in [&c.lo, &c.hi] {
                if let DEndpoint::Excluded(p) = e {
                    candidates.push(p.clone());
                }
            }
        }
        let mut out = u.clone();
        for p in candidates {
            let below = self
                .set([DInterval::new(DEndpoint::BelowAll, DEndpoint::Excluded(p.clone()))])
                .expect("valid ray");
            let above = self
                .set([DInterval::new(
                    DEndpoint::Excluded(p.clone()),
                    DEndpoint::Included(DPoint::top()),
                )])
                .expect("valid ray");
            let from_below = self.model.predecessor(&p).is_none()
                && self
                    .intersect(u, &below)
                    .components
                    .last()
                    .is_some_and(|c| c.hi == DEndpoint::Excluded(p.clone()));
            let from_above = self.model.successor(&p).is_none()
                && self
                    .intersect(u, &above)
                    .components
                    .first()
                    .is_some_and(|c| c.lo == DEndpoint::Excluded(p.clone()));
            if from_below || from_above {
                out = self.union(&out, &self.singleton(&p).expect("valid point"));
            }
        }
        out
    }

    /// Disjoint open neighbourhoods of two distinct points, each a window.
    pub fn separate(&self, p: &DPoint, q: &DPoint) -> Result<(SymbolicSet, SymbolicSet)> {
        self.model.validate_point(p)?;
        self.model.validate_point(q)?;
        match p.cmp(q) {
            Ordering::Equal => Err(Error::domain(format!("cannot separate {p} from itself"))),
            Ordering::Greater => {
                let (b, a) = self.separate(q, p)?;
                Ok((a, b))
            }
            Ordering::Less => {
                let (w1, w2) = self.separating_windows(p, q)?;
                Ok((self.window(&w1)?, self.window(&w2)?))
            }
        }
    }

    fn separating_windows(&self, p: &DPoint, q: &DPoint) -> Result<(Window, Window)> {
        let one = Rational::from_integer(1.into());
        let x = p.finite_coord().expect("p lies below q");
        let member = self.model.is_member(x);
        let a1 = match p.flavor() {
            Flavor::Principal => x.clone(),
            Flavor::Strict if x.is_rational() => x.sub_rational(&one),
            Flavor::Strict => Coord::rational(Rational::from_integer(x.floor())),
        };
        let b1 = if p.flavor() == Flavor::Strict && member {
            x.clone()
        } else {
            let step = if x.is_rational() {
                x.add_rational(&one)
            } else {
                Coord::rational(Rational::from_integer(x.floor() + 1))
            };
            if DPoint::strict(step.clone()) < *q {
                step
            } else {
                let y = q.finite_coord().expect("q below the top");
                Coord::rational(Coord::rational_between(x, y))
            }
        };
        let a2 = match (q.coord(), q.flavor()) {
            (ExtCoord::PlusInfinity, _) => b1.add_rational(&one),
            (ExtCoord::Finite(y), Flavor::Principal) => y.clone(),
            (ExtCoord::Finite(_), Flavor::Strict) => b1.clone(),
        };
        Ok((
            Window::new(a1, b1)?,
            Window::new(a2, ExtCoord::PlusInfinity)?,
        ))
    }

    /// Member `n <= 0` of the clopen cover `[(n-1,P), (n,S)]`, or for `None`
    /// the last member `[(0,P), top]`.
    pub fn cover_member(&self, n: Option<i64>) -> SymbolicSet {
        let w = match n {
            Some(n) => Window::new(n - 1, n),
            None => Window::new(0, ExtCoord::PlusInfinity),
        }
        .expect("nonempty window");
        self.window(&w).expect("integers are members")
    }
}
