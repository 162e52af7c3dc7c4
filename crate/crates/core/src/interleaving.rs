//! Shifts, interleavings and the interleaving distance on ideal modules.
//!
//! `M[eps](r) = M(r + eps)`, so shifting moves interval data DOWN by `eps`.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::coord::{Coord, Rational};
use crate::error::{Error, Result};
use crate::fp::FpInterval;
use crate::order::{DPoint, IndexModel};
use crate::spectrum::{DEndpoint, DInterval, Spectrum, SymbolicSet};

/// A non-negative rational shift amount.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Eps(Rational);

impl Eps {
    pub fn new(q: Rational) -> Result<Self> {
        if q.is_negative() {
            return Err(Error::domain(format!("negative shift {q}")));
        }
        Ok(Eps(q))
    }

    pub fn zero() -> Self {
        Eps(Rational::zero())
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtDistance {
    Finite(Coord),
    Infinite,
}

impl fmt::Display for ExtDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtDistance::Finite(c) => write!(f, "{c}"),
            ExtDistance::Infinite => write!(f, "inf"),
        }
    }
}

pub fn shift_interval(x: &FpInterval, eps: &Eps) -> FpInterval {
    FpInterval::new(x.start().sub_rational(&eps.0), x.end().sub_rational(&eps.0))
        .expect("translation keeps the interval nonempty")
}

pub fn shift_point(p: &DPoint, eps: &Eps) -> DPoint {
    DPoint::new(p.coord().sub_rational(&eps.0), p.flavor()).expect("flavor is unchanged")
}

/// Do `k_i` and `k_j` admit an `eps`-interleaving?
///
/// A nonzero map `k_I -> k_J[eps]` exists iff `J - eps` lies inside `I`, and
/// then the composites are the (nonzero) transition maps after rescaling.
pub fn is_interleaved(i: &DPoint, j: &DPoint, eps: &Eps) -> bool {
    shift_point(j, eps) <= *i && shift_point(i, eps) <= *j
}

/// `|x - y|` of the coordinates; flavors play no role.
pub fn distance(i: &DPoint, j: &DPoint) -> Result<ExtDistance> {
    match (i.finite_coord(), j.finite_coord()) {
        (None, None) => Ok(ExtDistance::Finite(Coord::int(0))),
        (None, Some(_)) | (Some(_), None) => Ok(ExtDistance::Infinite),
        (Some(x), Some(y)) => x
            .checked_sub(y)
            .map(|d| ExtDistance::Finite(d.abs()))
            .ok_or_else(|| Error::domain(format!("{x} - {y} leaves the coordinate field"))),
    }
}

/// The open interleaving ball of radius `eps` around `p`.
pub fn ball(model: &IndexModel, p: &DPoint, eps: &Eps) -> Result<SymbolicSet> {
    let spectrum = Spectrum::new(*model)?;
    model.validate_point(p)?;
    if eps.0.is_zero() {
        return Err(Error::domain("ball radius must be positive"));
    }
    let Some(x) = p.finite_coord() else {
        return spectrum.singleton(p);
    };
    let lo = x.sub_rational(&eps.0);
    let lo = if model.is_member(&lo) {
        DPoint::principal(lo)
    } else {
        DPoint::strict(lo)
    };
    let hi = DPoint::strict(x.add_rational(&eps.0));
    spectrum.set([DInterval::new(DEndpoint::Excluded(lo), DEndpoint::Excluded(hi))])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bracket {
    /// The infimum lies in `[lower, upper]`.
    Finite { lower: Rational, upper: Rational },
    /// No interleaving up to the cutoff.
    Infinite,
}

/// Scans `eps = 0, step, 2 step, ...` with [`is_interleaved`].
///
/// The cutoff is `floor(|x - y|) + 2` when both coordinates are finite and
/// `1` otherwise.
pub fn brute_force_distance(i: &DPoint, j: &DPoint, step: &Rational) -> Result<Bracket> {
    if !step.is_positive() {
        return Err(Error::domain("step must be positive"));
    }
    let cutoff = match (i.finite_coord(), j.finite_coord()) {
        (Some(x), Some(y)) => {
            let d = x
                .checked_sub(y)
                .ok_or_else(|| Error::domain(format!("{x} - {y} leaves the coordinate field")))?;
            Rational::from_integer(d.abs().floor() + 2)
        }
        _ => Rational::from_integer(1.into()),
    };
    let mut eps = Rational::zero();
    let mut prev: Option<Rational> = None;
    while eps <= cutoff {
        if is_interleaved(i, j, &Eps(eps.clone())) {
            let lower = prev.unwrap_or_else(|| eps.clone());
            return Ok(Bracket::Finite { lower, upper: eps });
        }
        prev = Some(eps.clone());
        eps += step;
    }
    Ok(Bracket::Infinite)
}
