//! The index set `T`, its ideals and the double line that parametrizes them.
//!
//! Ideals of `T` are encoded as [`DPoint`]s `(x, flavor)`: `(x, Strict)` is
//! the strict lower set `{t : t < x}`, `(x, Principal)` is `{t : t <= x}`
//! and `(+inf, Strict)` is all of `T`. Inclusion of ideals is the
//! lexicographic order on these pairs.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::coord::{Coord, ExtCoord};
use crate::error::{Error, Result};

/// Which coordinates may appear at all.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoordField {
    RationalsOnly,
    RationalsWithSurds,
}

/// Which admissible coordinates are elements of `T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Membership {
    AllCoords,
    RationalsOnly,
}

/// A computable model of the totally ordered index set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IndexModel {
    /// `{0, 1, ..., length - 1}`.
    FiniteChain { length: u32 },
    /// An unbounded dense line.
    DenseLine {
        field: CoordField,
        membership: Membership,
    },
}

impl Default for IndexModel {
    fn default() -> Self {
        IndexModel::dense()
    }
}

impl IndexModel {
    /// The real line, sampled at rational coordinates.
    pub fn dense() -> Self {
        IndexModel::DenseLine {
            field: CoordField::RationalsOnly,
            membership: Membership::AllCoords,
        }
    }

    /// The rationals, with quadratic surds available as cut positions.
    pub fn dense_surd() -> Self {
        IndexModel::DenseLine {
            field: CoordField::RationalsWithSurds,
            membership: Membership::RationalsOnly,
        }
    }

    pub fn chain(length: u32) -> Result<Self> {
        if length == 0 {
            return Err(Error::domain("finite chain must have positive length"));
        }
        Ok(IndexModel::FiniteChain { length })
    }

    pub fn is_dense(&self) -> bool {
        matches!(self, IndexModel::DenseLine { .. })
    }

    /// Is the coordinate admissible as a cut position?
    pub fn admits(&self, c: &Coord) -> bool {
        match *self {
            IndexModel::FiniteChain { length } => {
                c.is_integer() && !c.rational_part().is_negative() && {
                    let n = c.rational_part().to_integer();
                    n < length.into()
                }
            }
            IndexModel::DenseLine { field, .. } => {
                c.is_rational() || field == CoordField::RationalsWithSurds
            }
        }
    }

    /// Is the coordinate an element of `T`?
    pub fn is_member(&self, c: &Coord) -> bool {
        match *self {
            IndexModel::FiniteChain { .. } => self.admits(c),
            IndexModel::DenseLine { membership, .. } => {
                self.admits(c) && (membership == Membership::AllCoords || c.is_rational())
            }
        }
    }

    pub fn check_member(&self, c: &Coord) -> Result<()> {
        if self.is_member(c) {
            Ok(())
        } else {
            Err(Error::domain(format!("{c} is not an element of T")))
        }
    }

    pub fn check_ext_member(&self, c: &ExtCoord) -> Result<()> {
        match c {
            ExtCoord::Finite(c) => self.check_member(c),
            ExtCoord::PlusInfinity => Ok(()),
        }
    }

    pub fn validate_point(&self, p: &DPoint) -> Result<()> {
        match (&p.coord, p.flavor) {
            (ExtCoord::PlusInfinity, Flavor::Strict) => Ok(()),
            (ExtCoord::PlusInfinity, Flavor::Principal) => {
                Err(Error::domain("the point at infinity has strict flavor only"))
            }
            (ExtCoord::Finite(c), Flavor::Principal) => self.check_member(c),
            (ExtCoord::Finite(c), Flavor::Strict) => {
                if !self.admits(c) {
                    return Err(Error::domain(format!("{c} is not an admissible cut")));
                }
                if let IndexModel::FiniteChain { .. } = self {
                    if c.rational_part().is_zero() {
                        return Err(Error::domain("the strict ideal below the minimum is empty"));
                    }
                }
                Ok(())
            }
        }
    }

    /// Rewrites a point into the unique encoding of its ideal.
    ///
    /// On a dense line every valid point is already unique. On a finite chain
    /// `(i, Strict)` is the principal ideal of `i - 1` and `(+inf, Strict)` is
    /// the principal ideal of the maximum.
    pub fn normalize(&self, p: &DPoint) -> Result<DPoint> {
        self.validate_point(p)?;
        match *self {
            IndexModel::DenseLine { .. } => Ok(p.clone()),
            IndexModel::FiniteChain { length } => match (&p.coord, p.flavor) {
                (_, Flavor::Principal) => Ok(p.clone()),
                (ExtCoord::PlusInfinity, _) => {
                    Ok(DPoint::principal(Coord::int(i64::from(length) - 1)))
                }
                (ExtCoord::Finite(c), Flavor::Strict) => {
                    Ok(DPoint::principal(c.sub_rational(&num_traits::One::one())))
                }
            },
        }
    }

    /// Inclusion order of the ideals denoted by two valid points.
    pub fn cmp_ideals(&self, p: &DPoint, q: &DPoint) -> Result<Ordering> {
        Ok(cmp_d(&self.normalize(p)?, &self.normalize(q)?))
    }

    /// The ideal with its maximum removed (the ideal itself when it has none).
    pub fn without_max(&self, p: &DPoint) -> DPoint {
        match (&p.coord, p.flavor) {
            (ExtCoord::Finite(c), Flavor::Principal) => DPoint::strict(c.clone()),
            _ => p.clone(),
        }
    }

    /// The ideal together with the least element of its complement, if any.
    pub fn with_least_outside(&self, p: &DPoint) -> DPoint {
        match (&p.coord, p.flavor) {
            (ExtCoord::Finite(c), Flavor::Strict) if self.is_member(c) => {
                DPoint::principal(c.clone())
            }
            _ => p.clone(),
        }
    }

    /// The next ideal above `p`, when `p` has an immediate successor.
    pub fn successor(&self, p: &DPoint) -> Option<DPoint> {
        let with = self.with_least_outside(p);
        (with != *p).then_some(with)
    }

    /// The next ideal below `p`, when `p` has an immediate predecessor.
    pub fn predecessor(&self, p: &DPoint) -> Option<DPoint> {
        let without = self.without_max(p);
        (without != *p).then_some(without)
    }
}

impl fmt::Display for IndexModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            IndexModel::FiniteChain { length } => write!(f, "chain:{length}"),
            IndexModel::DenseLine {
                field: CoordField::RationalsOnly,
                membership: Membership::AllCoords,
            } => write!(f, "dense"),
            IndexModel::DenseLine {
                field: CoordField::RationalsWithSurds,
                membership: Membership::RationalsOnly,
            } => write!(f, "dense-surd"),
            IndexModel::DenseLine { field, membership } => {
                write!(f, "dense({field:?},{membership:?})")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    Strict,
    Principal,
}

/// An ideal of `T`, as a point of the double line.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DPoint {
    coord: ExtCoord,
    flavor: Flavor,
}

impl DPoint {
    /// Builds a point without validating it against a model.
    pub fn new(coord: ExtCoord, flavor: Flavor) -> Result<Self> {
        if coord.is_infinite() && flavor == Flavor::Principal {
            return Err(Error::domain("the point at infinity has strict flavor only"));
        }
        Ok(DPoint { coord, flavor })
    }

    pub fn strict(c: impl Into<Coord>) -> Self {
        DPoint {
            coord: ExtCoord::Finite(c.into()),
            flavor: Flavor::Strict,
        }
    }

    pub fn principal(c: impl Into<Coord>) -> Self {
        DPoint {
            coord: ExtCoord::Finite(c.into()),
            flavor: Flavor::Principal,
        }
    }

    /// The ideal `T` itself.
    pub fn top() -> Self {
        DPoint {
            coord: ExtCoord::PlusInfinity,
            flavor: Flavor::Strict,
        }
    }

    pub fn coord(&self) -> &ExtCoord {
        &self.coord
    }

    pub fn finite_coord(&self) -> Option<&Coord> {
        self.coord.finite()
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn is_top(&self) -> bool {
        self.coord.is_infinite()
    }
}

impl fmt::Display for DPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fl = match self.flavor {
            Flavor::Strict => "S",
            Flavor::Principal => "P",
        };
        write!(f, "({},{fl})", self.coord)
    }
}

/// Lexicographic order on the double line, which is inclusion of ideals.
pub fn cmp_d(p: &DPoint, q: &DPoint) -> Ordering {
    p.cmp(q)
}

/// Does the ideal `p` contain the element `t`?
pub fn contains(model: &IndexModel, p: &DPoint, t: &Coord) -> Result<bool> {
    model.check_member(t)?;
    Ok(match &p.coord {
        ExtCoord::PlusInfinity => true,
        ExtCoord::Finite(x) => t < x || (t == x && p.flavor == Flavor::Principal),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IdealType {
    /// Principal ideal.
    Type1,
    /// Non-principal, with a supremum in `T`.
    Type2,
    /// Non-principal, without a supremum in `T`.
    Type3,
}

pub fn classify_ideal(model: &IndexModel, p: &DPoint) -> Result<IdealType> {
    let p = model.normalize(p)?;
    Ok(match (&p.coord, p.flavor) {
        (_, Flavor::Principal) => IdealType::Type1,
        (ExtCoord::PlusInfinity, _) => IdealType::Type3,
        (ExtCoord::Finite(c), Flavor::Strict) => {
            if model.is_member(c) {
                IdealType::Type2
            } else {
                IdealType::Type3
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_order() {
        assert_eq!(
            cmp_d(&DPoint::strict(1), &DPoint::principal(1)),
            Ordering::Less
        );
        assert_eq!(
            cmp_d(&DPoint::principal(0), &DPoint::strict(1)),
            Ordering::Less
        );
        assert_eq!(
            cmp_d(&DPoint::principal(1_000_000), &DPoint::top()),
            Ordering::Less
        );
    }

    #[test]
    fn containment() {
        let m = IndexModel::dense();
        assert!(contains(&m, &DPoint::principal(0), &Coord::int(0)).unwrap());
        assert!(!contains(&m, &DPoint::strict(0), &Coord::int(0)).unwrap());
        assert!(contains(&m, &DPoint::top(), &Coord::int(-999)).unwrap());
        let q = IndexModel::dense_surd();
        let r2 = Coord::sqrt(2).unwrap();
        assert!(contains(&q, &DPoint::strict(r2.clone()), &Coord::int(1)).is_ok());
        assert!(contains(&q, &DPoint::top(), &r2).is_err());
    }

    #[test]
    fn ideal_types() {
        let m = IndexModel::dense();
        assert_eq!(
            classify_ideal(&m, &DPoint::principal(3)).unwrap(),
            IdealType::Type1
        );
        assert_eq!(
            classify_ideal(&m, &DPoint::strict(3)).unwrap(),
            IdealType::Type2
        );
        assert_eq!(classify_ideal(&m, &DPoint::top()).unwrap(), IdealType::Type3);
        let q = IndexModel::dense_surd();
        let cut = DPoint::strict(Coord::sqrt(2).unwrap());
        assert_eq!(classify_ideal(&q, &cut).unwrap(), IdealType::Type3);
        assert!(classify_ideal(&q, &DPoint::principal(Coord::sqrt(2).unwrap())).is_err());
        // surds are not coordinates of the rational-only real model
        assert!(classify_ideal(&m, &cut).is_err());
    }

    #[test]
    fn finite_chain_ideals_are_principal() {
        let m = IndexModel::chain(4).unwrap();
        for p in [DPoint::strict(2), DPoint::principal(0), DPoint::top()] {
            assert_eq!(classify_ideal(&m, &p).unwrap(), IdealType::Type1);
        }
        assert_eq!(m.normalize(&DPoint::top()).unwrap(), DPoint::principal(3));
        assert!(m.validate_point(&DPoint::strict(0)).is_err());
        assert!(m.validate_point(&DPoint::principal(4)).is_err());
        assert_eq!(
            m.cmp_ideals(&DPoint::strict(2), &DPoint::principal(1)).unwrap(),
            Ordering::Equal
        );
    }
}
