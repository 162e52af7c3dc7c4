//! Exact coordinates on the index line.
//!
//! A [`Coord`] is either a rational number or a real quadratic number
//! `p + q·√d` with rational `p`, `q` and a square-free radicand `d > 1`.
//! Comparison is decided by sign analysis on the coefficients; nothing here
//! touches floating point.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used throughout the crate.
pub type Rational = BigRational;

/// Parses `"p"`, `"p/q"` or a finite decimal such as `"-1.25"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::malformed("empty rational"));
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n
            .trim()
            .parse()
            .map_err(|_| Error::malformed(format!("bad numerator in {s:?}")))?;
        let d: BigInt = d
            .trim()
            .parse()
            .map_err(|_| Error::malformed(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::malformed(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::malformed(format!("bad decimal {s:?}")));
        }
        let neg = int.trim_start().starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        let mut n: BigInt = digits
            .parse()
            .map_err(|_| Error::malformed(format!("bad decimal {s:?}")))?;
        if neg {
            n = -n;
        }
        let d = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(Rational::new(n, d));
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| Error::malformed(format!("bad rational {s:?}")))?;
    Ok(Rational::from_integer(n))
}

/// Canonical text form of a rational: `"p/q"`, or `"p"` when integral.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

fn sign(q: &Rational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// Sign of `r + s·√m` for square-free `m > 1`.
fn sign_surd(r: &Rational, s: &Rational, m: u64) -> i8 {
    let (sr, ss) = (sign(r), sign(s));
    if ss == 0 {
        return sr;
    }
    if sr == 0 || sr == ss {
        return ss;
    }
    // opposite signs: compare r² with s²·m; equality is impossible for irrational √m
    let lhs = r * r;
    let rhs = s * s * Rational::from_integer(BigInt::from(m));
    if lhs > rhs {
        sr
    } else {
        ss
    }
}

/// Sign of `r + s·√m + t·√n` for distinct square-free `m, n > 1`.
fn sign_two_surds(r: &Rational, s: &Rational, m: u64, t: &Rational, n: u64) -> i8 {
    let su = sign_surd(r, s, m);
    let sv = sign(t);
    if sv == 0 {
        return su;
    }
    if su == 0 || su == sv {
        return sv;
    }
    // |u| vs |v| via u² - v² = (r² + s²m - t²n) + 2rs·√m
    let mq = Rational::from_integer(BigInt::from(m));
    let nq = Rational::from_integer(BigInt::from(n));
    let a = r * r + s * s * &mq - t * t * &nq;
    let b = Rational::from_integer(BigInt::from(2)) * r * s;
    if sign_surd(&a, &b, m) > 0 {
        su
    } else {
        sv
    }
}

/// Splits `d` into `(k, f)` with `d = k²·f` and `f` square-free.
fn square_free_split(mut d: u64) -> (u64, u64) {
    let mut k = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= d {
        while d % (p * p) == 0 {
            d /= p * p;
            k *= p;
        }
        p += 1;
    }
    (k, d)
}

/// The irrational part `coeff·√radicand` of a [`Coord`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Surd {
    coeff: Rational,
    radicand: u64,
}

impl Surd {
    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }
}

/// An exact point of the index line.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coord {
    rat: Rational,
    surd: Option<Surd>,
}

impl Coord {
    pub fn rational(q: Rational) -> Self {
        Coord { rat: q, surd: None }
    }

    pub fn int(n: i64) -> Self {
        Coord::rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `n/d` as a coordinate. Panics if `d == 0`.
    pub fn frac(n: i64, d: i64) -> Self {
        Coord::rational(Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// `rat + coeff·√radicand`, reduced to canonical form.
    pub fn with_surd(rat: Rational, coeff: Rational, radicand: u64) -> Result<Self> {
        if radicand == 0 {
            return Err(Error::domain("surd radicand must be positive"));
        }
        let (k, f) = square_free_split(radicand);
        let coeff = coeff * Rational::from_integer(BigInt::from(k));
        if f == 1 {
            return Err(Error::domain(format!(
                "radicand {radicand} is a perfect square"
            )));
        }
        if coeff.is_zero() {
            return Ok(Coord::rational(rat));
        }
        Ok(Coord {
            rat,
            surd: Some(Surd { coeff, radicand: f }),
        })
    }

    /// `√d` for a non-square `d`.
    pub fn sqrt(d: u64) -> Result<Self> {
        Coord::with_surd(Rational::zero(), Rational::one(), d)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rat
    }

    pub fn surd(&self) -> Option<&Surd> {
        self.surd.as_ref()
    }

    pub fn is_rational(&self) -> bool {
        self.surd.is_none()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self.surd {
            None => Some(&self.rat),
            Some(_) => None,
        }
    }

    pub fn is_integer(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_integer())
    }

    pub fn add_rational(&self, q: &Rational) -> Coord {
        Coord {
            rat: &self.rat + q,
            surd: self.surd.clone(),
        }
    }

    pub fn sub_rational(&self, q: &Rational) -> Coord {
        Coord {
            rat: &self.rat - q,
            surd: self.surd.clone(),
        }
    }

    pub fn scale(&self, q: &Rational) -> Coord {
        if q.is_zero() {
            return Coord::rational(Rational::zero());
        }
        Coord {
            rat: &self.rat * q,
            surd: self.surd.as_ref().map(|s| Surd {
                coeff: &s.coeff * q,
                radicand: s.radicand,
            }),
        }
    }

    pub fn neg(&self) -> Coord {
        self.scale(&-Rational::one())
    }

    /// `self - other`, when the difference is again a single-radicand coordinate.
    pub fn checked_sub(&self, other: &Coord) -> Option<Coord> {
        let rat = &self.rat - &other.rat;
        match (&self.surd, &other.surd) {
            (None, None) => Some(Coord::rational(rat)),
            (Some(s), None) => Some(Coord {
                rat,
                surd: Some(s.clone()),
            }),
            (None, Some(s)) => Some(Coord {
                rat,
                surd: Some(Surd {
                    coeff: -s.coeff.clone(),
                    radicand: s.radicand,
                }),
            }),
            (Some(a), Some(b)) if a.radicand == b.radicand => {
                let c = &a.coeff - &b.coeff;
                if c.is_zero() {
                    Some(Coord::rational(rat))
                } else {
                    Some(Coord {
                        rat,
                        surd: Some(Surd {
                            coeff: c,
                            radicand: a.radicand,
                        }),
                    })
                }
            }
            _ => None,
        }
    }

    pub fn signum(&self) -> i8 {
        match &self.surd {
            None => sign(&self.rat),
            Some(s) => sign_surd(&self.rat, &s.coeff, s.radicand),
        }
    }

    pub fn abs(&self) -> Coord {
        if self.signum() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Largest integer not exceeding the coordinate.
    pub fn floor(&self) -> BigInt {
        let Some(s) = &self.surd else {
            return self.rat.floor().to_integer();
        };
        // |coeff|·√d = √(coeff²·d); floor(√(n/m)) = floor(isqrt(n·m) / m)
        let r2 = &s.coeff * &s.coeff * Rational::from_integer(BigInt::from(s.radicand));
        let root = (r2.numer() * r2.denom()).sqrt();
        let root_floor = Rational::new(root, r2.denom().clone()).floor().to_integer();
        let mut guess = if s.coeff.is_positive() {
            self.rat.floor().to_integer() + root_floor
        } else {
            self.rat.floor().to_integer() - root_floor - 1
        };
        while Coord::rational(Rational::from_integer(guess.clone())) > *self {
            guess -= 1;
        }
        while Coord::rational(Rational::from_integer(&guess + 1)) <= *self {
            guess += 1;
        }
        guess
    }

    /// A rational strictly between `lo` and `hi`. Requires `lo < hi`.
    pub fn rational_between(lo: &Coord, hi: &Coord) -> Rational {
        debug_assert!(lo < hi);
        if let (Some(a), Some(b)) = (lo.as_rational(), hi.as_rational()) {
            return (a + b) / Rational::from_integer(BigInt::from(2));
        }
        let mut scale = Rational::one();
        loop {
            let n = lo.scale(&scale).floor() + 1;
            let r = Rational::from_integer(n) / &scale;
            if Coord::rational(r.clone()) < *hi {
                return r;
            }
            scale *= Rational::from_integer(BigInt::from(2));
        }
    }

    /// A rational no larger than the coordinate, at distance less than 1 below it
    /// for irrational values and exactly 1 below for rationals.
    pub fn rational_below(&self) -> Rational {
        match self.as_rational() {
            Some(q) => q - Rational::one(),
            None => Rational::from_integer(self.floor()),
        }
    }

    /// A rational strictly above the coordinate.
    pub fn rational_above(&self) -> Rational {
        match self.as_rational() {
            Some(q) => q + Rational::one(),
            None => Rational::from_integer(self.floor() + 1),
        }
    }
}

impl From<Rational> for Coord {
    fn from(q: Rational) -> Self {
        Coord::rational(q)
    }
}

impl From<i64> for Coord {
    fn from(n: i64) -> Self {
        Coord::int(n)
    }
}

impl Ord for Coord {
    fn cmp(&self, other: &Self) -> Ordering {
        let r = &self.rat - &other.rat;
        let s = match (&self.surd, &other.surd) {
            (None, None) => sign(&r),
            (Some(a), None) => sign_surd(&r, &a.coeff, a.radicand),
            (None, Some(b)) => sign_surd(&r, &-b.coeff.clone(), b.radicand),
            (Some(a), Some(b)) if a.radicand == b.radicand => {
                sign_surd(&r, &(&a.coeff - &b.coeff), a.radicand)
            }
            (Some(a), Some(b)) => {
                sign_two_surds(&r, &a.coeff, a.radicand, &-b.coeff.clone(), b.radicand)
            }
        };
        s.cmp(&0)
    }
}

impl PartialOrd for Coord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.surd {
            None => write!(f, "{}", self.rat),
            Some(s) => {
                if !self.rat.is_zero() {
                    write!(f, "{}", self.rat)?;
                    if s.coeff.is_positive() {
                        write!(f, "+")?;
                    }
                }
                if s.coeff.is_one() {
                    write!(f, "sqrt({})", s.radicand)
                } else if s.coeff == -Rational::one() {
                    write!(f, "-sqrt({})", s.radicand)
                } else {
                    write!(f, "{}*sqrt({})", s.coeff, s.radicand)
                }
            }
        }
    }
}

/// A coordinate or `+∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtCoord {
    Finite(Coord),
    PlusInfinity,
}

impl ExtCoord {
    pub fn finite(&self) -> Option<&Coord> {
        match self {
            ExtCoord::Finite(c) => Some(c),
            ExtCoord::PlusInfinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtCoord::PlusInfinity)
    }

    pub fn sub_rational(&self, q: &Rational) -> ExtCoord {
        match self {
            ExtCoord::Finite(c) => ExtCoord::Finite(c.sub_rational(q)),
            ExtCoord::PlusInfinity => ExtCoord::PlusInfinity,
        }
    }
}

impl From<Coord> for ExtCoord {
    fn from(c: Coord) -> Self {
        ExtCoord::Finite(c)
    }
}

impl From<i64> for ExtCoord {
    fn from(n: i64) -> Self {
        ExtCoord::Finite(Coord::int(n))
    }
}

impl fmt::Display for ExtCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtCoord::Finite(c) => write!(f, "{c}"),
            ExtCoord::PlusInfinity => write!(f, "inf"),
        }
    }
}
