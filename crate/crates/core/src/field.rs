//! Base fields for module coefficients.
//!
//! Scalars are always stored as [`Rational`]; a [`ScalarField`] decides how
//! they are reduced. Over `F_p` every scalar is kept as an integer in `0..p`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::coord::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ScalarField {
    #[default]
    ExactRationals,
    PrimeField(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl ScalarField {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        Ok(ScalarField::PrimeField(p))
    }

    fn modulus(&self) -> Option<BigInt> {
        match self {
            ScalarField::ExactRationals => None,
            ScalarField::PrimeField(p) => Some(BigInt::from(*p)),
        }
    }

    /// Maps a rational into the field. Fails when the denominator vanishes mod p.
    pub fn reduce(&self, q: &Rational) -> Result<Rational> {
        let Some(p) = self.modulus() else {
            return Ok(q.clone());
        };
        let num = q.numer().mod_floor(&p);
        let den = q.denom().mod_floor(&p);
        if den.is_zero() {
            return Err(Error::domain(format!("{q} has no image in F_{p}")));
        }
        let inv = mod_inverse(&den, &p);
        Ok(Rational::from_integer((num * inv).mod_floor(&p)))
    }

    /// Like [`reduce`](Self::reduce) for values already known to be integral.
    fn wrap(&self, q: Rational) -> Rational {
        match self.modulus() {
            None => q,
            Some(p) => Rational::from_integer(q.to_integer().mod_floor(&p)),
        }
    }

    pub fn zero(&self) -> Rational {
        Rational::zero()
    }

    pub fn one(&self) -> Rational {
        Rational::one()
    }

    pub fn add(&self, a: &Rational, b: &Rational) -> Rational {
        self.wrap(a + b)
    }

    pub fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        self.wrap(a - b)
    }

    pub fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        self.wrap(a * b)
    }

    pub fn neg(&self, a: &Rational) -> Rational {
        self.wrap(-a)
    }

    /// `a / b`; `b` must be nonzero.
    pub fn div(&self, a: &Rational, b: &Rational) -> Rational {
        debug_assert!(!b.is_zero());
        match self.modulus() {
            None => a / b,
            Some(p) => {
                let inv = mod_inverse(&b.to_integer(), &p);
                self.wrap(a * Rational::from_integer(inv))
            }
        }
    }

    /// Cost used to pick pivots during elimination; smaller is better.
    pub fn pivot_cost(&self, a: &Rational) -> u64 {
        match self {
            ScalarField::ExactRationals => a.numer().bits() + a.denom().bits(),
            ScalarField::PrimeField(_) => 0,
        }
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.extended_gcd(p);
    debug_assert!(e.gcd.is_one() || (-&e.gcd).is_one());
    let x = if e.gcd.is_negative() { -e.x } else { e.x };
    x.mod_floor(p)
}

impl fmt::Display for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarField::ExactRationals => write!(f, "rat"),
            ScalarField::PrimeField(p) => write!(f, "fp:{p}"),
        }
    }
}
