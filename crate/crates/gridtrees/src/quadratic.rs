//! Exact arithmetic in the quadratic field Q[sqrt(3)].
//!
//! Every value is `rational + sqrt3 * sqrt(3)` with both parts held as
//! arbitrary-precision rationals, so equality, ordering, and decimal
//! rendering are all exact. No floating point enters any comparison.

use crate::decimal::format_scaled;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// An exact element of Q[sqrt(3)].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quadratic {
    /// Rational part.
    pub rational: BigRational,
    /// Coefficient of sqrt(3).
    pub sqrt3: BigRational,
}

impl Quadratic {
    pub fn new(rational: BigRational, sqrt3: BigRational) -> Self {
        Quadratic { rational, sqrt3 }
    }

    pub fn from_rational(rational: BigRational) -> Self {
        Quadratic::new(rational, BigRational::zero())
    }

    /// Builds `(a/b) + (c/d)*sqrt(3)` from integer components.
    pub fn from_parts(a: i64, b: i64, c: i64, d: i64) -> Self {
        Quadratic::new(
            BigRational::new(BigInt::from(a), BigInt::from(b)),
            BigRational::new(BigInt::from(c), BigInt::from(d)),
        )
    }

    pub fn from_integer(value: i64) -> Self {
        Quadratic::from_rational(BigRational::from_integer(BigInt::from(value)))
    }

    pub fn zero() -> Self {
        Quadratic::from_integer(0)
    }

    pub fn one() -> Self {
        Quadratic::from_integer(1)
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.sqrt3.is_zero()
    }

    /// Is the value a plain rational (zero sqrt(3) coefficient)?
    pub fn is_rational(&self) -> bool {
        self.sqrt3.is_zero()
    }

    /// The conjugate `rational - sqrt3 * sqrt(3)`.
    pub fn conjugate(&self) -> Self {
        Quadratic::new(self.rational.clone(), -self.sqrt3.clone())
    }

    /// Field norm `rational^2 - 3 * sqrt3^2`; zero only for the zero element.
    pub fn norm(&self) -> BigRational {
        &self.rational * &self.rational - BigRational::from_integer(BigInt::from(3)) * &self.sqrt3 * &self.sqrt3
    }

    /// Multiplicative inverse via the conjugate; `None` for zero.
    pub fn checked_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = self.norm();
        Some(Quadratic::new(
            &self.rational / &norm,
            -(&self.sqrt3 / &norm),
        ))
    }

    /// Integer power; negative exponents go through the inverse.
    ///
    /// Panics when raising zero to a negative power.
    pub fn pow(&self, exp: i64) -> Self {
        if exp < 0 {
            let inv = self
                .checked_inverse()
                .expect("zero has no negative powers");
            return inv.pow(-exp);
        }
        let mut base = self.clone();
        let mut exp = exp as u64;
        let mut acc = Quadratic::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact sign of the value, decided by rational comparisons only.
    pub fn sign(&self) -> Ordering {
        let ps = if self.rational.is_zero() {
            Ordering::Equal
        } else if self.rational.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        };
        let qs = if self.sqrt3.is_zero() {
            Ordering::Equal
        } else if self.sqrt3.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        };
        match (ps, qs) {
            (s, Ordering::Equal) => s,
            (Ordering::Equal, s) => s,
            (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
            (Ordering::Less, Ordering::Less) => Ordering::Less,
            // Mixed signs: compare rational^2 against 3*sqrt3^2.
            (Ordering::Greater, Ordering::Less) => {
                let lhs = &self.rational * &self.rational;
                let rhs = BigRational::from_integer(BigInt::from(3)) * &self.sqrt3 * &self.sqrt3;
                lhs.cmp(&rhs)
            }
            (Ordering::Less, Ordering::Greater) => {
                let lhs = BigRational::from_integer(BigInt::from(3)) * &self.sqrt3 * &self.sqrt3;
                let rhs = &self.rational * &self.rational;
                lhs.cmp(&rhs)
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    pub fn abs(&self) -> Self {
        if self.sign() == Ordering::Less {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Exact floor.
    ///
    /// Writes the value as `(alpha + beta*sqrt(3)) / denom` over a common
    /// positive denominator; `isqrt(3*beta^2)` then brackets the irrational
    /// part between consecutive integers. `beta*sqrt(3)` is irrational for
    /// `beta != 0`, so the bracketing inequalities are strict and the floor
    /// of the numerator is known exactly.
    pub fn floor(&self) -> BigInt {
        let pd = self.rational.denom();
        let qd = self.sqrt3.denom();
        let denom = pd.lcm(qd);
        let alpha = self.rational.numer() * (&denom / pd);
        let beta = self.sqrt3.numer() * (&denom / qd);
        if beta.is_zero() {
            return alpha.div_floor(&denom);
        }
        let beta_mag = beta.magnitude();
        let sigma = BigInt::from((BigUint::from(3u32) * beta_mag * beta_mag).sqrt());
        let numerator_floor = if beta.is_positive() {
            alpha + sigma
        } else {
            alpha - sigma - 1
        };
        numerator_floor.div_floor(&denom)
    }

    /// Renders the value with exactly `places` digits, rounding half to even.
    /// For irrational values a tie cannot occur, so rounding reduces to
    /// `floor(value * 10^places + 1/2)`.
    pub fn to_decimal(&self, places: u32) -> String {
        if self.is_rational() {
            return crate::decimal::rational_to_decimal(&self.rational, places);
        }
        let scale = BigRational::from_integer(BigInt::from(10u32).pow(places));
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let shifted = Quadratic::new(&self.rational * &scale + half, &self.sqrt3 * &scale);
        format_scaled(&shifted.floor(), places)
    }

    /// Floating-point approximation, for display and quick estimates only.
    pub fn to_f64(&self) -> f64 {
        self.rational.to_f64().unwrap_or(f64::NAN)
            + self.sqrt3.to_f64().unwrap_or(f64::NAN) * 3f64.sqrt()
    }
}

impl PartialOrd for Quadratic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Quadratic {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.clone() - other.clone()).sign()
    }
}

impl fmt::Display for Quadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sqrt3.is_zero() {
            return write!(f, "{}", self.rational);
        }
        if self.rational.is_zero() {
            return write!(f, "{}*sqrt(3)", self.sqrt3);
        }
        let sign = if self.sqrt3.is_negative() { "-" } else { "+" };
        write!(f, "{} {} {}*sqrt(3)", self.rational, sign, self.sqrt3.abs())
    }
}

impl Neg for Quadratic {
    type Output = Quadratic;
    fn neg(self) -> Quadratic {
        Quadratic::new(-self.rational, -self.sqrt3)
    }
}

impl Add for &Quadratic {
    type Output = Quadratic;
    fn add(self, rhs: &Quadratic) -> Quadratic {
        Quadratic::new(&self.rational + &rhs.rational, &self.sqrt3 + &rhs.sqrt3)
    }
}

impl Sub for &Quadratic {
    type Output = Quadratic;
    fn sub(self, rhs: &Quadratic) -> Quadratic {
        Quadratic::new(&self.rational - &rhs.rational, &self.sqrt3 - &rhs.sqrt3)
    }
}

impl Mul for &Quadratic {
    type Output = Quadratic;
    fn mul(self, rhs: &Quadratic) -> Quadratic {
        let three = BigRational::from_integer(BigInt::from(3));
        Quadratic::new(
            &self.rational * &rhs.rational + three * &self.sqrt3 * &rhs.sqrt3,
            &self.rational * &rhs.sqrt3 + &rhs.rational * &self.sqrt3,
        )
    }
}

impl Div for &Quadratic {
    type Output = Quadratic;
    // division is multiplication by the conjugate-based inverse
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Quadratic) -> Quadratic {
        let inv = rhs
            .checked_inverse()
            .expect("division by zero in Q[sqrt(3)]");
        self * &inv
    }
}

macro_rules! forward_owned_binop {
    ($($trait:ident :: $method:ident),*) => {$(
        impl $trait for Quadratic {
            type Output = Quadratic;
            fn $method(self, rhs: Quadratic) -> Quadratic {
                $trait::$method(&self, &rhs)
            }
        }
    )*};
}
forward_owned_binop!(Add::add, Sub::sub, Mul::mul, Div::div);
