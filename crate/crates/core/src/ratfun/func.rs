//! Rational functions in canonical form.
//!
//! Canonical form: numerator and denominator are coprime (exact GCD over
//! the rationals) and the denominator is monic. Two canonical values are
//! equal iff they are componentwise equal, so `PartialEq` derives.

use super::poly::{format_rational, Polynomial};
use crate::error::{Error, Result};
use num::rational::BigRational;
use num::Zero;
use num_complex::Complex64;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    numerator: Polynomial,
    denominator: Polynomial,
}

impl RationalFunction {
    /// Build `numerator / denominator`, reducing to canonical form.
    ///
    /// Panics if the denominator is the zero polynomial; rational functions
    /// with zero denominator have no meaning anywhere in the pipeline.
    pub fn new(numerator: Polynomial, denominator: Polynomial) -> Self {
        assert!(
            !denominator.is_zero(),
            "rational function denominator must be nonzero"
        );
        if numerator.is_zero() {
            return RationalFunction {
                numerator: Polynomial::zero(),
                denominator: Polynomial::one(),
            };
        }
        let g = numerator.gcd(&denominator);
        let (mut num, mut den) = if g.degree() == Some(0) {
            (numerator, denominator)
        } else {
            let (n, _) = numerator.div_rem(&g);
            let (d, _) = denominator.div_rem(&g);
            (n, d)
        };
        let lc = den.leading_coeff().unwrap().recip();
        den = den.scale(&lc);
        num = num.scale(&lc);
        RationalFunction {
            numerator: num,
            denominator: den,
        }
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        RationalFunction::new(p, Polynomial::one())
    }

    pub fn constant(c: BigRational) -> Self {
        RationalFunction::from_polynomial(Polynomial::constant(c))
    }

    pub fn zero() -> Self {
        RationalFunction::from_polynomial(Polynomial::zero())
    }

    pub fn one() -> Self {
        RationalFunction::from_polynomial(Polynomial::one())
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.numerator.is_one() && self.denominator.is_one()
    }

    /// numerator degree <= denominator degree (bounded at infinity).
    pub fn is_proper(&self) -> bool {
        self.is_zero() || self.numerator.degree() <= self.denominator.degree()
    }

    /// numerator degree < denominator degree (vanishes at infinity).
    pub fn is_strictly_proper(&self) -> bool {
        self.is_zero() || self.numerator.degree() < self.denominator.degree()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalFunction::new(
            self.denominator.clone(),
            self.numerator.clone(),
        ))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction {
            numerator: self.numerator.scale(c),
            denominator: self.denominator.clone(),
        }
    }

    /// `self^k` (k >= 0).
    pub fn pow(&self, k: u32) -> Self {
        if k == 0 {
            return RationalFunction::one();
        }
        RationalFunction::new(self.numerator.pow(k), self.denominator.pow(k))
    }

    /// Exact evaluation at a rational point.
    pub fn eval_rational(&self, z: &BigRational) -> Result<BigRational> {
        let den = self.denominator.eval_rational(z);
        if den.is_zero() {
            return Err(Error::PoleEvaluation {
                point: format_rational(z),
            });
        }
        Ok(self.numerator.eval_rational(z) / den)
    }

    /// Floating-point evaluation at a complex point.
    pub fn eval_complex(&self, z: Complex64) -> Result<Complex64> {
        let den = self.denominator.eval_complex(z);
        if den.norm() == 0.0 {
            return Err(Error::PoleEvaluation {
                point: format!("{z}"),
            });
        }
        Ok(self.numerator.eval_complex(z) / den)
    }

    /// Polynomial part and strictly proper remainder:
    /// `self = part + rem/denominator` with `deg(rem) < deg(denominator)`.
    pub fn split_polynomial_part(&self) -> (Polynomial, Polynomial) {
        self.numerator.div_rem(&self.denominator)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        let num = &(&self.numerator * &rhs.denominator) + &(&rhs.numerator * &self.denominator);
        RationalFunction::new(num, &self.denominator * &rhs.denominator)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        let num = &(&self.numerator * &rhs.denominator) - &(&rhs.numerator * &self.denominator);
        RationalFunction::new(num, &self.denominator * &rhs.denominator)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            numerator: -&self.numerator,
            denominator: self.denominator.clone(),
        }
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(
            &self.numerator * &rhs.numerator,
            &self.denominator * &rhs.denominator,
        )
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    /// Panics on division by zero; use `recip` for a fallible route.
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        assert!(!rhs.is_zero(), "division by the zero rational function");
        RationalFunction::new(
            &self.numerator * &rhs.denominator,
            &self.denominator * &rhs.numerator,
        )
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_one() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / ({})", self.numerator, self.denominator)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}
