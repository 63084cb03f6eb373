use std::ops::{Add, Mul, Neg, Sub};

use super::poly::Poly2;
use super::rational::Rational;
use super::AlgebraError;

/// Quotient of bivariate polynomials. No normalisation is attempted;
/// equality is decided by cross multiplication.
#[derive(Clone, Debug)]
pub struct RatFunc2 {
    numerator: Poly2,
    denominator: Poly2,
}

impl RatFunc2 {
    pub fn new(numerator: Poly2, denominator: Poly2) -> Result<Self, AlgebraError> {
        if denominator.is_zero() {
            return Err(AlgebraError::ZeroDivisor);
        }
        Ok(Self { numerator, denominator })
    }

    pub fn from_poly(p: Poly2) -> Self {
        Self { numerator: p, denominator: Poly2::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly2::constant(c))
    }

    pub fn numerator(&self) -> &Poly2 {
        &self.numerator
    }

    pub fn denominator(&self) -> &Poly2 {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn recip(&self) -> Result<Self, AlgebraError> {
        Self::new(self.denominator.clone(), self.numerator.clone())
    }

    /// Evaluates at a point off the zero set of the denominator.
    pub fn eval(&self, x: &Rational, y: &Rational) -> Result<Rational, AlgebraError> {
        let den = self.denominator.eval(x, y);
        if num_traits::Zero::is_zero(&den) {
            return Err(AlgebraError::ZeroDivisor);
        }
        Ok(self.numerator.eval(x, y) / den)
    }
}

impl PartialEq for RatFunc2 {
    fn eq(&self, other: &Self) -> bool {
        &self.numerator * &other.denominator == &other.numerator * &self.denominator
    }
}

impl Add for &RatFunc2 {
    type Output = RatFunc2;
    fn add(self, rhs: &RatFunc2) -> RatFunc2 {
        RatFunc2 {
            numerator: &(&self.numerator * &rhs.denominator) + &(&rhs.numerator * &self.denominator),
            denominator: &self.denominator * &rhs.denominator,
        }
    }
}

impl Sub for &RatFunc2 {
    type Output = RatFunc2;
    fn sub(self, rhs: &RatFunc2) -> RatFunc2 {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc2 {
    type Output = RatFunc2;
    fn mul(self, rhs: &RatFunc2) -> RatFunc2 {
        RatFunc2 {
            numerator: &self.numerator * &rhs.numerator,
            denominator: &self.denominator * &rhs.denominator,
        }
    }
}

impl Neg for &RatFunc2 {
    type Output = RatFunc2;
    fn neg(self) -> RatFunc2 {
        RatFunc2 { numerator: -&self.numerator, denominator: self.denominator.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    #[test]
    fn equality_by_cross_multiplication() {
        let x = Poly2::x();
        let y = Poly2::y();
        // (x^2 + xy) / (x y) == (x + y) / y
        let a = RatFunc2::new(&(&x * &x) + &(&x * &y), &x * &y).unwrap();
        let b = RatFunc2::new(&x + &y, y.clone()).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, RatFunc2::from_poly(x));
    }

    #[test]
    fn arithmetic() {
        let x = RatFunc2::from_poly(Poly2::x());
        let inv = x.recip().unwrap();
        assert_eq!(&x * &inv, RatFunc2::constant(rat(1)));
        assert!((&inv - &inv).is_zero());
        assert_eq!(inv.eval(&rat(4), &rat(0)).unwrap(), crate::algebra::ratio(1, 4));
        assert!(RatFunc2::new(Poly2::one(), Poly2::zero()).is_err());
    }
}
