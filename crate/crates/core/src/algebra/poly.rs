//! Bivariate polynomials over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, Rational};
use super::AlgebraError;

/// Exponent pair `(i, j)` of the monomial `x^i y^j`.
pub type Monomial = (u32, u32);

/// Sparse polynomial in `x` and `y`. Zero coefficients are never stored, so
/// structural equality is polynomial equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Poly2 {
    terms: BTreeMap<Monomial, Rational>,
}

/// Outcome of an exact divisibility test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Division {
    Exact(Poly2),
    /// The division algorithm left this nonzero remainder.
    NotDivisible { remainder: Poly2 },
}

impl Poly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, (0, 0))
    }

    pub fn x() -> Self {
        Self::term(Rational::one(), (1, 0))
    }

    pub fn y() -> Self {
        Self::term(Rational::one(), (0, 1))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    /// The linear form `a x + b y`.
    pub fn linear(a: &Rational, b: &Rational) -> Self {
        let mut p = Self::term(a.clone(), (1, 0));
        p.add_term((0, 1), b.clone());
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: Monomial) -> Rational {
        self.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Maximal total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    /// True when every term has total degree `d` (the zero polynomial is
    /// homogeneous of every degree).
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|(i, j)| i + j == d)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff((0, 0))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn shift(&self, dx: u32, dy: u32) -> Self {
        Self {
            terms: self.terms.iter().map(|((i, j), v)| ((i + dx, j + dy), v.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, ((i, j), c)| {
            acc + c * num_traits::pow(x.clone(), *i as usize) * num_traits::pow(y.clone(), *j as usize)
        })
    }

    pub fn partial_x(&self) -> Self {
        Self::from_terms(self.terms.iter().filter(|((i, _), _)| *i > 0).map(|((i, j), c)| {
            ((i - 1, *j), c * Rational::from_integer((*i).into()))
        }))
    }

    pub fn partial_y(&self) -> Self {
        Self::from_terms(self.terms.iter().filter(|((_, j), _)| *j > 0).map(|((i, j), c)| {
            ((*i, j - 1), c * Rational::from_integer((*j).into()))
        }))
    }

    /// Restriction to the line `a x + b y = 0` parametrised by
    /// `t -> (b t, -a t)`; entry `n` is the coefficient of `t^n`.
    pub fn restrict_to_line(&self, a: &Rational, b: &Rational) -> Vec<Rational> {
        let len = self.degree().map_or(0, |d| d as usize + 1);
        let mut out = vec![Rational::zero(); len];
        let minus_a = -a.clone();
        for ((i, j), c) in &self.terms {
            let v = c
                * num_traits::pow(b.clone(), *i as usize)
                * num_traits::pow(minus_a.clone(), *j as usize);
            out[(i + j) as usize] += v;
        }
        while out.last().is_some_and(Zero::is_zero) {
            out.pop();
        }
        out
    }

    /// Lex-leading term with `x > y`.
    fn leading(&self) -> Option<(Monomial, &Rational)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    /// Division with remainder by a single divisor under lex order. For one
    /// divisor the remainder vanishes exactly when the divisor divides.
    pub fn div_rem(&self, divisor: &Poly2) -> Result<(Poly2, Poly2), AlgebraError> {
        let (lm, lc) = divisor.leading().ok_or(AlgebraError::ZeroDivisor)?;
        let mut rest = self.clone();
        let mut quotient = Poly2::zero();
        let mut remainder = Poly2::zero();
        while let Some((m, c)) = rest.leading() {
            let c = c.clone();
            if m.0 >= lm.0 && m.1 >= lm.1 {
                let t = Poly2::term(&c / lc, (m.0 - lm.0, m.1 - lm.1));
                rest = &rest - &(&t * divisor);
                quotient = &quotient + &t;
            } else {
                rest.add_term(m, -c.clone());
                remainder.add_term(m, c);
            }
        }
        Ok((quotient, remainder))
    }

    pub fn divide(&self, divisor: &Poly2) -> Result<Division, AlgebraError> {
        let (q, r) = self.div_rem(divisor)?;
        Ok(if r.is_zero() {
            Division::Exact(q)
        } else {
            Division::NotDivisible { remainder: r }
        })
    }

    /// Exact quotient when `divisor | self`, `None` otherwise.
    pub fn exact_div(&self, divisor: &Poly2) -> Result<Option<Poly2>, AlgebraError> {
        Ok(match self.divide(divisor)? {
            Division::Exact(q) => Some(q),
            Division::NotDivisible { .. } => None,
        })
    }
}

/// `divides(divisor, dividend)`: the quotient when `divisor | dividend`.
pub fn divides(divisor: &Poly2, dividend: &Poly2) -> Result<Division, AlgebraError> {
    dividend.divide(divisor)
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // highest total degree first, then by x exponent
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|((a, b), _), ((c, d), _)| (c + d, c).cmp(&(a + b, a)));
        for (n, ((i, j), c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if n == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let mut factors = Vec::new();
            if !abs.is_one() || (*i == 0 && *j == 0) {
                factors.push(format_rational(&abs));
            }
            for (var, e) in [("x", *i), ("y", *j)] {
                match e {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    _ => factors.push(format!("{var}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly2({self})")
    }
}

impl Add for &Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for ((i, j), a) in &self.terms {
            for ((k, l), b) in &rhs.terms {
                out.add_term((i + k, j + l), a * b);
            }
        }
        out
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for Poly2 {
            type Output = Poly2;
            fn $method(self, rhs: Poly2) -> Poly2 {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        -&self
    }
}
