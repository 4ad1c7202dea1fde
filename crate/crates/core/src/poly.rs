//! Exact multivariate polynomials over the rationals.
//!
//! Polynomials live on the coordinates of the Heisenberg group
//! `H^{2n+1}`, ordered `x_1..x_n, y_1..y_n, z`. Exponent vectors are dense
//! and the term map is kept canonical: no zero coefficients, terms sorted
//! lexicographically by exponent vector. Two polynomials are equal iff
//! their term maps are equal.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The ground field.
pub type Rational = BigRational;

/// Builds the rational `num / den`. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds an integral rational.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub type Exponent = Vec<u16>;

/// Binary operations accepted by [`poly_arith`].
#[derive(Debug, Clone, PartialEq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    Scale(Rational),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponent, Rational>,
}

/// Applies `op` to `p` and `q`. For [`PolyOp::Scale`], `q` is ignored
/// except for the dimension check.
pub fn poly_arith(p: &Poly, q: &Poly, op: PolyOp) -> Result<Poly> {
    p.check_same(q)?;
    Ok(match op {
        PolyOp::Add => p + q,
        PolyOp::Sub => p - q,
        PolyOp::Mul => p * q,
        PolyOp::Scale(c) => p.scale(&c),
    })
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    /// The coordinate function with index `index`.
    pub fn var(nvars: usize, index: usize) -> Result<Self> {
        if index >= nvars {
            return Err(Error::Dimension(format!(
                "coordinate index {index} out of range for {nvars} variables"
            )));
        }
        let mut exp = vec![0; nvars];
        exp[index] = 1;
        Ok(Self::monomial(nvars, exp, Rational::one()))
    }

    /// `c * x^exp`. Panics if `exp.len() != nvars`.
    pub fn monomial(nvars: usize, exp: Exponent, c: Rational) -> Self {
        assert_eq!(exp.len(), nvars, "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Poly { nvars, terms }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero)
    /// terms, normalizing on the way.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, Rational)>,
    {
        let mut p = Poly::zero(nvars);
        for (exp, c) in terms {
            assert_eq!(exp.len(), nvars, "exponent vector length");
            p.add_term(exp, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic order of exponent.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    /// The value of a constant polynomial, `None` otherwise. Zero counts as
    /// the constant 0.
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (exp, c) = self.terms.iter().next().unwrap();
                exp.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| u32::from(x)).sum())
            .max()
    }

    fn add_term(&mut self, exp: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &Poly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Dimension(format!(
                "polynomials over {} and {} variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        poly_arith(self, other, PolyOp::Add)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        poly_arith(self, other, PolyOp::Sub)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        poly_arith(self, other, PolyOp::Mul)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, exponent: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..exponent {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to coordinate `coord`.
    pub fn deriv(&self, coord: usize) -> Result<Poly> {
        if coord >= self.nvars {
            return Err(Error::Dimension(format!(
                "coordinate index {coord} out of range for {} variables",
                self.nvars
            )));
        }
        let mut out = Poly::zero(self.nvars);
        for (exp, c) in &self.terms {
            let e = exp[coord];
            if e == 0 {
                continue;
            }
            let mut new_exp = exp.clone();
            new_exp[coord] = e - 1;
            out.add_term(new_exp, c * Rational::from_integer(BigInt::from(e)));
        }
        Ok(out)
    }

    /// Name of coordinate `index` for a Heisenberg polynomial ring.
    pub fn coordinate_name(nvars: usize, index: usize) -> String {
        let n = (nvars - 1) / 2;
        if index < n {
            format!("x{}", index + 1)
        } else if index < 2 * n {
            format!("y{}", index - n + 1)
        } else {
            "z".to_string()
        }
    }

    fn fmt_monomial(&self, exp: &Exponent) -> String {
        let mut factors = Vec::new();
        for (i, &e) in exp.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(Self::coordinate_name(self.nvars, i)),
                _ => factors.push(format!("{}**{}", Self::coordinate_name(self.nvars, i), e)),
            }
        }
        factors.join("*")
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Highest term first; `x1**2*y1 - 3/2*z + 1`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (exp, c) in self.terms.iter().rev() {
            let mono = self.fmt_monomial(exp);
            let negative = c.is_negative();
            let mag = c.abs();
            let body = if mono.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                mono
            } else {
                format!("{mag}*{mono}")
            };
            match (first, negative) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

fn assert_same(a: &Poly, b: &Poly) {
    assert_eq!(
        a.nvars, b.nvars,
        "polynomial arithmetic across different coordinate counts"
    );
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_same(self, rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_same(self, rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_same(self, rhs);
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exp: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exp, ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
