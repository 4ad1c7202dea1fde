//! Polynomial-coefficient differential forms on the Heisenberg group.
//!
//! Forms are written in the adapted coframe
//!
//! ```text
//! e0 = theta = dz - sum_i y_i dx_i,   e^i = dx_i,   e^{n+i} = dy_i
//! ```
//!
//! in which `d theta = sum_i e^i ^ e^{n+i}` has constant coefficients. The
//! dual frame is `T = d/dz`, `X_i = d/dx_i + y_i d/dz`, `Y_i = d/dy_i`, so
//!
//! ```text
//! d(f e^I) = (T f) e0 ^ e^I + sum (X_i f) e^i ^ e^I + sum (Y_i f) e^{n+i} ^ e^I + f d(e^I)
//! ```
//!
//! A [`Form`] is homogeneous; it records its degree even when zero, so that
//! operators of nonzero degree can be applied to zero forms consistently.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_traits::{One, Signed, Zero};

use crate::cinfty::GradedElement;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{Poly, Rational};

/// Largest supported `n`; coframe multi-indices are stored as 16-bit sets.
pub const MAX_N: usize = 7;

/// A coframe multi-index `e^{i_1} ^ ... ^ e^{i_k}` with `i_1 < ... < i_k`,
/// stored as a bit set. Ordered lexicographically by index list.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial(u16);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn from_bits(bits: u16) -> Self {
        Monomial(bits)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    /// Sorts `indices` into canonical order. Returns the sign of the sorting
    /// permutation, or `None` if an index repeats.
    pub fn from_indices(indices: &[usize]) -> Option<(Monomial, i8)> {
        let mut bits = 0u16;
        let mut sign = 1i8;
        for &i in indices {
            assert!(i < 16, "coframe index {i} out of range");
            let bit = 1u16 << i;
            if bits & bit != 0 {
                return None;
            }
            if (bits >> i).count_ones() % 2 == 1 {
                sign = -sign;
            }
            bits |= bit;
        }
        Some((Monomial(bits), sign))
    }

    pub fn degree(self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains(self, index: usize) -> bool {
        self.0 & (1 << index) != 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..16).filter(move |&i| self.0 & (1 << i) != 0)
    }

    /// `e^self ^ e^other = sign * e^{self + other}`; `None` when they share an
    /// index.
    pub fn wedge(self, other: Monomial) -> Option<(Monomial, i8)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut swaps = 0u32;
        for j in other.indices() {
            swaps += (self.0 >> (j + 1)).count_ones();
        }
        let sign = if swaps % 2 == 0 { 1 } else { -1 };
        Some((Monomial(self.0 | other.0), sign))
    }

    /// The monomial with `index` removed. Panics if absent.
    pub fn without(self, index: usize) -> Monomial {
        assert!(self.contains(index));
        Monomial(self.0 & !(1 << index))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.indices().cmp(other.indices())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices().map(|i| i.to_string()).collect();
        write!(f, "e[{}]", idx.join(","))
    }
}

/// Matrix of `zeta -> zeta ^ (d theta)^power` between vertical bases of
/// degrees `n - power + 1` and `n + power + 1`, with its inverse.
#[derive(Debug)]
pub struct LefschetzSolve {
    pub power: usize,
    pub source: Vec<Monomial>,
    pub target: Vec<Monomial>,
    pub matrix: Matrix,
    pub inverse: Matrix,
}

struct ModelInner {
    n: usize,
    solves: Vec<OnceLock<Arc<LefschetzSolve>>>,
}

/// The Heisenberg group `H^{2n+1}` with contact form `dz - sum y_i dx_i`.
///
/// Cheap to clone; clones share the Lefschetz solve cache.
#[derive(Clone)]
pub struct ContactModel {
    inner: Arc<ModelInner>,
}

impl ContactModel {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::Domain(format!(
                "model parameter n must be in 1..={MAX_N}, got {n}"
            )));
        }
        Ok(ContactModel {
            inner: Arc::new(ModelInner {
                n,
                solves: (0..=n).map(|_| OnceLock::new()).collect(),
            }),
        })
    }

    pub fn n(&self) -> usize {
        self.inner.n
    }

    /// Manifold dimension `2n + 1`, also the coframe size and coordinate count.
    pub fn dim(&self) -> usize {
        2 * self.inner.n + 1
    }

    pub fn x(&self, i: usize) -> usize {
        i - 1
    }

    pub fn y(&self, i: usize) -> usize {
        self.n() + i - 1
    }

    pub fn z(&self) -> usize {
        2 * self.n()
    }

    pub fn generator_name(&self, index: usize) -> String {
        let n = self.n();
        match index {
            0 => "theta".to_string(),
            i if i <= n => format!("dx{i}"),
            i => format!("dy{}", i - n),
        }
    }

    pub fn monomial_name(&self, m: Monomial) -> String {
        if m == Monomial::ONE {
            return "1".to_string();
        }
        m.indices()
            .map(|i| self.generator_name(i))
            .collect::<Vec<_>>()
            .join("^")
    }

    /// All coframe monomials of `degree`, in canonical order.
    pub fn basis(&self, degree: usize) -> Vec<Monomial> {
        let dim = self.dim();
        let mut out: Vec<Monomial> = (0u32..(1 << dim))
            .filter(|b| b.count_ones() as usize == degree)
            .map(|b| Monomial(b as u16))
            .collect();
        out.sort();
        out
    }

    /// Monomials of `degree` containing `theta`; a basis of the constant
    /// vertical forms.
    pub fn vertical_basis(&self, degree: usize) -> Vec<Monomial> {
        self.basis(degree)
            .into_iter()
            .filter(|m| m.contains(0))
            .collect()
    }

    pub fn theta(&self) -> Form {
        Form::from_term(self, Monomial(1), Poly::one(self.dim()))
    }

    pub fn dtheta(&self) -> Form {
        let n = self.n();
        let mut terms = BTreeMap::new();
        for i in 1..=n {
            let m = Monomial((1 << i) | (1 << (n + i)));
            terms.insert(m, Poly::one(self.dim()));
        }
        Form {
            model: self.clone(),
            degree: 2,
            terms,
        }
    }

    pub fn coordinate(&self, index: usize) -> Result<Form> {
        Ok(Form::scalar(self, Poly::var(self.dim(), index)?))
    }

    pub fn check_same(&self, other: &ContactModel) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::Dimension(format!(
                "forms on H^{} and H^{}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(())
    }

    /// Cached solve data for the Lefschetz power `power` (1..=n).
    pub fn lefschetz_solve(&self, power: usize) -> Result<Arc<LefschetzSolve>> {
        if power == 0 || power > self.n() {
            return Err(Error::Domain(format!(
                "Lefschetz power {power} outside 1..={}",
                self.n()
            )));
        }
        let slot = &self.inner.solves[power];
        if let Some(s) = slot.get() {
            return Ok(s.clone());
        }
        let matrix = lefschetz_power_matrix(self, power)?;
        let inverse = matrix.inverse().ok_or_else(|| {
            Error::Domain(format!("Lefschetz power {power} is not invertible"))
        })?;
        let n = self.n();
        let solve = Arc::new(LefschetzSolve {
            power,
            source: self.vertical_basis(n - power + 1),
            target: self.vertical_basis(n + power + 1),
            matrix,
            inverse,
        });
        Ok(slot.get_or_init(|| solve).clone())
    }
}

impl PartialEq for ContactModel {
    fn eq(&self, other: &Self) -> bool {
        self.n() == other.n()
    }
}

impl Eq for ContactModel {}

impl fmt::Debug for ContactModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H^{}", self.dim())
    }
}

/// Matrix of wedging with `(d theta)^k` from vertical monomials of degree
/// `n - k + 1` to vertical monomials of degree `n + k + 1`. Defined for
/// `1 <= k <= n`; square with integer entries.
pub fn lefschetz_power_matrix(model: &ContactModel, k: usize) -> Result<Matrix> {
    let n = model.n();
    if k == 0 || k > n {
        return Err(Error::Domain(format!(
            "Lefschetz power {k} outside 1..={n}"
        )));
    }
    let source = model.vertical_basis(n - k + 1);
    let target = model.vertical_basis(n + k + 1);
    let mut m = Matrix::zeros(target.len(), source.len());
    for (j, &mono) in source.iter().enumerate() {
        let image = Form::from_term(model, mono, Poly::one(model.dim())).wedge_dtheta_power(k);
        for (t, coeff) in image.terms() {
            let i = target.binary_search(t).expect("image is vertical");
            m[(i, j)] = coeff
                .constant_value()
                .expect("d theta has constant coefficients");
        }
    }
    Ok(m)
}

/// A homogeneous differential form with polynomial coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Form {
    model: ContactModel,
    degree: i32,
    terms: BTreeMap<Monomial, Poly>,
}

impl Form {
    pub fn zero(model: &ContactModel, degree: i32) -> Self {
        Form {
            model: model.clone(),
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// A function, as a 0-form.
    pub fn scalar(model: &ContactModel, p: Poly) -> Self {
        Self::from_term(model, Monomial::ONE, p)
    }

    pub fn constant(model: &ContactModel, c: Rational) -> Self {
        Self::scalar(model, Poly::constant(model.dim(), c))
    }

    pub fn from_term(model: &ContactModel, m: Monomial, p: Poly) -> Self {
        assert_eq!(p.nvars(), model.dim(), "coefficient ring mismatch");
        assert!(
            m.indices().all(|i| i < model.dim()),
            "monomial outside the coframe"
        );
        let mut terms = BTreeMap::new();
        if !p.is_zero() {
            terms.insert(m, p);
        }
        Form {
            model: model.clone(),
            degree: m.degree() as i32,
            terms,
        }
    }

    /// `p e^{i_1} ^ ... ^ e^{i_k}` for an arbitrary index list.
    pub fn from_indices(model: &ContactModel, indices: &[usize], p: Poly) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&i| i >= model.dim()) {
            return Err(Error::Dimension(format!(
                "coframe index {bad} out of range for H^{}",
                model.dim()
            )));
        }
        Ok(match Monomial::from_indices(indices) {
            None => Form::zero(model, indices.len() as i32),
            Some((m, sign)) => {
                let p = if sign < 0 { -p } else { p };
                Form::from_term(model, m, p)
            }
        })
    }

    pub fn generator(model: &ContactModel, index: usize) -> Result<Self> {
        Self::from_indices(model, &[index], Poly::one(model.dim()))
    }

    pub fn model(&self) -> &ContactModel {
        &self.model
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Poly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: Monomial) -> Poly {
        self.terms
            .get(&m)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.model.dim()))
    }

    pub fn max_poly_degree(&self) -> u32 {
        self.terms
            .values()
            .filter_map(Poly::total_degree)
            .max()
            .unwrap_or(0)
    }

    /// True when every coefficient is a constant.
    pub fn is_constant_coefficient(&self) -> bool {
        self.terms.values().all(|p| p.constant_value().is_some())
    }

    fn add_term(&mut self, m: Monomial, p: Poly) {
        if p.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(p);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = &*o.get() + &p;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Form) -> Result<Form> {
        self.model.check_same(&other.model)?;
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::Domain(format!(
                "sum of a {}-form and a {}-form",
                self.degree, other.degree
            )));
        }
        let mut out = if self.is_zero() {
            Form::zero(&self.model, other.degree)
        } else {
            self.clone()
        };
        if self.is_zero() {
            out.terms = other.terms.clone();
            return Ok(out);
        }
        for (m, p) in &other.terms {
            out.add_term(*m, p.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Form {
        self.mul_poly(&Poly::constant(self.model.dim(), c.clone()))
    }

    pub fn mul_poly(&self, p: &Poly) -> Form {
        let mut out = Form::zero(&self.model, self.degree);
        for (m, q) in &self.terms {
            out.add_term(*m, q * p);
        }
        out
    }

    pub fn try_wedge(&self, other: &Form) -> Result<Form> {
        self.model.check_same(&other.model)?;
        let mut out = Form::zero(&self.model, self.degree + other.degree);
        for (ma, pa) in &self.terms {
            for (mb, pb) in &other.terms {
                if let Some((m, sign)) = ma.wedge(*mb) {
                    let prod = pa * pb;
                    out.add_term(m, if sign < 0 { -prod } else { prod });
                }
            }
        }
        Ok(out)
    }

    /// Exterior product. Panics if the models differ; see [`Form::try_wedge`].
    pub fn wedge(&self, other: &Form) -> Form {
        self.try_wedge(other).expect("wedge of forms on different models")
    }

    /// The exterior derivative.
    pub fn exterior_d(&self) -> Form {
        let model = &self.model;
        let n = model.n();
        let z = model.z();
        let mut out = Form::zero(model, self.degree + 1);
        // (left factor, right factor, coefficient) of d f ^ e^I and f d(e^I)
        let mut pieces: Vec<(Monomial, Monomial, Poly)> = Vec::new();
        for (&mono, f) in &self.terms {
            let f_z = f.deriv(z).expect("z is a coordinate");
            pieces.push((Monomial(1), mono, f_z.clone()));
            for i in 1..=n {
                let y_i = Poly::var(model.dim(), model.y(i)).expect("y_i");
                let x_part = &f.deriv(model.x(i)).expect("x_i") + &(&y_i * &f_z);
                pieces.push((Monomial(1 << i), mono, x_part));
                pieces.push((Monomial(1 << (n + i)), mono, f.deriv(model.y(i)).expect("y_i")));
            }
            if mono.contains(0) {
                // d(e0 ^ e^J) = d theta ^ e^J
                let rest = mono.without(0);
                for i in 1..=n {
                    pieces.push((Monomial((1 << i) | (1 << (n + i))), rest, f.clone()));
                }
            }
        }
        for (left, right, coeff) in pieces {
            if coeff.is_zero() {
                continue;
            }
            if let Some((m, sign)) = left.wedge(right) {
                out.add_term(m, if sign < 0 { -coeff } else { coeff });
            }
        }
        out
    }

    /// True iff `theta ^ self = 0`, i.e. every monomial contains `theta`.
    pub fn is_vertical(&self) -> bool {
        self.terms.keys().all(|m| m.contains(0))
    }

    /// `self ^ (d theta)^power`, without the verticality requirement.
    pub fn wedge_dtheta_power(&self, power: usize) -> Form {
        let dtheta = self.model.dtheta();
        let mut out = self.clone();
        for _ in 0..power {
            if out.is_zero() {
                out.degree += 2;
                continue;
            }
            out = out.wedge(&dtheta);
        }
        out
    }

    /// The Lefschetz operator `L^power`, defined on vertical forms.
    pub fn lefschetz(&self, power: usize) -> Result<Form> {
        if !self.is_vertical() {
            return Err(Error::Domain(
                "the Lefschetz operator acts on vertical forms".to_string(),
            ));
        }
        Ok(self.wedge_dtheta_power(power))
    }

    /// Solves `zeta ^ (d theta)^power = self` for vertical `zeta`, using the
    /// cached inverse. `self` must be vertical of degree `n + power + 1`.
    pub(crate) fn solve_lefschetz(&self, power: usize) -> Form {
        let n = self.model.n();
        debug_assert_eq!(self.degree, (n + power + 1) as i32);
        debug_assert!(self.is_vertical());
        let solve = self
            .model
            .lefschetz_solve(power)
            .expect("power within 1..=n");
        let nvars = self.model.dim();
        let rhs: Vec<Option<&Poly>> = solve.target.iter().map(|m| self.terms.get(m)).collect();
        let mut out = Form::zero(&self.model, (n - power + 1) as i32);
        for (a, &mono) in solve.source.iter().enumerate() {
            let mut coeff = Poly::zero(nvars);
            for (b, p) in rhs.iter().enumerate() {
                let (Some(p), w) = (p, &solve.inverse[(a, b)]) else {
                    continue;
                };
                if !w.is_zero() {
                    coeff = &coeff + &p.scale(w);
                }
            }
            out.add_term(mono, coeff);
        }
        out
    }
}

impl Add for &Form {
    type Output = Form;
    fn add(self, rhs: &Form) -> Form {
        self.checked_add(rhs).expect("incompatible form sum")
    }
}

impl Sub for &Form {
    type Output = Form;
    fn sub(self, rhs: &Form) -> Form {
        self.checked_add(&-rhs).expect("incompatible form difference")
    }
}

impl Neg for &Form {
    type Output = Form;
    fn neg(self) -> Form {
        Form {
            model: self.model.clone(),
            degree: self.degree,
            terms: self.terms.iter().map(|(m, p)| (*m, -p)).collect(),
        }
    }
}

impl Add for Form {
    type Output = Form;
    fn add(self, rhs: Form) -> Form {
        &self + &rhs
    }
}

impl Sub for Form {
    type Output = Form;
    fn sub(self, rhs: Form) -> Form {
        &self - &rhs
    }
}

impl Neg for Form {
    type Output = Form;
    fn neg(self) -> Form {
        -&self
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form[{}; {:?}]({})", self.degree, self.model, self)
    }
}

/// Canonical text in the expression grammar: terms in monomial order,
/// `c mono` for constant coefficients and `(p) mono` otherwise.
impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&mono, p) in &self.terms {
            let (negative, body) = if mono == Monomial::ONE {
                match p.constant_value() {
                    Some(c) => (c.is_negative(), c.abs().to_string()),
                    None => (false, format!("({p})")),
                }
            } else {
                let name = self.model.monomial_name(mono);
                match p.constant_value() {
                    Some(c) if c.abs().is_one() => (c.is_negative(), name),
                    Some(c) => (c.is_negative(), format!("{} {name}", c.abs())),
                    None => (false, format!("({p}) {name}")),
                }
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

impl GradedElement for Form {
    fn degree(&self) -> i32 {
        self.degree
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn scaled(&self, c: &Rational) -> Self {
        self.scale(c)
    }

    fn zero_of_degree(&self, degree: i32) -> Self {
        Form::zero(&self.model, degree)
    }

    fn negated(&self) -> Self {
        -self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;
    use proptest::prelude::*;

    fn h(n: usize) -> ContactModel {
        ContactModel::new(n).unwrap()
    }

    fn gen(model: &ContactModel, i: usize) -> Form {
        Form::generator(model, i).unwrap()
    }

    #[test]
    fn monomial_signs() {
        let (m, s) = Monomial::from_indices(&[2, 0, 1]).unwrap();
        assert_eq!(m.bits(), 0b111);
        assert_eq!(s, 1);
        let (_, s) = Monomial::from_indices(&[1, 0]).unwrap();
        assert_eq!(s, -1);
        assert!(Monomial::from_indices(&[1, 1]).is_none());
        let a = Monomial::from_indices(&[1]).unwrap().0;
        let b = Monomial::from_indices(&[0, 2]).unwrap().0;
        // e1 ^ e0 ^ e2 = -e0 ^ e1 ^ e2
        assert_eq!(a.wedge(b).unwrap().1, -1);
    }

    #[test]
    fn monomial_order_is_lexicographic() {
        let model = h(2);
        let names: Vec<String> = model
            .basis(2)
            .into_iter()
            .map(|m| model.monomial_name(m))
            .collect();
        assert_eq!(names[0], "theta^dx1");
        assert_eq!(names[3], "theta^dy2");
        assert_eq!(names[4], "dx1^dx2");
        assert_eq!(names.len(), 10);
    }

    #[test]
    fn wedge_examples() {
        let m = h(1);
        let dx1 = gen(&m, 1);
        assert!(dx1.wedge(&dx1).is_zero());
        let t = m.theta().wedge(&dx1);
        assert_eq!(t.to_string(), "theta^dx1");
        let x1 = Poly::var(3, 0).unwrap();
        let y1 = Poly::var(3, 1).unwrap();
        let a = gen(&m, 1).mul_poly(&y1);
        let b = gen(&m, 2).mul_poly(&x1);
        let expected = Form::from_indices(&m, &[1, 2], &x1 * &y1).unwrap();
        assert_eq!(a.wedge(&b), expected);
        assert!(matches!(
            m.theta().try_wedge(&h(2).theta()),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn d_of_theta_and_z() {
        for n in 1..=3 {
            let m = h(n);
            assert_eq!(m.theta().exterior_d(), m.dtheta());
            let dz = m.coordinate(m.z()).unwrap().exterior_d();
            let mut expected = m.theta();
            for i in 1..=n {
                let y = Poly::var(m.dim(), m.y(i)).unwrap();
                expected = &expected + &gen(&m, i).mul_poly(&y);
            }
            assert_eq!(dz, expected);
        }
    }

    #[test]
    fn theta_written_in_coordinates() {
        // theta = dz - sum y_i dx_i, with dz and dx_i from d of coordinates
        let m = h(2);
        let mut rebuilt = m.coordinate(m.z()).unwrap().exterior_d();
        for i in 1..=2 {
            let y = Poly::var(m.dim(), m.y(i)).unwrap();
            let dx = m.coordinate(m.x(i)).unwrap().exterior_d();
            rebuilt = &rebuilt - &dx.mul_poly(&y);
        }
        assert_eq!(rebuilt, m.theta());
    }

    #[test]
    fn verticality() {
        let m = h(1);
        assert!(m.theta().wedge(&gen(&m, 1)).is_vertical());
        assert!(!gen(&m, 1).wedge(&gen(&m, 2)).is_vertical());
        assert!(Form::zero(&m, 2).is_vertical());
    }

    #[test]
    fn lefschetz_examples() {
        let m = h(1);
        let l = m.theta().lefschetz(1).unwrap();
        assert_eq!(l.to_string(), "theta^dx1^dy1");
        let td = m.theta().wedge(&gen(&m, 1));
        assert!(td.lefschetz(1).unwrap().is_zero());
        assert!(matches!(gen(&m, 1).lefschetz(1), Err(Error::Domain(_))));
        for n in 1..=3 {
            let m = h(n);
            let top = m.theta().lefschetz(n).unwrap();
            assert_eq!(top.terms().count(), 1);
            assert_eq!(top.degree(), m.dim() as i32);
        }
    }

    #[test]
    fn lefschetz_matrices() {
        // n = 1, k = 1: theta -> theta^dx1^dy1
        let one = lefschetz_power_matrix(&h(1), 1).unwrap();
        assert_eq!(one, Matrix::from_rows(vec![vec![int(1)]]));
        // n = 2, k = 2: (dtheta)^2 = 2 dx1^dy1^dx2^dy2 = -2 dx1^dx2^dy1^dy2
        let two = lefschetz_power_matrix(&h(2), 2).unwrap();
        assert_eq!(two, Matrix::from_rows(vec![vec![int(-2)]]));
        let four = lefschetz_power_matrix(&h(2), 1).unwrap();
        assert_eq!((four.rows(), four.cols()), (4, 4));
        assert!(!four.determinant().is_zero());
        assert!(matches!(
            lefschetz_power_matrix(&h(2), 3),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            lefschetz_power_matrix(&h(2), 0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn display_forms() {
        let m = h(1);
        let x1 = Poly::var(3, 0).unwrap();
        let f = &Form::from_indices(&m, &[1, 2], x1.pow(2).scale(&crate::poly::rat(3, 2)))
            .unwrap()
            + &m.theta().wedge(&gen(&m, 1)).scale(&int(-2));
        assert_eq!(f.to_string(), "-2 theta^dx1 + (3/2*x1**2) dx1^dy1");
        assert_eq!(Form::zero(&m, 1).to_string(), "0");
        assert_eq!(Form::constant(&m, int(-3)).to_string(), "-3");
    }

    fn arb_form(n: usize, degree: usize) -> impl Strategy<Value = Form> {
        let model = h(n);
        let basis = model.basis(degree);
        let dim = model.dim();
        prop::collection::vec(
            (
                0..basis.len(),
                prop::collection::vec((prop::collection::vec(0u16..2, dim), -5i64..=5), 1..3),
            ),
            0..3,
        )
        .prop_map(move |terms| {
            let mut f = Form::zero(&model, degree as i32);
            for (b, coeffs) in terms {
                let p = Poly::from_terms(dim, coeffs.into_iter().map(|(e, c)| (e, int(c))));
                f = &f + &Form::from_term(&model, basis[b], p);
            }
            f
        })
    }

    proptest! {
        #[test]
        fn d_squared_vanishes(f in (0usize..=5).prop_flat_map(|k| arb_form(2, k))) {
            prop_assert!(f.exterior_d().exterior_d().is_zero());
        }

        #[test]
        fn graded_leibniz(a in (0usize..=2).prop_flat_map(|k| arb_form(2, k)),
                          b in (0usize..=2).prop_flat_map(|k| arb_form(2, k))) {
            let lhs = a.wedge(&b).exterior_d();
            let sign = if a.degree() % 2 == 0 { 1 } else { -1 };
            let rhs = &a.exterior_d().wedge(&b) + &a.wedge(&b.exterior_d()).scale(&int(sign));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn graded_commutative_and_associative(
            a in (0usize..=2).prop_flat_map(|k| arb_form(2, k)),
            b in (0usize..=2).prop_flat_map(|k| arb_form(2, k)),
            c in (0usize..=1).prop_flat_map(|k| arb_form(2, k)),
        ) {
            let sign = if (a.degree() * b.degree()) % 2 == 0 { 1 } else { -1 };
            prop_assert_eq!(a.wedge(&b), b.wedge(&a).scale(&int(sign)));
            prop_assert_eq!(a.wedge(&b).wedge(&c), a.wedge(&b.wedge(&c)));
        }

        #[test]
        fn theta_d_omega_equals_omega_d_theta(f in (0usize..=4).prop_flat_map(|k| arb_form(2, k))) {
            let model = f.model().clone();
            let omega = model.theta().wedge(&f);
            prop_assert_eq!(model.theta().wedge(&omega.exterior_d()), omega.wedge(&model.dtheta()));
        }
    }
}
