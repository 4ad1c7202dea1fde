//! Graded elements, multilinear operators and Koszul-signed tensor products
//! of operators.

use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::cinfty::sign::koszul_operator_sign;
use crate::error::{Error, Result};
use crate::poly::Rational;

/// A homogeneous element of an exact rational graded vector space.
///
/// Zero elements still carry a degree.
pub trait GradedElement: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn degree(&self) -> i32;
    fn is_zero(&self) -> bool;
    /// Sum of two elements of the same degree. A zero summand may have any
    /// degree.
    fn plus(&self, other: &Self) -> Self;
    fn scaled(&self, c: &Rational) -> Self;
    fn zero_of_degree(&self, degree: i32) -> Self;

    fn negated(&self) -> Self {
        self.scaled(&-Rational::one())
    }

    fn signed(&self, sign: i32) -> Self {
        if sign < 0 {
            self.negated()
        } else {
            self.clone()
        }
    }
}

pub type Evaluator<A, B> = Arc<dyn Fn(&[A]) -> B + Send + Sync>;

/// A homogeneous multilinear operator `A^{(x) arity} -> B`, evaluated on
/// pure tensors.
pub struct GradedOp<A, B> {
    arity: usize,
    degree: i32,
    eval: Evaluator<A, B>,
}

impl<A, B> Clone for GradedOp<A, B> {
    fn clone(&self) -> Self {
        GradedOp {
            arity: self.arity,
            degree: self.degree,
            eval: self.eval.clone(),
        }
    }
}

impl<A, B> GradedOp<A, B> {
    pub fn new<F>(arity: usize, degree: i32, f: F) -> Self
    where
        F: Fn(&[A]) -> B + Send + Sync + 'static,
    {
        GradedOp {
            arity,
            degree,
            eval: Arc::new(f),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn eval(&self, tuple: &[A]) -> Result<B> {
        if tuple.len() != self.arity {
            return Err(Error::Domain(format!(
                "operator of arity {} applied to {} arguments",
                self.arity,
                tuple.len()
            )));
        }
        Ok((self.eval)(tuple))
    }
}

impl<A: Clone + Send + Sync + 'static> GradedOp<A, A> {
    pub fn identity() -> Self {
        GradedOp::new(1, 0, |x: &[A]| x[0].clone())
    }
}

/// Degree of `m_k` in an A-infinity algebra.
pub fn algebra_op_degree(arity: usize) -> i32 {
    2 - arity as i32
}

/// Degree of `f_k` in an A-infinity morphism.
pub fn morphism_op_degree(arity: usize) -> i32 {
    1 - arity as i32
}

/// An arity-indexed family `{op_k}` for `k = 1..=max_arity`.
pub struct GradedOpSet<A, B> {
    name: String,
    ops: Vec<GradedOp<A, B>>,
}

impl<A, B> Clone for GradedOpSet<A, B> {
    fn clone(&self) -> Self {
        GradedOpSet {
            name: self.name.clone(),
            ops: self.ops.clone(),
        }
    }
}

impl<A, B> GradedOpSet<A, B> {
    pub fn new(name: impl Into<String>) -> Self {
        GradedOpSet {
            name: name.into(),
            ops: Vec::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Appends the operator of the next arity.
    pub fn push<F>(&mut self, degree: i32, f: F)
    where
        F: Fn(&[A]) -> B + Send + Sync + 'static,
    {
        let arity = self.ops.len() + 1;
        self.ops.push(GradedOp::new(arity, degree, f));
    }

    /// Replaces the operator of `arity` (which must already exist).
    pub fn replace<F>(&mut self, arity: usize, degree: i32, f: F)
    where
        F: Fn(&[A]) -> B + Send + Sync + 'static,
    {
        self.ops[arity - 1] = GradedOp::new(arity, degree, f);
    }

    pub fn max_arity(&self) -> usize {
        self.ops.len()
    }

    pub fn get(&self, arity: usize) -> Result<&GradedOp<A, B>> {
        if arity == 0 || arity > self.ops.len() {
            return Err(Error::Domain(format!(
                "{} has no operator of arity {arity} (defined through {})",
                self.name,
                self.ops.len()
            )));
        }
        Ok(&self.ops[arity - 1])
    }

    pub fn eval(&self, arity: usize, tuple: &[A]) -> Result<B> {
        self.get(arity)?.eval(tuple)
    }
}

/// Checks that `op(tuple)` has degree `sum(deg) + op.degree()`.
pub fn audit_homogeneity<A: GradedElement, B: GradedElement>(
    op: &GradedOp<A, B>,
    tuple: &[A],
) -> Result<()> {
    let out = op.eval(tuple)?;
    let expected: i32 = tuple.iter().map(GradedElement::degree).sum::<i32>() + op.degree();
    if out.degree() != expected {
        return Err(Error::Domain(format!(
            "operator of declared degree {} produced degree {} on inputs of total degree {}",
            op.degree(),
            out.degree(),
            expected - op.degree()
        )));
    }
    Ok(())
}

/// Applies `op_1 (x) op_2 (x) ... (x) op_r` to a pure tensor with the Koszul
/// rule: each operator contributes `(-1)^(deg(op) * (sum of degrees of the
/// input factors to its left))`. Returns the overall sign and the output
/// factors.
pub fn apply_tensor_ops<A: GradedElement, B>(
    factors: &[&GradedOp<A, B>],
    tuple: &[A],
) -> Result<(i32, Vec<B>)> {
    let total: usize = factors.iter().map(|f| f.arity()).sum();
    if total != tuple.len() {
        return Err(Error::Domain(format!(
            "operator word of total arity {total} applied to {} factors",
            tuple.len()
        )));
    }
    let mut sign = 1;
    let mut left_degree = 0;
    let mut start = 0;
    let mut out = Vec::with_capacity(factors.len());
    for op in factors {
        let block = &tuple[start..start + op.arity()];
        sign *= koszul_operator_sign(op.degree(), left_degree);
        out.push(op.eval(block)?);
        left_degree += block.iter().map(GradedElement::degree).sum::<i32>();
        start += op.arity();
    }
    Ok((sign, out))
}

/// Sums signed terms; `None` if there are none.
pub(crate) fn sum_terms<B: GradedElement>(terms: impl IntoIterator<Item = B>) -> Option<B> {
    terms.into_iter().reduce(|acc, t| acc.plus(&t))
}
