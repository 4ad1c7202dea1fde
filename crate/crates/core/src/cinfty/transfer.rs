//! Homotopy transfer of a commutative dg algebra structure along a
//! deformation retract, by the explicit recursion
//!
//! ```text
//! psi_n = sum_{s+t=n} (-1)^{s+1} mu(h psi_s (x) h psi_t),   h psi_1 = -1,
//! m_1 = d,  m_k = pi psi_k i^{(x)k},  f_k = -h psi_k i^{(x)k}.
//! ```

use std::sync::Arc;

use crate::cinfty::graded::{
    algebra_op_degree, morphism_op_degree, sum_terms, GradedElement, GradedOpSet,
};
use crate::cinfty::sign::koszul_operator_sign;
use crate::error::{Error, Result};

pub type LinearMap<X, Y> = Arc<dyn Fn(&X) -> Y + Send + Sync>;
pub type Product<X> = Arc<dyn Fn(&X, &X) -> X + Send + Sync>;

/// A cdga `(A, d, mu)`, a subcomplex `(B, d)` and maps `i`, `pi`, `h` with
/// `i pi = 1 - dh - hd` and `pi i = 1`.
pub struct RetractData<A, B> {
    pub d_a: LinearMap<A, A>,
    pub mu: Product<A>,
    pub h: LinearMap<A, A>,
    pub d_b: LinearMap<B, B>,
    pub include: LinearMap<B, A>,
    pub project: LinearMap<A, B>,
    verified: bool,
}

impl<A: GradedElement, B: GradedElement> RetractData<A, B> {
    pub fn new(
        d_a: LinearMap<A, A>,
        mu: Product<A>,
        h: LinearMap<A, A>,
        d_b: LinearMap<B, B>,
        include: LinearMap<B, A>,
        project: LinearMap<A, B>,
    ) -> Self {
        RetractData {
            d_a,
            mu,
            h,
            d_b,
            include,
            project,
            verified: false,
        }
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// Checks the retract identities on the given samples: `pi` and `i` are
    /// cochain maps, `h` has degree -1, `i pi = 1 - dh - hd` on `a_samples`
    /// and `pi i = 1` on `b_samples`. Marks the data verified on success.
    pub fn verify(&mut self, a_samples: &[A], b_samples: &[B]) -> Result<()> {
        let fail = |what: &str, x: &dyn std::fmt::Display| {
            Err(Error::Domain(format!("retract identity {what} fails on {x}")))
        };
        for a in a_samples {
            let pa = (self.project)(a);
            if (self.d_b)(&pa) != (self.project)(&(self.d_a)(a)) {
                return fail("d pi = pi d", a);
            }
            let ha = (self.h)(a);
            if ha.degree() != a.degree() - 1 {
                return fail("deg h = -1", a);
            }
            let rhs = a
                .plus(&(self.d_a)(&ha).negated())
                .plus(&(self.h)(&(self.d_a)(a)).negated());
            if !(self.include)(&pa).plus(&rhs.negated()).is_zero() {
                return fail("i pi = 1 - dh - hd", a);
            }
        }
        for b in b_samples {
            let ib = (self.include)(b);
            if (self.d_a)(&ib) != (self.include)(&(self.d_b)(b)) {
                return fail("d i = i d", b);
            }
            if !(self.project)(&ib).plus(&b.negated()).is_zero() {
                return fail("pi i = 1", b);
            }
        }
        self.verified = true;
        Ok(())
    }

    /// `psi_n(xs)` for `n = xs.len() >= 2`, computed over contiguous ranges.
    pub fn psi(&self, xs: &[A]) -> A {
        let n = xs.len();
        assert!(n >= 2, "psi_n is defined for n >= 2");
        // hp[i][len] = h psi_len(xs[i..i+len])
        let mut hp: Vec<Vec<Option<A>>> = vec![vec![None; n + 1]; n];
        for (i, x) in xs.iter().enumerate() {
            hp[i][1] = Some(x.negated());
        }
        let degrees: Vec<i32> = xs.iter().map(GradedElement::degree).collect();
        for len in 2..=n {
            for i in 0..=n - len {
                let psi = self.psi_range(&hp, &degrees, i, len);
                if len == n {
                    return psi;
                }
                hp[i][len] = Some((self.h)(&psi));
            }
        }
        unreachable!("the full range is reached at len == n")
    }

    fn psi_range(&self, hp: &[Vec<Option<A>>], degrees: &[i32], i: usize, len: usize) -> A {
        let terms = (1..len).map(|s| {
            let t = len - s;
            let left = hp[i][s].as_ref().expect("shorter ranges first");
            let right = hp[i + s][t].as_ref().expect("shorter ranges first");
            let left_degree: i32 = degrees[i..i + s].iter().sum();
            let sign = if (s + 1) % 2 == 0 { 1 } else { -1 }
                * koszul_operator_sign(morphism_op_degree(t), left_degree);
            (self.mu)(left, right).signed(sign)
        });
        sum_terms(terms).expect("len >= 2")
    }
}

/// The transferred `C_infinity` structure `m` on `B` and the quasi-isomorphism
/// `f: (B, m) -> (A, d, mu)`, as evaluators through arity `max_arity`.
pub fn markl_transfer<A, B>(
    retract: Arc<RetractData<A, B>>,
    max_arity: usize,
) -> Result<(GradedOpSet<B, B>, GradedOpSet<B, A>)>
where
    A: GradedElement + 'static,
    B: GradedElement + 'static,
{
    if !retract.is_verified() {
        return Err(Error::Domain(
            "homotopy transfer needs verified retract data".to_string(),
        ));
    }
    if max_arity < 2 {
        return Err(Error::Domain(format!(
            "transfer arity must be at least 2, got {max_arity}"
        )));
    }
    let mut m = GradedOpSet::new("transferred m");
    let mut f = GradedOpSet::new("transferred f");
    let r = retract.clone();
    m.push(algebra_op_degree(1), move |x: &[B]| (r.d_b)(&x[0]));
    let r = retract.clone();
    f.push(morphism_op_degree(1), move |x: &[B]| (r.include)(&x[0]));
    for k in 2..=max_arity {
        let r = retract.clone();
        m.push(algebra_op_degree(k), move |ys: &[B]| {
            let xs: Vec<A> = ys.iter().map(|y| (r.include)(y)).collect();
            (r.project)(&r.psi(&xs))
        });
        let r = retract.clone();
        f.push(morphism_op_degree(k), move |ys: &[B]| {
            let xs: Vec<A> = ys.iter().map(|y| (r.include)(y)).collect();
            (r.h)(&r.psi(&xs)).negated()
        });
    }
    Ok((m, f))
}
