//! The contact-invariant homotopy `Gamma`, the Rumin projection and
//! subcomplex, and the closed-form Rumin `C_infinity` structure.
//!
//! For a `k`-form `omega` on `H^{2n+1}`, `Gamma omega` is the vertical
//! `(k-1)`-form determined by
//!
//! ```text
//! k <= n:   Gamma(omega) ^ dtheta^{n+2-k} = theta ^ omega ^ dtheta^{n+1-k}
//! k >= n+1: Gamma(omega) = zeta ^ dtheta^{k-n-1},  zeta ^ dtheta^{k-n} = theta ^ omega
//! ```
//!
//! and `pi = 1 - d Gamma - Gamma d` projects onto the Rumin complex
//! `R = { omega : Gamma omega = Gamma d omega = 0 }`. The structure maps are
//!
//! ```text
//! m1 = d, m2 = pi mu, m3 = pi mu (Gamma mu (x) 1 - 1 (x) Gamma mu), m_k = 0 (k >= 4)
//! f1 = i, f2 = -Gamma mu, f_k = 0 (k >= 3)
//! ```

use std::sync::Arc;

use num_traits::Zero;

use crate::cinfty::graded::{algebra_op_degree, morphism_op_degree, GradedElement, GradedOpSet};
use crate::cinfty::sign::koszul_operator_sign;
use crate::cinfty::transfer::RetractData;
use crate::error::{Error, Result};
use crate::forms::{ContactModel, Form, Monomial};
use crate::linalg::Matrix;
use crate::poly::{Poly, Rational};

/// Degree of `Gamma` (and of `Gamma mu`).
pub const GAMMA_DEGREE: i32 = -1;

fn wedge_power(form: &Form, base: &Form, power: usize) -> Form {
    let mut out = form.clone();
    for _ in 0..power {
        out = out.wedge(base);
    }
    out
}

/// Shared dispatch on `k <= n` / `k >= n+1`. `solve(power, rhs)` must
/// return the vertical `zeta` with `zeta ^ dtheta^power = rhs`.
fn gamma_dispatch(
    omega: &Form,
    theta: &Form,
    dtheta: &Form,
    solve: impl Fn(usize, &Form) -> Form,
) -> Form {
    let model = omega.model();
    let n = model.n() as i32;
    let k = omega.degree();
    // Trivial target (k = 0, and k = 1 where theta ^ omega ^ dtheta^n has
    // degree 2n+2) or trivial source (theta ^ omega = 0 in top degree).
    if k <= 1 || k >= 2 * n + 1 || omega.is_zero() {
        return Form::zero(model, k - 1);
    }
    if k <= n {
        let rhs = wedge_power(&theta.wedge(omega), dtheta, (n + 1 - k) as usize);
        solve((n + 2 - k) as usize, &rhs)
    } else {
        let zeta = solve((k - n) as usize, &theta.wedge(omega));
        wedge_power(&zeta, dtheta, (k - n - 1) as usize)
    }
}

/// The operator `Gamma`, using the cached Lefschetz inverses.
pub fn gamma(omega: &Form) -> Form {
    let model = omega.model();
    gamma_dispatch(omega, &model.theta(), &model.dtheta(), |power, rhs| {
        rhs.solve_lefschetz(power)
    })
}

/// `Gamma` recomputed from scratch for the contact form `lambda * theta`,
/// with freshly assembled and inverted Lefschetz systems.
pub fn gamma_with_scale(omega: &Form, lambda: &Rational) -> Result<Form> {
    if *lambda <= Rational::zero() {
        return Err(Error::Domain(format!(
            "rescaling factor must be positive, got {lambda}"
        )));
    }
    let model = omega.model();
    let theta = model.theta().scale(lambda);
    let dtheta = theta.exterior_d();
    Ok(gamma_dispatch(omega, &theta, &dtheta, |power, rhs| {
        fresh_lefschetz_solve(model, &dtheta, power, rhs)
    }))
}

fn fresh_lefschetz_solve(model: &ContactModel, dtheta: &Form, power: usize, rhs: &Form) -> Form {
    let n = model.n();
    let source = model.vertical_basis(n - power + 1);
    let target = model.vertical_basis(n + power + 1);
    let mut m = Matrix::zeros(target.len(), source.len());
    for (j, &mono) in source.iter().enumerate() {
        let image = wedge_power(&Form::from_term(model, mono, Poly::one(model.dim())), dtheta, power);
        for (t, c) in image.terms() {
            let i = target.binary_search(t).expect("vertical image");
            m[(i, j)] = c.constant_value().expect("constant Lefschetz matrix");
        }
    }
    let inv = m.inverse().expect("Lefschetz powers are invertible");
    let mut out = Form::zero(model, (n - power + 1) as i32);
    for (a, &mono) in source.iter().enumerate() {
        let mut coeff = Poly::zero(model.dim());
        for (b, &t) in target.iter().enumerate() {
            coeff = &coeff + &rhs.coefficient(t).scale(&inv[(a, b)]);
        }
        out = &out + &Form::from_term(model, mono, coeff);
    }
    out
}

/// Whether `Gamma` computed with `lambda * theta` agrees with `Gamma`.
pub fn gamma_invariance_check(omega: &Form, lambda: &Rational) -> Result<bool> {
    Ok(gamma_with_scale(omega, lambda)? == gamma(omega))
}

/// `L^{n+1-k}(theta ^ omega) = 0`, read as `theta ^ omega = 0` once
/// `k >= n+1`.
pub fn is_primitive(omega: &Form) -> bool {
    let model = omega.model();
    let power = (model.n() as i32 + 1 - omega.degree()).max(0) as usize;
    model
        .theta()
        .wedge(omega)
        .lefschetz(power)
        .expect("theta ^ omega is vertical")
        .is_zero()
}

/// Membership in the Rumin space, tested by the wedge conditions on
/// `omega` and `d omega`.
pub fn in_rumin(omega: &Form) -> bool {
    let model = omega.model();
    let n = model.n() as i32;
    let k = omega.degree();
    let theta = model.theta();
    let d_omega = omega.exterior_d();
    let (p1, p2) = if k <= n {
        ((n + 1 - k) as usize, (n - k) as usize)
    } else {
        (0, 0)
    };
    let first = theta.wedge(omega).wedge_dtheta_power(p1);
    let second = theta.wedge(&d_omega).wedge_dtheta_power(p2);
    first.is_zero() && second.is_zero()
}

/// Membership in the Rumin space via `Gamma omega = Gamma d omega = 0`.
pub fn in_rumin_by_gamma(omega: &Form) -> bool {
    gamma(omega).is_zero() && gamma(&omega.exterior_d()).is_zero()
}

/// `omega - d Gamma omega - Gamma d omega`.
pub fn pi_form(omega: &Form) -> Form {
    let dg = gamma(omega).exterior_d();
    let gd = gamma(&omega.exterior_d());
    &(omega - &dg) - &gd
}

/// The Rumin projection; its output is certified.
pub fn pi(omega: &Form) -> RuminElement {
    RuminElement {
        form: pi_form(omega),
        certified: true,
    }
}

/// A form together with a flag recording that its membership in the Rumin
/// complex has been established.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuminElement {
    form: Form,
    certified: bool,
}

impl RuminElement {
    /// Checks membership and certifies.
    pub fn certify(form: Form) -> Result<Self> {
        if !in_rumin(&form) {
            return Err(Error::Domain(format!("{form} is not in the Rumin complex")));
        }
        Ok(RuminElement {
            form,
            certified: true,
        })
    }

    /// Wraps a form without any membership claim.
    pub fn uncertified(form: Form) -> Self {
        RuminElement {
            form,
            certified: false,
        }
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    pub fn into_form(self) -> Form {
        self.form
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    pub fn degree(&self) -> i32 {
        self.form.degree()
    }
}

fn require_certified(args: &[&RuminElement]) -> Result<()> {
    match args.iter().find(|a| !a.certified) {
        Some(a) => Err(Error::Domain(format!(
            "{} is not a certified Rumin element",
            a.form
        ))),
        None => Ok(()),
    }
}

fn m2_form(a: &Form, b: &Form) -> Form {
    pi_form(&a.wedge(b))
}

fn gamma_mu(a: &Form, b: &Form) -> Form {
    gamma(&a.wedge(b))
}

fn m3_form(a: &Form, b: &Form, c: &Form) -> Form {
    let left = gamma_mu(a, b).wedge(c);
    // (1 (x) Gamma mu)(a (x) b (x) c) passes Gamma mu over a
    let sign = koszul_operator_sign(GAMMA_DEGREE, a.degree());
    let right = a.wedge(&gamma_mu(b, c)).signed(sign);
    pi_form(&(&left - &right))
}

fn zero_output(args: &[Form], op_degree: i32) -> Form {
    let degree = args.iter().map(Form::degree).sum::<i32>() + op_degree;
    Form::zero(args[0].model(), degree)
}

pub fn m1(a: &RuminElement) -> Result<RuminElement> {
    require_certified(&[a])?;
    Ok(RuminElement {
        form: a.form.exterior_d(),
        certified: true,
    })
}

pub fn m2(a: &RuminElement, b: &RuminElement) -> Result<RuminElement> {
    require_certified(&[a, b])?;
    a.form.model().check_same(b.form.model())?;
    Ok(RuminElement {
        form: m2_form(&a.form, &b.form),
        certified: true,
    })
}

pub fn m3(a: &RuminElement, b: &RuminElement, c: &RuminElement) -> Result<RuminElement> {
    require_certified(&[a, b, c])?;
    a.form.model().check_same(b.form.model())?;
    a.form.model().check_same(c.form.model())?;
    Ok(RuminElement {
        form: m3_form(&a.form, &b.form, &c.form),
        certified: true,
    })
}

/// `m_k` for `k >= 4`, which vanishes.
pub fn mk_zero(args: &[&RuminElement]) -> Result<RuminElement> {
    if args.len() < 4 {
        return Err(Error::Domain(format!(
            "mk_zero is for arities k >= 4, got {}",
            args.len()
        )));
    }
    require_certified(args)?;
    let forms: Vec<Form> = args.iter().map(|a| a.form.clone()).collect();
    Ok(RuminElement {
        form: zero_output(&forms, algebra_op_degree(args.len())),
        certified: true,
    })
}

pub fn f1(a: &RuminElement) -> Result<Form> {
    require_certified(&[a])?;
    Ok(a.form.clone())
}

pub fn f2(a: &RuminElement, b: &RuminElement) -> Result<Form> {
    require_certified(&[a, b])?;
    a.form.model().check_same(b.form.model())?;
    Ok(-gamma_mu(&a.form, &b.form))
}

/// `f_k` for `k >= 3`, which vanishes.
pub fn fk_zero(args: &[&RuminElement]) -> Result<Form> {
    if args.len() < 3 {
        return Err(Error::Domain(format!(
            "fk_zero is for arities k >= 3, got {}",
            args.len()
        )));
    }
    require_certified(args)?;
    let forms: Vec<Form> = args.iter().map(|a| a.form.clone()).collect();
    Ok(zero_output(&forms, morphism_op_degree(args.len())))
}

/// The closed-form Rumin structure `m` and quasi-isomorphism `f` through
/// `max_arity`, as operator families on forms. Inputs are assumed to lie in
/// the Rumin complex.
pub struct RuminStructure {
    pub m: GradedOpSet<Form, Form>,
    pub f: GradedOpSet<Form, Form>,
}

pub fn closed_form_structure(max_arity: usize) -> RuminStructure {
    let mut m = GradedOpSet::new("Rumin m");
    let mut f = GradedOpSet::new("Rumin f");
    for k in 1..=max_arity {
        let (md, fd) = (algebra_op_degree(k), morphism_op_degree(k));
        match k {
            1 => {
                m.push(md, |x: &[Form]| x[0].exterior_d());
                f.push(fd, |x: &[Form]| x[0].clone());
            }
            2 => {
                m.push(md, |x: &[Form]| m2_form(&x[0], &x[1]));
                f.push(fd, |x: &[Form]| -gamma_mu(&x[0], &x[1]));
            }
            3 => {
                m.push(md, |x: &[Form]| m3_form(&x[0], &x[1], &x[2]));
                f.push(fd, move |x: &[Form]| zero_output(x, fd));
            }
            _ => {
                m.push(md, move |x: &[Form]| zero_output(x, md));
                f.push(fd, move |x: &[Form]| zero_output(x, fd));
            }
        }
    }
    RuminStructure { m, f }
}

/// The de Rham algebra `(A, d, mu)` as an operator family: `d`, wedge, and
/// zero in arities `>= 3`.
pub fn de_rham_structure(max_arity: usize) -> GradedOpSet<Form, Form> {
    let mut m = GradedOpSet::new("de Rham");
    for k in 1..=max_arity {
        let md = algebra_op_degree(k);
        match k {
            1 => m.push(md, |x: &[Form]| x[0].exterior_d()),
            2 => m.push(md, |x: &[Form]| x[0].wedge(&x[1])),
            _ => m.push(md, move |x: &[Form]| zero_output(x, md)),
        }
    }
    m
}

/// The deformation retract `(A, d) <-> (R, d)` with homotopy `Gamma`, both
/// sides represented by forms. Returned unverified.
pub fn rumin_retract() -> RetractData<Form, Form> {
    RetractData::new(
        Arc::new(Form::exterior_d),
        Arc::new(|a: &Form, b: &Form| a.wedge(b)),
        Arc::new(gamma),
        Arc::new(Form::exterior_d),
        Arc::new(Form::clone),
        Arc::new(pi_form),
    )
}

/// Vertical constant coframe monomials of degree `k`, as forms; handy for
/// sweeping `Gamma` over a basis.
pub fn vertical_basis_forms(model: &ContactModel, k: usize) -> Vec<Form> {
    model
        .vertical_basis(k)
        .into_iter()
        .map(|m: Monomial| Form::from_term(model, m, Poly::one(model.dim())))
        .collect()
}
