//! The finite model: left-invariant forms on the Heisenberg group, i.e. the
//! Chevalley–Eilenberg algebra of the Heisenberg Lie algebra, with the
//! Rumin retract obtained by restricting `Gamma`, `pi` and `i` to
//! constant-coefficient forms.
//!
//! For `n = 1` this is `Lambda(a, b, c)` with `a = dx1`, `b = dy1`,
//! `c = theta` and `dc = a ^ b`; its Rumin subcomplex is spanned by
//! `1; a, b; c^a, c^b; c^a^b`.

use std::sync::Arc;

use crate::cinfty::finite::{FiniteGradedAlgebra, FiniteVector, GradedBasis, GradedLinearMap};
use crate::cinfty::graded::{GradedElement, GradedOpSet};
use crate::cinfty::transfer::{markl_transfer, RetractData};
use crate::error::{Error, Result};
use crate::forms::{ContactModel, Form, Monomial};
use crate::linalg::Matrix;
use crate::poly::{Poly, Rational};
use crate::rumin::{gamma, pi_form};

/// Coframe monomials in the order used for the finite basis: by degree,
/// then canonically.
fn ordered_monomials(model: &ContactModel) -> Vec<Monomial> {
    (0..=model.dim()).flat_map(|k| model.basis(k)).collect()
}

/// Converts between constant-coefficient forms and vectors of the
/// invariant-form algebra.
#[derive(Clone, Debug)]
pub struct InvariantForms {
    model: ContactModel,
    monomials: Vec<Monomial>,
    basis: Arc<GradedBasis>,
}

impl InvariantForms {
    pub fn new(model: &ContactModel) -> Result<Self> {
        let monomials = ordered_monomials(model);
        let basis = GradedBasis::new(
            monomials
                .iter()
                .map(|&m| (model.monomial_name(m), m.degree() as i32))
                .collect(),
        )?;
        Ok(InvariantForms {
            model: model.clone(),
            monomials,
            basis,
        })
    }

    pub fn basis(&self) -> &Arc<GradedBasis> {
        &self.basis
    }

    pub fn to_vector(&self, form: &Form) -> Result<FiniteVector> {
        let mut v = FiniteVector::zero(&self.basis, form.degree());
        for (m, p) in form.terms() {
            let c = p.constant_value().ok_or_else(|| {
                Error::Domain(format!("{form} does not have constant coefficients"))
            })?;
            let i = self.monomials.iter().position(|x| x == m).expect("coframe monomial");
            v = v.plus(&FiniteVector::basis_vector(&self.basis, i).scaled(&c));
        }
        Ok(v)
    }

    pub fn to_form(&self, v: &FiniteVector) -> Form {
        let mut out = Form::zero(&self.model, v.degree());
        for (i, c) in v.entries() {
            let p = Poly::constant(self.model.dim(), c.clone());
            out = &out + &Form::from_term(&self.model, self.monomials[i], p);
        }
        out
    }

    fn lift<'a>(
        &'a self,
        f: impl Fn(&Form) -> Form + 'a,
    ) -> impl Fn(&FiniteVector) -> FiniteVector + 'a {
        move |v| {
            self.to_vector(&f(&self.to_form(v)))
                .expect("operator preserves constant coefficients")
        }
    }
}

/// The Chevalley–Eilenberg algebra of the `(2n+1)`-dimensional Heisenberg
/// Lie algebra.
pub fn ce_algebra(model: &ContactModel) -> Result<FiniteGradedAlgebra> {
    let inv = InvariantForms::new(model)?;
    ce_algebra_from(&inv)
}

fn ce_algebra_from(inv: &InvariantForms) -> Result<FiniteGradedAlgebra> {
    let basis = inv.basis().clone();
    let d = GradedLinearMap::from_fn(&basis, &basis, 1, inv.lift(Form::exterior_d));
    let products = (0..basis.len())
        .map(|i| {
            let a = inv.to_form(&FiniteVector::basis_vector(&basis, i));
            (0..basis.len())
                .map(|j| {
                    let b = inv.to_form(&FiniteVector::basis_vector(&basis, j));
                    inv.to_vector(&a.wedge(&b))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    FiniteGradedAlgebra::new(basis, d, products)
}

/// The invariant-form algebra, its Rumin subcomplex, the verified retract
/// between them and the transferred structure.
pub struct FiniteRuminModel {
    pub forms: InvariantForms,
    pub ce: Arc<FiniteGradedAlgebra>,
    /// The Rumin subcomplex with the transferred product `m2`.
    pub rumin: Arc<FiniteGradedAlgebra>,
    pub include: Arc<GradedLinearMap>,
    pub project: Arc<GradedLinearMap>,
    pub homotopy: Arc<GradedLinearMap>,
    pub retract: Arc<RetractData<FiniteVector, FiniteVector>>,
    pub m: GradedOpSet<FiniteVector, FiniteVector>,
    pub f: GradedOpSet<FiniteVector, FiniteVector>,
}

/// Builds the finite Rumin model for `model`, with the transferred
/// operations through `max_arity`.
pub fn finite_rumin_model(model: &ContactModel, max_arity: usize) -> Result<FiniteRuminModel> {
    let inv = InvariantForms::new(model)?;
    let ce = Arc::new(ce_algebra_from(&inv)?);
    let ce_basis = inv.basis().clone();

    let project_ce = GradedLinearMap::from_fn(&ce_basis, &ce_basis, 0, inv.lift(pi_form));
    let homotopy = Arc::new(GradedLinearMap::from_fn(&ce_basis, &ce_basis, -1, inv.lift(gamma)));

    // Basis of the image of pi: pivot columns of each degree block.
    let mut entries = Vec::new();
    let mut chosen: Vec<(i32, Vec<Vec<Rational>>)> = Vec::new();
    for k in ce_basis.degrees().collect::<Vec<_>>() {
        let block = project_ce.block(k);
        let ech = block.echelon();
        let cols: Vec<Vec<Rational>> = ech.pivots.iter().map(|&c| block.column(c)).collect();
        for (j, col) in cols.iter().enumerate() {
            let v = FiniteVector::from_coords(&ce_basis, k, col.clone())?;
            let mut nz = v.entries();
            let label = match (nz.next(), nz.next()) {
                (Some((i, c)), None) if *c == Rational::from_integer(1.into()) => {
                    ce_basis.label(i).to_string()
                }
                _ => format!("r{k}_{j}"),
            };
            entries.push((label, k));
        }
        chosen.push((k, cols));
    }
    let rumin_basis = GradedBasis::new(entries)?;

    let mut include = GradedLinearMap::new(&rumin_basis, &ce_basis, 0);
    let mut project = GradedLinearMap::new(&ce_basis, &rumin_basis, 0);
    for (k, cols) in &chosen {
        let frame = Matrix::from_columns(ce_basis.dim(*k), cols);
        let r_idx = rumin_basis.indices_in_degree(*k).to_vec();
        let c_idx = ce_basis.indices_in_degree(*k).to_vec();
        for (j, col) in cols.iter().enumerate() {
            for (s, c) in col.iter().enumerate() {
                include.set_entry(r_idx[j], c_idx[s], c.clone())?;
            }
        }
        let block = project_ce.block(*k);
        for (s, &ci) in c_idx.iter().enumerate() {
            let coords = frame
                .solve(&block.column(s))
                .ok_or_else(|| Error::Construction("pi image outside its span".to_string()))?;
            for (j, c) in coords.into_iter().enumerate() {
                project.set_entry(ci, r_idx[j], c)?;
            }
        }
    }
    let include = Arc::new(include);
    let project = Arc::new(project);

    let d_rumin = {
        let (ce, inc, proj) = (ce.clone(), include.clone(), project.clone());
        GradedLinearMap::from_fn(&rumin_basis, &rumin_basis, 1, move |v| {
            proj.apply(&ce.d(&inc.apply(v)))
        })
    };
    let products = (0..rumin_basis.len())
        .map(|i| {
            let a = include.apply(&FiniteVector::basis_vector(&rumin_basis, i));
            (0..rumin_basis.len())
                .map(|j| {
                    let b = include.apply(&FiniteVector::basis_vector(&rumin_basis, j));
                    project.apply(&ce.mul(&a, &b))
                })
                .collect()
        })
        .collect();
    let rumin = Arc::new(FiniteGradedAlgebra::new_with_product(
        rumin_basis.clone(),
        d_rumin,
        products,
    )?);

    let mut retract = {
        let (ce_d, ce_mu, h, r_d, inc, proj) = (
            ce.clone(),
            ce.clone(),
            homotopy.clone(),
            rumin.clone(),
            include.clone(),
            project.clone(),
        );
        RetractData::new(
            Arc::new(move |v: &FiniteVector| ce_d.d(v)),
            Arc::new(move |a: &FiniteVector, b: &FiniteVector| ce_mu.mul(a, b)),
            Arc::new(move |v: &FiniteVector| h.apply(v)),
            Arc::new(move |v: &FiniteVector| r_d.d(v)),
            Arc::new(move |v: &FiniteVector| inc.apply(v)),
            Arc::new(move |v: &FiniteVector| proj.apply(v)),
        )
    };
    let a_samples: Vec<FiniteVector> = (0..ce_basis.len())
        .map(|i| FiniteVector::basis_vector(&ce_basis, i))
        .collect();
    let b_samples: Vec<FiniteVector> = (0..rumin_basis.len())
        .map(|i| FiniteVector::basis_vector(&rumin_basis, i))
        .collect();
    retract.verify(&a_samples, &b_samples)?;
    let retract = Arc::new(retract);
    let (m, f) = markl_transfer(retract.clone(), max_arity)?;

    Ok(FiniteRuminModel {
        forms: inv,
        ce,
        rumin,
        include,
        project,
        homotopy,
        retract,
        m,
        f,
    })
}

impl FiniteRuminModel {
    pub fn rumin_basis_vectors(&self) -> Vec<FiniteVector> {
        let b = self.rumin.basis();
        (0..b.len()).map(|i| FiniteVector::basis_vector(b, i)).collect()
    }

    pub fn rumin_vector(&self, label: &str) -> Option<FiniteVector> {
        self.rumin.basis_vector(label)
    }
}
