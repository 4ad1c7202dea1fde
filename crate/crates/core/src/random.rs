//! Seeded random forms for the verification suites.
//!
//! Streams come from SplitMix64. A trial stream is derived from the run seed,
//! a stream index and the trial counter, so trials can run in any order or in
//! parallel and still see the same inputs.

use rand::{Rng, RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::forms::{ContactModel, Form, Monomial};
use crate::poly::{int, Exponent, Poly};
use crate::rumin::{pi, RuminElement};

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn derive(parent: u64, index: u64) -> u64 {
    SplitMix64::seed_from_u64(parent ^ index.wrapping_mul(GOLDEN)).next_u64()
}

/// The generator for trial `trial` of stream `stream` under `seed`.
pub fn trial_rng(seed: u64, stream: u64, trial: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(derive(derive(seed, stream), trial))
}

/// Exponent vectors in `nvars` variables of total degree at most `max_degree`.
pub fn exponents_up_to(nvars: usize, max_degree: u32) -> Vec<Exponent> {
    fn go(nvars: usize, left: u32, prefix: &mut Exponent, out: &mut Vec<Exponent>) {
        if prefix.len() == nvars {
            out.push(prefix.clone());
            return;
        }
        for e in 0..=left {
            prefix.push(e as u16);
            go(nvars, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(nvars, max_degree, &mut Vec::with_capacity(nvars), &mut out);
    out
}

/// Random forms: each coframe monomial of the requested degree is kept with
/// probability `density`, with a coefficient polynomial of total degree at
/// most `max_poly_degree` whose coefficients are uniform in
/// `[-coeff_bound, coeff_bound]`. When no monomial is kept one is chosen
/// uniformly, so samples are nonzero unless every coefficient draw is 0.
#[derive(Clone, Debug)]
pub struct FormSampler {
    pub density: f64,
    pub max_poly_degree: u32,
    pub coeff_bound: i64,
}

impl FormSampler {
    pub fn new(max_poly_degree: u32) -> Self {
        FormSampler {
            density: 0.5,
            max_poly_degree,
            coeff_bound: 9,
        }
    }

    pub fn poly(&self, rng: &mut impl Rng, nvars: usize) -> Poly {
        let b = self.coeff_bound;
        Poly::from_terms(
            nvars,
            exponents_up_to(nvars, self.max_poly_degree)
                .into_iter()
                .map(|e| (e, int(rng.random_range(-b..=b)))),
        )
    }

    fn from_monomials(&self, rng: &mut impl Rng, model: &ContactModel, degree: usize, pool: Vec<Monomial>) -> Form {
        let mut out = Form::zero(model, degree as i32);
        if pool.is_empty() {
            return out;
        }
        let mut kept: Vec<Monomial> = pool
            .iter()
            .copied()
            .filter(|_| rng.random_bool(self.density))
            .collect();
        if kept.is_empty() {
            kept.push(pool[rng.random_range(0..pool.len())]);
        }
        for m in kept {
            let p = self.poly(rng, model.dim());
            out = &out + &Form::from_term(model, m, p);
        }
        out
    }

    pub fn form(&self, rng: &mut impl Rng, model: &ContactModel, degree: usize) -> Form {
        self.from_monomials(rng, model, degree, model.basis(degree))
    }

    /// A form with no `theta` factor.
    pub fn vertical_form(&self, rng: &mut impl Rng, model: &ContactModel, degree: usize) -> Form {
        self.from_monomials(rng, model, degree, model.vertical_basis(degree))
    }

    /// `pi` of a random form: an element of the Rumin complex.
    pub fn rumin_element(&self, rng: &mut impl Rng, model: &ContactModel, degree: usize) -> RuminElement {
        pi(&self.form(rng, model, degree))
    }

    /// Degrees for an `arity`-tuple whose total plus `shift` lands in
    /// `[0, 2n+1]`, drawn uniformly among such tuples by rejection.
    pub fn tuple_degrees(&self, rng: &mut impl Rng, model: &ContactModel, arity: usize, shift: i32) -> Vec<usize> {
        let dim = model.dim();
        loop {
            let degrees: Vec<usize> = (0..arity).map(|_| rng.random_range(0..=dim)).collect();
            let total = degrees.iter().sum::<usize>() as i32 + shift;
            if (0..=dim as i32).contains(&total) {
                return degrees;
            }
        }
    }

    /// A tuple of Rumin elements with degrees from [`Self::tuple_degrees`].
    pub fn rumin_tuple(&self, rng: &mut impl Rng, model: &ContactModel, arity: usize, shift: i32) -> Vec<Form> {
        self.tuple_degrees(rng, model, arity, shift)
            .into_iter()
            .map(|k| self.rumin_element(rng, model, k).into_form())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rumin::in_rumin;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a = trial_rng(7, 1, 3).next_u64();
        assert_eq!(a, trial_rng(7, 1, 3).next_u64());
        assert_ne!(a, trial_rng(7, 1, 4).next_u64());
        assert_ne!(a, trial_rng(7, 2, 3).next_u64());
        assert_ne!(a, trial_rng(8, 1, 3).next_u64());
    }

    #[test]
    fn exponent_counts() {
        // binomial(nvars + D, D)
        assert_eq!(exponents_up_to(3, 2).len(), 10);
        assert_eq!(exponents_up_to(5, 2).len(), 21);
        assert_eq!(exponents_up_to(1, 0).len(), 1);
    }

    #[test]
    fn samples_respect_shape() {
        let model = ContactModel::new(1).unwrap();
        let s = FormSampler::new(2);
        let mut rng = trial_rng(0, 0, 0);
        for k in 0..=3 {
            let f = s.form(&mut rng, &model, k);
            assert_eq!(f.degree(), k as i32);
            assert!(f.max_poly_degree() <= 2);
            let v = s.vertical_form(&mut rng, &model, k);
            assert!(v.is_vertical());
            assert!(in_rumin(s.rumin_element(&mut rng, &model, k).form()));
        }
        let degrees = s.tuple_degrees(&mut rng, &model, 5, -2);
        let total: usize = degrees.iter().sum();
        assert!((2..=5).contains(&total));
    }
}
