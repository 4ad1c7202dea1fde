//! Fixed inputs shared by the benchmarks.

use rumin_core::random::{trial_rng, FormSampler};
use rumin_core::{ContactModel, Form};

/// A reproducible random form of degree `k` on `H^{2n+1}`.
pub fn sample_form(n: usize, k: usize, max_poly_degree: u32, trial: u64) -> Form {
    let model = ContactModel::new(n).expect("valid n");
    let mut rng = trial_rng(0xBE7C, k as u64, trial);
    FormSampler::new(max_poly_degree).form(&mut rng, &model, k)
}

/// A reproducible Rumin element of degree `k` on `H^{2n+1}`.
pub fn sample_rumin(n: usize, k: usize, max_poly_degree: u32, trial: u64) -> Form {
    let model = ContactModel::new(n).expect("valid n");
    let mut rng = trial_rng(0xBE7C, 100 + k as u64, trial);
    FormSampler::new(max_poly_degree)
        .rumin_element(&mut rng, &model, k)
        .into_form()
}
