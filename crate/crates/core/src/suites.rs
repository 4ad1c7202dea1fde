//! Seeded verification suites over the closed-form Rumin structure, the
//! homotopy transfer and the finite model.
//!
//! Every suite returns a [`VerifyReport`]. Two runs with the same
//! [`VerifyConfig`] produce the same report apart from `wall_time_ms`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use num_traits::Zero;
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cinfty::finite::{check_ring_isomorphism, cohomology, FiniteVector};
use crate::cinfty::graded::{algebra_op_degree, GradedElement, GradedOpSet};
use crate::cinfty::relations::{check_morphism, check_shuffle_vanishing, check_stasheff};
use crate::cinfty::transfer::markl_transfer;
use crate::error::{Error, Result};
use crate::forms::{lefschetz_power_matrix, ContactModel, Form, MAX_N};
use crate::model::finite_rumin_model;
use crate::poly::{int, rat};
use crate::random::{trial_rng, FormSampler};
use crate::rumin::{
    closed_form_structure, de_rham_structure, gamma, gamma_with_scale, in_rumin, in_rumin_by_gamma,
    is_primitive, pi_form, rumin_retract, RuminStructure,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Dsq,
    Leibniz,
    DsaLemma,
    LefschetzIso,
    GammaProps,
    GammaInvariance,
    Retract,
    RuminMembership,
    Stasheff,
    ShuffleVanishing,
    Morphism,
    TransferMatch,
    HigherVanish,
    CeCohomology,
    All,
}

impl Suite {
    /// Every suite except `All`, in run order.
    pub const INDIVIDUAL: [Suite; 14] = [
        Suite::Dsq,
        Suite::Leibniz,
        Suite::DsaLemma,
        Suite::LefschetzIso,
        Suite::GammaProps,
        Suite::GammaInvariance,
        Suite::Retract,
        Suite::RuminMembership,
        Suite::Stasheff,
        Suite::ShuffleVanishing,
        Suite::Morphism,
        Suite::TransferMatch,
        Suite::HigherVanish,
        Suite::CeCohomology,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Dsq => "dsq",
            Suite::Leibniz => "leibniz",
            Suite::DsaLemma => "dsa-lemma",
            Suite::LefschetzIso => "lefschetz-iso",
            Suite::GammaProps => "gamma-props",
            Suite::GammaInvariance => "gamma-invariance",
            Suite::Retract => "retract",
            Suite::RuminMembership => "rumin-membership",
            Suite::Stasheff => "stasheff",
            Suite::ShuffleVanishing => "shuffle-vanishing",
            Suite::Morphism => "morphism",
            Suite::TransferMatch => "transfer-match",
            Suite::HigherVanish => "higher-vanish",
            Suite::CeCohomology => "ce-cohomology",
            Suite::All => "all",
        }
    }

    pub fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => Suite::INDIVIDUAL.to_vec(),
            s => vec![s],
        }
    }

    /// Suites that ignore the trial count and run once.
    pub fn is_deterministic(self) -> bool {
        matches!(self, Suite::LefschetzIso | Suite::CeCohomology)
    }

    fn stream(self) -> u64 {
        self as u64
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::INDIVIDUAL
            .iter()
            .chain(std::iter::once(&Suite::All))
            .copied()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown suite '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyConfig {
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub max_poly_degree: u32,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            n: 1,
            trials: 100,
            seed: 0,
            max_poly_degree: 2,
        }
    }
}

/// A failed check: the inputs and the nonzero residual, printed as form
/// expressions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Witness {
    pub trial: u64,
    pub check: String,
    pub inputs: Vec<String>,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyReport {
    pub suite: String,
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub max_poly_degree: u32,
    pub passed: bool,
    pub checks: u64,
    pub failures: Vec<Witness>,
    pub notes: Vec<String>,
    pub version: String,
    pub wall_time_ms: u64,
}

impl VerifyReport {
    /// The report with the timing field cleared, for comparisons.
    pub fn without_timing(&self) -> Self {
        VerifyReport {
            wall_time_ms: 0,
            ..self.clone()
        }
    }
}

/// Checks and failures of one trial.
struct Tally {
    trial: u64,
    checks: u64,
    failures: Vec<Witness>,
    notes: Vec<String>,
}

impl Tally {
    fn new(trial: u64) -> Self {
        Tally {
            trial,
            checks: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn fail(&mut self, check: &str, inputs: Vec<String>, residual: String) {
        self.failures.push(Witness {
            trial: self.trial,
            check: check.to_string(),
            inputs,
            residual,
        });
    }

    fn zero<X: GradedElement>(&mut self, check: &str, inputs: impl FnOnce() -> Vec<String>, residual: &X) {
        self.checks += 1;
        if !residual.is_zero() {
            self.fail(check, inputs(), residual.to_string());
        }
    }

    fn equal<X: GradedElement>(&mut self, check: &str, inputs: impl FnOnce() -> Vec<String>, lhs: &X, rhs: &X) {
        self.zero(check, inputs, &lhs.plus(&rhs.negated()));
    }

    fn holds(&mut self, check: &str, inputs: impl FnOnce() -> Vec<String>, ok: bool, residual: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.fail(check, inputs(), residual());
        }
    }

    fn result<X: GradedElement>(&mut self, check: &str, inputs: impl FnOnce() -> Vec<String>, r: Result<X>) {
        match r {
            Ok(x) => self.zero(check, inputs, &x),
            Err(e) => {
                self.checks += 1;
                self.fail(check, inputs(), format!("error: {e}"));
            }
        }
    }

    fn merge(&mut self, other: Tally) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
        self.notes.extend(other.notes);
    }
}

fn show<X: fmt::Display>(xs: &[X]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn run_trials<F>(cfg: &VerifyConfig, suite: Suite, body: F) -> Tally
where
    F: Fn(&mut SplitMix64, &mut Tally) + Sync,
{
    let tallies: Vec<Tally> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(cfg.seed, suite.stream(), t);
            let mut tally = Tally::new(t);
            body(&mut rng, &mut tally);
            tally
        })
        .collect();
    let mut total = Tally::new(0);
    for t in tallies {
        total.merge(t);
    }
    total
}

fn check_config(cfg: &VerifyConfig) -> Result<ContactModel> {
    if cfg.trials == 0 {
        return Err(Error::Domain("trials must be at least 1".to_string()));
    }
    if cfg.n == 0 || cfg.n > MAX_N {
        return Err(Error::Dimension(format!(
            "n must lie in 1..={MAX_N}, got {}",
            cfg.n
        )));
    }
    ContactModel::new(cfg.n)
}

fn finish(suite: Suite, cfg: &VerifyConfig, tally: Tally, started: Instant) -> VerifyReport {
    VerifyReport {
        suite: suite.name().to_string(),
        n: cfg.n,
        trials: if suite.is_deterministic() { 1 } else { cfg.trials },
        seed: cfg.seed,
        max_poly_degree: cfg.max_poly_degree,
        passed: tally.failures.is_empty(),
        checks: tally.checks,
        failures: tally.failures,
        notes: tally.notes,
        version: env!("CARGO_PKG_VERSION").to_string(),
        wall_time_ms: started.elapsed().as_millis() as u64,
    }
}

/// Runs `suite`, expanding `All` into every individual suite.
pub fn run(suite: Suite, cfg: &VerifyConfig) -> Result<Vec<VerifyReport>> {
    suite.expand().into_iter().map(|s| run_suite(s, cfg)).collect()
}

/// Runs one suite against the closed-form Rumin structure.
pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Result<VerifyReport> {
    run_suite_with(suite, cfg, &closed_form_structure(5))
}

/// Runs one suite, taking the Rumin operations from `structure` wherever a
/// suite uses them (`stasheff`, `shuffle-vanishing`, `morphism`,
/// `transfer-match`). `structure` must define arities through 5.
pub fn run_suite_with(suite: Suite, cfg: &VerifyConfig, structure: &RuminStructure) -> Result<VerifyReport> {
    let model = check_config(cfg)?;
    if structure.m.max_arity() < 5 || structure.f.max_arity() < 5 {
        return Err(Error::Domain(
            "suite structures must define operations through arity 5".to_string(),
        ));
    }
    let started = Instant::now();
    let sampler = FormSampler::new(cfg.max_poly_degree);
    let ctx = Ctx {
        model: &model,
        sampler: &sampler,
        structure,
    };
    let tally = match suite {
        Suite::All => {
            return Err(Error::Domain(
                "'all' expands into several reports; use run".to_string(),
            ))
        }
        Suite::LefschetzIso => lefschetz_iso(&model),
        Suite::CeCohomology => ce_cohomology(&model)?,
        Suite::TransferMatch | Suite::HigherVanish => transfer_suite(suite, cfg, &ctx)?,
        _ => run_trials(cfg, suite, |rng, t| ctx.trial(suite, rng, t)),
    };
    Ok(finish(suite, cfg, tally, started))
}

struct Ctx<'a> {
    model: &'a ContactModel,
    sampler: &'a FormSampler,
    structure: &'a RuminStructure,
}

impl Ctx<'_> {
    fn dim(&self) -> usize {
        self.model.dim()
    }

    fn form(&self, rng: &mut SplitMix64, k: usize) -> Form {
        self.sampler.form(rng, self.model, k)
    }

    fn vertical(&self, rng: &mut SplitMix64, k: usize) -> Form {
        self.sampler.vertical_form(rng, self.model, k)
    }

    fn trial(&self, suite: Suite, rng: &mut SplitMix64, t: &mut Tally) {
        match suite {
            Suite::Dsq => self.dsq(rng, t),
            Suite::Leibniz => self.leibniz(rng, t),
            Suite::DsaLemma => self.dsa_lemma(rng, t),
            Suite::GammaProps => self.gamma_props(rng, t),
            Suite::GammaInvariance => self.gamma_invariance(rng, t),
            Suite::Retract => self.retract(rng, t),
            Suite::RuminMembership => self.rumin_membership(rng, t),
            Suite::Stasheff => self.stasheff(rng, t),
            Suite::ShuffleVanishing => self.shuffle_vanishing(rng, t),
            Suite::Morphism => self.morphism(rng, t),
            _ => unreachable!("{suite} is not a per-trial suite"),
        }
    }

    fn dsq(&self, rng: &mut SplitMix64, t: &mut Tally) {
        for k in 0..=self.dim() {
            let w = self.form(rng, k);
            t.zero("d d w = 0", || show(&[&w]), &w.exterior_d().exterior_d());
        }
    }

    fn leibniz(&self, rng: &mut SplitMix64, t: &mut Tally) {
        let dim = self.dim();
        let degrees: Vec<usize> = (0..3).map(|_| rand::Rng::random_range(rng, 0..=dim)).collect();
        let a = self.form(rng, degrees[0]);
        let b = self.form(rng, degrees[1]);
        let c = self.form(rng, degrees[2]);
        let sign = if a.degree() % 2 == 0 { 1 } else { -1 };
        let lhs = a.wedge(&b).exterior_d();
        let rhs = &a.exterior_d().wedge(&b) + &a.wedge(&b.exterior_d()).signed(sign);
        t.equal("d(a^b) = da^b + (-1)^|a| a^db", || show(&[&a, &b]), &lhs, &rhs);
        let swap = if (a.degree() * b.degree()) % 2 == 0 { 1 } else { -1 };
        t.equal(
            "a^b = (-1)^(|a||b|) b^a",
            || show(&[&a, &b]),
            &a.wedge(&b),
            &b.wedge(&a).signed(swap),
        );
        t.equal(
            "(a^b)^c = a^(b^c)",
            || show(&[&a, &b, &c]),
            &a.wedge(&b).wedge(&c),
            &a.wedge(&b.wedge(&c)),
        );
    }

    fn dsa_lemma(&self, rng: &mut SplitMix64, t: &mut Tally) {
        let theta = self.model.theta();
        let dtheta = self.model.dtheta();
        for k in 1..=self.dim() {
            let w = self.vertical(rng, k);
            t.equal(
                "theta^dw = w^dtheta",
                || show(&[&w]),
                &theta.wedge(&w.exterior_d()),
                &w.wedge(&dtheta),
            );
        }
    }

    fn gamma_props(&self, rng: &mut SplitMix64, t: &mut Tally) {
        let n = self.model.n();
        for k in 0..=self.dim() {
            let v = self.vertical(rng, k);
            t.zero("Gamma(vertical) = 0", || show(&[&v]), &gamma(&v));
            let w = self.form(rng, k);
            let gw = gamma(&w);
            t.equal("Gamma d Gamma = Gamma", || show(&[&w]), &gamma(&gw.exterior_d()), &gw);
            t.holds("Gamma w is vertical", || show(&[&w]), gw.is_vertical(), || gw.to_string());
            t.zero("Gamma Gamma = 0", || show(&[&w]), &gamma(&gw));
            if (1..=n).contains(&k) {
                t.equal("Gamma d = 1 on vertical forms", || show(&[&v]), &gamma(&v.exterior_d()), &v);
            }
        }
    }

    fn gamma_invariance(&self, rng: &mut SplitMix64, t: &mut Tally) {
        for k in 0..=self.dim() {
            let w = self.form(rng, k);
            let g = gamma(&w);
            for lambda in [int(2), rat(3, 7)] {
                let check = format!("Gamma under theta -> {lambda} theta");
                match gamma_with_scale(&w, &lambda) {
                    Ok(gl) => t.equal(&check, || show(&[&w]), &gl, &g),
                    Err(e) => {
                        t.checks += 1;
                        t.fail(&check, show(&[&w]), format!("error: {e}"));
                    }
                }
            }
        }
    }

    fn retract(&self, rng: &mut SplitMix64, t: &mut Tally) {
        for k in 0..=self.dim() {
            let w = self.form(rng, k);
            let p = pi_form(&w);
            t.equal("pi pi = pi", || show(&[&w]), &pi_form(&p), &p);
            t.equal(
                "d pi = pi d",
                || show(&[&w]),
                &p.exterior_d(),
                &pi_form(&w.exterior_d()),
            );
            let structural = &(&w - &gamma(&w).exterior_d()) - &gamma(&w.exterior_d());
            t.equal("i pi = 1 - d Gamma - Gamma d", || show(&[&w]), &p, &structural);
            let r = self.sampler.rumin_element(rng, self.model, k).into_form();
            t.equal("pi i = 1", || show(&[&r]), &pi_form(&r), &r);
            t.zero("Gamma i = 0", || show(&[&r]), &gamma(&r));
            t.holds("pi w lies in R", || show(&[&w]), in_rumin(&p), || p.to_string());
        }
    }

    fn rumin_membership(&self, rng: &mut SplitMix64, t: &mut Tally) {
        for k in 0..=self.dim() {
            let w = self.form(rng, k);
            let (a, b) = (in_rumin(&w), in_rumin_by_gamma(&w));
            t.holds(
                "wedge criterion = Gamma criterion",
                || show(&[&w]),
                a == b,
                || format!("wedge criterion {a}, Gamma criterion {b}"),
            );
            let r = self.sampler.rumin_element(rng, self.model, k).into_form();
            let (a, b) = (in_rumin(&r), in_rumin_by_gamma(&r));
            t.holds(
                "pi w passes both criteria",
                || show(&[&r]),
                a && b,
                || format!("wedge criterion {a}, Gamma criterion {b}"),
            );
            let dr = r.exterior_d();
            t.holds("d preserves R", || show(&[&r]), in_rumin(&dr), || dr.to_string());
            t.holds("R is primitive", || show(&[&r]), is_primitive(&r), || r.to_string());
        }
    }

    fn stasheff(&self, rng: &mut SplitMix64, t: &mut Tally) {
        for order in 1..=5 {
            let xs = self.sampler.rumin_tuple(rng, self.model, order, 3 - order as i32);
            t.result(
                &format!("Stasheff relation of order {order}"),
                || show(&xs),
                check_stasheff(&self.structure.m, order, &xs),
            );
        }
    }

    fn shuffle_vanishing(&self, rng: &mut SplitMix64, t: &mut Tally) {
        for total in 2..=4 {
            for p in 1..total {
                let q = total - p;
                let xs = self.sampler.rumin_tuple(rng, self.model, total, 2 - total as i32);
                for (name, set) in [("m", &self.structure.m), ("f", &self.structure.f)] {
                    let check = format!("{name}{total} o nu_{{{p},{q}}} = 0");
                    match set.get(total) {
                        Ok(op) => t.result(&check, || show(&xs), check_shuffle_vanishing(op, p, q, &xs)),
                        Err(e) => {
                            t.checks += 1;
                            t.fail(&check, show(&xs), format!("error: {e}"));
                        }
                    }
                }
            }
        }
    }

    fn morphism(&self, rng: &mut SplitMix64, t: &mut Tally) {
        let target = de_rham_structure(4);
        for order in 1..=4 {
            let xs = self.sampler.rumin_tuple(rng, self.model, order, 2 - order as i32);
            t.result(
                &format!("A-infinity morphism relation of order {order}"),
                || show(&xs),
                check_morphism(&self.structure.f, &self.structure.m, &target, order, &xs),
            );
        }
    }
}

fn lefschetz_iso(model: &ContactModel) -> Tally {
    let mut t = Tally::new(0);
    for k in 1..=model.n() {
        let check = format!("L^{k} is invertible");
        match lefschetz_power_matrix(model, k) {
            Ok(m) => {
                let det = m.determinant();
                t.holds(&check, Vec::new, !det.is_zero(), || "determinant 0".to_string());
                t.notes.push(format!("det L^{k} = {det}"));
            }
            Err(e) => {
                t.checks += 1;
                t.fail(&check, Vec::new(), format!("error: {e}"));
            }
        }
    }
    let volume = model.theta().wedge_dtheta_power(model.n());
    t.holds(
        "theta^(dtheta)^n != 0",
        Vec::new,
        !volume.is_zero(),
        || volume.to_string(),
    );
    t
}

/// Transferred operations checked against the closed forms, or against zero
/// in arities where the closed forms vanish.
fn transfer_suite(suite: Suite, cfg: &VerifyConfig, ctx: &Ctx<'_>) -> Result<Tally> {
    let model = ctx.model;
    let mut rng = trial_rng(cfg.seed, suite.stream(), u64::MAX);
    let mut a_samples = Vec::new();
    let mut b_samples = Vec::new();
    for k in 0..=model.dim() {
        for _ in 0..2 {
            a_samples.push(ctx.sampler.form(&mut rng, model, k));
            b_samples.push(ctx.sampler.rumin_element(&mut rng, model, k).into_form());
        }
    }
    let mut retract = rumin_retract();
    retract.verify(&a_samples, &b_samples)?;
    let (tm, tf) = markl_transfer(Arc::new(retract), 5)?;
    let closed = ctx.structure;
    Ok(run_trials(cfg, suite, |rng, t| {
        let mut compare = |name: &str, arity: usize, shift: i32, ours: &GradedOpSet<Form, Form>, reference: Option<&GradedOpSet<Form, Form>>| {
            let xs = ctx.sampler.rumin_tuple(rng, model, arity, shift);
            let check = match reference {
                Some(_) => format!("transferred {name}{arity} = closed-form {name}{arity}"),
                None => format!("transferred {name}{arity} = 0"),
            };
            let residual = ours.eval(arity, &xs).and_then(|x| match reference {
                Some(r) => Ok(x.plus(&r.eval(arity, &xs)?.negated())),
                None => Ok(x),
            });
            t.result(&check, || show(&xs), residual);
        };
        match suite {
            Suite::TransferMatch => {
                compare("m", 2, 0, &tm, Some(&closed.m));
                compare("m", 3, -1, &tm, Some(&closed.m));
                compare("f", 2, 0, &tf, Some(&closed.f));
            }
            _ => {
                compare("m", 4, -2, &tm, None);
                compare("m", 5, -3, &tm, None);
                compare("f", 3, -1, &tf, None);
                compare("f", 4, -2, &tf, None);
            }
        }
    }))
}

/// Exhaustive arity for the finite-model checks: 5 on `H^3`, 3 above.
pub fn ce_exhaustive_arity(n: usize) -> usize {
    if n == 1 {
        5
    } else {
        3
    }
}

fn basis_tuples(basis: &[FiniteVector], arity: usize) -> Vec<Vec<FiniteVector>> {
    let mut out: Vec<Vec<FiniteVector>> = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                basis.iter().map(move |b| {
                    let mut next = prefix.clone();
                    next.push(b.clone());
                    next
                })
            })
            .collect();
    }
    out
}

fn ce_cohomology(model: &ContactModel) -> Result<Tally> {
    let arity = ce_exhaustive_arity(model.n());
    let fm = finite_rumin_model(model, arity)?;
    let mut t = Tally::new(0);

    let (hc, hr) = (cohomology(&fm.ce), cohomology(&fm.rumin));
    let betti = |h: &crate::cinfty::finite::Cohomology| -> Vec<usize> {
        h.betti_numbers().into_iter().map(|(_, b)| b).collect()
    };
    let (bc, br) = (betti(&hc), betti(&hr));
    t.notes.push(format!(
        "dimensions: CE {}, Rumin {}",
        fm.ce.basis().len(),
        fm.rumin.basis().len()
    ));
    t.notes.push(format!("Betti numbers CE: {bc:?}"));
    t.notes.push(format!("Betti numbers Rumin: {br:?}"));
    t.holds("Betti numbers agree", Vec::new, bc == br, || format!("{bc:?} vs {br:?}"));

    let include = fm.include.clone();
    let iso = check_ring_isomorphism(&move |v| include.apply(v), &fm.rumin, &fm.ce)?;
    t.notes.push(format!("ring isomorphism [f1]: {}", iso.is_isomorphism));
    t.holds("[f1] is a ring isomorphism", Vec::new, iso.is_isomorphism, || {
        iso.witnesses.join("; ")
    });

    let basis = fm.rumin_basis_vectors();
    let mut target: GradedOpSet<FiniteVector, FiniteVector> = GradedOpSet::new("CE algebra");
    for k in 1..=arity {
        let md = algebra_op_degree(k);
        let ce = fm.ce.clone();
        match k {
            1 => target.push(md, move |x: &[FiniteVector]| ce.d(&x[0])),
            2 => target.push(md, move |x: &[FiniteVector]| ce.mul(&x[0], &x[1])),
            _ => target.push(md, move |x: &[FiniteVector]| {
                let deg = x.iter().map(GradedElement::degree).sum::<i32>() + md;
                FiniteVector::zero(ce.basis(), deg)
            }),
        }
    }

    let mut exhaustive = |label: &str, order: usize, eval: &(dyn Fn(&[FiniteVector]) -> Result<FiniteVector> + Sync)| {
        let tallies: Vec<Tally> = basis_tuples(&basis, order)
            .par_iter()
            .map(|xs| {
                let mut tt = Tally::new(0);
                tt.result(label, || show(xs), eval(xs));
                tt
            })
            .collect();
        for tt in tallies {
            t.merge(tt);
        }
    };
    for order in 1..=arity {
        exhaustive(
            &format!("Stasheff relation of order {order}"),
            order,
            &|xs| check_stasheff(&fm.m, order, xs),
        );
    }
    for order in 1..=arity.min(4) {
        exhaustive(
            &format!("A-infinity morphism relation of order {order}"),
            order,
            &|xs| check_morphism(&fm.f, &fm.m, &target, order, xs),
        );
    }
    for total in 2..=arity.min(4) {
        for p in 1..total {
            let q = total - p;
            let (m, f) = (fm.m.get(total)?, fm.f.get(total)?);
            exhaustive(&format!("m{total} o nu_{{{p},{q}}} = 0"), total, &|xs| {
                check_shuffle_vanishing(m, p, q, xs)
            });
            exhaustive(&format!("f{total} o nu_{{{p},{q}}} = 0"), total, &|xs| {
                check_shuffle_vanishing(f, p, q, xs)
            });
        }
    }
    t.notes.push(format!(
        "exhaustive checks over {} basis elements through arity {arity}",
        basis.len()
    ));

    if model.n() == 1 {
        let a = fm.rumin_vector("dx1").expect("dx1 is in R");
        let b = fm.rumin_vector("dy1").expect("dy1 is in R");
        let ca = fm.rumin_vector("theta^dx1").expect("theta^dx1 is in R");
        let m3 = fm.m.eval(3, &[a.clone(), b.clone(), a.clone()])?;
        t.notes.push(format!("m3(dx1, dy1, dx1) = {m3}"));
        t.equal(
            "m3(dx1, dy1, dx1) = 2 theta^dx1",
            || show(&[&a, &b, &a]),
            &m3,
            &ca.scaled(&int(2)),
        );
        let class = hr.class_of(&fm.rumin, &m3)?;
        t.holds(
            "m3(dx1, dy1, dx1) has a nonzero class",
            || show(&[&m3]),
            class.iter().any(|c| !c.is_zero()),
            || format!("class coordinates {class:?}"),
        );
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(n: usize) -> VerifyConfig {
        VerifyConfig {
            n,
            trials: 3,
            seed: 11,
            max_poly_degree: 1,
        }
    }

    #[test]
    fn names_round_trip() {
        for s in Suite::INDIVIDUAL.iter().chain([Suite::All].iter()) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), *s);
        }
        assert!("nope".parse::<Suite>().is_err());
        assert_eq!(Suite::All.expand().len(), 14);
    }

    #[test]
    fn quick_runs_pass() {
        for s in Suite::INDIVIDUAL {
            let report = run_suite(s, &quick(1)).unwrap();
            assert!(report.passed, "{s}: {:?}", report.failures);
            assert!(report.checks > 0, "{s}");
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_suite(Suite::Retract, &quick(2)).unwrap();
        let b = run_suite(Suite::Retract, &quick(2)).unwrap();
        assert_eq!(a.without_timing(), b.without_timing());
    }

    #[test]
    fn bad_configs_are_rejected() {
        let mut cfg = quick(0);
        assert!(run_suite(Suite::Dsq, &cfg).is_err());
        cfg.n = 1;
        cfg.trials = 0;
        assert!(run_suite(Suite::Dsq, &cfg).is_err());
        assert!(run_suite(Suite::All, &quick(1)).is_err());
    }
}
