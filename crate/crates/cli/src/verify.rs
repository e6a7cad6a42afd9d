//! Property suites comparing measured errors with the analytic bounds on
//! oracle-sized Hubbard chains.

use num_complex::Complex64;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use majprop::fermion::pair_string;
use majprop::oracle::{
    best_truncation_error, dense_trotter_step, exact_heisenberg, trotter_only_reference, verify_weak_interaction_bound,
    weak_interaction_horizon, DenseOracle, HeisenbergEvolver,
};
use majprop::propagation::{apriori_error_bound, commutator_bound, trotter_bound_improved};
use majprop::{
    build_hubbard_1d, greedy_color_partition, mp_propagate, MajoranaPolynomial, MajoranaString, MpConfig,
    TruncationMode,
};

use crate::config::VerifySettings;
use crate::error::CliResult;

/// Relative slack on bound comparisons, covering floating-point rounding only.
const ROUNDING: f64 = 1e-12;

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub pass: bool,
    pub violations: usize,
    pub cases: Vec<serde_json::Value>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        Self { name: name.into(), pass: true, violations: 0, cases: Vec::new() }
    }

    fn case(&mut self, ok: bool, value: serde_json::Value) {
        if !ok {
            self.violations += 1;
            self.pass = false;
        }
        self.cases.push(value);
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suites: Vec<SuiteReport>,
    pub pass: bool,
}

impl VerifyReport {
    pub fn violations(&self) -> usize {
        self.suites.iter().map(|s| s.violations).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

pub const SUITES: [&str; 5] = ["commutator", "trotter", "apriori", "weak_interaction", "quadratic"];

fn within(measured: f64, bound: f64) -> bool {
    measured <= bound * (1.0 + ROUNDING) + 1e-14
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn random_string(rng: &mut impl Rng, n: usize, degree: usize) -> MajoranaString {
    MajoranaString::from_modes(&sample(rng, n, degree).into_vec())
}

/// A Hermitian observable of degree exactly `degree` with up to four terms.
fn random_observable(rng: &mut impl Rng, n: usize, degree: usize) -> MajoranaPolynomial {
    let mut p = MajoranaPolynomial::monomial(n, random_string(rng, n, degree), Complex64::new(rng.random_range(0.2..1.0), 0.0));
    for _ in 0..rng.random_range(0..4) {
        let d = rng.random_range(1..=degree);
        p.add_term(random_string(rng, n, d), Complex64::new(rng.random_range(-1.0..1.0), 0.0));
    }
    p
}

/// `‖[H, A]‖` against the commutator bound, both evaluated symbolically.
pub fn commutator_suite(samples: usize, seed: u64) -> CliResult<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut suite = SuiteReport::new("commutator");
    let models = [
        (3, 1.0, build_hubbard_1d(3, 1.0, false)?),
        (3, 4.0, build_hubbard_1d(3, 4.0, false)?),
        (4, 1.0, build_hubbard_1d(4, 1.0, false)?),
        (4, 4.0, build_hubbard_1d(4, 4.0, false)?),
    ];
    let polys: Vec<MajoranaPolynomial> = models.iter().map(|(_, _, h)| h.to_polynomial()).collect();
    for i in 0..samples {
        let k = i % models.len();
        let (l, u, h) = &models[k];
        let degree = 1 + (i / models.len()) % 6;
        let a = random_observable(&mut rng, h.n_modes(), degree);
        let measured = polys[k].commutator(&a)?.frobenius_norm();
        let bound = commutator_bound(h.sparsity(), a.degree(), a.frobenius_norm(), h.coeff_scale());
        suite.case(
            within(measured, bound),
            json!({"L": l, "U": u, "degree": a.degree(), "measured": measured, "bound": bound}),
        );
    }
    Ok(suite)
}

pub const TROTTER_TIMES: [f64; 3] = [0.05, 0.1, 0.2];

/// One Trotter step of length `t` against exact evolution, plus the ratio
/// `error(0.1) / error(0.05)` that second-order local error predicts near 4.
pub fn trotter_suite(samples: usize, seed: u64) -> CliResult<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7107);
    let mut suite = SuiteReport::new("trotter");
    let h = build_hubbard_1d(3, 1.0, false)?;
    let sched = greedy_color_partition(&h);
    let oracle = DenseOracle::new(h.n_modes())?;
    let evolver = HeisenbergEvolver::with_oracle(oracle, &h)?;
    for _ in 0..samples {
        let s = random_string(&mut rng, h.n_modes(), 2);
        let a = oracle.string_to_dense(&s);
        let frame = evolver.frame(&a);
        let mut errors = Vec::new();
        for &t in &TROTTER_TIMES {
            let err = dense_trotter_step(&h, &sched, &a, t)?.distance(&frame.at(t))?;
            let bound = trotter_bound_improved(t, 2, sched.len(), h.sparsity(), 1.0, h.coeff_scale());
            suite.case(within(err, bound), json!({"string": s.to_hex(), "t": t, "measured": err, "bound": bound}));
            errors.push(err);
        }
        if errors[0] > 1e-13 {
            let ratio = errors[1] / errors[0];
            suite.case((3.0..=5.0).contains(&ratio), json!({"string": s.to_hex(), "ratio_0.1_over_0.05": ratio}));
        }
    }
    Ok(suite)
}

pub const APRIORI_TIMES: [f64; 3] = [0.1, 0.3, 0.5];

/// Measured MP error against the a-priori bound with `η*` from the oracle.
pub fn apriori_suite(eta_grid: usize) -> CliResult<SuiteReport> {
    let mut suite = SuiteReport::new("apriori");
    let h = build_hubbard_1d(3, 1.0, false)?;
    let sched = greedy_color_partition(&h);
    let oracle = DenseOracle::new(h.n_modes())?;
    let a = MajoranaPolynomial::monomial(h.n_modes(), pair_string(2), one());
    let (ell, dt) = (4, 0.01);
    let mut cfg = MpConfig::new(dt, ell);
    cfg.truncation_mode = TruncationMode::PerSweep;
    for &t in &APRIORI_TIMES {
        let (mp, _) = mp_propagate(&a, &h, &sched, t, &cfg)?;
        let exact = exact_heisenberg(&a, &h, t)?;
        let measured = oracle.polynomial_to_dense(&mp)?.distance(&exact)?;
        let eta = best_truncation_error(&h, &a, t, ell, eta_grid)?;
        let bound = apriori_error_bound(t, dt, h.sparsity(), ell, eta, a.frobenius_norm());
        suite.case(
            within(measured, bound),
            json!({"t": t, "ell": ell, "delta_t": dt, "eta_star": eta, "measured": measured, "bound": bound}),
        );
    }
    Ok(suite)
}

pub const WEAK_U: [f64; 2] = [0.02, 0.05];
pub const WEAK_FRACTIONS: [f64; 2] = [0.25, 0.5];

/// Oracle `η*` against the weak-interaction bound on the two-site chain.
pub fn weak_interaction_suite(eta_grid: usize) -> CliResult<SuiteReport> {
    let mut suite = SuiteReport::new("weak_interaction");
    let (h0, v) = build_hubbard_1d(2, 1.0, false)?.split_by_degree();
    let a = MajoranaPolynomial::monomial(h0.n_modes(), pair_string(0), one());
    let deg_a = a.degree();
    for &u in &WEAK_U {
        let t_max = weak_interaction_horizon(u, h0.add_scaled(&v, u)?.sparsity(), deg_a);
        for ell in [deg_a, deg_a + 2, deg_a + 4] {
            for &f in &WEAK_FRACTIONS {
                let rep = verify_weak_interaction_bound(&h0, &v, u, &a, f * t_max, ell, eta_grid)?;
                suite.case(rep.applicable && rep.pass, serde_json::to_value(&rep).expect("plain data"));
            }
        }
    }
    Ok(suite)
}

/// With no quartic terms nothing is truncated: `η* = 0` and MP equals
/// the Trotter-only evolution.
pub fn quadratic_suite(eta_grid: usize) -> CliResult<SuiteReport> {
    let mut suite = SuiteReport::new("quadratic");
    let h = build_hubbard_1d(3, 0.0, false)?;
    let sched = greedy_color_partition(&h);
    let oracle = DenseOracle::new(h.n_modes())?;
    let a = MajoranaPolynomial::monomial(h.n_modes(), pair_string(2), one());
    let dt = 0.05;
    for t in [0.5, 1.0] {
        let exact = exact_heisenberg(&a, &h, t)?;
        let reference = trotter_only_reference(&a, &h, &sched, t, dt, 0.0)?;
        let trotter_err = oracle.polynomial_to_dense(&reference)?.distance(&exact)?;
        for ell in [2, 4] {
            let eta = best_truncation_error(&h, &a, t, ell, eta_grid)?;
            let (mp, _) = mp_propagate(&a, &h, &sched, t, &MpConfig::new(dt, ell))?;
            let mp_err = oracle.polynomial_to_dense(&mp)?.distance(&exact)?;
            let gap = mp.distance(&reference)?;
            suite.case(
                eta < 1e-10 && gap < 1e-10 && (mp_err - trotter_err).abs() < 1e-10,
                json!({"t": t, "ell": ell, "eta_star": eta, "mp_error": mp_err, "trotter_error": trotter_err, "mp_minus_trotter": gap}),
            );
        }
    }
    Ok(suite)
}

pub fn run_suite(name: &str, s: &VerifySettings) -> CliResult<SuiteReport> {
    match name {
        "commutator" => commutator_suite(s.samples, s.seed),
        "trotter" => trotter_suite(10, s.seed),
        "apriori" => apriori_suite(s.eta_grid),
        "weak_interaction" => weak_interaction_suite(s.eta_grid),
        "quadratic" => quadratic_suite(s.eta_grid),
        _ => Err(crate::error::CliError::config(format!("unknown suite `{name}`; expected one of {SUITES:?}"))),
    }
}

pub fn run_verify(s: &VerifySettings, only: &[String]) -> CliResult<VerifyReport> {
    let names: Vec<&str> = if only.is_empty() { SUITES.to_vec() } else { only.iter().map(String::as_str).collect() };
    let suites = names
        .into_iter()
        .map(|n| {
            log::info!("verify: {n}");
            run_suite(n, s)
        })
        .collect::<CliResult<Vec<_>>>()?;
    let pass = suites.iter().all(|s| s.pass);
    Ok(VerifyReport { suites, pass })
}
