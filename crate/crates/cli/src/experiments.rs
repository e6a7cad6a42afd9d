//! Figure data and single runs, rendered as CSV.

use std::fmt::Write as _;

use majprop::oracle::{DenseOracle, HeisenbergEvolver, DEFAULT_CAP};
use majprop::propagation::{split_horizon, Propagator};
use majprop::{expectation, MajoranaPolynomial, MpConfig, PropagationTrace};

use crate::config::{parse_observable, parse_state, ExperimentConfig};
use crate::error::{CliError, CliResult};

pub const FIG1_FIRST_COLUMN: &str = "deg";
pub const FIG2_FIRST_COLUMN: &str = "time";

fn preamble(command: &str, echo: &str) -> String {
    format!("# majprop {} {command}\n# config: {echo}\n", majprop::VERSION)
}

/// `t0.2`, `t0.4`, ...
pub fn fig1_column(t: f64) -> String {
    format!("t{t:?}")
}

/// `U1.0ell6`; `exact` in place of the degree for the oracle column.
pub fn fig2_column(u: f64, ell: Option<usize>) -> String {
    match ell {
        Some(l) => format!("U{u:?}ell{l}"),
        None => format!("U{u:?}exact"),
    }
}

/// Run MP and keep copies of the iterate after the given step counts.
fn snapshots(
    prop: &Propagator,
    a: &MajoranaPolynomial,
    steps: &[usize],
    cfg: &MpConfig,
) -> majprop::Result<Vec<MajoranaPolynomial>> {
    let last = *steps.last().expect("at least one snapshot");
    let mut out = Vec::with_capacity(steps.len());
    prop.propagate_observed(a, last as f64 * cfg.delta_t, cfg, |r, p| {
        if steps.contains(&r.step) {
            out.push(p.clone());
        }
    })?;
    Ok(out)
}

/// Distance of truncated MP to the untruncated Trotter evolution, one row
/// per degree and one column per time.
pub fn run_fig1(cfg: &ExperimentConfig) -> CliResult<String> {
    let s = cfg.fig1()?;
    let h = &s.model.hamiltonian;
    let prop = Propagator::new(h, &s.model.schedule)?;
    let dt = s.mp.delta_t;
    let steps: Vec<usize> = s.times.iter().map(|&t| split_horizon(t, dt).0).collect();

    let mut reference_cfg = MpConfig::new(dt, h.n_modes());
    reference_cfg.prune_eps = s.reference_prune_eps;
    reference_cfg.term_cap = s.mp.term_cap;
    log::info!("fig1: Trotter reference on N={} to t={}", h.n_modes(), s.times.last().unwrap());
    let reference = snapshots(&prop, &s.observable, &steps, &reference_cfg)
        .map_err(CliError::during("fig1 Trotter reference"))?;

    let mut out = preamble("fig1", &s.echo());
    out.push_str(FIG1_FIRST_COLUMN);
    for &t in &s.times {
        write!(out, ",{}", fig1_column(t)).unwrap();
    }
    out.push('\n');
    for &ell in &s.ells {
        let mut mp = s.mp.clone();
        mp.ell = ell;
        log::info!("fig1: ℓ={ell}");
        let snaps = snapshots(&prop, &s.observable, &steps, &mp).map_err(CliError::during(format!("fig1 ℓ={ell}")))?;
        write!(out, "{ell}").unwrap();
        for (p, r) in snaps.iter().zip(&reference) {
            write!(out, ",{:.12e}", p.distance(r)?).unwrap();
        }
        out.push('\n');
    }
    Ok(out)
}

/// Central hole density against time for every `(U, ℓ)`, plus the dense
/// oracle curve when the system is small enough.
pub fn run_fig2(cfg: &ExperimentConfig) -> CliResult<String> {
    let s = cfg.fig2()?;
    let (full, remainder) = split_horizon(s.t_max, s.mp.delta_t);
    let n_rows = full + 1 + usize::from(remainder > 0.0);
    let mut header = vec![FIG2_FIRST_COLUMN.to_string()];
    let mut columns: Vec<Vec<f64>> = Vec::new();
    let mut times: Vec<f64> = Vec::new();

    for model in &s.models {
        let a = parse_observable(&s.observable_spec, model)?;
        let state = parse_state(&s.state_spec, model)?;
        let prop = Propagator::new(&model.hamiltonian, &model.schedule)?;
        for &ell in &s.ells {
            let mut mp = s.mp.clone();
            mp.ell = ell;
            log::info!("fig2: U={} ℓ={ell}", model.u);
            let mut values = Vec::with_capacity(n_rows);
            let mut t_col = Vec::with_capacity(n_rows);
            let mut failure = None;
            prop.propagate_observed(&a, s.t_max, &mp, |r, p| match expectation(p, &state) {
                Ok(v) => {
                    values.push(v);
                    t_col.push(r.time);
                }
                Err(e) => {
                    failure.get_or_insert(e);
                }
            })
            .map_err(CliError::during(format!("fig2 U={} ℓ={ell}", model.u)))?;
            if let Some(e) = failure {
                return Err(e.into());
            }
            if times.is_empty() {
                times = t_col;
            }
            header.push(fig2_column(model.u, Some(ell)));
            columns.push(values);
        }
        if s.oracle && model.n_modes() <= DEFAULT_CAP {
            log::info!("fig2: dense oracle for U={}", model.u);
            let evolver = HeisenbergEvolver::with_oracle(DenseOracle::new(model.n_modes())?, &model.hamiltonian)?;
            let dense = evolver.oracle().polynomial_to_dense(&a)?;
            let frame = evolver.frame(&dense);
            let values = times
                .iter()
                .map(|&t| Ok(frame.at(t).expectation(&state)?.re))
                .collect::<majprop::Result<Vec<_>>>()?;
            header.push(fig2_column(model.u, None));
            columns.push(values);
        } else if s.oracle {
            log::info!("fig2: N={} is beyond the dense oracle; no exact column", model.n_modes());
        }
    }

    let mut out = preamble("fig2", &s.echo());
    out.push_str(&header.join(","));
    out.push('\n');
    for (row, t) in times.iter().enumerate() {
        write!(out, "{t:.6}").unwrap();
        for col in &columns {
            write!(out, ",{:.10}", col[row]).unwrap();
        }
        out.push('\n');
    }
    Ok(out)
}

pub struct PropagateOutput {
    pub csv: String,
    pub trace: PropagationTrace,
    pub polynomial: MajoranaPolynomial,
}

/// A single MP run; the CSV is the per-step trace.
pub fn run_propagate(cfg: &ExperimentConfig) -> CliResult<PropagateOutput> {
    let s = cfg.propagate()?;
    let prop = Propagator::new(&s.model.hamiltonian, &s.model.schedule)?;
    let (polynomial, trace) = prop
        .propagate(&s.observable, s.t_max, &s.mp)
        .map_err(CliError::during(format!("propagate ℓ={}", s.mp.ell)))?;
    let mut csv = preamble("propagate", &s.echo());
    csv.push_str(&trace.to_csv());
    Ok(PropagateOutput { csv, trace, polynomial })
}
