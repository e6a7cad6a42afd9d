use num_complex::Complex64;
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::bounds::split_horizon;
use super::trace::{PropagationTrace, StepRecord};
use super::{MpConfig, TruncationMode};
use crate::algebra::{string_multiply, strings_anticommute, MajoranaPolynomial, MajoranaString, Phase};
use crate::error::{check_modes, Error, Result};
use crate::hamiltonian::{QuarticHamiltonian, TrotterSchedule};

/// Terms per parallel work item. Fixed so that the merge order, and hence
/// every floating-point sum, is independent of the worker count.
const CHUNK: usize = 4096;
/// Chunks expanded before their output is merged, bounding peak memory.
const BATCH: usize = 256;

const NO_TERM: u32 = u32::MAX;

struct CompiledGroup {
    terms: Vec<(MajoranaString, f64)>,
    /// Majorana mode -> index into `terms` of the unique term touching it.
    owner: Vec<u32>,
}

#[derive(Clone, Copy)]
struct Rotation {
    string: MajoranaString,
    cos: f64,
    sin: f64,
}

/// A Hamiltonian and schedule compiled for repeated group application.
pub struct Propagator {
    n_modes: usize,
    groups: Vec<CompiledGroup>,
}

impl Propagator {
    pub fn new(h: &QuarticHamiltonian, schedule: &TrotterSchedule) -> Result<Self> {
        schedule.verify(h)?;
        let groups = schedule
            .groups()
            .iter()
            .map(|group| {
                let mut owner = vec![NO_TERM; h.n_modes()];
                let terms: Vec<_> = group.iter().map(|&i| (h.terms()[i].string, h.terms()[i].coeff)).collect();
                for (k, (s, _)) in terms.iter().enumerate() {
                    for m in s.modes() {
                        owner[m] = k as u32;
                    }
                }
                CompiledGroup { terms, owner }
            })
            .collect();
        Ok(Self { n_modes: h.n_modes(), groups })
    }

    pub fn n_groups(&self) -> usize {
        self.groups.len()
    }

    /// `e^{iδt H^g} P e^{-iδt H^g}` without truncation.
    pub fn apply_group(&self, p: &MajoranaPolynomial, g: usize, delta_t: f64) -> Result<MajoranaPolynomial> {
        check_modes(self.n_modes, p.n_modes())?;
        if g >= self.groups.len() {
            return Err(Error::InvalidArgument(format!("group index {g} out of range ({} groups)", self.groups.len())));
        }
        Ok(self.conjugate(p.clone(), g, delta_t, None, true))
    }

    /// One full sweep over all groups in order, without truncation.
    pub fn trotter_sweep(&self, p: &MajoranaPolynomial, delta_t: f64) -> Result<MajoranaPolynomial> {
        check_modes(self.n_modes, p.n_modes())?;
        let mut p = p.clone();
        for g in 0..self.groups.len() {
            p = self.conjugate(p, g, delta_t, None, true);
        }
        Ok(p)
    }

    fn rotations(&self, g: usize, delta_t: f64) -> Vec<Rotation> {
        self.groups[g]
            .terms
            .iter()
            .map(|&(string, coeff)| {
                let (sin, cos) = (2.0 * delta_t * coeff).sin_cos();
                Rotation { string, cos, sin }
            })
            .collect()
    }

    /// Conjugate by group `g`. With `cutoff = Some(ell)`, strings of degree
    /// above `ell` are dropped as soon as a rotation creates them, which
    /// equals truncating after every single rotation.
    fn conjugate(
        &self,
        p: MajoranaPolynomial,
        g: usize,
        delta_t: f64,
        cutoff: Option<usize>,
        parallel: bool,
    ) -> MajoranaPolynomial {
        if delta_t == 0.0 || self.groups[g].terms.is_empty() {
            return p;
        }
        let rotations = self.rotations(g, delta_t);
        let group = &self.groups[g];
        let cutoff = cutoff.unwrap_or(usize::MAX);
        let n_modes = p.n_modes();
        let entries: Vec<(MajoranaString, Complex64)> = p.into_terms().into_iter().collect();
        let mut map: FxHashMap<MajoranaString, Complex64> =
            FxHashMap::with_capacity_and_hasher(entries.len(), Default::default());

        let expand_chunk = |chunk: &[(MajoranaString, Complex64)]| {
            let mut out = Vec::with_capacity(chunk.len() * 2);
            let mut hits = Vec::new();
            for &(s, c) in chunk {
                expand(group, &rotations, s, c, cutoff, &mut hits, &mut out);
            }
            out
        };

        if parallel && entries.len() > CHUNK {
            for batch in entries.chunks(CHUNK * BATCH) {
                let outs: Vec<Vec<_>> = batch.par_chunks(CHUNK).map(expand_chunk).collect();
                for out in outs {
                    merge(&mut map, out);
                }
            }
        } else {
            for chunk in entries.chunks(CHUNK) {
                merge(&mut map, expand_chunk(chunk));
            }
        }
        MajoranaPolynomial::from_map_unchecked(n_modes, map)
    }

    /// Advance one step of length `delta_t`; returns the squared weight
    /// discarded during the step.
    fn step(&self, p: MajoranaPolynomial, delta_t: f64, cfg: &MpConfig) -> Result<(MajoranaPolynomial, f64)> {
        let mut p = p;
        match cfg.truncation_mode {
            TruncationMode::PerRotation => {
                let before = if cfg.record_diagnostics { p.norm_sqr() } else { 0.0 };
                for g in 0..self.groups.len() {
                    p = self.conjugate(p, g, delta_t, Some(cfg.ell), cfg.parallel);
                    p.prune_in_place(cfg.prune_eps);
                    check_cap(&p, cfg)?;
                }
                let discarded = if cfg.record_diagnostics { (before - p.norm_sqr()).max(0.0) } else { 0.0 };
                Ok((p, discarded))
            }
            TruncationMode::PerSweep => {
                for g in 0..self.groups.len() {
                    p = self.conjugate(p, g, delta_t, None, cfg.parallel);
                    check_cap(&p, cfg)?;
                }
                let mut discarded = p.truncate_in_place(cfg.ell);
                discarded += p.prune_in_place(cfg.prune_eps);
                Ok((p, discarded))
            }
        }
    }

    /// Run MP to time `t`, calling `observer` after the initial truncation
    /// and after every step.
    pub fn propagate_observed<F>(
        &self,
        a: &MajoranaPolynomial,
        t: f64,
        cfg: &MpConfig,
        mut observer: F,
    ) -> Result<(MajoranaPolynomial, PropagationTrace)>
    where
        F: FnMut(&StepRecord, &MajoranaPolynomial),
    {
        check_modes(self.n_modes, a.n_modes())?;
        cfg.validate()?;
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::InvalidArgument(format!("evolution time must be nonnegative, got {t}")));
        }
        if cfg.ell < a.degree() {
            log::warn!("truncation degree {} is below the observable degree {}", cfg.ell, a.degree());
        }
        let mut trace = PropagationTrace::default();
        let mut p = a.clone();
        let mut discarded = p.truncate_in_place(cfg.ell);
        discarded += p.prune_in_place(cfg.prune_eps);
        let mut record = |step: usize, time: f64, p: &MajoranaPolynomial, discarded: f64| {
            let r = StepRecord {
                step,
                time,
                n_terms: p.len(),
                max_degree: p.degree(),
                frob_norm: p.frobenius_norm(),
                discarded_weight: discarded.sqrt(),
            };
            trace.push(r);
            observer(&r, p);
        };
        record(0, 0.0, &p, discarded);

        let (full, remainder) = split_horizon(t, cfg.delta_t);
        for k in 1..=full {
            let (next, d) = self.step(p, cfg.delta_t, cfg)?;
            p = next;
            let time = if remainder == 0.0 && k == full { t } else { k as f64 * cfg.delta_t };
            record(k, time, &p, d);
        }
        if remainder > 0.0 {
            let (next, d) = self.step(p, remainder, cfg)?;
            p = next;
            record(full + 1, t, &p, d);
        }
        Ok((p, trace))
    }

    pub fn propagate(
        &self,
        a: &MajoranaPolynomial,
        t: f64,
        cfg: &MpConfig,
    ) -> Result<(MajoranaPolynomial, PropagationTrace)> {
        self.propagate_observed(a, t, cfg, |_, _| {})
    }
}

#[inline]
fn expand(
    group: &CompiledGroup,
    rotations: &[Rotation],
    s: MajoranaString,
    c: Complex64,
    cutoff: usize,
    hits: &mut Vec<u32>,
    out: &mut Vec<(MajoranaString, Complex64)>,
) {
    hits.clear();
    for m in s.modes() {
        let k = group.owner[m];
        if k != NO_TERM && !hits.contains(&k) {
            hits.push(k);
        }
    }
    let start = out.len();
    out.push((s, c));
    // Group terms are disjoint and of even degree, so they commute with one
    // another and every descendant of `s` anticommutes with the same terms
    // as `s` itself.
    for &k in hits.iter() {
        let rot = rotations[k as usize];
        if !strings_anticommute(&rot.string, &s) {
            continue;
        }
        let end = out.len();
        for idx in start..end {
            let (m, v) = out[idx];
            out[idx].1 = v * rot.cos;
            let (phase, r) = string_multiply(&rot.string, &m);
            if r.degree() <= cutoff {
                out.push((r, (Phase::I * phase).apply(v * rot.sin)));
            }
        }
    }
}

fn merge(map: &mut FxHashMap<MajoranaString, Complex64>, out: Vec<(MajoranaString, Complex64)>) {
    use std::collections::hash_map::Entry;
    for (s, c) in out {
        if c.re == 0.0 && c.im == 0.0 {
            continue;
        }
        match map.entry(s) {
            Entry::Occupied(mut e) => {
                let v = *e.get() + c;
                if v.re == 0.0 && v.im == 0.0 {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }
}

fn check_cap(p: &MajoranaPolynomial, cfg: &MpConfig) -> Result<()> {
    if p.len() > cfg.term_cap {
        return Err(Error::TermCapExceeded { terms: p.len(), cap: cfg.term_cap });
    }
    Ok(())
}

/// Conjugate `P` by the group `g` of `schedule`.
pub fn apply_group(
    p: &MajoranaPolynomial,
    h: &QuarticHamiltonian,
    schedule: &TrotterSchedule,
    g: usize,
    delta_t: f64,
) -> Result<MajoranaPolynomial> {
    Propagator::new(h, schedule)?.apply_group(p, g, delta_t)
}

/// `τ^G ∘ ⋯ ∘ τ^1 (P)`.
pub fn trotter_sweep(
    p: &MajoranaPolynomial,
    h: &QuarticHamiltonian,
    schedule: &TrotterSchedule,
    delta_t: f64,
) -> Result<MajoranaPolynomial> {
    Propagator::new(h, schedule)?.trotter_sweep(p, delta_t)
}

pub fn mp_propagate(
    a: &MajoranaPolynomial,
    h: &QuarticHamiltonian,
    schedule: &TrotterSchedule,
    t: f64,
    cfg: &MpConfig,
) -> Result<(MajoranaPolynomial, PropagationTrace)> {
    check_modes(a.n_modes(), h.n_modes())?;
    Propagator::new(h, schedule)?.propagate(a, t, cfg)
}

pub fn mp_propagate_observed<F>(
    a: &MajoranaPolynomial,
    h: &QuarticHamiltonian,
    schedule: &TrotterSchedule,
    t: f64,
    cfg: &MpConfig,
    observer: F,
) -> Result<(MajoranaPolynomial, PropagationTrace)>
where
    F: FnMut(&StepRecord, &MajoranaPolynomial),
{
    check_modes(a.n_modes(), h.n_modes())?;
    Propagator::new(h, schedule)?.propagate_observed(a, t, cfg, observer)
}
