//! Sparse quartic Hamiltonians `H = Σ_X 𝒽_X γ_X` with terms of degree 2 or 4.

mod coloring;
mod hubbard;
mod json;

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{MajoranaPolynomial, MajoranaString, MAX_MODES};
use crate::error::{Error, Result};

pub use coloring::{greedy_color_partition, TrotterSchedule};
pub use hubbard::{build_hubbard_1d, build_hubbard_2d, hubbard_site_modes, Spin};
pub use json::HamiltonianFile;

/// Tolerance on imaginary parts when converting a polynomial to a Hamiltonian.
const REAL_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HamiltonianTerm {
    pub string: MajoranaString,
    pub coeff: f64,
}

/// A Hermitian Hamiltonian with terms of degree two or four on `n_modes`
/// Majorana modes. The identity part is kept separately in
/// `identity_shift`; it commutes with everything and never enters
/// propagation.
#[derive(Clone, Debug, PartialEq)]
pub struct QuarticHamiltonian {
    n_modes: usize,
    terms: Vec<HamiltonianTerm>,
    identity_shift: f64,
    sparsity: usize,
    max_abs_coeff: f64,
}

impl QuarticHamiltonian {
    /// Build from terms in the given order. Duplicate strings are merged
    /// into the position of their first occurrence, and terms whose merged
    /// coefficient is exactly zero are dropped.
    pub fn new<I>(n_modes: usize, terms: I, identity_shift: f64) -> Result<Self>
    where
        I: IntoIterator<Item = (MajoranaString, f64)>,
    {
        if n_modes % 2 != 0 || n_modes > MAX_MODES {
            return Err(Error::Validation(format!(
                "number of Majorana modes must be even and at most {MAX_MODES}, got {n_modes}"
            )));
        }
        if !identity_shift.is_finite() {
            return Err(Error::Validation("identity shift is not finite".into()));
        }
        let mut merged: Vec<HamiltonianTerm> = Vec::new();
        let mut index = rustc_hash::FxHashMap::default();
        for (string, coeff) in terms {
            let d = string.degree();
            if d != 2 && d != 4 {
                return Err(Error::Validation(format!("term {string:?} has degree {d}; only 2 and 4 are allowed")));
            }
            if !string.fits(n_modes) {
                return Err(Error::ModeOutOfRange { mask: string.to_hex(), n_modes });
            }
            if !coeff.is_finite() {
                return Err(Error::Validation(format!("term {string:?} has a non-finite coefficient")));
            }
            match index.get(&string) {
                Some(&i) => {
                    let t: &mut HamiltonianTerm = &mut merged[i];
                    t.coeff += coeff;
                }
                None => {
                    index.insert(string, merged.len());
                    merged.push(HamiltonianTerm { string, coeff });
                }
            }
        }
        merged.retain(|t| t.coeff != 0.0);
        let sparsity = compute_sparsity(n_modes, &merged);
        let max_abs_coeff = merged.iter().map(|t| t.coeff.abs()).fold(0.0, f64::max);
        Ok(Self { n_modes, terms: merged, identity_shift, sparsity, max_abs_coeff })
    }

    /// Convert a Hermitian polynomial. The identity coefficient becomes the
    /// identity shift; every other term must have degree 2 or 4 and a real
    /// coefficient.
    pub fn from_polynomial(p: &MajoranaPolynomial) -> Result<Self> {
        let mut shift = 0.0;
        let mut terms = Vec::new();
        for (s, c) in p.sorted_terms() {
            if c.im.abs() > REAL_TOL {
                return Err(Error::Validation(format!("coefficient of {s:?} is not real: {c}")));
            }
            if s.is_identity() {
                shift = c.re;
            } else {
                terms.push((s, c.re));
            }
        }
        Self::new(p.n_modes(), terms, shift)
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn terms(&self) -> &[HamiltonianTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn identity_shift(&self) -> f64 {
        self.identity_shift
    }

    /// Δ: the largest number of terms touching a single mode.
    pub fn sparsity(&self) -> usize {
        self.sparsity
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.max_abs_coeff
    }

    /// `max(1, max |𝒽_X|)`, the factor by which the unit-coefficient bounds
    /// must be scaled for this Hamiltonian.
    pub fn coeff_scale(&self) -> f64 {
        self.max_abs_coeff.max(1.0)
    }

    /// The full operator including the identity shift.
    pub fn to_polynomial(&self) -> MajoranaPolynomial {
        let mut p = MajoranaPolynomial::zero(self.n_modes);
        p.add_term(MajoranaString::IDENTITY, Complex64::new(self.identity_shift, 0.0));
        for t in &self.terms {
            p.add_term(t.string, Complex64::new(t.coeff, 0.0));
        }
        p
    }

    /// Split into the quadratic part and the quartic part. The identity shift
    /// stays with the quadratic part.
    pub fn split_by_degree(&self) -> (QuarticHamiltonian, QuarticHamiltonian) {
        let pick = |d: usize| self.terms.iter().filter(move |t| t.string.degree() == d).map(|t| (t.string, t.coeff));
        let quadratic = Self::new(self.n_modes, pick(2), self.identity_shift).expect("subset of a valid Hamiltonian");
        let quartic = Self::new(self.n_modes, pick(4), 0.0).expect("subset of a valid Hamiltonian");
        (quadratic, quartic)
    }

    /// `self + u · other`, keeping this Hamiltonian's term order first.
    pub fn add_scaled(&self, other: &QuarticHamiltonian, u: f64) -> Result<Self> {
        crate::error::check_modes(self.n_modes, other.n_modes)?;
        let terms = self
            .terms
            .iter()
            .map(|t| (t.string, t.coeff))
            .chain(other.terms.iter().map(|t| (t.string, u * t.coeff)));
        Self::new(self.n_modes, terms, self.identity_shift + u * other.identity_shift)
    }

    /// Number of terms that fail to commute with `γ_s`.
    pub fn anticommuting_count(&self, s: &MajoranaString) -> usize {
        self.terms.iter().filter(|t| crate::algebra::strings_anticommute(&t.string, s)).count()
    }

    pub fn validate(&self) -> ValidationReport {
        ValidationReport::for_hamiltonian(self)
    }
}

/// Δ recomputed from a term list.
pub fn compute_sparsity(n_modes: usize, terms: &[HamiltonianTerm]) -> usize {
    let mut counts = vec![0usize; n_modes];
    for t in terms {
        for m in t.string.modes() {
            counts[m] += 1;
        }
    }
    counts.into_iter().max().unwrap_or(0)
}

/// Result of structural validation.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ValidationReport {
    pub n_majorana: usize,
    pub n_terms: usize,
    pub n_quadratic: usize,
    pub n_quartic: usize,
    pub sparsity: usize,
    pub groups: usize,
    pub max_abs_coeff: f64,
    /// Whether every `|𝒽_X| <= 1`.
    pub unit_normalized: bool,
    pub notes: Vec<String>,
}

impl ValidationReport {
    fn for_hamiltonian(h: &QuarticHamiltonian) -> Self {
        let schedule = greedy_color_partition(h);
        let mut notes = Vec::new();
        let unit_normalized = h.max_abs_coeff() <= 1.0;
        if !unit_normalized {
            notes.push(format!(
                "max |coeff| = {} exceeds 1; error bounds are scaled by this factor",
                h.max_abs_coeff()
            ));
        }
        let count = |d: usize| h.terms().iter().filter(|t| t.string.degree() == d).count();
        Self {
            n_majorana: h.n_modes(),
            n_terms: h.len(),
            n_quadratic: count(2),
            n_quartic: count(4),
            sparsity: h.sparsity(),
            groups: schedule.len(),
            max_abs_coeff: h.max_abs_coeff(),
            unit_normalized,
            notes,
        }
    }
}
