use std::collections::hash_map::Entry;

use num_complex::Complex64;
use rustc_hash::FxHashMap;

use super::string::{rotation_image, string_multiply, strings_anticommute, MajoranaString, MAX_MODES};
use crate::error::{check_modes, Error, Result};

pub type TermMap = FxHashMap<MajoranaString, Complex64>;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// A sparse Majorana polynomial `A = Σ a_X γ_X` on `n_modes` modes.
///
/// Stored coefficients are never exactly zero. Iteration order of the
/// underlying map is deterministic (the hasher is unseeded) but not sorted;
/// use [`MajoranaPolynomial::sorted_terms`] where order matters.
#[derive(Clone, Debug)]
pub struct MajoranaPolynomial {
    n_modes: usize,
    terms: TermMap,
}

impl MajoranaPolynomial {
    /// The zero polynomial.
    pub fn zero(n_modes: usize) -> Self {
        assert!(n_modes <= MAX_MODES, "at most {MAX_MODES} Majorana modes supported");
        Self { n_modes, terms: TermMap::default() }
    }

    pub fn with_capacity(n_modes: usize, capacity: usize) -> Self {
        let mut p = Self::zero(n_modes);
        p.terms.reserve(capacity);
        p
    }

    pub fn identity(n_modes: usize) -> Self {
        Self::monomial(n_modes, MajoranaString::IDENTITY, Complex64::new(1.0, 0.0))
    }

    /// `coeff · γ_string`. Panics if the string does not fit in `n_modes`.
    pub fn monomial(n_modes: usize, string: MajoranaString, coeff: Complex64) -> Self {
        assert!(string.fits(n_modes), "{string:?} does not fit in {n_modes} modes");
        let mut p = Self::zero(n_modes);
        p.add_term(string, coeff);
        p
    }

    /// Build from `(string, coefficient)` pairs, summing duplicates.
    pub fn from_terms<I>(n_modes: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MajoranaString, Complex64)>,
    {
        let mut p = Self::zero(n_modes);
        for (s, c) in terms {
            if !s.fits(n_modes) {
                return Err(Error::ModeOutOfRange { mask: s.to_hex(), n_modes });
            }
            p.add_term(s, c);
        }
        Ok(p)
    }

    pub(crate) fn from_map_unchecked(n_modes: usize, terms: TermMap) -> Self {
        Self { n_modes, terms }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &TermMap {
        &self.terms
    }

    pub fn into_terms(self) -> TermMap {
        self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MajoranaString, &Complex64)> {
        self.terms.iter()
    }

    /// Terms sorted by mask.
    pub fn sorted_terms(&self) -> Vec<(MajoranaString, Complex64)> {
        let mut v: Vec<_> = self.terms.iter().map(|(s, c)| (*s, *c)).collect();
        v.sort_unstable_by_key(|a| a.0);
        v
    }

    pub fn coeff(&self, s: &MajoranaString) -> Complex64 {
        self.terms.get(s).copied().unwrap_or(ZERO)
    }

    /// Add `c` to the coefficient of `s`, dropping the entry if it becomes
    /// exactly zero.
    #[inline]
    pub fn add_term(&mut self, s: MajoranaString, c: Complex64) {
        if c == ZERO {
            return;
        }
        match self.terms.entry(s) {
            Entry::Occupied(mut e) => {
                let v = *e.get() + c;
                if v == ZERO {
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

    /// Largest stored degree; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(MajoranaString::degree).max().unwrap_or(0)
    }

    /// `sqrt(Σ |a_X|²)`, the normalized Frobenius norm.
    pub fn frobenius_norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.terms.values().map(|c| c.norm_sqr()).sum()
    }

    /// Largest `|Im a_X|`.
    pub fn max_imag(&self) -> f64 {
        self.terms.values().map(|c| c.im.abs()).fold(0.0, f64::max)
    }

    /// Check that the coefficients are real to `tol`, as they must be for a
    /// Hermitian operator in the Hermitian string basis.
    pub fn check_hermitian(&self, tol: f64) -> Result<()> {
        let m = self.max_imag();
        if m > tol {
            return Err(Error::InvalidArgument(format!(
                "polynomial is not Hermitian: max |Im a_X| = {m:e} > {tol:e}"
            )));
        }
        Ok(())
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = Self::with_capacity(self.n_modes, self.len());
        for (s, a) in self.sorted_terms() {
            out.add_term(s, a * c);
        }
        out
    }

    /// `self + c · other`.
    pub fn add_scaled(&self, other: &Self, c: Complex64) -> Result<Self> {
        check_modes(self.n_modes, other.n_modes)?;
        let mut out = self.clone();
        for (s, a) in other.sorted_terms() {
            out.add_term(s, a * c);
        }
        Ok(out)
    }

    /// Operator product `self · other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_modes(self.n_modes, other.n_modes)?;
        let lhs = self.sorted_terms();
        let rhs = other.sorted_terms();
        let mut out = Self::zero(self.n_modes);
        for (s, a) in &lhs {
            for (t, b) in &rhs {
                let (p, r) = string_multiply(s, t);
                out.add_term(r, p.apply(a * b));
            }
        }
        Ok(out)
    }

    /// `[self, other]`, using `[γ_S, γ_T] = 2 γ_S γ_T` for anticommuting
    /// pairs and zero otherwise.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        check_modes(self.n_modes, other.n_modes)?;
        let lhs = self.sorted_terms();
        let rhs = other.sorted_terms();
        let mut out = Self::zero(self.n_modes);
        for (s, a) in &lhs {
            for (t, b) in &rhs {
                if strings_anticommute(s, t) {
                    let (p, r) = string_multiply(s, t);
                    out.add_term(r, p.apply(2.0 * a * b));
                }
            }
        }
        Ok(out)
    }

    /// Keep only terms of degree `<= ell`.
    pub fn truncate_degree(&self, ell: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(s, _)| s.degree() <= ell)
            .map(|(s, c)| (*s, *c))
            .collect();
        Self { n_modes: self.n_modes, terms }
    }

    /// Drop terms with `|a_X| <= eps`. With `eps = 0` nothing is removed,
    /// since stored coefficients are already nonzero.
    pub fn prune(&self, eps: f64) -> Self {
        let mut out = self.clone();
        out.prune_in_place(eps);
        out
    }

    /// In-place [`prune`](Self::prune); returns the removed squared weight.
    pub fn prune_in_place(&mut self, eps: f64) -> f64 {
        if eps <= 0.0 {
            return 0.0;
        }
        let mut removed = 0.0;
        let eps_sq = eps * eps;
        self.terms.retain(|_, c| {
            let n = c.norm_sqr();
            if n <= eps_sq {
                removed += n;
                false
            } else {
                true
            }
        });
        removed
    }

    /// In-place [`truncate_degree`](Self::truncate_degree); returns the
    /// removed squared weight.
    pub fn truncate_in_place(&mut self, ell: usize) -> f64 {
        let mut removed = 0.0;
        self.terms.retain(|s, c| {
            if s.degree() > ell {
                removed += c.norm_sqr();
                false
            } else {
                true
            }
        });
        removed
    }

    /// `‖self - other‖_F`.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        check_modes(self.n_modes, other.n_modes)?;
        let mut acc = 0.0;
        for (s, a) in self.sorted_terms() {
            acc += (a - other.coeff(&s)).norm_sqr();
        }
        for (s, b) in other.sorted_terms() {
            if !self.terms.contains_key(&s) {
                acc += b.norm_sqr();
            }
        }
        Ok(acc.sqrt())
    }

    /// Exact equality of the stored term maps.
    pub fn same_terms(&self, other: &Self) -> bool {
        self.n_modes == other.n_modes && self.terms == other.terms
    }
}

impl PartialEq for MajoranaPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.same_terms(other)
    }
}

/// `e^{i(θ/2)γ_T} γ_S e^{-i(θ/2)γ_T}` as a polynomial of at most two terms.
pub fn rotate_string(n_modes: usize, theta: f64, t: &MajoranaString, s: &MajoranaString) -> MajoranaPolynomial {
    let (keep, other) = rotation_image(theta, t, s);
    let mut p = MajoranaPolynomial::zero(n_modes);
    p.add_term(*s, keep);
    if let Some((r, c)) = other {
        p.add_term(r, c);
    }
    p
}
