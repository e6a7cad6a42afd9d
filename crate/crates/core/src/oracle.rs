//! Dense small-system ground truth.
//!
//! Operators act on the Fock space of `N/2` fermionic modes, basis state
//! `|n⟩ = (c*_0)^{n_0} ⋯ (c*_{N/2-1})^{n_{N/2-1}} |0⟩` stored at index
//! `Σ_j n_j 2^j`. In this basis `c*_j` and `c_j` pick up the sign
//! `(-1)^{Σ_{k<j} n_k}`. All norms use the normalized trace `tr(1) = 1`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::algebra::{MajoranaPolynomial, MajoranaString};
use crate::error::{check_modes, Error, Result};
use crate::hamiltonian::{QuarticHamiltonian, TrotterSchedule};
use crate::propagation::{mp_propagate, MpConfig};
use crate::states::ProductState;

/// Default largest Majorana mode count for dense work (dimension 256).
pub const DEFAULT_CAP: usize = 16;
/// Hard ceiling accepted by [`DenseOracle::with_cap`].
pub const MAX_CAP: usize = 24;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// A `2^{N/2} × 2^{N/2}` complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    n_modes: usize,
    matrix: DMatrix<Complex64>,
}

impl DenseOperator {
    pub fn new(n_modes: usize, matrix: DMatrix<Complex64>) -> Result<Self> {
        let dim = 1usize << (n_modes / 2);
        if n_modes % 2 != 0 || matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::InvalidArgument(format!(
                "matrix of shape {}×{} does not match N={n_modes}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        Ok(Self { n_modes, matrix })
    }

    pub fn identity(n_modes: usize) -> Self {
        let dim = 1usize << (n_modes / 2);
        Self { n_modes, matrix: DMatrix::identity(dim, dim) }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.matrix
    }

    /// `sqrt(tr(A* A))` with the normalized trace.
    pub fn frobenius_norm(&self) -> f64 {
        (self.matrix.iter().map(|c| c.norm_sqr()).sum::<f64>() / self.dim() as f64).sqrt()
    }

    pub fn distance(&self, other: &DenseOperator) -> Result<f64> {
        check_modes(self.n_modes, other.n_modes)?;
        let diff = &self.matrix - &other.matrix;
        Ok((diff.iter().map(|c| c.norm_sqr()).sum::<f64>() / self.dim() as f64).sqrt())
    }

    /// Normalized trace `tr(A) / dim`.
    pub fn normalized_trace(&self) -> Complex64 {
        self.matrix.trace() / self.dim() as f64
    }

    pub fn adjoint(&self) -> DenseOperator {
        Self { n_modes: self.n_modes, matrix: self.matrix.adjoint() }
    }

    /// Largest entry of `|A - A*|`.
    pub fn hermiticity_defect(&self) -> f64 {
        (&self.matrix - self.matrix.adjoint()).iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn mul(&self, other: &DenseOperator) -> DenseOperator {
        assert_eq!(self.n_modes, other.n_modes);
        Self { n_modes: self.n_modes, matrix: &self.matrix * &other.matrix }
    }

    /// `⟨ψ|A|ψ⟩` for a Fock basis state.
    pub fn expectation(&self, state: &ProductState) -> Result<Complex64> {
        check_modes(self.n_modes, state.n_majorana())?;
        let k = state.basis_index();
        Ok(self.matrix[(k, k)])
    }
}

/// The action of `γ_X` on basis states: column `n` has a single nonzero
/// entry `phases[n]` in row `n ^ flip`.
#[derive(Clone, Debug)]
pub struct MonomialAction {
    pub flip: usize,
    pub phases: Vec<Complex64>,
}

/// Builder for dense objects on a fixed number of Majorana modes.
#[derive(Clone, Copy, Debug)]
pub struct DenseOracle {
    n_modes: usize,
    dim: usize,
}

impl DenseOracle {
    pub fn new(n_modes: usize) -> Result<Self> {
        Self::with_cap(n_modes, DEFAULT_CAP)
    }

    pub fn with_cap(n_modes: usize, cap: usize) -> Result<Self> {
        let cap = cap.min(MAX_CAP);
        if n_modes > cap {
            return Err(Error::OracleCap { n_modes, cap });
        }
        if n_modes % 2 != 0 {
            return Err(Error::InvalidArgument(format!("N must be even, got {n_modes}")));
        }
        if n_modes > DEFAULT_CAP {
            log::warn!(
                "dense oracle at N={n_modes}: operators have dimension {}, expect heavy memory use",
                1usize << (n_modes / 2)
            );
        }
        Ok(Self { n_modes, dim: 1usize << (n_modes / 2) })
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Apply the single Majorana `γ_x` to basis state `n`.
    #[inline]
    fn single(x: usize, n: usize) -> (usize, Complex64) {
        let j = x / 2;
        let below = (n & ((1usize << j) - 1)).count_ones();
        let sign = if below % 2 == 0 { 1.0 } else { -1.0 };
        let target = n ^ (1usize << j);
        if x % 2 == 0 {
            (target, Complex64::new(sign, 0.0))
        } else if n & (1usize << j) == 0 {
            // i c*_j
            (target, Complex64::new(0.0, sign))
        } else {
            // -i c_j
            (target, Complex64::new(0.0, -sign))
        }
    }

    /// The ordered product `i^{r_X} γ_{x_1} ⋯ γ_{x_k}` as a monomial action.
    pub fn string_action(&self, s: &MajoranaString) -> MonomialAction {
        assert!(s.fits(self.n_modes), "{s:?} does not fit in N={}", self.n_modes);
        let modes: Vec<usize> = s.modes().collect();
        let prefactor = if s.hermitian_exponent() == 1 { I } else { ONE };
        let mut flip = 0usize;
        for &x in &modes {
            flip ^= 1usize << (x / 2);
        }
        let phases = (0..self.dim)
            .map(|n| {
                let mut state = n;
                let mut phase = prefactor;
                for &x in modes.iter().rev() {
                    let (next, p) = Self::single(x, state);
                    state = next;
                    phase *= p;
                }
                debug_assert_eq!(state, n ^ flip);
                phase
            })
            .collect();
        MonomialAction { flip, phases }
    }

    pub fn string_to_dense(&self, s: &MajoranaString) -> DenseOperator {
        let action = self.string_action(s);
        let mut m = DMatrix::from_element(self.dim, self.dim, ZERO);
        for (n, &p) in action.phases.iter().enumerate() {
            m[(n ^ action.flip, n)] = p;
        }
        DenseOperator { n_modes: self.n_modes, matrix: m }
    }

    pub fn polynomial_to_dense(&self, p: &MajoranaPolynomial) -> Result<DenseOperator> {
        check_modes(self.n_modes, p.n_modes())?;
        let mut m = DMatrix::from_element(self.dim, self.dim, ZERO);
        for (s, c) in p.sorted_terms() {
            let action = self.string_action(&s);
            for (n, &ph) in action.phases.iter().enumerate() {
                m[(n ^ action.flip, n)] += c * ph;
            }
        }
        Ok(DenseOperator { n_modes: self.n_modes, matrix: m })
    }

    /// Dense `H` including the identity shift.
    pub fn hamiltonian_to_dense(&self, h: &QuarticHamiltonian) -> Result<DenseOperator> {
        self.polynomial_to_dense(&h.to_polynomial())
    }

    /// `a_X = tr(γ_X M)` for one string.
    pub fn coefficient(&self, m: &DenseOperator, s: &MajoranaString) -> Complex64 {
        let action = self.string_action(s);
        self.coefficient_with(m, &action)
    }

    fn coefficient_with(&self, m: &DenseOperator, action: &MonomialAction) -> Complex64 {
        // tr(γ_X M) = Σ_n phase(n) M[n, n ^ flip]
        let mut acc = ZERO;
        for (n, &p) in action.phases.iter().enumerate() {
            acc += p * m.matrix[(n, n ^ action.flip)];
        }
        acc / self.dim as f64
    }

    fn all_strings(&self) -> impl Iterator<Item = MajoranaString> {
        assert!(self.n_modes < 64);
        (0u64..(1u64 << self.n_modes)).map(|bits| MajoranaString::from_words([bits, 0, 0, 0]))
    }

    /// Full expansion `M = Σ_X a_X γ_X`. Coefficients with magnitude below
    /// `1e-14 · ‖M‖_F` are treated as zero.
    pub fn majorana_expansion(&self, m: &DenseOperator) -> Result<MajoranaPolynomial> {
        check_modes(self.n_modes, m.n_modes)?;
        let floor = 1e-14 * m.frobenius_norm();
        let mut p = MajoranaPolynomial::zero(self.n_modes);
        for s in self.all_strings() {
            let a = self.coefficient(m, &s);
            if a.norm() > floor {
                p.add_term(s, a);
            }
        }
        Ok(p)
    }

    /// `(Σ_{|X| > ell} |a_X|²)^{1/2}`: the Frobenius distance from `M` to its
    /// best approximant of degree at most `ell`.
    pub fn tail_norm(&self, m: &DenseOperator, ell: usize) -> Result<f64> {
        check_modes(self.n_modes, m.n_modes)?;
        let mut acc = 0.0;
        for s in self.all_strings().filter(|s| s.degree() > ell) {
            acc += self.coefficient(m, &s).norm_sqr();
        }
        Ok(acc.sqrt())
    }
}

/// Eigendecomposition of a Hamiltonian, reused for every evolution time.
pub struct HeisenbergEvolver {
    oracle: DenseOracle,
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<Complex64>,
}

impl HeisenbergEvolver {
    pub fn new(h: &QuarticHamiltonian) -> Result<Self> {
        let oracle = DenseOracle::new(h.n_modes())?;
        Self::with_oracle(oracle, h)
    }

    pub fn with_oracle(oracle: DenseOracle, h: &QuarticHamiltonian) -> Result<Self> {
        let dense = oracle.hamiltonian_to_dense(h)?;
        Ok(Self::from_dense(oracle, &dense))
    }

    /// Decompose an arbitrary Hermitian dense operator.
    pub fn from_dense(oracle: DenseOracle, h: &DenseOperator) -> Self {
        let eig = h.matrix.clone().symmetric_eigen();
        Self { oracle, eigenvalues: eig.eigenvalues.iter().copied().collect(), eigenvectors: eig.eigenvectors }
    }

    pub fn oracle(&self) -> &DenseOracle {
        &self.oracle
    }

    /// Express `A` in the eigenbasis once, then evolve cheaply.
    pub fn frame(&self, a: &DenseOperator) -> EigenFrame<'_> {
        let rotated = self.eigenvectors.adjoint() * &a.matrix * &self.eigenvectors;
        EigenFrame { evolver: self, rotated }
    }

    /// `e^{iHt} A e^{-iHt}`.
    pub fn evolve(&self, a: &DenseOperator, t: f64) -> DenseOperator {
        self.frame(a).at(t)
    }

    /// `e^{iHt}`.
    pub fn unitary(&self, t: f64) -> DMatrix<Complex64> {
        let dim = self.eigenvalues.len();
        let mut scaled = self.eigenvectors.clone();
        for (k, &lam) in self.eigenvalues.iter().enumerate() {
            let ph = Complex64::from_polar(1.0, lam * t);
            for r in 0..dim {
                scaled[(r, k)] *= ph;
            }
        }
        scaled * self.eigenvectors.adjoint()
    }
}

pub struct EigenFrame<'a> {
    evolver: &'a HeisenbergEvolver,
    rotated: DMatrix<Complex64>,
}

impl EigenFrame<'_> {
    pub fn at(&self, t: f64) -> DenseOperator {
        let lam = &self.evolver.eigenvalues;
        let dim = lam.len();
        let mut m = self.rotated.clone();
        for j in 0..dim {
            for k in 0..dim {
                m[(j, k)] *= Complex64::from_polar(1.0, (lam[j] - lam[k]) * t);
            }
        }
        let u = &self.evolver.eigenvectors;
        DenseOperator { n_modes: self.evolver.oracle.n_modes, matrix: u * m * u.adjoint() }
    }
}

/// `A(t) = e^{iHt} A e^{-iHt}` as a dense operator.
pub fn exact_heisenberg(a: &MajoranaPolynomial, h: &QuarticHamiltonian, t: f64) -> Result<DenseOperator> {
    check_modes(a.n_modes(), h.n_modes())?;
    let evolver = HeisenbergEvolver::new(h)?;
    let dense = evolver.oracle.polynomial_to_dense(a)?;
    Ok(evolver.evolve(&dense, t))
}

/// Uniform grid of `points >= 2` times on `[0, t]`, endpoints included.
pub fn time_grid(t: f64, points: usize) -> Vec<f64> {
    let points = points.max(2);
    (0..points).map(|k| t * k as f64 / (points - 1) as f64).collect()
}

/// Best degree-`ell` truncation error `max_s ‖A(s) - Trunc_ell(A(s))‖_F`
/// with `s` sampled on [`time_grid`]. The grid maximum is a lower bound on
/// the supremum over `[0, t]`.
pub fn best_truncation_error(
    h: &QuarticHamiltonian,
    a: &MajoranaPolynomial,
    t: f64,
    ell: usize,
    grid_points: usize,
) -> Result<f64> {
    Ok(truncation_error_profile(h, a, t, ell, grid_points)?
        .into_iter()
        .map(|(_, e)| e)
        .fold(0.0, f64::max))
}

/// `(s, ‖A(s) - Trunc_ell(A(s))‖_F)` on the grid.
pub fn truncation_error_profile(
    h: &QuarticHamiltonian,
    a: &MajoranaPolynomial,
    t: f64,
    ell: usize,
    grid_points: usize,
) -> Result<Vec<(f64, f64)>> {
    check_modes(a.n_modes(), h.n_modes())?;
    if grid_points < 2 {
        return Err(Error::InvalidArgument("grid needs at least 2 points".into()));
    }
    let evolver = HeisenbergEvolver::new(h)?;
    let dense = evolver.oracle.polynomial_to_dense(a)?;
    let frame = evolver.frame(&dense);
    time_grid(t, grid_points)
        .into_iter()
        .map(|s| Ok((s, evolver.oracle.tail_norm(&frame.at(s), ell)?)))
        .collect()
}

/// `log(e/u) / (8 e² Δ (deg A + 2))`; infinite for `u = 0`.
pub fn weak_interaction_horizon(u: f64, sparsity: usize, deg_a: usize) -> f64 {
    if u <= 0.0 {
        return f64::INFINITY;
    }
    let e = std::f64::consts::E;
    (e / u).ln() / (8.0 * e * e * sparsity as f64 * (deg_a as f64 + 2.0))
}

/// `(t/t_max)^{(ell - deg A)/2} / (1 - t/t_max) · ‖A‖_F`.
pub fn weak_interaction_rhs(t: f64, t_max: f64, ell: usize, deg_a: usize, norm_a: f64) -> f64 {
    let r = t / t_max;
    let exponent = (ell as f64 - deg_a as f64) / 2.0;
    r.powf(exponent) / (1.0 - r) * norm_a
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct WeakInteractionReport {
    pub u: f64,
    pub sparsity: usize,
    pub deg_a: usize,
    pub ell: usize,
    pub t: f64,
    pub t_max: f64,
    pub eta_star: f64,
    pub rhs: f64,
    /// False when `t >= t_max` or `ell < deg A`; the bound then says nothing.
    pub applicable: bool,
    pub pass: bool,
}

/// Absolute slack allowed when a bound's right-hand side is zero.
pub const ZERO_BOUND_TOL: f64 = 1e-10;

/// Compare the oracle `η*` for `H = H0 + uV` with the weak-interaction bound.
pub fn verify_weak_interaction_bound(
    h0: &QuarticHamiltonian,
    v: &QuarticHamiltonian,
    u: f64,
    a: &MajoranaPolynomial,
    t: f64,
    ell: usize,
    grid_points: usize,
) -> Result<WeakInteractionReport> {
    if h0.terms().iter().any(|x| x.string.degree() != 2) {
        return Err(Error::InvalidArgument("H0 must be quadratic".into()));
    }
    if v.terms().iter().any(|x| x.string.degree() != 4) {
        return Err(Error::InvalidArgument("V must be quartic".into()));
    }
    let h = h0.add_scaled(v, u)?;
    let deg_a = a.degree();
    let t_max = weak_interaction_horizon(u, h.sparsity(), deg_a);
    let applicable = t < t_max && ell >= deg_a;
    let eta_star = best_truncation_error(&h, a, t, ell, grid_points)?;
    let rhs = if u == 0.0 && ell >= deg_a {
        0.0
    } else if applicable {
        weak_interaction_rhs(t, t_max, ell, deg_a, a.frobenius_norm())
    } else {
        f64::INFINITY
    };
    let pass = !applicable || eta_star <= rhs + ZERO_BOUND_TOL;
    Ok(WeakInteractionReport { u, sparsity: h.sparsity(), deg_a, ell, t, t_max, eta_star, rhs, applicable, pass })
}

/// One first-order Trotter step of length `t` applied densely:
/// `U_G ⋯ U_1 A U_1* ⋯ U_G*` with `U_g = e^{i t H^g}`.
pub fn dense_trotter_step(
    h: &QuarticHamiltonian,
    schedule: &TrotterSchedule,
    a: &DenseOperator,
    t: f64,
) -> Result<DenseOperator> {
    let oracle = DenseOracle::new(h.n_modes())?;
    let mut out = a.clone();
    for g in group_unitaries(&oracle, h, schedule, t)? {
        out.matrix = &g * &out.matrix * g.adjoint();
    }
    Ok(out)
}

/// `e^{i t H^g}` for each group, in schedule order.
pub fn group_unitaries(
    oracle: &DenseOracle,
    h: &QuarticHamiltonian,
    schedule: &TrotterSchedule,
    t: f64,
) -> Result<Vec<DMatrix<Complex64>>> {
    schedule
        .groups()
        .iter()
        .map(|group| {
            let terms = group.iter().map(|&i| (h.terms()[i].string, h.terms()[i].coeff));
            let hg = QuarticHamiltonian::new(h.n_modes(), terms, 0.0)?;
            Ok(HeisenbergEvolver::with_oracle(*oracle, &hg)?.unitary(t))
        })
        .collect()
}

/// Trotterized evolution without truncation: MP at full degree, pruned
/// after every rotation group.
pub fn trotter_only_reference(
    a: &MajoranaPolynomial,
    h: &QuarticHamiltonian,
    schedule: &TrotterSchedule,
    t: f64,
    delta_t: f64,
    prune_eps: f64,
) -> Result<MajoranaPolynomial> {
    let mut cfg = MpConfig::new(delta_t, h.n_modes());
    cfg.prune_eps = prune_eps;
    Ok(mp_propagate(a, h, schedule, t, &cfg)?.0)
}
