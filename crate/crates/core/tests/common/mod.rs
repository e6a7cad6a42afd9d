#![allow(dead_code)]

use majprop::{MajoranaPolynomial, MajoranaString};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn ms(m: &[usize]) -> MajoranaString {
    MajoranaString::from_modes(m)
}

/// Uniformly random string of the given degree on `n_modes` modes.
pub fn random_string(rng: &mut impl Rng, n_modes: usize, degree: usize) -> MajoranaString {
    let mut modes: Vec<usize> = (0..n_modes).collect();
    for i in 0..degree {
        let j = rng.random_range(i..n_modes);
        modes.swap(i, j);
    }
    MajoranaString::from_modes(&modes[..degree])
}

pub fn random_any_string(rng: &mut impl Rng, n_modes: usize) -> MajoranaString {
    let d = rng.random_range(0..=n_modes);
    random_string(rng, n_modes, d)
}

/// Random polynomial with `n_terms` strings of degree at most `max_degree`.
pub fn random_polynomial(
    rng: &mut impl Rng,
    n_modes: usize,
    n_terms: usize,
    max_degree: usize,
    real: bool,
) -> MajoranaPolynomial {
    let mut p = MajoranaPolynomial::zero(n_modes);
    for _ in 0..n_terms {
        let d = rng.random_range(0..=max_degree);
        let s = random_string(rng, n_modes, d);
        let im = if real { 0.0 } else { rng.random_range(-1.0..1.0) };
        p.add_term(s, c(rng.random_range(-1.0..1.0), im));
    }
    p
}

/// Hermitian polynomial whose strings all have degree exactly `degree`.
pub fn random_homogeneous(rng: &mut impl Rng, n_modes: usize, n_terms: usize, degree: usize) -> MajoranaPolynomial {
    let mut p = MajoranaPolynomial::zero(n_modes);
    for _ in 0..n_terms {
        p.add_term(random_string(rng, n_modes, degree), c(rng.random_range(-1.0..1.0), 0.0));
    }
    p
}

pub fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Annihilator `c_j` on `n_fermions` modes written out entry by entry:
/// `c_j |n⟩ = (-1)^{Σ_{k<j} n_k} |n - e_j⟩` when `n_j = 1`.
pub fn literal_annihilator(n_fermions: usize, j: usize) -> DMatrix<Complex64> {
    let dim = 1usize << n_fermions;
    let mut m = DMatrix::from_element(dim, dim, c(0.0, 0.0));
    for n in 0..dim {
        if n >> j & 1 == 1 {
            let below = (0..j).filter(|&k| n >> k & 1 == 1).count();
            m[(n & !(1 << j), n)] = c(if below % 2 == 0 { 1.0 } else { -1.0 }, 0.0);
        }
    }
    m
}

pub fn literal_creator(n_fermions: usize, j: usize) -> DMatrix<Complex64> {
    literal_annihilator(n_fermions, j).adjoint()
}

/// `γ_{2j} = c*_j + c_j`, `γ_{2j+1} = i(c*_j - c_j)`.
pub fn literal_majorana(n_fermions: usize, x: usize) -> DMatrix<Complex64> {
    let a = literal_annihilator(n_fermions, x / 2);
    let ad = a.adjoint();
    if x % 2 == 0 {
        &ad + &a
    } else {
        (&ad - &a) * c(0.0, 1.0)
    }
}

/// `i^{r_X} γ_{x_1} ⋯ γ_{x_k}` by explicit matrix products.
pub fn literal_string(n_fermions: usize, s: &MajoranaString) -> DMatrix<Complex64> {
    let dim = 1usize << n_fermions;
    let mut m = DMatrix::identity(dim, dim);
    for x in s.modes() {
        m *= literal_majorana(n_fermions, x);
    }
    let k = s.degree();
    if (k * (k.saturating_sub(1)) / 2) % 2 == 1 {
        m *= c(0.0, 1.0);
    }
    m
}

/// `exp(iφ X)` for a Hermitian `X` with `X² = 1`.
pub fn involution_exp(x: &DMatrix<Complex64>, phi: f64) -> DMatrix<Complex64> {
    let dim = x.nrows();
    DMatrix::<Complex64>::identity(dim, dim) * c(phi.cos(), 0.0) + x * c(0.0, phi.sin())
}
