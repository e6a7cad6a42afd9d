//! Fock product states and the observables evaluated on them.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::algebra::{MajoranaPolynomial, MajoranaString};
use crate::error::{check_modes, Error, Result};
use crate::fermion;
use crate::hamiltonian::{hubbard_site_modes, Spin};

/// Occupation-number basis state `|n_0 n_1 …⟩`, one bit per fermionic mode.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProductState {
    occupations: Vec<bool>,
}

impl ProductState {
    pub fn new(occupations: Vec<bool>) -> Self {
        Self { occupations }
    }

    pub fn vacuum(n_fermions: usize) -> Self {
        Self { occupations: vec![false; n_fermions] }
    }

    /// Number of fermionic modes (`N / 2`).
    pub fn len(&self) -> usize {
        self.occupations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.occupations.is_empty()
    }

    pub fn n_majorana(&self) -> usize {
        2 * self.occupations.len()
    }

    pub fn occupied(&self, mode: usize) -> bool {
        self.occupations[mode]
    }

    pub fn set(&mut self, mode: usize, occupied: bool) {
        self.occupations[mode] = occupied;
    }

    pub fn occupations(&self) -> &[bool] {
        &self.occupations
    }

    pub fn particle_number(&self) -> usize {
        self.occupations.iter().filter(|&&o| o).count()
    }

    /// Basis index with mode `j` on bit `j`.
    pub fn basis_index(&self) -> usize {
        self.occupations.iter().enumerate().filter(|(_, &o)| o).map(|(j, _)| 1usize << j).sum()
    }
}

/// Bitstring over fermionic modes, mode 0 leftmost.
impl fmt::Display for ProductState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &o in &self.occupations {
            f.write_str(if o { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for ProductState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let occupations = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::InvalidArgument(format!("state bitstring contains {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if occupations.is_empty() {
            return Err(Error::InvalidArgument("empty state bitstring".into()));
        }
        Ok(Self { occupations })
    }
}

/// Sign of `γ_X` on the Fock vacuum-like pair product, by number of pairs.
///
/// For `X = ∪_j {2j, 2j+1}` with `k` pairs, `γ_X = s(k) Π_j γ_{{2j,2j+1}}`
/// with `s(k) = +1` for `k mod 4 ∈ {0, 1}` and `-1` otherwise; the
/// lookup is checked against the dense oracle in the tests.
const PAIR_PRODUCT_SIGN: [f64; 4] = [1.0, 1.0, -1.0, -1.0];

/// `⟨ψ|γ_X|ψ⟩` for a product state: zero unless `X` is a union of complete
/// pairs, otherwise `s(k) Π_j (2 n_j - 1)`.
pub fn string_expectation(s: &MajoranaString, state: &ProductState) -> f64 {
    let mut pairs = 0usize;
    let mut sign = 1.0;
    let mut modes = s.modes();
    while let Some(a) = modes.next() {
        if a % 2 != 0 {
            return 0.0;
        }
        match modes.next() {
            Some(b) if b == a + 1 => {}
            _ => return 0.0,
        }
        let j = a / 2;
        if j >= state.len() {
            return 0.0;
        }
        pairs += 1;
        if !state.occupied(j) {
            sign = -sign;
        }
    }
    PAIR_PRODUCT_SIGN[pairs % 4] * sign
}

/// `⟨ψ|P|ψ⟩` (complex in general; real for Hermitian `P`).
pub fn expectation_complex(p: &MajoranaPolynomial, state: &ProductState) -> Result<Complex64> {
    check_modes(p.n_modes(), state.n_majorana())?;
    let mut acc = Complex64::new(0.0, 0.0);
    for (s, c) in p.sorted_terms() {
        let v = string_expectation(&s, state);
        if v != 0.0 {
            acc += c * v;
        }
    }
    Ok(acc)
}

/// `⟨ψ|P|ψ⟩` for a Hermitian polynomial.
pub fn expectation(p: &MajoranaPolynomial, state: &ProductState) -> Result<f64> {
    let v = expectation_complex(p, state)?;
    if v.im.abs() > 1e-10 {
        return Err(Error::InvalidArgument(format!(
            "expectation has imaginary part {:e}; polynomial is not Hermitian",
            v.im
        )));
    }
    Ok(v.re)
}

/// `n_j = c*_j c_j = (1 + γ_{{2j,2j+1}}) / 2`.
pub fn number_operator(mode: usize, n_modes: usize) -> MajoranaPolynomial {
    fermion::creation(n_modes, mode).mul(&fermion::annihilation(n_modes, mode)).expect("same N")
}

/// `1 - n_j`.
pub fn hole_operator(mode: usize, n_modes: usize) -> MajoranaPolynomial {
    MajoranaPolynomial::identity(n_modes)
        .add_scaled(&number_operator(mode, n_modes), Complex64::new(-1.0, 0.0))
        .expect("same N")
}

/// `(1 - n_{i↑})(1 - n_{i↓})`: probability that `site` is empty.
pub fn hole_density_observable(site: usize, n_sites: usize) -> Result<MajoranaPolynomial> {
    if site >= n_sites {
        return Err(Error::InvalidArgument(format!("site {site} out of range for {n_sites} sites")));
    }
    let n_modes = 4 * n_sites;
    let up = hole_operator(hubbard_site_modes(site, Spin::Up), n_modes);
    let down = hole_operator(hubbard_site_modes(site, Spin::Down), n_modes);
    up.mul(&down)
}

/// Row-major index of the central site of an odd `side × side` lattice.
pub fn central_site(side: usize) -> Result<usize> {
    if side % 2 == 0 {
        return Err(Error::InvalidArgument(format!("central site undefined for even side length {side}")));
    }
    Ok((side * side - 1) / 2)
}

/// Every site singly occupied in an alternating spin pattern, except the
/// empty central site of an odd `side × side` lattice.
pub fn antiferromagnetic_hole_state(side: usize) -> Result<ProductState> {
    central_site(side)?;
    antiferromagnetic_hole_pattern(side * side)
}

/// The hole pattern on `n_sites` sites in row-major order, `n_sites` odd.
///
/// With 1-based site labels `i` and center `c = (n_sites + 1) / 2`, site
/// `i < c` holds spin up when `i` is odd, and site `i > c` holds spin up
/// when `i` is even; all other occupied sites hold spin down.
pub fn antiferromagnetic_hole_pattern(n_sites: usize) -> Result<ProductState> {
    if n_sites % 2 == 0 {
        return Err(Error::InvalidArgument(format!("hole pattern needs an odd number of sites, got {n_sites}")));
    }
    let center = n_sites.div_ceil(2);
    let mut state = ProductState::vacuum(2 * n_sites);
    for site0 in 0..n_sites {
        let i = site0 + 1;
        if i == center {
            continue;
        }
        let up = (i < center && i % 2 == 1) || (i > center && i % 2 == 0);
        let spin = if up { Spin::Up } else { Spin::Down };
        state.set(hubbard_site_modes(site0, spin), true);
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_expectation_is_one() {
        let st: ProductState = "0110".parse().unwrap();
        assert_eq!(expectation(&MajoranaPolynomial::identity(8), &st).unwrap(), 1.0);
    }

    #[test]
    fn number_operator_form() {
        let n = number_operator(1, 6);
        assert_eq!(n.len(), 2);
        assert_eq!(n.coeff(&MajoranaString::IDENTITY), Complex64::new(0.5, 0.0));
        assert_eq!(n.coeff(&fermion::pair_string(1)), Complex64::new(0.5, 0.0));
        for occ in [false, true] {
            let st = ProductState::new(vec![false, occ, false]);
            assert_eq!(expectation(&n, &st).unwrap(), if occ { 1.0 } else { 0.0 });
        }
    }

    #[test]
    fn number_operator_is_idempotent() {
        let n = number_operator(2, 8);
        assert_eq!(n.mul(&n).unwrap(), n);
    }

    #[test]
    fn hole_density_values() {
        let h = hole_density_observable(1, 3).unwrap();
        assert_eq!(h.degree(), 4);
        assert_eq!(expectation(&h, &ProductState::vacuum(6)).unwrap(), 1.0);
        let mut st = ProductState::vacuum(6);
        st.set(2, true);
        st.set(3, true);
        assert_eq!(expectation(&h, &st).unwrap(), 0.0);
        st.set(3, false);
        assert_eq!(expectation(&h, &st).unwrap(), 0.0);
        assert!(hole_density_observable(3, 3).is_err());
    }

    #[test]
    fn afm_hole_state_three_by_three() {
        let st = antiferromagnetic_hole_state(3).unwrap();
        assert_eq!(st.len(), 18);
        assert_eq!(st.particle_number(), 8);
        let c = central_site(3).unwrap();
        assert_eq!(c, 4);
        assert!(!st.occupied(hubbard_site_modes(c, Spin::Up)));
        assert!(!st.occupied(hubbard_site_modes(c, Spin::Down)));
        // 1-based site 1 (odd, before center) is up; site 6 (even, after) is up.
        assert!(st.occupied(hubbard_site_modes(0, Spin::Up)));
        assert!(st.occupied(hubbard_site_modes(5, Spin::Up)));
        assert!(st.occupied(hubbard_site_modes(1, Spin::Down)));
        let h = hole_density_observable(c, 9).unwrap();
        assert_eq!(expectation(&h, &st).unwrap(), 1.0);
        for side in [5, 7] {
            let st = antiferromagnetic_hole_state(side).unwrap();
            assert_eq!(st.particle_number(), side * side - 1);
        }
        assert!(antiferromagnetic_hole_state(4).is_err());
        let chain = antiferromagnetic_hole_pattern(5).unwrap();
        assert_eq!(chain.to_string(), "1001001001");
        assert!(antiferromagnetic_hole_pattern(4).is_err());
    }

    #[test]
    fn odd_strings_vanish() {
        let st: ProductState = "101".parse().unwrap();
        assert_eq!(string_expectation(&MajoranaString::from_modes(&[0]), &st), 0.0);
        assert_eq!(string_expectation(&MajoranaString::from_modes(&[1, 2]), &st), 0.0);
        assert_eq!(string_expectation(&MajoranaString::from_modes(&[0, 2]), &st), 0.0);
    }

    #[test]
    fn bitstring_format() {
        let st: ProductState = "0110".parse().unwrap();
        assert_eq!(st.to_string(), "0110");
        assert_eq!(st.basis_index(), 0b0110);
        assert!("01a".parse::<ProductState>().is_err());
        assert!("".parse::<ProductState>().is_err());
    }
}
