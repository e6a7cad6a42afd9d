//! Fermionic ladder operators in Majorana form.
//!
//! Fermionic mode `j` owns Majorana modes `2j` and `2j + 1`, with
//! `γ_{2j} = c*_j + c_j` and `γ_{2j+1} = i(c*_j - c_j)`, so
//! `c*_j = (γ_{2j} - iγ_{2j+1}) / 2` and `c_j = (γ_{2j} + iγ_{2j+1}) / 2`.

use num_complex::Complex64;

use crate::algebra::{MajoranaPolynomial, MajoranaString};

fn ladder(n_modes: usize, mode: usize, sign: f64) -> MajoranaPolynomial {
    assert!(2 * mode + 1 < n_modes, "fermionic mode {mode} out of range for N={n_modes}");
    let mut p = MajoranaPolynomial::zero(n_modes);
    p.add_term(MajoranaString::single(2 * mode), Complex64::new(0.5, 0.0));
    p.add_term(MajoranaString::single(2 * mode + 1), Complex64::new(0.0, 0.5 * sign));
    p
}

/// `c*_j`.
pub fn creation(n_modes: usize, mode: usize) -> MajoranaPolynomial {
    ladder(n_modes, mode, -1.0)
}

/// `c_j`.
pub fn annihilation(n_modes: usize, mode: usize) -> MajoranaPolynomial {
    ladder(n_modes, mode, 1.0)
}

/// The pair string `γ_{{2j, 2j+1}}`, equal to `2 n_j - 1`.
pub fn pair_string(mode: usize) -> MajoranaString {
    MajoranaString::from_modes(&[2 * mode, 2 * mode + 1])
}

/// `c*_a c_b + c*_b c_a`.
pub fn hopping(n_modes: usize, a: usize, b: usize) -> MajoranaPolynomial {
    let ab = creation(n_modes, a).mul(&annihilation(n_modes, b)).expect("same N");
    let ba = creation(n_modes, b).mul(&annihilation(n_modes, a)).expect("same N");
    ab.add_scaled(&ba, Complex64::new(1.0, 0.0)).expect("same N")
}
