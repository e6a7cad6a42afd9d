//! Fermi-Hubbard Hamiltonians in Majorana form.
//!
//! `H = -Σ_{<i,j>,σ} (c*_{iσ} c_{jσ} + c*_{jσ} c_{iσ}) + U Σ_i n_{i↑} n_{i↓}`
//!
//! Spin orbitals are site-major with up before down: fermionic mode
//! `2·site + spin`. Terms are emitted hopping first (bond order, up then
//! down), then interactions site by site; this order fixes the coloring.

use num_complex::Complex64;

use super::QuarticHamiltonian;
use crate::algebra::{MajoranaPolynomial, MajoranaString};
use crate::error::{Error, Result};
use crate::fermion;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Spin {
    Up = 0,
    Down = 1,
}

/// Fermionic mode index of `(site, spin)`.
pub fn hubbard_site_modes(site: usize, spin: Spin) -> usize {
    2 * site + spin as usize
}

fn build(n_sites: usize, bonds: &[(usize, usize)], u: f64) -> Result<QuarticHamiltonian> {
    let n_modes = 4 * n_sites;
    let mut terms: Vec<(MajoranaString, f64)> = Vec::new();
    let mut shift = 0.0;
    let mut push = |p: MajoranaPolynomial, shift: &mut f64| -> Result<()> {
        for (s, c) in p.sorted_terms() {
            debug_assert!(c.im.abs() < 1e-15);
            if s.is_identity() {
                *shift += c.re;
            } else {
                terms.push((s, c.re));
            }
        }
        Ok(())
    };
    for &(i, j) in bonds {
        for spin in [Spin::Up, Spin::Down] {
            let hop = fermion::hopping(n_modes, hubbard_site_modes(i, spin), hubbard_site_modes(j, spin));
            push(hop.scale(Complex64::new(-1.0, 0.0)), &mut shift)?;
        }
    }
    if u != 0.0 {
        for site in 0..n_sites {
            let up = number_polynomial(n_modes, hubbard_site_modes(site, Spin::Up));
            let down = number_polynomial(n_modes, hubbard_site_modes(site, Spin::Down));
            let interaction = up.mul(&down)?.scale(Complex64::new(u, 0.0));
            push(interaction, &mut shift)?;
        }
    }
    QuarticHamiltonian::new(n_modes, terms, shift)
}

fn number_polynomial(n_modes: usize, mode: usize) -> MajoranaPolynomial {
    fermion::creation(n_modes, mode).mul(&fermion::annihilation(n_modes, mode)).expect("same N")
}

/// Chain of `sites` sites with nearest-neighbor hopping.
pub fn build_hubbard_1d(sites: usize, u: f64, periodic: bool) -> Result<QuarticHamiltonian> {
    if sites < 2 {
        return Err(Error::InvalidArgument(format!("1D Hubbard needs at least 2 sites, got {sites}")));
    }
    let mut bonds: Vec<(usize, usize)> = (0..sites - 1).map(|i| (i, i + 1)).collect();
    // For two sites the wrap-around bond would duplicate (0, 1).
    if periodic && sites > 2 {
        bonds.push((sites - 1, 0));
    }
    build(sites, &bonds, u)
}

/// Open-boundary `side × side` square lattice, sites numbered row-major.
pub fn build_hubbard_2d(side: usize, u: f64) -> Result<QuarticHamiltonian> {
    if side < 2 {
        return Err(Error::InvalidArgument(format!("2D Hubbard needs side length >= 2, got {side}")));
    }
    let mut bonds = Vec::new();
    for row in 0..side {
        for col in 0..side {
            let site = row * side + col;
            if col + 1 < side {
                bonds.push((site, site + 1));
            }
            if row + 1 < side {
                bonds.push((site, site + side));
            }
        }
    }
    build(side * side, &bonds, u)
}
