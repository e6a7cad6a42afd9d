mod common;

use common::*;
use majprop::fermion::{annihilation, creation, pair_string};
use majprop::hamiltonian::{build_hubbard_1d, build_hubbard_2d, greedy_color_partition, hubbard_site_modes, Spin};
use majprop::oracle::DenseOracle;
use majprop::states::{
    antiferromagnetic_hole_state, expectation, expectation_complex, hole_density_observable, number_operator,
    string_expectation, ProductState,
};
use majprop::{MajoranaPolynomial, MajoranaString, QuarticHamiltonian};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

#[test]
fn ladder_polynomials_match_literal_matrices() {
    let o = DenseOracle::new(8).unwrap();
    for j in 0..4 {
        let cd = o.polynomial_to_dense(&creation(8, j)).unwrap();
        let a = o.polynomial_to_dense(&annihilation(8, j)).unwrap();
        assert!(max_abs_diff(cd.matrix(), &literal_creator(4, j)) < 1e-14);
        assert!(max_abs_diff(a.matrix(), &literal_annihilator(4, j)) < 1e-14);
        let n = o.polynomial_to_dense(&number_operator(j, 8)).unwrap();
        assert!(max_abs_diff(n.matrix(), &(literal_creator(4, j) * literal_annihilator(4, j))) < 1e-14);
        assert!((number_operator(j, 8).coeff(&MajoranaString::IDENTITY) - c(0.5, 0.0)).norm() < 1e-15);
    }
}

/// Hubbard Hamiltonian assembled directly from literal `c`, `c*` matrices.
fn literal_hubbard(n_sites: usize, bonds: &[(usize, usize)], u: f64) -> DMatrix<Complex64> {
    let nf = 2 * n_sites;
    let dim = 1usize << nf;
    let mut h = DMatrix::from_element(dim, dim, c(0.0, 0.0));
    for &(i, j) in bonds {
        for spin in [Spin::Up, Spin::Down] {
            let (a, b) = (hubbard_site_modes(i, spin), hubbard_site_modes(j, spin));
            let hop = literal_creator(nf, a) * literal_annihilator(nf, b);
            h -= &hop + hop.adjoint();
        }
    }
    for i in 0..n_sites {
        let nu = literal_creator(nf, 2 * i) * literal_annihilator(nf, 2 * i);
        let nd = literal_creator(nf, 2 * i + 1) * literal_annihilator(nf, 2 * i + 1);
        h += nu * nd * c(u, 0.0);
    }
    h
}

#[test]
fn hubbard_matches_literal_construction() {
    for u in [0.0, 1.0, 4.0, -2.5] {
        let h = build_hubbard_1d(2, u, false).unwrap();
        let dense = DenseOracle::new(8).unwrap().hamiltonian_to_dense(&h).unwrap();
        assert!(max_abs_diff(dense.matrix(), &literal_hubbard(2, &[(0, 1)], u)) < 1e-12, "U={u}");

        let h3 = build_hubbard_1d(3, u, true).unwrap();
        let dense3 = DenseOracle::new(12).unwrap().hamiltonian_to_dense(&h3).unwrap();
        assert!(max_abs_diff(dense3.matrix(), &literal_hubbard(3, &[(0, 1), (1, 2), (2, 0)], u)) < 1e-12);
        assert!(dense3.hermiticity_defect() < 1e-12);
    }
    let h = build_hubbard_2d(2, 1.5).unwrap();
    let dense = DenseOracle::new(16).unwrap().hamiltonian_to_dense(&h).unwrap();
    let bonds = [(0, 1), (0, 2), (1, 3), (2, 3)];
    assert!(max_abs_diff(dense.matrix(), &literal_hubbard(4, &bonds, 1.5)) < 1e-12);
}

fn brute_sparsity(h: &QuarticHamiltonian) -> usize {
    (0..h.n_modes()).map(|m| h.terms().iter().filter(|t| t.string.contains(m)).count()).max().unwrap_or(0)
}

#[test]
fn sparsity_and_coloring_on_lattices() {
    let mut models = Vec::new();
    for l in 2..=8 {
        for periodic in [false, true] {
            models.push(build_hubbard_1d(l, 1.0, periodic).unwrap());
        }
    }
    for l in [3, 5] {
        models.push(build_hubbard_2d(l, 1.0).unwrap());
        models.push(build_hubbard_2d(l, 0.0).unwrap());
    }
    for h in &models {
        assert_eq!(h.sparsity(), brute_sparsity(h));
        let s = greedy_color_partition(h);
        s.verify(h).unwrap();
        assert!(s.len() <= 4 * h.sparsity());
    }
    let h = build_hubbard_1d(6, 1.0, false).unwrap();
    assert_eq!(h.sparsity(), 4);
    let h = build_hubbard_2d(3, 1.0).unwrap();
    assert_eq!(h.sparsity(), 6);
}

#[test]
fn commutator_term_count_is_bounded() {
    let mut r = rng(3);
    for h in [build_hubbard_1d(5, 1.0, true).unwrap(), build_hubbard_2d(3, 2.0).unwrap()] {
        for _ in 0..500 {
            let d = r.random_range(1..=8);
            let s = random_string(&mut r, h.n_modes(), d);
            let count = h.terms().iter().filter(|t| majprop::strings_anticommute(&t.string, &s)).count();
            assert_eq!(count, h.anticommuting_count(&s));
            assert!(count <= h.sparsity() * s.degree());
        }
    }
}

#[test]
fn validation_report() {
    let empty = QuarticHamiltonian::new(4, Vec::new(), 0.0).unwrap();
    let r = empty.validate();
    assert_eq!((r.sparsity, r.groups), (0, 0));
    assert!(QuarticHamiltonian::new(4, [(ms(&[0, 1, 2]), 1.0)], 0.0).is_err());
    assert!(build_hubbard_1d(3, 4.0, false).unwrap().validate().unit_normalized);
    assert!(!build_hubbard_1d(3, 8.0, false).unwrap().validate().unit_normalized);
}

#[test]
fn pair_sign_law_matches_dense() {
    // Every string and every basis state at N = 6 (three fermionic modes).
    let o = DenseOracle::new(6).unwrap();
    for bits in 0u64..64 {
        let s = MajoranaString::from_words([bits, 0, 0, 0]);
        let d = o.string_to_dense(&s);
        for k in 0..8usize {
            let st = ProductState::new((0..3).map(|j| k >> j & 1 == 1).collect());
            let dense = d.expectation(&st).unwrap();
            assert!((dense - c(string_expectation(&s, &st), 0.0)).norm() < 1e-14, "{s:?} {st}");
        }
    }
    // Up to five pairs, covering every residue of k mod 4.
    let o = DenseOracle::new(10).unwrap();
    let all_pairs: MajoranaString = (0..10).collect();
    for k in 0..32usize {
        let st = ProductState::new((0..5).map(|j| k >> j & 1 == 1).collect());
        let dense = o.string_to_dense(&all_pairs).expectation(&st).unwrap();
        assert!((dense.re - string_expectation(&all_pairs, &st)).abs() < 1e-14);
    }
}

#[test]
fn random_polynomial_expectations_match_dense() {
    let o = DenseOracle::new(10).unwrap();
    let mut r = rng(10);
    for _ in 0..30 {
        let p = random_polynomial(&mut r, 10, 30, 10, false);
        let d = o.polynomial_to_dense(&p).unwrap();
        let k = r.random_range(0..32usize);
        let st = ProductState::new((0..5).map(|j| k >> j & 1 == 1).collect());
        assert!((expectation_complex(&p, &st).unwrap() - d.expectation(&st).unwrap()).norm() < 1e-10);
    }
    let mut p = MajoranaPolynomial::zero(10);
    p.add_term(ms(&[0, 1, 4, 5]), c(0.3, 0.0));
    p.add_term(ms(&[2, 3]), c(-0.7, 0.0));
    let q = number_operator(4, 10);
    let st: ProductState = "11010".parse().unwrap();
    let lin = p.scale(c(2.0, 0.0)).add_scaled(&q, c(-3.0, 0.0)).unwrap();
    let lhs = expectation(&lin, &st).unwrap();
    let rhs = 2.0 * expectation(&p, &st).unwrap() - 3.0 * expectation(&q, &st).unwrap();
    assert!((lhs - rhs).abs() < 1e-15);
    assert!(expectation(&MajoranaPolynomial::monomial(10, ms(&[0, 1]), c(0.0, 1.0)), &st).is_err());
}

#[test]
fn single_pair_on_one_mode() {
    let o = DenseOracle::new(2).unwrap();
    let g = o.string_to_dense(&pair_string(0));
    for occ in [false, true] {
        let st = ProductState::new(vec![occ]);
        let v = string_expectation(&pair_string(0), &st);
        assert_eq!(v, if occ { 1.0 } else { -1.0 });
        assert_eq!(g.expectation(&st).unwrap(), c(v, 0.0));
    }
}

#[test]
fn hole_density_dense_form() {
    // One site: (1 - n↑)(1 - n↓) is the projector on the empty state.
    let o = DenseOracle::new(4).unwrap();
    let h = hole_density_observable(0, 1).unwrap();
    let d = o.polynomial_to_dense(&h).unwrap();
    let mut expected = DMatrix::from_element(4, 4, c(0.0, 0.0));
    expected[(0, 0)] = c(1.0, 0.0);
    assert!(max_abs_diff(d.matrix(), &expected) < 1e-15);
    assert!((h.coeff(&ms(&[0, 1, 2, 3])) - c(-0.25, 0.0)).norm() < 1e-15);
    assert_eq!(h.len(), 4);
}

#[test]
fn afm_state_gives_unit_hole_density() {
    for side in [3usize, 5] {
        let st = antiferromagnetic_hole_state(side).unwrap();
        let centre = (side * side - 1) / 2;
        let h = hole_density_observable(centre, side * side).unwrap();
        assert_eq!(expectation(&h, &st).unwrap(), 1.0);
        for site in (0..side * side).filter(|&s| s != centre) {
            let hs = hole_density_observable(site, side * side).unwrap();
            assert_eq!(expectation(&hs, &st).unwrap(), 0.0);
            let up = st.occupied(hubbard_site_modes(site, Spin::Up));
            let down = st.occupied(hubbard_site_modes(site, Spin::Down));
            assert!(up ^ down);
        }
    }
}
