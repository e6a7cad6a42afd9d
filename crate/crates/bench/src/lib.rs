//! Fixtures shared by the benchmarks.

use num_complex::Complex64;

use majprop::fermion::pair_string;
use majprop::{build_hubbard_1d, greedy_color_partition, MajoranaPolynomial, QuarticHamiltonian, TrotterSchedule};

/// Open Hubbard chain with its greedy schedule.
pub fn chain(sites: usize, u: f64) -> (QuarticHamiltonian, TrotterSchedule) {
    let h = build_hubbard_1d(sites, u, false).expect("valid chain");
    let s = greedy_color_partition(&h);
    (h, s)
}

/// Pair string on the spin-up orbital of the central site.
pub fn central_pair(sites: usize) -> MajoranaPolynomial {
    let mode = 2 * (sites.div_ceil(2) - 1);
    MajoranaPolynomial::monomial(4 * sites, pair_string(mode), Complex64::new(1.0, 0.0))
}
