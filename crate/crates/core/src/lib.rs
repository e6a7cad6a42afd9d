//! Heisenberg-picture simulation of sparse quartic fermionic Hamiltonians by
//! Majorana propagation: observables are expanded in Majorana strings,
//! evolved through Trotter sweeps, and truncated to low degree.
//!
//! ```
//! use majprop::{build_hubbard_1d, greedy_color_partition, mp_propagate, MpConfig};
//! use majprop::{fermion::pair_string, MajoranaPolynomial};
//! use num_complex::Complex64;
//!
//! let h = build_hubbard_1d(3, 1.0, false).unwrap();
//! let schedule = greedy_color_partition(&h);
//! let a = MajoranaPolynomial::monomial(12, pair_string(2), Complex64::new(1.0, 0.0));
//! let (a_t, trace) = mp_propagate(&a, &h, &schedule, 0.1, &MpConfig::new(0.01, 4)).unwrap();
//! assert!(a_t.degree() <= 4);
//! assert_eq!(trace.records.len(), 11);
//! ```

pub mod algebra;
pub mod error;
pub mod fermion;
pub mod hamiltonian;
pub mod oracle;
pub mod propagation;
pub mod states;

pub use algebra::{
    rotate_string, string_multiply, strings_anticommute, MajoranaPolynomial, MajoranaString, Phase,
};
pub use error::{Error, Result};
pub use hamiltonian::{
    build_hubbard_1d, build_hubbard_2d, greedy_color_partition, HamiltonianTerm, QuarticHamiltonian,
    TrotterSchedule, ValidationReport,
};
pub use propagation::{
    apriori_error_bound, mp_propagate, optimal_time_step, MpConfig, PropagationTrace, StepRecord, TruncationMode,
};
pub use states::{expectation, ProductState};

/// Version string embedded in output headers.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
