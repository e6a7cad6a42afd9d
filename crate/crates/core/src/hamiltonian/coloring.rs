//! Greedy partition of Hamiltonian terms into support-disjoint groups.
//!
//! Two terms conflict when their strings share a mode. Each term has at most
//! `4(Δ - 1)` conflicts, so visiting terms in order and assigning the
//! smallest color not used by an earlier conflicting term needs at most
//! `4Δ` colors.

use serde::{Deserialize, Serialize};

use super::QuarticHamiltonian;
use crate::algebra::MajoranaString;
use crate::error::{Error, Result};

/// Ordered groups of term indices; terms within a group have disjoint
/// supports and therefore commute.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrotterSchedule {
    groups: Vec<Vec<usize>>,
}

impl TrotterSchedule {
    pub fn from_groups(groups: Vec<Vec<usize>>) -> Self {
        Self { groups }
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn group(&self, g: usize) -> Option<&[usize]> {
        self.groups.get(g).map(Vec::as_slice)
    }

    /// Number of groups G.
    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Check that every term appears exactly once and that groups are
    /// support-disjoint.
    pub fn verify(&self, h: &QuarticHamiltonian) -> Result<()> {
        let mut seen = vec![false; h.len()];
        for (g, group) in self.groups.iter().enumerate() {
            let mut used = MajoranaString::IDENTITY;
            for &i in group {
                let Some(term) = h.terms().get(i) else {
                    return Err(Error::Validation(format!("group {g} references missing term {i}")));
                };
                if std::mem::replace(&mut seen[i], true) {
                    return Err(Error::Validation(format!("term {i} appears in more than one group")));
                }
                if !used.is_disjoint(&term.string) {
                    return Err(Error::Validation(format!("group {g}: term {i} overlaps another term")));
                }
                used = used | term.string;
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::Validation(format!("term {i} is not scheduled")));
        }
        Ok(())
    }
}

/// Color terms in listed order with the smallest feasible color.
pub fn greedy_color_partition(h: &QuarticHamiltonian) -> TrotterSchedule {
    // Union of supports per color: a color is feasible for a term iff the
    // term is disjoint from every earlier term of that color.
    let mut occupied: Vec<MajoranaString> = Vec::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, term) in h.terms().iter().enumerate() {
        match occupied.iter().position(|u| u.is_disjoint(&term.string)) {
            Some(c) => {
                occupied[c] = occupied[c] | term.string;
                groups[c].push(i);
            }
            None => {
                occupied.push(term.string);
                groups.push(vec![i]);
            }
        }
    }
    TrotterSchedule { groups }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(m: &[usize]) -> MajoranaString {
        MajoranaString::from_modes(m)
    }

    #[test]
    fn disjoint_terms_use_one_group() {
        let h = QuarticHamiltonian::new(8, [(ms(&[0, 1]), 1.0), (ms(&[2, 3]), 1.0), (ms(&[4, 5, 6, 7]), 1.0)], 0.0)
            .unwrap();
        let s = greedy_color_partition(&h);
        assert_eq!(s.len(), 1);
        s.verify(&h).unwrap();
    }

    #[test]
    fn path_needs_two_groups() {
        let h = QuarticHamiltonian::new(4, [(ms(&[0, 1]), 1.0), (ms(&[1, 2]), 1.0), (ms(&[2, 3]), 1.0)], 0.0).unwrap();
        // One group is infeasible: terms 0 and 1 share mode 1.
        assert!(TrotterSchedule::from_groups(vec![vec![0, 1, 2]]).verify(&h).is_err());
        let s = greedy_color_partition(&h);
        assert_eq!(s.groups(), &[vec![0, 2], vec![1]]);
        s.verify(&h).unwrap();
    }

    #[test]
    fn verifier_catches_missing_and_repeated_terms() {
        let h = QuarticHamiltonian::new(4, [(ms(&[0, 1]), 1.0), (ms(&[2, 3]), 1.0)], 0.0).unwrap();
        assert!(TrotterSchedule::from_groups(vec![vec![0]]).verify(&h).is_err());
        assert!(TrotterSchedule::from_groups(vec![vec![0, 1], vec![1]]).verify(&h).is_err());
        assert!(TrotterSchedule::from_groups(vec![vec![0, 5]]).verify(&h).is_err());
    }
}
