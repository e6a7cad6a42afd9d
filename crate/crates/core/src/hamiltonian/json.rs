//! JSON form: `{"n_majorana": N, "identity_shift": x, "terms": [{"mask_hex": "...", "coeff": c}]}`.

use serde::{Deserialize, Serialize};

use super::QuarticHamiltonian;
use crate::algebra::MajoranaString;
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HamiltonianFile {
    pub n_majorana: usize,
    #[serde(default)]
    pub identity_shift: f64,
    pub terms: Vec<TermEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermEntry {
    pub mask_hex: String,
    pub coeff: f64,
}

impl HamiltonianFile {
    pub fn from_hamiltonian(h: &QuarticHamiltonian) -> Self {
        Self {
            n_majorana: h.n_modes(),
            identity_shift: h.identity_shift(),
            terms: h
                .terms()
                .iter()
                .map(|t| TermEntry { mask_hex: t.string.to_hex(), coeff: t.coeff })
                .collect(),
        }
    }

    pub fn to_hamiltonian(&self) -> Result<QuarticHamiltonian> {
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((MajoranaString::from_hex(&t.mask_hex)?, t.coeff)))
            .collect::<Result<Vec<_>>>()?;
        QuarticHamiltonian::new(self.n_majorana, terms, self.identity_shift)
    }
}

impl QuarticHamiltonian {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&HamiltonianFile::from_hamiltonian(self)).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: HamiltonianFile = serde_json::from_str(text)?;
        file.to_hamiltonian()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{build_hubbard_1d, build_hubbard_2d};

    #[test]
    fn serialized_round_trip_is_bit_identical() {
        for h in [build_hubbard_1d(5, 0.7, true).unwrap(), build_hubbard_2d(3, 1.3).unwrap()] {
            let back = QuarticHamiltonian::from_json(&h.to_json()).unwrap();
            assert_eq!(back, h);
            for (a, b) in back.terms().iter().zip(h.terms()) {
                assert_eq!(a.coeff.to_bits(), b.coeff.to_bits());
            }
        }
    }

    #[test]
    fn rejects_unknown_keys_and_bad_terms() {
        assert!(QuarticHamiltonian::from_json(r#"{"n_majorana":4,"terms":[],"extra":1}"#).is_err());
        assert!(QuarticHamiltonian::from_json(r#"{"n_majorana":4,"terms":[{"mask_hex":"7","coeff":1.0}]}"#).is_err());
        let h = QuarticHamiltonian::from_json(r#"{"n_majorana":4,"terms":[{"mask_hex":"3","coeff":1.0}]}"#).unwrap();
        assert_eq!(h.len(), 1);
        assert_eq!(h.identity_shift(), 0.0);
    }
}
