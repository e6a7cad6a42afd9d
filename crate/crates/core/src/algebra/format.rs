//! `majpoly v1` text format.
//!
//! ```text
//! majpoly v1 N=8
//! 0 0.5 0.0
//! 3 -0.5 0.0
//! ```
//!
//! One term per line as `<hex mask> <re> <im>`, sorted by mask. Floats are
//! written in shortest round-trip form, so write/read is exact. Blank lines
//! and lines starting with `#` are ignored on input.

use std::io::{BufRead, Write};

use num_complex::Complex64;

use super::{MajoranaPolynomial, MajoranaString};
use crate::error::{Error, Result};

const MAGIC: &str = "majpoly v1";

pub fn write_polynomial<W: Write>(p: &MajoranaPolynomial, mut w: W) -> Result<()> {
    writeln!(w, "{MAGIC} N={}", p.n_modes())?;
    for (s, c) in p.sorted_terms() {
        writeln!(w, "{} {:?} {:?}", s.to_hex(), c.re, c.im)?;
    }
    Ok(())
}

pub fn to_text(p: &MajoranaPolynomial) -> String {
    let mut buf = Vec::new();
    write_polynomial(p, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("format is ASCII")
}

pub fn read_polynomial<R: BufRead>(r: R) -> Result<MajoranaPolynomial> {
    let mut lines = r.lines().enumerate();
    let n_modes = loop {
        let Some((i, line)) = lines.next() else {
            return Err(Error::Parse { line: 0, message: "missing header".into() });
        };
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        break parse_header(line).ok_or_else(|| Error::Parse {
            line: i + 1,
            message: format!("expected `{MAGIC} N=<N>`, got {line:?}"),
        })?;
    };
    let mut terms = Vec::new();
    for (i, line) in lines {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse { line: i + 1, message };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(err(format!("expected 3 fields, got {}", fields.len())));
        }
        let s = MajoranaString::from_hex(fields[0]).map_err(|e| err(e.to_string()))?;
        let re: f64 = fields[1].parse().map_err(|_| err(format!("bad real part {:?}", fields[1])))?;
        let im: f64 = fields[2].parse().map_err(|_| err(format!("bad imaginary part {:?}", fields[2])))?;
        if !s.fits(n_modes) {
            return Err(err(format!("mask {} exceeds N={n_modes}", fields[0])));
        }
        terms.push((s, Complex64::new(re, im)));
    }
    MajoranaPolynomial::from_terms(n_modes, terms)
}

pub fn from_text(text: &str) -> Result<MajoranaPolynomial> {
    read_polynomial(text.as_bytes())
}

fn parse_header(line: &str) -> Option<usize> {
    let rest = line.strip_prefix(MAGIC)?.trim();
    let n: usize = rest.strip_prefix("N=")?.parse().ok()?;
    (n <= super::MAX_MODES).then_some(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn writes_expected_layout() {
        let p = MajoranaPolynomial::from_terms(
            8,
            [
                (MajoranaString::from_modes(&[0, 1]), Complex64::new(-0.5, 0.0)),
                (MajoranaString::IDENTITY, Complex64::new(0.5, 0.0)),
            ],
        )
        .unwrap();
        assert_eq!(to_text(&p), "majpoly v1 N=8\n0 0.5 0.0\n3 -0.5 0.0\n");
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(from_text("").is_err());
        assert!(from_text("majpoly v2 N=4\n").is_err());
        assert!(from_text("majpoly v1 N=4\n3 1.0\n").is_err());
        assert!(from_text("majpoly v1 N=4\n10 1.0 0.0\n").is_err());
        assert!(from_text("majpoly v1 N=4\nzz 1.0 0.0\n").is_err());
    }

    #[test]
    fn skips_comments_and_sums_duplicates() {
        let p = from_text("# fixture\nmajpoly v1 N=4\n\n3 1.0 0.0\n# note\n3 0.5 0.0\n").unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.coeff(&MajoranaString::from_modes(&[0, 1])), Complex64::new(1.5, 0.0));
    }

    proptest! {
        #[test]
        fn round_trip_is_exact(
            n in 1usize..=256,
            raw in proptest::collection::vec((any::<[u64; 4]>(), any::<f64>(), -1e300f64..1e300), 0..20),
        ) {
            let terms = raw.into_iter().map(|(w, re, im)| {
                let mut s = MajoranaString::from_words(w);
                s = s & mask_below(n);
                let re = if re.is_finite() { re } else { 1.0 };
                (s, Complex64::new(re, im))
            });
            let p = MajoranaPolynomial::from_terms(n, terms).unwrap();
            let q = from_text(&to_text(&p)).unwrap();
            prop_assert!(p.same_terms(&q));
        }
    }

    fn mask_below(n: usize) -> MajoranaString {
        (0..n).collect()
    }
}
