//! Linear codes as materialized codeword sets: span of a generator matrix,
//! minimum general weight, and Gray-image statistics.
//!
//! Codes are desk scale. The span is enumerated directly over all coefficient
//! tuples and deduplicated; codewords are kept sorted by their canonical
//! integer encodings so serialization and hashing are deterministic.

use std::collections::HashSet;

use num_rational::BigRational;

use crate::error::RingcodeError;
use crate::gray::{hamming_distance, GrayMap};
use crate::ring::{RingSpec, RingVector};
use crate::weights::{general_weight, WeightFunction};

pub const DEFAULT_SPAN_BUDGET: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMatrix {
    pub ring: RingSpec,
    pub rows: Vec<Vec<u32>>,
    pub n: usize,
}

impl GeneratorMatrix {
    pub fn new(ring: RingSpec, rows: Vec<Vec<u32>>) -> Result<Self, RingcodeError> {
        if rows.is_empty() {
            return Err(RingcodeError::InvalidGenerator(
                "generator matrix needs at least one row".into(),
            ));
        }
        let n = rows[0].len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(RingcodeError::InvalidGenerator(format!(
                    "row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
            for &e in row {
                ring.check_code(e)?;
            }
        }
        Ok(GeneratorMatrix { ring, rows, n })
    }

    /// Parse the generator matrix file format:
    ///
    /// ```text
    /// ring: Z4
    /// n: 2
    /// rows:
    /// 1 1
    /// 0 2
    /// ```
    ///
    /// `#` starts a comment; blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self, RingcodeError> {
        let mut ring: Option<RingSpec> = None;
        let mut n: Option<usize> = None;
        let mut in_rows = false;
        let mut rows: Vec<Vec<u32>> = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = match raw.split_once('#') {
                Some((before, _)) => before,
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| RingcodeError::Parse {
                line: lineno,
                message,
            };
            if !in_rows {
                if let Some(rest) = line.strip_prefix("ring:") {
                    ring = Some(RingSpec::parse(rest).map_err(|e| err(e.to_string()))?);
                } else if let Some(rest) = line.strip_prefix("n:") {
                    n = Some(
                        rest.trim()
                            .parse()
                            .map_err(|_| err(format!("bad length {:?}", rest.trim())))?,
                    );
                } else if line == "rows:" {
                    if ring.is_none() {
                        return Err(err("rows: before ring:".into()));
                    }
                    in_rows = true;
                } else {
                    return Err(err(format!("unexpected line {line:?}")));
                }
            } else {
                let ring = ring.as_ref().unwrap();
                let row = line
                    .split_whitespace()
                    .map(|tok| ring.parse_element(tok))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| err(e.to_string()))?;
                if let Some(n) = n {
                    if row.len() != n {
                        return Err(err(format!("row has {} entries, expected {n}", row.len())));
                    }
                }
                rows.push(row);
            }
        }

        let ring = ring.ok_or(RingcodeError::Parse {
            line: 0,
            message: "missing ring: header".into(),
        })?;
        if rows.is_empty() {
            return Err(RingcodeError::Parse {
                line: 0,
                message: "no generator rows".into(),
            });
        }
        GeneratorMatrix::new(ring, rows)
    }

    pub fn format(&self) -> String {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&e| self.ring.format_element(e))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n");
        format!("ring: {}\nn: {}\nrows:\n{}\n", self.ring.name(), self.n, rows)
    }

    /// One-line rendering used in reports: rows joined by `;`.
    pub fn compact(&self) -> String {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&e| self.ring.format_element(e))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// An R-submodule of R^n, stored as its full sorted codeword set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    pub ring: RingSpec,
    pub n: usize,
    codewords: Vec<Vec<u32>>,
}

impl LinearCode {
    /// Rebuild a code from an already sorted, deduplicated codeword set, e.g.
    /// one produced by `canonical_key`. The set is trusted to be a submodule.
    pub(crate) fn from_sorted_codewords(
        ring: RingSpec,
        n: usize,
        codewords: Vec<Vec<u32>>,
    ) -> Self {
        debug_assert!(codewords.windows(2).all(|w| w[0] < w[1]));
        LinearCode { ring, n, codewords }
    }

    pub fn size(&self) -> usize {
        self.codewords.len()
    }

    pub fn codewords(&self) -> &[Vec<u32>] {
        &self.codewords
    }

    pub fn is_zero_code(&self) -> bool {
        self.codewords.len() == 1
    }

    pub fn codeword_vectors(&self) -> impl Iterator<Item = RingVector> + '_ {
        self.codewords.iter().map(move |w| RingVector {
            ring: self.ring.clone(),
            entries: w.clone(),
        })
    }

    /// Canonical key: the sorted codeword list flattened. Two equal submodules
    /// always produce the same key.
    pub fn canonical_key(&self) -> Vec<u32> {
        let mut key = Vec::with_capacity(self.codewords.len() * self.n);
        for w in &self.codewords {
            key.extend_from_slice(w);
        }
        key
    }
}

/// Enumerate { sum of lambda_i * row_i : lambda_i in R } and deduplicate.
pub fn span(g: &GeneratorMatrix) -> Result<LinearCode, RingcodeError> {
    span_with_budget(g, DEFAULT_SPAN_BUDGET)
}

pub fn span_with_budget(g: &GeneratorMatrix, budget: u128) -> Result<LinearCode, RingcodeError> {
    let m = g.ring.cardinality as u128;
    let k = g.rows.len() as u32;
    let combos = m
        .checked_pow(k)
        .ok_or(RingcodeError::BudgetExceeded {
            needed: u128::MAX,
            budget,
        })?;
    if combos > budget {
        return Err(RingcodeError::BudgetExceeded {
            needed: combos,
            budget,
        });
    }

    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut scalars = vec![0u32; g.rows.len()];
    loop {
        let mut word = vec![0u32; g.n];
        for (row, &lambda) in g.rows.iter().zip(&scalars) {
            if lambda != 0 {
                for (w, &e) in word.iter_mut().zip(row) {
                    *w = g.ring.add(*w, g.ring.mul(lambda, e));
                }
            }
        }
        seen.insert(word);

        // odometer over scalar tuples
        let mut i = scalars.len();
        loop {
            if i == 0 {
                let mut codewords: Vec<Vec<u32>> = seen.into_iter().collect();
                codewords.sort();
                return Ok(LinearCode {
                    ring: g.ring.clone(),
                    n: g.n,
                    codewords,
                });
            }
            i -= 1;
            scalars[i] += 1;
            if scalars[i] < g.ring.cardinality {
                break;
            }
            scalars[i] = 0;
        }
    }
}

/// Minimum general weight over the nonzero codewords. Undefined for the zero
/// code.
pub fn min_weight(code: &LinearCode, wf: &WeightFunction) -> Result<BigRational, RingcodeError> {
    if wf.ring != code.ring {
        return Err(RingcodeError::RingMismatch);
    }
    if code.size() < 2 {
        return Err(RingcodeError::ZeroCode);
    }
    code.codeword_vectors()
        .filter(|w| !w.is_zero())
        .map(|w| general_weight(wf, &w))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .min()
        .ok_or(RingcodeError::ZeroCode)
}

/// Minimum Hamming distance over all pairs of distinct Gray images. Computed
/// pairwise because the image need not be linear.
pub fn gray_image_min_hamming(code: &LinearCode, gm: &GrayMap) -> Result<usize, RingcodeError> {
    if gm.domain != code.ring {
        return Err(RingcodeError::RingMismatch);
    }
    if code.size() < 2 {
        return Err(RingcodeError::ZeroCode);
    }
    let images: Vec<Vec<u32>> = code
        .codeword_vectors()
        .map(|w| gm.apply(&w))
        .collect::<Result<_, _>>()?;
    let mut best: Option<usize> = None;
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            let d = hamming_distance(&images[i], &images[j]);
            if d > 0 {
                best = Some(best.map_or(d, |b| b.min(d)));
            }
        }
    }
    best.ok_or(RingcodeError::ZeroCode)
}

/// Number of distinct Gray image vectors.
pub fn image_size(code: &LinearCode, gm: &GrayMap) -> Result<usize, RingcodeError> {
    if gm.domain != code.ring {
        return Err(RingcodeError::RingMismatch);
    }
    let images: HashSet<Vec<u32>> = code
        .codeword_vectors()
        .map(|w| gm.apply(&w))
        .collect::<Result<_, _>>()?;
    Ok(images.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gray::{gray_f2u, gray_z4};
    use crate::weights::{
        distance, euclidean_wf_zl, hamming_wf, lee_wf_f2u, lee_wf_zl, rat,
    };

    fn gen(ring: RingSpec, rows: Vec<Vec<u32>>) -> GeneratorMatrix {
        GeneratorMatrix::new(ring, rows).unwrap()
    }

    #[test]
    fn span_examples() {
        let z4 = RingSpec::zmod(4).unwrap();
        let c = span(&gen(z4.clone(), vec![vec![1, 1]])).unwrap();
        assert_eq!(
            c.codewords(),
            &[vec![0, 0], vec![1, 1], vec![2, 2], vec![3, 3]]
        );

        let c = span(&gen(z4.clone(), vec![vec![2]])).unwrap();
        assert_eq!(c.codewords(), &[vec![0], vec![2]]);

        let c = span(&gen(z4, vec![vec![0, 0, 0]])).unwrap();
        assert_eq!(c.size(), 1);
        assert!(c.is_zero_code());
    }

    #[test]
    fn span_budget() {
        let z4 = RingSpec::zmod(4).unwrap();
        let g = gen(z4, vec![vec![1], vec![2], vec![3]]);
        assert!(matches!(
            span_with_budget(&g, 10),
            Err(RingcodeError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn min_weight_examples() {
        let z4 = RingSpec::zmod(4).unwrap();
        let lee = lee_wf_zl(4).unwrap();
        let c = span(&gen(z4.clone(), vec![vec![1, 1]])).unwrap();
        assert_eq!(min_weight(&c, &lee).unwrap(), rat(2));

        let c2 = span(&gen(z4.clone(), vec![vec![2]])).unwrap();
        assert_eq!(min_weight(&c2, &lee).unwrap(), rat(2));

        let euc = euclidean_wf_zl(4).unwrap();
        let c = span(&gen(z4.clone(), vec![vec![1, 1]])).unwrap();
        assert_eq!(min_weight(&c, &euc).unwrap(), rat(2));

        let zero = span(&gen(z4, vec![vec![0]])).unwrap();
        assert!(matches!(min_weight(&zero, &lee), Err(RingcodeError::ZeroCode)));
    }

    #[test]
    fn gray_image_examples() {
        let z4 = RingSpec::zmod(4).unwrap();
        let c = span(&gen(z4, vec![vec![1, 1]])).unwrap();
        let gm = gray_z4();
        assert_eq!(gray_image_min_hamming(&c, &gm).unwrap(), 2);
        assert_eq!(image_size(&c, &gm).unwrap(), 4);

        let f2u = RingSpec::f2u();
        let c = span(&gen(f2u, vec![vec![2]])).unwrap();
        assert_eq!(gray_image_min_hamming(&c, &gray_f2u()).unwrap(), 2);
    }

    #[test]
    fn image_size_zero_code() {
        let z4 = RingSpec::zmod(4).unwrap();
        let zero = span(&gen(z4, vec![vec![0, 0]])).unwrap();
        assert_eq!(image_size(&zero, &gray_z4()).unwrap(), 1);
    }

    #[test]
    fn span_is_closed() {
        let z6 = RingSpec::zmod(6).unwrap();
        let c = span(&gen(z6.clone(), vec![vec![2, 3], vec![3, 0]])).unwrap();
        let words: HashSet<Vec<u32>> = c.codewords().iter().cloned().collect();
        for a in c.codeword_vectors() {
            for b in c.codeword_vectors() {
                assert!(words.contains(&a.add(&b).unwrap().entries));
            }
            for s in z6.elements() {
                assert!(words.contains(&a.scale(s).entries));
            }
        }
        assert!(words.contains(&vec![0, 0]));
    }

    #[test]
    fn min_weight_matches_pairwise_oracle() {
        let z4 = RingSpec::zmod(4).unwrap();
        let h = hamming_wf(&z4);
        let c = span(&gen(z4, vec![vec![1, 2], vec![0, 2]])).unwrap();
        let mut best: Option<BigRational> = None;
        let words: Vec<_> = c.codeword_vectors().collect();
        for i in 0..words.len() {
            for j in 0..words.len() {
                if i != j {
                    let d = distance(&h, &words[i], &words[j]).unwrap();
                    best = Some(match best {
                        Some(b) => b.min(d),
                        None => d,
                    });
                }
            }
        }
        assert_eq!(min_weight(&c, &h).unwrap(), best.unwrap());
    }

    #[test]
    fn row_order_and_duplication_irrelevant() {
        let f2u = RingSpec::f2u();
        let a = span(&gen(f2u.clone(), vec![vec![1, 2], vec![2, 0]])).unwrap();
        let b = span(&gen(f2u.clone(), vec![vec![2, 0], vec![1, 2]])).unwrap();
        let c = span(&gen(f2u, vec![vec![1, 2], vec![2, 0], vec![1, 2]])).unwrap();
        assert_eq!(a.codewords(), b.codewords());
        assert_eq!(a.codewords(), c.codewords());
    }

    #[test]
    fn isometric_map_preserves_min_distance() {
        let z4 = RingSpec::zmod(4).unwrap();
        let lee = lee_wf_zl(4).unwrap();
        let gm = gray_z4();
        for rows in [vec![vec![1, 1]], vec![vec![2]], vec![vec![1, 2], vec![0, 2]]] {
            let c = span(&gen(z4.clone(), rows)).unwrap();
            let dl = min_weight(&c, &lee).unwrap();
            let dh = gray_image_min_hamming(&c, &gm).unwrap();
            assert_eq!(dl, rat(dh as i64));
            assert_eq!(image_size(&c, &gm).unwrap(), c.size());
        }
    }

    #[test]
    fn parse_matrix_file() {
        let text = "ring: Z4  # the ring\nn: 2\nrows:\n1 1\n0 2\n";
        let g = GeneratorMatrix::parse(text).unwrap();
        assert_eq!(g.ring.name(), "Z4");
        assert_eq!(g.n, 2);
        assert_eq!(g.rows, vec![vec![1, 1], vec![0, 2]]);

        let text = "ring: F2U\nrows:\nu 1+u\n";
        let g = GeneratorMatrix::parse(text).unwrap();
        assert_eq!(g.rows, vec![vec![2, 3]]);
    }

    #[test]
    fn parse_matrix_errors() {
        assert!(GeneratorMatrix::parse("ring: Z4\nrows:\n").is_err());
        assert!(GeneratorMatrix::parse("n: 2\nrows:\n1 1\n").is_err());
        let ragged = "ring: Z4\nn: 2\nrows:\n1 1\n2\n";
        match GeneratorMatrix::parse(ragged) {
            Err(RingcodeError::Parse { line, .. }) => assert_eq!(line, 5),
            other => panic!("expected parse error, got {other:?}"),
        }
        let bad_tok = "ring: Z4\nrows:\n1 x\n";
        assert!(matches!(
            GeneratorMatrix::parse(bad_tok),
            Err(RingcodeError::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn matrix_format_round_trip() {
        let z4 = RingSpec::zmod(4).unwrap();
        let g = gen(z4, vec![vec![1, 1], vec![0, 2]]);
        let g2 = GeneratorMatrix::parse(&g.format()).unwrap();
        assert_eq!(g, g2);
    }
}
