//! Exhaustive enumeration of linear codes over a small ring and bulk bound
//! verification.
//!
//! All generator matrices with `max_rows` rows are enumerated (zero rows make
//! this cover every smaller row count), spans are deduplicated by canonical
//! codeword set, and every applicable bound is checked on every distinct code.
//! Serial and parallel runs produce identical summaries: deduplication keeps
//! the smallest matrix index per code and results are merged in that order.

use std::collections::{BTreeMap, HashMap};
use std::time::Duration;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::bounds::{
    field_singleton_check, gray_singleton_check, shiromoto_floor_check, strong_singleton_check,
    BoundId, BoundReport,
};
use crate::code::{
    gray_image_min_hamming, image_size, min_weight, span_with_budget, GeneratorMatrix, LinearCode,
};
use crate::error::RingcodeError;
use crate::gray::GrayMap;
use crate::ring::RingSpec;
use crate::weights::{rational_to_frac_string, WeightFunction};

pub const DEFAULT_SCAN_BUDGET: u128 = 10_000_000;

#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub ring: RingSpec,
    pub n: usize,
    pub max_rows: usize,
    pub wfs: Vec<WeightFunction>,
    pub gray: Option<GrayMap>,
    pub budget: u128,
    pub parallel: bool,
}

impl ScanConfig {
    pub fn new(ring: RingSpec, n: usize, max_rows: usize, wfs: Vec<WeightFunction>) -> Self {
        ScanConfig {
            ring,
            n,
            max_rows,
            wfs,
            gray: None,
            budget: DEFAULT_SCAN_BUDGET,
            parallel: false,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BoundStats {
    pub checked: u64,
    pub violations: u64,
    pub not_applicable: u64,
    pub tight: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightRecord {
    pub generator: String,
    pub wf: String,
    pub bound: BoundId,
}

#[derive(Debug, Clone)]
pub struct ScanSummary {
    pub ring: String,
    pub n: usize,
    pub max_rows: usize,
    pub matrices_enumerated: u64,
    pub codes_examined: u64,
    /// Keyed by "{wf}:{bound}".
    pub stats: BTreeMap<String, BoundStats>,
    pub tight_codes: Vec<TightRecord>,
    pub violations_total: u64,
    /// Internal consistency failures: isometric-map distance mismatches, or
    /// disagreement between equivalent bound routes.
    pub cross_check_failures: u64,
    pub csv_rows: Vec<Vec<String>>,
    pub csv_header: Vec<String>,
    pub runtime: Duration,
}

impl ScanSummary {
    pub fn violations_for(&self, bound: BoundId) -> u64 {
        self.stats
            .iter()
            .filter(|(k, _)| k.ends_with(&format!(":{}", bound.as_str())))
            .map(|(_, s)| s.violations)
            .sum()
    }

    pub fn not_applicable_for(&self, bound: BoundId) -> u64 {
        self.stats
            .iter()
            .filter(|(k, _)| k.ends_with(&format!(":{}", bound.as_str())))
            .map(|(_, s)| s.not_applicable)
            .sum()
    }

    pub fn checked_for(&self, bound: BoundId) -> u64 {
        self.stats
            .iter()
            .filter(|(k, _)| k.ends_with(&format!(":{}", bound.as_str())))
            .map(|(_, s)| s.checked)
            .sum()
    }

    /// Deterministic JSON rendering; runtime is intentionally excluded so that
    /// serial and parallel runs serialize identically.
    pub fn to_json(&self) -> serde_json::Value {
        let stats: BTreeMap<String, serde_json::Value> = self
            .stats
            .iter()
            .map(|(k, s)| {
                (
                    k.clone(),
                    serde_json::json!({
                        "checked": s.checked,
                        "violations": s.violations,
                        "not_applicable": s.not_applicable,
                        "tight": s.tight,
                    }),
                )
            })
            .collect();
        serde_json::json!({
            "ring": self.ring,
            "n": self.n,
            "max_rows": self.max_rows,
            "matrices_enumerated": self.matrices_enumerated,
            "codes_examined": self.codes_examined,
            "stats": stats,
            "tight_codes": self.tight_codes.iter().map(|t| serde_json::json!({
                "generator": t.generator,
                "wf": t.wf,
                "bound": t.bound.as_str(),
            })).collect::<Vec<_>>(),
            "violations_total": self.violations_total,
            "cross_check_failures": self.cross_check_failures,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.csv_header.join(","));
        out.push('\n');
        for row in &self.csv_rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

fn matrix_from_index(ring: &RingSpec, n: usize, k: usize, mut idx: u128) -> GeneratorMatrix {
    let m = ring.cardinality as u128;
    let mut entries = vec![0u32; k * n];
    for e in entries.iter_mut().rev() {
        *e = (idx % m) as u32;
        idx /= m;
    }
    let rows = entries.chunks(n).map(|c| c.to_vec()).collect();
    GeneratorMatrix::new(ring.clone(), rows).unwrap()
}

fn code_from_key(ring: &RingSpec, n: usize, key: &[u32]) -> LinearCode {
    let codewords: Vec<Vec<u32>> = if n == 0 {
        vec![vec![]]
    } else {
        key.chunks(n).map(|c| c.to_vec()).collect()
    };
    LinearCode::from_sorted_codewords(ring.clone(), n, codewords)
}

/// Enumerate every distinct submodule of R^n generated by up to `max_rows`
/// rows, together with the first (smallest-index) generator matrix producing
/// it. Deterministic order regardless of parallelism.
pub fn enumerate_codes(
    config: &ScanConfig,
) -> Result<Vec<(GeneratorMatrix, LinearCode)>, RingcodeError> {
    if config.max_rows == 0 {
        return Err(RingcodeError::InvalidGenerator(
            "max_rows must be at least 1".into(),
        ));
    }
    let m = config.ring.cardinality as u128;
    let digits = (config.max_rows * config.n) as u32;
    let total = m.checked_pow(digits).ok_or(RingcodeError::BudgetExceeded {
        needed: u128::MAX,
        budget: config.budget,
    })?;
    if total > config.budget {
        return Err(RingcodeError::BudgetExceeded {
            needed: total,
            budget: config.budget,
        });
    }

    let span_one = |idx: u128| -> (Vec<u32>, u128) {
        let g = matrix_from_index(&config.ring, config.n, config.max_rows, idx);
        let code = span_with_budget(&g, config.budget).unwrap();
        (code.canonical_key(), idx)
    };

    let merge_into = |acc: &mut HashMap<Vec<u32>, u128>, (key, idx): (Vec<u32>, u128)| {
        acc.entry(key)
            .and_modify(|e| {
                if idx < *e {
                    *e = idx;
                }
            })
            .or_insert(idx);
    };

    let dedup: HashMap<Vec<u32>, u128> = if config.parallel {
        (0..total as u64)
            .into_par_iter()
            .fold(HashMap::new, |mut acc, i| {
                merge_into(&mut acc, span_one(i as u128));
                acc
            })
            .reduce(HashMap::new, |mut a, b| {
                for (key, idx) in b {
                    merge_into(&mut a, (key, idx));
                }
                a
            })
    } else {
        let mut acc = HashMap::new();
        for i in 0..total {
            merge_into(&mut acc, span_one(i));
        }
        acc
    };

    let mut entries: Vec<(u128, Vec<u32>)> = dedup.into_iter().map(|(k, i)| (i, k)).collect();
    entries.sort();
    Ok(entries
        .into_iter()
        .map(|(idx, key)| {
            let g = matrix_from_index(&config.ring, config.n, config.max_rows, idx);
            let code = code_from_key(&config.ring, config.n, &key);
            (g, code)
        })
        .collect())
}

fn verdict_cell(r: &BoundReport) -> String {
    if !r.applicable {
        "n/a".into()
    } else if r.holds {
        "holds".into()
    } else {
        "violated".into()
    }
}

fn tight_cell(r: &BoundReport) -> String {
    if r.applicable && r.tight { "tight" } else { "" }.into()
}

struct CodeResult {
    csv_row: Vec<String>,
    tallies: Vec<(String, BoundReport)>,
    tight: Vec<TightRecord>,
    cross_check_failures: u64,
}

fn examine_code(
    config: &ScanConfig,
    grays: &[Option<GrayMap>],
    g: &GeneratorMatrix,
    code: &LinearCode,
) -> Result<CodeResult, RingcodeError> {
    let m = config.ring.cardinality as u64;
    let p = config.ring.min_prime() as u64;
    let size = code.size() as u64;
    let zero = code.is_zero_code();

    let mut row = vec![
        config.ring.name(),
        config.n.to_string(),
        g.compact(),
        size.to_string(),
    ];
    let mut tallies = Vec::new();
    let mut tight = Vec::new();
    let mut cross = 0u64;

    for (wf, gm) in config.wfs.iter().zip(grays) {
        let d: Option<BigRational> = if zero { None } else { Some(min_weight(code, wf)?) };
        row.push(
            d.as_ref()
                .map(rational_to_frac_string)
                .unwrap_or_else(|| "undefined".into()),
        );
        let one = BigRational::from_integer(BigInt::from(1));
        let d_ref = d.clone().unwrap_or(one);
        let a = wf.max_coeff();
        let evidence = gm
            .as_ref()
            .map(|g| g.flags.clone())
            .unwrap_or_else(crate::gray::VerifyFlags::unverified);

        let zero_inputs =
            || serde_json::json!({"n": config.n, "size": size, "d": "undefined"});
        let (shiromoto, grays_bound, strong) = if zero {
            let vac = |id| {
                BoundReport::not_applicable(
                    id,
                    "zero code: minimum weight undefined".into(),
                    zero_inputs(),
                )
            };
            (
                vac(BoundId::ShiromotoFloor),
                vac(BoundId::GraySingleton),
                vac(BoundId::StrongSingleton),
            )
        } else {
            (
                shiromoto_floor_check(config.n, m, size, &d_ref, &a)?,
                gray_singleton_check(config.n, p, size, &d_ref, &a)?,
                strong_singleton_check(config.n, m, size, &d_ref, &a, &evidence)?,
            )
        };

        // Gray-image route, when a map is configured
        let image_field = match gm {
            Some(gm) if !zero => {
                let d_h = gray_image_min_hamming(code, gm)?;
                let img_size = image_size(code, gm)? as u64;
                let img_n = gm.image_length * config.n;
                let r = field_singleton_check(img_n, gm.codomain_prime as u64, img_size, d_h)?;
                // cross-checks for a verified bijective isometric map
                if gm.flags.isometric.is_true() && gm.flags.bijective.is_true() {
                    let d_h_rat = BigRational::from_integer(BigInt::from(d_h));
                    if d.as_ref() != Some(&d_h_rat) || img_size != size {
                        cross += 1;
                    }
                    if r.holds != grays_bound.holds {
                        cross += 1;
                    }
                }
                Some(r)
            }
            _ => None,
        };

        // the floor bound is weaker than the strong form; they must never
        // disagree in that direction
        if strong.applicable && strong.holds && shiromoto.applicable && !shiromoto.holds {
            cross += 1;
        }

        for report in [Some(&shiromoto), Some(&grays_bound), Some(&strong), image_field.as_ref()]
            .into_iter()
            .flatten()
        {
            row.push(verdict_cell(report));
            row.push(tight_cell(report));
            if report.applicable && report.tight && !zero {
                tight.push(TightRecord {
                    generator: g.compact(),
                    wf: wf.name.clone(),
                    bound: report.bound_id,
                });
            }
            tallies.push((wf.name.clone(), report.clone()));
        }
        if gm.is_some() && image_field.is_none() {
            // keep the column grid rectangular for zero codes
            row.push("n/a".into());
            row.push("".into());
        }
    }

    Ok(CodeResult {
        csv_row: row,
        tallies,
        tight,
        cross_check_failures: cross,
    })
}

fn csv_header(config: &ScanConfig) -> Vec<String> {
    let mut h = vec![
        "ring".to_string(),
        "n".to_string(),
        "generator".to_string(),
        "size".to_string(),
    ];
    for wf in &config.wfs {
        h.push(format!("d_{}", wf.name));
        for bound in ["shiromoto", "gray_singleton", "strong_singleton"] {
            h.push(format!("{bound}_{}", wf.name));
            h.push(format!("{bound}_tight_{}", wf.name));
        }
        if config.gray.is_some() {
            h.push(format!("image_field_singleton_{}", wf.name));
            h.push(format!("image_field_singleton_tight_{}", wf.name));
        }
    }
    h
}

/// Enumerate, deduplicate, and verify every applicable bound on every distinct
/// code. The summary is deterministic and identical for serial and parallel
/// runs.
pub fn run_scan(config: &ScanConfig) -> Result<ScanSummary, RingcodeError> {
    let start = std::time::Instant::now();
    let codes = enumerate_codes(config)?;
    let m = config.ring.cardinality as u128;
    let matrices = m.pow((config.max_rows * config.n) as u32) as u64;

    // pair each weight function with a copy of the map verified against it
    let grays: Vec<Option<GrayMap>> = config
        .wfs
        .iter()
        .map(|wf| {
            config.gray.as_ref().map(|gm| {
                let mut gm = gm.clone();
                // verification against a mismatched ring is a config error
                gm.verify_all(wf).expect("gray map ring must match scan ring");
                gm
            })
        })
        .collect();

    let results: Vec<CodeResult> = if config.parallel {
        codes
            .par_iter()
            .map(|(g, c)| examine_code(config, &grays, g, c))
            .collect::<Result<_, _>>()?
    } else {
        codes
            .iter()
            .map(|(g, c)| examine_code(config, &grays, g, c))
            .collect::<Result<_, _>>()?
    };

    let mut stats: BTreeMap<String, BoundStats> = BTreeMap::new();
    let mut tight_codes = Vec::new();
    let mut csv_rows = Vec::new();
    let mut violations_total = 0;
    let mut cross_check_failures = 0;
    for r in results {
        csv_rows.push(r.csv_row);
        tight_codes.extend(r.tight);
        cross_check_failures += r.cross_check_failures;
        for (wf_name, report) in r.tallies {
            let entry = stats
                .entry(format!("{wf_name}:{}", report.bound_id.as_str()))
                .or_default();
            if report.applicable {
                entry.checked += 1;
                if !report.holds {
                    entry.violations += 1;
                    violations_total += 1;
                }
                if report.tight {
                    entry.tight += 1;
                }
            } else {
                entry.not_applicable += 1;
            }
        }
    }

    Ok(ScanSummary {
        ring: config.ring.name(),
        n: config.n,
        max_rows: config.max_rows,
        matrices_enumerated: matrices,
        codes_examined: csv_rows.len() as u64,
        stats,
        tight_codes,
        violations_total,
        cross_check_failures,
        csv_rows,
        csv_header: csv_header(config),
        runtime: start.elapsed(),
    })
}
