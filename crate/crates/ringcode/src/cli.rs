//! Command-line front end: `weights`, `gray`, `code-info`, and `scan`
//! subcommands with table, CSV, and JSON output.
//!
//! Exit codes: 0 on clean runs, 2 when a bound violation is found, 1 on
//! usage or parse errors.

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use crate::bounds::{corollary_zl_check, BoundReport};
use crate::bounds::{
    field_singleton_check, gray_singleton_check, shiromoto_floor_check, strong_singleton_check,
};
use crate::code::{
    gray_image_min_hamming, image_size, min_weight, span_with_budget, GeneratorMatrix,
};
use crate::error::RingcodeError;
use crate::gray::{builtin_gray, find_isometric_gray, GrayMap, VerifyFlags};
use crate::ring::{RingFamily, RingSpec};
use crate::scan::{run_scan, ScanConfig, DEFAULT_SCAN_BUDGET};
use crate::weights::{builtin_wf, rational_to_frac_string, WeightFunction};

const EXIT_OK: i32 = 0;
const EXIT_ERROR: i32 = 1;
const EXIT_VIOLATION: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "ringcode",
    about = "Linear codes over small finite rings: weights, Gray maps, and exact Singleton-type bound verification"
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a built-in weight table and its maximum coefficient A
    Weights {
        #[arg(long)]
        ring: String,
        /// Weight function name: hamming, lee, or euclidean
        #[arg(long)]
        wf: String,
    },
    /// Print a Gray map with verification verdicts, or search for one
    Gray {
        #[arg(long)]
        ring: String,
        /// Built-in map name (standard)
        #[arg(long)]
        map: Option<String>,
        /// Custom map from a JSON file
        #[arg(long)]
        map_file: Option<PathBuf>,
        /// Weight function to verify against (default lee)
        #[arg(long)]
        wf: Option<String>,
        /// Search for an isometric map with this codomain prime
        #[arg(long)]
        search: Option<u32>,
    },
    /// Report size, minimum weights, and every applicable bound for one code
    #[command(name = "code-info")]
    CodeInfo {
        /// Generator matrix file
        matrix: PathBuf,
        /// Weight function names, repeatable (default lee)
        #[arg(long)]
        wf: Vec<String>,
        /// Built-in Gray map name
        #[arg(long)]
        map: Option<String>,
        /// Custom Gray map from a JSON file
        #[arg(long)]
        map_file: Option<PathBuf>,
    },
    /// Enumerate all codes up to a budget and verify every bound
    Scan {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        max_rows: usize,
        /// Weight function names, repeatable (default lee)
        #[arg(long)]
        wf: Vec<String>,
        /// Built-in Gray map name
        #[arg(long)]
        map: Option<String>,
        #[arg(long)]
        parallel: bool,
    },
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests are clean exits
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    match dispatch(&cli) {
        Ok((text, code)) => {
            let out = if text.ends_with('\n') { text } else { text + "\n" };
            if let Some(path) = &cli.output {
                if let Err(e) = fs::write(path, &out) {
                    eprintln!("error: {e}");
                    return EXIT_ERROR;
                }
            } else {
                print!("{out}");
            }
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

fn budget_from_env() -> u128 {
    std::env::var("RINGCODE_BUDGET")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SCAN_BUDGET)
}

fn dispatch(cli: &Cli) -> Result<(String, i32), RingcodeError> {
    match &cli.command {
        Command::Weights { ring, wf } => cmd_weights(ring, wf, cli.format),
        Command::Gray {
            ring,
            map,
            map_file,
            wf,
            search,
        } => cmd_gray(ring, map.as_deref(), map_file.as_deref(), wf.as_deref(), *search, cli.format),
        Command::CodeInfo {
            matrix,
            wf,
            map,
            map_file,
        } => cmd_code_info(matrix, wf, map.as_deref(), map_file.as_deref(), cli.format),
        Command::Scan {
            ring,
            n,
            max_rows,
            wf,
            map,
            parallel,
        } => cmd_scan(ring, *n, *max_rows, wf, map.as_deref(), *parallel, cli.format),
    }
}

fn cmd_weights(ring: &str, wf_name: &str, format: Format) -> Result<(String, i32), RingcodeError> {
    let ring = RingSpec::parse(ring)?;
    let wf = builtin_wf(&ring, wf_name)?;
    let text = match format {
        Format::Json => serde_json::to_string(&wf.to_json()).unwrap(),
        Format::Csv => {
            let mut s = String::from("element,code,coeff\n");
            for r in ring.elements() {
                s.push_str(&format!(
                    "{},{},{}\n",
                    ring.format_element(r),
                    r,
                    rational_to_frac_string(wf.coeff(r))
                ));
            }
            s
        }
        Format::Table => {
            let mut s = format!("weight function {} over {}\n", wf.name, ring.name());
            for r in ring.elements() {
                s.push_str(&format!("  a_{:<6} = {}\n", ring.format_element(r), wf.coeff(r)));
            }
            s.push_str(&format!("  A = {}\n", wf.max_coeff()));
            s.push_str(&format!("  symmetric: {}\n", wf.is_symmetric()));
            s
        }
    };
    Ok((text, EXIT_OK))
}

fn load_map(
    ring: &RingSpec,
    map: Option<&str>,
    map_file: Option<&std::path::Path>,
) -> Result<Option<GrayMap>, RingcodeError> {
    match (map, map_file) {
        (Some(name), None) => Ok(Some(builtin_gray(ring, name)?)),
        (None, Some(path)) => {
            let text = fs::read_to_string(path)?;
            let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| {
                RingcodeError::Parse {
                    line: 0,
                    message: format!("bad map JSON: {e}"),
                }
            })?;
            let gm = GrayMap::from_json(&value)?;
            if gm.domain != *ring {
                return Err(RingcodeError::RingMismatch);
            }
            Ok(Some(gm))
        }
        (None, None) => Ok(None),
        (Some(_), Some(_)) => Err(RingcodeError::Usage(
            "--map and --map-file are mutually exclusive".into(),
        )),
    }
}

fn render_gray(gm: &GrayMap, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(&gm.to_json()).unwrap(),
        Format::Csv => {
            let mut s = String::from("element,code,image\n");
            for r in gm.domain.elements() {
                let img = gm
                    .image(r)
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ");
                s.push_str(&format!("{},{},{}\n", gm.domain.format_element(r), r, img));
            }
            s
        }
        Format::Table => {
            let mut s = format!(
                "Gray map {} -> F_{}^{}\n",
                gm.domain.name(),
                gm.codomain_prime,
                gm.image_length
            );
            for r in gm.domain.elements() {
                s.push_str(&format!(
                    "  phi({:<6}) = ({})\n",
                    gm.domain.format_element(r),
                    gm.image(r)
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                ));
            }
            s.push_str(&format!(
                "  weight-preserving: {}\n  isometric: {}\n  bijective: {}\n",
                gm.flags.weight_preserving.as_str(),
                gm.flags.isometric.as_str(),
                gm.flags.bijective.as_str()
            ));
            s
        }
    }
}

fn cmd_gray(
    ring: &str,
    map: Option<&str>,
    map_file: Option<&std::path::Path>,
    wf: Option<&str>,
    search: Option<u32>,
    format: Format,
) -> Result<(String, i32), RingcodeError> {
    let ring = RingSpec::parse(ring)?;
    let wf = builtin_wf(&ring, wf.unwrap_or("lee"))?;

    if let Some(p) = search {
        let result = find_isometric_gray(&ring, &wf, p)?;
        return Ok(match result.map {
            Some(gm) => (render_gray(&gm, format), EXIT_OK),
            None => (
                format!(
                    "no isometric Gray map exists for ({}, {}, p={p}); \
                     search space of {} assignments exhausted after {} candidates",
                    ring.name(),
                    wf.name,
                    result.search_space_size,
                    result.nodes_visited
                ),
                EXIT_OK,
            ),
        });
    }

    let mut gm = load_map(&ring, map.or(Some("standard")).filter(|_| map_file.is_none()), map_file)?
        .ok_or_else(|| RingcodeError::Usage("no map selected".into()))?;
    gm.verify_all(&wf)?;
    Ok((render_gray(&gm, format), EXIT_OK))
}

struct InfoRow {
    wf: String,
    report: BoundReport,
}

fn cmd_code_info(
    matrix: &std::path::Path,
    wf_names: &[String],
    map: Option<&str>,
    map_file: Option<&std::path::Path>,
    format: Format,
) -> Result<(String, i32), RingcodeError> {
    let text = fs::read_to_string(matrix)?;
    let g = GeneratorMatrix::parse(&text)?;
    let budget = budget_from_env();
    let code = span_with_budget(&g, budget)?;
    let wf_names: Vec<String> = if wf_names.is_empty() {
        vec!["lee".into()]
    } else {
        wf_names.to_vec()
    };
    let gm = load_map(&g.ring, map, map_file)?;

    let m = g.ring.cardinality as u64;
    let p = g.ring.min_prime() as u64;
    let size = code.size() as u64;
    let zero = code.is_zero_code();

    let mut rows: Vec<InfoRow> = Vec::new();
    let mut dists: Vec<(String, Option<BigRational>)> = Vec::new();
    for name in &wf_names {
        let wf = builtin_wf(&g.ring, name)?;
        let d = if zero { None } else { Some(min_weight(&code, &wf)?) };
        dists.push((name.clone(), d.clone()));
        let Some(d) = d else { continue };
        let a = wf.max_coeff();
        rows.push(InfoRow {
            wf: name.clone(),
            report: shiromoto_floor_check(code.n, m, size, &d, &a)?,
        });
        rows.push(InfoRow {
            wf: name.clone(),
            report: gray_singleton_check(code.n, p, size, &d, &a)?,
        });
        let evidence = match &gm {
            Some(gm) => {
                let mut gm = gm.clone();
                gm.verify_all(&wf)?;
                gm.flags
            }
            None => VerifyFlags::unverified(),
        };
        rows.push(InfoRow {
            wf: name.clone(),
            report: strong_singleton_check(code.n, m, size, &d, &a, &evidence)?,
        });
        if let Some(gm) = &gm {
            let d_h = gray_image_min_hamming(&code, gm)?;
            let img_size = image_size(&code, gm)? as u64;
            rows.push(InfoRow {
                wf: format!("{name} (Gray image)"),
                report: field_singleton_check(
                    gm.image_length * code.n,
                    gm.codomain_prime as u64,
                    img_size,
                    d_h,
                )?,
            });
        }
    }

    // Z_l rings additionally get the corollary bounds over all three standard
    // weights, with evidence checked per weight function
    if let (RingFamily::ZMod(l), false) = (g.ring.family, zero) {
        let d_of = |name: &str| -> Result<BigRational, RingcodeError> {
            min_weight(&code, &builtin_wf(&g.ring, name)?)
        };
        let (d_h, d_l, d_e) = (d_of("hamming")?, d_of("lee")?, d_of("euclidean")?);
        // the strong corollary forms require a bijective isometry for the
        // respective weight, so the map is re-verified against each of the
        // three weights separately
        let per_wf_flags = match &gm {
            Some(gm) => {
                let mut flags = Vec::new();
                for name in ["hamming", "lee", "euclidean"] {
                    let mut g2 = gm.clone();
                    g2.verify_all(&builtin_wf(&g.ring, name)?)?;
                    flags.push(g2.flags);
                }
                Some(flags)
            }
            None => None,
        };
        let evidence = match &per_wf_flags {
            Some(f) => [Some(&f[0]), Some(&f[1]), Some(&f[2])],
            None => [None; 3],
        };
        let reports = corollary_zl_check(l, code.n, size, &d_h, &d_l, &d_e, evidence)?;
        for r in reports {
            rows.push(InfoRow {
                wf: "corollary".into(),
                report: r,
            });
        }
    }

    let violated = rows.iter().any(|r| r.report.applicable && !r.report.holds);
    let exit = if violated { EXIT_VIOLATION } else { EXIT_OK };

    let text = match format {
        Format::Json => {
            let json = serde_json::json!({
                "ring": g.ring.name(),
                "n": code.n,
                "generator": g.compact(),
                "size": size,
                "zero_code": zero,
                "min_weights": dists.iter().map(|(name, d)| serde_json::json!({
                    "wf": name,
                    "d": d.as_ref().map(rational_to_frac_string),
                })).collect::<Vec<_>>(),
                "bounds": rows.iter().map(|r| {
                    let mut j = r.report.to_json();
                    j["wf"] = serde_json::Value::String(r.wf.clone());
                    j
                }).collect::<Vec<_>>(),
            });
            serde_json::to_string(&json).unwrap()
        }
        Format::Csv => {
            let mut s = String::from("wf,bound,applicable,holds,tight,left,right\n");
            for r in &rows {
                let (l, rr) = r
                    .report
                    .witness
                    .as_ref()
                    .map(|w| (w.left.to_string(), w.right.to_string()))
                    .unwrap_or_default();
                s.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    r.wf,
                    r.report.bound_id.as_str(),
                    r.report.applicable,
                    r.report.holds,
                    r.report.tight,
                    l,
                    rr
                ));
            }
            s
        }
        Format::Table => {
            let mut s = format!(
                "code over {}: n = {}, |C| = {}\ngenerator: {}\n",
                g.ring.name(),
                code.n,
                size,
                g.compact()
            );
            if zero {
                s.push_str("zero code: minimum weight undefined; bounds hold vacuously\n");
            }
            for (name, d) in &dists {
                match d {
                    Some(d) => s.push_str(&format!("  d_{name} = {d}\n")),
                    None => s.push_str(&format!("  d_{name} undefined\n")),
                }
            }
            for r in &rows {
                let verdict = if !r.report.applicable {
                    format!("not applicable ({})", r.report.reason.as_deref().unwrap_or(""))
                } else if !r.report.holds {
                    "VIOLATED".into()
                } else if r.report.tight {
                    "holds, tight".into()
                } else {
                    "holds".into()
                };
                let witness = r
                    .report
                    .witness
                    .as_ref()
                    .map(|w| format!(" [{} vs {}]", w.left_expr, w.right_expr))
                    .unwrap_or_default();
                s.push_str(&format!(
                    "  {:<24} {:<10} {}{}\n",
                    r.report.bound_id.as_str(),
                    r.wf,
                    verdict,
                    witness
                ));
            }
            s
        }
    };
    Ok((text, exit))
}

fn cmd_scan(
    ring: &str,
    n: usize,
    max_rows: usize,
    wf_names: &[String],
    map: Option<&str>,
    parallel: bool,
    format: Format,
) -> Result<(String, i32), RingcodeError> {
    let ring = RingSpec::parse(ring)?;
    let wf_names: Vec<String> = if wf_names.is_empty() {
        vec!["lee".into()]
    } else {
        wf_names.to_vec()
    };
    let wfs: Vec<WeightFunction> = wf_names
        .iter()
        .map(|name| builtin_wf(&ring, name))
        .collect::<Result<_, _>>()?;
    let max_rows = if max_rows == 0 { n } else { max_rows };
    let mut config = ScanConfig::new(ring.clone(), n, max_rows, wfs);
    config.gray = map.map(|name| builtin_gray(&ring, name)).transpose()?;
    config.budget = budget_from_env();
    config.parallel = parallel;

    let summary = run_scan(&config)?;
    let exit = if summary.violations_total > 0 || summary.cross_check_failures > 0 {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    };
    let text = match format {
        Format::Json => serde_json::to_string(&summary.to_json()).unwrap(),
        Format::Csv => summary.to_csv(),
        Format::Table => {
            let mut s = format!(
                "scan {}: n = {}, max_rows = {}\nmatrices enumerated: {}\ndistinct codes: {}\n",
                summary.ring,
                summary.n,
                summary.max_rows,
                summary.matrices_enumerated,
                summary.codes_examined
            );
            s.push_str(&format!("runtime: {:.3}s\n", summary.runtime.as_secs_f64()));
            for (key, st) in &summary.stats {
                s.push_str(&format!(
                    "  {:<36} checked {:>5}  violations {:>3}  n/a {:>5}  tight {:>4}\n",
                    key, st.checked, st.violations, st.not_applicable, st.tight
                ));
            }
            s.push_str(&format!(
                "violations total: {}\ncross-check failures: {}\n",
                summary.violations_total, summary.cross_check_failures
            ));
            if !summary.tight_codes.is_empty() {
                s.push_str("tight codes:\n");
                for t in &summary.tight_codes {
                    s.push_str(&format!("  [{}] {} {}\n", t.generator, t.wf, t.bound.as_str()));
                }
            }
            s
        }
    };
    Ok((text, exit))
}
