//! Command-line front end: exact representation matrices and invariant-form
//! data, the chain-level oracle reconciliation, the exact invariant suite,
//! unit-torus spectra, word-reversal experiments, and definiteness scans.
//!
//! Exit codes: 0 on success / all properties passing, 1 on a property
//! failure or computational error, 2 on usage errors. Output is
//! deterministic byte-for-byte for identical invocations.

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use krammer::braid::BraidWord;
use krammer::chains::{calibrate_fox, reconcile_with_closed_form, vij_cycle_check};
use krammer::form::{check_invariance, nonsingularity_certificate, FormMatrix, FROZEN_CONVENTION};
use krammer::lkrep::LkRep;
use krammer::matrix::RingMatrix;
use krammer::numeric::{
    certify_negative_definite, charpoly_numeric, conjugacy_experiment, definiteness_ball_radius,
    rep_matrix_specialized, UnitParams,
};

#[derive(Parser)]
#[command(
    name = "krammer",
    version,
    about = "Braid group representation matrices, their invariant sesquilinear form, and unit-torus spectral experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the exact representation matrix of a braid word
    Matrix {
        /// Braid word: signed generator indices, whitespace or comma separated
        #[arg(long)]
        word: String,
        /// Strand count (default: inferred as 1 + the largest index used)
        #[arg(long)]
        n: Option<usize>,
        /// Output format
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print the invariant form matrix (or its unit-normalized version)
    Form {
        /// Strand count
        #[arg(long)]
        n: usize,
        /// Print the matrix divided by the global prefactor
        #[arg(long)]
        normalized: bool,
        /// Output format
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run the full exact invariant suite for one strand count
    Verify {
        /// Strand count
        #[arg(long)]
        n: usize,
        /// Output format
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Rebuild the form from chain-level data and reconcile with the closed form
    Oracle {
        /// Strand count
        #[arg(long)]
        n: usize,
        /// Output format
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Exact and numeric characteristic polynomials of a word's matrix
    Spectrum {
        /// Braid word: signed generator indices, whitespace or comma separated
        #[arg(long)]
        word: String,
        /// Strand count (default: inferred as 1 + the largest index used)
        #[arg(long)]
        n: Option<usize>,
        /// Angle offset of q from 1 (default 1e-3)
        #[arg(long, default_value_t = 1e-3)]
        q_epsilon: f64,
        /// Angle offset of t from i (default 1e-3)
        #[arg(long, default_value_t = 1e-3)]
        t_epsilon: f64,
        /// Longest word for which the exact characteristic polynomial is computed
        #[arg(long, default_value_t = 16)]
        max_length: usize,
        /// Output format
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Compare a word's matrix with its reversal's: exact and numeric spectra
    Conj {
        /// Braid word: signed generator indices, whitespace or comma separated
        #[arg(long)]
        word: String,
        /// Strand count (default: inferred as 1 + the largest index used)
        #[arg(long)]
        n: Option<usize>,
        /// Angle offset of q from 1 (default: sampled inside the proven ball)
        #[arg(long)]
        q_epsilon: Option<f64>,
        /// Angle offset of t from i (default: sampled inside the proven ball)
        #[arg(long)]
        t_epsilon: Option<f64>,
        /// Seed for parameter sampling when no offsets are given
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Longest word for which the exact characteristic polynomial is computed
        #[arg(long, default_value_t = 16)]
        max_length: usize,
        /// Output format
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Map definiteness of the form over a grid of unit-torus points
    Scan {
        /// Strand count
        #[arg(long)]
        n: usize,
        /// Half-width of the scanned q-angle window (default: 4x the proven radius)
        #[arg(long)]
        q_epsilon: Option<f64>,
        /// Half-width of the scanned t-angle window (default: 4x the proven radius)
        #[arg(long)]
        t_epsilon: Option<f64>,
        /// Output format
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

/// Errors carrying their process exit code: usage problems exit 2,
/// property failures and computational errors exit 1.
enum CliError {
    Usage(String),
    Failure(String),
}

impl From<krammer::Error> for CliError {
    fn from(e: krammer::Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

fn main() {
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        std::process::exit(2);
    }
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => std::process::exit(code),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
    }
}

/// Caps the worker pool from `KRAMMER_THREADS` when set.
fn configure_threads() -> Result<(), String> {
    match std::env::var("KRAMMER_THREADS") {
        Err(_) => Ok(()),
        Ok(raw) => {
            let k: usize = raw
                .trim()
                .parse()
                .map_err(|_| format!("KRAMMER_THREADS must be a positive integer, got {raw:?}"))?;
            if k == 0 {
                return Err("KRAMMER_THREADS must be a positive integer, got 0".into());
            }
            rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build_global()
                .map_err(|e| e.to_string())
        }
    }
}

fn dispatch(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Matrix { word, n, format } => cmd_matrix(&word, n, format),
        Command::Form {
            n,
            normalized,
            format,
        } => cmd_form(n, normalized, format),
        Command::Verify { n, format } => cmd_verify(n, format),
        Command::Oracle { n, format } => cmd_oracle(n, format),
        Command::Spectrum {
            word,
            n,
            q_epsilon,
            t_epsilon,
            max_length,
            format,
        } => cmd_spectrum(&word, n, q_epsilon, t_epsilon, max_length, format),
        Command::Conj {
            word,
            n,
            q_epsilon,
            t_epsilon,
            seed,
            max_length,
            format,
        } => cmd_conj(&word, n, q_epsilon, t_epsilon, seed, max_length, format),
        Command::Scan {
            n,
            q_epsilon,
            t_epsilon,
            format,
        } => cmd_scan(n, q_epsilon, t_epsilon, format),
    }
}

/// Parses a word, inferring the strand count as 1 + the largest generator
/// index when none is given.
fn parse_word(text: &str, n: Option<usize>) -> Result<BraidWord, CliError> {
    let n = match n {
        Some(n) => {
            if n < 2 {
                return Err(CliError::Usage(format!("--n must be at least 2, got {n}")));
            }
            n
        }
        None => {
            let mut max_index: usize = 1;
            for token in text.split(|c: char| c.is_whitespace() || c == ',') {
                if token.is_empty() {
                    continue;
                }
                let k: i64 = token
                    .parse()
                    .map_err(|_| CliError::Usage(format!("invalid braid word letter {token:?}")))?;
                max_index = max_index.max(k.unsigned_abs() as usize);
            }
            max_index + 1
        }
    };
    BraidWord::parse(text, n).map_err(|e| CliError::Usage(e.to_string()))
}

fn validate_n(n: usize) -> Result<(), CliError> {
    if n < 2 {
        return Err(CliError::Usage(format!("--n must be at least 2, got {n}")));
    }
    Ok(())
}

fn print_json<T: Serialize>(value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Failure(format!("serialization failed: {e}")))?;
    println!("{text}");
    Ok(())
}

/// Entry grid as display strings, row-major.
fn matrix_strings(m: &RingMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.at(i, j).to_string()).collect())
        .collect()
}

fn print_matrix_text(rows: &[Vec<String>]) {
    let widths: Vec<usize> = (0..rows[0].len())
        .map(|j| rows.iter().map(|r| r[j].len()).max().unwrap_or(0))
        .collect();
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:>w$}"))
            .collect();
        println!("[ {} ]", line.join(" ; "));
    }
}

fn basis_labels(n: usize) -> Vec<String> {
    krammer::lkrep::LkBasis::new(n)
        .pairs()
        .iter()
        .map(|&(i, j)| format!("({i},{j})"))
        .collect()
}

// ---------------------------------------------------------------------------
// matrix

#[derive(Serialize)]
struct MatrixOutput {
    n: usize,
    word: String,
    dim: usize,
    basis: Vec<String>,
    matrix: Vec<Vec<String>>,
}

fn cmd_matrix(word: &str, n: Option<usize>, format: Format) -> Result<i32, CliError> {
    let w = parse_word(word, n)?;
    let rep = LkRep::get(w.n());
    let m = rep.rep_matrix(&w);
    let out = MatrixOutput {
        n: w.n(),
        word: w.render(),
        dim: m.rows(),
        basis: basis_labels(w.n()),
        matrix: matrix_strings(&m),
    };
    match format {
        Format::Json => print_json(&out)?,
        Format::Text => {
            println!(
                "representation matrix, n = {}, word = \"{}\", dim = {}",
                out.n, out.word, out.dim
            );
            println!("basis: {}", out.basis.join(" "));
            print_matrix_text(&out.matrix);
        }
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// form

#[derive(Serialize)]
struct FormOutput {
    n: usize,
    dim: usize,
    normalized: bool,
    prefactor: String,
    basis: Vec<String>,
    matrix: Vec<Vec<String>>,
}

fn cmd_form(n: usize, normalized: bool, format: Format) -> Result<i32, CliError> {
    validate_n(n)?;
    let form = FormMatrix::new(n);
    let m = if normalized {
        form.normalized()
    } else {
        form.j()
    };
    let out = FormOutput {
        n,
        dim: m.rows(),
        normalized,
        prefactor: form.prefactor().to_string(),
        basis: basis_labels(n),
        matrix: matrix_strings(m),
    };
    match format {
        Format::Json => print_json(&out)?,
        Format::Text => {
            println!(
                "invariant form, n = {}, dim = {}{}",
                out.n,
                out.dim,
                if normalized {
                    " (normalized by the prefactor)"
                } else {
                    ""
                }
            );
            println!("prefactor c = {}", out.prefactor);
            println!("basis: {}", out.basis.join(" "));
            print_matrix_text(&out.matrix);
        }
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// verify

#[derive(Serialize)]
struct PropertyResult {
    name: &'static str,
    pass: bool,
    detail: String,
}

#[derive(Serialize)]
struct VerifyOutput {
    n: usize,
    properties: Vec<PropertyResult>,
    all_pass: bool,
}

fn braid_relations_hold(n: usize) -> (bool, String) {
    let rep = LkRep::get(n);
    let identity = RingMatrix::identity(rep.dim());
    let word = |letters: Vec<i32>| rep.rep_matrix(&BraidWord::new(n, letters).unwrap());
    let mut adjacent = 0;
    let mut far = 0;
    let mut inverses = 0;
    for i in 1..n as i32 {
        for s in [1, -1] {
            if word(vec![i * s, -i * s]) != identity {
                return (false, format!("generator {i} inverse fails"));
            }
            inverses += 1;
        }
        if i + 1 < n as i32 {
            if word(vec![i, i + 1, i]) != word(vec![i + 1, i, i + 1]) {
                return (false, format!("adjacent relation fails at {i}"));
            }
            adjacent += 1;
        }
        for j in i + 2..n as i32 {
            if word(vec![i, j]) != word(vec![j, i]) {
                return (false, format!("far commutation fails at ({i},{j})"));
            }
            far += 1;
        }
    }
    (
        true,
        format!("{adjacent} adjacent relations, {far} far commutations, {inverses} inverse identities, all exact"),
    )
}

fn cmd_verify(n: usize, format: Format) -> Result<i32, CliError> {
    validate_n(n)?;
    let mut properties = Vec::new();

    let (pass, detail) = braid_relations_hold(n);
    properties.push(PropertyResult {
        name: "braid-relations",
        pass,
        detail,
    });

    let dim = n * (n - 1) / 2;
    properties.push(match vij_cycle_check(n) {
        Ok(true) => PropertyResult {
            name: "boundary-cycles",
            pass: true,
            detail: format!("boundary of every basis class vanishes ({dim} pairs)"),
        },
        Ok(false) => PropertyResult {
            name: "boundary-cycles",
            pass: false,
            detail: "some basis class has nonzero boundary".into(),
        },
        Err(e) => PropertyResult {
            name: "boundary-cycles",
            pass: false,
            detail: e.to_string(),
        },
    });

    let form = FormMatrix::new(n);
    properties.push(PropertyResult {
        name: "form-hermitian",
        pass: form.check_hermitian_symmetry(),
        detail: "transpose equals bar-involution image".into(),
    });

    properties.push(match check_invariance(n) {
        Ok(conv) => PropertyResult {
            name: "form-invariance",
            pass: conv == FROZEN_CONVENTION,
            detail: format!("convention {} holds for every generator", conv.id()),
        },
        Err(e) => PropertyResult {
            name: "form-invariance",
            pass: false,
            detail: e.to_string(),
        },
    });

    properties.push(match reconcile_with_closed_form(n) {
        Ok(rec) => PropertyResult {
            name: "oracle-reconciliation",
            pass: true,
            detail: format!(
                "chain-level form matches closed form (unit {}, involution {})",
                rec.unit, rec.bar_applied
            ),
        },
        Err(e) => PropertyResult {
            name: "oracle-reconciliation",
            pass: false,
            detail: e.to_string(),
        },
    });

    properties.push(match nonsingularity_certificate(n) {
        Ok(det) => PropertyResult {
            name: "nonsingularity-certificate",
            pass: true,
            detail: format!(
                "normalized determinant is nonzero; its q = 1 collapse is {}",
                det.collapse_q1()
            ),
        },
        Err(e) => PropertyResult {
            name: "nonsingularity-certificate",
            pass: false,
            detail: e.to_string(),
        },
    });

    properties.push(match calibrate_fox() {
        Ok(cal) => PropertyResult {
            name: "derivative-calibration",
            pass: true,
            detail: format!(
                "boundary formulas reproduced by the {} derivative (unit {}, involution {})",
                cal.convention.id(),
                cal.unit,
                cal.bar_applied
            ),
        },
        Err(e) => PropertyResult {
            name: "derivative-calibration",
            pass: false,
            detail: e.to_string(),
        },
    });

    let all_pass = properties.iter().all(|p| p.pass);
    let out = VerifyOutput {
        n,
        properties,
        all_pass,
    };
    match format {
        Format::Json => print_json(&out)?,
        Format::Text => {
            println!("exact invariant suite, n = {n}");
            for p in &out.properties {
                println!(
                    "{} {}: {}",
                    if p.pass { "PASS" } else { "FAIL" },
                    p.name,
                    p.detail
                );
            }
            println!(
                "{}",
                if out.all_pass {
                    "all properties pass"
                } else {
                    "PROPERTY FAILURE"
                }
            );
        }
    }
    Ok(if out.all_pass { 0 } else { 1 })
}

// ---------------------------------------------------------------------------
// oracle

#[derive(Serialize)]
struct OracleOutput {
    n: usize,
    derivative_calibration: CalibrationOutput,
    reconciliation: ReconciliationOutput,
    closed_form: Vec<Vec<String>>,
    chain_oracle: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct CalibrationOutput {
    convention: &'static str,
    unit: String,
    bar_applied: bool,
}

#[derive(Serialize)]
struct ReconciliationOutput {
    unit: String,
    bar_applied: bool,
    identity: bool,
}

fn cmd_oracle(n: usize, format: Format) -> Result<i32, CliError> {
    validate_n(n)?;
    let cal = calibrate_fox()?;
    let rec = reconcile_with_closed_form(n)?;
    let oracle = krammer::chains::form_oracle(n)?;
    let closed = FormMatrix::new(n);
    let out = OracleOutput {
        n,
        derivative_calibration: CalibrationOutput {
            convention: cal.convention.id(),
            unit: cal.unit.to_string(),
            bar_applied: cal.bar_applied,
        },
        reconciliation: ReconciliationOutput {
            unit: rec.unit.to_string(),
            bar_applied: rec.bar_applied,
            identity: rec.is_identity(),
        },
        closed_form: matrix_strings(closed.j()),
        chain_oracle: matrix_strings(&oracle),
    };
    match format {
        Format::Json => print_json(&out)?,
        Format::Text => {
            println!("chain-level oracle vs closed form, n = {n}");
            println!(
                "derivative calibration: {} convention, unit {}, involution {}",
                out.derivative_calibration.convention,
                out.derivative_calibration.unit,
                out.derivative_calibration.bar_applied
            );
            println!(
                "reconciliation: unit {}, involution {}{}",
                out.reconciliation.unit,
                out.reconciliation.bar_applied,
                if out.reconciliation.identity {
                    " (entrywise identical)"
                } else {
                    ""
                }
            );
            println!("closed form:");
            print_matrix_text(&out.closed_form);
            println!("chain oracle:");
            print_matrix_text(&out.chain_oracle);
        }
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// spectrum

#[derive(Serialize)]
struct SpectrumOutput {
    word: String,
    n: usize,
    params: UnitParams,
    /// Exact characteristic polynomial, ascending degree; omitted past the
    /// length cap.
    exact: Option<Vec<String>>,
    /// Numeric coefficients at the parameters, ascending degree, as [re, im].
    numeric: Vec<[f64; 2]>,
    /// Max |exact coefficient evaluated - numeric coefficient|.
    exact_vs_numeric: Option<f64>,
}

fn cmd_spectrum(
    word: &str,
    n: Option<usize>,
    q_epsilon: f64,
    t_epsilon: f64,
    max_length: usize,
    format: Format,
) -> Result<i32, CliError> {
    let w = parse_word(word, n)?;
    let p = UnitParams::near_identity(q_epsilon, t_epsilon);
    let m = rep_matrix_specialized(&w, p)?;
    let numeric = charpoly_numeric(&m);

    let mut exact = None;
    let mut exact_vs_numeric = None;
    if w.len() <= max_length {
        let cp = LkRep::get(w.n()).rep_matrix(&w).charpoly()?;
        let mut worst: f64 = 0.0;
        for (c, v) in cp.iter().zip(&numeric) {
            let e = c.eval(p.q0, p.t0)?;
            worst = worst.max((e - v).norm());
        }
        exact = Some(cp.iter().map(|c| c.to_string()).collect());
        exact_vs_numeric = Some(worst);
    }

    let out = SpectrumOutput {
        word: w.render(),
        n: w.n(),
        params: p,
        exact,
        numeric: numeric.iter().map(|z| [z.re, z.im]).collect(),
        exact_vs_numeric,
    };
    let pass = out.exact_vs_numeric.is_none_or(|r| r < 1e-8);
    match format {
        Format::Json => print_json(&out)?,
        Format::Text => {
            println!(
                "characteristic polynomial, n = {}, word = \"{}\"",
                out.n, out.word
            );
            println!("parameters: q = exp({q_epsilon}i), t = i*exp({t_epsilon}i)");
            match &out.exact {
                Some(coeffs) => {
                    println!("exact coefficients (ascending degree):");
                    for (k, c) in coeffs.iter().enumerate() {
                        println!("  x^{k}: {c}");
                    }
                }
                None => println!(
                    "exact coefficients skipped (word length {} exceeds cap {max_length})",
                    w.len()
                ),
            }
            println!("numeric coefficients (ascending degree):");
            for (k, v) in out.numeric.iter().enumerate() {
                println!("  x^{k}: {:+.12e} {:+.12e}i", v[0], v[1]);
            }
            if let Some(r) = out.exact_vs_numeric {
                println!("exact vs numeric max residual: {r:.3e}");
            }
        }
    }
    Ok(if pass { 0 } else { 1 })
}

// ---------------------------------------------------------------------------
// conj

fn cmd_conj(
    word: &str,
    n: Option<usize>,
    q_epsilon: Option<f64>,
    t_epsilon: Option<f64>,
    seed: u64,
    max_length: usize,
    format: Format,
) -> Result<i32, CliError> {
    let w = parse_word(word, n)?;
    let p = if q_epsilon.is_some() || t_epsilon.is_some() {
        UnitParams::near_identity(q_epsilon.unwrap_or(0.0), t_epsilon.unwrap_or(0.0))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        UnitParams::sample_in_ball(w.n(), &mut rng)
    };
    let report = conjugacy_experiment(&w, p, max_length)?;
    let pass = report.charpoly_exact_equal != Some(false)
        && report.numeric_residuals.word_vs_reversed < 1e-8;
    match format {
        Format::Json => print_json(&report)?,
        Format::Text => {
            println!(
                "word reversal experiment, n = {}, word = \"{}\"",
                report.n, report.word
            );
            match report.charpoly_exact_equal {
                Some(eq) => println!(
                    "exact characteristic polynomials of the word and its reversal {}",
                    if eq {
                        "are identical; the specialized matrices are unitarily conjugate"
                    } else {
                        "DIFFER"
                    }
                ),
                None => println!(
                    "exact comparison skipped (word length {} exceeds cap {max_length})",
                    report.word.split(' ').count()
                ),
            }
            if let Some(r) = report.numeric_residuals.exact_vs_numeric_word {
                println!("exact vs numeric residual (word): {r:.3e}");
            }
            if let Some(r) = report.numeric_residuals.exact_vs_numeric_reversed {
                println!("exact vs numeric residual (reversal): {r:.3e}");
            }
            println!(
                "numeric coefficient difference, word vs reversal: {:.3e}",
                report.numeric_residuals.word_vs_reversed
            );
            println!(
                "form negative definite at the sampled parameters: {}",
                report.definiteness
            );
            println!("note: {}", report.note);
        }
    }
    Ok(if pass { 0 } else { 1 })
}

// ---------------------------------------------------------------------------
// scan

#[derive(Serialize)]
struct ScanPoint {
    q_angle: f64,
    t_angle: f64,
    definite: bool,
}

#[derive(Serialize)]
struct ScanOutput {
    n: usize,
    proven_radius: f64,
    q_half_width: f64,
    t_half_width: f64,
    grid: usize,
    definite_count: usize,
    inside_ball_all_definite: bool,
    points: Vec<ScanPoint>,
    note: &'static str,
}

fn cmd_scan(
    n: usize,
    q_epsilon: Option<f64>,
    t_epsilon: Option<f64>,
    format: Format,
) -> Result<i32, CliError> {
    validate_n(n)?;
    let r = definiteness_ball_radius(n);
    let qw = q_epsilon.unwrap_or(4.0 * r);
    let tw = t_epsilon.unwrap_or(4.0 * r);
    if !qw.is_finite() || qw <= 0.0 || !tw.is_finite() || tw <= 0.0 {
        return Err(CliError::Usage(
            "scan window half-widths must be positive".into(),
        ));
    }
    // Even grid count: no sample sits at q = 1 exactly, where the form
    // vanishes identically and definiteness is vacuously false.
    const GRID: usize = 8;
    let coord = |k: usize, w: f64| -w + 2.0 * w * (k as f64 + 0.5) / GRID as f64;
    let cells: Vec<(usize, usize)> = (0..GRID)
        .flat_map(|row| (0..GRID).map(move |col| (row, col)))
        .collect();
    let points: Vec<ScanPoint> = cells
        .par_iter()
        .map(|&(row, col)| {
            // rows run top-down from the largest t-angle
            let t_angle = coord(GRID - 1 - row, tw);
            let q_angle = coord(col, qw);
            let definite =
                certify_negative_definite(n, UnitParams::near_identity(q_angle, t_angle))
                    .unwrap_or(false);
            ScanPoint {
                q_angle,
                t_angle,
                definite,
            }
        })
        .collect();
    let definite_count = points.iter().filter(|p| p.definite).count();
    let inside_ball_all_definite = points
        .iter()
        .filter(|p| p.q_angle.abs() < r && p.t_angle.abs() < r)
        .all(|p| p.definite);
    let out = ScanOutput {
        n,
        proven_radius: r,
        q_half_width: qw,
        t_half_width: tw,
        grid: GRID,
        definite_count,
        inside_ball_all_definite,
        points,
        note: "definiteness outside the proven radius is an empirical observation",
    };
    match format {
        Format::Json => print_json(&out)?,
        Format::Text => {
            println!(
                "definiteness scan, n = {n}: q-angle in [{:+.3e}, {:+.3e}], t-angle in [{:+.3e}, {:+.3e}]",
                -qw, qw, -tw, tw
            );
            println!("proven radius: {r:.3e} per angle ('#' definite, '.' not)");
            for row in out.points.chunks(GRID) {
                let line: String = row
                    .iter()
                    .map(|p| if p.definite { '#' } else { '.' })
                    .collect();
                println!("  {line}");
            }
            println!(
                "{definite_count}/{} grid points definite; every sample inside the proven ball definite: {}",
                GRID * GRID,
                inside_ball_all_definite
            );
            println!("note: {}", out.note);
        }
    }
    Ok(if inside_ball_all_definite { 0 } else { 1 })
}
