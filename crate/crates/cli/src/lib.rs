//! The `modcurve` command line.
//!
//! [`run`] parses arguments and renders a report without touching the
//! process, so it can be tested in-process. Exit codes: 0 on success, 1 on
//! any engine or I/O error, 2 on usage errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use modcurve::ingest::{parse_basis, parse_signature};
use modcurve::level1::{delta, eisenstein_e4, eisenstein_e6, wronskian_lambda};
use modcurve::qseries::rat;
use modcurve::surface::{
    deg_c, deg_c_prime, dim_cusp_forms, dim_modular_forms, dim_s_h, gamma0_invariants,
};
use modcurve::weierstrass::{weierstrass_test, wronskian_criterion};
use modcurve::wronskian::{cusp_order_identity_check, q_wronskian, span_valuations};
use modcurve::{CuspBasis, HyperellipticStatus, SurfaceSignature};

#[derive(Debug, Parser)]
#[command(
    name = "modcurve",
    version,
    about = "Exact q-expansion tools for modular curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Index, elliptic points, cusps, genus and hyperelliptic status of Gamma_0(N).
    Signature { level: i64 },
    /// Dimensions and divisor degrees at weight m, for Gamma_0(N) or a SIG file.
    Dims { target: String, weight: u32 },
    /// Level-1 Wronskian identities.
    Level1 {
        #[command(subcommand)]
        command: Level1Command,
    },
    /// q-Wronskian of a basis file, its valuation and the span valuations.
    Wronskian {
        file: PathBuf,
        #[arg(long)]
        weight: u32,
    },
    /// Whether the cusp at infinity is an m/2-Weierstrass point.
    Weierstrass {
        file: PathBuf,
        #[arg(long)]
        weight: u32,
        /// Level N of Gamma_0(N); defaults to the file's LEVEL label.
        #[arg(long, conflicts_with = "signature")]
        level: Option<i64>,
        /// SIG file giving the signature, for groups other than Gamma_0(N).
        #[arg(long)]
        signature: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum Level1Command {
    /// Checks W(E4^3, E6^2) and reports lambda_t for t = 1..tmax.
    Verify {
        #[arg(long, default_value_t = 3)]
        tmax: u32,
        #[arg(long, default_value_t = 80)]
        prec: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

type CmdResult = Result<String, String>;

/// Coefficients of the Wronskian printed past its leading term.
const LEADING_TERMS: usize = 10;

/// Runs the command line `args`, whose first item is the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let result = match cli.command {
        Command::Signature { level } => signature(level),
        Command::Dims { target, weight } => dims(&target, weight),
        Command::Level1 {
            command: Level1Command::Verify { tmax, prec },
        } => level1_verify(tmax, prec),
        Command::Wronskian { file, weight } => wronskian(&file, weight),
        Command::Weierstrass {
            file,
            weight,
            level,
            signature,
        } => weierstrass(&file, weight, level, signature.as_deref()),
    };
    match result {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(msg) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_basis(path: &Path) -> Result<CuspBasis, String> {
    parse_basis(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn signature(level: i64) -> CmdResult {
    let inv = gamma0_invariants(level).map_err(|e| e.to_string())?;
    let s = &inv.signature;
    let mut out = String::new();
    let _ = writeln!(out, "Gamma_0({})", inv.level);
    let _ = writeln!(out, "  index          {}", inv.index);
    let _ = writeln!(out, "  nu2            {}", inv.nu2);
    let _ = writeln!(out, "  nu3            {}", inv.nu3);
    let _ = writeln!(out, "  cusps          {}", s.cusp_count);
    let _ = writeln!(out, "  genus          {}", s.genus);
    let _ = writeln!(out, "  hyperelliptic  {}", inv.hyperelliptic_status);
    Ok(out)
}

fn dims(target: &str, m: u32) -> CmdResult {
    let (label, sig) = match target.parse::<i64>() {
        Ok(n) => (
            format!("Gamma_0({n})"),
            gamma0_invariants(n).map_err(|e| e.to_string())?.signature,
        ),
        Err(_) => {
            let path = Path::new(target);
            let sig = parse_signature(&read(path)?).map_err(|e| format!("{target}: {e}"))?;
            (target.to_string(), sig)
        }
    };
    let e = |r: modcurve::Result<i64>| r.map_err(|e| e.to_string());
    let mut out = String::new();
    let _ = writeln!(out, "{label}: {sig}");
    let _ = writeln!(out, "  dim S_{m} = {}", e(dim_cusp_forms(&sig, m))?);
    let _ = writeln!(out, "  dim M_{m} = {}", e(dim_modular_forms(&sig, m))?);
    let _ = writeln!(out, "  dim S^H_{m} = {}", e(dim_s_h(&sig, m))?);
    let _ = writeln!(out, "  deg c' = {}", e(deg_c_prime(&sig, m))?);
    let _ = writeln!(out, "  deg c = {}", e(deg_c(&sig, m))?);
    Ok(out)
}

fn level1_verify(tmax: u32, prec: usize) -> CmdResult {
    if tmax == 0 {
        return Err("--tmax must be at least 1".into());
    }
    let mut out = String::new();
    let e4 = eisenstein_e4(prec).series;
    let e6 = eisenstein_e6(prec).series;
    let w = q_wronskian(&[e4.pow(3), e6.pow(2)], 12).map_err(|e| e.to_string())?;
    let expected = (&(&delta(prec).series * &e4.pow(2)) * &e6).scale(&rat(-1728));
    let ok = w.series.truncate(prec) == expected;
    let _ = writeln!(
        out,
        "W(E4^3, E6^2) = -1728 Delta E4^2 E6 to precision {prec}: {}",
        if ok { "ok" } else { "FAILED" }
    );
    let mut all_ok = ok;
    for t in 1..=tmax {
        let r = wronskian_lambda(t, prec).map_err(|e| format!("t = {t}: {e}"))?;
        let pure = r.is_pure();
        all_ok &= pure;
        let s = r.delta_power;
        let _ = writeln!(
            out,
            "lambda({t}) = {}  (W = lambda Delta^{s} E4^{} E6^{s}: {})",
            r.lambda,
            2 * s,
            if pure { "ok" } else { "FAILED" }
        );
    }
    if all_ok {
        Ok(out)
    } else {
        Err(format!("verification failed\n{out}"))
    }
}

fn wronskian(file: &Path, m: u32) -> CmdResult {
    let basis = load_basis(file)?;
    let fs = basis.series();
    let w = q_wronskian(&fs, m).map_err(|e| e.to_string())?;
    let sv = span_valuations(&fs).map_err(|e| e.to_string())?;
    let id = cusp_order_identity_check(&fs, m).map_err(|e| e.to_string())?;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "level {}, {} forms, weight {m}",
        basis.level_label,
        fs.len()
    );
    let _ = writeln!(out, "  Wronskian weight     {}", w.output_weight);
    let _ = writeln!(out, "  Wronskian valuation  {}", id.lhs);
    let _ = writeln!(
        out,
        "  span valuations      {:?} (sum {})",
        sv.valuations, sv.total
    );
    let _ = writeln!(
        out,
        "  order identity       {}",
        if id.holds { "holds" } else { "FAILS" }
    );
    let shown = w
        .series
        .truncate((id.lhs + LEADING_TERMS).min(w.series.prec()));
    let _ = writeln!(out, "  W_q = {shown}");
    Ok(out)
}

fn weierstrass(file: &Path, m: u32, level: Option<i64>, sig_file: Option<&Path>) -> CmdResult {
    let basis = load_basis(file)?;
    let (sig, status): (SurfaceSignature, Option<HyperellipticStatus>) = match (level, sig_file) {
        (_, Some(path)) => (
            parse_signature(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?,
            None,
        ),
        (Some(n), None) => {
            let inv = gamma0_invariants(n).map_err(|e| e.to_string())?;
            (inv.signature, Some(inv.hyperelliptic_status))
        }
        (None, None) => {
            let n: i64 = basis.level_label.parse().map_err(|_| {
                format!(
                    "LEVEL label {:?} is not a number; pass --level or --signature",
                    basis.level_label
                )
            })?;
            let inv = gamma0_invariants(n).map_err(|e| e.to_string())?;
            (inv.signature, Some(inv.hyperelliptic_status))
        }
    };
    let report = weierstrass_test(&basis, m, &sig, status).map_err(|e| e.to_string())?;
    let names: Vec<String> = basis.forms.iter().map(|f| f.label.clone()).collect();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "level {}, genus {}, weight {m}",
        basis.level_label, report.genus
    );
    let _ = writeln!(out, "  dim S^H_{m}       {}", report.expected_dim);
    let _ = writeln!(out, "  monomials        {}", report.monomial_count);
    let _ = writeln!(out, "  rank             {}", report.rank);
    let _ = writeln!(out, "  precision        {}", report.precision);
    let _ = writeln!(out, "  span             {}", report.span_status);
    let _ = writeln!(out, "  gap sequence     {:?}", report.gap_sequence);
    if report.rank >= 2 {
        if let Ok(w) = wronskian_criterion(&report.rows, m) {
            let _ = writeln!(out, "  Wronskian order  {} (bound {})", w.order, w.bound);
        }
    }
    let _ = writeln!(out, "rows:");
    for (r, row) in report.rows.iter().enumerate() {
        let _ = writeln!(out, "  {} | {}", report.combination_text(r, &names), row);
    }
    if !report.relations.is_empty() {
        let _ = writeln!(out, "relations:");
        for rel in &report.relations {
            let text = modcurve::weierstrass::format_combination(&report.exponents, rel, &names);
            let _ = writeln!(out, "  {text} = 0");
        }
    }
    let half = m / 2;
    let verdict = match report.verdict() {
        Some(false) => format!("infinity is NOT a {half}-Weierstrass point"),
        Some(true) => format!("infinity IS a {half}-Weierstrass point"),
        None => format!(
            "undetermined: the monomials span {} of {} dimensions",
            report.rank, report.expected_dim
        ),
    };
    let _ = writeln!(out, "{verdict}");
    Ok(out)
}
