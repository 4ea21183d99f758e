//! `dcenter`: verify the center-counting identity by enumeration,
//! generating functions, circle-map combinatorics, and root censuses.

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigUint;
use num_complex::Complex;
use num_traits::{One, Pow, Zero};

use dcenter_cli::verify::run_verification;
use dcenter_cli::thread_budget;
use dcenter_core::circle::enumerate_rotation_sets;
use dcenter_core::dynamics::{find_centers, SolverConfig};
use dcenter_core::hcomp::{enumerate_hcompositions, identity_check, term_value};
use dcenter_core::render::{render_julia, Viewport};
use dcenter_core::series::{closed_form_series, g_series};

type C64 = Complex<f64>;

#[derive(Parser)]
#[command(
    name = "dcenter",
    version,
    about = "Counts critically periodic parameters of z^d + c four independent ways",
    after_help = "Exit codes: 0 all checks passed, 1 a check failed, 2 usage or configuration error."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the identity sum_P phi(a1)(d-1)^(r-w) d^w = d^n - 1 over a sweep
    Identity {
        /// Largest n to check
        #[arg(long = "n-max")]
        n_max: u32,
        /// Largest degree d to check
        #[arg(long = "d-max")]
        d_max: u32,
    },
    /// Compare the composition generating function with its closed form
    Series {
        /// Map degree
        #[arg(long)]
        d: u32,
        /// Truncation order
        #[arg(long)]
        order: usize,
    },
    /// List the rotation sets of theta -> d*theta with rotation number p/q
    RotationSets {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
    },
    /// Per-composition ledger: dynamical counts against identity terms
    Counts {
        /// The composed number n (the period)
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
    },
    /// Locate all centers of period n for degree d
    Centers {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        n: u32,
        /// Write the roots as CSV (d, n, re, im, exact_period, residual)
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Render the filled Julia set of z^d + c as a binary PPM image
    Render {
        /// Parameter c as "re,im" (or just "re")
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        c: C64,
        #[arg(long)]
        d: u32,
        /// Output path for the P6 file
        #[arg(long)]
        out: PathBuf,
        /// Viewport center as "re,im"
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0,0")]
        center: C64,
        /// Half the horizontal extent of the viewport
        #[arg(long = "half-width", default_value_t = 1.6)]
        half_width: f64,
        /// Image width and height in pixels
        #[arg(long, default_value_t = 512)]
        size: u32,
        #[arg(long = "max-iter", default_value_t = 256)]
        max_iter: u32,
        /// Mark the first ORBIT points of the critical orbit
        #[arg(long)]
        overlay: Option<u32>,
    },
    /// Run the full verification suite
    VerifyAll {
        /// Also write the report as JSON
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn parse_complex(raw: &str) -> Result<C64, String> {
    let mut parts = raw.splitn(2, ',');
    let re: f64 = parts
        .next()
        .unwrap_or_default()
        .trim()
        .parse()
        .map_err(|_| format!("bad real part in {raw:?}"))?;
    let im: f64 = match parts.next() {
        Some(text) => text.trim().parse().map_err(|_| format!("bad imaginary part in {raw:?}"))?,
        None => 0.0,
    };
    Ok(C64::new(re, im))
}

/// 0 = success, 1 = a mathematical check failed, 2 = usage/configuration.
fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(all_passed) => {
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<bool, String> {
    match command {
        Command::Identity { n_max, d_max } => cmd_identity(n_max, d_max),
        Command::Series { d, order } => cmd_series(d, order),
        Command::RotationSets { d, p, q } => cmd_rotation_sets(d, p, q),
        Command::Counts { n, d } => cmd_counts(n, d),
        Command::Centers { d, n, dump } => cmd_centers(d, n, dump),
        Command::Render { c, d, out, center, half_width, size, max_iter, overlay } => {
            cmd_render(c, d, out, center, half_width, size, max_iter, overlay)
        }
        Command::VerifyAll { json } => cmd_verify_all(json),
    }
}

fn cmd_identity(n_max: u32, d_max: u32) -> Result<bool, String> {
    if n_max == 0 || d_max == 0 {
        return Err("--n-max and --d-max must be at least 1".into());
    }
    println!("{:>3} {:>3} {:>24} {:>24}  result", "n", "d", "lhs", "rhs");
    let mut all_equal = true;
    for n in 1..=n_max {
        for d in 1..=d_max {
            let check = identity_check(n, d).map_err(|e| e.to_string())?;
            println!(
                "{n:>3} {d:>3} {:>24} {:>24}  {}",
                check.lhs,
                check.rhs,
                if check.equal { "equal" } else { "MISMATCH" }
            );
            all_equal &= check.equal;
        }
    }
    Ok(all_equal)
}

fn cmd_series(d: u32, order: usize) -> Result<bool, String> {
    if d == 0 || order == 0 {
        return Err("--d and --order must be at least 1".into());
    }
    let g = g_series(d, order);
    let closed = closed_form_series(d, order);
    println!("{:>3} {:>28} {:>28}  result", "n", "composition route", "closed form");
    let mut all_equal = true;
    for n in 0..=order {
        let equal = g.coeff(n) == closed.coeff(n);
        println!(
            "{n:>3} {:>28} {:>28}  {}",
            g.coeff(n),
            closed.coeff(n),
            if equal { "equal" } else { "MISMATCH" }
        );
        all_equal &= equal;
    }
    Ok(all_equal)
}

fn cmd_rotation_sets(d: u32, p: u32, q: u32) -> Result<bool, String> {
    let sets = enumerate_rotation_sets(d, p, q).map_err(|e| e.to_string())?;
    println!("rotation sets for theta -> {d}*theta with rotation number {p}/{q}:");
    for (index, set) in sets.iter().enumerate() {
        let angles: Vec<String> = set.angles().iter().map(|a| a.to_string()).collect();
        let (lo, hi) = set.widest_gap().map_err(|e| e.to_string())?;
        println!("  #{index}: {{{}}}, widest gap ({lo}, {hi})", angles.join(", "));
    }
    let expected = d as usize - 1;
    println!("found {} set(s), expected {expected}", sets.len());
    Ok(sets.len() == expected)
}

fn cmd_counts(n: u32, d: u32) -> Result<bool, String> {
    if d < 2 {
        return Err("--d must be at least 2 for the dynamical ledger".into());
    }
    println!("center ledger for n = {n}, d = {d}");
    println!("{:<20} {:>3} {:>3} {:>16} {:>16}  result", "composition", "r", "w", "dynamical", "identity term");
    let mut all_equal = true;
    let mut assembled_total = BigUint::one(); // the center c = 0
    let mut term_total = BigUint::zero();
    for p in enumerate_hcompositions(n).map_err(|e| e.to_string())? {
        let term = term_value(&p, d);
        term_total += &term;
        let (dynamical, status) = if p.first_part() == 1 {
            ("1 (c = 0)".to_string(), "ok")
        } else {
            let count = dcenter_core::circle::prop32_count(&p, d).map_err(|e| e.to_string())?;
            assembled_total += &count;
            let ok = count == term;
            all_equal &= ok;
            (count.to_string(), if ok { "ok" } else { "MISMATCH" })
        };
        println!(
            "{:<20} {:>3} {:>3} {:>16} {:>16}  {status}",
            p.to_string(),
            p.part_count(),
            p.multiplicity(),
            dynamical,
            term,
        );
    }
    let centers = BigUint::from(d).pow(n - 1);
    let identity_rhs = BigUint::from(d).pow(n) - BigUint::one();
    println!("identity total: {term_total} (d^n - 1 = {identity_rhs})");
    println!("centers counted: {assembled_total} (d^(n-1) = {centers})");
    all_equal &= term_total == identity_rhs && assembled_total == centers;
    Ok(all_equal)
}

fn cmd_centers(d: u32, n: u32, dump: Option<PathBuf>) -> Result<bool, String> {
    let cfg = SolverConfig::default();
    let centers = find_centers(d, n, &cfg).map_err(|e| e.to_string())?;
    println!("{} center(s) of period {n} for degree {d}:", centers.len());
    println!("{:>4} {:>22} {:>22} {:>7} {:>10}", "#", "re(c)", "im(c)", "period", "residual");
    for (index, center) in centers.iter().enumerate() {
        println!(
            "{index:>4} {:>22.16} {:>22.16} {:>7} {:>10.2e}",
            center.c.re, center.c.im, center.exact_period, center.residual
        );
    }
    if let Some(path) = dump {
        let mut file = fs::File::create(&path)
            .map_err(|e| format!("cannot create {}: {e}", path.display()))?;
        writeln!(file, "d,n,re,im,exact_period,residual")
            .and_then(|_| {
                centers.iter().try_for_each(|center| {
                    writeln!(
                        file,
                        "{d},{n},{},{},{},{:e}",
                        center.c.re, center.c.im, center.exact_period, center.residual
                    )
                })
            })
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
        println!("wrote {}", path.display());
    }
    let expected = BigUint::from(d).pow(n - 1);
    Ok(BigUint::from(centers.len()) == expected)
}

#[allow(clippy::too_many_arguments)]
fn cmd_render(
    c: C64,
    d: u32,
    out: PathBuf,
    center: C64,
    half_width: f64,
    size: u32,
    max_iter: u32,
    overlay: Option<u32>,
) -> Result<bool, String> {
    let vp = Viewport { center, half_width, width: size, height: size, max_iter, escape_radius: 4.0 };
    let image = render_julia(c, d, &vp, overlay).map_err(|e| e.to_string())?;
    fs::write(&out, image.encode_ppm()).map_err(|e| format!("cannot write {}: {e}", out.display()))?;
    println!("wrote {} ({}x{} P6)", out.display(), image.width(), image.height());
    Ok(true)
}

fn cmd_verify_all(json: Option<PathBuf>) -> Result<bool, String> {
    let threads = thread_budget()?;
    let report = run_verification(threads);
    for check in &report.checks {
        println!(
            "[{}] {}  ({} ms)\n    parameters: {}\n    expected:   {}\n    actual:     {}",
            if check.pass { "PASS" } else { "FAIL" },
            check.check_id,
            check.elapsed_ms,
            check.parameters,
            check.expected,
            check.actual
        );
    }
    println!("{} of {} checks passed", report.summary.total - report.summary.failed, report.summary.total);
    if let Some(path) = json {
        fs::write(&path, report.to_json())
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
        println!("wrote {}", path.display());
    }
    Ok(report.all_passed())
}
