//! Command-line surface for the quartic family: enumerate members, emit
//! polynomials and verification reports, search the parameter surface,
//! compute the unit and class-number bounds, check the cubic companion
//! family, and compare against an external computer-algebra oracle.
//!
//! Exit codes: 0 all checks pass, 1 verification failure, 2 usage or input
//! error, 3 oracle infrastructure error.

mod oracle;
mod report;
mod table;

use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use quartic_units::arith::default_precision;
use quartic_units::family::{params_from_s, poly_from_s, search_integral_points};
use quartic_units::pell::{classify, s_sequence, DEFAULT_TRIAL_BOUND};

use report::{
    bounds_member, cubic_member, pell_index_of, sf_status_string, verify_member, ListRow, PolyRow,
    SearchRow, VerifyOptions,
};

#[derive(Parser)]
#[command(
    name = "qu",
    version,
    about = "Cyclic quartic field family: construction and verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Family enumeration and polynomials
    Family {
        #[command(subcommand)]
        sub: FamilyCmd,
    },
    /// Run the verification suite for one or more members
    Verify(VerifyArgs),
    /// Search integral points on the parameter surface
    Search {
        /// Scan 0 < max(|f|, |g|) <= bound
        #[arg(long)]
        bound: u32,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Regulator, index, and class-number bounds for a member
    Bounds {
        #[arg(long, conflicts_with = "s")]
        n: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        s: Option<String>,
        #[arg(long)]
        bits: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_TRIAL_BOUND)]
        trial_bound: u64,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Cubic companion family
    Cubic {
        #[command(subcommand)]
        sub: CubicCmd,
    },
    /// External computer-algebra oracle
    Oracle {
        #[command(subcommand)]
        sub: OracleCmd,
    },
}

#[derive(Subcommand)]
enum FamilyCmd {
    /// List the first members with their squarefree classification
    List {
        #[arg(long)]
        count: u32,
        #[arg(long, default_value_t = DEFAULT_TRIAL_BOUND)]
        trial_bound: u64,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Print the defining quartic of a member
    Poly {
        #[arg(long, conflicts_with = "s")]
        n: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        s: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Member index (repeatable for batch verification)
    #[arg(long, conflicts_with = "s")]
    n: Vec<u32>,
    /// Member parameter s (must satisfy the square condition)
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,
    /// Working precision in bits (default: max(256, 8 ceil(log2(|s|+2))))
    #[arg(long)]
    bits: Option<usize>,
    /// Comma-separated subset of checks to run
    #[arg(long, value_delimiter = ',')]
    checks: Option<Vec<String>>,
    #[arg(long, default_value_t = DEFAULT_TRIAL_BOUND)]
    trial_bound: u64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Include wall-clock timings in the report (off by default so reports
    /// are byte-deterministic)
    #[arg(long)]
    timings: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand)]
enum CubicCmd {
    /// Verify the two exact identities and the index-3 regulator ratio
    Verify {
        /// Family parameter f (repeatable)
        #[arg(long, required = true, allow_negative_numbers = true)]
        f: Vec<i64>,
        #[arg(long, default_value_t = 512)]
        bits: usize,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Compare oracle-reported invariants against built-in expectations
    Compare {
        #[arg(long, conflicts_with = "s")]
        n: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        s: Option<String>,
        /// Oracle command line (default: QU_ORACLE_CMD)
        #[arg(long)]
        oracle_cmd: Option<String>,
        #[arg(long, default_value_t = 120)]
        timeout_secs: u64,
        #[arg(long)]
        bits: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Cmd::Family { sub } => match sub {
            FamilyCmd::List {
                count,
                trial_bound,
                format,
            } => cmd_family_list(count, trial_bound, format),
            FamilyCmd::Poly { n, s, format } => cmd_family_poly(n, s, format),
        },
        Cmd::Verify(args) => cmd_verify(args),
        Cmd::Search {
            bound,
            workers,
            format,
        } => cmd_search(bound, workers, format),
        Cmd::Bounds {
            n,
            s,
            bits,
            trial_bound,
            format,
        } => cmd_bounds(n, s, bits, trial_bound, format),
        Cmd::Cubic { sub } => match sub {
            CubicCmd::Verify { f, bits, format } => cmd_cubic(f, bits, format),
        },
        Cmd::Oracle { sub } => match sub {
            OracleCmd::Compare {
                n,
                s,
                oracle_cmd,
                timeout_secs,
                bits,
                format,
            } => cmd_oracle(n, s, oracle_cmd, timeout_secs, bits, format),
        },
    }
}

fn parse_s(s: &str) -> Result<BigInt, String> {
    BigInt::from_str(s).map_err(|e| format!("invalid s {s:?}: {e}"))
}

fn resolve_selector(n: Option<u32>, s: Option<String>) -> Result<(Option<u32>, BigInt), String> {
    match (n, s) {
        (Some(n), None) => {
            if n == 0 {
                return Err("n must be at least 1".into());
            }
            let sol = quartic_units::pell::pell_solution(n).map_err(|e| e.to_string())?;
            Ok((Some(n), sol.s))
        }
        (None, Some(s)) => {
            let s = parse_s(&s)?;
            Ok((pell_index_of(&s), s))
        }
        _ => Err("exactly one of --n or --s is required".into()),
    }
}

fn emit<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string(value).expect("serializable"));
}

fn cmd_family_list(count: u32, trial_bound: u64, format: Format) -> Result<ExitCode, String> {
    if count == 0 {
        return Err("--count must be at least 1".into());
    }
    let rows: Vec<ListRow> = s_sequence(count)
        .iter()
        .map(|sol| {
            let c = classify(sol, trial_bound);
            ListRow {
                n: sol.n,
                nine_divides: c.nine_divides,
                s: sol.s.to_string(),
                sf_status: sf_status_string(&c.sf_status),
            }
        })
        .collect();
    match format {
        Format::Tsv => {
            println!("n\ts\tnine_divides\tsf_status");
            for r in rows {
                println!("{}\t{}\t{}\t{}", r.n, r.s, r.nine_divides, r.sf_status);
            }
        }
        Format::Json => rows.iter().for_each(emit),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_family_poly(n: Option<u32>, s: Option<String>, format: Format) -> Result<ExitCode, String> {
    let (n, s) = resolve_selector(n, s)?;
    params_from_s(&s).map_err(|e| e.to_string())?;
    let poly = poly_from_s(&s);
    let row = PolyRow {
        coefficients: (0..=4).map(|i| poly.coeff(i).to_string()).collect(),
        display: poly.to_string(),
        n,
        s: s.to_string(),
    };
    match format {
        Format::Tsv => {
            println!("s\tpolynomial\tcoefficients");
            println!("{}\t{}\t{}", row.s, row.display, row.coefficients.join(","));
        }
        Format::Json => emit(&row),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, String> {
    let selectors: Vec<(Option<u32>, BigInt)> = if !args.n.is_empty() {
        let mut v = Vec::new();
        for n in &args.n {
            if *n == 0 {
                return Err("n must be at least 1".into());
            }
            let sol = quartic_units::pell::pell_solution(*n).map_err(|e| e.to_string())?;
            v.push((Some(*n), sol.s));
        }
        v
    } else {
        let (n, s) = resolve_selector(None, args.s.clone())?;
        vec![(n, s)]
    };
    if let Some(filter) = &args.checks {
        for name in filter {
            if !report::CHECK_NAMES.contains(&name.as_str()) {
                return Err(format!(
                    "unknown check {name:?}; expected one of {:?}",
                    report::CHECK_NAMES
                ));
            }
        }
    }
    let opts = VerifyOptions {
        precision: args.bits,
        trial_bound: args.trial_bound,
        checks_filter: args.checks.clone(),
        timings: args.timings,
    };
    // fan out over a dedicated pool; results are gathered and sorted, so
    // the byte output is independent of the worker count
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.workers.max(1))
        .build()
        .map_err(|e| e.to_string())?;
    let mut reports: Vec<_> = pool.install(|| {
        selectors
            .par_iter()
            .map(|(n, s)| verify_member(*n, s, &opts).map_err(|e| e.to_string()))
            .collect::<Vec<_>>()
    });
    reports.sort_by_key(|r| r.as_ref().ok().and_then(|rep| rep.n).unwrap_or(u32::MAX));
    let mut all_pass = true;
    for rep in reports {
        let rep = rep?;
        all_pass &= rep.status == "pass";
        match args.format {
            Format::Json => emit(&rep),
            Format::Tsv => {
                let failed: Vec<&str> = rep
                    .checks
                    .iter()
                    .filter(|c| c.status == "fail")
                    .map(|c| c.name.as_str())
                    .collect();
                let conditional: Vec<&str> = rep
                    .checks
                    .iter()
                    .filter(|c| c.status == "conditional")
                    .map(|c| c.name.as_str())
                    .collect();
                println!(
                    "s={}\tstatus={}\tchecks={}\tfailed=[{}]\tconditional=[{}]\tindex_bound={}\tpossible_indices={:?}",
                    rep.s,
                    rep.status,
                    rep.checks.len(),
                    failed.join(","),
                    conditional.join(","),
                    rep.units.index_bound,
                    rep.units.possible_indices,
                );
            }
        }
    }
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_search(bound: u32, workers: usize, format: Format) -> Result<ExitCode, String> {
    if bound == 0 {
        return Err("--bound must be at least 1".into());
    }
    let rows: Vec<SearchRow> = search_integral_points(bound, workers.max(1))
        .into_iter()
        .map(|p| SearchRow {
            f: p.f,
            g: p.g,
            l: p.l.to_string(),
            p: p.p,
            s: p.s,
        })
        .collect();
    match format {
        Format::Tsv => {
            println!("f\tg\ts\tp\tl");
            for r in &rows {
                println!("{}\t{}\t{}\t{}\t{}", r.f, r.g, r.s, r.p, r.l);
            }
        }
        Format::Json => rows.iter().for_each(emit),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_bounds(
    n: Option<u32>,
    s: Option<String>,
    bits: Option<usize>,
    trial_bound: u64,
    format: Format,
) -> Result<ExitCode, String> {
    let (_, s) = resolve_selector(n, s)?;
    let rep = bounds_member(&s, bits, trial_bound).map_err(|e| e.to_string())?;
    match format {
        Format::Json => emit(&rep),
        Format::Tsv => {
            println!("field\tvalue");
            println!("s\t{}", rep.s);
            println!("conductor\t{}", rep.conductor);
            println!("regulator_upper\t{}", rep.regulator_upper);
            println!(
                "regulator_upper_below_nine_log_sq\t{}",
                rep.regulator_upper_below_nine_log_sq
            );
            println!("rvsd_lower\t{}", rep.rvsd_lower);
            println!("rvsd_ratio_is_s2_plus_2\t{}", rep.rvsd_ratio_is_s2_plus_2);
            println!("class_number_lower\t{}", rep.class_number_lower);
            println!("class_number_valid\t{}", rep.class_number_valid);
            println!("louboutin_lower\t{}", rep.louboutin_lower);
            println!("class_ratio_bound\t{}", rep.class_ratio_bound);
            println!(
                "class_ratio_less_than_conductor\t{}",
                rep.class_ratio_less_than_conductor
            );
            println!(
                "class_ratio_threshold_applies\t{}",
                rep.class_ratio_threshold_applies
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_cubic(fs: Vec<i64>, bits: usize, format: Format) -> Result<ExitCode, String> {
    let mut all_pass = true;
    for f in fs {
        let rep = cubic_member(f, bits).map_err(|e| e.to_string())?;
        all_pass &= rep.status == "pass";
        match format {
            Format::Json => emit(&rep),
            Format::Tsv => println!(
                "f={f}\tstatus={}\tfactorization={}\tcompanion={}\tindex_ratio={}",
                rep.status, rep.factorization_identity, rep.companion_identity, rep.index_ratio
            ),
        }
    }
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct OracleCompareReport {
    class_group_expected: Option<Vec<String>>,
    class_group_match: Option<bool>,
    class_group_oracle: Option<Vec<String>>,
    conditional: bool,
    index_expected: Option<u64>,
    index_in_possible: Option<bool>,
    index_match: Option<bool>,
    index_oracle: Option<u64>,
    possible_indices: Vec<u64>,
    regulator_oracle: Option<String>,
    s: String,
}

fn cmd_oracle(
    n: Option<u32>,
    s: Option<String>,
    oracle_cmd: Option<String>,
    timeout_secs: u64,
    bits: Option<usize>,
    format: Format,
) -> Result<ExitCode, String> {
    let (n, s) = resolve_selector(n, s)?;
    params_from_s(&s).map_err(|e| e.to_string())?;
    let cmd = match oracle_cmd.or_else(|| std::env::var("QU_ORACLE_CMD").ok()) {
        Some(c) if !c.trim().is_empty() => c,
        _ => {
            eprintln!("error: no oracle configured (set QU_ORACLE_CMD or pass --oracle-cmd)");
            return Ok(ExitCode::from(3));
        }
    };
    let poly = poly_from_s(&s);
    let oracle_result = match oracle::query(&cmd, &poly, timeout_secs) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(ExitCode::from(3));
        }
    };

    // internal index analysis for the comparison
    let opts = VerifyOptions {
        precision: bits.or_else(|| Some(default_precision(&s))),
        trial_bound: DEFAULT_TRIAL_BOUND,
        checks_filter: Some(vec!["index".into()]),
        timings: false,
    };
    let rep = verify_member(n, &s, &opts).map_err(|e| e.to_string())?;
    let conditional = rep.invariants.conditional;
    let possible = rep.units.possible_indices.clone();

    let expectation = table::lookup(&s.to_string());
    let class_group_expected: Option<Vec<String>> =
        expectation.map(|(inv, _)| inv.iter().map(|d| d.to_string()).collect());
    let index_expected = expectation.map(|(_, idx)| idx);
    let class_group_match = match (&class_group_expected, &oracle_result.class_group) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    let index_match = match (index_expected, oracle_result.unit_index) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    let index_in_possible = match (conditional, oracle_result.unit_index) {
        (false, Some(idx)) => Some(possible.contains(&idx)),
        _ => None,
    };

    let out = OracleCompareReport {
        class_group_expected,
        class_group_match,
        class_group_oracle: oracle_result.class_group,
        conditional,
        index_expected,
        index_in_possible,
        index_match,
        index_oracle: oracle_result.unit_index,
        possible_indices: possible,
        regulator_oracle: oracle_result.regulator,
        s: s.to_string(),
    };
    match format {
        Format::Json => emit(&out),
        Format::Tsv => {
            println!(
                "s={}\tclass_group_match={:?}\tindex_match={:?}\tindex_in_possible={:?}",
                out.s, out.class_group_match, out.index_match, out.index_in_possible
            );
        }
    }
    let mismatch = out.class_group_match == Some(false)
        || out.index_match == Some(false)
        || out.index_in_possible == Some(false);
    Ok(if mismatch {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}
