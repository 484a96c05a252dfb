//! `alcove` — exact counts of confined lattice walks.
//!
//! Subcommands: `count` (one query, JSON out), `verify` (sweep a grid of
//! instances comparing every route), `ruin` (gambler's-ruin tables).

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use alcove_core::closed;
use alcove_core::grid::{run_grid, GridSpec, InstanceResult};
use alcove_core::oracle::{circle_dp_count, dp_count};
use alcove_core::reflect::{
    count_alcove, count_circle, km_determinant, one_dim_half_counter,
};
use alcove_core::{round_to_count, ChamberSpec, Family, LatticePoint, StepKind, StepSet};

#[derive(Parser)]
#[command(name = "alcove", version, about = "Exact counting of confined lattice walks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count walks for a single instance and emit JSON
    Count(CountArgs),
    /// Sweep a verification grid, comparing every counting route
    Verify(VerifyArgs),
    /// Gambler's-ruin first-passage and survival tables
    Ruin(RuinArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Ctilde,
    Btilde,
    Dtilde,
    Atilde,
    Circle,
    #[value(name = "finite-a")]
    FiniteA,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StepsArg {
    Coord,
    Diag,
    Forward,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Reflection,
    Dp,
    Closed,
    All,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long)]
    family: FamilyArg,
    #[arg(long)]
    n: usize,
    /// scale / circle size; integer or half-integer ("5/2" or "2.5");
    /// ignored for finite-a
    #[arg(long)]
    m: Option<String>,
    #[arg(long)]
    steps: StepsArg,
    /// comma-separated coordinates, half-integers allowed ("3/2,1/2")
    #[arg(long)]
    eta: String,
    #[arg(long)]
    lambda: String,
    #[arg(long)]
    k: u64,
    #[arg(long, value_enum, default_value_t = MethodArg::All)]
    method: MethodArg,
}

#[derive(Args)]
struct VerifyArgs {
    /// grid file (key=value lines); omit to run the built-in desk grid
    #[arg(long)]
    grid: Option<String>,
    /// print only failures and the summary
    #[arg(long)]
    quiet: bool,
}

#[derive(Args)]
struct RuinArgs {
    #[arg(long = "N")]
    total: i64,
    #[arg(long)]
    eta: i64,
    #[arg(long)]
    kmax: u64,
    #[arg(long, default_value = "csv")]
    format: RuinFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RuinFormat {
    Csv,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Count(args) => cmd_count(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Ruin(args) => cmd_ruin(&args),
    };
    match code {
        Ok(c) => ExitCode::from(c),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Parses "3", "5/2", or "2.5" into a doubled integer.
fn parse_half(s: &str) -> Result<i64, String> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        if den.trim() != "2" {
            return Err(format!("only halves are supported, got {s}"));
        }
        return num
            .trim()
            .parse::<i64>()
            .map_err(|e| format!("bad value {s}: {e}"));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let doubled = match frac {
            "5" => 1,
            "0" | "" => 0,
            _ => return Err(format!("only halves are supported, got {s}")),
        };
        let base = if int.is_empty() || int == "-" {
            0
        } else {
            int.parse::<i64>().map_err(|e| format!("bad value {s}: {e}"))?
        };
        let sign = if s.starts_with('-') { -1 } else { 1 };
        return Ok(2 * base + sign * doubled);
    }
    s.parse::<i64>()
        .map(|v| 2 * v)
        .map_err(|e| format!("bad value {s}: {e}"))
}

fn parse_point(s: &str) -> Result<LatticePoint, String> {
    let coords: Result<Vec<i64>, String> = s.split(',').map(parse_half).collect();
    Ok(LatticePoint::from_doubled(coords?))
}

fn format_half(doubled: i64) -> String {
    if doubled % 2 == 0 {
        format!("{}", doubled / 2)
    } else {
        format!("{doubled}/2")
    }
}

fn point_strings(p: &LatticePoint) -> Vec<String> {
    p.doubled().iter().map(|&d| format_half(d)).collect()
}

#[derive(Serialize, Deserialize)]
struct CountOutput {
    family: String,
    n: usize,
    m: Option<String>,
    steps: String,
    eta: Vec<String>,
    lambda: Vec<String>,
    k: u64,
    results: serde_json::Map<String, serde_json::Value>,
    agree: bool,
}

fn cmd_count(args: &CountArgs) -> Result<u8, String> {
    let eta = parse_point(&args.eta)?;
    let lambda = parse_point(&args.lambda)?;
    let kind = match args.steps {
        StepsArg::Coord => StepKind::Coordinate,
        StepsArg::Diag => StepKind::Diagonal,
        StepsArg::Forward => StepKind::Forward,
    };
    let steps = StepSet::new(kind, args.n);
    let m2 = match (&args.m, args.family) {
        (_, FamilyArg::FiniteA) => None,
        (Some(m), _) => Some(parse_half(m)?),
        (None, _) => return Err("--m is required for this family".into()),
    };

    let want = |m: MethodArg| args.method == m || args.method == MethodArg::All;
    let mut results = serde_json::Map::new();
    let mut numeric: Vec<BigInt> = Vec::new();
    let push_numeric = |results: &mut serde_json::Map<String, serde_json::Value>,
                            numeric: &mut Vec<BigInt>,
                            name: &str,
                            v: BigInt| {
        results.insert(name.into(), serde_json::Value::String(v.to_string()));
        numeric.push(v);
    };

    if args.family == FamilyArg::Circle {
        let m2 = m2.unwrap();
        if m2 % 2 != 0 {
            return Err("the circle size must be an integer".into());
        }
        let m = m2 / 2;
        if want(MethodArg::Reflection) {
            let v = count_circle(m, args.n, &steps, &eta, &lambda, args.k)
                .map_err(|e| e.to_string())?;
            push_numeric(&mut results, &mut numeric, "reflection", v);
        }
        if want(MethodArg::Dp) {
            let v = circle_dp_count(m, args.n, &steps, &eta, &lambda, args.k)
                .map_err(|e| e.to_string())?;
            push_numeric(&mut results, &mut numeric, "dp", v);
        }
        if want(MethodArg::Closed) {
            match circle_closed(m, args.n, kind, &eta, &lambda, args.k)? {
                Some(v) => push_numeric(&mut results, &mut numeric, "closed", v),
                None => {
                    results.insert("closed".into(), "unavailable".into());
                }
            }
        }
    } else {
        let family = match args.family {
            FamilyArg::Ctilde => Family::AffineC,
            FamilyArg::Btilde => Family::AffineB,
            FamilyArg::Dtilde => Family::AffineD,
            FamilyArg::Atilde => Family::AffineA,
            FamilyArg::FiniteA => Family::FiniteA,
            FamilyArg::Circle => unreachable!(),
        };
        let chamber =
            ChamberSpec::new(family, args.n, m2.unwrap_or(2)).map_err(|e| e.to_string())?;
        if want(MethodArg::Reflection) {
            let v = count_alcove(&chamber, &steps, &eta, &lambda, args.k)
                .map_err(|e| e.to_string())?;
            push_numeric(&mut results, &mut numeric, "reflection", v);
        }
        if want(MethodArg::Dp) {
            let v = dp_count(&chamber, &steps, &eta, &lambda, args.k)
                .map_err(|e| e.to_string())?;
            push_numeric(&mut results, &mut numeric, "dp", v);
        }
        if want(MethodArg::Closed) {
            match alcove_closed(&chamber, kind, &eta, &lambda, args.k)? {
                Some(v) => push_numeric(&mut results, &mut numeric, "closed", v),
                None => {
                    results.insert("closed".into(), "unavailable".into());
                }
            }
        }
    }

    let agree = numeric.windows(2).all(|w| w[0] == w[1]);
    let output = CountOutput {
        family: match args.family {
            FamilyArg::Ctilde => "ctilde",
            FamilyArg::Btilde => "btilde",
            FamilyArg::Dtilde => "dtilde",
            FamilyArg::Atilde => "atilde",
            FamilyArg::Circle => "circle",
            FamilyArg::FiniteA => "finite-a",
        }
        .to_string(),
        n: args.n,
        m: m2.map(format_half),
        steps: match kind {
            StepKind::Coordinate => "coord",
            StepKind::Diagonal => "diag",
            StepKind::Forward => "forward",
        }
        .to_string(),
        eta: point_strings(&eta),
        lambda: point_strings(&lambda),
        k: args.k,
        results,
        agree,
    };
    println!(
        "{}",
        serde_json::to_string(&output).map_err(|e| e.to_string())?
    );
    if args.method == MethodArg::All && !agree {
        return Ok(3);
    }
    Ok(0)
}

/// Closed-form value in the float-validated range, rounded to an exact count.
fn rounded_closed(value: f64) -> Result<Option<BigInt>, String> {
    if !value.is_finite() || value.abs() > 9.0e15 {
        return Ok(None); // beyond float validation
    }
    round_to_count(value).map(Some).map_err(|e| e.to_string())
}

fn alcove_closed(
    chamber: &ChamberSpec,
    kind: StepKind,
    eta: &LatticePoint,
    lambda: &LatticePoint,
    k: u64,
) -> Result<Option<BigInt>, String> {
    if chamber.n > 8 {
        return Ok(None);
    }
    let value = match (chamber.family, kind) {
        (Family::AffineC, StepKind::Coordinate) => {
            closed::tcn_coord_expoly(eta, lambda, chamber.m2, chamber.n)
                .map_err(|e| e.to_string())?
                .extract(k)
        }
        (Family::AffineC, StepKind::Diagonal) => {
            closed::tcn_diag_count(eta, lambda, k, chamber.m2, chamber.n)
                .map_err(|e| e.to_string())?
        }
        (Family::AffineB, StepKind::Coordinate) => {
            closed::tbn_coord_expoly(eta, lambda, chamber.m2, chamber.n)
                .map_err(|e| e.to_string())?
                .extract(k)
        }
        (Family::AffineD, StepKind::Coordinate) => {
            closed::tdn_coord_expoly(eta, lambda, chamber.m2, chamber.n)
                .map_err(|e| e.to_string())?
                .extract(k)
        }
        (Family::AffineB | Family::AffineD, StepKind::Diagonal) => {
            closed::bn_dn_diag_count(chamber.family, eta, lambda, k, chamber.m2, chamber.n)
                .map_err(|e| e.to_string())?
        }
        (Family::AffineA, StepKind::Forward) => {
            let exact = closed::tan_forward_count(eta, lambda, k, chamber.m2, chamber.n)
                .map_err(|e| e.to_string())?;
            return Ok(Some(exact));
        }
        // the A-family coordinate/diagonal determinants count endpoint
        // classes on the hyperplane, not exact-endpoint walks
        (Family::AffineA, _) => return Ok(None),
        (Family::FiniteA, StepKind::Diagonal) => {
            let det = km_determinant(eta, lambda, k, one_dim_half_counter)
                .map_err(|e| e.to_string())?;
            return Ok(Some(det));
        }
        (Family::FiniteA, StepKind::Forward) => {
            let det =
                closed::finite_a_forward_count(eta, lambda, k).map_err(|e| e.to_string())?;
            return Ok(Some(det));
        }
        (Family::FiniteA, StepKind::Coordinate) => return Ok(None),
        // forward steps are never reflectable in these families; count_alcove
        // rejects them before we get here, but keep the dispatch total
        (Family::AffineB | Family::AffineC | Family::AffineD, StepKind::Forward) => {
            return Ok(None)
        }
    };
    rounded_closed(value)
}

fn circle_closed(
    m: i64,
    n: usize,
    kind: StepKind,
    eta: &LatticePoint,
    lambda: &LatticePoint,
    k: u64,
) -> Result<Option<BigInt>, String> {
    if n > 8 {
        return Ok(None);
    }
    let value = match kind {
        StepKind::Coordinate => closed::circle_coord_expoly(m, n, eta, lambda)
            .map_err(|e| e.to_string())?
            .extract(k),
        StepKind::Diagonal => {
            closed::circle_diag_count(m, n, eta, lambda, k).map_err(|e| e.to_string())?
        }
        StepKind::Forward => return Ok(None),
    };
    rounded_closed(value)
}

fn parse_grid_file(text: &str) -> Result<GridSpec, String> {
    let mut spec = GridSpec::empty();
    let desk = GridSpec::desk_default();
    let mut circle = false;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected key=value", lineno + 1))?;
        let key = key.trim();
        let value = value.trim();
        match key {
            "families" => {
                for f in value.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                    match f {
                        "ctilde" => spec.families.push(Family::AffineC),
                        "btilde" => spec.families.push(Family::AffineB),
                        "dtilde" => spec.families.push(Family::AffineD),
                        "atilde" => spec.families.push(Family::AffineA),
                        "finite-a" => spec.families.push(Family::FiniteA),
                        "circle" => circle = true,
                        other => return Err(format!("unknown family {other}")),
                    }
                }
            }
            "steps" => {
                for s in value.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                    spec.steps.push(match s {
                        "coord" => StepKind::Coordinate,
                        "diag" => StepKind::Diagonal,
                        "forward" => StepKind::Forward,
                        other => return Err(format!("unknown step set {other}")),
                    });
                }
            }
            "n" => spec.ns = parse_usize_list(value)?,
            "m" => {
                spec.ms2 = value
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(parse_half)
                    .collect::<Result<_, _>>()?;
            }
            "kmax" => {
                spec.kmax = value
                    .parse()
                    .map_err(|e| format!("bad kmax {value}: {e}"))?;
            }
            "circle_n" => spec.circle_ns = parse_usize_list(value)?,
            "circle_m" => {
                spec.circle_ms = value
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<i64>().map_err(|e| format!("bad circle_m: {e}")))
                    .collect::<Result<_, _>>()?;
            }
            "circle_kmax" => {
                spec.circle_kmax = value
                    .parse()
                    .map_err(|e| format!("bad circle_kmax {value}: {e}"))?;
            }
            "perturb_closed" => {
                spec.perturb_closed = value
                    .parse()
                    .map_err(|e| format!("bad perturb_closed {value}: {e}"))?;
            }
            other => return Err(format!("unknown grid key {other}")),
        }
    }
    if circle {
        spec.include_circle = true;
        if spec.circle_ns.is_empty() {
            spec.circle_ns = desk.circle_ns.clone();
        }
        if spec.circle_ms.is_empty() {
            spec.circle_ms = desk.circle_ms.clone();
        }
        if spec.circle_kmax == 0 {
            spec.circle_kmax = desk.circle_kmax;
        }
    }
    Ok(spec)
}

fn parse_usize_list(value: &str) -> Result<Vec<usize>, String> {
    if let Some((a, b)) = value.split_once("..") {
        let lo: usize = a.trim().parse().map_err(|e| format!("bad range: {e}"))?;
        let hi: usize = b.trim().parse().map_err(|e| format!("bad range: {e}"))?;
        return Ok((lo..=hi).collect());
    }
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().map_err(|e| format!("bad list: {e}")))
        .collect()
}

fn cmd_verify(args: &VerifyArgs) -> Result<u8, String> {
    let spec = match &args.grid {
        None => GridSpec::desk_default(),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read grid file {path}: {e}"))?;
            parse_grid_file(&text)?
        }
    };
    let mut lines: Vec<(String, bool, String)> = Vec::new();
    let report = run_grid(&spec, &mut |r: &InstanceResult| {
        lines.push((r.key.clone(), r.pass, r.detail.clone()));
    })
    .map_err(|e| e.to_string())?;

    lines.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out = String::new();
    for (key, pass, detail) in &lines {
        if *pass {
            if !args.quiet {
                let _ = writeln!(out, "ok   {key}");
            }
        } else {
            let _ = writeln!(out, "FAIL {key} ({detail})");
        }
    }
    print!("{out}");
    println!(
        "{} instances, {} failures",
        report.instances,
        report.failures.len()
    );
    Ok(if report.all_pass() { 0 } else { 3 })
}

/// Twelve significant digits.
fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    format!("{x:.11e}")
}

#[derive(Serialize)]
struct RuinRow {
    k: u64,
    probability: f64,
}

#[derive(Serialize)]
struct SurvivalRow {
    lambda: i64,
    probability: f64,
}

#[derive(Serialize)]
struct RuinOutput {
    #[serde(rename = "N")]
    total: i64,
    eta: i64,
    kmax: u64,
    ruin: Vec<RuinRow>,
    survival: Vec<SurvivalRow>,
}

fn cmd_ruin(args: &RuinArgs) -> Result<u8, String> {
    if !(0 < args.eta && args.eta < args.total) {
        return Err("need 0 < eta < N".into());
    }
    let mut ruin = Vec::new();
    for k in 1..=args.kmax {
        ruin.push(RuinRow {
            k,
            probability: closed::gambler_first_passage(args.total, args.eta, k)
                .map_err(|e| e.to_string())?,
        });
    }
    let mut survival = Vec::new();
    for lambda in 1..args.total {
        survival.push(SurvivalRow {
            lambda,
            probability: closed::gambler_position(args.total, args.eta, lambda, args.kmax)
                .map_err(|e| e.to_string())?,
        });
    }
    match args.format {
        RuinFormat::Csv => {
            println!("k,probability");
            for row in &ruin {
                println!("{},{}", row.k, sig12(row.probability));
            }
            println!();
            println!("lambda,probability");
            for row in &survival {
                println!("{},{}", row.lambda, sig12(row.probability));
            }
        }
        RuinFormat::Json => {
            let out = RuinOutput {
                total: args.total,
                eta: args.eta,
                kmax: args.kmax,
                ruin,
                survival,
            };
            println!(
                "{}",
                serde_json::to_string(&out).map_err(|e| e.to_string())?
            );
        }
    }
    Ok(0)
}
