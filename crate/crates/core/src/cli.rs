//! Command-line front end.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::catalog::{compare_printed, Catalog, CatalogEntry, CatalogError, GENERATORS};
use crate::dynamics::{
    fidelity_report, quotient_hamiltonian, sample_times, sweep, DynamicsError, EngineInputs,
    DEFAULT_ORACLE_LIMIT,
};
use crate::format::{angle, g15, join};
use crate::graphs::{check_distance_regular, distance_partition, ingest_edge_list, GraphError};
use crate::pst::{feasibility, modulus_table, search_branches, CouplingSolution, PstError};
use crate::scheme::{IntersectionArray, SchemeError};
use crate::spectra::{Analysis, SpectraError};

#[derive(Parser, Debug)]
#[command(
    name = "pstnet",
    version,
    about = "Design and verify perfect state transfer on distance-regular spin networks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List or inspect catalog entries.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Solve the phase equations for coupling constants.
    Solve(SolveArgs),
    /// Evolve and certify transfer for given or solved couplings.
    Verify(VerifyArgs),
    /// Sample transfer amplitudes over time as CSV.
    Sweep(SweepArgs),
    /// Read an edge list and detect its intersection array.
    Ingest {
        #[arg(long)]
        edges: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogAction {
    List,
    Show {
        name: String,
        #[arg(long, default_value = "0", value_parser = parse_angle, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long, default_value = "1", value_parser = parse_angle)]
        t0: f64,
        /// Render angles as multiples of pi where exact.
        #[arg(long)]
        pi: bool,
    },
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct Target {
    /// Catalog entry or generator such as `cube:3`.
    #[arg(long)]
    pub name: Option<String>,
    /// Intersection array `b0,b1,...;c1,c2,...`.
    #[arg(long)]
    pub array: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct Phase {
    #[arg(long, default_value = "0", value_parser = parse_angle, allow_hyphen_values = true)]
    pub theta: f64,
    #[arg(long, default_value = "1", value_parser = parse_angle)]
    pub t0: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Csv,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[command(flatten)]
    pub target: Target,
    #[command(flatten)]
    pub phase: Phase,
    #[arg(long, default_value_t = 1)]
    pub branch_depth: u32,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    #[arg(long)]
    pub pi: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub target: Target,
    #[command(flatten)]
    pub phase: Phase,
    /// Comma-separated couplings `J_0,...,J_d`; accepts multiples of pi such as `-pi/4`.
    #[arg(long = "J", allow_hyphen_values = true)]
    pub j: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub branch_depth: u32,
    #[arg(long, default_value_t = DEFAULT_ORACLE_LIMIT)]
    pub oracle_limit: usize,
    #[arg(long)]
    pub pi: bool,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    pub target: Target,
    #[command(flatten)]
    pub phase: Phase,
    #[arg(long = "J", allow_hyphen_values = true)]
    pub j: Option<String>,
    /// Defaults to twice the transfer time.
    #[arg(long, value_parser = parse_angle)]
    pub t_max: Option<f64>,
    #[arg(long, default_value_t = 201)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub branch_depth: u32,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Pst(#[from] PstError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error("transfer not certified: |f_d(t0)| = {0}")]
    NotCertified(String),
}

impl CliError {
    /// 1 usage, 2 infeasible or uncertified, 3 numerical inconsistency.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) | Self::Io { .. } | Self::Catalog(_) | Self::Scheme(_) => 1,
            Self::Graph(
                GraphError::NotDistanceRegular { .. } | GraphError::Eccentricity { .. },
            ) => 2,
            Self::Graph(_) => 1,
            Self::Pst(PstError::NotAntipodal { .. } | PstError::ModulusMismatch { .. }) => 2,
            Self::Pst(PstError::NonPositiveTime(_) | PstError::Length { .. }) => 1,
            Self::Pst(_) | Self::Spectra(_) => 3,
            Self::Dynamics(
                DynamicsError::Dimension { .. } | DynamicsError::TooManyVertices { .. },
            ) => 1,
            Self::Dynamics(_) => 3,
            Self::NotCertified(_) => 2,
        }
    }
}

/// Captured result of one invocation.
#[derive(Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses a real number or a multiple of pi (`pi`, `-3*pi/4`, `pi/2`).
/// Accepts the Unicode minus sign.
pub fn parse_angle(text: &str) -> Result<f64, String> {
    let t: String = text
        .trim()
        .replace('\u{2212}', "-")
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect();
    let Some((head, tail)) = t.split_once("pi") else {
        return t.parse().map_err(|_| format!("invalid number {text:?}"));
    };
    let coef = match head.trim_end_matches('*') {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => c
            .parse::<f64>()
            .map_err(|_| format!("invalid coefficient in {text:?}"))?,
    };
    let den = match tail {
        "" => 1.0,
        d => d
            .strip_prefix('/')
            .and_then(|d| d.parse::<f64>().ok())
            .ok_or_else(|| format!("invalid denominator in {text:?}"))?,
    };
    Ok(coef * PI / den)
}

pub fn parse_couplings(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|tok| parse_angle(tok).map_err(CliError::Usage))
        .collect()
}

struct Resolved {
    label: String,
    entry: Option<CatalogEntry>,
    array: IntersectionArray,
}

fn resolve(target: &Target) -> Result<Resolved, CliError> {
    match (&target.name, &target.array) {
        (Some(name), None) => {
            let entry = Catalog::load()?.get(name)?;
            Ok(Resolved {
                label: entry.name.clone(),
                array: entry.array.clone(),
                entry: Some(entry),
            })
        }
        (None, Some(text)) => {
            let array: IntersectionArray = text.parse()?;
            Ok(Resolved {
                label: array.to_string(),
                array,
                entry: None,
            })
        }
        _ => Err(CliError::Usage(
            "exactly one of --name or --array is required".into(),
        )),
    }
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io {
        path: path.clone(),
        message: e.to_string(),
    })
}

fn modulus_report(out: &mut String, an: &Analysis) {
    let _ = writeln!(out, "modulus_table:");
    for (k, (x, p)) in modulus_table(&an.spectrum).into_iter().enumerate() {
        let _ = writeln!(
            out,
            "  k={k} x={} P_d={} |P_d|={}",
            g15(x),
            g15(p),
            g15(p.abs())
        );
    }
}

/// Feasibility with the modulus table printed on failure.
fn feasible_signs(out: &mut String, an: &Analysis) -> Result<Vec<i8>, CliError> {
    match feasibility(&an.spectrum, an.params()) {
        Ok(f) => Ok(f.s),
        Err(e) => {
            let _ = writeln!(out, "feasible: no");
            let _ = writeln!(out, "reason: {e}");
            if matches!(e, PstError::ModulusMismatch { .. }) {
                modulus_report(out, an);
            }
            Err(e.into())
        }
    }
}

fn cmd_catalog(out: &mut String, action: &CatalogAction) -> Result<(), CliError> {
    let cat = Catalog::load()?;
    match action {
        CatalogAction::List => {
            for e in cat.entries() {
                let graph = if e.graph.is_some() { "edges" } else { "-" };
                let _ = writeln!(
                    out,
                    "{:<18} {:<32} {:<6} {}",
                    e.name,
                    e.array.to_string(),
                    graph,
                    e.title
                );
            }
            for (pattern, about) in GENERATORS {
                let _ = writeln!(out, "{pattern:<18} {about}");
            }
        }
        CatalogAction::Show {
            name,
            theta,
            t0,
            pi,
        } => {
            let entry = cat.get(name)?;
            let an = Analysis::new(&entry.array)?;
            let p = an.params();
            let _ = writeln!(out, "name: {}", entry.name);
            let _ = writeln!(out, "title: {}", entry.title);
            let _ = writeln!(out, "array: {}", entry.array);
            let _ = writeln!(out, "diameter: {}", p.diameter());
            let _ = writeln!(out, "vertices: {}", p.v);
            let _ = writeln!(
                out,
                "valencies: {}",
                join(p.kappa.iter().map(u64::to_string), " ")
            );
            let _ = writeln!(out, "a: {}", join(p.a.iter().map(u64::to_string), " "));
            let _ = writeln!(
                out,
                "omega: {}",
                join(p.omega.iter().map(u64::to_string), " ")
            );
            let _ = writeln!(out, "antipodal: {}", p.antipodal);
            let _ = writeln!(
                out,
                "edge_list: {}",
                entry
                    .graph
                    .as_ref()
                    .map_or("none".to_string(), |g| format!("{} edges", g.edge_count()))
            );
            let _ = writeln!(out, "spectrum:");
            let d = p.diameter();
            for k in 0..an.spectrum.len() {
                let s = &an.spectrum;
                let _ = writeln!(
                    out,
                    "  k={k} x={} gamma={} m={} P_d={}",
                    g15(s.x[k]),
                    g15(s.gamma[k]),
                    g15(s.m[k]),
                    g15(s.pmat[(k, d)])
                );
            }
            if let Some(printed) = &entry.printed {
                let _ = writeln!(out, "printed_spectrum:");
                for atom in &printed.spectrum {
                    let _ = writeln!(out, "  x={} weight={}", atom.x_label, atom.weight_label);
                }
                for (i, sol) in printed.solutions.iter().enumerate() {
                    let _ = writeln!(out, "printed_solution {}:", i + 1);
                    for (m, c) in sol.couplings.iter().enumerate() {
                        let _ = writeln!(out, "  J_{m} = {c}");
                    }
                    if let Some(rel) = sol.time_relation {
                        let _ = writeln!(out, "  t0 = ({})*pi / J_{}", rel.pi_part, rel.index);
                    }
                }
                for e in &printed.errata {
                    let _ = writeln!(out, "registered_erratum: {} {}", e.kind, e.note);
                }
                let _ = writeln!(
                    out,
                    "comparison (theta={}, t0={}):",
                    angle(*theta, *pi),
                    g15(*t0)
                );
                if p.antipodal {
                    for line in compare_printed(&entry, p, &an.spectrum, *theta, *t0)? {
                        let _ = writeln!(out, "  {line}");
                    }
                }
            }
        }
    }
    Ok(())
}

fn solution_csv(solutions: &[CouplingSolution]) -> String {
    let d = solutions.first().map_or(0, |s| s.j.len());
    let mut out = String::from("rank,l,zero_count,max_strength,residual");
    for m in 0..d {
        let _ = write!(out, ",J_{m}");
    }
    out.push('\n');
    for (rank, s) in solutions.iter().enumerate() {
        let _ = write!(
            out,
            "{},{},{},{},{}",
            rank + 1,
            join(s.l.iter().map(i64::to_string), ";"),
            s.zero_count(),
            g15(s.max_strength()),
            g15(s.residual)
        );
        for j in &s.j {
            let _ = write!(out, ",{}", g15(*j));
        }
        out.push('\n');
    }
    out
}

fn solution_text(label: &str, phase: &Phase, solutions: &[CouplingSolution], pi: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "target: {label}");
    let _ = writeln!(out, "theta: {}", angle(phase.theta, pi));
    let _ = writeln!(out, "t0: {}", g15(phase.t0));
    let _ = writeln!(out, "solutions: {}", solutions.len());
    for (rank, s) in solutions.iter().enumerate() {
        let _ = writeln!(out, "solution {}:", rank + 1);
        let _ = writeln!(out, "  l: {}", join(s.l.iter().map(i64::to_string), " "));
        let _ = writeln!(out, "  signs: {}", join(s.s.iter().map(i8::to_string), " "));
        let _ = writeln!(out, "  zero_couplings: {}", s.zero_count());
        let _ = writeln!(out, "  max_strength: {}", g15(s.max_strength()));
        let _ = writeln!(out, "  residual: {}", g15(s.residual));
        for (m, j) in s.j.iter().enumerate() {
            let _ = writeln!(out, "  J_{m}: {}", angle(*j, pi));
        }
    }
    out
}

fn cmd_solve(out: &mut String, args: &SolveArgs) -> Result<(), CliError> {
    let target = resolve(&args.target)?;
    let an = Analysis::new(&target.array)?;
    let s = feasible_signs(out, &an)?;
    let solutions = search_branches(
        &an.spectrum,
        &s,
        args.phase.theta,
        args.phase.t0,
        args.branch_depth,
    )?;
    let text = match args.format {
        OutputFormat::Text => solution_text(&target.label, &args.phase, &solutions, args.pi),
        OutputFormat::Csv => solution_csv(&solutions),
    };
    match &args.out {
        Some(path) => {
            write_file(path, &text)?;
            let _ = writeln!(
                out,
                "wrote {} solutions to {}",
                solutions.len(),
                path.display()
            );
        }
        None => out.push_str(&text),
    }
    Ok(())
}

/// Provided couplings, or the top-ranked solution of the phase equations.
fn couplings_for(
    out: &mut String,
    an: &Analysis,
    given: &Option<String>,
    phase: &Phase,
    depth: u32,
) -> Result<Vec<f64>, CliError> {
    if let Some(text) = given {
        let j = parse_couplings(text)?;
        let expected = an.spectrum.len();
        if j.len() != expected {
            return Err(CliError::Usage(format!(
                "--J needs {expected} values, found {}",
                j.len()
            )));
        }
        return Ok(j);
    }
    let s = feasible_signs(out, an)?;
    let solutions = search_branches(&an.spectrum, &s, phase.theta, phase.t0, depth)?;
    solutions
        .into_iter()
        .next()
        .map(|sol| sol.j)
        .ok_or(CliError::Pst(PstError::Singular))
}

fn cmd_verify(out: &mut String, args: &VerifyArgs) -> Result<(), CliError> {
    let target = resolve(&args.target)?;
    let an = Analysis::new(&target.array)?;
    let j = couplings_for(out, &an, &args.j, &args.phase, args.branch_depth)?;
    let graph = target.entry.as_ref().and_then(|e| e.graph.clone());
    let dp = graph
        .as_ref()
        .map(|g| distance_partition(g, 0))
        .transpose()?;
    let inputs = EngineInputs {
        params: an.params(),
        spec: &an.spectrum,
        graph: graph.as_ref().zip(dp.as_ref()),
        oracle_limit: args.oracle_limit,
    };
    let report = fidelity_report(&inputs, &j, args.phase.theta, args.phase.t0)?;
    let _ = writeln!(out, "target: {}", target.label);
    let _ = writeln!(out, "theta: {}", angle(args.phase.theta, args.pi));
    let _ = writeln!(out, "t0: {}", g15(args.phase.t0));
    for (m, jm) in j.iter().enumerate() {
        let _ = writeln!(out, "J_{m}: {}", angle(*jm, args.pi));
    }
    for e in &report.engines {
        let _ = writeln!(
            out,
            "engine {}: |f_d|={} arg_f_d={} norm={}",
            e.engine,
            g15(e.f_d.norm()),
            g15(e.f_d.arg()),
            g15(e.norm_sqr)
        );
    }
    let _ = writeln!(out, "max_engine_deviation: {}", g15(report.max_deviation));
    let _ = writeln!(out, "fidelity: {}", g15(report.fidelity));
    let _ = writeln!(out, "arg_f_d: {}", g15(report.arg_f_d));
    let _ = writeln!(out, "energy_shift: {}", g15(report.constant));
    let _ = writeln!(
        out,
        "theta_recovered: {}",
        angle(report.theta_recovered, args.pi)
    );
    let _ = writeln!(
        out,
        "certified: {}",
        if report.certified { "yes" } else { "no" }
    );
    if let Some(entry) = &target.entry {
        if entry.printed.is_some() && an.params().antipodal {
            let _ = writeln!(out, "printed_comparison:");
            for line in compare_printed(
                entry,
                an.params(),
                &an.spectrum,
                args.phase.theta,
                args.phase.t0,
            )? {
                let _ = writeln!(out, "  {line}");
            }
        }
    }
    if report.certified {
        Ok(())
    } else {
        Err(CliError::NotCertified(g15(report.fidelity)))
    }
}

pub fn sweep_csv(samples: &[crate::dynamics::SweepSample]) -> String {
    let mut out = String::from("t,abs_f_d,arg_f_d,abs_f_0\n");
    for s in samples {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            g15(s.t),
            g15(s.f_d.norm()),
            g15(s.f_d.arg()),
            g15(s.f_0.norm())
        );
    }
    out
}

fn cmd_sweep(out: &mut String, args: &SweepArgs) -> Result<(), CliError> {
    let target = resolve(&args.target)?;
    let an = Analysis::new(&target.array)?;
    let j = couplings_for(out, &an, &args.j, &args.phase, args.branch_depth)?;
    let h = quotient_hamiltonian(an.params(), &j)?;
    let t_max = args.t_max.unwrap_or(2.0 * args.phase.t0);
    let csv = sweep_csv(&sweep(&h, &sample_times(t_max, args.samples)));
    match &args.out {
        Some(path) => {
            write_file(path, &csv)?;
            let _ = writeln!(out, "wrote {} samples to {}", args.samples, path.display());
        }
        None => out.push_str(&csv),
    }
    Ok(())
}

fn cmd_ingest(out: &mut String, path: &PathBuf) -> Result<(), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.clone(),
        message: e.to_string(),
    })?;
    let (g, warnings) = ingest_edge_list(&text)?;
    let _ = writeln!(out, "vertices: {}", g.n());
    let _ = writeln!(out, "edges: {}", g.edge_count());
    for w in warnings {
        let crate::graphs::GraphWarning::DuplicateEdge { line, u, v } = w;
        let _ = writeln!(out, "warning: line {line}: duplicate edge {u} {v}");
    }
    let array = match check_distance_regular(&g) {
        Ok(a) => a,
        Err(e) => {
            let _ = writeln!(out, "distance_regular: no");
            let _ = writeln!(out, "witness: {e}");
            return Err(e.into());
        }
    };
    let an = Analysis::new(&array)?;
    let p = an.params();
    let _ = writeln!(out, "distance_regular: yes");
    let _ = writeln!(out, "array: {array}");
    let _ = writeln!(
        out,
        "valencies: {}",
        join(p.kappa.iter().map(u64::to_string), " ")
    );
    let d = p.diameter();
    let _ = writeln!(
        out,
        "antipodal: {} (kappa_{d} = {})",
        p.antipodal, p.kappa[d]
    );
    if !p.antipodal {
        let _ = writeln!(
            out,
            "pst: declined, the last stratum has more than one vertex"
        );
        return Ok(());
    }
    match feasibility(&an.spectrum, p) {
        Ok(f) => {
            let _ = writeln!(out, "feasible: yes");
            let _ = writeln!(out, "signs: {}", join(f.s.iter().map(i8::to_string), " "));
        }
        Err(e) => {
            let _ = writeln!(out, "feasible: no");
            let _ = writeln!(out, "reason: {e}");
            modulus_report(out, &an);
        }
    }
    Ok(())
}

pub fn execute(cli: &Cli, out: &mut String) -> Result<(), CliError> {
    match &cli.command {
        Command::Catalog { action } => cmd_catalog(out, action),
        Command::Solve(a) => cmd_solve(out, a),
        Command::Verify(a) => cmd_verify(out, a),
        Command::Sweep(a) => cmd_sweep(out, a),
        Command::Ingest { edges } => cmd_ingest(out, edges),
    }
}

/// Parses arguments and runs; never exits the process.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let mut stdout = String::new();
    match execute(&cli, &mut stdout) {
        Ok(()) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout,
            stderr: format!("error: {e}\n"),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angles() {
        assert_eq!(parse_angle("0.5").unwrap(), 0.5);
        assert_eq!(parse_angle("\u{2212}0.5").unwrap(), -0.5);
        assert_eq!(parse_angle("-pi/4").unwrap(), -PI / 4.0);
        assert_eq!(parse_angle("3*pi/4").unwrap(), 3.0 * PI / 4.0);
        assert_eq!(parse_angle("pi").unwrap(), PI);
        assert_eq!(parse_angle("0.5pi").unwrap(), PI / 2.0);
        assert!(parse_angle("pi/x").is_err());
        assert!(parse_angle("abc").is_err());
        let j = parse_couplings("\u{2212}0.5, 0, 1.25").unwrap();
        assert_eq!(j, vec![-0.5, 0.0, 1.25]);
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run(["pstnet", "solve"]).code, 1);
        assert_eq!(
            run(["pstnet", "solve", "--name", "cube:3", "--array", "2,1;1,2"]).code,
            1
        );
        assert_eq!(run(["pstnet", "frobnicate"]).code, 1);
        assert_eq!(run(["pstnet", "--help"]).code, 0);
        let r = run(["pstnet", "catalog", "show", "nosuch"]);
        assert_eq!(r.code, 1);
        assert!(r.stderr.contains("unknown catalog entry"));
    }

    #[test]
    fn solve_c4() {
        let r = run(["pstnet", "solve", "--array", "2,1;1,2", "--pi"]);
        assert_eq!(r.code, 0, "{}", r.stderr);
        assert!(r.stdout.contains("J_2: pi/4"));
        assert!(r.stdout.contains("J_1: pi/4"));
        let r = run(["pstnet", "solve", "--array", "2,1;1,1"]);
        assert_eq!(r.code, 2);
        assert!(r.stdout.contains("feasible: no"));
    }

    #[test]
    fn verify_given_couplings() {
        let r = run([
            "pstnet",
            "verify",
            "--name",
            "cycle:2",
            "--J",
            "\u{2212}0.785398163,0,0.785398163",
            "--t0",
            "1",
        ]);
        assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
        assert!(r.stdout.contains("engine spin-oracle"));
        let r = run([
            "pstnet",
            "verify",
            "--name",
            "cycle:2",
            "--J",
            "0.3,0.2,0.1",
        ]);
        assert_eq!(r.code, 2);
        let r = run(["pstnet", "verify", "--name", "cycle:2", "--J", "0.3,0.2"]);
        assert_eq!(r.code, 1);
    }
}
