use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use serde::Serialize;
use wedderkit::shoda::ShodaError;
use wedderkit::verify::VerifyReport;
use wedderkit::wedderburn::{
    CountReport, DecompositionReport, GroupAnalysis, MetacyclicVerdict, MinimalityReport, RankReport, WedderburnError,
};
use wedderkit::{AbelianField, GroupSpec, DEFAULT_MAX_ORDER};

/// Wedderburn decompositions of group algebras over abelian number fields.
#[derive(Debug, Parser)]
#[command(name = "wedderkit", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Group spec: a path to a JSON file or inline JSON.
    #[arg(long)]
    group: Option<String>,
    /// Field spec: Q, Q(zeta_m) or Q(zeta_m)^{t1,t2,...}.
    #[arg(long)]
    field: Option<String>,
    /// Size of the finite coefficient field for ffcount.
    #[arg(long)]
    q: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long, env = "WEDDERKIT_MAX_ORDER", default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Command {
    Decompose,
    Count,
    Minimal,
    Rank,
    Ffcount,
    Verify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Failure with its exit status: 1 for bad input, 2 when strong Shoda pairs
/// do not cover the group algebra.
enum Failure {
    Input(String),
    Incomplete { found: Vec<String>, residual: String },
}

impl From<WedderburnError> for Failure {
    fn from(e: WedderburnError) -> Self {
        match e {
            WedderburnError::Shoda(ShodaError::NotStronglyMonomialOrIncomplete { found, residual }) => {
                Failure::Incomplete { found, residual }
            }
            other => Failure::Input(other.to_string()),
        }
    }
}

#[derive(Serialize)]
struct MinimalOutput {
    #[serde(flatten)]
    report: MinimalityReport,
    metacyclic: Option<MetacyclicVerdict>,
}

#[derive(Serialize)]
struct FfOutput {
    q: u64,
    count: usize,
    oracle: usize,
    rational_count: usize,
    minimal: bool,
    abelian_criterion: Option<bool>,
    terms: Vec<wedderkit::wedderburn::PairTerm>,
}

#[derive(Serialize)]
struct Diagnostic {
    error: &'static str,
    found: Vec<String>,
    residual: String,
}

enum Report {
    Decompose(DecompositionReport),
    Count(CountReport),
    Minimal(MinimalOutput),
    Rank(RankReport),
    Ffcount(FfOutput),
    Verify(VerifyReport),
    Incomplete(Diagnostic),
}

fn read_group(source: &str) -> Result<GroupSpec, Failure> {
    let text = if source.trim_start().starts_with('{') {
        source.to_string()
    } else {
        std::fs::read_to_string(source).map_err(|e| Failure::Input(format!("cannot read {source}: {e}")))?
    };
    text.parse()
        .map_err(|e: wedderkit::group::GroupError| Failure::Input(e.to_string()))
}

fn analysis(cli: &Cli) -> Result<GroupAnalysis, Failure> {
    let source = cli
        .group
        .as_deref()
        .ok_or_else(|| Failure::Input("--group is required".into()))?;
    let spec = read_group(source)?;
    let group = spec.build(cli.max_order).map_err(|e| Failure::Input(e.to_string()))?;
    Ok(GroupAnalysis::new(group, cli.max_order)?)
}

fn field(cli: &Cli) -> Result<AbelianField, Failure> {
    let spec = cli
        .field
        .as_deref()
        .ok_or_else(|| Failure::Input("--field is required".into()))?;
    spec.parse()
        .map_err(|e: wedderkit::cyclo::CycloError| Failure::Input(format!("field {spec}: {e}")))
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    match cli.command {
        Command::Verify => Ok(Report::Verify(wedderkit::verify::run(cli.max_order))),
        Command::Ffcount => {
            let q = cli
                .q
                .ok_or_else(|| Failure::Input("--q is required for ffcount".into()))?;
            let a = analysis(cli)?;
            let count = a.finite_field_component_count(q)?;
            let minimality = a.finite_field_minimality(q)?;
            Ok(Report::Ffcount(FfOutput {
                q,
                count: count.count,
                oracle: count.oracle,
                rational_count: count.rational_count,
                minimal: minimality.minimal,
                abelian_criterion: minimality.abelian_criterion,
                terms: count.terms,
            }))
        }
        command => {
            let f = field(cli)?;
            let a = analysis(cli)?;
            Ok(match command {
                Command::Decompose => Report::Decompose(a.decomposition(&f)?),
                Command::Count => Report::Count(a.component_count(&f)?),
                Command::Rank => Report::Rank(a.central_unit_rank(&f)?),
                Command::Minimal => {
                    let report = a.minimality_report(&f)?;
                    let metacyclic = match read_group(cli.group.as_deref().unwrap_or_default())? {
                        GroupSpec::Metacyclic { m, n, t, r } => {
                            match GroupAnalysis::metacyclic_minimality(m, n, t, r, &f, cli.max_order) {
                                Ok(v) => Some(v),
                                Err(WedderburnError::HypothesesNotMet { .. }) => None,
                                Err(e) => return Err(e.into()),
                            }
                        }
                        _ => None,
                    };
                    Report::Minimal(MinimalOutput { report, metacyclic })
                }
                Command::Ffcount | Command::Verify => unreachable!("handled above"),
            })
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn text(report: &Report) -> String {
    let mut s = String::new();
    match report {
        Report::Decompose(r) => {
            let _ = writeln!(s, "field: {}", r.field);
            let _ = writeln!(
                s,
                "group: order {}, exponent {}, id {}",
                r.group.order, r.group.exponent, r.group.id
            );
            let _ = writeln!(s, "components: {} (oracle {})", r.count, r.oracle);
            let _ = writeln!(s, "minimal: {}", yes(r.minimal));
            let _ = writeln!(s, "rank: {}", r.rank);
            for c in &r.components {
                let _ = writeln!(
                    s,
                    "  {} class {}: degree {}, k {}, [E:H] {}, [F(zeta_k):F] {}, dimension {}",
                    c.pair,
                    c.class,
                    c.degree,
                    c.k,
                    c.grading_order,
                    c.field_degree,
                    c.dimension()
                );
                let _ = writeln!(
                    s,
                    "    action {:?}, twisting {:?}",
                    c.crossed_product.action, c.crossed_product.twisting
                );
                let _ = writeln!(s, "    e = {}", c.idempotent);
            }
        }
        Report::Count(r) => {
            let _ = writeln!(s, "field: {}", r.field);
            let _ = writeln!(s, "count: {}", r.count);
            let _ = writeln!(s, "oracle: {}", r.oracle);
            let _ = writeln!(s, "rational count: {}", r.rational_count);
            for t in &r.terms {
                let _ = writeln!(
                    s,
                    "  {}: k {}, |I_k| {}, |E| {}, |N| {}, components {}",
                    t.pair, t.k, t.image_order, t.stabilizer_order, t.normalizer_order, t.count
                );
            }
        }
        Report::Minimal(m) => {
            let r = &m.report;
            let _ = writeln!(s, "field: {}", r.field);
            let _ = writeln!(s, "minimal: {}", yes(r.minimal));
            let _ = writeln!(s, "count: {}", r.count);
            let _ = writeln!(s, "rational count: {}", r.rational_count);
            let _ = writeln!(s, "sufficient condition: {}", yes(r.sufficient_condition));
            if let Some(c) = r.abelian_criterion {
                let _ = writeln!(s, "abelian criterion: {}", yes(c));
            }
            for p in &r.pairs {
                let _ = writeln!(
                    s,
                    "  {}: k {}, single component {}, generated {}, index identity {}, trivial intersection {}",
                    p.pair,
                    p.k,
                    yes(p.single_component),
                    yes(p.generated),
                    yes(p.index_identity),
                    p.trivial_intersection.map_or("-", yes)
                );
            }
            if let Some(v) = &m.metacyclic {
                for c in &v.corollaries {
                    let _ = writeln!(s, "{} criterion: minimal {}", c.name, yes(c.minimal));
                    for (name, holds) in &c.conditions {
                        let _ = writeln!(s, "  {name}: {}", yes(*holds));
                    }
                }
            }
        }
        Report::Rank(r) => {
            let _ = writeln!(s, "field: {}", r.field);
            let _ = writeln!(s, "rank: {}", r.rank);
            let _ = writeln!(s, "r: {}, s: {}", r.r, r.s);
            let _ = writeln!(
                s,
                "real classes: {}, classes: {}, components: {}",
                r.r_real, r.r_complex, r.r_field
            );
            let _ = writeln!(s, "r r_R + s r_C - r_F: {}", r.cross_check);
            let _ = writeln!(s, "rank over Z: {}", r.integral_rank);
            for t in &r.terms {
                let _ = writeln!(s, "  {}: k {}, k_HK {}, term {}", t.pair, t.k, t.k_hk, t.term);
            }
        }
        Report::Ffcount(r) => {
            let _ = writeln!(s, "q: {}", r.q);
            let _ = writeln!(s, "count: {}", r.count);
            let _ = writeln!(s, "oracle: {}", r.oracle);
            let _ = writeln!(s, "rational count: {}", r.rational_count);
            let _ = writeln!(s, "minimal: {}", yes(r.minimal));
            for t in &r.terms {
                let _ = writeln!(
                    s,
                    "  {}: k {}, o_k(q) {}, components {}",
                    t.pair, t.k, t.image_order, t.count
                );
            }
        }
        Report::Verify(r) => {
            for row in &r.rows {
                let _ = writeln!(
                    s,
                    "{}  {:<12} {:<8} {:<14} {}",
                    if row.passed { "PASS" } else { "FAIL" },
                    row.check,
                    row.group,
                    row.field,
                    row.detail
                );
            }
            let _ = writeln!(s, "passed: {}, failed: {}", r.passed, r.failed);
        }
        Report::Incomplete(d) => {
            let _ = writeln!(s, "error: {}", d.error);
            let _ = writeln!(s, "found pairs: {}", d.found.join(" "));
            let _ = writeln!(s, "residual 1 - sum e: {}", d.residual);
        }
    }
    s
}

fn render(report: &Report, format: Format) -> String {
    if format == Format::Text {
        return text(report);
    }
    match report {
        Report::Decompose(r) => json(r),
        Report::Count(r) => json(r),
        Report::Minimal(r) => json(r),
        Report::Rank(r) => json(r),
        Report::Ffcount(r) => json(r),
        Report::Verify(r) => json(r),
        Report::Incomplete(r) => json(r),
    }
}

fn emit(cli: &Cli, report: &Report) -> Result<(), String> {
    let out = render(report, cli.format);
    match &cli.out {
        Some(path) => std::fs::write(path, out).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{out}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (report, code) = match run(&cli) {
        Ok(Report::Verify(r)) => {
            let code = if r.failed == 0 { 0 } else { 1 };
            (Report::Verify(r), code)
        }
        Ok(r) => (r, 0),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
        Err(Failure::Incomplete { found, residual }) => {
            eprintln!("error: strong Shoda pairs do not account for all of QG; residual 1 - sum e = {residual}");
            let d = Diagnostic {
                error: "not strongly monomial or incomplete",
                found,
                residual,
            };
            (Report::Incomplete(d), 2)
        }
    };
    if let Err(msg) = emit(&cli, &report) {
        eprintln!("error: {msg}");
        return ExitCode::from(1);
    }
    ExitCode::from(code)
}
