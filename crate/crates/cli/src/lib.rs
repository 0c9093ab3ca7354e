//! Command implementations behind the `embedlimits` binary.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use thiserror::Error;

use embedlimits_core::analytics::{
    beta_bound_check, clt_series, crosscap_euler_gap, discrete_limit, euler_from_parts, AnalyticsError, EmbeddingDistribution,
};
use embedlimits_core::chain::{oracle_verify, ChainError};
use embedlimits_core::document::{
    ConvergenceReport, DocumentError, EnumerationReport, FamilyDocument, GapReport, GraphDocument, PolynomialEntry, ReportDocument,
    VerifyReport,
};
use embedlimits_core::enumerator::{census, genus_polynomial, partial_polynomials, EnumerationError, SurfaceKind, DEFAULT_BUDGET};
use embedlimits_core::poly::{IntPolynomial, Rational};
use embedlimits_core::recurrence::Family;
use embedlimits_core::spectral::{analyze, LimitCase, LimitReport, SpectralError, DEFAULT_TOLERANCE};

pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const FAILURE: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const INCONCLUSIVE: i32 = 3;
    pub const MISMATCH: i32 = 4;
    pub const BUDGET: i32 = 5;
    pub const NOT_NORMAL: i32 = 6;
}

pub const BUDGET_ENV: &str = "EMBEDLIMITS_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "embedlimits", version, about = "Exact embedding distributions of linear graph families and their limits")]
pub struct Cli {
    /// Enumeration ceiling (embeddings per census).
    #[arg(long, global = true, env = BUDGET_ENV, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Write the report here (atomically) instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// D, e, v, primitivity and limit case of a family.
    Analyze {
        family: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
        /// Emit the JSON report instead of the summary.
        #[arg(long)]
        json: bool,
    },
    /// Exact P_n(x), or its normalized distribution.
    Evolve {
        family: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Emit::Poly)]
        emit: Emit,
        /// Emit every index from this one up to n.
        #[arg(long)]
        from: Option<usize>,
    },
    /// Kolmogorov distance and moment gaps against N(e·n, v·n), as CSV.
    CltCheck {
        family: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
        /// Also write the structured report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Empirical limit law for constant-coefficient families.
    DiscreteLimit {
        family: PathBuf,
        #[arg(long, default_value_t = 20)]
        probe: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Brute-force embedding census of a small graph.
    Enumerate {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Genus)]
        kind: Kind,
        /// Surface used for `--kind partials`.
        #[arg(long, value_enum, default_value_t = Surface::Genus)]
        surface: Surface,
    },
    /// Distance between crosscap-number and Euler-genus CDFs, for a graph or
    /// for member n of a genus/Euler family pair.
    CrosscapVsEuler {
        graph: Option<PathBuf>,
        #[arg(long, requires_all = ["euler_family", "n"], conflicts_with = "graph")]
        genus_family: Option<PathBuf>,
        #[arg(long, requires = "genus_family")]
        euler_family: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        /// Cycle rank of the family member, for the 2^β check.
        #[arg(long)]
        beta: Option<usize>,
    },
    /// Enumerates G_1..G_N from the family's chain rule and compares with P_n.
    OracleVerify {
        family: PathBuf,
        #[arg(long)]
        n_max: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Emit {
    Poly,
    Dist,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Genus,
    Euler,
    Crosscap,
    Partials,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Surface {
    Genus,
    Euler,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: DocumentError },
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Budget(EnumerationError),
    #[error("{0}")]
    Mismatch(ChainError),
    #[error("refusing: limit case is {0:?}, not a normal limit")]
    NotNormal(LimitCase),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Analytics(#[from] AnalyticsError),
    #[error("writing output: {0}")]
    Write(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Read { .. } | CliError::Parse { .. } | CliError::Invalid(_) => exit::PARSE,
            CliError::Budget(_) => exit::BUDGET,
            CliError::Mismatch(_) => exit::MISMATCH,
            CliError::NotNormal(_) => exit::NOT_NORMAL,
            _ => exit::FAILURE,
        }
    }
}

impl From<EnumerationError> for CliError {
    fn from(e: EnumerationError) -> Self {
        match e {
            EnumerationError::BudgetExceeded { .. } => CliError::Budget(e),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<ChainError> for CliError {
    fn from(e: ChainError) -> Self {
        match e {
            ChainError::Mismatch { .. } => CliError::Mismatch(e),
            ChainError::Graph(g) => g.into(),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

/// What a command produced: text for standard output and the exit status.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: exit::SUCCESS }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_path_buf(), source })
}

pub fn load_family_document(path: &Path) -> Result<FamilyDocument, CliError> {
    FamilyDocument::parse(&read(path)?).map_err(|source| CliError::Parse { path: path.to_path_buf(), source })
}

pub fn load_family(path: &Path, budget: u64) -> Result<(FamilyDocument, Family), CliError> {
    let doc = load_family_document(path)?;
    let family = doc.family(budget).map_err(|source| match source {
        DocumentError::Seed(e) => e.into(),
        source => CliError::Parse { path: path.to_path_buf(), source },
    })?;
    Ok((doc, family))
}

pub fn load_graph(path: &Path) -> Result<GraphDocument, CliError> {
    GraphDocument::parse(&read(path)?).map_err(|source| CliError::Parse { path: path.to_path_buf(), source })
}

/// `value` to 12 significant digits.
pub fn decimal(value: &Rational) -> String {
    let v = value.to_f64().unwrap_or(f64::NAN);
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let magnitude = v.abs().log10().floor() as i32;
    if !(-5..12).contains(&magnitude) {
        return format!("{v:.11e}");
    }
    let places = (11 - magnitude).max(0) as usize;
    let text = format!("{v:.places$}");
    if text.contains('.') {
        text.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        text
    }
}

fn exact_and_decimal(value: &Rational) -> String {
    format!("{value} ({})", decimal(value))
}

pub fn summary(r: &LimitReport) -> String {
    let mut out = String::new();
    let line = |out: &mut String, key: &str, value: String| out.push_str(&format!("{key:<14}{value}\n"));
    line(&mut out, "family", r.name.clone());
    line(&mut out, "kind", format!("{:?}", r.kind));
    line(&mut out, "F(x, λ)", r.char_poly.clone());
    line(&mut out, "D", exact_and_decimal(&r.d));
    line(&mut out, "primitivity", format!("{:?}", r.primitivity));
    line(&mut out, "simple, dom.", r.dominant_simple.to_string());
    if let Some(m) = r.margin {
        line(&mut out, "margin", format!("{m:.12}"));
    }
    for (key, value) in [("λ'(1)", &r.lambda_prime), ("λ''(1)", &r.lambda_double_prime), ("e", &r.e), ("v", &r.v)] {
        if let Some(value) = value {
            line(&mut out, key, exact_and_decimal(value));
        }
    }
    line(&mut out, "case", format!("{:?}", r.case));
    if r.case == LimitCase::DiscreteOrOnePoint && r.constant_coefficients {
        line(&mut out, "subcase", "constant coefficients: discrete limit".to_string());
    }
    for d in &r.diagnostics {
        line(&mut out, "note", d.clone());
    }
    out
}

fn case_code(case: LimitCase) -> i32 {
    match case {
        LimitCase::Inconclusive | LimitCase::DegenerateImpossible => exit::INCONCLUSIVE,
        _ => exit::SUCCESS,
    }
}

pub fn cmd_analyze(family: &Path, tol: f64, json: bool, budget: u64) -> Result<Outcome, CliError> {
    let (_, family) = load_family(family, budget)?;
    let report = analyze(&family, tol)?;
    let code = case_code(report.case);
    let text = if json { ReportDocument::Analysis(report).to_json() } else { summary(&report) };
    Ok(Outcome { text, code })
}

pub fn cmd_evolve(family: &Path, n: usize, emit: Emit, from: Option<usize>, budget: u64) -> Result<Outcome, CliError> {
    let (_, family) = load_family(family, budget)?;
    let from = from.unwrap_or(n);
    if n == 0 || from == 0 || from > n {
        return Err(CliError::Invalid(format!("need 1 <= from <= n, got from = {from}, n = {n}")));
    }
    let polys = family.polynomials(n);
    let entries = (from..=n)
        .map(|i| {
            let polynomial = polys[i - 1].clone();
            let (distribution, moments) = if emit == Emit::Dist {
                let d = EmbeddingDistribution::from_polynomial(&polynomial, family.embedding_kind(), i)?;
                (Some(d.probabilities()), Some(d.moments()))
            } else {
                (None, None)
            };
            Ok(PolynomialEntry { n: i, total: polynomial.eval_at_one(), polynomial, distribution, moments })
        })
        .collect::<Result<Vec<_>, AnalyticsError>>()?;
    let report = ReportDocument::Evolution { name: family.name().to_string(), kind: family.embedding_kind(), entries };
    Ok(Outcome::ok(report.to_json()))
}

pub const CSV_HEADER: &str = "n,ks_distance,mean_gap,var_gap";

pub fn convergence(family: &Family, n_list: &[usize]) -> Result<ConvergenceReport, CliError> {
    let limit = analyze(family, DEFAULT_TOLERANCE)?;
    if limit.case != LimitCase::NormalLimit {
        return Err(CliError::NotNormal(limit.case));
    }
    let (e, v) = (limit.e.expect("normal limit has e"), limit.v.expect("normal limit has v"));
    let rows = clt_series(family, &e, &v, n_list)?;
    Ok(ConvergenceReport { name: family.name().to_string(), e, v, rows })
}

pub fn convergence_csv(report: &ConvergenceReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in &report.rows {
        w.serialize(row).expect("rows serialize");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8 csv")
}

pub fn cmd_clt_check(family: &Path, n_list: &[usize], report_path: Option<&Path>, budget: u64) -> Result<Outcome, CliError> {
    let (_, family) = load_family(family, budget)?;
    let report = convergence(&family, n_list)?;
    if let Some(path) = report_path {
        write_atomic(path, &ReportDocument::Convergence(report.clone()).to_json())?;
    }
    Ok(Outcome::ok(convergence_csv(&report)))
}

pub fn cmd_discrete_limit(family: &Path, probe: usize, tol: f64, budget: u64) -> Result<Outcome, CliError> {
    let (_, family) = load_family(family, budget)?;
    let limit = discrete_limit(&family, probe, tol)?;
    Ok(Outcome::ok(ReportDocument::DiscreteLimit { name: family.name().to_string(), limit }.to_json()))
}

pub fn enumeration(doc: &GraphDocument, kind: Kind, surface: Surface, budget: u64) -> Result<EnumerationReport, CliError> {
    let graph = doc.graph()?;
    let mut report = EnumerationReport {
        vertex_count: graph.vertex_count(),
        edge_count: graph.edge_count(),
        cycle_rank: graph.cycle_rank(),
        embedding_count: graph.rotation_count(),
        genus: None,
        euler: None,
        crosscap: None,
        partition: None,
        partials: None,
    };
    match kind {
        Kind::Genus => report.genus = Some(genus_polynomial(&graph, budget)?),
        Kind::Euler | Kind::Crosscap => {
            let c = census(&graph, budget)?;
            report.embedding_count = graph.general_rotation_count();
            report.genus = Some(c.genus);
            report.euler = Some(c.euler);
            report.crosscap = Some(c.crosscap);
        }
        Kind::Partials => {
            let partition = doc.partition();
            let surface = match surface {
                Surface::Genus => SurfaceKind::Genus,
                Surface::Euler => {
                    report.embedding_count = graph.general_rotation_count();
                    SurfaceKind::Euler
                }
            };
            report.partials = Some(partial_polynomials(&graph, &partition, surface, budget)?);
            report.partition = Some(partition);
        }
    }
    Ok(report)
}

pub fn cmd_enumerate(graph: &Path, kind: Kind, surface: Surface, budget: u64) -> Result<Outcome, CliError> {
    let doc = load_graph(graph)?;
    Ok(Outcome::ok(ReportDocument::Enumeration(enumeration(&doc, kind, surface, budget)?).to_json()))
}

pub fn gap_report(genus: IntPolynomial, euler: IntPolynomial, cycle_rank: Option<usize>) -> Result<GapReport, CliError> {
    let crosscap = &euler - &genus.compose_square();
    if crosscap.first_negative().is_some() {
        return Err(CliError::Invalid("E(x) − Γ(x²) has a negative coefficient".into()));
    }
    let gap = crosscap_euler_gap(&genus, &crosscap)?;
    debug_assert_eq!(euler_from_parts(&genus, &crosscap), euler);
    let beta_check = match cycle_rank {
        Some(beta) => beta_bound_check(&genus.eval_at_one(), &euler.eval_at_one(), beta),
        None => true,
    };
    let gap_within_bound = gap.gap <= gap.bound;
    Ok(GapReport { genus, crosscap, euler, gap, cycle_rank: cycle_rank.unwrap_or(0), beta_check, gap_within_bound })
}

pub fn cmd_crosscap_vs_euler(
    graph: Option<&Path>,
    genus_family: Option<&Path>,
    euler_family: Option<&Path>,
    n: Option<usize>,
    beta: Option<usize>,
    budget: u64,
) -> Result<Outcome, CliError> {
    let report = match (graph, genus_family, euler_family, n) {
        (Some(path), None, None, _) => {
            let g = load_graph(path)?.graph()?;
            let c = census(&g, budget)?;
            gap_report(c.genus, c.euler, Some(g.cycle_rank()))?
        }
        (None, Some(gf), Some(ef), Some(n)) => {
            let (_, genus) = load_family(gf, budget)?;
            let (_, euler) = load_family(ef, budget)?;
            let to_err = |e: embedlimits_core::recurrence::FamilyError| CliError::Invalid(e.to_string());
            gap_report(genus.polynomial(n).map_err(to_err)?, euler.polynomial(n).map_err(to_err)?, beta)?
        }
        _ => return Err(CliError::Invalid("give a graph file, or --genus-family, --euler-family and --n".into())),
    };
    let code = if report.beta_check && report.gap_within_bound { exit::SUCCESS } else { exit::MISMATCH };
    Ok(Outcome { text: ReportDocument::CrosscapGap(report).to_json(), code })
}

pub fn cmd_oracle_verify(family: &Path, n_max: usize, budget: u64) -> Result<Outcome, CliError> {
    let (doc, family) = load_family(family, budget)?;
    let chain = doc.chain().map_err(|e| CliError::Invalid(e.to_string()))?;
    let rows = oracle_verify(&family, chain, n_max, budget)?;
    Ok(Outcome::ok(ReportDocument::OracleVerify(VerifyReport { name: family.name().to_string(), n_max, rows }).to_json()))
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let budget = cli.budget;
    match &cli.command {
        Command::Analyze { family, tol, json } => cmd_analyze(family, *tol, *json, budget),
        Command::Evolve { family, n, emit, from } => cmd_evolve(family, *n, *emit, *from, budget),
        Command::CltCheck { family, n_list, report } => cmd_clt_check(family, n_list, report.as_deref(), budget),
        Command::DiscreteLimit { family, probe, tol } => cmd_discrete_limit(family, *probe, *tol, budget),
        Command::Enumerate { graph, kind, surface } => cmd_enumerate(graph, *kind, *surface, budget),
        Command::CrosscapVsEuler { graph, genus_family, euler_family, n, beta } => {
            cmd_crosscap_vs_euler(graph.as_deref(), genus_family.as_deref(), euler_family.as_deref(), *n, *beta, budget)
        }
        Command::OracleVerify { family, n_max } => cmd_oracle_verify(family, *n_max, budget),
    }
}

pub fn write_atomic(path: &Path, text: &str) -> Result<(), CliError> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::Write(e.to_string()))?;
    tmp.write_all(text.as_bytes()).map_err(|e| CliError::Write(e.to_string()))?;
    tmp.persist(path).map_err(|e| CliError::Write(e.to_string()))?;
    Ok(())
}

/// Runs the parsed command line, emitting output; returns the exit status.
pub fn main_with(cli: Cli) -> i32 {
    match run(&cli) {
        Ok(outcome) => {
            let mut text = outcome.text;
            if !text.ends_with('\n') {
                text.push('\n');
            }
            let written = match &cli.output {
                Some(path) => write_atomic(path, &text),
                None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::Write(e.to_string())),
            };
            match written {
                Ok(()) => outcome.code,
                Err(e) => {
                    eprintln!("error: {e}");
                    e.exit_code()
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use embedlimits_core::poly::rational;
    use num_traits::Zero;

    #[test]
    fn decimal_digits() {
        assert_eq!(decimal(&rational(6, 7)), "0.857142857143");
        assert_eq!(decimal(&rational(16, 1)), "16");
        assert_eq!(decimal(&rational(4819233780, 28011371653)), "0.172045619176");
        assert_eq!(decimal(&rational(-1, 3)), "-0.333333333333");
        assert_eq!(decimal(&Rational::zero()), "0");
    }

    #[test]
    fn csv_header() {
        let report = ConvergenceReport { name: "x".into(), e: rational(1, 2), v: rational(1, 2), rows: vec![] };
        assert_eq!(convergence_csv(&report), "");
        let report = ConvergenceReport {
            rows: vec![embedlimits_core::analytics::ConvergenceRow { n: 3, ks_distance: 0.25, mean_gap: 1.0, var_gap: 0.5 }],
            ..report
        };
        assert_eq!(convergence_csv(&report).lines().next(), Some(CSV_HEADER));
    }
}
