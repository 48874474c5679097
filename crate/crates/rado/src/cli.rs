//! Argument parsing and command dispatch.
//!
//! Every command writes one JSON document (or a CSV table) to stdout. Counts
//! standing alone are bare decimals; counts inside objects are decimal strings.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use rado_core::abgroup::{
    count_subgroups_iso, enumerate_all_subgroups, enumerate_subgroups, gaussian_binomial, DEFAULT_ORACLE_BOUND,
};
use rado_core::columns::{check_columns_condition, reduce_matrix, DEFAULT_COLUMN_BOUND};
use rado_core::count::{count_monochromatic, count_solutions, DEFAULT_BRUTE_BOUND};
use rado_core::extremal::{
    density_counterexample, min_solutions_dense_subsets, order4_fixture, SearchBudget, SearchMode, SearchReport,
    DEFAULT_BUDGET,
};
use rado_core::ramsey::{
    classify_translate, enumerate_one_translates, f_set, is_special, skeleton_solution, Translate, TranslateKind,
};
use rado_core::{Backend, Coloring, ElementSet, GroupSpec, Ring};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::format::{
    int_value, matrix_json, parse_basis, parse_certificate, parse_coloring, parse_epsilon, parse_group, parse_matrix,
    parse_ring, parse_set, parse_sets, parse_translate, parse_translate_colors, rational_json, CertificateJson,
    TranslateJson,
};
use crate::runner::search_colorings;

#[derive(Debug, Parser)]
#[command(
    name = "rado",
    version,
    about = "Columns conditions, solution counts and colorings over finite abelian groups"
)]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Cap on brute-force work: iterations for counting, group order for
    /// enumeration. Defaults to 100000000 and 512 respectively.
    #[arg(long, global = true)]
    pub oracle_bound: Option<u128>,
    /// Candidate budget for searches.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
    /// Largest column count for certificate search.
    #[arg(long, global = true, default_value_t = DEFAULT_COLUMN_BOUND)]
    pub column_bound: usize,
    /// Worker threads for searches; results do not depend on this.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Auto,
    Brute,
    Fourier,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Auto => Backend::Auto,
            BackendArg::Brute => Backend::BruteForce,
            BackendArg::Fourier => Backend::Fourier,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exhaustive,
    Randomized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SubgroupMethod {
    Formula,
    Enumerate,
}

#[derive(Debug, Args)]
pub struct MatrixGroup {
    /// JSON rows, or `@file`.
    #[arg(long)]
    pub matrix: String,
    /// `Z4xZ2` or `[4,2]`.
    #[arg(long)]
    pub group: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Search for a columns-condition certificate; prints `null` when none exists.
    CheckColumns {
        #[arg(long)]
        matrix: String,
        /// `Z`, `Q` or `Zn`.
        #[arg(long, default_value = "Z")]
        ring: String,
    },
    /// Replace a matrix with an n-columns certificate by one of unit k-determinantal.
    Reduce {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        n: u64,
    },
    /// Count solutions of `A x = 0` with `x_j` in `X_j`.
    Count {
        #[command(flatten)]
        input: MatrixGroup,
        /// JSON list of sets, one per column.
        #[arg(long, conflicts_with = "set")]
        sets: Option<String>,
        /// One set used for every column.
        #[arg(long)]
        set: Option<String>,
        #[arg(long, value_enum, default_value_t = BackendArg::Auto)]
        backend: BackendArg,
    },
    /// Count monochromatic solutions under a coloring of the nonzero elements.
    CountMono {
        #[command(flatten)]
        input: MatrixGroup,
        /// `by-order`, `random`, or a JSON color list for ranks 1.. (or `@file`).
        #[arg(long, default_value = "by-order")]
        coloring: String,
        #[arg(long)]
        colors: Option<u32>,
        #[arg(long, value_enum, default_value_t = BackendArg::Auto)]
        backend: BackendArg,
    },
    /// Count or list subgroups isomorphic to `Z_d^copies` (all subgroups without `--d`).
    Subgroups {
        #[arg(long)]
        group: String,
        #[arg(long, requires = "copies")]
        d: Option<u64>,
        #[arg(long, requires = "d")]
        copies: Option<usize>,
        #[arg(long, value_enum, default_value_t = SubgroupMethod::Formula)]
        method: SubgroupMethod,
        /// Print the subgroups as sorted rank lists.
        #[arg(long)]
        list: bool,
    },
    /// Gaussian binomial coefficient `(N choose M)_q`.
    Gaussian {
        #[arg(long = "N")]
        n: u32,
        #[arg(long = "M")]
        m: u32,
        #[arg(long)]
        q: u64,
    },
    /// Place a solution on the skeleton of an echelon basis.
    Skeleton {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        n: u64,
        /// JSON list of basis vectors of `Z_n^dim`.
        #[arg(long)]
        basis: String,
        #[arg(long)]
        dim: Option<usize>,
        /// Accept equal leading positions.
        #[arg(long)]
        non_strict: bool,
        /// Certificate JSON or `@file`; searched for when absent.
        #[arg(long)]
        certificate: Option<String>,
    },
    /// Classify 1-translates of an outer translate by their projection.
    Classify {
        #[arg(long)]
        group: String,
        /// `{base, generators}`; every 1-translate of the outer one when absent.
        #[arg(long)]
        translate: Option<String>,
        /// `{base, generators}`; the whole group when absent.
        #[arg(long)]
        outer: Option<String>,
        /// Number of leading coordinates kept by the projection.
        #[arg(long)]
        u: usize,
        /// JSON list of `{base, generators, color}`: also decide whether the outer translate is special.
        #[arg(long)]
        translate_colors: Option<String>,
    },
    /// Minimize monochromatic solutions over r-colorings.
    SearchColorings {
        #[arg(long)]
        matrix: String,
        /// Repeat for a sweep.
        #[arg(long, required_unless_present = "cyclic")]
        group: Vec<String>,
        /// Sweep the cyclic groups `Z_a .. Z_b`, written `a:b`.
        #[arg(long)]
        cyclic: Option<String>,
        #[arg(long, default_value_t = 2)]
        colors: u32,
        #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
        mode: ModeArg,
        /// Disable color-permutation symmetry reduction.
        #[arg(long)]
        no_symmetry: bool,
    },
    /// Congruence-class set with no solutions, or the sparsest dense subset search.
    DensityCex {
        /// JSON coefficient list for a single equation.
        #[arg(long, requires = "n", conflicts_with_all = ["matrix", "epsilon"])]
        coefficients: Option<String>,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, requires_all = ["group", "epsilon"])]
        matrix: Option<String>,
        #[arg(long)]
        group: Option<String>,
        /// Density as `p/q` or a decimal.
        #[arg(long)]
        epsilon: Option<String>,
        #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
        mode: ModeArg,
    },
    /// The order-4 counterexample evaluated over `Z_4^N`.
    Fixture6 {
        #[arg(long, default_value_t = 1)]
        copies: usize,
    },
}

#[derive(Debug, Serialize)]
struct Instance {
    matrix: Vec<Vec<Value>>,
    group: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    colors: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    epsilon: Option<String>,
}

#[derive(Debug, Serialize)]
struct SearchJson {
    instance: Instance,
    mode: &'static str,
    min: String,
    witness: Value,
    evaluated: String,
    normalizer: String,
    empirical_c: f64,
}

fn mode_name(m: SearchMode) -> &'static str {
    match m {
        SearchMode::Exhaustive => "exhaustive",
        SearchMode::Randomized => "randomized",
    }
}

fn search_json<W>(report: &SearchReport<W>, instance: Instance, witness: Value) -> SearchJson {
    SearchJson {
        instance,
        mode: mode_name(report.mode),
        min: report.min.to_string(),
        witness,
        evaluated: report.evaluated.to_string(),
        normalizer: report.normalizer.to_string(),
        empirical_c: report.empirical_c,
    }
}

fn coloring_witness(c: &Coloring) -> Value {
    json!(c.colors())
}

fn count_map(m: impl IntoIterator<Item = (u32, BigUint)>) -> Value {
    Value::Object(m.into_iter().map(|(c, v)| (c.to_string(), Value::String(v.to_string()))).collect())
}

fn certificate_value(c: Option<&rado_core::ColumnsCertificate>) -> Value {
    c.map_or(Value::Null, |c| serde_json::to_value(CertificateJson::from_certificate(c)).expect("serializable"))
}

fn kind_name(k: TranslateKind) -> &'static str {
    match k {
        TranslateKind::Transverse => "transverse",
        TranslateKind::Vertical => "vertical",
        TranslateKind::Degenerate => "degenerate",
    }
}

fn budget_for(cli: &Cli, mode: ModeArg, symmetry: bool) -> SearchBudget {
    let mut b = match mode {
        ModeArg::Exhaustive => SearchBudget::exhaustive(cli.budget),
        ModeArg::Randomized => SearchBudget::randomized(cli.budget, cli.seed),
    };
    b.seed = cli.seed;
    b.symmetry_reduction = symmetry;
    b
}

fn sweep_groups(groups: &[String], cyclic: Option<&str>) -> CliResult<Vec<GroupSpec>> {
    let mut out: Vec<GroupSpec> = groups.iter().map(|g| parse_group(g)).collect::<CliResult<_>>()?;
    if let Some(range) = cyclic {
        let (a, b) = range
            .split_once(':')
            .and_then(|(a, b)| Some((a.trim().parse::<u64>().ok()?, b.trim().parse::<u64>().ok()?)))
            .ok_or_else(|| CliError::usage(format!("cyclic range `{range}` is not a:b")))?;
        if a < 2 || b < a {
            return Err(CliError::usage("cyclic range needs 2 <= a <= b"));
        }
        for n in a..=b {
            out.push(GroupSpec::cyclic(n)?);
        }
    }
    Ok(out)
}

fn to_json(v: &impl Serialize) -> String {
    serde_json::to_string(v).expect("output is serializable")
}

/// Runs one parsed command and returns its stdout text.
pub fn execute(cli: &Cli) -> CliResult<String> {
    let count_bound = cli.oracle_bound.unwrap_or(DEFAULT_BRUTE_BOUND);
    let enum_bound = u64::try_from(cli.oracle_bound.unwrap_or(DEFAULT_ORACLE_BOUND as u128)).unwrap_or(u64::MAX);
    let threads = cli.threads.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let csv_ok = matches!(cli.command, Command::SearchColorings { .. });
    if cli.format == Format::Csv && !csv_ok {
        return Err(CliError::usage("csv output is available for search-colorings only"));
    }
    let out = match &cli.command {
        Command::CheckColumns { matrix, ring } => {
            let a = parse_matrix(matrix)?;
            let cert = check_columns_condition(&a, parse_ring(ring)?, cli.column_bound)?;
            to_json(&certificate_value(cert.as_ref()))
        }
        Command::Reduce { matrix, n } => {
            let a = parse_matrix(matrix)?;
            let r = reduce_matrix(&a, *n, cli.column_bound)?;
            to_json(&json!({
                "certificate": certificate_value(Some(&r.certificate)),
                "lifted": matrix_json(&r.lifted),
                "diagonal": r.diagonal.iter().map(int_value).collect::<Vec<_>>(),
                "reduced": matrix_json(&r.reduced),
                "reduced_certificate": certificate_value(Some(&r.reduced_certificate)),
                "shortcut": r.shortcut,
            }))
        }
        Command::Count { input, sets, set, backend } => {
            let a = parse_matrix(&input.matrix)?;
            let g = parse_group(&input.group)?;
            let sets = match (sets, set) {
                (Some(s), _) => parse_sets(&g, s, a.cols())?,
                (None, Some(s)) => vec![parse_set(&g, s)?; a.cols()],
                (None, None) => vec![ElementSet::full(&g); a.cols()],
            };
            count_solutions(&a, &g, &sets, (*backend).into(), count_bound)?.to_string()
        }
        Command::CountMono { input, coloring, colors, backend } => {
            let a = parse_matrix(&input.matrix)?;
            let g = parse_group(&input.group)?;
            let chi = parse_coloring(&g, coloring, *colors, cli.seed)?;
            let c = count_monochromatic(&a, &chi, (*backend).into(), count_bound)?;
            to_json(&json!({
                "group": g.to_string(),
                "coloring": coloring_witness(&chi),
                "total": c.total.to_string(),
                "per_color": count_map(c.per_color),
                "trivial": c.trivial.to_string(),
            }))
        }
        Command::Subgroups { group, d, copies, method, list } => {
            let g = parse_group(group)?;
            let listed = |v: Vec<Vec<u64>>| if *list { to_json(&v) } else { v.len().to_string() };
            match (d, copies) {
                (Some(d), Some(c)) => match (method, list) {
                    (SubgroupMethod::Formula, false) => count_subgroups_iso(&g, *d, *c)?.to_string(),
                    _ => listed(enumerate_subgroups(&g, *d, *c, enum_bound)?),
                },
                _ if *method == SubgroupMethod::Formula && !*list => {
                    return Err(CliError::usage("the formula counts one isomorphism type: pass --d and --copies"));
                }
                _ => listed(enumerate_all_subgroups(&g, enum_bound)?),
            }
        }
        Command::Gaussian { n, m, q } => gaussian_binomial(*n, *m, *q)?.to_string(),
        Command::Skeleton { matrix, n, basis, dim, non_strict, certificate } => {
            let a = parse_matrix(matrix)?;
            let basis = parse_basis(basis, *n, *dim, !*non_strict)?;
            let cert = match certificate {
                Some(c) => parse_certificate(c)?,
                None => check_columns_condition(&a, Ring::ModN(*n), cli.column_bound)?
                    .ok_or_else(|| rado_core::Error::NoCertificate(Ring::ModN(*n).to_string()))?,
            };
            let y = skeleton_solution(&a, &cert, &basis)?;
            to_json(&json!({
                "certificate": certificate_value(Some(&cert)),
                "pivots": basis.pivots(),
                "f_set": f_set(&basis).elements(),
                "solution": y,
            }))
        }
        Command::Classify { group, translate, outer, u, translate_colors } => {
            let g = parse_group(group)?;
            let b = match outer {
                Some(o) => parse_translate(&g, o)?,
                None => Translate::whole(&g)?,
            };
            let ts = match translate {
                Some(t) => vec![parse_translate(&g, t)?],
                None => enumerate_one_translates(&g, Some(&b), enum_bound)?,
            };
            let rows: Vec<Value> = ts
                .iter()
                .map(|t| {
                    let kind = classify_translate(&g, t, &b, *u)?;
                    Ok(json!({ "translate": TranslateJson::from_translate(t), "kind": kind_name(kind) }))
                })
                .collect::<CliResult<_>>()?;
            let mut out = json!({ "outer": TranslateJson::from_translate(&b), "u": u, "translates": rows });
            if let Some(colors) = translate_colors {
                let colors = parse_translate_colors(&g, colors)?;
                out["special"] = match is_special(&g, &b, *u, &colors)? {
                    Ok(()) => json!({ "special": true }),
                    Err((s, t)) => json!({
                        "special": false,
                        "conflict": [TranslateJson::from_translate(&s), TranslateJson::from_translate(&t)],
                    }),
                };
            }
            to_json(&out)
        }
        Command::SearchColorings { matrix, group, cyclic, colors, mode, no_symmetry } => {
            let a = parse_matrix(matrix)?;
            let groups = sweep_groups(group, cyclic.as_deref())?;
            let budget = budget_for(cli, *mode, !*no_symmetry);
            let mut reports = Vec::new();
            for g in &groups {
                let rep = search_colorings(&a, g, *colors, &budget, count_bound, threads)?;
                let instance =
                    Instance { matrix: matrix_json(&a), group: g.to_string(), colors: Some(*colors), epsilon: None };
                let witness = coloring_witness(&rep.witness);
                reports.push(search_json(&rep, instance, witness));
            }
            match cli.format {
                Format::Json if reports.len() == 1 => to_json(&reports[0]),
                Format::Json => to_json(&reports),
                Format::Csv => search_csv(&reports)?,
            }
        }
        Command::DensityCex { coefficients, n, matrix, group, epsilon, mode } => match (coefficients, matrix) {
            (Some(coefs), None) => {
                let coefs: Vec<i64> = serde_json::from_str(&crate::format::load_arg(coefs)?)
                    .map_err(|e| CliError::usage(format!("coefficients: {e}")))?;
                let n = n.ok_or_else(|| CliError::usage("--coefficients needs --n"))?;
                let w = density_counterexample(&coefs, n, count_bound)?;
                to_json(&json!({
                    "coefficients": w.coefficients,
                    "alpha": w.alpha,
                    "t": w.t,
                    "n": w.n,
                    "n0": w.n0,
                    "set": w.set,
                    "size": w.set.len(),
                    "solutions": w.solutions.map(|s| s.to_string()),
                    "density_bound": rational_json(&w.density_bound),
                    "meets_bound": w.meets_bound,
                }))
            }
            (None, Some(matrix)) => {
                let a = parse_matrix(matrix)?;
                let g = parse_group(group.as_deref().ok_or_else(|| CliError::usage("--matrix needs --group"))?)?;
                let eps =
                    parse_epsilon(epsilon.as_deref().ok_or_else(|| CliError::usage("--matrix needs --epsilon"))?)?;
                let budget = budget_for(cli, *mode, true);
                let rep = min_solutions_dense_subsets(&a, &g, &eps, &budget, count_bound)?;
                let instance = Instance {
                    matrix: matrix_json(&a),
                    group: g.to_string(),
                    colors: None,
                    epsilon: Some(rational_json(&eps)),
                };
                let witness = json!(rep.witness);
                to_json(&search_json(&rep, instance, witness))
            }
            _ => {
                return Err(CliError::usage(
                    "pass either --coefficients with --n, or --matrix with --group and --epsilon",
                ))
            }
        },
        Command::Fixture6 { copies } => {
            let r = order4_fixture(*copies)?;
            let passed = r.passed();
            to_json(&json!({
                "copies": r.copies,
                "total": r.total.to_string(),
                "expected_total": r.expected_total.to_string(),
                "monochromatic": r.monochromatic.to_string(),
                "expected_monochromatic": r.expected_monochromatic.to_string(),
                "per_color": count_map(r.per_color),
                "two_columns": certificate_value(r.two_columns.as_ref()),
                "four_columns": certificate_value(r.four_columns.as_ref()),
                "passed": passed,
            }))
        }
    };
    Ok(out)
}

fn search_csv(reports: &[SearchJson]) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io(e.to_string());
    w.write_record(["group", "colors", "mode", "min", "evaluated", "normalizer", "empirical_c", "witness"])
        .map_err(io)?;
    for r in reports {
        let mut c = String::new();
        write!(c, "{}", r.empirical_c).expect("write to string");
        w.write_record([
            r.instance.group.as_str(),
            &r.instance.colors.map_or(String::new(), |c| c.to_string()),
            r.mode,
            &r.min,
            &r.evaluated,
            &r.normalizer,
            &c,
            &r.witness.to_string(),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8").trim_end().to_owned())
}

/// Parses `argv`, runs the command and returns the exit code and stdout text.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            return (0, e.to_string().trim_end().to_owned());
        }
        Err(e) => {
            let err = CliError::usage(e.to_string().trim_end());
            return (err.exit_code(), to_json(&err.report()));
        }
    };
    match execute(&cli) {
        Ok(out) => (0, out),
        Err(e) => (e.exit_code(), to_json(&e.report())),
    }
}
