//! Command-line front end: `roots`, `verify`, `eval` and `table`.
//!
//! A run is described by a TOML file:
//!
//! ```toml
//! n = 2
//! root_system = "B3-embedded"   # A1, B<m>_euclidean, B<m>-embedded, B(n), or a root file
//! multiplicity = ["1", "2"]     # per orbit; a single value; or a multiplicity file
//! j = 1
//! weight = "critical"           # or an exact value such as "-3/2"
//! seed = 7
//! samples = 200
//! function = "sin(x1) + x2^2"
//!
//! [tolerances]
//! routes = 1e-8
//!
//! [suite]
//! degree = 4
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chartcalc::{chart_var_names, parse_expr, ExprId, ExprPool, ParseExprError};
use crate::conformal::{
    ambient_route, chart_operator, domain_check, relative_error, ConformalError, ConformalOperator,
};
use crate::dunkl::DunklContext;
use crate::rootsys::{
    by_name, gamma, generate_group, parse_assignments, parse_roots, validate_root_system, MultiplicityFunction,
    RootError, RootSystem, SubsphereQuadric, DEFAULT_GROUP_CAP,
};
use crate::sampling::{random_test_function, regular_points, rng};
use crate::scalar::{parse_rational, Exact};
use crate::verify::{run_suites, CheckResult, SuiteSizes, Tolerances};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Conformal(#[from] ConformalError),
    #[error("function: {0}")]
    Function(#[from] ParseExprError),
    #[error("points file line {line}: {msg}")]
    Points { line: usize, msg: String },
    #[error("output: {0}")]
    Output(String),
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

/// A number in the config: a TOML number or a string such as `"-3/2"` or `"1/2*sqrt2"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarSpec {
    Number(f64),
    Text(String),
}

impl ScalarSpec {
    pub fn to_exact(&self) -> Result<Exact, CliError> {
        match self {
            ScalarSpec::Number(v) => parse_rational(&v.to_string())
                .map(Exact::rational)
                .map_err(|e| CliError::Config(format!("{v}: {e}"))),
            ScalarSpec::Text(s) => s.parse::<Exact>().map_err(|e| CliError::Config(format!("{s:?}: {e}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MultiplicitySpec {
    PerOrbit(Vec<ScalarSpec>),
    /// A single value for every orbit, or the path of a multiplicity file.
    Single(ScalarSpec),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub n: usize,
    pub root_system: String,
    pub multiplicity: MultiplicitySpec,
    pub j: u32,
    pub weight: ScalarSpec,
    pub seed: u64,
    pub samples: usize,
    pub function: Option<String>,
    pub tolerances: Tolerances,
    pub suite: SuiteSizes,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n: 2,
            root_system: "B2_euclidean".into(),
            multiplicity: MultiplicitySpec::Single(ScalarSpec::Text("1/2".into())),
            j: 1,
            weight: ScalarSpec::Text("critical".into()),
            seed: 0,
            samples: 200,
            function: None,
            tolerances: Tolerances::default(),
            suite: SuiteSizes::default(),
        }
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    /// Reads a config file; relative paths inside it resolve against its directory.
    pub fn load(path: &Path) -> Result<(Self, PathBuf), CliError> {
        let cfg = Self::parse(&read(path)?)?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok((cfg, base))
    }

    pub fn root_system(&self, base: &Path) -> Result<RootSystem, CliError> {
        if let Some(sys) = by_name(&self.root_system, self.n) {
            return Ok(sys);
        }
        let path = base.join(&self.root_system);
        if !path.exists() {
            return Err(CliError::Config(format!(
                "root_system {:?} is neither a builtin for n = {} nor a file",
                self.root_system, self.n
            )));
        }
        let sys = validate_root_system(parse_roots(&read(&path)?)?)?.with_name(self.root_system.clone());
        if sys.n() != self.n {
            return Err(CliError::Config(format!("root file is for n = {}, config has n = {}", sys.n(), self.n)));
        }
        Ok(sys)
    }

    pub fn multiplicity(&self, sys: &RootSystem, base: &Path) -> Result<MultiplicityFunction, CliError> {
        match &self.multiplicity {
            MultiplicitySpec::PerOrbit(values) => {
                let values = values.iter().map(ScalarSpec::to_exact).collect::<Result<Vec<_>, _>>()?;
                Ok(MultiplicityFunction::per_orbit(sys, values)?)
            }
            MultiplicitySpec::Single(ScalarSpec::Text(s)) if s.parse::<Exact>().is_err() => {
                Ok(parse_assignments(sys, &read(&base.join(s))?)?)
            }
            MultiplicitySpec::Single(v) => Ok(MultiplicityFunction::uniform(sys, v.to_exact()?)),
        }
    }

    pub fn context(&self, base: &Path) -> Result<DunklContext, CliError> {
        let sys = self.root_system(base)?;
        let k = self.multiplicity(&sys, base)?;
        Ok(DunklContext::new(sys, k))
    }

    pub fn operator(&self, base: &Path) -> Result<ConformalOperator, CliError> {
        if self.j == 0 {
            return Err(CliError::Config("j must be at least 1".into()));
        }
        let ctx = self.context(base)?;
        Ok(match &self.weight {
            ScalarSpec::Text(s) if s == "critical" => ConformalOperator::critical(ctx, self.j),
            w => ConformalOperator::with_weight(ctx, self.j, w.to_exact()?),
        })
    }

    /// Suite sizes with the point counts taken from `samples`.
    pub fn suite_sizes(&self) -> SuiteSizes {
        SuiteSizes { points: self.samples, extension_points: self.samples.min(100), ..self.suite.clone() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Route {
    Chart,
    Ambient,
    Both,
}

#[derive(Debug, Parser)]
#[command(name = "conformal-dunkl", version, about = "Reflection groups in R^{n+1,1} and conformal Dunkl-Laplace operators on S^n")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// TOML run configuration; defaults apply when omitted.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Overrides the configured seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Writes the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Roots, orbits, tags, subsphere quadrics and the group order.
    Roots,
    /// Runs every verification suite on the configured system; exits nonzero on failure.
    Verify,
    /// Evaluates the operator on a function at the points of a file.
    ///
    /// Functions use x1..xn, numbers such as 3, 0.25, 1e-3, the constant sqrt2,
    /// the operators + - * / ^ (constant exponents), and exp, ln, sin, cos, sqrt.
    /// The points file holds one point per line, whitespace-separated decimals.
    Eval {
        /// Function on the chart; falls back to `function` in the config.
        #[arg(long)]
        function: Option<String>,
        /// Points file.
        #[arg(long)]
        points: PathBuf,
        /// Chart formula (j = 1 only), ambient route, or both with their relative error.
        #[arg(long, value_enum, default_value = "both")]
        route: Route,
    },
    /// Chart formula against ambient route (j = 1) or against a perturbed extension (j > 1) at sampled points.
    Table,
}

/// Floats with 17 significant digits.
pub fn fmt_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

fn to_csv(header: &[String], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let out = |e: csv::Error| CliError::Output(e.to_string());
    w.write_record(header).map_err(out)?;
    for r in rows {
        w.write_record(r).map_err(out)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value).map(|s| s + "\n").map_err(|e| CliError::Output(e.to_string()))
}

#[derive(Debug, Serialize)]
struct QuadricRow {
    c2: String,
    linear: Vec<String>,
    c0: String,
}

#[derive(Debug, Serialize)]
struct RootRow {
    index: usize,
    coords: Vec<String>,
    norm: String,
    tag: String,
    orbit: usize,
    positive: bool,
    multiplicity: String,
    quadric: QuadricRow,
}

#[derive(Debug, Serialize)]
struct RootsReport {
    name: String,
    n: usize,
    group_order: usize,
    gamma: String,
    orbits: Vec<Vec<usize>>,
    roots: Vec<RootRow>,
}

pub fn cmd_roots(cfg: &RunConfig, base: &Path, format: Format) -> Result<String, CliError> {
    let ctx = cfg.context(base)?;
    let sys = ctx.root_system();
    let k = ctx.multiplicity();
    let order = generate_group(sys, DEFAULT_GROUP_CAP)?.order();
    let strs = |v: &[Exact]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
    let roots: Vec<RootRow> = sys
        .roots()
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let q = SubsphereQuadric::of(r);
            RootRow {
                index: i,
                coords: strs(r.coords()),
                norm: r.norm().to_string(),
                tag: r.tag().to_string(),
                orbit: sys.orbit_of(i),
                positive: sys.is_positive(i),
                multiplicity: k.of_root(sys, i).to_string(),
                quadric: QuadricRow { c2: q.c2.to_string(), linear: strs(&q.linear), c0: q.c0.to_string() },
            }
        })
        .collect();
    let report = RootsReport {
        name: sys.name().to_string(),
        n: sys.n(),
        group_order: order,
        gamma: gamma(sys, k).to_string(),
        orbits: sys.orbits().to_vec(),
        roots,
    };
    match format {
        Format::Json => to_json(&report),
        Format::Csv => {
            let header: Vec<String> =
                ["index", "coords", "norm", "tag", "orbit", "positive", "multiplicity", "c2", "linear", "c0", "group_order"]
                    .map(String::from)
                    .to_vec();
            let rows: Vec<Vec<String>> = report
                .roots
                .iter()
                .map(|r| {
                    vec![
                        r.index.to_string(),
                        r.coords.join(" "),
                        r.norm.clone(),
                        r.tag.clone(),
                        r.orbit.to_string(),
                        r.positive.to_string(),
                        r.multiplicity.clone(),
                        r.quadric.c2.clone(),
                        r.quadric.linear.join(" "),
                        r.quadric.c0.clone(),
                        order.to_string(),
                    ]
                })
                .collect();
            to_csv(&header, &rows)
        }
    }
}

#[derive(Debug, Serialize)]
struct VerifyReport<'a> {
    system: String,
    multiplicity: Vec<String>,
    seed: u64,
    passed: bool,
    checks: &'a [CheckResult],
}

/// Runs [`run_suites`]; the flag is `false` when any check failed.
pub fn cmd_verify(cfg: &RunConfig, base: &Path, format: Format) -> Result<(String, bool), CliError> {
    let ctx = cfg.context(base)?;
    let checks = run_suites(&ctx, &mut rng(cfg.seed), &cfg.suite_sizes(), &cfg.tolerances);
    let passed = checks.iter().all(|c| c.passed);
    let text = match format {
        Format::Json => to_json(&VerifyReport {
            system: ctx.root_system().name().to_string(),
            multiplicity: ctx.multiplicity().values().iter().map(ToString::to_string).collect(),
            seed: cfg.seed,
            passed,
            checks: &checks,
        })?,
        Format::Csv => {
            let header = ["check", "passed", "residual", "tolerance", "lower_bound", "detail"].map(String::from).to_vec();
            let rows: Vec<Vec<String>> = checks
                .iter()
                .map(|c| {
                    vec![
                        c.name.clone(),
                        c.passed.to_string(),
                        fmt_float(c.residual),
                        fmt_float(c.tolerance),
                        c.lower_bound.to_string(),
                        c.detail.clone(),
                    ]
                })
                .collect();
            to_csv(&header, &rows)?
        }
    };
    Ok((text, passed))
}

/// One point per line, whitespace- or comma-separated decimals; `#` starts a comment.
pub fn parse_points(text: &str, n: usize) -> Result<Vec<Vec<f64>>, CliError> {
    let mut out = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let x = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<f64>().map_err(|e| CliError::Points { line: ln + 1, msg: format!("{t:?}: {e}") }))
            .collect::<Result<Vec<f64>, _>>()?;
        if x.len() != n {
            return Err(CliError::Points { line: ln + 1, msg: format!("expected {n} coordinates, got {}", x.len()) });
        }
        out.push(x);
    }
    Ok(out)
}

fn function_expr(pool: &mut ExprPool, cfg: &RunConfig, given: Option<&str>) -> Result<ExprId, CliError> {
    match given.or(cfg.function.as_deref()) {
        Some(text) => Ok(parse_expr(pool, text, &chart_var_names(cfg.n))?),
        None => Err(CliError::Config("no function given (use --function or the function key)".into())),
    }
}

#[derive(Debug, Serialize)]
struct EvalRow {
    point: Vec<f64>,
    chart: Option<f64>,
    ambient: Option<f64>,
    warning: Option<String>,
    error: Option<String>,
}

/// Evaluates the operator at each point; the flag is `false` when any point failed.
pub fn cmd_eval(
    cfg: &RunConfig,
    base: &Path,
    function: Option<&str>,
    points_text: &str,
    route: Route,
    format: Format,
) -> Result<(String, bool), CliError> {
    let op = cfg.operator(base)?;
    let mut pool = ExprPool::new();
    let f = function_expr(&mut pool, cfg, function)?;
    let pts = parse_points(points_text, cfg.n)?;
    let want_chart = matches!(route, Route::Chart | Route::Both);
    let want_ambient = matches!(route, Route::Ambient | Route::Both);
    if want_chart && op.j() != 1 && route == Route::Chart {
        return Err(ConformalError::ChartFormulaPower(op.j()).into());
    }
    let chart = if want_chart && op.j() == 1 { Some(chart_operator(&op, &mut pool, f)?) } else { None };
    let ambient = if want_ambient { Some(ambient_route(&op, &mut pool, f, None)?) } else { None };
    let margin = cfg.suite.margin;
    let mut ok = true;
    let rows: Vec<EvalRow> = pts
        .into_iter()
        .map(|x| {
            let mut row = EvalRow { point: x.clone(), chart: None, ambient: None, warning: None, error: None };
            let result = (|| -> Result<(), ConformalError> {
                let report = domain_check(op.ctx(), &x, op.j())?;
                if !report.clear_of(margin) {
                    row.warning = Some(format!(
                        "ill-conditioned: min |D| = {}, min J = {}",
                        fmt_float(report.min_abs_d),
                        fmt_float(report.min_j)
                    ));
                }
                if let Some(c) = &chart {
                    row.chart = Some(c.eval(&pool, &x)?);
                }
                if let Some(a) = &ambient {
                    row.ambient = Some(a.eval(&pool, &x)?);
                }
                Ok(())
            })();
            if let Err(e) = result {
                ok = false;
                row.error = Some(e.to_string());
            }
            row
        })
        .collect();
    let text = match format {
        Format::Json => to_json(&rows)?,
        Format::Csv => {
            let mut header = chart_var_names(cfg.n);
            header.extend(["chart", "ambient", "warning", "error"].map(String::from));
            let opt = |v: Option<f64>| v.map(fmt_float).unwrap_or_default();
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let mut v: Vec<String> = r.point.iter().map(|&c| fmt_float(c)).collect();
                    v.push(opt(r.chart));
                    v.push(opt(r.ambient));
                    v.push(r.warning.clone().unwrap_or_default());
                    v.push(r.error.clone().unwrap_or_default());
                    v
                })
                .collect();
            to_csv(&header, &body)?
        }
    };
    Ok((text, ok))
}

#[derive(Debug, Serialize)]
struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<f64>>,
}

/// Route comparison at `samples` regular points drawn with the configured seed.
pub fn cmd_table(cfg: &RunConfig, base: &Path, format: Format) -> Result<String, CliError> {
    let op = cfg.operator(base)?;
    let mut r = rng(cfg.seed);
    let mut pool = ExprPool::new();
    let f = match &cfg.function {
        Some(_) => function_expr(&mut pool, cfg, None)?,
        None => random_test_function(&mut pool, &mut r, cfg.n),
    };
    let sizes = cfg.suite_sizes();
    let pts = regular_points(&mut r, op.ctx(), cfg.samples, sizes.radius, sizes.margin, op.j());
    let mut columns = vec!["index".to_string()];
    columns.extend(chart_var_names(cfg.n));
    columns.extend(["min_abs_d", "min_j"].map(String::from));
    let (a_name, b_name) = if op.j() == 1 { ("chart", "ambient") } else { ("ambient", "ambient_perturbed") };
    columns.extend([a_name, b_name, "rel_error"].map(String::from));
    let chart = if op.j() == 1 { Some(chart_operator(&op, &mut pool, f)?) } else { None };
    let route = ambient_route(&op, &mut pool, f, None)?;
    let perturbed = match chart {
        Some(_) => None,
        None => {
            let g = random_test_function(&mut pool, &mut r, cfg.n);
            Some(ambient_route(&op, &mut pool, f, Some(g))?)
        }
    };
    let mut rows = Vec::with_capacity(pts.len());
    for (i, x) in pts.iter().enumerate() {
        let report = domain_check(op.ctx(), x, op.j())?;
        let base_value = route.eval(&pool, x)?;
        let (a, b) = match (&chart, &perturbed) {
            (Some(c), _) => (c.eval(&pool, x)?, base_value),
            (None, Some(p)) => (base_value, p.eval(&pool, x)?),
            (None, None) => unreachable!("one comparison is always built"),
        };
        let mut row = vec![i as f64];
        row.extend(x);
        row.extend([report.min_abs_d, report.min_j, a, b, relative_error(a, b)]);
        rows.push(row);
    }
    let table = Table { columns, rows };
    match format {
        Format::Json => to_json(&table),
        Format::Csv => {
            let body: Vec<Vec<String>> = table
                .rows
                .iter()
                .map(|r| {
                    r.iter().enumerate().map(|(k, v)| if k == 0 { (*v as usize).to_string() } else { fmt_float(*v) }).collect()
                })
                .collect();
            to_csv(&table.columns, &body)
        }
    }
}

/// Runs one invocation; `Ok(false)` means the command completed but reported failures.
pub fn run(cli: &Cli) -> Result<bool, CliError> {
    let (mut cfg, base) = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => (RunConfig::default(), PathBuf::new()),
    };
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    let (text, ok) = match &cli.command {
        Command::Roots => (cmd_roots(&cfg, &base, cli.format.unwrap_or(Format::Json))?, true),
        Command::Verify => cmd_verify(&cfg, &base, cli.format.unwrap_or(Format::Json))?,
        Command::Eval { function, points, route } => {
            let pts = read(points)?;
            cmd_eval(&cfg, &base, function.as_deref(), &pts, *route, cli.format.unwrap_or(Format::Csv))?
        }
        Command::Table => (cmd_table(&cfg, &base, cli.format.unwrap_or(Format::Csv))?, true),
    };
    match &cli.out {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io { path: p.display().to_string(), source })?,
        None => print!("{text}"),
    }
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_config_and_rejects_unknown_keys() {
        let cfg = RunConfig::parse(
            "n = 3\nroot_system = \"B3-embedded\"\nmultiplicity = [1, \"1/2\"]\nweight = -1.5\n[tolerances]\nroutes = 1e-9\n",
        )
        .unwrap();
        assert_eq!(cfg.n, 3);
        assert_eq!(cfg.tolerances.routes, 1e-9);
        let op = cfg.operator(Path::new("")).unwrap();
        assert_eq!(op.weight(), &Exact::frac(-3, 2));
        assert_eq!(op.ctx().multiplicity().values(), &[Exact::int(1), Exact::frac(1, 2)]);
        assert!(RunConfig::parse("colour = 1\n").is_err());
        assert!(RunConfig::parse("[tolerances]\nfoo = 1\n").is_err());
    }

    #[test]
    fn decimal_multiplicity_is_exact() {
        let cfg = RunConfig::parse("multiplicity = 0.1\n").unwrap();
        let ctx = cfg.context(Path::new("")).unwrap();
        assert_eq!(ctx.multiplicity().values()[0], Exact::frac(1, 10));
    }

    #[test]
    fn eval_reports_singular_root() {
        let cfg = RunConfig { multiplicity: MultiplicitySpec::Single(ScalarSpec::Number(1.0)), ..RunConfig::default() };
        let (text, ok) = cmd_eval(&cfg, Path::new(""), Some("x1^2"), "0 0.5\n0.3 0.4\n", Route::Both, Format::Csv).unwrap();
        assert!(!ok);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "x1,x2,chart,ambient,warning,error");
        assert!(lines[1].contains("D_alpha") || lines[1].contains("<alpha,X>"), "{}", lines[1]);
        assert!(lines[2].ends_with(','));
    }

    #[test]
    fn roots_listing() {
        let cfg = RunConfig { n: 1, root_system: "B(n)".into(), ..RunConfig::default() };
        let text = cmd_roots(&cfg, Path::new(""), Format::Json).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["group_order"], 8);
        assert_eq!(v["orbits"].as_array().unwrap().len(), 2);
        assert!(v["roots"].as_array().unwrap().iter().any(|r| r["tag"] == "S"));
    }

    #[test]
    fn points_file() {
        assert_eq!(parse_points("# p\n1 2\n3,4\n\n", 2).unwrap(), vec![vec![1.0, 2.0], vec![3.0, 4.0]]);
        assert!(matches!(parse_points("1 2 3\n", 2), Err(CliError::Points { line: 1, .. })));
    }

    #[test]
    fn floats_have_seventeen_digits() {
        assert_eq!(fmt_float(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt_float(4.0), "4.0000000000000000e0");
    }
}
