//! Verification suites shared by the command line and the acceptance tests.
//!
//! Every check returns a [`CheckResult`]; exact checks report the number of
//! failing cases as the residual with tolerance zero.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ambient::AmbientVector;
use crate::chartcalc::{eval_f64, ExprId, ExprPool};
use crate::conformal::{
    chart_equivariance_residual, chart_operator, classical_dunkl_expr, cross_validate, euclidean_roots,
    extension_independence_residual, float_to_rational, higher_power, worse, ambient_route, leading_symbol, relative_error, ConformalError, ConformalOperator,
};
use crate::dunkl::{
    commutativity_check, dunkl_laplacian_direct, dunkl_laplacian_sum, equivariance_check, sl2_commutators,
    DunklContext,
};
use crate::linalg::rank;
use crate::rootsys::{
    a1, b_embedded, b_euclidean, build_b, generate_group, hyperplane_basis, validate_root_system, ChartReflection,
    MultiplicityFunction, RootSystem, DEFAULT_GROUP_CAP,
};
use crate::sampling::{random_direction, random_point, random_poly, random_smooth_expr, random_test_function, SampleRng};
use crate::scalar::Exact;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub residual: f64,
    pub tolerance: f64,
    /// The residual must exceed the tolerance instead of staying below it.
    pub lower_bound: bool,
    pub detail: String,
}

impl CheckResult {
    /// Exact check: passes when no case failed.
    pub fn exact(name: impl Into<String>, failures: usize, cases: usize) -> Self {
        CheckResult {
            name: name.into(),
            passed: failures == 0,
            residual: failures as f64,
            tolerance: 0.0,
            lower_bound: false,
            detail: format!("{failures} of {cases} cases nonzero"),
        }
    }

    pub fn at_most(name: impl Into<String>, residual: f64, tolerance: f64, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            passed: residual <= tolerance,
            residual,
            tolerance,
            lower_bound: false,
            detail: detail.into(),
        }
    }

    /// Passes when the residual is strictly above `threshold`.
    pub fn at_least(name: impl Into<String>, residual: f64, threshold: f64, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            passed: residual > threshold,
            residual,
            tolerance: threshold,
            lower_bound: true,
            detail: detail.into(),
        }
    }

    pub fn failed(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            passed: false,
            residual: f64::NAN,
            tolerance: 0.0,
            lower_bound: false,
            detail: detail.into(),
        }
    }

    pub fn prefixed(mut self, prefix: &str) -> Self {
        self.name = format!("{prefix}: {}", self.name);
        self
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} residual={:e} {} {:e} ({})",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.residual,
            if self.lower_bound { "must exceed" } else { "tol" },
            self.tolerance,
            self.detail
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub extension: f64,
    pub extension_power: f64,
    pub routes: f64,
    pub classical: f64,
    pub laplacian: f64,
    pub gjms: f64,
    pub chart_equivariance: f64,
    pub symbol: f64,
    pub geometry: f64,
    pub derivative: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            extension: 1e-9,
            extension_power: 1e-3,
            routes: 1e-8,
            classical: 1e-10,
            laplacian: 1e-12,
            gjms: 1e-7,
            chart_equivariance: 1e-8,
            symbol: 1e-6,
            geometry: 1e-10,
            derivative: 1e-6,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteSizes {
    pub degree: u32,
    pub pairs: usize,
    pub polynomials: usize,
    pub equivariance_polynomials: usize,
    pub points: usize,
    pub extension_points: usize,
    pub perturbations: usize,
    pub expressions: usize,
    pub symbol_points: usize,
    pub radius: f64,
    pub margin: f64,
}

impl Default for SuiteSizes {
    fn default() -> Self {
        SuiteSizes {
            degree: 6,
            pairs: 50,
            polynomials: 200,
            equivariance_polynomials: 50,
            points: 200,
            extension_points: 100,
            perturbations: 5,
            expressions: 500,
            symbol_points: 10,
            radius: 1.5,
            margin: 0.1,
        }
    }
}

/// `k = 1, 2, …` on the orbits, in orbit order.
pub fn two_orbit_multiplicity(sys: &RootSystem) -> MultiplicityFunction {
    let values = (1..=sys.orbits().len() as i64).map(Exact::int).collect();
    MultiplicityFunction::per_orbit(sys, values).expect("one value per orbit")
}

/// The test root systems in chart dimension `n ≥ 2`: `±e₁`, `B₂` Euclidean, `B₃` embedded.
pub fn standard_systems(n: usize) -> Vec<RootSystem> {
    vec![a1(n), b_euclidean(2, n), b_embedded(3, n)]
}

/// The test multiplicities: `0`, `½` and `1, 2` on the orbits.
pub fn standard_multiplicities(sys: &RootSystem) -> Vec<(String, MultiplicityFunction)> {
    vec![
        ("k=0".into(), MultiplicityFunction::zero(sys)),
        ("k=1/2".into(), MultiplicityFunction::uniform(sys, Exact::frac(1, 2))),
        ("k=(1,2)".into(), two_orbit_multiplicity(sys)),
    ]
}

/// Every system and multiplicity pair for chart dimension `n`, with a label.
pub fn standard_configurations(n: usize) -> Vec<(String, DunklContext)> {
    let mut out = Vec::new();
    for sys in standard_systems(n) {
        for (label, k) in standard_multiplicities(&sys) {
            out.push((format!("n={n} {} {label}", sys.name()), DunklContext::new(sys.clone(), k)));
        }
    }
    out
}

/// Regular chart points for `ctx` at reflection depth `depth`, or an error if too few were found.
pub fn sample_points(
    ctx: &DunklContext,
    rng: &mut SampleRng,
    count: usize,
    depth: u32,
    sizes: &SuiteSizes,
) -> Result<Vec<Vec<f64>>, String> {
    let pts = crate::sampling::regular_points(rng, ctx, count, sizes.radius, sizes.margin, depth);
    if pts.len() < count {
        return Err(format!("found only {} of {count} regular points", pts.len()));
    }
    Ok(pts)
}

pub fn sl2(ctx: &DunklContext, sizes: &SuiteSizes) -> Vec<CheckResult> {
    let report = match sl2_commutators(ctx, sizes.degree) {
        Ok(r) => r,
        Err(e) => return vec![CheckResult::failed("sl2", e.to_string())],
    };
    let holding: Vec<&str> = report.relations.iter().filter(|r| r.holds).map(|r| r.relation).collect();
    let detail = format!("holding: {}", holding.join(", "));
    ["[E,F] = H", "[H,E] = 2E", "[H,F] = -2F"]
        .into_iter()
        .map(|name| {
            let rel = report.relations.iter().find(|r| r.relation == name).expect("known relation");
            let mut c = CheckResult::exact(format!("sl2 {name}"), rel.failures, report.basis_size);
            c.detail = format!("{}; {detail}", c.detail);
            c
        })
        .collect()
}

pub fn commutativity(ctx: &DunklContext, rng: &mut SampleRng, sizes: &SuiteSizes) -> CheckResult {
    let d = ctx.nvars();
    let mut failures = 0;
    for _ in 0..sizes.pairs {
        let xi = random_direction(rng, d, 3);
        let eta = random_direction(rng, d, 3);
        let p = random_poly(rng, d, sizes.degree, 3);
        match commutativity_check(ctx, &xi, &eta, &p) {
            Ok(r) if r.is_zero() => {}
            _ => failures += 1,
        }
    }
    CheckResult::exact("commutativity [T_xi, T_eta] = 0", failures, sizes.pairs)
}

pub fn two_laplacians(ctx: &DunklContext, rng: &mut SampleRng, sizes: &SuiteSizes) -> CheckResult {
    let d = ctx.nvars();
    let mut failures = 0;
    for _ in 0..sizes.polynomials {
        let p = random_poly(rng, d, sizes.degree, 3);
        let same = matches!(
            (dunkl_laplacian_sum(ctx, &p), dunkl_laplacian_direct(ctx, &p)),
            (Ok(a), Ok(b)) if a == b
        );
        if !same {
            failures += 1;
        }
    }
    CheckResult::exact("laplacian sum = direct", failures, sizes.polynomials)
}

pub fn equivariance(ctx: &DunklContext, rng: &mut SampleRng, sizes: &SuiteSizes) -> CheckResult {
    let d = ctx.nvars();
    let gens = ctx.root_system().generators();
    let mut failures = 0;
    for _ in 0..sizes.equivariance_polynomials {
        let p = random_poly(rng, d, sizes.degree, 3);
        for g in &gens {
            match equivariance_check(ctx, g, &p) {
                Ok(r) if r.is_zero() => {}
                _ => failures += 1,
            }
        }
    }
    CheckResult::exact("G-equivariance of the Dunkl Laplacian", failures, sizes.equivariance_polynomials * gens.len())
}

fn conformal_failure(name: &str, e: impl fmt::Display) -> CheckResult {
    CheckResult::failed(name, e.to_string())
}

/// Largest `max(|Pf|, 1)` over the points, used to size the perturbation of the power check.
fn output_scale(op: &ConformalOperator, pool: &mut ExprPool, f: ExprId, pts: &[Vec<f64>]) -> Result<f64, ConformalError> {
    let route = ambient_route(op, pool, f, None)?;
    let mut scale = 1.0f64;
    for x in pts {
        scale = worse(scale, route.eval(pool, x)?.abs());
    }
    Ok(scale)
}

/// Critical weight residual over random perturbations, and the shifted-weight power check.
///
/// The power check multiplies its perturbation by the output scale, so the
/// relative residual measures the dependence coefficient rather than the size of `J^w`.
pub fn extension_independence(
    ctx: &DunklContext,
    j: u32,
    rng: &mut SampleRng,
    sizes: &SuiteSizes,
    tol: &Tolerances,
) -> Vec<CheckResult> {
    let name = format!("extension independence j={j}");
    let power = format!("extension dependence at w+1/2 j={j}");
    let n = ctx.root_system().n();
    let pts = match sample_points(ctx, rng, sizes.extension_points, j, sizes) {
        Ok(p) => p,
        Err(e) => return vec![CheckResult::failed(name, e)],
    };
    let op = ConformalOperator::critical(ctx.clone(), j);
    let mut pool = ExprPool::new();
    let f = random_test_function(&mut pool, rng, n);
    let mut worst = 0.0f64;
    for _ in 0..sizes.perturbations {
        let g = random_test_function(&mut pool, rng, n);
        match extension_independence_residual(&op, &mut pool, f, g, &pts) {
            Ok(r) => worst = worse(worst, r),
            Err(e) => return vec![conformal_failure(&name, e)],
        }
    }
    let detail = format!("w={}, {} points, {} perturbations", op.weight(), pts.len(), sizes.perturbations);
    let first = CheckResult::at_most(name, worst, tol.extension, detail);
    let shifted = op.shifted(&Exact::frac(1, 2));
    let scale = match output_scale(&shifted, &mut pool, f, &pts) {
        Ok(s) => s,
        Err(e) => return vec![first, conformal_failure(&power, e)],
    };
    let g = random_test_function(&mut pool, rng, n);
    let g = pool.scale(&Exact::rational(float_to_rational(scale)), g);
    let second = match extension_independence_residual(&shifted, &mut pool, f, g, &pts) {
        Ok(r) => CheckResult::at_least(power, r, tol.extension_power, format!("w={}", shifted.weight())),
        Err(e) => conformal_failure(&power, e),
    };
    vec![first, second]
}

pub fn route_agreement(ctx: &DunklContext, rng: &mut SampleRng, sizes: &SuiteSizes, tol: &Tolerances) -> CheckResult {
    let name = "chart formula = ambient route";
    let pts = match sample_points(ctx, rng, sizes.points, 1, sizes) {
        Ok(p) => p,
        Err(e) => return CheckResult::failed(name, e),
    };
    let op = ConformalOperator::critical(ctx.clone(), 1);
    let mut pool = ExprPool::new();
    let f = random_test_function(&mut pool, rng, op.n());
    match cross_validate(&op, &mut pool, f, &pts) {
        Ok(r) => CheckResult::at_most(name, r, tol.routes, format!("{} points", pts.len())),
        Err(e) => conformal_failure(name, e),
    }
}

fn chart_laplacian(pool: &mut ExprPool, f: ExprId, n: usize) -> ExprId {
    let second: Vec<ExprId> = (0..n)
        .map(|i| {
            let d = pool.derivative(f, i);
            pool.derivative(d, i)
        })
        .collect();
    pool.sum(second)
}

/// Compares the chart formula with an expression evaluated at the same points.
fn chart_against(
    op: &ConformalOperator,
    pool: &mut ExprPool,
    f: ExprId,
    reference: ExprId,
    pts: &[Vec<f64>],
) -> Result<f64, ConformalError> {
    let a = chart_operator(op, pool, f)?;
    let mut worst = 0.0f64;
    for x in pts {
        let want = eval_f64(pool, reference, x)?;
        worst = worse(worst, relative_error(a.eval(pool, x)?, want));
    }
    Ok(worst)
}

/// With `k ≡ 0` the chart formula is the flat Laplacian.
pub fn zero_multiplicity(sys: &RootSystem, rng: &mut SampleRng, sizes: &SuiteSizes, tol: &Tolerances) -> CheckResult {
    let name = "k=0 chart formula = flat Laplacian";
    let ctx = DunklContext::new(sys.clone(), MultiplicityFunction::zero(sys));
    let pts = match sample_points(&ctx, rng, sizes.points, 1, sizes) {
        Ok(p) => p,
        Err(e) => return CheckResult::failed(name, e),
    };
    let op = ConformalOperator::critical(ctx, 1);
    let mut pool = ExprPool::new();
    let f = random_test_function(&mut pool, rng, op.n());
    let lap = chart_laplacian(&mut pool, f, op.n());
    match chart_against(&op, &mut pool, f, lap, &pts) {
        Ok(r) => CheckResult::at_most(name, r, tol.laplacian, format!("{} points", pts.len())),
        Err(e) => conformal_failure(name, e),
    }
}

/// For Euclidean-only systems the chart formula is the classical Dunkl Laplacian.
pub fn classical_reduction(
    ctx: &DunklContext,
    rng: &mut SampleRng,
    sizes: &SuiteSizes,
    tol: &Tolerances,
) -> Option<CheckResult> {
    let name = "chart formula = classical Dunkl Laplacian";
    let roots = euclidean_roots(ctx)?;
    let pts = match sample_points(ctx, rng, sizes.points, 1, sizes) {
        Ok(p) => p,
        Err(e) => return Some(CheckResult::failed(name, e)),
    };
    let op = ConformalOperator::critical(ctx.clone(), 1);
    let mut pool = ExprPool::new();
    let f = random_test_function(&mut pool, rng, op.n());
    let classical = classical_dunkl_expr(&mut pool, &roots, f, op.n());
    Some(match chart_against(&op, &mut pool, f, classical, &pts) {
        Ok(r) => CheckResult::at_most(name, r, tol.classical, format!("{} points", pts.len())),
        Err(e) => conformal_failure(name, e),
    })
}

/// With `k ≡ 0` and `j = 2` the ambient route is the bi-Laplacian.
pub fn flat_gjms(sys: &RootSystem, rng: &mut SampleRng, sizes: &SuiteSizes, tol: &Tolerances) -> CheckResult {
    let name = "k=0 j=2 ambient route = bi-Laplacian";
    let ctx = DunklContext::new(sys.clone(), MultiplicityFunction::zero(sys));
    let pts = match sample_points(&ctx, rng, sizes.extension_points, 2, sizes) {
        Ok(p) => p,
        Err(e) => return CheckResult::failed(name, e),
    };
    let op = ConformalOperator::critical(ctx, 2);
    let n = op.n();
    let mut pool = ExprPool::new();
    let f = random_test_function(&mut pool, rng, n);
    let lap = chart_laplacian(&mut pool, f, n);
    let bilap = chart_laplacian(&mut pool, lap, n);
    let mut worst = 0.0f64;
    for x in &pts {
        let got = match higher_power(&op, &mut pool, f, x) {
            Ok(v) => v,
            Err(e) => return conformal_failure(name, e),
        };
        let want = match eval_f64(&pool, bilap, x) {
            Ok(v) => v,
            Err(e) => return conformal_failure(name, e),
        };
        worst = worse(worst, relative_error(got, want));
    }
    CheckResult::at_most(name, worst, tol.gjms, format!("{} points", pts.len()))
}

/// The chart formula intertwines the density actions of every positive-root reflection.
pub fn chart_equivariance(ctx: &DunklContext, rng: &mut SampleRng, sizes: &SuiteSizes, tol: &Tolerances) -> CheckResult {
    let name = "chart equivariance under reflections";
    let count = (sizes.points / 10).max(5);
    let pts = match sample_points(ctx, rng, count, 2, sizes) {
        Ok(p) => p,
        Err(e) => return CheckResult::failed(name, e),
    };
    let op = ConformalOperator::critical(ctx.clone(), 1);
    let mut pool = ExprPool::new();
    let f = random_test_function(&mut pool, rng, op.n());
    let mut worst = 0.0f64;
    let mut cases = 0;
    for root in ctx.root_system().positive_roots() {
        for x in &pts {
            match chart_equivariance_residual(&op, &mut pool, f, root, x) {
                Ok(r) => worst = worse(worst, r),
                Err(e) => return conformal_failure(name, e),
            }
            cases += 1;
        }
    }
    CheckResult::at_most(name, worst, tol.chart_equivariance, format!("{cases} root/point pairs"))
}

/// The leading symbol of the chart formula is `|ξ|²`.
pub fn symbol(ctx: &DunklContext, rng: &mut SampleRng, sizes: &SuiteSizes, tol: &Tolerances) -> CheckResult {
    let name = "leading symbol = |xi|^2";
    let pts = match sample_points(ctx, rng, sizes.symbol_points, 1, sizes) {
        Ok(p) => p,
        Err(e) => return CheckResult::failed(name, e),
    };
    let op = ConformalOperator::critical(ctx.clone(), 1);
    let mut pool = ExprPool::new();
    let mut worst = 0.0f64;
    for x in &pts {
        let xi = random_point(rng, op.n(), 1.0);
        let want: f64 = xi.iter().map(|v| v * v).sum();
        match leading_symbol(&op, &mut pool, x, &xi, 1e4) {
            Ok(s) => worst = worse(worst, relative_error(s, want)),
            Err(e) => return conformal_failure(name, e),
        }
    }
    CheckResult::at_most(name, worst, tol.symbol, format!("{} points", pts.len()))
}

/// Root-system axioms, group order, hyperplane bases and chart reflections for `build_b(n)`.
pub fn geometry(n: usize, rng: &mut SampleRng, sizes: &SuiteSizes, tol: &Tolerances) -> Vec<CheckResult> {
    let sys = build_b(n);
    let mut out = Vec::new();
    let axioms = validate_root_system(sys.roots().to_vec());
    out.push(CheckResult {
        name: format!("B{} axioms", n + 1),
        passed: axioms.is_ok(),
        residual: if axioms.is_ok() { 0.0 } else { 1.0 },
        tolerance: 0.0,
        lower_bound: false,
        detail: match axioms {
            Ok(s) => format!("{} roots", s.len()),
            Err(e) => e.to_string(),
        },
    });
    if n <= 2 {
        let expected = (1..=n + 1).product::<usize>() << (n + 1);
        let order = generate_group(&sys, DEFAULT_GROUP_CAP).map(|g| g.order());
        out.push(match order {
            Ok(o) => CheckResult {
                name: format!("B{} group order", n + 1),
                passed: o == expected,
                residual: o.abs_diff(expected) as f64,
                tolerance: 0.0,
                lower_bound: false,
                detail: format!("order {o}, expected {expected}"),
            },
            Err(e) => CheckResult::failed(format!("B{} group order", n + 1), e.to_string()),
        });
    }
    let mut failures = 0;
    for root in sys.roots() {
        let basis = hyperplane_basis(root);
        let orthogonal = basis.iter().all(|v| root.pair_with(&v.coords).is_zero());
        let rows: Vec<Vec<Exact>> = basis.iter().map(|v| v.coords.to_vec()).collect();
        if !orthogonal || basis.len() != n + 1 || rank(&rows) != n + 1 {
            failures += 1;
        }
    }
    out.push(CheckResult::exact(format!("B{} hyperplane bases", n + 1), failures, sys.len()));
    let ctx = DunklContext::new(sys.clone(), MultiplicityFunction::uniform(&sys, Exact::int(1)));
    let pts = crate::sampling::regular_points(rng, &ctx, sizes.points, sizes.radius, sizes.margin, 1);
    let (mut involution, mut lifted) = (0.0f64, 0.0f64);
    for root in sys.roots() {
        for x in &pts {
            let Ok(once) = ChartReflection::compute(root, x) else { continue };
            if let Ok(twice) = ChartReflection::compute(root, &once.image) {
                for (a, b) in twice.image.iter().zip(x) {
                    involution = worse(involution, relative_error(*a, *b));
                }
            }
            let lift = root.reflect(&AmbientVector::cone_point(x));
            let x0 = *lift.x0();
            for (a, b) in lift.euclidean().iter().zip(&once.image) {
                lifted = worse(lifted, relative_error(a / x0, *b));
            }
        }
    }
    let detail = format!("{} roots x {} points", sys.len(), pts.len());
    out.push(CheckResult::at_most(format!("B{} chart reflection involutive", n + 1), involution, tol.geometry, detail.clone()));
    out.push(CheckResult::at_most(format!("B{} chart reflection = lifted reflection", n + 1), lifted, tol.geometry, detail));
    out
}

/// Central differences extrapolated in the step size (Ridders), starting from `h`.
pub fn central_difference<E>(f: impl Fn(f64) -> Result<f64, E>, h: f64) -> Result<f64, E> {
    const SHRINK: f64 = 1.4;
    const LEVELS: usize = 10;
    let mut table = vec![vec![0.0f64; LEVELS]; LEVELS];
    let mut step = h;
    table[0][0] = (f(step)? - f(-step)?) / (2.0 * step);
    let (mut best, mut err) = (table[0][0], f64::INFINITY);
    for i in 1..LEVELS {
        step /= SHRINK;
        table[0][i] = (f(step)? - f(-step)?) / (2.0 * step);
        let mut fac = SHRINK * SHRINK;
        for j in 1..=i {
            table[j][i] = (table[j - 1][i] * fac - table[j - 1][i - 1]) / (fac - 1.0);
            fac *= SHRINK * SHRINK;
            let e = (table[j][i] - table[j - 1][i]).abs().max((table[j][i] - table[j - 1][i - 1]).abs());
            if e <= err {
                err = e;
                best = table[j][i];
            }
        }
        if (table[i][i] - table[i - 1][i - 1]).abs() >= 2.0 * err {
            break;
        }
    }
    Ok(best)
}

/// Symbolic partial derivatives against extrapolated central differences.
pub fn derivatives(rng: &mut SampleRng, sizes: &SuiteSizes, tol: &Tolerances) -> CheckResult {
    let name = "symbolic derivative = central difference";
    const N: usize = 3;
    let mut pool = ExprPool::new();
    let mut worst = 0.0f64;
    for _ in 0..sizes.expressions {
        let e = random_smooth_expr(&mut pool, rng, N, 4);
        let i = rand::Rng::random_range(rng, 0..N);
        let x = random_point(rng, N, 1.0);
        let de = pool.derivative(e, i);
        let shifted = |t: f64| {
            let mut y = x.clone();
            y[i] += t;
            eval_f64(&pool, e, &y)
        };
        match (eval_f64(&pool, de, &x), central_difference(shifted, 1e-2)) {
            (Ok(a), Ok(b)) => worst = worse(worst, relative_error(a, b)),
            (Err(e), _) | (_, Err(e)) => return CheckResult::failed(name, e.to_string()),
        }
    }
    CheckResult::at_most(name, worst, tol.derivative, format!("{} expressions", sizes.expressions))
}

/// Every suite that applies to one configuration.
pub fn run_suites(ctx: &DunklContext, rng: &mut SampleRng, sizes: &SuiteSizes, tol: &Tolerances) -> Vec<CheckResult> {
    let sys = ctx.root_system();
    let mut out = sl2(ctx, sizes);
    out.push(commutativity(ctx, rng, sizes));
    out.push(two_laplacians(ctx, rng, sizes));
    out.push(equivariance(ctx, rng, sizes));
    for j in [1, 2] {
        out.extend(extension_independence(ctx, j, rng, sizes, tol));
    }
    out.push(route_agreement(ctx, rng, sizes, tol));
    out.push(zero_multiplicity(sys, rng, sizes, tol));
    out.extend(classical_reduction(ctx, rng, sizes, tol));
    out.push(flat_gjms(sys, rng, sizes, tol));
    out.push(chart_equivariance(ctx, rng, sizes, tol));
    out.push(symbol(ctx, rng, sizes, tol));
    out.extend(geometry(sys.n(), rng, sizes, tol));
    out.push(derivatives(rng, sizes, tol));
    out
}
