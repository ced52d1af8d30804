use std::process::ExitCode;
use std::time::Instant;

use conformal_dunkl::dunkl::{sl2_commutators, DunklContext};
use conformal_dunkl::rootsys::MultiplicityFunction;
use conformal_dunkl::sampling::rng;
use conformal_dunkl::verify::{self, CheckResult, SuiteSizes, Tolerances};

struct Criterion {
    id: u32,
    title: &'static str,
    checks: Vec<CheckResult>,
}

impl Criterion {
    fn report(&self) -> bool {
        let passed = self.checks.iter().all(|c| c.passed) && !self.checks.is_empty();
        let upper = self.checks.iter().filter(|c| !c.lower_bound);
        let worst = upper.clone().map(|c| c.residual).fold(0.0f64, |a, b| if b.is_nan() { b } else { a.max(b) });
        let lo = upper.clone().map(|c| c.tolerance).fold(f64::INFINITY, f64::min);
        let hi = upper.map(|c| c.tolerance).fold(0.0, f64::max);
        let tol = if lo == hi { format!("tolerance {lo:e}") } else { format!("tolerances {lo:e} to {hi:e}") };
        println!(
            "{} {:>2}. {} [{} checks, worst residual {:e}, {}]",
            if passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.checks.len(),
            worst,
            tol
        );
        for c in self.checks.iter().filter(|c| !c.passed) {
            println!("       {c}");
        }
        passed
    }
}

fn configurations() -> Vec<(String, DunklContext)> {
    [2, 3].into_iter().flat_map(verify::standard_configurations).collect()
}

fn main() -> ExitCode {
    let sizes = SuiteSizes::default();
    let tol = Tolerances::default();
    let mut r = rng(2024);
    let start = Instant::now();
    let mut criteria = Vec::new();

    let configs = configurations();

    let mut c = Vec::new();
    for (label, ctx) in &configs {
        c.extend(verify::sl2(ctx, &sizes).into_iter().take(1).map(|x| x.prefixed(label)));
    }
    criteria.push(Criterion { id: 1, title: "exact sl(2): [E,F] = H on monomials of degree <= 6", checks: c });

    let c = configs.iter().map(|(l, ctx)| verify::commutativity(ctx, &mut r, &sizes).prefixed(l)).collect();
    criteria.push(Criterion { id: 2, title: "Dunkl operators commute exactly", checks: c });

    let c = configs.iter().map(|(l, ctx)| verify::two_laplacians(ctx, &mut r, &sizes).prefixed(l)).collect();
    criteria.push(Criterion { id: 3, title: "sum and direct Dunkl Laplacians agree exactly", checks: c });

    let c = configs.iter().map(|(l, ctx)| verify::equivariance(ctx, &mut r, &sizes).prefixed(l)).collect();
    criteria.push(Criterion { id: 4, title: "Dunkl Laplacian commutes with every generator", checks: c });

    let chart_configs = verify::standard_configurations(2);

    let mut c = Vec::new();
    for (label, ctx) in &chart_configs {
        for j in [1, 2] {
            c.extend(verify::extension_independence(ctx, j, &mut r, &sizes, &tol).into_iter().map(|x| x.prefixed(label)));
        }
    }
    criteria.push(Criterion { id: 5, title: "extension independence at critical weight, dependence at w+1/2", checks: c });

    let c = chart_configs.iter().map(|(l, ctx)| verify::route_agreement(ctx, &mut r, &sizes, &tol).prefixed(l)).collect();
    criteria.push(Criterion { id: 6, title: "chart formula agrees with the ambient route", checks: c });

    let mut c = Vec::new();
    for (label, ctx) in &chart_configs {
        c.extend(verify::classical_reduction(ctx, &mut r, &sizes, &tol).map(|x| x.prefixed(label)));
    }
    for sys in verify::standard_systems(2) {
        c.push(verify::zero_multiplicity(&sys, &mut r, &sizes, &tol).prefixed(sys.name()));
    }
    criteria.push(Criterion { id: 7, title: "classical Dunkl and flat Laplacian reductions", checks: c });

    let c = verify::standard_systems(2)
        .iter()
        .map(|sys| verify::flat_gjms(sys, &mut r, &sizes, &tol).prefixed(sys.name()))
        .collect();
    criteria.push(Criterion { id: 8, title: "flat limit j=2 is the bi-Laplacian", checks: c });

    let c = (1..=3).flat_map(|n| verify::geometry(n, &mut r, &sizes, &tol)).collect();
    criteria.push(Criterion { id: 9, title: "root system, group, hyperplane and chart reflection geometry", checks: c });

    let c = vec![verify::derivatives(&mut r, &sizes, &tol)];
    criteria.push(Criterion { id: 10, title: "symbolic derivatives match central differences", checks: c });

    let mut all = true;
    for crit in &criteria {
        all &= crit.report();
    }

    let (_, ctx) = &configs[configs.len() - 1];
    let k = MultiplicityFunction::uniform(ctx.root_system(), conformal_dunkl::scalar::Exact::int(1));
    let report = sl2_commutators(&DunklContext::new(ctx.root_system().clone(), k), 3).expect("sl2 report");
    let holding: Vec<&str> = report.relations.iter().filter(|r| r.holds).map(|r| r.relation).collect();
    println!("sl(2) relations that hold: {}", holding.join(", "));
    println!("elapsed {:.1}s", start.elapsed().as_secs_f64());

    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
