//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Runs without the libtest harness so the lines always show.

use std::f64::consts::{E, PI};
use std::process::ExitCode;

use merofact_core::dirichlet::{self, Parity, SpectralModel};
use merofact_core::eulerops::{self, DEFAULT_CLUSTER_TOL};
use merofact_core::kurepa::{self, AVariant, Family, KVariant};
use merofact_core::meromorphic::{pp_contour, pp_symmetric, residue_contour, ContourSpec};
use merofact_core::specfun::{self, EULER_GAMMA};
use merofact_core::verify::{self, DEFAULT_SEED};
use merofact_core::{EvalConfig, Result};
use num_complex::Complex64;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

struct Line {
    label: String,
    residual: f64,
    tolerance: f64,
}

impl Line {
    fn new(label: impl Into<String>, residual: Result<f64>, tolerance: f64) -> Self {
        let residual = match residual {
            Ok(r) if !r.is_nan() => r,
            Ok(_) => f64::INFINITY,
            Err(e) => {
                println!("      error in check: {e}");
                f64::INFINITY
            }
        };
        Line { label: label.into(), residual, tolerance }
    }

    fn pass(&self) -> bool {
        self.residual <= self.tolerance
    }
}

/// Prints the criterion verdict followed by its individual checks.
fn report(number: u32, title: &str, lines: Vec<Line>) -> bool {
    let pass = lines.iter().all(Line::pass);
    println!("{} criterion {number:>2}: {title}", if pass { "PASS" } else { "FAIL" });
    for l in &lines {
        println!(
            "      [{}] {:<48} residual {:.3e}  tolerance {:.1e}",
            if l.pass() { "ok" } else { "!!" },
            l.label,
            l.residual,
            l.tolerance
        );
    }
    pass
}

fn max_abs<I: IntoIterator<Item = Result<f64>>>(items: I) -> Result<f64> {
    let mut w: f64 = 0.0;
    for x in items {
        w = w.max(x?);
    }
    Ok(w)
}

fn constants(cfg: &EvalConfig) -> bool {
    let l1 = kurepa::const_l1(cfg);
    let l2 = kurepa::const_l2(cfg);
    report(
        1,
        "Kurepa constants L1, L2",
        vec![
            Line::new("L1 vs 0.697174883", Ok((l1 - verify::L1_EIGHT_DIGITS).abs()), 1e-8),
            Line::new("L2 vs 0.403652337", Ok((l2 - verify::L2_EIGHT_DIGITS).abs()), 1e-8),
            Line::new("L1 vs Ei(1)/e", specfun::expint_ei(1.0, cfg).map(|ei| (l1 - ei / E).abs()), 1e-10),
            Line::new("L2 vs 1 + e*Ei(-1)", specfun::expint_ei(-1.0, cfg).map(|ei| (l2 - 1.0 - E * ei).abs()), 1e-10),
        ],
    )
}

fn gamma_principal_parts(cfg: &EvalConfig) -> bool {
    let h = kurepa::handle(Family::Gamma, cfg);
    let mut contour = Vec::new();
    let mut symmetric = Vec::new();
    for n in 0..=5i64 {
        let a = c(-n as f64);
        let closed = kurepa::pp_closed(Family::Gamma, n);
        contour.push(closed.clone().and_then(|v| Ok((pp_contour(&h, a, &ContourSpec::auto(&h, a))? - v).norm())));
        symmetric.push(closed.and_then(|v| Ok((pp_symmetric(&h, a, cfg)? - v).norm())));
    }
    report(
        2,
        "Gamma principal parts at 0..-5",
        vec![
            Line::new("closed vs contour", max_abs(contour), 1e-8),
            Line::new("closed vs symmetric", max_abs(symmetric), 1e-8),
            Line::new("closed at 0 equals -gamma", kurepa::pp_closed(Family::Gamma, 0).map(|v| (v + EULER_GAMMA).abs()), 1e-15),
        ],
    )
}

fn residue_tables(cfg: &EvalConfig) -> bool {
    let table: [(Family, &[i64]); 3] =
        [(Family::Gamma, &[0, -1, -2, -3, -4, -5]), (Family::K, &[-1, -3, -4, -5]), (Family::A, &[-2, -3, -4, -5])];
    let lines = table
        .iter()
        .map(|&(family, points)| {
            let h = kurepa::handle(family, cfg);
            let r = max_abs(points.iter().map(|&m| {
                let a = c(m as f64);
                Ok((residue_contour(&h, a, &ContourSpec::auto(&h, a))? - kurepa::res_closed_at(family, m)?).norm())
            }));
            Line::new(format!("{family} residues at {points:?}"), r, 1e-8)
        })
        .collect();
    report(3, "residue tables, closed vs contour", lines)
}

fn kurepa_anchors(cfg: &EvalConfig) -> bool {
    let exact = max_abs(verify::K_INTEGER_VALUES.iter().enumerate().map(|(i, &want)| {
        Ok((kurepa::kurepa(c(i as f64 + 1.0), KVariant::K, cfg)? - want).norm())
    }));
    let h = kurepa::handle(Family::K, cfg);
    let removable = pp_contour(&h, c(-2.0), &ContourSpec::auto(&h, c(-2.0))).map(|v| (v - 1.0).norm());
    let points = verify::oracle_points(DEFAULT_SEED);
    report(
        4,
        "K anchors and integral oracle",
        vec![
            Line::new("K(1..5) = 1, 2, 4, 10, 34 exactly", exact, 0.0),
            Line::new("contour p.p. of K at -2 equals 1", removable, 1e-8),
            Line::new("K vs integral oracle, 10 points", verify::oracle_residual(false, &points, cfg), 1e-8),
        ],
    )
}

fn alternating_anchors(cfg: &EvalConfig) -> bool {
    let exact = max_abs(verify::A_INTEGER_VALUES.iter().enumerate().map(|(i, &want)| {
        Ok((kurepa::altkurepa(c(i as f64 + 1.0), AVariant::A, cfg)? - want).norm())
    }));
    let points = verify::oracle_points(DEFAULT_SEED);
    report(
        5,
        "A anchors and integral oracle",
        vec![
            Line::new("A(1..5) = 1, 1, 5, 19, 101 exactly", exact, 0.0),
            Line::new("A vs integral oracle, 10 points", verify::oracle_residual(true, &points, cfg), 1e-8),
        ],
    )
}

fn functional_equations(cfg: &EvalConfig) -> bool {
    let grid = verify::kurepa_grid(DEFAULT_SEED);
    report(
        6,
        "functional equations on the seeded grid",
        vec![
            Line::new("K(z) - K(z-1) = Gamma(z)", verify::k_functional_residual(KVariant::K, &grid, cfg), 1e-9),
            Line::new("K1(z) - K1(z-1) = Gamma(z)", verify::k_functional_residual(KVariant::K1, &grid, cfg), 1e-9),
            Line::new("A(z) + A(z-1) = Gamma(z+1)", verify::a_functional_residual(AVariant::A, &grid, cfg), 1e-9),
            Line::new("A1(z) + A1(z-1) = Gamma(z+1)", verify::a_functional_residual(AVariant::A1, &grid, cfg), 1e-9),
            Line::new("zeta(s) = chi(s) zeta(1-s)", verify::lfe_max_residual(Parity::Plus, 1, cfg), 1e-8),
            Line::new("beta functional equation", verify::lfe_max_residual(Parity::Minus, 4, cfg), 1e-8),
        ],
    )
}

fn zeta_anchors(cfg: &EvalConfig) -> bool {
    let h = dirichlet::handles(cfg).into_iter().next().expect("zeta handle");
    let a = c(1.0);
    let sym = pp_symmetric(&h, a, cfg).map(|v| (v - EULER_GAMMA).norm());
    let con = pp_contour(&h, a, &ContourSpec::auto(&h, a)).map(|v| (v - EULER_GAMMA).norm());
    let anchor = dirichlet::chi(c(2.0), cfg)
        .and_then(|x| Ok(x * dirichlet::zeta(c(-1.0), cfg)?))
        .map(|v| (v - PI * PI / 6.0).norm());
    report(
        7,
        "zeta principal part at 1 and chi anchor",
        vec![
            Line::new("p.p. zeta(1) = gamma, symmetric", sym, 1e-8),
            Line::new("p.p. zeta(1) = gamma, contour", con, 1e-8),
            Line::new("chi(2) zeta(-1) = zeta(2)", anchor, 1e-10),
        ],
    )
}

fn casimir(cfg: &EvalConfig) -> bool {
    let lines = ["quadratic", "linear", "shifted"]
        .into_iter()
        .map(|name| {
            let (want, tol) = verify::casimir_expected(name).expect("built-in model");
            let r = SpectralModel::builtin(name).and_then(|m| dirichlet::casimir_energy(&m, cfg)).map(|v| (v - want).norm());
            Line::new(format!("{name} model, expected {want:.12}"), r, tol)
        })
        .collect();
    report(8, "Casimir energies", lines)
}

fn differential_identities(cfg: &EvalConfig) -> bool {
    report(
        9,
        "differential identities by finite differences",
        vec![
            Line::new("psi ODE", verify::psi_ode_residual(cfg), 1e-6),
            Line::new("H1 algebraic differential equation", verify::h1_ade_residual(cfg), 1e-5),
        ],
    )
}

fn euler_solver() -> bool {
    let structure = (|| -> Result<(bool, bool, bool)> {
        let eq = eulerops::parse_equation(verify::EULER_EXAMPLE)?;
        let sol = eulerops::solve(&eq, false, DEFAULT_CLUSTER_TOL)?;
        let coeffs_ok = sol.delta.integer_coeffs() == Some(vec![2, -3, 0, 1]);
        let roots: Vec<_> = sol.roots.entries.iter().map(|e| (e.root, e.multiplicity, e.snapped)).collect();
        let roots_ok = roots == vec![(c(1.0), 2, true), (c(-2.0), 1, true)];
        let basis_ok = sol.basis.rendered == "c1*x + c2*x*ln(x) + c3*x^-2";
        Ok((coeffs_ok, roots_ok, basis_ok))
    })();
    let flag = |f: fn(&(bool, bool, bool)) -> bool| structure.as_ref().map(|s| if f(s) { 0.0 } else { 1.0 }).map_err(Clone::clone);
    report(
        10,
        "Euler equation solver",
        vec![
            Line::new("delta polynomial [2, -3, 0, 1] exactly", flag(|s| s.0), 0.0),
            Line::new("roots {1 x2, -2} snapped", flag(|s| s.1), 0.0),
            Line::new("basis c1*x + c2*x*ln(x) + c3*x^-2", flag(|s| s.2), 0.0),
            Line::new("basis residual of the worked example", verify::euler_example_residual(), 1e-10),
            Line::new("100 seeded random equations", verify::euler_random_residual(DEFAULT_SEED, 100), 1e-8),
        ],
    )
}

fn product_rule(cfg: &EvalConfig) -> bool {
    report(
        11,
        "principal part of a product",
        vec![
            Line::new("z, z^2, exp(z) times Gamma at 0", verify::pp_product_listed_residual(cfg), 1e-8),
            Line::new("20 random polynomials times Gamma or 1/z^2", verify::pp_product_random_residual(DEFAULT_SEED, 20, cfg), 1e-8),
        ],
    )
}

fn main() -> ExitCode {
    let cfg = EvalConfig::default();
    let results = [
        constants(&cfg),
        gamma_principal_parts(&cfg),
        residue_tables(&cfg),
        kurepa_anchors(&cfg),
        alternating_anchors(&cfg),
        functional_equations(&cfg),
        zeta_anchors(&cfg),
        casimir(&cfg),
        differential_identities(&cfg),
        euler_solver(),
        product_rule(&cfg),
    ];
    let failed = results.iter().filter(|&&p| !p).count();
    println!("acceptance: {} of {} criteria pass", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
