//! Kurepa's function K(z), the alternating function A(z), their series
//! companions K1 and A1, and closed forms for residues and principal parts.
//!
//! ```text
//! K(z)  = ∫₀^∞ e^{−t} (t^z − 1)/(t − 1) dt,        K(z) − K(z−1) = Γ(z)
//! K1(z) = Σ_{n≥0} Γ(z − n),                        K = L1 − (π/e)·cot(πz) + K1
//! A(z)  = ∫₀^∞ e^{−t} (t^{z+1} − (−1)^z t)/(t + 1) dt,   A(z) + A(z−1) = Γ(z+1)
//! A1(z) = Σ_{n≥0} (−1)ⁿ Γ(z + 1 − n),               A = −L2·(−1)^z + πe/sin(πz) + A1
//! ```
//!
//! `(−1)^z` is taken as `exp(iπz)`, so A is complex for real non-integer z.
//! K has simple poles at −1 and −n (n ≥ 3) and a removable singularity at
//! −2; A has simple poles at −n (n ≥ 2). K1 and A1 have poles at every integer.

use std::f64::consts::{E, PI};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::meromorphic::{FunctionHandle, PoleSet};
use crate::quadrature;
use crate::specfun::{self, cot_pi, dist_to_integers, factorial, sin_pi, EULER_GAMMA};

/// Below this distance from a pole, K and A refuse to evaluate.
pub const NEAR_POLE_RADIUS: f64 = 1e-3;
// Around regular integers the Slavić route cancels two poles; evaluate by
// Cauchy's formula on a circle instead.
const SMOOTHING_ZONE: f64 = 0.05;
const SMOOTHING_RADIUS: f64 = 0.25;
const SMOOTHING_NODES: usize = 32;
const SERIES_THRESHOLD: f64 = 1e-17;
const CONST_THRESHOLD: f64 = 1e-16;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KurepaConstants {
    /// L1 = Ei(1)/e
    pub l1: f64,
    /// L2 = 1 + e·Ei(−1)
    pub l2: f64,
    pub gamma_euler: f64,
}

/// Constants computed once with the default configuration.
pub fn constants() -> &'static KurepaConstants {
    static TABLE: OnceLock<KurepaConstants> = OnceLock::new();
    TABLE.get_or_init(|| {
        let cfg = EvalConfig::default();
        KurepaConstants { l1: const_l1(&cfg), l2: const_l2(&cfg), gamma_euler: EULER_GAMMA }
    })
}

/// Σ_{n≥1} sign(n)/(n!·n), stopping once a term drops below 1e−16 of
/// `offset + partial sum` or after `max_terms` terms.
fn factorial_reciprocal_series(alternating: bool, offset: f64, cfg: &EvalConfig) -> f64 {
    let mut sum = 0.0;
    let mut inv_fact = 1.0;
    for n in 1..=cfg.max_terms {
        inv_fact /= n as f64;
        let mut term = inv_fact / n as f64;
        if alternating && n % 2 == 0 {
            term = -term;
        }
        sum += term;
        if term.abs() < CONST_THRESHOLD * (offset + sum).abs() {
            break;
        }
    }
    sum
}

/// L1 = (γ + Σ 1/(n!·n))/e.
pub fn const_l1(cfg: &EvalConfig) -> f64 {
    (EULER_GAMMA + factorial_reciprocal_series(false, EULER_GAMMA, cfg)) / E
}

/// L2 = 1 + eγ − e·Σ (−1)^{n−1}/(n!·n).
pub fn const_l2(cfg: &EvalConfig) -> f64 {
    let s = factorial_reciprocal_series(true, EULER_GAMMA, cfg);
    1.0 + E * EULER_GAMMA - E * s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KVariant {
    K,
    K1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AVariant {
    A,
    A1,
}

/// Functions with closed-form principal parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Gamma,
    K,
    K1,
    A,
    A1,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::Gamma, Family::K, Family::K1, Family::A, Family::A1];

    pub fn name(self) -> &'static str {
        match self {
            Family::Gamma => "gamma",
            Family::K => "K",
            Family::K1 => "K1",
            Family::A => "A",
            Family::A1 => "A1",
        }
    }

    /// Whether `pp_closed`/`res_closed` index `n` refers to the point `−n`
    /// (Γ, K, A) rather than `n` itself (K1, A1).
    pub fn index_is_negated(self) -> bool {
        matches!(self, Family::Gamma | Family::K | Family::A)
    }

    pub fn point_for_index(self, n: i64) -> i64 {
        if self.index_is_negated() {
            -n
        } else {
            n
        }
    }

    pub fn poles(self) -> PoleSet {
        match self {
            Family::Gamma => PoleSet::non_positive_integers(),
            Family::K => PoleSet::Integers { min: None, max: Some(-1), except: vec![-2] },
            Family::A => PoleSet::Integers { min: None, max: Some(-2), except: Vec::new() },
            Family::K1 | Family::A1 => PoleSet::all_integers(),
        }
    }

    pub fn is_pole(self, m: i64) -> bool {
        match self {
            Family::Gamma => m <= 0,
            Family::K => m == -1 || m <= -3,
            Family::A => m <= -2,
            Family::K1 | Family::A1 => true,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gamma" | "Gamma" => Ok(Family::Gamma),
            "K" | "k" => Ok(Family::K),
            "K1" | "k1" => Ok(Family::K1),
            "A" | "a" => Ok(Family::A),
            "A1" | "a1" => Ok(Family::A1),
            _ => Err(Error::Unsupported(format!("unknown family {s:?}"))),
        }
    }
}

fn integer_at(z: Complex64) -> Option<i64> {
    if z.im == 0.0 && z.re.fract() == 0.0 && z.re.abs() < 1e15 {
        Some(z.re as i64)
    } else {
        None
    }
}

/// Σ_{i<n} i!
fn factorial_sum(n: i64) -> f64 {
    (0..n.max(0) as u32).map(factorial).sum()
}

/// Σ_{i=1}^{n} (−1)^{n−i} i!
fn alternating_factorial_sum(n: i64) -> f64 {
    (1..=n.max(0) as u32)
        .map(|i| if (n - i as i64) % 2 == 0 { factorial(i) } else { -factorial(i) })
        .sum()
}

/// Σ_{n≥0} sign^n Γ(start − n), with Γ(start − n) from a running product.
fn gamma_tail_sum(start: Complex64, alternating: bool, cfg: &EvalConfig) -> Result<Complex64> {
    let mut term = specfun::gamma_unchecked(start);
    let mut sum = term;
    let mut quiet = 0;
    for n in 1..cfg.max_terms {
        term /= start - n as f64;
        let signed = if alternating && n % 2 == 1 { -term } else { term };
        sum += signed;
        if !(sum.re.is_finite() && sum.im.is_finite()) {
            return Err(Error::NonFinite(start));
        }
        if term.norm() < SERIES_THRESHOLD * sum.norm() {
            quiet += 1;
            if quiet == 3 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::ConvergenceFailure { terms: cfg.max_terms })
}

fn check_argument(z: Complex64) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("non-finite argument {z}")))
    }
}

fn refuse_near(family: Family, z: Complex64, radius: f64) -> Result<()> {
    if family.poles().is_near(z, radius) {
        Err(Error::PoleProximity { point: z, radius })
    } else {
        Ok(())
    }
}

/// Cauchy's formula about the integer `center` for a point inside the circle.
fn cauchy_smoothed<F>(center: f64, z: Complex64, f: F) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let mut acc = c(0.0);
    for j in 0..SMOOTHING_NODES {
        let (s, co) = (2.0 * PI * j as f64 / SMOOTHING_NODES as f64).sin_cos();
        let offset = Complex64::new(co, s) * SMOOTHING_RADIUS;
        let w = center + offset;
        acc += f(w)? * offset / (w - z);
    }
    Ok(acc / SMOOTHING_NODES as f64)
}

fn k1_series(z: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    gamma_tail_sum(z, false, cfg)
}

fn a1_series(z: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    gamma_tail_sum(z + 1.0, true, cfg)
}

fn k_slavic(z: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    Ok(constants().l1 - PI / E * cot_pi(z) + k1_series(z, cfg)?)
}

fn a_slavic(z: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    let branch = (Complex64::i() * PI * z).exp();
    Ok(-constants().l2 * branch + PI * E / sin_pi(z) + a1_series(z, cfg)?)
}

/// Kurepa's function K or its series companion K1.
pub fn kurepa(z: Complex64, variant: KVariant, cfg: &EvalConfig) -> Result<Complex64> {
    check_argument(z)?;
    match variant {
        KVariant::K1 => {
            if dist_to_integers(z) <= cfg.pole_guard_radius {
                return Err(Error::PoleProximity { point: z, radius: cfg.pole_guard_radius });
            }
            k1_series(z, cfg)
        }
        KVariant::K => {
            refuse_near(Family::K, z, cfg.pole_guard_radius.max(NEAR_POLE_RADIUS))?;
            match integer_at(z) {
                Some(n) if n >= 0 => return Ok(c(factorial_sum(n))),
                Some(-2) => return Ok(c(1.0)),
                _ => {}
            }
            let n = z.re.round();
            if dist_to_integers(z) < SMOOTHING_ZONE && !Family::K.is_pole(n as i64) {
                return cauchy_smoothed(n, z, |w| k_slavic(w, cfg));
            }
            k_slavic(z, cfg)
        }
    }
}

/// The alternating function A or its series companion A1.
pub fn altkurepa(z: Complex64, variant: AVariant, cfg: &EvalConfig) -> Result<Complex64> {
    check_argument(z)?;
    match variant {
        AVariant::A1 => {
            if dist_to_integers(z) <= cfg.pole_guard_radius {
                return Err(Error::PoleProximity { point: z, radius: cfg.pole_guard_radius });
            }
            a1_series(z, cfg)
        }
        AVariant::A => {
            refuse_near(Family::A, z, cfg.pole_guard_radius.max(NEAR_POLE_RADIUS))?;
            match integer_at(z) {
                Some(n) if n >= 0 => return Ok(c(alternating_factorial_sum(n))),
                Some(-1) => return Ok(c(1.0)),
                _ => {}
            }
            let n = z.re.round();
            if dist_to_integers(z) < SMOOTHING_ZONE && !Family::A.is_pole(n as i64) {
                return cauchy_smoothed(n, z, |w| a_slavic(w, cfg));
            }
            a_slavic(z, cfg)
        }
    }
}

/// ∫₀^∞ integrand, split at 1 and `max(10, 2|z|+20)`.
fn oracle_integral<F>(z: Complex64, cfg: &EvalConfig, f: F) -> Result<Complex64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    if !(z.re > 0.0) {
        return Err(Error::Domain(format!("integral representation needs Re z > 0, got {z}")));
    }
    let split = (2.0 * z.norm() + 20.0).max(10.0);
    let abs_tol = 1e-14;
    let panels = cfg.max_terms.max(100);
    let head = quadrature::integrate(&f, 0.0, 1.0, abs_tol, cfg.rel_tol, panels)?;
    let body = quadrature::integrate(&f, 1.0, split, abs_tol, cfg.rel_tol, panels)?;
    let tail = quadrature::integrate_to_infinity(&f, split, split, cfg.rel_tol, panels)?;
    Ok(head + body + tail)
}

/// K(z) from its defining integral, for Re z > 0.
pub fn kurepa_integral_oracle(z: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    check_argument(z)?;
    oracle_integral(z, cfg, |t| {
        let u = t - 1.0;
        let ratio = if u.abs() < 1e-3 {
            // binomial series of ((1+u)^z − 1)/u
            let c1 = z;
            let c2 = c1 * (z - 1.0) / 2.0;
            let c3 = c2 * (z - 2.0) / 3.0;
            let c4 = c3 * (z - 3.0) / 4.0;
            c1 + u * (c2 + u * (c3 + u * c4))
        } else {
            ((z * t.ln()).exp() - 1.0) / u
        };
        Ok(ratio * (-t).exp())
    })
}

/// A(z) from its defining integral with `(−1)^z = exp(iπz)`, for Re z > 0.
pub fn altkurepa_integral_oracle(z: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    check_argument(z)?;
    let branch = (Complex64::i() * PI * z).exp();
    oracle_integral(z, cfg, move |t| {
        let power = if t == 0.0 { c(0.0) } else { ((z + 1.0) * t.ln()).exp() };
        Ok((power - branch * t) * ((-t).exp() / (t + 1.0)))
    })
}

fn harmonic(n: i64) -> f64 {
    (1..=n).map(|k| 1.0 / k as f64).sum()
}

/// ψ(n) for a positive integer n.
fn digamma_at(n: i64) -> f64 {
    -EULER_GAMMA + harmonic(n - 1)
}

fn index_error(family: Family, what: &str, n: i64) -> Error {
    Error::Index(format!("{what} of {family} is not defined at index {n}"))
}

/// Closed-form principal part (c₀) of `family` at the integer point `m`.
/// At regular integers this is the function value.
pub fn pp_closed_at(family: Family, m: i64) -> Result<f64> {
    let l = constants();
    Ok(match family {
        Family::Gamma => {
            if m > 0 {
                factorial((m - 1) as u32)
            } else {
                let n = -m;
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                sign * (-EULER_GAMMA + harmonic(n)) / factorial(n as u32)
            }
        }
        Family::K => {
            if m >= 0 {
                factorial_sum(m)
            } else {
                let n = -m;
                (0..n)
                    .map(|i| {
                        let sign = if i % 2 == 0 { -1.0 } else { 1.0 };
                        sign * digamma_at(i + 1) / factorial(i as u32)
                    })
                    .sum()
            }
        }
        Family::A => {
            if m >= 0 {
                alternating_factorial_sum(m)
            } else {
                let n = -m;
                let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
                let s: f64 = (1..n).map(|i| digamma_at(i) / factorial((i - 1) as u32)).sum();
                sign * (1.0 - s)
            }
        }
        Family::K1 => pp_closed_at(Family::K, m)? - l.l1,
        Family::A1 => {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            sign * l.l2 + pp_closed_at(Family::A, m)?
        }
    })
}

/// Closed-form principal part by family index: Γ, K and A at `−n` (n ≥ 0),
/// K1 and A1 at `n`. Γ additionally accepts negative `n`, giving Γ(−n).
pub fn pp_closed(family: Family, n: i64) -> Result<f64> {
    match family {
        Family::K | Family::A if n < 0 => Err(index_error(family, "principal part", n)),
        _ => pp_closed_at(family, family.point_for_index(n)),
    }
}

/// Closed-form residue of `family` at the integer pole `m`.
pub fn res_closed_at(family: Family, m: i64) -> Result<f64> {
    if !family.is_pole(m) {
        return Err(Error::Index(format!("{family} has no pole at {m}")));
    }
    Ok(match family {
        Family::Gamma => {
            let n = -m;
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            sign / factorial(n as u32)
        }
        Family::K => {
            let n = -m;
            if n == 1 {
                -1.0
            } else {
                (2..n)
                    .map(|k| {
                        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                        sign / factorial(k as u32)
                    })
                    .sum()
            }
        }
        Family::A => {
            let n = -m;
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            sign * (0..=n - 2).map(|k| 1.0 / factorial(k as u32)).sum::<f64>()
        }
        Family::K1 => res_closed_at(Family::K, m).unwrap_or(0.0) + 1.0 / E,
        Family::A1 => {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            res_closed_at(Family::A, m).unwrap_or(0.0) - sign * E
        }
    })
}

/// Closed-form residue by family index, same convention as [`pp_closed`].
pub fn res_closed(family: Family, n: i64) -> Result<f64> {
    res_closed_at(family, family.point_for_index(n)).map_err(|_| index_error(family, "residue", n))
}

/// Evaluates any member of the family.
pub fn eval_family(family: Family, z: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    match family {
        Family::Gamma => specfun::gamma(z, cfg),
        Family::K => kurepa(z, KVariant::K, cfg),
        Family::K1 => kurepa(z, KVariant::K1, cfg),
        Family::A => altkurepa(z, AVariant::A, cfg),
        Family::A1 => altkurepa(z, AVariant::A1, cfg),
    }
}

/// A function handle carrying the closed-form principal parts and residues
/// at integer points.
pub fn handle(family: Family, cfg: &EvalConfig) -> FunctionHandle {
    let cfg = *cfg;
    FunctionHandle::new(family.name(), family.poles(), move |z| eval_family(family, z, &cfg))
        .with_closed_pp(move |a| integer_at(a).and_then(|m| pp_closed_at(family, m).ok()).map(c))
        .with_closed_res(move |a| integer_at(a).and_then(|m| res_closed_at(family, m).ok()).map(c))
}

pub fn handles(cfg: &EvalConfig) -> Vec<FunctionHandle> {
    [Family::K, Family::K1, Family::A, Family::A1].iter().map(|&f| handle(f, cfg)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::meromorphic::{pp_contour, pp_symmetric, residue_contour, ContourSpec};
    use crate::specfun::expint_ei;

    fn cfg() -> EvalConfig {
        EvalConfig::default()
    }

    #[test]
    fn l1_matches_exponential_integral() {
        let l1 = const_l1(&cfg());
        assert!((l1 - expint_ei(1.0, &cfg()).unwrap() / E).abs() < 1e-10);
        assert!((l1 - 0.697_174_883).abs() < 1e-8);
    }

    #[test]
    fn l2_matches_exponential_integral() {
        let l2 = const_l2(&cfg());
        assert!((l2 - (1.0 + E * expint_ei(-1.0, &cfg()).unwrap())).abs() < 1e-10);
        assert!((l2 - 0.403_652_637_676_8).abs() < 1e-12);
    }

    #[test]
    fn truncated_l1_is_close() {
        let short = EvalConfig { max_terms: 5, ..cfg() };
        let d = (const_l1(&short) - const_l1(&cfg())).abs();
        assert!(d > 0.0 && d < 1e-3);
    }

    #[test]
    fn alternating_partial_sums_bracket_l2() {
        let limit = const_l2(&cfg());
        let lo = const_l2(&EvalConfig { max_terms: 6, ..cfg() });
        let hi = const_l2(&EvalConfig { max_terms: 7, ..cfg() });
        assert!(lo.min(hi) <= limit && limit <= lo.max(hi));
    }

    #[test]
    fn integer_values() {
        assert_eq!(kurepa(c(4.0), KVariant::K, &cfg()).unwrap(), c(10.0));
        assert_eq!(kurepa(c(-2.0), KVariant::K, &cfg()).unwrap(), c(1.0));
        assert_eq!(altkurepa(c(4.0), AVariant::A, &cfg()).unwrap(), c(19.0));
        assert_eq!(altkurepa(c(0.0), AVariant::A, &cfg()).unwrap(), c(0.0));
    }

    #[test]
    fn k_at_half_matches_oracle() {
        let k = kurepa(c(0.5), KVariant::K, &cfg()).unwrap();
        let o = kurepa_integral_oracle(c(0.5), &cfg()).unwrap();
        assert!((k - o).norm() < 1e-8, "{k} vs {o}");
        assert!((k.re - 0.562_186_545_898_826_9).abs() < 1e-10);
    }

    #[test]
    fn a_at_half_matches_oracle() {
        let a = altkurepa(c(0.5), AVariant::A, &cfg()).unwrap();
        let o = altkurepa_integral_oracle(c(0.5), &cfg()).unwrap();
        assert!((a - o).norm() < 1e-8, "{a} vs {o}");
        assert!((a - Complex64::new(0.457_066_496_193_977_2, -0.403_652_637_676_8)).norm() < 1e-9);
    }

    #[test]
    fn oracle_integer_anchors() {
        assert!((kurepa_integral_oracle(c(1.0), &cfg()).unwrap() - 1.0).norm() < 1e-9);
        assert!((kurepa_integral_oracle(c(3.0), &cfg()).unwrap() - 4.0).norm() < 1e-9);
        assert!((altkurepa_integral_oracle(c(2.0), &cfg()).unwrap() - 1.0).norm() < 1e-9);
        assert!((altkurepa_integral_oracle(c(3.0), &cfg()).unwrap() - 5.0).norm() < 1e-9);
        let fe = altkurepa_integral_oracle(c(1.5), &cfg()).unwrap()
            + altkurepa_integral_oracle(c(0.5), &cfg()).unwrap();
        assert!((fe - specfun::gamma(c(2.5), &cfg()).unwrap()).norm() < 1e-8);
    }

    #[test]
    fn oracle_rejects_left_half_plane() {
        assert!(matches!(kurepa_integral_oracle(c(-0.5), &cfg()), Err(Error::Domain(_))));
        assert!(matches!(altkurepa_integral_oracle(c(0.0), &cfg()), Err(Error::Domain(_))));
    }

    #[test]
    fn near_integer_smoothing_is_continuous() {
        for n in [-2.0, 0.0, 1.0, 3.0] {
            let exact = kurepa(c(n), KVariant::K, &cfg()).unwrap();
            let near = kurepa(c(n + 1e-6), KVariant::K, &cfg()).unwrap();
            assert!((exact - near).norm() < 1e-4, "K at {n}: {exact} vs {near}");
        }
        for n in [-1.0, 0.0, 2.0] {
            let exact = altkurepa(c(n), AVariant::A, &cfg()).unwrap();
            let near = altkurepa(c(n - 1e-6), AVariant::A, &cfg()).unwrap();
            assert!((exact - near).norm() < 1e-4, "A at {n}: {exact} vs {near}");
        }
    }

    #[test]
    fn refuses_near_poles() {
        for z in [-1.0, -3.0 + 5e-4, -4.0] {
            assert!(matches!(kurepa(c(z), KVariant::K, &cfg()), Err(Error::PoleProximity { .. })));
        }
        assert!(matches!(altkurepa(c(-2.0), AVariant::A, &cfg()), Err(Error::PoleProximity { .. })));
        assert!(matches!(kurepa(c(2.0), KVariant::K1, &cfg()), Err(Error::PoleProximity { .. })));
        assert!(kurepa(c(2.0 + 1e-6), KVariant::K1, &cfg()).is_ok());
        assert!(kurepa(c(-3.0 + 2e-3), KVariant::K, &cfg()).is_ok());
    }

    #[test]
    fn functional_equations() {
        for z in [Complex64::new(0.3, 0.4), Complex64::new(-2.6, -1.1), Complex64::new(3.7, 0.0)] {
            let g = specfun::gamma(z, &cfg()).unwrap();
            let gp = specfun::gamma(z + 1.0, &cfg()).unwrap();
            for v in [KVariant::K, KVariant::K1] {
                let r = kurepa(z, v, &cfg()).unwrap() - kurepa(z - 1.0, v, &cfg()).unwrap() - g;
                assert!(r.norm() < 1e-9 * (1.0 + g.norm()), "{v:?} at {z}: {r}");
            }
            for v in [AVariant::A, AVariant::A1] {
                let r = altkurepa(z, v, &cfg()).unwrap() + altkurepa(z - 1.0, v, &cfg()).unwrap() - gp;
                assert!(r.norm() < 1e-9 * (1.0 + gp.norm()), "{v:?} at {z}: {r}");
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        assert!((pp_closed(Family::Gamma, 3).unwrap() + 0.209_352_944_7).abs() < 1e-10);
        assert!((pp_closed(Family::Gamma, 1).unwrap() - (EULER_GAMMA - 1.0)).abs() < 1e-15);
        assert!((pp_closed(Family::K, 1).unwrap() - EULER_GAMMA).abs() < 1e-15);
        assert!((pp_closed(Family::K, 2).unwrap() - 1.0).abs() < 1e-15);
        assert!((pp_closed(Family::K, 3).unwrap() - (0.25 + EULER_GAMMA / 2.0)).abs() < 1e-15);
        assert!((pp_closed(Family::A, 2).unwrap() + 1.0 + EULER_GAMMA).abs() < 1e-15);
        assert_eq!(pp_closed(Family::Gamma, -4).unwrap(), 6.0);
        assert!(matches!(pp_closed(Family::K, -1), Err(Error::Index(_))));
        assert_eq!(res_closed(Family::K, 1).unwrap(), -1.0);
        assert!((res_closed(Family::A, 4).unwrap() - 2.5).abs() < 1e-15);
        assert!(matches!(res_closed(Family::K, 2), Err(Error::Index(_))));
        assert!(matches!(res_closed(Family::A, 1), Err(Error::Index(_))));
    }

    #[test]
    fn closed_forms_match_contour() {
        let cases = [
            (Family::Gamma, vec![0, -1, -2, -3]),
            (Family::K, vec![-1, -3, -4]),
            (Family::A, vec![-2, -3, -4]),
            (Family::K1, vec![-2, -1, 0, 2]),
            (Family::A1, vec![-3, -1, 0, 1]),
        ];
        for (family, points) in cases {
            let h = handle(family, &cfg());
            for m in points {
                let a = c(m as f64);
                let spec = ContourSpec::auto(&h, a);
                let pp = pp_contour(&h, a, &spec).unwrap();
                let res = residue_contour(&h, a, &spec).unwrap();
                let want_pp = pp_closed_at(family, m).unwrap();
                let want_res = res_closed_at(family, m).unwrap();
                assert!((pp - want_pp).norm() < 1e-8, "pp {family} at {m}: {pp} vs {want_pp}");
                assert!((res - want_res).norm() < 1e-8, "res {family} at {m}: {res} vs {want_res}");
            }
        }
    }

    #[test]
    fn symmetric_limit_on_k_handle() {
        let h = handle(Family::K, &cfg());
        let v = pp_symmetric(&h, c(-3.0), &cfg()).unwrap();
        assert!((v - pp_closed(Family::K, 3).unwrap()).norm() < 1e-7, "{v}");
        let a = handle(Family::A, &cfg());
        let v = pp_symmetric(&a, c(-2.0), &cfg()).unwrap();
        assert!((v - pp_closed(Family::A, 2).unwrap()).norm() < 1e-7, "{v}");
    }

    #[test]
    fn family_parsing() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("L".parse::<Family>().is_err());
    }
}
