//! Riemann ζ, Dirichlet η and β, the functional-equation factor χ, and
//! spectral zeta models with their Casimir energies.
//!
//! ζ uses Hasse's globally convergent series
//! `ζ(s) = (1 − 2^{1−s})^{−1} Σ_n 2^{−n−1} Σ_k (−1)^k C(n,k) (k+1)^{−s}`;
//! η and β use the Cohen–Rodriguez Villegas–Zagier acceleration of their
//! alternating series, so η is an independent route to ζ. For `Re s < −2.5`
//! all three go through their reflection formulas, where the direct series
//! lose digits to cancellation.

use std::f64::consts::{LN_2, PI};
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::meromorphic::{pp_contour, pp_symmetric, ContourSpec, FunctionHandle, PoleSet};
use crate::specfun::{cos_pi, gamma, sin_pi, EULER_GAMMA};

const REFLECT_BELOW: f64 = -2.5;
const DEGENERATE_RADIUS: f64 = 1e-3;
const SMOOTHING_RADIUS: f64 = 0.05;
const LFE_SMOOTHING_ZONE: f64 = 0.01;
const LFE_SMOOTHING_RADIUS: f64 = 0.1;
const SMOOTHING_NODES: usize = 32;
const HASSE_MAX_TERMS: usize = 400;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn finite(s: Complex64) -> Result<()> {
    if s.re.is_finite() && s.im.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("non-finite argument {s}")))
    }
}

/// Cauchy's formula for `f(z)` from a circle about `center` that encloses `z`.
fn cauchy_mean<F>(center: Complex64, radius: f64, z: Complex64, f: F) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let mut acc = c(0.0);
    for j in 0..SMOOTHING_NODES {
        let (sn, cs) = (2.0 * PI * j as f64 / SMOOTHING_NODES as f64).sin_cos();
        let offset = Complex64::new(cs, sn) * radius;
        let w = center + offset;
        acc += f(w)? * offset / (w - z);
    }
    Ok(acc / SMOOTHING_NODES as f64)
}

/// The outer Hasse sum `Σ_n 2^{−n−1} Σ_k (−1)^k C(n,k)(k+1)^{−s}`, i.e. η(s).
fn hasse_sum(s: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    let cap = cfg.max_terms.min(HASSE_MAX_TERMS);
    let mut powers: Vec<Complex64> = Vec::with_capacity(cap);
    let mut sum = c(0.0);
    let mut quiet = 0;
    let mut scale = 0.5;
    for n in 0..cap {
        powers.push((-s * ((n + 1) as f64).ln()).exp());
        let mut binom = 1.0;
        let mut inner = c(0.0);
        let mut magnitude = 0.0;
        for (k, a) in powers.iter().enumerate() {
            if k > 0 {
                binom = binom * (n + 1 - k) as f64 / k as f64;
            }
            let t = *a * binom;
            magnitude += t.norm();
            if k % 2 == 0 {
                inner += t;
            } else {
                inner -= t;
            }
        }
        let term = inner * scale;
        let noise = 8.0 * f64::EPSILON * magnitude * scale;
        scale *= 0.5;
        sum += term;
        if term.norm() <= (1e-17 * sum.norm()).max(noise) {
            quiet += 1;
            if quiet == 3 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::ConvergenceFailure { terms: cap })
}

/// Nearest zero of `1 − 2^{1−s}` other than `s = 1`, if within `radius`.
fn degenerate_center(s: Complex64, radius: f64) -> Option<Complex64> {
    let step = 2.0 * PI / LN_2;
    let k = (s.im / step).round();
    if k == 0.0 {
        return None;
    }
    let center = Complex64::new(1.0, k * step);
    ((s - center).norm() < radius).then_some(center)
}

fn zeta_hasse(s: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    let denom = 1.0 - (LN_2 * (1.0 - s)).exp();
    Ok(hasse_sum(s, cfg)? / denom)
}

/// Riemann ζ(s), s ≠ 1.
pub fn zeta(s: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    finite(s)?;
    if (s - 1.0).norm() <= cfg.pole_guard_radius {
        return Err(Error::PoleProximity { point: s, radius: cfg.pole_guard_radius });
    }
    if s.re < REFLECT_BELOW {
        return Ok(chi(s, cfg)? * zeta(1.0 - s, cfg)?);
    }
    if let Some(center) = degenerate_center(s, DEGENERATE_RADIUS) {
        return cauchy_mean(center, SMOOTHING_RADIUS, s, |w| zeta_hasse(w, cfg));
    }
    zeta_hasse(s, cfg)
}

/// `Σ_{k≥0} (−1)^k a_k` by the CRVZ acceleration with `n` terms.
fn alternating_sum<F>(a: F, n: usize) -> Complex64
where
    F: Fn(usize) -> Complex64,
{
    let mut d = (3.0 + 8f64.sqrt()).powi(n as i32);
    d = 0.5 * (d + 1.0 / d);
    let mut b = -1.0;
    let mut cc = -d;
    let mut acc = c(0.0);
    let nf = n as f64;
    for k in 0..n {
        let kf = k as f64;
        cc = b - cc;
        acc += a(k) * cc;
        b = (kf + nf) * (kf - nf) * b / ((kf + 0.5) * (kf + 1.0));
    }
    acc / d
}

/// Terms needed for the accelerated series to reach about 1e−16 relative.
fn acceleration_terms(s: Complex64, cfg: &EvalConfig) -> usize {
    let target = -(cfg.rel_tol.min(1e-12) * 1e-4).ln();
    let growth = 0.5 * PI * s.im.abs() + (1.0 + s.norm()).ln();
    let n = ((target + growth) / (3.0 + 8f64.sqrt()).ln()).ceil() as usize + 3;
    n.min(cfg.max_terms.max(1))
}

fn eta_series(s: Complex64, n: usize) -> Complex64 {
    alternating_sum(|k| (-s * ((k + 1) as f64).ln()).exp(), n)
}

fn beta_series(s: Complex64, n: usize) -> Complex64 {
    alternating_sum(|k| (-s * ((2 * k + 1) as f64).ln()).exp(), n)
}

/// Dirichlet η(s) = Σ (−1)^{n−1} n^{−s}; entire.
pub fn eta(s: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    finite(s)?;
    if s.re < REFLECT_BELOW {
        // η(s) = (1 − 2^{1−s}) χ(s) η(1−s) / (1 − 2^s)
        let u = 1.0 - s;
        let num = 1.0 - (LN_2 * u).exp();
        let den = 1.0 - (LN_2 * s).exp();
        return Ok(num * chi(s, cfg)? * eta(u, cfg)? / den);
    }
    Ok(eta_series(s, acceleration_terms(s, cfg)))
}

/// Dirichlet β(s) = Σ (−1)^n (2n+1)^{−s}; entire.
pub fn beta_fn(s: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    finite(s)?;
    if s.re < REFLECT_BELOW {
        // β(1−u) = (2/π)^u sin(πu/2) Γ(u) β(u)
        let u = 1.0 - s;
        let factor = ((2.0 / PI).ln() * u).exp() * sin_pi(u * 0.5) * gamma(u, cfg)?;
        return Ok(factor * beta_fn(u, cfg)?);
    }
    Ok(beta_series(s, acceleration_terms(s, cfg)))
}

/// Distance to the nearest odd positive integer.
fn dist_to_odd_positive(s: Complex64) -> f64 {
    let m = ((s.re - 1.0) / 2.0).round().max(0.0);
    (s - (2.0 * m + 1.0)).norm()
}

/// χ(s) = (2π)^s / (2Γ(s)cos(πs/2)), so that ζ(s) = χ(s)ζ(1−s).
/// Poles at the odd positive integers.
pub fn chi(s: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    finite(s)?;
    if dist_to_odd_positive(s) <= cfg.pole_guard_radius {
        return Err(Error::PoleProximity { point: s, radius: cfg.pole_guard_radius });
    }
    if s.re >= 0.5 {
        let num = ((2.0 * PI).ln() * s).exp();
        Ok(num / (2.0 * gamma(s, cfg)? * cos_pi(s * 0.5)))
    } else {
        let pow = (LN_2 * s + PI.ln() * (s - 1.0)).exp();
        Ok(pow * sin_pi(s * 0.5) * gamma(1.0 - s, cfg)?)
    }
}

/// Parity of a real primitive character in the L-function functional equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Plus,
    Minus,
}

impl std::str::FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" => Ok(Parity::Plus),
            "minus" | "-" => Ok(Parity::Minus),
            _ => Err(Error::Unsupported(format!("unknown parity {s:?}"))),
        }
    }
}

/// `L(s) = 2^s π^{s−1} k^{1/2−s} Γ(1−s) trig(πs/2) L(1−s)`, trig = sin for
/// even characters, cos for odd ones.
fn lfe_rhs(kind: Parity, k: u32, s: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    let u = 1.0 - s;
    let pow = (LN_2 * s + PI.ln() * (s - 1.0) + (k as f64).ln() * (0.5 - s)).exp();
    let (trig, l) = match kind {
        Parity::Plus => (sin_pi(s * 0.5), zeta(u, cfg)?),
        Parity::Minus => (cos_pi(s * 0.5), beta_fn(u, cfg)?),
    };
    Ok(pow * gamma(u, cfg)? * trig * l)
}

/// Normalized residual `|L(s) − RHS| / (1 + |L(s)|)` of the functional
/// equation for the supported characters: (plus, 1) is ζ, (minus, 4) is β.
pub fn lfe_residual(kind: Parity, k: u32, s: Complex64, cfg: &EvalConfig) -> Result<f64> {
    finite(s)?;
    let lhs = match (kind, k) {
        (Parity::Plus, 1) => zeta(s, cfg)?,
        (Parity::Minus, 4) => beta_fn(s, cfg)?,
        _ => {
            return Err(Error::Unsupported(format!(
                "functional equation for ({kind:?}, {k}) is not built in"
            )))
        }
    };
    // At positive integers Γ(1−s) has a pole cancelled by a zero of the
    // other factors; take the removable value from a small circle.
    let n = s.re.round();
    let regular_at_n = n >= 1.0 && !(kind == Parity::Plus && n == 1.0);
    let rhs = if regular_at_n && (s - n).norm() < LFE_SMOOTHING_ZONE {
        cauchy_mean(c(n), LFE_SMOOTHING_RADIUS, s, |w| lfe_rhs(kind, k, w, cfg))?
    } else {
        lfe_rhs(kind, k, s, cfg)?
    };
    Ok((lhs - rhs).norm() / (1.0 + lhs.norm()))
}

pub type ZetaMap = Arc<dyn Fn(Complex64, &EvalConfig) -> Result<Complex64> + Send + Sync>;

/// Spectrum `λ_n = n^p` with multiplicity weight `n^q`, so that
/// `ζ_L(s) = Σ n^{q − p·s}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerSpectrum {
    pub eigen_power: f64,
    pub weight_power: f64,
}

/// A spectral zeta function `ζ_L(s) = Σ λ_n^{−s}` expressed through ζ.
#[derive(Clone)]
pub struct SpectralModel {
    name: String,
    zeta_map: ZetaMap,
    pole_set: Vec<Complex64>,
    spectrum: Option<PowerSpectrum>,
}

impl fmt::Debug for SpectralModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SpectralModel")
            .field("name", &self.name)
            .field("pole_set", &self.pole_set)
            .field("spectrum", &self.spectrum)
            .finish()
    }
}

impl SpectralModel {
    pub fn new<F>(name: impl Into<String>, pole_set: Vec<Complex64>, zeta_map: F) -> Self
    where
        F: Fn(Complex64, &EvalConfig) -> Result<Complex64> + Send + Sync + 'static,
    {
        SpectralModel { name: name.into(), zeta_map: Arc::new(zeta_map), pole_set, spectrum: None }
    }

    pub fn with_spectrum(mut self, spectrum: PowerSpectrum) -> Self {
        self.spectrum = Some(spectrum);
        self
    }

    /// `ζ_L(s) = ζ(p·s − q)` for the spectrum `λ_n = n^p`, weight `n^q`.
    pub fn power_law(name: impl Into<String>, spectrum: PowerSpectrum) -> Self {
        let PowerSpectrum { eigen_power: p, weight_power: q } = spectrum;
        let pole = c((1.0 + q) / p);
        SpectralModel::new(name, vec![pole], move |s, cfg| zeta(s * p - q, cfg)).with_spectrum(spectrum)
    }

    /// λ_n = n, ζ_L = ζ(s).
    pub fn linear() -> Self {
        Self::power_law("linear", PowerSpectrum { eigen_power: 1.0, weight_power: 0.0 })
    }

    /// λ_n = n², ζ_L = ζ(2s).
    pub fn quadratic() -> Self {
        Self::power_law("quadratic", PowerSpectrum { eigen_power: 2.0, weight_power: 0.0 })
    }

    /// λ_n = n² with weight n^{−2}, ζ_L = ζ(2s+2); simple pole at −1/2.
    pub fn shifted() -> Self {
        Self::power_law("shifted", PowerSpectrum { eigen_power: 2.0, weight_power: -2.0 })
    }

    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "linear" => Ok(Self::linear()),
            "quadratic" => Ok(Self::quadratic()),
            "shifted" => Ok(Self::shifted()),
            _ => Err(Error::Unsupported(format!("unknown spectral model {name:?}"))),
        }
    }

    pub const BUILTIN_NAMES: [&'static str; 3] = ["linear", "quadratic", "shifted"];

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn pole_set(&self) -> &[Complex64] {
        &self.pole_set
    }

    pub fn spectrum(&self) -> Option<PowerSpectrum> {
        self.spectrum
    }

    pub fn handle(&self, cfg: &EvalConfig) -> FunctionHandle {
        let map = self.zeta_map.clone();
        let cfg = *cfg;
        FunctionHandle::new(self.name.clone(), PoleSet::Points(self.pole_set.clone()), move |s| map(s, &cfg))
    }

    /// Direct eigenvalue sum `Σ_{n≤N} n^{q−ps}` plus the midpoint integral
    /// tail; only meaningful where the sum converges.
    pub fn direct_sum(&self, s: Complex64, terms: usize) -> Result<Complex64> {
        let sp = self
            .spectrum
            .ok_or_else(|| Error::Unsupported(format!("model {} has no explicit spectrum", self.name)))?;
        let alpha = s * sp.eigen_power - sp.weight_power;
        if alpha.re <= 1.0 {
            return Err(Error::Domain(format!("eigenvalue sum diverges at s = {s}")));
        }
        let mut sum = c(0.0);
        for n in (1..=terms).rev() {
            sum += (-alpha * (n as f64).ln()).exp();
        }
        let edge = terms as f64 + 0.5;
        let tail = (-(alpha - 1.0) * edge.ln()).exp() / (alpha - 1.0);
        Ok(sum + tail)
    }
}

/// ζ_L(s) for a spectral model.
pub fn spectral_zeta(model: &SpectralModel, s: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    finite(s)?;
    if model.pole_set.iter().any(|p| (s - p).norm() <= cfg.pole_guard_radius) {
        return Err(Error::PoleProximity { point: s, radius: cfg.pole_guard_radius });
    }
    (model.zeta_map)(s, cfg)
}

/// How a Casimir energy was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CasimirMethod {
    Regular,
    Symmetric,
    Contour,
}

impl CasimirMethod {
    pub fn name(self) -> &'static str {
        match self {
            CasimirMethod::Regular => "regular",
            CasimirMethod::Symmetric => "symmetric",
            CasimirMethod::Contour => "contour",
        }
    }
}

/// E₀ = ½·p.p. ζ_L at s = −1/2, together with the route taken.
pub fn casimir_energy_with_method(model: &SpectralModel, cfg: &EvalConfig) -> Result<(Complex64, CasimirMethod)> {
    let a = c(-0.5);
    let is_pole = model.pole_set.iter().any(|p| (a - p).norm() <= cfg.pole_guard_radius);
    if !is_pole {
        return Ok((0.5 * spectral_zeta(model, a, cfg)?, CasimirMethod::Regular));
    }
    let h = model.handle(cfg);
    match pp_symmetric(&h, a, cfg) {
        Ok(v) => Ok((0.5 * v, CasimirMethod::Symmetric)),
        Err(Error::DivergenceDetected(_)) => {
            let spec = ContourSpec::auto(&h, a);
            Ok((0.5 * pp_contour(&h, a, &spec)?, CasimirMethod::Contour))
        }
        Err(e) => Err(e),
    }
}

pub fn casimir_energy(model: &SpectralModel, cfg: &EvalConfig) -> Result<Complex64> {
    casimir_energy_with_method(model, cfg).map(|(v, _)| v)
}

/// Handles for ζ (with its closed-form principal part γ and residue 1 at
/// s = 1), η and β.
pub fn handles(cfg: &EvalConfig) -> Vec<FunctionHandle> {
    let cfg = *cfg;
    let at_one = |a: Complex64| a == c(1.0);
    vec![
        FunctionHandle::new("zeta", PoleSet::Points(vec![c(1.0)]), move |s| zeta(s, &cfg))
            .with_closed_pp(move |a| at_one(a).then_some(c(EULER_GAMMA)))
            .with_closed_res(move |a| at_one(a).then_some(c(1.0))),
        FunctionHandle::new("eta", PoleSet::Empty, move |s| eta(s, &cfg)),
        FunctionHandle::new("beta", PoleSet::Empty, move |s| beta_fn(s, &cfg)),
    ]
}
