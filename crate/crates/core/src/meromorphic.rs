//! Principal parts, residues and Laurent coefficients of meromorphic functions.
//!
//! The principal part of `f` at `a` is the order-0 Laurent coefficient c₀,
//! i.e. `(1/2πi)∮ f(z)/(z−a) dz` over any circle that isolates `a`. At a
//! regular point it is simply `f(a)`. Three routes are provided:
//!
//! * contour integration, discretized by the trapezoidal rule on a circle
//!   (spectrally accurate because the integrand is periodic and analytic);
//! * the symmetric limit `lim (f(a−ε)+f(a+ε))/2`, valid when every even
//!   negative-order coefficient vanishes (in particular at simple poles);
//! * the product rule for a holomorphic factor times a pole, working on
//!   finite Laurent windows.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::config::EvalConfig;
use crate::error::{Error, Result};

pub type Evaluator = Arc<dyn Fn(Complex64) -> Result<Complex64> + Send + Sync>;
pub type PointMap = Arc<dyn Fn(Complex64) -> Option<Complex64> + Send + Sync>;

pub const DEFAULT_NODES: usize = 256;
const MAX_RADIUS: f64 = 0.5;
const SYMMETRIC_SCHEDULE: [f64; 4] = [1e-2, 5e-3, 2.5e-3, 1.25e-3];

/// Where a function may have poles.
#[derive(Debug, Clone, PartialEq)]
pub enum PoleSet {
    Empty,
    Points(Vec<Complex64>),
    /// Real integers `n` with `min ≤ n ≤ max` (either bound optional), minus `except`.
    Integers { min: Option<i64>, max: Option<i64>, except: Vec<i64> },
    Union(Vec<PoleSet>),
}

impl PoleSet {
    pub fn non_positive_integers() -> Self {
        PoleSet::Integers { min: None, max: Some(0), except: Vec::new() }
    }

    pub fn all_integers() -> Self {
        PoleSet::Integers { min: None, max: None, except: Vec::new() }
    }

    fn allowed(n: i64, min: Option<i64>, max: Option<i64>, except: &[i64]) -> bool {
        min.is_none_or(|m| n >= m) && max.is_none_or(|m| n <= m) && !except.contains(&n)
    }

    /// Distance from `a` to the nearest pole farther than `exclude` from `a`.
    pub fn nearest_distance(&self, a: Complex64, exclude: f64) -> Option<f64> {
        match self {
            PoleSet::Empty => None,
            PoleSet::Points(pts) => pts
                .iter()
                .map(|p| (p - a).norm())
                .filter(|&d| d > exclude)
                .min_by(f64::total_cmp),
            PoleSet::Integers { min, max, except } => {
                let mut start = a.re.round();
                if let Some(m) = min {
                    start = start.max(*m as f64);
                }
                if let Some(m) = max {
                    start = start.min(*m as f64);
                }
                if !start.is_finite() || start.abs() > 1e15 {
                    return None;
                }
                let start = start as i64;
                let offset = (start as f64 - a.re).abs();
                let mut best: Option<f64> = None;
                for k in 0..10_000i64 {
                    if let Some(b) = best {
                        if (k as f64) - offset > b {
                            break;
                        }
                    }
                    for n in [start + k, start - k] {
                        if !Self::allowed(n, *min, *max, except) {
                            continue;
                        }
                        let d = (a - n as f64).norm();
                        if d > exclude && best.is_none_or(|b| d < b) {
                            best = Some(d);
                        }
                    }
                }
                best
            }
            PoleSet::Union(sets) => sets
                .iter()
                .filter_map(|s| s.nearest_distance(a, exclude))
                .min_by(f64::total_cmp),
        }
    }

    /// True when some pole lies within `radius` of `a`.
    pub fn is_near(&self, a: Complex64, radius: f64) -> bool {
        self.nearest_distance(a, -1.0).is_some_and(|d| d <= radius)
    }
}

/// A named meromorphic function together with what is known about its poles.
#[derive(Clone)]
pub struct FunctionHandle {
    name: String,
    evaluator: Evaluator,
    poles: PoleSet,
    closed_pp: Option<PointMap>,
    closed_res: Option<PointMap>,
}

impl fmt::Debug for FunctionHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctionHandle")
            .field("name", &self.name)
            .field("poles", &self.poles)
            .field("closed_pp", &self.closed_pp.is_some())
            .field("closed_res", &self.closed_res.is_some())
            .finish()
    }
}

impl FunctionHandle {
    pub fn new<F>(name: impl Into<String>, poles: PoleSet, evaluator: F) -> Self
    where
        F: Fn(Complex64) -> Result<Complex64> + Send + Sync + 'static,
    {
        FunctionHandle {
            name: name.into(),
            evaluator: Arc::new(evaluator),
            poles,
            closed_pp: None,
            closed_res: None,
        }
    }

    pub fn with_closed_pp<F>(mut self, f: F) -> Self
    where
        F: Fn(Complex64) -> Option<Complex64> + Send + Sync + 'static,
    {
        self.closed_pp = Some(Arc::new(f));
        self
    }

    pub fn with_closed_res<F>(mut self, f: F) -> Self
    where
        F: Fn(Complex64) -> Option<Complex64> + Send + Sync + 'static,
    {
        self.closed_res = Some(Arc::new(f));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn poles(&self) -> &PoleSet {
        &self.poles
    }

    /// Evaluates the function, rejecting non-finite output.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let v = (self.evaluator)(z)?;
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite(z))
        }
    }

    /// Closed-form principal part at `a`, when the function supplies one.
    pub fn closed_pp(&self, a: Complex64) -> Option<Complex64> {
        self.closed_pp.as_ref().and_then(|f| f(a))
    }

    /// Closed-form residue at `a`, when the function supplies one.
    pub fn closed_res(&self, a: Complex64) -> Option<Complex64> {
        self.closed_res.as_ref().and_then(|f| f(a))
    }

    pub fn has_closed_pp(&self) -> bool {
        self.closed_pp.is_some()
    }

    /// Pointwise sum; closed forms combine by additivity where both exist.
    pub fn sum(&self, other: &FunctionHandle) -> FunctionHandle {
        let (f, g) = (self.evaluator.clone(), other.evaluator.clone());
        let mut h = FunctionHandle::new(
            format!("({}+{})", self.name, other.name),
            PoleSet::Union(vec![self.poles.clone(), other.poles.clone()]),
            move |z| Ok(f(z)? + g(z)?),
        );
        if let (Some(p), Some(q)) = (self.closed_pp.clone(), other.closed_pp.clone()) {
            h.closed_pp = Some(Arc::new(move |a| Some(p(a)? + q(a)?)));
        }
        if let (Some(p), Some(q)) = (self.closed_res.clone(), other.closed_res.clone()) {
            h.closed_res = Some(Arc::new(move |a| Some(p(a)? + q(a)?)));
        }
        h
    }

    /// Pointwise product. No closed forms carry over; principal parts are
    /// not multiplicative.
    pub fn product(&self, other: &FunctionHandle) -> FunctionHandle {
        let (f, g) = (self.evaluator.clone(), other.evaluator.clone());
        FunctionHandle::new(
            format!("({}*{})", self.name, other.name),
            PoleSet::Union(vec![self.poles.clone(), other.poles.clone()]),
            move |z| Ok(f(z)? * g(z)?),
        )
    }
}

/// Discretization of the circle `|z − a| = radius`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSpec {
    pub radius: f64,
    pub nodes: usize,
}

impl ContourSpec {
    pub fn new(radius: f64, nodes: usize) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::Contour(format!("radius must be positive, got {radius}")));
        }
        if nodes < 16 || !nodes.is_multiple_of(2) {
            return Err(Error::Contour(format!("nodes must be even and >= 16, got {nodes}")));
        }
        Ok(ContourSpec { radius, nodes })
    }

    /// Half the distance to the nearest other singularity, capped at 0.5,
    /// with the default node count.
    pub fn auto(f: &FunctionHandle, a: Complex64) -> Self {
        let radius = match f.poles.nearest_distance(a, isolation_eps(a)) {
            Some(d) => (0.5 * d).min(MAX_RADIUS),
            None => MAX_RADIUS,
        };
        ContourSpec { radius, nodes: DEFAULT_NODES }
    }
}

fn isolation_eps(a: Complex64) -> f64 {
    1e-12 * (1.0 + a.norm())
}

/// Raw trapezoidal estimate of `(1/2πi)∮ f(z) (z−a)^{−k−1} dz`.
fn contour_coefficient(f: &FunctionHandle, a: Complex64, k: i32, spec: &ContourSpec) -> Result<Complex64> {
    let spec = ContourSpec::new(spec.radius, spec.nodes)?;
    if let Some(d) = f.poles.nearest_distance(a, isolation_eps(a)) {
        if spec.radius >= d {
            return Err(Error::Contour(format!(
                "radius {} does not isolate {a}: another singularity of {} lies at distance {d}",
                spec.radius, f.name
            )));
        }
    }
    let n = spec.nodes;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let (s, c) = (2.0 * PI * j as f64 / n as f64).sin_cos();
        let w = Complex64::new(c, s) * spec.radius;
        let v = f.eval(a + w)?;
        acc += v * w.powi(-k);
    }
    Ok(acc / n as f64)
}

/// Principal part (c₀) of `f` at `a` by contour integration.
pub fn pp_contour(f: &FunctionHandle, a: Complex64, spec: &ContourSpec) -> Result<Complex64> {
    contour_coefficient(f, a, 0, spec)
}

/// Residue (c₋₁) of `f` at `a` by contour integration.
pub fn residue_contour(f: &FunctionHandle, a: Complex64, spec: &ContourSpec) -> Result<Complex64> {
    contour_coefficient(f, a, -1, spec)
}

/// Laurent coefficient c_k of `f` about `a`.
pub fn laurent_coeff(f: &FunctionHandle, a: Complex64, k: i32, spec: &ContourSpec) -> Result<Complex64> {
    contour_coefficient(f, a, k, spec)
}

/// Fixed-schedule symmetric limit with two Richardson levels. `g(ε)` returns the
/// symmetric combination and the magnitude of the raw samples behind it.
fn symmetric_limit<G>(a: Complex64, mut g: G) -> Result<Complex64>
where
    G: FnMut(f64) -> Result<(Complex64, f64)>,
{
    let mut s = [Complex64::new(0.0, 0.0); 4];
    let mut scale: f64 = 0.0;
    for (slot, &eps) in s.iter_mut().zip(SYMMETRIC_SCHEDULE.iter()) {
        let (v, m) = g(eps)?;
        *slot = v;
        scale = scale.max(m);
    }
    let d2 = (s[2] - s[1]).norm();
    let d3 = (s[3] - s[2]).norm();
    let noise = (64.0 * f64::EPSILON * scale).max(1e-14 * s[3].norm());
    if d3 > noise && d3 > d2 {
        return Err(Error::DivergenceDetected(a));
    }
    // s(ε) = c₀ + c₂ε² + c₄ε⁴ + O(ε⁶); two Richardson levels on the halving schedule
    let r1 = (4.0 * s[2] - s[1]) / 3.0;
    let r2 = (4.0 * s[3] - s[2]) / 3.0;
    Ok((16.0 * r2 - r1) / 15.0)
}

/// Principal part via `lim (f(a−ε)+f(a+ε))/2`. Refuses (DivergenceDetected)
/// when the symmetric average grows as ε shrinks, which happens at poles of
/// even order.
pub fn pp_symmetric(f: &FunctionHandle, a: Complex64, _cfg: &EvalConfig) -> Result<Complex64> {
    symmetric_limit(a, |eps| {
        let lo = f.eval(a - eps)?;
        let hi = f.eval(a + eps)?;
        Ok(((lo + hi) * 0.5, lo.norm().max(hi.norm())))
    })
}

/// Residue via `lim ε·(f(a+ε)−f(a−ε))/2`, the odd counterpart of
/// [`pp_symmetric`]; valid when all odd negative orders below −1 vanish.
pub fn res_symmetric(f: &FunctionHandle, a: Complex64, _cfg: &EvalConfig) -> Result<Complex64> {
    symmetric_limit(a, |eps| {
        let lo = f.eval(a - eps)?;
        let hi = f.eval(a + eps)?;
        Ok(((hi - lo) * (0.5 * eps), eps * lo.norm().max(hi.norm())))
    })
}

/// A finite window of Laurent coefficients about `center`:
/// `coeffs[i]` multiplies `(z − center)^(min_order + i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentData {
    center: Complex64,
    min_order: i32,
    coeffs: Vec<Complex64>,
}

impl LaurentData {
    pub fn new(center: Complex64, min_order: i32, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InsufficientCoefficients("empty Laurent window".into()));
        }
        if min_order < 0 && coeffs[0] == Complex64::new(0.0, 0.0) {
            return Err(Error::InsufficientCoefficients(format!(
                "leading coefficient of order {min_order} must be nonzero"
            )));
        }
        Ok(LaurentData { center, min_order, coeffs })
    }

    /// Taylor window `[c₀, c₁, …]`.
    pub fn taylor(center: Complex64, coeffs: Vec<Complex64>) -> Result<Self> {
        Self::new(center, 0, coeffs)
    }

    /// Builds the window `min_order .. min_order+len` by contour integration.
    pub fn from_contour(
        f: &FunctionHandle,
        center: Complex64,
        min_order: i32,
        len: usize,
        spec: &ContourSpec,
    ) -> Result<Self> {
        let coeffs = (0..len as i32)
            .map(|i| laurent_coeff(f, center, min_order + i, spec))
            .collect::<Result<Vec<_>>>()?;
        Self::new(center, min_order, coeffs)
    }

    pub fn center(&self) -> Complex64 {
        self.center
    }

    pub fn min_order(&self) -> i32 {
        self.min_order
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn max_order(&self) -> i32 {
        self.min_order + self.coeffs.len() as i32 - 1
    }

    /// Pole order m (0 for a holomorphic window).
    pub fn pole_order(&self) -> u32 {
        (-self.min_order).max(0) as u32
    }

    /// Coefficient of order `k`: zero below the window, `None` above it.
    pub fn coeff(&self, k: i32) -> Option<Complex64> {
        if k < self.min_order {
            Some(Complex64::new(0.0, 0.0))
        } else if k > self.max_order() {
            None
        } else {
            Some(self.coeffs[(k - self.min_order) as usize])
        }
    }

    pub fn principal_part(&self) -> Option<Complex64> {
        self.coeff(0)
    }

    pub fn residue(&self) -> Option<Complex64> {
        self.coeff(-1)
    }
}

/// Principal part of `f₁·f₂` where `f₁` is holomorphic at the common center
/// and `f₂` has a pole of order m there: `Σ_{k=0}^{m} t_k · c₋ₖ`, with t_k the
/// Taylor coefficients of `f₁` and c_j the Laurent coefficients of `f₂`.
pub fn pp_product(f1_taylor: &LaurentData, f2: &LaurentData) -> Result<Complex64> {
    if f1_taylor.min_order < 0 {
        return Err(Error::InsufficientCoefficients(
            "first factor must be holomorphic (min_order >= 0)".into(),
        ));
    }
    if (f1_taylor.center - f2.center).norm() > 1e-12 * (1.0 + f2.center.norm()) {
        return Err(Error::InsufficientCoefficients(format!(
            "expansion centers differ: {} vs {}",
            f1_taylor.center, f2.center
        )));
    }
    let m = f2.pole_order() as i32;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..=m {
        let t = f1_taylor.coeff(k).ok_or_else(|| {
            Error::InsufficientCoefficients(format!(
                "holomorphic factor needs Taylor coefficients up to order {m}"
            ))
        })?;
        let c = f2.coeff(-k).ok_or_else(|| {
            Error::InsufficientCoefficients("second factor needs coefficients up to order 0".into())
        })?;
        acc += t * c;
    }
    Ok(acc)
}
