//! Named functions with their production evaluators, optional oracles, and
//! principal-part/residue analysis by closed form, contour or symmetric limit.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;

use crate::config::EvalConfig;
use crate::dirichlet;
use crate::error::{Error, Result};
use crate::kurepa::{self, Family};
use crate::meromorphic::{
    pp_contour, pp_symmetric, res_symmetric, residue_contour, ContourSpec, Evaluator, FunctionHandle, PoleSet,
};
use crate::specfun::{self, EULER_GAMMA};

pub const FUNCTION_NAMES: [&str; 10] = ["gamma", "digamma", "H1", "K", "K1", "A", "A1", "zeta", "eta", "beta"];

#[derive(Clone)]
pub struct Entry {
    pub handle: FunctionHandle,
    oracle: Option<(&'static str, Evaluator)>,
}

impl fmt::Debug for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Entry")
            .field("handle", &self.handle)
            .field("oracle", &self.oracle.as_ref().map(|o| o.0))
            .finish()
    }
}

impl Entry {
    pub fn oracle_name(&self) -> Option<&'static str> {
        self.oracle.as_ref().map(|o| o.0)
    }
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn non_positive_integer(a: Complex64) -> Option<i64> {
    (a.im == 0.0 && a.re <= 0.0 && a.re.fract() == 0.0).then_some(a.re as i64)
}

fn harmonic(n: i64, power: i32) -> f64 {
    (1..=n).map(|k| (k as f64).powi(-power)).sum()
}

fn digamma_handle(cfg: EvalConfig) -> FunctionHandle {
    // ψ(z) = ψ(1−z) − π·cot(πz): at −n the regular part is ψ(n+1), residue −1
    FunctionHandle::new("digamma", PoleSet::non_positive_integers(), move |z| specfun::digamma(z, &cfg))
        .with_closed_pp(|a| non_positive_integer(a).map(|m| c(-EULER_GAMMA + harmonic(-m, 1))))
        .with_closed_res(|a| non_positive_integer(a).map(|_| c(-1.0)))
}

fn trigamma_handle(cfg: EvalConfig) -> FunctionHandle {
    // at −n: 1/ε² + Σ_{k≠n} 1/(k−n)², so c₀ = π²/6 + Σ_{m≤n} 1/m², c₋₁ = 0
    FunctionHandle::new("H1", PoleSet::non_positive_integers(), move |z| specfun::trigamma_h1(z, &cfg))
        .with_closed_pp(|a| non_positive_integer(a).map(|m| c(PI * PI / 6.0 + harmonic(-m, 2))))
        .with_closed_res(|a| non_positive_integer(a).map(|_| c(0.0)))
}

fn oracle(name: &'static str, f: impl Fn(Complex64) -> Result<Complex64> + Send + Sync + 'static) -> Option<(&'static str, Evaluator)> {
    Some((name, Arc::new(f)))
}

/// The standard set of functions addressable by name.
#[derive(Debug, Clone)]
pub struct Registry {
    entries: BTreeMap<String, Entry>,
    cfg: EvalConfig,
}

impl Registry {
    pub fn standard(cfg: &EvalConfig) -> Self {
        let cfg = *cfg;
        let mut entries = BTreeMap::new();
        let mut add = |handle: FunctionHandle, oracle: Option<(&'static str, Evaluator)>| {
            entries.insert(handle.name().to_string(), Entry { handle, oracle });
        };
        add(kurepa::handle(Family::Gamma, &cfg), oracle("series+integral", move |z| specfun::gamma_oracle(z, &cfg)));
        add(digamma_handle(cfg), None);
        add(trigamma_handle(cfg), None);
        add(kurepa::handle(Family::K, &cfg), oracle("integral", move |z| kurepa::kurepa_integral_oracle(z, &cfg)));
        add(kurepa::handle(Family::K1, &cfg), None);
        add(kurepa::handle(Family::A, &cfg), oracle("integral", move |z| kurepa::altkurepa_integral_oracle(z, &cfg)));
        add(kurepa::handle(Family::A1, &cfg), None);
        let mut dir = dirichlet::handles(&cfg).into_iter();
        let two = |s: Complex64| 1.0 - (std::f64::consts::LN_2 * (1.0 - s)).exp();
        add(
            dir.next().expect("zeta"),
            oracle("eta-series", move |s| Ok(dirichlet::eta(s, &cfg)? / two(s))),
        );
        add(
            dir.next().expect("eta"),
            oracle("zeta-series", move |s| Ok(dirichlet::zeta(s, &cfg)? * two(s))),
        );
        add(dir.next().expect("beta"), None);
        Registry { entries, cfg }
    }

    pub fn config(&self) -> &EvalConfig {
        &self.cfg
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn get(&self, name: &str) -> Result<&Entry> {
        self.entries.get(name).ok_or_else(|| Error::UnknownFunction(name.to_string()))
    }

    pub fn eval(&self, name: &str, z: Complex64, method: EvalMethod) -> Result<Complex64> {
        let entry = self.get(name)?;
        match method {
            EvalMethod::Production => entry.handle.eval(z),
            EvalMethod::Oracle => match &entry.oracle {
                Some((_, f)) => f(z),
                None => Err(Error::MethodInapplicable(format!("{name} has no independent oracle"))),
            },
        }
    }

    pub fn analyze(&self, quantity: Quantity, name: &str, a: Complex64, method: AnalysisMethod) -> Result<Analysis> {
        let entry = self.get(name)?;
        let h = &entry.handle;
        let single = |m: AnalysisMethod| -> Result<Complex64> {
            match (m, quantity) {
                (AnalysisMethod::Closed, Quantity::PrincipalPart) => h
                    .closed_pp(a)
                    .ok_or_else(|| Error::MethodInapplicable(format!("no closed-form principal part for {name} at {a}"))),
                (AnalysisMethod::Closed, Quantity::Residue) => h
                    .closed_res(a)
                    .ok_or_else(|| Error::MethodInapplicable(format!("no closed-form residue for {name} at {a}"))),
                (AnalysisMethod::Contour, q) => {
                    let spec = ContourSpec::auto(h, a);
                    match q {
                        Quantity::PrincipalPart => pp_contour(h, a, &spec),
                        Quantity::Residue => residue_contour(h, a, &spec),
                    }
                }
                (AnalysisMethod::Symmetric, q) => {
                    let r = match q {
                        Quantity::PrincipalPart => pp_symmetric(h, a, &self.cfg),
                        Quantity::Residue => res_symmetric(h, a, &self.cfg),
                    };
                    r.map_err(|e| match e {
                        Error::DivergenceDetected(_) => Error::MethodInapplicable(format!(
                            "symmetric limit diverges at {a}: {name} has a pole of order 2 or more there"
                        )),
                        other => other,
                    })
                }
                (AnalysisMethod::All, _) => unreachable!("expanded by the caller"),
            }
        };
        if method != AnalysisMethod::All {
            let value = single(method)?;
            return Ok(Analysis { value, results: vec![(method, Ok(value))], discrepancy: None });
        }
        let results: Vec<(AnalysisMethod, Result<Complex64>)> = AnalysisMethod::CONCRETE.iter().map(|&m| (m, single(m))).collect();
        let values: Vec<Complex64> = results.iter().filter_map(|(_, r)| r.as_ref().ok().copied()).collect();
        let Some(&first) = values.first() else {
            return Err(Error::MethodInapplicable(format!("no method applies to {name} at {a}")));
        };
        let mut discrepancy: f64 = 0.0;
        for (i, x) in values.iter().enumerate() {
            for y in &values[i + 1..] {
                discrepancy = discrepancy.max((x - y).norm());
            }
        }
        Ok(Analysis { value: first, results, discrepancy: Some(discrepancy) })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMethod {
    Production,
    Oracle,
}

impl FromStr for EvalMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "production" => Ok(EvalMethod::Production),
            "oracle" => Ok(EvalMethod::Oracle),
            _ => Err(Error::Unsupported(format!("unknown evaluation method {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    PrincipalPart,
    Residue,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnalysisMethod {
    Closed,
    Contour,
    Symmetric,
    All,
}

impl AnalysisMethod {
    pub const CONCRETE: [AnalysisMethod; 3] = [AnalysisMethod::Closed, AnalysisMethod::Contour, AnalysisMethod::Symmetric];

    pub fn name(self) -> &'static str {
        match self {
            AnalysisMethod::Closed => "closed",
            AnalysisMethod::Contour => "contour",
            AnalysisMethod::Symmetric => "symmetric",
            AnalysisMethod::All => "all",
        }
    }
}

impl FromStr for AnalysisMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed" => Ok(AnalysisMethod::Closed),
            "contour" => Ok(AnalysisMethod::Contour),
            "symmetric" => Ok(AnalysisMethod::Symmetric),
            "all" => Ok(AnalysisMethod::All),
            _ => Err(Error::Unsupported(format!("unknown analysis method {s:?}"))),
        }
    }
}

/// Result of a principal-part or residue request. With `All`, `results`
/// holds every method (failures included) and `discrepancy` the largest
/// pairwise difference among the successful ones.
#[derive(Debug, Clone, PartialEq)]
pub struct Analysis {
    pub value: Complex64,
    pub results: Vec<(AnalysisMethod, Result<Complex64>)>,
    pub discrepancy: Option<f64>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reg() -> Registry {
        Registry::standard(&EvalConfig::default())
    }

    #[test]
    fn all_names_registered() {
        let r = reg();
        let names: Vec<&str> = r.names().collect();
        for n in FUNCTION_NAMES {
            assert!(names.contains(&n), "{n}");
        }
        assert!(matches!(r.get("lgamma"), Err(Error::UnknownFunction(_))));
    }

    #[test]
    fn production_and_oracle() {
        let r = reg();
        assert_eq!(r.eval("K", c(4.0), EvalMethod::Production).unwrap(), c(10.0));
        assert_eq!(r.eval("gamma", c(1.0), EvalMethod::Production).unwrap(), c(1.0));
        let a3 = r.eval("A", c(3.0), EvalMethod::Oracle).unwrap();
        assert!((a3 - 5.0).norm() < 1e-9);
        let z = r.eval("zeta", c(3.0), EvalMethod::Oracle).unwrap();
        assert!((z - r.eval("zeta", c(3.0), EvalMethod::Production).unwrap()).norm() < 1e-12);
        assert!(matches!(r.eval("beta", c(2.0), EvalMethod::Oracle), Err(Error::MethodInapplicable(_))));
    }

    #[test]
    fn analysis_methods() {
        let r = reg();
        let v = r.analyze(Quantity::PrincipalPart, "gamma", c(-3.0), AnalysisMethod::Closed).unwrap().value;
        assert!((v.re + 0.209_352_944_7).abs() < 1e-10);
        let all = r.analyze(Quantity::Residue, "A", c(-2.0), AnalysisMethod::All).unwrap();
        assert!(all.results.iter().all(|(_, v)| (v.as_ref().unwrap() - 1.0).norm() < 1e-8));
        assert!(all.discrepancy.unwrap() < 1e-8);
        let h1 = r.analyze(Quantity::PrincipalPart, "H1", c(0.0), AnalysisMethod::Symmetric);
        assert!(matches!(h1, Err(Error::MethodInapplicable(_))));
    }

    #[test]
    fn digamma_and_trigamma_closed_forms_match_contour() {
        let r = reg();
        for name in ["digamma", "H1"] {
            for m in [0.0, -1.0, -3.0] {
                for q in [Quantity::PrincipalPart, Quantity::Residue] {
                    let closed = r.analyze(q, name, c(m), AnalysisMethod::Closed).unwrap().value;
                    let contour = r.analyze(q, name, c(m), AnalysisMethod::Contour).unwrap().value;
                    assert!((closed - contour).norm() < 1e-9, "{name} {q:?} at {m}: {closed} vs {contour}");
                }
            }
        }
    }
}
