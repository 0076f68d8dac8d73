//! Euler equidimensional equations `Σ aₖ xᵏ y⁽ᵏ⁾ = 0` through the operator
//! δ = x·D.
//!
//! Since `xᵏDᵏ = δ(δ−1)⋯(δ−k+1)`, the equation becomes a constant-coefficient
//! polynomial in δ. Under `x = e^z`, δ acts as d/dz, so each root r of
//! multiplicity m contributes `x^r (ln x)^j`, j < m. Legendre equations
//! `Σ aₖ (αx+β)ᵏ y⁽ᵏ⁾ = 0` are handled in `u = αx+β`, where they read
//! `Σ aₖ αᵏ uᵏ y_u⁽ᵏ⁾ = 0`.
//!
//! Coefficients stay exact rationals through the δ conversion and the
//! squarefree factorization; floating point enters only at root finding.

mod basis;
mod parser;
mod roots;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use basis::{pullback_residual, solution_basis, solution_basis_for, verify_basis, BasisTerm, SolutionBasis, TermKind};
pub use parser::parse_equation;
pub use roots::{char_roots, char_roots_with, RootEntry, RootMultiset, DEFAULT_CLUSTER_TOL, DEFAULT_SNAP_TOL};

const MAX_FALLING_ORDER: u32 = 20;

/// The substitution `u = alpha·x + beta` of a Legendre equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shift {
    pub alpha: BigRational,
    pub beta: BigRational,
}

impl Shift {
    pub fn is_identity(&self) -> bool {
        self.alpha.is_one() && self.beta.is_zero()
    }

    /// `a*x+b` without parentheses.
    pub fn render_inner(&self) -> String {
        let mut s = if self.alpha.is_one() { "x".to_string() } else { format!("{}*x", self.alpha) };
        if self.beta.is_positive() {
            s.push_str(&format!("+{}", self.beta));
        } else if self.beta.is_negative() {
            s.push_str(&format!("-{}", -&self.beta));
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EulerEquation {
    coeffs: Vec<BigRational>,
    shift: Option<Shift>,
}

impl EulerEquation {
    /// `coeffs[k]` multiplies `xᵏ y⁽ᵏ⁾` (or `(αx+β)ᵏ y⁽ᵏ⁾`). Trailing zeros
    /// are dropped; the remaining order must be at least 1.
    pub fn new(mut coeffs: Vec<BigRational>, shift: Option<Shift>) -> Result<Self> {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return Err(Error::NotEulerForm("equation has no derivative terms".into()));
        }
        if let Some(s) = &shift {
            if s.alpha.is_zero() {
                return Err(Error::NotEulerForm("linear factor (a*x+b) needs a ≠ 0".into()));
            }
        }
        Ok(EulerEquation { coeffs, shift: shift.filter(|s| !s.is_identity()) })
    }

    pub fn from_integers(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect(), None)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// Coefficients of `uᵏ y_u⁽ᵏ⁾`, i.e. `aₖ αᵏ`.
    pub fn u_coeffs(&self) -> Vec<BigRational> {
        match &self.shift {
            None => self.coeffs.clone(),
            Some(s) => {
                let mut pow = BigRational::one();
                self.coeffs
                    .iter()
                    .map(|a| {
                        let v = a * &pow;
                        pow *= &s.alpha;
                        v
                    })
                    .collect()
            }
        }
    }

    pub fn u_coeffs_f64(&self) -> Vec<f64> {
        self.u_coeffs().iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    pub fn shift(&self) -> Option<&Shift> {
        self.shift.as_ref()
    }

    /// Canonical text that parses back to the same equation.
    pub fn render(&self) -> String {
        let base = match &self.shift {
            None => "x".to_string(),
            Some(s) => format!("({})", s.render_inner()),
        };
        let mut out = String::new();
        for (k, a) in self.coeffs.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let negative = a.is_negative();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            let mag = a.abs();
            if !mag.is_one() {
                factors.push(mag.to_string());
            }
            match k {
                0 => {}
                1 => factors.push(base.clone()),
                _ => factors.push(format!("{base}^{k}")),
            }
            factors.push(match k {
                0..=3 => format!("y{}", "'".repeat(k)),
                _ => format!("y^({k})"),
            });
            out.push_str(&factors.join("*"));
        }
        out.push_str(" = 0");
        out
    }
}

impl fmt::Display for EulerEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorBasis {
    D,
    Delta,
}

/// `Σ pⱼ·opʲ` with exact rational coefficients, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorPoly {
    pub basis: OperatorBasis,
    pub coeffs: Vec<BigRational>,
}

impl OperatorPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> &BigRational {
        self.coeffs.last().expect("nonempty")
    }

    pub fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// Integer coefficients, when all are integral.
    pub fn integer_coeffs(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None }).collect()
    }

    /// The same polynomial read in d/dz after `x = e^z`.
    pub fn pulled_back(&self) -> OperatorPoly {
        OperatorPoly { basis: OperatorBasis::D, coeffs: self.coeffs.clone() }
    }

    pub fn render(&self) -> String {
        let sym = match self.basis {
            OperatorBasis::D => "D",
            OperatorBasis::Delta => "δ",
        };
        let mut out = String::new();
        for (j, p) in self.coeffs.iter().enumerate().rev() {
            if p.is_zero() {
                continue;
            }
            let negative = p.is_negative();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mag = p.abs();
            let monomial = match j {
                0 => String::new(),
                1 => sym.to_string(),
                _ => format!("{sym}^{j}"),
            };
            if monomial.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&monomial);
            } else {
                out.push_str(&format!("{mag}*{monomial}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for OperatorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Coefficients of `δ(δ−1)⋯(δ−k+1)` in ascending powers (signed Stirling
/// numbers of the first kind).
pub fn falling_factorial_expand(k: u32) -> Result<Vec<i64>> {
    if k > MAX_FALLING_ORDER {
        return Err(Error::Range(format!("falling factorial order {k} exceeds {MAX_FALLING_ORDER}")));
    }
    let mut c = vec![1i64];
    for m in 0..k as i64 {
        // multiply by (δ − m)
        let mut next = vec![0i64; c.len() + 1];
        for (i, &v) in c.iter().enumerate() {
            next[i + 1] += v;
            next[i] -= m * v;
        }
        c = next;
    }
    Ok(c)
}

/// `Σ aₖ αᵏ [δ]ₖ` expanded in powers of δ.
pub fn to_delta(eq: &EulerEquation) -> OperatorPoly {
    let u = eq.u_coeffs();
    let mut out = vec![BigRational::zero(); u.len()];
    for (k, a) in u.iter().enumerate() {
        let ff = falling_factorial_expand(k as u32).expect("order bounded by the parser");
        for (j, s) in ff.into_iter().enumerate() {
            out[j] += a * BigRational::from_integer(BigInt::from(s));
        }
    }
    OperatorPoly { basis: OperatorBasis::Delta, coeffs: out }
}

/// Everything derived from one equation.
#[derive(Debug, Clone, PartialEq)]
pub struct EulerSolution {
    pub equation: EulerEquation,
    pub delta: OperatorPoly,
    pub roots: RootMultiset,
    pub basis: SolutionBasis,
}

pub fn solve(eq: &EulerEquation, real_form: bool, cluster_tol: f64) -> Result<EulerSolution> {
    let delta = to_delta(eq);
    let roots = char_roots(&delta, cluster_tol)?;
    let basis = solution_basis_for(eq, &roots, real_form)?;
    Ok(EulerSolution { equation: eq.clone(), delta, roots, basis })
}
