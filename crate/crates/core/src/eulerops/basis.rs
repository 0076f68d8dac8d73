//! Solution bases `x^r (ln x)^j` and their verification with closed-form
//! derivatives.

use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::{EulerEquation, OperatorPoly};
use crate::error::{Error, Result};
use crate::eulerops::roots::RootMultiset;

const MIN_POINT: f64 = 1e-3;
const PAIR_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermKind {
    /// `x^r (ln x)^j`, complex when r is.
    Power,
    /// `x^a cos(b ln x) (ln x)^j` for r = a + bi.
    Cos,
    /// `x^a sin(b ln x) (ln x)^j` for r = a + bi.
    Sin,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisTerm {
    pub exponent: Complex64,
    pub log_power: u32,
    pub kind: TermKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolutionBasis {
    pub terms: Vec<BasisTerm>,
    pub real_form: bool,
    /// The variable the basis is written in: `x`, or `(a*x+b)` for Legendre form.
    pub variable: String,
    pub rendered: String,
}

fn fmt_num(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

fn render_term(t: &BasisTerm, index: usize, var: &str, log_arg: &str) -> String {
    let mut parts = Vec::new();
    let (a, b) = (t.exponent.re, t.exponent.im);
    let power = |e: String| if e == "1" { var.to_string() } else { format!("{var}^{e}") };
    match t.kind {
        TermKind::Power => {
            if b != 0.0 {
                let sign = if b < 0.0 { "-" } else { "+" };
                parts.push(power(format!("({}{}{}i)", fmt_num(a), sign, fmt_num(b.abs()))));
            } else if a != 0.0 {
                parts.push(power(fmt_num(a)));
            }
        }
        TermKind::Cos | TermKind::Sin => {
            if a != 0.0 {
                parts.push(power(fmt_num(a)));
            }
            let f = if t.kind == TermKind::Cos { "cos" } else { "sin" };
            if b == 1.0 {
                parts.push(format!("{f}(ln({log_arg}))"));
            } else {
                parts.push(format!("{f}({}*ln({log_arg}))", fmt_num(b)));
            }
        }
    }
    match t.log_power {
        0 => {}
        1 => parts.push(format!("ln({log_arg})")),
        j => parts.push(format!("ln({log_arg})^{j}")),
    }
    let mut s = format!("c{index}");
    for p in parts {
        s.push('*');
        s.push_str(&p);
    }
    s
}

fn build(terms: Vec<BasisTerm>, real_form: bool, var: &str, log_arg: &str) -> SolutionBasis {
    let rendered = terms
        .iter()
        .enumerate()
        .map(|(i, t)| render_term(t, i + 1, var, log_arg))
        .collect::<Vec<_>>()
        .join(" + ");
    SolutionBasis { terms, real_form, variable: var.to_string(), rendered }
}

fn basis_terms(roots: &RootMultiset, real_form: bool) -> Result<Vec<BasisTerm>> {
    let mut terms = Vec::new();
    for e in &roots.entries {
        let r = e.root;
        let logs = 0..e.multiplicity;
        if !real_form || r.im == 0.0 {
            terms.extend(logs.map(|j| BasisTerm { exponent: r, log_power: j, kind: TermKind::Power }));
            continue;
        }
        let partner = roots.entries.iter().find(|o| {
            o.multiplicity == e.multiplicity && (o.root - r.conj()).norm() <= PAIR_TOL * (1.0 + r.norm())
        });
        if partner.is_none() {
            return Err(Error::RealFormUnavailable(r));
        }
        if r.im > 0.0 {
            for j in logs {
                terms.push(BasisTerm { exponent: r, log_power: j, kind: TermKind::Cos });
                terms.push(BasisTerm { exponent: r, log_power: j, kind: TermKind::Sin });
            }
        }
    }
    Ok(terms)
}

/// `x^r (ln x)^j` for each root r of multiplicity m and j < m; with
/// `real_form`, conjugate pairs become cosine/sine terms.
pub fn solution_basis(roots: &RootMultiset, real_form: bool) -> Result<SolutionBasis> {
    Ok(build(basis_terms(roots, real_form)?, real_form, "x", "x"))
}

/// As [`solution_basis`], written in `u = a*x+b` for a Legendre equation.
pub fn solution_basis_for(eq: &EulerEquation, roots: &RootMultiset, real_form: bool) -> Result<SolutionBasis> {
    let terms = basis_terms(roots, real_form)?;
    Ok(match eq.shift() {
        None => build(terms, real_form, "x", "x"),
        Some(s) => {
            let inner = s.render_inner();
            build(terms, real_form, &format!("({inner})"), &inner)
        }
    })
}

/// Coefficients in `L` of `D^k` applied to `e^{r·L}·L^j` (`shift_down` false,
/// derivatives in L) or `u^r·L^j` with `L = ln u`, multiplied back by `u^k`
/// (`shift_down` true). Index i holds the coefficient of L^i.
fn derivative_polys(r: Complex64, j: u32, order: usize, shift_down: bool) -> Vec<Vec<Complex64>> {
    let len = j as usize + 1;
    let mut p = vec![Complex64::new(0.0, 0.0); len];
    p[j as usize] = Complex64::new(1.0, 0.0);
    let mut out = vec![p.clone()];
    let mut s = r;
    for _ in 0..order {
        let mut next = vec![Complex64::new(0.0, 0.0); len];
        for i in 0..len {
            next[i] = s * p[i];
            if i + 1 < len {
                next[i] += p[i + 1] * (i + 1) as f64;
            }
        }
        if shift_down {
            s -= 1.0;
        }
        p = next;
        out.push(p.clone());
    }
    out
}

fn eval_poly(p: &[Complex64], l: f64) -> Complex64 {
    p.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * l + c)
}

/// `Σ_k coeffs[k]·(residual polynomial)` at log-coordinate `l`, reduced to a
/// real or complex value according to the term kind and normalized by
/// `|base^{Re r}|·(1+|l|)^j`.
fn term_residual(coeffs: &[f64], t: &BasisTerm, l: f64, shift_down: bool) -> f64 {
    let polys = derivative_polys(t.exponent, t.log_power, coeffs.len() - 1, shift_down);
    let mut q = Complex64::new(0.0, 0.0);
    for (a, p) in coeffs.iter().zip(polys.iter()) {
        q += eval_poly(p, l) * *a;
    }
    // the common factor base^r = e^{a l}·e^{i b l}; e^{a l} cancels against the normalization
    let phase = Complex64::new(0.0, t.exponent.im * l).exp();
    let v = q * phase;
    let magnitude = match t.kind {
        TermKind::Power => v.norm(),
        TermKind::Cos => v.re.abs(),
        TermKind::Sin => v.im.abs(),
    };
    magnitude / (1.0 + l.abs()).powi(t.log_power as i32)
}

/// Largest normalized residual of `Σ aₖ xᵏ y⁽ᵏ⁾` over basis terms and points.
/// For a Legendre equation the points are x-values and the basis is in u = a*x+b.
pub fn verify_basis(eq: &EulerEquation, basis: &SolutionBasis, points: &[f64]) -> Result<f64> {
    let coeffs = eq.u_coeffs_f64();
    let mut worst: f64 = 0.0;
    for &x in points {
        if !(x > 0.0) || !x.is_finite() {
            return Err(Error::Domain(format!("verification point {x} must be positive")));
        }
        let u = eq.shift().map_or(x, |s| s.alpha.to_f64().unwrap_or(f64::NAN) * x + s.beta.to_f64().unwrap_or(f64::NAN));
        if !(u >= MIN_POINT) {
            return Err(Error::Domain(format!("point {x} maps to {u}, closer than {MIN_POINT} to the singular point")));
        }
        for t in &basis.terms {
            worst = worst.max(term_residual(&coeffs, t, u.ln(), true));
        }
    }
    Ok(worst)
}

/// Residual of the constant-coefficient equation `p(D)h = 0` for the terms
/// `h(z) = z^j e^{rz}` (the basis terms before the substitution z = ln x),
/// over the given z-points.
pub fn pullback_residual(p: &OperatorPoly, basis: &SolutionBasis, z_points: &[f64]) -> f64 {
    let coeffs = p.coeffs_f64();
    let mut worst: f64 = 0.0;
    for &z in z_points {
        for t in &basis.terms {
            worst = worst.max(term_residual(&coeffs, t, z, false));
        }
    }
    worst
}
