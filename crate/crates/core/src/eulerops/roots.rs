//! Characteristic roots with multiplicities.
//!
//! Multiplicities come from an exact squarefree factorization over ℚ
//! (Yun's algorithm); each squarefree factor is then solved numerically
//! through its companion matrix and polished with Newton's method.

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::OperatorPoly;
use crate::error::{Error, Result};

pub const DEFAULT_CLUSTER_TOL: f64 = 1e-8;
pub const DEFAULT_SNAP_TOL: f64 = 1e-9;

type Poly = Vec<BigRational>;

fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn degree(p: &Poly) -> usize {
    p.len().saturating_sub(1)
}

fn derivative(p: &Poly) -> Poly {
    if p.len() <= 1 {
        return vec![BigRational::zero()];
    }
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(i.into())).collect())
}

fn sub(a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    let zero = BigRational::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero)).collect())
}

fn monic(p: Poly) -> Poly {
    let lead = p.last().cloned().expect("nonempty");
    if lead.is_zero() {
        return p;
    }
    p.into_iter().map(|c| c / &lead).collect()
}

fn divrem(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let mut rem = a.clone();
    let db = degree(b);
    let lead = b.last().expect("nonzero divisor");
    if rem.len() <= db {
        return (vec![BigRational::zero()], trim(rem));
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for i in (0..quot.len()).rev() {
        let q = &rem[i + db] / lead;
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= &q * bj;
        }
        quot[i] = q;
    }
    rem.truncate(db.max(1));
    (trim(quot), trim(rem))
}

fn is_zero_poly(p: &Poly) -> bool {
    p.iter().all(|c| c.is_zero())
}

fn gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !is_zero_poly(&y) {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = r;
    }
    monic(x)
}

fn exact_div(a: &Poly, b: &Poly) -> Poly {
    divrem(a, b).0
}

/// Yun's squarefree decomposition: `p = lead · Π fᵢ^i`.
fn squarefree(p: &Poly) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    let dp = derivative(p);
    let g = gcd(p, &dp);
    let mut w = exact_div(p, &g);
    let mut y = exact_div(&dp, &g);
    let mut z = sub(&y, &derivative(&w));
    let mut i = 1;
    while degree(&w) > 0 {
        let h = gcd(&w, &z);
        if degree(&h) > 0 {
            out.push((h.clone(), i));
        }
        w = exact_div(&w, &h);
        y = exact_div(&z, &h);
        z = sub(&y, &derivative(&w));
        i += 1;
    }
    out
}

fn to_f64(p: &Poly) -> Vec<f64> {
    p.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
}

fn horner(p: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    for &c in p.iter().rev() {
        d = d * z + v;
        v = v * z + c;
    }
    (v, d)
}

fn polish(p: &[f64], mut z: Complex64) -> Complex64 {
    for _ in 0..8 {
        let (v, d) = horner(p, z);
        if d.norm() == 0.0 || v.norm() == 0.0 {
            break;
        }
        let next = z - v / d;
        if horner(p, next).0.norm() >= v.norm() {
            break;
        }
        z = next;
    }
    z
}

fn squarefree_roots(p: &Poly) -> Result<Vec<Complex64>> {
    let n = degree(p);
    let p = monic(p.clone());
    if n == 1 {
        let r = (-&p[0]).to_f64().unwrap_or(f64::NAN);
        return Ok(vec![Complex64::new(r, 0.0)]);
    }
    let coeffs = to_f64(&p);
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -coeffs[i];
    }
    let schur = Schur::try_new(m, f64::EPSILON, 10_000).ok_or(Error::ConvergenceFailure { terms: 10_000 })?;
    let eig = schur.complex_eigenvalues();
    Ok(eig.iter().map(|&z| polish(&coeffs, z)).collect())
}

/// One characteristic root. `raw` is the value before integer snapping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootEntry {
    pub root: Complex64,
    pub raw: Complex64,
    pub multiplicity: u32,
    pub snapped: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RootMultiset {
    pub entries: Vec<RootEntry>,
}

impl RootMultiset {
    pub fn degree(&self) -> u32 {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    /// Builds a multiset from explicit roots (no snapping or merging).
    pub fn from_roots(roots: &[(Complex64, u32)]) -> Self {
        RootMultiset {
            entries: roots
                .iter()
                .map(|&(r, m)| RootEntry { root: r, raw: r, multiplicity: m, snapped: false })
                .collect(),
        }
    }
}

/// Roots of a δ-polynomial, merged within `cluster_tol` and snapped to
/// integers within 1e−9.
pub fn char_roots(p: &OperatorPoly, cluster_tol: f64) -> Result<RootMultiset> {
    char_roots_with(p, cluster_tol, DEFAULT_SNAP_TOL)
}

pub fn char_roots_with(p: &OperatorPoly, cluster_tol: f64, snap_tol: f64) -> Result<RootMultiset> {
    let poly = trim(p.coeffs.clone());
    if degree(&poly) == 0 {
        return Err(Error::Domain("characteristic polynomial has degree 0".into()));
    }
    let mut raw: Vec<(Complex64, u32)> = Vec::new();
    for (factor, mult) in squarefree(&poly) {
        for r in squarefree_roots(&factor)? {
            raw.push((r, mult));
        }
    }
    let mut entries: Vec<RootEntry> = Vec::new();
    for (r, m) in raw {
        if let Some(e) = entries.iter_mut().find(|e| (e.raw - r).norm() <= cluster_tol) {
            let total = (e.multiplicity + m) as f64;
            e.raw = (e.raw * e.multiplicity as f64 + r * m as f64) / total;
            e.multiplicity += m;
        } else {
            entries.push(RootEntry { root: r, raw: r, multiplicity: m, snapped: false });
        }
    }
    for e in &mut entries {
        let n = e.raw.re.round();
        if (e.raw - n).norm() <= snap_tol {
            e.root = Complex64::new(n, 0.0);
            e.snapped = true;
        } else {
            e.root = e.raw;
        }
    }
    entries.sort_by(|a, b| b.root.re.total_cmp(&a.root.re).then(b.root.im.total_cmp(&a.root.im)));
    Ok(RootMultiset { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eulerops::OperatorBasis;

    fn q(v: &[i64]) -> Poly {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    fn delta(v: &[i64]) -> OperatorPoly {
        OperatorPoly { basis: OperatorBasis::Delta, coeffs: q(v) }
    }

    #[test]
    fn squarefree_decomposition() {
        // (x−1)²(x+2) = x³ − 3x + 2
        let parts = squarefree(&q(&[2, -3, 0, 1]));
        assert_eq!(parts, vec![(q(&[2, 1]), 1), (q(&[-1, 1]), 2)]);
        // x³
        assert_eq!(squarefree(&q(&[0, 0, 0, 1])), vec![(q(&[0, 1]), 3)]);
    }

    #[test]
    fn example_roots() {
        let r = char_roots(&delta(&[2, -3, 0, 1]), DEFAULT_CLUSTER_TOL).unwrap();
        assert_eq!(r.entries.len(), 2);
        assert_eq!((r.entries[0].root, r.entries[0].multiplicity), (Complex64::new(1.0, 0.0), 2));
        assert_eq!((r.entries[1].root, r.entries[1].multiplicity), (Complex64::new(-2.0, 0.0), 1));
    }

    #[test]
    fn complex_and_repeated_zero() {
        let r = char_roots(&delta(&[1, 0, 1]), DEFAULT_CLUSTER_TOL).unwrap();
        assert_eq!(r.entries.len(), 2);
        assert!((r.entries[0].root - Complex64::i()).norm() < 1e-15);
        assert!((r.entries[1].root + Complex64::i()).norm() < 1e-15);
        let r = char_roots(&delta(&[0, 0, 1]), DEFAULT_CLUSTER_TOL).unwrap();
        assert_eq!(r.entries.len(), 1);
        assert_eq!(r.entries[0].multiplicity, 2);
        assert_eq!(r.entries[0].root, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn triple_complex_pair() {
        // (δ² + 1)³
        let r = char_roots(&delta(&[1, 0, 3, 0, 3, 0, 1]), DEFAULT_CLUSTER_TOL).unwrap();
        assert_eq!(r.degree(), 6);
        assert_eq!(r.entries.len(), 2);
        assert!(r.entries.iter().all(|e| e.multiplicity == 3));
    }

    #[test]
    fn irrational_roots_are_not_snapped() {
        let r = char_roots(&delta(&[-2, 0, 1]), DEFAULT_CLUSTER_TOL).unwrap();
        assert!((r.entries[0].root.re - 2f64.sqrt()).abs() < 1e-15);
        assert!(!r.entries[0].snapped);
    }

    #[test]
    fn zero_degree_is_rejected() {
        assert!(char_roots(&delta(&[3]), DEFAULT_CLUSTER_TOL).is_err());
    }
}
