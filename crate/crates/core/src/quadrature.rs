//! Globally adaptive Gauss–Kronrod (7/15) quadrature for complex-valued
//! integrands on finite intervals, plus a helper that walks out to infinity
//! in growing panels until the contribution of the next panel is negligible.

use num_complex::Complex64;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the odd-indexed Kronrod nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
    abs_mass: f64,
}

fn gk15<F>(f: &mut F, a: f64, b: f64) -> Result<Panel>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut kronrod = Complex64::new(0.0, 0.0);
    let mut gauss = Complex64::new(0.0, 0.0);
    let mut abs_mass = 0.0;
    for (i, (&x, &w)) in XGK.iter().zip(WGK.iter()).enumerate() {
        let pts: &[f64] = if x == 0.0 { &[0.0] } else { &[-1.0, 1.0] };
        for &sign in pts {
            let t = center + sign * half * x;
            let v = f(t)?;
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::NonFinite(Complex64::new(t, 0.0)));
            }
            kronrod += v * w;
            abs_mass += v.norm() * w;
            if i % 2 == 1 {
                gauss += v * WG[i / 2];
            }
        }
    }
    Ok(Panel {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).norm(),
        abs_mass: abs_mass * half.abs(),
    })
}

/// Integrates `f` over `[a, b]` until the summed error estimate is below
/// `max(abs_tol, rel_tol * |I|)` or every panel sits at the roundoff floor.
pub fn integrate<F>(
    mut f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
) -> Result<Complex64>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    if a == b {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut panels = vec![gk15(&mut f, a, b)?];
    loop {
        let total: Complex64 = panels.iter().map(|p| p.value).sum();
        let err: f64 = panels.iter().map(|p| p.error).sum();
        let target = abs_tol.max(rel_tol * total.norm());
        if err <= target {
            return Ok(total);
        }
        let floor = |p: &Panel| p.error <= 100.0 * f64::EPSILON * p.abs_mass;
        if panels.iter().all(floor) {
            return Ok(total);
        }
        if panels.len() >= max_panels {
            return Err(Error::QuadratureFailure { panels: panels.len() });
        }
        let (idx, _) = panels
            .iter()
            .enumerate()
            .filter(|(_, p)| !floor(p))
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("at least one panel above the roundoff floor");
        let worst = panels.swap_remove(idx);
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            return Err(Error::QuadratureFailure { panels: panels.len() + 1 });
        }
        panels.push(gk15(&mut f, worst.a, mid)?);
        panels.push(gk15(&mut f, mid, worst.b)?);
    }
}

/// Integrates `f` over `[a, ∞)` as a chain of panels `[a, a+L]`, `[a+L, a+3L]`, …
/// stopping once a panel contributes less than the tolerance. Intended for
/// integrands with an `e^{-t}` envelope.
pub fn integrate_to_infinity<F>(
    mut f: F,
    a: f64,
    first_width: f64,
    rel_tol: f64,
    max_panels: usize,
) -> Result<Complex64>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let mut total = Complex64::new(0.0, 0.0);
    let mut lo = a;
    let mut width = first_width;
    for _ in 0..64 {
        let hi = lo + width;
        let part = integrate(&mut f, lo, hi, rel_tol * total.norm(), rel_tol, max_panels)?;
        total += part;
        if part.norm() <= rel_tol * 1e-3 * total.norm() || part.norm() == 0.0 {
            return Ok(total);
        }
        lo = hi;
        width *= 2.0;
    }
    Err(Error::QuadratureFailure { panels: max_panels })
}
