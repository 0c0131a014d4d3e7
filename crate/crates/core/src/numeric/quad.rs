use crate::error::{Error, Result};
use crate::real::Real;

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1]; the Gauss nodes are
// the odd-indexed Kronrod nodes.
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
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const MAX_DEPTH: u32 = 40;

/// One Gauss-Kronrod panel: returns the 15-point estimate and the
/// difference from the embedded 7-point rule.
fn gk15<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T) -> (T, T) {
    let half = (b - a) / T::lit(2.0);
    let mid = (a + b) / T::lit(2.0);
    let fc = f(mid);
    let mut kronrod = fc * T::lit(WGK[7]);
    let mut gauss = fc * T::lit(WG[3]);
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * T::lit(x);
        let pair = f(mid - dx) + f(mid + dx);
        kronrod = kronrod + pair * T::lit(w);
        if j % 2 == 1 {
            gauss = gauss + pair * T::lit(WG[j / 2]);
        }
    }
    (kronrod * half, (kronrod - gauss).abs() * half.abs())
}

fn adapt<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T, tol: T, depth: u32) -> Result<T> {
    let (value, err) = gk15(f, a, b);
    if !value.is_finite() {
        return Err(Error::Numerical {
            what: "quadrature",
            reason: "non-finite integrand".into(),
            residual: f64::NAN,
            trace: vec![],
        });
    }
    if err <= tol || err <= T::epsilon() * T::lit(50.0) * value.abs() {
        return Ok(value);
    }
    if depth >= MAX_DEPTH {
        return Err(Error::Numerical {
            what: "quadrature",
            reason: format!("subdivision depth {MAX_DEPTH} exhausted"),
            residual: err.to_f64_lossy(),
            trace: vec![],
        });
    }
    let mid = (a + b) / T::lit(2.0);
    let half_tol = tol / T::lit(2.0);
    Ok(adapt(f, a, mid, half_tol, depth + 1)? + adapt(f, mid, b, half_tol, depth + 1)?)
}

/// Adaptive Gauss-Kronrod (7/15) integral of `f` over `[a, b]` to absolute
/// tolerance `tol`. Reversed limits give the negated integral.
///
/// # Errors
/// Returns [`Error::Numerical`] when the integrand is not finite or the
/// subdivision depth is exhausted.
pub fn integrate<T: Real, F: Fn(T) -> T>(f: F, a: T, b: T, tol: T) -> Result<T> {
    if a == b {
        return Ok(T::zero());
    }
    if a > b {
        return Ok(-adapt(&f, b, a, tol, 0)?);
    }
    adapt(&f, a, b, tol, 0)
}

/// Composite Simpson rule with `panels` (rounded up to even) subintervals.
pub fn simpson<T: Real, F: Fn(T) -> T>(f: F, a: T, b: T, panels: usize) -> T {
    let panels = (panels.max(2) + 1) & !1;
    let h = (b - a) / T::from_int(panels as i64);
    let mut sum = f(a) + f(b);
    for i in 1..panels {
        let w = if i % 2 == 1 { T::lit(4.0) } else { T::lit(2.0) };
        sum = sum + w * f(a + h * T::from_int(i as i64));
    }
    sum * h / T::lit(3.0)
}
