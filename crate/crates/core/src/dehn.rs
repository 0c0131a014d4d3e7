//! Cone-deformation bounds for Dehn filling: the functions `F`, `f`, `A`
//! and `I`, their inverse solves, and multi-slope normalized lengths.

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::hypcore::{certification_length_cutoff, h_threshold, IsotopyVerdict, VerdictReason};
use crate::numeric::{find_root, integrate, Bracket};
use crate::real::Real;

/// Multiplicative constant in `f` and `A`.
pub const HK_CONSTANT: f64 = 3.3957;

/// Combined normalized lengths must exceed this for the bounds to apply.
pub const HK_VALIDITY_GATE: f64 = 7.5832;

/// Published per-cusp constant guaranteeing tube radius `2 ln(1 + sqrt 2)`.
pub const PUBLISHED_RADIUS_THRESHOLD: f64 = 14.90;

/// Published per-cusp constant guaranteeing total core length below 0.015.
pub const PUBLISHED_LENGTH_THRESHOLD: f64 = 20.76;

/// Published upper bound on `I(tanh(2 ln(1 + sqrt 2)))`.
pub const PUBLISHED_I_BOUND: f64 = 222.01;

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

/// A Dehn filling slope `p m + q l` with its normalized length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SlopeSpec<T> {
    pub p: i64,
    pub q: i64,
    pub normalized_length: T,
}

impl<T: Real> SlopeSpec<T> {
    /// # Errors
    /// Domain error unless `gcd(|p|, |q|) = 1` and the length is positive.
    pub fn new(p: i64, q: i64, normalized_length: T) -> Result<Self> {
        if gcd(p.unsigned_abs(), q.unsigned_abs()) != 1 {
            return domain(
                "slope gcd(|p|, |q|)",
                gcd(p.unsigned_abs(), q.unsigned_abs()) as f64,
                "{1}",
            );
        }
        if !(normalized_length > T::zero() && normalized_length.is_finite()) {
            return domain("normalized length", normalized_length.to_f64_lossy(), "(0, inf)");
        }
        Ok(Self {
            p,
            q,
            normalized_length,
        })
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Values of `f`, `A` and `I` at one tube parameter `z = tanh r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HKState<T> {
    pub z: T,
    pub f_value: T,
    pub a_value: T,
    pub i_value: T,
}

impl<T: Real> HKState<T> {
    /// # Errors
    /// Domain error unless `0 < z < 1`; numerical error from the quadrature.
    pub fn at(z: T) -> Result<Self> {
        let f_value = f_hk(z)?;
        Ok(Self {
            z,
            f_value,
            a_value: a_visual(z)?,
            i_value: four_pi_sq::<T>() / f_value,
        })
    }
}

/// Which guarantee a filling verdict asks for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FillingMode {
    /// Filled cores keep tube radius above `h(|chi|)`.
    Radius,
    /// Filled cores are shorter than the certification length cutoff.
    Length,
}

// ---------------------------------------------------------------------------
// Special functions
// ---------------------------------------------------------------------------

fn four_pi_sq<T: Real>() -> T {
    let t = T::TAU();
    t * t
}

fn open_unit<T: Real>(what: &'static str, z: T) -> Result<()> {
    if z > T::zero() && z < T::one() {
        Ok(())
    } else {
        domain(what, z.to_f64_lossy(), "(0, 1)")
    }
}

/// `F(w) = -(1 + 4w + 6w^2 + w^4) / ((w + 1)(1 + w^2)^2)`.
///
/// # Errors
/// Domain error unless `0 < w <= 1`.
pub fn f_integrand<T: Real>(w: T) -> Result<T> {
    if !(w > T::zero() && w <= T::one()) {
        return domain("F argument", w.to_f64_lossy(), "(0, 1]");
    }
    Ok(f_integrand_raw(w))
}

fn f_integrand_raw<T: Real>(w: T) -> T {
    let w2 = w * w;
    let num = T::one() + T::lit(4.0) * w + T::lit(6.0) * w2 + w2 * w2;
    let s = T::one() + w2;
    -num / ((w + T::one()) * s * s)
}

/// `int_1^z F(w) dw` by adaptive quadrature.
pub fn f_integral<T: Real>(z: T) -> Result<T> {
    open_unit("f argument", z)?;
    integrate(f_integrand_raw, T::one(), z, T::quad_tol())
}

/// `f(z) = 3.3957 (1 - z) exp(-int_1^z F)`.
///
/// # Errors
/// Domain error unless `0 < z < 1`; numerical error from the quadrature.
pub fn f_hk<T: Real>(z: T) -> Result<T> {
    let integral = f_integral(z)?;
    Ok(T::lit(HK_CONSTANT) * (T::one() - z) * (-integral).exp())
}

/// Visual area bound `A(z) = 3.3957 z (1 - z^2) / (1 + z^2)`.
///
/// # Errors
/// Domain error unless `0 < z < 1`.
pub fn a_visual<T: Real>(z: T) -> Result<T> {
    open_unit("A argument", z)?;
    Ok(a_visual_raw(z).0)
}

fn a_visual_raw<T: Real>(z: T) -> (T, T) {
    let c = T::lit(HK_CONSTANT);
    let z2 = z * z;
    let s = T::one() + z2;
    let value = c * z * (T::one() - z2) / s;
    let slope = c * (T::one() - T::lit(4.0) * z2 - z2 * z2) / (s * s);
    (value, slope)
}

/// `I(z) = (2 pi)^2 / f(z)`.
pub fn i_value<T: Real>(z: T) -> Result<T> {
    Ok(four_pi_sq::<T>() / f_hk(z)?)
}

fn gate<T: Real>(what: &'static str, l: T) -> Result<T> {
    if l > T::lit(HK_VALIDITY_GATE) {
        Ok(l)
    } else {
        Err(Error::Validity {
            what,
            value: l.to_f64_lossy(),
            gate: HK_VALIDITY_GATE,
        })
    }
}

// ---------------------------------------------------------------------------
// Inverse solves
// ---------------------------------------------------------------------------

/// Smallest combined normalized length guaranteeing every filled core keeps
/// tube radius above `r_target`: `sqrt(I(tanh r_target))`.
///
/// # Errors
/// Domain error for nonpositive radius; [`Error::Validity`] when the result
/// does not exceed 7.5832.
pub fn min_l_for_radius<T: Real>(r_target: T) -> Result<T> {
    if !(r_target > T::zero() && r_target.is_finite()) {
        return domain("target radius", r_target.to_f64_lossy(), "(0, inf)");
    }
    let z = r_target.tanh();
    if z >= T::one() {
        return domain("target radius", r_target.to_f64_lossy(), "tanh(R) < 1");
    }
    gate("radius threshold", i_value(z)?.sqrt())
}

/// Root `z* in (0.5, 1)` of `A(z) = 2 pi target`.
pub fn z_for_total_length<T: Real>(target: T) -> Result<T> {
    if !(target > T::zero() && target < T::lit(0.1)) {
        return domain("total length target", target.to_f64_lossy(), "(0, 0.1)");
    }
    let goal = T::TAU() * target;
    let residual = |z: T| {
        let (a, da) = a_visual_raw(z);
        (a - goal, da)
    };
    let bracket = Bracket::new(T::lit(0.5), T::one() - T::lit(1e-9));
    find_root("visual area inversion", residual, bracket, T::root_tol())
}

/// Smallest combined normalized length guaranteeing the filled cores have
/// total length below `target`: `sqrt((2 pi)^2 / f(z*))` with `A(z*) = 2 pi target`.
///
/// # Errors
/// Domain error unless `0 < target < 0.1`; numerical or validity errors.
pub fn min_l_for_total_length<T: Real>(target: T) -> Result<T> {
    let z = z_for_total_length(target)?;
    gate("length threshold", i_value(z)?.sqrt())
}

/// Combined normalized length `(sum L_i^-2)^(-1/2)`.
///
/// # Errors
/// [`Error::Usage`] for an empty list; domain error for a nonpositive entry.
pub fn combine_slopes<T: Real>(lengths: &[T]) -> Result<T> {
    if lengths.is_empty() {
        return Err(Error::Usage("combine_slopes needs at least one length".into()));
    }
    let mut acc = T::zero();
    for &l in lengths {
        if !(l > T::zero()) {
            return domain("normalized length", l.to_f64_lossy(), "(0, inf)");
        }
        acc = acc + (l * l).recip();
    }
    Ok(acc.sqrt().recip())
}

/// Per-cusp normalized length constant for the mode. Uses the published
/// constants when `|chi| <= 2` and recomputes them otherwise.
pub fn filling_threshold<T: Real>(chi_abs: T, mode: FillingMode) -> Result<T> {
    if chi_abs <= T::lit(2.0) {
        return Ok(match mode {
            FillingMode::Radius => T::lit(PUBLISHED_RADIUS_THRESHOLD),
            FillingMode::Length => T::lit(PUBLISHED_LENGTH_THRESHOLD),
        });
    }
    match mode {
        FillingMode::Radius => min_l_for_radius(h_threshold(chi_abs)?),
        FillingMode::Length => min_l_for_total_length(certification_length_cutoff(chi_abs)?),
    }
}

/// Certifies that filling along `slopes` leaves cores isotopable off a least
/// area surface with the given `|chi|`. Every slope must reach
/// `threshold(mode) * sqrt(k)`; in `Length` mode a certificate also bounds
/// each core length by the certification cutoff.
///
/// # Errors
/// [`Error::Usage`] for an empty slope list; threshold computation errors.
pub fn filling_verdict<T: Real>(slopes: &[SlopeSpec<T>], chi_abs: T, mode: FillingMode) -> Result<IsotopyVerdict<T>> {
    let lengths: Vec<T> = slopes.iter().map(|s| s.normalized_length).collect();
    let combined = combine_slopes(&lengths)?;
    let per_slope = filling_threshold(chi_abs, mode)? * T::from_int(slopes.len() as i64).sqrt();
    let ok = combined > T::lit(HK_VALIDITY_GATE) && lengths.iter().all(|&l| l >= per_slope);
    Ok(if ok {
        IsotopyVerdict::certified(VerdictReason::NormalizedLength, per_slope)
    } else {
        IsotopyVerdict::rejected(per_slope)
    })
}
