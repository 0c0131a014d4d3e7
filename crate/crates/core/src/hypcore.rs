//! Elementary hyperbolic formulas: disk and cone areas, mass ratio, the
//! collar lemma and the Euler-characteristic thresholds `h` and `g`.

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::numeric::{find_root, Bracket};
use crate::real::Real;

/// Rounded upper limit on geodesic length accepted by [`collar_radius`].
pub const COLLAR_LENGTH_LIMIT: f64 = 0.107;

/// Published length cutoff for surfaces with `|chi| <= 2`.
pub const PUBLISHED_LENGTH_CUTOFF: f64 = 0.015;

/// Exact length at which the collar radius shrinks to zero,
/// `sqrt(3)/(4 pi) * ln(1 + sqrt 2)^2`.
pub fn collar_exact_limit<T: Real>() -> T {
    let l = (T::one() + T::SQRT_2()).ln();
    T::lit(3.0).sqrt() / (T::lit(4.0) * T::PI()) * l * l
}

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

/// A closed geodesic together with the radius of an embedded tube about it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TubeData<T> {
    pub length: T,
    pub radius: T,
}

impl<T: Real> TubeData<T> {
    /// # Errors
    /// Domain error unless both values are positive and finite.
    pub fn new(length: T, radius: T) -> Result<Self> {
        if !(length > T::zero() && length.is_finite()) {
            return domain("tube length", length.to_f64_lossy(), "(0, inf)");
        }
        if !(radius > T::zero() && radius.is_finite()) {
            return domain("tube radius", radius.to_f64_lossy(), "(0, inf)");
        }
        Ok(Self { length, radius })
    }

    /// Tube data whose radius is the collar-lemma guarantee for `length`.
    pub fn from_collar(length: T) -> Result<Self> {
        Ok(Self {
            length,
            radius: collar_radius(length)?,
        })
    }
}

/// Complex length `l + i theta` of a closed geodesic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexLength<T> {
    pub real_part: T,
    /// Rotation angle in radians, normalized to `[0, 2 pi)`.
    pub rotation: T,
}

impl<T: Real> ComplexLength<T> {
    /// # Errors
    /// Domain error for a nonpositive real part or non-finite angle.
    pub fn new(real_part: T, rotation: T) -> Result<Self> {
        if !(real_part > T::zero() && real_part.is_finite()) {
            return domain("complex length real part", real_part.to_f64_lossy(), "(0, inf)");
        }
        if !rotation.is_finite() {
            return domain("rotation", rotation.to_f64_lossy(), "finite");
        }
        let tau = T::TAU();
        let mut theta = rotation % tau;
        if theta < T::zero() {
            theta = theta + tau;
        }
        if theta >= tau {
            theta = T::zero();
        }
        Ok(Self {
            real_part,
            rotation: theta,
        })
    }
}

/// Which hypothesis certified a geodesic as isotopable off a surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VerdictReason {
    TubeRadius,
    Length,
    NormalizedLength,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IsotopyVerdict<T> {
    pub certified: bool,
    pub reason: VerdictReason,
    pub threshold_used: T,
}

impl<T: Real> IsotopyVerdict<T> {
    pub(crate) fn certified(reason: VerdictReason, threshold_used: T) -> Self {
        Self {
            certified: true,
            reason,
            threshold_used,
        }
    }

    pub(crate) fn rejected(threshold_used: T) -> Self {
        Self {
            certified: false,
            reason: VerdictReason::None,
            threshold_used,
        }
    }
}

// ---------------------------------------------------------------------------
// Areas
// ---------------------------------------------------------------------------

fn positive<T: Real>(what: &'static str, x: T) -> Result<()> {
    if x > T::zero() && x.is_finite() {
        Ok(())
    } else {
        domain(what, x.to_f64_lossy(), "(0, inf)")
    }
}

/// Area `4 pi sinh^2(r/2)` of a totally geodesic disk of radius `r`.
///
/// # Errors
/// Domain error for nonpositive `r`.
pub fn geodesic_disk_area<T: Real>(r: T) -> Result<T> {
    positive("disk radius", r)?;
    let s = (r / T::lit(2.0)).sinh();
    Ok(T::lit(4.0) * T::PI() * s * s)
}

/// Area of the cone to a point over a curve of the given length at
/// distance `r`: `L (cosh r - 1) / sinh r`.
///
/// # Errors
/// Domain error for nonpositive `r` or negative length.
pub fn cone_area<T: Real>(boundary_length: T, r: T) -> Result<T> {
    positive("cone radius", r)?;
    if !(boundary_length >= T::zero() && boundary_length.is_finite()) {
        return domain("boundary length", boundary_length.to_f64_lossy(), "[0, inf)");
    }
    Ok(boundary_length * (r.cosh() - T::one()) / r.sinh())
}

/// Ratio of a disk area inside a ball of radius `r` to the totally
/// geodesic disk area at that radius.
///
/// # Errors
/// Domain error for nonpositive `r` or negative area.
pub fn mass_ratio<T: Real>(disk_area: T, r: T) -> Result<T> {
    if !(disk_area >= T::zero() && disk_area.is_finite()) {
        return domain("disk area", disk_area.to_f64_lossy(), "[0, inf)");
    }
    Ok(disk_area / geodesic_disk_area(r)?)
}

// ---------------------------------------------------------------------------
// Collar lemma
// ---------------------------------------------------------------------------

fn collar_scale<T: Real>() -> T {
    T::lit(4.0) * T::PI() / T::lit(3.0).sqrt()
}

/// Collar parameter `k(x) = cosh(sqrt(4 pi x / sqrt 3)) - 1`.
pub fn collar_k<T: Real>(length: T) -> T {
    (collar_scale::<T>() * length).sqrt().cosh() - T::one()
}

fn collar_k_with_derivative<T: Real>(length: T) -> (T, T) {
    let c = collar_scale::<T>();
    let u = (c * length).sqrt();
    (u.cosh() - T::one(), u.sinh() * c / (T::lit(2.0) * u))
}

/// Collar radius for a given collar parameter `k`.
///
/// # Errors
/// [`Error::CollarParameter`] when `k >= 1/2`; a domain error when `k <= 0`
/// or when the formula gives a nonpositive radius.
pub fn collar_radius_from_k<T: Real>(k: T) -> Result<T> {
    if !(k < T::lit(0.5)) {
        return Err(Error::CollarParameter { k: k.to_f64_lossy() });
    }
    positive("collar parameter", k)?;
    let s2 = ((T::one() - T::lit(2.0) * k).sqrt() / k - T::one()) / T::lit(2.0);
    if !(s2 > T::zero()) {
        return domain("collar parameter", k.to_f64_lossy(), "(0, sqrt2 - 1)");
    }
    Ok(s2.sqrt().asinh())
}

/// Radius of the embedded collar guaranteed about a closed geodesic of the
/// given length.
///
/// # Errors
/// Domain error unless `0 < length < 0.107`.
pub fn collar_radius<T: Real>(length: T) -> Result<T> {
    if !(length > T::zero() && length < T::lit(COLLAR_LENGTH_LIMIT)) {
        return domain("geodesic length", length.to_f64_lossy(), "(0, 0.107)");
    }
    collar_radius_from_k(collar_k(length))
}

// ---------------------------------------------------------------------------
// Thresholds
// ---------------------------------------------------------------------------

fn nonnegative_chi<T: Real>(chi_abs: T) -> Result<()> {
    if chi_abs >= T::zero() && chi_abs.is_finite() {
        Ok(())
    } else {
        domain("|chi|", chi_abs.to_f64_lossy(), "[0, inf)")
    }
}

/// Tube-radius threshold `h(x) = 2 asinh(sqrt(x/2))`.
pub fn h_threshold<T: Real>(chi_abs: T) -> Result<T> {
    nonnegative_chi(chi_abs)?;
    Ok(T::lit(2.0) * (chi_abs / T::lit(2.0)).sqrt().asinh())
}

/// Core-length threshold polynomial `g(x) = 2x^2 + 4x + 1`.
pub fn g_threshold<T: Real>(chi_abs: T) -> Result<T> {
    nonnegative_chi(chi_abs)?;
    Ok(T::lit(2.0) * chi_abs * chi_abs + T::lit(4.0) * chi_abs + T::one())
}

/// Length `l*` solving `sqrt(1 - 2k(l))/k(l) = g(|chi|)`. Every geodesic
/// shorter than `l*` meets the core-length hypothesis.
///
/// # Errors
/// Domain error for `chi_abs <= 0`; numerical error if the root search fails.
pub fn max_length_for_chi<T: Real>(chi_abs: T) -> Result<T> {
    positive("|chi|", chi_abs)?;
    let target = g_threshold(chi_abs)?;
    let residual = |l: T| {
        let (k, dk) = collar_k_with_derivative(l);
        let root = (T::one() - T::lit(2.0) * k).sqrt();
        let phi = root / k;
        let dphi_dk = -T::one() / (k * root) - root / (k * k);
        (phi - target, dphi_dk * dk)
    };
    let limit = collar_exact_limit::<T>();
    let bracket = Bracket::new(T::lit(1e-3), T::lit(0.05)).widening_to(T::zero(), limit);
    find_root("core length threshold", residual, bracket, T::root_tol())
}

/// Length cutoff used for certification: `l*(|chi|)`, capped at the
/// published 0.015 when `|chi| <= 2`.
pub fn certification_length_cutoff<T: Real>(chi_abs: T) -> Result<T> {
    let derived = max_length_for_chi(chi_abs)?;
    if chi_abs <= T::lit(2.0) {
        Ok(derived.min(T::lit(PUBLISHED_LENGTH_CUTOFF)))
    } else {
        Ok(derived)
    }
}

/// Decides whether a closed geodesic can be isotoped off a least area
/// surface with the given `|chi|`, from its tube radius or its length.
///
/// # Errors
/// [`Error::Usage`] when neither input is supplied; domain errors for
/// nonpositive inputs.
pub fn isotopy_verdict<T: Real>(chi_abs: T, tube_radius: Option<T>, length: Option<T>) -> Result<IsotopyVerdict<T>> {
    if tube_radius.is_none() && length.is_none() {
        return Err(Error::Usage("isotopy verdict needs a tube radius or a length".into()));
    }
    positive("|chi|", chi_abs)?;
    let h = h_threshold(chi_abs)?;
    if let Some(r) = tube_radius {
        positive("tube radius", r)?;
        if r > h {
            return Ok(IsotopyVerdict::certified(VerdictReason::TubeRadius, h));
        }
    }
    if let Some(l) = length {
        positive("geodesic length", l)?;
        let cutoff = certification_length_cutoff(chi_abs)?;
        return Ok(if l < cutoff {
            IsotopyVerdict::certified(VerdictReason::Length, cutoff)
        } else {
            IsotopyVerdict::rejected(cutoff)
        });
    }
    Ok(IsotopyVerdict::rejected(h))
}
