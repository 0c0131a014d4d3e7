use crate::error::{Error, Result};
use crate::real::Real;

const MAX_ITER: usize = 200;
const MAX_WIDEN: usize = 60;

/// Search interval for [`find_root`].
#[derive(Debug, Clone, Copy)]
pub struct Bracket<T> {
    pub lo: T,
    pub hi: T,
    /// Hard limits the bracket may be widened towards when the initial
    /// endpoints do not straddle a sign change.
    pub limits: Option<(T, T)>,
}

impl<T: Real> Bracket<T> {
    pub fn new(lo: T, hi: T) -> Self {
        Self { lo, hi, limits: None }
    }

    pub fn widening_to(mut self, lo_limit: T, hi_limit: T) -> Self {
        self.limits = Some((lo_limit, hi_limit));
        self
    }
}

/// Safeguarded Newton iteration on a sign-changing bracket.
///
/// `f` returns the value and derivative. A Newton step is taken whenever it
/// stays inside the current bracket and shrinks the residual fast enough;
/// otherwise the bracket is bisected. Stops when `|f| <= tol` or the
/// bracket collapses to a few ulps.
///
/// # Errors
/// [`Error::Numerical`] if no sign change is found after widening or the
/// iteration budget is exhausted.
pub fn find_root<T: Real, F: Fn(T) -> (T, T)>(what: &'static str, f: F, bracket: Bracket<T>, tol: T) -> Result<T> {
    let two = T::lit(2.0);
    let (mut lo, mut hi) = (bracket.lo, bracket.hi);
    let mut flo = f(lo).0;
    let mut fhi = f(hi).0;
    let mut widen = 0;
    while flo.signum() == fhi.signum() && flo != T::zero() && fhi != T::zero() {
        let Some((lmin, lmax)) = bracket.limits else {
            return no_bracket(what, flo, fhi);
        };
        if widen == MAX_WIDEN {
            return no_bracket(what, flo, fhi);
        }
        lo = lmin + (lo - lmin) / two;
        hi = lmax - (lmax - hi) / two;
        flo = f(lo).0;
        fhi = f(hi).0;
        widen += 1;
    }
    if flo == T::zero() {
        return Ok(lo);
    }
    if fhi == T::zero() {
        return Ok(hi);
    }

    let mut x = (lo + hi) / two;
    let mut trace = Vec::new();
    let mut last_abs = T::infinity();
    for _ in 0..MAX_ITER {
        let (fx, dfx) = f(x);
        trace.push(fx.to_f64_lossy());
        if fx.abs() <= tol {
            return Ok(x);
        }
        if fx.signum() == flo.signum() {
            lo = x;
            flo = fx;
        } else {
            hi = x;
        }
        if (hi - lo).abs() <= T::epsilon() * T::lit(4.0) * x.abs().max(T::one()) {
            return Ok(x);
        }
        let newton = x - fx / dfx;
        let inside = newton.is_finite() && newton > lo.min(hi) && newton < lo.max(hi);
        let progressing = fx.abs() < last_abs / two || last_abs.is_infinite();
        x = if inside && progressing { newton } else { (lo + hi) / two };
        last_abs = fx.abs();
    }
    let residual = trace.last().copied().unwrap_or(f64::NAN);
    Err(Error::Numerical {
        what,
        reason: format!("{MAX_ITER} iterations exhausted"),
        residual,
        trace,
    })
}

fn no_bracket<T: Real, R>(what: &'static str, flo: T, fhi: T) -> Result<R> {
    Err(Error::Numerical {
        what,
        reason: "no sign change in bracket".into(),
        residual: flo.abs().min(fhi.abs()).to_f64_lossy(),
        trace: vec![flo.to_f64_lossy(), fhi.to_f64_lossy()],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two() {
        let r = find_root("sqrt2", |x: f64| (x * x - 2.0, 2.0 * x), Bracket::new(0.0, 2.0), 1e-14).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn widening_finds_root() {
        let r = find_root(
            "shifted",
            |x: f64| (x - 0.9, 1.0),
            Bracket::new(0.1, 0.2).widening_to(0.0, 1.0),
            1e-14,
        )
        .unwrap();
        assert!((r - 0.9).abs() < 1e-14);
    }

    #[test]
    fn missing_sign_change_is_error() {
        let e = find_root("none", |x: f64| (x * x + 1.0, 2.0 * x), Bracket::new(-1.0, 2.0), 1e-12);
        assert!(matches!(e, Err(Error::Numerical { .. })));
    }

    #[test]
    fn bad_derivative_falls_back_to_bisection() {
        let r = find_root(
            "cube",
            |x: f64| (x.powi(3) - 0.001, 0.0),
            Bracket::new(-1.0, 1.0),
            1e-13,
        )
        .unwrap();
        assert!((r - 0.1).abs() < 1e-10);
    }
}
