use std::collections::BTreeMap;

use serde::Serialize;

use super::circle::{GeneralizedCircle, Point};
use crate::error::{domain, Error, Result};
use crate::real::Real;

pub const FLOOR: &str = "floor";
pub const ROOF: &str = "roof";
pub const D_STAR: &str = "P*";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RectKind {
    /// Cross-section of a crossing-circle cusp.
    CrossingCircle,
    /// Cross-section of the knot cusp.
    KnotCusp,
}

/// Rendering class of a generalized circle in a cusp picture.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FaceClass {
    White,
    Shaded,
    Horoball,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PackedCircle<T> {
    pub name: String,
    pub circle: GeneralizedCircle<T>,
    pub face: FaceClass,
}

/// One rectangle of a cusp cross-section with its circle packing,
/// normalized so that `ell_s = 1` (the strip between `floor` and `roof`).
///
/// Crossing rectangle: `A` and `B` have unit diameter and sit on the walls,
/// `chain1..chain{2n-1}` stack from floor to roof between them.
/// Knot rectangle: `P1` and `P3` have unit diameter and sit on the walls,
/// `B` touches the roof, `chain1..chain{2n-2}` sit on the floor under `B`.
/// `P*` is the smallest chain diameter.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CuspRectangle<T> {
    pub n: usize,
    pub rect_kind: RectKind,
    pub ell_s: T,
    pub ell_w: T,
    pub circle_diameters: BTreeMap<String, T>,
    pub residual: T,
    pub circles: Vec<PackedCircle<T>>,
}

impl<T: Real> CuspRectangle<T> {
    pub fn diameter(&self, name: &str) -> Option<T> {
        self.circle_diameters.get(name).copied()
    }

    pub fn d_star(&self) -> T {
        self.circle_diameters[D_STAR]
    }

    pub fn chain_diameters(&self) -> Vec<T> {
        (1..=chain_len(self.rect_kind, self.n))
            .filter_map(|j| self.diameter(&chain_name(j)))
            .collect()
    }

    pub fn circle(&self, name: &str) -> Option<&GeneralizedCircle<T>> {
        self.circles.iter().find(|c| c.name == name).map(|c| &c.circle)
    }

    /// Largest absolute tangency residual over the model adjacency.
    pub fn model_residual(&self) -> Result<T> {
        let mut worst = T::zero();
        for (a, b) in model_edges(self.rect_kind, self.n) {
            let (Some(ca), Some(cb)) = (self.circle(&a), self.circle(&b)) else {
                return Err(Error::Usage(format!("missing circle {a} or {b}")));
            };
            let r = ca
                .tangency_residual(cb)
                .ok_or_else(|| Error::Usage(format!("edge {a}-{b} joins two lines")))?;
            worst = worst.max(r.abs());
        }
        Ok(worst)
    }
}

pub fn chain_name(j: usize) -> String {
    format!("chain{j}")
}

pub fn chain_len(kind: RectKind, n: usize) -> usize {
    match kind {
        RectKind::CrossingCircle => 2 * n - 1,
        RectKind::KnotCusp => 2 * n - 2,
    }
}

/// Names of the two unit circles centred on the walls, left then right.
pub fn wall_circles(kind: RectKind) -> (&'static str, &'static str) {
    match kind {
        RectKind::CrossingCircle => ("A", "B"),
        RectKind::KnotCusp => ("P1", "P3"),
    }
}

/// Full tangency adjacency of a rectangle model.
pub fn model_edges(kind: RectKind, n: usize) -> Vec<(String, String)> {
    let s = |x: &str| x.to_string();
    let k = chain_len(kind, n);
    let (left, right) = wall_circles(kind);
    let mut e = vec![
        (s(left), s(FLOOR)),
        (s(left), s(ROOF)),
        (s(right), s(FLOOR)),
        (s(right), s(ROOF)),
    ];
    for j in 1..k {
        e.push((chain_name(j), chain_name(j + 1)));
    }
    match kind {
        RectKind::CrossingCircle => {
            e.push((chain_name(1), s(FLOOR)));
            e.push((chain_name(k), s(ROOF)));
            for j in 1..=k {
                e.push((chain_name(j), s("A")));
                e.push((chain_name(j), s("B")));
            }
        }
        RectKind::KnotCusp => {
            e.push((s("B"), s(ROOF)));
            e.push((s("B"), s("P1")));
            e.push((s("B"), s("P3")));
            e.push((chain_name(1), s("P1")));
            e.push((chain_name(k), s("P3")));
            for j in 1..=k {
                e.push((chain_name(j), s(FLOOR)));
                e.push((chain_name(j), s("B")));
            }
        }
    }
    e
}

pub(crate) fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return domain("n", n as f64, "n >= 2");
    }
    Ok(())
}

/// Builds a rectangle from circles already normalized to the unit strip,
/// with the left wall circle centred on `x = 0`.
pub(crate) fn assemble<T: Real>(
    kind: RectKind,
    n: usize,
    named: Vec<(String, GeneralizedCircle<T>)>,
) -> Result<CuspRectangle<T>> {
    let (left, right) = wall_circles(kind);
    let centre_x = |name: &str| {
        named
            .iter()
            .find(|(n, _)| n == name)
            .and_then(|(_, c)| c.center())
            .map(|p| p.x)
            .ok_or_else(|| Error::Usage(format!("missing circle {name}")))
    };
    let ell_w = centre_x(right)? - centre_x(left)?;

    let mut circle_diameters = BTreeMap::new();
    for (name, c) in &named {
        if let Some(d) = c.diameter() {
            circle_diameters.insert(name.clone(), d);
        }
    }
    let d_star = (1..=chain_len(kind, n))
        .filter_map(|j| circle_diameters.get(&chain_name(j)).copied())
        .fold(T::infinity(), T::min);
    circle_diameters.insert(D_STAR.to_string(), d_star);

    let mut circles: Vec<PackedCircle<T>> = named
        .into_iter()
        .map(|(name, circle)| PackedCircle {
            name,
            circle,
            face: FaceClass::White,
        })
        .collect();
    for (name, normal, offset) in [
        ("wall_left", Point::new(T::one(), T::zero()), T::zero()),
        ("wall_right", Point::new(-T::one(), T::zero()), -ell_w),
    ] {
        circles.push(PackedCircle {
            name: name.into(),
            circle: GeneralizedCircle::Line { normal, offset },
            face: FaceClass::Shaded,
        });
    }
    if kind == RectKind::KnotCusp {
        for (i, (x, y)) in [
            (T::zero(), T::zero()),
            (ell_w, T::zero()),
            (T::zero(), T::one()),
            (ell_w, T::one()),
        ]
        .into_iter()
        .enumerate()
        {
            circles.push(PackedCircle {
                name: format!("horoball{}", i + 1),
                circle: GeneralizedCircle::Circle {
                    center: Point::new(x, y),
                    radius: T::lit(0.5),
                },
                face: FaceClass::Horoball,
            });
        }
    }

    let mut rect = CuspRectangle {
        n,
        rect_kind: kind,
        ell_s: T::one(),
        ell_w,
        circle_diameters,
        residual: T::zero(),
        circles,
    };
    rect.residual = rect.model_residual()?;
    Ok(rect)
}

// ---------------------------------------------------------------------------
// Slopes and tiling
// ---------------------------------------------------------------------------

/// Normalized length `sqrt(ell_w^2 + q^2) / sqrt(2 ell_w)` of the surgery
/// slope on a crossing-circle cusp re-inserting `q` crossings.
///
/// # Errors
/// [`Error::Usage`] for a knot rectangle; domain errors for `q <= 0` or a
/// parity mismatch (`q` odd exactly when a half twist is present).
pub fn normalized_slope_length<T: Real>(rect: &CuspRectangle<T>, q: i64, half_twist: bool) -> Result<T> {
    if rect.rect_kind != RectKind::CrossingCircle {
        return Err(Error::Usage(
            "normalized slope length needs a crossing-circle rectangle".into(),
        ));
    }
    if q <= 0 {
        return domain("q", q as f64, "q > 0");
    }
    if (q % 2 == 1) != half_twist {
        return domain("q parity", q as f64, "odd exactly when half_twist");
    }
    let w = rect.ell_w;
    let s = rect.ell_s;
    let qt = T::from_int(q);
    Ok((w * w + qt * qt * s * s).sqrt() / (T::lit(2.0) * w * s).sqrt())
}

/// Lower bound `sqrt((2n - 1)(1 + q^2)/(4n))` on the normalized length.
pub fn normalized_length_lower_bound<T: Real>(n: usize, q: i64) -> T {
    let n = T::from_int(n as i64);
    let q = T::from_int(q);
    let two = T::lit(2.0);
    ((two * n - T::one()) * (T::one() + q * q) / (T::lit(4.0) * n)).sqrt()
}

/// Tiling of the knot cusp torus by `4(2n + 1)` copies of the knot rectangle.
///
/// Lattice vectors are written as integer coefficients `(a, b)` of `a s + b w`.
/// The longitude `2(2n+1) w + 2k s` involves an integer `k` that is left
/// free; [`KnotCuspTiling::reduced_basis`] removes it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KnotCuspTiling<T> {
    pub n: usize,
    pub rectangle_count: usize,
    pub ell_s: T,
    pub ell_w: T,
    pub meridian: (i64, i64),
}

impl<T: Real> KnotCuspTiling<T> {
    pub fn longitude(&self, k: i64) -> (i64, i64) {
        (2 * k, 2 * (2 * self.n as i64 + 1))
    }

    /// Basis `(meridian, longitude - k * meridian)`, independent of `k`.
    pub fn reduced_basis(&self, k: i64) -> [(i64, i64); 2] {
        let (ls, lw) = self.longitude(k);
        let (ms, mw) = self.meridian;
        let t = ls / ms;
        [(ms, mw), (ls - t * ms, lw - t * mw)]
    }

    pub fn vector_length(&self, v: (i64, i64)) -> T {
        let a = T::from_int(v.0) * self.ell_s;
        let b = T::from_int(v.1) * self.ell_w;
        a.hypot(b)
    }

    /// Side lengths `2 ell_s` and `2(2n+1) ell_w` of the rectangular
    /// fundamental domain.
    pub fn side_lengths(&self) -> (T, T) {
        let [m, l] = self.reduced_basis(0);
        (self.vector_length(m), self.vector_length(l))
    }

    pub fn is_square(&self) -> bool {
        let (a, b) = self.side_lengths();
        (a - b).abs() <= T::epsilon() * a.max(b) * T::lit(8.0)
    }
}

/// # Errors
/// [`Error::Usage`] unless `rect` is a knot rectangle for the same `n`.
pub fn knot_cusp_tiling<T: Real>(n: usize, rect: &CuspRectangle<T>) -> Result<KnotCuspTiling<T>> {
    check_n(n)?;
    if rect.rect_kind != RectKind::KnotCusp || rect.n != n {
        return Err(Error::Usage(format!("tiling needs the knot rectangle for n = {n}")));
    }
    Ok(KnotCuspTiling {
        n,
        rectangle_count: 4 * (2 * n + 1),
        ell_s: rect.ell_s,
        ell_w: rect.ell_w,
        meridian: (2, 0),
    })
}

// ---------------------------------------------------------------------------
// Bound checks
// ---------------------------------------------------------------------------

/// One inequality evaluated on a solved rectangle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCheck {
    pub label: String,
    pub value: f64,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub pass: bool,
    /// Distance to the nearest bound; negative when violated.
    pub margin: f64,
}

impl BoundCheck {
    fn strict(label: &str, value: f64, lower: Option<f64>, upper: Option<f64>) -> Self {
        let lo = lower.map_or(f64::INFINITY, |l| value - l);
        let hi = upper.map_or(f64::INFINITY, |u| u - value);
        let margin = lo.min(hi);
        Self {
            label: label.into(),
            value,
            lower,
            upper,
            pass: margin > 0.0,
            margin,
        }
    }

    fn near(label: &str, value: f64, target: f64, tol: f64) -> Self {
        let gap = (value - target).abs();
        Self {
            label: label.into(),
            value,
            lower: Some(target - tol),
            upper: Some(target + tol),
            pass: gap <= tol,
            margin: tol - gap,
        }
    }
}

/// Size bounds for the rectangle's kind.
///
/// Knot rectangle: `1 < ell_w < 2`, `(n-2)/(n-1) < D(B) < 1`, `D(B) > 1/2`,
/// `D(P*) < 1/(n-1)`. Crossing rectangle: `ell_w <= 2n/(2n-1)`, chain
/// diameters summing to 1, and `ell_w = 1 + D(P*)`.
pub fn bound_checks<T: Real>(rect: &CuspRectangle<T>) -> Vec<BoundCheck> {
    let n = rect.n as f64;
    let w = rect.ell_w.to_f64_lossy();
    let d_star = rect.d_star().to_f64_lossy();
    match rect.rect_kind {
        RectKind::KnotCusp => {
            let db = rect.diameter("B").map_or(f64::NAN, |d| d.to_f64_lossy());
            vec![
                BoundCheck::strict("1 < ell_w < 2", w, Some(1.0), Some(2.0)),
                BoundCheck::strict("(n-2)/(n-1) < D(B) < 1", db, Some((n - 2.0) / (n - 1.0)), Some(1.0)),
                BoundCheck::strict("D(B) > 1/2", db, Some(0.5), None),
                BoundCheck::strict("D(P*) < 1/(n-1)", d_star, None, Some(1.0 / (n - 1.0))),
            ]
        }
        RectKind::CrossingCircle => {
            let sum: f64 = rect.chain_diameters().iter().map(|d| d.to_f64_lossy()).sum();
            let bound = 2.0 * n / (2.0 * n - 1.0);
            let mut upper = BoundCheck::strict("ell_w <= 2n/(2n-1)", w, Some(1.0), Some(bound));
            upper.pass = w > 1.0 && w <= bound;
            vec![
                upper,
                BoundCheck::near("sum of chain diameters = 1", sum, 1.0, 1e-9),
                BoundCheck::near("ell_w = 1 + D(P*)", w, 1.0 + d_star, 1e-9),
            ]
        }
    }
}
