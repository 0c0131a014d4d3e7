//! Horoball patterns on cusp tori, their rotational symmetries, and the
//! checklist for a knot complement being alone in its commensurability
//! class.

use std::collections::BTreeSet;
use std::ops::{Add, Sub};

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::packing::{solve_knot_rectangle, CuspRectangle, Point};
use crate::pretzel::{validate, PretzelTuple};
use crate::real::Real;

/// Default tolerance for [`rotation_orders`].
pub const DEFAULT_TOL: f64 = 1e-9;

/// Rotation orders compatible with a lattice.
pub const CANDIDATE_ORDERS: [u32; 4] = [2, 3, 4, 6];

// ---------------------------------------------------------------------------
// Patterns
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Mark<T> {
    pub position: Point<T>,
    pub diameter: T,
}

/// Doubly periodic set of horoball shadows.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HoroballPattern<T> {
    pub basis: [Point<T>; 2],
    /// Marks in one fundamental domain, positions taken modulo the lattice.
    pub marks: Vec<Mark<T>>,
}

impl<T: Real> HoroballPattern<T> {
    /// # Errors
    /// Domain error for a degenerate basis, no marks, or a diameter outside
    /// `(0, 1]`.
    pub fn new(basis: [Point<T>; 2], marks: Vec<Mark<T>>) -> Result<Self> {
        let det = cross(basis[0], basis[1]);
        let scale = basis[0].norm() * basis[1].norm();
        if !(det.abs() > T::epsilon() * T::lit(64.0) * scale) {
            return domain("basis determinant", det.to_f64_lossy(), "nonzero");
        }
        if marks.is_empty() {
            return Err(Error::Usage("pattern needs at least one mark".into()));
        }
        for m in &marks {
            if !(m.diameter > T::zero() && m.diameter <= T::one()) {
                return domain("mark diameter", m.diameter.to_f64_lossy(), "(0, 1]");
            }
        }
        let mut p = Self { basis, marks };
        p.marks = p
            .marks
            .iter()
            .map(|m| Mark {
                position: p.reduce(m.position),
                diameter: m.diameter,
            })
            .collect();
        Ok(p)
    }

    /// Lattice with a single unit mark at the origin.
    pub fn single_mark(basis: [Point<T>; 2]) -> Result<Self> {
        Self::new(
            basis,
            vec![Mark {
                position: Point::origin(),
                diameter: T::one(),
            }],
        )
    }

    /// Uniform rescaling of positions and basis. Diameters are kept, since
    /// they only serve as labels when matching marks.
    pub fn scaled(&self, s: T) -> Self {
        Self {
            basis: [self.basis[0].scale(s), self.basis[1].scale(s)],
            marks: self
                .marks
                .iter()
                .map(|m| Mark {
                    position: m.position.scale(s),
                    diameter: m.diameter,
                })
                .collect(),
        }
    }

    pub fn with_swapped_basis(&self) -> Self {
        Self {
            basis: [self.basis[1], self.basis[0]],
            marks: self.marks.clone(),
        }
    }

    fn frac(&self, p: Point<T>) -> (T, T) {
        let [a, b] = self.basis;
        let det = cross(a, b);
        (cross(p, b) / det, cross(a, p) / det)
    }

    /// Representative of `p` modulo the lattice, closest to the origin
    /// cell in fractional coordinates.
    pub fn reduce(&self, p: Point<T>) -> Point<T> {
        let (u, v) = self.frac(p);
        p.sub(self.basis[0].scale(u.round()))
            .sub(self.basis[1].scale(v.round()))
    }

    fn is_lattice_vector(&self, v: Point<T>, tol: T) -> bool {
        self.reduce(v).norm() <= tol
    }

    fn length_scale(&self) -> T {
        self.basis[0].norm().min(self.basis[1].norm())
    }

    fn invariant_under(&self, order: u32, centre: Point<T>, tol: T) -> bool {
        let angle = T::TAU() / T::from_int(order as i64);
        if !self.basis.iter().all(|&b| self.is_lattice_vector(b.rotate(angle), tol)) {
            return false;
        }
        self.marks.iter().all(|m| {
            let image = centre.add(m.position.sub(centre).rotate(angle));
            self.marks
                .iter()
                .any(|o| (o.diameter - m.diameter).abs() <= tol && self.is_lattice_vector(image.sub(o.position), tol))
        })
    }

    /// Rotation centres to test for the given order: the spec-style set of
    /// lattice points, edge midpoints and cell centres offset from each mark,
    /// plus every centre of a rotation carrying the first mark onto a nearby
    /// translate of some mark.
    fn candidate_centres(&self, order: u32) -> Vec<Point<T>> {
        let [a, b] = self.basis;
        let half = T::lit(0.5);
        let third = T::one() / T::lit(3.0);
        let offsets = [
            Point::origin(),
            a.scale(half),
            b.scale(half),
            a.add(b).scale(half),
            a.sub(b).scale(half),
            a.add(b).scale(third),
            a.add(b).scale(third + third),
        ];
        let mut out: Vec<Point<T>> = Vec::new();
        for m in &self.marks {
            for o in offsets {
                out.push(m.position.add(o));
            }
        }

        let angle = T::TAU() / T::from_int(order as i64);
        let (s, c) = angle.sin_cos();
        let m0 = self.marks[0].position;
        let rm0 = m0.rotate(angle);
        let reach = (a.norm() + b.norm()) * T::lit(2.0)
            + self
                .marks
                .iter()
                .map(|m| m.position.sub(m0).norm())
                .fold(T::zero(), T::max);
        let det = cross(a, b);
        let dual = [
            Point::new(b.y, -b.x).scale(det.recip()),
            Point::new(-a.y, a.x).scale(det.recip()),
        ];
        let range = |d: Point<T>| (d.norm() * reach).ceil().to_f64_lossy() as i64 + 1;
        let (ni, nj) = (range(dual[0]), range(dual[1]));
        // (I - R)^{-1} for a rotation R by `angle`.
        let k = T::lit(2.0) - T::lit(2.0) * c;
        for mj in &self.marks {
            for i in -ni..=ni {
                for j in -nj..=nj {
                    let target = mj.position.add(a.scale(T::from_int(i))).add(b.scale(T::from_int(j)));
                    let rhs = target.sub(rm0);
                    let centre = Point::new(
                        ((T::one() - c) * rhs.x - s * rhs.y) / k,
                        (s * rhs.x + (T::one() - c) * rhs.y) / k,
                    );
                    out.push(self.reduce(centre));
                }
            }
        }
        out
    }
}

fn cross<T: Real>(a: Point<T>, b: Point<T>) -> T {
    a.x * b.y - a.y * b.x
}

/// Pattern of maximal horoball shadows seen from a cusp tiled by copies of
/// `rect`: unit marks at the rectangle corners of one cusp, repeating every
/// `ell_w` along `w` and every `2 ell_s` along `s`.
///
/// # Errors
/// [`Error::Usage`] when `rect` was solved for a different `n`.
pub fn crossing_pattern<T: Real>(n: usize, rect: &CuspRectangle<T>) -> Result<HoroballPattern<T>> {
    if rect.n != n {
        return Err(Error::Usage(format!(
            "rectangle was solved for n = {}, not {n}",
            rect.n
        )));
    }
    HoroballPattern::single_mark([
        Point::new(rect.ell_w, T::zero()),
        Point::new(T::zero(), T::lit(2.0) * rect.ell_s),
    ])
}

/// Orders in `{2, 3, 4, 6}` of rotations preserving the pattern about some
/// centre. `tol` is relative to the shorter basis vector.
///
/// # Errors
/// Domain error unless `0 < tol <= 1e-3`.
pub fn rotation_orders<T: Real>(p: &HoroballPattern<T>, tol: T) -> Result<BTreeSet<u32>> {
    if !(tol > T::zero() && tol <= T::lit(1e-3)) {
        return domain("tolerance", tol.to_f64_lossy(), "(0, 1e-3]");
    }
    let abs_tol = tol * p.length_scale();
    Ok(CANDIDATE_ORDERS
        .iter()
        .copied()
        .filter(|&k| {
            p.candidate_centres(k)
                .into_iter()
                .any(|c| p.invariant_under(k, c, abs_tol))
        })
        .collect())
}

// ---------------------------------------------------------------------------
// Closest strings
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StringDirection {
    W,
    S,
    Diagonal,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NearestStringReport {
    pub ell_w: f64,
    pub s_step: f64,
    pub diagonal: f64,
    pub min_distance: f64,
    pub unique: bool,
    pub direction: Option<StringDirection>,
    /// `Some` only when `1 < ell_w < 2`: whether the closest marks form
    /// strings along `w`.
    pub assertion_holds: Option<bool>,
}

/// Compares the distances between a mark and its nearest translates along
/// `w`, along `s` and diagonally.
pub fn nearest_string_analysis<T: Real>(p: &HoroballPattern<T>) -> NearestStringReport {
    let [w, s] = p.basis;
    let ell_w = w.norm().to_f64_lossy();
    let s_step = s.norm().to_f64_lossy();
    let diagonal = w.add(s).norm().min(w.sub(s).norm()).to_f64_lossy();
    let cands = [
        (ell_w, StringDirection::W),
        (s_step, StringDirection::S),
        (diagonal, StringDirection::Diagonal),
    ];
    let min_distance = cands.iter().map(|c| c.0).fold(f64::INFINITY, f64::min);
    let close: Vec<_> = cands
        .iter()
        .filter(|c| (c.0 - min_distance).abs() <= 1e-12 * min_distance.max(1.0))
        .collect();
    let unique = close.len() == 1;
    let direction = unique.then(|| close[0].1);
    let assertion_holds = (ell_w > 1.0 && ell_w < 2.0).then_some(unique && direction == Some(StringDirection::W));
    NearestStringReport {
        ell_w,
        s_step,
        diagonal,
        min_distance,
        unique,
        direction,
        assertion_holds,
    }
}

// ---------------------------------------------------------------------------
// Checklist
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Incommensurability {
    /// Every criterion holds, subject to the twist parameters being large
    /// enough for the limiting cusp geometry to apply.
    CertifiedConditional,
    NotApplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ItemBasis {
    /// Quoted from the literature; not recomputed here.
    CitedFact,
    /// Computed from the solved cusp geometry.
    Computed,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChecklistItem {
    pub passed: bool,
    pub basis: ItemBasis,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChecklistReport {
    pub tuple: PretzelTuple,
    pub lens_space_surgery: ChecklistItem,
    pub symmetry: ChecklistItem,
    pub hidden_symmetry: Option<ChecklistItem>,
    pub rotation_orders: Vec<u32>,
    pub conclusion: Incommensurability,
    pub caveats: Vec<String>,
}

/// Assembles the three criteria (no lens space surgery, only a strong
/// inversion, no hidden symmetry) for the pretzel knot with tuple `t`.
///
/// # Errors
/// Propagates packing failures from the knot rectangle solve.
pub fn commensurability_checklist(t: &PretzelTuple) -> Result<ChecklistReport> {
    let violations = validate(t);
    let exceptional = PretzelTuple::new(vec![-2, 3, 7]);
    let lens = !t.is_dihedral_equivalent(&exceptional);
    let lens_space_surgery = ChecklistItem {
        passed: lens,
        basis: ItemBasis::CitedFact,
        detail: if lens {
            "not the (-2, 3, 7) pretzel knot, so no lens space surgery".into()
        } else {
            "the (-2, 3, 7) pretzel knot has lens space surgeries".into()
        },
    };
    let distinct = !violations
        .iter()
        .any(|v| matches!(v, crate::pretzel::Violation::DuplicateEntry { .. }));
    let one_even = t.even_slot().is_some();
    let symmetry = ChecklistItem {
        passed: distinct && one_even,
        basis: ItemBasis::CitedFact,
        detail: if distinct && one_even {
            "distinct entries with exactly one even: a strong inversion is the only symmetry".into()
        } else {
            "needs distinct entries with exactly one even".into()
        },
    };

    let mut caveats = vec![
        "hidden-symmetry item uses the limiting cusp of the augmented link; it transfers only when every twist parameter is sufficiently large, with no explicit bound".to_string(),
    ];
    let n = t.n().unwrap_or(0);
    let (hidden_symmetry, orders) = if n >= 2 {
        let rect = solve_knot_rectangle::<f64>(n)?;
        let pattern = crossing_pattern(n, &rect)?;
        let orders: Vec<u32> = rotation_orders(&pattern, DEFAULT_TOL)?.into_iter().collect();
        let rigid = orders.iter().any(|&k| k != 2);
        (
            Some(ChecklistItem {
                passed: !rigid,
                basis: ItemBasis::Computed,
                detail: format!(
                    "knot cusp pattern with ell_w = {:.12} admits rotation orders {:?}",
                    rect.ell_w, orders
                ),
            }),
            orders,
        )
    } else {
        caveats.push("requires at least five twist regions (n >= 2)".into());
        (None, Vec::new())
    };

    let all_pass = violations.is_empty()
        && lens_space_surgery.passed
        && symmetry.passed
        && hidden_symmetry.as_ref().is_some_and(|h| h.passed);
    Ok(ChecklistReport {
        tuple: t.clone(),
        lens_space_surgery,
        symmetry,
        hidden_symmetry,
        rotation_orders: orders,
        conclusion: if all_pass {
            Incommensurability::CertifiedConditional
        } else {
            Incommensurability::NotApplicable
        },
        caveats,
    })
}
