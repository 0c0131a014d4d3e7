use std::ops::{Add, Sub};

use serde::Serialize;

use crate::error::{domain, Result};
use crate::real::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Real> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn origin() -> Self {
        Self::new(T::zero(), T::zero())
    }

    pub fn scale(self, s: T) -> Self {
        Self::new(self.x * s, self.y * s)
    }

    pub fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y
    }

    pub fn norm_sq(self) -> T {
        self.dot(self)
    }

    pub fn norm(self) -> T {
        self.x.hypot(self.y)
    }

    /// Counter-clockwise rotation about the origin.
    pub fn rotate(self, angle: T) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }
}

impl<T: Real> Add for Point<T> {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y)
    }
}

impl<T: Real> Sub for Point<T> {
    type Output = Self;

    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y)
    }
}

/// A circle or an oriented line in the plane.
///
/// A line is `{p : normal . p = offset}` with unit `normal`; circles tangent
/// to it are expected on the side the normal points to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum GeneralizedCircle<T> {
    Circle { center: Point<T>, radius: T },
    Line { normal: Point<T>, offset: T },
}

impl<T: Real> GeneralizedCircle<T> {
    /// # Errors
    /// Domain error for a nonpositive or non-finite radius.
    pub fn circle(center: Point<T>, radius: T) -> Result<Self> {
        if !(radius > T::zero() && radius.is_finite()) {
            return domain("circle radius", radius.to_f64_lossy(), "(0, inf)");
        }
        Ok(Self::Circle { center, radius })
    }

    /// Line with the given normal direction, normalized to unit length.
    ///
    /// # Errors
    /// Domain error for a zero normal.
    pub fn line(normal: Point<T>, offset: T) -> Result<Self> {
        let len = normal.norm();
        if !(len > T::zero() && len.is_finite()) {
            return domain("line normal length", len.to_f64_lossy(), "(0, inf)");
        }
        Ok(Self::Line {
            normal: normal.scale(len.recip()),
            offset: offset / len,
        })
    }

    /// Horizontal line `y = c` whose normal points up (`up = true`) or down.
    pub fn horizontal(c: T, up: bool) -> Self {
        if up {
            Self::Line {
                normal: Point::new(T::zero(), T::one()),
                offset: c,
            }
        } else {
            Self::Line {
                normal: Point::new(T::zero(), -T::one()),
                offset: -c,
            }
        }
    }

    pub fn radius(&self) -> Option<T> {
        match *self {
            Self::Circle { radius, .. } => Some(radius),
            Self::Line { .. } => None,
        }
    }

    pub fn center(&self) -> Option<Point<T>> {
        match *self {
            Self::Circle { center, .. } => Some(center),
            Self::Line { .. } => None,
        }
    }

    pub fn diameter(&self) -> Option<T> {
        self.radius().map(|r| r + r)
    }

    pub fn is_line(&self) -> bool {
        matches!(self, Self::Line { .. })
    }

    pub fn translate(&self, v: Point<T>) -> Self {
        match *self {
            Self::Circle { center, radius } => Self::Circle {
                center: center.add(v),
                radius,
            },
            Self::Line { normal, offset } => Self::Line {
                normal,
                offset: offset + normal.dot(v),
            },
        }
    }

    /// Dilation about the origin by `s > 0`.
    pub fn scale(&self, s: T) -> Self {
        match *self {
            Self::Circle { center, radius } => Self::Circle {
                center: center.scale(s),
                radius: radius * s,
            },
            Self::Line { normal, offset } => Self::Line {
                normal,
                offset: offset * s,
            },
        }
    }

    pub fn rotate(&self, angle: T) -> Self {
        match *self {
            Self::Circle { center, radius } => Self::Circle {
                center: center.rotate(angle),
                radius,
            },
            Self::Line { normal, offset } => Self::Line {
                normal: normal.rotate(angle),
                offset,
            },
        }
    }

    /// Reflection `x -> -x`.
    pub fn reflect_x(&self) -> Self {
        match *self {
            Self::Circle { center, radius } => Self::Circle {
                center: Point::new(-center.x, center.y),
                radius,
            },
            Self::Line { normal, offset } => Self::Line {
                normal: Point::new(-normal.x, normal.y),
                offset,
            },
        }
    }

    /// Reverses a line's orientation; circles are unchanged.
    pub fn flipped(&self) -> Self {
        match *self {
            Self::Line { normal, offset } => Self::Line {
                normal: normal.scale(-T::one()),
                offset: -offset,
            },
            c => c,
        }
    }

    /// Inversion in the circle of radius `sqrt(power)` about `pole`.
    ///
    /// Curves passing within relative distance `tol` of the pole map to
    /// lines, oriented away from the pole.
    pub fn invert(&self, pole: Point<T>, power: T, tol: T) -> Self {
        let two = T::lit(2.0);
        match *self {
            Self::Circle { center, radius } => {
                let v = center.sub(pole);
                let d2 = v.norm_sq();
                let gap = d2 - radius * radius;
                if gap.abs() <= tol * d2.max(radius * radius) {
                    let normal = v.scale(v.norm().recip());
                    Self::Line {
                        normal,
                        offset: normal.dot(pole) + power / (two * radius),
                    }
                } else {
                    let s = power / gap;
                    Self::Circle {
                        center: pole.add(v.scale(s)),
                        radius: s.abs() * radius,
                    }
                }
            }
            Self::Line { normal, offset } => {
                let delta = normal.dot(pole) - offset;
                let scale = offset.abs().max(pole.norm()).max(T::one());
                if delta.abs() <= tol * scale {
                    *self
                } else {
                    Self::Circle {
                        center: pole.sub(normal.scale(power / (two * delta))),
                        radius: power / (two * delta.abs()),
                    }
                }
            }
        }
    }

    /// Signed tangency residual: centre distance minus radius sum for two
    /// circles, signed distance minus radius for a circle and a line.
    /// `None` for two lines.
    pub fn tangency_residual(&self, other: &Self) -> Option<T> {
        match (*self, *other) {
            (Self::Circle { center: c1, radius: r1 }, Self::Circle { center: c2, radius: r2 }) => {
                Some(c1.sub(c2).norm() - (r1 + r2))
            }
            (Self::Circle { center, radius }, Self::Line { normal, offset })
            | (Self::Line { normal, offset }, Self::Circle { center, radius }) => {
                Some(normal.dot(center) - offset - radius)
            }
            _ => None,
        }
    }
}
