//! Rectangles obtained from the concentric Steiner chain by inversion.

use std::f64::consts::PI;

use super::circle::{GeneralizedCircle, Point};
use super::rect::{chain_name, wall_circles, RectKind, FLOOR, ROOF};
use crate::error::{Error, Result};
use crate::real::Real;

/// Concentric normal form of a closed chain of `m` circles: inner circle of
/// radius 1, outer circle of radius `R`, chain circles of equal radius.
#[derive(Debug, Clone, PartialEq)]
pub struct SteinerChain<T> {
    pub m: usize,
    pub outer_radius: T,
    pub chain_radius: T,
    pub chain_distance: T,
}

impl<T: Real> SteinerChain<T> {
    /// `R` solves `sin(pi/m) = (R - 1)/(R + 1)`.
    pub fn new(m: usize) -> Self {
        let s = (T::PI() / T::from_int(m as i64)).sin();
        let outer_radius = (T::one() + s) / (T::one() - s);
        Self {
            m,
            outer_radius,
            chain_radius: (outer_radius - T::one()) / T::lit(2.0),
            chain_distance: (outer_radius + T::one()) / T::lit(2.0),
        }
    }

    fn angle(&self, j: f64) -> T {
        T::lit(2.0 * PI * j / self.m as f64)
    }

    /// Chain circle `j` (0-based), centred at angle `2 pi j / m`.
    pub fn chain(&self, j: usize) -> GeneralizedCircle<T> {
        let (s, c) = self.angle(j as f64).sin_cos();
        GeneralizedCircle::Circle {
            center: Point::new(c, s).scale(self.chain_distance),
            radius: self.chain_radius,
        }
    }

    pub fn inner(&self) -> GeneralizedCircle<T> {
        GeneralizedCircle::Circle {
            center: Point::origin(),
            radius: T::one(),
        }
    }

    pub fn outer(&self) -> GeneralizedCircle<T> {
        GeneralizedCircle::Circle {
            center: Point::origin(),
            radius: self.outer_radius,
        }
    }

    /// Tangency point of chain circles `j` and `j + 1`.
    pub fn chain_contact(&self, j: usize) -> Point<T> {
        let (s, c) = self.angle(j as f64 + 0.5).sin_cos();
        let half = T::PI() / T::from_int(self.m as i64);
        Point::new(c, s).scale(self.chain_distance * half.cos())
    }

    /// Tangency point of chain circle `j` with the inner circle.
    pub fn inner_contact(&self, j: usize) -> Point<T> {
        let (s, c) = self.angle(j as f64).sin_cos();
        Point::new(c, s)
    }
}

/// Rotates, scales and translates an inverted configuration so that the
/// two lines become `y = 0` (`floor`) and `y = 1` (`roof`), the `left`
/// circle is centred on `x = 0` and the `right` circle lies to its right.
fn normalize<T: Real>(
    mut named: Vec<(String, GeneralizedCircle<T>)>,
    left: &str,
    right: &str,
) -> Result<Vec<(String, GeneralizedCircle<T>)>> {
    let find = |v: &[(String, GeneralizedCircle<T>)], name: &str| {
        v.iter()
            .find(|(n, _)| n == name)
            .map(|(_, c)| *c)
            .ok_or_else(|| Error::Usage(format!("missing {name}")))
    };
    let GeneralizedCircle::Line { normal, .. } = find(&named, FLOOR)? else {
        return Err(Error::Usage("floor did not invert to a line".into()));
    };
    let turn = T::FRAC_PI_2() - normal.y.atan2(normal.x);
    named = named.into_iter().map(|(n, c)| (n, c.rotate(turn))).collect();

    let height = |c: GeneralizedCircle<T>| match c {
        GeneralizedCircle::Line { normal, offset } => Ok(offset / normal.y),
        _ => Err(Error::Usage("expected a line".into())),
    };
    let (mut y0, mut y1) = (height(find(&named, FLOOR)?)?, height(find(&named, ROOF)?)?);
    if y1 < y0 {
        named = named.into_iter().map(|(n, c)| (n, c.rotate(T::PI()))).collect();
        (y0, y1) = (-y0, -y1);
    }
    let width = y1 - y0;
    let shift = Point::new(T::zero(), -y0);
    named = named
        .into_iter()
        .map(|(n, c)| (n, c.translate(shift).scale(width.recip())))
        .collect();

    let lx = find(&named, left)?.center().map(|p| p.x).unwrap_or_else(T::zero);
    named = named
        .into_iter()
        .map(|(n, c)| (n, c.translate(Point::new(-lx, T::zero()))))
        .collect();
    if find(&named, right)?.center().is_some_and(|p| p.x < T::zero()) {
        named = named.into_iter().map(|(n, c)| (n, c.reflect_x())).collect();
    }
    for (name, c) in named.iter_mut() {
        if name == FLOOR {
            *c = GeneralizedCircle::horizontal(T::zero(), true);
        } else if name == ROOF {
            *c = GeneralizedCircle::horizontal(T::one(), false);
        }
    }
    Ok(named)
}

fn sort_chain<T: Real>(
    named: Vec<(String, GeneralizedCircle<T>)>,
    key: impl Fn(Point<T>) -> T,
) -> Vec<(String, GeneralizedCircle<T>)> {
    let (mut chain, mut rest): (Vec<_>, Vec<_>) = named.into_iter().partition(|(n, _)| n.starts_with('#'));
    chain.sort_by(|a, b| {
        let ka = a.1.center().map(&key).unwrap_or_else(T::zero);
        let kb = b.1.center().map(&key).unwrap_or_else(T::zero);
        ka.partial_cmp(&kb).unwrap_or(std::cmp::Ordering::Equal)
    });
    rest.extend(chain.into_iter().enumerate().map(|(i, (_, c))| (chain_name(i + 1), c)));
    rest
}

const POLE_TOL: f64 = 1e-9;

/// Crossing rectangle: invert at the contact of chain circles `0` and `1`.
/// Those two become the floor and roof, the inner and outer circles become
/// `A` and `B`, the other chain circles stack between them.
pub fn crossing_circles<T: Real>(n: usize) -> Result<Vec<(String, GeneralizedCircle<T>)>> {
    let m = 2 * n + 1;
    let chain = SteinerChain::<T>::new(m);
    let pole = chain.chain_contact(0);
    let tol = T::lit(POLE_TOL);
    let mut named = vec![
        (FLOOR.to_string(), chain.chain(0)),
        (ROOF.to_string(), chain.chain(1)),
        ("A".to_string(), chain.inner()),
        ("B".to_string(), chain.outer()),
    ];
    for j in 2..m {
        named.push((format!("#{j}"), chain.chain(j)));
    }
    let inverted = named
        .into_iter()
        .map(|(n, c)| (n, c.invert(pole, T::one(), tol)))
        .collect();
    let (left, right) = wall_circles(RectKind::CrossingCircle);
    Ok(sort_chain(normalize(inverted, left, right)?, |p| p.y))
}

/// Knot rectangle: invert at the contact of chain circle `0` with the inner
/// circle. The inner circle becomes the floor, chain circle `0` the roof,
/// its neighbours the unit circles `P1` and `P3`, the outer circle `B`.
pub fn knot_circles<T: Real>(n: usize) -> Result<Vec<(String, GeneralizedCircle<T>)>> {
    let m = 2 * n + 1;
    let chain = SteinerChain::<T>::new(m);
    let pole = chain.inner_contact(0);
    let tol = T::lit(POLE_TOL);
    let mut named = vec![
        (FLOOR.to_string(), chain.inner()),
        (ROOF.to_string(), chain.chain(0)),
        ("P1".to_string(), chain.chain(m - 1)),
        ("P3".to_string(), chain.chain(1)),
        ("B".to_string(), chain.outer()),
    ];
    for j in 2..m - 1 {
        named.push((format!("#{j}"), chain.chain(j)));
    }
    let inverted = named
        .into_iter()
        .map(|(n, c)| (n, c.invert(pole, T::one(), tol)))
        .collect();
    let (left, right) = wall_circles(RectKind::KnotCusp);
    Ok(sort_chain(normalize(inverted, left, right)?, |p| p.x))
}
