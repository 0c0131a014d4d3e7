//! Newton models of the two rectangles, reduced by their mirror symmetry.

use super::circle::{GeneralizedCircle, Point};
use super::rect::{chain_len, chain_name, RectKind, FLOOR, ROOF};
use super::solver::{Affine, Node, TangencyGraph};
use crate::error::Result;
use crate::real::Real;

fn half<T: Real>() -> T {
    T::lit(0.5)
}

fn unit_circle_at<T: Real>(x: T) -> GeneralizedCircle<T> {
    GeneralizedCircle::Circle {
        center: Point::new(x, half()),
        radius: half(),
    }
}

fn lookup<T: Real>(g: &TangencyGraph<T>, names: &[(String, String)]) -> Vec<(usize, usize)> {
    names
        .iter()
        .map(|(a, b)| {
            (
                g.index_of(a).expect("node present"),
                g.index_of(b).expect("node present"),
            )
        })
        .collect()
}

fn split_edges<T: Real>(g: &mut TangencyGraph<T>, kind: RectKind, n: usize, solved: Vec<(String, String)>) {
    let all = super::rect::model_edges(kind, n);
    let key = |(a, b): &(String, String)| {
        if a < b {
            (a.clone(), b.clone())
        } else {
            (b.clone(), a.clone())
        }
    };
    let solved_keys: Vec<_> = solved.iter().map(key).collect();
    let implied: Vec<_> = all.into_iter().filter(|e| !solved_keys.contains(&key(e))).collect();
    g.edges = lookup(g, &solved);
    g.implied_edges = lookup(g, &implied);
}

/// Crossing rectangle. Unknowns: `x[0] = a`, half the wall separation, and
/// `x[j] = rho_j` for the lower half of the chain including the middle
/// circle `j = n`. Stacking from the floor fixes the heights; the upper
/// half mirrors the lower half in `y = 1/2`.
pub fn crossing_graph<T: Real>(n: usize) -> (TangencyGraph<T>, Vec<T>) {
    let k = chain_len(RectKind::CrossingCircle, n);
    let two = T::lit(2.0);
    let mut g = TangencyGraph::new(n + 1);
    g.add(FLOOR, Node::Fixed(GeneralizedCircle::horizontal(T::zero(), true)));
    g.add(ROOF, Node::Fixed(GeneralizedCircle::horizontal(T::one(), false)));
    g.add("A", Node::Fixed(unit_circle_at(T::zero())));
    g.add(
        "B",
        Node::Circle {
            cx: Affine::constant(T::zero()).plus(0, two),
            cy: Affine::constant(half()),
            r: Affine::constant(half()),
        },
    );
    // Height of chain circle j (1-based, j <= n): 2 sum_{i<j} rho_i + rho_j.
    let height = |j: usize| {
        let mut a = Affine::var(j);
        for i in 1..j {
            a = a.plus(i, two);
        }
        a
    };
    for j in 1..=k {
        let m = j.min(k + 1 - j);
        let cy = if j <= n {
            height(j)
        } else {
            let lower = height(m);
            Affine {
                constant: T::one() - lower.constant,
                terms: lower.terms.iter().map(|&(i, c)| (i, -c)).collect(),
            }
        };
        g.add(
            chain_name(j),
            Node::Circle {
                cx: Affine::var(0),
                cy,
                r: Affine::var(m),
            },
        );
    }
    let mut solved: Vec<(String, String)> = (1..=n).map(|j| (chain_name(j), "A".to_string())).collect();
    solved.push((chain_name(n), chain_name(n + 1)));
    split_edges(&mut g, RectKind::CrossingCircle, n, solved);

    let rho = T::one() / (two * T::from_int(k as i64));
    let mut init = vec![rho; n + 1];
    init[0] = half::<T>() + rho;
    (g, init)
}

/// Knot rectangle. Unknowns: `x[0] = a`, half the wall separation;
/// `x[1] = b`, the radius of `B` (centre `(a, 1 - b)`); and for each chain
/// circle `j < n` on the left half, its centre abscissa `x[2j]` and radius
/// `x[2j+1]` (it rests on the floor, so its height equals its radius). The
/// right half mirrors the left in `x = a`.
pub fn knot_graph<T: Real>(n: usize) -> (TangencyGraph<T>, Vec<T>) {
    let k = chain_len(RectKind::KnotCusp, n);
    let two = T::lit(2.0);
    let mut g = TangencyGraph::new(2 * n);
    g.add(FLOOR, Node::Fixed(GeneralizedCircle::horizontal(T::zero(), true)));
    g.add(ROOF, Node::Fixed(GeneralizedCircle::horizontal(T::one(), false)));
    g.add("P1", Node::Fixed(unit_circle_at(T::zero())));
    g.add(
        "P3",
        Node::Circle {
            cx: Affine::constant(T::zero()).plus(0, two),
            cy: Affine::constant(half()),
            r: Affine::constant(half()),
        },
    );
    g.add(
        "B",
        Node::Circle {
            cx: Affine::var(0),
            cy: Affine::constant(T::one()).plus(1, -T::one()),
            r: Affine::var(1),
        },
    );
    for j in 1..=k {
        let m = j.min(k + 1 - j);
        let cx = if j < n {
            Affine::var(2 * m)
        } else {
            Affine::constant(T::zero()).plus(0, two).plus(2 * m, -T::one())
        };
        g.add(
            chain_name(j),
            Node::Circle {
                cx,
                cy: Affine::var(2 * m + 1),
                r: Affine::var(2 * m + 1),
            },
        );
    }
    let s = |x: &str| x.to_string();
    let mut solved = vec![(s("B"), s("P1")), (chain_name(1), s("P1"))];
    for j in 1..n {
        solved.push((chain_name(j), s("B")));
        solved.push((chain_name(j), chain_name(j + 1)));
    }
    split_edges(&mut g, RectKind::KnotCusp, n, solved);

    // Walls near 1.8 apart, B of diameter near 0.8, chain evenly spread on
    // the floor between the wall circles with radii 1/(2 * chain length).
    let a = T::lit(0.9);
    let rho = T::one() / (two * T::from_int(k as i64));
    let mut init = vec![a, T::lit(0.4)];
    for j in 1..n {
        let t = (T::from_int(j as i64) - half()) / T::from_int(k as i64);
        init.push(half::<T>() + (two * a - T::one()) * t);
        init.push(rho);
    }
    (g, init)
}

/// Solved circles of a model graph, as named generalized circles.
pub fn solve_model<T: Real>(g: &TangencyGraph<T>, init: &[T]) -> Result<Vec<(String, GeneralizedCircle<T>)>> {
    Ok(super::solver::solve_tangency(g, init)?.circles)
}
