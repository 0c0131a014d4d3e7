use std::collections::VecDeque;

use serde::Serialize;

use super::circle::{GeneralizedCircle, Point};
use crate::error::{Error, Result};
use crate::numeric::solve_dense;
use crate::real::Real;

const MAX_ITER: usize = 100;
const MAX_HALVINGS: usize = 40;

/// `constant + sum coeff * x[index]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Affine<T> {
    pub constant: T,
    pub terms: Vec<(usize, T)>,
}

impl<T: Real> Affine<T> {
    pub fn constant(c: T) -> Self {
        Self {
            constant: c,
            terms: Vec::new(),
        }
    }

    pub fn var(i: usize) -> Self {
        Self {
            constant: T::zero(),
            terms: vec![(i, T::one())],
        }
    }

    pub fn plus(mut self, i: usize, coeff: T) -> Self {
        self.terms.push((i, coeff));
        self
    }

    pub fn offset(mut self, c: T) -> Self {
        self.constant = self.constant + c;
        self
    }

    pub fn eval(&self, x: &[T]) -> T {
        self.terms.iter().fold(self.constant, |acc, &(i, c)| acc + c * x[i])
    }
}

/// A slot in a tangency graph: a fixed generalized circle, or a circle whose
/// centre and radius are affine in the unknowns.
///
/// Mirror symmetries are imposed by sharing unknowns between slots, for
/// example `cx = 2a - x_j` for the reflection of slot `j` in `x = a`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Node<T> {
    Fixed(GeneralizedCircle<T>),
    Circle { cx: Affine<T>, cy: Affine<T>, r: Affine<T> },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TangencyGraph<T> {
    pub unknowns: usize,
    pub nodes: Vec<(String, Node<T>)>,
    /// Tangencies solved for; must number exactly `unknowns`.
    pub edges: Vec<(usize, usize)>,
    /// Tangencies that hold by construction of the parametrization; checked
    /// after convergence.
    pub implied_edges: Vec<(usize, usize)>,
}

impl<T: Real> TangencyGraph<T> {
    pub fn new(unknowns: usize) -> Self {
        Self {
            unknowns,
            nodes: Vec::new(),
            edges: Vec::new(),
            implied_edges: Vec::new(),
        }
    }

    pub fn add(&mut self, name: impl Into<String>, node: Node<T>) -> usize {
        self.nodes.push((name.into(), node));
        self.nodes.len() - 1
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.nodes.iter().position(|(n, _)| n == name)
    }

    fn validate(&self) -> Result<()> {
        let count = self.nodes.len();
        for &(a, b) in self.edges.iter().chain(&self.implied_edges) {
            if a >= count || b >= count || a == b {
                return Err(Error::Usage(format!("edge ({a}, {b}) references invalid nodes")));
            }
        }
        if self.edges.len() != self.unknowns {
            return Err(Error::Usage(format!(
                "{} solved tangencies for {} unknowns",
                self.edges.len(),
                self.unknowns
            )));
        }
        for (name, node) in &self.nodes {
            if let Node::Circle { cx, cy, r } = node {
                let bad = [cx, cy, r]
                    .iter()
                    .any(|a| a.terms.iter().any(|&(i, _)| i >= self.unknowns));
                if bad {
                    return Err(Error::Usage(format!("node {name} uses an unknown out of range")));
                }
            }
        }
        let mut adj = vec![Vec::new(); count];
        for &(a, b) in self.edges.iter().chain(&self.implied_edges) {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; count];
        let mut queue = VecDeque::from([0usize]);
        if count > 0 {
            seen[0] = true;
        }
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Usage("tangency graph is not connected".into()));
        }
        Ok(())
    }

    /// Generalized circles at parameter values `x`.
    pub fn realize(&self, x: &[T]) -> Vec<GeneralizedCircle<T>> {
        self.nodes
            .iter()
            .map(|(_, node)| match node {
                Node::Fixed(c) => *c,
                Node::Circle { cx, cy, r } => GeneralizedCircle::Circle {
                    center: Point::new(cx.eval(x), cy.eval(x)),
                    radius: r.eval(x),
                },
            })
            .collect()
    }

    fn edge_residual(circles: &[GeneralizedCircle<T>], (a, b): (usize, usize)) -> Result<T> {
        circles[a]
            .tangency_residual(&circles[b])
            .ok_or_else(|| Error::Usage(format!("edge ({a}, {b}) joins two lines")))
    }

    /// Gradient of one circle's residual contribution with respect to its
    /// centre and radius.
    fn partials(circles: &[GeneralizedCircle<T>], me: usize, other: usize) -> (Point<T>, T) {
        match (circles[me], circles[other]) {
            (GeneralizedCircle::Circle { center: c1, .. }, GeneralizedCircle::Circle { center: c2, .. }) => {
                let v = c1 - c2;
                let d = v.norm();
                let g = if d > T::zero() {
                    v.scale(d.recip())
                } else {
                    Point::origin()
                };
                (g, -T::one())
            }
            (GeneralizedCircle::Circle { .. }, GeneralizedCircle::Line { normal, .. }) => (normal, -T::one()),
            _ => (Point::origin(), T::zero()),
        }
    }

    fn jacobian(&self, circles: &[GeneralizedCircle<T>]) -> Vec<T> {
        let n = self.unknowns;
        let mut jac = vec![T::zero(); n * n];
        for (row, &(a, b)) in self.edges.iter().enumerate() {
            for (me, other) in [(a, b), (b, a)] {
                let Node::Circle { cx, cy, r } = &self.nodes[me].1 else {
                    continue;
                };
                let (g, dr) = Self::partials(circles, me, other);
                for &(i, c) in &cx.terms {
                    jac[row * n + i] = jac[row * n + i] + g.x * c;
                }
                for &(i, c) in &cy.terms {
                    jac[row * n + i] = jac[row * n + i] + g.y * c;
                }
                for &(i, c) in &r.terms {
                    jac[row * n + i] = jac[row * n + i] + dr * c;
                }
            }
        }
        jac
    }
}

/// Converged packing returned by [`solve_tangency`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Solution<T> {
    pub values: Vec<T>,
    pub circles: Vec<(String, GeneralizedCircle<T>)>,
    /// Largest absolute residual over solved and implied tangencies.
    pub residual: T,
    pub iterations: usize,
}

impl<T: Real> Solution<T> {
    pub fn get(&self, name: &str) -> Option<&GeneralizedCircle<T>> {
        self.circles.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }
}

fn max_abs<T: Real>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |m, x| m.max(x.abs()))
}

/// Damped Newton iteration on the signed tangency residuals of `g`,
/// started from `initial`.
///
/// # Errors
/// [`Error::Usage`] for malformed graphs (non-square, disconnected, bad
/// indices); [`Error::Numerical`] with the residual trace when the Jacobian
/// is singular, the iteration stalls above tolerance, a radius turns
/// nonpositive, or an implied tangency fails.
pub fn solve_tangency<T: Real>(g: &TangencyGraph<T>, initial: &[T]) -> Result<Solution<T>> {
    g.validate()?;
    if initial.len() != g.unknowns {
        return Err(Error::Usage(format!(
            "initial guess has {} values for {} unknowns",
            initial.len(),
            g.unknowns
        )));
    }
    let tol = T::solve_tol();
    let floor = T::epsilon() * T::lit(16.0);
    let mut x = initial.to_vec();
    let mut trace = Vec::new();
    let residuals = |x: &[T]| -> Result<(Vec<GeneralizedCircle<T>>, Vec<T>)> {
        let circles = g.realize(x);
        let r = g
            .edges
            .iter()
            .map(|&e| TangencyGraph::edge_residual(&circles, e))
            .collect::<Result<Vec<_>>>()?;
        Ok((circles, r))
    };
    let fail = |reason: String, trace: Vec<f64>| Error::Numerical {
        what: "tangency solve",
        residual: trace.last().copied().unwrap_or(f64::NAN),
        reason,
        trace,
    };

    let mut iterations = 0;
    let (mut circles, mut r) = residuals(&x)?;
    let mut norm = max_abs(&r);
    trace.push(norm.to_f64_lossy());
    while norm > floor {
        if iterations == MAX_ITER {
            if norm < tol {
                break;
            }
            return Err(fail(format!("{MAX_ITER} iterations without convergence"), trace));
        }
        iterations += 1;
        let jac = g.jacobian(&circles);
        let rhs: Vec<T> = r.iter().map(|&v| -v).collect();
        let Some(step) = solve_dense(jac, rhs) else {
            return Err(fail("singular Jacobian".into(), trace));
        };
        let mut alpha = T::one();
        let mut accepted = None;
        for _ in 0..MAX_HALVINGS {
            let trial: Vec<T> = x.iter().zip(&step).map(|(&a, &d)| a + alpha * d).collect();
            let (c, rr) = residuals(&trial)?;
            let n = max_abs(&rr);
            if n.is_finite() && n < norm {
                accepted = Some((trial, c, rr, n));
                break;
            }
            alpha = alpha / T::lit(2.0);
        }
        match accepted {
            Some((nx, nc, nr, nn)) => {
                x = nx;
                circles = nc;
                r = nr;
                norm = nn;
                trace.push(norm.to_f64_lossy());
            }
            None if norm < tol => break,
            None => return Err(fail("line search stalled".into(), trace)),
        }
    }

    if let Some((name, _)) = g
        .nodes
        .iter()
        .zip(&circles)
        .find(|(_, c)| c.radius().is_some_and(|r| !(r > T::zero())))
        .map(|(n, _)| n)
    {
        return Err(fail(format!("radius of {name} is not positive"), trace));
    }
    let mut residual = norm;
    for &e in &g.implied_edges {
        residual = residual.max(TangencyGraph::edge_residual(&circles, e)?.abs());
    }
    if !(residual < tol) {
        trace.push(residual.to_f64_lossy());
        return Err(fail("implied tangency violated".into(), trace));
    }
    Ok(Solution {
        values: x,
        circles: g.nodes.iter().map(|(n, _)| n.clone()).zip(circles).collect(),
        residual,
        iterations,
    })
}
