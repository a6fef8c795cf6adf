//! Legendre–Gauss–Lobatto collocation on `[-1, 1]`.
//!
//! The nodes are the endpoints `±1` together with the `N - 1` roots of
//! `P'_N`. The cardinal functions
//!
//! ```text
//! g_j(x) = -(1 - x²) P'_N(x) / (N (N + 1) P_N(x_j) (x - x_j))
//! ```
//!
//! satisfy `g_j(x_k) = δ_jk`, and everything downstream (quadrature, the
//! kinetic operator, wavefunction reconstruction) is expressed through them.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const NEWTON_BUDGET: usize = 100;
const NEWTON_TOL: f64 = 1e-15;

/// Evaluates `(P_n(x), P'_n(x))` with the Bonnet recurrence.
pub fn legendre_pair(n: usize, x: f64) -> Result<(f64, f64)> {
    if !(x.abs() <= 1.0 + 1e-14) {
        return Err(Error::Domain(format!(
            "legendre_pair: |x| = {} > 1",
            x.abs()
        )));
    }
    let x = x.clamp(-1.0, 1.0);
    Ok(legendre_unchecked(n, x))
}

fn legendre_unchecked(n: usize, x: f64) -> (f64, f64) {
    let nf = n as f64;
    if x.abs() == 1.0 {
        let sign = if x > 0.0 || n.is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        // P'_n(±1) = (±1)^(n+1) n (n+1) / 2
        return (sign, sign * x * nf * (nf + 1.0) / 2.0);
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let (mut prev, mut cur) = (1.0, x);
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * x * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    let deriv = nf * (prev - x * cur) / (1.0 - x * x);
    (cur, deriv)
}

/// Returns the `N + 1` Gauss–Lobatto nodes of order `order`, ascending.
pub fn lobatto_nodes(order: usize) -> Result<Vec<f64>> {
    if order < 2 {
        return Err(Error::Domain(format!(
            "collocation order must be >= 2, got {order}"
        )));
    }
    let n = order;
    let nf = n as f64;
    let mut nodes = vec![0.0; n + 1];
    nodes[0] = -1.0;
    nodes[n] = 1.0;
    // Solve for the left half and mirror so that x_j = -x_{N-j} holds exactly.
    for j in 1..=(n / 2) {
        if 2 * j == n {
            nodes[j] = 0.0;
            continue;
        }
        let mut x = -(PI * j as f64 / nf).cos();
        let mut converged = false;
        for _ in 0..NEWTON_BUDGET {
            let (p, dp) = legendre_unchecked(n, x);
            // Legendre ODE: (1 - x²) P'' = 2 x P' - n (n + 1) P
            let d2p = (2.0 * x * dp - nf * (nf + 1.0) * p) / (1.0 - x * x);
            let step = dp / d2p;
            x -= step;
            if step.abs() < NEWTON_TOL {
                converged = true;
                break;
            }
        }
        if !converged || !(x > -1.0 && x < 0.0) {
            return Err(Error::NodeConvergence { order: n, index: j });
        }
        nodes[j] = x;
        nodes[n - j] = -x;
    }
    if nodes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::NodeConvergence { order: n, index: 0 });
    }
    Ok(nodes)
}

/// Gauss–Lobatto weights `w_j = 2 / (N (N + 1) P_N(x_j)²)`.
pub fn lobatto_weights(legendre_at_nodes: &[f64]) -> Vec<f64> {
    let nf = (legendre_at_nodes.len() - 1) as f64;
    legendre_at_nodes
        .iter()
        .map(|p| 2.0 / (nf * (nf + 1.0) * p * p))
        .collect()
}

/// Nodes, weights and the second-derivative table for one collocation order.
///
/// Built once and shared read-only between solves.
#[derive(Debug, Clone)]
pub struct CollocationSet {
    order: usize,
    nodes: Vec<f64>,
    legendre_at_nodes: Vec<f64>,
    weights: Vec<f64>,
    /// Row-major `(N+1)²` table, `d2[row * (N+1) + col] = g_col''(x_row)`.
    d2: Vec<f64>,
}

impl CollocationSet {
    pub fn new(order: usize) -> Result<Self> {
        let nodes = lobatto_nodes(order)?;
        let legendre_at_nodes: Vec<f64> = nodes
            .iter()
            .map(|&x| legendre_unchecked(order, x).0)
            .collect();
        let weights = lobatto_weights(&legendre_at_nodes);
        let mut set = Self {
            order,
            nodes,
            legendre_at_nodes,
            weights,
            d2: Vec::new(),
        };
        set.d2 = second_derivative_table(&set);
        set.check_polynomial_exactness()?;
        Ok(set)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.order + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn legendre_at_nodes(&self) -> &[f64] {
        &self.legendre_at_nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `g_col''(x_row)`.
    #[inline]
    pub fn d2(&self, row: usize, col: usize) -> f64 {
        self.d2[row * self.len() + col]
    }

    /// Quadrature of `f` sampled at the nodes.
    pub fn integrate(&self, samples: &[f64]) -> f64 {
        self.weights.iter().zip(samples).map(|(w, f)| w * f).sum()
    }

    /// Evaluates the cardinal function `g_j` at `x`.
    pub fn cardinal(&self, j: usize, x: f64) -> Result<f64> {
        cardinal_eval(j, x, self)
    }

    // Differentiating 1 and x² exactly is cheap to verify at any order and
    // catches sign or indexing mistakes in the closed forms.
    fn check_polynomial_exactness(&self) -> Result<()> {
        let n = self.len();
        for row in 0..n {
            let mut of_one = 0.0;
            let mut of_square = 0.0;
            let mut scale = 0.0_f64;
            for col in 0..n {
                let d = self.d2(row, col);
                of_one += d;
                of_square += d * self.nodes[col] * self.nodes[col];
                scale = scale.max(d.abs());
            }
            let tol = 1e-11 * scale.max(1.0);
            if of_one.abs() > tol || (of_square - 2.0).abs() > tol {
                return Err(Error::DerivativeSelfCheck {
                    row,
                    col: row,
                    closed: of_square,
                    numeric: 2.0,
                });
            }
        }
        Ok(())
    }
}

/// Cardinal function `g_j(x)`; the removable singularity at `x = x_j` is
/// replaced by its Taylor expansion.
pub fn cardinal_eval(j: usize, x: f64, set: &CollocationSet) -> Result<f64> {
    if j > set.order {
        return Err(Error::Domain(format!(
            "cardinal index {j} > order {}",
            set.order
        )));
    }
    if !(x.abs() <= 1.0 + 1e-14) {
        return Err(Error::Domain(format!(
            "cardinal_eval: |x| = {} > 1",
            x.abs()
        )));
    }
    let x = x.clamp(-1.0, 1.0);
    let n = set.order as f64;
    let xj = set.nodes[j];
    let pj = set.legendre_at_nodes[j];
    let h = x - xj;
    if h.abs() < 1e-9 {
        let d1 = first_derivative_at_node(set, j);
        return Ok(1.0 + d1 * h + 0.5 * set.d2(j, j) * h * h);
    }
    let (_, dp) = legendre_unchecked(set.order, x);
    Ok(-(1.0 - x * x) * dp / (n * (n + 1.0) * pj * h))
}

fn first_derivative_at_node(set: &CollocationSet, j: usize) -> f64 {
    let n = set.order as f64;
    if j == 0 {
        -n * (n + 1.0) / 4.0
    } else if j == set.order {
        n * (n + 1.0) / 4.0
    } else {
        0.0
    }
}

/// Closed-form `g_j''(x_k)` for every node pair, in pure x-space.
///
/// With `q(x) = (1 - x²) P'_N(x)` the Legendre equation gives
/// `q' = -N(N+1) P_N` and `q'' = -N(N+1) P'_N`, and `q` vanishes at every
/// node, which yields
///
/// * interior row `k != j`: `-2 P_N(x_k) / (P_N(x_j) (x_k - x_j)²)`
/// * interior diagonal: `-N(N+1) / (3 (1 - x_k²))`
/// * boundary row `k != j`: the interior value plus `P'_N(x_k) / (P_N(x_j) (x_k - x_j))`
/// * boundary diagonal: `(N-1) N (N+1) (N+2) / 24`
pub fn second_derivative_table(set: &CollocationSet) -> Vec<f64> {
    let order = set.order;
    let n = order as f64;
    let len = order + 1;
    let nn1 = n * (n + 1.0);
    let mut table = vec![0.0; len * len];
    for k in 0..len {
        let xk = set.nodes[k];
        let pk = set.legendre_at_nodes[k];
        let boundary = k == 0 || k == order;
        let dpk = if boundary {
            legendre_unchecked(order, xk).1
        } else {
            0.0
        };
        for j in 0..len {
            let value = if j == k {
                if boundary {
                    (n - 1.0) * n * (n + 1.0) * (n + 2.0) / 24.0
                } else {
                    -nn1 / (3.0 * (1.0 - xk * xk))
                }
            } else {
                let pj = set.legendre_at_nodes[j];
                let h = xk - set.nodes[j];
                let mut v = -2.0 * pk / (pj * h * h);
                if boundary {
                    v += dpk / (pj * h);
                }
                v
            };
            table[k * len + j] = value;
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_pair_examples() {
        let (p, dp) = legendre_pair(2, 0.0).unwrap();
        assert_eq!((p, dp), (-0.5, 0.0));
        let (p, dp) = legendre_pair(3, 0.5).unwrap();
        assert!((p + 0.4375).abs() < 1e-15 && (dp - 0.375).abs() < 1e-15);
        assert_eq!(legendre_pair(4, 1.0).unwrap(), (1.0, 10.0));
        assert_eq!(legendre_pair(3, -1.0).unwrap(), (-1.0, 6.0));
        assert!(legendre_pair(3, 1.0 + 1e-10).is_err());
    }

    #[test]
    fn small_orders() {
        assert_eq!(lobatto_nodes(2).unwrap(), vec![-1.0, 0.0, 1.0]);
        let x = lobatto_nodes(4).unwrap();
        let r = (3.0_f64 / 7.0).sqrt();
        assert_eq!(x[2], 0.0);
        assert!((x[1] + r).abs() < 1e-15 && (x[3] - r).abs() < 1e-15);
        assert!((x[3] - 0.6546536707).abs() < 1e-10);
        assert!(lobatto_nodes(1).is_err());
    }

    #[test]
    fn order_300_nodes_are_roots() {
        let x = lobatto_nodes(300).unwrap();
        assert_eq!(x.len(), 301);
        assert!(x.windows(2).all(|w| w[0] < w[1]));
        // |P'_N| itself is limited by |P''_N| ~ N⁴ near the ends, so the
        // check is on the remaining Newton correction instead.
        let nf = 300.0;
        for &xi in &x[1..300] {
            let (p, dp) = legendre_pair(300, xi).unwrap();
            let d2p = (2.0 * xi * dp - nf * (nf + 1.0) * p) / (1.0 - xi * xi);
            assert!((dp / d2p).abs() < 1e-15, "x = {xi}: step {}", dp / d2p);
        }
        for order in [4, 7, 10] {
            let x = lobatto_nodes(order).unwrap();
            for &xi in &x[1..order] {
                assert!(legendre_pair(order, xi).unwrap().1.abs() < 1e-13);
            }
        }
    }

    #[test]
    fn nodes_and_weights_are_symmetric() {
        for order in [2, 3, 8, 51, 300] {
            let set = CollocationSet::new(order).unwrap();
            let (x, w) = (set.nodes(), set.weights());
            for j in 0..=order {
                assert_eq!(x[j], -x[order - j]);
                assert!((w[j] - w[order - j]).abs() <= 1e-15 * w[j]);
            }
            let total: f64 = w.iter().sum();
            assert!((total - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn simpson_weights() {
        let set = CollocationSet::new(2).unwrap();
        let w = set.weights();
        assert!((w[0] - 1.0 / 3.0).abs() < 1e-15);
        assert!((w[1] - 4.0 / 3.0).abs() < 1e-15);
        assert!((w[2] - 1.0 / 3.0).abs() < 1e-15);
        let sq: Vec<f64> = set.nodes().iter().map(|x| x * x).collect();
        assert!((set.integrate(&sq) - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn odd_moment_at_exactness_boundary() {
        for order in [5, 20, 300] {
            let set = CollocationSet::new(order).unwrap();
            let f: Vec<f64> = set
                .nodes()
                .iter()
                .map(|x| x.powi(2 * order as i32 - 1))
                .collect();
            assert!(set.integrate(&f).abs() < 1e-13);
        }
    }

    #[test]
    fn cardinal_property() {
        let set = CollocationSet::new(12).unwrap();
        let x = set.nodes().to_vec();
        assert_eq!(set.cardinal(3, x[3]).unwrap(), 1.0);
        assert!(set.cardinal(3, x[5]).unwrap().abs() < 1e-12);
        for j in 0..=12 {
            for (k, &xk) in x.iter().enumerate() {
                let expect = if j == k { 1.0 } else { 0.0 };
                assert!((set.cardinal(j, xk).unwrap() - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn cardinal_closed_form_order_4() {
        let set = CollocationSet::new(4).unwrap();
        let x: f64 = 0.3;
        // P_4 = (35x⁴ - 30x² + 3)/8, P'_4 = (140x³ - 60x)/8, P_4(0) = 3/8
        let dp4 = (140.0 * x.powi(3) - 60.0 * x) / 8.0;
        let expect = -(1.0 - x * x) * dp4 / (20.0 * 0.375 * x);
        assert!((set.cardinal(2, x).unwrap() - expect).abs() < 1e-15);
    }

    #[test]
    fn second_derivative_of_constant_and_square() {
        let set = CollocationSet::new(30).unwrap();
        let x = set.nodes();
        for row in 1..30 {
            let ones: f64 = (0..=30).map(|j| set.d2(row, j)).sum();
            let sq: f64 = (0..=30).map(|j| set.d2(row, j) * x[j] * x[j]).sum();
            assert!(ones.abs() < 1e-9);
            assert!((sq - 2.0).abs() < 1e-9);
        }
    }

    #[test]
    fn rejects_bad_cardinal_index() {
        let set = CollocationSet::new(4).unwrap();
        assert!(set.cardinal(5, 0.0).is_err());
        assert!(set.cardinal(1, 1.5).is_err());
    }
    // Product form of the Lagrange cardinal, valid off [-1, 1] as well.
    fn lagrange(set: &CollocationSet, j: usize, x: f64) -> f64 {
        let nodes = set.nodes();
        nodes
            .iter()
            .enumerate()
            .filter(|&(m, _)| m != j)
            .map(|(_, &xm)| (x - xm) / (nodes[j] - xm))
            .product()
    }

    #[test]
    fn second_derivative_matches_richardson_differences() {
        for order in [6, 13, 24, 40] {
            let set = CollocationSet::new(order).unwrap();
            let fd = |j: usize, x: f64, h: f64| {
                (lagrange(&set, j, x + h) - 2.0 * lagrange(&set, j, x) + lagrange(&set, j, x - h))
                    / (h * h)
            };
            let nodes = set.nodes();
            let mut worst = 0.0_f64;
            for k in 0..=order {
                let xk = nodes[k];
                let gap = match k {
                    0 => nodes[1] - nodes[0],
                    _ if k == order => nodes[k] - nodes[k - 1],
                    _ => (nodes[k + 1] - xk).min(xk - nodes[k - 1]),
                };
                let h = 0.05 * gap;
                for j in 0..=order {
                    // two Richardson levels remove the h² and h⁴ terms
                    let (d1, d2, d4) = (fd(j, xk, h), fd(j, xk, h / 2.0), fd(j, xk, h / 4.0));
                    let r1 = (4.0 * d2 - d1) / 3.0;
                    let r2 = (4.0 * d4 - d2) / 3.0;
                    let numeric = (16.0 * r2 - r1) / 15.0;
                    let closed = set.d2(k, j);
                    let rel = (closed - numeric).abs() / closed.abs().max(1.0);
                    worst = worst.max(rel);
                }
            }
            assert!(
                worst < 1e-7,
                "order {order}: worst relative deviation {worst:e}"
            );
        }
    }

    #[test]
    fn cardinal_agrees_with_product_form() {
        let set = CollocationSet::new(17).unwrap();
        for j in [0, 3, 8, 17] {
            for x in [-0.97, -0.3, 0.011, 0.5, 0.999] {
                let a = set.cardinal(j, x).unwrap();
                assert!((a - lagrange(&set, j, x)).abs() < 1e-12, "j={j} x={x}");
            }
        }
    }
}
