//! Finite-difference stencils.
//!
//! Weights come from Fornberg's recursion, so the same code serves uniform
//! central stencils, one-sided stencils at domain ends and non-uniform
//! sample spacing.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul};

use super::{Interval, Vec3};

/// Values a stencil can combine.
pub trait Sample: Copy + Add<Output = Self> + Mul<f64, Output = Self> {
    const ZERO: Self;
}

impl Sample for f64 {
    const ZERO: f64 = 0.0;
}

impl Sample for Vec3 {
    const ZERO: Vec3 = Vec3::ZERO;
}

/// Weights approximating the `order`-th derivative at 0 from samples taken
/// at `offsets` (Fornberg 1988).
pub fn weights(offsets: &[f64], order: usize) -> Vec<f64> {
    let n = offsets.len();
    assert!(n > order, "need more than {order} points for derivative order {order}");
    let mut c = vec![vec![0.0; order + 1]; n];
    let mut c1 = 1.0;
    let mut c4 = offsets[0];
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = offsets[i];
        for j in 0..i {
            let c3 = offsets[i] - offsets[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[order]).collect()
}

/// Default step for a synthesized derivative of the given order.
///
/// Each floor balances the `h⁴` truncation error of the fourth-order
/// stencil against rounding, which grows like `ε/hᵏ` for order `k`.
pub fn step_for(order: usize, domain: Interval) -> f64 {
    let floor: f64 = match order {
        1 => 2e-3,
        2 => 2e-2,
        _ => 1e-1,
    };
    floor.max(1e-7 * domain.len()).min(domain.len() / 16.0)
}

/// Number of points in the fourth-order stencil for `order`.
fn central_half_width(order: usize) -> usize {
    (order + 3) / 2
}

/// Fourth-order derivative of `f` at `s`, central where the stencil fits in
/// `domain`, one-sided otherwise.
pub fn derivative_of<T: Sample>(f: impl Fn(f64) -> T, domain: Interval, s: f64, order: usize, h: f64) -> T {
    let p = central_half_width(order) as i64;
    let offsets: Vec<i64> = if s - p as f64 * h >= domain.lo() && s + p as f64 * h <= domain.hi() {
        (-p..=p).collect()
    } else {
        let width = (order + 4) as i64;
        if s - domain.lo() < domain.hi() - s {
            (0..width).collect()
        } else {
            (-(width - 1)..=0).collect()
        }
    };
    let x: Vec<f64> = offsets.iter().map(|&k| k as f64).collect();
    let w = weights(&x, order);
    let scale = 1.0 / crate::math::powi(h, order as i32);
    let mut acc = T::ZERO;
    for (&k, &wk) in offsets.iter().zip(&w) {
        if wk != 0.0 {
            let at = (s + k as f64 * h).clamp(domain.lo(), domain.hi());
            acc = acc + f(at) * wk;
        }
    }
    acc * scale
}

/// Fourth-order derivative of sampled values at every node. Works on
/// non-uniform nodes; windows shift to one side near the ends.
pub fn sampled_derivative<T: Sample>(nodes: &[f64], values: &[T], order: usize) -> Vec<T> {
    assert_eq!(nodes.len(), values.len());
    let n = nodes.len();
    let width = if order <= 2 { 5 } else { 7 }.max(order + 1);
    let width = width.min(n);
    let one_sided = (order + 4).min(n);
    (0..n)
        .map(|i| {
            let half = width / 2;
            let (lo, hi) = if i >= half && i + half < n {
                (i - half, i + half + 1)
            } else if i < half {
                (0, one_sided)
            } else {
                (n - one_sided, n)
            };
            let x: Vec<f64> = nodes[lo..hi].iter().map(|&t| t - nodes[i]).collect();
            let w = weights(&x, order);
            values[lo..hi]
                .iter()
                .zip(&w)
                .fold(T::ZERO, |acc, (&v, &wk)| acc + v * wk)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn classic_central_weights() {
        let w = weights(&[-2.0, -1.0, 0.0, 1.0, 2.0], 1);
        let expect = [1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0];
        for (a, b) in w.iter().zip(expect) {
            assert!(close(*a, b, 1e-15), "{w:?}");
        }
        let w2 = weights(&[-2.0, -1.0, 0.0, 1.0, 2.0], 2);
        let expect2 = [-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0, 16.0 / 12.0, -1.0 / 12.0];
        for (a, b) in w2.iter().zip(expect2) {
            assert!(close(*a, b, 1e-14), "{w2:?}");
        }
    }

    #[test]
    fn cubic_exact_to_1e10() {
        // s³ - 2s² + s on [-1, 2]: stencils of order 4 are exact on cubics.
        let d = Interval::new(-1.0, 2.0).unwrap();
        let f = |s: f64| s * s * s - 2.0 * s * s + s;
        for &s in &[-1.0, -0.3, 0.0, 0.5, 1.0, 1.99, 2.0] {
            let d1 = derivative_of(f, d, s, 1, step_for(1, d));
            let d2 = derivative_of(f, d, s, 2, step_for(2, d));
            let d3 = derivative_of(f, d, s, 3, step_for(3, d));
            assert!(close(d1, 3.0 * s * s - 4.0 * s + 1.0, 1e-10), "d1 at {s}: {d1}");
            assert!(close(d2, 6.0 * s - 4.0, 1e-10), "d2 at {s}: {d2}");
            assert!(close(d3, 6.0, 1e-10), "d3 at {s}: {d3}");
        }
    }

    #[test]
    fn sampled_matches_sine() {
        let nodes: Vec<f64> = (0..200).map(|i| i as f64 * 0.01).collect();
        let vals: Vec<f64> = nodes.iter().map(|&s| libm::sin(s)).collect();
        let d = sampled_derivative(&nodes, &vals, 1);
        for (s, v) in nodes.iter().zip(&d) {
            assert!(close(*v, libm::cos(*s), 1e-8));
        }
        let d2 = sampled_derivative(&nodes, &vals, 2);
        for (s, v) in nodes.iter().zip(&d2) {
            assert!(close(*v, -libm::sin(*s), 1e-6), "{s} {v}");
        }
    }
}
