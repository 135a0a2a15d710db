//! Common zeros of the degree-`n` polynomials, used as sampling nodes.
//!
//! The nodes are `(θ₁, θ₂) = (k/2n, j/4n)` for `k = 0..n`, odd `j < 2n`
//! and `j ≥ 2k`, ordered lexicographically by `(k, j)`. There are
//! `n(n+1)/2` of them and every `T_{k,l}` with `k + l = n` vanishes there.

use rayon::prelude::*;

use crate::cheb2d::{eval_t_exact, exact_theta_to_x, ExactTheta, MultiIndex, ThetaPoint, XPoint};
use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// Integer labels `(k, j)` of a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeLabel {
    pub k: usize,
    pub j: usize,
}

#[derive(Debug, Clone)]
pub struct NodeGrid<T> {
    n: usize,
    labels: Vec<NodeLabel>,
    theta_exact: Vec<ExactTheta>,
    theta: Vec<ThetaPoint<T>>,
    x: Vec<XPoint<T>>,
}

/// Number of nodes (and basis polynomials) for size `n`.
pub const fn node_count(n: usize) -> usize {
    n * (n + 1) / 2
}

impl<T: Scalar> NodeGrid<T> {
    pub fn build(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSize(n));
        }
        let labels: Vec<NodeLabel> = (0..n)
            .flat_map(|k| {
                (1..2 * n)
                    .step_by(2)
                    .filter(move |&j| j >= 2 * k)
                    .map(move |j| NodeLabel { k, j })
            })
            .collect();
        let nn = n as i64;
        let theta_exact: Vec<ExactTheta> = labels
            .iter()
            .map(|l| {
                ExactTheta::new(
                    Rational::new(l.k as i64, 2 * nn),
                    Rational::new(l.j as i64, 4 * nn),
                )
            })
            .collect();
        let theta = theta_exact.iter().map(|t| t.to_float()).collect();
        let x = theta_exact.iter().map(|&t| exact_theta_to_x(t)).collect();
        Ok(Self {
            n,
            labels,
            theta_exact,
            theta,
            x,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[NodeLabel] {
        &self.labels
    }

    pub fn theta_exact(&self) -> &[ExactTheta] {
        &self.theta_exact
    }

    pub fn theta(&self) -> &[ThetaPoint<T>] {
        &self.theta
    }

    pub fn x(&self) -> &[XPoint<T>] {
        &self.x
    }

    /// Largest `|T_{k,l}(α)|` over all nodes `α` and `k + l = n`.
    pub fn verify_common_zeros(&self) -> T {
        let n = self.n as i64;
        self.theta_exact
            .par_iter()
            .map(|&th| {
                (0..=n)
                    .map(|k| eval_t_exact::<T>(MultiIndex::new(k, n - k), th).abs())
                    .fold(T::zero(), T::max)
            })
            .reduce(T::zero, T::max)
    }

    /// Smallest Euclidean distance between two distinct x-nodes.
    pub fn min_pairwise_distance(&self) -> T {
        let xs = &self.x;
        (0..xs.len())
            .into_par_iter()
            .map(|i| {
                (i + 1..xs.len())
                    .map(|j| {
                        let d1 = xs[i].x1 - xs[j].x1;
                        let d2 = xs[i].x2 - xs[j].x2;
                        (d1 * d1 + d2 * d2).sqrt()
                    })
                    .fold(T::infinity(), T::min)
            })
            .reduce(T::infinity, T::min)
    }
}
