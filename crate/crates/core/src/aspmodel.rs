//! Signal model on the triangle: shifts, filters and the visualization graph.
//!
//! The filter algebra is polynomials in `x₁, x₂` modulo the polynomials
//! vanishing on the node set. It is never formed symbolically; instead every
//! algebra operation is carried out through values at the nodes, where
//! multiplication is pointwise.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::cheb2d::{ChebTable, MultiIndex, Shift};
use crate::error::{Error, Result};
use crate::scalar::{max_abs, Scalar};
use crate::xform::{Signal, Spectrum, TransformPlan};

/// Multiplication by `x₁` and `x₂` acting on coefficient vectors.
#[derive(Debug, Clone)]
pub struct ShiftMatrices<T: Scalar> {
    pub s1: DMatrix<T>,
    pub s2: DMatrix<T>,
}

impl<T: Scalar> ShiftMatrices<T> {
    /// `S_i = (Fᵀ)⁻¹ diag(α_i) Fᵀ`, using the closed-form inverse.
    pub fn build(plan: &TransformPlan<T>) -> Self {
        let ft = plan.f().transpose();
        let shift = |coords: DVector<T>| {
            let mut scaled = ft.clone();
            for (mut row, &a) in scaled.row_iter_mut().zip(coords.iter()) {
                row *= a;
            }
            plan.f_inv().tr_mul(&scaled)
        };
        let x = plan.grid().x();
        Self {
            s1: shift(DVector::from_iterator(x.len(), x.iter().map(|p| p.x1))),
            s2: shift(DVector::from_iterator(x.len(), x.iter().map(|p| p.x2))),
        }
    }

    pub fn get(&self, shift: Shift) -> &DMatrix<T> {
        match shift {
            Shift::X1 => &self.s1,
            Shift::X2 => &self.s2,
        }
    }

    /// `max |S₁S₂ − S₂S₁|`.
    pub fn commutator_norm(&self) -> T {
        max_abs((&self.s1 * &self.s2 - &self.s2 * &self.s1).iter())
    }
}

/// Filter `h = Σ h_{k,l} T_{k,l}` with support in the basis.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FilterSpec<T> {
    pub coefficients: BTreeMap<MultiIndex, T>,
}

impl<T: Scalar> FilterSpec<T> {
    pub fn new() -> Self {
        Self {
            coefficients: BTreeMap::new(),
        }
    }

    /// Single basis polynomial `T_{k,l}` as a filter.
    pub fn delta(idx: MultiIndex) -> Self {
        Self::new().with(idx, T::one())
    }

    pub fn with(mut self, idx: MultiIndex, value: T) -> Self {
        self.coefficients.insert(idx, value);
        self
    }

    fn check_support(&self, plan: &TransformPlan<T>) -> Result<()> {
        match self.coefficients.keys().find(|idx| !plan.basis().contains(**idx)) {
            Some(&idx) => Err(Error::FilterSupport(idx)),
            None => Ok(()),
        }
    }

    /// Values `h(α)` at every node.
    pub fn frequency_response(&self, plan: &TransformPlan<T>) -> Result<DVector<T>> {
        self.check_support(plan)?;
        let mut resp = DVector::zeros(plan.size());
        for (idx, &h) in &self.coefficients {
            resp += plan.f().row(idx.position()).transpose() * h;
        }
        Ok(resp)
    }
}

/// Filters `s` by multiplying pointwise with the filter's node values.
pub fn apply_filter<T: Scalar>(
    plan: &TransformPlan<T>,
    h: &FilterSpec<T>,
    s: &Signal<T>,
) -> Result<Signal<T>> {
    let resp = h.frequency_response(plan)?;
    if s.len() != plan.size() {
        return Err(Error::LengthMismatch {
            expected: plan.size(),
            got: s.len(),
        });
    }
    Ok(Signal(s.0.component_mul(&resp)))
}

/// Filters in the coefficient domain, evaluating `h(S₁, S₂)` by the shift
/// recurrences applied to the analyzed signal.
pub fn apply_filter_via_shifts<T: Scalar>(
    plan: &TransformPlan<T>,
    shifts: &ShiftMatrices<T>,
    h: &FilterSpec<T>,
    s: &Signal<T>,
) -> Result<Signal<T>> {
    h.check_support(plan)?;
    let c = plan.analyze(s)?;
    let max_degree = h
        .coefficients
        .keys()
        .map(|i| i.degree() as usize)
        .max()
        .unwrap_or(0);
    let table = ChebTable::build::<T, _>(max_degree, c.0, |shift, v: &DVector<T>| shifts.get(shift) * v);
    let mut out = DVector::zeros(plan.size());
    for (idx, &hv) in &h.coefficients {
        out += table.get(*idx).expect("filter index within table") * hv;
    }
    plan.synthesize(&Spectrum(out))
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GraphEdge {
    pub source: usize,
    pub target: usize,
    pub label: String,
}

/// Visualization graph: a vertex per basis polynomial and an undirected edge
/// for every basis polynomial reached by a shift.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignalGraph {
    pub n: usize,
    pub vertices: Vec<[i64; 2]>,
    pub edges: Vec<GraphEdge>,
}

impl SignalGraph {
    pub fn build<T: Scalar>(plan: &TransformPlan<T>) -> Self {
        let basis = plan.basis();
        let mut edges = BTreeSet::new();
        for &idx in basis.indices() {
            let u = idx.position();
            for shift in Shift::ALL {
                for nb in shift.folded_neighbors(idx) {
                    if let Some(v) = basis.position(nb) {
                        edges.insert((u.min(v), u.max(v), shift));
                    }
                }
            }
        }
        Self {
            n: plan.n(),
            vertices: basis.indices().iter().map(|i| [i.k, i.l]).collect(),
            edges: edges
                .into_iter()
                .map(|(source, target, shift)| GraphEdge {
                    source,
                    target,
                    label: shift.label().to_string(),
                })
                .collect(),
        }
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        writeln!(out, "graph triangle_n{} {{", self.n).unwrap();
        for (i, [k, l]) in self.vertices.iter().enumerate() {
            writeln!(out, "  v{i} [label=\"({k},{l})\"];").unwrap();
        }
        for e in &self.edges {
            writeln!(out, "  v{} -- v{} [label=\"{}\"];", e.source, e.target, e.label).unwrap();
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph serializes")
    }
}
