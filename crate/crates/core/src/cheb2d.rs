//! Bivariate Chebyshev polynomials of type B2.
//!
//! A polynomial `T_{k,l}` is given in closed form as an average of four
//! cosines in angle coordinates `(θ₁, θ₂)`, and as a polynomial in
//! `(x₁, x₂)` through the two shift recurrences
//!
//! ```text
//! x₁·T_{k,l} = ¼ (T_{k+1,l} + T_{k-1,l} + T_{k-1,l+2} + T_{k+1,l-2})
//! x₂·T_{k,l} = ¼ (T_{k,l+1} + T_{k,l-1} + T_{k-1,l+1} + T_{k+1,l-1})
//! ```
//!
//! Both paths are kept and checked against one another. Indices leaving
//! the nonnegative quadrant are folded back with the reflections
//! `s₁: (k,l) ↦ (−k, 2k+l)` and `s₂: (k,l) ↦ (k+l, −l)`, which leave the
//! closed form unchanged.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{cos_turns, Rational, Scalar};

/// Label `(k, l)` of the polynomial `T_{k,l}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MultiIndex {
    pub k: i64,
    pub l: i64,
}

impl MultiIndex {
    pub const fn new(k: i64, l: i64) -> Self {
        Self { k, l }
    }

    /// Total degree `k + l`.
    pub const fn degree(&self) -> i64 {
        self.k + self.l
    }

    pub const fn is_canonical(&self) -> bool {
        self.k >= 0 && self.l >= 0
    }

    /// Position in the degree-major ordering `T_{0,0}; T_{0,1}, T_{1,0}; T_{0,2}, …`.
    ///
    /// Only meaningful for canonical indices.
    pub fn position(&self) -> usize {
        let d = self.degree() as usize;
        d * (d + 1) / 2 + self.k as usize
    }

    /// Inverse of [`MultiIndex::position`].
    pub fn from_position(p: usize) -> Self {
        let mut d = 0usize;
        while (d + 1) * (d + 2) / 2 <= p {
            d += 1;
        }
        let k = p - d * (d + 1) / 2;
        Self::new(k as i64, (d - k) as i64)
    }

    fn reflect_first(self) -> Self {
        Self::new(-self.k, 2 * self.k + self.l)
    }

    fn reflect_second(self) -> Self {
        Self::new(self.k + self.l, -self.l)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.k, self.l)
    }
}

impl From<(i64, i64)> for MultiIndex {
    fn from((k, l): (i64, i64)) -> Self {
        Self::new(k, l)
    }
}

/// Point in angle coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaPoint<T> {
    pub t1: T,
    pub t2: T,
}

impl<T: Scalar> ThetaPoint<T> {
    pub fn new(t1: T, t2: T) -> Self {
        Self { t1, t2 }
    }

    /// Membership in the fundamental triangle `0 ≤ θ₁ ≤ θ₂ ≤ ½`.
    pub fn in_fundamental_triangle(&self) -> bool {
        T::zero() <= self.t1 && self.t1 <= self.t2 && self.t2 <= T::lit(0.5)
    }
}

/// Point in angle coordinates with exact rational entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExactTheta {
    pub t1: Rational,
    pub t2: Rational,
}

impl ExactTheta {
    pub fn new(t1: Rational, t2: Rational) -> Self {
        Self { t1, t2 }
    }

    pub fn in_fundamental_triangle(&self) -> bool {
        Rational::from_integer(0) <= self.t1
            && self.t1 <= self.t2
            && self.t2 <= Rational::new(1, 2)
    }

    pub fn to_float<T: Scalar>(&self) -> ThetaPoint<T> {
        ThetaPoint::new(T::from_rational(self.t1), T::from_rational(self.t2))
    }
}

/// Point in the polynomial coordinates `(x₁, x₂)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XPoint<T> {
    pub x1: T,
    pub x2: T,
}

impl<T: Scalar> XPoint<T> {
    pub fn new(x1: T, x2: T) -> Self {
        Self { x1, x2 }
    }

    pub fn coord(&self, shift: Shift) -> T {
        match shift {
            Shift::X1 => self.x1,
            Shift::X2 => self.x2,
        }
    }
}

/// One of the two generators `x₁`, `x₂` of the polynomial algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Shift {
    X1,
    X2,
}

impl Shift {
    pub const ALL: [Shift; 2] = [Shift::X1, Shift::X2];

    pub fn from_index(i: u8) -> Result<Self> {
        match i {
            1 => Ok(Shift::X1),
            2 => Ok(Shift::X2),
            other => Err(Error::InvalidDirection(other)),
        }
    }

    pub fn index(&self) -> u8 {
        match self {
            Shift::X1 => 1,
            Shift::X2 => 2,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Shift::X1 => "x1",
            Shift::X2 => "x2",
        }
    }

    /// The four unfolded indices on the right of `x_i·T_{k,l} = ¼ Σ T_…`.
    pub fn neighbors(&self, idx: MultiIndex) -> [MultiIndex; 4] {
        let MultiIndex { k, l } = idx;
        match self {
            Shift::X1 => [
                MultiIndex::new(k + 1, l),
                MultiIndex::new(k - 1, l),
                MultiIndex::new(k - 1, l + 2),
                MultiIndex::new(k + 1, l - 2),
            ],
            Shift::X2 => [
                MultiIndex::new(k, l + 1),
                MultiIndex::new(k, l - 1),
                MultiIndex::new(k - 1, l + 1),
                MultiIndex::new(k + 1, l - 1),
            ],
        }
    }

    /// Neighbors of [`Shift::neighbors`] folded into the nonnegative quadrant.
    pub fn folded_neighbors(&self, idx: MultiIndex) -> [MultiIndex; 4] {
        self.neighbors(idx).map(fold)
    }
}

impl fmt::Display for Shift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

const FOLD_LIMIT: usize = 16;

/// Folds an arbitrary integer index onto an equivalent one with `k, l ≥ 0`.
pub fn canonicalize(idx: MultiIndex) -> Result<MultiIndex> {
    let mut cur = idx;
    for _ in 0..FOLD_LIMIT {
        if cur.k < 0 {
            cur = cur.reflect_first();
        } else if cur.l < 0 {
            cur = cur.reflect_second();
        } else {
            return Ok(cur);
        }
    }
    Err(Error::FoldingDiverged(idx))
}

// The B2 reflection group has eight elements; folding always finishes in a
// handful of steps.
pub(crate) fn fold(idx: MultiIndex) -> MultiIndex {
    canonicalize(idx).expect("B2 index folding terminates")
}

/// Coordinate change from angle coordinates to `(x₁, x₂)`.
pub fn theta_to_x<T: Scalar>(theta: ThetaPoint<T>) -> XPoint<T> {
    let tau = T::TAU();
    let pi = T::PI();
    let ThetaPoint { t1, t2 } = theta;
    XPoint::new(
        (tau * t2).cos() * (tau * (t1 - t2)).cos(),
        (pi * t1).cos() * (pi * (t1 - t2 - t2)).cos(),
    )
}

/// Coordinate change evaluated from exact angles.
pub fn exact_theta_to_x<T: Scalar>(theta: ExactTheta) -> XPoint<T> {
    let ExactTheta { t1, t2 } = theta;
    let half = Rational::new(1, 2);
    XPoint::new(
        cos_turns::<T>(t2) * cos_turns::<T>(t1 - t2),
        cos_turns::<T>(t1 * half) * cos_turns::<T>((t1 - t2 * 2) * half),
    )
}

// Arguments of the four cosines, in turns per unit angle.
fn cosine_frequencies(idx: MultiIndex) -> [(i64, i64); 4] {
    let MultiIndex { k, l } = idx;
    [
        (k, l),
        (k + l, -l),
        (k, -(2 * k + l)),
        (k + l, -(2 * k + l)),
    ]
}

/// Closed-form value of `T_{k,l}` at an angle point.
pub fn eval_t_theta<T: Scalar>(idx: MultiIndex, theta: ThetaPoint<T>) -> T {
    let tau = T::TAU();
    let sum = cosine_frequencies(idx)
        .iter()
        .map(|&(a, b)| {
            let a = T::from_i64(a).unwrap();
            let b = T::from_i64(b).unwrap();
            (tau * (a * theta.t1 + b * theta.t2)).cos()
        })
        .fold(T::zero(), |acc, c| acc + c);
    sum * T::lit(0.25)
}

/// Closed-form value of `T_{k,l}` at an exact angle point; cosine arguments
/// are reduced modulo a full turn before rounding.
pub fn eval_t_exact<T: Scalar>(idx: MultiIndex, theta: ExactTheta) -> T {
    let sum = cosine_frequencies(idx)
        .iter()
        .map(|&(a, b)| cos_turns::<T>(theta.t1 * a + theta.t2 * b))
        .fold(T::zero(), |acc, c| acc + c);
    sum * T::lit(0.25)
}

/// Values `T_{k,l}` for every `k + l ≤ max_degree`, stored in degree-major order.
///
/// The element type is generic: scalars give point values, while vectors
/// with a matrix action for the shifts give `T_{k,l}(S₁, S₂)·v`.
#[derive(Debug, Clone)]
pub struct ChebTable<E> {
    max_degree: usize,
    values: Vec<E>,
}

impl<E: Clone> ChebTable<E> {
    /// Fills the table by solving each shift recurrence for its highest
    /// degree term.
    ///
    /// `mul` applies multiplication by `x₁` or `x₂` to an element and
    /// `scale` multiplies by a scalar.
    pub fn build<T, M>(max_degree: usize, one: E, mul: M) -> Self
    where
        T: Scalar,
        E: Add<Output = E> + Sub<Output = E> + Mul<T, Output = E>,
        M: Fn(Shift, &E) -> E,
    {
        let len = (max_degree + 1) * (max_degree + 2) / 2;
        let mut values: Vec<Option<E>> = vec![None; len];
        values[0] = Some(one);
        let quarter = T::lit(0.25);

        for d in 0..max_degree as i64 {
            // Targets with l ≥ 1 come from x₂ applied to degree d, the corner
            // T_{d+1,0} from x₁·T_{d,0}, which may reference T_{d-1,2}.
            let steps = (0..=d)
                .map(|k| (MultiIndex::new(k, d + 1 - k), Shift::X2, MultiIndex::new(k, d - k)))
                .chain(std::iter::once((
                    MultiIndex::new(d + 1, 0),
                    Shift::X1,
                    MultiIndex::new(d, 0),
                )));
            for (target, shift, source) in steps {
                let src = values[source.position()]
                    .as_ref()
                    .expect("source of degree d computed");
                let mut acc = mul(shift, src);
                let mut hits = 0usize;
                for nb in shift.folded_neighbors(source) {
                    if nb == target {
                        hits += 1;
                    } else {
                        let v = values[nb.position()]
                            .as_ref()
                            .expect("recurrence neighbor computed before target");
                        acc = acc - v.clone() * quarter;
                    }
                }
                debug_assert!(hits > 0);
                let inv = T::lit(4.0 / hits as f64);
                values[target.position()] = Some(acc * inv);
            }
        }

        Self {
            max_degree,
            values: values.into_iter().map(|v| v.expect("table complete")).collect(),
        }
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Value for a canonical index of degree at most `max_degree`.
    pub fn get(&self, idx: MultiIndex) -> Option<&E> {
        if !idx.is_canonical() || idx.degree() as usize > self.max_degree {
            return None;
        }
        self.values.get(idx.position())
    }

    /// The vector `(T_{0,d}, T_{1,d-1}, …, T_{d,0})`.
    pub fn degree_slice(&self, d: usize) -> &[E] {
        let start = d * (d + 1) / 2;
        &self.values[start..start + d + 1]
    }

    pub fn values(&self) -> &[E] {
        &self.values
    }
}

/// Degree up to which point tables come straight from the shift recurrences.
const SEED_DEGREE: usize = 6;

impl<T: Scalar> ChebTable<T> {
    /// Scalar table at a point.
    ///
    /// Marching the shift recurrences by total degree amplifies rounding
    /// geometrically, so only `k, l ≤ 3` is taken from [`ChebTable::build`].
    /// Writing `x₁ = uv`, `x₂ = (u+v)/2` gives
    /// `T_{k,l} = ½(T_{k+l}(u)T_k(v) + T_k(u)T_{k+l}(v))` with univariate
    /// `T_m`, so every row and column of the table obeys a fourth-order
    /// recurrence whose characteristic roots lie on the unit circle:
    ///
    /// ```text
    /// T_{k,l+4} = 4x₂ T_{k,l+3} − (2 + 4x₁) T_{k,l+2} + 4x₂ T_{k,l+1} − T_{k,l}
    /// T_{k+4,l} = 4x₁ T_{k+3,l} − (16x₂² − 8x₁ − 2) T_{k+2,l} + 4x₁ T_{k+1,l} − T_{k,l}
    /// ```
    pub fn at_point(max_degree: usize, x: XPoint<T>) -> Self {
        let seed = Self::build(max_degree.min(SEED_DEGREE), T::one(), |shift, v: &T| {
            x.coord(shift) * *v
        });
        if max_degree <= SEED_DEGREE {
            return seed;
        }

        let len = (max_degree + 1) * (max_degree + 2) / 2;
        let mut values = vec![T::zero(); len];
        let at = |k: usize, l: usize| MultiIndex::new(k as i64, l as i64).position();
        let four = T::lit(4.0);
        let two = T::lit(2.0);
        let along_k = (four * x.x1, T::lit(16.0) * x.x2 * x.x2 - T::lit(8.0) * x.x1 - two);
        let along_l = (four * x.x2, two + four * x.x1);

        for l in 0..=3.min(max_degree) {
            for k in 0..=max_degree - l {
                values[at(k, l)] = if k < 4 {
                    seed.values[at(k, l)]
                } else {
                    let (a, b) = along_k;
                    a * values[at(k - 1, l)] - b * values[at(k - 2, l)] + a * values[at(k - 3, l)]
                        - values[at(k - 4, l)]
                };
            }
        }
        for k in 0..=max_degree {
            for l in 4..=max_degree.saturating_sub(k) {
                let (a, b) = along_l;
                values[at(k, l)] = a * values[at(k, l - 1)] - b * values[at(k, l - 2)]
                    + a * values[at(k, l - 3)]
                    - values[at(k, l - 4)];
            }
        }
        Self { max_degree, values }
    }
}

/// Evaluates `T_{k,l}(x₁, x₂)` through the shift recurrences.
pub fn eval_t_x<T: Scalar>(idx: MultiIndex, x: XPoint<T>) -> T {
    let idx = fold(idx);
    let table = ChebTable::at_point(idx.degree() as usize, x);
    *table.get(idx).expect("index within table")
}

/// The degree-`k` vector `𝕋_k(x) = (T_{0,k}, T_{1,k-1}, …, T_{k,0})`.
pub fn eval_t_vector<T: Scalar>(k: usize, x: XPoint<T>) -> Vec<T> {
    ChebTable::at_point(k, x).degree_slice(k).to_vec()
}

/// Residual `|T_{k,l}(T_{n,0}(x), T_{0,n}(x)) − T_{nk,nl}(x)|` at `x = theta_to_x(θ)`.
pub fn check_decomposition<T: Scalar>(k: i64, l: i64, n: i64, theta: ThetaPoint<T>) -> T {
    let x = theta_to_x(theta);
    let inner = XPoint::new(
        eval_t_x(MultiIndex::new(n, 0), x),
        eval_t_x(MultiIndex::new(0, n), x),
    );
    let lhs = eval_t_x(MultiIndex::new(k, l), inner);
    let rhs = eval_t_x(MultiIndex::new(n * k, n * l), x);
    (lhs - rhs).abs()
}
