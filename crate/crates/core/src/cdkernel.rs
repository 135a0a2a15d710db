//! Vector three-term recurrence and the Christoffel-Darboux kernel.
//!
//! With `𝕋_k = (T_{0,k}, T_{1,k-1}, …, T_{k,0})ᵀ` the shift recurrences
//! take the block form
//!
//! ```text
//! x_i 𝕋_k = A_{k,i} 𝕋_{k+1} + B_{k,i} 𝕋_k + C_{k,i} 𝕋_{k-1}
//! ```
//!
//! and, with the normalizations `H_0 = ½`, `H_k = diag(⅛, 1/16, …, 1/16, ⅛)`,
//! the kernel `Σ_{k<n} 𝕋_kᵀ(x) H_k⁻¹ 𝕋_k(y)` collapses to an expression in
//! `𝕋_n` and `𝕋_{n-1}` alone.

use nalgebra::{DMatrix, DVector};
use num_traits::Zero;

use crate::cheb2d::{eval_t_theta, theta_to_x, ChebTable, MultiIndex, Shift, ThetaPoint, XPoint};
use crate::error::{Error, Result};
use crate::nodegrid::node_count;
use crate::scalar::{max_abs, Rational, Scalar};

/// Below this gap in the shift coordinate the difference quotient is refused.
pub const DEGENERATE_GAP: f64 = 1e-12;

/// Blocks `A_{k,i}`, `B_{k,i}`, `C_{k,i}` with exact entries.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceMatrices {
    pub degree: usize,
    pub shift: Shift,
    /// `(k+1) × (k+2)`
    pub a: DMatrix<Rational>,
    /// `(k+1) × (k+1)`
    pub b: DMatrix<Rational>,
    /// `(k+1) × k`
    pub c: DMatrix<Rational>,
}

impl RecurrenceMatrices {
    /// Expands the scalar recurrence for each entry of `𝕋_k`, folds every
    /// neighbor and sorts the coefficient into the block of its degree.
    pub fn build(degree: usize, shift: Shift) -> Result<Self> {
        let k = degree as i64;
        let quarter = Rational::new(1, 4);
        let mut a = DMatrix::from_element(degree + 1, degree + 2, Rational::zero());
        let mut b = DMatrix::from_element(degree + 1, degree + 1, Rational::zero());
        let mut c = DMatrix::from_element(degree + 1, degree, Rational::zero());
        for m in 0..=k {
            let row = m as usize;
            let idx = MultiIndex::new(m, k - m);
            for nb in shift.folded_neighbors(idx) {
                let col = nb.k as usize;
                match nb.degree() - k {
                    1 => a[(row, col)] += quarter,
                    0 => b[(row, col)] += quarter,
                    -1 => c[(row, col)] += quarter,
                    _ => {
                        return Err(Error::RecurrenceDegree {
                            index: idx,
                            folded: nb,
                            lo: k - 1,
                            hi: k + 1,
                        })
                    }
                }
            }
        }
        Ok(Self {
            degree,
            shift,
            a,
            b,
            c,
        })
    }

    pub fn a_scalar<T: Scalar>(&self) -> DMatrix<T> {
        self.a.map(T::from_rational)
    }

    pub fn b_scalar<T: Scalar>(&self) -> DMatrix<T> {
        self.b.map(T::from_rational)
    }

    pub fn c_scalar<T: Scalar>(&self) -> DMatrix<T> {
        self.c.map(T::from_rational)
    }

    /// `‖x_i 𝕋_k − A 𝕋_{k+1} − B 𝕋_k − C 𝕋_{k−1}‖∞` at a point.
    pub fn residual<T: Scalar>(&self, x: XPoint<T>) -> T {
        let table = ChebTable::at_point(self.degree + 1, x);
        self.residual_with(x, |d| DVector::from_column_slice(table.degree_slice(d)))
    }

    /// Same residual with `𝕋` evaluated in closed form at an angle point.
    pub fn residual_at_theta<T: Scalar>(&self, theta: ThetaPoint<T>) -> T {
        let vec = |d: usize| {
            DVector::from_iterator(
                d + 1,
                (0..=d as i64).map(|m| eval_t_theta(MultiIndex::new(m, d as i64 - m), theta)),
            )
        };
        self.residual_with(theta_to_x(theta), vec)
    }

    fn residual_with<T: Scalar>(&self, x: XPoint<T>, vec: impl Fn(usize) -> DVector<T>) -> T {
        let k = self.degree;
        let tk = vec(k);
        let mut rhs = self.a_scalar::<T>() * vec(k + 1) + self.b_scalar::<T>() * &tk;
        if k > 0 {
            rhs += self.c_scalar::<T>() * vec(k - 1);
        }
        max_abs((tk * x.coord(self.shift) - rhs).iter())
    }
}

/// Normalization blocks `H_0, …, H_{n-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightMatrices {
    n: usize,
    blocks: Vec<Vec<Rational>>,
}

/// Diagonal of `H_k`.
pub fn weight_block(k: usize) -> Vec<Rational> {
    if k == 0 {
        return vec![Rational::new(1, 2)];
    }
    let mut block = vec![Rational::new(1, 16); k + 1];
    block[0] = Rational::new(1, 8);
    block[k] = Rational::new(1, 8);
    block
}

impl WeightMatrices {
    pub fn build(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSize(n));
        }
        Ok(Self {
            n,
            blocks: (0..n).map(weight_block).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<Rational>] {
        &self.blocks
    }

    /// Diagonal of `H⊕ = ⊕_k H_k⁻¹` in basis order.
    pub fn h_oplus_exact(&self) -> Vec<Rational> {
        self.blocks
            .iter()
            .flat_map(|b| b.iter().map(|h| h.recip()))
            .collect()
    }

    pub fn h_oplus<T: Scalar>(&self) -> DVector<T> {
        let diag: Vec<T> = self.h_oplus_exact().into_iter().map(T::from_rational).collect();
        debug_assert_eq!(diag.len(), node_count(self.n));
        DVector::from_vec(diag)
    }

    pub fn h_oplus_matrix<T: Scalar>(&self) -> DMatrix<T> {
        DMatrix::from_diagonal(&self.h_oplus())
    }
}

fn h_inv<T: Scalar>(k: usize) -> DVector<T> {
    DVector::from_iterator(k + 1, weight_block(k).into_iter().map(|h| T::from_rational(h.recip())))
}

/// Direct kernel sum `Σ_{k<n} 𝕋_kᵀ(x) H_k⁻¹ 𝕋_k(y)`.
pub fn cd_kernel_direct<T: Scalar>(n: usize, x: XPoint<T>, y: XPoint<T>) -> T {
    if n == 0 {
        return T::zero();
    }
    let tx = ChebTable::at_point(n - 1, x);
    let ty = ChebTable::at_point(n - 1, y);
    (0..n)
        .map(|k| {
            let w = h_inv::<T>(k);
            tx.degree_slice(k)
                .iter()
                .zip(ty.degree_slice(k))
                .zip(w.iter())
                .fold(T::zero(), |acc, ((&a, &b), &h)| acc + a * h * b)
        })
        .fold(T::zero(), |acc, v| acc + v)
}

/// Closed form of the kernel for points that differ in coordinate `i`:
///
/// ```text
/// [(A 𝕋_n(x))ᵀ H⁻¹ 𝕋_{n-1}(y) − 𝕋_{n-1}(x)ᵀ H⁻¹ A 𝕋_n(y)] / (x_i − y_i)
/// ```
///
/// with `A = A_{n-1,i}` and `H = H_{n-1}`.
pub fn cd_kernel<T: Scalar>(n: usize, x: XPoint<T>, y: XPoint<T>, shift: Shift) -> Result<T> {
    if n == 0 {
        return Err(Error::InvalidSize(n));
    }
    let gap = x.coord(shift) - y.coord(shift);
    if gap.abs() < T::lit(DEGENERATE_GAP) {
        return Err(Error::NearDegenerate {
            direction: shift.index(),
            gap: gap.abs().to_f64().unwrap_or(0.0),
        });
    }
    let a = RecurrenceMatrices::build(n - 1, shift)?.a_scalar::<T>();
    let w = h_inv::<T>(n - 1);
    let tx = ChebTable::at_point(n, x);
    let ty = ChebTable::at_point(n, y);
    let vec = |t: &ChebTable<T>, d: usize| DVector::from_column_slice(t.degree_slice(d));

    let ax = &a * vec(&tx, n);
    let ay = &a * vec(&ty, n);
    let lhs = ax.component_mul(&w).dot(&vec(&ty, n - 1));
    let rhs = vec(&tx, n - 1).component_mul(&w).dot(&ay);
    Ok((lhs - rhs) / gap)
}
