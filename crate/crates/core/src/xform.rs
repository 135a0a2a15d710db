//! The triangle transform matrix, its closed-form inverse and orthogonal variant.
//!
//! Rows of `F` are indexed by the basis `T_{k,l}`, `k + l < n`, in
//! degree-major order; columns by the nodes in `(k, j)` order. Synthesis of
//! samples from coefficients is therefore `Fᵀc`. With `G = FᵀH⊕F` diagonal,
//!
//! ```text
//! D      = diag(G)⁻¹
//! F⁻¹    = D Fᵀ H⊕
//! F_orth = √H⊕ F √D
//! ```

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::cdkernel::WeightMatrices;
use crate::cheb2d::{eval_t_exact, MultiIndex};
use crate::error::{Error, Result};
use crate::nodegrid::{node_count, NodeGrid};
use crate::scalar::Scalar;

/// Smallest admissible magnitude of a diagonal entry of `FᵀH⊕F`.
pub const MIN_DIAGONAL: f64 = 1e-12;

/// Basis `{T_{k,l} : k + l < n}` in degree-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisOrder {
    n: usize,
    indices: Vec<MultiIndex>,
}

impl BasisOrder {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSize(n));
        }
        let indices = (0..node_count(n)).map(MultiIndex::from_position).collect();
        Ok(Self { n, indices })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    pub fn contains(&self, idx: MultiIndex) -> bool {
        idx.is_canonical() && (idx.degree() as usize) < self.n
    }

    pub fn position(&self, idx: MultiIndex) -> Option<usize> {
        self.contains(idx).then(|| idx.position())
    }
}

/// Samples on the nodes, in node order.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal<T: Scalar>(pub DVector<T>);

/// Coefficients on the basis, in basis order.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T: Scalar>(pub DVector<T>);

impl<T: Scalar> Signal<T> {
    pub fn from_vec(v: Vec<T>) -> Self {
        Self(DVector::from_vec(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[T] {
        self.0.as_slice()
    }
}

impl<T: Scalar> Spectrum<T> {
    pub fn from_vec(v: Vec<T>) -> Self {
        Self(DVector::from_vec(v))
    }

    /// Unit coefficient on one basis polynomial.
    pub fn unit(basis: &BasisOrder, idx: MultiIndex) -> Option<Self> {
        let p = basis.position(idx)?;
        let mut v = DVector::zeros(basis.len());
        v[p] = T::one();
        Some(Self(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[T] {
        self.0.as_slice()
    }
}

/// Everything needed to transform signals of one size `n`.
#[derive(Debug, Clone)]
pub struct TransformPlan<T: Scalar> {
    n: usize,
    basis: BasisOrder,
    grid: NodeGrid<T>,
    weights: WeightMatrices,
    f: DMatrix<T>,
    h_oplus: DVector<T>,
    gram_diag: DVector<T>,
    d: DVector<T>,
    f_inv: DMatrix<T>,
    f_orth: DMatrix<T>,
    off_diagonal_ratio: T,
}

fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, got })
    }
}

impl<T: Scalar> TransformPlan<T> {
    pub fn build(n: usize) -> Result<Self> {
        let basis = BasisOrder::new(n)?;
        let grid = NodeGrid::<T>::build(n)?;
        let weights = WeightMatrices::build(n)?;
        let size = basis.len();

        // Entries from exact node angles; rows in parallel.
        let rows: Vec<Vec<T>> = basis
            .indices()
            .par_iter()
            .map(|&idx| {
                grid.theta_exact()
                    .iter()
                    .map(|&th| eval_t_exact::<T>(idx, th))
                    .collect()
            })
            .collect();
        let f = DMatrix::from_fn(size, size, |r, c| rows[r][c]);

        let h_oplus = weights.h_oplus::<T>();
        let mut hf = f.clone();
        for (mut row, &h) in hf.row_iter_mut().zip(h_oplus.iter()) {
            row *= h;
        }
        let gram = f.transpose() * &hf;
        let gram_diag = gram.diagonal();

        let mut min_diag = T::infinity();
        for (i, &g) in gram_diag.iter().enumerate() {
            if g.abs() < T::lit(MIN_DIAGONAL) {
                return Err(Error::VanishingDiagonal {
                    index: i,
                    value: g.to_f64().unwrap_or(0.0),
                });
            }
            min_diag = min_diag.min(g.abs());
        }
        let mut max_off = T::zero();
        for c in 0..size {
            for r in 0..size {
                if r != c {
                    max_off = max_off.max(gram[(r, c)].abs());
                }
            }
        }
        let off_diagonal_ratio = max_off / min_diag;
        if off_diagonal_ratio > T::lit(T::DIAGONAL_TOL) {
            return Err(Error::NotDiagonal {
                ratio: off_diagonal_ratio.to_f64().unwrap_or(f64::NAN),
                tol: T::DIAGONAL_TOL,
            });
        }

        let d = gram_diag.map(|g| T::one() / g);
        // F⁻¹ = D Fᵀ H⊕ = D (H⊕F)ᵀ
        let mut f_inv = hf.transpose();
        for (mut row, &dv) in f_inv.row_iter_mut().zip(d.iter()) {
            row *= dv;
        }
        let f_orth = if d.iter().all(|&v| v > T::zero()) {
            let sqrt_h = h_oplus.map(|h| h.sqrt());
            let sqrt_d = d.map(|v| v.sqrt());
            DMatrix::from_fn(size, size, |r, c| sqrt_h[r] * f[(r, c)] * sqrt_d[c])
        } else {
            DMatrix::from_element(size, size, T::nan())
        };

        Ok(Self {
            n,
            basis,
            grid,
            weights,
            f,
            h_oplus,
            gram_diag,
            d,
            f_inv,
            f_orth,
            off_diagonal_ratio,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Transform size `N = n(n+1)/2`.
    pub fn size(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &BasisOrder {
        &self.basis
    }

    pub fn grid(&self) -> &NodeGrid<T> {
        &self.grid
    }

    pub fn weights(&self) -> &WeightMatrices {
        &self.weights
    }

    /// `F[(k,l), α] = T_{k,l}(α)`.
    pub fn f(&self) -> &DMatrix<T> {
        &self.f
    }

    pub fn f_inv(&self) -> &DMatrix<T> {
        &self.f_inv
    }

    pub fn f_orth(&self) -> &DMatrix<T> {
        &self.f_orth
    }

    /// Diagonal of `H⊕`.
    pub fn h_oplus(&self) -> &DVector<T> {
        &self.h_oplus
    }

    /// Diagonal of `D`.
    pub fn d(&self) -> &DVector<T> {
        &self.d
    }

    /// Diagonal of `FᵀH⊕F`.
    pub fn gram_diagonal(&self) -> &DVector<T> {
        &self.gram_diag
    }

    /// `max |G_ij|, i ≠ j` over `min |G_ii|`, measured during construction.
    pub fn off_diagonal_ratio(&self) -> T {
        self.off_diagonal_ratio
    }

    pub fn h_oplus_matrix(&self) -> DMatrix<T> {
        DMatrix::from_diagonal(&self.h_oplus)
    }

    pub fn d_matrix(&self) -> DMatrix<T> {
        DMatrix::from_diagonal(&self.d)
    }

    /// Samples at the nodes of `Σ c_{k,l} T_{k,l}`.
    pub fn synthesize(&self, c: &Spectrum<T>) -> Result<Signal<T>> {
        check_len(self.size(), c.len())?;
        Ok(Signal(self.f.tr_mul(&c.0)))
    }

    /// Coefficients whose synthesis reproduces `s`: `H⊕ F D s`.
    pub fn analyze(&self, s: &Signal<T>) -> Result<Spectrum<T>> {
        check_len(self.size(), s.len())?;
        let ds = s.0.component_mul(&self.d);
        Ok(Spectrum((&self.f * ds).component_mul(&self.h_oplus)))
    }

    fn check_orthogonal(&self) -> Result<()> {
        match self.d.iter().position(|&v| v.is_nan() || v <= T::zero()) {
            Some(index) => Err(Error::NegativeWeight {
                index,
                value: self.d[index].to_f64().unwrap_or(f64::NAN),
            }),
            None => Ok(()),
        }
    }

    /// `F_orth · v`.
    pub fn apply_orthogonal(&self, v: &[T]) -> Result<Vec<T>> {
        self.check_orthogonal()?;
        check_len(self.size(), v.len())?;
        let out = &self.f_orth * DVector::from_column_slice(v);
        Ok(out.as_slice().to_vec())
    }

    /// `F_orthᵀ · v`, the inverse of [`TransformPlan::apply_orthogonal`].
    pub fn apply_orthogonal_inverse(&self, v: &[T]) -> Result<Vec<T>> {
        self.check_orthogonal()?;
        check_len(self.size(), v.len())?;
        let out = self.f_orth.tr_mul(&DVector::from_column_slice(v));
        Ok(out.as_slice().to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_vector, seeded};

    #[test]
    fn size_one_plan() {
        let p = TransformPlan::<f64>::build(1).unwrap();
        assert_eq!(p.f().as_slice(), &[1.0]);
        assert_eq!(p.h_oplus().as_slice(), &[2.0]);
        assert_eq!(p.gram_diagonal().as_slice(), &[2.0]);
        assert_eq!(p.d().as_slice(), &[0.5]);
        assert_eq!(p.f_inv().as_slice(), &[1.0]);
        assert!((p.f_orth()[(0, 0)] - 1.0).abs() < 1e-15);
        let v = p.apply_orthogonal(&[3.5]).unwrap();
        assert!((v[0] - 3.5).abs() < 1e-14);
    }

    #[test]
    fn size_two_rows() {
        let p = TransformPlan::<f64>::build(2).unwrap();
        let f = p.f();
        for (c, x) in p.grid().x().iter().enumerate() {
            assert_eq!(f[(0, c)], 1.0);
            assert!((f[(1, c)] - x.x2).abs() < 1e-15);
            assert!((f[(2, c)] - x.x1).abs() < 1e-15);
        }
    }

    #[test]
    fn basis_order() {
        let b = BasisOrder::new(3).unwrap();
        let got: Vec<_> = b.indices().iter().map(|i| (i.k, i.l)).collect();
        assert_eq!(got, vec![(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]);
        assert!(b.contains(MultiIndex::new(2, 0)));
        assert!(!b.contains(MultiIndex::new(2, 1)));
        assert!(!b.contains(MultiIndex::new(-1, 1)));
        assert!(BasisOrder::new(0).is_err());
    }

    #[test]
    fn units_and_constants() {
        let p = TransformPlan::<f64>::build(5).unwrap();
        let one = Spectrum::unit(p.basis(), MultiIndex::new(0, 0)).unwrap();
        let s = p.synthesize(&one).unwrap();
        assert!(s.0.iter().all(|&v| (v - 1.0).abs() < 1e-15));
        let back = p.analyze(&s).unwrap();
        assert!((back.0 - &one.0).amax() < 1e-12);

        let e10 = Spectrum::unit(p.basis(), MultiIndex::new(1, 0)).unwrap();
        let s = p.synthesize(&e10).unwrap();
        for (v, x) in s.0.iter().zip(p.grid().x()) {
            assert!((v - x.x1).abs() < 1e-15);
        }
        let back = p.analyze(&s).unwrap();
        assert!((back.0 - &e10.0).amax() < 1e-9);
    }

    #[test]
    fn length_checks() {
        let p = TransformPlan::<f64>::build(3).unwrap();
        let err = p.analyze(&Signal::from_vec(vec![0.0; 5])).unwrap_err();
        assert_eq!(err, Error::LengthMismatch { expected: 6, got: 5 });
        assert!(p.synthesize(&Spectrum::from_vec(vec![0.0; 7])).is_err());
        assert!(p.apply_orthogonal(&[0.0; 2]).is_err());
        assert!(TransformPlan::<f64>::build(0).is_err());
    }

    #[test]
    fn roundtrip() {
        let mut rng = seeded(21);
        for n in [2, 6, 11] {
            let p = TransformPlan::<f64>::build(n).unwrap();
            let c = Spectrum::from_vec(random_vector(&mut rng, p.size()));
            let back = p.analyze(&p.synthesize(&c).unwrap()).unwrap();
            assert!((back.0 - &c.0).amax() < 1e-9);
            let v = random_vector::<f64>(&mut rng, p.size());
            let w = p.apply_orthogonal(&v).unwrap();
            let u = p.apply_orthogonal_inverse(&w).unwrap();
            let err = v.iter().zip(&u).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            assert!(err < 1e-9);
        }
    }

    #[test]
    fn single_precision_plan() {
        let p = TransformPlan::<f32>::build(6).unwrap();
        let eye = p.f() * p.f_inv();
        let dev = (eye - DMatrix::<f32>::identity(21, 21)).amax();
        assert!(dev < 1e-4, "{dev}");
    }
}
