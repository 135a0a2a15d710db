//! Discrete cosine transform on a lattice of triangles.
//!
//! Signals live on the `n(n+1)/2` common zeros of the bivariate Chebyshev
//! polynomials `T_{k,l}` of type B2 with `k + l = n`; spectra are
//! coefficients on `{T_{k,l} : k + l < n}`. The inverse transform is
//! closed-form and an orthogonal variant is available.
//!
//! ```
//! use tridct::{Plan, Signal};
//!
//! let plan = Plan::build(4).unwrap();
//! let s = Signal::from_vec(vec![1.0; plan.size()]);
//! let c = plan.analyze(&s).unwrap();
//! assert!((c.as_slice()[0] - 1.0).abs() < 1e-12);
//! ```
//!
//! Everything numeric is generic over [`Scalar`] (`f32`, `f64`); the
//! aliases below fix the scalar type.

pub mod aspmodel;
pub mod cdkernel;
pub mod cheb2d;
pub mod error;
pub mod nodegrid;
pub mod random;
pub mod scalar;
pub mod verify;
pub mod xform;

pub use aspmodel::{apply_filter, apply_filter_via_shifts, FilterSpec, ShiftMatrices, SignalGraph};
pub use cdkernel::{cd_kernel, cd_kernel_direct, RecurrenceMatrices, WeightMatrices};
pub use cheb2d::{
    canonicalize, check_decomposition, eval_t_exact, eval_t_theta, eval_t_vector, eval_t_x,
    theta_to_x, ChebTable, ExactTheta, MultiIndex, Shift, ThetaPoint, XPoint,
};
pub use error::{Error, Result};
pub use nodegrid::{node_count, NodeGrid, NodeLabel};
pub use scalar::{Rational, Scalar};
pub use xform::{BasisOrder, Signal, Spectrum, TransformPlan};

/// Double precision plan.
pub type Plan = TransformPlan<f64>;
/// Single precision plan.
pub type PlanF32 = TransformPlan<f32>;
pub type Grid = NodeGrid<f64>;
pub type GridF32 = NodeGrid<f32>;
pub type Shifts = ShiftMatrices<f64>;
pub type Filter = FilterSpec<f64>;
pub type Point = XPoint<f64>;
pub type Theta = ThetaPoint<f64>;
