//! Self-verification suites run by `tridct verify`.
//!
//! Each check reports the measured worst-case residual next to its
//! threshold. Checks whose natural threshold is `1e-9` use the configurable
//! tolerance; the others keep their fixed thresholds.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::aspmodel::ShiftMatrices;
use crate::cdkernel::{cd_kernel, cd_kernel_direct, RecurrenceMatrices};
use crate::cheb2d::{check_decomposition, eval_t_theta, theta_to_x, MultiIndex, Shift};
use crate::error::{Error, Result};
use crate::nodegrid::{node_count, NodeGrid};
use crate::random::{random_theta, random_vector, seeded};
use crate::xform::{Signal, Spectrum, TransformPlan};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub n_max: usize,
    pub tolerance: f64,
    pub samples: usize,
    pub seed: u64,
}

impl VerifyOptions {
    pub fn new(n_max: usize) -> Self {
        Self {
            n_max,
            tolerance: DEFAULT_TOLERANCE,
            samples: 100,
            seed: 0x7269_6463,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub value: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl CheckResult {
    fn new(name: &'static str, value: f64, threshold: f64) -> Self {
        Self {
            name,
            value,
            threshold,
            passed: value.is_finite() && value <= threshold,
        }
    }
}

/// Induced ∞-norm (largest absolute row sum) of `m − I`.
pub fn identity_deviation(m: &DMatrix<f64>) -> f64 {
    (0..m.nrows())
        .map(|r| {
            (0..m.ncols())
                .map(|c| {
                    let e = if r == c { 1.0 } else { 0.0 };
                    (m[(r, c)] - e).abs()
                })
                .sum::<f64>()
        })
        .fold(0.0, f64::max)
}

/// Residual of the scalar shift recurrences at an angle point, evaluated
/// entirely in closed form.
pub fn scalar_recurrence_residual(idx: MultiIndex, shift: Shift, t1: f64, t2: f64) -> f64 {
    let th = crate::cheb2d::ThetaPoint::new(t1, t2);
    let x = theta_to_x(th);
    let lhs = x.coord(shift) * eval_t_theta(idx, th);
    let rhs: f64 = shift
        .folded_neighbors(idx)
        .iter()
        .map(|&nb| eval_t_theta(nb, th))
        .sum::<f64>()
        * 0.25;
    (lhs - rhs).abs()
}

pub fn run(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    if opts.n_max == 0 {
        return Err(Error::InvalidSize(0));
    }
    let tol = opts.tolerance;
    let mut rng = seeded(opts.seed);
    let mut out = Vec::new();

    let grids: Vec<NodeGrid<f64>> = (1..=opts.n_max)
        .map(NodeGrid::build)
        .collect::<Result<_>>()?;
    let bad_counts = grids
        .iter()
        .filter(|g| g.len() != node_count(g.n()))
        .count();
    out.push(CheckResult::new("node count", bad_counts as f64, 0.0));

    let zeros = grids.iter().map(|g| g.verify_common_zeros()).fold(0.0, f64::max);
    out.push(CheckResult::new("common zeros", zeros, 1e-10));

    let mut rec = 0.0f64;
    for _ in 0..opts.samples {
        let th = random_theta::<f64>(&mut rng);
        for p in 0..node_count(opts.n_max + 1) {
            let idx = MultiIndex::from_position(p);
            for shift in Shift::ALL {
                rec = rec.max(scalar_recurrence_residual(idx, shift, th.t1, th.t2));
            }
        }
    }
    out.push(CheckResult::new("shift recurrence", rec, 1e-12));

    let mut dec = 0.0f64;
    for _ in 0..opts.samples {
        let th = random_theta::<f64>(&mut rng);
        for n in 1..=opts.n_max.min(4) as i64 {
            for p in 0..node_count(5) {
                let idx = MultiIndex::from_position(p);
                dec = dec.max(check_decomposition(idx.k, idx.l, n, th));
            }
        }
    }
    out.push(CheckResult::new("decomposition", dec, 1e-10));

    let mut vrec = 0.0f64;
    for k in 0..opts.n_max {
        for shift in Shift::ALL {
            let m = RecurrenceMatrices::build(k, shift)?;
            for _ in 0..opts.samples / 4 + 1 {
                vrec = vrec.max(m.residual_at_theta(random_theta::<f64>(&mut rng)));
            }
        }
    }
    out.push(CheckResult::new("vector recurrence", vrec, 1e-12));

    let mut cd = 0.0f64;
    for n in 1..=opts.n_max {
        for shift in Shift::ALL {
            let mut taken = 0;
            while taken < opts.samples / 4 + 1 {
                let x = theta_to_x(random_theta::<f64>(&mut rng));
                let y = theta_to_x(random_theta::<f64>(&mut rng));
                if (x.coord(shift) - y.coord(shift)).abs() < 1e-3 {
                    continue;
                }
                taken += 1;
                let direct = cd_kernel_direct(n, x, y);
                let closed = cd_kernel(n, x, y, shift)?;
                cd = cd.max((closed - direct).abs() / (1.0 + direct.abs()));
            }
        }
    }
    out.push(CheckResult::new("christoffel-darboux", cd, tol));

    let mut diag = 0.0f64;
    let mut inv = 0.0f64;
    let mut orth = 0.0f64;
    let mut parseval = 0.0f64;
    let mut min_d = f64::INFINITY;
    let mut comm = 0.0f64;
    let mut roundtrip = 0.0f64;
    for n in 1..=opts.n_max {
        let plan = match TransformPlan::<f64>::build(n) {
            Ok(p) => p,
            Err(Error::NotDiagonal { ratio, .. }) => {
                diag = diag.max(ratio);
                continue;
            }
            Err(e) => return Err(e),
        };
        diag = diag.max(plan.off_diagonal_ratio());
        inv = inv.max(identity_deviation(&(plan.f() * plan.f_inv())));
        orth = orth.max(identity_deviation(&plan.f_orth().tr_mul(plan.f_orth())));
        min_d = min_d.min(plan.d().min());
        let v = random_vector::<f64>(&mut rng, plan.size());
        let w = plan.apply_orthogonal(&v)?;
        let nv = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        let nw = w.iter().map(|a| a * a).sum::<f64>().sqrt();
        parseval = parseval.max((nw - nv).abs() / nv);
        if n <= 12 {
            comm = comm.max(ShiftMatrices::build(&plan).commutator_norm());
        }
        if n == opts.n_max {
            let s = Signal::from_vec(random_vector(&mut rng, plan.size()));
            let back = plan.synthesize(&plan.analyze(&s)?)?;
            roundtrip = (back.0 - &s.0).amax();
            let c = Spectrum::from_vec(random_vector(&mut rng, plan.size()));
            let back = plan.analyze(&plan.synthesize(&c)?)?;
            roundtrip = roundtrip.max((back.0 - &c.0).amax());
        }
    }
    out.push(CheckResult::new("diagonality", diag, tol));
    out.push(CheckResult::new("D positivity (min entry, negated)", -min_d, 0.0));
    out.push(CheckResult::new("inverse", inv, tol));
    out.push(CheckResult::new("orthogonality", orth, tol));
    out.push(CheckResult::new("norm preservation", parseval, tol));
    out.push(CheckResult::new("shift commutation", comm, tol));
    out.push(CheckResult::new("round trip", roundtrip, tol));
    Ok(out)
}
