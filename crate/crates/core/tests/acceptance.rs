//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::f64::consts::TAU;
use std::process::ExitCode;
use std::time::Instant;

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use tridct::cheb2d::{canonicalize, eval_t_theta, theta_to_x, MultiIndex, Shift};
use tridct::random::{random_theta, random_vector, seeded};
use tridct::verify::identity_deviation;
use tridct::{
    cd_kernel, cd_kernel_direct, check_decomposition, node_count, Grid, Plan, Rational,
    RecurrenceMatrices, Shifts, Signal, Spectrum, Theta,
};

const SAMPLES: usize = 100;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

/// Four-cosine average, valid for any integer index without folding.
fn t_closed(k: i64, l: i64, th: Theta) -> f64 {
    let (k, l) = (k as f64, l as f64);
    let c = |a: f64, b: f64| (TAU * (a * th.t1 + b * th.t2)).cos();
    0.25 * (c(k, l) + c(k + l, -l) + c(k, -(2.0 * k + l)) + c(k + l, -(2.0 * k + l)))
}

fn x_of(th: Theta) -> (f64, f64) {
    let pi = std::f64::consts::PI;
    (
        (TAU * th.t2).cos() * (TAU * (th.t1 - th.t2)).cos(),
        (pi * th.t1).cos() * (pi * (th.t1 - 2.0 * th.t2)).cos(),
    )
}

fn node_counts() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for n in 1..=32 {
        let g = Grid::build(n).unwrap();
        if g.len() != n * (n + 1) / 2 {
            bad.push(n);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        bad.is_empty() && secs < 1.0,
        format!("n = 1..32, mismatches {bad:?}, {secs:.3} s (limit 1 s)"),
    )
}

fn common_zeros() -> Outcome {
    let mut worst = 0.0f64;
    for n in 1..=16usize {
        let g = Grid::build(n).unwrap();
        for th in g.theta() {
            for k in 0..=n as i64 {
                worst = worst.max(t_closed(k, n as i64 - k, *th).abs());
            }
        }
    }
    outcome(worst < 1e-10, format!("max |T_(k,l)| at nodes, k+l = n <= 16: {worst:.2e}"))
}

fn shift_recurrence() -> Outcome {
    let mut rng = seeded(3);
    let mut worst = 0.0f64;
    for _ in 0..SAMPLES {
        let th: Theta = random_theta(&mut rng);
        let (x1, x2) = x_of(th);
        for d in 0..=12i64 {
            for k in 0..=d {
                let idx = MultiIndex::new(k, d - k);
                let t = eval_t_theta(idx, th);
                for (shift, x) in [(Shift::X1, x1), (Shift::X2, x2)] {
                    let rhs: f64 = shift
                        .neighbors(idx)
                        .iter()
                        .map(|&nb| eval_t_theta(canonicalize(nb).unwrap(), th))
                        .sum();
                    worst = worst.max((x * t - 0.25 * rhs).abs());
                }
            }
        }
    }
    outcome(worst < 1e-12, format!("k+l <= 12, both shifts: {worst:.2e}"))
}

fn decomposition() -> Outcome {
    let mut rng = seeded(4);
    let mut worst = 0.0f64;
    for _ in 0..SAMPLES {
        let th: Theta = random_theta(&mut rng);
        for n in 0..=4 {
            for d in 0..=4i64 {
                for k in 0..=d {
                    worst = worst.max(check_decomposition(k, d - k, n, th));
                }
            }
        }
    }
    outcome(worst < 1e-10, format!("k+l <= 4, n <= 4: {worst:.2e}"))
}

/// Hand-built `A_{k,1}`: ½ at (0,1), ½ at (k,k−1) and ¼ at (k,k+1), ¼ at (m,m±1) otherwise.
fn expected_a1(k: usize) -> DMatrix<Rational> {
    let mut a = DMatrix::from_element(k + 1, k + 2, Rational::from_integer(0));
    let half = Rational::new(1, 2);
    let quarter = Rational::new(1, 4);
    if k == 0 {
        a[(0, 1)] = Rational::from_integer(1);
        return a;
    }
    a[(0, 1)] = half;
    for m in 1..k {
        a[(m, m - 1)] = quarter;
        a[(m, m + 1)] = quarter;
    }
    a[(k, k - 1)] = half;
    a[(k, k + 1)] = quarter;
    a
}

fn vector_recurrence() -> Outcome {
    let mut rng = seeded(5);
    let mut worst = 0.0f64;
    for k in 0..=12 {
        for shift in Shift::ALL {
            let m = RecurrenceMatrices::build(k, shift).unwrap();
            for _ in 0..SAMPLES {
                worst = worst.max(m.residual_at_theta(random_theta::<f64>(&mut rng)));
            }
        }
    }
    let pattern: Vec<usize> = (0..=6)
        .filter(|&k| RecurrenceMatrices::build(k, Shift::X1).unwrap().a != expected_a1(k))
        .collect();
    let half = Rational::new(1, 2);
    let zero = Rational::from_integer(0);
    let b11 = DMatrix::from_row_slice(2, 2, &[half, zero, zero, zero]);
    let b_ok = RecurrenceMatrices::build(1, Shift::X1).unwrap().b == b11;
    outcome(
        worst < 1e-12 && pattern.is_empty() && b_ok,
        format!(
            "residual k <= 12: {worst:.2e}; A_(k,1) pattern mismatches for k <= 6: {pattern:?}; B_(1,1) special case {}",
            if b_ok { "ok" } else { "wrong" }
        ),
    )
}

fn christoffel_darboux() -> Outcome {
    let mut rng = seeded(6);
    let mut worst = 0.0f64;
    let mut skipped = 0;
    for n in 1..=12 {
        for shift in Shift::ALL {
            let mut taken = 0;
            while taken < SAMPLES {
                let x = theta_to_x(random_theta::<f64>(&mut rng));
                let y = theta_to_x(random_theta::<f64>(&mut rng));
                if (x.coord(shift) - y.coord(shift)).abs() < 1e-3 {
                    skipped += 1;
                    continue;
                }
                taken += 1;
                let direct = cd_kernel_direct(n, x, y);
                let closed = cd_kernel(n, x, y, shift).unwrap();
                worst = worst.max((closed - direct).abs() / direct.abs().max(1.0));
            }
        }
    }
    outcome(
        worst < 1e-9,
        format!("n <= 12, {SAMPLES} pairs per n and shift ({skipped} near-degenerate redrawn): {worst:.2e}"),
    )
}

fn plans(n_max: usize) -> Vec<Plan> {
    (1..=n_max).map(|n| Plan::build(n).unwrap()).collect()
}

fn diagonality(plans: &[Plan]) -> Outcome {
    let mut worst = 0.0f64;
    let mut min_diag = f64::INFINITY;
    for p in plans {
        // recompute G independently of the plan's cached ratio
        let h = p.h_oplus_matrix();
        let g = p.f().transpose() * h * p.f();
        let diag_min = g.diagonal().iter().fold(f64::INFINITY, |a, v| a.min(v.abs()));
        let mut off = 0.0f64;
        for (r, c) in (0..g.nrows()).flat_map(|r| (0..g.ncols()).map(move |c| (r, c))) {
            if r != c {
                off = off.max(g[(r, c)].abs());
            }
        }
        worst = worst.max(off / diag_min);
        min_diag = min_diag.min(diag_min);
    }
    outcome(
        worst < 1e-9 && min_diag > 0.0,
        format!("n <= 16: off-diagonal / min diagonal {worst:.2e}, min |G_ii| {min_diag:.3}"),
    )
}

fn inverse(plans: &[Plan]) -> Outcome {
    let mut dev = 0.0f64;
    let mut oracle = 0.0f64;
    for p in plans {
        dev = dev.max(identity_deviation(&(p.f() * p.f_inv())));
        let lu = p.f().clone().try_inverse().expect("F is invertible");
        oracle = oracle.max((lu - p.f_inv()).amax());
    }
    outcome(
        dev < 1e-9 && oracle < 1e-8,
        format!("n <= 16: ||F F^-1 - I||inf {dev:.2e}, max entry gap to LU inverse {oracle:.2e}"),
    )
}

fn orthogonality(plans: &[Plan]) -> Outcome {
    let mut rng = seeded(9);
    let mut dev = 0.0f64;
    let mut norm = 0.0f64;
    for p in plans {
        let q = p.f_orth();
        dev = dev.max(identity_deviation(&q.tr_mul(q)));
        for _ in 0..10 {
            let v = DVector::from_vec(random_vector::<f64>(&mut rng, p.size()));
            let w = DVector::from_vec(p.apply_orthogonal(v.as_slice()).unwrap());
            norm = norm.max((w.norm() - v.norm()).abs() / v.norm());
        }
    }
    outcome(
        dev < 1e-9 && norm < 1e-9,
        format!("n <= 16: ||Q^T Q - I||inf {dev:.2e}, relative norm change {norm:.2e}"),
    )
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

fn shift_operators(plans: &[Plan]) -> Outcome {
    let mut comm = 0.0f64;
    let mut stencil = 0.0f64;
    let mut eig = 0.0f64;
    for p in plans.iter().take(12) {
        let s = Shifts::build(p);
        comm = comm.max(s.commutator_norm());
        let n = p.n() as i64;
        let h = p.h_oplus();
        for shift in Shift::ALL {
            let m = s.get(shift);
            // columns of polynomials whose shift stays inside the basis
            for &idx in p.basis().indices().iter().filter(|i| i.degree() <= n - 2) {
                let mut want = DVector::<f64>::zeros(p.size());
                for nb in shift.neighbors(idx) {
                    want[canonicalize(nb).unwrap().position()] += 0.25;
                }
                stencil = stencil.max((m.column(idx.position()) - want).amax());
            }
            // similarity to a symmetric matrix with the same spectrum
            let sym = DMatrix::from_fn(p.size(), p.size(), |r, c| m[(r, c)] * (h[c] / h[r]).sqrt());
            let sym = (&sym + sym.transpose()) * 0.5;
            let got = sorted(sym.symmetric_eigenvalues().iter().copied().collect());
            let want = sorted(p.grid().x().iter().map(|x| x.coord(shift)).collect());
            for (a, b) in got.iter().zip(&want) {
                eig = eig.max((a - b).abs());
            }
        }
    }
    outcome(
        comm < 1e-9 && stencil < 1e-9 && eig < 1e-8,
        format!("n <= 12: commutator {comm:.2e}, stencil {stencil:.2e}, eigenvalues vs nodes {eig:.2e}"),
    )
}

fn large_round_trip() -> Outcome {
    let start = Instant::now();
    let p = Plan::build(64).unwrap();
    let mut rng = seeded(11);
    let s = Signal::from_vec((0..p.size()).map(|_| rng.gen_range(-1.0..1.0)).collect());
    let c = p.analyze(&s).unwrap();
    let back = p.synthesize(&c).unwrap();
    let c2 = Spectrum::from_vec(random_vector(&mut rng, p.size()));
    let back2 = p.analyze(&p.synthesize(&c2).unwrap()).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let err = (back.0 - &s.0).amax().max((back2.0 - &c2.0).amax());
    outcome(
        secs < 30.0 && err < 1e-7 && p.size() == node_count(64),
        format!("n = 64, N = {}: {secs:.2} s (limit 30 s), round-trip error {err:.2e}", p.size()),
    )
}

fn main() -> ExitCode {
    let plans16 = plans(16);
    let results: Vec<(&str, Outcome)> = vec![
        ("node count", node_counts()),
        ("common zeros", common_zeros()),
        ("shift recurrence", shift_recurrence()),
        ("decomposition", decomposition()),
        ("vector recurrence", vector_recurrence()),
        ("christoffel-darboux", christoffel_darboux()),
        ("diagonalization", diagonality(&plans16)),
        ("inverse formula", inverse(&plans16)),
        ("orthogonality", orthogonality(&plans16)),
        ("shift operators", shift_operators(&plans16)),
        ("round trip at n = 64", large_round_trip()),
    ];
    let mut failed = 0;
    for (i, (name, o)) in results.iter().enumerate() {
        println!(
            "[{}] {:>2}. {name}: {}",
            if o.passed { "PASS" } else { "FAIL" },
            i + 1,
            o.detail
        );
        failed += usize::from(!o.passed);
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
