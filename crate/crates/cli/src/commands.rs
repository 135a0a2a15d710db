use std::path::{Path, PathBuf};

use thiserror::Error;
use tridct::verify::{self, VerifyOptions};
use tridct::{Plan, Signal, SignalGraph, Spectrum};

use crate::io::{
    fmt_num, render_nodes, FormatError, MatrixFile, MatrixHeader, NodeRow, VectorFile,
    BASIS_ORDER, NODE_ORDER,
};

/// Environment variable overriding the `verify` tolerance.
pub const TOLERANCE_ENV: &str = "TRIDCT_VERIFY_TOL";

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] tridct::Error),
    #[error("{path}: {source}")]
    Format { path: PathBuf, source: FormatError },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("--n {flag} does not match n = {file} in {path}")]
    SizeMismatch { flag: usize, file: usize, path: PathBuf },
    #[error("keep must satisfy 0 < keep <= 1, got {0}")]
    InvalidKeep(f64),
    #[error("{TOLERANCE_ENV}: cannot parse '{0}' as a positive number")]
    InvalidTolerance(String),
}

pub type CliResult<T> = Result<T, CliError>;

/// Text to emit plus diagnostics for stderr.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub body: String,
    pub notes: Vec<String>,
    pub success: bool,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Self {
            body,
            notes: Vec::new(),
            success: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    F,
    Finv,
    Forth,
    H,
    D,
}

impl Which {
    pub fn name(self) -> &'static str {
        match self {
            Which::F => "F",
            Which::Finv => "Finv",
            Which::Forth => "Forth",
            Which::H => "H",
            Which::D => "D",
        }
    }

    /// Row and column orderings of the dumped matrix.
    pub fn orderings(self) -> (&'static str, &'static str) {
        match self {
            Which::F | Which::Forth => (BASIS_ORDER, NODE_ORDER),
            Which::Finv => (NODE_ORDER, BASIS_ORDER),
            Which::H => (BASIS_ORDER, BASIS_ORDER),
            Which::D => (NODE_ORDER, NODE_ORDER),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Dot,
    Json,
}

pub fn nodes(n: usize) -> CliResult<Outcome> {
    let grid = tridct::Grid::build(n)?;
    let rows: Vec<NodeRow> = grid
        .labels()
        .iter()
        .zip(grid.theta().iter().zip(grid.x()))
        .enumerate()
        .map(|(index, (l, (th, x)))| NodeRow {
            index,
            k: l.k,
            j: l.j,
            theta1: th.t1,
            theta2: th.t2,
            x1: x.x1,
            x2: x.x2,
        })
        .collect();
    Ok(Outcome::ok(render_nodes(n, &rows)))
}

pub fn matrix(n: usize, which: Which, format: MatrixFormat) -> CliResult<Outcome> {
    let plan = Plan::build(n)?;
    let m = match which {
        Which::F => plan.f().clone(),
        Which::Finv => plan.f_inv().clone(),
        Which::Forth => plan.f_orth().clone(),
        Which::H => plan.h_oplus_matrix(),
        Which::D => plan.d_matrix(),
    };
    let (rows, cols) = which.orderings();
    let file = MatrixFile {
        header: MatrixHeader {
            kind: "matrix".into(),
            which: which.name().into(),
            n,
            size: plan.size(),
            rows: rows.into(),
            cols: cols.into(),
        },
        data: m.row_iter().map(|r| r.iter().copied().collect()).collect(),
    };
    Ok(Outcome::ok(match format {
        MatrixFormat::Csv => file.render_csv(),
        MatrixFormat::Json => file.render_json(),
    }))
}

fn read_vector(path: &Path, kind: &str, ordering: &str, n: Option<usize>) -> CliResult<VectorFile> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let format = |source| CliError::Format {
        path: path.to_path_buf(),
        source,
    };
    let file = VectorFile::parse(&text).map_err(format)?;
    file.expect_kind(kind, ordering).map_err(format)?;
    if let Some(flag) = n {
        if flag != file.header.n {
            return Err(CliError::SizeMismatch {
                flag,
                file: file.header.n,
                path: path.to_path_buf(),
            });
        }
    }
    Ok(file)
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn forward(input: &Path, n: Option<usize>) -> CliResult<Outcome> {
    let file = read_vector(input, "signal", NODE_ORDER, n)?;
    let n = file.header.n;
    let plan = Plan::build(n)?;
    let s = Signal::from_vec(file.values.clone());
    let c = plan.analyze(&s)?;
    let back = plan.synthesize(&c)?;
    let err = max_abs_diff(back.as_slice(), s.as_slice());
    Ok(Outcome {
        body: VectorFile::spectrum(n, c.as_slice().to_vec()).render(),
        notes: vec![format!("round-trip max abs error: {}", fmt_num(err))],
        success: true,
    })
}

pub fn inverse(input: &Path, n: Option<usize>) -> CliResult<Outcome> {
    let file = read_vector(input, "spectrum", BASIS_ORDER, n)?;
    let n = file.header.n;
    let plan = Plan::build(n)?;
    let c = Spectrum::from_vec(file.values.clone());
    let s = plan.synthesize(&c)?;
    let back = plan.analyze(&s)?;
    let err = max_abs_diff(back.as_slice(), c.as_slice());
    Ok(Outcome {
        body: VectorFile::signal(n, s.as_slice().to_vec()).render(),
        notes: vec![format!("round-trip max abs error: {}", fmt_num(err))],
        success: true,
    })
}

/// Number of coefficients retained for a fraction `keep` of `size`.
pub fn kept_count(keep: f64, size: usize) -> CliResult<usize> {
    if !(keep > 0.0 && keep <= 1.0) {
        return Err(CliError::InvalidKeep(keep));
    }
    // absorb decimal rounding of fractions like 1/N
    let m = (keep * size as f64 - 1e-9).ceil() as usize;
    Ok(m.clamp(1, size))
}

pub fn compress(input: &Path, n: Option<usize>, keep: f64) -> CliResult<Outcome> {
    let file = read_vector(input, "signal", NODE_ORDER, n)?;
    let n = file.header.n;
    let plan = Plan::build(n)?;
    let size = plan.size();
    let m = kept_count(keep, size)?;

    let s = Signal::from_vec(file.values.clone());
    let c = plan.analyze(&s)?;
    let mut order: Vec<usize> = (0..size).collect();
    order.sort_by(|&a, &b| c.0[b].abs().total_cmp(&c.0[a].abs()).then(a.cmp(&b)));
    let mut kept = Spectrum::from_vec(vec![0.0; size]);
    for &i in &order[..m] {
        kept.0[i] = c.0[i];
    }
    let r = plan.synthesize(&kept)?;

    let norm = s.0.norm();
    let diff = (&r.0 - &s.0).norm();
    let rel = if norm > 0.0 { diff / norm } else { diff };
    Ok(Outcome {
        body: VectorFile::signal(n, r.as_slice().to_vec()).render(),
        notes: vec![
            format!("kept {m} of {size} coefficients"),
            format!("relative l2 error: {}", fmt_num(rel)),
        ],
        success: true,
    })
}

pub fn tolerance_from_env() -> CliResult<f64> {
    match std::env::var(TOLERANCE_ENV) {
        Ok(raw) => match raw.trim().parse::<f64>() {
            Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
            _ => Err(CliError::InvalidTolerance(raw)),
        },
        Err(_) => Ok(verify::DEFAULT_TOLERANCE),
    }
}

pub fn run_verify(n_max: usize, tolerance: f64) -> CliResult<Outcome> {
    let mut opts = VerifyOptions::new(n_max);
    opts.tolerance = tolerance;
    let report = verify::run(&opts)?;
    let width = report.iter().map(|r| r.name.len()).max().unwrap_or(0);
    let mut body = String::new();
    for r in &report {
        body.push_str(&format!(
            "{}  {:width$}  {:.3e}  (threshold {:.1e})\n",
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.value,
            r.threshold,
        ));
    }
    let failed = report.iter().filter(|r| !r.passed).count();
    if failed == 0 {
        body.push_str(&format!("all {} checks passed for n <= {n_max}\n", report.len()));
    } else {
        body.push_str(&format!("{failed} of {} checks failed for n <= {n_max}\n", report.len()));
    }
    Ok(Outcome {
        body,
        notes: Vec::new(),
        success: failed == 0,
    })
}

pub fn graph(n: usize, format: GraphFormat) -> CliResult<Outcome> {
    let plan = Plan::build(n)?;
    let g = SignalGraph::build(&plan);
    Ok(Outcome::ok(match format {
        GraphFormat::Dot => g.to_dot(),
        GraphFormat::Json => {
            let mut s = g.to_json();
            s.push('\n');
            s
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kept_counts() {
        assert_eq!(kept_count(1.0, 36).unwrap(), 36);
        assert_eq!(kept_count(0.25, 36).unwrap(), 9);
        assert_eq!(kept_count(1.0 / 36.0, 36).unwrap(), 1);
        assert_eq!(kept_count(1e-9, 36).unwrap(), 1);
        assert_eq!(kept_count(0.26, 36).unwrap(), 10);
        assert!(kept_count(0.0, 36).is_err());
        assert!(kept_count(1.5, 36).is_err());
        assert!(kept_count(f64::NAN, 36).is_err());
    }

    #[test]
    fn orderings() {
        assert_eq!(Which::Finv.orderings(), (NODE_ORDER, BASIS_ORDER));
        assert_eq!(Which::D.orderings(), (NODE_ORDER, NODE_ORDER));
    }
}
