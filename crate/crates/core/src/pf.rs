//! Perron–Frobenius eigendata of nonnegative integer matrices.

use crate::error::RttError;

pub const PF_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct PfData {
    pub lambda: f64,
    /// Positive right eigenvector, smallest entry 1.
    pub metric: Vec<f64>,
    /// `‖ML − λL‖∞`.
    pub residual: f64,
}

pub fn is_irreducible(m: &[Vec<u64>]) -> bool {
    let n = m.len();
    if n == 0 {
        return false;
    }
    let reach = |forward: bool| {
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..n {
                let w = if forward { m[i][j] } else { m[j][i] };
                if w > 0 && !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    let has_cycle = n > 1 || m[0][0] > 0;
    has_cycle && reach(true) && reach(false)
}

/// PF eigenvalue and eigenvector; exact closed forms for sizes 1 and 2, shifted
/// power iteration otherwise.
pub fn pf_metric(m: &[Vec<u64>], tol: f64) -> Result<PfData, RttError> {
    if !is_irreducible(m) {
        return Err(RttError::Reducible);
    }
    let n = m.len();
    let f = |i: usize, j: usize| m[i][j] as f64;
    let (lambda, mut v) = match n {
        1 => (f(0, 0), vec![1.0]),
        2 => {
            let tr = f(0, 0) + f(1, 1);
            let det = f(0, 0) * f(1, 1) - f(0, 1) * f(1, 0);
            let lambda = (tr + (tr * tr - 4.0 * det).sqrt()) / 2.0;
            (lambda, vec![1.0, (lambda - f(0, 0)) / f(0, 1)])
        }
        _ => power_iteration(m, tol),
    };
    if lambda <= 1.0 + tol {
        return Err(RttError::NotExpanding(lambda));
    }
    let min = v.iter().cloned().fold(f64::INFINITY, f64::min);
    v.iter_mut().for_each(|x| *x /= min);
    let residual = (0..n)
        .map(|i| ((0..n).map(|j| f(i, j) * v[j]).sum::<f64>() - lambda * v[i]).abs())
        .fold(0.0, f64::max);
    Ok(PfData { lambda, metric: v, residual })
}

fn power_iteration(m: &[Vec<u64>], tol: f64) -> (f64, Vec<f64>) {
    let n = m.len();
    let mut v = vec![1.0; n];
    let mut lambda = 0.0;
    // M + I has the same eigenvector and is primitive when M is irreducible
    for _ in 0..100_000 {
        let mut w: Vec<f64> = (0..n).map(|i| v[i] + (0..n).map(|j| m[i][j] as f64 * v[j]).sum::<f64>()).collect();
        let norm = w.iter().cloned().fold(0.0, f64::max);
        w.iter_mut().for_each(|x| *x /= norm);
        let mv: Vec<f64> = (0..n).map(|i| (0..n).map(|j| m[i][j] as f64 * w[j]).sum()).collect();
        let next = (0..n).map(|i| mv[i] * w[i]).sum::<f64>() / w.iter().map(|x| x * x).sum::<f64>();
        let delta = v.iter().zip(&w).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        v = w;
        let settled = (next - lambda).abs() < tol * 1e-3 && delta < tol * 1e-3;
        lambda = next;
        if settled {
            break;
        }
    }
    (lambda, v)
}
