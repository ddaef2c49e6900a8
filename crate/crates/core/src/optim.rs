//! Derivative-free search over small parameter vectors and over unitaries.
//!
//! [`compass_minimize`] is a coordinate pattern search: poll `x +/- step e_i`,
//! move on the first improvement, halve the step when no poll improves.
//! Unitaries are parametrized as ordered products of complex Givens
//! rotations, one `(angle, phase)` pair per index pair. Right-multiplying
//! diagonal phases are omitted since no basis-dependent quantity here sees
//! them.

use rand::Rng;

use crate::matcore::{ComplexMatrix, C64};
use crate::states::sample_rng;

#[derive(Debug, Clone, Copy)]
pub struct CompassConfig {
    pub initial_step: f64,
    pub min_step: f64,
    pub max_evals: usize,
}

impl Default for CompassConfig {
    fn default() -> Self {
        Self {
            initial_step: 0.3,
            min_step: 1e-7,
            max_evals: 200_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CompassOutcome {
    pub point: Vec<f64>,
    pub value: f64,
    /// True when the step shrank below `min_step` before the budget ran out.
    pub converged: bool,
    pub evals: usize,
}

pub fn compass_minimize(
    mut f: impl FnMut(&[f64]) -> f64,
    x0: &[f64],
    cfg: &CompassConfig,
) -> CompassOutcome {
    let mut x = x0.to_vec();
    let mut fx = f(&x);
    let mut evals = 1;
    let mut step = cfg.initial_step;
    let n = x.len();
    if n == 0 {
        return CompassOutcome {
            point: x,
            value: fx,
            converged: true,
            evals,
        };
    }
    while step >= cfg.min_step {
        if evals >= cfg.max_evals {
            return CompassOutcome {
                point: x,
                value: fx,
                converged: false,
                evals,
            };
        }
        let mut improved = false;
        for i in 0..n {
            for dir in [1.0, -1.0] {
                let old = x[i];
                x[i] = old + dir * step;
                let fy = f(&x);
                evals += 1;
                if fy < fx {
                    fx = fy;
                    improved = true;
                    break;
                }
                x[i] = old;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    CompassOutcome {
        point: x,
        value: fx,
        converged: true,
        evals,
    }
}

/// Index pairs `(p, q)`, `p < q`, inside each block of a partition of
/// `0..d`. A single block covering everything gives the full unitary group.
pub fn givens_pairs(blocks: &[Vec<usize>]) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for block in blocks {
        for (i, &p) in block.iter().enumerate() {
            for &q in &block[i + 1..] {
                pairs.push((p, q));
            }
        }
    }
    pairs
}

pub fn full_pairs(d: usize) -> Vec<(usize, usize)> {
    givens_pairs(&[(0..d).collect()])
}

/// `prod_k G_{p_k q_k}(theta_k, phi_k)` with
/// `G = [[cos t, -e^{-i phi} sin t], [e^{i phi} sin t, cos t]]` on the
/// `(p, q)` plane. `params` holds `(theta, phi)` per pair.
pub fn givens_unitary(d: usize, pairs: &[(usize, usize)], params: &[f64]) -> ComplexMatrix {
    assert_eq!(params.len(), 2 * pairs.len());
    let mut u = ComplexMatrix::identity(d);
    for (k, &(p, q)) in pairs.iter().enumerate() {
        let (s, c) = params[2 * k].sin_cos();
        let e = C64::from_polar(1.0, params[2 * k + 1]);
        // u <- u * G acts on columns p, q
        for r in 0..d {
            let up = u[(r, p)];
            let uq = u[(r, q)];
            u[(r, p)] = up * c + uq * e * s;
            u[(r, q)] = -up * e.conj() * s + uq * c;
        }
    }
    u
}

/// Result of a multi-start search.
#[derive(Debug, Clone)]
pub struct MultiStartOutcome {
    pub point: Vec<f64>,
    pub value: f64,
    pub converged: bool,
    pub restarts: usize,
}

/// Minimizes `f` from `restarts` starting points: the origin first, then
/// uniform draws in `[0, 2 pi)` from substream `r` of `seed`. Ties keep the
/// lowest restart index.
pub fn multistart_minimize(
    f: impl Fn(&[f64]) -> f64,
    dim: usize,
    restarts: usize,
    seed: u64,
    cfg: &CompassConfig,
) -> MultiStartOutcome {
    let restarts = restarts.max(1);
    let mut best: Option<CompassOutcome> = None;
    let mut all_converged = true;
    for r in 0..restarts {
        let x0: Vec<f64> = if r == 0 {
            vec![0.0; dim]
        } else {
            let mut rng = sample_rng(seed, r as u64);
            (0..dim).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect()
        };
        let out = compass_minimize(&f, &x0, cfg);
        all_converged &= out.converged;
        if best.as_ref().is_none_or(|b| out.value < b.value) {
            best = Some(out);
        }
    }
    let best = best.expect("at least one restart");
    MultiStartOutcome {
        point: best.point,
        value: best.value,
        converged: all_converged,
        restarts,
    }
}
