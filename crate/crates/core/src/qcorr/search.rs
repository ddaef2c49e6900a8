//! Minimization of entropic objectives over local projective measurements.
//!
//! Qubit sides are searched exactly: a dense Bloch-angle grid, then compass
//! refinement from the best grid local minima. Larger sides use the
//! Givens-parametrized unitary search with random restarts and are reported
//! as heuristic.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rand::Rng;
use serde::Serialize;

use crate::optim::{compass_minimize, full_pairs, givens_unitary, CompassConfig, CompassOutcome};
use crate::states::{sample_rng, OrthonormalBasis};

use super::measurement::{qubit_basis, ProductMeasurement};

/// Grid for one-sided qubit searches: `theta` in `[0, pi]`, `phi` in `[0, 2 pi)`.
pub const QUBIT_GRID: (usize, usize) = (64, 128);
/// Per-side grid for two-sided qubit searches (hemisphere).
pub const PAIR_GRID: (usize, usize) = (9, 16);
/// Terminal compass step for qubit refinement (radians).
pub const QUBIT_MIN_STEP: f64 = 1e-9;
/// Restarts for heuristic (d > 2) searches.
pub const HEURISTIC_RESTARTS: usize = 20;
const ONE_SIDED_STARTS: usize = 4;
const TWO_SIDED_STARTS: usize = 8;

/// Bookkeeping attached to every optimized quantity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimizerInfo {
    pub converged: bool,
    pub restarts: usize,
    pub heuristic: bool,
}

#[derive(Debug, Clone)]
pub struct SideOptimum {
    pub basis: OrthonormalBasis,
    pub params: Vec<f64>,
    pub value: f64,
    pub info: OptimizerInfo,
}

#[derive(Debug, Clone)]
pub struct PairOptimum {
    pub measurement: ProductMeasurement,
    pub params: Vec<f64>,
    pub value: f64,
    pub info: OptimizerInfo,
}

/// Number of real parameters describing a measurement basis on a side.
pub fn side_params(dim: usize) -> usize {
    if dim == 2 {
        2
    } else {
        dim * (dim - 1)
    }
}

/// Basis for a parameter vector: Bloch angles on qubits, Givens angles
/// and phases otherwise.
pub fn side_basis(dim: usize, params: &[f64]) -> OrthonormalBasis {
    if dim == 2 {
        qubit_basis(params[0], params[1])
    } else {
        OrthonormalBasis::from_unitary_unchecked(givens_unitary(dim, &full_pairs(dim), params))
    }
}

fn refine_cfg(step: f64) -> CompassConfig {
    CompassConfig {
        initial_step: step,
        min_step: QUBIT_MIN_STEP,
        max_evals: 100_000,
    }
}

/// Grid indices that are no worse than any of their neighbours, ordered by
/// value then index. `wrap_j` makes the second coordinate periodic.
fn grid_local_minima(values: &[f64], ni: usize, nj: usize, wrap_j: bool) -> Vec<usize> {
    let at = |i: usize, j: usize| values[i * nj + j];
    let mut minima: Vec<usize> = Vec::new();
    for i in 0..ni {
        for j in 0..nj {
            let v = at(i, j);
            let mut is_min = true;
            'nb: for di in [-1i64, 0, 1] {
                for dj in [-1i64, 0, 1] {
                    if di == 0 && dj == 0 {
                        continue;
                    }
                    let ii = i as i64 + di;
                    if ii < 0 || ii >= ni as i64 {
                        continue;
                    }
                    let mut jj = j as i64 + dj;
                    if wrap_j {
                        jj = jj.rem_euclid(nj as i64);
                    } else if jj < 0 || jj >= nj as i64 {
                        continue;
                    }
                    if at(ii as usize, jj as usize) < v {
                        is_min = false;
                        break 'nb;
                    }
                }
            }
            if is_min {
                minima.push(i * nj + j);
            }
        }
    }
    minima.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    minima
}

fn keep_best(best: &mut Option<CompassOutcome>, out: CompassOutcome) {
    if best.as_ref().is_none_or(|b| out.value < b.value) {
        *best = Some(out);
    }
}

/// Minimizes `f` over measurement bases of a `dim`-dimensional side.
/// `extra_starts` are parameter vectors refined in addition to the default
/// starting points.
pub fn minimize_side(
    dim: usize,
    f: impl Fn(&OrthonormalBasis) -> f64,
    extra_starts: &[Vec<f64>],
    seed: u64,
) -> SideOptimum {
    let g = |p: &[f64]| f(&side_basis(dim, p));
    let mut best: Option<CompassOutcome> = None;
    let mut all_converged = true;
    let mut starts = 0;
    let heuristic = dim != 2;
    if dim == 2 {
        let (nt, np) = QUBIT_GRID;
        let thetas: Vec<f64> = (0..nt).map(|i| PI * i as f64 / (nt - 1) as f64).collect();
        let phis: Vec<f64> = (0..np).map(|j| TAU * j as f64 / np as f64).collect();
        let values: Vec<f64> = thetas
            .iter()
            .flat_map(|&t| phis.iter().map(move |&p| (t, p)))
            .map(|(t, p)| g(&[t, p]))
            .collect();
        let step = PI / (nt - 1) as f64;
        for idx in grid_local_minima(&values, nt, np, true).into_iter().take(ONE_SIDED_STARTS) {
            let x0 = [thetas[idx / np], phis[idx % np]];
            let out = compass_minimize(g, &x0, &refine_cfg(step));
            all_converged &= out.converged;
            starts += 1;
            keep_best(&mut best, out);
        }
    } else {
        let n = side_params(dim);
        for r in 0..HEURISTIC_RESTARTS {
            let x0: Vec<f64> = if r == 0 {
                vec![0.0; n]
            } else {
                let mut rng = sample_rng(seed, r as u64);
                (0..n).map(|_| rng.gen_range(0.0..TAU)).collect()
            };
            let out = compass_minimize(g, &x0, &CompassConfig::default());
            all_converged &= out.converged;
            starts += 1;
            keep_best(&mut best, out);
        }
    }
    for x0 in extra_starts {
        let cfg = if dim == 2 { refine_cfg(0.05) } else { CompassConfig::default() };
        let out = compass_minimize(g, x0, &cfg);
        all_converged &= out.converged;
        starts += 1;
        keep_best(&mut best, out);
    }
    let best = best.expect("at least one start");
    SideOptimum {
        basis: side_basis(dim, &best.point),
        params: best.point,
        value: best.value,
        info: OptimizerInfo {
            converged: all_converged,
            restarts: starts,
            heuristic,
        },
    }
}

/// Minimizes `f` over product measurements on `d_a x d_b`.
pub fn minimize_pair(
    (d_a, d_b): (usize, usize),
    f: impl Fn(&ProductMeasurement) -> f64,
    extra_starts: &[Vec<f64>],
    seed: u64,
) -> PairOptimum {
    let na = side_params(d_a);
    let g = |p: &[f64]| {
        f(&ProductMeasurement::new(side_basis(d_a, &p[..na]), side_basis(d_b, &p[na..])))
    };
    let mut best: Option<CompassOutcome> = None;
    let mut all_converged = true;
    let mut starts = 0;
    let heuristic = d_a != 2 || d_b != 2;
    if !heuristic {
        let (nt, np) = PAIR_GRID;
        let side: Vec<[f64; 2]> = (0..nt)
            .flat_map(|i| {
                (0..np).map(move |j| [FRAC_PI_2 * i as f64 / (nt - 1) as f64, TAU * j as f64 / np as f64])
            })
            .collect();
        let m = side.len();
        let values: Vec<f64> = (0..m * m)
            .map(|idx| {
                let (a, b) = (side[idx / m], side[idx % m]);
                g(&[a[0], a[1], b[0], b[1]])
            })
            .collect();
        let mut order: Vec<usize> = (0..m * m).collect();
        order.sort_by(|&x, &y| values[x].total_cmp(&values[y]).then(x.cmp(&y)));
        for idx in order.into_iter().take(TWO_SIDED_STARTS) {
            let (a, b) = (side[idx / m], side[idx % m]);
            let out = compass_minimize(g, &[a[0], a[1], b[0], b[1]], &refine_cfg(0.1));
            all_converged &= out.converged;
            starts += 1;
            keep_best(&mut best, out);
        }
    } else {
        let n = na + side_params(d_b);
        for r in 0..HEURISTIC_RESTARTS {
            let x0: Vec<f64> = if r == 0 {
                vec![0.0; n]
            } else {
                let mut rng = sample_rng(seed, r as u64);
                (0..n).map(|_| rng.gen_range(0.0..TAU)).collect()
            };
            let out = compass_minimize(g, &x0, &CompassConfig::default());
            all_converged &= out.converged;
            starts += 1;
            keep_best(&mut best, out);
        }
    }
    for x0 in extra_starts {
        let cfg = if heuristic { CompassConfig::default() } else { refine_cfg(0.05) };
        let out = compass_minimize(g, x0, &cfg);
        all_converged &= out.converged;
        starts += 1;
        keep_best(&mut best, out);
    }
    let best = best.expect("at least one start");
    PairOptimum {
        measurement: ProductMeasurement::new(
            side_basis(d_a, &best.point[..na]),
            side_basis(d_b, &best.point[na..]),
        ),
        params: best.point,
        value: best.value,
        info: OptimizerInfo {
            converged: all_converged,
            restarts: starts,
            heuristic,
        },
    }
}
