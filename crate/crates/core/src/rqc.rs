//! Relative quantum coherence: the coherence of `rho` in the eigenbasis of a
//! second state `sigma`, in the l1 and relative-entropy measures.
//!
//! When `sigma` is degenerate its eigenbasis is not unique and the value
//! reported is the supremum over all eigenbases of `sigma`, found by a
//! multi-start search over unitaries that are block diagonal on the
//! degenerate eigenspaces. Against the maximally mixed state the supremum
//! has closed forms, [`max_rqc_mm_l1`] and [`max_rqc_mm_re`].

use serde::{Deserialize, Serialize};

use crate::error::{dim_mismatch, Error, Result};
use crate::matcore::{shannon_bits, ComplexMatrix, DEGENERACY_TOL};
use crate::optim::{givens_pairs, givens_unitary, multistart_minimize, CompassConfig};
use crate::states::{bloch_coords, mub_set, DensityMatrix, OrthonormalBasis};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Measure {
    #[serde(rename = "l1")]
    L1,
    #[serde(rename = "relative_entropy")]
    RelativeEntropy,
}

impl std::str::FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "l1" => Ok(Measure::L1),
            "re" | "relative_entropy" => Ok(Measure::RelativeEntropy),
            other => Err(Error::Parse(format!("unknown coherence measure `{other}`"))),
        }
    }
}

fn check_dims(rho: &DensityMatrix, basis: &OrthonormalBasis) -> Result<()> {
    if rho.dim() != basis.dim() {
        return Err(dim_mismatch(format!(
            "state of dimension {} against a {}-dimensional basis",
            rho.dim(),
            basis.dim()
        )));
    }
    Ok(())
}

fn l1_offdiag(m: &ComplexMatrix) -> f64 {
    let n = m.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[(i, j)].norm();
            }
        }
    }
    s
}

/// `sum_{i != j} |<psi_i|rho|psi_j>|`.
pub fn coherence_l1(rho: &DensityMatrix, basis: &OrthonormalBasis) -> Result<f64> {
    check_dims(rho, basis)?;
    Ok(l1_offdiag(&basis.represent(rho.matrix())))
}

/// `S(Xi|rho) - S(rho)` in bits, where `S(Xi|rho)` is the Shannon entropy of
/// the populations in the basis.
pub fn coherence_re(rho: &DensityMatrix, basis: &OrthonormalBasis) -> Result<f64> {
    check_dims(rho, basis)?;
    Ok(shannon_bits(&rho.populations(basis)) - rho.entropy())
}

pub fn coherence(rho: &DensityMatrix, basis: &OrthonormalBasis, measure: Measure) -> Result<f64> {
    match measure {
        Measure::L1 => coherence_l1(rho, basis),
        Measure::RelativeEntropy => coherence_re(rho, basis),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RqcResult {
    pub value: f64,
    pub measure: Measure,
    #[serde(skip)]
    pub basis_used: OrthonormalBasis,
    pub degenerate_sigma: bool,
    /// Whether every restart of the supremum search converged; always true
    /// on the nondegenerate branch.
    pub converged: bool,
    pub restarts: usize,
}

/// Settings for [`max_rqc_numeric`].
#[derive(Debug, Clone, Copy)]
pub struct MaxRqcOptions {
    pub restarts: usize,
    pub seed: u64,
    pub compass: CompassConfig,
}

impl Default for MaxRqcOptions {
    fn default() -> Self {
        Self {
            restarts: 20,
            seed: 0,
            compass: CompassConfig {
                initial_step: 0.3,
                min_step: 1e-7,
                max_evals: 200_000,
            },
        }
    }
}

/// An orthonormal basis together with a partition of its columns into
/// blocks; the search may rotate freely inside each block only.
#[derive(Debug, Clone)]
pub struct EigenspacePartition {
    pub basis: OrthonormalBasis,
    pub blocks: Vec<Vec<usize>>,
}

impl EigenspacePartition {
    /// Eigenbasis of `sigma` split into its degenerate eigenspaces.
    pub fn of(sigma: &DensityMatrix) -> Self {
        let eig = sigma.eigen();
        Self {
            blocks: eig.clusters(DEGENERACY_TOL),
            basis: OrthonormalBasis::from(&eig),
        }
    }
}

#[derive(Debug, Clone)]
pub struct MaxRqc {
    pub value: f64,
    pub basis: OrthonormalBasis,
    pub converged: bool,
    pub restarts: usize,
}

/// Largest coherence of `rho` found over bases `V U`, with `U` a product of
/// Givens rotations inside the blocks of `constraint` (or over all of
/// `U(d)` when no constraint is given, `V = I`). The value is a lower bound
/// on the true supremum.
pub fn max_rqc_numeric(
    rho: &DensityMatrix,
    measure: Measure,
    opts: &MaxRqcOptions,
    constraint: Option<&EigenspacePartition>,
) -> Result<MaxRqc> {
    let d = rho.dim();
    let (frame, blocks) = match constraint {
        Some(p) => {
            if p.basis.dim() != d {
                return Err(dim_mismatch("partition basis does not match state"));
            }
            (p.basis.matrix().clone(), p.blocks.clone())
        }
        None => (ComplexMatrix::identity(d), vec![(0..d).collect()]),
    };
    let pairs = givens_pairs(&blocks);
    let entropy = rho.entropy();
    // rho written in the frame once; the search rotates that matrix.
    let rho_frame = rho.matrix().in_basis(&frame);
    let objective = |params: &[f64]| -> f64 {
        let u = givens_unitary(d, &pairs, params);
        let m = rho_frame.in_basis(&u);
        match measure {
            Measure::L1 => -l1_offdiag(&m),
            Measure::RelativeEntropy => -(shannon_bits(&m.diagonal_real()) - entropy),
        }
    };
    let out = multistart_minimize(objective, 2 * pairs.len(), opts.restarts, opts.seed, &opts.compass);
    let u = givens_unitary(d, &pairs, &out.point);
    let basis = OrthonormalBasis::from_unitary_unchecked(&frame * &u);
    Ok(MaxRqc {
        value: -out.value,
        basis,
        converged: out.converged,
        restarts: out.restarts,
    })
}

/// RQC of `rho` with respect to `sigma`, with default search settings for
/// the degenerate branch.
pub fn rqc(rho: &DensityMatrix, sigma: &DensityMatrix, measure: Measure) -> Result<RqcResult> {
    rqc_with(rho, sigma, measure, &MaxRqcOptions::default())
}

pub fn rqc_with(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    measure: Measure,
    opts: &MaxRqcOptions,
) -> Result<RqcResult> {
    if rho.dim() != sigma.dim() {
        return Err(dim_mismatch(format!(
            "rho is {}-dimensional, sigma is {}-dimensional",
            rho.dim(),
            sigma.dim()
        )));
    }
    let partition = EigenspacePartition::of(sigma);
    if partition.blocks.len() == sigma.dim() {
        let value = coherence(rho, &partition.basis, measure)?;
        return Ok(RqcResult {
            value,
            measure,
            basis_used: partition.basis,
            degenerate_sigma: false,
            converged: true,
            restarts: 0,
        });
    }
    let best = max_rqc_numeric(rho, measure, opts, Some(&partition))?;
    Ok(RqcResult {
        value: best.value,
        measure,
        basis_used: best.basis,
        degenerate_sigma: true,
        converged: best.converged,
        restarts: best.restarts,
    })
}

/// Closed-form maximal l1 coherence over all bases:
/// `sqrt((d^2 - d)/2) |x|` with `x` the Gell-Mann coordinates.
pub fn max_rqc_mm_l1(rho: &DensityMatrix) -> f64 {
    let d = rho.dim() as f64;
    ((d * d - d) / 2.0).sqrt() * bloch_coords(rho).norm()
}

/// Closed-form maximal relative-entropy coherence: `log2 d - S(rho)`.
pub fn max_rqc_mm_re(rho: &DensityMatrix) -> f64 {
    (rho.dim() as f64).log2() - rho.entropy()
}

/// Coherence sums over a complete set of MUBs and their bounds in terms of
/// the maximal coherences. The relative-entropy bound is only defined for
/// `d = 3`.
#[derive(Debug, Clone, Serialize)]
pub struct MubComplementarity {
    pub sum_l1_sq: f64,
    pub bound_l1: f64,
    pub sum_re: Option<f64>,
    pub bound_re: Option<f64>,
}

pub fn mub_complementarity(rho: &DensityMatrix) -> Result<MubComplementarity> {
    let d = rho.dim();
    let bases = mub_set(d)?;
    let df = d as f64;
    let max_l1 = max_rqc_mm_l1(rho);
    let mut sum_l1_sq = 0.0;
    let mut sum_re = 0.0;
    for b in &bases {
        sum_l1_sq += coherence_l1(rho, b)?.powi(2);
        sum_re += coherence_re(rho, b)?;
    }
    let (sum_re, bound_re) = if d == 3 {
        let bound = (df + 1.0) * max_rqc_mm_re(rho) - max_l1 * max_l1 * (df - 1.0).log2() / (df * (df - 2.0));
        (Some(sum_re), Some(bound))
    } else {
        (None, None)
    };
    Ok(MubComplementarity {
        sum_l1_sq,
        bound_l1: df * max_l1 * max_l1,
        sum_re,
        bound_re,
    })
}
