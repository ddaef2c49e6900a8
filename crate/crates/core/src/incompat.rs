//! Mutual incompatibility of two states, measured on their commutator.
//!
//! `Q_l1` is the entrywise l1 norm of `[rho, sigma]` written in the
//! eigenbasis of `sigma`, `sum_{i != j} |lambda_ij (eps_i - eps_j)|`; `Q_F`
//! is twice its squared Frobenius norm. `Q_l1` never exceeds the l1
//! coherence of `rho` in the same basis and is at most `sqrt(d - 1)`.

use serde::Serialize;

use crate::error::{dim_mismatch, Error, Result};
use crate::matcore::ComplexMatrix;
use crate::rqc::coherence_l1;
use crate::states::{DensityMatrix, OrthonormalBasis};

fn same_dim(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<()> {
    if rho.dim() != sigma.dim() {
        return Err(dim_mismatch(format!(
            "rho is {}-dimensional, sigma is {}-dimensional",
            rho.dim(),
            sigma.dim()
        )));
    }
    Ok(())
}

/// `rho sigma - sigma rho`.
pub fn commutator(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<ComplexMatrix> {
    same_dim(rho, sigma)?;
    let (a, b) = (rho.matrix(), sigma.matrix());
    Ok(&(a * b) - &(b * a))
}

#[derive(Debug, Clone, Serialize)]
pub struct IncompatResult {
    pub q_l1: f64,
    pub q_frobenius: f64,
    #[serde(skip)]
    pub basis_used: OrthonormalBasis,
    /// `sigma` had a degenerate spectrum; `q_l1` was evaluated in the
    /// deterministic eigenbasis returned by the eigensolver.
    pub degenerate_sigma: bool,
}

/// `sum_{i != j} |<psi_i|rho|psi_j>| |eps_i - eps_j|` for an explicit basis
/// `{psi_i}` and weights `eps_i`.
pub fn q_l1_in_basis(rho: &DensityMatrix, eigenvalues: &[f64], basis: &OrthonormalBasis) -> Result<f64> {
    if basis.dim() != rho.dim() || eigenvalues.len() != rho.dim() {
        return Err(dim_mismatch("basis or spectrum does not match state"));
    }
    let lam = basis.represent(rho.matrix());
    let n = rho.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += lam[(i, j)].norm() * (eigenvalues[i] - eigenvalues[j]).abs();
            }
        }
    }
    Ok(s)
}

pub fn q_l1(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<IncompatResult> {
    same_dim(rho, sigma)?;
    let eig = sigma.eigen();
    let basis = OrthonormalBasis::from(&eig);
    let q = q_l1_in_basis(rho, &eig.eigenvalues, &basis)?;
    Ok(IncompatResult {
        q_l1: q,
        q_frobenius: q_frobenius(rho, sigma)?,
        basis_used: basis,
        degenerate_sigma: !eig.is_nondegenerate(),
    })
}

/// `2 ||[rho, sigma]||_F^2`.
pub fn q_frobenius(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    Ok(2.0 * commutator(rho, sigma)?.frobenius_sq())
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SumRule {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

/// Compares `sum_i Q_l1(rho, |psi_i><psi_i|)` with `2 C_l1(rho, sigma)`.
///
/// Each pure `sigma_i` is evaluated in the full eigenbasis of `sigma`, i.e.
/// `|psi_i>` completed by the other eigenvectors of `sigma`.
pub fn sum_rule_check(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<SumRule> {
    same_dim(rho, sigma)?;
    let eig = sigma.eigen();
    if !eig.is_nondegenerate() {
        return Err(Error::DegenerateSigma);
    }
    let basis = OrthonormalBasis::from(&eig);
    let d = rho.dim();
    let mut lhs = 0.0;
    for i in 0..d {
        let mut weights = vec![0.0; d];
        weights[i] = 1.0;
        lhs += q_l1_in_basis(rho, &weights, &basis)?;
    }
    let rhs = 2.0 * coherence_l1(rho, &basis)?;
    Ok(SumRule {
        lhs,
        rhs,
        residual: (lhs - rhs).abs(),
    })
}

/// The pure state reaching the maximal incompatibility `sqrt(d - 1)` against
/// `|psi_1><psi_1|`, written in the computational basis (`psi_i = e_i`).
#[derive(Debug, Clone)]
pub struct ExtremalState {
    pub state: DensityMatrix,
    pub amplitudes: Vec<f64>,
    /// `theta_2, ..., theta_d`.
    pub thetas: Vec<f64>,
}

/// Amplitudes from the recursion `a^(2) = (cos t_2, sin t_2)`,
/// `a^(k) = (cos t_k, sin t_k a^(k-1))` with `t_2 = t_d = pi/4` and
/// `t_k = pi/2 - atan(1/sqrt(k-1))` for `3 <= k <= d-1`.
pub fn extremal_state(d: usize) -> Result<ExtremalState> {
    if d < 2 {
        return Err(Error::UnsupportedDimension(d));
    }
    let quarter = std::f64::consts::FRAC_PI_4;
    let theta = |k: usize| -> f64 {
        if k == 2 || k == d {
            quarter
        } else {
            std::f64::consts::FRAC_PI_2 - (1.0 / ((k - 1) as f64).sqrt()).atan()
        }
    };
    let thetas: Vec<f64> = (2..=d).map(theta).collect();
    let t2 = thetas[0];
    let mut amps = vec![t2.cos(), t2.sin()];
    for k in 3..=d {
        let t = theta(k);
        let mut next = Vec::with_capacity(k);
        next.push(t.cos());
        next.extend(amps.iter().map(|a| t.sin() * a));
        amps = next;
    }
    let v: Vec<_> = amps.iter().map(|&a| crate::matcore::c64(a, 0.0)).collect();
    Ok(ExtremalState {
        state: DensityMatrix::from_pure(&v)?,
        amplitudes: amps,
        thetas,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::c64;
    use crate::states::{random_density, random_unitary, validate};

    fn plus() -> DensityMatrix {
        DensityMatrix::from_pure(&[c64(1.0, 0.0), c64(1.0, 0.0)]).unwrap()
    }

    fn zero() -> DensityMatrix {
        DensityMatrix::from_pure(&[c64(1.0, 0.0), c64(0.0, 0.0)]).unwrap()
    }

    fn diag(x: &[f64]) -> DensityMatrix {
        validate(&ComplexMatrix::from_diag(x)).unwrap()
    }

    #[test]
    fn commutator_examples() {
        let c = commutator(&diag(&[0.3, 0.7]), &diag(&[0.6, 0.4])).unwrap();
        assert_eq!(c.max_abs(), 0.0);
        let c = commutator(&plus(), &zero()).unwrap();
        assert!((c[(0, 1)].re + 0.5).abs() < 1e-15 && (c[(1, 0)].re - 0.5).abs() < 1e-15);
        assert!(c[(0, 0)].norm() < 1e-15 && c[(1, 1)].norm() < 1e-15);
        let r = random_density(3, 3, 1).unwrap();
        assert!(commutator(&r, &DensityMatrix::maximally_mixed(3)).unwrap().max_abs() < 1e-15);
        assert!(commutator(&r, &zero()).is_err());
    }

    #[test]
    fn q_examples() {
        let res = q_l1(&plus(), &zero()).unwrap();
        assert!((res.q_l1 - 1.0).abs() < 1e-15);
        assert!((res.q_frobenius - 1.0).abs() < 1e-15);
        let res = q_l1(&diag(&[0.3, 0.7]), &diag(&[0.6, 0.4])).unwrap();
        assert_eq!(res.q_l1, 0.0);
        assert_eq!(res.q_frobenius, 0.0);
    }

    #[test]
    fn q_l1_is_commutator_l1_in_sigma_basis() {
        for seed in 0..10 {
            let r = random_density(4, 4, seed).unwrap();
            let s = random_density(4, 4, seed + 100).unwrap();
            let res = q_l1(&r, &s).unwrap();
            let c = res.basis_used.represent(&commutator(&r, &s).unwrap());
            assert!((c.l1_entrywise() - res.q_l1).abs() < 1e-12);
        }
    }

    #[test]
    fn frobenius_joint_rotation_invariant() {
        let r = random_density(3, 2, 3).unwrap();
        let s = random_density(3, 3, 4).unwrap();
        let u = random_unitary(3, 5);
        let a = q_frobenius(&r, &s).unwrap();
        let b = q_frobenius(&r.rotate(&u).unwrap(), &s.rotate(&u).unwrap()).unwrap();
        assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn sum_rule_examples() {
        let sr = sum_rule_check(&diag(&[0.2, 0.8]), &diag(&[0.7, 0.3])).unwrap();
        assert_eq!(sr.lhs, 0.0);
        assert_eq!(sr.rhs, 0.0);
        let sr = sum_rule_check(&plus(), &diag(&[0.7, 0.3])).unwrap();
        assert!((sr.lhs - 2.0).abs() < 1e-14 && (sr.rhs - 2.0).abs() < 1e-14);
        assert!(matches!(
            sum_rule_check(&plus(), &DensityMatrix::maximally_mixed(2)),
            Err(Error::DegenerateSigma)
        ));
    }

    #[test]
    fn extremal_examples() {
        let s = 0.5f64.sqrt();
        let e2 = extremal_state(2).unwrap();
        assert!((e2.amplitudes[0] - s).abs() < 1e-15 && (e2.amplitudes[1] - s).abs() < 1e-15);
        let e3 = extremal_state(3).unwrap();
        for (a, b) in e3.amplitudes.iter().zip([s, 0.5, 0.5]) {
            assert!((a - b).abs() < 1e-15);
        }
        for d in 2..=6 {
            let e = extremal_state(d).unwrap();
            let norm: f64 = e.amplitudes.iter().map(|a| a * a).sum();
            assert!((norm - 1.0).abs() < 1e-14);
            let q = q_l1(&e.state, &zero_d(d)).unwrap().q_l1;
            assert!((q - ((d - 1) as f64).sqrt()).abs() < 1e-9, "d={d}: {q}");
        }
    }

    fn zero_d(d: usize) -> DensityMatrix {
        let mut v = vec![c64(0.0, 0.0); d];
        v[0] = c64(1.0, 0.0);
        DensityMatrix::from_pure(&v).unwrap()
    }
}
