//! Relative coherence of an evolving state against its initial state.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::incompat::q_l1;
use crate::rqc::{rqc, Measure};
use crate::states::DensityMatrix;

use super::channels::{apply_per_qubit, gamma_of_t, ChannelKind};

#[derive(Debug, Clone, Serialize)]
pub struct EvolveRow {
    pub t: f64,
    pub gamma: f64,
    pub c_l1: f64,
    pub c_re: f64,
    pub q_l1: f64,
    /// `rho_0` is degenerate, so the coherences are suprema over its
    /// eigenbases.
    pub degenerate_reference: bool,
    pub converged: bool,
}

/// Rows at `t_k = t_max k / steps`, `k = 0..=steps`, with
/// `rho_t = channel(1 - e^{-t})[rho_0]` compared against `rho_0`.
pub fn evolve(rho0: &DensityMatrix, kind: ChannelKind, steps: usize, t_max: f64) -> Result<Vec<EvolveRow>> {
    if steps == 0 {
        return Err(Error::Config("steps must be at least 1".into()));
    }
    if !(t_max.is_finite() && t_max >= 0.0) {
        return Err(Error::Config(format!("t_max must be finite and nonnegative, got {t_max}")));
    }
    // validates completeness and qubit structure before any step runs
    kind.qubit(0.0)?;
    super::channels::qubit_count(rho0.dim())?;
    (0..=steps)
        .map(|k| {
            let t = t_max * k as f64 / steps as f64;
            let gamma = gamma_of_t(t);
            let rho_t = apply_per_qubit(kind, gamma, rho0)?;
            let l1 = rqc(&rho_t, rho0, Measure::L1)?;
            let re = rqc(&rho_t, rho0, Measure::RelativeEntropy)?;
            Ok(EvolveRow {
                t,
                gamma,
                c_l1: l1.value,
                c_re: re.value,
                q_l1: q_l1(&rho_t, rho0)?.q_l1,
                degenerate_reference: l1.degenerate_sigma,
                converged: l1.converged && re.converged,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::c64;

    fn qubit(a: f64) -> DensityMatrix {
        DensityMatrix::from_pure(&[c64(a.cos(), 0.0), c64(a.sin(), 0.0)]).unwrap()
    }

    #[test]
    fn plus_state_under_dephasing_stays_diagonal_in_its_own_basis() {
        let rows = evolve(&qubit(std::f64::consts::FRAC_PI_4), ChannelKind::Dephasing, 10, 20.0).unwrap();
        assert_eq!(rows[0].c_l1, 0.0);
        for r in &rows {
            assert!(r.c_l1 < 1e-12 && r.c_re < 1e-12);
        }
    }

    #[test]
    fn dephasing_closed_form() {
        // psi = (cos a, sin a): <psi|rho_t|psi_perp> = -(1 - e^{-t}) sin(4a) / 4
        let a = std::f64::consts::PI / 8.0;
        let rows = evolve(&qubit(a), ChannelKind::Dephasing, 20, 5.0).unwrap();
        assert_eq!(rows.len(), 21);
        for w in rows.windows(2) {
            assert!(w[1].c_l1 >= w[0].c_l1 - 1e-12);
        }
        for r in &rows {
            let expect = 0.5 * (1.0 - (-r.t).exp()) * (4.0 * a).sin().abs();
            assert!((r.c_l1 - expect).abs() < 1e-12, "t={}: {} vs {expect}", r.t, r.c_l1);
            assert!(!r.degenerate_reference);
        }
    }

    #[test]
    fn bad_inputs() {
        let rho = qubit(0.3);
        assert!(matches!(evolve(&rho, ChannelKind::Dephasing, 0, 1.0), Err(Error::Config(_))));
        assert!(matches!(
            evolve(&DensityMatrix::maximally_mixed(3), ChannelKind::Dephasing, 2, 1.0),
            Err(Error::UnsupportedDimension(3))
        ));
    }
}
