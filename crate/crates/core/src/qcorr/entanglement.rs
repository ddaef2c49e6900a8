//! Two-qubit entanglement of formation and the checks built on it.

use serde::Serialize;

use crate::error::{dim_mismatch, Error, Result};
use crate::matcore::{binary_entropy, herm_eig, partial_trace, ComplexMatrix, Subsystem, C64, ENTROPY_CUTOFF};
use crate::states::{BipartiteState, DensityMatrix};

use super::discord::{delta1, discord_a, conditional_entropy_ba};
use super::search::OptimizerInfo;

fn check_two_qubit(state: &BipartiteState) -> Result<()> {
    if state.dims() != (2, 2) {
        return Err(dim_mismatch(format!(
            "two-qubit state required, got {}x{}",
            state.d_a(),
            state.d_b()
        )));
    }
    Ok(())
}

/// Wootters concurrence `max(0, l1 - l2 - l3 - l4)`. The `l_i` are the
/// singular values of `tau_ij = <x_i| sy (x) sy |x_j*>`, where
/// `x_i = sqrt(w_i) v_i` runs over the eigen-decomposition of `rho`
/// restricted to weights above [`ENTROPY_CUTOFF`]; they coincide with the
/// square roots of the eigenvalues of `rho (sy (x) sy) rho* (sy (x) sy)`.
/// Working on the support keeps pure states exact.
pub fn concurrence(state: &BipartiteState) -> Result<f64> {
    check_two_qubit(state)?;
    let eig = state.state().eigen();
    let xs: Vec<Vec<C64>> = (0..4)
        .filter(|&i| eig.eigenvalues[i] > ENTROPY_CUTOFF)
        .map(|i| {
            let w = eig.eigenvalues[i].sqrt();
            eig.vector(i).into_iter().map(|z| z * w).collect()
        })
        .collect();
    // sy (x) sy maps (a, b, c, d) to (-d, c, b, -a)
    let flip = |v: &[C64]| -> Vec<C64> {
        let c: Vec<C64> = v.iter().map(|z| z.conj()).collect();
        vec![-c[3], c[2], c[1], -c[0]]
    };
    let r = xs.len();
    let tau = ComplexMatrix::from_fn(r, r, |i, j| {
        let fj = flip(&xs[j]);
        xs[i].iter().zip(&fj).map(|(a, b)| a.conj() * b).sum()
    });
    let mut l: Vec<f64> = if r == 1 {
        vec![tau[(0, 0)].norm()]
    } else {
        let tt = (&tau * &tau.adjoint()).hermitian_part();
        herm_eig(&tt)?.eigenvalues.iter().map(|&m| m.max(0.0).sqrt()).collect()
    };
    l.sort_by(|a, b| b.total_cmp(a));
    l.resize(4, 0.0);
    Ok((l[0] - l[1] - l[2] - l[3]).max(0.0))
}

/// `h((1 + sqrt(1 - C^2)) / 2)` in bits.
pub fn eof_2x2(state: &BipartiteState) -> Result<f64> {
    let c = concurrence(state)?;
    Ok(binary_entropy(0.5 * (1.0 + (1.0 - c * c).max(0.0).sqrt())))
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Eq15Check {
    pub eof: f64,
    pub delta1: f64,
    /// `S(B|A) >= 0`, or the Araki-Lieb equality `S(AB) = |S(A) - S(B)|`.
    pub applicable: bool,
    /// `eof <= delta1 + 1e-6`; evaluated only when applicable.
    pub satisfied: Option<bool>,
    pub info_a: OptimizerInfo,
    pub info_b: OptimizerInfo,
}

pub fn eq15_check(state: &BipartiteState) -> Result<Eq15Check> {
    let eof = eof_2x2(state)?;
    let d1 = delta1(state)?;
    let s_ab = state.state().entropy();
    let s_a = state.marginal_a().entropy();
    let s_b = state.marginal_b().entropy();
    let applicable = s_ab - s_a >= -1e-9 || (s_ab - (s_a - s_b).abs()).abs() <= 1e-9;
    Ok(Eq15Check {
        eof,
        delta1: d1.delta1,
        applicable,
        satisfied: applicable.then_some(eof <= d1.delta1 + 1e-6),
        info_a: d1.info_a,
        info_b: d1.info_b,
    })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct KoashiWinter {
    /// `D_A(rho_AB) + S(B|A)`.
    pub lhs: f64,
    /// `E_f(rho_BC)`.
    pub rhs: f64,
    pub residual: f64,
    pub info: OptimizerInfo,
}

/// Checks `D_A(rho_AB) + S(B|A) = E_f(rho_BC)` for a pure three-qubit state
/// ordered `A (x) B (x) C`.
pub fn koashi_winter_check(abc: &DensityMatrix) -> Result<KoashiWinter> {
    if abc.dim() != 8 {
        return Err(dim_mismatch(format!("three-qubit state required, got dimension {}", abc.dim())));
    }
    let purity = abc.purity();
    if (purity - 1.0).abs() > 1e-9 {
        return Err(Error::NotPure(purity));
    }
    let rho_ab = partial_trace(abc.matrix(), (4, 2), Subsystem::A)?.hermitian_part();
    let rho_bc = partial_trace(abc.matrix(), (2, 4), Subsystem::B)?.hermitian_part();
    let ab = BipartiteState::new(DensityMatrix::from_trusted(rho_ab), 2, 2)?;
    let bc = BipartiteState::new(DensityMatrix::from_trusted(rho_bc), 2, 2)?;
    let d = discord_a(&ab)?;
    let lhs = d.value + conditional_entropy_ba(&ab);
    let rhs = eof_2x2(&bc)?;
    Ok(KoashiWinter {
        lhs,
        rhs,
        residual: (lhs - rhs).abs(),
        info: d.info,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::kron_vec;
    use crate::states::{araki_lieb_product, bell, bell_vector, random_density, random_pure_vector_with, sample_rng, werner};

    #[test]
    fn bell_and_product() {
        assert!((eof_2x2(&bell()).unwrap() - 1.0).abs() < 1e-12);
        let p = BipartiteState::new(random_density(2, 2, 1).unwrap().tensor(&random_density(2, 2, 2).unwrap()), 2, 2)
            .unwrap();
        assert_eq!(eof_2x2(&p).unwrap(), 0.0);
    }

    #[test]
    fn werner_family() {
        for p in [0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0] {
            let c = concurrence(&werner(p).unwrap()).unwrap();
            let expect = ((3.0 * p - 1.0) / 2.0f64).max(0.0);
            assert!((c - expect).abs() < 1e-12, "p={p}: {c}");
        }
        // h((1 + sqrt(15/16)) / 2)
        assert!((eof_2x2(&werner(0.5).unwrap()).unwrap() - 0.11761887377091781).abs() < 1e-12);
        assert_eq!(eof_2x2(&werner(1.0 / 3.0).unwrap()).unwrap(), 0.0);
    }

    #[test]
    fn pure_states_give_entanglement_entropy() {
        let mut rng = sample_rng(5, 0);
        for _ in 0..20 {
            let v = random_pure_vector_with(4, &mut rng);
            let s = BipartiteState::new(DensityMatrix::from_pure(&v).unwrap(), 2, 2).unwrap();
            assert!((eof_2x2(&s).unwrap() - s.marginal_a().entropy()).abs() < 1e-9);
        }
    }

    #[test]
    fn araki_lieb_products_satisfy_bound() {
        let mut rng = sample_rng(6, 0);
        let trivial = DensityMatrix::maximally_mixed(1);
        for _ in 0..5 {
            let v = random_pure_vector_with(4, &mut rng);
            let s = araki_lieb_product(&v, 2, 2, &trivial).unwrap();
            let chk = eq15_check(&s).unwrap();
            assert!(chk.applicable && chk.satisfied == Some(true));
            assert!((chk.eof - s.marginal_a().entropy()).abs() < 1e-6);
        }
    }

    #[test]
    fn koashi_winter_examples() {
        let z = crate::matcore::c64(0.0, 0.0);
        let mut ghz = vec![z; 8];
        ghz[0] = crate::matcore::c64(1.0, 0.0);
        ghz[7] = crate::matcore::c64(1.0, 0.0);
        // both reduced states are classically correlated: D_A = S(B|A) = E_f = 0
        let kw = koashi_winter_check(&DensityMatrix::from_pure(&ghz).unwrap()).unwrap();
        assert!(kw.lhs.abs() < 1e-6 && kw.rhs.abs() < 1e-12);

        let zero = [crate::matcore::c64(1.0, 0.0), z];
        let v = kron_vec(&zero, &bell_vector());
        let kw = koashi_winter_check(&DensityMatrix::from_pure(&v).unwrap()).unwrap();
        assert!((kw.lhs - 1.0).abs() < 1e-6 && (kw.rhs - 1.0).abs() < 1e-12);

        let mut rng = sample_rng(7, 0);
        for _ in 0..5 {
            let v = random_pure_vector_with(8, &mut rng);
            let kw = koashi_winter_check(&DensityMatrix::from_pure(&v).unwrap()).unwrap();
            assert!(kw.residual < 1e-4, "{kw:?}");
        }
        let mixed = random_density(8, 2, 1).unwrap();
        assert!(matches!(koashi_winter_check(&mixed), Err(Error::NotPure(_))));
    }

    #[test]
    fn nonnegative_conditional_entropy_does_not_guarantee_the_bound() {
        // E_f = 0.3342767506 and D_A = 0.2399481440 from an independent
        // spin-flip / Nelder-Mead evaluation; S(B|A) = 0.186 > 0
        let json = r#"{"dim": 4, "d_a": 2, "d_b": 2,
            "re": [[0.25099738008809547, 0.025097878199100525, 0.13643000033054475, -0.09794950666836849],
                   [0.025097878199100525, 0.2360816937044413, 0.00027179708839386346, -0.18482222332971115],
                   [0.13643000033054475, 0.00027179708839386346, 0.2422028221736979, -0.07137844958241468],
                   [-0.09794950666836849, -0.18482222332971115, -0.07137844958241468, 0.2707181040337654]],
            "im": [[0.0, -0.1821904628995656, 0.04328016651725191, 0.04824393240588671],
                   [0.1821904628995656, 0.0, 0.16611582910984637, -0.07072399326955787],
                   [-0.04328016651725191, -0.16611582910984637, 0.0, 0.08127955263749892],
                   [-0.04824393240588671, 0.07072399326955787, -0.08127955263749892, 0.0]]}"#;
        let s = crate::states::load_state_json(json).unwrap().bipartite.unwrap();
        assert!(conditional_entropy_ba(&s) > 0.18);
        let chk = eq15_check(&s).unwrap();
        assert!((chk.eof - 0.3342767506).abs() < 1e-8);
        assert!((discord_a(&s).unwrap().value - 0.2399481440).abs() < 1e-8);
        assert!(chk.applicable);
        assert_eq!(chk.satisfied, Some(false));
    }
}
