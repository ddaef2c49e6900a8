use crate::error::{dim_mismatch, Error, Result};
use crate::matcore::{kron, ComplexMatrix, C64};

use super::{validate, BipartiteState, DensityMatrix, OrthonormalBasis};

/// `I/(d_a d_b)` factored as `d_a x d_b`.
pub fn maximally_mixed(d_a: usize, d_b: usize) -> BipartiteState {
    BipartiteState::new(DensityMatrix::maximally_mixed(d_a * d_b), d_a, d_b).expect("dims")
}

/// `(|00> + |11>)/sqrt(2)`.
pub fn bell_vector() -> Vec<C64> {
    let s = 0.5f64.sqrt();
    vec![C64::new(s, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(s, 0.0)]
}

pub fn bell() -> BipartiteState {
    BipartiteState::new(DensityMatrix::from_pure(&bell_vector()).expect("unit"), 2, 2).expect("dims")
}

/// Werner family `p |Phi+><Phi+| + (1 - p) I/4`.
pub fn werner(p: f64) -> Result<BipartiteState> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbabilities(format!("werner weight {p} outside [0, 1]")));
    }
    let bell = ComplexMatrix::outer(&bell_vector());
    let mixed = ComplexMatrix::identity(4).scale_real(0.25);
    let m = &bell.scale_real(p) + &mixed.scale_real(1.0 - p);
    BipartiteState::new(validate(&m)?, 2, 2)
}

fn check_distribution(probs: &[f64]) -> Result<()> {
    if probs.iter().any(|&p| p.is_nan() || p < 0.0 || !p.is_finite()) {
        return Err(Error::InvalidProbabilities("negative or non-finite weight".into()));
    }
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidProbabilities(format!("weights sum to {total}")));
    }
    Ok(())
}

/// Quantum-classical state `sum_l p_l rho_{A|l} (x) |phi_l><phi_l|` with the
/// pointer basis `{|phi_l>}` on B.
pub fn quantum_classical(
    probs: &[f64],
    conditional_a: &[DensityMatrix],
    pointer: &OrthonormalBasis,
) -> Result<BipartiteState> {
    check_distribution(probs)?;
    let d_b = pointer.dim();
    if probs.len() != d_b || conditional_a.len() != d_b {
        return Err(dim_mismatch(format!(
            "{} weights and {} conditional states for a {d_b}-dimensional pointer basis",
            probs.len(),
            conditional_a.len()
        )));
    }
    let d_a = conditional_a[0].dim();
    if conditional_a.iter().any(|r| r.dim() != d_a) {
        return Err(dim_mismatch("conditional states differ in dimension"));
    }
    let mut m = ComplexMatrix::zeros(d_a * d_b, d_a * d_b);
    for ((p, rho), l) in probs.iter().zip(conditional_a).zip(0..d_b) {
        let proj = ComplexMatrix::outer(&pointer.vector(l));
        m = &m + &kron(rho.matrix(), &proj).scale_real(*p);
    }
    BipartiteState::new(validate(&m)?, d_a, d_b)
}

/// `|psi><psi|_{A B_L} (x) rho_{B_R}` with `B = B_L (x) B_R`; the states for
/// which `S(AB) = S(B) - S(A)`.
pub fn araki_lieb_product(
    psi: &[C64],
    d_a: usize,
    d_bl: usize,
    rho_br: &DensityMatrix,
) -> Result<BipartiteState> {
    if psi.len() != d_a * d_bl {
        return Err(dim_mismatch(format!(
            "pure state of length {} for {d_a}x{d_bl}",
            psi.len()
        )));
    }
    let pure = DensityMatrix::from_pure(psi)?;
    BipartiteState::new(pure.tensor(rho_br), d_a, d_bl * rho_br.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::c64;

    #[test]
    fn werner_endpoints() {
        let w1 = werner(1.0).unwrap();
        assert!(w1.matrix().max_abs_diff(&ComplexMatrix::outer(&bell_vector())) < 1e-15);
        let w0 = werner(0.0).unwrap();
        assert!(w0.matrix().max_abs_diff(&ComplexMatrix::identity(4).scale_real(0.25)) < 1e-15);
        assert!(matches!(werner(1.2), Err(Error::InvalidProbabilities(_))));
    }

    #[test]
    fn quantum_classical_block_assembly() {
        let zero = DensityMatrix::from_pure(&[c64(1.0, 0.0), c64(0.0, 0.0)]).unwrap();
        let plus = DensityMatrix::from_pure(&[c64(1.0, 0.0), c64(1.0, 0.0)]).unwrap();
        let chi = quantum_classical(&[0.5, 0.5], &[zero, plus], &OrthonormalBasis::computational(2)).unwrap();
        // by hand: 0.5 |0><0|(x)|0><0| + 0.5 |+><+|(x)|1><1|
        let expect = ComplexMatrix::from_real(
            4,
            4,
            &[
                0.5, 0.0, 0.0, 0.0, //
                0.0, 0.25, 0.0, 0.25, //
                0.0, 0.0, 0.0, 0.0, //
                0.0, 0.25, 0.0, 0.25,
            ],
        )
        .unwrap();
        assert!(chi.matrix().max_abs_diff(&expect) < 1e-15);
        let b = chi.marginal_b();
        assert!(b.matrix().max_abs_diff(&ComplexMatrix::from_diag(&[0.5, 0.5])) < 1e-15);

        let bad = quantum_classical(
            &[0.7, 0.7],
            &[DensityMatrix::maximally_mixed(2), DensityMatrix::maximally_mixed(2)],
            &OrthonormalBasis::computational(2),
        );
        assert!(matches!(bad, Err(Error::InvalidProbabilities(_))));
    }

    #[test]
    fn araki_lieb_factorization() {
        let psi = bell_vector();
        let s = araki_lieb_product(&psi, 2, 2, &DensityMatrix::maximally_mixed(2)).unwrap();
        assert_eq!(s.dims(), (2, 4));
        let (sa, sb, sab) = (s.marginal_a().entropy(), s.marginal_b().entropy(), s.state().entropy());
        assert!((sab - (sb - sa)).abs() < 1e-12);
    }
}
