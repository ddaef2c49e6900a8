use serde::Serialize;

use crate::error::{dim_mismatch, Result};
use crate::matcore::{eigvals_2x2, herm_eig, shannon_bits, ComplexMatrix, C64};
use crate::states::{BipartiteState, DensityMatrix, OrthonormalBasis};

/// Rank-1 projective measurement on each side: `{Pi_k^A (x) Pi_l^B}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductMeasurement {
    pub basis_a: OrthonormalBasis,
    pub basis_b: OrthonormalBasis,
}

impl ProductMeasurement {
    pub fn new(basis_a: OrthonormalBasis, basis_b: OrthonormalBasis) -> Self {
        Self { basis_a, basis_b }
    }

    pub fn computational(d_a: usize, d_b: usize) -> Self {
        Self::new(OrthonormalBasis::computational(d_a), OrthonormalBasis::computational(d_b))
    }

    /// `{|a_k> (x) |b_l>}`, index `k * d_b + l`.
    pub fn product_basis(&self) -> OrthonormalBasis {
        self.basis_a.tensor(&self.basis_b)
    }

    pub(crate) fn check(&self, state: &BipartiteState) -> Result<()> {
        if self.basis_a.dim() != state.d_a() || self.basis_b.dim() != state.d_b() {
            return Err(dim_mismatch(format!(
                "{}x{} measurement on a {}x{} state",
                self.basis_a.dim(),
                self.basis_b.dim(),
                state.d_a(),
                state.d_b()
            )));
        }
        Ok(())
    }
}

/// Serializable summary of a local basis: columns as `[re, im]` pairs.
#[derive(Debug, Clone, Serialize)]
pub struct BasisSummary {
    pub columns: Vec<Vec<[f64; 2]>>,
}

impl From<&OrthonormalBasis> for BasisSummary {
    fn from(b: &OrthonormalBasis) -> Self {
        Self {
            columns: (0..b.dim())
                .map(|j| b.vector(j).iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        }
    }
}

/// Qubit measurement basis with Bloch direction `(theta, phi)`:
/// `(cos t/2, e^{i phi} sin t/2)` and its orthogonal complement
/// `(sin t/2, -e^{i phi} cos t/2)`.
pub fn qubit_basis(theta: f64, phi: f64) -> OrthonormalBasis {
    let (s, c) = (0.5 * theta).sin_cos();
    let e = C64::from_polar(1.0, phi);
    let m = ComplexMatrix::from_vec(
        2,
        2,
        vec![C64::new(c, 0.0), C64::new(s, 0.0), e * s, -e * c],
    )
    .expect("2x2");
    OrthonormalBasis::from_unitary_unchecked(m)
}

/// Unnormalized conditional operators `M_k = <a_k| rho |a_k>` on B, so that
/// `p_k = tr M_k` and `rho_{B|k} = M_k / p_k`.
pub fn conditional_blocks(state: &BipartiteState, basis_a: &OrthonormalBasis) -> Vec<ComplexMatrix> {
    let (da, db) = state.dims();
    let rho = state.matrix();
    (0..da)
        .map(|k| {
            let a = basis_a.vector(k);
            ComplexMatrix::from_fn(db, db, |i, j| {
                let mut acc = C64::new(0.0, 0.0);
                for s in 0..da {
                    let cs = a[s].conj();
                    if cs.re == 0.0 && cs.im == 0.0 {
                        continue;
                    }
                    for t in 0..da {
                        acc += cs * a[t] * rho[(s * db + i, t * db + j)];
                    }
                }
                acc
            })
        })
        .collect()
}

fn block_spectrum(m: &ComplexMatrix) -> Vec<f64> {
    if m.rows() == 2 {
        eigvals_2x2(m[(0, 0)].re, m[(0, 1)], m[(1, 1)].re).to_vec()
    } else {
        herm_eig(&m.hermitian_part())
            .expect("conditional block is Hermitian")
            .eigenvalues
    }
}

/// Entropies after measuring A in `basis_a`: `(S(rho_P), S(rho_PB))`.
pub fn one_sided_entropies(state: &BipartiteState, basis_a: &OrthonormalBasis) -> (f64, f64) {
    let blocks = conditional_blocks(state, basis_a);
    let probs: Vec<f64> = blocks.iter().map(|m| m.trace().re).collect();
    let spectrum: Vec<f64> = blocks.iter().flat_map(block_spectrum).collect();
    (shannon_bits(&probs), shannon_bits(&spectrum))
}

/// Joint outcome probabilities `p_kl = <a_k b_l| rho |a_k b_l>`, row-major in `k`.
pub fn joint_probabilities(state: &BipartiteState, m: &ProductMeasurement) -> Vec<f64> {
    let blocks = conditional_blocks(state, &m.basis_a);
    let db = state.d_b();
    let b: Vec<Vec<C64>> = (0..db).map(|l| m.basis_b.vector(l)).collect();
    blocks
        .iter()
        .flat_map(|blk| b.iter().map(move |bl| blk.sandwich(bl, bl).re))
        .collect()
}

/// Marginal and joint entropies of the classical outcome distribution:
/// `(S(rho_P), S(rho_Q), S(rho_PQ))`.
pub fn two_sided_entropies(state: &BipartiteState, m: &ProductMeasurement) -> (f64, f64, f64) {
    let p = joint_probabilities(state, m);
    let (da, db) = state.dims();
    let pa: Vec<f64> = (0..da).map(|k| p[k * db..(k + 1) * db].iter().sum()).collect();
    let pb: Vec<f64> = (0..db).map(|l| (0..da).map(|k| p[k * db + l]).sum()).collect();
    (shannon_bits(&pa), shannon_bits(&pb), shannon_bits(&p))
}

/// `sum_k (Pi_k (x) I) rho (Pi_k (x) I)`.
pub fn measure_a(state: &BipartiteState, basis_a: &OrthonormalBasis) -> Result<BipartiteState> {
    if basis_a.dim() != state.d_a() {
        return Err(dim_mismatch("A basis does not match state"));
    }
    let (da, db) = state.dims();
    let blocks = conditional_blocks(state, basis_a);
    let mut out = ComplexMatrix::zeros(da * db, da * db);
    for (k, blk) in blocks.iter().enumerate() {
        let proj = ComplexMatrix::outer(&basis_a.vector(k));
        out = &out + &crate::matcore::kron(&proj, blk);
    }
    BipartiteState::new(DensityMatrix::from_trusted(out.hermitian_part()), da, db)
}

/// `sum_kl p_kl Pi_k^A (x) Pi_l^B`.
pub fn measure_ab(state: &BipartiteState, m: &ProductMeasurement) -> Result<BipartiteState> {
    m.check(state)?;
    let p = joint_probabilities(state, m);
    let w = m.product_basis();
    let n = p.len();
    let cols: Vec<Vec<C64>> = (0..n).map(|i| w.vector(i)).collect();
    let out = ComplexMatrix::from_fn(n, n, |i, j| {
        (0..n).map(|k| cols[k][i] * cols[k][j].conj() * p[k]).sum()
    });
    let (da, db) = state.dims();
    BipartiteState::new(DensityMatrix::from_trusted(out.hermitian_part()), da, db)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{bell, random_density, random_unitary, validate};

    #[test]
    fn qubit_basis_is_orthonormal() {
        for (t, p) in [(0.0, 0.0), (1.0, 2.0), (3.0, -1.0)] {
            assert!(OrthonormalBasis::new(qubit_basis(t, p).matrix().clone()).is_ok());
        }
    }

    #[test]
    fn measuring_in_own_eigenbasis_is_idempotent() {
        let ra = validate(&ComplexMatrix::from_diag(&[0.3, 0.7])).unwrap();
        let rb = random_density(2, 2, 1).unwrap();
        let s = BipartiteState::new(ra.tensor(&rb), 2, 2).unwrap();
        let out = measure_a(&s, &OrthonormalBasis::computational(2)).unwrap();
        assert!(out.matrix().max_abs_diff(s.matrix()) < 1e-15);
    }

    #[test]
    fn bell_measurements() {
        let b = bell();
        let pb = measure_a(&b, &OrthonormalBasis::computational(2)).unwrap();
        let expect = ComplexMatrix::from_diag(&[0.5, 0.0, 0.0, 0.5]);
        assert!(pb.matrix().max_abs_diff(&expect) < 1e-15);
        let pq = measure_ab(&b, &ProductMeasurement::computational(2, 2)).unwrap();
        assert!(pq.matrix().max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn measurement_never_lowers_entropy() {
        for seed in 0..20 {
            let s = BipartiteState::new(random_density(4, 1 + seed as usize % 4, seed).unwrap(), 2, 2).unwrap();
            let u = OrthonormalBasis::new(random_unitary(2, seed + 50)).unwrap();
            let pb = measure_a(&s, &u).unwrap();
            assert!(pb.state().entropy() >= s.state().entropy() - 1e-9);
            let (_, spb) = one_sided_entropies(&s, &u);
            assert!((spb - pb.state().entropy()).abs() < 1e-10);
        }
    }

    #[test]
    fn product_measurement_marginals() {
        let mm = DensityMatrix::maximally_mixed(4);
        let s = BipartiteState::new(mm.clone(), 2, 2).unwrap();
        let m = ProductMeasurement::new(
            OrthonormalBasis::new(random_unitary(2, 3)).unwrap(),
            OrthonormalBasis::new(random_unitary(2, 4)).unwrap(),
        );
        assert!(measure_ab(&s, &m).unwrap().matrix().max_abs_diff(mm.matrix()) < 1e-15);

        for seed in 0..10 {
            let s = BipartiteState::new(random_density(6, 6, seed).unwrap(), 2, 3).unwrap();
            let m = ProductMeasurement::new(
                OrthonormalBasis::new(random_unitary(2, seed)).unwrap(),
                OrthonormalBasis::new(random_unitary(3, seed + 9)).unwrap(),
            );
            let pq = measure_ab(&s, &m).unwrap();
            // classical-classical: diagonal in the product basis
            let rep = m.product_basis().represent(pq.matrix());
            for i in 0..6 {
                for j in 0..6 {
                    if i != j {
                        assert!(rep[(i, j)].norm() < 1e-12);
                    }
                }
            }
            // tr_B(rho_PQ) = sum_k Pi_k rho_A Pi_k
            let ra = s.marginal_a();
            let mut dephased = ComplexMatrix::zeros(2, 2);
            for k in 0..2 {
                let v = m.basis_a.vector(k);
                let p = ra.matrix().sandwich(&v, &v);
                dephased = &dephased + &ComplexMatrix::outer(&v).scale(p);
            }
            assert!(pq.marginal_a().matrix().max_abs_diff(&dephased) < 1e-12);
            let (sp, sq, spq) = two_sided_entropies(&s, &m);
            assert!((spq - pq.state().entropy()).abs() < 1e-10);
            assert!((sp - pq.marginal_a().entropy()).abs() < 1e-10);
            assert!((sq - pq.marginal_b().entropy()).abs() < 1e-10);
        }
    }
}
