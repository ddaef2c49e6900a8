//! Seeded random ensembles.
//!
//! The generator is ChaCha8. A run seed selects the key and every sample
//! index gets its own ChaCha stream (`set_stream(index)`), so sample `i` of a
//! sweep is the same whether samples are drawn in order or in parallel.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::matcore::{gram_schmidt, ComplexMatrix, C64};

use super::{validate, DensityMatrix};

pub type SampleRng = ChaCha8Rng;

/// The substream for sample `index` of the run keyed by `seed`.
pub fn sample_rng(seed: u64, index: u64) -> SampleRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

/// Unit vector with i.i.d. complex Gaussian components before normalization.
pub fn random_pure_vector_with<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<C64> {
    loop {
        let v: Vec<C64> = (0..d).map(|_| complex_gaussian(rng)).collect();
        let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n > 1e-150 {
            return v.into_iter().map(|z| z / n).collect();
        }
    }
}

pub fn random_pure_with<R: Rng + ?Sized>(d: usize, rng: &mut R) -> DensityMatrix {
    DensityMatrix::from_trusted(ComplexMatrix::outer(&random_pure_vector_with(d, rng)))
}

/// Haar-random pure state, deterministic in `seed`.
pub fn random_pure(d: usize, seed: u64) -> DensityMatrix {
    random_pure_with(d, &mut sample_rng(seed, 0))
}

/// `G G^dagger / tr(G G^dagger)` with `G` a `d x rank` Ginibre matrix.
pub fn random_density_with<R: Rng + ?Sized>(d: usize, rank: usize, rng: &mut R) -> Result<DensityMatrix> {
    if rank == 0 || rank > d {
        return Err(Error::InvalidRank { rank, dim: d });
    }
    let g = ginibre(d, rank, rng);
    let gg = &g * &g.adjoint();
    let tr = gg.trace().re;
    DensityMatrix::from_trusted(gg.scale_real(1.0 / tr).hermitian_part()).ensure_valid()
}

pub fn random_density(d: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    random_density_with(d, rank, &mut sample_rng(seed, 0))
}

/// Haar-random unitary: Gram-Schmidt QR of a Ginibre matrix. Gram-Schmidt
/// leaves `R` with a positive real diagonal, which is the phase correction
/// needed for Haar measure.
pub fn random_unitary_with<R: Rng + ?Sized>(d: usize, rng: &mut R) -> ComplexMatrix {
    let g = ginibre(d, d, rng);
    let mut cols: Vec<Vec<C64>> = (0..d).map(|j| g.column(j)).collect();
    gram_schmidt(&mut cols);
    ComplexMatrix::from_columns(&cols).expect("square")
}

pub fn random_unitary(d: usize, seed: u64) -> ComplexMatrix {
    random_unitary_with(d, &mut sample_rng(seed, 0))
}

/// `(G + G^dagger)/2` with Gaussian entries; used for eigensolver checks.
pub fn random_hermitian_with<R: Rng + ?Sized>(d: usize, rng: &mut R) -> ComplexMatrix {
    ginibre(d, d, rng).hermitian_part()
}

impl DensityMatrix {
    fn ensure_valid(self) -> Result<Self> {
        validate(self.matrix())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_states_are_pure_and_deterministic() {
        for seed in 0..20 {
            let r = random_pure(3, seed);
            assert!((r.purity() - 1.0).abs() < 1e-12);
            assert_eq!(r, random_pure(3, seed));
        }
        assert_ne!(random_pure(3, 1), random_pure(3, 2));
    }

    #[test]
    fn pure_state_marginal_mean_is_one_over_d() {
        // Monte Carlo: <0|rho|0> ~ Beta(1, d-1), mean 1/d, var (d-1)/(d^2 (d+1))
        let d = 3usize;
        let n = 10_000u64;
        let mean: f64 = (0..n)
            .map(|i| random_pure_with(d, &mut sample_rng(7, i)).matrix()[(0, 0)].re)
            .sum::<f64>()
            / n as f64;
        let df = d as f64;
        let sigma = ((df - 1.0) / (df * df * (df + 1.0)) / n as f64).sqrt();
        assert!((mean - 1.0 / df).abs() < 3.0 * sigma, "mean {mean}");
    }

    #[test]
    fn density_rank_and_trace() {
        let r = random_density(3, 1, 5).unwrap();
        assert!((r.purity() - 1.0).abs() < 1e-12);
        for seed in 0..20 {
            let r = random_density(2, 2, seed).unwrap();
            assert!(r.eigen().eigenvalues[0] > 0.0);
            assert!((r.matrix().trace().re - 1.0).abs() < 1e-12);
            let r4 = random_density(4, 2, seed).unwrap();
            let ev = r4.eigen().eigenvalues;
            assert!(ev[0].abs() < 1e-12 && ev[1].abs() < 1e-12 && ev[2] > 1e-8);
        }
        assert!(matches!(random_density(3, 0, 1), Err(Error::InvalidRank { .. })));
        assert!(matches!(random_density(3, 4, 1), Err(Error::InvalidRank { .. })));
    }

    fn det(m: &ComplexMatrix) -> C64 {
        // Laplace expansion, fine for d <= 4
        let n = m.rows();
        if n == 1 {
            return m[(0, 0)];
        }
        (0..n)
            .map(|j| {
                let minor = ComplexMatrix::from_fn(n - 1, n - 1, |r, c| {
                    m[(r + 1, if c < j { c } else { c + 1 })]
                });
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                m[(0, j)] * det(&minor) * sign
            })
            .sum()
    }

    #[test]
    fn unitaries_are_unitary() {
        for seed in 0..20 {
            for d in 2..=4 {
                let u = random_unitary(d, seed);
                let g = &u.adjoint() * &u;
                assert!(g.max_abs_diff(&ComplexMatrix::identity(d)) < 1e-10);
                assert!((det(&u).norm() - 1.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn unitary_first_entry_moment() {
        // |U_00|^2 ~ Beta(1, d-1) under Haar measure
        let d = 4usize;
        let n = 10_000u64;
        let mean: f64 = (0..n)
            .map(|i| random_unitary_with(d, &mut sample_rng(11, i))[(0, 0)].norm_sqr())
            .sum::<f64>()
            / n as f64;
        let df = d as f64;
        let sigma = ((df - 1.0) / (df * df * (df + 1.0)) / n as f64).sqrt();
        assert!((mean - 1.0 / df).abs() < 3.0 * sigma, "mean {mean}");
    }

    #[test]
    fn streams_are_independent_of_draw_order() {
        let a: Vec<_> = (0..5).map(|i| random_pure_with(2, &mut sample_rng(3, i))).collect();
        let b: Vec<_> = (0..5).rev().map(|i| random_pure_with(2, &mut sample_rng(3, i))).collect();
        for (x, y) in a.iter().zip(b.iter().rev()) {
            assert_eq!(x, y);
        }
    }
}
