//! Validated density matrices, orthonormal bases and bipartite states, plus
//! generators (random ensembles, operator bases, MUBs, named families) and
//! the JSON state format.

mod bases;
mod json;
mod named;
mod random;

pub use bases::{bloch_coords, gell_mann_basis, mub_set, reconstruct, GellMannCoords};
pub use json::{load_state_json, state_to_json, LoadedState, StateFile};
pub use named::{araki_lieb_product, bell, bell_vector, maximally_mixed, quantum_classical, werner};
pub use random::{
    random_density, random_density_with, random_hermitian_with, random_pure, random_pure_vector_with,
    random_pure_with, random_unitary, random_unitary_with, sample_rng, SampleRng,
};

use crate::error::{dim_mismatch, Error, Result};
use crate::matcore::{
    herm_eig, kron, partial_trace, vn_entropy, ComplexMatrix, HermitianEigensystem, Subsystem, C64,
};

/// Tolerance on Hermiticity, trace and negative eigenvalues in [`validate`].
pub const STATE_TOL: f64 = 1e-10;

/// A Hermitian, positive semidefinite, unit-trace operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

/// Checks a candidate matrix and returns it as a [`DensityMatrix`].
///
/// The matrix is symmetrized. Eigenvalues that are negative by no more than
/// [`STATE_TOL`] are clipped to zero and the spectrum renormalized.
pub fn validate(mat: &ComplexMatrix) -> Result<DensityMatrix> {
    if !mat.is_square() {
        return Err(dim_mismatch(format!(
            "density matrix must be square, got {}x{}",
            mat.rows(),
            mat.cols()
        )));
    }
    if !mat.is_finite() {
        return Err(Error::InvalidField {
            field: "entries".into(),
            reason: "non-finite component".into(),
        });
    }
    let herr = mat.hermiticity_error();
    if herr > STATE_TOL {
        return Err(Error::NotHermitian(herr));
    }
    let tr = mat.trace().re;
    if (tr - 1.0).abs() > STATE_TOL {
        return Err(Error::TraceNotOne(tr));
    }
    let h = mat.hermitian_part();
    let eig = herm_eig(&h)?;
    let min = eig.eigenvalues[0];
    if min < -STATE_TOL {
        return Err(Error::NotPsd(min));
    }
    if min < 0.0 {
        let total: f64 = eig.eigenvalues.iter().map(|&x| x.max(0.0)).sum();
        let clipped = eig.map_spectrum(|x| x.max(0.0) / total);
        return Ok(DensityMatrix { mat: clipped });
    }
    Ok(DensityMatrix { mat: h })
}

impl DensityMatrix {
    /// `|v><v|` for a (not necessarily normalized) nonzero vector.
    pub fn from_pure(v: &[C64]) -> Result<Self> {
        let norm_sq: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if norm_sq.is_nan() || norm_sq <= 0.0 || !norm_sq.is_finite() {
            return Err(Error::InvalidField {
                field: "vector".into(),
                reason: "zero or non-finite norm".into(),
            });
        }
        let inv = 1.0 / norm_sq.sqrt();
        let unit: Vec<C64> = v.iter().map(|z| z * inv).collect();
        Ok(Self {
            mat: ComplexMatrix::outer(&unit),
        })
    }

    /// `I/d`.
    pub fn maximally_mixed(d: usize) -> Self {
        Self {
            mat: ComplexMatrix::identity(d).scale_real(1.0 / d as f64),
        }
    }

    /// Wraps a matrix already known to be a valid state.
    pub(crate) fn from_trusted(mat: ComplexMatrix) -> Self {
        Self { mat }
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    pub fn purity(&self) -> f64 {
        let n = self.dim();
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                s += (self.mat[(i, j)] * self.mat[(j, i)]).re;
            }
        }
        s
    }

    /// Von Neumann entropy in bits.
    pub fn entropy(&self) -> f64 {
        vn_entropy(&self.mat).expect("density matrix is Hermitian")
    }

    pub fn eigen(&self) -> HermitianEigensystem {
        herm_eig(&self.mat).expect("density matrix is Hermitian")
    }

    /// `U rho U^dagger`.
    pub fn rotate(&self, u: &ComplexMatrix) -> Result<Self> {
        if u.rows() != self.dim() || u.cols() != self.dim() {
            return Err(dim_mismatch("unitary does not match state dimension"));
        }
        Ok(Self {
            mat: self.mat.conjugate_by(u).hermitian_part(),
        })
    }

    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        Self {
            mat: kron(&self.mat, &other.mat),
        }
    }

    /// Probabilities `<v_i|rho|v_i>` in the given basis.
    pub fn populations(&self, basis: &OrthonormalBasis) -> Vec<f64> {
        let v = basis.matrix();
        let n = self.dim();
        (0..n)
            .map(|k| {
                let col = v.column(k);
                self.mat.sandwich(&col, &col).re
            })
            .collect()
    }
}

/// `d` orthonormal column vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthonormalBasis {
    vectors: ComplexMatrix,
}

/// Tolerance on `V^dagger V = I` for [`OrthonormalBasis::new`].
pub const ORTHONORMAL_TOL: f64 = 1e-10;

impl OrthonormalBasis {
    pub fn new(vectors: ComplexMatrix) -> Result<Self> {
        if !vectors.is_square() {
            return Err(dim_mismatch("basis matrix must be square"));
        }
        let gram = &vectors.adjoint() * &vectors;
        let dev = gram.max_abs_diff(&ComplexMatrix::identity(vectors.rows()));
        if dev > ORTHONORMAL_TOL {
            return Err(Error::NotOrthonormal(dev));
        }
        Ok(Self { vectors })
    }

    /// Skips the orthonormality check.
    pub(crate) fn from_unitary_unchecked(vectors: ComplexMatrix) -> Self {
        Self { vectors }
    }

    pub fn computational(d: usize) -> Self {
        Self {
            vectors: ComplexMatrix::identity(d),
        }
    }

    pub fn dim(&self) -> usize {
        self.vectors.rows()
    }

    /// Basis vectors as columns.
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> Vec<C64> {
        self.vectors.column(i)
    }

    /// The product basis `{|a_k> (x) |b_l>}` indexed by `k * d_b + l`.
    pub fn tensor(&self, other: &OrthonormalBasis) -> OrthonormalBasis {
        Self {
            vectors: kron(&self.vectors, &other.vectors),
        }
    }

    /// `<v_i| M |v_j>` for all `i, j`.
    pub fn represent(&self, m: &ComplexMatrix) -> ComplexMatrix {
        m.in_basis(&self.vectors)
    }
}

impl From<&HermitianEigensystem> for OrthonormalBasis {
    fn from(e: &HermitianEigensystem) -> Self {
        Self {
            vectors: e.eigenvectors.clone(),
        }
    }
}

/// A density matrix on `C^{d_a} (x) C^{d_b}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteState {
    state: DensityMatrix,
    d_a: usize,
    d_b: usize,
}

impl BipartiteState {
    pub fn new(state: DensityMatrix, d_a: usize, d_b: usize) -> Result<Self> {
        if d_a * d_b != state.dim() || d_a == 0 || d_b == 0 {
            return Err(dim_mismatch(format!(
                "{d_a}x{d_b} factorization of a {}-dimensional state",
                state.dim()
            )));
        }
        Ok(Self { state, d_a, d_b })
    }

    pub fn state(&self) -> &DensityMatrix {
        &self.state
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.state.matrix()
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.d_a, self.d_b)
    }

    pub fn d_a(&self) -> usize {
        self.d_a
    }

    pub fn d_b(&self) -> usize {
        self.d_b
    }

    pub fn marginal_a(&self) -> DensityMatrix {
        DensityMatrix::from_trusted(
            partial_trace(self.matrix(), self.dims(), Subsystem::A)
                .expect("dims checked at construction")
                .hermitian_part(),
        )
    }

    pub fn marginal_b(&self) -> DensityMatrix {
        DensityMatrix::from_trusted(
            partial_trace(self.matrix(), self.dims(), Subsystem::B)
                .expect("dims checked at construction")
                .hermitian_part(),
        )
    }

    /// `(U_A (x) U_B) rho (U_A (x) U_B)^dagger`.
    pub fn apply_local(&self, u_a: &ComplexMatrix, u_b: &ComplexMatrix) -> Result<Self> {
        if u_a.rows() != self.d_a || u_b.rows() != self.d_b {
            return Err(dim_mismatch("local unitary dimensions"));
        }
        Ok(Self {
            state: self.state.rotate(&kron(u_a, u_b))?,
            d_a: self.d_a,
            d_b: self.d_b,
        })
    }

    /// Same state with subsystems relabelled `B (x) A`.
    pub fn swapped(&self) -> Self {
        let (da, db) = self.dims();
        let m = self.matrix();
        let swapped = ComplexMatrix::from_fn(da * db, da * db, |i, j| {
            let (bi, ai) = (i / da, i % da);
            let (bj, aj) = (j / da, j % da);
            m[(ai * db + bi, aj * db + bj)]
        });
        Self {
            state: DensityMatrix::from_trusted(swapped),
            d_a: db,
            d_b: da,
        }
    }
}
