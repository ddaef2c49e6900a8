//! Dense complex linear algebra for the small dimensions used throughout the
//! crate: a row-major [`ComplexMatrix`], a cyclic Jacobi Hermitian
//! eigensolver, tensor products, partial traces, entropies and purification.
//!
//! Everything here is a pure function of its inputs. Logarithms are base 2.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{dim_mismatch, Error, Result};

pub type C64 = Complex64;

/// Symmetry tolerance accepted by [`herm_eig`].
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Absolute eigenvalue gap below which two eigenvalues count as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-10;
/// Eigenvalues at or below this are treated as exactly zero in entropies.
pub const ENTROPY_CUTOFF: f64 = 1e-12;
/// Maximum number of cyclic Jacobi sweeps.
pub const MAX_SWEEPS: usize = 100;

#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Dense row-major complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from row-major entries. Fails if the length does not
    /// match or any entry is not finite.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(dim_mismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidField {
                field: "entries".into(),
                reason: "non-finite component".into(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::from_vec(rows, cols, data.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &x) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(x, 0.0);
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<C64>]) -> Result<Self> {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != rows) {
            return Err(dim_mismatch("ragged columns"));
        }
        Ok(Self::from_fn(rows, cols, |i, j| columns[j][i]))
    }

    /// The projector-like outer product `|v><v|`.
    pub fn outer(v: &[C64]) -> Self {
        Self::from_fn(v.len(), v.len(), |i, j| v[i] * v[j].conj())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[C64]) {
        for (i, &z) in v.iter().enumerate() {
            self[(i, j)] = z;
        }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn diagonal_real(&self) -> Vec<f64> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].re).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn frobenius(&self) -> f64 {
        self.frobenius_sq().sqrt()
    }

    /// Entrywise l1 norm.
    pub fn l1_entrywise(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).sum()
    }

    /// `max |M - M^dagger|` over entries.
    pub fn hermiticity_error(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut err = 0.0f64;
        for i in 0..n {
            for j in i..n {
                err = err.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        err
    }

    /// `(M + M^dagger)/2`.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| {
            (self[(i, j)] + self[(j, i)].conj()) * 0.5
        })
    }

    pub fn mat_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                row.iter().zip(v).map(|(a, b)| a * b).sum()
            })
            .collect()
    }

    /// `<u| M |v>`.
    pub fn sandwich(&self, u: &[C64], v: &[C64]) -> C64 {
        let mv = self.mat_vec(v);
        u.iter().zip(&mv).map(|(a, b)| a.conj() * b).sum()
    }

    /// `U^dagger M U`, i.e. this operator written in the basis given by the
    /// columns of `u`.
    pub fn in_basis(&self, u: &ComplexMatrix) -> ComplexMatrix {
        &(&u.adjoint() * self) * u
    }

    /// `U M U^dagger`.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> ComplexMatrix {
        &(u * self) * &u.adjoint()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Eigenvalues in ascending order with matching unit eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct HermitianEigensystem {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigensystem {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn vector(&self, i: usize) -> Vec<C64> {
        self.eigenvectors.column(i)
    }

    /// Groups of consecutive eigenvalue indices whose neighbouring gaps are
    /// below `tol`.
    pub fn clusters(&self, tol: f64) -> Vec<Vec<usize>> {
        degenerate_clusters(&self.eigenvalues, tol)
    }

    /// True when every eigenvalue gap exceeds [`DEGENERACY_TOL`].
    pub fn is_nondegenerate(&self) -> bool {
        self.eigenvalues
            .windows(2)
            .all(|w| w[1] - w[0] > DEGENERACY_TOL)
    }

    /// `V diag(lambda) V^dagger`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let n = self.dim();
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n)
                .map(|k| v[(i, k)] * v[(j, k)].conj() * self.eigenvalues[k])
                .sum()
        })
    }

    /// Applies `f` to the spectrum: `V diag(f(lambda)) V^dagger`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let mapped = HermitianEigensystem {
            eigenvalues: self.eigenvalues.iter().map(|&x| f(x)).collect(),
            eigenvectors: self.eigenvectors.clone(),
        };
        mapped.reconstruct()
    }
}

pub(crate) fn degenerate_clusters(sorted: &[f64], tol: f64) -> Vec<Vec<usize>> {
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for (i, &x) in sorted.iter().enumerate() {
        match clusters.last_mut() {
            Some(last) if x - sorted[*last.last().unwrap()] < tol => last.push(i),
            _ => clusters.push(vec![i]),
        }
    }
    clusters
}

/// Hermitian eigendecomposition by cyclic Jacobi rotations.
///
/// Sweeps visit the upper triangle in row-major order. Eigenvalues come back
/// ascending; every eigenvector is phase-fixed so that its first nonzero
/// component is real and positive, and vectors inside a degenerate cluster
/// (gap below [`DEGENERACY_TOL`]) are re-orthonormalized and sorted
/// lexicographically so that repeated runs yield identical bases.
pub fn herm_eig(m: &ComplexMatrix) -> Result<HermitianEigensystem> {
    if !m.is_square() {
        return Err(dim_mismatch(format!(
            "eigendecomposition of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let herr = m.hermiticity_error();
    if herr > HERMITIAN_TOL {
        return Err(Error::NotHermitian(herr));
    }
    let n = m.rows();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);

    let scale = a.frobenius().max(f64::MIN_POSITIVE);
    let mut converged = false;
    for _sweep in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum();
        if off.sqrt() <= 1e-15 * scale || off == 0.0 {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence(MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors: Vec<Vec<C64>> = order.iter().map(|&i| v.column(i)).collect();

    for cluster in degenerate_clusters(&eigenvalues, DEGENERACY_TOL) {
        let mut block: Vec<Vec<C64>> = cluster.iter().map(|&i| vectors[i].clone()).collect();
        if block.len() > 1 {
            gram_schmidt(&mut block);
        }
        for vec in block.iter_mut() {
            phase_fix(vec);
        }
        if block.len() > 1 {
            block.sort_by(|x, y| lexicographic_desc(x, y));
        }
        for (slot, vec) in cluster.iter().zip(block) {
            vectors[*slot] = vec;
        }
    }

    Ok(HermitianEigensystem {
        eigenvalues,
        eigenvectors: ComplexMatrix::from_columns(&vectors)?,
    })
}

// One Jacobi rotation annihilating a[p][q]; accumulates into v.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // D^dagger A D makes the (p,q) entry real, then a real rotation
    // G = [[c, -s], [s, c]] with tan(2 theta) = 2r / (app - aqq) zeroes it.
    let phase = apq / r;
    let theta = 0.5 * (2.0 * r).atan2(app - aqq);
    let (s, c) = theta.sin_cos();
    let e = phase.conj();
    // V_sub = D G with D = diag(1, e^{-i alpha}).
    let vpp = C64::new(c, 0.0);
    let vpq = C64::new(-s, 0.0);
    let vqp = e * s;
    let vqq = e * c;
    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * vpp + akq * vqp;
        a[(k, q)] = akp * vpq + akq * vqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = vpp.conj() * apk + vqp.conj() * aqk;
        a[(q, k)] = vpq.conj() * apk + vqq.conj() * aqk;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * vpp + vkq * vqp;
        v[(k, q)] = vkp * vpq + vkq * vqq;
    }
}

/// Modified Gram-Schmidt in place.
pub(crate) fn gram_schmidt(vs: &mut [Vec<C64>]) {
    for i in 0..vs.len() {
        for j in 0..i {
            let (head, tail) = vs.split_at_mut(i);
            let proj: C64 = head[j].iter().zip(&tail[0]).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in tail[0].iter_mut().zip(&head[j]) {
                *x -= proj * y;
            }
        }
        let norm = vec_norm(&vs[i]);
        if norm > 0.0 {
            for x in vs[i].iter_mut() {
                *x /= norm;
            }
        }
    }
}

pub(crate) fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Multiplies `v` by a global phase making its first nonzero component real
/// and positive.
pub fn phase_fix(v: &mut [C64]) {
    if let Some(first) = v.iter().find(|z| z.norm() > ENTROPY_CUTOFF).copied() {
        let ph = first.conj() / first.norm();
        for z in v.iter_mut() {
            *z *= ph;
        }
    }
}

fn lexicographic_desc(x: &[C64], y: &[C64]) -> std::cmp::Ordering {
    for (a, b) in x.iter().zip(y) {
        let ord = b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im));
        if ord != std::cmp::Ordering::Equal {
            return ord;
        }
    }
    std::cmp::Ordering::Equal
}

/// Eigenvalues of the 2x2 Hermitian matrix `[[a, b], [b*, d]]`, ascending.
#[inline]
pub fn eigvals_2x2(a: f64, b: C64, d: f64) -> [f64; 2] {
    let mean = 0.5 * (a + d);
    let half = 0.5 * (a - d);
    let rad = (half * half + b.norm_sqr()).sqrt();
    [mean - rad, mean + rad]
}

/// Kronecker (tensor) product.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (ar, ac, br, bc) = (a.rows(), a.cols(), b.rows(), b.cols());
    ComplexMatrix::from_fn(ar * br, ac * bc, |i, j| a[(i / br, j / bc)] * b[(i % br, j % bc)])
}

pub fn kron_vec(a: &[C64], b: &[C64]) -> Vec<C64> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| x * y)).collect()
}

/// Which tensor factor to keep in [`partial_trace`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Partial trace of an operator on `C^{d_a} (x) C^{d_b}`, keeping `keep`.
pub fn partial_trace(
    rho: &ComplexMatrix,
    (d_a, d_b): (usize, usize),
    keep: Subsystem,
) -> Result<ComplexMatrix> {
    let n = d_a * d_b;
    if rho.rows() != n || rho.cols() != n {
        return Err(dim_mismatch(format!(
            "partial trace over {d_a}x{d_b} of a {}x{} matrix",
            rho.rows(),
            rho.cols()
        )));
    }
    Ok(match keep {
        Subsystem::A => ComplexMatrix::from_fn(d_a, d_a, |i, j| {
            (0..d_b).map(|k| rho[(i * d_b + k, j * d_b + k)]).sum()
        }),
        Subsystem::B => ComplexMatrix::from_fn(d_b, d_b, |i, j| {
            (0..d_a).map(|k| rho[(k * d_b + i, k * d_b + j)]).sum()
        }),
    })
}

/// Shannon entropy in bits; entries at or below [`ENTROPY_CUTOFF`] count as 0.
pub fn shannon_bits<'a>(probs: impl IntoIterator<Item = &'a f64>) -> f64 {
    probs
        .into_iter()
        .filter(|&&p| p > ENTROPY_CUTOFF)
        .map(|&p| (-p * p.log2()).max(0.0)) // p rounded just above 1
        .sum::<f64>()
        + 0.0 // -0.0 -> 0.0
}

/// Binary entropy `h(x)` in bits.
pub fn binary_entropy(x: f64) -> f64 {
    shannon_bits(&[x, 1.0 - x])
}

/// Von Neumann entropy (bits) of a Hermitian operator.
pub fn vn_entropy(rho: &ComplexMatrix) -> Result<f64> {
    if rho.rows() == 2 && rho.cols() == 2 {
        let ev = eigvals_2x2(rho[(0, 0)].re, rho[(0, 1)], rho[(1, 1)].re);
        return Ok(shannon_bits(&ev));
    }
    Ok(shannon_bits(&herm_eig(rho)?.eigenvalues))
}

/// A purification `sum_i sqrt(eps_i) |psi_i> (x) |i>` of a mixed state,
/// with the ancilla dimension equal to the rank.
#[derive(Debug, Clone)]
pub struct Purification {
    pub vector: Vec<C64>,
    pub dim_system: usize,
    pub dim_ancilla: usize,
}

impl Purification {
    pub fn density(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.vector)
    }
}

pub fn purify(rho: &ComplexMatrix) -> Result<Purification> {
    let eig = herm_eig(rho)?;
    let d = eig.dim();
    let kept: Vec<usize> = (0..d)
        .rev()
        .filter(|&i| eig.eigenvalues[i] > ENTROPY_CUTOFF)
        .collect();
    let r = kept.len().max(1);
    let mut vector = vec![C64::new(0.0, 0.0); d * r];
    for (slot, &i) in kept.iter().enumerate() {
        let w = eig.eigenvalues[i].sqrt();
        for s in 0..d {
            vector[s * r + slot] = eig.eigenvectors[(s, i)] * w;
        }
    }
    Ok(Purification {
        vector,
        dim_system: d,
        dim_ancilla: r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pauli_x() -> ComplexMatrix {
        ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
    }

    #[test]
    fn eig_identity_and_diagonal() {
        let e = herm_eig(&ComplexMatrix::identity(2)).unwrap();
        assert_eq!(e.eigenvalues, vec![1.0, 1.0]);
        let g = &e.eigenvectors.adjoint() * &e.eigenvectors;
        assert!(g.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-14);

        let e = herm_eig(&ComplexMatrix::from_diag(&[0.3, 0.7])).unwrap();
        assert_eq!(e.eigenvalues, vec![0.3, 0.7]);
        assert!(e.eigenvectors.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);
    }

    #[test]
    fn eig_of_plus_projector() {
        let m = ComplexMatrix::from_real(2, 2, &[0.5, 0.5, 0.5, 0.5]).unwrap();
        let e = herm_eig(&m).unwrap();
        assert!(e.eigenvalues[0].abs() < 1e-15);
        assert!((e.eigenvalues[1] - 1.0).abs() < 1e-15);
        let s = 0.5f64.sqrt();
        let minus = e.vector(0);
        let plus = e.vector(1);
        // phase-fixed: first component real positive
        assert!((minus[0].re - s).abs() < 1e-14 && (minus[1].re + s).abs() < 1e-14);
        assert!((plus[0].re - s).abs() < 1e-14 && (plus[1].re - s).abs() < 1e-14);
    }

    #[test]
    fn eig_rejects_non_hermitian_and_non_square() {
        let m = ComplexMatrix::from_real(2, 2, &[1.0, 0.1, 0.0, 1.0]).unwrap();
        assert!(matches!(herm_eig(&m), Err(Error::NotHermitian(_))));
        assert!(matches!(
            herm_eig(&ComplexMatrix::zeros(2, 3)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn degenerate_cluster_is_deterministic() {
        // diag(0.2, 0.4, 0.4) rotated: the 0.4 eigenspace must come back identical twice
        let m = ComplexMatrix::from_real(3, 3, &[0.2, 0.0, 0.0, 0.0, 0.4, 0.0, 0.0, 0.0, 0.4]).unwrap();
        let a = herm_eig(&m).unwrap();
        let b = herm_eig(&m).unwrap();
        assert_eq!(a.eigenvectors, b.eigenvectors);
        assert_eq!(a.clusters(DEGENERACY_TOL), vec![vec![0], vec![1, 2]]);
        assert!(!a.is_nondegenerate());
        // standard basis ordering within the cluster
        assert!((a.eigenvectors[(1, 1)].re - 1.0).abs() < 1e-15);
        assert!((a.eigenvectors[(2, 2)].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn kron_examples() {
        let i4 = kron(&ComplexMatrix::identity(2), &ComplexMatrix::identity(2));
        assert_eq!(i4, ComplexMatrix::identity(4));
        let k = kron(&ComplexMatrix::from_diag(&[1.0, 0.0]), &ComplexMatrix::from_diag(&[0.0, 1.0]));
        assert_eq!(k, ComplexMatrix::from_diag(&[0.0, 1.0, 0.0, 0.0]));
        let xx = kron(&pauli_x(), &pauli_x());
        let ket00 = vec![c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0)];
        let out = xx.mat_vec(&ket00);
        assert_eq!(out[3], c64(1.0, 0.0));
        assert_eq!(out[0] + out[1] + out[2], c64(0.0, 0.0));
    }

    #[test]
    fn partial_trace_examples() {
        let s = 0.5f64.sqrt();
        let bell = ComplexMatrix::outer(&[c64(s, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(s, 0.0)]);
        let ra = partial_trace(&bell, (2, 2), Subsystem::A).unwrap();
        assert!(ra.max_abs_diff(&ComplexMatrix::from_diag(&[0.5, 0.5])) < 1e-15);

        // (|0><0| (x) I/2 + |1><1| (x) |0><0|) / 2, keep A
        let m = &kron(&ComplexMatrix::from_diag(&[1.0, 0.0]), &ComplexMatrix::from_diag(&[0.5, 0.5]))
            + &kron(&ComplexMatrix::from_diag(&[0.0, 1.0]), &ComplexMatrix::from_diag(&[1.0, 0.0]));
        let m = m.scale_real(0.5);
        let ra = partial_trace(&m, (2, 2), Subsystem::A).unwrap();
        assert!(ra.max_abs_diff(&ComplexMatrix::from_diag(&[0.5, 0.5])) < 1e-15);
        let rb = partial_trace(&m, (2, 2), Subsystem::B).unwrap();
        assert!(rb.max_abs_diff(&ComplexMatrix::from_diag(&[0.75, 0.25])) < 1e-15);

        assert!(matches!(
            partial_trace(&ComplexMatrix::identity(3), (2, 2), Subsystem::A),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn entropy_examples() {
        let pure = ComplexMatrix::outer(&[c64(0.6, 0.0), c64(0.0, 0.8)]);
        assert!(vn_entropy(&pure).unwrap().abs() < 1e-12);
        let mm4 = ComplexMatrix::from_diag(&[0.25; 4]);
        assert!((vn_entropy(&mm4).unwrap() - 2.0).abs() < 1e-14);
        // frozen: -0.25 log2 0.25 - 0.75 log2 0.75
        let s = vn_entropy(&ComplexMatrix::from_diag(&[0.25, 0.75])).unwrap();
        assert!((s - 0.8112781244591328).abs() < 1e-14);
    }

    #[test]
    fn purification_examples() {
        let pure = ComplexMatrix::outer(&[c64(0.6, 0.0), c64(0.8, 0.0)]);
        let p = purify(&pure).unwrap();
        assert_eq!(p.dim_ancilla, 1);
        assert!((p.vector[0].re - 0.6).abs() < 1e-12 && (p.vector[1].re - 0.8).abs() < 1e-12);

        let rho = ComplexMatrix::from_diag(&[0.25, 0.75]);
        let p = purify(&rho).unwrap();
        assert_eq!(p.dim_ancilla, 2);
        let back = partial_trace(&p.density(), (2, 2), Subsystem::A).unwrap();
        assert!(back.max_abs_diff(&rho) < 1e-12);
        // sqrt(0.75)|1>|0> + sqrt(0.25)|0>|1> (largest eigenvalue first)
        assert!((p.vector[2].re - 0.75f64.sqrt()).abs() < 1e-12);
        assert!((p.vector[1].re - 0.5).abs() < 1e-12);

        let mm = ComplexMatrix::from_diag(&[0.5, 0.5]);
        let p = purify(&mm).unwrap();
        let rb = partial_trace(&p.density(), (2, 2), Subsystem::B).unwrap();
        let schmidt = herm_eig(&rb).unwrap().eigenvalues;
        assert!((schmidt[0] - 0.5).abs() < 1e-12 && (schmidt[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn eig_2x2_closed_form_matches_jacobi() {
        let m = ComplexMatrix::from_vec(
            2,
            2,
            vec![c64(0.3, 0.0), c64(0.1, -0.2), c64(0.1, 0.2), c64(0.7, 0.0)],
        )
        .unwrap();
        let cf = eigvals_2x2(0.3, c64(0.1, -0.2), 0.7);
        let j = herm_eig(&m).unwrap().eigenvalues;
        assert!((cf[0] - j[0]).abs() < 1e-14 && (cf[1] - j[1]).abs() < 1e-14);
    }
}
