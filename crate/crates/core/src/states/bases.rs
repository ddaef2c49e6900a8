use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::matcore::{c64, ComplexMatrix, C64};

use super::{validate, DensityMatrix, OrthonormalBasis};

/// Generalized Gell-Mann matrices `X_i`, normalized to `tr(X_i X_j) = 2 delta_ij`.
///
/// Ordering: for each index pair `j < k` in lexicographic order the symmetric
/// matrix `|j><k| + |k><j|` followed by the antisymmetric `-i|j><k| + i|k><j|`,
/// then the `d - 1` diagonal matrices. For `d = 2` this is `(X, Y, Z)`.
pub fn gell_mann_basis(d: usize) -> Vec<ComplexMatrix> {
    let mut out = Vec::with_capacity(d * d - 1);
    for j in 0..d {
        for k in (j + 1)..d {
            let mut sym = ComplexMatrix::zeros(d, d);
            sym[(j, k)] = c64(1.0, 0.0);
            sym[(k, j)] = c64(1.0, 0.0);
            out.push(sym);
            let mut anti = ComplexMatrix::zeros(d, d);
            anti[(j, k)] = c64(0.0, -1.0);
            anti[(k, j)] = c64(0.0, 1.0);
            out.push(anti);
        }
    }
    for l in 1..d {
        let norm = (2.0 / (l * (l + 1)) as f64).sqrt();
        let mut diag = vec![0.0; d];
        for x in diag.iter_mut().take(l) {
            *x = norm;
        }
        diag[l] = -(l as f64) * norm;
        out.push(ComplexMatrix::from_diag(&diag));
    }
    out
}

/// Coordinates `x_i = tr(rho X_i)` of a state in the Gell-Mann basis.
#[derive(Debug, Clone, PartialEq)]
pub struct GellMannCoords {
    pub dim: usize,
    pub x: Vec<f64>,
}

impl GellMannCoords {
    pub fn norm(&self) -> f64 {
        self.x.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

pub fn bloch_coords(rho: &DensityMatrix) -> GellMannCoords {
    let d = rho.dim();
    let m = rho.matrix();
    let mut x = Vec::with_capacity(d * d - 1);
    // Same ordering as gell_mann_basis, read straight off the matrix entries.
    for j in 0..d {
        for k in (j + 1)..d {
            let z = m[(j, k)];
            x.push(2.0 * z.re);
            x.push(-2.0 * z.im);
        }
    }
    for l in 1..d {
        let norm = (2.0 / (l * (l + 1)) as f64).sqrt();
        let partial: f64 = (0..l).map(|i| m[(i, i)].re).sum();
        x.push(norm * (partial - l as f64 * m[(l, l)].re));
    }
    GellMannCoords { dim: d, x }
}

/// `I/d + (1/2) sum_i x_i X_i`.
pub fn reconstruct(coords: &GellMannCoords) -> Result<DensityMatrix> {
    let d = coords.dim;
    if coords.x.len() != d * d - 1 {
        return Err(Error::DimensionMismatch(format!(
            "{} coordinates for dimension {d}",
            coords.x.len()
        )));
    }
    let mut m = ComplexMatrix::identity(d).scale_real(1.0 / d as f64);
    for (xi, gi) in coords.x.iter().zip(gell_mann_basis(d)) {
        m = &m + &gi.scale_real(0.5 * xi);
    }
    validate(&m)
}

/// Complete sets of mutually unbiased bases for `d = 2` and `d = 3`.
///
/// `d = 2`: eigenbases of Z, X, Y. `d = 3`: the computational basis followed
/// by the three bases with vectors `omega^{a j^2 + m j} / sqrt(3)`,
/// `a = 0, 1, 2`.
pub fn mub_set(d: usize) -> Result<Vec<OrthonormalBasis>> {
    match d {
        2 => {
            let s = 0.5f64.sqrt();
            let z = ComplexMatrix::identity(2);
            let x = ComplexMatrix::from_real(2, 2, &[s, s, s, -s])?;
            let y = ComplexMatrix::from_vec(2, 2, vec![c64(s, 0.0), c64(s, 0.0), c64(0.0, s), c64(0.0, -s)])?;
            [z, x, y].into_iter().map(OrthonormalBasis::new).collect()
        }
        3 => {
            let mut out = vec![OrthonormalBasis::computational(3)];
            let inv = 1.0 / 3f64.sqrt();
            for a in 0..3usize {
                let m = ComplexMatrix::from_fn(3, 3, |j, col| {
                    let phase = 2.0 * PI * ((a * j * j + col * j) % 3) as f64 / 3.0;
                    C64::from_polar(inv, phase)
                });
                out.push(OrthonormalBasis::new(m)?);
            }
            Ok(out)
        }
        other => Err(Error::UnsupportedDimension(other)),
    }
}
