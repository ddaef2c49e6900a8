//! Single-qubit Kraus channels applied independently to every qubit.

use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matcore::{c64, kron, ComplexMatrix};
use crate::states::DensityMatrix;

/// Completeness tolerance for `sum_i K_i^dagger K_i = I`.
pub const KRAUS_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct KrausChannel {
    pub label: String,
    kraus_ops: Vec<ComplexMatrix>,
}

impl KrausChannel {
    pub fn new(label: impl Into<String>, kraus_ops: Vec<ComplexMatrix>) -> Result<Self> {
        let first = kraus_ops
            .first()
            .ok_or_else(|| Error::Config("channel without Kraus operators".into()))?;
        let d = first.rows();
        if kraus_ops.iter().any(|k| k.rows() != d || k.cols() != d) {
            return Err(crate::error::dim_mismatch("Kraus operators must share one square shape"));
        }
        let mut sum = ComplexMatrix::zeros(d, d);
        for k in &kraus_ops {
            sum = &sum + &(&k.adjoint() * k);
        }
        let dev = sum.max_abs_diff(&ComplexMatrix::identity(d));
        if dev > KRAUS_TOL {
            return Err(Error::NotTracePreserving(dev));
        }
        Ok(Self {
            label: label.into(),
            kraus_ops,
        })
    }

    pub fn kraus_ops(&self) -> &[ComplexMatrix] {
        &self.kraus_ops
    }

    pub fn dim(&self) -> usize {
        self.kraus_ops[0].rows()
    }

    /// `sum_i K_i rho K_i^dagger`.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.dim() {
            return Err(crate::error::dim_mismatch(format!(
                "{}-dimensional channel on a {}-dimensional state",
                self.dim(),
                rho.dim()
            )));
        }
        let mut out = ComplexMatrix::zeros(rho.dim(), rho.dim());
        for k in &self.kraus_ops {
            out = &out + &rho.matrix().conjugate_by(k);
        }
        Ok(DensityMatrix::from_trusted(out.hermitian_part()))
    }

    /// The channel acting on qubit `q` of `n`, identity elsewhere.
    pub fn on_qubit(&self, q: usize, n: usize) -> Result<KrausChannel> {
        if self.dim() != 2 || q >= n {
            return Err(Error::Config(format!("cannot place a {}-dimensional channel on qubit {q} of {n}", self.dim())));
        }
        let left = ComplexMatrix::identity(1 << q);
        let right = ComplexMatrix::identity(1 << (n - q - 1));
        let ops = self.kraus_ops.iter().map(|k| kron(&kron(&left, k), &right)).collect();
        KrausChannel::new(format!("{}[{q}]", self.label), ops)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChannelKind {
    Dephasing,
    AmplitudeDamping,
    Depolarizing,
}

impl FromStr for ChannelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dephasing" => Ok(ChannelKind::Dephasing),
            "amplitude_damping" => Ok(ChannelKind::AmplitudeDamping),
            "depolarizing" => Ok(ChannelKind::Depolarizing),
            other => Err(Error::UnknownChannel(other.to_string())),
        }
    }
}

impl ChannelKind {
    pub fn name(self) -> &'static str {
        match self {
            ChannelKind::Dephasing => "dephasing",
            ChannelKind::AmplitudeDamping => "amplitude_damping",
            ChannelKind::Depolarizing => "depolarizing",
        }
    }

    /// Single-qubit channel at strength `gamma` in `[0, 1]`.
    ///
    /// - dephasing: `sqrt(1 - g/2) I`, `sqrt(g/2) Z` (coherences scale by `1 - g`)
    /// - amplitude damping: `[[1, 0], [0, sqrt(1 - g)]]`, `[[0, sqrt(g)], [0, 0]]`
    /// - depolarizing: `sqrt(1 - 3g/4) I`, `sqrt(g/4) {X, Y, Z}`
    pub fn qubit(self, gamma: f64) -> Result<KrausChannel> {
        if !(0.0..=1.0).contains(&gamma) {
            return Err(Error::Config(format!("channel strength {gamma} outside [0, 1]")));
        }
        let m = |v: [f64; 4]| ComplexMatrix::from_real(2, 2, &v).expect("2x2");
        let i = m([1.0, 0.0, 0.0, 1.0]);
        let x = m([0.0, 1.0, 1.0, 0.0]);
        let z = m([1.0, 0.0, 0.0, -1.0]);
        let y = ComplexMatrix::from_vec(2, 2, vec![c64(0.0, 0.0), c64(0.0, -1.0), c64(0.0, 1.0), c64(0.0, 0.0)])
            .expect("2x2");
        let ops = match self {
            ChannelKind::Dephasing => vec![
                i.scale_real((1.0 - gamma / 2.0).sqrt()),
                z.scale_real((gamma / 2.0).sqrt()),
            ],
            ChannelKind::AmplitudeDamping => {
                vec![m([1.0, 0.0, 0.0, (1.0 - gamma).sqrt()]), m([0.0, gamma.sqrt(), 0.0, 0.0])]
            }
            ChannelKind::Depolarizing => {
                let w = (gamma / 4.0).sqrt();
                vec![
                    i.scale_real((1.0 - 3.0 * gamma / 4.0).sqrt()),
                    x.scale_real(w),
                    y.scale_real(w),
                    z.scale_real(w),
                ]
            }
        };
        KrausChannel::new(self.name(), ops)
    }
}

/// Channel strength at time `t`: `1 - e^{-t}`.
pub fn gamma_of_t(t: f64) -> f64 {
    -(-t).exp_m1()
}

/// Number of qubits in a `2^n`-dimensional state.
pub fn qubit_count(dim: usize) -> Result<usize> {
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::UnsupportedDimension(dim));
    }
    Ok(dim.trailing_zeros() as usize)
}

/// Applies the single-qubit channel `kind(gamma)` to each qubit in turn.
pub fn apply_per_qubit(kind: ChannelKind, gamma: f64, rho: &DensityMatrix) -> Result<DensityMatrix> {
    let n = qubit_count(rho.dim())?;
    let single = kind.qubit(gamma)?;
    let mut out = rho.clone();
    for q in 0..n {
        out = single.on_qubit(q, n)?.apply(&out)?;
    }
    Ok(out)
}
