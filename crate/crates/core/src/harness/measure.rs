//! Everything computable for one state, as a JSON-ready report.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::incompat::{q_l1, IncompatResult};
use crate::qcorr::{correlation_report, CorrelationReport};
use crate::rqc::{max_rqc_mm_l1, max_rqc_mm_re, rqc, Measure, RqcResult};
use crate::states::{DensityMatrix, LoadedState};

use super::SCHEMA_VERSION;

/// Which coherence measures to report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureSelection {
    L1,
    RelativeEntropy,
    All,
}

impl std::str::FromStr for MeasureSelection {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(MeasureSelection::All),
            other => Ok(match other.parse::<Measure>()? {
                Measure::L1 => MeasureSelection::L1,
                Measure::RelativeEntropy => MeasureSelection::RelativeEntropy,
            }),
        }
    }
}

impl MeasureSelection {
    fn measures(self) -> Vec<Measure> {
        match self {
            MeasureSelection::L1 => vec![Measure::L1],
            MeasureSelection::RelativeEntropy => vec![Measure::RelativeEntropy],
            MeasureSelection::All => vec![Measure::L1, Measure::RelativeEntropy],
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MeasureReport {
    pub schema_version: u32,
    pub dim: usize,
    pub dims: Option<(usize, usize)>,
    /// `"file"` when a second state was given, `"maximally_mixed"` otherwise.
    pub reference: &'static str,
    pub purity: f64,
    pub entropy: f64,
    /// Keyed by measure name.
    pub rqc: BTreeMap<&'static str, RqcResult>,
    /// Closed-form suprema over all bases (the reference `I/d`).
    pub max_rqc_mm: BTreeMap<&'static str, f64>,
    pub incompat: IncompatResult,
    pub correlations: Option<CorrelationReport>,
}

pub fn measure_report(
    loaded: &LoadedState,
    against: Option<&DensityMatrix>,
    selection: MeasureSelection,
) -> Result<MeasureReport> {
    let rho = &loaded.state;
    let mm;
    let (sigma, reference) = match against {
        Some(s) => (s, "file"),
        None => {
            mm = DensityMatrix::maximally_mixed(rho.dim());
            (&mm, "maximally_mixed")
        }
    };
    let mut rqc_values = BTreeMap::new();
    let mut max_mm = BTreeMap::new();
    for m in selection.measures() {
        let key = match m {
            Measure::L1 => "l1",
            Measure::RelativeEntropy => "relative_entropy",
        };
        rqc_values.insert(key, rqc(rho, sigma, m)?);
        max_mm.insert(
            key,
            match m {
                Measure::L1 => max_rqc_mm_l1(rho),
                Measure::RelativeEntropy => max_rqc_mm_re(rho),
            },
        );
    }
    let correlations = match &loaded.bipartite {
        Some(b) => Some(correlation_report(b)?),
        None => None,
    };
    Ok(MeasureReport {
        schema_version: SCHEMA_VERSION,
        dim: rho.dim(),
        dims: loaded.bipartite.as_ref().map(|b| b.dims()),
        reference,
        purity: rho.purity(),
        entropy: rho.entropy(),
        rqc: rqc_values,
        max_rqc_mm: max_mm,
        incompat: q_l1(rho, sigma)?,
        correlations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{bell, load_state_json, state_to_json};

    fn load(rho: &DensityMatrix, dims: Option<(usize, usize)>) -> LoadedState {
        load_state_json(&state_to_json(rho, dims)).unwrap()
    }

    #[test]
    fn bell_report() {
        let b = bell();
        let r = measure_report(&load(b.state(), Some((2, 2))), None, MeasureSelection::All).unwrap();
        let c = r.correlations.unwrap();
        assert!((c.discord_a - 1.0).abs() < 1e-6);
        assert!((c.eof.unwrap() - 1.0).abs() < 1e-9);
        assert_eq!(r.reference, "maximally_mixed");
    }

    #[test]
    fn maximally_mixed_is_incoherent() {
        let mm = DensityMatrix::maximally_mixed(3);
        let r = measure_report(&load(&mm, None), None, MeasureSelection::All).unwrap();
        for v in r.rqc.values() {
            assert!(v.value.abs() < 1e-9);
        }
        assert!(r.incompat.q_l1 == 0.0 && r.incompat.q_frobenius == 0.0);
        assert!(r.max_rqc_mm.values().all(|v| v.abs() < 1e-12));
        assert!(r.correlations.is_none());
    }
}
