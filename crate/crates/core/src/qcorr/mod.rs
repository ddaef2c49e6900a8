//! Quantum correlations of bipartite states: discord, symmetric discord,
//! deficits, MID, MIN, the relative-coherence discrepancies `delta1` and
//! `delta2`, and two-qubit entanglement of formation.

pub mod discord;
pub mod entanglement;
pub mod measurement;
pub mod search;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::states::BipartiteState;

pub use discord::{
    conditional_entropy_ba, deficits, delta1, delta1_at, delta1_from, delta2, delta2_at, delta2_from, discord_a,
    discord_at, mid, min_vn, symmetric_discord, symmetric_discord_at, Deficits, Delta1, Delta2, Discord, Mid, MinVn,
    SymmetricDiscord,
};
pub use entanglement::{concurrence, eof_2x2, eq15_check, koashi_winter_check, Eq15Check, KoashiWinter};
pub use measurement::{
    conditional_blocks, joint_probabilities, measure_a, measure_ab, one_sided_entropies, qubit_basis,
    two_sided_entropies, BasisSummary, ProductMeasurement,
};
pub use search::{minimize_pair, minimize_side, OptimizerInfo};

/// All correlation measures of one state, in bits.
#[derive(Debug, Clone, Serialize)]
pub struct CorrelationReport {
    pub discord_a: f64,
    pub symmetric_discord: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub mid: f64,
    pub mid_degenerate_marginal: bool,
    pub min_vn: Option<f64>,
    pub min_vn_bound: Option<f64>,
    pub zero_way_deficit: f64,
    pub one_way_deficit: f64,
    pub eof: Option<f64>,
    pub concurrence: Option<f64>,
    pub cond_entropy_ba: f64,
    pub optimizer: BTreeMap<&'static str, OptimizerInfo>,
}

pub fn correlation_report(state: &BipartiteState) -> Result<CorrelationReport> {
    let d = discord_a(state)?;
    let d1 = delta1_from(state, &d)?;
    let ds = symmetric_discord(state)?;
    let d2 = delta2_from(state, &ds)?;
    let def = deficits(state)?;
    let m = mid(state)?;
    let n = min_vn(state)?;
    let two_qubit = state.dims() == (2, 2);
    let mut optimizer = BTreeMap::new();
    optimizer.insert("discord_a", d.info);
    optimizer.insert("delta1_b", d1.info_b);
    optimizer.insert("symmetric_discord", ds.info);
    optimizer.insert("zero_way_deficit", def.info_zero_way);
    optimizer.insert("one_way_deficit", def.info_one_way);
    if let Some(n) = &n {
        optimizer.insert("min_vn_bound", n.info);
    }
    Ok(CorrelationReport {
        discord_a: d.value,
        symmetric_discord: ds.value,
        delta1: d1.delta1,
        delta2: d2.delta2,
        mid: m.value,
        mid_degenerate_marginal: m.degenerate_marginal,
        min_vn: n.map(|n| n.value),
        min_vn_bound: n.map(|n| n.bound),
        zero_way_deficit: def.zero_way,
        one_way_deficit: def.one_way,
        eof: if two_qubit { Some(eof_2x2(state)?) } else { None },
        concurrence: if two_qubit { Some(concurrence(state)?) } else { None },
        cond_entropy_ba: conditional_entropy_ba(state),
        optimizer,
    })
}
