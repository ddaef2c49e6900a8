//! Discord-type measures and their relative-coherence counterparts.
//!
//! Every optimized quantity is a minimum over local rank-1 projective
//! measurements found by [`super::search`]; the reported value is therefore
//! an upper bound on the exact minimum within optimizer tolerance. The
//! reference bases used for the coherence side are the measurement product
//! bases themselves and are never re-optimized.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rqc::coherence_re;
use crate::states::{BipartiteState, OrthonormalBasis};

use super::measurement::{one_sided_entropies, two_sided_entropies, ProductMeasurement};
use super::search::{minimize_pair, minimize_side, side_params, OptimizerInfo};

/// Seed for the restart draws of heuristic (d > 2) searches.
pub const SEARCH_SEED: u64 = 0;
/// Values in `[-CLIP_TOL, 0)` are treated as rounding and set to zero.
pub const CLIP_TOL: f64 = 1e-9;

pub(crate) fn clip(value: f64, what: &str) -> Result<f64> {
    if value >= 0.0 {
        Ok(value)
    } else if value >= -CLIP_TOL {
        Ok(0.0)
    } else {
        Err(Error::Consistency(format!("{what} came out negative: {value:e}")))
    }
}

#[derive(Debug, Clone, Copy)]
struct Entropies {
    s_a: f64,
    s_b: f64,
    s_ab: f64,
}

impl Entropies {
    fn of(state: &BipartiteState) -> Self {
        Self {
            s_a: state.marginal_a().entropy(),
            s_b: state.marginal_b().entropy(),
            s_ab: state.state().entropy(),
        }
    }
}

/// `S(rho_AB) - S(rho_A)`.
pub fn conditional_entropy_ba(state: &BipartiteState) -> f64 {
    state.state().entropy() - state.marginal_a().entropy()
}

#[derive(Debug, Clone)]
pub struct Discord {
    pub value: f64,
    pub basis_a: OrthonormalBasis,
    pub info: OptimizerInfo,
}

/// `S(rho_A) - S(rho) - S(rho_P) + S(rho_PB)` at a fixed A-basis, unclipped.
pub fn discord_at(state: &BipartiteState, basis_a: &OrthonormalBasis) -> Result<f64> {
    check_side(state.d_a(), basis_a)?;
    let e = Entropies::of(state);
    let (s_p, s_pb) = one_sided_entropies(state, basis_a);
    Ok(e.s_a - e.s_ab - s_p + s_pb)
}

pub fn discord_a(state: &BipartiteState) -> Result<Discord> {
    let e = Entropies::of(state);
    let opt = minimize_side(
        state.d_a(),
        |b| {
            let (s_p, s_pb) = one_sided_entropies(state, b);
            s_pb - s_p
        },
        &[],
        SEARCH_SEED,
    );
    Ok(Discord {
        value: clip(e.s_a - e.s_ab + opt.value, "discord")?,
        basis_a: opt.basis,
        info: opt.info,
    })
}

#[derive(Debug, Clone)]
pub struct Delta1 {
    pub delta1: f64,
    pub discord_a: f64,
    pub measurement: ProductMeasurement,
    pub info_a: OptimizerInfo,
    pub info_b: OptimizerInfo,
}

/// `C_re(rho, {P_k (x) Q_l}) - C_re(rho_A, {P_k})`, unclipped.
pub fn delta1_at(state: &BipartiteState, m: &ProductMeasurement) -> Result<f64> {
    m.check(state)?;
    Ok(coherence_re(state.state(), &m.product_basis())? - coherence_re(&state.marginal_a(), &m.basis_a)?)
}

pub fn delta1(state: &BipartiteState) -> Result<Delta1> {
    let d = discord_a(state)?;
    delta1_from(state, &d)
}

/// `delta1` with `P` fixed to an already computed discord optimum and `Q`
/// chosen to minimize `S(rho_PQ)`.
pub fn delta1_from(state: &BipartiteState, discord: &Discord) -> Result<Delta1> {
    let p = &discord.basis_a;
    let opt = minimize_side(
        state.d_b(),
        |q| two_sided_entropies(state, &ProductMeasurement::new(p.clone(), q.clone())).2,
        &[],
        SEARCH_SEED,
    );
    let m = ProductMeasurement::new(p.clone(), opt.basis);
    Ok(Delta1 {
        delta1: clip(delta1_at(state, &m)?, "delta1")?,
        discord_a: discord.value,
        measurement: m,
        info_a: discord.info,
        info_b: opt.info,
    })
}

#[derive(Debug, Clone)]
pub struct SymmetricDiscord {
    pub value: f64,
    pub measurement: ProductMeasurement,
    pub info: OptimizerInfo,
}

/// `I(rho) - I(rho_PQ)` at a fixed product measurement, unclipped.
pub fn symmetric_discord_at(state: &BipartiteState, m: &ProductMeasurement) -> Result<f64> {
    m.check(state)?;
    let e = Entropies::of(state);
    let (s_p, s_q, s_pq) = two_sided_entropies(state, m);
    Ok((e.s_a + e.s_b - e.s_ab) - (s_p + s_q - s_pq))
}

pub fn symmetric_discord(state: &BipartiteState) -> Result<SymmetricDiscord> {
    let e = Entropies::of(state);
    let opt = minimize_pair(
        state.dims(),
        |m| {
            let (s_p, s_q, s_pq) = two_sided_entropies(state, m);
            s_pq - s_p - s_q
        },
        &[],
        SEARCH_SEED,
    );
    Ok(SymmetricDiscord {
        value: clip(e.s_a + e.s_b - e.s_ab + opt.value, "symmetric discord")?,
        measurement: opt.measurement,
        info: opt.info,
    })
}

#[derive(Debug, Clone)]
pub struct Delta2 {
    pub delta2: f64,
    pub symmetric_discord: f64,
    pub residual_vs_ds: f64,
    pub measurement: ProductMeasurement,
    pub info: OptimizerInfo,
}

/// `C_re(rho, {P_k (x) Q_l}) - C_re(rho_A, {P_k}) - C_re(rho_B, {Q_l})`, unclipped.
pub fn delta2_at(state: &BipartiteState, m: &ProductMeasurement) -> Result<f64> {
    m.check(state)?;
    Ok(coherence_re(state.state(), &m.product_basis())?
        - coherence_re(&state.marginal_a(), &m.basis_a)?
        - coherence_re(&state.marginal_b(), &m.basis_b)?)
}

pub fn delta2(state: &BipartiteState) -> Result<Delta2> {
    let ds = symmetric_discord(state)?;
    delta2_from(state, &ds)
}

pub fn delta2_from(state: &BipartiteState, ds: &SymmetricDiscord) -> Result<Delta2> {
    let d2 = clip(delta2_at(state, &ds.measurement)?, "delta2")?;
    Ok(Delta2 {
        delta2: d2,
        symmetric_discord: ds.value,
        residual_vs_ds: (d2 - ds.value).abs(),
        measurement: ds.measurement.clone(),
        info: ds.info,
    })
}

#[derive(Debug, Clone)]
pub struct Deficits {
    pub zero_way: f64,
    pub one_way: f64,
    /// `C_re(rho, {P_k (x) Q_l})` at the zero-way optimum.
    pub coherence_at_optimum: f64,
    /// `|zero_way - coherence_at_optimum|`.
    pub identity_residual: f64,
    pub measurement: ProductMeasurement,
    pub basis_a_one_way: OrthonormalBasis,
    pub info_zero_way: OptimizerInfo,
    pub info_one_way: OptimizerInfo,
}

/// Zero-way and one-way deficits. The one-way search is also started from
/// the A-part of the zero-way optimum, so `one_way <= zero_way` up to
/// rounding.
pub fn deficits(state: &BipartiteState) -> Result<Deficits> {
    let s_ab = state.state().entropy();
    let (d_a, d_b) = state.dims();
    let zero = minimize_pair((d_a, d_b), |m| two_sided_entropies(state, m).2, &[], SEARCH_SEED);
    let seed_a = zero.params[..side_params(d_a)].to_vec();
    let one = minimize_side(d_a, |b| one_sided_entropies(state, b).1, &[seed_a], SEARCH_SEED);
    let zero_way = clip(zero.value - s_ab, "zero-way deficit")?;
    let c = coherence_re(state.state(), &zero.measurement.product_basis())?;
    Ok(Deficits {
        zero_way,
        one_way: clip(one.value - s_ab, "one-way deficit")?,
        coherence_at_optimum: c,
        identity_residual: (zero_way - c).abs(),
        measurement: zero.measurement,
        basis_a_one_way: one.basis,
        info_zero_way: zero.info,
        info_one_way: one.info,
    })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Mid {
    pub value: f64,
    /// A marginal was degenerate; the value uses the eigensolver's
    /// deterministic eigenbasis.
    pub degenerate_marginal: bool,
}

/// Entropy increase from measuring both parties in their local eigenbases.
pub fn mid(state: &BipartiteState) -> Result<Mid> {
    let ea = state.marginal_a().eigen();
    let eb = state.marginal_b().eigen();
    let m = ProductMeasurement::new(OrthonormalBasis::from(&ea), OrthonormalBasis::from(&eb));
    let value = coherence_re(state.state(), &m.product_basis())?;
    Ok(Mid {
        value: clip(value, "measurement-induced disturbance")?,
        degenerate_marginal: !ea.is_nondegenerate() || !eb.is_nondegenerate(),
    })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct MinVn {
    pub value: f64,
    /// `C_re(rho, {e_k (x) Q_l})` with `e_k` the eigenbasis of `rho_A` and
    /// `Q` minimizing `S(rho_PQ)`.
    pub bound: f64,
    pub info: OptimizerInfo,
}

/// Entropic measurement-induced nonlocality for a nondegenerate `rho_A`,
/// where the locally invariant measurement is unique. `None` otherwise.
pub fn min_vn(state: &BipartiteState) -> Result<Option<MinVn>> {
    let ea = state.marginal_a().eigen();
    if !ea.is_nondegenerate() {
        return Ok(None);
    }
    let p = OrthonormalBasis::from(&ea);
    let s_ab = state.state().entropy();
    let (_, s_pb) = one_sided_entropies(state, &p);
    let q = minimize_side(
        state.d_b(),
        |q| two_sided_entropies(state, &ProductMeasurement::new(p.clone(), q.clone())).2,
        &[],
        SEARCH_SEED,
    );
    let m = ProductMeasurement::new(p, q.basis);
    Ok(Some(MinVn {
        value: clip(s_pb - s_ab, "measurement-induced nonlocality")?,
        bound: coherence_re(state.state(), &m.product_basis())?,
        info: q.info,
    }))
}

fn check_side(dim: usize, basis: &OrthonormalBasis) -> Result<()> {
    if basis.dim() != dim {
        return Err(crate::error::dim_mismatch(format!(
            "{}-dimensional basis for a {dim}-dimensional subsystem",
            basis.dim()
        )));
    }
    Ok(())
}
