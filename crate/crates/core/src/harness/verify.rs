//! The acceptance suite: fifteen property checks with pinned seeds.
//!
//! Each criterion returns its pass/fail verdict, a one-line detail and the
//! numeric metrics it was decided on; the metrics double as a fingerprint
//! for the determinism criterion.

use std::time::{Duration, Instant};

use rand::Rng;
use serde::Serialize;

use crate::error::Result;
use crate::incompat::{extremal_state, q_frobenius, q_l1, sum_rule_check};
use crate::matcore::{c64, herm_eig, ComplexMatrix, HermitianEigensystem};
use crate::qcorr::{
    concurrence, conditional_entropy_ba, deficits, delta1_at, delta1_from, delta2_at, delta2_from, discord_a,
    eof_2x2, eq15_check, koashi_winter_check, symmetric_discord, symmetric_discord_at, ProductMeasurement,
};
use crate::rqc::{
    coherence_l1, coherence_re, max_rqc_mm_l1, max_rqc_mm_re, max_rqc_numeric, mub_complementarity, Measure,
    MaxRqcOptions,
};
use crate::states::{
    araki_lieb_product, bell, quantum_classical, random_density_with, random_hermitian_with, random_pure_vector_with,
    random_pure_with, random_unitary_with, sample_rng, werner, BipartiteState, DensityMatrix, OrthonormalBasis,
    SampleRng,
};

pub const CRITERIA: usize = 15;

/// Every criterion draws from its own seed.
fn seed_for(id: usize) -> u64 {
    0x5eed_0000 + id as u64
}

/// Budget for the whole suite.
pub const SUITE_BUDGET: Duration = Duration::from_secs(300);

#[derive(Debug, Clone, Serialize)]
pub struct Outcome {
    pub passed: bool,
    pub detail: String,
    pub metrics: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub metrics: Vec<f64>,
    pub seconds: f64,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {} {} ({:.1}s): {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.seconds,
            self.detail
        )
    }
}

pub fn title(id: usize) -> &'static str {
    match id {
        1 => "eigensolver soundness",
        2 => "maximal coherence closed forms vs optimizer",
        3 => "maximal coherence bounds",
        4 => "coherence bounds incompatibility",
        5 => "incompatibility sum rule",
        6 => "extremal incompatibility",
        7 => "Q_l1 vs Q_F",
        8 => "discord below delta1",
        9 => "symmetric discord equals delta2",
        10 => "deficits",
        11 => "entanglement of formation below delta1",
        12 => "Koashi-Winter equality",
        13 => "MUB complementarity",
        14 => "known values",
        15 => "suite runtime and determinism",
        _ => "unknown",
    }
}

fn outcome(passed: bool, detail: String, metrics: Vec<f64>) -> Result<Outcome> {
    Ok(Outcome {
        passed,
        detail,
        metrics,
    })
}

fn random_state(d: usize, rng: &mut SampleRng) -> Result<DensityMatrix> {
    let rank = rng.gen_range(1..=d);
    random_density_with(d, rank, rng)
}

fn two_qubit(rng: &mut SampleRng) -> Result<BipartiteState> {
    BipartiteState::new(random_state(4, rng)?, 2, 2)
}

fn random_basis(d: usize, rng: &mut SampleRng) -> OrthonormalBasis {
    OrthonormalBasis::new(random_unitary_with(d, rng)).expect("Haar unitary is orthonormal")
}

/// Quantum-classical two-qubit state with a random pointer basis on B.
fn random_qc(rng: &mut SampleRng) -> Result<(BipartiteState, OrthonormalBasis)> {
    let p: f64 = rng.gen_range(0.05..0.95);
    let conds = [random_state(2, rng)?, random_state(2, rng)?];
    let pointer = random_basis(2, rng);
    Ok((quantum_classical(&[p, 1.0 - p], &conds, &pointer)?, pointer))
}

/// Eigensolver under test for criterion 1.
pub type Eigensolver<'a> = &'a dyn Fn(&ComplexMatrix) -> Result<HermitianEigensystem>;

pub fn criterion_1_with(solver: Eigensolver) -> Result<Outcome> {
    let mut rng = sample_rng(seed_for(1), 0);
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for i in 0..1000 {
        let d = 2 + i % 7;
        let h = random_hermitian_with(d, &mut rng);
        let eig = solver(&h)?;
        worst = worst.max(eig.reconstruct().max_abs_diff(&h));
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        worst <= 1e-9 && secs < 10.0,
        format!("max reconstruction residual {worst:.2e} (<= 1e-9), {secs:.2}s (< 10s)"),
        vec![worst],
    )
}

fn criterion_2() -> Result<Outcome> {
    let opts = MaxRqcOptions {
        restarts: 50,
        ..Default::default()
    };
    let mut rng = sample_rng(seed_for(2), 0);
    let (mut gap, mut excess): (f64, f64) = (0.0, f64::NEG_INFINITY);
    for d in [2, 3] {
        for i in 0..100 {
            let rho = random_state(d, &mut rng)?;
            for (m, closed) in [(Measure::L1, max_rqc_mm_l1(&rho)), (Measure::RelativeEntropy, max_rqc_mm_re(&rho))] {
                let o = MaxRqcOptions { seed: i, ..opts };
                let num = max_rqc_numeric(&rho, m, &o, None)?.value;
                gap = gap.max(closed - num);
                excess = excess.max(num - closed);
            }
        }
    }
    outcome(
        gap <= 1e-4 && excess <= 1e-9,
        format!("closed form - optimizer <= {gap:.2e} (<= 1e-4), optimizer - closed form <= {excess:.2e} (<= 1e-9)"),
        vec![gap, excess],
    )
}

fn criterion_3() -> Result<Outcome> {
    let mut rng = sample_rng(seed_for(3), 0);
    let (mut over_l1, mut over_re, mut pure_gap) = (f64::NEG_INFINITY, f64::NEG_INFINITY, 0.0f64);
    for d in [2usize, 3, 4] {
        let df = d as f64;
        for _ in 0..10_000 {
            let rho = random_state(d, &mut rng)?;
            over_l1 = over_l1.max(max_rqc_mm_l1(&rho) - (df - 1.0));
            over_re = over_re.max(max_rqc_mm_re(&rho) - df.log2());
        }
        for _ in 0..100 {
            let rho = random_pure_with(d, &mut rng);
            pure_gap = pure_gap
                .max((max_rqc_mm_l1(&rho) - (df - 1.0)).abs())
                .max((max_rqc_mm_re(&rho) - df.log2()).abs());
        }
    }
    outcome(
        over_l1 <= 1e-9 && over_re <= 1e-9 && pure_gap <= 1e-9,
        format!("excess l1 {over_l1:.2e}, excess re {over_re:.2e} (<= 1e-9); pure-state gap {pure_gap:.2e} (<= 1e-9)"),
        vec![over_l1, over_re, pure_gap],
    )
}

fn criterion_4() -> Result<Outcome> {
    let mut rng = sample_rng(seed_for(4), 0);
    let mut violations = 0usize;
    let mut worst = f64::NEG_INFINITY;
    let mut pairs = 0usize;
    for d in [2usize, 3, 4] {
        let mut n = 0;
        while n < 10_000 {
            let rho = random_state(d, &mut rng)?;
            let sigma = random_density_with(d, d, &mut rng)?;
            let eig = sigma.eigen();
            if !eig.is_nondegenerate() {
                continue;
            }
            n += 1;
            let c = coherence_l1(&rho, &OrthonormalBasis::from(&eig))?;
            let q = q_l1(&rho, &sigma)?.q_l1;
            worst = worst.max(q - c);
            if c < q - 1e-9 {
                violations += 1;
            }
        }
        pairs += n;
    }
    let mut saturation: f64 = 0.0;
    for _ in 0..1000 {
        let rho = random_state(2, &mut rng)?;
        let sigma = random_pure_with(2, &mut rng);
        let c = coherence_l1(&rho, &OrthonormalBasis::from(&sigma.eigen()))?;
        saturation = saturation.max((c - q_l1(&rho, &sigma)?.q_l1).abs());
    }
    outcome(
        violations == 0 && saturation <= 1e-9,
        format!(
            "{violations} violations of C_l1 >= Q_l1 - 1e-9 in {pairs} pairs (max Q - C {worst:.2e}); \
             qubit pure-sigma |C - Q| <= {saturation:.2e} (<= 1e-9)"
        ),
        vec![violations as f64, worst, saturation],
    )
}

fn criterion_5() -> Result<Outcome> {
    let mut rng = sample_rng(seed_for(5), 0);
    let mut worst: f64 = 0.0;
    for d in [2usize, 3, 4] {
        let mut n = 0;
        while n < 1000 {
            let rho = random_state(d, &mut rng)?;
            let sigma = random_density_with(d, d, &mut rng)?;
            if !sigma.eigen().is_nondegenerate() {
                continue;
            }
            n += 1;
            worst = worst.max(sum_rule_check(&rho, &sigma)?.residual);
        }
    }
    outcome(worst <= 1e-9, format!("max sum-rule residual {worst:.2e} (<= 1e-9)"), vec![worst])
}

fn criterion_6() -> Result<Outcome> {
    let mut attain: f64 = 0.0;
    for d in 2..=6 {
        let e = extremal_state(d)?;
        let mut v = vec![c64(0.0, 0.0); d];
        v[0] = c64(1.0, 0.0);
        let q = q_l1(&e.state, &DensityMatrix::from_pure(&v)?)?.q_l1;
        attain = attain.max((q - ((d - 1) as f64).sqrt()).abs());
    }
    let mut rng = sample_rng(seed_for(6), 0);
    let mut excess = f64::NEG_INFINITY;
    for i in 0..100_000 {
        let d = 2 + i % 5;
        let (rho, sigma) = if i % 2 == 0 {
            (random_pure_with(d, &mut rng), random_pure_with(d, &mut rng))
        } else {
            (random_state(d, &mut rng)?, random_state(d, &mut rng)?)
        };
        excess = excess.max(q_l1(&rho, &sigma)?.q_l1 - ((d - 1) as f64).sqrt());
    }
    outcome(
        attain <= 1e-9 && excess <= 1e-9,
        format!("extremal |Q - sqrt(d-1)| <= {attain:.2e} (<= 1e-9); random max Q - sqrt(d-1) = {excess:.2e} (<= 1e-9)"),
        vec![attain, excess],
    )
}

fn criterion_7() -> Result<Outcome> {
    let mut rng = sample_rng(seed_for(7), 0);
    let mut worst = f64::NEG_INFINITY;
    for i in 0..10_000 {
        let d = 2 + i % 3;
        let rho = random_state(d, &mut rng)?;
        let sigma = random_state(d, &mut rng)?;
        let q = q_l1(&rho, &sigma)?.q_l1;
        worst = worst.max(0.5 * q_frobenius(&rho, &sigma)? - q * q);
    }
    outcome(worst <= 1e-9, format!("max Q_F/2 - Q_l1^2 = {worst:.2e} (<= 1e-9)"), vec![worst])
}

fn criterion_8() -> Result<Outcome> {
    let mut rng = sample_rng(seed_for(8), 0);
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..500 {
        let s = two_qubit(&mut rng)?;
        let d = discord_a(&s)?;
        let d1 = delta1_from(&s, &d)?;
        worst = worst.max(d.value - d1.delta1);
    }
    let mut qc_gap: f64 = 0.0;
    for _ in 0..100 {
        let (s, pointer) = random_qc(&mut rng)?;
        let d = discord_a(&s)?;
        let d1 = delta1_at(&s, &ProductMeasurement::new(d.basis_a.clone(), pointer))?;
        qc_gap = qc_gap.max((d.value - d1).abs());
    }
    outcome(
        worst <= 1e-6 && qc_gap <= 1e-5,
        format!("max D_A - delta1 = {worst:.2e} (<= 1e-6); quantum-classical |D_A - delta1| <= {qc_gap:.2e} (<= 1e-5)"),
        vec![worst, qc_gap],
    )
}

fn criterion_9() -> Result<Outcome> {
    let mut rng = sample_rng(seed_for(9), 0);
    let (mut at_opt, mut anywhere): (f64, f64) = (0.0, 0.0);
    for _ in 0..100 {
        let s = two_qubit(&mut rng)?;
        let ds = symmetric_discord(&s)?;
        at_opt = at_opt.max(delta2_from(&s, &ds)?.residual_vs_ds);
        for _ in 0..100 {
            let m = ProductMeasurement::new(random_basis(2, &mut rng), random_basis(2, &mut rng));
            anywhere = anywhere.max((symmetric_discord_at(&s, &m)? - delta2_at(&s, &m)?).abs());
        }
    }
    outcome(
        at_opt <= 1e-9 && anywhere <= 1e-9,
        format!("|D_s - delta2| at optimum <= {at_opt:.2e}, at random measurements <= {anywhere:.2e} (<= 1e-9)"),
        vec![at_opt, anywhere],
    )
}

fn criterion_10() -> Result<Outcome> {
    let mut rng = sample_rng(seed_for(10), 0);
    let (mut identity, mut order): (f64, f64) = (0.0, f64::NEG_INFINITY);
    for _ in 0..500 {
        let s = two_qubit(&mut rng)?;
        let r = deficits(&s)?;
        identity = identity.max(r.identity_residual);
        order = order.max(r.one_way - r.zero_way);
    }
    let mut eq_branch: f64 = 0.0;
    for _ in 0..100 {
        let (s, pointer) = random_qc(&mut rng)?;
        let r = deficits(&s)?;
        identity = identity.max(r.identity_residual);
        let at_pointer = coherence_re(s.state(), &r.basis_a_one_way.tensor(&pointer))?;
        eq_branch = eq_branch.max((r.one_way - at_pointer).abs());
    }
    outcome(
        identity <= 1e-9 && order <= 1e-6 && eq_branch <= 1e-5,
        format!(
            "zero-way identity residual {identity:.2e} (<= 1e-9); max one-way - zero-way {order:.2e} (<= 1e-6); \
             quantum-classical equality gap {eq_branch:.2e} (<= 1e-5)"
        ),
        vec![identity, order, eq_branch],
    )
}

fn criterion_11() -> Result<Outcome> {
    let mut rng = sample_rng(seed_for(11), 0);
    let mut violations = 0usize;
    let mut worst = f64::NEG_INFINITY;
    let mut accepted = 0;
    let mut drawn = 0usize;
    while accepted < 500 {
        let s = two_qubit(&mut rng)?;
        drawn += 1;
        if conditional_entropy_ba(&s) < 0.0 {
            continue;
        }
        accepted += 1;
        let r = eq15_check(&s)?;
        worst = worst.max(r.eof - r.delta1);
        if r.satisfied != Some(true) {
            violations += 1;
        }
    }
    let trivial = DensityMatrix::maximally_mixed(1);
    let mut al_gap: f64 = 0.0;
    for _ in 0..100 {
        let v = random_pure_vector_with(4, &mut rng);
        let s = araki_lieb_product(&v, 2, 2, &trivial)?;
        let r = eq15_check(&s)?;
        worst = worst.max(r.eof - r.delta1);
        if r.satisfied != Some(true) {
            violations += 1;
        }
        al_gap = al_gap.max((r.eof - s.marginal_a().entropy()).abs());
    }
    outcome(
        violations == 0 && al_gap <= 1e-6,
        format!(
            "{violations} violations of E_f <= delta1 + 1e-6 ({drawn} drawn, 500 with S(B|A) >= 0, 100 Araki-Lieb; \
             max E_f - delta1 {worst:.2e}); |E_f - S(A)| <= {al_gap:.2e} (<= 1e-6)"
        ),
        vec![violations as f64, worst, al_gap],
    )
}

fn criterion_12() -> Result<Outcome> {
    let mut rng = sample_rng(seed_for(12), 0);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let v = random_pure_vector_with(8, &mut rng);
        worst = worst.max(koashi_winter_check(&DensityMatrix::from_pure(&v)?)?.residual);
    }
    outcome(worst <= 1e-4, format!("max residual {worst:.2e} (<= 1e-4)"), vec![worst])
}

fn criterion_13() -> Result<Outcome> {
    let mut rng = sample_rng(seed_for(13), 0);
    let (mut l1_gap, mut re_excess): (f64, f64) = (0.0, f64::NEG_INFINITY);
    for _ in 0..1000 {
        let m = mub_complementarity(&random_state(2, &mut rng)?)?;
        l1_gap = l1_gap.max((m.sum_l1_sq - m.bound_l1).abs());
    }
    for _ in 0..1000 {
        let m = mub_complementarity(&random_state(3, &mut rng)?)?;
        let (s, b) = (m.sum_re.expect("d = 3"), m.bound_re.expect("d = 3"));
        re_excess = re_excess.max(s - b);
    }
    outcome(
        l1_gap <= 1e-9 && re_excess <= 1e-9,
        format!("d=2 l1 equality gap {l1_gap:.2e} (<= 1e-9); d=3 max sum - bound {re_excess:.2e} (<= 1e-9)"),
        vec![l1_gap, re_excess],
    )
}

/// Rounding floor for a concurrence that is zero in exact arithmetic.
const CONCURRENCE_ZERO: f64 = 1e-12;

fn criterion_14() -> Result<Outcome> {
    let b = bell();
    let vals = [
        discord_a(&b)?.value,
        symmetric_discord(&b)?.value,
        deficits(&b)?.zero_way,
        eof_2x2(&b)?,
    ];
    let bell_gap = vals.iter().map(|v| (v - 1.0).abs()).fold(0.0, f64::max);
    let w = werner(1.0 / 3.0)?;
    let (c, e) = (concurrence(&w)?, eof_2x2(&w)?);
    outcome(
        bell_gap <= 1e-5 && c <= CONCURRENCE_ZERO && e == 0.0,
        format!("Bell |value - 1| <= {bell_gap:.2e} (<= 1e-5); werner(1/3) concurrence {c:.1e} (<= {CONCURRENCE_ZERO:.0e}), E_f {e:e} (exactly 0)"),
        vec![bell_gap, c, e],
    )
}

/// Runs criterion `id` in 1..=14.
pub fn run_criterion(id: usize) -> Result<Outcome> {
    match id {
        1 => criterion_1_with(&herm_eig),
        2 => criterion_2(),
        3 => criterion_3(),
        4 => criterion_4(),
        5 => criterion_5(),
        6 => criterion_6(),
        7 => criterion_7(),
        8 => criterion_8(),
        9 => criterion_9(),
        10 => criterion_10(),
        11 => criterion_11(),
        12 => criterion_12(),
        13 => criterion_13(),
        14 => criterion_14(),
        15 => criterion_15(),
        other => Err(crate::error::Error::Config(format!("no criterion {other}"))),
    }
}

fn timed(id: usize, f: impl FnOnce() -> Result<Outcome>) -> CriterionResult {
    let start = Instant::now();
    let o = f().unwrap_or_else(|e| Outcome {
        passed: false,
        detail: format!("error: {e}"),
        metrics: vec![],
    });
    CriterionResult {
        id,
        title: title(id),
        passed: o.passed,
        detail: o.detail,
        metrics: o.metrics,
        seconds: start.elapsed().as_secs_f64(),
    }
}

/// Criteria 1 to 14 in order.
pub fn run_core() -> Vec<CriterionResult> {
    (1..CRITERIA).map(|id| timed(id, || run_criterion(id))).collect()
}

fn same_metrics(a: &[CriterionResult], b: &[CriterionResult]) -> bool {
    a.len() == b.len()
        && a.iter().zip(b).all(|(x, y)| {
            x.passed == y.passed
                && x.metrics.len() == y.metrics.len()
                && x.metrics.iter().zip(&y.metrics).all(|(p, q)| p.to_bits() == q.to_bits())
        })
}

/// Verdict on two consecutive runs of criteria 1 to 14.
pub fn criterion_15_from(first: &[CriterionResult], second: &[CriterionResult], first_elapsed: Duration) -> Outcome {
    let deterministic = same_metrics(first, second);
    let secs = first_elapsed.as_secs_f64();
    Outcome {
        passed: deterministic && first_elapsed < SUITE_BUDGET,
        detail: format!(
            "suite took {secs:.1}s (< {}s); second run {}",
            SUITE_BUDGET.as_secs(),
            if deterministic { "bit-identical" } else { "DIFFERS" }
        ),
        metrics: vec![secs],
    }
}

fn criterion_15() -> Result<Outcome> {
    let start = Instant::now();
    let first = run_core();
    let elapsed = start.elapsed();
    let second = run_core();
    Ok(criterion_15_from(&first, &second, elapsed))
}

/// The full suite: criteria 1 to 14, then a second pass for criterion 15.
pub fn run_all() -> Vec<CriterionResult> {
    let start = Instant::now();
    let mut results = run_core();
    let elapsed = start.elapsed();
    let t15 = Instant::now();
    let second = run_core();
    let o = criterion_15_from(&results, &second, elapsed);
    results.push(CriterionResult {
        id: 15,
        title: title(15),
        passed: o.passed,
        detail: o.detail,
        metrics: o.metrics,
        seconds: t15.elapsed().as_secs_f64(),
    });
    results
}
