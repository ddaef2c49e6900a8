//! Randomized sweeps of the inequalities and identities as named checks.
//!
//! Sample `i` of check `c` at dimension entry `k` draws from the ChaCha8
//! substream `(c << 48) | (k << 32) | i` of the configured seed, so a report
//! depends only on the configuration and is reproducible byte for byte,
//! apart from the `timestamp` object.

use std::fmt;
use std::str::FromStr;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use rand::Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::incompat::{q_frobenius, q_l1, sum_rule_check};
use crate::qcorr::{deficits, delta1, delta2, eq15_check};
use crate::rqc::{coherence_l1, mub_complementarity};
use crate::states::{random_density_with, sample_rng, BipartiteState, DensityMatrix, OrthonormalBasis, SampleRng};

use super::SCHEMA_VERSION;

/// Tolerance for identities and for the closed-form inequalities.
pub const EXACT_TOL: f64 = 1e-9;
/// Tolerance for inequalities between optimized quantities.
pub const OPTIMIZER_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Eq8L1Bound,
    Eq9SumRule,
    Eq11Delta1Bound,
    Eq13Delta2Identity,
    Eq14Deficits,
    Eq15EofBound,
    MubComplementarity,
    QfLowerBound,
    MaxQExtremal,
}

impl Check {
    pub const ALL: [Check; 9] = [
        Check::Eq8L1Bound,
        Check::Eq9SumRule,
        Check::Eq11Delta1Bound,
        Check::Eq13Delta2Identity,
        Check::Eq14Deficits,
        Check::Eq15EofBound,
        Check::MubComplementarity,
        Check::QfLowerBound,
        Check::MaxQExtremal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Eq8L1Bound => "eq8_l1_bound",
            Check::Eq9SumRule => "eq9_sum_rule",
            Check::Eq11Delta1Bound => "eq11_delta1_bound",
            Check::Eq13Delta2Identity => "eq13_delta2_identity",
            Check::Eq14Deficits => "eq14_deficits",
            Check::Eq15EofBound => "eq15_eof_bound",
            Check::MubComplementarity => "mub_complementarity",
            Check::QfLowerBound => "qf_lower_bound",
            Check::MaxQExtremal => "max_q_extremal",
        }
    }

    fn id(self) -> u64 {
        Check::ALL.iter().position(|&c| c == self).expect("listed") as u64
    }

    fn needs_bipartite(self) -> bool {
        matches!(
            self,
            Check::Eq11Delta1Bound | Check::Eq13Delta2Identity | Check::Eq14Deficits | Check::Eq15EofBound
        )
    }

    fn supports(self, dims: Dims) -> std::result::Result<(), String> {
        match (self, dims) {
            (c, Dims::Single(_)) if c.needs_bipartite() => {
                Err(format!("{} needs bipartite dimensions such as 2x2", c.name()))
            }
            (Check::Eq15EofBound, Dims::Bipartite(a, b)) if (a, b) != (2, 2) => {
                Err("eq15_eof_bound is defined for 2x2 only".into())
            }
            (Check::MubComplementarity, d) if !matches!(d.total(), 2 | 3) => {
                Err("mub_complementarity is available for d = 2 and d = 3".into())
            }
            (_, d) if d.total() < 2 => Err(format!("dimension {d} is too small")),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownCheck(s.to_string()))
    }
}

/// A single system `d` or a bipartite `d_a x d_b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dims {
    Single(usize),
    Bipartite(usize, usize),
}

impl Dims {
    pub fn total(self) -> usize {
        match self {
            Dims::Single(d) => d,
            Dims::Bipartite(a, b) => a * b,
        }
    }
}

impl fmt::Display for Dims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dims::Single(d) => write!(f, "{d}"),
            Dims::Bipartite(a, b) => write!(f, "{a}x{b}"),
        }
    }
}

impl FromStr for Dims {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad dimension `{s}`")))
        };
        match s.split_once('x') {
            Some((a, b)) => Ok(Dims::Bipartite(num(a)?, num(b)?)),
            None => Ok(Dims::Single(num(s)?)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::Parse(format!("unknown format `{other}`"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub dims: Vec<Dims>,
    pub samples: usize,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub format: Format,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::Config("samples must be at least 1".into()));
        }
        if self.checks.is_empty() {
            return Err(Error::Config("no checks selected".into()));
        }
        if self.dims.is_empty() {
            return Err(Error::Config("no dimensions given".into()));
        }
        for &c in &self.checks {
            for &d in &self.dims {
                c.supports(d).map_err(Error::Config)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub dims: Vec<String>,
    pub samples: usize,
    pub seed: u64,
    pub checks: Vec<&'static str>,
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub check: &'static str,
    pub dims: String,
    pub sample: usize,
    /// First 16 hex digits of the SHA-256 of the sampled matrices.
    pub input_hash: String,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    /// False when the check's precondition does not hold for this sample;
    /// such rows always pass.
    pub applicable: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepSummary {
    pub rows: usize,
    pub violations: usize,
    pub max_residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timestamp {
    pub started_unix_s: u64,
    pub wall_time_s: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub schema_version: u32,
    pub artifact_version: &'static str,
    pub config: ConfigEcho,
    pub summary: SweepSummary,
    pub rows: Vec<SweepRow>,
    /// The only run-dependent part of the report.
    pub timestamp: Timestamp,
}

fn hash_inputs(mats: &[&DensityMatrix]) -> String {
    let mut h = Sha256::new();
    for m in mats {
        for z in m.matrix().as_slice() {
            h.update(z.re.to_le_bytes());
            h.update(z.im.to_le_bytes());
        }
    }
    h.finalize().iter().take(8).map(|b| format!("{b:02x}")).collect()
}

fn random_state(d: usize, rng: &mut SampleRng) -> Result<DensityMatrix> {
    let rank = rng.gen_range(1..=d);
    random_density_with(d, rank, rng)
}

struct Outcome {
    lhs: f64,
    rhs: f64,
    residual: f64,
    applicable: bool,
    pass: bool,
}

/// `lhs <= rhs + tol`, with the excess as residual.
fn at_most(lhs: f64, rhs: f64, tol: f64) -> Outcome {
    Outcome {
        lhs,
        rhs,
        residual: (lhs - rhs).max(0.0),
        applicable: true,
        pass: lhs <= rhs + tol,
    }
}

fn equal(lhs: f64, rhs: f64, tol: f64) -> Outcome {
    let residual = (lhs - rhs).abs();
    Outcome {
        lhs,
        rhs,
        residual,
        applicable: true,
        pass: residual <= tol,
    }
}

fn run_sample(check: Check, dims: Dims, rng: &mut SampleRng) -> Result<(String, Outcome)> {
    let d = dims.total();
    let bipartite = |rho: &DensityMatrix| match dims {
        Dims::Bipartite(a, b) => BipartiteState::new(rho.clone(), a, b),
        Dims::Single(_) => unreachable!("validated"),
    };
    Ok(match check {
        Check::Eq8L1Bound => {
            let rho = random_state(d, rng)?;
            let sigma = random_density_with(d, d, rng)?;
            let q = q_l1(&rho, &sigma)?;
            let c = coherence_l1(&rho, &OrthonormalBasis::from(&sigma.eigen()))?;
            (hash_inputs(&[&rho, &sigma]), at_most(q.q_l1, c, EXACT_TOL))
        }
        Check::Eq9SumRule => {
            let rho = random_state(d, rng)?;
            let sigma = random_density_with(d, d, rng)?;
            let sr = sum_rule_check(&rho, &sigma)?;
            (hash_inputs(&[&rho, &sigma]), equal(sr.lhs, sr.rhs, EXACT_TOL))
        }
        Check::QfLowerBound => {
            let rho = random_state(d, rng)?;
            let sigma = random_state(d, rng)?;
            let q = q_l1(&rho, &sigma)?;
            // Q_F / 2 <= Q_l1^2
            let half_qf = 0.5 * q_frobenius(&rho, &sigma)?;
            (hash_inputs(&[&rho, &sigma]), at_most(half_qf, q.q_l1 * q.q_l1, EXACT_TOL))
        }
        Check::MaxQExtremal => {
            let rho = random_state(d, rng)?;
            let sigma = random_state(d, rng)?;
            let q = q_l1(&rho, &sigma)?.q_l1;
            (hash_inputs(&[&rho, &sigma]), at_most(q, ((d - 1) as f64).sqrt(), EXACT_TOL))
        }
        Check::MubComplementarity => {
            let rho = random_state(d, rng)?;
            let mc = mub_complementarity(&rho)?;
            let out = match (mc.sum_re, mc.bound_re) {
                (Some(s), Some(b)) => at_most(s, b, EXACT_TOL),
                _ => equal(mc.sum_l1_sq, mc.bound_l1, EXACT_TOL),
            };
            (hash_inputs(&[&rho]), out)
        }
        Check::Eq11Delta1Bound => {
            let rho = random_state(d, rng)?;
            let r = delta1(&bipartite(&rho)?)?;
            (hash_inputs(&[&rho]), at_most(r.discord_a, r.delta1, OPTIMIZER_TOL))
        }
        Check::Eq13Delta2Identity => {
            let rho = random_state(d, rng)?;
            let r = delta2(&bipartite(&rho)?)?;
            (hash_inputs(&[&rho]), equal(r.delta2, r.symmetric_discord, EXACT_TOL))
        }
        Check::Eq14Deficits => {
            let rho = random_state(d, rng)?;
            let r = deficits(&bipartite(&rho)?)?;
            let mut out = at_most(r.one_way, r.zero_way, OPTIMIZER_TOL);
            out.residual = out.residual.max(r.identity_residual);
            out.pass &= r.identity_residual <= EXACT_TOL;
            (hash_inputs(&[&rho]), out)
        }
        Check::Eq15EofBound => {
            let rho = random_state(d, rng)?;
            let r = eq15_check(&bipartite(&rho)?)?;
            let mut out = at_most(r.eof, r.delta1, OPTIMIZER_TOL);
            if !r.applicable {
                out.residual = 0.0;
                out.pass = true;
                out.applicable = false;
            }
            (hash_inputs(&[&rho]), out)
        }
    })
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepReport> {
    cfg.validate()?;
    let started = Instant::now();
    let started_unix_s = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    let mut rows = Vec::new();
    for &check in &cfg.checks {
        for (k, &dims) in cfg.dims.iter().enumerate() {
            for i in 0..cfg.samples {
                let stream = (check.id() << 48) | ((k as u64) << 32) | i as u64;
                let mut rng = sample_rng(cfg.seed, stream);
                let (input_hash, o) = run_sample(check, dims, &mut rng)?;
                rows.push(SweepRow {
                    check: check.name(),
                    dims: dims.to_string(),
                    sample: i,
                    input_hash,
                    lhs: o.lhs,
                    rhs: o.rhs,
                    residual: o.residual,
                    applicable: o.applicable,
                    pass: o.pass,
                });
            }
        }
    }
    let summary = SweepSummary {
        rows: rows.len(),
        violations: rows.iter().filter(|r| !r.pass).count(),
        max_residual: rows.iter().map(|r| r.residual).fold(0.0, f64::max),
    };
    Ok(SweepReport {
        schema_version: SCHEMA_VERSION,
        artifact_version: env!("CARGO_PKG_VERSION"),
        config: ConfigEcho {
            dims: cfg.dims.iter().map(|d| d.to_string()).collect(),
            samples: cfg.samples,
            seed: cfg.seed,
            checks: cfg.checks.iter().map(|c| c.name()).collect(),
            format: cfg.format,
        },
        summary,
        rows,
        timestamp: Timestamp {
            started_unix_s,
            wall_time_s: started.elapsed().as_secs_f64(),
        },
    })
}

impl SweepReport {
    /// Pretty JSON; floats use the shortest representation that round-trips.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per row; floats with 12 significant digits.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["check", "dims", "sample", "input_hash", "lhs", "rhs", "residual", "applicable", "pass"])
            .expect("in-memory write");
        let f = |x: f64| format!("{x:.11e}");
        for r in &self.rows {
            w.write_record([
                r.check.to_string(),
                r.dims.clone(),
                r.sample.to_string(),
                r.input_hash.clone(),
                f(r.lhs),
                f(r.rhs),
                f(r.residual),
                r.applicable.to_string(),
                r.pass.to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(checks: &[Check], dims: &[Dims], samples: usize) -> SweepConfig {
        SweepConfig {
            dims: dims.to_vec(),
            samples,
            seed: 7,
            checks: checks.to_vec(),
            format: Format::Json,
        }
    }

    #[test]
    fn names_round_trip() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
        }
        assert!(matches!("eq99".parse::<Check>(), Err(Error::UnknownCheck(_))));
        assert_eq!("2x3".parse::<Dims>().unwrap(), Dims::Bipartite(2, 3));
        assert_eq!("4".parse::<Dims>().unwrap(), Dims::Single(4));
        assert!("x".parse::<Dims>().is_err());
    }

    #[test]
    fn config_errors() {
        assert!(matches!(run_sweep(&cfg(&[Check::Eq9SumRule], &[Dims::Single(3)], 0)), Err(Error::Config(_))));
        assert!(matches!(run_sweep(&cfg(&[], &[Dims::Single(3)], 1)), Err(Error::Config(_))));
        assert!(matches!(
            run_sweep(&cfg(&[Check::Eq11Delta1Bound], &[Dims::Single(4)], 1)),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            run_sweep(&cfg(&[Check::Eq15EofBound], &[Dims::Bipartite(2, 3)], 1)),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            run_sweep(&cfg(&[Check::MubComplementarity], &[Dims::Single(4)], 1)),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn identity_sweep_is_clean_and_deterministic() {
        let c = cfg(&[Check::Eq9SumRule, Check::Eq8L1Bound], &[Dims::Single(3), Dims::Bipartite(2, 2)], 50);
        let a = run_sweep(&c).unwrap();
        let b = run_sweep(&c).unwrap();
        assert_eq!(a.summary.violations, 0);
        assert!(a.summary.max_residual <= 1e-9);
        assert_eq!(a.rows, b.rows);
        assert_eq!(a.to_csv(), b.to_csv());
        let strip = |r: &SweepReport| {
            let mut v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
            v.as_object_mut().unwrap().remove("timestamp");
            v.to_string()
        };
        assert_eq!(strip(&a), strip(&b));
    }

    #[test]
    fn csv_and_json_agree() {
        let r = run_sweep(&cfg(&[Check::QfLowerBound], &[Dims::Single(2)], 5)).unwrap();
        let csv = r.to_csv();
        let mut rd = csv::Reader::from_reader(csv.as_bytes());
        for (rec, row) in rd.records().zip(&r.rows) {
            let rec = rec.unwrap();
            let lhs: f64 = rec[4].parse().unwrap();
            assert!((lhs - row.lhs).abs() <= 1e-11 * row.lhs.abs().max(1e-300));
            assert_eq!(&rec[3], row.input_hash.as_str());
        }
    }

    #[test]
    fn correlation_checks_run() {
        let c = cfg(
            &[Check::Eq11Delta1Bound, Check::Eq13Delta2Identity, Check::Eq14Deficits, Check::Eq15EofBound],
            &[Dims::Bipartite(2, 2)],
            2,
        );
        let r = run_sweep(&c).unwrap();
        assert_eq!(r.summary.rows, 8);
        assert_eq!(r.summary.violations, 0);
    }
}
