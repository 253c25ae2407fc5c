//! Accuracy comparison between the arrow solver and the Jacobi baseline on
//! random symmetric matrices.
//!
//! Every trial draws its matrix from a ChaCha8 stream selected by
//! `(seed, index)`: the seed keys the generator and the trial index picks
//! the stream. Trials are therefore independent of execution order and
//! can run in parallel while the output stays byte-identical.

use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::assembly::{solve, SolveError, SolverConfig};
use crate::oracle::{baseline_eig3, OracleError};
use crate::primitives::{EigenDecomp3, SymMat3};
use crate::secular::Method;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("solver fault on trial {index}: {source}")]
    Solver { index: u64, source: SolveError },
    #[error("baseline fault on trial {index}: {source}")]
    Baseline { index: u64, source: OracleError },
    #[error("no trial records")]
    Empty,
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Distribution {
    /// U(0, 1)
    Uniform,
    /// N(0, 1)
    Normal,
    /// Chi-square with one degree of freedom.
    Chisq,
}

impl Distribution {
    pub const ALL: [Distribution; 3] = [
        Distribution::Uniform,
        Distribution::Normal,
        Distribution::Chisq,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Distribution::Uniform => "uniform",
            Distribution::Normal => "normal",
            Distribution::Chisq => "chisq",
        }
    }

    pub fn sample<R: Rng + ?Sized>(self, rng: &mut R) -> f64 {
        match self {
            Distribution::Uniform => rng.random::<f64>(),
            Distribution::Normal => rng.sample(StandardNormal),
            Distribution::Chisq => {
                let z: f64 = rng.sample(StandardNormal);
                z * z
            }
        }
    }
}

impl FromStr for Distribution {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "uniform" => Ok(Distribution::Uniform),
            "normal" => Ok(Distribution::Normal),
            "chisq" => Ok(Distribution::Chisq),
            other => Err(format!(
                "unknown distribution `{other}` (expected uniform, normal or chisq)"
            )),
        }
    }
}

/// Generator for trial `index` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Six i.i.d. draws filling the upper triangle.
pub fn gen_sym3<R: Rng + ?Sized>(dist: Distribution, rng: &mut R) -> SymMat3 {
    let mut upper = [0.0; 6];
    for v in &mut upper {
        *v = dist.sample(rng);
    }
    SymMat3::from_upper(upper).expect("sampled entries are finite")
}

pub fn trial_matrix(dist: Distribution, seed: u64, index: u64) -> SymMat3 {
    gen_sym3(dist, &mut trial_rng(seed, index))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metrics {
    /// `||I - V^T V||_F`
    pub orth: f64,
    /// `||T V - V Lambda||_F`
    pub resid: f64,
}

pub fn metrics(t: &SymMat3, e: &EigenDecomp3) -> Metrics {
    Metrics {
        orth: e.orthogonality_error(),
        resid: e.residual(t),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub index: u64,
    pub dist: Distribution,
    pub orth_main: f64,
    pub resid_main: f64,
    pub orth_base: f64,
    pub resid_base: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub n_matrices: u64,
    pub dist: Distribution,
    pub seed: u64,
    pub solver: SolverConfig,
}

impl RunConfig {
    pub fn new(dist: Distribution, n_matrices: u64, seed: u64, method: Method) -> Self {
        Self {
            n_matrices,
            dist,
            seed,
            solver: SolverConfig::with_method(method),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stat {
    pub max: f64,
    pub median: f64,
}

impl Stat {
    fn of(mut values: Vec<f64>) -> Self {
        values.sort_by(f64::total_cmp);
        let n = values.len();
        let median = if n % 2 == 1 {
            values[n / 2]
        } else {
            0.5 * (values[n / 2 - 1] + values[n / 2])
        };
        Self {
            max: values[n - 1],
            median,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub orth_main: Stat,
    pub resid_main: Stat,
    pub orth_base: Stat,
    pub resid_base: Stat,
    /// Trials where the main solver's orthogonality error is strictly lower.
    pub main_better_orth: usize,
    pub main_better_resid: usize,
}

impl Summary {
    pub fn of(records: &[TrialRecord]) -> Result<Self, HarnessError> {
        if records.is_empty() {
            return Err(HarnessError::Empty);
        }
        let col = |f: fn(&TrialRecord) -> f64| Stat::of(records.iter().map(f).collect());
        Ok(Self {
            orth_main: col(|r| r.orth_main),
            resid_main: col(|r| r.resid_main),
            orth_base: col(|r| r.orth_base),
            resid_base: col(|r| r.resid_base),
            main_better_orth: records.iter().filter(|r| r.orth_main < r.orth_base).count(),
            main_better_resid: records
                .iter()
                .filter(|r| r.resid_main < r.resid_base)
                .count(),
        })
    }
}

#[derive(Debug, Clone)]
pub struct Comparison {
    pub records: Vec<TrialRecord>,
    pub summary: Summary,
}

pub fn run_trial(cfg: &RunConfig, index: u64) -> Result<TrialRecord, HarnessError> {
    let t = trial_matrix(cfg.dist, cfg.seed, index);
    let main = solve(&t, &cfg.solver).map_err(|source| HarnessError::Solver { index, source })?;
    let base = baseline_eig3(&t)
        .map_err(|source| HarnessError::Baseline { index, source })?
        .decomp;
    let m = metrics(&t, &main);
    let b = metrics(&t, &base);
    Ok(TrialRecord {
        index,
        dist: cfg.dist,
        orth_main: m.orth,
        resid_main: m.resid,
        orth_base: b.orth,
        resid_base: b.resid,
    })
}

/// Runs all trials and returns them in index order with a summary.
pub fn run_comparison(cfg: &RunConfig) -> Result<Comparison, HarnessError> {
    #[cfg(feature = "parallel")]
    let records: Result<Vec<_>, _> = {
        use rayon::prelude::*;
        (0..cfg.n_matrices)
            .into_par_iter()
            .map(|i| run_trial(cfg, i))
            .collect()
    };
    #[cfg(not(feature = "parallel"))]
    let records: Result<Vec<_>, _> = (0..cfg.n_matrices).map(|i| run_trial(cfg, i)).collect();
    let records = records?;
    let summary = Summary::of(&records)?;
    Ok(Comparison { records, summary })
}

pub fn write_records<W: Write>(records: &[TrialRecord], out: W) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "index",
        "dist",
        "orth_main",
        "resid_main",
        "orth_base",
        "resid_base",
    ])?;
    for r in records {
        w.write_record([
            r.index.to_string(),
            r.dist.name().to_string(),
            r.orth_main.to_string(),
            r.resid_main.to_string(),
            r.orth_base.to_string(),
            r.resid_base.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_records<R: Read>(input: R) -> Result<Vec<TrialRecord>, HarnessError> {
    let mut r = csv::Reader::from_reader(input);
    Ok(r.deserialize().collect::<Result<Vec<TrialRecord>, _>>()?)
}

/// Per-trial `baseline - main` differences, ascending. Negative entries mark
/// trials where the arrow solver's error exceeds the baseline's.
#[derive(Debug, Clone, PartialEq)]
pub struct SortedDifferences {
    pub orth: Vec<f64>,
    pub resid: Vec<f64>,
}

pub fn sorted_differences(records: &[TrialRecord]) -> Result<SortedDifferences, HarnessError> {
    if records.is_empty() {
        return Err(HarnessError::Empty);
    }
    let sorted = |f: fn(&TrialRecord) -> f64| {
        let mut v: Vec<f64> = records.iter().map(f).collect();
        v.sort_by(f64::total_cmp);
        v
    };
    Ok(SortedDifferences {
        orth: sorted(|r| r.orth_base - r.orth_main),
        resid: sorted(|r| r.resid_base - r.resid_main),
    })
}

/// Writes one series as `rank,delta`.
pub fn write_series<W: Write>(series: &[f64], out: W) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["rank", "delta"])?;
    for (rank, d) in series.iter().enumerate() {
        w.write_record([rank.to_string(), d.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Paths of the two series files written for an output prefix:
/// `<prefix>.orth.csv` and `<prefix>.resid.csv`.
pub fn series_paths(prefix: &Path) -> (std::path::PathBuf, std::path::PathBuf) {
    let with = |suffix: &str| {
        let mut s = prefix.as_os_str().to_owned();
        s.push(suffix);
        std::path::PathBuf::from(s)
    };
    (with(".orth.csv"), with(".resid.csv"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primitives::Mat3;

    fn rec(orth_main: f64, orth_base: f64) -> TrialRecord {
        TrialRecord {
            index: 0,
            dist: Distribution::Normal,
            orth_main,
            resid_main: orth_main,
            orth_base,
            resid_base: orth_base,
        }
    }

    #[test]
    fn distribution_supports() {
        let mut rng = trial_rng(7, 0);
        for _ in 0..1000 {
            let u = gen_sym3(Distribution::Uniform, &mut rng).upper();
            assert!(u.iter().all(|v| (0.0..1.0).contains(v)));
            let c = gen_sym3(Distribution::Chisq, &mut rng).upper();
            assert!(c.iter().all(|v| *v >= 0.0));
        }
    }

    #[test]
    fn trial_matrices_are_reproducible() {
        for d in Distribution::ALL {
            assert_eq!(trial_matrix(d, 42, 17), trial_matrix(d, 42, 17));
            assert_ne!(trial_matrix(d, 42, 17), trial_matrix(d, 42, 18));
            assert_ne!(trial_matrix(d, 42, 17), trial_matrix(d, 43, 17));
        }
    }

    #[test]
    fn chisq_moments() {
        let n = 100_000u64;
        let mut rng = trial_rng(3, 0);
        let xs: Vec<f64> = (0..n)
            .map(|_| Distribution::Chisq.sample(&mut rng))
            .collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        assert!((mean - 1.0).abs() < 0.05, "mean {mean}");
        assert!((var - 2.0).abs() < 0.1, "variance {var}");
    }

    #[test]
    fn metrics_examples() {
        let t = SymMat3::diag(3.0, 2.0, 1.0).unwrap();
        let exact = EigenDecomp3 {
            values: [3.0, 2.0, 1.0],
            vectors: Mat3::identity(),
        };
        assert_eq!(
            metrics(&t, &exact),
            Metrics {
                orth: 0.0,
                resid: 0.0
            }
        );
        let wrong = EigenDecomp3 {
            values: [3.0, 2.0, 0.0],
            ..exact
        };
        assert_eq!(metrics(&t, &wrong).resid, 1.0);
        let stretched = EigenDecomp3 {
            vectors: Mat3::diag([1.0, 1.0, 2.0]),
            ..exact
        };
        assert_eq!(metrics(&t, &stretched).orth, 3.0);
    }

    #[test]
    fn difference_sign_convention() {
        let better = [rec(1e-16, 3e-16), rec(0.0, 1e-16)];
        let d = sorted_differences(&better).unwrap();
        assert!(d.orth.iter().all(|v| *v > 0.0));
        let same = [rec(1e-16, 1e-16), rec(2e-16, 2e-16)];
        assert!(sorted_differences(&same)
            .unwrap()
            .resid
            .iter()
            .all(|v| *v == 0.0));
        let single = sorted_differences(&[rec(1e-16, 3e-16)]).unwrap();
        assert_eq!(single.orth, vec![3e-16 - 1e-16]);
        let mixed = sorted_differences(&[rec(5e-16, 1e-16), rec(1e-16, 2e-16)]).unwrap();
        assert!(mixed.orth[0] < 0.0 && mixed.orth[1] > 0.0);
        assert!(matches!(sorted_differences(&[]), Err(HarnessError::Empty)));
    }

    #[test]
    fn records_round_trip_through_csv() {
        let cfg = RunConfig::new(Distribution::Normal, 20, 9, Method::Rational);
        let cmp = run_comparison(&cfg).unwrap();
        let mut buf = Vec::new();
        write_records(&cmp.records, &mut buf).unwrap();
        assert!(buf.starts_with(b"index,dist,orth_main,resid_main,orth_base,resid_base\n"));
        let back = read_records(buf.as_slice()).unwrap();
        assert_eq!(back, cmp.records);
    }

    #[test]
    fn single_trial_is_accurate() {
        let cfg = RunConfig::new(Distribution::Uniform, 1, 1, Method::Newton);
        let r = run_comparison(&cfg).unwrap().records[0];
        let t = trial_matrix(Distribution::Uniform, 1, 0);
        let scale = t.frob_norm().max(1.0);
        assert!(r.orth_main <= 1e-14 && r.orth_base <= 1e-14);
        assert!(r.resid_main <= 1e-14 * scale && r.resid_base <= 1e-14 * scale);
    }

    #[test]
    fn series_paths_append_suffixes() {
        let (o, r) = series_paths(Path::new("out/diff"));
        assert_eq!(o, Path::new("out/diff.orth.csv"));
        assert_eq!(r, Path::new("out/diff.resid.csv"));
    }
}
