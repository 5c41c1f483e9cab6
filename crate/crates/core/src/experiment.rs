//! Seeded multi-trial experiments, a chi-square uniformity test, and the
//! exhaustive comparison of logical decidability with Born statistics.

use rayon::prelude::*;
use serde::Serialize;

use crate::devices::{born, prepare, sample, trial_stream};
use crate::error::{Error, Result};
use crate::logic::{all_propositions, decide, outcome_multiplicities, Decidability, Proposition};
use crate::modmath::Dimension;

/// Significance level of the embedded critical values.
pub const ALPHA: f64 = 0.001;

/// Upper 0.1% points of the chi-square distribution, `df = 1..=30`.
pub const CHI_SQUARE_CRITICAL_999: [f64; 30] = [
    10.828, 13.816, 16.266, 18.467, 20.515, 22.458, 24.322, 26.124, 27.877, 29.588, //
    31.264, 32.909, 34.528, 36.123, 37.697, 39.252, 40.790, 42.312, 43.820, 45.315, //
    46.797, 48.268, 49.728, 51.179, 52.620, 54.052, 55.476, 56.892, 58.301, 59.703,
];

/// Default threshold separating deterministic from uniform Born statistics.
pub const DEFAULT_CLASSIFY_TOL: f64 = 1e-9;

/// Critical value at `ALPHA` for `df` degrees of freedom.
pub fn critical_value(df: usize) -> Result<f64> {
    df.checked_sub(1)
        .and_then(|i| CHI_SQUARE_CRITICAL_999.get(i))
        .copied()
        .ok_or(Error::NoCriticalValue(df))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExperimentConfig {
    pub d: Dimension,
    pub axiom: Proposition,
    pub m: usize,
    pub trials: u64,
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn new(d: Dimension, axiom: Proposition, m: usize, trials: u64, seed: u64) -> Result<Self> {
        if axiom.dim() != d {
            return Err(Error::DimensionMismatch {
                left: axiom.dim().get(),
                right: d.get(),
            });
        }
        if m > d.get() {
            return Err(Error::OutOfRange {
                what: "measurement index",
                value: m,
                max: d.get(),
            });
        }
        if trials == 0 {
            return Err(Error::NoTrials);
        }
        Ok(ExperimentConfig {
            d,
            axiom,
            m,
            trials,
            seed,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub config: ExperimentConfig,
    pub counts: Vec<u64>,
}

/// Prepare the axiom once, then draw `trials` outcomes, trial `i` from its
/// own derived stream. The tally does not depend on thread scheduling.
pub fn run(config: &ExperimentConfig) -> Result<Tally> {
    let d = config.d;
    let dist = born(&prepare(&config.axiom, d)?, config.m, d)?;
    let counts = (0..config.trials)
        .into_par_iter()
        .fold(
            || vec![0u64; d.get()],
            |mut acc, i| {
                acc[sample(&dist, &mut trial_stream(config.seed, i))] += 1;
                acc
            },
        )
        .reduce(
            || vec![0u64; d.get()],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(Tally {
        config: *config,
        counts,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    ConsistentWithUniform,
    RejectUniform,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UniformityResult {
    pub chi_square_statistic: f64,
    pub degrees_of_freedom: usize,
    pub alpha: f64,
    pub critical_value: f64,
    pub verdict: Verdict,
}

/// Pearson chi-square test of the tally against the uniform distribution.
/// Requires at least `5·d` trials.
pub fn chi_square_uniform(tally: &Tally) -> Result<UniformityResult> {
    let d = tally.counts.len();
    let trials: u64 = tally.counts.iter().sum();
    let required = 5 * d as u64;
    if trials < required {
        return Err(Error::TooFewTrials { trials, required });
    }
    let df = d - 1;
    let critical = critical_value(df)?;
    let expected = trials as f64 / d as f64;
    let statistic = tally
        .counts
        .iter()
        .map(|&c| {
            let diff = c as f64 - expected;
            diff * diff / expected
        })
        .sum::<f64>();
    let verdict = if statistic < critical {
        Verdict::ConsistentWithUniform
    } else {
        Verdict::RejectUniform
    };
    Ok(UniformityResult {
        chi_square_statistic: statistic,
        degrees_of_freedom: df,
        alpha: ALPHA,
        critical_value: critical,
        verdict,
    })
}

/// Qualitative shape of an outcome distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Behavior {
    Deterministic { n: usize },
    Uniform,
    /// Neither of the above; never produced by a correct construction.
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossCell {
    pub axiom: Proposition,
    pub m: usize,
    pub predicted: Behavior,
    pub observed: Behavior,
    pub probabilities: Vec<f64>,
    /// max_n |p(n) − multiplicity(n)/d|
    pub multiplicity_deviation: f64,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossReport {
    pub d: Dimension,
    pub tol: f64,
    pub cells: Vec<CrossCell>,
    pub disagreements: usize,
    pub max_multiplicity_deviation: f64,
}

impl CrossReport {
    pub fn all_agree(&self) -> bool {
        self.disagreements == 0
    }
}

fn predict(axiom: &Proposition, m: usize, d: Dimension) -> Result<Behavior> {
    let verdicts = d
        .residues()
        .map(|n| decide(axiom, &Proposition::new(m, n.value(), d)?, d))
        .collect::<Result<Vec<_>>>()?;
    let proven: Vec<usize> = verdicts
        .iter()
        .enumerate()
        .filter(|(_, v)| **v == Decidability::ProvablyTrue)
        .map(|(n, _)| n)
        .collect();
    let refuted = verdicts
        .iter()
        .filter(|v| **v == Decidability::ProvablyFalse)
        .count();
    Ok(if proven.len() == 1 && refuted == d.get() - 1 {
        Behavior::Deterministic { n: proven[0] }
    } else if verdicts.iter().all(|v| *v == Decidability::Undecidable) {
        Behavior::Uniform
    } else {
        Behavior::Mixed
    })
}

/// Classify exact Born probabilities with tolerance `tol`.
pub fn classify(probabilities: &[f64], tol: f64) -> Behavior {
    let uniform = 1.0 / probabilities.len() as f64;
    if let Some(n) = probabilities.iter().position(|&p| p > 1.0 - tol) {
        Behavior::Deterministic { n }
    } else if probabilities.iter().all(|&p| (p - uniform).abs() < tol) {
        Behavior::Uniform
    } else {
        Behavior::Mixed
    }
}

/// Compare, for every axiom and every measurement basis, the behaviour the
/// brute-force decision procedure predicts with the Born distribution.
pub fn cross_validate(d: Dimension, tol: f64) -> Result<CrossReport> {
    let axioms: Vec<Proposition> = all_propositions(d).collect();
    let rows = axioms
        .par_iter()
        .map(|axiom| -> Result<Vec<CrossCell>> {
            let state = prepare(axiom, d)?;
            (0..=d.get())
                .map(|m| {
                    let probabilities = born(&state, m, d)?.probabilities;
                    let multiplicities = outcome_multiplicities(axiom, m, d)?;
                    let multiplicity_deviation = probabilities
                        .iter()
                        .zip(&multiplicities)
                        .map(|(p, &c)| (p - c as f64 / d.get() as f64).abs())
                        .fold(0.0, f64::max);
                    let predicted = predict(axiom, m, d)?;
                    let observed = classify(&probabilities, tol);
                    let expected = if m == axiom.a() {
                        Behavior::Deterministic {
                            n: axiom.b().value(),
                        }
                    } else {
                        Behavior::Uniform
                    };
                    Ok(CrossCell {
                        axiom: *axiom,
                        m,
                        agree: predicted == observed && observed == expected,
                        predicted,
                        observed,
                        probabilities,
                        multiplicity_deviation,
                    })
                })
                .collect()
        })
        .collect::<Result<Vec<_>>>()?;
    let cells: Vec<CrossCell> = rows.into_iter().flatten().collect();
    let disagreements = cells.iter().filter(|c| !c.agree).count();
    let max_multiplicity_deviation = cells
        .iter()
        .map(|c| c.multiplicity_deviation)
        .fold(0.0, f64::max);
    Ok(CrossReport {
        d,
        tol,
        cells,
        disagreements,
        max_multiplicity_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(d: usize) -> Dimension {
        Dimension::new(d).unwrap()
    }

    fn config(d: usize, a: usize, b: usize, m: usize, trials: u64, seed: u64) -> ExperimentConfig {
        let d = dim(d);
        ExperimentConfig::new(d, Proposition::new(a, b, d).unwrap(), m, trials, seed).unwrap()
    }

    fn tally(counts: Vec<u64>) -> Tally {
        let d = dim(counts.len());
        Tally {
            config: ExperimentConfig::new(d, Proposition::new(0, 0, d).unwrap(), 1, counts.iter().sum(), 0)
                .unwrap(),
            counts,
        }
    }

    #[test]
    fn deterministic_runs() {
        assert_eq!(run(&config(3, 0, 0, 0, 100, 42)).unwrap().counts, [100, 0, 0]);
        assert_eq!(run(&config(2, 2, 1, 2, 7, 1)).unwrap().counts, [0, 7]);
    }

    #[test]
    fn random_run_within_five_sigma() {
        let t = run(&config(3, 0, 0, 1, 9000, 42)).unwrap();
        assert_eq!(t.counts.iter().sum::<u64>(), 9000);
        let sigma = (9000.0f64 * (1.0 / 3.0) * (2.0 / 3.0)).sqrt();
        for &c in &t.counts {
            assert!((c as f64 - 3000.0).abs() < 5.0 * sigma, "{:?}", t.counts);
        }
    }

    #[test]
    fn run_is_reproducible_and_schedule_independent() {
        let cfg = config(5, 1, 3, 4, 5000, 99);
        let parallel = run(&cfg).unwrap();
        assert_eq!(parallel, run(&cfg).unwrap());

        // sequential reference using the same per-trial streams
        let dist = born(&prepare(&cfg.axiom, cfg.d).unwrap(), cfg.m, cfg.d).unwrap();
        let mut counts = vec![0u64; 5];
        for i in (0..cfg.trials).rev() {
            counts[sample(&dist, &mut trial_stream(cfg.seed, i))] += 1;
        }
        assert_eq!(parallel.counts, counts);
    }

    #[test]
    fn tally_fixture() {
        let t = run(&config(3, 0, 0, 1, 10_000, 42)).unwrap();
        assert_eq!(t.counts, [3278, 3403, 3319]);
    }

    #[test]
    fn invalid_configs() {
        let d = dim(3);
        let ax = Proposition::new(0, 0, d).unwrap();
        assert_eq!(ExperimentConfig::new(d, ax, 0, 0, 1), Err(Error::NoTrials));
        assert!(ExperimentConfig::new(d, ax, 4, 1, 1).is_err());
        assert!(ExperimentConfig::new(dim(5), ax, 0, 1, 1).is_err());
    }

    #[test]
    fn chi_square_examples() {
        let r = chi_square_uniform(&tally(vec![3000, 3000, 3000])).unwrap();
        assert_eq!(r.chi_square_statistic, 0.0);
        assert_eq!(r.verdict, Verdict::ConsistentWithUniform);
        assert_eq!(r.degrees_of_freedom, 2);
        assert_eq!(r.critical_value, 13.816);

        let r = chi_square_uniform(&tally(vec![9000, 0, 0])).unwrap();
        assert_eq!(r.chi_square_statistic, 18000.0);
        assert_eq!(r.verdict, Verdict::RejectUniform);

        assert_eq!(
            chi_square_uniform(&tally(vec![5, 4, 5])),
            Err(Error::TooFewTrials {
                trials: 14,
                required: 15
            })
        );
    }

    #[test]
    fn seeded_uniform_run_passes_chi_square() {
        let t = run(&config(5, 0, 2, 5, 10_000, 42)).unwrap();
        let r = chi_square_uniform(&t).unwrap();
        assert_eq!(r.verdict, Verdict::ConsistentWithUniform, "{r:?}");
    }

    #[test]
    fn critical_table_bounds() {
        assert_eq!(critical_value(1).unwrap(), 10.828);
        assert_eq!(critical_value(30).unwrap(), 59.703);
        assert!(critical_value(0).is_err());
        assert!(critical_value(31).is_err());
        assert!(CHI_SQUARE_CRITICAL_999.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn classify_shapes() {
        assert_eq!(classify(&[0.0, 1.0, 0.0], 1e-9), Behavior::Deterministic { n: 1 });
        assert_eq!(classify(&[1.0 / 3.0; 3], 1e-9), Behavior::Uniform);
        assert_eq!(classify(&[0.5, 0.5, 0.0], 1e-9), Behavior::Mixed);
    }

    #[test]
    fn cross_validation_agrees() {
        for (d, axioms) in [(2, 6), (3, 12)] {
            let report = cross_validate(dim(d), DEFAULT_CLASSIFY_TOL).unwrap();
            assert_eq!(report.cells.len(), axioms * (d + 1));
            assert!(report.all_agree());
            for cell in report.cells.iter().filter(|c| c.m == c.axiom.a()) {
                assert_eq!(
                    cell.observed,
                    Behavior::Deterministic {
                        n: cell.axiom.b().value()
                    }
                );
            }
        }
    }
}
