//! Domain types: study summaries, datasets, population truths, and reports.
//!
//! All types validate their invariants at construction and are immutable
//! afterwards, so they can be shared freely across threads.

use crate::error::{Error, Result};

/// One study's reported summary: effect size, sample size, and the squared
/// standard error of the effect.
///
/// `var_effect` is the *squared standard error* of the reported effect,
/// `Σ_j (y_ij − y_i)² / {n_i (n_i − 1)}` in raw-data terms — not the sample
/// standard deviation. Datasets that report SDs must be converted first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StudySummary {
    /// Observed effect size, in outcome units.
    pub effect: f64,
    /// Number of subjects in the study.
    pub size: u32,
    /// Squared standard error of the effect, in outcome units².
    pub var_effect: f64,
}

impl StudySummary {
    pub fn new(effect: f64, size: u32, var_effect: f64) -> Self {
        Self {
            effect,
            size,
            var_effect,
        }
    }

    fn check(&self, index: usize) -> Result<()> {
        if !self.effect.is_finite() {
            return Err(Error::NonFiniteEffect { index });
        }
        if self.size < 2 {
            return Err(Error::StudySizeTooSmall {
                index,
                size: self.size,
            });
        }
        if !(self.var_effect > 0.0) || !self.var_effect.is_finite() {
            return Err(Error::NonPositiveVarEffect {
                index,
                value: self.var_effect,
            });
        }
        Ok(())
    }
}

/// An ordered collection of study summaries — the meta-analysis input.
///
/// Construction validates every invariant (k ≥ 2, per-study checks, label
/// consistency); a value of this type is always a valid dataset. Intervals
/// computed from k = 2 are accepted but will be very wide.
#[derive(Debug, Clone, PartialEq)]
pub struct MetaDataset {
    studies: Vec<StudySummary>,
    labels: Option<Vec<String>>,
}

impl MetaDataset {
    /// Validate and build an unlabeled dataset.
    pub fn new(studies: Vec<StudySummary>) -> Result<Self> {
        Self::build(studies, None)
    }

    /// Validate and build a dataset with one label per study.
    pub fn with_labels(studies: Vec<StudySummary>, labels: Vec<String>) -> Result<Self> {
        Self::build(studies, Some(labels))
    }

    fn build(studies: Vec<StudySummary>, labels: Option<Vec<String>>) -> Result<Self> {
        if studies.len() < 2 {
            return Err(Error::TooFewStudies(studies.len()));
        }
        for (index, study) in studies.iter().enumerate() {
            study.check(index)?;
        }
        if let Some(labels) = &labels {
            if labels.len() != studies.len() {
                return Err(Error::LabelCountMismatch {
                    labels: labels.len(),
                    studies: studies.len(),
                });
            }
            for (i, label) in labels.iter().enumerate() {
                if labels[..i].contains(label) {
                    return Err(Error::DuplicateLabel(label.clone()));
                }
            }
        }
        Ok(Self { studies, labels })
    }

    /// Number of studies, k.
    pub fn len(&self) -> usize {
        self.studies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.studies.is_empty()
    }

    pub fn studies(&self) -> &[StudySummary] {
        &self.studies
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Total number of subjects, Σ n_i.
    pub fn total_size(&self) -> u64 {
        self.studies.iter().map(|s| u64::from(s.size)).sum()
    }

    /// True when all studies share one sample size.
    pub fn is_balanced(&self) -> bool {
        let first = self.studies[0].size;
        self.studies.iter().all(|s| s.size == first)
    }
}

/// Grouped individual observations: group i holds y_i1, …, y_in_i.
#[derive(Debug, Clone, PartialEq)]
pub struct RawDataset {
    groups: Vec<Vec<f64>>,
}

impl RawDataset {
    /// Validate and build: at least 2 groups, every group with ≥ 2 finite
    /// observations.
    pub fn new(groups: Vec<Vec<f64>>) -> Result<Self> {
        if groups.len() < 2 {
            return Err(Error::TooFewGroups(groups.len()));
        }
        for (index, group) in groups.iter().enumerate() {
            if group.len() < 2 {
                return Err(Error::GroupTooSmall {
                    index,
                    count: group.len(),
                });
            }
            if group.iter().any(|y| !y.is_finite()) {
                return Err(Error::NonFiniteObservation { index });
            }
        }
        Ok(Self { groups })
    }

    pub fn groups(&self) -> &[Vec<f64>] {
        &self.groups
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Total number of observations.
    pub fn total_size(&self) -> u64 {
        self.groups.iter().map(|g| g.len() as u64).sum()
    }
}

/// True population parameters of the random-effects model: grand mean μ,
/// between-study variance τ², and the common error variance of individual
/// observations σ².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PopulationTruth {
    pub grand_mean: f64,
    pub between_var: f64,
    pub error_var: f64,
}

impl PopulationTruth {
    pub fn new(grand_mean: f64, between_var: f64, error_var: f64) -> Result<Self> {
        if !grand_mean.is_finite() {
            return Err(Error::NonFiniteGrandMean);
        }
        if !between_var.is_finite() || between_var < 0.0 {
            return Err(Error::InvalidBetweenVar(between_var));
        }
        if !error_var.is_finite() || !(error_var > 0.0) {
            return Err(Error::InvalidErrorVar(error_var));
        }
        Ok(Self {
            grand_mean,
            between_var,
            error_var,
        })
    }
}

/// Outcome of the J² fixed-point estimate.
///
/// The algorithm maximizes the summary-data likelihood in (τ², σ²) by fixed
/// point iteration and plugs the estimates into τ̂²/(τ̂² + σ̂²). It uses only
/// the effects and sample sizes — the reported `var_effect` values play no
/// role, which is one of the documented weaknesses of this statistic.
#[derive(Debug, Clone, PartialEq)]
pub struct J2Result {
    /// Final estimate of the grand mean.
    pub mu_hat: f64,
    /// Final estimate of the between-study variance (may be negative).
    pub tau2_hat: f64,
    /// Final estimate of the error variance (may be negative).
    pub sigma2_hat: f64,
    /// Untruncated plug-in ratio τ̂²/(τ̂² + σ̂²); `None` when the ratio is
    /// undefined (0/0 after a degenerate start).
    pub j2_raw: Option<f64>,
    /// Truncated statistic in [0, 1].
    pub j2: f64,
    /// Iterations actually performed.
    pub iterations: u32,
    /// True when all three successive differences fell below the tolerance.
    pub converged: bool,
    /// True when an update produced a non-finite value and the previous
    /// iterate was restored.
    pub aborted_nan: bool,
    /// True when all sample sizes are equal: the likelihood is then not
    /// identifiable in (τ², σ²) and the estimates may not be unique.
    pub balanced_warning: bool,
}

/// Point estimates, intervals, and intermediate diagnostics for one analysis.
#[derive(Debug, Clone, PartialEq)]
pub struct HeterogeneityReport {
    /// Number of studies, k.
    pub k: usize,
    /// Total number of subjects, Σ n_i.
    pub n_total: u64,
    /// Cochran's Q statistic.
    pub q_stat: f64,
    /// Sum of inverse-variance weights, Σ w_i.
    pub weight_sum: f64,
    /// Σ w_i y_i.
    pub weighted_effect_sum: f64,
    /// Inverse-variance weighted mean, Σ w_i y_i / Σ w_i.
    pub ivw_mean: f64,
    /// Size-weighted grand mean, Σ n_i y_i / Σ n_i.
    pub grand_mean: f64,
    /// Between-population mean square.
    pub msb: f64,
    /// Within-population mean square.
    pub msw: f64,
    /// Adjusted sample size n̄.
    pub nbar: f64,
    /// MSB/MSW ratio.
    pub f_ratio: f64,
    /// I² statistic in [0, 1].
    pub i2_point: f64,
    /// IQ statistic in [0, 1).
    pub iq_point: f64,
    /// Confidence interval for the intraclass heterogeneity measure.
    pub iq_ci: Option<(f64, f64)>,
    /// J² fixed-point result, when requested.
    pub j2: Option<J2Result>,
    /// Confidence level used for the interval.
    pub alpha: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn study(effect: f64, size: u32, var_effect: f64) -> StudySummary {
        StudySummary::new(effect, size, var_effect)
    }

    #[test]
    fn accepts_valid_dataset() {
        let ds = MetaDataset::new(vec![study(1.0, 5, 0.5), study(-1.0, 8, 1.2)]).unwrap();
        assert_eq!(ds.len(), 2);
        assert_eq!(ds.total_size(), 13);
        assert!(!ds.is_balanced());
    }

    #[test]
    fn rejects_single_study() {
        let err = MetaDataset::new(vec![study(1.0, 5, 0.5)]).unwrap_err();
        assert_eq!(err, Error::TooFewStudies(1));
    }

    #[test]
    fn rejects_zero_variance_with_index() {
        let err = MetaDataset::new(vec![study(1.0, 5, 0.5), study(2.0, 5, 0.0)]).unwrap_err();
        assert_eq!(
            err,
            Error::NonPositiveVarEffect {
                index: 1,
                value: 0.0
            }
        );
    }

    #[test]
    fn rejects_small_study() {
        let err = MetaDataset::new(vec![study(1.0, 1, 0.5), study(2.0, 5, 1.0)]).unwrap_err();
        assert_eq!(err, Error::StudySizeTooSmall { index: 0, size: 1 });
    }

    #[test]
    fn rejects_non_finite_effect() {
        let err =
            MetaDataset::new(vec![study(f64::NAN, 5, 0.5), study(2.0, 5, 1.0)]).unwrap_err();
        assert_eq!(err, Error::NonFiniteEffect { index: 0 });
    }

    #[test]
    fn rejects_label_mismatch_and_duplicates() {
        let studies = vec![study(1.0, 5, 0.5), study(2.0, 5, 1.0)];
        let err = MetaDataset::with_labels(studies.clone(), vec!["a".into()]).unwrap_err();
        assert_eq!(
            err,
            Error::LabelCountMismatch {
                labels: 1,
                studies: 2
            }
        );
        let err =
            MetaDataset::with_labels(studies, vec!["a".into(), "a".into()]).unwrap_err();
        assert_eq!(err, Error::DuplicateLabel("a".into()));
    }

    #[test]
    fn validation_is_idempotent() {
        let ds = MetaDataset::new(vec![study(1.0, 5, 0.5), study(-1.0, 8, 1.2)]).unwrap();
        let again = MetaDataset::new(ds.studies().to_vec()).unwrap();
        assert_eq!(ds, again);
    }

    #[test]
    fn raw_dataset_checks() {
        assert!(RawDataset::new(vec![vec![1.0, 2.0], vec![3.0, 4.0]]).is_ok());
        assert_eq!(
            RawDataset::new(vec![vec![1.0, 2.0]]).unwrap_err(),
            Error::TooFewGroups(1)
        );
        assert_eq!(
            RawDataset::new(vec![vec![1.0, 2.0], vec![3.0]]).unwrap_err(),
            Error::GroupTooSmall { index: 1, count: 1 }
        );
        assert_eq!(
            RawDataset::new(vec![vec![1.0, 2.0], vec![3.0, f64::INFINITY]]).unwrap_err(),
            Error::NonFiniteObservation { index: 1 }
        );
    }

    #[test]
    fn population_truth_checks() {
        assert!(PopulationTruth::new(0.0, 0.0, 100.0).is_ok());
        assert!(PopulationTruth::new(0.0, -1.0, 100.0).is_err());
        assert!(PopulationTruth::new(0.0, 1.0, 0.0).is_err());
        assert!(PopulationTruth::new(f64::NAN, 1.0, 1.0).is_err());
    }
}
