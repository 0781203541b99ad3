//! Phenotype variants, projection, and micro-averaged precision/recall/F1.
//!
//! Scoring compares the distinct projected tuples per report; TP/FP/FN
//! counts are summed over all reports before the ratios are computed.

use std::collections::HashMap;
use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::corpus::GoldPhenotypeRecord;
use crate::engine::Phenotype;
use crate::lexicon::{BrainRegion, Laterality, Stage};

/// The seven evaluated feature combinations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// Brain region only.
    Br,
    /// Brain region + corresponding side.
    BrCs,
    /// Brain region + coarse stage (acute-like vs chronic).
    BrSsCo,
    /// Brain region + side + coarse stage.
    BrCsSsCo,
    /// Brain region + side + full stage.
    BrCsSs,
    /// Brain region + side + lacunarity.
    BrCsLc,
    /// Brain region + side + coarse stage + lacunarity.
    BrCsSsCoLc,
}

impl Variant {
    pub const ALL: [Variant; 7] = [
        Variant::Br,
        Variant::BrCs,
        Variant::BrSsCo,
        Variant::BrCsSsCo,
        Variant::BrCsSs,
        Variant::BrCsLc,
        Variant::BrCsSsCoLc,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Variant::Br => "BR",
            Variant::BrCs => "BR+CS",
            Variant::BrSsCo => "BR+SS_CO",
            Variant::BrCsSsCo => "BR+CS+SS_CO",
            Variant::BrCsSs => "BR+CS+SS",
            Variant::BrCsLc => "BR+CS+LC",
            Variant::BrCsSsCoLc => "BR+CS+SS_CO+LC",
        }
    }

    pub fn includes_side(&self) -> bool {
        !matches!(self, Variant::Br | Variant::BrSsCo)
    }

    pub fn includes_lacunarity(&self) -> bool {
        matches!(self, Variant::BrCsLc | Variant::BrCsSsCoLc)
    }

    /// How the stage feature participates, if at all.
    pub fn stage_projection(&self) -> Option<StageGranularity> {
        match self {
            Variant::Br | Variant::BrCs | Variant::BrCsLc => None,
            Variant::BrSsCo | Variant::BrCsSsCo | Variant::BrCsSsCoLc => {
                Some(StageGranularity::Coarse)
            }
            Variant::BrCsSs => Some(StageGranularity::Full),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Variant {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

fn variant_key(name: &str) -> String {
    name.chars()
        .filter(|c| c.is_ascii_alphanumeric())
        .collect::<String>()
        .to_ascii_uppercase()
}

impl FromStr for Variant {
    type Err = String;

    /// Accepts the canonical names case-insensitively, with any of `+`,
    /// `-`, `_`, or spaces as separators.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = variant_key(s);
        Variant::ALL
            .iter()
            .copied()
            .find(|v| variant_key(v.name()) == key)
            .ok_or_else(|| {
                let names: Vec<&str> = Variant::ALL.iter().map(|v| v.name()).collect();
                format!(
                    "unknown variant {s:?}; expected one of {}",
                    names.join(", ")
                )
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StageGranularity {
    Full,
    Coarse,
}

/// Coarse stage grouping: acute, subacute, and acute/subacute collapse into
/// one acute-like label; CantDetermine keeps its own label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoarseStage {
    Acute,
    Chronic,
    Unknown,
}

impl CoarseStage {
    pub fn from_stage(stage: Stage) -> CoarseStage {
        match stage {
            Stage::Acute | Stage::Subacute | Stage::AcuteSubacute => CoarseStage::Acute,
            Stage::Chronic => CoarseStage::Chronic,
            Stage::CantDetermine => CoarseStage::Unknown,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProjectedStage {
    Full(Stage),
    Coarse(CoarseStage),
}

/// A phenotype reduced to the features of one variant. Fields absent from
/// the variant are None and so never distinguish tuples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectedPhenotype {
    pub region: BrainRegion,
    pub side: Option<Laterality>,
    pub stage: Option<ProjectedStage>,
    pub lacunar: Option<bool>,
}

/// Drops the features absent from `variant`, coarsening the stage where the
/// variant calls for it.
pub fn project(phenotype: Phenotype, variant: Variant) -> ProjectedPhenotype {
    ProjectedPhenotype {
        region: phenotype.region,
        side: variant.includes_side().then_some(phenotype.side),
        stage: variant
            .stage_projection()
            .map(|granularity| match granularity {
                StageGranularity::Full => ProjectedStage::Full(phenotype.stage),
                StageGranularity::Coarse => {
                    ProjectedStage::Coarse(CoarseStage::from_stage(phenotype.stage))
                }
            }),
        lacunar: variant.includes_lacunarity().then_some(phenotype.lacunar),
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("duplicate report_id {0:?} in gold records")]
    DuplicateGoldId(String),
    #[error("duplicate report_id {0:?} in predicted records")]
    DuplicatePredictedId(String),
    #[error("predicted report_id {0:?} does not appear in gold")]
    UnknownPredictedId(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Aggregation {
    Micro,
}

/// Micro-aggregated counts and metrics for one variant.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalResult {
    pub variant: Variant,
    #[serde(rename = "tp")]
    pub true_positives: u64,
    #[serde(rename = "fp")]
    pub false_positives: u64,
    #[serde(rename = "fn")]
    pub false_negatives: u64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub aggregation: Aggregation,
}

impl EvalResult {
    fn from_counts(variant: Variant, tp: u64, fp: u64, fn_count: u64) -> Self {
        let ratio = |num: u64, den: u64| {
            if den == 0 {
                0.0
            } else {
                num as f64 / den as f64
            }
        };
        let precision = ratio(tp, tp + fp);
        let recall = ratio(tp, tp + fn_count);
        let f1 = if precision + recall > 0.0 {
            2.0 * precision * recall / (precision + recall)
        } else {
            0.0
        };
        EvalResult {
            variant,
            true_positives: tp,
            false_positives: fp,
            false_negatives: fn_count,
            precision,
            recall,
            f1,
            aggregation: Aggregation::Micro,
        }
    }

    /// True when a metric denominator was zero and the corresponding ratio
    /// was defined to 0.
    pub fn has_zero_denominator(&self) -> bool {
        self.true_positives + self.false_positives == 0
            || self.true_positives + self.false_negatives == 0
    }
}

/// Per-report contribution to the counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportCounts {
    pub report_id: String,
    #[serde(rename = "tp")]
    pub true_positives: u64,
    #[serde(rename = "fp")]
    pub false_positives: u64,
    #[serde(rename = "fn")]
    pub false_negatives: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EvalOptions {
    /// Drop tuples whose stage is CantDetermine from both sides before
    /// projection, for stage-bearing variants only.
    pub exclude_unknown_stage: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub result: EvalResult,
    pub per_report: Vec<ReportCounts>,
}

fn projected_set(
    phenotypes: &BTreeSet<Phenotype>,
    variant: Variant,
    options: EvalOptions,
) -> BTreeSet<ProjectedPhenotype> {
    let drop_unknown = options.exclude_unknown_stage && variant.stage_projection().is_some();
    phenotypes
        .iter()
        .filter(|p| !(drop_unknown && p.stage == Stage::CantDetermine))
        .map(|&p| project(p, variant))
        .collect()
}

/// Scores predictions against gold for one variant, keeping the per-report
/// breakdown. Gold reports with no predicted record count as predicted-empty.
pub fn evaluate_detailed(
    gold: &[GoldPhenotypeRecord],
    predicted: &[(String, BTreeSet<Phenotype>)],
    variant: Variant,
    options: EvalOptions,
) -> Result<EvalReport, EvalError> {
    let mut gold_ids: HashSet<&str> = HashSet::new();
    for record in gold {
        if !gold_ids.insert(&record.report_id) {
            return Err(EvalError::DuplicateGoldId(record.report_id.clone()));
        }
    }
    let mut predicted_by_id: HashMap<&str, &BTreeSet<Phenotype>> = HashMap::new();
    for (report_id, phenotypes) in predicted {
        if predicted_by_id.insert(report_id, phenotypes).is_some() {
            return Err(EvalError::DuplicatePredictedId(report_id.clone()));
        }
        if !gold_ids.contains(report_id.as_str()) {
            return Err(EvalError::UnknownPredictedId(report_id.clone()));
        }
    }

    let empty = BTreeSet::new();
    let mut tp = 0;
    let mut fp = 0;
    let mut fn_count = 0;
    let mut per_report = Vec::with_capacity(gold.len());
    for record in gold {
        let predicted_set_raw = predicted_by_id
            .get(record.report_id.as_str())
            .copied()
            .unwrap_or(&empty);
        let gold_proj = projected_set(&record.phenotypes, variant, options);
        let pred_proj = projected_set(predicted_set_raw, variant, options);
        let report_tp = gold_proj.intersection(&pred_proj).count() as u64;
        let report_fp = pred_proj.difference(&gold_proj).count() as u64;
        let report_fn = gold_proj.difference(&pred_proj).count() as u64;
        tp += report_tp;
        fp += report_fp;
        fn_count += report_fn;
        per_report.push(ReportCounts {
            report_id: record.report_id.clone(),
            true_positives: report_tp,
            false_positives: report_fp,
            false_negatives: report_fn,
        });
    }

    Ok(EvalReport {
        result: EvalResult::from_counts(variant, tp, fp, fn_count),
        per_report,
    })
}

/// [`evaluate_detailed`] with default options, without the breakdown.
pub fn evaluate(
    gold: &[GoldPhenotypeRecord],
    predicted: &[(String, BTreeSet<Phenotype>)],
    variant: Variant,
) -> Result<EvalResult, EvalError> {
    evaluate_detailed(gold, predicted, variant, EvalOptions::default()).map(|r| r.result)
}
