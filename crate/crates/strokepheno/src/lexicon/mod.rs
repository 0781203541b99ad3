//! Keyword tables and matching primitives.
//!
//! All matching is case-insensitive, whitespace-normalized, and word-boundary
//! exact: a phrase matches only where it is not embedded in a longer word, so
//! "acute" never fires inside "subacute". Inflected forms are therefore
//! listed explicitly in the tables rather than stemmed at match time.

mod config;
mod defaults;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frame::Modality;

/// The closed set of brain regions a phenotype can name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BrainRegion {
    CerebralHemisphere,
    FrontalLobe,
    OccipitalLobe,
    ParietalLobe,
    TemporalLobe,
    Cerebellum,
    Brainstem,
    BasalGanglia,
    Thalamus,
    CerebralPeduncle,
    InternalExternalCapsule,
    CoronaRadiata,
    Insula,
    Watershed,
}

impl BrainRegion {
    pub const ALL: [BrainRegion; 14] = [
        BrainRegion::CerebralHemisphere,
        BrainRegion::FrontalLobe,
        BrainRegion::OccipitalLobe,
        BrainRegion::ParietalLobe,
        BrainRegion::TemporalLobe,
        BrainRegion::Cerebellum,
        BrainRegion::Brainstem,
        BrainRegion::BasalGanglia,
        BrainRegion::Thalamus,
        BrainRegion::CerebralPeduncle,
        BrainRegion::InternalExternalCapsule,
        BrainRegion::CoronaRadiata,
        BrainRegion::Insula,
        BrainRegion::Watershed,
    ];

    /// Stable identifier used in files and config sections.
    pub fn label(&self) -> &'static str {
        match self {
            BrainRegion::CerebralHemisphere => "cerebral_hemisphere",
            BrainRegion::FrontalLobe => "frontal_lobe",
            BrainRegion::OccipitalLobe => "occipital_lobe",
            BrainRegion::ParietalLobe => "parietal_lobe",
            BrainRegion::TemporalLobe => "temporal_lobe",
            BrainRegion::Cerebellum => "cerebellum",
            BrainRegion::Brainstem => "brainstem",
            BrainRegion::BasalGanglia => "basal_ganglia",
            BrainRegion::Thalamus => "thalamus",
            BrainRegion::CerebralPeduncle => "cerebral_peduncle",
            BrainRegion::InternalExternalCapsule => "internal_external_capsule",
            BrainRegion::CoronaRadiata => "corona_radiata",
            BrainRegion::Insula => "insula",
            BrainRegion::Watershed => "watershed",
        }
    }

    /// Reader-facing name, used in diagnostics.
    pub fn describe(&self) -> &'static str {
        match self {
            BrainRegion::CerebralHemisphere => "cerebral hemisphere",
            BrainRegion::FrontalLobe => "frontal lobe",
            BrainRegion::OccipitalLobe => "occipital lobe",
            BrainRegion::ParietalLobe => "parietal lobe",
            BrainRegion::TemporalLobe => "temporal lobe",
            BrainRegion::Cerebellum => "cerebellum",
            BrainRegion::Brainstem => "brainstem",
            BrainRegion::BasalGanglia => "basal ganglia",
            BrainRegion::Thalamus => "thalamus",
            BrainRegion::CerebralPeduncle => "cerebral peduncle",
            BrainRegion::InternalExternalCapsule => "internal/external capsule",
            BrainRegion::CoronaRadiata => "corona radiata",
            BrainRegion::Insula => "insula",
            BrainRegion::Watershed => "watershed",
        }
    }
}

impl fmt::Display for BrainRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for BrainRegion {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BrainRegion::ALL
            .iter()
            .copied()
            .find(|r| r.label() == s)
            .ok_or_else(|| format!("unknown brain region {s:?}"))
    }
}

/// Side of the brain. Unspecified is a value, not an absence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Laterality {
    Left,
    Right,
    Bilateral,
    Unspecified,
}

impl Laterality {
    pub const ALL: [Laterality; 4] = [
        Laterality::Left,
        Laterality::Right,
        Laterality::Bilateral,
        Laterality::Unspecified,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            Laterality::Left => "left",
            Laterality::Right => "right",
            Laterality::Bilateral => "bilateral",
            Laterality::Unspecified => "unspecified",
        }
    }
}

impl fmt::Display for Laterality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Laterality {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Laterality::ALL
            .iter()
            .copied()
            .find(|l| l.label() == s)
            .ok_or_else(|| format!("unknown laterality {s:?}"))
    }
}

/// Stroke stage. CantDetermine is assigned when neither a stage keyword nor
/// a domain constraint settles it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Acute,
    Subacute,
    AcuteSubacute,
    Chronic,
    CantDetermine,
}

impl Stage {
    pub const ALL: [Stage; 5] = [
        Stage::Acute,
        Stage::Subacute,
        Stage::AcuteSubacute,
        Stage::Chronic,
        Stage::CantDetermine,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            Stage::Acute => "acute",
            Stage::Subacute => "subacute",
            Stage::AcuteSubacute => "acute_subacute",
            Stage::Chronic => "chronic",
            Stage::CantDetermine => "cant_determine",
        }
    }

    pub fn describe(&self) -> &'static str {
        match self {
            Stage::Acute => "acute",
            Stage::Subacute => "subacute",
            Stage::AcuteSubacute => "acute/subacute",
            Stage::Chronic => "chronic",
            Stage::CantDetermine => "can't determine",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Stage {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Stage::ALL
            .iter()
            .copied()
            .find(|st| st.label() == s)
            .ok_or_else(|| format!("unknown stage {s:?}"))
    }
}

/// Report-level observations consulted by the stage domain constraints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstraintCue {
    HypodensityCorticalSubcortical,
    HyperdenseMca,
    HyperdensityBasilar,
    LossGrayWhiteDifferentiation,
    SulcalEffacement,
    ProminenceVentriclesSulci,
    Atrophy,
    GliosisEncephalomalacia,
    RestrictedOrSlowDiffusion,
    LossFlowVoidMcaBasilar,
    FacilitatedDiffusion,
    DilationVentricles,
}

impl ConstraintCue {
    pub const ALL: [ConstraintCue; 12] = [
        ConstraintCue::HypodensityCorticalSubcortical,
        ConstraintCue::HyperdenseMca,
        ConstraintCue::HyperdensityBasilar,
        ConstraintCue::LossGrayWhiteDifferentiation,
        ConstraintCue::SulcalEffacement,
        ConstraintCue::ProminenceVentriclesSulci,
        ConstraintCue::Atrophy,
        ConstraintCue::GliosisEncephalomalacia,
        ConstraintCue::RestrictedOrSlowDiffusion,
        ConstraintCue::LossFlowVoidMcaBasilar,
        ConstraintCue::FacilitatedDiffusion,
        ConstraintCue::DilationVentricles,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            ConstraintCue::HypodensityCorticalSubcortical => "hypodensity_cortical_subcortical",
            ConstraintCue::HyperdenseMca => "hyperdense_mca",
            ConstraintCue::HyperdensityBasilar => "hyperdensity_basilar",
            ConstraintCue::LossGrayWhiteDifferentiation => "loss_gray_white_differentiation",
            ConstraintCue::SulcalEffacement => "sulcal_effacement",
            ConstraintCue::ProminenceVentriclesSulci => "prominence_ventricles_sulci",
            ConstraintCue::Atrophy => "atrophy",
            ConstraintCue::GliosisEncephalomalacia => "gliosis_encephalomalacia",
            ConstraintCue::RestrictedOrSlowDiffusion => "restricted_or_slow_diffusion",
            ConstraintCue::LossFlowVoidMcaBasilar => "loss_flow_void_mca_basilar",
            ConstraintCue::FacilitatedDiffusion => "facilitated_diffusion",
            ConstraintCue::DilationVentricles => "dilation_ventricles",
        }
    }
}

impl fmt::Display for ConstraintCue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ConstraintCue {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ConstraintCue::ALL
            .iter()
            .copied()
            .find(|c| c.label() == s)
            .ok_or_else(|| format!("unknown constraint cue {s:?}"))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LexiconError {
    #[error("lexicon config line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("missing mandatory lexicon table {0:?}")]
    MissingTable(String),
    #[error("lexicon table {0:?} must not be empty")]
    EmptyTable(String),
    #[error("lexicon table {0:?} contains an empty phrase")]
    EmptyPhrase(String),
    #[error("lexicon table {table:?} is missing required phrase {phrase:?}")]
    MissingRequiredPhrase { table: String, phrase: String },
}

/// The immutable keyword tables driving every matcher. All phrases are
/// stored lowercase with collapsed whitespace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lexicon {
    pub is_finding_ct: Vec<String>,
    pub is_finding_mri: Vec<String>,
    pub stage_acute_subacute: Vec<String>,
    pub stage_subacute: Vec<String>,
    pub stage_acute: Vec<String>,
    pub stage_chronic: Vec<String>,
    pub lacunar: Vec<String>,
    pub laterality_left: Vec<String>,
    pub laterality_right: Vec<String>,
    pub laterality_bilateral: Vec<String>,
    pub laterality_bilateral_anatomy: Vec<String>,
    pub region_keywords: BTreeMap<BrainRegion, Vec<String>>,
    pub compound_regions: BTreeMap<String, BTreeSet<BrainRegion>>,
    pub territory_map: BTreeMap<String, BTreeSet<BrainRegion>>,
    pub cue_phrases: BTreeMap<ConstraintCue, Vec<String>>,
}

impl Default for Lexicon {
    fn default() -> Self {
        Lexicon::builtin()
    }
}

impl Lexicon {
    /// The compiled-in tables.
    pub fn builtin() -> Self {
        let to_vec = |phrases: &[&str]| phrases.iter().map(|p| normalize(p)).collect::<Vec<_>>();
        let lexicon = Lexicon {
            is_finding_ct: defaults::ct_findings(),
            is_finding_mri: defaults::mri_findings(),
            stage_acute_subacute: to_vec(defaults::STAGE_ACUTE_SUBACUTE),
            stage_subacute: to_vec(defaults::STAGE_SUBACUTE),
            stage_acute: to_vec(defaults::STAGE_ACUTE),
            stage_chronic: to_vec(defaults::STAGE_CHRONIC),
            lacunar: to_vec(defaults::LACUNAR),
            laterality_left: to_vec(defaults::LATERALITY_LEFT),
            laterality_right: to_vec(defaults::LATERALITY_RIGHT),
            laterality_bilateral: to_vec(defaults::LATERALITY_BILATERAL),
            laterality_bilateral_anatomy: to_vec(defaults::LATERALITY_BILATERAL_ANATOMY),
            region_keywords: BrainRegion::ALL
                .iter()
                .map(|&r| (r, to_vec(defaults::region_keywords(r))))
                .collect(),
            compound_regions: defaults::COMPOUND_LOBES
                .iter()
                .map(|(word, regions)| (normalize(word), regions.iter().copied().collect()))
                .collect(),
            territory_map: defaults::TERRITORIES
                .iter()
                .map(|(phrase, regions)| (normalize(phrase), regions.iter().copied().collect()))
                .collect(),
            cue_phrases: ConstraintCue::ALL
                .iter()
                .map(|&c| (c, to_vec(defaults::cue_phrases(c))))
                .collect(),
        };
        debug_assert!(lexicon.validate().is_ok());
        lexicon
    }

    /// Parses a standalone config; every mandatory table must be present.
    pub fn from_config_str(input: &str) -> Result<Self, LexiconError> {
        config::apply(None, input)
    }

    /// Applies a partial config on top of this lexicon; each section present
    /// in the config replaces that table, everything else is kept.
    pub fn with_overrides(&self, input: &str) -> Result<Self, LexiconError> {
        config::apply(Some(self), input)
    }

    /// Renders the full lexicon in the config format; parsing the result
    /// reproduces this lexicon exactly.
    pub fn to_config_string(&self) -> String {
        config::dump(self)
    }

    /// Checks table presence, non-emptiness, lowercase storage, and the
    /// required finding phrases.
    pub fn validate(&self) -> Result<(), LexiconError> {
        let non_empty = |table: &str, phrases: &[String]| -> Result<(), LexiconError> {
            if phrases.is_empty() {
                return Err(LexiconError::EmptyTable(table.to_string()));
            }
            if phrases.iter().any(|p| p.is_empty()) {
                return Err(LexiconError::EmptyPhrase(table.to_string()));
            }
            Ok(())
        };
        non_empty(config::IS_FINDING_CT, &self.is_finding_ct)?;
        non_empty(config::IS_FINDING_MRI, &self.is_finding_mri)?;
        non_empty(config::STAGE_ACUTE_SUBACUTE, &self.stage_acute_subacute)?;
        non_empty(config::STAGE_SUBACUTE, &self.stage_subacute)?;
        non_empty(config::STAGE_ACUTE, &self.stage_acute)?;
        non_empty(config::STAGE_CHRONIC, &self.stage_chronic)?;
        non_empty(config::LACUNAR, &self.lacunar)?;
        non_empty(config::LATERALITY_LEFT, &self.laterality_left)?;
        non_empty(config::LATERALITY_RIGHT, &self.laterality_right)?;
        non_empty(config::LATERALITY_BILATERAL, &self.laterality_bilateral)?;
        non_empty(
            config::LATERALITY_BILATERAL_ANATOMY,
            &self.laterality_bilateral_anatomy,
        )?;
        for region in BrainRegion::ALL {
            let table = format!("region:{}", region.label());
            match self.region_keywords.get(&region) {
                None => return Err(LexiconError::MissingTable(table)),
                Some(phrases) => non_empty(&table, phrases)?,
            }
        }
        for cue in ConstraintCue::ALL {
            let table = format!("cue:{}", cue.label());
            match self.cue_phrases.get(&cue) {
                None => return Err(LexiconError::MissingTable(table)),
                Some(phrases) => non_empty(&table, phrases)?,
            }
        }
        for (word, regions) in &self.compound_regions {
            if word.is_empty() {
                return Err(LexiconError::EmptyPhrase("compound".to_string()));
            }
            if regions.is_empty() {
                return Err(LexiconError::EmptyTable(format!("compound:{word}")));
            }
        }
        for phrase in self.territory_map.keys() {
            if phrase.is_empty() {
                return Err(LexiconError::EmptyPhrase("territory".to_string()));
            }
        }
        for (table, phrase) in defaults::REQUIRED_CT_FINDINGS
            .iter()
            .map(|p| (config::IS_FINDING_CT, *p))
            .chain(
                defaults::REQUIRED_MRI_FINDINGS
                    .iter()
                    .map(|p| (config::IS_FINDING_MRI, *p)),
            )
        {
            let list = if table == config::IS_FINDING_CT {
                &self.is_finding_ct
            } else {
                &self.is_finding_mri
            };
            if !list.iter().any(|p| p == phrase) {
                return Err(LexiconError::MissingRequiredPhrase {
                    table: table.to_string(),
                    phrase: phrase.to_string(),
                });
            }
        }
        Ok(())
    }

    /// True when any modality-appropriate finding phrase occurs in `text`.
    pub fn match_is_finding(&self, text: &str, modality: Modality) -> bool {
        let hay = normalize(text);
        let list = match modality {
            Modality::CT => &self.is_finding_ct,
            Modality::MRI => &self.is_finding_mri,
        };
        any_phrase(&hay, list)
    }

    /// Every region supported by `ground_text`: direct keyword hits, fused
    /// two-lobe adjectives, and vascular-territory mentions.
    pub fn match_region(&self, ground_text: &str) -> BTreeSet<BrainRegion> {
        let hay = normalize(ground_text);
        let mut out = BTreeSet::new();
        for (&region, phrases) in &self.region_keywords {
            if any_phrase(&hay, phrases) {
                out.insert(region);
            }
        }
        for (word, regions) in &self.compound_regions {
            if contains_phrase_normalized(&hay, word) {
                out.extend(regions.iter().copied());
            }
        }
        for (phrase, regions) in &self.territory_map {
            if contains_phrase_normalized(&hay, phrase) {
                out.extend(regions.iter().copied());
            }
        }
        out
    }

    /// Side named in a Ground span. Both sides together resolve to Bilateral,
    /// as do the plural anatomy terms (thalami, capsules).
    pub fn match_laterality(&self, ground_text: &str) -> Laterality {
        let hay = normalize(ground_text);
        let left = any_phrase(&hay, &self.laterality_left);
        let right = any_phrase(&hay, &self.laterality_right);
        let bilateral = any_phrase(&hay, &self.laterality_bilateral)
            || any_phrase(&hay, &self.laterality_bilateral_anatomy)
            || (left && right);
        if bilateral {
            Laterality::Bilateral
        } else if left {
            Laterality::Left
        } else if right {
            Laterality::Right
        } else {
            Laterality::Unspecified
        }
    }

    /// Stage term present in `text`, if any. Combined acute/subacute patterns
    /// win over subacute, which wins over acute, which wins over chronic;
    /// the order keeps "acute" from firing inside combined mentions.
    pub fn match_stage_keyword(&self, text: &str) -> Option<Stage> {
        let hay = normalize(text);
        if any_phrase(&hay, &self.stage_acute_subacute) {
            Some(Stage::AcuteSubacute)
        } else if any_phrase(&hay, &self.stage_subacute) {
            Some(Stage::Subacute)
        } else if any_phrase(&hay, &self.stage_acute) {
            Some(Stage::Acute)
        } else if any_phrase(&hay, &self.stage_chronic) {
            Some(Stage::Chronic)
        } else {
            None
        }
    }

    /// True when a lacunar-specific term occurs in `text`.
    pub fn match_lacunarity(&self, text: &str) -> bool {
        any_phrase(&normalize(text), &self.lacunar)
    }

    /// True when any phrase for `cue` occurs in `text`.
    pub fn match_cue(&self, text: &str, cue: ConstraintCue) -> bool {
        self.cue_phrases
            .get(&cue)
            .is_some_and(|phrases| any_phrase(&normalize(text), phrases))
    }
}

/// Lowercases and collapses whitespace runs to single spaces.
pub fn normalize(text: &str) -> String {
    text.to_lowercase()
        .split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

/// Word-boundary phrase containment over raw text. Both arguments are
/// normalized before matching.
pub fn contains_phrase(text: &str, phrase: &str) -> bool {
    contains_phrase_normalized(&normalize(text), &normalize(phrase))
}

fn contains_phrase_normalized(hay: &str, needle: &str) -> bool {
    if needle.is_empty() {
        return false;
    }
    // Boundary checks apply only where the phrase edge is itself a word char;
    // punctuation-edged phrases (e.g. "acute/subacute") match positionally.
    let first_is_word = needle.chars().next().is_some_and(is_word_char);
    let last_is_word = needle.chars().next_back().is_some_and(is_word_char);
    for (idx, _) in hay.match_indices(needle) {
        let before_ok = !first_is_word
            || hay[..idx]
                .chars()
                .next_back()
                .is_none_or(|c| !is_word_char(c));
        let after_ok = !last_is_word
            || hay[idx + needle.len()..]
                .chars()
                .next()
                .is_none_or(|c| !is_word_char(c));
        if before_ok && after_ok {
            return true;
        }
    }
    false
}

fn any_phrase(normalized_hay: &str, phrases: &[String]) -> bool {
    phrases
        .iter()
        .any(|p| contains_phrase_normalized(normalized_hay, p))
}
