//! Frame chaining and the five-step phenotype classification.
//!
//! Classification runs per report: frames of each sentence are chained where
//! one frame's Ground is the next frame's Figure, chains are filtered to
//! stroke-related ones, their Grounds are resolved to (region, side) pairs,
//! and stage plus lacunarity are decided per pair from the whole report's
//! evidence.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::frame::{ElementKind, Modality, ReportDocument, Span, SpatialFrame};
use crate::lexicon::{contains_phrase, BrainRegion, ConstraintCue, Laterality, Lexicon, Stage};

/// One classified (side, region, stage, lacunarity) combination. Field order
/// doubles as the canonical sort order for serialized output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Phenotype {
    pub side: Laterality,
    pub region: BrainRegion,
    pub stage: Stage,
    pub lacunar: bool,
}

impl Phenotype {
    pub fn new(side: Laterality, region: BrainRegion, stage: Stage, lacunar: bool) -> Self {
        Phenotype {
            side,
            region,
            stage,
            lacunar,
        }
    }
}

impl fmt::Display for Phenotype {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}, {}, {}, {}",
            self.side,
            self.region.describe(),
            self.stage.describe(),
            if self.lacunar {
                "lacunar"
            } else {
                "not lacunar"
            }
        )
    }
}

/// A maximal run of consecutive frames from one sentence joined by the
/// shared-element condition. A single frame is a chain of length one.
#[derive(Debug, Clone)]
pub struct FrameChain<'a> {
    pub frames: Vec<&'a SpatialFrame>,
}

impl<'a> FrameChain<'a> {
    /// Figures of the first frame; for a chained description like
    /// "infarction in the lateral aspect of right cerebellum" the first
    /// frame holds the actual finding.
    pub fn effective_figures(&self) -> Vec<&'a Span> {
        self.frames
            .first()
            .map(|f| f.elements_of(ElementKind::Figure))
            .unwrap_or_default()
    }

    /// Diagnoses of the first frame.
    pub fn effective_diagnoses(&self) -> Vec<&'a Span> {
        self.frames
            .first()
            .map(|f| f.elements_of(ElementKind::Diagnosis))
            .unwrap_or_default()
    }

    /// Grounds of the last frame, which carry the resolved location.
    pub fn effective_grounds(&self) -> Vec<&'a Span> {
        self.frames
            .last()
            .map(|f| f.elements_of(ElementKind::Ground))
            .unwrap_or_default()
    }
}

/// Last alphanumeric token, lowercased; the comparison point for span
/// identity when character ranges were clipped differently.
fn head_token(text: &str) -> Option<String> {
    text.split(|c: char| !c.is_alphanumeric())
        .rfind(|t| !t.is_empty())
        .map(|t| t.to_lowercase())
}

fn links(prev: &SpatialFrame, next: &SpatialFrame) -> bool {
    for ground in prev.elements_of(ElementKind::Ground) {
        for figure in next.elements_of(ElementKind::Figure) {
            if ground.overlaps(figure) {
                return true;
            }
            if let (Some(g), Some(f)) = (head_token(&ground.text), head_token(&figure.text)) {
                if g == f {
                    return true;
                }
            }
        }
    }
    false
}

/// Greedy left-to-right chaining: frame i+1 extends the current chain iff
/// some Ground of frame i overlaps (or shares a head token with) some Figure
/// of frame i+1. Every frame lands in exactly one chain, in input order.
pub fn chain_frames(frames: &[SpatialFrame]) -> Vec<FrameChain<'_>> {
    let mut chains: Vec<FrameChain<'_>> = Vec::new();
    for frame in frames {
        if let Some(current) = chains.last_mut() {
            if links(current.frames.last().unwrap(), frame) {
                current.frames.push(frame);
                continue;
            }
        }
        chains.push(FrameChain {
            frames: vec![frame],
        });
    }
    chains
}

/// Assigns a side to each Ground of one coordination context. A Ground with
/// no laterality term of its own inherits from the nearest preceding
/// lateralized Ground ("left frontal and parietal lobes" puts both on the
/// left); leading Grounds with no lateralized sibling stay Unspecified.
pub fn propagate_laterality<'a>(
    grounds: &[&'a Span],
    lexicon: &Lexicon,
) -> Vec<(&'a Span, Laterality)> {
    let mut out = Vec::with_capacity(grounds.len());
    let mut inherited: Option<Laterality> = None;
    for &ground in grounds {
        let own = lexicon.match_laterality(&ground.text);
        let side = if own == Laterality::Unspecified {
            inherited.unwrap_or(Laterality::Unspecified)
        } else {
            inherited = Some(own);
            own
        };
        out.push((ground, side));
    }
    out
}

/// Which constraint cues hold anywhere in a report, computed over the
/// Figure, Ground, and Diagnosis texts of every frame, stroke-related or
/// not: mass-effect observations like sulcal effacement usually sit in
/// their own frame.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CueFlags {
    active: BTreeSet<ConstraintCue>,
}

impl CueFlags {
    pub fn from_report(report: &ReportDocument, lexicon: &Lexicon) -> Self {
        let mut flags = CueFlags::default();
        for sentence in &report.sentences {
            for frame in &sentence.frames {
                for element in &frame.elements {
                    if !matches!(
                        element.kind,
                        ElementKind::Figure | ElementKind::Ground | ElementKind::Diagnosis
                    ) {
                        continue;
                    }
                    for cue in ConstraintCue::ALL {
                        if !flags.active.contains(&cue)
                            && lexicon.match_cue(&element.span.text, cue)
                        {
                            flags.active.insert(cue);
                        }
                    }
                }
            }
        }
        flags
    }

    pub fn insert(&mut self, cue: ConstraintCue) {
        self.active.insert(cue);
    }

    pub fn contains(&self, cue: ConstraintCue) -> bool {
        self.active.contains(&cue)
    }
}

/// Everything known about one (region, side) pair across a report: the
/// finding and diagnosis texts that localized to it, the Ground texts that
/// named it, and the report-wide cue flags.
#[derive(Debug, Clone)]
pub struct RegionSideEvidence {
    pub region: BrainRegion,
    pub side: Laterality,
    pub finding_texts: Vec<String>,
    pub diagnosis_texts: Vec<String>,
    pub ground_texts: Vec<String>,
    pub report_cues: CueFlags,
}

/// Regions counted as cortical/subcortical by the domain constraints.
const CORTICAL_SUBCORTICAL_REGIONS: [BrainRegion; 6] = [
    BrainRegion::CerebralHemisphere,
    BrainRegion::FrontalLobe,
    BrainRegion::OccipitalLobe,
    BrainRegion::ParietalLobe,
    BrainRegion::TemporalLobe,
    BrainRegion::Insula,
];

const CORTICAL_TEXT_TERMS: [&str; 3] = ["cortex", "cortical", "subcortical"];

impl RegionSideEvidence {
    pub fn new(side: Laterality, region: BrainRegion, report_cues: CueFlags) -> Self {
        RegionSideEvidence {
            region,
            side,
            finding_texts: Vec::new(),
            diagnosis_texts: Vec::new(),
            ground_texts: Vec::new(),
            report_cues,
        }
    }

    fn texts(&self) -> impl Iterator<Item = &str> {
        self.finding_texts
            .iter()
            .chain(&self.diagnosis_texts)
            .map(String::as_str)
    }

    fn is_cortical_subcortical(&self) -> bool {
        CORTICAL_SUBCORTICAL_REGIONS.contains(&self.region)
            || self.ground_texts.iter().any(|ground| {
                CORTICAL_TEXT_TERMS
                    .iter()
                    .any(|term| contains_phrase(ground, term))
            })
    }

    fn cue_in_texts(&self, cue: ConstraintCue, lexicon: &Lexicon) -> bool {
        self.texts().any(|t| lexicon.match_cue(t, cue))
    }
}

fn stage_rank(stage: Stage) -> u8 {
    match stage {
        Stage::AcuteSubacute => 0,
        Stage::Subacute => 1,
        Stage::Acute => 2,
        Stage::Chronic => 3,
        Stage::CantDetermine => 4,
    }
}

/// Stage for one (region, side) pair. Direct stage keywords in the pair's
/// finding/diagnosis texts win, strongest first (acute/subacute, subacute,
/// acute, chronic); otherwise the modality's domain constraints are applied;
/// otherwise CantDetermine.
pub fn infer_stage(evidence: &RegionSideEvidence, modality: Modality, lexicon: &Lexicon) -> Stage {
    let direct = evidence
        .texts()
        .filter_map(|t| lexicon.match_stage_keyword(t))
        .min_by_key(|&s| stage_rank(s));
    if let Some(stage) = direct {
        return stage;
    }

    let cues = &evidence.report_cues;
    let cortical = evidence.is_cortical_subcortical();
    match modality {
        Modality::CT => {
            let local_hypodensity = cortical
                && evidence.cue_in_texts(ConstraintCue::HypodensityCorticalSubcortical, lexicon);
            if local_hypodensity
                && (cues.contains(ConstraintCue::HyperdenseMca)
                    || cues.contains(ConstraintCue::HyperdensityBasilar)
                    || cues.contains(ConstraintCue::LossGrayWhiteDifferentiation)
                    || cues.contains(ConstraintCue::SulcalEffacement))
            {
                return Stage::Acute;
            }
            if (local_hypodensity
                && (cues.contains(ConstraintCue::ProminenceVentriclesSulci)
                    || cues.contains(ConstraintCue::Atrophy)))
                || cues.contains(ConstraintCue::GliosisEncephalomalacia)
            {
                return Stage::Chronic;
            }
        }
        Modality::MRI => {
            let local_diffusion = cortical
                && evidence.cue_in_texts(ConstraintCue::RestrictedOrSlowDiffusion, lexicon);
            if local_diffusion || cues.contains(ConstraintCue::LossFlowVoidMcaBasilar) {
                return Stage::Acute;
            }
            let local_facilitated =
                cortical && evidence.cue_in_texts(ConstraintCue::FacilitatedDiffusion, lexicon);
            if local_facilitated
                || cues.contains(ConstraintCue::GliosisEncephalomalacia)
                || cues.contains(ConstraintCue::DilationVentricles)
            {
                return Stage::Chronic;
            }
        }
    }
    Stage::CantDetermine
}

/// Classifies one report into its set of phenotypes. Pure in (report,
/// lexicon); reports with no stroke-related chain return the empty set.
pub fn classify_report(report: &ReportDocument, lexicon: &Lexicon) -> BTreeSet<Phenotype> {
    let cues = CueFlags::from_report(report, lexicon);
    let mut evidence: BTreeMap<(BrainRegion, Laterality), RegionSideEvidence> = BTreeMap::new();

    for sentence in &report.sentences {
        for chain in chain_frames(&sentence.frames) {
            let figures = chain.effective_figures();
            let diagnoses = chain.effective_diagnoses();
            let stroke_related = figures.iter().chain(diagnoses.iter()).any(|span| {
                lexicon.match_is_finding(&span.text, report.modality)
                    || lexicon.match_stage_keyword(&span.text).is_some()
                    || lexicon.match_lacunarity(&span.text)
            });
            if !stroke_related {
                continue;
            }
            for (ground, side) in propagate_laterality(&chain.effective_grounds(), lexicon) {
                for region in lexicon.match_region(&ground.text) {
                    let entry = evidence
                        .entry((region, side))
                        .or_insert_with(|| RegionSideEvidence::new(side, region, cues.clone()));
                    entry
                        .finding_texts
                        .extend(figures.iter().map(|s| s.text.clone()));
                    entry
                        .diagnosis_texts
                        .extend(diagnoses.iter().map(|s| s.text.clone()));
                    entry.ground_texts.push(ground.text.clone());
                }
            }
        }
    }

    evidence
        .values()
        .map(|e| Phenotype {
            side: e.side,
            region: e.region,
            stage: infer_stage(e, report.modality, lexicon),
            lacunar: e.texts().any(|t| lexicon.match_lacunarity(t)),
        })
        .collect()
}
