//! Seeded random corpus generator: sentences are composed from lexicon
//! phrases into templated gold-style frames with exact character spans.

use rand::prelude::*;
use rand::rngs::StdRng;

use strokepheno::{
    ElementKind, FrameElement, Modality, ReportDocument, Sentence, Span, SpatialFrame,
};

const CT_FIGURES: [&str; 8] = [
    "hypodensity",
    "scattered hypodensities",
    "subtle hypoattenuation",
    "low attenuation",
    "a hypodense focus",
    "decreased attenuation",
    "hyperdensity",
    "a small lacune",
];

const MRI_FIGURES: [&str; 5] = [
    "restricted diffusion",
    "slow diffusion",
    "abnormal signal",
    "susceptibility artifact",
    "a focal area of restricted diffusion",
];

const SHARED_FIGURES: [&str; 11] = [
    "acute infarction",
    "subacute infarct",
    "an evolving infarct",
    "acute/subacute infarction",
    "an old lacunar infarct",
    "a tiny lacune",
    "chronic infarct",
    "known infarct",
    "a small lesion",
    "acute to subacute infarction",
    "several small acute infarctions",
];

const NON_IS_FIGURES: [&str; 5] = [
    "mucosal thickening",
    "mild soft tissue swelling",
    "postsurgical change",
    "motion degradation",
    "a small osteoma",
];

// Figures whose only job is to set a report-level constraint cue. Some also
// carry stage keywords (gliosis) and then qualify on their own.
const CUE_FIGURES: [&str; 10] = [
    "sulcal effacement",
    "effacement of the adjacent sulci",
    "a hyperdense mca sign",
    "loss of gray-white matter differentiation",
    "prominence of the ventricles and sulci",
    "diffuse atrophy",
    "gliosis and encephalomalacia",
    "loss of flow void",
    "facilitated diffusion",
    "ex vacuo dilation of the ventricles",
];

const LATERALIZED_GROUNDS: [&str; 16] = [
    "the left basal ganglia",
    "right cerebellum",
    "the right frontal lobe",
    "left parietal lobe",
    "the left mca territory",
    "the right mca distribution",
    "the right temporal lobe",
    "left occipital lobe",
    "the left corona radiata",
    "right insula",
    "the left cerebral peduncle",
    "the right internal capsule",
    "left thalamus",
    "the right frontoparietal distribution",
    "the left parieto-occipital region",
    "the right frontal subcortical region",
];

const UNLATERALIZED_GROUNDS: [&str; 12] = [
    "the pons",
    "the midbrain",
    "the medulla",
    "the thalami",
    "the capsules",
    "the watershed zone",
    "the corona radiata",
    "the basal ganglia",
    "the cerebellum",
    "the brainstem",
    "the insula",
    "the subcortical white matter",
];

const NON_REGION_GROUNDS: [&str; 4] = [
    "the maxillary sinuses",
    "the orbits",
    "the scalp soft tissues",
    "the paranasal sinuses",
];

// Grounds without a region keyword that still carry a cue phrase, so the
// flag must fire from a Ground text.
const CUE_GROUNDS: [&str; 2] = [
    "the convexity with sulcal effacement",
    "the ventricles with ex vacuo dilatation",
];

const COORD_SECOND_GROUNDS: [&str; 4] = [
    "parietal lobes",
    "temporal lobe",
    "occipital lobes",
    "basal ganglia",
];

const LINKS: [&str; 5] = [
    "the lateral aspect",
    "the posterior aspect",
    "the inferior margin",
    "the vascular territory",
    "the medial portion",
];

const DIAGNOSES: [&str; 7] = [
    "acute infarction",
    "subacute infarct",
    "lacunar infarct",
    "chronic small vessel ischemic change",
    "old infarct",
    "an evolving infarct",
    "thromboembolic ischemic changes",
];

const VERBS: [&str; 5] = [
    "is",
    "is noted",
    "is seen",
    "are present",
    "again demonstrated",
];

const TRIGGERS: [&str; 5] = ["in", "within", "involving", "at", "on"];

const HEDGES: [&str; 3] = ["consistent with", "compatible with", "likely represents"];

/// Builds a sentence from pieces while tracking char offsets.
struct SentenceBuilder {
    text: String,
    chars: usize,
}

impl SentenceBuilder {
    fn new() -> Self {
        SentenceBuilder {
            text: String::new(),
            chars: 0,
        }
    }

    /// Appends one space-separated piece, returning its span.
    fn push(&mut self, piece: &str) -> Span {
        if !self.text.is_empty() {
            self.text.push(' ');
            self.chars += 1;
        }
        let start = self.chars;
        self.text.push_str(piece);
        self.chars += piece.chars().count();
        Span::new(start, self.chars, piece)
    }

    fn finish(mut self) -> String {
        self.text.push('.');
        self.text
    }
}

fn pick<'a>(rng: &mut StdRng, pool: &[&'a str]) -> &'a str {
    pool[rng.gen_range(0..pool.len())]
}

fn figure_pool(rng: &mut StdRng, modality: Modality) -> &'static str {
    let roll = rng.gen_range(0..100);
    if roll < 40 {
        pick(rng, &SHARED_FIGURES)
    } else if roll < 90 {
        match modality {
            Modality::CT => pick(rng, &CT_FIGURES),
            Modality::MRI => pick(rng, &MRI_FIGURES),
        }
    } else {
        // Figure from the other modality's table: must fail the stroke
        // filter unless a stage/lacunar keyword happens to be present.
        match modality {
            Modality::CT => pick(rng, &MRI_FIGURES),
            Modality::MRI => pick(rng, &CT_FIGURES),
        }
    }
}

fn ground_pool(rng: &mut StdRng) -> &'static str {
    let roll = rng.gen_range(0..100);
    if roll < 50 {
        pick(rng, &LATERALIZED_GROUNDS)
    } else if roll < 85 {
        pick(rng, &UNLATERALIZED_GROUNDS)
    } else {
        pick(rng, &NON_REGION_GROUNDS)
    }
}

fn element(kind: ElementKind, span: Span) -> FrameElement {
    FrameElement::new(kind, span)
}

/// One simple frame: figure [verb] trigger ground [hedge diagnosis].
fn simple_sentence(rng: &mut StdRng, modality: Modality) -> Sentence {
    let mut builder = SentenceBuilder::new();
    let mut elements = Vec::new();

    if rng.gen_bool(0.15) {
        let span = builder.push("new");
        elements.push(element(ElementKind::PositionStatus, span));
    }
    let figure = builder.push(figure_pool(rng, modality));
    elements.push(element(ElementKind::Figure, figure));
    if rng.gen_bool(0.5) {
        builder.push(pick(rng, &VERBS));
    }
    let trigger = builder.push(pick(rng, &TRIGGERS));
    let ground = builder.push(ground_pool(rng));
    elements.push(element(ElementKind::Ground, ground));
    if rng.gen_bool(0.35) {
        let hedge = builder.push(pick(rng, &HEDGES));
        elements.push(element(ElementKind::Hedge, hedge));
        let diagnosis = builder.push(pick(rng, &DIAGNOSES));
        elements.push(element(ElementKind::Diagnosis, diagnosis));
    }
    elements.sort_by_key(|e| e.span.start);
    let frame = SpatialFrame::new(trigger, elements, 0);
    Sentence::new(builder.finish(), vec![frame])
}

/// Two or three frames linked through shared middle elements. A trailing
/// hedge/diagnosis sometimes lands on the last frame, where the
/// first-frame-wins rule must ignore it.
fn chained_sentence(rng: &mut StdRng, modality: Modality) -> Sentence {
    let mut builder = SentenceBuilder::new();
    let figure = builder.push(figure_pool(rng, modality));
    let first_trigger = builder.push("in");
    let link = builder.push(pick(rng, &LINKS));
    let mut frames = vec![SpatialFrame::new(
        first_trigger,
        vec![
            element(ElementKind::Figure, figure),
            element(ElementKind::Ground, link.clone()),
        ],
        0,
    )];

    let mut incoming = link;
    if rng.gen_bool(0.3) {
        // Three-frame chain through a second linking element.
        let middle_trigger = builder.push("of");
        let second_link = builder.push(pick(rng, &LINKS));
        frames.push(SpatialFrame::new(
            middle_trigger,
            vec![
                element(ElementKind::Figure, incoming),
                element(ElementKind::Ground, second_link.clone()),
            ],
            0,
        ));
        incoming = second_link;
    }

    let last_trigger = builder.push("of");
    let ground = builder.push(ground_pool(rng));
    let mut last_elements = vec![
        element(ElementKind::Figure, incoming),
        element(ElementKind::Ground, ground),
    ];
    if rng.gen_bool(0.3) {
        // Diagnosis on the last frame of the chain: not effective, the
        // chain's diagnosis comes from its first frame.
        let hedge = builder.push(pick(rng, &HEDGES));
        last_elements.push(element(ElementKind::Hedge, hedge));
        let diagnosis = builder.push(pick(rng, &DIAGNOSES));
        last_elements.push(element(ElementKind::Diagnosis, diagnosis));
    }
    frames.push(SpatialFrame::new(last_trigger, last_elements, 0));
    Sentence::new(builder.finish(), frames)
}

/// Two unlinked frames in one sentence; the chain must break between them.
fn broken_chain_sentence(rng: &mut StdRng, modality: Modality) -> Sentence {
    let mut builder = SentenceBuilder::new();
    let first_figure = builder.push(figure_pool(rng, modality));
    let first_trigger = builder.push("in");
    let first_ground = builder.push(ground_pool(rng));
    builder.push("and");
    let second_figure = builder.push(figure_pool(rng, modality));
    let second_trigger = builder.push("within");
    let second_ground = builder.push(ground_pool(rng));
    let frames = vec![
        SpatialFrame::new(
            first_trigger,
            vec![
                element(ElementKind::Figure, first_figure),
                element(ElementKind::Ground, first_ground),
            ],
            0,
        ),
        SpatialFrame::new(
            second_trigger,
            vec![
                element(ElementKind::Figure, second_figure),
                element(ElementKind::Ground, second_ground),
            ],
            0,
        ),
    ];
    Sentence::new(builder.finish(), frames)
}

/// One frame with two coordinated Figures sharing a Ground.
fn multi_figure_sentence(rng: &mut StdRng, modality: Modality) -> Sentence {
    let mut builder = SentenceBuilder::new();
    let first_figure = builder.push(figure_pool(rng, modality));
    builder.push("and");
    let second_figure = builder.push(figure_pool(rng, modality));
    let trigger = builder.push(pick(rng, &TRIGGERS));
    let ground = builder.push(ground_pool(rng));
    let frame = SpatialFrame::new(
        trigger,
        vec![
            element(ElementKind::Figure, first_figure),
            element(ElementKind::Figure, second_figure),
            element(ElementKind::Ground, ground),
        ],
        0,
    );
    Sentence::new(builder.finish(), vec![frame])
}

/// A frame with a Ground but no Figure or Diagnosis; it can never pass the
/// stroke filter, but its Ground text still feeds the cue flags.
fn ground_only_sentence(rng: &mut StdRng) -> Sentence {
    let mut builder = SentenceBuilder::new();
    builder.push("Changes");
    let trigger = builder.push(pick(rng, &TRIGGERS));
    let ground = builder.push(if rng.gen_bool(0.3) {
        pick(rng, &CUE_GROUNDS)
    } else {
        ground_pool(rng)
    });
    let frame = SpatialFrame::new(trigger, vec![element(ElementKind::Ground, ground)], 0);
    Sentence::new(builder.finish(), vec![frame])
}

/// One frame with two coordinated Grounds, for laterality propagation.
fn coordination_sentence(rng: &mut StdRng, modality: Modality) -> Sentence {
    let mut builder = SentenceBuilder::new();
    let figure = builder.push(figure_pool(rng, modality));
    let trigger = builder.push("involving");
    let first_ground = builder.push(pick(rng, &LATERALIZED_GROUNDS));
    builder.push("and");
    let second_ground = builder.push(pick(rng, &COORD_SECOND_GROUNDS));
    let frame = SpatialFrame::new(
        trigger,
        vec![
            element(ElementKind::Figure, figure),
            element(ElementKind::Ground, first_ground),
            element(ElementKind::Ground, second_ground),
        ],
        0,
    );
    Sentence::new(builder.finish(), vec![frame])
}

/// A frame whose Figure carries a constraint-cue phrase.
fn cue_sentence(rng: &mut StdRng) -> Sentence {
    let mut builder = SentenceBuilder::new();
    let mut elements = Vec::new();
    let cue_in_relative_position = rng.gen_bool(0.1);
    let figure = builder.push(pick(rng, &CUE_FIGURES));
    // Rarely mislabel the cue span kind: cue flags must only read Figure,
    // Ground, and Diagnosis texts.
    elements.push(element(
        if cue_in_relative_position {
            ElementKind::RelativePosition
        } else {
            ElementKind::Figure
        },
        figure,
    ));
    let trigger = builder.push(pick(rng, &TRIGGERS));
    let ground = builder.push(if rng.gen_bool(0.25) {
        pick(rng, &CUE_GROUNDS)
    } else {
        ground_pool(rng)
    });
    elements.push(element(ElementKind::Ground, ground));
    let frame = SpatialFrame::new(trigger, elements, 0);
    Sentence::new(builder.finish(), vec![frame])
}

/// A frame with no stroke-related or cue content at all.
pub fn filler_sentence(rng: &mut StdRng) -> Sentence {
    let mut builder = SentenceBuilder::new();
    let figure = builder.push(pick(rng, &NON_IS_FIGURES));
    let trigger = builder.push(pick(rng, &TRIGGERS));
    let ground = builder.push(pick(rng, &NON_REGION_GROUNDS));
    let frame = SpatialFrame::new(
        trigger,
        vec![
            element(ElementKind::Figure, figure),
            element(ElementKind::Ground, ground),
        ],
        0,
    );
    Sentence::new(builder.finish(), vec![frame])
}

fn sentence(rng: &mut StdRng, modality: Modality) -> Sentence {
    match rng.gen_range(0..100) {
        0..=29 => simple_sentence(rng, modality),
        30..=44 => chained_sentence(rng, modality),
        45..=52 => broken_chain_sentence(rng, modality),
        53..=60 => coordination_sentence(rng, modality),
        61..=66 => multi_figure_sentence(rng, modality),
        67..=71 => ground_only_sentence(rng),
        72..=84 => cue_sentence(rng),
        85..=94 => filler_sentence(rng),
        _ => Sentence::new("Study otherwise unremarkable.", Vec::new()),
    }
}

/// One random report with 1 to 5 sentences.
pub fn generate_report(rng: &mut StdRng, report_id: &str) -> ReportDocument {
    let modality = if rng.gen_bool(0.5) {
        Modality::CT
    } else {
        Modality::MRI
    };
    let mut sentences = Vec::new();
    for _ in 0..rng.gen_range(1..=5) {
        sentences.push(sentence(rng, modality));
    }
    if sentences.len() > 1 && rng.gen_bool(0.1) {
        // Repeat a sentence verbatim; classification must dedup.
        let dup = sentences[rng.gen_range(0..sentences.len())].clone();
        sentences.push(dup);
    }
    ReportDocument::new(report_id, modality, sentences)
}

/// A deterministic corpus of `count` reports.
pub fn generate_corpus(count: usize, seed: u64) -> Vec<ReportDocument> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|i| generate_report(&mut rng, &format!("r{i:04}")))
        .collect()
}
