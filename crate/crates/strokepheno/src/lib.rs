//! Deterministic ischemic-stroke phenotyping from spatial frames in head CT
//! and brain MRI report text, plus the evaluation harness for scoring
//! predicted phenotypes against gold annotations.
//!
//! The pipeline: frames enter as data (or come from the built-in pattern
//! extractor), [`engine::classify_report`] turns each report into a set of
//! (side, region, stage, lacunarity) tuples, and [`eval::evaluate`] scores
//! predictions against gold under the supported phenotype variants.
//!
//! ```
//! use strokepheno::{classify_report, extract_frames, Lexicon, Modality, ReportDocument, Sentence};
//!
//! let lexicon = Lexicon::builtin();
//! let text = "Hypodensity is noted in the pons which likely represents a lacunar infarct";
//! let frames = extract_frames(text, Modality::CT, &lexicon);
//! let report = ReportDocument::new("r1", Modality::CT, vec![Sentence::new(text, frames)]);
//! let phenotypes = classify_report(&report, &lexicon);
//! let rendered: Vec<String> = phenotypes.iter().map(|p| p.to_string()).collect();
//! assert_eq!(rendered, ["unspecified, brainstem, can't determine, lacunar"]);
//! ```

pub mod corpus;
pub mod engine;
pub mod eval;
pub mod extract;
pub mod frame;
pub mod lexicon;


pub use corpus::{
    load_gold, load_phenotypes, load_raw_reports, load_reports, load_reports_lenient,
    write_phenotypes, write_reports, CorpusError, GoldPhenotypeRecord, PhenotypeLoad, RawReport,
};
pub use engine::{
    chain_frames, classify_report, infer_stage, propagate_laterality, CueFlags, FrameChain,
    Phenotype, RegionSideEvidence,
};
pub use eval::{evaluate, evaluate_detailed, project, EvalError, EvalOptions, EvalResult, Variant};
pub use extract::extract_frames;
pub use frame::{
    validate_report, ElementKind, FrameElement, Modality, ReportDocument, Sentence, Span,
    SpatialFrame, ValidationFinding,
};
pub use lexicon::{
    contains_phrase, BrainRegion, ConstraintCue, Laterality, Lexicon, LexiconError, Stage,
};
