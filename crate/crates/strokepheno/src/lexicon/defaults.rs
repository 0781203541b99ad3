//! Builtin keyword tables. Every table can be replaced through the config
//! format; these are the values compiled in.

use super::{BrainRegion, ConstraintCue};

/// CT finding phrases that must be present in any loaded lexicon.
pub(crate) const REQUIRED_CT_FINDINGS: &[&str] = &[
    "hypodensity",
    "hypodensities",
    "hyperdensity",
    "hyperdensities",
    "hypodense",
    "hypoattenuation",
    "hypo-attenuation",
    "low attenuation",
    "low-attenuation",
    "hypoattenuating",
    "hypo-attenuating",
    "low attenuating",
    "low-attenuating",
    "decreased attenuation",
    "lacune",
    "infarct",
    "lesion",
];

/// MRI finding phrases that must be present in any loaded lexicon.
pub(crate) const REQUIRED_MRI_FINDINGS: &[&str] = &[
    "restricted diffusion",
    "slow diffusion",
    "susceptibility artifact",
    "signal",
    "infarct",
];

// Matching is word-boundary exact, so inflections each need their own entry.
// "infarction"/"infarctions" and the plurals below keep phrases like
// "acute infarction" classifiable as findings.
const EXTRA_CT_FINDINGS: &[&str] = &[
    "infarction",
    "infarctions",
    "infarcts",
    "lacunes",
    "lesions",
];
const EXTRA_MRI_FINDINGS: &[&str] = &["infarction", "infarctions", "infarcts"];

pub(crate) fn ct_findings() -> Vec<String> {
    REQUIRED_CT_FINDINGS
        .iter()
        .chain(EXTRA_CT_FINDINGS)
        .map(|s| s.to_string())
        .collect()
}

pub(crate) fn mri_findings() -> Vec<String> {
    REQUIRED_MRI_FINDINGS
        .iter()
        .chain(EXTRA_MRI_FINDINGS)
        .map(|s| s.to_string())
        .collect()
}

/// Combined-stage patterns, checked before the plain subacute/acute terms.
pub(crate) const STAGE_ACUTE_SUBACUTE: &[&str] =
    &["acute/subacute", "acute-subacute", "acute to subacute"];
pub(crate) const STAGE_SUBACUTE: &[&str] = &["sub-acute", "subacute", "sub acute", "evolving"];
pub(crate) const STAGE_ACUTE: &[&str] = &["acute"];
pub(crate) const STAGE_CHRONIC: &[&str] = &[
    "encephalomalacia",
    "gliosis",
    "known",
    "old",
    "previous",
    "prior",
];

pub(crate) const LACUNAR: &[&str] = &["lacune", "lacunar"];

pub(crate) const LATERALITY_LEFT: &[&str] = &["left"];
pub(crate) const LATERALITY_RIGHT: &[&str] = &["right"];
pub(crate) const LATERALITY_BILATERAL: &[&str] = &["both", "bilateral", "bilaterally"];
/// Plural anatomy that implies both sides even without a side term.
pub(crate) const LATERALITY_BILATERAL_ANATOMY: &[&str] = &["thalami", "capsules"];

pub(crate) fn region_keywords(region: BrainRegion) -> &'static [&'static str] {
    match region {
        BrainRegion::CerebralHemisphere => &[
            "cerebral hemisphere",
            "cerebral hemispheres",
            "hemisphere",
            "hemispheres",
        ],
        BrainRegion::FrontalLobe => &["frontal"],
        BrainRegion::OccipitalLobe => &["occipital"],
        BrainRegion::ParietalLobe => &["parietal"],
        BrainRegion::TemporalLobe => &["temporal"],
        BrainRegion::Cerebellum => &["cerebellum", "cerebellar"],
        BrainRegion::Brainstem => &[
            "brainstem",
            "brain stem",
            "pons",
            "pontine",
            "midbrain",
            "medulla",
            "medulla oblongata",
        ],
        BrainRegion::BasalGanglia => &[
            "basal ganglia",
            "caudate",
            "caudate nucleus",
            "caudate head",
            "caudate nucleus head",
            "putamen",
            "globus pallidus",
            "lentiform nucleus",
        ],
        BrainRegion::Thalamus => &["thalamus", "thalami", "thalamic"],
        BrainRegion::CerebralPeduncle => &["cerebral peduncle", "cerebral peduncles"],
        BrainRegion::InternalExternalCapsule => &[
            "internal capsule",
            "external capsule",
            "capsule",
            "capsules",
        ],
        BrainRegion::CoronaRadiata => &["corona radiata"],
        BrainRegion::Insula => &["insula", "insular"],
        BrainRegion::Watershed => &["watershed"],
    }
}

/// Fused two-lobe adjectives and the lobes they split into.
pub(crate) const COMPOUND_LOBES: &[(&str, &[BrainRegion])] = &[
    (
        "frontoparietal",
        &[BrainRegion::FrontalLobe, BrainRegion::ParietalLobe],
    ),
    (
        "frontotemporal",
        &[BrainRegion::FrontalLobe, BrainRegion::TemporalLobe],
    ),
    (
        "temporoparietal",
        &[BrainRegion::TemporalLobe, BrainRegion::ParietalLobe],
    ),
    (
        "parietooccipital",
        &[BrainRegion::ParietalLobe, BrainRegion::OccipitalLobe],
    ),
    (
        "parieto-occipital",
        &[BrainRegion::ParietalLobe, BrainRegion::OccipitalLobe],
    ),
    (
        "temporooccipital",
        &[BrainRegion::TemporalLobe, BrainRegion::OccipitalLobe],
    ),
    (
        "temporo-occipital",
        &[BrainRegion::TemporalLobe, BrainRegion::OccipitalLobe],
    ),
];

/// Vascular territories. Only MCA carries a default region set; the others
/// are placeholders meant to be filled per deployment.
pub(crate) const TERRITORIES: &[(&str, &[BrainRegion])] = &[
    (
        "mca",
        &[
            BrainRegion::FrontalLobe,
            BrainRegion::ParietalLobe,
            BrainRegion::Insula,
        ],
    ),
    ("pca", &[]),
    ("aca", &[]),
    ("basilar", &[]),
];

pub(crate) fn cue_phrases(cue: ConstraintCue) -> &'static [&'static str] {
    match cue {
        ConstraintCue::HypodensityCorticalSubcortical => &[
            "hypodensity",
            "hypodensities",
            "hypodense",
            "hypoattenuation",
            "hypo-attenuation",
            "low attenuation",
            "low-attenuation",
            "hypoattenuating",
            "hypo-attenuating",
            "low attenuating",
            "low-attenuating",
            "decreased attenuation",
        ],
        ConstraintCue::HyperdenseMca => &["hyperdense mca", "hyperdense middle cerebral artery"],
        ConstraintCue::HyperdensityBasilar => &[
            "hyperdense basilar",
            "hyperdense basilar artery",
            "hyperdensity in the basilar artery",
            "hyperdensity in basilar artery",
            "basilar artery hyperdensity",
        ],
        ConstraintCue::LossGrayWhiteDifferentiation => &[
            "loss of gray-white matter differentiation",
            "loss of grey-white matter differentiation",
            "loss of gray-white differentiation",
            "loss of grey-white differentiation",
            "loss of gray white matter differentiation",
            "loss of grey white matter differentiation",
        ],
        ConstraintCue::SulcalEffacement => &[
            "sulcal effacement",
            "effacement of sulci",
            "effacement of the sulci",
            "effacement of adjacent sulci",
            "effacement of the adjacent sulci",
        ],
        ConstraintCue::ProminenceVentriclesSulci => &[
            "prominence of the ventricles",
            "prominence of ventricles",
            "prominence of the sulci",
            "prominence of sulci",
            "prominence of the ventricles and sulci",
            "prominence of ventricles and sulci",
            "prominent ventricles",
            "prominent sulci",
        ],
        ConstraintCue::Atrophy => &["atrophy", "atrophic", "volume loss"],
        ConstraintCue::GliosisEncephalomalacia => {
            &["gliosis", "gliotic", "encephalomalacia", "encephalomalacic"]
        }
        ConstraintCue::RestrictedOrSlowDiffusion => &[
            "restricted diffusion",
            "slow diffusion",
            "diffusion restriction",
        ],
        ConstraintCue::LossFlowVoidMcaBasilar => &[
            "loss of flow void",
            "loss of the flow void",
            "absent flow void",
            "absence of flow void",
        ],
        ConstraintCue::FacilitatedDiffusion => &["facilitated diffusion"],
        ConstraintCue::DilationVentricles => &[
            "dilation of ventricles",
            "dilation of the ventricles",
            "dilatation of ventricles",
            "dilatation of the ventricles",
            "ventricular dilation",
            "ventricular dilatation",
            "ventriculomegaly",
            "ex vacuo dilation",
            "ex vacuo dilatation",
            "dilated ventricles",
        ],
    }
}
