//! Canonical on-disk formats: semigroup tables and law-check reports.
//!
//! Both formats are pretty-printed JSON with a fixed key order and sorted
//! metadata, so identical inputs (and seeds) produce byte-identical files.
//! There is deliberately no binary format: the carriers are tiny and
//! diffability is worth more than compactness.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::order::NaturalOrder;
use crate::semigroup::{BuildError, ElementId, InverseSemigroup};
use crate::verify::{
    BudgetMode, Law, LawReport, Replay, Side, SubsetBudget, Verdict, Witness,
};

pub const SEMIGROUP_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("unsupported format version {0}")]
    Version(u32),
    #[error("size {size} does not match a product table with {rows} rows")]
    SizeMismatch { size: usize, rows: usize },
    #[error(transparent)]
    Axioms(#[from] BuildError),
    #[error("unknown law id '{0}'")]
    UnknownLaw(String),
    #[error("unknown verdict id '{0}'")]
    UnknownVerdict(String),
    #[error("unknown budget mode '{0}'")]
    UnknownBudgetMode(String),
    #[error("report digest {report} does not match the input digest {input}")]
    DigestMismatch { report: String, input: String },
}

/// A semigroup plus the free-form provenance map that rides along in its
/// file.
#[derive(Clone, Debug)]
pub struct SemigroupFile {
    pub semigroup: InverseSemigroup,
    pub metadata: serde_json::Map<String, serde_json::Value>,
}

impl SemigroupFile {
    pub fn new(semigroup: InverseSemigroup) -> Self {
        Self {
            semigroup,
            metadata: serde_json::Map::new(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SemigroupFileRaw {
    format_version: u32,
    size: usize,
    product: Vec<Vec<usize>>,
    inverse: Option<Vec<usize>>,
    labels: Option<Vec<String>>,
    metadata: serde_json::Map<String, serde_json::Value>,
}

/// Parses and fully validates a semigroup file, keeping its metadata.
pub fn parse_semigroup_file(bytes: &[u8]) -> Result<SemigroupFile, IoError> {
    let raw: SemigroupFileRaw =
        serde_json::from_slice(bytes).map_err(|e| IoError::Malformed(e.to_string()))?;
    if raw.format_version != SEMIGROUP_FORMAT_VERSION {
        return Err(IoError::Version(raw.format_version));
    }
    if raw.size != raw.product.len() {
        return Err(IoError::SizeMismatch {
            size: raw.size,
            rows: raw.product.len(),
        });
    }
    let semigroup =
        InverseSemigroup::from_cayley_table(&raw.product, raw.inverse.as_deref(), raw.labels)?;
    Ok(SemigroupFile {
        semigroup,
        metadata: raw.metadata,
    })
}

/// Convenience wrapper that drops the metadata.
pub fn parse_semigroup(bytes: &[u8]) -> Result<InverseSemigroup, IoError> {
    Ok(parse_semigroup_file(bytes)?.semigroup)
}

/// Canonical emission: fixed key order, the inverse table always present,
/// metadata keys sorted, trailing newline.
pub fn emit_semigroup_file(file: &SemigroupFile) -> String {
    let raw = SemigroupFileRaw {
        format_version: SEMIGROUP_FORMAT_VERSION,
        size: file.semigroup.size(),
        product: file.semigroup.product_table(),
        inverse: Some(file.semigroup.inverse_table()),
        labels: file.semigroup.labels().map(|l| l.to_vec()),
        metadata: file.metadata.clone(),
    };
    let mut out = serde_json::to_string_pretty(&raw).expect("tables serialize");
    out.push('\n');
    out
}

/// Canonical emission with empty metadata.
pub fn emit_semigroup(s: &InverseSemigroup) -> String {
    emit_semigroup_file(&SemigroupFile::new(s.clone()))
}

/// Content digest of a semigroup file: sha256 of its canonical emission, so
/// non-canonical whitespace in a stored file does not change identity.
pub fn semigroup_file_digest(file: &SemigroupFile) -> String {
    hex::encode(Sha256::digest(emit_semigroup_file(file).as_bytes()))
}

pub fn semigroup_digest(s: &InverseSemigroup) -> String {
    semigroup_file_digest(&SemigroupFile::new(s.clone()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementRef {
    pub id: u32,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideRef {
    pub exists: bool,
    pub element: Option<ElementRef>,
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessFile {
    pub context: String,
    pub corpus_index: Option<usize>,
    pub s: Option<ElementRef>,
    pub x: Option<ElementRef>,
    pub y: Option<ElementRef>,
    pub family: Option<Vec<ElementRef>>,
    pub left: SideRef,
    pub right: SideRef,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetFile {
    pub mode: String,
    pub max_subset_size: usize,
    pub sample_count: u64,
    pub seed: u64,
    pub include_empty_set: bool,
    pub subset_ceiling: u64,
}

/// Serialized law-check outcome. Witness elements carry both id and label so
/// reports stay readable if a carrier is relabeled.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportFile {
    pub law: String,
    pub verdict: String,
    pub right_verdict: Option<String>,
    pub witness: Option<WitnessFile>,
    pub right_witness: Option<WitnessFile>,
    pub cases_checked: u64,
    pub budget: Option<BudgetFile>,
    pub tool_version: String,
    pub input_digest: String,
}

fn element_ref(label_of: &dyn Fn(Option<usize>, ElementId) -> String, member: Option<usize>, e: ElementId) -> ElementRef {
    ElementRef {
        id: e.0,
        label: label_of(member, e),
    }
}

fn side_ref(
    label_of: &dyn Fn(Option<usize>, ElementId) -> String,
    member: Option<usize>,
    side: &Side,
) -> SideRef {
    match side {
        Side::Element(e) => SideRef {
            exists: true,
            element: Some(element_ref(label_of, member, *e)),
            reason: None,
        },
        Side::DoesNotExist(reason) => SideRef {
            exists: false,
            element: None,
            reason: Some(reason.clone()),
        },
    }
}

fn witness_file(
    witness: &Witness,
    label_of: &dyn Fn(Option<usize>, ElementId) -> String,
) -> WitnessFile {
    let member = witness.corpus_index;
    WitnessFile {
        context: witness.context.clone(),
        corpus_index: witness.corpus_index,
        s: witness.multiplier.map(|e| element_ref(label_of, member, e)),
        x: witness.x.map(|e| element_ref(label_of, member, e)),
        y: witness.y.map(|e| element_ref(label_of, member, e)),
        family: witness
            .family
            .as_ref()
            .map(|f| f.iter().map(|&e| element_ref(label_of, member, e)).collect()),
        left: side_ref(label_of, member, &witness.left),
        right: side_ref(label_of, member, &witness.right),
    }
}

fn budget_file(budget: &SubsetBudget) -> BudgetFile {
    BudgetFile {
        mode: match budget.mode {
            BudgetMode::Exhaustive => "exhaustive".to_string(),
            BudgetMode::Bounded => "bounded".to_string(),
        },
        max_subset_size: budget.max_subset_size,
        sample_count: budget.sample_count,
        seed: budget.seed,
        include_empty_set: budget.include_empty_set,
        subset_ceiling: budget.subset_ceiling,
    }
}

impl ReportFile {
    /// Builds a serializable report against a single input semigroup.
    pub fn new(report: &LawReport, input: &SemigroupFile) -> Self {
        let s = input.semigroup.clone();
        Self::with_labels(
            report,
            &move |_member, e| s.label(e),
            semigroup_file_digest(input),
        )
    }

    /// As [`new`](Self::new), but resolving labels per corpus member, for
    /// corpus-level laws.
    pub fn with_labels(
        report: &LawReport,
        label_of: &dyn Fn(Option<usize>, ElementId) -> String,
        input_digest: String,
    ) -> Self {
        ReportFile {
            law: report.law.id().to_string(),
            verdict: report.verdict.id().to_string(),
            right_verdict: report.right_verdict.map(|v| v.id().to_string()),
            witness: report.witness.as_ref().map(|w| witness_file(w, label_of)),
            right_witness: report
                .right_witness
                .as_ref()
                .map(|w| witness_file(w, label_of)),
            cases_checked: report.cases_checked,
            budget: report.budget.as_ref().map(budget_file),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            input_digest,
        }
    }

    /// Canonical emission with trailing newline.
    pub fn to_canonical_string(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    /// Recovers the in-memory report (ids only; labels stay in the file).
    pub fn to_law_report(&self) -> Result<LawReport, IoError> {
        let law = Law::from_id(&self.law).ok_or_else(|| IoError::UnknownLaw(self.law.clone()))?;
        let verdict = Verdict::from_id(&self.verdict)
            .ok_or_else(|| IoError::UnknownVerdict(self.verdict.clone()))?;
        let right_verdict = self
            .right_verdict
            .as_deref()
            .map(|v| Verdict::from_id(v).ok_or_else(|| IoError::UnknownVerdict(v.to_string())))
            .transpose()?;
        let budget = self.budget.as_ref().map(parse_budget).transpose()?;
        Ok(LawReport {
            law,
            verdict,
            right_verdict,
            witness: self.witness.as_ref().map(parse_witness),
            right_witness: self.right_witness.as_ref().map(parse_witness),
            cases_checked: self.cases_checked,
            budget,
        })
    }
}

fn parse_budget(b: &BudgetFile) -> Result<SubsetBudget, IoError> {
    let mode = match b.mode.as_str() {
        "exhaustive" => BudgetMode::Exhaustive,
        "bounded" => BudgetMode::Bounded,
        other => return Err(IoError::UnknownBudgetMode(other.to_string())),
    };
    Ok(SubsetBudget {
        mode,
        max_subset_size: b.max_subset_size,
        sample_count: b.sample_count,
        seed: b.seed,
        include_empty_set: b.include_empty_set,
        subset_ceiling: b.subset_ceiling,
    })
}

fn parse_side(side: &SideRef) -> Side {
    match &side.element {
        Some(e) if side.exists => Side::Element(ElementId(e.id)),
        _ => Side::DoesNotExist(side.reason.clone().unwrap_or_default()),
    }
}

fn parse_witness(w: &WitnessFile) -> Witness {
    Witness {
        context: w.context.clone(),
        corpus_index: w.corpus_index,
        multiplier: w.s.as_ref().map(|e| ElementId(e.id)),
        x: w.x.as_ref().map(|e| ElementId(e.id)),
        y: w.y.as_ref().map(|e| ElementId(e.id)),
        family: w
            .family
            .as_ref()
            .map(|f| f.iter().map(|e| ElementId(e.id)).collect()),
        left: parse_side(&w.left),
        right: parse_side(&w.right),
    }
}

pub fn parse_report(bytes: &[u8]) -> Result<ReportFile, IoError> {
    serde_json::from_slice(bytes).map_err(|e| IoError::Malformed(e.to_string()))
}

/// Replay gate: rejects a report whose digest does not match the input, then
/// re-evaluates its witness (if any) through the order engine.
pub fn verify_report_against(
    report: &ReportFile,
    input: &SemigroupFile,
) -> Result<Option<Replay>, IoError> {
    let digest = semigroup_file_digest(input);
    if digest != report.input_digest {
        return Err(IoError::DigestMismatch {
            report: report.input_digest.clone(),
            input: digest,
        });
    }
    let law_report = report.to_law_report()?;
    let Some(witness) = law_report.witness.or(law_report.right_witness) else {
        return Ok(None);
    };
    let ord = NaturalOrder::new(&input.semigroup);
    Ok(Some(crate::verify::replay_witness(
        &input.semigroup,
        &ord,
        &witness,
    )))
}
