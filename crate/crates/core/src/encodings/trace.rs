use serde::{Deserialize, Serialize};

use crate::config::ConfigWitness;
use crate::group::Elem;

/// Version of the [`PipelineTrace`] JSON layout.
pub const TRACE_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageRecord {
    pub name: String,
    pub count: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutcomeStatus {
    Found,
    NotFound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub status: OutcomeStatus,
    /// Last stage that ran: where the witness was extracted, or where the
    /// search came up empty.
    pub stage: String,
}

/// Record of one pipeline run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineTrace {
    pub schema_version: u32,
    pub pipeline: String,
    pub group: String,
    pub subgroup: Vec<Elem>,
    pub stages: Vec<StageRecord>,
    pub l: Option<Elem>,
    pub r: Option<Elem>,
    pub x: Option<Elem>,
    /// Stage-2 triangles dropped because two of their edges came from the
    /// same triple.
    pub rejected_degenerate: u64,
    pub warnings: Vec<String>,
    pub outcome: Outcome,
    pub witness: Option<ConfigWitness>,
}

impl PipelineTrace {
    pub(crate) fn new(pipeline: &str, group: &str, subgroup: &[Elem]) -> Self {
        PipelineTrace {
            schema_version: TRACE_SCHEMA_VERSION,
            pipeline: pipeline.to_string(),
            group: group.to_string(),
            subgroup: subgroup.to_vec(),
            stages: Vec::new(),
            l: None,
            r: None,
            x: None,
            rejected_degenerate: 0,
            warnings: Vec::new(),
            outcome: Outcome {
                status: OutcomeStatus::NotFound,
                stage: String::new(),
            },
            witness: None,
        }
    }

    pub(crate) fn stage(&mut self, name: &str, count: u64, note: Option<String>) {
        self.stages.push(StageRecord {
            name: name.to_string(),
            count,
            note,
        });
    }

    pub(crate) fn finish(mut self, stage: &str, witness: Option<ConfigWitness>) -> PipelineOutcome {
        self.outcome = Outcome {
            status: if witness.is_some() {
                OutcomeStatus::Found
            } else {
                OutcomeStatus::NotFound
            },
            stage: stage.to_string(),
        };
        self.witness = witness.clone();
        PipelineOutcome {
            witness,
            trace: self,
        }
    }
}

/// Result of a pipeline: the witness, if any, and how it was reached.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineOutcome {
    pub witness: Option<ConfigWitness>,
    pub trace: PipelineTrace,
}

impl PipelineOutcome {
    pub fn is_found(&self) -> bool {
        self.witness.is_some()
    }
}
