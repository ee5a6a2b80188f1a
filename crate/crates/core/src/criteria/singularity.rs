use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::rep::{GroupElement, Representation};

use super::{neutrality_report, NeutralityReport, Overall};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BridgeStatus {
    /// Faithful, free of pseudoreflections, and certified neutral: `(V/G, [0])`
    /// is an R-singularity.
    RSingularityCertified,
    /// The implication from neutrality needs a faithful representation
    /// without pseudoreflections.
    BridgeInapplicable,
    /// The bridge applies but neutrality was not certified.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityReport {
    pub status: BridgeStatus,
    pub faithful: bool,
    pub pseudoreflections: Vec<GroupElement>,
    pub neutrality: NeutralityReport,
    pub notes: Vec<String>,
}

/// Applies "neutral and no pseudoreflections implies R-singularity" in the
/// tame case, which the caller asserts. The converse direction needs an
/// R-singularity as input and is never concluded here.
pub fn r_singularity_report(v: &Representation, cap: usize) -> Result<SingularityReport> {
    let neutrality = neutrality_report(v, cap)?;
    let faithful = neutrality.flags.faithful;
    let pseudoreflections = neutrality.flags.pseudoreflections.clone();
    let mut notes = vec![
        "assumes the tame case: |G| is invertible in the base field".to_string(),
        "the implication R-singularity => neutral is not evaluated (it takes an R-singularity as input)"
            .to_string(),
    ];
    let status = if !faithful {
        notes.push("representation is not faithful".to_string());
        BridgeStatus::BridgeInapplicable
    } else if !pseudoreflections.is_empty() {
        notes.push(
            "G contains pseudoreflections; the condition is necessary, e.g. chi + chi^2 of C_4 is neutral but its quotient is not an R-singularity"
                .to_string(),
        );
        BridgeStatus::BridgeInapplicable
    } else if neutrality.overall == Overall::Neutral {
        BridgeStatus::RSingularityCertified
    } else {
        notes.push("neutrality criteria inconclusive".to_string());
        BridgeStatus::Inconclusive
    };
    Ok(SingularityReport {
        status,
        faithful,
        pseudoreflections,
        neutrality,
        notes,
    })
}
