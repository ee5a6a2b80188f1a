//! Per-prime sufficient criteria for neutrality, with certificates.
//!
//! Every verdict is either `Certified`, meaning a sufficient condition for
//! the prime not to be critical holds exactly, or `Unknown`. No checker ever
//! claims a prime is critical.

mod singularity;
mod strategies;
mod verify;

use serde::{Deserialize, Serialize};

use crate::abelian::Character;
use crate::autgroup::ModMatrix;
use crate::rep::GroupElement;

pub use singularity::{r_singularity_report, BridgeStatus, SingularityReport};
pub use strategies::{
    check_cyclic_general, check_easy_cyclic, check_large_prime, check_lines_generators,
    check_prime, neutrality_report,
};
pub use verify::verify_certificate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Strategy {
    EasyCyclic,
    LargePrime,
    CyclicGeneral,
    LinesAndGenerators,
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Strategy::EasyCyclic => "EasyCyclic",
            Strategy::LargePrime => "LargePrime",
            Strategy::CyclicGeneral => "CyclicGeneral",
            Strategy::LinesAndGenerators => "LinesAndGenerators",
        };
        f.write_str(s)
    }
}

/// Which alternative made a character qualify: (a) the restriction of its
/// orbit sum to `G_p` is primitive, or (b) its orbit size is prime to `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Condition {
    #[serde(rename = "a")]
    OrbitSumPrimitive,
    #[serde(rename = "b")]
    OrbitSizeCoprime,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EasyCyclicWitness {
    pub dim: u64,
    pub fixed_dim: u64,
    pub difference: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LargePrimeWitness {
    pub dim: u64,
    /// Projections of the support characters to `Ĝ_p`, in support order.
    pub support_projections: Vec<Character>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CyclicGeneralWitness {
    pub character: Character,
    pub multiplicity: u64,
    pub orbit_size: u64,
    pub orbit_sum_restriction: Character,
    pub condition: Condition,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QualifyingCharacter {
    pub character: Character,
    pub condition: Condition,
    pub image: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorAction {
    pub matrix: ModMatrix,
    /// The induced map on `Ĝ_p/pĜ_p`; scalar when the certificate is valid.
    pub induced: ModMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinesWitness {
    pub qualifying: Vec<QualifyingCharacter>,
    pub aut_v_generators: Vec<GeneratorAction>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Witness {
    EasyCyclic(EasyCyclicWitness),
    LargePrime(LargePrimeWitness),
    CyclicGeneral(CyclicGeneralWitness),
    LinesAndGenerators(LinesWitness),
}

impl Witness {
    pub fn strategy(&self) -> Strategy {
        match self {
            Witness::EasyCyclic(_) => Strategy::EasyCyclic,
            Witness::LargePrime(_) => Strategy::LargePrime,
            Witness::CyclicGeneral(_) => Strategy::CyclicGeneral,
            Witness::LinesAndGenerators(_) => Strategy::LinesAndGenerators,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub prime: u64,
    pub strategy: Strategy,
    pub witness: Witness,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeVerdict {
    Certified(Certificate),
    /// One reason per strategy attempted.
    Unknown(Vec<String>),
}

impl PrimeVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, PrimeVerdict::Certified(_))
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            PrimeVerdict::Certified(c) => Some(c),
            PrimeVerdict::Unknown(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum VerdictKind {
    Certified,
    Unknown,
}

/// Serialized form of a per-prime verdict. Field order is part of the format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeEntry {
    pub prime: u64,
    pub strategy: Option<Strategy>,
    pub witness: Option<Witness>,
    pub verdict: VerdictKind,
    #[serde(default)]
    pub reasons: Vec<String>,
    #[serde(default)]
    pub diagnostics: Vec<String>,
}

impl PrimeEntry {
    pub fn new(prime: u64, verdict: PrimeVerdict) -> Self {
        match verdict {
            PrimeVerdict::Certified(c) => Self {
                prime,
                strategy: Some(c.strategy),
                witness: Some(c.witness),
                verdict: VerdictKind::Certified,
                reasons: Vec::new(),
                diagnostics: Vec::new(),
            },
            PrimeVerdict::Unknown(reasons) => Self {
                prime,
                strategy: None,
                witness: None,
                verdict: VerdictKind::Unknown,
                reasons,
                diagnostics: Vec::new(),
            },
        }
    }

    pub fn certificate(&self) -> Option<Certificate> {
        match (&self.strategy, &self.witness) {
            (Some(s), Some(w)) => Some(Certificate {
                prime: self.prime,
                strategy: *s,
                witness: w.clone(),
            }),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Overall {
    Neutral,
    Unknown,
}

pub const PSEUDOREFLECTION_READING: &str =
    "pseudoreflection = non-identity element whose fixed subspace has codimension 1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportFlags {
    pub faithful: bool,
    pub pseudoreflections: Vec<GroupElement>,
    pub pseudoreflection_reading: String,
    /// Faithful, and every prime dividing `|G|` exceeds `dim V`; then
    /// `|G|` is prime to `(dim V)!` and every prime certifies by LargePrime.
    pub factorial_shortcut: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeutralityReport {
    pub invariant_factors: Vec<u64>,
    pub dim: u64,
    pub primes: Vec<PrimeEntry>,
    pub overall: Overall,
    pub flags: ReportFlags,
}

impl NeutralityReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn certificates(&self) -> impl Iterator<Item = Certificate> + '_ {
        self.primes.iter().filter_map(PrimeEntry::certificate)
    }
}
