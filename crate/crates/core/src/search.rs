//! Exhaustive sweep over representations of a cyclic group.

use serde::{Deserialize, Serialize};

use crate::abelian::FiniteAbelianGroup;
use crate::criteria::{neutrality_report, NeutralityReport, Overall};
use crate::error::Result;
use crate::rep::Representation;

/// All multiplicity maps on `Z/n` with total dimension at most `max_dim`,
/// ordered by dimension and then lexicographically by `(character, multiplicity)`
/// pairs. Each map is listed as its support.
pub fn cyclic_multiplicity_maps(n: u64, max_dim: u64) -> Vec<Vec<(u64, u64)>> {
    fn extend(
        next: u64,
        n: u64,
        budget: u64,
        current: &mut Vec<(u64, u64)>,
        out: &mut Vec<Vec<(u64, u64)>>,
    ) {
        out.push(current.clone());
        for c in next..n {
            for m in 1..=budget {
                current.push((c, m));
                extend(c + 1, n, budget - m, current, out);
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(0, n, max_dim, &mut Vec::new(), &mut out);
    out.sort_by_key(|s| (s.iter().map(|&(_, m)| m).sum::<u64>(), s.clone()));
    out
}

pub fn cyclic_representation(n: u64, support: &[(u64, u64)]) -> Result<Representation> {
    let g = FiniteAbelianGroup::cyclic(n)?;
    let entries = support
        .iter()
        .map(|&(c, m)| Ok((g.character(&[c as i64])?, m)))
        .collect::<Result<Vec<_>>>()?;
    Representation::new(g, entries)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchEntry {
    pub index: usize,
    pub multiplicities: Vec<(u64, u64)>,
    pub report: NeutralityReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub n: u64,
    pub max_dim: u64,
    pub faithful_only: bool,
    pub neutral: usize,
    pub unknown: usize,
    pub entries: Vec<SearchEntry>,
}

impl SearchSummary {
    pub fn first_with(&self, overall: Overall) -> Option<&SearchEntry> {
        self.entries.iter().find(|e| e.report.overall == overall)
    }
}

pub fn search_cyclic(
    n: u64,
    max_dim: u64,
    faithful_only: bool,
    cap: usize,
) -> Result<SearchSummary> {
    let mut entries = Vec::new();
    for support in cyclic_multiplicity_maps(n, max_dim) {
        let v = cyclic_representation(n, &support)?;
        if faithful_only && !v.is_faithful() {
            continue;
        }
        entries.push(SearchEntry {
            index: entries.len(),
            multiplicities: support,
            report: neutrality_report(&v, cap)?,
        });
    }
    let neutral = entries
        .iter()
        .filter(|e| e.report.overall == Overall::Neutral)
        .count();
    Ok(SearchSummary {
        n,
        max_dim,
        faithful_only,
        neutral,
        unknown: entries.len() - neutral,
        entries,
    })
}
