//! Representations of a diagonalizable group, recorded as eigenspace
//! dimensions indexed by characters.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::abelian::{Character, FiniteAbelianGroup, Presentation, Subgroup};
use crate::autgroup::{aut_v_subgroup, orbit_partition, AutVSubgroup, OrbitPartition};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    group: FiniteAbelianGroup,
    mult: BTreeMap<Character, u64>,
}

impl Representation {
    /// Zero multiplicities are dropped. Characters must belong to `group`.
    pub fn new(
        group: FiniteAbelianGroup,
        entries: impl IntoIterator<Item = (Character, u64)>,
    ) -> Result<Self> {
        let mut mult = BTreeMap::new();
        for (c, m) in entries {
            if !group.contains(&c) {
                return Err(Error::BadCoordinateLength {
                    expected: group.rank(),
                    found: c.coords().len(),
                });
            }
            if m == 0 {
                continue;
            }
            if mult.insert(c.clone(), m).is_some() {
                return Err(Error::DuplicateCharacter(c.into_coords()));
            }
        }
        Ok(Self { group, mult })
    }

    /// Convenience constructor from unreduced coordinates.
    pub fn from_coords(group: FiniteAbelianGroup, entries: &[(&[i64], u64)]) -> Result<Self> {
        let chars = entries
            .iter()
            .map(|(c, m)| Ok((group.character(c)?, *m)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, chars)
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    /// Support with multiplicities, in lexicographic order of characters.
    pub fn multiplicities(&self) -> &BTreeMap<Character, u64> {
        &self.mult
    }

    pub fn multiplicity(&self, x: &Character) -> u64 {
        self.mult.get(x).copied().unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = &Character> {
        self.mult.keys()
    }

    pub fn dim(&self) -> u64 {
        self.mult.values().sum()
    }

    /// Multiplicities indexed by lexicographic position in the group.
    pub fn dense(&self) -> Vec<u64> {
        let mut out = vec![0; self.group.order() as usize];
        for (c, &m) in &self.mult {
            out[self.group.index_of(c)] = m;
        }
        out
    }

    /// `dim V^H`, where `vanishing` is the set of characters trivial on `H`.
    pub fn fixed_dim(&self, vanishing: &Subgroup) -> u64 {
        self.mult
            .iter()
            .filter(|(c, _)| vanishing.contains(c))
            .map(|(_, &m)| m)
            .sum()
    }

    /// The common kernel of the support is trivial iff the support generates.
    pub fn is_faithful(&self) -> bool {
        let support: Vec<Character> = self.support().cloned().collect();
        self.group.generates(&support)
    }

    /// Non-identity elements of `G` that move exactly one eigen-line.
    pub fn pseudoreflections(&self) -> Vec<GroupElement> {
        let g = &self.group;
        (1..g.order() as usize)
            .map(|i| GroupElement(g.character_at(i).into_coords()))
            .filter(|elt| {
                self.mult
                    .iter()
                    .filter(|(c, _)| elt.pairing(g, c) != 0)
                    .map(|(_, &m)| m)
                    .sum::<u64>()
                    == 1
            })
            .collect()
    }

    pub fn aut_v(&self, cap: usize) -> Result<AutVSubgroup> {
        aut_v_subgroup(&self.group, &self.dense(), cap)
    }

    pub fn blended_decomposition(&self, cap: usize) -> Result<BlendedDecomposition> {
        Ok(BlendedDecomposition::new(&self.group, &self.aut_v(cap)?))
    }
}

/// An element of `G`, in coordinates dual to those of `Ĝ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(pub Vec<u64>);

impl GroupElement {
    /// `⟨χ, g⟩ = Σ a_i g_i (e / d_i) mod e`, with `e` the exponent. This is
    /// the exponent of the root of unity `χ(g)` in `μ_e`.
    pub fn pairing(&self, group: &FiniteAbelianGroup, x: &Character) -> u64 {
        let e = group.exponent() as u128;
        let s: u128 = x
            .coords()
            .iter()
            .zip(&self.0)
            .zip(group.invariant_factors())
            .map(|((&a, &g), &d)| a as u128 * g as u128 * (e / d as u128))
            .sum();
        (s % e) as u64
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlendedComponent {
    pub characters: Vec<Character>,
    /// Common eigenspace dimension `d` on the orbit (0 outside the support).
    pub multiplicity: u64,
    /// `d · Σ_{χ∈ω} χ`, the character of `det V_ω`.
    pub determinant_character: Character,
}

impl BlendedComponent {
    pub fn size(&self) -> usize {
        self.characters.len()
    }

    pub fn dim(&self) -> u64 {
        self.multiplicity * self.size() as u64
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlendedDecomposition {
    pub partition: OrbitPartition,
    pub components: Vec<BlendedComponent>,
}

impl BlendedDecomposition {
    pub fn new(group: &FiniteAbelianGroup, aut_v: &AutVSubgroup) -> Self {
        let partition = orbit_partition(aut_v);
        let components = partition
            .orbits
            .iter()
            .map(|o| BlendedComponent {
                characters: o.characters.clone(),
                multiplicity: o.multiplicity,
                determinant_character: group.scale(&group.sum(&o.characters), o.multiplicity),
            })
            .collect();
        Self {
            partition,
            components,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    InvariantFactors { invariant_factors: Vec<u64> },
    Relations { relations: Vec<Vec<i64>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationEntry {
    pub character: Vec<i64>,
    pub multiplicity: i64,
}

/// The input document: a group and a list of eigenspace dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub group: GroupSpec,
    pub representation: Vec<RepresentationEntry>,
}

impl InputDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn presentation(&self) -> Result<Presentation> {
        match &self.group {
            GroupSpec::InvariantFactors { invariant_factors } => {
                if let Some(&bad) = invariant_factors.iter().find(|&&d| d == 0) {
                    return Err(Error::InvalidInvariantFactor(bad));
                }
                Presentation::from_diagonal(invariant_factors)
            }
            GroupSpec::Relations { relations } => {
                let k = relations.first().map_or(0, Vec::len);
                Presentation::from_relations(relations, k)
            }
        }
    }
}

/// Builds the normalized representation described by `doc`. Character
/// coordinates refer to the generators as given in the document.
pub fn rep_from_input(doc: &InputDocument) -> Result<Representation> {
    let pres = doc.presentation()?;
    let mut entries = Vec::with_capacity(doc.representation.len());
    for e in &doc.representation {
        if e.multiplicity <= 0 {
            return Err(Error::NonPositiveMultiplicity {
                character: e.character.clone(),
                value: e.multiplicity,
            });
        }
        entries.push((pres.reduce(&e.character)?, e.multiplicity as u64));
    }
    Representation::new(pres.group, entries)
}
