//! Finite abelian groups in invariant-factor form.
//!
//! A [`FiniteAbelianGroup`] here always plays the role of a character group:
//! the diagonalizable group scheme it describes is never materialized. Every
//! constructor goes through the Smith normal form, so two groups are equal iff
//! they are isomorphic.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::arith::{self, p_part};
use crate::error::{Error, Result};
use crate::modp;
use crate::snf::{smith_normal_form, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawFactors")]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<u64>,
}

#[derive(Deserialize)]
struct RawFactors {
    invariant_factors: Vec<u64>,
}

impl TryFrom<RawFactors> for FiniteAbelianGroup {
    type Error = Error;

    fn try_from(raw: RawFactors) -> Result<Self> {
        FiniteAbelianGroup::new(&raw.invariant_factors)
    }
}

/// An element of a character group, stored as reduced coordinates.
///
/// Characters carry no back-pointer to their group; every operation takes the
/// group explicitly. Ordering is lexicographic on coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Character(Vec<u64>);

impl Character {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<u64> {
        self.0
    }
}

impl FiniteAbelianGroup {
    /// Normalizes any list of positive cyclic orders, e.g. `[12, 2]` becomes `Z/2 ⊕ Z/12`
    /// and `[2, 3]` becomes `Z/6`.
    pub fn new(factors: &[u64]) -> Result<Self> {
        if let Some(&bad) = factors.iter().find(|&&d| d == 0) {
            return Err(Error::InvalidInvariantFactor(bad));
        }
        if is_chain(factors) {
            return Ok(Self {
                invariant_factors: factors.to_vec(),
            });
        }
        Ok(Presentation::from_diagonal(factors)?.group)
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(&[n])
    }

    pub fn trivial() -> Self {
        Self {
            invariant_factors: Vec::new(),
        }
    }

    /// The cokernel of the row span of `relations` (one row per relation).
    pub fn from_relations(relations: &[Vec<i64>], generators: usize) -> Result<Self> {
        Ok(Presentation::from_relations(relations, generators)?.group)
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    /// Number of invariant factors.
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.invariant_factors.last().copied().unwrap_or(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.rank() <= 1
    }

    pub fn prime_divisors(&self) -> Vec<u64> {
        arith::prime_divisors(self.order())
    }

    pub fn character(&self, coords: &[i64]) -> Result<Character> {
        if coords.len() != self.rank() {
            return Err(Error::BadCoordinateLength {
                expected: self.rank(),
                found: coords.len(),
            });
        }
        Ok(Character(
            coords
                .iter()
                .zip(&self.invariant_factors)
                .map(|(&a, &d)| a.rem_euclid(d as i64) as u64)
                .collect(),
        ))
    }

    /// Builds a character from coordinates that are already reduced.
    pub fn character_unchecked(&self, coords: Vec<u64>) -> Character {
        debug_assert!(self.contains(&Character(coords.clone())));
        Character(coords)
    }

    /// True iff `x` has the right length and reduced coordinates.
    pub fn contains(&self, x: &Character) -> bool {
        x.0.len() == self.rank() && x.0.iter().zip(&self.invariant_factors).all(|(a, d)| a < d)
    }

    pub fn zero(&self) -> Character {
        Character(vec![0; self.rank()])
    }

    pub fn add(&self, a: &Character, b: &Character) -> Character {
        Character(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.invariant_factors)
                .map(|((x, y), d)| (x + y) % d)
                .collect(),
        )
    }

    pub fn neg(&self, a: &Character) -> Character {
        Character(
            a.0.iter()
                .zip(&self.invariant_factors)
                .map(|(x, d)| (d - x) % d)
                .collect(),
        )
    }

    pub fn scale(&self, a: &Character, k: u64) -> Character {
        Character(
            a.0.iter()
                .zip(&self.invariant_factors)
                .map(|(&x, &d)| ((x as u128 * k as u128) % d as u128) as u64)
                .collect(),
        )
    }

    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a Character>) -> Character {
        items
            .into_iter()
            .fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    /// Additive order of `a`.
    pub fn element_order(&self, a: &Character) -> u64 {
        a.0.iter()
            .zip(&self.invariant_factors)
            .map(|(&x, &d)| d / arith::gcd(x, d))
            .fold(1, |acc, o| acc / arith::gcd(acc, o) * o)
    }

    /// Position of `a` in the lexicographic enumeration of the group.
    pub fn index_of(&self, a: &Character) -> usize {
        a.0.iter()
            .zip(&self.invariant_factors)
            .fold(0usize, |acc, (&x, &d)| acc * d as usize + x as usize)
    }

    pub fn character_at(&self, mut index: usize) -> Character {
        let mut coords = vec![0; self.rank()];
        for (slot, &d) in coords.iter_mut().zip(&self.invariant_factors).rev() {
            *slot = (index % d as usize) as u64;
            index /= d as usize;
        }
        Character(coords)
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = Character> + '_ {
        (0..self.order() as usize).map(move |i| self.character_at(i))
    }

    /// Coordinates whose invariant factor is divisible by `p`.
    fn p_indices(&self, p: u64) -> Vec<usize> {
        (0..self.rank())
            .filter(|&i| self.invariant_factors[i].is_multiple_of(p))
            .collect()
    }

    pub fn primary_part(&self, p: u64) -> PrimaryPart {
        let indices = self.p_indices(p);
        let factors: Vec<u64> = indices
            .iter()
            .map(|&i| p_part(self.invariant_factors[i], p))
            .collect();
        PrimaryPart {
            prime: p,
            p_rank: indices.len(),
            group: FiniteAbelianGroup {
                invariant_factors: factors,
            },
            indices,
        }
    }

    /// The `p`-component of `a`, in the coordinates of [`Self::primary_part`].
    ///
    /// With `d_i = p^e · m`, the idempotent `ε ≡ 1 (p^e)`, `ε ≡ 0 (m)` sends
    /// `a_i` to `ε·a_i`, which the splitting `Z/d_i ≅ Z/p^e × Z/m` identifies
    /// with `a_i mod p^e`.
    pub fn primary_projection(&self, a: &Character, p: u64) -> Character {
        Character(
            self.p_indices(p)
                .into_iter()
                .map(|i| a.0[i] % p_part(self.invariant_factors[i], p))
                .collect(),
        )
    }

    /// Image of `a` in `Ĝ_p / pĜ_p ≅ F_p^{r_p}`.
    pub fn mod_p_image(&self, a: &Character, p: u64) -> Vec<u64> {
        self.p_indices(p).into_iter().map(|i| a.0[i] % p).collect()
    }

    /// True iff `set` generates the whole group.
    ///
    /// A subset generates iff, for each prime `p`, its images span
    /// `Ĝ_p/pĜ_p` (Burnside basis theorem applied to every primary part).
    pub fn generates(&self, set: &[Character]) -> bool {
        self.prime_divisors().into_iter().all(|p| {
            let images: Vec<Vec<u64>> = set.iter().map(|x| self.mod_p_image(x, p)).collect();
            modp::rank(&images, p) == self.p_indices(p).len()
        })
    }

    pub fn subgroup(&self, generators: Vec<Character>) -> Subgroup {
        Subgroup {
            generators,
            parent: self.clone(),
        }
    }

    /// The subgroup `p·Ĝ`. For a cyclic character group this is the set of
    /// characters vanishing on the unique subgroup of order `p` of `G`.
    pub fn multiples(&self, p: u64) -> Subgroup {
        let gens = (0..self.rank())
            .map(|i| {
                let mut c = vec![0; self.rank()];
                c[i] = p % self.invariant_factors[i];
                Character(c)
            })
            .collect();
        self.subgroup(gens)
    }

    /// Whether the `p`-component of `a` generates a cyclic `Ĝ_p`.
    pub fn restriction_faithful_on_primary(&self, a: &Character, p: u64) -> Result<bool> {
        let part = self.primary_part(p);
        if part.p_rank > 1 {
            return Err(Error::NonCyclicPrimaryPart {
                prime: p,
                rank: part.p_rank,
            });
        }
        Ok(self.mod_p_image(a, p).iter().any(|&x| x != 0))
    }
}

fn is_chain(factors: &[u64]) -> bool {
    factors.iter().all(|&d| d >= 2) && factors.windows(2).all(|w| w[1] % w[0] == 0)
}

/// The `p`-primary part `Ĝ_p`, remembering which coordinates of the parent it
/// comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimaryPart {
    pub prime: u64,
    pub group: FiniteAbelianGroup,
    pub p_rank: usize,
    pub indices: Vec<usize>,
}

/// A subgroup given by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub generators: Vec<Character>,
    pub parent: FiniteAbelianGroup,
}

impl Subgroup {
    /// Membership by solving `x = Σ c_j h_j + Σ t_i d_i e_i` over Z.
    pub fn contains(&self, x: &Character) -> bool {
        let k = self.parent.rank();
        if k == 0 {
            return true;
        }
        let mut rows: IntMatrix = self
            .generators
            .iter()
            .map(|h| h.0.iter().map(|&v| v as i64).collect())
            .collect();
        for (i, &d) in self.parent.invariant_factors.iter().enumerate() {
            let mut r = vec![0; k];
            r[i] = d as i64;
            rows.push(r);
        }
        let snf = smith_normal_form(&rows);
        // x ∈ rowspan(B)  iff  x·W ∈ rowspan(U·B·W) = rowspan(D).
        let invariants = snf.invariants();
        (0..k).all(|j| {
            let y: i64 = (0..k).map(|i| x.0[i] as i64 * snf.right[i][j]).sum();
            let d = invariants[j];
            if d == 0 {
                y == 0
            } else {
                y % d == 0
            }
        })
    }

    /// Closure of the generators, sorted.
    pub fn elements(&self) -> Vec<Character> {
        let g = &self.parent;
        let mut seen = BTreeSet::from([g.zero()]);
        let mut queue = VecDeque::from([g.zero()]);
        while let Some(x) = queue.pop_front() {
            for h in &self.generators {
                let y = g.add(&x, h);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen.into_iter().collect()
    }
}

/// A finite abelian group together with the change of coordinates from the
/// generators it was presented with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub group: FiniteAbelianGroup,
    generators: usize,
    transform: IntMatrix,
    kept: Vec<usize>,
}

impl Presentation {
    pub fn from_relations(relations: &[Vec<i64>], generators: usize) -> Result<Self> {
        if let Some(bad) = relations.iter().find(|r| r.len() != generators) {
            return Err(Error::BadCoordinateLength {
                expected: generators,
                found: bad.len(),
            });
        }
        if generators == 0 {
            return Ok(Self {
                group: FiniteAbelianGroup::trivial(),
                generators: 0,
                transform: Vec::new(),
                kept: Vec::new(),
            });
        }
        let snf = smith_normal_form(relations);
        let invariants = snf.invariants();
        let rank = snf.rank();
        if rank < generators {
            return Err(Error::InfiniteGroup { rank, generators });
        }
        let kept: Vec<usize> = (0..generators).filter(|&i| invariants[i] != 1).collect();
        let factors = kept.iter().map(|&i| invariants[i] as u64).collect();
        Ok(Self {
            group: FiniteAbelianGroup {
                invariant_factors: factors,
            },
            generators,
            transform: snf.right,
            kept,
        })
    }

    pub fn from_diagonal(factors: &[u64]) -> Result<Self> {
        let k = factors.len();
        let rows: IntMatrix = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| if i == j { factors[i] as i64 } else { 0 })
                    .collect()
            })
            .collect();
        Self::from_relations(&rows, k)
    }

    /// Number of generators in the original presentation.
    pub fn generators(&self) -> usize {
        self.generators
    }

    /// Maps coordinates with respect to the original generators into the
    /// normalized group.
    pub fn reduce(&self, coords: &[i64]) -> Result<Character> {
        if coords.len() != self.generators {
            return Err(Error::BadCoordinateLength {
                expected: self.generators,
                found: coords.len(),
            });
        }
        let image: Vec<i64> = self
            .kept
            .iter()
            .map(|&j| {
                (0..self.generators)
                    .map(|i| coords[i] * self.transform[i][j])
                    .sum()
            })
            .collect();
        self.group.character(&image)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(f: &[u64]) -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(f).unwrap()
    }

    fn ch(g: &FiniteAbelianGroup, c: &[i64]) -> Character {
        g.character(c).unwrap()
    }

    #[test]
    fn normalization() {
        assert_eq!(group(&[2, 3]).invariant_factors(), &[6]);
        assert_eq!(group(&[12, 2]).invariant_factors(), &[2, 12]);
        assert_eq!(group(&[1]), FiniteAbelianGroup::trivial());
        assert_eq!(group(&[4, 6]).invariant_factors(), &[2, 12]);
        assert!(matches!(
            FiniteAbelianGroup::new(&[0]),
            Err(Error::InvalidInvariantFactor(0))
        ));
    }

    #[test]
    fn relations() {
        let g = FiniteAbelianGroup::from_relations(&[vec![4]], 1).unwrap();
        assert_eq!(g.invariant_factors(), &[4]);
        let g = FiniteAbelianGroup::from_relations(&[vec![2, 0], vec![0, 3]], 2).unwrap();
        assert_eq!(g.invariant_factors(), &[6]);
        assert!(matches!(
            FiniteAbelianGroup::from_relations(&[vec![2, 0]], 2),
            Err(Error::InfiniteGroup {
                rank: 1,
                generators: 2
            })
        ));
        assert!(matches!(
            FiniteAbelianGroup::from_relations(&[vec![2, 0], vec![0, 0]], 2),
            Err(Error::InfiniteGroup { .. })
        ));
    }

    #[test]
    fn presentation_maps_generators_to_orders() {
        let p = Presentation::from_relations(&[vec![2, 0], vec![0, 3]], 2).unwrap();
        let a = p.reduce(&[1, 0]).unwrap();
        let b = p.reduce(&[0, 1]).unwrap();
        assert_eq!(p.group.element_order(&a), 2);
        assert_eq!(p.group.element_order(&b), 3);
        assert_eq!(p.group.element_order(&p.group.add(&a, &b)), 6);
        assert!(p.reduce(&[1]).is_err());
    }

    #[test]
    fn reduction_of_coordinates() {
        let g = group(&[4]);
        assert_eq!(ch(&g, &[5]).coords(), &[1]);
        assert_eq!(ch(&g, &[-1]).coords(), &[3]);
        assert!(g.character(&[1, 1]).is_err());
    }

    #[test]
    fn projections() {
        let z6 = group(&[6]);
        assert_eq!(z6.primary_projection(&ch(&z6, &[1]), 2).coords(), &[1]);
        assert_eq!(z6.primary_projection(&ch(&z6, &[2]), 2).coords(), &[0]);
        let g = group(&[12]);
        assert_eq!(g.primary_part(2).group.invariant_factors(), &[4]);
        let mixed = group(&[2, 12]);
        assert_eq!(mixed.mod_p_image(&ch(&mixed, &[1, 3]), 2), vec![1, 1]);
        assert_eq!(mixed.primary_part(3).p_rank, 1);
        assert_eq!(mixed.primary_part(5).p_rank, 0);
        let z9 = group(&[3, 3]);
        assert_eq!(z9.mod_p_image(&ch(&z9, &[1, 2]), 3), vec![1, 2]);
        let z4 = group(&[4]);
        assert_eq!(z4.mod_p_image(&ch(&z4, &[2]), 2), vec![0]);
    }

    #[test]
    fn generation() {
        let z4 = group(&[4]);
        assert!(!z4.generates(&[ch(&z4, &[2])]));
        assert!(z4.generates(&[ch(&z4, &[1])]));
        let v4 = group(&[2, 2]);
        assert!(v4.generates(&[ch(&v4, &[1, 0]), ch(&v4, &[1, 1])]));
        assert!(FiniteAbelianGroup::trivial().generates(&[]));
    }

    #[test]
    fn membership() {
        let z4 = group(&[4]);
        let h = z4.subgroup(vec![ch(&z4, &[2])]);
        assert!(h.contains(&ch(&z4, &[2])));
        assert!(!h.contains(&ch(&z4, &[1])));
        let v4 = group(&[2, 2]);
        let h = v4.subgroup(vec![ch(&v4, &[1, 0])]);
        assert!(!h.contains(&ch(&v4, &[1, 1])));
        assert!(h.contains(&ch(&v4, &[0, 0])));
    }

    #[test]
    fn faithful_restriction() {
        let z4 = group(&[4]);
        assert!(z4
            .restriction_faithful_on_primary(&ch(&z4, &[1]), 2)
            .unwrap());
        assert!(!z4
            .restriction_faithful_on_primary(&ch(&z4, &[2]), 2)
            .unwrap());
        let z6 = group(&[6]);
        assert!(!z6
            .restriction_faithful_on_primary(&ch(&z6, &[3]), 3)
            .unwrap());
        let v = group(&[3, 3]);
        assert!(matches!(
            v.restriction_faithful_on_primary(&ch(&v, &[1, 0]), 3),
            Err(Error::NonCyclicPrimaryPart { prime: 3, rank: 2 })
        ));
    }

    #[test]
    fn enumeration_order() {
        let g = group(&[2, 4]);
        let all: Vec<_> = g.elements().collect();
        assert_eq!(all.len(), 8);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        for (i, x) in all.iter().enumerate() {
            assert_eq!(g.index_of(x), i);
        }
        assert_eq!(g.element_order(&ch(&g, &[1, 2])), 2);
        assert_eq!(g.element_order(&ch(&g, &[1, 1])), 4);
    }
}
