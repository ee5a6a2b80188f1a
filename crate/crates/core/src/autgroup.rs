//! Automorphisms of a character group and the multiplicity-preserving
//! subgroup `Aut_V`.
//!
//! Automorphisms act on the character side: column `j` of the matrix is the
//! image of the `j`-th standard generator. Precomposition `χ ↦ χ∘φ` on `G`
//! is an anti-isomorphism onto these, so orbits on characters are the same.

use std::collections::{HashSet, VecDeque};

use crate::abelian::{Character, FiniteAbelianGroup};
use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::modp;

pub const DEFAULT_CAP: usize = 1_000_000;

pub type ModMatrix = Vec<Vec<u64>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    matrix: ModMatrix,
    permutation: Vec<u32>,
}

impl Automorphism {
    /// Panics if `matrix` does not define a bijective endomorphism of `group`.
    pub fn new(group: &FiniteAbelianGroup, matrix: ModMatrix) -> Self {
        Self::try_new(group, matrix).expect("matrix is not an automorphism")
    }

    /// `None` unless `matrix` is well defined on `group` and bijective.
    pub fn try_new(group: &FiniteAbelianGroup, matrix: ModMatrix) -> Option<Self> {
        if !is_admissible(group, &matrix) {
            return None;
        }
        let n = group.order() as usize;
        let mut permutation = vec![u32::MAX; n];
        let mut hit = vec![false; n];
        for (i, x) in group.elements().enumerate() {
            let y = group.index_of(&apply_matrix(group, &matrix, &x));
            if hit[y] {
                return None;
            }
            hit[y] = true;
            permutation[i] = y as u32;
        }
        Some(Self {
            matrix,
            permutation,
        })
    }

    pub fn identity(group: &FiniteAbelianGroup) -> Self {
        Self::new(group, identity_matrix(group.rank()))
    }

    pub fn matrix(&self) -> &ModMatrix {
        &self.matrix
    }

    /// Image of the character with index `i` in the lexicographic enumeration.
    pub fn permutation(&self) -> &[u32] {
        &self.permutation
    }

    pub fn apply(&self, group: &FiniteAbelianGroup, x: &Character) -> Character {
        group.character_at(self.permutation[group.index_of(x)] as usize)
    }

    /// The induced linear map on `Ĝ_p/pĜ_p`.
    pub fn on_frattini_quotient(&self, group: &FiniteAbelianGroup, p: u64) -> ModMatrix {
        frattini_matrix(group, &self.matrix, p)
    }
}

/// Restriction of a character-side matrix to the coordinates divisible by `p`,
/// reduced mod `p`. Entries linking a `p`-coordinate to a coprime one are
/// forced to be multiples of `p` by admissibility, so nothing is lost.
pub fn frattini_matrix(group: &FiniteAbelianGroup, matrix: &[Vec<u64>], p: u64) -> ModMatrix {
    let idx: Vec<usize> = (0..group.rank())
        .filter(|&i| group.invariant_factors()[i].is_multiple_of(p))
        .collect();
    idx.iter()
        .map(|&i| idx.iter().map(|&j| matrix[i][j] % p).collect())
        .collect()
}

fn identity_matrix(k: usize) -> ModMatrix {
    (0..k)
        .map(|i| (0..k).map(|j| u64::from(i == j)).collect())
        .collect()
}

/// Entry `(i, j)` must be a reduced multiple of `d_i / gcd(d_i, d_j)`.
pub fn is_admissible(group: &FiniteAbelianGroup, m: &[Vec<u64>]) -> bool {
    let d = group.invariant_factors();
    let k = d.len();
    m.len() == k
        && m.iter().enumerate().all(|(i, row)| {
            row.len() == k
                && row
                    .iter()
                    .enumerate()
                    .all(|(j, &x)| x < d[i] && x % (d[i] / gcd(d[i], d[j])) == 0)
        })
}

pub fn apply_matrix(group: &FiniteAbelianGroup, m: &[Vec<u64>], x: &Character) -> Character {
    let d = group.invariant_factors();
    let a = x.coords();
    let coords = (0..d.len())
        .map(|i| {
            let s: u128 = (0..d.len()).map(|j| m[i][j] as u128 * a[j] as u128).sum();
            (s % d[i] as u128) as u64
        })
        .collect();
    group.character_unchecked(coords)
}

/// Matrix of `outer ∘ inner`.
fn compose(group: &FiniteAbelianGroup, outer: &[Vec<u64>], inner: &[Vec<u64>]) -> ModMatrix {
    let d = group.invariant_factors();
    let k = d.len();
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let s: u128 = (0..k)
                        .map(|l| outer[i][l] as u128 * inner[l][j] as u128)
                        .sum();
                    (s % d[i] as u128) as u64
                })
                .collect()
        })
        .collect()
}

/// A small generating set of the unit group of `Z/n`, greedy in ascending order.
fn unit_generators(n: u64) -> Vec<u64> {
    if n <= 2 {
        return Vec::new();
    }
    let mut reached = HashSet::from([1u64]);
    let mut gens = Vec::new();
    for u in 2..n {
        if gcd(u, n) != 1 || reached.contains(&u) {
            continue;
        }
        gens.push(u);
        let mut frontier: Vec<u64> = reached.iter().copied().collect();
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = x * g % n;
                if reached.insert(y) {
                    frontier.push(y);
                }
            }
        }
    }
    gens
}

/// Generators of `Aut(Ĝ)`: unit scalings of single coordinates, elementary
/// transvections with the smallest admissible coefficient, and swaps of
/// coordinates with equal invariant factors.
pub fn aut_generators(group: &FiniteAbelianGroup) -> Vec<Automorphism> {
    let d = group.invariant_factors();
    let k = d.len();
    let mut mats = Vec::new();
    for i in 0..k {
        for u in unit_generators(d[i]) {
            let mut m = identity_matrix(k);
            m[i][i] = u;
            mats.push(m);
        }
    }
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            // e_j ↦ e_j + c·e_i
            let c = d[i] / gcd(d[i], d[j]);
            if c.is_multiple_of(d[i]) {
                continue;
            }
            let mut m = identity_matrix(k);
            m[i][j] = c;
            mats.push(m);
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            if d[i] == d[j] {
                let mut m = identity_matrix(k);
                m[i][i] = 0;
                m[j][j] = 0;
                m[i][j] = 1;
                m[j][i] = 1;
                mats.push(m);
            }
        }
    }
    mats.into_iter()
        .map(|m| Automorphism::new(group, m))
        .collect()
}

/// Breadth-first closure of matrices under left multiplication by `gens`,
/// returned in lexicographic order.
fn close_matrices(
    group: &FiniteAbelianGroup,
    gens: &[ModMatrix],
    cap: usize,
) -> Result<Vec<ModMatrix>> {
    let id = identity_matrix(group.rank());
    let mut seen: HashSet<ModMatrix> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = compose(group, g, &x);
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(Error::CapExceeded(cap));
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<ModMatrix> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// The subgroup generated by `gens`, in lexicographic order of matrices.
pub fn close_group(
    group: &FiniteAbelianGroup,
    gens: &[Automorphism],
    cap: usize,
) -> Result<Vec<Automorphism>> {
    let mats: Vec<ModMatrix> = gens.iter().map(|g| g.matrix.clone()).collect();
    Ok(close_matrices(group, &mats, cap)?
        .into_iter()
        .map(|m| Automorphism::new(group, m))
        .collect())
}

/// The automorphisms preserving a multiplicity function on `Ĝ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutVSubgroup {
    group: FiniteAbelianGroup,
    multiplicity: Vec<u64>,
    elements: Vec<Automorphism>,
    generators: Vec<Automorphism>,
}

impl AutVSubgroup {
    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    /// Multiplicities indexed by the lexicographic position of each character.
    pub fn multiplicities(&self) -> &[u64] {
        &self.multiplicity
    }

    pub fn elements(&self) -> &[Automorphism] {
        &self.elements
    }

    pub fn generators(&self) -> &[Automorphism] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// All automorphisms `ψ` with `m ∘ ψ = m`, where `multiplicity[i]` is the
/// multiplicity of the `i`-th character. Computed by filtering the closure
/// of [`aut_generators`].
pub fn aut_v_subgroup(
    group: &FiniteAbelianGroup,
    multiplicity: &[u64],
    cap: usize,
) -> Result<AutVSubgroup> {
    assert_eq!(multiplicity.len() as u64, group.order());
    let gens: Vec<ModMatrix> = aut_generators(group)
        .into_iter()
        .map(|a| a.matrix)
        .collect();
    let support: Vec<(Character, u64)> = group
        .elements()
        .zip(multiplicity)
        .filter(|(_, &m)| m > 0)
        .map(|(x, &m)| (x, m))
        .collect();
    let elements: Vec<Automorphism> = close_matrices(group, &gens, cap)?
        .into_iter()
        .filter(|m| {
            // A bijection mapping the support onto itself with equal
            // multiplicities also preserves the zero set.
            support
                .iter()
                .all(|(x, mult)| multiplicity[group.index_of(&apply_matrix(group, m, x))] == *mult)
        })
        .map(|m| Automorphism::new(group, m))
        .collect();
    let generators = greedy_generators(group, &elements);
    Ok(AutVSubgroup {
        group: group.clone(),
        multiplicity: multiplicity.to_vec(),
        elements,
        generators,
    })
}

// Scan in order and keep each element not already generated by the earlier picks.
fn greedy_generators(group: &FiniteAbelianGroup, elements: &[Automorphism]) -> Vec<Automorphism> {
    let mut picked: Vec<Automorphism> = Vec::new();
    let mut reached: HashSet<ModMatrix> = HashSet::from([identity_matrix(group.rank())]);
    for e in elements {
        if reached.contains(&e.matrix) {
            continue;
        }
        picked.push(e.clone());
        let mats: Vec<ModMatrix> = picked.iter().map(|a| a.matrix.clone()).collect();
        reached = close_matrices(group, &mats, usize::MAX)
            .expect("uncapped")
            .into_iter()
            .collect();
    }
    picked
}

/// One orbit of `Aut_V` on `Ĝ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// Sorted; the first entry is the least representative.
    pub characters: Vec<Character>,
    pub multiplicity: u64,
}

impl Orbit {
    pub fn size(&self) -> usize {
        self.characters.len()
    }

    pub fn representative(&self) -> &Character {
        &self.characters[0]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    /// Sorted by least representative.
    pub orbits: Vec<Orbit>,
    orbit_of: Vec<usize>,
}

impl OrbitPartition {
    /// The orbit containing the character with lexicographic index `index`.
    pub fn orbit_of_index(&self, index: usize) -> &Orbit {
        &self.orbits[self.orbit_of[index]]
    }

    pub fn orbit_of(&self, group: &FiniteAbelianGroup, x: &Character) -> &Orbit {
        self.orbit_of_index(group.index_of(x))
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Orbits of the subgroup on characters, by union-find over its generators.
pub fn orbit_partition(s: &AutVSubgroup) -> OrbitPartition {
    let group = &s.group;
    let n = group.order() as usize;
    let mut parent: Vec<usize> = (0..n).collect();
    for g in &s.generators {
        for (i, &j) in g.permutation.iter().enumerate() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j as usize));
            if a != b {
                // keep the smaller index as root
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut orbit_of = vec![usize::MAX; n];
    let mut orbits: Vec<Orbit> = Vec::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        if orbit_of[root] == usize::MAX {
            orbit_of[root] = orbits.len();
            orbits.push(Orbit {
                characters: Vec::new(),
                multiplicity: s.multiplicity[i],
            });
        }
        let o = orbit_of[root];
        orbit_of[i] = o;
        orbits[o].characters.push(group.character_at(i));
    }
    OrbitPartition { orbits, orbit_of }
}

/// Whether every element of `s` fixes every line of `Ĝ_p/pĜ_p`. A linear map
/// fixing all lines is scalar, and scalars are closed under composition, so it
/// is enough to test the generators.
pub fn acts_trivially_on_lines(s: &AutVSubgroup, p: u64) -> bool {
    s.generators
        .iter()
        .all(|g| modp::is_scalar(&g.on_frattini_quotient(&s.group, p), p))
}
