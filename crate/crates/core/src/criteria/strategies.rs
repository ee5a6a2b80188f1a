use std::cell::OnceCell;

use crate::abelian::{Character, FiniteAbelianGroup};
use crate::arith::is_prime;
use crate::autgroup::{acts_trivially_on_lines, orbit_partition, AutVSubgroup, OrbitPartition};
use crate::error::{Error, Result};
use crate::modp;
use crate::rep::Representation;

use super::*;

fn require_prime_divisor(group: &FiniteAbelianGroup, p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !group.order().is_multiple_of(p) {
        return Err(Error::PrimeDoesNotDivide {
            prime: p,
            order: group.order(),
        });
    }
    Ok(())
}

/// Shared state for the checks on one representation: `Aut_V` and its
/// orbits are computed at most once.
struct Analysis<'a> {
    rep: &'a Representation,
    cap: usize,
    aut_v: OnceCell<Result<(AutVSubgroup, OrbitPartition)>>,
}

impl<'a> Analysis<'a> {
    fn new(rep: &'a Representation, cap: usize) -> Self {
        Self {
            rep,
            cap,
            aut_v: OnceCell::new(),
        }
    }

    fn group(&self) -> &FiniteAbelianGroup {
        self.rep.group()
    }

    fn aut_v(&self) -> Result<&(AutVSubgroup, OrbitPartition)> {
        self.aut_v
            .get_or_init(|| {
                let s = self.rep.aut_v(self.cap)?;
                let orbits = orbit_partition(&s);
                Ok((s, orbits))
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    fn easy_cyclic(&self, p: u64) -> Result<PrimeVerdict> {
        let g = self.group();
        require_prime_divisor(g, p)?;
        if !g.is_cyclic() {
            return Err(Error::NotCyclic(g.rank()));
        }
        let dim = self.rep.dim();
        let fixed_dim = self.rep.fixed_dim(&g.multiples(p));
        let difference = dim - fixed_dim;
        if !difference.is_multiple_of(p) {
            Ok(PrimeVerdict::Certified(Certificate {
                prime: p,
                strategy: Strategy::EasyCyclic,
                witness: Witness::EasyCyclic(EasyCyclicWitness {
                    dim,
                    fixed_dim,
                    difference,
                }),
            }))
        } else {
            Ok(PrimeVerdict::Unknown(vec![format!(
                "EasyCyclic: {p} divides dim V - dim V^H_{p} = {dim} - {fixed_dim} = {difference}"
            )]))
        }
    }

    fn large_prime(&self, p: u64) -> Result<PrimeVerdict> {
        let g = self.group();
        require_prime_divisor(g, p)?;
        let dim = self.rep.dim();
        if p <= dim {
            return Ok(PrimeVerdict::Unknown(vec![format!(
                "LargePrime: p = {p} does not exceed dim V = {dim}"
            )]));
        }
        let part = g.primary_part(p);
        let support_projections: Vec<Character> = self
            .rep
            .support()
            .map(|c| g.primary_projection(c, p))
            .collect();
        if !part.group.generates(&support_projections) {
            return Ok(PrimeVerdict::Unknown(vec![format!(
                "LargePrime: V is not faithful on G_{p} (support does not generate the {p}-primary part)"
            )]));
        }
        Ok(PrimeVerdict::Certified(Certificate {
            prime: p,
            strategy: Strategy::LargePrime,
            witness: Witness::LargePrime(LargePrimeWitness {
                dim,
                support_projections,
            }),
        }))
    }

    fn orbit_sum(&self, orbits: &OrbitPartition, x: &Character) -> Character {
        let g = self.group();
        g.sum(&orbits.orbit_of(g, x).characters)
    }

    fn nonzero_mod_p(&self, x: &Character, p: u64) -> bool {
        self.group().mod_p_image(x, p).iter().any(|&v| v != 0)
    }

    /// Characters with `p ∤ m(χ)` satisfying (a) or (b), with the first
    /// alternative that holds. Lexicographic order.
    fn qualifying(&self, p: u64, orbits: &OrbitPartition) -> Vec<(Character, Condition)> {
        let g = self.group();
        self.rep
            .multiplicities()
            .iter()
            .filter(|(_, &m)| m % p != 0)
            .filter_map(|(x, _)| {
                if self.nonzero_mod_p(&self.orbit_sum(orbits, x), p) {
                    Some((x.clone(), Condition::OrbitSumPrimitive))
                } else if !(orbits.orbit_of(g, x).size() as u64).is_multiple_of(p) {
                    Some((x.clone(), Condition::OrbitSizeCoprime))
                } else {
                    None
                }
            })
            .collect()
    }

    fn cyclic_general(&self, p: u64) -> Result<PrimeVerdict> {
        let g = self.group();
        require_prime_divisor(g, p)?;
        let part = g.primary_part(p);
        if part.p_rank != 1 {
            return Err(Error::NonCyclicPrimaryPart {
                prime: p,
                rank: part.p_rank,
            });
        }
        let (_, orbits) = self.aut_v()?;
        // In a cyclic Ĝ_p, generating means having nonzero image mod p.
        let witness = self.rep.multiplicities().iter().find_map(|(x, &m)| {
            if m % p == 0 {
                return None;
            }
            let orbit = orbits.orbit_of(g, x);
            let sum = g.sum(&orbit.characters);
            let condition = if self.nonzero_mod_p(&sum, p) {
                Condition::OrbitSumPrimitive
            } else if !(orbit.size() as u64).is_multiple_of(p) && self.nonzero_mod_p(x, p) {
                Condition::OrbitSizeCoprime
            } else {
                return None;
            };
            Some(CyclicGeneralWitness {
                character: x.clone(),
                multiplicity: m,
                orbit_size: orbit.size() as u64,
                orbit_sum_restriction: g.primary_projection(&sum, p),
                condition,
            })
        });
        Ok(match witness {
            Some(w) => PrimeVerdict::Certified(Certificate {
                prime: p,
                strategy: Strategy::CyclicGeneral,
                witness: Witness::CyclicGeneral(w),
            }),
            None => PrimeVerdict::Unknown(vec![format!(
                "CyclicGeneral: no character with multiplicity prime to {p} has a faithful orbit-sum restriction or an orbit of size prime to {p} with faithful restriction to G_{p}"
            )]),
        })
    }

    fn lines_generators(&self, p: u64) -> Result<PrimeVerdict> {
        let g = self.group();
        require_prime_divisor(g, p)?;
        let (aut_v, orbits) = self.aut_v()?;
        if !acts_trivially_on_lines(aut_v, p) {
            return Ok(PrimeVerdict::Unknown(vec![format!(
                "LinesAndGenerators: Aut_V moves a line of the mod-{p} quotient of the {p}-primary part"
            )]));
        }
        let qualifying: Vec<QualifyingCharacter> = self
            .qualifying(p, orbits)
            .into_iter()
            .map(|(character, condition)| QualifyingCharacter {
                image: g.mod_p_image(&character, p),
                character,
                condition,
            })
            .collect();
        let images: Vec<Vec<u64>> = qualifying.iter().map(|q| q.image.clone()).collect();
        let r_p = g.primary_part(p).p_rank;
        let rank = modp::rank(&images, p);
        if rank < r_p {
            return Ok(PrimeVerdict::Unknown(vec![format!(
                "LinesAndGenerators: the {} qualifying characters span rank {rank} < {r_p} mod {p}",
                qualifying.len()
            )]));
        }
        let aut_v_generators = aut_v
            .generators()
            .iter()
            .map(|a| GeneratorAction {
                matrix: a.matrix().clone(),
                induced: a.on_frattini_quotient(g, p),
            })
            .collect();
        Ok(PrimeVerdict::Certified(Certificate {
            prime: p,
            strategy: Strategy::LinesAndGenerators,
            witness: Witness::LinesAndGenerators(LinesWitness {
                qualifying,
                aut_v_generators,
            }),
        }))
    }

    fn prime(&self, p: u64) -> Result<PrimeVerdict> {
        let g = self.group();
        require_prime_divisor(g, p)?;
        let mut reasons = Vec::new();
        let mut attempt = |v: PrimeVerdict| match v {
            PrimeVerdict::Certified(c) => Some(c),
            PrimeVerdict::Unknown(r) => {
                reasons.extend(r);
                None
            }
        };
        if g.is_cyclic() {
            if let Some(c) = attempt(self.easy_cyclic(p)?) {
                return Ok(PrimeVerdict::Certified(c));
            }
        }
        if let Some(c) = attempt(self.large_prime(p)?) {
            return Ok(PrimeVerdict::Certified(c));
        }
        // With r_p = 1 the lines condition is vacuous and LinesAndGenerators
        // reduces to CyclicGeneral, so only one of them runs.
        let orbit_based = if g.primary_part(p).p_rank == 1 {
            self.cyclic_general(p)?
        } else {
            self.lines_generators(p)?
        };
        if let Some(c) = attempt(orbit_based) {
            return Ok(PrimeVerdict::Certified(c));
        }
        Ok(PrimeVerdict::Unknown(reasons))
    }

    fn diagnostics(&self, verdict: &PrimeVerdict) -> Vec<String> {
        let g = self.group();
        let Some(cert) = verdict.certificate() else {
            return Vec::new();
        };
        let p = cert.prime;
        let mut out = Vec::new();
        match &cert.witness {
            Witness::CyclicGeneral(w) => {
                if !g.generates(std::slice::from_ref(&w.character)) {
                    out.push(format!(
                        "CyclicGeneral witness {:?} is faithful on G_{p} but not on G; the reading requiring a faithful character of G would not certify via this witness",
                        w.character.coords()
                    ));
                }
            }
            Witness::EasyCyclic(_) => {
                // Skipped silently when the closure overflows: this is only a
                // consistency note.
                if let Ok(PrimeVerdict::Unknown(_)) = self.cyclic_general(p) {
                    out.push(format!(
                        "EasyCyclic certified {p} but no orbit-based strategy does"
                    ));
                }
            }
            _ => {}
        }
        out
    }
}

pub fn check_easy_cyclic(v: &Representation, p: u64) -> Result<PrimeVerdict> {
    Analysis::new(v, usize::MAX).easy_cyclic(p)
}

pub fn check_large_prime(v: &Representation, p: u64) -> Result<PrimeVerdict> {
    Analysis::new(v, usize::MAX).large_prime(p)
}

pub fn check_cyclic_general(v: &Representation, p: u64, cap: usize) -> Result<PrimeVerdict> {
    Analysis::new(v, cap).cyclic_general(p)
}

pub fn check_lines_generators(v: &Representation, p: u64, cap: usize) -> Result<PrimeVerdict> {
    Analysis::new(v, cap).lines_generators(p)
}

/// Tries EasyCyclic (cyclic `Ĝ` only), LargePrime, then CyclicGeneral when
/// `Ĝ_p` is cyclic or LinesAndGenerators otherwise, returning the first
/// certificate. Fails with `CapExceeded` only if no closure-free strategy
/// certified and the `Aut_V` closure overflowed.
pub fn check_prime(v: &Representation, p: u64, cap: usize) -> Result<PrimeVerdict> {
    Analysis::new(v, cap).prime(p)
}

pub fn neutrality_report(v: &Representation, cap: usize) -> Result<NeutralityReport> {
    let analysis = Analysis::new(v, cap);
    let g = v.group();
    let mut primes = Vec::new();
    for p in g.prime_divisors() {
        let verdict = analysis.prime(p)?;
        let diagnostics = analysis.diagnostics(&verdict);
        let mut entry = PrimeEntry::new(p, verdict);
        entry.diagnostics = diagnostics;
        primes.push(entry);
    }
    let overall = if primes.iter().all(|e| e.verdict == VerdictKind::Certified) {
        Overall::Neutral
    } else {
        Overall::Unknown
    };
    let faithful = v.is_faithful();
    let dim = v.dim();
    Ok(NeutralityReport {
        invariant_factors: g.invariant_factors().to_vec(),
        dim,
        primes,
        overall,
        flags: ReportFlags {
            faithful,
            pseudoreflections: v.pseudoreflections(),
            pseudoreflection_reading: PSEUDOREFLECTION_READING.to_string(),
            factorial_shortcut: faithful && g.prime_divisors().iter().all(|&p| p > dim),
        },
    })
}
