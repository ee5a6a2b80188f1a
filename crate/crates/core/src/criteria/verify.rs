//! Certificate re-verification.
//!
//! Nothing here reuses the checkers' derived data: `Aut_V` is re-enumerated
//! by brute force over admissible endomorphism matrices, orbits are taken as
//! direct images, and spans are re-row-reduced with a separate routine.

use std::collections::BTreeSet;

use crate::abelian::{Character, FiniteAbelianGroup};
use crate::arith::{gcd, is_prime, p_part};
use crate::autgroup::{aut_generators, close_group, frattini_matrix, ModMatrix, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::rep::Representation;

use super::*;

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedCertificate(msg.into())
}

/// Re-checks every hypothesis of the certificate's strategy for `v`.
///
/// Returns `Ok(false)` when a hypothesis or a recorded value does not hold,
/// and `MalformedCertificate` when the certificate cannot refer to `v` at all.
pub fn verify_certificate(v: &Representation, c: &Certificate) -> Result<bool> {
    let g = v.group();
    let p = c.prime;
    if !is_prime(p) || !g.order().is_multiple_of(p) {
        return Err(malformed(format!(
            "prime {p} does not divide the group order {}",
            g.order()
        )));
    }
    if c.witness.strategy() != c.strategy {
        return Err(malformed(format!(
            "strategy {} does not match a {} witness",
            c.strategy,
            c.witness.strategy()
        )));
    }
    match &c.witness {
        Witness::EasyCyclic(w) => Ok(easy_cyclic(v, p, w)),
        Witness::LargePrime(w) => large_prime(v, p, w),
        Witness::CyclicGeneral(w) => cyclic_general(v, p, w),
        Witness::LinesAndGenerators(w) => lines(v, p, w),
    }
}

fn check_member(g: &FiniteAbelianGroup, x: &Character) -> Result<()> {
    let ok = x.coords().len() == g.rank()
        && x.coords()
            .iter()
            .zip(g.invariant_factors())
            .all(|(a, d)| a < d);
    if ok {
        Ok(())
    } else {
        Err(malformed(format!(
            "{:?} is not a reduced character",
            x.coords()
        )))
    }
}

fn dim(v: &Representation) -> u64 {
    v.multiplicities().values().sum()
}

fn easy_cyclic(v: &Representation, p: u64, w: &EasyCyclicWitness) -> bool {
    if v.group().rank() != 1 {
        return false;
    }
    let total = dim(v);
    // Characters trivial on the order-p subgroup of a cyclic group are the multiples of p.
    let fixed: u64 = v
        .multiplicities()
        .iter()
        .filter(|(c, _)| c.coords()[0] % p == 0)
        .map(|(_, m)| m)
        .sum();
    w.dim == total
        && w.fixed_dim == fixed
        && w.difference == total - fixed
        && !w.difference.is_multiple_of(p)
}

fn projection(g: &FiniteAbelianGroup, x: &Character, p: u64) -> Vec<u64> {
    x.coords()
        .iter()
        .zip(g.invariant_factors())
        .filter(|(_, &d)| d % p == 0)
        .map(|(&a, &d)| a % p_part(d, p))
        .collect()
}

fn frattini_image(g: &FiniteAbelianGroup, x: &Character, p: u64) -> Vec<u64> {
    x.coords()
        .iter()
        .zip(g.invariant_factors())
        .filter(|(_, &d)| d % p == 0)
        .map(|(&a, _)| a % p)
        .collect()
}

fn p_rank(g: &FiniteAbelianGroup, p: u64) -> usize {
    g.invariant_factors()
        .iter()
        .filter(|&&d| d % p == 0)
        .count()
}

/// Dimension of the F_p-span, by inserting vectors into an echelon basis
/// keyed on leading position.
fn span_dim(vectors: &[Vec<u64>], p: u64) -> usize {
    let mut basis: Vec<Vec<u64>> = Vec::new();
    for v in vectors {
        let mut v: Vec<u64> = v.iter().map(|x| x % p).collect();
        for b in &basis {
            let lead = b
                .iter()
                .position(|&x| x != 0)
                .expect("basis vectors are nonzero");
            if v[lead] != 0 {
                // b is normalized to leading coefficient 1
                let f = v[lead];
                for (x, y) in v.iter_mut().zip(b) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        if let Some(lead) = v.iter().position(|&x| x != 0) {
            let inv = (1..p).find(|i| i * v[lead] % p == 1).expect("p is prime");
            for x in &mut v {
                *x = *x * inv % p;
            }
            // keep earlier basis vectors reduced at this new leading position
            for b in &mut basis {
                let f = b[lead];
                if f != 0 {
                    for (x, y) in b.iter_mut().zip(&v) {
                        *x = (*x + (p - f) * y) % p;
                    }
                }
            }
            basis.push(v);
        }
    }
    basis.len()
}

fn large_prime(v: &Representation, p: u64, w: &LargePrimeWitness) -> Result<bool> {
    let g = v.group();
    let total = dim(v);
    let expected: Vec<Vec<u64>> = v.support().map(|x| projection(g, x, p)).collect();
    let recorded: Vec<Vec<u64>> = w
        .support_projections
        .iter()
        .map(|x| x.coords().to_vec())
        .collect();
    if w.dim != total || p <= total || expected != recorded {
        return Ok(false);
    }
    let images: Vec<Vec<u64>> = v.support().map(|x| frattini_image(g, x, p)).collect();
    Ok(span_dim(&images, p) == p_rank(g, p))
}

fn apply(g: &FiniteAbelianGroup, m: &[Vec<u64>], x: &Character) -> Character {
    let d = g.invariant_factors();
    let coords = (0..d.len())
        .map(|i| {
            let s: u128 = (0..d.len())
                .map(|j| m[i][j] as u128 * x.coords()[j] as u128)
                .sum();
            (s % d[i] as u128) as u64
        })
        .collect();
    g.character_unchecked(coords)
}

/// All multiplicity-preserving automorphisms, as matrices.
fn aut_v_matrices(v: &Representation) -> Result<Vec<ModMatrix>> {
    let g = v.group();
    let d = g.invariant_factors();
    let k = d.len();
    let steps: Vec<(usize, usize, u64)> = (0..k)
        .flat_map(|i| (0..k).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, d[i] / gcd(d[i], d[j])))
        .collect();
    let count = steps
        .iter()
        .try_fold(1u64, |acc, &(i, _, s)| acc.checked_mul(d[i] / s));
    let preserves = |m: &ModMatrix| {
        v.multiplicities()
            .iter()
            .all(|(x, &mult)| v.multiplicity(&apply(g, m, x)) == mult)
    };
    let injective = |m: &ModMatrix| g.elements().skip(1).all(|x| apply(g, m, &x) != g.zero());

    if count.is_none_or(|c| c > DEFAULT_CAP as u64) {
        // Too many candidate matrices: fall back to the generator closure.
        return Ok(close_group(g, &aut_generators(g), DEFAULT_CAP)?
            .into_iter()
            .map(|a| a.matrix().clone())
            .filter(|m| preserves(m))
            .collect());
    }

    let mut out = Vec::new();
    let mut digits = vec![0u64; steps.len()];
    loop {
        let mut m = vec![vec![0u64; k]; k];
        for (&(i, j, s), &t) in steps.iter().zip(&digits) {
            m[i][j] = s * t;
        }
        if preserves(&m) && injective(&m) {
            out.push(m);
        }
        // odometer over the admissible entries
        let mut pos = 0;
        loop {
            if pos == steps.len() {
                return Ok(out);
            }
            let (i, _, s) = steps[pos];
            digits[pos] += 1;
            if digits[pos] < d[i] / s {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

fn orbit(g: &FiniteAbelianGroup, auts: &[ModMatrix], x: &Character) -> BTreeSet<Character> {
    auts.iter().map(|m| apply(g, m, x)).collect()
}

fn cyclic_general(v: &Representation, p: u64, w: &CyclicGeneralWitness) -> Result<bool> {
    let g = v.group();
    check_member(g, &w.character)?;
    if p_rank(g, p) != 1 {
        return Ok(false);
    }
    let m = v.multiplicity(&w.character);
    if m == 0 || m != w.multiplicity || m.is_multiple_of(p) {
        return Ok(false);
    }
    let auts = aut_v_matrices(v)?;
    let orb = orbit(g, &auts, &w.character);
    if orb.len() as u64 != w.orbit_size {
        return Ok(false);
    }
    let sum = orb.iter().fold(g.zero(), |acc, x| g.add(&acc, x));
    if projection(g, &sum, p) != w.orbit_sum_restriction.coords() {
        return Ok(false);
    }
    let nonzero = |x: &Character| frattini_image(g, x, p).iter().any(|&a| a != 0);
    Ok(match w.condition {
        Condition::OrbitSumPrimitive => nonzero(&sum),
        Condition::OrbitSizeCoprime => !w.orbit_size.is_multiple_of(p) && nonzero(&w.character),
    })
}

fn lines(v: &Representation, p: u64, w: &LinesWitness) -> Result<bool> {
    let g = v.group();
    for q in &w.qualifying {
        check_member(g, &q.character)?;
    }
    let auts = aut_v_matrices(v)?;
    // Condition (1) on every element, not just generators.
    let scalar = |m: &ModMatrix| {
        let f = frattini_matrix(g, m, p);
        f.iter().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, &x)| if i == j { x == f[0][0] } else { x == 0 })
        })
    };
    if !auts.iter().all(scalar) {
        return Ok(false);
    }
    for gen in &w.aut_v_generators {
        if !auts.contains(&gen.matrix) || frattini_matrix(g, &gen.matrix, p) != gen.induced {
            return Ok(false);
        }
    }
    for q in &w.qualifying {
        let m = v.multiplicity(&q.character);
        if m == 0 || m.is_multiple_of(p) || frattini_image(g, &q.character, p) != q.image {
            return Ok(false);
        }
        let orb = orbit(g, &auts, &q.character);
        let holds = match q.condition {
            Condition::OrbitSumPrimitive => {
                let sum = orb.iter().fold(g.zero(), |acc, x| g.add(&acc, x));
                frattini_image(g, &sum, p).iter().any(|&a| a != 0)
            }
            Condition::OrbitSizeCoprime => !(orb.len() as u64).is_multiple_of(p),
        };
        if !holds {
            return Ok(false);
        }
    }
    let images: Vec<Vec<u64>> = w.qualifying.iter().map(|q| q.image.clone()).collect();
    Ok(span_dim(&images, p) == p_rank(g, p))
}
