//! Brute-force oracles. None of these call into the code paths they check.
#![allow(dead_code)]

use neutrep_core::{Character, FiniteAbelianGroup};

/// All invariant-factor chains with at most `max_rank` factors and order at most `max_order`.
pub fn all_groups(max_order: u64, max_rank: usize) -> Vec<FiniteAbelianGroup> {
    fn extend(
        chain: &mut Vec<u64>,
        order: u64,
        max_order: u64,
        max_rank: usize,
        out: &mut Vec<Vec<u64>>,
    ) {
        out.push(chain.clone());
        if chain.len() == max_rank {
            return;
        }
        let last = chain.last().copied().unwrap_or(1);
        let mut d = if chain.is_empty() { 2 } else { last };
        while order * d <= max_order {
            if d % last == 0 {
                chain.push(d);
                extend(chain, order * d, max_order, max_rank, out);
                chain.pop();
            }
            d += 1;
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 1, max_order, max_rank, &mut out);
    out.iter()
        .map(|f| FiniteAbelianGroup::new(f).unwrap())
        .collect()
}

/// Elements as plain coordinate vectors, in lexicographic order.
pub fn elements(g: &FiniteAbelianGroup) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for &d in g.invariant_factors() {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..d).map(move |a| {
                    let mut v = prefix.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    out
}

pub fn index(g: &FiniteAbelianGroup, x: &[u64]) -> usize {
    x.iter()
        .zip(g.invariant_factors())
        .fold(0, |acc, (&a, &d)| acc * d as usize + a as usize)
}

pub fn addition_table(g: &FiniteAbelianGroup) -> Vec<Vec<usize>> {
    let elts = elements(g);
    let d = g.invariant_factors();
    elts.iter()
        .map(|x| {
            elts.iter()
                .map(|y| {
                    let s: Vec<u64> = (0..d.len()).map(|i| (x[i] + y[i]) % d[i]).collect();
                    index(g, &s)
                })
                .collect()
        })
        .collect()
}

/// Membership vector of the subgroup generated by `gens` (element indices).
pub fn closure(table: &[Vec<usize>], gens: &[usize]) -> Vec<bool> {
    let mut seen = vec![false; table.len()];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        for &h in gens {
            let y = table[x][h];
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen
}

/// Every bijective endomorphism, as a permutation of element indices.
///
/// Enumerates all integer matrices with entries `0 <= M[i][j] < d_i`, keeps
/// those that respect the relations `d_j e_j = 0`, and then those that are
/// bijective on the enumerated elements.
#[allow(clippy::needless_range_loop)]
pub fn bijective_endomorphisms(g: &FiniteAbelianGroup) -> Vec<Vec<usize>> {
    let d = g.invariant_factors().to_vec();
    let k = d.len();
    let elts = elements(g);
    let mut out = Vec::new();
    let total: u64 = (0..k * k).map(|t| d[t / k.max(1)]).product();
    for code in 0..total {
        let mut c = code;
        let mut m = vec![vec![0u64; k]; k];
        for i in 0..k {
            for j in 0..k {
                m[i][j] = c % d[i];
                c /= d[i];
            }
        }
        let well_defined = (0..k).all(|i| (0..k).all(|j| (m[i][j] * d[j]).is_multiple_of(d[i])));
        if !well_defined {
            continue;
        }
        let perm: Vec<usize> = elts
            .iter()
            .map(|x| {
                let y: Vec<u64> = (0..k)
                    .map(|i| (0..k).map(|j| m[i][j] * x[j]).sum::<u64>() % d[i])
                    .collect();
                index(g, &y)
            })
            .collect();
        let mut hit = vec![false; perm.len()];
        if perm.iter().all(|&y| !std::mem::replace(&mut hit[y], true)) {
            out.push(perm);
        }
    }
    out
}

/// Orbit partition of the multiplicity-preserving bijective endomorphisms,
/// as sorted lists of element indices, sorted by first element.
pub fn brute_force_orbits(all: &[Vec<usize>], mult: &[u64]) -> Vec<Vec<usize>> {
    let preserving: Vec<&Vec<usize>> = all
        .iter()
        .filter(|perm| perm.iter().enumerate().all(|(i, &j)| mult[i] == mult[j]))
        .collect();
    let n = mult.len();
    let mut assigned = vec![false; n];
    let mut orbits = Vec::new();
    for x in 0..n {
        if assigned[x] {
            continue;
        }
        let mut orbit: Vec<usize> = preserving.iter().map(|perm| perm[x]).collect();
        orbit.sort();
        orbit.dedup();
        for &y in &orbit {
            assigned[y] = true;
        }
        orbits.push(orbit);
    }
    orbits
}

/// Whether `m` sends every nonzero vector of F_p^r into its own line.
pub fn fixes_every_line(m: &[Vec<u64>], p: u64) -> bool {
    let r = m.len();
    let count = p.pow(r as u32);
    (1..count).all(|code| {
        let v: Vec<u64> = (0..r).map(|i| code / p.pow(i as u32) % p).collect();
        let w: Vec<u64> = (0..r)
            .map(|i| (0..r).map(|j| m[i][j] * v[j]).sum::<u64>() % p)
            .collect();
        (0..p).any(|lambda| (0..r).all(|i| w[i] == lambda * v[i] % p))
    })
}

/// The idempotent of `Z/d` that is 1 mod the `p`-part and 0 mod the rest, by search.
pub fn crt_idempotent(d: u64, p: u64) -> u64 {
    let mut pe = 1;
    while d.is_multiple_of(pe * p) {
        pe *= p;
    }
    let m = d / pe;
    (0..d).find(|e| e % pe == 1 % pe && e % m == 0).unwrap()
}

pub fn ch(g: &FiniteAbelianGroup, coords: &[u64]) -> Character {
    let c: Vec<i64> = coords.iter().map(|&x| x as i64).collect();
    g.character(&c).unwrap()
}

/// All multiplicity functions (dense, by element index) with support size at
/// most `max_support` and values in `1..=max_mult` on the support.
pub fn multiplicity_maps(n: usize, max_support: usize, max_mult: u64) -> Vec<Vec<u64>> {
    fn rec(
        start: usize,
        n: usize,
        left: usize,
        max_mult: u64,
        cur: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
    ) {
        out.push(cur.clone());
        if left == 0 {
            return;
        }
        for i in start..n {
            for m in 1..=max_mult {
                cur[i] = m;
                rec(i + 1, n, left - 1, max_mult, cur, out);
            }
            cur[i] = 0;
        }
    }
    let mut out = Vec::new();
    rec(0, n, max_support, max_mult, &mut vec![0; n], &mut out);
    out
}
