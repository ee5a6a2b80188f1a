mod common;

use common::*;
use neutrep_core::autgroup::{
    aut_generators, aut_v_subgroup, close_group, orbit_partition, DEFAULT_CAP,
};
use neutrep_core::criteria::{check_cyclic_general, check_lines_generators, PrimeVerdict};
use neutrep_core::snf::smith_normal_form;
use neutrep_core::{FiniteAbelianGroup, GroupElement, Representation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn group(f: &[u64]) -> FiniteAbelianGroup {
    FiniteAbelianGroup::new(f).unwrap()
}

/// Cokernel of the column span of a nonsingular 2x2 matrix: order |det|, and
/// the largest element order found by enumerating a box of representatives.
fn cokernel_order_and_exponent(m: [[i64; 2]; 2]) -> (i64, i64) {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let adj = [[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]];
    let in_lattice = |v: [i64; 2]| {
        (adj[0][0] * v[0] + adj[0][1] * v[1]) % det == 0
            && (adj[1][0] * v[0] + adj[1][1] * v[1]) % det == 0
    };
    let n = det.abs();
    let mut exponent = 1;
    for a in 0..n {
        for b in 0..n {
            let order = (1..=n).find(|&k| in_lattice([k * a, k * b])).unwrap();
            exponent = exponent.max(order);
        }
    }
    (n, exponent)
}

#[test]
fn snf_matches_cokernel_enumeration() {
    let (order, exponent) = cokernel_order_and_exponent([[2, 0], [0, 3]]);
    assert_eq!((order, exponent), (6, 6));
    // cyclic of order 6, so the invariants are (1, 6)
    assert_eq!(
        smith_normal_form(&[vec![2, 0], vec![0, 3]]).invariants(),
        vec![1, 6]
    );

    let (order, exponent) = cokernel_order_and_exponent([[2, 4], [6, 8]]);
    let inv = smith_normal_form(&[vec![2, 4], vec![6, 8]]).invariants();
    assert_eq!(inv[0] * inv[1], order);
    assert_eq!(inv[1], exponent);
}

#[test]
fn aut_orders_match_endomorphism_count() {
    let mut groups: Vec<FiniteAbelianGroup> = (1..=16).map(|n| group(&[n])).collect();
    groups.extend([group(&[2, 2]), group(&[2, 4]), group(&[3, 3])]);
    groups.extend(all_groups(32, 3));
    groups.extend(all_groups(64, 2));
    groups.sort();
    groups.dedup();
    for g in groups {
        let expected = bijective_endomorphisms(&g).len();
        let got = close_group(&g, &aut_generators(&g), DEFAULT_CAP)
            .unwrap()
            .len();
        assert_eq!(got, expected, "Aut of {:?}", g.invariant_factors());
    }
}

#[test]
fn named_aut_orders() {
    for (f, order) in [
        (&[5][..], 4),
        (&[2, 2], 6),
        (&[2, 4], 8),
        (&[7], 6),
        (&[3, 3], 48),
    ] {
        assert_eq!(bijective_endomorphisms(&group(f)).len(), order);
    }
}

#[test]
fn brute_force_aut_v_examples() {
    let z5 = group(&[5]);
    let all = bijective_endomorphisms(&z5);
    assert_eq!(
        brute_force_orbits(&all, &[0, 1, 0, 0, 1]),
        vec![vec![0], vec![1, 4], vec![2, 3]]
    );
    assert_eq!(brute_force_orbits(&all, &[0, 1, 1, 0, 0]).len(), 5);
}

#[test]
fn lines_test_matches_literal_action() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let groups = [
        (2, group(&[2])),
        (2, group(&[2, 2])),
        (2, group(&[2, 2, 2])),
        (2, group(&[2, 4])),
        (3, group(&[3])),
        (3, group(&[3, 3])),
        (3, group(&[3, 3, 3])),
        (3, group(&[3, 9])),
        (5, group(&[5, 5])),
        (2, group(&[6, 6])),
    ];
    for (p, g) in groups {
        let n = g.order() as usize;
        for _ in 0..20 {
            let mult: Vec<u64> = (0..n)
                .map(|_| {
                    if rng.gen_bool(0.3) {
                        rng.gen_range(1..3)
                    } else {
                        0
                    }
                })
                .collect();
            let s = aut_v_subgroup(&g, &mult, DEFAULT_CAP).unwrap();
            let literal = s.elements().iter().all(|a| {
                g.elements().all(|x| {
                    let u = g.mod_p_image(&x, p);
                    let w = g.mod_p_image(&a.apply(&g, &x), p);
                    (0..p).any(|l| u.iter().zip(&w).all(|(ui, wi)| l * ui % p == *wi))
                })
            });
            assert_eq!(
                neutrep_core::autgroup::acts_trivially_on_lines(&s, p),
                literal,
                "{:?} {mult:?}",
                g.invariant_factors()
            );
        }
    }
}

#[test]
fn primary_projection_is_crt_idempotent() {
    for g in all_groups(36, 3) {
        for p in g.prime_divisors() {
            let part = g.primary_part(p);
            for x in g.elements() {
                let proj = g.primary_projection(&x, p);
                let expected: Vec<u64> = part
                    .indices
                    .iter()
                    .zip(part.group.invariant_factors())
                    .map(|(&i, &pe)| {
                        let d = g.invariant_factors()[i];
                        crt_idempotent(d, p) * x.coords()[i] % d % pe
                    })
                    .collect();
                assert_eq!(proj.coords(), &expected[..]);
            }
        }
    }
    assert_eq!(crt_idempotent(6, 2), 3);
}

#[test]
fn membership_matches_closure() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for g in all_groups(36, 3) {
        let n = g.order() as usize;
        let table = addition_table(&g);
        let elts: Vec<_> = g.elements().collect();
        for _ in 0..8 {
            let size = rng.gen_range(0..3);
            let gens: Vec<usize> = (0..size).map(|_| rng.gen_range(0..n)).collect();
            let reach = closure(&table, &gens);
            let h = g.subgroup(gens.iter().map(|&i| elts[i].clone()).collect());
            for (i, x) in elts.iter().enumerate() {
                assert_eq!(
                    h.contains(x),
                    reach[i],
                    "{:?} {gens:?} {i}",
                    g.invariant_factors()
                );
            }
            let enumerated: Vec<usize> = h.elements().iter().map(|x| g.index_of(x)).collect();
            let expected: Vec<usize> = (0..n).filter(|&i| reach[i]).collect();
            assert_eq!(enumerated, expected);
        }
    }
}

#[test]
fn pseudoreflections_match_root_of_unity_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for g in all_groups(24, 2) {
        let n = g.order() as usize;
        for _ in 0..10 {
            let mut entries = Vec::new();
            for x in g.elements() {
                if rng.gen_bool(0.25) {
                    entries.push((x, rng.gen_range(1..3u64)));
                }
            }
            let v = Representation::new(g.clone(), entries.clone()).unwrap();
            let expected: Vec<GroupElement> = (1..n)
                .map(|i| GroupElement(g.character_at(i).into_coords()))
                .filter(|elt| {
                    let moved: u64 = entries
                        .iter()
                        .filter(|(x, _)| {
                            let angle: f64 = x
                                .coords()
                                .iter()
                                .zip(&elt.0)
                                .zip(g.invariant_factors())
                                .map(|((&a, &b), &d)| (a * b) as f64 / d as f64)
                                .sum();
                            let t = std::f64::consts::TAU * angle;
                            (t.cos() - 1.0).abs() + t.sin().abs() > 1e-9
                        })
                        .map(|(_, m)| m)
                        .sum();
                    moved == 1
                })
                .collect();
            assert_eq!(v.pseudoreflections(), expected);
        }
    }
}

#[test]
fn cyclic_checks_match_brute_force_units() {
    // Aut(Z/n) is the unit group; orbits of Aut_V by direct search over units.
    for n in [3u64, 4, 5, 7, 8, 9] {
        let g = group(&[n]);
        let all = bijective_endomorphisms(&g);
        for mult in multiplicity_maps(n as usize, 2, 2) {
            let orbits = brute_force_orbits(&all, &mult);
            let s = aut_v_subgroup(&g, &mult, DEFAULT_CAP).unwrap();
            let got: Vec<Vec<usize>> = orbit_partition(&s)
                .orbits
                .iter()
                .map(|o| o.characters.iter().map(|c| g.index_of(c)).collect())
                .collect();
            assert_eq!(got, orbits);
            let entries: Vec<_> = mult
                .iter()
                .enumerate()
                .filter(|(_, &m)| m > 0)
                .map(|(i, &m)| (g.character_at(i), m))
                .collect();
            let v = Representation::new(g.clone(), entries).unwrap();
            for p in g.prime_divisors() {
                let a = check_cyclic_general(&v, p, DEFAULT_CAP).unwrap();
                let b = check_lines_generators(&v, p, DEFAULT_CAP).unwrap();
                assert_eq!(a.is_certified(), b.is_certified());
                if let PrimeVerdict::Certified(c) = a {
                    assert!(neutrep_core::criteria::verify_certificate(&v, &c).unwrap());
                }
            }
        }
    }
}

#[test]
fn three_by_three_examples() {
    // (Z/3)^2 has 48 automorphisms; distinct multiplicities leave only the identity.
    let g = group(&[3, 3]);
    let all = bijective_endomorphisms(&g);
    assert_eq!(all.len(), 48);
    let mut mult = [0; 9];
    mult[index(&g, &[1, 0])] = 1;
    mult[index(&g, &[0, 1])] = 2;
    mult[index(&g, &[1, 1])] = 4;
    let preserving = all
        .iter()
        .filter(|perm| perm.iter().enumerate().all(|(i, &j)| mult[i] == mult[j]))
        .count();
    assert_eq!(preserving, 1);
    let mut mult = [0; 9];
    for c in [[1, 0], [0, 1], [1, 1]] {
        mult[index(&g, &c)] = 1;
    }
    let swap = index(&g, &[0, 1]);
    assert!(all.iter().any(|perm| {
        perm.iter().enumerate().all(|(i, &j)| mult[i] == mult[j])
            && perm[index(&g, &[1, 0])] == swap
    }));
}

#[test]
fn easy_cyclic_never_stands_alone_on_cyclic_sweep() {
    use neutrep_core::criteria::check_easy_cyclic;
    use neutrep_core::search::{cyclic_multiplicity_maps, cyclic_representation};
    for n in [2u64, 3, 4, 5, 6, 8, 9, 12] {
        for support in cyclic_multiplicity_maps(n, 4) {
            let v = cyclic_representation(n, &support).unwrap();
            for p in v.group().prime_divisors() {
                if check_easy_cyclic(&v, p).unwrap().is_certified() {
                    assert!(check_cyclic_general(&v, p, DEFAULT_CAP)
                        .unwrap()
                        .is_certified());
                }
            }
            let r = neutrep_core::criteria::neutrality_report(&v, DEFAULT_CAP).unwrap();
            assert!(r
                .primes
                .iter()
                .all(|e| e.diagnostics.iter().all(|d| !d.contains("no orbit-based"))));
        }
    }
}
