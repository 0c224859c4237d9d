use std::collections::{BTreeSet, HashSet, VecDeque};

use braidstat::group::FiniteGroup;
use braidstat::hurwitz::*;
use braidstat::rack::transpositions;
use braidstat::{Caps, Error, Q};
use num_bigint::BigInt;

fn caps() -> Caps {
    Caps::default()
}

fn s3() -> (FiniteGroup, Vec<usize>) {
    let g = FiniteGroup::symmetric(3).unwrap();
    let t = transpositions(&g);
    (g, t)
}

fn z2() -> (FiniteGroup, Vec<usize>) {
    (FiniteGroup::cyclic(2).unwrap(), vec![1])
}

fn three_cycles(g: &FiniteGroup) -> Vec<usize> {
    (0..g.size()).filter(|&x| g.order_of(x) == 3).collect()
}

/// |C|ⁿ/|G| · Σ_χ χ(c)ⁿ / χ(1)^{n−2}, with the character values at c given.
fn frobenius_count(class_size: usize, group_order: usize, chars: &[(i64, i64)], n: u32) -> Q {
    let mut s = Q::zero();
    for &(deg, val) in chars {
        let term = Q::from_int(val).pow(n as u64).div(&Q::from_int(deg).pow(n as u64 - 2)).unwrap();
        s = s.add(&term);
    }
    s.mul(&Q::from_int(class_size as i64).pow(n as u64)).div(&Q::from_int(group_order as i64)).unwrap()
}

#[test]
fn s3_transposition_counts() {
    let (g, t) = s3();
    let nc = NielsenClass::new(&g, &t, 4, true, true).unwrap();
    assert_eq!(nielsen_count(&nc, &caps()).unwrap(), 24);
    let nc = NielsenClass::new(&g, &t, 4, true, false).unwrap();
    assert_eq!(nielsen_count(&nc, &caps()).unwrap(), 27);
    let nc = NielsenClass::new(&g, &t, 3, true, false).unwrap();
    assert_eq!(nielsen_count(&nc, &caps()).unwrap(), 0);
}

#[test]
fn z2_counts() {
    let (g, r) = z2();
    for n in 1..=10 {
        let nc = NielsenClass::new(&g, &r, n, true, false).unwrap();
        assert_eq!(nielsen_count(&nc, &caps()).unwrap(), u64::from(n % 2 == 0));
    }
}

#[test]
fn product_one_counts_match_character_sums() {
    // S₃ at a transposition: characters (deg, value) = (1,1), (1,−1), (2,0)
    let (g, t) = s3();
    for n in 2..=6u32 {
        let want = frobenius_count(3, 6, &[(1, 1), (1, -1), (2, 0)], n);
        let nc = NielsenClass::new(&g, &t, n as usize, true, false).unwrap();
        let got = nielsen_count(&nc, &caps()).unwrap();
        assert_eq!(Q::from_int(got as i64), want, "S3 n={n}");
        assert_eq!(product_one_count_class_algebra(&g, &t, n as usize), BigInt::from(got));
    }
    // D₄: linear characters are ±1 everywhere; the 2-dimensional one is
    // 0 off the centre and −2 at the central involution
    let d4 = FiniteGroup::dihedral(4).unwrap();
    for c in d4.conjugacy_classes() {
        if c == vec![d4.identity()] {
            continue;
        }
        let x = c[0];
        let linear: Vec<(i64, i64)> = match (c.len(), d4.order_of(x)) {
            (1, 2) => vec![(1, 1), (1, 1), (1, 1), (1, 1), (2, -2)],
            (2, 4) => vec![(1, 1), (1, 1), (1, -1), (1, -1), (2, 0)],
            (2, 2) => vec![(1, 1), (1, -1), (1, 1), (1, -1), (2, 0)],
            other => panic!("unexpected class {other:?}"),
        };
        for n in 2..=6u32 {
            let want = frobenius_count(c.len(), 8, &linear, n);
            let nc = NielsenClass::new(&d4, &c, n as usize, true, false).unwrap();
            let got = nielsen_count(&nc, &caps()).unwrap();
            assert_eq!(Q::from_int(got as i64), want, "D4 class {c:?} n={n}");
        }
    }
}

#[test]
fn s3_single_orbit() {
    let (g, t) = s3();
    let nc = NielsenClass::new(&g, &t, 4, true, true).unwrap();
    let os = braid_orbits(&nc, &caps()).unwrap();
    assert_eq!(os.tuples, 24);
    assert_eq!(os.orbits.len(), 1);
    assert_eq!(os.orbits[0].size, 24);
    assert_eq!(os.orbits[0].subgroup_order, 6);
    assert_eq!(os.orbits[0].product, g.identity());
    assert!(os.invariants_constant);
    let (g, r) = z2();
    let os = braid_orbits(&NielsenClass::new(&g, &r, 6, true, false).unwrap(), &caps()).unwrap();
    assert_eq!((os.tuples, os.orbits.len()), (1, 1));
}

#[test]
fn moves_are_inverse_and_satisfy_braid_relations() {
    let (g, t) = s3();
    for n in 2..=5 {
        let nc = NielsenClass::new(&g, &t, n, false, false).unwrap();
        let tuples = nielsen_tuples(&nc, &caps()).unwrap();
        assert_eq!(tuples.len(), 3usize.pow(n as u32));
        for tup in &tuples {
            let prod = |x: &[usize]| x.iter().fold(g.identity(), |a, &b| g.mul(a, b));
            for i in 1..n {
                let m = hurwitz_move(&g, tup, i, false);
                assert_eq!(prod(&m), prod(tup));
                assert_eq!(&hurwitz_move(&g, &m, i, true), tup);
                assert_eq!(&hurwitz_move(&g, &hurwitz_move(&g, tup, i, true), i, false), tup);
                for j in 1..n {
                    let ap = |x: &[usize], k: usize| hurwitz_move(&g, x, k, false);
                    if j == i + 1 {
                        assert_eq!(ap(&ap(&ap(tup, i), j), i), ap(&ap(&ap(tup, j), i), j));
                    } else if j > i + 1 {
                        assert_eq!(ap(&ap(tup, i), j), ap(&ap(tup, j), i));
                    }
                }
            }
        }
    }
}

#[test]
fn orbit_reps_are_lex_minimal_and_orbits_are_closed() {
    let g = FiniteGroup::symmetric(4).unwrap();
    let t = transpositions(&g);
    let nc = NielsenClass::new(&g, &t, 4, true, false).unwrap();
    let os = braid_orbits(&nc, &caps()).unwrap();
    let mut covered = 0;
    for orb in &os.orbits {
        // brute orbit closure from the representative
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([orb.rep.clone()]);
        let mut queue = VecDeque::from([orb.rep.clone()]);
        while let Some(x) = queue.pop_front() {
            for i in 1..4 {
                for inv in [false, true] {
                    let y = hurwitz_move(&g, &x, i, inv);
                    if seen.insert(y.clone()) {
                        queue.push_back(y);
                    }
                }
            }
        }
        assert_eq!(seen.len(), orb.size);
        assert_eq!(seen.iter().next().unwrap(), &orb.rep);
        covered += orb.size;
    }
    assert_eq!(covered, os.tuples);
    assert!(os.invariants_constant);
}

#[test]
fn qpower_examples() {
    let (g, t) = s3();
    let nc = NielsenClass::new(&g, &t, 4, true, true).unwrap();
    let r = qpower_on_orbits(&nc, 5, &caps()).unwrap();
    assert!(r.descends);
    assert_eq!((r.orbits, r.fixed), (1, 1));
    assert_eq!(r.status, "model");
    // q ≡ 1 mod exp(G) fixes every orbit
    let s4 = FiniteGroup::symmetric(4).unwrap();
    let t4 = transpositions(&s4);
    let nc = NielsenClass::new(&s4, &t4, 4, true, false).unwrap();
    let q = s4.exponent() + 1;
    let r = qpower_on_orbits(&nc, q, &caps()).unwrap();
    assert!(r.descends);
    assert_eq!(r.fixed, r.orbits);
    assert_eq!(qpower_on_orbits(&NielsenClass::new(&g, &t, 4, true, true).unwrap(), 2, &caps()).unwrap_err(), Error::QPowerLeavesR);
}

#[test]
fn qpower_inverts_three_cycle_orbits() {
    // entries commute, so orbits are multisets {a × c, b × c²} with
    // a + 2b ≡ 0 mod 3; squaring swaps a and b
    let (g, _) = s3();
    let c = three_cycles(&g);
    for n in 1..=7usize {
        let nc = NielsenClass::new(&g, &c, n, true, false).unwrap();
        let r = qpower_on_orbits(&nc, 2, &caps()).unwrap();
        let pairs: Vec<(usize, usize)> = (0..=n).map(|a| (a, n - a)).filter(|(a, b)| (a + 2 * b) % 3 == 0).collect();
        assert_eq!(r.orbits, pairs.len(), "n={n}");
        assert_eq!(r.fixed, pairs.iter().filter(|(a, b)| a == b).count(), "n={n}");
        assert!(r.descends);
    }
}

#[test]
fn component_tables() {
    let (g, r) = z2();
    let tab = component_table(&g, &r, 2..=10, 3, &caps()).unwrap();
    for row in &tab.rows {
        assert_eq!(row.orbits, usize::from(row.n % 2 == 0));
        assert_eq!(row.fixed_orbits, row.orbits);
    }
    assert!(tab.periodic);
    assert_eq!(tab.period, Some(2));
    let (g, t) = s3();
    let tab = component_table(&g, &t, 4..=9, 5, &caps()).unwrap();
    let counts: Vec<usize> = tab.rows.iter().map(|r| r.orbits).collect();
    assert_eq!(counts, vec![1, 0, 1, 0, 1, 0]);
    assert!(tab.periodic);
    assert_eq!(eventual_period(&[3, 2, 5, 1, 4, 1, 4, 1, 4]), Some((2, 3)));
    assert_eq!(eventual_period(&[1, 2, 3]), None);
}

#[test]
fn point_estimates() {
    assert_eq!(point_estimate(3, 4, 1, 1).unwrap(), BigInt::from(54));
    assert_eq!(point_estimate(7, 5, 0, 1).unwrap(), BigInt::from(0));
    assert!(point_estimate(1, 4, 1, 1).is_err());
    let (g, r) = z2();
    for n in (2..=10).step_by(2) {
        let nc = NielsenClass::new(&g, &r, n, true, true).unwrap();
        let qp = qpower_on_orbits(&nc, 3, &caps()).unwrap();
        assert_eq!(qp.status, "exact");
        let est = point_estimate(3, n as u32, qp.fixed as u64, 1).unwrap();
        assert_eq!(est, BigInt::from(z2_direct_model_count(3, n, &caps()).unwrap()), "n={n}");
    }
}

#[test]
fn multidegrees_partition_the_tuples() {
    let (g, _) = s3();
    let r: Vec<usize> = (0..g.size()).filter(|&x| x != g.identity()).collect();
    let classes = classes_in(&g, &r);
    assert_eq!(classes.len(), 2);
    for n in 2..=4 {
        let all = nielsen_count(&NielsenClass::new(&g, &r, n, true, false).unwrap(), &caps()).unwrap();
        let mut sum = 0;
        let mut reps = HashSet::new();
        for a in 0..=n {
            let nc = NielsenClass::new(&g, &r, n, true, false).unwrap().with_multidegree(vec![a, n - a]).unwrap();
            let os = braid_orbits(&nc, &caps()).unwrap();
            sum += os.tuples as u64;
            for o in os.orbits {
                assert!(reps.insert(o.rep));
            }
        }
        assert_eq!(sum, all);
    }
    assert!(NielsenClass::new(&g, &r, 3, true, false).unwrap().with_multidegree(vec![1, 1]).is_err());
    assert_eq!(NielsenClass::new(&g, &[1], 3, true, false).unwrap_err(), Error::NotConjugacyClosed);
}

#[test]
fn tuple_cap() {
    let (g, t) = s3();
    let nc = NielsenClass::new(&g, &t, 20, true, false).unwrap();
    assert!(nielsen_count(&nc, &caps()).unwrap_err().is_cap());
}
