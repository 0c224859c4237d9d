use braidstat::braided::BraidedSpace;
use braidstat::builtins::space_by_name;
use braidstat::rack::Rack;
use braidstat::symstats::*;
use braidstat::{Caps, Error, Field};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

fn caps() -> Caps {
    Caps::default()
}

/// A permutation of 0..n with consecutive cycles of the given lengths.
fn perm_of(ct: &[usize]) -> Vec<usize> {
    let mut p = Vec::new();
    let mut a = 0;
    for &l in ct {
        for i in 0..l {
            p.push(a + (i + 1) % l);
        }
        a += l;
    }
    p
}

/// tr(∧^k Perm)(σ) by brute force: e_S ↦ ±e_{σ(S)}, diagonal iff σ(S) = S,
/// with sign the parity of σ restricted to the sorted set S.
fn brute_perm_wedge(ct: &[usize], k: usize) -> i64 {
    let p = perm_of(ct);
    let n = p.len();
    let mut total = 0;
    for mask in 0u32..1 << n {
        if mask.count_ones() as usize != k {
            continue;
        }
        let s: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        if !s.iter().all(|&i| mask >> p[i] & 1 == 1) {
            continue;
        }
        // positions of images in s
        let img: Vec<usize> = s.iter().map(|&i| s.iter().position(|&j| j == p[i]).unwrap()).collect();
        let mut inv = 0;
        for a in 0..img.len() {
            for b in a + 1..img.len() {
                if img[a] > img[b] {
                    inv += 1;
                }
            }
        }
        total += if inv % 2 == 0 { 1 } else { -1 };
    }
    total
}

/// tr(∧^k std) from eigenvalues: all ℓ-th roots of unity per cycle, one
/// eigenvalue 1 removed; elementary symmetric polynomials in complex floats.
fn eigen_std_wedge(ct: &[usize], k: usize) -> i64 {
    let mut eig: Vec<(f64, f64)> = Vec::new();
    for &l in ct {
        for j in 0..l {
            let a = 2.0 * std::f64::consts::PI * j as f64 / l as f64;
            eig.push((a.cos(), a.sin()));
        }
    }
    let pos = eig.iter().position(|&(re, im)| (re - 1.0).abs() < 1e-12 && im.abs() < 1e-12).unwrap();
    eig.remove(pos);
    let mut e = vec![(0.0f64, 0.0f64); eig.len() + 1];
    e[0] = (1.0, 0.0);
    for &(re, im) in &eig {
        for j in (1..e.len()).rev() {
            let (a, b) = e[j - 1];
            e[j] = (e[j].0 + a * re - b * im, e[j].1 + a * im + b * re);
        }
    }
    let (re, im) = e.get(k).copied().unwrap_or((0.0, 0.0));
    assert!(im.abs() < 1e-6);
    re.round() as i64
}

#[test]
fn partitions_are_descending_and_counted() {
    let counts = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77];
    for (n, &c) in counts.iter().enumerate() {
        let ps = partitions(n);
        assert_eq!(ps.len(), c);
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
    }
    assert_eq!(partitions(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
}

#[test]
fn class_sizes_sum_to_factorial() {
    for n in 1..=10 {
        let s: u128 = partitions(n).iter().map(|ct| class_size(ct)).sum();
        assert_eq!(s, (1..=n as u128).product::<u128>());
    }
}

#[test]
fn perm_wedge_matches_brute_force() {
    for n in 1..=8 {
        for ct in partitions(n) {
            for k in 0..=n {
                assert_eq!(wedge_trace(&ct, k, Which::Perm), brute_perm_wedge(&ct, k), "ct={ct:?} k={k}");
            }
        }
    }
}

#[test]
fn std_wedge_matches_eigenvalues() {
    for n in 1..=10 {
        for ct in partitions(n) {
            for k in 0..n {
                assert_eq!(wedge_trace(&ct, k, Which::Std), eigen_std_wedge(&ct, k), "ct={ct:?} k={k}");
            }
        }
    }
}

#[test]
fn wedge_trace_examples() {
    for n in 1..=9 {
        let id = vec![1; n];
        let cyc = vec![n];
        for k in 0..n {
            assert_eq!(wedge_trace(&id, k, Which::Std), hook_dim(n, k) as i64);
            assert_eq!(wedge_trace(&cyc, k, Which::Std), if k % 2 == 0 { 1 } else { -1 });
        }
        for ct in partitions(n) {
            assert_eq!(wedge_trace(&ct, 0, Which::Perm), 1);
        }
    }
}

#[test]
fn perm_series_is_the_product_over_cycles() {
    // multiply the per-cycle factors by hand and compare coefficientwise
    for n in 1..=10 {
        for ct in partitions(n) {
            let mut poly = vec![1i64];
            for &l in &ct {
                let mut f = vec![0i64; l + 1];
                f[0] = 1;
                f[l] = -(-1i64).pow(l as u32);
                let mut out = vec![0i64; poly.len() + l];
                for (i, a) in poly.iter().enumerate() {
                    for (j, b) in f.iter().enumerate() {
                        out[i + j] += a * b;
                    }
                }
                poly = out;
            }
            let got: Vec<i64> = (0..=n).map(|k| wedge_trace(&ct, k, Which::Perm)).collect();
            assert_eq!(got, poly);
        }
    }
}

#[test]
fn irr_identity() {
    assert!(irr_identity_check(1).unwrap());
    let rows = irr_identity_rows(2).unwrap();
    // identity type: 1 − 1 = 0; transposition: 1 − (−1) = 2 = n·1
    assert_eq!(rows[0].cycle_type, "2");
    assert_eq!(rows[0].n_times_value, 2);
    assert_eq!(rows[1].n_times_value, 0);
    assert_eq!(irr_identity_rows(8).unwrap().len(), 22);
    for n in 1..=12 {
        assert!(irr_identity_check(n).unwrap(), "n={n}");
    }
    assert!(irr_identity_check(13).is_err());
}

#[test]
fn decompositions_of_one_dimensional_spaces() {
    let f = Field::rational();
    let triv = BraidedSpace::kappa_zeta(&f, &f.one()).unwrap();
    let sign = BraidedSpace::kappa_zeta(&f, &f.from_int(-1)).unwrap();
    for n in 1..=8 {
        let d = sn_decompose(&triv, n, &caps()).unwrap();
        assert_eq!(d.hooks, vec![HookMultiplicity { partition: vec![n], multiplicity: 1 }]);
        let d = sn_decompose(&sign, n, &caps()).unwrap();
        assert_eq!(d.hooks, vec![HookMultiplicity { partition: vec![1; n], multiplicity: 1 }]);
        assert_eq!(d.non_hook_norm, 0);
    }
}

#[test]
fn wedge_space_decomposes_into_doubled_hooks() {
    let v = space_by_name("kappa_wedge", None).unwrap();
    for n in 1..=8 {
        let d = sn_decompose(&v, n, &caps()).unwrap();
        let want: Vec<HookMultiplicity> =
            (0..n).map(|i| HookMultiplicity { partition: hook_partition(n, i), multiplicity: 2 }).collect();
        assert_eq!(d.hooks, want, "n={n}");
        assert_eq!(d.non_hook_dim, 0);
        assert_eq!(d.non_hook_norm, 0);
        let total: u128 = (0..n).map(|i| 2 * hook_dim(n, i)).sum();
        assert_eq!(total, 1u128 << n);
    }
}

#[test]
fn two_letter_permutation_module() {
    // C²⊗ⁿ with the plain swap: χ(σ) = 2^{#cycles}; hooks (n) and (n−1,1)
    // appear with multiplicities n+1 and n−1, the rest has dimension
    // 2ⁿ − (n+1) − (n−1)²
    let f = Field::rational();
    let v = BraidedSpace::rack_plain(&f, &Rack::trivial(2));
    for n in 2..=7 {
        let d = sn_decompose(&v, n, &caps()).unwrap();
        for (ct, x) in &d.character {
            let parts = ct.split('.').count();
            assert_eq!(*x, 1 << parts);
        }
        assert_eq!(d.hooks[0], HookMultiplicity { partition: vec![n], multiplicity: n as i64 + 1 });
        assert_eq!(d.hooks[1], HookMultiplicity { partition: hook_partition(n, 1), multiplicity: n as i64 - 1 });
        assert_eq!(d.hooks.len(), 2);
        let rest = (1u128 << n) - (n as u128 + 1) - (n as u128 - 1).pow(2);
        assert_eq!(d.non_hook_dim, rest);
        assert_eq!(d.non_hook_norm > 0, rest > 0);
    }
}

#[test]
fn decomposition_errors() {
    let (fz, z) = braidstat::builtins::zeta_field(3).unwrap();
    let v = BraidedSpace::kappa_zeta(&fz, &z).unwrap();
    assert_eq!(sn_decompose(&v, 3, &caps()).unwrap_err(), Error::NotPermutational);
    let f5 = Field::finite(5).unwrap();
    let v = BraidedSpace::kappa_zeta(&f5, &f5.one()).unwrap();
    assert_eq!(sn_decompose(&v, 3, &caps()).unwrap_err(), Error::PositiveCharacteristic);
    let joyce = space_by_name("rack:joyce", None).unwrap();
    assert_eq!(sn_decompose(&joyce, 3, &caps()).unwrap_err(), Error::NotPermutational);
}

#[test]
fn trace_convolution_examples() {
    let r = trace_convolution_check(3, 3, &caps()).unwrap();
    assert_eq!(r.polynomials, 18);
    assert!(r.pass);
    for n in 1..=6 {
        assert!(trace_convolution_check(5, n, &caps()).unwrap().pass, "q=5 n={n}");
    }
    for n in 1..=8 {
        assert!(trace_convolution_check(3, n, &caps()).unwrap().pass, "q=3 n={n}");
    }
    // an odd-degree irreducible has d₂ = 2; an even-degree factor gives 0
    assert_eq!(signed_mobius_convolution(&[3]), 2);
    assert_eq!(signed_mobius_convolution(&[2, 1]), 0);
    assert_eq!(signed_mobius_convolution(&[1, 1, 1]), 8);
}

proptest! {
    #![proptest_config(Config { rng_seed: RngSeed::Fixed(0x5eed_0004), failure_persistence: None, ..Config::default() })]

    #[test]
    fn convolution_is_multiplicative(a in proptest::collection::vec(1usize..6, 0..4), b in proptest::collection::vec(1usize..6, 0..4)) {
        let ab: Vec<usize> = a.iter().chain(&b).copied().collect();
        prop_assert_eq!(signed_mobius_convolution(&ab), signed_mobius_convolution(&a) * signed_mobius_convolution(&b));
    }

    #[test]
    fn std_series_times_one_plus_x_is_perm(parts in proptest::collection::vec(1usize..5, 1..5)) {
        let ct = cycle_type(&parts);
        let n: usize = ct.iter().sum();
        for k in 0..=n {
            let lhs = wedge_trace(&ct, k, Which::Std) + if k > 0 { wedge_trace(&ct, k - 1, Which::Std) } else { 0 };
            prop_assert_eq!(lhs, wedge_trace(&ct, k, Which::Perm));
        }
    }
}
