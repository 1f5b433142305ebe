mod common;

use common::*;
use dbo_core::lattice::{LatticePoint, MultiIndex};
use dbo_core::norms::bt_seminorm;
use dbo_core::tensor::{Matrix, Slot, SymbolFunction, Tensor, TorusCoefficient, Transpose};
use num_complex::Complex64;
use proptest::prelude::*;

fn binom(n: i64, k: i64) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `Δ₂^α Δ₃^β Θ(j, k, ℓ)` by binomial expansion of every factor.
fn difference_oracle(t: &Tensor, alpha: &[i64], beta: &[i64], j: &[i64], k: &[i64], l: &[i64]) -> Complex64 {
    let d = j.len();
    // Each factor: (slot, axis, sign, power).
    let mut factors = Vec::new();
    for m in 0..d {
        if alpha[m] != 0 {
            factors.push((2, m, alpha[m].signum(), alpha[m].abs()));
        }
        if beta[m] != 0 {
            factors.push((3, m, beta[m].signum(), beta[m].abs()));
        }
    }
    fn rec(t: &Tensor, factors: &[(u8, usize, i64, i64)], j: Vec<i64>, k: Vec<i64>, l: Vec<i64>) -> Complex64 {
        let Some((&(slot, m, s, a), rest)) = factors.split_first() else {
            return t.eval(&j, &k, &l);
        };
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..=a {
            let coef = binom(a, i) * if (a - i) % 2 == 0 { 1.0 } else { -1.0 };
            let (mut jj, mut kk, mut ll) = (j.clone(), k.clone(), l.clone());
            jj[m] += s * i;
            if slot == 2 {
                kk[m] += s * i;
            } else {
                ll[m] += s * i;
            }
            acc += rec(t, rest, jj, kk, ll) * coef;
        }
        acc
    }
    rec(t, &factors, j.to_vec(), k.to_vec(), l.to_vec())
}

#[test]
fn shift_of_origin_entry() {
    let o = LatticePoint::origin(1);
    let t = Tensor::single_entry(&o, &o, &o, c(1.0)).unwrap();
    let s = t.shift(Slot::Two, 0, 1).unwrap();
    for j in cube_points(1, 3) {
        for k in cube_points(1, 3) {
            for l in cube_points(1, 3) {
                let v = s.eval(&j, &k, &l);
                if j[0] == -1 && k[0] == -1 && l[0] == 0 {
                    assert_eq!(v, c(1.0));
                } else {
                    assert_eq!(v, c(0.0));
                }
            }
        }
    }
}

#[test]
fn difference_of_linear_tensor() {
    let t = Tensor::dense_from_fn(1, 6, |j, k, _| c((j[0] + k[0]) as f64));
    let dt = t
        .finite_difference(&MultiIndex::new(&[1]), &MultiIndex::zero(1))
        .unwrap();
    for j in -4..=4 {
        for k in -4..=4 {
            assert_eq!(dt.eval(&[j], &[k], &[0]), c(2.0));
        }
    }
}

#[test]
fn differences_match_shift_and_subtract_on_dense_tensor() {
    let mut g = rng(11);
    let t = random_dense(&mut g, 1, 3);
    let dt = t
        .finite_difference(&MultiIndex::new(&[2]), &MultiIndex::new(&[-1]))
        .unwrap();
    let mut max: f64 = 0.0;
    for j in cube_points(1, 5) {
        for k in cube_points(1, 5) {
            for l in cube_points(1, 5) {
                let want = difference_oracle(&t, &[2], &[-1], &j, &k, &l);
                max = max.max((dt.eval(&j, &k, &l) - want).norm());
            }
        }
    }
    assert!(max < 1e-12, "{max}");
}

#[test]
fn differences_in_two_dimensions() {
    let mut g = rng(12);
    let t = random_dense(&mut g, 2, 1);
    let (a, b) = ([1, -1], [0, 2]);
    let dt = t.finite_difference(&MultiIndex::new(&a), &MultiIndex::new(&b)).unwrap();
    for j in cube_points(2, 2) {
        for k in cube_points(2, 2) {
            for l in cube_points(2, 2) {
                let want = difference_oracle(&t, &a, &b, &j, &k, &l);
                assert!((dt.eval(&j, &k, &l) - want).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn single_differences_are_shift_minus_identity() {
    let mut g = rng(13);
    for d in 1..=2 {
        let t = random_dense(&mut g, d, if d == 1 { 3 } else { 1 });
        for m in 0..d {
            for s in [-1i64, 1] {
                for (slot, alpha, beta) in [
                    (Slot::Two, unit(d, m, s), vec![0; d]),
                    (Slot::Three, vec![0; d], unit(d, m, s)),
                ] {
                    let dt = t
                        .finite_difference(&MultiIndex::new(&alpha), &MultiIndex::new(&beta))
                        .unwrap();
                    let sh = t.shift(slot, m, s).unwrap();
                    let r = if d == 1 { 4 } else { 2 };
                    for j in cube_points(d, r) {
                        for k in cube_points(d, r) {
                            for l in cube_points(d, r) {
                                let want = sh.eval(&j, &k, &l) - t.eval(&j, &k, &l);
                                assert_eq!(dt.eval(&j, &k, &l), want);
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn slot_differences_commute() {
    let mut g = rng(14);
    let t = random_dense(&mut g, 1, 3);
    let a = MultiIndex::new(&[1]);
    let b = MultiIndex::new(&[-2]);
    let z = MultiIndex::zero(1);
    let both = t.finite_difference(&a, &b).unwrap();
    let three_then_two = t.finite_difference(&z, &b).unwrap().finite_difference(&a, &z).unwrap();
    let two_then_three = t.finite_difference(&a, &z).unwrap().finite_difference(&z, &b).unwrap();
    for j in cube_points(1, 3) {
        for k in cube_points(1, 3) {
            for l in cube_points(1, 3) {
                let x = both.eval(&j, &k, &l);
                assert!((x - three_then_two.eval(&j, &k, &l)).norm() < 1e-12);
                assert!((x - two_then_three.eval(&j, &k, &l)).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn convolution_families_live_on_the_plane() {
    let v = TorusCoefficient::new(
        dbo_core::lattice::WeightedSequence::from_entries(
            2,
            [
                (LatticePoint::new(&[0, 0]).unwrap(), c(1.0)),
                (LatticePoint::new(&[1, -1]).unwrap(), c(0.5)),
            ],
        )
        .unwrap(),
        4.0,
    );
    let families = [
        Tensor::theta_phi(2, SymbolFunction::inverse_bracket_power(1.0)),
        Tensor::theta2(2, SymbolFunction::inverse_bracket_power(3.0)),
        Tensor::monomial(MultiIndex::new(&[1, 0]), MultiIndex::new(&[0, 2])).unwrap(),
    ];
    for t in &families {
        for j in cube_points(2, 5) {
            for k in cube_points(2, 5) {
                for l in cube_points(2, 5) {
                    let v = t.eval(&j, &k, &l);
                    let on = add(&k, &l) == j.to_vec();
                    if !on {
                        assert_eq!(v, c(0.0));
                    }
                    if v != c(0.0) {
                        assert!(t.hint().contains(&j, &k, &l));
                    }
                }
            }
        }
    }
    let tv = Tensor::multiplication(v);
    for j in cube_points(2, 4) {
        for k in cube_points(2, 4) {
            for l in cube_points(2, 4) {
                let off = diff(&diff(&j, &k), &l);
                let want = if off == [0, 0] {
                    c(1.0)
                } else if off == [1, -1] {
                    c(0.5)
                } else {
                    c(0.0)
                };
                assert_eq!(tv.eval(&j, &k, &l), want);
            }
        }
    }
}

#[test]
fn theta2_differences_vanish_only_for_constant_symbols() {
    let constant = Tensor::theta2(1, SymbolFunction::constant(c(2.0)));
    let decaying = Tensor::theta2(1, SymbolFunction::inverse_bracket_power(4.0));
    let a = MultiIndex::new(&[1]);
    let z = MultiIndex::zero(1);
    let dc = constant.finite_difference(&a, &z).unwrap();
    let dd = decaying.finite_difference(&a, &z).unwrap();
    let mut nonzero = 0;
    for j in cube_points(1, 4) {
        for k in cube_points(1, 4) {
            for l in cube_points(1, 4) {
                assert_eq!(dc.eval(&j, &k, &l), c(0.0));
                if dd.eval(&j, &k, &l) != c(0.0) {
                    nonzero += 1;
                }
            }
        }
    }
    assert!(nonzero > 0);
    // Concrete entry: Φ(0, 2) - Φ(0, 1) at (j, k, ℓ) = (1, 1, 0).
    let phi = |x: f64, y: f64| bracket(x.hypot(y)).powi(-4);
    let want = phi(0.0, 2.0) - phi(0.0, 1.0);
    assert!((dd.eval(&[1], &[1], &[0]).re - want).abs() < 1e-15);
}

#[test]
fn double_transpose_is_identity() {
    let mut g = rng(15);
    let t = random_dense(&mut g, 1, 4);
    for which in [Transpose::First, Transpose::Second] {
        let tt = t.transpose(which).transpose(which);
        for j in cube_points(1, 4) {
            for k in cube_points(1, 4) {
                for l in cube_points(1, 4) {
                    assert_eq!(tt.eval(&j, &k, &l), t.eval(&j, &k, &l));
                }
            }
        }
    }
    let x = t.transpose(Transpose::First);
    assert_eq!(x.eval(&[1], &[-2], &[3]), t.eval(&[-2], &[1], &[3]));
    let y = t.transpose(Transpose::Second);
    assert_eq!(y.eval(&[1], &[-2], &[3]), t.eval(&[3], &[-2], &[1]));
}

#[test]
fn transpose_of_constant_symbol_leaves_the_class() {
    // Δ₃ on the first transpose moves (j, ℓ), which shifts off the plane k = j + ℓ.
    let t = Tensor::theta_phi(1, SymbolFunction::constant(c(1.0))).transpose(Transpose::First);
    let z = MultiIndex::zero(1);
    let e = MultiIndex::new(&[1]);
    let small = bt_seminorm(&t, &z, &e, 4.0, 2, 10).unwrap().value;
    let large = bt_seminorm(&t, &z, &e, 4.0, 2, 40).unwrap().value;
    assert!(large >= 3.0 * small, "{small} {large}");
    // The commuting seminorms stay finite and stable.
    let a1 = bt_seminorm(&t, &e, &z, 4.0, 2, 10).unwrap().value;
    let a2 = bt_seminorm(&t, &e, &z, 4.0, 2, 40).unwrap().value;
    assert_eq!(a1, 0.0);
    assert_eq!(a2, 0.0);
}

fn banded(rng: &mut rand_chacha::ChaCha8Rng, d: usize, r: i64, band: i64) -> Matrix {
    Matrix::dense_from_fn(d, r, |j, k| {
        if j.iter().zip(k).all(|(a, b)| (a - b).abs() <= band) {
            rc(rng)
        } else {
            c(0.0)
        }
    })
}

#[test]
fn separable_matches_product_oracle() {
    let mut g = rng(16);
    for d in 1..=2 {
        let r = if d == 1 { 4 } else { 2 };
        let s1 = banded(&mut g, d, r, 1);
        let s2 = banded(&mut g, d, r, 2);
        let t = Tensor::separable(s1.clone(), s2.clone()).unwrap();
        for j in cube_points(d, r + 1) {
            for k in cube_points(d, r + 1) {
                for l in cube_points(d, r + 1) {
                    assert_eq!(t.eval(&j, &k, &l), s1.evaluate(&j, &k) * s2.evaluate(&j, &l));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn separable_consistency(seed in 0u64..10_000, d in 1usize..=2) {
        let mut g = rng(seed);
        let r = if d == 1 { 4 } else { 2 };
        let s1 = banded(&mut g, d, r, 1);
        let s2 = banded(&mut g, d, r, 1);
        let t = Tensor::separable(s1.clone(), s2.clone()).unwrap();
        let dense = t.materialize(r);
        for j in cube_points(d, r) {
            for k in cube_points(d, r) {
                for l in cube_points(d, r) {
                    let want = s1.evaluate(&j, &k) * s2.evaluate(&j, &l);
                    prop_assert_eq!(t.eval(&j, &k, &l), want);
                    prop_assert_eq!(dense.eval(&j, &k, &l), want);
                }
            }
        }
    }

    #[test]
    fn difference_is_linear(seed in 0u64..10_000, a in -2i64..=2, b in -2i64..=2) {
        let mut g = rng(seed);
        let t1 = random_dense(&mut g, 1, 2);
        let t2 = random_dense(&mut g, 1, 2);
        let sum = Tensor::dense_from_fn(1, 2, |j, k, l| t1.eval(j, k, l) + t2.eval(j, k, l));
        let (al, be) = (MultiIndex::new(&[a]), MultiIndex::new(&[b]));
        let (d1, d2, ds) = (
            t1.finite_difference(&al, &be).unwrap(),
            t2.finite_difference(&al, &be).unwrap(),
            sum.finite_difference(&al, &be).unwrap(),
        );
        for j in cube_points(1, 4) {
            for k in cube_points(1, 4) {
                for l in cube_points(1, 4) {
                    let lhs = ds.eval(&j, &k, &l);
                    let rhs = d1.eval(&j, &k, &l) + d2.eval(&j, &k, &l);
                    prop_assert!((lhs - rhs).norm() < 1e-12);
                }
            }
        }
    }
}
