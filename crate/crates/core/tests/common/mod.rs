#![allow(dead_code)]

use dbo_core::lattice::{AxisBox, Coords, LatticePoint, WeightedSequence};
use dbo_core::tensor::Tensor;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn rc(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn cube_points(d: usize, r: i64) -> Vec<Coords> {
    AxisBox::cube(d, r).points().collect()
}

pub fn random_sequence(rng: &mut ChaCha8Rng, d: usize, r: i64) -> WeightedSequence {
    WeightedSequence::new(
        d,
        AxisBox::cube(d, r),
        cube_points(d, r)
            .into_iter()
            .map(|p| (LatticePoint::from(p), rc(rng)))
            .collect::<Vec<_>>(),
    )
    .unwrap()
}

/// Dense tensor with every entry drawn independently on the radius-`r` cube.
pub fn random_dense(rng: &mut ChaCha8Rng, d: usize, r: i64) -> Tensor {
    let n = cube_points(d, r).len();
    let values = (0..n * n * n).map(|_| rc(rng)).collect();
    Tensor::dense(d, r, values).unwrap()
}

/// `T(f, g)_j` by a plain triple loop over explicit point lists.
pub fn naive_apply(t: &Tensor, f: &WeightedSequence, g: &WeightedSequence, js: &[Coords]) -> Vec<Complex64> {
    js.iter()
        .map(|j| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, fk) in f.iter() {
                for (l, gl) in g.iter() {
                    acc += t.eval(j, k.coords(), l.coords()) * fk * gl;
                }
            }
            acc
        })
        .collect()
}

pub fn rel_err(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / (1.0 + a.norm().max(b.norm()))
}

pub fn bracket(x: f64) -> f64 {
    (1.0 + x * x).sqrt()
}

pub fn norm(v: &[i64]) -> f64 {
    v.iter().map(|x| (x * x) as f64).sum::<f64>().sqrt()
}

pub fn diff(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn unit(d: usize, m: usize, s: i64) -> Vec<i64> {
    let mut v = vec![0; d];
    v[m] = s;
    v
}
