//! Lattice points, multi-indices, power weights, finitely supported weighted
//! sequences on `Z^d`, and Hölder exponent arithmetic.
//!
//! Sequences are always finitely supported. Every norm in this module is an
//! exact finite sum over the stored entries.

use std::borrow::Borrow;
use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{check_dim, DboError, Result};

/// Inline coordinate storage; dimensions up to 4 never allocate.
pub type Coords = SmallVec<[i64; 4]>;

/// A point of `Z^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(Coords);

impl LatticePoint {
    pub fn new(coords: &[i64]) -> Result<Self> {
        if coords.is_empty() {
            return Err(DboError::InvalidParameter(
                "lattice points need d >= 1 coordinates".into(),
            ));
        }
        Ok(LatticePoint(Coords::from_slice(coords)))
    }

    pub fn origin(d: usize) -> Self {
        assert!(d >= 1, "dimension must be positive");
        LatticePoint(smallvec::smallvec![0; d])
    }

    /// `t * e_axis`, with `axis` counted from zero.
    pub fn unit(d: usize, axis: usize, t: i64) -> Self {
        let mut p = Self::origin(d);
        p.0[axis] = t;
        p
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// Euclidean norm `|k|`.
    pub fn norm(&self) -> f64 {
        euclid(&self.0)
    }

    pub fn sup_norm(&self) -> i64 {
        sup_norm(&self.0)
    }
}

impl Borrow<[i64]> for LatticePoint {
    fn borrow(&self) -> &[i64] {
        &self.0
    }
}

impl From<Coords> for LatticePoint {
    fn from(c: Coords) -> Self {
        LatticePoint(c)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

pub fn euclid(c: &[i64]) -> f64 {
    c.iter().map(|&x| (x as f64) * (x as f64)).sum::<f64>().sqrt()
}

pub fn sup_norm(c: &[i64]) -> i64 {
    c.iter().map(|x| x.abs()).max().unwrap_or(0)
}

/// Euclidean norm of `a - b`.
pub fn euclid_diff(a: &[i64], b: &[i64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| {
            let t = (x - y) as f64;
            t * t
        })
        .sum::<f64>()
        .sqrt()
}

/// Multi-index in `Z^d`. Components may be negative (difference operators
/// use the sign to pick forward or backward differences).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Coords);

impl MultiIndex {
    pub fn new(entries: &[i64]) -> Self {
        MultiIndex(Coords::from_slice(entries))
    }

    pub fn zero(d: usize) -> Self {
        MultiIndex(smallvec::smallvec![0; d])
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `|α| = Σ |α_m|`.
    pub fn abs_sum(&self) -> i64 {
        self.0.iter().map(|a| a.abs()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&a| a >= 0)
    }

    /// All multi-indices of dimension `d` with `|α| <= max_abs`, negative
    /// components included, in lexicographic order.
    pub fn all_up_to(d: usize, max_abs: i64) -> Vec<MultiIndex> {
        let cube = AxisBox::cube(d, max_abs);
        cube.points()
            .filter(|p| p.iter().map(|a| a.abs()).sum::<i64>() <= max_abs)
            .map(MultiIndex)
            .collect()
    }
}

/// Axis-aligned box `Π [lo_m, hi_m]` in `Z^d`. Empty when some `lo_m > hi_m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxisBox {
    pub lo: Coords,
    pub hi: Coords,
}

impl AxisBox {
    pub fn new(lo: &[i64], hi: &[i64]) -> Self {
        assert_eq!(lo.len(), hi.len());
        AxisBox {
            lo: Coords::from_slice(lo),
            hi: Coords::from_slice(hi),
        }
    }

    /// The cube `|k|_∞ <= r`.
    pub fn cube(d: usize, r: i64) -> Self {
        AxisBox {
            lo: smallvec::smallvec![-r; d],
            hi: smallvec::smallvec![r; d],
        }
    }

    /// The cube of radius `r` centred at `c`.
    pub fn around(c: &[i64], r: i64) -> Self {
        AxisBox {
            lo: c.iter().map(|&x| x - r).collect(),
            hi: c.iter().map(|&x| x + r).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lo.iter().zip(&self.hi).any(|(l, h)| l > h)
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        p.iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(x, (l, h))| l <= x && x <= h)
    }

    pub fn intersect(&self, other: &AxisBox) -> AxisBox {
        AxisBox {
            lo: self.lo.iter().zip(&other.lo).map(|(a, b)| *a.max(b)).collect(),
            hi: self.hi.iter().zip(&other.hi).map(|(a, b)| *a.min(b)).collect(),
        }
    }

    pub fn volume(&self) -> usize {
        if self.is_empty() {
            return 0;
        }
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| (h - l + 1) as usize)
            .product()
    }

    /// Lattice points of the box in lexicographic order.
    pub fn points(&self) -> BoxPoints {
        BoxPoints {
            lo: self.lo.clone(),
            hi: self.hi.clone(),
            next: if self.is_empty() { None } else { Some(self.lo.clone()) },
        }
    }
}

/// Odometer iterator over the points of an [`AxisBox`].
pub struct BoxPoints {
    lo: Coords,
    hi: Coords,
    next: Option<Coords>,
}

impl Iterator for BoxPoints {
    type Item = Coords;

    fn next(&mut self) -> Option<Coords> {
        let cur = self.next.take()?;
        let mut nxt = cur.clone();
        let mut axis = nxt.len();
        loop {
            if axis == 0 {
                break;
            }
            axis -= 1;
            if nxt[axis] < self.hi[axis] {
                nxt[axis] += 1;
                self.next = Some(nxt);
                break;
            }
            nxt[axis] = self.lo[axis];
        }
        Some(cur)
    }
}

/// Japanese bracket `⟨x⟩ = (1 + x²)^{1/2}` for `x >= 0`.
pub fn bracket(x: f64) -> f64 {
    assert!(x >= 0.0, "bracket is defined for nonnegative arguments, got {x}");
    1f64.hypot(x)
}

/// `⟨x⟩^s`, computed as `(1 + x²)^{s/2}`.
#[inline]
pub fn bracket_pow(x: f64, s: f64) -> f64 {
    (1.0 + x * x).powf(0.5 * s)
}

/// Exponent of the power weight `w_s(k) = ⟨k⟩^s`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightParams {
    pub s: f64,
}

impl WeightParams {
    pub fn new(s: f64) -> Self {
        WeightParams { s }
    }

    pub fn unweighted() -> Self {
        WeightParams { s: 0.0 }
    }
}

/// `w_s(k) = ⟨|k|⟩^s` with the Euclidean norm of `k`.
pub fn power_weight(k: &[i64], w: WeightParams) -> f64 {
    if w.s == 0.0 {
        return 1.0;
    }
    let r2: f64 = k.iter().map(|&x| (x as f64) * (x as f64)).sum();
    (1.0 + r2).powf(0.5 * w.s)
}

/// A Lebesgue exponent in `[1, ∞]`, or a quasi-Banach target exponent in
/// `[1/2, 1)` produced by [`holder_triple`]. `∞` is a distinguished value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    /// Validates `p ∈ [1, ∞]`; `f64::INFINITY` maps to [`Exponent::Infinity`].
    pub fn new(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(DboError::InvalidExponent(p));
        }
        if p.is_infinite() {
            Ok(Exponent::Infinity)
        } else {
            Ok(Exponent::Finite(p))
        }
    }

    pub fn one() -> Self {
        Exponent::Finite(1.0)
    }

    pub fn two() -> Self {
        Exponent::Finite(2.0)
    }

    /// `1/p` with `1/∞ = 0`.
    pub fn reciprocal(self) -> f64 {
        match self {
            Exponent::Finite(p) => 1.0 / p,
            Exponent::Infinity => 0.0,
        }
    }

    fn from_reciprocal(inv: f64) -> Self {
        if inv == 0.0 {
            Exponent::Infinity
        } else {
            Exponent::Finite(1.0 / inv)
        }
    }

    /// Hölder conjugate `p'`, `1/p + 1/p' = 1`. Only meaningful for `p >= 1`.
    pub fn dual(self) -> Self {
        match self {
            Exponent::Infinity => Exponent::Finite(1.0),
            Exponent::Finite(1.0) => Exponent::Infinity,
            Exponent::Finite(p) => Exponent::Finite(p / (p - 1.0)),
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Exponent::Infinity)
    }

    pub fn value(self) -> f64 {
        match self {
            Exponent::Finite(p) => p,
            Exponent::Infinity => f64::INFINITY,
        }
    }

    /// `(Σ x_i^p)^{1/p}` or `max x_i` over nonnegative inputs, scaled by the
    /// maximum to avoid overflow. Summation follows iteration order.
    pub fn norm_of<I: IntoIterator<Item = f64>>(self, values: I) -> f64 {
        let v: Vec<f64> = values.into_iter().collect();
        let m = v.iter().cloned().fold(0.0, f64::max);
        match self {
            Exponent::Infinity => m,
            _ if m == 0.0 => 0.0,
            Exponent::Finite(p) => {
                let s: f64 = v.iter().map(|x| (x / m).powf(p)).sum();
                m * s.powf(1.0 / p)
            }
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Exponent::Finite(p) => s.serialize_f64(*p),
            Exponent::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        let p = match Raw::deserialize(d)? {
            Raw::Num(p) => p,
            Raw::Str(s) => parse_exponent(&s).map_err(serde::de::Error::custom)?,
        };
        Exponent::new(p).map_err(serde::de::Error::custom)
    }
}

/// Parses `"inf"`, `"infinity"`, `"∞"` or a decimal number.
pub fn parse_exponent(s: &str) -> std::result::Result<f64, String> {
    match s.trim().to_ascii_lowercase().as_str() {
        "inf" | "infinity" | "∞" => Ok(f64::INFINITY),
        t => t.parse::<f64>().map_err(|e| format!("bad exponent {s:?}: {e}")),
    }
}

/// `p'` for `p ∈ [1, ∞]`.
pub fn dual_exponent(p: Exponent) -> Exponent {
    p.dual()
}

/// Exponents `(p, q, r)` with `1/p + 1/q = 1/r`, plus the duals `p', q'`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HolderTriple {
    pub p: Exponent,
    pub q: Exponent,
    pub r: Exponent,
    pub p_dual: Exponent,
    pub q_dual: Exponent,
}

impl HolderTriple {
    /// Rejects targets with `r < 1`; the bilinear bounds here are stated for
    /// Banach targets only.
    pub fn require_banach_target(&self) -> Result<()> {
        match self.r {
            Exponent::Finite(r) if r < 1.0 => Err(DboError::InvalidParameter(format!(
                "target exponent r = {r} < 1 is not supported"
            ))),
            _ => Ok(()),
        }
    }
}

/// Builds the Hölder triple for `(p, q)`. `r` may come out below 1; consumers
/// that need `r >= 1` call [`HolderTriple::require_banach_target`].
pub fn holder_triple(p: f64, q: f64) -> Result<HolderTriple> {
    let p = Exponent::new(p)?;
    let q = Exponent::new(q)?;
    Ok(holder_from(p, q))
}

pub fn holder_from(p: Exponent, q: Exponent) -> HolderTriple {
    HolderTriple {
        p,
        q,
        r: Exponent::from_reciprocal(p.reciprocal() + q.reciprocal()),
        p_dual: p.dual(),
        q_dual: q.dual(),
    }
}

/// Finitely supported complex sequence on `Z^d` with an explicit support box.
/// Evaluation outside the stored entries is exactly zero.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedSequence {
    d: usize,
    support: AxisBox,
    values: BTreeMap<LatticePoint, Complex64>,
}

impl WeightedSequence {
    /// Exact zeros are dropped; every entry must lie in `support`.
    pub fn new(
        d: usize,
        support: AxisBox,
        entries: impl IntoIterator<Item = (LatticePoint, Complex64)>,
    ) -> Result<Self> {
        if d == 0 {
            return Err(DboError::InvalidParameter("dimension must be >= 1".into()));
        }
        check_dim(d, support.dim())?;
        let mut values = BTreeMap::new();
        for (k, v) in entries {
            check_dim(d, k.dim())?;
            if !support.contains(k.coords()) {
                return Err(DboError::InvalidParameter(format!(
                    "entry {k} lies outside the declared support"
                )));
            }
            if v != Complex64::new(0.0, 0.0) {
                values.insert(k, v);
            }
        }
        Ok(WeightedSequence { d, support, values })
    }

    /// Support box is the bounding box of the entries (the origin if empty).
    pub fn from_entries(d: usize, entries: impl IntoIterator<Item = (LatticePoint, Complex64)>) -> Result<Self> {
        let entries: Vec<_> = entries.into_iter().collect();
        let mut bbox: Option<AxisBox> = None;
        for (k, _) in &entries {
            check_dim(d, k.dim())?;
            let c = k.coords();
            bbox = Some(match bbox {
                None => AxisBox::new(c, c),
                Some(b) => AxisBox {
                    lo: b.lo.iter().zip(c).map(|(a, x)| *a.min(x)).collect(),
                    hi: b.hi.iter().zip(c).map(|(a, x)| *a.max(x)).collect(),
                },
            });
        }
        let support = bbox.unwrap_or_else(|| AxisBox::cube(d, 0));
        Self::new(d, support, entries)
    }

    pub fn zero(d: usize) -> Self {
        WeightedSequence {
            d,
            support: AxisBox::cube(d, 0),
            values: BTreeMap::new(),
        }
    }

    /// `c·δ_k`.
    pub fn delta(k: LatticePoint, c: Complex64) -> Self {
        let d = k.dim();
        let support = AxisBox::new(k.coords(), k.coords());
        Self::new(d, support, [(k, c)]).expect("delta entry lies in its own support")
    }

    /// Sequence equal to `c` on every point of `support`.
    pub fn constant_on(support: AxisBox, c: Complex64) -> Self {
        let d = support.dim();
        let entries: Vec<_> = support.points().map(|p| (LatticePoint(p), c)).collect();
        Self::new(d, support, entries).expect("points of the support lie in it")
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn support(&self) -> &AxisBox {
        &self.support
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, k: &[i64]) -> Complex64 {
        self.values.get(k).copied().unwrap_or_default()
    }

    /// Nonzero entries in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (&LatticePoint, &Complex64)> {
        self.values.iter()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let entries = self.values.iter().map(|(k, v)| (k.clone(), v * c));
        Self::new(self.d, self.support.clone(), entries).expect("scaling keeps the support")
    }

    /// Entry-wise sum; the support becomes the bounding box of both supports.
    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self.d, other.d)?;
        let mut values = self.values.clone();
        for (k, v) in &other.values {
            *values.entry(k.clone()).or_default() += v;
        }
        let support = AxisBox {
            lo: self
                .support
                .lo
                .iter()
                .zip(&other.support.lo)
                .map(|(a, b)| *a.min(b))
                .collect(),
            hi: self
                .support
                .hi
                .iter()
                .zip(&other.support.hi)
                .map(|(a, b)| *a.max(b))
                .collect(),
        };
        Self::new(self.d, support, values)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.values().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Largest Euclidean norm of a stored point (0 when empty).
    pub fn euclid_radius(&self) -> f64 {
        self.values.keys().map(|k| k.norm()).fold(0.0, f64::max)
    }

    /// Serializable form `{ "d": int, "entries": [[c1,...,cd, re, im], ...] }`.
    pub fn to_json(&self) -> SequenceJson {
        SequenceJson {
            d: self.d,
            entries: self
                .values
                .iter()
                .map(|(k, v)| {
                    let mut row: Vec<f64> = k.coords().iter().map(|&c| c as f64).collect();
                    row.push(v.re);
                    row.push(v.im);
                    row
                })
                .collect(),
        }
    }

    pub fn from_json(j: &SequenceJson) -> Result<Self> {
        let d = j.d;
        if d == 0 {
            return Err(DboError::InvalidParameter("sequence dimension must be >= 1".into()));
        }
        let mut entries = Vec::with_capacity(j.entries.len());
        for row in &j.entries {
            if row.len() != d + 2 {
                return Err(DboError::InvalidParameter(format!(
                    "sequence entry has {} numbers, expected d + 2 = {}",
                    row.len(),
                    d + 2
                )));
            }
            let mut coords = Coords::new();
            for &c in &row[..d] {
                if c.fract() != 0.0 || !c.is_finite() {
                    return Err(DboError::InvalidParameter(format!(
                        "lattice coordinate {c} is not an integer"
                    )));
                }
                coords.push(c as i64);
            }
            entries.push((LatticePoint(coords), Complex64::new(row[d], row[d + 1])));
        }
        Self::from_entries(d, entries)
    }
}

/// Wire format for [`WeightedSequence`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SequenceJson {
    pub d: usize,
    pub entries: Vec<Vec<f64>>,
}

impl Serialize for WeightedSequence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightedSequence {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = SequenceJson::deserialize(d)?;
        WeightedSequence::from_json(&j).map_err(serde::de::Error::custom)
    }
}

/// `‖f‖_{ℓ^p_s} = (Σ_k w_s(k)^p |f_k|^p)^{1/p}`, or `sup_k w_s(k)|f_k|` for `p = ∞`.
pub fn weighted_norm(f: &WeightedSequence, w: WeightParams, p: Exponent) -> f64 {
    p.norm_of(f.iter().map(|(k, v)| power_weight(k.coords(), w) * v.norm()))
}

/// `(bf)_k = b_k f_k` on the intersection of the supports.
pub fn pointwise_multiply(b: &WeightedSequence, f: &WeightedSequence) -> Result<WeightedSequence> {
    check_dim(b.d, f.d)?;
    let support = b.support.intersect(&f.support);
    let entries: Vec<_> = f
        .values
        .iter()
        .filter(|(k, _)| support.contains(k.coords()))
        .map(|(k, v)| (k.clone(), b.get(k.coords()) * v))
        .collect();
    WeightedSequence::new(b.d, support, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn p(c: &[i64]) -> LatticePoint {
        LatticePoint::new(c).unwrap()
    }

    #[test]
    fn bracket_values() {
        assert_eq!(bracket(0.0), 1.0);
        assert_relative_eq!(bracket(1.0), 2f64.sqrt(), epsilon = 1e-15);
        assert_relative_eq!(bracket(3.0), 10f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    #[should_panic]
    fn bracket_rejects_negative() {
        bracket(-1.0);
    }

    #[test]
    fn power_weight_values() {
        assert_eq!(power_weight(&[0, 0], WeightParams::new(5.0)), 1.0);
        assert_relative_eq!(power_weight(&[1], WeightParams::new(2.0)), 2.0, epsilon = 1e-15);
        assert_relative_eq!(
            power_weight(&[3, 4], WeightParams::new(-1.0)),
            26f64.powf(-0.5),
            epsilon = 1e-15
        );
    }

    #[test]
    fn weighted_norm_examples() {
        let delta = WeightedSequence::delta(LatticePoint::origin(1), c(1.0));
        assert_eq!(weighted_norm(&delta, WeightParams::new(0.0), Exponent::two()), 1.0);

        let f = WeightedSequence::delta(p(&[1]), c(1.0));
        assert_relative_eq!(weighted_norm(&f, WeightParams::new(2.0), Exponent::one()), 2.0);

        let f = WeightedSequence::from_entries(1, [(p(&[0]), c(3.0)), (p(&[1]), c(4.0))]).unwrap();
        assert_relative_eq!(weighted_norm(&f, WeightParams::new(0.0), Exponent::two()), 5.0);
        assert_eq!(weighted_norm(&f, WeightParams::new(0.0), Exponent::Infinity), 4.0);
    }

    #[test]
    fn holder_examples() {
        let t = holder_triple(2.0, 2.0).unwrap();
        assert_eq!(t.r, Exponent::Finite(1.0));
        assert_eq!(t.p_dual, Exponent::Finite(2.0));
        assert_eq!(t.q_dual, Exponent::Finite(2.0));

        let t = holder_triple(f64::INFINITY, f64::INFINITY).unwrap();
        assert_eq!(t.r, Exponent::Infinity);

        let t = holder_triple(1.0, f64::INFINITY).unwrap();
        assert_eq!(t.r, Exponent::Finite(1.0));
        assert_eq!(t.p_dual, Exponent::Infinity);
        assert_eq!(t.q_dual, Exponent::Finite(1.0));
    }

    #[test]
    fn holder_rejects_bad_exponents_and_flags_quasi_banach_targets() {
        assert!(holder_triple(0.5, 2.0).is_err());
        assert!(holder_triple(f64::NAN, 2.0).is_err());
        let t = holder_triple(1.0, 1.0).unwrap();
        assert_eq!(t.r, Exponent::Finite(0.5));
        assert!(t.require_banach_target().is_err());
    }

    #[test]
    fn dual_is_an_involution_on_standard_exponents() {
        for e in [Exponent::one(), Exponent::two(), Exponent::Infinity] {
            assert_eq!(dual_exponent(dual_exponent(e)), e);
        }
    }

    #[test]
    fn pointwise_multiply_examples() {
        let f = WeightedSequence::from_entries(1, [(p(&[-2]), c(1.0)), (p(&[0]), c(2.0)), (p(&[3]), c(5.0))]).unwrap();
        let ones = WeightedSequence::constant_on(AxisBox::cube(1, 1), c(1.0));
        let bf = pointwise_multiply(&ones, &f).unwrap();
        assert_eq!(bf.len(), 1);
        assert_eq!(bf.get(&[0]), c(2.0));

        let zero = WeightedSequence::zero(1);
        assert!(pointwise_multiply(&zero, &f).unwrap().is_empty());

        let b = WeightedSequence::delta(LatticePoint::origin(1), Complex64::new(0.0, 3.0));
        let bf = pointwise_multiply(&b, &f).unwrap();
        assert_eq!(bf.len(), 1);
        assert_eq!(bf.get(&[0]), Complex64::new(0.0, 6.0));

        let g2 = WeightedSequence::zero(2);
        assert!(matches!(
            pointwise_multiply(&g2, &f),
            Err(DboError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn sequence_rejects_entries_outside_support() {
        let r = WeightedSequence::new(1, AxisBox::cube(1, 1), [(p(&[2]), c(1.0))]);
        assert!(r.is_err());
    }

    #[test]
    fn sequence_json_round_trip() {
        let f = WeightedSequence::from_entries(2, [(p(&[1, -1]), Complex64::new(0.5, -2.0)), (p(&[0, 3]), c(1.0))])
            .unwrap();
        let s = serde_json::to_string(&f).unwrap();
        let back: WeightedSequence = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<WeightedSequence>(r#"{"d":1,"entries":[[0.5,1,0]]}"#).is_err());
    }

    #[test]
    fn box_points_enumerates_in_lexicographic_order() {
        let b = AxisBox::new(&[0, -1], &[1, 0]);
        let pts: Vec<Vec<i64>> = b.points().map(|p| p.to_vec()).collect();
        assert_eq!(pts, vec![vec![0, -1], vec![0, 0], vec![1, -1], vec![1, 0]]);
        assert_eq!(b.volume(), 4);
        assert_eq!(AxisBox::new(&[1], &[0]).points().count(), 0);
    }

    #[test]
    fn multi_indices_up_to() {
        let all = MultiIndex::all_up_to(1, 2);
        assert_eq!(all.len(), 5);
        let all2 = MultiIndex::all_up_to(2, 1);
        assert_eq!(all2.len(), 5);
        assert_eq!(MultiIndex::new(&[2, -3]).abs_sum(), 5);
    }
}
