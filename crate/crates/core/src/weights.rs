//! Weight lattice, partitions and contents.
//!
//! Contents use the transposed convention: the box in row `i`, column `j`
//! has content `i - j`, and the last box of row `i` of a weight `λ` has
//! content `i - λ_i`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use crate::error::{Error, Result};

/// The characteristic of the ground field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Characteristic {
    Zero,
    Prime(u64),
}

impl Characteristic {
    pub fn from_u64(p: u64) -> Result<Self> {
        match p {
            0 => Ok(Characteristic::Zero),
            p if p > 2 && is_prime(p) => Ok(Characteristic::Prime(p)),
            p => Err(Error::InvalidCharacteristic(p)),
        }
    }

    /// 0 for characteristic zero, otherwise the prime.
    pub fn as_u64(self) -> u64 {
        match self {
            Characteristic::Zero => 0,
            Characteristic::Prime(p) => p,
        }
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Rank, parameter δ and characteristic.
///
/// In characteristic `p` the parameter is stored as its residue in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Context {
    rank: usize,
    delta: i64,
    characteristic: Characteristic,
}

impl Context {
    /// `p = 0` selects characteristic zero.
    pub fn new(rank: usize, delta: i64, p: u64) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        let characteristic = Characteristic::from_u64(p)?;
        let delta = match characteristic {
            Characteristic::Zero => delta,
            Characteristic::Prime(p) => delta.rem_euclid(p as i64),
        };
        Ok(Context {
            rank,
            delta,
            characteristic,
        })
    }

    pub fn char_zero(rank: usize, delta: i64) -> Result<Self> {
        Self::new(rank, delta, 0)
    }

    pub fn modular(rank: usize, delta: i64, p: u64) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidCharacteristic(0));
        }
        Self::new(rank, delta, p)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn delta(&self) -> i64 {
        self.delta
    }

    pub fn characteristic(&self) -> Characteristic {
        self.characteristic
    }

    pub fn prime(&self) -> Option<u64> {
        match self.characteristic {
            Characteristic::Zero => None,
            Characteristic::Prime(p) => Some(p),
        }
    }

    pub fn with_rank(&self, rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        Ok(Context { rank, ..*self })
    }

    /// Reduces an integer into the ground ring's canonical representative.
    pub fn reduce(&self, x: i64) -> i64 {
        match self.characteristic {
            Characteristic::Zero => x,
            Characteristic::Prime(p) => x.rem_euclid(p as i64),
        }
    }
}

/// An element of the weight lattice `X = ⊕ Z ε_i`.
///
/// Equality, ordering and hashing ignore trailing zeros, so the same tuple
/// at two different ranks compares equal.
#[derive(Debug, Clone)]
pub struct Weight {
    entries: Vec<i64>,
}

impl Weight {
    pub fn new(entries: Vec<i64>) -> Self {
        Weight { entries }
    }

    pub fn zero(rank: usize) -> Self {
        Weight {
            entries: vec![0; rank],
        }
    }

    /// Pads `entries` with zeros up to `rank`; fails if a nonzero entry
    /// sits beyond it.
    pub fn with_rank(entries: &[i64], rank: usize) -> Result<Self> {
        let used = significant_len(entries);
        if used > rank {
            return Err(Error::RankMismatch {
                weight: join(entries),
                rank,
            });
        }
        let mut v = entries[..used].to_vec();
        v.resize(rank, 0);
        Ok(Weight { entries: v })
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// Coordinate `λ_i` for 1-based `i`; zero past the rank.
    pub fn coord(&self, i: usize) -> i64 {
        self.entries.get(i - 1).copied().unwrap_or(0)
    }

    /// `|λ| = Σ λ_i`.
    pub fn size(&self) -> i64 {
        self.entries.iter().sum()
    }

    pub fn padded(&self, rank: usize) -> Result<Self> {
        Self::with_rank(&self.entries, rank)
    }

    fn trimmed(&self) -> &[i64] {
        &self.entries[..significant_len(&self.entries)]
    }

    pub fn is_dominant(&self) -> bool {
        is_dominant(self)
    }

    /// Interprets the weight as a partition if it is dominant.
    pub fn to_partition(&self) -> Option<Partition> {
        if !self.is_dominant() {
            return None;
        }
        Some(Partition {
            parts: self.trimmed().iter().map(|&x| x as usize).collect(),
        })
    }
}

fn significant_len(entries: &[i64]) -> usize {
    entries.iter().rposition(|&x| x != 0).map_or(0, |i| i + 1)
}

fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl PartialEq for Weight {
    fn eq(&self, other: &Self) -> bool {
        self.trimmed() == other.trimmed()
    }
}

impl Eq for Weight {}

impl Hash for Weight {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.trimmed().hash(state);
    }
}

impl PartialOrd for Weight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Weight {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.rank().max(other.rank());
        (1..=n)
            .map(|i| self.coord(i).cmp(&other.coord(i)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(self.trimmed()))
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(Weight::new(parse_ints(s)?))
    }
}

/// Parses the comma separated integer format; the empty string (or `∅`)
/// is the empty tuple.
pub fn parse_ints(s: &str) -> Result<Vec<i64>> {
    let t = s.trim();
    let t = t
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .unwrap_or(t)
        .trim();
    if t.is_empty() || t == "∅" {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|x| {
            x.trim().parse::<i64>().map_err(|e| Error::Parse {
                input: s.to_string(),
                reason: e.to_string(),
            })
        })
        .collect()
}

/// A partition: weakly decreasing positive parts, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotAPartition(
                parts.iter().map(|&x| x as i64).collect(),
            ));
        }
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn from_ints(xs: &[i64]) -> Result<Self> {
        if xs.iter().any(|&x| x < 0) {
            return Err(Error::NotAPartition(xs.to_vec()));
        }
        Partition::new(xs.iter().map(|&x| x as usize).collect())
            .map_err(|_| Error::NotAPartition(xs.to_vec()))
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Part `λ_i` for 1-based `i`; zero past the last part.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn to_weight(&self, rank: usize) -> Result<Weight> {
        let v: Vec<i64> = self.parts.iter().map(|&x| x as i64).collect();
        Weight::with_rank(&v, rank)
    }

    pub fn as_weight(&self) -> Weight {
        Weight::new(self.parts.iter().map(|&x| x as i64).collect())
    }

    pub fn conjugate(&self) -> Partition {
        conjugate(self)
    }

    /// Componentwise `self ⊇ other`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    /// Componentwise minimum `λ ∩ μ`.
    pub fn intersection(&self, other: &Partition) -> Partition {
        Partition {
            parts: self
                .parts
                .iter()
                .zip(&other.parts)
                .map(|(&a, &b)| a.min(b))
                .collect(),
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.parts))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Partition::from_ints(&parse_ints(s)?)
    }
}

/// `λ^T`: rows become columns.
pub fn conjugate(lambda: &Partition) -> Partition {
    let width = lambda.part(1);
    let parts = (1..=width)
        .map(|j| lambda.parts.iter().take_while(|&&r| r >= j).count())
        .collect();
    Partition { parts }
}

/// `c(λ)_i = i - λ_i` for `i = 1..rank`.
pub fn content_sequence(lambda: &Weight, ctx: &Context) -> Result<Vec<i64>> {
    let padded = lambda.padded(ctx.rank())?;
    Ok(padded
        .entries()
        .iter()
        .enumerate()
        .map(|(k, &x)| (k as i64 + 1) - x)
        .collect())
}

/// Contents `i - j` of all boxes, row by row.
pub fn box_contents(lambda: &Partition) -> Vec<i64> {
    lambda
        .parts
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (1..=len).map(move |c| (r as i64 + 1) - c as i64))
        .collect()
}

/// A box of a skew shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SkewBox {
    pub row: usize,
    pub col: usize,
    pub content: i64,
}

/// The boxes of `λ/μ` in row-major order.
pub fn skew_boxes(lambda: &Partition, mu: &Partition) -> Result<Vec<SkewBox>> {
    if !lambda.contains(mu) {
        return Err(Error::NotContained(mu.to_string(), lambda.to_string()));
    }
    let mut out = Vec::new();
    for (r, &len) in lambda.parts.iter().enumerate() {
        let row = r + 1;
        for col in mu.part(row) + 1..=len {
            out.push(SkewBox {
                row,
                col,
                content: row as i64 - col as i64,
            });
        }
    }
    Ok(out)
}

/// All partitions of `m`, in decreasing lexicographic order.
pub fn partitions_of(m: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        for k in (1..=rest.min(max)).rev() {
            prefix.push(k);
            go(rest - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(m, m, &mut Vec::new(), &mut out);
    out
}

/// Partitions of `n, n-2, ...` down to 0 or 1, by degree descending and
/// then decreasing lexicographic order.
pub fn labels_by_parity(n: usize) -> Vec<Partition> {
    (0..=n)
        .rev()
        .filter(|m| (n - m).is_multiple_of(2))
        .flat_map(partitions_of)
        .collect()
}

/// The label set `Λ_n` of simple `B_n(δ)`-modules.
pub fn enumerate_label_set(ctx: &Context) -> Result<Vec<Partition>> {
    if ctx.delta() == 0 {
        return Err(Error::DeltaZero);
    }
    Ok(labels_by_parity(ctx.rank()))
}

/// `λ_1 ≥ λ_2 ≥ … ≥ λ_n ≥ 0`.
pub fn is_dominant(lambda: &Weight) -> bool {
    let e = lambda.entries();
    e.windows(2).all(|w| w[0] >= w[1]) && e.last().is_none_or(|&x| x >= 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(conjugate(&Partition::empty()), Partition::empty());
        assert_eq!(conjugate(&p("5,3,3,2,1,1")), p("6,4,3,1,1"));
        assert_eq!(conjugate(&p("2")), p("1,1"));
    }

    #[test]
    fn content_sequence_examples() {
        let ctx = Context::char_zero(5, 2).unwrap();
        let w: Weight = "6,4,-2,3,5".parse().unwrap();
        assert_eq!(content_sequence(&w, &ctx).unwrap(), vec![-5, -2, 5, 1, 0]);

        let ctx3 = Context::char_zero(3, 2).unwrap();
        assert_eq!(
            content_sequence(&Weight::new(vec![]), &ctx3).unwrap(),
            vec![1, 2, 3]
        );

        let ctx2 = Context::char_zero(2, 2).unwrap();
        assert_eq!(
            content_sequence(&Weight::new(vec![2]), &ctx2).unwrap(),
            vec![-1, 2]
        );
    }

    #[test]
    fn content_sequence_rejects_overlong() {
        let ctx = Context::char_zero(2, 2).unwrap();
        assert!(content_sequence(&Weight::new(vec![1, 1, 1]), &ctx).is_err());
    }

    #[test]
    fn box_contents_examples() {
        let mut c = box_contents(&p("2,1"));
        c.sort();
        assert_eq!(c, vec![-1, 0, 1]);
        assert!(box_contents(&Partition::empty()).is_empty());
        assert_eq!(box_contents(&p("2")), vec![0, -1]);
    }

    #[test]
    fn skew_boxes_examples() {
        let b = skew_boxes(&p("4,4,2"), &p("4,3,1")).unwrap();
        let t: Vec<_> = b.iter().map(|x| (x.row, x.col, x.content)).collect();
        assert_eq!(t, vec![(2, 4, -2), (3, 2, 1)]);
        assert!(skew_boxes(&p("3,1"), &p("3,1")).unwrap().is_empty());
        let t: Vec<_> = skew_boxes(&p("2"), &Partition::empty())
            .unwrap()
            .iter()
            .map(|x| (x.row, x.col, x.content))
            .collect();
        assert_eq!(t, vec![(1, 1, 0), (1, 2, -1)]);
        assert!(matches!(
            skew_boxes(&p("2"), &p("1,1")),
            Err(Error::NotContained(..))
        ));
    }

    #[test]
    fn label_sets() {
        let ctx = |n| Context::char_zero(n, 1).unwrap();
        assert_eq!(
            enumerate_label_set(&ctx(2)).unwrap(),
            vec![p("2"), p("1,1"), Partition::empty()]
        );
        assert_eq!(
            enumerate_label_set(&ctx(3)).unwrap(),
            vec![p("3"), p("2,1"), p("1,1,1"), p("1")]
        );
        assert_eq!(enumerate_label_set(&ctx(1)).unwrap(), vec![p("1")]);
        let zero = Context::char_zero(2, 0).unwrap();
        assert_eq!(enumerate_label_set(&zero), Err(Error::DeltaZero));
    }

    #[test]
    fn dominance() {
        assert!(is_dominant(&"4,4,2".parse().unwrap()));
        assert!(!is_dominant(&"6,2,4,-3,1,-2".parse().unwrap()));
        assert!(is_dominant(&Weight::zero(3)));
    }

    #[test]
    fn weights_compare_up_to_trailing_zeros() {
        let a = Weight::with_rank(&[6, 2, 4, -3, 1, -2], 8).unwrap();
        let b: Weight = "6,2,4,-3,1,-2".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.rank(), 8);
        assert_eq!(a.to_string(), "6,2,4,-3,1,-2");
    }

    #[test]
    fn context_validation() {
        assert!(Context::new(3, 1, 2).is_err());
        assert!(Context::new(3, 1, 9).is_err());
        assert!(Context::new(0, 1, 0).is_err());
        let c = Context::new(3, -3, 5).unwrap();
        assert_eq!(c.delta(), 2);
        assert_eq!(c.prime(), Some(5));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("1,x".parse::<Weight>().is_err());
        assert!("1,3".parse::<Partition>().is_err());
        assert!("2,-1".parse::<Partition>().is_err());
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!("2,1,0,0".parse::<Partition>().unwrap(), p("2,1"));
    }
}
