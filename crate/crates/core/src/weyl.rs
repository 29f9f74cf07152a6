//! The Weyl group of type `D_n` and its affine counterpart `W_p`, acting on
//! the weight lattice by the dot action `w.λ = w(λ+ρ) - ρ`.
//!
//! `ρ(δ)` has half-integer entries when `δ` is odd, so it is never formed.
//! Every formula below is the closed integer form of the dot action.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rustc_hash::FxHashSet;

use crate::blocks::intervals_balanced;
use crate::error::{Error, Result};
use crate::weights::{content_sequence, Characteristic, Context, Partition, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootKind {
    /// `ε_i - ε_j`
    Diff,
    /// `ε_i + ε_j`
    Sum,
}

/// The reflection `s_{β, rp}` for `β = ε_i ± ε_j`, `i < j`, at affine level `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReflectionGen {
    kind: RootKind,
    i: usize,
    j: usize,
    shift: i64,
}

impl ReflectionGen {
    /// `s_{ε_i - ε_j, rp}`. Rows may be given in either order: the root
    /// `ε_j - ε_i` at level `r` is the root `ε_i - ε_j` at level `-r`.
    pub fn diff(i: usize, j: usize, shift: i64) -> Result<Self> {
        check_rows(i, j)?;
        Ok(if i < j {
            ReflectionGen {
                kind: RootKind::Diff,
                i,
                j,
                shift,
            }
        } else {
            ReflectionGen {
                kind: RootKind::Diff,
                i: j,
                j: i,
                shift: -shift,
            }
        })
    }

    /// `s_{ε_i + ε_j, rp}`.
    pub fn sum(i: usize, j: usize, shift: i64) -> Result<Self> {
        check_rows(i, j)?;
        Ok(ReflectionGen {
            kind: RootKind::Sum,
            i: i.min(j),
            j: i.max(j),
            shift,
        })
    }

    pub fn kind(&self) -> RootKind {
        self.kind
    }

    pub fn rows(&self) -> (usize, usize) {
        (self.i, self.j)
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// The dot action with an explicit parameter `delta` and modulus `p`
    /// (the generator's level contributes `shift * p`). No context checks.
    pub fn dot(&self, lambda: &Weight, delta: i64, p: i64) -> Weight {
        let mut e = lambda.entries().to_vec();
        let need = self.j.max(e.len());
        e.resize(need, 0);
        let (i, j) = (self.i, self.j);
        let k = coefficient(self.kind, e[i - 1], e[j - 1], i, j, delta) - self.shift * p;
        match self.kind {
            RootKind::Diff => {
                e[i - 1] -= k;
                e[j - 1] += k;
            }
            RootKind::Sum => {
                e[i - 1] -= k;
                e[j - 1] -= k;
            }
        }
        Weight::new(e)
    }

    pub fn apply(&self, lambda: &Weight, ctx: &Context) -> Result<Weight> {
        apply_generator(self, lambda, ctx)
    }
}

fn check_rows(i: usize, j: usize) -> Result<()> {
    if i == 0 || j == 0 || i == j {
        return Err(Error::Parse {
            input: format!("({i},{j})"),
            reason: "rows must be distinct and 1-based".into(),
        });
    }
    Ok(())
}

/// `(λ+ρ, β)` for `β = ε_i ± ε_j`.
#[inline]
fn coefficient(kind: RootKind, li: i64, lj: i64, i: usize, j: usize, delta: i64) -> i64 {
    let (i, j) = (i as i64, j as i64);
    match kind {
        RootKind::Diff => li - lj - i + j,
        RootKind::Sum => li + lj - delta + 2 - i - j,
    }
}

impl fmt::Display for ReflectionGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.kind {
            RootKind::Diff => "",
            RootKind::Sum => "+",
        };
        if self.shift == 0 {
            write!(f, "s[{},{}{}]", self.i, sign, self.j)
        } else {
            write!(f, "s[{},{}{};{}]", self.i, sign, self.j, self.shift)
        }
    }
}

impl FromStr for ReflectionGen {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let body = s
            .trim()
            .strip_prefix("s[")
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| bad("expected s[i,j], s[i,+j] or s[i,±j;r]"))?;
        let (rows, shift) = match body.split_once(';') {
            Some((rows, r)) => (rows, r.trim().parse::<i64>().map_err(|e| bad(&e.to_string()))?),
            None => (body, 0),
        };
        let (i, j) = rows.split_once(',').ok_or_else(|| bad("missing ','"))?;
        let i: usize = i.trim().parse().map_err(|_| bad("bad row index"))?;
        let j = j.trim();
        let (kind, j) = match j.strip_prefix('+') {
            Some(rest) => (RootKind::Sum, rest),
            None => (RootKind::Diff, j),
        };
        let j: usize = j.trim().parse().map_err(|_| bad("bad row index"))?;
        if i >= j {
            return Err(bad("rows must satisfy i < j"));
        }
        match kind {
            RootKind::Diff => ReflectionGen::diff(i, j, shift),
            RootKind::Sum => ReflectionGen::sum(i, j, shift),
        }
    }
}

/// Applies `g` to `λ` by the dot action for `ctx`.
///
/// The result has rank `ctx.rank()`.
pub fn apply_generator(g: &ReflectionGen, lambda: &Weight, ctx: &Context) -> Result<Weight> {
    let p = match ctx.characteristic() {
        Characteristic::Zero if g.shift != 0 => return Err(Error::AffineShiftInCharZero(g.shift)),
        Characteristic::Zero => 0,
        Characteristic::Prime(p) => p as i64,
    };
    if g.j > ctx.rank() {
        return Err(Error::RankMismatch {
            weight: g.to_string(),
            rank: ctx.rank(),
        });
    }
    let lambda = lambda.padded(ctx.rank())?;
    Ok(g.dot(&lambda, ctx.delta(), p))
}

/// A product of generators, written left to right and applied
/// rightmost first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ReflectionWord {
    gens: Vec<ReflectionGen>,
}

impl ReflectionWord {
    pub fn new(gens: Vec<ReflectionGen>) -> Self {
        ReflectionWord { gens }
    }

    pub fn identity() -> Self {
        Self::default()
    }

    pub fn gens(&self) -> &[ReflectionGen] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn reversed(&self) -> Self {
        ReflectionWord {
            gens: self.gens.iter().rev().copied().collect(),
        }
    }

    /// The word that applies `self` first and then `next`.
    pub fn then(&self, next: &ReflectionWord) -> Self {
        let mut gens = next.gens.clone();
        gens.extend_from_slice(&self.gens);
        ReflectionWord { gens }
    }

    pub fn apply(&self, lambda: &Weight, ctx: &Context) -> Result<Weight> {
        let mut cur = lambda.padded(ctx.rank())?;
        for g in self.gens.iter().rev() {
            cur = apply_generator(g, &cur, ctx)?;
        }
        Ok(cur)
    }
}

impl fmt::Display for ReflectionWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for ReflectionWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let gens = s
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<Vec<_>>>()?;
        Ok(ReflectionWord { gens })
    }
}

/// A pair `(π, σ)` certifying orbit membership.
///
/// `pi[i-1] = π(i)` is 1-based; `sigma[i-1] ∈ {+1, -1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitWitness {
    pi: Vec<usize>,
    sigma: Vec<i8>,
}

impl OrbitWitness {
    pub fn new(pi: Vec<usize>, sigma: Vec<i8>) -> Self {
        OrbitWitness { pi, sigma }
    }

    pub fn identity(n: usize) -> Self {
        OrbitWitness {
            pi: (1..=n).collect(),
            sigma: vec![1; n],
        }
    }

    pub fn pi(&self) -> &[usize] {
        &self.pi
    }

    pub fn sigma(&self) -> &[i8] {
        &self.sigma
    }

    /// `d(σ) = |{i : σ(i) = -1}|`.
    pub fn d_sigma(&self) -> usize {
        self.sigma.iter().filter(|&&s| s == -1).count()
    }

    /// Re-checks the defining congruences for `μ` against `λ` (exactly in
    /// characteristic zero, modulo `p` otherwise).
    pub fn validate(&self, lambda: &Weight, mu: &Weight, ctx: &Context) -> bool {
        let n = ctx.rank();
        if self.pi.len() != n || self.sigma.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &k in &self.pi {
            if k == 0 || k > n || seen[k - 1] {
                return false;
            }
            seen[k - 1] = true;
        }
        if !self.d_sigma().is_multiple_of(2) || self.sigma.iter().any(|&s| s != 1 && s != -1) {
            return false;
        }
        let (Ok(cl), Ok(cm)) = (content_sequence(lambda, ctx), content_sequence(mu, ctx)) else {
            return false;
        };
        let target = ctx.reduce(2 - ctx.delta());
        (0..n).all(|i| {
            let l = cl[self.pi[i] - 1];
            if self.sigma[i] == 1 {
                ctx.reduce(cm[i] - l) == 0
            } else {
                ctx.reduce(cm[i] + l) == target
            }
        })
    }
}

/// Decides `μ ∈ W.λ` for the finite Weyl group and returns a witness.
pub fn orbit_member_finite(
    lambda: &Weight,
    mu: &Weight,
    ctx: &Context,
) -> Result<Option<OrbitWitness>> {
    if ctx.characteristic() != Characteristic::Zero {
        return Err(Error::RequiresCharZero);
    }
    let cl = content_sequence(lambda, ctx)?;
    let cm = content_sequence(mu, ctx)?;
    Ok(match_contents(&cl, &cm, ctx))
}

/// Decides `μ ∈ W_p.λ` for the affine Weyl group and returns a witness.
pub fn orbit_member_affine(
    lambda: &Weight,
    mu: &Weight,
    ctx: &Context,
) -> Result<Option<OrbitWitness>> {
    if ctx.characteristic() == Characteristic::Zero {
        return Err(Error::RequiresCharP);
    }
    let cl = content_sequence(lambda, ctx)?;
    let cm = content_sequence(mu, ctx)?;
    // Every generator changes |λ| by an even amount.
    if (lambda.size() - mu.size()).rem_euclid(2) != 0 {
        return Ok(None);
    }
    Ok(match_contents(&cl, &cm, ctx))
}

#[derive(Default)]
struct ContentClass {
    lam_lo: Vec<usize>,
    lam_hi: Vec<usize>,
    mu_lo: Vec<usize>,
    mu_hi: Vec<usize>,
    fixed: bool,
}

/// Rows are grouped by content class `{c, 2-δ-c}` (reduced mod `p` where
/// relevant). Within a class whose two values differ, the number of rows
/// with `σ = -1` always has the parity of `#λ(c) - #μ(c)`; only the
/// self-paired class can absorb a parity defect.
fn match_contents(cl: &[i64], cm: &[i64], ctx: &Context) -> Option<OrbitWitness> {
    let n = cl.len();
    let tau = |c: i64| ctx.reduce(2 - ctx.delta() - c);
    let mut classes: BTreeMap<i64, ContentClass> = BTreeMap::new();
    let mut file = |c: i64, row: usize, is_lambda: bool| {
        let c = ctx.reduce(c);
        let t = tau(c);
        let key = c.min(t);
        let class = classes.entry(key).or_default();
        class.fixed = c == t;
        let lo = c == key;
        match (is_lambda, lo) {
            (true, true) => class.lam_lo.push(row),
            (true, false) => class.lam_hi.push(row),
            (false, true) => class.mu_lo.push(row),
            (false, false) => class.mu_hi.push(row),
        }
    };
    for (row, &c) in cl.iter().enumerate() {
        file(c, row, true);
    }
    for (row, &c) in cm.iter().enumerate() {
        file(c, row, false);
    }

    let mut pi = vec![0usize; n];
    let mut sigma = vec![1i8; n];
    let mut spare: Option<usize> = None;
    for class in classes.values() {
        let (la, lb, ma, mb) = (&class.lam_lo, &class.lam_hi, &class.mu_lo, &class.mu_hi);
        if la.len() + lb.len() != ma.len() + mb.len() {
            return None;
        }
        let mut link = |m: usize, l: usize, s: i8| {
            pi[m] = l + 1;
            sigma[m] = s;
        };
        if class.fixed {
            for (&m, &l) in ma.iter().zip(la) {
                link(m, l, 1);
            }
            if let Some(&m) = ma.first() {
                spare = Some(m);
            }
            continue;
        }
        if ma.len() >= la.len() {
            let extra = ma.len() - la.len();
            for (&m, &l) in ma.iter().zip(la) {
                link(m, l, 1);
            }
            for (&m, &l) in ma[la.len()..].iter().zip(lb) {
                link(m, l, -1);
            }
            for (&m, &l) in mb.iter().zip(&lb[extra..]) {
                link(m, l, 1);
            }
        } else {
            let extra = la.len() - ma.len();
            for (&m, &l) in ma.iter().zip(la) {
                link(m, l, 1);
            }
            for (&m, &l) in mb.iter().zip(&la[ma.len()..]) {
                link(m, l, -1);
            }
            for (&m, &l) in mb[extra..].iter().zip(lb) {
                link(m, l, 1);
            }
        }
    }
    let negatives = sigma.iter().filter(|&&s| s == -1).count();
    if negatives % 2 == 1 {
        let m = spare?;
        sigma[m] = -1;
    }
    Some(OrbitWitness { pi, sigma })
}

/// The weights reachable from `λ` by generators without leaving the box
/// `[-bound, bound]^n`.
#[derive(Debug, Clone)]
pub struct OrbitClosure {
    rank: usize,
    members: FxHashSet<u128>,
}

impl OrbitClosure {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, w: &Weight) -> bool {
        match w.padded(self.rank).ok().and_then(|w| pack(w.entries())) {
            Some(key) => self.members.contains(&key),
            None => false,
        }
    }

    /// Members in increasing order.
    pub fn weights(&self) -> Vec<Weight> {
        let mut v: Vec<Weight> = self
            .members
            .iter()
            .map(|&k| Weight::new(unpack(k, self.rank)))
            .collect();
        v.sort();
        v
    }
}

const MAX_PACKED_RANK: usize = 16;
const MAX_PACKED_BOUND: i64 = 127;

fn pack(e: &[i64]) -> Option<u128> {
    if e.len() > MAX_PACKED_RANK {
        return None;
    }
    let mut key = 0u128;
    for (k, &x) in e.iter().enumerate() {
        if !(-MAX_PACKED_BOUND..=MAX_PACKED_BOUND).contains(&x) {
            return None;
        }
        key |= ((x as i8 as u8) as u128) << (8 * k);
    }
    Some(key)
}

fn unpack(key: u128, rank: usize) -> Vec<i64> {
    (0..rank)
        .map(|k| ((key >> (8 * k)) as u8) as i8 as i64)
        .collect()
}

struct Stepper {
    rank: usize,
    delta: i64,
    p: i64,
    bound: i64,
}

impl Stepper {
    fn new(ctx: &Context, bound: i64) -> Result<Self> {
        if ctx.rank() > MAX_PACKED_RANK || !(0..=MAX_PACKED_BOUND).contains(&bound) {
            return Err(Error::Unsupported(format!(
                "closure search needs rank <= {MAX_PACKED_RANK} and bound <= {MAX_PACKED_BOUND}"
            )));
        }
        Ok(Stepper {
            rank: ctx.rank(),
            delta: ctx.delta(),
            p: ctx.prime().unwrap_or(0) as i64,
            bound,
        })
    }

    /// Calls `emit` with every in-box image of `state` under a generator.
    fn neighbours(&self, state: u128, mut emit: impl FnMut(u128)) {
        let e = unpack(state, self.rank);
        let b = self.bound;
        for i in 1..=self.rank {
            for j in i + 1..=self.rank {
                let (li, lj) = (e[i - 1], e[j - 1]);
                for kind in [RootKind::Diff, RootKind::Sum] {
                    let k0 = coefficient(kind, li, lj, i, j, self.delta);
                    // Range of the reflection coefficient keeping both rows in the box.
                    let (lo, hi) = match kind {
                        RootKind::Diff => ((li - b).max(-b - lj), (li + b).min(b - lj)),
                        RootKind::Sum => ((li - b).max(lj - b), (li + b).min(lj + b)),
                    };
                    let mut shifted = |k: i64| {
                        let (ni, nj) = match kind {
                            RootKind::Diff => (li - k, lj + k),
                            RootKind::Sum => (li - k, lj - k),
                        };
                        let mut key = state;
                        key &= !(0xffu128 << (8 * (i - 1)));
                        key &= !(0xffu128 << (8 * (j - 1)));
                        key |= ((ni as i8 as u8) as u128) << (8 * (i - 1));
                        key |= ((nj as i8 as u8) as u128) << (8 * (j - 1));
                        emit(key);
                    };
                    if self.p == 0 {
                        if (lo..=hi).contains(&k0) {
                            shifted(k0);
                        }
                    } else {
                        let mut k = lo + (k0 - lo).rem_euclid(self.p);
                        while k <= hi {
                            shifted(k);
                            k += self.p;
                        }
                    }
                }
            }
        }
    }
}

fn start_key(lambda: &Weight, ctx: &Context, bound: i64) -> Result<u128> {
    let w = lambda.padded(ctx.rank())?;
    if w.entries().iter().any(|x| x.abs() > bound) {
        return Err(Error::Unsupported(format!(
            "weight {w} lies outside the box of radius {bound}"
        )));
    }
    pack(w.entries()).ok_or_else(|| Error::Unsupported("weight cannot be packed".into()))
}

/// Breadth-first closure of `λ` under all generators (all `i < j`, both
/// root kinds, every affine level in characteristic `p`) inside the box.
pub fn orbit_closure(lambda: &Weight, ctx: &Context, box_bound: i64) -> Result<OrbitClosure> {
    let stepper = Stepper::new(ctx, box_bound)?;
    let start = start_key(lambda, ctx, box_bound)?;
    let mut members = FxHashSet::default();
    members.insert(start);
    let mut frontier = vec![start];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &s in &frontier {
            stepper.neighbours(s, |k| {
                if members.insert(k) {
                    next.push(k);
                }
            });
        }
        frontier = next;
    }
    Ok(OrbitClosure {
        rank: ctx.rank(),
        members,
    })
}

/// Polynomial invariants of the finite group acting on `2(λ+ρ)`: the power
/// sums of even degree `2..=2n` and the product of the coordinates. Each
/// generator permutes the coordinates, negating an even number of them, so
/// these values are constant on orbits. Arithmetic wraps, which keeps
/// them invariant as elements of `Z/2^128`.
pub fn finite_invariants(lambda: &Weight, ctx: &Context) -> Result<Vec<i128>> {
    let w = lambda.padded(ctx.rank())?;
    let x: Vec<i128> = w
        .entries()
        .iter()
        .enumerate()
        .map(|(k, &v)| (2 * v - 2 * (k as i64 + 1) + 2 - ctx.delta()) as i128)
        .collect();
    let n = x.len();
    let squares: Vec<i128> = x.iter().map(|v| v.wrapping_mul(*v)).collect();
    let mut out = Vec::with_capacity(n + 1);
    let mut pow = squares.clone();
    for _ in 0..n {
        out.push(pow.iter().fold(0i128, |a, b| a.wrapping_add(*b)));
        for (p, s) in pow.iter_mut().zip(&squares) {
            *p = p.wrapping_mul(*s);
        }
    }
    out.push(x.iter().fold(1i128, |a, b| a.wrapping_mul(*b)));
    Ok(out)
}

/// Decides whether `μ` lies in `orbit_closure(λ, ctx, box_bound)` without
/// materializing the closure when possible: in characteristic zero unequal
/// invariants rule membership out, otherwise a bidirectional search inside
/// the same box settles it.
pub fn closure_reaches(lambda: &Weight, mu: &Weight, ctx: &Context, box_bound: i64) -> Result<bool> {
    let stepper = Stepper::new(ctx, box_bound)?;
    let a = start_key(lambda, ctx, box_bound)?;
    let b = match start_key(mu, ctx, box_bound) {
        Ok(k) => k,
        Err(Error::Unsupported(_)) => return Ok(false),
        Err(e) => return Err(e),
    };
    if a == b {
        return Ok(true);
    }
    if ctx.characteristic() == Characteristic::Zero
        && finite_invariants(lambda, ctx)? != finite_invariants(mu, ctx)?
    {
        return Ok(false);
    }
    // Generators are involutions, so reachability is symmetric.
    let mut seen = [FxHashSet::default(), FxHashSet::default()];
    seen[0].insert(a);
    seen[1].insert(b);
    let mut frontier = [vec![a], vec![b]];
    loop {
        let side = if frontier[0].len() <= frontier[1].len() { 0 } else { 1 };
        if frontier[side].is_empty() {
            return Ok(false);
        }
        let mut next = Vec::new();
        let mut met = false;
        let (mine, other) = if side == 0 {
            let (x, y) = seen.split_at_mut(1);
            (&mut x[0], &y[0])
        } else {
            let (x, y) = seen.split_at_mut(1);
            (&mut y[0], &x[0])
        };
        for &s in &frontier[side] {
            stepper.neighbours(s, |k| {
                if other.contains(&k) {
                    met = true;
                }
                if mine.insert(k) {
                    next.push(k);
                }
            });
            if met {
                return Ok(true);
            }
        }
        frontier[side] = next;
    }
}

/// `η + ρ` is dominant up to its last coordinate: `η_i - i` weakly
/// decreasing, i.e. `η_i - η_{i+1} ≥ -1`.
pub fn is_rho_dominant(eta: &Weight) -> bool {
    eta.entries().windows(2).all(|w| w[0] - w[1] >= -1)
}

/// One macro step `η → η'` of a linking chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainStep {
    pub word: ReflectionWord,
    pub result: Weight,
}

/// Builds a word `w` with `w.λ = μ` for balanced partitions in
/// characteristic zero, one macro step at a time. Intermediate weights
/// stay between `μ` and the previous weight and stay balanced with `μ`.
pub fn linking_steps(lambda: &Partition, mu: &Partition, ctx: &Context) -> Result<Vec<ChainStep>> {
    if ctx.characteristic() != Characteristic::Zero {
        return Err(Error::RequiresCharZero);
    }
    if !crate::blocks::is_balanced(lambda, mu, ctx)? {
        return Err(Error::NotBalanced(lambda.to_string(), mu.to_string()));
    }
    let meet = lambda.intersection(mu);
    let mut steps = descend(lambda, &meet, ctx)?;
    let back = descend(mu, &meet, ctx)?;
    let mu_w = mu.to_weight(ctx.rank())?;
    for (k, step) in back.iter().enumerate().rev() {
        let target = if k == 0 {
            mu_w.clone()
        } else {
            back[k - 1].result.clone()
        };
        steps.push(ChainStep {
            word: step.word.reversed(),
            result: target,
        });
    }
    Ok(steps)
}

/// The full linking word from `λ` to `μ`.
pub fn linking_chain(lambda: &Partition, mu: &Partition, ctx: &Context) -> Result<ReflectionWord> {
    Ok(linking_steps(lambda, mu, ctx)?
        .iter()
        .fold(ReflectionWord::identity(), |acc, s| acc.then(&s.word)))
}

/// Stage-two descent from `λ` to a balanced `μ ⊆ λ`.
///
/// Works on content vectors: row `k` of `η/μ` holds the contents
/// `c(η)_k ..= c(μ)_k - 1`.
fn descend(lambda: &Partition, mu: &Partition, ctx: &Context) -> Result<Vec<ChainStep>> {
    let n = ctx.rank();
    let delta = ctx.delta();
    let target = content_sequence(&mu.to_weight(n)?, ctx)?;
    let mut eta = lambda.to_weight(n)?;
    let mut cur = content_sequence(&eta, ctx)?;
    let mut steps = Vec::new();
    while cur != target {
        let step = next_step(&cur, &target, delta)
            .ok_or_else(|| Error::ChainDefect(eta.to_string()))?;
        let (word, next) = step;
        let result = word.apply(&eta, ctx)?;
        if content_sequence(&result, ctx)? != next || !is_rho_dominant(&result) {
            return Err(Error::ChainDefect(eta.to_string()));
        }
        steps.push(ChainStep {
            word,
            result: result.clone(),
        });
        eta = result;
        cur = next;
    }
    Ok(steps)
}

fn next_step(cur: &[i64], target: &[i64], delta: i64) -> Option<(ReflectionWord, Vec<i64>)> {
    let n = cur.len();
    // Last boxes of rows of η/μ, smallest content first, southernmost on ties.
    let mut rows: Vec<usize> = (0..n).filter(|&k| cur[k] < target[k]).collect();
    rows.sort_by_key(|&k| (cur[k], std::cmp::Reverse(k)));
    for &i in &rows {
        let partner = 1 - delta - cur[i];
        let mut cands: Vec<usize> = (0..n)
            .filter(|&j| j != i && cur[j] <= partner && partner < target[j])
            .collect();
        cands.reverse();
        for j in cands {
            let mut moved = cur.to_vec();
            moved[i] = 2 - delta - cur[j];
            moved[j] = 2 - delta - cur[i];
            let mut sorted = moved.clone();
            sorted.sort();
            let nested = (0..n).all(|k| cur[k] <= sorted[k] && sorted[k] <= target[k]);
            if !nested || sorted == cur {
                continue;
            }
            let intervals: Vec<(usize, i64, i64)> =
                (0..n).map(|k| (k + 1, sorted[k], target[k] - 1)).collect();
            if !intervals_balanced(&intervals, delta) {
                continue;
            }
            let mut applied = vec![ReflectionGen::sum(i + 1, j + 1, 0).ok()?];
            let mut work = moved;
            for pos in 0..n {
                if work[pos] == sorted[pos] {
                    continue;
                }
                let q = (pos + 1..n).find(|&q| work[q] == sorted[pos])?;
                work.swap(pos, q);
                applied.push(ReflectionGen::diff(pos + 1, q + 1, 0).ok()?);
            }
            applied.reverse();
            return Some((ReflectionWord::new(applied), sorted));
        }
    }
    None
}
