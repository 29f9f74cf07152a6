//! Block decisions: balanced pairs in characteristic zero, affine orbit
//! classes in characteristic `p`, the content obstruction and split
//! certificates.

use std::collections::BTreeMap;
use std::fmt;

use crate::abacus::{self, choose_b, encode, is_p_core, min_degree, orbit_equiv_abacus};
use crate::error::{Error, Result};
use crate::weights::{box_contents, labels_by_parity, enumerate_label_set, Characteristic, Context, Partition};
use crate::weyl::{orbit_member_affine, OrbitWitness};

/// Per-shape pairing data for a skew shape given as row intervals of
/// contents `(row, lo, hi)`, the row holding contents `lo..=hi`.
///
/// Returns `None` when the contents cannot be paired with sums `1-δ`.
/// Otherwise, for even `δ`, when every box of content `-δ/2` or `(2-δ)/2`
/// sits in a horizontal domino with the other, returns the number of such
/// dominoes; in every other case returns zero.
fn shape_pairing(intervals: &[(usize, i64, i64)], delta: i64) -> Option<usize> {
    let mut count: BTreeMap<i64, i64> = BTreeMap::new();
    for &(_, lo, hi) in intervals {
        for c in lo..=hi {
            *count.entry(c).or_default() += 1;
        }
    }
    for (&c, &k) in &count {
        let partner = 1 - delta - c;
        if partner == c {
            if k % 2 != 0 {
                return None;
            }
        } else if count.get(&partner).copied().unwrap_or(0) != k {
            return None;
        }
    }
    if delta % 2 != 0 {
        return Some(0);
    }
    let (a, b) = (-delta / 2, (2 - delta) / 2);
    let mut dominoes = 0;
    for &(_, lo, hi) in intervals {
        match ((lo..=hi).contains(&a), (lo..=hi).contains(&b)) {
            (true, true) => dominoes += 1,
            (false, false) => {}
            _ => return Some(0),
        }
    }
    Some(dominoes)
}

/// Balance test for a single skew shape.
pub(crate) fn intervals_balanced(intervals: &[(usize, i64, i64)], delta: i64) -> bool {
    shape_pairing(intervals, delta).is_some_and(|rows| rows % 2 == 0)
}

fn skew_intervals(outer: &Partition, inner: &Partition) -> Vec<(usize, i64, i64)> {
    (1..=outer.len())
        .filter(|&i| outer.part(i) > inner.part(i))
        .map(|i| {
            let row = i as i64;
            (i, row - outer.part(i) as i64, row - inner.part(i) as i64 - 1)
        })
        .collect()
}

/// `λ` and `μ` are balanced: the boxes of each of `λ/(λ∩μ)` and
/// `μ/(λ∩μ)` pair off with content sums `1-δ`, and for even `δ` the
/// dominoes of contents `(2-δ)/2`, `-δ/2` counted by the exceptional
/// configuration are even in number.
pub fn is_balanced(lambda: &Partition, mu: &Partition, ctx: &Context) -> Result<bool> {
    if ctx.characteristic() != Characteristic::Zero {
        return Err(Error::RequiresCharZero);
    }
    let meet = lambda.intersection(mu);
    let delta = ctx.delta();
    let Some(x) = shape_pairing(&skew_intervals(lambda, &meet), delta) else {
        return Ok(false);
    };
    let Some(y) = shape_pairing(&skew_intervals(mu, &meet), delta) else {
        return Ok(false);
    };
    Ok((x + y) % 2 == 0)
}

fn check_label(lambda: &Partition, n: usize) -> Result<()> {
    let d = lambda.degree();
    if d > n || !(n - d).is_multiple_of(2) {
        return Err(Error::NotALabel {
            label: lambda.to_string(),
            n,
        });
    }
    Ok(())
}

/// Whether `L(λ^T)` and `L(μ^T)` lie in the same block of `B_n(δ)` over a
/// field of characteristic zero. Equal to `W`-orbit membership.
pub fn same_block_char0(lambda: &Partition, mu: &Partition, ctx: &Context) -> Result<bool> {
    check_label(lambda, ctx.rank())?;
    check_label(mu, ctx.rank())?;
    is_balanced(lambda, mu, ctx)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockKind {
    ExactBlocks,
    OrbitUpperBound,
}

impl fmt::Display for BlockKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BlockKind::ExactBlocks => "exact-blocks",
            BlockKind::OrbitUpperBound => "orbit-upper-bound",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub context: Context,
    pub classes: Vec<Vec<Partition>>,
    pub kind: BlockKind,
}

impl BlockDecomposition {
    pub fn class_of(&self, lambda: &Partition) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(lambda))
    }

    pub fn header(&self) -> String {
        format!(
            "n={} delta={} p={} kind={}",
            self.context.rank(),
            self.context.delta(),
            self.context.prime().unwrap_or(0),
            self.kind
        )
    }

    /// Each class as partition strings, `∅` for the empty partition.
    pub fn class_strings(&self) -> Vec<Vec<String>> {
        self.classes
            .iter()
            .map(|c| c.iter().map(label_text).collect())
            .collect()
    }
}

/// A partition as text, with `∅` for the empty one.
pub fn label_text(lambda: &Partition) -> String {
    if lambda.is_empty() {
        "∅".to_string()
    } else {
        lambda.to_string()
    }
}

impl fmt::Display for BlockDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.header())?;
        for class in self.class_strings() {
            writeln!(f, "{}", class.join(";"))?;
        }
        Ok(())
    }
}

/// Classes of the relation `related` on `labels`, closed transitively.
/// Classes are listed by their first member and keep label order.
fn classes_of(
    labels: &[Partition],
    mut related: impl FnMut(&Partition, &Partition) -> Result<bool>,
) -> Result<Vec<Vec<Partition>>> {
    let mut parent: Vec<usize> = (0..labels.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for a in 0..labels.len() {
        for b in a + 1..labels.len() {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb && related(&labels[a], &labels[b])? {
                parent[rb.max(ra)] = ra.min(rb);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<Partition>> = BTreeMap::new();
    for (k, l) in labels.iter().enumerate() {
        let root = find(&mut parent, k);
        groups.entry(root).or_default().push(l.clone());
    }
    Ok(groups.into_values().collect())
}

/// The blocks of `B_n(δ)` in characteristic zero, as classes of `Λ_n`.
pub fn block_decomposition_char0(ctx: &Context) -> Result<BlockDecomposition> {
    if ctx.characteristic() != Characteristic::Zero {
        return Err(Error::RequiresCharZero);
    }
    let labels = enumerate_label_set(ctx)?;
    let classes = classes_of(&labels, |a, b| is_balanced(a, b, ctx))?;
    Ok(BlockDecomposition {
        context: *ctx,
        classes,
        kind: BlockKind::ExactBlocks,
    })
}

/// The `W_p`-orbit classes of `Λ_n`. Each class is a union of blocks.
pub fn orbit_decomposition_affine(ctx: &Context) -> Result<BlockDecomposition> {
    if ctx.characteristic() == Characteristic::Zero {
        return Err(Error::RequiresCharP);
    }
    let labels = labels_by_parity(ctx.rank());
    let classes = classes_of(&labels, |a, b| orbit_equiv_abacus(a, b, ctx))?;
    Ok(BlockDecomposition {
        context: *ctx,
        classes,
        kind: BlockKind::OrbitUpperBound,
    })
}

/// The scalar `t(δ-1) + Σ c(λ) - Σ c(μ)` for `|λ| - |μ| = 2t`, reduced in
/// the ground ring.
pub fn content_scalar(lambda: &Partition, mu: &Partition, ctx: &Context) -> Result<i64> {
    let diff = lambda.degree() as i64 - mu.degree() as i64;
    if diff < 0 || diff % 2 != 0 {
        return Err(Error::BadSizeDifference(diff));
    }
    let t = diff / 2;
    let sl: i64 = box_contents(lambda).iter().sum();
    let sm: i64 = box_contents(mu).iter().sum();
    Ok(ctx.reduce(t * (ctx.delta() - 1) + sl - sm))
}

/// The necessary condition for a nonzero homomorphism from the cell module
/// of `λ` into that of `μ`: the `T_n` eigenvalues agree.
pub fn content_obstruction(lambda: &Partition, mu: &Partition, ctx: &Context) -> Result<bool> {
    Ok(content_scalar(lambda, mu, ctx)? == 0)
}

/// All `η ⊃ μ` obtained by adding two boxes in different rows.
pub fn pieri_two_box_additions(mu: &Partition) -> Vec<Partition> {
    let add = |parts: &[usize], row: usize| -> Option<Vec<usize>> {
        let mut v = parts.to_vec();
        if row == v.len() {
            v.push(0);
        }
        if row > 0 && v[row - 1] == v[row] {
            return None;
        }
        v[row] += 1;
        Some(v)
    };
    let mut out = Vec::new();
    let base = mu.parts();
    for r1 in 0..=base.len() {
        let Some(once) = add(base, r1) else { continue };
        for r2 in r1 + 1..=once.len() {
            if let Some(twice) = add(&once, r2) {
                out.push(Partition::new(twice).expect("addable boxes keep a partition"));
            }
        }
    }
    out.sort_by(|a, b| b.cmp(a));
    out.dedup();
    out
}

/// A pair `λ ⊢ n`, `μ ⊢ n-2` in one `W_p`-orbit whose labels lie in
/// different blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitCertificate {
    pub lambda: Partition,
    pub mu: Partition,
    /// Rank `|λ|`, parameter and characteristic.
    pub context: Context,
    /// The row of `λ` losing two boxes.
    pub row: usize,
    pub lambda_is_core: bool,
    pub mu_is_core: bool,
    pub witness: Option<OrbitWitness>,
}

impl SplitCertificate {
    /// Fills in the evidence for a candidate pair.
    pub fn candidate(lambda: Partition, row: usize, ctx: &Context) -> Result<Self> {
        let p = ctx.prime().ok_or(Error::RequiresCharP)?;
        let n = lambda.degree();
        let mut parts = lambda.parts().to_vec();
        if row == 0 || row > parts.len() || parts[row - 1] < 2 {
            return Err(Error::Unsupported(format!("row {row} of {lambda} has fewer than two boxes")));
        }
        parts[row - 1] -= 2;
        let mu = Partition::new(parts)?;
        let context = ctx.with_rank(n.max(1))?;
        let witness = orbit_member_affine(&lambda.as_weight(), &mu.as_weight(), &context)?;
        Ok(SplitCertificate {
            lambda_is_core: is_p_core(&lambda, p),
            mu_is_core: is_p_core(&mu, p),
            lambda,
            mu,
            context,
            row,
            witness,
        })
    }
}

/// Re-checks every certificate condition from scratch.
pub fn check_split_certificate(cand: &SplitCertificate) -> bool {
    check_split(cand).unwrap_or(false)
}

fn check_split(cand: &SplitCertificate) -> Result<bool> {
    let ctx = &cand.context;
    let Some(p) = ctx.prime() else {
        return Ok(false);
    };
    let (lambda, mu) = (&cand.lambda, &cand.mu);
    let n = lambda.degree();
    if ctx.rank() != n || mu.degree() + 2 != n || !lambda.contains(mu) {
        return Ok(false);
    }
    let k = cand.row;
    let same_row = (1..=lambda.len()).all(|i| {
        let d = lambda.part(i) - mu.part(i);
        if i == k {
            d == 2
        } else {
            d == 0
        }
    });
    if !same_row {
        return Ok(false);
    }
    let cores = is_p_core(lambda, p) && is_p_core(mu, p);
    if !cores || !cand.lambda_is_core || !cand.mu_is_core {
        return Ok(false);
    }
    // A second Specht factor of a filtration would have to be a two-box
    // addition to μ in different rows, which λ is not.
    if pieri_two_box_additions(mu).contains(lambda) {
        return Ok(false);
    }
    let (lw, mw) = (lambda.as_weight(), mu.as_weight());
    match &cand.witness {
        Some(w) if w.validate(&lw, &mw, ctx) => {}
        _ => return Ok(false),
    }
    if !orbit_equiv_abacus(lambda, mu, ctx)? {
        return Ok(false);
    }
    only_members(lambda, mu, ctx)
}

/// `λ` and `μ` are the only labels in `Λ_n` in their orbit.
///
/// Labels sharing the orbit are exactly the partitions whose runner vector
/// lies in the orbit's class; for a runner vector `x` these have degrees
/// `d_min(x) + p·k`, `k ≥ 0`.
fn only_members(lambda: &Partition, mu: &Partition, ctx: &Context) -> Result<bool> {
    let p = ctx.prime().ok_or(Error::RequiresCharP)? as usize;
    let n = ctx.rank();
    let b = choose_b(n.max(lambda.len()), ctx)?;
    let a = encode(lambda, b, ctx)?;
    let xl = a.runner_counts();
    let xm = encode(mu, b, ctx)?.runner_counts();
    let totals = a.pair_totals();
    let parity = !a.has_black_on_runner_zero();
    let mut x = vec![0usize; p];
    x[0] = xl[0];
    let mut ok = true;
    let mut visit = |x: &[usize]| {
        if x == &xl[..] || x == &xm[..] {
            return;
        }
        if parity && !abacus::runner_changes(&xl, x).is_multiple_of(2) {
            return;
        }
        let d = min_degree(x, b);
        let n = n as i64;
        if d <= n && ((n - d) % 2 == 0 || d + p as i64 <= n) {
            ok = false;
        }
    };
    fn splits(l: usize, totals: &[usize], x: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        let p = x.len();
        if l > totals.len() {
            visit(x);
            return;
        }
        let t = totals[l - 1];
        for k in 0..=t {
            x[l] = k;
            x[p - l] = t - k;
            splits(l + 1, totals, x, visit);
        }
    }
    splits(1, &totals, &mut x, &mut visit);
    Ok(ok)
}

/// Scans `p`-cores `λ` with `|λ| ≤ max_n` and their same-row two-box
/// removals for split certificates.
pub fn search_split_certificates(ctx: &Context, max_n: usize) -> Result<Vec<SplitCertificate>> {
    let p = ctx.prime().ok_or(Error::RequiresCharP)?;
    let mut out = Vec::new();
    for lambda in abacus::enumerate_p_cores(p, max_n) {
        for row in 1..=lambda.len() {
            if lambda.part(row) < lambda.part(row + 1) + 2 {
                continue;
            }
            let mut parts = lambda.parts().to_vec();
            parts[row - 1] -= 2;
            let mu = Partition::new(parts)?;
            if !is_p_core(&mu, p) {
                continue;
            }
            let rank_ctx = ctx.with_rank(lambda.degree())?;
            if !orbit_equiv_abacus(&lambda, &mu, &rank_ctx)? {
                continue;
            }
            let cand = SplitCertificate::candidate(lambda.clone(), row, ctx)?;
            if check_split_certificate(&cand) {
                out.push(cand);
            }
        }
    }
    Ok(out)
}
