#![allow(dead_code)]

use brauer_core::weights::{Context, Partition};

/// Brute-force orbit membership: tries every permutation and, row by row,
/// both signs, tracking the parity of `d(σ)`.
pub fn brute_orbit(cl: &[i64], cm: &[i64], ctx: &Context) -> bool {
    let n = cl.len();
    let target = ctx.reduce(2 - ctx.delta());
    let mut used = vec![false; n];
    fn go(
        i: usize,
        odd: bool,
        cl: &[i64],
        cm: &[i64],
        used: &mut [bool],
        ctx: &Context,
        target: i64,
    ) -> bool {
        if i == cl.len() {
            return !odd;
        }
        for k in 0..cl.len() {
            if used[k] {
                continue;
            }
            used[k] = true;
            let plus = ctx.reduce(cm[i] - cl[k]) == 0;
            let minus = ctx.reduce(cm[i] + cl[k]) == target;
            let found = (plus && go(i + 1, odd, cl, cm, used, ctx, target))
                || (minus && go(i + 1, !odd, cl, cm, used, ctx, target));
            used[k] = false;
            if found {
                return true;
            }
        }
        false
    }
    go(0, false, cl, cm, &mut used, ctx, target)
}

/// Removes rim `p`-hooks one at a time until none is left.
pub fn core_by_hooks(lambda: &Partition, p: usize) -> Partition {
    let mut parts: Vec<usize> = lambda.parts().to_vec();
    'outer: loop {
        let conj = conj(&parts);
        for i in 0..parts.len() {
            for j in 0..parts[i] {
                let arm = parts[i] - j - 1;
                let leg = conj[j] - i - 1;
                if arm + leg + 1 == p {
                    // Rim hook from (i, parts[i]-1) down to (conj[j]-1, j).
                    let last = conj[j] - 1;
                    for r in i..last {
                        parts[r] = parts[r + 1] - 1;
                    }
                    parts[last] = j;
                    while parts.last() == Some(&0) {
                        parts.pop();
                    }
                    continue 'outer;
                }
            }
        }
        return Partition::new(parts).unwrap();
    }
}

pub fn conj(parts: &[usize]) -> Vec<usize> {
    let w = parts.first().copied().unwrap_or(0);
    (1..=w)
        .map(|j| parts.iter().filter(|&&r| r >= j).count())
        .collect()
}

/// All partitions of degree at most `m`.
pub fn partitions_up_to(m: usize) -> Vec<Partition> {
    (0..=m).flat_map(brauer_core::weights::partitions_of).collect()
}
