//! Abacus calculus: `b` beads on `p` runners, bead `i` at position
//! `λ_i + b - i`. Beads with `i ≤ n` are black, the rest grey.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::weights::{Context, Partition};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Abacus {
    p: u64,
    b: usize,
    n: usize,
    /// Bead positions in bead order, so strictly decreasing.
    positions: Vec<usize>,
}

impl Abacus {
    /// Encodes `λ` with `b` beads on `p` runners; beads `1..=n` are black.
    pub fn new(lambda: &Partition, p: u64, b: usize, n: usize) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidCharacteristic(p));
        }
        if b < lambda.len() {
            return Err(Error::BeadCountTooSmall {
                b,
                needed: lambda.len(),
            });
        }
        let positions = (1..=b).map(|i| lambda.part(i) + b - i).collect();
        Ok(Abacus { p, b, n, positions })
    }

    /// Builds an abacus from raw positions (any order).
    pub fn from_positions(p: u64, n: usize, mut positions: Vec<usize>) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidCharacteristic(p));
        }
        positions.sort_unstable_by(|a, b| b.cmp(a));
        if positions.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Parse {
                input: format!("{positions:?}"),
                reason: "bead positions must be distinct".into(),
            });
        }
        Ok(Abacus {
            p,
            b: positions.len(),
            n,
            positions,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn decode(&self) -> Partition {
        let b = self.b;
        let parts = self
            .positions
            .iter()
            .enumerate()
            .map(|(k, &pos)| pos + k + 1 - b)
            .collect();
        Partition::new(parts).expect("decreasing positions give a partition")
    }

    pub fn runner_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.p as usize];
        for &pos in &self.positions {
            counts[pos % self.p as usize] += 1;
        }
        counts
    }

    /// Totals on the runner pairs `{l, p-l}` for `l = 1..=(p-1)/2`.
    pub fn pair_totals(&self) -> Vec<usize> {
        let c = self.runner_counts();
        let p = self.p as usize;
        (1..=(p - 1) / 2).map(|l| c[l] + c[p - l]).collect()
    }

    pub fn is_black(&self, bead: usize) -> bool {
        bead <= self.n
    }

    pub fn has_black_on_runner_zero(&self) -> bool {
        self.positions
            .iter()
            .take(self.n)
            .any(|&pos| pos % self.p as usize == 0)
    }

    /// Text grid with `p` columns, `●` black, `○` grey, `.` empty.
    pub fn render(&self) -> String {
        let p = self.p as usize;
        let top = self.positions.first().copied().unwrap_or(0);
        let rows = top / p + 1;
        let mut cells = vec!['.'; rows * p];
        for (k, &pos) in self.positions.iter().enumerate() {
            cells[pos] = if self.is_black(k + 1) { '●' } else { '○' };
        }
        let mut out = String::new();
        for row in cells.chunks(p) {
            out.extend(row);
            out.push('\n');
        }
        out
    }

    /// `p:b:n:pos1,pos2,…`
    pub fn compact(&self) -> String {
        let pos: Vec<String> = self.positions.iter().map(|x| x.to_string()).collect();
        format!("{}:{}:{}:{}", self.p, self.b, self.n, pos.join(","))
    }
}

impl fmt::Display for Abacus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl FromStr for Abacus {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let fields: Vec<&str> = s.trim().split(':').collect();
        let [p, b, n, pos] = fields[..] else {
            return Err(bad("expected p:b:n:positions"));
        };
        let p: u64 = p.parse().map_err(|_| bad("bad p"))?;
        let b: usize = b.parse().map_err(|_| bad("bad b"))?;
        let n: usize = n.parse().map_err(|_| bad("bad n"))?;
        let positions = if pos.is_empty() {
            Vec::new()
        } else {
            pos.split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|_| bad("bad position")))
                .collect::<Result<Vec<_>>>()?
        };
        if positions.len() != b {
            return Err(bad("bead count does not match b"));
        }
        Abacus::from_positions(p, n, positions)
    }
}

/// Encodes `λ` on `ctx.prime()` runners with black threshold `ctx.rank()`.
pub fn encode(lambda: &Partition, b: usize, ctx: &Context) -> Result<Abacus> {
    let p = ctx.prime().ok_or(Error::RequiresCharP)?;
    Abacus::new(lambda, p, b, ctx.rank())
}

pub fn decode(a: &Abacus) -> Partition {
    a.decode()
}

pub fn runner_counts(a: &Abacus) -> Vec<usize> {
    a.runner_counts()
}

/// The residue `b mod p` forced by `2b ≡ 2 - δ`.
fn bead_residue(delta: i64, p: u64) -> usize {
    let p = p as i64;
    let half = (p + 1) / 2;
    ((2 - delta) * half).rem_euclid(p) as usize
}

/// The smallest `b ≥ minimum` with `2b ≡ 2 - δ (mod p)`.
pub fn choose_b(minimum: usize, ctx: &Context) -> Result<usize> {
    let p = ctx.prime().ok_or(Error::RequiresCharP)?;
    let r = bead_residue(ctx.delta(), p);
    let p = p as usize;
    Ok(minimum + (r + p - minimum % p) % p)
}

/// Checks that `b` can be used for the orbit criterion of `λ`, `μ`.
pub fn validate_b(b: usize, lambda: &Partition, mu: &Partition, ctx: &Context) -> Result<()> {
    let p = ctx.prime().ok_or(Error::RequiresCharP)?;
    let needed = ctx.rank().max(lambda.len()).max(mu.len());
    if b < needed {
        return Err(Error::BeadCountTooSmall { b, needed });
    }
    if b % p as usize != bead_residue(ctx.delta(), p) {
        return Err(Error::BeadCountResidue { b, p });
    }
    Ok(())
}

/// Orbit criterion on abaci: equal runner-zero counts, equal totals on
/// each pair `{l, p-l}`, and, when no black bead sits on runner 0, an even
/// number of beads changing runners. Sizes must agree mod 2.
pub fn orbit_equiv_abacus(lambda: &Partition, mu: &Partition, ctx: &Context) -> Result<bool> {
    let b = choose_b(ctx.rank().max(lambda.len()).max(mu.len()), ctx)?;
    orbit_equiv_abacus_with_b(lambda, mu, ctx, b)
}

pub fn orbit_equiv_abacus_with_b(
    lambda: &Partition,
    mu: &Partition,
    ctx: &Context,
    b: usize,
) -> Result<bool> {
    validate_b(b, lambda, mu, ctx)?;
    if !(lambda.degree() + mu.degree()).is_multiple_of(2) {
        return Ok(false);
    }
    let a = encode(lambda, b, ctx)?;
    let c = encode(mu, b, ctx)?;
    let (x, y) = (a.runner_counts(), c.runner_counts());
    if x[0] != y[0] || a.pair_totals() != c.pair_totals() {
        return Ok(false);
    }
    if a.has_black_on_runner_zero() {
        return Ok(true);
    }
    Ok(runner_changes(&x, &y).is_multiple_of(2))
}

/// Minimal number of beads that change runner between two runner vectors
/// with equal pair totals.
pub fn runner_changes(x: &[usize], y: &[usize]) -> usize {
    (1..x.len()).map(|l| x[l].saturating_sub(y[l])).sum()
}

/// Smallest degree of a partition with `b` beads and runner vector `x`
/// (all beads pushed up).
pub fn min_degree(x: &[usize], b: usize) -> i64 {
    let p = x.len() as i64;
    let top: i64 = x
        .iter()
        .enumerate()
        .map(|(r, &k)| {
            let k = k as i64;
            k * r as i64 + p * k * (k - 1) / 2
        })
        .sum();
    top - (b as i64) * (b as i64 - 1) / 2
}

/// Slides every bead as far up its runner as possible.
pub fn p_core(lambda: &Partition, p: u64) -> Partition {
    let b = lambda.len();
    let a = Abacus::new(lambda, p, b, b).expect("b equals the number of parts");
    let mut positions = Vec::with_capacity(b);
    for (r, &k) in a.runner_counts().iter().enumerate() {
        positions.extend((0..k).map(|t| r + t * p as usize));
    }
    Abacus::from_positions(p, b, positions)
        .expect("packed positions are distinct")
        .decode()
}

pub fn is_p_core(lambda: &Partition, p: u64) -> bool {
    p_core(lambda, p) == *lambda
}

/// All `p`-cores of degree at most `max_n`, sorted by degree and then
/// decreasing lexicographic order.
pub fn enumerate_p_cores(p: u64, max_n: usize) -> Vec<Partition> {
    // A core is fixed by runner offsets o_r (summing to zero) from an abacus
    // with b = p·m beads; its size is Σ_r r·o_r + p·o_r(o_r - 1)/2 and
    // every term is nonnegative.
    let search = CoreSearch {
        p,
        budget: max_n as i64,
        m: max_n as i64 + 1,
    };
    let mut cores = Vec::new();
    search.extend(&mut vec![0; p as usize], 0, 0, 0, &mut cores);
    cores.sort_by(|a, b| a.degree().cmp(&b.degree()).then(b.cmp(a)));
    cores
}

struct CoreSearch {
    p: u64,
    budget: i64,
    m: i64,
}

impl CoreSearch {
    fn term(&self, r: usize, o: i64) -> i64 {
        r as i64 * o + self.p as i64 * o * (o - 1) / 2
    }

    fn extend(&self, offsets: &mut Vec<i64>, r: usize, used: i64, sum: i64, out: &mut Vec<Partition>) {
        let last = offsets.len() - 1;
        if r == last {
            let o = -sum;
            if used + self.term(r, o) <= self.budget && self.m + o >= 0 {
                offsets[r] = o;
                out.push(self.decode(offsets));
            }
            return;
        }
        // The term is convex in o with its minimum near o = 0.
        let mut o = 0;
        while used + self.term(r, o - 1) <= self.budget {
            o -= 1;
        }
        while used + self.term(r, o) <= self.budget {
            offsets[r] = o;
            self.extend(offsets, r + 1, used + self.term(r, o), sum + o, out);
            o += 1;
        }
    }

    fn decode(&self, offsets: &[i64]) -> Partition {
        let p = self.p as usize;
        let mut positions = Vec::new();
        for (r, &off) in offsets.iter().enumerate() {
            let k = (self.m + off) as usize;
            positions.extend((0..k).map(|t| r + t * p));
        }
        Abacus::from_positions(self.p, 0, positions)
            .expect("distinct positions")
            .decode()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn ctx16() -> Context {
        Context::modular(16, 2, 5).unwrap()
    }

    #[test]
    fn encode_examples() {
        let a = encode(&part("5,3,3,2,1,1"), 20, &ctx16()).unwrap();
        let mut expect: Vec<usize> = vec![24, 21, 20, 18, 16, 15];
        expect.extend((0..=13).rev());
        assert_eq!(a.positions(), &expect[..]);
        let c = Context::modular(5, 2, 5).unwrap();
        assert_eq!(encode(&Partition::empty(), 5, &c).unwrap().positions(), &[4, 3, 2, 1, 0]);
        assert_eq!(encode(&part("2"), 5, &c).unwrap().positions(), &[6, 3, 2, 1, 0]);
        assert!(matches!(
            encode(&part("1,1,1"), 2, &c),
            Err(Error::BeadCountTooSmall { .. })
        ));
    }

    #[test]
    fn decode_examples() {
        let c = Context::modular(5, 2, 5).unwrap();
        for s in ["", "2", "4,4,2", "3,1,1,1,1"] {
            let l = part(s);
            assert_eq!(encode(&l, 5, &c).unwrap().decode(), l);
        }
    }

    #[test]
    fn runner_count_examples() {
        let a = encode(&part("5,3,3,2,1,1"), 20, &ctx16()).unwrap();
        assert_eq!(a.runner_counts()[0], 5);
        assert_eq!(a.pair_totals(), vec![8, 7]);
        let e = encode(&part("5,3,3,2,1,1,1"), 20, &ctx16()).unwrap();
        assert_eq!(e.pair_totals(), vec![9, 6]);
        let c = Context::modular(5, 2, 5).unwrap();
        assert_eq!(encode(&Partition::empty(), 5, &c).unwrap().runner_counts(), vec![1; 5]);
    }

    #[test]
    fn orbit_criterion_examples() {
        let c = ctx16();
        assert!(orbit_equiv_abacus(&part("5,3,3,2,1,1"), &part("2,2,2,1,1,1"), &c).unwrap());
        assert!(!orbit_equiv_abacus(&part("5,3,3,2,1,1"), &part("5,3,3,2,1,1,1"), &c).unwrap());
        assert!(orbit_equiv_abacus(&part("5,3,3,2,1,1"), &part("5,3,3,2,1,1"), &c).unwrap());
        let c2 = Context::modular(2, 2, 5).unwrap();
        assert_eq!(choose_b(2, &c2).unwrap(), 5);
        assert!(!orbit_equiv_abacus(&part("2"), &Partition::empty(), &c2).unwrap());
    }

    #[test]
    fn b_validation() {
        let c = ctx16();
        assert_eq!(choose_b(16, &c).unwrap(), 20);
        let l = part("5,3,3,2,1,1");
        assert!(orbit_equiv_abacus_with_b(&l, &l, &c, 25).unwrap());
        assert!(matches!(
            orbit_equiv_abacus_with_b(&l, &l, &c, 21),
            Err(Error::BeadCountResidue { .. })
        ));
        assert!(matches!(
            orbit_equiv_abacus_with_b(&l, &l, &c, 15),
            Err(Error::BeadCountTooSmall { .. })
        ));
    }

    #[test]
    fn core_examples() {
        assert_eq!(p_core(&part("2,1"), 5), part("2,1"));
        assert_eq!(p_core(&part("5"), 5), Partition::empty());
        assert_eq!(p_core(&part("4,4,2"), 5), Partition::empty());
        assert!(is_p_core(&Partition::empty(), 5));
        assert!(is_p_core(&part("3,2"), 5));
        assert!(!is_p_core(&part("5"), 5));
    }

    #[test]
    fn render_examples() {
        let c = Context::modular(5, 2, 5).unwrap();
        assert_eq!(encode(&Partition::empty(), 5, &c).unwrap().render(), "●●●●●\n");
        let c2 = Context::modular(2, 2, 5).unwrap();
        let r = encode(&part("2"), 5, &c2).unwrap().render();
        assert_eq!(r, "○○○●.\n.●...\n");
        assert!(r.lines().all(|l| l.chars().count() == 5));
    }

    #[test]
    fn compact_round_trip() {
        let a = encode(&part("5,3,3,2,1,1"), 20, &ctx16()).unwrap();
        let s = a.compact();
        assert!(s.starts_with("5:20:16:24,21,20,18,16,15,13"));
        assert_eq!(s.parse::<Abacus>().unwrap(), a);
        assert!("5:3:1:1,2".parse::<Abacus>().is_err());
    }

    #[test]
    fn min_degree_of_cores() {
        for core in enumerate_p_cores(3, 10) {
            let b = core.len() + 3;
            let a = Abacus::new(&core, 3, b, b).unwrap();
            assert_eq!(min_degree(&a.runner_counts(), b), core.degree() as i64);
        }
    }

    #[test]
    fn core_enumeration_matches_filter() {
        for p in [3u64, 5] {
            let mut want: Vec<Partition> = (0..=12)
                .flat_map(crate::weights::partitions_of)
                .filter(|l| is_p_core(l, p))
                .collect();
            want.sort_by(|a, b| a.degree().cmp(&b.degree()).then(b.cmp(a)));
            assert_eq!(enumerate_p_cores(p, 12), want);
        }
    }
}
