//! Brauer diagrams and the algebra `B_n(δ)` they span.
//!
//! Node `k` (`0 ≤ k < n`) is the northern node `k+1`; node `n+k` is the
//! southern node `-(k+1)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::weights::{Characteristic, Context};

/// A perfect matching on `2n` nodes, stored as the partner of every node.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BrauerDiagram {
    n: usize,
    partner: Vec<usize>,
}

impl BrauerDiagram {
    pub fn from_partners(n: usize, partner: Vec<usize>) -> Result<Self> {
        if partner.len() != 2 * n {
            return Err(Error::InvalidDiagram(format!("expected {} nodes", 2 * n)));
        }
        for (a, &b) in partner.iter().enumerate() {
            if b >= 2 * n || b == a || partner[b] != a {
                return Err(Error::InvalidDiagram(format!("{partner:?} is not a perfect matching")));
            }
        }
        Ok(BrauerDiagram { n, partner })
    }

    /// Builds a diagram from pairs of signed 1-based labels.
    pub fn from_pairs(n: usize, pairs: &[(i64, i64)]) -> Result<Self> {
        let node = |x: i64| -> Result<usize> {
            let k = x.unsigned_abs() as usize;
            if x == 0 || k > n {
                return Err(Error::InvalidDiagram(format!("node {x} out of range for n = {n}")));
            }
            Ok(if x > 0 { k - 1 } else { n + k - 1 })
        };
        let mut partner = vec![usize::MAX; 2 * n];
        for &(x, y) in pairs {
            let (a, b) = (node(x)?, node(y)?);
            if a == b || partner[a] != usize::MAX || partner[b] != usize::MAX {
                return Err(Error::InvalidDiagram(format!("node repeated in ({x},{y})")));
            }
            partner[a] = b;
            partner[b] = a;
        }
        if partner.contains(&usize::MAX) {
            return Err(Error::InvalidDiagram("some node is unmatched".into()));
        }
        Ok(BrauerDiagram { n, partner })
    }

    pub fn identity(n: usize) -> Self {
        let partner = (0..2 * n).map(|k| if k < n { k + n } else { k - n }).collect();
        BrauerDiagram { n, partner }
    }

    /// The diagram of a permutation: northern `w[j-1]` joined to southern `j`.
    pub fn from_permutation(w: &[usize]) -> Result<Self> {
        let n = w.len();
        let pairs: Vec<(i64, i64)> = w
            .iter()
            .enumerate()
            .map(|(j, &i)| (i as i64, -(j as i64 + 1)))
            .collect();
        Self::from_pairs(n, &pairs)
    }

    /// `X_{i,j}`: arcs `{i,j}` and `{ī,j̄}`, every other strand vertical.
    pub fn x_ij(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == j || i == 0 || j == 0 || i > n || j > n {
            return Err(Error::InvalidDiagram(format!("X_({i},{j}) needs distinct rows in 1..={n}")));
        }
        let mut pairs = vec![(i as i64, j as i64), (-(i as i64), -(j as i64))];
        pairs.extend(
            (1..=n as i64)
                .filter(|&k| k != i as i64 && k != j as i64)
                .map(|k| (k, -k)),
        );
        Self::from_pairs(n, &pairs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn partner(&self, node: usize) -> usize {
        self.partner[node]
    }

    fn label(&self, node: usize) -> i64 {
        if node < self.n {
            node as i64 + 1
        } else {
            -((node - self.n) as i64 + 1)
        }
    }

    /// Pairs in signed notation, each listed from its earlier node.
    pub fn pairs(&self) -> Vec<(i64, i64)> {
        (0..2 * self.n)
            .filter(|&a| a < self.partner[a])
            .map(|a| (self.label(a), self.label(self.partner[a])))
            .collect()
    }

    pub fn propagating(&self) -> usize {
        (0..self.n).filter(|&a| self.partner[a] >= self.n).count()
    }

    /// For a diagram with `n` propagating lines, `w` with southern node `j`
    /// joined to northern node `w[j-1]`.
    pub fn as_permutation(&self) -> Option<Vec<usize>> {
        (self.n..2 * self.n)
            .map(|s| {
                let t = self.partner[s];
                (t < self.n).then_some(t + 1)
            })
            .collect()
    }

    /// `Φ(d)`: `d` with an extra northern and southern arc on the right.
    pub fn embed(&self) -> Self {
        let n = self.n;
        // Southern labels keep their value, so existing pairs carry over.
        let mut pairs = self.pairs();
        let (a, b) = (n as i64 + 1, n as i64 + 2);
        pairs.push((a, b));
        pairs.push((-a, -b));
        Self::from_pairs(n + 2, &pairs).expect("adding arcs keeps a matching")
    }
}

impl fmt::Display for BrauerDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs().iter().map(|(a, b)| format!("({a},{b})")).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for BrauerDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            input: s.to_string(),
            reason: "expected pairs like (1,2),(-1,-2)".into(),
        };
        let mut pairs = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body_end = rest.find(')').ok_or_else(bad)?;
            let body = rest[..body_end].strip_prefix('(').ok_or_else(bad)?;
            let (x, y) = body.split_once(',').ok_or_else(bad)?;
            let x: i64 = x.trim().parse().map_err(|_| bad())?;
            let y: i64 = y.trim().parse().map_err(|_| bad())?;
            pairs.push((x, y));
            rest = rest[body_end + 1..].trim_start();
            rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
        }
        let n = pairs.len();
        BrauerDiagram::from_pairs(n, &pairs)
    }
}

/// Stacks `a` on top of `b`: the southern nodes of `a` are glued to the
/// northern nodes of `b`. Returns the number of closed loops and the
/// resulting diagram.
pub fn compose(a: &BrauerDiagram, b: &BrauerDiagram) -> Result<(usize, BrauerDiagram)> {
    if a.n != b.n {
        return Err(Error::SizeMismatch(a.n, b.n));
    }
    let n = a.n;
    // Outer nodes: a's north (0..n) and b's south (n..2n) keep their index.
    let mut partner = vec![usize::MAX; 2 * n];
    let mut used_middle = vec![false; n];
    // Walks from middle node `m` entering diagram `into_b`; returns the outer
    // endpoint.
    let walk = |mut m: usize, mut into_b: bool, used: &mut Vec<bool>| -> usize {
        loop {
            used[m] = true;
            if into_b {
                let t = b.partner[m];
                if t >= n {
                    return t;
                }
                m = t;
            } else {
                let t = a.partner[n + m];
                if t < n {
                    return t;
                }
                m = t - n;
            }
            into_b = !into_b;
        }
    };
    for start in 0..2 * n {
        if partner[start] != usize::MAX {
            continue;
        }
        let end = if start < n {
            let t = a.partner[start];
            if t < n {
                t
            } else {
                walk(t - n, true, &mut used_middle)
            }
        } else {
            let t = b.partner[start];
            if t >= n {
                t
            } else {
                walk(t, false, &mut used_middle)
            }
        };
        partner[start] = end;
        partner[end] = start;
    }
    let mut loops = 0;
    for m in 0..n {
        if used_middle[m] {
            continue;
        }
        loops += 1;
        let mut cur = m;
        loop {
            used_middle[cur] = true;
            let down = b.partner[cur];
            used_middle[down] = true;
            let up = a.partner[n + down] - n;
            if up == m {
                break;
            }
            cur = up;
        }
    }
    Ok((loops, BrauerDiagram { n, partner }))
}

/// All `(2n-1)!!` diagrams on `2n` nodes.
pub fn all_diagrams(n: usize) -> Vec<BrauerDiagram> {
    fn go(partner: &mut Vec<usize>, n: usize, out: &mut Vec<BrauerDiagram>) {
        let Some(a) = partner.iter().position(|&x| x == usize::MAX) else {
            out.push(BrauerDiagram {
                n,
                partner: partner.clone(),
            });
            return;
        };
        for b in a + 1..2 * n {
            if partner[b] == usize::MAX {
                partner[a] = b;
                partner[b] = a;
                go(partner, n, out);
                partner[a] = usize::MAX;
                partner[b] = usize::MAX;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut vec![usize::MAX; 2 * n], n, &mut out);
    out
}

/// A coefficient: an exact rational or a residue mod `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, p: u64 },
}

impl Scalar {
    pub fn from_int(x: i64, field: Characteristic) -> Self {
        match field {
            Characteristic::Zero => Scalar::Rational(BigRational::from_integer(BigInt::from(x))),
            Characteristic::Prime(p) => Scalar::Residue {
                value: x.rem_euclid(p as i64) as u64,
                p,
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, p }, Scalar::Residue { value: b, .. }) => Scalar::Residue {
                value: (a + b) % p,
                p: *p,
            },
            _ => panic!("scalars from different fields"),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, p }, Scalar::Residue { value: b, .. }) => Scalar::Residue {
                value: ((*a as u128 * *b as u128) % *p as u128) as u64,
                p: *p,
            },
            _ => panic!("scalars from different fields"),
        }
    }

    pub fn pow(&self, k: usize) -> Scalar {
        let one = match self {
            Scalar::Rational(_) => Scalar::Rational(BigRational::one()),
            Scalar::Residue { p, .. } => Scalar::Residue { value: 1 % p, p: *p },
        };
        (0..k).fold(one, |acc, _| acc.mul(self))
    }

    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { value, p } => Scalar::Residue {
                value: mod_pow(*value, p - 2, *p),
                p: *p,
            },
        })
    }
}

fn mod_pow(base: u64, mut exp: u64, p: u64) -> u64 {
    let m = p as u128;
    let (mut acc, mut b) = (1u128, base as u128 % m);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

/// A linear combination of diagrams with no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    n: usize,
    field: Characteristic,
    terms: BTreeMap<BrauerDiagram, Scalar>,
}

impl AlgebraElement {
    pub fn zero(n: usize, field: Characteristic) -> Self {
        AlgebraElement {
            n,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(d: BrauerDiagram, field: Characteristic) -> Self {
        Self::term(d, Scalar::from_int(1, field), field)
    }

    pub fn term(d: BrauerDiagram, c: Scalar, field: Characteristic) -> Self {
        let mut x = Self::zero(d.n, field);
        x.add_term(d, c);
        x
    }

    pub fn one(n: usize, field: Characteristic) -> Self {
        Self::basis(BrauerDiagram::identity(n), field)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Characteristic {
        self.field
    }

    pub fn terms(&self) -> &BTreeMap<BrauerDiagram, Scalar> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, d: &BrauerDiagram) -> Scalar {
        self.terms
            .get(d)
            .cloned()
            .unwrap_or_else(|| Scalar::from_int(0, self.field))
    }

    fn add_term(&mut self, d: BrauerDiagram, c: Scalar) {
        let sum = match self.terms.get(&d) {
            Some(old) => old.add(&c),
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&d);
        } else {
            self.terms.insert(d, sum);
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> AlgebraElement {
        let mut out = Self::zero(self.n, self.field);
        for (d, x) in &self.terms {
            out.add_term(d.clone(), x.mul(c));
        }
        out
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(d, c)| format!("{c}*[{d}]")).collect();
        f.write_str(&parts.join(" + "))
    }
}

fn field_check(x: &AlgebraElement, ctx: &Context) -> Result<()> {
    if x.field != ctx.characteristic() {
        return Err(Error::Unsupported("element and context use different fields".into()));
    }
    Ok(())
}

/// The bilinear product: each pair of diagrams contributes `δ^t C`.
pub fn multiply(x: &AlgebraElement, y: &AlgebraElement, ctx: &Context) -> Result<AlgebraElement> {
    if x.n != y.n {
        return Err(Error::SizeMismatch(x.n, y.n));
    }
    field_check(x, ctx)?;
    field_check(y, ctx)?;
    let delta = Scalar::from_int(ctx.delta(), ctx.characteristic());
    let mut out = AlgebraElement::zero(x.n, x.field);
    for (a, ca) in &x.terms {
        for (b, cb) in &y.terms {
            let (t, c) = compose(a, b)?;
            out.add_term(c, ca.mul(cb).mul(&delta.pow(t)));
        }
    }
    Ok(out)
}

/// `e_n = (1/δ)·X_{n-1,n}`, an idempotent.
pub fn e_n(ctx: &Context) -> Result<AlgebraElement> {
    let n = ctx.rank();
    if n < 2 {
        return Err(Error::Unsupported("e_n needs n >= 2".into()));
    }
    let field = ctx.characteristic();
    let inv = Scalar::from_int(ctx.delta(), field)
        .inverse()
        .ok_or(Error::DeltaZero)?;
    Ok(AlgebraElement::term(BrauerDiagram::x_ij(n, n - 1, n)?, inv, field))
}

/// `T_n = Σ_{i<j} X_{i,j}`.
pub fn build_tn(ctx: &Context) -> Result<AlgebraElement> {
    let n = ctx.rank();
    if n < 2 {
        return Err(Error::Unsupported("T_n needs n >= 2".into()));
    }
    let field = ctx.characteristic();
    let mut out = AlgebraElement::zero(n, field);
    for i in 1..=n {
        for j in i + 1..=n {
            out.add_term(BrauerDiagram::x_ij(n, i, j)?, Scalar::from_int(1, field));
        }
    }
    Ok(out)
}

/// `Φ` extended linearly, scaled so that it lands in `e_n B_n e_n`:
/// `Φ(d) = d ⊗ e_2`.
pub fn embed(x: &AlgebraElement, delta: i64) -> Result<AlgebraElement> {
    let inv = Scalar::from_int(delta, x.field)
        .inverse()
        .ok_or(Error::DeltaZero)?;
    let mut out = AlgebraElement::zero(x.n + 2, x.field);
    for (d, c) in &x.terms {
        out.add_term(d.embed(), c.mul(&inv));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u2() -> BrauerDiagram {
        "(1,2),(-1,-2)".parse().unwrap()
    }

    #[test]
    fn text_form() {
        let d: BrauerDiagram = "(1,-2),(2,3),(-1,-3)".parse().unwrap();
        assert_eq!(d.n(), 3);
        assert_eq!(d.to_string(), "(1,-2),(2,3),(-1,-3)");
        assert!("(1,2),(1,-1)".parse::<BrauerDiagram>().is_err());
        assert!("(1,5),(-1,-2)".parse::<BrauerDiagram>().is_err());
    }

    #[test]
    fn compose_examples() {
        let (t, c) = compose(&u2(), &u2()).unwrap();
        assert_eq!((t, c), (1, u2()));
        for d in all_diagrams(3) {
            assert_eq!(compose(&BrauerDiagram::identity(3), &d).unwrap(), (0, d.clone()));
            assert_eq!(compose(&d, &BrauerDiagram::identity(3)).unwrap(), (0, d));
        }
        assert_eq!(
            compose(&u2(), &BrauerDiagram::identity(3)),
            Err(Error::SizeMismatch(2, 3))
        );
    }

    #[test]
    fn multiply_examples() {
        let ctx = Context::char_zero(2, 3).unwrap();
        let u = AlgebraElement::basis(u2(), ctx.characteristic());
        let uu = multiply(&u, &u, &ctx).unwrap();
        assert_eq!(uu, u.scale(&Scalar::from_int(3, ctx.characteristic())));
        let one = AlgebraElement::one(2, ctx.characteristic());
        assert_eq!(multiply(&one, &u, &ctx).unwrap(), u);
    }

    #[test]
    fn idempotent_examples() {
        let ctx = Context::char_zero(2, 2).unwrap();
        let e = e_n(&ctx).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e.coefficient(&u2()).to_string(), "1/2");
        assert_eq!(multiply(&e, &e, &ctx).unwrap(), e);
        let cp = Context::modular(4, 3, 5).unwrap();
        let e = e_n(&cp).unwrap();
        assert_eq!(multiply(&e, &e, &cp).unwrap(), e);
        assert_eq!(e_n(&Context::char_zero(2, 0).unwrap()), Err(Error::DeltaZero));
        assert_eq!(e_n(&Context::modular(3, 5, 5).unwrap()), Err(Error::DeltaZero));
    }

    #[test]
    fn tn_examples() {
        let t2 = build_tn(&Context::char_zero(2, 1).unwrap()).unwrap();
        assert_eq!(t2, AlgebraElement::basis(u2(), Characteristic::Zero));
        let t3 = build_tn(&Context::char_zero(3, 1).unwrap()).unwrap();
        assert_eq!(t3.len(), 3);
        assert_eq!(build_tn(&Context::char_zero(6, 1).unwrap()).unwrap().len(), 15);
    }

    #[test]
    fn permutation_examples() {
        let id = BrauerDiagram::identity(3);
        assert_eq!(id.as_permutation(), Some(vec![1, 2, 3]));
        assert_eq!(u2().as_permutation(), None);
        let w = BrauerDiagram::from_permutation(&[2, 3, 1]).unwrap();
        assert_eq!(w.as_permutation(), Some(vec![2, 3, 1]));
    }

    #[test]
    fn counts() {
        let expect = [1, 1, 3, 15, 105, 945];
        for (n, &k) in expect.iter().enumerate() {
            assert_eq!(all_diagrams(n).len(), k);
        }
    }
}
