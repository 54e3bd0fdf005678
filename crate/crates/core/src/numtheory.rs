//! Exact integer arithmetic over finite sets of integers.
//!
//! Everything here works on arbitrary-precision [`Int`] values. The central
//! question is membership in the monoid `<W>` generated by a finite set `W`
//! under addition with nonnegative coefficients ("`W`-reachability"), together
//! with the bounds beyond which that membership reduces to divisibility by
//! `gcd(W)`.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Counter values and moves. Arbitrary precision throughout.
pub type Int = BigInt;

/// Largest smallest-generator the residue table will allocate for.
const RESIDUE_LIMIT: u64 = 1 << 28;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("set has no nonzero element")]
    EmptyOrZeroSet,
    #[error("elements are not mutually prime")]
    NotCoprime,
    #[error("set mixes positive and negative elements")]
    MixedSigns,
    #[error("expected strictly positive integers")]
    NotPositive,
}

/// A finite, deduplicated set of integers iterated in ascending order.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntSet(BTreeSet<Int>);

impl IntSet {
    pub fn new() -> Self {
        IntSet(BTreeSet::new())
    }

    pub fn singleton(x: Int) -> Self {
        let mut s = IntSet::new();
        s.insert(x);
        s
    }

    pub fn from_i64s(values: &[i64]) -> Self {
        values.iter().map(|&v| Int::from(v)).collect()
    }

    pub fn insert(&mut self, x: Int) -> bool {
        self.0.insert(x)
    }

    pub fn remove(&mut self, x: &Int) -> bool {
        self.0.remove(x)
    }

    pub fn contains(&self, x: &Int) -> bool {
        self.0.contains(x)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &Int> + ExactSizeIterator + Clone {
        self.0.iter()
    }

    pub fn smallest(&self) -> Option<&Int> {
        self.0.first()
    }

    pub fn largest(&self) -> Option<&Int> {
        self.0.last()
    }

    /// Largest absolute value, or `None` for the empty set.
    pub fn max_abs(&self) -> Option<Int> {
        match (self.smallest(), self.largest()) {
            (Some(lo), Some(hi)) => Some(lo.abs().max(hi.abs())),
            _ => None,
        }
    }

    /// The elements different from zero.
    pub fn nonzero(&self) -> IntSet {
        self.0.iter().filter(|x| !x.is_zero()).cloned().collect()
    }

    pub fn negated(&self) -> IntSet {
        self.0.iter().map(|x| -x).collect()
    }

    pub fn translated(&self, t: &Int) -> IntSet {
        self.0.iter().map(|x| x + t).collect()
    }

    /// Every element is `>= 0`.
    pub fn all_nonnegative(&self) -> bool {
        self.smallest().is_none_or(|m| !m.is_negative())
    }

    /// Every element is `<= 0`.
    pub fn all_nonpositive(&self) -> bool {
        self.largest().is_none_or(|m| !m.is_positive())
    }

    /// Contains both a positive and a negative element.
    pub fn has_mixed_signs(&self) -> bool {
        !self.all_nonnegative() && !self.all_nonpositive()
    }

    pub fn is_subset(&self, other: &IntSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &IntSet) -> IntSet {
        self.0.union(&other.0).cloned().collect()
    }

    pub fn to_vec(&self) -> Vec<Int> {
        self.0.iter().cloned().collect()
    }

    pub fn into_inner(self) -> BTreeSet<Int> {
        self.0
    }
}

impl FromIterator<Int> for IntSet {
    fn from_iter<I: IntoIterator<Item = Int>>(iter: I) -> Self {
        IntSet(iter.into_iter().collect())
    }
}

impl<'a> FromIterator<&'a Int> for IntSet {
    fn from_iter<I: IntoIterator<Item = &'a Int>>(iter: I) -> Self {
        IntSet(iter.into_iter().cloned().collect())
    }
}

impl Extend<Int> for IntSet {
    fn extend<I: IntoIterator<Item = Int>>(&mut self, iter: I) {
        self.0.extend(iter)
    }
}

impl<const N: usize> From<[i64; N]> for IntSet {
    fn from(values: [i64; N]) -> Self {
        IntSet::from_i64s(&values)
    }
}

impl IntoIterator for IntSet {
    type Item = Int;
    type IntoIter = std::collections::btree_set::IntoIter<Int>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a IntSet {
    type Item = &'a Int;
    type IntoIter = std::collections::btree_set::Iter<'a, Int>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Debug for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

/// A nonnegative integer combination `sum coefficient * generator`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Decomposition {
    terms: BTreeMap<Int, BigUint>,
}

impl Decomposition {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, generator: Int, coefficient: BigUint) {
        if coefficient.is_zero() {
            return;
        }
        *self.terms.entry(generator).or_default() += coefficient;
    }

    fn add_scaled(&mut self, other: &Decomposition, factor: &BigUint) {
        for (g, c) in &other.terms {
            self.add(g.clone(), c * factor);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Int, &BigUint)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, generator: &Int) -> BigUint {
        self.terms.get(generator).cloned().unwrap_or_default()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value this combination denotes.
    pub fn value(&self) -> Int {
        self.terms
            .iter()
            .map(|(g, c)| g * Int::from(c.clone()))
            .sum()
    }

    /// Total number of summands, counted with multiplicity.
    pub fn size(&self) -> BigUint {
        self.terms.values().sum()
    }
}

/// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: &Int, b: &Int) -> (Int, Int, Int) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (Int::one(), Int::zero());
    let (mut old_t, mut t) = (Int::zero(), Int::one());
    while !r.is_zero() {
        let q = &old_r / &r;
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, next_t);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Positive gcd of the nonzero elements. Zeros are gcd-neutral.
pub fn gcd_set(w: &IntSet) -> Result<Int, NumError> {
    let mut nz = w.iter().filter(|x| !x.is_zero());
    let first = nz.next().ok_or(NumError::EmptyOrZeroSet)?.abs();
    Ok(nz.fold(first, |g, x| g.gcd(x)))
}

/// Bézout coefficients for a set: `sum coeff(w) * w = gcd_set(w)`.
///
/// The two-integer extended Euclid is folded over the nonzero elements in
/// ascending order. Zero elements receive coefficient 0.
pub fn bezout(w: &IntSet) -> Result<BTreeMap<Int, Int>, NumError> {
    let mut nz = w.iter().filter(|x| !x.is_zero());
    let first = nz.next().ok_or(NumError::EmptyOrZeroSet)?;
    let mut coeffs: BTreeMap<Int, Int> = BTreeMap::new();
    coeffs.insert(first.clone(), first.signum());
    let mut g = first.abs();
    for x in nz {
        let (g2, s, t) = ext_gcd(&g, x);
        for c in coeffs.values_mut() {
            *c *= &s;
        }
        coeffs.insert(x.clone(), t);
        g = g2;
    }
    if w.contains(&Int::zero()) {
        coeffs.insert(Int::zero(), Int::zero());
    }
    Ok(coeffs)
}

fn require_positive(w: &IntSet) -> Result<(), NumError> {
    if w.is_empty() {
        return Err(NumError::EmptyOrZeroSet);
    }
    if w.iter().any(|x| !x.is_positive()) {
        return Err(NumError::NotPositive);
    }
    Ok(())
}

/// A pair of mutually prime `W`-reachable integers for a set of positive
/// integers with gcd 1.
///
/// When two elements of `W` are already coprime the pair with the smallest
/// product is returned. Otherwise the Bézout coefficients are split by sign:
/// all negative gives `(w_1, sum_{i>1} -a_i w_i)`, all positive gives
/// `(w_1, sum_{i>1} a_i w_i)`, and mixed signs give the positive part against
/// the negated negative part.
pub fn mutually_prime_pair(w: &IntSet) -> Result<(Int, Int), NumError> {
    require_positive(w)?;
    if !gcd_set(w)?.is_one() {
        return Err(NumError::NotCoprime);
    }
    let elems = w.to_vec();
    if elems.len() == 1 {
        // gcd 1 forces W = {1}.
        return Ok((Int::one(), Int::one()));
    }
    let mut best: Option<(Int, Int)> = None;
    for (i, p) in elems.iter().enumerate() {
        for q in &elems[i + 1..] {
            if p.gcd(q).is_one() && best.as_ref().is_none_or(|(bp, bq)| p * q < bp * bq) {
                best = Some((p.clone(), q.clone()));
            }
        }
    }
    if let Some(pair) = best {
        return Ok(pair);
    }

    let coeffs = bezout(w)?;
    let terms: Vec<(&Int, &Int)> = coeffs.iter().filter(|(_, a)| !a.is_zero()).collect();
    let all_neg = terms.iter().all(|(_, a)| a.is_negative());
    let all_pos = terms.iter().all(|(_, a)| a.is_positive());
    let (p, q) = if all_neg || all_pos {
        let (w1, _) = terms[0];
        let q: Int = terms[1..].iter().map(|(x, a)| *x * a.abs()).sum();
        (w1.clone(), q)
    } else {
        let p: Int = terms.iter().filter(|(_, a)| a.is_positive()).map(|(x, a)| *x * *a).sum();
        let q: Int = terms.iter().filter(|(_, a)| a.is_negative()).map(|(x, a)| *x * (-*a)).sum();
        (p, q)
    };
    debug_assert!(p.gcd(&q).is_one());
    Ok((p, q))
}

/// Greatest integer not expressible over two coprime positive integers:
/// `pq - p - q`.
pub fn sylvester_frobenius(p: &Int, q: &Int) -> Result<Int, NumError> {
    if !p.is_positive() || !q.is_positive() {
        return Err(NumError::NotPositive);
    }
    if !p.gcd(q).is_one() {
        return Err(NumError::NotCoprime);
    }
    Ok(p * q - p - q)
}

/// Nonzero part of a same-sign set, normalized to positive elements, plus the
/// sign (`+1` or `-1`) needed to map results back.
fn positive_part(w: &IntSet) -> Result<(IntSet, i8), NumError> {
    let nz = w.nonzero();
    if nz.is_empty() {
        return Err(NumError::EmptyOrZeroSet);
    }
    if nz.has_mixed_signs() {
        return Err(NumError::MixedSigns);
    }
    if nz.all_nonnegative() {
        Ok((nz, 1))
    } else {
        Ok((nz.negated(), -1))
    }
}

/// Over-approximation of the Frobenius bound: `max(|W|)^2 / gcd(W)`, zero for
/// singletons, negated for nonpositive sets.
///
/// Every multiple of `gcd(W)` strictly beyond the result (in the direction of
/// the elements' sign) is `W`-reachable.
pub fn frobenius_bound(w: &IntSet) -> Result<Int, NumError> {
    let (pos, sign) = positive_part(w)?;
    if pos.len() == 1 {
        return Ok(Int::zero());
    }
    let d = gcd_set(&pos)?;
    let m = pos.largest().expect("nonempty");
    let square = m * m;
    let (bound, rem) = square.div_rem(&d);
    // max(|W|) = d * max(W'), so the division is exact.
    assert!(rem.is_zero(), "max(|W|)^2 not divisible by gcd(W)");
    Ok(if sign > 0 { bound } else { -bound })
}

/// A sharper bound with the same guarantee as [`frobenius_bound`], computed as
/// `d * (pq - p - q)` for a coprime pair of `W'`-reachable integers, where
/// `W' = W / d`.
///
/// Candidates are the pair from [`mutually_prime_pair`] and coprime pairs
/// drawn from `W'` and its pairwise sums; the smallest resulting bound wins.
/// The result is clamped to 0 (a valid bound for any same-sign set).
pub fn sharp_frobenius_bound(w: &IntSet) -> Result<Int, NumError> {
    let (pos, sign) = positive_part(w)?;
    if pos.len() == 1 {
        return Ok(Int::zero());
    }
    let d = gcd_set(&pos)?;
    let scaled: IntSet = pos.iter().map(|x| x / &d).collect();
    let (p, q) = mutually_prime_pair(&scaled)?;
    let mut best = sylvester_frobenius(&p, &q)?;

    let base = scaled.to_vec();
    let mut pool: BTreeSet<Int> = base.iter().cloned().collect();
    for (i, a) in base.iter().enumerate() {
        for b in &base[i..] {
            pool.insert(a + b);
        }
    }
    let pool: Vec<Int> = pool.into_iter().collect();
    for (i, a) in pool.iter().enumerate() {
        for b in &pool[i + 1..] {
            if a.gcd(b).is_one() {
                let f = a * b - a - b;
                if f < best {
                    best = f;
                }
            }
        }
    }
    let bound = (best * d).max(Int::zero());
    Ok(if sign > 0 { bound } else { -bound })
}

/// Shortest-path table over residues modulo the smallest generator of a set
/// of positive integers: `floor[r]` is the least reachable value congruent to
/// `r`. A value `x` is reachable iff `x >= floor[x mod a]`.
struct ResidueTable {
    gens: Vec<u64>,
    floor: Vec<u128>,
    parent: Vec<u32>,
}

impl ResidueTable {
    fn build(gens: &[u64]) -> Self {
        let a = *gens.iter().min().expect("nonempty");
        assert!(a <= RESIDUE_LIMIT, "smallest generator {a} too large for exact membership");
        let a = a as usize;
        let mut floor = vec![u128::MAX; a];
        let mut parent = vec![u32::MAX; a];
        floor[0] = 0;
        let mut heap = BinaryHeap::from([Reverse((0u128, 0usize))]);
        while let Some(Reverse((dist, r))) = heap.pop() {
            if dist > floor[r] {
                continue;
            }
            for (i, &g) in gens.iter().enumerate() {
                let next = (r + (g % a as u64) as usize) % a;
                let cand = dist + g as u128;
                if cand < floor[next] {
                    floor[next] = cand;
                    parent[next] = i as u32;
                    heap.push(Reverse((cand, next)));
                }
            }
        }
        ResidueTable { gens: gens.to_vec(), floor, parent }
    }

    fn modulus(&self) -> u64 {
        self.floor.len() as u64
    }

    fn residue(&self, x: &Int) -> usize {
        x.mod_floor(&Int::from(self.modulus())).to_usize().expect("residue fits")
    }

    fn contains(&self, x: &Int) -> bool {
        !x.is_negative() && *x >= Int::from(self.floor[self.residue(x)])
    }

    /// Per-generator multiplicities for a reachable `x`.
    fn counts(&self, x: &Int) -> Vec<BigUint> {
        let a = self.modulus();
        let mut r = self.residue(x);
        let mut counts = vec![BigUint::zero(); self.gens.len()];
        let base = self.floor[r];
        while r != 0 {
            let i = self.parent[r] as usize;
            counts[i] += 1u32;
            let g = (self.gens[i] % a) as usize;
            r = (r + a as usize - g) % a as usize;
        }
        let rest = (x - Int::from(base)) / Int::from(a);
        let smallest = self.gens.iter().position(|&g| g == a).expect("modulus is a generator");
        counts[smallest] += rest.to_biguint().expect("nonnegative");
        counts
    }
}

/// Scaled positive generators of a same-sign set with their gcd and sign.
fn scaled_generators(nz: &IntSet) -> (Vec<u64>, Int, i8) {
    let (pos, sign) = positive_part(nz).expect("nonzero same-sign set");
    let d = gcd_set(&pos).expect("nonzero set");
    let gens = pos
        .iter()
        .map(|g| (g / &d).to_u64().expect("generator too large for exact membership"))
        .collect();
    (gens, d, sign)
}

/// Whether `x` is a nonnegative integer combination of elements of `W`.
///
/// Mixed-sign sets reduce to divisibility by the gcd. Same-sign sets use
/// divisibility beyond [`frobenius_bound`] and an exact residue table below.
pub fn reachable(w: &IntSet, x: &Int) -> bool {
    if x.is_zero() {
        return true;
    }
    let nz = w.nonzero();
    if nz.is_empty() {
        return false;
    }
    let d = gcd_set(&nz).expect("nonzero set");
    if !x.is_multiple_of(&d) {
        return false;
    }
    if nz.has_mixed_signs() {
        return true;
    }
    let (gens, d, sign) = scaled_generators(&nz);
    let target = if sign > 0 { x / &d } else { -(x / &d) };
    if !target.is_positive() {
        return false;
    }
    let m = Int::from(*gens.iter().max().expect("nonempty"));
    if gens.len() == 1 || target > &m * &m {
        return true;
    }
    ResidueTable::build(&gens).contains(&target)
}

/// A nonnegative combination of elements of `W` summing to `x`, or `None`
/// exactly when `x` is not `W`-reachable.
///
/// Mixed-sign sets follow the constructive argument: Bézout coefficients,
/// with each negative coefficient `a_w` rewritten as `(-a_w) * (-w)` and `-w`
/// itself expanded as `(-w' - 1) w + w w'` for an element `w'` of opposite
/// sign. Coefficients can be large; no minimality is attempted.
pub fn decompose(w: &IntSet, x: &Int) -> Option<Decomposition> {
    if x.is_zero() {
        return Some(Decomposition::new());
    }
    if !reachable(w, x) {
        return None;
    }
    let nz = w.nonzero();
    if nz.has_mixed_signs() {
        Some(decompose_mixed(&nz, x))
    } else {
        Some(decompose_same_sign(&nz, x))
    }
}

fn decompose_mixed(nz: &IntSet, x: &Int) -> Decomposition {
    let d = gcd_set(nz).expect("nonzero set");
    let coeffs = bezout(nz).expect("nonzero set");
    let pos = nz.iter().find(|g| g.is_positive()).expect("mixed signs").clone();
    let neg = nz.iter().rev().find(|g| g.is_negative()).expect("mixed signs").clone();

    // -w as a nonnegative combination.
    let negation = |g: &Int| -> Decomposition {
        let mut dec = Decomposition::new();
        if g.is_positive() {
            // -w = (-w' - 1) w + w w'
            dec.add(g.clone(), (-&neg - 1u32).to_biguint().expect("nonnegative"));
            dec.add(neg.clone(), g.to_biguint().expect("positive"));
        } else {
            // -w' = (w - 1) w' + (-w') w
            dec.add(g.clone(), (&pos - 1u32).to_biguint().expect("nonnegative"));
            dec.add(pos.clone(), (-g).to_biguint().expect("positive"));
        }
        dec
    };
    let single = |g: &Int| {
        let mut dec = Decomposition::new();
        dec.add(g.clone(), BigUint::one());
        dec
    };

    let mut plus_d = Decomposition::new();
    let mut minus_d = Decomposition::new();
    for (g, a) in coeffs.iter().filter(|(g, a)| !g.is_zero() && !a.is_zero()) {
        let mag = a.abs().to_biguint().expect("nonnegative");
        if a.is_positive() {
            plus_d.add_scaled(&single(g), &mag);
            minus_d.add_scaled(&negation(g), &mag);
        } else {
            plus_d.add_scaled(&negation(g), &mag);
            minus_d.add_scaled(&single(g), &mag);
        }
    }
    debug_assert_eq!(plus_d.value(), d);
    debug_assert_eq!(minus_d.value(), -&d);

    let m = x / &d;
    let mut out = Decomposition::new();
    let times = m.abs().to_biguint().expect("nonnegative");
    if m.is_positive() {
        out.add_scaled(&plus_d, &times);
    } else {
        out.add_scaled(&minus_d, &times);
    }
    out
}

fn decompose_same_sign(nz: &IntSet, x: &Int) -> Decomposition {
    let (gens, d, sign) = scaled_generators(nz);
    let target = if sign > 0 { x / &d } else { -(x / &d) };
    let counts = ResidueTable::build(&gens).counts(&target);
    let mut out = Decomposition::new();
    for (g, c) in gens.iter().zip(counts) {
        let g = Int::from(*g) * &d;
        out.add(if sign > 0 { g } else { -g }, c);
    }
    out
}

/// Table of minimum-cost decompositions over a fixed list of small nonzero
/// generators, each with a positive cost, valid for every value of a query
/// window. With unit costs it minimizes the number of summands.
///
/// The search band is padded by `max |g|` around `[min(0, lo), max(0, hi)]`:
/// any combination can be reordered so its partial sums never leave that band.
#[derive(Clone, Debug)]
pub struct MinCostTable {
    generators: Vec<i64>,
    origin: i64,
    query: (i64, i64),
    dist: Vec<u64>,
    via: Vec<u32>,
}

impl MinCostTable {
    /// Largest band the table will allocate.
    pub const SIZE_LIMIT: u64 = 1 << 26;

    /// `None` when the band is too large or does not fit in `i64`.
    pub fn build(generators: &[i64], costs: &[u64], lo: i64, hi: i64) -> Option<Self> {
        assert_eq!(generators.len(), costs.len());
        let span = generators.iter().map(|g| g.unsigned_abs()).max().unwrap_or(0);
        let span = i64::try_from(span).ok()?;
        let start = lo.min(0).checked_sub(span)?;
        let end = hi.max(0).checked_add(span)?;
        let size = u64::try_from(end.checked_sub(start)?).ok()? + 1;
        if size > Self::SIZE_LIMIT {
            return None;
        }
        let mut dist = vec![u64::MAX; size as usize];
        let mut via = vec![u32::MAX; size as usize];
        let origin = start;
        let zero = (0 - origin) as usize;
        dist[zero] = 0;
        let mut heap = BinaryHeap::from([Reverse((0u64, zero))]);
        while let Some(Reverse((cost, at))) = heap.pop() {
            if cost > dist[at] {
                continue;
            }
            let value = at as i64 + origin;
            for (i, (&g, &c)) in generators.iter().zip(costs).enumerate() {
                let next = value + g;
                if g == 0 || next < start || next > end {
                    continue;
                }
                let idx = (next - origin) as usize;
                let cand = cost.saturating_add(c);
                if cand < dist[idx] {
                    dist[idx] = cand;
                    via[idx] = i as u32;
                    heap.push(Reverse((cand, idx)));
                }
            }
        }
        Some(MinCostTable { generators: generators.to_vec(), origin, query: (lo, hi), dist, via })
    }

    pub fn covers(&self, x: i64) -> bool {
        x >= self.query.0 && x <= self.query.1
    }

    /// Minimum total cost of a decomposition of `x`.
    pub fn cost(&self, x: i64) -> Option<u64> {
        if !self.covers(x) {
            return None;
        }
        let d = self.dist[(x - self.origin) as usize];
        (d != u64::MAX).then_some(d)
    }

    /// Per-generator multiplicities of a minimum-cost decomposition of `x`.
    pub fn decompose(&self, x: i64) -> Option<Vec<u64>> {
        self.cost(x)?;
        let mut counts = vec![0u64; self.generators.len()];
        let mut at = x;
        while at != 0 {
            let i = self.via[(at - self.origin) as usize] as usize;
            counts[i] += 1;
            at -= self.generators[i];
        }
        Some(counts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> Int {
        Int::from(v)
    }

    /// Brute-force membership in <W> by bounded search over coefficient vectors.
    fn brute_reachable(w: &[i64], x: i64, max_coeff: i64) -> bool {
        fn go(w: &[i64], x: i64, max_coeff: i64) -> bool {
            match w.split_first() {
                None => x == 0,
                Some((&g, rest)) => (0..=max_coeff).any(|c| go(rest, x - c * g, max_coeff)),
            }
        }
        go(w, x, max_coeff)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_set(&IntSet::from([6, 10, 15])).unwrap(), int(1));
        assert_eq!(gcd_set(&IntSet::from([-3, 0])).unwrap(), int(3));
        // Euclid by hand: gcd(12,18)=6, gcd(6,30)=6.
        assert_eq!(gcd_set(&IntSet::from([-12, 18, 30])).unwrap(), int(6));
        assert_eq!(gcd_set(&IntSet::from([0])), Err(NumError::EmptyOrZeroSet));
        assert_eq!(gcd_set(&IntSet::new()), Err(NumError::EmptyOrZeroSet));
    }

    #[test]
    fn bezout_identity_holds() {
        for w in [vec![3, 5], vec![7], vec![6, 10, 15], vec![-12, 18, 30, 0], vec![-7, 4]] {
            let set = IntSet::from_i64s(&w);
            let coeffs = bezout(&set).unwrap();
            let sum: Int = coeffs.iter().map(|(g, a)| g * a).sum();
            assert_eq!(sum, gcd_set(&set).unwrap(), "set {set}");
        }
        assert_eq!(bezout(&IntSet::from([7])).unwrap()[&int(7)], int(1));
    }

    #[test]
    fn mutually_prime_pairs() {
        assert_eq!(mutually_prime_pair(&IntSet::from([6, 25])).unwrap(), (int(6), int(25)));
        assert_eq!(mutually_prime_pair(&IntSet::from([2, 3])).unwrap(), (int(2), int(3)));
        let w = IntSet::from([6, 10, 15]);
        let (p, q) = mutually_prime_pair(&w).unwrap();
        assert!(p.gcd(&q).is_one());
        assert!(reachable(&w, &p) && reachable(&w, &q));
        assert_eq!(mutually_prime_pair(&IntSet::from([4, 6])), Err(NumError::NotCoprime));
        assert_eq!(mutually_prime_pair(&IntSet::from([-2, 3])), Err(NumError::NotPositive));
    }

    #[test]
    fn sylvester_values() {
        assert_eq!(sylvester_frobenius(&int(6), &int(25)).unwrap(), int(119));
        assert_eq!(sylvester_frobenius(&int(2), &int(3)).unwrap(), int(1));
        assert_eq!(sylvester_frobenius(&int(1), &int(9)).unwrap(), int(-1));
        assert_eq!(sylvester_frobenius(&int(4), &int(6)), Err(NumError::NotCoprime));
        // Brute force: 1 is the only positive integer not reachable from {2,3}.
        let unreachable: Vec<i64> =
            (1..20).filter(|&x| !brute_reachable(&[2, 3], x, 20)).collect();
        assert_eq!(unreachable, vec![1]);
    }

    #[test]
    fn frobenius_bounds() {
        assert_eq!(frobenius_bound(&IntSet::from([-3])).unwrap(), int(0));
        assert_eq!(frobenius_bound(&IntSet::from([6, 10, 15])).unwrap(), int(225));
        assert_eq!(frobenius_bound(&IntSet::from([-6, -10])).unwrap(), int(-50));
        assert_eq!(frobenius_bound(&IntSet::from([-1, 2])), Err(NumError::MixedSigns));
        assert_eq!(sharp_frobenius_bound(&IntSet::from([6, 10, 15])).unwrap(), int(119));
        assert_eq!(sharp_frobenius_bound(&IntSet::from([2, 3])).unwrap(), int(1));
        assert_eq!(sharp_frobenius_bound(&IntSet::from([-3])).unwrap(), int(0));
        assert_eq!(sharp_frobenius_bound(&IntSet::from([-2, -3, 0])).unwrap(), int(-1));
        assert_eq!(sharp_frobenius_bound(&IntSet::from([3, -3])), Err(NumError::MixedSigns));
    }

    #[test]
    fn negative_bound_is_dp_sound() {
        // Every even value <= -50 is reachable from {-6,-10}.
        let w = IntSet::from([-6, -10]);
        for x in (-400..=-50).filter(|x| x % 2 == 0) {
            assert!(brute_reachable(&[-6, -10], x, 70), "{x}");
            assert!(reachable(&w, &int(x)));
        }
    }

    #[test]
    fn reachable_examples() {
        // 119 = 4*6 + 8*10 + 15: not a gap of {6,10,15}, only of the pair {6,25}.
        let w = IntSet::from([6, 10, 15]);
        assert!(brute_reachable(&[6, 10, 15], 119, 25));
        assert!(reachable(&w, &int(119)));
        assert!(!brute_reachable(&[6, 25], 119, 25));
        assert!(!reachable(&IntSet::from([6, 25]), &int(119)));
        assert!(!reachable(&w, &int(29)));
        assert!((30..200).all(|x| reachable(&w, &int(x))));
        assert!(reachable(&IntSet::from([-1, 3]), &int(7)));
        assert!(!reachable(&IntSet::from([2, 3]), &int(1)));
        assert!(reachable(&IntSet::from([0]), &int(0)));
        assert!(!reachable(&IntSet::from([0]), &int(4)));
        assert!(!reachable(&IntSet::from([2, 3]), &int(-2)));
    }

    #[test]
    fn decompose_examples() {
        let d = decompose(&IntSet::from([2, 3]), &int(7)).unwrap();
        assert_eq!(d.value(), int(7));
        let d = decompose(&IntSet::from([-1, 3]), &int(-5)).unwrap();
        assert_eq!(d.value(), int(-5));
        assert!(decompose(&IntSet::from([5]), &int(0)).unwrap().is_empty());
        assert!(decompose(&IntSet::from([2, 3]), &int(1)).is_none());
        let big = decompose(&IntSet::from([6, 10, 15]), &int(100_003)).unwrap();
        assert_eq!(big.value(), int(100_003));
    }

    #[test]
    fn unit_cost_table_matches_brute_force() {
        let gens = [-4, 7, 3];
        let table = MinCostTable::build(&gens, &[1, 1, 1], -30, 30).unwrap();
        for x in -30..=30 {
            let counts = table.decompose(x).unwrap();
            let sum: i64 = counts.iter().zip(gens).map(|(&c, g)| c as i64 * g).sum();
            assert_eq!(sum, x);
            // No shorter combination exists (search up to the found size).
            let best = counts.iter().sum::<u64>() as i64;
            for a in 0..best {
                for b in 0..best - a {
                    for c in 0..best - a - b {
                        assert_ne!(a * -4 + b * 7 + c * 3, x, "shorter for {x}");
                    }
                }
            }
        }
        let same = MinCostTable::build(&[2, 3], &[1, 1], 0, 20).unwrap();
        assert_eq!(same.cost(1), None);
        assert_eq!(same.cost(9), Some(3));
        // Weighted: 6 = 3+3 costs 10, 2+2+2 costs 3.
        let weighted = MinCostTable::build(&[2, 3], &[1, 5], 0, 20).unwrap();
        assert_eq!(weighted.cost(6), Some(3));
        assert_eq!(weighted.decompose(7), Some(vec![2, 1]));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_set() -> impl Strategy<Value = Vec<i64>> {
            prop::collection::vec(-12i64..=12, 1..4)
        }

        proptest! {
            #[test]
            fn gcd_divides_and_ignores_zero(w in small_set()) {
                let set = IntSet::from_i64s(&w);
                prop_assume!(set.iter().any(|x| !x.is_zero()));
                let g = gcd_set(&set).unwrap();
                for x in set.iter() {
                    prop_assert!(x.is_multiple_of(&g));
                }
                let mut with_zero = set.clone();
                with_zero.insert(Int::zero());
                prop_assert_eq!(gcd_set(&with_zero).unwrap(), g);
            }

            #[test]
            fn reachable_matches_brute_force_and_mirror(w in small_set(), x in -40i64..=40) {
                let set = IntSet::from_i64s(&w);
                let fast = reachable(&set, &int(x));
                // Mixed signs can need large coefficients; only compare same-sign sets.
                if !set.nonzero().has_mixed_signs() {
                    prop_assert_eq!(fast, brute_reachable(&w, x, 40));
                }
                prop_assert_eq!(fast, reachable(&set.negated(), &int(-x)));
                match decompose(&set, &int(x)) {
                    Some(d) => {
                        prop_assert!(fast);
                        prop_assert_eq!(d.value(), int(x));
                        for (g, _) in d.terms() {
                            prop_assert!(set.contains(g));
                        }
                    }
                    None => prop_assert!(!fast),
                }
            }

            #[test]
            fn bezout_identity(w in small_set()) {
                let set = IntSet::from_i64s(&w);
                prop_assume!(set.iter().any(|x| !x.is_zero()));
                let coeffs = bezout(&set).unwrap();
                let sum: Int = coeffs.iter().map(|(g, a)| g * a).sum();
                prop_assert_eq!(sum, gcd_set(&set).unwrap());
            }

            #[test]
            fn mutually_prime_pair_postcondition(w in prop::collection::vec(1i64..=40, 1..5)) {
                let set = IntSet::from_i64s(&w);
                prop_assume!(gcd_set(&set).unwrap().is_one());
                let (p, q) = mutually_prime_pair(&set).unwrap();
                prop_assert!(p.gcd(&q).is_one());
                prop_assert!(reachable(&set, &p));
                prop_assert!(reachable(&set, &q));
            }
        }
    }
}
