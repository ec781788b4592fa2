//! Crossing switches on parity images and the unknotting-number lower
//! bounds they give.
//!
//! Switching the crossing of strands `i` and `j` replaces one letter `f_x` of
//! `phi(B)` by `f_{x + z_ij}`. The exact bound is the least number of such
//! replacements that trivialize the word; the rough bound only looks at the
//! odd support `pi(phi(B))` modulo the subgroup `Z_0`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gnk::{subsets, GnkWord};
use crate::parity::{BaseChoice, HWord, ZVec};
use crate::words::reduce_involutive;

/// `z_ij`: the sum of `psi(a_m')` over the `m' ⊇ {i, j}` with `|m ∩ m'| = k - 1`.
pub fn z_pair(i: usize, j: usize, base: &BaseChoice) -> Result<ZVec> {
    let ctx = base.context();
    if i == j || i < 1 || j < 1 || i > ctx.n || j > ctx.n {
        return Err(Error::InvalidPair { i, j, n: ctx.n });
    }
    Ok(subsets(ctx.n, ctx.k)
        .iter()
        .filter(|m| m.contains(i) && m.contains(j) && m.intersection_len(base.m()) + 1 == ctx.k)
        .fold(base.zero(), |acc, m| acc + base.psi_letter(m)))
}

/// A subgroup of `Z` given by an echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Span {
    width: usize,
    basis: Vec<u64>,
}

impl Span {
    pub fn of(width: usize, vectors: impl IntoIterator<Item = ZVec>) -> Self {
        let mut span = Span { width, basis: Vec::new() };
        for v in vectors {
            let r = span.reduce_bits(v.bits());
            if r != 0 {
                span.basis.push(r);
                span.basis.sort_unstable_by(|a, b| b.cmp(a));
            }
        }
        span
    }

    // clear every leading bit of the basis, largest first
    fn reduce_bits(&self, mut bits: u64) -> u64 {
        for &b in &self.basis {
            let lead = 63 - b.leading_zeros();
            if bits >> lead & 1 == 1 {
                bits ^= b;
            }
        }
        bits
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn size(&self) -> u64 {
        1 << self.dim()
    }

    /// The canonical representative of the coset `z + span`.
    pub fn coset_rep(&self, z: ZVec) -> ZVec {
        ZVec::from_bits(self.reduce_bits(z.bits()), self.width)
    }

    pub fn contains(&self, z: ZVec) -> bool {
        self.reduce_bits(z.bits()) == 0
    }

    /// Every element, in a fixed order starting with zero.
    pub fn elements(&self) -> Vec<ZVec> {
        (0..self.size())
            .map(|mask| {
                let bits = self.basis.iter().enumerate().filter(|(t, _)| mask >> t & 1 == 1).fold(0, |a, (_, b)| a ^ b);
                ZVec::from_bits(bits, self.width)
            })
            .collect()
    }
}

/// The switch data of one base choice.
#[derive(Debug, Clone)]
pub struct SwitchSystem {
    base: BaseChoice,
    pairs: Vec<((usize, usize), ZVec)>,
    z0: Span,
    all: Span,
}

impl SwitchSystem {
    pub fn new(base: BaseChoice) -> Self {
        let n = base.context().n;
        let mut pairs = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                pairs.push(((i, j), z_pair(i, j, &base).expect("valid pair")));
            }
        }
        let width = base.z_width();
        let z0 = Span::of(
            width,
            pairs.iter().filter(|((i, j), _)| base.m().contains(*i) && base.m().contains(*j)).map(|p| p.1),
        );
        let all = Span::of(width, pairs.iter().map(|p| p.1));
        SwitchSystem { base, pairs, z0, all }
    }

    pub fn base(&self) -> &BaseChoice {
        &self.base
    }

    /// `z_ij` for every pair `i < j`, lexicographically.
    pub fn pair_table(&self) -> &[((usize, usize), ZVec)] {
        &self.pairs
    }

    pub fn z_of(&self, i: usize, j: usize) -> Result<ZVec> {
        let (a, b) = (i.min(j), i.max(j));
        self.pairs.iter().find(|(p, _)| *p == (a, b)).map(|p| p.1).ok_or(Error::InvalidPair {
            i,
            j,
            n: self.base.context().n,
        })
    }

    /// `Z_0`, spanned by the `z_ij` with `{i, j} ⊆ m`.
    pub fn z0(&self) -> &Span {
        &self.z0
    }

    /// The span of every `z_ij`.
    pub fn z_span(&self) -> &Span {
        &self.all
    }

    /// Distinct nonzero switch vectors with the first pair realising each.
    fn moves(&self) -> Vec<((usize, usize), ZVec)> {
        let mut seen = BTreeSet::new();
        self.pairs.iter().filter(|(_, z)| !z.is_zero() && seen.insert(*z)).copied().collect()
    }
}

/// Replaces the letter at 1-based `pos` by its sum with `z_ij` and reduces.
pub fn apply_switch(w: &HWord, pos: usize, i: usize, j: usize, sys: &SwitchSystem) -> Result<HWord> {
    let z = sys.z_of(i, j)?;
    switch_by(w, pos, z)
}

fn switch_by(w: &HWord, pos: usize, z: ZVec) -> Result<HWord> {
    if pos == 0 || pos > w.len() {
        return Err(Error::PositionOutOfRange { position: pos, len: w.len() });
    }
    let letters = w.iter().enumerate().map(|(t, &x)| if t + 1 == pos { x + z } else { x });
    Ok(HWord::new(reduce_involutive(letters)))
}

/// Necessary condition for a word to be trivialized by switches: even
/// reduced length and an even number of letters in every coset of the span
/// of all `z_ij`. Both are preserved by switches and by cancellation.
pub fn switch_feasibility_necessary(w: &HWord, sys: &SwitchSystem) -> bool {
    let w = w.reduced();
    if w.len() % 2 == 1 {
        return false;
    }
    let mut odd = BTreeSet::new();
    for &x in w.iter() {
        let rep = sys.all.coset_rep(x);
        if !odd.insert(rep) {
            odd.remove(&rep);
        }
    }
    odd.is_empty()
}

/// A crossing switch: strands `i < j` at a 1-based position of the current word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Switch {
    pub position: usize,
    pub i: usize,
    pub j: usize,
}

impl fmt::Display for Switch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z{}{}@{}", self.i, self.j, self.position)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SwitchOutcome {
    /// The minimum, with a sequence of switches realising it.
    Exact {
        count: usize,
        witness: Vec<Switch>,
    },
    BudgetExceeded,
}

impl SwitchOutcome {
    pub fn count(&self) -> Option<usize> {
        match self {
            SwitchOutcome::Exact { count, .. } => Some(*count),
            SwitchOutcome::BudgetExceeded => None,
        }
    }
}

fn odd_support_len(letters: &[ZVec]) -> usize {
    let mut odd = BTreeSet::new();
    for x in letters {
        if !odd.insert(*x) {
            odd.remove(x);
        }
    }
    odd.len()
}

// A switch moves two entries of pi at most, and a nonempty word needs one.
fn lower_estimate(letters: &[ZVec]) -> usize {
    if letters.is_empty() {
        0
    } else {
        odd_support_len(letters).div_ceil(2).max(1)
    }
}

struct Search<'a> {
    moves: &'a [((usize, usize), ZVec)],
    seen: HashMap<Vec<ZVec>, usize>,
    path: Vec<Switch>,
}

impl Search<'_> {
    fn dive(&mut self, word: &HWord, spent: usize, limit: usize) -> bool {
        if word.is_empty() {
            return true;
        }
        if spent + lower_estimate(word.letters()) > limit {
            return false;
        }
        match self.seen.get(word.letters()) {
            Some(&g) if g <= spent => return false,
            _ => {
                self.seen.insert(word.letters().to_vec(), spent);
            }
        }
        for pos in 1..=word.len() {
            for &((i, j), z) in self.moves {
                let next = switch_by(word, pos, z).expect("position in range");
                self.path.push(Switch { position: pos, i, j });
                if self.dive(&next, spent + 1, limit) {
                    return true;
                }
                self.path.pop();
            }
        }
        false
    }
}

/// The least number of switches turning `w` into the empty word, searched
/// exhaustively up to `budget` switches. Positions and pairs are tried in
/// increasing order, so the witness is deterministic.
pub fn min_switches(w: &HWord, sys: &SwitchSystem, budget: usize) -> SwitchOutcome {
    let w = w.reduced();
    if !switch_feasibility_necessary(&w, sys) {
        return SwitchOutcome::BudgetExceeded;
    }
    let moves = sys.moves();
    for limit in lower_estimate(w.letters())..=budget {
        let mut search = Search { moves: &moves, seen: HashMap::new(), path: Vec::new() };
        if search.dive(&w, 0, limit) {
            return SwitchOutcome::Exact { count: search.path.len(), witness: search.path };
        }
    }
    SwitchOutcome::BudgetExceeded
}

/// Replays a switch sequence.
pub fn apply_switches(w: &HWord, switches: &[Switch], sys: &SwitchSystem) -> Result<HWord> {
    switches.iter().try_fold(w.reduced(), |acc, s| apply_switch(&acc, s.position, s.i, s.j, sys))
}

/// An element of `Z_2[Z]`: the set of `x` whose letter `f_x` occurs an odd
/// number of times.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct PiVector(BTreeSet<ZVec>);

impl PiVector {
    pub fn new(support: impl IntoIterator<Item = ZVec>) -> Self {
        PiVector(support.into_iter().collect())
    }

    pub fn support(&self) -> impl Iterator<Item = &ZVec> {
        self.0.iter()
    }

    pub fn contains(&self, z: &ZVec) -> bool {
        self.0.contains(z)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for PiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|z| z.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub fn pi_project(w: &HWord) -> PiVector {
    let mut odd = BTreeSet::new();
    for x in w.iter() {
        if !odd.insert(*x) {
            odd.remove(x);
        }
    }
    PiVector(odd)
}

/// `c_z(xi)`: the number of `z0` in `Z_0` with `z + z0` in the support.
pub fn c_z_count(xi: &PiVector, z: ZVec, sys: &SwitchSystem) -> usize {
    sys.z0.elements().into_iter().filter(|&z0| xi.contains(&(z + z0))).count()
}

/// `c(xi)`: the largest support met by a single coset of `Z_0`.
pub fn c_max(xi: &PiVector, sys: &SwitchSystem) -> usize {
    let mut per_coset: HashMap<ZVec, usize> = HashMap::new();
    for &x in xi.support() {
        *per_coset.entry(sys.z0.coset_rep(x)).or_default() += 1;
    }
    per_coset.into_values().max().unwrap_or(0)
}

/// `ceil(c(pi(phi(w))) / 2)` for an even word.
pub fn rough_unknotting_bound(w: &GnkWord, base: &BaseChoice) -> Result<usize> {
    let image = base.phi(w)?;
    let sys = SwitchSystem::new(base.clone());
    Ok(c_max(&pi_project(&image), &sys).div_ceil(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gnk::{c_full, relators, Context, Subset};
    use crate::parity::parse_hword;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ctx43() -> Context {
        Context::new(4, 3).unwrap()
    }

    fn sys123() -> SwitchSystem {
        SwitchSystem::new(BaseChoice::new(ctx43(), Subset::new([1, 2, 3]).unwrap()).unwrap())
    }

    fn z(bits: &str) -> ZVec {
        ZVec::parse_bits(bits).unwrap()
    }

    fn h(text: &str) -> HWord {
        parse_hword(text).unwrap()
    }

    fn beta() -> GnkWord {
        GnkWord::parse("a123 a234 a123 a134 a123 a134 a123 a234", ctx43()).unwrap()
    }

    #[test]
    fn z_pair_examples() {
        let s = sys123();
        assert_eq!(s.z_of(1, 2).unwrap(), z("11"));
        assert_eq!(s.z_of(1, 3).unwrap(), z("01"));
        assert_eq!(s.z_of(2, 3).unwrap(), z("10"));
        assert_eq!(s.z_of(1, 4).unwrap(), z("10"));
        assert_eq!(s.z_of(3, 1).unwrap(), z("01"));
        assert!(z_pair(2, 2, s.base()).is_err());
        assert!(z_pair(1, 5, s.base()).is_err());
        assert_eq!(s.z0().size(), 4);
    }

    #[test]
    fn span_cosets() {
        let span = Span::of(3, [z("110"), z("011")]);
        assert_eq!(span.dim(), 2);
        assert!(span.contains(z("101")));
        assert!(!span.contains(z("100")));
        assert_eq!(span.coset_rep(z("100")), span.coset_rep(z("010")));
        assert_eq!(span.elements().len(), 4);
        assert_eq!(Span::of(2, [z("00")]).elements(), vec![z("00")]);
    }

    #[test]
    fn switch_examples() {
        let s = sys123();
        let w = h("f[00] f[10] f[11] f[10]");
        let once = apply_switch(&w, 3, 1, 3, &s).unwrap();
        assert_eq!(once, h("f[00] f[10]"));
        assert!(apply_switch(&once, 2, 2, 3, &s).unwrap().is_empty());
        assert_eq!(apply_switch(&h("f[00] f[11]"), 2, 1, 2, &s).unwrap(), HWord::empty());
        assert_eq!(apply_switch(&w, 5, 1, 2, &s), Err(Error::PositionOutOfRange { position: 5, len: 4 }));
        assert!(apply_switch(&w, 0, 1, 2, &s).is_err());
    }

    #[test]
    fn feasibility_examples() {
        let s = sys123();
        assert!(switch_feasibility_necessary(&HWord::empty(), &s));
        assert!(switch_feasibility_necessary(&h("f[00] f[10] f[11] f[10]"), &s));
        assert!(!switch_feasibility_necessary(&h("f[00]"), &s));
        assert_eq!(min_switches(&h("f[00]"), &s, 10), SwitchOutcome::BudgetExceeded);
    }

    #[test]
    fn worked_example() {
        let s = sys123();
        let image = s.base().phi(&beta()).unwrap();
        assert_eq!(image, h("f[00] f[10] f[11] f[10]"));
        assert_eq!(pi_project(&image), PiVector::new([z("00"), z("11")]));
        assert_eq!(rough_unknotting_bound(&beta(), s.base()).unwrap(), 1);
        let outcome = min_switches(&image, &s, 6);
        assert_eq!(outcome.count(), Some(2));
        let SwitchOutcome::Exact { witness, .. } = outcome else { unreachable!() };
        assert!(apply_switches(&image, &witness, &s).unwrap().is_empty());
        let by_hand = [Switch { position: 3, i: 1, j: 3 }, Switch { position: 2, i: 2, j: 3 }];
        assert!(apply_switches(&image, &by_hand, &s).unwrap().is_empty());
        assert_eq!(min_switches(&HWord::empty(), &s, 0).count(), Some(0));
        assert_eq!(min_switches(&image, &s, 1), SwitchOutcome::BudgetExceeded);
    }

    #[test]
    fn pi_and_counts() {
        let s = sys123();
        assert!(pi_project(&h("f[01] f[01]")).is_empty());
        assert!(pi_project(&HWord::empty()).is_empty());
        let xi = PiVector::new([z("00"), z("11")]);
        for x in s.base().z_elements() {
            assert_eq!(c_z_count(&xi, x, &s), 2);
        }
        assert_eq!(c_max(&xi, &s), 2);
        assert_eq!(c_max(&PiVector::default(), &s), 0);
        assert_eq!(xi.to_string(), "{f[00], f[11]}");
    }

    #[test]
    fn rough_bound_of_relators_and_empty() {
        let s = sys123();
        assert_eq!(rough_unknotting_bound(&GnkWord::empty(ctx43()), s.base()).unwrap(), 0);
        for r in relators(4, 3).unwrap() {
            assert_eq!(rough_unknotting_bound(&r, s.base()).unwrap(), 0);
        }
        let odd = GnkWord::parse("a123", ctx43()).unwrap();
        assert!(matches!(rough_unknotting_bound(&odd, s.base()), Err(Error::NotEven(_))));
    }

    #[test]
    fn c_z_depends_on_coset_only() {
        for n in 4..=5 {
            let ctx = Context::new(n, 3).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
            for base in BaseChoice::all(ctx).unwrap() {
                let s = SwitchSystem::new(base);
                let zs: Vec<ZVec> = s.base().z_elements().collect();
                let xi = PiVector::new(zs.iter().copied().filter(|_| rng.gen_bool(0.4)));
                for &a in &zs {
                    let expected = c_z_count(&xi, a, &s);
                    for z0 in s.z0().elements() {
                        assert_eq!(c_z_count(&xi, a + z0, &s), expected);
                    }
                    assert!(expected <= c_max(&xi, &s));
                }
            }
        }
    }

    fn random_hword(rng: &mut ChaCha8Rng, width: usize, len: usize) -> HWord {
        HWord::new((0..len).map(|_| ZVec::from_bits(rng.gen_range(0..1u64 << width), width)).collect())
    }

    #[test]
    fn switches_never_lengthen_and_pi_ignores_pairs() {
        let s = sys123();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let w = random_hword(&mut rng, 2, 10).reduced();
            if w.is_empty() {
                continue;
            }
            let pos = rng.gen_range(1..=w.len());
            let ((i, j), _) = s.pair_table()[rng.gen_range(0..6)];
            assert!(apply_switch(&w, pos, i, j, &s).unwrap().len() <= w.len());

            let x = ZVec::from_bits(rng.gen_range(0..4), 2);
            let at = rng.gen_range(0..=w.len());
            let mut letters = w.letters().to_vec();
            letters.splice(at..at, [x, x]);
            assert_eq!(pi_project(&HWord::new(letters)), pi_project(&w));
        }
    }

    #[test]
    fn exact_minimum_dominates_rough_bound() {
        let s = sys123();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let w = random_hword(&mut rng, 2, 8).reduced();
            if let Some(count) = min_switches(&w, &s, 6).count() {
                let rough = c_max(&pi_project(&w), &s).div_ceil(2);
                assert!(count >= rough, "{w}: {count} < {rough}");
            }
        }
    }

    #[test]
    fn full_twist_inserts_a_switch_pair() {
        let ctx = Context::new(5, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let gens = crate::gnk::generators(5, 3).unwrap();
        for base in BaseChoice::all(ctx).unwrap() {
            let s = SwitchSystem::new(base);
            for _ in 0..20 {
                // an even word: a random half followed by a shuffled copy
                let half: Vec<Subset> = (0..4).map(|_| gens[rng.gen_range(0..gens.len())].clone()).collect();
                let mut copy = half.clone();
                copy.rotate_left(rng.gen_range(0..4));
                let mut letters = half;
                letters.extend(copy);
                let w = GnkWord::new(ctx, letters.clone()).unwrap();
                let (i, j) = (rng.gen_range(1..=4), 5);
                let at = rng.gen_range(0..=letters.len());
                let twist = c_full(i.min(j), i.max(j), 5, 3).unwrap().power(2);
                let mut with = letters.clone();
                with.splice(at..at, twist.letters().iter().cloned());
                let twisted = GnkWord::new(ctx, with).unwrap();

                let b = s.base();
                // phi of the suffix fixes the colour x at the insertion point
                let suffix = GnkWord::new(ctx, letters[at..].to_vec()).unwrap();
                let x = b.phi_at(&suffix, b.zero()).x;
                let z = s.z_of(i, j).unwrap();
                let head = b.phi_at(&GnkWord::new(ctx, letters[..at].to_vec()).unwrap(), x).y;
                let tail = b.phi_at(&suffix, b.zero()).y;
                let pair = b.phi_at(&twist, x).y;
                let expected = head.mul_reduced(&pair).mul_reduced(&tail);
                assert_eq!(b.phi(&twisted).unwrap(), expected);
                assert_eq!(b.phi(&w).unwrap(), head.mul_reduced(&tail));
                let pair = pair.reduced();
                assert!(pair.is_empty() || (pair.len() == 2 && pair.letters()[1] == pair.letters()[0] + z));
            }
        }
    }
}
