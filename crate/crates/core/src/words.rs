//! Words in free products of cyclic groups.
//!
//! [`InvWord`] holds words over an alphabet of involutions (every letter is its
//! own inverse), which covers the free products of copies of `Z_2` used
//! throughout the crate: the group generated by `a1, a2, a3`, the parity target
//! group generated by the `f_x`, and the letters `a_m` of the k-free braid
//! groups. The alphabet is the letter type parameter.
//!
//! [`ToyWord`] holds words in the free product of three infinite cyclic groups
//! written with syllables `g^e`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Free reduction in a free product of copies of `Z_2`.
///
/// Single left-to-right pass over a stack; equal adjacent letters cancel.
pub fn reduce_involutive<L, I>(letters: I) -> Vec<L>
where
    L: PartialEq,
    I: IntoIterator<Item = L>,
{
    let mut stack: Vec<L> = Vec::new();
    for letter in letters {
        if stack.last() == Some(&letter) {
            stack.pop();
        } else {
            stack.push(letter);
        }
    }
    stack
}

/// Reduces and then strips conjugating letters until first and last differ.
pub fn cyclic_reduce<L, I>(letters: I) -> Vec<L>
where
    L: PartialEq,
    I: IntoIterator<Item = L>,
{
    let reduced = reduce_involutive(letters);
    let mut lo = 0;
    let mut hi = reduced.len();
    while hi - lo >= 2 && reduced[lo] == reduced[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    reduced.into_iter().skip(lo).take(hi - lo).collect()
}

/// Length of the reduced representative.
pub fn complexity<L, I>(letters: I) -> usize
where
    L: PartialEq,
    I: IntoIterator<Item = L>,
{
    reduce_involutive(letters).len()
}

/// A word over an alphabet of involutions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InvWord<L> {
    letters: Vec<L>,
}

impl<L> Default for InvWord<L> {
    fn default() -> Self {
        InvWord { letters: Vec::new() }
    }
}

impl<L> InvWord<L> {
    pub fn new(letters: Vec<L>) -> Self {
        InvWord { letters }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn letters(&self) -> &[L] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<L> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, L> {
        self.letters.iter()
    }
}

impl<L: PartialEq + Clone> InvWord<L> {
    pub fn reduced(&self) -> Self {
        InvWord::new(reduce_involutive(self.letters.iter().cloned()))
    }

    pub fn cyclically_reduced(&self) -> Self {
        InvWord::new(cyclic_reduce(self.letters.iter().cloned()))
    }

    pub fn complexity(&self) -> usize {
        complexity(self.letters.iter())
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != w[1])
    }

    /// The inverse word: letters are involutions, so this is the reversal.
    pub fn inverse(&self) -> Self {
        InvWord::new(self.letters.iter().rev().cloned().collect())
    }

    /// Unreduced concatenation.
    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        InvWord::new(letters)
    }

    /// Reduced product, assuming both factors are reduced.
    pub fn mul_reduced(&self, other: &Self) -> Self {
        InvWord::new(reduce_involutive(self.letters.iter().chain(other.letters.iter()).cloned()))
    }

    /// Left multiplication by a single letter, keeping a reduced word reduced.
    pub fn prepend_reduced(&mut self, letter: L) {
        if self.letters.first() == Some(&letter) {
            self.letters.remove(0);
        } else {
            self.letters.insert(0, letter);
        }
    }

    /// Right multiplication by a single letter, keeping a reduced word reduced.
    pub fn append_reduced(&mut self, letter: L) {
        if self.letters.last() == Some(&letter) {
            self.letters.pop();
        } else {
            self.letters.push(letter);
        }
    }
}

impl<L> FromIterator<L> for InvWord<L> {
    fn from_iter<T: IntoIterator<Item = L>>(iter: T) -> Self {
        InvWord::new(iter.into_iter().collect())
    }
}

impl<L: fmt::Display> fmt::Display for InvWord<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for letter in &self.letters {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

/// Whitespace-separated opaque tokens.
impl FromStr for InvWord<String> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(s.split_whitespace().map(str::to_owned).collect())
    }
}

/// Generator of the toy free product `Z * Z * Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ToyGen {
    A,
    B,
    C,
}

impl ToyGen {
    pub const ALL: [ToyGen; 3] = [ToyGen::A, ToyGen::B, ToyGen::C];

    fn from_char(c: char) -> Option<Self> {
        match c {
            'a' => Some(ToyGen::A),
            'b' => Some(ToyGen::B),
            'c' => Some(ToyGen::C),
            _ => None,
        }
    }
}

impl fmt::Display for ToyGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ToyGen::A => "a",
            ToyGen::B => "b",
            ToyGen::C => "c",
        })
    }
}

/// A syllable `g^e` of a toy word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub generator: ToyGen,
    pub exponent: i64,
}

impl Syllable {
    pub fn new(generator: ToyGen, exponent: i64) -> Self {
        Syllable { generator, exponent }
    }
}

impl fmt::Display for Syllable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 1 {
            write!(f, "{}", self.generator)
        } else {
            write!(f, "{}^{}", self.generator, self.exponent)
        }
    }
}

/// A word in `Z * Z * Z` with generators `a, b, c`, stored as syllables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ToyWord {
    syllables: Vec<Syllable>,
}

impl ToyWord {
    pub fn new(syllables: Vec<Syllable>) -> Self {
        ToyWord { syllables }
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Merges adjacent syllables with equal generators and drops zero
    /// exponents, to a fixpoint. The result is empty iff the element is trivial.
    pub fn normal_form(&self) -> ToyWord {
        let mut out: Vec<Syllable> = Vec::with_capacity(self.syllables.len());
        for syl in &self.syllables {
            if syl.exponent == 0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.generator == syl.generator => {
                    last.exponent += syl.exponent;
                    if last.exponent == 0 {
                        out.pop();
                    }
                }
                _ => out.push(*syl),
            }
        }
        ToyWord::new(out)
    }

    /// Exponent sum of every generator.
    pub fn exponent_sums(&self) -> BTreeMap<ToyGen, i64> {
        let mut sums: BTreeMap<ToyGen, i64> = ToyGen::ALL.iter().map(|&g| (g, 0)).collect();
        for syl in &self.syllables {
            *sums.entry(syl.generator).or_default() += syl.exponent;
        }
        sums
    }

    /// Image in `Z_2 * Z_2 * Z_2`: one letter per odd syllable, reduced.
    pub fn mod2_image(&self) -> Vec<ToyGen> {
        reduce_involutive(self.syllables.iter().filter(|s| s.exponent.rem_euclid(2) == 1).map(|s| s.generator))
    }

    /// Whether sign switches can trivialize the word: sign switches do not
    /// change the image modulo 2, so that image must be trivial.
    pub fn switch_feasible(&self) -> bool {
        self.mod2_image().is_empty()
    }

    /// Each switch moves one exponent sum by 2, so at least half of the total
    /// absolute exponent sum (rounded up) switches are needed.
    pub fn switch_lower_bound(&self) -> u64 {
        let total: u64 = self.exponent_sums().values().map(|e| e.unsigned_abs()).sum();
        total.div_ceil(2)
    }

    /// Switches the sign of a single letter occurrence inside syllable `index`.
    pub fn switch_one_letter(&self, index: usize) -> Result<ToyWord> {
        let len = self.syllables.len();
        let syl = self.syllables.get(index).ok_or(Error::PositionOutOfRange { position: index, len })?;
        let mut syllables = self.syllables.clone();
        let sign = syl.exponent.signum();
        let mut replacement = vec![Syllable::new(syl.generator, syl.exponent - sign)];
        replacement.push(Syllable::new(syl.generator, -sign));
        syllables.splice(index..=index, replacement);
        Ok(ToyWord::new(syllables))
    }
}

impl fmt::Display for ToyWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.syllables.iter().map(Syllable::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Tokens `g^e` with `g` in `{a, b, c}` and `e` a nonzero integer; `g` alone is
/// `g^1`, and a run such as `abca` is read letter by letter.
impl FromStr for ToyWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut syllables = Vec::new();
        for token in s.split_whitespace() {
            if let Some((gen, exp)) = token.split_once('^') {
                let mut chars = gen.chars();
                let g = match (chars.next().and_then(ToyGen::from_char), chars.next()) {
                    (Some(g), None) => g,
                    _ => return Err(Error::Parse(format!("bad toy generator in `{token}`"))),
                };
                let e: i64 = exp.parse().map_err(|_| Error::Parse(format!("bad exponent in `{token}`")))?;
                if e == 0 {
                    return Err(Error::Parse(format!("zero exponent in `{token}`")));
                }
                syllables.push(Syllable::new(g, e));
            } else {
                for c in token.chars() {
                    let g = ToyGen::from_char(c).ok_or_else(|| Error::Parse(format!("bad toy generator `{c}`")))?;
                    syllables.push(Syllable::new(g, 1));
                }
            }
        }
        Ok(ToyWord::new(syllables))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn w(s: &str) -> Vec<String> {
        s.split_whitespace().map(str::to_owned).collect()
    }

    #[test]
    fn reduce_examples() {
        assert!(reduce_involutive(w("a1 a1")).is_empty());
        assert!(reduce_involutive(w("a1 a2 a2 a1")).is_empty());
        let already = w("f0 fe1 fe12 fe1");
        assert_eq!(reduce_involutive(already.clone()), already);
    }

    #[test]
    fn cyclic_examples() {
        assert_eq!(cyclic_reduce(w("a1 a2 a1")), w("a2"));
        assert!(cyclic_reduce(Vec::<String>::new()).is_empty());
        assert_eq!(cyclic_reduce(w("a1 a2 a3 a1")), w("a2 a3"));
        assert_eq!(cyclic_reduce(w("a1")), w("a1"));
    }

    #[test]
    fn complexity_examples() {
        assert_eq!(complexity(w("a b c b a b c a")), 8);
        assert_eq!(complexity(Vec::<String>::new()), 0);
        assert_eq!(complexity(w("a1 a2 a2 a3")), 2);
    }

    #[test]
    fn toy_normal_form_examples() {
        let t: ToyWord = "a^2 a^-2".parse().unwrap();
        assert!(t.normal_form().is_empty());
        let t: ToyWord = "b^2 b^3".parse().unwrap();
        assert_eq!(t.normal_form().to_string(), "b^5");
        let t: ToyWord = "a^4 b^2 c^4 b^-4".parse().unwrap();
        assert_eq!(t.normal_form(), t);
    }

    #[test]
    fn toy_switch_examples() {
        let w: ToyWord = "a b c b a b c a".parse().unwrap();
        assert!(!w.switch_feasible());
        let w2: ToyWord = "a^4 b^2 c^4 b^-4".parse().unwrap();
        assert!(w2.switch_feasible());
        assert!(ToyWord::default().switch_feasible());

        assert_eq!(w2.switch_lower_bound(), 5);
        assert_eq!("a^2".parse::<ToyWord>().unwrap().switch_lower_bound(), 1);
        assert_eq!("a^6 b^-2".parse::<ToyWord>().unwrap().switch_lower_bound(), 4);
    }

    #[test]
    fn toy_parse_errors() {
        assert!("a^0".parse::<ToyWord>().is_err());
        assert!("d".parse::<ToyWord>().is_err());
        assert!("a^x".parse::<ToyWord>().is_err());
        assert_eq!("abca".parse::<ToyWord>().unwrap().syllables().len(), 4);
    }

    /// Cancels a random adjacent equal pair until none is left.
    fn reduce_random_order(mut letters: Vec<u8>, rng: &mut impl Rng) -> Vec<u8> {
        loop {
            let spots: Vec<usize> =
                (0..letters.len().saturating_sub(1)).filter(|&i| letters[i] == letters[i + 1]).collect();
            if spots.is_empty() {
                return letters;
            }
            let at = spots[rng.gen_range(0..spots.len())];
            letters.drain(at..at + 2);
        }
    }

    #[test]
    fn reduction_is_confluent() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let len = rng.gen_range(0..24);
            let word: Vec<u8> = (0..len).map(|_| rng.gen_range(0..3)).collect();
            let expected = reduce_involutive(word.clone());
            assert_eq!(reduce_random_order(word, &mut rng), expected);
        }
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent(word in proptest::collection::vec(0u8..4, 0..30)) {
            let r = reduce_involutive(word);
            prop_assert_eq!(reduce_involutive(r.clone()), r);
        }

        #[test]
        fn complexity_is_subadditive(
            u in proptest::collection::vec(0u8..4, 0..20),
            v in proptest::collection::vec(0u8..4, 0..20),
        ) {
            let uv: Vec<u8> = u.iter().chain(v.iter()).copied().collect();
            prop_assert!(complexity(uv) <= complexity(u.clone()) + complexity(v));
        }

        #[test]
        fn inserting_a_pair_preserves_reduction(
            word in proptest::collection::vec(0u8..4, 0..30),
            letter in 0u8..4,
            at in 0usize..31,
        ) {
            let at = at.min(word.len());
            let mut longer = word.clone();
            longer.splice(at..at, [letter, letter]);
            prop_assert_eq!(reduce_involutive(longer), reduce_involutive(word));
        }

        #[test]
        fn toy_bound_invariant_under_cancelling_pairs(
            exps in proptest::collection::vec((0usize..3, -5i64..6), 0..8),
            at in 0usize..9,
            g in 0usize..3,
            e in 1i64..4,
        ) {
            let syl: Vec<Syllable> = exps
                .iter()
                .filter(|(_, e)| *e != 0)
                .map(|&(g, e)| Syllable::new(ToyGen::ALL[g], e))
                .collect();
            let word = ToyWord::new(syl.clone());
            let at = at.min(syl.len());
            let mut longer = syl;
            longer.splice(
                at..at,
                [Syllable::new(ToyGen::ALL[g], e), Syllable::new(ToyGen::ALL[g], -e)],
            );
            prop_assert_eq!(ToyWord::new(longer).switch_lower_bound(), word.switch_lower_bound());
        }

        #[test]
        fn single_switch_moves_bound_by_at_most_one(
            exps in proptest::collection::vec((0usize..3, -5i64..6), 1..8),
            pick in 0usize..8,
        ) {
            let syl: Vec<Syllable> = exps
                .iter()
                .filter(|(_, e)| *e != 0)
                .map(|&(g, e)| Syllable::new(ToyGen::ALL[g], e))
                .collect();
            prop_assume!(!syl.is_empty());
            let word = ToyWord::new(syl);
            let idx = pick % word.syllables().len();
            let switched = word.switch_one_letter(idx).unwrap();
            let before = word.switch_lower_bound() as i64;
            let after = switched.switch_lower_bound() as i64;
            prop_assert!((before - after).abs() <= 1);
        }
    }
}
