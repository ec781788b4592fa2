//! The k-free braid groups `G_n^k`: generators `a_m` indexed by k-subsets `m`
//! of `{1..n}`, their relators, and the full-twist products `c_ij`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::InvWord;

/// A strictly increasing set of strand indices, 1-based.
///
/// Used for generator indices `m`, base choices and tetrahedron sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subset(Vec<u8>);

impl Subset {
    /// Builds a subset from indices in any order; duplicates are rejected.
    pub fn new(indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut v: Vec<usize> = indices.into_iter().collect();
        v.sort_unstable();
        if v.windows(2).any(|w| w[0] == w[1]) || v.iter().any(|&x| x == 0 || x > u8::MAX as usize) {
            return Err(Error::Parse(format!("bad index set {v:?}")));
        }
        Ok(Subset(v.into_iter().map(|x| x as u8).collect()))
    }

    pub(crate) fn from_sorted(v: Vec<u8>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        Subset(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&x| x as usize)
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&(x as u8)).is_ok()
    }

    pub fn intersection_len(&self, other: &Subset) -> usize {
        self.iter().filter(|&x| other.contains(x)).count()
    }

    /// Elements of `self` not in `other`.
    pub fn difference(&self, other: &Subset) -> Vec<usize> {
        self.iter().filter(|&x| !other.contains(x)).collect()
    }

    pub fn without(&self, x: usize) -> Subset {
        Subset(self.0.iter().copied().filter(|&y| y as usize != x).collect())
    }

    pub fn max(&self) -> usize {
        self.0.last().copied().unwrap_or(0) as usize
    }

    pub fn is_valid_for(&self, ctx: Context) -> bool {
        self.len() == ctx.k && self.max() <= ctx.n && self.0.first().is_some_and(|&x| x >= 1)
    }

    /// `a123` when every index is a single digit, `a{1,2,13}` otherwise.
    pub fn letter_token(&self) -> String {
        if self.0.iter().all(|&x| x <= 9) {
            let digits: String = self.0.iter().map(|x| x.to_string()).collect();
            format!("a{digits}")
        } else {
            let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
            format!("a{{{}}}", parts.join(","))
        }
    }

    /// Parses `a{1,2,3}` or the compact `a123` (single-digit indices).
    pub fn parse_letter(token: &str) -> Result<Subset> {
        let body =
            token.strip_prefix('a').ok_or_else(|| Error::Parse(format!("letter `{token}` must start with `a`")))?;
        let indices: Vec<usize> = if let Some(inner) = body.strip_prefix('{') {
            let inner = inner.strip_suffix('}').ok_or_else(|| Error::Parse(format!("unclosed brace in `{token}`")))?;
            inner
                .split(',')
                .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad index in `{token}`"))))
                .collect::<Result<_>>()?
        } else {
            body.chars()
                .map(|c| {
                    c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Parse(format!("bad index in `{token}`")))
                })
                .collect::<Result<_>>()?
        };
        if indices.is_empty() {
            return Err(Error::Parse(format!("empty letter `{token}`")));
        }
        Subset::new(indices)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// The pair `(n, k)`: number of strands and subset size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Context {
    pub n: usize,
    pub k: usize,
}

impl Context {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if k < 1 || k > n || n > 64 {
            return Err(Error::InvalidContext { n, k });
        }
        Ok(Context { n, k })
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        if i == j || i < 1 || j < 1 || i > self.n || j > self.n {
            return Err(Error::InvalidPair { i, j, n: self.n });
        }
        Ok(())
    }
}

/// All `size`-subsets of `{1..n}` in lexicographic order.
pub fn subsets(n: usize, size: usize) -> Vec<Subset> {
    let mut out = Vec::new();
    if size > n {
        return out;
    }
    let mut current: Vec<u8> = (1..=size as u8).collect();
    loop {
        out.push(Subset::from_sorted(current.clone()));
        // advance to the next combination
        let mut pos = size;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if (current[pos] as usize) < n - (size - 1 - pos) {
                break;
            }
        }
        current[pos] += 1;
        for q in pos + 1..size {
            current[q] = current[q - 1] + 1;
        }
    }
}

/// A word in `G_n^k`. Every letter is an involution.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GnkWord {
    ctx: Context,
    word: InvWord<Subset>,
}

impl GnkWord {
    pub fn new(ctx: Context, letters: Vec<Subset>) -> Result<Self> {
        if let Some(bad) = letters.iter().find(|m| !m.is_valid_for(ctx)) {
            return Err(Error::InvalidLetter { letter: bad.letter_token(), n: ctx.n, k: ctx.k });
        }
        Ok(GnkWord { ctx, word: InvWord::new(letters) })
    }

    pub(crate) fn from_valid(ctx: Context, letters: Vec<Subset>) -> Self {
        debug_assert!(letters.iter().all(|m| m.is_valid_for(ctx)));
        GnkWord { ctx, word: InvWord::new(letters) }
    }

    pub fn empty(ctx: Context) -> Self {
        GnkWord { ctx, word: InvWord::empty() }
    }

    /// Parses whitespace-separated letter tokens in the given context.
    pub fn parse(text: &str, ctx: Context) -> Result<Self> {
        let letters = text.split_whitespace().map(Subset::parse_letter).collect::<Result<Vec<_>>>()?;
        GnkWord::new(ctx, letters)
    }

    pub fn context(&self) -> Context {
        self.ctx
    }

    pub fn letters(&self) -> &[Subset] {
        self.word.letters()
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn reduced(&self) -> GnkWord {
        GnkWord { ctx: self.ctx, word: self.word.reduced() }
    }

    pub fn complexity(&self) -> usize {
        self.word.complexity()
    }

    /// Reversal, which is the inverse since each `a_m` is an involution.
    pub fn inverse(&self) -> GnkWord {
        GnkWord { ctx: self.ctx, word: self.word.inverse() }
    }

    /// Unreduced concatenation. Both words must share a context.
    pub fn concat(&self, other: &GnkWord) -> GnkWord {
        assert_eq!(self.ctx, other.ctx, "concatenating words of different contexts");
        GnkWord { ctx: self.ctx, word: self.word.concat(&other.word) }
    }

    pub fn power(&self, e: usize) -> GnkWord {
        let letters = std::iter::repeat_n(self.letters(), e).flatten().cloned().collect();
        GnkWord { ctx: self.ctx, word: InvWord::new(letters) }
    }

    /// Occurrence count of every generator.
    pub fn letter_counts(&self) -> BTreeMap<&Subset, usize> {
        let mut counts = BTreeMap::new();
        for m in self.letters() {
            *counts.entry(m).or_insert(0) += 1;
        }
        counts
    }

    /// Every generator occurs an even number of times.
    pub fn is_even(&self) -> bool {
        self.first_odd_letter().is_none()
    }

    pub fn first_odd_letter(&self) -> Option<&Subset> {
        self.letter_counts().into_iter().find(|(_, c)| c % 2 == 1).map(|(m, _)| m)
    }
}

impl fmt::Display for GnkWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters().iter().map(Subset::letter_token).collect();
        f.write_str(&parts.join(" "))
    }
}

/// The generators of `G_n^k` in lexicographic order.
pub fn generators(n: usize, k: usize) -> Result<Vec<Subset>> {
    let ctx = Context::new(n, k)?;
    Ok(subsets(ctx.n, ctx.k))
}

/// `a_m` and `a_m'` commute when `|m ∩ m'| <= k - 2`.
pub fn far_commutes(m: &Subset, other: &Subset) -> bool {
    debug_assert_eq!(m.len(), other.len());
    m.intersection_len(other) + 2 <= m.len()
}

/// Relator words: squares, far commutators, then one tetrahedron word
/// `(a_{M \ i_1} ... a_{M \ i_{k+1}})^2` per (k+1)-subset `M`.
pub fn relators(n: usize, k: usize) -> Result<Vec<GnkWord>> {
    let ctx = Context::new(n, k)?;
    let gens = subsets(n, k);
    let mut out = Vec::new();
    for m in &gens {
        out.push(GnkWord::from_valid(ctx, vec![m.clone(), m.clone()]));
    }
    for (x, m) in gens.iter().enumerate() {
        for other in &gens[x + 1..] {
            if far_commutes(m, other) {
                let letters = vec![m.clone(), other.clone(), m.clone(), other.clone()];
                out.push(GnkWord::from_valid(ctx, letters));
            }
        }
    }
    for big in subsets(n, k + 1) {
        let once: Vec<Subset> = big.iter().map(|i| big.without(i)).collect();
        let mut letters = once.clone();
        letters.extend(once);
        out.push(GnkWord::from_valid(ctx, letters));
    }
    Ok(out)
}

/// `c_ij`: product of every `a_m` with `{i, j} ⊆ m`, in lexicographic order.
pub fn c_full(i: usize, j: usize, n: usize, k: usize) -> Result<GnkWord> {
    let ctx = Context::new(n, k)?;
    ctx.check_pair(i, j)?;
    let letters = subsets(n, k).into_iter().filter(|m| m.contains(i) && m.contains(j)).collect();
    Ok(GnkWord::from_valid(ctx, letters))
}

/// Checks a word's letters against a context without building a new word.
pub(crate) fn check_pair(ctx: Context, i: usize, j: usize) -> Result<()> {
    ctx.check_pair(i, j)
}
