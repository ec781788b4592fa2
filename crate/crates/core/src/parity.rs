//! The parity homomorphism from the even subgroup `H_n^k` of `G_n^k` into the
//! free product `H` of copies of `Z_2` indexed by `Z = Z_2^{(k-1)(n-k)}`.
//!
//! A base choice `m` (a k-subset) colours each letter `a_m'` with
//! `|m ∩ m'| = k - 1` by a vector of `Z`; the group then acts on `Z × H` by
//! shifting the colour for `m' != m` and emitting a letter `f_x` for `m' = m`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gnk::{subsets, Context, GnkWord, Subset};
use crate::pure_braid::{map_pb_to_g3, map_pb_to_g4, PbWord};
use crate::words::InvWord;

/// An element of `Z`, stored as a bit vector.
///
/// Bit `t` is component `p`, basis vector `e_b`, where `p` runs over the
/// indices outside the base in ascending order and `t = pos(p) * (k-1) + (b-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ZVec {
    bits: u64,
    width: u8,
}

impl ZVec {
    pub fn zero(width: usize) -> Self {
        ZVec { bits: 0, width: width as u8 }
    }

    pub fn from_bits(bits: u64, width: usize) -> Self {
        debug_assert!(width == 64 || bits >> width == 0);
        ZVec { bits, width: width as u8 }
    }

    /// Parses a bit string in canonical order, such as `10`.
    pub fn parse_bits(text: &str) -> Result<Self> {
        let mut bits = 0u64;
        for (t, c) in text.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << t,
                _ => return Err(Error::Parse(format!("bad bit string `{text}`"))),
            }
        }
        if text.len() > 63 {
            return Err(Error::Parse(format!("bit string `{text}` too long")));
        }
        Ok(ZVec::from_bits(bits, text.len()))
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn width(&self) -> usize {
        self.width as usize
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn bit(&self, t: usize) -> bool {
        self.bits >> t & 1 == 1
    }

    pub fn bit_string(&self) -> String {
        (0..self.width()).map(|t| if self.bit(t) { '1' } else { '0' }).collect()
    }
}

/// Group addition in `Z`.
impl std::ops::Add for ZVec {
    type Output = ZVec;

    fn add(self, rhs: ZVec) -> ZVec {
        debug_assert_eq!(self.width, rhs.width);
        ZVec { bits: self.bits ^ rhs.bits, width: self.width }
    }
}

/// Letters of `H` print as `f[bits]`.
impl fmt::Display for ZVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f[{}]", self.bit_string())
    }
}

/// A word in `H`: letters `f_x` with `x` in `Z`.
pub type HWord = InvWord<ZVec>;

/// Parses `f[00] f[10] ...`.
pub fn parse_hword(text: &str) -> Result<HWord> {
    text.split_whitespace()
        .map(|tok| {
            let inner = tok
                .strip_prefix("f[")
                .and_then(|t| t.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("bad H letter `{tok}`")))?;
            ZVec::parse_bits(inner)
        })
        .collect()
}

/// The fixed k-subset `m` defining `psi` and `phi`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BaseChoice {
    ctx: Context,
    m: Subset,
    outside: Vec<usize>,
}

impl BaseChoice {
    pub fn new(ctx: Context, m: Subset) -> Result<Self> {
        if !m.is_valid_for(ctx) {
            return Err(Error::InvalidLetter { letter: m.letter_token(), n: ctx.n, k: ctx.k });
        }
        let outside: Vec<usize> = (1..=ctx.n).filter(|&p| !m.contains(p)).collect();
        if (ctx.k - 1) * outside.len() > 63 {
            return Err(Error::InvalidContext { n: ctx.n, k: ctx.k });
        }
        Ok(BaseChoice { ctx, m, outside })
    }

    /// Every base choice for a context, in lexicographic order.
    pub fn all(ctx: Context) -> Result<Vec<BaseChoice>> {
        subsets(ctx.n, ctx.k).into_iter().map(|m| BaseChoice::new(ctx, m)).collect()
    }

    pub fn context(&self) -> Context {
        self.ctx
    }

    pub fn m(&self) -> &Subset {
        &self.m
    }

    /// Bit width of `Z`, `(k-1)(n-k)`.
    pub fn z_width(&self) -> usize {
        (self.ctx.k - 1) * self.outside.len()
    }

    pub fn z_size(&self) -> u64 {
        1u64 << self.z_width()
    }

    pub fn zero(&self) -> ZVec {
        ZVec::zero(self.z_width())
    }

    /// Every element of `Z` in canonical order.
    pub fn z_elements(&self) -> impl Iterator<Item = ZVec> + '_ {
        (0..self.z_size()).map(|b| ZVec::from_bits(b, self.z_width()))
    }

    /// `e_b` in the component of `p` (`b` 1-based).
    pub fn basis(&self, p: usize, b: usize) -> ZVec {
        let pos = self.outside.iter().position(|&q| q == p).expect("p outside the base");
        let k1 = self.ctx.k - 1;
        ZVec::from_bits(1 << (pos * k1 + b - 1), self.z_width())
    }

    /// `psi(a_letter)`: nonzero only when `letter` shares `k-1` indices with `m`.
    pub fn psi_letter(&self, letter: &Subset) -> ZVec {
        let k = self.ctx.k;
        if letter.intersection_len(&self.m) + 1 != k {
            return self.zero();
        }
        let p = letter.difference(&self.m)[0];
        let missing = self.m.difference(letter)[0];
        let position = self.m.iter().position(|x| x == missing).expect("in base") + 1;
        if position < k {
            self.basis(p, position)
        } else {
            (1..k).fold(self.zero(), |acc, b| acc + self.basis(p, b))
        }
    }

    pub fn psi_word(&self, w: &GnkWord) -> ZVec {
        w.letters().iter().fold(self.zero(), |acc, m| acc + self.psi_letter(m))
    }

    /// One letter acting on `(x, y)`.
    pub fn act_letter(&self, letter: &Subset, state: &mut ActionState) {
        if *letter == self.m {
            state.y.prepend_reduced(state.x);
        } else {
            state.x = state.x + self.psi_letter(letter);
        }
    }

    /// `w · (x0, 1)`; the rightmost letter acts first.
    pub fn phi_at(&self, w: &GnkWord, x0: ZVec) -> ActionState {
        let mut state = ActionState { x: x0, y: HWord::empty() };
        for letter in w.letters().iter().rev() {
            self.act_letter(letter, &mut state);
        }
        state
    }

    /// `phi(w)` for an even word `w`.
    pub fn phi(&self, w: &GnkWord) -> Result<HWord> {
        if let Some(odd) = w.first_odd_letter() {
            return Err(Error::NotEven(odd.letter_token()));
        }
        Ok(self.phi_at(w, self.zero()).y)
    }
}

/// A point `(x, y)` of `Z × H`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ActionState {
    pub x: ZVec,
    pub y: HWord,
}

pub fn is_even(w: &GnkWord) -> bool {
    w.is_even()
}

/// Lower bound from one family of bases: the per-base complexities and their maximum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecantBound {
    pub value: usize,
    pub per_base: Vec<(Subset, usize)>,
}

/// Maximum over all bases of `c(phi(w))` for an even word `w`.
pub fn secant_bound_of_word(w: &GnkWord) -> Result<SecantBound> {
    let mut per_base = Vec::new();
    for base in BaseChoice::all(w.context())? {
        let c = base.phi(w)?.len();
        per_base.push((base.m().clone(), c));
    }
    let value = per_base.iter().map(|(_, c)| *c).max().unwrap_or(0);
    Ok(SecantBound { value, per_base })
}

/// Lower bound on horizontal trisecants of a pure braid.
pub fn trisecant_lower_bound(w: &PbWord) -> Result<SecantBound> {
    secant_bound_of_word(&map_pb_to_g3(w)?)
}

/// Lower bound on circled quadrisecants of a pure braid (`n >= 4`).
pub fn quadrisecant_lower_bound(w: &PbWord) -> Result<SecantBound> {
    secant_bound_of_word(&map_pb_to_g4(w)?)
}
