//! Pure braid words and their images in `G_n^3`, `G_n^4` and, for three
//! strands, in the even subgroup of `Z_2 * Z_2 * Z_2`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gnk::{check_pair, Context, GnkWord, Subset};
use crate::words::reduce_involutive;

/// A generator `b_ij` (`i < j`) or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PbLetter {
    pub i: usize,
    pub j: usize,
    pub inverse: bool,
}

impl PbLetter {
    pub fn new(i: usize, j: usize) -> Self {
        PbLetter { i, j, inverse: false }
    }

    pub fn inv(i: usize, j: usize) -> Self {
        PbLetter { i, j, inverse: true }
    }

    pub fn inverted(self) -> Self {
        PbLetter { inverse: !self.inverse, ..self }
    }

    fn parse(token: &str) -> Result<Self> {
        let (inverse, body) = match token.chars().next() {
            Some('b') => (false, &token[1..]),
            Some('B') => (true, &token[1..]),
            _ => return Err(Error::Parse(format!("braid letter `{token}` must start with b or B"))),
        };
        let bad = || Error::Parse(format!("bad braid letter `{token}`"));
        let (i, j) = if let Some(inner) = body.strip_prefix('{') {
            let inner = inner.strip_suffix('}').ok_or_else(bad)?;
            let (a, b) = inner.split_once(',').ok_or_else(bad)?;
            (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?)
        } else {
            let digits: Vec<usize> =
                body.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect::<Option<_>>().ok_or_else(bad)?;
            match digits[..] {
                [a, b] => (a, b),
                _ => return Err(bad()),
            }
        };
        if i >= j {
            return Err(bad());
        }
        Ok(PbLetter { i, j, inverse })
    }
}

impl fmt::Display for PbLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head = if self.inverse { 'B' } else { 'b' };
        if self.i <= 9 && self.j <= 9 {
            write!(f, "{head}{}{}", self.i, self.j)
        } else {
            write!(f, "{head}{{{},{}}}", self.i, self.j)
        }
    }
}

/// A word in the pure braid group on `n` strands.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PbWord {
    n: usize,
    letters: Vec<PbLetter>,
}

impl PbWord {
    pub fn new(n: usize, letters: Vec<PbLetter>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidContext { n, k: 0 });
        }
        for l in &letters {
            if l.i < 1 || l.i >= l.j || l.j > n {
                return Err(Error::InvalidPair { i: l.i, j: l.j, n });
            }
        }
        Ok(PbWord { n, letters })
    }

    /// Tokens `b12` (generator) and `B12` (inverse); `b{3,12}` for wide indices.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let letters = text.split_whitespace().map(PbLetter::parse).collect::<Result<Vec<_>>>()?;
        PbWord::new(n, letters)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[PbLetter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> PbWord {
        let letters = self.letters.iter().rev().map(|l| l.inverted()).collect();
        PbWord { n: self.n, letters }
    }

    pub fn concat(&self, other: &PbWord) -> PbWord {
        assert_eq!(self.n, other.n);
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        PbWord { n: self.n, letters }
    }

    /// Free reduction in the generators `b_ij`.
    pub fn freely_reduced(&self) -> PbWord {
        let mut stack: Vec<PbLetter> = Vec::new();
        for &l in &self.letters {
            if stack.last() == Some(&l.inverted()) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        PbWord { n: self.n, letters: stack }
    }
}

impl fmt::Display for PbWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(PbLetter::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Which family of the pure braid presentation a relation comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RelationKind {
    /// `b_ij b_kl = b_kl b_ij` for `i<j<k<l` or `i<k<l<j`.
    Commutation,
    /// The cyclic triple relations for `i<j<k`.
    Triangle,
    /// The four-index relation whose two sides are printed identically.
    Vacuous,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PbRelation {
    pub lhs: PbWord,
    pub rhs: PbWord,
    pub kind: RelationKind,
}

impl PbRelation {
    /// `lhs · rhs^{-1}`, trivial in the group.
    pub fn difference(&self) -> PbWord {
        self.lhs.concat(&self.rhs.inverse())
    }
}

/// Relations of the pure braid group presentation, as listed.
pub fn pb_relators(n: usize) -> Result<Vec<PbRelation>> {
    let word = |ls: Vec<PbLetter>| PbWord::new(n, ls);
    let b = PbLetter::new;
    let mut out = Vec::new();
    // commutations
    for i in 1..=n {
        for j in i + 1..=n {
            for k in 1..=n {
                for l in k + 1..=n {
                    if (j < k) || (i < k && l < j) {
                        out.push(PbRelation {
                            lhs: word(vec![b(i, j), b(k, l)])?,
                            rhs: word(vec![b(k, l), b(i, j)])?,
                            kind: RelationKind::Commutation,
                        });
                    }
                }
            }
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                let first = word(vec![b(i, j), b(i, k), b(j, k)])?;
                let second = word(vec![b(i, k), b(j, k), b(i, j)])?;
                let third = word(vec![b(j, k), b(i, j), b(i, k)])?;
                out.push(PbRelation { lhs: first, rhs: second.clone(), kind: RelationKind::Triangle });
                out.push(PbRelation { lhs: second, rhs: third, kind: RelationKind::Triangle });
            }
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                for l in k + 1..=n {
                    let side = word(vec![b(j, l), b(k, l), b(i, k), b(j, k)])?;
                    out.push(PbRelation { lhs: side.clone(), rhs: side, kind: RelationKind::Vacuous });
                }
            }
        }
    }
    Ok(out)
}

fn triple(i: usize, j: usize, k: usize) -> Subset {
    Subset::new([i, j, k]).expect("distinct indices")
}

/// `c_ij` in `G_n^3`: `a_{ijk}` for `k = j+1..n`, then `k = 1..j-1`, skipping `k = i`.
pub fn g3_c(i: usize, j: usize, n: usize) -> Result<GnkWord> {
    let ctx = Context::new(n, 3)?;
    check_pair(ctx, i, j)?;
    let letters = (j + 1..=n).chain(1..j).filter(|&k| k != i).map(|k| triple(i, j, k)).collect();
    Ok(GnkWord::new(ctx, letters).expect("valid triples"))
}

/// Unreduced image of `b_ij` in `G_n^3`:
/// `c_{i,i+1}^{-1} ... c_{i,j-1}^{-1} c_ij^2 c_{i,j-1} ... c_{i,i+1}`.
pub fn g3_generator_image(i: usize, j: usize, n: usize) -> Result<GnkWord> {
    let ctx = Context::new(n, 3)?;
    if i >= j {
        return Err(Error::InvalidPair { i, j, n });
    }
    let conj: Vec<GnkWord> = (i + 1..j).map(|l| g3_c(i, l, n)).collect::<Result<_>>()?;
    let mut out = GnkWord::empty(ctx);
    for c in &conj {
        out = out.concat(&c.inverse());
    }
    out = out.concat(&g3_c(i, j, n)?.power(2));
    for c in conj.iter().rev() {
        out = out.concat(c);
    }
    Ok(out)
}

fn substitute(w: &PbWord, ctx: Context, image: impl Fn(usize, usize) -> Result<GnkWord>) -> Result<GnkWord> {
    let mut letters = Vec::new();
    for l in w.letters() {
        let img = image(l.i, l.j)?;
        let img = if l.inverse { img.inverse() } else { img };
        letters.extend_from_slice(img.letters());
    }
    Ok(GnkWord::new(ctx, letters).expect("generator images are valid"))
}

/// Letterwise image in `G_n^3`, unreduced.
pub fn map_pb_to_g3_unreduced(w: &PbWord) -> Result<GnkWord> {
    let ctx = Context::new(w.n(), 3)?;
    substitute(w, ctx, |i, j| g3_generator_image(i, j, w.n()))
}

/// The homomorphism `PB_n -> G_n^3`, reduced.
pub fn map_pb_to_g3(w: &PbWord) -> Result<GnkWord> {
    Ok(map_pb_to_g3_unreduced(w)?.reduced())
}

/// Which of the three families a circle `C_{j,l,m}` through the rounded point
/// `P_j` belongs to, by the position of its two other indices `l < m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CircleCase {
    /// `l < m < j`
    Below,
    /// `l < j < m`
    Straddling,
    /// `j < l < m`
    Above,
}

impl CircleCase {
    pub fn of(j: usize, l: usize, m: usize) -> CircleCase {
        debug_assert!(l < m && l != j && m != j);
        if m < j {
            CircleCase::Below
        } else if l < j {
            CircleCase::Straddling
        } else {
            CircleCase::Above
        }
    }

    /// The case number used in the growth lemmas (1, 2, 3).
    pub fn number(self) -> u8 {
        match self {
            CircleCase::Below => 1,
            CircleCase::Straddling => 2,
            CircleCase::Above => 3,
        }
    }

    pub fn from_number(case: u8) -> Option<CircleCase> {
        match case {
            1 => Some(CircleCase::Below),
            2 => Some(CircleCase::Straddling),
            3 => Some(CircleCase::Above),
            _ => None,
        }
    }
}

/// Closed-form crossing order of the circles `C_{j,l,m}` (pairs `(l, m)`,
/// `l < m`, both different from `j`) for one case, on `n` points.
pub fn closed_form_circle_order(j: usize, n: usize, case: CircleCase) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    match case {
        // (1,2), (1,3), (2,3), (1,4), ...: larger index ascending, then smaller
        CircleCase::Below => {
            for m in 2..j {
                for l in 1..m {
                    out.push((l, m));
                }
            }
        }
        // (j-1, j+1), (j-1, j+2), ..., (j-2, j+1), ...
        CircleCase::Straddling => {
            for l in (1..j).rev() {
                for m in j + 1..=n {
                    out.push((l, m));
                }
            }
        }
        // (n-1, n), (n-2, n), (n-2, n-1), (n-3, n), ...
        CircleCase::Above => {
            for l in (j + 1..n).rev() {
                for m in (l + 1..=n).rev() {
                    out.push((l, m));
                }
            }
        }
    }
    out
}

fn quad(i: usize, j: usize, l: usize, m: usize) -> Subset {
    Subset::new([i, j, l, m]).expect("distinct indices")
}

/// The three factors `(c^I, c^II, c^III)` of `c_ij` in `G_n^4`, with
/// degenerate index tuples removed. `c_ij = c^II c^I c^III`.
pub fn g4_c_components(i: usize, j: usize, n: usize) -> Result<(GnkWord, GnkWord, GnkWord)> {
    let ctx = Context::new(n, 4)?;
    check_pair(ctx, i, j)?;
    let part = |case| {
        let letters = closed_form_circle_order(j, n, case)
            .into_iter()
            .filter(|&(l, m)| l != i && m != i)
            .map(|(l, m)| quad(i, j, l, m))
            .collect();
        GnkWord::new(ctx, letters).expect("valid quadruples")
    };
    Ok((part(CircleCase::Below), part(CircleCase::Straddling), part(CircleCase::Above)))
}

/// `c_ij = c^II c^I c^III` in `G_n^4`.
pub fn g4_c(i: usize, j: usize, n: usize) -> Result<GnkWord> {
    let (first, second, third) = g4_c_components(i, j, n)?;
    Ok(second.concat(&first).concat(&third))
}

/// The word read off the parabola motion of `b_ij`:
/// `c_{i,i+1} ... c_{i,j-1} c_ij^2 c_{i,j-1}^{-1} ... c_{i,i+1}^{-1}`.
///
/// In that motion `i` passes `j` on the inner side going forward and `j`
/// then passes `i` the same way, so `i` winds around `j` in the opposite
/// sense to the circle motion used for `G_n^3`. These words satisfy the
/// pure braid relations for the inverse generators; see
/// [`g4_generator_image`].
pub fn g4_motion_word(i: usize, j: usize, n: usize) -> Result<GnkWord> {
    let ctx = Context::new(n, 4)?;
    if i >= j {
        return Err(Error::InvalidPair { i, j, n });
    }
    let conj: Vec<GnkWord> = (i + 1..j).map(|l| g4_c(i, l, n)).collect::<Result<_>>()?;
    let mut out = GnkWord::empty(ctx);
    for c in &conj {
        out = out.concat(c);
    }
    out = out.concat(&g4_c(i, j, n)?.power(2));
    for c in conj.iter().rev() {
        out = out.concat(&c.inverse());
    }
    Ok(out)
}

/// Unreduced image of `b_ij` in `G_n^4`, the inverse of the motion word:
/// `c_{i,i+1} ... c_{i,j-1} c_ij^{-2} c_{i,j-1}^{-1} ... c_{i,i+1}^{-1}`.
pub fn g4_generator_image(i: usize, j: usize, n: usize) -> Result<GnkWord> {
    Ok(g4_motion_word(i, j, n)?.inverse())
}

pub fn map_pb_to_g4_unreduced(w: &PbWord) -> Result<GnkWord> {
    let ctx = Context::new(w.n(), 4)?;
    substitute(w, ctx, |i, j| g4_generator_image(i, j, w.n()))
}

/// The homomorphism `PB_n -> G_n^4`, reduced. Needs `n >= 4`.
pub fn map_pb_to_g4(w: &PbWord) -> Result<GnkWord> {
    Ok(map_pb_to_g4_unreduced(w)?.reduced())
}

/// Image of a pure braid word in `G_n^k` for `k` in `{3, 4}`.
pub fn map_pb(w: &PbWord, k: usize) -> Result<GnkWord> {
    match k {
        3 => map_pb_to_g3(w),
        4 => map_pb_to_g4(w),
        _ => Err(Error::InvalidContext { n: w.n(), k }),
    }
}

pub fn map_pb_unreduced(w: &PbWord, k: usize) -> Result<GnkWord> {
    match k {
        3 => map_pb_to_g3_unreduced(w),
        4 => map_pb_to_g4_unreduced(w),
        _ => Err(Error::InvalidContext { n: w.n(), k }),
    }
}

/// A segment of the line through points 1 and 2 in the three-strand picture:
/// `A1` the unbounded ray ending at 1, `A2` the ray ending at 2, `A3` the
/// bounded interval between them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Interval {
    A1,
    A2,
    A3,
}

impl Interval {
    pub const ALL: [Interval; 3] = [Interval::A1, Interval::A2, Interval::A3];
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Interval::A1 => "a1",
            Interval::A2 => "a2",
            Interval::A3 => "a3",
        })
    }
}

/// A word in `a1, a2, a3`, the crossings of point 3 with the line through
/// points 1 and 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct EvenWord(pub Vec<Interval>);

impl EvenWord {
    pub fn parse(text: &str) -> Result<Self> {
        text.split_whitespace()
            .map(|t| match t {
                "a1" => Ok(Interval::A1),
                "a2" => Ok(Interval::A2),
                "a3" => Ok(Interval::A3),
                _ => Err(Error::Parse(format!("bad interval letter `{t}`"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(EvenWord)
    }

    pub fn reduced(&self) -> EvenWord {
        EvenWord(reduce_involutive(self.0.iter().copied()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for EvenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Interval::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

fn pb3_letter_image(l: &PbLetter) -> Vec<Interval> {
    use Interval::*;
    let img = match (l.i, l.j) {
        (1, 3) => vec![A3, A1],
        (2, 3) => vec![A2, A3],
        // inverse of (a3 a1)(a2 a3), so that b12 b13 b23 is killed
        _ => vec![A3, A2, A1, A3],
    };
    if l.inverse {
        img.into_iter().rev().collect()
    } else {
        img
    }
}

/// Three-strand braids modulo the centre, as even words in `a1, a2, a3`.
pub fn pb3_to_even(w: &PbWord) -> Result<EvenWord> {
    if w.n() != 3 {
        return Err(Error::InvalidContext { n: w.n(), k: 3 });
    }
    let letters = w.letters().iter().flat_map(pb3_letter_image);
    Ok(EvenWord(reduce_involutive(letters)))
}

/// Inverse of [`pb3_to_even`] on reduced even words: consecutive letter pairs
/// are read off as loops of point 3.
pub fn even_to_pb3(w: &EvenWord) -> Result<PbWord> {
    use Interval::*;
    let reduced = w.reduced();
    if reduced.len() % 2 == 1 {
        return Err(Error::OddLength(reduced.len()));
    }
    let mut letters = Vec::new();
    for pair in reduced.0.chunks(2) {
        match (pair[0], pair[1]) {
            (A3, A1) => letters.push(PbLetter::new(1, 3)),
            (A1, A3) => letters.push(PbLetter::inv(1, 3)),
            (A2, A3) => letters.push(PbLetter::new(2, 3)),
            (A3, A2) => letters.push(PbLetter::inv(2, 3)),
            (A1, A2) => letters.extend([PbLetter::inv(1, 3), PbLetter::inv(2, 3)]),
            (A2, A1) => letters.extend([PbLetter::new(2, 3), PbLetter::new(1, 3)]),
            _ => unreachable!("reduced words have no equal neighbours"),
        }
    }
    PbWord::new(3, letters)
}
