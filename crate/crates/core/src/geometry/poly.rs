//! Univariate polynomials over the rationals, with Sturm-sequence root
//! isolation.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::Rat;

/// Coefficients in ascending degree; never has a trailing zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Poly::new(vec![c])
    }

    /// `a + b t`.
    pub fn linear(a: Rat, b: Rat) -> Self {
        Poly::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lead(&self) -> &Rat {
        self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn eval(&self, t: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn sign_at(&self, t: &Rat) -> i8 {
        let v = self.eval(t);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(self.coeffs.iter().enumerate().skip(1).map(|(d, c)| c * Rat::from_integer(d.into())).collect())
    }

    pub fn scale(&self, s: &Rat) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = self.lead().recip();
        self.scale(&inv)
    }

    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        let lead = d.lead();
        for s in (0..quot.len()).rev() {
            let q = &rem[s + dd] / lead;
            if !q.is_zero() {
                for (e, c) in d.coeffs.iter().enumerate() {
                    rem[s + e] -= &q * c;
                }
            }
            quot[s] = q;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Monic greatest common divisor; zero only if both inputs are zero.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// The product of the distinct irreducible factors.
    pub fn squarefree(&self) -> Poly {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        self.div_rem(&g).0.monic()
    }

    pub fn sturm_sequence(&self) -> Vec<Poly> {
        let mut seq = vec![self.clone()];
        let d = self.derivative();
        if d.is_zero() {
            return seq;
        }
        seq.push(d);
        loop {
            let n = seq.len();
            let r = -seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                return seq;
            }
            seq.push(r);
        }
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_roots(&self, lo: &Rat, hi: &Rat) -> usize {
        if self.is_zero() {
            panic!("zero polynomial has infinitely many roots");
        }
        let seq = self.sturm_sequence();
        let va = sign_variations(&seq, lo);
        let vb = sign_variations(&seq, hi);
        va.saturating_sub(vb)
    }

    /// Whether some root lies in the closed interval `[lo, hi]`.
    pub fn has_root_in_closed(&self, lo: &Rat, hi: &Rat) -> bool {
        if self.eval(lo).is_zero() {
            return true;
        }
        lo < hi && self.count_roots(lo, hi) > 0
    }

    /// Isolating intervals for the distinct roots in the open interval
    /// `(lo, hi)`, in increasing order. The polynomial must not vanish at
    /// either endpoint.
    pub fn isolate_roots(&self, lo: &Rat, hi: &Rat) -> Vec<RootInterval> {
        let p = self.squarefree();
        let seq = p.sturm_sequence();
        let mut out = Vec::new();
        let mut stack = vec![(lo.clone(), hi.clone())];
        while let Some((a, b)) = stack.pop() {
            let b_root = p.eval(&b).is_zero();
            let count = sign_variations(&seq, &a).saturating_sub(sign_variations(&seq, &b)) - usize::from(b_root);
            match count {
                0 => {}
                1 if !b_root && !p.eval(&a).is_zero() => out.push(RootInterval::open(a, b, p.clone())),
                _ => {
                    let mid = (&a + &b) / Rat::from_integer(2.into());
                    if p.eval(&mid).is_zero() {
                        out.push(RootInterval::exact(mid.clone(), p.clone()));
                    }
                    stack.push((mid.clone(), b));
                    stack.push((a, mid));
                }
            }
        }
        out.sort_by(|x, y| x.lo.cmp(&y.lo));
        out
    }
}

fn sign_variations(seq: &[Poly], t: &Rat) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for p in seq {
        let s = p.sign_at(t);
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// A single simple root of `poly`, located in `(lo, hi)` or equal to `lo`
/// when `lo == hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rat,
    pub hi: Rat,
    pub poly: Poly,
}

impl RootInterval {
    fn open(lo: Rat, hi: Rat, poly: Poly) -> Self {
        RootInterval { lo, hi, poly }
    }

    fn exact(t: Rat, poly: Poly) -> Self {
        RootInterval { lo: t.clone(), hi: t, poly }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// Halves the interval, keeping the root inside.
    pub fn bisect(&mut self) {
        if self.is_exact() {
            return;
        }
        let mid = (&self.lo + &self.hi) / Rat::from_integer(2.into());
        let sm = self.poly.sign_at(&mid);
        if sm == 0 {
            self.lo = mid.clone();
            self.hi = mid;
        } else if sm == self.poly.sign_at(&self.lo) {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    /// Whether the roots of the two intervals cannot yet be told apart.
    pub fn overlaps(&self, other: &RootInterval) -> bool {
        match (self.is_exact(), other.is_exact()) {
            (true, true) => self.lo == other.lo,
            (true, false) => other.lo < self.lo && self.lo < other.hi,
            (false, true) => self.lo < other.lo && other.lo < self.hi,
            (false, false) => self.lo.clone().max(other.lo.clone()) < self.hi.clone().min(other.hi.clone()),
        }
    }

    /// Whether both intervals isolate the same algebraic number.
    pub fn same_root(&self, other: &RootInterval) -> bool {
        if !self.overlaps(other) {
            return false;
        }
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        self.poly.gcd(&other.poly).has_root_in_closed(&lo, &hi)
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(2.into())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let z = Rat::zero();
        Poly::new((0..len).map(|d| self.coeffs.get(d).unwrap_or(&z) + rhs.coeffs.get(d).unwrap_or(&z)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs.clone())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (a, x) in self.coeffs.iter().enumerate() {
            for (b, y) in rhs.coeffs.iter().enumerate() {
                out[a + b] += x * y;
            }
        }
        Poly::new(out)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::constant(Rat::one())
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn p(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&x| r(x, 1)).collect())
    }

    #[test]
    fn division_and_gcd() {
        // (t-1)(t-2)(t-3) and (t-2)(t+5)
        let a = p(&[-6, 11, -6, 1]);
        let b = p(&[-10, 3, 1]);
        assert_eq!(a.gcd(&b), p(&[-2, 1]));
        let (q, rem) = a.div_rem(&p(&[-1, 1]));
        assert!(rem.is_zero());
        assert_eq!(q, p(&[6, -5, 1]));
    }

    #[test]
    fn squarefree_drops_repeated_factor() {
        // (t-1)^2 (t+1)
        let a = p(&[1, -1, -1, 1]);
        assert_eq!(a.squarefree(), p(&[-1, 0, 1]));
    }

    #[test]
    fn sturm_counts_roots() {
        let a = p(&[-6, 11, -6, 1]);
        assert_eq!(a.count_roots(&r(0, 1), &r(10, 1)), 3);
        assert_eq!(a.count_roots(&r(3, 2), &r(5, 2)), 1);
        assert_eq!(a.count_roots(&r(4, 1), &r(10, 1)), 0);
        // t^2 + 1 has no real roots
        assert_eq!(p(&[1, 0, 1]).count_roots(&r(-100, 1), &r(100, 1)), 0);
    }

    #[test]
    fn isolation_separates_close_roots() {
        // (1000t - 1)(1001t - 1)
        let a = Poly::new(vec![r(1, 1), r(-2001, 1), r(1001000, 1)]);
        let roots = a.isolate_roots(&r(0, 1), &r(1, 1));
        assert_eq!(roots.len(), 2);
        assert!(!roots[0].overlaps(&roots[1]));
        assert!(roots[0].hi <= roots[1].lo);
        assert!(roots[0].lo < r(1, 1001) && r(1, 1001) < roots[0].hi);
    }

    #[test]
    fn exact_midpoint_root() {
        let a = p(&[-1, 2]);
        let mut roots = a.isolate_roots(&r(0, 1), &r(1, 1));
        assert_eq!(roots.len(), 1);
        roots[0].bisect();
        assert!(roots[0].is_exact());
        assert_eq!(roots[0].lo, r(1, 2));
        // (2t - 1)(3t - 1): the first split lands on a root
        let b = Poly::new(vec![r(1, 1), r(-5, 1), r(6, 1)]);
        let roots = b.isolate_roots(&r(0, 1), &r(1, 1));
        assert_eq!(roots.len(), 2);
        assert!(roots[1].is_exact() && roots[1].lo == r(1, 2));
        assert!(roots[0].lo < r(1, 3) && r(1, 3) < roots[0].hi);
    }

    #[test]
    fn same_root_detection() {
        let a = p(&[-1, 0, 2]); // 2t^2 - 1
        let b = p(&[-1, 0, 2, 0]).gcd(&p(&[-1, 0, 2])); // same polynomial
        let ra = a.isolate_roots(&r(0, 1), &r(1, 1));
        let rb = b.isolate_roots(&r(0, 1), &r(1, 1));
        assert!(ra[0].same_root(&rb[0]));
        let c = p(&[-7, 10]);
        let rc = c.isolate_roots(&r(0, 1), &r(1, 1));
        assert!(!ra[0].same_root(&rc[0]));
    }
}
