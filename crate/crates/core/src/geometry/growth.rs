//! Rapidly growing point sequences on the parabola and the order in which a
//! point rounding `P_j` from above crosses the circles through `P_j`.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::appendix::circle_through;
use super::{cross, dot, on_parabola, rat, sub, Point, Rat};
use crate::error::{Error, Result};
use crate::gnk::{Context, GnkWord, Subset};
use crate::pure_braid::CircleCase;

/// Points `P_i = (t_i, t_i^2)` with `0 < t_1 < ... < t_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParabolaConfig {
    #[serde(with = "rat_vec")]
    t: Vec<Rat>,
}

mod rat_vec {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::geometry::{parse_rat, Rat};

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|r| r.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rat>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts.iter().map(|t| parse_rat(t).map_err(serde::de::Error::custom)).collect()
    }
}

impl ParabolaConfig {
    pub fn new(t: Vec<Rat>) -> Result<Self> {
        if t.first().is_some_and(|t1| !t1.is_positive()) || t.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Degenerate("parameters must be positive and increasing".into()));
        }
        Ok(ParabolaConfig { t })
    }

    pub fn n(&self) -> usize {
        self.t.len()
    }

    pub fn params(&self) -> &[Rat] {
        &self.t
    }

    /// `t_i`, 1-based.
    pub fn t(&self, i: usize) -> &Rat {
        &self.t[i - 1]
    }

    /// `P_i`, 1-based.
    pub fn point(&self, i: usize) -> Point {
        on_parabola(self.t(i))
    }

    pub fn points(&self) -> Vec<Point> {
        self.t.iter().map(on_parabola).collect()
    }
}

/// `t_1 = 1`, `t_i = 100 t_{i-1}^2`.
pub fn growth_sequence_case1(n: usize) -> ParabolaConfig {
    let mut t = Vec::with_capacity(n);
    for i in 0..n {
        t.push(if i == 0 { Rat::one() } else { rat(100) * &t[i - 1] * &t[i - 1] });
    }
    ParabolaConfig { t }
}

/// `t_1 >= 1` and `t_i >= 100 t_{i-1}^2`.
pub fn check_growth_case1(cfg: &ParabolaConfig) -> bool {
    cfg.t.first().is_none_or(|t1| *t1 >= Rat::one()) && cfg.t.windows(2).all(|w| w[1] >= rat(100) * &w[0] * &w[0])
}

/// `sin^2` of the smallest angle `P_u P_v P_w` over distinct indices `<= p`.
fn min_angle_sin_sq(cfg: &ParabolaConfig, p: usize) -> Rat {
    let pts = cfg.points();
    let mut best: Option<Rat> = None;
    for v in 0..p {
        for u in 0..p {
            for w in u + 1..p {
                if u == v || w == v {
                    continue;
                }
                let a = sub(&pts[u], &pts[v]);
                let b = sub(&pts[w], &pts[v]);
                // the smallest angle is acute, so obtuse ones can be skipped
                if dot(&a, &b).is_negative() {
                    continue;
                }
                let c = cross(&a, &b);
                let s = &c * &c / (dot(&a, &a) * dot(&b, &b));
                if best.as_ref().is_none_or(|b| s < *b) {
                    best = Some(s);
                }
            }
        }
    }
    best.unwrap_or_else(Rat::one)
}

/// Squared largest radius of the circles through three of the first `p` points.
fn max_radius_sq(cfg: &ParabolaConfig, p: usize) -> Result<Rat> {
    let pts = cfg.points();
    let mut best = Rat::zero();
    for a in 0..p {
        for b in a + 1..p {
            for c in b + 1..p {
                let (_, r2) = circle_through(&pts[a], &pts[b], &pts[c])?;
                best = best.max(r2);
            }
        }
    }
    Ok(best)
}

fn case23_holds_at(cfg: &ParabolaConfig, i: usize) -> Result<bool> {
    let ti = cfg.t(i);
    let prev = cfg.t(i - 1);
    let prev_sq = prev * prev;
    // t_i^2 sin^2(alpha) >= 9 t_{i-1}^4
    if ti * ti * min_angle_sin_sq(cfg, i - 1) < rat(9) * &prev_sq * &prev_sq {
        return Ok(false);
    }
    // (t_i - t_{i-1}^2) / 2 >= R
    let half = (ti - &prev_sq) / rat(2);
    Ok(!half.is_negative() && &half * &half >= max_radius_sq(cfg, i - 1)?)
}

/// The second growth condition, checked with squared quantities.
pub fn check_growth_case23(cfg: &ParabolaConfig) -> Result<bool> {
    let n = cfg.n();
    if n < 3 {
        return Err(Error::GrowthUnmet(format!("the condition needs at least 3 points, got {n}")));
    }
    if *cfg.t(1) < Rat::one() {
        return Ok(false);
    }
    for i in 4..=n {
        if !case23_holds_at(cfg, i)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A sequence satisfying both growth conditions: the first sequence, with
/// each `t_i` doubled until the second condition holds at `i`.
pub fn growth_sequence_both(n: usize) -> Result<ParabolaConfig> {
    let mut cfg = growth_sequence_case1(n);
    for i in 2..=n {
        let floor = rat(100) * cfg.t(i - 1) * cfg.t(i - 1);
        if cfg.t[i - 1] < floor {
            cfg.t[i - 1] = floor;
        }
        if i > 3 {
            while !case23_holds_at(&cfg, i)? {
                cfg.t[i - 1] *= rat(2);
            }
        }
    }
    Ok(cfg)
}

/// Direction of the tangent to `C_{j,l,m}` at `P_j`, pointing above the
/// parabola.
pub fn tangent_direction(cfg: &ParabolaConfig, j: usize, l: usize, m: usize) -> Result<Point> {
    let pj = cfg.point(j);
    let (centre, _) = circle_through(&pj, &cfg.point(l), &cfg.point(m))?;
    let radial = sub(&pj, &centre);
    let d = (-radial.1.clone(), radial.0.clone());
    let normal = (-(rat(2) * cfg.t(j)), Rat::one());
    match dot(&d, &normal).cmp(&Rat::zero()) {
        Ordering::Greater => Ok(d),
        Ordering::Less => Ok((-d.0, -d.1)),
        Ordering::Equal => Err(Error::NonGeneric(format!("circle C_{{{j},{l},{m}}} is tangent to the parabola"))),
    }
}

/// Quadrant (1 to 4) of a nonzero direction; axes count with the following
/// quadrant counterclockwise.
pub fn quadrant(d: &Point) -> u8 {
    let (x, y) = (&d.0, &d.1);
    if x.is_positive() && !y.is_negative() {
        1
    } else if !x.is_positive() && y.is_positive() {
        2
    } else if x.is_negative() && !y.is_positive() {
        3
    } else {
        4
    }
}

/// All circles through `P_j` and two other points, in the order a point
/// rounding `P_j` from above (moving towards larger `t`) crosses them.
pub fn geometric_crossing_order(cfg: &ParabolaConfig, j: usize) -> Result<Vec<(usize, usize)>> {
    let n = cfg.n();
    let mut rays = Vec::new();
    for l in 1..=n {
        for m in l + 1..=n {
            if l != j && m != j {
                rays.push(((l, m), tangent_direction(cfg, j, l, m)?));
            }
        }
    }
    // every ray lies in the open half-plane above the tangent to the
    // parabola; the rounding point sweeps it clockwise
    let mut err = None;
    rays.sort_by(|(p, a), (q, b)| match cross(b, a).cmp(&Rat::zero()) {
        Ordering::Greater => Ordering::Less,
        Ordering::Less => Ordering::Greater,
        Ordering::Equal => {
            err.get_or_insert(Error::NonGeneric(format!("circles {p:?} and {q:?} touch at P_{j}")));
            Ordering::Equal
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(rays.into_iter().map(|(pair, _)| pair).collect()),
    }
}

/// The crossing order restricted to one case, by exact tangent comparison.
pub fn crossing_order(cfg: &ParabolaConfig, j: usize, case: CircleCase) -> Result<Vec<(usize, usize)>> {
    let ok = match case {
        CircleCase::Below => check_growth_case1(cfg),
        _ => check_growth_case23(cfg)?,
    };
    if !ok {
        return Err(Error::GrowthUnmet(format!("case {} order is not determined", case.number())));
    }
    Ok(geometric_crossing_order(cfg, j)?.into_iter().filter(|&(l, m)| CircleCase::of(j, l, m) == case).collect())
}

fn require_both(cfg: &ParabolaConfig) -> Result<()> {
    if cfg.n() >= 3 && !(check_growth_case1(cfg) && check_growth_case23(cfg)?) {
        return Err(Error::GrowthUnmet("both growth conditions are required".into()));
    }
    Ok(())
}

/// The word `c_ij` read off the circles that point `i` crosses while
/// rounding `P_j` from above.
pub fn g4_word_geometric(i: usize, j: usize, cfg: &ParabolaConfig) -> Result<GnkWord> {
    let n = cfg.n();
    let ctx = Context::new(n, 4)?;
    crate::gnk::check_pair(ctx, i, j)?;
    require_both(cfg)?;
    let letters = geometric_crossing_order(cfg, j)?
        .into_iter()
        .filter(|&(l, m)| l != i && m != i)
        .map(|(l, m)| Subset::new([i, j, l, m]))
        .collect::<Result<_>>()?;
    GnkWord::new(ctx, letters)
}

/// The unreduced word of the motion of `b_ij`: `i` rounds `P_{i+1}, ..., P_j`,
/// `j` rounds `i`, then `i` rounds `P_{j-1}, ..., P_{i+1}` backwards.
pub fn g4_image_geometric(i: usize, j: usize, cfg: &ParabolaConfig) -> Result<GnkWord> {
    let conj = (i + 1..j).map(|l| g4_word_geometric(i, l, cfg)).collect::<Result<Vec<_>>>()?;
    let c = g4_word_geometric(i, j, cfg)?;
    let mut out = GnkWord::empty(c.context());
    for w in &conj {
        out = out.concat(w);
    }
    out = out.concat(&c).concat(&c);
    for w in conj.iter().rev() {
        out = out.concat(&w.inverse());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::appendix::slope_kappa;
    use crate::pure_braid::{closed_form_circle_order, g4_c};

    #[test]
    fn case1_sequence() {
        let cfg = growth_sequence_case1(4);
        assert_eq!(cfg.params(), &[rat(1), rat(100), rat(1_000_000), rat(100_000_000_000_000)]);
        assert!(check_growth_case1(&cfg));
    }

    #[test]
    fn case23_examples() {
        let small = ParabolaConfig::new(vec![rat(1), rat(2), rat(3), rat(4)]).unwrap();
        assert!(!check_growth_case23(&small).unwrap());
        assert!(check_growth_case23(&growth_sequence_case1(3)).unwrap());
        assert!(check_growth_case23(&growth_sequence_case1(2)).is_err());
        let both = growth_sequence_both(5).unwrap();
        assert!(check_growth_case1(&both) && check_growth_case23(&both).unwrap());
    }

    #[test]
    fn slope_bounds_on_case1_sequence() {
        let cfg = growth_sequence_case1(3);
        let k = slope_kappa(cfg.t(3), cfg.t(1), cfg.t(2)).unwrap();
        assert!(-(cfg.t(1) + cfg.t(2) + rat(1)) < k && k < -(cfg.t(1) + cfg.t(2)));
    }

    #[test]
    fn printed_order_examples() {
        let cfg = growth_sequence_both(5).unwrap();
        assert_eq!(crossing_order(&cfg, 4, CircleCase::Below).unwrap(), vec![(1, 2), (1, 3), (2, 3)]);
        assert_eq!(crossing_order(&cfg, 3, CircleCase::Straddling).unwrap(), vec![(2, 4), (2, 5), (1, 4), (1, 5)]);
        let cfg4 = growth_sequence_both(4).unwrap();
        assert_eq!(crossing_order(&cfg4, 1, CircleCase::Above).unwrap(), vec![(3, 4), (2, 4), (2, 3)]);
    }

    #[test]
    fn quadrants_by_case() {
        let cfg = growth_sequence_both(5).unwrap();
        for j in 1..=5 {
            for l in 1..=5 {
                for m in l + 1..=5 {
                    if l == j || m == j {
                        continue;
                    }
                    let q = quadrant(&tangent_direction(&cfg, j, l, m).unwrap());
                    let expected = match CircleCase::of(j, l, m) {
                        CircleCase::Below => 2,
                        CircleCase::Straddling => 3,
                        CircleCase::Above => 1,
                    };
                    assert_eq!(q, expected, "j={j} l={l} m={m}");
                }
            }
        }
    }

    #[test]
    fn geometric_order_is_closed_form() {
        for n in 4..=5 {
            let cfg = growth_sequence_both(n).unwrap();
            for j in 1..=n {
                let mut expected = closed_form_circle_order(j, n, CircleCase::Straddling);
                expected.extend(closed_form_circle_order(j, n, CircleCase::Below));
                expected.extend(closed_form_circle_order(j, n, CircleCase::Above));
                assert_eq!(geometric_crossing_order(&cfg, j).unwrap(), expected);
            }
            for i in 1..=n {
                for j in i + 1..=n {
                    assert_eq!(g4_word_geometric(i, j, &cfg).unwrap(), g4_c(i, j, n).unwrap());
                }
            }
        }
    }

    #[test]
    fn single_letter_alphabet() {
        let cfg = growth_sequence_both(4).unwrap();
        assert_eq!(g4_word_geometric(1, 2, &cfg).unwrap().to_string(), "a1234");
    }
}
