//! The four-stage motions realising the generators `b_ij`: on the unit
//! circle for `G_n^3` and on the parabola for `G_n^4`.

use num_traits::One;

use super::growth::{growth_sequence_both, ParabolaConfig};
use super::trace::{concyclic_trace, trisecant_trace};
use super::trajectory::{PathBuilder, Trajectory};
use super::{on_parabola, ratio, Point, Rat};
use crate::error::{Error, Result};
use crate::gnk::GnkWord;

const RETRIES: usize = 12;

fn check(i: usize, j: usize, n: usize, min_n: usize) -> Result<()> {
    if n < min_n || i == 0 || i >= j || j > n {
        return Err(Error::InvalidPair { i, j, n });
    }
    Ok(())
}

fn quarter(q: i64) -> Rat {
    ratio(q, 4)
}

/// Tangent-half-angle parameters of `n` points spread around the unit
/// circle, increasing (counterclockwise).
pub fn circle_parameters(n: usize) -> Vec<Rat> {
    let mut out: Vec<Rat> = Vec::with_capacity(n);
    for k in 1..=n {
        let angle = std::f64::consts::PI * ((k as f64 - 0.5) / n as f64 - 0.5);
        let u = ratio((angle.tan() * 1024.0).round() as i64, 1024);
        let u = match out.last() {
            Some(prev) if u <= *prev => prev + ratio(1, 1024),
            _ => u,
        };
        out.push(u);
    }
    out
}

/// `((1 - u^2) / (1 + u^2), 2u / (1 + u^2))`.
pub fn circle_point(u: &Rat) -> Point {
    let d = Rat::one() + u * u;
    ((Rat::one() - u * u) / &d, (u + u) / d)
}

fn shrink(p: &Point, eps: &Rat) -> Point {
    let s = Rat::one() - eps;
    (&p.0 * &s, &p.1 * &s)
}

/// The motion of `b_ij` on `n` points of the unit circle: `i` moves just
/// inside the circle past `i+1, ..., j-1` and lands before `j`; `j` passes
/// over `i`; `i` returns past `j, j-1, ..., i+1`; `j` returns. `eps` is the
/// relative inward offset of the inner waypoints.
pub fn simulate_bij_circle_with(i: usize, j: usize, n: usize, eps: &Rat) -> Result<Trajectory> {
    check(i, j, n, 3)?;
    let u = circle_parameters(n);
    let pts: Vec<Point> = u.iter().map(circle_point).collect();
    let p = |k: usize| pts[k - 1].clone();
    let inner = |k: usize| shrink(&p(k), eps);
    let u_land = (&u[j - 2] + &u[j - 1]) / Rat::from_integer(2.into());
    let u_second = (&u[j - 2] + &u_land) / Rat::from_integer(2.into());
    let (land, second) = (circle_point(&u_land), circle_point(&u_second));

    let mut paths = Vec::with_capacity(n);
    for k in 1..=n {
        let mut b = PathBuilder::at_rest(p(k));
        if k == i {
            let mut out: Vec<Point> = (i + 1..j).map(inner).collect();
            out.push(land.clone());
            b.travel(&quarter(0), &quarter(1), &out);
            let mut back = vec![shrink(&second, eps)];
            back.extend((i + 1..j).rev().map(inner));
            back.push(p(i));
            b.travel(&quarter(2), &quarter(3), &back);
        } else if k == j {
            b.travel(&quarter(1), &quarter(2), &[shrink(&land, eps), second.clone()]);
            b.travel(&quarter(3), &quarter(4), &[p(j)]);
        }
        paths.push(b.finish());
    }
    Trajectory::new(paths)
}

pub fn simulate_bij_circle(i: usize, j: usize, n: usize) -> Result<Trajectory> {
    simulate_bij_circle_with(i, j, n, &ratio(1, 16))
}

/// Traces the circle motion of `b_ij`, halving the inward offset while the
/// motion is not generic.
pub fn traced_bij_circle(i: usize, j: usize, n: usize) -> Result<(Trajectory, GnkWord)> {
    let mut eps = ratio(1, 16);
    let mut last = None;
    for _ in 0..RETRIES {
        let traj = simulate_bij_circle_with(i, j, n, &eps)?;
        match trisecant_trace(&traj) {
            Ok(w) => return Ok((traj, w)),
            Err(e @ Error::NonGeneric(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
        eps /= Rat::from_integer(2.into());
    }
    Err(last.expect("at least one attempt"))
}

/// Points of the parabola between parameters `a` and `b` (excluding `a`),
/// denser towards both ends so the path hugs the curve near the points it
/// leaves and approaches.
fn along_parabola(a: &Rat, b: &Rat, depth: u32) -> Vec<Point> {
    let mut fractions: Vec<Rat> = Vec::new();
    for r in (1..=depth).rev() {
        fractions.push(ratio(1, 1 << r));
    }
    let mirrored: Vec<Rat> = fractions.iter().rev().skip(1).map(|f| Rat::one() - f).collect();
    fractions.extend(mirrored);
    fractions.push(Rat::one());
    fractions.iter().map(|f| on_parabola(&(a + (b - a) * f))).collect()
}

/// Waypoints rounding the point of parameter `t` from above at scale `h`.
fn rounding(t: &Rat, h: &Rat) -> [Point; 3] {
    let centre = on_parabola(t);
    let two_t = t + t;
    [on_parabola(&(t - h)), (&centre.0 - h * &two_t, &centre.1 + h), on_parabola(&(t + h))]
}

const DEPTH: u32 = 10;

/// The motion of `b_ij` on the parabola: `i` rounds `P_{i+1}, ..., P_j` from
/// above and stops just after `P_j`; `j` rounds `i` from above; `i` returns
/// rounding `P_{j-1}, ..., P_{i+1}`; `j` returns. `delta` scales the
/// rounding detours.
pub fn simulate_bij_parabola_with(i: usize, j: usize, cfg: &ParabolaConfig, delta: &Rat) -> Result<Trajectory> {
    let n = cfg.n();
    check(i, j, n, 4)?;
    let t = |k: usize| cfg.t(k).clone();
    let h = |k: usize| delta / (Rat::one() + t(k) * Rat::from_integer(2.into()));
    let hj = h(j);
    let tq = t(j) + &hj + &hj;
    let half = &hj / Rat::from_integer(2.into());
    let tq2 = &tq + &hj;

    let mut paths = Vec::with_capacity(n);
    for k in 1..=n {
        let mut b = PathBuilder::at_rest(cfg.point(k));
        if k == i {
            let mut out = Vec::new();
            let mut from = t(i);
            for l in i + 1..=j {
                let [a, top, c] = rounding(&t(l), &h(l));
                out.extend(along_parabola(&from, &(t(l) - h(l)), DEPTH));
                debug_assert_eq!(out.last(), Some(&a));
                out.push(top);
                out.push(c);
                from = t(l) + h(l);
            }
            out.extend(along_parabola(&from, &tq, DEPTH));
            b.travel(&quarter(0), &quarter(1), &out);

            let mut back = Vec::new();
            let mut from = tq.clone();
            for l in (i + 1..j).rev() {
                let [a, top, c] = rounding(&t(l), &h(l));
                back.extend(along_parabola(&from, &(t(l) + h(l)), DEPTH));
                debug_assert_eq!(back.last(), Some(&c));
                back.push(top);
                back.push(a);
                from = t(l) - h(l);
            }
            back.extend(along_parabola(&from, &t(i), DEPTH));
            b.travel(&quarter(2), &quarter(3), &back);
        } else if k == j {
            let [_, top, c] = rounding(&tq, &half);
            let mut over = along_parabola(&t(j), &(&tq - &half), DEPTH);
            over.push(top);
            over.push(c);
            over.extend(along_parabola(&(&tq + &half), &tq2, DEPTH));
            b.travel(&quarter(1), &quarter(2), &over);
            b.travel(&quarter(3), &quarter(4), &along_parabola(&tq2, &t(j), DEPTH));
        }
        paths.push(b.finish());
    }
    Trajectory::new(paths)
}

/// The parabola motion of `b_ij` on a sequence satisfying both growth
/// conditions.
pub fn simulate_bij_parabola(i: usize, j: usize, n: usize) -> Result<Trajectory> {
    check(i, j, n, 4)?;
    simulate_bij_parabola_with(i, j, &growth_sequence_both(n)?, &ratio(1, 8))
}

/// Traces the parabola motion of `b_ij`, halving the detours while the
/// motion is not generic.
pub fn traced_bij_parabola(i: usize, j: usize, n: usize) -> Result<(Trajectory, GnkWord)> {
    check(i, j, n, 4)?;
    let cfg = growth_sequence_both(n)?;
    let mut delta = ratio(1, 8);
    let mut last = None;
    for _ in 0..RETRIES {
        let traj = simulate_bij_parabola_with(i, j, &cfg, &delta)?;
        match concyclic_trace(&traj) {
            Ok(w) => return Ok((traj, w)),
            Err(e @ Error::NonGeneric(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
        delta /= Rat::from_integer(2.into());
    }
    Err(last.expect("at least one attempt"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_parameters_increase() {
        for n in 3..=8 {
            let u = circle_parameters(n);
            assert!(u.windows(2).all(|w| w[0] < w[1]));
            for v in &u {
                let (x, y) = circle_point(v);
                assert!((&x * &x + &y * &y).is_one());
            }
        }
    }

    #[test]
    fn motions_are_closed() {
        let t = simulate_bij_circle(1, 3, 4).unwrap();
        assert_eq!(t.initial_positions().len(), 4);
        let p = simulate_bij_parabola(1, 2, 4).unwrap();
        assert_eq!(p.n(), 4);
        assert!(simulate_bij_parabola(1, 2, 3).is_err());
        assert!(simulate_bij_circle(2, 2, 4).is_err());
    }
}
