//! Circles through points of the parabola `y = x^2`.

use num_traits::Zero;

use super::{on_parabola, Point, Rat};
use crate::error::{Error, Result};

fn det3(m: [[&Rat; 3]; 3]) -> Rat {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// The compatibility determinant of the linear system for the centre of a
/// circle through `(x_i, x_i^2)`, `i = 0..3`.
pub fn delta_det(x0: &Rat, x1: &Rat, x2: &Rat, x3: &Rat) -> Rat {
    let row = |x: &Rat| {
        let a = x0 - x;
        let b = x0 * x0 - x * x;
        let x2 = x * x;
        let x02 = x0 * x0;
        let c = &x2 - &x02 + &x2 * &x2 - &x02 * &x02;
        [a, b, c]
    };
    let (r1, r2, r3) = (row(x1), row(x2), row(x3));
    det3([[&r1[0], &r1[1], &r1[2]], [&r2[0], &r2[1], &r2[2]], [&r3[0], &r3[1], &r3[2]]])
}

/// The factored form of [`delta_det`].
pub fn delta_product(x0: &Rat, x1: &Rat, x2: &Rat, x3: &Rat) -> Rat {
    (x0 - x1) * (x0 - x2) * (x0 - x3) * (x1 - x2) * (x1 - x3) * (x2 - x3) * (x0 + x1 + x2 + x3)
}

/// Whether four distinct points of the parabola lie on one circle.
pub fn concyclic_on_parabola(x0: &Rat, x1: &Rat, x2: &Rat, x3: &Rat) -> Result<bool> {
    let xs = [x0, x1, x2, x3];
    for a in 0..4 {
        for b in a + 1..4 {
            if xs[a] == xs[b] {
                return Err(Error::Degenerate(format!("repeated abscissa {}", xs[a])));
            }
        }
    }
    Ok((x0 + x1 + x2 + x3).is_zero())
}

/// The abscissa of the fourth common point of the parabola and the circle
/// through the points with abscissas `ti`, `tj`, `tk`.
pub fn fourth_intersection(ti: &Rat, tj: &Rat, tk: &Rat) -> Rat {
    -(ti + tj + tk)
}

/// Centre and squared radius of the circle through three points.
pub fn circle_through(p1: &Point, p2: &Point, p3: &Point) -> Result<(Point, Rat)> {
    // 2(x1 - xi) a + 2(y1 - yi) b = |p1|^2 - |pi|^2
    let norm = |p: &Point| &p.0 * &p.0 + &p.1 * &p.1;
    let two = Rat::from_integer(2.into());
    let (a1, b1, c1) = (&two * (&p1.0 - &p2.0), &two * (&p1.1 - &p2.1), norm(p1) - norm(p2));
    let (a2, b2, c2) = (&two * (&p1.0 - &p3.0), &two * (&p1.1 - &p3.1), norm(p1) - norm(p3));
    let det = &a1 * &b2 - &a2 * &b1;
    if det.is_zero() {
        return Err(Error::Collinear);
    }
    let a = (&c1 * &b2 - &c2 * &b1) / &det;
    let b = (&a1 * &c2 - &a2 * &c1) / &det;
    let dx = &p1.0 - &a;
    let dy = &p1.1 - &b;
    let r2 = &dx * &dx + &dy * &dy;
    Ok(((a, b), r2))
}

/// Slope at `P_k` of the tangent to the circle through `P_k`, `P_l`, `P_m`.
pub fn slope_kappa(tk: &Rat, tl: &Rat, tm: &Rat) -> Result<Rat> {
    let s = tl + tm;
    let num = tk * tk * &s + tk * (&s * &s + Rat::from_integer(2.into())) + tl * tm * &s;
    let den = tk * tk - tk * &s - (tl * tl + tl * tm + tm * tm + Rat::from_integer(1.into()));
    if den.is_zero() {
        return Err(Error::VerticalTangent);
    }
    Ok(-num / den)
}

/// The same slope computed from the circle itself: `-(x_k - a) / (y_k - b)`.
pub fn tangent_slope_via_circle(tk: &Rat, tl: &Rat, tm: &Rat) -> Result<Rat> {
    let pk = on_parabola(tk);
    let ((a, b), _) = circle_through(&pk, &on_parabola(tl), &on_parabola(tm))?;
    let dy = &pk.1 - &b;
    if dy.is_zero() {
        return Err(Error::VerticalTangent);
    }
    Ok(-(&pk.0 - a) / dy)
}
