//! Closed piecewise-linear motions of `n` labelled points over `[0, 1]`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::poly::Poly;
use super::{rat_string, Point, Rat};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Breakpoint {
    #[serde(with = "rat_string")]
    pub time: Rat,
    #[serde(with = "rat_string")]
    pub x: Rat,
    #[serde(with = "rat_string")]
    pub y: Rat,
}

impl Breakpoint {
    pub fn new(time: Rat, position: Point) -> Self {
        Breakpoint { time, x: position.0, y: position.1 }
    }

    pub fn position(&self) -> Point {
        (self.x.clone(), self.y.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trajectory {
    paths: Vec<Vec<Breakpoint>>,
}

impl Trajectory {
    /// Each path runs from time 0 to time 1 through strictly increasing times
    /// and ends where it starts.
    pub fn new(paths: Vec<Vec<Breakpoint>>) -> Result<Self> {
        for (p, path) in paths.iter().enumerate() {
            let label = p + 1;
            let (first, last) = match (path.first(), path.last()) {
                (Some(f), Some(l)) if path.len() >= 2 => (f, l),
                _ => return Err(Error::InvalidTrajectory(format!("point {label} needs at least two breakpoints"))),
            };
            if !first.time.is_zero() || !last.time.is_one() {
                return Err(Error::InvalidTrajectory(format!("point {label} must move over [0, 1]")));
            }
            if path.windows(2).any(|w| w[0].time >= w[1].time) {
                return Err(Error::InvalidTrajectory(format!("times of point {label} are not increasing")));
            }
            if first.position() != last.position() {
                return Err(Error::InvalidTrajectory(format!("point {label} does not return to its start")));
            }
        }
        Ok(Trajectory { paths })
    }

    /// Every point at rest.
    pub fn stationary(points: &[Point]) -> Self {
        Trajectory {
            paths: points
                .iter()
                .map(|p| vec![Breakpoint::new(Rat::zero(), p.clone()), Breakpoint::new(Rat::one(), p.clone())])
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: Trajectory = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Trajectory::new(raw.paths)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trajectory serializes")
    }

    pub fn n(&self) -> usize {
        self.paths.len()
    }

    /// Breakpoints of point `p`, 1-based.
    pub fn path(&self, p: usize) -> &[Breakpoint] {
        &self.paths[p - 1]
    }

    pub fn initial_positions(&self) -> Vec<Point> {
        self.paths.iter().map(|path| path[0].position()).collect()
    }

    pub fn position_at(&self, p: usize, t: &Rat) -> Point {
        let (x, y) = self.linear_piece(p, t, t);
        (x.eval(t), y.eval(t))
    }

    /// Whether the point moves at some time in `(t0, t1)`.
    pub fn moves_during(&self, p: usize, t0: &Rat, t1: &Rat) -> bool {
        let (x, y) = self.linear_piece(p, t0, t1);
        x.degree().unwrap_or(0) > 0 || y.degree().unwrap_or(0) > 0
    }

    /// Merged breakpoint times of the given points.
    pub fn breakpoints_of(&self, points: &[usize]) -> Vec<Rat> {
        let mut times: Vec<Rat> = points.iter().flat_map(|&p| self.path(p).iter().map(|b| b.time.clone())).collect();
        times.sort();
        times.dedup();
        times
    }

    /// Coordinates of point `p` as linear polynomials in time, valid on an
    /// interval `[t0, t1]` that contains no breakpoint of `p` in its interior.
    pub fn linear_piece(&self, p: usize, t0: &Rat, t1: &Rat) -> (Poly, Poly) {
        let path = self.path(p);
        let s = path.partition_point(|b| b.time <= *t0).clamp(1, path.len() - 1);
        let (a, b) = (&path[s - 1], &path[s]);
        debug_assert!(a.time <= *t0 && *t1 <= b.time);
        let dt = &b.time - &a.time;
        let piece = |u0: &Rat, u1: &Rat| {
            let slope = (u1 - u0) / &dt;
            Poly::linear(u0 - &slope * &a.time, slope)
        };
        (piece(&a.x, &b.x), piece(&a.y, &b.y))
    }
}

/// Builds one point's path from waypoints visited at evenly spaced times in
/// `[start, end]`, at rest elsewhere.
pub(crate) struct PathBuilder {
    points: Vec<Breakpoint>,
}

impl PathBuilder {
    pub(crate) fn at_rest(p: Point) -> Self {
        PathBuilder { points: vec![Breakpoint::new(Rat::zero(), p)] }
    }

    fn current(&self) -> Point {
        self.points.last().expect("nonempty").position()
    }

    pub(crate) fn travel(&mut self, start: &Rat, end: &Rat, waypoints: &[Point]) {
        if waypoints.is_empty() {
            return;
        }
        let here = self.current();
        if self.points.last().expect("nonempty").time < *start {
            self.points.push(Breakpoint::new(start.clone(), here));
        }
        let steps = Rat::from_integer(waypoints.len().into());
        for (s, w) in waypoints.iter().enumerate() {
            let t = start + (end - start) * Rat::from_integer((s + 1).into()) / &steps;
            self.points.push(Breakpoint::new(t, w.clone()));
        }
    }

    pub(crate) fn finish(mut self) -> Vec<Breakpoint> {
        let here = self.current();
        if !self.points.last().expect("nonempty").time.is_one() {
            self.points.push(Breakpoint::new(Rat::one(), here));
        }
        self.points
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{point, ratio};

    #[test]
    fn json_round_trip() {
        let t = Trajectory::new(vec![
            vec![
                Breakpoint::new(Rat::zero(), point(0, 0)),
                Breakpoint::new(ratio(1, 2), (ratio(1, 3), ratio(-2, 7))),
                Breakpoint::new(Rat::one(), point(0, 0)),
            ],
            Trajectory::stationary(&[point(1, 1)]).paths[0].clone(),
        ])
        .unwrap();
        let text = t.to_json();
        assert!(text.contains("\"1/3\"") && text.contains("\"-2/7\""));
        assert_eq!(Trajectory::from_json(&text).unwrap(), t);
    }

    #[test]
    fn rejects_open_paths() {
        let open = vec![vec![Breakpoint::new(Rat::zero(), point(0, 0)), Breakpoint::new(Rat::one(), point(1, 0))]];
        assert!(matches!(Trajectory::new(open), Err(Error::InvalidTrajectory(_))));
    }

    #[test]
    fn linear_pieces() {
        let t = Trajectory::new(vec![vec![
            Breakpoint::new(Rat::zero(), point(0, 0)),
            Breakpoint::new(ratio(1, 2), point(2, 4)),
            Breakpoint::new(Rat::one(), point(0, 0)),
        ]])
        .unwrap();
        assert_eq!(t.position_at(1, &ratio(1, 4)), point(1, 2));
        assert_eq!(t.position_at(1, &ratio(3, 4)), point(1, 2));
        assert!(t.moves_during(1, &Rat::zero(), &ratio(1, 2)));
    }
}
