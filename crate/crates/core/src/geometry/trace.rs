//! Reading words off motions: a letter `a_{pqr}` each time three points
//! become collinear, or `a_{pqrs}` each time four points become concyclic.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::poly::{Poly, RootInterval};
use super::trajectory::Trajectory;
use super::{rat_string, Rat};
use crate::error::{Error, Result};
use crate::gnk::{subsets, Context, GnkWord, Subset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SecantKind {
    Trisecant,
    Concyclic,
}

impl SecantKind {
    pub fn arity(self) -> usize {
        match self {
            SecantKind::Trisecant => 3,
            SecantKind::Concyclic => 4,
        }
    }
}

/// One degenerate moment, located in `[time_lo, time_hi]` (a single time when
/// the two agree). Intervals of distinct events are disjoint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecantEvent {
    #[serde(with = "rat_string")]
    pub time_lo: Rat,
    #[serde(with = "rat_string")]
    pub time_hi: Rat,
    pub kind: SecantKind,
    pub participants: Subset,
}

type Coords = (Poly, Poly);

fn orientation(a: &Coords, b: &Coords, c: &Coords) -> Poly {
    let (bx, by) = (&b.0 - &a.0, &b.1 - &a.1);
    let (cx, cy) = (&c.0 - &a.0, &c.1 - &a.1);
    &(&bx * &cy) - &(&by * &cx)
}

fn incircle(a: &Coords, b: &Coords, c: &Coords, d: &Coords) -> Poly {
    let row = |p: &Coords| {
        let dx = &p.0 - &d.0;
        let dy = &p.1 - &d.1;
        let lift = &(&dx * &dx) + &(&dy * &dy);
        [dx, dy, lift]
    };
    let (r, s, t) = (row(a), row(b), row(c));
    let minor = |x: &Poly, y: &Poly, z: &Poly, w: &Poly| &(x * w) - &(y * z);
    let m0 = minor(&s[1], &s[2], &t[1], &t[2]);
    let m1 = minor(&s[0], &s[2], &t[0], &t[2]);
    let m2 = minor(&s[0], &s[1], &t[0], &t[1]);
    &(&(&r[0] * &m0) - &(&r[1] * &m1)) + &(&r[2] * &m2)
}

/// The determinant that vanishes when the tuple is degenerate, as a
/// polynomial in time on `[t0, t1]`.
fn tuple_determinant(traj: &Trajectory, tuple: &[usize], t0: &Rat, t1: &Rat) -> Poly {
    let c: Vec<Coords> = tuple.iter().map(|&p| traj.linear_piece(p, t0, t1)).collect();
    match c.len() {
        3 => orientation(&c[0], &c[1], &c[2]),
        4 => incircle(&c[0], &c[1], &c[2], &c[3]),
        _ => unreachable!("tuples have 3 or 4 points"),
    }
}

fn label(tuple: &Subset) -> String {
    tuple.letter_token()
}

fn tuple_roots(traj: &Trajectory, tuple: &Subset) -> Result<Vec<RootInterval>> {
    let ids: Vec<usize> = tuple.iter().collect();
    let times = traj.breakpoints_of(&ids);
    let mut out = Vec::new();
    for w in times.windows(2) {
        let (t0, t1) = (&w[0], &w[1]);
        if !ids.iter().any(|&p| traj.moves_during(p, t0, t1)) {
            continue;
        }
        let d = tuple_determinant(traj, &ids, t0, t1);
        let segment = || format!("tuple {} on [{t0}, {t1}]", label(tuple));
        if d.is_zero() {
            return Err(Error::NonGeneric(format!("{} stays degenerate", segment())));
        }
        if d.eval(t0).is_zero() || d.eval(t1).is_zero() {
            return Err(Error::NonGeneric(format!("{} is degenerate at a breakpoint", segment())));
        }
        let repeated = d.gcd(&d.derivative());
        if repeated.degree().unwrap_or(0) > 0 && repeated.has_root_in_closed(t0, t1) {
            return Err(Error::NonGeneric(format!("{} touches without crossing", segment())));
        }
        out.extend(d.isolate_roots(t0, t1));
    }
    Ok(out)
}

/// All events of the given kind, sorted by time.
pub fn trace_events(traj: &Trajectory, kind: SecantKind) -> Result<Vec<SecantEvent>> {
    let n = traj.n();
    let mut found: Vec<(RootInterval, Subset)> = Vec::new();
    for tuple in subsets(n, kind.arity()) {
        for root in tuple_roots(traj, &tuple)? {
            found.push((root, tuple.clone()));
        }
    }
    // refine until the isolating intervals are pairwise disjoint
    loop {
        found.sort_by(|a, b| a.0.lo.cmp(&b.0.lo).then_with(|| a.0.hi.cmp(&b.0.hi)));
        let clash = (1..found.len()).find(|&s| found[s - 1].0.overlaps(&found[s].0));
        let Some(s) = clash else { break };
        if found[s - 1].0.same_root(&found[s].0) {
            return Err(Error::NonGeneric(format!(
                "tuples {} and {} degenerate simultaneously near t = {}",
                label(&found[s - 1].1),
                label(&found[s].1),
                found[s].0.midpoint()
            )));
        }
        found[s - 1].0.bisect();
        found[s].0.bisect();
    }
    Ok(found
        .into_iter()
        .map(|(root, participants)| SecantEvent { time_lo: root.lo, time_hi: root.hi, kind, participants })
        .collect())
}

fn word_of(traj: &Trajectory, kind: SecantKind) -> Result<GnkWord> {
    let ctx = Context::new(traj.n(), kind.arity())?;
    let events = trace_events(traj, kind)?;
    GnkWord::new(ctx, events.into_iter().map(|e| e.participants).collect())
}

/// The `G_n^3` word of a motion: one letter per collinear triple, in time
/// order.
pub fn trisecant_trace(traj: &Trajectory) -> Result<GnkWord> {
    word_of(traj, SecantKind::Trisecant)
}

/// The `G_n^4` word of a motion: one letter per concyclic quadruple, in
/// time order.
pub fn concyclic_trace(traj: &Trajectory) -> Result<GnkWord> {
    word_of(traj, SecantKind::Concyclic)
}

pub fn events_json(events: &[SecantEvent]) -> String {
    serde_json::to_string_pretty(events).expect("events serialize")
}
