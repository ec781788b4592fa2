//! Self-check suites over the relators, the parabola geometry and the
//! tracers. Randomized parts draw from a seeded generator, so a run is
//! reproducible from its seed.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::appendix::{
    circle_through, concyclic_on_parabola, delta_det, delta_product, fourth_intersection, slope_kappa,
    tangent_slope_via_circle,
};
use crate::geometry::growth::{
    check_growth_case1, check_growth_case23, crossing_order, growth_sequence_both, growth_sequence_case1,
};
use crate::geometry::simulate::{traced_bij_circle, traced_bij_parabola};
use crate::geometry::{on_parabola, rat, ratio, Rat};
use crate::gnk::{relators, Context, GnkWord};
use crate::parity::BaseChoice;
use crate::pure_braid::{closed_form_circle_order, map_pb, map_pb_unreduced, pb_relators, CircleCase, PbWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Relators,
    Appendix,
    Tracer,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        match s {
            "relators" => Ok(Suite::Relators),
            "appendix" => Ok(Suite::Appendix),
            "tracer" => Ok(Suite::Tracer),
            _ => Err(Error::Parse(format!("unknown suite `{s}`"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Relators => "relators",
            Suite::Appendix => "appendix",
            Suite::Tracer => "tracer",
        })
    }
}

/// Outcome of one suite: how many checks ran and which failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    pub checks: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite, n: usize, k: usize, seed: u64) -> Self {
        SuiteReport { suite, n, k, seed, checks: 0, failures: Vec::new(), notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn fail(&mut self, what: String) {
        self.checks += 1;
        self.failures.push(what);
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Runs a suite. `n` and `k` select the group for the relator and tracer
/// suites; the appendix suite ignores them.
pub fn run_suite(suite: Suite, n: usize, k: usize, seed: u64) -> Result<SuiteReport> {
    match suite {
        Suite::Relators => relator_suite(n, k, seed),
        Suite::Appendix => Ok(appendix_suite(seed)),
        Suite::Tracer => tracer_suite(n, seed),
    }
}

/// Whether `w` has zero `psi`-image and empty `phi`-image for every base.
pub fn invisible_to_parity(w: &GnkWord) -> Result<bool> {
    for base in BaseChoice::all(w.context())? {
        if !base.psi_word(w).is_zero() || !base.phi(w)?.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether two even words have the same `psi`- and `phi`-images for every base.
pub fn same_parity_images(a: &GnkWord, b: &GnkWord) -> Result<bool> {
    for base in BaseChoice::all(a.context())? {
        if base.psi_word(a) != base.psi_word(b) || base.phi(a)? != base.phi(b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every `G_n^k` relator acts trivially on `Z × H` from every start, and
/// every pure braid relation maps to a parity-invisible word.
fn relator_suite(n: usize, k: usize, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Relators, n, k, seed);
    let rels = relators(n, k)?;
    let bases = BaseChoice::all(Context::new(n, k)?)?;
    for r in &rels {
        for base in &bases {
            for x in base.z_elements() {
                let s = base.phi_at(r, x);
                report.check(s.x == x && s.y.is_empty(), || {
                    format!("relator {r} moves ({x}, 1) under base {}", base.m())
                });
            }
        }
    }
    report.notes.push(format!("{} relators of G_{n}^{k}", rels.len()));
    if k == 3 || (k == 4 && n >= 4) {
        let pb = pb_relators(n)?;
        for rel in &pb {
            let image = map_pb_unreduced(&rel.difference(), k)?;
            report.check(invisible_to_parity(&image)?, || {
                format!("pure braid relation {} = {} is seen by parity", rel.lhs, rel.rhs)
            });
        }
        report.notes.push(format!("{} pure braid relations", pb.len()));
    }
    Ok(report)
}

fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    ratio(rng.gen_range(-60..=60), rng.gen_range(1..=25))
}

fn random_positive(rng: &mut ChaCha8Rng) -> Rat {
    ratio(rng.gen_range(1..=200), rng.gen_range(1..=25))
}

fn distinct(xs: &[&Rat]) -> bool {
    (0..xs.len()).all(|a| (a + 1..xs.len()).all(|b| xs[a] != xs[b]))
}

pub const DELTA_SAMPLES: usize = 1000;

fn appendix_suite(seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Appendix, 0, 4, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for s in 0..DELTA_SAMPLES {
        let (x0, x1, x2) = (random_rat(&mut rng), random_rat(&mut rng), random_rat(&mut rng));
        // every fourth sample sits on a circle by construction
        let x3 = if s % 4 == 0 { -(&x0 + &x1 + &x2) } else { random_rat(&mut rng) };
        let d = delta_det(&x0, &x1, &x2, &x3);
        report.check(d == delta_product(&x0, &x1, &x2, &x3), || {
            format!("delta factorization at ({x0}, {x1}, {x2}, {x3})")
        });
        if distinct(&[&x0, &x1, &x2, &x3]) {
            let zero_sum = (&x0 + &x1 + &x2 + &x3).is_zero();
            let on_circle = concyclic_on_parabola(&x0, &x1, &x2, &x3);
            report.check(on_circle == Ok(zero_sum) && d.is_zero() == zero_sum, || {
                format!("concyclicity at ({x0}, {x1}, {x2}, {x3})")
            });
        } else {
            report.check(concyclic_on_parabola(&x0, &x1, &x2, &x3).is_err(), || {
                format!("repeated abscissa accepted at ({x0}, {x1}, {x2}, {x3})")
            });
        }
    }

    for _ in 0..200 {
        let (a, b, c) = (random_positive(&mut rng), random_positive(&mut rng), random_positive(&mut rng));
        if !distinct(&[&a, &b, &c]) {
            continue;
        }
        let s = fourth_intersection(&a, &b, &c);
        let on_circle = circle_through(&on_parabola(&a), &on_parabola(&b), &on_parabola(&c)).map(|((p, q), r2)| {
            let (x, y) = on_parabola(&s);
            let (dx, dy) = (x - p, y - q);
            &dx * &dx + &dy * &dy == r2
        });
        report.check(s.is_negative() && on_circle == Ok(true), || format!("fourth intersection of ({a}, {b}, {c})"));
    }

    let cfg1 = growth_sequence_case1(5);
    report.check(check_growth_case1(&cfg1), || "growth sequence fails its own condition".into());
    for k in 1..=5 {
        for l in 1..=5 {
            for m in l + 1..=5 {
                if k == l || k == m {
                    continue;
                }
                let (tk, tl, tm) = (cfg1.t(k), cfg1.t(l), cfg1.t(m));
                match (slope_kappa(tk, tl, tm), slope_kappa(tk, tm, tl), tangent_slope_via_circle(tk, tl, tm)) {
                    (Ok(kappa), Ok(swapped), Ok(oracle)) => {
                        report.check(kappa == swapped && kappa == oracle, || {
                            format!("slope at P_{k} through P_{l}, P_{m}")
                        });
                        if m < k {
                            let sum = tl + tm;
                            let bounded = -(&sum + rat(1)) < kappa && kappa < -sum;
                            report.check(bounded, || format!("slope bounds at P_{k} through P_{l}, P_{m}"));
                        }
                    }
                    _ => report.fail(format!("slope at P_{k} through P_{l}, P_{m} undefined")),
                }
            }
        }
    }
    for j in 1..=5 {
        let ok =
            crossing_order(&cfg1, j, CircleCase::Below).ok() == Some(closed_form_circle_order(j, 5, CircleCase::Below));
        report.check(ok, || format!("case 1 order at P_{j}"));
    }

    match growth_sequence_both(5) {
        Ok(cfg) => {
            report.check(check_growth_case23(&cfg) == Ok(true), || "second growth condition".into());
            for j in 1..=5 {
                for case in [CircleCase::Below, CircleCase::Straddling, CircleCase::Above] {
                    let got = crossing_order(&cfg, j, case);
                    report.check(got.as_ref().ok() == Some(&closed_form_circle_order(j, 5, case)), || {
                        format!("case {} order at P_{j}: {got:?}", case.number())
                    });
                }
            }
        }
        Err(e) => report.fail(format!("growth sequence: {e}")),
    }
    report
}

/// Circle motions of every generator against the `G_n^3` map; for `n = 4`
/// also the parabola motion of `b_12` against the `G_n^4` map.
fn tracer_suite(n: usize, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Tracer, n, 3, seed);
    let mut exact = 0;
    let mut total = 0;
    for i in 1..=n {
        for j in i + 1..=n {
            let generator = PbWord::parse(&format!("b{i}{j}"), n)?;
            let traced = match traced_bij_circle(i, j, n) {
                Ok((_, w)) => w,
                Err(e) => {
                    report.fail(format!("circle motion of b{i}{j}: {e}"));
                    continue;
                }
            };
            let expected = map_pb(&generator, 3)?;
            report.check(traced.is_even(), || format!("circle trace of b{i}{j} is odd"));
            if traced.is_even() {
                report.check(same_parity_images(&traced, &expected)?, || format!("circle trace of b{i}{j} differs"));
            }
            total += 1;
            if traced == map_pb_unreduced(&generator, 3)? {
                exact += 1;
            }
        }
    }
    report.notes.push(format!("{exact} of {total} circle traces equal the formula letter for letter"));

    if n == 4 {
        match traced_bij_parabola(1, 2, n) {
            Ok((_, traced)) => {
                let generator = PbWord::parse("b12", n)?;
                let expected = map_pb(&generator, 4)?;
                report.check(traced.is_even(), || "parabola trace of b12 is odd".into());
                if traced.is_even() {
                    report.check(same_parity_images(&traced, &expected)?, || "parabola trace of b12 differs".into());
                }
                let unreduced = map_pb_unreduced(&generator, 4)?.len();
                report
                    .check(traced.len() == unreduced, || format!("parabola trace of b12 has {} events", traced.len()));
            }
            Err(e) => report.fail(format!("parabola motion of b12: {e}")),
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relator_suite_small() {
        let r = run_suite(Suite::Relators, 4, 3, 0).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.notes[0], "5 relators of G_4^3");
    }

    #[test]
    fn suite_names() {
        assert_eq!("tracer".parse::<Suite>().unwrap(), Suite::Tracer);
        assert!("other".parse::<Suite>().is_err());
        assert_eq!(Suite::Appendix.to_string(), "appendix");
    }
}
