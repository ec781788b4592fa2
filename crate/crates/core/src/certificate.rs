//! Certificates: every image and lower bound computed for one braid, in a
//! form that serializes to JSON and back without loss.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gnk::{GnkWord, Subset};
use crate::parity::BaseChoice;
use crate::pure_braid::{map_pb_to_g3, map_pb_to_g4, PbWord};
use crate::unknotting::{c_max, min_switches, pi_project, Switch, SwitchOutcome, SwitchSystem};

pub const TOOL_VERSION: &str = concat!("gnk ", env!("CARGO_PKG_VERSION"));

pub const DEFAULT_BUDGET: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BudgetFlag {
    BudgetExceeded,
}

/// An exact switch count, or `"budget_exceeded"` in JSON.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MinSwitches {
    Exact(usize),
    Exceeded(BudgetFlag),
}

impl MinSwitches {
    pub fn exact(&self) -> Option<usize> {
        match self {
            MinSwitches::Exact(c) => Some(*c),
            MinSwitches::Exceeded(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputKind {
    Pb,
    Gnk,
}

/// The bounds obtained from one `(k, m)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseReport {
    pub k: usize,
    pub base_m: Subset,
    pub phi_image: String,
    pub phi_complexity: usize,
    pub pi_support: Vec<String>,
    pub rough_bound: usize,
    pub min_switches: MinSwitches,
    pub witness: Vec<Switch>,
}

impl BaseReport {
    /// The better of the two unknotting bounds.
    pub fn bound(&self) -> usize {
        self.rough_bound.max(self.min_switches.exact().unwrap_or(0))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub input_word: String,
    pub input_kind: InputKind,
    pub n: usize,
    /// `(k, m)` of the report giving `best_bound`, and its values.
    pub k: usize,
    pub base_m: Subset,
    pub phi_image: String,
    pub pi_support: Vec<String>,
    pub rough_bound: usize,
    pub min_switches: MinSwitches,
    pub best_bound: usize,
    pub images: Vec<ImageRecord>,
    pub trisecant_bound: Option<usize>,
    pub quadrisecant_bound: Option<usize>,
    pub budget: usize,
    pub reports: Vec<BaseReport>,
    pub tool_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

/// The reduced image of the input in one `G_n^k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageRecord {
    pub k: usize,
    pub word: String,
    pub length: usize,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Certificate> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Reports for every base of the word's context.
pub fn base_reports(w: &GnkWord, budget: usize) -> Result<Vec<BaseReport>> {
    if let Some(odd) = w.first_odd_letter() {
        return Err(Error::NotEven(odd.letter_token()));
    }
    let mut out = Vec::new();
    for base in BaseChoice::all(w.context())? {
        let image = base.phi(w)?;
        let sys = SwitchSystem::new(base);
        let pi = pi_project(&image);
        let (min_switches, witness) = match min_switches(&image, &sys, budget) {
            SwitchOutcome::Exact { count, witness } => (MinSwitches::Exact(count), witness),
            SwitchOutcome::BudgetExceeded => (MinSwitches::Exceeded(BudgetFlag::BudgetExceeded), Vec::new()),
        };
        out.push(BaseReport {
            k: w.context().k,
            base_m: sys.base().m().clone(),
            phi_image: image.to_string(),
            phi_complexity: image.len(),
            pi_support: pi.support().map(|z| z.to_string()).collect(),
            rough_bound: c_max(&pi, &sys).div_ceil(2),
            min_switches,
            witness,
        });
    }
    Ok(out)
}

fn assemble(
    input_word: String,
    input_kind: InputKind,
    n: usize,
    words: &[GnkWord],
    budget: usize,
) -> Result<Certificate> {
    let mut reports = Vec::new();
    let mut images = Vec::new();
    for w in words {
        images.push(ImageRecord { k: w.context().k, word: w.to_string(), length: w.len() });
        reports.extend(base_reports(w, budget)?);
    }
    let secant = |k: usize| reports.iter().filter(|r| r.k == k).map(|r| r.phi_complexity).max();
    let (trisecant_bound, quadrisecant_bound) = (secant(3), secant(4));
    // first report with the largest bound
    let best = reports
        .iter()
        .fold(None::<&BaseReport>, |acc, r| match acc {
            Some(a) if a.bound() >= r.bound() => Some(a),
            _ => Some(r),
        })
        .ok_or(Error::InvalidContext { n, k: 0 })?
        .clone();
    Ok(Certificate {
        input_word,
        input_kind,
        n,
        k: best.k,
        base_m: best.base_m.clone(),
        phi_image: best.phi_image.clone(),
        pi_support: best.pi_support.clone(),
        rough_bound: best.rough_bound,
        min_switches: best.min_switches,
        best_bound: best.bound(),
        images,
        trisecant_bound,
        quadrisecant_bound,
        budget,
        reports,
        tool_version: TOOL_VERSION.to_string(),
        timing_ms: None,
    })
}

/// Unknotting bounds of a pure braid through `G_n^3` and, for `n >= 4`,
/// `G_n^4`, over every base.
pub fn unknotting_report(w: &PbWord, budget: usize) -> Result<Certificate> {
    let mut words = vec![map_pb_to_g3(w)?];
    if w.n() >= 4 {
        words.push(map_pb_to_g4(w)?);
    }
    assemble(w.to_string(), InputKind::Pb, w.n(), &words, budget)
}

/// The same report for an even word given directly in some `G_n^k`.
pub fn gnk_report(w: &GnkWord, budget: usize) -> Result<Certificate> {
    let w = w.reduced();
    assemble(w.to_string(), InputKind::Gnk, w.context().n, std::slice::from_ref(&w), budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gnk::Context;

    fn beta() -> GnkWord {
        GnkWord::parse("a123 a234 a123 a134 a123 a134 a123 a234", Context::new(4, 3).unwrap()).unwrap()
    }

    #[test]
    fn beta_report() {
        let cert = gnk_report(&beta(), DEFAULT_BUDGET).unwrap();
        let r123 = cert.reports.iter().find(|r| r.base_m == Subset::new([1, 2, 3]).unwrap()).unwrap();
        assert_eq!(r123.phi_image, "f[00] f[10] f[11] f[10]");
        assert_eq!(r123.pi_support, vec!["f[00]", "f[11]"]);
        assert_eq!(r123.rough_bound, 1);
        assert_eq!(r123.min_switches, MinSwitches::Exact(2));
        assert_eq!(cert.best_bound, 2);
        assert_eq!(cert.trisecant_bound, Some(4));
        assert_eq!(cert.quadrisecant_bound, None);
    }

    #[test]
    fn empty_braid() {
        let cert = unknotting_report(&PbWord::parse("", 4).unwrap(), DEFAULT_BUDGET).unwrap();
        assert_eq!(cert.best_bound, 0);
        assert_eq!(cert.reports.len(), 5);
        assert!(cert.reports.iter().all(|r| r.bound() == 0 && r.min_switches == MinSwitches::Exact(0)));
        assert_eq!(cert.trisecant_bound, Some(0));
        assert_eq!(cert.quadrisecant_bound, Some(0));
    }

    #[test]
    fn json_round_trip() {
        let mut cert = unknotting_report(&PbWord::parse("b12 b12 b13", 4).unwrap(), DEFAULT_BUDGET).unwrap();
        let back = Certificate::from_json(&cert.to_json()).unwrap();
        assert_eq!(back, cert);
        cert.timing_ms = Some(5);
        cert.reports[0].min_switches = MinSwitches::Exceeded(BudgetFlag::BudgetExceeded);
        let text = cert.to_json();
        assert!(text.contains("\"budget_exceeded\""));
        assert_eq!(Certificate::from_json(&text).unwrap(), cert);
    }

    #[test]
    fn odd_word_rejected() {
        let w = GnkWord::parse("a123", Context::new(4, 3).unwrap()).unwrap();
        assert!(matches!(gnk_report(&w, 2), Err(Error::NotEven(_))));
    }
}
