use gnk_core::certificate::{base_reports, gnk_report, unknotting_report, Certificate, DEFAULT_BUDGET};
use gnk_core::gnk::{relators, Context, GnkWord};
use gnk_core::parity::{quadrisecant_lower_bound, trisecant_lower_bound, BaseChoice};
use gnk_core::pure_braid::{map_pb, map_pb_to_g3, PbLetter, PbWord};
use proptest::prelude::*;

fn letter(n: usize) -> impl Strategy<Value = PbLetter> {
    (1..n, 1..=n, any::<bool>()).prop_filter_map("i < j", |(i, j, inv)| {
        (i < j).then(|| if inv { PbLetter::inv(i, j) } else { PbLetter::new(i, j) })
    })
}

fn braid(n: usize, max_len: usize) -> impl Strategy<Value = PbWord> {
    proptest::collection::vec(letter(n), 0..=max_len).prop_map(move |ls| PbWord::new(n, ls).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn maps_are_homomorphisms(u in braid(5, 4), v in braid(5, 4), k in 3usize..=4) {
        let uv = map_pb(&u.concat(&v), k).unwrap();
        prop_assert_eq!(&uv, &map_pb(&u, k).unwrap().concat(&map_pb(&v, k).unwrap()).reduced());
        prop_assert_eq!(map_pb(&u.inverse(), k).unwrap(), map_pb(&u, k).unwrap().inverse().reduced());
        prop_assert!(uv.is_even());
    }

    #[test]
    fn free_cancellation_is_invisible(u in braid(4, 4), v in braid(4, 4)) {
        let padded = u.concat(&v).concat(&v.inverse());
        prop_assert_eq!(map_pb_to_g3(&padded).unwrap(), map_pb_to_g3(&u).unwrap());
    }

    #[test]
    fn certificates_round_trip(w in braid(4, 3)) {
        let cert = unknotting_report(&w, 3).unwrap();
        prop_assert_eq!(Certificate::from_json(&cert.to_json()).unwrap(), cert.clone());
        prop_assert!(cert.reports.iter().all(|r| r.bound() <= cert.best_bound));
        prop_assert!(cert.reports.iter().all(|r| r.min_switches.exact().is_none_or(|m| m >= r.rough_bound)));
        prop_assert_eq!(cert.trisecant_bound, Some(trisecant_lower_bound(&w).unwrap().value));
        prop_assert_eq!(cert.quadrisecant_bound, Some(quadrisecant_lower_bound(&w).unwrap().value));
    }

    #[test]
    fn conjugating_by_relators_changes_nothing(w in braid(4, 3), pick in 0usize..64) {
        let image = map_pb_to_g3(&w).unwrap();
        let rels = relators(4, 3).unwrap();
        let r = &rels[pick % rels.len()];
        let disguised = image.concat(r);
        for base in BaseChoice::all(image.context()).unwrap() {
            prop_assert_eq!(base.phi(&disguised).unwrap(), base.phi(&image).unwrap());
        }
    }
}

#[test]
fn gnk_and_pb_reports_agree_on_images() {
    let w = PbWord::parse("b12 b34 B13", 5).unwrap();
    let from_pb = unknotting_report(&w, DEFAULT_BUDGET).unwrap();
    let g3 = map_pb_to_g3(&w).unwrap();
    let from_gnk = gnk_report(&g3, DEFAULT_BUDGET).unwrap();
    let k3: Vec<_> = from_pb.reports.iter().filter(|r| r.k == 3).cloned().collect();
    assert_eq!(k3, from_gnk.reports);
    assert_eq!(from_pb.best_bound, 3);
    assert_eq!(from_pb.k, 4);
}

#[test]
fn squared_generator_certificate() {
    let cert = unknotting_report(&PbWord::parse("b12 b12", 4).unwrap(), DEFAULT_BUDGET).unwrap();
    assert_eq!(cert.best_bound, 2);
    let cert = unknotting_report(&PbWord::parse("b13 b24", 4).unwrap(), DEFAULT_BUDGET).unwrap();
    assert_eq!(cert.best_bound, 1);
}

#[test]
fn relators_report_zero() {
    let ctx = Context::new(5, 3).unwrap();
    for r in relators(5, 3).unwrap() {
        for report in base_reports(&r, 2).unwrap() {
            assert_eq!(report.bound(), 0, "{r}");
        }
    }
    assert!(base_reports(&GnkWord::empty(ctx), 0).unwrap().iter().all(|r| r.phi_complexity == 0));
}
