use proptest::prelude::*;

use slicealg::algebra::{Degree, DegreeWindow};
use slicealg::config::Config;
use slicealg::report::{Assumption, CheckId, Detail, Outcome, Report, Witness};
use slicealg::run_check;

fn degree() -> impl Strategy<Value = Option<Degree>> {
    prop::option::of((0i64..40, -4i64..=4, -12i64..=12).prop_map(|(c, w, s)| Degree::new(c, w, s)))
}

/// Short strings with the characters reports actually carry.
fn text() -> impl Strategy<Value = String> {
    "[a-z0-9 ^*+\\-{}(),=ψΓηε/\"\\\\]{0,16}"
}

fn outcome() -> impl Strategy<Value = Outcome> {
    (
        prop::collection::vec((degree(), text(), text(), text()), 0..4),
        prop::collection::vec((degree(), text()), 0..3),
        prop::collection::vec((text(), text()), 0..3),
        prop::collection::vec(text(), 0..3),
        any::<bool>(),
    )
        .prop_map(|(ds, ws, asm, notes, unresolved)| {
            let mut o = Outcome::new();
            o.details = ds.into_iter().map(|(d, i, e, c)| Detail::new(d, i, e, c)).collect();
            o.witnesses = ws.into_iter().map(|(degree, description)| Witness { degree, description }).collect();
            o.assumptions = asm.into_iter().map(|(class, reason)| Assumption { class, reason }).collect();
            o.notes = notes;
            o.unresolved = unresolved;
            o
        })
}

fn report() -> impl Strategy<Value = Report> {
    (
        0..CheckId::ALL.len(),
        prop::option::of(1u32..=3),
        (1i64..50, 0i64..5, 0i64..13),
        outcome(),
        prop::option::of(any::<u64>()),
    )
        .prop_map(|(i, height, (u, aw, s), out, timing)| {
            let mut r = Report::new(CheckId::ALL[i], height, DegreeWindow::new(u, aw, s).unwrap(), out);
            r.timing_ms = timing;
            r
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn reports_round_trip_through_json(r in report()) {
        let line = r.to_json_line();
        prop_assert!(!line.contains('\n'));
        let back = Report::from_json(&line).unwrap();
        prop_assert_eq!(&back, &r);
        prop_assert_eq!(back.to_json_line(), line);
    }
}

#[test]
fn cheap_checks_are_deterministic() {
    let cfg = Config::default();
    for id in [CheckId::KoHilbert, CheckId::Restrictions, CheckId::Hurewicz, CheckId::Audits] {
        let a = run_check(id, &cfg).unwrap().to_json_line();
        let b = run_check(id, &cfg).unwrap().to_json_line();
        assert_eq!(a, b, "{id}");
    }
}
