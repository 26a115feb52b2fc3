use super::*;
use crate::complexes::build_complex;
use crate::presentations::parse_presentation;
use crate::rational::q;
use crate::words::{Alphabet, Letter, Word};
use proptest::prelude::*;

fn report(text: &str) -> BettiReport {
    analyze(&parse_presentation(text).unwrap()).unwrap()
}

fn triple(r: &BettiReport) -> (Q, Q, Q) {
    (r.betti.b0.clone(), r.betti.b1.clone(), r.betti.b2.clone())
}

#[test]
fn one_relator_examples() {
    assert_eq!(triple(&report("gens x y")), (int(0), int(1), int(0)));
    for m in 1..=9 {
        assert_eq!(triple(&report(&format!("gens x\nrel x^{m}"))), (q(1, m), int(0), int(0)));
    }
    assert_eq!(triple(&report("gens x y\nrel [x,y]^2")), (int(0), q(1, 2), int(0)));
}

#[test]
fn surface_examples() {
    let r = report("gens x1 x2\nsurface 1\nrel x1^3 x2");
    assert_eq!(triple(&r), (int(0), int(0), int(0)));
    assert_eq!(r.cd, Some(1));
    let r = report("gens x1 x2 x3 x4\nsurface 2\nrel x1");
    assert_eq!(triple(&r), (int(0), int(1), int(0)));
    assert!(r.conditional);
    let r = report("gens x1 x2 x3 x4 x5 x6\nsurface 3\nrel x1^2\ndeclare-root x1 2");
    assert_eq!(r.chi, Some(EulerCharacteristic::Finite(q(-7, 2))));
    assert_eq!(triple(&r), (int(0), q(7, 2), int(0)));
    assert!(!r.conditional);
    assert_eq!(r.cd, Some(2));
}

#[test]
fn two_relator_needs_both_flags() {
    let base = "gens a b c d\nrel a b a^-1 b^-2\nrel c d c^-1 d^-2\n";
    let r = report(&format!("{base}assume left-orderable\nassume cd>=3"));
    assert_eq!(triple(&r), (int(0), int(2), int(0)));
    assert!(r.conditional);
    assert_eq!(r.betti.tail, Tail::UndeterminedFromThree);
    assert_eq!(r.assumptions, vec!["left-orderable", "cd>=3"]);

    let r = report("gens a b\nrel a^2\nrel b^2\nassume left-orderable\nassume cd>=3");
    assert_eq!(triple(&r), (int(0), int(0), int(0)));

    let p = parse_presentation(&format!("{base}assume left-orderable")).unwrap();
    let e = analyze(&p).unwrap_err();
    assert_eq!(e, BettiError::MissingAssumptions(vec!["cd>=3"]));
    assert!(e.to_string().starts_with("assumptions required"));
}

#[test]
fn general_presentations_are_unsupported() {
    let p = parse_presentation("gens x y\nrel x\nrel y\nrel x y").unwrap();
    assert_eq!(analyze(&p).unwrap_err(), BettiError::Unsupported("general"));
}

#[test]
fn consistency_notes() {
    let r = report("gens x y\nrel [x,y]^2\nassume left-orderable");
    assert_eq!(r.notes.len(), 1);
    assert!(r.notes[0].contains("free of rank two"));
    assert!(report("gens x y\nassume left-orderable").notes.is_empty());
    assert!(report("gens x y\nrel [x,y]\nassume left-orderable").notes.is_empty());
    assert!(report("gens x y\nrel [x,y]^2").notes.is_empty());
}

#[test]
fn notes_never_change_values() {
    let flagged = report("gens x y\nrel [x,y]^2\nassume left-orderable");
    let plain = report("gens x y\nrel [x,y]^2");
    assert_eq!(flagged.betti, plain.betti);
    assert_eq!(flagged.chi, plain.chi);
}

#[test]
fn thompson_registry() {
    let r = known_group("thompson-F").unwrap();
    assert_eq!(triple(&r), (int(0), int(0), int(0)));
    assert!(r.source.is_some());
    let back: BettiReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(back, r);
    assert_eq!(known_group("unknown").unwrap_err(), BettiError::UnknownGroup("unknown".into()));
}

#[test]
fn report_json_fields() {
    let v = serde_json::to_value(report("gens x y\nrel [x,y]^2")).unwrap();
    assert_eq!(v["classification"], "one-relator");
    assert_eq!(v["d"], 2);
    assert_eq!(v["m"], serde_json::json!({"value": 2, "status": "computed-exact"}));
    assert_eq!(v["chi"], "-1/2");
    assert_eq!(v["order"], "infinite");
    assert_eq!(v["betti"]["b1"], "1/2");
    assert!(v.get("g").is_none());
    let v = serde_json::to_value(report("gens x\nrel x^5")).unwrap();
    assert_eq!(v["order"], "finite:5");
    let v = serde_json::to_value(report("gens x y")).unwrap();
    assert_eq!(v["m"]["value"], "infinity");
}

#[test]
fn report_round_trips() {
    for text in ["gens x\nrel x^5", "gens x1 x2 x3 x4\nsurface 2\nrel x1 x3", "gens x y"] {
        let r = report(text);
        let back: BettiReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
    }
}

#[test]
fn cross_validation() {
    for text in ["gens x\nrel x^5", "gens x\nrel x", "gens"] {
        let p = parse_presentation(text).unwrap();
        let out = cross_validate(&p, &analyze(&p).unwrap());
        assert!(out.is_pass(), "{text}: {out:?}");
        assert_eq!(out.oracle.as_ref(), Some(&out.formula));
    }
    let p = parse_presentation("gens x\nrel x^5").unwrap();
    assert_eq!(cross_validate(&p, &analyze(&p).unwrap()).formula, vec![q(1, 5), int(0), int(0)]);
    let p = parse_presentation("gens x y z").unwrap();
    assert_eq!(cross_validate(&p, &analyze(&p).unwrap()).status, OutcomeStatus::Skipped);
}

#[test]
fn corrupted_complex_fails_cross_validation() {
    let p = parse_presentation("gens x\nrel x^5").unwrap();
    let rep = analyze(&p).unwrap();
    let mut spec = build_complex(&p).unwrap();
    *spec.boundary_mut(1).get_mut(0, 0) = crate::foxcalc::GroupRingElement::from_word(Word::generator(0).pow(2));
    let model = FiniteCyclicModel::for_presentation(&p).unwrap();
    let out = cross_validate_complex(&spec, &model, &rep);
    assert_eq!(out.status, OutcomeStatus::Fail);
}

#[test]
fn wrong_formula_fails_cross_validation() {
    let p = parse_presentation("gens x\nrel x^5").unwrap();
    let mut rep = analyze(&p).unwrap();
    rep.betti.b0 = q(1, 4);
    assert_eq!(cross_validate(&p, &rep).status, OutcomeStatus::Fail);
}

#[test]
fn finite_inputs_cross_validate_up_to_twelve() {
    for m in 1..=12 {
        for text in [format!("gens x\nrel x^{m}"), format!("gens x\nrel x^-{m}"), format!("gens x\nrel x^{} x^-1", m + 1)] {
            let p = parse_presentation(&text).unwrap();
            assert!(cross_validate(&p, &analyze(&p).unwrap()).is_pass(), "{text}");
        }
    }
}

fn word(rank: usize, max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..rank, any::<bool>()).prop_map(|(generator, inverse)| Letter { generator, inverse }), 0..max)
        .prop_map(Word::reduce)
}

proptest! {
    #[test]
    fn one_relator_identities(d in 0usize..5, r in word(4, 12), k in 1i64..5) {
        let names: Vec<String> = (0..d).map(|i| format!("x{i}")).collect();
        let r = if d == 0 { Word::identity() } else {
            Word::reduce(r.letters().iter().filter(|l| l.generator < d).copied()).pow(k)
        };
        let p = Presentation::new(Alphabet::new(&names).unwrap(), vec![r]).unwrap();
        let rep = analyze(&p).unwrap();
        let chi = rep.chi.as_ref().unwrap().finite().unwrap().clone();
        prop_assert!((&rep.betti.b0 * &rep.betti.b1).is_zero());
        prop_assert_eq!(&rep.betti.b0 - &rep.betti.b1, chi);
        prop_assert!(!rep.betti.b1.is_negative() && !rep.betti.b0.is_negative());
        if let VagueCardinal::Finite(n) = rep.order {
            prop_assert_eq!(&rep.betti.b0 * int(n as i64), int(1));
        }
    }

    #[test]
    fn surface_identities(g in 1usize..4, alpha in word(6, 14)) {
        let alpha = Word::reduce(alpha.letters().iter().filter(|l| l.generator < 2 * g).copied());
        let p = Presentation::new(Alphabet::surface(g), vec![Word::surface_relator(g), alpha]).unwrap();
        if let Ok(rep) = analyze(&p) {
            let chi = rep.chi.as_ref().unwrap().finite().unwrap().clone();
            prop_assert!(!chi.is_positive());
            prop_assert_eq!(rep.betti.b1.clone(), -chi);
            prop_assert!((&rep.betti.b0 * &rep.betti.b1).is_zero());
            if g == 1 {
                prop_assert!(rep.betti.b1.is_zero());
            }
        }
    }

    #[test]
    fn two_relator_reports_are_conditional(d in 2usize..7, a in word(6, 8), b in word(6, 8)) {
        let names: Vec<String> = (0..d).map(|i| format!("y{i}")).collect();
        let keep = |w: Word| Word::reduce(w.letters().iter().filter(|l| l.generator < d).copied());
        let p = Presentation::new(Alphabet::new(&names).unwrap(), vec![keep(a), keep(b)]).unwrap()
            .with_assumption(Assumption::LeftOrderable)
            .with_assumption(Assumption::CdAtLeast3);
        prop_assume!(p.classify() == Classification::TwoRelator);
        let rep = analyze(&p).unwrap();
        prop_assert!(rep.conditional);
        prop_assert!(!rep.assumptions.is_empty());
        prop_assert_eq!(rep.betti.b1.clone(), int(d as i64 - 2));
    }
}
