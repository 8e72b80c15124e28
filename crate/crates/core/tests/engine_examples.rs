use mknf::engine::{Engine, EngineConfig};
use mknf::parser::{load, parse_atom, print_kb, validate_dl_safety};
use mknf::TruthValue::{self, *};
use mknf_testkit::fixtures;

fn ask(fixture: &str, query: &str) -> TruthValue {
    let engine = Engine::new(&fixtures::kb(fixture), EngineConfig::default()).unwrap();
    engine.answer(&parse_atom(query).unwrap()).unwrap().value()
}

#[test]
fn insurance() {
    assert_eq!(ask("insurance", "surcharge(john)"), True);
    assert_eq!(ask("insurance", "surcharge(bill)"), False);
    assert_eq!(ask("insurance", "surcharge(bob)"), False);
    assert_eq!(ask("insurance", "discount(bob)"), True);
    assert_eq!(ask("insurance", "discount(bill)"), False);
}

#[test]
fn callbacks() {
    assert_eq!(ask("callback", "third(callback)"), True);
    assert_eq!(ask("callback_not", "fourth(callback)"), False);
}

#[test]
fn object() {
    assert_eq!(ask("object", "c(object)"), False);
    assert_eq!(ask("object", "b(object)"), True);
}

#[test]
fn customs() {
    assert_eq!(ask("customs", "inspect(s1)"), False);
    assert_eq!(ask("customs", "inspect(s2)"), False);
    assert_eq!(ask("customs", "inspect(s3)"), True);
    assert_eq!(ask("customs", "safeCountry(atlantis)"), Undefined);
}

#[test]
fn second_is_entailed_before_third_is_derived() {
    let engine = Engine::new(&fixtures::kb("callback"), EngineConfig::default()).unwrap();
    let r = engine.answer(&parse_atom("third(callback)").unwrap()).unwrap();
    let second = parse_atom("second(callback)").unwrap().to_ground().unwrap();
    let third = parse_atom("third(callback)").unwrap().to_ground().unwrap();
    assert!(!r.table.known(&second, 0, 0));
    assert!(r.table.entailed(0, 0).unwrap().contains(&second));
    assert!(r.table.known(&second, 0, 1));
    assert!(r.table.known(&third, 0, 1));
}

#[test]
fn fixtures_round_trip_through_the_printer() {
    for name in fixtures::safe_names() {
        let kb = fixtures::kb(name);
        let printed = print_kb(&kb);
        let reloaded = load(&printed);
        assert!(!reloaded.has_errors(), "{name}");
        assert_eq!(reloaded.kb.unwrap(), kb, "{name}");
    }
}

#[test]
fn unsafe_fixture_is_rejected() {
    let loaded = load(&fixtures::source("unsafe"));
    assert!(!loaded.has_errors());
    let kb = loaded.kb.unwrap();
    let diags = validate_dl_safety(&kb, &loaded.rule_lines);
    assert_eq!(diags.len(), 1);
    assert!(diags[0].is_error() && diags[0].message.contains('X'), "{}", diags[0]);
    assert!(Engine::new(&kb, EngineConfig::default()).is_err());
}
