use proptest::prelude::*;

use qlogic::builders::{firefly_l12, mo, powerset};
use qlogic::io::{parse_complex, parse_lattice, parse_seeds, parse_valuation, LatticeDocument, ValuationDocument};
use qlogic::number::{format_rational, Number};
use qlogic::state::sample_states;

#[test]
fn builders_round_trip() {
    let cases = [("l12", firefly_l12()), ("b3", powerset(3).unwrap()), ("mo3", mo(3).unwrap())];
    for (name, o) in cases {
        let doc = LatticeDocument::from_ortho(name, &o);
        let text = doc.serialize();
        let back = parse_lattice(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.serialize(), text);
        let rebuilt = back.to_ortho().unwrap();
        for a in o.elements() {
            for b in o.elements() {
                assert_eq!(o.meet(a, b), rebuilt.meet(a, b));
                assert_eq!(o.neg(a), rebuilt.neg(a));
            }
        }
    }
}

#[test]
fn valuations_round_trip() {
    let l = firefly_l12();
    for v in sample_states(&l, 5, 9).unwrap() {
        let doc = ValuationDocument::from_valuation("l12", &l, &v);
        let back = parse_valuation(&doc.serialize()).unwrap();
        assert_eq!(back.resolve("l12", &l).unwrap(), v);
    }
}

proptest! {
    #[test]
    fn lattice_parser_is_total(text in "(lattice|element|cover|ortho|top|bottom|#| |[a-z01¬]|\n){0,80}") {
        let _ = parse_lattice(&text);
    }

    #[test]
    fn valuation_parser_is_total(text in "(valuation|for|=|/|\\.|-|[0-9a-z]| |\n){0,60}") {
        let _ = parse_valuation(&text);
    }

    #[test]
    fn seed_and_complex_parsers_are_total(text in "[\\[\\]0-9,.\\-+ie ]{0,40}") {
        let _ = parse_seeds(&text);
        let _ = parse_complex(&text);
    }

    #[test]
    fn rationals_print_and_parse(p in -1000i64..1000, q in 1i64..1000) {
        let n = Number::ratio(p, q);
        let text = format_rational(n.as_exact().unwrap());
        prop_assert_eq!(Number::parse(&text), Some(n));
    }

    #[test]
    fn canonical_serialization_is_stable(shuffle in Just(()).prop_perturb(|_, mut rng| rng.next_u64())) {
        let doc = LatticeDocument::from_ortho("b2", &powerset(2).unwrap());
        let canonical = doc.serialize();
        let mut lines: Vec<&str> = canonical.lines().skip(5).collect();
        // covers and ortho lines in any order parse to the same canonical text
        let k = lines.len();
        lines.rotate_left((shuffle as usize) % k);
        let head: Vec<&str> = canonical.lines().take(5).collect();
        let text = format!("{}\n{}\n", head.join("\n"), lines.join("\n"));
        prop_assert_eq!(parse_lattice(&text).unwrap().serialize(), canonical);
    }
}
