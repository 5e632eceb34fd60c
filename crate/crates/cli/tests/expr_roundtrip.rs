use chromloc::expr::{eval_lattice, evaluate, parse_lattice_expr};
use chromloc_core::{ExtNat, GlobalFiniteLoc, Prime};
use proptest::prelude::*;

fn ext_nat() -> impl Strategy<Value = ExtNat> {
    prop_oneof![(0u64..6).prop_map(ExtNat::Finite), Just(ExtNat::Infinite)]
}

fn global_loc() -> impl Strategy<Value = GlobalFiniteLoc> {
    prop_oneof![
        1 => Just(GlobalFiniteLoc::Zero),
        6 => (ext_nat(), prop::collection::vec((prop::sample::select(vec![2u64, 3, 5, 7, 1_000_003]), ext_nat()), 0..5))
            .prop_map(|(d, ex)| GlobalFiniteLoc::from_params(d, ex.into_iter().map(|(p, n)| (Prime::new(p).unwrap(), n)))),
    ]
}

/// Random expression text built from atoms and operators.
fn expr_text() -> impl Strategy<Value = String> {
    let atom = prop_oneof![
        Just("id".to_string()),
        Just("zero".to_string()),
        Just("rat".to_string()),
        prop::sample::select(vec![2u64, 3, 5]).prop_map(|p| format!("ploc({p})")),
        (prop::sample::select(vec![2u64, 3, 5]), 0u64..4).prop_map(|(p, n)| format!("lift({p},{n})")),
        Just("invert{2, 5}".to_string()),
    ];
    atom.prop_recursive(4, 24, 2, |inner| {
        (inner.clone(), prop::sample::select(vec!["*", "&", "|"]), inner)
            .prop_map(|(l, op, r)| format!("({l} {op} {r})"))
    })
}

proptest! {
    #[test]
    fn canonical_print_reparses(f in global_loc()) {
        prop_assert_eq!(evaluate(&f.to_string()).unwrap(), f.clone());
        let spaced = f.to_string().replace(';', "; ").replace(',', ", ");
        prop_assert_eq!(evaluate(&spaced).unwrap(), f);
    }

    #[test]
    fn evaluated_expressions_reparse(text in expr_text()) {
        let value = eval_lattice(&parse_lattice_expr(&text).unwrap()).unwrap();
        prop_assert_eq!(evaluate(&value.to_string()).unwrap(), value);
    }

    #[test]
    fn compose_and_meet_are_synonyms(a in expr_text(), b in expr_text()) {
        prop_assert_eq!(evaluate(&format!("{a} * {b}")).unwrap(), evaluate(&format!("{a} & {b}")).unwrap());
    }

    #[test]
    fn parser_never_panics(text in "[a-z(){},;*&|0-9 >-]{0,40}") {
        let _ = parse_lattice_expr(&text);
    }
}
