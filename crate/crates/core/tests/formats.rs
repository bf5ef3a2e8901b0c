use awglue::format::{
    admissible_from_json, admissible_to_json, space_from_json, space_to_json, structure_from_json, structure_to_json, sum_from_json,
    sum_to_json,
};
use awglue::glueing::glue;
use awglue::harness::{gen_admissible, gen_pair, gen_space, Rng};
use proptest::prelude::*;

proptest! {
    #[test]
    fn spaces_round_trip(seed in any::<u64>(), n in 1usize..7) {
        let s = gen_space(&mut Rng::new(seed), n);
        let text = space_to_json(&s);
        let back = space_from_json(&text).unwrap();
        prop_assert_eq!(space_to_json(&back), text);
        for p in 0..s.len() {
            let q = back.index_of(s.label(p)).unwrap();
            for r in 0..s.len() {
                prop_assert_eq!(s.below(r, p), back.below(back.index_of(s.label(r)).unwrap(), q));
            }
        }
    }

    #[test]
    fn admissible_maps_round_trip(seed in any::<u64>(), n in 1usize..5, m in 1usize..5) {
        let mut rng = Rng::new(seed);
        let (x, y) = (gen_space(&mut rng, n), gen_space(&mut rng, m));
        let f = gen_admissible(&mut rng, &x, &y);
        let text = admissible_to_json(&f);
        prop_assert_eq!(&admissible_from_json(&text, None).unwrap(), &f);
        prop_assert_eq!(admissible_to_json(&admissible_from_json(&text, Some((&x, &y))).unwrap()), text);
    }

    #[test]
    fn glued_spaces_round_trip(seed in any::<u64>(), n in 1usize..4, m in 1usize..4) {
        let mut rng = Rng::new(seed);
        let (x, y) = (gen_space(&mut rng, n), gen_space(&mut rng, m));
        let sum = glue(&x, &y, gen_pair(&mut rng, &x, &y)).unwrap();
        let text = sum_to_json(&sum);
        let back = sum_from_json(&text).unwrap();
        prop_assert_eq!(sum_to_json(&back), text);
        prop_assert_eq!(back.f().generators(), sum.f().generators());
        prop_assert_eq!(back.g().generators(), sum.g().generators());
    }
}

#[test]
fn structure_documents_ignore_generator_and_pair_order() {
    let a = structure_from_json(r#"{"ground": ["b", "a", "c"], "generators": [[["a", "b"], ["c", "c"]], [["b", "c"]]]}"#).unwrap();
    let b = structure_from_json(r#"{"ground": ["b", "a", "c"], "generators": [[["b", "c"]], [["c", "c"], ["a", "b"]]]}"#).unwrap();
    assert_eq!(structure_to_json(&a), structure_to_json(&b));
    let again = structure_from_json(&structure_to_json(&a)).unwrap();
    assert_eq!(structure_to_json(&again), structure_to_json(&a));
    assert_eq!(again.maxima().len(), a.maxima().len());
}

#[test]
fn unknown_points_are_named() {
    let e = admissible_from_json(r#"{"gen": {"zz": []}}"#, Some((&gen_space(&mut Rng::new(1), 2), &gen_space(&mut Rng::new(2), 2))))
        .unwrap_err();
    assert!(e.to_string().contains("zz"), "{e}");
}
