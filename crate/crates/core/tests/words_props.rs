use groupkit::words::{format_word, parse_word, Alphabet, GenId, Letter, Word};
use proptest::prelude::*;

fn alphabet() -> Alphabet {
    Alphabet::from_names(&["a", "b", "c"])
}

fn raw_letters() -> impl Strategy<Value = Vec<Letter>> {
    proptest::collection::vec((0u32..3, -3i64..=3), 0..12)
        .prop_map(|v| v.into_iter().map(|(g, exp)| Letter { gen: GenId(g), exp }).collect())
}

fn word() -> impl Strategy<Value = Word> {
    raw_letters().prop_map(Word::from_letters)
}

proptest! {
    #[test]
    fn text_round_trip(w in word()) {
        let a = alphabet();
        prop_assert_eq!(parse_word(&format_word(&w, &a), &a).unwrap(), w);
    }

    #[test]
    fn free_reduction_idempotent(letters in raw_letters()) {
        let once = Word::unreduced(letters).free_reduce();
        prop_assert!(once.is_reduced());
        prop_assert_eq!(once.clone().free_reduce(), once);
    }

    #[test]
    fn inverse_is_anti_homomorphism(u in word(), v in word()) {
        prop_assert_eq!(u.concat(&v).inverse(), v.inverse().concat(&u.inverse()));
        prop_assert!(u.concat(&u.inverse()).is_empty());
        prop_assert_eq!(u.inverse().inverse(), u);
    }

    #[test]
    fn exponent_sums_add(u in word(), v in word()) {
        for g in 0..3 {
            let g = GenId(g);
            prop_assert_eq!(u.concat(&v).exponent_sum(g), u.exponent_sum(g) + v.exponent_sum(g));
        }
    }

    #[test]
    fn cyclic_reduction_is_a_conjugate(u in word(), c in word()) {
        let w = u.conjugate(&c);
        let r = w.cyclic_reduce();
        prop_assert!(r.same_relator(&u.cyclic_reduce()));
        prop_assert!(r.len() <= w.len());
        for g in 0..3 {
            prop_assert_eq!(r.exponent_sum(GenId(g)), u.exponent_sum(GenId(g)));
        }
    }

    #[test]
    fn substitution_is_a_homomorphism(u in word(), v in word(), img in proptest::collection::vec(word(), 3)) {
        let f = |g: GenId| img[g.index()].clone();
        prop_assert_eq!(u.concat(&v).substitute(f), u.substitute(f).concat(&v.substitute(f)));
    }
}
