use groupkit::britton::{britton_reduce, equal, eval_metabelian, is_trivial, BsParams, BsWord};
use groupkit::metabelian::GmnParams;
use groupkit::BigInt;
use proptest::prelude::*;

fn bs_word(max_len: usize) -> impl Strategy<Value = BsWord> {
    proptest::collection::vec((any::<bool>(), prop_oneof![Just(1i64), Just(-1i64)]), 0..=max_len).prop_map(|v| {
        v.into_iter().fold(BsWord::empty(), |w, (is_a, e)| {
            let l = if is_a { BsWord::a_pow(BigInt::from(e)) } else { BsWord::t_pow(e) };
            w.concat(&l)
        })
    })
}

fn coprime_positive() -> impl Strategy<Value = (i64, i64)> {
    (1i64..=5, 1i64..=5).prop_filter("coprime", |&(m, n)| num_integer::gcd(m, n) == 1)
}

proptest! {
    #[test]
    fn oracle_agrees(k in 2i64..=6, w in bs_word(30)) {
        let bs = BsParams::<BigInt>::from_ints(1, k).unwrap();
        let meta = eval_metabelian(&w, &BigInt::from(k)).unwrap().is_identity();
        prop_assert_eq!(is_trivial(&w, &bs), meta);
    }

    #[test]
    fn relator_conjugates_are_trivial(mn in (-4i64..=4, -4i64..=4), w in bs_word(12), e in prop_oneof![Just(1i64), Just(-1i64)]) {
        let (m, n) = mn;
        prop_assume!(m != 0 && n != 0);
        let bs = BsParams::<BigInt>::from_ints(m, n).unwrap();
        let r = bs.relator().pow(e);
        prop_assert!(is_trivial(&w.concat(&r).concat(&w.inverse()), &bs));
        prop_assert!(is_trivial(&w.concat(&w.inverse()), &bs));
    }

    #[test]
    fn reduction_is_idempotent_and_pinch_free(mn in coprime_positive(), w in bs_word(20)) {
        let bs = BsParams::<BigInt>::from_ints(mn.0, mn.1).unwrap();
        let r = britton_reduce(&w, &bs);
        prop_assert!(r.is_pinch_free(&bs));
        prop_assert_eq!(britton_reduce(&r, &bs), r.clone());
        prop_assert!(r.t_length() <= w.t_length());
        prop_assert!(equal(&w, &r, &bs));
    }

    #[test]
    fn evaluation_is_a_homomorphism(mn in coprime_positive(), u in bs_word(15), v in bs_word(15)) {
        let g = GmnParams::<BigInt>::from_ints(mn.0, mn.1).unwrap();
        prop_assert_eq!(u.concat(&v).eval_in(&g), &u.eval_in(&g) * &v.eval_in(&g));
        prop_assert_eq!(u.inverse().eval_in(&g), u.eval_in(&g).inv());
    }

    #[test]
    fn reduction_preserves_the_image(mn in coprime_positive(), w in bs_word(20)) {
        let bs = BsParams::<BigInt>::from_ints(mn.0, mn.1).unwrap();
        let g = GmnParams::<BigInt>::from_ints(mn.0, mn.1).unwrap();
        prop_assert_eq!(britton_reduce(&w, &bs).eval_in(&g), w.eval_in(&g));
    }

    #[test]
    fn pinch_insertion_keeps_the_element(
        mn in (-4i64..=4, -4i64..=4),
        u in bs_word(10),
        v in bs_word(10),
        j in -3i64..=3,
        flip in any::<bool>(),
    ) {
        let (m, n) = mn;
        prop_assume!(m != 0 && n != 0);
        let bs = BsParams::<BigInt>::from_ints(m, n).unwrap();
        // t^-1 a^{mj} t = a^{nj}, so both pinches below equal a power of a.
        let (pinch, value) = if flip {
            (BsWord::t_pow(1).concat(&BsWord::a_pow(BigInt::from(n * j))).concat(&BsWord::t_pow(-1)), BigInt::from(m * j))
        } else {
            (BsWord::t_pow(-1).concat(&BsWord::a_pow(BigInt::from(m * j))).concat(&BsWord::t_pow(1)), BigInt::from(n * j))
        };
        let with_pinch = u.concat(&pinch).concat(&v);
        let plain = u.concat(&BsWord::a_pow(value)).concat(&v);
        prop_assert!(equal(&with_pinch, &plain, &bs));
    }

    #[test]
    fn text_round_trip(w in bs_word(20)) {
        // Parsing reduces freely, so the round trip is exact from the second pass on.
        let bs = BsParams::<BigInt>::from_ints(2, 3).unwrap();
        let once = BsWord::<BigInt>::parse(&w.to_string()).unwrap();
        prop_assert!(equal(&once, &w, &bs));
        prop_assert_eq!(BsWord::<BigInt>::parse(&once.to_string()).unwrap(), once);
    }
}
