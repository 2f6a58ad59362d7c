use proptest::prelude::*;

use nielsenkit::json::rose_of;
use nielsenkit::nielsen::{lefschetz_number, lefschetz_of_endo};
use nielsenkit::{Basis, Endomorphism, FoldedGraph, Letter, Word};

fn word(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..rank, any::<bool>()), 0..=max_len)
        .prop_map(|ls| Word::reduce(ls.into_iter().map(|(g, inv)| Letter::new(g, inv))))
}

fn endo() -> impl Strategy<Value = Endomorphism> {
    (word(2, 5), word(2, 5)).prop_map(|(x, y)| Endomorphism::new(Basis::alphabetic(2), vec![x, y]).unwrap())
}

proptest! {
    #[test]
    fn inverse_cancels(w in word(3, 12)) {
        prop_assert!(w.mul(&w.inverse()).is_identity());
        prop_assert_eq!(w.inverse().inverse(), w);
    }

    #[test]
    fn endomorphisms_are_homomorphisms(phi in endo(), u in word(2, 8), v in word(2, 8)) {
        prop_assert_eq!(phi.apply(&u.mul(&v)), phi.apply(&u).mul(&phi.apply(&v)));
        prop_assert_eq!(phi.apply(&u.inverse()), phi.apply(&u).inverse());
    }

    #[test]
    fn abelianization_counts_exponents(phi in endo(), u in word(2, 8)) {
        let m = phi.abelianization();
        let e = u.exponent_sums(2);
        let image = phi.apply(&u).exponent_sums(2);
        for i in 0..2 {
            prop_assert_eq!(image[i], (0..2).map(|j| m.0[i][j] * e[j]).sum::<i64>());
        }
    }

    #[test]
    fn folded_subgroup_contains_products(u in word(2, 5), v in word(2, 5)) {
        let h = FoldedGraph::from_words([&u, &v]);
        prop_assert!(h.contains(&u.mul(&v.inverse()).mul(&u)));
        prop_assert!(h.rank() <= 2);
    }

    #[test]
    fn rose_lefschetz_is_one_minus_trace(phi in endo()) {
        prop_assume!(phi.images().iter().all(|w| !w.is_identity()));
        prop_assert_eq!(lefschetz_number(&rose_of(&phi)).unwrap(), lefschetz_of_endo(&phi));
        prop_assert_eq!(lefschetz_of_endo(&phi), 1 - phi.trace());
    }
}
