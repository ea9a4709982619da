//! Randomized property checks complementing the exhaustive small-case
//! sweeps in the unit and acceptance tests.

use proptest::prelude::*;

use tortoise::factors::{factors, parikh};
use tortoise::sequences::{paperfolding_at, thue_morse_at, Dfao, InfiniteWord};
use tortoise::word::{
    hare, hare_recursive, iterate_tortoise, sort, tortoise, tortoise_recursive,
    tortoise_sort_index, Word,
};

fn arb_word(max_symbol: u8, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..=max_symbol, 0..=max_len).prop_map(Word::new)
}

proptest! {
    #[test]
    fn stack_passes_match_block_recursions(word in arb_word(7, 60)) {
        prop_assert_eq!(hare(&word), hare_recursive(&word));
        prop_assert_eq!(tortoise(&word), tortoise_recursive(&word));
    }

    #[test]
    fn operators_preserve_parikh(word in arb_word(9, 80)) {
        let reference = parikh(&word);
        prop_assert_eq!(parikh(&hare(&word)), reference.clone());
        prop_assert_eq!(parikh(&tortoise(&word)), reference);
    }

    #[test]
    fn iterating_to_the_index_sorts(word in arb_word(4, 24)) {
        let idx = tortoise_sort_index(&word).unwrap();
        prop_assert_eq!(iterate_tortoise(&word, idx), sort(&word));
        if idx > 0 {
            prop_assert_ne!(iterate_tortoise(&word, idx - 1), sort(&word));
        }
    }

    #[test]
    fn display_round_trips(word in arb_word(200, 30)) {
        let rendered = word.to_string();
        prop_assert_eq!(rendered.parse::<Word>().unwrap(), word);
    }

    #[test]
    fn factor_sets_grow_with_prefix(n in 1usize..8, extra in 0usize..512) {
        let t = InfiniteWord::thue_morse();
        let small = factors(&t, n, 64).unwrap();
        let large = factors(&t, n, 64 + extra).unwrap();
        for word in small.words() {
            prop_assert!(large.contains(word));
            prop_assert_eq!(large.first_position(word), small.first_position(word));
        }
    }

    #[test]
    fn dfaos_agree_with_closed_forms_at_large_indices(n in 1u64..(1 << 40)) {
        prop_assert_eq!(Dfao::thue_morse().eval(n), thue_morse_at(n));
        prop_assert_eq!(Dfao::paperfolding().eval(n), paperfolding_at(n).unwrap());
    }
}
