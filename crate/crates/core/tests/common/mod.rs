#![allow(dead_code)]

use earring_core::{k_step, GroupFamily, Letter, Word};
use proptest::prelude::*;
use rand::Rng;

/// Reference reduction: iterate the cell operator until the length stops
/// shrinking. Independent of the stack-based `reduce`.
pub fn k_fixpoint(family: &dyn GroupFamily, word: &Word) -> Word {
    let mut current = word.clone();
    loop {
        let next = k_step(family, &current);
        if next.len() == current.len() {
            return current;
        }
        current = next;
    }
}

/// Reference bonding map: literal deletion followed by the iterated-K oracle.
pub fn delete_then_fixpoint(family: &dyn GroupFamily, n: u32, word: &Word) -> Word {
    let kept: Word = word
        .iter()
        .copied()
        .filter(|l| l.type_index() <= n)
        .collect();
    k_fixpoint(family, &kept)
}

pub fn random_word(rng: &mut impl Rng, max_len: usize, max_type: u32, max_abs: i64) -> Word {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| {
            Letter::new(
                rng.gen_range(1..=max_type),
                rng.gen_range(-max_abs..=max_abs),
            )
        })
        .collect()
}

pub fn word_strategy(max_len: usize, max_type: u32, max_abs: i64) -> impl Strategy<Value = Word> {
    proptest::collection::vec((1..=max_type, -max_abs..=max_abs), 0..=max_len)
        .prop_map(|v| v.into_iter().map(|(t, x)| Letter::new(t, x)).collect())
}
