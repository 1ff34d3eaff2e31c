//! Exhaustive word enumeration for audits and exhaustive checks.

use crate::family::{GroupFamily, Value};
use crate::word::{Letter, ReducedWord, Word};

/// Every word of length `0..=max_len` over `alphabet`, shortest first.
pub fn words_over(alphabet: &[Letter], max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Vec::<Letter>::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for prefix in &layer {
            for &letter in alphabet {
                let mut w = prefix.clone();
                w.push(letter);
                next.push(w);
            }
        }
        out.extend(next.iter().cloned().map(Word::new));
        layer = next;
    }
    out
}

/// Non-identity letters with types `1..=max_type` and the given raw values,
/// canonicalized and deduplicated.
pub fn letter_alphabet(family: &dyn GroupFamily, max_type: u32, values: &[Value]) -> Vec<Letter> {
    let mut out = Vec::new();
    for ty in 1..=max_type {
        for &raw in values {
            let Some(v) = family.canonicalize(ty, raw) else {
                continue;
            };
            let letter = Letter::new(ty, v);
            if !letter.is_identity(family) && !out.contains(&letter) {
                out.push(letter);
            }
        }
    }
    out
}

/// Every reduced word of length `≤ max_len` over [`letter_alphabet`],
/// shortest first.
pub fn reduced_words(
    family: &dyn GroupFamily,
    max_len: usize,
    max_type: u32,
    values: &[Value],
) -> Vec<ReducedWord> {
    let alphabet = letter_alphabet(family, max_type, values);
    let mut out = vec![ReducedWord::empty()];
    let mut layer = vec![Vec::<Letter>::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for prefix in &layer {
            for &letter in &alphabet {
                if prefix
                    .last()
                    .is_some_and(|l| l.type_index() == letter.type_index())
                {
                    continue;
                }
                let mut w = prefix.clone();
                w.push(letter);
                next.push(w);
            }
        }
        out.extend(
            next.iter()
                .cloned()
                .map(|w| ReducedWord::new_unchecked(Word::new(w))),
        );
        layer = next;
    }
    out
}

/// `±1, ±2, ..., ±k`.
pub fn symmetric_values(k: Value) -> Vec<Value> {
    (1..=k).flat_map(|v| [v, -v]).collect()
}
