//! Reduction in the free product `H_1 * H_2 * ...` and the bonding maps.

use crate::error::WordError;
use crate::family::GroupFamily;
use crate::word::{Letter, ReducedWord, Word};

/// One pass of the cell operator `K`.
///
/// Splits `w` into maximal runs of consecutive same-type letters, deletes the
/// runs whose product is the identity, and replaces each remaining run by its
/// product. A single identity letter is a run of length one and is deleted.
pub fn k_step(family: &dyn GroupFamily, w: &Word) -> Word {
    let mut out = Vec::with_capacity(w.len());
    let mut letters = w.iter().peekable();
    while let Some(first) = letters.next() {
        let ty = first.type_index();
        let mut product = first.value();
        while let Some(next) = letters.next_if(|l| l.type_index() == ty) {
            product = family.multiply(ty, product, next.value());
        }
        if !family.is_identity(ty, product) {
            out.push(Letter::new(ty, product));
        }
    }
    Word::new(out)
}

/// Full reduction to the free-product normal form.
///
/// Single pass over a stack: each letter merges into the top when the types
/// match, and merged identities are popped. Agrees with iterating
/// [`k_step`] to its fixpoint.
pub fn reduce(family: &dyn GroupFamily, w: &Word) -> ReducedWord {
    let mut stack: Vec<Letter> = Vec::with_capacity(w.len());
    for &letter in w.iter() {
        if letter.is_identity(family) {
            continue;
        }
        let ty = letter.type_index();
        match stack.last_mut() {
            Some(top) if top.type_index() == ty => {
                let merged = family.multiply(ty, top.value(), letter.value());
                if family.is_identity(ty, merged) {
                    stack.pop();
                } else {
                    *top = Letter::new(ty, merged);
                }
            }
            _ => stack.push(letter),
        }
    }
    ReducedWord::new_unchecked(Word::new(stack))
}

/// `u * v = RD(u v)`.
pub fn multiply(family: &dyn GroupFamily, u: &ReducedWord, v: &ReducedWord) -> ReducedWord {
    reduce(family, &u.concat(v))
}

/// Reverses the word and inverts every letter in its own group.
pub fn invert(family: &dyn GroupFamily, w: &ReducedWord) -> ReducedWord {
    ReducedWord::new_unchecked(w.iter().rev().map(|l| l.inverse(family)).collect())
}

/// Deletion map `κ_m`: keep letters of type `≤ m`, in order, unreduced.
pub fn kappa(m: u32, w: &Word) -> Word {
    w.kappa(m)
}

/// Bonding epimorphism `ψ_n : G_{n+1} → G_n`, delete-then-reduce.
pub fn psi(family: &dyn GroupFamily, n: u32, w: &ReducedWord) -> Result<ReducedWord, WordError> {
    let found = w.max_type();
    if found > n + 1 {
        return Err(WordError::PsiDomain { n, found });
    }
    Ok(reduce(family, &w.kappa(n)))
}
