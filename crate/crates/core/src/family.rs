//! Indexed families of groups `i ↦ H_i`.
//!
//! Every letter of a word lives in exactly one group of the family, selected
//! by its type index. The family is conceptually infinite (`i ≥ 1`); a
//! [`GroupFamily`] only has to answer questions about one index at a time.

use std::fmt;
use std::sync::Arc;

use crate::error::FamilyError;

/// A group element. Both built-in families are integer-valued; other
/// families encode their elements as integers (e.g. indices into a table).
pub type Value = i64;

/// An indexed family of groups sharing one value encoding.
///
/// Implementations must satisfy the group axioms at every type index and must
/// return a non-identity element from [`GroupFamily::distinguished`].
pub trait GroupFamily: fmt::Debug + Send + Sync {
    /// Stable identifier, used to reject mixing elements of different
    /// families and printed in reports (`"z"`, `"zmod:5"`).
    fn name(&self) -> String;

    fn identity(&self, type_index: u32) -> Value;

    fn multiply(&self, type_index: u32, a: Value, b: Value) -> Value;

    fn invert(&self, type_index: u32, a: Value) -> Value;

    /// Maps an arbitrary integer literal onto the canonical encoding of an
    /// element of `H_type_index`, or `None` if it denotes nothing.
    fn canonicalize(&self, type_index: u32, raw: Value) -> Option<Value>;

    /// The fixed non-identity element `h_i`.
    fn distinguished(&self, type_index: u32) -> Value;

    /// Renders the exponent that follows `a<i>^` in a word expression.
    fn render(&self, _type_index: u32, a: Value) -> String {
        a.to_string()
    }

    fn is_identity(&self, type_index: u32, a: Value) -> bool {
        a == self.identity(type_index)
    }
}

/// Shared handle to a family; elements of the inverse limit keep one.
pub type Family = Arc<dyn GroupFamily>;

/// Every `H_i` is the integers under addition, `h_i = 1`.
///
/// This is the Hawaiian earring case: each circle contributes a copy of ℤ.
/// Arithmetic wraps at the `i64` boundary, which keeps the group axioms exact.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Integers;

impl GroupFamily for Integers {
    fn name(&self) -> String {
        "z".to_string()
    }

    fn identity(&self, _: u32) -> Value {
        0
    }

    fn multiply(&self, _: u32, a: Value, b: Value) -> Value {
        a.wrapping_add(b)
    }

    fn invert(&self, _: u32, a: Value) -> Value {
        a.wrapping_neg()
    }

    fn canonicalize(&self, _: u32, raw: Value) -> Option<Value> {
        Some(raw)
    }

    fn distinguished(&self, _: u32) -> Value {
        1
    }
}

/// Every `H_i` is ℤ/mℤ with canonical representatives `0..m`, `h_i = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclicGroups {
    modulus: i64,
}

impl CyclicGroups {
    pub fn new(modulus: i64) -> Result<Self, FamilyError> {
        if modulus < 2 {
            return Err(FamilyError::TrivialModulus(modulus));
        }
        Ok(CyclicGroups { modulus })
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }
}

impl GroupFamily for CyclicGroups {
    fn name(&self) -> String {
        format!("zmod:{}", self.modulus)
    }

    fn identity(&self, _: u32) -> Value {
        0
    }

    fn multiply(&self, _: u32, a: Value, b: Value) -> Value {
        ((a as i128 + b as i128).rem_euclid(self.modulus as i128)) as Value
    }

    fn invert(&self, _: u32, a: Value) -> Value {
        (-(a as i128)).rem_euclid(self.modulus as i128) as Value
    }

    fn canonicalize(&self, _: u32, raw: Value) -> Option<Value> {
        Some(raw.rem_euclid(self.modulus))
    }

    fn distinguished(&self, _: u32) -> Value {
        1
    }
}

/// Parses a family selector: `z` or `zmod:<m>` with `m ≥ 2`.
pub fn family_from_name(name: &str) -> Result<Family, FamilyError> {
    let name = name.trim();
    if name == "z" {
        return Ok(Arc::new(Integers));
    }
    if let Some(m) = name.strip_prefix("zmod:") {
        let modulus: i64 = m
            .parse()
            .map_err(|_| FamilyError::UnknownFamily(name.to_string()))?;
        return Ok(Arc::new(CyclicGroups::new(modulus)?));
    }
    Err(FamilyError::UnknownFamily(name.to_string()))
}

/// The default family (integers).
pub fn integers() -> Family {
    Arc::new(Integers)
}

pub fn same_family(a: &dyn GroupFamily, b: &dyn GroupFamily) -> bool {
    a.name() == b.name()
}
