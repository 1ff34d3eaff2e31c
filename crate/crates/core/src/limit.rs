//! Elements of the inverse limit `lim← G_n`, where `G_n = H_1 * ... * H_n`
//! and the bonding maps are `ψ_n`.
//!
//! An element is a coherent sequence of reduced words. Only sequences with a
//! finite description can be represented: ι-images of finite words, streams
//! driven by a coordinate generator, and pointwise products and inverses of
//! those.
//!
//! The subgroup `G` consists of the sequences whose deletion images
//! `κ_m(w_1), κ_m(w_2), ...` are eventually constant for every `m`; `σ`
//! assigns to an element of `G` the level from which its `κ_1` images stop
//! changing. Stability is always judged on unreduced deletion images as
//! literal letter sequences.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::LimitError;
use crate::family::{same_family, Family};
use crate::parse::format_word;
use crate::reduce::{invert, multiply, psi, reduce};
use crate::word::{Letter, ReducedWord, Word};

/// Working depth used when a caller does not pick one.
pub const DEFAULT_DEPTH: usize = 32;

type Generator = dyn Fn(usize) -> ReducedWord + Send + Sync;

#[derive(Clone)]
enum Repr {
    Finite(ReducedWord),
    Stream {
        label: Arc<str>,
        generator: Arc<Generator>,
    },
    Product(Arc<LimitElement>, Arc<LimitElement>),
    Inverse(Arc<LimitElement>),
}

/// A coherent sequence `(w_1, w_2, ...)` with `w_n ∈ G_n`.
#[derive(Clone)]
pub struct LimitElement {
    family: Family,
    repr: Repr,
}

impl fmt::Debug for LimitElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LimitElement")
            .field("family", &self.family.name())
            .field("description", &self.description())
            .finish()
    }
}

impl LimitElement {
    /// A stream element. `generator(n)` must be a pure function returning an
    /// element of `G_n`; coherence is the caller's obligation and can be
    /// audited with [`check_coherence`].
    pub fn from_stream<F>(family: Family, label: impl Into<String>, generator: F) -> Self
    where
        F: Fn(usize) -> ReducedWord + Send + Sync + 'static,
    {
        LimitElement {
            family,
            repr: Repr::Stream {
                label: label.into().into(),
                generator: Arc::new(generator),
            },
        }
    }

    pub fn identity(family: Family) -> Self {
        LimitElement {
            family,
            repr: Repr::Finite(ReducedWord::empty()),
        }
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// `iota(<word>)`, `telescope`, `product(<d1>, <d2>)` or `inverse(<d>)`.
    pub fn description(&self) -> String {
        match &self.repr {
            Repr::Finite(w) => format!("iota({})", format_word(&*self.family, w)),
            Repr::Stream { label, .. } => label.to_string(),
            Repr::Product(u, v) => format!("product({}, {})", u.description(), v.description()),
            Repr::Inverse(u) => format!("inverse({})", u.description()),
        }
    }

    /// The reduced word this element is the ι-image of, if it has one on
    /// record.
    pub fn finite_word(&self) -> Option<&ReducedWord> {
        match &self.repr {
            Repr::Finite(w) => Some(w),
            _ => None,
        }
    }

    /// Level from which every coordinate is the same word, when known.
    /// For `iota(w)` this is `max(1, max type of w)`.
    pub fn stabilization_bound(&self) -> Option<usize> {
        self.finite_word().map(|w| (w.max_type() as usize).max(1))
    }

    /// The `n`-th coordinate `w_n ∈ G_n`.
    pub fn coordinate(&self, n: usize) -> Result<ReducedWord, LimitError> {
        if n == 0 {
            return Err(LimitError::ZeroCoordinate);
        }
        let level = u32::try_from(n).unwrap_or(u32::MAX);
        match &self.repr {
            Repr::Finite(w) => {
                if w.max_type() <= level {
                    Ok(w.clone())
                } else {
                    Ok(reduce(&*self.family, &w.kappa(level)))
                }
            }
            Repr::Stream { generator, .. } => {
                let word = generator(n);
                let found = word.max_type();
                if found > level {
                    return Err(LimitError::CoordinateOutOfLevel {
                        description: self.description(),
                        n,
                        found,
                    });
                }
                Ok(word)
            }
            Repr::Product(u, v) => Ok(multiply(
                &*self.family,
                &u.coordinate(n)?,
                &v.coordinate(n)?,
            )),
            Repr::Inverse(u) => Ok(invert(&*self.family, &u.coordinate(n)?)),
        }
    }

    /// `κ_m(w_1), ..., κ_m(w_depth)`.
    pub fn kappa_images(&self, m: u32, depth: usize) -> Result<Vec<Word>, LimitError> {
        (1..=depth)
            .map(|n| self.coordinate(n).map(|w| w.kappa(m)))
            .collect()
    }
}

/// The canonical embedding of finite words: `coordinate(n) = RD(κ_n(w))`.
pub fn iota(family: Family, w: &Word) -> LimitElement {
    let reduced = reduce(&*family, w);
    LimitElement {
        family,
        repr: Repr::Finite(reduced),
    }
}

fn check_same_family(u: &LimitElement, v: &LimitElement) -> Result<(), LimitError> {
    if same_family(&*u.family, &*v.family) {
        Ok(())
    } else {
        Err(LimitError::MixedFamilies {
            left: u.family.name(),
            right: v.family.name(),
        })
    }
}

/// Pointwise product. Products of ι-images stay ι-images.
pub fn lim_multiply(u: &LimitElement, v: &LimitElement) -> Result<LimitElement, LimitError> {
    check_same_family(u, v)?;
    let repr = match (&u.repr, &v.repr) {
        (Repr::Finite(a), Repr::Finite(b)) => Repr::Finite(multiply(&*u.family, a, b)),
        _ => Repr::Product(Arc::new(u.clone()), Arc::new(v.clone())),
    };
    Ok(LimitElement {
        family: u.family.clone(),
        repr,
    })
}

/// Pointwise inverse.
pub fn lim_invert(u: &LimitElement) -> LimitElement {
    let repr = match &u.repr {
        Repr::Finite(a) => Repr::Finite(invert(&*u.family, a)),
        Repr::Inverse(inner) => return (**inner).clone(),
        _ => Repr::Inverse(Arc::new(u.clone())),
    };
    LimitElement {
        family: u.family.clone(),
        repr,
    }
}

/// The sequence of commutator products `[x_1, x_2][x_1, x_3]...[x_1, x_n]`
/// with `x_i = h_i`. Coherent, but its `κ_1` images grow by two letters per
/// level, so it lies in `lim← G_n` and not in `G`.
pub fn telescope_element(family: Family) -> LimitElement {
    let gen_family = family.clone();
    LimitElement::from_stream(family, "telescope", move |n| {
        let f = &*gen_family;
        let h1 = Letter::new(1, f.distinguished(1));
        let mut letters = Vec::with_capacity(4 * n.saturating_sub(1));
        for j in 2..=n as u32 {
            let hj = Letter::new(j, f.distinguished(j));
            letters.extend([h1, hj, h1.inverse(f), hj.inverse(f)]);
        }
        reduce(f, &Word::new(letters))
    })
}

/// Verifies `ψ_n(w_{n+1}) = w_n` for every `n < depth`.
pub fn check_coherence(e: &LimitElement, depth: usize) -> Result<(), LimitError> {
    let family = &*e.family;
    let mut upper = e.coordinate(depth.max(1))?;
    for n in (1..depth).rev() {
        let lower = e.coordinate(n)?;
        let projected = psi(family, n as u32, &upper).map_err(|_| LimitError::Incoherent { n })?;
        if projected != lower {
            return Err(LimitError::Incoherent { n });
        }
        upper = lower;
    }
    Ok(())
}

/// Coordinatewise equality of two elements up to `depth`.
pub fn agree_to(u: &LimitElement, v: &LimitElement, depth: usize) -> Result<bool, LimitError> {
    check_same_family(u, v)?;
    for n in 1..=depth {
        if u.coordinate(n)? != v.coordinate(n)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "from")]
pub enum Stability {
    /// Minimal `N` with a literally constant tail from `N` to the scan depth,
    /// and `N` is strictly below the depth.
    StableFrom(usize),
    NotStableByDepth,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilizationReport {
    pub m: u32,
    pub depth: usize,
    pub verdict: Stability,
    /// `κ_m(w_depth)`.
    pub final_image: Word,
    /// The verdict is a proof rather than an observation: the element is an
    /// ι-image and `depth` reaches its stabilization bound.
    pub certified: bool,
}

/// Smallest `N` such that `images[N-1..]` are all equal (1-based).
fn constant_tail_start(images: &[Word]) -> usize {
    let mut start = images.len();
    while start > 1 && images[start - 2] == images[start - 1] {
        start -= 1;
    }
    start
}

/// Scans `κ_m(w_1), ..., κ_m(w_depth)` for a constant tail.
pub fn stabilization_check(
    e: &LimitElement,
    m: u32,
    depth: usize,
) -> Result<StabilizationReport, LimitError> {
    let depth = depth.max(2);
    let images = e.kappa_images(m, depth)?;
    let start = constant_tail_start(&images);
    let verdict = if start < depth {
        Stability::StableFrom(start)
    } else {
        Stability::NotStableByDepth
    };
    let certified = e
        .stabilization_bound()
        .is_some_and(|bound| depth >= bound.max(m as usize));
    Ok(StabilizationReport {
        m,
        depth,
        verdict,
        final_image: images.last().cloned().unwrap_or_default(),
        certified,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    Exact,
    BoundedByDepth(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SigmaValue {
    #[serde(rename = "N")]
    pub n: usize,
    pub exactness: Exactness,
}

impl SigmaValue {
    pub fn is_exact(&self) -> bool {
        self.exactness == Exactness::Exact
    }
}

/// `σ(e)`: the minimal `N` from which `κ_1(w_N), κ_1(w_{N+1}), ...` is
/// constant.
///
/// Exact for ι-images, whose coordinates are constant past their
/// stabilization bound; `depth` is then ignored. Other elements are scanned to
/// `depth` and the answer is labelled as depth-bounded.
pub fn sigma(e: &LimitElement, depth: usize) -> Result<SigmaValue, LimitError> {
    if let Some(bound) = e.stabilization_bound() {
        let images = e.kappa_images(1, bound)?;
        return Ok(SigmaValue {
            n: constant_tail_start(&images),
            exactness: Exactness::Exact,
        });
    }
    match stabilization_check(e, 1, depth)?.verdict {
        Stability::StableFrom(n) => Ok(SigmaValue {
            n,
            exactness: Exactness::BoundedByDepth(depth.max(2)),
        }),
        Stability::NotStableByDepth => Err(LimitError::SigmaUndefined {
            description: e.description(),
            depth,
        }),
    }
}

/// Checks the finite-coordinate condition that pins `σ = N`:
/// `κ_1(w_i) = κ_1(w_{i+1})` for `N ≤ i < depth`, and
/// `κ_1(w_{N-1}) ≠ κ_1(w_N)` unless `N = 1`.
///
/// `depth` is raised to `N + 1` if smaller.
pub fn sigma_certificate(e: &LimitElement, n: usize, depth: usize) -> Result<bool, LimitError> {
    if n == 0 {
        return Ok(false);
    }
    let depth = depth.max(n + 1);
    let images = e.kappa_images(1, depth)?;
    // images[i - 1] is level i
    let tail_constant = (n..depth).all(|i| images[i - 1] == images[i]);
    let jumps_at_n = n == 1 || images[n - 2] != images[n - 1];
    Ok(tail_constant && jumps_at_n)
}
