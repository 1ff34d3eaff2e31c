//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any criterion fails or exceeds its time budget.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use earring_core::enumerate::{letter_alphabet, reduced_words, words_over};
use earring_core::{
    check_coherence, integers, invert, iota, k_step, lim_multiply, multiply, perturbation, psi,
    reduce, sigma, sigma_certificate, stabilization_check, telescope_element, witness_dichotomy,
    Branch, GroupFamily, Integers, Letter, LimitElement, ReducedWord, Side, Stability, Word,
    DEFAULT_DEPTH,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;
type Criterion = (&'static str, u64, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

// ---- independent oracles -------------------------------------------------

/// Iterate the cell operator to its fixpoint.
fn k_fixpoint(family: &dyn GroupFamily, word: &Word) -> Word {
    let mut current = word.clone();
    loop {
        let next = k_step(family, &current);
        if next.len() == current.len() {
            return current;
        }
        current = next;
    }
}

/// Reduced-word characterization, checked letter by letter.
fn looks_reduced(word: &Word) -> bool {
    word.iter().all(|l| l.value() != 0)
        && word
            .windows(2)
            .all(|p| p[0].type_index() != p[1].type_index())
}

fn delete_above(n: u32, word: &Word) -> Word {
    word.iter()
        .copied()
        .filter(|l| l.type_index() <= n)
        .collect()
}

/// σ read off a long κ_1 scan, ignoring any stabilization bound.
fn sigma_by_scan(e: &LimitElement, depth: usize) -> usize {
    let images: Vec<Word> = (1..=depth)
        .map(|n| e.coordinate(n).unwrap().kappa(1))
        .collect();
    let mut n = depth;
    while n > 1 && images[n - 2] == images[depth - 1] {
        n -= 1;
    }
    n
}

fn random_word(rng: &mut impl Rng, max_len: usize, max_type: u32, max_abs: i64) -> Word {
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

/// All reduced words with types ≤ 3, values ±1, length ≤ 4.
fn witness_corpus() -> Vec<ReducedWord> {
    reduced_words(&Integers, 4, 3, &[1, -1])
}

fn commutator(a: u32, b: u32) -> Word {
    Word::new(vec![
        Letter::new(a, 1),
        Letter::new(b, 1),
        Letter::new(a, -1),
        Letter::new(b, -1),
    ])
}

// ---- criteria ------------------------------------------------------------

fn reduction_oracle_equivalence() -> Check {
    let f = Integers;
    let exhaustive = words_over(&letter_alphabet(&f, 2, &[1, -1]), 5);
    ensure!(
        exhaustive.len() == 1365,
        "expected 1365 words, got {}",
        exhaustive.len()
    );
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let random: Vec<Word> = (0..1000).map(|_| random_word(&mut rng, 12, 4, 2)).collect();
    for w in exhaustive.iter().chain(&random) {
        let r = reduce(&f, w);
        ensure!(
            r.as_word() == &k_fixpoint(&f, w),
            "reduce({w}) = {r} disagrees with K fixpoint"
        );
        ensure!(reduce(&f, &r) == r, "reduce not idempotent on {w}");
        ensure!(looks_reduced(&r), "reduce({w}) = {r} is not reduced");
    }
    Ok(())
}

fn free_product_group_axioms() -> Check {
    let f = Integers;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let e = ReducedWord::empty();
    for _ in 0..1000 {
        let raw: Vec<Word> = (0..3).map(|_| random_word(&mut rng, 10, 4, 2)).collect();
        let [a, b, c] = [0, 1, 2].map(|i| reduce(&f, &raw[i]));
        ensure!(
            multiply(&f, &multiply(&f, &a, &b), &c) == multiply(&f, &a, &multiply(&f, &b, &c)),
            "associativity fails on ({a}, {b}, {c})"
        );
        ensure!(
            multiply(&f, &a, &e) == a && multiply(&f, &e, &a) == a,
            "identity fails on {a}"
        );
        let inv = invert(&f, &a);
        ensure!(
            multiply(&f, &a, &inv).is_empty() && multiply(&f, &inv, &a).is_empty(),
            "inverse fails on {a}"
        );
        ensure!(
            reduce(&f, &raw[0].concat(&raw[1])) == multiply(&f, &a, &b),
            "congruence fails on ({}, {})",
            raw[0],
            raw[1]
        );
    }
    Ok(())
}

fn bonding_coherence() -> Check {
    let f = Integers;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let words: Vec<Word> = (0..500).map(|_| random_word(&mut rng, 12, 7, 2)).collect();
    for pair in words.windows(2) {
        for n in 1..=6u32 {
            let lifted = reduce(&f, &delete_above(n + 1, &pair[0]));
            let projected = psi(&f, n, &lifted).map_err(|e| e.to_string())?;
            ensure!(
                projected.as_word() == &k_fixpoint(&f, &delete_above(n, &pair[0])),
                "exchange fails at n = {n} on {}",
                pair[0]
            );
            let other = reduce(&f, &delete_above(n + 1, &pair[1]));
            let lhs = psi(&f, n, &multiply(&f, &lifted, &other)).map_err(|e| e.to_string())?;
            let rhs = multiply(
                &f,
                &projected,
                &psi(&f, n, &other).map_err(|e| e.to_string())?,
            );
            ensure!(
                lhs == rhs,
                "psi_{n} not a homomorphism on ({}, {})",
                pair[0],
                pair[1]
            );
        }
    }
    for w in witness_corpus() {
        check_coherence(&iota(integers(), &w), 32).map_err(|e| format!("iota({w}): {e}"))?;
    }
    Ok(())
}

fn non_surjectivity_telescope() -> Check {
    let t = telescope_element(integers());
    for n in 1..=64 {
        let len = t.coordinate(n).map_err(|e| e.to_string())?.kappa(1).len();
        ensure!(
            len == 2 * (n - 1),
            "|kappa_1(coordinate {n})| = {len}, want {}",
            2 * (n - 1)
        );
    }
    for depth in [8, 16, 32, 64] {
        let r = stabilization_check(&t, 1, depth).map_err(|e| e.to_string())?;
        ensure!(
            r.verdict == Stability::NotStableByDepth,
            "telescope reported {:?} at depth {depth}",
            r.verdict
        );
    }
    check_coherence(&t, 64).map_err(|e| e.to_string())
}

fn dichotomy_totality() -> Check {
    let h1_pair = Word::new(vec![Letter::new(1, 1), Letter::new(1, -1)]);
    for v in witness_corpus() {
        let f = iota(integers(), &v);
        let k = sigma(&f, DEFAULT_DEPTH).map_err(|e| e.to_string())?.n;
        for n in k + 1..=k + 8 {
            let r = witness_dichotomy(&f, n).map_err(|e| format!("iota({v}), n = {n}: {e}"))?;
            let fnn = f.coordinate(n).unwrap();
            let expected = match fnn.first() {
                Some(x1) if x1.type_index() as usize == n => Branch::RightEscapes,
                _ => Branch::LeftEscapes,
            };
            ensure!(
                r.branch == expected,
                "iota({v}), n = {n}: branch {:?}",
                r.branch
            );

            let base = fnn.kappa(1);
            let left = lim_multiply(&perturbation(integers(), n, Side::Left).unwrap(), &f).unwrap();
            let right =
                lim_multiply(&perturbation(integers(), n, Side::Right).unwrap(), &f).unwrap();
            let escaping = match expected {
                Branch::LeftEscapes => &left,
                Branch::RightEscapes => &right,
            };
            let escaped = escaping.coordinate(n).unwrap().kappa(1);
            ensure!(
                escaped == h1_pair.concat(&base),
                "iota({v}), n = {n}: escaping image {escaped} is not h1 h1^-1 {base}"
            );
            let prev = f.coordinate(n - 1).unwrap().kappa(1);
            ensure!(
                base == prev
                    && left.coordinate(n - 1).unwrap().kappa(1) == prev
                    && right.coordinate(n - 1).unwrap().kappa(1) == prev,
                "iota({v}), n = {n}: equation chain broken"
            );
        }
    }
    Ok(())
}

fn sigma_characterization() -> Check {
    let corpus = witness_corpus();
    let mut strata = std::collections::BTreeMap::<usize, usize>::new();
    for v in &corpus {
        let e = iota(integers(), v);
        let s = sigma(&e, DEFAULT_DEPTH).map_err(|e| e.to_string())?;
        ensure!(s.is_exact(), "sigma(iota({v})) not exact");
        ensure!(
            s.n == sigma_by_scan(&e, DEFAULT_DEPTH),
            "sigma(iota({v})) = {} disagrees with scan",
            s.n
        );
        let passing: Vec<usize> = (1..=8)
            .filter(|&n| sigma_certificate(&e, n, DEFAULT_DEPTH).unwrap())
            .collect();
        ensure!(
            passing == [s.n],
            "iota({v}): certificates pass at {passing:?}, sigma = {}",
            s.n
        );
        *strata.entry(s.n).or_default() += 1;

        // e_k = [a_k, a_{k+1}] e agrees with e below k and converges to it
        let members: Vec<usize> = (s.n + 2..s.n + 10)
            .map(|k| {
                let ek = lim_multiply(&iota(integers(), &commutator(k as u32, k as u32 + 1)), &e)
                    .unwrap();
                sigma(&ek, DEFAULT_DEPTH).unwrap().n
            })
            .collect();
        ensure!(
            members.iter().all(|&m| m == members[0]),
            "iota({v}): family sigmas {members:?} not constant"
        );
        ensure!(
            members[0] == s.n,
            "iota({v}): family stratum {} but limit {}",
            members[0],
            s.n
        );
    }
    ensure!(
        strata.values().sum::<usize>() == corpus.len(),
        "strata {strata:?} do not partition {} elements",
        corpus.len()
    );
    ensure!(
        strata.keys().all(|n| (1..=3).contains(n)),
        "unexpected strata {strata:?}"
    );
    Ok(())
}

fn earring(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_earring"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

fn cli_contract() -> Check {
    let cases: [(&[&str], &str); 3] = [
        (
            &["--format", "json", "reduce", "a1 a2 a2^-1 a1"],
            r#"{"command":"reduce","family":"z","inputs":{"word":"a1 a2 a2^-1 a1"},"result":{"word":"a1^2"}}"#,
        ),
        (
            &["--format", "json", "sigma", "a1 a2 a1^-1 a2^-1"],
            r#"{"command":"sigma","family":"z","inputs":{"depth":32,"element":"a1 a2 a1^-1 a2^-1"},"result":{"N":2,"exactness":"exact"}}"#,
        ),
        (
            &[
                "--format",
                "json",
                "telescope",
                "--depth",
                "8",
                "--check-membership",
            ],
            concat!(
                r#"{"command":"telescope","family":"z","inputs":{"check_membership":true,"depth":8},"result":{"coordinates":["e","a1 a2 a1^-1 a2^-1","#,
                r#""a1 a2 a1^-1 a2^-1 a1 a3 a1^-1 a3^-1","a1 a2 a1^-1 a2^-1 a1 a3 a1^-1 a3^-1 a1 a4 a1^-1 a4^-1","#,
                r#""a1 a2 a1^-1 a2^-1 a1 a3 a1^-1 a3^-1 a1 a4 a1^-1 a4^-1 a1 a5 a1^-1 a5^-1","#,
                r#""a1 a2 a1^-1 a2^-1 a1 a3 a1^-1 a3^-1 a1 a4 a1^-1 a4^-1 a1 a5 a1^-1 a5^-1 a1 a6 a1^-1 a6^-1","#,
                r#""a1 a2 a1^-1 a2^-1 a1 a3 a1^-1 a3^-1 a1 a4 a1^-1 a4^-1 a1 a5 a1^-1 a5^-1 a1 a6 a1^-1 a6^-1 a1 a7 a1^-1 a7^-1","#,
                r#""a1 a2 a1^-1 a2^-1 a1 a3 a1^-1 a3^-1 a1 a4 a1^-1 a4^-1 a1 a5 a1^-1 a5^-1 a1 a6 a1^-1 a6^-1 a1 a7 a1^-1 a7^-1 a1 a8 a1^-1 a8^-1"],"#,
                r#""kappa1_lengths":[0,2,4,6,8,10,12,14],"verdict":"not stable by depth"}}"#
            ),
        ),
    ];
    for (args, expected) in cases {
        let first = earring(args);
        let second = earring(args);
        ensure!(first == second, "{args:?} is not deterministic");
        ensure!(first.0 == 0, "{args:?} exited {}", first.0);
        ensure!(
            first.1 == format!("{expected}\n"),
            "{args:?} printed {}",
            first.1
        );
    }
    for args in [&["reduce", "a0 a1"][..], &["reduce", "a1^"], &["nonsense"]] {
        let (code, _) = earring(args);
        ensure!(code == 1, "{args:?} exited {code}, want 1");
    }
    for args in [&["sigma", "telescope"][..], &["psi", "--n", "1", "a1 a3"]] {
        let (code, _) = earring(args);
        ensure!(code == 2, "{args:?} exited {code}, want 2");
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        (
            "1 reduction oracle equivalence",
            5,
            reduction_oracle_equivalence,
        ),
        ("2 free-product group axioms", 5, free_product_group_axioms),
        ("3 bonding coherence", 10, bonding_coherence),
        (
            "4 non-surjectivity telescope",
            5,
            non_surjectivity_telescope,
        ),
        ("5 perturbation dichotomy", 30, dichotomy_totality),
        ("6 sigma characterization", 30, sigma_characterization),
        ("7 CLI contract", 5, cli_contract),
    ];
    let mut failed = 0;
    for (name, budget, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = result.and_then(|()| {
            if elapsed > Duration::from_secs(budget) {
                Err(format!("took {elapsed:.2?}, budget {budget} s"))
            } else {
                Ok(())
            }
        });
        match result {
            Ok(()) => println!(
                "PASS  {name:<34} {:>8.3} s (budget {budget} s)",
                elapsed.as_secs_f64()
            ),
            Err(msg) => {
                failed += 1;
                println!("FAIL  {name:<34} {:>8.3} s: {msg}", elapsed.as_secs_f64());
            }
        }
    }
    println!("acceptance: {} of 7 criteria passed", 7 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
