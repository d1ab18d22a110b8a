//! Deterministic signature corpus used by the verification suite and the
//! benchmarks, plus batch evaluation over it.
//!
//! Batch evaluation is data-parallel: each signature's checks are
//! independent and pure. With the `parallel` feature (on by default) the
//! batch runs on a rayon pool; `check_corpus_seq` is always available as
//! the sequential fallback and the benchmarks compare the two.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::checks::{run_checks, SignatureReport};
use crate::signature::{GroupCase, Sign, Signature};

const CORPUS_SEED: u64 = 0x4e45_435f_434f_5250;

/// Hand-picked signatures that exercise every special shape: the reference
/// triangle and quadrilateral groups, closed surfaces, cusped groups,
/// all-odd cycles and empty cycles on both orientability types.
fn anchors() -> Vec<Signature> {
    [
        "(0,0,+,[2,3,7],{})",
        "(0,0,+,[2,3,8],{})",
        "(0,0,+,[3,3,4],{})",
        "(0,0,+,[],{(2,2,2,3)})",
        "(0,0,+,[],{(3,3,5)})",
        "(0,0,+,[],{(2,3,7)})",
        "(1,1,+,[],{})",
        "(0,3,+,[],{})",
        "(2,0,+,[],{})",
        "(3,0,+,[],{})",
        "(1,0,+,[2,2],{})",
        "(0,1,+,[2,2],{(2,2)})",
        "(0,0,+,[3],{(2,2)})",
        "(0,0,+,[],{(2,2),(2,2)})",
        "(1,0,+,[],{()})",
        "(0,0,+,[2,3],{()})",
        "(2,0,-,[],{()})",
        "(1,0,-,[3],{()})",
        "(3,0,-,[],{})",
        "(1,0,-,[2,4],{(3,3)})",
        "(1,1,-,[],{(2,2)})",
        "(2,0,-,[5],{(4,4)})",
        "(1,1,+,[2,6],{(2,3),()})",
        "[0,0;2,4,4,3]",
        "[1,1;2]",
        "[0,2;3]",
        "[1,0;2,3]",
    ]
    .iter()
    .map(|t| {
        let sig = Signature::parse(t).expect("anchor parses");
        sig.validate().expect("anchor is hyperbolic");
        sig
    })
    .collect()
}

/// Generate a deterministic corpus of valid signatures spanning all three
/// cases, within the bounds `g <= 3`, `s <= 2`, `r <= 4`, at most three
/// cycles of length at most four, periods up to 12.
pub fn generate_corpus() -> Vec<Signature> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    let mut corpus = anchors();
    let mut seen: std::collections::HashSet<String> =
        corpus.iter().map(|s| s.to_string()).collect();

    let count_case = |corpus: &[Signature], case: GroupCase| {
        corpus.iter().filter(|s| s.case() == case).count()
    };

    let mut attempts = 0;
    while corpus.len() < 220 && attempts < 100_000 {
        attempts += 1;
        let sign = if rng.gen_bool(0.45) { Sign::Minus } else { Sign::Plus };
        let genus = match sign {
            Sign::Plus => rng.gen_range(0..=3),
            Sign::Minus => rng.gen_range(1..=3),
        };
        let cusps = rng.gen_range(0..=2);
        let r = rng.gen_range(0..=4);
        let periods: Vec<u64> = (0..r).map(|_| rng.gen_range(2..=12)).collect();
        let n_cycles = rng.gen_range(0..=3);
        let cycles: Vec<Vec<u64>> = (0..n_cycles)
            .map(|_| {
                let len = rng.gen_range(0..=4);
                (0..len).map(|_| rng.gen_range(2..=12)).collect()
            })
            .collect();
        let sig = Signature::new(sign, genus, cusps, periods, cycles);
        if sig.validate().is_err() {
            continue;
        }
        // Keep the cocompact Fuchsian slice from being crowded out.
        if sig.case() == GroupCase::OrientableWithPeriphery
            && count_case(&corpus, GroupCase::OrientableWithPeriphery) > 110
        {
            continue;
        }
        if seen.insert(sig.to_string()) {
            corpus.push(sig);
        }
    }

    assert!(corpus.len() >= 200, "corpus generation fell short");
    for case in [
        GroupCase::CocompactFuchsian,
        GroupCase::OrientableWithPeriphery,
        GroupCase::NonOrientable,
    ] {
        assert!(count_case(&corpus, case) >= 10, "case {case:?} under-represented");
    }
    corpus
}

/// Run the verification suite over a batch, sequentially.
pub fn check_corpus_seq(sigs: &[Signature], q_max: usize) -> Vec<SignatureReport> {
    sigs.iter()
        .map(|s| run_checks(s, q_max).expect("corpus signatures are valid"))
        .collect()
}

/// Run the verification suite over a batch, in parallel when the `parallel`
/// feature is enabled.
#[cfg(feature = "parallel")]
pub fn check_corpus(sigs: &[Signature], q_max: usize) -> Vec<SignatureReport> {
    use rayon::prelude::*;
    sigs.par_iter()
        .map(|s| run_checks(s, q_max).expect("corpus signatures are valid"))
        .collect()
}

#[cfg(not(feature = "parallel"))]
pub fn check_corpus(sigs: &[Signature], q_max: usize) -> Vec<SignatureReport> {
    check_corpus_seq(sigs, q_max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_deterministic_and_spans_cases() {
        let a = generate_corpus();
        let b = generate_corpus();
        assert_eq!(a, b);
        assert!(a.len() >= 200);
        for case in [
            GroupCase::CocompactFuchsian,
            GroupCase::OrientableWithPeriphery,
            GroupCase::NonOrientable,
        ] {
            assert!(a.iter().any(|s| s.case() == case));
        }
        // Bounds hold.
        for sig in &a {
            assert!(sig.genus <= 3 && sig.cusps <= 2);
            assert!(sig.periods.len() <= 4 && sig.cycles.len() <= 3);
            assert!(sig.periods.iter().all(|&m| (2..=12).contains(&m)));
            assert!(sig.cycles.iter().all(|c| c.len() <= 4));
        }
    }

    #[test]
    fn parallel_and_sequential_agree_on_a_slice() {
        let corpus = generate_corpus();
        let slice = &corpus[..12];
        let par = check_corpus(slice, 6);
        let seq = check_corpus_seq(slice, 6);
        assert_eq!(par.len(), seq.len());
        for (p, s) in par.iter().zip(&seq) {
            assert_eq!(p.signature, s.signature);
            assert_eq!(p.all_pass(), s.all_pass());
        }
    }
}
