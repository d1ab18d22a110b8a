//! Group presentations synthesized from a signature, and the abelianization
//! computed from the relation matrix.
//!
//! Generators follow the standard naming: `x_j` for periods and cusps, `e_i`
//! and `c_{i,0}..c_{i,s_i}` per period cycle (empty cycles keep `e_i` and a
//! lone `c_{i,0}`), and handle generators `a_t, b_t` (orientable) or `a_t`
//! (non-orientable). The dihedral corner relation is
//! `(c_{i,l-1} c_{i,l})^{n_{i,l}} = 1`: the corner stabilizer is the
//! dihedral group of order `2 n_{i,l}`, which forces the exponent.

use serde::Serialize;
use std::fmt;

use crate::abelian::FinAbGroup;
use crate::linalg::{snf, IntMatrix};
use crate::signature::{Sign, Signature, ValidationError};
use num_bigint::BigInt;

/// A generator symbol. Indices are 1-based except the reflection index `l`,
/// which starts at 0 as usual.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenSym {
    /// Elliptic or cusp generator `x_j`.
    X(usize),
    /// Boundary-connecting generator `e_i`.
    E(usize),
    /// Reflection `c_{i,l}`.
    C(usize, usize),
    /// Handle generator `a_t`.
    A(usize),
    /// Handle generator `b_t` (orientable only).
    B(usize),
}

impl fmt::Display for GenSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenSym::X(j) => write!(f, "x{j}"),
            GenSym::E(i) => write!(f, "e{i}"),
            GenSym::C(i, l) => write!(f, "c{i}_{l}"),
            GenSym::A(t) => write!(f, "a{t}"),
            GenSym::B(t) => write!(f, "b{t}"),
        }
    }
}

/// A relator word: a sequence of (generator index, exponent) syllables.
pub type Word = Vec<(usize, i64)>;

#[derive(Debug, Clone)]
pub struct Presentation {
    pub generators: Vec<GenSym>,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn generator_index(&self, sym: GenSym) -> Option<usize> {
        self.generators.iter().position(|&g| g == sym)
    }

    /// Exponent-sum matrix: one row per relator, one column per generator.
    pub fn relation_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.relators.len(), self.generators.len());
        for (i, word) in self.relators.iter().enumerate() {
            for &(g, e) in word {
                let v = m.get(i, g) + BigInt::from(e);
                m.set(i, g, v);
            }
        }
        m
    }

    pub fn to_json(&self) -> serde_json::Value {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        let rels: Vec<serde_json::Value> = self
            .relators
            .iter()
            .map(|w| {
                serde_json::Value::Array(
                    w.iter()
                        .map(|&(g, e)| {
                            serde_json::json!([self.generators[g].to_string(), e])
                        })
                        .collect(),
                )
            })
            .collect();
        serde_json::json!({ "generators": gens, "relators": rels })
    }
}

impl fmt::Display for Presentation {
    /// Conventional `< generators | relators >` rendering.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< ")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, " | ")?;
        for (i, word) in self.relators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if word.is_empty() {
                write!(f, "1")?;
                continue;
            }
            for (j, &(g, e)) in word.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                if e == 1 {
                    write!(f, "{}", self.generators[g])?;
                } else {
                    write!(f, "{}^{}", self.generators[g], e)?;
                }
            }
        }
        write!(f, " >")
    }
}

/// Instantiate the presentation attached to a signature.
pub fn build_presentation(sig: &Signature) -> Result<Presentation, ValidationError> {
    sig.validate()?;
    let counts = sig.derived_counts();
    let r = counts.r;
    let s = counts.s;

    let mut generators = Vec::new();
    for j in 1..=(r + s) {
        generators.push(GenSym::X(j));
    }
    for (i, cycle) in sig.cycles.iter().enumerate() {
        generators.push(GenSym::E(i + 1));
        for l in 0..=cycle.len() {
            generators.push(GenSym::C(i + 1, l));
        }
    }
    for t in 1..=(sig.genus as usize) {
        generators.push(GenSym::A(t));
        if sig.sign == Sign::Plus {
            generators.push(GenSym::B(t));
        }
    }

    let pres_index = |generators: &[GenSym], sym: GenSym| -> usize {
        generators.iter().position(|&g| g == sym).expect("generator present")
    };

    let mut relators: Vec<Word> = Vec::new();
    // Period relators x_j^{m_j}; cusp generators are torsion-free.
    for (j, &m) in sig.periods.iter().enumerate() {
        let g = pres_index(&generators, GenSym::X(j + 1));
        relators.push(vec![(g, m as i64)]);
    }
    // Per-cycle reflection, corner and conjugation relators.
    for (i, cycle) in sig.cycles.iter().enumerate() {
        let si = cycle.len();
        let c = |l: usize| pres_index(&generators, GenSym::C(i + 1, l));
        let e = pres_index(&generators, GenSym::E(i + 1));
        for l in 0..=si {
            relators.push(vec![(c(l), 2)]);
        }
        for (l, &n) in cycle.iter().enumerate() {
            let mut word = Word::new();
            for _ in 0..n {
                word.push((c(l), 1));
                word.push((c(l + 1), 1));
            }
            relators.push(word);
        }
        // c_{i,s_i} = e_i^-1 c_{i,0} e_i
        relators.push(vec![(c(si), -1), (e, -1), (c(0), 1), (e, 1)]);
    }
    // Long relator.
    let mut long = Word::new();
    for j in 1..=(r + s) {
        long.push((pres_index(&generators, GenSym::X(j)), 1));
    }
    for i in 1..=sig.cycles.len() {
        long.push((pres_index(&generators, GenSym::E(i)), 1));
    }
    for t in 1..=(sig.genus as usize) {
        let a = pres_index(&generators, GenSym::A(t));
        match sig.sign {
            Sign::Plus => {
                let b = pres_index(&generators, GenSym::B(t));
                long.extend_from_slice(&[(a, 1), (b, 1), (a, -1), (b, -1)]);
            }
            Sign::Minus => long.push((a, 2)),
        }
    }
    relators.push(long);

    Ok(Presentation { generators, relators })
}

/// Abelianization via the Smith normal form of the relation matrix.
pub fn abelianization(sig: &Signature) -> Result<FinAbGroup, ValidationError> {
    let pres = build_presentation(sig)?;
    let m = pres.relation_matrix();
    let result = snf(&m);
    let rank = pres.generators.len() - result.rank;
    Ok(FinAbGroup::from_invariants(rank, result.nonunit_factors()))
}
