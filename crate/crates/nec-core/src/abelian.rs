//! Finitely generated abelian groups in invariant-factor form, plus the
//! universal-coefficient passage from homology to cohomology.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::linalg::{snf, IntMatrix};

/// A finitely generated abelian group, written as
/// `Z^rank + Z_{d1} + ... + Z_{dk}` with `d1 | d2 | ... | dk` and every
/// `di >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FinAbGroup {
    rank: usize,
    torsion: Vec<BigInt>,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        FinAbGroup { rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        FinAbGroup { rank, torsion: Vec::new() }
    }

    /// The cyclic group of order `n` (`n = 1` gives the trivial group).
    pub fn cyclic(n: BigInt) -> Self {
        assert!(n.is_positive(), "cyclic order must be positive");
        if n.is_one() {
            Self::trivial()
        } else {
            FinAbGroup { rank: 0, torsion: vec![n] }
        }
    }

    pub fn cyclic_u64(n: u64) -> Self {
        Self::cyclic(BigInt::from(n))
    }

    /// `Z_2^count`, which shows up in every mod-2 tally.
    pub fn elementary_2(count: usize) -> Self {
        FinAbGroup { rank: 0, torsion: vec![BigInt::from(2); count] }
    }

    /// Canonical form of `Z^rank + Z_{c1} + ... + Z_{cm}` for arbitrary
    /// cyclic orders: the Smith normal form of `diag(c1..cm)` rewrites the
    /// torsion into a divisibility chain; order-1 factors are dropped.
    pub fn canonical_form(rank: usize, cyclic_orders: &[BigInt]) -> Self {
        for c in cyclic_orders {
            assert!(c.is_positive(), "cyclic orders must be >= 1");
        }
        let nontrivial: Vec<BigInt> =
            cyclic_orders.iter().filter(|c| !c.is_one()).cloned().collect();
        if nontrivial.len() <= 1 || is_divisibility_chain(&nontrivial) {
            return FinAbGroup { rank, torsion: nontrivial };
        }
        let torsion = snf(&IntMatrix::diagonal(&nontrivial)).nonunit_factors();
        FinAbGroup { rank, torsion }
    }

    pub fn from_invariants(rank: usize, torsion: Vec<BigInt>) -> Self {
        Self::canonical_form(rank, &torsion)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn free_part(&self) -> Self {
        Self::free(self.rank)
    }

    pub fn torsion_part(&self) -> Self {
        FinAbGroup { rank: 0, torsion: self.torsion.clone() }
    }

    pub fn direct_sum(&self, other: &FinAbGroup) -> Self {
        let mut orders = self.torsion.clone();
        orders.extend_from_slice(&other.torsion);
        Self::canonical_form(self.rank + other.rank, &orders)
    }

    pub fn is_isomorphic(&self, other: &FinAbGroup) -> bool {
        self == other
    }

    /// Order of the torsion subgroup (product of the invariant factors).
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    /// Rank of `G (x) Z_2`: the free rank plus the number of even invariant
    /// factors.
    pub fn tensor_2_rank(&self) -> usize {
        self.rank + self.tor_2_rank()
    }

    /// Rank of `Tor(G, Z_2)`: the number of even invariant factors.
    pub fn tor_2_rank(&self) -> usize {
        self.torsion.iter().filter(|d| d.is_even()).count()
    }

    /// Prime-power decomposition of the torsion, as a sorted list of prime
    /// powers. Derived view; the invariant factors stay canonical.
    pub fn primary_decomposition(&self) -> Vec<BigInt> {
        let mut parts = Vec::new();
        for d in &self.torsion {
            let mut rest = d.clone();
            let mut p = BigInt::from(2);
            while &p * &p <= rest {
                if (&rest % &p).is_zero() {
                    let mut pk = BigInt::one();
                    while (&rest % &p).is_zero() {
                        rest /= &p;
                        pk *= &p;
                    }
                    parts.push(pk);
                }
                p += 1;
            }
            if !rest.is_one() {
                parts.push(rest);
            }
        }
        parts.sort();
        parts
    }

    /// Universal coefficients: `H^q = free(H_q) + torsion(H_{q-1})`.
    pub fn uct_cohomology(h_q: &FinAbGroup, h_q_minus_1: &FinAbGroup) -> FinAbGroup {
        FinAbGroup { rank: h_q.rank, torsion: h_q_minus_1.torsion.clone() }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "rank": self.rank,
            "torsion": self.torsion.iter().map(bigint_json).collect::<Vec<_>>(),
        })
    }
}

/// Render a big integer as a JSON number when it fits, string otherwise.
pub fn bigint_json(v: &BigInt) -> serde_json::Value {
    match i64::try_from(v.clone()) {
        Ok(n) => serde_json::json!(n),
        Err(_) => serde_json::json!(v.to_string()),
    }
}

fn is_divisibility_chain(orders: &[BigInt]) -> bool {
    orders.windows(2).all(|w| (&w[1] % &w[0]).is_zero())
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        match self.rank {
            0 => {}
            1 => terms.push("Z".to_string()),
            r => terms.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            terms.push(format!("Z_{d}"));
        }
        write!(f, "{}", terms.join(" + "))
    }
}
