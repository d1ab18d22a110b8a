//! Closed-form homology of the cell-stabilizer groups: finite cyclic,
//! infinite cyclic, reflection and dihedral.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::abelian::FinAbGroup;

/// Stabilizer of a cell in the fundamental-domain complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StabilizerKind {
    Trivial,
    /// Rotation of order `m` around an interior marked point.
    Cyclic(u64),
    /// Parabolic stabilizer of an ideal vertex.
    InfiniteCyclic,
    /// Single reflection.
    Reflection,
    /// Dihedral group of order `2n` at a boundary corner.
    Dihedral(u64),
}

/// Integral homology of the cyclic group of order `m` (`None` means the
/// infinite cyclic group).
pub fn cyclic_homology(m: Option<u64>, q: usize) -> FinAbGroup {
    match m {
        None => {
            if q <= 1 {
                FinAbGroup::free(1)
            } else {
                FinAbGroup::trivial()
            }
        }
        Some(m) => {
            assert!(m >= 2, "finite cyclic order must be at least 2");
            if q == 0 {
                FinAbGroup::free(1)
            } else if q % 2 == 1 {
                FinAbGroup::cyclic_u64(m)
            } else {
                FinAbGroup::trivial()
            }
        }
    }
}

/// Integral homology of the dihedral group of order `2n`.
///
/// For odd `n`: `Z` at 0, `Z_2` for `q = 1 (mod 4)`, `Z_{2n}` for
/// `q = 3 (mod 4)`, zero otherwise. For even `n`: `Z` at 0,
/// `Z_2^{(q+3)/2}` for `q = 1 (mod 4)`, `Z_2^{q/2}` for even `q > 0`, and
/// `Z_2^{(q+1)/2} + Z_n` for `q = 3 (mod 4)`.
pub fn dihedral_homology(n: u64, q: usize) -> FinAbGroup {
    assert!(n >= 2, "dihedral parameter must be at least 2");
    if q == 0 {
        return FinAbGroup::free(1);
    }
    if n % 2 == 1 {
        match q % 4 {
            1 => FinAbGroup::cyclic_u64(2),
            3 => FinAbGroup::cyclic_u64(2 * n),
            _ => FinAbGroup::trivial(),
        }
    } else {
        match q % 4 {
            1 => FinAbGroup::elementary_2((q + 3) / 2),
            3 => FinAbGroup::elementary_2((q + 1) / 2)
                .direct_sum(&FinAbGroup::cyclic_u64(n)),
            _ => FinAbGroup::elementary_2(q / 2),
        }
    }
}

/// Rank of `H_q(D_{2n}; Z_2)`: `q + 1` for even `n`, 1 for odd `n`.
pub fn dihedral_homology_mod2_rank(n: u64, q: usize) -> usize {
    assert!(n >= 2, "dihedral parameter must be at least 2");
    if n % 2 == 0 {
        q + 1
    } else {
        1
    }
}

impl StabilizerKind {
    pub fn homology(&self, q: usize) -> FinAbGroup {
        match *self {
            StabilizerKind::Trivial => {
                if q == 0 {
                    FinAbGroup::free(1)
                } else {
                    FinAbGroup::trivial()
                }
            }
            StabilizerKind::Cyclic(m) => cyclic_homology(Some(m), q),
            StabilizerKind::InfiniteCyclic => cyclic_homology(None, q),
            StabilizerKind::Reflection => cyclic_homology(Some(2), q),
            StabilizerKind::Dihedral(n) => dihedral_homology(n, q),
        }
    }

    /// Rank of the mod-2 homology in degree `q`.
    pub fn homology_mod2_rank(&self, q: usize) -> usize {
        match *self {
            StabilizerKind::Trivial => usize::from(q == 0),
            StabilizerKind::Cyclic(m) => {
                if m % 2 == 0 {
                    1
                } else {
                    usize::from(q == 0)
                }
            }
            StabilizerKind::InfiniteCyclic => usize::from(q <= 1),
            StabilizerKind::Reflection => 1,
            StabilizerKind::Dihedral(n) => dihedral_homology_mod2_rank(n, q),
        }
    }

    /// Rational Euler characteristic of the stabilizer, the weight it
    /// carries in equivariant cell counts.
    pub fn chi_q(&self) -> BigRational {
        match *self {
            StabilizerKind::Trivial => BigRational::one(),
            StabilizerKind::Cyclic(m) => {
                BigRational::new(BigInt::one(), BigInt::from(m))
            }
            StabilizerKind::InfiniteCyclic => BigRational::zero(),
            StabilizerKind::Reflection => {
                BigRational::new(BigInt::one(), BigInt::from(2))
            }
            StabilizerKind::Dihedral(n) => {
                BigRational::new(BigInt::one(), BigInt::from(2 * n))
            }
        }
    }
}
