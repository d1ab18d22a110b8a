//! Rational Euler characteristic and L2-Betti numbers.
//!
//! For a hyperbolic NEC group the L2-Betti numbers are concentrated in
//! degree one, where the value is exactly the hyperbolicity measure of the
//! signature; the rational Euler characteristic is its negative.

use num_rational::BigRational;
use num_traits::Zero;

use crate::signature::{Signature, ValidationError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct L2Profile {
    pub chi_q: BigRational,
    pub betti_1: BigRational,
}

/// The `p`-th L2-Betti number.
pub fn l2_betti(sig: &Signature, p: usize) -> Result<BigRational, ValidationError> {
    sig.validate()?;
    if p == 1 {
        Ok(sig.hyperbolic_measure())
    } else {
        Ok(BigRational::zero())
    }
}

/// The rational Euler characteristic, the alternating sum of the L2-Betti
/// numbers.
pub fn rational_euler_characteristic(sig: &Signature) -> Result<BigRational, ValidationError> {
    Ok(-l2_betti(sig, 1)?)
}

pub fn l2_profile(sig: &Signature) -> Result<L2Profile, ValidationError> {
    let betti_1 = l2_betti(sig, 1)?;
    Ok(L2Profile { chi_q: -betti_1.clone(), betti_1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use num_bigint::BigInt;
    use num_traits::Signed;

    fn sig(text: &str) -> Signature {
        Signature::parse(text).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn betti_examples() {
        assert_eq!(l2_betti(&sig("(0,0,+,[2,3,7],{})"), 1).unwrap(), rat(1, 42));
        assert_eq!(l2_betti(&sig("(1,1,+,[],{})"), 1).unwrap(), rat(1, 1));
        for p in [0, 2, 3, 7] {
            assert_eq!(l2_betti(&sig("(0,0,+,[2,3,7],{})"), p).unwrap(), rat(0, 1));
        }
    }

    #[test]
    fn euler_examples() {
        assert_eq!(
            rational_euler_characteristic(&sig("(0,0,+,[2,3,7],{})")).unwrap(),
            rat(-1, 42)
        );
        assert_eq!(rational_euler_characteristic(&sig("(1,1,+,[],{})")).unwrap(), rat(-1, 1));
        assert_eq!(
            rational_euler_characteristic(&sig("(0,0,+,[],{(2,2,2,3)})")).unwrap(),
            rat(-1, 12)
        );
    }

    #[test]
    fn profile_is_consistent() {
        let p = l2_profile(&sig("(2,0,-,[],{()})")).unwrap();
        assert_eq!(p.chi_q, -p.betti_1.clone());
        assert!(p.betti_1.is_positive());
    }

    #[test]
    fn euler_matches_equivariant_cell_sum() {
        for text in ["(0,0,+,[2,3,7],{})", "(0,0,+,[],{(2,2,2,3)})", "(2,0,-,[],{()})"] {
            let s = sig(text);
            let complex = oracle::build_cell_complex(&s).unwrap();
            assert_eq!(
                rational_euler_characteristic(&s).unwrap(),
                oracle::equivariant_euler(&complex),
                "{text}"
            );
        }
    }

    /// The cusped-surface-with-periods expression `2g - 2 + s + r - sum 1/m`
    /// agrees with the general formula on Fuchsian signatures.
    #[test]
    fn fuchsian_branch_consistency() {
        for (g, s, periods) in [
            (0u64, 1u64, vec![2u64, 3]),
            (1, 1, vec![]),
            (0, 0, vec![2, 3, 7]),
            (2, 2, vec![5]),
        ] {
            let sigma = Signature::fuchsian(g, s, periods.clone());
            sigma.validate().unwrap();
            let mut direct = rat(2 * g as i64 - 2 + s as i64 + periods.len() as i64, 1);
            for &m in &periods {
                direct -= rat(1, m as i64);
            }
            assert_eq!(l2_betti(&sigma, 1).unwrap(), direct);
        }
    }
}
