//! The cohomology ring of a Fuchsian group: a direct-sum decomposition into
//! a unital surface (or truncated degree-one) part and non-unital cyclic and
//! `x,y`-generated summands, with cup products computed summand-wise.
//!
//! The decomposition shares a single unit: the cyclic summands and the
//! `R`-summands enter as their positive-degree parts, so that degree zero is
//! one copy of the integers. Elements of an `R`-summand are written over the
//! rewriting basis `{x^a, x^a y}` with `x^3 = y^2`, `|x| = 4`, `|y| = 6` and
//! coefficients modulo the summand's modulus.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::abelian::{bigint_json, FinAbGroup};
use crate::cohomology::t_constants;
use crate::signature::{Signature, ValidationError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RingError {
    #[error(transparent)]
    Validation(#[from] ValidationError),
    #[error("ring structure is computed for Fuchsian signatures only")]
    NotFuchsian,
    #[error("element does not live in this ring: {0}")]
    ElementNotInRing(String),
    #[error("element is not homogeneous")]
    NonHomogeneous,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingSummand {
    /// `H^*` of the closed orientable surface of the given genus. Unital;
    /// degrees 0, 1 (classes `a_i, b_i`) and 2 (class `f`).
    Surface { genus: usize },
    /// `Z[x_1..x_n]` with `|x_i| = 1` and all products zero. Unital.
    TruncatedDegreeOne { n: usize },
    /// Positive-degree part of `H^*` of a finite cyclic group of the given
    /// order: one generator `u^p` in each degree `2p`.
    CyclicClass { order: BigInt },
    /// Generators `x` (degree 4) and `y` (degree 6) subject to
    /// `x^3 = y^2` and coefficients mod the modulus.
    RRing { modulus: BigInt },
    /// Positive-degree part of `H^*` of the cyclic group of one period.
    /// Same shape as `CyclicClass`; kept separate because it plays a
    /// different role in the decomposition.
    FullCyclic { order: BigInt },
}

impl RingSummand {
    fn is_unital(&self) -> bool {
        matches!(self, RingSummand::Surface { .. } | RingSummand::TruncatedDegreeOne { .. })
    }

    /// Order annihilating the summand's classes; `None` for the free ones.
    fn torsion_order(&self) -> Option<&BigInt> {
        match self {
            RingSummand::CyclicClass { order } | RingSummand::FullCyclic { order } => Some(order),
            RingSummand::RRing { modulus } => Some(modulus),
            _ => None,
        }
    }

    /// Number of basis classes in the given degree.
    fn basis_len(&self, degree: usize) -> usize {
        match self {
            RingSummand::Surface { genus } => match degree {
                0 => 1,
                1 => 2 * genus,
                2 => 1,
                _ => 0,
            },
            RingSummand::TruncatedDegreeOne { n } => match degree {
                0 => 1,
                1 => *n,
                _ => 0,
            },
            RingSummand::CyclicClass { order } | RingSummand::FullCyclic { order } => {
                if order.is_one() {
                    0
                } else {
                    usize::from(degree >= 2 && degree % 2 == 0)
                }
            }
            RingSummand::RRing { modulus } => {
                if modulus.is_one() || degree < 4 || degree % 2 == 1 {
                    0
                } else {
                    // x^{deg/4}, or x^{(deg-6)/4} y for degree 2 mod 4.
                    usize::from(degree % 4 == 0 || degree >= 6)
                }
            }
        }
    }

    fn basis_label(&self, degree: usize, slot: usize) -> String {
        match self {
            RingSummand::Surface { genus } => match degree {
                0 => "1".into(),
                1 => {
                    if slot < *genus {
                        format!("a{}", slot + 1)
                    } else {
                        format!("b{}", slot - genus + 1)
                    }
                }
                _ => "f".into(),
            },
            RingSummand::TruncatedDegreeOne { .. } => {
                if degree == 0 {
                    "1".into()
                } else {
                    format!("x{}", slot + 1)
                }
            }
            RingSummand::CyclicClass { .. } | RingSummand::FullCyclic { .. } => {
                let p = degree / 2;
                if p == 1 {
                    "u".into()
                } else {
                    format!("u^{p}")
                }
            }
            RingSummand::RRing { .. } => {
                let (a, b) = rring_monomial(degree);
                match (a, b) {
                    (0, 1) => "y".into(),
                    (1, 0) => "x".into(),
                    (a, 0) => format!("x^{a}"),
                    (1, 1) => "x*y".into(),
                    (a, 1) => format!("x^{a}*y"),
                    _ => unreachable!(),
                }
            }
        }
    }

    fn describe(&self) -> String {
        match self {
            RingSummand::Surface { genus } => format!("H*(Sigma_{genus})"),
            RingSummand::TruncatedDegreeOne { n } => {
                format!("Z[x1..x{n}]/(xi*xj)")
            }
            RingSummand::CyclicClass { order } => format!("H*+(Z_{order})"),
            RingSummand::RRing { modulus } => format!("R_{modulus}"),
            RingSummand::FullCyclic { order } => format!("H*+(Z_{order})"),
        }
    }
}

/// Exponents (a, b) of the unique basis monomial `x^a y^b` in the given
/// even degree `4a + 6b` with `b <= 1`.
pub fn rring_monomial(degree: usize) -> (usize, usize) {
    if degree % 4 == 0 {
        (degree / 4, 0)
    } else {
        debug_assert!(degree % 4 == 2 && degree >= 6);
        ((degree - 6) / 4, 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingDescription {
    pub summands: Vec<RingSummand>,
}

/// A homogeneous element: coefficients over each summand's basis in one
/// fixed degree. Stored reduced (no zero components, torsion coefficients
/// in `0..order`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingElement {
    pub degree: usize,
    pub components: BTreeMap<usize, Vec<BigInt>>,
}

/// Decompose the cohomology ring of a Fuchsian group.
pub fn ring_structure(sig: &Signature) -> Result<RingDescription, RingError> {
    if !sig.is_fuchsian() {
        return Err(RingError::NotFuchsian);
    }
    sig.validate()?;
    let g = sig.genus as usize;
    let s = sig.cusps as usize;
    let mut summands = Vec::new();
    if s == 0 {
        summands.push(RingSummand::Surface { genus: g });
        let tc = t_constants(&sig.periods);
        for t in &tc.t {
            summands.push(RingSummand::CyclicClass { order: t.clone() });
        }
        for q in tc.complement.torsion() {
            summands.push(RingSummand::RRing { modulus: q.clone() });
        }
    } else {
        summands.push(RingSummand::TruncatedDegreeOne { n: 2 * g + s - 1 });
        for &m in &sig.periods {
            summands.push(RingSummand::FullCyclic { order: BigInt::from(m) });
        }
    }
    Ok(RingDescription { summands })
}

impl RingDescription {
    /// Index of the summand carrying the unit (always present, always
    /// first).
    pub fn unital_index(&self) -> usize {
        debug_assert!(self.summands[0].is_unital());
        0
    }

    /// Additive group in one degree; degree zero is a single copy of the
    /// integers from the unital summand.
    pub fn degree_component(&self, degree: usize) -> FinAbGroup {
        if degree == 0 {
            return FinAbGroup::free(1);
        }
        let mut acc = FinAbGroup::trivial();
        for summand in &self.summands {
            let len = summand.basis_len(degree);
            if len == 0 {
                continue;
            }
            let part = match summand.torsion_order() {
                None => FinAbGroup::free(len),
                Some(order) => {
                    let orders = vec![order.clone(); len];
                    FinAbGroup::canonical_form(0, &orders)
                }
            };
            acc = acc.direct_sum(&part);
        }
        acc
    }

    pub fn zero(&self, degree: usize) -> RingElement {
        RingElement { degree, components: BTreeMap::new() }
    }

    pub fn unit(&self) -> RingElement {
        self.monomial(self.unital_index(), 0, 0, BigInt::one())
            .expect("unit exists")
    }

    /// The basis element in `summand` at `degree`, slot `slot`, scaled by
    /// `coeff`.
    pub fn monomial(
        &self,
        summand: usize,
        degree: usize,
        slot: usize,
        coeff: BigInt,
    ) -> Result<RingElement, RingError> {
        let Some(s) = self.summands.get(summand) else {
            return Err(RingError::ElementNotInRing(format!("no summand {summand}")));
        };
        let len = s.basis_len(degree);
        if slot >= len {
            return Err(RingError::ElementNotInRing(format!(
                "summand {summand} has {len} classes in degree {degree}"
            )));
        }
        let mut coeffs = vec![BigInt::zero(); len];
        coeffs[slot] = coeff;
        let mut comps = BTreeMap::new();
        comps.insert(summand, coeffs);
        let mut elem = RingElement { degree, components: comps };
        self.reduce(&mut elem);
        Ok(elem)
    }

    /// All basis elements in one degree (the unit alone in degree zero).
    pub fn basis(&self, degree: usize) -> Vec<RingElement> {
        if degree == 0 {
            return vec![self.unit()];
        }
        let mut out = Vec::new();
        for (i, s) in self.summands.iter().enumerate() {
            for slot in 0..s.basis_len(degree) {
                out.push(
                    self.monomial(i, degree, slot, BigInt::one())
                        .expect("basis slot exists"),
                );
            }
        }
        out
    }

    fn reduce(&self, elem: &mut RingElement) {
        let mut dead = Vec::new();
        for (&i, coeffs) in elem.components.iter_mut() {
            if let Some(order) = self.summands[i].torsion_order() {
                for c in coeffs.iter_mut() {
                    *c = c.mod_floor(order);
                }
            }
            if coeffs.iter().all(|c| c.is_zero()) {
                dead.push(i);
            }
        }
        for i in dead {
            elem.components.remove(&i);
        }
    }

    fn check_element(&self, elem: &RingElement) -> Result<(), RingError> {
        for (&i, coeffs) in &elem.components {
            let Some(s) = self.summands.get(i) else {
                return Err(RingError::ElementNotInRing(format!("no summand {i}")));
            };
            if coeffs.len() != s.basis_len(elem.degree) {
                return Err(RingError::ElementNotInRing(format!(
                    "wrong coefficient count in summand {i} at degree {}",
                    elem.degree
                )));
            }
        }
        Ok(())
    }

    pub fn scalar_mul(&self, c: &BigInt, elem: &RingElement) -> RingElement {
        let mut out = elem.clone();
        for coeffs in out.components.values_mut() {
            for x in coeffs.iter_mut() {
                *x = &*x * c;
            }
        }
        self.reduce(&mut out);
        out
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> Result<RingElement, RingError> {
        if a.degree != b.degree {
            return Err(RingError::NonHomogeneous);
        }
        let mut out = a.clone();
        for (&i, coeffs) in &b.components {
            let entry = out
                .components
                .entry(i)
                .or_insert_with(|| vec![BigInt::zero(); coeffs.len()]);
            for (x, y) in entry.iter_mut().zip(coeffs) {
                *x += y;
            }
        }
        self.reduce(&mut out);
        Ok(out)
    }

    /// Cup product. Products across distinct summands vanish; the unit acts
    /// as the identity on every summand.
    pub fn cup_product(&self, a: &RingElement, b: &RingElement) -> Result<RingElement, RingError> {
        self.check_element(a)?;
        self.check_element(b)?;
        let unital = self.unital_index();
        if a.degree == 0 {
            let c = a
                .components
                .get(&unital)
                .map(|v| v[0].clone())
                .unwrap_or_else(BigInt::zero);
            return Ok(self.scalar_mul(&c, b));
        }
        if b.degree == 0 {
            let c = b
                .components
                .get(&unital)
                .map(|v| v[0].clone())
                .unwrap_or_else(BigInt::zero);
            return Ok(self.scalar_mul(&c, a));
        }
        let degree = a.degree + b.degree;
        let mut out = self.zero(degree);
        for (&i, left) in &a.components {
            let Some(right) = b.components.get(&i) else { continue };
            let product =
                self.summands[i].multiply(a.degree, left, b.degree, right);
            if let Some(coeffs) = product {
                if !coeffs.iter().all(|c| c.is_zero()) {
                    out.components.insert(i, coeffs);
                }
            }
        }
        self.reduce(&mut out);
        Ok(out)
    }

    pub fn render_element(&self, elem: &RingElement) -> String {
        if elem.components.is_empty() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (&i, coeffs) in &elem.components {
            for (slot, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let label = self.summands[i].basis_label(elem.degree, slot);
                let term = if c.is_one() {
                    label
                } else {
                    format!("{c}*{label}")
                };
                terms.push(format!("s{i}:{term}"));
            }
        }
        terms.join(" + ")
    }

    pub fn element_json(&self, elem: &RingElement) -> serde_json::Value {
        let comps: Vec<serde_json::Value> = elem
            .components
            .iter()
            .map(|(&i, coeffs)| {
                serde_json::json!({
                    "summand": i,
                    "coeffs": coeffs.iter().map(bigint_json).collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::json!({ "degree": elem.degree, "components": comps })
    }

    /// Parse `[c*]s<idx>:<monomial>`, e.g. `s0:a1`, `s3:x^2*y`, `2*s1:u^3`.
    pub fn parse_element(&self, text: &str) -> Result<RingElement, RingError> {
        let bad = |msg: &str| RingError::ElementNotInRing(format!("{msg} in '{text}'"));
        let mut rest = text.trim();
        let mut coeff = BigInt::one();
        if let Some(star) = rest.find('*') {
            // A leading integer before the first '*' is a coefficient;
            // otherwise the '*' belongs to the monomial.
            if let Ok(c) = rest[..star].trim().parse::<i64>() {
                coeff = BigInt::from(c);
                rest = &rest[star + 1..];
            }
        }
        let rest = rest.trim();
        let colon = rest.find(':').ok_or_else(|| bad("missing ':'"))?;
        let (s_part, mono) = rest.split_at(colon);
        let mono = &mono[1..];
        let idx: usize = s_part
            .strip_prefix('s')
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| bad("bad summand selector"))?;
        let summand = self
            .summands
            .get(idx)
            .ok_or_else(|| bad("summand index out of range"))?;
        let (degree, slot) = summand.parse_monomial(mono).ok_or_else(|| bad("bad monomial"))?;
        self.monomial(idx, degree, slot, coeff)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let parts: Vec<serde_json::Value> = self
            .summands
            .iter()
            .map(|s| match s {
                RingSummand::Surface { genus } => {
                    serde_json::json!({"kind": "surface", "genus": genus})
                }
                RingSummand::TruncatedDegreeOne { n } => {
                    serde_json::json!({"kind": "truncated-degree-one", "generators": n})
                }
                RingSummand::CyclicClass { order } => {
                    serde_json::json!({"kind": "cyclic-class", "order": bigint_json(order)})
                }
                RingSummand::RRing { modulus } => {
                    serde_json::json!({"kind": "r-ring", "modulus": bigint_json(modulus)})
                }
                RingSummand::FullCyclic { order } => {
                    serde_json::json!({"kind": "full-cyclic", "order": bigint_json(order)})
                }
            })
            .collect();
        serde_json::json!({ "summands": parts })
    }
}

impl fmt::Display for RingDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.summands.iter().map(|s| s.describe()).collect();
        write!(f, "{}", parts.join(" (+) "))
    }
}

impl RingSummand {
    /// Product of coefficient vectors in the given degrees; `None` when the
    /// target degree has no classes.
    fn multiply(
        &self,
        deg_a: usize,
        a: &[BigInt],
        deg_b: usize,
        b: &[BigInt],
    ) -> Option<Vec<BigInt>> {
        let degree = deg_a + deg_b;
        match self {
            RingSummand::Surface { genus } => {
                if deg_a == 1 && deg_b == 1 {
                    // a_i b_i = f, b_i a_i = -f, everything else zero.
                    let g = *genus;
                    let mut f = BigInt::zero();
                    for i in 0..g {
                        f += &a[i] * &b[g + i];
                        f -= &a[g + i] * &b[i];
                    }
                    Some(vec![f])
                } else {
                    None
                }
            }
            RingSummand::TruncatedDegreeOne { .. } => None,
            RingSummand::CyclicClass { .. }
            | RingSummand::FullCyclic { .. }
            | RingSummand::RRing { .. } => {
                if self.basis_len(degree) == 0 {
                    return None;
                }
                Some(vec![&a[0] * &b[0]])
            }
        }
    }

    /// Degree and slot of a named basis monomial.
    fn parse_monomial(&self, mono: &str) -> Option<(usize, usize)> {
        let mono = mono.trim();
        match self {
            RingSummand::Surface { genus } => match mono {
                "1" => Some((0, 0)),
                "f" => Some((2, 0)),
                _ => {
                    let (head, idx) = mono.split_at(1);
                    let i: usize = idx.parse().ok()?;
                    if i == 0 || i > *genus {
                        return None;
                    }
                    match head {
                        "a" => Some((1, i - 1)),
                        "b" => Some((1, genus + i - 1)),
                        _ => None,
                    }
                }
            },
            RingSummand::TruncatedDegreeOne { n } => match mono {
                "1" => Some((0, 0)),
                _ => {
                    let i: usize = mono.strip_prefix('x')?.parse().ok()?;
                    if i == 0 || i > *n {
                        return None;
                    }
                    Some((1, i - 1))
                }
            },
            RingSummand::CyclicClass { .. } | RingSummand::FullCyclic { .. } => {
                let p: usize = if mono == "u" {
                    1
                } else {
                    mono.strip_prefix("u^")?.parse().ok()?
                };
                if p == 0 || self.basis_len(2 * p) == 0 {
                    return None;
                }
                Some((2 * p, 0))
            }
            RingSummand::RRing { .. } => {
                let cleaned = mono.replace('*', "");
                let (x_part, has_y) = match cleaned.strip_suffix('y') {
                    Some(head) => (head, true),
                    None => (cleaned.as_str(), false),
                };
                let a: usize = if x_part.is_empty() {
                    0
                } else if x_part == "x" {
                    1
                } else {
                    x_part.strip_prefix("x^")?.parse().ok()?
                };
                let b = usize::from(has_y);
                if a == 0 && b == 0 {
                    return None;
                }
                let degree = 4 * a + 6 * b;
                if self.basis_len(degree) == 0 {
                    return None;
                }
                // The rewriting basis stores each degree's single monomial.
                if rring_monomial(degree) != (a, b) {
                    return None;
                }
                Some((degree, 0))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{cohomology, CohomologyMode};

    fn ring(text: &str) -> RingDescription {
        ring_structure(&Signature::parse(text).unwrap()).unwrap()
    }

    #[test]
    fn structure_examples() {
        let r = ring("[0,0;2,3,7]");
        assert_eq!(
            r.summands,
            vec![
                RingSummand::Surface { genus: 0 },
                RingSummand::CyclicClass { order: BigInt::one() },
                RingSummand::CyclicClass { order: BigInt::one() },
                RingSummand::RRing { modulus: BigInt::from(42) },
            ]
        );

        let r = ring("[1,1;2]");
        assert_eq!(
            r.summands,
            vec![
                RingSummand::TruncatedDegreeOne { n: 2 },
                RingSummand::FullCyclic { order: BigInt::from(2) },
            ]
        );

        let r = ring("[2,0;]");
        assert_eq!(r.summands, vec![RingSummand::Surface { genus: 2 }]);

        assert_eq!(
            ring_structure(&Signature::parse("(0,0,+,[],{(2,2,2,3)})").unwrap()),
            Err(RingError::NotFuchsian)
        );
        assert_eq!(
            ring_structure(&Signature::parse("(2,0,-,[],{})").unwrap()),
            Err(RingError::NotFuchsian)
        );
    }

    #[test]
    fn degree_component_examples() {
        let r = ring("[0,0;2,3,7]");
        assert_eq!(r.degree_component(4), FinAbGroup::cyclic_u64(42));
        assert_eq!(r.degree_component(2), FinAbGroup::free(1));
        assert_eq!(r.degree_component(0), FinAbGroup::free(1));

        let r = ring("[2,0;]");
        assert_eq!(r.degree_component(1), FinAbGroup::free(4));

        let r = ring("[1,1;2]");
        assert_eq!(r.degree_component(2), FinAbGroup::cyclic_u64(2));
        assert_eq!(r.degree_component(1), FinAbGroup::free(2));
    }

    #[test]
    fn truncated_products_vanish() {
        let r = ring("[1,1;2]");
        let x1 = r.parse_element("s0:x1").unwrap();
        let x2 = r.parse_element("s0:x2").unwrap();
        let p = r.cup_product(&x1, &x2).unwrap();
        assert!(p.components.is_empty());
        let sq = r.cup_product(&x1, &x1).unwrap();
        assert!(sq.components.is_empty());
    }

    #[test]
    fn rring_square_of_y_is_x_cubed() {
        let r = ring("[1,0;2,3]");
        // t_1 = gcd(2,3) = 1, complement Z_6: summand s2 is R_6.
        assert_eq!(r.summands[2], RingSummand::RRing { modulus: BigInt::from(6) });
        let y = r.monomial(2, 6, 0, BigInt::one()).unwrap();
        let p = r.cup_product(&y, &y).unwrap();
        assert_eq!(p, r.monomial(2, 12, 0, BigInt::one()).unwrap());
        assert_eq!(r.render_element(&p), "s2:x^3");
    }

    #[test]
    fn surface_poincare_pairing() {
        let r = ring("[1,0;2,2]");
        let a = r.parse_element("s0:a1").unwrap();
        let b = r.parse_element("s0:b1").unwrap();
        let f = r.parse_element("s0:f").unwrap();
        assert_eq!(r.cup_product(&a, &b).unwrap(), f);
        assert_eq!(
            r.cup_product(&b, &a).unwrap(),
            r.scalar_mul(&BigInt::from(-1), &f)
        );
        assert!(r.cup_product(&a, &a).unwrap().components.is_empty());
        assert!(r.cup_product(&a, &f).unwrap().components.is_empty());
    }

    #[test]
    fn unit_acts_as_identity() {
        let r = ring("[1,0;2,3]");
        let one = r.unit();
        let y = r.monomial(2, 6, 0, BigInt::one()).unwrap();
        assert_eq!(r.cup_product(&one, &y).unwrap(), y);
        assert_eq!(r.cup_product(&y, &one).unwrap(), y);
        let two = r.scalar_mul(&BigInt::from(2), &one);
        assert_eq!(
            r.cup_product(&two, &y).unwrap(),
            r.scalar_mul(&BigInt::from(2), &y)
        );
    }

    #[test]
    fn torsion_coefficients_reduce() {
        let r = ring("[1,0;2,3]");
        let x7 = r.monomial(2, 4, 0, BigInt::from(7)).unwrap();
        assert_eq!(x7, r.monomial(2, 4, 0, BigInt::one()).unwrap());
        let zero = r.monomial(2, 4, 0, BigInt::from(6)).unwrap();
        assert!(zero.components.is_empty());
    }

    #[test]
    fn additive_consistency_small() {
        for text in ["[0,0;2,3,7]", "[2,0;]", "[1,1;2]", "[0,0;2,4,4,3]", "[1,0;2,3]"] {
            let sig = Signature::parse(text).unwrap();
            let r = ring_structure(&sig).unwrap();
            for q in 0..=12 {
                assert_eq!(
                    r.degree_component(q),
                    cohomology(&sig, q, CohomologyMode::ProofDerived).unwrap(),
                    "degree {q} of {text}"
                );
            }
        }
    }

    #[test]
    fn graded_commutativity_and_associativity() {
        for text in ["[0,0;2,3,7]", "[1,0;2,2]", "[1,1;4]", "[0,0;2,4,4,3]"] {
            let sig = Signature::parse(text).unwrap();
            let r = ring_structure(&sig).unwrap();
            let mut basis = Vec::new();
            for q in 0..=12 {
                basis.extend(r.basis(q));
            }
            for a in &basis {
                for b in &basis {
                    let ab = r.cup_product(a, b).unwrap();
                    let ba = r.cup_product(b, a).unwrap();
                    let sign = if a.degree % 2 == 1 && b.degree % 2 == 1 {
                        BigInt::from(-1)
                    } else {
                        BigInt::one()
                    };
                    assert_eq!(ab, r.scalar_mul(&sign, &ba), "commutativity in {text}");
                }
            }
            for a in &basis {
                for b in &basis {
                    if a.degree + b.degree > 12 {
                        continue;
                    }
                    for c in &basis {
                        if a.degree + b.degree + c.degree > 12 {
                            continue;
                        }
                        let left = r
                            .cup_product(&r.cup_product(a, b).unwrap(), c)
                            .unwrap();
                        let right = r
                            .cup_product(a, &r.cup_product(b, c).unwrap())
                            .unwrap();
                        assert_eq!(left, right, "associativity in {text}");
                    }
                }
            }
        }
    }

    /// `x -> z^2`, `y -> z^3` embeds each R-summand into `Z[z]/(qz)`;
    /// multiplication must commute with the embedding.
    #[test]
    fn rring_embedding_is_multiplicative() {
        for q in 2u64..=30 {
            let summand = RingSummand::RRing { modulus: BigInt::from(q) };
            let monos: Vec<usize> =
                (4..=24).filter(|&d| summand.basis_len(d) == 1).collect();
            for &d1 in &monos {
                for &d2 in &monos {
                    let (a1, b1) = rring_monomial(d1);
                    let (a2, b2) = rring_monomial(d2);
                    let z1 = 2 * a1 + 3 * b1;
                    let z2 = 2 * a2 + 3 * b2;
                    let prod = summand
                        .multiply(d1, &[BigInt::one()], d2, &[BigInt::one()])
                        .expect("product degree exists");
                    // Image of the product: coefficient of z^{z1+z2}.
                    let (ap, bp) = rring_monomial(d1 + d2);
                    assert_eq!(2 * ap + 3 * bp, z1 + z2, "degrees q={q}");
                    assert_eq!(prod, vec![BigInt::one()]);
                }
            }
        }
    }

    #[test]
    fn element_parsing_and_rendering() {
        let r = ring("[0,0;2,3,7]");
        let y = r.parse_element("s3:y").unwrap();
        assert_eq!(y.degree, 6);
        assert_eq!(r.render_element(&y), "s3:y");
        let e = r.parse_element("5*s3:x^2").unwrap();
        assert_eq!(r.render_element(&e), "s3:5*x^2");
        assert!(r.parse_element("s9:x").is_err());
        assert!(r.parse_element("s3:z").is_err());
        assert!(r.parse_element("s0:a1").is_err()); // genus 0 surface has no a1

        let r = ring("[1,1;2]");
        assert_eq!(r.parse_element("s0:x2").unwrap().degree, 1);
        let json = r.to_json();
        assert_eq!(json["summands"][0]["kind"], "truncated-degree-one");
    }
}
