//! The verification suite: every cross-check between the closed-form
//! pipeline and the cell-complex oracle, runnable on a single signature.
//!
//! Each check returns a named pass/fail record; expected discrepancies
//! between the published table rows and the internally consistent pipeline
//! surface as warnings rather than failures.

use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::abelian::FinAbGroup;
use crate::cohomology::{
    cohomology, homology, modes_expected_to_disagree, CohomologyMode,
};
use crate::linalg::snf;
use crate::oracle::{self, BottomRow, CellComplex};
use crate::presentation;
use crate::ring::{ring_structure, RingSummand};
use crate::signature::{GroupCase, Signature, ValidationError};
use crate::{l2, stabilizer};

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct SignatureReport {
    pub signature: Signature,
    pub checks: Vec<CheckReport>,
    pub warnings: Vec<String>,
}

impl SignatureReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn record(checks: &mut Vec<CheckReport>, name: &str, pass: bool, detail: String) {
    checks.push(CheckReport { name: name.to_string(), pass, detail });
}

/// The expected integral bottom row of the second page, by case.
///
/// With boundary present the face boundary class is primitive in the edge
/// kernel, so position (1,0) is torsion-free and the reflection vertices
/// carry the 2-torsion one row up. Without boundary the face boundary is
/// zero (orientable) or twice the cross-cap sum (non-orientable), which is
/// where the closed-case `Z` at (2,0) and `Z_2` at (1,0) come from.
pub fn expected_bottom_row(sig: &Signature) -> BottomRow {
    let c = sig.derived_counts();
    let g = sig.genus as usize;
    let boundary = c.k + c.d > 0;
    let (e2_10, e2_20) = match (sig.case(), boundary) {
        (GroupCase::NonOrientable, true) => {
            (FinAbGroup::free(g + c.k + c.d - 1), FinAbGroup::trivial())
        }
        (GroupCase::NonOrientable, false) => (
            FinAbGroup::free(g - 1).direct_sum(&FinAbGroup::cyclic_u64(2)),
            FinAbGroup::trivial(),
        ),
        (_, true) => {
            (FinAbGroup::free(2 * g + c.k + c.d - 1), FinAbGroup::trivial())
        }
        (_, false) => (FinAbGroup::free(2 * g), FinAbGroup::free(1)),
    };
    BottomRow { e2_00: FinAbGroup::free(1), e2_10, e2_20 }
}

/// Run every cross-check for one signature up to homological degree
/// `q_max`.
pub fn run_checks(sig: &Signature, q_max: usize) -> Result<SignatureReport, ValidationError> {
    sig.validate()?;
    let mut checks = Vec::new();
    let mut warnings = Vec::new();
    let counts = sig.derived_counts();

    // Abelianization against the degree-one homology formula.
    let h1 = homology(sig, 1)?;
    let ab = presentation::abelianization(sig)?;
    record(
        &mut checks,
        "h1-abelianization",
        h1 == ab,
        format!("H_1 formula {h1} vs Smith normal form {ab}"),
    );

    if sig.case() == GroupCase::NonOrientable {
        let pres = presentation::build_presentation(sig)?;
        let reduction = snf(&pres.relation_matrix());
        let units = reduction.rank - reduction.nonunit_factors().len();
        if units > 0 {
            warnings.push(format!(
                "dropped {units} unit invariant factor(s) from the w constants"
            ));
        }
    }

    // Equivariant Euler characteristic against the closed form.
    let complex = oracle::build_cell_complex(sig)?;
    let euler = oracle::equivariant_euler(&complex);
    let chi = l2::rational_euler_characteristic(sig)?;
    record(
        &mut checks,
        "euler-l2",
        euler == chi && euler == -sig.hyperbolic_measure(),
        format!("equivariant cell sum {euler} vs rational Euler characteristic {chi}"),
    );

    // Integral bottom row of the oracle.
    let row = oracle::bottom_row_e2(&complex);
    let expected = expected_bottom_row(sig);
    record(
        &mut checks,
        "bottom-row-e2",
        row == expected,
        format!(
            "({}, {}, {}) vs expected ({}, {}, {})",
            row.e2_00, row.e2_10, row.e2_20, expected.e2_00, expected.e2_10, expected.e2_20
        ),
    );
    if sig.case() == GroupCase::NonOrientable && counts.k + counts.d > 0 {
        warnings.push(
            "with boundary present the 2-torsion of H_1 lives in E2_{0,1} \
             (reflection vertices), not at E2_{1,0} as the closed-case formula suggests"
                .to_string(),
        );
    }

    // Mirror-row ranks over F_2.
    let f2_expected = counts.c_e + counts.c_t + counts.k - counts.c_o;
    let f2_ok = (1..=q_max.max(1))
        .all(|q| oracle::f2_row_rank(&complex, q) == f2_expected);
    record(
        &mut checks,
        "f2-row-rank",
        f2_ok,
        format!("rank d1 on mirror columns = C_E + C_T + k - C_O = {f2_expected} for q = 1..{q_max}"),
    );

    // Mod-2 homology ranks against universal coefficients, where the mod-2
    // sequence collapses (boundary present).
    if counts.k + counts.d > 0 {
        let mut bad = Vec::new();
        for q in 1..=q_max {
            let from_oracle = oracle::mod2_homology_rank(&complex, q);
            let prev = if q == 1 { homology(sig, 0)? } else { homology(sig, q - 1)? };
            let from_uct = homology(sig, q)?.tensor_2_rank() + prev.tor_2_rank();
            if from_oracle != from_uct {
                bad.push(format!("q={q}: oracle {from_oracle} vs uct {from_uct}"));
            }
        }
        record(
            &mut checks,
            "mod2-uct",
            bad.is_empty(),
            if bad.is_empty() {
                format!("mod-2 ranks agree with universal coefficients for q = 1..{q_max}")
            } else {
                bad.join("; ")
            },
        );
    } else {
        record(
            &mut checks,
            "mod2-uct",
            true,
            "not applicable: no boundary, mod-2 sequence does not collapse at page two".into(),
        );
    }

    // Cohomology mode audit.
    let mut unexpected = Vec::new();
    let mut documented = Vec::new();
    for q in 0..=q_max {
        let pd = cohomology(sig, q, CohomologyMode::ProofDerived)?;
        let ap = cohomology(sig, q, CohomologyMode::AsPrinted)?;
        let should_differ = modes_expected_to_disagree(sig, q);
        if pd == ap {
            if should_differ {
                unexpected.push(format!("q={q}: expected a Z_2^{} gap", counts.c_e));
            }
        } else if !should_differ {
            unexpected.push(format!("q={q}: modes differ unexpectedly ({pd} vs {ap})"));
        } else {
            let patched = pd.direct_sum(&FinAbGroup::elementary_2(counts.c_e));
            if patched == ap {
                documented.push(q.to_string());
            } else {
                unexpected.push(format!(
                    "q={q}: gap is not Z_2^{} ({pd} vs {ap})",
                    counts.c_e
                ));
            }
        }
    }
    record(
        &mut checks,
        "mode-audit",
        unexpected.is_empty(),
        if unexpected.is_empty() {
            "mode differences confined to the documented rows".into()
        } else {
            unexpected.join("; ")
        },
    );
    if !documented.is_empty() {
        warnings.push(format!(
            "cohomology modes differ by Z_2^{} at q = {} (published row vs universal coefficients)",
            counts.c_e,
            documented.join(", ")
        ));
    }

    // Ring checks for Fuchsian signatures.
    if sig.is_fuchsian() {
        let ring = ring_structure(sig).expect("validated Fuchsian signature");
        let mut bad = Vec::new();
        for q in 0..=q_max {
            let additive = ring.degree_component(q);
            let coh = cohomology(sig, q, CohomologyMode::ProofDerived)?;
            if additive != coh {
                bad.push(format!("q={q}: ring {additive} vs cohomology {coh}"));
            }
        }
        record(
            &mut checks,
            "ring-additive",
            bad.is_empty(),
            if bad.is_empty() {
                format!("graded pieces match cohomology for q = 0..{q_max}")
            } else {
                bad.join("; ")
            },
        );

        let mut embed_ok = true;
        let mut moduli = Vec::new();
        for summand in &ring.summands {
            if let RingSummand::RRing { modulus } = summand {
                moduli.push(modulus.to_string());
                embed_ok &= rring_embedding_multiplicative(modulus, 24);
            }
        }
        record(
            &mut checks,
            "rring-embedding",
            embed_ok,
            if moduli.is_empty() {
                "not applicable: no R-summands".into()
            } else {
                format!("x -> z^2, y -> z^3 multiplicative for moduli {}", moduli.join(", "))
            },
        );
    } else {
        record(&mut checks, "ring-additive", true, "not applicable: not Fuchsian".into());
        record(&mut checks, "rring-embedding", true, "not applicable: not Fuchsian".into());
    }

    Ok(SignatureReport { signature: sig.clone(), checks, warnings })
}

/// Check that cup products in an R-summand match multiplication of images
/// under `x -> z^2`, `y -> z^3` in `Z[z]/(qz)`, for all scaled monomial
/// pairs up to the given total degree.
pub fn rring_embedding_multiplicative(modulus: &num_bigint::BigInt, degree_cap: usize) -> bool {
    use crate::ring::{rring_monomial, RingDescription};
    use num_bigint::BigInt;
    use num_traits::Zero;

    let ring = RingDescription {
        summands: vec![
            RingSummand::Surface { genus: 0 },
            RingSummand::RRing { modulus: modulus.clone() },
        ],
    };
    // Image of the degree-d basis monomial: the z-exponent 2a + 3b.
    let z_exp = |d: usize| {
        let (a, b) = rring_monomial(d);
        2 * a + 3 * b
    };
    let degrees: Vec<usize> = (4..=degree_cap)
        .filter(|&d| d % 2 == 0 && (d % 4 == 0 || d >= 6))
        .collect();
    let mut coeffs: Vec<BigInt> = (1..=5).map(BigInt::from).collect();
    coeffs.push(modulus - BigInt::from(1));
    for &d1 in &degrees {
        for &d2 in &degrees {
            if d1 + d2 > degree_cap {
                continue;
            }
            if z_exp(d1) + z_exp(d2) != z_exp(d1 + d2) {
                return false;
            }
            for c1 in &coeffs {
                for c2 in &coeffs {
                    let e1 = ring.monomial(1, d1, 0, c1.clone()).expect("monomial");
                    let e2 = ring.monomial(1, d2, 0, c2.clone()).expect("monomial");
                    let p = ring.cup_product(&e1, &e2).expect("product");
                    let got = p
                        .components
                        .get(&1)
                        .map(|v| v[0].clone())
                        .unwrap_or_else(BigInt::zero);
                    // Image coefficients multiply mod q.
                    let want = (c1 * c2).mod_floor(modulus);
                    if got != want {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Consistency of the stabilizer tables themselves: universal coefficients
/// between the integral and mod-2 dihedral homology, and the dihedral
/// abelianization against its two-generator presentation.
pub fn dihedral_tables_consistent(n_max: u64, q_max: usize) -> bool {
    use crate::linalg::IntMatrix;
    for n in 2..=n_max {
        for q in 1..=q_max {
            let uct = stabilizer::dihedral_homology(n, q).tensor_2_rank()
                + stabilizer::dihedral_homology(n, q - 1).tor_2_rank();
            if uct != stabilizer::dihedral_homology_mod2_rank(n, q) {
                return false;
            }
        }
        // <r, t | r^2, t^n, (rt)^2> abelianized.
        let m = IntMatrix::from_i64(3, 2, &[2, 0, 0, n as i64, 2, 2]);
        let reduction = snf(&m);
        let h1 =
            FinAbGroup::from_invariants(2 - reduction.rank, reduction.nonunit_factors());
        if h1 != stabilizer::dihedral_homology(n, 1) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(text: &str) -> Signature {
        Signature::parse(text).unwrap()
    }

    #[test]
    fn all_checks_pass_on_reference_signatures() {
        for text in [
            "(0,0,+,[2,3,7],{})",
            "(0,0,+,[],{(2,2,2,3)})",
            "(1,1,+,[],{})",
            "(2,0,+,[],{})",
            "(2,0,-,[],{()})",
            "(1,0,-,[3],{()})",
            "(3,0,-,[],{})",
            "(0,0,+,[],{(3,3,5)})",
            "(1,1,+,[2,6],{(2,3),()})",
            "[0,0;2,4,4,3]",
        ] {
            let report = run_checks(&sig(text), 12).unwrap();
            assert!(
                report.all_pass(),
                "failed checks for {text}: {:?}",
                report
                    .checks
                    .iter()
                    .filter(|c| !c.pass)
                    .map(|c| format!("{}: {}", c.name, c.detail))
                    .collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn quadrilateral_reports_documented_mode_gap() {
        let report = run_checks(&sig("(0,0,+,[],{(2,2,2,3)})"), 12).unwrap();
        assert!(report.all_pass());
        assert!(report
            .warnings
            .iter()
            .any(|w| w.contains("modes differ by Z_2^3")));
    }

    #[test]
    fn triangle_group_has_no_mode_warning() {
        let report = run_checks(&sig("(0,0,+,[2,3,7],{})"), 12).unwrap();
        assert!(report.warnings.iter().all(|w| !w.contains("modes differ")));
    }

    #[test]
    fn invalid_signature_is_rejected() {
        assert!(run_checks(&sig("(0,0,+,[2,4,4],{})"), 8).is_err());
    }

    #[test]
    fn dihedral_table_consistency() {
        assert!(dihedral_tables_consistent(12, 16));
    }
}
