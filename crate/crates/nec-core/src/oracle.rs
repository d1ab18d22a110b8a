//! Independent verification machinery built from the fundamental-domain
//! cell structure, without using any of the closed-form tables.
//!
//! From a signature we build the quotient cell complex of the fundamental
//! polygon (one face, paired edges, marked vertices with their stabilizers)
//! and then compute:
//!
//! * the equivariant Euler characteristic (stabilizer-weighted cell count),
//! * the integral bottom row of the equivariant spectral sequence via Smith
//!   normal form of the boundary matrices,
//! * ranks of the mod-2 rows, which determine the mod-2 homology of the
//!   group when the quotient has boundary.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::abelian::FinAbGroup;
use crate::linalg::{rank_mod2, snf, IntMatrix};
use crate::signature::{Sign, Signature, ValidationError};
use crate::stabilizer::StabilizerKind;

/// Which generator of the endpoint stabilizer a mirror edge's reflection
/// maps to. `First`/`Second` name the two reflections generating a dihedral
/// corner stabilizer in boundary order; `Generator` is the sole generator
/// of a reflection vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ReflectionTarget {
    Generator,
    FirstReflection,
    SecondReflection,
}

#[derive(Debug, Clone, Serialize)]
pub struct Vertex {
    pub label: String,
    pub stabilizer: StabilizerKind,
}

#[derive(Debug, Clone, Serialize)]
pub struct Edge {
    pub label: String,
    pub stabilizer: StabilizerKind,
    pub start: usize,
    pub end: usize,
    /// Restriction tags at (start, end); present exactly for mirror edges.
    pub targets: Option<(ReflectionTarget, ReflectionTarget)>,
}

/// Quotient cell structure of the fundamental polygon: one face whose
/// boundary word is recorded as traversed, with paired edges identified.
#[derive(Debug, Clone, Serialize)]
pub struct CellComplex {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    /// Face boundary as a signed edge sequence. Orientably paired edges
    /// appear once with each sign, non-orientably paired edges twice with
    /// the same sign, mirror edges once.
    pub boundary_word: Vec<(usize, i8)>,
}

/// The three integral bottom-row entries of the second page.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BottomRow {
    pub e2_00: FinAbGroup,
    pub e2_10: FinAbGroup,
    pub e2_20: FinAbGroup,
}

pub fn build_cell_complex(sig: &Signature) -> Result<CellComplex, ValidationError> {
    sig.validate()?;
    let r = sig.periods.len();
    let s = sig.cusps as usize;

    let mut vertices = vec![Vertex { label: "v0".into(), stabilizer: StabilizerKind::Trivial }];
    for (j, &m) in sig.periods.iter().enumerate() {
        vertices.push(Vertex {
            label: format!("v{}", j + 1),
            stabilizer: StabilizerKind::Cyclic(m),
        });
    }
    for j in 1..=s {
        vertices.push(Vertex {
            label: format!("v{}", r + j),
            stabilizer: StabilizerKind::InfiniteCyclic,
        });
    }
    // Per cycle: the base vertex w_{i,0} (a mirror-interior point, stabilized
    // by a single reflection) and the corner vertices w_{i,1}..w_{i,s_i}.
    let mut cycle_vertex_base = Vec::with_capacity(sig.cycles.len());
    for (i, cycle) in sig.cycles.iter().enumerate() {
        cycle_vertex_base.push(vertices.len());
        vertices.push(Vertex {
            label: format!("w{}_0", i + 1),
            stabilizer: StabilizerKind::Reflection,
        });
        for (l, &n) in cycle.iter().enumerate() {
            vertices.push(Vertex {
                label: format!("w{}_{}", i + 1, l + 1),
                stabilizer: StabilizerKind::Dihedral(n),
            });
        }
    }

    let mut edges = Vec::new();
    let mut boundary_word = Vec::new();

    // xi_j xi_j' pairs around the marked and ideal vertices.
    for j in 1..=(r + s) {
        let e = edges.len();
        edges.push(Edge {
            label: format!("xi{j}"),
            stabilizer: StabilizerKind::Trivial,
            start: 0,
            end: j,
            targets: None,
        });
        boundary_word.push((e, 1));
        boundary_word.push((e, -1));
    }

    // Boundary components: eps_i gamma_{i,0} .. gamma_{i,s_i} eps_i'.
    for (i, cycle) in sig.cycles.iter().enumerate() {
        let base = cycle_vertex_base[i];
        let si = cycle.len();
        let eps = edges.len();
        edges.push(Edge {
            label: format!("eps{}", i + 1),
            stabilizer: StabilizerKind::Trivial,
            start: 0,
            end: base,
            targets: None,
        });
        boundary_word.push((eps, 1));
        for l in 0..=si {
            let start = if l == 0 { base } else { base + l };
            let end = if l == si { base } else { base + l + 1 };
            let at_start = if l == 0 {
                ReflectionTarget::Generator
            } else {
                ReflectionTarget::SecondReflection
            };
            let at_end = if l == si {
                ReflectionTarget::Generator
            } else {
                ReflectionTarget::FirstReflection
            };
            let e = edges.len();
            edges.push(Edge {
                label: format!("gamma{}_{}", i + 1, l),
                stabilizer: StabilizerKind::Reflection,
                start,
                end,
                targets: Some((at_start, at_end)),
            });
            boundary_word.push((e, 1));
        }
        boundary_word.push((eps, -1));
    }

    // Handle edges at the base vertex.
    for t in 1..=(sig.genus as usize) {
        match sig.sign {
            Sign::Plus => {
                let a = edges.len();
                edges.push(Edge {
                    label: format!("a{t}"),
                    stabilizer: StabilizerKind::Trivial,
                    start: 0,
                    end: 0,
                    targets: None,
                });
                let b = edges.len();
                edges.push(Edge {
                    label: format!("b{t}"),
                    stabilizer: StabilizerKind::Trivial,
                    start: 0,
                    end: 0,
                    targets: None,
                });
                boundary_word.extend_from_slice(&[(a, 1), (b, 1), (a, -1), (b, -1)]);
            }
            Sign::Minus => {
                let a = edges.len();
                edges.push(Edge {
                    label: format!("a{t}"),
                    stabilizer: StabilizerKind::Trivial,
                    start: 0,
                    end: 0,
                    targets: None,
                });
                boundary_word.extend_from_slice(&[(a, 1), (a, 1)]);
            }
        }
    }

    Ok(CellComplex { vertices, edges, boundary_word })
}

impl CellComplex {
    pub fn mirror_edges(&self) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| self.edges[e].stabilizer == StabilizerKind::Reflection)
            .collect()
    }

    /// Vertex boundary matrix of the quotient complex: rows are vertex
    /// orbits, columns edge orbits.
    pub fn d1_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.vertices.len(), self.edges.len());
        for (j, edge) in self.edges.iter().enumerate() {
            let inc = m.get(edge.end, j) + BigInt::one();
            m.set(edge.end, j, inc);
            let dec = m.get(edge.start, j) - BigInt::one();
            m.set(edge.start, j, dec);
        }
        m
    }

    /// Face boundary vector, with the edge pairings already summed out.
    pub fn d2_vector(&self) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.edges.len()];
        for &(e, sign) in &self.boundary_word {
            v[e] += BigInt::from(sign);
        }
        v
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("complex serializes")
    }
}

/// Stabilizer-weighted Euler characteristic of the quotient complex. For a
/// valid signature this equals the negated hyperbolicity measure.
pub fn equivariant_euler(complex: &CellComplex) -> BigRational {
    let mut chi = BigRational::one(); // the single face, trivial stabilizer
    for v in &complex.vertices {
        chi += v.stabilizer.chi_q();
    }
    for e in &complex.edges {
        chi -= e.stabilizer.chi_q();
    }
    chi
}

/// The integral entries `E^2_{0,0}, E^2_{1,0}, E^2_{2,0}` computed by Smith
/// normal form from the boundary matrices.
pub fn bottom_row_e2(complex: &CellComplex) -> BottomRow {
    let d1 = complex.d1_matrix();
    let n_edges = complex.edges.len();
    let n_vertices = complex.vertices.len();
    let d1_snf = snf(&d1);

    let e2_00 = FinAbGroup::from_invariants(
        n_vertices - d1_snf.rank,
        d1_snf.nonunit_factors(),
    );

    let v = complex.d2_vector();
    let kernel_rank = n_edges - d1_snf.rank;
    let (e2_10, e2_20) = if v.iter().all(|x| x.is_zero()) {
        (FinAbGroup::free(kernel_rank), FinAbGroup::free(1))
    } else {
        // The face boundary lies in ker(d1), a saturated sublattice of the
        // edge lattice, so the index of the boundary inside the kernel is
        // the gcd of its entries.
        let mut content = BigInt::zero();
        for x in &v {
            content = content.gcd(x);
        }
        let torsion = if content.is_one() { vec![] } else { vec![content] };
        (
            FinAbGroup::from_invariants(kernel_rank - 1, torsion),
            FinAbGroup::trivial(),
        )
    };
    BottomRow { e2_00, e2_10, e2_20 }
}

/// Rank over the two-element field of the row-`q` differential out of the
/// mirror-edge column, assembled from the restriction tags.
///
/// Each mirror edge contributes one column; the rows run over a basis of
/// the mod-2 degree-`q` homology of every vertex stabilizer. The tagged
/// generator of an even dihedral corner hits independent classes for its
/// two incident mirrors; at odd dihedral corners and reflection vertices
/// both incident mirrors hit the single class.
pub fn f2_row_rank(complex: &CellComplex, q: usize) -> usize {
    assert!(q >= 1, "row differentials are defined for q >= 1");
    let mut offsets = Vec::with_capacity(complex.vertices.len());
    let mut rows = 0usize;
    for v in &complex.vertices {
        offsets.push(rows);
        rows += v.stabilizer.homology_mod2_rank(q);
    }
    let mirrors = complex.mirror_edges();
    let mut m = IntMatrix::zeros(rows, mirrors.len());
    for (col, &e) in mirrors.iter().enumerate() {
        let edge = &complex.edges[e];
        let (at_start, at_end) = edge.targets.expect("mirror edges carry tags");
        for (vertex, target) in [(edge.start, at_start), (edge.end, at_end)] {
            let block = complex.vertices[vertex].stabilizer.homology_mod2_rank(q);
            let base = offsets[vertex];
            let mut toggle = |row: usize| {
                let flipped = if m.get(row, col).is_zero() {
                    BigInt::one()
                } else {
                    BigInt::zero()
                };
                m.set(row, col, flipped);
            };
            match target {
                ReflectionTarget::Generator | ReflectionTarget::FirstReflection => {
                    toggle(base);
                }
                ReflectionTarget::SecondReflection => {
                    toggle(base);
                    if block >= 2 {
                        toggle(base + 1);
                    }
                }
            }
        }
    }
    rank_mod2(&m)
}

/// Rank of the mod-2 homology of the group in degree `q >= 1`, from the
/// mod-2 spectral sequence. The sequence collapses at the second page as
/// long as the quotient has boundary (some mirror edge exists), which is
/// the regime in which this tally is used.
pub fn mod2_homology_rank(complex: &CellComplex, q: usize) -> usize {
    assert!(q >= 1);
    let col0 = |deg: usize| -> usize {
        complex
            .vertices
            .iter()
            .map(|v| v.stabilizer.homology_mod2_rank(deg))
            .sum()
    };
    let e2_0q = col0(q) - f2_row_rank(complex, q);
    let e2_1_below = if q >= 2 {
        complex.mirror_edges().len() - f2_row_rank(complex, q - 1)
    } else {
        // Degree-zero row over F_2: every edge contributes, and the face
        // boundary may kill one kernel class.
        let d1 = complex.d1_matrix();
        let kernel = complex.edges.len() - rank_mod2(&d1);
        let face_nonzero = complex.d2_vector().iter().any(|x| x.is_odd());
        kernel - usize::from(face_nonzero)
    };
    e2_0q + e2_1_below
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::Signature;

    fn complex(text: &str) -> CellComplex {
        build_cell_complex(&Signature::parse(text).unwrap()).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn group(rank: usize, torsion: &[u64]) -> FinAbGroup {
        FinAbGroup::canonical_form(
            rank,
            &torsion.iter().map(|&t| BigInt::from(t)).collect::<Vec<_>>(),
        )
    }

    #[test]
    fn triangle_group_cell_counts() {
        let c = complex("(0,0,+,[2,3,7],{})");
        assert_eq!(c.vertices.len(), 4);
        assert_eq!(c.edges.len(), 3);
        assert!(c
            .vertices
            .iter()
            .skip(1)
            .all(|v| matches!(v.stabilizer, StabilizerKind::Cyclic(_))));
        assert!(c.mirror_edges().is_empty());
    }

    #[test]
    fn quadrilateral_cell_counts() {
        let c = complex("(0,0,+,[],{(2,2,2,3)})");
        assert_eq!(c.vertices.len(), 6);
        assert_eq!(c.edges.len(), 6);
        assert_eq!(c.mirror_edges().len(), 5);
        assert_eq!(c.vertices[1].stabilizer, StabilizerKind::Reflection);
        assert_eq!(c.vertices[5].stabilizer, StabilizerKind::Dihedral(3));
    }

    #[test]
    fn surface_cell_counts() {
        let c = complex("(2,0,+,[],{})");
        assert_eq!((c.vertices.len(), c.edges.len()), (1, 4));
    }

    #[test]
    fn orbit_counts_match_signature_counts() {
        for text in [
            "(0,0,+,[2,3,7],{})",
            "(0,0,+,[],{(2,2,2,3)})",
            "(1,1,+,[3],{(2,2),()})",
            "(2,0,-,[4],{(3,5)})",
        ] {
            let sig = Signature::parse(text).unwrap();
            let counts = sig.derived_counts();
            let c = build_cell_complex(&sig).unwrap();
            let genus_edges = match sig.sign {
                Sign::Plus => 2 * sig.genus as usize,
                Sign::Minus => sig.genus as usize,
            };
            assert_eq!(
                c.vertices.len(),
                1 + counts.r + counts.s + counts.k + counts.d + counts.sum_si,
                "vertices for {text}"
            );
            assert_eq!(
                c.edges.len(),
                genus_edges
                    + counts.r
                    + counts.s
                    + (counts.k + counts.d)
                    + (counts.k + counts.sum_si + counts.d),
                "edges for {text}"
            );
        }
    }

    #[test]
    fn equivariant_euler_examples() {
        assert_eq!(equivariant_euler(&complex("(0,0,+,[2,3,7],{})")), rat(-1, 42));
        assert_eq!(equivariant_euler(&complex("(0,0,+,[],{(2,2,2,3)})")), rat(-1, 12));
        assert_eq!(equivariant_euler(&complex("(2,0,+,[],{})")), rat(-2, 1));
    }

    #[test]
    fn euler_equals_negated_measure() {
        for text in [
            "(1,1,+,[2,6],{(2,3),()})",
            "(3,0,-,[5],{(4,4)})",
            "(1,2,+,[],{})",
        ] {
            let sig = Signature::parse(text).unwrap();
            let c = build_cell_complex(&sig).unwrap();
            assert_eq!(equivariant_euler(&c), -sig.hyperbolic_measure(), "{text}");
        }
    }

    #[test]
    fn bottom_row_triangle_group() {
        let row = bottom_row_e2(&complex("(0,0,+,[2,3,7],{})"));
        assert_eq!(row.e2_00, group(1, &[]));
        assert_eq!(row.e2_10, group(0, &[]));
        assert_eq!(row.e2_20, group(1, &[]));
    }

    #[test]
    fn bottom_row_quadrilateral() {
        let row = bottom_row_e2(&complex("(0,0,+,[],{(2,2,2,3)})"));
        assert_eq!(row.e2_00, group(1, &[]));
        assert_eq!(row.e2_10, group(0, &[]));
        assert_eq!(row.e2_20, group(0, &[]));
    }

    /// Non-orientable closed quotient: the face boundary is twice the sum of
    /// the cross-cap loops, leaving 2-torsion at position (1,0).
    #[test]
    fn bottom_row_nonorientable_closed() {
        let row = bottom_row_e2(&complex("(3,0,-,[],{})"));
        assert_eq!(row.e2_00, group(1, &[]));
        assert_eq!(row.e2_10, group(2, &[2]));
        assert_eq!(row.e2_20, group(0, &[]));
    }

    /// Non-orientable with a boundary component: a mirror edge enters the
    /// face boundary with coefficient one, so the boundary class is
    /// primitive and position (1,0) is torsion-free; the 2-torsion of H_1
    /// sits in the row above, carried by the reflection vertex. The sum of
    /// the two filtration pieces recovers H_1 = Z^2 + Z_2.
    #[test]
    fn bottom_row_nonorientable_with_boundary() {
        let sig = Signature::parse("(2,0,-,[],{()})").unwrap();
        let row = bottom_row_e2(&build_cell_complex(&sig).unwrap());
        assert_eq!(row.e2_00, group(1, &[]));
        assert_eq!(row.e2_10, group(2, &[]));
        assert_eq!(row.e2_20, group(0, &[]));

        let h1 = crate::presentation::abelianization(&sig).unwrap();
        assert_eq!(h1, group(2, &[2]));
        // Degree-one part of column 0: the lone reflection vertex.
        let e2_01 = FinAbGroup::cyclic_u64(2);
        assert_eq!(row.e2_10.direct_sum(&e2_01), h1);
    }

    #[test]
    fn f2_row_rank_examples() {
        let c = complex("(0,0,+,[],{(2,2,2,3)})");
        for q in 1..=5 {
            assert_eq!(f2_row_rank(&c, q), 5, "q = {q}");
        }
        // All-odd cycle: one kernel class survives, rank drops to
        // C_E + C_T + k - C_O = 0 + 3 + 1 - 1 = 3.
        let c = complex("(0,0,+,[],{(3,3,5)})");
        for q in 1..=5 {
            assert_eq!(f2_row_rank(&c, q), 3, "q = {q}");
        }
        // Empty cycle only: the lone mirror edge is a loop and maps to zero.
        let c = complex("(1,0,-,[3],{()})");
        for q in 1..=5 {
            assert_eq!(f2_row_rank(&c, q), 0, "q = {q}");
        }
    }

    #[test]
    fn mod2_rank_examples() {
        // Quadrilateral group at q = 2: (11 - 5) + 0 = 6, matching the
        // universal-coefficient rank of H_2 = H_1 = Z_2^3.
        let c = complex("(0,0,+,[],{(2,2,2,3)})");
        assert_eq!(mod2_homology_rank(&c, 2), 6);

        // Genus-two surface at q = 1.
        let c = complex("(2,0,+,[],{})");
        assert_eq!(mod2_homology_rank(&c, 1), 4);

        // All-odd cycle at q = 1: H_1 = Z_2, rank 1.
        let c = complex("(0,0,+,[],{(3,3,5)})");
        assert_eq!(mod2_homology_rank(&c, 1), 1);
    }

    #[test]
    fn complex_json_dump_has_tags() {
        let c = complex("(0,0,+,[],{(3,3,5)})");
        let json = c.to_json();
        assert!(json["edges"].as_array().unwrap().iter().any(|e| {
            e["targets"].is_array() || !e["targets"].is_null()
        }));
        assert_eq!(json["vertices"][0]["label"], "v0");
    }
}
