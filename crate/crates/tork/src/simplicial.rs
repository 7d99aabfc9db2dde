//! Abstract simplicial complexes on a labeled vertex set {1, .., m}.
//!
//! Faces are stored as m-bit masks (bit `i-1` is vertex `i`), always
//! downward-closed and always containing the empty face. Ghost vertices —
//! labels that appear in no face — are legal and meaningful downstream.
//! Besides the face-set operations this module provides reduced simplicial
//! cohomology over the rationals, exhaustive enumeration of all complexes on
//! small vertex sets, and seeded pseudorandom sampling.

use crate::exactla::SparseMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Hard cap: face masks live in a `u64`.
pub const MAX_VERTICES: usize = 63;

/// Exhaustive enumeration refuses larger vertex sets (the count explodes as
/// a Dedekind number); use [`sample_complexes`] beyond this.
pub const EXHAUSTIVE_ENUM_CAP: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("vertex {vertex} outside 1..={vertex_count}")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("{vertex_count} vertices exceeds the supported maximum {MAX_VERTICES}")]
    TooManyVertices { vertex_count: usize },
    #[error("exhaustive enumeration on {vertex_count} vertices exceeds the cap {cap}; use sampled mode")]
    EnumerationCapExceeded { vertex_count: usize, cap: usize },
    #[error("malformed complex JSON: {0}")]
    Parse(String),
}

/// A simplicial complex: downward-closed face set over {1, .., m}, with the
/// empty face always present. `m` may exceed the largest vertex used — the
/// extras are ghost vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    faces: BTreeSet<u64>,
}

/// On-disk form: `{"m": 4, "facets": [[1,2],[2,3]]}` with 1-based vertices.
#[derive(Serialize, Deserialize)]
struct ComplexFile {
    facets: Vec<Vec<usize>>,
    m: usize,
}

/// Convert a sorted vertex list to a face mask, validating the range.
pub fn vertices_to_mask(vertices: &[usize], vertex_count: usize) -> Result<u64, ComplexError> {
    let mut mask = 0u64;
    for &v in vertices {
        if v == 0 || v > vertex_count {
            return Err(ComplexError::VertexOutOfRange {
                vertex: v,
                vertex_count,
            });
        }
        mask |= 1 << (v - 1);
    }
    Ok(mask)
}

/// Ascending vertex labels of a face mask.
pub fn mask_to_vertices(mask: u64) -> Vec<usize> {
    (0..64).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

impl SimplicialComplex {
    /// Downward closure of the given facets. The empty face is always
    /// included, so an empty facet list yields the complex `{∅}`.
    pub fn from_facets(vertex_count: usize, facets: &[Vec<usize>]) -> Result<Self, ComplexError> {
        if vertex_count > MAX_VERTICES {
            return Err(ComplexError::TooManyVertices { vertex_count });
        }
        let mut faces = BTreeSet::new();
        faces.insert(0);
        for facet in facets {
            let top = vertices_to_mask(facet, vertex_count)?;
            // Submask walk enumerates every subset of `top`.
            let mut s = top;
            loop {
                faces.insert(s);
                if s == 0 {
                    break;
                }
                s = (s - 1) & top;
            }
        }
        Ok(SimplicialComplex {
            vertex_count,
            faces,
        })
    }

    /// Construct directly from a face set known to be downward-closed.
    fn from_closed_faces(vertex_count: usize, faces: BTreeSet<u64>) -> Self {
        debug_assert!(faces.contains(&0));
        SimplicialComplex {
            vertex_count,
            faces,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn contains_face(&self, mask: u64) -> bool {
        self.faces.contains(&mask)
    }

    /// Face masks in ascending numeric order.
    pub fn faces(&self) -> impl Iterator<Item = u64> + '_ {
        self.faces.iter().copied()
    }

    /// Dimension: largest face cardinality minus one; `-1` for `{∅}`.
    pub fn dimension(&self) -> i32 {
        self.faces
            .iter()
            .map(|f| f.count_ones() as i32 - 1)
            .max()
            .expect("face set always holds the empty face")
    }

    /// Maximal faces, sorted by (cardinality, mask).
    pub fn facets(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .faces
            .iter()
            .copied()
            .filter(|&f| {
                !self
                    .faces
                    .iter()
                    .any(|&g| g != f && g & f == f)
            })
            .collect();
        out.sort_by_key(|&f| (f.count_ones(), f));
        out
    }

    /// Minimal non-faces, sorted by (cardinality, mask). Every minimal
    /// non-face is a face plus one vertex, so the search walks face-vertex
    /// pairs instead of the full power set.
    pub fn minimal_non_faces(&self) -> Vec<u64> {
        let mut found = BTreeSet::new();
        for &f in &self.faces {
            for v in 0..self.vertex_count {
                let cand = f | 1 << v;
                if cand == f || self.faces.contains(&cand) {
                    continue;
                }
                let mut all_coatoms_in = true;
                let mut rest = cand;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    if !self.faces.contains(&(cand ^ bit)) {
                        all_coatoms_in = false;
                        break;
                    }
                    rest ^= bit;
                }
                if all_coatoms_in {
                    found.insert(cand);
                }
            }
        }
        let mut out: Vec<u64> = found.into_iter().collect();
        out.sort_by_key(|&f| (f.count_ones(), f));
        out
    }

    /// Full subcomplex on the vertex subset `w` (given as a mask): the faces
    /// contained in `w`, re-indexed to {1, .., |w|} preserving label order.
    pub fn full_subcomplex(&self, w: u64) -> SimplicialComplex {
        assert_eq!(
            w >> self.vertex_count,
            0,
            "subset uses vertices beyond the vertex set"
        );
        // Old bit position -> new bit position among the bits of w.
        let mut faces = BTreeSet::new();
        for &f in &self.faces {
            if f & w == f {
                let mut packed = 0u64;
                let mut new_bit = 0;
                for b in 0..self.vertex_count {
                    if w >> b & 1 == 1 {
                        if f >> b & 1 == 1 {
                            packed |= 1 << new_bit;
                        }
                        new_bit += 1;
                    }
                }
                faces.insert(packed);
            }
        }
        SimplicialComplex::from_closed_faces(w.count_ones() as usize, faces)
    }

    /// Dimensions of reduced rational cohomology, indexed so that entry `k`
    /// is `dim H~^{k-1}`; the vector covers degrees -1, 0, .., dim K.
    ///
    /// Cochains are the augmented simplicial complex: the empty face spans
    /// degree -1, and a complex with no vertices has `H~^{-1} = Q`. Faces are
    /// oriented by ascending vertex label.
    pub fn reduced_cohomology_dims(&self) -> Vec<usize> {
        let top = self.dimension(); // q runs over -1..=top
        let sizes = (top + 2) as usize; // face cardinalities 0..=top+1
        let mut by_size: Vec<Vec<u64>> = vec![Vec::new(); sizes];
        for &f in &self.faces {
            by_size[f.count_ones() as usize].push(f);
        }
        // BTreeSet iteration is ascending, so each bucket is already sorted.
        let dims: Vec<usize> = by_size.iter().map(Vec::len).collect();
        // delta[k]: C^{q=k-1} -> C^{q=k}, i.e. size-k faces to size-(k+1) faces.
        let mut ranks = vec![0usize; sizes + 1];
        for k in 1..sizes {
            let mut triplets = Vec::new();
            for (r, &tau) in by_size[k].iter().enumerate() {
                let mut sign_pos = 0;
                let mut rest = tau;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    let sigma = tau ^ bit;
                    // sigma is downward-closed in, so always present
                    let c = by_size[k - 1]
                        .binary_search(&sigma)
                        .expect("coface of a face is a face");
                    let sign = if sign_pos % 2 == 0 { 1 } else { -1 };
                    triplets.push((r, c, crate::exactla::ratio_i64(sign)));
                    sign_pos += 1;
                    rest ^= bit;
                }
            }
            let delta = SparseMatrix::from_triplets(by_size[k].len(), by_size[k - 1].len(), triplets)
                .expect("coboundary triplets are in range and duplicate-free");
            ranks[k] = delta.rank();
        }
        // H~^q = ker(delta from C^q) / im(delta into C^q), with q = k-1.
        (0..sizes)
            .map(|k| dims[k] - ranks[k + 1] - ranks[k])
            .collect()
    }

    /// Reduced Euler characteristic: alternating sum over nonempty faces,
    /// offset by the empty face.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .map(|f| if f.count_ones() % 2 == 0 { -1 } else { 1 })
            .sum()
    }

    /// Canonical JSON: facets as sorted vertex lists, sorted lexicographically,
    /// keys in alphabetical order. Equal complexes produce identical bytes.
    pub fn canonical_json(&self) -> String {
        let facets: Vec<Vec<usize>> = {
            let mut fs: Vec<Vec<usize>> = self.facets().iter().map(|&f| mask_to_vertices(f)).collect();
            fs.sort();
            fs
        };
        serde_json::to_string(&ComplexFile {
            facets,
            m: self.vertex_count,
        })
        .expect("complex serialization cannot fail")
    }

    /// Parse the `{"m", "facets"}` schema, validating vertex ranges.
    pub fn from_json_str(text: &str) -> Result<Self, ComplexError> {
        let file: ComplexFile =
            serde_json::from_str(text).map_err(|e| ComplexError::Parse(e.to_string()))?;
        SimplicialComplex::from_facets(file.m, &file.facets)
    }
}

/// Every simplicial complex on `m` labeled vertices (including `{∅}` and all
/// ghost-vertex variants), in a fixed order: subsets of {1,..,m} are sorted
/// by (cardinality, mask) and complexes are emitted in lexicographic order of
/// their indicator vectors over that list, absent-before-present.
pub fn enumerate_complexes(
    vertex_count: usize,
) -> Result<impl Iterator<Item = SimplicialComplex>, ComplexError> {
    if vertex_count > EXHAUSTIVE_ENUM_CAP {
        return Err(ComplexError::EnumerationCapExceeded {
            vertex_count,
            cap: EXHAUSTIVE_ENUM_CAP,
        });
    }
    let mut order: Vec<u64> = (1..(1u64 << vertex_count)).collect();
    order.sort_by_key(|&s| (s.count_ones(), s));
    let mut out = Vec::new();
    let mut chosen: BTreeSet<u64> = BTreeSet::new();
    chosen.insert(0);
    fn rec(
        order: &[u64],
        idx: usize,
        vertex_count: usize,
        chosen: &mut BTreeSet<u64>,
        out: &mut Vec<SimplicialComplex>,
    ) {
        if idx == order.len() {
            out.push(SimplicialComplex::from_closed_faces(
                vertex_count,
                chosen.clone(),
            ));
            return;
        }
        let s = order[idx];
        rec(order, idx + 1, vertex_count, chosen, out);
        let mut closed = true;
        let mut rest = s;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            if !chosen.contains(&(s ^ bit)) {
                closed = false;
                break;
            }
            rest ^= bit;
        }
        if closed {
            chosen.insert(s);
            rec(order, idx + 1, vertex_count, chosen, out);
            chosen.remove(&s);
        }
    }
    rec(&order, 0, vertex_count, &mut chosen, &mut out);
    Ok(out.into_iter())
}

/// Seeded pseudorandom complexes on `m` vertices: each sample closes a random
/// facet list downward. The stream depends only on `(vertex_count, seed)`,
/// never on platform or thread count.
pub fn sample_complexes(
    vertex_count: usize,
    count: usize,
    seed: u64,
) -> Result<impl Iterator<Item = SimplicialComplex>, ComplexError> {
    if vertex_count > MAX_VERTICES {
        return Err(ComplexError::TooManyVertices { vertex_count });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let facet_count = rng.gen_range(0..=vertex_count + 1);
        let mut faces = BTreeSet::new();
        faces.insert(0u64);
        for _ in 0..facet_count {
            let top = if vertex_count == 0 {
                0
            } else {
                rng.gen_range(1..(1u64 << vertex_count))
            };
            let mut s = top;
            loop {
                faces.insert(s);
                if s == 0 {
                    break;
                }
                s = (s - 1) & top;
            }
        }
        out.push(SimplicialComplex::from_closed_faces(vertex_count, faces));
    }
    Ok(out.into_iter())
}
