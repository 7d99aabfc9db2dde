//! Koszul complexes and bigraded Betti tables.
//!
//! For a graded module `M` over `Q[v_1..v_m]` the Koszul complex
//! `M ⊗ Λ(u_1..u_m)` with
//!
//! ```text
//! d(x ⊗ u_{s_1}∧..∧u_{s_i}) = Σ_k (-1)^{k-1} (v_{s_k}·x) ⊗ u_{s_1}∧..ŝ_k..∧u_{s_i}
//! ```
//!
//! computes `Tor_{Q[v]}(M, Q)`. Placing `u_r` in bidegree `(-1, 2)` makes the
//! differential preserve the second grading, so the complex splits into
//! finite strands: the strand at second index `j` has spaces
//! `C^{-i} = M_{j-i} ⊗ Λ^i` and `beta^{-i,2j} = dim H^{-i}` of that strand.
//! Each strand only reads module levels `<= j`, which is what makes truncated
//! Stanley-Reisner rings exact inputs for `j <= m`.
//!
//! `beta^{-i,2j}(Q[K])` equals the rank of `H^{2j-i}` of the moment-angle
//! complex `Z_K` in its usual cellular bigrading, which is why the Poincare
//! vector below is indexed by `k = 2j - i`.

use crate::combin::{binomial, subsets_lex};
use crate::exactla::{format_rational, parse_rational, Rational, SparseMatrix};
use crate::grmod::{GradedModule, ModuleError};
use rayon::prelude::*;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::{BTreeMap, HashMap};

/// One strand of the Koszul complex of a module: the chain of spaces
/// `C^0 <- C^{-1} <- .. <- C^{-i_max}` at a fixed second index.
#[derive(Debug, Clone)]
pub struct KoszulStrand {
    second_index: usize,
    space_dims: Vec<usize>,
    /// `diffs[i-1]` is `d_i : C^{-i} -> C^{-(i-1)}`.
    diffs: Vec<SparseMatrix>,
}

impl KoszulStrand {
    /// The strand's second index `j` (internal degree `2j`).
    pub fn second_index(&self) -> usize {
        self.second_index
    }

    /// `dim C^{-i}` for `i = 0..=min(j, m)`.
    pub fn space_dims(&self) -> &[usize] {
        &self.space_dims
    }

    /// The differential `d_i : C^{-i} -> C^{-(i-1)}`, for `1 <= i <= i_max`.
    pub fn differential(&self, i: usize) -> Option<&SparseMatrix> {
        if i == 0 {
            return None;
        }
        self.diffs.get(i - 1)
    }

    /// Panics unless consecutive differentials compose to zero. The check is
    /// exact and runs on every strand the engine builds.
    pub fn assert_square_zero(&self) {
        for i in 1..self.diffs.len() {
            let square = self.diffs[i - 1]
                .compose(&self.diffs[i])
                .expect("consecutive Koszul differentials are composable");
            assert!(
                square.is_zero(),
                "d∘d != 0 at strand j={} position {}: engine invariant broken",
                self.second_index,
                i
            );
        }
    }

    /// `dim H^{-i}` for each `i`, by exact rank computations.
    pub fn homology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.diffs.par_iter().map(SparseMatrix::rank).collect();
        let rank_at = |i: usize| -> usize {
            if i == 0 {
                0
            } else {
                ranks.get(i - 1).copied().unwrap_or(0)
            }
        };
        (0..self.space_dims.len())
            .map(|i| {
                let dim = self.space_dims[i];
                let cut = rank_at(i) + rank_at(i + 1);
                assert!(cut <= dim, "homology dimension would be negative");
                dim - cut
            })
            .collect()
    }
}

/// Build the strand at second index `j`, validating the module first.
pub fn strand(module: &GradedModule, j: usize) -> Result<KoszulStrand, ModuleError> {
    let violations = module.validate();
    if !violations.is_empty() {
        return Err(ModuleError::Invalid(violations));
    }
    Ok(strand_unchecked(module, j))
}

fn strand_unchecked(module: &GradedModule, j: usize) -> KoszulStrand {
    let m = module.var_count();
    let i_max = j.min(m);
    let subsets: Vec<Vec<Vec<usize>>> = (0..=i_max).map(|i| subsets_lex(m, i)).collect();
    let space_dims: Vec<usize> = (0..=i_max)
        .map(|i| module.level_dim(j - i) * binomial(m, i) as usize)
        .collect();
    let mut diffs = Vec::with_capacity(i_max);
    for i in 1..=i_max {
        let src_level = j - i;
        let dim_src = module.level_dim(src_level);
        let dim_dst = module.level_dim(src_level + 1);
        let rank_of: HashMap<&[usize], usize> = subsets[i - 1]
            .iter()
            .enumerate()
            .map(|(r, s)| (s.as_slice(), r))
            .collect();
        // Column-major views of the variable actions out of src_level; the
        // action is zero at or beyond the top stored level.
        let action_cols: Vec<Option<Vec<Vec<(usize, Rational)>>>> = (1..=m)
            .map(|var| {
                if dim_src == 0 || dim_dst == 0 || src_level >= module.top_level() {
                    None
                } else {
                    Some(module.mult(var, src_level).columns())
                }
            })
            .collect();
        let mut triplets = Vec::new();
        for (s_rank, subset) in subsets[i].iter().enumerate() {
            let mut dropped = Vec::with_capacity(i - 1);
            for (k, &var) in subset.iter().enumerate() {
                dropped.clear();
                dropped.extend(subset.iter().filter(|&&v| v != var).copied());
                let t_rank = rank_of[dropped.as_slice()];
                let negative = k % 2 == 1;
                if let Some(cols) = &action_cols[var - 1] {
                    for x in 0..dim_src {
                        for (y, coef) in &cols[x] {
                            let value = if negative { -coef } else { coef.clone() };
                            triplets.push((t_rank * dim_dst + y, s_rank * dim_src + x, value));
                        }
                    }
                }
            }
        }
        let matrix = SparseMatrix::from_triplets(space_dims[i - 1], space_dims[i], triplets)
            .expect("Koszul differential triplets are unique and in range");
        diffs.push(matrix);
    }
    KoszulStrand {
        second_index: j,
        space_dims,
        diffs,
    }
}

/// Second index beyond which every strand of `module` is empty.
pub fn full_j_max(module: &GradedModule) -> usize {
    module.top_level() + module.var_count()
}

/// The bigraded Betti table `beta^{-i,2j}` for `j = 0..=j_max`. Validates
/// the module once, builds strands in parallel, and asserts `d∘d = 0` on
/// every strand before taking ranks.
pub fn betti_table(module: &GradedModule, j_max: usize) -> Result<BettiTable, ModuleError> {
    let violations = module.validate();
    if !violations.is_empty() {
        return Err(ModuleError::Invalid(violations));
    }
    let per_strand: Vec<Vec<(usize, u64)>> = (0..=j_max)
        .into_par_iter()
        .map(|j| {
            let strand = strand_unchecked(module, j);
            strand.assert_square_zero();
            strand
                .homology_dims()
                .into_iter()
                .enumerate()
                .filter(|&(_, b)| b > 0)
                .map(|(i, b)| (i, b as u64))
                .collect()
        })
        .collect();
    let mut entries = BTreeMap::new();
    for (j, strand_entries) in per_strand.into_iter().enumerate() {
        for (i, b) in strand_entries {
            entries.insert((i, j), b);
        }
    }
    Ok(BettiTable {
        var_count: module.var_count(),
        entries,
    })
}

/// A bigraded Betti table: the nonzero `beta^{-i,2j}`, keyed by `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BettiFile", into = "BettiFile")]
pub struct BettiTable {
    var_count: usize,
    entries: BTreeMap<(usize, usize), u64>,
}

/// On-disk form: entries sorted by `(i, 2j)`, zeros omitted.
#[derive(Serialize, Deserialize)]
struct BettiFile {
    m: usize,
    entries: Vec<BettiEntry>,
}

#[derive(Serialize, Deserialize)]
struct BettiEntry {
    i: usize,
    j2: usize,
    beta: u64,
}

impl TryFrom<BettiFile> for BettiTable {
    type Error = String;

    fn try_from(file: BettiFile) -> Result<Self, String> {
        let mut entries = BTreeMap::new();
        for e in file.entries {
            if e.j2 % 2 != 0 {
                return Err(format!("second grading {} is odd", e.j2));
            }
            if e.i > file.m {
                return Err(format!("homological index {} exceeds m={}", e.i, file.m));
            }
            if e.beta == 0 {
                continue;
            }
            if entries.insert((e.i, e.j2 / 2), e.beta).is_some() {
                return Err(format!("duplicate entry at (i={}, 2j={})", e.i, e.j2));
            }
        }
        Ok(BettiTable {
            var_count: file.m,
            entries,
        })
    }
}

impl From<BettiTable> for BettiFile {
    fn from(table: BettiTable) -> BettiFile {
        BettiFile {
            m: table.var_count,
            entries: table
                .entries
                .into_iter()
                .map(|((i, j), beta)| BettiEntry { i, j2: 2 * j, beta })
                .collect(),
        }
    }
}

impl BettiTable {
    /// Build directly from nonzero entries keyed by `(i, j)`.
    pub(crate) fn from_entries(var_count: usize, entries: BTreeMap<(usize, usize), u64>) -> Self {
        debug_assert!(entries.values().all(|&b| b > 0));
        debug_assert!(entries.keys().all(|&(i, _)| i <= var_count));
        BettiTable { var_count, entries }
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    /// `beta^{-i,2j}`; zero when absent.
    pub fn beta(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero entries in `(i, j)` order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Totals `beta^{-i} = Σ_j beta^{-i,2j}` for `i = 0..=m`.
    pub fn total_betti(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.var_count + 1];
        for (&(i, _), &b) in &self.entries {
            out[i] += b;
        }
        out
    }

    /// Total rank: the sum of the whole table. For `Q[K]` this is the
    /// dimension of `H^*(Z_K; Q)`.
    pub fn hrk(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Ranks collected by total cohomological degree `k = 2j - i`.
    pub fn poincare_vector(&self) -> Vec<u64> {
        let Some(max_k) = self.entries.keys().map(|&(i, j)| 2 * j - i).max() else {
            return Vec::new();
        };
        let mut out = vec![0u64; max_k + 1];
        for (&(i, j), &b) in &self.entries {
            out[2 * j - i] += b;
        }
        out
    }

    /// Largest `i` with `beta^{-i} > 0`; `None` on the zero table.
    pub fn projective_dimension(&self) -> Option<usize> {
        self.entries.keys().map(|&(i, _)| i).max()
    }

    /// `Σ_i (-1)^i beta^{-i}`.
    pub fn euler_characteristic(&self) -> i64 {
        self.entries
            .iter()
            .map(|(&(i, _), &b)| {
                let b = i64::try_from(b).expect("Betti number fits i64");
                if i % 2 == 0 {
                    b
                } else {
                    -b
                }
            })
            .sum()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("table serialization cannot fail")
    }

    pub fn from_json_str(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| e.to_string())
    }

    /// Tab-separated form with header `i\t2j\tbeta`, rows sorted by `(i, 2j)`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("i\t2j\tbeta\n");
        for (&(i, j), &b) in &self.entries {
            out.push_str(&format!("{}\t{}\t{}\n", i, 2 * j, b));
        }
        out
    }

    /// The Poincaré vector as TSV with header `k\tdim`, one row per
    /// topological degree from 0 through the top nonzero degree.
    pub fn poincare_tsv(&self) -> String {
        let mut out = String::from("k\tdim\n");
        for (k, dim) in self.poincare_vector().iter().enumerate() {
            out.push_str(&format!("{k}\t{dim}\n"));
        }
        out
    }
}

/// Verdict of one check row or a whole report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Na,
}

/// A bound to compare against: integer or exact rational. Serialized as a
/// JSON number, or as a `"p/q"` string when not an integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundValue {
    Int(i64),
    Ratio(Rational),
}

impl Serialize for BoundValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            BoundValue::Int(n) => serializer.serialize_i64(*n),
            BoundValue::Ratio(r) => serializer.serialize_str(&format_rational(r)),
        }
    }
}

impl<'de> Deserialize<'de> for BoundValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Int(n) => Ok(BoundValue::Int(n)),
            Raw::Text(s) => parse_rational(&s)
                .map(BoundValue::Ratio)
                .map_err(D::Error::custom),
        }
    }
}

/// One comparison inside a check suite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRow {
    pub id: String,
    pub lhs: i64,
    pub rhs: BoundValue,
    pub status: CheckStatus,
}

/// Result of running one check suite over a Betti table or module:
/// identifying parameters, one row per comparison, and an overall verdict.
/// `overall` is `Pass` exactly when the suite's hypotheses hold and every
/// row passes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub suite: String,
    pub params: BTreeMap<String, serde_json::Value>,
    pub rows: Vec<CheckRow>,
    pub overall: CheckStatus,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.overall == CheckStatus::Pass
    }

    pub fn failed(&self) -> bool {
        self.overall == CheckStatus::Fail
    }
}
