//! Finitely graded modules over the polynomial ring `Q[v_1..v_m]`.
//!
//! A module is a list of level dimensions `dim M_t` for `t = 0..t_max`
//! together with one matrix per variable and level for the degree-raising
//! action `v_i : M_t -> M_{t+1}` (internal degree 2t in the ambient grading,
//! since every `v_i` sits in degree 2). Multiplication out of the top stored
//! level is zero, so every value of this type is a genuine finite-dimensional
//! module; Stanley-Reisner rings enter as truncations, which is harmless for
//! the Koszul strands read downstream because the strand at second index `j`
//! only looks at levels `<= j`.
//!
//! Monomial bases are ordered degree-by-degree, descending lexicographically
//! on exponent vectors (so `v_1^t` comes first and `v_m^t` last).

use crate::exactla::{parse_rational, ratio_i64, MatrixError, Rational, SparseMatrix};
use crate::simplicial::SimplicialComplex;
use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModuleError {
    #[error("malformed module JSON: {0}")]
    Parse(String),
    #[error("module has no levels")]
    NoLevels,
    #[error("variable {var} outside 1..={var_count}")]
    VarOutOfRange { var: usize, var_count: usize },
    #[error("level {level} has no outgoing multiplication (levels 0..{level_count})")]
    LevelOutOfRange { level: usize, level_count: usize },
    #[error("bad entry for v_{var} at level {level}: {source}")]
    Entry {
        var: usize,
        level: usize,
        source: MatrixError,
    },
    #[error("module fails validation: {}", format_violations(.0))]
    Invalid(Vec<Violation>),
}

fn format_violations(vs: &[Violation]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// One way a module can fail [`GradedModule::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `mult[var][level]` is not `dim M_{level+1}` x `dim M_level`.
    Shape {
        var: usize,
        level: usize,
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },
    /// `v_a` and `v_b` fail to commute out of `level`.
    Commutativity { var_a: usize, var_b: usize, level: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape {
                var,
                level,
                expected_rows,
                expected_cols,
                rows,
                cols,
            } => write!(
                f,
                "v_{var} at level {level} is {rows}x{cols}, expected {expected_rows}x{expected_cols}"
            ),
            Violation::Commutativity { var_a, var_b, level } => write!(
                f,
                "v_{var_a} and v_{var_b} do not commute out of level {level}"
            ),
        }
    }
}

/// A finitely graded `Q[v_1..v_m]`-module, immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedModule {
    var_count: usize,
    level_dims: Vec<usize>,
    /// `mult[i][t]` is the action of `v_{i+1}` from level `t` to `t+1`;
    /// each inner vector has `level_dims.len() - 1` matrices.
    mult: Vec<Vec<SparseMatrix>>,
}

/// On-disk form. Blocks may be omitted for zero matrices; `var` is 1-based,
/// `level` 0-based, entry rows/columns 0-based.
#[derive(Serialize, Deserialize)]
struct ModuleFile {
    m: usize,
    levels: Vec<usize>,
    mult: Vec<MultBlock>,
}

#[derive(Serialize, Deserialize)]
struct MultBlock {
    var: usize,
    level: usize,
    entries: Vec<(usize, usize, String)>,
}

impl GradedModule {
    /// Assemble from parts. The `mult` array must already have one matrix per
    /// variable and consecutive level pair; shape and commutativity problems
    /// are left to [`validate`](Self::validate).
    pub fn from_parts(
        var_count: usize,
        level_dims: Vec<usize>,
        mult: Vec<Vec<SparseMatrix>>,
    ) -> Result<Self, ModuleError> {
        if level_dims.is_empty() {
            return Err(ModuleError::NoLevels);
        }
        let steps = level_dims.len() - 1;
        if mult.len() != var_count || mult.iter().any(|per_var| per_var.len() != steps) {
            return Err(ModuleError::Parse(format!(
                "expected {var_count} variables x {steps} level steps of matrices"
            )));
        }
        Ok(GradedModule {
            var_count,
            level_dims,
            mult,
        })
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn level_dims(&self) -> &[usize] {
        &self.level_dims
    }

    /// Dimension of level `t`; zero beyond the stored range.
    pub fn level_dim(&self, t: usize) -> usize {
        self.level_dims.get(t).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.level_dims.iter().sum()
    }

    /// Index of the last stored level.
    pub fn top_level(&self) -> usize {
        self.level_dims.len() - 1
    }

    /// The action of `v_var` (1-based) out of `level`.
    pub fn mult(&self, var: usize, level: usize) -> &SparseMatrix {
        &self.mult[var - 1][level]
    }

    /// Check shapes and pairwise commutativity; empty means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let steps = self.level_dims.len() - 1;
        for var in 0..self.var_count {
            for t in 0..steps {
                let mat = &self.mult[var][t];
                let (er, ec) = (self.level_dims[t + 1], self.level_dims[t]);
                if mat.rows() != er || mat.cols() != ec {
                    out.push(Violation::Shape {
                        var: var + 1,
                        level: t,
                        expected_rows: er,
                        expected_cols: ec,
                        rows: mat.rows(),
                        cols: mat.cols(),
                    });
                }
            }
        }
        if !out.is_empty() {
            return out; // commutativity products would be malformed anyway
        }
        for a in 0..self.var_count {
            for b in a + 1..self.var_count {
                for t in 0..steps.saturating_sub(1) {
                    let ab = self.mult[a][t + 1].compose(&self.mult[b][t]);
                    let ba = self.mult[b][t + 1].compose(&self.mult[a][t]);
                    if ab.expect("shapes checked") != ba.expect("shapes checked") {
                        out.push(Violation::Commutativity {
                            var_a: a + 1,
                            var_b: b + 1,
                            level: t,
                        });
                    }
                }
            }
        }
        out
    }

    /// Graded dual with the top nonzero level of `self` re-anchored at level
    /// 0: level dims reverse and each multiplication matrix transposes. Zero
    /// levels at either end are trimmed first (a pure grading shift).
    pub fn dual_module(&self) -> GradedModule {
        let lo = self.level_dims.iter().position(|&d| d > 0);
        let Some(lo) = lo else {
            return GradedModule {
                var_count: self.var_count,
                level_dims: vec![0],
                mult: vec![Vec::new(); self.var_count],
            };
        };
        let hi = self
            .level_dims
            .iter()
            .rposition(|&d| d > 0)
            .expect("nonzero level exists");
        let level_dims: Vec<usize> = (0..=hi - lo).map(|t| self.level_dims[hi - t]).collect();
        let mult: Vec<Vec<SparseMatrix>> = (0..self.var_count)
            .map(|var| {
                (0..hi - lo)
                    .map(|t| self.mult[var][hi - 1 - t].transpose())
                    .collect()
            })
            .collect();
        GradedModule {
            var_count: self.var_count,
            level_dims,
            mult,
        }
    }

    /// Parse and validate the `{"m", "levels", "mult"}` schema.
    pub fn from_json_str(text: &str) -> Result<Self, ModuleError> {
        let file: ModuleFile =
            serde_json::from_str(text).map_err(|e| ModuleError::Parse(e.to_string()))?;
        if file.levels.is_empty() {
            return Err(ModuleError::NoLevels);
        }
        let steps = file.levels.len() - 1;
        let mut triplets: Vec<Vec<Vec<(usize, usize, Rational)>>> =
            vec![vec![Vec::new(); steps]; file.m];
        for block in &file.mult {
            if block.var == 0 || block.var > file.m {
                return Err(ModuleError::VarOutOfRange {
                    var: block.var,
                    var_count: file.m,
                });
            }
            if block.level >= steps {
                return Err(ModuleError::LevelOutOfRange {
                    level: block.level,
                    level_count: file.levels.len(),
                });
            }
            for (r, c, text) in &block.entries {
                let value = parse_rational(text).map_err(|source| ModuleError::Entry {
                    var: block.var,
                    level: block.level,
                    source,
                })?;
                triplets[block.var - 1][block.level].push((*r, *c, value));
            }
        }
        let mut mult = Vec::with_capacity(file.m);
        for (var_idx, per_var) in triplets.into_iter().enumerate() {
            let mut mats = Vec::with_capacity(steps);
            for (t, trip) in per_var.into_iter().enumerate() {
                let mat = SparseMatrix::from_triplets(file.levels[t + 1], file.levels[t], trip)
                    .map_err(|source| ModuleError::Entry {
                        var: var_idx + 1,
                        level: t,
                        source,
                    })?;
                mats.push(mat);
            }
            mult.push(mats);
        }
        let module = GradedModule::from_parts(file.m, file.levels, mult)?;
        let violations = module.validate();
        if !violations.is_empty() {
            return Err(ModuleError::Invalid(violations));
        }
        Ok(module)
    }
}

/// All exponent vectors of total degree `t` on `var_count` variables that
/// pass `keep`, in descending lexicographic order.
fn monomials_of_degree(var_count: usize, t: u32, keep: &dyn Fn(&[u32]) -> bool) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; var_count];
    fn rec(
        pos: usize,
        remaining: u32,
        cur: &mut Vec<u32>,
        keep: &dyn Fn(&[u32]) -> bool,
        out: &mut Vec<Vec<u32>>,
    ) {
        if pos + 1 == cur.len() {
            cur[pos] = remaining;
            if keep(cur) {
                out.push(cur.clone());
            }
            cur[pos] = 0;
            return;
        }
        for e in (0..=remaining).rev() {
            cur[pos] = e;
            rec(pos + 1, remaining - e, cur, keep, out);
        }
        cur[pos] = 0;
    }
    if var_count == 0 {
        if t == 0 && keep(&[]) {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, t, &mut cur, keep, &mut out);
    out
}

/// Support mask (bit `i` set when `v_{i+1}` divides) of an exponent vector.
fn support_mask(exponents: &[u32]) -> u64 {
    exponents
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .fold(0u64, |acc, (i, _)| acc | 1 << i)
}

/// Assemble a monomial-basis module: `basis_keep` decides level membership.
fn monomial_module(
    var_count: usize,
    t_max: usize,
    keep: &dyn Fn(&[u32]) -> bool,
) -> GradedModule {
    let mut bases: Vec<Vec<Vec<u32>>> = Vec::with_capacity(t_max + 1);
    let mut index: Vec<HashMap<Vec<u32>, usize>> = Vec::with_capacity(t_max + 1);
    for t in 0..=t_max {
        let basis = monomials_of_degree(var_count, t as u32, keep);
        let map = basis
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        bases.push(basis);
        index.push(map);
    }
    let level_dims: Vec<usize> = bases.iter().map(Vec::len).collect();
    let mut mult = Vec::with_capacity(var_count);
    for var in 0..var_count {
        let mut mats = Vec::with_capacity(t_max);
        for t in 0..t_max {
            let mut triplets = Vec::new();
            for (col, e) in bases[t].iter().enumerate() {
                let mut shifted = e.clone();
                shifted[var] += 1;
                if let Some(&row) = index[t + 1].get(&shifted) {
                    triplets.push((row, col, ratio_i64(1)));
                }
            }
            mats.push(
                SparseMatrix::from_triplets(level_dims[t + 1], level_dims[t], triplets)
                    .expect("monomial action entries are unique and in range"),
            );
        }
        mult.push(mats);
    }
    GradedModule {
        var_count,
        level_dims,
        mult,
    }
}

/// The Stanley-Reisner ring `Q[K]` truncated at internal degree `t_max`:
/// level `t` is spanned by the degree-`t` monomials whose support is a face
/// of `K`.
pub fn stanley_reisner(complex: &SimplicialComplex, t_max: usize) -> GradedModule {
    monomial_module(complex.vertex_count(), t_max, &|e: &[u32]| {
        complex.contains_face(support_mask(e))
    })
}

/// Quotient of `Q[v_1..v_m]` by the monomial ideal generated by `generators`
/// (exponent vectors), truncated at `t_max`: level `t` keeps the degree-`t`
/// monomials divisible by no generator.
pub fn monomial_quotient(
    var_count: usize,
    generators: &[Vec<u32>],
    t_max: usize,
) -> GradedModule {
    for g in generators {
        assert_eq!(g.len(), var_count, "generator arity mismatch");
        assert!(g.iter().any(|&e| e > 0), "zero generator would kill the ring");
    }
    monomial_module(var_count, t_max, &|e: &[u32]| {
        !generators
            .iter()
            .any(|g| g.iter().zip(e).all(|(&ge, &ee)| ge <= ee))
    })
}

/// The residue field `Q = Q[v_1..v_m]/(v_1..v_m)` as a module.
pub fn residue_field(var_count: usize) -> GradedModule {
    let generators: Vec<Vec<u32>> = (0..var_count)
        .map(|i| {
            let mut g = vec![0u32; var_count];
            g[i] = 1;
            g
        })
        .collect();
    monomial_quotient(var_count, &generators, 1)
}

/// Reproducible random finite-dimensional module. The skeleton is a random
/// monomial quotient with every variable nilpotent; with some probability the
/// top level is further divided by a random subspace (legal because nothing
/// multiplies out of the top), and random unimodular basis changes at the
/// internal levels spread the entries away from 0/1. Always validates.
pub fn random_artinian_module(var_count: usize, seed: u64, max_level: usize) -> GradedModule {
    assert!(max_level >= 1, "need at least levels 0 and 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut generators: Vec<Vec<u32>> = (0..var_count)
        .map(|i| {
            let mut g = vec![0u32; var_count];
            g[i] = rng.gen_range(1..=max_level) as u32;
            g
        })
        .collect();
    for _ in 0..rng.gen_range(0..=var_count) {
        let mut g = vec![0u32; var_count];
        for _ in 0..rng.gen_range(1..=max_level) {
            g[rng.gen_range(0..var_count)] += 1;
        }
        if g.iter().any(|&e| e > 0) {
            generators.push(g);
        }
    }
    let mut module = monomial_quotient(var_count, &generators, max_level);

    if let Some(hi) = module.level_dims.iter().rposition(|&d| d > 0) {
        if hi >= 1 && module.level_dims[hi] >= 2 && rng.gen_bool(0.5) {
            quotient_top_level(&mut module, hi, &mut rng);
        }
        for t in 1..hi {
            for _ in 0..rng.gen_range(0..=2u32) {
                shuffle_basis(&mut module, t, &mut rng);
            }
        }
    }
    debug_assert!(module.validate().is_empty());
    module
}

/// Replace level `hi` by its quotient modulo the row space of a random
/// integer matrix, rewriting the multiplications into `hi` through the
/// projection. Any subspace of the top level is a submodule, so the result
/// stays a module.
fn quotient_top_level(module: &mut GradedModule, hi: usize, rng: &mut ChaCha8Rng) {
    let dim = module.level_dims[hi];
    let kill = rng.gen_range(1..dim);
    let mut rows: Vec<Vec<Rational>> = (0..kill)
        .map(|_| (0..dim).map(|_| ratio_i64(rng.gen_range(-2..=2))).collect())
        .collect();
    // Reduced row echelon form, tracking pivot columns.
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..dim {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].clone();
        for x in &mut rows[r] {
            *x /= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for cc in 0..dim {
                    let t = &rows[r][cc] * &f;
                    rows[i][cc] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    if pivots.is_empty() {
        return;
    }
    let non_pivots: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    let mut triplets = Vec::new();
    for (loc, &c) in non_pivots.iter().enumerate() {
        triplets.push((loc, c, ratio_i64(1)));
    }
    for (l, &p) in pivots.iter().enumerate() {
        for (loc, &c) in non_pivots.iter().enumerate() {
            if !rows[l][c].is_zero() {
                triplets.push((loc, p, -rows[l][c].clone()));
            }
        }
    }
    let projection = SparseMatrix::from_triplets(non_pivots.len(), dim, triplets)
        .expect("projection entries are unique and in range");
    module.level_dims[hi] = non_pivots.len();
    for var in 0..module.var_count {
        module.mult[var][hi - 1] = projection
            .compose(&module.mult[var][hi - 1])
            .expect("projection shape matches level");
        if hi < module.level_dims.len() - 1 {
            // Outgoing matrices were `0 x old_dim`; refresh their shape.
            module.mult[var][hi] =
                SparseMatrix::zero(module.level_dims[hi + 1], module.level_dims[hi]);
        }
    }
}

/// Apply one random elementary unimodular basis change at level `t`
/// (simultaneously rewriting incoming and outgoing matrices, an isomorphism
/// of modules).
fn shuffle_basis(module: &mut GradedModule, t: usize, rng: &mut ChaCha8Rng) {
    let dim = module.level_dims[t];
    if dim < 2 {
        return;
    }
    let r1 = rng.gen_range(0..dim);
    let mut r2 = rng.gen_range(0..dim - 1);
    if r2 >= r1 {
        r2 += 1;
    }
    let c: i64 = *[-2, -1, 1, 2].get(rng.gen_range(0..4)).unwrap();
    let mut fwd = vec![(r1, r2, ratio_i64(c))];
    let mut bwd = vec![(r1, r2, ratio_i64(-c))];
    for d in 0..dim {
        fwd.push((d, d, ratio_i64(1)));
        bwd.push((d, d, ratio_i64(1)));
    }
    let basis_change = SparseMatrix::from_triplets(dim, dim, fwd).expect("elementary matrix");
    let inverse = SparseMatrix::from_triplets(dim, dim, bwd).expect("elementary matrix");
    for var in 0..module.var_count {
        module.mult[var][t - 1] = basis_change
            .compose(&module.mult[var][t - 1])
            .expect("shape");
        module.mult[var][t] = module.mult[var][t].compose(&inverse).expect("shape");
    }
}
