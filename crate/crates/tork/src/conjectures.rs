//! Check suites: classical lower bounds and identities evaluated against
//! computed Betti tables.
//!
//! Every suite returns a [`CheckReport`] with one row per comparison. A row
//! or report is `na` when the statement's hypotheses are not met, so `fail`
//! always means "hypotheses hold and the inequality is violated". For the
//! proved statements (corner, parity, Avramov-Buchweitz, Evans-Griffith,
//! toral rank, duality, Euler) a `fail` can only indicate an engine bug —
//! the test suite leans on that. The Horrocks suites are conjectural: their
//! rows keep raw pass/fail verdicts as findings even when the
//! finite-dimensionality hypothesis is out of reach, and a violation is
//! something to report, not an error.
//!
//! The finite-dimensionality hypothesis "dim_Q M < ∞" is judged from the
//! table itself: a finite-dimensional module over `Q[v_1..v_m]` has
//! projective dimension exactly `m`, so tables with `pd < m` (Stanley-Reisner
//! rings with faces, free summands) are flagged not-applicable.

use crate::combin::binomial;
use crate::exactla::{ratio_i64, Rational};
use crate::grmod::{GradedModule, ModuleError};
use crate::koszul::{
    betti_table, full_j_max, BettiTable, BoundValue, CheckReport, CheckRow, CheckStatus,
};
use num::One;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CheckError {
    #[error("Betti table is identically zero")]
    ZeroTable,
}

/// Table-level proxy for "dim_Q M < ∞": projective dimension equals the
/// number of variables.
fn finite_dim_hypothesis(table: &BettiTable) -> bool {
    table.projective_dimension() == Some(table.var_count())
}

fn ge_row(id: String, lhs: u64, rhs: u64, applicable: bool) -> CheckRow {
    CheckRow {
        id,
        lhs: lhs as i64,
        rhs: BoundValue::Int(rhs as i64),
        status: if !applicable {
            CheckStatus::Na
        } else if lhs >= rhs {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
    }
}

fn overall_of(applicable: bool, rows: &[CheckRow]) -> CheckStatus {
    if !applicable {
        CheckStatus::Na
    } else if rows.iter().any(|r| r.status == CheckStatus::Fail) {
        CheckStatus::Fail
    } else if rows.iter().all(|r| r.status == CheckStatus::Pass) && !rows.is_empty() {
        CheckStatus::Pass
    } else {
        CheckStatus::Na
    }
}

fn base_params(table: &BettiTable, applicable: bool) -> BTreeMap<String, serde_json::Value> {
    BTreeMap::from([
        ("m".to_string(), serde_json::json!(table.var_count())),
        (
            "pd".to_string(),
            serde_json::json!(table.projective_dimension()),
        ),
        ("applicable".to_string(), serde_json::json!(applicable)),
    ])
}

/// Horrocks' binomial bounds `beta^{-i} >= C(m, i)` — conjectural at every
/// `m`, so violations are findings. Rows keep their raw verdicts even when
/// the finite-dimensionality hypothesis fails; the report is then `na`
/// overall and the Evans-Griffith suite carries the pd-indexed analogue.
pub fn check_horrocks(table: &BettiTable) -> CheckReport {
    let m = table.var_count();
    let totals = table.total_betti();
    let applicable = finite_dim_hypothesis(table);
    let rows: Vec<CheckRow> = (0..=m)
        .map(|i| ge_row(format!("i={i}"), totals[i], binomial(m, i), true))
        .collect();
    let mut params = base_params(table, applicable);
    params.insert(
        "statement".to_string(),
        serde_json::json!("conjectural for m >= 5; proved for m <= 4"),
    );
    if !applicable {
        params.insert(
            "note".to_string(),
            serde_json::json!(
                "hypothesis dim_Q M < infinity unmet (pd < m); evans_griffith gives the pd-indexed form"
            ),
        );
    }
    CheckReport {
        suite: "horrocks".to_string(),
        params,
        overall: overall_of(applicable, &rows),
        rows,
    }
}

/// Weak form of the Horrocks bound: total rank at least `2^m`. Conjectural.
pub fn check_weak_horrocks(table: &BettiTable) -> CheckReport {
    let m = table.var_count();
    let applicable = finite_dim_hypothesis(table);
    let rows = vec![ge_row("total".to_string(), table.hrk(), 1 << m, true)];
    CheckReport {
        suite: "weak_horrocks".to_string(),
        params: base_params(table, applicable),
        overall: overall_of(applicable, &rows),
        rows,
    }
}

/// Proved corner bounds: `beta^0 >= 1`, `beta^{-1} >= m`,
/// `beta^{-(m-1)} >= m`, `beta^{-m} >= 1` for finite-dimensional modules.
pub fn check_corner_bounds(table: &BettiTable) -> CheckReport {
    let m = table.var_count();
    let totals = table.total_betti();
    let applicable = finite_dim_hypothesis(table);
    let mut rows = vec![ge_row("tor0".to_string(), totals[0], 1, true)];
    if m >= 1 {
        rows.push(ge_row("tor1".to_string(), totals[1], m as u64, true));
        rows.push(ge_row(
            "tor_m_minus_1".to_string(),
            totals[m - 1],
            m as u64,
            true,
        ));
    }
    rows.push(ge_row("tor_m".to_string(), totals[m], 1, true));
    CheckReport {
        suite: "corner_bounds".to_string(),
        params: base_params(table, applicable),
        overall: overall_of(applicable, &rows),
        rows,
    }
}

/// Proved parity bounds on the total rank: `>= 5m - 4` for even `m >= 4`,
/// `>= 3m - 1` for odd `m`. Even `m < 4` is outside the statement.
pub fn check_parity_bounds(table: &BettiTable) -> CheckReport {
    let m = table.var_count();
    let finite = finite_dim_hypothesis(table);
    let (bound, parity_ok) = if m % 2 == 1 {
        (3 * m as i64 - 1, true)
    } else {
        (5 * m as i64 - 4, m >= 4)
    };
    let applicable = finite && parity_ok;
    // The row is na only when the bound itself is not claimed (even m < 4);
    // an unmet finite-dimensionality hypothesis keeps the raw comparison as
    // a finding, with the report na overall.
    let rows = vec![CheckRow {
        id: "total".to_string(),
        lhs: table.hrk() as i64,
        rhs: BoundValue::Int(bound),
        status: if !parity_ok {
            CheckStatus::Na
        } else if table.hrk() as i64 >= bound {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
    }];
    let mut params = base_params(table, applicable);
    params.insert(
        "bound_form".to_string(),
        serde_json::json!(if m % 2 == 1 { "3m-1 (odd m)" } else { "5m-4 (even m >= 4)" }),
    );
    CheckReport {
        suite: "parity_bounds".to_string(),
        params,
        overall: overall_of(applicable, &rows),
        rows,
    }
}

/// Proved quadratic bound: total rank at least `(3/2)(m-1)^2 + 8` for
/// finite-dimensional modules with `m >= 5`. The comparison is exact
/// rational — no rounding of the half-integer bound.
pub fn check_avramov_buchweitz(table: &BettiTable) -> CheckReport {
    let m = table.var_count();
    let applicable = finite_dim_hypothesis(table) && m >= 5;
    let bound = (ratio_i64(3) * ratio_i64((m as i64 - 1).pow(2)) / ratio_i64(2)) + ratio_i64(8);
    let rhs = if bound.denom().is_one() {
        BoundValue::Int(i64::try_from(bound.numer().clone()).expect("bound fits i64"))
    } else {
        BoundValue::Ratio(bound.clone())
    };
    // The row goes na when the bound is not claimed at this m; the
    // finite-dimensionality hypothesis only affects the overall verdict.
    let rows = vec![CheckRow {
        id: "total".to_string(),
        lhs: table.hrk() as i64,
        rhs,
        status: if m < 5 {
            CheckStatus::Na
        } else if Rational::from_integer(table.hrk().into()) >= bound {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
    }];
    CheckReport {
        suite: "avramov_buchweitz".to_string(),
        params: base_params(table, applicable),
        overall: overall_of(applicable, &rows),
        rows,
    }
}

/// Proved Evans-Griffith syzygy bounds for monomial quotients:
/// `beta^{-i} >= C(n, i)` with `n` the projective dimension. The monomial
/// hypothesis is the caller's to guarantee. Rejects the zero table.
pub fn check_evans_griffith(table: &BettiTable) -> Result<CheckReport, CheckError> {
    let Some(pd) = table.projective_dimension() else {
        return Err(CheckError::ZeroTable);
    };
    let totals = table.total_betti();
    let rows: Vec<CheckRow> = (0..=pd)
        .map(|i| ge_row(format!("i={i}"), totals[i], binomial(pd, i), true))
        .collect();
    let mut params = base_params(table, true);
    params.insert(
        "hypothesis".to_string(),
        serde_json::json!("quotient by a monomial ideal (asserted by caller)"),
    );
    params.insert(
        "j_range".to_string(),
        serde_json::json!("lhs sums beta^{-i,2j} over all j; the corollary form restricts j to 0..=n with n = pd"),
    );
    Ok(CheckReport {
        suite: "evans_griffith".to_string(),
        params,
        overall: overall_of(true, &rows),
        rows,
    })
}

/// Proved toral-rank bound for moment-angle complexes: the total rank of the
/// table of `Q[K]` is at least `2^{m-n}` where `n = dim K + 1`.
pub fn check_toral_rank_zk(table: &BettiTable, n: usize) -> CheckReport {
    let m = table.var_count();
    assert!(n <= m, "n = dim K + 1 cannot exceed the vertex count");
    let rows = vec![ge_row("hrk".to_string(), table.hrk(), 1 << (m - n), true)];
    let mut params = base_params(table, true);
    params.insert("n".to_string(), serde_json::json!(n));
    CheckReport {
        suite: "toral_rank_zk".to_string(),
        params,
        overall: overall_of(true, &rows),
        rows,
    }
}

/// Proved duality `beta^{-i}(M) = beta^{-(m-i)}(M*)` for finite-dimensional
/// modules: computes both full tables and compares totals as equalities.
pub fn check_duality(module: &GradedModule) -> Result<CheckReport, ModuleError> {
    let m = module.var_count();
    let table = betti_table(module, full_j_max(module))?;
    let dual = module.dual_module();
    let dual_table = betti_table(&dual, full_j_max(&dual))?;
    let totals = table.total_betti();
    let dual_totals = dual_table.total_betti();
    let rows: Vec<CheckRow> = (0..=m)
        .map(|i| CheckRow {
            id: format!("i={i}"),
            lhs: totals[i] as i64,
            rhs: BoundValue::Int(dual_totals[m - i] as i64),
            status: if totals[i] == dual_totals[m - i] {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
        })
        .collect();
    let params = BTreeMap::from([
        ("m".to_string(), serde_json::json!(m)),
        ("applicable".to_string(), serde_json::json!(true)),
        (
            "relation".to_string(),
            serde_json::json!("beta^{-i}(M) = beta^{-(m-i)}(M*)"),
        ),
    ]);
    Ok(CheckReport {
        suite: "duality".to_string(),
        params,
        overall: overall_of(true, &rows),
        rows,
    })
}

/// Proved vanishing of the Euler characteristic `Σ_i (-1)^i beta^{-i} = 0`
/// for finite-dimensional modules with `m >= 1`.
pub fn check_euler(table: &BettiTable) -> CheckReport {
    let m = table.var_count();
    let applicable = finite_dim_hypothesis(table) && m >= 1;
    let chi = table.euler_characteristic();
    // m = 0 has chi = dim M by construction, so no comparison is claimed;
    // otherwise the raw comparison stands even when finite-dimensionality
    // is not established (overall then na).
    let rows = vec![CheckRow {
        id: "chi".to_string(),
        lhs: chi,
        rhs: BoundValue::Int(0),
        status: if m == 0 {
            CheckStatus::Na
        } else if chi == 0 {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
    }];
    CheckReport {
        suite: "euler".to_string(),
        params: base_params(table, applicable),
        overall: overall_of(applicable, &rows),
        rows,
    }
}

/// Names of the proved suites: a `fail` from any of these is an error
/// condition for callers (nonzero process exit), unlike the conjectural
/// Horrocks suites whose failures are findings.
pub const PROVED_SUITES: [&str; 7] = [
    "corner_bounds",
    "parity_bounds",
    "avramov_buchweitz",
    "evans_griffith",
    "toral_rank_zk",
    "duality",
    "euler",
];
