//! Small combinatorial helpers shared across the crate.

/// Binomial coefficient C(n, k). Exact for every n <= 63 that can occur here.
pub(crate) fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for t in 0..k {
        acc = acc * (n - t) as u128 / (t + 1) as u128;
    }
    u64::try_from(acc).expect("binomial overflow")
}

/// All k-element subsets of {1, .., m} in lexicographic order on the sorted
/// vertex tuples: (1,2) < (1,3) < .. < (2,3) < ..
pub(crate) fn subsets_lex(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(m, k) as usize);
    let mut cur = Vec::with_capacity(k);
    fn rec(m: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let need = k - cur.len();
        for v in start..=m.saturating_sub(need - 1) {
            cur.push(v);
            rec(m, k, v + 1, cur, out);
            cur.pop();
        }
    }
    if k <= m {
        rec(m, k, 1, &mut cur, &mut out);
    }
    out
}
