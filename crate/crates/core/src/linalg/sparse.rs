//! Markowitz-style elimination on unit pivots.
//!
//! Every pivot of absolute value one contributes an invariant factor of one
//! and can be removed together with its row and column. What remains has no
//! unit entries and is handed to a dense routine.

use std::collections::{BTreeSet, HashMap, HashSet};

use super::Triplets;

pub(crate) struct Reduced {
    pub unit_pivots: usize,
    /// Remaining rows, indexed by compacted column.
    pub rest: Vec<Vec<(usize, i64)>>,
    pub rest_cols: usize,
}

fn norm(v: i64, modulus: Option<i64>) -> i64 {
    match modulus {
        Some(m) => v.rem_euclid(m),
        None => v,
    }
}

fn is_unit(v: i64, modulus: Option<i64>) -> bool {
    match modulus {
        Some(2) => v != 0,
        _ => v == 1 || v == -1,
    }
}

/// Eliminates unit pivots; `modulus` is `None` for the integers and `Some(2)`
/// for the two-element field.
pub(crate) fn eliminate(t: &Triplets, modulus: Option<i64>) -> Reduced {
    let mut rows: Vec<HashMap<usize, i64>> = vec![HashMap::new(); t.rows];
    for &(r, c, v) in &t.entries {
        *rows[r].entry(c).or_default() += v;
    }
    let mut cols: Vec<HashSet<usize>> = vec![HashSet::new(); t.cols];
    for (r, row) in rows.iter_mut().enumerate() {
        row.retain(|_, v| {
            *v = norm(*v, modulus);
            *v != 0
        });
        for &c in row.keys() {
            cols[c].insert(r);
        }
    }
    let mut queue: BTreeSet<(usize, usize)> = cols.iter().enumerate().filter(|(_, s)| !s.is_empty()).map(|(c, s)| (s.len(), c)).collect();
    let mut alive = vec![true; t.cols];
    let mut pivots = 0;
    'outer: loop {
        let mut choice = None;
        for &(_, c) in &queue {
            let best = cols[c].iter().filter(|&&r| is_unit(rows[r][&c], modulus)).min_by_key(|&&r| (rows[r].len(), r));
            if let Some(&r) = best {
                choice = Some((r, c));
                break;
            }
        }
        let Some((p, c)) = choice else { break };
        let u = rows[p][&c];
        let prow: Vec<(usize, i64)> = rows[p].iter().map(|(&k, &v)| (k, v)).collect();
        let targets: Vec<usize> = cols[c].iter().copied().filter(|&r| r != p).collect();
        // Compute every update first so an overflow leaves the matrix intact.
        let mut updates = Vec::with_capacity(targets.len());
        for &r in &targets {
            let f = match rows[r][&c].checked_mul(u) {
                Some(f) => f,
                None => break 'outer,
            };
            let mut changed = Vec::with_capacity(prow.len());
            for &(k, v) in &prow {
                let old = rows[r].get(&k).copied().unwrap_or(0);
                let nv = f.checked_mul(v).and_then(|fv| old.checked_sub(fv));
                match nv {
                    Some(nv) => changed.push((k, norm(nv, modulus))),
                    None => break 'outer,
                }
            }
            updates.push((r, changed));
        }
        // Only the pivot row's columns change length.
        for &(k, _) in &prow {
            queue.remove(&(cols[k].len(), k));
        }
        for (r, changed) in updates {
            for (k, nv) in changed {
                if nv == 0 {
                    rows[r].remove(&k);
                    cols[k].remove(&r);
                } else {
                    rows[r].insert(k, nv);
                    cols[k].insert(r);
                }
            }
        }
        for &(k, _) in &prow {
            cols[k].remove(&p);
        }
        rows[p].clear();
        alive[c] = false;
        cols[c].clear();
        for &(k, _) in &prow {
            if alive[k] && !cols[k].is_empty() {
                queue.insert((cols[k].len(), k));
            }
        }
        pivots += 1;
    }
    let live: Vec<usize> = (0..t.cols).filter(|&c| alive[c] && !cols[c].is_empty()).collect();
    let index: HashMap<usize, usize> = live.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let rest = rows
        .into_iter()
        .filter(|r| !r.is_empty())
        .map(|r| {
            let mut v: Vec<(usize, i64)> = r.into_iter().map(|(c, x)| (index[&c], x)).collect();
            v.sort_unstable();
            v
        })
        .collect();
    Reduced { unit_pivots: pivots, rest, rest_cols: live.len() }
}
