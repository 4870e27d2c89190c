//! Exact Fincke–Pohst enumeration of short lattice vectors.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{domain, Result};
use crate::frac::Frac;
use crate::intmat::GramMatrix;
use crate::reduce::{ldl, lll};

/// Every nonzero coefficient vector `x` with `x^T G x <= bound`, paired with
/// its norm, sorted by `(norm, x)`.
pub fn short_vectors(g: &GramMatrix, bound: i64) -> Result<Vec<(Vec<i64>, i64)>> {
    let n = g.rank();
    let mut out = Vec::new();
    if n == 0 || bound < 1 {
        return Ok(out);
    }
    // Enumerate in an LLL-reduced basis, then map back through `T`.
    let red = lll(g)?;
    let (l, d) = ldl(&red.gram)?;
    let mut x = vec![0i64; n];
    walk(&red.gram, &l, &d, n, Frac::int(bound), &mut x, &mut out)?;
    for (v, _) in out.iter_mut() {
        *v = row_times(v, &red.t)?;
    }
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    Ok(out)
}

/// Fills coordinates `level-1, ..., 0` given `x[level..]`, with `budget`
/// remaining for the partial norm.
fn walk(
    g: &GramMatrix,
    l: &[Vec<Frac>],
    d: &[Frac],
    level: usize,
    budget: Frac,
    x: &mut Vec<i64>,
    out: &mut Vec<(Vec<i64>, i64)>,
) -> Result<()> {
    if level == 0 {
        if x.iter().any(|&c| c != 0) {
            let norm = g.pair(x, x)?;
            out.push((x.clone(), norm));
        }
        return Ok(());
    }
    let i = level - 1;
    let mut c = Frac::ZERO;
    for j in level..x.len() {
        if x[j] != 0 {
            c = c.sub(l[j][i].mul_int(x[j])?)?;
        }
    }
    let cost = |v: i64| -> Result<Frac> {
        let delta = Frac::int(v).sub(c)?;
        d[i].mul(delta.mul(delta)?)
    };
    let start = c.round()?;
    for dir in [1i64, -1] {
        let mut v = if dir == 1 { start } else { start - 1 };
        loop {
            let k = cost(v)?;
            if k > budget {
                break;
            }
            x[i] = v;
            walk(g, l, d, i, budget.sub(k)?, x, out)?;
            v += dir;
        }
    }
    x[i] = 0;
    Ok(())
}

/// `x T` for a row vector `x`.
pub(crate) fn row_times(x: &[i64], t: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = t.first().map_or(0, |r| r.len());
    let mut out = vec![0i64; n];
    for (xi, row) in x.iter().zip(t) {
        if *xi == 0 {
            continue;
        }
        for (o, &r) in out.iter_mut().zip(row) {
            *o = crate::arith::add(*o, crate::arith::mul(*xi, r)?)?;
        }
    }
    Ok(out)
}

/// Shortest nonzero norm.
pub fn minimum(g: &GramMatrix) -> Result<i64> {
    if g.rank() == 0 {
        return Err(domain("zero lattice has no minimum"));
    }
    let bound = (0..g.rank()).map(|i| g.get(i, i)).min().expect("rank > 0");
    Ok(short_vectors(g, bound)?
        .first()
        .expect("a basis vector qualifies")
        .1)
}
