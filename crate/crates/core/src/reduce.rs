//! LLL reduction of a positive-definite Gram matrix, tracking the change of basis.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith;
use crate::error::{domain, Result};
use crate::frac::Frac;
use crate::intmat::GramMatrix;

/// `G = L D L^T` with `L` unit lower triangular; returns `(L, D)`.
pub(crate) fn ldl(g: &GramMatrix) -> Result<(Vec<Vec<Frac>>, Vec<Frac>)> {
    let n = g.rank();
    let mut l = vec![vec![Frac::ZERO; n]; n];
    let mut d = vec![Frac::ZERO; n];
    for j in 0..n {
        let mut dj = Frac::int(g.get(j, j));
        for k in 0..j {
            dj = dj.sub(l[j][k].mul(l[j][k])?.mul(d[k])?)?;
        }
        if !dj.is_positive() {
            return Err(domain("Gram matrix is not positive-definite"));
        }
        d[j] = dj;
        l[j][j] = Frac::int(1);
        for i in j + 1..n {
            let mut s = Frac::int(g.get(i, j));
            for k in 0..j {
                s = s.sub(l[i][k].mul(l[j][k])?.mul(d[k])?)?;
            }
            l[i][j] = s.div(dj)?;
        }
    }
    Ok((l, d))
}

/// A reduced Gram matrix `R = T G T^T` with `T` unimodular and its inverse.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub gram: GramMatrix,
    pub t: Vec<Vec<i64>>,
    pub t_inv: Vec<Vec<i64>>,
}

/// LLL with parameter 3/4, exact rational arithmetic.
pub fn lll(g: &GramMatrix) -> Result<Reduction> {
    let n = g.rank();
    let mut a: Vec<Vec<i64>> = g.rows().to_vec();
    let mut t: Vec<Vec<i64>> = GramMatrix::identity(n).into_rows();
    let mut t_inv = t.clone();
    if n == 0 {
        return Ok(Reduction {
            gram: g.clone(),
            t,
            t_inv,
        });
    }
    let three_quarters = Frac::new(3, 4)?;
    let mut k = 1;
    let mut guard = 0usize;
    while k < n {
        guard += 1;
        if guard > 1_000_000 {
            return Err(crate::error::Error::Internal(
                "LLL did not terminate".into(),
            ));
        }
        let gm = GramMatrix::new(a.clone())?;
        let (l, _) = ldl(&gm)?;
        // Size-reduce b_k against b_{k-1}, ..., b_0, refreshing mu as we go.
        let mut mu: Vec<Frac> = l[k].clone();
        for j in (0..k).rev() {
            let q = mu[j].round()?;
            if q == 0 {
                continue;
            }
            // b_k -= q b_j
            let akk = arith::add(
                arith::sub(a[k][k], arith::mul(2 * q, a[k][j])?)?,
                arith::mul(arith::mul(q, q)?, a[j][j])?,
            )?;
            for i in 0..n {
                if i != k {
                    let v = arith::sub(a[k][i], arith::mul(q, a[j][i])?)?;
                    a[k][i] = v;
                    a[i][k] = v;
                }
            }
            a[k][k] = akk;
            for c in 0..n {
                t[k][c] = arith::sub(t[k][c], arith::mul(q, t[j][c])?)?;
            }
            for row in t_inv.iter_mut() {
                row[j] = arith::add(row[j], arith::mul(q, row[k])?)?;
            }
            for (i, m) in mu.iter_mut().enumerate().take(j + 1) {
                let lj = if i == j { Frac::int(1) } else { l[j][i] };
                *m = m.sub(lj.mul_int(q)?)?;
            }
        }
        let gm = GramMatrix::new(a.clone())?;
        let (l, d) = ldl(&gm)?;
        let lhs = d[k];
        let rhs = three_quarters
            .sub(l[k][k - 1].mul(l[k][k - 1])?)?
            .mul(d[k - 1])?;
        if lhs < rhs {
            a.swap(k, k - 1);
            for row in a.iter_mut() {
                row.swap(k, k - 1);
            }
            t.swap(k, k - 1);
            for row in t_inv.iter_mut() {
                row.swap(k, k - 1);
            }
            k = k.max(2) - 1;
        } else {
            k += 1;
        }
    }
    Ok(Reduction {
        gram: GramMatrix::new(a)?,
        t,
        t_inv,
    })
}
