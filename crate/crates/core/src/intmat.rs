//! Integer vectors, Gram matrices, exact determinants and integral kernels.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{self, ext_gcd, gcd128, to_i64};
use crate::error::{domain, Error, Result};

/// Coordinates against an orthonormal ambient basis.
pub type IntVector = Vec<i64>;

/// Square symmetric integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GramMatrix {
    rows: Vec<Vec<i64>>,
}

impl GramMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(domain("Gram matrix must be square"));
        }
        for i in 0..n {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(domain("Gram matrix must be symmetric"));
                }
            }
        }
        Ok(GramMatrix { rows })
    }

    /// Like [`GramMatrix::new`] and additionally requires positive-definiteness.
    pub fn positive_definite(rows: Vec<Vec<i64>>) -> Result<Self> {
        let g = GramMatrix::new(rows)?;
        if !g.is_positive_definite()? {
            return Err(domain("Gram matrix is not positive-definite"));
        }
        Ok(g)
    }

    pub fn identity(n: usize) -> Self {
        let mut rows = vec![vec![0; n]; n];
        for (i, r) in rows.iter_mut().enumerate() {
            r[i] = 1;
        }
        GramMatrix { rows }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<i64>> {
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    pub fn determinant(&self) -> Result<i64> {
        determinant(&self.rows)
    }

    /// All leading principal minors are positive.
    pub fn is_positive_definite(&self) -> Result<bool> {
        Ok(leading_minors(&self.rows)?.into_iter().all(|m| m > 0))
    }

    /// `x^T G y` for coefficient vectors against this basis.
    pub fn pair(&self, x: &[i64], y: &[i64]) -> Result<i64> {
        let mut acc = 0i64;
        for (i, row) in self.rows.iter().enumerate() {
            if x[i] == 0 {
                continue;
            }
            acc = arith::add(acc, arith::mul(x[i], arith::dot(row, y)?)?)?;
        }
        Ok(acc)
    }

    /// Orthogonal direct sum with `k` copies of `[[1]]`.
    pub fn with_unit_summands(&self, k: usize) -> Self {
        let n = self.rank();
        let mut rows: Vec<Vec<i64>> = self
            .rows
            .iter()
            .map(|r| {
                let mut r = r.clone();
                r.resize(n + k, 0);
                r
            })
            .collect();
        for i in 0..k {
            let mut r = vec![0; n + k];
            r[n + i] = 1;
            rows.push(r);
        }
        GramMatrix { rows }
    }

    /// `T G T^T` for a change of basis whose rows are the new basis vectors.
    pub fn transform(&self, t: &[Vec<i64>]) -> Result<Self> {
        let rows = t
            .iter()
            .map(|a| {
                t.iter()
                    .map(|b| self.pair(a, b))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GramMatrix { rows })
    }
}

/// `G_ij = b_i . b_j`.
pub fn gram(basis: &[IntVector]) -> Result<GramMatrix> {
    if let Some(first) = basis.first() {
        if basis.iter().any(|b| b.len() != first.len()) {
            return Err(domain("vectors have mixed ambient ranks"));
        }
    }
    let n = basis.len();
    let mut rows = vec![vec![0; n]; n];
    for i in 0..n {
        for j in i..n {
            let d = arith::dot(&basis[i], &basis[j])?;
            rows[i][j] = d;
            rows[j][i] = d;
        }
    }
    Ok(GramMatrix { rows })
}

fn to_wide(m: &[Vec<i64>]) -> Vec<Vec<i128>> {
    m.iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect()
}

fn checked(x: Option<i128>) -> Result<i128> {
    x.ok_or(Error::Overflow)
}

/// `a - f * b`
fn sub_mul(a: i128, f: i128, b: i128) -> Result<i128> {
    checked(f.checked_mul(b).and_then(|p| a.checked_sub(p)))
}

/// Fraction-free elimination with row pivoting; returns the determinant.
pub fn determinant(m: &[Vec<i64>]) -> Result<i64> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(domain("determinant of a non-square matrix"));
    }
    if n == 0 {
        return Ok(1);
    }
    let mut a = to_wide(m);
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| a[i][k] != 0) else {
            return Ok(0);
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = checked(
                    a[i][j]
                        .checked_mul(a[k][k])
                        .and_then(|x| x.checked_sub(a[i][k].checked_mul(a[k][j])?)),
                )?;
                a[i][j] = v / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    to_i64(sign * a[n - 1][n - 1])
}

/// Leading principal minors `det(M[..k, ..k])` for `k = 1..=n`, without pivoting.
/// Stops at the first zero minor, whose value is reported as 0 for every later entry.
pub fn leading_minors(m: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = m.len();
    let mut a = to_wide(m);
    let mut out = Vec::with_capacity(n);
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            out.resize(n, 0);
            return Ok(out);
        }
        out.push(to_i64(a[k][k])?);
        for i in k + 1..n {
            for j in k + 1..n {
                let v = checked(
                    a[i][j]
                        .checked_mul(a[k][k])
                        .and_then(|x| x.checked_sub(a[i][k].checked_mul(a[k][j])?)),
                )?;
                a[i][j] = v / prev;
            }
        }
        prev = a[k][k];
    }
    Ok(out)
}

/// Row Hermite normal form. Returns the nonzero rows, each with a positive
/// pivot and entries above pivots reduced into `[0, pivot)`, plus the pivot columns.
pub(crate) fn hnf_rows(rows: Vec<Vec<i128>>) -> Result<(Vec<Vec<i128>>, Vec<usize>)> {
    let mut a = rows;
    let ncols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        // Fold every row below r into row r with unimodular 2x2 steps.
        for i in r + 1..a.len() {
            if a[i][c] == 0 {
                continue;
            }
            let (x, y) = (a[r][c], a[i][c]);
            let (g, s, t) = ext_gcd(x, y);
            let (u, v) = (x / g, y / g);
            for j in c..ncols {
                let (p, q) = (a[r][j], a[i][j]);
                a[r][j] = checked(
                    s.checked_mul(p)
                        .and_then(|z| z.checked_add(t.checked_mul(q)?)),
                )?;
                a[i][j] = checked(
                    u.checked_mul(q)
                        .and_then(|z| z.checked_sub(v.checked_mul(p)?)),
                )?;
            }
        }
        if a[r][c] == 0 {
            continue;
        }
        if a[r][c] < 0 {
            for x in a[r].iter_mut() {
                *x = -*x;
            }
        }
        let p = a[r][c];
        for i in 0..r {
            let f = a[i][c].div_euclid(p);
            if f != 0 {
                for j in c..ncols {
                    a[i][j] = sub_mul(a[i][j], f, a[r][j])?;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Ok((a, pivots))
}

/// An integral basis of `{x in Z^ambient : x . w = 0 for every relation w}`.
///
/// The basis is the Hermite normal form of the complement, so it is canonical
/// and spans the full complement rather than a finite-index sublattice.
pub fn kernel_basis(relations: &[IntVector], ambient: usize) -> Result<Vec<IntVector>> {
    if relations.iter().any(|w| w.len() != ambient) {
        return Err(domain("relation length differs from the ambient rank"));
    }
    let k = relations.len();
    // Rows of [W^T | I]; after echelon form, rows with zero W^T part span the kernel.
    let rows: Vec<Vec<i128>> = (0..ambient)
        .map(|i| {
            let mut row: Vec<i128> = relations.iter().map(|w| w[i] as i128).collect();
            row.extend((0..ambient).map(|j| (i == j) as i128));
            row
        })
        .collect();
    let (h, pivots) = hnf_rows(rows)?;
    let rank = pivots.iter().filter(|&&c| c < k).count();
    if rank < k {
        return Err(domain("relations are linearly dependent"));
    }
    let basis = h[rank..]
        .iter()
        .map(|r| {
            r[k..]
                .iter()
                .map(|&x| to_i64(x))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    debug_assert!(basis.is_empty() || maximal_minor_gcd(&basis)? == 1);
    Ok(basis)
}

/// gcd of all maximal minors of a full-row-rank matrix. Equals 1 exactly when
/// the rows span a primitive sublattice.
pub fn maximal_minor_gcd(rows: &[Vec<i64>]) -> Result<i64> {
    let r = rows.len();
    let n = rows.first().map_or(0, |x| x.len());
    if r > n {
        return Ok(0);
    }
    let mut cols: Vec<usize> = (0..r).collect();
    let mut g = 0i128;
    loop {
        let sub: Vec<Vec<i64>> = rows
            .iter()
            .map(|row| cols.iter().map(|&c| row[c]).collect())
            .collect();
        g = gcd128(g, determinant(&sub)? as i128);
        if g == 1 {
            return Ok(1);
        }
        // Next r-combination of 0..n.
        let Some(i) = (0..r).rev().find(|&i| cols[i] != i + n - r) else {
            break;
        };
        cols[i] += 1;
        for j in i + 1..r {
            cols[j] = cols[j - 1] + 1;
        }
    }
    to_i64(g)
}

/// Solves `x B = target` for integer `x`, where the rows of `B` are a lattice
/// basis in ambient coordinates. Returns `None` when the target is not in the
/// lattice spanned by `B`.
pub fn coordinates_in(basis: &[IntVector], target: &[i64]) -> Result<Option<Vec<i64>>> {
    let r = basis.len();
    let n = target.len();
    // Echelon form of [B | I]; track combination rows alongside.
    let rows: Vec<Vec<i128>> = basis
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let mut row: Vec<i128> = b.iter().map(|&x| x as i128).collect();
            row.extend((0..r).map(|j| (i == j) as i128));
            row
        })
        .collect();
    let (h, pivots) = hnf_rows(rows)?;
    if pivots.iter().any(|&c| c >= n) {
        return Err(domain("basis vectors are linearly dependent"));
    }
    let mut rem: Vec<i128> = target.iter().map(|&x| x as i128).collect();
    let mut coeff = vec![0i128; r];
    for (row, &c) in h.iter().zip(&pivots) {
        if rem[c] % row[c] != 0 {
            return Ok(None);
        }
        let f = rem[c] / row[c];
        for j in 0..n {
            rem[j] = sub_mul(rem[j], f, row[j])?;
        }
        for j in 0..r {
            coeff[j] = sub_mul(coeff[j], -f, row[n + j])?;
        }
    }
    if rem.iter().any(|&x| x != 0) {
        return Ok(None);
    }
    coeff
        .into_iter()
        .map(to_i64)
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_one_relation() {
        let b = kernel_basis(&[vec![1, 2]], 2).unwrap();
        assert_eq!(b.len(), 1);
        assert!(b[0] == vec![2, -1] || b[0] == vec![-2, 1]);
    }

    #[test]
    fn kernel_without_relations_is_identity() {
        let b = kernel_basis(&[], 2).unwrap();
        assert_eq!(b, vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn complement_of_all_ones_is_a3() {
        let b = kernel_basis(&[vec![1, 1, 1, 1]], 4).unwrap();
        assert_eq!(b.len(), 3);
        for v in &b {
            assert_eq!(v.iter().sum::<i64>(), 0);
        }
        assert_eq!(gram(&b).unwrap().determinant().unwrap(), 4);
        assert_eq!(maximal_minor_gcd(&b).unwrap(), 1);
    }

    #[test]
    fn dependent_relations_are_rejected() {
        let err = kernel_basis(&[vec![1, 2, 3], vec![2, 4, 6]], 3).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn kernel_is_primitive_for_imprimitive_relation() {
        // (2, 4) is not primitive; its complement is still generated by (2, -1).
        let b = kernel_basis(&[vec![2, 4]], 2).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![2, 1]);
    }

    #[test]
    fn gram_examples() {
        assert_eq!(gram(&[vec![2, -1]]).unwrap().rows(), &[vec![5]]);
        assert_eq!(
            gram(&[vec![1, -1, 0], vec![0, 1, -1]]).unwrap().rows(),
            &[vec![2, -1], vec![-1, 2]]
        );
        assert_eq!(gram(&[]).unwrap().rank(), 0);
        assert!(gram(&[vec![1], vec![1, 2]]).is_err());
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&[]).unwrap(), 1);
        assert_eq!(determinant(&[vec![0, 1], vec![1, 0]]).unwrap(), -1);
        assert_eq!(
            determinant(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]).unwrap(),
            4
        );
        assert_eq!(determinant(&[vec![1, 2], vec![2, 4]]).unwrap(), 0);
    }

    #[test]
    fn positive_definiteness() {
        assert!(GramMatrix::positive_definite(vec![vec![2, -1], vec![-1, 2]]).is_ok());
        assert!(GramMatrix::positive_definite(vec![vec![1, 2], vec![2, 1]]).is_err());
        assert!(GramMatrix::new(vec![vec![1, 2], vec![3, 1]]).is_err());
    }

    #[test]
    fn coordinates() {
        let b = vec![vec![1, -1, 0], vec![0, 1, -1]];
        assert_eq!(coordinates_in(&b, &[1, 0, -1]).unwrap(), Some(vec![1, 1]));
        assert_eq!(coordinates_in(&b, &[1, 0, 0]).unwrap(), None);
        let b = vec![vec![2, 0], vec![0, 3]];
        assert_eq!(coordinates_in(&b, &[4, 3]).unwrap(), Some(vec![2, 1]));
        assert_eq!(coordinates_in(&b, &[1, 3]).unwrap(), None);
    }

    #[test]
    fn unit_summands() {
        let g = GramMatrix::new(vec![vec![5]])
            .unwrap()
            .with_unit_summands(2);
        assert_eq!(g.rows(), &[vec![5, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    }
}
