use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::enumerate::{row_times, short_vectors};
use crate::error::{domain, Error, Result};
use crate::intmat::GramMatrix;
use crate::reduce::lll;

/// Largest rank accepted by the superbase search and the isometry test.
pub const DEFAULT_RANK_CAP: usize = 12;

/// A unimodular `M` with `M B M^T = A`; row `i` is the image of the `i`-th
/// basis vector of `A` written in the basis of `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isometry {
    pub map: Vec<Vec<i64>>,
}

/// Decides whether two positive-definite Gram matrices present the same
/// lattice, returning a witness on success. Uses [`DEFAULT_RANK_CAP`].
pub fn lattice_isomorphic(a: &GramMatrix, b: &GramMatrix) -> Result<Option<Isometry>> {
    lattice_isomorphic_capped(a, b, DEFAULT_RANK_CAP)
}

pub fn lattice_isomorphic_capped(
    a: &GramMatrix,
    b: &GramMatrix,
    rank_cap: usize,
) -> Result<Option<Isometry>> {
    if a.rank().max(b.rank()) > rank_cap {
        return Err(Error::Capacity {
            what: "lattice rank",
            cap: rank_cap,
        });
    }
    if !a.is_positive_definite()? || !b.is_positive_definite()? {
        return Err(domain(
            "isometry test needs positive-definite Gram matrices",
        ));
    }
    if a.rank() != b.rank() || a.determinant()? != b.determinant()? {
        return Ok(None);
    }
    let (ra, rb) = (lll(a)?, lll(b)?);
    let n = a.rank();
    let target = ra.gram.rows();
    // Candidate images per required norm, in reduced coordinates of B.
    let mut pools: BTreeMap<i64, Vec<Vec<i64>>> = BTreeMap::new();
    let max_norm = (0..n).map(|i| target[i][i]).max().unwrap_or(0);
    for (v, norm) in short_vectors(&rb.gram, max_norm)? {
        pools.entry(norm).or_default().push(v);
    }
    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(n);
    if !assign(&rb.gram, target, &pools, &mut rows)? {
        return Ok(None);
    }
    // A = Ta^-1 Y Tb B Tb^T Y^T Ta^-T.
    let mut map = Vec::with_capacity(n);
    for row in &ra.t_inv {
        let y = row_times(row, &rows)?;
        map.push(row_times(&y, &rb.t)?);
    }
    if b.transform(&map)? != *a {
        return Err(Error::Internal(
            "isometry witness failed verification".into(),
        ));
    }
    Ok(Some(Isometry { map }))
}

/// Extends `rows` one image at a time so that `rows B rows^T` matches `target`.
fn assign(
    b: &GramMatrix,
    target: &[Vec<i64>],
    pools: &BTreeMap<i64, Vec<Vec<i64>>>,
    rows: &mut Vec<Vec<i64>>,
) -> Result<bool> {
    let i = rows.len();
    if i == target.len() {
        return Ok(true);
    }
    let Some(pool) = pools.get(&target[i][i]) else {
        return Ok(false);
    };
    for v in pool {
        // The isometry -1 lets the first image be fixed up to sign.
        if i == 0 && v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
            continue;
        }
        let mut ok = true;
        for (j, w) in rows.iter().enumerate() {
            if b.pair(v, w)? != target[i][j] {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        rows.push(v.clone());
        if assign(b, target, pools, rows)? {
            return Ok(true);
        }
        rows.pop();
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphlat::{laplacian_lattice, Multigraph};
    use crate::intmat::kernel_basis;
    use alloc::vec;

    fn pd(rows: Vec<Vec<i64>>) -> GramMatrix {
        GramMatrix::positive_definite(rows).unwrap()
    }

    #[test]
    fn small_cases() {
        let a = pd(vec![vec![2, -1], vec![-1, 2]]);
        let b = pd(vec![vec![2, 1], vec![1, 2]]);
        let m = lattice_isomorphic(&a, &b).unwrap().unwrap();
        assert_eq!(b.transform(&m.map).unwrap(), a);
        assert!(lattice_isomorphic(&pd(vec![vec![5]]), &pd(vec![vec![4]]))
            .unwrap()
            .is_none());
        // Same determinant, different minimum.
        let c = pd(vec![vec![1, 0], vec![0, 3]]);
        assert!(lattice_isomorphic(&a, &c).unwrap().is_none());
    }

    #[test]
    fn cycle_against_root_system() {
        let c5 = Multigraph::new(5, (0..5).map(|i| (i, (i + 1) % 5)).collect()).unwrap();
        let lat = laplacian_lattice(&c5, 0).unwrap();
        let a4 = crate::intmat::gram(&kernel_basis(&[vec![1; 5]], 5).unwrap()).unwrap();
        assert!(lattice_isomorphic(&lat.gram, &a4).unwrap().is_some());
    }

    #[test]
    fn rank_cap() {
        let z = GramMatrix::identity(3);
        assert!(matches!(
            lattice_isomorphic_capped(&z, &z, 2),
            Err(Error::Capacity { .. })
        ));
    }
}
