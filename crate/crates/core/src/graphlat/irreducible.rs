use alloc::vec;
use alloc::vec::Vec;

use crate::enumerate::short_vectors;
use crate::error::{domain, Result};
use crate::intmat::{hnf_rows, GramMatrix};
use crate::reduce::lll;

/// Irreducible vectors among a norm-sorted list of all short vectors.
///
/// `z` is reducible iff some lattice `x` with `x.z >= x.x` and `0 < |x| < |z|`
/// exists, and every such `x` is shorter than `z`, so it lies earlier in the list.
fn filter_irreducible(g: &GramMatrix, all: &[(Vec<i64>, i64)]) -> Result<Vec<(Vec<i64>, i64)>> {
    // Images `G x` turn inner products into plain dot products.
    let images = all
        .iter()
        .map(|(x, _)| {
            g.rows()
                .iter()
                .map(|row| crate::arith::dot(row, x))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for (k, (z, nz)) in all.iter().enumerate() {
        let reducible = all[..k]
            .iter()
            .zip(&images)
            .take_while(|((_, nx), _)| nx < nz)
            .any(|((_, nx), gx)| gx.iter().zip(z).map(|(a, b)| a * b).sum::<i64>() >= *nx);
        if !reducible {
            out.push((z.clone(), *nz));
        }
    }
    Ok(out)
}

/// Every irreducible vector of norm at most `norm_bound`, in coordinates of
/// the basis of `g`, sorted by norm and then lexicographically.
pub fn irreducibles(g: &GramMatrix, norm_bound: i64) -> Result<Vec<Vec<i64>>> {
    if norm_bound < 1 {
        return Err(domain("norm bound must be positive"));
    }
    Ok(irreducibles_with_norms(g, norm_bound)?
        .into_iter()
        .map(|(v, _)| v)
        .collect())
}

pub(crate) fn irreducibles_with_norms(
    g: &GramMatrix,
    norm_bound: i64,
) -> Result<Vec<(Vec<i64>, i64)>> {
    filter_irreducible(g, &short_vectors(g, norm_bound)?)
}

/// An indecomposable orthogonal summand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// Hermite-normal basis of the summand, in coordinates of the host basis.
    pub basis: Vec<Vec<i64>>,
    /// Irreducible vectors of the summand up to the requested norm.
    pub irreducibles: Vec<(Vec<i64>, i64)>,
}

impl Component {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

/// Splits the lattice into its indecomposable summands.
///
/// Irreducibles up to the longest vector of an LLL-reduced basis generate the
/// lattice; the summands are the classes of the non-orthogonality relation on
/// them. Each component also lists its irreducibles of norm at most `norm_bound`.
pub fn components(g: &GramMatrix, norm_bound: i64) -> Result<Vec<Component>> {
    let n = g.rank();
    if n == 0 {
        return Ok(Vec::new());
    }
    let reduced = lll(g)?.gram;
    let reach = (0..n)
        .map(|i| reduced.get(i, i))
        .max()
        .unwrap_or(0)
        .max(norm_bound);
    let irr = irreducibles_with_norms(g, reach)?;
    let m = irr.len();
    let mut comp = vec![usize::MAX; m];
    let mut count = 0;
    for s in 0..m {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = count;
        let mut stack = vec![s];
        while let Some(i) = stack.pop() {
            for j in 0..m {
                if comp[j] == usize::MAX && g.pair(&irr[i].0, &irr[j].0)? != 0 {
                    comp[j] = count;
                    stack.push(j);
                }
            }
        }
        count += 1;
    }
    let mut out = Vec::with_capacity(count);
    for c in 0..count {
        let members: Vec<&(Vec<i64>, i64)> = irr
            .iter()
            .zip(&comp)
            .filter(|(_, &k)| k == c)
            .map(|(v, _)| v)
            .collect();
        let rows = members
            .iter()
            .map(|(v, _)| v.iter().map(|&x| x as i128).collect())
            .collect();
        let (h, _) = hnf_rows(rows)?;
        let basis = h
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(crate::arith::to_i64)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let irreducibles = members
            .into_iter()
            .filter(|(_, nv)| *nv <= norm_bound)
            .cloned()
            .collect();
        out.push(Component {
            basis,
            irreducibles,
        });
    }
    // Canonical order: by the first basis row.
    out.sort_by(|a, b| b.basis.cmp(&a.basis));
    Ok(out)
}

/// True iff the lattice is nonzero and admits no nontrivial orthogonal splitting.
pub fn is_indecomposable(g: &GramMatrix) -> Result<bool> {
    Ok(components(g, 1)?.len() == 1)
}
