use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::irreducible::{components, is_indecomposable, Component};
use super::{Multigraph, DEFAULT_RANK_CAP};
use crate::arith;
use crate::error::{domain, Error, Result};
use crate::intmat::{determinant, GramMatrix};

/// Vectors `v_0, ..., v_r` summing to zero with pairwise non-positive inner
/// products, any `r` of which form a basis of the host.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ObtuseSuperbase {
    vectors: Vec<Vec<i64>>,
}

impl ObtuseSuperbase {
    /// Validates every superbase axiom against the host Gram matrix.
    pub fn new(g: &GramMatrix, vectors: Vec<Vec<i64>>) -> Result<Self> {
        let r = g.rank();
        if vectors.len() != r + 1 || vectors.iter().any(|v| v.len() != r) {
            return Err(domain(
                "a superbase of a rank-r lattice has r+1 vectors of length r",
            ));
        }
        for c in 0..r {
            let mut s = 0i64;
            for v in &vectors {
                s = arith::add(s, v[c])?;
            }
            if s != 0 {
                return Err(domain("superbase vectors do not sum to zero"));
            }
        }
        for i in 0..vectors.len() {
            for j in 0..i {
                if g.pair(&vectors[i], &vectors[j])? > 0 {
                    return Err(domain("superbase vectors are not pairwise obtuse"));
                }
            }
        }
        if determinant(&vectors[1..])?.abs() != 1 {
            return Err(domain("superbase vectors do not span the lattice"));
        }
        Ok(ObtuseSuperbase { vectors })
    }

    pub fn vectors(&self) -> &[Vec<i64>] {
        &self.vectors
    }

    pub fn into_vectors(self) -> Vec<Vec<i64>> {
        self.vectors
    }
}

/// Outcome of a bounded superbase search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchCertificate {
    Found(ObtuseSuperbase),
    /// No superbase whose vectors all have norm at most `norm_bound`.
    NotFound {
        norm_bound: i64,
        vectors_examined: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Defaults to [`default_norm_bound`].
    pub norm_bound: Option<i64>,
    pub rank_cap: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            norm_bound: None,
            rank_cap: DEFAULT_RANK_CAP,
        }
    }
}

/// Largest diagonal entry plus two.
pub fn default_norm_bound(g: &GramMatrix) -> i64 {
    (0..g.rank()).map(|i| g.get(i, i)).max().unwrap_or(0) + 2
}

/// Searches for an obtuse superbase made of vectors of norm at most the bound.
///
/// The lattice is split into indecomposable summands. In each summand every
/// superbase vector is irreducible, so candidates are irreducibles ordered by
/// norm and then lexicographically; the summand superbases are glued by adding
/// their distinguished vectors.
pub fn find_obtuse_superbase(g: &GramMatrix, opts: &SearchOptions) -> Result<SearchCertificate> {
    find_obtuse_superbase_where(g, opts, &mut |_| true)
}

/// Like [`find_obtuse_superbase`], but each indecomposable summand only
/// accepts superbases (listed with `v_0` first) for which `accept` holds.
pub fn find_obtuse_superbase_where(
    g: &GramMatrix,
    opts: &SearchOptions,
    accept: &mut dyn FnMut(&[Vec<i64>]) -> bool,
) -> Result<SearchCertificate> {
    let r = g.rank();
    if r > opts.rank_cap {
        return Err(Error::Capacity {
            what: "lattice rank",
            cap: opts.rank_cap,
        });
    }
    if !g.is_positive_definite()? {
        return Err(domain("Gram matrix is not positive-definite"));
    }
    let bound = opts.norm_bound.unwrap_or_else(|| default_norm_bound(g));
    if bound < 1 {
        return Err(domain("norm bound must be positive"));
    }
    let comps = components(g, bound)?;
    let mut searches = Vec::with_capacity(comps.len());
    let mut firsts = Vec::with_capacity(comps.len());
    let mut examined = 0u64;
    for comp in &comps {
        let mut search = Search::new(g, comp, bound)?;
        let mut first = None;
        search.run(&mut |b| {
            first = Some(b);
            Ok(true)
        })?;
        examined += search.examined;
        match first {
            Some(b) => firsts.push(b),
            None => {
                return Ok(SearchCertificate::NotFound {
                    norm_bound: bound,
                    vectors_examined: examined,
                })
            }
        }
        searches.push(search);
    }
    let mut out = None;
    let mut partial = vec![vec![0i64; r]];
    glue(&mut searches, &firsts, &mut partial, &mut |b| {
        if accept(b) {
            out = Some(b.to_vec());
        }
        Ok(out.is_some())
    })?;
    match out {
        Some(vectors) => ObtuseSuperbase::new(g, vectors)
            .map(SearchCertificate::Found)
            .map_err(|e| {
                Error::Internal(alloc::format!("search produced an invalid superbase: {e}"))
            }),
        None => Ok(SearchCertificate::NotFound {
            norm_bound: bound,
            vectors_examined: examined,
        }),
    }
}

/// Walks every way of joining one superbase per summand at a shared vertex:
/// the new `v_0` is the sum of one chosen vector from each. `partial` holds the
/// running `v_0` followed by the vectors placed so far. The first summand
/// superbase is always tried first, so an accept-all walk stops immediately.
fn glue(
    searches: &mut [Search],
    firsts: &[Vec<Vec<i64>>],
    partial: &mut Vec<Vec<i64>>,
    visit: &mut dyn FnMut(&[Vec<i64>]) -> Result<bool>,
) -> Result<bool> {
    let Some((search, later)) = searches.split_first_mut() else {
        return visit(partial);
    };
    let mut place = |b: &[Vec<i64>], partial: &mut Vec<Vec<i64>>| -> Result<bool> {
        for k in 0..b.len() {
            let saved = partial[0].clone();
            for (a, x) in partial[0].iter_mut().zip(&b[k]) {
                *a = arith::add(*a, *x)?;
            }
            let len = partial.len();
            partial.extend(
                b.iter()
                    .enumerate()
                    .filter(|&(i, _)| i != k)
                    .map(|(_, v)| v.clone()),
            );
            let stop = glue(later, &firsts[1..], partial, visit)?;
            partial.truncate(len);
            partial[0] = saved;
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    };
    if place(&firsts[0], partial)? {
        return Ok(true);
    }
    let first = &firsts[0];
    search.run(&mut |b| {
        if b == *first {
            Ok(false)
        } else {
            place(&b, partial)
        }
    })
}

/// Backtracking over one indecomposable summand.
struct Search {
    cands: Vec<(Vec<i64>, i64)>,
    /// `G v` for each candidate, so inner products are plain dot products.
    images: Vec<Vec<i64>>,
    index: BTreeMap<Vec<i64>, usize>,
    /// Bit `j` of row `i`: candidates `i` and `j` are pairwise obtuse.
    compat: Vec<Vec<u64>>,
    rank: usize,
    det: i64,
    bound: i64,
    g: GramMatrix,
    examined: u64,
}

struct State {
    chosen: Vec<usize>,
    sum: Vec<i64>,
    /// `|v|^2` minus the absolute products with the other chosen vectors.
    deficit: Vec<i64>,
    echelon: Vec<(usize, Vec<i128>)>,
}

impl Search {
    fn new(g: &GramMatrix, comp: &Component, bound: i64) -> Result<Self> {
        let cands = comp.irreducibles.clone();
        let images = cands
            .iter()
            .map(|(v, _)| {
                g.rows()
                    .iter()
                    .map(|row| arith::dot(row, v))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let m = cands.len();
        let words = m.div_ceil(64);
        let mut compat = vec![vec![0u64; words]; m];
        for i in 0..m {
            for j in 0..m {
                if i != j && arith::dot(&images[i], &cands[j].0)? <= 0 {
                    compat[i][j / 64] |= 1 << (j % 64);
                }
            }
        }
        let index = cands
            .iter()
            .enumerate()
            .map(|(i, (v, _))| (v.clone(), i))
            .collect();
        let det = g.transform(&comp.basis)?.determinant()?;
        Ok(Search {
            cands,
            images,
            index,
            compat,
            rank: comp.rank(),
            det,
            bound,
            g: g.clone(),
            examined: 0,
        })
    }

    /// Calls `visit` on each superbase (with `v_0` first) until it returns true.
    fn run(&mut self, visit: &mut dyn FnMut(Vec<Vec<i64>>) -> Result<bool>) -> Result<bool> {
        let n = self.g.rank();
        let mut st = State {
            chosen: Vec::new(),
            sum: vec![0; n],
            deficit: Vec::new(),
            echelon: Vec::new(),
        };
        let all = vec![u64::MAX; self.cands.len().div_ceil(64)];
        self.extend(&mut st, &all, visit)
    }

    fn dot(&self, i: usize, j: usize) -> i64 {
        self.images[i]
            .iter()
            .zip(&self.cands[j].0)
            .map(|(a, b)| a * b)
            .sum()
    }

    fn extend(
        &mut self,
        st: &mut State,
        allowed: &[u64],
        visit: &mut dyn FnMut(Vec<Vec<i64>>) -> Result<bool>,
    ) -> Result<bool> {
        if st.chosen.len() == self.rank {
            return match self.close(st)? {
                Some(b) => visit(b),
                None => Ok(false),
            };
        }
        let start = st.chosen.last().map_or(0, |&i| i + 1);
        let remaining = (self.rank - st.chosen.len()) as i64;
        for w in start..self.cands.len() {
            if allowed[w / 64] >> (w % 64) & 1 == 0 {
                continue;
            }
            self.examined += 1;
            let products: Vec<i64> = st.chosen.iter().map(|&u| -self.dot(u, w)).collect();
            let own = self.cands[w].1 - products.iter().sum::<i64>();
            if own < 0 || st.deficit.iter().zip(&products).any(|(d, p)| d < p) {
                continue;
            }
            let Some(row) = reduce(&st.echelon, &self.cands[w].0)? else {
                continue;
            };
            let sum: Vec<i64> = st
                .sum
                .iter()
                .zip(&self.cands[w].0)
                .map(|(a, b)| a + b)
                .collect();
            let deficits: i64 = st
                .deficit
                .iter()
                .zip(&products)
                .map(|(d, p)| d - p)
                .sum::<i64>()
                + own;
            // The unchosen vectors and v_0 add up to -sum and must absorb every deficit.
            let budget = remaining * self.bound;
            if deficits > budget || self.g.pair(&sum, &sum)? > budget {
                continue;
            }
            let next: Vec<u64> = allowed
                .iter()
                .zip(&self.compat[w])
                .map(|(a, b)| a & b)
                .collect();
            let saved = (st.sum.clone(), st.deficit.clone());
            for (d, p) in st.deficit.iter_mut().zip(&products) {
                *d -= p;
            }
            st.deficit.push(own);
            st.sum = sum;
            st.chosen.push(w);
            st.echelon.push(row);
            let stop = self.extend(st, &next, visit)?;
            st.echelon.pop();
            st.chosen.pop();
            (st.sum, st.deficit) = saved;
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// All `r` vectors are chosen; `v_0 = -sum` must be a later candidate.
    fn close(&self, st: &State) -> Result<Option<Vec<Vec<i64>>>> {
        let v0: Vec<i64> = st.sum.iter().map(|x| -x).collect();
        let Some(&k) = self.index.get(&v0) else {
            return Ok(None);
        };
        if st.chosen.last().is_some_and(|&last| k <= last) {
            return Ok(None);
        }
        let basis: Vec<Vec<i64>> = st.chosen.iter().map(|&i| self.cands[i].0.clone()).collect();
        if self.g.transform(&basis)?.determinant()? != self.det {
            return Ok(None);
        }
        let mut out = vec![v0];
        out.extend(basis);
        Ok(Some(out))
    }
}

/// Row-reduces `v` against an echelon list; `None` when `v` is dependent.
fn reduce(echelon: &[(usize, Vec<i128>)], v: &[i64]) -> Result<Option<(usize, Vec<i128>)>> {
    let mut w: Vec<i128> = v.iter().map(|&x| x as i128).collect();
    for (p, row) in echelon {
        if w[*p] == 0 {
            continue;
        }
        let (a, b) = (row[*p], w[*p]);
        for (x, &y) in w.iter_mut().zip(row) {
            *x = a
                .checked_mul(*x)
                .zip(b.checked_mul(y))
                .and_then(|(s, t)| s.checked_sub(t))
                .ok_or(Error::Overflow)?;
        }
        let g = w.iter().fold(0, |acc, &x| arith::gcd128(acc, x));
        if g > 1 {
            w.iter_mut().for_each(|x| *x /= g);
        }
    }
    Ok(w.iter().position(|&x| x != 0).map(|p| (p, w)))
}

/// The graph on the superbase with `|v_i . v_j|` parallel edges.
pub fn superbase_graph(g: &GramMatrix, b: &ObtuseSuperbase) -> Result<Multigraph> {
    let b = ObtuseSuperbase::new(g, b.vectors.clone())?;
    let mut edges = Vec::new();
    for i in 0..b.vectors.len() {
        for j in i + 1..b.vectors.len() {
            let p = g.pair(&b.vectors[i], &b.vectors[j])?;
            edges.extend(core::iter::repeat((i, j)).take((-p) as usize));
        }
    }
    let graph = Multigraph::new(b.vectors.len(), edges)?;
    if !graph.is_connected() {
        return Err(domain("superbase graph is disconnected"));
    }
    Ok(graph)
}

/// Replaces `v = x + y` (with `x . y = -1`) by `x` and `y`, merging the unique
/// members `u_1, u_2` with `u_1 . x > 0` and `u_2 . y > 0` into `u_1 + u_2`.
pub fn superbase_modify(
    g: &GramMatrix,
    b: &ObtuseSuperbase,
    v: &[i64],
    x: &[i64],
    y: &[i64],
) -> Result<ObtuseSuperbase> {
    let b = ObtuseSuperbase::new(g, b.vectors.clone())?;
    let Some(vi) = b.vectors.iter().position(|w| w == v) else {
        return Err(domain("v is not a superbase vector"));
    };
    if x.len() != v.len()
        || y.len() != v.len()
        || x.iter().zip(y).zip(v).any(|((a, b), c)| a + b != *c)
    {
        return Err(domain("x + y differs from v"));
    }
    if g.pair(x, y)? != -1 {
        return Err(domain("x . y must equal -1"));
    }
    if !is_indecomposable(g)? {
        return Err(domain("host lattice is decomposable"));
    }
    let unique = |target: &[i64]| -> Result<usize> {
        let mut hits = Vec::new();
        for (i, u) in b.vectors.iter().enumerate() {
            if i != vi && g.pair(u, target)? > 0 {
                hits.push(i);
            }
        }
        match hits[..] {
            [i] => Ok(i),
            _ => Err(domain(
                "no unique superbase vector pairs positively with the split",
            )),
        }
    };
    let (u1, u2) = (unique(x)?, unique(y)?);
    if u1 == u2 {
        return Err(domain("both halves of the split pair with the same vector"));
    }
    let mut out = Vec::with_capacity(b.vectors.len());
    for (i, u) in b.vectors.iter().enumerate() {
        if i == vi {
            out.push(x.to_vec());
        } else if i == u1 {
            out.push(u.iter().zip(&b.vectors[u2]).map(|(a, c)| a + c).collect());
        } else if i != u2 {
            out.push(u.clone());
        }
    }
    out.push(y.to_vec());
    ObtuseSuperbase::new(g, out)
}
