//! Graph lattices, irreducible vectors, obtuse superbases and lattice isometry.

mod irreducible;
mod isometry;
mod superbase;

pub use irreducible::{components, irreducibles, is_indecomposable, Component};
pub use isometry::{lattice_isomorphic, lattice_isomorphic_capped, Isometry, DEFAULT_RANK_CAP};
pub use superbase::{
    default_norm_bound, find_obtuse_superbase, find_obtuse_superbase_where, superbase_graph,
    superbase_modify, ObtuseSuperbase, SearchCertificate, SearchOptions,
};

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{domain, Result};
use crate::intmat::{determinant, GramMatrix};

/// An undirected loopless multigraph on vertices `0..vertices`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multigraph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(u, v) in &edges {
            if u >= vertices || v >= vertices {
                return Err(domain("edge endpoint out of range"));
            }
            if u == v {
                return Err(domain("self-loops are not allowed"));
            }
        }
        Ok(Multigraph { vertices, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertices)
            .map(|v| self.degree(v))
            .max()
            .unwrap_or(0)
    }

    /// Edge multiplicity between distinct vertices.
    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
            .count()
    }

    /// True iff the vertices outside `removed` induce a connected subgraph.
    /// An empty remainder counts as connected.
    fn connected_without(&self, removed: Option<usize>) -> bool {
        let alive = |v: usize| Some(v) != removed;
        let Some(start) = (0..self.vertices).find(|&v| alive(v)) else {
            return true;
        };
        let mut adj = vec![Vec::new(); self.vertices];
        for &(u, v) in &self.edges {
            if alive(u) && alive(v) {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        let mut seen = vec![false; self.vertices];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        (0..self.vertices).all(|v| !alive(v) || seen[v])
    }

    pub fn is_connected(&self) -> bool {
        self.connected_without(None)
    }

    /// Full Laplacian: degrees on the diagonal, minus multiplicities off it.
    pub fn laplacian(&self) -> Vec<Vec<i64>> {
        let n = self.vertices;
        let mut m = vec![vec![0i64; n]; n];
        for &(u, v) in &self.edges {
            m[u][u] += 1;
            m[v][v] += 1;
            m[u][v] -= 1;
            m[v][u] -= 1;
        }
        m
    }
}

/// The graph lattice presented by the Laplacian with the root row and column removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphLattice {
    pub graph: Multigraph,
    pub root: usize,
    pub gram: GramMatrix,
}

pub fn laplacian_lattice(g: &Multigraph, root: usize) -> Result<GraphLattice> {
    if root >= g.vertex_count() {
        return Err(domain("root vertex out of range"));
    }
    if !g.is_connected() {
        return Err(domain("graph is disconnected"));
    }
    let rows = reduced_laplacian(g, root);
    Ok(GraphLattice {
        graph: g.clone(),
        root,
        gram: GramMatrix::positive_definite(rows)?,
    })
}

fn reduced_laplacian(g: &Multigraph, root: usize) -> Vec<Vec<i64>> {
    g.laplacian()
        .into_iter()
        .enumerate()
        .filter(|&(i, _)| i != root)
        .map(|(_, row)| {
            row.into_iter()
                .enumerate()
                .filter(|&(j, _)| j != root)
                .map(|(_, x)| x)
                .collect()
        })
        .collect()
}

/// Kirchhoff's count: the determinant of any reduced Laplacian (0 if disconnected).
pub fn spanning_tree_count(g: &Multigraph) -> Result<i64> {
    if g.vertex_count() == 0 {
        return Ok(0);
    }
    determinant(&reduced_laplacian(g, 0))
}

/// Connected with no cut vertex.
pub fn is_two_connected(g: &Multigraph) -> bool {
    g.is_connected()
        && (g.vertex_count() < 3 || (0..g.vertex_count()).all(|v| g.connected_without(Some(v))))
}
