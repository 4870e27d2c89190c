//! JSON file formats. Every type serializes with a fixed key order.

use std::collections::BTreeMap;

use changemaker_core::cmlattice::EmbeddedLattice;
use changemaker_core::goeritz::{PDCode, WhiteDiagram};
use changemaker_core::graphlat::{Multigraph, SearchCertificate};
use changemaker_core::recovery::AlexanderPolynomial;
use changemaker_core::{GramMatrix, Rational};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// `{"ambient_rank", "relations", "basis", "gram", "slope"}`.
///
/// Only `gram` is needed to load a lattice; the other fields are checked for
/// consistency when present.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient_rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<i64>>>,
    pub gram: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slope: Option<String>,
}

impl From<&EmbeddedLattice> for LatticeFile {
    fn from(l: &EmbeddedLattice) -> Self {
        LatticeFile {
            ambient_rank: Some(l.ambient_rank),
            relations: Some(l.relations.clone()),
            basis: Some(l.basis.clone()),
            gram: l.gram.rows().to_vec(),
            slope: l.slope.map(|s| s.to_string()),
        }
    }
}

impl LatticeFile {
    /// The Gram matrix, after checking it against the basis and the slope.
    pub fn to_gram(&self) -> Result<GramMatrix, CliError> {
        let g = GramMatrix::positive_definite(self.gram.clone())
            .map_err(|e| CliError::Parse(format!("gram: {e}")))?;
        if let Some(basis) = &self.basis {
            let from_basis = changemaker_core::gram(basis)
                .map_err(|e| CliError::Parse(format!("basis: {e}")))?;
            if from_basis != g {
                return Err(CliError::Parse("gram does not match the basis".into()));
            }
            if let Some(n) = self.ambient_rank {
                if basis.iter().any(|b| b.len() != n) {
                    return Err(CliError::Parse(
                        "basis vectors do not have length ambient_rank".into(),
                    ));
                }
            }
        }
        if let Some(s) = &self.slope {
            s.parse::<Rational>()
                .map_err(|e| CliError::Parse(format!("slope: {e}")))?;
        }
        Ok(g)
    }
}

/// `{"coeffs": {"<exponent>": c}}`; both `t^k` and `t^-k` must be listed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlexanderFile {
    pub coeffs: BTreeMap<String, i64>,
}

impl AlexanderFile {
    pub fn to_polynomial(&self) -> Result<AlexanderPolynomial, CliError> {
        let mut terms = Vec::with_capacity(self.coeffs.len());
        for (k, &c) in &self.coeffs {
            let e = k
                .trim()
                .parse::<i64>()
                .map_err(|_| CliError::Parse(format!("exponent `{k}` is not an integer")))?;
            terms.push((e, c));
        }
        let p = AlexanderPolynomial::new(terms);
        if !p.is_symmetric() {
            return Err(CliError::Parse(
                "polynomial is not symmetric under t -> 1/t".into(),
            ));
        }
        Ok(p)
    }

    pub fn from_polynomial(p: &AlexanderPolynomial) -> Self {
        AlexanderFile {
            coeffs: p
                .coeffs()
                .iter()
                .map(|(e, c)| (e.to_string(), *c))
                .collect(),
        }
    }
}

/// `{"vertices": n, "edges": [[u, v], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
}

impl GraphFile {
    pub fn to_graph(&self) -> Result<Multigraph, CliError> {
        Multigraph::new(
            self.vertices,
            self.edges.iter().map(|&[u, v]| (u, v)).collect(),
        )
        .map_err(|e| CliError::Parse(format!("graph: {e}")))
    }
}

impl From<&Multigraph> for GraphFile {
    fn from(g: &Multigraph) -> Self {
        GraphFile {
            vertices: g.vertex_count(),
            edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

/// `{"crossings": [[a, b, c, d], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PdFile {
    pub crossings: Vec<[i64; 4]>,
}

impl PdFile {
    pub fn to_pd(&self) -> Result<PDCode, CliError> {
        PDCode::new(self.crossings.clone()).map_err(|e| CliError::Parse(format!("PD code: {e}")))
    }
}

/// Graph JSON plus `"mu"`, parallel to the edge list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WhiteDiagramFile {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
    pub mu: Vec<i64>,
}

impl From<&WhiteDiagram> for WhiteDiagramFile {
    fn from(w: &WhiteDiagram) -> Self {
        WhiteDiagramFile {
            vertices: w.vertex_count(),
            edges: w.edges().iter().map(|&(u, v)| [u, v]).collect(),
            mu: w.mu().to_vec(),
        }
    }
}

/// Mirrors [`SearchCertificate`]; the graph accompanies a found superbase.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub outcome: String,
    pub norm_bound: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vectors_examined: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub superbase: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphFile>,
}

impl CertificateFile {
    pub fn new(cert: &SearchCertificate, bound: i64, graph: Option<&Multigraph>) -> Self {
        match cert {
            SearchCertificate::Found(b) => CertificateFile {
                outcome: "FOUND".into(),
                norm_bound: bound,
                vectors_examined: None,
                superbase: Some(b.vectors().to_vec()),
                graph: graph.map(GraphFile::from),
            },
            SearchCertificate::NotFound {
                norm_bound,
                vectors_examined,
            } => CertificateFile {
                outcome: "NOT_FOUND".into(),
                norm_bound: *norm_bound,
                vectors_examined: Some(*vectors_examined),
                superbase: None,
                graph: None,
            },
        }
    }
}

/// Reads and deserializes a JSON file.
pub fn read_json<T: serde::de::DeserializeOwned>(path: &std::path::Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}
