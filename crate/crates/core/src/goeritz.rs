//! Planar diagram codes, white graphs, Goeritz matrices and the check that a
//! diagram's white lattice matches a predicted changemaker lattice.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::cmlattice::{changemaker_lattice, slope_window, StableCoefficients};
use crate::error::{domain, Error, Result};
use crate::graphlat::{
    find_obtuse_superbase, lattice_isomorphic, Multigraph, SearchCertificate, SearchOptions,
};
use crate::intmat::GramMatrix;
use crate::rational::Rational;
use crate::recovery::{recover_stable, v_sequence, AlexanderPolynomial, RecoveryOutcome};

/// A planar diagram code: per crossing, four arc labels listed counterclockwise
/// starting from the incoming under-strand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PDCode {
    crossings: Vec<[i64; 4]>,
}

/// Position of a label occurrence: crossing index and slot `0..4`.
type Slot = (usize, usize);

impl PDCode {
    /// Checks labels (positive, each used exactly twice) and that the diagram
    /// is connected and traces a planar map.
    pub fn new(crossings: Vec<[i64; 4]>) -> Result<Self> {
        if crossings.is_empty() {
            return Err(Error::Parse("a PD code needs at least one crossing".into()));
        }
        let mut seen: BTreeMap<i64, usize> = BTreeMap::new();
        for &label in crossings.iter().flatten() {
            if label <= 0 {
                return Err(Error::Parse(format!("arc label {label} is not positive")));
            }
            *seen.entry(label).or_default() += 1;
        }
        if let Some((label, count)) = seen.iter().find(|(_, &c)| c != 2) {
            return Err(Error::Parse(format!(
                "arc {label} appears {count} times, expected 2"
            )));
        }
        let pd = PDCode { crossings };
        if !pd.is_connected() {
            return Err(Error::Parse("diagram is not connected".into()));
        }
        let faces = pd.faces().iter().flatten().max().map_or(0, |&m| m + 1);
        if faces != pd.crossings.len() + 2 {
            return Err(Error::Parse(format!(
                "face tracing found {faces} faces, a planar diagram with {} crossings has {}",
                pd.crossings.len(),
                pd.crossings.len() + 2
            )));
        }
        Ok(pd)
    }

    pub fn crossings(&self) -> &[[i64; 4]] {
        &self.crossings
    }

    /// The other occurrence of the label at `slot`.
    fn partner(&self, (x, i): Slot) -> Slot {
        let label = self.crossings[x][i];
        for (y, c) in self.crossings.iter().enumerate() {
            for (j, &l) in c.iter().enumerate() {
                if l == label && (y, j) != (x, i) {
                    return (y, j);
                }
            }
        }
        unreachable!("labels are validated to appear twice")
    }

    fn is_connected(&self) -> bool {
        let n = self.crossings.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for i in 0..4 {
                let (y, _) = self.partner((x, i));
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Face index of every corner. Corner `(x, i)` is the wedge between slots
    /// `i` and `i + 1`; following slot `i + 1` along its arc to `(y, j)` lands
    /// in corner `(y, j)` of the same face.
    fn faces(&self) -> Vec<[usize; 4]> {
        let n = self.crossings.len();
        let mut face = vec![[usize::MAX; 4]; n];
        let mut count = 0;
        for x in 0..n {
            for i in 0..4 {
                let (mut cx, mut ci) = (x, i);
                while face[cx][ci] == usize::MAX {
                    face[cx][ci] = count;
                    (cx, ci) = self.partner((cx, (ci + 1) % 4));
                }
                if face[x][i] == count {
                    count += 1;
                }
            }
        }
        face
    }
}

/// One of the two chessboard colorings: `A` makes the face containing corner
/// `(0, 1)` white, `B` the other class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coloring {
    A,
    B,
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Coloring::A => "A",
            Coloring::B => "B",
        })
    }
}

/// White regions as vertices and crossings as edges, with the incidence sign
/// of each crossing. Loops are kept so nugatory crossings can be reported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WhiteDiagram {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    mu: Vec<i64>,
}

impl WhiteDiagram {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>, mu: Vec<i64>) -> Result<Self> {
        if edges.len() != mu.len() {
            return Err(domain("mu must have one entry per edge"));
        }
        if mu.iter().any(|&m| m != 1 && m != -1) {
            return Err(domain("incidence numbers must be +1 or -1"));
        }
        if edges.iter().any(|&(u, v)| u >= vertices || v >= vertices) {
            return Err(domain("edge endpoint out of range"));
        }
        Ok(WhiteDiagram {
            vertices,
            edges,
            mu,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn mu(&self) -> &[i64] {
        &self.mu
    }

    /// The diagram of the mirror image: every incidence number flips.
    pub fn mirror(&self) -> Self {
        WhiteDiagram {
            mu: self.mu.iter().map(|m| -m).collect(),
            ..self.clone()
        }
    }

    /// The underlying graph; fails when there are self-loops.
    pub fn graph(&self) -> Result<Multigraph> {
        Multigraph::new(self.vertices, self.edges.clone())
    }

    /// Describes the first self-loop or cut-edge, if any.
    pub fn nugatory(&self) -> Option<String> {
        if let Some(e) = self.edges.iter().position(|&(u, v)| u == v) {
            return Some(format!("crossing {e} is a self-loop of the white graph"));
        }
        let g = self.graph().ok()?;
        if !g.is_connected() {
            return Some("white graph is disconnected".into());
        }
        (0..self.edges.len()).find_map(|e| {
            let mut rest = self.edges.clone();
            rest.remove(e);
            let h = Multigraph::new(self.vertices, rest).ok()?;
            (!h.is_connected()).then(|| format!("crossing {e} is a cut-edge of the white graph"))
        })
    }

    pub fn is_reduced(&self) -> bool {
        self.nugatory().is_none()
    }
}

/// The white graph of a PD code under the given coloring.
///
/// Slots `0..4` bound corners `0..4`; corners `0, 2` share a color and so do
/// `1, 3`. A crossing has `mu = -1` when its white corners are `0` and `2`.
pub fn white_graph_from_pd(pd: &PDCode, coloring: Coloring) -> Result<WhiteDiagram> {
    let faces = pd.faces();
    let count = pd.crossings.len() + 2;
    // Corners (x, i) and (x, i + 1) lie on opposite sides of an arc.
    let mut color = vec![None; count];
    color[faces[0][1]] = Some(true);
    let mut changed = true;
    while changed {
        changed = false;
        for f in &faces {
            for i in 0..4 {
                let (a, b) = (f[i], f[(i + 1) % 4]);
                match (color[a], color[b]) {
                    (Some(ca), Some(cb)) if ca == cb => {
                        return Err(Error::Parse(
                            "diagram faces admit no chessboard coloring".into(),
                        ));
                    }
                    (Some(ca), None) => {
                        color[b] = Some(!ca);
                        changed = true;
                    }
                    (None, Some(cb)) => {
                        color[a] = Some(!cb);
                        changed = true;
                    }
                    _ => {}
                }
            }
        }
    }
    let want = coloring == Coloring::A;
    let mut index = vec![usize::MAX; count];
    let mut vertices = 0;
    for (k, c) in color.iter().enumerate() {
        if *c == Some(want) {
            index[k] = vertices;
            vertices += 1;
        }
    }
    let mut edges = Vec::with_capacity(faces.len());
    let mut mu = Vec::with_capacity(faces.len());
    for f in &faces {
        let (even, sign) = if color[f[0]] == Some(want) {
            (true, -1)
        } else {
            (false, 1)
        };
        let (a, b) = if even { (f[0], f[2]) } else { (f[1], f[3]) };
        edges.push((index[a], index[b]));
        mu.push(sign);
    }
    WhiteDiagram::new(vertices, edges, mu)
}

/// `g_ij = sum of mu over edges between v_i and v_j`, and
/// `g_ii = -(sum of mu over non-loop edges at v_i)`, with `dropped` removed.
pub fn goeritz_matrix(w: &WhiteDiagram, dropped: usize) -> Result<GramMatrix> {
    let n = w.vertices;
    if dropped >= n {
        return Err(domain("dropped vertex out of range"));
    }
    let mut full = vec![vec![0i64; n]; n];
    for (&(u, v), &m) in w.edges.iter().zip(&w.mu) {
        if u == v {
            continue;
        }
        full[u][v] += m;
        full[v][u] += m;
        full[u][u] -= m;
        full[v][v] -= m;
    }
    let rows = full
        .into_iter()
        .enumerate()
        .filter(|&(i, _)| i != dropped)
        .map(|(_, r)| {
            r.into_iter()
                .enumerate()
                .filter(|&(j, _)| j != dropped)
                .map(|(_, x)| x)
                .collect()
        })
        .collect();
    GramMatrix::new(rows)
}

/// The positive-definite Goeritz form of a reduced diagram with every `mu = -1`,
/// dropping the highest-index white region.
pub fn white_lattice(w: &WhiteDiagram) -> Result<GramMatrix> {
    if let Some(why) = w.nugatory() {
        return Err(Error::ReduceFirst(why));
    }
    if w.mu.iter().any(|&m| m != -1) {
        return Err(domain(if w.mu.iter().all(|&m| m == 1) {
            "every incidence number is +1; use the mirror or the other coloring"
        } else {
            "incidence numbers are mixed, so the diagram is not alternating"
        }));
    }
    if w.vertices == 0 {
        return Err(domain("white graph has no vertices"));
    }
    let g = goeritz_matrix(w, w.vertices - 1)?;
    if !g.is_positive_definite()? {
        return Err(Error::Internal(
            "white lattice is not positive-definite".into(),
        ));
    }
    Ok(g)
}

/// Verification stages in the order they run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stage {
    Recovery,
    Window,
    RankFeasibility,
    Isomorphism,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Recovery => "recovery",
            Stage::Window => "window",
            Stage::RankFeasibility => "rank feasibility",
            Stage::Isomorphism => "isomorphism",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail { stage: Stage, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    /// Set by [`verify_alternating_surgery`]; `None` for a caller-supplied diagram.
    pub coloring: Option<Coloring>,
    pub mirrored: bool,
    pub white_rank: usize,
    pub white_determinant: i64,
    pub stable: Option<StableCoefficients>,
    /// `(N - 1, N + 1)`, absent for the unknot.
    pub window: Option<(i64, i64)>,
    pub changemaker_rank: Option<usize>,
    pub verdict: Verdict,
    /// Superbase search on the changemaker side after a pass, with the bound
    /// set to the largest white-graph degree.
    pub superbase: Option<SearchCertificate>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Compares the white lattice of `w` (all `mu = -1`) with the changemaker
/// lattice of `slope` and the stable coefficients recovered from `delta`.
pub fn verify_white_diagram(
    w: &WhiteDiagram,
    delta: &AlexanderPolynomial,
    slope: Rational,
) -> Result<VerificationReport> {
    let white = white_lattice(w)?;
    let mut report = VerificationReport {
        coloring: None,
        mirrored: false,
        white_rank: white.rank(),
        white_determinant: white.determinant()?,
        stable: None,
        window: None,
        changemaker_rank: None,
        verdict: Verdict::Pass,
        superbase: None,
    };
    let fail = |stage, reason: String| Verdict::Fail { stage, reason };
    let stable = match recover_stable(&v_sequence(delta)?)? {
        RecoveryOutcome::Found { stable, .. } => stable,
        RecoveryOutcome::NoSolution(why) => {
            report.verdict = fail(Stage::Recovery, format!("no changemaker vector ({why})"));
            return Ok(report);
        }
    };
    report.stable = Some(stable.clone());
    if !stable.is_empty() {
        let (lo, hi) = slope_window(&stable)?;
        report.window = Some((lo, hi));
        if slope.cmp_int(lo).is_lt() || slope.cmp_int(hi).is_gt() {
            report.verdict = fail(Stage::Window, format!("{slope} lies outside [{lo},{hi}]"));
            return Ok(report);
        }
    }
    let base = match changemaker_lattice(slope, &stable, None) {
        Ok(l) => l,
        Err(Error::Domain(msg)) => {
            report.verdict = fail(Stage::RankFeasibility, msg);
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    report.changemaker_rank = Some(base.rank());
    if base.rank() > white.rank() {
        report.verdict = fail(
            Stage::RankFeasibility,
            format!(
                "changemaker lattice needs rank {}, white lattice has rank {}",
                base.rank(),
                white.rank()
            ),
        );
        return Ok(report);
    }
    let lattice = base.with_orthogonal_units(white.rank() - base.rank());
    report.changemaker_rank = Some(lattice.rank());
    let det = lattice.gram.determinant()?;
    if det != report.white_determinant {
        report.verdict = fail(
            Stage::Isomorphism,
            format!(
                "determinants differ: white {}, changemaker {det}",
                report.white_determinant
            ),
        );
        return Ok(report);
    }
    if lattice_isomorphic(&white, &lattice.gram)?.is_none() {
        report.verdict = fail(Stage::Isomorphism, "lattices are not isometric".into());
        return Ok(report);
    }
    let degree = w.graph()?.max_degree().max(1) as i64;
    let opts = SearchOptions {
        norm_bound: Some(degree),
        ..Default::default()
    };
    report.superbase = Some(find_obtuse_superbase(&lattice.gram, &opts)?);
    Ok(report)
}

/// Runs [`verify_white_diagram`] on both colorings, mirroring a coloring whose
/// incidence numbers are all `+1`. Returns the first pass, otherwise the
/// report that got furthest (coloring `A` on ties).
pub fn verify_alternating_surgery(
    pd: &PDCode,
    delta: &AlexanderPolynomial,
    slope: Rational,
) -> Result<VerificationReport> {
    let mut best: Option<VerificationReport> = None;
    for coloring in [Coloring::A, Coloring::B] {
        let w = white_graph_from_pd(pd, coloring)?;
        let (w, mirrored) = if w.mu.iter().all(|&m| m == 1) {
            (w.mirror(), true)
        } else {
            (w, false)
        };
        if w.mu.iter().any(|&m| m != -1) {
            return Err(domain(
                "diagram is not alternating: incidence numbers are mixed",
            ));
        }
        let mut report = verify_white_diagram(&w, delta, slope)?;
        report.coloring = Some(coloring);
        report.mirrored = mirrored;
        if report.passed() {
            return Ok(report);
        }
        let reached = |r: &VerificationReport| match &r.verdict {
            Verdict::Pass => None,
            Verdict::Fail { stage, .. } => Some(*stage),
        };
        if best.as_ref().is_none_or(|b| reached(&report) > reached(b)) {
            best = Some(report);
        }
    }
    Ok(best.expect("two colorings were tried"))
}
