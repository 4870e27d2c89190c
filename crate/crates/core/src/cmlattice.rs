//! Integral and non-integral `p/q`-changemaker lattices and the numeric bounds
//! read off their stable coefficients.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith;
use crate::changemaker::ChangemakerVector;
use crate::error::{domain, Error, Result};
use crate::intmat::{gram, kernel_basis, GramMatrix, IntVector};
use crate::rational::{hj_expand, Rational};

/// The entries greater than one of a changemaker vector, stored descending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct StableCoefficients(Vec<i64>);

impl StableCoefficients {
    /// Accepts entries in any order; each must exceed 1.
    pub fn new(mut entries: Vec<i64>) -> Result<Self> {
        if entries.iter().any(|&s| s <= 1) {
            return Err(domain("stable coefficients must exceed 1"));
        }
        entries.sort_unstable_by(|a, b| b.cmp(a));
        let st = StableCoefficients(entries);
        // Some number of 1s must make this a changemaker vector.
        st.padded(st.min_padding())?;
        Ok(st)
    }

    pub fn empty() -> Self {
        StableCoefficients(Vec::new())
    }

    /// Descending.
    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn norm(&self) -> i64 {
        self.0.iter().map(|s| s * s).sum()
    }

    /// Fewest 1-entries that make the padded tuple a changemaker vector.
    pub fn min_padding(&self) -> usize {
        let mut prefix = 0i64;
        let mut need = 0i64;
        for &s in self.0.iter().rev() {
            need = need.max(s - 1 - prefix);
            prefix += s;
        }
        need.max(0) as usize
    }

    /// `ones` copies of 1 followed by the entries in ascending order.
    pub fn padded(&self, ones: usize) -> Result<ChangemakerVector> {
        let mut v = vec![1; ones];
        v.extend(self.0.iter().rev());
        ChangemakerVector::new(v)
    }
}

impl fmt::Display for StableCoefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str(")")
    }
}

/// Entries greater than 1.
pub fn stable_part(sigma: &ChangemakerVector) -> StableCoefficients {
    StableCoefficients(sigma.descending().into_iter().filter(|&s| s > 1).collect())
}

/// The orthogonal complement of `relations` in `Z^ambient_rank`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddedLattice {
    pub ambient_rank: usize,
    pub relations: Vec<IntVector>,
    pub basis: Vec<IntVector>,
    pub gram: GramMatrix,
    pub slope: Option<Rational>,
}

impl EmbeddedLattice {
    pub fn from_relations(
        ambient_rank: usize,
        relations: Vec<IntVector>,
        slope: Option<Rational>,
    ) -> Result<Self> {
        let basis = kernel_basis(&relations, ambient_rank)?;
        let gram = gram(&basis)?;
        if !gram.is_positive_definite()? {
            return Err(Error::Internal(
                "complement Gram matrix is not positive-definite".into(),
            ));
        }
        Ok(EmbeddedLattice {
            ambient_rank,
            relations,
            basis,
            gram,
            slope,
        })
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Adds `k` ambient coordinates orthogonal to every relation, i.e. an
    /// orthogonal `Z^k` summand.
    pub fn with_orthogonal_units(&self, k: usize) -> Self {
        let n = self.ambient_rank + k;
        let pad = |v: &IntVector| {
            let mut v = v.clone();
            v.resize(n, 0);
            v
        };
        let relations = self.relations.iter().map(pad).collect();
        let mut basis: Vec<IntVector> = self.basis.iter().map(pad).collect();
        for i in 0..k {
            let mut e = vec![0; n];
            e[self.ambient_rank + i] = 1;
            basis.push(e);
        }
        EmbeddedLattice {
            ambient_rank: n,
            relations,
            basis,
            gram: self.gram.with_unit_summands(k),
            slope: self.slope,
        }
    }
}

/// `<sigma_1 f_1 + ... + sigma_t f_t>^perp` in `Z^t`, of slope `|sigma|^2`.
pub fn build_integral(sigma: &ChangemakerVector) -> Result<EmbeddedLattice> {
    let n = sigma.norm();
    if n == 0 {
        return Err(domain("changemaker vector must be nonzero"));
    }
    let w0 = sigma.entries().to_vec();
    EmbeddedLattice::from_relations(w0.len(), vec![w0], Some(Rational::integer(n)?))
}

/// The `p/q`-changemaker lattice for non-integral `p/q` and the given stable
/// coefficients. Ambient coordinates are ordered `f_1..f_t, e_0..e_s`.
pub fn build_fractional(slope: Rational, stable: &StableCoefficients) -> Result<EmbeddedLattice> {
    if slope.is_integer() {
        return Err(domain("integral slope; use build_integral"));
    }
    let a = hj_expand(slope);
    let a = a.coefficients();
    let ones = a[0] - 1 - stable.norm();
    if ones < 0 {
        return Err(domain(format!(
            "ceil({slope}) = {} is smaller than 1 + {} from the stable coefficients",
            a[0],
            stable.norm()
        )));
    }
    let sigma = stable.padded(ones as usize)?;
    let t = sigma.len();
    let l = a.len() - 1;
    let mut m = vec![0usize; l + 1];
    for k in 1..=l {
        m[k] = m[k - 1] + a[k] as usize - 1;
    }
    let s = m[l];
    let ambient = t + s + 1;
    let e = |j: usize| t + j;
    let mut w0 = vec![0; ambient];
    w0[..t].copy_from_slice(sigma.entries());
    w0[e(0)] = 1;
    let mut relations = vec![w0];
    for k in 1..=l {
        let mut w = vec![0; ambient];
        w[e(m[k - 1])] = -1;
        for j in m[k - 1] + 1..=m[k] {
            w[e(j)] = 1;
        }
        relations.push(w);
    }
    for i in 0..=l {
        for j in 0..=l {
            let want = if i == j {
                a[j]
            } else if i.abs_diff(j) == 1 {
                -1
            } else {
                0
            };
            if arith::dot(&relations[i], &relations[j])? != want {
                return Err(Error::Internal(format!("w_{i}.w_{j} differs from {want}")));
            }
        }
    }
    EmbeddedLattice::from_relations(ambient, relations, Some(slope))
}

/// The changemaker lattice of the given slope and stable coefficients with the
/// fewest coordinates, padded with `Z` summands up to `rank` when given.
pub fn changemaker_lattice(
    slope: Rational,
    stable: &StableCoefficients,
    rank: Option<usize>,
) -> Result<EmbeddedLattice> {
    let base = if slope.is_integer() {
        let ones = slope.numer() - stable.norm();
        if ones < 0 {
            return Err(domain(format!(
                "slope {} is smaller than the stable norm {}",
                slope.numer(),
                stable.norm()
            )));
        }
        build_integral(&stable.padded(ones as usize)?)?
    } else {
        build_fractional(slope, stable)?
    };
    match rank {
        None => Ok(base),
        Some(r) if r >= base.rank() => Ok(base.with_orthogonal_units(r - base.rank())),
        Some(r) => Err(domain(format!(
            "rank {r} is below the minimal rank {}",
            base.rank()
        ))),
    }
}

fn nontrivial(stable: &StableCoefficients) -> Result<()> {
    if stable.is_empty() {
        return Err(domain(
            "N is defined only for nontrivial knots (nonempty stable coefficients)",
        ));
    }
    Ok(())
}

/// `N = sigma_m + sum sigma_i^2`, with `sigma_m` the smallest stable entry.
pub fn n_invariant(stable: &StableCoefficients) -> Result<i64> {
    nontrivial(stable)?;
    Ok(stable.0.last().copied().unwrap_or(0) + stable.norm())
}

/// `(N - 1, N + 1)`.
pub fn slope_window(stable: &StableCoefficients) -> Result<(i64, i64)> {
    let n = n_invariant(stable)?;
    Ok((n - 1, n + 1))
}

/// `sum sigma (sigma - 1) / 2`.
pub fn genus_of_stable(stable: &StableCoefficients) -> i64 {
    stable.0.iter().map(|s| s * (s - 1) / 2).sum()
}

/// `4g + 3`.
pub fn genus_slope_cap(g: i64) -> i64 {
    4 * g + 3
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecomposabilityVerdict {
    CertifiedIndecomposable,
    Inconclusive,
}

/// A violated necessary condition for a changemaker lattice to admit an obtuse superbase.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    /// `sigma_m < m - 2`.
    GraphBound { m: usize, sigma_m: i64 },
    /// `|sigma|^2 > 1 + sigma_m + sum_{i >= m} sigma_i^2`.
    NormBound { norm: i64, limit: i64 },
    /// `sum sigma^2 > 2 sum sigma (sigma - 1) + 3`.
    GenusBound { norm: i64, limit: i64 },
}

impl Violation {
    pub fn name(&self) -> &'static str {
        match self {
            Violation::GraphBound { .. } => "graphbound",
            Violation::NormBound { .. } => "normbound",
            Violation::GenusBound { .. } => "gbound",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::GraphBound { m, sigma_m } => {
                write!(f, "graphbound: sigma_{m}={sigma_m} < {}", *m as i64 - 2)
            }
            Violation::NormBound { norm, limit } => write!(f, "normbound: norm {norm} > {limit}"),
            Violation::GenusBound { norm, limit } => write!(f, "gbound: norm {norm} > {limit}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SuperbaseVerdict {
    NoSuperbase(Vec<Violation>),
    Inconclusive,
}

/// `m` (1-based) with `sigma_m` the first entry above 1; checks the shared hypotheses.
fn first_stable_index(sigma: &ChangemakerVector) -> Result<usize> {
    let e = sigma.entries();
    if e.iter().any(|&s| s < 1) {
        return Err(domain("all entries must be at least 1"));
    }
    match e.iter().position(|&s| s > 1) {
        Some(i) => Ok(i + 1),
        None => Err(domain("the largest entry must exceed 1")),
    }
}

pub fn decomposable_obstruction(sigma: &ChangemakerVector) -> Result<DecomposabilityVerdict> {
    let m = first_stable_index(sigma)?;
    Ok(if sigma.entries()[m - 1] != m as i64 - 1 {
        DecomposabilityVerdict::CertifiedIndecomposable
    } else {
        DecomposabilityVerdict::Inconclusive
    })
}

pub fn superbase_obstruction(sigma: &ChangemakerVector) -> Result<SuperbaseVerdict> {
    let m = first_stable_index(sigma)?;
    let e = sigma.entries();
    let sigma_m = e[m - 1];
    let mut out = Vec::new();
    if sigma_m < m as i64 - 2 {
        out.push(Violation::GraphBound { m, sigma_m });
    }
    let norm = sigma.norm();
    let tail: i64 = e[m - 1..].iter().map(|s| s * s).sum();
    if norm > 1 + sigma_m + tail {
        out.push(Violation::NormBound {
            norm,
            limit: 1 + sigma_m + tail,
        });
    }
    let limit = 2 * e.iter().map(|s| s * (s - 1)).sum::<i64>() + 3;
    if norm > limit {
        out.push(Violation::GenusBound { norm, limit });
    }
    Ok(if out.is_empty() {
        SuperbaseVerdict::Inconclusive
    } else {
        SuperbaseVerdict::NoSuperbase(out)
    })
}

/// A necessary condition failing at one integral slope of the window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeObstruction {
    pub slope: i64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    pub stable: StableCoefficients,
    pub n: i64,
    pub window_lo: i64,
    pub window_hi: i64,
    pub genus: i64,
    pub genus_cap: i64,
    pub obstructions: Vec<SlopeObstruction>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bounds {
    /// Empty stable coefficients: the window bounds do not apply.
    TrivialKnot,
    Report(BoundsReport),
}

/// Every bound determined by the stable coefficients, plus the obstruction
/// checks evaluated at each integral slope of the window.
pub fn bounds(stable: &StableCoefficients) -> Result<Bounds> {
    if stable.is_empty() {
        return Ok(Bounds::TrivialKnot);
    }
    let n = n_invariant(stable)?;
    let genus = genus_of_stable(stable);
    let mut obstructions = Vec::new();
    for slope in n - 1..=n + 1 {
        let ones = slope - stable.norm();
        let sigma = if ones < 0 {
            None
        } else {
            stable.padded(ones as usize).ok()
        };
        match sigma {
            None => obstructions.push(SlopeObstruction {
                slope,
                reason: String::from("no changemaker vector of this norm"),
            }),
            Some(sigma) => {
                if let SuperbaseVerdict::NoSuperbase(v) = superbase_obstruction(&sigma)? {
                    for x in v {
                        obstructions.push(SlopeObstruction {
                            slope,
                            reason: format!("{x}"),
                        });
                    }
                }
            }
        }
    }
    Ok(Bounds::Report(BoundsReport {
        stable: stable.clone(),
        n,
        window_lo: n - 1,
        window_hi: n + 1,
        genus,
        genus_cap: genus_slope_cap(genus),
        obstructions,
    }))
}
