//! Recovering changemaker coefficients from V-sequences.
//!
//! Given the torsion coefficients `V_0 >= V_1 >= ...` of an L-space knot and a
//! candidate norm `n` and length `t + 1`, there is at most one weakly decreasing
//! positive `rho` whose characteristic-vector minima reproduce `V`. The
//! reconstruction reads `rho` off the T-profile `T_m = #{i : 0 < V_i <= m}`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::changemaker::is_changemaker;
use crate::charvec::{char_norm_profile, g_tilde};
use crate::cmlattice::StableCoefficients;
use crate::error::{domain, Error, Result};

/// A symmetric Laurent polynomial, stored as exponent -> nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlexanderPolynomial {
    coeffs: BTreeMap<i64, i64>,
}

impl AlexanderPolynomial {
    /// Zero coefficients are dropped. Symmetry is checked by the operations
    /// that need it, not here.
    pub fn new(coeffs: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut map = BTreeMap::new();
        for (e, c) in coeffs {
            *map.entry(e).or_insert(0) += c;
        }
        map.retain(|_, c| *c != 0);
        AlexanderPolynomial { coeffs: map }
    }

    /// `a_0 + sum_{i>=1} a_i (t^i + t^-i)` from `[a_0, a_1, ..., a_g]`.
    pub fn symmetric(a: &[i64]) -> Self {
        AlexanderPolynomial::new(a.iter().enumerate().flat_map(|(i, &c)| {
            let i = i as i64;
            if i == 0 {
                vec![(0, c)]
            } else {
                vec![(i, c), (-i, c)]
            }
        }))
    }

    pub fn one() -> Self {
        AlexanderPolynomial::new([(0, 1)])
    }

    pub fn coeff(&self, e: i64) -> i64 {
        self.coeffs.get(&e).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, i64> {
        &self.coeffs
    }

    /// Largest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn degree(&self) -> i64 {
        self.coeffs.keys().next_back().copied().unwrap_or(0).max(0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.coeffs.iter().all(|(&e, &c)| self.coeff(-e) == c)
    }

    fn check_symmetric(&self) -> Result<()> {
        match self.coeffs.iter().find(|(&e, &c)| self.coeff(-e) != c) {
            None => Ok(()),
            Some((e, _)) => Err(domain(alloc::format!(
                "coefficients of t^{e} and t^{} differ",
                -e
            ))),
        }
    }

    /// Checks that the nonzero coefficients are `+-1`, alternate in sign and
    /// start with `+1` at the top degree. Symmetry is assumed.
    fn check_lspace_form(&self) -> Result<()> {
        let mut expected = 1;
        for (&e, &c) in self.coeffs.iter().rev() {
            if e < 0 {
                break;
            }
            if c.abs() != 1 {
                return Err(Error::NotLSpaceForm {
                    index: e,
                    reason: "coefficient is not +-1",
                });
            }
            if c != expected {
                return Err(Error::NotLSpaceForm {
                    index: e,
                    reason: "signs do not alternate from +1 at the top",
                });
            }
            expected = -expected;
        }
        Ok(())
    }
}

/// `t_i = sum_{j >= 1} j a_{i+j}` for `i = 0..=g`.
pub fn torsion_coefficients(delta: &AlexanderPolynomial) -> Result<Vec<i64>> {
    delta.check_symmetric()?;
    let g = delta.degree();
    (0..=g)
        .map(|i| {
            (1..=g - i).try_fold(0i64, |acc, j| {
                acc.checked_add(j.checked_mul(delta.coeff(i + j)).ok_or(Error::Overflow)?)
                    .ok_or(Error::Overflow)
            })
        })
        .collect()
}

/// A non-increasing sequence of nonnegative integers with steps of at most 1
/// that is eventually zero. Only the nonzero prefix is stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct VSequence(Vec<i64>);

impl VSequence {
    /// Trailing zeros are dropped. The failing index is reported on error.
    pub fn new(mut values: Vec<i64>) -> Result<Self> {
        while values.last() == Some(&0) {
            values.pop();
        }
        if let Some(i) = validate_v(&values) {
            return Err(domain(alloc::format!(
                "not a valid V-sequence at index {i}"
            )));
        }
        Ok(VSequence(values))
    }

    /// Nonzero values `V_0, ..., V_{g-1}`.
    pub fn values(&self) -> &[i64] {
        &self.0
    }

    /// `V_i`, zero past the stored prefix.
    pub fn get(&self, i: usize) -> i64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// First index at which the sequence vanishes.
    pub fn g_tilde(&self) -> i64 {
        self.0.len() as i64
    }

    pub fn v0(&self) -> i64 {
        self.get(0)
    }
}

/// First index violating the V-sequence conditions, treating the sequence as
/// followed by zeros.
fn validate_v(values: &[i64]) -> Option<usize> {
    for (i, &v) in values.iter().enumerate() {
        let next = values.get(i + 1).copied().unwrap_or(0);
        if v < 0 || next > v || v > next + 1 {
            return Some(i);
        }
    }
    None
}

/// Torsion coefficients of an L-space-form polynomial as a V-sequence.
pub fn v_sequence(delta: &AlexanderPolynomial) -> Result<VSequence> {
    delta.check_symmetric()?;
    delta.check_lspace_form()?;
    let mut t = torsion_coefficients(delta)?;
    while t.last() == Some(&0) {
        t.pop();
    }
    if let Some(i) = validate_v(&t) {
        return Err(Error::NotLSpaceForm {
            index: i as i64,
            reason: "torsion coefficients are not a V-sequence",
        });
    }
    Ok(VSequence(t))
}

/// `T_m = #{i : 0 < V_i <= m}` for `m = 1..=V_0`, and
/// `mu = min_{1 <= i < V_0} (T_i - T_{i-1})` when `V_0 > 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TProfile {
    values: Vec<i64>,
    pub mu: Option<i64>,
}

impl TProfile {
    /// `T_1, ..., T_{V_0}`.
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// `T_m` for `0 <= m <= V_0`.
    pub fn t(&self, m: usize) -> i64 {
        if m == 0 {
            0
        } else {
            self.values[m - 1]
        }
    }
}

pub fn t_profile(v: &VSequence) -> TProfile {
    let v0 = v.v0() as usize;
    let values: Vec<i64> = (1..=v0)
        .map(|m| {
            v.values()
                .iter()
                .filter(|&&x| x > 0 && x <= m as i64)
                .count() as i64
        })
        .collect();
    let mu = (v0 > 1).then(|| {
        (1..v0)
            .map(|i| values[i - 1] - if i >= 2 { values[i - 2] } else { 0 })
            .min()
            .expect("V_0 > 1")
    });
    TProfile { values, mu }
}

fn tri(a: i64) -> i64 {
    a * (a + 1) / 2
}

/// Maximum of `w . alpha` over `alpha >= 0` of length `len` (`w` padded with
/// zeros) with `sum alpha_i (alpha_i + 1) = 2m`.
fn s_max_padded(w: &[i64], len: usize, m: i64) -> Option<i64> {
    if m < 0 {
        return None;
    }
    let m = m as usize;
    // best[j]: max value using the coordinates so far with sum tri(alpha_i) = j.
    let mut best: Vec<Option<i64>> = vec![None; m + 1];
    best[0] = Some(0);
    for i in 0..len {
        let wi = w.get(i).copied().unwrap_or(0);
        let mut next = best.clone();
        for j in 1..=m {
            let mut a = 1;
            while tri(a) as usize <= j {
                if let Some(b) = best[j - tri(a) as usize] {
                    let cand = b + a * wi;
                    if next[j].map_or(true, |x| cand > x) {
                        next[j] = Some(cand);
                    }
                }
                a += 1;
            }
        }
        best = next;
    }
    best[m]
}

/// Maximum of `rho . alpha` over nonnegative `alpha` with
/// `sum alpha_i (alpha_i + 1) = 2m`; `None` when no such `alpha` exists.
pub fn s_max(rho: &[i64], m: i64) -> Option<i64> {
    s_max_padded(rho, rho.len(), m)
}

/// Why no `rho` reproduces a V-sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// `V_0 <= 1` forces `g <= 3`.
    SmallV0 { v0: i64, g: i64 },
    /// `mu > 2` and no catalogued form has this `T_1` and `g`.
    NoCatalogForm { t1: i64, g: i64 },
    /// The feasible set `S_m` is empty at this length.
    EmptyFeasibleSet { m: i64 },
    /// The partial vector already exceeds `T_m`.
    Overshoot { m: i64 },
    /// A recovered entry is not in `[1, previous entry]`.
    NotDecreasing { index: usize, value: i64 },
    /// `g` is smaller than the recovered entries account for.
    GenusDeficit { g: i64, accounted: i64 },
    /// The recovered shape needs a different number of entries or a larger norm.
    LengthMismatch {
        n: i64,
        len: usize,
        required_len: i64,
    },
    /// The recovered tuple is not a changemaker vector.
    NotChangemaker,
    /// `V_k` computed from the candidate differs from the input.
    Mismatch {
        k: i64,
        expected: i64,
        found: Option<i64>,
    },
    /// No norm up to the cap produced a solution.
    NoFeasibleNorm { cap: i64 },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::SmallV0 { v0, g } => write!(f, "V0={v0}, g\u{303}={g} > 3"),
            Witness::NoCatalogForm { t1, g } => {
                write!(f, "mu > 2 with T1={t1} and g\u{303}={g} matches no form")
            }
            Witness::EmptyFeasibleSet { m } => write!(f, "S_{m} is empty at this length"),
            Witness::Overshoot { m } => write!(f, "partial vector exceeds T_{m}"),
            Witness::NotDecreasing { index, value } => {
                write!(f, "entry {index} = {value} breaks monotonicity")
            }
            Witness::GenusDeficit { g, accounted } => {
                write!(f, "g\u{303}={g} < {accounted} from the recovered entries")
            }
            Witness::LengthMismatch {
                n,
                len,
                required_len,
            } => {
                write!(f, "norm {n} needs {required_len} entries, not {len}")
            }
            Witness::NotChangemaker => f.write_str("recovered tuple is not a changemaker vector"),
            Witness::Mismatch { k, expected, found } => match found {
                Some(x) => write!(f, "V_{k}: expected {expected}, candidate gives {x}"),
                None => write!(f, "V_{k}: expected {expected}, candidate attains no value"),
            },
            Witness::NoFeasibleNorm { cap } => write!(f, "no norm up to {cap} admits a solution"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecoveryOutcome {
    Found {
        rho: Vec<i64>,
        stable: StableCoefficients,
    },
    NoSolution(Witness),
}

/// The entries of `rho` above the trailing run of 1s, for vectors of length
/// `len`. Unconstrained length (`None`) pads with enough zero coordinates
/// that every `S_m` below `V_0` is nonempty.
fn head(v: &VSequence, len: Option<usize>) -> core::result::Result<Vec<i64>, Witness> {
    let g = v.g_tilde();
    let v0 = v.v0();
    if v0 <= 1 {
        return match g {
            0 => Ok(vec![]),
            1 => Ok(vec![2]),
            2 => Ok(vec![2, 2]),
            3 => Ok(vec![3]),
            _ => Err(Witness::SmallV0 { v0, g }),
        };
    }
    let tp = t_profile(v);
    let mu = tp.mu.expect("V_0 > 1");
    if mu > 2 {
        let t1 = tp.t(1);
        let form = match t1 {
            3 if g >= 3 => {
                let mut h = vec![3; (g / 3) as usize];
                h.extend(vec![2; (g % 3) as usize]);
                Some(h)
            }
            4 if g >= 6 && (g - 6) % 3 == 0 => {
                let mut h = vec![4];
                h.extend(vec![3; ((g - 6) / 3) as usize]);
                Some(h)
            }
            _ => None,
        };
        return form.ok_or(Witness::NoCatalogForm { t1, g });
    }
    let v0 = v0 as usize;
    let mut s = vec![tp.t(1)];
    let max_len = len.unwrap_or(g as usize + 1);
    loop {
        let width = len.unwrap_or(s.len() + v0);
        let mut next = None;
        for m in 1..v0.saturating_sub(1) {
            match s_max_padded(&s, width, m as i64) {
                None => return Err(Witness::EmptyFeasibleSet { m: m as i64 }),
                Some(x) if x > tp.t(m) => return Err(Witness::Overshoot { m: m as i64 }),
                Some(x) if x < tp.t(m) => {
                    next = Some(m);
                    break;
                }
                Some(_) => {}
            }
        }
        let Some(m) = next else { break };
        let r = tp.t(m) - tp.t(m - 1);
        if r < 1 || r > *s.last().expect("nonempty") {
            return Err(Witness::NotDecreasing {
                index: s.len(),
                value: r,
            });
        }
        s.push(r);
        if s.len() > max_len {
            return Err(Witness::LengthMismatch {
                n: 0,
                len: max_len,
                required_len: s.len() as i64,
            });
        }
    }
    let accounted = g_tilde(&s);
    if accounted > g {
        return Err(Witness::GenusDeficit { g, accounted });
    }
    let twos = g - accounted;
    if twos > 0 && *s.last().expect("nonempty") < 2 {
        return Err(Witness::NotDecreasing {
            index: s.len(),
            value: 2,
        });
    }
    s.extend(vec![2; twos as usize]);
    Ok(s)
}

/// First `k` in `0..=n/2` where the candidate's `V_k` differs from `v`.
fn first_mismatch(rho: &[i64], v: &VSequence) -> Result<Option<Witness>> {
    let profile = char_norm_profile(rho)?;
    for (k, got) in profile.into_iter().enumerate() {
        let expected = v.get(k);
        if got != Some(expected) {
            return Ok(Some(Witness::Mismatch {
                k: k as i64,
                expected,
                found: got,
            }));
        }
    }
    // Values of V beyond n/2 are not constrained by rho.
    Ok(None)
}

/// True iff `min_char_norm(rho, k) = V_k` for every `0 <= k <= |rho|^2 / 2`.
pub fn verify_rho(rho: &[i64], v: &VSequence) -> Result<bool> {
    Ok(first_mismatch(rho, v)?.is_none())
}

fn stable_of(rho: &[i64]) -> Option<StableCoefficients> {
    let mut asc = rho.to_vec();
    asc.reverse();
    if !is_changemaker(&asc).ok()? {
        return None;
    }
    StableCoefficients::new(rho.iter().copied().filter(|&r| r > 1).collect()).ok()
}

/// The unique weakly decreasing positive `rho` of length `t + 1` and norm `n`
/// reproducing `v`, or a witness that none exists.
pub fn recover_rho(v: &VSequence, n: i64, t: usize) -> Result<RecoveryOutcome> {
    let g = v.g_tilde();
    if n < 2 * g {
        return Err(domain(alloc::format!("norm {n} is below 2g = {}", 2 * g)));
    }
    let len = t + 1;
    let mut rho = match head(v, Some(len)) {
        Ok(h) => h,
        Err(w) => return Ok(RecoveryOutcome::NoSolution(w)),
    };
    let head_norm: i64 = rho.iter().map(|r| r * r).sum();
    let ones = n - head_norm;
    if ones < 0 || rho.len() as i64 + ones != len as i64 {
        return Ok(RecoveryOutcome::NoSolution(Witness::LengthMismatch {
            n,
            len,
            required_len: rho.len() as i64 + ones,
        }));
    }
    rho.extend(vec![1; ones as usize]);
    if let Some(w) = first_mismatch(&rho, v)? {
        return Ok(RecoveryOutcome::NoSolution(w));
    }
    match stable_of(&rho) {
        Some(stable) => Ok(RecoveryOutcome::Found { rho, stable }),
        None => Ok(RecoveryOutcome::NoSolution(Witness::NotChangemaker)),
    }
}

/// Largest norm tried by [`recover_stable`]. Stable entries satisfy
/// `sum rho^2 <= 4g` and the 1-padding they need is below `2g + 2`.
pub fn norm_search_cap(g: i64) -> i64 {
    5 * g + 2
}

/// The stable coefficients determined by `v`, found by the smallest norm `n`
/// (and then the smallest length) for which [`recover_rho`] succeeds.
pub fn recover_stable(v: &VSequence) -> Result<RecoveryOutcome> {
    let g = v.g_tilde();
    if let Err(w) = head(v, None) {
        return Ok(RecoveryOutcome::NoSolution(w));
    }
    let cap = norm_search_cap(g);
    for n in (2 * g).max(1)..=cap {
        for len in 1..=n as usize {
            if let RecoveryOutcome::Found { rho, stable } = recover_rho(v, n, len - 1)? {
                return Ok(RecoveryOutcome::Found { rho, stable });
            }
        }
    }
    Ok(RecoveryOutcome::NoSolution(Witness::NoFeasibleNorm { cap }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    pub(crate) fn pretzel() -> AlexanderPolynomial {
        AlexanderPolynomial::symmetric(&[1, -1, 1, 0, -1, 1])
    }

    fn cable_2_15() -> AlexanderPolynomial {
        AlexanderPolynomial::symmetric(&[-1, 1, -1, 1, -1, 1, 0, 0, -1, 1])
    }

    fn vs(v: &[i64]) -> VSequence {
        VSequence::new(v.to_vec()).unwrap()
    }

    #[test]
    fn torsion_examples() {
        assert_eq!(
            torsion_coefficients(&pretzel()).unwrap(),
            vec![2, 2, 1, 1, 1, 0]
        );
        assert_eq!(
            torsion_coefficients(&AlexanderPolynomial::symmetric(&[-1, 1])).unwrap()[0],
            1
        );
        let c25 = AlexanderPolynomial::symmetric(&[1, 0, 0, -1, 1]);
        assert_eq!(torsion_coefficients(&c25).unwrap(), vec![1, 1, 1, 1, 0]);
        let asym = AlexanderPolynomial::new([(1, 1), (0, -1)]);
        assert!(matches!(torsion_coefficients(&asym), Err(Error::Domain(_))));
    }

    #[test]
    fn v_sequences() {
        let v = v_sequence(&pretzel()).unwrap();
        assert_eq!((v.values(), v.g_tilde()), (&[2, 2, 1, 1, 1][..], 5));
        let v = v_sequence(&cable_2_15()).unwrap();
        assert_eq!(
            (v.values(), v.g_tilde()),
            (&[4, 3, 3, 2, 2, 1, 1, 1, 1][..], 9)
        );
        let v = v_sequence(&AlexanderPolynomial::one()).unwrap();
        assert_eq!(v.g_tilde(), 0);
        let bad = AlexanderPolynomial::symmetric(&[1, 2]);
        assert!(matches!(
            v_sequence(&bad),
            Err(Error::NotLSpaceForm { index: 1, .. })
        ));
    }

    #[test]
    fn v_sequence_validation() {
        assert!(VSequence::new(vec![2, 2, 1, 1, 1, 0, 0]).is_ok());
        assert!(VSequence::new(vec![1, 2]).is_err());
        assert!(VSequence::new(vec![3, 1]).is_err());
        assert!(VSequence::new(vec![2]).is_err());
    }

    #[test]
    fn profiles() {
        let p = t_profile(&vs(&[2, 2, 1, 1, 1]));
        assert_eq!((p.values(), p.mu), (&[3, 5][..], Some(3)));
        let p = t_profile(&vs(&[4, 3, 3, 2, 2, 1, 1, 1, 1]));
        assert_eq!((p.values(), p.mu), (&[4, 6, 8, 9][..], Some(2)));
        let p = t_profile(&vs(&[1, 1, 1]));
        assert_eq!((p.values(), p.mu), (&[3][..], None));
    }

    #[test]
    fn s_max_examples() {
        assert_eq!(s_max(&[3, 2, 2, 1, 1], 1), Some(3));
        assert_eq!(s_max(&[3, 2, 2, 1, 1], 2), Some(5));
        assert_eq!(s_max(&[4, 2], 3), Some(8));
        assert_eq!(s_max(&[4, 2], 0), Some(0));
        // 2m = 4 needs two unit entries or alpha(alpha+1) = 4, impossible in one coordinate.
        assert_eq!(s_max(&[5], 2), None);
    }

    #[test]
    fn recover_examples() {
        let found = |o: RecoveryOutcome| match o {
            RecoveryOutcome::Found { rho, stable } => (rho, stable),
            other => panic!("{other:?}"),
        };
        let (rho, stable) = found(recover_rho(&vs(&[2, 2, 1, 1, 1]), 19, 4).unwrap());
        assert_eq!(rho, vec![3, 2, 2, 1, 1]);
        assert_eq!(stable.entries(), &[3, 2, 2]);

        for n in 8..20 {
            for t in 0..n as usize {
                let o = recover_rho(&vs(&[1, 1, 1, 1]), n, t).unwrap();
                assert_eq!(
                    o,
                    RecoveryOutcome::NoSolution(Witness::SmallV0 { v0: 1, g: 4 })
                );
            }
        }
        assert_eq!(
            Witness::SmallV0 { v0: 1, g: 4 }.to_string(),
            "V0=1, g\u{303}=4 > 3"
        );

        let (rho, stable) = found(recover_rho(&vs(&[4, 3, 3, 2, 2, 1, 1, 1, 1]), 30, 5).unwrap());
        assert_eq!(rho, vec![4, 2, 2, 2, 1, 1]);
        assert_eq!(stable.entries(), &[4, 2, 2, 2]);

        assert!(matches!(
            recover_rho(&vs(&[4, 3, 3, 2, 2, 1, 1, 1, 1]), 30, 8).unwrap(),
            RecoveryOutcome::NoSolution(Witness::LengthMismatch { .. })
        ));

        let (rho, _) = found(recover_rho(&VSequence::default(), 5, 4).unwrap());
        assert_eq!(rho, vec![1; 5]);

        assert!(matches!(
            recover_rho(&vs(&[2, 2, 1, 1, 1]), 9, 4),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn recover_stable_examples() {
        let stable = |v: &[i64]| match recover_stable(&vs(v)).unwrap() {
            RecoveryOutcome::Found { stable, .. } => stable,
            other => panic!("{other:?}"),
        };
        assert_eq!(stable(&[2, 2, 1, 1, 1]).entries(), &[3, 2, 2]);
        assert_eq!(stable(&[1, 1, 1]).entries(), &[3]);
        assert!(stable(&[]).is_empty());
        assert_eq!(
            stable(&[4, 3, 3, 2, 2, 1, 1, 1, 1]).entries(),
            &[4, 2, 2, 2]
        );
        assert_eq!(
            recover_stable(&vs(&[1, 1, 1, 1])).unwrap(),
            RecoveryOutcome::NoSolution(Witness::SmallV0 { v0: 1, g: 4 })
        );
    }

    #[test]
    fn verify_examples() {
        assert!(verify_rho(&[3, 2, 2, 1, 1], &vs(&[2, 2, 1, 1, 1])).unwrap());
        assert!(!verify_rho(&[3, 2, 2, 1, 1], &vs(&[1, 1, 1, 1, 1])).unwrap());
        assert!(verify_rho(&[1, 1, 1], &VSequence::default()).unwrap());
    }
}
