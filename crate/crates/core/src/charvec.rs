//! Minimal norms of characteristic vectors with a prescribed pairing.
//!
//! For `rho` of length `t + 1` and `n = |rho|^2`, `V_k` is
//! `(min |c|^2 - t - 1) / 8` over vectors `c` with odd coordinates and
//! `c . rho = 2k - n`. Writing `c_i = -(2 a_i + 1)` turns this into
//! minimising `sum a_i (a_i + 1) / 2` subject to `a . rho = g - k`, where
//! `g = sum rho_i (rho_i - 1) / 2`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::arith::{self, gcd};
use crate::error::{domain, Error, Result};

fn tri(a: i64) -> i64 {
    a * (a + 1) / 2
}

/// `sum rho_i (rho_i - 1) / 2`.
pub fn g_tilde(rho: &[i64]) -> i64 {
    rho.iter().map(|&r| r * (r - 1) / 2).sum()
}

fn check_rho(rho: &[i64]) -> Result<i64> {
    if rho.is_empty() {
        return Err(domain("rho must be nonempty"));
    }
    if rho.iter().any(|&r| r < 1) {
        return Err(domain("rho entries must be at least 1"));
    }
    arith::norm(rho)
}

/// Minimal cost `sum a_i(a_i+1)/2` for every target in `lo..=hi` that is
/// reachable; `None` for targets not divisible by `gcd(rho)`.
fn min_costs(rho: &[i64], lo: i64, hi: i64) -> Vec<Option<i64>> {
    let g = rho.iter().fold(0, |acc, &r| gcd(acc, r));
    let wanted = |t: i64| t % g == 0;
    let mut budget = rho.iter().sum::<i64>().max(1);
    loop {
        // Every coordinate of a solution of cost <= budget has tri(a) <= budget.
        let mut amax = 0;
        while tri(amax + 1) <= budget {
            amax += 1;
        }
        let values: Vec<(i64, i64)> = (-amax - 1..=amax).map(|a| (a, tri(a))).collect();
        let mut reach: BTreeMap<i64, i64> = BTreeMap::new();
        reach.insert(0, 0);
        for &r in rho {
            let mut next: BTreeMap<i64, i64> = BTreeMap::new();
            for (&s, &c) in &reach {
                for &(a, ca) in &values {
                    let cost = c + ca;
                    if cost > budget {
                        continue;
                    }
                    let e = next.entry(s + a * r).or_insert(cost);
                    if cost < *e {
                        *e = cost;
                    }
                }
            }
            reach = next;
        }
        let out: Vec<Option<i64>> = (lo..=hi)
            .map(|t| {
                if wanted(t) {
                    reach.get(&t).copied()
                } else {
                    None
                }
            })
            .collect();
        if (lo..=hi).zip(&out).all(|(t, v)| !wanted(t) || v.is_some()) {
            return out;
        }
        budget *= 2;
    }
}

/// `V_k` for the given `rho` (entries at least 1) and `0 <= k <= n/2`.
///
/// When the entries of `rho` share a common factor, some `k` admit no
/// characteristic vector at all; those are reported as domain errors.
pub fn min_char_norm(rho: &[i64], k: i64) -> Result<i64> {
    let n = check_rho(rho)?;
    if k < 0 || 2 * k > n {
        return Err(domain(alloc::format!("k = {k} outside [0, {}]", n / 2)));
    }
    let target = g_tilde(rho) - k;
    min_costs(rho, target, target)[0].ok_or_else(|| {
        domain(alloc::format!(
            "no characteristic vector pairs to 2k - n for k = {k}"
        ))
    })
}

/// `V_0, ..., V_{floor(n/2)}` in one pass. Unreachable `k` are `None`.
pub fn char_norm_profile(rho: &[i64]) -> Result<Vec<Option<i64>>> {
    let n = check_rho(rho)?;
    let g = g_tilde(rho);
    let mut costs = min_costs(rho, g - n / 2, g);
    costs.reverse();
    Ok(costs)
}

/// Characteristic-vector norm `|c|^2` matching the cost `v`: `8 v + t + 1`.
pub fn char_norm_from_v(rho_len: usize, v: i64) -> Result<i64> {
    arith::add(arith::mul(8, v)?, rho_len as i64)
}

/// Recovers `V` from a characteristic-vector norm, failing if the division is inexact.
pub fn v_from_char_norm(rho_len: usize, norm: i64) -> Result<i64> {
    let d = norm - rho_len as i64;
    if d < 0 || d % 8 != 0 {
        return Err(Error::Internal(alloc::format!(
            "characteristic norm {norm} is not {rho_len} mod 8"
        )));
    }
    Ok(d / 8)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use alloc::vec::Vec;

    /// Direct minimisation over odd `c` in the box `|c_i| <= bound_i`.
    fn box_minimum(rho: &[i64], k: i64, bound: impl Fn(i64) -> i64) -> Option<i64> {
        let n: i64 = rho.iter().map(|r| r * r).sum();
        let target = 2 * k - n;
        let mut best: Option<i64> = None;
        let mut c: Vec<i64> = rho.iter().map(|&r| -bound(r)).collect();
        loop {
            let dot: i64 = c.iter().zip(rho).map(|(a, b)| a * b).sum();
            if dot == target {
                let norm: i64 = c.iter().map(|x| x * x).sum();
                best = Some(best.map_or(norm, |b: i64| b.min(norm)));
            }
            let mut i = 0;
            loop {
                if i == c.len() {
                    return best.map(|b| v_from_char_norm(rho.len(), b).unwrap());
                }
                if c[i] + 2 <= bound(rho[i]) {
                    c[i] += 2;
                    break;
                }
                c[i] = -bound(rho[i]);
                i += 1;
            }
        }
    }

    fn all_rho(max_entry: i64, max_len: usize) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        let mut stack: Vec<Vec<i64>> = (1..=max_entry).map(|r| vec![r]).collect();
        while let Some(r) = stack.pop() {
            if r.len() < max_len {
                for x in 1..=*r.last().unwrap() {
                    let mut s = r.clone();
                    s.push(x);
                    stack.push(s);
                }
            }
            out.push(r);
        }
        out
    }

    #[test]
    fn examples() {
        assert_eq!(min_char_norm(&[1, 1, 1], 0).unwrap(), 0);
        assert_eq!(min_char_norm(&[3, 2, 2, 1, 1], 0).unwrap(), 2);
        assert_eq!(min_char_norm(&[2, 1], 1).unwrap(), 0);
    }

    #[test]
    fn out_of_range_k() {
        assert!(matches!(min_char_norm(&[2, 1], 3), Err(Error::Domain(_))));
        assert!(matches!(min_char_norm(&[2, 1], -1), Err(Error::Domain(_))));
        assert!(matches!(min_char_norm(&[0, 1], 0), Err(Error::Domain(_))));
    }

    #[test]
    fn unreachable_pairing() {
        // Every odd c has c . (2,2) divisible by 4, but 2k - n = -6 for k = 1.
        assert!(matches!(min_char_norm(&[2, 2], 1), Err(Error::Domain(_))));
        assert_eq!(char_norm_profile(&[2, 2]).unwrap()[1], None);
    }

    #[test]
    fn division_by_eight_is_checked() {
        assert_eq!(v_from_char_norm(5, 21).unwrap(), 2);
        assert!(matches!(v_from_char_norm(5, 20), Err(Error::Internal(_))));
        assert_eq!(char_norm_from_v(5, 2).unwrap(), 21);
    }

    fn is_changemaker_desc(rho: &[i64]) -> bool {
        let mut asc = rho.to_vec();
        asc.reverse();
        crate::changemaker::is_changemaker(&asc).unwrap()
    }

    /// The box `|c_i| <= 2 rho_i + 1` always contains a minimiser, though not
    /// always an interior one: rho = (4,1,1,1), k = 1 needs c_i = 3 on a unit entry.
    #[test]
    fn agrees_with_search_over_the_box() {
        for rho in all_rho(4, 4) {
            let n: i64 = rho.iter().map(|r| r * r).sum();
            let profile = char_norm_profile(&rho).unwrap();
            for k in 0..=n / 2 {
                let boxed = box_minimum(&rho, k, |r| 2 * r + 1);
                assert_eq!(profile[k as usize], boxed, "rho={rho:?} k={k}");
                if let Some(v) = boxed {
                    assert_eq!(min_char_norm(&rho, k).unwrap(), v);
                }
            }
        }
    }

    #[test]
    fn monotone_and_vanishes_exactly_from_g_tilde() {
        for rho in all_rho(4, 5).into_iter().filter(|r| is_changemaker_desc(r)) {
            let g = g_tilde(&rho);
            let profile: Vec<i64> = char_norm_profile(&rho)
                .unwrap()
                .into_iter()
                .map(Option::unwrap)
                .collect();
            for k in 1..profile.len() {
                assert!(profile[k] <= profile[k - 1], "rho={rho:?} {profile:?}");
            }
            for (k, &v) in profile.iter().enumerate() {
                assert_eq!(v == 0, k as i64 >= g, "rho={rho:?} k={k} {profile:?}");
            }
        }
    }
}
