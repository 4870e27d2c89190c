//! The changemaker condition and its subset-sum characterisation.

use alloc::vec::Vec;

use crate::error::{domain, Error, Result};

/// Default cap on the total of a tuple handed to [`subset_sum_cover`].
pub const SUBSET_SUM_CAP: i64 = 64;

fn check_ascending(entries: &[i64]) -> Result<()> {
    if entries.iter().any(|&x| x < 0) {
        return Err(domain("entries must be nonnegative"));
    }
    if entries.windows(2).any(|w| w[0] > w[1]) {
        return Err(domain("entries must be sorted ascending"));
    }
    Ok(())
}

/// True iff `0 <= s_1 <= 1` and `s_{i-1} <= s_i <= s_1 + ... + s_{i-1} + 1`.
///
/// Unsorted input is an error rather than being reordered.
pub fn is_changemaker(entries: &[i64]) -> Result<bool> {
    check_ascending(entries)?;
    let mut prefix = 0i64;
    for (i, &s) in entries.iter().enumerate() {
        let ok = if i == 0 { s <= 1 } else { s <= prefix + 1 };
        if !ok {
            return Ok(false);
        }
        prefix += s;
    }
    Ok(true)
}

/// True iff every integer in `[0, sum]` is a sum of some sub-multiset of `entries`.
pub fn subset_sum_cover(entries: &[i64], cap: i64) -> Result<bool> {
    check_ascending(entries)?;
    let total: i64 = entries.iter().sum();
    if total > cap {
        return Err(Error::Capacity {
            what: "subset-sum total",
            cap: cap as usize,
        });
    }
    let mut reachable = alloc::vec![false; total as usize + 1];
    reachable[0] = true;
    for &s in entries {
        let s = s as usize;
        for k in (s..reachable.len()).rev() {
            if reachable[k - s] {
                reachable[k] = true;
            }
        }
    }
    Ok(reachable.into_iter().all(|b| b))
}

/// An ascending tuple satisfying the changemaker condition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChangemakerVector(Vec<i64>);

impl ChangemakerVector {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if !is_changemaker(&entries)? {
            return Err(domain("tuple violates the changemaker condition"));
        }
        Ok(ChangemakerVector(entries))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn norm(&self) -> i64 {
        self.0.iter().map(|s| s * s).sum()
    }

    /// The tuple with zero entries dropped.
    pub fn positive_part(&self) -> Vec<i64> {
        self.0.iter().copied().filter(|&s| s > 0).collect()
    }

    /// Entries in weakly decreasing order, zeros dropped.
    pub fn descending(&self) -> Vec<i64> {
        let mut v = self.positive_part();
        v.reverse();
        v
    }
}

/// Every ascending changemaker tuple with entries in `1..=max_entry` and length
/// in `1..=max_len`. Used by tests and diagnostics.
pub fn enumerate_changemakers(max_entry: i64, max_len: usize) -> Vec<ChangemakerVector> {
    fn extend(
        cur: &mut Vec<i64>,
        prefix: i64,
        max_entry: i64,
        max_len: usize,
        out: &mut Vec<ChangemakerVector>,
    ) {
        if !cur.is_empty() {
            out.push(ChangemakerVector(cur.clone()));
        }
        if cur.len() == max_len {
            return;
        }
        let lo = cur.last().copied().unwrap_or(1);
        let hi = (prefix + 1).min(max_entry);
        for s in lo..=hi {
            cur.push(s);
            extend(cur, prefix + s, max_entry, max_len, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 0, max_entry, max_len, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn predicate_examples() {
        assert!(is_changemaker(&[1, 1, 1, 2, 2, 3]).unwrap());
        assert!(!is_changemaker(&[1, 3]).unwrap());
        assert!(!is_changemaker(&[2]).unwrap());
        assert!(is_changemaker(&[0, 0, 1, 2]).unwrap());
        assert!(is_changemaker(&[]).unwrap());
    }

    #[test]
    fn unsorted_input_is_an_error() {
        assert!(matches!(is_changemaker(&[3, 2, 2]), Err(Error::Domain(_))));
        assert!(matches!(
            subset_sum_cover(&[2, 1], SUBSET_SUM_CAP),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn subset_sum_examples() {
        assert!(subset_sum_cover(&[1, 1, 2], SUBSET_SUM_CAP).unwrap());
        assert!(!subset_sum_cover(&[1, 3], SUBSET_SUM_CAP).unwrap());
        assert!(subset_sum_cover(&[1, 1, 1, 2, 2, 3], SUBSET_SUM_CAP).unwrap());
    }

    #[test]
    fn subset_sum_cap() {
        let err = subset_sum_cover(&[30, 40], SUBSET_SUM_CAP).unwrap_err();
        assert_eq!(
            err,
            Error::Capacity {
                what: "subset-sum total",
                cap: 64
            }
        );
        assert!(err.to_string().contains("64"));
    }

    #[test]
    fn enumeration_is_exactly_the_valid_tuples() {
        let all = enumerate_changemakers(3, 4);
        for v in &all {
            assert!(is_changemaker(v.entries()).unwrap());
        }
        // (1),(1,1),(1,2),... brute-force count over ascending tuples in 1..=3
        let mut count = 0;
        for len in 1..=4u32 {
            for code in 0..3usize.pow(len) {
                let mut t = vec![];
                let mut c = code;
                for _ in 0..len {
                    t.push((c % 3) as i64 + 1);
                    c /= 3;
                }
                if t.windows(2).all(|w| w[0] <= w[1]) && is_changemaker(&t).unwrap() {
                    count += 1;
                }
            }
        }
        assert_eq!(all.len(), count);
    }
}
