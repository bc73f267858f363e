//! Integer vectors and the decreasing/increasing orders on them.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One integer per ground-set element.
pub type IntVec = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Comparison {
    Smaller,
    ValueEquivalent,
    Larger,
}

impl Comparison {
    fn from_ordering(o: Ordering) -> Self {
        match o {
            Ordering::Less => Comparison::Smaller,
            Ordering::Equal => Comparison::ValueEquivalent,
            Ordering::Greater => Comparison::Larger,
        }
    }
}

fn check_len(x: &[i64], y: &[i64]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    Ok(())
}

pub fn sorted_dec(x: &[i64]) -> IntVec {
    let mut v = x.to_vec();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

pub fn sorted_inc(x: &[i64]) -> IntVec {
    let mut v = x.to_vec();
    v.sort_unstable();
    v
}

/// `Smaller` iff `x` is decreasingly smaller than `y`.
pub fn dec_compare(x: &[i64], y: &[i64]) -> Result<Comparison> {
    check_len(x, y)?;
    Ok(Comparison::from_ordering(sorted_dec(x).cmp(&sorted_dec(y))))
}

/// `Larger` iff `x` is increasingly larger than `y`.
pub fn inc_compare(x: &[i64], y: &[i64]) -> Result<Comparison> {
    check_len(x, y)?;
    Ok(Comparison::from_ordering(sorted_inc(x).cmp(&sorted_inc(y))))
}

pub fn value_equivalent(x: &[i64], y: &[i64]) -> bool {
    x.len() == y.len() && sorted_dec(x) == sorted_dec(y)
}

/// Components take at most two consecutive values.
pub fn is_near_uniform(x: &[i64]) -> bool {
    match (x.iter().min(), x.iter().max()) {
        (Some(lo), Some(hi)) => hi - lo <= 1,
        _ => true,
    }
}

/// `k_largest_sums(x)[k-1]` is the sum of the `k` largest components.
pub fn k_largest_sums(x: &[i64]) -> IntVec {
    sorted_dec(x)
        .iter()
        .scan(0i64, |acc, &v| {
            *acc += v;
            Some(*acc)
        })
        .collect()
}

pub fn square_sum(x: &[i64]) -> i64 {
    x.iter().map(|v| v * v).sum()
}

/// Sum of `|x(s) - x(t)|` over ordered pairs, so each unordered pair counts twice.
pub fn diff_sum(x: &[i64]) -> i64 {
    diff_sum_k(x, 0)
}

/// Sum of `(|x(s) - x(t)| - k)+` over ordered pairs.
pub fn diff_sum_k(x: &[i64], k: i64) -> i64 {
    let mut total = 0;
    for (i, a) in x.iter().enumerate() {
        for b in &x[i + 1..] {
            total += 2 * ((a - b).abs() - k).max(0);
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dec_compare_examples() {
        use Comparison::*;
        assert_eq!(dec_compare(&[2, 5, 5, 1, 4], &[1, 5, 5, 5, 1]).unwrap(), Smaller);
        assert_eq!(
            dec_compare(&[2, 5, 5, 1, 4], &[1, 4, 5, 2, 5]).unwrap(),
            ValueEquivalent
        );
        assert_eq!(dec_compare(&[3, 1, 3, 3], &[2, 2, 2, 4]).unwrap(), Smaller);
        assert!(dec_compare(&[1], &[1, 2]).is_err());
    }

    #[test]
    fn inc_compare_examples() {
        use Comparison::*;
        assert_eq!(inc_compare(&[2, 2, 2, 4], &[3, 1, 3, 3]).unwrap(), Larger);
        assert_eq!(inc_compare(&[1, 0], &[0, 1]).unwrap(), ValueEquivalent);
        assert_eq!(inc_compare(&[1, 1], &[2, 0]).unwrap(), Larger);
    }

    #[test]
    fn measures_on_small_vector() {
        assert_eq!(square_sum(&[2, 3, 3, 1]), 23);
        assert_eq!(square_sum(&[3, 2, 4, 0]), 29);
        assert_eq!(diff_sum(&[2, 3, 3, 1]), 14);
        assert_eq!(k_largest_sums(&[2, 3, 3, 1]), vec![3, 6, 8, 9]);
        assert_eq!(diff_sum_k(&[2, 3, 3, 1], 1), 4);
    }
}
