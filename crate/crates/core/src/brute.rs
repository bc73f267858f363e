//! Exhaustive reference answers for small instances.

use crate::base::BaseHandle;
use crate::error::{Error, Result};
use crate::setfn::SetFunction;
use crate::subset::Subset;
use crate::vector::{diff_sum, k_largest_sums, sorted_dec, sorted_inc, square_sum, IntVec};

fn minimizers_by<K: Ord, F: Fn(&IntVec) -> K>(points: &[IntVec], key: F) -> Vec<IntVec> {
    let Some(best) = points.iter().map(&key).min() else {
        return vec![];
    };
    points.iter().filter(|p| key(p) == best).cloned().collect()
}

/// Points whose decreasingly sorted vector is lexicographically smallest.
pub fn decmin_points(points: &[IntVec]) -> Vec<IntVec> {
    minimizers_by(points, |p| sorted_dec(p))
}

/// Points whose increasingly sorted vector is lexicographically largest.
pub fn incmax_points(points: &[IntVec]) -> Vec<IntVec> {
    minimizers_by(points, |p| std::cmp::Reverse(sorted_inc(p)))
}

pub fn square_sum_minimizers(points: &[IntVec]) -> Vec<IntVec> {
    minimizers_by(points, |p| square_sum(p))
}

pub fn diff_sum_minimizers(points: &[IntVec]) -> Vec<IntVec> {
    minimizers_by(points, |p| diff_sum(p))
}

/// Componentwise minimum over the points of the `k`-largest sums.
pub fn min_k_largest_sums(points: &[IntVec]) -> Option<IntVec> {
    let mut it = points.iter().map(|p| k_largest_sums(p));
    let first = it.next()?;
    Some(it.fold(first, |acc, s| acc.iter().zip(&s).map(|(a, b)| *a.min(b)).collect()))
}

/// Dec-min members of `b`, by enumeration of its automatic search box.
pub fn decmin_members(b: &BaseHandle) -> Result<Vec<IntVec>> {
    let pts = b.enumerate_all()?.points;
    if pts.is_empty() {
        return Err(Error::Empty);
    }
    Ok(decmin_points(&pts))
}

/// All sets `X` with `m̃(X) = p(X)`.
pub fn tight_sets(p: &dyn SetFunction, m: &[i64]) -> Vec<Subset> {
    Subset::all(p.ground_size())
        .filter(|x| p.eval(*x) == Some(x.sum(m)))
        .collect()
}

/// Smallest tight set containing `t`, as the intersection of all of them.
pub fn smallest_tight_set(p: &dyn SetFunction, m: &[i64], t: usize) -> Option<Subset> {
    tight_sets(p, m)
        .into_iter()
        .filter(|x| x.contains(t))
        .reduce(Subset::intersection)
}

/// `max ⌈p(X) / |X|⌉` over non-empty `X` with finite value.
pub fn max_ceil_ratio(p: &dyn SetFunction) -> Option<i64> {
    Subset::all(p.ground_size())
        .filter(|x| !x.is_empty())
        .filter_map(|x| p.eval(x).map(|v| div_ceil(v, x.len() as i64)))
        .max()
}

pub fn div_ceil(a: i64, b: i64) -> i64 {
    -(-a).div_euclid(b)
}

/// Maximizers of `p(X) − w̃(X)` over all finite `X`, with the maximum.
pub fn shifted_maximizers(p: &dyn SetFunction, w: &[i64]) -> (i64, Vec<Subset>) {
    let mut best = i64::MIN;
    let mut sets = vec![];
    for x in Subset::all(p.ground_size()) {
        if let Some(v) = p.eval(x) {
            let v = v - x.sum(w);
            if v > best {
                best = v;
                sets.clear();
            }
            if v == best {
                sets.push(x);
            }
        }
    }
    (best, sets)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_point_measures() {
        let pts = vec![vec![2, 3, 3, 1], vec![3, 3, 3, 0], vec![2, 2, 4, 1], vec![3, 2, 4, 0]];
        assert_eq!(decmin_points(&pts), vec![vec![2, 3, 3, 1]]);
        assert_eq!(incmax_points(&pts), vec![vec![2, 3, 3, 1]]);
        assert_eq!(square_sum_minimizers(&pts), vec![vec![2, 3, 3, 1]]);
        assert_eq!(min_k_largest_sums(&pts).unwrap(), vec![3, 6, 8, 9]);
    }

    #[test]
    fn ceil_division() {
        assert_eq!(div_ceil(1, 2), 1);
        assert_eq!(div_ceil(-1, 2), 0);
        assert_eq!(div_ceil(-3, 2), -1);
        assert_eq!(div_ceil(4, 2), 2);
    }
}
