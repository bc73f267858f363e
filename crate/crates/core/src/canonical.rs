//! Canonical chain, partition and essential values of an M-convex set, the
//! matroids that describe its dec-min members, and the square-sum duality.

use serde::Serialize;

use crate::base::BaseHandle;
use crate::engine::{self, one_tightening};
use crate::error::{Error, Result};
use crate::setfn::SetFunction;
use crate::subset::Subset;
use crate::vector::{square_sum, IntVec};

/// Canonical decomposition. Element indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalDecomposition {
    pub chain: Vec<Vec<usize>>,
    pub partition: Vec<Vec<usize>>,
    pub betas: Vec<i64>,
    /// Number of `β_i`-valued elements of block `i` in any dec-min member.
    pub r: Vec<usize>,
    pub delta_star: Vec<i64>,
    pub pi_star: Vec<i64>,
    pub value_fixed: Vec<Vec<usize>>,
    /// The dec-min member the decomposition was computed from.
    #[serde(skip)]
    pub m: IntVec,
}

impl CanonicalDecomposition {
    pub fn len(&self) -> usize {
        self.betas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.betas.is_empty()
    }

    /// `C_{i-1}` as a set; empty for `i = 0`.
    pub fn below(&self, i: usize) -> Subset {
        if i == 0 {
            Subset::EMPTY
        } else {
            Subset::from_elems(self.chain[i - 1].iter().copied())
        }
    }

    pub fn block(&self, i: usize) -> Subset {
        Subset::from_elems(self.partition[i].iter().copied())
    }

    /// Block index of each element.
    pub fn block_of(&self) -> Vec<usize> {
        let n = self.delta_star.len();
        let mut out = vec![0; n];
        for (i, b) in self.partition.iter().enumerate() {
            for &s in b {
                out[s] = i;
            }
        }
        out
    }
}

fn check_len(b: &BaseHandle, m: &[i64]) -> Result<()> {
    if m.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: b.len(),
            got: m.len(),
        });
    }
    Ok(())
}

/// Whether `X` is `m`-tight, through the set function when there is one.
pub fn is_tight(b: &BaseHandle, m: &[i64], x: Subset) -> Result<bool> {
    match b.effective_function() {
        Some(q) => Ok(q.eval(x) == Some(x.sum(m))),
        None => b.is_tight(m, x),
    }
}

/// Canonical decomposition read off a dec-min member by taking unions of
/// smallest tight sets level by level.
pub fn canonical_from_decmin(b: &BaseHandle, m: &[i64]) -> Result<CanonicalDecomposition> {
    check_len(b, m)?;
    if !b.is_member(m)? {
        return Err(Error::invalid("vector is not a member"));
    }
    if let Some(st) = one_tightening(b, m)? {
        return Err(Error::NotDecMin { s: st.s, t: st.t });
    }
    let n = b.len();
    let tights: Vec<Vec<bool>> = (0..n)
        .map(|u| {
            b.smallest_tight_set(m, u)
                .map(|t| (0..n).map(|v| t.contains(v)).collect())
        })
        .collect::<Result<_>>()?;
    Ok(decomposition_from_tight_sets(m, &tights))
}

/// Canonical decomposition from a dec-min member and the smallest tight set of
/// every element, given as membership masks.
pub fn decomposition_from_tight_sets(m: &[i64], tights: &[Vec<bool>]) -> CanonicalDecomposition {
    let n = m.len();
    let mut chain = vec![];
    let mut partition = vec![];
    let mut betas = vec![];
    let mut r = vec![];
    let mut value_fixed = vec![];
    let mut delta_star = vec![0; n];
    let mut pi_star = vec![0; n];
    let mut c = vec![false; n];
    while let Some(beta) = (0..n).filter(|&s| !c[s]).map(|s| m[s]).max() {
        let mut next = c.clone();
        for u in (0..n).filter(|&u| m[u] >= beta) {
            for v in 0..n {
                next[v] |= tights[u][v];
            }
        }
        let block: Vec<usize> = (0..n).filter(|&s| next[s] && !c[s]).collect();
        let fixed: Vec<usize> = block
            .iter()
            .copied()
            .filter(|&s| m[s] == beta && (0..n).all(|u| !tights[s][u] || c[u] || m[u] == beta))
            .collect();
        for &s in &block {
            delta_star[s] = beta - 1;
            pi_star[s] = 2 * beta - 1;
        }
        r.push(block.iter().filter(|&&s| m[s] == beta).count());
        chain.push((0..n).filter(|&s| next[s]).collect());
        partition.push(block);
        betas.push(beta);
        value_fixed.push(fixed);
        c = next;
    }
    CanonicalDecomposition {
        chain,
        partition,
        betas,
        r,
        delta_star,
        pi_star,
        value_fixed,
        m: m.to_vec(),
    }
}

/// Decomposition computed from a fresh dec-min member.
pub fn canonical(b: &BaseHandle) -> Result<CanonicalDecomposition> {
    let m = engine::decmin(b)?;
    canonical_from_decmin(b, &m)
}

/// Whether `m` is a dec-min member: a member in the box `β_i − 1 ≤ m ≤ β_i` on
/// each block with every chain set tight.
pub fn decmin_set_membership(d: &CanonicalDecomposition, b: &BaseHandle, m: &[i64]) -> Result<bool> {
    check_len(b, m)?;
    for (i, block) in d.partition.iter().enumerate() {
        if block.iter().any(|&s| m[s] < d.betas[i] - 1 || m[s] > d.betas[i]) {
            return Ok(false);
        }
    }
    if !b.is_member(m)? {
        return Ok(false);
    }
    for c in &d.chain {
        if !is_tight(b, m, Subset::from_elems(c.iter().copied()))? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn block_index(d: &CanonicalDecomposition, i: usize) -> Result<()> {
    if i >= d.len() {
        return Err(Error::invalid(format!("block index {i} out of range")));
    }
    Ok(())
}

/// Whether `L ⊆ S_i` is a base of the matroid of block `i`: `|L| = r_i` and
/// `|L ∩ X| ≥ p_i(X) − (β_i − 1)|X|` for all `X ⊆ S_i`, where
/// `p_i(X) = p(C_{i-1} ∪ X) − p(C_{i-1})`. Without a set function the test
/// instead checks that `Δ* + χ_L` on `S_i`, `m` elsewhere, is a member.
pub fn block_matroid_base_test(
    d: &CanonicalDecomposition,
    b: &BaseHandle,
    i: usize,
    l: Subset,
) -> Result<bool> {
    block_index(d, i)?;
    let block = d.block(i);
    if !l.is_subset_of(block) {
        return Err(Error::invalid("L is not inside the block"));
    }
    if l.len() != d.r[i] {
        return Err(Error::invalid(format!(
            "|L| = {} differs from r = {}",
            l.len(),
            d.r[i]
        )));
    }
    let beta = d.betas[i];
    if let Some(q) = b.effective_function() {
        b.ceiling().check_subsets(block.len())?;
        let below = d.below(i);
        let pc = q.eval(below).ok_or(Error::Empty)?;
        for x in block.subsets() {
            if let Some(v) = q.eval(below.union(x)) {
                let need = v - pc - (beta - 1) * x.len() as i64;
                if (l.intersection(x).len() as i64) < need {
                    return Ok(false);
                }
            }
        }
        return Ok(true);
    }
    let mut m = d.m.clone();
    for s in block.iter() {
        m[s] = beta - 1 + l.contains(s) as i64;
    }
    b.is_member(&m)
}

/// Largest `X ⊆ S_i` with `p_i(X) = β_i|X|`: the elements equal to `β_i` in
/// every dec-min member.
pub fn value_fixed_set(d: &CanonicalDecomposition, i: usize) -> Result<Subset> {
    block_index(d, i)?;
    Ok(Subset::from_elems(d.value_fixed[i].iter().copied()))
}

/// Union of all `X ⊆ S_i` with `p_i(X) = β_i|X|`, by subset scan.
pub fn value_fixed_set_scan(d: &CanonicalDecomposition, b: &BaseHandle, i: usize) -> Result<Subset> {
    block_index(d, i)?;
    let q = b
        .effective_function()
        .ok_or_else(|| Error::invalid("scan needs a set function"))?;
    let block = d.block(i);
    b.ceiling().check_subsets(block.len())?;
    let below = d.below(i);
    let pc = q.eval(below).ok_or(Error::Empty)?;
    let mut out = Subset::EMPTY;
    for x in block.subsets() {
        if q.eval(below.union(x)).map(|v| v - pc) == Some(d.betas[i] * x.len() as i64) {
            out = out.union(x);
        }
    }
    Ok(out)
}

/// `p̂(π) = p(I_n)π(s_n) + Σ_j p(I_j)(π(s_j) − π(s_{j+1}))` along a decreasing
/// order of `π`, where `I_j` holds the first `j` elements.
pub fn linear_extension(p: &dyn SetFunction, pi: &[i64]) -> Result<i64> {
    let n = p.ground_size();
    if pi.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: pi.len(),
        });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&s| (std::cmp::Reverse(pi[s]), s));
    let mut prefix = Subset::EMPTY;
    let mut total = 0i64;
    for (j, &s) in order.iter().enumerate() {
        prefix.insert(s);
        let coef = match order.get(j + 1) {
            Some(&next) => pi[s] - pi[next],
            None => pi[s],
        };
        if coef == 0 {
            continue;
        }
        let v = p
            .eval(prefix)
            .ok_or_else(|| Error::Undefined(format!("p is infinite on the prefix {prefix:?}")))?;
        total += v * coef;
    }
    Ok(total)
}

/// Level sets `{s : π(s) ≥ v}` for the values `v` of `π`, largest first.
pub fn top_sets(pi: &[i64]) -> Vec<Subset> {
    let mut values: Vec<i64> = pi.to_vec();
    values.sort_unstable_by(|a, b| b.cmp(a));
    values.dedup();
    values
        .into_iter()
        .map(|v| Subset::from_elems((0..pi.len()).filter(|&s| pi[s] >= v)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapReport {
    pub square_sum: i64,
    /// `p̂(π) − Σ ⌊π/2⌋⌈π/2⌉`.
    pub bound: i64,
    pub gap: i64,
    /// `m(s) ∈ {⌊π(s)/2⌋, ⌈π(s)/2⌉}` everywhere.
    pub o1: bool,
    /// Every top set of `π` is `m`-tight.
    pub o2: bool,
}

fn floor_ceil_half(v: i64) -> (i64, i64) {
    (v.div_euclid(2), -(-v).div_euclid(2))
}

/// Gap between the square-sum of `m` and the dual bound of `π`.
pub fn duality_gap(b: &BaseHandle, m: &[i64], pi: &[i64]) -> Result<GapReport> {
    check_len(b, m)?;
    check_len(b, pi)?;
    let q = b
        .effective_function()
        .ok_or_else(|| Error::invalid("duality needs a fully supermodular set function"))?;
    let correction: i64 = pi
        .iter()
        .map(|&v| {
            let (f, c) = floor_ceil_half(v);
            f * c
        })
        .sum();
    let bound = linear_extension(q.as_ref(), pi)? - correction;
    let w = square_sum(m);
    let o1 = m.iter().zip(pi).all(|(&x, &v)| {
        let (f, c) = floor_ceil_half(v);
        x == f || x == c
    });
    let o2 = top_sets(pi)
        .into_iter()
        .all(|x| q.eval(x) == Some(x.sum(m)));
    Ok(GapReport {
        square_sum: w,
        bound,
        gap: w - bound,
        o1,
        o2,
    })
}

/// Whether `π` is an optimal dual: `π = 2β_i − 1` on `S_i − F_i`,
/// `2β_i − 1 ≤ π ≤ 2β_i + 1` on `F_i`, and `π(s) ≥ π(t)` whenever `s, t ∈ F_i`
/// and every member of the value-fixed family containing `t` contains `s`.
pub fn verify_dual_optimal(d: &CanonicalDecomposition, b: &BaseHandle, pi: &[i64]) -> Result<bool> {
    check_len(b, pi)?;
    for i in 0..d.len() {
        let beta = d.betas[i];
        let fixed = value_fixed_set(d, i)?;
        for s in d.block(i).iter() {
            let ok = if fixed.contains(s) {
                (2 * beta - 1..=2 * beta + 1).contains(&pi[s])
            } else {
                pi[s] == 2 * beta - 1
            };
            if !ok {
                return Ok(false);
            }
        }
        for t in fixed.iter() {
            let tight = b.smallest_tight_set(&d.m, t)?;
            for s in fixed.iter() {
                if s != t && tight.contains(s) && pi[s] < pi[t] {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Dec-min member of least `Σ c(s)m(s)`, by improving swaps between `β_i` and
/// `β_i − 1` elements of one block.
pub fn cheapest_decmin(b: &BaseHandle, c: &[i64]) -> Result<IntVec> {
    check_len(b, c)?;
    let d = canonical(b)?;
    let block_of = d.block_of();
    let mut m = d.m.clone();
    loop {
        let mut best: Option<(i64, usize, usize)> = None;
        for t in 0..m.len() {
            let beta = d.betas[block_of[t]];
            if m[t] != beta {
                continue;
            }
            if !(0..m.len()).any(|s| {
                block_of[s] == block_of[t] && m[s] == beta - 1 && c[s] < c[t]
            }) {
                continue;
            }
            let tight = b.smallest_tight_set(&m, t)?;
            for s in tight.iter() {
                if block_of[s] == block_of[t] && m[s] == beta - 1 && c[s] < c[t] {
                    let gain = c[t] - c[s];
                    if best.is_none_or(|(g, _, _)| gain > g) {
                        best = Some((gain, t, s));
                    }
                }
            }
        }
        match best {
            Some((_, t, s)) => {
                m[s] += 1;
                m[t] -= 1;
            }
            None => return Ok(m),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setfn::{graph_induced, ExplicitTable};
    use std::sync::Arc;

    fn table(n: usize, vals: Vec<Option<i64>>) -> BaseHandle {
        BaseHandle::new(Arc::new(ExplicitTable::new(n, vals).unwrap())).unwrap()
    }

    fn line() -> BaseHandle {
        table(2, vec![Some(0), None, None, Some(1)])
    }

    fn segment() -> BaseHandle {
        table(2, vec![Some(0), Some(0), Some(0), Some(1)])
    }

    /// p({0}) = 1, p(S) = 1: the only dec-min member is (1, 0).
    fn pinned() -> BaseHandle {
        table(2, vec![Some(0), Some(1), None, Some(1)])
    }

    #[test]
    fn line_decomposition() {
        let d = canonical_from_decmin(&line(), &[1, 0]).unwrap();
        assert_eq!(d.chain, vec![vec![0, 1]]);
        assert_eq!(d.betas, vec![1]);
        assert_eq!(d.r, vec![1]);
        assert_eq!(d.delta_star, vec![0, 0]);
        assert_eq!(d.pi_star, vec![1, 1]);
        assert!(d.value_fixed[0].is_empty());
        assert!(canonical_from_decmin(&line(), &[2, -1]).is_err());
    }

    #[test]
    fn path_decomposition() {
        let b = BaseHandle::new(Arc::new(graph_induced(3, &[(0, 1, 1), (1, 2, 1)]).unwrap())).unwrap();
        let d = canonical_from_decmin(&b, &[0, 1, 1]).unwrap();
        assert_eq!((d.betas.clone(), d.r.clone()), (vec![1], vec![2]));
    }

    #[test]
    fn membership_via_decomposition() {
        let b = line();
        let d = canonical_from_decmin(&b, &[1, 0]).unwrap();
        assert!(decmin_set_membership(&d, &b, &[1, 0]).unwrap());
        assert!(decmin_set_membership(&d, &b, &[0, 1]).unwrap());
        assert!(!decmin_set_membership(&d, &b, &[2, -1]).unwrap());
    }

    #[test]
    fn block_matroid_examples() {
        let b = line();
        let d = canonical_from_decmin(&b, &[1, 0]).unwrap();
        assert!(block_matroid_base_test(&d, &b, 0, Subset::singleton(0)).unwrap());
        assert!(block_matroid_base_test(&d, &b, 0, Subset::singleton(1)).unwrap());
        assert!(block_matroid_base_test(&d, &b, 0, Subset::full(2)).is_err());
    }

    #[test]
    fn value_fixed_examples() {
        let b = pinned();
        let d = canonical_from_decmin(&b, &[1, 0]).unwrap();
        assert_eq!(d.betas, vec![1, 0]);
        assert_eq!(value_fixed_set(&d, 0).unwrap(), Subset::singleton(0));
        assert_eq!(value_fixed_set_scan(&d, &b, 0).unwrap(), Subset::singleton(0));
        let d = canonical_from_decmin(&line(), &[1, 0]).unwrap();
        assert_eq!(value_fixed_set_scan(&d, &line(), 0).unwrap(), Subset::EMPTY);
    }

    #[test]
    fn linear_extension_examples() {
        let p = line();
        let p = p.function().unwrap();
        assert_eq!(linear_extension(p.as_ref(), &[1, 1]).unwrap(), 1);
        assert!(linear_extension(p.as_ref(), &[2, 1]).is_err());
        let q = segment();
        assert_eq!(linear_extension(q.function().unwrap().as_ref(), &[2, 1]).unwrap(), 1);
        assert_eq!(linear_extension(q.function().unwrap().as_ref(), &[0, 1]).unwrap(), 0);
    }

    #[test]
    fn gap_examples() {
        let b = line();
        let g = duality_gap(&b, &[1, 0], &[1, 1]).unwrap();
        assert_eq!(g.gap, 0);
        assert!(g.o1 && g.o2);
        let g = duality_gap(&b, &[1, 0], &[3, 3]).unwrap();
        assert_eq!((g.bound, g.gap), (-1, 2));
    }

    #[test]
    fn dual_optimal_examples() {
        let b = line();
        let d = canonical_from_decmin(&b, &[1, 0]).unwrap();
        assert!(verify_dual_optimal(&d, &b, &[1, 1]).unwrap());
        assert!(!verify_dual_optimal(&d, &b, &[1, 3]).unwrap());
        let b = pinned();
        let d = canonical_from_decmin(&b, &[1, 0]).unwrap();
        assert!(verify_dual_optimal(&d, &b, &[3, 1]).unwrap());
        assert!(verify_dual_optimal(&d, &b, &[1, 1]).unwrap());
        assert!(!verify_dual_optimal(&d, &b, &[5, 1]).unwrap());
    }

    #[test]
    fn cheapest_examples() {
        assert_eq!(cheapest_decmin(&line(), &[0, 1]).unwrap(), vec![1, 0]);
        assert_eq!(cheapest_decmin(&line(), &[1, 0]).unwrap(), vec![0, 1]);
    }
}
