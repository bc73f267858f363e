//! Dec-min algorithms: repeated 1-tightening, Newton–Dinkelbach for the
//! essential values, and the recursion over peak sets.

use std::sync::Arc;

use serde::Serialize;

use crate::base::{greedy_chain_member, BaseHandle, Modularity};
use crate::brute::div_ceil;
use crate::error::{Error, Result};
use crate::setfn::{Contracted, Oracle, SetFunction};
use crate::subset::{Embedding, Subset};
use crate::vector::{diff_sum, diff_sum_k, k_largest_sums, square_sum, IntVec};

/// Member built greedily along `order`. Infinite prefixes are skipped and their
/// increment charged to the element of the jump that comes last in `order`.
pub fn greedy_member(b: &BaseHandle, order: &[usize]) -> Result<IntVec> {
    match b.effective_function() {
        Some(q) => greedy_chain_member(q.as_ref(), order),
        None => b.initial_member(),
    }
}

/// A 1-tightening step `m' = m + χ_s − χ_t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tightening {
    pub s: usize,
    pub t: usize,
    pub m: IntVec,
}

fn uses_tight_sets(b: &BaseHandle) -> bool {
    b.function().is_some() && b.modularity() != Modularity::Crossing
}

/// The step with the largest gap `m(t) − m(s) ≥ 2` (ties: smallest `t`, then
/// smallest `s`), or `None` when `m` is dec-min.
pub fn one_tightening(b: &BaseHandle, m: &[i64]) -> Result<Option<Tightening>> {
    let n = b.len();
    if m.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: m.len(),
        });
    }
    let step = |s: usize, t: usize| {
        let mut m2 = m.to_vec();
        m2[s] += 1;
        m2[t] -= 1;
        Tightening { s, t, m: m2 }
    };
    if uses_tight_sets(b) {
        let mut best: Option<(i64, usize, usize)> = None;
        for t in 0..n {
            if m.iter().all(|&v| m[t] - v < 2) {
                continue;
            }
            let tight = b.smallest_tight_set(m, t)?;
            for s in tight.iter() {
                let gap = m[t] - m[s];
                if gap >= 2 && best.is_none_or(|(g, _, _)| gap > g) {
                    best = Some((gap, t, s));
                }
            }
        }
        return Ok(best.map(|(_, t, s)| step(s, t)));
    }
    let mut pairs: Vec<(i64, usize, usize)> = (0..n)
        .flat_map(|t| (0..n).map(move |s| (t, s)))
        .filter(|&(t, s)| m[t] - m[s] >= 2)
        .map(|(t, s)| (m[t] - m[s], t, s))
        .collect();
    pairs.sort_by_key(|&(g, t, s)| (-g, t, s));
    for (_, t, s) in pairs {
        if b.exchange_feasible(m, s, t)? {
            return Ok(Some(step(s, t)));
        }
    }
    Ok(None)
}

/// Applies 1-tightening steps until none is left.
pub fn basic_decmin(b: &BaseHandle, m0: &[i64]) -> Result<IntVec> {
    if !b.is_member(m0)? {
        return Err(Error::invalid("starting vector is not a member"));
    }
    let mut m = m0.to_vec();
    while let Some(step) = one_tightening(b, &m)? {
        m = step.m;
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecminCheck {
    pub is_decmin: bool,
    /// `(s, t)` of an available 1-tightening step.
    pub witness: Option<(usize, usize)>,
}

pub fn is_decmin(b: &BaseHandle, m: &[i64]) -> Result<DecminCheck> {
    Ok(match one_tightening(b, m)? {
        None => DecminCheck {
            is_decmin: true,
            witness: None,
        },
        Some(st) => DecminCheck {
            is_decmin: false,
            witness: Some((st.s, st.t)),
        },
    })
}

/// Iterates of the Newton–Dinkelbach search for the least good `μ`, where `μ`
/// is good when `p(X) − μ·b(X) ≤ 0` for every `X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NdTrace {
    /// All tried values; every one but the last is bad.
    pub mus: Vec<i64>,
    /// Maximizer found at each bad value.
    pub witnesses: Vec<Subset>,
    pub witness_weights: Vec<i64>,
    pub result: i64,
}

impl NdTrace {
    /// Number of bad iterations.
    pub fn iterations(&self) -> usize {
        self.witnesses.len()
    }
}

/// One argmax query: `(max_X p(X) − μ·b(X), maximizer, b(maximizer))`.
pub type NdArgmax<'a> = dyn FnMut(i64) -> Result<(i64, Subset, i64)> + 'a;

const MAX_PROBES: usize = 62;

/// Newton–Dinkelbach over an arbitrary argmax routine. When `μ = 0` is already
/// good the search first probes `−1, −2, −4, …` until it finds a bad value.
pub fn newton_dinkelbach_with(argmax: &mut NdArgmax<'_>) -> Result<NdTrace> {
    let mut mu = 0i64;
    let mut first = argmax(mu)?;
    if first.0 <= 0 {
        let mut step = 1i64;
        let mut probes = 0;
        loop {
            let cand = -step;
            let r = argmax(cand)?;
            if r.0 > 0 {
                mu = cand;
                first = r;
                break;
            }
            probes += 1;
            if probes > MAX_PROBES {
                return Err(Error::Undefined("every μ is good".into()));
            }
            step *= 2;
        }
    }
    let mut trace = NdTrace {
        mus: vec![],
        witnesses: vec![],
        witness_weights: vec![],
        result: 0,
    };
    let (mut val, mut x, mut bx) = first;
    loop {
        trace.mus.push(mu);
        if val <= 0 {
            trace.result = mu;
            return Ok(trace);
        }
        if bx <= 0 {
            return Err(Error::Undefined(format!(
                "no good μ: set {x:?} has positive value and zero weight"
            )));
        }
        trace.witnesses.push(x);
        trace.witness_weights.push(bx);
        // p(X) = val + μ·b(X)
        let px = val + mu * bx;
        mu = div_ceil(px, bx);
        (val, x, bx) = argmax(mu)?;
    }
}

/// Newton–Dinkelbach for `b = w̃` with `w ≥ 0`, using the oracle's shifted
/// maximization.
pub fn newton_dinkelbach(p: &dyn SetFunction, w: &[i64]) -> Result<NdTrace> {
    let n = p.ground_size();
    if w.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: w.len(),
        });
    }
    if w.iter().any(|&v| v < 0) {
        return Err(Error::invalid("weights must be non-negative"));
    }
    let full = Subset::full(n);
    let mut argmax = |mu: i64| -> Result<(i64, Subset, i64)> {
        let shift: Vec<i64> = w.iter().map(|&v| v * mu).collect();
        let r = p
            .maximize_shifted(&shift, Subset::EMPTY, full)
            .ok_or(Error::Empty)?;
        Ok((r.value, r.set, r.set.sum(w)))
    };
    newton_dinkelbach_with(&mut argmax)
}

/// Least `β` with `β|X| ≥ p(X)` for every `X`: the largest component of any
/// dec-min member.
pub fn top_value(p: &dyn SetFunction) -> Result<i64> {
    Ok(newton_dinkelbach(p, &vec![1; p.ground_size()])?.result)
}

fn beta_covered_of(q: &dyn SetFunction, beta: i64) -> Result<IntVec> {
    let n = q.ground_size();
    let full = Subset::full(n);
    let excess = q
        .maximize_shifted(&vec![beta; n], Subset::EMPTY, full)
        .ok_or(Error::Empty)?;
    if excess.value > 0 {
        return Err(Error::infeasible(
            format!("β = {beta} is below the top essential value"),
            excess.set.to_vec(),
        ));
    }
    let mut x = vec![beta; n];
    for i in 0..n {
        let r = q
            .maximize_shifted(&x, Subset::singleton(i), full)
            .ok_or(Error::Empty)?;
        x[i] += r.value;
    }
    Ok(x)
}

/// Member with every component at most `β`, lowering components one at a time
/// as far as the upper region allows.
pub fn beta_covered_member(b: &BaseHandle, beta: i64) -> Result<IntVec> {
    let q = full_function(b)?;
    beta_covered_of(q.as_ref(), beta)
}

fn tight_of(q: &dyn SetFunction, m: &[i64], t: usize) -> Result<Subset> {
    let r = q
        .maximize_shifted(m, Subset::singleton(t), Subset::full(q.ground_size()))
        .ok_or(Error::Empty)?;
    if r.value != 0 {
        return Err(Error::invalid("vector is not a member"));
    }
    Ok(r.set)
}

fn tighten_of(q: &dyn SetFunction, m: &[i64], beta: i64) -> Result<IntVec> {
    let mut m = m.to_vec();
    'outer: loop {
        for t in 0..m.len() {
            if m[t] != beta {
                continue;
            }
            let tight = tight_of(q, &m, t)?;
            if let Some(s) = tight.iter().filter(|&s| m[s] <= beta - 2).min_by_key(|&s| m[s]) {
                m[s] += 1;
                m[t] -= 1;
                continue 'outer;
            }
        }
        return Ok(m);
    }
}

fn peak_of(q: &dyn SetFunction, m: &[i64], beta: i64) -> Result<Subset> {
    let mut peak = Subset::EMPTY;
    for t in 0..m.len() {
        if m[t] == beta && !peak.contains(t) {
            peak = peak.union(tight_of(q, m, t)?);
        }
    }
    Ok(peak)
}

fn full_function(b: &BaseHandle) -> Result<Oracle> {
    b.effective_function()
        .ok_or_else(|| Error::invalid("operation needs a fully supermodular set function"))
}

/// Moves units from `β`-valued elements to elements of value at most `β − 2`
/// inside their tight sets until none is left.
pub fn pre_decmin_tighten(b: &BaseHandle, m: &[i64], beta: i64) -> Result<IntVec> {
    let q = full_function(b)?;
    if m.iter().any(|&v| v > beta) {
        return Err(Error::invalid("vector is not β-covered"));
    }
    tighten_of(q.as_ref(), m, beta)
}

/// The smallest maximizer of `p(X) − (β − 1)|X|`, read off a pre-dec-min member
/// as the union of the tight sets of its `β`-valued elements.
pub fn peak_set(b: &BaseHandle, beta: i64) -> Result<Subset> {
    let q = full_function(b)?;
    let m = tighten_of(q.as_ref(), &beta_covered_of(q.as_ref(), beta)?, beta)?;
    peak_of(q.as_ref(), &m, beta)
}

/// Output of the peak-set recursion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrongResult {
    pub m: IntVec,
    /// Essential values, strictly decreasing.
    pub betas: Vec<i64>,
    /// Block of each essential value, as sorted element lists.
    pub blocks: Vec<Vec<usize>>,
}

/// Dec-min member by the peak-set recursion. Handles without a fully
/// supermodular function fall back to 1-tightening from an initial member.
pub fn strongly_poly_decmin(b: &BaseHandle) -> Result<StrongResult> {
    let Some(q) = b.effective_function() else {
        let m = basic_decmin(b, &b.initial_member()?)?;
        let d = crate::canonical::canonical_from_decmin(b, &m)?;
        return Ok(StrongResult {
            m,
            betas: d.betas.clone(),
            blocks: d.partition.clone(),
        });
    };
    let n = b.len();
    let mut m = vec![0; n];
    let mut betas = vec![];
    let mut blocks = vec![];
    let mut cur: Oracle = q.clone();
    let mut emb = Embedding::new((0..n).collect());
    let mut contracted = Subset::EMPTY;
    while !emb.is_empty() {
        let k = emb.len();
        let beta = newton_dinkelbach(cur.as_ref(), &vec![1; k])?.result;
        let local = tighten_of(cur.as_ref(), &beta_covered_of(cur.as_ref(), beta)?, beta)?;
        let peak = peak_of(cur.as_ref(), &local, beta)?;
        if peak.is_empty() {
            return Err(Error::invalid("empty peak set; function is not fully supermodular"));
        }
        let block: Vec<usize> = peak.iter().map(|i| emb.elems[i]).collect();
        for i in peak.iter() {
            m[emb.elems[i]] = local[i];
        }
        contracted = contracted.union(Subset::from_elems(block.iter().copied()));
        betas.push(beta);
        blocks.push(block);
        if peak.len() == k {
            break;
        }
        cur = Arc::new(Contracted::new(q.clone(), contracted)?);
        emb = Embedding::of(Subset::full(n).minus(contracted));
    }
    Ok(StrongResult { m, betas, blocks })
}

/// Dec-min member by whichever route suits the handle.
pub fn decmin(b: &BaseHandle) -> Result<IntVec> {
    Ok(strongly_poly_decmin(b)?.m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MeasureReport {
    pub square_sum: i64,
    pub diff_sum: i64,
    pub k_largest: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diff_k: Option<i64>,
}

pub fn measures(m: &[i64], k: Option<i64>) -> MeasureReport {
    MeasureReport {
        square_sum: square_sum(m),
        diff_sum: diff_sum(m),
        k_largest: k_largest_sums(m),
        diff_k: k.map(|k| diff_sum_k(m, k)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brute;
    use crate::setfn::{graph_induced, ExplicitTable};
    use crate::vector::value_equivalent;

    fn line() -> BaseHandle {
        let t = ExplicitTable::new(2, vec![Some(0), None, None, Some(1)]).unwrap();
        BaseHandle::new(Arc::new(t)).unwrap()
    }

    fn path() -> BaseHandle {
        BaseHandle::new(Arc::new(graph_induced(3, &[(0, 1, 1), (1, 2, 1)]).unwrap())).unwrap()
    }

    #[test]
    fn greedy_examples() {
        assert_eq!(greedy_member(&line(), &[0, 1]).unwrap(), vec![0, 1]);
        assert_eq!(greedy_member(&line(), &[1, 0]).unwrap(), vec![1, 0]);
        assert_eq!(greedy_member(&path(), &[0, 1, 2]).unwrap(), vec![0, 1, 1]);
    }

    #[test]
    fn tightening_examples() {
        let st = one_tightening(&line(), &[2, -1]).unwrap().unwrap();
        assert_eq!((st.s, st.t, st.m), (1, 0, vec![1, 0]));
        assert_eq!(one_tightening(&line(), &[1, 0]).unwrap(), None);
        let chk = is_decmin(&line(), &[2, -1]).unwrap();
        assert_eq!(chk.witness, Some((1, 0)));
    }

    #[test]
    fn basic_from_far_point() {
        let m = basic_decmin(&line(), &[7, -6]).unwrap();
        assert!(value_equivalent(&m, &[1, 0]));
    }

    #[test]
    fn nd_examples() {
        let t = line();
        let tr = newton_dinkelbach(t.function().unwrap().as_ref(), &[1, 1]).unwrap();
        assert_eq!(tr.mus, vec![0, 1]);
        assert_eq!(tr.witnesses, vec![Subset::full(2)]);
        assert_eq!(tr.result, 1);
        let p = path();
        assert_eq!(top_value(p.function().unwrap().as_ref()).unwrap(), 1);
    }

    #[test]
    fn nd_with_good_start() {
        // p ≤ 0 everywhere: answer is max ⌈p(X)/|X|⌉ = 0 here.
        let t = ExplicitTable::new(2, vec![Some(0), Some(-3), Some(0), Some(-1)]).unwrap();
        let tr = newton_dinkelbach(&t, &[1, 1]).unwrap();
        assert_eq!(Some(tr.result), brute::max_ceil_ratio(&t));
    }

    #[test]
    fn beta_covered_examples() {
        let m = beta_covered_member(&line(), 1).unwrap();
        assert!(value_equivalent(&m, &[1, 0]));
        let m = beta_covered_member(&line(), 2).unwrap();
        assert!(line().is_member(&m).unwrap() && m.iter().all(|&v| v <= 2));
        let m = beta_covered_member(&path(), 1).unwrap();
        assert!(value_equivalent(&m, &[0, 1, 1]));
        assert!(beta_covered_member(&path(), 0).is_err());
    }

    #[test]
    fn peak_examples() {
        assert_eq!(peak_set(&line(), 1).unwrap(), Subset::full(2));
        assert_eq!(peak_set(&path(), 1).unwrap(), Subset::full(3));
        assert_eq!(pre_decmin_tighten(&line(), &[1, 0], 1).unwrap(), vec![1, 0]);
    }

    #[test]
    fn strong_examples() {
        let r = strongly_poly_decmin(&line()).unwrap();
        assert!(value_equivalent(&r.m, &[1, 0]));
        assert_eq!(r.betas, vec![1]);
        let r = strongly_poly_decmin(&path()).unwrap();
        assert!(value_equivalent(&r.m, &[0, 1, 1]));
    }

    #[test]
    fn measure_examples() {
        let r = measures(&[2, 3, 3, 1], Some(1));
        assert_eq!((r.square_sum, r.diff_sum, r.k_largest[1]), (23, 14, 6));
        assert_eq!(measures(&[3, 2, 4, 0], None).square_sum, 29);
    }
}
