//! Matroid oracles, matroid intersection and the matroid-based dec-min problems:
//! bases of several matroids with dec-min sum, bases with dec-min intersection
//! vector over a partition, and orientations whose in- and out-degree vectors
//! are both dec-min.

use std::collections::VecDeque;
use std::fmt::Debug;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::base::{BaseHandle, MembershipOracle};
use crate::canonical::{block_matroid_base_test, canonical, CanonicalDecomposition};
use crate::engine::decmin;
use crate::error::{Error, Result};
use crate::orientation::{decmin_orientation, orient_with_indegrees, orientation_canonical, Bounds, Graph, Orientation};
use crate::subset::Subset;
use crate::vector::IntVec;

/// Independence oracle on the ground set `0..ground_size()`.
pub trait Matroid: Send + Sync + Debug {
    fn ground_size(&self) -> usize;

    /// Whether the listed elements form an independent set. Lists never repeat
    /// an element.
    fn is_independent(&self, set: &[usize]) -> bool;
}

pub type MatroidRef = Arc<dyn Matroid>;

/// Greedy basis of `within`, scanning in the given order.
pub fn greedy_basis(m: &dyn Matroid, within: &[usize]) -> Vec<usize> {
    let mut basis = vec![];
    for &e in within {
        basis.push(e);
        if !m.is_independent(&basis) {
            basis.pop();
        }
    }
    basis
}

pub fn rank_of(m: &dyn Matroid, set: &[usize]) -> usize {
    greedy_basis(m, set).len()
}

pub fn rank(m: &dyn Matroid) -> usize {
    rank_of(m, &(0..m.ground_size()).collect::<Vec<_>>())
}

pub fn is_basis(m: &dyn Matroid, set: &[usize]) -> bool {
    m.is_independent(set) && set.len() == rank(m)
}

/// Forests of a multigraph; the ground set is the edge list.
#[derive(Clone, Debug)]
pub struct Graphic {
    pub nodes: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graphic {
    pub fn new(nodes: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if edges.iter().any(|&(u, v)| u >= nodes || v >= nodes) {
            return Err(Error::invalid("edge endpoint out of range"));
        }
        Ok(Graphic { nodes, edges })
    }
}

impl Matroid for Graphic {
    fn ground_size(&self) -> usize {
        self.edges.len()
    }

    fn is_independent(&self, set: &[usize]) -> bool {
        let mut parent: Vec<usize> = (0..self.nodes).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &e in set {
            let (u, v) = self.edges[e];
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
        true
    }
}

#[derive(Clone, Debug)]
pub struct Uniform {
    pub n: usize,
    pub r: usize,
}

impl Matroid for Uniform {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn is_independent(&self, set: &[usize]) -> bool {
        set.len() <= self.r
    }
}

/// At most `caps[j]` elements from block `j`. Elements outside every block are
/// loops.
#[derive(Clone, Debug)]
pub struct Partition {
    n: usize,
    block_of: Vec<Option<usize>>,
    caps: Vec<usize>,
}

impl Partition {
    pub fn new(n: usize, blocks: &[Vec<usize>], caps: Vec<usize>) -> Result<Self> {
        if blocks.len() != caps.len() {
            return Err(Error::LengthMismatch {
                expected: blocks.len(),
                got: caps.len(),
            });
        }
        let mut block_of = vec![None; n];
        for (j, block) in blocks.iter().enumerate() {
            for &e in block {
                if e >= n || block_of[e].is_some() {
                    return Err(Error::invalid("partition blocks must be disjoint and in range"));
                }
                block_of[e] = Some(j);
            }
        }
        Ok(Partition { n, block_of, caps })
    }
}

impl Matroid for Partition {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn is_independent(&self, set: &[usize]) -> bool {
        let mut used = vec![0; self.caps.len()];
        for &e in set {
            match self.block_of[e] {
                None => return false,
                Some(j) => {
                    used[j] += 1;
                    if used[j] > self.caps[j] {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Matroid given by its list of bases.
#[derive(Clone, Debug)]
pub struct ExplicitBases {
    n: usize,
    bases: Vec<u64>,
}

impl ExplicitBases {
    pub fn new(n: usize, bases: &[Vec<usize>]) -> Result<Self> {
        if n > 64 {
            return Err(Error::invalid("explicit bases need at most 64 elements"));
        }
        let masks: Vec<u64> = bases
            .iter()
            .map(|b| {
                if b.iter().any(|&e| e >= n) {
                    return Err(Error::invalid("basis element out of range"));
                }
                Ok(Subset::from_elems(b.iter().copied()).bits())
            })
            .collect::<Result<_>>()?;
        let Some(first) = masks.first() else {
            return Err(Error::invalid("a matroid has at least one basis"));
        };
        let r = first.count_ones();
        if masks.iter().any(|b| b.count_ones() != r) {
            return Err(Error::invalid("bases must have equal size"));
        }
        for &a in &masks {
            for &b in &masks {
                for x in Subset(a & !b).iter() {
                    let ok = Subset(b & !a)
                        .iter()
                        .any(|y| masks.contains(&((a & !(1 << x)) | 1 << y)));
                    if !ok {
                        return Err(Error::invalid("bases violate the exchange axiom"));
                    }
                }
            }
        }
        Ok(ExplicitBases { n, bases: masks })
    }

    pub fn bases(&self) -> Vec<Vec<usize>> {
        self.bases.iter().map(|&b| Subset(b).to_vec()).collect()
    }
}

impl Matroid for ExplicitBases {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn is_independent(&self, set: &[usize]) -> bool {
        let s = Subset::from_elems(set.iter().copied()).bits();
        self.bases.iter().any(|&b| s & !b == 0)
    }
}

/// Matroids placed on disjoint element lists of a common ground set. Elements
/// in no part are loops.
#[derive(Clone, Debug)]
pub struct DirectSum {
    n: usize,
    parts: Vec<(Vec<usize>, MatroidRef)>,
    /// `(part, local index)` of every element.
    place: Vec<Option<(usize, usize)>>,
}

impl DirectSum {
    pub fn new(n: usize, parts: Vec<(Vec<usize>, MatroidRef)>) -> Result<Self> {
        let mut place = vec![None; n];
        for (j, (elems, m)) in parts.iter().enumerate() {
            if elems.len() != m.ground_size() {
                return Err(Error::LengthMismatch {
                    expected: m.ground_size(),
                    got: elems.len(),
                });
            }
            for (i, &e) in elems.iter().enumerate() {
                if e >= n || place[e].is_some() {
                    return Err(Error::invalid("direct sum parts must be disjoint and in range"));
                }
                place[e] = Some((j, i));
            }
        }
        Ok(DirectSum { n, parts, place })
    }

    /// Parts laid out one after another.
    pub fn concat(ms: Vec<MatroidRef>) -> Self {
        let mut next = 0;
        let parts: Vec<_> = ms
            .into_iter()
            .map(|m| {
                let elems = (next..next + m.ground_size()).collect();
                next += m.ground_size();
                (elems, m)
            })
            .collect();
        DirectSum::new(next, parts).expect("consecutive parts are disjoint")
    }
}

impl Matroid for DirectSum {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn is_independent(&self, set: &[usize]) -> bool {
        let mut local = vec![vec![]; self.parts.len()];
        for &e in set {
            match self.place[e] {
                None => return false,
                Some((j, i)) => local[j].push(i),
            }
        }
        self.parts
            .iter()
            .zip(&local)
            .all(|((_, m), l)| l.is_empty() || m.is_independent(l))
    }
}

/// Every element replaced by `k` parallel copies; copy `c` of `s` is `c·n + s`.
#[derive(Clone, Debug)]
pub struct ParallelCopies {
    inner: MatroidRef,
    k: usize,
}

impl ParallelCopies {
    pub fn new(inner: MatroidRef, k: usize) -> Self {
        ParallelCopies { inner, k }
    }
}

impl Matroid for ParallelCopies {
    fn ground_size(&self) -> usize {
        self.inner.ground_size() * self.k
    }

    fn is_independent(&self, set: &[usize]) -> bool {
        let n = self.inner.ground_size();
        let mut orig: Vec<usize> = set.iter().map(|&e| e % n).collect();
        orig.sort_unstable();
        let len = orig.len();
        orig.dedup();
        orig.len() == len && self.inner.is_independent(&orig)
    }
}

/// Union of `k` copies of a matroid: sets that split into `k` independent sets.
#[derive(Clone, Debug)]
pub struct KFoldUnion {
    inner: MatroidRef,
    k: usize,
}

impl KFoldUnion {
    pub fn new(inner: MatroidRef, k: usize) -> Self {
        KFoldUnion { inner, k }
    }
}

impl Matroid for KFoldUnion {
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    fn is_independent(&self, set: &[usize]) -> bool {
        let ms = vec![self.inner.clone(); self.k];
        let mut cap = vec![0; self.ground_size()];
        for &e in set {
            cap[e] += 1;
        }
        split_into_independent(&ms, &cap).is_some_and(|parts| parts.iter().map(Vec::len).sum::<usize>() == set.len())
    }
}

/// Contraction of `contract` followed by deletion of `delete`.
#[derive(Clone, Debug)]
pub struct Minor {
    inner: MatroidRef,
    contract_basis: Vec<usize>,
    deleted: Vec<bool>,
}

impl Minor {
    pub fn new(inner: MatroidRef, contract: &[usize], delete: &[usize]) -> Self {
        let contract_basis = greedy_basis(inner.as_ref(), contract);
        let mut deleted = vec![false; inner.ground_size()];
        for &e in contract.iter().chain(delete) {
            deleted[e] = true;
        }
        Minor {
            inner,
            contract_basis,
            deleted,
        }
    }
}

impl Matroid for Minor {
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    fn is_independent(&self, set: &[usize]) -> bool {
        if set.iter().any(|&e| self.deleted[e]) {
            return false;
        }
        let mut all = self.contract_basis.clone();
        all.extend_from_slice(set);
        self.inner.is_independent(&all)
    }
}

/// The matroid restricted to the listed elements, renumbered `0..len`.
#[derive(Clone, Debug)]
pub struct Restriction {
    inner: MatroidRef,
    elems: Vec<usize>,
}

impl Restriction {
    pub fn new(inner: MatroidRef, elems: Vec<usize>) -> Self {
        Restriction { inner, elems }
    }
}

impl Matroid for Restriction {
    fn ground_size(&self) -> usize {
        self.elems.len()
    }

    fn is_independent(&self, set: &[usize]) -> bool {
        let mapped: Vec<usize> = set.iter().map(|&i| self.elems[i]).collect();
        self.inner.is_independent(&mapped)
    }
}

/// Dual matroid: `I` is independent when `S − I` spans.
#[derive(Clone, Debug)]
pub struct Dual {
    inner: MatroidRef,
    full_rank: usize,
}

impl Dual {
    pub fn new(inner: MatroidRef) -> Self {
        let full_rank = rank(inner.as_ref());
        Dual { inner, full_rank }
    }
}

impl Matroid for Dual {
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    fn is_independent(&self, set: &[usize]) -> bool {
        let mut inside = vec![false; self.ground_size()];
        for &e in set {
            inside[e] = true;
        }
        let rest: Vec<usize> = (0..self.ground_size()).filter(|&e| !inside[e]).collect();
        rank_of(self.inner.as_ref(), &rest) == self.full_rank
    }
}

/// Matroid description as read from JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum MatroidSpec {
    Graphic { nodes: usize, edges: Vec<(usize, usize)> },
    Uniform { n: usize, rank: usize },
    Partition { n: usize, blocks: Vec<Vec<usize>>, caps: Vec<usize> },
    Bases { n: usize, bases: Vec<Vec<usize>> },
}

impl MatroidSpec {
    pub fn build(&self) -> Result<MatroidRef> {
        Ok(match self {
            MatroidSpec::Graphic { nodes, edges } => Arc::new(Graphic::new(*nodes, edges.clone())?),
            MatroidSpec::Uniform { n, rank } => {
                if rank > n {
                    return Err(Error::invalid("uniform rank exceeds ground size"));
                }
                Arc::new(Uniform { n: *n, r: *rank })
            }
            MatroidSpec::Partition { n, blocks, caps } => Arc::new(Partition::new(*n, blocks, caps.clone())?),
            MatroidSpec::Bases { n, bases } => Arc::new(ExplicitBases::new(*n, bases)?),
        })
    }
}

/// Maximum common independent set, by shortest augmenting paths in the
/// exchange graph.
pub fn matroid_intersection(m1: &dyn Matroid, m2: &dyn Matroid) -> Result<Vec<usize>> {
    let n = m1.ground_size();
    if m2.ground_size() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: m2.ground_size(),
        });
    }
    let mut inside = vec![false; n];
    loop {
        let current: Vec<usize> = (0..n).filter(|&e| inside[e]).collect();
        let outside: Vec<usize> = (0..n).filter(|&e| !inside[e]).collect();
        let with = |x: usize| {
            let mut s = current.clone();
            s.push(x);
            s
        };
        let swap = |y: usize, x: usize| {
            let mut s: Vec<usize> = current.iter().copied().filter(|&e| e != y).collect();
            s.push(x);
            s
        };
        let sources: Vec<bool> = (0..n).map(|x| !inside[x] && m1.is_independent(&with(x))).collect();
        let sinks: Vec<bool> = (0..n).map(|x| !inside[x] && m2.is_independent(&with(x))).collect();
        // Arcs y → x when I − y + x ∈ I1, x → y when I − y + x ∈ I2.
        let mut out: Vec<Vec<usize>> = vec![vec![]; n];
        for &y in &current {
            for &x in &outside {
                let s = swap(y, x);
                if m1.is_independent(&s) {
                    out[y].push(x);
                }
                if m2.is_independent(&s) {
                    out[x].push(y);
                }
            }
        }
        let mut pred: Vec<Option<usize>> = vec![None; n];
        let mut seen = sources.clone();
        let mut queue: VecDeque<usize> = (0..n).filter(|&x| sources[x]).collect();
        let mut end = None;
        while let Some(v) = queue.pop_front() {
            if sinks[v] {
                end = Some(v);
                break;
            }
            for &w in &out[v] {
                if !seen[w] {
                    seen[w] = true;
                    pred[w] = Some(v);
                    queue.push_back(w);
                }
            }
        }
        let Some(mut v) = end else {
            return Ok(current);
        };
        loop {
            inside[v] = !inside[v];
            match pred[v] {
                Some(p) => v = p,
                None => break,
            }
        }
    }
}

/// Basis of least total cost, ties broken by element index.
pub fn min_cost_basis(m: &dyn Matroid, cost: &[i64]) -> Result<Vec<usize>> {
    if cost.len() != m.ground_size() {
        return Err(Error::LengthMismatch {
            expected: m.ground_size(),
            got: cost.len(),
        });
    }
    let mut order: Vec<usize> = (0..cost.len()).collect();
    order.sort_by_key(|&e| (cost[e], e));
    let mut b = greedy_basis(m, &order);
    b.sort_unstable();
    Ok(b)
}

/// One independent set per matroid, with element `s` used `cap[s]` times in
/// total, of largest total size. Element `s` of matroid `j` is copy `j·n + s`
/// in the underlying intersection.
fn split_into_independent(ms: &[MatroidRef], cap: &[usize]) -> Option<Vec<Vec<usize>>> {
    let n = cap.len();
    let k = ms.len();
    let sum = DirectSum::concat(ms.to_vec());
    let blocks: Vec<Vec<usize>> = (0..n).map(|s| (0..k).map(|j| j * n + s).collect()).collect();
    let part = Partition::new(n * k, &blocks, cap.to_vec()).ok()?;
    let common = matroid_intersection(&sum, &part).ok()?;
    let mut parts = vec![vec![]; k];
    for e in common {
        parts[e / n].push(e % n);
    }
    Some(parts)
}

fn check_common_ground(ms: &[MatroidRef]) -> Result<usize> {
    let n = ms.first().ok_or_else(|| Error::invalid("need at least one matroid"))?.ground_size();
    if let Some(m) = ms.iter().find(|m| m.ground_size() != n) {
        return Err(Error::LengthMismatch {
            expected: n,
            got: m.ground_size(),
        });
    }
    Ok(n)
}

/// Sums `Σ χ_{B_j}` over bases `B_j` of matroids on a common ground set; a
/// vector is a member iff the copies of the matroids have a common basis with
/// the partition matroid that takes `m(s)` copies of every `s`.
#[derive(Clone, Debug)]
pub struct BasisSumOracle {
    ms: Vec<MatroidRef>,
    ranks: Vec<usize>,
    n: usize,
}

impl BasisSumOracle {
    pub fn new(ms: Vec<MatroidRef>) -> Result<Self> {
        let n = check_common_ground(&ms)?;
        let ranks = ms.iter().map(|m| rank(m.as_ref())).collect();
        Ok(BasisSumOracle { ms, ranks, n })
    }

    /// Bases realizing `m`, if it is a member.
    pub fn realize(&self, m: &[i64]) -> Option<Vec<Vec<usize>>> {
        if m.len() != self.n || m.iter().any(|&x| x < 0 || x > self.ms.len() as i64) {
            return None;
        }
        let total: usize = self.ranks.iter().sum();
        if m.iter().sum::<i64>() != total as i64 {
            return None;
        }
        let cap: Vec<usize> = m.iter().map(|&x| x as usize).collect();
        let parts = split_into_independent(&self.ms, &cap)?;
        let ok = parts.iter().zip(&self.ranks).all(|(p, &r)| p.len() == r);
        ok.then_some(parts)
    }
}

impl MembershipOracle for BasisSumOracle {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn contains(&self, m: &[i64]) -> bool {
        self.realize(m).is_some()
    }

    fn initial_member(&self) -> Option<IntVec> {
        let all: Vec<usize> = (0..self.n).collect();
        let mut m = vec![0; self.n];
        for mat in &self.ms {
            for e in greedy_basis(mat.as_ref(), &all) {
                m[e] += 1;
            }
        }
        Some(m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisSum {
    pub bases: Vec<Vec<usize>>,
    pub sum: IntVec,
}

/// A basis of each matroid with dec-min sum vector, optionally with per-element
/// bounds on the number of bases containing it.
pub fn decmin_basis_sum(ms: &[MatroidRef], bounds: Option<(Vec<i64>, Vec<i64>)>) -> Result<BasisSum> {
    let oracle = Arc::new(BasisSumOracle::new(ms.to_vec())?);
    let mut handle = BaseHandle::from_membership(oracle.clone());
    if let Some((lo, hi)) = bounds {
        handle = handle.with_box(Some(lo), Some(hi))?;
    }
    let sum = decmin(&handle)?;
    let mut bases = oracle.realize(&sum).ok_or(Error::Empty)?;
    for b in &mut bases {
        b.sort_unstable();
    }
    Ok(BasisSum { bases, sum })
}

/// Intersection vectors `(|Z ∩ T_1|, …, |Z ∩ T_n|)` of the bases `Z` of a
/// matroid, for a partition `T_1, …, T_n` of its ground set.
#[derive(Clone, Debug)]
pub struct AggregateOracle {
    m: MatroidRef,
    blocks: Vec<Vec<usize>>,
    rank: usize,
}

impl AggregateOracle {
    pub fn new(m: MatroidRef, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; m.ground_size()];
        for &e in blocks.iter().flatten() {
            if e >= seen.len() || seen[e] {
                return Err(Error::invalid("blocks must partition the ground set"));
            }
            seen[e] = true;
        }
        if seen.iter().any(|&s| !s) || blocks.iter().any(Vec::is_empty) {
            return Err(Error::invalid("blocks must partition the ground set"));
        }
        let rank = rank(m.as_ref());
        Ok(AggregateOracle { m, blocks, rank })
    }

    /// A basis with intersection vector `y`, if one exists.
    pub fn realize(&self, y: &[i64]) -> Option<Vec<usize>> {
        if y.len() != self.blocks.len() || y.iter().any(|&v| v < 0) {
            return None;
        }
        if y.iter().sum::<i64>() != self.rank as i64 {
            return None;
        }
        let caps = y.iter().map(|&v| v as usize).collect();
        let part = Partition::new(self.m.ground_size(), &self.blocks, caps).ok()?;
        let mut z = matroid_intersection(self.m.as_ref(), &part).ok()?;
        z.sort_unstable();
        (z.len() == self.rank).then_some(z)
    }

    pub fn intersection_vector(&self, z: &[usize]) -> IntVec {
        self.blocks
            .iter()
            .map(|b| b.iter().filter(|e| z.contains(e)).count() as i64)
            .collect()
    }
}

impl MembershipOracle for AggregateOracle {
    fn ground_size(&self) -> usize {
        self.blocks.len()
    }

    fn contains(&self, y: &[i64]) -> bool {
        self.realize(y).is_some()
    }

    fn initial_member(&self) -> Option<IntVec> {
        let all: Vec<usize> = (0..self.m.ground_size()).collect();
        Some(self.intersection_vector(&greedy_basis(self.m.as_ref(), &all)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionBasis {
    pub basis: Vec<usize>,
    pub vector: IntVec,
}

/// Basis whose intersection vector with the partition is dec-min.
pub fn decmin_partition_intersection(m: MatroidRef, blocks: Vec<Vec<usize>>) -> Result<PartitionBasis> {
    let oracle = Arc::new(AggregateOracle::new(m, blocks)?);
    let vector = decmin(&BaseHandle::from_membership(oracle.clone()))?;
    let basis = oracle.realize(&vector).ok_or(Error::Empty)?;
    Ok(PartitionBasis { basis, vector })
}

/// Bases of the matroid of block `i` of a decomposition, as a matroid on the
/// block's elements in increasing order.
pub fn block_matroid(d: &CanonicalDecomposition, b: &BaseHandle, i: usize) -> Result<ExplicitBases> {
    let block = d.block(i);
    b.ceiling().check_subsets(block.len())?;
    let elems = block.to_vec();
    let mut bases = vec![];
    for l in block.subsets().filter(|l| l.len() == d.r[i]) {
        if block_matroid_base_test(d, b, i, l)? {
            bases.push(l.iter().map(|s| elems.binary_search(&s).unwrap()).collect());
        }
    }
    ExplicitBases::new(elems.len(), &bases)
}

/// Direct sum of the block matroids: the dec-min members are exactly
/// `Δ* + χ_L` for its bases `L`.
pub fn decomposition_matroid(d: &CanonicalDecomposition, b: &BaseHandle) -> Result<DirectSum> {
    let parts = (0..d.len())
        .map(|i| Ok((d.block(i).to_vec(), Arc::new(block_matroid(d, b, i)?) as MatroidRef)))
        .collect::<Result<Vec<_>>>()?;
    DirectSum::new(b.len(), parts)
}

/// Orientation whose in-degree and out-degree vectors are both dec-min, if
/// one exists.
///
/// Dec-min in-degree vectors are `Δ* + χ_L` for bases `L` of the decomposition
/// matroid. Out-degree vectors range over the same set, so `d_G − m` must be of
/// that form too.
pub fn inout_decmin_orientation(g: &Graph) -> Result<Option<Orientation>> {
    let n = g.n;
    let o = decmin_orientation(g)?;
    let d = orientation_canonical(g, &o, &Bounds::free(n))?;
    let handle = BaseHandle::new(Arc::new(g.induced_function()?))?;
    let mstar: MatroidRef = Arc::new(decomposition_matroid(&d, &handle)?);
    let deg = g.degrees();
    let low = &d.delta_star;
    // m = low + χ_L and deg − m = low + χ_L' for bases L, L'. Elements with
    // deg − 2·low = 2 lie in both, those with 0 in neither, and the rest split:
    // on them L and L' are complementary bases of the minor.
    let mut must_in = vec![];
    let mut must_out = vec![];
    let mut free = vec![];
    for s in 0..n {
        match deg[s] - 2 * low[s] {
            1 => free.push(s),
            2 => must_in.push(s),
            0 => must_out.push(s),
            _ => return Ok(None),
        }
    }
    let minor: MatroidRef = Arc::new(Restriction::new(Arc::new(Minor::new(mstar.clone(), &must_in, &must_out)), free.clone()));
    let x = matroid_intersection(minor.as_ref(), &Dual::new(minor.clone()))?;
    let mut l = must_in.clone();
    l.extend(x.iter().map(|&i| free[i]));
    let l_set = Subset::from_elems(l.iter().copied());
    let mut l2 = must_in.clone();
    l2.extend(free.iter().copied().filter(|&s| !l_set.contains(s)));
    if !is_basis(mstar.as_ref(), &l) || !is_basis(mstar.as_ref(), &l2) {
        return Ok(None);
    }
    let m: Vec<i64> = (0..n).map(|s| low[s] + l_set.contains(s) as i64).collect();
    Ok(Some(orient_with_indegrees(g, &m)?))
}

/// Single-matroid `k`-basis problem by one min-cost basis computation of the
/// `k`-fold union of the parallel extension, with copy `c` of every element
/// costing `N^c` for `N` above the number of copies. Used as a cross-check.
pub fn levin_onn_decmin(m: MatroidRef, k: usize) -> Result<IntVec> {
    let n = m.ground_size();
    let copies = n * k;
    let big = copies as i64 + 1;
    let cost: Vec<i64> = (0..copies)
        .map(|e| {
            let c = (e / n) as u32;
            big.checked_pow(c).ok_or_else(|| Error::invalid("too many copies for exact costs"))
        })
        .collect::<Result<_>>()?;
    let union = KFoldUnion::new(Arc::new(ParallelCopies::new(m, k)), k);
    let basis = min_cost_basis(&union, &cost)?;
    let mut sum = vec![0; n];
    for e in basis {
        sum[e % n] += 1;
    }
    Ok(sum)
}

/// Every basis, by subset scan.
pub fn all_bases(m: &dyn Matroid) -> Result<Vec<Vec<usize>>> {
    let n = m.ground_size();
    if n > 20 {
        return Err(Error::CeilingExceeded {
            what: "matroid ground size for basis enumeration",
            actual: n as u64,
            limit: 20,
        });
    }
    let r = rank(m);
    Ok(Subset::all(n)
        .filter(|x| x.len() == r)
        .map(|x| x.to_vec())
        .filter(|x| m.is_independent(x))
        .collect())
}

/// Size of a largest common independent set, by subset scan.
pub fn brute_common_independent(m1: &dyn Matroid, m2: &dyn Matroid) -> Result<usize> {
    let n = m1.ground_size();
    if n > 20 {
        return Err(Error::CeilingExceeded {
            what: "matroid ground size for subset scan",
            actual: n as u64,
            limit: 20,
        });
    }
    Ok(Subset::all(n)
        .map(|x| x.to_vec())
        .filter(|x| m1.is_independent(x) && m2.is_independent(x))
        .map(|x| x.len())
        .max()
        .unwrap_or(0))
}

/// Canonical decomposition of the dec-min basis-sum problem.
pub fn basis_sum_canonical(ms: &[MatroidRef]) -> Result<CanonicalDecomposition> {
    let oracle = Arc::new(BasisSumOracle::new(ms.to_vec())?);
    canonical(&BaseHandle::from_membership(oracle))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::value_equivalent;

    /// The two rank-2 matroids on four elements whose common bases are
    /// {0,1} and {2,3}.
    fn pair() -> (MatroidRef, MatroidRef) {
        let m1 = ExplicitBases::new(4, &[vec![0, 1], vec![2, 3], vec![0, 2], vec![1, 3]]).unwrap();
        let m2 = ExplicitBases::new(4, &[vec![0, 1], vec![2, 3], vec![0, 3], vec![1, 2]]).unwrap();
        (Arc::new(m1), Arc::new(m2))
    }

    fn triangle() -> MatroidRef {
        Arc::new(Graphic::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap())
    }

    #[test]
    fn intersection_examples() {
        let (m1, m2) = pair();
        let common: Vec<_> = all_bases(m1.as_ref())
            .unwrap()
            .into_iter()
            .filter(|b| is_basis(m2.as_ref(), b))
            .collect();
        assert_eq!(common, vec![vec![0, 1], vec![2, 3]]);
        let mut i = matroid_intersection(m1.as_ref(), m2.as_ref()).unwrap();
        i.sort_unstable();
        assert!(common.contains(&i));
        let u = Uniform { n: 3, r: 2 };
        assert_eq!(matroid_intersection(&u, &u).unwrap().len(), 2);
        let p = Partition::new(3, &[vec![0], vec![1, 2]], vec![1, 1]).unwrap();
        assert_eq!(matroid_intersection(triangle().as_ref(), &p).unwrap().len(), 2);
    }

    #[test]
    fn min_cost_examples() {
        assert_eq!(min_cost_basis(&Uniform { n: 2, r: 1 }, &[2, 1]).unwrap(), vec![1]);
        assert_eq!(min_cost_basis(triangle().as_ref(), &[1, 2, 3]).unwrap(), vec![0, 1]);
        let (m1, _) = pair();
        assert_eq!(min_cost_basis(m1.as_ref(), &[0, 0, 1, 1]).unwrap(), vec![0, 1]);
    }

    #[test]
    fn basis_sum_examples() {
        let u: MatroidRef = Arc::new(Uniform { n: 2, r: 1 });
        assert_eq!(decmin_basis_sum(&[u.clone(), u], None).unwrap().sum, vec![1, 1]);
        let (m1, m2) = pair();
        let r = decmin_basis_sum(&[m1.clone(), m2.clone()], None).unwrap();
        assert!(value_equivalent(&r.sum, &[1, 1, 1, 1]));
        assert!(is_basis(m1.as_ref(), &r.bases[0]) && is_basis(m2.as_ref(), &r.bases[1]));
        let t = triangle();
        let r = decmin_basis_sum(&[t.clone(), t.clone(), t], None).unwrap();
        assert_eq!(r.sum, vec![2, 2, 2]);
    }

    #[test]
    fn partition_intersection_examples() {
        let singletons = vec![vec![0], vec![1], vec![2]];
        let r = decmin_partition_intersection(triangle(), singletons).unwrap();
        assert!(value_equivalent(&r.vector, &[1, 1, 0]));
        let path: MatroidRef = Arc::new(Graphic::new(4, vec![(0, 1), (1, 2), (2, 3)]).unwrap());
        let r = decmin_partition_intersection(path, vec![vec![0, 1], vec![2]]).unwrap();
        assert_eq!(r.vector, vec![2, 1]);
        let u: MatroidRef = Arc::new(Uniform { n: 4, r: 2 });
        let r = decmin_partition_intersection(u, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(r.vector, vec![1, 1]);
    }

    #[test]
    fn inout_examples() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let o = inout_decmin_orientation(&c4).unwrap().unwrap();
        assert_eq!(o.indeg(&c4), vec![1; 4]);
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let o = inout_decmin_orientation(&path).unwrap().unwrap();
        let indeg = o.indeg(&path);
        let outdeg: Vec<i64> = path.degrees().iter().zip(&indeg).map(|(d, i)| d - i).collect();
        assert!(value_equivalent(&indeg, &[1, 1, 0]) && value_equivalent(&outdeg, &[1, 1, 0]));
        let tri = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(inout_decmin_orientation(&tri).unwrap().unwrap().indeg(&tri), vec![1; 3]);
    }

    #[test]
    fn levin_onn_agrees_on_single_matroid() {
        let t = triangle();
        assert_eq!(levin_onn_decmin(t, 3).unwrap(), vec![2, 2, 2]);
        let u: MatroidRef = Arc::new(Uniform { n: 3, r: 1 });
        assert!(value_equivalent(&levin_onn_decmin(u, 2).unwrap(), &[1, 1, 0]));
    }

    #[test]
    fn matroid_spec_json() {
        let s: MatroidSpec = serde_json::from_str(r#"{"type":"uniform","n":3,"rank":2}"#).unwrap();
        assert_eq!(rank(s.build().unwrap().as_ref()), 2);
        let s: MatroidSpec =
            serde_json::from_str(r#"{"type":"graphic","nodes":3,"edges":[[0,1],[1,2],[2,0]]}"#).unwrap();
        assert_eq!(rank(s.build().unwrap().as_ref()), 2);
        assert!(ExplicitBases::new(3, &[vec![0, 1], vec![2]]).is_err());
    }
}
