//! M-convex sets given by an oracle: membership, exchange, tight sets and
//! exhaustive enumeration.

use std::fmt::Debug;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::setfn::{Boxed, Oracle, SetFunction, NO_LOWER, NO_UPPER};
use crate::subset::Subset;
use crate::vector::IntVec;

/// Limits for exhaustive routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ceiling {
    /// Largest ground set scanned subset by subset.
    pub max_subset_n: usize,
    /// Largest number of lattice points scanned.
    pub max_box_volume: u64,
}

impl Default for Ceiling {
    fn default() -> Self {
        Ceiling {
            max_subset_n: 20,
            max_box_volume: 1_000_000,
        }
    }
}

impl Ceiling {
    /// Reads `DECMIN_BRUTE_CEILING` as `n` or `n,volume`; defaults otherwise.
    pub fn from_env() -> Result<Self> {
        match std::env::var("DECMIN_BRUTE_CEILING") {
            Ok(s) => Self::parse(&s),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut c = Self::default();
        let mut parts = s.split(',').map(str::trim);
        let bad = || Error::Parse(format!("bad ceiling {s:?}"));
        if let Some(n) = parts.next() {
            c.max_subset_n = n.parse().map_err(|_| bad())?;
        }
        if let Some(v) = parts.next() {
            c.max_box_volume = v.parse().map_err(|_| bad())?;
        }
        if parts.next().is_some() || c.max_subset_n > 30 {
            return Err(bad());
        }
        Ok(c)
    }

    pub fn check_subsets(&self, n: usize) -> Result<()> {
        if n > self.max_subset_n {
            return Err(Error::CeilingExceeded {
                what: "ground set size",
                actual: n as u64,
                limit: self.max_subset_n as u64,
            });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Modularity {
    Full,
    Intersecting,
    Crossing,
}

/// Problem-specific membership routine for sets without a usable set function.
pub trait MembershipOracle: Send + Sync + Debug {
    fn ground_size(&self) -> usize;

    fn contains(&self, m: &[i64]) -> bool;

    /// Whether `m + χ_s − χ_t` is a member, given that `m` is.
    fn exchange_feasible(&self, m: &[i64], s: usize, t: usize) -> bool {
        let mut m2 = m.to_vec();
        m2[s] += 1;
        m2[t] -= 1;
        self.contains(&m2)
    }

    /// Some member, if the routine can build one directly.
    fn initial_member(&self) -> Option<IntVec> {
        None
    }
}

#[derive(Clone, Debug)]
enum Source {
    Function(Oracle),
    Membership(Arc<dyn MembershipOracle>),
}

/// An M-convex set: `B'(p)` or a registered membership routine, optionally cut by
/// the box `T(f, g)`.
#[derive(Clone, Debug)]
pub struct BaseHandle {
    n: usize,
    source: Source,
    modularity: Modularity,
    lower: Option<Vec<i64>>,
    upper: Option<Vec<i64>>,
    ceiling: Ceiling,
}

/// Points of an M-convex set listed explicitly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumeratedSet {
    pub points: Vec<IntVec>,
}

impl BaseHandle {
    /// `B'(p)` for a fully supermodular `p`.
    pub fn new(p: Oracle) -> Result<Self> {
        Self::with_modularity(p, Modularity::Full)
    }

    pub fn with_modularity(p: Oracle, modularity: Modularity) -> Result<Self> {
        let n = p.ground_size();
        if n == 0 {
            return Err(Error::invalid("empty ground set"));
        }
        if p.eval(Subset::EMPTY) != Some(0) {
            return Err(Error::invalid("p(∅) must be 0"));
        }
        if p.eval(Subset::full(n)).is_none() {
            return Err(Error::invalid("p(S) must be finite"));
        }
        Ok(BaseHandle {
            n,
            source: Source::Function(p),
            modularity,
            lower: None,
            upper: None,
            ceiling: Ceiling::default(),
        })
    }

    pub fn from_membership(oracle: Arc<dyn MembershipOracle>) -> Self {
        BaseHandle {
            n: oracle.ground_size(),
            source: Source::Membership(oracle),
            modularity: Modularity::Crossing,
            lower: None,
            upper: None,
            ceiling: Ceiling::default(),
        }
    }

    pub fn with_box(mut self, lower: Option<Vec<i64>>, upper: Option<Vec<i64>>) -> Result<Self> {
        for v in [&lower, &upper].into_iter().flatten() {
            if v.len() != self.n {
                return Err(Error::LengthMismatch {
                    expected: self.n,
                    got: v.len(),
                });
            }
        }
        if let (Some(f), Some(g)) = (&lower, &upper) {
            if f.iter().zip(g).any(|(a, b)| a > b) {
                return Err(Error::invalid("box lower bound exceeds upper bound"));
            }
        }
        self.lower = lower;
        self.upper = upper;
        Ok(self)
    }

    pub fn with_ceiling(mut self, ceiling: Ceiling) -> Self {
        self.ceiling = ceiling;
        self
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn ceiling(&self) -> Ceiling {
        self.ceiling
    }

    pub fn modularity(&self) -> Modularity {
        self.modularity
    }

    pub fn has_box(&self) -> bool {
        self.lower.is_some() || self.upper.is_some()
    }

    pub fn lower(&self, v: usize) -> i64 {
        self.lower.as_ref().map_or(NO_LOWER, |f| f[v])
    }

    pub fn upper(&self, v: usize) -> i64 {
        self.upper.as_ref().map_or(NO_UPPER, |g| g[v])
    }

    pub fn lower_vec(&self) -> Vec<i64> {
        (0..self.n).map(|v| self.lower(v)).collect()
    }

    pub fn upper_vec(&self) -> Vec<i64> {
        (0..self.n).map(|v| self.upper(v)).collect()
    }

    /// The defining set function, without the box.
    pub fn function(&self) -> Option<&Oracle> {
        match &self.source {
            Source::Function(p) => Some(p),
            Source::Membership(_) => None,
        }
    }

    /// The fully supermodular function of the whole set, box included. Only
    /// available for fully supermodular sources.
    pub fn effective_function(&self) -> Option<Oracle> {
        let p = self.function()?.clone();
        if self.modularity != Modularity::Full {
            return None;
        }
        if !self.has_box() {
            return Some(p);
        }
        Some(Arc::new(Boxed::new(p, self.lower_vec(), self.upper_vec()).ok()?))
    }

    /// Same set with the box dropped.
    pub fn without_box(&self) -> BaseHandle {
        BaseHandle {
            lower: None,
            upper: None,
            ..self.clone()
        }
    }

    fn scan_allowed(&self, p: &Oracle) -> bool {
        p.has_fast_maximize() || self.n <= self.ceiling.max_subset_n
    }

    fn require_scan(&self, p: &Oracle) -> Result<()> {
        if self.scan_allowed(p) {
            Ok(())
        } else {
            self.ceiling.check_subsets(self.n)
        }
    }

    pub fn in_box(&self, m: &[i64]) -> bool {
        (0..self.n).all(|v| self.lower(v) <= m[v] && m[v] <= self.upper(v))
    }

    /// Value of `p` on the whole ground set when known.
    pub fn total(&self) -> Option<i64> {
        self.function().and_then(|p| p.eval(Subset::full(self.n)))
    }

    fn check_len(&self, m: &[i64]) -> Result<()> {
        if m.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: m.len(),
            });
        }
        Ok(())
    }

    /// Membership in the set without the box.
    fn base_contains(&self, m: &[i64]) -> Result<bool> {
        match &self.source {
            Source::Membership(o) => Ok(o.contains(m)),
            Source::Function(p) => {
                self.require_scan(p)?;
                let full = Subset::full(self.n);
                if p.eval(full) != Some(full.sum(m)) {
                    return Ok(false);
                }
                Ok(p
                    .maximize_shifted(m, Subset::EMPTY, full)
                    .is_none_or(|r| r.value <= 0))
            }
        }
    }

    pub fn is_member(&self, m: &[i64]) -> Result<bool> {
        self.check_len(m)?;
        Ok(self.in_box(m) && self.base_contains(m)?)
    }

    /// Whether `m + χ_s − χ_t` stays in the set, for a member `m`.
    pub fn exchange_feasible(&self, m: &[i64], s: usize, t: usize) -> Result<bool> {
        self.check_len(m)?;
        if s == t {
            return Ok(true);
        }
        if m[s] >= self.upper(s) || m[t] <= self.lower(t) {
            return Ok(false);
        }
        match &self.source {
            Source::Membership(o) => Ok(o.exchange_feasible(m, s, t)),
            Source::Function(p) => {
                self.require_scan(p)?;
                let full = Subset::full(self.n);
                // Feasible iff no m-tight set contains t but not s.
                Ok(p
                    .maximize_shifted(m, Subset::singleton(t), full.without(s))
                    .is_none_or(|r| r.value < 0))
            }
        }
    }

    /// Smallest m-tight set containing `t`, as `{t} ∪ {s : m + χ_s − χ_t ∈ B}`.
    /// With a box: `{t}` when `m(t)` sits at its lower bound, otherwise the
    /// unboxed tight set minus the elements at their upper bound (`t` kept).
    pub fn smallest_tight_set(&self, m: &[i64], t: usize) -> Result<Subset> {
        self.check_len(m)?;
        if m[t] <= self.lower(t) {
            return Ok(Subset::singleton(t));
        }
        let unboxed = match (&self.source, self.modularity) {
            (Source::Function(p), Modularity::Full | Modularity::Intersecting) => {
                self.require_scan(p)?;
                let r = p
                    .maximize_shifted(m, Subset::singleton(t), Subset::full(self.n))
                    .ok_or_else(|| Error::invalid("no finite set contains t"))?;
                if r.value != 0 {
                    return Err(Error::invalid("vector is not a member"));
                }
                r.set
            }
            _ => {
                let plain = self.without_box();
                let mut set = Subset::singleton(t);
                for s in 0..self.n {
                    if s != t && plain.exchange_feasible(m, s, t)? {
                        set.insert(s);
                    }
                }
                set
            }
        };
        let mut set = unboxed;
        for s in unboxed.iter() {
            if s != t && m[s] >= self.upper(s) {
                set.remove(s);
            }
        }
        Ok(set)
    }

    /// A set is m-tight iff it contains the smallest tight set of each of its
    /// elements.
    pub fn is_tight(&self, m: &[i64], x: Subset) -> Result<bool> {
        for t in x.iter() {
            if !self.smallest_tight_set(m, t)?.is_subset_of(x) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Some member of the set.
    pub fn initial_member(&self) -> Result<IntVec> {
        if let Source::Membership(o) = &self.source {
            if let Some(m) = o.initial_member().filter(|m| self.in_box(m)) {
                return Ok(m);
            }
        }
        if let Some(q) = self.effective_function() {
            return greedy_chain_member(q.as_ref(), &(0..self.n).collect::<Vec<_>>());
        }
        let search = self.search_box()?;
        let found = self.scan_points(&search, true)?;
        found.points.into_iter().next().ok_or(Error::Empty)
    }

    /// Bounds containing every member: the box where given, otherwise `p({s})`
    /// from below and `p(S) − p(S − s)` from above.
    pub fn search_box(&self) -> Result<(Vec<i64>, Vec<i64>)> {
        let mut lo = self.lower_vec();
        let mut hi = self.upper_vec();
        if let Some(q) = self.effective_function() {
            let full = Subset::full(self.n);
            let total = q.eval(full).ok_or(Error::Empty)?;
            for v in 0..self.n {
                if let Some(a) = q.eval(Subset::singleton(v)) {
                    lo[v] = lo[v].max(a);
                }
                if let Some(b) = q.eval(full.without(v)) {
                    hi[v] = hi[v].min(total - b);
                }
            }
        } else if let (Some(p), Some(total)) = (self.function(), self.total()) {
            // Lower bounds from singletons hold for any p. Upper bounds follow
            // from the lower bounds of the other elements.
            for v in 0..self.n {
                if let Some(a) = p.eval(Subset::singleton(v)) {
                    lo[v] = lo[v].max(a);
                }
            }
            if lo.iter().all(|&x| x != NO_LOWER) {
                let sum_lo: i64 = lo.iter().sum();
                for v in 0..self.n {
                    hi[v] = hi[v].min(total - (sum_lo - lo[v]));
                }
            }
        }
        if lo.contains(&NO_LOWER) || hi.contains(&NO_UPPER) {
            return Err(Error::invalid(
                "cannot bound the set for enumeration; supply a search box",
            ));
        }
        Ok((lo, hi))
    }

    fn scan_points(&self, search: &(Vec<i64>, Vec<i64>), first_only: bool) -> Result<EnumeratedSet> {
        let (lo, hi) = search;
        if lo.len() != self.n || hi.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: lo.len(),
            });
        }
        let mut volume: u64 = 1;
        for v in 0..self.n {
            if hi[v] < lo[v] {
                return Ok(EnumeratedSet { points: vec![] });
            }
            volume = volume.saturating_mul((hi[v] - lo[v] + 1) as u64);
        }
        if volume > self.ceiling.max_box_volume {
            return Err(Error::CeilingExceeded {
                what: "search box volume",
                actual: volume,
                limit: self.ceiling.max_box_volume,
            });
        }
        let target = self.total();
        let mut points = Vec::new();
        let mut cur = lo.clone();
        loop {
            let sum_ok = target.is_none_or(|t| cur.iter().sum::<i64>() == t);
            if sum_ok && self.is_member(&cur)? {
                points.push(cur.clone());
                if first_only {
                    break;
                }
            }
            let mut i = 0;
            while i < self.n {
                if cur[i] < hi[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = lo[i];
                i += 1;
            }
            if i == self.n {
                break;
            }
        }
        Ok(EnumeratedSet { points })
    }

    /// Every member inside `search`, in lexicographic order of the reversed
    /// coordinates.
    pub fn enumerate(&self, search: &(Vec<i64>, Vec<i64>)) -> Result<EnumeratedSet> {
        self.scan_points(search, false)
    }

    /// Every member, inside the automatic search box.
    pub fn enumerate_all(&self) -> Result<EnumeratedSet> {
        let b = self.search_box()?;
        self.enumerate(&b)
    }

    /// Whether `B ∩ T(f, g)` is non-empty: `p ≤ g̃` and `f̃ ≤ p̄` on every subset.
    pub fn box_intersection_feasible(&self, f: &[i64], g: &[i64]) -> Result<bool> {
        let p = self
            .function()
            .ok_or_else(|| Error::invalid("box feasibility needs a set function"))?;
        self.ceiling.check_subsets(self.n)?;
        let full = Subset::full(self.n);
        let total = p.eval(full).ok_or(Error::Empty)?;
        for x in Subset::all(self.n) {
            if let Some(v) = p.eval(x) {
                if x.iter().any(|i| g[i] == NO_UPPER) {
                    continue;
                }
                if v > x.sum(g) {
                    return Ok(false);
                }
            }
            if let Some(rest) = p.eval(full.minus(x)) {
                if x.iter().any(|i| f[i] == NO_LOWER) {
                    continue;
                }
                if x.sum(f) > total - rest {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Greedy member along `order` for a fully supermodular `p`. Where the next
/// prefix has infinite value, the chain jumps to the smallest finite superset and
/// the increment goes to the new element that comes last in `order`; the skipped elements are
/// inseparable by finite sets, so any split of the increment is valid.
pub fn greedy_chain_member(p: &dyn SetFunction, order: &[usize]) -> Result<IntVec> {
    let n = p.ground_size();
    if order.len() != n || Subset::from_elems(order.iter().copied()) != Subset::full(n) {
        return Err(Error::invalid("order is not a permutation of the ground set"));
    }
    let mut m = vec![0; n];
    let mut z = Subset::EMPTY;
    let mut pz = 0;
    while z != Subset::full(n) {
        let remaining: Vec<usize> = order.iter().copied().filter(|&v| !z.contains(v)).collect();
        let mut step = None;
        for &v in &remaining {
            if let Some(val) = p.eval(z.with(v)) {
                step = Some((Subset::singleton(v), v, val));
                break;
            }
        }
        if step.is_none() {
            let rest = Subset::from_elems(remaining.iter().copied());
            let mut best: Option<(Subset, i64)> = None;
            for a in rest.subsets() {
                if a.is_empty() {
                    continue;
                }
                if let Some(val) = p.eval(z.union(a)) {
                    if best.is_none_or(|(b, _)| (a.len(), a.bits()) < (b.len(), b.bits())) {
                        best = Some((a, val));
                    }
                }
            }
            let (a, val) = best.ok_or(Error::Empty)?;
            let last = *remaining.iter().rev().find(|&&v| a.contains(v)).unwrap();
            step = Some((a, last, val));
        }
        let (a, v, val) = step.unwrap();
        m[v] = val - pz;
        z = z.union(a);
        pz = val;
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setfn::{graph_induced, ExplicitTable};

    /// The line `x(0) + x(1) = 1`.
    fn line() -> BaseHandle {
        let t = ExplicitTable::new(2, vec![Some(0), None, None, Some(1)]).unwrap();
        BaseHandle::new(Arc::new(t)).unwrap()
    }

    /// `{(1,0), (0,1)}`: the line cut by `p({s}) = 0`.
    fn segment() -> BaseHandle {
        let t = ExplicitTable::new(2, vec![Some(0), Some(0), Some(0), Some(1)]).unwrap();
        BaseHandle::new(Arc::new(t)).unwrap()
    }

    #[test]
    fn membership_examples() {
        let b = line();
        assert!(b.is_member(&[1, 0]).unwrap());
        assert!(b.is_member(&[2, -1]).unwrap());
        assert!(!b.is_member(&[1, 1]).unwrap());
        assert!(b.is_member(&[1]).is_err());
        assert!(!segment().is_member(&[2, -1]).unwrap());
    }

    #[test]
    fn exchange_examples() {
        assert!(segment().exchange_feasible(&[0, 1], 0, 1).unwrap());
        assert!(!segment().exchange_feasible(&[0, 1], 1, 0).unwrap());
        assert!(line().exchange_feasible(&[0, 1], 1, 0).unwrap());
        let boxed = line().with_box(Some(vec![0, 0]), None).unwrap();
        assert!(!boxed.exchange_feasible(&[0, 1], 1, 0).unwrap());
    }

    #[test]
    fn tight_set_examples() {
        let b = segment();
        assert_eq!(b.smallest_tight_set(&[0, 1], 1).unwrap(), Subset::from_elems([0, 1]));
        assert_eq!(b.smallest_tight_set(&[0, 1], 0).unwrap(), Subset::singleton(0));
        assert_eq!(line().smallest_tight_set(&[0, 1], 0).unwrap(), Subset::from_elems([0, 1]));
        let boxed = line().with_box(Some(vec![0, 0]), Some(vec![1, 1])).unwrap();
        assert_eq!(
            boxed.smallest_tight_set(&[0, 1], 1).unwrap(),
            Subset::from_elems([0, 1])
        );
        assert_eq!(boxed.smallest_tight_set(&[0, 1], 0).unwrap(), Subset::singleton(0));
    }

    #[test]
    fn enumeration_examples() {
        let b = line();
        let pts = b.enumerate(&(vec![-1, -1], vec![2, 2])).unwrap().points;
        let mut sorted = pts.clone();
        sorted.sort();
        assert_eq!(sorted, vec![vec![-1, 2], vec![0, 1], vec![1, 0], vec![2, -1]]);
    }

    #[test]
    fn box_feasibility_examples() {
        let b = line();
        assert!(segment().box_intersection_feasible(&[0, 0], &[1, 1]).unwrap());
        assert!(b.box_intersection_feasible(&[0, 0], &[1, 1]).unwrap());
        assert!(!b.box_intersection_feasible(&[1, 1], &[2, 2]).unwrap());
        assert!(!b.box_intersection_feasible(&[-5, -5], &[0, 0]).unwrap());
    }

    #[test]
    fn greedy_on_path() {
        let p = graph_induced(3, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        assert_eq!(greedy_chain_member(&p, &[0, 1, 2]).unwrap(), vec![0, 1, 1]);
    }

    #[test]
    fn greedy_jumps_over_infinite_prefixes() {
        // Only ∅, {0,1} and S are finite.
        let mut vals = vec![None; 8];
        vals[0] = Some(0);
        vals[3] = Some(2);
        vals[7] = Some(3);
        let t = ExplicitTable::new(3, vals).unwrap();
        let m = greedy_chain_member(&t, &[0, 1, 2]).unwrap();
        let b = BaseHandle::new(Arc::new(t)).unwrap();
        assert!(b.is_member(&m).unwrap());
    }

    #[test]
    fn ceiling_parsing() {
        assert_eq!(Ceiling::parse("12").unwrap().max_subset_n, 12);
        assert_eq!(Ceiling::parse("12, 500").unwrap().max_box_volume, 500);
        assert!(Ceiling::parse("x").is_err());
    }
}
