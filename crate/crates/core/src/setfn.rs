//! Set-function oracles and the wrappers that build new ones from old.
//!
//! Values are `Option<i64>`; `None` is the infinite value of the function's role
//! (−∞ for a supermodular function, +∞ for a submodular one).

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::netflow::Network;
use crate::subset::{Embedding, Subset, MAX_GROUND};

/// Shared handle to an oracle.
pub type Oracle = Arc<dyn SetFunction>;

/// Sentinels for missing box bounds.
pub const NO_LOWER: i64 = i64::MIN;
pub const NO_UPPER: i64 = i64::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OracleKind {
    ExplicitTable,
    GraphInduced,
    GraphCover,
    FlowInduced,
    Cut,
    Shifted,
    Restricted,
    Contracted,
    Complemented,
    RootVector,
    Boxed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Supermodular,
    Submodular,
}

/// Maximizer of `p(X) − w̃(X)` over an interval of subsets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShiftedMax {
    pub value: i64,
    /// Fewest elements among maximizers (ties broken by mask). For a fully
    /// supermodular `p` this is the unique smallest maximizer.
    pub set: Subset,
}

pub trait SetFunction: Send + Sync + Debug {
    fn ground_size(&self) -> usize;

    fn eval(&self, x: Subset) -> Option<i64>;

    fn kind(&self) -> OracleKind;

    fn role(&self) -> Role {
        Role::Supermodular
    }

    /// True when [`SetFunction::maximize_shifted`] avoids a subset scan.
    fn has_fast_maximize(&self) -> bool {
        false
    }

    /// Maximum of `p(X) − w̃(X)` over `must ⊆ X ⊆ allowed`, skipping infinite
    /// values. `None` when every candidate is infinite or the interval is empty.
    fn maximize_shifted(&self, w: &[i64], must: Subset, allowed: Subset) -> Option<ShiftedMax> {
        brute_maximize(self, w, must, allowed)
    }
}

/// Exhaustive version of [`SetFunction::maximize_shifted`].
pub fn brute_maximize<F: SetFunction + ?Sized>(
    p: &F,
    w: &[i64],
    must: Subset,
    allowed: Subset,
) -> Option<ShiftedMax> {
    if !must.is_subset_of(allowed) {
        return None;
    }
    let free = allowed.minus(must);
    let mut best: Option<ShiftedMax> = None;
    for sub in free.subsets() {
        let x = must.union(sub);
        let Some(v) = p.eval(x) else { continue };
        let v = v - x.sum(w);
        let better = match best {
            None => true,
            Some(b) => {
                v > b.value
                    || (v == b.value && (x.len(), x.bits()) < (b.set.len(), b.set.bits()))
            }
        };
        if better {
            best = Some(ShiftedMax { value: v, set: x });
        }
    }
    best
}

/// Values of `p` on all `2^n` subsets.
pub fn table_of(p: &dyn SetFunction) -> Vec<Option<i64>> {
    Subset::all(p.ground_size()).map(|x| p.eval(x)).collect()
}

// ---------------------------------------------------------------------------
// Explicit tables

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitTable {
    n: usize,
    values: Vec<Option<i64>>,
    kind: OracleKind,
}

impl ExplicitTable {
    /// `values[mask]` for every mask below `2^n`.
    pub fn new(n: usize, values: Vec<Option<i64>>) -> Result<Self> {
        if n == 0 || n >= 31 {
            return Err(Error::invalid(format!("table ground size {n} out of range")));
        }
        if values.len() != 1 << n {
            return Err(Error::LengthMismatch {
                expected: 1 << n,
                got: values.len(),
            });
        }
        if values[0] != Some(0) {
            return Err(Error::invalid("p(∅) must be 0"));
        }
        if values[(1 << n) - 1].is_none() {
            return Err(Error::invalid("p(S) must be finite"));
        }
        Ok(ExplicitTable {
            n,
            values,
            kind: OracleKind::ExplicitTable,
        })
    }

    pub fn from_fn(n: usize, f: impl Fn(Subset) -> Option<i64>) -> Result<Self> {
        Self::new(n, Subset::all(n).map(f).collect())
    }

    /// Snapshot of any oracle.
    pub fn materialize(p: &dyn SetFunction) -> Result<Self> {
        let mut t = Self::new(p.ground_size(), table_of(p))?;
        t.kind = p.kind();
        Ok(t)
    }

    pub fn values(&self) -> &[Option<i64>] {
        &self.values
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("missing integer field \"n\"".into()))? as usize;
        if n == 0 || n >= 31 {
            return Err(Error::Parse(format!("n = {n} out of range")));
        }
        let mut values = vec![None; 1 << n];
        values[0] = Some(0);
        let map = v
            .get("values")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("missing object field \"values\"".into()))?;
        for (key, val) in map {
            let mask: usize = key
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad bitmask key {key:?}")))?;
            if mask >= 1 << n {
                return Err(Error::Parse(format!("bitmask {mask} outside ground set")));
            }
            values[mask] = match val {
                Value::Number(num) => Some(
                    num.as_i64()
                        .ok_or_else(|| Error::Parse(format!("non-integer value at {mask}")))?,
                ),
                Value::String(s) if matches!(s.as_str(), "-inf" | "inf" | "+inf") => None,
                other => return Err(Error::Parse(format!("bad value {other} at {mask}"))),
            };
        }
        Self::new(n, values).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> Value {
        let inf = if self.role() == Role::Supermodular {
            "-inf"
        } else {
            "+inf"
        };
        let values: serde_json::Map<String, Value> = self
            .values
            .iter()
            .enumerate()
            .map(|(mask, v)| {
                let val = match v {
                    Some(x) => json!(x),
                    None => json!(inf),
                };
                (mask.to_string(), val)
            })
            .collect();
        json!({ "n": self.n, "values": values })
    }
}

impl SetFunction for ExplicitTable {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn eval(&self, x: Subset) -> Option<i64> {
        self.values[x.bits() as usize]
    }

    fn kind(&self) -> OracleKind {
        self.kind
    }
}

// ---------------------------------------------------------------------------
// Cut functions: p(X) = ã(X) − Σ c(uv) over arcs uv leaving X, with c ≥ 0.
// Negated cut functions are fully supermodular and maximize by one min-cut.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutFunction {
    n: usize,
    a: Vec<i64>,
    arcs: Vec<(usize, usize, i64)>,
    kind: OracleKind,
}

impl CutFunction {
    pub fn new(a: Vec<i64>, arcs: Vec<(usize, usize, i64)>) -> Result<Self> {
        let n = a.len();
        if n == 0 || n > MAX_GROUND {
            return Err(Error::invalid(format!("ground size {n} out of range")));
        }
        for &(u, v, c) in &arcs {
            if u >= n || v >= n {
                return Err(Error::invalid("arc endpoint out of range"));
            }
            if c < 0 {
                return Err(Error::invalid("negative cut weight"));
            }
        }
        Ok(CutFunction {
            n,
            a,
            arcs,
            kind: OracleKind::Cut,
        })
    }

    pub fn modular_part(&self) -> &[i64] {
        &self.a
    }
}

impl SetFunction for CutFunction {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn eval(&self, x: Subset) -> Option<i64> {
        let leaving: i64 = self
            .arcs
            .iter()
            .filter(|&&(u, v, _)| x.contains(u) && !x.contains(v))
            .map(|&(_, _, c)| c)
            .sum();
        Some(x.sum(&self.a) - leaving)
    }

    fn kind(&self) -> OracleKind {
        self.kind
    }

    fn has_fast_maximize(&self) -> bool {
        true
    }

    fn maximize_shifted(&self, w: &[i64], must: Subset, allowed: Subset) -> Option<ShiftedMax> {
        if !must.is_subset_of(allowed) {
            return None;
        }
        let n = self.n;
        let (src, snk) = (n, n + 1);
        let gain: Vec<i64> = (0..n).map(|v| self.a[v] - w[v]).collect();
        let big = gain.iter().map(|g| g.abs()).sum::<i64>()
            + self.arcs.iter().map(|a| a.2).sum::<i64>()
            + 1;
        let mut net = Network::new(n + 2);
        let mut positive = 0;
        for v in 0..n {
            if must.contains(v) {
                net.add(src, v, big, 0);
            }
            if !allowed.contains(v) {
                net.add(v, snk, big, 0);
            }
            if gain[v] > 0 {
                positive += gain[v];
                net.add(src, v, gain[v], 0);
            } else if gain[v] < 0 {
                net.add(v, snk, -gain[v], 0);
            }
        }
        for &(u, v, c) in &self.arcs {
            if u != v && c > 0 {
                net.add(u, v, c, 0);
            }
        }
        let cut = net.max_flow(src, snk, i64::MAX);
        let side = net.residual_reach(src);
        let set = Subset::from_elems((0..n).filter(|&v| side[v]));
        Some(ShiftedMax {
            value: positive - cut,
            set,
        })
    }
}

/// `i_G(X)`: total weight of edges with both ends in `X`.
pub fn graph_induced(n: usize, edges: &[(usize, usize, i64)]) -> Result<CutFunction> {
    let mut a = vec![0; n];
    let mut arcs = Vec::with_capacity(edges.len());
    for &(u, v, w) in edges {
        if u >= n || v >= n {
            return Err(Error::invalid("edge endpoint out of range"));
        }
        if w < 0 {
            return Err(Error::invalid("negative edge weight"));
        }
        a[u] += w;
        arcs.push((u, v, w));
    }
    let mut f = CutFunction::new(a, arcs)?;
    f.kind = OracleKind::GraphInduced;
    Ok(f)
}

/// `e_G(X)`: total weight of edges meeting `X` (submodular role).
pub fn graph_cover(n: usize, edges: &[(usize, usize, i64)]) -> Result<Complemented> {
    let mut c = Complemented::new(Arc::new(graph_induced(n, edges)?))?;
    c.kind = OracleKind::GraphCover;
    Ok(c)
}

/// `p_fg(Z) = ϱ_f(Z) − δ_g(Z)` for arcs `(u, v, f, g)` with finite bounds.
pub fn flow_induced(n: usize, arcs: &[(usize, usize, i64, i64)]) -> Result<CutFunction> {
    let mut a = vec![0; n];
    let mut cut = Vec::with_capacity(arcs.len());
    for &(u, v, lo, hi) in arcs {
        if u >= n || v >= n {
            return Err(Error::invalid("arc endpoint out of range"));
        }
        if lo > hi {
            return Err(Error::invalid("lower bound exceeds upper bound"));
        }
        a[v] += lo;
        a[u] -= lo;
        cut.push((u, v, hi - lo));
    }
    let mut f = CutFunction::new(a, cut)?;
    f.kind = OracleKind::FlowInduced;
    Ok(f)
}

// ---------------------------------------------------------------------------
// Root vectors: p(X) = k − ϱ(X) on non-empty X. Intersecting supermodular.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootVectorFn {
    k: i64,
    /// `ϱ` as the cut function of the reversed digraph.
    reversed: CutFunction,
}

impl RootVectorFn {
    pub fn new(n: usize, arcs: &[(usize, usize)], k: i64) -> Result<Self> {
        let rev = arcs.iter().map(|&(u, v)| (v, u, 1)).collect();
        Ok(RootVectorFn {
            k,
            reversed: CutFunction::new(vec![0; n], rev)?,
        })
    }
}

impl SetFunction for RootVectorFn {
    fn ground_size(&self) -> usize {
        self.reversed.n
    }

    fn eval(&self, x: Subset) -> Option<i64> {
        if x.is_empty() {
            Some(0)
        } else {
            self.reversed.eval(x).map(|v| self.k + v)
        }
    }

    fn kind(&self) -> OracleKind {
        OracleKind::RootVector
    }

    fn has_fast_maximize(&self) -> bool {
        true
    }

    fn maximize_shifted(&self, w: &[i64], must: Subset, allowed: Subset) -> Option<ShiftedMax> {
        if !must.is_subset_of(allowed) {
            return None;
        }
        let shift = |r: ShiftedMax| ShiftedMax {
            value: r.value + self.k,
            set: r.set,
        };
        if !must.is_empty() {
            return self.reversed.maximize_shifted(w, must, allowed).map(shift);
        }
        let mut best = ShiftedMax {
            value: 0,
            set: Subset::EMPTY,
        };
        for v in allowed.iter() {
            if let Some(r) = self
                .reversed
                .maximize_shifted(w, Subset::singleton(v), allowed)
                .map(shift)
            {
                if r.value > best.value
                    || (r.value == best.value
                        && (r.set.len(), r.set.bits()) < (best.set.len(), best.set.bits()))
                {
                    best = r;
                }
            }
        }
        Some(best)
    }
}

// ---------------------------------------------------------------------------
// Wrappers

/// `p|Z` on the local ground set `Z`.
#[derive(Clone, Debug)]
pub struct Restricted {
    inner: Oracle,
    emb: Embedding,
}

impl Restricted {
    pub fn new(inner: Oracle, z: Subset) -> Result<Self> {
        if z.is_empty() {
            return Err(Error::invalid("restriction to the empty set"));
        }
        if !z.is_subset_of(Subset::full(inner.ground_size())) {
            return Err(Error::invalid("restriction set outside ground set"));
        }
        if inner.eval(z).is_none() {
            return Err(Error::Undefined("p(Z) is infinite".into()));
        }
        Ok(Restricted {
            inner,
            emb: Embedding::of(z),
        })
    }

    pub fn embedding(&self) -> &Embedding {
        &self.emb
    }
}

impl SetFunction for Restricted {
    fn ground_size(&self) -> usize {
        self.emb.len()
    }

    fn eval(&self, x: Subset) -> Option<i64> {
        self.inner.eval(self.emb.lift(x))
    }

    fn kind(&self) -> OracleKind {
        OracleKind::Restricted
    }

    fn role(&self) -> Role {
        self.inner.role()
    }

    fn has_fast_maximize(&self) -> bool {
        self.inner.has_fast_maximize()
    }

    fn maximize_shifted(&self, w: &[i64], must: Subset, allowed: Subset) -> Option<ShiftedMax> {
        let mut wp = vec![0; self.inner.ground_size()];
        for (i, &e) in self.emb.elems.iter().enumerate() {
            wp[e] = w[i];
        }
        self.inner
            .maximize_shifted(&wp, self.emb.lift(must), self.emb.lift(allowed))
            .map(|r| ShiftedMax {
                value: r.value,
                set: self.emb.restrict(r.set),
            })
    }
}

/// `p/Z (X) = p(X ∪ Z) − p(Z)` on the local ground set `S − Z`.
#[derive(Clone, Debug)]
pub struct Contracted {
    inner: Oracle,
    emb: Embedding,
    z: Subset,
    pz: i64,
}

impl Contracted {
    pub fn new(inner: Oracle, z: Subset) -> Result<Self> {
        let full = Subset::full(inner.ground_size());
        if !z.is_subset_of(full) {
            return Err(Error::invalid("contraction set outside ground set"));
        }
        if z == full {
            return Err(Error::invalid("contraction of the whole ground set"));
        }
        let pz = inner
            .eval(z)
            .ok_or_else(|| Error::Undefined("contraction by a set with infinite value".into()))?;
        Ok(Contracted {
            emb: Embedding::of(full.minus(z)),
            inner,
            z,
            pz,
        })
    }

    pub fn embedding(&self) -> &Embedding {
        &self.emb
    }
}

impl SetFunction for Contracted {
    fn ground_size(&self) -> usize {
        self.emb.len()
    }

    fn eval(&self, x: Subset) -> Option<i64> {
        self.inner
            .eval(self.emb.lift(x).union(self.z))
            .map(|v| v - self.pz)
    }

    fn kind(&self) -> OracleKind {
        OracleKind::Contracted
    }

    fn role(&self) -> Role {
        self.inner.role()
    }

    fn has_fast_maximize(&self) -> bool {
        self.inner.has_fast_maximize()
    }

    fn maximize_shifted(&self, w: &[i64], must: Subset, allowed: Subset) -> Option<ShiftedMax> {
        let mut wp = vec![0; self.inner.ground_size()];
        for (i, &e) in self.emb.elems.iter().enumerate() {
            wp[e] = w[i];
        }
        self.inner
            .maximize_shifted(
                &wp,
                self.emb.lift(must).union(self.z),
                self.emb.lift(allowed).union(self.z),
            )
            .map(|r| ShiftedMax {
                value: r.value - self.pz,
                set: self.emb.restrict(r.set),
            })
    }
}

/// `p̄(X) = p(S) − p(S − X)`; flips the role.
#[derive(Clone, Debug)]
pub struct Complemented {
    inner: Oracle,
    total: i64,
    kind: OracleKind,
}

impl Complemented {
    pub fn new(inner: Oracle) -> Result<Self> {
        let total = inner
            .eval(Subset::full(inner.ground_size()))
            .ok_or_else(|| Error::Undefined("p(S) is infinite".into()))?;
        Ok(Complemented {
            inner,
            total,
            kind: OracleKind::Complemented,
        })
    }
}

impl SetFunction for Complemented {
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    fn eval(&self, x: Subset) -> Option<i64> {
        let rest = Subset::full(self.ground_size()).minus(x);
        self.inner.eval(rest).map(|v| self.total - v)
    }

    fn kind(&self) -> OracleKind {
        self.kind
    }

    fn role(&self) -> Role {
        match self.inner.role() {
            Role::Supermodular => Role::Submodular,
            Role::Submodular => Role::Supermodular,
        }
    }
}

/// `p(X) + x̃(X)`: the function behind the translate `B'(p) + x`.
#[derive(Clone, Debug)]
pub struct Shifted {
    inner: Oracle,
    x: Vec<i64>,
}

impl Shifted {
    pub fn new(inner: Oracle, x: Vec<i64>) -> Result<Self> {
        if x.len() != inner.ground_size() {
            return Err(Error::LengthMismatch {
                expected: inner.ground_size(),
                got: x.len(),
            });
        }
        Ok(Shifted { inner, x })
    }
}

impl SetFunction for Shifted {
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    fn eval(&self, s: Subset) -> Option<i64> {
        self.inner.eval(s).map(|v| v + s.sum(&self.x))
    }

    fn kind(&self) -> OracleKind {
        OracleKind::Shifted
    }

    fn role(&self) -> Role {
        self.inner.role()
    }

    fn has_fast_maximize(&self) -> bool {
        self.inner.has_fast_maximize()
    }

    fn maximize_shifted(&self, w: &[i64], must: Subset, allowed: Subset) -> Option<ShiftedMax> {
        let wd: Vec<i64> = w.iter().zip(&self.x).map(|(a, b)| a - b).collect();
        self.inner.maximize_shifted(&wd, must, allowed)
    }
}

/// The fully supermodular function of `B'(p) ∩ T(f, g)`:
/// `p□(Y) = max_X p(X) + f̃(Y − X) − g̃(X − Y)`, evaluated through one
/// shifted maximization of `p` per query.
#[derive(Clone, Debug)]
pub struct Boxed {
    inner: Oracle,
    lower: Vec<i64>,
    upper: Vec<i64>,
}

impl Boxed {
    pub fn new(inner: Oracle, lower: Vec<i64>, upper: Vec<i64>) -> Result<Self> {
        let n = inner.ground_size();
        if lower.len() != n || upper.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: lower.len().min(upper.len()),
            });
        }
        Ok(Boxed {
            inner,
            lower,
            upper,
        })
    }
}

impl SetFunction for Boxed {
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    fn eval(&self, y: Subset) -> Option<i64> {
        let n = self.ground_size();
        let mut must = Subset::EMPTY;
        let mut allowed = Subset::full(n);
        let mut w = vec![0; n];
        let mut base = 0i64;
        for v in 0..n {
            if y.contains(v) {
                if self.lower[v] == NO_LOWER {
                    must.insert(v);
                } else {
                    w[v] = self.lower[v];
                    base += self.lower[v];
                }
            } else if self.upper[v] == NO_UPPER {
                allowed.remove(v);
            } else {
                w[v] = self.upper[v];
            }
        }
        self.inner
            .maximize_shifted(&w, must, allowed)
            .map(|r| r.value + base)
    }

    fn kind(&self) -> OracleKind {
        OracleKind::Boxed
    }
}

/// Values keyed by subset, for diagnostics.
pub fn describe(p: &dyn SetFunction) -> BTreeMap<u64, Option<i64>> {
    Subset::all(p.ground_size())
        .map(|x| (x.bits(), p.eval(x)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn i1() -> ExplicitTable {
        ExplicitTable::new(2, vec![Some(0), Some(0), Some(0), Some(1)]).unwrap()
    }

    fn path() -> CutFunction {
        graph_induced(3, &[(0, 1, 1), (1, 2, 1)]).unwrap()
    }

    #[test]
    fn contraction_and_complement_examples() {
        let p: Oracle = Arc::new(i1());
        let c = Contracted::new(p.clone(), Subset::singleton(0)).unwrap();
        assert_eq!(c.eval(Subset::singleton(0)), Some(1));
        let b = Complemented::new(p.clone()).unwrap();
        assert_eq!(b.eval(Subset::singleton(0)), Some(1));
        assert_eq!(b.role(), Role::Submodular);

        let once = Contracted::new(p.clone(), Subset::from_elems([0, 1]));
        assert!(once.is_err(), "contracting everything leaves no ground set");
        let twice = Contracted::new(
            Arc::new(Contracted::new(p.clone(), Subset::singleton(0)).unwrap()),
            Subset::EMPTY,
        )
        .unwrap();
        assert_eq!(twice.eval(Subset::EMPTY), Some(0));
    }

    #[test]
    fn contraction_by_infinite_set_fails() {
        let t = ExplicitTable::new(2, vec![Some(0), None, Some(0), Some(1)]).unwrap();
        assert!(matches!(
            Contracted::new(Arc::new(t), Subset::singleton(0)),
            Err(Error::Undefined(_))
        ));
    }

    #[test]
    fn graph_induced_counts_edges() {
        let p = path();
        assert_eq!(p.eval(Subset::from_elems([0, 1])), Some(1));
        assert_eq!(p.eval(Subset::from_elems([0, 2])), Some(0));
        assert_eq!(p.eval(Subset::full(3)), Some(2));
        let e = graph_cover(3, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        assert_eq!(e.eval(Subset::singleton(0)), Some(1));
        assert_eq!(e.eval(Subset::singleton(1)), Some(2));
    }

    #[test]
    fn cut_maximization_matches_brute_force() {
        let p = graph_induced(4, &[(0, 1, 2), (1, 2, 1), (2, 3, 3), (0, 3, 1)]).unwrap();
        for w in [[0, 0, 0, 0], [1, 2, 1, 2], [3, -1, 2, 0], [5, 5, 5, 5]] {
            for must in Subset::all(4) {
                for allowed in Subset::all(4) {
                    let fast = p.maximize_shifted(&w, must, allowed);
                    let slow = brute_maximize(&p, &w, must, allowed);
                    assert_eq!(fast, slow, "w={w:?} must={must:?} allowed={allowed:?}");
                }
            }
        }
    }

    #[test]
    fn flow_induced_matches_definition() {
        let arcs = [(0, 1, 1, 3), (1, 2, 0, 2), (2, 0, 0, 1)];
        let p = flow_induced(3, &arcs).unwrap();
        for x in Subset::all(3) {
            let mut want = 0;
            for &(u, v, lo, hi) in &arcs {
                if x.contains(v) && !x.contains(u) {
                    want += lo;
                }
                if x.contains(u) && !x.contains(v) {
                    want -= hi;
                }
            }
            assert_eq!(p.eval(x), Some(want));
        }
    }

    #[test]
    fn root_vector_maximization_matches_brute_force() {
        let p = RootVectorFn::new(3, &[(0, 1), (1, 2), (2, 0), (0, 2)], 2).unwrap();
        for w in [[0, 0, 0], [1, 0, 2], [-1, 3, 0]] {
            for must in Subset::all(3) {
                for allowed in Subset::all(3) {
                    let fast = p.maximize_shifted(&w, must, allowed).map(|r| r.value);
                    let slow = brute_maximize(&p, &w, must, allowed).map(|r| r.value);
                    assert_eq!(fast, slow);
                }
            }
        }
    }

    #[test]
    fn table_json_round_trip() {
        let v: Value = serde_json::from_str(r#"{"n":2,"values":{"3":1,"1":0,"2":"-inf"}}"#).unwrap();
        let t = ExplicitTable::from_json(&v).unwrap();
        assert_eq!(t.values(), &[Some(0), Some(0), None, Some(1)]);
        let back = ExplicitTable::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
        assert!(ExplicitTable::from_json(&serde_json::json!({"n":2,"values":{"1":0}})).is_err());
    }
}
