use decmin::applications::*;
use decmin::brute::{decmin_points, incmax_points};
use decmin::vector::sorted_dec;
use proptest::prelude::*;

fn bipartite() -> impl Strategy<Value = SemiMatchingProblem> {
    (1usize..=3, 1usize..=4).prop_flat_map(|(s, t)| {
        let edge = (0..s, 0..t, 0i64..=3);
        prop::collection::vec(edge, 1..=8).prop_map(move |es| SemiMatchingProblem {
            s,
            t,
            edges: es
                .into_iter()
                .map(|(s, t, cost)| BipartiteEdge { s, t, cap: 1, cost })
                .collect(),
            m_t: None,
            bounds_s: None,
            bounds_t: None,
            gamma: None,
        })
    })
}

fn best_degrees(all: &[SemiMatching]) -> Option<Vec<i64>> {
    let degs: Vec<_> = all.iter().map(|f| f.degrees.clone()).collect();
    decmin_points(&degs).first().map(|d| sorted_dec(d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn semimatching_matches_enumeration(p in bipartite()) {
        let all = brute_semimatchings(&p).unwrap();
        let Some(best) = best_degrees(&all) else {
            prop_assert!(decmin_semimatching(&p).is_err());
            prop_assert!(semimatching_via_flow(&p).is_err());
            return Ok(());
        };
        let cheapest = all.iter().filter(|f| sorted_dec(&f.degrees) == best).map(|f| f.cost).min();
        for r in [decmin_semimatching(&p).unwrap(), semimatching_via_flow(&p).unwrap()] {
            prop_assert_eq!(sorted_dec(&r.degrees), best.clone());
            prop_assert_eq!(Some(r.cost), cheapest);
            prop_assert!(all.iter().any(|f| f.z == r.z));
        }
    }

    /// Minimizers of the load-balancing objective are the dec-min degree vectors.
    #[test]
    fn harvey_minimizers_are_decmin(p in bipartite()) {
        let all = brute_semimatchings(&p).unwrap();
        prop_assume!(!all.is_empty());
        let least = all.iter().map(|f| harvey_objective(&f.degrees)).min().unwrap();
        let best = best_degrees(&all).unwrap();
        for f in &all {
            prop_assert_eq!(harvey_objective(&f.degrees) == least, sorted_dec(&f.degrees) == best);
        }
    }

    #[test]
    fn capacitated_semimatching_matches_enumeration(
        p in bipartite(),
        caps in prop::collection::vec(1i64..=2, 8),
        hi in prop::collection::vec(0i64..=3, 4),
        gamma in prop::option::of(0i64..=5),
    ) {
        let mut p = p;
        for (e, &c) in p.edges.iter_mut().zip(&caps) {
            e.cap = c;
        }
        p.bounds_t = Some((vec![0; p.t], hi[..p.t].to_vec()));
        p.gamma = gamma;
        let all = brute_semimatchings(&p).unwrap();
        match best_degrees(&all) {
            None => prop_assert!(decmin_semimatching(&p).is_err()),
            Some(best) => {
                let r = decmin_semimatching(&p).unwrap();
                prop_assert_eq!(sorted_dec(&r.degrees), best.clone());
                let cheapest = all.iter().filter(|f| sorted_dec(&f.degrees) == best).map(|f| f.cost).min();
                prop_assert_eq!(Some(r.cost), cheapest);
            }
        }
    }
}

/// Out-flow vectors of every integral flow of the given amount, by enumeration.
fn all_out_flows(p: &MegiddoProblem, amount: i64) -> Vec<Vec<i64>> {
    let mut out = vec![];
    let mut z = vec![0i64; p.arcs.len()];
    loop {
        let mut net = vec![0i64; p.n];
        for (&(u, v, _), &x) in p.arcs.iter().zip(&z) {
            net[u] += x;
            net[v] -= x;
        }
        let inner_ok = (0..p.n)
            .filter(|v| !p.sources.contains(v) && !p.sinks.contains(v))
            .all(|v| net[v] == 0);
        let y: Vec<i64> = p.sources.iter().map(|&s| net[s]).collect();
        let sinks_ok = p.sinks.iter().all(|&t| net[t] <= 0);
        if inner_ok && sinks_ok && y.iter().all(|&v| v >= 0) && y.iter().sum::<i64>() == amount {
            out.push(y);
        }
        let mut i = 0;
        while i < z.len() {
            if z[i] < p.arcs[i].2 {
                z[i] += 1;
                break;
            }
            z[i] = 0;
            i += 1;
        }
        if i == z.len() {
            break;
        }
    }
    out.sort();
    out.dedup();
    out
}

fn megiddo() -> impl Strategy<Value = MegiddoProblem> {
    (3usize..=5).prop_flat_map(|n| {
        let arc = (0..n, 0..n, 1i64..=2).prop_filter("no loops", |(u, v, _)| u != v);
        (prop::collection::vec(arc, 1..=6), 1..n).prop_map(move |(arcs, split)| MegiddoProblem {
            n,
            arcs,
            sources: (0..split).collect(),
            sinks: (split..n).take(1).collect(),
            amount: None,
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn megiddo_matches_enumeration(p in megiddo()) {
        let r = megiddo_discrete(&p).unwrap();
        let ys = all_out_flows(&p, r.amount);
        prop_assert!(ys.contains(&r.out_flow));
        prop_assert_eq!(sorted_dec(&r.out_flow), sorted_dec(&decmin_points(&ys)[0]));
        // Dec-min out-flow is inc-max net in-flow.
        let neg: Vec<Vec<i64>> = ys.iter().map(|y| y.iter().map(|v| -v).collect()).collect();
        let mine: Vec<i64> = r.out_flow.iter().map(|v| -v).collect();
        prop_assert!(incmax_points(&neg).iter().any(|q| sorted_dec(q) == sorted_dec(&mine)));
        // Nothing above the maximum.
        prop_assert!(all_out_flows(&p, r.amount + 1).is_empty());
    }

    #[test]
    fn root_vector_matches_scan(
        n in 2usize..=4,
        arcs in prop::collection::vec((0usize..4, 0usize..4), 0..=8),
        k in 1i64..=2,
    ) {
        let arcs: Vec<_> = arcs.into_iter().filter(|&(u, v)| u != v && u < n && v < n).collect();
        let mut members = vec![];
        let mut m = vec![0i64; n];
        loop {
            if is_root_vector(n, &arcs, k, &m).unwrap() {
                members.push(m.clone());
            }
            let mut i = 0;
            while i < n {
                if m[i] < k {
                    m[i] += 1;
                    break;
                }
                m[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
        match decmin_root_vector(n, &arcs, k) {
            Ok(r) => {
                prop_assert!(members.contains(&r));
                prop_assert_eq!(sorted_dec(&r), sorted_dec(&decmin_points(&members)[0]));
            }
            Err(_) => prop_assert!(members.is_empty()),
        }
    }
}

#[test]
fn two_user_instance() {
    // One task usable by either of two servers.
    let p = SemiMatchingProblem::simple(2, 1, &[(0, 0), (1, 0)]);
    let r = decmin_semimatching(&p).unwrap();
    assert_eq!(sorted_dec(&r.degrees), vec![1, 0]);
    assert_eq!(harvey_objective(&r.degrees), 2);
}
