use decmin::brute::decmin_points;
use decmin::orientation::*;
use decmin::vector::sorted_dec;
use proptest::prelude::*;

fn graph_strategy() -> impl Strategy<Value = Graph> {
    (2usize..=5).prop_flat_map(|n| {
        let edge = (0..n, 0..n, -3i64..=3, -3i64..=3)
            .prop_filter("no loops", |(u, v, _, _)| u != v);
        prop::collection::vec(edge, 1..=8).prop_map(move |es| {
            let mut g = Graph::new(n);
            for (u, v, a, b) in es {
                g.add_edge(Edge {
                    cost_uv: a,
                    cost_vu: b,
                    ..Edge::new(u, v)
                })
                .unwrap();
            }
            g
        })
    })
}

fn bounds_strategy(n: usize) -> impl Strategy<Value = Bounds> {
    prop::collection::vec((0i64..=2, 0i64..=3), n).prop_map(|v| {
        let lower = v.iter().map(|&(f, _)| f).collect::<Vec<_>>();
        let upper = v.iter().map(|&(f, w)| f + w).collect();
        Bounds::new(lower, upper).unwrap()
    })
}

fn instance() -> impl Strategy<Value = (Graph, Bounds)> {
    graph_strategy().prop_flat_map(|g| {
        let n = g.n;
        (Just(g), bounds_strategy(n))
    })
}

fn within(g: &Graph, o: &Orientation, b: &Bounds) -> bool {
    o.indeg(g)
        .iter()
        .enumerate()
        .all(|(v, &d)| b.lower[v] <= d && d <= b.upper[v])
}

/// All bounded orientations, with their in-degree vectors.
fn feasible(g: &Graph, b: &Bounds) -> Vec<(Orientation, Vec<i64>)> {
    all_orientations(g)
        .unwrap()
        .filter(|o| within(g, o, b))
        .map(|o| {
            let d = o.indeg(g);
            (o, d)
        })
        .collect()
}

fn best_sorted(vs: &[Vec<i64>]) -> Option<Vec<i64>> {
    decmin_points(vs).first().map(|v| sorted_dec(v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bounded_decmin_matches_enumeration((g, b) in instance()) {
        let all = feasible(&g, &b);
        let degs: Vec<_> = all.iter().map(|(_, d)| d.clone()).collect();
        match decmin_orientation_bounded(&g, &b) {
            Ok(o) => {
                prop_assert!(within(&g, &o, &b));
                prop_assert_eq!(Some(sorted_dec(&o.indeg(&g))), best_sorted(&degs));
                prop_assert!(orientation_canonical(&g, &o, &b).is_ok());
            }
            Err(_) => prop_assert!(all.is_empty()),
        }
    }

    #[test]
    fn cheapest_matches_enumeration((g, b) in instance()) {
        let all = feasible(&g, &b);
        let degs: Vec<_> = all.iter().map(|(_, d)| d.clone()).collect();
        let Some(best) = best_sorted(&degs) else {
            prop_assert!(cheapest_decmin_orientation_bounded(&g, &b).is_err());
            return Ok(());
        };
        let cheapest = all
            .iter()
            .filter(|(_, d)| sorted_dec(d) == best)
            .map(|(o, _)| o.cost(&g))
            .min()
            .unwrap();
        let o = cheapest_decmin_orientation_bounded(&g, &b).unwrap();
        prop_assert!(within(&g, &o, &b));
        prop_assert_eq!(sorted_dec(&o.indeg(&g)), best);
        prop_assert_eq!(o.cost(&g), cheapest);
    }

    #[test]
    fn min_t_matches_enumeration((g, b) in instance(), tmask in 1u32..32) {
        let t: Vec<usize> = (0..g.n).filter(|&v| tmask >> v & 1 == 1).collect();
        let all = feasible(&g, &b);
        let t_sum = |d: &[i64]| t.iter().map(|&v| d[v]).sum::<i64>();
        let Some(least) = all.iter().map(|(_, d)| t_sum(d)).min() else {
            prop_assert!(decmin_orientation_min_t(&g, &b, &t).is_err());
            return Ok(());
        };
        let degs: Vec<_> = all
            .iter()
            .map(|(_, d)| d.clone())
            .filter(|d| t_sum(d) == least)
            .collect();
        let r = decmin_orientation_min_t(&g, &b, &t).unwrap();
        let d = r.orientation.indeg(&g);
        prop_assert!(within(&g, &r.orientation, &b));
        prop_assert_eq!(t_sum(&d), least);
        prop_assert_eq!(Some(sorted_dec(&d)), best_sorted(&degs));
    }

    #[test]
    fn k_connected_matches_enumeration((g, b) in instance(), k in 1usize..=2) {
        let degs: Vec<_> = feasible(&g, &b)
            .into_iter()
            .filter(|(o, _)| is_k_arc_connected(&g, o, k))
            .map(|(_, d)| d)
            .collect();
        match decmin_korient(&g, k, &b) {
            Ok(o) => {
                prop_assert!(within(&g, &o, &b));
                prop_assert!(is_k_arc_connected(&g, &o, k));
                prop_assert_eq!(Some(sorted_dec(&o.indeg(&g))), best_sorted(&degs));
            }
            Err(_) => prop_assert!(degs.is_empty()),
        }
    }

    #[test]
    fn capacitated_matches_expansion(g in graph_strategy(), caps in prop::collection::vec(1i64..=3, 8)) {
        let mut g = g;
        for (e, c) in g.edges.iter_mut().zip(&caps) {
            e.ell = *c;
        }
        let r = capacitated_decmin_orientation(&g).unwrap();
        let plain = decmin_orientation(&expand_capacities(&g)).unwrap();
        prop_assert_eq!(sorted_dec(&r.indeg), sorted_dec(&plain.indeg(&expand_capacities(&g))));
        for (e, &z) in g.edges.iter().zip(&r.z) {
            prop_assert!(0 <= z && z <= e.ell);
        }
    }
}

fn handle(g: &Graph, b: &Bounds) -> decmin::BaseHandle {
    let p = std::sync::Arc::new(g.induced_function().unwrap());
    decmin::BaseHandle::new(p)
        .unwrap()
        .with_box(Some(b.lower.clone()), Some(b.upper.clone()))
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn decmin_is_incmax_and_minimizes_measures((g, b) in instance()) {
        use decmin::brute::{diff_sum_minimizers, incmax_points, square_sum_minimizers};
        let degs: Vec<_> = feasible(&g, &b).into_iter().map(|(_, d)| d).collect();
        let Ok(o) = decmin_orientation_bounded(&g, &b) else {
            prop_assert!(degs.is_empty());
            return Ok(());
        };
        let m = o.indeg(&g);
        prop_assert!(incmax_points(&degs).contains(&m) || incmax_points(&degs).iter().any(|p| sorted_dec(p) == sorted_dec(&m)));
        prop_assert!(square_sum_minimizers(&degs).iter().any(|p| sorted_dec(p) == sorted_dec(&m)));
        prop_assert!(diff_sum_minimizers(&degs).iter().any(|p| sorted_dec(p) == sorted_dec(&m)));
    }

    #[test]
    fn reachability_canonical_matches_oracle((g, b) in instance()) {
        let Ok(o) = decmin_orientation_bounded(&g, &b) else { return Ok(()); };
        let by_reach = orientation_canonical(&g, &o, &b).unwrap();
        let by_oracle = decmin::canonical::canonical_from_decmin(&handle(&g, &b), &o.indeg(&g)).unwrap();
        prop_assert_eq!(by_reach.chain, by_oracle.chain);
        prop_assert_eq!(by_reach.betas, by_oracle.betas);
        prop_assert_eq!(by_reach.r, by_oracle.r);
    }
}

#[test]
fn complete_graph_plus_edge_two_blocks() {
    let g = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (4, 5)]).unwrap();
    let b = Bounds::free(6);
    let o = decmin_orientation(&g).unwrap();
    let d = orientation_canonical(&g, &o, &b).unwrap();
    let brute = decmin::brute::decmin_members(&handle(&g, &b)).unwrap();
    assert!(brute.contains(&o.indeg(&g)));
    assert_eq!(d.betas, vec![2, 1]);
    assert_eq!(d.chain, vec![vec![0, 1, 2, 3], vec![0, 1, 2, 3, 4, 5]]);
    // K3 plus an edge is a single block.
    let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (3, 4)]).unwrap();
    let o = decmin_orientation(&g).unwrap();
    let d = orientation_canonical(&g, &o, &Bounds::free(5)).unwrap();
    assert_eq!((d.betas, d.r), (vec![1], vec![4]));
}
