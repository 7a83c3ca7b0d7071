use treecut::io::Shape;
use treecut::light::compute_io;
use treecut::solver_leaves::{leaves_measure, leaves_step};
use treecut::*;

fn tree(n: usize, edges: &[(usize, usize)]) -> RootedTree {
    RootedTree::from_edges(n, edges, 0).unwrap()
}

fn pairs(list: &[(usize, usize)]) -> Vec<TerminalPair> {
    list.iter().map(|&(s, t)| TerminalPair::new(s, t)).collect()
}

fn oracle(t: &RootedTree, p: &[TerminalPair], w: &WeightMap, cap: Option<usize>) -> Option<u64> {
    brute_min_multicut(t, p, w, cap, &OracleConfig::default())
        .unwrap()
        .map(|s| s.total_weight())
}

fn path_instance(p: &[(usize, usize)]) -> Instance {
    let t = tree(3, &[(0, 1), (1, 2)]);
    Instance::new(t, pairs(p), WeightMap::from_finite(&[5, 1, 7]), None, None).unwrap()
}

#[test]
fn k_examples() {
    let empty = path_instance(&[]).with_budgets(Some(0), Some(0));
    let out = solve_k(&empty).unwrap();
    assert!(out.decision);
    assert!(out.solution.unwrap().vertices().is_empty());

    let one = path_instance(&[(0, 2)]);
    let best = oracle(&one.tree, &one.pairs, &one.weights, Some(1)).unwrap();
    let yes = solve_k(&one.clone().with_budgets(Some(best), Some(1))).unwrap();
    assert!(yes.decision);
    assert_eq!(yes.solution.as_ref().unwrap().vertices(), &[1]);
    let no = solve_k(&one.clone().with_budgets(Some(best - 1), Some(1))).unwrap();
    assert!(!no.decision && no.solution.is_none());
    assert!(solve_k(&one.clone().with_budgets(None, Some(1))).is_err());
}

#[test]
fn k_witnesses_respect_budgets() {
    for seed in 0..120 {
        let inst = gen_random(4 + seed as usize % 10, 1 + seed as usize % 6, 20, seed, Shape::Uniform).unwrap();
        for k in 1..=4u64 {
            let Some(best) = oracle(&inst.tree, &inst.pairs, &inst.weights, Some(k as usize)) else {
                continue;
            };
            let budgeted = inst.clone().with_budgets(Some(best), Some(k));
            let out = solve_k(&budgeted).unwrap();
            let sol = out.solution.clone().expect("feasible at the capped optimum");
            assert!(verify_solution(&budgeted, &sol).is_valid(), "seed {seed} k {k}");
            assert_eq!(sol.total_weight(), best);
            assert!(out.within_bound());
        }
    }
}

#[test]
fn k_trace_has_one_node_per_state() {
    let inst = gen_random(12, 6, 20, 3, Shape::Caterpillar).unwrap().with_budgets(Some(40), Some(3));
    let out = solve_k_with(
        &inst,
        KOptions {
            trace: true,
            ..KOptions::default()
        },
    )
    .unwrap();
    let trace = out.trace.unwrap();
    assert_eq!(trace.len() as u64, out.stats.node_count);
    assert!(trace.to_dot().starts_with("digraph"));
}

#[test]
fn leaves_examples() {
    let p = path_instance(&[(0, 2), (2, 2)]);
    let a = solve_leaves(&p.tree, &p.pairs, &p.weights).unwrap();
    let b = a_path(&Forest::whole(&p.tree), &p.pairs, &p.weights).unwrap();
    assert_eq!(a.solution.map(|s| s.total_weight()), b.map(|s| s.total_weight()));

    for seed in 0..40 {
        let s = gen_random(10, 5, 30, seed, Shape::StarIsh).unwrap();
        let a = solve_leaves(&s.tree, &s.pairs, &s.weights).unwrap();
        let b = a_star(&s.tree, &s.pairs, &s.weights).unwrap();
        assert_eq!(a.solution.map(|s| s.total_weight()), b.map(|s| s.total_weight()));
    }
}

#[test]
fn decision_examples() {
    let p = path_instance(&[]);
    assert!(decision_leaves(&p.tree, &p.pairs, &p.weights, 0).unwrap());
    for seed in 0..60 {
        let inst = gen_random(3 + seed as usize % 11, 4, 30, seed, Shape::Uniform).unwrap();
        let opt = oracle(&inst.tree, &inst.pairs, &inst.weights, None).unwrap();
        assert!(decision_leaves(&inst.tree, &inst.pairs, &inst.weights, opt).unwrap());
        if opt > 0 {
            assert!(!decision_leaves(&inst.tree, &inst.pairs, &inst.weights, opt - 1).unwrap());
        }
    }
    let t = tree(3, &[(0, 1), (1, 2)]);
    let stuck = WeightMap::new(vec![Weight::Undeletable; 3]);
    for w in [0, 10, u64::MAX] {
        assert!(!decision_leaves(&t, &pairs(&[(0, 2)]), &stuck, w).unwrap());
    }
}

#[test]
fn leaves_step_branches_are_consistent() {
    // Branch 1 keeps every vertex of y..x and branch 2 deletes one of y..z;
    // the better of the two, lifted back, is the optimum.
    let mut checked = 0;
    for seed in 0..300 {
        let inst = gen_random(6 + seed as usize % 9, 1 + seed as usize % 8, 40, seed, Shape::Uniform).unwrap();
        let Some((rooted, step)) = leaves_step(&inst.tree, &inst.pairs, &inst.weights).unwrap() else {
            continue;
        };
        checked += 1;
        let mu = leaves_measure(&rooted);
        assert!(leaves_measure(&step.contracted.tree) < mu, "seed {seed}");
        assert!(leaves_measure(&step.reduced.tree) < mu, "seed {seed}");
        assert!(rooted.is_ancestor(step.y, step.z) && rooted.is_ancestor(step.z, step.x));

        let c = &step.contracted;
        let keep = oracle(&c.tree, &c.pairs, &c.weights, None);
        let r = &step.reduced;
        let cut = oracle(&r.tree, &r.pairs, &r.weights, None);
        let best = match (keep, cut) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        assert_eq!(best, oracle(&inst.tree, &inst.pairs, &inst.weights, None), "seed {seed}");

        // Keeping the path: optimum over host sets avoiding y..x.
        let path = rooted.downward_path(step.y, step.x).unwrap();
        let mut pinned = inst.weights.clone();
        for &v in &path {
            pinned.set(v, Weight::Undeletable);
        }
        assert_eq!(keep, oracle(&inst.tree, &inst.pairs, &pinned, None), "seed {seed}");
    }
    assert!(checked > 100);
}

#[test]
fn classify_examples() {
    let star = tree(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
    for d in 0..3 {
        assert!(classify_light(&star, &[], d).light.iter().all(|&l| l));
    }
    let p = pairs(&[(1, 2), (3, 4), (1, 3)]);
    let c = classify_light(&star, &p, 2);
    assert!(!c.is_light(0));
    assert_eq!(c.components.len(), 1);
    assert_eq!(c.components[0].vertices, vec![0]);
    assert_eq!(c.components[0].closed_leaves, 4);

    // Heavy path 0-1-2 with two light leaves on each end and two in the middle.
    let t = tree(9, &[(0, 1), (1, 2), (0, 3), (0, 4), (1, 5), (1, 6), (2, 7), (2, 8)]);
    let p = pairs(&[(3, 7), (4, 8), (5, 6), (3, 8), (4, 7), (5, 7), (6, 3)]);
    let c = classify_light(&t, &p, 3);
    let heavy: Vec<usize> = (0..9).filter(|&v| !c.is_light(v)).collect();
    assert_eq!(heavy, vec![0, 1, 2]);
    // N[C] is the whole tree here, so its leaves are the degree-1 vertices.
    assert_eq!(c.components[0].closed_leaves, t.leaf_count());
    assert_eq!(t.leaf_count(), 6);
    assert!(c.is_dq_light(6) && !c.is_dq_light(5));
}

#[test]
fn io_sets_examples() {
    let t = tree(5, &[(0, 1), (0, 2), (2, 3), (2, 4)]);
    let p = pairs(&[(1, 3), (3, 4), (4, 4), (0, 2)]);
    let io = compute_io(&t, &p);
    assert!(io.outer[0].is_empty());
    let through_root: Vec<usize> = (0..p.len()).filter(|&i| t.path_between(p[i].s, p[i].t).unwrap().contains(&0)).collect();
    let mut inner0 = io.inner[0].clone();
    inner0.sort_unstable();
    assert_eq!(inner0, through_root);
    let i44 = p.iter().position(|&q| q == TerminalPair::new(4, 4)).unwrap();
    assert_eq!(io.inner[4], vec![i44]);
    for v in 0..5 {
        let mut expected: Vec<usize> = (0..p.len())
            .filter(|&i| t.is_ancestor(v, p[i].s) != t.is_ancestor(v, p[i].t))
            .collect();
        expected.sort_unstable();
        let mut got: Vec<usize> = io.outer[v].iter().map(|&(i, _)| i).collect();
        got.sort_unstable();
        assert_eq!(got, expected, "vertex {v}");
        for &(_, q) in &io.outer[v] {
            assert!(t.is_ancestor(v, q.s) && !t.is_ancestor(v, q.t));
        }
    }
}

#[test]
fn light_table_examples() {
    // Root 0 (light), chain 0-1-2, leaf 2.
    let t = tree(3, &[(0, 1), (1, 2)]);
    let w = WeightMap::from_finite(&[5, 4, 7]);
    let table = LightTable::build(&t, &[], &w, 0).unwrap();
    assert_eq!(table.entry(2, 0).unwrap().unwrap().weight, 0);
    assert_eq!(table.entry(0, 0).unwrap().unwrap().weight, 0);

    let p = pairs(&[(2, 0)]);
    let table = LightTable::build(&t, &p, &w, 1).unwrap();
    assert_eq!(table.entry(2, 0).unwrap().unwrap().weight, 0);
    assert_eq!(table.entry(2, 1).unwrap().unwrap().weight, 7);

    let stuck = WeightMap::new(vec![Weight::Finite(1), Weight::Finite(1), Weight::Undeletable]);
    let table = LightTable::build(&t, &p, &stuck, 1).unwrap();
    assert!(table.entry(2, 1).unwrap().is_none());

    let own = pairs(&[(1, 1)]);
    let table = LightTable::build(&t, &own, &w, 1).unwrap();
    assert_eq!(table.entry(1, 0).unwrap().unwrap().weight, 4);
}

#[test]
fn light_examples() {
    let t = tree(3, &[(0, 1), (1, 2)]);
    let w = WeightMap::from_finite(&[5, 4, 7]);
    let out = solve_light(&t, &[], &w, 0, Some(0)).unwrap();
    assert_eq!(out.solution.unwrap().total_weight(), 0);
    assert_eq!(out.decision, Some(true));

    let c5 = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)];
    let vc = reduce_vertex_cover(&c5, 5).unwrap();
    let out = solve_light(&vc.tree, &vc.pairs, &vc.weights, 3, Some(3)).unwrap();
    assert_eq!(out.solution.unwrap().total_weight(), 3);
    assert_eq!(out.decision, Some(true));
    assert!(out.stats.clean());
}
