use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use treecut::io::{generate, GenConfig, Shape};
use treecut::*;

fn oracle(inst: &Instance) -> Option<u64> {
    brute_min_multicut(&inst.tree, &inst.pairs, &inst.weights, None, &OracleConfig::default())
        .unwrap()
        .map(|s| s.total_weight())
}

const FIVE: &str = "\
wmctree 1 5 3
e 0 1
e 1 2   # trailing comment
e 1 3
e 3 4

w 0 4
w 1 *
w 2 1
w 3 9
w 4 2
p 2 4
p 0 0
p 4 2
budget w 10
budget k 2
";

#[test]
fn minimal_file() {
    let inst = parse_instance("wmctree 1 1 0\nw 0 3\n").unwrap();
    assert_eq!(inst.n(), 1);
    assert!(inst.pairs.is_empty());
    assert_eq!(inst.weights.get(0), Weight::Finite(3));
}

#[test]
fn hand_written_round_trip() {
    let inst = parse_instance(FIVE).unwrap();
    assert_eq!(inst.pairs.len(), 2);
    assert_eq!(inst.weights.get(1), Weight::Undeletable);
    assert_eq!((inst.budget_w, inst.budget_k), (Some(10), Some(2)));
    let text = serialize_instance(&inst);
    let again = parse_instance(&text).unwrap();
    assert_eq!(again, inst);
    assert_eq!(serialize_instance(&again), text);
    assert!(text.starts_with("wmctree 1 5 2\ne 0 1\ne 1 2\ne 1 3\ne 3 4\nw 0 4\nw 1 *\n"));
    assert!(text.ends_with("p 0 0\np 2 4\nbudget w 10\nbudget k 2\n"));
}

fn parse_err(text: &str) -> String {
    parse_instance(text).unwrap_err().to_string()
}

#[test]
fn malformed_files() {
    assert!(parse_err("wmctree 1 3 0\ne 0 1\ne 1 2\ne 2 0\nw 0 1\nw 1 1\nw 2 1\n").contains("not a tree"));
    assert!(parse_err("wmctree 1 3 0\ne 0 1\nw 0 1\nw 1 1\nw 2 1\n").contains("not a tree"));
    assert!(parse_err("wmctree 1 2 0\ne 0 5\nw 0 1\nw 1 1\n").contains("bad vertex 5"));
    assert!(parse_err("wmctree 1 2 0\ne 0 1\nw 0 1\nw 0 2\n").contains("duplicate weight"));
    assert!(parse_err("wmctree 1 2 0\ne 0 1\nw 0 1\n").contains("missing weight"));
    assert!(parse_err("wmctree 1 2 1\ne 0 1\nw 0 1\nw 1 1\n").contains("announces 1"));
    assert!(parse_err("wmctree 2 2 0\n").contains("version"));
    assert!(parse_err("").contains("missing header"));
    assert!(parse_err("wmctree 1 1 0\nw 0 -3\n").contains("line 2"));
    assert!(parse_err("wmctree 1 1 0\nw 0 1\nq 1\n").contains("unrecognized"));
}

#[test]
fn random_round_trips() {
    for seed in 0..120 {
        let shape = [Shape::Uniform, Shape::Caterpillar, Shape::StarIsh, Shape::Path][seed as usize % 4];
        let cfg = GenConfig::new(1 + seed as usize % 30, seed as usize % 12, 1000, seed, shape).undeletable(100);
        let budgets = (seed % 3 == 0).then_some(seed * 7);
        let inst = generate(&cfg).unwrap().with_budgets(budgets, budgets.map(|b| b % 5));
        let text = serialize_instance(&inst);
        let back = parse_instance(&text).unwrap();
        assert_eq!(back, inst, "seed {seed}");
        assert_eq!(serialize_instance(&back), text);
    }
}

#[test]
fn generators_are_deterministic() {
    for shape in [Shape::Uniform, Shape::Caterpillar, Shape::StarIsh, Shape::Path, Shape::Leaves(4)] {
        let a = gen_random(20, 8, 50, 42, shape).unwrap();
        let b = gen_random(20, 8, 50, 42, shape).unwrap();
        assert_eq!(a, b);
        assert_eq!(serialize_instance(&a), serialize_instance(&b));
    }
    assert_eq!(gen_dq_light(2, 4, 30, 9).unwrap(), gen_dq_light(2, 4, 30, 9).unwrap());
}

#[test]
fn generator_shapes() {
    for seed in 0..30 {
        let p = gen_random(15, 3, 9, seed, Shape::Path).unwrap();
        assert!(p.tree.degree_classes().0.is_empty());
        let s = gen_random(10, 3, 9, seed, Shape::StarIsh).unwrap();
        assert!(s.tree.degree_classes().0.len() <= 1);
        let l = gen_random(40, 3, 9, seed, Shape::Leaves(5)).unwrap();
        assert_eq!(l.tree.leaf_count(), 5);
    }
    for name in ["uniform", "caterpillar", "star-ish", "path", "leaves-4"] {
        let shape: Shape = name.parse().unwrap();
        assert_eq!(shape.to_string(), name);
    }
    assert!(gen_random(0, 0, 1, 0, Shape::Uniform).is_err());
    assert!(gen_random(3, 0, 1, 0, Shape::Leaves(3)).is_err());
}

#[test]
fn vertex_cover_reduction_examples() {
    let edgeless = reduce_vertex_cover(&[], 4).unwrap();
    assert!(edgeless.pairs.is_empty());
    assert_eq!(oracle(&edgeless), Some(0));
    assert_eq!(oracle(&reduce_vertex_cover(&[(0, 1)], 2).unwrap()), Some(1));
    let c5 = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)];
    let (vc, _) = brute_vertex_cover(&c5, 5, &OracleConfig::default()).unwrap();
    assert_eq!(oracle(&reduce_vertex_cover(&c5, 5).unwrap()), Some(vc as u64));
    assert!(reduce_vertex_cover(&[(1, 1)], 2).is_err());
    assert!(reduce_vertex_cover(&[(0, 2)], 2).is_err());
    assert!(reduce_vertex_cover(&[], 0).is_err());
}

#[test]
fn vertex_cover_reduction_is_three_light_on_pendants() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..30 {
        let n = rng.gen_range(2..9);
        let mut deg = vec![0; n];
        let mut edges = Vec::new();
        for _ in 0..3 * n {
            let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if u < v && deg[u] < 3 && deg[v] < 3 && !edges.contains(&(u, v)) {
                deg[u] += 1;
                deg[v] += 1;
                edges.push((u, v));
            }
        }
        let inst = reduce_vertex_cover(&edges, n).unwrap();
        let c = classify_light(&inst.tree, &inst.pairs, 3);
        assert!((n..2 * n).all(|y| c.is_light(y)));
    }
}

/// Minimum total weight of tree edges whose removal separates every pair.
fn brute_edge_cut(n: usize, edges: &[(usize, usize, u64)], pairs: &[TerminalPair]) -> u64 {
    let mut best = u64::MAX;
    for mask in 0u32..(1 << edges.len()) {
        let mut comp: Vec<usize> = (0..n).collect();
        fn find(c: &mut Vec<usize>, v: usize) -> usize {
            if c[v] != v {
                let r = find(c, c[v]);
                c[v] = r;
            }
            c[v]
        }
        let mut cost = 0;
        for (i, &(u, v, w)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                cost += w;
            } else {
                let (a, b) = (find(&mut comp, u), find(&mut comp, v));
                comp[a] = b;
            }
        }
        if pairs.iter().all(|p| find(&mut comp, p.s) != find(&mut comp, p.t)) {
            best = best.min(cost);
        }
    }
    best
}

#[test]
fn edge_deletion_reduction() {
    let single = reduce_edge_deletion(2, &[(0, 1, 5)], &[TerminalPair::new(0, 1)]).unwrap();
    assert_eq!(single.n(), 3);
    assert_eq!(single.weights.get(2), Weight::Finite(5));
    assert_eq!(single.weights.get(0), Weight::Undeletable);
    assert_eq!(oracle(&single), Some(5));
    let two = reduce_edge_deletion(3, &[(0, 1, 4), (1, 2, 3)], &[TerminalPair::new(0, 2)]).unwrap();
    assert_eq!(oracle(&two), Some(3));
    assert_eq!(oracle(&reduce_edge_deletion(3, &[(0, 1, 4), (1, 2, 3)], &[]).unwrap()), Some(0));

    for seed in 0..80 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..9);
        let edges: Vec<(usize, usize, u64)> =
            (1..n).map(|v| (rng.gen_range(0..v), v, rng.gen_range(0..20))).collect();
        let pairs: Vec<TerminalPair> = (0..rng.gen_range(0..5))
            .map(|_| TerminalPair::new(rng.gen_range(0..n), rng.gen_range(0..n)))
            .filter(|p| p.s != p.t)
            .collect();
        let inst = reduce_edge_deletion(n, &edges, &pairs).unwrap();
        assert_eq!(oracle(&inst), Some(brute_edge_cut(n, &edges, &pairs)), "seed {seed}");
    }
}

#[test]
fn dq_light_generator() {
    for seed in 0..20 {
        for (d, q) in [(0, 2), (1, 3), (2, 4), (3, 6)] {
            let inst = gen_dq_light(d, q, 25, seed).unwrap();
            assert!(classify_light(&inst.tree, &inst.pairs, d).is_dq_light(q));
        }
    }
    assert!(gen_dq_light(1, 1, 0, 0).is_err());
}
