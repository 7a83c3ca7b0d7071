use treecut::io::Shape;
use treecut::{
    a_path, a_star, brute_min_multicut, gen_random, solve_k_with, solve_leaves, solve_light, verify_multicut, Forest,
    Instance, KOptions, OracleConfig,
};

fn shape(seed: u64, n: usize) -> Shape {
    match seed % 5 {
        0 => Shape::Uniform,
        1 => Shape::Caterpillar,
        2 => Shape::StarIsh,
        3 => Shape::Path,
        _ if n > 3 => Shape::Leaves(3),
        _ => Shape::Uniform,
    }
}

fn opt(inst: &Instance, cap: Option<usize>) -> Option<u64> {
    brute_min_multicut(&inst.tree, &inst.pairs, &inst.weights, cap, &OracleConfig::default())
        .unwrap()
        .map(|s| s.total_weight())
}

fn check_witness(inst: &Instance, vs: &[usize]) {
    assert!(verify_multicut(&inst.tree, &inst.pairs, &inst.weights, vs).is_valid());
}

#[test]
fn leaves_and_light_match_oracle() {
    for seed in 0..300u64 {
        let n = 2 + (seed as usize * 7) % 12;
        let shape = shape(seed, n);
        let inst = gen_random(n, 1 + seed as usize % 8, 30, seed, shape).unwrap();
        let want = opt(&inst, None);
        let got = solve_leaves(&inst.tree, &inst.pairs, &inst.weights).unwrap();
        assert_eq!(got.solution.as_ref().map(|s| s.total_weight()), want, "leaves seed {seed}");
        if let Some(s) = &got.solution {
            check_witness(&inst, s.vertices());
        }
        for d in 0..4 {
            let l = solve_light(&inst.tree, &inst.pairs, &inst.weights, d, None).unwrap();
            assert_eq!(l.solution.as_ref().map(|s| s.total_weight()), want, "light d={d} seed {seed}");
            if let Some(s) = &l.solution {
                check_witness(&inst, s.vertices());
            }
        }
    }
}

#[test]
fn k_matches_capped_oracle() {
    for seed in 0..200u64 {
        let n = 2 + (seed as usize * 5) % 11;
        let shape = shape(seed, n);
        let inst = gen_random(n, 1 + seed as usize % 7, 20, 1000 + seed, shape).unwrap();
        for k in 0..4u64 {
            let want = opt(&inst, Some(k as usize));
            let base = want.unwrap_or(10);
            for w in [base.saturating_sub(1), base, base + 1] {
                let out = solve_k_with(&inst.clone().with_budgets(Some(w), Some(k)), KOptions::default()).unwrap();
                let expect = want.is_some_and(|o| o <= w);
                assert_eq!(out.decision, expect, "seed {seed} k {k} w {w} want {want:?}");
                if let Some(s) = &out.solution {
                    check_witness(&inst, s.vertices());
                    assert!(s.size() as u64 <= k && s.total_weight() <= w);
                }
                assert!(out.stats.clean(), "seed {seed} k {k}: {:?}", out.stats);
            }
        }
    }
}

#[test]
fn star_and_path_match_oracle() {
    for seed in 0..200u64 {
        let n = 1 + seed as usize % 14;
        let inst = gen_random(n, seed as usize % 9, 25, 5000 + seed, Shape::StarIsh).unwrap();
        if inst.tree.degree_classes().0.len() > 1 {
            continue;
        }
        let want = opt(&inst, None);
        let got = a_star(&inst.tree, &inst.pairs, &inst.weights).unwrap();
        assert_eq!(got.map(|s| s.total_weight()), want, "star seed {seed}");
        let p = gen_random(n, seed as usize % 9, 25, 7000 + seed, Shape::Path).unwrap();
        let got = a_path(&Forest::whole(&p.tree), &p.pairs, &p.weights).unwrap();
        assert_eq!(got.map(|s| s.total_weight()), opt(&p, None), "path seed {seed}");
    }
}
