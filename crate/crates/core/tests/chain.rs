#![allow(clippy::needless_range_loop)]

mod common;

use common::*;
use symdyn::seed::stream;
use symdyn::*;

#[test]
fn components_match_closure_oracle() {
    let mut rng = stream(11, 0);
    for _ in 0..300 {
        let n = rand::Rng::gen_range(&mut rng, 1..=8);
        let g = random_graph(&mut rng, n, 0.2);
        let c = closure(&g);
        let comps = chain_components(&g);
        let mut expected: Vec<Vec<usize>> = Vec::new();
        let mut non = Vec::new();
        for v in 0..n {
            if !c[v][v] {
                non.push(v);
                continue;
            }
            if expected.iter().any(|cl| cl.contains(&v)) {
                continue;
            }
            expected.push((0..n).filter(|&w| c[v][w] && c[w][v]).collect());
        }
        assert_eq!(comps.components, expected);
        assert_eq!(comps.non_recurrent, non);
    }
}

#[test]
fn decomposition_is_lawful_and_period_divides_cycles() {
    let mut rng = stream(12, 0);
    for _ in 0..300 {
        let n = rand::Rng::gen_range(&mut rng, 1..=8);
        let g = random_strongly_connected(&mut rng, n);
        let all: Vec<usize> = (0..n).collect();
        let d = cyclic_decomposition(&all, &g).unwrap();
        let mut seen: Vec<usize> = d.classes.concat();
        seen.sort_unstable();
        assert_eq!(seen, all);
        for (u, v) in g.edges() {
            assert_eq!(d.class(v).unwrap(), (d.class(u).unwrap() + 1) % d.m);
        }
        let lens = cycle_lengths(&g);
        assert!(lens.iter().all(|l| l % d.m == 0));
        assert_eq!(lens.iter().fold(0, |a, &b| gcd(a, b)), d.m);
        assert_eq!(d.class(0), Some(0));
    }
}

#[test]
fn functional_cycles_rotate_classes() {
    let mut rng = stream(13, 0);
    for _ in 0..200 {
        let n = rand::Rng::gen_range(&mut rng, 1..=16);
        let f = random_functional(&mut rng, n);
        let g = delta_transition_graph(&f, 0.0).unwrap();
        for comp in chain_components(&g).components {
            let d = cyclic_decomposition(&comp, &g).unwrap();
            assert_eq!(d.m, comp.len());
            for i in 0..d.m {
                let mut image: Vec<usize> = d.classes[i].iter().map(|&p| f.image(p)).collect();
                image.sort_unstable();
                assert_eq!(image, d.classes[(i + 1) % d.m]);
            }
        }
    }
}

#[test]
fn equivalence_matches_walk_lengths_and_is_invariant() {
    let mut rng = stream(14, 0);
    for _ in 0..200 {
        let n = rand::Rng::gen_range(&mut rng, 1..=6);
        let g = random_strongly_connected(&mut rng, n);
        let all: Vec<usize> = (0..n).collect();
        let d = cyclic_decomposition(&all, &g).unwrap();
        let walks = walk_matrices(&g, 36);
        for x in 0..n {
            for y in 0..n {
                let eq = chain_equivalent(&g, &d, x, y).unwrap();
                let brute = (1..=36).any(|k| k % d.m == 0 && walks[k][x][y]);
                assert_eq!(eq, brute);
                assert_eq!(eq, chain_equivalent(&g, &d, y, x).unwrap());
                if eq {
                    for &a in g.successors(x) {
                        for &b in g.successors(y) {
                            assert!(chain_equivalent(&g, &d, a, b).unwrap());
                        }
                    }
                }
                for z in 0..n {
                    if eq && chain_equivalent(&g, &d, y, z).unwrap() {
                        assert!(chain_equivalent(&g, &d, x, z).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn proximal_and_mixing_on_sampled_six_vertex_graphs() {
    let mut rng = stream(15, 0);
    let mut checked = 0;
    while checked < 2000 {
        let mask: u64 = rand::Rng::gen::<u64>(&mut rng) & ((1 << 36) - 1);
        let g = graph_from_mask(6, mask);
        if !is_strongly_connected(&g) {
            continue;
        }
        checked += 1;
        let all: Vec<usize> = (0..6).collect();
        let d = cyclic_decomposition(&all, &g).unwrap();
        let mut all_equiv = true;
        for x in 0..6 {
            for y in 0..6 {
                let eq = chain_equivalent(&g, &d, x, y).unwrap();
                assert_eq!(chain_proximal(&g, x, y).unwrap(), eq);
                all_equiv &= eq;
            }
        }
        assert_eq!(is_chain_mixing(&g), is_chain_transitive(&g) && all_equiv);
    }
}

#[test]
fn uniform_bound_is_monotone_on_its_range() {
    let mut rng = stream(16, 0);
    for _ in 0..100 {
        let n = rand::Rng::gen_range(&mut rng, 1..=6);
        let g = random_strongly_connected(&mut rng, n);
        let all: Vec<usize> = (0..n).collect();
        let d = cyclic_decomposition(&all, &g).unwrap();
        let b = uniform_chain_bound(&g, &d).unwrap();
        assert!(b.holds_for_all_larger);
        let walks = walk_matrices(&g, b.l_max);
        for p in &b.pairs {
            for k in (b.m * b.n..=b.l_max).step_by(b.m) {
                assert!(walks[k][p.x][p.y]);
                let path = path_of_length(&g, p.x, p.y, k).unwrap();
                assert_eq!(path.len(), k + 1);
                assert!(path.windows(2).all(|w| g.has_edge(w[0], w[1])));
            }
            if b.n > 1 {
                let tight = b.pairs.iter().any(|q| !walks[b.m * (b.n - 1)][q.x][q.y]);
                assert!(tight);
            }
        }
    }
}

#[test]
fn paths_exist_exactly_when_walks_do() {
    let mut rng = stream(17, 0);
    for _ in 0..100 {
        let n = rand::Rng::gen_range(&mut rng, 1..=6);
        let g = random_graph(&mut rng, n, 0.3);
        let walks = walk_matrices(&g, 10);
        for x in 0..n {
            for y in 0..n {
                for k in 1..=10 {
                    assert_eq!(path_of_length(&g, x, y, k).is_some(), walks[k][x][y]);
                }
            }
        }
    }
}
