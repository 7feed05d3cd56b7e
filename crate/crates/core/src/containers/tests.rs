use super::*;
use crate::alpha::max_pattern_free_greedy;
use crate::constructions::gnp;
use crate::graph::Graph;
use crate::pattern::Pattern;

fn k3() -> Pattern {
    Pattern::clique(3).unwrap()
}

#[test]
fn low_degree_set_has_empty_high_part() {
    // triangle-free S with all internal degrees below Delta
    let g = gnp(30, 0.2, 4).unwrap();
    let s = max_pattern_free_greedy(&g, &k3(), 2);
    let params = ContainerParams::new(2.0, 5.0, ExBound::auto(k3())).unwrap();
    let cert = compute_container(&g, &s, &k3(), &params).unwrap();
    if s.iter().all(|v| (g.degree_in(v, s.bits()) as f64) < cert.delta) {
        assert!(cert.s_h.is_empty());
    }
    // threshold definition: S_h is exactly the >= Delta subset
    for v in s.iter() {
        assert_eq!(
            cert.s_h.contains(v),
            g.degree_in(v, s.bits()) as f64 >= cert.delta
        );
    }
}

#[test]
fn gnp60_certificate_passes_all_checks() {
    let g = gnp(60, 0.3, 7).unwrap();
    let s = max_pattern_free_greedy(&g, &k3(), 7);
    // d chosen above the hypothesis floor ln(60)/ex(|S|)
    let ex = ExBound::auto(k3());
    let d_min = (60f64).ln() / ex.eval(s.len()) as f64;
    let d = (d_min * 1.05).max(0.1);
    let params = ContainerParams::new(d, 20.0, ex).unwrap();
    let cert = compute_container(&g, &s, &k3(), &params).unwrap();
    let check = verify_certificate(&g, &s, &cert, &params);
    assert!(check.pass, "{check:?}");
}

#[test]
fn immediate_termination_when_r_covers_everything() {
    let g = Graph::complete(6);
    // S = one edge is K3-free
    let s = crate::graph::VertexSet::from_indices(6, [0, 1]);
    let params = ContainerParams::new(2.2, 10.0, ExBound::Table(vec![0, 0, 1, 2])).unwrap();
    let cert = compute_container(&g, &s, &k3(), &params).unwrap();
    assert_eq!(cert.k, 0);
    assert!(cert.t.is_empty());
    // C = A_0 = V \ S_h
    let mut expect = crate::graph::VertexSet::full(6);
    for v in cert.s_h.iter() {
        expect.remove(v);
    }
    assert_eq!(cert.c, expect);
}

#[test]
fn rejects_non_independent_s() {
    let g = Graph::complete(5);
    let s = crate::graph::VertexSet::from_indices(5, [0, 1, 2]);
    let params = ContainerParams::new(1.0, 2.0, ExBound::auto(k3())).unwrap();
    assert_eq!(
        compute_container(&g, &s, &k3(), &params).unwrap_err(),
        ContainerError::NotIndependent
    );
}

#[test]
fn rejects_hypothesis_violation() {
    let g = gnp(50, 0.3, 1).unwrap();
    let s = crate::graph::VertexSet::from_indices(50, [0]);
    // ex(1) = 0, so 0 * d < ln 50 always
    let params = ContainerParams::new(5.0, 10.0, ExBound::auto(k3())).unwrap();
    assert!(matches!(
        compute_container(&g, &s, &k3(), &params).unwrap_err(),
        ContainerError::HypothesisViolated { .. }
    ));
}

#[test]
fn reconstruction_reproduces_c_bit_for_bit() {
    for seed in 0..25u64 {
        let g = gnp(40, 0.35, seed).unwrap();
        let s = max_pattern_free_greedy(&g, &k3(), seed ^ 0xABCD);
        let ex = ExBound::auto(k3());
        let d = ((40f64).ln() / ex.eval(s.len()) as f64 * 1.1).max(0.15);
        let params = ContainerParams::new(d, 12.0, ex).unwrap();
        let cert = compute_container(&g, &s, &k3(), &params).unwrap();
        let c2 = reconstruct_container(&g, &cert.s_h, &cert.t, cert.s, &params).unwrap();
        assert_eq!(cert.c, c2, "seed {seed}");
    }
}

#[test]
fn fingerprint_collisions_share_containers() {
    // empty host: every choice step is a not-in-S removal unless the vertex
    // is in S, and distinct 2-sets avoiding the removal prefix collide on
    // the fingerprint (empty S_h, empty T, |S| = 2)
    let g = Graph::empty(8);
    let params = ContainerParams::new(2.1, 3.0, ExBound::Table(vec![0, 0, 1])).unwrap();
    let mut seen: Vec<(Vec<usize>, Vec<usize>, Vec<usize>)> = Vec::new();
    for a in 0..8usize {
        for b in (a + 1)..8 {
            let s = crate::graph::VertexSet::from_indices(8, [a, b]);
            let cert = compute_container(&g, &s, &k3(), &params).unwrap();
            seen.push((
                cert.s_h.to_sorted_vec(),
                cert.t.to_sorted_vec(),
                cert.c.to_sorted_vec(),
            ));
        }
    }
    let mut collisions = 0;
    for i in 0..seen.len() {
        for j in (i + 1)..seen.len() {
            if seen[i].0 == seen[j].0 && seen[i].1 == seen[j].1 {
                collisions += 1;
                assert_eq!(seen[i].2, seen[j].2, "same fingerprint, different C");
            }
        }
    }
    assert!(collisions > 0, "expected fingerprint collisions on the empty host");
}

#[test]
fn inconsistent_fingerprint_is_detected() {
    let g = gnp(30, 0.4, 2).unwrap();
    let s = max_pattern_free_greedy(&g, &k3(), 3);
    let ex = ExBound::auto(k3());
    let d = ((30f64).ln() / ex.eval(s.len()) as f64 * 1.2).max(0.2);
    let params = ContainerParams::new(d, 8.0, ex).unwrap();
    let cert = compute_container(&g, &s, &k3(), &params).unwrap();
    // corrupt the fingerprint with a vertex the replay will never consume:
    // anything inside the final container C stays in the arena to the end
    if let Some(v) = cert.c.iter().find(|&v| !cert.t.contains(v)) {
        let mut bad_t = cert.t.clone();
        bad_t.insert(v);
        let res = reconstruct_container(&g, &cert.s_h, &bad_t, cert.s, &params);
        assert!(
            matches!(res, Err(ContainerError::InconsistentFingerprint(_)))
                || res.is_ok_and(|c| c != cert.c)
        );
    }
}

#[test]
fn loop_invariants_on_random_instances() {
    for seed in 0..10u64 {
        let g = gnp(35, 0.3, seed).unwrap();
        let s = max_pattern_free_greedy(&g, &k3(), seed);
        let ex = ExBound::auto(k3());
        let d = ((35f64).ln() / ex.eval(s.len()) as f64 * 1.05).max(0.12);
        let params = ContainerParams::new(d, 10.0, ex).unwrap();
        let cert = compute_container(&g, &s, &k3(), &params).unwrap();
        let check = verify_certificate(&g, &s, &cert, &params);
        assert!(check.sizes_strictly_decreasing);
        assert!(check.t_counter_bound);
        assert!(check.coverage);
    }
}

#[test]
fn bad_params_rejected() {
    assert!(matches!(
        ContainerParams::new(0.0, 1.0, ExBound::auto(k3())),
        Err(ContainerError::BadDensity(_))
    ));
    assert!(matches!(
        ContainerParams::new(1.0, -1.0, ExBound::auto(k3())),
        Err(ContainerError::BadThreshold(_))
    ));
    let g = gnp(10, 0.5, 0).unwrap();
    let s = crate::graph::VertexSet::from_indices(10, [0, 1]);
    let params = ContainerParams::new(3.0, 2.0, ExBound::Table(vec![0, 0, 1]))
        .unwrap()
        .with_ordering(vec![0, 1, 2]); // wrong length
    assert_eq!(
        compute_container(&g, &s, &k3(), &params).unwrap_err(),
        ContainerError::BadOrdering
    );
}
