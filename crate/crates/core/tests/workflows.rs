use std::collections::BTreeSet;

use bstar_core::search::{max_bstar_exact, max_bstar_greedy, DEFAULT_BUDGET};
use bstar_core::setfamily::{check_al_is_l_system, check_def_bound, solution_family};
use bstar_core::structure::{good_exponent_set, lemma_decompose, verify_decomposition};
use bstar_core::suite::{random_planted_set, run_suite};
use bstar_core::{bound_table, oracle, Decomposition, Exact, IntegerSet, Limits, SetFamily};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn lim() -> Limits {
    Limits::default()
}

#[test]
fn decomposition_certificate_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let a = random_planted_set(&mut rng, 3, 30, 2..=2);
    let d = lemma_decompose(&a, 3, &lim()).unwrap();
    let text = serde_json::to_string(&d).unwrap();
    let back: Decomposition = serde_json::from_str(&text).unwrap();
    assert_eq!(back, d);
    assert!(verify_decomposition(&back, &lim()).unwrap().passed());
}

#[test]
fn tampered_certificate_is_rejected() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let a = random_planted_set(&mut rng, 3, 30, 2..=2);
    let mut d = lemma_decompose(&a, 3, &lim()).unwrap();
    let extra = d.input.iter().find(|v| !d.b_set.contains(*v));
    if let Some(v) = extra {
        d.b_set = d.b_set.union(&IntegerSet::from_values([v]));
    } else {
        d.b_set = IntegerSet::from_values(d.b_set.iter().skip(1));
    }
    assert!(!verify_decomposition(&d, &lim()).unwrap().passed());
}

#[test]
fn search_agrees_with_subset_oracle() {
    let oracle = oracle::max_bstar_by_subsets(14, 2);
    for n in 1..=14u64 {
        let r = max_bstar_exact(n, 2, DEFAULT_BUDGET, &lim()).unwrap();
        assert!(r.exact);
        assert_eq!(r.best_size, oracle[n as usize - 1], "N = {n}");
        assert!(max_bstar_greedy(n, 2, &lim()).unwrap().best_size <= r.best_size);
    }
}

#[test]
fn exact_witness_is_lexicographically_smallest() {
    // all extremal sets of [9] by brute force
    let target = max_bstar_exact(9, 2, DEFAULT_BUDGET, &lim()).unwrap();
    let mut best: Option<Vec<i64>> = None;
    for mask in 0u32..1 << 9 {
        let v: Vec<i64> = (0..9)
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| b + 1)
            .collect();
        let s = IntegerSet::from_values(v.iter().copied());
        if v.len() == target.best_size && bstar_core::is_b_star_k(&s, 2, &lim()).unwrap().holds {
            best = Some(best.map_or(v.clone(), |b| b.min(v)));
        }
    }
    assert_eq!(target.witness.elements(), best.unwrap().as_slice());
}

#[test]
fn family_from_file_format() {
    let f =
        SetFamily::from_json(r#"{"ground":[1,2,3,4,5],"members":[[1,2],[3,4],[1,5]]}"#).unwrap();
    let allowed: BTreeSet<usize> = [0, 1].into();
    let r = check_def_bound(&f, &allowed).unwrap();
    assert!(r.passed());
    assert_eq!(r.get("bound"), Some(&Exact::int(10)));
}

#[test]
fn solution_family_on_a_planted_set() {
    let b = IntegerSet::from_values([1, 2, 3, 4, 100, 1000, 10_000]);
    let b_prime = IntegerSet::from_values([1, 4, 100]);
    let f = solution_family(&b, &b_prime, 2, &lim()).unwrap();
    assert_eq!(f.members(), &[vec![1, 2, 3, 4]]);
    let (_, bad) = good_exponent_set(&b, 4, &lim()).unwrap();
    assert!(bad.contains(&2));
    let r = check_al_is_l_system(&b, &b_prime, 2, &bad, 4, &lim()).unwrap();
    assert!(r.passed(), "{:?}", r.failures());
}

#[test]
fn bound_rows_round_outward() {
    let t = bound_table(&[2, 3, 10, 99], &[1, 2, 3], 4).unwrap();
    for row in &t.rows {
        let up = row.main_bound.rounded();
        let down = row.timmons_lower.rounded();
        assert!(row.main_bound.surd.round_down(30) <= up);
        assert!(row.timmons_lower.surd.round_up(30) >= down);
    }
}

#[test]
fn suite_subset_is_deterministic() {
    let a = run_suite(5, &[1, 2, 9], &lim()).unwrap();
    let b = run_suite(5, &[1, 2, 9], &lim()).unwrap();
    assert_eq!(a.criteria, b.criteria);
    assert!(a.passed);
}
