mod common;

use std::collections::HashSet;

use common::{brute_force_space, drain_generator, micro_biases};
use lff::constraints::HypothesisConstraint;
use lff::generator::{is_structurally_valid, new_generator, GeneratorConfig};
use lff::logic::{canonicalise, cost, Program};

#[test]
fn yields_match_brute_force() {
    for (name, bias, max_literals) in micro_biases() {
        let oracle = brute_force_space(&bias, max_literals);
        let yields = drain_generator(&bias, max_literals);
        let got: HashSet<Program> = yields.iter().map(canonicalise).collect();
        assert_eq!(got.len(), yields.len(), "{name}: duplicate yields");
        let missing: Vec<String> = oracle.difference(&got).take(5).map(|p| p.to_string()).collect();
        let extra: Vec<String> = got.difference(&oracle).take(5).map(|p| p.to_string()).collect();
        assert!(missing.is_empty() && extra.is_empty(), "{name}: missing {missing:#?}\nextra {extra:#?}");
        assert!(oracle.len() > 20, "{name}: space too small to be interesting");
    }
}

#[test]
fn costs_never_decrease_and_yields_are_valid() {
    for (name, bias, max_literals) in micro_biases() {
        let yields = drain_generator(&bias, max_literals);
        for w in yields.windows(2) {
            assert!(cost(&w[0]) <= cost(&w[1]), "{name}: {} then {}", w[0], w[1]);
        }
        for p in &yields {
            assert!(is_structurally_valid(&bias, p), "{name}: {p}");
            assert!(cost(p) <= max_literals);
        }
    }
}

#[test]
fn enumeration_is_deterministic() {
    for (_, bias, max_literals) in micro_biases() {
        assert_eq!(drain_generator(&bias, max_literals), drain_generator(&bias, max_literals));
    }
}

#[test]
fn constraints_only_remove_programs() {
    // Feeding specialisation constraints for every third yield must leave a
    // subsequence of the unconstrained order, minus exactly the violators.
    for (name, bias, max_literals) in micro_biases() {
        let full = drain_generator(&bias, max_literals);
        let mut g = new_generator(GeneratorConfig { bias: bias.clone(), max_literals });
        let mut added: Vec<HypothesisConstraint> = Vec::new();
        let mut seen = Vec::new();
        let mut i = 0;
        while let Some(p) = g.next_program() {
            if i % 3 == 0 {
                let c = HypothesisConstraint::Generalisation(p.clone());
                g.add_constraint(&c);
                added.push(c);
            }
            seen.push(p);
            i += 1;
        }
        let mut it = full.iter();
        for p in &seen {
            assert!(it.any(|q| q == p), "{name}: {p} out of order");
        }
        let seen_set: HashSet<&Program> = seen.iter().collect();
        for q in &full {
            if !seen_set.contains(q) {
                assert!(
                    added.iter().any(|c| lff::constraints::violates(c, q)),
                    "{name}: {q} dropped without a violated constraint"
                );
            }
        }
    }
}
