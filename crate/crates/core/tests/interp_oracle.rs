mod common;

use std::time::Duration;

use common::{forward_chain, interp_instance, interp_mismatches, oracle_atom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn sld_agrees_with_forward_chaining() {
    let (bad, slowest) = interp_mismatches(1000, 8);
    assert!(bad.is_empty(), "{} mismatches, first:\n{}", bad.len(), bad[0]);
    assert!(slowest <= Duration::from_millis(110), "{slowest:?}");
}

#[test]
fn instances_are_not_trivial() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut yes, mut no, mut recursive) = (0, 0, 0);
    for _ in 0..300 {
        let inst = interp_instance(&mut rng);
        let model = forward_chain(&inst.rules);
        for g in &inst.goals {
            if model.contains(&oracle_atom(g)) {
                yes += 1;
            } else {
                no += 1;
            }
        }
        recursive += inst.program.lines().any(|l| {
            let (head, body) = l.split_once(":-").unwrap();
            body.contains(&head[..head.find('(').unwrap()])
        }) as usize;
    }
    assert!(yes > 50 && no > 50 && recursive > 50, "{yes} {no} {recursive}");
}
