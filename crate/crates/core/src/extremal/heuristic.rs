use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{finish, ConfigHypergraph, ExtremalError, Instance, SearchMode, SearchResult};

/// Greedy insertion in random order followed by (1,2)-swaps: drop one member
/// whenever that lets two others in.
fn improve(hyper: &ConfigHypergraph, chosen: &mut [bool], rng: &mut ChaCha8Rng, nodes: &mut u64) {
    let mut order: Vec<usize> = (0..hyper.items).collect();
    loop {
        let mut improved = false;
        let mut members: Vec<usize> = (0..hyper.items).filter(|&i| chosen[i]).collect();
        members.shuffle(rng);
        for x in members {
            if !chosen[x] {
                continue;
            }
            chosen[x] = false;
            order.shuffle(rng);
            let mut added = Vec::new();
            for &y in &order {
                *nodes += 1;
                if y != x && !chosen[y] && !hyper.completes(chosen, y) {
                    chosen[y] = true;
                    added.push(y);
                }
            }
            if added.len() >= 2 {
                improved = true;
            } else {
                added.iter().for_each(|&y| chosen[y] = false);
                chosen[x] = true;
            }
        }
        if !improved {
            break;
        }
    }
}

/// A large configuration-free set from `iterations` seeded random restarts.
/// The result is re-verified by the brute-force finder and never exceeds the
/// exact optimum.
pub fn max_free_heuristic(
    inst: &Instance<'_>,
    iterations: usize,
    seed: u64,
) -> Result<SearchResult, ExtremalError> {
    if iterations == 0 {
        return Err(ExtremalError::InvalidParameter(
            "at least one iteration is required".into(),
        ));
    }
    let hyper = ConfigHypergraph::build(inst)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Vec<usize> = Vec::new();
    let mut nodes = 0u64;
    let mut order: Vec<usize> = (0..hyper.items).collect();
    for _ in 0..iterations {
        let mut chosen = vec![false; hyper.items];
        order.shuffle(&mut rng);
        for &i in &order {
            nodes += 1;
            if !hyper.completes(&chosen, i) {
                chosen[i] = true;
            }
        }
        improve(&hyper, &mut chosen, &mut rng, &mut nodes);
        let set: Vec<usize> = (0..hyper.items).filter(|&i| chosen[i]).collect();
        if set.len() > best.len() {
            best = set;
        }
        if best.len() == hyper.items {
            break;
        }
    }
    finish(inst, SearchMode::Heuristic, &best, false, nodes)
}
