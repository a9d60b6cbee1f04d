#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use adjoint_kit::{Elem, FiniteLattice, LatticeMap};
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn scenario_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("scenarios")
        .join(name)
}

pub fn scenario_text(name: &str) -> String {
    std::fs::read_to_string(scenario_path(name)).unwrap()
}

pub fn powerset(n: usize) -> Arc<FiniteLattice> {
    let worlds: Vec<String> = (0..n).map(|i| format!("w{i}")).collect();
    Arc::new(FiniteLattice::powerset(&worlds).unwrap())
}

/// A union-closed family of subsets of `bits` base points, ordered by
/// inclusion; always a lattice, often non-distributive.
pub fn random_lattice(rng: &mut impl Rng, max_elems: usize) -> Arc<FiniteLattice> {
    loop {
        let bits = rng.gen_range(1..=5u32);
        let mut family: Vec<u32> = vec![0];
        for _ in 0..rng.gen_range(1..=6) {
            let s = rng.gen_range(1..(1u32 << bits));
            let mut grown = family.clone();
            for &f in &family {
                grown.push(f | s);
            }
            grown.sort_unstable();
            grown.dedup();
            family = grown;
        }
        if family.len() > max_elems {
            continue;
        }
        let labels: Vec<String> = family.iter().map(|s| format!("s{s}")).collect();
        let mut pairs = Vec::new();
        for (i, &a) in family.iter().enumerate() {
            for (j, &b) in family.iter().enumerate() {
                if i != j && a & b == a {
                    pairs.push((labels[i].clone(), labels[j].clone()));
                }
            }
        }
        return Arc::new(FiniteLattice::build_from_order(&labels, &pairs).unwrap());
    }
}

/// `x ↦ ⊥` when `x ≤ a`, `b` otherwise.
fn step(l: &Arc<FiniteLattice>, a: Elem, b: Elem) -> LatticeMap {
    LatticeMap::from_fn(l, |x| if l.leq(x, a) { l.bottom() } else { b }).unwrap()
}

/// A random join-preserving map: a random generator assignment when it
/// extends, otherwise a join of step maps (each of which preserves joins).
pub fn random_join_map(rng: &mut impl Rng, l: &Arc<FiniteLattice>) -> LatticeMap {
    let elems: Vec<Elem> = l.elements().collect();
    for _ in 0..4 {
        let gens: Vec<(Elem, Elem)> = l
            .join_irreducibles()
            .iter()
            .map(|&j| (j, *elems.choose(rng).unwrap()))
            .collect();
        if let Ok(f) = LatticeMap::from_generators(l, &gens) {
            return f;
        }
    }
    let mut f = LatticeMap::constant(l, l.bottom())
        .unwrap()
        .into_join_preserving()
        .unwrap();
    for _ in 0..rng.gen_range(1..=4) {
        let s = step(l, *elems.choose(rng).unwrap(), *elems.choose(rng).unwrap());
        f = f.pointwise_join(&s).unwrap();
    }
    f.into_join_preserving().unwrap()
}

/// Decreasing and weakly idempotent: the join of the kept join-irreducibles
/// below `x`, for a random set of kept ones. `None` when that assignment does
/// not preserve joins on this carrier.
pub fn random_interior_map(rng: &mut impl Rng, l: &Arc<FiniteLattice>) -> Option<LatticeMap> {
    let irr = l.join_irreducibles();
    let keep: Vec<Elem> = irr.iter().copied().filter(|_| rng.gen_bool(0.6)).collect();
    let below = |j: Elem| l.join_all(keep.iter().copied().filter(|&k| l.leq(k, j)));
    let gens: Vec<(Elem, Elem)> = irr.iter().map(|&j| (j, below(j))).collect();
    LatticeMap::from_generators(l, &gens).ok()
}

/// Greatest element of `{x | f(x) ≤ b}` found by comparing candidates with
/// `leq` only.
pub fn oracle_right_adjoint(f: &LatticeMap, b: Elem) -> Elem {
    let l = f.lattice();
    let below: Vec<Elem> = l.elements().filter(|&x| l.leq(f.apply(x), b)).collect();
    *below
        .iter()
        .find(|&&x| below.iter().all(|&y| l.leq(y, x)))
        .expect("a join-preserving map has a right adjoint")
}

/// Least element of `{x | b ≤ g(x)}`.
pub fn oracle_left_adjoint(g: &LatticeMap, b: Elem) -> Elem {
    let l = g.lattice();
    let above: Vec<Elem> = l.elements().filter(|&x| l.leq(b, g.apply(x))).collect();
    *above
        .iter()
        .find(|&&x| above.iter().all(|&y| l.leq(x, y)))
        .expect("a meet-preserving map has a left adjoint")
}

/// Boolean complement on a powerset carrier, by bit flipping.
pub fn flip(l: &FiniteLattice, x: Elem) -> Elem {
    Elem::new(!x.index() & l.top().index())
}
