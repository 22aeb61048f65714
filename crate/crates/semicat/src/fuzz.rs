//! Seeded random instances.
//!
//! Categories are generated concretely: objects are small finite sets,
//! morphisms are functions, and a few random generators are closed under
//! composition. Every finite category arises this way up to isomorphism, so
//! rejection on size is the only bias besides the size caps.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use semicat_core::kernel::MorphismRecord;
use semicat_core::semifunctor::enumerate_semifunctors;
use semicat_core::{FinCategory, IdemNatTransf, Mor, Obj, Semifunctor};
use std::collections::HashMap;
use std::sync::Arc;

pub use rand::SeedableRng;

pub type FuzzRng = ChaCha8Rng;

pub fn rng(seed: u64) -> FuzzRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FuzzConfig {
    pub max_objects: usize,
    /// Including identities.
    pub max_morphisms: usize,
    /// Largest carrier set of an object.
    pub max_set_size: usize,
    pub max_generators: usize,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig { max_objects: 2, max_morphisms: 6, max_set_size: 3, max_generators: 3 }
    }
}

type Arrow = (usize, usize, Vec<usize>);

/// A random category within the size caps of `cfg`.
pub fn random_category(rng: &mut FuzzRng, cfg: &FuzzConfig) -> Arc<FinCategory> {
    loop {
        if let Some(c) = attempt(rng, cfg) {
            return Arc::new(c);
        }
    }
}

fn attempt(rng: &mut FuzzRng, cfg: &FuzzConfig) -> Option<FinCategory> {
    let n = rng.gen_range(1..=cfg.max_objects.min(cfg.max_morphisms));
    let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=cfg.max_set_size)).collect();
    let mut arrows: Vec<Arrow> = (0..n).map(|x| (x, x, (0..sizes[x]).collect())).collect();
    let mut index: HashMap<Arrow, usize> = arrows.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
    for _ in 0..rng.gen_range(0..=cfg.max_generators) {
        let (s, t) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if sizes[s] > 0 && sizes[t] == 0 {
            continue;
        }
        let a = (s, t, (0..sizes[s]).map(|_| rng.gen_range(0..sizes[t])).collect());
        if !index.contains_key(&a) {
            index.insert(a.clone(), arrows.len());
            arrows.push(a);
        }
    }
    // close under composition
    let mut table: HashMap<(usize, usize), usize> = HashMap::new();
    let mut done = false;
    while !done {
        done = true;
        for g in 0..arrows.len() {
            for f in 0..arrows.len() {
                if arrows[g].0 != arrows[f].1 || table.contains_key(&(g, f)) {
                    continue;
                }
                let h: Arrow = (arrows[f].0, arrows[g].1, arrows[f].2.iter().map(|&i| arrows[g].2[i]).collect());
                let k = match index.get(&h) {
                    Some(&k) => k,
                    None => {
                        if arrows.len() == cfg.max_morphisms {
                            return None;
                        }
                        index.insert(h.clone(), arrows.len());
                        arrows.push(h);
                        done = false;
                        arrows.len() - 1
                    }
                };
                table.insert((g, f), k);
            }
        }
    }
    let objects = (0..n).map(|x| char::from(b'A' + x as u8).to_string()).collect();
    let records = arrows
        .iter()
        .enumerate()
        .map(|(i, a)| MorphismRecord {
            id: if i < n { format!("id{}", char::from(b'A' + i as u8)) } else { format!("m{}", i - n + 1) },
            src: Obj(a.0),
            dst: Obj(a.1),
        })
        .collect();
    let c = FinCategory::assemble(objects, records, (0..n).map(Mor).collect(), |g, f| {
        table.get(&(g.0, f.0)).map(|&h| Mor(h))
    })
    .ok()?;
    debug_assert!(c.check_axioms().is_ok());
    Some(c)
}

/// A uniformly chosen semifunctor among the first `limit` enumerated.
pub fn random_semifunctor(
    rng: &mut FuzzRng,
    c: &Arc<FinCategory>,
    d: &Arc<FinCategory>,
    limit: usize,
) -> Option<Semifunctor> {
    enumerate_semifunctors(c, d, limit).choose(rng).cloned()
}

pub fn random_idempotent(rng: &mut FuzzRng, c: &Arc<FinCategory>) -> IdemNatTransf {
    IdemNatTransf::enumerate(c).choose(rng).cloned().expect("the identity is always available")
}

/// One fuzz instance: a category, an idempotent natural transformation on
/// it, and a semifunctor out of it.
#[derive(Clone, Debug)]
pub struct Instance {
    pub category: Arc<FinCategory>,
    pub idempotent: IdemNatTransf,
    pub semifunctor: Semifunctor,
}

/// Instance `i` of the stream seeded by `seed`; independent of other indices
/// so instances can be generated in parallel.
pub fn instance(seed: u64, i: u64, cfg: &FuzzConfig) -> Instance {
    let mut r = rng(seed ^ i.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let category = random_category(&mut r, cfg);
    let idempotent = random_idempotent(&mut r, &category);
    let target = if r.gen_bool(0.3) { category.clone() } else { random_category(&mut r, cfg) };
    let semifunctor = random_semifunctor(&mut r, &category, &target, 64)
        .expect("a category with objects receives at least the constant functors");
    Instance { category, idempotent, semifunctor }
}
