//! Randomized properties over fuzz-generated instances.

mod common;

use proptest::prelude::*;
use semicat::fuzz::{self, FuzzConfig};
use semicat::io::{self, Document};
use semicat::par;
use semicat_core::props::{solve_p, PMode, PSearch};

const MODES: [PMode; 3] = [PMode::Separable, PMode::NaturallySemifull, PMode::Semiseparable];

fn mode() -> impl Strategy<Value = PMode> {
    prop::sample::select(MODES.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn documents_round_trip(seed in any::<u64>()) {
        let inst = fuzz::instance(seed, 0, &FuzzConfig::default());
        let docs = [
            Document::Category(inst.category.clone()),
            Document::IdemNat(inst.idempotent.clone()),
            Document::Semifunctor(inst.semifunctor.clone()),
        ];
        for doc in docs {
            let text = io::render(&doc);
            let back = io::parse(text.as_bytes()).unwrap();
            prop_assert_eq!(io::render(&back), text);
            prop_assert_eq!(back, doc);
        }
    }

    #[test]
    fn solver_agrees_with_exhaustive_enumeration(seed in any::<u64>(), mode in mode()) {
        let f = fuzz::instance(seed, 0, &FuzzConfig::default()).semifunctor;
        let Some(naive) = common::naive_p_exists(&f, mode) else { return Ok(()) };
        let lib = solve_p(&f, mode);
        prop_assert_eq!(lib.is_some(), naive);
        if let Some(p) = lib {
            prop_assert!(common::naive_accepts(&f, mode, |x, y, d| p.value(x, y, d)));
        }
    }

    #[test]
    fn parallel_search_is_thread_independent(seed in any::<u64>(), mode in mode(), threads in 2usize..6) {
        let f = fuzz::instance(seed, 0, &FuzzConfig::default()).semifunctor;
        let search = PSearch::new(&f, mode);
        let sequential = search.first();
        let parallel = par::first_branch(search.root_branches(), threads, |i| search.first_in_branch(i));
        prop_assert_eq!(parallel, sequential);
    }

    #[test]
    fn par_map_matches_sequential(xs in prop::collection::vec(any::<u32>(), 0..64), threads in 1usize..8) {
        let seq: Vec<u64> = xs.iter().map(|&x| u64::from(x) * 3 + 1).collect();
        prop_assert_eq!(par::map(&xs, threads, |&x| u64::from(x) * 3 + 1), seq);
    }
}
