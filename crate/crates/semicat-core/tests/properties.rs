//! Randomized laws over the gallery categories and semifunctors sampled
//! between them.

use proptest::prelude::*;
use semicat_core::audit::{audit_composable, audit_idempotent, audit_semifunctor, Audit};
use semicat_core::gallery::{self, GalleryConfig};
use semicat_core::props::{is_faithful, is_semifull, solve_p, PMode};
use semicat_core::semifunctor::{compose_semifunctors, enumerate_semifunctors};
use semicat_core::{FinCategory, IdemNatTransf, Mor, Semifunctor};
use std::sync::{Arc, OnceLock};

const ENUMERATION_LIMIT: usize = 32;
const AUDIT_CAP: usize = 64;

/// Gallery categories small enough for exhaustive searches in a test loop.
fn categories() -> &'static [Arc<FinCategory>] {
    static CATS: OnceLock<Vec<Arc<FinCategory>>> = OnceLock::new();
    CATS.get_or_init(|| {
        let entries = gallery::build_all(&GalleryConfig::default()).expect("gallery builds");
        gallery::all_categories(&entries).into_iter().filter(|c| c.num_morphisms() <= 12).collect()
    })
}

fn pick<T: Clone>(xs: &[T], i: usize) -> Option<T> {
    (!xs.is_empty()).then(|| xs[i % xs.len()].clone())
}

fn sampled(ci: usize, di: usize, k: usize) -> Option<Semifunctor> {
    let cats = categories();
    let (c, d) = (&cats[ci % cats.len()], &cats[di % cats.len()]);
    pick(&enumerate_semifunctors(c, d, ENUMERATION_LIMIT), k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn composition_is_associative_and_unital(ci in any::<usize>(), a in any::<usize>(), b in any::<usize>(), z in any::<usize>()) {
        let cats = categories();
        let c = &cats[ci % cats.len()];
        let f = Mor(a % c.num_morphisms());
        let g = pick(c.starting_at(c.dst(f)), b).unwrap();
        let h = pick(c.starting_at(c.dst(g)), z).unwrap();
        prop_assert_eq!(c.compose(h, c.compose(g, f)), c.compose(c.compose(h, g), f));
        prop_assert_eq!(c.compose(f, c.id(c.src(f))), f);
        prop_assert_eq!(c.compose(c.id(c.dst(f)), f), f);
    }

    #[test]
    fn sampled_semifunctors_preserve_composition(ci in any::<usize>(), di in any::<usize>(), k in any::<usize>(), a in any::<usize>(), b in any::<usize>()) {
        let Some(f) = sampled(ci, di, k) else { return Ok(()) };
        let (c, d) = (f.source(), f.target());
        let m = Mor(a % c.num_morphisms());
        let n = pick(c.starting_at(c.dst(m)), b).unwrap();
        prop_assert_eq!(f.mor(c.compose(n, m)), d.compose(f.mor(n), f.mor(m)));
        prop_assert!(d.is_idempotent(f.image_identity(c.src(m))));
    }

    #[test]
    fn sampled_semifunctors_pass_the_audit(ci in any::<usize>(), di in any::<usize>(), k in any::<usize>()) {
        let Some(f) = sampled(ci, di, k) else { return Ok(()) };
        let mut audit = Audit::new(AUDIT_CAP);
        audit_semifunctor(&mut audit, &f);
        prop_assert!(audit.is_clean(), "{:?}", audit.violations);
    }

    #[test]
    fn mode_solutions_imply_their_weak_forms(ci in any::<usize>(), di in any::<usize>(), k in any::<usize>()) {
        let Some(f) = sampled(ci, di, k) else { return Ok(()) };
        let sep = solve_p(&f, PMode::Separable);
        let nsf = solve_p(&f, PMode::NaturallySemifull);
        let ss = solve_p(&f, PMode::Semiseparable);
        for (sol, mode) in [(&sep, PMode::Separable), (&nsf, PMode::NaturallySemifull), (&ss, PMode::Semiseparable)] {
            if let Some(p) = sol {
                prop_assert_eq!(p.check(mode), Ok(()));
            }
        }
        prop_assert!(sep.is_none() || (is_faithful(&f) && ss.is_some()));
        prop_assert!(nsf.is_none() || (is_semifull(&f) && ss.is_some()));
        prop_assert_eq!(sep.is_some(), ss.is_some() && is_faithful(&f));
        prop_assert_eq!(nsf.is_some(), ss.is_some() && is_semifull(&f));
    }

    #[test]
    fn composites_of_sampled_semifunctors(ci in any::<usize>(), di in any::<usize>(), ei in any::<usize>(), k in any::<usize>(), l in any::<usize>()) {
        let Some(f) = sampled(ci, di, k) else { return Ok(()) };
        let cats = categories();
        let Some(g) = pick(&enumerate_semifunctors(f.target(), &cats[ei % cats.len()], ENUMERATION_LIMIT), l) else { return Ok(()) };
        let gf = compose_semifunctors(&g, &f).unwrap();
        prop_assert!(f.source().morphisms().all(|m| gf.mor(m) == g.mor(f.mor(m))));
        let mut audit = Audit::new(AUDIT_CAP);
        audit_composable(&mut audit, &f, &g);
        prop_assert!(audit.is_clean(), "{:?}", audit.violations);
    }

    #[test]
    fn idempotents_pass_the_audit(ci in any::<usize>(), k in any::<usize>()) {
        let cats = categories();
        let c = &cats[ci % cats.len()];
        let e: IdemNatTransf = pick(&IdemNatTransf::enumerate(c), k).expect("the identity is always present");
        let mut audit = Audit::new(AUDIT_CAP);
        audit_idempotent(&mut audit, &e);
        prop_assert!(audit.is_clean(), "{:?}", audit.violations);
    }
}
