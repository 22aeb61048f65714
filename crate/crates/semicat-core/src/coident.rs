//! The coidentifier `C_e` of an idempotent natural transformation `e`:
//! `f ∼ g` iff `e_Y∘f = e_Y∘g`. Comes with the quotient functor `H: C → C_e`
//! and the semifunctor `L: C_e → C`, `L(f̄) = e_Y∘f`, with `HL = Id`,
//! `LH = Eᵉ` and `L ⊣ₛ H`.

use crate::kernel::{FinCategory, Mor, MorphismRecord, Obj};
use crate::semiadj::Semiadjunction;
use crate::semifunctor::{IdemNatTransf, Semifunctor};
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

#[derive(Clone, Debug)]
pub struct Coidentifier {
    e: IdemNatTransf,
    cat: Arc<FinCategory>,
    h: Semifunctor,
    l: Semifunctor,
}

/// Builds `C_e`. Each class is represented by its least morphism `f`, named
/// `f~`; objects keep their names.
pub fn coidentifier(e: &IdemNatTransf) -> Coidentifier {
    let c = e.base().clone();
    let objects = c.objects().map(|x| c.obj_name(x).into()).collect();
    // class[f] = index in C_e; rep[i] = least member of class i
    let mut class = alloc::vec![Mor(0); c.num_morphisms()];
    let mut rep: Vec<Mor> = Vec::new();
    for f in c.morphisms() {
        let ey = e.component(c.dst(f));
        let key = c.compose(ey, f);
        let hit = rep.iter().position(|&r| c.src(r) == c.src(f) && c.dst(r) == c.dst(f) && c.compose(ey, r) == key);
        class[f.0] = Mor(hit.unwrap_or_else(|| {
            rep.push(f);
            rep.len() - 1
        }));
    }
    let morphisms: Vec<MorphismRecord> = rep
        .iter()
        .map(|&r| MorphismRecord { id: format!("{}~", c.mor_name(r)), src: c.src(r), dst: c.dst(r) })
        .collect();
    let identity = c.objects().map(|x| class[c.id(x).0]).collect();
    let cat = FinCategory::assemble(objects, morphisms, identity, |g, f| {
        c.try_compose(rep[g.0], rep[f.0]).map(|h| class[h.0])
    })
    .expect("quotient of a valid category");
    // independence of representatives
    for g in c.morphisms() {
        for &f in c.ending_at(c.src(g)) {
            debug_assert_eq!(cat.compose(class[g.0], class[f.0]), class[c.compose(g, f).0]);
        }
    }
    debug_assert!(cat.check_axioms().is_ok());
    let cat = Arc::new(cat);
    let objs: Vec<Obj> = c.objects().collect();
    let h = Semifunctor::new(c.clone(), cat.clone(), objs.clone(), class).expect("quotient functor");
    let l_map = rep.iter().map(|&r| c.compose(e.component(c.dst(r)), r)).collect();
    let l = Semifunctor::new(cat.clone(), c.clone(), objs, l_map).expect("L preserves composition");
    Coidentifier { e: e.clone(), cat, h, l }
}

impl Coidentifier {
    pub fn cat(&self) -> &Arc<FinCategory> {
        &self.cat
    }
    /// `H: C → C_e`
    pub fn quotient(&self) -> &Semifunctor {
        &self.h
    }
    /// `L: C_e → C`
    pub fn section(&self) -> &Semifunctor {
        &self.l
    }
    /// `L ⊣ₛ H` with unit the identity classes and counit `e`.
    pub fn semiadjunction(&self) -> Semiadjunction {
        let unit = self.cat.objects().map(|x| self.cat.id(x)).collect();
        Semiadjunction::new(self.l.clone(), self.h.clone(), unit, self.e.components().to_vec())
            .expect("L ⊣ H is a semiadjunction")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::cats::{m3, split_pair, walking_idempotent};
    use crate::props::{is_naturally_semifull, is_semifully_faithful, is_separable};
    use crate::semifunctor::{canonical_e, compose_semifunctors};
    use alloc::vec;

    #[test]
    fn sizes() {
        let w = walking_idempotent();
        let q = coidentifier(&IdemNatTransf::new(w.clone(), vec![w.mor("u").unwrap()]).unwrap());
        assert_eq!(q.cat().num_morphisms(), 1);
        assert_eq!(q.cat().mor_name(Mor(0)), "id~");
        let m = m3();
        let q = coidentifier(&IdemNatTransf::new(m.clone(), vec![m.mor("e").unwrap()]).unwrap());
        assert_eq!(q.cat().num_morphisms(), 2);
        let q = coidentifier(&IdemNatTransf::identity(m.clone()));
        assert_eq!(q.cat().num_morphisms(), 3);
        assert!(q.quotient().is_functor() && q.section().is_functor());
    }

    #[test]
    fn hl_lh_and_adjunction() {
        for c in [walking_idempotent(), m3(), split_pair()] {
            for e in IdemNatTransf::enumerate(&c) {
                let q = coidentifier(&e);
                let hl = compose_semifunctors(q.quotient(), q.section()).unwrap();
                assert_eq!(hl, Semifunctor::identity(q.cat().clone()));
                assert_eq!(compose_semifunctors(q.section(), q.quotient()).unwrap(), canonical_e(&e));
                assert!(q.quotient().is_functor());
                let l = q.section();
                assert!(is_separable(l) && is_naturally_semifull(l) && is_semifully_faithful(l));
                let _ = q.semiadjunction();
            }
        }
    }
}
