//! Semifunctors: maps of finite categories that preserve composition but
//! not necessarily identities, plus idempotent natural transformations
//! `Id → Id` and the semifunctors `Eᵉ` and constant semifunctors built from them.

use crate::kernel::{FinCategory, Mor, Obj};
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SemifunctorError {
    #[error("map sizes do not match the source category")]
    MapSize,
    #[error("image of `{0}` has the wrong endpoints")]
    EndpointMismatch(String),
    #[error("composition not preserved on {g}∘{f}")]
    CompositionNotPreserved { g: String, f: String },
    #[error("target of the first semifunctor is not the source of the second")]
    SourceTargetMismatch,
    #[error("`{0}` is not idempotent")]
    NotIdempotent(String),
    #[error("component family is not natural at `{0}`")]
    NotNatural(String),
    #[error("component at `{0}` is not an endomorphism")]
    BadComponent(String),
}

/// A semifunctor between two finite categories.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semifunctor {
    source: Arc<FinCategory>,
    target: Arc<FinCategory>,
    obj_map: Vec<Obj>,
    mor_map: Vec<Mor>,
}

impl Semifunctor {
    /// Validates endpoint coherence and preservation of composition.
    pub fn new(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        obj_map: Vec<Obj>,
        mor_map: Vec<Mor>,
    ) -> Result<Self, SemifunctorError> {
        if obj_map.len() != source.num_objects()
            || mor_map.len() != source.num_morphisms()
            || obj_map.iter().any(|o| o.0 >= target.num_objects())
            || mor_map.iter().any(|m| m.0 >= target.num_morphisms())
        {
            return Err(SemifunctorError::MapSize);
        }
        for f in source.morphisms() {
            let img = mor_map[f.0];
            if target.src(img) != obj_map[source.src(f).0] || target.dst(img) != obj_map[source.dst(f).0] {
                return Err(SemifunctorError::EndpointMismatch(source.mor_name(f).into()));
            }
        }
        for f in source.morphisms() {
            for &g in source.starting_at(source.dst(f)) {
                if mor_map[source.compose(g, f).0] != target.compose(mor_map[g.0], mor_map[f.0]) {
                    return Err(SemifunctorError::CompositionNotPreserved {
                        g: source.mor_name(g).into(),
                        f: source.mor_name(f).into(),
                    });
                }
            }
        }
        Ok(Semifunctor { source, target, obj_map, mor_map })
    }

    pub(crate) fn new_unchecked(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        obj_map: Vec<Obj>,
        mor_map: Vec<Mor>,
    ) -> Self {
        debug_assert!(Semifunctor::new(source.clone(), target.clone(), obj_map.clone(), mor_map.clone()).is_ok());
        Semifunctor { source, target, obj_map, mor_map }
    }

    /// The identity functor on `c`.
    pub fn identity(c: Arc<FinCategory>) -> Self {
        let obj_map = c.objects().collect();
        let mor_map = c.morphisms().collect();
        Semifunctor { source: c.clone(), target: c, obj_map, mor_map }
    }

    pub fn source(&self) -> &Arc<FinCategory> {
        &self.source
    }
    pub fn target(&self) -> &Arc<FinCategory> {
        &self.target
    }
    pub fn obj(&self, x: Obj) -> Obj {
        self.obj_map[x.0]
    }
    pub fn mor(&self, f: Mor) -> Mor {
        self.mor_map[f.0]
    }
    pub fn obj_map(&self) -> &[Obj] {
        &self.obj_map
    }
    pub fn mor_map(&self) -> &[Mor] {
        &self.mor_map
    }

    /// `F(Id_X)`, always idempotent.
    pub fn image_identity(&self, x: Obj) -> Mor {
        self.mor(self.source.id(x))
    }

    /// `X ↦ F(Id_X)` for every object.
    pub fn image_identities(&self) -> Vec<Mor> {
        self.source.objects().map(|x| self.image_identity(x)).collect()
    }

    /// True iff `F(Id_X) = Id_{FX}` for all `X`.
    pub fn is_functor(&self) -> bool {
        self.source.objects().all(|x| self.image_identity(x) == self.target.id(self.obj(x)))
    }
}

/// `G ∘ F`.
pub fn compose_semifunctors(g: &Semifunctor, f: &Semifunctor) -> Result<Semifunctor, SemifunctorError> {
    if f.target != g.source {
        return Err(SemifunctorError::SourceTargetMismatch);
    }
    Ok(Semifunctor {
        source: f.source.clone(),
        target: g.target.clone(),
        obj_map: f.obj_map.iter().map(|&x| g.obj(x)).collect(),
        mor_map: f.mor_map.iter().map(|&m| g.mor(m)).collect(),
    })
}

/// An idempotent natural transformation `e: Id_C → Id_C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdemNatTransf {
    base: Arc<FinCategory>,
    components: Vec<Mor>,
}

impl IdemNatTransf {
    /// Validates idempotency and naturality (`f ∘ e_X = e_Y ∘ f`).
    pub fn new(base: Arc<FinCategory>, components: Vec<Mor>) -> Result<Self, SemifunctorError> {
        if components.len() != base.num_objects() || components.iter().any(|m| m.0 >= base.num_morphisms()) {
            return Err(SemifunctorError::MapSize);
        }
        for x in base.objects() {
            let e = components[x.0];
            if base.src(e) != x || base.dst(e) != x {
                return Err(SemifunctorError::BadComponent(base.obj_name(x).into()));
            }
            if !base.is_idempotent(e) {
                return Err(SemifunctorError::NotIdempotent(base.mor_name(e).into()));
            }
        }
        for f in base.morphisms() {
            let (ex, ey) = (components[base.src(f).0], components[base.dst(f).0]);
            if base.compose(f, ex) != base.compose(ey, f) {
                return Err(SemifunctorError::NotNatural(base.mor_name(f).into()));
            }
        }
        Ok(IdemNatTransf { base, components })
    }

    pub fn identity(base: Arc<FinCategory>) -> Self {
        let components = base.objects().map(|x| base.id(x)).collect();
        IdemNatTransf { base, components }
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        &self.base
    }
    pub fn component(&self, x: Obj) -> Mor {
        self.components[x.0]
    }
    pub fn components(&self) -> &[Mor] {
        &self.components
    }
    pub fn is_identity(&self) -> bool {
        self.base.objects().all(|x| self.components[x.0] == self.base.id(x))
    }

    /// Every idempotent natural transformation `Id_C → Id_C`, in
    /// lexicographic order of components.
    pub fn enumerate(base: &Arc<FinCategory>) -> Vec<IdemNatTransf> {
        let c = base.as_ref();
        let candidates: Vec<Vec<Mor>> = c.objects().map(|x| c.idempotents(x)).collect();
        let mut out = Vec::new();
        let mut chosen: Vec<Mor> = Vec::with_capacity(c.num_objects());
        fn go(c: &FinCategory, candidates: &[Vec<Mor>], chosen: &mut Vec<Mor>, out: &mut Vec<Vec<Mor>>) {
            let x = Obj(chosen.len());
            if x.0 == c.num_objects() {
                out.push(chosen.clone());
                return;
            }
            for &e in &candidates[x.0] {
                chosen.push(e);
                // naturality squares between x and earlier objects (and loops on x)
                let ok = c.objects().take(x.0 + 1).all(|y| {
                    c.hom(y, x).iter().all(|&f| c.compose(f, chosen[y.0]) == c.compose(e, f))
                        && c.hom(x, y).iter().all(|&f| c.compose(f, e) == c.compose(chosen[y.0], f))
                });
                if ok {
                    go(c, candidates, chosen, out);
                }
                chosen.pop();
            }
        }
        let mut raw = Vec::new();
        go(c, &candidates, &mut chosen, &mut raw);
        out.extend(raw.into_iter().map(|components| IdemNatTransf { base: base.clone(), components }));
        out
    }
}

/// The canonical semifunctor `Eᵉ`: identity on objects, `f ↦ f ∘ e_X`.
pub fn canonical_e(e: &IdemNatTransf) -> Semifunctor {
    let c = &e.base;
    let mor_map = c.morphisms().map(|f| c.compose(f, e.component(c.src(f)))).collect();
    Semifunctor::new_unchecked(c.clone(), c.clone(), c.objects().collect(), mor_map)
}

/// The constant semifunctor at an idempotent `z: D → D`.
pub fn constant_semifunctor(
    source: Arc<FinCategory>,
    target: Arc<FinCategory>,
    z: Mor,
) -> Result<Semifunctor, SemifunctorError> {
    if !target.is_idempotent(z) {
        return Err(SemifunctorError::NotIdempotent(target.mor_name(z).to_string()));
    }
    let d = target.src(z);
    let obj_map = alloc::vec![d; source.num_objects()];
    let mor_map = alloc::vec![z; source.num_morphisms()];
    Ok(Semifunctor::new_unchecked(source, target, obj_map, mor_map))
}

/// Every semifunctor `C → D`, in lexicographic order of (object map,
/// morphism map). Stops after `limit` results.
pub fn enumerate_semifunctors(c: &Arc<FinCategory>, d: &Arc<FinCategory>, limit: usize) -> Vec<Semifunctor> {
    let mut out = Vec::new();
    let n = c.num_objects();
    let mut obj_map = alloc::vec![Obj(0); n];
    if d.num_objects() == 0 && n > 0 {
        return out;
    }
    // odometer over object maps
    loop {
        let mut mor_map = Vec::with_capacity(c.num_morphisms());
        morphism_maps(c, d, &obj_map, &mut mor_map, &mut out, limit);
        if out.len() >= limit {
            return out;
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            obj_map[i].0 += 1;
            if obj_map[i].0 < d.num_objects() {
                break;
            }
            obj_map[i] = Obj(0);
        }
    }
}

fn morphism_maps(
    c: &Arc<FinCategory>,
    d: &Arc<FinCategory>,
    obj_map: &[Obj],
    mor_map: &mut Vec<Mor>,
    out: &mut Vec<Semifunctor>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    let f = Mor(mor_map.len());
    if f.0 == c.num_morphisms() {
        out.push(Semifunctor {
            source: c.clone(),
            target: d.clone(),
            obj_map: obj_map.to_vec(),
            mor_map: mor_map.clone(),
        });
        return;
    }
    for &img in d.hom(obj_map[c.src(f).0], obj_map[c.dst(f).0]) {
        mor_map.push(img);
        // every fully assigned triple (g, h, g∘h) in which f occurs, as a
        // factor or as the composite
        let ok = (0..=f.0).map(Mor).all(|g| {
            (0..=f.0).map(Mor).all(|h| match c.try_compose(g, h) {
                Some(gh) if gh.0 <= f.0 && (g == f || h == f || gh == f) => {
                    mor_map[gh.0] == d.compose(mor_map[g.0], mor_map[h.0])
                }
                _ => true,
            })
        });
        if ok {
            morphism_maps(c, d, obj_map, mor_map, out, limit);
        }
        mor_map.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{monoid_category, product_category};
    use alloc::vec;

    pub(crate) fn m3() -> Arc<FinCategory> {
        let t = vec![vec![0, 1, 2], vec![1, 2, 1], vec![2, 1, 2]];
        Arc::new(monoid_category(vec!["1".into(), "x".into(), "e".into()], &t).unwrap())
    }
    fn w() -> Arc<FinCategory> {
        Arc::new(monoid_category(vec!["id".into(), "u".into()], &[vec![0, 1], vec![1, 1]]).unwrap())
    }
    fn f_e(m: &Arc<FinCategory>) -> (Arc<FinCategory>, Vec<Mor>) {
        let mm = Arc::new(product_category(m, m));
        let map = m.morphisms().map(|b| mm.mor(&alloc::format!("(e,{})", m.mor_name(b))).unwrap()).collect();
        (mm, map)
    }

    #[test]
    fn f_e_is_a_semifunctor_but_not_a_functor() {
        let m = m3();
        let (mm, map) = f_e(&m);
        let f = Semifunctor::new(m.clone(), mm.clone(), vec![Obj(0)], map).unwrap();
        assert!(!f.is_functor());
        assert_eq!(mm.mor_name(f.image_identity(Obj(0))), "(e,1)");
    }

    #[test]
    fn corrupted_f_e_fails_composition() {
        let m = m3();
        let (mm, mut map) = f_e(&m);
        map[1] = mm.mor("(1,x)").unwrap();
        assert!(matches!(
            Semifunctor::new(m, mm, vec![Obj(0)], map),
            Err(SemifunctorError::CompositionNotPreserved { .. })
        ));
    }

    #[test]
    fn identity_is_a_functor() {
        assert!(Semifunctor::identity(m3()).is_functor());
    }

    #[test]
    fn e_on_walking_idempotent() {
        let w = w();
        let u = w.mor("u").unwrap();
        let e = IdemNatTransf::new(w.clone(), vec![u]).unwrap();
        let eu = canonical_e(&e);
        assert_eq!(eu.mor_map(), [u, u]);
        assert!(!eu.is_functor());
        assert_eq!(eu.image_identities(), [u]);
        assert_eq!(canonical_e(&IdemNatTransf::identity(w.clone())), Semifunctor::identity(w));
    }

    #[test]
    fn e_on_m3() {
        let m = m3();
        let e = IdemNatTransf::new(m.clone(), vec![m.mor("e").unwrap()]).unwrap();
        let names: Vec<&str> = canonical_e(&e).mor_map().iter().map(|&f| m.mor_name(f)).collect();
        assert_eq!(names, ["e", "x", "e"]);
    }

    #[test]
    fn composition_and_f_e_after_e() {
        let m = m3();
        let (mm, map) = f_e(&m);
        let f = Semifunctor::new(m.clone(), mm.clone(), vec![Obj(0)], map).unwrap();
        let id = Semifunctor::identity(m.clone());
        assert_eq!(compose_semifunctors(&f, &id).unwrap(), f);
        let e = canonical_e(&IdemNatTransf::new(m.clone(), vec![m.mor("e").unwrap()]).unwrap());
        let fe = compose_semifunctors(&f, &e).unwrap();
        let names: Vec<&str> = fe.mor_map().iter().map(|&g| mm.mor_name(g)).collect();
        assert_eq!(names, ["(e,e)", "(e,x)", "(e,e)"]);
        assert_eq!(compose_semifunctors(&id, &f), Err(SemifunctorError::SourceTargetMismatch));
    }

    #[test]
    fn constant_semifunctors() {
        let w = w();
        let one = Arc::new(FinCategory::terminal("*", "id"));
        let u = w.mor("u").unwrap();
        let fe = constant_semifunctor(one, w.clone(), u).unwrap();
        assert_eq!(fe.image_identity(Obj(0)), u);
        let k = constant_semifunctor(m3(), w.clone(), u).unwrap();
        assert!(Semifunctor::new(k.source().clone(), w.clone(), k.obj_map().to_vec(), k.mor_map().to_vec()).is_ok());
        let m = m3();
        assert!(constant_semifunctor(w, m.clone(), m.mor("x").unwrap()).is_err());
    }

    #[test]
    fn idempotent_nat_transf_enumeration() {
        assert_eq!(IdemNatTransf::enumerate(&w()).len(), 2);
        // M3 is commutative, so both idempotents 1 and e give natural families
        assert_eq!(IdemNatTransf::enumerate(&m3()).len(), 2);
        let m = m3();
        assert!(IdemNatTransf::new(m.clone(), vec![m.mor("x").unwrap()]).is_err());
    }

    #[test]
    fn semifunctor_enumeration_contains_known_ones() {
        let w = w();
        let all = enumerate_semifunctors(&w, &w, usize::MAX);
        // (id, u) ↦ (id, id), (id, u) or (u, u); (u, id) breaks u = id ∘ u
        assert_eq!(all.len(), 3);
        assert!(all.contains(&Semifunctor::identity(w.clone())));
        let u = w.mor("u").unwrap();
        assert!(all.contains(&canonical_e(&IdemNatTransf::new(w.clone(), vec![u]).unwrap())));
        for f in &all {
            assert!(Semifunctor::new(w.clone(), w.clone(), f.obj_map().to_vec(), f.mor_map().to_vec()).is_ok());
        }
    }

    /// Brute-force count of all composition-preserving maps, one object.
    fn count_monoid_maps(c: &FinCategory, d: &FinCategory) -> usize {
        let (n, k) = (c.num_morphisms(), d.num_morphisms());
        (0..k.pow(n as u32))
            .filter(|code| {
                let img = |m: Mor| Mor(code / k.pow(m.0 as u32) % k);
                c.morphisms().all(|g| c.morphisms().all(|h| img(c.compose(g, h)) == d.compose(img(g), img(h))))
            })
            .count()
    }

    #[test]
    fn enumeration_checks_composites_assigned_after_their_factors() {
        // x∘x = y with y listed after x: the constraint on y's image only
        // becomes checkable once y is assigned.
        let z2 = Arc::new(
            monoid_category(vec!["1".into(), "x".into(), "y".into()], &[vec![0, 1, 2], vec![1, 2, 1], vec![2, 1, 2]])
                .unwrap(),
        );
        for (c, d) in [(z2.clone(), w()), (w(), z2.clone()), (m3(), m3()), (z2.clone(), z2.clone())] {
            let all = enumerate_semifunctors(&c, &d, usize::MAX);
            assert_eq!(all.len(), count_monoid_maps(&c, &d));
            for f in &all {
                assert!(Semifunctor::new(c.clone(), d.clone(), f.obj_map().to_vec(), f.mor_map().to_vec()).is_ok());
            }
        }
    }
}
