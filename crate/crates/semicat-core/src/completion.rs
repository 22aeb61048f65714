//! Idempotent completion `C♮`: objects are pairs `(X, e)` with `e` idempotent,
//! morphisms `(X, e) → (Y, e')` are the `f: X → Y` with `e'∘f∘e = f`, and the
//! identity of `(X, e)` is `e`. Also the comparison (semi)functors `ι`, `υ`
//! and the extension of semifunctors and seminatural transformations.

use crate::kernel::{FinCategory, Mor, MorphismRecord, Obj};
use crate::semiadj::Semiadjunction;
use crate::semifunctor::Semifunctor;
use crate::transform::Transformation;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

/// Default bound on the number of morphisms of a completion.
pub const DEFAULT_COMPLETION_CAP: usize = 5000;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CompletionError {
    #[error("completion has more than {cap} morphisms")]
    CompletionTooLarge { cap: usize },
    #[error("completion does not belong to the given category")]
    ShapeMismatch,
    #[error("morphism is not idempotent")]
    NotIdempotent,
    #[error("transformation is not seminatural")]
    NotSeminatural,
}

/// `C♮` together with the data relating it to `C`.
#[derive(Clone, Debug)]
pub struct Completion {
    base: Arc<FinCategory>,
    cat: Arc<FinCategory>,
    // objects[i] = (X, e)
    objects: Vec<(Obj, Mor)>,
    // index of each base object's `(X, Id_X)`
    unit_object: Vec<Obj>,
    // underlying base morphism of each morphism of C♮
    underlying: Vec<Mor>,
    // morphisms of hom((s, t)) occupy pair_start[s*n+t] .. pair_start[s*n+t+1]
    pair_start: Vec<usize>,
}

/// Builds `C♮`, refusing if it would exceed `cap` morphisms. Objects are
/// named `X#e` and morphisms `f:X#e->Y#e'`.
pub fn idempotent_completion(c: &Arc<FinCategory>, cap: usize) -> Result<Completion, CompletionError> {
    let mut objects = Vec::new();
    let mut unit_object = Vec::with_capacity(c.num_objects());
    for x in c.objects() {
        for e in c.idempotents(x) {
            if e == c.id(x) {
                unit_object.push(Obj(objects.len()));
            }
            objects.push((x, e));
        }
    }
    let n = objects.len();
    let names: Vec<String> = objects.iter().map(|&(x, e)| format!("{}#{}", c.obj_name(x), c.mor_name(e))).collect();
    let mut morphisms = Vec::new();
    let mut underlying = Vec::new();
    let mut pair_start = Vec::with_capacity(n * n + 1);
    for (s, &(x, e)) in objects.iter().enumerate() {
        for (t, &(y, e2)) in objects.iter().enumerate() {
            pair_start.push(underlying.len());
            for &f in c.hom(x, y) {
                if c.compose_all(&[e2, f, e]) == f {
                    if underlying.len() == cap {
                        return Err(CompletionError::CompletionTooLarge { cap });
                    }
                    underlying.push(f);
                    morphisms.push(MorphismRecord {
                        id: format!("{}:{}->{}", c.mor_name(f), names[s], names[t]),
                        src: Obj(s),
                        dst: Obj(t),
                    });
                }
            }
        }
    }
    pair_start.push(underlying.len());
    let locate = |s: Obj, t: Obj, f: Mor| -> Option<Mor> {
        let (lo, hi) = (pair_start[s.0 * n + t.0], pair_start[s.0 * n + t.0 + 1]);
        underlying[lo..hi].binary_search(&f).ok().map(|i| Mor(lo + i))
    };
    let identity = objects
        .iter()
        .enumerate()
        .map(|(s, &(_, e))| locate(Obj(s), Obj(s), e).expect("e is an endomorphism of (X, e)"))
        .collect();
    let cat = FinCategory::assemble(names, morphisms.clone(), identity, |g, f| {
        let (gr, fr) = (&morphisms[g.0], &morphisms[f.0]);
        if gr.src != fr.dst {
            return None;
        }
        locate(fr.src, gr.dst, c.compose(underlying[g.0], underlying[f.0]))
    })
    .expect("completion of a valid category is valid");
    Ok(Completion { base: c.clone(), cat: Arc::new(cat), objects, unit_object, underlying, pair_start })
}

impl Completion {
    pub fn base(&self) -> &Arc<FinCategory> {
        &self.base
    }
    pub fn cat(&self) -> &Arc<FinCategory> {
        &self.cat
    }
    /// `(X, e)` for an object of `C♮`.
    pub fn pair(&self, o: Obj) -> (Obj, Mor) {
        self.objects[o.0]
    }
    /// The object `(x, e)`; `e` must be an idempotent on `x`.
    pub fn object(&self, x: Obj, e: Mor) -> Option<Obj> {
        self.objects.iter().position(|&p| p == (x, e)).map(Obj)
    }
    pub fn underlying(&self, f: Mor) -> Mor {
        self.underlying[f.0]
    }
    /// `f` viewed as a morphism `s → t` of `C♮`, if it is one.
    pub fn lift(&self, s: Obj, t: Obj, f: Mor) -> Option<Mor> {
        let n = self.objects.len();
        let (lo, hi) = (self.pair_start[s.0 * n + t.0], self.pair_start[s.0 * n + t.0 + 1]);
        self.underlying[lo..hi].binary_search(&f).ok().map(|i| Mor(lo + i))
    }
}

/// `ι: C → C♮`, `X ↦ (X, Id_X)`, `f ↦ f`.
pub fn iota(comp: &Completion) -> Semifunctor {
    let c = &comp.base;
    let obj_map = comp.unit_object.clone();
    let mor_map =
        c.morphisms().map(|f| comp.lift(obj_map[c.src(f).0], obj_map[c.dst(f).0], f).expect("Id∘f∘Id = f")).collect();
    Semifunctor::new_unchecked(c.clone(), comp.cat.clone(), obj_map, mor_map)
}

/// `υ: C♮ → C`, `(X, e) ↦ X`, `f ↦ f`; sends `Id_{(X,e)}` to `e`.
pub fn upsilon(comp: &Completion) -> Semifunctor {
    let obj_map = comp.objects.iter().map(|&(x, _)| x).collect();
    Semifunctor::new_unchecked(comp.cat.clone(), comp.base.clone(), obj_map, comp.underlying.clone())
}

fn check_bases(f: &Semifunctor, cs: &Completion, cd: &Completion) -> Result<(), CompletionError> {
    if f.source() != &cs.base || f.target() != &cd.base {
        return Err(CompletionError::ShapeMismatch);
    }
    Ok(())
}

/// `F♮: C♮ → D♮`, `(X, e) ↦ (FX, Fe)`, `f ↦ Ff`; always a functor.
pub fn complete_semifunctor(f: &Semifunctor, cs: &Completion, cd: &Completion) -> Result<Semifunctor, CompletionError> {
    check_bases(f, cs, cd)?;
    let obj_map: Vec<Obj> =
        cs.objects.iter().map(|&(x, e)| cd.object(f.obj(x), f.mor(e)).expect("F preserves idempotents")).collect();
    let c = &cs.cat;
    let mor_map = c
        .morphisms()
        .map(|m| {
            let (s, t) = (obj_map[c.src(m).0], obj_map[c.dst(m).0]);
            cd.lift(s, t, f.mor(cs.underlying(m))).expect("Fe'∘Ff∘Fe = Ff")
        })
        .collect();
    Ok(Semifunctor::new_unchecked(c.clone(), cd.cat.clone(), obj_map, mor_map))
}

/// `α♮: F♮ → F'♮` with `α♮_{(X,e)} = α_X∘Fe`; requires `α` seminatural.
pub fn complete_transformation(
    alpha: &Transformation,
    cs: &Completion,
    cd: &Completion,
) -> Result<Transformation, CompletionError> {
    if !alpha.is_seminatural() {
        return Err(CompletionError::NotSeminatural);
    }
    let (f, g) = (alpha.from(), alpha.to());
    let (fs, gs) = (complete_semifunctor(f, cs, cd)?, complete_semifunctor(g, cs, cd)?);
    let d = f.target();
    let components = cs
        .cat
        .objects()
        .map(|o| {
            let (x, e) = cs.pair(o);
            let a = d.compose(alpha.component(x), f.mor(e));
            cd.lift(fs.obj(o), gs.obj(o), a).expect("F'e∘α_X∘Fe = α_X∘Fe")
        })
        .collect();
    Ok(Transformation::new(fs, gs, components).expect("components have the right endpoints"))
}

/// Splits an idempotent `e` of `C♮` on `(X, e₀)` through `(X, e)`: returns
/// `(h, k)` with `k∘h = e` and `h∘k = Id_{(X,e)}`.
pub fn split_idempotent(comp: &Completion, e: Mor) -> Result<(Mor, Mor), CompletionError> {
    let c = &comp.cat;
    if !c.is_idempotent(e) {
        return Err(CompletionError::NotIdempotent);
    }
    let x = c.src(e);
    let u = comp.underlying(e);
    let y = comp.object(comp.pair(x).0, u).expect("every idempotent is an object");
    let h = comp.lift(x, y, u).expect("u∘u∘e₀ = u");
    let k = comp.lift(y, x, u).expect("e₀∘u∘u = u");
    Ok((h, k))
}

/// `(h, k)` with `k∘h = e` and `h∘k = Id`, searched inside `C`.
pub fn splitting(c: &FinCategory, e: Mor) -> Option<(Mor, Mor)> {
    let x = c.src(e);
    c.objects().find_map(|y| {
        c.hom(x, y).iter().find_map(|&h| {
            c.hom(y, x).iter().find(|&&k| c.compose(k, h) == e && c.compose(h, k) == c.id(y)).map(|&k| (h, k))
        })
    })
}

/// Every idempotent of `C` splits in `C`.
pub fn is_idempotent_complete(c: &FinCategory) -> bool {
    c.morphisms().filter(|&f| c.is_idempotent(f)).all(|e| splitting(c, e).is_some())
}

/// `υ ⊣ₛ ι` (unit `(C, c) → (C, Id)` with underlying `c`, counit identity)
/// and `ι ⊣ₛ υ` (unit identity, counit `(C, Id) → (C, c)` with underlying `c`).
pub fn forgetful_semiadjunctions(comp: &Completion) -> (Semiadjunction, Semiadjunction) {
    let (i, u) = (iota(comp), upsilon(comp));
    let (c, k) = (&comp.base, &comp.cat);
    let ids: Vec<Mor> = c.objects().map(|x| c.id(x)).collect();
    let to_unit: Vec<Mor> = k
        .objects()
        .map(|o| {
            let (x, e) = comp.pair(o);
            comp.lift(o, comp.unit_object[x.0], e).expect("e∘e∘Id = e")
        })
        .collect();
    let from_unit: Vec<Mor> = k
        .objects()
        .map(|o| {
            let (x, e) = comp.pair(o);
            comp.lift(comp.unit_object[x.0], o, e).expect("Id∘e∘e = e")
        })
        .collect();
    let ui = Semiadjunction::new(u.clone(), i.clone(), to_unit, ids.clone()).expect("υ ⊣ ι");
    let iu = Semiadjunction::new(i, u, ids, from_unit).expect("ι ⊣ υ");
    (ui, iu)
}
