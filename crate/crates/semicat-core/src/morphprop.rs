//! Morphism-level predicates relative to image identities: semi-monos and
//! semi-epis, semisplit monos/epis relative to one or two semifunctors, and
//! semi-isomorphisms with their normalized semi-inverse.
//!
//! A pair `(F, C)` stands for the object `FC` together with its image
//! identity `F Id_C`. Every witness search scans a single hom-set in
//! morphism order and returns the first hit; an empty hom-set yields `None`.

use crate::kernel::{FinCategory, Mor, Obj};
use crate::semifunctor::Semifunctor;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MorphError {
    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),
}

fn expect_src(d: &FinCategory, f: Mor, x: Obj) -> Result<(), MorphError> {
    if f.0 >= d.num_morphisms() || d.src(f) != x {
        return Err(MorphError::EndpointMismatch(format!("morphism must start at `{}`", d.obj_name(x))));
    }
    Ok(())
}

fn expect_dst(d: &FinCategory, f: Mor, x: Obj) -> Result<(), MorphError> {
    if f.0 >= d.num_morphisms() || d.dst(f) != x {
        return Err(MorphError::EndpointMismatch(format!("morphism must end at `{}`", d.obj_name(x))));
    }
    Ok(())
}

fn same_target(f: &Semifunctor, g: &Semifunctor) -> Result<(), MorphError> {
    if f.target() != g.target() {
        return Err(MorphError::EndpointMismatch("semifunctors land in different categories".into()));
    }
    Ok(())
}

/// `f: FC → D` with `f∘h = f∘k ⇒ FId_C∘h = FId_C∘k` for all parallel `h, k` into `FC`.
pub fn is_fc_semi_mono(f: &Semifunctor, c: Obj, m: Mor) -> Result<bool, MorphError> {
    Ok(fc_semi_mono_failure(f, c, m)?.is_none())
}

/// The first parallel pair `h, k` into `FC` with `f∘h = f∘k` but
/// `FId_C∘h ≠ FId_C∘k`.
pub fn fc_semi_mono_failure(f: &Semifunctor, c: Obj, m: Mor) -> Result<Option<(Mor, Mor)>, MorphError> {
    let d = f.target();
    let fc = f.obj(c);
    expect_src(d, m, fc)?;
    let e = f.image_identity(c);
    Ok(d.objects().find_map(|x| {
        let hom = d.hom(x, fc);
        hom.iter().find_map(|&h| {
            hom.iter()
                .find(|&&k| d.compose(m, h) == d.compose(m, k) && d.compose(e, h) != d.compose(e, k))
                .map(|&k| (h, k))
        })
    }))
}

/// `f: D → FC` with `h∘f = k∘f ⇒ h∘FId_C = k∘FId_C` for all parallel `h, k` out of `FC`.
pub fn is_fc_semi_epi(f: &Semifunctor, c: Obj, m: Mor) -> Result<bool, MorphError> {
    Ok(fc_semi_epi_failure(f, c, m)?.is_none())
}

/// The first parallel pair `h, k` out of `FC` with `h∘f = k∘f` but
/// `h∘FId_C ≠ k∘FId_C`.
pub fn fc_semi_epi_failure(f: &Semifunctor, c: Obj, m: Mor) -> Result<Option<(Mor, Mor)>, MorphError> {
    let d = f.target();
    let fc = f.obj(c);
    expect_dst(d, m, fc)?;
    let e = f.image_identity(c);
    Ok(d.objects().find_map(|x| {
        let hom = d.hom(fc, x);
        hom.iter().find_map(|&h| {
            hom.iter()
                .find(|&&k| d.compose(h, m) == d.compose(k, m) && d.compose(h, e) != d.compose(k, e))
                .map(|&k| (h, k))
        })
    }))
}

/// For `f: FC → D`, the first `g: D → FC` with `g∘f = FId_C`.
pub fn fc_semisplit_mono_witness(f: &Semifunctor, c: Obj, m: Mor) -> Result<Option<Mor>, MorphError> {
    let d = f.target();
    expect_src(d, m, f.obj(c))?;
    let e = f.image_identity(c);
    Ok(d.hom(d.dst(m), f.obj(c)).iter().copied().find(|&g| d.compose(g, m) == e))
}

/// For `f: D → FC`, the first `g: FC → D` with `f∘g = FId_C`.
pub fn fc_semisplit_epi_witness(f: &Semifunctor, c: Obj, m: Mor) -> Result<Option<Mor>, MorphError> {
    let d = f.target();
    expect_dst(d, m, f.obj(c))?;
    let e = f.image_identity(c);
    Ok(d.hom(f.obj(c), d.src(m)).iter().copied().find(|&g| d.compose(m, g) == e))
}

fn framed(f: &Semifunctor, c: Obj, f2: &Semifunctor, c2: Obj, m: Mor) -> Result<(Mor, Mor), MorphError> {
    same_target(f, f2)?;
    let d = f.target();
    expect_src(d, m, f.obj(c))?;
    expect_dst(d, m, f2.obj(c2))?;
    Ok((f.image_identity(c), f2.image_identity(c2)))
}

/// For `f: FC → F'C'` with `f∘FId_C = f`: the first `g: F'C' → FC` with
/// `g∘f = FId_C` and `g∘F'Id_{C'} = g`.
pub fn cc_semisplit_mono_witness(
    f: &Semifunctor,
    c: Obj,
    f2: &Semifunctor,
    c2: Obj,
    m: Mor,
) -> Result<Option<Mor>, MorphError> {
    let (e, e2) = framed(f, c, f2, c2, m)?;
    let d = f.target();
    if d.compose(m, e) != m {
        return Ok(None);
    }
    Ok(d.hom(f2.obj(c2), f.obj(c)).iter().copied().find(|&g| d.compose(g, m) == e && d.compose(g, e2) == g))
}

/// For `f: FC → F'C'` with `F'Id_{C'}∘f = f`: the first `g: F'C' → FC` with
/// `f∘g = F'Id_{C'}` and `FId_C∘g = g`.
pub fn cc_semisplit_epi_witness(
    f: &Semifunctor,
    c: Obj,
    f2: &Semifunctor,
    c2: Obj,
    m: Mor,
) -> Result<Option<Mor>, MorphError> {
    let (e, e2) = framed(f, c, f2, c2, m)?;
    let d = f.target();
    if d.compose(e2, m) != m {
        return Ok(None);
    }
    Ok(d.hom(f2.obj(c2), f.obj(c)).iter().copied().find(|&g| d.compose(m, g) == e2 && d.compose(e, g) == g))
}

/// Every `g: F'C' → FC` with `g∘f = FId_C`, `f∘g = F'Id_{C'}` and
/// `FId_C∘g = g`. For a semi-isomorphism this has exactly one element.
pub fn normalized_semi_inverses(
    f: &Semifunctor,
    c: Obj,
    f2: &Semifunctor,
    c2: Obj,
    m: Mor,
) -> Result<Vec<Mor>, MorphError> {
    let (e, e2) = framed(f, c, f2, c2, m)?;
    let d = f.target();
    Ok(d.hom(f2.obj(c2), f.obj(c))
        .iter()
        .copied()
        .filter(|&g| d.compose(g, m) == e && d.compose(m, g) == e2 && d.compose(e, g) == g)
        .collect())
}

/// For `f: FC → F'C'`: if `f∘FId_C = f` and some `g` has `g∘f = FId_C` and
/// `f∘g = F'Id_{C'}`, returns the normalized semi-inverse `g∘f∘g`.
pub fn cc_semi_isomorphism(
    f: &Semifunctor,
    c: Obj,
    f2: &Semifunctor,
    c2: Obj,
    m: Mor,
) -> Result<Option<Mor>, MorphError> {
    let (e, e2) = framed(f, c, f2, c2, m)?;
    let d = f.target();
    if d.compose(m, e) != m {
        return Ok(None);
    }
    let found = d.hom(f2.obj(c2), f.obj(c)).iter().copied().find(|&g| d.compose(g, m) == e && d.compose(m, g) == e2);
    Ok(found.map(|g| {
        let g = d.compose_all(&[g, m, g]);
        debug_assert_eq!(normalized_semi_inverses(f, c, f2, c2, m).as_deref(), Ok(&[g][..]));
        g
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::cats::{empty_and_point, m3, monoid_fe, split_pair, walking_idempotent};
    use crate::semifunctor::{canonical_e, IdemNatTransf};
    use alloc::sync::Arc;
    use alloc::vec;

    fn eu() -> Semifunctor {
        let w = walking_idempotent();
        canonical_e(&IdemNatTransf::new(w.clone(), vec![w.mor("u").unwrap()]).unwrap())
    }

    #[test]
    fn image_identity_is_everything_at_once() {
        let (_, _, f) = monoid_fe();
        let e = f.image_identity(Obj(0));
        let c = Obj(0);
        assert!(is_fc_semi_mono(&f, c, e).unwrap());
        assert!(is_fc_semi_epi(&f, c, e).unwrap());
        let d = f.target();
        // the identity comes first in morphism order and also qualifies
        let g = fc_semisplit_mono_witness(&f, c, e).unwrap().unwrap();
        assert_eq!(d.compose(g, e), e);
        let g = fc_semisplit_epi_witness(&f, c, e).unwrap().unwrap();
        assert_eq!(d.compose(e, g), e);
        assert_eq!(cc_semisplit_mono_witness(&f, c, &f, c, e).unwrap(), Some(e));
        assert_eq!(cc_semisplit_epi_witness(&f, c, &f, c, e).unwrap(), Some(e));
        assert_eq!(cc_semi_isomorphism(&f, c, &f, c, e).unwrap(), Some(e));
    }

    #[test]
    fn u_under_eu() {
        let f = eu();
        let u = f.target().mor("u").unwrap();
        assert!(is_fc_semi_mono(&f, Obj(0), u).unwrap());
        let g = fc_semisplit_mono_witness(&f, Obj(0), u).unwrap().unwrap();
        assert_eq!(f.target().compose(g, u), u);
        assert_eq!(cc_semi_isomorphism(&f, Obj(0), &f, Obj(0), u).unwrap(), Some(u));
        // id does not absorb Eᵘ(Id) = u on the right
        let id = f.target().mor("id").unwrap();
        assert_eq!(cc_semi_isomorphism(&f, Obj(0), &f, Obj(0), id).unwrap(), None);
    }

    #[test]
    fn functor_case_is_plain_mono_epi_split() {
        for c in [m3(), split_pair(), empty_and_point(), walking_idempotent()] {
            let id = Semifunctor::identity(c.clone());
            for m in c.morphisms() {
                let (x, y) = (c.src(m), c.dst(m));
                assert_eq!(is_fc_semi_mono(&id, x, m).unwrap(), c.is_mono(m));
                assert_eq!(is_fc_semi_epi(&id, y, m).unwrap(), c.is_epi(m));
                assert_eq!(fc_semisplit_mono_witness(&id, x, m).unwrap().is_some(), c.retraction(m).is_some());
                assert_eq!(fc_semisplit_epi_witness(&id, y, m).unwrap().is_some(), c.section(m).is_some());
                assert_eq!(cc_semi_isomorphism(&id, x, &id, y, m).unwrap(), c.inverse(m));
            }
        }
    }

    #[test]
    fn semi_iso_iff_both_semisplits_everywhere() {
        let w = walking_idempotent();
        let fs = [eu(), Semifunctor::identity(w.clone())];
        for f in &fs {
            for f2 in &fs {
                for m in w.morphisms() {
                    let (c, c2) = (Obj(0), Obj(0));
                    let iso = cc_semi_isomorphism(f, c, f2, c2, m).unwrap();
                    let both = cc_semisplit_mono_witness(f, c, f2, c2, m).unwrap().is_some()
                        && cc_semisplit_epi_witness(f, c, f2, c2, m).unwrap().is_some();
                    assert_eq!(iso.is_some(), both);
                    assert!(normalized_semi_inverses(f, c, f2, c2, m).unwrap().len() <= 1);
                }
            }
        }
    }

    #[test]
    fn semi_mono_epi_failures_are_genuine() {
        let w = walking_idempotent();
        let (id, u) = (w.mor("id").unwrap(), w.mor("u").unwrap());
        let idw = Semifunctor::identity(w.clone());
        assert_eq!(fc_semi_mono_failure(&idw, Obj(0), u).unwrap(), Some((id, u)));
        assert_eq!(fc_semi_epi_failure(&idw, Obj(0), u).unwrap(), Some((id, u)));
        // relative to Eᵘ every morphism is semi-mono: FId = u absorbs the difference
        assert_eq!(fc_semi_mono_failure(&eu(), Obj(0), u).unwrap(), None);
        for f in [eu(), idw] {
            for m in w.morphisms() {
                if let Some((h, k)) = fc_semi_mono_failure(&f, Obj(0), m).unwrap() {
                    let e = f.image_identity(Obj(0));
                    assert!(w.compose(m, h) == w.compose(m, k) && w.compose(e, h) != w.compose(e, k));
                }
            }
        }
    }

    #[test]
    fn cc_semisplit_mono_implies_fc_semisplit_mono() {
        let (_, mm, f) = monoid_fe();
        for m in mm.morphisms() {
            if cc_semisplit_mono_witness(&f, Obj(0), &f, Obj(0), m).unwrap().is_some() {
                assert!(fc_semisplit_mono_witness(&f, Obj(0), m).unwrap().is_some());
            }
        }
    }

    #[test]
    fn wrong_endpoints_are_rejected() {
        let c = split_pair();
        let id = Semifunctor::identity(c.clone());
        let p = c.mor("p").unwrap();
        assert!(is_fc_semi_mono(&id, c.obj("B").unwrap(), p).is_err());
        let other = Semifunctor::identity(Arc::new(FinCategory::terminal("*", "id")));
        assert!(cc_semi_isomorphism(&id, Obj(0), &other, Obj(0), p).is_err());
    }
}
