//! Set-level examples, reproduced pointwise on enumerated finite sets:
//! the square semifunctor `A ↦ A×A`, the semi-product semiadjunction
//! `Δ ⊣ₛ ×`, and the fixpoint functor of a set-valued semifunctor.
//!
//! Functions are image-index vectors; an element `(x, y)` of `A×B` has
//! index `x·|B| + y`.

use super::GalleryError;
use crate::kernel::{full_finset_subcategory, FinCategory, FinSetCategory, FinSetObject, Mor, Obj};
use crate::morphprop::cc_semi_isomorphism;
use crate::semifunctor::Semifunctor;
use crate::transform::{find_semi_inverse, Transformation};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

type Func = Vec<usize>;

/// Every function `a → b`, first argument most significant.
fn functions(a: usize, b: usize) -> Vec<Func> {
    crate::kernel::finset::functions(a, b)
}

fn compose(g: &[usize], f: &[usize]) -> Func {
    f.iter().map(|&i| g[i]).collect()
}

/// Cardinalities of all subsets of the atoms `a, b, …` (`n` atoms), one
/// entry per subset in bitmask order; functions only see cardinalities.
pub fn sample_sets(n: usize) -> Vec<usize> {
    (0u32..1 << n).map(|mask| mask.count_ones() as usize).collect()
}

/// Counts of identities verified by a pointwise run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PointwiseReport {
    pub samples: usize,
    pub checks: usize,
}

/// `F(f)(a, a') = (f a, f a)` with `P(g) = ψ∘g∘Δ`.
fn square(f: &[usize], b: usize) -> Func {
    let a = f.len();
    (0..a * a).map(|p| f[p / a.max(1)] * b + f[p / a.max(1)]).collect()
}

fn p_of(g: &[usize], a: usize, b: usize) -> Func {
    (0..a).map(|x| g[x * a + x] / b.max(1)).collect()
}

/// Verifies on every pair of sample sets: `P(Ff) = f`,
/// `F(P g) = FId∘g∘FId`, and the naturality of `P`
/// (`P(Fk∘g∘Fh) = k∘P(g)∘h`).
pub fn pointwise_set_square(sizes: &[usize]) -> Result<PointwiseReport, GalleryError> {
    let mut report = PointwiseReport { samples: sizes.len(), checks: 0 };
    let fid = |n: usize| square(&(0..n).collect::<Func>(), n);
    let fail = |what: &str, a: usize, b: usize| GalleryError::IdentityFailure(format!("{what} on |A|={a}, |B|={b}"));
    for &a in sizes {
        for &b in sizes {
            for f in functions(a, b) {
                if p_of(&square(&f, b), a, b) != f {
                    return Err(fail("P(Ff) = f", a, b));
                }
                report.checks += 1;
            }
            for g in functions(a * a, b * b) {
                let framed = compose(&fid(b), &compose(&g, &fid(a)));
                if square(&p_of(&g, a, b), b) != framed {
                    return Err(fail("F(Pg) = FId∘g∘FId", a, b));
                }
                report.checks += 1;
            }
        }
    }
    for &a in sizes {
        for &b in sizes {
            for &c in sizes {
                for &d in sizes {
                    let (hs, ks) = (functions(a, b), functions(c, d));
                    if hs.is_empty() || ks.is_empty() {
                        continue;
                    }
                    for g in functions(b * b, c * c) {
                        let pg = p_of(&g, b, c);
                        for h in &hs {
                            for k in &ks {
                                let lhs = p_of(&compose(&square(k, d), &compose(&g, &square(h, b))), a, d);
                                if lhs != compose(k, &compose(&pg, h)) {
                                    return Err(fail("P natural", a, d));
                                }
                                report.checks += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Outcome of the pointwise semi-product checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SemiproductReport {
    pub checks: usize,
    /// `(|A|, |B|, |X|)` with `π_B: A×B → B` not epi, shown by two
    /// different maps `B → X` agreeing after `π_B`.
    pub non_epi_projection: Option<(usize, usize, usize)>,
    /// `|B|` of a nonempty `B` with no map `B → ∅`, so `γ₂` cannot exist.
    pub missing_gamma: Option<usize>,
}

fn pair(f: &[usize], g: &[usize], b: usize) -> Func {
    f.iter().zip(g).map(|(&x, &y)| x * b + y).collect()
}
fn proj1(a: usize, b: usize) -> Func {
    (0..a * b).map(|p| p / b).collect()
}
fn proj2(a: usize, b: usize) -> Func {
    (0..a * b).map(|p| p % b).collect()
}
/// `f × g = ⟨f∘π_A, g∘π_B⟩: A×B → A'×B'`
fn times(f: &[usize], g: &[usize], a: usize, b: usize, b2: usize) -> Func {
    pair(&compose(f, &proj1(a, b)), &compose(g, &proj2(a, b)), b2)
}

/// Checks `εΔ∘Δη = ΔId` and `×ε∘η× = ×Id` for `Δ ⊣ₛ ×` on the sample sets,
/// and searches the two negative witnesses.
pub fn pointwise_semiproduct(sizes: &[usize]) -> Result<SemiproductReport, GalleryError> {
    let mut report = SemiproductReport::default();
    let id = |n: usize| (0..n).collect::<Func>();
    for &a in sizes {
        // (π∘η, π∘η) = (Id, Id)
        let eta = pair(&id(a), &id(a), a);
        if compose(&proj1(a, a), &eta) != id(a) || compose(&proj2(a, a), &eta) != id(a) {
            return Err(GalleryError::IdentityFailure(format!("εΔ∘Δη = ΔId at |A|={a}")));
        }
        report.checks += 1;
    }
    for &a in sizes {
        for &b in sizes {
            let n = a * b;
            // η_{A×B}: A×B → (A×B)×(A×B), then ×(π_A, π_B)
            let eta = pair(&id(n), &id(n), n);
            let lhs = compose(&times(&proj1(a, b), &proj2(a, b), n, n, b), &eta);
            if lhs != times(&id(a), &id(b), a, b, b) {
                return Err(GalleryError::IdentityFailure(format!("×ε∘η× = ×Id at |A|={a}, |B|={b}")));
            }
            report.checks += 1;
            if report.non_epi_projection.is_none() {
                let pb = proj2(a, b);
                'x: for &x in sizes {
                    let maps = functions(b, x);
                    for (i, u) in maps.iter().enumerate() {
                        for v in &maps[i + 1..] {
                            if compose(u, &pb) == compose(v, &pb) {
                                report.non_epi_projection = Some((a, b, x));
                                break 'x;
                            }
                        }
                    }
                }
            }
            if a == 0 && b > 0 && functions(b, 0).is_empty() {
                report.missing_gamma.get_or_insert(b);
            }
        }
    }
    Ok(report)
}

/// A semifunctor `C → Set` given by finite sets and image-index maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetValued {
    pub source: Arc<FinCategory>,
    pub sets: Vec<FinSetObject>,
    pub maps: Vec<Func>,
}

/// `F`, its fixpoint functor `F̄X = {x | F(Id_X)(x) = x}`, and
/// `α: F → F̄` (`p ↦ F(Id_X)(p)`), `β: F̄ → F` (inclusion).
#[derive(Clone, Debug)]
pub struct Fixpoint {
    pub sets: FinSetCategory,
    pub f: Semifunctor,
    pub fbar: Semifunctor,
    pub alpha: Transformation,
    pub beta: Transformation,
}

pub fn fixpoint_functor(input: &SetValued) -> Result<Fixpoint, GalleryError> {
    let c = &input.source;
    let bad = |m: &str| GalleryError::InvalidInput(String::from(m));
    if input.sets.len() != c.num_objects() || input.maps.len() != c.num_morphisms() {
        return Err(bad("one set per object and one map per morphism required"));
    }
    // fixed[x] = positions of F(Id_X)-fixed elements of F(X)
    let fixed: Vec<Vec<usize>> = c
        .objects()
        .map(|x| {
            let e = &input.maps[c.id(x).0];
            (0..input.sets[x.0].len()).filter(|&i| e.get(i) == Some(&i)).collect()
        })
        .collect();
    let sub: Vec<FinSetObject> = c
        .objects()
        .map(|x| FinSetObject { elements: fixed[x.0].iter().map(|&i| input.sets[x.0].elements[i].clone()).collect() })
        .collect();
    let mut all: Vec<FinSetObject> = Vec::new();
    for s in input.sets.iter().chain(&sub) {
        if !all.contains(s) {
            all.push(s.clone());
        }
    }
    let sets = full_finset_subcategory(&all).map_err(|_| bad("sets must have distinct labels"))?;
    let cat = Arc::new(sets.cat.clone());
    let place = |s: &FinSetObject| sets.object_of(s).expect("listed");
    let fo: Vec<Obj> = input.sets.iter().map(place).collect();
    let bo: Vec<Obj> = sub.iter().map(place).collect();
    let mut fm = Vec::new();
    let mut bm = Vec::new();
    for m in c.morphisms() {
        let (x, y) = (c.src(m), c.dst(m));
        let img = &input.maps[m.0];
        if img.len() != input.sets[x.0].len() || img.iter().any(|&i| i >= input.sets[y.0].len()) {
            return Err(bad("map does not fit its endpoints"));
        }
        fm.push(sets.morphism(fo[x.0], fo[y.0], img));
        let restricted: Option<Func> =
            fixed[x.0].iter().map(|&i| fixed[y.0].iter().position(|&j| j == img[i])).collect();
        let restricted = restricted.ok_or_else(|| bad("F(f) leaves the fixpoints"))?;
        bm.push(sets.morphism(bo[x.0], bo[y.0], &restricted));
    }
    let f = Semifunctor::new(c.clone(), cat.clone(), fo.clone(), fm).map_err(|_| bad("not a semifunctor"))?;
    let fbar = Semifunctor::new(c.clone(), cat.clone(), bo.clone(), bm).map_err(|_| bad("not a semifunctor"))?;
    let alpha = c
        .objects()
        .map(|x| {
            let e = &input.maps[c.id(x).0];
            let img: Func = e.iter().map(|&i| fixed[x.0].iter().position(|&j| j == i).expect("e idempotent")).collect();
            sets.morphism(fo[x.0], bo[x.0], &img)
        })
        .collect();
    let beta = c.objects().map(|x| sets.morphism(bo[x.0], fo[x.0], &fixed[x.0])).collect();
    let alpha = Transformation::new(f.clone(), fbar.clone(), alpha).map_err(|_| bad("α endpoints"))?;
    let beta = Transformation::new(fbar.clone(), f.clone(), beta).map_err(|_| bad("β endpoints"))?;
    Ok(Fixpoint { sets, f, fbar, alpha, beta })
}

impl Fixpoint {
    /// `F̄` is a functor, `β` is the semi-inverse found for `α`, and every
    /// `α_X` is an `(F_X, F̄_X)`-semi-isomorphism with semi-inverse `β_X`.
    pub fn verify(&self) -> Result<(), GalleryError> {
        let fail = |m: &str| Err(GalleryError::IdentityFailure(String::from(m)));
        if !self.fbar.is_functor() {
            return fail("F̄ is a functor");
        }
        if find_semi_inverse(&self.alpha).ok().flatten().as_ref() != Some(&self.beta) {
            return fail("β is the semi-inverse of α");
        }
        let c = self.f.source();
        for x in c.objects() {
            let got = cc_semi_isomorphism(&self.f, x, &self.fbar, x, self.alpha.component(x)).ok().flatten();
            if got != Some(self.beta.component(x)) {
                return fail("α_X is a semi-isomorphism with semi-inverse β_X");
            }
        }
        Ok(())
    }

    /// Image of `m` under `F̄` as a function on fixpoint indices.
    pub fn fbar_map(&self, m: Mor) -> &[usize] {
        self.sets.map(self.fbar.mor(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::cats::{split_pair, walking_idempotent};
    use alloc::vec;

    #[test]
    fn set_square() {
        assert_eq!(pointwise_set_square(&[0]).unwrap().checks, 2 + 1);
        let r = pointwise_set_square(&[1, 2]).unwrap();
        assert!(r.checks > 0);
        // |A| = 1, |B| = 2: two functions, 4^1 maps A×A → B×B
        assert_eq!(functions(1, 2).len(), 2);
        assert_eq!(functions(1, 4).len(), 4);
    }

    #[test]
    fn semiproduct() {
        let r = pointwise_semiproduct(&[0, 1]).unwrap();
        assert_eq!(r.missing_gamma, Some(1));
        assert_eq!(r.non_epi_projection, None);
        let r = pointwise_semiproduct(&[1]).unwrap();
        assert_eq!((r.missing_gamma, r.non_epi_projection), (None, None));
        let r = pointwise_semiproduct(&[0, 1, 2]).unwrap();
        assert_eq!(r.non_epi_projection, Some((0, 1, 2)));
    }

    #[test]
    fn fixpoint_on_w() {
        let w = walking_idempotent();
        let input = SetValued {
            source: w.clone(),
            sets: vec![FinSetObject::new(["a", "b"])],
            maps: vec![vec![0, 0], vec![0, 0]],
        };
        let fx = fixpoint_functor(&input).unwrap();
        assert_eq!(fx.sets.set(fx.fbar.obj(Obj(0))), &FinSetObject::new(["a"]));
        fx.verify().unwrap();
    }

    #[test]
    fn fixpoint_of_functor_is_itself() {
        let c = split_pair();
        // A ↦ {a, b}, B ↦ {a}; s picks a, q = s∘p
        let input = SetValued {
            source: c.clone(),
            sets: vec![FinSetObject::new(["a", "b"]), FinSetObject::new(["a"])],
            maps: vec![vec![0, 1], vec![0, 0], vec![0], vec![0, 0], vec![0]],
        };
        let fx = fixpoint_functor(&input).unwrap();
        assert_eq!(fx.f, fx.fbar);
        assert!(fx.alpha.components().iter().all(|&m| fx.sets.cat.is_identity(m)));
        fx.verify().unwrap();
    }
}
