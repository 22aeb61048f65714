//! Finite categories: the data model, axiom validation and a few basic
//! constructions (opposite, products, monoids, categories of finite sets).
//!
//! Objects and morphisms are addressed by dense indices ([`Obj`], [`Mor`])
//! in insertion order; string identifiers are kept alongside for IO and
//! diagnostics. Composition is stored as a table over composable pairs only.

mod build;
pub(crate) mod finset;

pub use build::{discrete_category, monoid_category, product_category};
pub use finset::{full_finset_subcategory, FinSetCategory, FinSetObject};

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

/// Index of an object inside its [`FinCategory`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Obj(pub usize);

/// Index of a morphism inside its [`FinCategory`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mor(pub usize);

/// A morphism record: identifier plus endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismRecord {
    pub id: String,
    pub src: Obj,
    pub dst: Obj,
}

/// String-level description of a category, as read from a file.
///
/// `compose` entries `[g, f, h]` mean `g ∘ f = h`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<RawMorphism>,
    pub identities: Vec<(String, String)>,
    pub compose: Vec<[String; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawMorphism {
    pub id: String,
    pub src: String,
    pub dst: String,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ValidationError {
    #[error("identifiers must be non-empty")]
    EmptyId,
    #[error("duplicate identifier `{0}`")]
    DuplicateId(String),
    #[error("morphism `{morphism}` has dangling endpoint `{object}`")]
    DanglingEndpoint { morphism: String, object: String },
    #[error("object `{0}` has no identity")]
    MissingIdentity(String),
    #[error("identity `{morphism}` is not an endomorphism of `{object}`")]
    BadIdentity { object: String, morphism: String },
    #[error("unknown identifier `{0}`")]
    Unknown(String),
    #[error("composite {g}∘{f} listed for a non-composable pair")]
    NotComposable { g: String, f: String },
    #[error("composite {g}∘{f} = {h} has the wrong endpoints")]
    CompositeEndpoint { g: String, f: String, h: String },
    #[error("composite {g}∘{f} listed twice with different values")]
    ConflictingComposite { g: String, f: String },
    #[error("missing composite {g}∘{f}")]
    MissingComposite { g: String, f: String },
    #[error("identity `{identity}` is not neutral for `{morphism}`")]
    IdentityNotNeutral { identity: String, morphism: String },
    #[error("composition is not associative on ({h}, {g}, {f})")]
    NotAssociative { h: String, g: String, f: String },
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum KernelError {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("not a monoid: {0}")]
    NotAMonoid(String),
    #[error(transparent)]
    Invalid(#[from] ValidationError),
}

/// A finite category with a total composition table on composable pairs.
///
/// Immutable once built; every constructor either validates the category
/// axioms or builds something that satisfies them by construction.
#[derive(Clone, Debug)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<MorphismRecord>,
    identity: Vec<Mor>,
    // derived indices
    obj_index: BTreeMap<String, Obj>,
    mor_index: BTreeMap<String, Mor>,
    homs: Vec<Vec<Mor>>,
    hom_pos: Vec<usize>,
    into: Vec<Vec<Mor>>,
    out_of: Vec<Vec<Mor>>,
    into_pos: Vec<usize>,
    offset: Vec<usize>,
    table: Vec<Mor>,
}

impl PartialEq for FinCategory {
    fn eq(&self, other: &Self) -> bool {
        core::ptr::eq(self, other)
            || (self.objects == other.objects
                && self.morphisms == other.morphisms
                && self.identity == other.identity
                && self.table == other.table)
    }
}
impl Eq for FinCategory {}

impl FinCategory {
    /// Builds a category from indexed data, computing composites with
    /// `compose(g, f)` for every composable pair.
    ///
    /// Checks identifier hygiene, identity endpoints and composite endpoints,
    /// but *not* associativity or unitality; see [`FinCategory::check_axioms`].
    pub fn assemble(
        objects: Vec<String>,
        morphisms: Vec<MorphismRecord>,
        identity: Vec<Mor>,
        mut compose: impl FnMut(Mor, Mor) -> Option<Mor>,
    ) -> Result<Self, ValidationError> {
        let n = objects.len();
        let mut obj_index = BTreeMap::new();
        for (i, o) in objects.iter().enumerate() {
            if o.is_empty() {
                return Err(ValidationError::EmptyId);
            }
            if obj_index.insert(o.clone(), Obj(i)).is_some() {
                return Err(ValidationError::DuplicateId(o.clone()));
            }
        }
        let mut mor_index = BTreeMap::new();
        for (i, m) in morphisms.iter().enumerate() {
            if m.id.is_empty() {
                return Err(ValidationError::EmptyId);
            }
            for end in [m.src, m.dst] {
                if end.0 >= n {
                    return Err(ValidationError::DanglingEndpoint {
                        morphism: m.id.clone(),
                        object: alloc::format!("#{}", end.0),
                    });
                }
            }
            if mor_index.insert(m.id.clone(), Mor(i)).is_some() {
                return Err(ValidationError::DuplicateId(m.id.clone()));
            }
        }
        if identity.len() != n {
            let missing = objects.get(identity.len()).cloned().unwrap_or_default();
            return Err(ValidationError::MissingIdentity(missing));
        }
        for (x, &i) in identity.iter().enumerate() {
            let ok = morphisms.get(i.0).is_some_and(|r| r.src == Obj(x) && r.dst == Obj(x));
            if !ok {
                return Err(ValidationError::BadIdentity {
                    object: objects[x].clone(),
                    morphism: morphisms.get(i.0).map(|r| r.id.clone()).unwrap_or_default(),
                });
            }
        }

        let mut homs = alloc::vec![Vec::new(); n * n];
        let mut hom_pos = Vec::with_capacity(morphisms.len());
        let mut into = alloc::vec![Vec::new(); n];
        let mut out_of = alloc::vec![Vec::new(); n];
        let mut into_pos = Vec::with_capacity(morphisms.len());
        for (i, m) in morphisms.iter().enumerate() {
            let h = &mut homs[m.src.0 * n + m.dst.0];
            hom_pos.push(h.len());
            h.push(Mor(i));
            into_pos.push(into[m.dst.0].len());
            into[m.dst.0].push(Mor(i));
            out_of[m.src.0].push(Mor(i));
        }
        let mut offset = Vec::with_capacity(morphisms.len());
        let mut total = 0usize;
        for m in &morphisms {
            offset.push(total);
            total += into[m.src.0].len();
        }
        let mut table = Vec::with_capacity(total);
        for (gi, g) in morphisms.iter().enumerate() {
            for &f in &into[g.src.0] {
                let name = |m: Mor| morphisms[m.0].id.clone();
                let h = compose(Mor(gi), f)
                    .ok_or_else(|| ValidationError::MissingComposite { g: g.id.clone(), f: name(f) })?;
                let hr = morphisms
                    .get(h.0)
                    .ok_or_else(|| ValidationError::MissingComposite { g: g.id.clone(), f: name(f) })?;
                if hr.src != morphisms[f.0].src || hr.dst != g.dst {
                    return Err(ValidationError::CompositeEndpoint { g: g.id.clone(), f: name(f), h: hr.id.clone() });
                }
                table.push(h);
            }
        }
        Ok(FinCategory {
            objects,
            morphisms,
            identity,
            obj_index,
            mor_index,
            homs,
            hom_pos,
            into,
            out_of,
            into_pos,
            offset,
            table,
        })
    }

    /// Checks unitality and associativity exhaustively.
    pub fn check_axioms(&self) -> Result<(), ValidationError> {
        for f in self.morphisms() {
            let (x, y) = (self.src(f), self.dst(f));
            for (idm, side) in [(self.id(y), self.compose(self.id(y), f)), (self.id(x), self.compose(f, self.id(x)))] {
                if side != f {
                    return Err(ValidationError::IdentityNotNeutral {
                        identity: self.mor_name(idm).into(),
                        morphism: self.mor_name(f).into(),
                    });
                }
            }
        }
        for f in self.morphisms() {
            for &g in self.starting_at(self.dst(f)) {
                let gf = self.compose(g, f);
                for &h in self.starting_at(self.dst(g)) {
                    if self.compose(h, gf) != self.compose(self.compose(h, g), f) {
                        return Err(ValidationError::NotAssociative {
                            h: self.mor_name(h).into(),
                            g: self.mor_name(g).into(),
                            f: self.mor_name(f).into(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }
    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }
    pub fn objects(&self) -> impl ExactSizeIterator<Item = Obj> + Clone {
        (0..self.objects.len()).map(Obj)
    }
    pub fn morphisms(&self) -> impl ExactSizeIterator<Item = Mor> + Clone {
        (0..self.morphisms.len()).map(Mor)
    }
    pub fn obj_name(&self, x: Obj) -> &str {
        &self.objects[x.0]
    }
    pub fn mor_name(&self, f: Mor) -> &str {
        &self.morphisms[f.0].id
    }
    pub fn record(&self, f: Mor) -> &MorphismRecord {
        &self.morphisms[f.0]
    }
    pub fn obj(&self, name: &str) -> Option<Obj> {
        self.obj_index.get(name).copied()
    }
    pub fn mor(&self, name: &str) -> Option<Mor> {
        self.mor_index.get(name).copied()
    }
    pub fn src(&self, f: Mor) -> Obj {
        self.morphisms[f.0].src
    }
    pub fn dst(&self, f: Mor) -> Obj {
        self.morphisms[f.0].dst
    }
    pub fn id(&self, x: Obj) -> Mor {
        self.identity[x.0]
    }
    pub fn is_identity(&self, f: Mor) -> bool {
        self.id(self.src(f)) == f
    }
    /// `Hom(x, y)` in insertion order.
    pub fn hom(&self, x: Obj, y: Obj) -> &[Mor] {
        &self.homs[x.0 * self.objects.len() + y.0]
    }
    /// Position of `f` inside its hom-set.
    pub fn hom_index(&self, f: Mor) -> usize {
        self.hom_pos[f.0]
    }
    /// All morphisms with codomain `y`.
    pub fn ending_at(&self, y: Obj) -> &[Mor] {
        &self.into[y.0]
    }
    /// All morphisms with domain `x`.
    pub fn starting_at(&self, x: Obj) -> &[Mor] {
        &self.out_of[x.0]
    }

    /// `g ∘ f`, or `None` when the pair is not composable.
    pub fn try_compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        (self.src(g) == self.dst(f)).then(|| self.table[self.offset[g.0] + self.into_pos[f.0]])
    }

    /// `g ∘ f`. Panics when the pair is not composable.
    pub fn compose(&self, g: Mor, f: Mor) -> Mor {
        self.try_compose(g, f)
            .unwrap_or_else(|| panic!("{} ∘ {} is not composable", self.mor_name(g), self.mor_name(f)))
    }

    /// Composes right to left: `compose_all(&[h, g, f]) = h ∘ g ∘ f`.
    pub fn compose_all(&self, chain: &[Mor]) -> Mor {
        let (&last, rest) = chain.split_last().expect("empty composition chain");
        rest.iter().rev().fold(last, |acc, &m| self.compose(m, acc))
    }

    pub fn is_idempotent(&self, f: Mor) -> bool {
        self.try_compose(f, f) == Some(f)
    }

    /// Idempotent endomorphisms of `x`, in hom order (the identity included).
    pub fn idempotents(&self, x: Obj) -> Vec<Mor> {
        self.hom(x, x).iter().copied().filter(|&f| self.is_idempotent(f)).collect()
    }

    pub fn is_mono(&self, f: Mor) -> bool {
        let x = self.src(f);
        self.objects().all(|d| {
            let h = self.hom(d, x);
            h.iter().enumerate().all(|(i, &a)| h[i + 1..].iter().all(|&b| self.compose(f, a) != self.compose(f, b)))
        })
    }

    pub fn is_epi(&self, f: Mor) -> bool {
        let y = self.dst(f);
        self.objects().all(|d| {
            let h = self.hom(y, d);
            h.iter().enumerate().all(|(i, &a)| h[i + 1..].iter().all(|&b| self.compose(a, f) != self.compose(b, f)))
        })
    }

    /// A retraction `r` with `r ∘ f = id`, first in hom order.
    pub fn retraction(&self, f: Mor) -> Option<Mor> {
        let id = self.id(self.src(f));
        self.hom(self.dst(f), self.src(f)).iter().copied().find(|&r| self.compose(r, f) == id)
    }

    /// A section `s` with `f ∘ s = id`, first in hom order.
    pub fn section(&self, f: Mor) -> Option<Mor> {
        let id = self.id(self.dst(f));
        self.hom(self.dst(f), self.src(f)).iter().copied().find(|&s| self.compose(f, s) == id)
    }

    /// The two-sided inverse of `f`, if any.
    pub fn inverse(&self, f: Mor) -> Option<Mor> {
        let (ix, iy) = (self.id(self.src(f)), self.id(self.dst(f)));
        self.hom(self.dst(f), self.src(f))
            .iter()
            .copied()
            .find(|&g| self.compose(g, f) == ix && self.compose(f, g) == iy)
    }

    /// Hom-set by identifier, as a list of identifiers.
    pub fn hom_set(&self, x: &str, y: &str) -> Result<Vec<&str>, KernelError> {
        let ox = self.obj(x).ok_or_else(|| KernelError::UnknownObject(x.into()))?;
        let oy = self.obj(y).ok_or_else(|| KernelError::UnknownObject(y.into()))?;
        Ok(self.hom(ox, oy).iter().map(|&m| self.mor_name(m)).collect())
    }

    /// The opposite category: same identifiers, endpoints swapped.
    pub fn opposite(&self) -> FinCategory {
        let morphisms =
            self.morphisms.iter().map(|r| MorphismRecord { id: r.id.clone(), src: r.dst, dst: r.src }).collect();
        FinCategory::assemble(self.objects.clone(), morphisms, self.identity.clone(), |g, f| self.try_compose(f, g))
            .expect("opposite of a valid category is valid")
    }

    /// The terminal category: one object, one (identity) morphism.
    pub fn terminal(object: &str, identity: &str) -> FinCategory {
        FinCategory::assemble(
            alloc::vec![object.into()],
            alloc::vec![MorphismRecord { id: identity.into(), src: Obj(0), dst: Obj(0) }],
            alloc::vec![Mor(0)],
            |_, _| Some(Mor(0)),
        )
        .expect("terminal category")
    }

    /// String-level view, with composites listed for every composable pair
    /// in deterministic order.
    pub fn to_raw(&self) -> RawCategory {
        let mut compose = Vec::with_capacity(self.table.len());
        for g in self.morphisms() {
            for &f in self.ending_at(self.src(g)) {
                compose.push([
                    self.mor_name(g).into(),
                    self.mor_name(f).into(),
                    self.mor_name(self.compose(g, f)).into(),
                ]);
            }
        }
        RawCategory {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|r| RawMorphism {
                    id: r.id.clone(),
                    src: self.objects[r.src.0].clone(),
                    dst: self.objects[r.dst.0].clone(),
                })
                .collect(),
            identities: self.objects().map(|x| (self.obj_name(x).into(), self.mor_name(self.id(x)).into())).collect(),
            compose,
        }
    }
}

/// Validates a string-level category description.
///
/// Object and morphism order is preserved. Every composable pair must have
/// exactly one listed composite; the axioms are then checked exhaustively.
pub fn validate_category(raw: &RawCategory) -> Result<FinCategory, ValidationError> {
    let mut obj_index = BTreeMap::new();
    for (i, o) in raw.objects.iter().enumerate() {
        if o.is_empty() {
            return Err(ValidationError::EmptyId);
        }
        if obj_index.insert(o.as_str(), Obj(i)).is_some() {
            return Err(ValidationError::DuplicateId(o.clone()));
        }
    }
    let mut morphisms = Vec::with_capacity(raw.morphisms.len());
    let mut mor_index = BTreeMap::new();
    for (i, m) in raw.morphisms.iter().enumerate() {
        let end = |name: &str| {
            obj_index
                .get(name)
                .copied()
                .ok_or_else(|| ValidationError::DanglingEndpoint { morphism: m.id.clone(), object: name.into() })
        };
        morphisms.push(MorphismRecord { id: m.id.clone(), src: end(&m.src)?, dst: end(&m.dst)? });
        if mor_index.insert(m.id.as_str(), Mor(i)).is_some() {
            return Err(ValidationError::DuplicateId(m.id.clone()));
        }
    }
    let mor = |name: &str| mor_index.get(name).copied().ok_or_else(|| ValidationError::Unknown(name.into()));

    let mut identity: Vec<Option<Mor>> = alloc::vec![None; raw.objects.len()];
    for (o, m) in &raw.identities {
        let x = *obj_index.get(o.as_str()).ok_or_else(|| ValidationError::Unknown(o.clone()))?;
        let i = mor(m)?;
        if identity[x.0].replace(i).is_some_and(|prev| prev != i) {
            return Err(ValidationError::DuplicateId(o.clone()));
        }
    }
    let identity = identity
        .into_iter()
        .enumerate()
        .map(|(x, i)| i.ok_or_else(|| ValidationError::MissingIdentity(raw.objects[x].clone())))
        .collect::<Result<Vec<_>, _>>()?;

    let mut table: BTreeMap<(Mor, Mor), Mor> = BTreeMap::new();
    for [g, f, h] in &raw.compose {
        let (gm, fm, hm) = (mor(g)?, mor(f)?, mor(h)?);
        if morphisms[gm.0].src != morphisms[fm.0].dst {
            return Err(ValidationError::NotComposable { g: g.clone(), f: f.clone() });
        }
        if let Some(prev) = table.insert((gm, fm), hm) {
            if prev != hm {
                return Err(ValidationError::ConflictingComposite { g: g.clone(), f: f.clone() });
            }
        }
    }
    let cat = FinCategory::assemble(raw.objects.clone(), morphisms, identity, |g, f| table.get(&(g, f)).copied())?;
    cat.check_axioms()?;
    Ok(cat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::build::tests::m3;
    use alloc::string::ToString;

    #[test]
    fn m3_validates_and_has_three_endomorphisms() {
        let c = m3();
        assert_eq!(c.hom_set("*", "*").unwrap(), ["1", "x", "e"]);
        assert!(validate_category(&c.to_raw()).is_ok());
    }

    #[test]
    fn terminal_is_valid() {
        let t = FinCategory::terminal("*", "id");
        assert!(t.check_axioms().is_ok());
        assert_eq!(t.hom_set("*", "*").unwrap(), ["id"]);
    }

    #[test]
    fn unknown_object_in_hom_set() {
        assert_eq!(m3().hom_set("*", "?"), Err(KernelError::UnknownObject("?".to_string())));
    }

    /// Independent oracle: brute-force associativity and unit laws on a
    /// one-object table given as `(g, f) -> h` over names.
    fn brute_force_monoid_ok(raw: &RawCategory) -> bool {
        let names: Vec<&str> = raw.morphisms.iter().map(|m| m.id.as_str()).collect();
        let get = |g: &str, f: &str| raw.compose.iter().find(|e| e[0] == g && e[1] == f).map(|e| e[2].clone()).unwrap();
        let unit = &raw.identities[0].1;
        names.iter().all(|a| get(unit, a) == *a && get(a, unit) == *a)
            && names
                .iter()
                .all(|a| names.iter().all(|b| names.iter().all(|c| get(&get(a, b), c) == get(a, &get(b, c)))))
    }

    fn mutate(raw: &mut RawCategory, g: &str, f: &str, h: &str) {
        for entry in raw.compose.iter_mut() {
            if entry[0] == g && entry[1] == f {
                entry[2] = h.into();
            }
        }
    }

    #[test]
    fn table_mutations_agree_with_brute_force() {
        // x·x := x turns x into an absorbing element: still a monoid.
        let mut raw = m3().to_raw();
        mutate(&mut raw, "x", "x", "x");
        assert!(brute_force_monoid_ok(&raw));
        assert!(validate_category(&raw).is_ok());

        // x·x := 1 breaks (x·x)·e = x·(x·e).
        let mut raw = m3().to_raw();
        mutate(&mut raw, "x", "x", "1");
        assert!(!brute_force_monoid_ok(&raw));
        assert!(matches!(validate_category(&raw), Err(ValidationError::NotAssociative { .. })));

        // 1·x := e breaks neutrality of the identity.
        let mut raw = m3().to_raw();
        mutate(&mut raw, "1", "x", "e");
        assert!(!brute_force_monoid_ok(&raw));
        assert!(matches!(validate_category(&raw), Err(ValidationError::IdentityNotNeutral { .. })));
    }

    #[test]
    fn missing_composite_is_named() {
        let mut raw = m3().to_raw();
        raw.compose.retain(|e| !(e[0] == "x" && e[1] == "e"));
        assert_eq!(
            validate_category(&raw).unwrap_err(),
            ValidationError::MissingComposite { g: "x".into(), f: "e".into() }
        );
    }

    #[test]
    fn dangling_endpoint_is_named() {
        let mut raw = m3().to_raw();
        raw.morphisms[1].dst = "nowhere".into();
        assert!(matches!(validate_category(&raw), Err(ValidationError::DanglingEndpoint { .. })));
    }

    #[test]
    fn opposite_is_an_involution() {
        let c = m3();
        assert_eq!(c.opposite().opposite(), c);
        // commutative monoid: equal table
        assert_eq!(c.opposite(), c);
    }

    #[test]
    fn mono_epi_split_queries() {
        let c = m3();
        let (one, x, e) = (c.mor("1").unwrap(), c.mor("x").unwrap(), c.mor("e").unwrap());
        assert!(c.is_mono(one) && c.is_epi(one));
        assert!(!c.is_mono(e));
        assert_eq!(c.inverse(x), None);
        assert!(c.is_idempotent(e) && !c.is_idempotent(x));
        assert_eq!(c.idempotents(Obj(0)), [one, e]);
    }
}
