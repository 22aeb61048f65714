//! Transformations between parallel semifunctors: naturality and
//! seminaturality, vertical composition and whiskering, and witness search
//! (semi-inverses, natural semisplit monos/epis, enumeration).
//!
//! All searches go through [`ComponentSearch`], a backtracking solver over
//! per-object component choices. Objects are assigned in ascending order of
//! candidate count; each assignment checks every naturality square whose
//! endpoints are both assigned.

use crate::kernel::{FinCategory, Mor, Obj};
use crate::semifunctor::{compose_semifunctors, Semifunctor};
use alloc::string::String;
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TransformError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(&'static str),
    #[error("component at `{0}` has the wrong endpoints")]
    EndpointMismatch(String),
    #[error("transformation is not seminatural")]
    NotSeminatural,
}

/// A family `α_X: FX → F'X` indexed by the objects of the common source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transformation {
    from: Semifunctor,
    to: Semifunctor,
    components: Vec<Mor>,
}

fn parallel(f: &Semifunctor, g: &Semifunctor) -> bool {
    f.source() == g.source() && f.target() == g.target()
}

impl Transformation {
    /// Checks that `from`/`to` are parallel and every component has the
    /// right endpoints. Naturality is decided separately.
    pub fn new(from: Semifunctor, to: Semifunctor, components: Vec<Mor>) -> Result<Self, TransformError> {
        if !parallel(&from, &to) {
            return Err(TransformError::ShapeMismatch("semifunctors are not parallel"));
        }
        let (c, d) = (from.source().clone(), from.target().clone());
        if components.len() != c.num_objects() {
            return Err(TransformError::ShapeMismatch("one component per source object"));
        }
        for x in c.objects() {
            let a = components[x.0];
            if a.0 >= d.num_morphisms() || d.src(a) != from.obj(x) || d.dst(a) != to.obj(x) {
                return Err(TransformError::EndpointMismatch(c.obj_name(x).into()));
            }
        }
        Ok(Transformation { from, to, components })
    }

    /// `Id_F`: components `Id_{FX}`.
    pub fn identity(f: &Semifunctor) -> Self {
        let components = f.source().objects().map(|x| f.target().id(f.obj(x))).collect();
        Transformation { from: f.clone(), to: f.clone(), components }
    }

    /// `F Id`: components `F(Id_X)`.
    pub fn image_identity(f: &Semifunctor) -> Self {
        Transformation { from: f.clone(), to: f.clone(), components: f.image_identities() }
    }

    pub fn from(&self) -> &Semifunctor {
        &self.from
    }
    pub fn to(&self) -> &Semifunctor {
        &self.to
    }
    pub fn component(&self, x: Obj) -> Mor {
        self.components[x.0]
    }
    pub fn components(&self) -> &[Mor] {
        &self.components
    }
    fn target(&self) -> &FinCategory {
        self.from.target()
    }

    /// First morphism `f: X → X'` whose square `α_{X'} ∘ Ff = F'f ∘ α_X` fails.
    pub fn naturality_failure(&self) -> Option<Mor> {
        let (c, d) = (self.from.source(), self.target());
        c.morphisms().find(|&f| {
            d.compose(self.component(c.dst(f)), self.from.mor(f)) != d.compose(self.to.mor(f), self.component(c.src(f)))
        })
    }

    pub fn is_natural(&self) -> bool {
        self.naturality_failure().is_none()
    }

    /// Natural and `α_X ∘ F(Id_X) = α_X` for every `X`.
    pub fn is_seminatural(&self) -> bool {
        let d = self.target();
        self.is_natural()
            && self
                .from
                .source()
                .objects()
                .all(|x| d.compose(self.component(x), self.from.image_identity(x)) == self.component(x))
    }
}

/// `β ∘ α`, componentwise.
pub fn vertical_compose(beta: &Transformation, alpha: &Transformation) -> Result<Transformation, TransformError> {
    if alpha.to != beta.from {
        return Err(TransformError::ShapeMismatch("codomain of α is not the domain of β"));
    }
    let d = alpha.target();
    let components = alpha.components.iter().zip(&beta.components).map(|(&a, &b)| d.compose(b, a)).collect();
    Ok(Transformation { from: alpha.from.clone(), to: beta.to.clone(), components })
}

/// `Hα`: components `H(α_X)`.
pub fn whisker_left(h: &Semifunctor, alpha: &Transformation) -> Result<Transformation, TransformError> {
    let shape = TransformError::ShapeMismatch("H must start where α lands");
    let from = compose_semifunctors(h, &alpha.from).map_err(|_| shape.clone())?;
    let to = compose_semifunctors(h, &alpha.to).map_err(|_| shape)?;
    let components = alpha.components.iter().map(|&a| h.mor(a)).collect();
    Ok(Transformation { from, to, components })
}

/// `αK`: components `α_{KX}`.
pub fn whisker_right(alpha: &Transformation, k: &Semifunctor) -> Result<Transformation, TransformError> {
    let shape = TransformError::ShapeMismatch("K must land where α starts");
    let from = compose_semifunctors(&alpha.from, k).map_err(|_| shape.clone())?;
    let to = compose_semifunctors(&alpha.to, k).map_err(|_| shape)?;
    let components = k.source().objects().map(|x| alpha.component(k.obj(x))).collect();
    Ok(Transformation { from, to, components })
}

/// Backtracking search for natural families `from → to` subject to a
/// per-object predicate on components.
pub struct ComponentSearch<'a> {
    from: &'a Semifunctor,
    to: &'a Semifunctor,
    order: Vec<Obj>,
    domains: Vec<Vec<Mor>>,
    // checks[i]: morphisms whose squares close when order[i] is assigned
    checks: Vec<Vec<Mor>>,
}

impl<'a> ComponentSearch<'a> {
    /// `seminatural` adds `α_X ∘ F(Id_X) = α_X` to the per-object predicate.
    pub fn new(
        from: &'a Semifunctor,
        to: &'a Semifunctor,
        seminatural: bool,
        unary: impl Fn(Obj, Mor) -> bool,
    ) -> Result<Self, TransformError> {
        if !parallel(from, to) {
            return Err(TransformError::ShapeMismatch("semifunctors are not parallel"));
        }
        let (c, d) = (from.source(), from.target());
        let domains: Vec<Vec<Mor>> = c
            .objects()
            .map(|x| {
                d.hom(from.obj(x), to.obj(x))
                    .iter()
                    .copied()
                    .filter(|&a| !seminatural || d.compose(a, from.image_identity(x)) == a)
                    .filter(|&a| unary(x, a))
                    .collect()
            })
            .collect();
        let mut order: Vec<Obj> = c.objects().collect();
        order.sort_by_key(|x| (domains[x.0].len(), x.0));
        let mut rank = alloc::vec![0; c.num_objects()];
        for (i, x) in order.iter().enumerate() {
            rank[x.0] = i;
        }
        let mut checks = alloc::vec![Vec::new(); order.len()];
        for f in c.morphisms() {
            checks[rank[c.src(f).0].max(rank[c.dst(f).0])].push(f);
        }
        Ok(ComponentSearch { from, to, order, domains, checks })
    }

    /// Number of candidates for the first assigned object; the search
    /// space splits into this many independent branches.
    pub fn root_branches(&self) -> usize {
        self.order.first().map_or(1, |x| self.domains[x.0].len())
    }

    fn square_ok(&self, assigned: &[Option<Mor>], f: Mor) -> bool {
        let (c, d) = (self.from.source(), self.from.target());
        let (a, b) = (assigned[c.src(f).0].unwrap(), assigned[c.dst(f).0].unwrap());
        d.compose(b, self.from.mor(f)) == d.compose(self.to.mor(f), a)
    }

    fn descend(
        &self,
        depth: usize,
        assigned: &mut [Option<Mor>],
        visit: &mut dyn FnMut(&[Option<Mor>]) -> bool,
    ) -> bool {
        if depth == self.order.len() {
            return visit(assigned);
        }
        let x = self.order[depth];
        for &cand in &self.domains[x.0] {
            assigned[x.0] = Some(cand);
            if self.checks[depth].iter().all(|&f| self.square_ok(assigned, f))
                && self.descend(depth + 1, assigned, visit)
            {
                assigned[x.0] = None;
                return true;
            }
        }
        assigned[x.0] = None;
        false
    }

    fn run(&self, root: Option<usize>, visit: &mut dyn FnMut(&[Option<Mor>]) -> bool) {
        let mut assigned = alloc::vec![None; self.from.source().num_objects()];
        match (root, self.order.first()) {
            (Some(i), Some(&x)) => {
                let Some(&cand) = self.domains[x.0].get(i) else { return };
                assigned[x.0] = Some(cand);
                if self.checks[0].iter().all(|&f| self.square_ok(&assigned, f)) {
                    self.descend(1, &mut assigned, visit);
                }
            }
            _ => {
                self.descend(0, &mut assigned, visit);
            }
        }
    }

    fn wrap(&self, comps: &[Option<Mor>]) -> Transformation {
        Transformation {
            from: self.from.clone(),
            to: self.to.clone(),
            components: comps.iter().map(|c| c.unwrap()).collect(),
        }
    }

    /// First solution in search order.
    pub fn first(&self) -> Option<Transformation> {
        let mut found = None;
        self.run(None, &mut |a| {
            found = Some(self.wrap(a));
            true
        });
        found
    }

    /// First solution inside root branch `i`; branches are ordered so that
    /// the least successful branch index gives [`ComponentSearch::first`].
    pub fn first_in_branch(&self, i: usize) -> Option<Transformation> {
        let mut found = None;
        self.run(Some(i), &mut |a| {
            found = Some(self.wrap(a));
            true
        });
        found
    }

    /// Every solution, in search order.
    pub fn all(&self) -> Vec<Transformation> {
        let mut out = Vec::new();
        self.run(None, &mut |a| {
            out.push(self.wrap(a));
            false
        });
        out
    }
}

/// All seminatural transformations `F → F'`.
pub fn enumerate_seminatural(f: &Semifunctor, g: &Semifunctor) -> Result<Vec<Transformation>, TransformError> {
    Ok(ComponentSearch::new(f, g, true, |_, _| true)?.all())
}

fn require_seminatural(alpha: &Transformation) -> Result<(), TransformError> {
    if alpha.is_seminatural() {
        Ok(())
    } else {
        Err(TransformError::NotSeminatural)
    }
}

/// Which one-sided or two-sided inverse a witness search looks for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InverseKind {
    /// `β ∘ α = F Id`
    SemisplitMono,
    /// `α ∘ β = F' Id`
    SemisplitEpi,
    /// both of the above
    SemiIso,
    /// `β ∘ α = Id_F`
    SplitMono,
    /// `α ∘ β = Id_{F'}`
    SplitEpi,
}

/// The search problem for a seminatural `β: F' → F` of the given kind.
pub fn inverse_search(alpha: &Transformation, kind: InverseKind) -> Result<ComponentSearch<'_>, TransformError> {
    require_seminatural(alpha)?;
    let (f, g) = (&alpha.from, &alpha.to);
    let d = alpha.target();
    ComponentSearch::new(g, f, true, move |x, b| {
        let a = alpha.component(x);
        let left = || d.compose(b, a);
        let right = || d.compose(a, b);
        match kind {
            InverseKind::SemisplitMono => left() == f.image_identity(x),
            InverseKind::SemisplitEpi => right() == g.image_identity(x),
            InverseKind::SemiIso => left() == f.image_identity(x) && right() == g.image_identity(x),
            InverseKind::SplitMono => left() == d.id(f.obj(x)),
            InverseKind::SplitEpi => right() == d.id(g.obj(x)),
        }
    })
}

/// The semi-inverse `β` of a natural semi-isomorphism `α`, if any.
pub fn find_semi_inverse(alpha: &Transformation) -> Result<Option<Transformation>, TransformError> {
    Ok(inverse_search(alpha, InverseKind::SemiIso)?.first())
}

/// A seminatural `β` with `β ∘ α = F Id`.
pub fn natural_semisplit_mono_witness(alpha: &Transformation) -> Result<Option<Transformation>, TransformError> {
    Ok(inverse_search(alpha, InverseKind::SemisplitMono)?.first())
}

/// A seminatural `β` with `α ∘ β = F' Id`.
pub fn natural_semisplit_epi_witness(alpha: &Transformation) -> Result<Option<Transformation>, TransformError> {
    Ok(inverse_search(alpha, InverseKind::SemisplitEpi)?.first())
}

/// A seminatural `β` with `β ∘ α = Id_F`.
pub fn natural_split_mono_witness(alpha: &Transformation) -> Result<Option<Transformation>, TransformError> {
    Ok(inverse_search(alpha, InverseKind::SplitMono)?.first())
}

/// A seminatural `β` with `α ∘ β = Id_{F'}`.
pub fn natural_split_epi_witness(alpha: &Transformation) -> Result<Option<Transformation>, TransformError> {
    Ok(inverse_search(alpha, InverseKind::SplitEpi)?.first())
}
