//! Semiadjunctions `F ⊣ₛ G` presented by unit and counit subject to the
//! semitriangular identities `Gε∘ηG = G Id` and `εF∘Fη = F Id`, together
//! with the constructions and characterisations built on them.

use crate::kernel::{FinCategory, Mor, Obj};
use crate::morphprop::{cc_semi_isomorphism, fc_semisplit_epi_witness, fc_semisplit_mono_witness};
use crate::props::{is_naturally_semifull, is_semifully_faithful, is_semiseparable, is_separable, PMode, PSolution};
use crate::semifunctor::{canonical_e, compose_semifunctors, IdemNatTransf, Semifunctor};
use crate::transform::{ComponentSearch, TransformError, Transformation};
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SemiadjError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(&'static str),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error("{which} is not natural")]
    NotNatural { which: &'static str },
    #[error("semitriangular identity {side} fails at `{object}`")]
    SemitriangularFailure { side: &'static str, object: String },
    #[error("data does not satisfy Gε∘ηG = G Id")]
    NotRightSemiadjointData,
    #[error("data does not satisfy εF∘Fη = F Id")]
    NotLeftSemiadjointData,
    #[error("left and right semiadjoints differ")]
    NotSelfAdjoint,
    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(&'static str),
    #[error("{0} differs between the outer semiadjoints")]
    AssertionFailure(&'static str),
}

const G_SIDE: &str = "Gε∘ηG = G Id";
const F_SIDE: &str = "εF∘Fη = F Id";

/// `(F, G, η, ε)` with both semitriangular identities verified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semiadjunction {
    f: Semifunctor,
    g: Semifunctor,
    unit: Transformation,
    counit: Transformation,
}

fn shape(f: &Semifunctor, g: &Semifunctor) -> Result<(Semifunctor, Semifunctor), SemiadjError> {
    if f.source() != g.target() || f.target() != g.source() {
        return Err(SemiadjError::ShapeMismatch("F: C → D and G: D → C required"));
    }
    let gf = compose_semifunctors(g, f).expect("shapes checked");
    let fg = compose_semifunctors(f, g).expect("shapes checked");
    Ok((gf, fg))
}

fn data(
    f: &Semifunctor,
    g: &Semifunctor,
    unit: Vec<Mor>,
    counit: Vec<Mor>,
) -> Result<(Transformation, Transformation), SemiadjError> {
    let (gf, fg) = shape(f, g)?;
    let unit = Transformation::new(Semifunctor::identity(f.source().clone()), gf, unit)?;
    let counit = Transformation::new(fg, Semifunctor::identity(f.target().clone()), counit)?;
    if !unit.is_seminatural() {
        return Err(SemiadjError::NotNatural { which: "unit" });
    }
    if !counit.is_seminatural() {
        return Err(SemiadjError::NotNatural { which: "counit" });
    }
    Ok((unit, counit))
}

/// First `D` where `Gε_D∘η_{GD} ≠ G Id_D`.
fn right_triangle_failure(g: &Semifunctor, unit: &Transformation, counit: &Transformation) -> Option<Obj> {
    let c = g.target();
    g.source()
        .objects()
        .find(|&x| c.compose(g.mor(counit.component(x)), unit.component(g.obj(x))) != g.image_identity(x))
}

/// First `C` where `ε_{FC}∘Fη_C ≠ F Id_C`.
fn left_triangle_failure(f: &Semifunctor, unit: &Transformation, counit: &Transformation) -> Option<Obj> {
    let d = f.target();
    f.source()
        .objects()
        .find(|&x| d.compose(counit.component(f.obj(x)), f.mor(unit.component(x))) != f.image_identity(x))
}

impl Semiadjunction {
    /// Validates naturality of `η: Id_C → GF` and `ε: FG → Id_D`, then both
    /// semitriangular identities.
    pub fn new(f: Semifunctor, g: Semifunctor, unit: Vec<Mor>, counit: Vec<Mor>) -> Result<Self, SemiadjError> {
        let (unit, counit) = data(&f, &g, unit, counit)?;
        if let Some(x) = right_triangle_failure(&g, &unit, &counit) {
            return Err(SemiadjError::SemitriangularFailure { side: G_SIDE, object: g.source().obj_name(x).into() });
        }
        if let Some(x) = left_triangle_failure(&f, &unit, &counit) {
            return Err(SemiadjError::SemitriangularFailure { side: F_SIDE, object: f.source().obj_name(x).into() });
        }
        Ok(Semiadjunction { f, g, unit, counit })
    }

    /// `Id ⊣ Id` with identity unit and counit.
    pub fn identity(c: Arc<FinCategory>) -> Self {
        let id = Semifunctor::identity(c.clone());
        let comps: Vec<Mor> = c.objects().map(|x| c.id(x)).collect();
        Semiadjunction::new(id.clone(), id, comps.clone(), comps).expect("identity adjunction")
    }

    /// `Eᵉ ⊣ₛ Eᵉ` with unit and counit `e`.
    pub fn canonical(e: &IdemNatTransf) -> Self {
        let ee = canonical_e(e);
        let comps = e.components().to_vec();
        Semiadjunction::new(ee.clone(), ee, comps.clone(), comps).expect("Eᵉ is self-semiadjoint")
    }

    pub fn left(&self) -> &Semifunctor {
        &self.f
    }
    pub fn right(&self) -> &Semifunctor {
        &self.g
    }
    pub fn unit(&self) -> &Transformation {
        &self.unit
    }
    pub fn counit(&self) -> &Transformation {
        &self.counit
    }
    /// `GF`
    pub fn monad(&self) -> &Semifunctor {
        self.unit.to()
    }
    /// `FG`
    pub fn comonad(&self) -> &Semifunctor {
        self.counit.from()
    }
    fn c(&self) -> &Arc<FinCategory> {
        self.f.source()
    }
    fn d(&self) -> &Arc<FinCategory> {
        self.f.target()
    }

    /// `τ_{C,D}(h) = G(h)∘η_C` for `h: FC → D`.
    pub fn tau(&self, c: Obj, h: Mor) -> Result<Mor, SemiadjError> {
        let d = self.d();
        if h.0 >= d.num_morphisms() || d.src(h) != self.f.obj(c) {
            return Err(SemiadjError::EndpointMismatch("τ expects h: FC → D"));
        }
        Ok(self.c().compose(self.g.mor(h), self.unit.component(c)))
    }

    /// `σ_{C,D}(g) = ε_D∘F(g)` for `g: C → GD`.
    pub fn sigma(&self, dobj: Obj, g: Mor) -> Result<Mor, SemiadjError> {
        let c = self.c();
        if g.0 >= c.num_morphisms() || c.dst(g) != self.g.obj(dobj) {
            return Err(SemiadjError::EndpointMismatch("σ expects g: C → GD"));
        }
        Ok(self.d().compose(self.counit.component(dobj), self.f.mor(g)))
    }
}

/// `F'F ⊣ₛ GG'` with unit `Gη'F∘η` and counit `ε'∘F'εG'`.
pub fn compose_semiadjunctions(inner: &Semiadjunction, outer: &Semiadjunction) -> Result<Semiadjunction, SemiadjError> {
    if inner.d() != outer.c() {
        return Err(SemiadjError::ShapeMismatch("middle categories differ"));
    }
    let ff = compose_semifunctors(&outer.f, &inner.f).expect("middle checked");
    let gg = compose_semifunctors(&inner.g, &outer.g).expect("middle checked");
    let (c, e) = (inner.c(), outer.d());
    let unit = c
        .objects()
        .map(|x| c.compose(inner.g.mor(outer.unit.component(inner.f.obj(x))), inner.unit.component(x)))
        .collect();
    let counit = e
        .objects()
        .map(|z| e.compose(outer.counit.component(z), outer.f.mor(inner.counit.component(outer.g.obj(z)))))
        .collect();
    Semiadjunction::new(ff, gg, unit, counit)
}

/// From data with only `Gε∘ηG = G Id`: replaces `F` by `F'f = Ff∘e_X` where
/// `e = εF∘Fη`, keeping `η` and `ε`.
pub fn promote_right_semiadjoint(
    f: &Semifunctor,
    g: &Semifunctor,
    unit: Vec<Mor>,
    counit: Vec<Mor>,
) -> Result<Semiadjunction, SemiadjError> {
    let (u, e) = data(f, g, unit.clone(), counit.clone())?;
    if right_triangle_failure(g, &u, &e).is_some() {
        return Err(SemiadjError::NotRightSemiadjointData);
    }
    let (c, d) = (f.source(), f.target());
    let idem: Vec<Mor> = c.objects().map(|x| d.compose(e.component(f.obj(x)), f.mor(u.component(x)))).collect();
    let mor_map = c.morphisms().map(|m| d.compose(f.mor(m), idem[c.src(m).0])).collect();
    let f2 = Semifunctor::new(c.clone(), d.clone(), f.obj_map().to_vec(), mor_map)
        .map_err(|_| SemiadjError::NotRightSemiadjointData)?;
    Semiadjunction::new(f2, g.clone(), unit, counit)
}

/// From data with only `εF∘Fη = F Id`: replaces `G` by `G'g = Gg∘e'_D` where
/// `e' = Gε∘ηG`, keeping `η` and `ε`.
pub fn promote_left_semiadjoint(
    f: &Semifunctor,
    g: &Semifunctor,
    unit: Vec<Mor>,
    counit: Vec<Mor>,
) -> Result<Semiadjunction, SemiadjError> {
    let (u, e) = data(f, g, unit.clone(), counit.clone())?;
    if left_triangle_failure(f, &u, &e).is_some() {
        return Err(SemiadjError::NotLeftSemiadjointData);
    }
    let (c, d) = (f.source(), f.target());
    let idem: Vec<Mor> = d.objects().map(|y| c.compose(g.mor(e.component(y)), u.component(g.obj(y)))).collect();
    let mor_map = d.morphisms().map(|m| c.compose(g.mor(m), idem[d.src(m).0])).collect();
    let g2 = Semifunctor::new(d.clone(), c.clone(), g.obj_map().to_vec(), mor_map)
        .map_err(|_| SemiadjError::NotLeftSemiadjointData)?;
    Semiadjunction::new(f.clone(), g2, unit, counit)
}

/// For `F ⊣ₛ G` and `F ⊣ₛ G'`: `γ = G'ε∘η'G: G → G'` and
/// `γ' = Gε'∘ηG': G' → G`, checked to be mutually semi-inverse.
pub fn right_adjoints_semiiso(
    a: &Semiadjunction,
    b: &Semiadjunction,
) -> Result<(Transformation, Transformation), SemiadjError> {
    if a.f != b.f {
        return Err(SemiadjError::ShapeMismatch("left semiadjoints differ"));
    }
    let (c, d) = (a.c(), a.d());
    let gamma = d.objects().map(|y| c.compose(b.g.mor(a.counit.component(y)), b.unit.component(a.g.obj(y)))).collect();
    let gamma2 = d.objects().map(|y| c.compose(a.g.mor(b.counit.component(y)), a.unit.component(b.g.obj(y)))).collect();
    let gamma = Transformation::new(a.g.clone(), b.g.clone(), gamma)?;
    let gamma2 = Transformation::new(b.g.clone(), a.g.clone(), gamma2)?;
    let ok = gamma.is_seminatural()
        && gamma2.is_seminatural()
        && d.objects().all(|y| {
            c.compose(gamma2.component(y), gamma.component(y)) == a.g.image_identity(y)
                && c.compose(gamma.component(y), gamma2.component(y)) == b.g.image_identity(y)
        });
    if !ok {
        return Err(SemiadjError::AssertionFailure("semi-inverse pair of right semiadjoints"));
    }
    Ok((gamma, gamma2))
}

/// Which semiadjoint a witness search is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// `F`, witnessed by `ν: GF → Id_C`.
    Left,
    /// `G`, witnessed by `γ: Id_D → FG`.
    Right,
}

/// The search for `ν: GF → Id_C` (left) or `γ: Id_D → FG` (right) satisfying
/// the unit/counit form of `mode`:
///
/// | mode | left | right |
/// |---|---|---|
/// | separable | `ν∘η = Id` | `ε∘γ = Id` |
/// | naturally semifull | `η∘ν = GF Id` | `γ∘ε = FG Id` |
/// | semiseparable | `η∘ν∘η = η` | `ε∘γ∘ε = ε` |
pub fn rafael_search(adj: &Semiadjunction, side: Side, mode: PMode) -> ComponentSearch<'_> {
    let (c, d) = (adj.c().clone(), adj.d().clone());
    match side {
        Side::Left => {
            let (eta, gf) = (&adj.unit, adj.monad());
            ComponentSearch::new(gf, eta.from(), true, move |x, nu| {
                let h = eta.component(x);
                match mode {
                    PMode::Separable => c.compose(nu, h) == c.id(x),
                    PMode::NaturallySemifull => c.compose(h, nu) == gf.image_identity(x),
                    PMode::Semiseparable => c.compose_all(&[h, nu, h]) == h,
                }
            })
        }
        Side::Right => {
            let (eps, fg) = (&adj.counit, adj.comonad());
            ComponentSearch::new(eps.to(), fg, true, move |y, gamma| {
                let k = eps.component(y);
                match mode {
                    PMode::Separable => d.compose(k, gamma) == d.id(y),
                    PMode::NaturallySemifull => d.compose(gamma, k) == fg.image_identity(y),
                    PMode::Semiseparable => d.compose_all(&[k, gamma, k]) == k,
                }
            })
        }
    }
    .expect("parallel by construction")
}

/// `P` induced by a left witness `ν` (`P(g) = ν_Y∘Gg∘η_X`, a family for `F`)
/// or a right witness `γ` (`P(g) = ε_{Y}∘Fg∘γ_X`, a family for `G`).
pub fn induced_p(adj: &Semiadjunction, side: Side, mode: PMode, witness: &Transformation) -> PSolution {
    match side {
        Side::Left => {
            let c = adj.c();
            PSolution::from_fn(&adj.f, mode, |cell| {
                c.compose_all(&[witness.component(cell.y), adj.g.mor(cell.d), adj.unit.component(cell.x)])
            })
        }
        Side::Right => {
            let d = adj.d();
            PSolution::from_fn(&adj.g, mode, |cell| {
                d.compose_all(&[adj.counit.component(cell.y), adj.f.mor(cell.d), witness.component(cell.x)])
            })
        }
    }
}

/// Recovers the witness from `P`: `ν_X = P_{GFX,X}(ε_{FX})` (left) or
/// `γ_Y = P_{Y,FGY}(η_{GY})` (right).
pub fn witness_from_p(adj: &Semiadjunction, side: Side, p: &PSolution) -> Vec<Mor> {
    match side {
        Side::Left => {
            adj.c().objects().map(|x| p.value(adj.monad().obj(x), x, adj.counit.component(adj.f.obj(x)))).collect()
        }
        Side::Right => {
            adj.d().objects().map(|y| p.value(y, adj.comonad().obj(y), adj.unit.component(adj.g.obj(y)))).collect()
        }
    }
}

/// A unit/counit witness and the `P` it induces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RafaelWitness {
    pub witness: Transformation,
    pub p: PSolution,
}

/// First witness of `mode` on `side`, with its induced `P`.
pub fn rafael(adj: &Semiadjunction, side: Side, mode: PMode) -> Option<RafaelWitness> {
    let witness = rafael_search(adj, side, mode).first()?;
    let p = induced_p(adj, side, mode, &witness);
    Some(RafaelWitness { witness, p })
}

/// `Fν∘Fη = F Id` (left) or `Gε∘Gγ = G Id` (right): the second form of the
/// semiseparability condition.
pub fn semisep_second_form(adj: &Semiadjunction, side: Side, witness: &Transformation) -> bool {
    match side {
        Side::Left => adj.c().objects().all(|x| {
            adj.d().compose(adj.f.mor(witness.component(x)), adj.f.mor(adj.unit.component(x)))
                == adj.f.image_identity(x)
        }),
        Side::Right => adj.d().objects().all(|y| {
            adj.c().compose(adj.g.mor(adj.counit.component(y)), adj.g.mor(witness.component(y)))
                == adj.g.image_identity(y)
        }),
    }
}

/// Per-object properties of `η_C` and `ε_D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitCounitReport {
    /// `η_C` mono, `(GF)_C`-semisplit-epi, `(Id_C, GF_C)`-semi-iso
    pub unit: Vec<[bool; 3]>,
    /// `ε_D` epi, `(FG)_D`-semisplit-mono, `(FG_D, Id_D)`-semi-iso
    pub counit: Vec<[bool; 3]>,
}

impl UnitCounitReport {
    pub fn left_faithful(&self) -> bool {
        self.unit.iter().all(|r| r[0])
    }
    pub fn left_semifull(&self) -> bool {
        self.unit.iter().all(|r| r[1])
    }
    pub fn left_sff(&self) -> bool {
        self.unit.iter().all(|r| r[2])
    }
    pub fn right_faithful(&self) -> bool {
        self.counit.iter().all(|r| r[0])
    }
    pub fn right_semifull(&self) -> bool {
        self.counit.iter().all(|r| r[1])
    }
    pub fn right_sff(&self) -> bool {
        self.counit.iter().all(|r| r[2])
    }
}

pub fn char_unit_counit(adj: &Semiadjunction) -> UnitCounitReport {
    let (c, d) = (adj.c(), adj.d());
    let (idc, idd) = (adj.unit.from(), adj.counit.to());
    let (gf, fg) = (adj.monad(), adj.comonad());
    let unit = c
        .objects()
        .map(|x| {
            let h = adj.unit.component(x);
            [
                c.is_mono(h),
                fc_semisplit_epi_witness(gf, x, h).unwrap().is_some(),
                cc_semi_isomorphism(idc, x, gf, x, h).unwrap().is_some(),
            ]
        })
        .collect();
    let counit = d
        .objects()
        .map(|y| {
            let k = adj.counit.component(y);
            [
                d.is_epi(k),
                fc_semisplit_mono_witness(fg, y, k).unwrap().is_some(),
                cc_semi_isomorphism(fg, y, idd, y, k).unwrap().is_some(),
            ]
        })
        .collect();
    UnitCounitReport { unit, counit }
}

/// For `E ⊣ₛ E`: `e = εE∘Eη: E → E`, checked idempotent and seminatural.
pub fn idempotent_from_self_semiadjoint(adj: &Semiadjunction) -> Result<Transformation, SemiadjError> {
    if adj.f != adj.g {
        return Err(SemiadjError::NotSelfAdjoint);
    }
    let (c, e) = (adj.c(), &adj.f);
    let comps: Vec<Mor> =
        c.objects().map(|x| c.compose(adj.counit.component(e.obj(x)), e.mor(adj.unit.component(x)))).collect();
    let t = Transformation::new(e.clone(), e.clone(), comps)?;
    let idempotent = c.objects().all(|x| c.is_idempotent(t.component(x)));
    if !idempotent || !t.is_seminatural() {
        return Err(SemiadjError::AssertionFailure("εE∘Eη is an idempotent seminatural transformation"));
    }
    Ok(t)
}

/// One row per property: `(name, verdict for F, verdict for H)`.
pub type TripleReport = Vec<(&'static str, bool, bool)>;

/// For `F ⊣ₛ G ⊣ₛ H`, checks that `F` and `H` agree on semiseparability,
/// separability, natural semifullness and semifull faithfulness.
pub fn triple_transfer(fg: &Semiadjunction, gh: &Semiadjunction) -> Result<TripleReport, SemiadjError> {
    if fg.g != gh.f {
        return Err(SemiadjError::ShapeMismatch("the middle semifunctors differ"));
    }
    let (f, h) = (&fg.f, &gh.g);
    type Check = (&'static str, fn(&Semifunctor) -> bool);
    let checks: [Check; 4] = [
        ("semiseparable", is_semiseparable),
        ("separable", is_separable),
        ("naturally-semifull", is_naturally_semifull),
        ("semifully-faithful", is_semifully_faithful),
    ];
    let report: TripleReport = checks.iter().map(|&(name, p)| (name, p(f), p(h))).collect();
    if let Some(&(name, _, _)) = report.iter().find(|r| r.1 != r.2) {
        return Err(SemiadjError::AssertionFailure(name));
    }
    Ok(report)
}
