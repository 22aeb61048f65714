//! Semifunctor-level properties: faithful, full, semifull, and the three
//! properties witnessed by a natural family `P_{X,Y}: Hom(FX, FY) → Hom(X, Y)`
//! (separable, naturally semifull, semiseparable); the associated idempotent
//! of a semiseparable semifunctor; transfer of splittings along `P`.
//!
//! `P` is found by constraint propagation. A *cell* is a triple `(X, Y, d)`
//! with `d: FX → FY`; its value is `P_{X,Y}(d) ∈ Hom(X, Y)`. Fixing the value
//! `p` of `(Y, Z, k)` forces `(X, T, Fl∘k∘Fh) = l∘p∘h` for every `h: X → Y`
//! and `l: Z → T`, so one assignment typically determines many cells. The
//! mode equation narrows each cell's domain up front; the search branches on
//! the unassigned cell with the fewest candidates.

use crate::kernel::{FinCategory, Mor, Obj};
use crate::morphprop::{fc_semisplit_epi_witness, fc_semisplit_mono_witness};
use crate::semifunctor::{IdemNatTransf, Semifunctor};
use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PropsError {
    #[error("the family does not satisfy the semiseparability equation")]
    NotSemiseparableSolution,
    #[error("hypothesis not satisfied: {0}")]
    HypothesisNotSatisfied(&'static str),
    #[error("invariant violated: {0}")]
    InvariantViolated(&'static str),
}

/// Which equation `P` must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PMode {
    /// `P(Ff) = f`
    Separable,
    /// `F(P(d)) = FId_Y ∘ d ∘ FId_X`
    NaturallySemifull,
    /// `F(P(Ff)) = Ff`
    Semiseparable,
}

impl PMode {
    pub const ALL: [PMode; 3] = [PMode::Separable, PMode::NaturallySemifull, PMode::Semiseparable];

    pub fn name(self) -> &'static str {
        match self {
            PMode::Separable => "separable",
            PMode::NaturallySemifull => "naturally-semifull",
            PMode::Semiseparable => "semiseparable",
        }
    }
}

/// `(X, Y, d)` with `d: FX → FY`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PCell {
    pub x: Obj,
    pub y: Obj,
    pub d: Mor,
}

/// Dense numbering of the cells of a semifunctor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellLayout {
    n: usize,
    base: Vec<usize>,
    cells: Vec<PCell>,
}

impl CellLayout {
    pub fn new(f: &Semifunctor) -> Self {
        let (c, d) = (f.source(), f.target());
        let n = c.num_objects();
        let mut base = Vec::with_capacity(n * n);
        let mut cells = Vec::new();
        for x in c.objects() {
            for y in c.objects() {
                base.push(cells.len());
                cells.extend(d.hom(f.obj(x), f.obj(y)).iter().map(|&dm| PCell { x, y, d: dm }));
            }
        }
        CellLayout { n, base, cells }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }
    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
    pub fn cells(&self) -> &[PCell] {
        &self.cells
    }
    /// Index of `(x, y, d)`; `d` must lie in `Hom(FX, FY)`.
    pub fn index(&self, target: &FinCategory, x: Obj, y: Obj, d: Mor) -> usize {
        self.base[x.0 * self.n + y.0] + target.hom_index(d)
    }
}

/// Why a candidate family fails to be a valid `P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PFailure {
    /// The value of the cell is not a morphism `X → Y`.
    Endpoints(PCell),
    /// `P(Fl∘k∘Fh) ≠ l∘P(k)∘h`.
    Naturality { cell: PCell, h: Mor, l: Mor },
    /// The mode equation fails at this cell.
    ModeEquation(PCell),
    /// `P(FId_Y∘d∘FId_X) ≠ P(d)`; implied by naturality, so this is a bug.
    Seminaturality(PCell),
}

/// A natural family `P_{X,Y}: Hom(FX, FY) → Hom(X, Y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PSolution {
    functor: Semifunctor,
    mode: PMode,
    layout: CellLayout,
    values: Vec<Mor>,
}

impl PSolution {
    /// Tabulates `value` over every cell. Nothing is checked; see [`PSolution::check`].
    pub fn from_fn(f: &Semifunctor, mode: PMode, mut value: impl FnMut(PCell) -> Mor) -> Self {
        let layout = CellLayout::new(f);
        let values = layout.cells.iter().map(|&cell| value(cell)).collect();
        PSolution { functor: f.clone(), mode, layout, values }
    }

    pub fn functor(&self) -> &Semifunctor {
        &self.functor
    }
    pub fn mode(&self) -> PMode {
        self.mode
    }
    pub fn layout(&self) -> &CellLayout {
        &self.layout
    }
    pub fn values(&self) -> &[Mor] {
        &self.values
    }

    /// `P_{X,Y}(d)`.
    pub fn value(&self, x: Obj, y: Obj, d: Mor) -> Mor {
        self.values[self.layout.index(self.functor.target(), x, y, d)]
    }

    pub fn cells(&self) -> impl Iterator<Item = (PCell, Mor)> + '_ {
        self.layout.cells.iter().copied().zip(self.values.iter().copied())
    }

    /// Checks endpoints, naturality, seminaturality and the equation of `mode`
    /// (which need not be the mode the family was found for).
    pub fn check(&self, mode: PMode) -> Result<(), PFailure> {
        let f = &self.functor;
        let (c, d) = (f.source(), f.target());
        for (cell, p) in self.cells() {
            if p.0 >= c.num_morphisms() || c.src(p) != cell.x || c.dst(p) != cell.y {
                return Err(PFailure::Endpoints(cell));
            }
        }
        for (cell, p) in self.cells() {
            for &h in c.ending_at(cell.x) {
                let kh = d.compose(cell.d, f.mor(h));
                let ph = c.compose(p, h);
                for &l in c.starting_at(cell.y) {
                    if self.value(c.src(h), c.dst(l), d.compose(f.mor(l), kh)) != c.compose(l, ph) {
                        return Err(PFailure::Naturality { cell, h, l });
                    }
                }
            }
            let framed = d.compose_all(&[f.image_identity(cell.y), cell.d, f.image_identity(cell.x)]);
            if self.value(cell.x, cell.y, framed) != p {
                return Err(PFailure::Seminaturality(cell));
            }
            if mode == PMode::NaturallySemifull && f.mor(p) != framed {
                return Err(PFailure::ModeEquation(cell));
            }
        }
        for m in c.morphisms() {
            let (x, y) = (c.src(m), c.dst(m));
            let cell = PCell { x, y, d: f.mor(m) };
            let p = self.value(x, y, cell.d);
            let ok = match mode {
                PMode::Separable => p == m,
                PMode::Semiseparable => f.mor(p) == cell.d,
                PMode::NaturallySemifull => true,
            };
            if !ok {
                return Err(PFailure::ModeEquation(cell));
            }
        }
        Ok(())
    }
}

/// The constraint problem for `P` in one mode.
pub struct PSearch<'a> {
    f: &'a Semifunctor,
    mode: PMode,
    layout: CellLayout,
    domains: Vec<Vec<Mor>>,
    // allowed[i][hom_index(g)]
    allowed: Vec<Vec<bool>>,
    // state after seeding and propagation; None if already contradictory
    root: Option<Vec<Option<Mor>>>,
}

impl<'a> PSearch<'a> {
    pub fn new(f: &'a Semifunctor, mode: PMode) -> Self {
        let (c, d) = (f.source(), f.target());
        let layout = CellLayout::new(f);
        let mut domains = Vec::with_capacity(layout.len());
        let mut allowed = Vec::with_capacity(layout.len());
        for cell in &layout.cells {
            let hom = c.hom(cell.x, cell.y);
            let keep = |g: Mor| match mode {
                PMode::Separable => true,
                PMode::NaturallySemifull => {
                    f.mor(g) == d.compose_all(&[f.image_identity(cell.y), cell.d, f.image_identity(cell.x)])
                }
                PMode::Semiseparable => !hom.iter().any(|&h| f.mor(h) == cell.d) || f.mor(g) == cell.d,
            };
            let mask: Vec<bool> = hom.iter().map(|&g| keep(g)).collect();
            domains.push(hom.iter().zip(&mask).filter(|(_, &k)| k).map(|(&g, _)| g).collect());
            allowed.push(mask);
        }
        let mut search = PSearch { f, mode, layout, domains, allowed, root: None };
        let mut vals = vec![None; search.layout.len()];
        let mut trail = Vec::new();
        let mut ok = true;
        if mode == PMode::Separable {
            for m in c.morphisms() {
                let i = search.layout.index(d, c.src(m), c.dst(m), f.mor(m));
                ok = match vals[i] {
                    Some(v) => v == m,
                    None => search.propagate(&mut vals, &mut trail, i, m),
                };
                if !ok {
                    break;
                }
            }
        }
        if ok {
            search.root = Some(vals);
        }
        search
    }

    pub fn mode(&self) -> PMode {
        self.mode
    }

    fn allows(&self, i: usize, g: Mor) -> bool {
        self.allowed[i][self.f.source().hom_index(g)]
    }

    /// Assigns `v` to the unassigned cell `i` and closes under naturality.
    /// On failure the caller rolls back via the trail.
    fn propagate(&self, vals: &mut [Option<Mor>], trail: &mut Vec<usize>, i: usize, v: Mor) -> bool {
        if !self.allows(i, v) {
            return false;
        }
        let (f, c, d) = (self.f, self.f.source(), self.f.target());
        vals[i] = Some(v);
        trail.push(i);
        let mut queue = vec![i];
        let mut head = 0;
        while head < queue.len() {
            let j = queue[head];
            head += 1;
            let cell = self.layout.cells[j];
            let p = vals[j].unwrap();
            for &h in c.ending_at(cell.x) {
                let kh = d.compose(cell.d, f.mor(h));
                let ph = c.compose(p, h);
                for &l in c.starting_at(cell.y) {
                    let want = c.compose(l, ph);
                    let k = self.layout.index(d, c.src(h), c.dst(l), d.compose(f.mor(l), kh));
                    match vals[k] {
                        Some(w) if w != want => return false,
                        Some(_) => {}
                        None => {
                            if !self.allows(k, want) {
                                return false;
                            }
                            vals[k] = Some(want);
                            trail.push(k);
                            queue.push(k);
                        }
                    }
                }
            }
        }
        true
    }

    fn undo(vals: &mut [Option<Mor>], trail: &mut Vec<usize>, mark: usize) {
        for i in trail.drain(mark..) {
            vals[i] = None;
        }
    }

    fn branch_cell(&self, vals: &[Option<Mor>]) -> Option<usize> {
        (0..vals.len()).filter(|&i| vals[i].is_none()).min_by_key(|&i| (self.domains[i].len(), i))
    }

    fn descend(&self, vals: &mut [Option<Mor>], trail: &mut Vec<usize>) -> bool {
        let Some(i) = self.branch_cell(vals) else { return true };
        for &v in &self.domains[i] {
            let mark = trail.len();
            if self.propagate(vals, trail, i, v) && self.descend(vals, trail) {
                return true;
            }
            Self::undo(vals, trail, mark);
        }
        false
    }

    fn finish(&self, vals: Vec<Option<Mor>>) -> PSolution {
        PSolution {
            functor: self.f.clone(),
            mode: self.mode,
            layout: self.layout.clone(),
            values: vals.into_iter().map(Option::unwrap).collect(),
        }
    }

    /// Number of independent top-level branches (at least 1).
    pub fn root_branches(&self) -> usize {
        match &self.root {
            Some(vals) => self.branch_cell(vals).map_or(1, |i| self.domains[i].len().max(1)),
            None => 1,
        }
    }

    /// First solution in branch `i`. The least branch index with a solution
    /// yields the same result as [`PSearch::first`].
    pub fn first_in_branch(&self, i: usize) -> Option<PSolution> {
        let mut vals = self.root.clone()?;
        let mut trail = Vec::new();
        match self.branch_cell(&vals) {
            None => (i == 0).then(|| self.finish(vals)),
            Some(cell) => {
                let &v = self.domains[cell].get(i)?;
                (self.propagate(&mut vals, &mut trail, cell, v) && self.descend(&mut vals, &mut trail))
                    .then(|| self.finish(vals))
            }
        }
    }

    pub fn first(&self) -> Option<PSolution> {
        let mut vals = self.root.clone()?;
        let mut trail = Vec::new();
        self.descend(&mut vals, &mut trail).then(|| self.finish(vals))
    }
}

/// A natural `P` satisfying the equation of `mode`, if one exists.
pub fn solve_p(f: &Semifunctor, mode: PMode) -> Option<PSolution> {
    let sol = PSearch::new(f, mode).first();
    debug_assert!(sol.as_ref().map_or(true, |s| s.check(mode).is_ok()));
    sol
}

pub fn is_separable(f: &Semifunctor) -> bool {
    solve_p(f, PMode::Separable).is_some()
}
pub fn is_naturally_semifull(f: &Semifunctor) -> bool {
    solve_p(f, PMode::NaturallySemifull).is_some()
}
pub fn is_semiseparable(f: &Semifunctor) -> bool {
    solve_p(f, PMode::Semiseparable).is_some()
}

/// Two distinct parallel morphisms with the same image.
pub fn faithfulness_failure(f: &Semifunctor) -> Option<(Mor, Mor)> {
    let c = f.source();
    c.objects().flat_map(|x| c.objects().map(move |y| (x, y))).find_map(|(x, y)| {
        let hom = c.hom(x, y);
        hom.iter().enumerate().find_map(|(i, &g)| hom[i + 1..].iter().find(|&&h| f.mor(g) == f.mor(h)).map(|&h| (g, h)))
    })
}

pub fn is_faithful(f: &Semifunctor) -> bool {
    faithfulness_failure(f).is_none()
}

fn all_cells(f: &Semifunctor) -> impl Iterator<Item = PCell> + '_ {
    let (c, d) = (f.source(), f.target());
    c.objects()
        .flat_map(move |x| c.objects().map(move |y| (x, y)))
        .flat_map(move |(x, y)| d.hom(f.obj(x), f.obj(y)).iter().map(move |&dm| PCell { x, y, d: dm }))
}

/// A cell `d: FX → FY` outside the image of `Hom(X, Y)`.
pub fn fullness_failure(f: &Semifunctor) -> Option<PCell> {
    let c = f.source();
    all_cells(f).find(|cell| !c.hom(cell.x, cell.y).iter().any(|&g| f.mor(g) == cell.d))
}

pub fn is_full(f: &Semifunctor) -> bool {
    fullness_failure(f).is_none()
}

/// For every cell a `g: X → Y` with `Fg = FId_Y∘d∘FId_X`, or the first cell
/// that has none.
pub fn semifull_witness(f: &Semifunctor) -> Result<Vec<(PCell, Mor)>, PCell> {
    let (c, d) = (f.source(), f.target());
    all_cells(f)
        .map(|cell| {
            let want = d.compose_all(&[f.image_identity(cell.y), cell.d, f.image_identity(cell.x)]);
            c.hom(cell.x, cell.y).iter().copied().find(|&g| f.mor(g) == want).map(|g| (cell, g)).ok_or(cell)
        })
        .collect()
}

pub fn is_semifull(f: &Semifunctor) -> bool {
    semifull_witness(f).is_ok()
}

pub fn is_semifully_faithful(f: &Semifunctor) -> bool {
    is_faithful(f) && is_semifull(f)
}

/// Semifunctor-level property, decided by [`Property::holds`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    Functor,
    Faithful,
    Full,
    Semifull,
    SemifullyFaithful,
    Separable,
    NaturallySemifull,
    Semiseparable,
}

impl Property {
    pub const ALL: [Property; 8] = [
        Property::Functor,
        Property::Faithful,
        Property::Full,
        Property::Semifull,
        Property::SemifullyFaithful,
        Property::Separable,
        Property::NaturallySemifull,
        Property::Semiseparable,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Functor => "functor",
            Property::Faithful => "faithful",
            Property::Full => "full",
            Property::Semifull => "semifull",
            Property::SemifullyFaithful => "sff",
            Property::Separable => "separable",
            Property::NaturallySemifull => "naturally-semifull",
            Property::Semiseparable => "semiseparable",
        }
    }

    pub fn parse(s: &str) -> Option<Property> {
        Property::ALL.into_iter().find(|p| p.name() == s)
    }

    pub fn holds(self, f: &Semifunctor) -> bool {
        match self {
            Property::Functor => f.is_functor(),
            Property::Faithful => is_faithful(f),
            Property::Full => is_full(f),
            Property::Semifull => is_semifull(f),
            Property::SemifullyFaithful => is_semifully_faithful(f),
            Property::Separable => is_separable(f),
            Property::NaturallySemifull => is_naturally_semifull(f),
            Property::Semiseparable => is_semiseparable(f),
        }
    }
}

/// `e_X := P_{X,X}(FId_X)` for a semiseparable `P`, after checking that `e`
/// is idempotent and natural, `Fe = FId`, the universal property
/// `Ff = Fg ⇔ e_Y∘f = e_Y∘g`, and that no other idempotent natural
/// transformation has that property.
pub fn associated_idempotent(sol: &PSolution) -> Result<IdemNatTransf, PropsError> {
    sol.check(PMode::Semiseparable).map_err(|_| PropsError::NotSemiseparableSolution)?;
    let f = sol.functor();
    let c = f.source();
    let comps: Vec<Mor> = c.objects().map(|x| sol.value(x, x, f.image_identity(x))).collect();
    let e = IdemNatTransf::new(c.clone(), comps)
        .map_err(|_| PropsError::InvariantViolated("associated idempotent is not idempotent and natural"))?;
    if c.objects().any(|x| f.mor(e.component(x)) != f.image_identity(x)) {
        return Err(PropsError::InvariantViolated("F e ≠ F Id"));
    }
    if !has_kernel_property(f, &e) {
        return Err(PropsError::InvariantViolated("universal property of the associated idempotent"));
    }
    let rivals = IdemNatTransf::enumerate(c).into_iter().filter(|r| has_kernel_property(f, r)).count();
    if rivals != 1 {
        return Err(PropsError::InvariantViolated("associated idempotent is not unique"));
    }
    Ok(e)
}

/// `Ff = Fg ⇔ e_Y∘f = e_Y∘g` for all parallel `f, g`.
pub fn has_kernel_property(f: &Semifunctor, e: &IdemNatTransf) -> bool {
    let c = f.source();
    c.objects().flat_map(|x| c.objects().map(move |y| (x, y))).all(|(x, y)| {
        let hom = c.hom(x, y);
        let ey = e.component(y);
        hom.iter().all(|&g| hom.iter().all(|&h| (f.mor(g) == f.mor(h)) == (c.compose(ey, g) == c.compose(ey, h))))
    })
}

/// Which splitting [`maschke_transfer`] produces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitSide {
    Mono,
    Epi,
    Iso,
}

/// Splittings of `f: C → C'` obtained by pushing witnesses for `F(f)` through `P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Splitting {
    /// `r: C' → C` with `r∘f = Id_C`.
    pub retraction: Option<Mor>,
    /// `s: C' → C` with `f∘s = Id_{C'}`.
    pub section: Option<Mor>,
}

/// For a separable `P` and `f: C → C'`: if `F(f)` has `g` with
/// `g∘F(f) = FId_C`, then `P_{C',C}(g)` is a retraction of `f`; if it has `g`
/// with `F(f)∘g = FId_{C'}`, then `P_{C',C}(g)` is a section.
pub fn maschke_transfer(sol: &PSolution, m: Mor, side: SplitSide) -> Result<Splitting, PropsError> {
    if sol.check(PMode::Separable).is_err() {
        return Err(PropsError::HypothesisNotSatisfied("P is not a separability witness"));
    }
    let f = sol.functor();
    let c = f.source();
    let (x, y) = (c.src(m), c.dst(m));
    let fm = f.mor(m);
    let mut out = Splitting { retraction: None, section: None };
    if matches!(side, SplitSide::Mono | SplitSide::Iso) {
        let g = fc_semisplit_mono_witness(f, x, fm)
            .ok()
            .flatten()
            .ok_or(PropsError::HypothesisNotSatisfied("F(f) is not a semisplit mono"))?;
        let r = sol.value(y, x, g);
        if c.compose(r, m) != c.id(x) {
            return Err(PropsError::InvariantViolated("transferred retraction"));
        }
        out.retraction = Some(r);
    }
    if matches!(side, SplitSide::Epi | SplitSide::Iso) {
        let g = fc_semisplit_epi_witness(f, y, fm)
            .ok()
            .flatten()
            .ok_or(PropsError::HypothesisNotSatisfied("F(f) is not a semisplit epi"))?;
        let s = sol.value(y, x, g);
        if c.compose(m, s) != c.id(y) {
            return Err(PropsError::InvariantViolated("transferred section"));
        }
        out.section = Some(s);
    }
    Ok(out)
}
