//! Executable catalogue of worked examples with expected verdicts.
//!
//! Every entry bundles its artifacts (semifunctors, transformations,
//! semiadjunctions) with a list of expectations. An expectation is a
//! deferred check plus the verdict it must produce; [`run`] evaluates them
//! all and reports each mismatch.

pub mod cats;
pub mod sets;

use crate::coident::coidentifier;
use crate::completion::{forgetful_semiadjunctions, idempotent_completion, CompletionError, DEFAULT_COMPLETION_CAP};
use crate::kernel::{FinCategory, FinSetObject, Obj};
use crate::props::{associated_idempotent, semifull_witness, solve_p, PMode, Property};
use crate::semiadj::{compose_semiadjunctions, rafael, Semiadjunction, Side};
use crate::semifunctor::{canonical_e, compose_semifunctors, constant_semifunctor, IdemNatTransf, Semifunctor};
use crate::transform::Transformation;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GalleryError {
    #[error("unknown gallery entry `{0}`")]
    UnknownEntry(String),
    #[error("{entry}: expected {property} of {subject} to be {expected}")]
    ExpectationFailed { entry: String, subject: String, property: String, expected: bool },
    #[error("identity fails: {0}")]
    IdentityFailure(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Completion(#[from] CompletionError),
}

/// Knobs for entries whose size is adjustable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GalleryConfig {
    /// Number of atoms for pointwise finite-set samples.
    pub max_set_size: usize,
    pub completion_cap: usize,
}

impl Default for GalleryConfig {
    fn default() -> Self {
        GalleryConfig { max_set_size: 2, completion_cap: DEFAULT_COMPLETION_CAP }
    }
}

type Check = Arc<dyn Fn() -> bool + Send + Sync>;

/// A verdict that `check` must reproduce.
#[derive(Clone)]
pub struct Expectation {
    pub subject: String,
    pub property: String,
    pub expected: bool,
    check: Check,
}

impl fmt::Debug for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} = {}", self.subject, self.property, self.expected)
    }
}

impl Expectation {
    pub fn new(
        subject: impl Into<String>,
        property: impl Into<String>,
        expected: bool,
        check: impl Fn() -> bool + Send + Sync + 'static,
    ) -> Self {
        Expectation { subject: subject.into(), property: property.into(), expected, check: Arc::new(check) }
    }
    pub fn evaluate(&self) -> bool {
        (self.check)()
    }
}

#[derive(Clone, Debug, Default)]
pub struct GalleryEntry {
    pub name: &'static str,
    pub summary: &'static str,
    pub semifunctors: Vec<(String, Semifunctor)>,
    pub transformations: Vec<(String, Transformation)>,
    pub adjunctions: Vec<(String, Semiadjunction)>,
    pub expectations: Vec<Expectation>,
}

impl GalleryEntry {
    fn new(name: &'static str, summary: &'static str) -> Self {
        GalleryEntry { name, summary, ..Default::default() }
    }

    fn expect(
        &mut self,
        subject: &str,
        property: &str,
        expected: bool,
        check: impl Fn() -> bool + Send + Sync + 'static,
    ) {
        self.expectations.push(Expectation::new(subject, property, expected, check));
    }

    fn semifunctor(&mut self, name: &str, f: &Semifunctor, verdicts: &[(Property, bool)]) {
        for &(p, v) in verdicts {
            let f = f.clone();
            self.expect(name, p.name(), v, move || p.holds(&f));
        }
        self.semifunctors.push((name.into(), f.clone()));
    }

    fn adjunction(&mut self, name: &str, adj: Semiadjunction) {
        let a = adj.clone();
        self.expect(name, "semiadjunction", true, move || {
            Semiadjunction::new(
                a.left().clone(),
                a.right().clone(),
                a.unit().components().to_vec(),
                a.counit().components().to_vec(),
            )
            .is_ok()
        });
        self.adjunctions.push((name.into(), adj));
    }

    /// Flips the `i`-th expectation; used as a negative control.
    pub fn flip(&mut self, i: usize) {
        let e = &mut self.expectations[i];
        e.expected = !e.expected;
    }
}

/// Names accepted by [`build`], in catalogue order.
pub const NAMES: [&str; 13] = [
    "monoid-fe",
    "matrix-E11",
    "product-ring-z",
    "constant-Fe",
    "Ee-on-W",
    "Ee-on-M3",
    "forgetful-upsilon-W",
    "forgetful-upsilon-M3",
    "coidentifier-LH",
    "SFe-composite",
    "set-square",
    "semiproduct",
    "fixpoint",
];

use Property::*;

pub fn build(name: &str, config: &GalleryConfig) -> Result<GalleryEntry, GalleryError> {
    Ok(match name {
        "monoid-fe" => monoid_fe(),
        "matrix-E11" => matrix_e11(),
        "product-ring-z" => product_ring_z(),
        "constant-Fe" => constant_fe(),
        "Ee-on-W" => canonical_entry("Ee-on-W", cats::walking_idempotent()),
        "Ee-on-M3" => canonical_entry("Ee-on-M3", cats::m3()),
        "forgetful-upsilon-W" => forgetful("forgetful-upsilon-W", cats::walking_idempotent(), config)?,
        "forgetful-upsilon-M3" => forgetful("forgetful-upsilon-M3", cats::m3(), config)?,
        "coidentifier-LH" => coidentifier_lh(),
        "SFe-composite" => sfe_composite(),
        "set-square" => set_square(config),
        "semiproduct" => semiproduct(config),
        "fixpoint" => fixpoint()?,
        other => return Err(GalleryError::UnknownEntry(other.into())),
    })
}

pub fn build_all(config: &GalleryConfig) -> Result<Vec<GalleryEntry>, GalleryError> {
    NAMES.iter().map(|n| build(n, config)).collect()
}

fn monoid_fe() -> GalleryEntry {
    let mut g = GalleryEntry::new("monoid-fe", "f_e: M3 → M3×M3, b ↦ (e, b)");
    let (m, mm, f) = cats::monoid_fe();
    g.semifunctor(
        "f_e",
        &f,
        &[
            (Separable, true),
            (Semifull, false),
            (Faithful, true),
            (NaturallySemifull, false),
            (Semiseparable, true),
            (Functor, false),
            (Full, false),
            (SemifullyFaithful, false),
        ],
    );
    let f2 = f.clone();
    g.expect("f_e", "P((m,n)) = n", true, move || {
        solve_p(&f2, PMode::Separable)
            .is_some_and(|p| p.cells().all(|(cell, v)| mm.mor_name(cell.d).ends_with(&format!(",{})", m.mor_name(v)))))
    });
    g
}

fn matrix_e11() -> GalleryEntry {
    let mut g = GalleryEntry::new("matrix-E11", "Z/2 → M_2(Z/2), m ↦ m·E11");
    let (_, _, f) = cats::matrix_e11();
    g.semifunctor(
        "f_E11",
        &f,
        &[
            (SemifullyFaithful, true),
            (Separable, true),
            (NaturallySemifull, true),
            (Faithful, true),
            (Semifull, true),
            (Functor, false),
            (Full, false),
        ],
    );
    g
}

fn product_ring_z() -> GalleryEntry {
    let mut g = GalleryEntry::new("product-ring-z", "Z/2×Z/2 → Z/2×Z/2, (x, y) ↦ (0, y)");
    let (_, f) = cats::product_ring_z();
    g.semifunctor(
        "f_z",
        &f,
        &[
            (NaturallySemifull, true),
            (Faithful, false),
            (Separable, false),
            (Semiseparable, true),
            (Semifull, true),
            (Functor, false),
        ],
    );
    g
}

fn constant_fe() -> GalleryEntry {
    let mut g = GalleryEntry::new("constant-Fe", "constant semifunctors at an idempotent");
    let (one, m, w) = (cats::terminal(), cats::m3(), cats::walking_idempotent());
    let e = m.mor("e").unwrap();
    let fe = constant_semifunctor(one.clone(), m.clone(), e).unwrap();
    g.semifunctor(
        "F^e: 1 → M3",
        &fe,
        &[(Separable, true), (Semifull, false), (NaturallySemifull, false), (Faithful, true), (Functor, false)],
    );
    let (f2, m2) = (fe.clone(), m.clone());
    g.expect("F^e: 1 → M3", "semifull counterexample e∘g∘e ≠ e", true, move || match semifull_witness(&f2) {
        Err(cell) => m2.compose_all(&[e, cell.d, e]) != e,
        Ok(_) => false,
    });
    let fu = constant_semifunctor(one, w.clone(), w.mor("u").unwrap()).unwrap();
    g.semifunctor("F^u: 1 → W", &fu, &[(Separable, true), (NaturallySemifull, true)]);
    let k = constant_semifunctor(m.clone(), m, e).unwrap();
    g.semifunctor("K_e: M3 → M3", &k, &[(Faithful, false), (Semifull, false), (Full, false)]);
    g
}

fn canonical_entry(name: &'static str, c: Arc<FinCategory>) -> GalleryEntry {
    let mut g = GalleryEntry::new(name, "E^e for every idempotent natural e");
    for e in IdemNatTransf::enumerate(&c) {
        let label: Vec<&str> = e.components().iter().map(|&m| c.mor_name(m)).collect();
        let subject = format!("E^({})", label.join(","));
        let ee = canonical_e(&e);
        let is_id = e.is_identity();
        g.semifunctor(
            &subject,
            &ee,
            &[
                (NaturallySemifull, true),
                (Semiseparable, true),
                (Separable, is_id),
                (Faithful, is_id),
                (Functor, is_id),
            ],
        );
        let (f2, e2) = (ee.clone(), e.clone());
        g.expect(&subject, "associated idempotent = e", true, move || {
            solve_p(&f2, PMode::Semiseparable).and_then(|p| associated_idempotent(&p).ok()).as_ref() == Some(&e2)
        });
        g.adjunction(&format!("{subject} ⊣ {subject}"), Semiadjunction::canonical(&e));
    }
    g
}

fn forgetful(name: &'static str, c: Arc<FinCategory>, config: &GalleryConfig) -> Result<GalleryEntry, GalleryError> {
    let mut g = GalleryEntry::new(name, "ι: C → C♮ and the forgetful υ: C♮ → C");
    let comp = idempotent_completion(&c, config.completion_cap)?;
    let (ui, iu) = forgetful_semiadjunctions(&comp);
    let (u, i) = (ui.left().clone(), ui.right().clone());
    g.semifunctor(
        "υ",
        &u,
        &[(SemifullyFaithful, true), (Separable, true), (NaturallySemifull, true), (Functor, false), (Full, false)],
    );
    g.semifunctor("ι", &i, &[(Functor, true), (Full, true), (Faithful, true)]);
    let a = ui.clone();
    g.expect("υ ⊣ ι", "left witness ν∘η = Id", true, move || {
        rafael(&a, Side::Left, PMode::Separable).is_some()
    });
    let both = compose_semiadjunctions(&ui, &iu).expect("middle categories agree");
    g.adjunction("υ ⊣ ι", ui);
    g.adjunction("ι ⊣ υ", iu);
    g.adjunction("ιυ ⊣ ιυ", both);
    Ok(g)
}

fn coidentifier_lh() -> GalleryEntry {
    let mut g = GalleryEntry::new("coidentifier-LH", "coidentifier C_e with H: C → C_e and L: C_e → C");
    for (c, e) in [(cats::walking_idempotent(), "u"), (cats::m3(), "e")] {
        let e = IdemNatTransf::new(c.clone(), vec![c.mor(e).unwrap()]).unwrap();
        let q = coidentifier(&e);
        let tag = format!("{}/{}", c.mor_name(e.component(Obj(0))), if c.num_morphisms() == 2 { "W" } else { "M3" });
        let (h, l) = (q.quotient().clone(), q.section().clone());
        g.semifunctor(
            &format!("L[{tag}]"),
            &l,
            &[(SemifullyFaithful, true), (Separable, true), (NaturallySemifull, true)],
        );
        g.semifunctor(&format!("H[{tag}]"), &h, &[(Functor, true), (Full, true), (NaturallySemifull, true)]);
        let (h2, l2) = (h.clone(), l.clone());
        g.expect(&tag, "HL = Id", true, move || {
            compose_semifunctors(&h2, &l2).ok() == Some(Semifunctor::identity(h2.target().clone()))
        });
        let e2 = e.clone();
        g.expect(&tag, "LH = E^e", true, move || compose_semifunctors(&l, &h).ok() == Some(canonical_e(&e2)));
        let lh = q.semiadjunction();
        let outer = Semiadjunction::canonical(&e);
        g.adjunction(&format!("L ⊣ H [{tag}]"), lh.clone());
        g.adjunction(&format!("E^e L ⊣ H E^e [{tag}]"), compose_semiadjunctions(&lh, &outer).unwrap());
    }
    g
}

fn sfe_composite() -> GalleryEntry {
    let mut g = GalleryEntry::new("SFe-composite", "S_{F,e} = F∘E^e for e ≠ Id");
    let (m, _, fe) = cats::monoid_fe();
    let e = IdemNatTransf::new(m.clone(), vec![m.mor("e").unwrap()]).unwrap();
    let s = compose_semifunctors(&fe, &canonical_e(&e)).unwrap();
    g.semifunctor("f_e∘E^e", &s, &[(Faithful, false), (Separable, false)]);
    let (z, _, f) = cats::matrix_e11();
    let e = IdemNatTransf::new(z.clone(), vec![z.mor("0").unwrap()]).unwrap();
    let s = compose_semifunctors(&f, &canonical_e(&e)).unwrap();
    g.semifunctor("f_E11∘E^0", &s, &[(Faithful, false), (Separable, false), (NaturallySemifull, true)]);
    g
}

fn set_square(config: &GalleryConfig) -> GalleryEntry {
    let mut g = GalleryEntry::new("set-square", "F(A) = A×A, F(f)(a, a') = (f a, f a) on finite samples");
    let sizes = sets::sample_sets(config.max_set_size);
    g.expect("F on samples", "P(Ff) = f, F(Pg) = FId∘g∘FId, P natural", true, move || {
        sets::pointwise_set_square(&sizes).is_ok()
    });
    g
}

fn semiproduct(config: &GalleryConfig) -> GalleryEntry {
    let mut g = GalleryEntry::new("semiproduct", "Δ ⊣ₛ × on finite samples");
    let sizes = sets::sample_sets(config.max_set_size);
    let r: Arc<dyn Fn() -> Result<sets::SemiproductReport, GalleryError> + Send + Sync> =
        Arc::new(move || sets::pointwise_semiproduct(&sizes));
    let r1 = r.clone();
    g.expect("Δ ⊣ ×", "semitriangular identities", true, move || r1().is_ok());
    let r2 = r.clone();
    let big = config.max_set_size >= 2;
    g.expect("π_B: ∅×B → B", "epi on samples", !big, move || r2().is_ok_and(|r| r.non_epi_projection.is_none()));
    g.expect("γ₂: B → ∅", "exists on samples", config.max_set_size == 0, move || {
        r().is_ok_and(|r| r.missing_gamma.is_none())
    });
    g
}

fn fixpoint() -> Result<GalleryEntry, GalleryError> {
    let mut g = GalleryEntry::new("fixpoint", "fixpoint functor F̄ of a set-valued semifunctor");
    let w = cats::walking_idempotent();
    let inputs = [
        ("F = const a on {a,b}", vec![FinSetObject::new(["a", "b"])], vec![vec![0, 0], vec![0, 0]]),
        ("F on {a,b,c}", vec![FinSetObject::new(["a", "b", "c"])], vec![vec![0, 0, 2], vec![0, 0, 0]]),
    ];
    for (label, sets_, maps) in inputs {
        let fx = sets::fixpoint_functor(&sets::SetValued { source: w.clone(), sets: sets_, maps })?;
        g.semifunctor(&format!("F̄ [{label}]"), &fx.fbar, &[(Functor, true)]);
        for p in [Separable, NaturallySemifull, Semiseparable] {
            // properties transfer along the semi-isomorphism F ≅ₛ F̄
            let f = fx.f.clone();
            g.expect(&format!("F [{label}]"), p.name(), p.holds(&fx.fbar), move || p.holds(&f));
        }
        g.semifunctor(&format!("F [{label}]"), &fx.f, &[]);
        g.transformations.push((format!("α [{label}]"), fx.alpha.clone()));
        g.transformations.push((format!("β [{label}]"), fx.beta.clone()));
        let fx2 = fx.clone();
        g.expect(label, "α, β semi-inverse", true, move || fx2.verify().is_ok());
    }
    Ok(g)
}

/// One evaluated expectation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub entry: String,
    pub subject: String,
    pub property: String,
    pub expected: bool,
    pub actual: bool,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GalleryReport {
    pub outcomes: Vec<Outcome>,
}

impl GalleryReport {
    pub fn failures(&self) -> impl Iterator<Item = &Outcome> {
        self.outcomes.iter().filter(|o| !o.passed())
    }
    pub fn failure_count(&self) -> usize {
        self.failures().count()
    }
    /// The first failure as an error.
    pub fn into_result(self) -> Result<(), GalleryError> {
        match self.outcomes.into_iter().find(|o| !o.passed()) {
            None => Ok(()),
            Some(o) => Err(GalleryError::ExpectationFailed {
                entry: o.entry,
                subject: o.subject,
                property: o.property,
                expected: o.expected,
            }),
        }
    }
}

pub fn run_entry(entry: &GalleryEntry) -> Vec<Outcome> {
    entry
        .expectations
        .iter()
        .map(|x| Outcome {
            entry: entry.name.to_string(),
            subject: x.subject.clone(),
            property: x.property.clone(),
            expected: x.expected,
            actual: x.evaluate(),
        })
        .collect()
}

pub fn run(entries: &[GalleryEntry]) -> GalleryReport {
    GalleryReport { outcomes: entries.iter().flat_map(run_entry).collect() }
}

/// Every semifunctor of every entry, labelled `entry/name`.
pub fn all_semifunctors(entries: &[GalleryEntry]) -> Vec<(String, Semifunctor)> {
    entries
        .iter()
        .flat_map(|g| g.semifunctors.iter().map(move |(n, f)| (format!("{}/{n}", g.name), f.clone())))
        .collect()
}

/// Every semiadjunction of every entry, labelled `entry/name`.
pub fn all_adjunctions(entries: &[GalleryEntry]) -> Vec<(String, Semiadjunction)> {
    entries
        .iter()
        .flat_map(|g| g.adjunctions.iter().map(move |(n, a)| (format!("{}/{n}", g.name), a.clone())))
        .collect()
}

/// Every transformation of every entry, labelled `entry/name`.
pub fn all_transformations(entries: &[GalleryEntry]) -> Vec<(String, Transformation)> {
    entries
        .iter()
        .flat_map(|g| g.transformations.iter().map(move |(n, a)| (format!("{}/{n}", g.name), a.clone())))
        .collect()
}

/// Distinct categories touched by the gallery's semifunctors.
pub fn all_categories(entries: &[GalleryEntry]) -> Vec<Arc<FinCategory>> {
    let mut out: Vec<Arc<FinCategory>> = Vec::new();
    for (_, f) in all_semifunctors(entries) {
        for c in [f.source(), f.target()] {
            if !out.iter().any(|d| d == c) {
                out.push(c.clone());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_gallery_passes() {
        let entries = build_all(&GalleryConfig::default()).unwrap();
        let report = run(&entries);
        let failures: Vec<_> = report.failures().collect();
        assert!(failures.is_empty(), "{failures:#?}");
        assert!(report.outcomes.len() > 60);
    }

    #[test]
    fn negative_control_and_unknown() {
        let mut g = build("monoid-fe", &GalleryConfig::default()).unwrap();
        g.flip(1);
        let report = run(core::slice::from_ref(&g));
        assert_eq!(report.failure_count(), 1);
        assert!(matches!(report.into_result(), Err(GalleryError::ExpectationFailed { .. })));
        assert!(matches!(build("nope", &GalleryConfig::default()), Err(GalleryError::UnknownEntry(_))));
        assert_eq!(run(&[]).outcomes.len(), 0);
    }
}
