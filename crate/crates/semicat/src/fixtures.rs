//! The shipped `fixtures/*.semicat.json` files and the artifacts they hold.
//!
//! Files are canonical renderings; `cargo test` compares them byte for byte,
//! and `SEMICAT_BLESS=1 cargo test -p semicat --test fixtures` rewrites them.

use crate::io::Document;
use semicat_core::gallery::{self, cats, GalleryConfig, GalleryEntry};
use semicat_core::props::{solve_p, PMode};
use semicat_core::semifunctor::IdemNatTransf;

fn entry(name: &str) -> GalleryEntry {
    gallery::build(name, &GalleryConfig::default()).expect("gallery entries build")
}

fn sf(e: &GalleryEntry, name: &str) -> Document {
    let f = e.semifunctors.iter().find(|(n, _)| n == name).expect("known semifunctor").1.clone();
    Document::Semifunctor(f)
}

fn adj(e: &GalleryEntry, name: &str) -> Document {
    Document::Semiadjunction(e.adjunctions.iter().find(|(n, _)| n == name).expect("known semiadjunction").1.clone())
}

/// `(file stem, document)` for every fixture.
pub fn catalogue() -> Vec<(&'static str, Document)> {
    let monoid = entry("monoid-fe");
    let Document::Semifunctor(fe) = sf(&monoid, "f_e") else { unreachable!() };
    let m3 = cats::m3();
    let w = cats::walking_idempotent();
    let e = IdemNatTransf::new(m3.clone(), vec![m3.mor("e").expect("M3 has e")]).expect("e is central");
    let u = IdemNatTransf::new(w.clone(), vec![w.mor("u").expect("W has u")]).expect("u is central");
    let fix = entry("fixpoint");
    let alpha = fix.transformations.iter().find(|(n, _)| n.starts_with("α [F = const")).expect("α").1.clone();
    vec![
        ("m3", Document::Category(m3)),
        ("walking_idempotent", Document::Category(w)),
        ("z2", Document::Category(cats::z2())),
        ("mat2", Document::Category(cats::mat2())),
        ("split_pair", Document::Category(cats::split_pair())),
        ("monoid_fe", Document::Semifunctor(fe.clone())),
        ("matrix_e11", sf(&entry("matrix-E11"), "f_E11")),
        ("product_ring_z", sf(&entry("product-ring-z"), "f_z")),
        ("constant_ke_m3", sf(&entry("constant-Fe"), "K_e: M3 → M3")),
        ("idem_e_m3", Document::IdemNat(e)),
        ("idem_u_w", Document::IdemNat(u)),
        ("ee_m3_adjunction", adj(&entry("Ee-on-M3"), "E^(e) ⊣ E^(e)")),
        ("upsilon_iota_w", adj(&entry("forgetful-upsilon-W"), "υ ⊣ ι")),
        ("coidentifier_m3", adj(&entry("coidentifier-LH"), "L ⊣ H [e/M3]")),
        ("fixpoint_alpha", Document::Transformation(alpha)),
        ("monoid_fe_separable", Document::PSolution(solve_p(&fe, PMode::Separable).expect("f_e is separable"))),
    ]
}

/// `<workspace>/fixtures`.
pub fn dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}
