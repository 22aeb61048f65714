//! Small named categories and semifunctors used throughout the gallery.

use crate::kernel::{full_finset_subcategory, monoid_category, product_category, FinCategory, FinSetObject, Obj};
use crate::semifunctor::Semifunctor;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

fn monoid(elements: &[&str], mul: impl Fn(usize, usize) -> usize) -> Arc<FinCategory> {
    let n = elements.len();
    let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
    Arc::new(monoid_category(elements.iter().map(|&s| String::from(s)).collect(), &table).expect("monoid table"))
}

/// The terminal category `1`.
pub fn terminal() -> Arc<FinCategory> {
    Arc::new(FinCategory::terminal("*", "id"))
}

/// The walking idempotent `W`: one object, `{id, u}` with `u ∘ u = u`.
pub fn walking_idempotent() -> Arc<FinCategory> {
    monoid(&["id", "u"], |a, b| a | b)
}

/// The commutative monoid `{1, x, e}` with `x·x = e`, `x·e = x`, `e·e = e`.
pub fn m3() -> Arc<FinCategory> {
    const T: [[usize; 3]; 3] = [[0, 1, 2], [1, 2, 1], [2, 1, 2]];
    monoid(&["1", "x", "e"], |a, b| T[a][b])
}

/// `f_e: M3 → M3 × M3`, `b ↦ (e, b)`. Returns `(M3, M3 × M3, f_e)`.
pub fn monoid_fe() -> (Arc<FinCategory>, Arc<FinCategory>, Semifunctor) {
    let m = m3();
    let mm = Arc::new(product_category(&m, &m));
    let map = m.morphisms().map(|b| mm.mor(&format!("(e,{})", m.mor_name(b))).unwrap()).collect();
    let f = Semifunctor::new(m.clone(), mm.clone(), vec![Obj(0)], map).expect("f_e preserves products");
    (m, mm, f)
}

/// Multiplicative monoid of `Z/2`.
pub fn z2() -> Arc<FinCategory> {
    monoid(&["0", "1"], |a, b| a & b)
}

fn mat_name(m: usize) -> String {
    let bit = |i: u32| (m >> (3 - i)) & 1;
    format!("[{}{};{}{}]", bit(0), bit(1), bit(2), bit(3))
}

fn mat_mul(p: usize, q: usize) -> usize {
    // bits: a b c d, most significant first
    let e = |m: usize, i: u32| (m >> (3 - i)) & 1;
    let (a, b, c, d) = (e(p, 0), e(p, 1), e(p, 2), e(p, 3));
    let (w, x, y, z) = (e(q, 0), e(q, 1), e(q, 2), e(q, 3));
    let r = [(a & w) ^ (b & y), (a & x) ^ (b & z), (c & w) ^ (d & y), (c & x) ^ (d & z)];
    r.iter().fold(0, |acc, &bit| (acc << 1) | bit)
}

/// Multiplicative monoid of 2×2 matrices over `Z/2` (16 elements).
pub fn mat2() -> Arc<FinCategory> {
    let names: Vec<String> = (0..16).map(mat_name).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    monoid(&refs, mat_mul)
}

/// `Z/2 → M_2(Z/2)`, `m ↦ m·E11`. Returns `(Z2, Mat2, f)`.
pub fn matrix_e11() -> (Arc<FinCategory>, Arc<FinCategory>, Semifunctor) {
    let (r, m) = (z2(), mat2());
    let map = vec![m.mor("[00;00]").unwrap(), m.mor("[10;00]").unwrap()];
    let f = Semifunctor::new(r.clone(), m.clone(), vec![Obj(0)], map).expect("m ↦ m·E11");
    (r, m, f)
}

/// `Z/2 × Z/2 → Z/2 × Z/2`, `(x, y) ↦ (x, y)·(0, 1) = (0, y)`.
pub fn product_ring_z() -> (Arc<FinCategory>, Semifunctor) {
    let z = z2();
    let r = Arc::new(product_category(&z, &z));
    let map = r
        .morphisms()
        .map(|f| {
            let y = &r.mor_name(f)[3..4];
            r.mor(&format!("(0,{y})")).unwrap()
        })
        .collect();
    let f = Semifunctor::new(r.clone(), r.clone(), vec![Obj(0)], map).expect("(x,y) ↦ (0,y)");
    (r, f)
}

/// Full subcategory of finite sets on `∅` and `{a}`.
pub fn empty_and_point() -> Arc<FinCategory> {
    let objs = [FinSetObject::new::<&str>([]), FinSetObject::new(["a"])];
    Arc::new(full_finset_subcategory(&objs).unwrap().cat)
}

/// A two-object category `A ⇄ B` in which the idempotent `q = s ∘ p` on `A`
/// splits through `B` (`p ∘ s = id_B`).
pub fn split_pair() -> Arc<FinCategory> {
    use crate::kernel::{Mor, MorphismRecord};
    let rec = |id: &str, s: usize, d: usize| MorphismRecord { id: id.into(), src: Obj(s), dst: Obj(d) };
    let morphisms = vec![rec("idA", 0, 0), rec("q", 0, 0), rec("idB", 1, 1), rec("p", 0, 1), rec("s", 1, 0)];
    // idA=0 q=1 idB=2 p=3 s=4
    let table = |g: Mor, f: Mor| -> Option<Mor> {
        let r = match (g.0, f.0) {
            (0, x) | (x, 0) if x != 2 => x,
            (2, x) | (x, 2) => x,
            (1, 1) => 1,
            (3, 1) => 3,
            (1, 4) => 4,
            (3, 4) => 2,
            (4, 3) => 1,
            _ => return None,
        };
        Some(Mor(r))
    };
    let c = FinCategory::assemble(vec!["A".into(), "B".into()], morphisms, vec![Mor(0), Mor(2)], table).unwrap();
    c.check_axioms().expect("split pair axioms");
    Arc::new(c)
}
