//! Brute-force oracles, written directly from the definitions and sharing no
//! code with the library's searches.

#![allow(dead_code)]

use semicat::core::props::PMode;
use semicat::core::{FinCategory, Mor, Obj, Semifunctor};

/// Assignments beyond this many are not enumerated; the instance is skipped.
pub const NAIVE_SPACE_BOUND: u128 = 2_000_000;

pub struct Cell {
    pub x: Obj,
    pub y: Obj,
    pub d: Mor,
}

fn cells(f: &Semifunctor) -> Vec<Cell> {
    let (c, d) = (f.source(), f.target());
    let mut out = Vec::new();
    for x in c.objects() {
        for y in c.objects() {
            for &m in d.hom(f.obj(x), f.obj(y)) {
                out.push(Cell { x, y, d: m });
            }
        }
    }
    out
}

/// Whether a family `P` (indexed like `cells`) is natural and satisfies the
/// equation of `mode`.
fn valid(f: &Semifunctor, cells: &[Cell], p: &[Mor], mode: PMode) -> bool {
    let (c, d) = (f.source(), f.target());
    let (no, nm) = (c.num_objects(), d.num_morphisms());
    let mut index = vec![usize::MAX; no * no * nm];
    for (i, k) in cells.iter().enumerate() {
        index[(k.x.0 * no + k.y.0) * nm + k.d.0] = i;
    }
    let at = |x: Obj, y: Obj, m: Mor| -> Mor { p[index[(x.0 * no + y.0) * nm + m.0]] };
    for (k, &pk) in cells.iter().zip(p) {
        // naturality in both variables: P(Fl∘d∘Fh) = l∘P(d)∘h
        for h in c.morphisms().filter(|&h| c.dst(h) == k.x) {
            for l in c.morphisms().filter(|&l| c.src(l) == k.y) {
                let framed = d.compose(f.mor(l), d.compose(k.d, f.mor(h)));
                if at(c.src(h), c.dst(l), framed) != c.compose(l, c.compose(pk, h)) {
                    return false;
                }
            }
        }
        if mode == PMode::NaturallySemifull {
            let want = d.compose(f.mor(c.id(k.y)), d.compose(k.d, f.mor(c.id(k.x))));
            if f.mor(pk) != want {
                return false;
            }
        }
    }
    c.morphisms().all(|m| {
        let pm = at(c.src(m), c.dst(m), f.mor(m));
        match mode {
            PMode::Separable => pm == m,
            PMode::Semiseparable => f.mor(pm) == f.mor(m),
            PMode::NaturallySemifull => true,
        }
    })
}

/// Existence of a valid `P` by exhaustive enumeration, or `None` when the
/// space exceeds [`NAIVE_SPACE_BOUND`].
pub fn naive_p_exists(f: &Semifunctor, mode: PMode) -> Option<bool> {
    let c = f.source();
    let cells = cells(f);
    let domains: Vec<&[Mor]> = cells.iter().map(|k| c.hom(k.x, k.y)).collect();
    let space = domains.iter().try_fold(1u128, |acc, d| acc.checked_mul(d.len() as u128))?;
    if space > NAIVE_SPACE_BOUND {
        return None;
    }
    if space == 0 {
        return Some(false);
    }
    let mut idx = vec![0usize; cells.len()];
    loop {
        let p: Vec<Mor> = idx.iter().zip(&domains).map(|(&i, d)| d[i]).collect();
        if valid(f, &cells, &p, mode) {
            return Some(true);
        }
        // odometer
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Some(false);
            }
            idx[k] += 1;
            if idx[k] < domains[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Checks a library-produced family with the oracle's own validity test.
pub fn naive_accepts(f: &Semifunctor, mode: PMode, value: impl Fn(Obj, Obj, Mor) -> Mor) -> bool {
    let cells = cells(f);
    let p: Vec<Mor> = cells.iter().map(|k| value(k.x, k.y, k.d)).collect();
    let c = f.source();
    cells.iter().zip(&p).all(|(k, &v)| c.src(v) == k.x && c.dst(v) == k.y) && valid(f, &cells, &p, mode)
}

/// Every normalized semi-inverse of `m: FX → FY` by scanning `Hom(FY, FX)`.
pub fn naive_semi_inverses(f: &Semifunctor, x: Obj, y: Obj, m: Mor) -> Vec<Mor> {
    let d: &FinCategory = f.target();
    let (ex, ey) = (f.mor(f.source().id(x)), f.mor(f.source().id(y)));
    d.morphisms()
        .filter(|&g| d.src(g) == f.obj(y) && d.dst(g) == f.obj(x))
        .filter(|&g| d.compose(g, m) == ex && d.compose(m, g) == ey && d.compose(ex, g) == g)
        .collect()
}
