use super::{FinCategory, KernelError, Mor, MorphismRecord, Obj};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

/// Componentwise product `C × D`. Objects are named `(X,Y)` and morphisms
/// `(f,g)`, both in first-factor-major order.
pub fn product_category(c: &FinCategory, d: &FinCategory) -> FinCategory {
    let (nd, md) = (d.num_objects(), d.num_morphisms());
    let objects = c
        .objects()
        .flat_map(|x| d.objects().map(move |y| (x, y)))
        .map(|(x, y)| format!("({},{})", c.obj_name(x), d.obj_name(y)))
        .collect();
    let morphisms = c
        .morphisms()
        .flat_map(|f| d.morphisms().map(move |g| (f, g)))
        .map(|(f, g)| MorphismRecord {
            id: format!("({},{})", c.mor_name(f), d.mor_name(g)),
            src: Obj(c.src(f).0 * nd + d.src(g).0),
            dst: Obj(c.dst(f).0 * nd + d.dst(g).0),
        })
        .collect();
    let identity = c
        .objects()
        .flat_map(|x| d.objects().map(move |y| (x, y)))
        .map(|(x, y)| Mor(c.id(x).0 * md + d.id(y).0))
        .collect();
    FinCategory::assemble(objects, morphisms, identity, |a, b| {
        let (a1, a2) = (Mor(a.0 / md), Mor(a.0 % md));
        let (b1, b2) = (Mor(b.0 / md), Mor(b.0 % md));
        Some(Mor(c.try_compose(a1, b1)?.0 * md + d.try_compose(a2, b2)?.0))
    })
    .expect("product of valid categories is valid")
}

/// Discrete category: the listed objects and their identities `id_X`, nothing else.
pub fn discrete_category<S: AsRef<str>>(objects: &[S]) -> FinCategory {
    let morphisms = objects
        .iter()
        .enumerate()
        .map(|(i, x)| MorphismRecord { id: format!("id_{}", x.as_ref()), src: Obj(i), dst: Obj(i) })
        .collect();
    let names = objects.iter().map(|x| String::from(x.as_ref())).collect();
    let identity = (0..objects.len()).map(Mor).collect();
    FinCategory::assemble(names, morphisms, identity, |g, f| (g == f).then_some(g)).expect("distinct object names")
}

/// One-object category of a finite monoid. `table[a][b]` is the index of
/// `a·b`, read as the composite `a ∘ b`; the object is named `*`.
pub fn monoid_category(elements: Vec<String>, table: &[Vec<usize>]) -> Result<FinCategory, KernelError> {
    let n = elements.len();
    if n == 0 || table.len() != n || table.iter().any(|row| row.len() != n || row.iter().any(|&v| v >= n)) {
        return Err(KernelError::NotAMonoid("table must be square over the element list".into()));
    }
    let unit = (0..n)
        .find(|&u| (0..n).all(|a| table[u][a] == a && table[a][u] == a))
        .ok_or_else(|| KernelError::NotAMonoid("no unit element".into()))?;
    let morphisms = elements.into_iter().map(|id| MorphismRecord { id, src: Obj(0), dst: Obj(0) }).collect();
    let cat = FinCategory::assemble(alloc::vec!["*".into()], morphisms, alloc::vec![Mor(unit)], |g, f| {
        Some(Mor(table[g.0][f.0]))
    })?;
    cat.check_axioms().map_err(|e| KernelError::NotAMonoid(format!("{e}")))?;
    Ok(cat)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use alloc::vec;

    /// The commutative monoid {1, x, e} with x·x = e, x·e = x, e·e = e.
    pub(crate) fn m3() -> FinCategory {
        let t = vec![vec![0, 1, 2], vec![1, 2, 1], vec![2, 1, 2]];
        monoid_category(vec!["1".into(), "x".into(), "e".into()], &t).unwrap()
    }

    /// The walking idempotent {id, u}.
    pub(crate) fn w() -> FinCategory {
        monoid_category(vec!["id".into(), "u".into()], &[vec![0, 1], vec![1, 1]]).unwrap()
    }

    #[test]
    fn m3_table_matches_the_stated_products() {
        let c = m3();
        let m = |s| c.mor(s).unwrap();
        assert_eq!(c.compose(m("x"), m("x")), m("e"));
        assert_eq!(c.compose(m("x"), m("1")), m("x"));
        assert_eq!(c.compose(m("x"), m("e")), m("x"));
        assert_eq!(c.compose(m("1"), m("e")), m("e"));
        assert_eq!(c.compose(m("e"), m("e")), m("e"));
    }

    #[test]
    fn non_monoids_are_rejected() {
        // no unit
        assert!(monoid_category(vec!["a".into(), "b".into()], &[vec![0, 0], vec![0, 0]]).is_err());
        // unit exists but not associative: a·a = b, a·b = a, b·b = b with b... use 3 elements
        let t = vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 1, 2]];
        assert!(matches!(
            monoid_category(vec!["1".into(), "p".into(), "q".into()], &t),
            Err(KernelError::NotAMonoid(_))
        ));
    }

    #[test]
    fn trivial_monoid_is_terminal() {
        let c = monoid_category(vec!["1".into()], &[vec![0]]).unwrap();
        assert_eq!(c, FinCategory::terminal("*", "1"));
    }

    #[test]
    fn products_have_componentwise_structure() {
        let p = product_category(&m3(), &m3());
        assert_eq!(p.num_objects(), 1);
        assert_eq!(p.hom(Obj(0), Obj(0)).len(), 9);
        assert!(p.check_axioms().is_ok());

        let ww = product_category(&w(), &w());
        assert_eq!(ww.num_morphisms(), 4);
        let uid = ww.mor("(u,id)").unwrap();
        assert_eq!(ww.compose(uid, uid), uid);
        assert!(ww.check_axioms().is_ok());

        let t = FinCategory::terminal("*", "id");
        let ct = product_category(&m3(), &t);
        assert_eq!(ct.num_morphisms(), 3);
        assert!(ct.check_axioms().is_ok());
    }

    #[test]
    fn walking_idempotent_is_self_dual() {
        assert_eq!(w().opposite(), w());
    }
}
