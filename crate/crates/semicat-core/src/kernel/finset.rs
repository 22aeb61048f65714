use super::{FinCategory, KernelError, Mor, MorphismRecord, Obj};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

/// A finite set given by distinct atom labels.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FinSetObject {
    pub elements: Vec<String>,
}

impl FinSetObject {
    pub fn new<S: Into<String>>(elements: impl IntoIterator<Item = S>) -> Self {
        FinSetObject { elements: elements.into_iter().map(Into::into).collect() }
    }
    pub fn len(&self) -> usize {
        self.elements.len()
    }
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
    /// Display name, e.g. `{a,b}`.
    pub fn name(&self) -> String {
        format!("{{{}}}", self.elements.join(","))
    }
}

/// A full subcategory of finite sets: every function between the listed
/// sets is a morphism. Functions are stored as image-index vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinSetCategory {
    pub cat: FinCategory,
    pub sets: Vec<FinSetObject>,
    maps: Vec<Vec<usize>>,
}

impl FinSetCategory {
    pub fn set(&self, x: Obj) -> &FinSetObject {
        &self.sets[x.0]
    }
    /// Image indices of the function `f`.
    pub fn map(&self, f: Mor) -> &[usize] {
        &self.maps[f.0]
    }
    pub fn apply(&self, f: Mor, i: usize) -> usize {
        self.maps[f.0][i]
    }
    /// The morphism `src → dst` with the given image indices.
    pub fn morphism(&self, src: Obj, dst: Obj, images: &[usize]) -> Mor {
        let base = self.sets[dst.0].len();
        let pos = images.iter().fold(0usize, |acc, &i| acc * base + i);
        self.cat.hom(src, dst)[pos]
    }
    pub fn object_of(&self, set: &FinSetObject) -> Option<Obj> {
        self.sets.iter().position(|s| s == set).map(Obj)
    }
}

/// All functions `A → B` as image vectors, lexicographic with the first
/// element most significant.
pub(crate) fn functions(a: usize, b: usize) -> Vec<Vec<usize>> {
    let count = if a == 0 {
        1
    } else if b == 0 {
        0
    } else {
        b.pow(a as u32)
    };
    (0..count)
        .map(|mut k| {
            let mut img = alloc::vec![0; a];
            for slot in img.iter_mut().rev() {
                *slot = k % b.max(1);
                k /= b.max(1);
            }
            img
        })
        .collect()
}

/// Builds the full subcategory of finite sets on `objs`.
pub fn full_finset_subcategory(objs: &[FinSetObject]) -> Result<FinSetCategory, KernelError> {
    for (i, o) in objs.iter().enumerate() {
        if objs[..i].contains(o) {
            return Err(KernelError::Invalid(super::ValidationError::DuplicateId(o.name())));
        }
        let mut labels = o.elements.clone();
        labels.sort();
        labels.dedup();
        if labels.len() != o.len() {
            return Err(KernelError::Invalid(super::ValidationError::DuplicateId(o.name())));
        }
    }
    let mut morphisms = Vec::new();
    let mut maps = Vec::new();
    for (si, s) in objs.iter().enumerate() {
        for (di, d) in objs.iter().enumerate() {
            for img in functions(s.len(), d.len()) {
                let labels: Vec<&str> = img.iter().map(|&i| d.elements[i].as_str()).collect();
                morphisms.push(MorphismRecord {
                    id: format!("{}->{}:{}", s.name(), d.name(), labels.join(",")),
                    src: Obj(si),
                    dst: Obj(di),
                });
                maps.push(img);
            }
        }
    }
    // hom(X, Y) occupies a contiguous block; locate blocks for composite lookup.
    let n = objs.len();
    let mut block = alloc::vec![0usize; n * n];
    let mut at = 0;
    for si in 0..n {
        for di in 0..n {
            block[si * n + di] = at;
            at += functions(objs[si].len(), objs[di].len()).len();
        }
    }
    let identity = (0..n)
        .map(|x| {
            let img: Vec<usize> = (0..objs[x].len()).collect();
            let base = objs[x].len();
            Mor(block[x * n + x] + img.iter().fold(0usize, |acc, &i| acc * base + i))
        })
        .collect();
    let cat =
        FinCategory::assemble(objs.iter().map(FinSetObject::name).collect(), morphisms.clone(), identity, |g, f| {
            let (gr, fr) = (&morphisms[g.0], &morphisms[f.0]);
            let base = objs[gr.dst.0].len();
            let pos = maps[f.0].iter().fold(0usize, |acc, &i| acc * base + maps[g.0][i]);
            Some(Mor(block[fr.src.0 * n + gr.dst.0] + pos))
        })?;
    Ok(FinSetCategory { cat, sets: objs.to_vec(), maps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn singleton_gives_terminal_shape() {
        let c = full_finset_subcategory(&[FinSetObject::new(["a"])]).unwrap();
        assert_eq!(c.cat.num_morphisms(), 1);
        assert!(c.cat.check_axioms().is_ok());
    }

    #[test]
    fn empty_and_singleton() {
        let c = full_finset_subcategory(&[FinSetObject::new::<&str>([]), FinSetObject::new(["a"])]).unwrap();
        assert_eq!(c.cat.num_morphisms(), 3);
        assert!(c.cat.check_axioms().is_ok());
    }

    #[test]
    fn counts_are_powers() {
        let c = full_finset_subcategory(&[FinSetObject::new(["a"]), FinSetObject::new(["a", "b"])]).unwrap();
        assert_eq!(c.cat.num_morphisms(), 1 + 2 + 1 + 4);
        assert!(c.cat.check_axioms().is_ok());
        let (one, two) = (Obj(0), Obj(1));
        let f = c.morphism(one, two, &[1]);
        assert_eq!(c.cat.mor_name(f), "{a}->{a,b}:b");
        let swap = c.morphism(two, two, &[1, 0]);
        assert_eq!(c.cat.compose(swap, f), c.morphism(one, two, &[0]));
    }

    #[test]
    fn duplicates_rejected() {
        let a = FinSetObject::new(["a"]);
        assert!(full_finset_subcategory(&[a.clone(), a]).is_err());
        assert!(full_finset_subcategory(&[FinSetObject::new(["a", "a"])]).is_err());
    }

    #[test]
    fn function_enumeration() {
        assert_eq!(functions(0, 0), vec![Vec::<usize>::new()]);
        assert!(functions(1, 0).is_empty());
        assert_eq!(functions(2, 2), vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }
}
