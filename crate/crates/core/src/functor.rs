//! Morphisms of 2-precategories and 2-functors.

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;

use serde::Serialize;

use crate::category::{RelaxedTwoCategory, TwoCategory};
use crate::cells::{ObjIx, OneIx, TwoIx, TwoPrecategory};
use crate::error::{malformed, Error, Result};

/// A triple of carrier maps `(f2, f1, f0)` between two structures. Nothing
/// about structure preservation is assumed; see [`Morphism::violations`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism<C> {
    source: C,
    target: C,
    f0: Vec<ObjIx>,
    f1: Vec<OneIx>,
    f2: Vec<TwoIx>,
}

/// A morphism between 2-categories.
pub type TwoFunctor = Morphism<TwoCategory>;

/// A morphism between relaxed structures; only structure-map preservation
/// is expected of it, no laws.
pub type RelaxedMorphism = Morphism<RelaxedTwoCategory>;

/// The structure map a morphism fails to commute with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StructureMap {
    Dom,
    Cod,
    Identity1,
    Compose1,
    VDom,
    VCod,
    Identity2,
    VCompose,
    HCompose,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FunctorViolation {
    pub map: StructureMap,
    pub cells: Vec<String>,
}

impl fmt::Display for FunctorViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} at ({})", self.map, self.cells.join(", "))
    }
}

impl<C: Deref<Target = TwoPrecategory>> Morphism<C> {
    /// Wraps index maps, checking only lengths and ranges.
    pub fn new(source: C, target: C, f0: Vec<ObjIx>, f1: Vec<OneIx>, f2: Vec<TwoIx>) -> Result<Self> {
        if f0.len() != source.object_count()
            || f1.len() != source.one_cell_count()
            || f2.len() != source.two_cell_count()
        {
            return Err(malformed("carrier map is not total on its source"));
        }
        if f0.iter().any(|x| x.0 >= target.object_count())
            || f1.iter().any(|x| x.0 >= target.one_cell_count())
            || f2.iter().any(|x| x.0 >= target.two_cell_count())
        {
            return Err(malformed("carrier map leaves its target"));
        }
        Ok(Morphism {
            source,
            target,
            f0,
            f1,
            f2,
        })
    }

    pub(crate) fn from_parts(source: C, target: C, f0: Vec<ObjIx>, f1: Vec<OneIx>, f2: Vec<TwoIx>) -> Self {
        debug_assert_eq!(f0.len(), source.object_count());
        debug_assert_eq!(f1.len(), source.one_cell_count());
        debug_assert_eq!(f2.len(), source.two_cell_count());
        Morphism {
            source,
            target,
            f0,
            f1,
            f2,
        }
    }

    /// Builds a morphism from identifier pairs. Images of identity cells may
    /// be omitted; they are sent to the identity on the image.
    pub fn from_id_maps(
        source: C,
        target: C,
        f0: &[(String, String)],
        f1: &[(String, String)],
        f2: &[(String, String)],
    ) -> Result<Self> {
        fn collect<I: Copy>(
            pairs: &[(String, String)],
            from: impl Fn(&str) -> Result<usize>,
            to: impl Fn(&str) -> Result<I>,
            what: &str,
        ) -> Result<HashMap<usize, I>>
        where
            I: PartialEq,
        {
            let mut out = HashMap::new();
            for (a, b) in pairs {
                let (i, j) = (from(a)?, to(b)?);
                if let Some(prev) = out.insert(i, j) {
                    if prev != j {
                        return Err(malformed(format!("{what} map sends {a} to two cells")));
                    }
                }
            }
            Ok(out)
        }
        let dangling = |e: Error| match e {
            Error::UnknownCell(c) => malformed(format!("dangling identifier {c}")),
            other => other,
        };
        let m0 = collect(
            f0,
            |s| source.object(s).map(|x| x.0),
            |s| target.object(s),
            "object",
        )
        .map_err(dangling)?;
        let m1 = collect(
            f1,
            |s| source.one_cell(s).map(|x| x.0),
            |s| target.one_cell(s),
            "1-cell",
        )
        .map_err(dangling)?;
        let m2 = collect(
            f2,
            |s| source.two_cell(s).map(|x| x.0),
            |s| target.two_cell(s),
            "2-cell",
        )
        .map_err(dangling)?;

        let mut g0 = Vec::with_capacity(source.object_count());
        for x in source.objects() {
            g0.push(*m0.get(&x.0).ok_or_else(|| {
                malformed(format!("object map undefined on {}", source.object_id(x)))
            })?);
        }
        let mut g1 = Vec::with_capacity(source.one_cell_count());
        for h in source.one_cells() {
            let img = match m1.get(&h.0) {
                Some(&k) => k,
                None if source.is_identity1(h) => target.identity1(g0[source.dom(h).0]),
                None => {
                    return Err(malformed(format!(
                        "1-cell map undefined on {}",
                        source.one_id(h)
                    )))
                }
            };
            g1.push(img);
        }
        let mut g2 = Vec::with_capacity(source.two_cell_count());
        for t in source.two_cells() {
            let img = match m2.get(&t.0) {
                Some(&k) => k,
                None if source.is_identity2(t) => target.identity2(g1[source.vdom(t).0]),
                None => {
                    return Err(malformed(format!(
                        "2-cell map undefined on {}",
                        source.two_id(t)
                    )))
                }
            };
            g2.push(img);
        }
        Ok(Morphism {
            source,
            target,
            f0: g0,
            f1: g1,
            f2: g2,
        })
    }

    pub fn source(&self) -> &C {
        &self.source
    }

    pub fn target(&self) -> &C {
        &self.target
    }

    pub fn f0(&self) -> &[ObjIx] {
        &self.f0
    }

    pub fn f1(&self) -> &[OneIx] {
        &self.f1
    }

    pub fn f2(&self) -> &[TwoIx] {
        &self.f2
    }

    pub fn obj(&self, x: ObjIx) -> ObjIx {
        self.f0[x.0]
    }

    pub fn one(&self, h: OneIx) -> OneIx {
        self.f1[h.0]
    }

    pub fn two(&self, t: TwoIx) -> TwoIx {
        self.f2[t.0]
    }

    /// The three maps as identifier pairs, identities included, in source
    /// order.
    pub fn id_maps(&self) -> [Vec<(String, String)>; 3] {
        let (s, t) = (&*self.source, &*self.target);
        [
            s.objects()
                .map(|x| (s.object_id(x).to_string(), t.object_id(self.obj(x)).to_string()))
                .collect(),
            s.one_cells()
                .map(|h| (s.one_id(h).to_string(), t.one_id(self.one(h)).to_string()))
                .collect(),
            s.two_cells()
                .map(|c| (s.two_id(c).to_string(), t.two_id(self.two(c)).to_string()))
                .collect(),
        ]
    }

    /// Every failure of the maps to commute with `d, c, e, m, vd, vc, ve,
    /// vm, hm`. Empty iff the morphism preserves all structure.
    pub fn violations(&self) -> Vec<FunctorViolation> {
        let (s, t) = (&*self.source, &*self.target);
        let mut out = Vec::new();
        let mut push = |map, cells: Vec<&str>| {
            out.push(FunctorViolation {
                map,
                cells: cells.into_iter().map(str::to_string).collect(),
            })
        };
        for x in s.objects() {
            if self.one(s.identity1(x)) != t.identity1(self.obj(x)) {
                push(StructureMap::Identity1, vec![s.object_id(x)]);
            }
        }
        for h in s.one_cells() {
            let img = self.one(h);
            if t.dom(img) != self.obj(s.dom(h)) {
                push(StructureMap::Dom, vec![s.one_id(h)]);
            }
            if t.cod(img) != self.obj(s.cod(h)) {
                push(StructureMap::Cod, vec![s.one_id(h)]);
            }
            if self.two(s.identity2(h)) != t.identity2(img) {
                push(StructureMap::Identity2, vec![s.one_id(h)]);
            }
        }
        for (g, f, gf) in s.compose1_rows() {
            if t.compose1(self.one(g), self.one(f)) != Some(self.one(gf)) {
                push(StructureMap::Compose1, vec![s.one_id(g), s.one_id(f)]);
            }
        }
        for c in s.two_cells() {
            let img = self.two(c);
            if t.vdom(img) != self.one(s.vdom(c)) {
                push(StructureMap::VDom, vec![s.two_id(c)]);
            }
            if t.vcod(img) != self.one(s.vcod(c)) {
                push(StructureMap::VCod, vec![s.two_id(c)]);
            }
        }
        for (b, a, ba) in s.vcompose_rows() {
            if t.vcompose(self.two(b), self.two(a)) != Some(self.two(ba)) {
                push(StructureMap::VCompose, vec![s.two_id(b), s.two_id(a)]);
            }
        }
        for (b, a, ba) in s.hcompose_rows() {
            if t.hcompose(self.two(b), self.two(a)) != Some(self.two(ba)) {
                push(StructureMap::HCompose, vec![s.two_id(b), s.two_id(a)]);
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }

    pub fn is_bijective(&self) -> bool {
        bijective(&self.f0, self.target.object_count())
            && bijective(&self.f1, self.target.one_cell_count())
            && bijective(&self.f2, self.target.two_cell_count())
    }
}

pub(crate) fn bijective<T: Copy + Into<usize>>(map: &[T], target_len: usize) -> bool {
    map.len() == target_len && surjective(map, target_len)
}

pub(crate) fn surjective<T: Copy + Into<usize>>(map: &[T], target_len: usize) -> bool {
    let mut hit = vec![false; target_len];
    for &x in map {
        hit[x.into()] = true;
    }
    hit.into_iter().all(|b| b)
}

impl From<ObjIx> for usize {
    fn from(x: ObjIx) -> usize {
        x.0
    }
}

impl From<OneIx> for usize {
    fn from(x: OneIx) -> usize {
        x.0
    }
}

impl From<TwoIx> for usize {
    fn from(x: TwoIx) -> usize {
        x.0
    }
}

impl TwoFunctor {
    pub fn identity(a: &TwoCategory) -> TwoFunctor {
        Morphism {
            source: a.clone(),
            target: a.clone(),
            f0: a.objects().collect(),
            f1: a.one_cells().collect(),
            f2: a.two_cells().collect(),
        }
    }

    /// `g ∘ f`.
    pub fn compose(g: &TwoFunctor, f: &TwoFunctor) -> Result<TwoFunctor> {
        if !f.target.same(&g.source) {
            return Err(Error::MismatchedBoundary(
                "target of the first functor is not the source of the second".into(),
            ));
        }
        Ok(Morphism {
            source: f.source.clone(),
            target: g.target.clone(),
            f0: f.f0.iter().map(|&x| g.obj(x)).collect(),
            f1: f.f1.iter().map(|&x| g.one(x)).collect(),
            f2: f.f2.iter().map(|&x| g.two(x)).collect(),
        })
    }

    /// The same maps viewed between relaxed structures.
    pub fn relax(&self) -> RelaxedMorphism {
        Morphism {
            source: RelaxedTwoCategory::from(self.source.clone()),
            target: RelaxedTwoCategory::from(self.target.clone()),
            f0: self.f0.clone(),
            f1: self.f1.clone(),
            f2: self.f2.clone(),
        }
    }
}

/// `validate_two_functor`: the list of structure violations.
pub fn validate_two_functor(f: &TwoFunctor) -> Vec<FunctorViolation> {
    f.violations()
}

pub fn identity_two_functor(a: &TwoCategory) -> TwoFunctor {
    TwoFunctor::identity(a)
}

pub fn compose_two_functors(g: &TwoFunctor, f: &TwoFunctor) -> Result<TwoFunctor> {
    TwoFunctor::compose(g, f)
}
