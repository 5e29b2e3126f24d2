//! Carrier data for finite 2-precategories.
//!
//! A [`TwoPrecategory`] holds the three carriers (objects, 1-cells, 2-cells),
//! the boundary and identity maps, and total composition tables on the
//! composable-pair sets. Nothing here checks the category laws; that is the
//! job of [`crate::axioms`]. The pair-sets themselves are never stored: they
//! are enumerated from the boundary maps when needed.
//!
//! Identity cells use reserved identifiers: the identity 1-cell of object `x`
//! is `id:x` and the identity 2-cell of the 1-cell `h` is `vid:h`. The
//! builder synthesizes them, together with every table row forced by the
//! unit laws and by the identity exchange law, when they are omitted.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{malformed, Error, Result};

macro_rules! index_type {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
        pub struct $name(pub usize);

        impl $name {
            pub fn index(self) -> usize {
                self.0
            }
        }
    };
}

index_type!(
    /// Position of an object in its carrier.
    ObjIx
);
index_type!(
    /// Position of a 1-cell in its carrier.
    OneIx
);
index_type!(
    /// Position of a 2-cell in its carrier.
    TwoIx
);

pub const IDENTITY_PREFIX: &str = "id:";
pub const VERTICAL_IDENTITY_PREFIX: &str = "vid:";

pub fn identity_name(object: &str) -> String {
    format!("{IDENTITY_PREFIX}{object}")
}

pub fn vertical_identity_name(one_cell: &str) -> String {
    format!("{VERTICAL_IDENTITY_PREFIX}{one_cell}")
}

/// Renames an identifier at `level` through `f`, keeping the reserved
/// identity names consistent: `id:x` becomes `id:` + the new name of object
/// `x`, and `vid:h` becomes `vid:` + the new name of 1-cell `h`.
pub fn rename_keeping_identities(level: Level, id: &str, f: &dyn Fn(&str) -> String) -> String {
    match level {
        Level::Object => f(id),
        Level::OneCell => match id.strip_prefix(IDENTITY_PREFIX) {
            Some(x) => identity_name(&rename_keeping_identities(Level::Object, x, f)),
            None => f(id),
        },
        Level::TwoCell => match id.strip_prefix(VERTICAL_IDENTITY_PREFIX) {
            Some(h) => vertical_identity_name(&rename_keeping_identities(Level::OneCell, h, f)),
            None => f(id),
        },
    }
}

/// The three carrier levels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    Object,
    OneCell,
    TwoCell,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Object => "object",
            Level::OneCell => "1-cell",
            Level::TwoCell => "2-cell",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneCell {
    pub id: String,
    pub dom: ObjIx,
    pub cod: ObjIx,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCell {
    pub id: String,
    pub vdom: OneIx,
    pub vcod: OneIx,
}

/// Finite 2-precategory: carriers, boundary and identity maps, and total
/// composition tables. Carriers are sorted by identifier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoPrecategory {
    objects: Vec<String>,
    one_cells: Vec<OneCell>,
    two_cells: Vec<TwoCell>,
    one_identity: Vec<OneIx>,
    two_identity: Vec<TwoIx>,
    compose1: BTreeMap<(OneIx, OneIx), OneIx>,
    vcompose: BTreeMap<(TwoIx, TwoIx), TwoIx>,
    hcompose: BTreeMap<(TwoIx, TwoIx), TwoIx>,
    index: Index,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Index {
    object_ix: HashMap<String, ObjIx>,
    one_ix: HashMap<String, OneIx>,
    two_ix: HashMap<String, TwoIx>,
    one_from: Vec<Vec<OneIx>>,
    one_to: Vec<Vec<OneIx>>,
    two_from: Vec<Vec<TwoIx>>,
    two_to: Vec<Vec<TwoIx>>,
    hcells_from: Vec<Vec<TwoIx>>,
    vhom: HashMap<(OneIx, OneIx), Vec<TwoIx>>,
    is_one_identity: Vec<bool>,
    is_two_identity: Vec<bool>,
}

impl TwoPrecategory {
    pub fn builder() -> TwoCategoryBuilder {
        TwoCategoryBuilder::default()
    }

    pub fn empty() -> Self {
        TwoCategoryBuilder::default()
            .build()
            .expect("empty data is well formed")
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn one_cell_count(&self) -> usize {
        self.one_cells.len()
    }

    pub fn two_cell_count(&self) -> usize {
        self.two_cells.len()
    }

    /// `(objects, 1-cells, 2-cells)` including identities.
    pub fn sizes(&self) -> (usize, usize, usize) {
        (self.object_count(), self.one_cell_count(), self.two_cell_count())
    }

    pub fn objects(&self) -> impl ExactSizeIterator<Item = ObjIx> + Clone {
        (0..self.objects.len()).map(ObjIx)
    }

    pub fn one_cells(&self) -> impl ExactSizeIterator<Item = OneIx> + Clone {
        (0..self.one_cells.len()).map(OneIx)
    }

    pub fn two_cells(&self) -> impl ExactSizeIterator<Item = TwoIx> + Clone {
        (0..self.two_cells.len()).map(TwoIx)
    }

    pub fn object_id(&self, x: ObjIx) -> &str {
        &self.objects[x.0]
    }

    pub fn one_id(&self, h: OneIx) -> &str {
        &self.one_cells[h.0].id
    }

    pub fn two_id(&self, t: TwoIx) -> &str {
        &self.two_cells[t.0].id
    }

    pub fn object(&self, id: &str) -> Result<ObjIx> {
        self.index
            .object_ix
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownCell(id.to_string()))
    }

    pub fn one_cell(&self, id: &str) -> Result<OneIx> {
        self.index
            .one_ix
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownCell(id.to_string()))
    }

    pub fn two_cell(&self, id: &str) -> Result<TwoIx> {
        self.index
            .two_ix
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownCell(id.to_string()))
    }

    /// `d`
    pub fn dom(&self, h: OneIx) -> ObjIx {
        self.one_cells[h.0].dom
    }

    /// `c`
    pub fn cod(&self, h: OneIx) -> ObjIx {
        self.one_cells[h.0].cod
    }

    /// `e`
    pub fn identity1(&self, x: ObjIx) -> OneIx {
        self.one_identity[x.0]
    }

    /// `m`, defined exactly on `P_2`.
    pub fn compose1(&self, g: OneIx, f: OneIx) -> Option<OneIx> {
        self.compose1.get(&(g, f)).copied()
    }

    /// `vd`
    pub fn vdom(&self, t: TwoIx) -> OneIx {
        self.two_cells[t.0].vdom
    }

    /// `vc`
    pub fn vcod(&self, t: TwoIx) -> OneIx {
        self.two_cells[t.0].vcod
    }

    /// `ve`
    pub fn identity2(&self, h: OneIx) -> TwoIx {
        self.two_identity[h.0]
    }

    /// `hd = d ∘ vd`
    pub fn hdom(&self, t: TwoIx) -> ObjIx {
        self.dom(self.vdom(t))
    }

    /// `hc = c ∘ vd`
    pub fn hcod(&self, t: TwoIx) -> ObjIx {
        self.cod(self.vdom(t))
    }

    /// `he = ve ∘ e`
    pub fn hunit(&self, x: ObjIx) -> TwoIx {
        self.identity2(self.identity1(x))
    }

    /// `vm`, defined exactly on `vP_2`.
    pub fn vcompose(&self, b: TwoIx, a: TwoIx) -> Option<TwoIx> {
        self.vcompose.get(&(b, a)).copied()
    }

    /// `hm`, defined exactly on `hP_2`.
    pub fn hcompose(&self, b: TwoIx, a: TwoIx) -> Option<TwoIx> {
        self.hcompose.get(&(b, a)).copied()
    }

    pub fn is_identity1(&self, h: OneIx) -> bool {
        self.index.is_one_identity[h.0]
    }

    pub fn is_identity2(&self, t: TwoIx) -> bool {
        self.index.is_two_identity[t.0]
    }

    /// 1-cells with `d = x`.
    pub fn one_cells_from(&self, x: ObjIx) -> &[OneIx] {
        &self.index.one_from[x.0]
    }

    /// 1-cells with `c = x`.
    pub fn one_cells_to(&self, x: ObjIx) -> &[OneIx] {
        &self.index.one_to[x.0]
    }

    /// 1-cells from `x` to `y`.
    pub fn one_hom(&self, x: ObjIx, y: ObjIx) -> impl Iterator<Item = OneIx> + '_ {
        self.one_cells_from(x)
            .iter()
            .copied()
            .filter(move |&h| self.cod(h) == y)
    }

    /// 2-cells with `vd = h`.
    pub fn two_cells_from(&self, h: OneIx) -> &[TwoIx] {
        &self.index.two_from[h.0]
    }

    /// 2-cells with `vc = h`.
    pub fn two_cells_to(&self, h: OneIx) -> &[TwoIx] {
        &self.index.two_to[h.0]
    }

    /// 2-cells with `hd = x`.
    pub fn two_cells_hfrom(&self, x: ObjIx) -> &[TwoIx] {
        &self.index.hcells_from[x.0]
    }

    /// The vertical hom-set `{θ | vd θ = h, vc θ = h′}`, sorted by identifier.
    pub fn vertical_hom(&self, h: OneIx, h2: OneIx) -> &[TwoIx] {
        self.index
            .vhom
            .get(&(h, h2))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// `P_2`: pairs `(g, f)` with `d g = c f`.
    pub fn composable1(&self) -> impl Iterator<Item = (OneIx, OneIx)> + '_ {
        self.one_cells().flat_map(move |f| {
            self.one_cells_from(self.cod(f))
                .iter()
                .map(move |&g| (g, f))
        })
    }

    /// `vP_2`: pairs `(β, α)` with `vd β = vc α`.
    pub fn vcomposable(&self) -> impl Iterator<Item = (TwoIx, TwoIx)> + '_ {
        self.two_cells().flat_map(move |a| {
            self.two_cells_from(self.vcod(a))
                .iter()
                .map(move |&b| (b, a))
        })
    }

    /// `hP_2`: pairs `(β, α)` with `hd β = hc α`.
    pub fn hcomposable(&self) -> impl Iterator<Item = (TwoIx, TwoIx)> + '_ {
        self.two_cells().flat_map(move |a| {
            self.two_cells_hfrom(self.hcod(a))
                .iter()
                .map(move |&b| (b, a))
        })
    }

    /// Table rows of `m` in index order.
    pub fn compose1_rows(&self) -> impl Iterator<Item = (OneIx, OneIx, OneIx)> + '_ {
        self.compose1.iter().map(|(&(g, f), &gf)| (g, f, gf))
    }

    pub fn vcompose_rows(&self) -> impl Iterator<Item = (TwoIx, TwoIx, TwoIx)> + '_ {
        self.vcompose.iter().map(|(&(b, a), &ba)| (b, a, ba))
    }

    pub fn hcompose_rows(&self) -> impl Iterator<Item = (TwoIx, TwoIx, TwoIx)> + '_ {
        self.hcompose.iter().map(|(&(b, a), &ba)| (b, a, ba))
    }

    /// A builder pre-loaded with every carrier element and table row of
    /// `self`, renamed through `rename`. The renaming must send `id:x` to
    /// `id:` followed by the new name of `x`, and likewise for `vid:`.
    pub fn to_builder_renamed(&self, rename: impl Fn(Level, &str) -> String) -> TwoCategoryBuilder {
        let mut b = TwoCategoryBuilder::default();
        let obj: Vec<String> = self.objects.iter().map(|x| rename(Level::Object, x)).collect();
        let one: Vec<String> = self
            .one_cells
            .iter()
            .map(|h| rename(Level::OneCell, &h.id))
            .collect();
        let two: Vec<String> = self
            .two_cells
            .iter()
            .map(|t| rename(Level::TwoCell, &t.id))
            .collect();
        for x in &obj {
            b.object(x.clone());
        }
        for h in self.one_cells() {
            if !self.is_identity1(h) {
                b.one_cell(one[h.0].clone(), obj[self.dom(h).0].clone(), obj[self.cod(h).0].clone());
            }
        }
        for t in self.two_cells() {
            if !self.is_identity2(t) {
                b.two_cell(two[t.0].clone(), one[self.vdom(t).0].clone(), one[self.vcod(t).0].clone());
            }
        }
        for (g, f, gf) in self.compose1_rows() {
            b.compose1(one[g.0].clone(), one[f.0].clone(), one[gf.0].clone());
        }
        for (y, x, yx) in self.vcompose_rows() {
            b.vcompose(two[y.0].clone(), two[x.0].clone(), two[yx.0].clone());
        }
        for (y, x, yx) in self.hcompose_rows() {
            b.hcompose(two[y.0].clone(), two[x.0].clone(), two[yx.0].clone());
        }
        b
    }

    /// Whether a table row is forced by the unit laws or identity exchange,
    /// i.e. the builder would synthesize it if omitted.
    pub fn is_synthesized_compose1(&self, g: OneIx, f: OneIx, gf: OneIx) -> bool {
        (self.is_identity1(f) && gf == g) || (self.is_identity1(g) && gf == f)
    }

    pub fn is_synthesized_vcompose(&self, b: TwoIx, a: TwoIx, ba: TwoIx) -> bool {
        (self.is_identity2(a) && ba == b) || (self.is_identity2(b) && ba == a)
    }

    pub fn is_synthesized_hcompose(&self, b: TwoIx, a: TwoIx, ba: TwoIx) -> bool {
        let unit_a = a == self.hunit(self.hdom(a));
        let unit_b = b == self.hunit(self.hdom(b));
        if unit_a || unit_b {
            return (unit_a && ba == b) || (unit_b && ba == a);
        }
        if self.is_identity2(a) && self.is_identity2(b) {
            if let Some(gf) = self.compose1(self.vdom(b), self.vdom(a)) {
                return ba == self.identity2(gf);
            }
        }
        false
    }
}

/// String-keyed construction of a [`TwoPrecategory`].
///
/// Identity cells and table rows forced by the unit laws (and, for `hm`, by
/// identity exchange) may be omitted. Every other row of every table must be
/// supplied.
#[derive(Clone, Debug, Default)]
pub struct TwoCategoryBuilder {
    objects: Vec<String>,
    one_cells: Vec<(String, String, String)>,
    two_cells: Vec<(String, String, String)>,
    compose1: Vec<(String, String, String)>,
    vcompose: Vec<(String, String, String)>,
    hcompose: Vec<(String, String, String)>,
}

impl TwoCategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(&mut self, id: impl Into<String>) -> &mut Self {
        self.objects.push(id.into());
        self
    }

    pub fn one_cell(
        &mut self,
        id: impl Into<String>,
        dom: impl Into<String>,
        cod: impl Into<String>,
    ) -> &mut Self {
        self.one_cells.push((id.into(), dom.into(), cod.into()));
        self
    }

    pub fn two_cell(
        &mut self,
        id: impl Into<String>,
        vdom: impl Into<String>,
        vcod: impl Into<String>,
    ) -> &mut Self {
        self.two_cells.push((id.into(), vdom.into(), vcod.into()));
        self
    }

    /// Row `g ∘ f = gf` of the 1-cell composition table.
    pub fn compose1(
        &mut self,
        g: impl Into<String>,
        f: impl Into<String>,
        gf: impl Into<String>,
    ) -> &mut Self {
        self.compose1.push((g.into(), f.into(), gf.into()));
        self
    }

    /// Row `β ∘v α = βα` of the vertical composition table.
    pub fn vcompose(
        &mut self,
        b: impl Into<String>,
        a: impl Into<String>,
        ba: impl Into<String>,
    ) -> &mut Self {
        self.vcompose.push((b.into(), a.into(), ba.into()));
        self
    }

    /// Row `β ∘h α = βα` of the horizontal composition table.
    pub fn hcompose(
        &mut self,
        b: impl Into<String>,
        a: impl Into<String>,
        ba: impl Into<String>,
    ) -> &mut Self {
        self.hcompose.push((b.into(), a.into(), ba.into()));
        self
    }

    /// Appends every element and row of `other`.
    pub fn extend(&mut self, other: &TwoCategoryBuilder) -> &mut Self {
        self.objects.extend(other.objects.iter().cloned());
        self.one_cells.extend(other.one_cells.iter().cloned());
        self.two_cells.extend(other.two_cells.iter().cloned());
        self.compose1.extend(other.compose1.iter().cloned());
        self.vcompose.extend(other.vcompose.iter().cloned());
        self.hcompose.extend(other.hcompose.iter().cloned());
        self
    }

    pub fn build(&self) -> Result<TwoPrecategory> {
        // objects
        let mut objects = self.objects.clone();
        objects.sort();
        if let Some(w) = objects.windows(2).find(|w| w[0] == w[1]) {
            return Err(malformed(format!("duplicate object {}", w[0])));
        }
        let object_ix: HashMap<String, ObjIx> = objects
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), ObjIx(i)))
            .collect();
        let lookup_obj = |id: &str| {
            object_ix
                .get(id)
                .copied()
                .ok_or_else(|| malformed(format!("unknown object {id}")))
        };

        // 1-cells, synthesizing identities
        let mut raw1: Vec<(String, ObjIx, ObjIx)> = Vec::new();
        for (id, d, c) in &self.one_cells {
            let (d, c) = (lookup_obj(d)?, lookup_obj(c)?);
            if let Some(x) = id.strip_prefix(IDENTITY_PREFIX) {
                match object_ix.get(x) {
                    Some(&ox) if ox == d && ox == c => continue,
                    _ => {
                        return Err(malformed(format!(
                            "1-cell {id} uses the reserved identity prefix but is not the identity of an object"
                        )))
                    }
                }
            }
            raw1.push((id.clone(), d, c));
        }
        for (i, x) in objects.iter().enumerate() {
            raw1.push((identity_name(x), ObjIx(i), ObjIx(i)));
        }
        raw1.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some(w) = raw1.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(malformed(format!("duplicate 1-cell {}", w[0].0)));
        }
        let one_cells: Vec<OneCell> = raw1
            .into_iter()
            .map(|(id, dom, cod)| OneCell { id, dom, cod })
            .collect();
        let one_ix: HashMap<String, OneIx> = one_cells
            .iter()
            .enumerate()
            .map(|(i, h)| (h.id.clone(), OneIx(i)))
            .collect();
        let lookup_one = |id: &str| {
            one_ix
                .get(id)
                .copied()
                .ok_or_else(|| malformed(format!("unknown 1-cell {id}")))
        };
        let one_identity: Vec<OneIx> = objects
            .iter()
            .map(|x| one_ix[&identity_name(x)])
            .collect();

        // 2-cells, synthesizing identities
        let mut raw2: Vec<(String, OneIx, OneIx)> = Vec::new();
        for (id, vd, vc) in &self.two_cells {
            let (vd, vc) = (lookup_one(vd)?, lookup_one(vc)?);
            if let Some(h) = id.strip_prefix(VERTICAL_IDENTITY_PREFIX) {
                match one_ix.get(h) {
                    Some(&hx) if hx == vd && hx == vc => continue,
                    _ => {
                        return Err(malformed(format!(
                            "2-cell {id} uses the reserved identity prefix but is not the identity of a 1-cell"
                        )))
                    }
                }
            }
            raw2.push((id.clone(), vd, vc));
        }
        for (i, h) in one_cells.iter().enumerate() {
            raw2.push((vertical_identity_name(&h.id), OneIx(i), OneIx(i)));
        }
        raw2.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some(w) = raw2.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(malformed(format!("duplicate 2-cell {}", w[0].0)));
        }
        let two_cells: Vec<TwoCell> = raw2
            .into_iter()
            .map(|(id, vdom, vcod)| TwoCell { id, vdom, vcod })
            .collect();
        let two_ix: HashMap<String, TwoIx> = two_cells
            .iter()
            .enumerate()
            .map(|(i, t)| (t.id.clone(), TwoIx(i)))
            .collect();
        let lookup_two = |id: &str| {
            two_ix
                .get(id)
                .copied()
                .ok_or_else(|| malformed(format!("unknown 2-cell {id}")))
        };
        let two_identity: Vec<TwoIx> = one_cells
            .iter()
            .map(|h| two_ix[&vertical_identity_name(&h.id)])
            .collect();

        let mut is_one_identity = vec![false; one_cells.len()];
        for &h in &one_identity {
            is_one_identity[h.0] = true;
        }
        let mut is_two_identity = vec![false; two_cells.len()];
        for &t in &two_identity {
            is_two_identity[t.0] = true;
        }

        let mut index = Index {
            object_ix,
            one_ix: one_ix.clone(),
            two_ix: two_ix.clone(),
            one_from: vec![Vec::new(); objects.len()],
            one_to: vec![Vec::new(); objects.len()],
            two_from: vec![Vec::new(); one_cells.len()],
            two_to: vec![Vec::new(); one_cells.len()],
            hcells_from: vec![Vec::new(); objects.len()],
            vhom: HashMap::new(),
            is_one_identity,
            is_two_identity,
        };
        for (i, h) in one_cells.iter().enumerate() {
            index.one_from[h.dom.0].push(OneIx(i));
            index.one_to[h.cod.0].push(OneIx(i));
        }
        for (i, t) in two_cells.iter().enumerate() {
            index.two_from[t.vdom.0].push(TwoIx(i));
            index.two_to[t.vcod.0].push(TwoIx(i));
            index.hcells_from[one_cells[t.vdom.0].dom.0].push(TwoIx(i));
            index.vhom.entry((t.vdom, t.vcod)).or_default().push(TwoIx(i));
        }

        let mut pre = TwoPrecategory {
            objects,
            one_cells,
            two_cells,
            one_identity,
            two_identity,
            compose1: BTreeMap::new(),
            vcompose: BTreeMap::new(),
            hcompose: BTreeMap::new(),
            index,
        };

        // m
        let mut compose1 = BTreeMap::new();
        for (g, f, gf) in &self.compose1 {
            let (gi, fi, gfi) = (lookup_one(g)?, lookup_one(f)?, lookup_one(gf)?);
            if pre.dom(gi) != pre.cod(fi) {
                return Err(malformed(format!("compose1 row ({g}, {f}) is not a composable pair")));
            }
            insert_row(&mut compose1, (gi, fi), gfi, "compose1", || format!("({g}, {f})"))?;
        }
        for f in pre.one_cells() {
            let (d, c) = (pre.dom(f), pre.cod(f));
            compose1.entry((f, pre.identity1(d))).or_insert(f);
            compose1.entry((pre.identity1(c), f)).or_insert(f);
        }
        pre.compose1 = compose1;
        for (g, f) in pre.composable1().collect::<Vec<_>>() {
            if !pre.compose1.contains_key(&(g, f)) {
                return Err(malformed(format!(
                    "compose1 undefined on ({}, {})",
                    pre.one_id(g),
                    pre.one_id(f)
                )));
            }
        }

        // vm
        let mut vcompose = BTreeMap::new();
        for (b, a, ba) in &self.vcompose {
            let (bi, ai, bai) = (lookup_two(b)?, lookup_two(a)?, lookup_two(ba)?);
            if pre.vdom(bi) != pre.vcod(ai) {
                return Err(malformed(format!("vcompose row ({b}, {a}) is not vertically composable")));
            }
            insert_row(&mut vcompose, (bi, ai), bai, "vcompose", || format!("({b}, {a})"))?;
        }
        for t in pre.two_cells() {
            vcompose.entry((t, pre.identity2(pre.vdom(t)))).or_insert(t);
            vcompose.entry((pre.identity2(pre.vcod(t)), t)).or_insert(t);
        }
        pre.vcompose = vcompose;
        for (b, a) in pre.vcomposable().collect::<Vec<_>>() {
            if !pre.vcompose.contains_key(&(b, a)) {
                return Err(malformed(format!(
                    "vcompose undefined on ({}, {})",
                    pre.two_id(b),
                    pre.two_id(a)
                )));
            }
        }

        // hm
        let mut hcompose = BTreeMap::new();
        for (b, a, ba) in &self.hcompose {
            let (bi, ai, bai) = (lookup_two(b)?, lookup_two(a)?, lookup_two(ba)?);
            if pre.hdom(bi) != pre.hcod(ai) {
                return Err(malformed(format!(
                    "hcompose row ({b}, {a}) is not horizontally composable"
                )));
            }
            insert_row(&mut hcompose, (bi, ai), bai, "hcompose", || format!("({b}, {a})"))?;
        }
        for t in pre.two_cells() {
            hcompose.entry((t, pre.hunit(pre.hdom(t)))).or_insert(t);
            hcompose.entry((pre.hunit(pre.hcod(t)), t)).or_insert(t);
        }
        for (g, f) in pre.composable1().collect::<Vec<_>>() {
            let gf = pre.compose1[&(g, f)];
            hcompose
                .entry((pre.identity2(g), pre.identity2(f)))
                .or_insert(pre.identity2(gf));
        }
        pre.hcompose = hcompose;
        for (b, a) in pre.hcomposable().collect::<Vec<_>>() {
            if !pre.hcompose.contains_key(&(b, a)) {
                return Err(malformed(format!(
                    "hcompose undefined on ({}, {})",
                    pre.two_id(b),
                    pre.two_id(a)
                )));
            }
        }

        Ok(pre)
    }
}

fn insert_row<K: Ord + Copy, V: PartialEq + Copy>(
    table: &mut BTreeMap<K, V>,
    key: K,
    value: V,
    name: &str,
    describe: impl Fn() -> String,
) -> Result<()> {
    match table.insert(key, value) {
        Some(old) if old != value => Err(malformed(format!(
            "{name} has conflicting rows for {}",
            describe()
        ))),
        _ => Ok(()),
    }
}
