//! Pointwise pullbacks and products.

use std::collections::HashMap;
use std::ops::Deref;

use crate::category::{RelaxedTwoCategory, TwoCategory};
use crate::cells::{identity_name, vertical_identity_name, ObjIx, OneIx, TwoCategoryBuilder, TwoIx, TwoPrecategory};
use crate::error::{Error, Result};
use crate::functor::{Morphism, RelaxedMorphism, TwoFunctor};

/// Apex identifier of the pair `(x, y)`.
pub fn pair_id(x: &str, y: &str) -> String {
    format!("({x}|{y})")
}

/// A fiber product with its projections.
#[derive(Clone, Debug)]
pub struct Pullback<C> {
    pub apex: C,
    pub proj1: Morphism<C>,
    pub proj2: Morphism<C>,
    index: PairIndex,
}

pub type PullbackResult = Pullback<TwoCategory>;
pub type RelaxedPullback = Pullback<RelaxedTwoCategory>;

#[derive(Clone, Debug, Default)]
struct PairIndex {
    objects: HashMap<(ObjIx, ObjIx), ObjIx>,
    one_cells: HashMap<(OneIx, OneIx), OneIx>,
    two_cells: HashMap<(TwoIx, TwoIx), TwoIx>,
}

impl<C: Deref<Target = TwoPrecategory> + Clone> Pullback<C> {
    pub fn object_pair(&self, x: ObjIx, y: ObjIx) -> Option<ObjIx> {
        self.index.objects.get(&(x, y)).copied()
    }

    pub fn one_cell_pair(&self, h: OneIx, k: OneIx) -> Option<OneIx> {
        self.index.one_cells.get(&(h, k)).copied()
    }

    pub fn two_cell_pair(&self, a: TwoIx, b: TwoIx) -> Option<TwoIx> {
        self.index.two_cells.get(&(a, b)).copied()
    }

    /// The map into the apex induced by a commuting cone `(u, v)`.
    pub fn mediating(&self, u: &Morphism<C>, v: &Morphism<C>) -> Result<Morphism<C>> {
        let x = u.source();
        if !same_pre(x, v.source()) || !same_pre(u.target(), self.proj1.target()) || !same_pre(v.target(), self.proj2.target()) {
            return Err(Error::MismatchedBoundary("cone does not match the pullback".into()));
        }
        let miss = || Error::MismatchedTarget("cone does not commute".into());
        let f0 = x
            .objects()
            .map(|o| self.object_pair(u.obj(o), v.obj(o)).ok_or_else(miss))
            .collect::<Result<_>>()?;
        let f1 = x
            .one_cells()
            .map(|h| self.one_cell_pair(u.one(h), v.one(h)).ok_or_else(miss))
            .collect::<Result<_>>()?;
        let f2 = x
            .two_cells()
            .map(|t| self.two_cell_pair(u.two(t), v.two(t)).ok_or_else(miss))
            .collect::<Result<_>>()?;
        Ok(Morphism::from_parts(x.clone(), self.apex.clone(), f0, f1, f2))
    }
}

fn same_pre(a: &TwoPrecategory, b: &TwoPrecategory) -> bool {
    std::ptr::eq(a, b) || a == b
}

struct Fiber {
    data: TwoPrecategory,
    index: PairIndex,
    p1: (Vec<ObjIx>, Vec<OneIx>, Vec<TwoIx>),
    p2: (Vec<ObjIx>, Vec<OneIx>, Vec<TwoIx>),
}

fn fiber_product<C: Deref<Target = TwoPrecategory>>(f: &Morphism<C>, g: &Morphism<C>) -> Result<Fiber> {
    if !same_pre(f.target(), g.target()) {
        return Err(Error::MismatchedTarget("pullback legs have different targets".into()));
    }
    let (a, c) = (&**f.source(), &**g.source());

    let mut objects = Vec::new();
    for x in a.objects() {
        for y in c.objects() {
            if f.obj(x) == g.obj(y) {
                objects.push((x, y));
            }
        }
    }
    let obj_name = |x: ObjIx, y: ObjIx| pair_id(a.object_id(x), c.object_id(y));

    let mut ones = Vec::new();
    for h in a.one_cells() {
        for k in c.one_cells() {
            if f.one(h) == g.one(k) {
                ones.push((h, k));
            }
        }
    }
    let one_name = |h: OneIx, k: OneIx| {
        if a.is_identity1(h) && c.is_identity1(k) {
            identity_name(&obj_name(a.dom(h), c.dom(k)))
        } else {
            pair_id(a.one_id(h), c.one_id(k))
        }
    };

    // 2-cells, grouped by image so the scan is linear in the output
    let mut by_image: HashMap<TwoIx, Vec<TwoIx>> = HashMap::new();
    for k in c.two_cells() {
        by_image.entry(g.two(k)).or_default().push(k);
    }
    let mut twos = Vec::new();
    for s in a.two_cells() {
        for &t in by_image.get(&f.two(s)).map(Vec::as_slice).unwrap_or(&[]) {
            twos.push((s, t));
        }
    }
    let two_name = |s: TwoIx, t: TwoIx| {
        if a.is_identity2(s) && c.is_identity2(t) {
            vertical_identity_name(&one_name(a.vdom(s), c.vdom(t)))
        } else {
            pair_id(a.two_id(s), c.two_id(t))
        }
    };

    let mut b = TwoCategoryBuilder::new();
    for &(x, y) in &objects {
        b.object(obj_name(x, y));
    }
    let one_set: std::collections::HashSet<(OneIx, OneIx)> = ones.iter().copied().collect();
    for &(h, k) in &ones {
        if !(a.is_identity1(h) && c.is_identity1(k)) {
            b.one_cell(one_name(h, k), obj_name(a.dom(h), c.dom(k)), obj_name(a.cod(h), c.cod(k)));
        }
    }
    for &(s, t) in &twos {
        if !(a.is_identity2(s) && c.is_identity2(t)) {
            b.two_cell(two_name(s, t), one_name(a.vdom(s), c.vdom(t)), one_name(a.vcod(s), c.vcod(t)));
        }
    }
    for &(h2, k2) in &ones {
        for &h1 in a.one_cells_to(a.dom(h2)) {
            for &k1 in c.one_cells_to(c.dom(k2)) {
                if !one_set.contains(&(h1, k1)) {
                    continue;
                }
                if let (Some(h), Some(k)) = (a.compose1(h2, h1), c.compose1(k2, k1)) {
                    b.compose1(one_name(h2, k2), one_name(h1, k1), one_name(h, k));
                }
            }
        }
    }
    let two_set: std::collections::HashSet<(TwoIx, TwoIx)> = twos.iter().copied().collect();
    for &(s2, t2) in &twos {
        for &s1 in a.two_cells_to(a.vdom(s2)) {
            for &t1 in c.two_cells_to(c.vdom(t2)) {
                if !two_set.contains(&(s1, t1)) {
                    continue;
                }
                if let (Some(s), Some(t)) = (a.vcompose(s2, s1), c.vcompose(t2, t1)) {
                    b.vcompose(two_name(s2, t2), two_name(s1, t1), two_name(s, t));
                }
            }
        }
    }
    let mut a_hto: HashMap<ObjIx, Vec<TwoIx>> = HashMap::new();
    for s in a.two_cells() {
        a_hto.entry(a.hcod(s)).or_default().push(s);
    }
    let mut c_hto: HashMap<ObjIx, Vec<TwoIx>> = HashMap::new();
    for t in c.two_cells() {
        c_hto.entry(c.hcod(t)).or_default().push(t);
    }
    for &(s2, t2) in &twos {
        for &s1 in a_hto.get(&a.hdom(s2)).map(Vec::as_slice).unwrap_or(&[]) {
            for &t1 in c_hto.get(&c.hdom(t2)).map(Vec::as_slice).unwrap_or(&[]) {
                if !two_set.contains(&(s1, t1)) {
                    continue;
                }
                if let (Some(s), Some(t)) = (a.hcompose(s2, s1), c.hcompose(t2, t1)) {
                    b.hcompose(two_name(s2, t2), two_name(s1, t1), two_name(s, t));
                }
            }
        }
    }

    let data = b.build()?;
    let mut index = PairIndex::default();
    let mut p1 = (vec![ObjIx(0); objects.len()], vec![OneIx(0); ones.len()], vec![TwoIx(0); twos.len()]);
    let mut p2 = p1.clone();
    for &(x, y) in &objects {
        let i = data.object(&obj_name(x, y))?;
        index.objects.insert((x, y), i);
        p1.0[i.0] = x;
        p2.0[i.0] = y;
    }
    for &(h, k) in &ones {
        let i = data.one_cell(&one_name(h, k))?;
        index.one_cells.insert((h, k), i);
        p1.1[i.0] = h;
        p2.1[i.0] = k;
    }
    for &(s, t) in &twos {
        let i = data.two_cell(&two_name(s, t))?;
        index.two_cells.insert((s, t), i);
        p1.2[i.0] = s;
        p2.2[i.0] = t;
    }
    Ok(Fiber { data, index, p1, p2 })
}

/// The pointwise pullback of `f: A → B` and `g: C → B`.
pub fn pullback(f: &TwoFunctor, g: &TwoFunctor) -> Result<PullbackResult> {
    let fib = fiber_product(f, g)?;
    let apex = TwoCategory::trusted(fib.data);
    Ok(Pullback {
        proj1: Morphism::from_parts(apex.clone(), f.source().clone(), fib.p1.0, fib.p1.1, fib.p1.2),
        proj2: Morphism::from_parts(apex.clone(), g.source().clone(), fib.p2.0, fib.p2.1, fib.p2.2),
        apex,
        index: fib.index,
    })
}

/// The pointwise fiber product of structure-preserving maps between
/// relaxed structures; the apex carries its own law report.
pub fn relaxed_pullback(f: &RelaxedMorphism, g: &RelaxedMorphism) -> Result<RelaxedPullback> {
    let fib = fiber_product(f, g)?;
    let apex = RelaxedTwoCategory::new(fib.data);
    Ok(Pullback {
        proj1: Morphism::from_parts(apex.clone(), f.source().clone(), fib.p1.0, fib.p1.1, fib.p1.2),
        proj2: Morphism::from_parts(apex.clone(), g.source().clone(), fib.p2.0, fib.p2.1, fib.p2.2),
        apex,
        index: fib.index,
    })
}

/// Object of the terminal 2-category.
pub const TERMINAL_OBJECT: &str = "*";

/// One object with its identity 1-cell and identity 2-cell.
pub fn terminal() -> TwoCategory {
    let mut b = TwoCategoryBuilder::new();
    b.object(TERMINAL_OBJECT);
    TwoCategory::trusted(b.build().expect("terminal data"))
}

/// The unique functor `a → terminal`.
pub fn to_terminal(a: &TwoCategory, terminal: &TwoCategory) -> TwoFunctor {
    assert_eq!(terminal.sizes(), (1, 1, 1), "not a terminal 2-category");
    Morphism::from_parts(
        a.clone(),
        terminal.clone(),
        vec![ObjIx(0); a.object_count()],
        vec![OneIx(0); a.one_cell_count()],
        vec![TwoIx(0); a.two_cell_count()],
    )
}

/// The product, as the pullback over [`terminal`].
pub fn product(a: &TwoCategory, b: &TwoCategory) -> PullbackResult {
    let one = terminal();
    pullback(&to_terminal(a, &one), &to_terminal(b, &one)).expect("common terminal target")
}

/// Four maps of finite sets `p: W → X`, `q: W → Y`, `f: X → Z`, `g: Y → Z`,
/// each given as a vector of images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSquare {
    pub w: usize,
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub p: Vec<usize>,
    pub q: Vec<usize>,
    pub f: Vec<usize>,
    pub g: Vec<usize>,
}

/// Whether the square commutes and `W → X ×_Z Y` is a bijection.
pub fn is_pullback_square(sq: &FiniteSquare) -> bool {
    let total = |m: &[usize], dom: usize, cod: usize| m.len() == dom && m.iter().all(|&v| v < cod);
    if !(total(&sq.p, sq.w, sq.x) && total(&sq.q, sq.w, sq.y) && total(&sq.f, sq.x, sq.z) && total(&sq.g, sq.y, sq.z)) {
        return false;
    }
    if (0..sq.w).any(|i| sq.f[sq.p[i]] != sq.g[sq.q[i]]) {
        return false;
    }
    let mut seen = std::collections::HashSet::new();
    if !(0..sq.w).all(|i| seen.insert((sq.p[i], sq.q[i]))) {
        return false;
    }
    let fiber = (0..sq.x)
        .map(|a| (0..sq.y).filter(|&b| sq.f[a] == sq.g[b]).count())
        .sum::<usize>();
    fiber == sq.w
}
