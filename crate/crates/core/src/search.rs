//! Backtracking search for 2-functors: enumeration, constrained search
//! (mediating maps, diagonal fill-ins) and isomorphism search.
//!
//! Objects are assigned first, then non-identity 1-cells constrained by
//! `(d, c, e)`, then non-identity 2-cells constrained by `(vd, vc, ve)`.
//! Each table row is checked as soon as its last member is assigned.

use rand::seq::SliceRandom;
use rand::RngCore;

use crate::category::TwoCategory;
use crate::cells::{Level, ObjIx, OneIx, TwoIx, TwoPrecategory};
use crate::error::{Error, Result};
use crate::functor::{Morphism, TwoFunctor};

/// Carrier-size limits for exponential searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchCap {
    pub objects: usize,
    pub one_cells: usize,
    pub two_cells: usize,
}

impl Default for SearchCap {
    fn default() -> Self {
        SearchCap {
            objects: 10,
            one_cells: 32,
            two_cells: 64,
        }
    }
}

impl SearchCap {
    pub fn check(&self, c: &TwoPrecategory) -> Result<()> {
        let (o, a, t) = c.sizes();
        if o > self.objects || a > self.one_cells || t > self.two_cells {
            return Err(Error::SearchCapExceeded(format!(
                "carrier sizes ({o}, {a}, {t}) exceed cap ({}, {}, {})",
                self.objects, self.one_cells, self.two_cells
            )));
        }
        Ok(())
    }
}

type Restriction<'a> = Box<dyn Fn(Level, usize, usize) -> bool + 'a>;

/// Configurable search over structure-preserving triples of maps.
pub struct FunctorSearch<'a> {
    source: &'a TwoPrecategory,
    target: &'a TwoPrecategory,
    injective: bool,
    restrict: Option<Restriction<'a>>,
    rng: Option<&'a mut dyn RngCore>,
    node_limit: Option<usize>,
    // stop at the 2-cell phase when its extension is unique
    counting: bool,
}

/// A complete assignment `(f0, f1, f2)`.
pub type Assignment = (Vec<ObjIx>, Vec<OneIx>, Vec<TwoIx>);

const UNSET: usize = usize::MAX;

struct Plan {
    one_order: Vec<OneIx>,
    two_order: Vec<TwoIx>,
    // rows grouped by the position (1-based; 0 = phase start) of the member assigned last
    one_rows: Vec<Vec<(OneIx, OneIx, OneIx)>>,
    v_rows: Vec<Vec<(TwoIx, TwoIx, TwoIx)>>,
    h_rows: Vec<Vec<(TwoIx, TwoIx, TwoIx)>>,
    // a row whose factors precede the cell at this position; its image is forced
    one_forced: Vec<Option<(OneIx, OneIx)>>,
    // boundaries of source 2-cells, grouped like the 1-cell rows
    spans: Vec<Vec<(OneIx, OneIx)>>,
    two_forced: Vec<Option<(bool, TwoIx, TwoIx)>>,
}

/// Non-identity cells ordered so that a composite follows its factors
/// whenever possible; otherwise the irreducible cell (never a composite of
/// two non-identities) sharing most rows and `links` with those already
/// placed comes next.
fn forcing_order(
    n: usize,
    is_identity: impl Fn(usize) -> bool,
    rows: impl Iterator<Item = (usize, usize, usize)>,
    links: &[(usize, usize)],
) -> Vec<usize> {
    let rows: Vec<(usize, usize, usize)> = rows.collect();
    let mut done: Vec<bool> = (0..n).map(&is_identity).collect();
    let mut by_factor = vec![Vec::new(); n];
    let mut missing = vec![0usize; rows.len()];
    let mut ready = Vec::new();
    let mut near = vec![Vec::new(); n];
    let mut reducible = vec![false; n];
    for &(b, a, ba) in &rows {
        if !is_identity(b) && !is_identity(a) {
            reducible[ba] = true;
        }
    }
    for (r, &(b, a, ba)) in rows.iter().enumerate() {
        for x in [b, a] {
            if !done[x] {
                missing[r] += 1;
                by_factor[x].push(r);
            }
        }
        if missing[r] == 0 && !done[ba] {
            ready.push(ba);
        }
        for (x, y) in [(b, a), (b, ba), (a, ba)] {
            if x != y {
                near[x].push(y);
                near[y].push(x);
            }
        }
    }
    for &(x, y) in links {
        if x != y {
            near[x].push(y);
            near[y].push(x);
        }
    }
    let mut score = vec![0usize; n];
    for x in (0..n).filter(|&x| done[x]) {
        for &y in &near[x] {
            score[y] += 1;
        }
    }
    let mut order = Vec::new();
    loop {
        let x = match ready.pop() {
            Some(x) if done[x] => continue,
            Some(x) => x,
            None => match (0..n)
                .filter(|&x| !done[x])
                .max_by_key(|&x| (!reducible[x], score[x], std::cmp::Reverse(x)))
            {
                Some(x) => x,
                None => break,
            },
        };
        done[x] = true;
        order.push(x);
        for &y in &near[x] {
            score[y] += 1;
        }
        for &r in &by_factor[x] {
            missing[r] -= 1;
            if missing[r] == 0 && !done[rows[r].2] {
                ready.push(rows[r].2);
            }
        }
    }
    order
}

impl<'a> FunctorSearch<'a> {
    pub fn new(source: &'a TwoPrecategory, target: &'a TwoPrecategory) -> Self {
        FunctorSearch {
            source,
            target,
            injective: false,
            restrict: None,
            rng: None,
            node_limit: None,
            counting: false,
        }
    }

    /// Only injective assignments (bijective when carrier sizes agree).
    pub fn injective(mut self) -> Self {
        self.injective = true;
        self
    }

    /// Admit only candidates `(level, source index, target index)` accepted
    /// by `f`. Forced identity images are filtered too.
    pub fn restrict(mut self, f: impl Fn(Level, usize, usize) -> bool + 'a) -> Self {
        self.restrict = Some(Box::new(f));
        self
    }

    /// Visit candidates in random order.
    pub fn shuffled(mut self, rng: &'a mut dyn RngCore) -> Self {
        self.rng = Some(rng);
        self
    }

    /// Give up after visiting this many search nodes.
    pub fn node_limit(mut self, n: usize) -> Self {
        self.node_limit = Some(n);
        self
    }

    fn plan(&self) -> Plan {
        let s = self.source;
        let spans: Vec<(usize, usize)> = s.two_cells().map(|t| (s.vdom(t).0, s.vcod(t).0)).collect();
        let one_order = forcing_order(
            s.one_cell_count(),
            |h| s.is_identity1(OneIx(h)),
            s.compose1_rows().map(|(g, f, gf)| (g.0, f.0, gf.0)),
            &spans,
        )
        .into_iter()
        .map(OneIx)
        .collect::<Vec<_>>();
        let two_order = forcing_order(
            s.two_cell_count(),
            |t| s.is_identity2(TwoIx(t)),
            s.vcompose_rows().chain(s.hcompose_rows()).map(|(b, a, ba)| (b.0, a.0, ba.0)),
            &[],
        )
        .into_iter()
        .map(TwoIx)
        .collect::<Vec<_>>();
        let mut pos1 = vec![0usize; s.one_cell_count()];
        for (k, &h) in one_order.iter().enumerate() {
            pos1[h.0] = k + 1;
        }
        let mut pos2 = vec![0usize; s.two_cell_count()];
        for (k, &t) in two_order.iter().enumerate() {
            pos2[t.0] = k + 1;
        }
        let mut one_rows = vec![Vec::new(); one_order.len() + 1];
        let mut one_forced = vec![None; one_order.len()];
        for (g, f, gf) in s.compose1_rows() {
            let p = pos1[g.0].max(pos1[f.0]).max(pos1[gf.0]);
            one_rows[p].push((g, f, gf));
            if pos1[gf.0] > pos1[g.0].max(pos1[f.0]) {
                one_forced[pos1[gf.0] - 1].get_or_insert((g, f));
            }
        }
        let mut spans = vec![Vec::new(); one_order.len() + 1];
        for t in s.two_cells().filter(|&t| !s.is_identity2(t)) {
            let (h, h2) = (s.vdom(t), s.vcod(t));
            let p = pos1[h.0].max(pos1[h2.0]);
            if !spans[p].contains(&(h, h2)) {
                spans[p].push((h, h2));
            }
        }
        let mut v_rows = vec![Vec::new(); two_order.len() + 1];
        let mut two_forced = vec![None; two_order.len()];
        for (b, a, ba) in s.vcompose_rows() {
            let p = pos2[b.0].max(pos2[a.0]).max(pos2[ba.0]);
            v_rows[p].push((b, a, ba));
            if pos2[ba.0] > pos2[b.0].max(pos2[a.0]) {
                two_forced[pos2[ba.0] - 1].get_or_insert((false, b, a));
            }
        }
        let mut h_rows = vec![Vec::new(); two_order.len() + 1];
        for (b, a, ba) in s.hcompose_rows() {
            let p = pos2[b.0].max(pos2[a.0]).max(pos2[ba.0]);
            h_rows[p].push((b, a, ba));
            if pos2[ba.0] > pos2[b.0].max(pos2[a.0]) {
                two_forced[pos2[ba.0] - 1].get_or_insert((true, b, a));
            }
        }
        Plan {
            one_order,
            two_order,
            one_rows,
            v_rows,
            h_rows,
            one_forced,
            spans,
            two_forced,
        }
    }

    /// Calls `visit` on each solution until it returns `false`. Returns
    /// `false` when the node limit cut the search short.
    pub fn for_each(mut self, mut visit: impl FnMut(&Assignment) -> bool) -> bool {
        let plan = self.plan();
        let s = self.source;
        let mut st = State {
            f0: vec![UNSET; s.object_count()],
            f1: vec![UNSET; s.one_cell_count()],
            f2: vec![UNSET; s.two_cell_count()],
            used0: vec![false; self.target.object_count()],
            used1: vec![false; self.target.one_cell_count()],
            used2: vec![false; self.target.two_cell_count()],
            nodes: 0,
            exhausted: false,
            stop: false,
            thin: self.target.two_cells().all(|x| {
                self.target.vertical_hom(self.target.vdom(x), self.target.vcod(x)).len() == 1
            }),
        };
        if self.injective
            && (s.object_count() > self.target.object_count()
                || s.one_cell_count() > self.target.one_cell_count()
                || s.two_cell_count() > self.target.two_cell_count())
        {
            return true;
        }
        self.objects(&plan, &mut st, 0, &mut visit);
        !st.exhausted
    }

    pub fn first(self) -> Option<TwoFunctorMaps> {
        let mut out = None;
        self.for_each(|a| {
            out = Some(a.clone());
            false
        });
        out
    }

    pub fn all(self) -> Vec<TwoFunctorMaps> {
        let mut out = Vec::new();
        self.for_each(|a| {
            out.push(a.clone());
            true
        });
        out
    }

    /// Number of solutions. Into a 2-preorder without injectivity or
    /// restrictions, each 1-cell assignment extends in exactly one way and
    /// the 2-cell phase is skipped.
    /// A source split into several components (objects linked by 1-cells)
    /// is counted one component at a time.
    pub fn count(mut self) -> usize {
        self.counting = !self.injective && self.restrict.is_none();
        if self.counting {
            let parts = components(self.source);
            if parts.len() > 1 {
                return parts
                    .iter()
                    .map(|part| {
                        let mut search = FunctorSearch::new(part, self.target);
                        search.node_limit = self.node_limit;
                        search.count()
                    })
                    .fold(1usize, |n, m| n.saturating_mul(m));
            }
        }
        let mut n = 0;
        self.for_each(|_| {
            n += 1;
            true
        });
        n
    }

    fn allowed(&self, level: Level, s: usize, t: usize) -> bool {
        self.restrict.as_ref().is_none_or(|r| r(level, s, t))
    }

    fn tick(&self, st: &mut State) -> bool {
        st.nodes += 1;
        if let Some(limit) = self.node_limit {
            if st.nodes > limit {
                st.exhausted = true;
                st.stop = true;
                return false;
            }
        }
        true
    }

    fn order<T>(&mut self, v: &mut [T]) {
        if let Some(rng) = self.rng.as_mut() {
            v.shuffle(&mut **rng);
        }
    }

    fn objects(&mut self, plan: &Plan, st: &mut State, k: usize, visit: &mut dyn FnMut(&Assignment) -> bool) {
        if st.stop {
            return;
        }
        let s = self.source;
        if k == s.object_count() {
            self.identities1(plan, st, visit);
            return;
        }
        let mut cands: Vec<usize> = (0..self.target.object_count())
            .filter(|&y| !(self.injective && st.used0[y]) && self.allowed(Level::Object, k, y))
            .collect();
        self.order(&mut cands);
        for y in cands {
            if !self.tick(st) {
                return;
            }
            st.f0[k] = y;
            st.used0[y] = true;
            self.objects(plan, st, k + 1, visit);
            st.used0[y] = false;
            st.f0[k] = UNSET;
            if st.stop {
                return;
            }
        }
    }

    fn identities1(&mut self, plan: &Plan, st: &mut State, visit: &mut dyn FnMut(&Assignment) -> bool) {
        let (s, t) = (self.source, self.target);
        let mut set = Vec::new();
        let mut ok = true;
        for x in s.objects() {
            let h = s.identity1(x);
            let img = t.identity1(ObjIx(st.f0[x.0])).0;
            if (self.injective && st.used1[img]) || !self.allowed(Level::OneCell, h.0, img) {
                ok = false;
                break;
            }
            st.f1[h.0] = img;
            st.used1[img] = true;
            set.push((h.0, img));
        }
        if ok && self.rows1_hold(st, &plan.one_rows[0]) && self.spans_hold(st, &plan.spans[0]) {
            self.arrows(plan, st, 0, visit);
        }
        for (h, img) in set {
            st.f1[h] = UNSET;
            st.used1[img] = false;
        }
    }

    fn rows1_hold(&self, st: &State, rows: &[(OneIx, OneIx, OneIx)]) -> bool {
        rows.iter().all(|&(g, f, gf)| {
            self.target.compose1(OneIx(st.f1[g.0]), OneIx(st.f1[f.0])) == Some(OneIx(st.f1[gf.0]))
        })
    }

    fn spans_hold(&self, st: &State, spans: &[(OneIx, OneIx)]) -> bool {
        spans
            .iter()
            .all(|&(h, h2)| !self.target.vertical_hom(OneIx(st.f1[h.0]), OneIx(st.f1[h2.0])).is_empty())
    }

    fn arrows(&mut self, plan: &Plan, st: &mut State, k: usize, visit: &mut dyn FnMut(&Assignment) -> bool) {
        if st.stop {
            return;
        }
        if k == plan.one_order.len() {
            self.identities2(plan, st, visit);
            return;
        }
        let (s, t) = (self.source, self.target);
        let h = plan.one_order[k];
        let (x, y) = (ObjIx(st.f0[s.dom(h).0]), ObjIx(st.f0[s.cod(h).0]));
        let forced = plan.one_forced[k].map(|(g, f)| t.compose1(OneIx(st.f1[g.0]), OneIx(st.f1[f.0])));
        let pool: Vec<usize> = match forced {
            Some(c) => c.into_iter().map(|c| c.0).collect(),
            None => t.one_hom(x, y).map(|c| c.0).collect(),
        };
        let mut cands: Vec<usize> = pool
            .into_iter()
            .filter(|&c| !(self.injective && st.used1[c]) && self.allowed(Level::OneCell, h.0, c))
            .collect();
        self.order(&mut cands);
        for c in cands {
            if !self.tick(st) {
                return;
            }
            st.f1[h.0] = c;
            st.used1[c] = true;
            if self.rows1_hold(st, &plan.one_rows[k + 1]) && self.spans_hold(st, &plan.spans[k + 1]) {
                self.arrows(plan, st, k + 1, visit);
            }
            st.used1[c] = false;
            st.f1[h.0] = UNSET;
            if st.stop {
                return;
            }
        }
    }

    fn identities2(&mut self, plan: &Plan, st: &mut State, visit: &mut dyn FnMut(&Assignment) -> bool) {
        if self.counting && st.thin {
            if !visit(&(Vec::new(), Vec::new(), Vec::new())) {
                st.stop = true;
            }
            return;
        }
        let (s, t) = (self.source, self.target);
        let mut set = Vec::new();
        let mut ok = true;
        for h in s.one_cells() {
            let c = s.identity2(h);
            let img = t.identity2(OneIx(st.f1[h.0])).0;
            if (self.injective && st.used2[img]) || !self.allowed(Level::TwoCell, c.0, img) {
                ok = false;
                break;
            }
            st.f2[c.0] = img;
            st.used2[img] = true;
            set.push((c.0, img));
        }
        if ok && (st.thin || self.rows2_hold(st, &plan.v_rows[0], &plan.h_rows[0])) {
            self.cells(plan, st, 0, visit);
        }
        for (c, img) in set {
            st.f2[c] = UNSET;
            st.used2[img] = false;
        }
    }

    fn rows2_hold(
        &self,
        st: &State,
        v: &[(TwoIx, TwoIx, TwoIx)],
        h: &[(TwoIx, TwoIx, TwoIx)],
    ) -> bool {
        let t = self.target;
        let m = |x: TwoIx| TwoIx(st.f2[x.0]);
        v.iter()
            .all(|&(b, a, ba)| t.vcompose(m(b), m(a)) == Some(m(ba)))
            && h.iter()
                .all(|&(b, a, ba)| t.hcompose(m(b), m(a)) == Some(m(ba)))
    }

    fn cells(&mut self, plan: &Plan, st: &mut State, k: usize, visit: &mut dyn FnMut(&Assignment) -> bool) {
        if st.stop {
            return;
        }
        if k == plan.two_order.len() {
            let a: Assignment = (
                st.f0.iter().map(|&x| ObjIx(x)).collect(),
                st.f1.iter().map(|&x| OneIx(x)).collect(),
                st.f2.iter().map(|&x| TwoIx(x)).collect(),
            );
            if !visit(&a) {
                st.stop = true;
            }
            return;
        }
        let (s, t) = (self.source, self.target);
        let c = plan.two_order[k];
        let (h, h2) = (OneIx(st.f1[s.vdom(c).0]), OneIx(st.f1[s.vcod(c).0]));
        let forced = plan.two_forced[k].map(|(horizontal, b, a)| {
            let (b, a) = (TwoIx(st.f2[b.0]), TwoIx(st.f2[a.0]));
            if horizontal {
                t.hcompose(b, a)
            } else {
                t.vcompose(b, a)
            }
        });
        let pool: Vec<usize> = match forced {
            Some(x) => x.into_iter().filter(|&x| t.vdom(x) == h && t.vcod(x) == h2).map(|x| x.0).collect(),
            None => t.vertical_hom(h, h2).iter().map(|x| x.0).collect(),
        };
        let mut cands: Vec<usize> = pool
            .into_iter()
            .filter(|&x| !(self.injective && st.used2[x]) && self.allowed(Level::TwoCell, c.0, x))
            .collect();
        self.order(&mut cands);
        for x in cands {
            if !self.tick(st) {
                return;
            }
            st.f2[c.0] = x;
            st.used2[x] = true;
            if st.thin || self.rows2_hold(st, &plan.v_rows[k + 1], &plan.h_rows[k + 1]) {
                self.cells(plan, st, k + 1, visit);
            }
            st.used2[x] = false;
            st.f2[c.0] = UNSET;
            if st.stop {
                return;
            }
        }
    }
}

pub type TwoFunctorMaps = Assignment;

/// The full sub-precategories on the classes of objects joined by
/// 1-cells, each with every table row among its cells.
fn components(c: &TwoPrecategory) -> Vec<TwoPrecategory> {
    fn root(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    let mut parent: Vec<usize> = (0..c.object_count()).collect();
    for h in c.one_cells() {
        let (a, b) = (root(&mut parent, c.dom(h).0), root(&mut parent, c.cod(h).0));
        parent[a] = b;
    }
    let class: Vec<usize> = (0..c.object_count()).map(|x| root(&mut parent, x)).collect();
    let mut roots: Vec<usize> = class.clone();
    roots.sort_unstable();
    roots.dedup();
    if roots.len() < 2 {
        return Vec::new();
    }
    let one_in = |h: OneIx, r: usize| class[c.dom(h).0] == r;
    let two_in = |t: TwoIx, r: usize| class[c.hdom(t).0] == r;
    roots
        .into_iter()
        .map(|r| {
            let mut b = TwoPrecategory::builder();
            for x in c.objects().filter(|x| class[x.0] == r) {
                b.object(c.object_id(x));
            }
            for h in c.one_cells().filter(|&h| one_in(h, r) && !c.is_identity1(h)) {
                b.one_cell(c.one_id(h), c.object_id(c.dom(h)), c.object_id(c.cod(h)));
            }
            for t in c.two_cells().filter(|&t| two_in(t, r) && !c.is_identity2(t)) {
                b.two_cell(c.two_id(t), c.one_id(c.vdom(t)), c.one_id(c.vcod(t)));
            }
            for (g, f, gf) in c.compose1_rows().filter(|&(_, f, _)| one_in(f, r)) {
                b.compose1(c.one_id(g), c.one_id(f), c.one_id(gf));
            }
            for (y, x, yx) in c.vcompose_rows().filter(|&(_, x, _)| two_in(x, r)) {
                b.vcompose(c.two_id(y), c.two_id(x), c.two_id(yx));
            }
            for (y, x, yx) in c.hcompose_rows().filter(|&(_, x, _)| two_in(x, r)) {
                b.hcompose(c.two_id(y), c.two_id(x), c.two_id(yx));
            }
            b.build().expect("a component of a precategory is a precategory")
        })
        .collect()
}

struct State {
    /// Target vertical homs have at most one element, so 2-cell images are
    /// forced and every composition row holds once 1-cells are functorial.
    thin: bool,
    f0: Vec<usize>,
    f1: Vec<usize>,
    f2: Vec<usize>,
    used0: Vec<bool>,
    used1: Vec<bool>,
    used2: Vec<bool>,
    nodes: usize,
    exhausted: bool,
    stop: bool,
}

fn into_functor(a: &TwoCategory, b: &TwoCategory, maps: Assignment) -> TwoFunctor {
    let (f0, f1, f2) = maps;
    Morphism::from_parts(a.clone(), b.clone(), f0, f1, f2)
}

/// Every 2-functor `a → b`, in search order.
pub fn enumerate_functors(a: &TwoCategory, b: &TwoCategory) -> Vec<TwoFunctor> {
    FunctorSearch::new(a, b)
        .all()
        .into_iter()
        .map(|m| into_functor(a, b, m))
        .collect()
}

/// 2-functors `a → b` whose maps satisfy `allow`.
pub fn enumerate_functors_where(
    a: &TwoCategory,
    b: &TwoCategory,
    allow: impl Fn(Level, usize, usize) -> bool,
) -> Vec<TwoFunctor> {
    FunctorSearch::new(a, b)
        .restrict(allow)
        .all()
        .into_iter()
        .map(|m| into_functor(a, b, m))
        .collect()
}

/// A first 2-functor `a → b` found visiting candidates in random order.
pub fn random_functor(a: &TwoCategory, b: &TwoCategory, rng: &mut dyn RngCore) -> Option<TwoFunctor> {
    FunctorSearch::new(a, b)
        .shuffled(rng)
        .first()
        .map(|m| into_functor(a, b, m))
}

fn object_signature(c: &TwoPrecategory, x: ObjIx) -> (usize, usize, usize) {
    let loops = c.one_hom(x, x).count();
    (c.one_cells_from(x).len(), c.one_cells_to(x).len(), loops)
}

fn one_signature(c: &TwoPrecategory, h: OneIx) -> (bool, usize, usize, usize) {
    (
        c.is_identity1(h),
        c.two_cells_from(h).len(),
        c.two_cells_to(h).len(),
        c.vertical_hom(h, h).len(),
    )
}

fn two_signature(c: &TwoPrecategory, t: TwoIx) -> (bool, bool) {
    (c.is_identity2(t), c.vdom(t) == c.vcod(t))
}

fn sorted<T: Ord + Clone>(v: &[T]) -> Vec<T> {
    let mut v = v.to_vec();
    v.sort();
    v
}

/// A structure-preserving triple of bijections `a → b`, if one exists.
pub fn find_isomorphism(a: &TwoCategory, b: &TwoCategory, cap: SearchCap) -> Result<Option<TwoFunctor>> {
    cap.check(a)?;
    cap.check(b)?;
    if a.sizes() != b.sizes() {
        return Ok(None);
    }
    let sig0a: Vec<_> = a.objects().map(|x| object_signature(a, x)).collect();
    let sig0b: Vec<_> = b.objects().map(|x| object_signature(b, x)).collect();
    let sig1a: Vec<_> = a.one_cells().map(|h| one_signature(a, h)).collect();
    let sig1b: Vec<_> = b.one_cells().map(|h| one_signature(b, h)).collect();
    let sig2a: Vec<_> = a.two_cells().map(|t| two_signature(a, t)).collect();
    let sig2b: Vec<_> = b.two_cells().map(|t| two_signature(b, t)).collect();
    if sorted(&sig0a) != sorted(&sig0b) || sorted(&sig1a) != sorted(&sig1b) || sorted(&sig2a) != sorted(&sig2b) {
        return Ok(None);
    }
    let found = FunctorSearch::new(a, b)
        .injective()
        .restrict(|level, s, t| match level {
            Level::Object => sig0a[s] == sig0b[t],
            Level::OneCell => sig1a[s] == sig1b[t],
            Level::TwoCell => sig2a[s] == sig2b[t],
        })
        .first();
    Ok(found.map(|m| into_functor(a, b, m)))
}

pub fn is_isomorphic(a: &TwoCategory, b: &TwoCategory, cap: SearchCap) -> Result<bool> {
    Ok(find_isomorphism(a, b, cap)?.is_some())
}
