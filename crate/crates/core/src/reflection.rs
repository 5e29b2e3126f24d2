//! The reflection into 2-preorders, its unit, the underlying 2-reflexive
//! graphs, and connected components.

use std::collections::{HashMap, HashSet};

use crate::category::TwoCategory;
use crate::cells::{identity_name, vertical_identity_name, ObjIx, OneIx, TwoCategoryBuilder, TwoIx, TwoPrecategory};
use crate::error::{Error, Result};
use crate::functor::{bijective, surjective, Morphism, TwoFunctor};
use crate::gallery::make_t;
use crate::limits::{pair_id, pullback, PullbackResult};
use crate::search::{is_isomorphic, SearchCap};

/// No two distinct 2-cells share both vertical boundaries.
pub fn is_two_preorder(a: &TwoPrecategory) -> bool {
    a.one_cells()
        .all(|h| a.two_cells_from(h).iter().all(|&t| a.vertical_hom(h, a.vcod(t)).len() == 1))
}

#[derive(Clone, Debug)]
pub struct ReflectionResult {
    pub reflected: TwoCategory,
    pub unit: TwoFunctor,
    /// Original 2-cells collapsed onto each reflected 2-cell, sorted.
    pub fibers: Vec<Vec<TwoIx>>,
}

/// Collapses every vertical hom-set to at most one 2-cell. A class keeps
/// the name of its identity member when it has one, and otherwise the
/// least member identifier.
pub fn reflect(a: &TwoCategory) -> ReflectionResult {
    let mut class_name: Vec<Option<&str>> = vec![None; a.two_cell_count()];
    let mut names = HashMap::new();
    for t in a.two_cells() {
        let key = (a.vdom(t), a.vcod(t));
        let hom = a.vertical_hom(key.0, key.1);
        let rep = hom
            .iter()
            .copied()
            .find(|&s| a.is_identity2(s))
            .unwrap_or_else(|| *hom.iter().min_by_key(|&&s| a.two_id(s)).expect("nonempty hom"));
        class_name[t.0] = Some(a.two_id(rep));
        names.insert(key, a.two_id(rep));
    }
    let class = |t: TwoIx| class_name[t.0].expect("classified");

    let mut b = TwoCategoryBuilder::new();
    for x in a.objects() {
        b.object(a.object_id(x));
    }
    for h in a.one_cells().filter(|&h| !a.is_identity1(h)) {
        b.one_cell(a.one_id(h), a.object_id(a.dom(h)), a.object_id(a.cod(h)));
    }
    for (&(h, k), &name) in &names {
        if h != k {
            b.two_cell(name, a.one_id(h), a.one_id(k));
        }
    }
    for (g, f, gf) in a.compose1_rows() {
        b.compose1(a.one_id(g), a.one_id(f), a.one_id(gf));
    }
    // conflicting rows here would mean the quotient is not well defined
    for (y, x, yx) in a.vcompose_rows() {
        b.vcompose(class(y), class(x), class(yx));
    }
    for (y, x, yx) in a.hcompose_rows() {
        b.hcompose(class(y), class(x), class(yx));
    }
    let reflected = TwoCategory::trusted(b.build().expect("quotient by parallel 2-cells is well defined"));

    let f2: Vec<TwoIx> = a
        .two_cells()
        .map(|t| reflected.two_cell(class(t)).expect("class cell"))
        .collect();
    let mut fibers = vec![Vec::new(); reflected.two_cell_count()];
    for t in a.two_cells() {
        fibers[f2[t.0].0].push(t);
    }
    let unit = Morphism::from_parts(
        a.clone(),
        reflected.clone(),
        a.objects().map(|x| reflected.object(a.object_id(x)).expect("object")).collect(),
        a.one_cells().map(|h| reflected.one_cell(a.one_id(h)).expect("1-cell")).collect(),
        f2,
    );
    ReflectionResult { reflected, unit, fibers }
}

/// `I(f): I(A) → I(B)` from the reflections of source and target.
pub fn reflect_functor(f: &TwoFunctor, ra: &ReflectionResult, rb: &ReflectionResult) -> Result<TwoFunctor> {
    if !ra.unit.source().same(f.source()) || !rb.unit.source().same(f.target()) {
        return Err(Error::MismatchedBoundary("reflections do not match the functor".into()));
    }
    let (ia, ib) = (&ra.reflected, &rb.reflected);
    let f0 = ia.objects().map(|x| rb.unit.obj(f.obj(x))).collect();
    let f1 = ia.one_cells().map(|h| rb.unit.one(f.one(h))).collect();
    let f2 = ra
        .fibers
        .iter()
        .map(|fiber| rb.unit.two(f.two(fiber[0])))
        .collect();
    Ok(Morphism::from_parts(ia.clone(), ib.clone(), f0, f1, f2))
}

impl ReflectionResult {
    /// The connected component `C ×_{I(C)} T` of a probe `μ: T → I(C)`.
    pub fn component(&self, mu: &TwoFunctor) -> Result<PullbackResult> {
        if !mu.target().same(&self.reflected) {
            return Err(Error::MismatchedTarget("probe does not land in the reflection".into()));
        }
        pullback(&self.unit, mu)
    }
}

/// Every functor from the probe `T` into `b`, one per 2-cell of `b`: the
/// 2-cell `θ` goes to it and the rest is forced.
pub fn probes(b: &TwoCategory) -> Vec<TwoFunctor> {
    let t = make_t();
    let [a, a2] = ["a", "a′"].map(|x| t.object(x).expect("T object"));
    let [h, h2] = ["h", "h′"].map(|x| t.one_cell(x).expect("T 1-cell"));
    let theta = t.two_cell("θ").expect("T 2-cell");
    b.two_cells()
        .map(|s| {
            let mut f0 = vec![ObjIx(0); 2];
            f0[a.0] = b.hdom(s);
            f0[a2.0] = b.hcod(s);
            let mut f1 = vec![OneIx(0); t.one_cell_count()];
            f1[h.0] = b.vdom(s);
            f1[h2.0] = b.vcod(s);
            for x in t.objects() {
                f1[t.identity1(x).0] = b.identity1(f0[x.0]);
            }
            let mut f2: Vec<TwoIx> = t.two_cells().map(|u| b.identity2(f1[t.vdom(u).0])).collect();
            f2[theta.0] = s;
            Morphism::from_parts(t.clone(), b.clone(), f0, f1, f2)
        })
        .collect()
}

pub fn connected_component(c: &TwoCategory, mu: &TwoFunctor) -> Result<PullbackResult> {
    reflect(c).component(mu)
}

/// Every connected component of `c` reflects to `T`.
pub fn check_semi_left_exact(c: &TwoCategory, cap: SearchCap) -> Result<bool> {
    let t = make_t();
    let r = reflect(c);
    for mu in probes(&r.reflected) {
        let comp = r.component(&mu)?;
        if !is_isomorphic(&reflect(&comp.apex).reflected, &t, cap)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For all probes `μ` of `c` and `ν` of `d`, the fiber product of the two
/// components over `T` reflects to `T`. Components with the same structure
/// over `T` are checked once.
pub fn check_stable_units(c: &TwoCategory, d: &TwoCategory, cap: SearchCap) -> Result<bool> {
    let t = make_t();
    let components = |x: &TwoCategory| -> Result<Vec<TwoFunctor>> {
        let r = reflect(x);
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for mu in probes(&r.reflected) {
            let over_t = r.component(&mu)?.proj2;
            if seen.insert(structure_over(&over_t)) {
                out.push(over_t);
            }
        }
        Ok(out)
    };
    let (cs, ds) = (components(c)?, components(d)?);
    for u in &cs {
        for v in &ds {
            let apex = pullback(u, v)?.apex;
            if !is_isomorphic(&reflect(&apex).reflected, &t, cap)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The cells of the source listed by image and then position, with every
/// structure map written in those positions. Equal keys mean isomorphic
/// objects over the target.
fn structure_over(f: &TwoFunctor) -> Vec<Vec<usize>> {
    let a = f.source();
    let order = |images: Vec<usize>| -> (Vec<usize>, Vec<usize>) {
        let mut by: Vec<usize> = (0..images.len()).collect();
        by.sort_by_key(|&i| (images[i], i));
        let mut pos = vec![0; images.len()];
        for (p, &i) in by.iter().enumerate() {
            pos[i] = p;
        }
        (by.iter().map(|&i| images[i]).collect(), pos)
    };
    let (i0, p0) = order(f.f0().iter().map(|x| x.0).collect());
    let (i1, p1) = order(f.f1().iter().map(|x| x.0).collect());
    let (i2, p2) = order(f.f2().iter().map(|x| x.0).collect());
    let rows = |it: &mut dyn Iterator<Item = [usize; 3]>| -> Vec<usize> {
        let mut v: Vec<[usize; 3]> = it.collect();
        v.sort();
        v.concat()
    };
    let mut boundary1 = vec![0; 2 * p1.len()];
    for h in a.one_cells() {
        boundary1[2 * p1[h.0]] = p0[a.dom(h).0];
        boundary1[2 * p1[h.0] + 1] = p0[a.cod(h).0];
    }
    let mut boundary2 = vec![0; 2 * p2.len()];
    for t in a.two_cells() {
        boundary2[2 * p2[t.0]] = p1[a.vdom(t).0];
        boundary2[2 * p2[t.0] + 1] = p1[a.vcod(t).0];
    }
    let mut ident1 = vec![0; p0.len()];
    for x in a.objects() {
        ident1[p0[x.0]] = p1[a.identity1(x).0];
    }
    let mut ident2 = vec![0; p1.len()];
    for h in a.one_cells() {
        ident2[p1[h.0]] = p2[a.identity2(h).0];
    }
    vec![
        i0,
        i1,
        i2,
        boundary1,
        boundary2,
        ident1,
        ident2,
        rows(&mut a.compose1_rows().map(|(g, h, gh)| [p1[g.0], p1[h.0], p1[gh.0]])),
        rows(&mut a.vcompose_rows().map(|(y, x, yx)| [p2[y.0], p2[x.0], p2[yx.0]])),
        rows(&mut a.hcompose_rows().map(|(y, x, yx)| [p2[y.0], p2[x.0], p2[yx.0]])),
    ]
}

/// Carriers with boundary and identity maps only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoReflexiveGraph {
    pub objects: Vec<String>,
    pub one_cells: Vec<String>,
    pub two_cells: Vec<String>,
    pub d: Vec<ObjIx>,
    pub c: Vec<ObjIx>,
    pub e: Vec<OneIx>,
    pub vd: Vec<OneIx>,
    pub vc: Vec<OneIx>,
    pub ve: Vec<TwoIx>,
}

impl TwoReflexiveGraph {
    pub fn sizes(&self) -> (usize, usize, usize) {
        (self.objects.len(), self.one_cells.len(), self.two_cells.len())
    }

    pub fn is_identity1(&self, h: OneIx) -> bool {
        self.e[self.d[h.0].0] == h
    }

    pub fn is_identity2(&self, t: TwoIx) -> bool {
        self.ve[self.vd[t.0].0] == t
    }

    /// The reflexive-graph equations and parallelism.
    pub fn is_valid(&self) -> bool {
        let (n0, n1, n2) = self.sizes();
        let lens = self.d.len() == n1
            && self.c.len() == n1
            && self.e.len() == n0
            && self.vd.len() == n2
            && self.vc.len() == n2
            && self.ve.len() == n1;
        lens && (0..n0).all(|x| {
            let h = self.e[x];
            self.d[h.0].0 == x && self.c[h.0].0 == x
        }) && (0..n1).all(|h| {
            let t = self.ve[h];
            self.vd[t.0].0 == h && self.vc[t.0].0 == h
        }) && (0..n2).all(|t| {
            let (s, u) = (self.vd[t], self.vc[t]);
            self.d[s.0] == self.d[u.0] && self.c[s.0] == self.c[u.0]
        })
    }
}

pub fn underlying_two_graph(a: &TwoPrecategory) -> TwoReflexiveGraph {
    TwoReflexiveGraph {
        objects: a.objects().map(|x| a.object_id(x).to_string()).collect(),
        one_cells: a.one_cells().map(|h| a.one_id(h).to_string()).collect(),
        two_cells: a.two_cells().map(|t| a.two_id(t).to_string()).collect(),
        d: a.one_cells().map(|h| a.dom(h)).collect(),
        c: a.one_cells().map(|h| a.cod(h)).collect(),
        e: a.objects().map(|x| a.identity1(x)).collect(),
        vd: a.two_cells().map(|t| a.vdom(t)).collect(),
        vc: a.two_cells().map(|t| a.vcod(t)).collect(),
        ve: a.one_cells().map(|h| a.identity2(h)).collect(),
    }
}

/// A morphism of 2-reflexive graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphMorphism {
    pub source: TwoReflexiveGraph,
    pub target: TwoReflexiveGraph,
    pub g0: Vec<ObjIx>,
    pub g1: Vec<OneIx>,
    pub g2: Vec<TwoIx>,
}

impl GraphMorphism {
    pub fn underlying(f: &TwoFunctor) -> GraphMorphism {
        GraphMorphism {
            source: underlying_two_graph(f.source()),
            target: underlying_two_graph(f.target()),
            g0: f.f0().to_vec(),
            g1: f.f1().to_vec(),
            g2: f.f2().to_vec(),
        }
    }

    pub fn identity(g: &TwoReflexiveGraph) -> GraphMorphism {
        GraphMorphism {
            source: g.clone(),
            target: g.clone(),
            g0: (0..g.objects.len()).map(ObjIx).collect(),
            g1: (0..g.one_cells.len()).map(OneIx).collect(),
            g2: (0..g.two_cells.len()).map(TwoIx).collect(),
        }
    }

    /// Commutes with `d, c, e, vd, vc, ve`.
    pub fn is_valid(&self) -> bool {
        let (s, t) = (&self.source, &self.target);
        self.g0.len() == s.objects.len()
            && self.g1.len() == s.one_cells.len()
            && self.g2.len() == s.two_cells.len()
            && (0..s.one_cells.len()).all(|h| {
                t.d[self.g1[h].0] == self.g0[s.d[h].0] && t.c[self.g1[h].0] == self.g0[s.c[h].0]
            })
            && (0..s.objects.len()).all(|x| self.g1[s.e[x].0] == t.e[self.g0[x].0])
            && (0..s.two_cells.len()).all(|u| {
                t.vd[self.g2[u].0] == self.g1[s.vd[u].0] && t.vc[self.g2[u].0] == self.g1[s.vc[u].0]
            })
            && (0..s.one_cells.len()).all(|h| self.g2[s.ve[h].0] == t.ve[self.g1[h].0])
    }

    /// `g ∘ f`.
    pub fn compose(g: &GraphMorphism, f: &GraphMorphism) -> Result<GraphMorphism> {
        if f.target != g.source {
            return Err(Error::MismatchedBoundary("graph morphisms are not composable".into()));
        }
        Ok(GraphMorphism {
            source: f.source.clone(),
            target: g.target.clone(),
            g0: f.g0.iter().map(|x| g.g0[x.0]).collect(),
            g1: f.g1.iter().map(|x| g.g1[x.0]).collect(),
            g2: f.g2.iter().map(|x| g.g2[x.0]).collect(),
        })
    }
}

/// Bijective on objects and 1-cells, surjective on 2-cells.
pub fn in_class_e(g: &GraphMorphism) -> bool {
    bijective(&g.g0, g.target.objects.len())
        && bijective(&g.g1, g.target.one_cells.len())
        && surjective(&g.g2, g.target.two_cells.len())
}

/// The fiber product of graph morphisms with common target, named as in
/// [`crate::limits::pullback`].
pub fn graph_pullback(f: &GraphMorphism, g: &GraphMorphism) -> Result<(TwoReflexiveGraph, GraphMorphism, GraphMorphism)> {
    if f.target != g.target {
        return Err(Error::MismatchedTarget("graph pullback legs have different targets".into()));
    }
    let (a, c) = (&f.source, &g.source);

    fn sorted_pairs<I: Copy>(named: Vec<(String, I, I)>) -> (Vec<String>, Vec<(I, I)>) {
        let mut named = named;
        named.sort_by(|x, y| x.0.cmp(&y.0));
        named.into_iter().map(|(n, x, y)| (n, (x, y))).unzip()
    }

    let mut objs = Vec::new();
    for x in 0..a.objects.len() {
        for y in 0..c.objects.len() {
            if f.g0[x] == g.g0[y] {
                objs.push((pair_id(&a.objects[x], &c.objects[y]), ObjIx(x), ObjIx(y)));
            }
        }
    }
    let (obj_names, obj_pairs) = sorted_pairs(objs);
    let obj_ix: HashMap<(ObjIx, ObjIx), ObjIx> = obj_pairs.iter().enumerate().map(|(i, &p)| (p, ObjIx(i))).collect();

    let mut ones = Vec::new();
    for h in 0..a.one_cells.len() {
        for k in 0..c.one_cells.len() {
            if f.g1[h] == g.g1[k] {
                let (h, k) = (OneIx(h), OneIx(k));
                let name = if a.is_identity1(h) && c.is_identity1(k) {
                    identity_name(&obj_names[obj_ix[&(a.d[h.0], c.d[k.0])].0])
                } else {
                    pair_id(&a.one_cells[h.0], &c.one_cells[k.0])
                };
                ones.push((name, h, k));
            }
        }
    }
    let (one_names, one_pairs) = sorted_pairs(ones);
    let one_ix: HashMap<(OneIx, OneIx), OneIx> = one_pairs.iter().enumerate().map(|(i, &p)| (p, OneIx(i))).collect();

    let mut twos = Vec::new();
    for s in 0..a.two_cells.len() {
        for t in 0..c.two_cells.len() {
            if f.g2[s] == g.g2[t] {
                let (s, t) = (TwoIx(s), TwoIx(t));
                let name = if a.is_identity2(s) && c.is_identity2(t) {
                    vertical_identity_name(&one_names[one_ix[&(a.vd[s.0], c.vd[t.0])].0])
                } else {
                    pair_id(&a.two_cells[s.0], &c.two_cells[t.0])
                };
                twos.push((name, s, t));
            }
        }
    }
    let (two_names, two_pairs) = sorted_pairs(twos);
    let two_ix: HashMap<(TwoIx, TwoIx), TwoIx> = two_pairs.iter().enumerate().map(|(i, &p)| (p, TwoIx(i))).collect();

    let apex = TwoReflexiveGraph {
        objects: obj_names,
        one_cells: one_names,
        two_cells: two_names,
        d: one_pairs.iter().map(|&(h, k)| obj_ix[&(a.d[h.0], c.d[k.0])]).collect(),
        c: one_pairs.iter().map(|&(h, k)| obj_ix[&(a.c[h.0], c.c[k.0])]).collect(),
        e: obj_pairs.iter().map(|&(x, y)| one_ix[&(a.e[x.0], c.e[y.0])]).collect(),
        vd: two_pairs.iter().map(|&(s, t)| one_ix[&(a.vd[s.0], c.vd[t.0])]).collect(),
        vc: two_pairs.iter().map(|&(s, t)| one_ix[&(a.vc[s.0], c.vc[t.0])]).collect(),
        ve: one_pairs.iter().map(|&(h, k)| two_ix[&(a.ve[h.0], c.ve[k.0])]).collect(),
    };
    let p1 = GraphMorphism {
        source: apex.clone(),
        target: a.clone(),
        g0: obj_pairs.iter().map(|p| p.0).collect(),
        g1: one_pairs.iter().map(|p| p.0).collect(),
        g2: two_pairs.iter().map(|p| p.0).collect(),
    };
    let p2 = GraphMorphism {
        source: apex.clone(),
        target: c.clone(),
        g0: obj_pairs.iter().map(|p| p.1).collect(),
        g1: one_pairs.iter().map(|p| p.1).collect(),
        g2: two_pairs.iter().map(|p| p.1).collect(),
    };
    Ok((apex, p1, p2))
}
