//! The reflective and monotone-light factorizations.

use std::collections::BTreeSet;
use std::fmt;

use crate::axioms::validate;
use crate::category::TwoCategory;
use crate::cells::{vertical_identity_name, TwoCategoryBuilder, TwoIx};
use crate::classify::{classify, is_covering, is_stably_vertical, is_trivial_covering, is_vertical, ClassificationReport};
use crate::functor::{Morphism, TwoFunctor};
use crate::limits::pullback;
use crate::reflection::{reflect, reflect_functor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FactorizationSystem {
    Reflective,
    MonotoneLight,
}

impl FactorizationSystem {
    pub fn name(self) -> &'static str {
        match self {
            FactorizationSystem::Reflective => "reflective",
            FactorizationSystem::MonotoneLight => "monotone-light",
        }
    }
}

impl fmt::Display for FactorizationSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `f = m ∘ e` through `middle`.
#[derive(Clone, Debug)]
pub struct MLFactorization {
    pub e: TwoFunctor,
    pub m: TwoFunctor,
    pub middle: TwoCategory,
    pub system: FactorizationSystem,
    pub e_certificate: ClassificationReport,
    pub m_certificate: ClassificationReport,
}

impl MLFactorization {
    fn new(e: TwoFunctor, m: TwoFunctor, system: FactorizationSystem) -> Self {
        MLFactorization {
            middle: e.target().clone(),
            e_certificate: classify(&e),
            m_certificate: classify(&m),
            e,
            m,
            system,
        }
    }
}

/// Middle object `B ×_{I(B)} I(A)`, with `m` the first projection and `e`
/// the pairing of `f` with the unit of `A`.
pub fn reflective_factor(f: &TwoFunctor) -> MLFactorization {
    let (ra, rb) = (reflect(f.source()), reflect(f.target()));
    let i_f = reflect_functor(f, &ra, &rb).expect("matching reflections");
    let square = pullback(&rb.unit, &i_f).expect("common target I(B)");
    let e = square.mediating(f, &ra.unit).expect("the naturality square commutes");
    MLFactorization::new(e, square.proj1, FactorizationSystem::Reflective)
}

/// Identifier of the middle 2-cell over `b` between `h` and `h′`.
pub fn image_cell_id(h: &str, h2: &str, b: &str) -> String {
    format!("({h}⇒{h2}|{b})")
}

/// Middle object with the objects and 1-cells of `A`; its 2-cells `h ⇒ h′`
/// are the image of the vertical hom of `A` under `f`.
pub fn monotone_light_factor(f: &TwoFunctor) -> MLFactorization {
    let (a, b) = (f.source(), f.target());
    let name = |t: TwoIx| -> String {
        let (h, h2) = (a.vdom(t), a.vcod(t));
        if h == h2 && f.two(t) == b.identity2(f.one(h)) {
            vertical_identity_name(a.one_id(h))
        } else {
            image_cell_id(a.one_id(h), a.one_id(h2), b.two_id(f.two(t)))
        }
    };

    let mut builder = TwoCategoryBuilder::new();
    for x in a.objects() {
        builder.object(a.object_id(x));
    }
    for h in a.one_cells().filter(|&h| !a.is_identity1(h)) {
        builder.one_cell(a.one_id(h), a.object_id(a.dom(h)), a.object_id(a.cod(h)));
    }
    let mut seen = BTreeSet::new();
    for t in a.two_cells() {
        let id = name(t);
        if !id.starts_with(crate::cells::VERTICAL_IDENTITY_PREFIX) && seen.insert(id.clone()) {
            builder.two_cell(id, a.one_id(a.vdom(t)), a.one_id(a.vcod(t)));
        }
    }
    for (g, k, gk) in a.compose1_rows() {
        builder.compose1(a.one_id(g), a.one_id(k), a.one_id(gk));
    }
    // composites recomputed from every preimage pair; a conflict would mean
    // the induced composition is not well defined
    for (y, x, yx) in a.vcompose_rows() {
        builder.vcompose(name(y), name(x), name(yx));
    }
    for (y, x, yx) in a.hcompose_rows() {
        builder.hcompose(name(y), name(x), name(yx));
    }
    let middle = TwoCategory::trusted(builder.build().expect("image construction is well defined"));

    let e = Morphism::from_parts(
        a.clone(),
        middle.clone(),
        a.objects().map(|x| middle.object(a.object_id(x)).expect("object")).collect(),
        a.one_cells().map(|h| middle.one_cell(a.one_id(h)).expect("1-cell")).collect(),
        a.two_cells().map(|t| middle.two_cell(&name(t)).expect("image cell")).collect(),
    );
    let mut m2 = vec![TwoIx(0); middle.two_cell_count()];
    for t in a.two_cells() {
        m2[e.two(t).0] = f.two(t);
    }
    let m = Morphism::from_parts(
        middle.clone(),
        b.clone(),
        middle.objects().map(|x| f.obj(a.object(middle.object_id(x)).expect("object"))).collect(),
        middle.one_cells().map(|h| f.one(a.one_cell(middle.one_id(h)).expect("1-cell"))).collect(),
        m2,
    );
    MLFactorization::new(e, m, FactorizationSystem::MonotoneLight)
}

/// Empty iff `m ∘ e = f`, the middle object validates, and `e`, `m` lie in
/// the classes of the factorization system.
pub fn verify_factorization(f: &TwoFunctor, fac: &MLFactorization) -> Vec<String> {
    let mut out = Vec::new();
    if !validate(&fac.middle).all_pass() {
        out.push("middle object is not a 2-category".to_string());
    }
    for (name, g) in [("e", &fac.e), ("m", &fac.m)] {
        if !g.is_valid() {
            out.push(format!("{name} is not a 2-functor"));
        }
    }
    if !fac.e.target().same(&fac.middle) || !fac.m.source().same(&fac.middle) {
        out.push("e and m do not meet at the middle object".to_string());
    }
    match TwoFunctor::compose(&fac.m, &fac.e) {
        Ok(me) => {
            let same = me.source().same(f.source())
                && me.target().same(f.target())
                && me.f0() == f.f0()
                && me.f1() == f.f1()
                && me.f2() == f.f2();
            if !same {
                out.push("m ∘ e differs from f".to_string());
            }
        }
        Err(_) => out.push("e and m are not composable".to_string()),
    }
    let (e_ok, m_ok) = match fac.system {
        FactorizationSystem::Reflective => (
            ("vertical", is_vertical(&fac.e)),
            ("trivial covering", is_trivial_covering(&fac.m)),
        ),
        FactorizationSystem::MonotoneLight => (
            ("stably vertical", is_stably_vertical(&fac.e)),
            ("covering", is_covering(&fac.m)),
        ),
    };
    if !e_ok.1 {
        out.push(format!("e is not {}", e_ok.0));
    }
    if !m_ok.1 {
        out.push(format!("m is not a {}", m_ok.0));
    }
    out
}
