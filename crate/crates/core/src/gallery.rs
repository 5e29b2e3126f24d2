//! Named 2-categories and the effective descent cover.

use crate::category::{RelaxedTwoCategory, TwoCategory};
use crate::cells::{TwoCategoryBuilder, TwoIx, TwoPrecategory};
use crate::classify::{horizontal_triples, vertical_triples};
use crate::coproduct::coproduct;
use crate::error::{Error, Result};
use crate::functor::{Morphism, RelaxedMorphism, TwoFunctor};
use crate::limits::terminal;
use crate::presentation::{free_two_preorder_with_paths, FreeTwoPreorder, TwoGraphPresentation};

/// Identifier of the `i`-th (0-based) parallel 2-cell of `T_n`.
pub fn theta_id(n: usize, i: usize) -> String {
    if n == 1 {
        "θ".to_string()
    } else {
        format!("θ{}", i + 1)
    }
}

/// Objects `a, a′`, 1-cells `h, h′: a → a′` and `n` parallel 2-cells
/// `h ⇒ h′`.
pub fn make_tn(n: usize) -> TwoCategory {
    let mut b = TwoCategoryBuilder::new();
    b.object("a").object("a′");
    b.one_cell("h", "a", "a′").one_cell("h′", "a", "a′");
    for i in 0..n {
        b.two_cell(theta_id(n, i), "h", "h′");
    }
    TwoCategory::trusted(b.build().expect("T_n data"))
}

pub fn make_t() -> TwoCategory {
    make_tn(1)
}

/// The functor `T_m → T_n` fixing objects and 1-cells and sending the
/// `i`-th 2-cell to the `theta[i]`-th.
pub fn tn_map(m: usize, n: usize, theta: &[usize]) -> Result<TwoFunctor> {
    if theta.len() != m || theta.iter().any(|&j| j >= n) {
        return Err(Error::MalformedData(format!("not a map of 2-cells from T_{m} to T_{n}")));
    }
    let same = |xs: &[&str]| xs.iter().map(|x| (x.to_string(), x.to_string())).collect::<Vec<_>>();
    let f2: Vec<(String, String)> = theta
        .iter()
        .enumerate()
        .map(|(i, &j)| (theta_id(m, i), theta_id(n, j)))
        .collect();
    TwoFunctor::from_id_maps(make_tn(m), make_tn(n), &same(&["a", "a′"]), &same(&["h", "h′"]), &f2)
}

pub fn v4_presentation() -> TwoGraphPresentation {
    let mut p = TwoGraphPresentation::new();
    p.object("0").object("1");
    for k in ["k1", "k2", "k3", "k4"] {
        p.generator(k, "0", "1");
    }
    p.relation(["k1"], ["k2"]).relation(["k2"], ["k3"]).relation(["k3"], ["k4"]);
    p
}

/// Generators in the order `t01, b01, t12, b12, t23, b23`.
pub fn h4_presentation() -> TwoGraphPresentation {
    let mut p = TwoGraphPresentation::new();
    for x in ["0", "1", "2", "3"] {
        p.object(x);
    }
    for i in 0..3 {
        let (x, y) = (i.to_string(), (i + 1).to_string());
        p.generator(format!("t{i}{}", i + 1), x.clone(), y.clone());
        p.generator(format!("b{i}{}", i + 1), x, y);
        p.relation([format!("t{i}{}", i + 1)], [format!("b{i}{}", i + 1)]);
    }
    p
}

pub fn vh4_presentation() -> TwoGraphPresentation {
    let mut p = TwoGraphPresentation::new();
    for x in ["0", "1", "2", "3"] {
        p.object(x);
    }
    for i in 0..3 {
        let gen = |k: usize| format!("k{k}_{i}{}", i + 1);
        for k in 1..=4 {
            p.generator(gen(k), i.to_string(), (i + 1).to_string());
        }
        for k in 1..4 {
            p.relation([gen(k)], [gen(k + 1)]);
        }
    }
    p
}

fn free(p: &TwoGraphPresentation) -> FreeTwoPreorder {
    free_two_preorder_with_paths(p).expect("acyclic gallery presentation")
}

pub fn make_v4() -> TwoCategory {
    free(&v4_presentation()).category
}

pub fn make_h4() -> TwoCategory {
    free(&h4_presentation()).category
}

pub fn make_vh4() -> TwoCategory {
    free(&vh4_presentation()).category
}

fn h4_one(i: usize, j: usize, top: bool) -> String {
    match (j - i, top) {
        (0, _) => crate::cells::identity_name(&i.to_string()),
        (1, true) => format!("t{i}{j}"),
        (1, false) => format!("b{i}{j}"),
        (_, true) => format!("T{i}{j}"),
        (_, false) => format!("B{i}{j}"),
    }
}

/// The non-associative variant of `h4` and, with `prime = false`, its
/// associative shadow. Each hom `i → j` with `j ≥ i + 2` keeps only the
/// all-top composite `Tij` and one cell `Bij` for everything else.
fn h4_variant(prime: bool) -> TwoCategoryBuilder {
    let mut b = TwoCategoryBuilder::new();
    for x in 0..4 {
        b.object(x.to_string());
    }
    for i in 0..4 {
        for j in i + 1..4 {
            for top in [true, false] {
                b.one_cell(h4_one(i, j, top), i.to_string(), j.to_string());
            }
            b.two_cell(format!("α{i}{j}"), h4_one(i, j, true), h4_one(i, j, false));
        }
    }
    if prime {
        b.two_cell("α′03", h4_one(0, 3, true), h4_one(0, 3, false));
    }
    for i in 0..4 {
        for j in i + 1..4 {
            for k in j + 1..4 {
                for (f, g) in [(true, true), (true, false), (false, true), (false, false)] {
                    b.compose1(h4_one(j, k, g), h4_one(i, j, f), h4_one(i, k, f && g));
                }
            }
        }
    }
    // 2-cells of a hom i → j: the two identities and the α cells
    #[derive(Clone, Copy)]
    enum Kind {
        Id(bool),
        Alpha,
    }
    let cells = |i: usize, j: usize| {
        let mut v = vec![
            (crate::cells::vertical_identity_name(&h4_one(i, j, true)), Kind::Id(true)),
            (crate::cells::vertical_identity_name(&h4_one(i, j, false)), Kind::Id(false)),
            (format!("α{i}{j}"), Kind::Alpha),
        ];
        if prime && (i, j) == (0, 3) {
            v.push(("α′03".to_string(), Kind::Alpha));
        }
        v
    };
    let bounds = |k: Kind| match k {
        Kind::Id(top) => (top, top),
        Kind::Alpha => (true, false),
    };
    for i in 0..4 {
        for j in i + 1..4 {
            for k in j + 1..4 {
                for (a, ka) in cells(i, j) {
                    for (c, kc) in cells(j, k) {
                        let ((da, ca), (dc, cc)) = (bounds(ka), bounds(kc));
                        let (d, e) = (da && dc, ca && cc);
                        let out = if d == e {
                            crate::cells::vertical_identity_name(&h4_one(i, k, d))
                        } else if prime && (i, j, k) == (0, 1, 3) {
                            "α′03".to_string()
                        } else {
                            format!("α{i}{k}")
                        };
                        b.hcompose(c, a.clone(), out);
                    }
                }
            }
        }
    }
    b
}

/// The horizontally non-associative structure: the six `αij` plus `α′03`,
/// with `α13 ∘ α01 = α′03` but `α23 ∘ α02 = α03`.
pub fn make_h4_na() -> RelaxedTwoCategory {
    RelaxedTwoCategory::new(h4_variant(true).build().expect("h4na data"))
}

/// `make_h4_na` with `α′03` identified with `α03`; a 2-preorder.
pub fn make_h4_c() -> TwoCategory {
    TwoCategory::from_builder(&h4_variant(false)).expect("associative shadow")
}

/// The identification `h4na → h4c`.
pub fn h4_na_projection() -> RelaxedMorphism {
    let (na, c) = (make_h4_na(), RelaxedTwoCategory::from(make_h4_c()));
    let f0 = na.objects().map(|x| c.object(na.object_id(x)).expect("object")).collect();
    let f1 = na.one_cells().map(|h| c.one_cell(na.one_id(h)).expect("1-cell")).collect();
    let f2 = na
        .two_cells()
        .map(|t| {
            let id = na.two_id(t);
            c.two_cell(if id == "α′03" { "α03" } else { id }).expect("2-cell")
        })
        .collect();
    Morphism::new(na, c, f0, f1, f2).expect("total maps")
}

/// Horizontal triples `(β1, β2, β3)` with `(β3 ∘ β2) ∘ β1 ≠ β3 ∘ (β2 ∘ β1)`.
pub fn non_associative_triples(c: &TwoPrecategory) -> Vec<[TwoIx; 3]> {
    horizontal_triples(c)
        .into_iter()
        .filter(|&[b1, b2, b3]| {
            let lhs = c.hcompose(b2, b1).and_then(|b21| c.hcompose(b3, b21));
            let rhs = c.hcompose(b3, b2).and_then(|b32| c.hcompose(b32, b1));
            lhs != rhs
        })
        .collect()
}

/// The cover of `h4c` without the horizontal triples that lift to
/// non-associative triples of `h4na`; pulling `h4na` back along it gives a
/// 2-category.
pub fn h4_na_descent_cover() -> EdmCover {
    let (na, phi, c) = (make_h4_na(), h4_na_projection(), make_h4_c());
    let missing: Vec<[TwoIx; 3]> = non_associative_triples(&na)
        .into_iter()
        .map(|t| t.map(|x| phi.two(x)))
        .collect();
    let horizontal = horizontal_triples(&c)
        .into_iter()
        .filter(|t| !missing.contains(t))
        .collect();
    partial_edm_cover(&c, vertical_triples(&c), horizontal)
}

/// One `v4` per vertically composable triple and one `h4` per horizontally
/// composable triple, projected onto its triple.
#[derive(Clone, Debug)]
pub struct EdmCover {
    pub cover: TwoCategory,
    pub p: TwoFunctor,
    pub vertical: Vec<[TwoIx; 3]>,
    pub horizontal: Vec<[TwoIx; 3]>,
}

pub fn edm_cover(b: &TwoCategory) -> EdmCover {
    partial_edm_cover(b, vertical_triples(b), horizontal_triples(b))
}

/// The cover restricted to the given triples.
pub fn partial_edm_cover(b: &TwoCategory, vertical: Vec<[TwoIx; 3]>, horizontal: Vec<[TwoIx; 3]>) -> EdmCover {
    let v4 = free(&v4_presentation());
    let h4 = free(&h4_presentation());
    let parts: Vec<TwoCategory> = vertical
        .iter()
        .map(|_| v4.category.clone())
        .chain(horizontal.iter().map(|_| h4.category.clone()))
        .collect();
    let (cover, injections) = coproduct(&parts);
    let mut f0 = vec![Default::default(); cover.object_count()];
    let mut f1 = vec![Default::default(); cover.one_cell_count()];
    let mut f2 = vec![Default::default(); cover.two_cell_count()];
    let copies = vertical
        .iter()
        .map(|g| (&v4, v4_image(b, &v4, g)))
        .chain(horizontal.iter().map(|g| (&h4, h4_image(b, &h4, g))));
    for ((free, (g0, g1, g2)), inj) in copies.zip(&injections) {
        let c = &free.category;
        for x in c.objects() {
            f0[inj.obj(x).0] = g0[x.0];
        }
        for h in c.one_cells() {
            f1[inj.one(h).0] = g1[h.0];
        }
        for t in c.two_cells() {
            f2[inj.two(t).0] = g2[t.0];
        }
    }
    let p = Morphism::from_parts(cover.clone(), b.clone(), f0, f1, f2);
    debug_assert!(p.is_valid(), "cover projection is a 2-functor");
    EdmCover {
        cover,
        p,
        vertical,
        horizontal,
    }
}

type Images = (Vec<crate::ObjIx>, Vec<crate::OneIx>, Vec<TwoIx>);

fn v4_image(b: &TwoCategory, v4: &FreeTwoPreorder, g: &[TwoIx; 3]) -> Images {
    let c = &v4.category;
    let gens = [b.vdom(g[0]), b.vdom(g[1]), b.vdom(g[2]), b.vcod(g[2])];
    let (x, y) = (b.hdom(g[0]), b.hcod(g[0]));
    let g0 = c
        .objects()
        .map(|o| if c.object_id(o) == "0" { x } else { y })
        .collect();
    let one = |path: &[usize], o| if path.is_empty() { b.identity1(o) } else { gens[path[0]] };
    let g1 = c
        .one_cells()
        .map(|h| one(&v4.one_cell_paths[h.0], if c.object_id(c.dom(h)) == "0" { x } else { y }))
        .collect();
    let g2 = c
        .two_cells()
        .map(|t| {
            let (lo, hi) = &v4.two_cell_paths[t.0];
            if lo.is_empty() {
                return b.identity2(b.identity1(if c.object_id(c.hdom(t)) == "0" { x } else { y }));
            }
            let (i, j) = (lo[0], hi[0]);
            g[i..j]
                .iter()
                .fold(b.identity2(gens[i]), |acc, &s| b.vcompose(s, acc).expect("vertically composable"))
        })
        .collect();
    (g0, g1, g2)
}

fn h4_image(b: &TwoCategory, h4: &FreeTwoPreorder, g: &[TwoIx; 3]) -> Images {
    let c = &h4.category;
    let objs = [b.hdom(g[0]), b.hdom(g[1]), b.hdom(g[2]), b.hcod(g[2])];
    let obj = |o| objs[c.object_id(o).parse::<usize>().expect("numeric object")];
    let gen = |k: usize| if k.is_multiple_of(2) { b.vdom(g[k / 2]) } else { b.vcod(g[k / 2]) };
    let g0 = c.objects().map(obj).collect();
    let g1 = c
        .one_cells()
        .map(|h| {
            let path = &h4.one_cell_paths[h.0];
            path.iter()
                .fold(b.identity1(obj(c.dom(h))), |acc, &k| b.compose1(gen(k), acc).expect("composable path"))
        })
        .collect();
    let g2 = c
        .two_cells()
        .map(|t| {
            let (lo, hi) = &h4.two_cell_paths[t.0];
            lo.iter().zip(hi).fold(b.hunit(obj(c.hdom(t))), |acc, (&l, &u)| {
                let step = if l == u { b.identity2(gen(l)) } else { g[l / 2] };
                b.hcompose(step, acc).expect("horizontally composable")
            })
        })
        .collect();
    (g0, g1, g2)
}

/// A gallery entry; `h4na` is the only relaxed one.
#[derive(Clone, Debug)]
pub enum GalleryItem {
    Category(TwoCategory),
    Relaxed(RelaxedTwoCategory),
}

pub const GALLERY_NAMES: &[&str] = &["T", "T0", "T2", "T3", "T4", "v4", "h4", "vh4", "h4na", "h4c", "terminal"];

/// Looks up `T`, `T<n>`, `v4`, `h4`, `vh4`, `h4na`, `h4c` or `terminal`.
pub fn by_name(name: &str) -> Option<GalleryItem> {
    use GalleryItem::*;
    Some(match name {
        "T" => Category(make_t()),
        "v4" => Category(make_v4()),
        "h4" => Category(make_h4()),
        "vh4" => Category(make_vh4()),
        "h4na" => Relaxed(make_h4_na()),
        "h4c" => Category(make_h4_c()),
        "terminal" => Category(terminal()),
        _ => {
            let n: usize = name.strip_prefix('T')?.parse().ok()?;
            Category(make_tn(n))
        }
    })
}
