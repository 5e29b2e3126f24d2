//! Morphism classes: effective descent, vertical, stably-vertical, trivial
//! covering and covering.

use std::collections::HashSet;
use std::fmt;

use crate::cells::{OneIx, TwoIx, TwoPrecategory};
use crate::functor::{bijective, TwoFunctor};
use crate::limits::pullback;
use crate::reflection::{is_two_preorder, probes, reflect, reflect_functor};

/// All `(γ1, γ2, γ3)` with `vc γ1 = vd γ2` and `vc γ2 = vd γ3`, identities
/// included, in lexicographic order.
pub fn vertical_triples(b: &TwoPrecategory) -> Vec<[TwoIx; 3]> {
    let mut out = Vec::new();
    for g1 in b.two_cells() {
        for &g2 in b.two_cells_from(b.vcod(g1)) {
            for &g3 in b.two_cells_from(b.vcod(g2)) {
                out.push([g1, g2, g3]);
            }
        }
    }
    out.sort();
    out
}

/// All `(β1, β2, β3)` with `hc β1 = hd β2` and `hc β2 = hd β3`.
pub fn horizontal_triples(b: &TwoPrecategory) -> Vec<[TwoIx; 3]> {
    let mut out = Vec::new();
    for b1 in b.two_cells() {
        for &b2 in b.two_cells_hfrom(b.hcod(b1)) {
            for &b3 in b.two_cells_hfrom(b.hcod(b2)) {
                out.push([b1, b2, b3]);
            }
        }
    }
    out.sort();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Predicate {
    Edm,
    Vertical,
    StablyVertical,
    TrivialCovering,
    Covering,
}

impl Predicate {
    pub const ALL: [Predicate; 5] = [
        Predicate::Edm,
        Predicate::Vertical,
        Predicate::StablyVertical,
        Predicate::TrivialCovering,
        Predicate::Covering,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Predicate::Edm => "edm",
            Predicate::Vertical => "vertical",
            Predicate::StablyVertical => "stably_vertical",
            Predicate::TrivialCovering => "trivial_covering",
            Predicate::Covering => "covering",
        }
    }
}

/// Cells witnessing the failure of a predicate.
pub type Witness = Vec<String>;

fn triple_ids(b: &TwoPrecategory, t: &[TwoIx; 3]) -> Witness {
    t.iter().map(|&c| b.two_id(c).to_string()).collect()
}

pub fn edm_witness(f: &TwoFunctor) -> Option<Witness> {
    let (a, b) = (f.source(), f.target());
    let image = |ts: Vec<[TwoIx; 3]>| -> HashSet<[TwoIx; 3]> {
        ts.into_iter().map(|t| t.map(|c| f.two(c))).collect()
    };
    let (v, h) = (image(vertical_triples(a)), image(horizontal_triples(a)));
    let missing_v = vertical_triples(b).into_iter().find(|t| !v.contains(t));
    let missing_h = horizontal_triples(b).into_iter().find(|t| !h.contains(t));
    missing_v.or(missing_h).map(|t| triple_ids(b, &t))
}

/// Surjective on vertically and on horizontally composable triples.
pub fn is_edm(f: &TwoFunctor) -> bool {
    edm_witness(f).is_none()
}

/// Least source element where an object or 1-cell map fails to be a
/// bijection, or least missed target element.
fn bijection_witness(f: &TwoFunctor) -> Option<Witness> {
    let (a, b) = (f.source(), f.target());
    if !bijective(f.f0(), b.object_count()) {
        let mut seen = vec![None; b.object_count()];
        for x in a.objects() {
            if let Some(y) = seen[f.obj(x).0].replace(x) {
                return Some(vec![a.object_id(y).into(), a.object_id(x).into()]);
            }
        }
        let missed = b.objects().find(|y| seen[y.0].is_none()).expect("non-bijective");
        return Some(vec![b.object_id(missed).into()]);
    }
    if !bijective(f.f1(), b.one_cell_count()) {
        let mut seen = vec![None; b.one_cell_count()];
        for h in a.one_cells() {
            if let Some(k) = seen[f.one(h).0].replace(h) {
                return Some(vec![a.one_id(k).into(), a.one_id(h).into()]);
            }
        }
        let missed = b.one_cells().find(|k| seen[k.0].is_none()).expect("non-bijective");
        return Some(vec![b.one_id(missed).into()]);
    }
    None
}

/// The induced maps on vertical hom-sets, one per parallel pair of source
/// 1-cells, in order.
fn hom_maps(f: &TwoFunctor) -> impl Iterator<Item = (OneIx, OneIx, &[TwoIx], &[TwoIx])> + '_ {
    let (a, b) = (f.source(), f.target());
    a.one_cells().flat_map(move |h| {
        a.one_hom(a.dom(h), a.cod(h))
            .map(move |k| (h, k, a.vertical_hom(h, k), b.vertical_hom(f.one(h), f.one(k))))
    })
}

fn pair_ids(f: &TwoFunctor, h: OneIx, k: OneIx) -> Witness {
    vec![f.source().one_id(h).into(), f.source().one_id(k).into()]
}

fn hits_all(f: &TwoFunctor, src: &[TwoIx], tgt: &[TwoIx]) -> bool {
    let image: HashSet<TwoIx> = src.iter().map(|&t| f.two(t)).collect();
    tgt.iter().all(|t| image.contains(t))
}

fn injective_on(f: &TwoFunctor, src: &[TwoIx]) -> bool {
    let image: HashSet<TwoIx> = src.iter().map(|&t| f.two(t)).collect();
    image.len() == src.len()
}

pub fn vertical_witness(f: &TwoFunctor) -> Option<Witness> {
    bijection_witness(f).or_else(|| {
        hom_maps(f)
            .find(|(_, _, src, tgt)| src.is_empty() && !tgt.is_empty())
            .map(|(h, k, _, _)| pair_ids(f, h, k))
    })
}

/// Bijective on objects and 1-cells, and every nonempty target vertical hom
/// has a nonempty source hom.
pub fn is_vertical(f: &TwoFunctor) -> bool {
    vertical_witness(f).is_none()
}

pub fn stably_vertical_witness(f: &TwoFunctor) -> Option<Witness> {
    bijection_witness(f).or_else(|| {
        hom_maps(f)
            .find(|(_, _, src, tgt)| !hits_all(f, src, tgt))
            .map(|(h, k, _, _)| pair_ids(f, h, k))
    })
}

/// Bijective on objects and 1-cells, and full on vertical homs.
pub fn is_stably_vertical(f: &TwoFunctor) -> bool {
    stably_vertical_witness(f).is_none()
}

pub fn trivial_covering_witness(f: &TwoFunctor) -> Option<Witness> {
    hom_maps(f)
        .find(|(_, _, src, tgt)| !src.is_empty() && !(injective_on(f, src) && hits_all(f, src, tgt)))
        .map(|(h, k, _, _)| pair_ids(f, h, k))
}

/// Bijective on every nonempty source vertical hom.
pub fn is_trivial_covering(f: &TwoFunctor) -> bool {
    trivial_covering_witness(f).is_none()
}

pub fn covering_witness(f: &TwoFunctor) -> Option<Witness> {
    hom_maps(f)
        .find(|(_, _, src, _)| !injective_on(f, src))
        .map(|(h, k, _, _)| pair_ids(f, h, k))
}

/// Injective on every vertical hom.
pub fn is_covering(f: &TwoFunctor) -> bool {
    covering_witness(f).is_none()
}

/// Whether the comparison `A → B ×_{I(B)} I(A)` induced by `f` and the
/// unit of `A` is an isomorphism.
pub fn trivial_covering_oracle(f: &TwoFunctor) -> bool {
    let (ra, rb) = (reflect(f.source()), reflect(f.target()));
    let i_f = reflect_functor(f, &ra, &rb).expect("matching reflections");
    let square = pullback(&rb.unit, &i_f).expect("common target I(B)");
    let comparison = square.mediating(f, &ra.unit).expect("the naturality square commutes");
    comparison.is_bijective()
}

/// Whether every pullback of `f` along a probe `T → B` is a 2-preorder.
pub fn covering_oracle(f: &TwoFunctor) -> bool {
    probes(f.target())
        .iter()
        .all(|phi| is_two_preorder(&pullback(phi, f).expect("common target").apex))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub edm: bool,
    pub vertical: bool,
    pub stably_vertical: bool,
    pub trivial_covering: bool,
    pub covering: bool,
    /// One entry per failed predicate.
    pub witnesses: Vec<(Predicate, Witness)>,
}

impl ClassificationReport {
    pub fn get(&self, p: Predicate) -> bool {
        match p {
            Predicate::Edm => self.edm,
            Predicate::Vertical => self.vertical,
            Predicate::StablyVertical => self.stably_vertical,
            Predicate::TrivialCovering => self.trivial_covering,
            Predicate::Covering => self.covering,
        }
    }

    pub fn witness(&self, p: Predicate) -> Option<&Witness> {
        self.witnesses.iter().find(|(q, _)| *q == p).map(|(_, w)| w)
    }
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in Predicate::ALL {
            write!(f, "{}: {}", p.name(), self.get(p))?;
            if let Some(w) = self.witness(p) {
                write!(f, " ({})", w.join(", "))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub fn classify(f: &TwoFunctor) -> ClassificationReport {
    let found = [
        (Predicate::Edm, edm_witness(f)),
        (Predicate::Vertical, vertical_witness(f)),
        (Predicate::StablyVertical, stably_vertical_witness(f)),
        (Predicate::TrivialCovering, trivial_covering_witness(f)),
        (Predicate::Covering, covering_witness(f)),
    ];
    ClassificationReport {
        edm: found[0].1.is_none(),
        vertical: found[1].1.is_none(),
        stably_vertical: found[2].1.is_none(),
        trivial_covering: found[3].1.is_none(),
        covering: found[4].1.is_none(),
        witnesses: found.into_iter().filter_map(|(p, w)| w.map(|w| (p, w))).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::TwoCategory;
    use crate::gallery::{make_t, make_tn, make_v4, tn_map};

    fn collapse() -> TwoFunctor {
        tn_map(2, 1, &[0, 0]).unwrap()
    }

    fn inclusion0() -> TwoFunctor {
        tn_map(0, 1, &[]).unwrap()
    }

    fn inclusion2() -> TwoFunctor {
        tn_map(1, 2, &[0]).unwrap()
    }

    #[test]
    fn triple_counts_of_t() {
        let t = make_t();
        assert_eq!(vertical_triples(&t).len(), 7);
        assert_eq!(horizontal_triples(&t).len(), 11);
    }

    #[test]
    fn edm() {
        for c in [make_t(), make_v4(), make_tn(3)] {
            assert!(is_edm(&TwoFunctor::identity(&c)));
        }
        assert!(is_edm(&collapse()));
        assert_eq!(edm_witness(&inclusion0()).unwrap(), ["vid:h", "vid:h", "θ"]);
    }

    #[test]
    fn vertical() {
        assert!(is_vertical(&collapse()));
        assert_eq!(vertical_witness(&inclusion0()).unwrap(), ["h", "h′"]);
        assert!(is_vertical(&TwoFunctor::identity(&make_t())));
    }

    #[test]
    fn stably_vertical() {
        assert!(is_stably_vertical(&collapse()));
        assert!(!is_stably_vertical(&inclusion2()));
        assert!(is_vertical(&inclusion2()));
        assert!(is_stably_vertical(&TwoFunctor::identity(&make_t())));
    }

    #[test]
    fn trivial_covering() {
        assert!(is_trivial_covering(&inclusion0()));
        assert!(!is_trivial_covering(&inclusion2()));
        assert!(is_trivial_covering(&TwoFunctor::identity(&make_t())));
        for f in [inclusion0(), inclusion2(), TwoFunctor::identity(&make_t()), collapse()] {
            assert_eq!(trivial_covering_oracle(&f), is_trivial_covering(&f));
        }
        let unit = reflect(&make_tn(3)).unit;
        assert!(!trivial_covering_oracle(&unit));
    }

    #[test]
    fn covering() {
        assert!(is_covering(&inclusion2()));
        assert!(!is_covering(&collapse()));
        assert!(is_covering(&TwoFunctor::identity(&make_t())));
        assert!(!covering_oracle(&collapse()));
        assert!(covering_oracle(&inclusion2()));
        let t = make_t();
        let empty = TwoFunctor::new(TwoCategory::empty(), t, vec![], vec![], vec![]).unwrap();
        assert!(covering_oracle(&empty));
        assert!(is_covering(&empty));
    }

    #[test]
    fn reports() {
        let r = classify(&TwoFunctor::identity(&make_t()));
        assert!(Predicate::ALL.iter().all(|&p| r.get(p)));
        assert!(r.witnesses.is_empty());

        let r = classify(&collapse());
        assert!(r.edm && r.vertical && r.stably_vertical);
        assert!(!r.trivial_covering && !r.covering);

        let r = classify(&inclusion0());
        assert!(!r.edm && !r.vertical && !r.stably_vertical);
        assert!(r.trivial_covering && r.covering);
        assert!(r.to_string().contains("vertical: false (h, h′)"));
    }
}
