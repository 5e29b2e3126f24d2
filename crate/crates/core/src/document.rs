//! JSON interchange documents for 2-categories and 2-functors.
//!
//! Identity cells and table rows forced by the unit laws or identity
//! exchange may be omitted on input and are omitted on output.

use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::cells::{TwoCategoryBuilder, TwoPrecategory};
use crate::error::{malformed, Result};
use crate::functor::Morphism;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OneCellDoc {
    pub id: String,
    pub dom: String,
    pub cod: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoCellDoc {
    pub id: String,
    pub vdom: String,
    pub vcod: String,
}

/// Rows are `[second, first, composite]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryDocument {
    pub objects: Vec<String>,
    #[serde(default)]
    pub one_cells: Vec<OneCellDoc>,
    #[serde(default)]
    pub compose1: Vec<[String; 3]>,
    #[serde(default)]
    pub two_cells: Vec<TwoCellDoc>,
    #[serde(default)]
    pub vcompose: Vec<[String; 3]>,
    #[serde(default)]
    pub hcompose: Vec<[String; 3]>,
}

/// Either an inline category or a name to be resolved by the caller.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CategoryRef {
    Named(String),
    Inline(CategoryDocument),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorDocument {
    pub source: CategoryRef,
    pub target: CategoryRef,
    pub f0: Vec<[String; 2]>,
    #[serde(default)]
    pub f1: Vec<[String; 2]>,
    #[serde(default)]
    pub f2: Vec<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Document {
    Functor(FunctorDocument),
    Category(CategoryDocument),
}

impl CategoryDocument {
    pub fn from_precategory(c: &TwoPrecategory) -> Self {
        let ids3 = |a: &str, b: &str, c: &str| [a.to_string(), b.to_string(), c.to_string()];
        CategoryDocument {
            objects: c.objects().map(|x| c.object_id(x).to_string()).collect(),
            one_cells: c
                .one_cells()
                .filter(|&h| !c.is_identity1(h))
                .map(|h| OneCellDoc {
                    id: c.one_id(h).into(),
                    dom: c.object_id(c.dom(h)).into(),
                    cod: c.object_id(c.cod(h)).into(),
                })
                .collect(),
            compose1: c
                .compose1_rows()
                .filter(|&(g, f, gf)| !c.is_synthesized_compose1(g, f, gf))
                .map(|(g, f, gf)| ids3(c.one_id(g), c.one_id(f), c.one_id(gf)))
                .collect(),
            two_cells: c
                .two_cells()
                .filter(|&t| !c.is_identity2(t))
                .map(|t| TwoCellDoc {
                    id: c.two_id(t).into(),
                    vdom: c.one_id(c.vdom(t)).into(),
                    vcod: c.one_id(c.vcod(t)).into(),
                })
                .collect(),
            vcompose: c
                .vcompose_rows()
                .filter(|&(b, a, ba)| !c.is_synthesized_vcompose(b, a, ba))
                .map(|(b, a, ba)| ids3(c.two_id(b), c.two_id(a), c.two_id(ba)))
                .collect(),
            hcompose: c
                .hcompose_rows()
                .filter(|&(b, a, ba)| !c.is_synthesized_hcompose(b, a, ba))
                .map(|(b, a, ba)| ids3(c.two_id(b), c.two_id(a), c.two_id(ba)))
                .collect(),
        }
    }

    pub fn to_builder(&self) -> TwoCategoryBuilder {
        let mut b = TwoCategoryBuilder::new();
        for x in &self.objects {
            b.object(x.clone());
        }
        for h in &self.one_cells {
            b.one_cell(h.id.clone(), h.dom.clone(), h.cod.clone());
        }
        for t in &self.two_cells {
            b.two_cell(t.id.clone(), t.vdom.clone(), t.vcod.clone());
        }
        for [g, f, gf] in &self.compose1 {
            b.compose1(g.clone(), f.clone(), gf.clone());
        }
        for [y, x, yx] in &self.vcompose {
            b.vcompose(y.clone(), x.clone(), yx.clone());
        }
        for [y, x, yx] in &self.hcompose {
            b.hcompose(y.clone(), x.clone(), yx.clone());
        }
        b
    }

    pub fn build(&self) -> Result<TwoPrecategory> {
        self.to_builder().build()
    }
}

impl FunctorDocument {
    /// Source and target inline; identity cells sent to identities are
    /// left implicit.
    pub fn from_morphism<C: Deref<Target = TwoPrecategory>>(f: &Morphism<C>) -> Self {
        let (a, b) = (&**f.source(), &**f.target());
        let pair = |x: &str, y: &str| [x.to_string(), y.to_string()];
        FunctorDocument {
            source: CategoryRef::Inline(CategoryDocument::from_precategory(a)),
            target: CategoryRef::Inline(CategoryDocument::from_precategory(b)),
            f0: a.objects().map(|x| pair(a.object_id(x), b.object_id(f.obj(x)))).collect(),
            f1: a
                .one_cells()
                .filter(|&h| !(a.is_identity1(h) && f.one(h) == b.identity1(f.obj(a.dom(h)))))
                .map(|h| pair(a.one_id(h), b.one_id(f.one(h))))
                .collect(),
            f2: a
                .two_cells()
                .filter(|&t| !(a.is_identity2(t) && f.two(t) == b.identity2(f.one(a.vdom(t)))))
                .map(|t| pair(a.two_id(t), b.two_id(f.two(t))))
                .collect(),
        }
    }

    pub fn maps(&self) -> [Vec<(String, String)>; 3] {
        let pairs = |v: &[[String; 2]]| v.iter().map(|[x, y]| (x.clone(), y.clone())).collect();
        [pairs(&self.f0), pairs(&self.f1), pairs(&self.f2)]
    }
}

pub fn parse_document(text: &str) -> Result<Document> {
    serde_json::from_str(text).map_err(|e| malformed(format!("invalid document: {e}")))
}

pub fn parse_category(text: &str) -> Result<TwoPrecategory> {
    let doc: CategoryDocument =
        serde_json::from_str(text).map_err(|e| malformed(format!("invalid category document: {e}")))?;
    doc.build()
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

pub fn print_category(c: &TwoPrecategory) -> String {
    pretty(&CategoryDocument::from_precategory(c))
}

pub fn print_functor<C: Deref<Target = TwoPrecategory>>(f: &Morphism<C>) -> String {
    pretty(&FunctorDocument::from_morphism(f))
}

pub fn print_value<T: Serialize>(value: &T) -> String {
    pretty(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::TwoCategory;
    use crate::error::Error;
    use crate::gallery::{make_h4_na, make_t, tn_map};
    use crate::functor::TwoFunctor;

    #[test]
    fn category_round_trip() {
        let t = make_t();
        let text = print_category(&t);
        let back = parse_category(&text).unwrap();
        assert_eq!(back, *t.precategory());
        assert_eq!(print_category(&back), text);
        assert!(!text.contains("vid:"));
    }

    #[test]
    fn relaxed_round_trip() {
        let na = make_h4_na();
        let text = print_category(&na);
        assert_eq!(print_category(&parse_category(&text).unwrap()), text);
    }

    #[test]
    fn functor_round_trip() {
        let f = tn_map(2, 1, &[0, 0]).unwrap();
        let text = print_functor(&f);
        let Document::Functor(doc) = parse_document(&text).unwrap() else {
            panic!("expected a functor document")
        };
        let (CategoryRef::Inline(s), CategoryRef::Inline(t)) = (&doc.source, &doc.target) else {
            panic!("expected inline categories")
        };
        let (s, t) = (TwoCategory::new(s.build().unwrap()).unwrap(), TwoCategory::new(t.build().unwrap()).unwrap());
        let [f0, f1, f2] = doc.maps();
        let g = TwoFunctor::from_id_maps(s, t, &f0, &f1, &f2).unwrap();
        assert_eq!(g.f2(), f.f2());
        assert_eq!(print_functor(&g), text);
    }

    #[test]
    fn minimal_input() {
        let c = parse_category(r#"{"objects": ["x"]}"#).unwrap();
        assert_eq!(c.sizes(), (1, 1, 1));
        assert!(matches!(parse_document("{"), Err(Error::MalformedData(_))));
        assert!(matches!(
            parse_category(r#"{"objects": ["x"], "extra": 1}"#),
            Err(Error::MalformedData(_))
        ));
    }

    #[test]
    fn named_references() {
        let doc = parse_document(r#"{"source": "T", "target": "T", "f0": [["a", "a"]]}"#).unwrap();
        match doc {
            Document::Functor(f) => assert_eq!(f.source, CategoryRef::Named("T".into())),
            Document::Category(_) => panic!("parsed as a category"),
        }
    }
}
