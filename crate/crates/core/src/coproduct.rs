//! Disjoint unions of 2-categories.

use crate::category::TwoCategory;
use crate::cells::{rename_keeping_identities, TwoCategoryBuilder};
use crate::functor::{Morphism, TwoFunctor};

/// Identifier of `id` inside summand `k` of a coproduct.
pub fn summand_id(k: usize, id: &str) -> String {
    format!("{k}/{id}")
}

/// The coproduct of `parts` with its injections. Cells of summand `k` are
/// renamed `k/<id>` (identities keep their reserved form, e.g. `id:k/x`).
pub fn coproduct(parts: &[TwoCategory]) -> (TwoCategory, Vec<TwoFunctor>) {
    let mut builder = TwoCategoryBuilder::new();
    for (k, part) in parts.iter().enumerate() {
        let b = part.to_builder_renamed(|level, id| {
            rename_keeping_identities(level, id, &|s| summand_id(k, s))
        });
        builder.extend(&b);
    }
    let sum = TwoCategory::trusted(builder.build().expect("disjoint union of well-formed data"));
    let injections = parts
        .iter()
        .enumerate()
        .map(|(k, part)| {
            let name = |level, id: &str| rename_keeping_identities(level, id, &|s| summand_id(k, s));
            use crate::cells::Level::*;
            let f0 = part
                .objects()
                .map(|x| sum.object(&name(Object, part.object_id(x))).expect("summand object"))
                .collect();
            let f1 = part
                .one_cells()
                .map(|h| sum.one_cell(&name(OneCell, part.one_id(h))).expect("summand 1-cell"))
                .collect();
            let f2 = part
                .two_cells()
                .map(|t| sum.two_cell(&name(TwoCell, part.two_id(t))).expect("summand 2-cell"))
                .collect();
            Morphism::from_parts(part.clone(), sum.clone(), f0, f1, f2)
        })
        .collect();
    (sum, injections)
}
