//! Seeded random 2-categories built from gallery blocks by limits,
//! coproducts and reflection.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::category::TwoCategory;
use crate::coproduct::coproduct;
use crate::error::{Error, Result};
use crate::functor::TwoFunctor;
use crate::gallery::{make_h4, make_tn, make_v4};
use crate::limits::{product, pullback, terminal};
use crate::reflection::reflect;
use crate::search::{FunctorSearch, SearchCap};

/// Size limits for [`random_instance`] and the number of construction steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub objects: usize,
    pub one_cells: usize,
    pub two_cells: usize,
    pub steps: usize,
}

impl Budget {
    /// Only the terminal 2-category fits.
    pub fn minimal() -> Self {
        Budget {
            objects: 1,
            one_cells: 1,
            two_cells: 1,
            steps: 0,
        }
    }

    fn admits(&self, c: &TwoCategory) -> bool {
        let (n0, n1, n2) = c.sizes();
        n0 <= self.objects && n1 <= self.one_cells && n2 <= self.two_cells
    }
}

impl Default for Budget {
    fn default() -> Self {
        let cap = SearchCap::default();
        Budget {
            objects: cap.objects,
            one_cells: cap.one_cells,
            two_cells: cap.two_cells,
            steps: 6,
        }
    }
}

fn block(rng: &mut ChaCha8Rng) -> TwoCategory {
    match rng.gen_range(0..7) {
        0..=3 => make_tn(rng.gen_range(0..4)),
        4 => make_v4(),
        5 => make_h4(),
        _ => terminal(),
    }
}

/// Bound on the search for a seeded functor.
const FUNCTOR_SEARCH_NODES: usize = 20_000;

fn seeded_functor(a: &TwoCategory, b: &TwoCategory, rng: &mut ChaCha8Rng) -> Option<TwoFunctor> {
    let mut found = None;
    FunctorSearch::new(a, b)
        .shuffled(rng)
        .node_limit(FUNCTOR_SEARCH_NODES)
        .for_each(|m| {
            found = Some(m.clone());
            false
        });
    found.map(|(f0, f1, f2)| TwoFunctor::new(a.clone(), b.clone(), f0, f1, f2).expect("search output is total"))
}

/// A valid 2-category from `budget.steps` seeded construction steps, each
/// kept only if the result fits the budget. The budget must lie within
/// the default search caps and admit the terminal 2-category.
pub fn random_instance(seed: u64, budget: Budget) -> Result<TwoCategory> {
    let cap = SearchCap::default();
    if budget.objects > cap.objects || budget.one_cells > cap.one_cells || budget.two_cells > cap.two_cells {
        return Err(Error::BudgetExceeded(format!(
            "budget {budget:?} exceeds the search caps {cap:?}"
        )));
    }
    let mut current = terminal();
    if !budget.admits(&current) {
        return Err(Error::BudgetExceeded("budget does not admit the terminal 2-category".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget.steps {
        let next = match rng.gen_range(0..5) {
            0 => Some(block(&mut rng)),
            1 => Some(coproduct(&[current.clone(), block(&mut rng)]).0),
            2 => Some(product(&current, &block(&mut rng)).apex),
            3 => {
                let (other, base) = (block(&mut rng), block(&mut rng));
                let f = seeded_functor(&current, &base, &mut rng);
                let g = seeded_functor(&other, &base, &mut rng);
                f.zip(g).map(|(f, g)| pullback(&f, &g).expect("common target").apex)
            }
            _ => Some(reflect(&current).reflected),
        };
        if let Some(next) = next.filter(|c| budget.admits(c)) {
            current = next;
        }
    }
    Ok(current)
}

/// A seeded 2-functor between two seeded instances.
pub fn random_functor_instance(seed: u64, budget: Budget) -> Result<TwoFunctor> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    loop {
        let a = random_instance(rng.gen(), budget)?;
        let b = random_instance(rng.gen(), budget)?;
        if let Some(f) = seeded_functor(&a, &b, &mut rng) {
            return Ok(f);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::validate;

    #[test]
    fn minimal_budget_gives_terminal() {
        assert_eq!(random_instance(0, Budget::minimal()).unwrap(), terminal());
    }

    #[test]
    fn instances_validate_and_repeat() {
        for seed in 0..10 {
            let c = random_instance(seed, Budget::default()).unwrap();
            assert!(validate(&c).all_pass());
            assert_eq!(c, random_instance(seed, Budget::default()).unwrap());
        }
    }

    #[test]
    fn oversized_budget() {
        let b = Budget {
            objects: 1000,
            ..Budget::default()
        };
        assert!(matches!(random_instance(1, b), Err(Error::BudgetExceeded(_))));
        let empty = Budget {
            objects: 0,
            ..Budget::minimal()
        };
        assert!(matches!(random_instance(1, empty), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn functors_are_valid() {
        for seed in 0..5 {
            let f = random_functor_instance(seed, Budget::default()).unwrap();
            assert!(f.is_valid());
        }
    }
}
