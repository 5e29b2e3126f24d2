use std::ops::Deref;
use std::sync::Arc;

use crate::axioms::{validate, AxiomReport};
use crate::cells::{TwoCategoryBuilder, TwoPrecategory};
use crate::error::{Error, Result};

/// A finite 2-category: a [`TwoPrecategory`] whose data satisfies every law.
///
/// Cloning is cheap; the carrier data is shared.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCategory(Arc<TwoPrecategory>);

impl TwoCategory {
    /// Validates `pre`, failing with [`Error::AxiomsViolated`] if any law
    /// fails.
    pub fn new(pre: TwoPrecategory) -> Result<Self> {
        let report = validate(&pre);
        if report.all_pass() {
            Ok(TwoCategory(Arc::new(pre)))
        } else {
            Err(Error::AxiomsViolated(Box::new(report)))
        }
    }

    pub fn from_builder(b: &TwoCategoryBuilder) -> Result<Self> {
        Self::new(b.build()?)
    }

    /// For constructions whose output is a 2-category by theorem (limits,
    /// quotients, coproducts of valid inputs).
    pub(crate) fn trusted(pre: TwoPrecategory) -> Self {
        if cfg!(debug_assertions) && pre.two_cell_count() <= 256 {
            assert!(validate(&pre).all_pass(), "construction produced invalid data");
        }
        TwoCategory(Arc::new(pre))
    }

    pub fn empty() -> Self {
        TwoCategory(Arc::new(TwoPrecategory::empty()))
    }

    pub fn precategory(&self) -> &TwoPrecategory {
        &self.0
    }

    pub fn shared(&self) -> Arc<TwoPrecategory> {
        Arc::clone(&self.0)
    }

    pub fn same(&self, other: &TwoCategory) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Deref for TwoCategory {
    type Target = TwoPrecategory;

    fn deref(&self) -> &TwoPrecategory {
        &self.0
    }
}

impl AsRef<TwoPrecategory> for TwoCategory {
    fn as_ref(&self) -> &TwoPrecategory {
        &self.0
    }
}

/// Well-formed 2-precategory data together with its law report; hosts
/// structures that are not 2-categories.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelaxedTwoCategory {
    data: Arc<TwoPrecategory>,
    report: AxiomReport,
}

impl RelaxedTwoCategory {
    pub fn new(pre: TwoPrecategory) -> Self {
        let report = validate(&pre);
        RelaxedTwoCategory {
            data: Arc::new(pre),
            report,
        }
    }

    pub fn report(&self) -> &AxiomReport {
        &self.report
    }

    pub fn shared(&self) -> Arc<TwoPrecategory> {
        Arc::clone(&self.data)
    }

    /// The underlying 2-category when every law holds.
    pub fn into_two_category(self) -> Result<TwoCategory> {
        if self.report.all_pass() {
            Ok(TwoCategory(self.data))
        } else {
            Err(Error::AxiomsViolated(Box::new(self.report)))
        }
    }
}

impl Deref for RelaxedTwoCategory {
    type Target = TwoPrecategory;

    fn deref(&self) -> &TwoPrecategory {
        &self.data
    }
}

impl From<TwoCategory> for RelaxedTwoCategory {
    fn from(c: TwoCategory) -> Self {
        let report = validate(&c);
        RelaxedTwoCategory { data: c.0, report }
    }
}
