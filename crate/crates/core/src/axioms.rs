//! Exhaustive checks of the 2-category laws over finite data.

use std::fmt;

use serde::Serialize;

use crate::cells::{OneIx, TwoIx, TwoPrecategory};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Law {
    #[serde(rename = "1-assoc")]
    OneAssoc,
    #[serde(rename = "1-unit")]
    OneUnit,
    #[serde(rename = "v-assoc")]
    VAssoc,
    #[serde(rename = "v-unit")]
    VUnit,
    #[serde(rename = "h-assoc")]
    HAssoc,
    #[serde(rename = "h-unit")]
    HUnit,
    #[serde(rename = "boundary")]
    Boundary,
    #[serde(rename = "identity-exchange")]
    IdentityExchange,
    #[serde(rename = "interchange")]
    Interchange,
    #[serde(rename = "parallelism")]
    Parallelism,
}

impl Law {
    pub const ALL: [Law; 10] = [
        Law::OneAssoc,
        Law::OneUnit,
        Law::VAssoc,
        Law::VUnit,
        Law::HAssoc,
        Law::HUnit,
        Law::Boundary,
        Law::IdentityExchange,
        Law::Interchange,
        Law::Parallelism,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Law::OneAssoc => "1-assoc",
            Law::OneUnit => "1-unit",
            Law::VAssoc => "v-assoc",
            Law::VUnit => "v-unit",
            Law::HAssoc => "h-assoc",
            Law::HUnit => "h-unit",
            Law::Boundary => "boundary",
            Law::IdentityExchange => "identity-exchange",
            Law::Interchange => "interchange",
            Law::Parallelism => "parallelism",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Concrete cells witnessing a failed law. For associativity and interchange
/// `lhs`/`rhs` hold the two evaluations when both exist.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub cells: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.cells.join(", "))?;
        match (&self.lhs, &self.rhs) {
            (Some(l), Some(r)) => write!(f, ": {l} ≠ {r}"),
            (Some(l), None) => write!(f, ": {l}"),
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawVerdict {
    pub law: Law,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

/// One verdict per [`Law`], in [`Law::ALL`] order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub verdicts: Vec<LawVerdict>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn verdict(&self, law: Law) -> &LawVerdict {
        self.verdicts
            .iter()
            .find(|v| v.law == law)
            .expect("every law has a verdict")
    }

    pub fn passes(&self, law: Law) -> bool {
        self.verdict(law).pass
    }

    pub fn failed_laws(&self) -> Vec<Law> {
        self.verdicts.iter().filter(|v| !v.pass).map(|v| v.law).collect()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.verdicts {
            match &v.counterexample {
                None => writeln!(f, "{}: pass", v.law)?,
                Some(c) => writeln!(f, "{}: FAIL {c}", v.law)?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy)]
enum Cell {
    One(OneIx),
    Two(TwoIx),
}

/// Keeps the preferred counterexample: fewest identity cells, then least
/// identifiers.
struct Worst<'a> {
    pre: &'a TwoPrecategory,
    best: Option<(usize, Counterexample)>,
}

impl<'a> Worst<'a> {
    fn new(pre: &'a TwoPrecategory) -> Self {
        Worst { pre, best: None }
    }

    fn name(&self, c: Cell) -> String {
        match c {
            Cell::One(h) => self.pre.one_id(h).to_string(),
            Cell::Two(t) => self.pre.two_id(t).to_string(),
        }
    }

    fn offer(&mut self, cells: &[Cell], lhs: Option<Cell>, rhs: Option<Cell>) {
        let identities = cells
            .iter()
            .filter(|&&c| match c {
                Cell::One(h) => self.pre.is_identity1(h),
                Cell::Two(t) => self.pre.is_identity2(t),
            })
            .count();
        let candidate = Counterexample {
            cells: cells.iter().map(|&c| self.name(c)).collect(),
            lhs: lhs.map(|c| self.name(c)),
            rhs: rhs.map(|c| self.name(c)),
        };
        let better = match &self.best {
            None => true,
            Some((n, cur)) => (identities, &candidate.cells) < (*n, &cur.cells),
        };
        if better {
            self.best = Some((identities, candidate));
        }
    }

    fn verdict(self, law: Law) -> LawVerdict {
        let counterexample = self.best.map(|(_, c)| c);
        LawVerdict {
            law,
            pass: counterexample.is_none(),
            counterexample,
        }
    }
}

/// Checks every law over all composable data.
pub fn validate(pre: &TwoPrecategory) -> AxiomReport {
    let verdicts = Law::ALL
        .iter()
        .map(|&law| {
            let mut w = Worst::new(pre);
            match law {
                Law::OneAssoc => one_assoc(pre, &mut w),
                Law::OneUnit => one_unit(pre, &mut w),
                Law::VAssoc => v_assoc(pre, &mut w),
                Law::VUnit => v_unit(pre, &mut w),
                Law::HAssoc => h_assoc(pre, &mut w),
                Law::HUnit => h_unit(pre, &mut w),
                Law::Boundary => boundary(pre, &mut w),
                Law::IdentityExchange => identity_exchange(pre, &mut w),
                Law::Interchange => interchange(pre, &mut w),
                Law::Parallelism => parallelism(pre, &mut w),
            }
            w.verdict(law)
        })
        .collect();
    AxiomReport { verdicts }
}

fn parallelism(pre: &TwoPrecategory, w: &mut Worst) {
    for t in pre.two_cells() {
        let (s, u) = (pre.vdom(t), pre.vcod(t));
        if pre.dom(s) != pre.dom(u) || pre.cod(s) != pre.cod(u) {
            w.offer(&[Cell::Two(t)], None, None);
        }
    }
}

fn one_unit(pre: &TwoPrecategory, w: &mut Worst) {
    for x in pre.objects() {
        let e = pre.identity1(x);
        if pre.dom(e) != x || pre.cod(e) != x {
            w.offer(&[Cell::One(e)], None, None);
        }
    }
    for f in pre.one_cells() {
        let right = pre.identity1(pre.dom(f));
        let r = pre.compose1(f, right);
        if r != Some(f) {
            w.offer(&[Cell::One(f), Cell::One(right)], r.map(Cell::One), None);
        }
        let left = pre.identity1(pre.cod(f));
        let l = pre.compose1(left, f);
        if l != Some(f) {
            w.offer(&[Cell::One(left), Cell::One(f)], l.map(Cell::One), None);
        }
    }
}

fn one_assoc(pre: &TwoPrecategory, w: &mut Worst) {
    for (g, f) in pre.composable1() {
        let Some(gf) = pre.compose1(g, f) else { continue };
        for &h in pre.one_cells_from(pre.cod(g)) {
            let lhs = pre.compose1(h, g).and_then(|hg| pre.compose1(hg, f));
            let rhs = pre.compose1(h, gf);
            if let (Some(l), Some(r)) = (lhs, rhs) {
                if l != r {
                    w.offer(
                        &[Cell::One(h), Cell::One(g), Cell::One(f)],
                        Some(Cell::One(l)),
                        Some(Cell::One(r)),
                    );
                }
            }
        }
    }
}

fn v_unit(pre: &TwoPrecategory, w: &mut Worst) {
    for h in pre.one_cells() {
        let e = pre.identity2(h);
        if pre.vdom(e) != h || pre.vcod(e) != h {
            w.offer(&[Cell::Two(e)], None, None);
        }
    }
    for t in pre.two_cells() {
        let right = pre.identity2(pre.vdom(t));
        let r = pre.vcompose(t, right);
        if r != Some(t) {
            w.offer(&[Cell::Two(t), Cell::Two(right)], r.map(Cell::Two), None);
        }
        let left = pre.identity2(pre.vcod(t));
        let l = pre.vcompose(left, t);
        if l != Some(t) {
            w.offer(&[Cell::Two(left), Cell::Two(t)], l.map(Cell::Two), None);
        }
    }
}

fn v_assoc(pre: &TwoPrecategory, w: &mut Worst) {
    for (b, a) in pre.vcomposable() {
        let Some(ba) = pre.vcompose(b, a) else { continue };
        for &c in pre.two_cells_from(pre.vcod(b)) {
            let lhs = pre.vcompose(c, b).and_then(|cb| pre.vcompose(cb, a));
            let rhs = pre.vcompose(c, ba);
            if let (Some(l), Some(r)) = (lhs, rhs) {
                if l != r {
                    w.offer(
                        &[Cell::Two(c), Cell::Two(b), Cell::Two(a)],
                        Some(Cell::Two(l)),
                        Some(Cell::Two(r)),
                    );
                }
            }
        }
    }
}

fn h_unit(pre: &TwoPrecategory, w: &mut Worst) {
    for t in pre.two_cells() {
        let right = pre.hunit(pre.hdom(t));
        let r = pre.hcompose(t, right);
        if r != Some(t) {
            w.offer(&[Cell::Two(t), Cell::Two(right)], r.map(Cell::Two), None);
        }
        let left = pre.hunit(pre.hcod(t));
        let l = pre.hcompose(left, t);
        if l != Some(t) {
            w.offer(&[Cell::Two(left), Cell::Two(t)], l.map(Cell::Two), None);
        }
    }
}

fn h_assoc(pre: &TwoPrecategory, w: &mut Worst) {
    for (b, a) in pre.hcomposable() {
        let Some(ba) = pre.hcompose(b, a) else { continue };
        for &c in pre.two_cells_hfrom(pre.hcod(b)) {
            let lhs = pre.hcompose(c, b).and_then(|cb| pre.hcompose(cb, a));
            let rhs = pre.hcompose(c, ba);
            if let (Some(l), Some(r)) = (lhs, rhs) {
                if l != r {
                    w.offer(
                        &[Cell::Two(c), Cell::Two(b), Cell::Two(a)],
                        Some(Cell::Two(l)),
                        Some(Cell::Two(r)),
                    );
                }
            }
        }
    }
}

fn boundary(pre: &TwoPrecategory, w: &mut Worst) {
    for (g, f) in pre.composable1() {
        let Some(gf) = pre.compose1(g, f) else { continue };
        if pre.dom(gf) != pre.dom(f) || pre.cod(gf) != pre.cod(g) {
            w.offer(&[Cell::One(g), Cell::One(f)], Some(Cell::One(gf)), None);
        }
    }
    for (b, a) in pre.vcomposable() {
        let Some(ba) = pre.vcompose(b, a) else { continue };
        if pre.vdom(ba) != pre.vdom(a) || pre.vcod(ba) != pre.vcod(b) {
            w.offer(&[Cell::Two(b), Cell::Two(a)], Some(Cell::Two(ba)), None);
        }
    }
    for (b, a) in pre.hcomposable() {
        let Some(ba) = pre.hcompose(b, a) else { continue };
        let dom_ok = pre.compose1(pre.vdom(b), pre.vdom(a)) == Some(pre.vdom(ba));
        let cod_ok = pre.compose1(pre.vcod(b), pre.vcod(a)) == Some(pre.vcod(ba));
        if !(dom_ok && cod_ok) {
            w.offer(&[Cell::Two(b), Cell::Two(a)], Some(Cell::Two(ba)), None);
        }
    }
}

fn identity_exchange(pre: &TwoPrecategory, w: &mut Worst) {
    for (g, f) in pre.composable1() {
        let Some(gf) = pre.compose1(g, f) else { continue };
        let (vg, vf) = (pre.identity2(g), pre.identity2(f));
        let h = pre.hcompose(vg, vf);
        if h != Some(pre.identity2(gf)) {
            w.offer(
                &[Cell::Two(vg), Cell::Two(vf)],
                h.map(Cell::Two),
                Some(Cell::Two(pre.identity2(gf))),
            );
        }
    }
}

/// `(β′ ∘v α′) ∘h (β ∘v α) = (β′ ∘h β) ∘v (α′ ∘h α)` whenever both sides are
/// defined.
fn interchange(pre: &TwoPrecategory, w: &mut Worst) {
    for (a2, a1) in pre.hcomposable() {
        let Some(h_a) = pre.hcompose(a2, a1) else { continue };
        for &b2 in pre.two_cells_from(pre.vcod(a2)) {
            let Some(v2) = pre.vcompose(b2, a2) else { continue };
            for &b1 in pre.two_cells_from(pre.vcod(a1)) {
                let lhs = pre
                    .vcompose(b1, a1)
                    .and_then(|v1| pre.hcompose(v2, v1));
                let rhs = pre
                    .hcompose(b2, b1)
                    .and_then(|h_b| pre.vcompose(h_b, h_a));
                if let (Some(l), Some(r)) = (lhs, rhs) {
                    if l != r {
                        w.offer(
                            &[Cell::Two(b2), Cell::Two(a2), Cell::Two(b1), Cell::Two(a1)],
                            Some(Cell::Two(l)),
                            Some(Cell::Two(r)),
                        );
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cells::TwoCategoryBuilder;

    #[test]
    fn empty_passes_vacuously() {
        assert!(validate(&TwoPrecategory::empty()).all_pass());
    }

    #[test]
    fn conflicting_rows_are_malformed_not_law_failures() {
        let mut b = TwoCategoryBuilder::new();
        b.object("x")
            .one_cell("p", "x", "x")
            .compose1("p", "p", "p")
            .compose1("p", "p", "id:x");
        assert!(b.build().is_err());
    }

    #[test]
    fn non_associative_loop_table() {
        // q∘p = p, p∘q = q, p∘p = q, q∘q = p: (p∘p)∘q = q∘q = p, p∘(p∘q) = p∘q = q
        let mut b = TwoCategoryBuilder::new();
        b.object("x")
            .one_cell("p", "x", "x")
            .one_cell("q", "x", "x")
            .compose1("p", "p", "q")
            .compose1("q", "q", "p")
            .compose1("p", "q", "q")
            .compose1("q", "p", "p");
        let r = validate(&b.build().unwrap());
        assert!(!r.passes(Law::OneAssoc));
        assert!(r.passes(Law::OneUnit));
        assert!(r.passes(Law::Parallelism));
    }

    #[test]
    fn parallelism_violation() {
        let mut b = TwoCategoryBuilder::new();
        b.object("a")
            .object("b")
            .one_cell("f", "a", "b")
            .one_cell("g", "b", "b")
            .compose1("g", "g", "g")
            .compose1("g", "f", "f")
            .two_cell("bad", "f", "g")
            .hcompose("vid:g", "bad", "bad");
        let pre = b.build().unwrap();
        let r = validate(&pre);
        assert!(!r.passes(Law::Parallelism));
        assert_eq!(
            r.verdict(Law::Parallelism).counterexample.as_ref().unwrap().cells,
            vec!["bad".to_string()]
        );
    }
}
