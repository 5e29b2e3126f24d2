//! Free 2-preorders on acyclic graph presentations.

use std::collections::HashMap;

use crate::category::TwoCategory;
use crate::cells::{identity_name, vertical_identity_name, TwoCategoryBuilder, IDENTITY_PREFIX, VERTICAL_IDENTITY_PREFIX};
use crate::error::{malformed, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub id: String,
    pub dom: String,
    pub cod: String,
}

/// Objects, generating 1-cells, and generating 2-cell relations between
/// parallel paths of generators. Paths list generators in traversal order
/// (the first generator is applied first).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TwoGraphPresentation {
    pub objects: Vec<String>,
    pub generators: Vec<Generator>,
    pub relations: Vec<(Vec<String>, Vec<String>)>,
}

impl TwoGraphPresentation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(&mut self, id: impl Into<String>) -> &mut Self {
        self.objects.push(id.into());
        self
    }

    pub fn generator(&mut self, id: impl Into<String>, dom: impl Into<String>, cod: impl Into<String>) -> &mut Self {
        self.generators.push(Generator {
            id: id.into(),
            dom: dom.into(),
            cod: cod.into(),
        });
        self
    }

    pub fn relation<S: Into<String>>(&mut self, lower: impl IntoIterator<Item = S>, upper: impl IntoIterator<Item = S>) -> &mut Self {
        self.relations.push((
            lower.into_iter().map(Into::into).collect(),
            upper.into_iter().map(Into::into).collect(),
        ));
        self
    }
}

/// Separator between generator names in a path identifier, written in
/// composition order: the path `f` then `g` is `g·f`.
pub const PATH_SEPARATOR: &str = "·";

/// Separator between the two paths of a non-identity 2-cell identifier.
pub const ORDER_SEPARATOR: &str = "≤";

/// A free 2-preorder together with the path behind every cell.
#[derive(Clone, Debug)]
pub struct FreeTwoPreorder {
    pub category: TwoCategory,
    /// Generator indices of each 1-cell, in traversal order, by 1-cell index.
    pub one_cell_paths: Vec<Vec<usize>>,
    /// `(lower path, upper path)` of each 2-cell, by 2-cell index.
    pub two_cell_paths: Vec<(Vec<usize>, Vec<usize>)>,
}

struct Checked {
    objects: Vec<String>,
    gen_dom: Vec<usize>,
    gen_cod: Vec<usize>,
    relations: Vec<(Vec<usize>, Vec<usize>)>,
}

fn check(p: &TwoGraphPresentation) -> Result<Checked> {
    let mut obj_ix = HashMap::new();
    for (i, x) in p.objects.iter().enumerate() {
        if obj_ix.insert(x.as_str(), i).is_some() {
            return Err(malformed(format!("duplicate object {x}")));
        }
    }
    let mut gen_ix = HashMap::new();
    let (mut gen_dom, mut gen_cod) = (Vec::new(), Vec::new());
    for (i, g) in p.generators.iter().enumerate() {
        if g.id.starts_with(IDENTITY_PREFIX) || g.id.starts_with(VERTICAL_IDENTITY_PREFIX) {
            return Err(malformed(format!("generator {} uses a reserved prefix", g.id)));
        }
        if gen_ix.insert(g.id.as_str(), i).is_some() {
            return Err(malformed(format!("duplicate generator {}", g.id)));
        }
        let lookup = |x: &str| {
            obj_ix
                .get(x)
                .copied()
                .ok_or_else(|| malformed(format!("generator {} references unknown object {x}", g.id)))
        };
        gen_dom.push(lookup(&g.dom)?);
        gen_cod.push(lookup(&g.cod)?);
    }

    // acyclicity, by repeatedly removing sources
    let n = p.objects.len();
    let mut indegree = vec![0usize; n];
    for &c in &gen_cod {
        indegree[c] += 1;
    }
    let mut ready: Vec<usize> = (0..n).filter(|&x| indegree[x] == 0).collect();
    let mut removed = 0;
    while let Some(x) = ready.pop() {
        removed += 1;
        for (g, &d) in gen_dom.iter().enumerate() {
            if d == x {
                indegree[gen_cod[g]] -= 1;
                if indegree[gen_cod[g]] == 0 {
                    ready.push(gen_cod[g]);
                }
            }
        }
    }
    if removed < n {
        return Err(Error::CyclicPresentation(
            "the generating graph has a directed cycle".into(),
        ));
    }

    let mut relations = Vec::new();
    for (lower, upper) in &p.relations {
        let resolve = |path: &[String]| -> Result<Vec<usize>> {
            path.iter()
                .map(|g| {
                    gen_ix
                        .get(g.as_str())
                        .copied()
                        .ok_or_else(|| malformed(format!("relation references unknown generator {g}")))
                })
                .collect()
        };
        let (l, u) = (resolve(lower)?, resolve(upper)?);
        let ends = |path: &[usize]| -> Result<Option<(usize, usize)>> {
            if path.is_empty() {
                return Ok(None);
            }
            for w in path.windows(2) {
                if gen_cod[w[0]] != gen_dom[w[1]] {
                    return Err(malformed("relation path is not composable"));
                }
            }
            Ok(Some((gen_dom[path[0]], gen_cod[*path.last().unwrap()])))
        };
        match (ends(&l)?, ends(&u)?) {
            (Some(a), Some(b)) if a == b => relations.push((l, u)),
            _ => return Err(malformed("relation between non-parallel paths")),
        }
    }
    Ok(Checked {
        objects: p.objects.clone(),
        gen_dom,
        gen_cod,
        relations,
    })
}

/// The free 2-preorder: 1-cells are all paths of generators, and `x ≤ y`
/// is the least preorder on parallel paths containing every comparison of
/// paths that split into aligned segments each equal or generating-related.
/// The result is closed under horizontal composition.
pub fn free_two_preorder(p: &TwoGraphPresentation) -> Result<TwoCategory> {
    Ok(free_two_preorder_with_paths(p)?.category)
}

pub fn free_two_preorder_with_paths(p: &TwoGraphPresentation) -> Result<FreeTwoPreorder> {
    let c = check(p)?;
    let names: Vec<&str> = p.generators.iter().map(|g| g.id.as_str()).collect();
    let n = c.objects.len();

    // every non-empty path, grouped by endpoints
    let mut by_ends: HashMap<(usize, usize), Vec<Vec<usize>>> = HashMap::new();
    let mut stack: Vec<Vec<usize>> = (0..names.len()).map(|g| vec![g]).collect();
    while let Some(path) = stack.pop() {
        let last = *path.last().unwrap();
        for g in 0..names.len() {
            if c.gen_dom[g] == c.gen_cod[last] {
                let mut next = path.clone();
                next.push(g);
                stack.push(next);
            }
        }
        by_ends
            .entry((c.gen_dom[path[0]], c.gen_cod[last]))
            .or_default()
            .push(path);
    }
    for x in 0..n {
        by_ends.entry((x, x)).or_default().push(Vec::new());
    }
    let path_name = |path: &[usize], start: usize| -> String {
        if path.is_empty() {
            identity_name(&c.objects[start])
        } else {
            path.iter()
                .rev()
                .map(|&g| names[g])
                .collect::<Vec<_>>()
                .join(PATH_SEPARATOR)
        }
    };

    let mut b = TwoCategoryBuilder::new();
    for x in &c.objects {
        b.object(x.clone());
    }
    let mut keys: Vec<(usize, usize)> = by_ends.keys().copied().collect();
    keys.sort();
    let mut order: HashMap<(usize, usize), Vec<Vec<bool>>> = HashMap::new();
    for &(x, y) in &keys {
        let paths = by_ends.get_mut(&(x, y)).unwrap();
        paths.sort();
        for path in paths.iter().filter(|p| !p.is_empty()) {
            b.one_cell(path_name(path, x), c.objects[x].clone(), c.objects[y].clone());
        }
        order.insert((x, y), preorder(paths, &c.relations));
    }

    // 1-cell composition
    for &(x, y) in &keys {
        for &(y2, z) in keys.iter().filter(|k| k.0 == y) {
            debug_assert_eq!(y, y2);
            for f in &by_ends[&(x, y)] {
                for g in &by_ends[&(y, z)] {
                    let gf: Vec<usize> = f.iter().chain(g.iter()).copied().collect();
                    b.compose1(path_name(g, y), path_name(f, x), path_name(&gf, x));
                }
            }
        }
    }

    // 2-cells and vertical composition
    let cell_name = |lo: &[usize], hi: &[usize], start: usize| -> String {
        if lo == hi {
            vertical_identity_name(&path_name(lo, start))
        } else {
            format!("{}{ORDER_SEPARATOR}{}", path_name(lo, start), path_name(hi, start))
        }
    };
    for &(x, y) in &keys {
        let paths = &by_ends[&(x, y)];
        let le = &order[&(x, y)];
        for i in 0..paths.len() {
            for j in 0..paths.len() {
                if !le[i][j] {
                    continue;
                }
                if i != j {
                    b.two_cell(cell_name(&paths[i], &paths[j], x), path_name(&paths[i], x), path_name(&paths[j], x));
                }
                for k in 0..paths.len() {
                    if le[j][k] {
                        b.vcompose(
                            cell_name(&paths[j], &paths[k], x),
                            cell_name(&paths[i], &paths[j], x),
                            cell_name(&paths[i], &paths[k], x),
                        );
                    }
                }
            }
        }
    }

    // horizontal composition
    for &(x, y) in &keys {
        for &(_, z) in keys.iter().filter(|k| k.0 == y) {
            let (lp, le) = (&by_ends[&(x, y)], &order[&(x, y)]);
            let (rp, re) = (&by_ends[&(y, z)], &order[&(y, z)]);
            for i in 0..lp.len() {
                for j in (0..lp.len()).filter(|&j| le[i][j]) {
                    for k in 0..rp.len() {
                        for l in (0..rp.len()).filter(|&l| re[k][l]) {
                            let lo: Vec<usize> = lp[i].iter().chain(rp[k].iter()).copied().collect();
                            let hi: Vec<usize> = lp[j].iter().chain(rp[l].iter()).copied().collect();
                            b.hcompose(
                                cell_name(&rp[k], &rp[l], y),
                                cell_name(&lp[i], &lp[j], x),
                                cell_name(&lo, &hi, x),
                            );
                        }
                    }
                }
            }
        }
    }

    let category = TwoCategory::trusted(b.build()?);

    let mut one_cell_paths = vec![Vec::new(); category.one_cell_count()];
    let mut two_cell_paths = vec![(Vec::new(), Vec::new()); category.two_cell_count()];
    for &(x, y) in &keys {
        let paths = &by_ends[&(x, y)];
        let le = &order[&(x, y)];
        for (i, path) in paths.iter().enumerate() {
            let h = category.one_cell(&path_name(path, x)).expect("path 1-cell");
            one_cell_paths[h.0] = path.clone();
            for (j, upper) in paths.iter().enumerate() {
                if le[i][j] {
                    let t = category.two_cell(&cell_name(path, upper, x)).expect("path 2-cell");
                    two_cell_paths[t.0] = (path.clone(), upper.clone());
                }
            }
        }
    }
    Ok(FreeTwoPreorder {
        category,
        one_cell_paths,
        two_cell_paths,
    })
}

/// Reflexive-transitive closure of the aligned-segment relation on one
/// hom-set of parallel paths.
fn preorder(paths: &[Vec<usize>], relations: &[(Vec<usize>, Vec<usize>)]) -> Vec<Vec<bool>> {
    let n = paths.len();
    let mut le = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            le[i][j] = aligned(&paths[i], &paths[j], relations);
        }
    }
    for k in 0..n {
        for i in 0..n {
            if le[i][k] {
                for j in 0..n {
                    if le[k][j] {
                        le[i][j] = true;
                    }
                }
            }
        }
    }
    le
}

/// Whether `lo` and `hi` split into aligned segments, each pair equal or a
/// generating relation.
fn aligned(lo: &[usize], hi: &[usize], relations: &[(Vec<usize>, Vec<usize>)]) -> bool {
    let (n, m) = (lo.len(), hi.len());
    let mut reach = vec![vec![false; m + 1]; n + 1];
    reach[0][0] = true;
    for i in 0..=n {
        for j in 0..=m {
            if !reach[i][j] {
                continue;
            }
            if i < n && j < m && lo[i] == hi[j] {
                reach[i + 1][j + 1] = true;
            }
            for (l, u) in relations {
                if lo[i..].starts_with(l) && hi[j..].starts_with(u) {
                    reach[i + l.len()][j + u.len()] = true;
                }
            }
        }
    }
    reach[n][m]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reflection::is_two_preorder;

    fn chain4() -> TwoGraphPresentation {
        let mut p = TwoGraphPresentation::new();
        p.object("0").object("1");
        for k in ["k1", "k2", "k3", "k4"] {
            p.generator(k, "0", "1");
        }
        p.relation(["k1"], ["k2"]).relation(["k2"], ["k3"]).relation(["k3"], ["k4"]);
        p
    }

    fn non_identity_two_cells(c: &TwoCategory) -> usize {
        c.two_cells().filter(|&t| !c.is_identity2(t)).count()
    }

    #[test]
    fn chain_closure() {
        let c = free_two_preorder(&chain4()).unwrap();
        assert_eq!(non_identity_two_cells(&c), 6);
        assert!(is_two_preorder(&c));
    }

    #[test]
    fn componentwise_order_on_two_gaps() {
        let mut p = TwoGraphPresentation::new();
        p.object("0").object("1").object("2");
        p.generator("t01", "0", "1").generator("b01", "0", "1");
        p.generator("t12", "1", "2").generator("b12", "1", "2");
        p.relation(["t01"], ["b01"]).relation(["t12"], ["b12"]);
        let c = free_two_preorder(&p).unwrap();
        let (x, z) = (c.object("0").unwrap(), c.object("2").unwrap());
        let hom: Vec<_> = c.one_hom(x, z).collect();
        assert_eq!(hom.len(), 4);
        let strict: usize = hom
            .iter()
            .flat_map(|&h| hom.iter().map(move |&k| (h, k)))
            .filter(|&(h, k)| h != k)
            .map(|(h, k)| c.vertical_hom(h, k).len())
            .sum();
        assert_eq!(strict, 5);
    }

    #[test]
    fn empty_presentation() {
        let c = free_two_preorder(&TwoGraphPresentation::new()).unwrap();
        assert_eq!(c.sizes(), (0, 0, 0));
    }

    #[test]
    fn cycle_is_rejected() {
        let mut p = TwoGraphPresentation::new();
        p.object("0").object("1");
        p.generator("f", "0", "1").generator("g", "1", "0");
        assert!(matches!(free_two_preorder(&p), Err(Error::CyclicPresentation(_))));
        let mut q = TwoGraphPresentation::new();
        q.object("0").generator("l", "0", "0");
        assert!(matches!(free_two_preorder(&q), Err(Error::CyclicPresentation(_))));
    }

    #[test]
    fn relation_between_paths_of_different_length() {
        // k ≤ g·f across a middle object
        let mut p = TwoGraphPresentation::new();
        p.object("0").object("1").object("2");
        p.generator("f", "0", "1").generator("g", "1", "2").generator("k", "0", "2");
        p.relation(["k"], ["f", "g"]);
        let c = free_two_preorder(&p).unwrap();
        let k = c.one_cell("k").unwrap();
        let gf = c.one_cell("g·f").unwrap();
        assert_eq!(c.vertical_hom(k, gf).len(), 1);
        assert_eq!(c.vertical_hom(gf, k).len(), 0);
    }

    #[test]
    fn relation_closure_laws() {
        let mut p = TwoGraphPresentation::new();
        p.object("0").object("1").object("2");
        for g in ["a", "b", "c"] {
            p.generator(format!("{g}01"), "0", "1");
            p.generator(format!("{g}12"), "1", "2");
        }
        p.relation(["a01"], ["b01"]).relation(["b01"], ["c01"]).relation(["c12"], ["a12"]);
        let c = free_two_preorder(&p).unwrap();
        assert!(is_two_preorder(&c));
        // reflexive
        for h in c.one_cells() {
            assert_eq!(c.vertical_hom(h, h).len(), 1);
        }
        // transitive and closed under horizontal composition
        for (b, a) in c.vcomposable() {
            assert!(!c.vertical_hom(c.vdom(a), c.vcod(b)).is_empty());
        }
        for (b, a) in c.hcomposable() {
            let lo = c.compose1(c.vdom(b), c.vdom(a)).unwrap();
            let hi = c.compose1(c.vcod(b), c.vcod(a)).unwrap();
            assert!(!c.vertical_hom(lo, hi).is_empty());
        }
    }
}
