use std::collections::HashMap;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use twocat::cells::rename_keeping_identities;
use twocat::document::{parse_category, print_category};
use twocat::reflection::graph_pullback;
use twocat::*;

fn small() -> Budget {
    Budget {
        objects: 4,
        one_cells: 12,
        two_cells: 20,
        steps: 4,
    }
}

fn instance(seed: u64) -> TwoCategory {
    random_instance(seed, small()).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_functor(a: &TwoCategory, b: &TwoCategory, r: &mut ChaCha8Rng) -> Option<TwoFunctor> {
    let (f0, f1, f2) = FunctorSearch::new(a, b).shuffled(r).node_limit(20_000).first()?;
    Some(TwoFunctor::new(a.clone(), b.clone(), f0, f1, f2).unwrap())
}

/// Two random functors into a common random target.
fn cospan(seed: u64) -> (TwoFunctor, TwoFunctor) {
    let mut r = rng(seed);
    let mut s = seed;
    loop {
        let (a, b, c) = (instance(s), instance(s + 1), instance(s + 2));
        if let (Some(f), Some(g)) = (random_functor(&a, &c, &mut r), random_functor(&b, &c, &mut r)) {
            return (f, g);
        }
        s += 3;
    }
}

fn same_maps(f: &TwoFunctor, g: &TwoFunctor) -> bool {
    f.f0() == g.f0() && f.f1() == g.f1() && f.f2() == g.f2()
}

/// A copy with every non-identity cell renamed so that the sort order is
/// reversed.
fn reversed_copy(c: &TwoCategory) -> TwoCategory {
    let mut names = HashMap::new();
    let levels = [
        (Level::Object, c.objects().map(|x| c.object_id(x).to_string()).collect::<Vec<_>>()),
        (Level::OneCell, c.one_cells().map(|h| c.one_id(h).to_string()).collect()),
        (Level::TwoCell, c.two_cells().map(|t| c.two_id(t).to_string()).collect()),
    ];
    for (level, ids) in &levels {
        let n = ids.len();
        for (i, id) in ids.iter().enumerate() {
            names.insert((*level, id.clone()), format!("r{:04}", n - i));
        }
    }
    let b = c.to_builder_renamed(|level, id| {
        rename_keeping_identities(level, id, &|s| {
            names
                .get(&(level, s.to_string()))
                .or_else(|| names.get(&(Level::Object, s.to_string())))
                .or_else(|| names.get(&(Level::OneCell, s.to_string())))
                .cloned()
                .unwrap()
        })
    });
    TwoCategory::from_builder(&b).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pullback_mediates_uniquely(seed in 0u64..10_000) {
        let (f, g) = cospan(seed);
        let p = pullback(&f, &g).unwrap();
        prop_assert!(validate(&p.apex).all_pass());
        let lhs = compose_two_functors(&f, &p.proj1).unwrap();
        let rhs = compose_two_functors(&g, &p.proj2).unwrap();
        prop_assert!(same_maps(&lhs, &rhs));

        let x = instance(seed + 3);
        if let Some(h) = random_functor(&x, &p.apex, &mut rng(seed)) {
            let u = compose_two_functors(&p.proj1, &h).unwrap();
            let v = compose_two_functors(&p.proj2, &h).unwrap();
            let m = p.mediating(&u, &v).unwrap();
            prop_assert!(same_maps(&m, &h));
        }
    }

    #[test]
    fn pullback_is_symmetric(seed in 0u64..10_000) {
        let (f, g) = cospan(seed);
        let (p, q) = (pullback(&f, &g).unwrap(), pullback(&g, &f).unwrap());
        prop_assert_eq!(p.apex.sizes(), q.apex.sizes());
        let swap = p.mediating(&q.proj2, &q.proj1).unwrap();
        prop_assert!(swap.is_valid() && swap.is_bijective());
    }

    #[test]
    fn coproduct_adds_sizes(s1 in 0u64..10_000, s2 in 0u64..10_000) {
        let (a, b) = (instance(s1), instance(s2));
        let (sum, inj) = coproduct(&[a.clone(), b.clone()]);
        prop_assert!(validate(&sum).all_pass());
        let (x, y) = (a.sizes(), b.sizes());
        prop_assert_eq!(sum.sizes(), (x.0 + y.0, x.1 + y.1, x.2 + y.2));
        for (i, part) in [&a, &b].into_iter().enumerate() {
            prop_assert!(inj[i].is_valid());
            prop_assert!(part.same(inj[i].source()));
        }
        let mut hit = vec![0usize; sum.two_cell_count()];
        for j in &inj {
            for &t in j.f2() {
                hit[t.0] += 1;
            }
        }
        prop_assert!(hit.iter().all(|&n| n == 1));
    }

    #[test]
    fn reflection_factors_maps_into_preorders(s1 in 0u64..10_000, s2 in 0u64..10_000) {
        let a = instance(s1);
        let b = reflect(&instance(s2)).reflected;
        let ra = reflect(&a);
        prop_assert!(is_two_preorder(&ra.reflected));
        if let Some(f) = random_functor(&a, &b, &mut rng(s1 ^ s2)) {
            let through: Vec<_> = enumerate_functors(&ra.reflected, &b)
                .into_iter()
                .filter(|g| same_maps(&compose_two_functors(g, &ra.unit).unwrap(), &f))
                .collect();
            prop_assert_eq!(through.len(), 1);
        }
    }

    #[test]
    fn factorizations_of_class_members_are_trivial(seed in 0u64..10_000) {
        let (f, _) = cospan(seed);
        let ml = monotone_light_factor(&f);
        prop_assert!(verify_factorization(&f, &ml).is_empty());
        prop_assert!(monotone_light_factor(&ml.e).m.is_bijective());
        prop_assert!(monotone_light_factor(&ml.m).e.is_bijective());
        let rf = reflective_factor(&f);
        prop_assert!(verify_factorization(&f, &rf).is_empty());
        prop_assert!(reflective_factor(&rf.e).m.is_bijective());
        prop_assert!(reflective_factor(&rf.m).e.is_bijective());
    }

    #[test]
    fn pullback_squares_are_recognized(seed in 0u64..10_000) {
        let (f, g) = cospan(seed);
        let p = pullback(&f, &g).unwrap();
        let ix = |v: &[TwoIx]| v.iter().map(|t| t.0).collect::<Vec<_>>();
        let square = FiniteSquare {
            w: p.apex.two_cell_count(),
            x: f.source().two_cell_count(),
            y: g.source().two_cell_count(),
            z: f.target().two_cell_count(),
            p: ix(p.proj1.f2()),
            q: ix(p.proj2.f2()),
            f: ix(f.f2()),
            g: ix(g.f2()),
        };
        prop_assert!(is_pullback_square(&square));
        prop_assume!(square.w > 0);
        let mut doubled = square.clone();
        doubled.w *= 2;
        doubled.p.extend_from_slice(&square.p);
        doubled.q.extend_from_slice(&square.q);
        prop_assert!(!is_pullback_square(&doubled));
        let mut dropped = square.clone();
        dropped.w -= 1;
        dropped.p.pop();
        dropped.q.pop();
        prop_assert!(!is_pullback_square(&dropped));
    }

    #[test]
    fn class_e_is_pullback_stable(s1 in 0u64..10_000, s2 in 0u64..10_000) {
        let ra = reflect(&instance(s1));
        let unit = GraphMorphism::underlying(&ra.unit);
        prop_assert!(in_class_e(&unit));
        let x = instance(s2);
        if let Some(k) = random_functor(&x, &ra.reflected, &mut rng(s2)) {
            let (_, _, along) = graph_pullback(&unit, &GraphMorphism::underlying(&k)).unwrap();
            prop_assert!(along.is_valid());
            prop_assert!(in_class_e(&along));
        }
    }

    #[test]
    fn isomorphism_is_symmetric(seed in 0u64..10_000) {
        let a = instance(seed);
        let b = reversed_copy(&a);
        let cap = SearchCap::default();
        let ab = find_isomorphism(&a, &b, cap).unwrap();
        let ba = find_isomorphism(&b, &a, cap).unwrap();
        prop_assert!(ab.is_some() && ba.is_some());
        let round = compose_two_functors(&ba.unwrap(), &ab.unwrap()).unwrap();
        prop_assert!(round.is_bijective());
        let c = instance(seed + 7);
        prop_assert_eq!(is_isomorphic(&a, &c, cap).unwrap(), is_isomorphic(&c, &a, cap).unwrap());
    }

    #[test]
    fn documents_round_trip(seed in 0u64..10_000) {
        let a = instance(seed);
        let text = print_category(&a);
        let back = parse_category(&text).unwrap();
        prop_assert_eq!(&back, a.precategory());
        prop_assert_eq!(print_category(&back), text);
    }
}
