use std::cmp::Ordering;

use proptest::prelude::*;
use surreal_core::{Engine, Form, Genealogy, Order, Side, Surreal};
use surreal_validation::{self as oracle, birthday, born_by, node_value, q_of, simplest, value, Q};

#[test]
fn order_is_total_and_transitive_to_generation_4() {
    let engine = Engine::new();
    let order = Order::default();
    let xs: Vec<Surreal> = oracle::nodes(&engine, 4)
        .into_iter()
        .map(Surreal::from)
        .collect();
    assert_eq!(xs.len(), 31);
    for x in &xs {
        for y in &xs {
            let (xy, yx) = (order.ge(x, y).unwrap(), order.ge(y, x).unwrap());
            assert!(xy || yx, "{x} and {y} incomparable");
            assert_eq!(xy, value(x) >= value(y), "{x} >= {y}");
            for z in &xs {
                if xy && order.ge(y, z).unwrap() {
                    assert!(order.ge(x, z).unwrap(), "{x} >= {y} >= {z}");
                }
            }
        }
    }
}

#[test]
fn relations_derive_from_ge() {
    let engine = Engine::new();
    let xs: Vec<Surreal> = oracle::nodes(&engine, 3)
        .into_iter()
        .map(Surreal::from)
        .collect();
    let order = Order::default();
    for x in &xs {
        for y in &xs {
            let expect = value(x).cmp(&value(y));
            assert_eq!(order.cmp(x, y).unwrap(), expect);
            assert_eq!(order.lt(x, y).unwrap(), expect == Ordering::Less);
            assert_eq!(order.le(x, y).unwrap(), expect != Ordering::Greater);
            assert_eq!(order.gt(x, y).unwrap(), expect == Ordering::Greater);
            assert_eq!(order.eq(x, y).unwrap(), expect == Ordering::Equal);
            assert_eq!(order.ne(x, y).unwrap(), expect != Ordering::Equal);
        }
    }
}

#[test]
fn generation_sizes_double() {
    let tree = Genealogy::new();
    for g in 0..=10 {
        assert_eq!(tree.generation(g).unwrap().len(), 1 << g, "generation {g}");
    }
}

#[test]
fn in_order_names_increase_and_match_the_oracle() {
    let engine = Engine::new();
    for g in 0..=8 {
        let names: Vec<Q> = oracle::nodes(&engine, g)
            .iter()
            .map(|n| q_of(n.name()))
            .collect();
        assert!(names.windows(2).all(|w| w[0] < w[1]), "depth {g}");
        assert_eq!(names, born_by(g), "depth {g}");
    }
}

#[test]
fn node_names_agree_with_their_forms() {
    let engine = Engine::new();
    for n in oracle::nodes(&engine, 8) {
        let v = node_value(&n);
        assert_eq!(q_of(n.name()), v, "{}", n.describe());
        assert_eq!(n.generation(), birthday(&v), "{}", n.describe());
        assert!(n.form().left.len() <= 1 && n.form().right.len() <= 1);
    }
}

#[test]
fn from_dyadic_inverts_names_to_generation_8() {
    let engine = Engine::new();
    for n in oracle::nodes(&engine, 8) {
        let back = engine.from_dyadic(n.name()).unwrap();
        assert!(back.ptr_eq(&n), "{}", n.describe());
    }
}

#[test]
fn paths_locate_nodes() {
    let tree = Genealogy::new();
    for n in tree.in_order(6).unwrap() {
        let path = tree.path_of(&n);
        assert_eq!(path.len() as u32, n.generation());
        assert!(tree.node_at(&path).unwrap().ptr_eq(&n));
    }
}

#[test]
fn negation_mirrors_paths_to_generation_6() {
    let engine = Engine::new();
    let order = engine.order();
    for n in oracle::nodes(&engine, 6) {
        let neg = engine.negate(&n).unwrap();
        let mirrored: Vec<Side> = n.path().iter().map(|s| s.flip()).collect();
        assert_eq!(neg.path(), mirrored);
        assert_eq!(q_of(neg.name()), -q_of(n.name()));
        // The definitional form ⟨-xR|-xL⟩ denotes the same number.
        let form = Surreal::from(engine.negate_form(&n).unwrap());
        assert!(
            order.eq(&form, &Surreal::from(&neg)).unwrap(),
            "{}",
            n.describe()
        );
        assert!(engine.canonical(&form).unwrap().ptr_eq(&neg));
    }
}

#[test]
fn canonical_descends_to_the_simplest_number() {
    let engine = Engine::new();
    let xs = oracle::nodes(&engine, 4);
    for (i, a) in xs.iter().enumerate() {
        for b in &xs[i + 1..] {
            let form = Surreal::from(Form::new(vec![a.into()], vec![b.into()]));
            let c = engine.canonical(&form).unwrap();
            let expect = simplest(Some(&q_of(a.name())), Some(&q_of(b.name())));
            assert_eq!(q_of(c.name()), expect, "⟨{a}|{b}⟩");
        }
    }
}

fn raw_form(depth: u32) -> impl Strategy<Value = Surreal> {
    let engine = Engine::new();
    let leaves: Vec<Surreal> = oracle::nodes(&engine, 4)
        .into_iter()
        .map(Surreal::from)
        .collect();
    let leaf = proptest::sample::select(leaves);
    leaf.prop_recursive(depth, 24, 4, |inner| {
        (
            proptest::collection::vec(inner.clone(), 0..3),
            proptest::collection::vec(inner, 0..3),
        )
            .prop_map(|(l, r)| Surreal::from(Form::new(l, r)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn number_forms_canonicalise_to_their_oracle_value(x in raw_form(3)) {
        let engine = Engine::new();
        prop_assume!(engine.is_number(&x).unwrap());
        let c = engine.canonical(&x).unwrap();
        let v = value(&x);
        prop_assert_eq!(q_of(c.name()), v.clone());
        prop_assert_eq!(c.generation(), birthday(&v));
        prop_assert!(engine.order().eq(&x, &Surreal::from(&c)).unwrap());
    }

    #[test]
    fn number_check_matches_the_definition(x in raw_form(2)) {
        let engine = Engine::new();
        let order = Order::default();
        fn all_numbers(x: &Surreal, order: &Order) -> bool {
            let f = x.form();
            f.left.iter().chain(&f.right).all(|o| all_numbers(o, order))
                && f.left.iter().all(|l| f.right.iter().all(|r| !order.le(r, l).unwrap()))
        }
        prop_assert_eq!(engine.is_number(&x).unwrap(), all_numbers(&x, &order));
    }
}
