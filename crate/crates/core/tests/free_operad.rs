mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::free_oracle::{self, T};
use operad_forge::algebra::sc_evaluate;
use operad_forge::collection::{Collection, CollectionMorphism};
use operad_forge::colour::{Colour, Profile};
use operad_forge::free::{to_sc_element, Evaluator, FreeOperad};
use operad_forge::operad::{ass_truncated, operad_from_monoid, terminal_operad, FiniteOperad, Monoid};
use operad_forge::Permutation;

fn c(name: &str) -> Colour {
    Colour::new(name).unwrap()
}

fn p(s: &str) -> Profile {
    s.parse().unwrap()
}

fn swap() -> Permutation {
    Permutation::transposition(2, 1, 2)
}

fn unary() -> Collection {
    let mut k = Collection::new([c("c")]);
    k.set_component(p("(c;c)"), vec!["u".into()]).unwrap();
    k
}

fn commutative() -> Collection {
    let mut k = Collection::new([c("c")]);
    k.set_component(p("(c,c;c)"), vec!["g".into()]).unwrap();
    k.set_action(p("(c,c;c)"), swap(), vec![0]);
    k
}

fn swapped_pair() -> Collection {
    let mut k = Collection::new([c("c")]);
    k.set_component(p("(c,c;c)"), vec!["g".into(), "h".into()]).unwrap();
    k.set_action(p("(c,c;c)"), swap(), vec![1, 0]);
    k
}

fn mixed() -> Collection {
    let mut k = Collection::new([c("a"), c("b")]);
    k.set_component(p("(a,b;a)"), vec!["m".into()]).unwrap();
    k.set_component(p("(b,a;a)"), vec!["n".into()]).unwrap();
    k.set_component(p("(a;b)"), vec!["f".into()]).unwrap();
    k.set_action(p("(a,b;a)"), swap(), vec![0]);
    k.set_action(p("(b,a;a)"), swap(), vec![0]);
    k
}

fn pointed() -> Collection {
    let mut k = commutative();
    k.set_component(p("(;c)"), vec!["k".into()]).unwrap();
    k
}

fn instances() -> Vec<(Collection, Vec<Profile>)> {
    vec![
        (unary(), vec![p("(c;c)")]),
        (commutative(), vec![p("(c,c;c)"), p("(c,c,c;c)"), p("(c,c,c,c;c)")]),
        (swapped_pair(), vec![p("(c,c;c)"), p("(c,c,c;c)")]),
        (pointed(), vec![p("(;c)"), p("(c;c)"), p("(c,c;c)")]),
        (mixed(), vec![p("(a,b;a)"), p("(a,a;a)"), p("(a,b,b;a)"), p("(b,a,b;a)"), p("(a;b)")]),
    ]
}

fn arity_product(t: &T) -> usize {
    match t {
        T::Node(p, _, ch) => (1..=p.arity()).product::<usize>() * ch.iter().map(arity_product).product::<usize>(),
        _ => 1,
    }
}

#[test]
fn classes_match_the_union_find_oracle() {
    for (k, boundaries) in instances() {
        let free = FreeOperad::new(k.clone(), 3).unwrap();
        for boundary in &boundaries {
            let all = free.elements(boundary);
            for v in 0..=3 {
                let classes = free_oracle::classes(&k, boundary, v);
                let library: Vec<_> = all.iter().filter(|x| x.vertex_count() == v).collect();
                assert_eq!(library.len(), classes.len(), "{boundary} with {v} vertices");
                let mut reps = BTreeSet::new();
                for class in &classes {
                    let canon: BTreeSet<_> =
                        class.iter().map(|t| free.canonical(&free_oracle::to_library(&k, t))).collect();
                    assert_eq!(canon.len(), 1, "one representative per class");
                    let rep = canon.into_iter().next().unwrap();
                    assert!(library.contains(&&rep));
                    reps.insert(rep);
                    // the planar members of a class form one orbit of the
                    // vertex-reordering group
                    let size = class.len();
                    let order = arity_product(class.iter().next().unwrap());
                    assert_eq!(order % size, 0, "orbit of size {size} in a group of order {order}");
                }
                assert_eq!(reps.len(), classes.len(), "distinct classes have distinct representatives");
            }
        }
    }
}

#[test]
fn counts_from_the_definition() {
    let free = FreeOperad::new(unary(), 3).unwrap();
    assert_eq!(free.elements(&p("(c;c)")).len(), 4);
    assert_eq!(FreeOperad::new(unary(), 0).unwrap().elements(&p("(c;c)")).len(), 1);
    assert_eq!(free_oracle::classes(&commutative(), &p("(c,c,c;c)"), 2).len(), 3);
}

#[test]
fn bounds_are_nested() {
    for (k, boundaries) in instances() {
        for boundary in &boundaries {
            let mut previous: BTreeSet<String> = BTreeSet::new();
            for bound in 0..=3 {
                let now: BTreeSet<String> = FreeOperad::new(k.clone(), bound)
                    .unwrap()
                    .elements(boundary)
                    .iter()
                    .map(|x| x.to_string())
                    .collect();
                assert!(previous.is_subset(&now), "{boundary} at bound {bound}");
                previous = now;
            }
        }
    }
}

fn generator_maps(k: &Collection, target: &FiniteOperad) -> Vec<CollectionMorphism> {
    CollectionMorphism::enumerate_all(k, target.base())
}

/// Evaluating any planar member of a class, or going through the tree
/// operad, gives the same element.
#[test]
fn evaluation_is_independent_of_representative_and_route() {
    let ass = ass_truncated(4);
    let pr = operad_from_monoid(&Monoid::cyclic(3)).unwrap();
    let one = terminal_operad(&[c("c")], 4);
    let two = terminal_operad(&[c("a"), c("b")], 3);
    for (k, target) in [(unary(), &pr), (commutative(), &one), (swapped_pair(), &ass), (mixed(), &two), (pointed(), &one)] {
        let colours = k.colours().clone();
        let gens = generator_maps(&k, target);
        assert!(!gens.is_empty());
        let free = FreeOperad::new(k.clone(), 3).unwrap();
        for gen in &gens {
            let eval = Evaluator::new(&free, target, gen).unwrap();
            for boundary in target.base().support() {
                for v in 0..=3 {
                    for class in free_oracle::classes(&k, boundary, v) {
                        let values: BTreeSet<usize> = class
                            .iter()
                            .map(|t| eval.evaluate(&free_oracle::to_library(&k, t)).unwrap())
                            .collect();
                        assert_eq!(values.len(), 1, "class {class:?}");
                        let rep = free.canonical(&free_oracle::to_library(&k, class.iter().next().unwrap()));
                        let (x, labels) = to_sc_element(&rep, &colours).unwrap();
                        let args: Vec<usize> = labels.iter().map(|(q, e)| gen.apply(q, *e).unwrap()).collect();
                        assert_eq!(sc_evaluate(target, &x, &args).unwrap(), *values.iter().next().unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn non_equivariant_generators_are_rejected() {
    // the swap exchanges w1.2 and w2.1, so nothing fixed by it is hit
    let ass = ass_truncated(3);
    assert!(generator_maps(&commutative(), &ass).is_empty());
    let free = FreeOperad::new(commutative(), 2).unwrap();
    let w12 = ass.base().index_of(&p("(c,c;c)"), "w1.2").unwrap();
    let gen = CollectionMorphism { maps: BTreeMap::from([(p("(c,c;c)"), vec![w12])]) };
    assert!(Evaluator::new(&free, &ass, &gen).is_err());
}
