mod common;

use std::collections::BTreeSet;

use common::oracle;
use operad_forge::colour::{parse_profile_list, Colour, Profile};
use operad_forge::sc::{self, ScElement};
use operad_forge::{parse_tree, serialize_tree};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn colours(names: &[&str]) -> BTreeSet<Colour> {
    names.iter().map(|c| Colour::new(*c).unwrap()).collect()
}

fn p(s: &str) -> Profile {
    s.parse().unwrap()
}

fn library(cs: &BTreeSet<Colour>, vertex_profiles: &[Profile], boundary: &Profile) -> BTreeSet<String> {
    sc::component(cs, vertex_profiles, boundary).iter().map(|x| x.to_string()).collect()
}

#[test]
fn small_components_match_the_oracle() {
    let c = colours(&["c"]);
    assert_eq!(oracle::component(&c, &[], &p("(c;c)")).len(), 1);
    assert_eq!(oracle::component(&c, &[p("(c;c)"), p("(c;c)")], &p("(c;c)")).len(), 2);
    for (profiles, boundary) in [("", "(c;c)"), ("(c;c);(c;c)", "(c;c)"), ("(c,c;c);(c,c;c)", "(c,c,c;c)")] {
        let vs = if profiles.is_empty() { Vec::new() } else { parse_profile_list(profiles).unwrap() };
        assert_eq!(library(&c, &vs, &p(boundary)), oracle::component(&c, &vs, &p(boundary)), "{profiles}");
    }
}

#[test]
fn four_vertex_example() {
    let cs = colours(&["a", "b", "c"]);
    let text = "v1:c(v2:a(l2:b,l1:b),v4:b(l4:c,v3:a(),l3:a))";
    let x = ScElement::parse(text, &cs).unwrap();
    assert_eq!(x.to_string(), text);
    assert_eq!(x.profile().inputs, parse_profile_list("(a,b;c);(b,b;a);(;a);(c,a,a;b)").unwrap());
    assert_eq!(x.boundary(), p("(b,b,a,c;c)"));
    let want = oracle::component(&cs, &x.profile().inputs, &x.boundary());
    assert!(want.contains(text));
    assert_eq!(library(&cs, &x.profile().inputs, &x.boundary()), want);
}

/// Random vertex-profile lists, each checked against every boundary of the
/// right arity.
#[test]
fn random_components_match_the_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut queries = 0;
    let mut nonempty = 0;
    for (cs, vs, boundary) in common::gen::component_queries(&mut rng, 40) {
        let want = oracle::component(&cs, &vs, &boundary);
        assert_eq!(library(&cs, &vs, &boundary), want, "{vs:?} {boundary}");
        queries += 1;
        nonempty += usize::from(!want.is_empty());
    }
    assert!(queries >= 50, "only {queries} queries");
    assert!(nonempty >= 10, "only {nonempty} non-empty components");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn serialisation_round_trips(seed in any::<u64>(), n_colours in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = common::gen::random_tree(&mut rng, &common::gen::palette(n_colours), 5);
        let text = serialize_tree(x.tree());
        prop_assert_eq!(&parse_tree(&text).unwrap(), x.tree());
        // whitespace is insignificant
        let spaced = text.replace(',', " , ").replace('(', "( ");
        prop_assert_eq!(&parse_tree(&spaced).unwrap(), x.tree());
    }

    #[test]
    fn generated_trees_lie_in_their_component(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cs = common::gen::palette(2);
        let x = common::gen::random_tree(&mut rng, &cs, 3);
        let found = library(&cs, &x.profile().inputs, &x.boundary());
        prop_assert!(found.contains(&x.to_string()));
    }
}
