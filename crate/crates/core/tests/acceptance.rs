//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the test
//! harness so the lines are always shown; exits non-zero if any fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{free_oracle, gen, laws, oracle};
use operad_forge::algebra::{
    act_function, compose_functions, roundtrip, sc_evaluate, verify_algebra, AlgebraStructure, EndOperad,
    FiniteFamily,
};
use operad_forge::collection::{Collection, CollectionMorphism};
use operad_forge::colour::{parse_profile_list, Colour, Profile};
use operad_forge::free::{to_sc_element, verify_evaluator, Evaluator, FreeOperad};
use operad_forge::operad::{
    ass_truncated, operad_from_monoid, terminal_operad, verify_operad, FiniteOperad, Monoid, Operad,
};
use operad_forge::sc::{self, as_permutation, circ, compose, ScElement};
use operad_forge::Permutation;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const COMPOSITION_BUDGET: Duration = Duration::from_secs(1);
const LAWS_BUDGET: Duration = Duration::from_secs(60);
const LAW_INSTANCES: usize = 1000;
const LAW_SEED: u64 = 20_240_917;
const ORACLE_QUERIES: usize = 50;
const ORACLE_SEED: u64 = 7;
const ROUNDTRIP_VERTICES: usize = 4;
const ADJUNCTION_VERTICES: usize = 4;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn c(name: &str) -> Colour {
    Colour::new(name).unwrap()
}

fn p(s: &str) -> Profile {
    s.parse().unwrap()
}

fn abc() -> BTreeSet<Colour> {
    [c("a"), c("b"), c("c")].into()
}

fn composition_example() -> Outcome {
    let start = Instant::now();
    let el = |s: &str| ScElement::parse(s, &abc()).unwrap();
    let t = el("v1:c(v2:a(l1:c,l2:b),v3:b(l5:a,l3:a,l4:a))");
    let args = [el("v2:c(v1:c(l1:a,l2:b))"), el("v1:a(v2:b(l1:c),l2:b)"), el("v2:b(l3:a,v1:c(l2:a,l1:a))")];
    let got = compose(&t, &args).unwrap().to_string();
    let elapsed = start.elapsed();
    let want = "v2:c(v1:c(v3:a(v4:b(l1:c),l2:b),v6:b(l4:a,v5:c(l3:a,l5:a))))";
    outcome(got == want && elapsed < COMPOSITION_BUDGET, format!("{got} in {elapsed:?}"))
}

fn profile_example() -> Outcome {
    let x = ScElement::parse("v1:c(v2:a(l2:b,l1:b),v4:b(l4:c,v3:a(),l3:a))", &abc()).unwrap();
    let profile = x.profile();
    let pass = profile.inputs == parse_profile_list("(a,b;c);(b,b;a);(;a);(c,a,a;b)").unwrap()
        && profile.output == p("(b,b,a,c;c)");
    let shown: Vec<String> = profile.inputs.iter().map(|q| q.to_string()).collect();
    outcome(pass, format!("vertices {} boundary {}", shown.join(";"), profile.output))
}

fn law_suite() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(LAW_SEED);
    let mut failures = Vec::new();
    for k in 0..LAW_INSTANCES {
        failures.extend(laws::check_instance(&mut rng, 1 + k % 3));
    }
    let elapsed = start.elapsed();
    let first = failures.first().map(|f| format!(", first: {f}")).unwrap_or_default();
    outcome(
        failures.is_empty() && elapsed < LAWS_BUDGET,
        format!("{LAW_INSTANCES} instances, {} failures, {elapsed:?}{first}", failures.len()),
    )
}

fn round_trips() -> Outcome {
    let fixtures = [
        ("terminal{a,b}≤3", terminal_operad(&[c("a"), c("b")], 3)),
        ("P_Z3", operad_from_monoid(&Monoid::cyclic(3)).unwrap()),
        ("P_(Z4,×)", operad_from_monoid(&Monoid::multiplicative(4)).unwrap()),
        ("Ass≤3", ass_truncated(3)),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, q) in fixtures {
        let rt = roundtrip(&q, ROUNDTRIP_VERTICES, usize::MAX).unwrap();
        let ok = rt.identical && rt.verification.is_ok() && rt.agreement.is_ok();
        pass &= ok;
        parts.push(format!(
            "{name}: identical={} trees={} discrepancies={}",
            rt.identical,
            rt.trees,
            rt.agreement.violations.len()
        ));
    }
    outcome(pass, parts.join("; "))
}

fn permutation_identification() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for boundary in ["(a,a;c)", "(a,a,a;c)"] {
        let q = p(boundary);
        let xs = sc::component(&abc(), &[q.clone()], &q);
        let perms: BTreeSet<Permutation> = xs.iter().map(|x| as_permutation(x).unwrap()).collect();
        let bijective = perms.len() == xs.len() && perms == Permutation::all(q.arity()).into_iter().collect();
        let mut anti = true;
        for x in &xs {
            for y in &xs {
                let z = circ(x, 1, y).unwrap();
                let (px, py) = (as_permutation(x).unwrap(), as_permutation(y).unwrap());
                anti &= as_permutation(&z) == Some(py.compose(&px));
            }
        }
        pass &= bijective && anti;
        parts.push(format!("{boundary}: {} elements, bijective={bijective}, anti-homomorphism={anti}", xs.len()));
    }
    outcome(pass, parts.join("; "))
}

/// `End` of a family, tabulated so that it can be a target of evaluators.
fn end_table(x: &FiniteFamily, max_arity: usize) -> FiniteOperad {
    let end = EndOperad::new(x.clone(), max_arity);
    let support = end.support();
    let elements: BTreeMap<Profile, Vec<Vec<usize>>> =
        support.iter().map(|q| (q.clone(), end.elements(q).unwrap())).collect();
    let mut base = Collection::new(x.colours().cloned());
    for (q, fs) in &elements {
        base.set_component(q.clone(), fs.iter().map(|f| end.show(q, f)).collect()).unwrap();
        for alpha in Permutation::all(q.arity()) {
            let target = &elements[&q.permuted(&alpha)];
            let map = fs.iter().map(|f| target.binary_search(&act_function(x, q, f, &alpha)).unwrap()).collect();
            base.set_action(q.clone(), alpha, map);
        }
    }
    let units = x
        .colours()
        .map(|col| {
            let id: Vec<usize> = (0..x.size(col)).collect();
            (col.clone(), elements[&Profile::identity(col.clone())].binary_search(&id).unwrap())
        })
        .collect();
    FiniteOperad::tabulate(base, units, |outer, f, i, inner, g| {
        let h = compose_functions(x, outer, &elements[outer][f], i, inner, &elements[inner][g]).unwrap();
        Ok(elements[&outer.graft(i, inner).unwrap()].binary_search(&h).unwrap())
    })
    .unwrap()
}

fn adjunction() -> Outcome {
    let mut pair = Collection::new([c("c")]);
    pair.set_component(p("(c;c)"), vec!["u".into()]).unwrap();
    pair.set_component(p("(c,c;c)"), vec!["g".into(), "h".into()]).unwrap();
    pair.set_action(p("(c,c;c)"), Permutation::transposition(2, 1, 2), vec![1, 0]);
    let mut pointed = Collection::new([c("c")]);
    pointed.set_component(p("(;c)"), vec!["k".into()]).unwrap();
    pointed.set_component(p("(c;c)"), vec!["u".into(), "v".into()]).unwrap();
    let operads = [("Ass≤5", ass_truncated(5)), ("End(2 points)≤2", end_table(&FiniteFamily::numbered(&[(c("c"), 2)]), 2))];
    let colours = BTreeSet::from([c("c")]);
    let mut pass = true;
    let mut parts = Vec::new();
    for (kname, k) in [("K1", &pair), ("K2", &pointed)] {
        let free = FreeOperad::new(k.clone(), ADJUNCTION_VERTICES).unwrap();
        for (oname, target) in &operads {
            let gens = CollectionMorphism::enumerate_all(k, target.base());
            let mut morphisms = 0;
            let mut unique = true;
            for gen in &gens {
                let eval = Evaluator::new(&free, target, gen).unwrap();
                morphisms += usize::from(verify_evaluator(&eval).unwrap().is_ok());
                for q in target.support() {
                    for t in free.elements(&q) {
                        let (x, labels) = to_sc_element(&t, &colours).unwrap();
                        let args: Vec<usize> = labels.iter().map(|(r, e)| gen.apply(r, *e).unwrap()).collect();
                        unique &= sc_evaluate(target, &x, &args).ok() == Some(eval.evaluate(&t).unwrap());
                    }
                }
            }
            pass &= !gens.is_empty() && morphisms == gens.len() && unique;
            parts.push(format!("{kname}→{oname}: {morphisms}/{} morphisms, unique={unique}", gens.len()));
        }
    }
    outcome(pass, parts.join("; "))
}

fn oracle_counts() -> Outcome {
    let one = BTreeSet::from([c("c")]);
    let edge = oracle::component(&one, &[], &p("(c;c)")).len();
    let chain = oracle::component(&one, &[p("(c;c)"), p("(c;c)")], &p("(c;c)")).len();
    let mut commutative = Collection::new([c("c")]);
    commutative.set_component(p("(c,c;c)"), vec!["g".into()]).unwrap();
    commutative.set_action(p("(c,c;c)"), Permutation::transposition(2, 1, 2), vec![0]);
    let classes = free_oracle::classes(&commutative, &p("(c,c,c;c)"), 2).len();
    let library_counts = (
        sc::component(&one, &[], &p("(c;c)")).len(),
        sc::component(&one, &[p("(c;c)"), p("(c;c)")], &p("(c;c)")).len(),
        FreeOperad::new(commutative, 2)
            .unwrap()
            .elements(&p("(c,c,c;c)"))
            .iter()
            .filter(|t| t.vertex_count() == 2)
            .count(),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(ORACLE_SEED);
    let queries = gen::component_queries(&mut rng, 40);
    let mismatches = queries
        .iter()
        .filter(|(cs, vs, b)| {
            let lib: BTreeSet<String> = sc::component(cs, vs, b).iter().map(|x| x.to_string()).collect();
            lib != oracle::component(cs, vs, b)
        })
        .count();
    let pass = (edge, chain, classes) == (1, 2, 3)
        && library_counts == (1, 2, 3)
        && queries.len() >= ORACLE_QUERIES
        && mismatches == 0;
    outcome(
        pass,
        format!(
            "oracle {edge}/{chain}/{classes}, library {}/{}/{}, {} random queries, {mismatches} mismatches",
            library_counts.0,
            library_counts.1,
            library_counts.2,
            queries.len()
        ),
    )
}

fn mutation() -> Outcome {
    let fixtures = [
        ("terminal{a,b}≤2", terminal_operad(&[c("a"), c("b")], 2)),
        ("P_Z3", operad_from_monoid(&Monoid::cyclic(3)).unwrap()),
        ("Ass≤3", ass_truncated(3)),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, op) in fixtures {
        let intact = verify_operad(&op).unwrap().is_ok();
        let (mut tried, mut missed) = (0, Vec::new());
        for entry in op.entries() {
            let (current, size) = op.entry(&entry).unwrap();
            // every other value, plus one just out of range
            for value in (0..=size).filter(|&v| v != current) {
                tried += 1;
                let mutant = op.with_entry(&entry, value).unwrap();
                if verify_operad(&mutant).map_or(false, |r| r.is_ok()) {
                    missed.push(format!("{entry:?} := {value}"));
                }
            }
        }
        pass &= intact && missed.is_empty();
        let mut part = format!("{name}: intact={intact}, {}/{tried} detected", tried - missed.len());
        if !missed.is_empty() {
            part.push_str(&format!(", missed {}", missed.join(" ")));
        }
        parts.push(part);
    }
    outcome(pass, parts.join("; "))
}

fn order_four_monoids() -> Vec<Monoid> {
    let names = || (0..4).map(|k| k.to_string()).collect::<Vec<_>>();
    vec![
        Monoid::cyclic(4),
        Monoid::multiplicative(4),
        Monoid::from_fn(names(), 0, |a, b| a ^ b).unwrap(),
        Monoid::from_fn(names(), 0, |a, b| a.max(b)).unwrap(),
        Monoid::from_fn(names(), 0, |a, b| if a == 0 { b } else { a }).unwrap(),
    ]
}

fn modules() -> Outcome {
    let mut monoids: Vec<Monoid> = (1..=3).flat_map(Monoid::all_on).collect();
    monoids.extend(order_four_monoids());
    let mut pass = true;
    let mut structures = 0;
    for r in &monoids {
        let op = operad_from_monoid(r).unwrap();
        let unary = p("(c;c)");
        for n in [2usize, 3].into_iter().filter(|&n| n == 2 || r.size() <= 2) {
            let x = FiniteFamily::numbered(&[(c("c"), n)]);
            // tables[r][v] = r·v, all |X|^(|R||X|) of them
            let cells = r.size() * n;
            let mut as_algebra = BTreeSet::new();
            let mut as_action = BTreeSet::new();
            for code in 0..n.pow(cells as u32) {
                let table: Vec<usize> = (0..cells).map(|k| code / n.pow(k as u32) % n).collect();
                let act = |e: usize, v: usize| table[e * n + v];
                let action = (0..r.size()).map(|e| ((unary.clone(), e), (0..n).map(|v| act(e, v)).collect())).collect();
                if verify_algebra(&AlgebraStructure::new(op.clone(), x.clone(), action)).is_ok() {
                    as_algebra.insert(table.clone());
                }
                let unital = (0..n).all(|v| act(r.unit(), v) == v);
                let associative = (0..r.size())
                    .all(|a| (0..r.size()).all(|b| (0..n).all(|v| act(a, act(b, v)) == act(r.mul(a, b), v))));
                if unital && associative {
                    as_action.insert(table);
                }
            }
            structures += as_action.len();
            pass &= as_algebra == as_action;
        }
    }
    outcome(pass, format!("{} monoids, {structures} module structures, sets equal={pass}", monoids.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("composition example", composition_example),
        ("profile example", profile_example),
        ("tree operad laws", law_suite),
        ("operad round trip", round_trips),
        ("permutation identification", permutation_identification),
        ("free operad adjunction", adjunction),
        ("oracle counts", oracle_counts),
        ("mutation detection", mutation),
        ("module semantics", modules),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        failed += usize::from(!result.pass);
        let verdict = if result.pass { "PASS" } else { "FAIL" };
        println!("{verdict} {}. {name} ({:.2?}): {}", k + 1, start.elapsed(), result.detail);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
