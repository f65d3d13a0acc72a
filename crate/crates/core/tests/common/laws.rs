//! One randomised instance of each law of the tree operad.

use operad_forge::sc::{circ, compose, sigma_action, unit, ScElement};
use rand::Rng;

use super::gen::{arguments, direct_sum, random_permutation, random_tree};

/// Checks unit, associativity, both equivariances and the agreement of
/// `∘_i` with full composition on one random instance. Returns the names of
/// the laws that failed, with the instance.
pub fn check_instance(rng: &mut impl Rng, n_colours: usize) -> Vec<String> {
    let colours = super::gen::palette(n_colours);
    let x = random_tree(rng, &colours, 3);
    let n = x.vertex_count();
    let ys = arguments(rng, &x, 2);
    let mut failures = Vec::new();
    let mut fail = |law: &str, detail: String| failures.push(format!("{law}: {detail}"));

    let xy = compose(&x, &ys).expect("arguments match vertex profiles");

    // units
    let root_unit = unit(&colours, &x.boundary()).unwrap();
    if compose(&root_unit, &[x.clone()]).unwrap() != x {
        fail("left unit", x.to_string());
    }
    let units: Vec<ScElement> = x.profile().inputs.iter().map(|p| unit(&colours, p).unwrap()).collect();
    if compose(&x, &units).unwrap() != x {
        fail("right unit", x.to_string());
    }

    // associativity: second-level arguments go into the vertices of each y_i
    let zs: Vec<Vec<ScElement>> = ys.iter().map(|y| arguments(rng, y, 1)).collect();
    let flat: Vec<ScElement> = zs.iter().flatten().cloned().collect();
    let lhs = compose(&xy, &flat).unwrap();
    let inner: Vec<ScElement> = ys.iter().zip(&zs).map(|(y, z)| compose(y, z).unwrap()).collect();
    let rhs = compose(&x, &inner).unwrap();
    if lhs != rhs {
        fail("associativity", format!("{x} with {ys:?}: {lhs} vs {rhs}"));
    }

    // outer equivariance
    let alpha = random_permutation(rng, n);
    let permuted_args = alpha.permute_right(&ys);
    let sizes: Vec<usize> = permuted_args.iter().map(ScElement::vertex_count).collect();
    let lhs = compose(&sigma_action(&x, &alpha).unwrap(), &permuted_args).unwrap();
    let rhs = sigma_action(&xy, &alpha.block(&sizes)).unwrap();
    if lhs != rhs {
        fail("outer equivariance", format!("{x}·{alpha}: {lhs} vs {rhs}"));
    }

    // inner equivariance
    let betas: Vec<_> = ys.iter().map(|y| random_permutation(rng, y.vertex_count())).collect();
    let acted: Vec<ScElement> = ys.iter().zip(&betas).map(|(y, b)| sigma_action(y, b).unwrap()).collect();
    let lhs = compose(&x, &acted).unwrap();
    let rhs = sigma_action(&xy, &direct_sum(&betas)).unwrap();
    if lhs != rhs {
        fail("inner equivariance", format!("{x}: {lhs} vs {rhs}"));
    }

    // ∘_i against full composition with units elsewhere
    if n > 0 {
        let i = rng.gen_range(1..=n);
        let mut args = units.clone();
        args[i - 1] = ys[i - 1].clone();
        let lhs = circ(&x, i, &ys[i - 1]).unwrap();
        let rhs = compose(&x, &args).unwrap();
        if lhs != rhs {
            fail("circ/compose agreement", format!("{x} ∘_{i} {}: {lhs} vs {rhs}", ys[i - 1]));
        }
    }
    failures
}
