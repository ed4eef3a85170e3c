//! End-to-end checks through the public API, each against an independent
//! hand computation or a second route through the engine.

use lcass_core::decomp::{associated_primes, is_associated_oracle, PrimeIdeal};
use lcass_core::dimdepth::{depth_k, Depth};
use lcass_core::fgmod::{ext, Module};
use lcass_core::groebner::Ideal;
use lcass_core::polycore::{Field, Ring};
use lcass_core::theorems::{
    ass_lch_formula, ass_top_lch, ext_ass_layers, ext_ass_sets, ExtIdealSpec,
};
use lcass_core::Error;
use proptest::prelude::*;

fn ring() -> Ring {
    Ring::grevlex(Field::prime(32003).unwrap(), ["x", "y"]).unwrap()
}

fn ideal(r: &Ring, g: &[&str]) -> Ideal {
    Ideal::parse(r, g).unwrap()
}

fn gens_of(s: &lcass_core::decomp::AssSet) -> Vec<Vec<String>> {
    s.iter().map(PrimeIdeal::gens).collect()
}

fn sets(v: &[&[&str]]) -> Vec<Vec<String>> {
    v.iter()
        .map(|g| g.iter().map(|s| s.to_string()).collect())
        .collect()
}

#[test]
fn embedded_prime_example() {
    let r = ring();
    let i = ideal(&r, &["x^2", "x*y"]);
    // (x) ∩ (x^2, y) = (x^2, xy) exhibits the primary components
    assert_eq!(
        ideal(&r, &["x"])
            .intersect(&ideal(&r, &["x^2", "y"]))
            .unwrap(),
        i
    );
    // the class of y is annihilated exactly by (x); the class of x by (x, y)
    assert_eq!(i.colon_elem(&r.parse_poly("y").unwrap()), ideal(&r, &["x"]));
    assert_eq!(
        i.colon_elem(&r.parse_poly("x").unwrap()),
        ideal(&r, &["x", "y"])
    );
    let m = Module::cyclic(&i);
    assert_eq!(
        gens_of(&associated_primes(&m).unwrap()),
        sets(&[&["x"], &["x", "y"]])
    );
    let p = |g: &[&str]| PrimeIdeal {
        ideal: ideal(&r, g),
        verified: true,
        dim: ideal(&r, g).dim(),
    };
    assert!(is_associated_oracle(&p(&["x"]), &m).unwrap());
    assert!(!is_associated_oracle(&p(&["y"]), &m).unwrap());
    assert!(!is_associated_oracle(&p(&["x", "y"]), &Module::free(&r, 1)).unwrap());
}

#[test]
fn direct_sum_ass_is_the_union() {
    let r = ring();
    let a = Module::cyclic(&ideal(&r, &["x"]));
    let b = Module::cyclic(&ideal(&r, &["x", "y"]));
    let sum = a.direct_sum(&b).unwrap();
    let union = associated_primes(&a)
        .unwrap()
        .union(&associated_primes(&b).unwrap());
    assert_eq!(associated_primes(&sum).unwrap(), union);
}

#[test]
fn depth_examples() {
    let r = ring();
    let s = Module::free(&r, 1);
    let d = depth_k(&ideal(&r, &["x", "y"]), &s, -1, 42).unwrap();
    assert_eq!(d.value, Depth::Finite(2));
    // the witness generates an m-primary ideal, so it is a maximal regular sequence
    assert_eq!(Ideal::new(&r, d.witness.clone()).unwrap().dim(), 0);
    assert_eq!(
        depth_k(&ideal(&r, &["x"]), &s, 0, 42).unwrap().value,
        Depth::Finite(1)
    );
    assert_eq!(
        depth_k(&ideal(&r, &["x"]), &s, 1, 42).unwrap().value,
        Depth::Infinite
    );
    assert!(matches!(
        depth_k(&ideal(&r, &["x + 1"]), &s, -1, 42),
        Err(Error::NotLocal(_))
    ));
}

#[test]
fn formula_examples() {
    let r = ring();
    let s = Module::free(&r, 1);
    let f = |i: &[&str], m: &Module, n: &Module, k, l| {
        ass_lch_formula(&ideal(&r, i), m, n, k, l, 42)
            .unwrap()
            .union
    };
    assert_eq!(gens_of(&f(&["x"], &s, &s, -1, 1)), sets(&[&["x"]]));
    assert_eq!(
        gens_of(&f(&["x", "y"], &s, &s, -1, 2)),
        sets(&[&["x", "y"]])
    );
    let n = Module::cyclic(&ideal(&r, &["x^2", "x*y"]));
    assert_eq!(
        gens_of(&f(&["x"], &s, &n, 0, 0)),
        sets(&[&["x"], &["x", "y"]])
    );
    assert!(matches!(
        ass_lch_formula(&ideal(&r, &["x", "y"]), &s, &s, -1, 3, 42),
        Err(Error::ExceedsDepth { requested: 3, .. })
    ));
}

#[test]
fn top_examples() {
    let r = ring();
    let s = Module::free(&r, 1);
    let top = |i: &[&str], m: &Module, n: &Module| ass_top_lch(&ideal(&r, i), m, n, 42).unwrap();
    let t = top(&["x", "y"], &s, &s);
    assert_eq!((t.r, gens_of(&t.set)), (2, sets(&[&["x", "y"]])));
    let t = top(&["y"], &Module::cyclic(&ideal(&r, &["x"])), &s);
    assert_eq!(t.i_m, ideal(&r, &["x", "y"]));
    assert_eq!((t.r, gens_of(&t.set)), (2, sets(&[&["x", "y"]])));
    let t = top(&["x"], &s, &Module::cyclic(&ideal(&r, &["x"])));
    assert_eq!((t.r, gens_of(&t.set)), (0, sets(&[&["x"]])));
}

#[test]
fn ext_examples() {
    let r = ring();
    let s = Module::free(&r, 1);
    for t in [1, 2] {
        let xt = ideal(&r, &["x"]).power(t);
        // Ext^1(S/(x^t), S) is S/(x^t)
        assert_eq!(
            ext(1, &Module::cyclic(&xt), &s)
                .unwrap()
                .module
                .annihilator(),
            xt
        );
        let set = ext_ass_sets(
            &ExtIdealSpec::Power {
                ideal: ideal(&r, &["x"]),
                t,
            },
            &s,
            -1,
            1,
            42,
        )
        .unwrap();
        assert_eq!(gens_of(&set), sets(&[&["x"]]));
    }
    let gens = ideal(&r, &["x", "y"]).gens().to_vec();
    let spec = ExtIdealSpec::GeneratorPowers {
        gens,
        exps: vec![2, 1],
    };
    assert_eq!(
        gens_of(&ext_ass_sets(&spec, &s, -1, 2, 42).unwrap()),
        sets(&[&["x", "y"]])
    );
}

fn monomial(a: u32, b: u32) -> String {
    match (a, b) {
        (0, 0) => "1".into(),
        (a, 0) => format!("x^{a}"),
        (0, b) => format!("y^{b}"),
        (a, b) => format!("x^{a}*y^{b}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// For monomial quotients of S, the quotient-sequence sets equal the Ext sets
    /// for every l ≤ depth_k.
    #[test]
    fn formula_matches_ext_on_monomial_quotients(
        exps in prop::collection::vec((0u32..3, 0u32..3), 1..3),
        which in 0usize..3,
        k in -1i32..1,
    ) {
        let r = ring();
        let gens: Vec<String> = exps.iter().filter(|e| **e != (0, 0)).map(|&(a, b)| monomial(a, b)).collect();
        prop_assume!(!gens.is_empty());
        let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
        let n = Module::cyclic(&ideal(&r, &refs));
        let i = ideal(&r, [&["x"][..], &["y"][..], &["x", "y"][..]][which]);
        let s = Module::free(&r, 1);
        let d = depth_k(&i, &n, k, 42).unwrap().value;
        let Some(top) = d.finite() else { return Ok(()) };
        let layers = ext_ass_layers(&ExtIdealSpec::Power { ideal: i.clone(), t: 1 }, &n, k, top).unwrap();
        for l in 0..=top {
            let lhs = ass_lch_formula(&i, &s, &n, k, l, 7).unwrap().union;
            let rhs = layers[..=l].iter().fold(lcass_core::decomp::AssSet::empty(), |a, b| a.union(b));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
