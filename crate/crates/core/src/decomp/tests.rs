use super::*;
use crate::error::Error;
use crate::fgmod::Module;
use crate::polycore::{Field, Ring};

fn ring_p(p: u32, vars: &[&str]) -> Ring {
    Ring::grevlex(Field::prime(p).unwrap(), vars.iter().copied()).unwrap()
}

fn ring(vars: &[&str]) -> Ring {
    ring_p(32003, vars)
}

fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
    Ideal::parse(r, gens).unwrap()
}

fn prime_texts(s: &AssSet) -> Vec<Vec<String>> {
    s.iter().map(|p| p.gens()).collect()
}

fn strs(v: &[&[&str]]) -> Vec<Vec<String>> {
    v.iter()
        .map(|g| g.iter().map(|s| s.to_string()).collect())
        .collect()
}

#[test]
fn minimal_primes_examples() {
    let r = ring(&["x", "y"]);
    assert_eq!(
        prime_texts(&minimal_primes(&ideal(&r, &["x^2", "x*y"])).unwrap()),
        strs(&[&["x"]])
    );
    assert_eq!(
        prime_texts(&minimal_primes(&ideal(&r, &["x*y"])).unwrap()),
        strs(&[&["x"], &["y"]])
    );
    assert!(minimal_primes(&Ideal::unit(&r)).unwrap().is_empty());

    let r13 = ring_p(13, &["x", "y"]);
    let mp = minimal_primes(&ideal(&r13, &["x^2 + y^2"])).unwrap();
    let expect = AssSet::new([
        PrimeIdeal::certified(ideal(&r13, &["x - 5*y"])),
        PrimeIdeal::certified(ideal(&r13, &["x + 5*y"])),
    ]);
    assert_eq!(mp, expect);
    assert!(mp.iter().all(|p| p.verified && p.dim == 1));
}

#[test]
fn general_path_examples() {
    let r = ring(&["x", "y", "z"]);
    // the line x = y = z and a conjugate pair of lines (no cube roots of unity mod 32003)
    let mp = minimal_primes(&ideal(&r, &["y^2 - x*z", "x*y - z^2", "x^2 - y*z"])).unwrap();
    assert_eq!(mp.len(), 2);
    assert!(mp.iter().all(|p| p.dim == 1));
    // the twisted cubic cone is prime
    let r4 = ring(&["x", "y", "z", "w"]);
    let tc = ideal(&r4, &["x*z - y^2", "y*w - z^2", "x*w - y*z"]);
    let mp = minimal_primes(&tc).unwrap();
    assert_eq!(mp.len(), 1);
    assert_eq!(mp.primes()[0].ideal, tc);
    assert_eq!(mp.primes()[0].dim, 2);
    // two planes and a line
    let i = ideal(&r, &["x*z", "y*z"]);
    assert_eq!(
        prime_texts(&minimal_primes(&i).unwrap()),
        strs(&[&["x", "y"], &["z"]])
    );
    // circle meets line in two points over a field containing sqrt(2)? 32003 = 3 mod 8, so no
    let i = ideal(&r, &["x^2 + y^2 - 1", "x - y", "z"]);
    let mp = minimal_primes(&i).unwrap();
    assert_eq!(mp.len(), 1);
    assert_eq!(mp.primes()[0].dim, 0);
    // two rational points
    let i = ideal(&r, &["x^2 - 1", "y - x", "z"]);
    assert_eq!(minimal_primes(&i).unwrap().len(), 2);
    // irreducible quadrics with a common split structure
    let i = ideal(&r, &["x^2 - 2", "y^2 - 2"]);
    let mp = minimal_primes(&i).unwrap();
    assert_eq!(mp.len(), 2);
    assert!(mp.iter().all(|p| p.dim == 1));
}

#[test]
fn rationals_support_only_monomial_and_linear() {
    let r = Ring::grevlex(Field::Rationals, ["x", "y"]).unwrap();
    assert_eq!(
        minimal_primes(&ideal(&r, &["x*y", "x^2"])).unwrap().len(),
        1
    );
    assert_eq!(minimal_primes(&ideal(&r, &["x - y"])).unwrap().len(), 1);
    assert!(matches!(
        minimal_primes(&ideal(&r, &["x^2 + y^2"])),
        Err(Error::UnsupportedField(_))
    ));
}

#[test]
fn associated_primes_examples() {
    let r = ring(&["x", "y"]);
    let n = Module::cyclic(&ideal(&r, &["x^2", "x*y"]));
    let ass = associated_primes(&n).unwrap();
    let expect = AssSet::new([
        PrimeIdeal::certified(ideal(&r, &["x"])),
        PrimeIdeal::certified(ideal(&r, &["x", "y"])),
    ]);
    assert_eq!(ass, expect);
    assert_eq!(
        ass.canonical().iter().map(|(_, d)| *d).collect::<Vec<_>>(),
        vec![1, 0]
    );
    // the hand decomposition (x) ∩ (x^2, y)
    assert_eq!(
        ideal(&r, &["x"])
            .intersect(&ideal(&r, &["x^2", "y"]))
            .unwrap(),
        ideal(&r, &["x^2", "x*y"])
    );

    let p = ideal(&r, &["x^2 + y^3"]);
    let ass = associated_primes(&Module::cyclic(&p)).unwrap();
    assert_eq!(ass.len(), 1);
    assert_eq!(ass.primes()[0].ideal, p);

    let sum = Module::cyclic(&ideal(&r, &["x"]))
        .direct_sum(&Module::cyclic(&ideal(&r, &["x", "y"])))
        .unwrap();
    assert_eq!(
        associated_primes(&sum).unwrap(),
        associated_primes(&n).unwrap()
    );
    let free = associated_primes(&Module::free(&r, 2)).unwrap();
    assert_eq!(free.len(), 1);
    assert!(free.primes()[0].ideal.is_zero());
    assert!(associated_primes(&Module::free(&r, 0)).unwrap().is_empty());
}

#[test]
fn oracle_examples() {
    let r = ring(&["x", "y"]);
    let n = Module::cyclic(&ideal(&r, &["x^2", "x*y"]));
    let px = PrimeIdeal::certified(ideal(&r, &["x"]));
    let py = PrimeIdeal::certified(ideal(&r, &["y"]));
    let m = PrimeIdeal::certified(ideal(&r, &["x", "y"]));
    assert!(is_associated_oracle(&px, &n).unwrap());
    assert!(!is_associated_oracle(&py, &n).unwrap());
    assert!(is_associated_oracle(&m, &n).unwrap());
    assert!(!is_associated_oracle(&m, &Module::free(&r, 1)).unwrap());
}

#[test]
fn ass_set_operations() {
    let r = ring(&["x", "y"]);
    let n = Module::cyclic(&ideal(&r, &["x^2", "x*y"]));
    let ass = associated_primes(&n).unwrap();
    assert_eq!(ass.with_dim(1, false).len(), 1);
    assert_eq!(ass.with_dim(0, true).len(), 1);
    assert_eq!(ass.with_dim(-1, false), ass);
    assert_eq!(ass.in_variety(&ideal(&r, &["y"])).len(), 1);
    assert_eq!(ass.union(&ass), ass);
    let shifted = AssSet::new([PrimeIdeal::certified(ideal(&r, &["x - 1"]))]);
    assert!(shifted.local().is_empty());
    assert_eq!(ass.local(), ass);
}

fn corpus_ideals(r: &Ring) -> Vec<Ideal> {
    [
        &["x^2", "x*y"][..],
        &["x*y", "y*z"],
        &["x^2 - y*z", "y^2 - x*z"],
        &["x^3", "y^2", "x*z"],
        &["x*y*z"],
        &["x^2 + y^2 + z^2"],
        &["x*y - z^2", "x^2*y"],
        &["x^2 - y^2", "z*(x - y)"],
        &["y^2 - x^3", "z"],
        &["(x + y)^2", "x*z"],
    ]
    .iter()
    .map(|g| ideal(r, g))
    .collect()
}

#[test]
fn minimal_primes_cover_the_radical() {
    let r = ring(&["x", "y", "z"]);
    for i in corpus_ideals(&r) {
        let mp = minimal_primes(&i).unwrap();
        assert!(!mp.is_empty());
        let mut inter = Ideal::unit(&r);
        for p in mp.iter() {
            assert!(p.verified);
            assert!(i.is_subset(&p.ideal), "{i} ⊄ {p}");
            assert_eq!(p.dim, p.ideal.dim());
            inter = inter.intersect(&p.ideal).unwrap();
        }
        assert!(
            inter.radical_subset(&i) && i.radical_subset(&inter),
            "{i}: {mp}"
        );
        for p in mp.iter() {
            for q in mp.iter() {
                assert!(p == q || !q.ideal.is_subset(&p.ideal));
            }
        }
    }
}

#[test]
fn monomial_path_agrees_with_general_path() {
    let r = ring(&["x", "y", "z"]);
    for gens in [
        &["x*y", "y*z"][..],
        &["x^2*y", "z^3"],
        &["x*y*z"],
        &["x^2", "x*y", "y*z^2"],
    ] {
        let i = ideal(&r, gens);
        let fast = minimal_primes(&i).unwrap();
        // the same ideal after a triangular change of coordinates is not monomial
        let sub = r.parse_poly("x + y").unwrap();
        let twisted =
            Ideal::new(&r, i.gens().iter().map(|g| g.substitute(0, &sub)).collect()).unwrap();
        assert!(!twisted.is_monomial());
        let general = minimal_primes(&twisted).unwrap();
        let back = r.parse_poly("x - y").unwrap();
        let untwisted: AssSet = general
            .iter()
            .map(|p| {
                let g = p
                    .ideal
                    .gens()
                    .iter()
                    .map(|g| g.substitute(0, &back))
                    .collect();
                PrimeIdeal::certified(Ideal::new(&r, g).unwrap())
            })
            .collect();
        assert_eq!(fast, untwisted, "{i}");
    }
}

#[test]
fn seeds_agree_on_sets() {
    let r = ring(&["x", "y", "z"]);
    for i in corpus_ideals(&r) {
        let a = minimal_primes_seeded(&i, 42).unwrap();
        let b = minimal_primes_seeded(&i, 4242).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, minimal_primes_seeded(&i, 42).unwrap());
    }
}

fn corpus_modules(r: &Ring) -> Vec<Module> {
    let mut out: Vec<Module> = corpus_ideals(r).iter().map(Module::cyclic).collect();
    let m = |rows: &[&[&str]]| {
        Module::from_rows(
            r,
            rows.iter()
                .map(|row| row.iter().map(|s| r.parse_poly(s).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    };
    out.push(m(&[&["x", "y", "0"], &["0", "x", "z"]]));
    out.push(m(&[&["x*y", "z^2"], &["0", "x"]]));
    out.push(
        Module::cyclic(&ideal(r, &["x"]))
            .direct_sum(&Module::cyclic(&ideal(r, &["x", "y"])))
            .unwrap(),
    );
    out
}

#[test]
fn ehv_agrees_with_oracle() {
    let r = ring(&["x", "y", "z"]);
    for m in corpus_modules(&r) {
        let ass = associated_primes(&m).unwrap();
        let candidates = ehv_candidates(&m, DEFAULT_SEED).unwrap();
        let by_oracle: AssSet = candidates
            .iter()
            .filter(|p| is_associated_oracle(p, &m).unwrap())
            .cloned()
            .collect();
        assert_eq!(ass, by_oracle, "{m:?}");
        // Min(Ann M) ⊆ Ass M ⊆ V(Ann M)
        let ann = m.annihilator();
        assert!(minimal_primes(&ann).unwrap().is_subset(&ass));
        assert!(ass.iter().all(|p| p.contains_ideal(&ann)));
    }
}
