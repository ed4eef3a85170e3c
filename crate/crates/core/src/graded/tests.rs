use super::*;
use crate::decomp::associated_primes;
use crate::polycore::Field;

fn ring() -> Ring {
    Ring::grevlex(Field::prime(32003).unwrap(), ["x", "y"]).unwrap()
}

fn ideal(r: &Ring, g: &[&str]) -> Ideal {
    Ideal::parse(r, g).unwrap()
}

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn primes(r: &Ring, sets: &[&[&str]]) -> AssSet {
    AssSet::new(sets.iter().map(|g| PrimeIdeal::certified(ideal(r, g))))
}

fn free_family(r: &Ring, ys: &[&str]) -> GradedModulePresentation {
    GradedModulePresentation::free(
        GradedAlgebraSpec::polynomial(r, &names(ys)).unwrap(),
        vec![0],
    )
}

/// `R[u]/(x^2, xy, xu)`: `N_0 = S/(x^2, xy)`, `N_n = S/(x)` for `n ≥ 1`.
fn transient_family(r: &Ring) -> GradedModulePresentation {
    let alg = GradedAlgebraSpec::polynomial(r, &names(&["u"])).unwrap();
    let t = alg.total().clone();
    let rels = ["x^2", "x*y", "x*u"]
        .iter()
        .map(|s| vec![t.parse_poly(s).unwrap()])
        .collect();
    GradedModulePresentation::new(alg, vec![0], rels).unwrap()
}

fn all_relations_in(a: &Module, b: &Module) -> bool {
    a.rank() == b.rank() && a.relations().iter().all(|v| b.is_relation(v))
}

#[test]
fn component_examples() {
    let r = ring();
    let c = graded_component(&free_family(&r, &["u"]), 2);
    assert_eq!((c.rank(), c.relations().len()), (1, 0));
    let c = graded_component(&free_family(&r, &["u", "v"]), 1);
    assert_eq!((c.rank(), c.relations().len()), (2, 0));

    let alg = GradedAlgebraSpec::polynomial(&r, &names(&["u", "v"])).unwrap();
    let rel = alg.total().parse_poly("x*u + y*v").unwrap();
    let g = GradedModulePresentation::new(alg, vec![0], vec![vec![rel]]).unwrap();
    let c = graded_component(&g, 1);
    let expect = Module::from_rows(
        &r,
        vec![
            vec![r.parse_poly("x").unwrap()],
            vec![r.parse_poly("y").unwrap()],
        ],
    )
    .unwrap();
    assert!(all_relations_in(&c, &expect) && all_relations_in(&expect, &c));
    assert!(graded_component(&g, 0).relations().is_empty());
}

#[test]
fn inhomogeneous_input_is_rejected() {
    let r = ring();
    let alg = GradedAlgebraSpec::polynomial(&r, &names(&["u"])).unwrap();
    let bad = alg.total().parse_poly("u + x").unwrap();
    assert!(matches!(
        GradedModulePresentation::new(alg.clone(), vec![0], vec![vec![bad.clone()]]),
        Err(Error::NotHomogeneous(_))
    ));
    assert!(matches!(
        GradedAlgebraSpec::new(&r, &names(&["u"]), vec![bad]),
        Err(Error::NotHomogeneous(_))
    ));
    // shifted generators make mixed columns homogeneous
    let t = alg.total();
    let col = vec![t.parse_poly("u").unwrap(), t.parse_poly("x").unwrap()];
    assert!(GradedModulePresentation::new(alg, vec![0, 1], vec![col]).is_ok());
}

#[test]
fn rees_examples() {
    let r = ring();
    let s = Module::free(&r, 1);
    let g = rees_module(&ideal(&r, &["x"]), &s).unwrap();
    assert!(g.algebra().relations().is_empty());
    for n in 0..4 {
        let c = graded_component(&g, n);
        assert!(c.annihilator().is_zero());
        assert_eq!(associated_primes(&c).unwrap(), primes(&r, &[&[]]));
    }

    let g = rees_module(&ideal(&r, &["x^2", "x*y"]), &s).unwrap();
    let t = g.algebra().total();
    let expect = Ideal::parse(t, &["y*u - x*v"]).unwrap();
    assert_eq!(
        Ideal::new(t, g.algebra().relations().to_vec()).unwrap(),
        expect
    );

    let sx2 = Module::cyclic(&ideal(&r, &["x^2"]));
    let g = rees_module(&ideal(&r, &["y"]), &sx2).unwrap();
    for n in 0..4 {
        assert_eq!(graded_component(&g, n).annihilator(), ideal(&r, &["x^2"]));
    }
}

#[test]
fn rees_components_match_powers() {
    let r = ring();
    let s = Module::free(&r, 1);
    for gens in [&["x^2", "x*y"][..], &["x", "y"], &["x*y"], &["x^2", "y^2"]] {
        let i = ideal(&r, gens);
        let g = rees_module(&i, &s).unwrap();
        for n in 0..4u32 {
            let c = graded_component(&g, n as usize);
            // I^n is torsion free of rank one, and so is the component
            assert!(c.annihilator().is_zero(), "{i} n={n}");
            assert_eq!(associated_primes(&c).unwrap(), primes(&r, &[&[]]));
            // N_n / (x, y) N_n has the minimal number of generators of I^n as length
            let fibre = c.quotient_by_ideal(&Ideal::maximal(&r)).unwrap().pruned();
            assert_eq!(
                fibre.pruned().rank(),
                minimal_generator_count(&i.power(n)),
                "{i} n={n}"
            );
        }
    }
}

/// Number of minimal generators of a homogeneous ideal, by the rank of `I/mI`.
fn minimal_generator_count(i: &Ideal) -> usize {
    let r = i.ring();
    let m = Ideal::maximal(r);
    let mi = m.product(i);
    let mut count = 0;
    let mut acc = mi.clone();
    for g in i.gb() {
        if !acc.contains(g) {
            count += 1;
            acc = acc.add_gens(std::slice::from_ref(g));
        }
    }
    count
}

#[test]
fn components_of_sums_are_sums_of_components() {
    let r = ring();
    let a = transient_family(&r);
    let b = rees_module(&ideal(&r, &["y"]), &Module::free(&r, 1)).unwrap();
    let b = GradedModulePresentation::new(a.algebra().clone(), b.degrees().to_vec(), Vec::new())
        .unwrap();
    let sum = a.direct_sum(&b).unwrap();
    for n in 0..4 {
        let lhs = graded_component(&sum, n);
        let rhs = graded_component(&a, n)
            .direct_sum(&graded_component(&b, n))
            .unwrap();
        assert!(all_relations_in(&lhs, &rhs) && all_relations_in(&rhs, &lhs));
    }
}

#[test]
fn report_assembly() {
    let v = |xs: &[usize]| {
        xs.iter()
            .enumerate()
            .map(|(n, &d)| (n, StabValue::Depth(Depth::Finite(d))))
            .collect()
    };
    let rep = StabilizationReport::assemble("q", v(&[0, 1, 1, 1]), 3, 42);
    assert_eq!((rep.verdict, rep.onset), (Verdict::StableInWindow, Some(1)));
    let rep = StabilizationReport::assemble("q", v(&[0, 1, 2, 2]), 3, 42);
    assert_eq!(
        (rep.verdict, rep.onset, rep.stable_value),
        (Verdict::NotStableInWindow, None, None)
    );
    let rep = StabilizationReport::assemble("q", v(&[1, 1]), 3, 42);
    assert!(!rep.is_stable());
    assert!(Sampling::new(3, 2, 3).is_err());
    assert!(Sampling::new(0, 2, 1).is_err());
}

#[test]
fn stabilize_ass_examples() {
    let r = ring();
    let s = Sampling::new(0, 6, 3).unwrap();
    let rep = stabilize_ass(&free_family(&r, &["u"]), s, 42).unwrap();
    assert_eq!(
        (rep.onset, rep.stable_value),
        (Some(0), Some(StabValue::Set(primes(&r, &[&[]]))))
    );
    let g = rees_module(&ideal(&r, &["y"]), &Module::cyclic(&ideal(&r, &["x^2"]))).unwrap();
    let rep = stabilize_ass(&g, s, 42).unwrap();
    assert_eq!(
        (rep.onset, rep.stable_value),
        (Some(0), Some(StabValue::Set(primes(&r, &[&["x"]]))))
    );
    let g = rees_module(&ideal(&r, &["x^2", "x*y"]), &Module::free(&r, 1)).unwrap();
    let rep = stabilize_ass(&g, s, 42).unwrap();
    assert_eq!(
        (rep.onset, rep.stable_value),
        (Some(0), Some(StabValue::Set(primes(&r, &[&[]]))))
    );
    let rep = stabilize_ass(&transient_family(&r), s, 42).unwrap();
    assert_eq!(
        rep.values[0].1,
        StabValue::Set(primes(&r, &[&["x"], &["x", "y"]]))
    );
    assert_eq!(
        (rep.onset, rep.stable_value),
        (Some(1), Some(StabValue::Set(primes(&r, &[&["x"]]))))
    );
}

#[test]
fn stabilize_depth_examples() {
    let r = ring();
    let s = Sampling::new(0, 5, 3).unwrap();
    let m = ideal(&r, &["x", "y"]);
    let rep = stabilize_depth_k(&free_family(&r, &["u"]), &m, -1, s, 42).unwrap();
    assert_eq!(rep.stable_value, Some(StabValue::Depth(Depth::Finite(2))));
    let g = rees_module(&ideal(&r, &["y"]), &Module::cyclic(&ideal(&r, &["x^2"]))).unwrap();
    let rep = stabilize_depth_k(&g, &ideal(&r, &["y"]), -1, s, 42).unwrap();
    assert_eq!(
        (rep.onset, rep.stable_value),
        (Some(0), Some(StabValue::Depth(Depth::Finite(1))))
    );
    // dim N_n/yN_n = 0 = k, so the depth is infinite in every degree
    let rep = stabilize_depth_k(&g, &ideal(&r, &["y"]), 0, s, 42).unwrap();
    assert_eq!(
        (rep.onset, rep.stable_value),
        (Some(0), Some(StabValue::Depth(Depth::Infinite)))
    );
}

#[test]
fn common_sequence_examples() {
    let r = ring();
    let s = Sampling::new(0, 5, 3).unwrap();
    let cs = common_sequence(&free_family(&r, &["u"]), &ideal(&r, &["x", "y"]), -1, s, 42).unwrap();
    assert_eq!(cs.r, 2);
    assert!(cs.valid_past_onset && cs.table.iter().all(|(_, c)| c.holds));
    let g = rees_module(&ideal(&r, &["y"]), &Module::cyclic(&ideal(&r, &["x^2"]))).unwrap();
    let cs = common_sequence(&g, &ideal(&r, &["y"]), -1, s, 42).unwrap();
    assert_eq!(cs.sequence, vec![r.parse_poly("y").unwrap()]);
    assert!(cs.table.iter().all(|(_, c)| c.holds));

    let cs = common_sequence(&transient_family(&r), &ideal(&r, &["x", "y"]), -1, s, 42).unwrap();
    assert_eq!((cs.r, cs.onset), (1, 1));
    assert!(cs.valid_past_onset);
    assert!(!cs.table[0].1.holds);
}

#[test]
fn theorem_set_examples() {
    let r = ring();
    let s = Sampling::new(0, 4, 3).unwrap();
    let free = Module::free(&r, 1);
    let rep = stabilize_theorem_sets(
        &free_family(&r, &["u"]),
        &ideal(&r, &["x"]),
        &free,
        -1,
        1,
        s,
        42,
    )
    .unwrap();
    assert_eq!(
        rep.report.stable_value,
        Some(StabValue::Set(primes(&r, &[&["x"]])))
    );
    assert!(rep.rows.iter().all(|row| row.ext_agrees == Some(true)));
    // l = r at k = -1: the union is the top set
    assert!(rep
        .rows
        .iter()
        .all(|row| row.top_set.as_ref() == Some(&primes(&r, &[&["x"]]))));

    let g = rees_module(&ideal(&r, &["y"]), &Module::cyclic(&ideal(&r, &["x^2"]))).unwrap();
    let rep = stabilize_theorem_sets(&g, &ideal(&r, &["y"]), &free, -1, 1, s, 42).unwrap();
    assert_eq!(
        (rep.report.onset, rep.report.stable_value),
        (Some(0), Some(StabValue::Set(primes(&r, &[&["x", "y"]]))))
    );
    assert!(rep.rows.iter().all(|row| row.ext_agrees == Some(true)));

    // k above every dimension: infinite depth, sets still computed
    let rep = stabilize_theorem_sets(&g, &ideal(&r, &["y"]), &free, 1, 1, s, 42).unwrap();
    assert!(rep
        .rows
        .iter()
        .all(|row| row.unproven_regime && row.depth == Depth::Infinite));
    assert_eq!(
        rep.report.stable_value,
        Some(StabValue::Set(AssSet::empty()))
    );

    // l above the depth is declined per degree
    let rep = stabilize_theorem_sets(&g, &ideal(&r, &["y"]), &free, -1, 2, s, 42).unwrap();
    assert!(rep
        .report
        .values
        .iter()
        .all(|(_, v)| matches!(v, StabValue::Declined(_))));
}

#[test]
fn transient_family_theorem_sets_stabilize_after_depth() {
    let r = ring();
    let s = Sampling::new(0, 6, 3).unwrap();
    let g = transient_family(&r);
    let m = ideal(&r, &["x", "y"]);
    let depth = stabilize_depth_k(&g, &m, -1, s, 42).unwrap();
    let sets = stabilize_theorem_sets(&g, &m, &Module::free(&r, 1), -1, 1, s, 42).unwrap();
    assert!(depth.is_stable() && sets.report.is_stable());
    let start = depth.onset.unwrap().max(sets.report.onset.unwrap());
    for (row, (n, v)) in sets.rows.iter().zip(&sets.report.values) {
        if *n >= start {
            assert_eq!(Some(v), sets.report.stable_value.as_ref());
            assert!(row.depth.admits(1));
        }
    }
}
