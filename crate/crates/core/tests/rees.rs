mod common;

use std::collections::BTreeSet;

use common::*;
use linres::groebner::{minimalize_monomials, IdealGens};
use linres::pipeline::transformed_split;
use linres::poly::{Bidegree, Monomial, MonomialOrder, OrderKind, OrderedRing, Precedence, RingSpec};
use linres::rees::{
    binomial, census_of, compositions, criterion, format_census, rees_presentation, slice_agrees,
    split_linear, strand_of_free, xreg_bound,
};
use linres::Error;

fn drl(prec: Precedence) -> MonomialOrder {
    MonomialOrder::new(OrderKind::DegRevLex, prec)
}

fn t_ring(x: usize, t: usize) -> OrderedRing {
    OrderedRing::new(RingSpec::new(x, t), MonomialOrder::degrevlex())
}

/// Monomial `t^a x^b` from `(var, exponent)` pairs, x first then t.
fn mono(spec: &RingSpec, xs: &[(usize, u32)], ts: &[(usize, u32)]) -> Monomial {
    let mut e = vec![0; spec.nvars()];
    for &(i, v) in xs {
        e[i - 1] = v;
    }
    for &(j, v) in ts {
        e[spec.x_count + j - 1] = v;
    }
    Monomial::from_exponents(e)
}

#[test]
fn two_variables() {
    let base = parse_ideal("ring x1..x2; ideal I = x1, x2;", MonomialOrder::degrevlex());
    let rees = rees_presentation(&base, MonomialOrder::degrevlex()).unwrap();
    assert_eq!(format_census(&rees.census), "(1,1):1");
    let spec = rees.spec();
    let p: Vec<String> = rees.p.elements.iter().map(|g| g.display(&spec).to_string()).collect();
    assert_eq!(p, ["t1*x2 - t2*x1"]);
    // the kernel computed by linear algebra has the same leading monomials
    for (k, j) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
        let oracle = kernel_initial_monomials(&base.gens, &base.ring, rees.t_ring(), k, j);
        let lm = rees.p.leading_monomials();
        let ours: Vec<Monomial> = monomials_of_bidegree(&spec, k, j)
            .into_iter()
            .filter(|m| in_monomial_ideal(&lm, m))
            .collect();
        assert_eq!(
            ours.into_iter().collect::<BTreeSet<_>>(),
            oracle.into_iter().collect::<BTreeSet<_>>()
        );
    }
}

#[test]
fn principal_ideal_has_no_relations() {
    let base = parse_ideal("ring x1..x2; ideal I = x1;", MonomialOrder::degrevlex());
    let rees = rees_presentation(&base, MonomialOrder::degrevlex()).unwrap();
    assert!(rees.p.is_empty());
    assert!(rees.census.is_empty());
}

#[test]
fn mixed_degrees_are_rejected() {
    let base = parse_ideal("ring x1..x2; ideal I = x1, x2^2;", MonomialOrder::degrevlex());
    let err = rees_presentation(&base, MonomialOrder::degrevlex()).unwrap_err();
    assert!(matches!(err, Error::NotEquigenerated));
    assert_eq!(err.to_string(), "ideal must be generated in a single degree");
}

#[test]
fn presentation_is_sound_and_listing_independent() {
    let mut rng = rng(3);
    for case in 0..6 {
        let r = ring(3, 0, MonomialOrder::degrevlex());
        let gens: Vec<_> = (0..3).map(|_| random_homogeneous(&mut rng, &r, 2, 3)).filter(|g| !g.is_zero()).collect();
        let base = IdealGens::new(r.clone(), gens.clone());
        let rees = rees_presentation(&base, drl(Precedence::TBeforeX)).unwrap();
        let spec = rees.spec();
        for g in &rees.p.elements {
            assert!(g.bidegree(&spec).unwrap().is_some(), "case {case}");
            assert!(substitute_t(g, &base.gens, &base.ring, &spec).is_zero(), "case {case}");
        }
        let mut rev = gens.clone();
        rev.reverse();
        let other = rees_presentation(&IdealGens::new(r, rev), drl(Precedence::TBeforeX)).unwrap();
        assert_eq!(other.gb_census, rees.gb_census, "case {case}");
        assert_eq!(other.census, rees.census, "case {case}");
    }
}

#[test]
fn untransformed_split_of_j() {
    let j = preset_ideal("terai-J");
    let order = drl(Precedence::TBeforeX);
    let rees = rees_presentation(&j, order).unwrap();
    let split = transformed_split(&rees, order, None).unwrap();
    assert_eq!(split.g.len(), 60);
    let b: BTreeSet<String> = split.b_strings().into_iter().collect();
    assert_eq!(b, ["t6*x4*x5", "t4*x3*x5", "t4*t6*x5^2"].map(String::from).into());
    assert_eq!(format_census(&split.b_census()), "(1,2):2,(2,2):1");
    let report = criterion(&split, rees.m(), rees.d);
    assert!(!report.passes);
    assert!(report.k0.is_none() && report.conclusion("J").is_none());
}

#[test]
fn linear_generators_pass_at_once() {
    let r = t_ring(2, 2);
    let s = r.spec;
    let g = vec![mono(&s, &[(1, 1)], &[(2, 1)]), mono(&s, &[], &[(1, 2)])];
    let split = split_linear(&IdealGens::from_monomials(r, g), None).unwrap();
    assert!(split.b.is_empty());
    let report = criterion(&split, 2, 2);
    assert!(report.passes);
    assert_eq!(report.k0, Some(1));
    assert_eq!(report.conclusion("I").unwrap(), "reg(I^k) = 2k for all k >= 1");
}

#[test]
fn failing_criterion_names_its_witness() {
    let r = t_ring(2, 2);
    let s = r.spec;
    let b = mono(&s, &[(1, 2)], &[(1, 1)]);
    let g = mono(&s, &[(2, 1)], &[(2, 1)]);
    let split = split_linear(&IdealGens::from_monomials(r, vec![b.clone(), g]), None).unwrap();
    let report = criterion(&split, 2, 2);
    assert!(!report.passes);
    assert_eq!(report.k0, None);
    assert!(report.failures.iter().any(|w| w.b_element == b && w.alpha == [1, 0]));
    // t2 * t1 x1^2 is not divisible by t2 x2 either
    assert_eq!(report.failures.len(), 2);
}

#[test]
fn criterion_checks_every_alpha() {
    // B = {t1 x1^2}, G = all t_j t_1 x_1 style generators covering t1 * B
    let r = t_ring(2, 2);
    let s = r.spec;
    let b = mono(&s, &[(1, 2)], &[(1, 1)]);
    let g1 = mono(&s, &[(1, 1)], &[(1, 2)]);
    let g2 = mono(&s, &[(1, 1)], &[(1, 1), (2, 1)]);
    let split = split_linear(&IdealGens::from_monomials(r.clone(), vec![b.clone(), g1.clone()]), None).unwrap();
    assert!(!criterion(&split, 2, 2).passes);
    let split = split_linear(&IdealGens::from_monomials(r, vec![b, g1, g2]), None).unwrap();
    let report = criterion(&split, 2, 2);
    assert!(report.passes);
    assert_eq!(report.k0, Some(2));
    for k in 2..=3 {
        for j in 0..=4 {
            assert!(slice_agrees(&split, k, j));
        }
    }
}

#[test]
fn compositions_are_exhaustive_and_distinct() {
    for parts in 1..=5 {
        for total in 0..=5 {
            let c = compositions(total, parts);
            let set: BTreeSet<Vec<u32>> = c.iter().cloned().collect();
            assert_eq!(set.len(), c.len());
            let brute: BTreeSet<Vec<u32>> = exponent_vectors(parts, total).into_iter().collect();
            assert_eq!(set, brute);
            assert_eq!(c.len() as u64, binomial((parts - 1 + total as usize) as u64, parts as u64 - 1));
        }
    }
    assert_eq!(compositions(2, 2), [vec![2, 0], vec![1, 1], vec![0, 2]]);
}

#[test]
fn strands() {
    assert!(strand_of_free(&[(1, 2, 1)], 0, 3).is_empty());
    assert_eq!(strand_of_free(&[(1, 3, 1)], 2, 10), [(3, 10)]);
    for m in 1..=4 {
        for k in 0..=4 {
            let n = exponent_vectors(m as usize, k).len() as u64;
            assert_eq!(strand_of_free(&[(0, 0, 1)], k, m), [(0, n)]);
        }
    }
    // shifts with equal b aggregate
    assert_eq!(strand_of_free(&[(0, 4, 1), (1, 4, 2)], 1, 3), [(4, 3 + 2)]);
}

#[test]
fn xreg_bounds() {
    let r = t_ring(3, 13);
    let s = r.spec;
    let linear = vec![mono(&s, &[(1, 1)], &[(1, 1)]), mono(&s, &[], &[(2, 3)])];
    assert_eq!(xreg_bound(&IdealGens::from_monomials(r.clone(), linear), 4, 3).unwrap(), 12);
    let quad = vec![
        mono(&s, &[(1, 2)], &[(1, 1)]),
        mono(&s, &[(2, 1)], &[(2, 1)]),
        mono(&s, &[], &[(3, 2)]),
    ];
    assert_eq!(s.nvars(), 16);
    assert_eq!(xreg_bound(&IdealGens::from_monomials(r, quad), 2, 3).unwrap(), 6 + 3);

    let j = preset_ideal("terai-J");
    let rees = rees_presentation(&j, MonomialOrder::degrevlex()).unwrap();
    let lm = minimalize_monomials(rees.t_ring(), rees.p.leading_monomials());
    let l = lm.len().min(16) as u64;
    let in_p = IdealGens::from_monomials(rees.t_ring().clone(), lm);
    for n in 1..=3 {
        assert_eq!(xreg_bound(&in_p, n, 3).unwrap(), 3 * n as u64 + l);
    }
}

#[test]
fn census_helpers() {
    let s = RingSpec::new(6, 10);
    let m = mono(&s, &[(5, 2)], &[(4, 1), (6, 1)]);
    assert_eq!(m.bidegree(&s).unwrap(), Bidegree::new(2, 2));
    let c = census_of(&s, [&m, &m]);
    assert_eq!(format_census(&c), "(2,2):2");
}
