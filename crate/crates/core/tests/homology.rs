mod common;

use common::*;
use linres::groebner::{ideal_power, minimalize_monomials, IdealGens};
use linres::homology::{
    betti_of_monomials, betti_table, koszul_subcomplex, lcm_lattice, regularity_mon,
    SimplicialComplex,
};
use linres::poly::{MonomialOrder, OrderedRing, Polynomial, RingSpec};

fn xy() -> IdealGens {
    parse_ideal("ring x1..x2; ideal I = x1, x2;", MonomialOrder::degrevlex())
}

#[test]
fn koszul_subcomplexes() {
    let gens = xy().monomials().unwrap();
    let k = koszul_subcomplex(&gens, &mono(&[1, 1]));
    assert_eq!(k.faces(), [0b00, 0b01, 0b10]);
    assert!(!k.contains(0b11));

    let x = [mono(&[1, 0])];
    let k = koszul_subcomplex(&x, &mono(&[1, 0]));
    assert_eq!(k.faces(), [0]);
    let k = koszul_subcomplex(&x, &mono(&[0, 1]));
    assert!(k.is_void());
}

#[test]
fn sphere_homology() {
    // boundary of a triangle and of a tetrahedron
    let circle = SimplicialComplex::from_facets(3, &[0b011, 0b110, 0b101]);
    assert_eq!(circle.reduced_homology(1), 1);
    assert_eq!(circle.reduced_homology(0), 0);
    let sphere = SimplicialComplex::from_facets(4, &[0b0111, 0b1011, 0b1101, 0b1110]);
    assert_eq!(sphere.reduced_homology(2), 1);
    assert_eq!(sphere.reduced_homology(1), 0);
    let two_points = SimplicialComplex::from_facets(2, &[0b01, 0b10]);
    assert_eq!(two_points.reduced_homology(0), 1);
    assert_eq!(SimplicialComplex::void(2).reduced_homology(-1), 0);
    assert_eq!(SimplicialComplex::from_facets(2, &[0]).reduced_homology(-1), 1);
}

#[test]
fn two_variables() {
    let t = betti_table(&xy()).unwrap();
    assert_eq!(t.entries.len(), 2);
    assert_eq!(t.get(0, 1), 2);
    assert_eq!(t.get(1, 2), 1);
    assert_eq!(regularity_mon(&xy()).unwrap(), 1);
}

#[test]
fn terai_powers() {
    let j = preset_ideal("terai-J");
    let table = betti_table(&j).unwrap();
    assert_eq!(table.regularity(), Some(3));
    assert_eq!(table.quotient().entries, taylor_betti_quotient(&j.monomials().unwrap()));
    let j2 = ideal_power(&j, 2).unwrap();
    let t2 = betti_table(&j2).unwrap();
    assert_eq!(t2.regularity(), Some(7));
    // the only nonlinear entry
    assert_eq!(t2.get(5, 12), 1);
    let chi = t2.quotient().euler_characteristic();
    let monos = j2.monomials().unwrap();
    for d in 0..=9 {
        assert_eq!(
            coefficient_from_euler(&chi, 6, d),
            standard_count(&monos, 6, d) as i64,
            "degree {d}"
        );
    }
}

#[test]
fn taylor_agreement_on_random_ideals() {
    let mut rng = rng(21);
    for case in 0..30 {
        let n = 2 + case % 4;
        let r = OrderedRing::new(RingSpec::new(n, 0), MonomialOrder::degrevlex());
        let gens = minimalize_monomials(&r, random_monomials(&mut rng, n, 6, 3));
        let table = betti_of_monomials(&gens);
        assert_eq!(table.quotient().entries, taylor_betti_quotient(&gens), "case {case}");
        let lattice = lcm_lattice(&gens);
        for g in &gens {
            assert!(lattice.contains(g));
        }
    }
}

#[test]
fn non_monomial_input_is_an_error() {
    let i = parse_ideal("ring x1..x2; ideal I = x1 + x2;", MonomialOrder::degrevlex());
    assert!(betti_table(&i).is_err());
    let r = OrderedRing::new(RingSpec::new(2, 0), MonomialOrder::degrevlex());
    let zero = IdealGens::new(r.clone(), vec![]);
    assert!(regularity_mon(&zero).is_err());
    let _ = Polynomial::var(&r, 0);
}

#[test]
fn render_lists_rows_by_shift() {
    let t = betti_table(&xy()).unwrap().quotient();
    let text = t.render();
    assert!(text.lines().count() >= 2, "{text}");
    assert_eq!(t.projective_dimension(), Some(2));
}
