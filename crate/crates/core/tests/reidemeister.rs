use annular_core::gen::{random_ri, random_rii, random_riii};
use annular_core::invariant::{link_class, unit_ratio};
use annular_core::kauffman::framed_polynomial;
use annular_core::ladder::braid_closure;
use annular_core::skein::multiply;
use annular_core::SkeinElement;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn second_move() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..40 {
        let n = rng.gen_range(1..=3);
        let p = random_rii(&mut rng, n, 3, 4);
        assert_eq!(
            link_class(&p.before).unwrap(),
            link_class(&p.after).unwrap(),
            "{p:?}"
        );
    }
}

#[test]
fn third_move() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..30 {
        let n = rng.gen_range(1..=3);
        let p = random_riii(&mut rng, n, 3, 3);
        assert_eq!(
            link_class(&p.before).unwrap(),
            link_class(&p.after).unwrap(),
            "{p:?}"
        );
    }
}

#[test]
fn first_move_is_a_unit() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..30 {
        let n = rng.gen_range(1..=3);
        let k = random_ri(&mut rng, n, 3, 3);
        let walled = link_class(&k.walled).unwrap();
        assert!(
            unit_ratio(&link_class(&k.kinked).unwrap(), &walled).is_some(),
            "{k:?}"
        );
    }
}

#[test]
fn wall_carries_the_n_circle() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..10 {
        let n = rng.gen_range(1..=3);
        let k = random_ri(&mut rng, n, 2, 3);
        let expected = multiply(&SkeinElement::circle(n), &link_class(&k.plain).unwrap());
        assert_eq!(link_class(&k.walled).unwrap(), expected);
    }
}

#[test]
fn kink_factor_matches_bracket_framing() {
    // framed bracket of a one-crossing unknot over the plain unknot
    let unknot = framed_polynomial(&braid_closure(2, &[1], &[]).unwrap()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    let mut seen = 0;
    while seen < 10 {
        let k = random_ri(&mut rng, 2, 2, 3);
        if k.color != 1 {
            continue;
        }
        let kinked = framed_polynomial(&braid_closure(2, &[1, 1], &[(1, k.sign)]).unwrap()).unwrap();
        let expected = kinked.monomial_ratio(&unknot).unwrap();
        let r = unit_ratio(&link_class(&k.kinked).unwrap(), &link_class(&k.walled).unwrap());
        assert_eq!(r, Some(expected));
        seen += 1;
    }
}
