use proptest::prelude::*;

use projheight::cayley::CayleyGraph;
use projheight::digraph::DEFAULT_EXACT_CAP;
use projheight::heights::{height, height_upper_bound, line_bound_certificates, line_height_fast};
use projheight::modular::{canonicalize, is_prime, odd_primes, PrimeModulus, ResidueSet};

fn prime() -> impl Strategy<Value = PrimeModulus> {
    prop::sample::select(odd_primes(3, 400)).prop_map(|p| PrimeModulus::new(p).unwrap())
}

fn small_prime() -> impl Strategy<Value = PrimeModulus> {
    prop::sample::select(vec![5u64, 7, 11, 13]).prop_map(|p| PrimeModulus::new(p).unwrap())
}

proptest! {
    #[test]
    fn reduce_is_least_residue(x in any::<i64>(), p in prime()) {
        let r = p.reduce(x).value() as i128;
        let q = p.get() as i128;
        prop_assert!((0..q).contains(&r));
        prop_assert_eq!((x as i128 - r).rem_euclid(q), 0);
    }

    #[test]
    fn inverse_is_inverse(x in 1i64..i64::MAX, p in prime()) {
        let a = p.reduce(x);
        prop_assume!(!a.is_zero());
        let inv = p.inverse(a).unwrap();
        prop_assert_eq!(p.mul(a, inv).value(), 1);
    }

    #[test]
    fn canonical_form_is_class_invariant(
        raw in prop::collection::vec(-1000i64..1000, 2..5),
        c in 1i64..1000,
        p in prime(),
    ) {
        let Ok(point) = canonicalize(&raw, p) else { return Ok(()) };
        prop_assume!(!p.reduce(c).is_zero());
        let scaled: Vec<i64> = raw.iter().map(|x| x * c).collect();
        let other = canonicalize(&scaled, p).unwrap();
        prop_assert_eq!(&other, &point);
        let again: Vec<i64> = point.coords().iter().map(|r| r.value() as i64).collect();
        prop_assert_eq!(&canonicalize(&again, p).unwrap(), &point);
        let nonzero = raw.iter().filter(|&&x| !p.reduce(x).is_zero()).count();
        prop_assert_eq!(point.d_star(), nonzero);
    }

    #[test]
    fn height_is_bounded_and_reproducible(raw in prop::collection::vec(0i64..400, 2..5), p in prime()) {
        let Ok(point) = canonicalize(&raw, p) else { return Ok(()) };
        let rec = height(&point);
        prop_assert!(rec.height >= 1);
        prop_assert!(rec.height <= height_upper_bound(&point));
        let at_k: u64 = point
            .coords()
            .iter()
            .map(|a| (a.value() as u64 * rec.argmin_k as u64) % p.as_u64())
            .sum();
        prop_assert_eq!(at_k, rec.height);
    }

    #[test]
    fn fast_line_height_is_exact(a in 1i64..400, p in prime()) {
        let a = p.reduce(a);
        prop_assume!(!a.is_zero());
        let fast = line_height_fast(a, p).unwrap();
        let slow = height(&canonicalize(&[1, a.value() as i64], p).unwrap());
        prop_assert_eq!((fast.height, fast.argmin_k), (slow.height, slow.argmin_k));
        for bound in line_bound_certificates(a, p).unwrap() {
            prop_assert!(slow.height <= bound.bound);
        }
    }

    #[test]
    fn deletion_sets_leave_acyclic_graphs(
        raw in prop::collection::btree_set(1i64..13, 1..4),
        k in 1u64..13,
        p in small_prime(),
    ) {
        let raw: Vec<i64> = raw.into_iter().collect();
        let Ok(set) = ResidueSet::new(&raw, p) else { return Ok(()) };
        prop_assume!(k < p.as_u64());
        let g = CayleyGraph::new(set);
        let ds = g.deletion_set(k).unwrap();
        let removed: Vec<(usize, usize)> =
            ds.edges.iter().map(|(u, v)| (u.value() as usize, v.value() as usize)).collect();
        let kept: Vec<_> = g.edge_list().into_iter().filter(|e| !removed.contains(e)).collect();
        prop_assert!(projheight::digraph::is_acyclic(g.vertex_count(), &kept));
        prop_assert_eq!(ds.len() as u64, ds.closed_form_size);
        for (u, v) in &ds.edges {
            prop_assert!(g.has_edge(*u, *v));
        }
    }

    #[test]
    fn scaling_is_a_graph_isomorphism(
        raw in prop::collection::btree_set(1i64..11, 2..4),
        c in 1i64..11,
    ) {
        let p = PrimeModulus::new(11).unwrap();
        let raw: Vec<i64> = raw.into_iter().collect();
        let set = ResidueSet::new(&raw, p).unwrap();
        let scaled = set.scaled(p.reduce(c)).unwrap();
        let (g, h) = (CayleyGraph::new(set), CayleyGraph::new(scaled));
        prop_assert_eq!(g.shortest_cycle(), h.shortest_cycle());
        prop_assert_eq!(g.beta_exact(DEFAULT_EXACT_CAP).unwrap(), h.beta_exact(DEFAULT_EXACT_CAP).unwrap());
        prop_assert_eq!(g.beta_upper().0, h.beta_upper().0);
        prop_assert_eq!(g.gamma(), h.gamma());
    }
}

#[test]
fn is_prime_below_limit() {
    assert!(is_prime(2_147_483_647));
    assert!(!is_prime(2_147_483_649));
}
