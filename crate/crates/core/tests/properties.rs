use std::sync::Arc;

use monfiber::decompose::{associated_primes, irreducible_decomposition, minimal_primes};
use monfiber::lang::{emit, evaluate, parse_program, Format, Value};
use monfiber::par;
use monfiber::resolution::taylor::taylor_betti;
use monfiber::resolution::{betti_table, socle_test};
use monfiber::symbolic::{symbolic_power, SymbolicMode};
use monfiber::{FieldChar, Monomial, MonomialIdeal, Ring};
use proptest::prelude::*;

fn ring(n: usize) -> Arc<Ring> {
    let names: Vec<String> = (0..n).map(|k| format!("x{k}")).collect();
    Ring::new(&names).unwrap()
}

/// Proper non-zero ideals in `n` variables.
fn ideal_in(n: usize, max_gens: usize, max_exp: u16) -> impl Strategy<Value = MonomialIdeal> {
    let mono =
        prop::collection::vec(0..=max_exp, n).prop_filter("constant", |e| e.iter().any(|&x| x > 0));
    prop::collection::vec(mono, 1..=max_gens).prop_map(move |gens| {
        MonomialIdeal::minimalize(&ring(n), gens.iter().map(|e| Monomial::new(e)).collect())
            .unwrap()
    })
}

fn ideal() -> impl Strategy<Value = MonomialIdeal> {
    (1usize..=4).prop_flat_map(|n| ideal_in(n, 5, 3))
}

fn pair() -> impl Strategy<Value = (MonomialIdeal, MonomialIdeal)> {
    (1usize..=4).prop_flat_map(|n| (ideal_in(n, 4, 3), ideal_in(n, 4, 3)))
}

fn squarefree() -> impl Strategy<Value = MonomialIdeal> {
    (2usize..=5).prop_flat_map(|n| ideal_in(n, 5, 1))
}

fn p2() -> FieldChar {
    FieldChar::new(2).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn lattice_identities((a, b) in pair()) {
        let meet = a.intersect(&b).unwrap();
        let prod = a.product(&b).unwrap();
        prop_assert!(prod.is_subset_of(&meet));
        prop_assert!(meet.is_subset_of(&a) && meet.is_subset_of(&b));
        let colon = a.colon(&b).unwrap();
        prop_assert!(colon.product(&b).unwrap().is_subset_of(&a));
        prop_assert!(a.is_subset_of(&colon));
        prop_assert_eq!(a.sum(&b).unwrap(), b.sum(&a).unwrap());
    }

    #[test]
    fn decomposition_recovers_the_ideal(a in ideal()) {
        let d = irreducible_decomposition(&a).unwrap();
        prop_assert_eq!(d.intersection(a.ring()).unwrap(), a.clone());
        for (k, c) in d.components.iter().enumerate() {
            for (l, e) in d.components.iter().enumerate() {
                prop_assert!(k == l || !e.ideal.is_subset_of(&c.ideal), "redundant component");
            }
        }
        let min = minimal_primes(&a).unwrap();
        prop_assert!(min.is_subset(&associated_primes(&a).unwrap()));
    }

    #[test]
    fn depth_zero_iff_socle(a in ideal()) {
        let depth = betti_table(&a, p2()).unwrap().depth_quotient();
        prop_assert_eq!(depth == 0, socle_test(&a).is_some());
    }

    #[test]
    fn koszul_matches_taylor(a in ideal(), p in prop::sample::select(vec![2u32, 3, 101])) {
        let p = FieldChar::new(p).unwrap();
        prop_assert_eq!(betti_table(&a, p).unwrap(), taylor_betti(&a, p).unwrap());
    }

    #[test]
    fn sequential_and_parallel_agree(a in ideal()) {
        let par_table = betti_table(&a, p2()).unwrap();
        let par_dec = irreducible_decomposition(&a).unwrap();
        par::set_sequential(true);
        let seq_table = betti_table(&a, p2()).unwrap();
        let seq_dec = irreducible_decomposition(&a).unwrap();
        par::set_sequential(false);
        prop_assert_eq!(par_table, seq_table);
        prop_assert_eq!(par_dec.components.len(), seq_dec.components.len());
    }

    #[test]
    fn symbolic_powers_of_squarefree_ideals(a in squarefree(), s in 1u32..=3) {
        // radical ideals: the s-th symbolic power is the intersection of P^s
        let primes = minimal_primes(&a).unwrap();
        let parts = primes.iter().map(|p| p.to_ideal(a.ring()).power(s).unwrap()).collect();
        let oracle = MonomialIdeal::intersect_all(a.ring(), parts).unwrap();
        let sp = symbolic_power(&a, s, SymbolicMode::Ass).unwrap();
        prop_assert_eq!(&sp, &oracle);
        prop_assert!(a.power(s).unwrap().is_subset_of(&sp));
    }

    #[test]
    fn printed_ideals_parse_back(a in ideal()) {
        let vars = a.ring().vars().join(" ");
        let text = format!("ring R=[{vars}]; {a}");
        let v = evaluate(&parse_program(&text).unwrap(), p2()).unwrap();
        let Value::Ideal(b) = &v else { panic!("{v:?}") };
        prop_assert_eq!(b.gens(), a.gens());
        prop_assert_eq!(emit(&v, Format::Text), format!("{a}\n"));
    }
}
