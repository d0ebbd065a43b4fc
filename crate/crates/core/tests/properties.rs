use ivpoly::{
    build_d_sequence, build_pi_sequence, crt_solve, factor, fixed_divisor, is_member,
    is_pi_sequence, parse_polynomial, splittings, valuation, verify_d_sequence, Congruence,
    IntPoly, IvpPoly, SubsetSpec, Valuation,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::collection::{btree_set, vec};
use proptest::prelude::*;

fn int_poly(max_degree: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
    vec(-bound..=bound, 1..=max_degree + 1)
        .prop_map(|c| IntPoly::from_i64s(&c))
        .prop_filter("nonzero", |g| !g.is_zero())
}

fn nonconstant(max_degree: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
    int_poly(max_degree, bound).prop_filter("nonconstant", |g| g.degree() > 0)
}

/// Valuations of the greedy p-ordering, choosing the largest element on
/// ties. By Bhargava's invariance these do not depend on the choices.
fn greedy_valuations(elements: &[i64], p: u64) -> Vec<u32> {
    let mut rest = elements.to_vec();
    rest.sort_unstable();
    let mut chosen = vec![rest.remove(0)];
    let mut out = Vec::new();
    while !rest.is_empty() {
        let cost = |x: i64| -> u32 {
            chosen
                .iter()
                .map(|&u| {
                    valuation(&BigInt::from(x - u), p)
                        .unwrap()
                        .finite()
                        .unwrap()
                })
                .sum()
        };
        let best = (0..rest.len())
            .rev()
            .min_by_key(|&i| cost(rest[i]))
            .unwrap();
        out.push(cost(rest[best]));
        chosen.push(rest.remove(best));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn valuation_recovers_exponent(p in prop::sample::select(vec![2u64, 3, 5, 7, 101]), k in 0u32..40, m in 1i64..10_000) {
        let m = if m % p as i64 == 0 { m + 1 } else { m };
        let n = num_traits::pow(BigInt::from(p), k as usize) * m;
        prop_assert_eq!(valuation(&n, p).unwrap(), Valuation::Finite(k));
        prop_assert_eq!(valuation(&-n, p).unwrap(), Valuation::Finite(k));
    }

    #[test]
    fn crt_matches_scan(cs in vec((0i64..40, 1i64..25), 1..4)) {
        let modulus = cs.iter().fold(1i64, |acc, &(_, m)| acc.lcm(&m));
        let expected = (0..modulus).find(|x| cs.iter().all(|&(r, m)| (x - r).rem_euclid(m) == 0));
        let congruences: Vec<_> = cs.iter().map(|&(r, m)| Congruence::new(r, m).unwrap()).collect();
        match crt_solve(&congruences) {
            Ok((x, m)) => {
                prop_assert_eq!(Some(x), expected.map(BigInt::from));
                prop_assert_eq!(m, BigInt::from(modulus));
            }
            Err(_) => prop_assert!(expected.is_none()),
        }
    }

    #[test]
    fn factor_expands_to_input(parts in vec(nonconstant(3, 6), 1..4), c in 1i64..5) {
        let g = parts.iter().product::<IntPoly>().scale(&BigInt::from(c));
        let f = factor(&g).unwrap();
        prop_assert_eq!(f.expand(), g.clone());
        prop_assert!(f.factors.iter().map(|(_, m)| *m as usize).sum::<usize>() >= parts.len());
        for (h, _) in &f.factors {
            prop_assert!(h.degree() > 0 && h.is_primitive() && h.leading_coeff() > BigInt::zero());
        }
    }

    #[test]
    fn splitting_count(mults in vec(1u32..4, 1..4)) {
        // distinct linear factors x - i with multiplicities m_i
        let g: IntPoly = mults
            .iter()
            .enumerate()
            .map(|(i, &m)| IntPoly::linear_root(i as i64).pow(m))
            .product();
        let f = factor(&g).unwrap();
        let total: u64 = mults.iter().map(|&m| u64::from(m) + 1).product();
        let splits = splittings(&f);
        prop_assert_eq!(splits.len() as u64, (total - 1) / 2);
        for (a, b) in &splits {
            prop_assert!(a <= b && a.degree() > 0 && b.degree() > 0);
            prop_assert_eq!(a * b, g.clone());
        }
    }

    #[test]
    fn display_parse_round_trip(g in int_poly(6, 50), d in 1i64..100, negate in any::<bool>()) {
        let g = if negate { -g } else { g };
        let f = IvpPoly::new(g, d).unwrap();
        prop_assert_eq!(parse_polynomial(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn pi_sequence_valuations_are_invariant(
        set in btree_set(-40i64..40, 2..12),
        p in prop::sample::select(vec![2u64, 3, 5]),
    ) {
        let elements: Vec<i64> = set.into_iter().collect();
        let s = SubsetSpec::finite(elements.iter().copied()).unwrap();
        let seq = build_pi_sequence(&s, p, elements.len() - 1).unwrap();
        prop_assert_eq!(seq.step_valuations(), &greedy_valuations(&elements, p)[..]);
        prop_assert!(is_pi_sequence(&s, p, seq.elements()).unwrap());
        let mut reversed = seq.elements().to_vec();
        reversed[1..].reverse();
        let unchanged = reversed == seq.elements();
        if is_pi_sequence(&s, p, &reversed).unwrap() {
            // an accepted reordering must reproduce the same valuation profile
            let again = ivpoly::PiSequence::from_elements(p, reversed).unwrap();
            prop_assert_eq!(again.step_valuations(), seq.step_valuations());
        } else {
            prop_assert!(!unchanged);
        }
    }

    #[test]
    fn d_sequences_verify(d in 2i64..60, k in 0usize..6, which in 0usize..4) {
        let s = [SubsetSpec::all(), SubsetSpec::ap(2, 1).unwrap(), SubsetSpec::squares(), SubsetSpec::primes()][which].clone();
        let d = BigInt::from(d);
        let dseq = build_d_sequence(&s, &d, k).unwrap();
        prop_assert!(verify_d_sequence(&s, &d, dseq.elements()).unwrap());
        for c in dseq.components() {
            for (a, u) in dseq.elements().iter().zip(c.pi.elements()) {
                prop_assert!((a - u).mod_floor(&c.modulus).is_zero());
            }
        }
    }

    #[test]
    fn fixed_divisor_of_finite_set_is_gcd(g in int_poly(4, 20), set in btree_set(-30i64..30, 1..10)) {
        let s = SubsetSpec::finite(set.iter().copied()).unwrap();
        let expected = set.iter().fold(BigInt::zero(), |acc, &a| acc.gcd(&g.eval_i64(a)));
        prop_assert_eq!(fixed_divisor(&g, &s).unwrap(), expected);
    }

    #[test]
    fn membership_over_z_matches_consecutive_values(g in int_poly(5, 30), d in 1i64..50) {
        // integer-valued on Z iff integral at deg + 1 consecutive integers
        let f = IvpPoly::new(g, d).unwrap();
        let expected = (0..=f.degree() as i64).all(|a| (f.g().eval_i64(a) % f.d()).is_zero());
        let m = is_member(&f, &SubsetSpec::all()).unwrap();
        prop_assert_eq!(m.is_member(), expected);
        if let Some(w) = m.witness {
            prop_assert!(!(f.g().eval(&w.element) % f.d()).is_zero());
        }
    }

    #[test]
    fn membership_is_monotone_in_denominator(g in int_poly(4, 30), d in 1i64..30, q in 2i64..6) {
        let all = SubsetSpec::all();
        let coarse = is_member(&IvpPoly::new(g.clone(), d * q).unwrap(), &all).unwrap().is_member();
        let fine = is_member(&IvpPoly::new(g, d).unwrap(), &all).unwrap().is_member();
        prop_assert!(!coarse || fine);
    }
}

#[test]
fn unit_constant_has_fixed_divisor_one() {
    assert!(fixed_divisor(&IntPoly::one(), &SubsetSpec::primes())
        .unwrap()
        .is_one());
}
