use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

use chartheta::classes::conjugacy_data;
use chartheta::cyclotomic::CycloNum;
use chartheta::group::generate_group;
use chartheta::perm::Permutation;

fn cyclo(max_n: u64) -> impl Strategy<Value = CycloNum> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(-5i64..=5, 0..=(2 * n as usize)).prop_map(move |c| {
            CycloNum::from_powers(n, c.into_iter().map(BigInt::from).collect())
        })
    })
}

fn same_field(max_n: u64) -> impl Strategy<Value = (CycloNum, CycloNum, CycloNum)> {
    (1..=max_n).prop_flat_map(|n| {
        let one = move || {
            prop::collection::vec(-4i64..=4, n as usize)
                .prop_map(move |c| CycloNum::from_powers(n, c.into_iter().map(BigInt::from).collect()))
        };
        (one(), one(), one())
    })
}

fn permutation(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_laws((a, b, c) in same_field(30)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn mixed_conductors(a in cyclo(12), b in cyclo(12)) {
        let m = a.conductor().lcm(&b.conductor());
        let sum = &a + &b;
        prop_assert_eq!(sum.conductor(), m);
        prop_assert_eq!(sum, &a.cast(m).unwrap() + &b.cast(m).unwrap());
    }

    #[test]
    fn canonical_form_is_sound(n in 1u64..=40, raw in prop::collection::vec(-5i64..=5, 0..=80)) {
        let a = CycloNum::from_powers(n, raw.iter().map(|&c| BigInt::from(c)).collect());
        let phi = (1..=n).filter(|k| k.gcd(&n) == 1).count();
        prop_assert_eq!(a.coeffs().len(), phi);
        // The reduced vector evaluates to the same complex number as the raw sum.
        let turn = std::f64::consts::TAU / n as f64;
        let direct: num_complex::Complex64 = raw
            .iter()
            .enumerate()
            .map(|(k, &c)| num_complex::Complex64::from_polar(c as f64, turn * k as f64))
            .sum();
        prop_assert!((a.to_complex() - direct).norm() < 1e-9);
        // Reducing again changes nothing.
        let again = CycloNum::from_powers(n, a.coeffs().to_vec());
        prop_assert_eq!(again.coeffs(), a.coeffs());
    }

    #[test]
    fn embedding_is_a_ring_map((a, b, _c) in same_field(36)) {
        let prod = (&a * &b).to_complex();
        let expect = a.to_complex() * b.to_complex();
        prop_assert!((prod - expect).norm() < 1e-9 * (1.0 + expect.norm()));
        let sum = (&a + &b).to_complex();
        prop_assert!((sum - (a.to_complex() + b.to_complex())).norm() < 1e-9);
        let conj = a.conj().to_complex();
        prop_assert!((conj - a.to_complex().conj()).norm() < 1e-9);
    }

    #[test]
    fn galois_composition(a in cyclo(30), j in 1i64..60, k in 1i64..60) {
        let n = a.conductor() as i64;
        prop_assume!(j.gcd(&n) == 1 && k.gcd(&n) == 1);
        let twice = a.galois(j).unwrap().galois(k).unwrap();
        prop_assert_eq!(twice, a.galois(j * k).unwrap());
        prop_assert_eq!(a.galois(-1).unwrap(), a.conj());
    }

    #[test]
    fn class_partition(gens in prop::collection::vec(permutation(6), 1..3)) {
        let group = generate_group(6, gens).unwrap();
        let data = conjugacy_data(&group);
        let mut seen = vec![0usize; group.order()];
        for (i, class) in data.classes.iter().enumerate() {
            prop_assert_eq!(class.size * class.centralizer_order, group.order());
            prop_assert_eq!(group.order() % class.size, 0);
            for &m in &class.members {
                seen[m] += 1;
                prop_assert_eq!(data.class_of[m], i);
                prop_assert_eq!(group.element_order(m), class.element_order);
            }
        }
        prop_assert!(seen.iter().all(|&c| c == 1));
        prop_assert_eq!(data.classes[0].size, 1);
        prop_assert!(group.elements()[data.classes[0].representative].is_identity());
    }
}
