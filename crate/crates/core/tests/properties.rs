//! Property tests for the algebraic and metric invariants.

use proptest::prelude::*;

use permkit_core::*;

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    (0..factorial(n)).prop_map(move |index| Permutation::unrank(n, index).unwrap())
}

proptest! {
    #[test]
    fn compose_is_pointwise_application(a in perm(6), b in perm(6)) {
        let c = a.compose(&b).unwrap();
        for i in 1..=6 {
            prop_assert_eq!(c.apply(i), b.apply(a.apply(i)));
        }
    }

    #[test]
    fn compose_with_inverse_is_identity(a in perm(7)) {
        prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
        prop_assert!(a.inverse().compose(&a).unwrap().is_identity());
    }

    #[test]
    fn rank_roundtrip(n in 1usize..=8, seed in any::<u64>()) {
        let index = seed % factorial(n);
        let sigma = Permutation::unrank(n, index).unwrap();
        prop_assert_eq!(sigma.rank().index, index);
    }

    #[test]
    fn transpositions_are_involutions(a in perm(6), i in 1usize..6) {
        let once = a.adjacent_transpose(i).unwrap();
        prop_assert_eq!(once.adjacent_transpose(i).unwrap(), a.clone());
        let wrapped = a.wrap_transpose().unwrap();
        prop_assert_eq!(wrapped.wrap_transpose().unwrap(), a.clone());
        prop_assert_eq!(a.reverse().reverse(), a);
    }

    #[test]
    fn kendall_fast_equals_direct(a in perm(7), b in perm(7)) {
        prop_assert_eq!(
            kendall_distance(&a, &b).unwrap(),
            kendall_distance_direct(&a, &b).unwrap()
        );
    }

    #[test]
    fn kendall_symmetry_and_identity(a in perm(7), b in perm(7)) {
        let d = kendall_distance(&a, &b).unwrap();
        prop_assert_eq!(d, kendall_distance(&b, &a).unwrap());
        prop_assert_eq!(d == 0, a == b);
    }

    #[test]
    fn kendall_triangle(a in perm(6), b in perm(6), c in perm(6)) {
        let dab = kendall_distance(&a, &b).unwrap();
        let dac = kendall_distance(&a, &c).unwrap();
        let dcb = kendall_distance(&c, &b).unwrap();
        prop_assert!(dab <= dac + dcb);
    }

    #[test]
    fn cyclic_at_most_kendall(a in perm(5), b in perm(5)) {
        prop_assert!(
            cyclic_kendall_distance(&a, &b).unwrap() <= kendall_distance(&a, &b).unwrap()
        );
    }

    #[test]
    fn right_invariance(a in perm(5), b in perm(5), rho in perm(5)) {
        for metric in [Metric::Kendall, Metric::CyclicKendall] {
            let d = distance(&a, &b, metric).unwrap();
            let ar = a.compose(&rho).unwrap();
            let br = b.compose(&rho).unwrap();
            prop_assert_eq!(distance(&ar, &br, metric).unwrap(), d);
        }
    }

    #[test]
    fn ball_size_is_center_independent(center in perm(5), r in 0u32..=3) {
        for metric in [Metric::Kendall, Metric::CyclicKendall] {
            let at_center = ball(&center, r, metric).unwrap().len();
            let at_identity = ball(&Permutation::identity(5), r, metric).unwrap().len();
            prop_assert_eq!(at_center, at_identity);
        }
    }

    #[test]
    fn display_parse_roundtrip(a in perm(6)) {
        let text = a.to_string();
        prop_assert_eq!(Permutation::parse(&text, false).unwrap(), a);
    }

    #[test]
    fn rotation_classes_have_n_members(a in perm(6)) {
        let class = class_of(&a);
        let members = class.members();
        prop_assert_eq!(members.len(), 6);
        prop_assert!(members.contains(&a));
        for member in &members {
            prop_assert_eq!(class_of(member), class.clone());
        }
    }

    #[test]
    fn lifted_class_codes_scale_by_n(seed in any::<u64>()) {
        // any set of distinct classes is a class code at distance >= 1
        let picks: Vec<RotationClass> = (0..3)
            .map(|k| {
                let index = (seed.rotate_left(16 * k as u32)) % factorial(5);
                class_of(&Permutation::unrank(5, index).unwrap())
            })
            .collect();
        let mut classes = picks;
        classes.sort();
        classes.dedup();
        let lifted = lift_class_code(&classes, 1).unwrap();
        prop_assert_eq!(lifted.len(), 5 * classes.len());
    }
}

proptest! {
    #[test]
    fn mahonian_row_is_symmetric(n in 1usize..=12) {
        // reversing a permutation complements its inversion count
        let row = mahonian_row(n);
        let top = n * (n - 1) / 2;
        for k in 0..=top {
            prop_assert_eq!(&row[k], &row[top - k]);
        }
        prop_assert_eq!(
            kendall_ball_size(n, top as u64),
            num_bigint::BigUint::from(factorial(n))
        );
    }
}

#[test]
fn sphere_packing_on_greedy_outputs() {
    // |C| * |S(R)| <= n! for greedy codes with measured distance >= 2R + 1
    for (n, d) in [(4usize, 3u32), (5, 3), (5, 5), (5, 7)] {
        let result = max_code_search(
            n,
            d,
            Metric::Kendall,
            MaxCodeMethod::GreedyLex,
            &SearchBudget::unlimited(),
        )
        .unwrap();
        let measured = if result.code.len() >= 2 {
            result.code.min_distance().unwrap()
        } else {
            u32::MAX
        };
        assert!(measured >= d);
        let r = (measured.saturating_sub(1) / 2).min(10);
        let ball = ball_size(n, r, Metric::Kendall).unwrap();
        assert!(result.code.len() as u64 * ball <= factorial(n));
    }
}
