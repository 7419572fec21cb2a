use proptest::prelude::*;
use theta_kernel_core::bqf::{
    ambiguous_classes, class_number, class_representatives, epsilon_plus, reduce, BinaryForm,
};
use theta_kernel_core::lattice::{HalfIntegralMatrix, IntMatrix};

/// Reduced forms by direct search over every `a ≤ |D|` and `|b| ≤ a`.
fn brute_class_number(d: i64) -> usize {
    let n = -d;
    let mut count = 0;
    for a in 1..=n {
        for b in -a..=a {
            if (b * b - d) % (4 * a) != 0 {
                continue;
            }
            if BinaryForm::new(a, b, (b * b - d) / (4 * a)).is_reduced() {
                count += 1;
            }
        }
    }
    count
}

/// `ε⁺` by searching `SL₂(Z)` matrices with small entries; for a reduced
/// form every automorph has entries in `[−1, 1]`.
fn brute_epsilon(f: BinaryForm) -> usize {
    let t = f.matrix();
    let mut count = 0;
    for p in -1i64..=1 {
        for q in -1i64..=1 {
            for r in -1i64..=1 {
                for s in -1i64..=1 {
                    if p * s - q * r != 1 {
                        continue;
                    }
                    let u = IntMatrix::new(2, 2, vec![p, q, r, s]).unwrap();
                    if t.transform(&u).unwrap() == t {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

#[test]
fn class_numbers_match_search() {
    for d in -200i64..0 {
        if !matches!(d.rem_euclid(4), 0 | 1) {
            assert!(class_number(d).is_err());
            continue;
        }
        assert_eq!(class_number(d).unwrap(), brute_class_number(d), "D = {d}");
    }
}

#[test]
fn prime_discriminants_have_one_ambiguous_class() {
    for p in [3i64, 7, 11, 19, 23, 31, 43, 47, 59, 67, 71, 79, 83, 103, 107, 127, 131, 139] {
        let classes = class_representatives(-p).unwrap();
        let pairs = classes.iter().filter(|c| !c.ambiguous).count();
        assert_eq!(ambiguous_classes(-p).unwrap().len(), 1);
        assert_eq!(classes.len(), 1 + pairs);
        assert_eq!(pairs % 2, 0);
        for (i, c) in classes.iter().enumerate() {
            if let Some(j) = c.gl_partner {
                assert_eq!(classes[j].gl_partner, Some(i));
                assert_eq!(classes[j].form, c.form.conjugate());
            }
        }
    }
}

#[test]
fn automorph_counts() {
    for d in -120i64..0 {
        if !matches!(d.rem_euclid(4), 0 | 1) {
            continue;
        }
        for c in class_representatives(d).unwrap() {
            let e = epsilon_plus(&c.form.matrix()).unwrap();
            assert_eq!(e, brute_epsilon(c.form), "{:?}", c.form);
            assert_eq!(24 % e, 0);
        }
    }
}

proptest! {
    #[test]
    fn reduction_is_a_class_invariant(
        idx in 0usize..64,
        ops in proptest::collection::vec((any::<bool>(), -3i64..=3), 1..8),
    ) {
        let classes: Vec<_> = [-23i64, -31, -47, -56, -71, -84, -95]
            .iter()
            .flat_map(|&d| class_representatives(d).unwrap())
            .collect();
        let f = classes[idx % classes.len()].form;
        let mut u = IntMatrix::identity(2);
        for (upper, k) in ops {
            let mut e = IntMatrix::identity(2);
            if upper { e.set(0, 1, k) } else { e.set(1, 0, k) }
            u = u.mul(&e).unwrap();
        }
        let t = f.matrix().transform(&u).unwrap();
        let g = BinaryForm::from_matrix(&t).unwrap();
        let (r, v) = reduce(g.a, g.b, g.c).unwrap();
        prop_assert_eq!(r, f);
        prop_assert_eq!(BinaryForm::from_matrix(&t.transform(&v).unwrap()).unwrap(), f);
        prop_assert_eq!(epsilon_plus(&t).unwrap(), epsilon_plus(&f.matrix()).unwrap());
    }
}

#[test]
fn half_integral_round_trip() {
    let t = HalfIntegralMatrix::binary(3, -1, 4);
    assert_eq!(BinaryForm::from_matrix(&t).unwrap(), BinaryForm::new(3, -1, 4));
}
