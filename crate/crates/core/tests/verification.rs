use num_rational::BigRational;
use theta_kernel_core::analysis::{
    coset_index_d, erratum_h_series, fp_dimension_profile, km_average, km_required_bound,
    km_xsum_value,
};
use theta_kernel_core::bqf::class_representatives;
use theta_kernel_core::qexp::theta_expansion;

#[test]
fn coset_indices_are_one_mod_p() {
    for p in [3u64, 5, 7, 23] {
        for n in 0..=4 {
            for j in 0..=n {
                assert!(coset_index_d(n, j, p).unwrap().congruent_one, "n={n} j={j} p={p}");
            }
        }
    }
}

#[test]
fn km_class_sums_match_the_x_sum() {
    for p in [23u64, 31] {
        let d_max = p * 25;
        let bound = km_required_bound(d_max).unwrap();
        for c in class_representatives(-(p as i64)).unwrap() {
            let g = c.form.gram().unwrap();
            let f = theta_expansion(&g, 2, bound).unwrap();
            for m in 1..=5u64 {
                let d = p * m * m;
                assert_eq!(km_average(&f, d).unwrap(), km_xsum_value(&g, d).unwrap(), "p={p} m={m}");
            }
            for d in [p + 1, 2 * p, 3 * p] {
                assert_eq!(km_average(&f, d).unwrap(), BigRational::from_integer(0.into()));
            }
        }
    }
}

#[test]
fn dimension_profile_is_monotone_and_stable() {
    for p in [23i64, 31, 47] {
        let classes = class_representatives(-p).unwrap();
        let thetas: Vec<_> =
            classes.iter().map(|c| theta_expansion(&c.form.gram().unwrap(), 2, 12).unwrap()).collect();
        let profile = fp_dimension_profile(&thetas, p as u64, 12).unwrap();
        assert!(profile.windows(2).all(|w| w[0].1 <= w[1].1));
        let target = classes.len().div_ceil(2);
        assert!(profile.iter().filter(|(b, _)| *b >= 8).all(|(_, r)| *r == target), "{profile:?}");
    }
}

#[test]
fn constant_cancellation_does_not_depend_on_bound() {
    for bound in [1u64, 3, 5] {
        let r = erratum_h_series(5, 1, bound).unwrap();
        assert!(r.steps.iter().all(|s| s.constant_cancels));
    }
}
