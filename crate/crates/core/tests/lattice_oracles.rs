use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use theta_kernel_core::lattice::{
    a_n_gram, automorphisms, dual_gram, enumerate_vectors, hasse_witt, is_p_maximal,
    minors_of, rational_det, relevant_places, GramMatrix, IntMatrix,
};

/// `Bᵀ A_n B` for a nonsingular integer `B`, an even positive definite form.
fn gram_from(b: &[i64], n: usize) -> Option<GramMatrix> {
    let bm = IntMatrix::new(n, n, b.to_vec()).unwrap();
    if bm.det() == BigInt::from(0) {
        return None;
    }
    GramMatrix::from_matrix(a_n_gram(n).matrix().congruent(&bm).unwrap()).ok()
}

fn random_gram(n: usize) -> impl Strategy<Value = GramMatrix> {
    proptest::collection::vec(-2i64..=2, n * n).prop_filter_map("singular", move |b| gram_from(&b, n))
}

fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec((0..n, 0..n, -2i64..=2), 0..6).prop_map(move |ops| {
        let mut u = IntMatrix::identity(n);
        for (i, j, k) in ops {
            if i == j {
                continue;
            }
            let mut e = IntMatrix::identity(n);
            e.set(i, j, k);
            u = u.mul(&e).unwrap();
        }
        u
    })
}

fn brute_box(s: &GramMatrix, bound: i64) -> Vec<Vec<i64>> {
    let n = s.size();
    let inv = dual_gram(s).unwrap().inverse;
    // |x_i|² ≤ bound·(S⁻¹)_ii
    let radius: Vec<i64> = (0..n)
        .map(|i| {
            let cap = BigRational::from_integer(bound.into()) * &inv[i * n + i];
            let mut r = 0i64;
            while BigRational::from_integer(((r + 1) * (r + 1)).into()) <= cap {
                r += 1;
            }
            r
        })
        .collect();
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    fn rec(s: &GramMatrix, radius: &[i64], bound: i64, k: usize, x: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if k == x.len() {
            if s.norm(x) <= bound {
                out.push(x.clone());
            }
            return;
        }
        for v in -radius[k]..=radius[k] {
            x[k] = v;
            rec(s, radius, bound, k + 1, x, out);
        }
    }
    rec(s, &radius, bound, 0, &mut x, &mut out);
    out.sort();
    out
}

/// `L` has a proper even overlattice of `p`-power index iff some `c/p`,
/// `c ∈ {0..p−1}^m \ 0`, has `Sc ≡ 0 (mod p)` and `S[c] ≡ 0 (mod 2p²)`.
fn maximal_brute(s: &GramMatrix, p: u64) -> bool {
    let m = s.size();
    let p = p as i64;
    let total = p.pow(m as u32);
    for code in 1..total {
        let mut c = vec![0i64; m];
        let mut k = code;
        for e in c.iter_mut() {
            *e = k % p;
            k /= p;
        }
        if s.apply(&c).iter().all(|v| v % p == 0) && s.norm(&c) % (2 * p * p) == 0 {
            return false;
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn enumeration_matches_box(s in random_gram(3), bound in 0i64..14) {
        let mut fast: Vec<Vec<i64>> = enumerate_vectors(&s, bound).into_iter().map(|v| v.coords).collect();
        fast.sort();
        prop_assert_eq!(fast, brute_box(&s, bound));
    }

    #[test]
    fn hasse_witt_is_a_class_invariant(s in random_gram(3), u in unimodular(3)) {
        let t = s.transform(&u).unwrap();
        for v in relevant_places(&s).unwrap() {
            prop_assert_eq!(hasse_witt(&s, v).unwrap(), hasse_witt(&t, v).unwrap());
        }
    }

    #[test]
    fn hasse_witt_product_formula(s in random_gram(4)) {
        let product: i32 = relevant_places(&s).unwrap().into_iter()
            .map(|v| hasse_witt(&s, v).unwrap() as i32)
            .product();
        prop_assert_eq!(product, 1);
    }

    #[test]
    fn maximality_matches_cosets(s in random_gram(3), p in prop::sample::select(vec![3u64, 5, 7])) {
        prop_assert_eq!(is_p_maximal(&s, p).unwrap(), maximal_brute(&s, p));
    }

    #[test]
    fn cauchy_binet(a in proptest::collection::vec(-4i64..=4, 9), b in proptest::collection::vec(-4i64..=4, 9), r in 1usize..=3) {
        let q = |v: &[i64]| v.iter().map(|&x| BigRational::from_integer(x.into())).collect::<Vec<_>>();
        let (qa, qb) = (q(&a), q(&b));
        let ab = IntMatrix::new(3, 3, a.clone()).unwrap().mul(&IntMatrix::new(3, 3, b.clone()).unwrap()).unwrap();
        let lhs = minors_of(&q(ab.data()), 3, r).unwrap();
        let (ma, mb) = (minors_of(&qa, 3, r).unwrap(), minors_of(&qb, 3, r).unwrap());
        let side = lhs.len().isqrt();
        for i in 0..side {
            for j in 0..side {
                let rhs: BigRational = (0..side).map(|k| &ma[i * side + k] * &mb[k * side + j]).sum();
                prop_assert_eq!(&lhs[i * side + j], &rhs);
            }
        }
        if r == 3 {
            prop_assert_eq!(&lhs[0], &rational_det(&q(ab.data()), 3));
        }
    }
}

#[test]
fn maximality_corpus() {
    for (a, b, c, p) in [(1, 1, 6, 23), (2, 1, 3, 23), (1, 1, 8, 31), (2, 1, 4, 31), (1, 1, 12, 47), (3, 1, 4, 47)] {
        let s = GramMatrix::new(2, vec![2 * a, b, b, 2 * c]).unwrap();
        assert!(is_p_maximal(&s, p).unwrap());
        assert!(maximal_brute(&s, p));
    }
    let a2_3 = GramMatrix::new(2, vec![6, 3, 3, 6]).unwrap();
    assert!(!is_p_maximal(&a2_3, 3).unwrap());
    assert!(!maximal_brute(&a2_3, 3));
    let a1a1 = GramMatrix::new(2, vec![2, 0, 0, 2]).unwrap();
    assert!(is_p_maximal(&a1a1, 5).unwrap() && maximal_brute(&a1a1, 5));
}

#[test]
fn automorphisms_form_a_group() {
    for s in [a_n_gram(2), a_n_gram(3), GramMatrix::new(2, vec![4, 2, 2, 6]).unwrap()] {
        let g = automorphisms(&s).unwrap();
        for u in &g.elements {
            assert_eq!(s.transform(u).unwrap(), s);
            for v in &g.elements {
                assert!(g.elements.contains(&u.mul(v).unwrap()));
            }
        }
    }
    // −I has determinant −1 in odd rank.
    let a3 = automorphisms(&a_n_gram(3)).unwrap();
    assert!(a3.has_improper());
    assert_eq!(a3.order(), 2 * a3.proper_order);
}
