//! Positive definite binary quadratic forms `ax² + bxy + cy²` of negative
//! discriminant: Gauss reduction, class representatives, ambiguous classes
//! and proper automorphism counts.
//!
//! A form corresponds to the half-integral matrix `[[a, b/2], [b/2, c]]`; all
//! classes are taken under `SL₂(Z)`. Non-primitive forms are included, so
//! `h(D)` counts every reduced form of discriminant `D`.

use alloc::vec::Vec;

use crate::lattice::{enumerate_vectors, GramMatrix, HalfIntegralMatrix, IntMatrix};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl BinaryForm {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        BinaryForm { a, b, c }
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_positive_definite(&self) -> bool {
        self.a > 0 && self.discriminant() < 0
    }

    /// `|b| ≤ a ≤ c`, with `b ≥ 0` when `|b| = a` or `a = c`.
    pub fn is_reduced(&self) -> bool {
        let BinaryForm { a, b, c } = *self;
        b.abs() <= a && a <= c && ((b.abs() != a && a != c) || b >= 0)
    }

    /// The `GL₂`-conjugate form `(a, −b, c)`.
    pub fn conjugate(&self) -> Self {
        BinaryForm::new(self.a, -self.b, self.c)
    }

    pub fn evaluate(&self, x: i64, y: i64) -> i64 {
        self.a * x * x + self.b * x * y + self.c * y * y
    }

    pub fn matrix(&self) -> HalfIntegralMatrix {
        HalfIntegralMatrix::binary(self.a, self.b, self.c)
    }

    /// The Gram matrix `[[2a, b], [b, 2c]]` of the even lattice `2T`.
    pub fn gram(&self) -> Result<GramMatrix> {
        GramMatrix::new(2, alloc::vec![2 * self.a, self.b, self.b, 2 * self.c])
    }

    pub fn from_matrix(t: &HalfIntegralMatrix) -> Result<Self> {
        if t.size() != 2 {
            return Err(Error::ShapeMismatch(alloc::format!("binary form of size {}", t.size())));
        }
        let m = t.twice();
        Ok(BinaryForm::new(m.get(0, 0) / 2, m.get(0, 1), m.get(1, 1) / 2))
    }

    /// `f[U]`, i.e. `f(u₁₁x + u₁₂y, u₂₁x + u₂₂y)`.
    fn transform(&self, u: [[i64; 2]; 2]) -> Self {
        let [[p, q], [r, s]] = u;
        let BinaryForm { a, b, c } = *self;
        BinaryForm::new(
            a * p * p + b * p * r + c * r * r,
            2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
            a * q * q + b * q * s + c * s * s,
        )
    }
}

fn mat_mul(x: [[i64; 2]; 2], y: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    [
        [x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1]],
        [x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1]],
    ]
}

/// Gauss reduction. Returns the unique reduced form in the `SL₂(Z)` class
/// of `(a, b, c)` and a `U ∈ SL₂(Z)` with `f[U]` reduced.
pub fn reduce(a: i64, b: i64, c: i64) -> Result<(BinaryForm, IntMatrix)> {
    let mut f = BinaryForm::new(a, b, c);
    if f.discriminant() >= 0 {
        return Err(Error::InvalidDiscriminant(f.discriminant()));
    }
    if !f.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    const SWAP: [[i64; 2]; 2] = [[0, -1], [1, 0]];
    let mut u = [[1, 0], [0, 1]];
    loop {
        if f.b > f.a || f.b <= -f.a {
            let k = (f.a - f.b).div_euclid(2 * f.a);
            let t = [[1, k], [0, 1]];
            f = f.transform(t);
            u = mat_mul(u, t);
        }
        if f.a > f.c {
            f = f.transform(SWAP);
            u = mat_mul(u, SWAP);
            continue;
        }
        if f.a == f.c && f.b < 0 {
            f = f.transform(SWAP);
            u = mat_mul(u, SWAP);
        }
        break;
    }
    debug_assert!(f.is_reduced());
    let u = IntMatrix::new(2, 2, alloc::vec![u[0][0], u[0][1], u[1][0], u[1][1]])?;
    Ok((f, u))
}

/// A reduced representative of an `SL₂(Z)` class with its `GL₂` bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryFormClass {
    pub form: BinaryForm,
    /// The class is fixed by `(a, b, c) ↦ (a, −b, c)`.
    pub ambiguous: bool,
    /// Position of the class of `(a, −b, c)` in the same list; `None` when ambiguous.
    pub gl_partner: Option<usize>,
}

fn check_discriminant(d: i64) -> Result<()> {
    if d >= 0 || !matches!(d.rem_euclid(4), 0 | 1) {
        return Err(Error::InvalidDiscriminant(d));
    }
    Ok(())
}

/// All reduced forms of discriminant `D`: ambiguous classes first (by
/// `(a, |b|)`), then the non-ambiguous ones ordered by `(a, |b|)` with the
/// positive-`b` member of each pair first.
pub fn class_representatives(d: i64) -> Result<Vec<BinaryFormClass>> {
    check_discriminant(d)?;
    let abs = -d;
    let mut forms = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= abs {
        for b in (-a + 1)..=a {
            if (b - d).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let f = BinaryForm::new(a, b, num / (4 * a));
            if f.is_reduced() {
                forms.push(f);
            }
        }
        a += 1;
    }
    let ambiguous_of = |f: &BinaryForm| -> bool {
        let (g, _) = reduce(f.a, -f.b, f.c).expect("reduced forms are definite");
        g == *f
    };
    let key = |f: &BinaryForm| (f.a, f.b.abs(), f.b < 0);
    let (mut amb, mut rest): (Vec<BinaryForm>, Vec<BinaryForm>) =
        forms.into_iter().partition(|f| ambiguous_of(f));
    amb.sort_by_key(key);
    rest.sort_by_key(key);
    let ordered: Vec<BinaryForm> = amb.iter().chain(rest.iter()).copied().collect();
    let classes = ordered
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let ambiguous = i < amb.len();
            let gl_partner = if ambiguous {
                None
            } else {
                let (g, _) = reduce(f.a, -f.b, f.c).expect("reduced forms are definite");
                ordered.iter().position(|h| *h == g)
            };
            BinaryFormClass { form: *f, ambiguous, gl_partner }
        })
        .collect();
    Ok(classes)
}

/// `h(D)`, the number of `SL₂(Z)`-classes of discriminant `D`.
pub fn class_number(d: i64) -> Result<usize> {
    Ok(class_representatives(d)?.len())
}

pub fn ambiguous_classes(d: i64) -> Result<Vec<BinaryFormClass>> {
    Ok(class_representatives(d)?.into_iter().filter(|c| c.ambiguous).collect())
}

/// `ε⁺(T) = #{U ∈ SL(n, Z) : T[U] = T}` for positive definite `T` of size 1 or 2.
pub fn epsilon_plus(t: &HalfIntegralMatrix) -> Result<usize> {
    match t.size() {
        1 => {
            if t.twice().get(0, 0) <= 0 {
                return Err(Error::NotPositiveDefinite);
            }
            Ok(1)
        }
        2 => {
            let f = BinaryForm::from_matrix(t)?;
            if !f.is_positive_definite() {
                return Err(Error::NotPositiveDefinite);
            }
            let gram = f.gram()?;
            let vectors = enumerate_vectors(&gram, 2 * f.a.max(f.c));
            let first: Vec<&[i64]> =
                vectors.iter().filter(|v| v.norm == 2 * f.a).map(|v| &v.coords[..]).collect();
            let second: Vec<&[i64]> =
                vectors.iter().filter(|v| v.norm == 2 * f.c).map(|v| &v.coords[..]).collect();
            let mut count = 0;
            for u1 in &first {
                for u2 in &second {
                    if u1[0] * u2[1] - u1[1] * u2[0] == 1 && gram.inner(u1, u2) == f.b {
                        count += 1;
                    }
                }
            }
            Ok(count)
        }
        n => Err(Error::OutOfRange { what: "epsilon_plus degree", value: n as i64 }),
    }
}
