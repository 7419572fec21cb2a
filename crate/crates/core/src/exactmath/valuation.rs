use core::cmp::Ordering;
use core::fmt;
use core::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

/// A `p`-adic valuation with half-integer support.
///
/// The exponent is stored doubled, so `halves = 2·ν_p`. The zero element has
/// valuation `+∞`, which compares above every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PadicValue {
    halves: i64,
    infinite: bool,
}

impl PadicValue {
    pub const INFINITY: PadicValue = PadicValue { halves: 0, infinite: true };
    pub const ZERO: PadicValue = PadicValue { halves: 0, infinite: false };

    pub const fn from_halves(halves: i64) -> Self {
        PadicValue { halves, infinite: false }
    }

    pub const fn from_integer(v: i64) -> Self {
        PadicValue { halves: 2 * v, infinite: false }
    }

    pub fn is_infinite(&self) -> bool {
        self.infinite
    }

    /// Doubled exponent; `None` for `+∞`.
    pub fn halves(&self) -> Option<i64> {
        (!self.infinite).then_some(self.halves)
    }

    /// The valuation as an integer, if it is finite and integral.
    pub fn as_integer(&self) -> Option<i64> {
        match self.halves() {
            Some(h) if h % 2 == 0 => Some(h / 2),
            _ => None,
        }
    }

    pub fn is_half_integral(&self) -> bool {
        matches!(self.halves(), Some(h) if h % 2 != 0)
    }

    /// Shift by a number of halves; `+∞` is absorbing.
    pub fn shift_halves(self, halves: i64) -> Self {
        if self.infinite {
            self
        } else {
            PadicValue::from_halves(self.halves + halves)
        }
    }
}

impl Add for PadicValue {
    type Output = PadicValue;

    fn add(self, rhs: PadicValue) -> PadicValue {
        if self.infinite || rhs.infinite {
            PadicValue::INFINITY
        } else {
            PadicValue::from_halves(self.halves + rhs.halves)
        }
    }
}

impl Ord for PadicValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.infinite, other.infinite) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => self.halves.cmp(&other.halves),
        }
    }
}

impl PartialOrd for PadicValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PadicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.halves() {
            None => f.write_str("inf"),
            Some(h) if h % 2 == 0 => write!(f, "{}", h / 2),
            Some(h) => write!(f, "{h}/2"),
        }
    }
}

/// Splits `x = p^k · u` with `p ∤ u`; `x` must be nonzero.
pub fn split_p_power(x: &BigInt, p: u64) -> (u32, BigInt) {
    debug_assert!(!x.is_zero());
    let pb = BigInt::from(p);
    let mut k = 0;
    let mut u = x.clone();
    loop {
        let (q, r) = u.div_rem(&pb);
        if !r.is_zero() {
            return (k, u);
        }
        u = q;
        k += 1;
    }
}

/// `ν_p` of an integer; `+∞` for zero.
pub fn valuation_int(x: &BigInt, p: u64) -> PadicValue {
    if x.is_zero() {
        PadicValue::INFINITY
    } else {
        PadicValue::from_integer(split_p_power(x, p).0 as i64)
    }
}

/// `ν_p` of a rational; `+∞` for zero.
pub fn valuation(x: &BigRational, p: u64) -> PadicValue {
    if x.is_zero() {
        return PadicValue::INFINITY;
    }
    let num = split_p_power(x.numer(), p).0 as i64;
    let den = split_p_power(x.denom(), p).0 as i64;
    PadicValue::from_integer(num - den)
}
