//! Probability scalars.
//!
//! Every integer quantity of the model (capacities, times, costs, demand)
//! is a machine integer. Probabilities are the only real-valued data, and
//! they are generic over [`Probability`] so the same reliability code runs
//! in `f64`, `f32`, or exact `BigRational` arithmetic.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Zero};

/// A probability value type.
pub trait Probability: Clone + Debug + PartialEq + PartialOrd + Num + Send + Sync + 'static {
    /// The exact value `num / den` (rounded for floating types).
    fn from_ratio(num: u64, den: u64) -> Self;

    /// Parses a decimal literal (`0.05`, `1e-3`) or a fraction (`1/20`).
    fn parse(text: &str) -> Option<Self>;

    fn to_f64(&self) -> f64;

    /// Text form that [`Probability::parse`] reads back to the same value.
    fn render(&self) -> String;

    /// Whether the value sits inside `[0, 1]`.
    fn is_unit(&self) -> bool {
        *self >= Self::zero() && *self <= Self::one()
    }
}

fn split_fraction(text: &str) -> Option<(&str, &str)> {
    let (a, b) = text.split_once('/')?;
    Some((a.trim(), b.trim()))
}

macro_rules! float_probability {
    ($t:ty) => {
        impl Probability for $t {
            fn from_ratio(num: u64, den: u64) -> Self {
                (num as f64 / den as f64) as $t
            }

            fn parse(text: &str) -> Option<Self> {
                let text = text.trim();
                if let Some((a, b)) = split_fraction(text) {
                    let a: f64 = a.parse().ok()?;
                    let b: f64 = b.parse().ok()?;
                    if b == 0.0 {
                        return None;
                    }
                    return Some((a / b) as $t);
                }
                let v: $t = text.parse().ok()?;
                v.is_finite().then_some(v)
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn render(&self) -> String {
                format!("{}", self)
            }
        }
    };
}

float_probability!(f32);
float_probability!(f64);

/// Parses a plain decimal (optionally with an exponent) exactly.
fn parse_decimal_exact(text: &str) -> Option<BigRational> {
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => (&text[..pos], text[pos + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut numer: BigInt = all_digits.parse().ok()?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let value = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Some(value)
}

impl Probability for BigRational {
    fn from_ratio(num: u64, den: u64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn parse(text: &str) -> Option<Self> {
        let text = text.trim();
        if let Some((a, b)) = split_fraction(text) {
            let a: BigInt = a.parse().ok()?;
            let b: BigInt = b.parse().ok()?;
            if b.is_zero() {
                return None;
            }
            return Some(BigRational::new(a, b));
        }
        parse_decimal_exact(text)
    }

    fn to_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn render(&self) -> String {
        if self.denom().is_one() {
            format!("{}", self.numer())
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

/// Compensated (Kahan) accumulator.
///
/// For exact scalar types the compensation term stays zero and this reduces
/// to a plain sum.
#[derive(Clone, Debug)]
pub struct KahanSum<P> {
    sum: P,
    compensation: P,
}

impl<P: Probability> Default for KahanSum<P> {
    fn default() -> Self {
        Self { sum: P::zero(), compensation: P::zero() }
    }
}

impl<P: Probability> KahanSum<P> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, term: P) {
        let y = term - self.compensation.clone();
        let t = self.sum.clone() + y.clone();
        self.compensation = (t.clone() - self.sum.clone()) - y;
        self.sum = t;
    }

    pub fn total(&self) -> P {
        self.sum.clone()
    }
}

/// Fixed-width decimal rendering used for reported reliabilities.
pub fn format_fixed<P: Probability>(value: &P, decimals: usize) -> String {
    format!("{:.*}", decimals, value.to_f64())
}

/// Absolute difference as `f64`, for tolerance checks across scalar types.
pub fn abs_diff<P: Probability>(a: &P, b: &P) -> f64 {
    (a.to_f64() - b.to_f64()).abs()
}

impl<P: Probability> KahanSum<P> {
    /// Sum of an iterator of terms in iteration order.
    pub fn sum_all<I: IntoIterator<Item = P>>(terms: I) -> P {
        let mut acc = Self::new();
        for t in terms {
            acc.add(t);
        }
        acc.total()
    }
}
