//! Closed-form bounds and exact values for maximum circuit-code lengths.
//!
//! Three quantities appear:
//! * `K(d, k)`, the maximum length of a spread-`k` code in dimension `d`;
//! * `L(d, k, r)`, the same restricted to codes with a bit run of length `r`;
//! * the symmetric variant of `L`.
//!
//! Lengths are generic over the integer type so reports can be produced in
//! `u64` or, when `(k+1) 2^(2d/(k+1) - 1)` outgrows it, in `BigUint`.
//! Parameters `d`, `k`, `l` stay `u32`.

use std::fmt;

use num_integer::Integer;
use num_traits::{CheckedMul, FromPrimitive};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub trait LengthScalar: Integer + Clone + CheckedMul + FromPrimitive + fmt::Display + fmt::Debug {}

impl<T> LengthScalar for T where
    T: Integer + Clone + CheckedMul + FromPrimitive + fmt::Display + fmt::Debug
{
}

fn scalar<T: LengthScalar>(v: i128) -> Result<T> {
    T::from_i128(v).ok_or_else(|| Error::Precondition(format!("{v} does not fit the length type")))
}

fn invalid(msg: String) -> Error {
    Error::InvalidParameters(msg)
}

/// Smallest dimension admitting a long code with spread `k` and a bit run of
/// length `phi >= k + 2`: `k + 1 + floor(phi / 2)`.
pub fn singleton_dim_bound(k: u32, phi: u32) -> Result<u32> {
    if phi < k + 2 {
        return Err(invalid(format!("bit run {phi} is below k+2 = {}", k + 2)));
    }
    Ok(k + 1 + phi / 2)
}

/// Singleton's lower bound `K(d, k) >= (k+1) 2^(floor(2d/(k+1)) - 1)` for odd
/// `k` with `floor(2d/(k+1)) >= 2`.
pub fn singleton_length_lb<T: LengthScalar>(d: u32, k: u32) -> Result<T> {
    if k % 2 == 0 {
        return Err(invalid(format!("k = {k} must be odd")));
    }
    let blocks = 2 * u64::from(d) / (u64::from(k) + 1);
    if blocks < 2 {
        return Err(invalid(format!(
            "floor(2d/(k+1)) = {blocks} must be at least 2"
        )));
    }
    let two = scalar::<T>(2)?;
    let power = num_traits::checked_pow(two, (blocks - 1) as usize)
        .ok_or_else(|| Error::Precondition("power of two overflows the length type".into()))?;
    scalar::<T>(i128::from(k) + 1)?
        .checked_mul(&power)
        .ok_or_else(|| Error::Precondition("bound overflows the length type".into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Regime {
    /// `k` even, `l` odd, `k >= 2l - 2`.
    EvenOdd,
    /// `k` odd, `l` even, `k >= 2l + 1`.
    OddEven,
}

fn regime(k: u32, l: u32, min_odd_l: u32, min_even_l: u32) -> Option<Regime> {
    let (k, l) = (u64::from(k), u64::from(l));
    if k % 2 == 0 && l % 2 == 1 && l >= u64::from(min_odd_l) && k + 2 >= 2 * l {
        Some(Regime::EvenOdd)
    } else if k % 2 == 1 && l % 2 == 0 && l >= u64::from(min_even_l) && k > 2 * l {
        Some(Regime::OddEven)
    } else {
        None
    }
}

/// Douglas' upper bounds on `L(3k/2 + (l+1)/2, k, k+l)`: `4k + 3l - 1` for
/// `k` even, `l` odd, `k >= 2l - 2`; `4k + 3l + 2` for `k` odd, `l` even,
/// `k >= 2l + 1`.
pub fn douglas_upper<T: LengthScalar>(k: u32, l: u32) -> Result<T> {
    match regime(k, l, 1, 2) {
        Some(Regime::EvenOdd) => scalar(4 * i128::from(k) + 3 * i128::from(l) - 1),
        Some(Regime::OddEven) => scalar(4 * i128::from(k) + 3 * i128::from(l) + 2),
        None => Err(invalid(format!(
            "(k={k}, l={l}) fits neither (k even, l odd, k>=2l-2) nor (k odd, l even, k>=2l+1)"
        ))),
    }
}

/// Which of Douglas' exact values applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DouglasCase {
    /// `K(3k/2 + 2, k) = 4k + 6`, `k` even.
    EvenSpread,
    /// `K(floor(3k/2) + 2, k) = 4k + 4`, `k` odd.
    OddSpread,
    /// `K(floor(3k/2) + 3, k) = 4k + 8`, `k` odd and at least 9.
    OddSpreadWide,
}

fn douglas_case(d: u32, k: u32) -> Option<(DouglasCase, i128)> {
    if k == 0 {
        return None;
    }
    let (d, k) = (i128::from(d), i128::from(k));
    let base = 3 * k / 2;
    if k % 2 == 0 && d == base + 2 {
        Some((DouglasCase::EvenSpread, 4 * k + 6))
    } else if k % 2 == 1 && d == base + 2 {
        Some((DouglasCase::OddSpread, 4 * k + 4))
    } else if k % 2 == 1 && k >= 9 && d == base + 3 {
        Some((DouglasCase::OddSpreadWide, 4 * k + 8))
    } else {
        None
    }
}

/// `K(d, k)` where Douglas determined it exactly, otherwise `None`.
pub fn douglas_exact<T: LengthScalar>(d: u32, k: u32) -> Option<T> {
    douglas_case(d, k).and_then(|(_, v)| T::from_i128(v))
}

/// Maximum length `4k + 2l` of a symmetric code in dimension
/// `3k/2 + (l+1)/2` with spread `k` and a bit run of `k + l`; `k` odd,
/// `l` even `>= 2`, `k >= 2l + 1`.
pub fn symmetric_family_max<T: LengthScalar>(k: u32, l: u32) -> Result<T> {
    match regime(k, l, 3, 2) {
        Some(Regime::OddEven) => scalar(4 * i128::from(k) + 2 * i128::from(l)),
        _ => Err(invalid(format!(
            "needs k odd, l even >= 2 and k >= 2l+1; got k={k}, l={l}"
        ))),
    }
}

/// `l = 2d - 3k - 1`, the unique `l` with `d = 3k/2 + (l+1)/2`, if positive.
pub fn run_excess(d: u32, k: u32) -> Option<u32> {
    let l = 2 * i64::from(d) - 3 * i64::from(k) - 1;
    u32::try_from(l).ok().filter(|&l| l > 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Quantity {
    /// `K(d, k)`.
    MaxLength,
    /// `L(d, k, r)`.
    LongRunMaxLength { min_run: u32 },
    /// `L(d, k, r)` over symmetric codes only.
    SymmetricLongRunMaxLength { min_run: u32 },
}

impl Quantity {
    /// Whether a lower bound on `self` is also a lower bound on `other`.
    fn lower_transfers_to(&self, other: &Quantity) -> bool {
        use Quantity::*;
        match (self, other) {
            (a, b) if a == b => true,
            (_, MaxLength) => true,
            (SymmetricLongRunMaxLength { min_run: a }, LongRunMaxLength { min_run: b }) => a >= b,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Citation {
    SingletonLowerBound,
    DouglasExact,
    DouglasUpperEvenSpread,
    DouglasUpperOddSpread,
    SymmetricFamilyExact,
    SymmetricFamilyLowerBound,
    ProjectedFamilyLowerBound,
}

impl Citation {
    pub fn describe(&self) -> &'static str {
        match self {
            Citation::SingletonLowerBound => "Singleton: K(d,k) >= (k+1)2^(floor(2d/(k+1))-1), k odd",
            Citation::DouglasExact => "Douglas: exact K(d,k) for d = floor(3k/2)+2, or +3 with k odd >= 9",
            Citation::DouglasUpperEvenSpread => "Douglas: L(d,k,k+l) <= 4k+3l-1, k even, l odd, k >= 2l-2",
            Citation::DouglasUpperOddSpread => "Douglas: L(d,k,k+l) <= 4k+3l+2, k odd, l even, k >= 2l+1",
            Citation::SymmetricFamilyExact => "symmetric L(d,k,k+l) = 4k+2l, k odd, l even >= 2, k >= 2l+1",
            Citation::SymmetricFamilyLowerBound => "K(d,k) >= 4k+2l via the symmetric family",
            Citation::ProjectedFamilyLowerBound => "K(d,k) >= 4k+2l via projecting the (k+1, l-1) family, k even, l odd >= 3",
        }
    }
}

fn serialize_scalar<T: fmt::Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    let text = v.to_string();
    match text.parse::<u64>() {
        Ok(n) => s.serialize_u64(n),
        Err(_) => s.serialize_str(&text),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound = "T: fmt::Display")]
pub struct Bound<T> {
    #[serde(serialize_with = "serialize_scalar")]
    pub value: T,
    pub quantity: Quantity,
    pub citation: Citation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound = "T: fmt::Display")]
pub struct BoundsReport<T> {
    pub d: u32,
    pub k: u32,
    /// `2d - 3k - 1` when positive; the bit-run excess the long-run results
    /// are stated in.
    pub l: Option<u32>,
    pub lower_bounds: Vec<Bound<T>>,
    pub upper_bounds: Vec<Bound<T>>,
    /// Exact `K(d, k)`, when known.
    pub exact: Option<Bound<T>>,
    pub inconsistencies: Vec<String>,
}

impl<T: LengthScalar> BoundsReport<T> {
    pub fn is_consistent(&self) -> bool {
        self.inconsistencies.is_empty()
    }

    pub fn best_lower(&self, quantity: Quantity) -> Option<&T> {
        self.lower_bounds
            .iter()
            .filter(|b| b.quantity.lower_transfers_to(&quantity))
            .map(|b| &b.value)
            .max()
    }

    fn audit(&mut self) {
        let mut issues = Vec::new();
        for lo in &self.lower_bounds {
            for hi in &self.upper_bounds {
                if lo.quantity.lower_transfers_to(&hi.quantity) && lo.value > hi.value {
                    issues.push(format!(
                        "lower bound {} ({:?}) exceeds upper bound {} ({:?})",
                        lo.value, lo.citation, hi.value, hi.citation
                    ));
                }
            }
            if let Some(ex) = &self.exact {
                if lo.quantity.lower_transfers_to(&ex.quantity) && lo.value > ex.value {
                    issues.push(format!(
                        "lower bound {} ({:?}) exceeds exact value {}",
                        lo.value, lo.citation, ex.value
                    ));
                }
            }
        }
        self.inconsistencies = issues;
    }
}

/// Every applicable bound for dimension `d` and spread `k`.
pub fn bounds_report<T: LengthScalar>(d: u32, k: u32) -> Result<BoundsReport<T>> {
    if k == 0 || d < k {
        return Err(invalid(format!("need d >= k >= 1; got d={d}, k={k}")));
    }
    let l = run_excess(d, k);
    let mut report = BoundsReport {
        d,
        k,
        l,
        lower_bounds: Vec::new(),
        upper_bounds: Vec::new(),
        exact: None,
        inconsistencies: Vec::new(),
    };

    if let Ok(v) = singleton_length_lb::<T>(d, k) {
        report.lower_bounds.push(Bound {
            value: v,
            quantity: Quantity::MaxLength,
            citation: Citation::SingletonLowerBound,
        });
    }

    if let Some(l) = l {
        let min_run = k + l;
        let family = 4 * i128::from(k) + 2 * i128::from(l);
        match regime(k, l, 3, 2) {
            Some(Regime::OddEven) => {
                let v: T = scalar(family)?;
                let sym = Quantity::SymmetricLongRunMaxLength { min_run };
                report.lower_bounds.push(Bound {
                    value: v.clone(),
                    quantity: sym,
                    citation: Citation::SymmetricFamilyExact,
                });
                report.upper_bounds.push(Bound {
                    value: v.clone(),
                    quantity: sym,
                    citation: Citation::SymmetricFamilyExact,
                });
                report.lower_bounds.push(Bound {
                    value: v,
                    quantity: Quantity::MaxLength,
                    citation: Citation::SymmetricFamilyLowerBound,
                });
            }
            Some(Regime::EvenOdd) => report.lower_bounds.push(Bound {
                value: scalar(family)?,
                quantity: Quantity::MaxLength,
                citation: Citation::ProjectedFamilyLowerBound,
            }),
            None => {}
        }
        if let Ok(v) = douglas_upper::<T>(k, l) {
            report.upper_bounds.push(Bound {
                value: v,
                quantity: Quantity::LongRunMaxLength { min_run },
                citation: if k % 2 == 0 {
                    Citation::DouglasUpperEvenSpread
                } else {
                    Citation::DouglasUpperOddSpread
                },
            });
        }
    }

    if let Some(v) = douglas_exact::<T>(d, k) {
        report.exact = Some(Bound {
            value: v,
            quantity: Quantity::MaxLength,
            citation: Citation::DouglasExact,
        });
    }

    report.audit();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn singleton_dimension() {
        assert_eq!(singleton_dim_bound(9, 13).unwrap(), 16);
        assert_eq!(singleton_dim_bound(2, 4).unwrap(), 5);
        assert_eq!(singleton_dim_bound(5, 7).unwrap(), 9);
        assert!(singleton_dim_bound(5, 6).is_err());
    }

    #[test]
    fn singleton_length() {
        assert_eq!(singleton_length_lb::<u64>(16, 9).unwrap(), 40);
        assert_eq!(singleton_length_lb::<u64>(9, 5).unwrap(), 24);
        assert_eq!(singleton_length_lb::<u64>(6, 5).unwrap(), 12);
        assert!(singleton_length_lb::<u64>(5, 5).is_err());
        assert!(singleton_length_lb::<u64>(16, 8).is_err());
        // 2 * 2^79 overflows u64 but not BigUint
        assert!(singleton_length_lb::<u64>(80, 1).is_err());
        assert_eq!(
            singleton_length_lb::<BigUint>(80, 1).unwrap(),
            BigUint::from(2u32) << 79usize
        );
    }

    #[test]
    fn douglas() {
        assert_eq!(douglas_upper::<u64>(9, 4).unwrap(), 50);
        assert_eq!(douglas_upper::<u64>(8, 3).unwrap(), 40);
        assert_eq!(douglas_upper::<u64>(5, 2).unwrap(), 28);
        assert!(douglas_upper::<u64>(8, 4).is_err());
        assert!(douglas_upper::<u64>(7, 4).is_err());

        assert_eq!(douglas_exact::<u64>(5, 2), Some(14));
        assert_eq!(douglas_exact::<u64>(6, 3), Some(16));
        assert_eq!(douglas_exact::<u64>(16, 9), Some(44));
        assert_eq!(douglas_exact::<u64>(9, 5), Some(24));
        assert_eq!(douglas_exact::<u64>(10, 5), None);
        // the wide case needs k >= 9
        assert_eq!(douglas_exact::<u64>(13, 7), None);
    }

    #[test]
    fn family_max() {
        assert_eq!(symmetric_family_max::<u64>(9, 4).unwrap(), 44);
        assert_eq!(symmetric_family_max::<u64>(5, 2).unwrap(), 24);
        assert_eq!(symmetric_family_max::<u64>(11, 4).unwrap(), 52);
        assert!(symmetric_family_max::<u64>(7, 4).is_err());
    }

    #[test]
    fn report_16_9() {
        let r = bounds_report::<u64>(16, 9).unwrap();
        assert_eq!(r.l, Some(4));
        assert!(r.is_consistent(), "{:?}", r.inconsistencies);
        let lower: Vec<(u64, Citation)> = r.lower_bounds.iter().map(|b| (b.value, b.citation)).collect();
        assert!(lower.contains(&(40, Citation::SingletonLowerBound)));
        assert!(lower.contains(&(44, Citation::SymmetricFamilyLowerBound)));
        assert_eq!(r.exact.as_ref().map(|b| b.value), Some(44));
        assert_eq!(r.best_lower(Quantity::MaxLength), Some(&44));
    }

    #[test]
    fn report_projection_and_family() {
        let r = bounds_report::<u64>(11, 6).unwrap();
        assert!(r
            .lower_bounds
            .iter()
            .any(|b| b.value == 30 && b.citation == Citation::ProjectedFamilyLowerBound));
        let r = bounds_report::<u64>(9, 5).unwrap();
        let lows: Vec<u64> = r.lower_bounds.iter().map(|b| b.value).collect();
        assert!(lows.iter().filter(|&&v| v == 24).count() >= 2);
        assert!(bounds_report::<u64>(3, 4).is_err());
    }

    #[test]
    fn audit_flags_conflicts() {
        let mut r = bounds_report::<u64>(16, 9).unwrap();
        r.exact.as_mut().unwrap().value = 41;
        r.audit();
        assert!(!r.is_consistent());
    }
}
