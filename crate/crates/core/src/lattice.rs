//! Chern-class arithmetic on H-contracted numerical classes.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::rational::{format_rational, frac, is_integer, parse_rational, q, Q};

/// Polarization data: the value of `H^n`, the dimension `n`, and whether
/// the Picard group is generated by `H` (so that `c1 = kH`, `k ∈ Z`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GeometryRepr", into = "GeometryRepr")]
pub struct Geometry {
    hn: i64,
    dim: u8,
    pic_rank_one: bool,
}

#[derive(Serialize, Deserialize)]
struct GeometryRepr {
    hn: i64,
    dim: u8,
    pic_rank_one: bool,
}

impl TryFrom<GeometryRepr> for Geometry {
    type Error = Error;

    fn try_from(r: GeometryRepr) -> Result<Self> {
        Geometry::new(r.hn, r.dim, r.pic_rank_one)
    }
}

impl From<Geometry> for GeometryRepr {
    fn from(g: Geometry) -> Self {
        GeometryRepr {
            hn: g.hn,
            dim: g.dim,
            pic_rank_one: g.pic_rank_one,
        }
    }
}

impl Geometry {
    pub fn new(hn: i64, dim: u8, pic_rank_one: bool) -> Result<Self> {
        if hn < 1 {
            return Err(Error::InvalidGeometry(format!(
                "H^n must be positive, got {hn}"
            )));
        }
        if !(2..=3).contains(&dim) {
            return Err(Error::InvalidGeometry(format!(
                "dimension must be 2 or 3, got {dim}"
            )));
        }
        Ok(Geometry {
            hn,
            dim,
            pic_rank_one,
        })
    }

    /// A surface with `Pic = ZH` and `H² = hn`.
    pub fn surface(hn: i64) -> Result<Self> {
        Geometry::new(hn, 2, true)
    }

    pub fn hn(&self) -> i64 {
        self.hn
    }

    pub fn hn_q(&self) -> Q {
        q(self.hn)
    }

    pub fn dim(&self) -> u8 {
        self.dim
    }

    pub fn pic_rank_one(&self) -> bool {
        self.pic_rank_one
    }

    pub(crate) fn require_pic1(&self) -> Result<()> {
        if self.pic_rank_one {
            Ok(())
        } else {
            Err(Error::RequiresPicardRankOne)
        }
    }
}

/// `(r, c1·H^{n-1}, ch2·H^{n-2})` of an object.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumericalClass {
    pub r: i64,
    pub c1h: Q,
    pub ch2h: Q,
}

impl NumericalClass {
    pub fn new(r: i64, c1h: Q, ch2h: Q) -> Self {
        NumericalClass { r, c1h, ch2h }
    }

    /// Integer-entry shorthand, mostly for tests and fixtures.
    pub fn ints(r: i64, c1h: i64, ch2h: i64) -> Self {
        NumericalClass::new(r, q(c1h), q(ch2h))
    }

    pub fn zero() -> Self {
        NumericalClass::ints(0, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.r == 0 && self.c1h.is_zero() && self.ch2h.is_zero()
    }

    /// `c1²·H^{n-2}`, recoverable only when `c1` is a multiple of `H`.
    pub fn c1_squared(&self, g: &Geometry) -> Result<Q> {
        g.require_pic1()?;
        Ok(&self.c1h * &self.c1h / g.hn_q())
    }

    /// Whether the class lies on the integral lattice of a Picard-rank-one
    /// surface: `c1H = k·hn` with `k ∈ Z` and `ch2H − k²hn/2 ∈ Z`.
    pub fn is_pic1_integral(&self, g: &Geometry) -> bool {
        if !g.pic_rank_one() {
            return false;
        }
        let k = &self.c1h / g.hn_q();
        if !is_integer(&k) {
            return false;
        }
        let c2 = &k * &k * g.hn_q() / q(2) - &self.ch2h;
        is_integer(&c2)
    }

    /// The `c1 = kH` coefficient, when integral.
    pub fn pic1_degree(&self, g: &Geometry) -> Option<i64> {
        let k = &self.c1h / g.hn_q();
        if is_integer(&k) {
            crate::rational::to_i64(k.numer())
        } else {
            None
        }
    }
}

impl fmt::Display for NumericalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{}",
            self.r,
            format_rational(&self.c1h),
            format_rational(&self.ch2h)
        )
    }
}

impl FromStr for NumericalClass {
    type Err = ParseError;

    /// `"r,c1H,ch2H"`, e.g. `"1,72,31"` or `"-1,0,3/2"`.
    fn from_str(input: &str) -> Result<Self, ParseError> {
        let mut parts = input.split(',');
        let (Some(r), Some(c1h), Some(ch2h), None) =
            (parts.next(), parts.next(), parts.next(), parts.next())
        else {
            return Err(ParseError::new(
                "class",
                input,
                "expected three comma-separated fields",
            ));
        };
        let r_text = r.trim();
        let digits = r_text.strip_prefix('-').unwrap_or(r_text);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseError::new("class", input, "rank must be an integer"));
        }
        let r: i64 = r_text
            .parse()
            .map_err(|_| ParseError::new("class", input, "rank out of range"))?;
        let c1h = parse_rational(c1h).map_err(|e| ParseError::new("class", input, e.reason))?;
        let ch2h = parse_rational(ch2h).map_err(|e| ParseError::new("class", input, e.reason))?;
        Ok(NumericalClass { r, c1h, ch2h })
    }
}

impl Serialize for NumericalClass {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for NumericalClass {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(de)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

impl Add for &NumericalClass {
    type Output = NumericalClass;

    fn add(self, rhs: &NumericalClass) -> NumericalClass {
        NumericalClass {
            r: self.r + rhs.r,
            c1h: &self.c1h + &rhs.c1h,
            ch2h: &self.ch2h + &rhs.ch2h,
        }
    }
}

impl Add for NumericalClass {
    type Output = NumericalClass;

    fn add(self, rhs: NumericalClass) -> NumericalClass {
        &self + &rhs
    }
}

impl Sub for &NumericalClass {
    type Output = NumericalClass;

    fn sub(self, rhs: &NumericalClass) -> NumericalClass {
        NumericalClass {
            r: self.r - rhs.r,
            c1h: &self.c1h - &rhs.c1h,
            ch2h: &self.ch2h - &rhs.ch2h,
        }
    }
}

impl Sub for NumericalClass {
    type Output = NumericalClass;

    fn sub(self, rhs: NumericalClass) -> NumericalClass {
        &self - &rhs
    }
}

impl Neg for &NumericalClass {
    type Output = NumericalClass;

    fn neg(self) -> NumericalClass {
        NumericalClass {
            r: -self.r,
            c1h: -&self.c1h,
            ch2h: -&self.ch2h,
        }
    }
}

impl Neg for NumericalClass {
    type Output = NumericalClass;

    fn neg(self) -> NumericalClass {
        -&self
    }
}

impl Mul<&NumericalClass> for i64 {
    type Output = NumericalClass;

    fn mul(self, rhs: &NumericalClass) -> NumericalClass {
        NumericalClass {
            r: self * rhs.r,
            c1h: q(self) * &rhs.c1h,
            ch2h: q(self) * &rhs.ch2h,
        }
    }
}

/// Intersection data of a divisor `C`: `C·H^{n-1}` and `C²·H^{n-2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DivisorData {
    pub c_h: i64,
    pub c2: i64,
}

impl DivisorData {
    pub fn new(c_h: i64, c2: i64) -> Self {
        DivisorData { c_h, c2 }
    }
}

impl fmt::Display for DivisorData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.c_h, self.c2)
    }
}

impl FromStr for DivisorData {
    type Err = ParseError;

    /// `cH,c2` with integer entries.
    fn from_str(input: &str) -> Result<Self, ParseError> {
        let bad = |why: &str| ParseError::new("divisor data", input, why);
        let (a, b) = input.split_once(',').ok_or_else(|| bad("expected cH,c2"))?;
        let int = |t: &str| -> Result<i64, ParseError> {
            let t = t.trim();
            let digits = t.strip_prefix('-').unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad("entries must be integers"));
            }
            t.parse().map_err(|_| bad("entry out of range"))
        };
        Ok(DivisorData::new(int(a)?, int(b)?))
    }
}

/// `cH,c2;cH,c2;...`. Blank input is the empty list; a trailing `;` is allowed.
pub fn parse_divisor_list(input: &str) -> Result<Vec<DivisorData>, ParseError> {
    let text = input.trim();
    let text = text.strip_suffix(';').unwrap_or(text);
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(';').map(str::parse).collect()
}

/// A Q-divisor `C = D/r` kept as the honest divisor `D` plus its denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QDivisor {
    pub divisor: DivisorData,
    pub denom: i64,
}

impl QDivisor {
    pub fn c_h(&self) -> Q {
        frac(self.divisor.c_h, self.denom)
    }

    pub fn c2(&self) -> Q {
        frac(self.divisor.c2, self.denom * self.denom)
    }
}

/// The classes the engine knows by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "tag", content = "n", rename_all = "snake_case")]
pub enum StandardClass {
    /// `O[1]`.
    OShift,
    /// `L ⊗ I_Z` with `Z` of length `d`.
    LIdeal(u32),
    /// `I_W^∨[1]` with `W` of length `d`.
    IdealDualShift(u32),
    /// The extension class `(0, H, H²/2)`.
    Thaddeus,
    /// `O(kH)`.
    LineBundle(i64),
}

impl StandardClass {
    /// Recognizes `cls` as one of the named classes. `LineBundle(1)` is
    /// reported as `LIdeal(0)`, and `O_shift` wins over `IdealDualShift(0)`.
    pub fn identify(cls: &NumericalClass, g: &Geometry) -> Option<StandardClass> {
        let hn = g.hn_q();
        let half = frac(1, 2);
        match cls.r {
            0 if cls.c1h == hn && cls.ch2h == &hn * &half => Some(StandardClass::Thaddeus),
            -1 if cls.c1h.is_zero() => {
                if cls.ch2h.is_zero() {
                    Some(StandardClass::OShift)
                } else if is_integer(&cls.ch2h) && cls.ch2h > Q::zero() {
                    let d = crate::rational::to_i64(cls.ch2h.numer())?;
                    Some(StandardClass::IdealDualShift(u32::try_from(d).ok()?))
                } else {
                    None
                }
            }
            1 if cls.c1h == hn => {
                let d = &hn * &half - &cls.ch2h;
                if is_integer(&d) && d >= Q::zero() {
                    let d = crate::rational::to_i64(d.numer())?;
                    Some(StandardClass::LIdeal(u32::try_from(d).ok()?))
                } else {
                    None
                }
            }
            1 => {
                let k = cls.pic1_degree(g)?;
                if cls == &standard_class(StandardClass::LineBundle(k), g) {
                    Some(StandardClass::LineBundle(k))
                } else {
                    None
                }
            }
            _ => None,
        }
    }
}

impl fmt::Display for StandardClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StandardClass::OShift => write!(f, "o_shift"),
            StandardClass::LIdeal(d) => write!(f, "l_ideal:{d}"),
            StandardClass::IdealDualShift(d) => write!(f, "ideal_dual_shift:{d}"),
            StandardClass::Thaddeus => write!(f, "thaddeus"),
            StandardClass::LineBundle(k) => write!(f, "line_bundle:{k}"),
        }
    }
}

impl FromStr for StandardClass {
    type Err = ParseError;

    /// `o_shift`, `l_ideal:d`, `ideal_dual_shift:d`, `thaddeus`, `line_bundle:k`.
    fn from_str(input: &str) -> Result<Self, ParseError> {
        let text = input.trim();
        let (name, arg) = match text.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (text, None),
        };
        let bad = |why: &str| ParseError::new("standard class", input, why);
        let unsigned = |a: Option<&str>| -> Result<u32, ParseError> {
            let a = a.ok_or_else(|| bad("missing length argument"))?;
            if a.is_empty() || !a.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad("length must be a non-negative integer"));
            }
            a.parse().map_err(|_| bad("length out of range"))
        };
        match name {
            "o_shift" if arg.is_none() => Ok(StandardClass::OShift),
            "thaddeus" if arg.is_none() => Ok(StandardClass::Thaddeus),
            "l_ideal" => Ok(StandardClass::LIdeal(unsigned(arg)?)),
            "ideal_dual_shift" => Ok(StandardClass::IdealDualShift(unsigned(arg)?)),
            "line_bundle" => {
                let a = arg.ok_or_else(|| bad("missing twist argument"))?;
                let digits = a.strip_prefix('-').unwrap_or(a);
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(bad("twist must be an integer"));
                }
                Ok(StandardClass::LineBundle(
                    a.parse().map_err(|_| bad("twist out of range"))?,
                ))
            }
            _ => Err(bad("unknown class name")),
        }
    }
}

pub fn standard_class(tag: StandardClass, g: &Geometry) -> NumericalClass {
    let hn = g.hn_q();
    let half_hn = &hn / q(2);
    match tag {
        StandardClass::OShift => NumericalClass::ints(-1, 0, 0),
        StandardClass::LIdeal(d) => NumericalClass::new(1, hn, half_hn - q(d.into())),
        StandardClass::IdealDualShift(d) => NumericalClass::new(-1, Q::zero(), q(d.into())),
        StandardClass::Thaddeus => NumericalClass::new(0, hn, half_hn),
        StandardClass::LineBundle(k) => NumericalClass::new(1, q(k) * &hn, q(k) * q(k) * half_hn),
    }
}

/// `μ_H = c1·H^{n-1} / (r·H^n)`.
pub fn mumford_slope(cls: &NumericalClass, g: &Geometry) -> Result<Q> {
    if cls.r == 0 {
        return Err(Error::ZeroRank);
    }
    Ok(&cls.c1h / (q(cls.r) * g.hn_q()))
}

/// Shift by one: every Chern component changes sign.
pub fn shift1(cls: &NumericalClass) -> NumericalClass {
    -cls
}

/// Tensoring by `O(mH)`: multiplies the Chern character by `e^{mH}`.
pub fn twist(cls: &NumericalClass, m: i64, g: &Geometry) -> Result<NumericalClass> {
    g.require_pic1()?;
    let m = q(m);
    let r = q(cls.r);
    let hn = g.hn_q();
    Ok(NumericalClass {
        r: cls.r,
        c1h: &cls.c1h + &m * &r * &hn,
        ch2h: &cls.ch2h + &m * &cls.c1h + &m * &m * r * hn / q(2),
    })
}

/// Hodge index: `(C²)(H^n) ≤ (C·H^{n-1})²`.
pub fn hodge_ok(dv: &DivisorData, g: &Geometry) -> bool {
    i128::from(dv.c2) * i128::from(g.hn()) <= i128::from(dv.c_h) * i128::from(dv.c_h)
}
