//! Tilted rank, degree, central charge and slope at a point `(s, τ = t²)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::destab::bogomolov_cap;
use crate::error::{Error, ParseError, Result};
use crate::lattice::{mumford_slope, Geometry, NumericalClass};
use crate::rational::{format_rational, frac, parse_rational, q, Q};

/// A rational point of the upper strip. `t` itself never materializes;
/// only `τ = t²` is stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TiltPoint {
    s: Q,
    tau: Q,
}

impl TiltPoint {
    pub fn new(s: Q, tau: Q) -> Result<Self> {
        if !tau.is_positive() {
            return Err(Error::PreconditionViolated(format!(
                "tilt point needs t² > 0, got {}",
                format_rational(&tau)
            )));
        }
        Ok(TiltPoint { s, tau })
    }

    /// Convenience for a rational `t`: stores `t²`.
    pub fn from_t(s: Q, t: Q) -> Result<Self> {
        if !t.is_positive() {
            return Err(Error::PreconditionViolated("t must be positive".into()));
        }
        let tau = &t * &t;
        TiltPoint::new(s, tau)
    }

    pub fn s(&self) -> &Q {
        &self.s
    }

    pub fn tau(&self) -> &Q {
        &self.tau
    }
}

impl fmt::Display for TiltPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{}",
            format_rational(&self.s),
            format_rational(&self.tau)
        )
    }
}

impl FromStr for TiltPoint {
    type Err = ParseError;

    /// `"s,t2"`, e.g. `"1/2,1/9"`.
    fn from_str(input: &str) -> Result<Self, ParseError> {
        let Some((s, tau)) = input.split_once(',') else {
            return Err(ParseError::new("tilt point", input, "expected \"s,t2\""));
        };
        let s = parse_rational(s).map_err(|e| ParseError::new("tilt point", input, e.reason))?;
        let tau =
            parse_rational(tau).map_err(|e| ParseError::new("tilt point", input, e.reason))?;
        TiltPoint::new(s, tau).map_err(|e| ParseError::new("tilt point", input, e.to_string()))
    }
}

impl Serialize for TiltPoint {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TiltPoint {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(de)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// `r_s = c1·H^{n-1} − s·r·H^n`.
pub fn rank_s(cls: &NumericalClass, s: &Q, g: &Geometry) -> Q {
    &cls.c1h - s * q(cls.r) * g.hn_q()
}

/// `d_(s,t) = ch2·H^{n-2} − s·c1·H^{n-1} + ((s² − t²)/2)·r·H^n`.
pub fn deg_st(cls: &NumericalClass, pt: &TiltPoint, g: &Geometry) -> Q {
    let s = &pt.s;
    &cls.ch2h - s * &cls.c1h + (s * s - &pt.tau) / q(2) * q(cls.r) * g.hn_q()
}

/// `Z = −d + i·t·r_s`, stored with the imaginary part divided by `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralCharge {
    #[serde(with = "crate::rational::serde_q")]
    pub re: Q,
    #[serde(with = "crate::rational::serde_q")]
    pub im_over_t: Q,
}

pub fn central_charge(cls: &NumericalClass, pt: &TiltPoint, g: &Geometry) -> CentralCharge {
    CentralCharge {
        re: -deg_st(cls, pt, g),
        im_over_t: rank_s(cls, &pt.s, g),
    }
}

/// `a + i·t·b` with `t² = τ`: enough of `C` to expand `e^{−(s+it)H}` exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
struct TiltComplex {
    re: Q,
    im_t: Q,
}

impl TiltComplex {
    fn real(re: Q) -> Self {
        TiltComplex {
            re,
            im_t: Q::zero(),
        }
    }

    fn add(&self, o: &Self) -> Self {
        TiltComplex {
            re: &self.re + &o.re,
            im_t: &self.im_t + &o.im_t,
        }
    }

    fn mul(&self, o: &Self, tau: &Q) -> Self {
        TiltComplex {
            re: &self.re * &o.re - tau * &self.im_t * &o.im_t,
            im_t: &self.re * &o.im_t + &self.im_t * &o.re,
        }
    }

    fn scale(&self, k: &Q) -> Self {
        TiltComplex {
            re: &self.re * k,
            im_t: &self.im_t * k,
        }
    }
}

/// Checks `Z(E) = −∫ e^{−(s+it)H}·ch(E)·H^{n−2}` by expanding the exponential
/// in `(s + it)` arithmetic and comparing against [`central_charge`].
pub fn verify_compact_form(cls: &NumericalClass, pt: &TiltPoint, g: &Geometry) -> bool {
    let tau = &pt.tau;
    // w = −(s + it)
    let w = TiltComplex {
        re: -&pt.s,
        im_t: q(-1),
    };
    // Degree-two part of e^{wH}·(r + c1 + ch2), contracted against H^{n-2}.
    let top = TiltComplex::real(cls.ch2h.clone())
        .add(&w.scale(&cls.c1h))
        .add(&w.mul(&w, tau).scale(&(q(cls.r) * g.hn_q() / q(2))));
    let integral = top.scale(&q(-1));
    let z = central_charge(cls, pt, g);
    integral.re == z.re && integral.im_t == z.im_over_t
}

/// `μ_{s+it} = num / (t·den)` kept projectively.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectiveSlope {
    #[serde(with = "crate::rational::serde_q")]
    pub num: Q,
    #[serde(with = "crate::rational::serde_q")]
    pub den: Q,
}

impl ProjectiveSlope {
    pub fn is_zero_charge(&self) -> bool {
        self.num.is_zero() && self.den.is_zero()
    }

    pub fn is_maximal_phase(&self) -> bool {
        self.den.is_zero() && self.num.is_positive()
    }

    /// `μ·t = d/r_s`, the human-facing number. `None` when `r_s = 0`.
    pub fn display_slope(&self) -> Option<Q> {
        if self.den.is_zero() {
            None
        } else {
            Some(&self.num / &self.den)
        }
    }
}

pub fn slope_frac(cls: &NumericalClass, pt: &TiltPoint, g: &Geometry) -> ProjectiveSlope {
    ProjectiveSlope {
        num: deg_st(cls, pt, g),
        den: rank_s(cls, &pt.s, g),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
    Both,
}

/// Outcome of comparing two slopes at a common point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SlopeOrdering {
    Less,
    Equal,
    Greater,
    /// The named side has `r_s = 0 < d` and the other side is finite.
    MaximalPhase(Side),
    /// The named side has vanishing central charge.
    ZeroCharge(Side),
}

impl SlopeOrdering {
    /// Folds maximal-phase outcomes into an ordering (left maximal ⇒ greater).
    pub fn as_ordering(self) -> Option<Ordering> {
        match self {
            SlopeOrdering::Less | SlopeOrdering::MaximalPhase(Side::Right) => Some(Ordering::Less),
            SlopeOrdering::Equal | SlopeOrdering::MaximalPhase(Side::Both) => Some(Ordering::Equal),
            SlopeOrdering::Greater | SlopeOrdering::MaximalPhase(Side::Left) => {
                Some(Ordering::Greater)
            }
            SlopeOrdering::ZeroCharge(_) => None,
        }
    }
}

#[derive(PartialEq, Eq)]
enum Extended {
    NegInf,
    Finite,
    PosInf,
}

fn extended(p: &ProjectiveSlope) -> Extended {
    if !p.den.is_zero() {
        Extended::Finite
    } else if p.num.is_positive() {
        Extended::PosInf
    } else {
        Extended::NegInf
    }
}

/// Compares two projective slopes; `t > 0` cancels from cross multiplication.
pub fn compare_slopes(a: &ProjectiveSlope, b: &ProjectiveSlope) -> SlopeOrdering {
    match (a.is_zero_charge(), b.is_zero_charge()) {
        (true, true) => return SlopeOrdering::ZeroCharge(Side::Both),
        (true, false) => return SlopeOrdering::ZeroCharge(Side::Left),
        (false, true) => return SlopeOrdering::ZeroCharge(Side::Right),
        (false, false) => {}
    }
    let ord = match (extended(a), extended(b)) {
        (Extended::PosInf, Extended::PosInf) => Ordering::Equal,
        (Extended::PosInf, _) => return SlopeOrdering::MaximalPhase(Side::Left),
        (_, Extended::PosInf) => return SlopeOrdering::MaximalPhase(Side::Right),
        (Extended::NegInf, Extended::NegInf) => Ordering::Equal,
        (Extended::NegInf, _) => Ordering::Less,
        (_, Extended::NegInf) => Ordering::Greater,
        (Extended::Finite, Extended::Finite) => {
            if a.den.is_positive() && b.den.is_positive() {
                (&a.num * &b.den).cmp(&(&b.num * &a.den))
            } else {
                (&a.num / &a.den).cmp(&(&b.num / &b.den))
            }
        }
    };
    match ord {
        Ordering::Less => SlopeOrdering::Less,
        Ordering::Equal => SlopeOrdering::Equal,
        Ordering::Greater => SlopeOrdering::Greater,
    }
}

pub fn slope_cmp(
    a: &NumericalClass,
    b: &NumericalClass,
    pt: &TiltPoint,
    g: &Geometry,
) -> SlopeOrdering {
    compare_slopes(&slope_frac(a, pt, g), &slope_frac(b, pt, g))
}

/// A half-open Mumford-slope window `lower < μ ≤ upper`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeWindow {
    pub lower: Q,
    pub upper: Q,
    pub slope: Q,
}

impl SlopeWindow {
    pub fn contains(&self) -> bool {
        self.lower < self.slope && self.slope <= self.upper
    }

    /// The slope sits on either endpoint.
    pub fn touches_boundary(&self) -> bool {
        self.slope == self.lower || self.slope == self.upper
    }
}

fn require_sheaf_rank(cls: &NumericalClass) -> Result<()> {
    match cls.r {
        0 => Err(Error::ZeroRank),
        r if r < 0 => Err(Error::PreconditionViolated(format!(
            "slope window needs a sheaf class of positive rank, got r = {r}"
        ))),
        _ => Ok(()),
    }
}

/// Window `s < μ_H ≤ s + (1 − s)/r` for subsheaves of `L ⊗ I_Z`.
pub fn window_l(cls: &NumericalClass, s: &Q, g: &Geometry) -> Result<SlopeWindow> {
    require_sheaf_rank(cls)?;
    let slope = mumford_slope(cls, g)?;
    Ok(SlopeWindow {
        lower: s.clone(),
        upper: s + (q(1) - s) / q(cls.r),
        slope,
    })
}

/// Window `s(1 − 1/r) < μ_H ≤ s` for `Q` with `Q[1]` a quotient of `O[1]`.
pub fn window_o(cls: &NumericalClass, s: &Q, g: &Geometry) -> Result<SlopeWindow> {
    require_sheaf_rank(cls)?;
    let slope = mumford_slope(cls, g)?;
    Ok(SlopeWindow {
        lower: s * (q(1) - frac(1, cls.r)),
        upper: s.clone(),
        slope,
    })
}

pub fn sub_window_l(cls: &NumericalClass, s: &Q, g: &Geometry) -> Result<bool> {
    Ok(window_l(cls, s, g)?.contains())
}

pub fn quot_window_o(cls: &NumericalClass, s: &Q, g: &Geometry) -> Result<bool> {
    Ok(window_o(cls, s, g)?.contains())
}

/// `d_(s,t)` of a class with `r_s = 0`, after checking the decomposition
///
/// `d = (cap − ch2(F)) − (c1(F) − s·r(F)·H)²/(2r(F)) + (τ/2)·r(F)·H^n`
///
/// for the shifted sheaf `F[1]` (or `d = ch2` for a torsion class), which
/// makes the non-negativity manifest.
pub fn positivity_margin(cls: &NumericalClass, pt: &TiltPoint, g: &Geometry) -> Result<Q> {
    let s = &pt.s;
    if !rank_s(cls, s, g).is_zero() {
        return Err(Error::PreconditionViolated(format!(
            "r_s({cls}) = {} is not zero",
            format_rational(&rank_s(cls, s, g))
        )));
    }
    let d = deg_st(cls, pt, g);
    match cls.r {
        0 => {
            // r = 0 and r_s = 0 force c1H = 0.
            if cls.ch2h.is_negative() {
                return Err(Error::PreconditionViolated(format!(
                    "torsion class {cls} has negative length"
                )));
            }
            assert_eq!(d, cls.ch2h);
            Ok(d)
        }
        r if r > 0 => Err(Error::PreconditionViolated(format!(
            "a sheaf of positive rank with μ_H = s does not lie in the tilted heart ({cls})"
        ))),
        r => {
            let rank = -r;
            let f_c1h = -&cls.c1h;
            let f_ch2h = -&cls.ch2h;
            let cap = bogomolov_cap(rank, &f_c1h, g)?;
            if f_ch2h > cap {
                return Err(Error::PreconditionViolated(format!(
                    "shifted sheaf of {cls} violates the Bogomolov bound"
                )));
            }
            let hn = g.hn_q();
            let excess = &f_c1h - s * q(rank) * &hn;
            let hodge_term = &excess * &excess / (q(2 * rank) * &hn);
            let slack = &cap - &f_ch2h;
            let closed = &slack - hodge_term + &pt.tau / q(2) * q(rank) * hn;
            assert_eq!(d, closed, "positivity decomposition failed for {cls}");
            Ok(d)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{standard_class, StandardClass};

    fn g(hn: i64) -> Geometry {
        Geometry::surface(hn).unwrap()
    }

    fn pt(s: Q, tau: Q) -> TiltPoint {
        TiltPoint::new(s, tau).unwrap()
    }

    #[test]
    fn tilted_rank() {
        let half = frac(1, 2);
        let o = standard_class(StandardClass::OShift, &g(100));
        assert_eq!(rank_s(&o, &half, &g(100)), q(50));
        for d in 0..4 {
            let lz = standard_class(StandardClass::LIdeal(d), &g(72));
            assert_eq!(rank_s(&lz, &half, &g(72)), q(36));
        }
        let th = standard_class(StandardClass::Thaddeus, &g(72));
        assert_eq!(rank_s(&th, &frac(1, 5), &g(72)), q(72));
    }

    #[test]
    fn tilted_degree() {
        let th = standard_class(StandardClass::Thaddeus, &g(30));
        for tau in [frac(1, 9), frac(3, 2)] {
            assert_eq!(deg_st(&th, &pt(frac(1, 2), tau), &g(30)), q(0));
        }
        let lz = standard_class(StandardClass::LIdeal(4), &g(100));
        assert_eq!(deg_st(&lz, &pt(frac(1, 2), frac(1, 100)), &g(100)), q(8));
        let o = standard_class(StandardClass::OShift, &g(17));
        let s = frac(2, 3);
        assert_eq!(deg_st(&o, &pt(s.clone(), &s * &s), &g(17)), q(0));
    }

    #[test]
    fn charges() {
        let p = pt(frac(1, 2), frac(1, 7));
        let z = central_charge(&NumericalClass::zero(), &p, &g(5));
        assert_eq!((z.re, z.im_over_t), (q(0), q(0)));
        let th = standard_class(StandardClass::Thaddeus, &g(12));
        let z = central_charge(&th, &p, &g(12));
        assert_eq!((z.re, z.im_over_t), (q(0), q(12)));
    }

    #[test]
    fn compact_form() {
        let cls = NumericalClass::ints(1, 7, 3);
        assert!(verify_compact_form(
            &cls,
            &pt(frac(1, 3), frac(1, 4)),
            &g(10)
        ));
        assert!(verify_compact_form(
            &NumericalClass::zero(),
            &pt(q(0), q(1)),
            &g(10)
        ));
    }

    #[test]
    fn slope_comparisons() {
        let geo = g(100);
        let p = pt(frac(1, 2), frac(1, 16));
        let o = standard_class(StandardClass::OShift, &geo);
        let l = standard_class(StandardClass::LIdeal(0), &geo);
        assert_eq!(slope_cmp(&o, &l, &p, &geo), SlopeOrdering::Less);
        assert_eq!(slope_cmp(&l, &l, &p, &geo), SlopeOrdering::Equal);

        let d = 3;
        let lz = standard_class(StandardClass::LIdeal(d), &geo);
        let iw = standard_class(StandardClass::IdealDualShift(d), &geo);
        // 1/4 − 6/100 = 19/100
        let p = pt(frac(1, 2), frac(1, 10));
        assert_eq!(slope_cmp(&lz, &iw, &p, &geo), SlopeOrdering::Greater);
    }

    #[test]
    fn maximal_phase_and_zero_charge() {
        let geo = g(10);
        let p = pt(frac(1, 2), frac(1, 9));
        // F[1] with μ_H(F) = 1/2: r_s = 0, d > 0.
        let max = NumericalClass::ints(-2, -10, -2);
        let l = standard_class(StandardClass::LineBundle(1), &geo);
        assert_eq!(
            slope_cmp(&max, &l, &p, &geo),
            SlopeOrdering::MaximalPhase(Side::Left)
        );
        assert_eq!(
            slope_cmp(&l, &max, &p, &geo),
            SlopeOrdering::MaximalPhase(Side::Right)
        );
        assert_eq!(slope_cmp(&max, &max, &p, &geo), SlopeOrdering::Equal);
        let zero = NumericalClass::zero();
        assert_eq!(
            slope_cmp(&zero, &l, &p, &geo),
            SlopeOrdering::ZeroCharge(Side::Left)
        );
        assert_eq!(
            slope_cmp(&l, &zero, &p, &geo),
            SlopeOrdering::ZeroCharge(Side::Right)
        );
        assert_eq!(
            slope_cmp(&zero, &zero, &p, &geo),
            SlopeOrdering::ZeroCharge(Side::Both)
        );
    }

    #[test]
    fn windows() {
        let geo = g(12);
        for s in [frac(1, 7), frac(1, 2), frac(9, 10)] {
            let l = NumericalClass::ints(1, 12, 0);
            assert!(sub_window_l(&l, &s, &geo).unwrap());
            let boundary = NumericalClass::new(2, &s * q(12) * q(2), q(0));
            assert!(quot_window_o(&boundary, &s, &geo).unwrap());
            assert!(window_o(&boundary, &s, &geo).unwrap().touches_boundary());
        }
        let high_rank = NumericalClass::ints(3, 12, 0);
        assert!(!sub_window_l(&high_rank, &frac(1, 2), &geo).unwrap());
        assert_eq!(
            sub_window_l(&NumericalClass::ints(0, 12, 0), &frac(1, 2), &geo),
            Err(Error::ZeroRank)
        );
    }

    #[test]
    fn positivity() {
        let geo = g(20);
        let p = pt(frac(1, 3), frac(2, 5));
        assert_eq!(
            positivity_margin(&NumericalClass::ints(0, 0, 5), &p, &geo).unwrap(),
            q(5)
        );
        assert_eq!(
            positivity_margin(&NumericalClass::zero(), &p, &geo).unwrap(),
            q(0)
        );
        let s = frac(1, 2);
        let extremal = NumericalClass::new(-2, -q(2) * &s * q(20), -(&s * &s) * q(20));
        let p = pt(s, frac(1, 9));
        assert_eq!(positivity_margin(&extremal, &p, &geo).unwrap(), frac(20, 9));
        assert!(positivity_margin(&NumericalClass::ints(1, 20, 0), &p, &geo).is_err());
        assert!(positivity_margin(&NumericalClass::ints(2, 20, 0), &p, &geo).is_err());
    }

    #[test]
    fn point_text_format() {
        let p: TiltPoint = "1/2,1/9".parse().unwrap();
        assert_eq!(p, pt(frac(1, 2), frac(1, 9)));
        assert_eq!(p.to_string(), "1/2,1/9");
        for bad in ["1/2", "1/2,0", "1/2,-1", "a,b", "1/2,1/9,3"] {
            assert!(bad.parse::<TiltPoint>().is_err(), "{bad:?}");
        }
        assert_eq!(
            TiltPoint::from_t(frac(1, 2), frac(1, 6)).unwrap().tau(),
            &frac(1, 36)
        );
    }
}
