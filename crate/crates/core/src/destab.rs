//! Enumeration of numerically destabilizing classes.
//!
//! Candidates live on the Picard-rank-one lattice
//! `w = (r, k·H², k²·H²/2 − c2)` with `r, k, c2 ∈ Z`. A class survives when
//! both `w` and the quotient `v − w` are admissible at the tilt point
//! (`r_s ≥ 0`, and `r_s = 0 ⇒ d ≥ 0`), both satisfy the Bogomolov bound
//! for their sign of rank, the slope of `w` is at least that of `v`, and the
//! sub/quotient slope windows hold when `v` is one of the standard classes
//! that govern them. These are necessary conditions only: nothing here
//! decides whether an actual subobject exists.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Geometry, NumericalClass, StandardClass};
use crate::rational::{ceil, floor, format_rational, frac, q, serde_q, to_i64, Q};
use crate::tilt::{
    deg_st, rank_s, slope_cmp, window_l, window_o, SlopeOrdering, SlopeWindow, TiltPoint,
};
use crate::walls::{wall, Wall};

/// `c1H²/(2·r·H^n)`: the largest `ch2·H^{n−2}` a Mumford-stable sheaf of rank `r`
/// and degree `c1H` can have.
pub fn bogomolov_cap(r: i64, c1h: &Q, g: &Geometry) -> Result<Q> {
    g.require_pic1()?;
    if r < 1 {
        return Err(Error::PreconditionViolated(format!(
            "Bogomolov cap needs positive rank, got {r}"
        )));
    }
    Ok(c1h * c1h / (q(2 * r) * g.hn_q()))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerateOptions {
    /// Largest `|r|` to scan. Required for shifted candidates; for sheaf
    /// candidates a bound is derived when absent.
    pub rank_max: Option<u32>,
    pub include_shifted: bool,
    pub include_torsion: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    OnWall,
    StrictlyAbove,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    Finite,
    MaximalPhase,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubSide {
    SubSheaf,
    ShiftedSub,
    TorsionSub,
}

impl SubSide {
    fn of_rank(r: i64) -> Self {
        match r.signum() {
            1 => SubSide::SubSheaf,
            -1 => SubSide::ShiftedSub,
            _ => SubSide::TorsionSub,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DestabilizerCandidate {
    pub class: NumericalClass,
    pub relation: Relation,
    pub phase: Phase,
    pub side: SubSide,
    pub wall: Wall,
    /// A sub/quotient slope window was met on its boundary.
    pub window_boundary: bool,
}

impl DestabilizerCandidate {
    /// `c2` in `ch2H = k²H²/2 − c2`.
    pub fn c2(&self, g: &Geometry) -> Q {
        let k = &self.class.c1h / g.hn_q();
        &k * &k * g.hn_q() / q(2) - &self.class.ch2h
    }
}

/// A maximal-phase cell whose `ch2H` window is unbounded above: every
/// lattice value `ch2h_from, ch2h_from + 1, …` passes the filters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpenFamily {
    pub r: i64,
    #[serde(with = "serde_q")]
    pub c1h: Q,
    #[serde(with = "serde_q")]
    pub ch2h_from: Q,
    pub side: SubSide,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enumeration {
    pub candidates: Vec<DestabilizerCandidate>,
    pub open_families: Vec<OpenFamily>,
}

impl Enumeration {
    pub fn finite(&self) -> impl Iterator<Item = &DestabilizerCandidate> {
        self.candidates.iter().filter(|c| c.phase == Phase::Finite)
    }

    pub fn has_finite(&self) -> bool {
        self.finite().next().is_some()
    }
}

fn check_point(pt: &TiltPoint) -> Result<()> {
    let s = pt.s();
    if !s.is_positive() || *s >= q(1) {
        return Err(Error::PreconditionViolated(format!(
            "destabilizer search needs 0 < s < 1, got s = {}",
            format_rational(s)
        )));
    }
    Ok(())
}

fn is_thaddeus_at_half(target: &NumericalClass, pt: &TiltPoint, g: &Geometry) -> bool {
    StandardClass::identify(target, g) == Some(StandardClass::Thaddeus) && *pt.s() == frac(1, 2)
}

/// Largest sheaf rank that can still carry a destabilizer.
///
/// For the class `(0, H, H²/2)` on `s = 1/2` this is the closed form
/// `4r²τ ≤ 1`. Otherwise it comes from the relaxation
/// `d(w) ≤ x²/(2r·H²) − τ·r·H²/2` (Bogomolov, with `x = r_s(w) ∈ (0, r_s(v)]`)
/// against `d(w) ≥ μ(v)·x`: once
/// `τ·H⁴·r² + 2·H²·d(v)·r − r_s(v)² > 0` no `x` works at rank `r` or above.
/// Returns 0 when no rank qualifies.
pub fn rank_bound_at(target: &NumericalClass, pt: &TiltPoint, g: &Geometry) -> Result<u32> {
    g.require_pic1()?;
    let tau = pt.tau();
    if is_thaddeus_at_half(target, pt, g) {
        return Ok(largest_rank(|r| q(4) * q(r) * q(r) * tau <= q(1)));
    }
    let big_r = rank_s(target, pt.s(), g);
    if big_r.is_negative() {
        return Err(Error::UnsupportedTarget(format!(
            "{target} has negative tilted rank at {pt}, it is not in the heart"
        )));
    }
    if big_r.is_zero() {
        return Ok(0);
    }
    let hn = g.hn_q();
    let deg_v = deg_st(target, pt, g);
    Ok(largest_rank(|r| {
        let r = q(r);
        tau * &hn * &hn * &r * &r + q(2) * &hn * &deg_v * &r - &big_r * &big_r <= Q::zero()
    }))
}

/// Largest `r ≥ 1` with `ok(r)` for a predicate that holds on an initial
/// segment of the positive integers.
fn largest_rank(ok: impl Fn(i64) -> bool) -> u32 {
    let mut r = 0u32;
    while ok(i64::from(r) + 1) {
        r += 1;
    }
    r
}

#[derive(Default)]
struct Window {
    lower: Option<(Q, bool)>,
    upper: Option<(Q, bool)>,
}

impl Window {
    fn at_least(&mut self, v: Q, strict: bool) {
        let replace = match &self.lower {
            None => true,
            Some((cur, cur_strict)) => v > *cur || (v == *cur && strict && !cur_strict),
        };
        if replace {
            self.lower = Some((v, strict));
        }
    }

    fn at_most(&mut self, v: Q, strict: bool) {
        let replace = match &self.upper {
            None => true,
            Some((cur, cur_strict)) => v < *cur || (v == *cur && strict && !cur_strict),
        };
        if replace {
            self.upper = Some((v, strict));
        }
    }
}

/// Offsets `m ∈ Z` with `base + m` inside the bound, as an integer endpoint.
fn lattice_lower(base: &Q, (v, strict): &(Q, bool)) -> BigInt {
    let x = v - base;
    let m = ceil(&x);
    if *strict && Q::from_integer(m.clone()) == x {
        m + 1
    } else {
        m
    }
}

fn lattice_upper(base: &Q, (v, strict): &(Q, bool)) -> BigInt {
    let x = v - base;
    let m = floor(&x);
    if *strict && Q::from_integer(m.clone()) == x {
        m - 1
    } else {
        m
    }
}

/// Applies the slope window that governs subobjects (or quotients) of a
/// standard target. `None` rejects the cell, `Some(hit)` reports a
/// boundary hit.
fn structural_filter(
    kind: Option<StandardClass>,
    w: &NumericalClass,
    quotient: &NumericalClass,
    s: &Q,
    g: &Geometry,
) -> Option<bool> {
    let check = |win: Result<SlopeWindow>| -> Option<bool> {
        let win = win.ok()?;
        win.contains().then(|| win.touches_boundary())
    };
    match kind {
        Some(StandardClass::LIdeal(_)) => {
            // Subobjects of L ⊗ I_Z in the heart are torsion-free sheaves.
            if w.r < 1 {
                return None;
            }
            check(window_l(w, s, g))
        }
        Some(StandardClass::OShift) => {
            // Quotients of O[1] are Q[1] with Q torsion-free.
            if quotient.r > -1 {
                return None;
            }
            check(window_o(&-quotient, s, g))
        }
        Some(StandardClass::IdealDualShift(_)) => match quotient.r {
            r if r <= -1 => check(window_o(&-quotient, s, g)),
            // H⁰ of the quotient is supported on points.
            0 if quotient.c1h.is_zero() => Some(false),
            _ => None,
        },
        _ => Some(false),
    }
}

struct Search<'a> {
    target: &'a NumericalClass,
    pt: &'a TiltPoint,
    g: &'a Geometry,
    kind: Option<StandardClass>,
    big_r: Q,
    deg_v: Q,
}

impl Search<'_> {
    fn cell(&self, r: i64, k: i64, out: &mut Enumeration) -> Result<()> {
        let g = self.g;
        let s = self.pt.s();
        let hn = g.hn_q();
        let c1h = q(k) * &hn;
        let base = q(k) * q(k) * &hn / q(2);
        let x = rank_s(&NumericalClass::new(r, c1h.clone(), Q::zero()), s, g);
        debug_assert!(!x.is_negative() && x <= self.big_r);
        // deg(w) = ch2H + delta
        let delta = deg_st(&NumericalClass::new(r, c1h.clone(), Q::zero()), self.pt, g);

        let probe = NumericalClass::new(r, c1h.clone(), base.clone());
        let quotient_probe = self.target - &probe;
        let Some(window_boundary) = structural_filter(self.kind, &probe, &quotient_probe, s, g)
        else {
            return Ok(());
        };

        let mut win = Window::default();
        // Bogomolov on w.
        match r.signum() {
            1 => win.at_most(bogomolov_cap(r, &c1h, g)?, false),
            -1 => win.at_least(-bogomolov_cap(-r, &-&c1h, g)?, false),
            _ => {}
        }
        // Bogomolov on the quotient, written as a bound on ch2H(w).
        let r_q = self.target.r - r;
        let c1_q = &self.target.c1h - &c1h;
        match r_q.signum() {
            1 => win.at_least(&self.target.ch2h - bogomolov_cap(r_q, &c1_q, g)?, false),
            -1 => win.at_most(&self.target.ch2h + bogomolov_cap(-r_q, &-&c1_q, g)?, false),
            _ => {
                if c1_q.is_zero() {
                    win.at_most(self.target.ch2h.clone(), false);
                }
            }
        }
        // Admissibility and the slope condition.
        let maximal = x.is_zero();
        if maximal {
            win.at_least(-&delta, true);
        } else {
            win.at_least(&self.deg_v * &x / &self.big_r - &delta, false);
        }
        if x == self.big_r {
            win.at_most(&self.deg_v - &delta, false);
        }

        let Some(lower) = &win.lower else {
            unreachable!("every cell carries a slope or admissibility lower bound");
        };
        let m_lo = lattice_lower(&base, lower);
        let m_hi = match &win.upper {
            Some(upper) => lattice_upper(&base, upper),
            None => {
                if !maximal {
                    return Err(Error::InfiniteFamily {
                        r,
                        c1h: format_rational(&c1h),
                        reason: "no upper bound on ch2 for a finite-phase cell".into(),
                    });
                }
                out.open_families.push(OpenFamily {
                    r,
                    c1h,
                    ch2h_from: &base + Q::from_integer(m_lo),
                    side: SubSide::of_rank(r),
                });
                return Ok(());
            }
        };
        if m_lo > m_hi {
            return Ok(());
        }
        let span = to_i64(&(&m_hi - &m_lo)).ok_or_else(|| Error::InfiniteFamily {
            r,
            c1h: format_rational(&c1h),
            reason: "ch2 window too wide to enumerate".into(),
        })?;

        // Descending ch2H is ascending c2.
        for step in 0..=span {
            let ch2h = &base + Q::from_integer(&m_hi - BigInt::from(step));
            let w = NumericalClass::new(r, c1h.clone(), ch2h);
            let quotient = self.target - &w;
            let deg_w = deg_st(&w, self.pt, g);
            if maximal && deg_w.is_zero() {
                continue;
            }
            if x == self.big_r && deg_st(&quotient, self.pt, g).is_zero() {
                continue;
            }
            let relation = match slope_cmp(&w, self.target, self.pt, g) {
                SlopeOrdering::Equal => Relation::OnWall,
                SlopeOrdering::Greater | SlopeOrdering::MaximalPhase(crate::tilt::Side::Left) => {
                    Relation::StrictlyAbove
                }
                other => unreachable!("window admitted {w} with ordering {other:?}"),
            };
            out.candidates.push(DestabilizerCandidate {
                wall: wall(&w, self.target, g),
                class: w,
                relation,
                phase: if maximal {
                    Phase::MaximalPhase
                } else {
                    Phase::Finite
                },
                side: SubSide::of_rank(r),
                window_boundary,
            });
        }
        Ok(())
    }
}

/// All lattice classes passing the numerical destabilizer filters for
/// `target` at `pt`, ordered by `(r, k, c2)`.
pub fn enumerate_destabilizers(
    target: &NumericalClass,
    pt: &TiltPoint,
    g: &Geometry,
    opts: &EnumerateOptions,
) -> Result<Enumeration> {
    g.require_pic1()?;
    check_point(pt)?;
    let s = pt.s();
    let big_r = rank_s(target, s, g);
    if big_r.is_negative() {
        return Err(Error::UnsupportedTarget(format!(
            "{target} has negative tilted rank at {pt}, it is not in the heart"
        )));
    }
    let search = Search {
        target,
        pt,
        g,
        kind: StandardClass::identify(target, g),
        deg_v: deg_st(target, pt, g),
        big_r,
    };

    let mut ranks: Vec<i64> = Vec::new();
    if opts.include_shifted {
        let cap = opts.rank_max.ok_or_else(|| {
            Error::UnsupportedTarget(
                "shifted candidates have no derived rank bound, pass rank_max".into(),
            )
        })?;
        ranks.extend((1..=i64::from(cap)).rev().map(|r| -r));
    }
    if opts.include_torsion {
        ranks.push(0);
    }
    let positive_cap = match opts.rank_max {
        Some(cap) => cap,
        None => rank_bound_at(target, pt, g)?,
    };
    ranks.extend(1..=i64::from(positive_cap));

    let hn = g.hn_q();
    let mut out = Enumeration::default();
    for r in ranks {
        // 0 ≤ H²(k − s·r) ≤ r_s(v)
        let lo = s * q(r);
        let hi = &lo + &search.big_r / &hn;
        let (Some(k_lo), Some(k_hi)) = (to_i64(&ceil(&lo)), to_i64(&floor(&hi))) else {
            return Err(Error::InfiniteFamily {
                r,
                c1h: "?".into(),
                reason: "degree range out of range".into(),
            });
        };
        for k in k_lo..=k_hi {
            search.cell(r, k, &mut out)?;
        }
    }
    Ok(out)
}

/// Shape of destabilizers of `(0, H, H²/2)` at `s = 1/2`, rank by rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeRow {
    pub r: u32,
    pub admissible: bool,
    pub reason: String,
    /// `c1 = kH`, `k = (r + 1)/2` for odd `r`.
    pub k: Option<i64>,
    /// `τ ≤ 1/(4r²)`.
    #[serde(with = "opt_q")]
    pub tau_max: Option<Q>,
    /// Upper end of the `ch2H` window (Bogomolov).
    #[serde(with = "opt_q")]
    pub ch2h_cap: Option<Q>,
    /// Lower end `ch2h_floor_const + τ·ch2h_floor_tau` (from `d ≥ 0`).
    #[serde(with = "opt_q")]
    pub ch2h_floor_const: Option<Q>,
    #[serde(with = "opt_q")]
    pub ch2h_floor_tau: Option<Q>,
}

impl ShapeRow {
    /// The closed `ch2H` interval at `τ`, if the row is admissible and the
    /// interval is non-empty.
    pub fn ch2h_window(&self, tau: &Q) -> Option<(Q, Q)> {
        let (cap, c, t) = (
            self.ch2h_cap.as_ref()?,
            self.ch2h_floor_const.as_ref()?,
            self.ch2h_floor_tau.as_ref()?,
        );
        let floor = c + t * tau;
        (floor <= *cap).then(|| (floor, cap.clone()))
    }

    /// Lattice classes `(r, kH², ch2H)` inside the window at `τ`.
    pub fn classes_at(&self, tau: &Q, g: &Geometry) -> Vec<NumericalClass> {
        let (Some(k), Some((lo, hi))) = (self.k, self.ch2h_window(tau)) else {
            return Vec::new();
        };
        let base = q(k) * q(k) * g.hn_q() / q(2);
        let m_lo = lattice_lower(&base, &(lo, false));
        let m_hi = lattice_upper(&base, &(hi, false));
        let mut out = Vec::new();
        let mut m = m_hi;
        while m >= m_lo {
            out.push(NumericalClass::new(
                i64::from(self.r),
                q(k) * g.hn_q(),
                &base + Q::from_integer(m.clone()),
            ));
            m -= 1;
        }
        out
    }
}

mod opt_q {
    use super::Q;
    use crate::rational::{format_rational, parse_rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<Q>, ser: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => ser.serialize_some(&format_rational(v)),
            None => ser.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Option<Q>, D::Error> {
        Option::<String>::deserialize(de)?
            .map(|t| parse_rational(&t).map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// Symbolic constraints on a sheaf `K` destabilizing `(0, H, H²/2)` at
/// `s = 1/2`: `r` odd, `k = (r+1)/2`, `ch2H` between the `d ≥ 0` floor and
/// the Bogomolov cap, and `τ ≤ 1/(4r²)`.
pub fn destabilizer_shape_report(
    target: &NumericalClass,
    g: &Geometry,
    r_max: u32,
) -> Result<Vec<ShapeRow>> {
    g.require_pic1()?;
    if StandardClass::identify(target, g) != Some(StandardClass::Thaddeus) {
        return Err(Error::UnsupportedTarget(format!(
            "shape report is only derived for (0, H, H²/2), got {target}"
        )));
    }
    let hn = g.hn_q();
    (1..=r_max)
        .map(|r| {
            let ri = i64::from(r);
            if ri % 2 == 0 {
                return Ok(ShapeRow {
                    r,
                    admissible: false,
                    reason: "r_{1/2} is a multiple of H², never the minimal H²/2".into(),
                    k: None,
                    tau_max: None,
                    ch2h_cap: None,
                    ch2h_floor_const: None,
                    ch2h_floor_tau: None,
                });
            }
            let k = (ri + 1) / 2;
            let c1h = q(k) * &hn;
            Ok(ShapeRow {
                r,
                admissible: true,
                reason: format!("odd rank, c1 = {k}H, r_(1/2) = H²/2"),
                k: Some(k),
                tau_max: Some(frac(1, 4 * ri * ri)),
                ch2h_cap: Some(bogomolov_cap(ri, &c1h, g)?),
                // d_(1/2,t)(K) ≥ 0
                ch2h_floor_const: Some(&c1h / q(2) - q(ri) * &hn / q(8)),
                ch2h_floor_tau: Some(q(ri) * &hn / q(2)),
            })
        })
        .collect()
}
