//! Numerical walls: loci in the `(s, τ)` strip where two slopes agree.
//!
//! The wall between `a` and `b` is the zero set of
//! `d(a)·r_s(b) − d(b)·r_s(a)`, a polynomial in `s` and `τ`. Its `s²` and `τ`
//! coefficients coincide and its cubic terms cancel, so every non-degenerate
//! wall is a circle centered on the `s`-axis.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::lattice::{Geometry, NumericalClass};
use crate::rational::{frac, q, serde_q, Q};
use crate::tilt::{slope_cmp, SlopeOrdering, TiltPoint};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Wall {
    /// `(s − center)² + τ = radius_sq`.
    Circle {
        #[serde(with = "serde_q")]
        center: Q,
        #[serde(with = "serde_q")]
        radius_sq: Q,
    },
    VerticalLine {
        #[serde(with = "serde_q")]
        s0: Q,
    },
    Empty,
    Everywhere,
}

impl Wall {
    pub fn contains(&self, pt: &TiltPoint) -> bool {
        match self {
            Wall::Circle { center, radius_sq } => {
                let ds = pt.s() - center;
                &ds * &ds + pt.tau() == *radius_sq
            }
            Wall::VerticalLine { s0 } => pt.s() == s0,
            Wall::Empty => false,
            Wall::Everywhere => true,
        }
    }
}

/// Polynomial in `(s, τ)` keyed by `(deg_s, deg_τ)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Poly2(BTreeMap<(u32, u32), Q>);

impl Poly2 {
    fn term(coeff: Q, ds: u32, dt: u32) -> Self {
        let mut p = Poly2::default();
        p.add_term(coeff, ds, dt);
        p
    }

    fn add_term(&mut self, coeff: Q, ds: u32, dt: u32) {
        let slot = self.0.entry((ds, dt)).or_insert_with(Q::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.0.remove(&(ds, dt));
        }
    }

    fn add(&self, o: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for ((ds, dt), c) in &o.0 {
            out.add_term(c.clone(), *ds, *dt);
        }
        out
    }

    fn neg(&self) -> Poly2 {
        Poly2(self.0.iter().map(|(k, c)| (*k, -c)).collect())
    }

    fn mul(&self, o: &Poly2) -> Poly2 {
        let mut out = Poly2::default();
        for ((a_s, a_t), a) in &self.0 {
            for ((b_s, b_t), b) in &o.0 {
                out.add_term(a * b, a_s + b_s, a_t + b_t);
            }
        }
        out
    }

    fn coeff(&self, ds: u32, dt: u32) -> Q {
        self.0.get(&(ds, dt)).cloned().unwrap_or_else(Q::zero)
    }
}

fn rank_poly(cls: &NumericalClass, g: &Geometry) -> Poly2 {
    Poly2::term(cls.c1h.clone(), 0, 0).add(&Poly2::term(-q(cls.r) * g.hn_q(), 1, 0))
}

fn deg_poly(cls: &NumericalClass, g: &Geometry) -> Poly2 {
    let half_rh = q(cls.r) * g.hn_q() / q(2);
    Poly2::term(cls.ch2h.clone(), 0, 0)
        .add(&Poly2::term(-&cls.c1h, 1, 0))
        .add(&Poly2::term(half_rh.clone(), 2, 0))
        .add(&Poly2::term(-half_rh, 0, 1))
}

/// Fully expanded `d(a)·r_s(b) − d(b)·r_s(a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallPolynomial {
    pub constant: Q,
    pub s: Q,
    pub s2: Q,
    pub tau: Q,
    pub s3: Q,
    pub s_tau: Q,
    /// True when no monomials beyond the six above survived the expansion.
    pub closed: bool,
}

impl WallPolynomial {
    pub fn eval(&self, pt: &TiltPoint) -> Q {
        let s = pt.s();
        let tau = pt.tau();
        &self.constant
            + &self.s * s
            + &self.s2 * s * s
            + &self.tau * tau
            + &self.s3 * s * s * s
            + &self.s_tau * s * tau
    }
}

pub fn wall_polynomial(a: &NumericalClass, b: &NumericalClass, g: &Geometry) -> WallPolynomial {
    let p = deg_poly(a, g)
        .mul(&rank_poly(b, g))
        .add(&deg_poly(b, g).mul(&rank_poly(a, g)).neg());
    let known = [(0, 0), (1, 0), (2, 0), (0, 1), (3, 0), (1, 1)];
    WallPolynomial {
        constant: p.coeff(0, 0),
        s: p.coeff(1, 0),
        s2: p.coeff(2, 0),
        tau: p.coeff(0, 1),
        s3: p.coeff(3, 0),
        s_tau: p.coeff(1, 1),
        closed: p.0.keys().all(|k| known.contains(k)),
    }
}

pub fn wall(a: &NumericalClass, b: &NumericalClass, g: &Geometry) -> Wall {
    let p = wall_polynomial(a, b, g);
    debug_assert!(p.closed && p.s3.is_zero() && p.s_tau.is_zero() && p.s2 == p.tau);
    if !p.s2.is_zero() {
        // s² + τ + (B/A)s + C/A = 0
        let center = -&p.s / (q(2) * &p.s2);
        let radius_sq = &center * &center - &p.constant / &p.s2;
        if radius_sq.is_positive() {
            Wall::Circle { center, radius_sq }
        } else {
            Wall::Empty
        }
    } else if !p.s.is_zero() {
        Wall::VerticalLine {
            s0: -&p.constant / &p.s,
        }
    } else if p.constant.is_zero() {
        Wall::Everywhere
    } else {
        Wall::Empty
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WallSide {
    Above,
    On,
    Below,
}

/// Which side of the `a`/`b` wall `pt` is on, read off from `μ(a)` vs `μ(b)`.
/// Zero charges are reported as `On`.
pub fn side(a: &NumericalClass, b: &NumericalClass, pt: &TiltPoint, g: &Geometry) -> WallSide {
    match slope_cmp(a, b, pt, g) {
        SlopeOrdering::Greater | SlopeOrdering::MaximalPhase(crate::tilt::Side::Left) => {
            WallSide::Above
        }
        SlopeOrdering::Less | SlopeOrdering::MaximalPhase(crate::tilt::Side::Right) => {
            WallSide::Below
        }
        _ => WallSide::On,
    }
}

/// Strict interior of the circle.
pub fn in_circle(pt: &TiltPoint, center: &Q, radius_sq: &Q) -> bool {
    let ds = pt.s() - center;
    &ds * &ds + pt.tau() < *radius_sq
}

/// The region `(s − 1/2)² + τ < 1/4`.
pub fn kodaira_region(pt: &TiltPoint) -> bool {
    in_circle(pt, &frac(1, 2), &frac(1, 4))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderRow {
    pub d: u32,
    #[serde(with = "serde_q")]
    pub radius_sq: Q,
    /// The wall exists (`radius_sq > 0`).
    pub rank1_wall: bool,
    /// `radius_sq > 1/36`, i.e. the wall sits above `t = 1/6`.
    pub above_one_sixth: bool,
    pub flip_label: String,
}

pub const SIMPSON_WALL_LABEL: &str = "Simpson wall, removes P(H⁰(S,L))";
pub const FLIP_LABEL: &str = "P(H⁰(L⊗I_W⊗I_Z)) ↔ dual";
pub const NO_WALL_LABEL: &str = "no wall";

/// Rank-one walls `τ_d = 1/4 − 2d/H²` of the class `(0, H, H²/2)` on `s = 1/2`.
pub fn thaddeus_ladder(g: &Geometry, d_max: u32) -> Vec<LadderRow> {
    (0..=d_max)
        .map(|d| {
            let radius_sq = frac(1, 4) - q(2 * i64::from(d)) / g.hn_q();
            let exists = radius_sq.is_positive();
            let flip_label = match (exists, d) {
                (false, _) => NO_WALL_LABEL,
                (true, 0) => SIMPSON_WALL_LABEL,
                (true, _) => FLIP_LABEL,
            };
            LadderRow {
                d,
                above_one_sixth: radius_sq > frac(1, 36),
                rank1_wall: exists,
                radius_sq,
                flip_label: flip_label.to_owned(),
            }
        })
        .collect()
}
