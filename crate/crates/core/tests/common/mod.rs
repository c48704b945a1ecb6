//! Independent reference computations shared by the integration tests.
//!
//! Nothing here calls into the engine's tilt or destab code: charges come
//! from twisting the Chern character by `e^{−sH}` directly, and searches
//! are plain box scans.

#![allow(dead_code)]

use num_traits::{Signed, Zero};
use rand::Rng;
use tiltstab::Q;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

/// `(ch0, ch1·H, ch2)` of `ch(E)·e^{−sH}` for a class on a surface with `H² = hn`.
pub fn twisted_ch(r: i64, c1h: &Q, ch2h: &Q, s: &Q, hn: i64) -> (Q, Q, Q) {
    let hn = q(hn);
    let r = q(r);
    let ch1 = c1h - s * &r * &hn;
    let ch2 = ch2h - s * c1h + s * s * &r * &hn / q(2);
    (r, ch1, ch2)
}

/// `Z = −ch2^s + (τ/2)·r·H² + i·t·ch1^s`, returned as `(Re Z, Im Z / t)`.
pub fn charge(r: i64, c1h: &Q, ch2h: &Q, s: &Q, tau: &Q, hn: i64) -> (Q, Q) {
    let (r0, ch1, ch2) = twisted_ch(r, c1h, ch2h, s, hn);
    (-ch2 + tau * r0 * q(hn) / q(2), ch1)
}

/// Strict "phase of a exceeds phase of b" and equality, for nonzero charges
/// in the upper half plane (closed negative real axis allowed).
/// Returns -1, 0, 1 like a comparison of `μ = −Re/Im`, with `Im = 0` meaning `+∞`.
pub fn phase_cmp(a: &(Q, Q), b: &(Q, Q)) -> i32 {
    let inf_a = a.1.is_zero();
    let inf_b = b.1.is_zero();
    match (inf_a, inf_b) {
        (true, true) => 0,
        (true, false) => 1,
        (false, true) => -1,
        (false, false) => {
            // −Re_a/Im_a vs −Re_b/Im_b, both Im > 0
            let l = -&a.0 * &b.1;
            let r = -&b.0 * &a.1;
            if l > r {
                1
            } else if l < r {
                -1
            } else {
                0
            }
        }
    }
}

/// `Δ·H² = (c1·H)² − 2·r·ch2·H²` (Picard rank one): Bogomolov for either sign of rank.
pub fn discriminant_ok(r: i64, c1h: &Q, ch2h: &Q, hn: i64) -> bool {
    c1h * c1h - q(2 * r * hn) * ch2h >= Q::zero()
}

/// Charge lies in the closed upper half plane minus the positive real axis
/// and the class passes Bogomolov.
pub fn heart_ok(r: i64, c1h: &Q, ch2h: &Q, s: &Q, tau: &Q, hn: i64) -> bool {
    let (re, im) = charge(r, c1h, ch2h, s, tau, hn);
    if im.is_negative() {
        return false;
    }
    if im.is_zero() && re.is_positive() {
        return false;
    }
    if r == 0 && c1h.is_zero() {
        return !ch2h.is_negative();
    }
    discriminant_ok(r, c1h, ch2h, hn)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Hit {
    pub r: i64,
    pub k: i64,
    pub c2: i64,
    pub on_wall: bool,
    pub maximal: bool,
}

/// Every `w = (r, kH², k²H²/2 − c2)` in the box with `w` and `v − w` in the
/// heart, neither of zero charge, and `phase(w) ≥ phase(v)`.
pub fn brute_destabilizers(
    v: (i64, Q, Q),
    s: &Q,
    tau: &Q,
    hn: i64,
    ranks: std::ops::RangeInclusive<i64>,
    ks: std::ops::RangeInclusive<i64>,
    c2s: std::ops::RangeInclusive<i64>,
) -> Vec<Hit> {
    let zv = charge(v.0, &v.1, &v.2, s, tau, hn);
    let mut out = Vec::new();
    for r in ranks {
        for k in ks.clone() {
            let c1h = q(k * hn);
            for c2 in c2s.clone() {
                let ch2h = frac(k * k * hn, 2) - q(c2);
                let (qr, qc, qch) = (v.0 - r, &v.1 - &c1h, &v.2 - &ch2h);
                if !heart_ok(r, &c1h, &ch2h, s, tau, hn) || !heart_ok(qr, &qc, &qch, s, tau, hn) {
                    continue;
                }
                let zw = charge(r, &c1h, &ch2h, s, tau, hn);
                let zq = charge(qr, &qc, &qch, s, tau, hn);
                if (zw.0.is_zero() && zw.1.is_zero()) || (zq.0.is_zero() && zq.1.is_zero()) {
                    continue;
                }
                let c = phase_cmp(&zw, &zv);
                if c < 0 {
                    continue;
                }
                out.push(Hit {
                    r,
                    k,
                    c2,
                    on_wall: c == 0,
                    maximal: zw.1.is_zero(),
                });
            }
        }
    }
    out.sort();
    out
}

/// `p/q` with `1 ≤ p < q ≤ max_den`.
pub fn unit_rational<R: Rng>(rng: &mut R, max_den: i64) -> Q {
    let d = rng.gen_range(2..=max_den);
    let n = rng.gen_range(1..d);
    frac(n, d)
}
