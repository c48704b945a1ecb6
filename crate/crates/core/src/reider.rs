//! Reider-type numerical criteria.
//!
//! Every verdict carries a certificate: an ordered list of concrete rational
//! inequalities that can be re-checked without trusting this module. Which
//! witness divisors are actually effective is left to the caller, who can
//! strike them out with [`ReiderVerdict::excluding`].

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::destab::{enumerate_destabilizers, rank_bound_at, EnumerateOptions};
use crate::error::{Error, Result};
use crate::lattice::{
    hodge_ok, standard_class, twist, DivisorData, Geometry, NumericalClass, StandardClass,
};
use crate::rational::{format_rational, frac, q, serde_q, Q};
use crate::tilt::TiltPoint;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rel {
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
}

impl Rel {
    pub fn holds(self, lhs: &Q, rhs: &Q) -> bool {
        match self {
            Rel::Lt => lhs < rhs,
            Rel::Le => lhs <= rhs,
            Rel::Eq => lhs == rhs,
            Rel::Ge => lhs >= rhs,
            Rel::Gt => lhs > rhs,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Rel::Lt => "<",
            Rel::Le => "<=",
            Rel::Eq => "=",
            Rel::Ge => ">=",
            Rel::Gt => ">",
        }
    }
}

/// One re-checkable inequality `lhs rel rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateStep {
    pub name: String,
    #[serde(with = "serde_q")]
    pub lhs: Q,
    pub rel: Rel,
    #[serde(with = "serde_q")]
    pub rhs: Q,
    pub anchor: String,
}

impl CertificateStep {
    fn new(name: impl Into<String>, lhs: Q, rel: Rel, rhs: Q, anchor: &str) -> Self {
        CertificateStep {
            name: name.into(),
            lhs,
            rel,
            rhs,
            anchor: anchor.to_string(),
        }
    }

    pub fn holds(&self) -> bool {
        self.rel.holds(&self.lhs, &self.rhs)
    }
}

impl fmt::Display for CertificateStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} {} {}  [{}]",
            self.name,
            format_rational(&self.lhs),
            self.rel.symbol(),
            format_rational(&self.rhs),
            self.anchor
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "witnesses", rename_all = "snake_case")]
pub enum VerdictStatus {
    VanishingGuaranteed,
    /// The numerical hypothesis holds; vanishing follows unless one of these
    /// divisor classes is effective.
    ConditionalOnCurves(Vec<DivisorData>),
    /// The numerical hypothesis fails, nothing is claimed.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReiderVerdict {
    #[serde(flatten)]
    pub status: VerdictStatus,
    pub certificate: Vec<CertificateStep>,
}

impl ReiderVerdict {
    pub fn witnesses(&self) -> &[DivisorData] {
        match &self.status {
            VerdictStatus::ConditionalOnCurves(w) => w,
            _ => &[],
        }
    }

    pub fn certificate_holds(&self) -> bool {
        self.certificate.iter().all(CertificateStep::holds)
    }

    /// Drops witnesses the caller knows are not effective. Their certificate
    /// rows stay, since the inequalities remain true.
    pub fn excluding(mut self, excluded: &[DivisorData]) -> Self {
        if let VerdictStatus::ConditionalOnCurves(list) = &mut self.status {
            list.retain(|w| !excluded.contains(w));
            if list.is_empty() {
                self.status = VerdictStatus::VanishingGuaranteed;
            }
        }
        self
    }
}

/// A bound together with the inequalities that justify it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifiedBound {
    pub m: i64,
    pub certificate: Vec<CertificateStep>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingCheck {
    pub vanishes: bool,
    pub certificate: Vec<CertificateStep>,
}

fn require_length(d: u32) -> Result<i64> {
    if d == 0 {
        return Err(Error::PreconditionViolated(
            "length d must be at least 1".into(),
        ));
    }
    Ok(i64::from(d))
}

/// A Mumford-stable extension of `L ⊗ I_Z` by `O` can exist only when
/// `c1²(L) ≤ 4d`.
pub fn stable_extension_possible(g: &Geometry, d: u32) -> bool {
    g.hn() <= 4 * i64::from(d)
}

/// Classes `C` with `1 ≤ C·L`, `2·C·L ≤ L²`, `C·L ≤ C² + d`, Hodge index,
/// and `−d < C² ≤ d`, minus `C² = d` when `L² > 4d` and minus `C² > 0`
/// when `L² > (d+1)²`. Ordered by `C²` descending, then `C·L` ascending.
pub fn enumerate_obstruction_curves(g: &Geometry, d: u32) -> Vec<DivisorData> {
    let d = i64::from(d);
    let hn = g.hn();
    let mut out = Vec::new();
    for c2 in (1 - d..=d).rev() {
        if c2 == d && hn > 4 * d {
            continue;
        }
        if c2 > 0 && hn > (d + 1) * (d + 1) {
            continue;
        }
        for c_h in 1..=(hn / 2).min(c2 + d) {
            let dv = DivisorData::new(c_h, c2);
            if hodge_ok(&dv, g) {
                out.push(dv);
            }
        }
    }
    out
}

const REIDER: &str = "reider-hypothesis";
const HODGE: &str = "hodge-index";
const OBSTRUCTION: &str = "obstruction-window";

fn witness_steps(dv: &DivisorData, g: &Geometry, twice_d: i64, out: &mut Vec<CertificateStep>) {
    let (c_h, c2) = (q(dv.c_h), q(dv.c2));
    let tag = format!("witness {dv}");
    out.push(CertificateStep::new(
        format!("{tag}: C·L ≤ C² + {}", twice_d),
        c_h.clone(),
        Rel::Le,
        &c2 + q(twice_d),
        OBSTRUCTION,
    ));
    out.push(CertificateStep::new(
        format!("{tag}: 2·C·L ≤ L²"),
        q(2) * &c_h,
        Rel::Le,
        g.hn_q(),
        OBSTRUCTION,
    ));
    out.push(CertificateStep::new(
        format!("{tag}: C²·L² ≤ (C·L)²"),
        &c2 * g.hn_q(),
        Rel::Le,
        &c_h * &c_h,
        HODGE,
    ));
    out.push(CertificateStep::new(
        format!("{tag}: C² ≤ 0"),
        c2,
        Rel::Le,
        Q::zero(),
        OBSTRUCTION,
    ));
}

/// Reider's criterion for `K_S + L` to separate length-`d` subschemes.
pub fn reider_classical(
    g: &Geometry,
    d: u32,
    excluded: Option<&[DivisorData]>,
) -> Result<ReiderVerdict> {
    let di = require_length(d)?;
    let hn = g.hn_q();
    let threshold = q((di + 1) * (di + 1));
    if hn <= threshold {
        return Ok(ReiderVerdict {
            status: VerdictStatus::Inconclusive,
            certificate: vec![CertificateStep::new(
                "L² ≤ (d+1)², hypothesis fails",
                hn,
                Rel::Le,
                threshold,
                REIDER,
            )],
        });
    }
    let mut cert = vec![
        CertificateStep::new(
            "L² > (d+1)²",
            hn.clone(),
            Rel::Gt,
            threshold.clone(),
            REIDER,
        ),
        // (d+1)² ≥ 4d, so L² > 4d and C² = d is ruled out.
        CertificateStep::new("(d+1)² ≥ 4d", threshold, Rel::Ge, q(4 * di), OBSTRUCTION),
    ];
    let witnesses: Vec<DivisorData> = enumerate_obstruction_curves(g, d)
        .into_iter()
        .filter(|w| w.c2 <= 0)
        .collect();
    for w in &witnesses {
        witness_steps(w, g, di, &mut cert);
        // C²·L² ≤ (C·L)² ≤ L²(C² + d)/2
        cert.push(CertificateStep::new(
            format!("witness {w}: (C·L)² ≤ L²(C² + d)/2"),
            q(w.c_h * w.c_h),
            Rel::Le,
            &hn * q(w.c2 + di) / q(2),
            HODGE,
        ));
    }
    let verdict = ReiderVerdict {
        status: if witnesses.is_empty() {
            VerdictStatus::VanishingGuaranteed
        } else {
            VerdictStatus::ConditionalOnCurves(witnesses)
        },
        certificate: cert,
    };
    Ok(match excluded {
        Some(list) => verdict.excluding(list),
        None => verdict,
    })
}

/// `K_S + (d+2)L` separates length-`d` subschemes for every ample `L`.
///
/// The certificate uses the worst case `L² = 1`, `C·L ≥ 1`.
pub fn fujita_classical(d: u32) -> Result<CertifiedBound> {
    let di = require_length(d)?;
    let m = di + 2;
    let unit = Geometry::surface(1)?;
    let ml = twist(&NumericalClass::ints(1, 0, 0), m, &unit)?;
    let ml_sq = &ml.c1h * &ml.c1h / unit.hn_q();
    let certificate = vec![
        CertificateStep::new(
            "(mL)² = m²·L² ≥ (d+2)²",
            ml_sq,
            Rel::Ge,
            q(m * m),
            "fujita-scaling",
        ),
        CertificateStep::new(
            "(d+2)² > (d+1)²",
            q(m * m),
            Rel::Gt,
            q((di + 1) * (di + 1)),
            REIDER,
        ),
        // C² ≤ 0 gives C² + d ≤ d.
        CertificateStep::new("C·(mL) ≥ m > C² + d", q(m), Rel::Gt, q(di), REIDER),
    ];
    Ok(CertifiedBound { m, certificate })
}

/// `K_S + (2d+2)L` kills the `H¹` for every ample `L`.
pub fn fujita_bridgeland(d: u32) -> Result<CertifiedBound> {
    let di = require_length(d)?;
    let m = 2 * di + 2;
    let unit = Geometry::surface(1)?;
    let ml = twist(&NumericalClass::ints(1, 0, 0), m, &unit)?;
    let ml_sq = &ml.c1h * &ml.c1h / unit.hn_q();
    let certificate = vec![
        CertificateStep::new(
            "(mL)² = m²·L² ≥ (2d+2)²",
            ml_sq,
            Rel::Ge,
            q(m * m),
            "fujita-scaling",
        ),
        CertificateStep::new(
            "(2d+2)² > (2d+1)²",
            q(m * m),
            Rel::Gt,
            q((2 * di + 1) * (2 * di + 1)),
            "bridgeland-reider",
        ),
        // The curve window 0 < C·(mL) ≤ C² + 2d with C² ≤ 0 needs C·(mL) ≤ 2d.
        CertificateStep::new(
            "C·(mL) ≥ m > 2d ≥ C² + 2d",
            q(m),
            Rel::Gt,
            q(2 * di),
            "bridgeland-reider",
        ),
    ];
    Ok(CertifiedBound { m, certificate })
}

/// A constraint window on `C = D/r` for a divisor `D` of the given degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionShape {
    pub r: u32,
    /// `D·H`.
    pub d_h: i64,
    /// `C·H = D·H / r`.
    #[serde(with = "serde_q")]
    pub c_h: Q,
    /// Smallest admissible `C²` with `C·H ≤ C² + 2d` and `r²C² ∈ Z`.
    #[serde(with = "serde_q")]
    pub c2_bound: Q,
    /// Largest `C²` allowed by Hodge index.
    #[serde(with = "serde_q")]
    pub c2_max: Q,
}

/// Windows `(1 − 1/r)·H²/2 < C·H ≤ H²/2`, `C·H ≤ C² + 2d`, Hodge, for every
/// rank that can contribute. A rank contributes only when
/// `r²(H² − 8d) < H²`.
pub fn bridgeland_obstruction_shapes(g: &Geometry, d: u32) -> Result<Vec<ObstructionShape>> {
    let di = require_length(d)?;
    let hn = g.hn();
    if hn <= 8 * di {
        return Err(Error::PreconditionViolated(format!(
            "needs H² > 8d, got H² = {hn}, d = {d}"
        )));
    }
    let mut out = Vec::new();
    let mut r: i64 = 1;
    while r * r * (hn - 8 * di) < hn {
        // (r−1)·H²/2 < D·H ≤ r·H²/2
        let lo = (r - 1) * hn / 2 + 1;
        let hi = r * hn / 2;
        for d_h in lo..=hi {
            let c_h = frac(d_h, r);
            let r2 = q(r * r);
            let need = (&c_h - q(2 * di)) * &r2;
            let c2_bound = Q::from_integer(need.ceil().to_integer()) / &r2;
            // D² ≤ (D·H)²/H²
            let c2_max = Q::from_integer((frac(d_h * d_h, hn)).floor().to_integer()) / &r2;
            if c2_bound <= c2_max {
                out.push(ObstructionShape {
                    r: u32::try_from(r).expect("rank bound fits u32"),
                    d_h,
                    c_h,
                    c2_bound,
                    c2_max,
                });
            }
        }
        r += 1;
    }
    Ok(out)
}

const BRIDGELAND: &str = "bridgeland-reider";

/// Bridgeland-stability variant: if `H² > (2d+1)²`, a non-vanishing `H¹`
/// forces an honest divisor with `C² ≤ 0` and `0 < C·H ≤ C² + 2d`.
pub fn reider_bridgeland(g: &Geometry, d: u32) -> Result<ReiderVerdict> {
    let di = require_length(d)?;
    let hn = g.hn_q();
    let two_d = 2 * di;
    let threshold = q((two_d + 1) * (two_d + 1));
    if hn <= threshold {
        return Ok(ReiderVerdict {
            status: VerdictStatus::Inconclusive,
            certificate: vec![CertificateStep::new(
                "H² ≤ (2d+1)², hypothesis fails",
                hn,
                Rel::Le,
                threshold,
                BRIDGELAND,
            )],
        });
    }
    let two_d_q = q(two_d);
    let mut cert = vec![
        CertificateStep::new(
            "H² > (2d+1)²",
            hn.clone(),
            Rel::Gt,
            threshold.clone(),
            BRIDGELAND,
        ),
        CertificateStep::new(
            "(2d+1)² ≥ 8d + 1",
            threshold.clone(),
            Rel::Ge,
            q(8 * di + 1),
            BRIDGELAND,
        ),
        // r ≥ 3: C² ≥ C·H − 2d > H²/3 − 2d.
        CertificateStep::new(
            "r ≥ 3: H²/3 − 2d > (2d+1)/3",
            &hn / q(3) - &two_d_q,
            Rel::Gt,
            frac(two_d + 1, 3),
            "rank-at-least-three",
        ),
        CertificateStep::new(
            "r ≥ 3: (2d+1)/3 ≥ 1",
            frac(two_d + 1, 3),
            Rel::Ge,
            q(1),
            "rank-at-least-three",
        ),
    ];
    // r = 2: C·H = D·H/2 > H²/4 with D·H an integer.
    let d_h_min = g.hn() / 2 + 1;
    let c_h_min = frac(d_h_min, 2);
    cert.push(CertificateStep::new(
        "r = 2: H²/4 ≥ 2d + 1/2",
        &hn / q(4),
        Rel::Ge,
        &two_d_q + frac(1, 2),
        "rank-two",
    ));
    cert.push(CertificateStep::new(
        "r = 2: C·H ≥ 2d + 1",
        c_h_min.clone(),
        Rel::Ge,
        &two_d_q + q(1),
        "rank-two",
    ));
    cert.push(CertificateStep::new(
        "r = 2: C² ≥ C·H − 2d ≥ 1",
        &c_h_min - &two_d_q,
        Rel::Ge,
        q(1),
        "rank-two",
    ));
    // C² = 2d + 1 already breaks C²·H² ≤ (H²/2)(C² + 2d).
    let over = q(two_d + 1);
    cert.push(CertificateStep::new(
        "C² ≤ 2d: (2d+1)·H² > (H²/2)(4d+1)",
        &over * &hn,
        Rel::Gt,
        &hn / q(2) * (&over + &two_d_q),
        HODGE,
    ));
    let sweep = |k: i64| {
        let v = q(1) + frac(two_d, k);
        &v * &v
    };
    for k in 1..=two_d {
        cert.push(CertificateStep::new(
            format!("C² = {k}: H² > (1 + 2d/{k})²"),
            hn.clone(),
            Rel::Gt,
            sweep(k),
            "kappa-sweep",
        ));
        if k < two_d {
            cert.push(CertificateStep::new(
                format!("(1 + 2d/κ)² is decreasing at κ = {k}"),
                sweep(k),
                Rel::Gt,
                sweep(k + 1),
                "kappa-sweep",
            ));
        }
    }
    let mut witnesses = Vec::new();
    for c2 in (1 - two_d..=0).rev() {
        for c_h in 1..=(c2 + two_d).min(g.hn() / 2) {
            let dv = DivisorData::new(c_h, c2);
            if hodge_ok(&dv, g) {
                witness_steps(&dv, g, two_d, &mut cert);
                witnesses.push(dv);
            }
        }
    }
    Ok(ReiderVerdict {
        status: if witnesses.is_empty() {
            VerdictStatus::VanishingGuaranteed
        } else {
            VerdictStatus::ConditionalOnCurves(witnesses)
        },
        certificate: cert,
    })
}

/// With `Pic(S) = ZH`, `H¹(K_S ⊗ L ⊗ I_W ⊗ I_Z) = 0` once `H² > 8d`: both
/// objects are stable at `s = 1/2` and the wall between them is a nonempty
/// semicircle.
pub fn picard_rank_one_vanishing(g: &Geometry, d: u32) -> Result<VanishingCheck> {
    g.require_pic1()?;
    let di = require_length(d)?;
    let hn = g.hn_q();
    let radius_sq = frac(1, 4) - q(2 * di) / &hn;
    if !radius_sq.is_positive() {
        return Ok(VanishingCheck {
            vanishes: false,
            certificate: vec![CertificateStep::new(
                "1/4 − 2d/H² ≤ 0, semicircle empty",
                radius_sq,
                Rel::Le,
                Q::zero(),
                "semicircle",
            )],
        });
    }
    let mut cert = vec![
        CertificateStep::new("H² > 8d", hn, Rel::Gt, q(8 * di), "semicircle"),
        CertificateStep::new(
            "1/4 − 2d/H² > 0, semicircle nonempty",
            radius_sq.clone(),
            Rel::Gt,
            Q::zero(),
            "semicircle",
        ),
    ];
    let pt = TiltPoint::new(frac(1, 2), radius_sq)?;
    let mut clean = true;
    for tag in [StandardClass::LIdeal(d), StandardClass::IdealDualShift(d)] {
        let v = standard_class(tag, g);
        let opts = EnumerateOptions {
            rank_max: Some(rank_bound_at(&v, &pt, g)?.max(1)),
            include_shifted: true,
            include_torsion: true,
        };
        let found = enumerate_destabilizers(&v, &pt, g, &opts)?;
        let count = found.finite().count();
        clean &= count == 0;
        cert.push(CertificateStep::new(
            format!("finite-phase destabilizers of {tag} at s = 1/2"),
            q(i64::try_from(count).unwrap_or(i64::MAX)),
            Rel::Eq,
            Q::zero(),
            "stability-at-one-half",
        ));
    }
    Ok(VanishingCheck {
        vanishes: clean,
        certificate: cert,
    })
}
