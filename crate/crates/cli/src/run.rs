//! Dispatch from a [`RunConfig`] to the engine and into a [`Report`].

use std::path::PathBuf;

use serde_json::json;
use tiltstab::rational::format_rational;
use tiltstab::{
    central_charge, deg_st, enumerate_destabilizers, picard_rank_one_vanishing, rank_s,
    reider_bridgeland, reider_classical, slope_frac, thaddeus_ladder, wall, EnumerateOptions,
    Geometry, NumericalClass, Phase, ReiderVerdict, Relation, SubSide, TiltPoint, VerdictStatus,
    Wall, Q,
};

use crate::config::{Command, PlotFamily, ReiderMode, RunConfig};
use crate::error::CliError;
use crate::report::{Report, Table};
use crate::svg::{self, PlotWall};

/// Text for stdout plus any files the command asks to write.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rendered {
    pub stdout: String,
    pub files: Vec<(PathBuf, String)>,
}

pub fn execute(cfg: &RunConfig) -> Result<Rendered, CliError> {
    let g = &cfg.geometry;
    let mut files = Vec::new();
    let report = match &cfg.command {
        Command::Slope { class, point } => slope(class, point, g),
        Command::Charge { class, point } => charge(class, point, g),
        Command::Wall { a, b } => wall_report(a, b, g),
        Command::Ladder { dmax } => ladder(*dmax, g),
        Command::Destab {
            target,
            point,
            rank_max,
            include_shifted,
            include_torsion,
        } => {
            let opts = EnumerateOptions {
                rank_max: *rank_max,
                include_shifted: *include_shifted,
                include_torsion: *include_torsion,
            };
            destab(&target.resolve(g), &target.to_string(), point, g, &opts)?
        }
        Command::Reider { d, mode, exclude } => reider(*d, *mode, exclude, g)?,
        Command::Plot {
            families,
            dmin,
            dmax,
            out,
        } => {
            let (report, image) = plot(families, *dmin, *dmax, out.as_ref(), g);
            match out {
                Some(path) => files.push((path.clone(), image)),
                // No path: the picture is the output.
                None => {
                    return Ok(Rendered {
                        stdout: image,
                        files,
                    })
                }
            }
            report
        }
    };
    Ok(Rendered {
        stdout: report.render(cfg.output)?,
        files,
    })
}

fn fr(x: &Q) -> String {
    format_rational(x)
}

fn slope(class: &NumericalClass, pt: &TiltPoint, g: &Geometry) -> Report {
    let r_s = rank_s(class, pt.s(), g);
    let d = deg_st(class, pt, g);
    let p = slope_frac(class, pt, g);
    let shown = match p.display_slope() {
        Some(v) => fr(&v),
        None if p.is_zero_charge() => "zero charge".into(),
        None if p.is_maximal_phase() => "+inf".into(),
        None => "-inf".into(),
    };
    let mut table = Table::new(["class", "s", "t2", "r_s", "d", "mu*t"]);
    table.push([
        class.to_string(),
        fr(pt.s()),
        fr(pt.tau()),
        fr(&r_s),
        fr(&d),
        shown.clone(),
    ]);
    Report {
        summary: vec![format!("μ·t = d/r_s = {shown} at (s, t²) = ({pt})")],
        table,
        notes: vec![],
        json: json!({
            "class": class,
            "point": pt,
            "rank_s": fr(&r_s),
            "deg": fr(&d),
            "slope_times_t": p.display_slope().map(|v| fr(&v)),
            "maximal_phase": p.is_maximal_phase(),
            "zero_charge": p.is_zero_charge(),
        }),
    }
}

fn charge(class: &NumericalClass, pt: &TiltPoint, g: &Geometry) -> Report {
    let z = central_charge(class, pt, g);
    let mut table = Table::new(["class", "s", "t2", "re", "im/t"]);
    table.push([
        class.to_string(),
        fr(pt.s()),
        fr(pt.tau()),
        fr(&z.re),
        fr(&z.im_over_t),
    ]);
    Report {
        summary: vec![format!("Z = {} + i·t·{}", fr(&z.re), fr(&z.im_over_t))],
        table,
        notes: vec![],
        json: json!({ "class": class, "point": pt, "charge": z }),
    }
}

fn wall_cells(w: &Wall) -> [String; 4] {
    match w {
        Wall::Circle { center, radius_sq } => {
            ["circle".into(), fr(center), fr(radius_sq), String::new()]
        }
        Wall::VerticalLine { s0 } => ["vertical_line".into(), String::new(), String::new(), fr(s0)],
        Wall::Empty => ["empty".into(), String::new(), String::new(), String::new()],
        Wall::Everywhere => [
            "everywhere".into(),
            String::new(),
            String::new(),
            String::new(),
        ],
    }
}

fn describe(w: &Wall) -> String {
    match w {
        Wall::Circle { center, radius_sq } => {
            format!("circle (s − {})² + t² = {}", fr(center), fr(radius_sq))
        }
        Wall::VerticalLine { s0 } => format!("vertical line s = {}", fr(s0)),
        Wall::Empty => "no wall".into(),
        Wall::Everywhere => "slopes agree everywhere".into(),
    }
}

fn wall_report(a: &NumericalClass, b: &NumericalClass, g: &Geometry) -> Report {
    let w = wall(a, b, g);
    let mut table = Table::new(["type", "center", "radius_sq", "s0"]);
    table.push(wall_cells(&w));
    Report {
        summary: vec![format!("wall({a}; {b}): {}", describe(&w))],
        table,
        notes: vec![],
        json: serde_json::to_value(&w).expect("wall serializes"),
    }
}

fn ladder(dmax: u32, g: &Geometry) -> Report {
    let rows = thaddeus_ladder(g, dmax);
    let mut table = Table::new(["d", "radius_sq", "rank1_wall", "above_one_sixth", "label"]);
    for r in &rows {
        table.push([
            r.d.to_string(),
            fr(&r.radius_sq),
            r.rank1_wall.to_string(),
            r.above_one_sixth.to_string(),
            r.flip_label.clone(),
        ]);
    }
    Report {
        summary: vec![format!(
            "rank-one walls of (0, H, H²/2) on s = 1/2, H² = {}",
            g.hn()
        )],
        table,
        notes: vec![],
        json: serde_json::to_value(&rows).expect("ladder serializes"),
    }
}

fn relation_name(r: Relation) -> &'static str {
    match r {
        Relation::OnWall => "on_wall",
        Relation::StrictlyAbove => "strictly_above",
    }
}

fn side_name(s: SubSide) -> &'static str {
    match s {
        SubSide::SubSheaf => "sub_sheaf",
        SubSide::ShiftedSub => "shifted_sub",
        SubSide::TorsionSub => "torsion_sub",
    }
}

fn destab(
    v: &NumericalClass,
    label: &str,
    pt: &TiltPoint,
    g: &Geometry,
    opts: &EnumerateOptions,
) -> Result<Report, CliError> {
    let found = enumerate_destabilizers(v, pt, g, opts)?;
    let mut table = Table::new([
        "r",
        "c1H",
        "ch2H",
        "relation",
        "phase",
        "side",
        "wall",
        "center",
        "radius_sq",
        "s0",
    ]);
    for c in &found.candidates {
        let [kind, center, radius_sq, s0] = wall_cells(&c.wall);
        table.push([
            c.class.r.to_string(),
            fr(&c.class.c1h),
            fr(&c.class.ch2h),
            relation_name(c.relation).into(),
            match c.phase {
                Phase::Finite => "finite".into(),
                Phase::MaximalPhase => "maximal_phase".to_string(),
            },
            side_name(c.side).into(),
            kind,
            center,
            radius_sq,
            s0,
        ]);
    }
    let finite = found.finite().count();
    let mut summary = vec![format!(
        "{label} = {v} at (s, t²) = ({pt}): {} candidate(s), {finite} of finite phase",
        found.candidates.len()
    )];
    if found.candidates.is_empty() && found.open_families.is_empty() {
        summary.push("no numerical destabilizers".into());
    }
    let notes = found
        .open_families
        .iter()
        .map(|f| {
            format!(
                "maximal-phase family: r = {}, c1H = {}, ch2H = {} + n for n ≥ 0 ({})",
                f.r,
                fr(&f.c1h),
                fr(&f.ch2h_from),
                side_name(f.side)
            )
        })
        .collect();
    Ok(Report {
        summary,
        table,
        notes,
        json: serde_json::to_value(&found)?,
    })
}

fn verdict_report(v: &ReiderVerdict, header: String) -> Result<Report, CliError> {
    let status = match &v.status {
        VerdictStatus::VanishingGuaranteed => "vanishing guaranteed".to_string(),
        VerdictStatus::ConditionalOnCurves(w) => {
            format!(
                "vanishing unless one of {} divisor class(es) is effective",
                w.len()
            )
        }
        VerdictStatus::Inconclusive => "inconclusive, numerical hypothesis fails".to_string(),
    };
    let mut table = Table::new(["c_h", "c2"]);
    for w in v.witnesses() {
        table.push([w.c_h.to_string(), w.c2.to_string()]);
    }
    Ok(Report {
        summary: vec![header, status],
        table,
        notes: v.certificate.iter().map(|s| s.to_string()).collect(),
        json: serde_json::to_value(v)?,
    })
}

fn reider(
    d: u32,
    mode: ReiderMode,
    exclude: &[tiltstab::DivisorData],
    g: &Geometry,
) -> Result<Report, CliError> {
    match mode {
        ReiderMode::Classical => verdict_report(
            &reider_classical(g, d, Some(exclude))?,
            format!("classical Reider, L² = {}, d = {d}", g.hn()),
        ),
        ReiderMode::Bridgeland => verdict_report(
            &reider_bridgeland(g, d)?.excluding(exclude),
            format!("Bridgeland variant, H² = {}, d = {d}", g.hn()),
        ),
        ReiderMode::Pic1 => {
            let check = picard_rank_one_vanishing(g, d)?;
            let mut table = Table::new(["name", "lhs", "rel", "rhs", "anchor", "holds"]);
            for s in &check.certificate {
                let rel = serde_json::to_value(s.rel)?;
                table.push([
                    s.name.clone(),
                    fr(&s.lhs),
                    rel.as_str().unwrap_or_default().to_string(),
                    fr(&s.rhs),
                    s.anchor.clone(),
                    s.holds().to_string(),
                ]);
            }
            Ok(Report {
                summary: vec![format!(
                    "Picard rank one, H² = {}, d = {d}: {}",
                    g.hn(),
                    if check.vanishes {
                        "H¹ vanishes"
                    } else {
                        "no conclusion (H² ≤ 8d)"
                    }
                )],
                table,
                notes: vec![],
                json: serde_json::to_value(&check)?,
            })
        }
    }
}

fn plot(
    families: &[PlotFamily],
    dmin: u32,
    dmax: u32,
    out: Option<&PathBuf>,
    g: &Geometry,
) -> (Report, String) {
    let mut walls = Vec::new();
    let mut table = Table::new(["family", "d", "type", "center", "radius_sq", "s0"]);
    for fam in families {
        for d in dmin..=dmax {
            let (a, b) = fam.pair(d, g);
            let w = PlotWall {
                label: format!("{} d={d}", fam.name()),
                wall: wall(&a, &b, g),
            };
            if w.drawable() {
                let [kind, center, radius_sq, s0] = wall_cells(&w.wall);
                table.push([
                    fam.name().to_string(),
                    d.to_string(),
                    kind,
                    center,
                    radius_sq,
                    s0,
                ]);
                walls.push(w);
            }
        }
    }
    let image = svg::render(&walls);
    let summary = vec![format!(
        "{} wall(s) drawn{}",
        walls.len(),
        out.map(|p| format!(" to {}", p.display()))
            .unwrap_or_default()
    )];
    let json = json!({
        "svg": out.map(|p| p.display().to_string()),
        "walls": walls.iter().map(|w| json!({"label": w.label, "wall": w.wall})).collect::<Vec<_>>(),
    });
    (
        Report {
            summary,
            table,
            notes: vec![],
            json,
        },
        image,
    )
}
