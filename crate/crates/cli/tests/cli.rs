use std::path::PathBuf;
use std::process::{Command, Output};

use proptest::prelude::*;
use serde_json::Value;
use tiltstab::{DivisorData, Geometry, NumericalClass, StandardClass, TiltPoint, Q};
use tiltstab_cli::{OutputMode, PlotFamily, ReiderMode, RunConfig, Target};

fn tiltstab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tiltstab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

#[test]
fn wall_example() {
    let out = tiltstab(&[
        "wall", "--hn", "100", "--a", "1,100,47", "--b", "-1,0,3", "--json",
    ]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["type"], "circle");
    assert_eq!(v["center"], "1/2");
    assert_eq!(v["radius_sq"], "19/100");
}

#[test]
fn ladder_has_ten_rows_in_every_mode() {
    let human = tiltstab(&["ladder", "--hn", "72", "--dmax", "9"]);
    let table_rows = stdout(&human)
        .lines()
        .filter(|l| l.chars().next().is_some_and(|c| c.is_ascii_digit()))
        .count();
    assert_eq!(table_rows, 10);
    let csv = tiltstab(&["ladder", "--hn", "72", "--dmax", "9", "--csv"]);
    assert_eq!(stdout(&csv).lines().count(), 11);
    let json = tiltstab(&["ladder", "--hn", "72", "--dmax", "9", "--json"]);
    let rows: Value = serde_json::from_str(&stdout(&json)).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 10);
    assert_eq!(rows[0]["radius_sq"], "1/4");
    assert_eq!(rows[9]["rank1_wall"], false);
}

#[test]
fn reider_classical_json() {
    let out = tiltstab(&[
        "reider",
        "--hn",
        "26",
        "--d",
        "2",
        "--mode",
        "classical",
        "--json",
    ]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["status"], "conditional_on_curves");
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 3);
    let excluded = tiltstab(&[
        "reider",
        "--hn",
        "26",
        "--d",
        "2",
        "--exclude",
        "1,0;2,0;1,-1",
        "--json",
    ]);
    let v: Value = serde_json::from_str(&stdout(&excluded)).unwrap();
    assert_eq!(v["status"], "vanishing_guaranteed");
}

#[test]
fn reider_modes() {
    let b = tiltstab(&[
        "reider",
        "--hn",
        "10",
        "--d",
        "1",
        "--mode",
        "bridgeland",
        "--csv",
    ]);
    assert_eq!(stdout(&b), "c_h,c2\n1,0\n2,0\n1,-1\n");
    let p = tiltstab(&[
        "reider", "--hn", "9", "--d", "1", "--mode", "pic1", "--json",
    ]);
    let v: Value = serde_json::from_str(&stdout(&p)).unwrap();
    assert_eq!(v["vanishes"], true);
    let no = tiltstab(&[
        "reider", "--hn", "9", "--d", "1", "--mode", "pic1", "--pic1", "false",
    ]);
    assert_eq!(no.status.code(), Some(3));
}

#[test]
fn exit_codes_by_error_family() {
    let parse = tiltstab(&[
        "slope", "--hn", "10", "--class", "1,1/0,0", "--s", "0", "--t2", "1",
    ]);
    assert_eq!(parse.status.code(), Some(2));
    let geometry = tiltstab(&["ladder", "--hn", "0", "--dmax", "1"]);
    assert_eq!(geometry.status.code(), Some(3));
    let tau = tiltstab(&[
        "slope", "--hn", "10", "--class", "1,0,0", "--s", "0", "--t2", "-1",
    ]);
    assert_eq!(tau.status.code(), Some(3));
    let infinite = tiltstab(&[
        "destab",
        "--hn",
        "20",
        "--target",
        "thaddeus",
        "--s",
        "1/2",
        "--t2",
        "1/9",
        "--include-shifted",
        "--rank-max",
        "1",
    ]);
    assert_eq!(infinite.status.code(), Some(4));
    let unsupported = tiltstab(&[
        "destab",
        "--hn",
        "20",
        "--target",
        "thaddeus",
        "--s",
        "1/2",
        "--t2",
        "1/9",
        "--include-shifted",
    ]);
    assert_eq!(unsupported.status.code(), Some(5));
    let io = tiltstab(&["run", "--config", "/nonexistent/config.json"]);
    assert_eq!(io.status.code(), Some(6));
}

#[test]
fn destab_output_is_deterministic() {
    let args = [
        "destab", "--hn", "72", "--target", "thaddeus", "--s", "1/2", "--t", "1/6", "--json",
    ];
    let a = tiltstab(&args);
    let b = tiltstab(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_str(&stdout(&a)).unwrap();
    let cands = v["candidates"].as_array().unwrap();
    let last = cands.last().unwrap();
    assert_eq!(last["class"], "3,144,48");
    assert_eq!(last["relation"], "on_wall");
    for key in ["class", "relation", "phase", "side", "wall"] {
        assert!(last.get(key).is_some(), "{key}");
    }
}

#[test]
fn csv_rows_match_table_rows() {
    let args = [
        "destab", "--hn", "72", "--target", "thaddeus", "--s", "1/2", "--t2", "1/9",
    ];
    let human = stdout(&tiltstab(&args));
    let table_rows = human.lines().filter(|l| l.starts_with("1 ")).count();
    let mut csv_args = args.to_vec();
    csv_args.push("--csv");
    let csv = stdout(&tiltstab(&csv_args));
    assert_eq!(csv.lines().count() - 1, table_rows);
    assert_eq!(table_rows, 6);
}

#[test]
fn plot_svg_is_well_formed() {
    let path = scratch("ladder.svg");
    let out = tiltstab(&[
        "plot",
        "--hn",
        "72",
        "--dmax",
        "10",
        "--family",
        "thaddeus",
        "--family",
        "o_shift",
        "--svg",
        path.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = std::fs::read_to_string(&path).unwrap();
    let doc = roxmltree::Document::parse(&text).expect("well-formed svg");
    let arcs = doc
        .descendants()
        .filter(|n| n.has_tag_name("path") && n.attribute("class") == Some("wall-arc"))
        .count();
    // Thaddeus: d = 0..8 exist (d = 9, 10 do not). O[1]: every d ≤ 10 is a circle.
    assert_eq!(arcs, 9 + 11);
    let labels: Vec<&str> = doc
        .descendants()
        .filter(|n| n.attribute("class") == Some("wall-label"))
        .filter_map(|n| n.text())
        .collect();
    assert!(labels.contains(&"thaddeus d=3 radius²=1/6"));
    let again = tiltstab(&[
        "plot", "--hn", "72", "--dmax", "10", "--family", "thaddeus", "--family", "o_shift",
    ]);
    assert_eq!(stdout(&again), text);
}

#[test]
fn print_config_then_run() {
    let out = tiltstab(&[
        "reider",
        "--hn",
        "26",
        "--d",
        "2",
        "--exclude",
        "1,0",
        "--json",
        "--print-config",
    ]);
    let cfg_text = stdout(&out);
    let cfg = RunConfig::from_json(&cfg_text).unwrap();
    assert_eq!(cfg.output, OutputMode::Json);
    let path = scratch("reider.json");
    std::fs::write(&path, &cfg_text).unwrap();
    let batch = tiltstab(&["run", "--config", path.to_str().unwrap()]);
    let direct = tiltstab(&[
        "reider",
        "--hn",
        "26",
        "--d",
        "2",
        "--exclude",
        "1,0",
        "--json",
    ]);
    assert_eq!(batch.stdout, direct.stdout);
    let v: Value = serde_json::from_str(&stdout(&batch)).unwrap();
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 2);
}

fn rational() -> impl Strategy<Value = Q> {
    (-50i64..=50, 1i64..=9).prop_map(|(n, d)| Q::new(n.into(), d.into()))
}

fn class() -> impl Strategy<Value = NumericalClass> {
    (-5i64..=5, rational(), rational()).prop_map(|(r, c, ch)| NumericalClass::new(r, c, ch))
}

fn point() -> impl Strategy<Value = TiltPoint> {
    (rational(), 1i64..=30, 1i64..=30)
        .prop_map(|(s, n, d)| TiltPoint::new(s, Q::new(n.into(), d.into())).unwrap())
}

fn target() -> impl Strategy<Value = Target> {
    prop_oneof![
        class().prop_map(Target::Class),
        (0u32..20).prop_map(|d| Target::Named(StandardClass::LIdeal(d))),
        (0u32..20).prop_map(|d| Target::Named(StandardClass::IdealDualShift(d))),
        Just(Target::Named(StandardClass::OShift)),
        Just(Target::Named(StandardClass::Thaddeus)),
        (-5i64..5).prop_map(|k| Target::Named(StandardClass::LineBundle(k))),
    ]
}

fn command() -> impl Strategy<Value = tiltstab_cli::Command> {
    use tiltstab_cli::Command as C;
    prop_oneof![
        (class(), point()).prop_map(|(class, point)| C::Slope { class, point }),
        (class(), point()).prop_map(|(class, point)| C::Charge { class, point }),
        (class(), class()).prop_map(|(a, b)| C::Wall { a, b }),
        (0u32..40).prop_map(|dmax| C::Ladder { dmax }),
        (
            target(),
            point(),
            proptest::option::of(0u32..9),
            any::<bool>(),
            any::<bool>()
        )
            .prop_map(
                |(target, point, rank_max, include_shifted, include_torsion)| C::Destab {
                    target,
                    point,
                    rank_max,
                    include_shifted,
                    include_torsion,
                }
            ),
        (
            1u32..10,
            prop_oneof![
                Just(ReiderMode::Classical),
                Just(ReiderMode::Bridgeland),
                Just(ReiderMode::Pic1)
            ],
            proptest::collection::vec((-9i64..9, -9i64..9), 0..4)
        )
            .prop_map(|(d, mode, ex)| C::Reider {
                d,
                mode,
                exclude: ex
                    .into_iter()
                    .map(|(a, b)| DivisorData::new(a, b))
                    .collect(),
            }),
        (
            proptest::collection::vec(
                prop_oneof![
                    Just(PlotFamily::Thaddeus),
                    Just(PlotFamily::OShift),
                    Just(PlotFamily::IdealDual)
                ],
                1..3
            ),
            0u32..5,
            0u32..12,
            proptest::option::of("[a-z]{1,8}\\.svg")
        )
            .prop_map(|(families, dmin, dmax, out)| C::Plot {
                families,
                dmin,
                dmax,
                out: out.map(PathBuf::from),
            }),
    ]
}

proptest! {
    #[test]
    fn run_config_round_trip(
        hn in 1i64..500,
        dim in 2u8..=3,
        pic1 in any::<bool>(),
        command in command(),
        output in prop_oneof![Just(OutputMode::Human), Just(OutputMode::Json), Just(OutputMode::Csv)],
    ) {
        let cfg = RunConfig { geometry: Geometry::new(hn, dim, pic1).unwrap(), command, output };
        let text = cfg.to_json();
        let back = RunConfig::from_json(&text).unwrap();
        prop_assert_eq!(&back, &cfg);
        prop_assert_eq!(back.to_json(), text);
    }
}
