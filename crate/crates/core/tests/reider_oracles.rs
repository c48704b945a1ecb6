use tiltstab::{
    bridgeland_obstruction_shapes, reider_bridgeland, reider_classical, DivisorData, Geometry,
    VerdictStatus, Q,
};

fn g(hn: i64) -> Geometry {
    Geometry::surface(hn).unwrap()
}

#[test]
fn bridgeland_witnesses_match_box_scan() {
    for d in 1..=8i64 {
        let t = (2 * d + 1) * (2 * d + 1);
        for hn in (t - 3).max(1)..=(t + 40).min(300) {
            let v = reider_bridgeland(&g(hn), d as u32).unwrap();
            assert!(v.certificate_holds(), "hn={hn} d={d}");
            if hn <= t {
                assert_eq!(v.status, VerdictStatus::Inconclusive);
                continue;
            }
            let mut brute = Vec::new();
            for c2 in -3 * d..=3 * d {
                for c_h in 1..=4 * d {
                    if c2 <= 0 && c_h <= c2 + 2 * d && c2 * hn <= c_h * c_h && 2 * c_h <= hn {
                        brute.push(DivisorData::new(c_h, c2));
                    }
                }
            }
            let mut got = v.witnesses().to_vec();
            got.sort();
            brute.sort();
            assert_eq!(got, brute, "hn={hn} d={d}");
        }
    }
}

#[test]
fn classical_certificates_hold() {
    for hn in 1..=150 {
        for d in 1..=6 {
            let v = reider_classical(&g(hn), d, None).unwrap();
            assert!(v.certificate_holds(), "hn={hn} d={d}");
            let is_inconclusive = v.status == VerdictStatus::Inconclusive;
            assert_eq!(is_inconclusive, hn <= i64::from((d + 1) * (d + 1)));
        }
    }
}

#[test]
fn obstruction_shapes_match_box_scan() {
    for d in 1..=4i64 {
        for hn in 8 * d + 1..=8 * d + 30 {
            let rows = bridgeland_obstruction_shapes(&g(hn), d as u32).unwrap();
            // Scan honest (r, D·H, D²) and keep the (r, D·H) pairs that survive.
            let mut brute = Vec::new();
            for r in 1..=12i64 {
                for d_h in (r - 1) * hn / 2 + 1..=r * hn / 2 {
                    let hit = (-(r * r) * 4 * d..=d_h * d_h / hn).any(|dd| {
                        // C·H ≤ C² + 2d  ⇔  r·D·H ≤ D² + 2d·r²
                        r * d_h <= dd + 2 * d * r * r
                    });
                    if hit {
                        brute.push((r, d_h));
                    }
                }
            }
            let got: Vec<(i64, i64)> = rows.iter().map(|s| (i64::from(s.r), s.d_h)).collect();
            assert_eq!(got, brute, "hn={hn} d={d}");
            for s in &rows {
                assert!(s.c2_bound <= s.c2_max);
                assert!(s.c_h <= Q::new(hn.into(), 2.into()));
            }
        }
    }
}
