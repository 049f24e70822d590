use fillgeo::catalog::{bundled_catalog_dir, load_catalog};
use fillgeo::geography::{betti_resolution, cover_euler, gates, predict, GateKind};
use fillgeo::lt::{bennequin_seifert, branched_cover_invariants};
use proptest::prelude::*;

proptest! {
    #[test]
    fn extra_band_raises_x_and_keeps_failed_x_gate(r in 2u32..=4, n in 1i64..8, m in 0i64..40, s in -30i64..=0) {
        let a = gates(r, n, m, s, 0).unwrap();
        let b = gates(r, n, m + 1, s, 0).unwrap();
        prop_assert_eq!(b.x - a.x, r as i64 - 1);
        if !a.t12_b.unwrap().passes() {
            prop_assert!(!b.t12_b.unwrap().passes());
        }
    }

    #[test]
    fn predicted_chi_is_cover_euler(r in 2u32..=4, n in 1i64..8, m in 0i64..30, s in -20i64..=0, h in 0i64..4) {
        for kind in [GateKind::General, GateKind::NullityFree] {
            if let Ok(p) = predict(r, n, m, s, h, kind, true) {
                prop_assert_eq!(p.chi, cover_euler(r, n, m));
                prop_assert_eq!(p.sigma, s);
            }
        }
    }

    #[test]
    fn betti_round_trip(chi in -10i64..30, sigma in -20i64..20, b1 in 0i64..6, strict in any::<bool>()) {
        if let Ok(b) = betti_resolution(chi, sigma, b1, strict) {
            prop_assert_eq!(b.chi(), chi);
            prop_assert_eq!(b.sigma(), sigma);
            prop_assert!(b.b2plus >= 0 && b.b2minus >= 0 && b.b2zero >= 0);
            if strict {
                prop_assert_eq!(b.b2zero, 0);
            }
        }
    }
}

#[test]
fn cover_euler_matches_catalog_surfaces() {
    let mut positive = 0;
    for e in load_catalog(bundled_catalog_dir()).unwrap() {
        let s = bennequin_seifert(&e.word);
        let chi_f = s.b0() as i64 - s.size() as i64;
        // Seifert's algorithm: one disk per strand, one band per letter
        assert_eq!(chi_f, e.strands() as i64 - e.word.len() as i64, "{}", e.name);
        assert!(branched_cover_invariants(&s, 3).is_ok());
        if !e.word.is_positive() {
            continue;
        }
        positive += 1;
        for r in 2..=4 {
            let chi = r as i64 - (r as i64 - 1) * chi_f;
            assert_eq!(chi, cover_euler(r, e.strands() as i64, e.band_count()), "{}", e.name);
        }
    }
    assert!(positive > 20);
}
