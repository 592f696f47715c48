#![allow(dead_code)]

use triq::validation::GridSize;

#[path = "../examples/anisotropy_map.rs"]
mod anisotropy_map;
#[path = "../examples/classical_triangle.rs"]
mod classical_triangle;
#[path = "../examples/ground_correlations.rs"]
mod ground_correlations;
#[path = "../examples/phase_surface.rs"]
mod phase_surface;
#[path = "../examples/spectrum.rs"]
mod spectrum;
#[path = "../examples/starred_configs.rs"]
mod starred_configs;
#[path = "../examples/susceptibility.rs"]
mod susceptibility;
#[path = "../examples/thermal_curves.rs"]
mod thermal_curves;
#[path = "../examples/two_bond_branches.rs"]
mod two_bond_branches;
#[path = "../examples/validation.rs"]
mod validation;

#[test]
fn spectrum_closed_forms_agree() {
    for (_, numeric, closed) in spectrum::run_example().unwrap() {
        for (a, b) in numeric.iter().zip(closed) {
            assert!((a - b).abs() < 1e-10);
        }
    }
}

#[test]
fn ground_correlations_cover_both_paths() {
    let reports = ground_correlations::run_example().unwrap();
    assert_eq!(reports.len(), 8);
    assert!(reports[0].t3_central_b > 0.995);
    assert!(reports[4].t3_central_b < 0.01);
    assert!(reports.iter().any(|r| r.path.to_string() == "numeric"));
}

#[test]
fn susceptibility_sign_follows_coupling() {
    let r = susceptibility::run_example().unwrap();
    assert_eq!(r.rows.len(), 3 * 41);
    let js = r.column("j").unwrap();
    let chi = r.column("chi_t3").unwrap();
    for (j, c) in js.iter().zip(&chi) {
        let (j, c) = (j.unwrap(), c.unwrap());
        if j.abs() > 0.05 {
            assert_eq!(j.signum(), c.signum(), "j={j}");
        }
    }
}

#[test]
fn thermal_curves_six_series() {
    let (r, cross) = thermal_curves::run_example().unwrap();
    assert_eq!(r.rows.len(), 6 * 50);
    let t = cross.expect("curves cross");
    assert!(t > 0.0 && t < 1.5);
}

#[test]
fn anisotropy_map_small_grid() {
    let maps = anisotropy_map::run_example(5).unwrap();
    assert_eq!(maps.len(), 6);
    for (_, r) in &maps {
        assert_eq!(r.rows.len(), 25);
        assert!(!r.has_errors());
    }
}

#[test]
fn validation_quick() {
    assert!(validation::run_example(GridSize::Quick).unwrap().passed);
}

#[test]
fn classical_frustrated_triangle() {
    let r = classical_triangle::run_example().unwrap();
    assert!((r[1].1.energy + 1.5).abs() < 1e-9);
    assert!((r[0].1.energy + 3.0).abs() < 1e-12);
}

#[test]
fn phase_surface_small_grid() {
    let (n_ab, t3) = phase_surface::run_example(9, 5).unwrap();
    assert_eq!(n_ab.rows.len(), 45);
    assert_eq!(t3.header(), vec!["j", "eta", "t3", "path"]);
}

#[test]
fn two_bond_branches_mostly_analytic() {
    for (_, r) in two_bond_branches::run_example(7).unwrap() {
        let analytic = r.rows.iter().filter(|row| row.path.to_string() == "analytic").count();
        assert!(analytic >= 42, "{analytic}");
    }
}

#[test]
fn starred_configs_has_200_rows() {
    let r = starred_configs::run_example().unwrap();
    assert_eq!(r.rows.len(), 200);
    let t3 = r.column("thermal_t3").unwrap();
    assert!((t3[0].unwrap() - 0.8).abs() < 0.05);
}
