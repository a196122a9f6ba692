use std::path::Path;
use std::process::{Command, Output};
use std::sync::Arc;

use sun_casimir::casimir::{IndexReport, RouteChoice};
use sun_casimir::{ArtifactKey, ArtifactKind, ArtifactStore, SuN};
use sun_casimir_cli::cache::DiskCache;
use sun_casimir_cli::suite::SuiteReport;
use sun_casimir_cli::table::{compute_table, GdiTable};

fn suncas(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_suncas"));
    cmd.env_remove("SUNCAS_CACHE_DIR");
    match cache {
        Some(dir) => cmd.arg("--cache-dir").arg(dir),
        None => cmd.arg("--no-cache"),
    };
    cmd.args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn compute(args: &[&str]) -> IndexReport {
    let out = suncas(&[&["compute"], args].concat(), None);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: IndexReport = serde_json::from_str(&stdout(&out)).unwrap();
    let again: IndexReport = serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(again, report);
    report
}

#[test]
fn compute_reports_round_trip() {
    let spinor = compute(&["--n", "3", "--m", "2", "--rep", "spinor"]);
    assert_eq!(spinor.gdi_rounded, 12);
    assert!((spinor.c_value - 9.0).abs() < 1e-10);
    let adj = compute(&["--n", "4", "--m", "4", "--rep", "adj"]);
    assert_eq!(adj.gdi_rounded, 8);
    assert!((adj.c_value - 8.0 * 1344.0 / 720.0).abs() < 1e-10);
    let f2 = compute(&["--n", "5", "--m", "4", "--rep", "fund:2", "--route", "both"]);
    assert_eq!(f2.gdi_rounded, -3);
    assert!(f2.cross_route_residual.unwrap() < 1e-6);
    let conj = compute(&["--n", "3", "--m", "3", "--rep", "conj:def"]);
    assert!((conj.c_value + 10.0 / 3.0).abs() < 1e-12);
}

#[test]
fn bad_input_and_refusals_exit_with_infrastructure_status() {
    assert_eq!(
        suncas(&["compute", "--n", "3", "--m", "2", "--rep", "bogus"], None)
            .status
            .code(),
        Some(2)
    );
    let refused = suncas(
        &["--max-flops", "1", "compute", "--n", "3", "--m", "2", "--rep", "def"],
        None,
    );
    assert_eq!(refused.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&refused.stderr).contains("exceeds cap"));
}

#[test]
fn table_formats() {
    let md = suncas(&["table", "--n", "4"], None);
    assert_eq!(md.status.code(), Some(0));
    let text = stdout(&md);
    assert!(text.contains("| m=4 | 1 | -4 | 1 |"), "{text}");

    let json = suncas(&["table", "--n", "3", "--format", "json"], None);
    let table: GdiTable = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(table.entry(3, 2), Some(-1));
    let again: GdiTable = serde_json::from_str(&serde_json::to_string(&table).unwrap()).unwrap();
    assert_eq!(again, table);

    let csv = suncas(&["table", "--n", "3", "--format", "csv"], None);
    assert!(stdout(&csv).lines().any(|l| l.starts_with("3,3,2,computed,-1,")));
}

#[test]
fn refused_cells_render_as_needing_heavy() {
    let out = suncas(&["--max-flops", "1e4", "table", "--n", "4"], None);
    assert!(stdout(&out).contains("needs --heavy"));
}

#[test]
fn core_suite_passes_with_json_report() {
    let out = suncas(&["verify", "--suite", "core"], None);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert_eq!(out.status.code(), Some(0), "{stderr}");
    assert_eq!(stderr.lines().filter(|l| l.starts_with("PASS criterion")).count(), 10);
    let report: SuiteReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report.passed);
    let again: SuiteReport = serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(again, report);
}

#[test]
fn second_table_run_rebuilds_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        let store: Arc<dyn ArtifactStore> = Arc::new(DiskCache::open(dir.path()).unwrap());
        let alg = SuN::new(4).unwrap().with_store(store);
        let table = compute_table(&alg, RouteChoice::Auto).unwrap();
        (table, alg.build_counts())
    };
    let (first, cold) = run();
    assert!(cold.omega_builds > 0 && cold.t_builds > 0);
    let (second, warm) = run();
    assert_eq!(second, first);
    assert_eq!((warm.omega_builds, warm.t_builds, warm.d_builds), (0, 0, 0));
    assert!(warm.store_hits > 0);
}

#[test]
fn corrupt_entries_are_rebuilt() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Arc::new(DiskCache::open(dir.path()).unwrap());
    let key = ArtifactKey {
        kind: ArtifactKind::T,
        n: 3,
        m: 3,
    };
    let reference = SuN::new(3).unwrap().t_tensor(3).unwrap();
    cache.save(&key, b"SUNT garbage");
    let alg = SuN::new(3).unwrap().with_store(cache.clone());
    let t = alg.t_tensor(3).unwrap();
    assert_eq!(t.body, reference.body);
    assert_eq!(alg.build_counts().t_builds, 1);
    let fresh = SuN::new(3).unwrap().with_store(cache.clone());
    fresh.t_tensor(3).unwrap();
    assert_eq!(fresh.build_counts().t_builds, 0);
}

#[test]
fn cache_list_and_clear() {
    let dir = tempfile::tempdir().unwrap();
    assert!(suncas(&["table", "--n", "3"], Some(dir.path())).status.success());
    let listed = stdout(&suncas(&["cache", "list"], Some(dir.path())));
    assert!(listed.lines().any(|l| l.contains("omega-n3-m3.sunt")), "{listed}");
    assert!(suncas(&["cache", "clear"], Some(dir.path())).status.success());
    assert!(stdout(&suncas(&["cache", "list"], Some(dir.path()))).is_empty());
}

#[test]
fn unusable_cache_dir_warns_and_runs_uncached() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("not-a-dir");
    std::fs::write(&file, b"").unwrap();
    let out = suncas(&["table", "--n", "3"], Some(&file));
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("running uncached"));
    assert!(stdout(&out).contains("| m=3 | 1 | -1 |"));
}
