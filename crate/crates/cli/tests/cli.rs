use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use aperiodic_core::data::{phi, u_tiles, U_TILES};
use aperiodic_core::geometry::TorusPartition;
use aperiodic_core::markers::Equivalence;
use aperiodic_core::morphism2d::Morphism2d;
use aperiodic_core::wangtiles::WangTileSet;
use aperiodic_core::word2d::{Language2d, Word2d};
use aperiodic_core::Golden;
use serde_json::Value;
use tempfile::TempDir;

fn kit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aperiodic-kit")).args(args).env_remove("APERIODIC_KIT_JOBS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_json<T: serde::Serialize>(dir: &TempDir, name: &str, v: &T) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p
}

fn tiles_file(dir: &TempDir) -> PathBuf {
    write_json(dir, "u.json", &u_tiles())
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn markers_of_u() {
    let dir = TempDir::new().unwrap();
    let u = tiles_file(&dir);
    let o = kit(&["markers", s(&u), "--axis", "2", "--radius", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["marker_subsets"], serde_json::json!([[0, 1, 2, 3, 4, 5, 6, 7]]));
}

#[test]
fn markers_at_radius_zero_follow_the_result() {
    let dir = TempDir::new().unwrap();
    let u = tiles_file(&dir);
    let o = kit(&["markers", s(&u), "--axis", "e2", "--radius", "0"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    if v["marker_subsets"].as_array().unwrap().is_empty() {
        assert_eq!(o.status.code(), Some(2));
        assert!(stderr(&o).contains("try increasing the radius"));
    } else {
        assert_eq!(o.status.code(), Some(0));
    }
}

#[test]
fn empty_marker_result_exits_two() {
    let dir = TempDir::new().unwrap();
    let empty = write_json(&dir, "empty.json", &WangTileSet::new(vec![]));
    let o = kit(&["markers", s(&empty)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("try increasing the radius"));
}

#[test]
fn input_errors_exit_one() {
    assert_eq!(kit(&["markers", "/nonexistent/tiles.json"]).status.code(), Some(1));
    assert_eq!(kit(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(kit(&["solve", "x.json", "--shape", "three"]).status.code(), Some(1));
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{not json").unwrap();
    assert_eq!(kit(&["markers", s(&bad)]).status.code(), Some(1));
}

#[test]
fn desub_then_equiv_close_the_loop() {
    let dir = TempDir::new().unwrap();
    let u = tiles_file(&dir);
    let d0 = dir.path().join("d0.json");
    let o = kit(&["desub", s(&u), "--axis", "2", "--radius", "2", "--side", "right", "--out", s(&d0)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let (t0, a0): (WangTileSet, Morphism2d) = serde_json::from_str(&std::fs::read_to_string(&d0).unwrap()).unwrap();
    assert_eq!(t0.len(), 21);

    let v_path = write_json(&dir, "v.json", &t0);
    let o = kit(&["desub", s(&v_path), "--axis", "1", "--radius", "1", "--markers", "0,1,2,8,9,10,11"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let (t1, a1): (WangTileSet, Morphism2d) = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(t1.len(), 19);

    let w_path = write_json(&dir, "w.json", &t1);
    let o = kit(&["equiv", s(&u), s(&w_path)]);
    assert_eq!(o.status.code(), Some(0));
    let eq: Equivalence = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(eq.vert["A"], "IJ");
    assert_eq!(eq.horiz["P"], "KO");
    assert_eq!(a0.compose(&a1).unwrap().compose(&eq.morphism()).unwrap(), phi());

    // 𝒰 and the 21-tile set are not equivalent
    assert_eq!(kit(&["equiv", s(&u), s(&v_path)]).status.code(), Some(2));
}

#[test]
fn solve_with_both_backends() {
    let dir = TempDir::new().unwrap();
    let u = tiles_file(&dir);
    for backend in ["backtrack", "dlx"] {
        let o = kit(&["solve", s(&u), "--shape", "4x3", "--backend", backend]);
        assert_eq!(o.status.code(), Some(0));
        let w: Word2d = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(w.shape(), (4, 3));
        assert!(u_tiles().is_valid_pattern(&w).unwrap());
    }
    // no periodic tiling of a 2x2 torus
    assert_eq!(kit(&["solve", s(&u), "--shape", "2x2", "--torus"]).status.code(), Some(2));
}

#[test]
fn languages_agree_on_dominoes() {
    let mut sizes = Vec::new();
    for source in ["phi", "wang", "pet"] {
        let o = kit(&["lang", "--shape", "2x2", "--source", source]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let l: Language2d = serde_json::from_str(&stdout(&o)).unwrap();
        sizes.push(l);
    }
    assert_eq!(sizes[0].len(), 50);
    assert_eq!(sizes[0], sizes[1]);
    assert_eq!(sizes[0], sizes[2]);
}

#[test]
fn induce_and_config() {
    let o = kit(&["induce", "--axis", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let p: TorusPartition = serde_json::from_value(v["partition"].clone()).unwrap();
    assert_eq!(p.len(), 21);

    let o = kit(&["config", "--seed-point", "1/7,2/9", "--shape", "5x4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let w: Word2d = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(w.shape(), (5, 4));
    // a coded patch is a valid Wang pattern
    assert!(u_tiles().is_valid_pattern(&w).unwrap());

    // the origin lies on atom boundaries
    assert_eq!(kit(&["config", "--seed-point", "0,0", "--shape", "2x2"]).status.code(), Some(1));
}

#[test]
fn render_tiles_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let u = tiles_file(&dir);
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    for out in [&a, &b] {
        let o = kit(&["render", "tiling", s(&u), "--out", s(out), "--palette-seed", "7"]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    }
    let svg = std::fs::read_to_string(&a).unwrap();
    assert_eq!(svg, std::fs::read_to_string(&b).unwrap());
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("class=\"square\"").count(), 19);
    assert_eq!(svg.matches("class=\"edge\"").count(), 4 * 19);
}

#[test]
fn render_empty_tiling() {
    let dir = TempDir::new().unwrap();
    let empty = write_json(&dir, "empty.json", &WangTileSet::new(vec![]));
    let out = dir.path().join("e.svg");
    assert_eq!(kit(&["render", "tiling", s(&empty), "--out", s(&out)]).status.code(), Some(0));
    let svg = std::fs::read_to_string(&out).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    assert!(!svg.contains("class=\"tile\""));
}

#[test]
fn render_pattern_and_partition() {
    let dir = TempDir::new().unwrap();
    let w = u_tiles().solve((3, 2)).unwrap();
    let pattern = write_json(&dir, "pat.json", &serde_json::json!({ "tileset": u_tiles(), "word": w }));
    let out = dir.path().join("p.svg");
    assert_eq!(kit(&["render", "tiling", s(&pattern), "--out", s(&out)]).status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&out).unwrap().matches("class=\"square\"").count(), 6);

    let (pu, _) = aperiodic_core::selfsim::partition_u().unwrap();
    let total = pu.atoms().values().fold(Golden::zero(), |acc, r| &acc + &r.area());
    assert_eq!(total, Golden::one());
    let part = write_json(&dir, "pu.json", &pu);
    let out = dir.path().join("pu.svg");
    assert_eq!(kit(&["render", "partition", s(&part), "--out", s(&out)]).status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&out).unwrap().matches("class=\"atom\"").count(), 19);

    let out = dir.path().join("orbit.svg");
    let o = kit(&["render", "coded-orbit", s(&part), "--out", s(&out), "--seed-point", "1/7,2/9", "--shape", "3x3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(std::fs::read_to_string(&out).unwrap().matches("<circle").count(), 9);

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "[1,2]").unwrap();
    assert_eq!(kit(&["render", "partition", s(&bad), "--out", s(&out)]).status.code(), Some(1));
}

#[test]
fn verify_all_default_passes() {
    let dir = TempDir::new().unwrap();
    let report = dir.path().join("report.json");
    let o = kit(&["verify-all", "--out", s(&report), "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let target = serde_json::to_value(phi()).unwrap();
    assert_eq!(v["wang"]["composite"], target);
    assert_eq!(v["pet"]["composite"], target);
    assert!(stdout(&o).contains("all checks passed"));
}

#[test]
fn verify_all_rejects_a_corrupted_tile() {
    let dir = TempDir::new().unwrap();
    let mut tiles: Vec<String> = U_TILES.iter().map(|t| t.to_string()).collect();
    tiles[0] = "FOJK".into();
    let refs: Vec<&str> = tiles.iter().map(String::as_str).collect();
    let bad = write_json(&dir, "bad.json", &WangTileSet::from_strings(&refs));
    let o = Command::new(env!("CARGO_BIN_EXE_aperiodic-kit"))
        .args(["verify-all", "--tiles", s(&bad)])
        .env("APERIODIC_KIT_JOBS", "2")
        .output()
        .unwrap();
    assert_ne!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("stage wang"), "{}", stderr(&o));
}
