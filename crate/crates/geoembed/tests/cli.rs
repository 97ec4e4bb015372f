use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn geoembed(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geoembed")).args(args).env_remove("GEOEMBED_THREADS").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

fn first_hom(dir: &Path) -> String {
    let o = geoembed(&["census", "--sig", "(0;2,3,7)", "--target", "PSL2(7)", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let homs = v["homs"].as_array().unwrap();
    assert!(!homs.is_empty());
    write(dir, "hom.json", &serde_json::to_string(&homs[0]).unwrap())
}

#[test]
fn census_and_embed_of_the_hurwitz_group() {
    let dir = tempfile::tempdir().unwrap();
    let hom = first_hom(dir.path());
    let o = geoembed(&["verify-hom", "--hom", &hom, "--json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["relators_trivial"], true);
    let o = geoembed(&["embed", "--hom", &hom, "--json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["group_order"], 168);
    assert_eq!(v["polyhedron"], "tetrahedron");
    let genera: Vec<u64> = v["closed_manifold"]["boundary_genera"].as_array().unwrap().iter().map(|g| g.as_u64().unwrap()).collect();
    assert_eq!(genera, [3, 3, 3, 3]);
    assert_eq!(v["geometry"]["status"], "verified");
}

#[test]
fn output_files_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let hom = first_hom(dir.path());
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for (out, threads) in [(&a, "1"), (&b, "3")] {
        let o = geoembed(&["embed", "--hom", &hom, "--threads", threads, "--out", out.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let c = dir.path().join("c.json");
    let d = dir.path().join("d.json");
    for (out, threads) in [(&c, "1"), (&d, "4")] {
        let o = geoembed(&["census", "--sig", "(0;2,4,5)", "--target", "S5", "--embed", "--threads", threads, "--out", out.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
    }
    assert_eq!(std::fs::read(&c).unwrap(), std::fs::read(&d).unwrap());
}

#[test]
fn malformed_inputs_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{\n  \"signature\": \"(0;2,3,7)\",\n  \"target\": \n}");
    let o = geoembed(&["verify-hom", "--hom", &bad]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.json:4:"));
    assert_eq!(code(&geoembed(&["census", "--sig", "(0;2,2,2,2)", "--target", "S4"])), 2);
    assert_eq!(code(&geoembed(&["census", "--sig", "(0;2,3", "--target", "S4"])), 2);
    assert_eq!(code(&geoembed(&["gram", "--type", "2,3"])), 2);
    assert_eq!(code(&geoembed(&["embed", "--hom", "/no/such/file.json"])), 2);
    assert_eq!(code(&geoembed(&["no-such-command"])), 2);
    let not_perm = write(dir.path(), "a.json", r#"{"signature": "(0;2,3,8)", "degree": 2, "images": {"x": [1,1], "y": [0,1]}}"#);
    assert_eq!(code(&geoembed(&["subgroup-signature", "--action", &not_perm])), 2);
    let o = Command::new(env!("CARGO_BIN_EXE_geoembed"))
        .args(["gram", "--type", "2,3,7"])
        .env("GEOEMBED_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn failed_checks_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    // Relators fail: x is not an involution.
    let hom = write(
        dir.path(),
        "h.json",
        r#"{"signature": "(0;2,3,7)", "target": "S3", "images": {"x": [1,2,0], "y": [1,0,2]}}"#,
    );
    let o = geoembed(&["verify-hom", "--hom", &hom, "--json"]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["relators_trivial"], false);
    // A degree-2 action of (2,3,8) has torsion in its stabilizer.
    let action = write(dir.path(), "a.json", r#"{"signature": "(0;2,3,8)", "degree": 2, "images": {"x": [1,0], "y": [0,1]}}"#);
    assert_eq!(code(&geoembed(&["corollary2", "--action", &action, "--no-geometry"])), 1);
    let o = geoembed(&["subgroup-signature", "--action", &action, "--json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["subgroup_signature"], "(0;3,3,4)");
}

#[test]
fn geometry_commands() {
    let o = geoembed(&["gram", "--type", "2,3,7", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["signature"], serde_json::json!([3, 1, 0]));
    for m in v["vertex_minors"].as_array().unwrap() {
        assert!(m.as_f64().unwrap() < 0.0);
    }
    let o = geoembed(&["gram", "--type", "2,3,6", "--json"]);
    assert_eq!(code(&o), 0);
    assert!(json(&o)["vertex_minors"].as_array().unwrap().iter().all(|m| m.as_f64().unwrap().abs() < 1e-9));
    let o = geoembed(&["realize", "--polyhedron", "cube", "--labels", "3,3,4", "--json"]);
    assert_eq!(code(&o), 0);
    assert!(json(&o)["realization"]["residual"].as_f64().unwrap() < 1e-8);
}

#[test]
fn diagrams_feed_the_wirtinger_command() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.json");
    let o = geoembed(&["diagram", "--polyhedron", "octahedron", "--labels", "2,3,4,5", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let o = geoembed(&["wirtinger", "--diagram", path.to_str().unwrap(), "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["boundary"].as_array().unwrap().len(), 6);
    assert_eq!(v["labels"].as_array().unwrap().len(), 12);
}

#[test]
fn low_index_lists_actions_with_their_stabilizers() {
    let o = geoembed(&["low-index", "--sig", "(0;2,3,8)", "--max-degree", "2", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let sigs: Vec<&str> = v["actions"].as_array().unwrap().iter().map(|a| a["subgroup_signature"].as_str().unwrap()).collect();
    assert!(sigs.contains(&"(0;3,3,4)"));
    assert!(sigs.contains(&"(0;2,3,8)"));
}

#[test]
fn theorem3_with_a_mod_two_hom() {
    use geoembed::io::{to_json, ActionFile};
    use geoembed_core::homs::epi_search;
    let dir = tempfile::tempdir().unwrap();
    let s = "(0;2,3,8)".parse().unwrap();
    let phi = epi_search(&s, &geoembed_core::library::gl2(3).unwrap()).unwrap().remove(0);
    let action = ActionFile::from_action(&phi.regular_action().unwrap());
    let path = write(dir.path(), "regular.json", &to_json(&action));
    let o = geoembed(&["theorem3", "--action", &path, "--mod2", "0", "--json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["induced_degree"], 96);
    assert_eq!(v["relators_trivial"], true);
    assert_eq!(v["surface_signature"], "(3;)");
    let o = geoembed(&["core", "--action", &path, "--json"]);
    assert_eq!(code(&o), 0);
    let o = geoembed(&["theorem3", "--action", &path, "--mod2", "999"]);
    assert_eq!(code(&o), 2);
}
