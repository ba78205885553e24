//! Drive the CLI programmatically: build a solution, re-verify it, expand
//! it, and export a catalog entry — the same artifact pipeline the `cybe`
//! binary exposes, shown end to end with deterministic outputs.

use std::path::PathBuf;

fn run(args: &[&str]) -> i32 {
    cybe::cli::run(args.iter().map(|s| s.to_string()))
}

fn main() {
    let dir = std::env::temp_dir().join("cybe-example-pipeline");
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    let path = |name: &str| -> PathBuf { dir.join(name) };

    // Build cg(1,2) with a fixed seed; the artifact embeds the solution,
    // its LaTeX rendering, and a residual certificate.
    let out = path("cg12.json");
    assert_eq!(
        run(&["cybe", "build", "cg", "--c", "1", "--d", "2", "--seed", "42",
              "--out", out.to_str().unwrap()]),
        0
    );
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    println!("built cg(1,2): cybe_residual_zero = {}", doc["certificate"]["cybe_residual_zero"]);

    // Extract the bare solution and re-verify it independently.
    let sol = path("solution.json");
    std::fs::write(&sol, serde_json::to_string(&doc["solution"]).unwrap()).unwrap();
    assert_eq!(
        run(&["cybe", "verify", "cybe", "--sl", "3",
              "--input", sol.to_str().unwrap(),
              "--out", path("cert.json").to_str().unwrap()]),
        0
    );
    assert_eq!(
        run(&["cybe", "verify", "skew", "--input", sol.to_str().unwrap(),
              "--out", path("skew.json").to_str().unwrap()]),
        0
    );
    println!("verify cybe + verify skew: exit 0");

    // Normalized series expansion with the duality/constraint report.
    assert_eq!(
        run(&["cybe", "expand", "--sl", "3", "--input", sol.to_str().unwrap(),
              "--order", "5", "--normalize", "--prec", "14", "--check", "3",
              "--out", path("series.json").to_str().unwrap()]),
        0
    );
    println!("expand --normalize --check 3: exit 0");

    // LaTeX export.
    assert_eq!(
        run(&["cybe", "export", "latex", "--sl", "3",
              "--input", sol.to_str().unwrap(),
              "--out", path("solution.tex").to_str().unwrap()]),
        0
    );
    let tex = std::fs::read_to_string(path("solution.tex")).unwrap();
    println!("exported LaTeX ({} bytes)", tex.len());

    // Determinism: a second build is byte-identical.
    let out2 = path("cg12-again.json");
    assert_eq!(
        run(&["cybe", "build", "cg", "--c", "1", "--d", "2", "--seed", "42",
              "--out", out2.to_str().unwrap()]),
        0
    );
    assert_eq!(std::fs::read(&out).unwrap(), std::fs::read(&out2).unwrap());
    println!("repeated build is byte-identical");
}
